"""Root conditions on projective polynomials and cubics over F_{2^m}.

All root finding is an exhaustive scan over the field (m <= 16).  The cubic
classifier predicts a root count from traces and cube tests, and the scan
has to confirm it.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

import numpy as np

from .field import BinaryField, FieldError, GF2m, get_extension


class PreconditionError(ValueError):
    """Arguments outside the domain where a condition is meaningful."""


def _require_coprime(fld: BinaryField, k: int) -> None:
    if k <= 0 or gcd(k, fld.n) != 1:
        raise PreconditionError(f"gcd(k={k}, m={fld.n}) must be 1")


def phi_values(fld: BinaryField, k: int, alpha: int) -> np.ndarray:
    """``x^(q+1) + x + alpha`` at every x, q = 2^k."""
    x = fld.elements()
    return fld.pow_vec(x, (1 << k) + 1) ^ x ^ alpha


def phi_has_root(fld: BinaryField, k: int, alpha: int) -> bool:
    _require_coprime(fld, k)
    return bool(np.any(phi_values(fld, k, fld.check(alpha)) == 0))


def find_good_alphas(fld: BinaryField, k: int) -> list[int]:
    """Every alpha for which ``x^(2^k+1) + x + alpha`` has no root, ascending."""
    _require_coprime(fld, k)
    x = fld.elements()
    image = np.zeros(fld.size, dtype=bool)
    image[fld.pow_vec(x, (1 << k) + 1) ^ x] = True
    good = [int(a) for a in np.nonzero(~image)[0]]
    if not good:
        raise AssertionError(f"no rootless alpha for m={fld.n}, k={k}; a rootless alpha always exists")
    return good


def square_root_closure_check(fld: BinaryField, k: int, alpha: int) -> bool:
    return phi_has_root(fld, k, alpha) == phi_has_root(fld, k, fld.square(alpha))


def linearized_kernel_dim(fld: BinaryField, terms) -> int:
    """F_2-dimension of the kernel of ``x -> sum c * x^(2^e)`` for (c, e) in terms."""
    images = []
    for i in range(fld.n):
        v = 0
        for c, e in terms:
            v ^= fld.mul(c, fld.pow_q(1 << i, e))
        images.append(v)
    rank = 0
    basis: list[int] = []
    for v in images:
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
            rank += 1
    return fld.n - rank


def is_linearized_permutation(fld: BinaryField, terms) -> bool:
    return linearized_kernel_dim(fld, terms) == 0


def linearized_is_permutation(fld: BinaryField, a: int, b: int, c: int, k: int) -> bool:
    """Is ``x -> a x^(q^2) + b x^q + c x`` a bijection, q = 2^k."""
    _require_coprime(fld, k)
    return is_linearized_permutation(fld, [(a, 2 * k), (b, k), (c, 0)])


def mobius_phi_has_root(fld: BinaryField, k: int, alpha: int, a: int, b: int, c: int, d: int) -> bool:
    """Roots of ``(cx+d)^(q+1) + (cx+d)(ax+b)^q + alpha (ax+b)^(q+1)``."""
    x = fld.elements()
    q = 1 << k
    u = fld.mul_vec(x, c) ^ d
    w = fld.mul_vec(x, a) ^ b
    val = fld.pow_vec(u, q + 1) ^ fld.mul_vec(u, fld.pow_vec(w, q)) ^ fld.mul_vec(fld.pow_vec(w, q + 1), alpha)
    return bool(np.any(val == 0))


@dataclass(frozen=True)
class CubicReport:
    root_count: int
    roots: list[int]
    branch: str  # "one-root", "three-roots" or "no-roots"


def _quadratic_roots(fld: BinaryField, b: int, c: int) -> list[int]:
    """Roots of ``t^2 + b t + c`` in fld, by scan."""
    t = fld.elements()
    vals = fld.mul_vec(t, t) ^ fld.mul_vec(t, b) ^ c
    return [int(r) for r in np.nonzero(vals == 0)[0]]


def cubic_prediction(fld: GF2m, a: int, b: int) -> str:
    """Root-count class of ``z^3 + a z + b`` from traces and cube tests alone."""
    if b == 0:
        raise PreconditionError("b must be nonzero")
    ratio = fld.div(fld.pow(a, 3), fld.square(b))
    if fld.trace(ratio) != fld.trace(1):
        return "one-root"
    # t^2 + b t + a^3 splits in F_{2^m} for even m and in F_{2^{2m}} for odd m
    host = fld if fld.m % 2 == 0 else get_extension(fld.m, fld.reduction)
    roots = _quadratic_roots(host, b, host.pow(a, 3))
    if len(roots) != 2:
        raise AssertionError(f"h(t) should have two roots in {host!r}, found {roots}")
    t1, t2 = roots
    c1, c2 = host.is_cube(t1), host.is_cube(t2)
    if a != 0 and c1 != c2:
        # t1 * t2 = a^3 is a cube
        raise AssertionError("t1 and t2 disagree on cubicity")
    return "three-roots" if c1 and c2 else "no-roots"


def cubic_roots(fld: GF2m, a: int, b: int) -> CubicReport:
    branch = cubic_prediction(fld, fld.check(a), fld.check(b))
    z = fld.elements()
    vals = fld.pow_vec(z, 3) ^ fld.mul_vec(z, a) ^ b
    roots = [int(r) for r in np.nonzero(vals == 0)[0]]
    expected = {"one-root": 1, "three-roots": 3, "no-roots": 0}[branch]
    if len(roots) != expected:
        raise AssertionError(f"cubic z^3+{a:#x}z+{b:#x}: predicted {expected} roots, scan found {len(roots)}")
    return CubicReport(len(roots), roots, branch)


def pair_equation_values(fld: BinaryField, alpha: int) -> np.ndarray:
    """``a^3 + alpha b a^2 + (alpha^2 b^2 + b^2 + 1) a + alpha^3 b^3 + alpha b^2 + alpha``
    on the grid, indexed ``(b << m) | a``."""
    m = fld.n
    idx = np.arange(1 << (2 * m), dtype=np.int64)
    a = idx & ((1 << m) - 1)
    b = idx >> m
    mv, pv = fld.mul_vec, fld.pow_vec
    al2 = fld.square(alpha)
    b2 = pv(b, 2)
    coef = mv(b2, al2) ^ b2 ^ 1
    return (pv(a, 3) ^ mv(mv(b, alpha), pv(a, 2)) ^ mv(coef, a)
            ^ mv(pv(b, 3), fld.pow(alpha, 3)) ^ mv(b2, alpha) ^ alpha)


def pair_equation_unique_solution(fld: BinaryField, alpha: int) -> bool:
    zeros = np.nonzero(pair_equation_values(fld, alpha) == 0)[0]
    return zeros.tolist() == [(1 << fld.n) | alpha]


def beta_decomposition(fld: BinaryField, alpha: int) -> int:
    """Smallest beta with ``beta^2 + beta + 1 = 1 / alpha^2``."""
    if alpha == 0:
        raise PreconditionError("alpha must be nonzero")
    target = fld.inv(fld.square(alpha)) ^ 1
    t = fld.elements()
    hits = np.nonzero((fld.mul_vec(t, t) ^ t) == target)[0]
    if hits.size == 0:
        raise PreconditionError(f"tr(1/alpha^2) != tr(1) for alpha={alpha:#x}")
    return int(hits[0])


__all__ = [
    "CubicReport", "FieldError", "PreconditionError", "beta_decomposition", "cubic_prediction",
    "cubic_roots", "find_good_alphas", "is_linearized_permutation", "pair_equation_unique_solution",
    "pair_equation_values", "linearized_is_permutation", "linearized_kernel_dim", "mobius_phi_has_root",
    "phi_has_root", "phi_values", "square_root_closure_check",
]
