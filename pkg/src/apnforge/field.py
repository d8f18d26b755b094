"""Binary field arithmetic.

Elements are plain integers holding the coefficient vector of the polynomial
basis (bit ``i`` is the coefficient of ``t**i``).  Scalar operations work on
Python ints; the ``*_vec`` variants take numpy integer arrays and go through
log/antilog tables.

Two concrete fields are provided:

* :class:`GF2m`, ``F_{2^m}`` defined by an irreducible polynomial of degree m;
* :class:`QuadraticExtension`, ``F_{2^{2m}} = F_{2^m}[theta]`` with
  ``theta**2 + theta + nu = 0``.  The element ``x + y*theta`` is stored as
  ``(y << m) | x`` so that :meth:`QuadraticExtension.embed` and
  :meth:`QuadraticExtension.split` are coordinate maps.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd

import numpy as np

MAX_DEGREE = 16


class FieldError(ValueError):
    """Raised for invalid field parameters or out-of-domain arguments."""


# --- polynomials over F_2 as bitmasks ------------------------------------

def clmul(a: int, b: int) -> int:
    """Carry-less product of two F_2[t] polynomials."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def poly_mod(a: int, p: int) -> int:
    dp = p.bit_length() - 1
    while a.bit_length() - 1 >= dp:
        a ^= p << (a.bit_length() - 1 - dp)
    return a


def is_irreducible(p: int) -> bool:
    """Trial division by every polynomial of degree <= deg(p)/2."""
    d = p.bit_length() - 1
    if d < 1:
        return False
    if d == 1:
        return True
    if not (p & 1):
        return False
    for q in range(2, 1 << (d // 2 + 1)):
        if poly_mod(p, q) == 0:
            return False
    return True


@lru_cache(maxsize=None)
def default_reduction(m: int) -> int:
    """Lexicographically smallest irreducible polynomial of degree m."""
    if not 1 <= m <= MAX_DEGREE:
        raise FieldError(f"degree {m} outside 1..{MAX_DEGREE}")
    for p in range((1 << m) | 1, 1 << (m + 1), 2):
        if is_irreducible(p):
            return p
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def _prime_factors(n: int) -> list[int]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


# --- generic field -------------------------------------------------------

class BinaryField:
    """Common machinery for a finite field of order ``2**n``.

    Subclasses provide ``n`` and :meth:`_mul`; everything else (powers,
    inverses, traces, tables) is derived from it.
    """

    n: int

    def _mul(self, a: int, b: int) -> int:  # pragma: no cover - abstract
        raise NotImplementedError

    def _build_tables(self) -> None:
        self.size = 1 << self.n
        self.order = self.size - 1
        self.generator = self._find_generator()
        exp = np.zeros(2 * self.order + 1, dtype=np.int64)
        log = np.zeros(self.size, dtype=np.int64)
        x = 1
        for i in range(self.order):
            exp[i] = x
            log[x] = i
            x = self._mul(x, self.generator)
        if x != 1:  # pragma: no cover - guarded by _find_generator
            raise AssertionError("generator does not have full order")
        exp[self.order:2 * self.order] = exp[:self.order]
        self._exp = exp
        self._log = log
        self._exp.setflags(write=False)
        self._log.setflags(write=False)

    def _pow_slow(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._mul(r, a)
            a = self._mul(a, a)
            e >>= 1
        return r

    def _find_generator(self) -> int:
        order = (1 << self.n) - 1
        if order == 1:
            return 1
        cofactors = [order // p for p in _prime_factors(order)]
        for g in range(2, 1 << self.n):
            if all(self._pow_slow(g, c) != 1 for c in cofactors):
                return g
        raise AssertionError("multiplicative group is not cyclic")  # pragma: no cover

    # scalar API

    def check(self, a: int) -> int:
        if not 0 <= a < self.size:
            raise FieldError(f"{a:#x} is not an element of F_2^{self.n}")
        return a

    def elements(self) -> np.ndarray:
        return np.arange(self.size, dtype=np.int64)

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        return int(self._exp[self._log[a] + self._log[b]])

    def square(self, a: int) -> int:
        return self.mul(a, a)

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            return self.pow(self.inv(a), -e)
        if e == 0:
            return 1
        if a == 0:
            return 0
        return int(self._exp[(int(self._log[a]) * e) % self.order])

    def pow_q(self, a: int, k: int) -> int:
        """``a ** (2**k)`` by k squarings."""
        for _ in range(k % self.n):
            a = self.mul(a, a)
        return a

    def inv(self, a: int) -> int:
        if a == 0:
            raise FieldError("zero has no inverse")
        return int(self._exp[(self.order - self._log[a]) % self.order])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def sqrt(self, a: int) -> int:
        return self.pow_q(a, self.n - 1)

    def trace(self, a: int) -> int:
        """Absolute trace, returned as 0 or 1."""
        return self.rel_trace(a, 1)

    def rel_trace(self, a: int, d: int) -> int:
        """Trace to the subfield of degree d: ``sum a**(2**(d*i))``."""
        if d <= 0 or self.n % d:
            raise FieldError(f"subfield degree {d} does not divide {self.n}")
        t = 0
        for _ in range(self.n // d):
            t ^= a
            a = self.pow_q(a, d)
        return t

    def in_subfield(self, a: int, d: int) -> bool:
        if self.n % d:
            raise FieldError(f"subfield degree {d} does not divide {self.n}")
        return self.pow_q(a, d) == a

    def is_cube(self, a: int) -> bool:
        if a == 0 or self.order % 3:
            return True
        return self.pow(a, self.order // 3) == 1

    def element_order(self, a: int) -> int:
        if a == 0:
            raise FieldError("zero has no multiplicative order")
        return self.order // gcd(int(self._log[a]), self.order)

    def is_primitive(self, a: int) -> bool:
        return a != 0 and self.element_order(a) == self.order

    # vectorised API

    def mul_vec(self, a, b) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        r = self._exp[self._log[a] + self._log[b]]
        return np.where((a == 0) | (b == 0), 0, r)

    def pow_vec(self, a, e: int) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if e == 0:
            return np.ones_like(a)
        if e < 0:
            raise FieldError("negative exponents are not vectorised")
        r = self._exp[(self._log[a] * (e % self.order)) % self.order]
        return np.where(a == 0, 0, r)

    def inv_vec(self, a) -> np.ndarray:
        a = np.asarray(a, dtype=np.int64)
        if np.any(a == 0):
            raise FieldError("zero has no inverse")
        return self._exp[(self.order - self._log[a]) % self.order]

    def trace_vec(self, a) -> np.ndarray:
        return self.rel_trace_vec(a, 1)

    def rel_trace_vec(self, a, d: int) -> np.ndarray:
        if d <= 0 or self.n % d:
            raise FieldError(f"subfield degree {d} does not divide {self.n}")
        a = np.asarray(a, dtype=np.int64)
        t = np.zeros_like(a)
        for i in range(self.n // d):
            t ^= self.pow_vec(a, 1 << (d * i))
        return t


class GF2m(BinaryField):
    """``F_{2^m}`` in a polynomial basis."""

    def __init__(self, m: int, reduction: int | None = None):
        if not 1 <= m <= MAX_DEGREE:
            raise FieldError(f"degree {m} outside 1..{MAX_DEGREE}")
        if reduction is None:
            reduction = default_reduction(m)
        if reduction.bit_length() != m + 1 or not reduction & 1:
            raise FieldError(f"reduction {reduction:#x} is not a degree-{m} polynomial with constant term")
        if not is_irreducible(reduction):
            raise FieldError(f"reduction {reduction:#x} is reducible")
        self.m = self.n = m
        self.reduction = reduction
        self._build_tables()

    def _mul(self, a: int, b: int) -> int:
        return poly_mod(clmul(a, b), self.reduction)

    def to_json(self) -> dict:
        return {"m": self.m, "reduction": hex(self.reduction)}

    def __repr__(self) -> str:
        return f"GF2m(m={self.m}, reduction={self.reduction:#x})"

    def __eq__(self, other) -> bool:
        return isinstance(other, GF2m) and (self.m, self.reduction) == (other.m, other.reduction)

    def __hash__(self) -> int:
        return hash(("GF2m", self.m, self.reduction))


class QuadraticExtension(BinaryField):
    """``F_{2^{2m}}`` as ``F_{2^m}[theta]/(theta^2 + theta + nu)``.

    ``nu`` must have absolute trace 1 in the base field, which makes the
    quadratic irreducible.  The default is the smallest such ``nu``.
    """

    def __init__(self, base: GF2m, nu: int | None = None):
        if 2 * base.m > MAX_DEGREE:
            raise FieldError(f"extension degree {2 * base.m} exceeds {MAX_DEGREE}")
        if nu is None:
            nu = next(v for v in range(1, base.size) if base.trace(v) == 1)
        if base.trace(base.check(nu)) != 1:
            raise FieldError(f"theta^2 + theta + {nu:#x} is reducible over {base!r}")
        self.base = base
        self.m = base.m
        self.n = 2 * base.m
        self.nu = nu
        self._mask = (1 << base.m) - 1
        self._build_tables()

    def _mul(self, a: int, b: int) -> int:
        f = self.base
        m = self.m
        x1, y1 = a & self._mask, a >> m
        x2, y2 = b & self._mask, b >> m
        yy = f.mul(y1, y2)
        lo = f.mul(x1, x2) ^ f.mul(yy, self.nu)
        hi = f.mul(x1, y2) ^ f.mul(x2, y1) ^ yy
        return (hi << m) | lo

    def embed(self, x: int, y: int) -> int:
        """``(x, y) -> x + y*theta``."""
        return (self.base.check(y) << self.m) | self.base.check(x)

    def split(self, z: int) -> tuple[int, int]:
        self.check(z)
        return z & self._mask, z >> self.m

    @property
    def theta(self) -> int:
        return 1 << self.m

    def to_json(self) -> dict:
        return {"m": self.m, "reduction": hex(self.base.reduction), "nu": hex(self.nu)}

    def __repr__(self) -> str:
        return f"QuadraticExtension({self.base!r}, nu={self.nu:#x})"


@lru_cache(maxsize=None)
def get_field(m: int, reduction: int | None = None) -> GF2m:
    """Cached :class:`GF2m` constructor."""
    return GF2m(m, reduction)


@lru_cache(maxsize=None)
def get_extension(m: int, reduction: int | None = None, nu: int | None = None) -> QuadraticExtension:
    return QuadraticExtension(get_field(m, reduction), nu)


def field_from_json(d: dict) -> BinaryField:
    red = int(d["reduction"], 16)
    if "nu" in d:
        return get_extension(int(d["m"]), red, int(d["nu"], 16))
    return get_field(int(d["m"]), red)
