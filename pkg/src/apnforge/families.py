"""Constructors for the biprojective APN families and the n = 12 comparison set.

Bivariate constructors return a :class:`~apnforge.vbf.BivariatePair`;
:func:`known_family` returns an evaluated table for one valid parameter
choice, found by a deterministic scan.
"""

from __future__ import annotations

from collections.abc import Callable, Iterator
from dataclasses import dataclass, field as dc_field
from math import gcd

import numpy as np

from .field import BinaryField, GF2m, get_extension, get_field
from .poly import (PreconditionError, cubic_roots, is_linearized_permutation, phi_has_root)
from .vbf import BivariatePair, TruthTable, evaluate, is_apn, univariate_evaluate


class InvalidParameters(ValueError):
    """Parameters violate the family's published conditions."""


class ConstructionError(RuntimeError):
    """No valid parameters found, or a supposedly valid instance is not APN."""


@dataclass(frozen=True)
class FamilyParams:
    family: str
    m: int
    k: int | None = None
    alpha: int | None = None
    extra: dict = dc_field(default_factory=dict)

    def to_json(self) -> dict:
        return {"family": self.family, "m": self.m, "k": self.k,
                "alpha": None if self.alpha is None else hex(self.alpha),
                "extra": dict(self.extra)}

    @classmethod
    def from_json(cls, d: dict) -> "FamilyParams":
        alpha = d.get("alpha")
        return cls(str(d["family"]), int(d["m"]), d.get("k"),
                   None if alpha is None else int(alpha, 16), dict(d.get("extra") or {}))


# --- new families --------------------------------------------------------

def _f1_terms(fld: GF2m, k: int, alpha: int):
    q = 1 << k
    qq = q * q
    terms_f = ((q + 1, 0, 1), (1, q, 1), (0, q + 1, alpha))
    terms_g = ((qq + 1, 0, 1), (qq, 1, alpha), (1, qq, fld.pow(1 ^ alpha, q)), (0, qq + 1, alpha))
    return terms_f, terms_g


def f1(m: int, k: int, alpha: int, reduction: int | None = None) -> BivariatePair:
    fld = get_field(m, reduction)
    ok, reason = validate(FamilyParams("f1", m, k, alpha), fld)
    if not ok:
        raise InvalidParameters(reason)
    tf, tg = _f1_terms(fld, k, alpha)
    return BivariatePair(fld, tf, tg, k, f"f1(m={m},k={k},alpha={alpha:#x})")


def f2(m: int, alpha: int, reduction: int | None = None) -> BivariatePair:
    fld = get_field(m, reduction)
    ok, reason = validate(FamilyParams("f2", m, 1, alpha), fld)
    if not ok:
        raise InvalidParameters(reason)
    tf = ((3, 0, 1), (1, 1, 1), (1, 2, 1), (0, 3, alpha))
    tg = ((5, 0, 1), (1, 1, 1), (2, 2, alpha), (4, 1, alpha),
          (1, 4, fld.square(1 ^ alpha)), (0, 5, alpha))
    return BivariatePair(fld, tf, tg, 1, f"f2(m={m},alpha={alpha:#x})")


def dillon_terms(m: int, alpha: int, reduction: int | None = None) -> BivariatePair:
    """``(xy, xy + alpha x^2 y^2)``, the difference between f2 and f1 at k = 1."""
    fld = get_field(m, reduction)
    return BivariatePair(fld, ((1, 1, 1),), ((1, 1, 1), (2, 2, fld.check(alpha))), 1, "dillon")


def golgolu_f1(m: int, k: int, reduction: int | None = None) -> BivariatePair:
    if gcd(3 * k, m) != 1:
        raise InvalidParameters(f"gcd(3k, m) = gcd({3 * k}, {m}) != 1")
    fld = get_field(m, reduction)
    q = 1 << k
    qq = q * q
    tf = ((q + 1, 0, 1), (1, q, 1), (0, q + 1, 1))
    tg = ((qq + 1, 0, 1), (qq, 1, 1), (0, qq + 1, 1))
    return BivariatePair(fld, tf, tg, k, f"golgolu_f1(m={m},k={k})")


def golgolu_f2(m: int, k: int, reduction: int | None = None) -> BivariatePair:
    if gcd(3 * k, m) != 1:
        raise InvalidParameters(f"gcd(3k, m) = gcd({3 * k}, {m}) != 1")
    if m % 2 == 0:
        raise InvalidParameters("m must be odd")
    fld = get_field(m, reduction)
    q = 1 << k
    q3 = q ** 3
    tf = ((q + 1, 0, 1), (1, q, 1), (0, q + 1, 1))
    tg = ((q3, 1, 1), (1, q3, 1))
    return BivariatePair(fld, tf, tg, k, f"golgolu_f2(m={m},k={k})")


def lzlq(m: int, reduction: int | None = None) -> BivariatePair:
    """``(x^3 + xy + xy^2 + y^3, x^5 + xy + x^2y^2 + x^4y + y^5)`` for gcd(3, m) = 1."""
    if gcd(3, m) != 1:
        raise InvalidParameters(f"gcd(3, {m}) != 1")
    fld = get_field(m, reduction)
    tf = ((3, 0, 1), (1, 1, 1), (1, 2, 1), (0, 3, 1))
    tg = ((5, 0, 1), (1, 1, 1), (2, 2, 1), (4, 1, 1), (0, 5, 1))
    return BivariatePair(fld, tf, tg, 1, f"lzlq(m={m})")


# --- validation ----------------------------------------------------------

def validate(params: FamilyParams, fld: BinaryField | None = None) -> tuple[bool, str]:
    """Check a parameter set against its family's conditions."""
    fam = params.family
    m = params.m
    try:
        if fam in ("f1", "f2"):
            k = 1 if fam == "f2" else params.k
            if fld is None:
                fld = get_field(m)
            if k is None or k <= 0 or gcd(k, m) != 1:
                return False, f"gcd(k={k}, m={m}) must be 1"
            alpha = params.alpha
            if alpha is None or not 0 <= alpha < fld.size:
                return False, f"alpha={alpha} is not an element of F_2^{m}"
            if alpha == 0:
                return False, "alpha = 0 makes x = 0 a root"
            if fam == "f1" and phi_has_root(fld, k, alpha):
                return False, f"x^(2^{k}+1) + x + {alpha:#x} has a root in F_2^{m}"
            if fam == "f2" and cubic_roots(fld, 1, alpha).root_count:
                return False, f"x^3 + x + {alpha:#x} has a root in F_2^{m}"
            return True, "ok"
        if family_id(fam) in KNOWN:
            reason = _check_known(params, fld)
            return (True, "ok") if reason is None else (False, reason)
    except (PreconditionError, InvalidParameters) as exc:
        return False, str(exc)
    return False, f"unknown family {fam!r}"


# --- known families at n = 2m --------------------------------------------
#
# Each family has a scan (raw candidates in a fixed order, ascending bit
# values, primitive element = the field's default generator), a check that
# returns None or the violated condition, and a builder.

@dataclass(frozen=True)
class KnownFamily:
    fid: str
    formula: str
    bivariate: bool
    scan: Callable[[int, BinaryField], Iterator[FamilyParams]]
    check: Callable[[FamilyParams, BinaryField], str | None]
    build: Callable[[FamilyParams, BinaryField], TruthTable]


def _subfield(fld: BinaryField, d: int) -> list[int]:
    return [int(z) for z in fld.elements() if fld.in_subfield(int(z), d)]


def _non_cubes(fld: BinaryField) -> list[int]:
    return [int(z) for z in fld.elements() if z and not fld.is_cube(int(z))]


def _merge_uni(terms, order: int):
    acc: dict[int, int] = {}
    for e, c in terms:
        if e >= order:
            e = e % order or order
        acc[e] = acc.get(e, 0) ^ c
    return sorted((e, c) for e, c in acc.items() if c)


def _trace_terms(fld: BinaryField, inner, d: int):
    """Expand ``Tr^n_d(sum c x^e)`` into monomials."""
    out = []
    for i in range(fld.n // d):
        for e, c in inner:
            out.append((e << (d * i), fld.pow_q(c, d * i)))
    return out


def has_root(fld: BinaryField, values: np.ndarray) -> bool:
    return bool(np.any(values == 0))


# 1: Gold

def _scan1(m, fld):
    for i in range(1, 2 * m):
        yield FamilyParams("1", m, extra={"i": i})


def _check1(p, fld):
    i = p.extra.get("i")
    if i is None or gcd(i, fld.n) != 1:
        return f"gcd(i={i}, n={fld.n}) != 1"
    return None


def _build1(p, fld):
    i = p.extra["i"]
    return univariate_evaluate(fld, [((1 << i) + 1, 1)], f"gold(n={fld.n},i={i})")


# 2: x^(2^s+1) + u^(2^k-1) x^(2^(ik) + 2^(tk+s)), n = 3k

def _scan2(m, fld):
    n = fld.n
    for s in range(1, n):
        yield FamilyParams("2", m, extra={"s": s, "u": fld.generator})


def _check2(p, fld):
    n = fld.n
    s = p.extra.get("s", 0)
    if n % 3 or n < 12:
        return f"needs n = 3k and n >= 12, got n={n}"
    k = n // 3
    if gcd(k, 3) != 1 or gcd(s, n) != 1:
        return f"needs gcd(k, 3) = gcd(s, 3k) = 1 (k={k}, s={s})"
    if (s * k) % 3 == 0:
        return "i = sk mod 3 must be nonzero"
    if not fld.is_primitive(p.extra.get("u", 0)):
        return "u must be primitive"
    return None


def _build2(p, fld):
    n = fld.n
    k = n // 3
    s, u = p.extra["s"], p.extra["u"]
    i = (s * k) % 3
    t = 3 - i
    terms = _merge_uni([((1 << s) + 1, 1),
                        ((1 << (i * k)) + (1 << (t * k + s)), fld.pow(u, (1 << k) - 1))], fld.order)
    return univariate_evaluate(fld, terms, f"family2(n={n},s={s})")


# 3: u x^(2^s+1) + u^(2^k) x^(2^-k + 2^(k+s)) + v x^(2^-k+1) + w u^(2^k+1) x^(2^s + 2^(k+s))

def _scan3(m, fld):
    n = fld.n
    sub = _subfield(fld, n // 3) if n % 3 == 0 else [0]
    for s in range(1, n):
        for v in sub:
            for w in sub:
                yield FamilyParams("3", m, extra={"s": s, "u": fld.generator, "v": v, "w": w})


def _check3(p, fld):
    n = fld.n
    if n % 3:
        return f"needs n = 3k, got n={n}"
    k = n // 3
    s, v, w = p.extra.get("s", 0), p.extra.get("v", 0), p.extra.get("w", 0)
    if gcd(k, 3) != 1 or gcd(s, n) != 1:
        return f"needs gcd(k, 3) = gcd(s, 3k) = 1 (k={k}, s={s})"
    if (k + s) % 3:
        return "needs 3 | (k + s)"
    if not (fld.in_subfield(v, k) and fld.in_subfield(w, k)):
        return f"v, w must lie in F_2^{k}"
    if fld.mul(v, w) == 1:
        return "needs vw != 1"
    if not fld.is_primitive(p.extra.get("u", 0)):
        return "u must be primitive"
    return None


def _build3(p, fld):
    n = fld.n
    k = n // 3
    s, u, v, w = (p.extra[key] for key in ("s", "u", "v", "w"))
    mk = n - k
    terms = _merge_uni([
        ((1 << s) + 1, u),
        ((1 << mk) + (1 << (k + s)), fld.pow(u, 1 << k)),
        ((1 << mk) + 1, v),
        ((1 << s) + (1 << (k + s)), fld.mul(w, fld.pow(u, (1 << k) + 1))),
    ], fld.order)
    return univariate_evaluate(fld, terms, f"family3(n={n},s={s},v={v:#x},w={w:#x})")


# 4: L(z)^(2^t+1) + v z^(2^t+1), L(z) = z^(2^(t+s)) + mu z^(2^s) + z, n = 3t

def _scan4(m, fld):
    n = fld.n
    if n % 3:
        return
    t = n // 3
    for s in range(1, t):
        for v in _subfield(fld, t):
            for mu in range(fld.size):
                yield FamilyParams("4", m, extra={"s": s, "v": v, "mu": mu})


def _check4(p, fld):
    n = fld.n
    if n % 3:
        return f"needs n = 3t, got n={n}"
    t = n // 3
    s, v, mu = p.extra.get("s", 0), p.extra.get("v", 0), p.extra.get("mu", 0)
    if gcd(s, t) != 1:
        return f"needs gcd(s, t) = 1 (s={s}, t={t})"
    if v == 0 or not fld.in_subfield(v, t):
        return f"v must be a nonzero element of F_2^{t}"
    if fld.pow(mu, (1 << (2 * t)) + (1 << t) + 1) == 1:
        return "needs mu^(2^(2t) + 2^t + 1) != 1"
    if not is_linearized_permutation(fld, [(1, t + s), (mu, s), (1, 0)]):
        return "L(z) is not a permutation"
    return None


def _build4(p, fld):
    n = fld.n
    t = n // 3
    s, v, mu = p.extra["s"], p.extra["v"], p.extra["mu"]
    z = fld.elements()
    lz = fld.pow_vec(z, 1 << (t + s)) ^ fld.mul_vec(fld.pow_vec(z, 1 << s), mu) ^ z
    vals = fld.pow_vec(lz, (1 << t) + 1) ^ fld.mul_vec(fld.pow_vec(z, (1 << t) + 1), v)
    return TruthTable(n, vals, f"family4(n={n},s={s},v={v:#x},mu={mu:#x})")


# 5: s x^(q+1) + x^(2^i+1) + x^(q(2^i+1)) + c x^(2^i q+1) + c^q x^(2^i+q), q = 2^m

def _scan5(m, fld):
    non_sub = next(s for s in range(fld.size) if not fld.in_subfield(s, m))
    for i in range(1, m):
        for c in range(fld.size):
            yield FamilyParams("5", m, extra={"i": i, "c": c, "s": non_sub})


def _check5(p, fld):
    m = p.m
    q = 1 << m
    i, c, s = p.extra.get("i", 0), p.extra.get("c", 0), p.extra.get("s", 0)
    if gcd(i, m) != 1:
        return f"needs gcd(i, m) = 1 (i={i})"
    if fld.in_subfield(s, m):
        return "s must lie outside F_q"
    z = fld.elements()
    circle = z[(z != 0) & (fld.pow_vec(z, q + 1) == 1)]
    zp = fld.pow_vec(circle, 1 << i)
    vals = fld.mul_vec(zp, circle) ^ fld.mul_vec(zp, c) ^ fld.mul_vec(circle, fld.pow(c, q)) ^ 1
    if has_root(fld, vals):
        return "z^(2^i+1) + c z^(2^i) + c^q z + 1 has a solution with z^(q+1) = 1"
    return None


def _build5(p, fld):
    m = p.m
    q = 1 << m
    i, c, s = p.extra["i"], p.extra["c"], p.extra["s"]
    e = 1 << i
    terms = _merge_uni([(q + 1, s), (e + 1, 1), (q * (e + 1), 1),
                        (e * q + 1, c), (e + q, fld.pow(c, q))], fld.order)
    return univariate_evaluate(fld, terms, f"family5(n={fld.n},i={i},c={c:#x},s={s:#x})")


# 6, 7, 8: x^3 + a^-1 Tr(...)

_TRACE_INNER = {
    "6": (1, [(9, 3)]),
    "7": (3, [(9, 3), (18, 6)]),
    "8": (3, [(18, 6), (36, 12)]),
}


def _scan678(fid):
    def scan(m, fld):
        for a in range(1, fld.size):
            yield FamilyParams(fid, m, extra={"a": a})
    return scan


def _check678(p, fld):
    d = _TRACE_INNER[p.family][0]
    if fld.n % d:
        return f"needs {d} | n"
    if p.extra.get("a", 0) == 0:
        return "needs a != 0"
    return None


def _build678(p, fld):
    d, inner = _TRACE_INNER[p.family]
    a = p.extra["a"]
    ai = fld.inv(a)
    inner = [(e, fld.pow(a, apow)) for e, apow in inner]
    tr = [(e, fld.mul(ai, c)) for e, c in _trace_terms(fld, inner, d)]
    terms = _merge_uni([(3, 1)] + tr, fld.order)
    return univariate_evaluate(fld, terms, f"family{p.family}(n={fld.n},a={a:#x})")


# 9: (xy, x^(2^k+1) + alpha y^((2^k+1) 2^i))
# The second term must involve y: with x alone every (0, y) maps to 0.

def _scan9(m, fld):
    for k in range(1, m):
        for alpha in _non_cubes(fld) or [0]:
            for i in range(m):
                yield FamilyParams("9", m, k, alpha, {"i": i})


def _check9(p, fld):
    m = fld.n
    if m % 2:
        return "needs m even"
    if p.k is None or gcd(p.k, m) != 1:
        return f"needs gcd(k, m) = 1 (k={p.k})"
    if p.alpha is None or fld.is_cube(p.alpha):
        return "alpha must not be a cube"
    return None


def _build9(p, fld):
    q = 1 << p.k
    i = p.extra["i"]
    pair = BivariatePair(fld, ((1, 1, 1),), ((q + 1, 0, 1), (0, (q + 1) << i, p.alpha)), p.k,
                         f"family9(m={fld.n},k={p.k},alpha={p.alpha:#x},i={i})")
    return evaluate(pair)


# 10: (xy, x^(2^3k + 2^2k) + a x^(2^2k) y^(2^k) + b y^(2^k+1))

def _scan10(m, fld):
    for k in range(1, m):
        for a in range(fld.size):
            for b in range(fld.size):
                yield FamilyParams("10", m, k, extra={"a": a, "b": b})


def _check10(p, fld):
    k = p.k
    if k is None or gcd(k, fld.n) != 1:
        return f"needs gcd(k, m) = 1 (k={k})"
    a, b = p.extra.get("a", 0), p.extra.get("b", 0)
    z = fld.elements()
    if has_root(fld, fld.pow_vec(z, (1 << k) + 1) ^ fld.mul_vec(z, a) ^ b):
        return "z^(2^k+1) + az + b has a root"
    return None


def _build10(p, fld):
    q = 1 << p.k
    a, b = p.extra["a"], p.extra["b"]
    pair = BivariatePair(fld, ((1, 1, 1),), ((q ** 3 + q ** 2, 0, 1), (q ** 2, q, a), (0, q + 1, b)), p.k,
                         f"family10(m={fld.n},k={p.k},a={a:#x},b={b:#x})")
    return evaluate(pair)


# 11: (xy, x^(2^i+1) + x^(2^(i+m/2)) y^(2^(m/2)) + b x y^(2^i) + c y^(2^i+1))

def _scan11(m, fld):
    for i in range(1, m):
        for b in range(fld.size):
            for c in range(fld.size):
                yield FamilyParams("11", m, extra={"i": i, "b": b, "c": c})


def _check11(p, fld):
    m = fld.n
    if m % 2:
        return "needs m even"
    i, b, c = p.extra.get("i", 0), p.extra.get("b", 0), p.extra.get("c", 0)
    if gcd(i, m) != 1:
        return f"needs gcd(i, m) = 1 (i={i})"
    big_q = 1 << (m // 2)
    z = fld.elements()
    zp = fld.pow_vec(z, 1 << i)
    inner = fld.mul_vec(fld.mul_vec(zp, z), c) ^ fld.mul_vec(zp, b) ^ 1
    if has_root(fld, fld.pow_vec(inner, big_q + 1) ^ fld.pow_vec(z, big_q + 1)):
        return "(c z^(2^i+1) + b z^(2^i) + 1)^(2^(m/2)+1) + z^(2^(m/2)+1) has a root"
    return None


def _build11(p, fld):
    m = fld.n
    i, b, c = p.extra["i"], p.extra["b"], p.extra["c"]
    h = m // 2
    e = 1 << i
    pair = BivariatePair(fld, ((1, 1, 1),),
                         ((e + 1, 0, 1), (1 << (i + h), 1 << h, 1), (1, e, b), (0, e + 1, c)), i,
                         f"family11(m={m},i={i},b={b:#x},c={c:#x})")
    return evaluate(pair)


# 12: (x^(2^i+1) + B y^(2^i+1), x^(2^(k+m/2)) y + (a/B) x y^(2^(k+m/2)))
# The row leaves i free; it is taken equal to k.

def _scan12(m, fld):
    sub = _subfield(fld, m // 2) if m % 2 == 0 else []
    for k in range(1, m):
        for big_b in _non_cubes(fld):
            for a in sub:
                yield FamilyParams("12", m, k, extra={"i": k, "B": big_b, "a": a})


def _check12(p, fld):
    m = fld.n
    if m % 4 != 2:
        return "needs m = 2 mod 4"
    k = p.k
    if k is None or gcd(k, m) != 1:
        return f"needs gcd(k, m) = 1 (k={k})"
    big_b, a = p.extra.get("B", 0), p.extra.get("a", 0)
    if big_b == 0 or fld.is_cube(big_b):
        return "B must not be a cube"
    h = m // 2
    if a == 0 or not fld.in_subfield(a, h):
        return f"a must be a nonzero element of F_2^{h}"
    if fld.pow(big_b, (1 << k) + (1 << (k + h))) == fld.pow(a, (1 << k) + 1):
        return "needs B^(2^k + 2^(k+m/2)) != a^(2^k+1)"
    return None


def _build12(p, fld):
    m = fld.n
    k = p.k
    i = p.extra.get("i", k)
    big_b, a = p.extra["B"], p.extra["a"]
    e = 1 << (k + m // 2)
    pair = BivariatePair(fld, (((1 << i) + 1, 0, 1), (0, (1 << i) + 1, big_b)),
                         ((e, 1, 1), (1, e, fld.div(a, big_b))), k,
                         f"family12(m={m},k={k},B={big_b:#x},a={a:#x})")
    return evaluate(pair)


KNOWN = {
    f.fid: f for f in [
        KnownFamily("1", "x^(2^i+1)", False, _scan1, _check1, _build1),
        KnownFamily("2", "x^(2^s+1) + u^(2^k-1) x^(2^(ik)+2^(tk+s))", False, _scan2, _check2, _build2),
        KnownFamily("3", "u x^(2^s+1) + u^(2^k) x^(2^-k+2^(k+s)) + v x^(2^-k+1) + w u^(2^k+1) x^(2^s+2^(k+s))",
                    False, _scan3, _check3, _build3),
        KnownFamily("4", "L(z)^(2^m+1) + v z^(2^m+1)", False, _scan4, _check4, _build4),
        KnownFamily("5", "s x^(q+1) + x^(2^i+1) + x^(q(2^i+1)) + c x^(2^i q+1) + c^q x^(2^i+q)",
                    False, _scan5, _check5, _build5),
        KnownFamily("6", "x^3 + a^-1 Tr(a^3 x^9)", False, _scan678("6"), _check678, _build678),
        KnownFamily("7", "x^3 + a^-1 Tr_3(a^3 x^9 + a^6 x^18)", False, _scan678("7"), _check678, _build678),
        KnownFamily("8", "x^3 + a^-1 Tr_3(a^6 x^18 + a^12 x^36)", False, _scan678("8"), _check678, _build678),
        KnownFamily("9", "(xy, x^(2^k+1) + alpha y^((2^k+1) 2^i))", True, _scan9, _check9, _build9),
        KnownFamily("10", "(xy, x^(2^3k+2^2k) + a x^(2^2k) y^(2^k) + b y^(2^k+1))", True,
                    _scan10, _check10, _build10),
        KnownFamily("11", "(xy, x^(2^i+1) + x^(2^(i+m/2)) y^(2^(m/2)) + b x y^(2^i) + c y^(2^i+1))", True,
                    _scan11, _check11, _build11),
        KnownFamily("12", "(x^(2^i+1) + B y^(2^i+1), x^(2^(k+m/2)) y + (a/B) x y^(2^(k+m/2)))", True,
                    _scan12, _check12, _build12),
    ]
}

KNOWN_FAMILIES = tuple(KNOWN)
ALIASES = {"gold": "1"}


def family_id(name) -> str:
    name = str(name).lower()
    return ALIASES.get(name, name)


def family_field(fid: str, m: int, fld: BinaryField | None = None) -> BinaryField:
    """Field a known family is defined over: F_{2^m} if bivariate, else F_{2^{2m}}."""
    fam = KNOWN[fid]
    if fld is None:
        return get_field(m) if fam.bivariate else get_extension(m)
    if fam.bivariate:
        base = getattr(fld, "base", fld)
        if base.n != m:
            raise InvalidParameters(f"family {fid} needs F_2^{m}, got degree {base.n}")
        return base
    if fld.n != 2 * m:
        raise InvalidParameters(f"family {fid} needs a field of degree {2 * m}, got {fld.n}")
    return fld


def _check_known(params: FamilyParams, fld: BinaryField | None = None) -> str | None:
    fid = family_id(params.family)
    return KNOWN[fid].check(params, family_field(fid, params.m, fld))


def known_instance(fid, m: int = 6, fld: BinaryField | None = None,
                   **fixed) -> tuple[FamilyParams, TruthTable]:
    """First valid parameter choice for a known family; the table must be APN.

    ``fixed`` pins parameters (e.g. ``i=1`` for Gold); the scan skips
    candidates that disagree with it.
    """
    fid = family_id(fid)
    if fid not in KNOWN:
        raise InvalidParameters(f"unknown family {fid!r}")
    fam = KNOWN[fid]
    fld = family_field(fid, m, fld)
    first_reason = None
    for params in fam.scan(m, fld):
        if any(_param(params, key) != v for key, v in fixed.items()):
            continue
        reason = fam.check(params, fld)
        if reason is not None:
            first_reason = first_reason or reason
            continue
        tt = fam.build(params, fld)
        if not is_apn(tt):
            raise ConstructionError(f"family {fid}: valid parameters {params.to_json()} give a non-APN table")
        return params, tt
    if fixed and first_reason:
        raise InvalidParameters(f"family {fid}: {first_reason}")
    raise ConstructionError(f"family {fid}: no valid parameters at m={m}")


def _param(params: FamilyParams, key: str):
    if key in ("k", "alpha"):
        return getattr(params, key)
    return params.extra.get(key)


def known_family(fid, m: int = 6, fld: BinaryField | None = None, **fixed) -> TruthTable:
    return known_instance(fid, m, fld, **fixed)[1]


def build_known(params: FamilyParams, fld: BinaryField | None = None) -> TruthTable:
    fid = family_id(params.family)
    fld = family_field(fid, params.m, fld)
    reason = KNOWN[fid].check(params, fld)
    if reason is not None:
        raise InvalidParameters(reason)
    return KNOWN[fid].build(params, fld)
