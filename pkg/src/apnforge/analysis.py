"""Walsh spectra and the subspace-count invariant N_F.

Component functions are indexed by an output mask ``b``: the component is
``x -> <b, F(x)>`` (parity of ``b & F(x)``).  Passing a ``field`` to
:func:`walsh_sheet` relabels components through the trace form instead,
``x -> tr(b * F(x))``.  The two labellings differ by a linear bijection of
the b-space, so NB_F sizes and every subspace count agree.
"""

from __future__ import annotations

import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .field import BinaryField, GF2m
from .poly import beta_decomposition
from .vbf import (TruthTable, compose_linear, differential_uniformity, is_quadratic,
                  linear_map_table, preimage_profile)

DEFAULT_MAX_DIM = 4


class AnalysisError(ValueError):
    pass


def _parity_table(n: int) -> np.ndarray:
    idx = np.arange(1 << n, dtype=np.int64)
    p = np.zeros_like(idx)
    for i in range(n):
        p ^= (idx >> i) & 1
    return p


def fwht(a: np.ndarray) -> np.ndarray:
    """In-place Walsh-Hadamard transform along the last axis (natural order)."""
    size = a.shape[-1]
    lead = a.shape[:-1]
    h = 1
    while h < size:
        v = a.reshape(*lead, size // (2 * h), 2, h)
        lo = v[..., 0, :].copy()
        hi = v[..., 1, :]
        v[..., 0, :] += hi
        v[..., 1, :] = lo - hi
        h *= 2
    return a


def trace_masks(fld: BinaryField) -> np.ndarray:
    """``T[b]`` with ``tr(b * z) == parity(T[b] & z)`` for all z."""
    basis = np.array([1 << i for i in range(fld.n)], dtype=np.int64)
    masks = np.zeros(fld.size, dtype=np.int64)
    b = fld.elements()
    for i, e in enumerate(basis):
        masks |= fld.trace_vec(fld.mul_vec(b, e)) << i
    return masks


@dataclass(frozen=True, eq=False)
class WalshSheet:
    """Per-component Walsh data, row b for every b (row 0 is unused)."""

    n: int
    abs_values: tuple[int, ...]   # distinct |W_F(a,b)| over all a and b != 0
    abs_counts: np.ndarray        # [b, j] = #{a : |W_F(a,b)| = abs_values[j]}
    w0: np.ndarray                # W_F(0, b)
    bent: np.ndarray
    has_zero: np.ndarray
    parseval: np.ndarray          # sum_a W_F(a,b)^2 == 2^(2n)

    def multiset(self, b: int) -> dict[int, int]:
        return {v: int(c) for v, c in zip(self.abs_values, self.abs_counts[b]) if c}


def walsh_spectrum(tt: TruthTable, fld: BinaryField | None = None, rows=None) -> np.ndarray:
    """Full matrix ``W[b, a] = sum_x (-1)^(<a,x> + <b,F(x)>)`` for the given rows."""
    n = tt.n
    rows = np.arange(1 << n, dtype=np.int64) if rows is None else np.asarray(rows, dtype=np.int64)
    masks = rows if fld is None else trace_masks(_check_field(fld, n))[rows]
    parity = _parity_table(n)
    signs = 1 - 2 * parity[masks[:, None] & tt.values[None, :]]
    w = fwht(signs.astype(np.int32))
    if fld is not None:
        # W_tr(a, b) = W_dot(T(a), T(b))
        w = w[:, trace_masks(fld)]
    return w


def _check_field(fld: BinaryField, n: int) -> BinaryField:
    if fld.n != n:
        raise AnalysisError(f"field of degree {fld.n} does not match n={n}")
    return fld


def walsh_sheet(tt: TruthTable, fld: BinaryField | None = None, chunk: int = 256) -> WalshSheet:
    n = tt.n
    size = 1 << n
    half = 1 << (n // 2) if n % 2 == 0 else None
    w0 = np.zeros(size, dtype=np.int64)
    bent = np.zeros(size, dtype=bool)
    has_zero = np.zeros(size, dtype=bool)
    parseval = np.zeros(size, dtype=bool)
    per_row: dict[int, dict[int, int]] = {}
    seen: set[int] = set()
    for lo in range(1, size, chunk):
        rows = np.arange(lo, min(lo + chunk, size), dtype=np.int64)
        w = walsh_spectrum(tt, fld, rows)
        aw = np.abs(w)
        w0[rows] = w[:, 0]
        has_zero[rows] = (aw == 0).any(axis=1)
        bent[rows] = (aw == half).all(axis=1) if half else False
        parseval[rows] = (w.astype(np.int64) ** 2).sum(axis=1) == 1 << (2 * n)
        vals = np.unique(aw)
        seen.update(int(v) for v in vals)
        for v in vals:
            cnt = (aw == v).sum(axis=1)
            for r, c in zip(rows, cnt):
                if c:
                    per_row.setdefault(int(r), {})[int(v)] = int(c)
    abs_values = tuple(sorted(seen))
    counts = np.zeros((size, len(abs_values)), dtype=np.int64)
    col = {v: j for j, v in enumerate(abs_values)}
    for r, d in per_row.items():
        for v, c in d.items():
            counts[r, col[v]] = c
    return WalshSheet(n, abs_values, counts, w0, bent, has_zero, parseval)


def nb_set(sheet: WalshSheet, quadratic_shortcut: bool = False) -> np.ndarray:
    """Sorted array of b whose component has a zero Walsh coefficient.

    The shortcut reads only the a=0 column, which is valid for quadratic APN
    functions in even dimension.
    """
    if quadratic_shortcut:
        if sheet.n % 2:
            raise AnalysisError("quadratic shortcut needs even n")
        mask = np.abs(sheet.w0) != 1 << (sheet.n // 2)
    else:
        mask = sheet.has_zero.copy()
    mask[0] = False
    return np.nonzero(mask)[0]


def spectrum_class(sheet: WalshSheet) -> str:
    if sheet.n % 2:
        raise AnalysisError("spectrum class is defined for even n")
    h = sheet.n // 2
    return "gold-like" if set(sheet.abs_values) == {0, 1 << h, 1 << (h + 1)} else "other"


# --- subspace counting ---------------------------------------------------
#
# Each subspace is reached once, through its reduced echelon basis taken in
# order of strictly decreasing leading bit.  Sets of elements are Python ints
# used as bitsets indexed by element value.

class _SubspaceContext:
    def __init__(self, elements, n: int):
        self.n = n
        members = np.zeros(1 << n, dtype=bool)
        members[elements] = True
        self.elements = [int(e) for e in elements]
        # closure[s] = {w in S : w ^ s in S}
        self.closure: dict[int, int] = {}
        arr = np.asarray(self.elements, dtype=np.int64)
        for s in self.elements:
            hits = arr[members[arr ^ s]]
            self.closure[s] = _bitset(hits, n)
        self.lead = [0] * n
        self.zero_at = [0] * n
        for e in self.elements:
            self.lead[e.bit_length() - 1] |= 1 << e
            for p in range(n):
                if not (e >> p) & 1:
                    self.zero_at[p] |= 1 << e

    def allowed_leads(self, below: int, used_bits: int) -> int:
        out = 0
        for lb in range(below):
            if not (used_bits >> lb) & 1:
                out |= self.lead[lb]
        return out

    def count_from(self, seed: int, max_dim: int) -> list[int]:
        counts = [0] * (max_dim + 1)
        counts[1] = 1
        if max_dim < 2:
            return counts
        lb = seed.bit_length() - 1
        stack = [([seed], [seed], seed, lb, self.closure[seed], self.zero_at[lb])]
        while stack:
            basis, span, used, pivot, cand, zero_mask = stack.pop()
            d = len(basis)
            options = cand & zero_mask & self.allowed_leads(pivot, used)
            if not options:
                continue
            counts[d + 1] += options.bit_count()
            if d + 1 >= max_dim:
                continue
            closure = self.closure
            while options:
                low = options & -options
                w = low.bit_length() - 1
                options ^= low
                c = cand & closure[w]
                shifted = [s ^ w for s in span]
                for s in shifted:
                    c &= closure[s]
                wl = w.bit_length() - 1
                stack.append((basis + [w], span + [w] + shifted, used | w, wl, c,
                              zero_mask & self.zero_at[wl]))
        return counts


def _bitset(values, n: int) -> int:
    bits = np.zeros(1 << n, dtype=np.uint8)
    bits[values] = 1
    return int.from_bytes(np.packbits(bits, bitorder="little").tobytes(), "little")


_worker_ctx: _SubspaceContext | None = None


def _worker_init(elements, n):
    global _worker_ctx
    _worker_ctx = _SubspaceContext(elements, n)


def _worker_count(args):
    seeds, max_dim = args
    total = [0] * (max_dim + 1)
    for s in seeds:
        for i, c in enumerate(_worker_ctx.count_from(s, max_dim)):
            total[i] += c
    return total


def count_subspaces(S, max_dim: int, n: int | None = None, threads: int = 1) -> list[int]:
    """``[n_1, ..., n_max_dim]``: subspaces V with V minus {0} inside S."""
    elems = sorted({int(s) for s in S})
    if 0 in elems:
        raise AnalysisError("0 must not belong to S")
    if max_dim < 1:
        return []
    if n is None:
        n = max(max(elems, default=1).bit_length(), 1)
    if not elems:
        return [0] * max_dim
    total = [0] * (max_dim + 1)
    if threads > 1:
        groups = [elems[i::threads] for i in range(threads)]
        with ProcessPoolExecutor(threads, initializer=_worker_init, initargs=(elems, n)) as ex:
            for part in ex.map(_worker_count, [(g, max_dim) for g in groups]):
                total = [a + b for a, b in zip(total, part)]
    else:
        ctx = _SubspaceContext(elems, n)
        for s in elems:
            for i, c in enumerate(ctx.count_from(s, max_dim)):
                total[i] += c
    return total[1:]


def gaussian_binomial(n: int, k: int) -> int:
    """Number of k-dimensional subspaces of F_2^n."""
    if not 0 <= k <= n:
        return 0
    num = den = 1
    for i in range(k):
        num *= (1 << (n - i)) - 1
        den *= (1 << (i + 1)) - 1
    return num // den


# --- invariant profile ---------------------------------------------------

@dataclass(frozen=True)
class InvariantProfile:
    delta: int
    nf: list[int]
    spectrum_class: str
    three_to_one: bool
    nb_size: int

    def to_json(self) -> dict:
        return {"delta": self.delta, "nf": list(self.nf), "spectrum": self.spectrum_class,
                "three_to_one": self.three_to_one, "nb_size": self.nb_size}

    @classmethod
    def from_json(cls, d: dict) -> "InvariantProfile":
        return cls(int(d["delta"]), [int(v) for v in d["nf"]], d["spectrum"],
                   bool(d["three_to_one"]), int(d["nb_size"]))

    def dumps(self) -> str:
        return json.dumps(self.to_json())


def is_three_to_one(tt: TruthTable) -> bool:
    counts = np.bincount(tt.values, minlength=len(tt))
    if counts[0] != 1:
        return False
    rest = counts[1:]
    return bool(np.all((rest == 0) | (rest == 3)))


def trim(counts: list[int]) -> list[int]:
    out = list(counts)
    while out and out[-1] == 0:
        out.pop()
    return out


def invariant_profile(tt: TruthTable, max_dim: int = DEFAULT_MAX_DIM, confirm: bool = True,
                      threads: int = 1, fld: BinaryField | None = None) -> InvariantProfile:
    """Differential uniformity, N_F, spectrum class and the 3-to-1 flag.

    N_F is counted through ``max_dim``.  With ``confirm`` the search runs one
    dimension further whenever the last requested count is nonzero, until a
    zero count proves the sequence has ended.
    """
    ddt = differential_uniformity(tt, threads=threads)
    if ddt.delta != 2:
        raise AnalysisError(f"profile needs an APN function, got delta={ddt.delta}")
    sheet = walsh_sheet(tt, fld)
    nb = nb_set(sheet)
    if tt.n % 2 == 0 and is_quadratic(tt):
        if not np.array_equal(nb, nb_set(sheet, quadratic_shortcut=True)):
            raise AssertionError("NB_F general and quadratic-shortcut modes disagree")
    depth = min(max_dim, tt.n)
    nf = count_subspaces(nb, depth, tt.n, threads)
    if confirm:
        while nf and nf[-1] != 0 and depth < tt.n:
            depth += 1
            nf = count_subspaces(nb, depth, tt.n, threads)
    spec_class = spectrum_class(sheet) if tt.n % 2 == 0 else "other"
    return InvariantProfile(ddt.delta, trim(nf), spec_class, is_three_to_one(tt), int(nb.size))


# --- order-3 symmetry of F1 with k = 1 -----------------------------------

@dataclass(frozen=True)
class SymmetryReport:
    beta: int
    order_three: bool
    square_relation: bool
    invariant: bool
    three_to_one: bool

    @property
    def ok(self) -> bool:
        return self.order_three and self.square_relation and self.invariant and self.three_to_one


def symmetry_map(fld: GF2m, alpha: int, beta: int) -> TruthTable:
    """``L(x, y) = ((beta + 1) x + y / alpha, x / alpha + beta y)`` as a table."""
    m = fld.m
    ia = fld.inv(alpha)
    cols = []
    for i in range(2 * m):
        if i < m:
            x, y = 1 << i, 0
        else:
            x, y = 0, 1 << (i - m)
        u = fld.mul(beta ^ 1, x) ^ fld.mul(ia, y)
        v = fld.mul(ia, x) ^ fld.mul(beta, y)
        cols.append(u | (v << m))
    return linear_map_table(2 * m, cols)


def symmetry_report(tt: TruthTable, fld: GF2m, alpha: int) -> SymmetryReport:
    if tt.n != 2 * fld.m:
        raise AnalysisError("table size does not match 2m")
    beta = beta_decomposition(fld, alpha)
    lin = symmetry_map(fld, alpha, beta)
    ident = TruthTable.identity(tt.n)
    l2 = compose_linear(lin, lin)
    l3 = compose_linear(l2, lin)
    profile = preimage_profile(tt)
    expected = {1: 1, 3: ((1 << tt.n) - 1) // 3}
    return SymmetryReport(
        beta=beta,
        order_three=l3 == ident,
        square_relation=np.array_equal(l2.values, lin.values ^ ident.values),
        invariant=compose_linear(tt, lin) == tt,
        three_to_one=profile == expected and is_three_to_one(tt),
    )


def three_to_one_and_symmetry(tt: TruthTable, fld: GF2m, alpha: int) -> bool:
    return symmetry_report(tt, fld, alpha).ok


def default_threads() -> int:
    return int(os.environ.get("APNFORGE_THREADS", "1"))
