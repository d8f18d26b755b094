"""(n,n)-functions as truth tables.

A :class:`TruthTable` is the evaluated form every analysis consumes.  For
bivariate functions over ``F_{2^m} x F_{2^m}`` the index and the value both
pack a pair as ``(y << m) | x``: low m bits hold the first coordinate (x, or
f for outputs), high m bits the second (y, or g).
"""

from __future__ import annotations

import json
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dc_field
from pathlib import Path

import numpy as np

from .field import BinaryField, GF2m

MAX_N = 16
WORST_PAIRS_CAP = 16

FNV_OFFSET = 0xCBF29CE484222325
FNV_PRIME = 0x100000001B3


class TableFormatError(ValueError):
    """Malformed or inconsistent truth-table file."""


@dataclass(frozen=True, eq=False)
class TruthTable:
    n: int
    values: np.ndarray
    source: str = ""

    def __post_init__(self):
        if not 2 <= self.n <= MAX_N:
            raise ValueError(f"n={self.n} outside 2..{MAX_N}")
        v = np.array(self.values, dtype=np.int64)
        if v.shape != (1 << self.n,):
            raise ValueError(f"expected {1 << self.n} values, got shape {v.shape}")
        if v.size and (v.min() < 0 or v.max() >= 1 << self.n):
            raise ValueError(f"values must be {self.n}-bit")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    def __len__(self) -> int:
        return self.values.size

    def __getitem__(self, x):
        return self.values[x]

    def __eq__(self, other) -> bool:
        if not isinstance(other, TruthTable):
            return NotImplemented
        return self.n == other.n and np.array_equal(self.values, other.values)

    __hash__ = None

    def digest(self) -> str:
        return f"{fnv1a64(self.to_bytes()):016x}"

    def to_bytes(self) -> bytes:
        return self.values.astype("<u2").tobytes()

    @classmethod
    def identity(cls, n: int) -> "TruthTable":
        return cls(n, np.arange(1 << n), "identity")

    @classmethod
    def zero(cls, n: int) -> "TruthTable":
        return cls(n, np.zeros(1 << n, dtype=np.int64), "zero")


def fnv1a64(data: bytes) -> int:
    h = FNV_OFFSET
    for byte in data:
        h ^= byte
        h = (h * FNV_PRIME) & 0xFFFFFFFFFFFFFFFF
    return h


# --- bivariate polynomials -----------------------------------------------

Term = tuple[int, int, int]  # (i, j, c) meaning c * x**i * y**j


@dataclass(frozen=True)
class BivariatePair:
    """``F(x, y) = (f(x, y), g(x, y))`` with coefficients in ``field``."""

    field: GF2m
    terms_f: tuple[Term, ...]
    terms_g: tuple[Term, ...]
    k: int | None = None
    label: str = ""

    def __post_init__(self):
        for i, j, c in self.terms_f + self.terms_g:
            if i < 0 or j < 0:
                raise ValueError("negative exponent")
            self.field.check(c)

    @property
    def m(self) -> int:
        return self.field.m

    @property
    def n(self) -> int:
        return 2 * self.field.m

    def __add__(self, other: "BivariatePair") -> "BivariatePair":
        if self.field != other.field:
            raise ValueError("pairs over different fields")
        return BivariatePair(self.field, _merge(self.terms_f + other.terms_f),
                             _merge(self.terms_g + other.terms_g))


def _merge(terms) -> tuple[Term, ...]:
    acc: dict[tuple[int, int], int] = {}
    for i, j, c in terms:
        acc[i, j] = acc.get((i, j), 0) ^ c
    return tuple((i, j, c) for (i, j), c in sorted(acc.items()) if c)


def _eval_terms(fld: GF2m, terms, x, y, cache) -> np.ndarray:
    out = np.zeros_like(x)
    for i, j, c in terms:
        if c == 0:
            continue
        if ("x", i) not in cache:
            cache["x", i] = fld.pow_vec(x, i)
        if ("y", j) not in cache:
            cache["y", j] = fld.pow_vec(y, j)
        out ^= fld.mul_vec(fld.mul_vec(cache["x", i], cache["y", j]), c)
    return out


def evaluate(pair: BivariatePair) -> TruthTable:
    fld = pair.field
    m = fld.m
    idx = np.arange(1 << (2 * m), dtype=np.int64)
    x = idx & ((1 << m) - 1)
    y = idx >> m
    cache: dict = {}
    f = _eval_terms(fld, pair.terms_f, x, y, cache)
    g = _eval_terms(fld, pair.terms_g, x, y, cache)
    return TruthTable(2 * m, f | (g << m), pair.label)


def univariate_evaluate(fld: BinaryField, terms, source: str = "") -> TruthTable:
    """Evaluate ``sum c * x**e`` over every element of ``fld``."""
    x = fld.elements()
    out = np.zeros_like(x)
    for e, c in terms:
        if c:
            out ^= fld.mul_vec(fld.pow_vec(x, e), fld.check(c))
    return TruthTable(fld.n, out, source)


# --- differential properties ---------------------------------------------

@dataclass(frozen=True)
class DdtSummary:
    delta: int
    worst_pairs: list[tuple[int, int]] = dc_field(default_factory=list)

    @property
    def apn(self) -> bool:
        return self.delta == 2

    def to_json(self) -> dict:
        return {"delta": self.delta, "apn": self.apn,
                "worst_pairs": [list(p) for p in self.worst_pairs]}


def _chunk_max(values: np.ndarray, a_chunk: np.ndarray):
    size = values.size
    x = np.arange(size, dtype=np.int64)
    d = values[x[None, :] ^ a_chunk[:, None]] ^ values[None, :]
    flat = d + (np.arange(a_chunk.size, dtype=np.int64) * size)[:, None]
    counts = np.bincount(flat.ravel(), minlength=a_chunk.size * size).reshape(a_chunk.size, size)
    return counts


def _a_chunks(n: int, rows: int):
    size = 1 << n
    step = max(1, rows)
    return [np.arange(lo, min(lo + step, size), dtype=np.int64) for lo in range(1, size, step)]


def _chunk_rows(n: int) -> int:
    return max(1, (1 << 22) >> n)


def differential_uniformity(tt: TruthTable, threads: int = 1) -> DdtSummary:
    """Exhaustive differential uniformity; the full DDT is never stored."""

    def work(a_chunk):
        counts = _chunk_max(tt.values, a_chunk)
        best = int(counts.max())
        rows, cols = np.nonzero(counts == best)
        pairs = [(int(a_chunk[r]), int(c)) for r, c in zip(rows[:WORST_PAIRS_CAP], cols[:WORST_PAIRS_CAP])]
        return best, pairs

    chunks = _a_chunks(tt.n, _chunk_rows(tt.n))
    if threads > 1:
        with ThreadPoolExecutor(threads) as ex:
            results = list(ex.map(work, chunks))
    else:
        results = [work(c) for c in chunks]
    delta = max(r[0] for r in results)
    worst: list[tuple[int, int]] = []
    for best, pairs in results:
        if best == delta:
            worst.extend(pairs)
    return DdtSummary(delta, sorted(worst)[:WORST_PAIRS_CAP])


def is_apn(tt: TruthTable) -> bool:
    for a_chunk in _a_chunks(tt.n, _chunk_rows(tt.n)):
        if _chunk_max(tt.values, a_chunk).max() > 2:
            return False
    return True


def preimage_profile(tt: TruthTable) -> dict[int, int]:
    """Map preimage size -> number of image points with that many preimages."""
    counts = np.bincount(tt.values, minlength=len(tt))
    return dict(sorted(Counter(int(c) for c in counts if c).items()))


def algebraic_degree(tt: TruthTable) -> int:
    """Max algebraic degree over the n coordinate functions (Moebius transform)."""
    n = tt.n
    anf = ((tt.values[:, None] >> np.arange(n)) & 1).astype(np.uint8)
    for i in range(n):
        step = 1 << i
        view = anf.reshape(-1, 2, step, n)
        view[:, 1] ^= view[:, 0]
    weights = np.array([bin(u).count("1") for u in range(len(tt))])
    nonzero = anf.any(axis=1)
    return int(weights[nonzero].max()) if nonzero.any() else 0


def is_quadratic(tt: TruthTable) -> bool:
    return algebraic_degree(tt) <= 2


# --- combinators ---------------------------------------------------------

def add_pointwise(t1: TruthTable, t2: TruthTable) -> TruthTable:
    if t1.n != t2.n:
        raise ValueError(f"size mismatch: n={t1.n} vs n={t2.n}")
    return TruthTable(t1.n, t1.values ^ t2.values)


def compose_linear(tt: TruthTable, lin: TruthTable) -> TruthTable:
    """``F o L`` where ``lin`` is the value table of L."""
    if tt.n != lin.n:
        raise ValueError(f"size mismatch: n={tt.n} vs n={lin.n}")
    return TruthTable(tt.n, tt.values[lin.values])


def compose_output(lin: TruthTable, tt: TruthTable) -> TruthTable:
    """``L o F``."""
    if tt.n != lin.n:
        raise ValueError(f"size mismatch: n={tt.n} vs n={lin.n}")
    return TruthTable(tt.n, lin.values[tt.values])


def linear_map_table(n: int, columns) -> TruthTable:
    """Value table of the F_2-linear map sending bit i to ``columns[i]``."""
    cols = np.asarray(columns, dtype=np.int64)
    idx = np.arange(1 << n, dtype=np.int64)
    out = np.zeros_like(idx)
    for i in range(n):
        out ^= np.where((idx >> i) & 1, cols[i], 0)
    return TruthTable(n, out)


def random_invertible_linear(n: int, rng: np.random.Generator) -> TruthTable:
    while True:
        cols = [int(c) for c in rng.integers(0, 1 << n, size=n)]
        if gf2_rank(cols) == n:
            return linear_map_table(n, cols)


def gf2_rank(vectors) -> int:
    basis: list[int] = []
    for v in vectors:
        v = int(v)
        for b in basis:
            v = min(v, v ^ b)
        if v:
            basis.append(v)
    return len(basis)


# --- file format ---------------------------------------------------------

def save_table(tt: TruthTable, path) -> Path:
    """Write ``path`` (2^n little-endian u16 words) and ``path.json`` header."""
    path = Path(path)
    if tt.n > 16:
        raise ValueError("u16 words hold n <= 16 only")
    path.write_bytes(tt.to_bytes())
    header = {"n": tt.n, "source": tt.source, "hash": tt.digest()}
    header_path(path).write_text(json.dumps(header) + "\n")
    return path


def header_path(path) -> Path:
    path = Path(path)
    return path.with_name(path.name + ".json")


def load_table(path) -> TruthTable:
    path = Path(path)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise TableFormatError(f"cannot read {path}: {exc}") from exc
    hp = header_path(path)
    header = None
    if hp.exists():
        try:
            header = json.loads(hp.read_text())
            n = int(header["n"])
        except (ValueError, KeyError, TypeError) as exc:
            raise TableFormatError(f"bad header {hp}: {exc}") from exc
    else:
        words = len(raw) // 2
        n = words.bit_length() - 1
        if words == 0 or words != 1 << n:
            raise TableFormatError(f"{path}: {len(raw)} bytes is not 2^n u16 words")
    if not 2 <= n <= MAX_N or len(raw) != 2 << n:
        raise TableFormatError(f"{path}: expected {2 << n} bytes for n={n}, found {len(raw)}")
    values = np.frombuffer(raw, dtype="<u2").astype(np.int64)
    if values.max() >= 1 << n:
        raise TableFormatError(f"{path}: entries exceed {n} bits")
    tt = TruthTable(n, values, header.get("source", "") if header else path.name)
    if header and "hash" in header and header["hash"] != tt.digest():
        raise TableFormatError(f"{path}: hash mismatch ({header['hash']} != {tt.digest()})")
    return tt
