import functools

import pytest

from apnforge.families import f1, f2, known_instance
from apnforge.field import get_field
from apnforge.poly import find_good_alphas
from apnforge.vbf import evaluate


@functools.lru_cache(maxsize=None)
def good_alpha(m: int, k: int = 1) -> int:
    return find_good_alphas(get_field(m), k)[0]


@functools.lru_cache(maxsize=None)
def f1_table(m: int, k: int = 1, alpha: int | None = None):
    return evaluate(f1(m, k, good_alpha(m, k) if alpha is None else alpha))


@functools.lru_cache(maxsize=None)
def f2_table(m: int, alpha: int | None = None):
    return evaluate(f2(m, good_alpha(m) if alpha is None else alpha))


@functools.lru_cache(maxsize=None)
def known_table(fid: str, m: int = 6):
    return known_instance(fid, m)[1]


@pytest.fixture(scope="session")
def gold12():
    return known_table("1")
