from math import gcd

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from apnforge.field import get_field
from apnforge.poly import (PreconditionError, beta_decomposition, cubic_roots, find_good_alphas,
                           is_linearized_permutation, pair_equation_unique_solution, pair_equation_values,
                           linearized_is_permutation, mobius_phi_has_root, phi_has_root,
                           square_root_closure_check)


def coprime_ks(m, limit=None):
    return [k for k in range(1, limit or m) if gcd(k, m) == 1]


def test_phi_examples():
    f4 = get_field(4)
    assert phi_has_root(f4, 1, 0)
    assert not phi_has_root(f4, 1, 1)
    assert phi_has_root(get_field(3), 1, 1)
    with pytest.raises(PreconditionError):
        phi_has_root(get_field(6), 2, 1)


def test_good_alpha_examples():
    assert 1 in find_good_alphas(get_field(4), 1)
    good3 = find_good_alphas(get_field(3), 1)
    assert good3 and 0 not in good3 and 1 not in good3
    # oracle: complement of the image of x -> x^3 + x
    f3 = get_field(3)
    image = {f3.pow(x, 3) ^ x for x in range(8)}
    assert good3 == sorted(set(range(8)) - image)


@pytest.mark.parametrize("m", range(2, 13))
def test_good_alphas_exist_and_are_sorted(m):
    fld = get_field(m)
    for k in coprime_ks(m):
        good = find_good_alphas(fld, k)
        assert good and good == sorted(good) and 0 not in good
        assert all(not phi_has_root(fld, k, a) for a in good[:4])


@pytest.mark.parametrize("m,k", [(4, 1), (5, 2), (6, 1), (7, 3), (8, 3)])
def test_root_freeness_closed_under_squaring(m, k):
    fld = get_field(m)
    assert all(square_root_closure_check(fld, k, a) for a in range(fld.size))


@pytest.mark.parametrize("m", range(2, 9))
def test_rootless_iff_linearized_permutation(m):
    fld = get_field(m)
    for k in [k for k in (1, 2, 3) if gcd(k, m) == 1]:
        good = set(find_good_alphas(fld, k))
        for a in range(fld.size):
            assert (a in good) == linearized_is_permutation(fld, 1, 1, a, k)


def test_linearized_examples():
    f4 = get_field(4)
    assert linearized_is_permutation(f4, 0, 0, 1, 1)
    assert not linearized_is_permutation(f4, 0, 1, 1, 1)
    assert linearized_is_permutation(f4, 1, 1, 1, 1)
    # kernel oracle by brute force
    for c in range(16):
        terms = [(1, 2), (1, 1), (c, 0)]
        image = {f4.pow_q(x, 2) ^ f4.pow_q(x, 1) ^ f4.mul(c, x) for x in range(16)}
        assert is_linearized_permutation(f4, terms) == (len(image) == 16)


@pytest.mark.parametrize("m,k", [(3, 1), (4, 1), (5, 2), (6, 1)])
def test_mobius_transform_keeps_rootlessness(m, k):
    fld = get_field(m)
    rng = np.random.default_rng(m * 10 + k)
    good = find_good_alphas(fld, k)
    done = 0
    while done < 50:
        a, b, c, d = (int(v) for v in rng.integers(0, fld.size, 4))
        if fld.mul(a, d) == fld.mul(b, c):
            continue
        alpha = good[int(rng.integers(len(good)))]
        assert not mobius_phi_has_root(fld, k, alpha, a, b, c, d)
        done += 1


def test_cubic_examples():
    r = cubic_roots(get_field(2), 0, 1)
    assert r.root_count == 3 and sorted(r.roots) == [1, 2, 3]
    f3 = get_field(3)
    for alpha in find_good_alphas(f3, 1):
        assert cubic_roots(f3, 1, alpha).root_count == 0
    with pytest.raises(PreconditionError):
        cubic_roots(f3, 1, 0)


@pytest.mark.parametrize("m", range(2, 9))
def test_cubic_prediction_matches_scan_everywhere(m):
    fld = get_field(m)
    z = fld.elements()
    z3 = fld.pow_vec(z, 3)
    for a in range(fld.size):
        base = z3 ^ fld.mul_vec(z, a)
        counts = np.bincount(base, minlength=fld.size)
        for b in range(1, fld.size):
            rep = cubic_roots(fld, a, b)
            assert rep.root_count == counts[b] == len(rep.roots)
            assert all(fld.pow(r, 3) ^ fld.mul(a, r) ^ b == 0 for r in rep.roots)


@pytest.mark.parametrize("m", range(3, 9))
def test_pair_equation_uniqueness_and_trace(m):
    fld = get_field(m)
    for alpha in find_good_alphas(fld, 1):
        assert pair_equation_values(fld, alpha)[(1 << m) | alpha] == 0
        assert pair_equation_unique_solution(fld, alpha)
        assert fld.trace(fld.inv(fld.square(alpha))) == fld.trace(1)


def test_pair_equation_m4_alpha1():
    assert pair_equation_unique_solution(get_field(4), 1)


@pytest.mark.parametrize("m", [3, 4, 5, 6])
def test_beta_decomposition(m):
    fld = get_field(m)
    for alpha in find_good_alphas(fld, 1):
        beta = beta_decomposition(fld, alpha)
        assert fld.square(beta) ^ beta ^ 1 == fld.inv(fld.square(alpha))
    assert beta_decomposition(get_field(4), 1) == 0
    with pytest.raises(PreconditionError):
        beta_decomposition(fld, 0)


def test_beta_rejects_wrong_trace():
    f4 = get_field(4)
    bad = next(a for a in range(1, 16) if f4.trace(f4.inv(f4.square(a))) != f4.trace(1))
    with pytest.raises(PreconditionError):
        beta_decomposition(f4, bad)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 1023), st.sampled_from([1, 3, 7, 9]))
def test_phi_agrees_with_direct_scan(alpha, k):
    fld = get_field(10)
    q = 1 << k
    direct = any(fld.pow(x, q + 1) ^ x ^ alpha == 0 for x in range(fld.size))
    assert phi_has_root(fld, k, alpha) == direct
