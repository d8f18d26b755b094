from math import gcd

import pytest

from apnforge.families import (KNOWN, KNOWN_FAMILIES, ConstructionError, FamilyParams,
                               InvalidParameters, build_known, dillon_terms, f1, f2, family_field,
                               golgolu_f1, golgolu_f2, known_instance, lzlq, validate)
from apnforge.field import get_field
from apnforge.poly import find_good_alphas
from apnforge.vbf import add_pointwise, evaluate, is_apn, is_quadratic

from conftest import known_table


def test_f1_term_lists():
    pair = f1(4, 1, 1)
    assert pair.terms_f == ((3, 0, 1), (1, 2, 1), (0, 3, 1))
    assert len([t for t in pair.terms_g if t[2]]) == 3  # (1+alpha)^q vanishes at alpha = 1
    fld = get_field(5)
    alpha = find_good_alphas(fld, 2)[0]
    g = dict(((i, j), c) for i, j, c in f1(5, 2, alpha).terms_g)
    assert g[(1, 16)] == fld.pow(1 ^ alpha, 4) and g[(17, 0)] == 1 and g[(0, 17)] == alpha


def test_f1_f2_reject_bad_alpha():
    with pytest.raises(InvalidParameters, match="root"):
        f1(4, 1, 0)
    with pytest.raises(InvalidParameters):
        f2(4, 0)
    with pytest.raises(InvalidParameters, match="gcd"):
        f1(6, 2, 1)
    with pytest.raises(InvalidParameters):
        f1(3, 1, 1)  # x^3 + x + 1 has a root in F_8


def test_new_instances_are_apn():
    assert is_apn(evaluate(f1(6, 1, find_good_alphas(get_field(6), 1)[0])))
    assert is_apn(evaluate(f1(5, 2, find_good_alphas(get_field(5), 2)[0])))
    assert is_apn(evaluate(f2(6, find_good_alphas(get_field(6), 1)[-1])))


@pytest.mark.parametrize("m", [4, 5, 7, 8])
def test_f1_contains_first_golgolu_family(m):
    for k in range(1, m):
        if gcd(3 * k, m) == 1:
            assert evaluate(f1(m, k, 1)) == evaluate(golgolu_f1(m, k))


@pytest.mark.parametrize("m", [4, 5, 7])
def test_f2_contains_lzlq(m):
    assert evaluate(f2(m, 1)) == evaluate(lzlq(m))


def test_golgolu_conditions():
    assert is_apn(evaluate(golgolu_f2(5, 1)))
    assert is_apn(evaluate(golgolu_f1(4, 1)))
    with pytest.raises(InvalidParameters):
        golgolu_f2(6, 1)
    with pytest.raises(InvalidParameters):
        golgolu_f1(6, 1)
    with pytest.raises(InvalidParameters):
        lzlq(6)


@pytest.mark.parametrize("m", range(3, 9))
def test_difference_of_new_families_is_dillon_pair(m):
    for alpha in find_good_alphas(get_field(m), 1):
        diff = add_pointwise(evaluate(f2(m, alpha)), evaluate(f1(m, 1, alpha)))
        assert diff == evaluate(dillon_terms(m, alpha))
        assert evaluate(f2(m, alpha) + f1(m, 1, alpha)) == diff


@pytest.mark.parametrize("m", range(3, 9))
def test_f1_and_f2_share_the_alpha_condition(m):
    fld = get_field(m)
    for alpha in range(fld.size):
        ok1, _ = validate(FamilyParams("f1", m, 1, alpha))
        ok2, _ = validate(FamilyParams("f2", m, 1, alpha))
        assert ok1 == ok2


def test_validate_examples():
    assert validate(FamilyParams("f1", 6, 3, 6)) == (False, "gcd(k=3, m=6) must be 1")
    ok, reason = validate(FamilyParams("f2", 5, 1, 0))
    assert not ok and "alpha" in reason
    assert validate(FamilyParams("f1", 6, 1, 6)) == (True, "ok")
    assert not validate(FamilyParams("nope", 6))[0]
    # family 5: a c whose hexanomial has a root on the unit circle
    fld = family_field("5", 6)
    s = next(v for v in range(fld.size) if not fld.in_subfield(v, 6))
    bad = [c for c in range(64) if not validate(FamilyParams("5", 6, extra={"i": 1, "c": c, "s": s}), fld)[0]]
    assert bad
    reason = validate(FamilyParams("5", 6, extra={"i": 1, "c": bad[0], "s": s}), fld)[1]
    assert "z^(q+1) = 1" in reason
    # family 9 needs a non-cube
    assert not validate(FamilyParams("9", 6, 1, 1, {"i": 0}))[0]
    # family 12 needs m = 2 mod 4
    assert "2 mod 4" in validate(FamilyParams("12", 4, 1, extra={"B": 2, "a": 1}))[1]


def test_params_json_round_trip():
    params, _ = known_instance("5", 6)
    again = FamilyParams.from_json(params.to_json())
    assert again == params
    p = FamilyParams("f1", 6, 1, 6)
    assert p.to_json() == {"family": "f1", "m": 6, "k": 1, "alpha": "0x6", "extra": {}}
    assert FamilyParams.from_json(p.to_json()) == p


@pytest.mark.parametrize("fid", KNOWN_FAMILIES)
def test_known_family_instances_at_n12(fid):
    params, tt = known_instance(fid, 6)
    assert tt.n == 12
    assert validate(params)[0]
    assert is_apn(tt) and is_quadratic(tt)
    assert build_known(params) == tt


def test_known_examples():
    params, tt = known_instance("gold", 6, i=1)
    assert params.extra == {"i": 1} and is_apn(tt)
    params, _ = known_instance("9", 6, k=1)
    assert not get_field(6).is_cube(params.alpha)
    assert known_instance("12", 6)[0].m == 6
    with pytest.raises(InvalidParameters):
        known_instance("gold", 6, i=2)
    with pytest.raises(InvalidParameters):
        known_instance("99", 6)
    with pytest.raises(ConstructionError):
        known_instance("12", 4)
    assert known_table("1") == known_instance("1", 6)[1]


def test_registry_shape():
    assert KNOWN_FAMILIES == tuple(str(i) for i in range(1, 13))
    assert {fid for fid, fam in KNOWN.items() if fam.bivariate} == {"9", "10", "11", "12"}
