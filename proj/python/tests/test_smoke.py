import math

import pytest

import zetakit

EULER_GAMMA = 0.5772156649015329


def test_rational_field():
    q = zetakit.Field("Q")
    assert q.degree == 1 and q.genus == 0
    g = zetakit.gamma(q)
    assert g.gamma == pytest.approx(EULER_GAMMA, abs=1e-15)
    assert g.residue == pytest.approx(1.0)


def test_gaussian_field_closed_form():
    k = zetakit.Field("quad:-4")
    assert k.signature == (0, 1)
    assert k.abs_discriminant == 4
    expected = 2 * EULER_GAMMA + 2 * math.log(2) + 3 * math.log(math.pi) - 4 * math.lgamma(0.25)
    assert zetakit.gamma(k).gamma == pytest.approx(expected, abs=1e-13)
    assert zetakit.gamma(k, precision_bits=128).gamma == pytest.approx(expected, abs=5e-15)
    assert zetakit.Z(k, 1.0001) == pytest.approx(-expected, abs=1e-3)


def test_class_numbers_agree():
    for d in (-3, -4, -23, -47):
        assert zetakit.class_number(zetakit.Field(f"quad:{d}")) == zetakit.class_number_by_forms(d)


def test_zeros_of_zeta():
    z = zetakit.zeros(zetakit.Field("Q"), 30)
    assert len(z) == 3
    assert z[0] == pytest.approx(14.134725141734693, abs=1e-10)
    assert zetakit.count_zeros(zetakit.Field("Q"), 50) == 20
    assert zetakit.rvm_report(zetakit.Field("cyclo:5"), 30)["ok"]


def test_zero_sum_identity():
    r = zetakit.reciprocal_zero_sum(zetakit.Field("Q"), 50)
    assert r["rhs"] == pytest.approx(EULER_GAMMA / 2 + 1 - math.log(4 * math.pi) / 2, abs=1e-12)
    assert r["residual"] <= r["tail_bound"]


def test_families():
    csv = zetakit.family_csv("cyclo-tower:3:4", 20).splitlines()
    assert csv[0].startswith("level,conductor,degree,g,")
    assert len(csv) == 5
    values, ok = zetakit.monotone_check(3, 4, 7, 3)
    assert ok and len(values) == 4


def test_errors_map_to_exceptions():
    with pytest.raises(zetakit.DomainError, match="not fundamental"):
        zetakit.Field("quad:-12")
    with pytest.raises(zetakit.ResourceError):
        zetakit.family_csv("cyclo-tower:7:3")
    with pytest.raises(zetakit.ResourceError):
        zetakit.gamma_p(211)
    assert issubclass(zetakit.PoleError, zetakit.ZetakitError)


def test_bounds_and_integrals():
    b = zetakit.check_bounds(zetakit.Field("cyclo:7"))
    assert b["ihara_lower_margin"]["value"] > 0
    assert not b["ihara_lower_margin"]["conditional"]
    assert b["ihara_upper_margin"]["conditional"]
    for quad, closed in zetakit.count_window_integrals():
        assert quad == pytest.approx(closed, abs=1e-8)
