import pytest

from biliaison.curves import NotACurve, PreconditionError, compare_hilbert, make_curve, residual_subcurve
from biliaison.polynomial import parse_polynomial as P

from conftest import curve_of


def test_line():
    L = curve_of("X", "Y")
    assert L.degree_genus() == (1, 0)
    assert L.e == -2 and L.s0 == 1
    assert L.is_acm and L.subcanonical_alpha == -2


def test_skew_lines(skew):
    assert skew.degree_genus() == (2, -1)
    assert skew.s0 == 2 and skew.e == -2
    assert skew.rao_dims.support() == {0: 1}
    assert skew.subcanonical_alpha == -2
    assert skew.subcanonical_certificate["method"] == "generating section"


def test_ci22(ci22):
    assert ci22.degree_genus() == (4, 1)
    assert ci22.e == 0 and ci22.s0 == 2
    assert ci22.rao_dims.support() == {}
    assert ci22.subcanonical_alpha == 0


def test_twisted_cubic_is_acm_not_subcanonical(cubic):
    # d = 3 does not divide 2g - 2 = -2
    assert cubic.degree_genus() == (3, 0)
    assert cubic.is_acm
    assert cubic.subcanonical_alpha is None


def test_rao_module_two_routes(raised, skew):
    for C in (raised, skew):
        for n in range(-3, 5):
            assert C.rao_dims(n) == C.rao_dim_by_euler(n)
    M = raised.rao_module
    assert {n: M.hilbert_function(n) for n in range(-3, 5) if M.hilbert_function(n)} == {1: 1}


def test_riemann_roch_for_h0_structure(ci22):
    # h0 O_C(n) - h1 O_C(n) = 4n for an elliptic quartic
    for n in range(-2, 4):
        assert ci22.h0_structure(n) - ci22.h1_structure(n) == 4 * n


def test_h0_ideal_of_cubic(cubic):
    assert [cubic.h0_ideal(n) for n in range(4)] == [0, 0, 3, 10]


def test_not_a_curve():
    with pytest.raises(NotACurve) as e:
        curve_of("X^2", "X*Y")
    assert e.value.hilbert_polynomial.degree == 2
    with pytest.raises(NotACurve):
        curve_of("X", "Y", "Z")


def test_saturation_applied():
    C = curve_of("X^2", "X*Y", "X*Z", "X*T", "Y")
    assert C.ideal.groebner == (P("X"), P("Y")) or set(C.ideal.groebner) == {P("X"), P("Y")}


def test_strict_cm():
    C = make_curve([P(g) for g in ("X*Z", "X*T", "Y*Z", "Y*T")], strict_cm=True)
    assert C.locally_cm == "verified"
    # a double line with an embedded point at Z = 0 survives saturation
    gens = [P(g) for g in ("X^2", "X*Y", "Y^2", "X*Z^2")]
    assert make_curve(gens).degree == 2
    with pytest.raises(NotACurve):
        make_curve(gens, strict_cm=True)


def test_report_shape(skew):
    r = skew.report()
    assert r["degree"] == 2 and r["genus"] == -1 and r["rao_dims"] == {"0": 1}
    assert r["betti"] == {"0": {"0": 1}, "1": {"2": 4}, "2": {"3": 4}, "3": {"4": 1}}


def test_residual_of_skew_lines(skew):
    L1 = curve_of("Z", "T")
    L2 = curve_of("X", "Y")
    r = residual_subcurve(skew, L1)
    assert r.curve == L2 and r.alpha == -2 and r.passed
    assert residual_subcurve(skew, L2).curve == L1
    # graded quotients differ from the sections module only in degree 0
    assert r.checks["graded_quotients"]["Cp_mod_C_mismatched_degrees"] == [0]


def test_residual_preconditions(skew, cubic):
    with pytest.raises(PreconditionError):
        residual_subcurve(cubic, curve_of("X", "Y"))
    with pytest.raises(PreconditionError):
        residual_subcurve(skew, curve_of("X", "Z"))


def test_compare_hilbert_self(cubic):
    assert compare_hilbert(cubic.omega, cubic.omega)["equal"]
