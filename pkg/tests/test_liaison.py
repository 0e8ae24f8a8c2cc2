import pytest

from biliaison.curves import PreconditionError
from biliaison.liaison import (
    FactoredSurface,
    admissible_heights,
    descend,
    descending_obstruction_report,
    elementary_biliaison,
    enumerate_surfaces,
    factor_with_hints,
    fundamental_diagram_check,
    hom_dimension,
    injective_hom_exists,
    is_complete_intersection,
    link,
    shift_law_holds,
    verify_minimality_subcanonical,
)
from biliaison.polynomial import parse_polynomial as P

from conftest import curve_of

QUADRIC = FactoredSurface.irreducible(P("X*Z-Y*T"))


def test_factored_surface_checks_product():
    S = FactoredSurface(P("X^2*Y"), [(P("X"), 2), (P("Y"), 1)])
    assert S.s == 3
    assert [(str(h), m) for h, m in S.factors] == [("X", 2), ("Y", 1)]
    assert sorted(str(d) for _, d in S.maximal_divisors()) == ["X*Y", "X^2"]
    with pytest.raises(ValueError):
        FactoredSurface(P("X^2*Y"), [(P("X"), 1), (P("Y"), 1)])


def test_factor_with_hints():
    S = factor_with_hints(P("X^2*Y + X^2*Z"), [P("X")])
    assert dict((str(h), m) for h, m in S.factors) == {"X": 2, "Y + Z": 1}
    assert factor_with_hints(P("X*Z-Y*T")).source == "single factor"


def test_complete_intersection():
    assert is_complete_intersection(P("X*Z-Y*T"), P("X^3+Y^3"))
    assert not is_complete_intersection(P("X*Z"), P("X*T"))


def test_ascending_biliaison_on_skew_lines(skew):
    step = elementary_biliaison(skew, QUADRIC, P("X"))
    C1 = step.target
    assert C1.degree_genus() == (4, 0)
    assert C1.rao_dims.support() == {1: 1}
    assert step.checks == {"degree": True, "rao_shift": True}
    assert shift_law_holds(skew, C1, 1)
    assert not shift_law_holds(skew, C1, 0)


def test_biliaison_preconditions(skew):
    with pytest.raises(PreconditionError):
        elementary_biliaison(skew, FactoredSurface.irreducible(P("X^2+Y^2")), P("X"))
    with pytest.raises(PreconditionError):
        elementary_biliaison(skew, QUADRIC, P("X*Z-Y*T"))


def test_link_and_back(skew):
    F, G = P("X*Z-Y*T"), P("X^2*Z+Y^2*T+X*Y*T")
    L = link(skew, F, G)
    assert L.curve.degree == 4 and L.curve.rao_dims.support() == {1: 1}
    assert all(L.checks.values())
    assert link(L.curve, F, G).curve == skew


def test_link_preconditions(skew, cubic):
    with pytest.raises(PreconditionError):
        link(skew, P("X*Z"), P("X*T"))  # common factor X
    with pytest.raises(PreconditionError):
        link(skew, P("X*Z"), P("X^2"))  # X^2 not in I_C
    with pytest.raises(PreconditionError):
        link(curve_of("X", "Y"), P("X"), P("Y"))  # residual is empty
    # two quadrics through the twisted cubic link it to a line
    assert link(cubic, P("X*Z-Y^2"), P("X*T-Y*Z")).curve.degree_genus() == (1, 0)


def test_hom_dimension(skew, raised):
    assert hom_dimension(skew, QUADRIC, -1) == 0
    assert hom_dimension(raised, QUADRIC, -1) == 3
    with pytest.raises(PreconditionError):
        hom_dimension(skew, QUADRIC, 0)


def test_descend_round_trip(raised, skew):
    v = injective_hom_exists(raised, QUADRIC, -1)
    assert v.verdict == "injective_exists" and v.witness
    step = descend(raised, QUADRIC, -1)
    assert step.target.rao_dims.support() == {0: 1}
    assert step.target.degree == 2
    assert all(step.checks.values())


def test_obstruction_report_on_minimal_curve(skew):
    rep = descending_obstruction_report(skew, [QUADRIC], [-2, -1])
    assert rep.found is None
    assert {e["result"].verdict for e in rep.entries} == {"no_nonzero_hom"}
    js = rep.to_json(with_witness=False)
    assert all("witness" not in e for e in js["entries"])


def test_admissible_heights(skew, raised, ci22):
    assert admissible_heights(skew) == []
    assert admissible_heights(ci22) == [-2, -1]
    assert admissible_heights(raised) == [-1]


def test_enumerate_surfaces(skew):
    surfaces = enumerate_surfaces(skew, 2)
    assert all(s.s == 2 and skew.contains(s.q) for s in surfaces)
    assert len({s.q.monic() for s in surfaces}) == len(surfaces)


def test_verify_min(skew, ci22):
    r = verify_minimality_subcanonical(skew)
    assert r["verdict"] == "PASS" and r["alpha"] == -2
    r = verify_minimality_subcanonical(ci22)
    assert r["verdict"] == "PASS"
    # descents exist on CI(2,2) but its Rao module is zero
    assert r["report"].found is not None
    assert "zero" in r["reason"]


def test_verify_min_needs_subcanonical(cubic):
    with pytest.raises(PreconditionError):
        verify_minimality_subcanonical(cubic)


def test_fundamental_diagram(skew):
    r = fundamental_diagram_check(skew, QUADRIC, P("X"))
    assert r["ok"]
    for d in r["degrees"].values():
        assert d["hom_direct"] == d["hom_predicted"]
    # f = q: the multiplier is zero on I_C/(q), theta = 0, nothing to contradict
    r = fundamental_diagram_check(skew, QUADRIC, P("X*Z-Y*T"))
    assert r["ok"]
    assert all(d["multiplier_injective"] is None for d in r["degrees"].values())
