from fractions import Fraction
from math import comb

import pytest

from biliaison.ideals import GradedIdeal
from biliaison.modules import (
    GradedModule,
    HilbertPolynomial,
    IntegerWindowFunction,
    annihilator,
    element_annihilator,
    ext_dims_by_rank,
    ext_module,
    is_cyclic_in_degree,
    shift,
)
from biliaison.polynomial import parse_polynomial as P


def Q(*gens):
    return GradedModule.quotient_ring(GradedIdeal([P(g) for g in gens]))


SKEW = ("X*Z", "X*T", "Y*Z", "Y*T")
CUBIC = ("X*Z-Y^2", "X*T-Y*Z", "Y*T-Z^2")


def test_koszul_complex_of_residue_field():
    M = Q("X", "Y", "Z", "T")
    assert M.betti.ranks() == [1, 4, 6, 4, 1]
    assert dict(M.betti) == {(0, 0): 1, (1, 1): 4, (2, 2): 6, (3, 3): 4, (4, 4): 1}
    assert M.is_finite_length() and M.length() == 1


@pytest.mark.parametrize("gens,betti,hp", [
    (SKEW, {(0, 0): 1, (1, 2): 4, (2, 3): 4, (3, 4): 1}, "2*n + 2"),
    (CUBIC, {(0, 0): 1, (1, 2): 3, (2, 3): 2}, "3*n + 1"),
    (("X*Z-Y*T",), {(0, 0): 1, (1, 2): 1}, None),
])
def test_betti_tables(gens, betti, hp):
    M = Q(*gens)
    assert dict(M.betti) == betti
    if hp:
        assert str(M.hilbert_polynomial) == hp


def test_hilbert_polynomial_of_surface():
    # quadric surface: (n+1)^2
    hp = Q("X*Z-Y*T").hilbert_polynomial
    assert hp.degree == 2
    assert [hp(n) for n in range(4)] == [1, 4, 9, 16]


def test_hilbert_polynomial_values():
    hp = HilbertPolynomial([Fraction(1), Fraction(3)])
    assert hp(4) == 13 and str(hp) == "3*n + 1"
    assert HilbertPolynomial([]).degree == -1


@pytest.mark.parametrize("gens", [SKEW, CUBIC, ("X^2", "X*Y", "X*Z", "X*T"), ("X^3", "Y^2*Z")])
def test_three_hilbert_functions_agree(gens):
    M = Q(*gens)
    for n in range(-1, 7):
        h = M.hilbert_function(n)
        assert h == M.hilbert_function_by_rank(n) == M.hilbert_function_from_resolution(n)


def test_free_module_hilbert_function():
    F = GradedModule.free((0, 1), 32003)
    assert [F.hilbert_function(n) for n in range(3)] == [1, 1 + 4, 4 + 10]


def test_shift_convention():
    M = Q("X", "Y")
    Mh = shift(M, 2)
    assert all(Mh.hilbert_function(n) == M.hilbert_function(n + 2) for n in range(-4, 4))


def test_ext_of_residue_field_is_local_duality():
    M = Q("X", "Y", "Z", "T")
    for i in range(4):
        assert ext_module(M, i).is_zero()
    E4 = ext_module(M, 4)
    assert [E4.hilbert_function(n) for n in range(-6, 0)] == [0, 0, 1, 0, 0, 0]


def test_ext2_of_a_line():
    # Ext^2(R/(X,Y), R) = (R/(X,Y))(2): dimension n + 3 for n >= -2
    E = ext_module(Q("X", "Y"), 2)
    assert [E.hilbert_function(n) for n in range(-4, 3)] == [0, 0, 1, 2, 3, 4, 5]


@pytest.mark.parametrize("gens", [SKEW, CUBIC, ("X^2", "X*Y"), ("X*Z-Y*T", "X^2*T", "X*Y*T", "Y^2*T")])
def test_ext_matches_brute_force(gens):
    M = Q(*gens)
    for i in range(5):
        E = ext_module(M, i)
        for n in range(-7, 1):
            assert E.hilbert_function(n) == ext_dims_by_rank(M, i, n), (i, n)


def test_rao_module_of_skew_lines_is_a_point():
    E3 = ext_module(Q(*SKEW), 3)
    assert E3.is_finite_length()
    assert {n: E3.hilbert_function(n) for n in range(-8, 2) if E3.hilbert_function(n)} == {-4: 1}


def test_multiplication_map_rank():
    M = Q("X^2")
    mat = M.multiplication_map(P("X"), 1)
    assert mat.shape == (M.hilbert_function(2), M.hilbert_function(1))
    from biliaison.linalg import rank
    assert rank(mat, 32003) == 3


def test_degreewise_basis_and_coordinates():
    M = Q("X*Z-Y*T")
    basis = M.degreewise_basis(2)
    assert len(basis) == 9
    e = M.element(2, [1] + [0] * 8)
    assert list(M.coordinates(2, e)) == [1] + [0] * 8


def test_annihilators():
    assert annihilator(Q(*CUBIC)) == GradedIdeal([P(g) for g in CUBIC])
    L = GradedIdeal([P("X"), P("Y")])
    C = GradedIdeal([P(g) for g in SKEW])
    N = GradedModule.ideal_quotient_module(L, C)
    assert annihilator(N) == GradedIdeal([P("Z"), P("T")])
    M = Q("X^2", "Y")
    assert element_annihilator(M, M.element(1, M.coordinates(1, M.degreewise_basis(1)[0]))).contains(P("X"))


def test_cyclicity():
    assert is_cyclic_in_degree(Q(*SKEW)) == 0
    assert is_cyclic_in_degree(GradedModule.free((0, 1), 32003)) is None
    assert is_cyclic_in_degree(shift(Q("X"), 3)) == -3


def test_ideal_quotient_module_tracks_generators():
    L = GradedIdeal([P("X"), P("Y")])
    C = GradedIdeal([P(g) for g in SKEW])
    N = GradedModule.ideal_quotient_module(L, C)
    assert sorted(map(str, N.generator_polys)) == ["X", "Y"]
    # I_L / I_C is a twisted copy of the ideal of the other line modulo nothing in degree 0
    assert N.hilbert_function(1) == 2


def test_window_function():
    f = IntegerWindowFunction(0, 2, {0: 1, 1: 2, 2: 0})
    assert f.support() == {0: 1, 1: 2}
    g = f.shifted(3)
    assert g(4) == 2 and g(1) == 0
    assert f.total() == 3 and not f.is_zero()
    assert f.to_json() == {"0": 1, "1": 2}


def test_binomial_dimensions_of_R():
    R = GradedModule.free((0,), 32003)
    assert [R.hilbert_function(n) for n in range(6)] == [comb(n + 3, 3) for n in range(6)]
