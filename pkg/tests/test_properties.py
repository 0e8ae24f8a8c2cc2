"""Hypothesis property suites: ring axioms and kernel invariants."""

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

from biliaison.ideals import GradedIdeal, colon_element, degreewise_members, saturate
from biliaison.modules import GradedModule, ext_dims_by_rank, ext_module
from biliaison.polynomial import Polynomial, monomials_of_degree, parse_polynomial
from biliaison.suite import resolution_exact_in_degree

p = 32003
RING = settings(max_examples=1000, deadline=None, derandomize=True)
KERNEL = settings(max_examples=60, deadline=None, derandomize=True,
                  suppress_health_check=[HealthCheck.too_slow])

exponents = st.tuples(*[st.integers(0, 3)] * 4)
coeff = st.integers(0, p - 1)
polys = st.dictionaries(exponents, coeff, max_size=5).map(lambda d: Polynomial(d, p))


@st.composite
def forms(draw, d, max_terms=3):
    monos = monomials_of_degree(d)
    idx = draw(st.lists(st.integers(0, len(monos) - 1), min_size=1, max_size=max_terms, unique=True))
    f = Polynomial({monos[i]: draw(st.integers(1, p - 1)) for i in idx}, p)
    return f


@st.composite
def ideals(draw):
    k = draw(st.integers(1, 3))
    gens = [draw(forms(draw(st.integers(1, 2)))) for _ in range(k)]
    return GradedIdeal(gens, p)


# ring axioms ------------------------------------------------------------------

@RING
@given(polys, polys, polys)
def test_ring_axioms_additive(a, b, c):
    zero = Polynomial.zero(p)
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a + zero == a
    assert a + (-a) == zero
    assert (a - b) + b == a


@RING
@given(polys, polys, polys)
def test_ring_axioms_multiplicative(a, b, c):
    one = Polynomial.constant(1, p)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * one == a
    assert a * (b + c) == a * b + a * c


@RING
@given(polys, polys)
def test_parse_print_roundtrip_and_division(a, b):
    assert parse_polynomial(str(a), p) == a
    if b:
        assert (a * b).exact_divide(b) == a


# kernel invariants ------------------------------------------------------------

@KERNEL
@given(ideals(), st.integers(0, 3), st.randoms(use_true_random=False))
def test_membership_and_normal_form(I, extra, rng):
    d = max(I.generator_degrees()) + extra
    combo = Polynomial.zero(p)
    for g in I.generators:
        combo = combo + g * Polynomial.random_form(d - g.degree, rng, p)
    assert I.contains(combo)
    f = Polynomial.random_form(d, rng, p)
    nf = I.normal_form(f)
    assert I.normal_form(nf) == nf
    assert I.contains(f - nf)


@KERNEL
@given(ideals())
def test_hilbert_function_against_rank(I):
    for n in range(6):
        assert I.dim_in_degree(n) == degreewise_members(I, n)


@KERNEL
@given(ideals(), forms(1, 4))
def test_quotient(I, f):
    J = colon_element(I, f)
    assert J.contains_ideal(I)
    assert all(I.contains(f * g) for g in J.groebner)


@KERNEL
@given(ideals())
def test_saturation(I):
    S, _ = saturate(I)
    assert S.contains_ideal(I)
    assert saturate(S)[0] == S
    m = GradedIdeal.maximal(p)
    assert colon_element(S, m.generators[0]).contains_ideal(S)


@KERNEL
@given(ideals())
def test_resolution_exact(I):
    M = GradedModule.quotient_ring(I)
    for n in range(6):
        assert resolution_exact_in_degree(M, n)
    maps = M.resolution
    for a, b in zip(maps, maps[1:]):
        assert (a * b).is_zero()


@KERNEL
@given(ideals(), st.integers(0, 4))
def test_ext_against_brute_force(I, i):
    M = GradedModule.quotient_ring(I)
    E = ext_module(M, i)
    for n in range(-6, 1):
        assert E.hilbert_function(n) == ext_dims_by_rank(M, i, n)
