"""Homogeneous ideals of R = k[X,Y,Z,T]: Gröbner bases, membership, colon,
saturation, intersection, and syzygies of homogeneous matrices."""

from __future__ import annotations

import threading
from functools import cached_property

import numpy as np

from .groebner import FreeModule, GroebnerBasis, buchberger, kernel
from .matrix import GradedMatrix, vectors_to_matrix
from .polynomial import DEFAULT_PRIME, Polynomial, variables

R0 = FreeModule((0,))


def _vec(f: Polynomial) -> tuple:
    D = f.degree
    return D, R0.vector(D, [f], f.p)


def _poly(D: int, v: np.ndarray, p: int) -> Polynomial:
    return R0.components(D, v, p)[0]


class GradedIdeal:
    """Homogeneous ideal given by generators; the reduced Gröbner basis is
    computed on first use and cached.

    Two ideals compare equal iff their reduced Gröbner bases coincide.
    """

    def __init__(self, generators, p: int | None = None, saturated: bool | None = None):
        gens = [g for g in generators if g]
        if p is None:
            p = gens[0].p if gens else DEFAULT_PRIME
        for g in gens:
            if g.p != p:
                raise ValueError("generators over different primes")
            if not g.is_homogeneous():
                raise ValueError(f"generator {g} is not homogeneous")
        self.generators = tuple(gens)
        self.p = p
        self.saturated = saturated
        self._lock = threading.Lock()

    @classmethod
    def maximal(cls, p: int = DEFAULT_PRIME) -> "GradedIdeal":
        return cls(variables(p), p, saturated=False)

    @classmethod
    def unit(cls, p: int = DEFAULT_PRIME) -> "GradedIdeal":
        return cls([Polynomial.constant(1, p)], p)

    # Gröbner data ----------------------------------------------------------
    @cached_property
    def _gb_and_needed(self) -> tuple:
        with self._lock:
            return buchberger(R0, [_vec(g) for g in self.generators], self.p)

    @property
    def gb(self) -> GroebnerBasis:
        return self._gb_and_needed[0]

    @cached_property
    def groebner(self) -> tuple:
        """Reduced Gröbner basis as monic polynomials, sorted by degree then lead."""
        return tuple(_poly(e.D, e.vec, self.p) for e in self.gb.elems)

    @cached_property
    def minimal_generators(self) -> tuple:
        needed = self._gb_and_needed[1]
        gens = [g.monic() for g, keep in zip(self.generators, needed) if keep]
        return tuple(sorted(gens, key=lambda g: g.degree))

    def generator_degrees(self) -> list:
        return [g.degree for g in self.minimal_generators]

    def normal_form(self, f: Polynomial) -> Polynomial:
        if not f:
            return f
        D, v = _vec(f)
        return _poly(D, self.gb.normal_form(D, v), self.p)

    def contains(self, f: Polynomial) -> bool:
        return not self.normal_form(f)

    def __contains__(self, f):
        return self.contains(f)

    def contains_ideal(self, other: "GradedIdeal") -> bool:
        return all(self.contains(g) for g in other.generators)

    def is_zero(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        return any(e.D == 0 for e in self.gb.elems)

    def hilbert_function(self, n: int) -> int:
        """dim_k (R/I)_n."""
        if n < 0:
            return 0
        return self.gb.standard_count(n)

    def dim_in_degree(self, n: int) -> int:
        """dim_k I_n."""
        return R0.size(n) - self.hilbert_function(n) if n >= 0 else 0

    def basis_in_degree(self, n: int) -> list:
        """A k-basis of I_n as polynomials (echelon form of the multiples)."""
        from .linalg import row_echelon
        if n < 0:
            return []
        rows = []
        for g in self.groebner:
            k = n - g.degree
            if k < 0:
                continue
            D, v = _vec(g)
            tab = R0.shift_table(D, k)
            for u in range(tab.shape[0]):
                w = np.zeros(R0.size(n), dtype=np.int64)
                w[tab[u]] = v
                rows.append(w)
        if not rows:
            return []
        ech, _ = row_echelon(np.array(rows), self.p)
        return [_poly(n, r, self.p) for r in ech]

    # comparisons -----------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, GradedIdeal):
            return NotImplemented
        return self.p == other.p and self.groebner == other.groebner

    def __hash__(self):
        return hash(self.groebner)

    def __add__(self, other: "GradedIdeal") -> "GradedIdeal":
        return GradedIdeal(self.generators + other.generators, self.p)

    def __mul__(self, other: "GradedIdeal") -> "GradedIdeal":
        return GradedIdeal([a * b for a in self.generators for b in other.generators], self.p)

    def scale_by(self, f: Polynomial) -> "GradedIdeal":
        return GradedIdeal([f * g for g in self.generators], self.p)

    def __str__(self):
        return "(" + ", ".join(str(g) for g in self.generators) + ")"

    def __repr__(self):
        return f"GradedIdeal({[str(g) for g in self.generators]})"


# ------------------------------------------------------------------ operations

def groebner_basis(gens: list) -> list:
    """Reduced Gröbner basis (degrevlex, monic) of the ideal spanned by gens."""
    gens = [g for g in gens if g]
    if not gens:
        return []
    return list(GradedIdeal(gens).groebner)


def normal_form(f: Polynomial, ideal: GradedIdeal) -> Polynomial:
    return ideal.normal_form(f)


def syzygies(m: GradedMatrix, minimal: bool = True) -> GradedMatrix:
    """Matrix whose columns generate the kernel of m (source = columns of m)."""
    F0, F1 = m.target(), m.source()
    kern = kernel(F0, F1, m.column_vectors(), m.p, minimal=minimal)
    if not kern:
        return GradedMatrix.zero(m.col_twists, (), m.p)
    return vectors_to_matrix(F1, kern, m.p)


def _variable_index(f: Polynomial):
    if len(f) != 1 or f.degree != 1:
        return None
    (m,) = f._coeffs
    return m.index(1)


def _colon_variable(ideal: GradedIdeal, i: int) -> GradedIdeal:
    # With T last in degrevlex, T | LT(g) iff T | g for homogeneous g, so
    # dividing each basis element by T once gives a basis of (I : T).
    perm = list(range(4))
    perm[i], perm[3] = 3, i
    perm = tuple(perm)
    swapped = GradedIdeal([g.permute_variables(perm) for g in ideal.generators], ideal.p)
    out = []
    for g in swapped.groebner:
        if all(m[3] >= 1 for m in g._coeffs):
            g = Polynomial._raw({(m[0], m[1], m[2], m[3] - 1): c for m, c in g._coeffs.items()}, g.p)
        out.append(g.permute_variables(perm))
    return GradedIdeal(out, ideal.p)


def colon_element(ideal: GradedIdeal, f: Polynomial) -> GradedIdeal:
    """(I : f)."""
    if not f:
        return GradedIdeal.unit(ideal.p)
    if f.is_constant():
        return ideal
    i = _variable_index(f)
    if i is not None:
        return _colon_variable(ideal, i)
    gens = [f] + list(ideal.groebner)
    syz = syzygies(GradedMatrix.row(gens, ideal.p), minimal=False)
    return GradedIdeal([c for c in syz.entries[0] if c], ideal.p) if syz.shape[1] else GradedIdeal([], ideal.p)


def intersect(I: GradedIdeal, J: GradedIdeal) -> GradedIdeal:
    """I ∩ J from the syzygies of (gens I | gens J)."""
    p = I.p
    if I.is_zero() or J.is_zero():
        return GradedIdeal([], p)
    if I.is_unit():
        return J
    if J.is_unit():
        return I
    a, b = list(I.groebner), list(J.groebner)
    syz = syzygies(GradedMatrix.row(a + b, p), minimal=False)
    out = []
    for j in range(syz.shape[1]):
        acc = Polynomial.zero(p)
        for i, g in enumerate(a):
            c = syz.entries[i][j]
            if c:
                acc = acc + c * g
        if acc:
            out.append(acc)
    return GradedIdeal(out, p)


def ideal_quotient(I: GradedIdeal, J: GradedIdeal) -> GradedIdeal:
    """(I : J) = intersection over generators f of J of (I : f)."""
    if J.is_zero():
        return GradedIdeal.unit(I.p)
    result = None
    for f in J.groebner:
        q = colon_element(I, f)
        result = q if result is None else intersect(result, q)
    return result


def saturate(I: GradedIdeal, J: GradedIdeal | None = None) -> tuple:
    """(I : J^infinity) by iterated quotients; returns (ideal, iterations).

    Stabilization is detected by reduced Gröbner basis equality.  With J the
    irrelevant ideal (the default) the result is flagged saturated.
    """
    irrelevant = J is None or J == GradedIdeal.maximal(I.p)
    if J is None:
        J = GradedIdeal.maximal(I.p)
    cur = I
    steps = 0
    while True:
        nxt = ideal_quotient(cur, J)
        steps += 1
        if nxt == cur:
            break
        cur = nxt
    out = GradedIdeal(cur.groebner, I.p, saturated=True if irrelevant else None)
    return out, steps


def is_saturated(I: GradedIdeal) -> bool:
    return ideal_quotient(I, GradedIdeal.maximal(I.p)) == I


def degreewise_members(I: GradedIdeal, n: int) -> int:
    """dim I_n by brute-force rank of all monomial multiples of the generators."""
    from .linalg import rank
    if n < 0:
        return 0
    rows = []
    for g in I.generators:
        k = n - g.degree
        if k < 0:
            continue
        D, v = _vec(g)
        tab = R0.shift_table(D, k)
        for u in range(tab.shape[0]):
            w = np.zeros(R0.size(n), dtype=np.int64)
            w[tab[u]] = v
            rows.append(w)
    return rank(np.array(rows), I.p) if rows else 0


