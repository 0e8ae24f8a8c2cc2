"""Finitely generated graded modules given as cokernels of homogeneous matrices."""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import comb

import numpy as np

from .groebner import FreeModule, buchberger
from .ideals import GradedIdeal, syzygies
from .linalg import rank
from .matrix import GradedMatrix, ModuleElement
from .polynomial import Polynomial


# ------------------------------------------------------------ small value types

class HilbertPolynomial:
    """Polynomial in n with rational coefficients, lowest degree first."""

    def __init__(self, coeffs):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def from_betti(cls, betti: "BettiTable") -> "HilbertPolynomial":
        # sum of (-1)^i beta_ij * binom(n - j + 3, 3)
        total = [Fraction(0)] * 4
        for (i, j), b in betti.items():
            sign = -1 if i % 2 else 1
            # (n-j+3)(n-j+2)(n-j+1)/6 expanded in n
            roots = [j - 3, j - 2, j - 1]
            poly = [Fraction(1)]
            for r in roots:
                nxt = [Fraction(0)] * (len(poly) + 1)
                for k, a in enumerate(poly):
                    nxt[k + 1] += a
                    nxt[k] -= r * a
                poly = nxt
            for k, a in enumerate(poly):
                total[k] += sign * b * a / 6
        return cls(total)

    @property
    def degree(self) -> int:
        """-1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def __call__(self, n: int) -> Fraction:
        return sum((c * n ** k for k, c in enumerate(self.coeffs)), Fraction(0))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        if isinstance(other, HilbertPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mag = abs(c)
            word = {0: "", 1: "n"}.get(k, f"n^{k}")
            if word and mag == 1:
                body = word
            elif word:
                body = f"{mag}*{word}"
            else:
                body = str(mag)
            sign = "-" if c < 0 else "+"
            parts.append(body if not parts and c > 0 else (f"-{body}" if not parts else f"{sign} {body}"))
        return " ".join(parts)

    def __repr__(self):
        return f"HilbertPolynomial({self})"


class BettiTable(dict):
    """(homological index i, internal degree j) -> beta_ij."""

    @classmethod
    def from_resolution(cls, gen_twists, maps) -> "BettiTable":
        t = cls()
        for j in gen_twists:
            t[(0, j)] = t.get((0, j), 0) + 1
        for i, d in enumerate(maps, start=1):
            for j in d.col_twists:
                t[(i, j)] = t.get((i, j), 0) + 1
        return t

    def ranks(self) -> list:
        top = max((i for i, _ in self), default=-1)
        return [sum(b for (i, _), b in self.items() if i == k) for k in range(top + 1)]

    def projective_dimension(self) -> int:
        return max((i for i, _ in self), default=-1)

    def to_json(self) -> dict:
        out: dict = {}
        for (i, j), b in sorted(self.items()):
            out.setdefault(str(i), {})[str(j)] = b
        return out

    def __str__(self):
        if not self:
            return "(zero)"
        cols = range(self.projective_dimension() + 1)
        rows = sorted({j - i for i, j in self})
        lines = ["       " + " ".join(f"{i:>4}" for i in cols)]
        for r in rows:
            cells = []
            for i in cols:
                b = self.get((i, i + r), 0)
                cells.append(f"{b if b else '.':>4}")
            lines.append(f"{r:>5}: " + " ".join(cells))
        lines.append("total: " + " ".join(f"{b:>4}" for b in self.ranks()))
        return "\n".join(lines)


@dataclass
class IntegerWindowFunction:
    """Degree -> dimension, listed on [lo, hi] and zero outside it."""

    lo: int
    hi: int
    values: dict = field(default_factory=dict)

    def __call__(self, n: int) -> int:
        return self.values.get(n, 0)

    def support(self) -> dict:
        return {n: v for n, v in sorted(self.values.items()) if v}

    def shifted(self, h: int) -> "IntegerWindowFunction":
        """n -> self(n - h)."""
        return IntegerWindowFunction(self.lo + h, self.hi + h, {n + h: v for n, v in self.values.items()})

    def total(self) -> int:
        return sum(self.values.values())

    def is_zero(self) -> bool:
        return not self.support()

    def to_json(self) -> dict:
        return {str(n): v for n, v in self.support().items()}


# ---------------------------------------------------------------- the module

def _prune_units(m: GradedMatrix) -> tuple:
    """Drop generators killed by a relation with a unit entry.

    Returns the new matrix and the indices of the surviving generators.
    """
    p = m.p
    kept = list(range(len(m.row_twists)))
    rows = list(m.row_twists)
    cols = list(m.col_twists)
    ent = [list(r) for r in m.entries]
    while True:
        hit = None
        for j in range(len(cols)):
            for i in range(len(rows)):
                e = ent[i][j]
                if e and e.degree == 0:
                    hit = (i, j)
                    break
            if hit:
                break
        if hit is None:
            break
        i, j = hit
        inv = pow(ent[i][j].coefficient((0, 0, 0, 0)), -1, p)
        pivot_col = [ent[r][j] for r in range(len(rows))]
        for k in range(len(cols)):
            if k == j or not ent[i][k]:
                continue
            factor = ent[i][k].scale(inv)
            for r in range(len(rows)):
                if pivot_col[r]:
                    ent[r][k] = ent[r][k] - factor * pivot_col[r]
        del rows[i]
        del kept[i]
        del ent[i]
        del cols[j]
        for r in ent:
            del r[j]
    return GradedMatrix(rows, cols, ent, p), kept


class GradedModule:
    """coker(presentation): generators are the rows, relations the columns."""

    def __init__(self, presentation: GradedMatrix):
        self.presentation = presentation
        self.p = presentation.p
        self._lock = threading.Lock()

    # constructors ------------------------------------------------------
    @classmethod
    def free(cls, twists, p: int) -> "GradedModule":
        return cls(GradedMatrix.zero(twists, (), p))

    @classmethod
    def quotient_ring(cls, ideal: GradedIdeal) -> "GradedModule":
        """R/I."""
        gens = list(ideal.minimal_generators)
        if not gens:
            return cls.free((0,), ideal.p)
        return cls(GradedMatrix.row(gens, ideal.p))

    @classmethod
    def ideal_module(cls, ideal: GradedIdeal) -> "GradedModule":
        """I as an R-module, generated by its minimal generators."""
        gens = list(ideal.minimal_generators)
        if not gens:
            return cls.free((), ideal.p)
        return cls(syzygies(GradedMatrix.row(gens, ideal.p)))

    @classmethod
    def subquotient(cls, gens: GradedMatrix, rels: GradedMatrix) -> "GradedModule":
        """(im gens + im rels) / im rels, generated by the columns of gens."""
        if gens.shape[1] == 0:
            return cls.free((), gens.p)
        both = gens.hstack(rels)
        k = gens.shape[1]
        syz = syzygies(both, minimal=False)
        top = syz.select_rows(range(k))
        keep = [j for j in range(top.shape[1]) if any(top.column(j))]
        return cls(top.select_columns(keep))

    @classmethod
    def ideal_quotient_module(cls, big: GradedIdeal, small: GradedIdeal) -> "GradedModule":
        """big / small for ideals small ⊆ big."""
        g = list(big.minimal_generators)
        if not g:
            return cls.free((), big.p)
        h = list(small.minimal_generators)
        gens = GradedMatrix.row(g, big.p)
        rels = GradedMatrix.row(h, big.p) if h else GradedMatrix.zero((0,), (), big.p)
        M = cls.subquotient(gens, rels)
        M.generator_polys = g
        return M.minimized()

    # basic data --------------------------------------------------------
    @property
    def generator_twists(self) -> tuple:
        return self.presentation.row_twists

    @property
    def F(self) -> FreeModule:
        return self.presentation.target()

    @cached_property
    def _gb(self):
        with self._lock:
            return buchberger(self.F, self.presentation.column_vectors(), self.p)[0]

    @cached_property
    def _minimal(self) -> tuple:
        m, kept = _prune_units(self.presentation)
        if m.shape[1]:
            _, needed = buchberger(m.target(), m.column_vectors(), m.p)
            m = m.select_columns([j for j, k in enumerate(needed) if k])
        return m, kept

    @property
    def minimal_presentation(self) -> GradedMatrix:
        return self._minimal[0]

    @property
    def minimal_generator_rows(self) -> list:
        """Rows of the original presentation kept as minimal generators."""
        return self._minimal[1]

    def minimized(self) -> "GradedModule":
        m, kept = self._minimal
        out = GradedModule(m)
        out.__dict__["_minimal"] = (m, list(range(len(m.row_twists))))
        polys = getattr(self, "generator_polys", None)
        if polys is not None:
            out.generator_polys = [polys[i] for i in kept]
        return out

    def is_zero(self) -> bool:
        return self.minimal_presentation.shape[0] == 0

    # Hilbert data ------------------------------------------------------
    def hilbert_function(self, n: int) -> int:
        """dim_k M_n from the standard terms of a Gröbner basis of the relations."""
        if self.presentation.shape[0] == 0:
            return 0
        return self._gb.standard_count(n)

    def hilbert_function_by_rank(self, n: int) -> int:
        """dim_k M_n as rank deficiency of the degree-n block of the presentation."""
        size = self.F.size(n)
        if size == 0:
            return 0
        block = self.presentation.degree_block(n)
        return size - (rank(block, self.p) if block.size else 0)

    @cached_property
    def resolution(self) -> list:
        return minimal_free_resolution(self)

    @cached_property
    def betti(self) -> BettiTable:
        return BettiTable.from_resolution(self.minimal_presentation.row_twists, self.resolution)

    @cached_property
    def hilbert_polynomial(self) -> HilbertPolynomial:
        return HilbertPolynomial.from_betti(self.betti)

    def hilbert_function_from_resolution(self, n: int) -> int:
        total = 0
        for (i, j), b in self.betti.items():
            k = n - j
            if k >= 0:
                total += (-1) ** i * b * comb(k + 3, 3)
        return total

    def is_finite_length(self) -> bool:
        return self.hilbert_polynomial.is_zero()

    @cached_property
    def support_window(self) -> tuple:
        """[lo, hi] outside which a finite-length module vanishes.

        lo is the least generator degree and hi the largest twist in the
        minimal resolution; beyond hi the alternating binomial sum equals
        the Hilbert polynomial, which is zero.
        """
        if self.is_zero():
            return (0, -1)
        twists = [j for _, j in self.betti]
        return (min(self.minimal_presentation.row_twists), max(twists))

    def dims(self, lo: int | None = None, hi: int | None = None) -> IntegerWindowFunction:
        wlo, whi = self.support_window
        lo = wlo if lo is None else lo
        hi = whi if hi is None else hi
        return IntegerWindowFunction(lo, hi, {n: self.hilbert_function(n) for n in range(lo, hi + 1)})

    def length(self) -> int:
        if not self.is_finite_length():
            raise ValueError("module does not have finite length")
        return self.dims().total()

    # degreewise linear algebra -------------------------------------------
    def _standard(self, n: int) -> np.ndarray:
        if self.presentation.shape[0] == 0:
            return np.zeros(0, dtype=np.int64)
        return self._gb.standard_terms(n)

    def degreewise_basis(self, n: int) -> list:
        out = []
        F = self.F
        for j in self._standard(n):
            pos, mon = F.term(n, int(j))
            comps = [Polynomial.zero(self.p)] * F.rank
            comps[pos] = Polynomial.monomial(mon, 1, self.p)
            out.append(ModuleElement(tuple(comps), F.degrees, n))
        return out

    def element(self, n: int, coords) -> ModuleElement:
        """The combination of the degree-n basis with the given coordinates."""
        F = self.F
        v = np.zeros(F.size(n), dtype=np.int64)
        v[self._standard(n)] = np.asarray(coords, dtype=np.int64) % self.p
        return ModuleElement(tuple(F.components(n, v, self.p)), F.degrees, n)

    def coordinates(self, n: int, element) -> np.ndarray:
        """Coordinates of an element of degree n in the degreewise basis."""
        comps = element.components if isinstance(element, ModuleElement) else element
        v = self._gb.normal_form(n, self.F.vector(n, comps, self.p)) if self.F.rank else np.zeros(0, np.int64)
        return v[self._standard(n)]

    def multiplication_map(self, f: Polynomial, n: int) -> np.ndarray:
        """Matrix of multiplication by f from M_n to M_{n+deg f} (columns = source)."""
        p = self.p
        src = self._standard(n)
        if not f:
            return np.zeros((len(self._standard(n)), len(src)), dtype=np.int64)
        d = f.degree
        tgt = self._standard(n + d)
        out = np.zeros((len(tgt), len(src)), dtype=np.int64)
        if not len(src) or not len(tgt):
            return out
        # coordinates of f are indexed by monomial rank, as are the rows of tab
        fv = FreeModule((0,)).vector(d, [f], p)
        fsupp = np.flatnonzero(fv)
        tab = self.F.shift_table(n, d)
        size = self.F.size(n + d)
        for c, j in enumerate(src):
            v = np.zeros(size, dtype=np.int64)
            v[tab[fsupp, j]] = fv[fsupp]
            v = self._gb.reduce(n + d, v)
            out[:, c] = v[tgt]
        return out

    def annihilates(self, f: Polynomial, degrees) -> bool:
        return all(not self.multiplication_map(f, n).any() for n in degrees)

    # comparison --------------------------------------------------------
    def __eq__(self, other):
        if not isinstance(other, GradedModule):
            return NotImplemented
        return self.presentation == other.presentation

    def __hash__(self):
        return hash(self.presentation)

    def __repr__(self):
        return f"GradedModule(generators={list(self.generator_twists)}, relations={self.presentation.shape[1]})"


# ------------------------------------------------------------- operations

def minimal_free_resolution(M: GradedModule, max_length: int = 4) -> list:
    """[d1, d2, ...] with d_i : F_i -> F_{i-1}; F_0 carries M's minimal generators."""
    d = M.minimal_presentation
    maps = []
    while d.shape[1] and len(maps) < max_length:
        maps.append(d)
        d = syzygies(d)
    if d.shape[1] and len(maps) == max_length:
        raise RuntimeError("resolution longer than the number of variables")
    return maps


def hilbert_function(M: GradedModule, n: int) -> int:
    return M.hilbert_function(n)


def hilbert_polynomial(M: GradedModule) -> HilbertPolynomial:
    return M.hilbert_polynomial


def degreewise_basis(M: GradedModule, n: int) -> list:
    return M.degreewise_basis(n)


def multiplication_map(M: GradedModule, f: Polynomial, n: int) -> np.ndarray:
    return M.multiplication_map(f, n)


def _dual_maps(M: GradedModule) -> tuple:
    F0 = M.minimal_presentation.row_twists
    return F0, M.resolution


def ext_module(M: GradedModule, i: int) -> GradedModule:
    """Ext^i_R(M, R) = ker(d_{i+1}^T) / im(d_i^T) from the minimal resolution."""
    if not 0 <= i <= 4:
        raise ValueError("Ext index must lie in 0..4")
    p = M.p
    F0, maps = _dual_maps(M)
    twists = [F0] + [d.col_twists for d in maps]
    if i >= len(twists):
        return GradedModule.free((), p)
    dual_twists = tuple(-a for a in twists[i])
    if not dual_twists:
        return GradedModule.free((), p)
    if i < len(maps):
        cycles = syzygies(maps[i].transpose())
        if cycles.shape[1] == 0:
            return GradedModule.free((), p)
    else:
        ident = [[Polynomial.constant(1 if r == c else 0, p) for c in range(len(dual_twists))]
                 for r in range(len(dual_twists))]
        cycles = GradedMatrix(dual_twists, dual_twists, ident, p)
    if i == 0:
        bounds = GradedMatrix.zero(dual_twists, (), p)
    else:
        bounds = maps[i - 1].transpose()
    return GradedModule.subquotient(cycles, bounds).minimized()


def ext_dims_by_rank(M: GradedModule, i: int, n: int) -> int:
    """dim Ext^i(M,R)_n from ranks of the degree-n blocks of the dual complex."""
    p = M.p
    F0, maps = _dual_maps(M)
    twists = [F0] + [d.col_twists for d in maps]
    if i >= len(twists):
        return 0
    size = FreeModule(tuple(-a for a in twists[i])).size(n)
    out_rank = 0
    if i < len(maps):
        blk = maps[i].transpose().degree_block(n)
        out_rank = rank(blk, p) if blk.size else 0
    in_rank = 0
    if i >= 1:
        blk = maps[i - 1].transpose().degree_block(n)
        in_rank = rank(blk, p) if blk.size else 0
    return size - out_rank - in_rank


def annihilator(M: GradedModule) -> GradedIdeal:
    """Ann(M) as the intersection of (relations : generator) over generators."""
    from .ideals import intersect
    m = M.minimal_presentation
    p = M.p
    r = m.shape[0]
    if r == 0:
        return GradedIdeal.unit(p)
    result = None
    for k in range(r):
        a = m.row_twists[k]
        e = [[Polynomial.constant(1 if i == k else 0, p)] for i in range(r)]
        col = GradedMatrix(m.row_twists, (a,), e, p)
        syz = syzygies(col.hstack(m), minimal=False)
        gens = [c for c in syz.entries[0] if c]
        ideal = GradedIdeal(gens, p)
        result = ideal if result is None else intersect(result, ideal)
    return result


def element_annihilator(M: GradedModule, element: ModuleElement) -> GradedIdeal:
    """Ann(theta) = (relations : theta) for one homogeneous element theta."""
    m = M.presentation
    p = M.p
    col = GradedMatrix(m.row_twists, (element.degree,), [[c] for c in element.components], p)
    syz = syzygies(col.hstack(m), minimal=False)
    return GradedIdeal([c for c in syz.entries[0] if c], p)


def is_cyclic_in_degree(M: GradedModule):
    twists = M.minimal_presentation.row_twists
    return twists[0] if len(twists) == 1 else None


def shift(M: GradedModule, h: int) -> GradedModule:
    """M(h), so that M(h)_n = M_{n+h}."""
    P = M.presentation
    moved = GradedMatrix([a - h for a in P.row_twists], [b - h for b in P.col_twists], P.entries, P.p)
    return GradedModule(moved)


def dims_agree(A: GradedModule, B: GradedModule, degrees) -> list:
    """Degrees in which the Hilbert functions of A and B differ."""
    return [n for n in degrees if A.hilbert_function(n) != B.hilbert_function(n)]


