"""Homogeneous matrices between twisted free modules, and module elements."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .groebner import FreeModule
from .polynomial import DEFAULT_PRIME, Polynomial, monomials_of_degree


@dataclass(frozen=True)
class ModuleElement:
    """Element of a free module sum R(-twists[i]); homogeneous of ``degree``."""

    components: tuple
    twists: tuple
    degree: int

    def __post_init__(self):
        for f, a in zip(self.components, self.twists):
            if f and f.degree != self.degree - a:
                raise ValueError("module element is not homogeneous")

    def is_zero(self) -> bool:
        return not any(self.components)

    def __str__(self):
        return "(" + ", ".join(str(f) for f in self.components) + ")"


class GradedMatrix:
    """Matrix of a degree-0 map sum R(-col_twists[j]) -> sum R(-row_twists[i]).

    A nonzero entry (i, j) is homogeneous of degree col_twists[j] - row_twists[i].
    """

    def __init__(self, row_twists, col_twists, entries, p: int = DEFAULT_PRIME):
        self.row_twists = tuple(int(a) for a in row_twists)
        self.col_twists = tuple(int(b) for b in col_twists)
        self.p = p
        rows = len(self.row_twists)
        cols = len(self.col_twists)
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ValueError(f"entries do not form a {rows}x{cols} matrix")
        self.entries = tuple(tuple(e for e in row) for row in entries)
        for i, row in enumerate(self.entries):
            for j, e in enumerate(row):
                if e.p != p:
                    raise ValueError("entry over a different prime")
                if e and e.degree != self.col_twists[j] - self.row_twists[i]:
                    raise ValueError(
                        f"entry ({i},{j}) = {e} has degree {e.degree}, expected "
                        f"{self.col_twists[j] - self.row_twists[i]}"
                    )

    @classmethod
    def from_columns(cls, row_twists, columns: list, col_twists, p: int = DEFAULT_PRIME) -> "GradedMatrix":
        rows = len(row_twists)
        entries = [[columns[j][i] for j in range(len(columns))] for i in range(rows)]
        return cls(row_twists, col_twists, entries, p)

    @classmethod
    def zero(cls, row_twists, col_twists, p: int = DEFAULT_PRIME) -> "GradedMatrix":
        z = Polynomial.zero(p)
        return cls(row_twists, col_twists, [[z] * len(col_twists) for _ in row_twists], p)

    @classmethod
    def row(cls, polys: list, p: int | None = None) -> "GradedMatrix":
        """1 x n matrix (f_1 ... f_n) with target R."""
        p = p if p is not None else polys[0].p
        return cls((0,), tuple(f.degree for f in polys), [list(polys)], p)

    @property
    def shape(self) -> tuple:
        return len(self.row_twists), len(self.col_twists)

    def column(self, j: int) -> list:
        return [row[j] for row in self.entries]

    def columns(self) -> list:
        return [self.column(j) for j in range(len(self.col_twists))]

    def source(self) -> FreeModule:
        return FreeModule(self.col_twists)

    def target(self) -> FreeModule:
        return FreeModule(self.row_twists)

    def column_vectors(self) -> list:
        F = self.target()
        return [(self.col_twists[j], F.vector(self.col_twists[j], self.column(j), self.p)) for j in range(self.shape[1])]

    def transpose(self) -> "GradedMatrix":
        """The dual map; twists are negated."""
        entries = [[self.entries[i][j] for i in range(self.shape[0])] for j in range(self.shape[1])]
        return GradedMatrix(tuple(-b for b in self.col_twists), tuple(-a for a in self.row_twists), entries, self.p)

    def __mul__(self, other: "GradedMatrix") -> "GradedMatrix":
        if self.col_twists != other.row_twists:
            raise ValueError("twists do not compose")
        z = Polynomial.zero(self.p)
        out = []
        for i in range(self.shape[0]):
            row = []
            for j in range(other.shape[1]):
                acc = z
                for k in range(self.shape[1]):
                    a = self.entries[i][k]
                    if a:
                        b = other.entries[k][j]
                        if b:
                            acc = acc + a * b
                row.append(acc)
            out.append(row)
        return GradedMatrix(self.row_twists, other.col_twists, out, self.p)

    def is_zero(self) -> bool:
        return not any(e for row in self.entries for e in row)

    def hstack(self, other: "GradedMatrix") -> "GradedMatrix":
        if self.row_twists != other.row_twists:
            raise ValueError("row twists differ")
        entries = [list(a) + list(b) for a, b in zip(self.entries, other.entries)]
        return GradedMatrix(self.row_twists, self.col_twists + other.col_twists, entries, self.p)

    def select_columns(self, idx) -> "GradedMatrix":
        idx = list(idx)
        entries = [[row[j] for j in idx] for row in self.entries]
        return GradedMatrix(self.row_twists, [self.col_twists[j] for j in idx], entries, self.p)

    def select_rows(self, idx) -> "GradedMatrix":
        idx = list(idx)
        return GradedMatrix([self.row_twists[i] for i in idx], self.col_twists, [self.entries[i] for i in idx], self.p)

    def degree_block(self, n: int) -> np.ndarray:
        """Matrix over F_p of the map in internal degree n (columns = source basis)."""
        src, tgt = self.source(), self.target()
        out = np.zeros((tgt.size(n), src.size(n)), dtype=np.int64)
        for j in range(self.shape[1]):
            k = n - self.col_twists[j]
            if k < 0:
                continue
            nonzero = [(i, f) for i, f in enumerate(self.column(j)) if f]
            if not nonzero:
                continue
            for u in monomials_of_degree(k):
                c = src.index(n, j, u)
                for i, f in nonzero:
                    for m, coef in f._coeffs.items():
                        mm = (m[0] + u[0], m[1] + u[1], m[2] + u[2], m[3] + u[3])
                        r = tgt.index(n, i, mm)
                        out[r, c] = (out[r, c] + coef) % self.p
        return out

    def __eq__(self, other):
        if not isinstance(other, GradedMatrix):
            return NotImplemented
        return (self.row_twists, self.col_twists, self.entries, self.p) == (
            other.row_twists, other.col_twists, other.entries, other.p)

    def __hash__(self):
        return hash((self.row_twists, self.col_twists, self.entries))

    def __str__(self):
        lines = [f"rows {list(self.row_twists)} <- cols {list(self.col_twists)}"]
        for row in self.entries:
            lines.append("  [" + ", ".join(str(e) for e in row) + "]")
        return "\n".join(lines)

    def __repr__(self):
        return f"GradedMatrix(shape={self.shape}, rows={self.row_twists}, cols={self.col_twists})"


def vectors_to_matrix(F0: FreeModule, vecs: list, p: int) -> GradedMatrix:
    """Columns given as (degree, vector of F0)."""
    cols = [F0.components(D, v, p) for D, v in vecs]
    return GradedMatrix.from_columns(F0.degrees, cols, [D for D, _ in vecs], p)
