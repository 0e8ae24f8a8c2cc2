"""Buchberger's algorithm for homogeneous submodules of graded free modules.

Elements are stored densely, one numpy vector per degree.  The basis of a
free module F = sum R(-a_i) in degree D is ordered decreasingly for the
module term order used everywhere in this package:

    block (smaller first) > monomial degree > degrevlex monomial > position

Block numbers give an elimination order; with all blocks equal this is a
term-over-position order.  Only homogeneous elements are ever compared, so
the total degree never needs to appear in the key.
"""

from __future__ import annotations

import heapq
from functools import lru_cache

import numpy as np

from .polynomial import (
    mono_degree,
    mono_div,
    mono_divides,
    mono_lcm,
    monomial_index,
    monomials_of_degree,
)


@lru_cache(maxsize=None)
def _mul_table(d1: int, d2: int) -> np.ndarray:
    """idx[i, j] = index in degree d1+d2 of mons(d1)[i] * mons(d2)[j]."""
    m1 = monomials_of_degree(d1)
    m2 = monomials_of_degree(d2)
    target = monomial_index(d1 + d2)
    out = np.empty((len(m1), len(m2)), dtype=np.int64)
    for i, a in enumerate(m1):
        for j, b in enumerate(m2):
            out[i, j] = target[(a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3])]
    return out


def n_monomials(d: int) -> int:
    return (d + 3) * (d + 2) * (d + 1) // 6 if d >= 0 else 0


class FreeModule:
    """Graded free module with basis elements of the given degrees.

    Instances are interned: equal (degrees, blocks) give the same object, so
    the per-degree index tables are shared.
    """

    _cache: dict = {}

    def __new__(cls, degrees, blocks=None):
        degrees = tuple(int(a) for a in degrees)
        blocks = tuple(int(b) for b in blocks) if blocks is not None else (0,) * len(degrees)
        key = (degrees, blocks)
        obj = cls._cache.get(key)
        if obj is not None:
            return obj
        obj = super().__new__(cls)
        obj.degrees = degrees
        obj.blocks = blocks
        obj.rank = len(degrees)
        groups: dict = {}
        for i, (a, b) in enumerate(zip(degrees, blocks)):
            groups.setdefault((b, a), []).append(i)
        obj._groups = sorted(groups.items())
        obj._group_of = np.zeros(len(degrees), dtype=np.int64)
        obj._k_in_group = np.zeros(len(degrees), dtype=np.int64)
        obj._gsize_of = np.zeros(len(degrees), dtype=np.int64)
        for gi, (_, members) in enumerate(obj._groups):
            for k, pos in enumerate(members):
                obj._group_of[pos] = gi
                obj._k_in_group[pos] = k
                obj._gsize_of[pos] = len(members)
        obj._basis = {}
        obj._shift = {}
        cls._cache[key] = obj
        return obj

    def __repr__(self):
        return f"FreeModule(degrees={self.degrees})"

    # basis bookkeeping -------------------------------------------------
    def _layout(self, D: int) -> tuple:
        """(group offsets, pos array, mrank array, size) for degree D."""
        got = self._basis.get(D)
        if got is not None:
            return got
        offsets = np.zeros(len(self._groups), dtype=np.int64)
        pos_parts, rank_parts = [], []
        off = 0
        for gi, ((_, a), members) in enumerate(self._groups):
            offsets[gi] = off
            n = n_monomials(D - a)
            if n == 0:
                continue
            g = len(members)
            pos_parts.append(np.tile(np.array(members, dtype=np.int64), n))
            rank_parts.append(np.repeat(np.arange(n, dtype=np.int64), g))
            off += n * g
        pos = np.concatenate(pos_parts) if pos_parts else np.zeros(0, dtype=np.int64)
        mrank = np.concatenate(rank_parts) if rank_parts else np.zeros(0, dtype=np.int64)
        got = (offsets, pos, mrank, off)
        self._basis[D] = got
        return got

    def size(self, D: int) -> int:
        return self._layout(D)[3]

    def term(self, D: int, j: int) -> tuple:
        """(position, monomial) of basis index j in degree D."""
        _, pos, mrank, _ = self._layout(D)
        i = int(pos[j])
        return i, monomials_of_degree(D - self.degrees[i])[int(mrank[j])]

    def index(self, D: int, pos: int, mon: tuple) -> int:
        offsets = self._layout(D)[0]
        r = monomial_index(mono_degree(mon))[tuple(mon)]
        return int(offsets[self._group_of[pos]] + r * self._gsize_of[pos] + self._k_in_group[pos])

    def indices(self, D: int, pos: np.ndarray, mrank: np.ndarray) -> np.ndarray:
        offsets = self._layout(D)[0]
        return offsets[self._group_of[pos]] + mrank * self._gsize_of[pos] + self._k_in_group[pos]

    def shift_table(self, D: int, k: int) -> np.ndarray:
        """tab[u, j] = index in degree D+k of (monomial u of degree k) * basis_D[j]."""
        key = (D, k)
        tab = self._shift.get(key)
        if tab is not None:
            return tab
        _, pos, mrank, size = self._layout(D)
        nu = n_monomials(k)
        tab = np.empty((nu, size), dtype=np.int64)
        if size and nu:
            mdeg = D - np.array(self.degrees, dtype=np.int64)[pos]
            for md in np.unique(mdeg):
                sel = np.flatnonzero(mdeg == md)
                mt = _mul_table(int(md), k)  # (n(md), nu)
                new_rank = mt[mrank[sel]].T  # (nu, len(sel))
                tab[:, sel] = self.indices(D + k, np.broadcast_to(pos[sel], new_rank.shape), new_rank)
        self._shift[key] = tab
        return tab

    # conversions -----------------------------------------------------
    def vector(self, D: int, components, p: int) -> np.ndarray:
        """Dense vector of the element with polynomial ``components`` in degree D."""
        v = np.zeros(self.size(D), dtype=np.int64)
        for i, f in enumerate(components):
            for m, c in f._coeffs.items():
                if mono_degree(m) + self.degrees[i] != D:
                    raise ValueError(f"component {i} is not homogeneous of degree {D - self.degrees[i]}")
                v[self.index(D, i, m)] = c
        return v % p

    def components(self, D: int, v: np.ndarray, p: int) -> list:
        from .polynomial import Polynomial
        out = [dict() for _ in range(self.rank)]
        _, pos, mrank, _ = self._layout(D)
        for j in np.flatnonzero(v):
            i = int(pos[j])
            out[i][monomials_of_degree(D - self.degrees[i])[int(mrank[j])]] = int(v[j])
        return [Polynomial._raw(c, p) for c in out]


def transfer(src: FreeModule, dst: FreeModule, D: int, v: np.ndarray, pos_map) -> np.ndarray:
    """Move a degree-D vector from src to dst, position i going to pos_map[i]."""
    out = np.zeros(dst.size(D), dtype=np.int64)
    nz = np.flatnonzero(v)
    if nz.size:
        _, pos, mrank, _ = src._layout(D)
        new_pos = np.asarray(pos_map, dtype=np.int64)[pos[nz]]
        out[dst.indices(D, new_pos, mrank[nz])] = v[nz]
    return out


class _Elem:
    __slots__ = ("D", "vec", "lead", "pos", "mon", "support", "coeffs")

    def __init__(self, F: FreeModule, D: int, vec: np.ndarray):
        self.D = D
        self.vec = vec
        self.support = np.flatnonzero(vec)
        self.coeffs = vec[self.support]
        self.lead = int(self.support[0])
        self.pos, self.mon = F.term(D, self.lead)


class GroebnerBasis:
    """A (reduced, once ``finish`` ran) Gröbner basis of a submodule of F."""

    def __init__(self, F: FreeModule, p: int):
        self.F = F
        self.p = p
        self.elems: list = []
        self._masks: dict = {}

    # reducer tables ----------------------------------------------------
    def _mark(self, table, eid: int):
        mask, rid, ru = table[1], table[2], table[3]
        e = self.elems[eid]
        D = table[0]
        targets = self.F.shift_table(e.D, D - e.D)[:, e.lead]
        fresh = ~mask[targets]
        if fresh.any():
            t = targets[fresh]
            mask[t] = True
            rid[t] = eid
            ru[t] = np.flatnonzero(fresh)

    def _table(self, D: int):
        table = self._masks.get(D)
        if table is None:
            n = self.F.size(D)
            table = (D, np.zeros(n, dtype=bool), np.zeros(n, dtype=np.int64), np.zeros(n, dtype=np.int64))
            for eid, e in enumerate(self.elems):
                if e.D <= D:
                    self._mark(table, eid)
            self._masks[D] = table
        return table

    def _add(self, D: int, vec: np.ndarray) -> _Elem:
        e = _Elem(self.F, D, vec)
        self.elems.append(e)
        eid = len(self.elems) - 1
        for d, table in self._masks.items():
            if d >= D:
                self._mark(table, eid)
        return e

    # reduction ---------------------------------------------------------
    def reduce(self, D: int, v: np.ndarray, full: bool = True) -> np.ndarray:
        """Normal form of the degree-D vector v (modified in place and returned)."""
        p = self.p
        _, mask, rid, ru = self._table(D)
        start = 0
        while True:
            if full:
                hits = np.flatnonzero((v[start:] != 0) & mask[start:])
                if hits.size == 0:
                    return v
                j = start + int(hits[0])
            else:
                nz = np.flatnonzero(v[start:])
                if nz.size == 0:
                    return v
                j = start + int(nz[0])
                if not mask[j]:
                    return v
            e = self.elems[rid[j]]
            tgt = self.F.shift_table(e.D, D - e.D)[ru[j]][e.support]
            c = int(v[j])
            v[tgt] = (v[tgt] - c * e.coeffs) % p
            start = j + 1

    def normal_form(self, D: int, v: np.ndarray) -> np.ndarray:
        return self.reduce(D, np.array(v, dtype=np.int64) % self.p)

    def standard_count(self, D: int) -> int:
        """Number of basis terms of degree D outside the lead-term module."""
        return int(self.F.size(D) - self._table(D)[1].sum())

    def standard_terms(self, D: int) -> np.ndarray:
        return np.flatnonzero(~self._table(D)[1])

    def contains(self, D: int, v: np.ndarray) -> bool:
        return not self.normal_form(D, v).any()

    def finish(self):
        """Drop redundant elements, tail-reduce, sort: the reduced basis."""
        keep = []
        for e in self.elems:
            redundant = any(
                o is not e and o.pos == e.pos and mono_divides(o.mon, e.mon) and (o.mon != e.mon or id(o) < id(e))
                for o in self.elems
            )
            if not redundant:
                keep.append(e)
        keep.sort(key=lambda e: (e.D, e.lead))
        self.elems = keep
        self._masks = {}
        out = []
        for i, e in enumerate(keep):
            tail = e.vec.copy()
            tail[e.lead] = 0
            tail = self.reduce(e.D, tail)
            tail[e.lead] = 1
            out.append(_Elem(self.F, e.D, tail))
        self.elems = out
        self._masks = {}
        return self

    def vectors(self) -> list:
        return [(e.D, e.vec) for e in self.elems]

    def same_as(self, other: "GroebnerBasis") -> bool:
        if len(self.elems) != len(other.elems):
            return False
        return all(a.D == b.D and np.array_equal(a.vec, b.vec) for a, b in zip(self.elems, other.elems))


def _monic(v: np.ndarray, p: int) -> np.ndarray:
    j = np.flatnonzero(v)[0]
    inv = pow(int(v[j]), -1, p)
    return (v * inv) % p


def buchberger(F: FreeModule, gens: list, p: int, stats: dict | None = None) -> tuple:
    """Reduced Gröbner basis of the submodule generated by ``gens``.

    ``gens`` is a list of (degree, vector).  Returns (basis, needed) where
    ``needed[k]`` tells whether generator k was not in the submodule spanned
    by the S-pair closure of the earlier generators; the needed ones form a
    minimal generating set.
    """
    G = GroebnerBasis(F, p)
    order = sorted(range(len(gens)), key=lambda k: gens[k][0])
    needed = [False] * len(gens)
    gi = 0
    heap: list = []
    live: dict = {}  # pair id -> (i, j, lcm)
    counter = 0
    rank_one = F.rank == 1
    n_pairs = 0
    n_zero = 0

    def update(h_id: int):
        nonlocal counter
        h = G.elems[h_id]
        cands = []
        for gid, g in enumerate(G.elems[:-1]):
            if g.pos == h.pos:
                cands.append((gid, mono_lcm(g.mon, h.mon)))

        def coprime(gid):
            if not rank_one:
                return False
            a, b = G.elems[gid].mon, h.mon
            return all(x == 0 or y == 0 for x, y in zip(a, b))

        kept = []
        rest = list(cands)
        while rest:
            gid, L = rest.pop(0)
            if coprime(gid) or not any(mono_divides(L2, L) for _, L2 in rest + kept):
                kept.append((gid, L))
        # chain criterion on old pairs
        for pid, (i, j, L) in list(live.items()):
            if G.elems[i].pos != h.pos:
                continue
            if mono_divides(h.mon, L) and mono_lcm(G.elems[i].mon, h.mon) != L and mono_lcm(G.elems[j].mon, h.mon) != L:
                del live[pid]
        for gid, L in kept:
            if coprime(gid):
                continue
            counter += 1
            live[counter] = (gid, h_id, L)
            heapq.heappush(heap, (mono_degree(L) + F.degrees[h.pos], counter))

    while True:
        while heap and heap[0][1] not in live:
            heapq.heappop(heap)
        next_pair = heap[0][0] if heap else None
        next_gen = gens[order[gi]][0] if gi < len(order) else None
        if next_pair is None and next_gen is None:
            break
        if next_gen is None or (next_pair is not None and next_pair <= next_gen):
            D, pid = heapq.heappop(heap)
            i, j, L = live.pop(pid)
            a, b = G.elems[i], G.elems[j]
            n_pairs += 1
            s = np.zeros(F.size(D), dtype=np.int64)
            ua = monomial_index(mono_degree(mono_div(L, a.mon)))[mono_div(L, a.mon)]
            ub = monomial_index(mono_degree(mono_div(L, b.mon)))[mono_div(L, b.mon)]
            s[F.shift_table(a.D, D - a.D)[ua][a.support]] = a.coeffs
            tb = F.shift_table(b.D, D - b.D)[ub][b.support]
            s[tb] = (s[tb] - b.coeffs) % p
            s = G.reduce(D, s)
            if s.any():
                G._add(D, _monic(s, p))
                update(len(G.elems) - 1)
            else:
                n_zero += 1
        else:
            k = order[gi]
            gi += 1
            D, v = gens[k]
            s = G.reduce(D, np.array(v, dtype=np.int64) % p)
            if s.any():
                needed[k] = True
                G._add(D, _monic(s, p))
                update(len(G.elems) - 1)
    if stats is not None:
        stats["pairs"] = n_pairs
        stats["zero_reductions"] = n_zero
    G.finish()
    return G, needed


def kernel(F0: FreeModule, F1: FreeModule, columns: list, p: int, minimal: bool = True) -> list:
    """Generators of the kernel of F1 -> F0, e_j -> columns[j] (a degree-D vector of F0).

    Uses the elimination order on F0 (+) F1: Gröbner basis elements whose
    lead term lies in the F1 block have zero F0 part and generate the kernel.
    """
    r0, r1 = F0.rank, F1.rank
    if r1 == 0:
        return []
    G = FreeModule(F0.degrees + F1.degrees, (0,) * r0 + (1,) * r1)
    embed0 = list(range(r0))
    gens = []
    for j, (D, col) in enumerate(columns):
        if D != F1.degrees[j]:
            raise ValueError(f"column {j} has degree {D}, expected {F1.degrees[j]}")
        v = transfer(F0, G, D, col, embed0) if r0 else np.zeros(G.size(D), dtype=np.int64)
        v[G.index(D, r0 + j, (0, 0, 0, 0))] = 1
        gens.append((D, v))
    gb, _ = buchberger(G, gens, p)
    back = [0] * r0 + list(range(r1))
    kern = [(e.D, transfer(G, F1, e.D, e.vec, back)) for e in gb.elems if e.pos >= r0]
    if minimal and kern:
        _, needed = buchberger(F1, kern, p)
        kern = [k for k, keep in zip(kern, needed) if keep]
    return kern


def minimal_subset(F: FreeModule, gens: list, p: int) -> list:
    """Indices of a minimal generating subset of the homogeneous ``gens``."""
    _, needed = buchberger(F, gens, p)
    return [k for k, keep in enumerate(needed) if keep]
