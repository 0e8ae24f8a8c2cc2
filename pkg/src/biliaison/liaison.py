"""Linkage, elementary biliaison on a surface, and the descending-biliaison
obstruction test built from multiplication maps on the dualizing module."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

import numpy as np

from .curves import Curve, NotACurve, PreconditionError, make_curve
from .ideals import GradedIdeal, ideal_quotient, saturate
from .linalg import nullspace, rank
from .modules import GradedModule
from .polynomial import Polynomial


def _hp_degree(gens, p) -> int:
    return GradedModule.quotient_ring(GradedIdeal(gens, p)).hilbert_polynomial.degree


def is_complete_intersection(F: Polynomial, G: Polynomial) -> bool:
    """(F, G) is a regular sequence iff R/(F, G) is one-dimensional."""
    if not F or not G or F.is_constant() or G.is_constant():
        return False
    return _hp_degree([F, G], F.p) == 1


# -------------------------------------------------------------- surfaces

class FactoredSurface:
    """Surface q = 0 with a factorization q = c * prod factor^mult.

    Factors are supplied, never computed; the product is checked exactly.
    ``source`` records where the factorization came from.
    """

    def __init__(self, q: Polynomial, factors, source: str = "supplied"):
        if not q or q.is_constant():
            raise ValueError("a surface needs a non-constant equation")
        merged: dict = {}
        for h, m in factors:
            if h.is_constant():
                raise ValueError(f"factor {h} is constant")
            if m < 1:
                raise ValueError("multiplicities must be positive")
            key = h.monic()
            merged[key] = merged.get(key, 0) + m
        prod = Polynomial.constant(1, q.p)
        for h, m in merged.items():
            prod = prod * h ** m
        if prod != q.monic():
            raise ValueError(f"factors do not multiply to {q}")
        self.q = q
        self.s = q.degree
        self.factors = sorted(merged.items(), key=lambda hm: (hm[0].degree, str(hm[0])))
        self.source = source

    @classmethod
    def irreducible(cls, q: Polynomial) -> "FactoredSurface":
        return cls(q, [(q, 1)], "single factor")

    def maximal_divisors(self) -> list:
        """(factor, q / factor) for each distinct factor, skipping constant quotients."""
        out = []
        for h, _ in self.factors:
            d = self.q.exact_divide(h)
            if d is not None and not d.is_constant():
                out.append((h, d))
        return out

    def to_json(self) -> dict:
        return {"q": str(self.q), "s": self.s,
                "factors": [[str(h), m] for h, m in self.factors], "source": self.source}

    def __repr__(self):
        body = " ".join(f"({h})^{m}" if m > 1 else f"({h})" for h, m in self.factors)
        return f"FactoredSurface({self.q} = {body})"


def factor_with_hints(q: Polynomial, hints=()) -> FactoredSurface:
    """Split off the hint forms by exact division; the leftover is one factor."""
    rest = q
    factors = []
    for h in hints:
        if h.is_constant():
            continue
        m = 0
        while True:
            d = rest.exact_divide(h)
            if d is None:
                break
            rest = d
            m += 1
        if m:
            factors.append((h, m))
    if not rest.is_constant():
        factors.append((rest, 1))
    source = "hints" if len(factors) > 1 or (factors and factors[0][1] > 1) else "single factor"
    return FactoredSurface(q, factors, source)


def _random_element(ideal: GradedIdeal, d: int, rng: random.Random) -> Polynomial:
    basis = ideal.basis_in_degree(d)
    acc = Polynomial.zero(ideal.p)
    for b in basis:
        acc = acc + b.scale(rng.randrange(1, ideal.p))
    return acc


def enumerate_surfaces(C: Curve, s: int, hints=(), n_random: int = 4, seed: int = 0) -> list:
    """Surfaces of degree s through C: Gröbner basis elements plus random members."""
    rng = random.Random((seed, s).__hash__())
    seen = set()
    out = []
    cands = [g for g in C.ideal.groebner if g.degree == s]
    if C.ideal.dim_in_degree(s):
        cands += [_random_element(C.ideal, s, rng) for _ in range(n_random)]
    for q in cands:
        if not q:
            continue
        key = q.monic()
        if key in seen:
            continue
        seen.add(key)
        out.append(factor_with_hints(q, hints))
    return out


# ------------------------------------------------------------------ link

@dataclass
class LinkResult:
    curve: Curve
    degrees: tuple
    checks: dict = field(default_factory=dict)


def link(C: Curve, F: Polynomial, G: Polynomial) -> LinkResult:
    """The curve linked to C by the complete intersection (F, G)."""
    if not (C.contains(F) and C.contains(G)):
        raise PreconditionError("F and G must lie in I_C")
    if not is_complete_intersection(F, G):
        raise PreconditionError("(F, G) is not a complete intersection")
    a, b = F.degree, G.degree
    if a * b == C.degree:
        raise PreconditionError("the complete intersection is the curve itself; the residual is empty")
    ci = GradedIdeal([F, G], C.p)
    I2, _ = saturate(ideal_quotient(ci, C.ideal))
    C2 = make_curve(I2, C.p, seed=C.seed)
    r1, r2 = C.rao_dims, C2.rao_dims
    support = set(r1.support()) | {a + b - 4 - n for n in r2.support()}
    checks = {
        "degree": C2.degree == a * b - C.degree,
        "rao_duality": all(r2(a + b - 4 - n) == r1(n) for n in support),
    }
    return LinkResult(C2, (a, b), checks)


# ------------------------------------------------------------- biliaison

@dataclass
class BiliaisonStep:
    surface: FactoredSurface
    height: int
    multiplier: Polynomial | None
    source: Curve
    target: Curve
    checks: dict = field(default_factory=dict)


def shift_law_holds(C: Curve, C2: Curve, h: int) -> bool:
    """rao(C2)(n) == rao(C)(n - h) on the union of both supports."""
    r1, r2 = C.rao_dims, C2.rao_dims
    degrees = set(r2.support()) | {n + h for n in r1.support()}
    return all(r2(n) == r1(n - h) for n in degrees)


def elementary_biliaison(C: Curve, Q: FactoredSurface, f: Polynomial) -> BiliaisonStep:
    """Ascending biliaison of height deg f on Q: I_{C'} = sat(f I_C + (q))."""
    if not C.contains(Q.q):
        raise PreconditionError("the surface does not contain the curve")
    if not f or f.is_constant():
        raise PreconditionError("the multiplier must have positive degree")
    if _hp_degree([Q.q, f], C.p) > 1:
        raise PreconditionError("the multiplier is a zero divisor on the surface")
    h = f.degree
    gens = [f * g for g in C.ideal.groebner] + [Q.q]
    I2, _ = saturate(GradedIdeal(gens, C.p))
    C2 = make_curve(I2, C.p, seed=C.seed)
    checks = {
        "degree": C2.degree == C.degree + h * Q.s,
        "rao_shift": shift_law_holds(C, C2, h),
    }
    return BiliaisonStep(Q, h, f, C, C2, checks)


def descend(C: Curve, Q: FactoredSurface, h: int, seed: int = 0, tries: int = 8) -> BiliaisonStep:
    """Elementary biliaison of height h < 0 on Q, as two links (Q, S), (Q, S').

    S is a random member of I_C of degree t (smallest t that works) and S' a
    random member of the first link's ideal of degree t + h.
    """
    if h >= 0:
        raise PreconditionError("descent needs a negative height")
    q = Q.q
    rng = random.Random(seed)
    for t in range(max(C.s0, 1), C.regularity_bound + Q.s + 2):
        if not C.ideal.dim_in_degree(t):
            continue
        for _ in range(tries):
            S = _random_element(C.ideal, t, rng)
            if not is_complete_intersection(q, S):
                continue
            C1 = link(C, q, S).curve
            if t + h < 1 or not C1.ideal.dim_in_degree(t + h):
                break
            for _ in range(tries):
                S2 = _random_element(C1.ideal, t + h, rng)
                if is_complete_intersection(q, S2):
                    C2 = link(C1, q, S2).curve
                    checks = {
                        "degree": C2.degree == C.degree + h * Q.s,
                        "rao_shift": shift_law_holds(C, C2, h),
                    }
                    return BiliaisonStep(Q, h, None, C, C2, checks)
            break
    raise PreconditionError(f"no descending biliaison of height {h} found on {Q.q}")


# ------------------------------------------------------ Hom and injectivity

def _check_surface(C: Curve, Q: FactoredSurface):
    if not C.contains(Q.q):
        raise PreconditionError(f"surface {Q.q} does not contain the curve")


def hom_dimension(C: Curve, Q: FactoredSurface, h: int) -> int:
    """dim Hom(J_{C/Q}, O_Q(h)) = h^0 omega_C(4 - s + h) for h < 0."""
    if h >= 0:
        raise PreconditionError("the Hom/omega identification needs h < 0")
    _check_surface(C, Q)
    return C.omega.hilbert_function(4 - Q.s + h)


@dataclass
class HomVerdict:
    s: int
    h: int
    dim_hom: int
    factors: list
    verdict: str
    witness: object = None

    def to_json(self, with_witness: bool = True) -> dict:
        out = {"s": self.s, "h": self.h, "dimHom": self.dim_hom,
               "factors": self.factors, "verdict": self.verdict}
        if with_witness and self.witness is not None:
            out["witness"] = self.witness
        return out


def injective_hom_exists(C: Curve, Q: FactoredSurface, h: int, seed: int = 0, retries: int = 32) -> HomVerdict:
    """Is there an injective J_{C/Q}(-h) -> O_Q?

    With V = H^0 omega_C(4 - s + h), an element theta gives a non-injective
    map iff some strict divisor of q kills it, iff q/p_i kills it for some
    irreducible factor p_i.  V is the union of the kernels K_i exactly when
    one K_i is all of V (fewer subspaces than field elements).
    """
    if h >= 0:
        raise PreconditionError("injectivity criterion is stated for h < 0")
    _check_surface(C, Q)
    om = C.omega
    n = 4 - Q.s + h
    dim = om.hilbert_function(n)
    if dim == 0:
        return HomVerdict(Q.s, h, 0, [], "no_nonzero_hom")
    rows = []
    maps = []
    for factor, div in Q.maximal_divisors():
        mat = om.multiplication_map(div, n)
        kdim = dim - (rank(mat, C.p) if mat.size else 0)
        rows.append({"factor": str(factor), "divisor": str(div), "kernel_dim": kdim})
        maps.append((div, mat, kdim))
    for div, _, kdim in maps:
        if kdim == dim:
            return HomVerdict(Q.s, h, dim, rows, "all_annihilated", {"divisor": str(div)})
    rng = random.Random(seed)
    witness = None
    for _ in range(retries):
        theta = np.array([rng.randrange(C.p) for _ in range(dim)], dtype=np.int64)
        if all(((mat @ theta) % C.p).any() for _, mat, _ in maps) and theta.any():
            witness = {"theta": str(om.element(n, theta))}
            break
    return HomVerdict(Q.s, h, dim, rows, "injective_exists", witness)


@dataclass
class ObstructionReport:
    entries: list
    found: dict | None

    @property
    def verdict(self) -> str:
        if self.found is None:
            return "no descending biliaison found over the supplied surfaces"
        return "descending biliaison available"

    def to_json(self, with_witness: bool = True) -> dict:
        out = {"verdict": self.verdict,
               "entries": [dict(e["result"].to_json(with_witness), surface=e["surface"]) for e in self.entries]}
        if self.found is not None:
            found = dict(self.found)
            if not with_witness:
                found.pop("witness", None)
            out["found"] = found
        return out


def admissible_heights(C: Curve) -> list:
    """Negative h for which some s with s0 <= s <= e + 4 + h exists."""
    low = C.s0 - C.e - 4
    return list(range(low, 0)) if low < 0 else []


def descending_obstruction_report(C: Curve, surfaces, h_range, seed: int = 0) -> ObstructionReport:
    entries = []
    found = None
    for idx, Q in enumerate(surfaces):
        _check_surface(C, Q)
        for h in sorted(h_range):
            if h >= 0:
                raise PreconditionError("heights must be negative")
            if not (C.s0 <= Q.s <= C.e + 4 + h):
                res = HomVerdict(Q.s, h, 0, [], "no_nonzero_hom")
            else:
                res = injective_hom_exists(C, Q, h, seed=seed)
            entries.append({"surface": str(Q.q), "index": idx, "result": res})
            if res.verdict == "injective_exists" and found is None:
                found = {"surface": str(Q.q), "s": Q.s, "h": h, "witness": res.witness}
    entries.sort(key=lambda e: (e["result"].s, e["result"].h, e["index"]))
    return ObstructionReport(entries, found)


def verify_minimality_subcanonical(C: Curve, surfaces=None, hints=(), n_random: int = 4, seed: int = 0) -> dict:
    """Look for a descending elementary biliaison from a subcanonical curve.

    PASS means none was found over the tested surfaces for every admissible
    h < 0.  A curve with zero Rao module is minimal by definition (every
    shift of the zero module is the same), so it passes whatever the
    surfaces show; the search is still run and reported.
    """
    alpha = C.subcanonical_alpha
    if alpha is None:
        raise PreconditionError("the curve is not subcanonical")
    heights = admissible_heights(C)
    a = alpha + 4
    if surfaces is None:
        surfaces = []
        top = C.e + 4 + max(heights) if heights else C.s0 - 1
        for s in range(C.s0, top + 1):
            surfaces += enumerate_surfaces(C, s, hints, n_random, seed)
    report = descending_obstruction_report(C, surfaces, heights, seed=seed)
    pairs = [(Q.s, h) for Q in surfaces for h in heights if C.s0 <= Q.s <= C.e + 4 + h]
    acm = C.rao_dims.is_zero()
    if report.found is None:
        verdict, reason = "PASS", "no descending biliaison over the tested surfaces"
    elif acm:
        verdict, reason = "PASS", "Rao module is zero; descents exist but every shift of 0 is 0"
    else:
        verdict, reason = "FAIL", "a descending biliaison exists"
    return {
        "verdict": verdict,
        "reason": reason,
        "alpha": alpha,
        "e": C.e,
        "s0": C.s0,
        "a": a,
        "admissible_heights": heights,
        "a_plus_h_minus_s_negative": all(a + h - s < 0 for s, h in pairs),
        "no_surface_below_a": C.s0 >= a,
        "surfaces_tested": len(surfaces),
        "report": report,
    }


# ------------------------------------------------- fundamental diagram check

def _hom_basis(N: GradedModule, G: GradedModule, d: int) -> tuple:
    """Basis of Hom_R(N, G)_d as coordinate blocks, one per generator of N."""
    P = N.presentation
    a = P.row_twists
    blocks = [G.hilbert_function(d + ai) for ai in a]
    offs = np.concatenate([[0], np.cumsum(blocks)]).astype(int)
    rows = []
    for j, b in enumerate(P.col_twists):
        tgt = G.hilbert_function(d + b)
        row = np.zeros((tgt, offs[-1]), dtype=np.int64)
        for i, ai in enumerate(a):
            e = P.entries[i][j]
            if e and blocks[i] and tgt:
                row[:, offs[i]:offs[i + 1]] = G.multiplication_map(e, d + ai)
        rows.append(row)
    mat = np.vstack(rows) if rows else np.zeros((0, offs[-1]), dtype=np.int64)
    if offs[-1] == 0:
        return np.zeros((0, 0), dtype=np.int64), offs
    basis = nullspace(mat, N.p, offs[-1]) if mat.shape[0] else np.eye(offs[-1], dtype=np.int64)
    return basis, offs


def fundamental_diagram_check(C: Curve, Q: FactoredSurface, f: Polynomial, window=(-4, 4)) -> dict:
    """Degreewise consequences of the fundamental diagram for J_{C/Q}.

    * dim Hom(I_C/(q), R/(q))_h = h^0 O_Q(h) + h^0 omega_C(4 - s + h), the
      Hom module computed directly from a presentation;
    * every such homomorphism u satisfies u(x) y = x u(y) on generators;
    * when f is a nonzerodivisor on O_Q, multiplication by f is injective
      on I_C/(q) in each degree.
    """
    _check_surface(C, Q)
    p = C.p
    gens = list(C.ideal.minimal_generators)
    N = GradedModule.ideal_quotient_module(GradedIdeal(gens + [Q.q], p), GradedIdeal([Q.q], p))
    G = GradedModule.quotient_ring(GradedIdeal([Q.q], p))
    Pn = N.presentation
    # f = q (or any multiple) gives u = 0: the diagram degenerates, nothing to test
    regular = bool(f) and not f.is_constant() and _hp_degree([Q.q, f], p) <= 1
    result = {"ok": True, "failed_degree": None, "degrees": {}}
    for h in range(window[0], window[1] + 1):
        basis, offs = _hom_basis(N, G, h)
        direct = basis.shape[0]
        predicted = G.hilbert_function(h) + C.omega.hilbert_function(4 - Q.s + h)
        symmetric = True
        # generators of N are the columns of the row matrix of I_C + (q) modulo q
        xs = _generator_polys(N)
        for u in basis:
            for i, xi in enumerate(xs):
                ui = u[offs[i]:offs[i + 1]]
                for k, xk in enumerate(xs):
                    if k <= i:
                        continue
                    uk = u[offs[k]:offs[k + 1]]
                    left = (G.multiplication_map(xk, h + Pn.row_twists[i]) @ ui) % p
                    right = (G.multiplication_map(xi, h + Pn.row_twists[k]) @ uk) % p
                    if not np.array_equal(left, right):
                        symmetric = False
        inj = None
        if regular:
            dim_n = N.hilbert_function(h)
            inj = True
            if dim_n:
                inj = rank(N.multiplication_map(f, h), p) == dim_n
        ok = direct == predicted and symmetric and inj is not False
        result["degrees"][h] = {"hom_direct": direct, "hom_predicted": predicted,
                                "symmetric": symmetric, "multiplier_injective": inj}
        if not ok and result["ok"]:
            result["ok"] = False
            result["failed_degree"] = h
    return result


def _generator_polys(N: GradedModule) -> list:
    polys = getattr(N, "generator_polys", None)
    if polys is None:
        raise ValueError("module does not record its generators as polynomials")
    return polys
