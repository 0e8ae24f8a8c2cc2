"""Koszul modules R/(f1, f2, f3, f4) and the minimal curves attached to them."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property

from .curves import Curve, make_curve
from .ideals import GradedIdeal
from .modules import GradedModule
from .polynomial import DEFAULT_PRIME, Polynomial


class GenericityError(ValueError):
    pass


def _hp_degree(gens, p) -> int:
    return GradedModule.quotient_ring(GradedIdeal(gens, p)).hilbert_polynomial.degree


@dataclass
class KoszulType:
    """Degrees n1 <= n2 <= n3 <= n4 with forms f1..f4 and the auxiliary f, g."""

    degrees: tuple
    forms: tuple
    f: Polynomial
    g: Polynomial
    seed: int = 0
    draws: int = 1

    @property
    def mu(self) -> int:
        n1, n2, n3, n4 = self.degrees
        return max(n1 + n4, n2 + n3)

    @cached_property
    def ideal(self) -> GradedIdeal:
        """(f f1^2, f1 f2, g f2^2, f f1 f4 + g f2 f3)."""
        f1, f2, f3, f4 = self.forms
        f, g = self.f, self.g
        return GradedIdeal([f * f1 * f1, f1 * f2, g * f2 * f2, f * f1 * f4 + g * f2 * f3])

    def surface_factors(self) -> list:
        """Forms known to divide the generators, used as factorization hints."""
        return [h for h in (*self.forms, self.f, self.g) if not h.is_constant()]

    def genericity(self) -> dict:
        """Exact checks of the genericity hypotheses.

        (f1..f4) is a regular sequence iff R/(f1..f4) has finite length, and
        two forms a, b share no factor iff R/(a, b) is one-dimensional.
        """
        p = self.f.p
        regular = _hp_degree(list(self.forms), p) == -1
        named = [("f1", self.forms[0]), ("f2", self.forms[1]), ("f3", self.forms[2]),
                 ("f4", self.forms[3]), ("f", self.f), ("g", self.g)]
        named = [(k, h) for k, h in named if not h.is_constant()]
        bad = []
        for i in range(len(named)):
            for j in range(i + 1, len(named)):
                (a, fa), (b, fb) = named[i], named[j]
                if _hp_degree([fa, fb], p) > 1:
                    bad.append(f"{a},{b}")
        nonzero = bool(self.f) and bool(self.g)
        return {"regular_sequence": regular, "coprime_failures": bad, "nonzero_aux": nonzero,
                "ok": regular and not bad and nonzero}


def validate_degrees(degrees) -> tuple:
    n = tuple(int(x) for x in degrees)
    if len(n) != 4:
        raise ValueError("a Koszul type has four degrees")
    if not (1 <= n[0] <= n[1] <= n[2] <= n[3]):
        raise ValueError("degrees must satisfy 1 <= n1 <= n2 <= n3 <= n4")
    return n


def make_type(degrees, seed: int = 0, p: int = DEFAULT_PRIME, max_draws: int = 16) -> KoszulType:
    """Draw forms of the given degrees from a seeded generator.

    Draws failing the exact genericity checks are rejected and redrawn from
    the same generator; the number of draws is recorded.
    """
    n = validate_degrees(degrees)
    rng = random.Random(seed)
    mu = max(n[0] + n[3], n[1] + n[2])
    for draw in range(1, max_draws + 1):
        forms = tuple(Polynomial.random_form(d, rng, p) for d in n)
        f = Polynomial.random_form(mu - n[0] - n[3], rng, p)
        g = Polynomial.random_form(mu - n[1] - n[2], rng, p)
        t = KoszulType(n, forms, f, g, seed, draw)
        if t.genericity()["ok"]:
            return t
    raise GenericityError(f"no generic draw for type {n} within {max_draws} attempts")


def type_from_forms(forms, f=None, g=None) -> KoszulType:
    """Type built from explicit forms (f, g default to the constant 1)."""
    forms = tuple(forms)
    p = forms[0].p
    n = validate_degrees([h.degree for h in forms])
    mu = max(n[0] + n[3], n[1] + n[2])
    one = Polynomial.constant(1, p)
    f = f if f is not None else one
    g = g if g is not None else one
    if f.degree != mu - n[0] - n[3] or g.degree != mu - n[1] - n[2]:
        raise ValueError("auxiliary forms have the wrong degrees")
    t = KoszulType(n, forms, f, g)
    if not t.genericity()["regular_sequence"]:
        raise GenericityError("f1..f4 is not a regular sequence")
    return t


def koszul_module(t: KoszulType) -> GradedModule:
    return GradedModule.quotient_ring(GradedIdeal(list(t.forms), t.f.p))


def koszul_dims(degrees) -> dict:
    """Coefficients of prod (1 + t + ... + t^(n_i - 1))."""
    coeffs = [1]
    for d in degrees:
        nxt = [0] * (len(coeffs) + d - 1)
        for i, c in enumerate(coeffs):
            for k in range(d):
                nxt[i + k] += c
        coeffs = nxt
    return {i: c for i, c in enumerate(coeffs) if c}


def minimal_curve(t: KoszulType, strict_cm: bool = False) -> Curve:
    C = make_curve(t.ideal, t.f.p, strict_cm=strict_cm, name=f"koszul{t.degrees}", seed=t.seed)
    return C


def predicted_invariants(degrees) -> tuple:
    """(mu, s0, e) = (max(n1+n4, n2+n3), mu + n1 - n4, 2 mu - n3 - n4 - 4)."""
    n1, n2, n3, n4 = degrees
    mu = max(n1 + n4, n2 + n3)
    return mu, mu + n1 - n4, 2 * mu - n3 - n4 - 4


def is_subcanonical_class(degrees) -> bool:
    n1, n2, n3, n4 = degrees
    return n1 + n4 == n2 + n3
