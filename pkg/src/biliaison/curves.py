"""Space curves in P^3 through their saturated ideals, and their cohomology.

All sheaf cohomology is reached through graded Ext modules of R/I_C:

* the dualizing module is Ext^2(R/I_C, R)(-4), and h^1 O_C(n) is its
  dimension in degree -n;
* the Rao module H^1_* of the ideal sheaf has dim (M_C)_n equal to
  dim Ext^3(R/I_C, R) in degree -n-4.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import cached_property

from .ideals import GradedIdeal, ideal_quotient, saturate
from .modules import (
    GradedModule,
    IntegerWindowFunction,
    annihilator,
    element_annihilator,
    ext_module,
    is_cyclic_in_degree,
    shift,
)
from .polynomial import Polynomial


class NotACurve(ValueError):
    """The saturated ideal does not define a one-dimensional scheme."""

    def __init__(self, message: str, hilbert_polynomial=None):
        super().__init__(message)
        self.hilbert_polynomial = hilbert_polynomial


class PreconditionError(ValueError):
    pass


def _sections(N: GradedModule) -> GradedModule:
    """Global sections module H^0_* of the sheaf of a pure 1-dimensional N.

    For a locally Cohen-Macaulay sheaf on a curve, applying Ext^2(-, R)
    twice gives the module of all twisted global sections.
    """
    return ext_module(ext_module(N, 2), 2)


def _one_dim_window(*mods) -> tuple:
    """A degree range outside which every module's Hilbert function either
    vanishes (below) or equals its Hilbert polynomial (above)."""
    lows, highs = [], []
    for M in mods:
        if M.is_zero():
            continue
        lows.append(min(M.minimal_presentation.row_twists))
        highs.append(max(j for _, j in M.betti) - 3)
    if not lows:
        return (0, -1)
    return (min(lows), max(max(highs), min(lows)))


def compare_hilbert(A: GradedModule, B: GradedModule, b_shift: int = 0) -> dict:
    """Compare n -> HF(A, n) with n -> HF(B, n + b_shift) everywhere.

    Agreement on the returned window plus equal Hilbert polynomials is
    agreement in every degree.
    """
    B2 = shift(B, b_shift)
    lo, hi = _one_dim_window(A, B2)
    diff = [n for n in range(lo, hi + 1) if A.hilbert_function(n) != B2.hilbert_function(n)]
    same_poly = A.hilbert_polynomial == B2.hilbert_polynomial
    return {
        "window": [lo, hi],
        "mismatched_degrees": diff,
        "same_hilbert_polynomial": same_poly,
        "equal": not diff and same_poly,
    }


class Curve:
    """Curve with saturated ideal I_C; invariants are computed on first use."""

    def __init__(self, ideal: GradedIdeal, name: str | None = None, seed: int = 0):
        self.ideal = ideal
        self.p = ideal.p
        self.name = name
        self.locally_cm = "assumed by construction"
        self.seed = seed
        self.retries = 8

    # structural data ---------------------------------------------------
    @cached_property
    def quotient(self) -> GradedModule:
        return GradedModule.quotient_ring(self.ideal)

    @property
    def resolution(self) -> list:
        return self.quotient.resolution

    @property
    def betti(self):
        return self.quotient.betti

    @property
    def hilbert_polynomial(self):
        return self.quotient.hilbert_polynomial

    def degree_genus(self) -> tuple:
        c = self.hilbert_polynomial.coeffs
        d = c[1] if len(c) > 1 else 0
        return int(d), int(1 - c[0])

    @property
    def degree(self) -> int:
        return self.degree_genus()[0]

    @property
    def genus(self) -> int:
        return self.degree_genus()[1]

    @cached_property
    def ext2(self) -> GradedModule:
        return ext_module(self.quotient, 2)

    @cached_property
    def ext3(self) -> GradedModule:
        return ext_module(self.quotient, 3)

    @cached_property
    def omega(self) -> GradedModule:
        """Dualizing module Ext^2(R/I_C, R)(-4)."""
        return shift(self.ext2, -4)

    # cohomology --------------------------------------------------------
    def h0_ideal(self, n: int) -> int:
        return self.ideal.dim_in_degree(n)

    def h1_structure(self, n: int) -> int:
        """h^1 O_C(n) = dim (omega)_{-n}."""
        return self.omega.hilbert_function(-n)

    def h0_structure(self, n: int) -> int:
        """h^0 O_C(n) from the Euler characteristic and h^1."""
        return int(self.hilbert_polynomial(n)) + self.h1_structure(n)

    @cached_property
    def rao_dims(self) -> IntegerWindowFunction:
        E = self.ext3
        if E.is_zero():
            return IntegerWindowFunction(0, -1, {})
        if not E.is_finite_length():
            raise NotACurve("Ext^3(R/I, R) has positive dimension: the curve is not locally Cohen-Macaulay")
        lo, hi = E.support_window
        vals = {-k - 4: E.hilbert_function(k) for k in range(lo, hi + 1)}
        return IntegerWindowFunction(-hi - 4, -lo - 4, vals)

    def rao_dim_by_euler(self, n: int) -> int:
        """dim (M_C)_n = h^0 O_C(n) - dim (R/I_C)_n, the second route."""
        return self.h0_structure(n) - self.quotient.hilbert_function(n)

    @cached_property
    def rao_module(self) -> GradedModule:
        """M_C, realised as Ext^4(Ext^3(R/I_C, R), R) (graded Matlis duality)."""
        return ext_module(self.ext3, 4)

    def is_acm(self) -> bool:
        return self.ext3.is_zero()

    @cached_property
    def s0(self) -> int:
        return min(self.ideal.generator_degrees())

    @cached_property
    def e(self) -> int:
        return -min(self.omega.minimal_presentation.row_twists)

    @cached_property
    def regularity_bound(self) -> int:
        """Largest twist in the minimal resolution of R/I_C, minus 3."""
        return max(j for _, j in self.betti) - 3

    @cached_property
    def subcanonical_certificate(self) -> dict:
        """Decide whether omega_C is isomorphic to O_C(alpha).

        Comparing Hilbert polynomials forces alpha = (2g - 2) / d.  The
        isomorphism is then certified by a section theta of omega in degree
        -alpha whose annihilator saturates to I_C: multiplication by theta
        embeds (R/I_C)(alpha) in omega with finite-length cokernel.  When
        omega is cyclic its generator is tried first (then Ann(omega) = I_C
        is the whole certificate); otherwise theta is drawn at random from
        omega_{-alpha}, where generating sections form a dense open set.
        """
        d, g = self.degree_genus()
        out = {"alpha": None, "method": None, "theta": None}
        if (2 * g - 2) % d:
            out["method"] = "degree does not divide 2g-2"
            return out
        alpha = (2 * g - 2) // d
        om = self.omega
        gen = is_cyclic_in_degree(om)
        if gen == -alpha and annihilator(om) == self.ideal:
            out.update(alpha=alpha, method="cyclic")
            return out
        dim = om.hilbert_function(-alpha)
        if dim == 0:
            out["method"] = "no sections in the required degree"
            return out
        rng = random.Random(self.seed)
        for _ in range(self.retries):
            coords = [rng.randrange(self.p) for _ in range(dim)]
            theta = om.element(-alpha, coords)
            ann, _ = saturate(element_annihilator(om, theta))
            if ann == self.ideal:
                out.update(alpha=alpha, method="generating section", theta=str(theta))
                return out
        out["method"] = f"no generating section among {self.retries} random draws"
        return out

    @property
    def subcanonical_alpha(self):
        return self.subcanonical_certificate["alpha"]

    def invariants(self) -> dict:
        d, g = self.degree_genus()
        return {
            "degree": d,
            "genus": g,
            "s0": self.s0,
            "e": self.e,
            "rao": self.rao_dims.support(),
            "alpha": self.subcanonical_alpha,
        }

    def report(self) -> dict:
        d, g = self.degree_genus()
        return {
            "generators": [str(f) for f in self.ideal.minimal_generators],
            "degree": d,
            "genus": g,
            "s0": self.s0,
            "e": self.e,
            "betti": self.betti.to_json(),
            "rao_dims": self.rao_dims.to_json(),
            "alpha": self.subcanonical_alpha,
            "locally_cm": self.locally_cm,
        }

    def contains(self, f: Polynomial) -> bool:
        return self.ideal.contains(f)

    def __eq__(self, other):
        if not isinstance(other, Curve):
            return NotImplemented
        return self.ideal == other.ideal

    def __hash__(self):
        return hash(self.ideal)

    def __repr__(self):
        label = self.name or str(self.ideal)
        return f"Curve({label})"


# ------------------------------------------------------------- constructors

def make_curve(gens, p: int | None = None, strict_cm: bool = False, name: str | None = None,
               seed: int = 0) -> Curve:
    """Saturate the ideal and check that it defines a curve.

    strict_cm additionally certifies local Cohen-Macaulayness: R/I has
    projective dimension at most 3 and Ext^3(R/I, R) has finite length.
    """
    ideal = gens if isinstance(gens, GradedIdeal) else GradedIdeal(list(gens), p)
    sat, _ = saturate(ideal)
    quotient = GradedModule.quotient_ring(sat)
    hp = quotient.hilbert_polynomial
    if hp.degree != 1:
        raise NotACurve(f"Hilbert polynomial {hp} has degree {hp.degree}, expected 1", hp)
    C = Curve(sat, name, seed)
    C.__dict__["quotient"] = quotient
    if strict_cm:
        if quotient.betti.projective_dimension() > 3:
            raise NotACurve("R/I has projective dimension 4 after saturation", hp)
        if not C.ext3.is_zero() and not C.ext3.is_finite_length():
            raise NotACurve("Ext^3(R/I, R) is not of finite length: not locally Cohen-Macaulay", hp)
        C.locally_cm = "verified"
    return C


def rao_module(C: Curve) -> tuple:
    return C.rao_module, C.rao_dims


def h0_ideal(C: Curve, n: int) -> int:
    return C.h0_ideal(n)


def h1_structure(C: Curve, n: int) -> int:
    return C.h1_structure(n)


def e_invariant(C: Curve) -> int:
    return C.e


def s0_invariant(C: Curve) -> int:
    return C.s0


def degree_genus(C: Curve) -> tuple:
    return C.degree_genus()


def omega_module(C: Curve) -> GradedModule:
    return C.omega


def subcanonical_alpha(C: Curve):
    return C.subcanonical_alpha


# ---------------------------------------------------------------- residuals

@dataclass
class ResidualReport:
    curve: Curve
    alpha: int
    checks: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(c["equal"] for c in self.checks.values() if "equal" in c)


def residual_subcurve(C: Curve, Cp: Curve) -> ResidualReport:
    """C'' with I_{C''} = (I_C : I_{Cp}) for a subcurve Cp of a subcanonical C.

    The sheaf isomorphisms J_{Cp}/J_C = omega_{C''}(-alpha) and
    J_{C''}/J_C = omega_{Cp}(-alpha) are checked on global sections in every
    degree.  The graded quotients I_{Cp}/I_C themselves can be smaller in
    finitely many degrees (by the kernel of M_C -> M_{Cp}); that comparison
    is reported as well.
    """
    alpha = C.subcanonical_alpha
    if alpha is None:
        raise PreconditionError("the curve is not subcanonical")
    if not Cp.ideal.contains_ideal(C.ideal):
        raise PreconditionError("I_C is not contained in the ideal of the subcurve")
    if Cp.ideal == C.ideal:
        raise PreconditionError("the subcurve must differ from the curve")
    res_ideal, _ = saturate(ideal_quotient(C.ideal, Cp.ideal))
    Cpp = make_curve(res_ideal, C.p)
    report = ResidualReport(Cpp, alpha)

    N1 = GradedModule.ideal_quotient_module(Cp.ideal, C.ideal)
    N2 = GradedModule.ideal_quotient_module(Cpp.ideal, C.ideal)
    # omega(-alpha)_n = omega_{n - alpha}
    report.checks["sections_Cp_mod_C_vs_omega_residual"] = compare_hilbert(_sections(N1), Cpp.omega, -alpha)
    report.checks["sections_residual_mod_C_vs_omega_Cp"] = compare_hilbert(_sections(N2), Cp.omega, -alpha)
    graded1 = compare_hilbert(N1, Cpp.omega, -alpha)
    graded2 = compare_hilbert(N2, Cp.omega, -alpha)
    report.checks["graded_quotients"] = {
        "Cp_mod_C_mismatched_degrees": graded1["mismatched_degrees"],
        "residual_mod_C_mismatched_degrees": graded2["mismatched_degrees"],
    }
    report.checks["annihilator"] = {"equal": annihilator(N1) == Cpp.ideal}
    return report
