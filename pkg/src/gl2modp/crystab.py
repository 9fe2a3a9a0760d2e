"""Crystabelline parameters and the hypothesis checkers of the lifting theorems.

The theorems here are existence statements.  The checkers verify the finite
hypotheses and return the valuation region the conclusion constrains; they
never produce p-adic values.  Valuations are stored as val(chi(p)); the
parameters lam_i = chi_i(p)^{-1} of the unitary-completion lemma have
val(lam_i) = -val(chi_i(p)).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactmath import ContextMismatch, FieldElement, PrimeContext
from .galoismodp import (Irred, ModPGaloisRep, Red, det_unramified, inertia_data, normal_form,
                         omega2_pair, twist_unramified)
from .smoothmodp import (Branch, HypothesisRejected, ModPCharQp, SemisimpleSmoothPackage,
                         SmoothIrrep, has_socle, is_ps_subquotient, kappa_for, ps_ss)
from .weights import (SerreWeight, SmoothCharZp, TypeDescriptor, pokemon_hypotheses,
                      type_reduction)


@dataclass(frozen=True)
class SmoothCharQpL:
    """Smooth character of Q_p^x: restriction to Z_p^x, val of the value at p,
    and optionally the residue of chi(p) / p^{val} (a coherent choice of
    rational powers of p is understood)."""

    restriction: SmoothCharZp
    val_at_p: Fraction
    unit_residue: FieldElement | None = None

    def __post_init__(self):
        object.__setattr__(self, "val_at_p", Fraction(self.val_at_p))
        if self.unit_residue is not None:
            if self.unit_residue.is_zero():
                raise ValueError("unit residue must be nonzero")
            object.__setattr__(self, "unit_residue", self.unit_residue.minimal())

    @property
    def p(self) -> int:
        return self.restriction.p

    def reduction(self) -> ModPCharQp:
        if self.val_at_p != 0:
            raise ValueError("only characters with val(chi(p)) = 0 reduce directly")
        if self.unit_residue is None:
            raise ValueError("missing residue data")
        return ModPCharQp(self.unit_residue, self.restriction.tame)


@dataclass(frozen=True)
class CrystabParam:
    alpha: SmoothCharQpL
    beta: SmoothCharQpL
    k: int


def crystab_param_valid(param: CrystabParam) -> bool:
    va, vb, k = param.alpha.val_at_p, param.beta.val_at_p, param.k
    return k >= 2 and -(k - 1) < va <= vb < 0 and va + vb == -(k - 1)


def crystab_vals_valid(k: int, va, vb) -> bool:
    va, vb = Fraction(va), Fraction(vb)
    return k >= 2 and -(k - 1) < va <= vb < 0 and va + vb == -(k - 1)


# ---------------------------------------------------------------------------
# Unitary-completion conditions


@dataclass(frozen=True)
class GeneralWeightProfile:
    e: int
    r_vec: tuple[int, ...]
    val_eta: Fraction = Fraction(0)

    def __post_init__(self):
        if self.e < 1:
            raise ValueError("ramification index must be at least 1")
        if not self.r_vec or any(r < 0 for r in self.r_vec):
            raise ValueError("r_vec must be a nonempty list of nonnegative integers")
        object.__setattr__(self, "r_vec", tuple(self.r_vec))
        object.__setattr__(self, "val_eta", Fraction(self.val_eta))


@dataclass(frozen=True)
class ReformReport:
    passed: bool
    failed_conditions: tuple[str, ...]
    central_scalar_relation: dict
    steinberg: dict | None = None

    def to_json(self) -> dict:
        out = {"pass": self.passed, "failed_conditions": list(self.failed_conditions),
               "central_scalar_relation": self.central_scalar_relation}
        if self.steinberg is not None:
            out["steinberg"] = self.steinberg
        return out


def _q(x: Fraction) -> str:
    return str(Fraction(x))


def reform_check(profile: GeneralWeightProfile, val_lam1, val_lam2,
                 steinberg_case: bool = False) -> ReformReport:
    """Necessary valuation conditions for a unitary completion.

    ``steinberg_case`` flags chi1 = chi2 |.|^{-1}; then a G-stable lattice in
    a finite-dimensional piece forces every r_sigma = 0 and the valuations
    (0, 1/e).
    """
    v1, v2 = Fraction(val_lam1), Fraction(val_lam2)
    e, ve = profile.e, profile.val_eta
    s1, s2 = v1 - ve, v2 - ve
    target = Fraction(1 + sum(profile.r_vec), e)
    failed = []
    if s1 + s2 != target:
        failed.append("(i)")
    if s1 < 0 or s2 < 0:
        failed.append("(ii)")
    relation = {"lhs_val_lam1_lam2": _q(v1 + v2),
                "rhs_val": _q(Fraction(1, e) + 2 * ve + Fraction(sum(profile.r_vec), e)),
                "holds": v1 + v2 == Fraction(1, e) + 2 * ve + Fraction(sum(profile.r_vec), e)}
    stein = None
    if steinberg_case:
        ok_r = all(r == 0 for r in profile.r_vec)
        ok_v = (s1, s2) == (0, Fraction(1, e))
        stein = {"r_all_zero": ok_r, "vals_forced": ok_v,
                 "required": [_q(ve), _q(ve + Fraction(1, e))]}
        if not ok_r:
            failed.append("steinberg: r_sigma = 0")
        if not ok_v:
            failed.append("steinberg: (val lam1, val lam2) = (0, 1/e)")
    return ReformReport(not failed, tuple(failed), relation, stein)


# ---------------------------------------------------------------------------
# Ordinary case


@dataclass(frozen=True)
class OrdinaryData:
    psi1: ModPCharQp
    psi2: ModPCharQp
    ps: SemisimpleSmoothPackage


def ordinary_data(chi1: SmoothCharQpL, chi2: SmoothCharQpL, eta: SmoothCharQpL,
                  r_vec: Sequence[int]) -> OrdinaryData:
    """Reductions psi1 = chi1 eta and psi2 = chi2 |.|^{-1} eta theta (F = Q_p).

    theta(x) = x^{sum r} contributes omega^{sum r} on Z_p^x and p^{sum r} at p;
    |.|^{-1} contributes p at p and nothing on Z_p^x.
    """
    sr = sum(r_vec)
    failed = []
    if chi1.val_at_p + eta.val_at_p != 0:
        failed.append("val(lam1) = val(eta(p))")
    if chi2.val_at_p + 1 + eta.val_at_p + sr != 0:
        failed.append("integrality of chi2 |.|^{-1} eta theta")
    if failed:
        raise HypothesisRejected(failed, {
            "val_chi1_p": _q(chi1.val_at_p), "val_chi2_p": _q(chi2.val_at_p),
            "val_eta_p": _q(eta.val_at_p), "sum_r": sr})
    missing = [n for n, c in (("chi1", chi1), ("chi2", chi2), ("eta", eta)) if c.unit_residue is None]
    if missing:
        raise ValueError(f"missing residue data for {', '.join(missing)}")
    psi1 = ModPCharQp(chi1.unit_residue * eta.unit_residue, chi1.restriction.tame + eta.restriction.tame)
    psi2 = ModPCharQp(chi2.unit_residue * eta.unit_residue,
                      chi2.restriction.tame + eta.restriction.tame + sr)
    return OrdinaryData(psi1, psi2, ps_ss(psi1, psi2))


# ---------------------------------------------------------------------------
# Regions


@dataclass(frozen=True)
class ConstraintRegion:
    """val1 + val2 = -(k-1) with each val_i <= 0 (or < 0 when strict)."""

    k: int
    theta1: SmoothCharZp
    theta2: SmoothCharZp
    strict: bool
    distinct: bool = True

    @property
    def interval(self) -> tuple[Fraction, Fraction]:
        return (Fraction(-(self.k - 1)), Fraction(0))

    def contains(self, val1, val2) -> bool:
        v1, v2 = Fraction(val1), Fraction(val2)
        if v1 + v2 != -(self.k - 1):
            return False
        if self.strict:
            return v1 < 0 and v2 < 0
        return v1 <= 0 and v2 <= 0

    def nonempty(self) -> bool:
        lo, hi = self.interval
        return lo < hi if self.strict else lo <= hi

    def min_ramification(self) -> int:
        """Smallest e with a point of the region in ((1/e)Z)^2."""
        if not self.strict:
            return 1
        return 1 if self.k >= 3 else 2

    def to_json(self) -> dict:
        lo, hi = self.interval
        return {
            "k": self.k,
            "relation": f"val1 + val2 = {-(self.k - 1)}",
            "bounds": {"val1": [_q(lo), _q(hi)], "val2": [_q(lo), _q(hi)],
                       "closed": not self.strict},
            "strict": self.strict,
            "distinct": self.distinct,
            "theta1": self.theta1.to_json(),
            "theta2": self.theta2.to_json(),
        }


def thmQp_region(sigma: SerreWeight, kappa: SmoothIrrep, k: int,
                 theta1: SmoothCharZp, theta2: SmoothCharZp) -> ConstraintRegion:
    p = sigma.p
    failed, details = [], {}
    if k < 2:
        failed.append("k")
        details["k"] = k
    z = kappa.central_character()
    trivial_at_p = z.lam == 1
    if not trivial_at_p:
        failed.append("p_acts_trivially")
    elif not has_socle(sigma, kappa):
        failed.append("socle")
    want = (theta1.tame + theta2.tame + k - 2) % (p - 1)
    if z.b != want:
        failed.append("central_character")
        details["central_exponent"] = {"kappa": z.b, "required": want}
    if k >= 2:
        rep = type_reduction(TypeDescriptor(theta1, theta2), k)
        if sigma not in rep:
            failed.append("subquotient")
    if failed:
        raise HypothesisRejected(failed, details)
    t1, t2 = theta1.tame, theta2.tame
    ordinary = is_ps_subquotient(kappa, t1, t2 + k - 2) or is_ps_subquotient(kappa, t2, t1 + k - 2)
    return ConstraintRegion(k, theta1, theta2, strict=not ordinary)


# ---------------------------------------------------------------------------
# Lifting checker


@dataclass(frozen=True)
class LiftMatch:
    sigma: SerreWeight
    branch: Branch
    kappa: SmoothIrrep
    region: ConstraintRegion


@dataclass
class LiftWitness:
    rho: ModPGaloisRep
    sigma: SerreWeight
    kappa: SmoothIrrep
    branch: Branch
    region: ConstraintRegion
    alpha_interval: tuple[Fraction, Fraction]
    k2_special: bool
    matches: list[LiftMatch] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    twist: FieldElement | None = None


def _pair_eq(p: int, x: tuple[int, int], y: tuple[int, int]) -> bool:
    return sorted(v % (p - 1) for v in x) == sorted(v % (p - 1) for v in y)


def _b_excluded(p: int, r: int, a: int, k: int, t1: int, t2: int) -> bool:
    shape = (r + 1 + a, a)
    return _pair_eq(p, shape, (t1, t2 + k - 1)) or _pair_eq(p, shape, (t2, t1 + k - 1))


def mainQp_check(ctx: PrimeContext, rho: ModPGaloisRep, k: int,
                 theta1: SmoothCharZp, theta2: SmoothCharZp) -> LiftWitness:
    p = ctx.p
    if k < 2:
        raise HypothesisRejected(["k"], {"k": k})
    t1, t2 = theta1.tame, theta2.tame
    rho = normal_form(rho)
    inert = inertia_data(rho)
    want_det = (t1 + t2 + k - 1) % (p - 1)
    if inert.det_exponent != want_det:
        raise HypothesisRejected(["central character mismatch"],
                                 {"det_exponent": inert.det_exponent, "required": want_det})
    if isinstance(rho, Red) and det_unramified(rho) != 1:
        raise HypothesisRejected(["determinant unramified part"],
                                 {"lambda1_lambda2": ctx.elem_json(det_unramified(rho))})
    rep = type_reduction(TypeDescriptor(theta1, theta2), k)
    matches: list[LiftMatch] = []
    excluded = []
    for sigma in sorted(rep.guaranteed):
        r, a = sigma.r, sigma.a
        if isinstance(rho, Irred):
            if normal_form(Irred(p, r, a)) != rho:
                continue
            branch = Branch("a")
        else:
            lam = None
            for x, y in ((rho.psi1, rho.psi2), (rho.psi2, rho.psi1)):
                if x.b == (r + 1 + a) % (p - 1) and y.b == a % (p - 1):
                    lam = x.lam
                    break
            if lam is None:
                continue
            if _b_excluded(p, r, a, k, t1, t2):
                excluded.append(sigma)
                continue
            branch = Branch("b", lam)
        kappa = kappa_for(ctx, sigma, branch)
        region = thmQp_region(sigma, kappa, k, theta1, theta2)
        assert region.strict, (sigma, kappa)
        matches.append(LiftMatch(sigma, branch, kappa, region))
    if not matches:
        failed = ["(b) inertia exclusion"] if excluded else ["no matching σ"]
        raise HypothesisRejected(failed, {"excluded_sigma": [w.to_json() for w in excluded],
                                          "complete_reduction": rep.complete})
    first = matches[0]
    kk = Fraction(k - 1)
    notes = []
    e_min = first.region.min_ramification()
    if e_min > 1:
        notes.append(f"region has no integral points; a coefficient field with ramification index {e_min} is required")
    k2 = k == 2 and theta1 == theta2 and first.sigma.r == 0 and first.branch.kind == "a"
    if k2:
        notes.append("k = 2 with chi1 = chi2 |.|^{-1} is covered by the known weight-2 reduction")
    return LiftWitness(rho, first.sigma, first.kappa, first.branch, first.region,
                       (-kk, -kk / 2), k2, matches, notes)


def thmB_check(ctx: PrimeContext, rho: ModPGaloisRep, k: int,
               theta1: SmoothCharZp, theta2: SmoothCharZp) -> LiftWitness:
    p = ctx.p
    failed = list(pokemon_hypotheses(TypeDescriptor(theta1, theta2), k))
    t1, t2 = theta1.tame, theta2.tame
    inert = inertia_data(rho)
    want = (t1 + t2 + k - 1) % (p - 1)
    details: dict = {"det_exponent": inert.det_exponent, "required_det": want}
    if inert.det_exponent != want:
        failed.append("(c)")
    bad1 = omega2_pair(p, t1, t2 + k - 1)
    bad2 = omega2_pair(p, t2, t1 + k - 1)
    if inert.omega2 in (bad1, bad2):
        failed.append("(e)")
    if failed:
        raise HypothesisRejected(failed, details)
    twist = None
    if isinstance(rho, Red):
        prod = det_unramified(rho)
        if prod != 1:
            twist = sqrt_in_tower(ctx, prod.inverse())
            rho = twist_unramified(rho, twist)
    wit = mainQp_check(ctx, rho, k, theta1, theta2)
    wit.twist = twist
    if twist is not None:
        wit.notes.append("twisted by an unramified character to make the determinant unramified part trivial")
    return wit


def sqrt_in_tower(ctx: PrimeContext, x: FieldElement) -> FieldElement:
    """Smallest square root of x in F_{p^d}, else in F_{p^{2d}}."""
    for fld in (ctx.field, ctx.ext):
        try:
            y = fld(x)
        except ContextMismatch:
            continue
        for c in fld.units:
            if c * c == y:
                return c.minimal()
    raise ValueError(f"{x!r} has no square root in the field tower")


def witness_to_json(ctx: PrimeContext, wit: LiftWitness) -> dict:
    from .serial import branch_json, galois_json, irrep_json
    lo, hi = wit.alpha_interval
    out = {
        "rho": galois_json(ctx, wit.rho),
        "sigma": wit.sigma.to_json(),
        "kappa": irrep_json(ctx, wit.kappa),
        "branch": branch_json(ctx, wit.branch),
        "region": wit.region.to_json(),
        "alpha": {"val_interval": [_q(lo), _q(hi)], "interval_closed": [False, True],
                  "restriction": ["theta1", "theta2"]},
        "k2_special": wit.k2_special,
        "matches": [{"sigma": m.sigma.to_json(), "branch": branch_json(ctx, m.branch),
                     "kappa": irrep_json(ctx, m.kappa), "first": i == 0}
                    for i, m in enumerate(wit.matches)],
        "notes": list(wit.notes),
    }
    if wit.twist is not None:
        out["twist"] = ctx.elem_json(wit.twist)
    return out
