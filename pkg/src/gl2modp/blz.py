"""Reduction table for crystalline V_{k,a_p} with 2 <= k <= 2p+1, and the
cross-check of that table against the sets predicted by the lifting theorem
(theta1 = theta2 trivial).

a_p is never represented p-adically: a regime records where val(a_p) lies
and, where the table reads it, one residue.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

from .exactmath import FieldElement, PrimeContext
from .galoismodp import Irred, ModPGaloisRep, Red, normal_form
from .smoothmodp import ModPCharQp
from .weights import SmoothCharZp, TypeDescriptor, type_reduction


class RegimeError(ValueError):
    """Regime data incompatible with k, or missing/zero residues."""


@dataclass(frozen=True)
class ValOpenInterval:
    lo: Fraction
    hi: Fraction | None = None     # None means +infinity

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        if self.hi is not None:
            object.__setattr__(self, "hi", Fraction(self.hi))
            if not self.lo < self.hi:
                raise RegimeError(f"empty interval ({self.lo}, {self.hi})")

    def inside(self, lo, hi) -> bool:
        """Is (self.lo, self.hi) contained in [lo, hi]?"""
        if self.lo < Fraction(lo):
            return False
        if hi is None:
            return True
        return self.hi is not None and self.hi <= Fraction(hi)

    def to_json(self):
        return {"regime": "interval", "lo": str(self.lo), "hi": None if self.hi is None else str(self.hi)}


@dataclass(frozen=True)
class ValOne:
    residue: FieldElement     # image of a_p / p

    def to_json(self, ctx=None):
        return {"regime": "val_one", "residue": ctx.elem_json(self.residue) if ctx else repr(self.residue)}


@dataclass(frozen=True)
class ValAbove:
    bound: Fraction
    open: bool = True

    def __post_init__(self):
        object.__setattr__(self, "bound", Fraction(self.bound))

    def to_json(self):
        return {"regime": "above", "bound": str(self.bound), "open": self.open}


@dataclass(frozen=True)
class K2p1:
    val_expr_ge: bool                      # val(a_p^2 + p) >= 3/2
    residue: FieldElement | None = None    # image of (a_p^2 + p) / (2 p a_p)

    def to_json(self, ctx=None):
        out = {"regime": "k2p1", "val_ap2p_ge": self.val_expr_ge}
        if self.residue is not None:
            out["residue"] = ctx.elem_json(self.residue) if ctx else repr(self.residue)
        return out


ApRegime = Union[ValOpenInterval, ValOne, ValAbove, K2p1]


def regime_json(ctx: PrimeContext, regime: ApRegime) -> dict:
    if isinstance(regime, (ValOne, K2p1)):
        return regime.to_json(ctx)
    return regime.to_json()


def _positive(regime: ApRegime) -> bool:
    if isinstance(regime, ValOpenInterval):
        return regime.lo >= 0
    if isinstance(regime, ValAbove):
        return regime.bound >= 0
    return isinstance(regime, ValOne)


def _red_from_roots(ctx: PrimeContext, b: int, c: FieldElement, e_hi: int, e_lo: int) -> Red:
    """mu_lam omega^{e_hi} + mu_{1/lam} omega^{e_lo} for a root lam of X^2 + bX + c."""
    roots = ctx.quadratic_roots(b, c).values()
    lam = roots[0]
    return Red(ModPCharQp(lam, e_hi), ModPCharQp(lam.inverse(), e_lo))


def _unit(ctx: PrimeContext, x, what: str) -> FieldElement:
    if x is None:
        raise RegimeError(f"missing residue for {what}")
    x = ctx.elem(x)
    if x.is_zero():
        raise RegimeError(f"residue for {what} must be a unit")
    return x


def blz_reduce(ctx: PrimeContext, k: int, regime: ApRegime) -> ModPGaloisRep:
    p = ctx.p
    if not 2 <= k <= 2 * p + 1:
        raise RegimeError(f"k = {k} outside [2, {2 * p + 1}]")
    if isinstance(regime, K2p1) and k != 2 * p + 1:
        raise RegimeError("the val(a_p^2 + p) regime applies only to k = 2p+1")
    if k <= p + 1:
        if not _positive(regime):
            raise RegimeError("needs val(a_p) > 0")
        return normal_form(Irred(p, k - 2, 0))
    if k == 2 * p + 1:
        return _reduce_2p1(ctx, regime)
    # p+2 <= k <= 2p: the three regimes 0 < val < 1, val = 1, val > 1
    if isinstance(regime, ValOpenInterval):
        if not regime.inside(0, 1):
            raise RegimeError(f"interval ({regime.lo}, {regime.hi}) straddles val(a_p) = 1")
        if k == p + 2:
            return normal_form(Irred(p, 1, 0))
        return normal_form(Irred(p, k - p - 1, 0))
    if isinstance(regime, ValAbove):
        if regime.bound < 1:
            raise RegimeError("val(a_p) > bound with bound < 1 straddles val(a_p) = 1")
        if k == p + 2:
            return _red_from_roots(ctx, 0, ctx.field.one, 1, 1)
        return normal_form(Irred(p, k - p - 3, 1))
    s = _unit(ctx, regime.residue, "a_p/p")
    if k == p + 2:
        return _red_from_roots(ctx, -s, ctx.field.one, 1, 1)
    lam = s * (k - 1)
    if lam.is_zero():  # pragma: no cover - k-1 is prime to p in this range
        raise RegimeError("(k-1) a_p/p vanishes")
    return Red(ModPCharQp(lam, k - 2), ModPCharQp(lam.inverse(), 1))


def _reduce_2p1(ctx: PrimeContext, regime: ApRegime) -> ModPGaloisRep:
    p = ctx.p
    half = Fraction(1, 2)
    if isinstance(regime, K2p1):
        if not regime.val_expr_ge:
            return normal_form(Irred(p, 1, 0))
        if regime.residue is None:
            raise RegimeError("missing residue (a_p^2+p)/(2p a_p)")
        t = ctx.elem(regime.residue)
        return _red_from_roots(ctx, t, ctx.field.one, 1, 1)
    # val(a_p) != 1/2 forces val(a_p^2 + p) = min(2 val, 1) < 3/2
    if isinstance(regime, ValOpenInterval):
        if regime.lo < half and (regime.hi is None or regime.hi > half):
            raise RegimeError("interval contains val(a_p) = 1/2; give val(a_p^2 + p) instead")
        if regime.lo < 0:
            raise RegimeError("needs val(a_p) > 0")
    elif isinstance(regime, ValAbove) and regime.bound < half:
        raise RegimeError("region contains val(a_p) = 1/2; give val(a_p^2 + p) instead")
    return normal_form(Irred(p, 1, 0))


# ---------------------------------------------------------------------------
# Predicted sets


@dataclass(frozen=True)
class PredictedSet:
    """Irreducibles plus reducible families {mu_lam w^e1 + mu_{1/lam} w^e2}.

    A family is the sorted exponent pair; membership of a Red needs the
    unramified parts to multiply to 1 (lam may lie in any finite extension).
    """

    k: int
    irreds: tuple[Irred, ...]
    families: tuple[tuple[int, int], ...]
    excluded: tuple[tuple[int, int], ...]

    def __contains__(self, rho: ModPGaloisRep) -> bool:
        rho = normal_form(rho)
        if isinstance(rho, Irred):
            return rho in self.irreds
        if rho.psi1.lam * rho.psi2.lam != 1:
            return False
        return tuple(sorted((rho.psi1.b, rho.psi2.b))) in self.families

    def members(self, ctx: PrimeContext) -> list[ModPGaloisRep]:
        out: list[ModPGaloisRep] = list(self.irreds)
        seen = set()
        for e1, e2 in self.families:
            for lam in ctx.field.units:
                rho = Red(ModPCharQp(lam, e1), ModPCharQp(lam.inverse(), e2))
                if rho not in seen:
                    seen.add(rho)
                    out.append(rho)
        return out


def predicted_set(ctx: PrimeContext, k: int, theta1: SmoothCharZp | None = None,
                  theta2: SmoothCharZp | None = None) -> PredictedSet:
    p = ctx.p
    theta1 = theta1 or SmoothCharZp(p)
    theta2 = theta2 or SmoothCharZp(p)
    t1, t2 = theta1.tame, theta2.tame
    rep = type_reduction(TypeDescriptor(theta1, theta2), k)
    bad = {tuple(sorted((t1 % (p - 1), (t2 + k - 1) % (p - 1)))),
           tuple(sorted((t2 % (p - 1), (t1 + k - 1) % (p - 1))))}
    irreds, fams, excl = set(), set(), set()
    for sigma in rep.guaranteed:
        r, a = sigma.r, sigma.a
        irreds.add(normal_form(Irred(p, r, a)))
        fam = tuple(sorted(((r + 1 + a) % (p - 1), a % (p - 1))))
        (excl if fam in bad else fams).add(fam)
    return PredictedSet(k, tuple(sorted(irreds, key=Irred.sort_key)), tuple(sorted(fams)),
                        tuple(sorted(excl - fams)))


def predicted_set_json(ctx: PrimeContext, ps: PredictedSet) -> dict:
    return {
        "k": ps.k,
        "irreducible": [{"type": "irred", "r": x.r, "a": x.a} for x in ps.irreds],
        "reducible_families": [{"exponents": list(f), "lambda": "any unit, paired with its inverse"}
                               for f in ps.families],
        "excluded_families": [list(f) for f in ps.excluded],
    }


# ---------------------------------------------------------------------------
# Residue-level solvers


def solve_twist_u(ctx: PrimeContext, xi, residue) -> FieldElement:
    """u with xi a root of X^2 + u s X + 1, where s is the residue of a_p/p."""
    xi, s = ctx.elem(xi), ctx.elem(residue)
    if xi.is_zero():
        raise ValueError("xi must be nonzero")
    if xi * xi == -1:
        raise ValueError("xi^2 = -1 is excluded")
    if s.is_zero():
        raise ValueError("residue of a_p/p must be nonzero")
    u = -(xi + xi.inverse()) / s
    assert (xi * xi + u * s * xi + 1).is_zero()
    return u.minimal()


@dataclass(frozen=True)
class ExerciseCertificate:
    """a_p = pi (w0 + pi w1 + ...) with pi^2 = -p.

    Then a_p^2 + p = p (1 - w0^2) - 2 p pi w0 w1 + O(p^2), so
    val(a_p^2 + p) >= 3/2 iff w0^2 = 1, and then the residue of
    (a_p^2 + p) / (2 p a_p) is t = -w1.
    """

    found: bool
    xi: FieldElement
    w0: FieldElement | None = None
    w1: FieldElement | None = None
    t: FieldElement | None = None
    val_ap: Fraction = Fraction(1, 2)
    val_ap2p: str | None = None
    notes: tuple[str, ...] = ()

    def to_json(self, ctx: PrimeContext) -> dict:
        e = ctx.elem_json
        out = {"found": self.found, "xi": e(self.xi)}
        if self.found:
            out.update({"w0": e(self.w0), "w1": e(self.w1), "t": e(self.t),
                        "pi_squared": "-p", "val_ap": str(self.val_ap), "val_ap2p": self.val_ap2p})
        out["notes"] = list(self.notes)
        return out


def solve_exercise(ctx: PrimeContext, xi) -> ExerciseCertificate:
    xi = ctx.elem(xi)
    if xi.is_zero():
        raise ValueError("xi must be nonzero")
    target = xi + xi.inverse()
    fld = ctx.field if xi.field == ctx.field else ctx.ext
    for w0 in fld.units:
        if w0 * w0 != 1:
            continue
        for w1 in fld.elements:
            t = -w1
            if target == -t:
                notes = []
                if w1.is_zero():
                    notes.append("t = 0: lambda is a square root of -1 and val(a_p^2 + p) >= 2")
                cert = ExerciseCertificate(True, xi, w0.minimal(), w1.minimal(), t.minimal(),
                                           Fraction(1, 2), ">=2" if w1.is_zero() else "3/2",
                                           tuple(notes))
                red = blz_reduce(ctx, 2 * ctx.p + 1, K2p1(True, cert.t))
                assert isinstance(red, Red) and xi in (red.psi1.lam, red.psi2.lam), red
                return cert
    return ExerciseCertificate(False, xi)


# ---------------------------------------------------------------------------
# Cross-validation


def example_regimes(ctx: PrimeContext, k: int) -> list[ApRegime]:
    p = ctx.p
    units = list(ctx.field.units)
    if k == 2 * p + 1:
        regs: list[ApRegime] = [ValOpenInterval(0, Fraction(1, 2)), ValOpenInterval(Fraction(1, 2), 1),
                                K2p1(False)]
        regs += [K2p1(True, t) for t in ctx.field.elements]
        regs += [ValOne(s) for s in units] + [ValAbove(1)]
        return regs
    return [ValOpenInterval(0, 1)] + [ValOne(s) for s in units] + [ValAbove(1)]


@dataclass
class ValidationReport:
    k: int
    cases: list[dict] = field(default_factory=list)
    membership: bool = True
    missing: list[ModPGaloisRep] = field(default_factory=list)
    outside: list[ModPGaloisRep] = field(default_factory=list)
    certificates: list[dict] = field(default_factory=list)

    @property
    def surjective(self) -> bool:
        return not self.missing


def validate_example(ctx: PrimeContext, k: int) -> ValidationReport:
    from .serial import galois_json
    p = ctx.p
    if not 2 <= k <= 2 * p + 1:
        raise RegimeError(f"k = {k} outside [2, {2 * p + 1}]")
    pred = predicted_set(ctx, k)
    rep = ValidationReport(k)
    attained = set()
    for regime in example_regimes(ctx, k):
        rho = normal_form(blz_reduce(ctx, k, regime))
        inside = rho in pred
        attained.add(rho)
        rep.cases.append({"regime": regime_json(ctx, regime), "reduction": galois_json(ctx, rho),
                          "in_predicted": inside})
        if not inside:
            rep.membership = False
            if rho not in rep.outside:
                rep.outside.append(rho)
    # explicit constructions for the reducible families
    for rho in pred.members(ctx):
        if not isinstance(rho, Red):
            continue
        lam = rho.psi1.lam if rho.psi1.b <= rho.psi2.b else rho.psi2.lam
        if k == p + 2:
            if lam * lam == -1:
                got = blz_reduce(ctx, k, ValAbove(1))
                rep.certificates.append({"lambda": ctx.elem_json(lam), "via": "val(a_p) > 1"})
            else:
                # the table's polynomial X^2 - s X + 1 at the twisted residue u s
                # has roots -xi^{+-1} for u built from xi, so build u from -lam
                s = ctx.field.one
                u = solve_twist_u(ctx, -lam, s)
                got = blz_reduce(ctx, k, ValOne(u * s))
                rep.certificates.append({"lambda": ctx.elem_json(lam), "via": "twist",
                                         "u": ctx.elem_json(u)})
            attained.add(normal_form(got))
        elif k == 2 * p + 1:
            cert = solve_exercise(ctx, lam)
            if cert.found:
                got = blz_reduce(ctx, k, K2p1(True, cert.t))
                attained.add(normal_form(got))
                rep.certificates.append({"lambda": ctx.elem_json(lam), "via": "exercise",
                                         "t": ctx.elem_json(cert.t)})
    rep.missing = [rho for rho in pred.members(ctx) if normal_form(rho) not in attained]
    return rep


def validation_json(ctx: PrimeContext, rep: ValidationReport) -> dict:
    from .serial import galois_json
    return {
        "k": rep.k,
        "cases": rep.cases,
        "membership": rep.membership,
        "outside_predicted": [galois_json(ctx, x) for x in rep.outside],
        "surjectivity": {"missing": [galois_json(ctx, x) for x in rep.missing]},
    }
