"""Smooth irreducible mod-p representations of GL_2(Q_p).

Isomorphism classes only: a one-dimensional chi o det, a twisted Steinberg
Sp (x) chi o det, an irreducible principal series Ind_B^G(chi1 (x) chi2) with
chi1 != chi2, or a supersingular kappa(r, eta).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Union

from .exactmath import FieldElement, PrimeContext
from .weights import SerreWeight


class HypothesisRejected(Exception):
    """A theorem's hypotheses fail; ``failed`` names every failing condition."""

    def __init__(self, failed: Iterable[str], details: dict | None = None):
        self.failed = list(failed)
        self.details = details or {}
        super().__init__(", ".join(self.failed))

    def to_json(self) -> dict:
        return {"failed": self.failed, "details": self.details}


class NormalizationError(ValueError):
    """p does not act trivially on a representation passed to a socle test."""


@dataclass(frozen=True, eq=False)
class ModPCharQp:
    """The character mu_lam * omega^b of Q_p^x, with omega(p) = 1."""

    lam: FieldElement
    b: int

    def __post_init__(self):
        if self.lam.is_zero():
            raise ValueError("the unramified parameter must be nonzero")
        object.__setattr__(self, "lam", self.lam.minimal())
        object.__setattr__(self, "b", self.b % (self.p - 1))

    @property
    def p(self) -> int:
        return self.lam.field.p

    @classmethod
    def make(cls, ctx: PrimeContext, lam, b: int = 0) -> "ModPCharQp":
        return cls(ctx.elem(lam), b)

    def key(self) -> tuple:
        return (self.b, self.lam.sort_key())

    def __eq__(self, other):
        return isinstance(other, ModPCharQp) and self.b == other.b and self.lam == other.lam

    def __hash__(self):
        return hash((self.b, self.lam))

    def __mul__(self, other: "ModPCharQp") -> "ModPCharQp":
        return ModPCharQp(self.lam * other.lam, self.b + other.b)

    def inverse(self) -> "ModPCharQp":
        return ModPCharQp(self.lam.inverse(), -self.b)

    def omega_twist(self, e: int) -> "ModPCharQp":
        return ModPCharQp(self.lam, self.b + e)

    def unramified_twist(self, c: FieldElement) -> "ModPCharQp":
        return ModPCharQp(self.lam * c, self.b)

    def square(self) -> "ModPCharQp":
        return self * self

    def __repr__(self):
        return f"mu_{self.lam!r} w^{self.b}"


def trivial_modp_char(ctx: PrimeContext) -> ModPCharQp:
    return ModPCharQp(ctx.field.one, 0)


# ---------------------------------------------------------------------------
# The four classes


@dataclass(frozen=True)
class OneDim:
    chi: ModPCharQp
    cls_name = "onedim"

    def central_character(self) -> ModPCharQp:
        return self.chi.square()

    def sort_key(self):
        return (0, self.chi.key())


@dataclass(frozen=True)
class Steinberg:
    chi: ModPCharQp
    cls_name = "steinberg"

    def central_character(self) -> ModPCharQp:
        return self.chi.square()

    def sort_key(self):
        return (1, self.chi.key())


@dataclass(frozen=True)
class PrincipalSeries:
    chi1: ModPCharQp
    chi2: ModPCharQp
    cls_name = "ps"

    def __post_init__(self):
        if self.chi1 == self.chi2:
            raise ValueError("an irreducible principal series needs chi1 != chi2")

    def central_character(self) -> ModPCharQp:
        return self.chi1 * self.chi2

    def sort_key(self):
        return (2, self.chi1.key(), self.chi2.key())


@dataclass(frozen=True)
class Supersingular:
    """kappa(r, eta); always store through :func:`supersingular`."""

    r: int
    eta: ModPCharQp
    cls_name = "supersingular"

    def __post_init__(self):
        p = self.eta.p
        if not 0 <= self.r <= p - 1:
            raise ValueError(f"r = {self.r} outside [0, {p - 1}]")

    def central_character(self) -> ModPCharQp:
        return self.eta.square().omega_twist(self.r)

    def sort_key(self):
        return (3, self.r, self.eta.lam.sort_key(), self.eta.b)


SmoothIrrep = Union[OneDim, Steinberg, PrincipalSeries, Supersingular]


def supersingular_orbit(r: int, eta: ModPCharQp) -> list[Supersingular]:
    """The four presentations related by the intertwining isomorphisms."""
    p = eta.p
    neg = eta.unramified_twist(-eta.lam.field.one)
    return [
        Supersingular(r, eta),
        Supersingular(r, neg),
        Supersingular(p - 1 - r, eta.omega_twist(r)),
        Supersingular(p - 1 - r, neg.omega_twist(r)),
    ]


def canonical_form(kappa: SmoothIrrep) -> SmoothIrrep:
    if isinstance(kappa, Supersingular):
        return min(supersingular_orbit(kappa.r, kappa.eta), key=Supersingular.sort_key)
    return kappa


def supersingular(r: int, eta: ModPCharQp) -> Supersingular:
    return canonical_form(Supersingular(r, eta))


def is_supersingular(kappa: SmoothIrrep) -> bool:
    return isinstance(kappa, Supersingular)


# ---------------------------------------------------------------------------
# Semisimple packages


class SemisimpleSmoothPackage:
    """Multiset of canonical smooth irreducibles."""

    __slots__ = ("_items",)

    def __init__(self, members: Iterable[SmoothIrrep] = ()):
        c = Counter(canonical_form(m) for m in members)
        self._items = tuple(sorted(c.items(), key=lambda t: t[0].sort_key()))

    def items(self):
        return self._items

    def members(self) -> list[SmoothIrrep]:
        out = []
        for m, k in self._items:
            out.extend([m] * k)
        return out

    def __add__(self, other: "SemisimpleSmoothPackage") -> "SemisimpleSmoothPackage":
        return SemisimpleSmoothPackage(self.members() + other.members())

    def __contains__(self, kappa) -> bool:
        kappa = canonical_form(kappa)
        return any(m == kappa for m, _ in self._items)

    def __eq__(self, other):
        return isinstance(other, SemisimpleSmoothPackage) and self._items == other._items

    def __hash__(self):
        return hash(self._items)

    def __len__(self):
        return sum(k for _, k in self._items)

    def __repr__(self):
        return f"SemisimpleSmoothPackage({self._items!r})"


def ps_ss(psi1: ModPCharQp, psi2: ModPCharQp) -> SemisimpleSmoothPackage:
    """(Ind_B^G psi1 (x) psi2)^ss."""
    if psi1 == psi2:
        return SemisimpleSmoothPackage([OneDim(psi1), Steinberg(psi1)])
    return SemisimpleSmoothPackage([PrincipalSeries(psi1, psi2)])


# ---------------------------------------------------------------------------
# Socles


def _is_pm_one(x: FieldElement) -> bool:
    return x == 1 or x == -1


def has_socle(sigma: SerreWeight, kappa: SmoothIrrep) -> bool:
    """Whether Hom_K(sigma, kappa) is nonzero, for kappa with p acting trivially."""
    z = kappa.central_character()
    if z.lam != 1:
        raise NormalizationError(f"p acts on {kappa} by {z.lam!r}, not trivially")
    if sigma.p != z.p:
        raise ValueError("weight and representation for different primes")
    p, r, a = sigma.p, sigma.r, sigma.a
    if isinstance(kappa, Supersingular):
        one = kappa.eta.lam.field.one
        return canonical_form(kappa) == supersingular(r, ModPCharQp(one, a))
    if isinstance(kappa, PrincipalSeries):
        c1, c2 = kappa.chi1, kappa.chi2
        if (c1.lam * c2.lam) != 1 or c1.b != a % (p - 1):
            return False
        if 0 < r < p - 1:
            return c2.b == (a + r) % (p - 1)
        # r = 0 or p-1: the shape forces lam != +-1 since chi1 != chi2
        return c2.b == a % (p - 1)
    chi = kappa.chi
    ok = chi.b == a % (p - 1) and _is_pm_one(chi.lam)
    if isinstance(kappa, OneDim):
        return ok and r == 0
    return ok and r == p - 1


def addsoc_constraint(sigma: SerreWeight) -> tuple[int, int]:
    """Forced inertia exponents of a principal series with a subquotient of K-socle sigma."""
    p = sigma.p
    return (sigma.a % (p - 1), (sigma.a + sigma.r) % (p - 1))


def is_ps_subquotient(kappa: SmoothIrrep, e1: int, e2: int) -> bool:
    """Is kappa a subquotient of some Ind_B^G(psi1 (x) psi2) with psi_i|Z_p^x = omega^{e_i}?"""
    if isinstance(kappa, Supersingular):
        return False
    p = kappa.central_character().p
    e1, e2 = e1 % (p - 1), e2 % (p - 1)
    if isinstance(kappa, PrincipalSeries):
        return (kappa.chi1.b, kappa.chi2.b) == (e1, e2)
    return kappa.chi.b == e1 == e2


@dataclass(frozen=True)
class Branch:
    """Target of a lift: ``"a"`` (irreducible) or ``"b"`` with parameter lam."""

    kind: str
    lam: FieldElement | None = None

    def __post_init__(self):
        if self.kind not in ("a", "b"):
            raise ValueError(f"branch must be 'a' or 'b', got {self.kind!r}")
        if self.kind == "b" and (self.lam is None or self.lam.is_zero()):
            raise ValueError("branch (b) needs a nonzero lambda")
        if self.kind == "a" and self.lam is not None:
            raise ValueError("branch (a) takes no lambda")


def kappa_for(ctx: PrimeContext, sigma: SerreWeight, branch: Branch) -> SmoothIrrep:
    """The smooth irreducible used to realise a target with socle sigma."""
    p, r, a = sigma.p, sigma.r, sigma.a
    if p != ctx.p:
        raise ValueError("weight and context for different primes")
    one = ctx.field.one
    if branch.kind == "a":
        kappa = supersingular(r, ModPCharQp(one, a))
    else:
        lam = branch.lam
        if r == 0 and _is_pm_one(lam):
            kappa = OneDim(ModPCharQp(lam, a))
        elif r == p - 1 and _is_pm_one(lam):
            kappa = Steinberg(ModPCharQp(lam, a))
        else:
            kappa = PrincipalSeries(ModPCharQp(lam.inverse(), a), ModPCharQp(lam, a + r))
    assert has_socle(sigma, kappa), (sigma, kappa)
    return kappa
