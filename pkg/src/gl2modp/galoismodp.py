"""Semisimple two-dimensional mod-p representations of the Galois group of Q_p.

``Irred(r, a)`` is (ind omega_2^{r+1}) (x) omega^a; ``Red`` is an unordered
direct sum of two characters mu_lam omega^b, viewed through class field theory.
Inertia is compared through omega_2-exponents mod p^2-1, with
omega = omega_2^{p+1}.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .smoothmodp import (ModPCharQp, SemisimpleSmoothPackage, ps_ss, supersingular)


@dataclass(frozen=True)
class Irred:
    p: int
    r: int
    a: int

    def __post_init__(self):
        if not 0 <= self.r <= self.p - 1:
            raise ValueError(f"r = {self.r} outside [0, {self.p - 1}]")
        object.__setattr__(self, "a", self.a % (self.p - 1))

    def sort_key(self):
        return (0, self.r, self.a)

    def __repr__(self):
        return f"Irred(r={self.r}, a={self.a})"


@dataclass(frozen=True, eq=False)
class Red:
    """psi1 + psi2, stored with psi1 <= psi2 under (b, lam) order."""

    psi1: ModPCharQp
    psi2: ModPCharQp

    def __post_init__(self):
        if self.psi2.key() < self.psi1.key():
            a, b = self.psi2, self.psi1
            object.__setattr__(self, "psi1", a)
            object.__setattr__(self, "psi2", b)

    @property
    def p(self) -> int:
        return self.psi1.p

    def __eq__(self, other):
        return isinstance(other, Red) and self.psi1 == other.psi1 and self.psi2 == other.psi2

    def __hash__(self):
        return hash((self.psi1, self.psi2))

    def sort_key(self):
        return (1, self.psi1.key(), self.psi2.key())

    def __repr__(self):
        return f"Red({self.psi1!r} + {self.psi2!r})"


ModPGaloisRep = Union[Irred, Red]


def normal_form(rho: ModPGaloisRep) -> ModPGaloisRep:
    """Irred(r, a) ~ Irred(p-1-r, a+r); keep the smaller (r, a)."""
    if isinstance(rho, Irred):
        p = rho.p
        other = Irred(p, p - 1 - rho.r, rho.a + rho.r)
        return min(rho, other, key=Irred.sort_key)
    return rho


@dataclass(frozen=True)
class InertiaData:
    kind: str                      # "irred" or "red"
    exponents: tuple[int, int]     # as stored: omega_2-orbit or omega-exponents
    omega2: tuple[int, int]        # sorted omega_2-exponents mod p^2-1
    det_exponent: int              # omega-exponent of det on inertia

    def to_json(self) -> dict:
        return {"kind": self.kind, "exponents": list(self.exponents),
                "omega2": list(self.omega2), "det_exponent": self.det_exponent}


def omega2_pair(p: int, b1: int, b2: int) -> tuple[int, int]:
    """omega_2-exponents of omega^{b1} + omega^{b2} on inertia."""
    n = p * p - 1
    return tuple(sorted(((p + 1) * b1 % n, (p + 1) * b2 % n)))


def inertia_data(rho: ModPGaloisRep) -> InertiaData:
    p = rho.p
    if isinstance(rho, Irred):
        n = p * p - 1
        s = (rho.r + 1 + rho.a * (p + 1)) % n
        orbit = (s, (p * s) % n)
        return InertiaData("irred", orbit, tuple(sorted(orbit)), (rho.r + 1 + 2 * rho.a) % (p - 1))
    b1, b2 = rho.psi1.b, rho.psi2.b
    return InertiaData("red", tuple(sorted((b1, b2))), omega2_pair(p, b1, b2), (b1 + b2) % (p - 1))


def det_unramified(rho: ModPGaloisRep):
    """Value at p (Frobenius) of det, for Red; Irred carries no unramified twist."""
    if isinstance(rho, Red):
        return rho.psi1.lam * rho.psi2.lam
    return None


def llc_smooth_side(rho: ModPGaloisRep, ctx=None) -> SemisimpleSmoothPackage:
    if isinstance(rho, Irred):
        if ctx is None:
            from .exactmath import default_context
            ctx = default_context(rho.p)
        return SemisimpleSmoothPackage([supersingular(rho.r, ModPCharQp(ctx.field.one, rho.a))])
    psi1, psi2 = rho.psi1, rho.psi2
    return ps_ss(psi1, psi2.omega_twist(-1)) + ps_ss(psi2, psi1.omega_twist(-1))


def twist_unramified(rho: ModPGaloisRep, c) -> ModPGaloisRep:
    """rho (x) mu_c.  Irreducibles are induced from the unramified quadratic
    extension and only absorb mu_{-1}; other twists are not representable."""
    if isinstance(rho, Red):
        return Red(rho.psi1.unramified_twist(c), rho.psi2.unramified_twist(c))
    if c == 1 or c == -1:
        return rho
    raise ValueError("unramified twists of irreducible representations are not modelled")
