"""Brauer characters of GL_2(F_p) on p-regular classes.

A p-regular element of GL_2(F_p) is semisimple, so its class is fixed by its
eigenvalues: a scalar lambda (central), an unordered pair lambda != mu in
F_p^x (split), or a Frobenius orbit {z, z^p} with z in F_{p^2} \\ F_p
(nonsplit).  Values live in Z[C_{p^2-1}] through Teichmüller indexing.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable

from .exactmath import ContextMismatch, CycloElement, PrimeContext, default_context

ClassKey = tuple


@lru_cache(maxsize=None)
def class_data(ctx: PrimeContext) -> tuple[tuple[ClassKey, tuple[int, ...]], ...]:
    """Classes with the gen2-indices of their eigenvalues.

    Central and split classes are keyed by their F_p eigenvalues as integers;
    a nonsplit class is keyed by the smaller gen2-index of z and z^p.
    """
    p, N = ctx.p, ctx.N
    idx = {lam: ctx.dlog(lam) for lam in range(1, p)}
    out = []
    for lam in range(1, p):
        out.append((("central", lam), (idx[lam],)))
    for lam in range(1, p):
        for mu in range(lam + 1, p):
            out.append((("split", lam, mu), (idx[lam], idx[mu])))
    for i in range(N):
        if i % (p + 1) == 0:
            continue
        j = (p * i) % N
        if i < j:
            out.append((("nonsplit", i), (i,)))
    return tuple(out)


def class_count(p: int) -> int:
    return (p - 1) + (p - 1) * (p - 2) // 2 + (p * p - p) // 2


@dataclass(frozen=True)
class ClassFunction:
    """A Z[C_N]-valued function on the p-regular classes of GL_2(F_p)."""

    ctx: PrimeContext
    values: tuple[CycloElement, ...]

    @classmethod
    def from_fn(cls, ctx: PrimeContext, fn) -> "ClassFunction":
        return cls(ctx, tuple(fn(key, eig) for key, eig in class_data(ctx)))

    @classmethod
    def zero(cls, ctx: PrimeContext) -> "ClassFunction":
        z = CycloElement.zero(ctx.N)
        return cls(ctx, (z,) * len(class_data(ctx)))

    def _check(self, other: "ClassFunction"):
        if self.ctx != other.ctx:
            raise ContextMismatch("class functions over different prime contexts")

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        self._check(other)
        return ClassFunction(self.ctx, tuple(a + b for a, b in zip(self.values, other.values)))

    def __sub__(self, other: "ClassFunction") -> "ClassFunction":
        self._check(other)
        return ClassFunction(self.ctx, tuple(a - b for a, b in zip(self.values, other.values)))

    def __mul__(self, m: int) -> "ClassFunction":
        return ClassFunction(self.ctx, tuple(v * m for v in self.values))

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return self.ctx == other.ctx and self.values == other.values

    def __hash__(self):
        return hash((self.ctx, self.values))

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.values)

    def keys(self) -> list[ClassKey]:
        return [k for k, _ in class_data(self.ctx)]

    def __getitem__(self, key: ClassKey) -> CycloElement:
        key = self._normalise_key(key)
        for (k, _), v in zip(class_data(self.ctx), self.values):
            if k == key:
                return v
        raise KeyError(key)

    def _normalise_key(self, key: ClassKey) -> ClassKey:
        kind = key[0]
        p = self.ctx.p
        if kind == "central":
            return ("central", key[1] % p)
        if kind == "split":
            lam, mu = sorted((key[1] % p, key[2] % p))
            return ("split", lam, mu)
        if kind == "nonsplit":
            i = key[1] % self.ctx.N
            return ("nonsplit", min(i, (p * i) % self.ctx.N))
        raise KeyError(key)

    def twist(self, a: int) -> "ClassFunction":
        return twist(self, a)

    def identity_value(self) -> CycloElement:
        return self[("central", 1)]

    def to_json(self) -> dict:
        out = {"p": self.ctx.p, "classes": []}
        for (key, _), v in zip(class_data(self.ctx), self.values):
            out["classes"].append({
                "class": key[0],
                "rep": list(key[1:]),
                "value": {str(i): c for i, c in enumerate(v.coeffs) if c},
            })
        return out


def _det_index(key: ClassKey, eig: tuple[int, ...], p: int) -> int:
    if key[0] == "central":
        return 2 * eig[0]
    if key[0] == "split":
        return eig[0] + eig[1]
    return (p + 1) * eig[0]


def chi_sym(ctx: PrimeContext, n: int) -> ClassFunction:
    """Brauer character of Sym^n."""
    if n < 0:
        raise ValueError(f"symmetric power degree must be nonnegative, got {n}")
    N, p = ctx.N, ctx.p

    def value(key, eig):
        if key[0] == "central":
            return CycloElement.basis(N, n * eig[0], n + 1)
        if key[0] == "split":
            lam, mu = eig
            return CycloElement.from_exponents(N, (t * lam + (n - t) * mu for t in range(n + 1)))
        z = eig[0]
        return CycloElement.from_exponents(N, ((n + (p - 1) * t) * z for t in range(n + 1)))

    return ClassFunction.from_fn(ctx, value)


def twist(cf: ClassFunction, a: int) -> ClassFunction:
    """Multiply by det^a; the exponent only matters mod p-1."""
    ctx = cf.ctx
    a %= ctx.p - 1
    if a == 0:
        return cf
    vals = tuple(v.shift(a * _det_index(key, eig, ctx.p))
                 for (key, eig), v in zip(class_data(ctx), cf.values))
    return ClassFunction(ctx, vals)


def twist_and_add(cf: ClassFunction, a: int, other: ClassFunction | None = None) -> ClassFunction:
    out = twist(cf, a)
    return out if other is None else out + other


def of_weight_multiset(ws, ctx: PrimeContext | None = None) -> ClassFunction:
    """Sum of mult * Brauer character over a weight multiset."""
    ctx = ctx if ctx is not None else default_context(ws.p)
    total = ClassFunction.zero(ctx)
    for w, m in ws.items():
        if w.p != ctx.p:
            raise ContextMismatch(f"weight for p={w.p} in a p={ctx.p} sum")
        total = total + twist(chi_sym(ctx, w.r), w.a) * m
    return total


def borel_induced_char(ctx: PrimeContext, x: int, y: int) -> ClassFunction:
    """Brauer character of Ind_B^G of the Borel character (a b; 0 d) -> a^x d^y."""
    N, p = ctx.N, ctx.p
    x %= p - 1
    y %= p - 1

    def value(key, eig):
        if key[0] == "central":
            return CycloElement.basis(N, (x + y) * eig[0], p + 1)
        if key[0] == "split":
            lam, mu = eig
            return CycloElement.from_exponents(N, (x * lam + y * mu, y * lam + x * mu))
        return CycloElement.zero(N)

    return ClassFunction.from_fn(ctx, value)


def sum_class_functions(ctx: PrimeContext, cfs: Iterable[ClassFunction]) -> ClassFunction:
    total = ClassFunction.zero(ctx)
    for cf in cfs:
        total = total + cf
    return total
