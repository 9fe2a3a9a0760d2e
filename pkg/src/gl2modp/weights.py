"""Serre weights and semisimplifications.

A Serre weight is Sym^r (x) det^a with 0 <= r <= p-1 and 0 <= a < p-1.  The
normative engine for (Sym^n)^ss is the recursion
    Sym^n  ~  Sym^{n-p-1} det  +  Sym^r  +  Sym^{p-1-r} det^r      (n >= p+1)
with irreducible base cases n <= p-1 and Sym^p ~ Sym^1 + Sym^{p-2} det.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator

from .exactmath import PrimeContext


def _prime(ctx) -> int:
    return ctx.p if isinstance(ctx, PrimeContext) else int(ctx)


@dataclass(frozen=True, order=True)
class SerreWeight:
    p: int = field(compare=True)
    r: int = 0
    a: int = 0

    def __post_init__(self):
        if not 0 <= self.r <= self.p - 1:
            raise ValueError(f"r = {self.r} outside [0, {self.p - 1}]")
        if not 0 <= self.a < self.p - 1:
            raise ValueError(f"a = {self.a} outside [0, {self.p - 2}]")

    @classmethod
    def make(cls, p: int, r: int, a: int) -> "SerreWeight":
        return cls(p, r, a % (p - 1))

    @property
    def dim(self) -> int:
        return self.r + 1

    @property
    def central_exponent(self) -> int:
        return (self.r + 2 * self.a) % (self.p - 1)

    def twist(self, b: int) -> "SerreWeight":
        return SerreWeight.make(self.p, self.r, self.a + b)

    def to_json(self) -> dict:
        return {"r": self.r, "a": self.a}

    def __str__(self):
        return f"Sym^{self.r} det^{self.a}" if self.a else f"Sym^{self.r}"


class WeightMultiset:
    """Finite multiset of Serre weights for a fixed prime, ordered by (r, a)."""

    __slots__ = ("p", "_items")

    def __init__(self, p: int, counts: "dict[SerreWeight, int] | Iterable[SerreWeight] | None" = None):
        self.p = p
        c: Counter = Counter()
        if counts is None:
            pass
        elif isinstance(counts, dict):
            for w, m in counts.items():
                if m < 0:
                    raise ValueError("multiplicities must be nonnegative")
                c[w] += m
        else:
            c.update(counts)
        for w in c:
            if w.p != p:
                raise ValueError(f"weight for p={w.p} in a p={p} multiset")
        self._items = tuple(sorted(((w, m) for w, m in c.items() if m), key=lambda t: (t[0].r, t[0].a)))

    @classmethod
    def of(cls, p: int, *pairs: tuple[int, int]) -> "WeightMultiset":
        return cls(p, [SerreWeight.make(p, r, a) for r, a in pairs])

    def items(self) -> tuple[tuple[SerreWeight, int], ...]:
        return self._items

    def __iter__(self) -> Iterator[SerreWeight]:
        for w, m in self._items:
            for _ in range(m):
                yield w

    def __len__(self):
        return sum(m for _, m in self._items)

    def __contains__(self, w: SerreWeight) -> bool:
        return any(x == w for x, _ in self._items)

    def mult(self, w: SerreWeight) -> int:
        for x, m in self._items:
            if x == w:
                return m
        return 0

    def support(self) -> list[SerreWeight]:
        return [w for w, _ in self._items]

    @property
    def dimension(self) -> int:
        return sum(m * w.dim for w, m in self._items)

    def __add__(self, other: "WeightMultiset") -> "WeightMultiset":
        if other.p != self.p:
            raise ValueError("multisets for different primes")
        c = Counter(dict(self._items))
        c.update(dict(other._items))
        return WeightMultiset(self.p, dict(c))

    def scale(self, m: int) -> "WeightMultiset":
        return WeightMultiset(self.p, {w: k * m for w, k in self._items})

    def twist(self, b: int) -> "WeightMultiset":
        c: Counter = Counter()
        for w, m in self._items:
            c[w.twist(b)] += m
        return WeightMultiset(self.p, dict(c))

    def __eq__(self, other):
        return isinstance(other, WeightMultiset) and (self.p, self._items) == (other.p, other._items)

    def __hash__(self):
        return hash((self.p, self._items))

    def __repr__(self):
        body = ", ".join(f"{w}: {m}" for w, m in self._items)
        return f"WeightMultiset(p={self.p}, {{{body}}})"

    def to_json(self) -> list[dict]:
        return [{"r": w.r, "a": w.a, "mult": m} for w, m in self._items]


def multiset_sum(p: int, parts: Iterable[WeightMultiset]) -> WeightMultiset:
    c: Counter = Counter()
    for part in parts:
        c.update(dict(part.items()))
    return WeightMultiset(p, dict(c))


# ---------------------------------------------------------------------------
# Symmetric powers


@lru_cache(maxsize=None)
def _ss_sym(p: int, n: int) -> WeightMultiset:
    if n <= p - 1:
        return WeightMultiset.of(p, (n, 0))
    if n == p:
        return WeightMultiset.of(p, (1, 0), (p - 2, 1))
    r = n % (p - 1)
    return _ss_sym(p, n - p - 1).twist(1) + WeightMultiset.of(p, (r, 0), (p - 1 - r, r))


def ss_sym(ctx, n: int) -> WeightMultiset:
    """Jordan-Hölder multiset of Sym^n over GL_2(F_p)."""
    if n < 0:
        raise ValueError(f"n must be nonnegative, got {n}")
    return _ss_sym(_prime(ctx), n)


@dataclass(frozen=True)
class ClosedFormResult:
    n: int
    corrected: WeightMultiset
    literal: WeightMultiset
    deviation: bool
    branch: str          # "first" (leftover = p) or "second"
    leftover: int

    @property
    def dimension_deficit(self) -> int:
        return self.corrected.dimension - self.literal.dimension


def ss_sym_closed(ctx, n: int) -> ClosedFormResult:
    """Closed-form semisimplification of Sym^n for n >= p+1.

    With m maximal such that n >= (p+1)m and r_i the residue of n-(p+1)i mod
    p-1 in [0, p-1), the pairs Sym^{r_i} det^i + Sym^{p-1-r_i} det^{r_i+i}
    for i < m are always present.  The last term is the pair for i = m when
    the leftover n-(p+1)m equals p; otherwise it is a single weight, which
    the literal formula writes Sym^{r_m} det^m.  That reading is wrong when
    the leftover is p-1 (r_m = 0 but the leftover Sym^{p-1} is irreducible);
    ``corrected`` uses Sym^{leftover} det^m and ``literal`` the residue.
    """
    p = _prime(ctx)
    if n < p + 1:
        raise ValueError(f"closed forms need n >= p+1 = {p + 1}, got {n}")
    m = n // (p + 1)
    left = n - (p + 1) * m
    rs = [(n - (p + 1) * i) % (p - 1) for i in range(m + 1)]
    pairs = []
    for i in range(m):
        pairs += [(rs[i], i), (p - 1 - rs[i], rs[i] + i)]
    if left == p:
        pairs += [(rs[m], m), (p - 1 - rs[m], rs[m] + m)]
        res = WeightMultiset.of(p, *pairs)
        return ClosedFormResult(n, res, res, False, "first", left)
    literal = WeightMultiset.of(p, *pairs, (rs[m], m))
    corrected = WeightMultiset.of(p, *pairs, (left, m))
    return ClosedFormResult(n, corrected, literal, literal != corrected, "second", left)


def borel_ind_ss(ctx, x: int, y: int) -> WeightMultiset:
    """(Ind_B^G of (a b; 0 d) -> a^x d^y)^ss = Sym^r det^y + Sym^{p-1-r} det^x, r = x-y mod p-1."""
    p = _prime(ctx)
    r = (x - y) % (p - 1)
    return WeightMultiset.of(p, (r, y), (p - 1 - r, x))


def weights_with_central_char(ctx, exponent: int) -> list[SerreWeight]:
    p = _prime(ctx)
    e = exponent % (p - 1)
    return [SerreWeight(p, r, a) for r in range(p) for a in range(p - 1)
            if (r + 2 * a - e) % (p - 1) == 0]


def all_weights(ctx) -> list[SerreWeight]:
    p = _prime(ctx)
    return [SerreWeight(p, r, a) for r in range(p) for a in range(p - 1)]


# ---------------------------------------------------------------------------
# Characters of Z_p^x and types


@dataclass(frozen=True)
class SmoothCharZp:
    """Smooth character of Z_p^x = mu_{p-1} x (1+pZ_p).

    ``tame`` is the exponent t with reduction omega^t.  The wild part sends
    1+p to exp(2 pi i wild / p^level); it is stored at its exact level, so
    ``wild`` is a unit mod p^level unless both are zero.
    """

    p: int
    tame: int = 0
    wild: int = 0
    level: int = 0

    def __post_init__(self):
        p = self.p
        object.__setattr__(self, "tame", self.tame % (p - 1))
        w, lv = self.wild, self.level
        if lv < 0:
            raise ValueError("wild level must be nonnegative")
        w = w % p**lv if lv else 0
        while lv and w % p == 0:
            w //= p
            lv -= 1
        if lv == 0:
            w = 0
        object.__setattr__(self, "wild", w)
        object.__setattr__(self, "level", lv)

    def __mul__(self, other: "SmoothCharZp") -> "SmoothCharZp":
        lv = max(self.level, other.level)
        p = self.p
        w = self.wild * p ** (lv - self.level) + other.wild * p ** (lv - other.level)
        return SmoothCharZp(p, self.tame + other.tame, w, lv)

    def inverse(self) -> "SmoothCharZp":
        return SmoothCharZp(self.p, -self.tame, -self.wild, self.level)

    def ratio(self, other: "SmoothCharZp") -> "SmoothCharZp":
        return self * other.inverse()

    def is_trivial(self) -> bool:
        return self.tame == 0 and self.level == 0

    @property
    def conductor(self) -> int:
        if self.is_trivial():
            return 0
        return 1 + self.level

    def to_json(self) -> dict:
        return {"tame": self.tame, "wild": self.wild, "level": self.level}

    @classmethod
    def parse(cls, p: int, text: str) -> "SmoothCharZp":
        """Read "t", "t,w" (wild level 1) or "t,w,L"."""
        parts = [int(x) for x in str(text).split(",") if x.strip() != ""]
        if len(parts) == 1:
            return cls(p, parts[0])
        if len(parts) == 2:
            return cls(p, parts[0], parts[1], 1 if parts[1] % p else 0)
        if len(parts) == 3:
            return cls(p, parts[0], parts[1], parts[2])
        raise ValueError(f"cannot read a character of Z_p^x from {text!r}")


def trivial_char(p: int) -> SmoothCharZp:
    return SmoothCharZp(p)


def conductor(theta1: SmoothCharZp, theta2: SmoothCharZp) -> int:
    if theta1 == theta2:
        return 0
    return 1 + theta1.ratio(theta2).level


@dataclass(frozen=True)
class TypeDescriptor:
    theta1: SmoothCharZp
    theta2: SmoothCharZp

    def __post_init__(self):
        if self.theta1.p != self.theta2.p:
            raise ValueError("characters for different primes")

    @property
    def p(self) -> int:
        return self.theta1.p

    @property
    def c(self) -> int:
        return conductor(self.theta1, self.theta2)

    @property
    def dimension(self) -> int:
        c = self.c
        return 1 if c == 0 else (self.p + 1) * self.p ** (c - 1)

    def required_central_exponent(self, k: int) -> int:
        return (self.theta1.tame + self.theta2.tame + k - 2) % (self.p - 1)

    def to_json(self) -> dict:
        return {"theta1": self.theta1.to_json(), "theta2": self.theta2.to_json(),
                "c": self.c, "dimension": self.dimension}


@dataclass(frozen=True)
class ContainmentReport:
    """Reduction of a lattice in tau(theta1, theta2) (x) Sym^{k-2}.

    For c <= 1 ``multiset`` holds exact multiplicities.  For c >= 2 only the
    weights in ``guaranteed`` are certified and ``multiset`` is None.
    """

    guaranteed: tuple[SerreWeight, ...]
    total_dimension: int
    complete: bool
    multiset: WeightMultiset | None = None

    def __contains__(self, w: SerreWeight) -> bool:
        return w in self.guaranteed

    def to_json(self) -> dict:
        out = {"complete": self.complete, "total_dimension": self.total_dimension,
               "guaranteed": [w.to_json() for w in self.guaranteed]}
        if self.multiset is not None:
            out["weights"] = self.multiset.to_json()
        return out


def _c1_multiset(p: int, t1: int, t2: int, n: int) -> WeightMultiset:
    return multiset_sum(p, (borel_ind_ss(p, t1 + n - i, t2 + i) for i in range(n + 1)))


def type_reduction(tp: TypeDescriptor, k: int) -> ContainmentReport:
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    p, n, c = tp.p, k - 2, tp.c
    t1, t2 = tp.theta1.tame, tp.theta2.tame
    if c == 0:
        ms = ss_sym(p, n).twist(t1)
    elif c == 1:
        ms = _c1_multiset(p, t1, t2, n)
    else:
        chain = multiset_sum(p, (borel_ind_ss(p, t1 + n - i - j, t2 + i + j)
                                 for i in range(n + 1) for j in range(p)))
        return ContainmentReport(tuple(chain.support()), tp.dimension * (k - 1), False, None)
    return ContainmentReport(tuple(ms.support()), ms.dimension, True, ms)


def type_reduction_multiset(tp: TypeDescriptor, k: int) -> WeightMultiset:
    """Full Jordan-Hölder multiset, including conductor c >= 2.

    For c >= 2, Ind_{J_c}^I 1 is the permutation module on the lower
    unipotent quotient pZ_p/p^cZ_p, on which the torus acts through d/a.
    Zero is fixed, and the p^{c-1}-1 nonzero points fall into free orbits of
    size p-1; each free orbit contributes every character (d/a)^j once.
    Inducing to K is exact, so the multiset is a sum of Borel inductions.
    """
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    p, n, c = tp.p, k - 2, tp.c
    t1, t2 = tp.theta1.tame, tp.theta2.tame
    if c <= 1:
        rep = type_reduction(tp, k)
        return rep.multiset
    orbits = (p ** (c - 1) - 1) // (p - 1)
    base = _c1_multiset(p, t1, t2, n)
    free = multiset_sum(p, (borel_ind_ss(p, t1 + n - i - j, t2 + i + j)
                            for i in range(n + 1) for j in range(p - 1)))
    return base + free.scale(orbits)


@dataclass(frozen=True)
class PokemonReport:
    covered: bool
    missing: tuple[SerreWeight, ...]
    hypothesis_met: bool
    failed_hypotheses: tuple[str, ...]
    complete: bool

    def to_json(self) -> dict:
        return {"covered": self.covered, "missing": [w.to_json() for w in self.missing],
                "hypothesis_met": self.hypothesis_met,
                "failed_hypotheses": list(self.failed_hypotheses), "complete": self.complete}


def pokemon_hypotheses(tp: TypeDescriptor, k: int) -> tuple[str, ...]:
    """Names of the unmet hypotheses of the coverage lemma."""
    p, c = tp.p, tp.c
    failed = []
    if c == 0 and k < p * p + 1:
        failed.append("(a)")
    if c == 1 and k < p:
        failed.append("(b)")
    return tuple(failed)


def pokemon_check(tp: TypeDescriptor, k: int) -> PokemonReport:
    if k < 2:
        raise ValueError(f"k must be at least 2, got {k}")
    failed = pokemon_hypotheses(tp, k)
    rep = type_reduction(tp, k)
    present = set(rep.guaranteed)
    needed = weights_with_central_char(tp.p, tp.required_central_exponent(k))
    missing = tuple(w for w in needed if w not in present)
    return PokemonReport(not missing, missing, not failed, failed, rep.complete)


@dataclass(frozen=True)
class WeightLift:
    """Algebraic representation Sym^r (x) det^a of GL_2 over Q_p."""

    r_lift: int
    a_lift: int

    def reduction(self, p: int) -> WeightMultiset:
        return ss_sym(p, self.r_lift).twist(self.a_lift)

    def to_json(self) -> dict:
        return {"r_lift": self.r_lift, "a_lift": self.a_lift}


def weight_lift(sigma: SerreWeight) -> WeightLift:
    lift = WeightLift(sigma.r, sigma.a)
    red = lift.reduction(sigma.p)
    assert red == WeightMultiset(sigma.p, [sigma]), red
    return lift
