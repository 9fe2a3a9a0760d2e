"""Exact arithmetic substrate.

Finite fields F_{p^d} given by an explicit monic modulus, the integral group
ring Z[C_N] (N = p^2 - 1) that carries Teichmüller lifts, and the discrete-log
indexing that turns a nonzero element of F_{p^2} into a basis element of that
ring.  Valuations are plain :class:`fractions.Fraction` values.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Iterable, Sequence

import sympy

Rational = Fraction


class ContextMismatch(ValueError):
    """Operands belong to incompatible fields or prime contexts."""


class FieldDivisionByZero(ZeroDivisionError):
    """Inversion of the zero element of a finite field."""


class InvalidContext(ValueError):
    """A prime context failed validation (non-prime p, reducible modulus, ...)."""


def parse_rational(text: str | int | Fraction) -> Fraction:
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    return Fraction(str(text).strip())


def is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Irreducibility over F_p of a polynomial given low-to-high."""
    if len(modulus) < 2 or modulus[-1] % p == 0:
        return False
    if len(modulus) == 2:
        return True
    x = sympy.Symbol("x")
    return sympy.Poly(list(reversed([c % p for c in modulus])), x, modulus=p).is_irreducible


@lru_cache(maxsize=None)
def default_modulus(p: int, d: int) -> tuple[int, ...]:
    """Smallest monic irreducible of degree d, ordering by sum c_i p^i."""
    if d == 1:
        return (0, 1)
    for low in itertools.product(range(p), repeat=d):
        # product() varies the last entry fastest, so read it as c_0
        coeffs = tuple(low[::-1]) + (1,)
        if is_irreducible(coeffs, p):
            return coeffs
    raise InvalidContext(f"no irreducible polynomial of degree {d} over F_{p}")


class FiniteField:
    """F_{p^d} = F_p[X]/(modulus).

    ``base`` optionally names a subfield together with the image of its
    generator, so that elements of the subfield coerce into this field.
    """

    def __init__(self, p: int, modulus: Sequence[int], base: "FiniteField | None" = None):
        self.p = p
        self.modulus = tuple(int(c) % p for c in modulus)
        self.degree = len(self.modulus) - 1
        self.order = p**self.degree
        self.base = base
        if self.degree < 1 or self.modulus[-1] != 1:
            raise InvalidContext(f"modulus {list(modulus)} is not monic of positive degree")
        if not is_irreducible(self.modulus, p):
            raise InvalidContext(f"modulus {list(modulus)} is reducible over F_{p}")

    def __repr__(self):
        return f"GF({self.p}^{self.degree})"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.modulus) == (other.p, other.modulus)

    def __hash__(self):
        return hash((self.p, self.modulus))

    # construction -----------------------------------------------------

    def __call__(self, value: "int | Sequence[int] | FieldElement") -> "FieldElement":
        if isinstance(value, FieldElement):
            return self.coerce(value)
        if isinstance(value, int):
            return FieldElement(self, (value % self.p,) + (0,) * (self.degree - 1))
        coeffs = [int(c) % self.p for c in value]
        if len(coeffs) > self.degree:
            raise ValueError(f"{len(coeffs)} coefficients given for a degree-{self.degree} field")
        return FieldElement(self, tuple(coeffs) + (0,) * (self.degree - len(coeffs)))

    @property
    def zero(self) -> "FieldElement":
        return self(0)

    @property
    def one(self) -> "FieldElement":
        return self(1)

    def from_key(self, key: int) -> "FieldElement":
        coeffs = []
        for _ in range(self.degree):
            key, c = divmod(key, self.p)
            coeffs.append(c)
        return FieldElement(self, tuple(coeffs))

    @cached_property
    def elements(self) -> tuple["FieldElement", ...]:
        return tuple(self.from_key(i) for i in range(self.order))

    @cached_property
    def units(self) -> tuple["FieldElement", ...]:
        return self.elements[1:]

    @cached_property
    def _group_order_primes(self) -> tuple[int, ...]:
        return tuple(sympy.factorint(self.order - 1))

    def is_generator(self, x: "FieldElement") -> bool:
        if x.is_zero():
            return False
        n = self.order - 1
        return all(x ** (n // q) != self.one for q in self._group_order_primes)

    @cached_property
    def smallest_generator(self) -> "FieldElement":
        return next(x for x in self.units if self.is_generator(x))

    # subfield embedding -------------------------------------------------

    @cached_property
    def _embedding(self) -> tuple[dict, dict]:
        if self.base is None:
            return {}, {}
        base = self.base
        root = None
        for x in self.elements:
            acc = self.zero
            for c in reversed(base.modulus):
                acc = acc * x + self(c)
            if acc.is_zero():
                root = x
                break
        if root is None:  # pragma: no cover - base degree always divides ours
            raise InvalidContext(f"{base} does not embed into {self}")
        fwd, back = {}, {}
        powers = [self.one]
        for _ in range(base.degree - 1):
            powers.append(powers[-1] * root)
        for y in base.elements:
            img = self.zero
            for c, pw in zip(y.coeffs, powers):
                if c:
                    img = img + pw * c
            fwd[y.coeffs] = img.coeffs
            back[img.coeffs] = y.coeffs
        return fwd, back

    def embed(self, y: "FieldElement") -> "FieldElement":
        if y.field == self:
            return y
        if self.base is not None and y.field == self.base:
            return FieldElement(self, self._embedding[0][y.coeffs])
        if y.field.p == self.p and y.in_prime_field():
            return self(y.coeffs[0])
        raise ContextMismatch(f"cannot map an element of {y.field} into {self}")

    def coerce(self, y: "FieldElement") -> "FieldElement":
        return self.embed(y)

    def restrict(self, x: "FieldElement") -> "FieldElement | None":
        """Preimage of x in ``base``, or None when x lies outside it."""
        if self.base is None:
            return None
        back = self._embedding[1].get(x.coeffs)
        return None if back is None else FieldElement(self.base, back)


def _common_field(a: "FieldElement", b: "FieldElement") -> FiniteField:
    fa, fb = a.field, b.field
    if fa == fb:
        return fa
    if fb.base is not None and fb.base == fa:
        return fb
    if fa.base is not None and fa.base == fb:
        return fa
    if fa.p == fb.p:
        if b.in_prime_field():
            return fa
        if a.in_prime_field():
            return fb
    raise ContextMismatch(f"{fa} and {fb} are not compatible")


class FieldElement:
    """Element of a :class:`FiniteField` as a reduced coefficient vector."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: FiniteField, coeffs: tuple[int, ...]):
        self.field = field
        self.coeffs = coeffs

    # comparisons ----------------------------------------------------------

    def key(self) -> int:
        """Integer encoding sum c_i p^i; the fixed total order on a field."""
        k = 0
        for c in reversed(self.coeffs):
            k = k * self.field.p + c
        return k

    def sort_key(self) -> tuple[int, int]:
        return (self.field.degree, self.key())

    def __eq__(self, other):
        if isinstance(other, int):
            return self.in_prime_field() and self.coeffs[0] == other % self.field.p
        if not isinstance(other, FieldElement):
            return NotImplemented
        if self.field == other.field:
            return self.coeffs == other.coeffs
        try:
            f = _common_field(self, other)
        except ContextMismatch:
            return False
        return f(self).coeffs == f(other).coeffs

    def __hash__(self):
        m = self.minimal()
        return hash((m.field.p, m.field.modulus, m.coeffs))

    def __repr__(self):
        if self.in_prime_field():
            return f"{self.coeffs[0]}"
        return f"{self.field}{list(self.coeffs)}"

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def in_prime_field(self) -> bool:
        return not any(self.coeffs[1:])

    def minimal(self) -> "FieldElement":
        """The same element, expressed in the smallest field of its tower."""
        x = self
        while x.field.base is not None:
            y = x.field.restrict(x)
            if y is None:
                break
            x = y
        return x

    # arithmetic -----------------------------------------------------------

    def _pair(self, other):
        if isinstance(other, int):
            other = self.field(other)
        if not isinstance(other, FieldElement):
            return None
        if other.field is self.field or other.field == self.field:
            return self.field, self.coeffs, other.coeffs
        f = _common_field(self, other)
        return f, f(self).coeffs, f(other).coeffs

    def __add__(self, other):
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        f, a, b = pr
        p = f.p
        return FieldElement(f, tuple((x + y) % p for x, y in zip(a, b)))

    __radd__ = __add__

    def __neg__(self):
        p = self.field.p
        return FieldElement(self.field, tuple((-c) % p for c in self.coeffs))

    def __sub__(self, other):
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        f, a, b = pr
        p = f.p
        return FieldElement(f, tuple((x - y) % p for x, y in zip(a, b)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        f, a, b = pr
        return FieldElement(f, _polymulmod(a, b, f.modulus, f.p))

    __rmul__ = __mul__

    def inverse(self) -> "FieldElement":
        if self.is_zero():
            raise FieldDivisionByZero(f"inverse of zero in {self.field}")
        return self ** (self.field.order - 2)

    def __truediv__(self, other):
        pr = self._pair(other)
        if pr is None:
            return NotImplemented
        f, a, b = pr
        return FieldElement(f, a) * FieldElement(f, b).inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def frobenius(self, times: int = 1) -> "FieldElement":
        return self ** (self.field.p**times)


def _polymulmod(a, b, modulus, p):
    d = len(modulus) - 1
    prod = [0] * (2 * d - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    prod[i + j] += x * y
    for i in range(len(prod) - 1, d - 1, -1):
        c = prod[i] % p
        if c:
            for j in range(d):
                prod[i - d + j] -= c * modulus[j]
        prod[i] = 0
    return tuple(c % p for c in prod[:d])


def field_arith(ctx: "PrimeContext", op: str, *operands):
    """Tagged dispatch over the field operations of ``ctx.field``."""
    xs = [ctx.field(x) if isinstance(x, int) else x for x in operands[: 1 if op in ("inv", "pow") else 2]]
    for x in xs:
        if x.field != ctx.field and not (ctx.ext_built and x.field == ctx.ext):
            raise ContextMismatch(f"operand from {x.field} used with context over {ctx.field}")
    if op == "add":
        return xs[0] + xs[1]
    if op == "sub":
        return xs[0] - xs[1]
    if op == "mul":
        return xs[0] * xs[1]
    if op == "inv":
        return xs[0].inverse()
    if op == "pow":
        return xs[0] ** int(operands[1])
    raise ValueError(f"unknown field operation {op!r}")


# ---------------------------------------------------------------------------
# Group ring Z[C_N]


@lru_cache(maxsize=None)
def cyclotomic_coeffs(n: int) -> tuple[int, ...]:
    x = sympy.Symbol("x")
    poly = sympy.Poly(sympy.cyclotomic_poly(n, x), x)
    return tuple(int(c) for c in reversed(poly.all_coeffs()))


@dataclass(frozen=True, eq=False)
class CycloElement:
    """Element sum c_i e_i of Z[C_N].

    Arithmetic is done in the group ring.  Equality is tested after mapping
    e_i to zeta_N^i, i.e. in Z[zeta_N]: the Brauer identities we check hold
    for complex values but not for formal group-ring vectors (a full sum of
    nontrivial roots of unity is zero only after this map).
    """

    n: int
    coeffs: tuple[int, ...]

    @classmethod
    def zero(cls, n: int) -> "CycloElement":
        return cls(n, (0,) * n)

    @classmethod
    def basis(cls, n: int, i: int, mult: int = 1) -> "CycloElement":
        v = [0] * n
        v[i % n] = mult
        return cls(n, tuple(v))

    @classmethod
    def from_exponents(cls, n: int, exponents: Iterable[int], mult: int = 1) -> "CycloElement":
        v = [0] * n
        for e in exponents:
            v[e % n] += mult
        return cls(n, tuple(v))

    def _check(self, other: "CycloElement"):
        if self.n != other.n:
            raise ContextMismatch(f"Z[C_{self.n}] and Z[C_{other.n}] elements combined")

    def __add__(self, other):
        self._check(other)
        return CycloElement(self.n, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other):
        self._check(other)
        return CycloElement(self.n, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self):
        return CycloElement(self.n, tuple(-a for a in self.coeffs))

    def __mul__(self, other):
        if isinstance(other, int):
            return CycloElement(self.n, tuple(a * other for a in self.coeffs))
        self._check(other)
        n = self.n
        out = [0] * n
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[(i + j) % n] += a * b
        return CycloElement(n, tuple(out))

    __rmul__ = __mul__

    def shift(self, i: int) -> "CycloElement":
        """Multiply by e_i."""
        n = self.n
        i %= n
        return CycloElement(n, self.coeffs[-i:] + self.coeffs[:-i] if i else self.coeffs)

    @cached_property
    def reduced(self) -> tuple[int, ...]:
        """Coordinates in the power basis of Z[zeta_N]."""
        phi = cyclotomic_coeffs(self.n)
        deg = len(phi) - 1
        a = list(self.coeffs)
        for i in range(self.n - 1, deg - 1, -1):
            c = a[i]
            if c:
                for j in range(deg + 1):
                    a[i - deg + j] -= c * phi[j]
        return tuple(a[:deg])

    def is_zero(self) -> bool:
        return not any(self.reduced)

    def group_ring_equal(self, other: "CycloElement") -> bool:
        return self.n == other.n and self.coeffs == other.coeffs

    def __eq__(self, other):
        if not isinstance(other, CycloElement):
            return NotImplemented
        return self.n == other.n and self.reduced == other.reduced

    def __hash__(self):
        return hash((self.n, self.reduced))

    def __repr__(self):
        terms = [f"{c}*e{i}" for i, c in enumerate(self.coeffs) if c]
        return " + ".join(terms) if terms else "0"


# ---------------------------------------------------------------------------
# Prime context


class PrimeContext:
    """An odd prime p with fixed models of F_{p^d}, F_{p^2} and F_{p^{2d}}.

    ``modulus`` (low-to-high, monic) fixes F_{p^d}; ``gen2`` is a generator
    of F_{p^2}^x, written in the model of F_{p^2} (the same field when d = 2,
    otherwise the default modulus of degree 2).
    """

    def __init__(self, p: int, d: int = 2, modulus: Sequence[int] | None = None,
                 gen2: "Sequence[int] | int | None" = None):
        if not isinstance(p, int) or not sympy.isprime(p):
            raise InvalidContext(f"p = {p} is not prime")
        if p == 2:
            raise InvalidContext("p = 2 is excluded")
        if d < 1:
            raise InvalidContext(f"extension degree d = {d} must be positive")
        self.p = p
        self.d = d
        mod = tuple(modulus) if modulus is not None else default_modulus(p, d)
        if len(mod) != d + 1:
            raise InvalidContext(f"modulus must have degree d = {d}")
        self.field = FiniteField(p, mod)
        if d == 2:
            self.field2 = self.field
        elif d == 1:
            self.field2 = FiniteField(p, default_modulus(p, 2), base=self.field)
        else:
            self.field2 = FiniteField(p, default_modulus(p, 2))
        if gen2 is None:
            self.gen2 = self.field2.smallest_generator
        else:
            self.gen2 = self.field2(gen2)
            if not self.field2.is_generator(self.gen2):
                raise InvalidContext(f"gen2 = {gen2} does not generate F_{p}^2 multiplicatively")
        self.N = p * p - 1
        self.ext_built = False

    @property
    def key(self):
        return (self.p, self.d, self.field.modulus, self.gen2.coeffs)

    def __eq__(self, other):
        return isinstance(other, PrimeContext) and self.key == other.key

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"PrimeContext(p={self.p}, d={self.d}, modulus={list(self.field.modulus)})"

    @cached_property
    def ext(self) -> FiniteField:
        """F_{p^{2d}} with ``field`` embedded as its base."""
        self.ext_built = True
        if self.d == 1:
            return self.field2
        return FiniteField(self.p, default_modulus(self.p, 2 * self.d), base=self.field)

    # elements -------------------------------------------------------------

    def elem(self, value) -> FieldElement:
        """Parse an element: int (prime field), d coefficients, or 2d coefficients."""
        if isinstance(value, FieldElement):
            return value.minimal()
        if isinstance(value, int):
            return self.field(value)
        value = list(value)
        if len(value) <= self.d:
            return self.field(value)
        if len(value) == 2 * self.d:
            return self.ext(value).minimal()
        raise ValueError(f"cannot read {value} as an element of F_{self.p}^{self.d} or its quadratic extension")

    def elem_json(self, x: FieldElement):
        x = x.minimal()
        if x.in_prime_field():
            return x.coeffs[0]
        return list(x.coeffs)

    # Teichmüller indexing -------------------------------------------------

    @cached_property
    def _dlog(self) -> dict[tuple[int, ...], int]:
        table = {}
        x = self.field2.one
        for i in range(self.N):
            table[x.coeffs] = i
            x = x * self.gen2
        return table

    def dlog(self, x: "FieldElement | int") -> int:
        """Index i with x = gen2^i."""
        if isinstance(x, int):
            x = self.field2(x)
        elif x.field != self.field2:
            x = x.minimal()
            if x.field != self.field2:
                if not x.in_prime_field() or x.field.p != self.p:
                    raise ContextMismatch(f"{x} is not an element of F_{self.p}^2")
                x = self.field2(x.coeffs[0])
        if x.is_zero():
            raise FieldDivisionByZero("Teichmüller lift of zero")
        return self._dlog[x.coeffs]

    def teichmuller(self, x: "FieldElement | int") -> CycloElement:
        return CycloElement.basis(self.N, self.dlog(x))

    def quadratic_roots(self, b, c) -> "RootReport":
        return quadratic_roots(self, b, c)


@lru_cache(maxsize=None)
def default_context(p: int, d: int = 2) -> PrimeContext:
    return PrimeContext(p, d)


@dataclass(frozen=True)
class RootReport:
    """Roots of X^2 + bX + c with multiplicities and the field holding each."""

    roots: tuple[tuple[FieldElement, int], ...]
    field_degrees: tuple[int, ...]

    def values(self) -> list[FieldElement]:
        out = []
        for r, m in self.roots:
            out.extend([r] * m)
        return out


def quadratic_roots(ctx: PrimeContext, b, c) -> RootReport:
    """Both roots of X^2 + bX + c by exhaustive search over F_{p^{2d}}."""
    b = ctx.elem(b)
    c = ctx.elem(c)
    for x in (b, c):
        if x.field != ctx.field and not (x.field == ctx.ext and x.minimal().field == ctx.field):
            if x.minimal().field != ctx.field:
                raise ContextMismatch("quadratic coefficients must lie in F_{p^d}")
    found = []
    for fld in (ctx.field, ctx.ext):
        bb, cc = fld(b), fld(c)
        for x in fld.elements:
            if fld is ctx.ext and x.minimal().field == ctx.field:
                continue
            if (x * x + bb * x + cc).is_zero():
                found.append(x.minimal())
        if found:
            break
    if len(found) == 1:
        roots = ((found[0], 2),)
    else:
        found.sort(key=FieldElement.sort_key)
        roots = tuple((r, 1) for r in found)
    degs = tuple(r.field.degree for r, _ in roots)
    return RootReport(roots, degs)
