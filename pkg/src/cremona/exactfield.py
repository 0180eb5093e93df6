"""
Exact scalars, univariate polynomials and rational functions.

Three base fields are supported: the rationals, prime fields F_q (q > 3)
and cyclotomic fields Q(zeta_n), the latter represented modulo the n-th
cyclotomic polynomial. ``FunctionField(base)`` is the field base(t) of
rational functions; it can itself be used as the base of another
``FunctionField``, which gives the bivariate tower k(x)(y).

All values are immutable and every value has a unique canonical form, so
equality is representation equality.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from gmpy2 import mpq
from functools import cached_property

from cremona.errors import KindMismatch, NotAPower, NotInvariant, UnsupportedInput


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _factor(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _iroot(n: int, p: int) -> int | None:
    """Exact integer p-th root of n >= 0, or None."""
    if n < 2:
        return n
    if p == 2:
        r = math.isqrt(n)
    else:
        r = int(round(n ** (1.0 / p)))
        # float guess may be off for big n; walk to the true floor root
        while r**p > n:
            r -= 1
        while (r + 1) ** p <= n:
            r += 1
    return r if r**p == n else None


def _int_poly_divmod(a: list[int], b: list[int]) -> tuple[list[int], list[int]]:
    # b monic, coefficients low -> high
    a = list(a)
    q = [0] * max(len(a) - len(b) + 1, 1)
    for i in range(len(a) - len(b), -1, -1):
        coef = a[i + len(b) - 1]
        q[i] = coef
        if coef:
            for j, bj in enumerate(b):
                a[i + j] -= coef * bj
    rem = a[: len(b) - 1]
    while rem and rem[-1] == 0:
        rem.pop()
    return q, rem


def cyclotomic_polynomial(n: int) -> list[int]:
    """Integer coefficients of Phi_n, low degree first."""
    num = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n):
        if d < n:
            num, rem = _int_poly_divmod(num, cyclotomic_polynomial(d))
            assert not rem
    while num and num[-1] == 0:
        num.pop()
    return num


# ---------------------------------------------------------------------------
# Base fields


@dataclass(frozen=True)
class FieldKind:
    """One of: ``Q``, ``Fp`` (with prime q > 3) or ``cyclo`` (Q(zeta_n))."""

    tag: str
    q: int = 0
    n: int = 0

    def __post_init__(self):
        if self.tag == "Fp":
            if not (is_prime(self.q) and self.q > 3):
                raise ValueError(f"PrimeField needs a prime q > 3, got {self.q}")
        elif self.tag == "cyclo":
            if self.n < 1:
                raise ValueError("Cyclotomic(n) needs n >= 1")
        elif self.tag != "Q":
            raise ValueError(f"unknown field tag {self.tag!r}")

    @classmethod
    def rationals(cls) -> FieldKind:
        return cls("Q")

    @classmethod
    def prime(cls, q: int) -> FieldKind:
        return cls("Fp", q=q)

    @classmethod
    def cyclotomic(cls, n: int) -> FieldKind:
        return cls("cyclo", n=n)

    @classmethod
    def parse(cls, text: str) -> FieldKind:
        """``QQ``, ``Fp:<q>`` or ``cyclo:<n>``."""
        t = text.strip()
        if t in ("QQ", "Q"):
            return cls.rationals()
        head, _, arg = t.partition(":")
        if head in ("Fp", "GF", "F") and arg:
            return cls.prime(int(arg))
        if head in ("cyclo", "Cyclotomic", "QQzeta") and arg:
            return cls.cyclotomic(int(arg))
        raise ValueError(f"cannot parse field {text!r}")

    def __str__(self):
        if self.tag == "Q":
            return "QQ"
        if self.tag == "Fp":
            return f"Fp:{self.q}"
        return f"cyclo:{self.n}"

    @property
    def characteristic(self) -> int:
        return self.q if self.tag == "Fp" else 0

    @property
    def is_finite(self) -> bool:
        return self.tag == "Fp"

    @property
    def base(self) -> FieldKind:
        return self

    @cached_property
    def _phi(self) -> list[int]:
        return cyclotomic_polynomial(self.n)

    @cached_property
    def degree(self) -> int:
        return len(self._phi) - 1 if self.tag == "cyclo" else 1

    # -- construction -----------------------------------------------------

    def zero(self) -> FieldElement:
        return self(0)

    def one(self) -> FieldElement:
        return self(1)

    def __call__(self, x) -> FieldElement:
        if isinstance(x, FieldElement):
            if x.kind == self:
                return x
            if x.kind.tag == "Q" and self.tag != "Q":
                return self(x.v)
            raise KindMismatch(f"cannot coerce {x.kind} element into {self}")
        if isinstance(x, bool):
            x = int(x)
        if isinstance(x, (int, Fraction)):
            if self.tag == "Q":
                return FieldElement(self, Fraction(x))
            if self.tag == "Fp":
                x = Fraction(x)
                if x.denominator % self.q == 0:
                    raise ZeroDivisionError(f"{x} is not defined in {self}")
                v = x.numerator * pow(x.denominator, -1, self.q) % self.q
                return FieldElement(self, v)
            return FieldElement(self, (mpq(x),) + (mpq(0),) * (self.degree - 1))
        if isinstance(x, (tuple, list)) and self.tag == "cyclo":
            return FieldElement(self, self._reduce([mpq(c) for c in x]))
        if isinstance(x, str):
            return self(Fraction(x))
        raise KindMismatch(f"cannot coerce {x!r} into {self}")

    def gen(self) -> FieldElement:
        """The generator zeta of a cyclotomic field."""
        if self.tag != "cyclo":
            raise ValueError(f"{self} has no distinguished generator")
        return self((0, 1))

    def elements(self):
        if self.tag != "Fp":
            raise ValueError("only finite fields can be enumerated")
        return [FieldElement(self, v) for v in range(self.q)]

    def random_element(self, rng: random.Random, size: int = 6) -> FieldElement:
        if self.tag == "Fp":
            return FieldElement(self, rng.randrange(self.q))
        if self.tag == "Q":
            return self(Fraction(rng.randint(-size, size), rng.randint(1, max(1, size // 2))))
        return self([rng.randint(-size, size) for _ in range(self.degree)])

    def random_nonzero(self, rng: random.Random, size: int = 6) -> FieldElement:
        while True:
            a = self.random_element(rng, size)
            if a:
                return a

    # -- roots of unity ----------------------------------------------------

    @cached_property
    def _unit_order(self) -> int:
        """Order of the (cyclic) group of roots of unity available, or q-1."""
        if self.tag == "Q":
            return 2
        if self.tag == "Fp":
            return self.q - 1
        return self.n if self.n % 2 == 0 else 2 * self.n

    @cached_property
    def _unit_generator(self) -> FieldElement:
        if self.tag == "Q":
            return self(-1)
        if self.tag == "Fp":
            primes = _factor(self.q - 1)
            for g in range(2, self.q):
                if all(pow(g, (self.q - 1) // r, self.q) != 1 for r in primes):
                    return self(g)
            raise AssertionError("no primitive root")
        z = self.gen()
        return z if self.n % 2 == 0 else -z

    def root_of_unity(self, m: int) -> FieldElement | None:
        """A primitive m-th root of unity of this field, or None."""
        if m < 1:
            raise ValueError("m must be positive")
        if self._unit_order % m:
            return None
        if self.tag == "cyclo" and self.n % m == 0:
            return self.gen() ** (self.n // m)
        return self._unit_generator ** (self._unit_order // m)

    def roots_of_unity(self) -> list[FieldElement]:
        """Every root of unity in a non-finite field (finite fields: all of F_q^*)."""
        g = self._unit_generator
        out, x = [], self.one()
        for _ in range(self._unit_order):
            out.append(x)
            x = x * g
        return out

    # -- raw arithmetic on payloads ---------------------------------------

    def _reduce(self, coeffs: list) -> tuple:
        phi = self._phi
        d = len(phi) - 1
        c = list(coeffs)
        for i in range(len(c) - 1, d - 1, -1):
            top = c[i]
            if top:
                for j in range(d + 1):
                    c[i - d + j] -= top * phi[j]
        c = c[:d] + [mpq(0)] * (d - len(c))
        return tuple(c)

    def _add(self, a, b):
        if self.tag == "Q":
            return a + b
        if self.tag == "Fp":
            return (a + b) % self.q
        return tuple(x + y for x, y in zip(a, b))

    def _sub(self, a, b):
        if self.tag == "Q":
            return a - b
        if self.tag == "Fp":
            return (a - b) % self.q
        return tuple(x - y for x, y in zip(a, b))

    def _neg(self, a):
        if self.tag == "Q":
            return -a
        if self.tag == "Fp":
            return -a % self.q
        return tuple(-x for x in a)

    def _mul(self, a, b):
        if self.tag == "Q":
            return a * b
        if self.tag == "Fp":
            return a * b % self.q
        prod = [mpq(0)] * (2 * len(a) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        return self._reduce(prod)

    def _inv(self, a):
        if self.tag == "Q":
            return 1 / a
        if self.tag == "Fp":
            return pow(a, -1, self.q)
        # extended Euclid in Q[z] against Phi_n
        r0, r1 = [mpq(c) for c in self._phi], _strip(list(a))
        s0, s1 = [], [mpq(1)]
        while len(r1) > 1:
            quo, rem = _frac_divmod(r0, r1)
            r0, r1 = r1, rem
            s0, s1 = s1, _frac_sub(s0, _frac_mul(quo, s1))
        c = r1[0]
        return self._reduce([x / c for x in s1])

    def _is_zero(self, a) -> bool:
        if self.tag == "cyclo":
            return not any(a)
        return not a

    def _fmt(self, a) -> str:
        if self.tag != "cyclo":
            return str(a)
        terms = []
        for i in range(len(a) - 1, -1, -1):
            c = a[i]
            if not c:
                continue
            mono = "" if i == 0 else ("zeta" if i == 1 else f"zeta^{i}")
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            terms.append(("-" if c < 0 else "+", body))
        if not terms:
            return "0"
        out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out


def _strip(c: list) -> list:
    while c and not c[-1]:
        c.pop()
    return c


def _frac_divmod(a: list, b: list):
    a = list(a)
    q = [mpq(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        coef = a[i + len(b) - 1] / lead
        q[i] = coef
        if coef:
            for j, bj in enumerate(b):
                a[i + j] -= coef * bj
    return _strip(q), _strip(a[: len(b) - 1])


def _frac_mul(a, b):
    if not a or not b:
        return []
    out = [mpq(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _strip(out)


def _frac_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [mpq(0)] * (n - len(a))
    b = list(b) + [mpq(0)] * (n - len(b))
    return _strip([x - y for x, y in zip(a, b)])


class FieldElement:
    """An element of a ``FieldKind``; ``v`` is the canonical payload."""

    __slots__ = ("kind", "v")

    def __init__(self, kind: FieldKind, v):
        self.kind = kind
        self.v = v

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.kind is self.kind:
                return other
            if other.kind != self.kind:
                if other.kind.tag == "Q":
                    return self.kind(other)
                raise KindMismatch(f"{self.kind} vs {other.kind}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.kind(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.kind, self.kind._add(self.v, o.v))

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.kind, self.kind._sub(self.v, o.v))

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.kind, self.kind._sub(o.v, self.v))

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return FieldElement(self.kind, self.kind._mul(self.v, o.v))

    __rmul__ = __mul__

    def inverse(self) -> FieldElement:
        if not self:
            raise ZeroDivisionError("division by zero in " + str(self.kind))
        return FieldElement(self.kind, self.kind._inv(self.v))

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __neg__(self):
        return FieldElement(self.kind, self.kind._neg(self.v))

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = self.kind.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __bool__(self):
        return not self.kind._is_zero(self.v)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.kind == other.kind and self.v == other.v
        if isinstance(other, (int, Fraction)):
            try:
                return self == self.kind(other)
            except ZeroDivisionError:
                return False
        return NotImplemented

    def __hash__(self):
        return hash((self.kind.tag, self.v))

    def sort_key(self):
        return self.v

    def __lt__(self, other):
        return self.sort_key() < other.sort_key()

    def __le__(self, other):
        return self.sort_key() <= other.sort_key()

    def __gt__(self, other):
        return self.sort_key() > other.sort_key()

    def __ge__(self, other):
        return self.sort_key() >= other.sort_key()

    @property
    def is_rational(self) -> bool:
        """True when the value lies in the prime field (Q or F_q)."""
        return self.kind.tag != "cyclo" or not any(self.v[1:])

    def to_fraction(self) -> Fraction:
        if self.kind.tag == "Fp":
            return Fraction(self.v)
        if self.kind.tag == "Q":
            return self.v
        if any(self.v[1:]):
            raise ValueError("not a rational element")
        r = self.v[0]
        return Fraction(int(r.numerator), int(r.denominator))

    def __str__(self):
        return self.kind._fmt(self.v)

    def __repr__(self):
        return f"<{self.kind}: {self}>"


# ---------------------------------------------------------------------------
# Polynomials


def _fast_tag(domain):
    """Modulus for F_q, 0 for Q, None when payloads are not plain scalars."""
    if isinstance(domain, FieldKind):
        if domain.tag == "Fp":
            return domain.q
        if domain.tag == "Q":
            return 0
    return None


def _wrap(domain, vals) -> Poly:
    while vals and not vals[-1]:
        vals.pop()
    p = object.__new__(Poly)
    p.domain = domain
    p.c = tuple(FieldElement(domain, v) for v in vals)
    return p


def _to_fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


def _conv(a, b, q):
    if not q:
        a, b = [mpq(x) for x in a], [mpq(y) for y in b]
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    if q:
        return [v % q for v in out]
    return [_to_fraction(mpq(v)) for v in out]


def _raw_divmod(a, b, q):
    db = len(b) - 1
    if not q:
        a, b = [mpq(x) for x in a], [mpq(y) for y in b]
    lead = b[-1]
    inv = pow(lead, -1, q) if q else 1 / lead
    quo = [0] * (len(a) - db)
    for i in range(len(a) - 1 - db, -1, -1):
        coef = a[i + db]
        if not coef:
            continue
        coef = coef * inv % q if q else coef * inv
        quo[i] = coef
        for j in range(db):
            if b[j]:
                a[i + j] = (a[i + j] - coef * b[j]) % q if q else a[i + j] - coef * b[j]
        a[i + db] = 0
    if not q:
        quo = [_to_fraction(mpq(v)) for v in quo]
        rem = [_to_fraction(v) for v in a[:db]]
    else:
        rem = a[:db]
    return quo, rem


class Poly:
    """Dense univariate polynomial; ``c[i]`` is the coefficient of t^i."""

    __slots__ = ("domain", "c")

    def __init__(self, domain, coeffs=()):
        self.domain = domain
        self.c = tuple(_strip([domain(x) for x in coeffs]))

    @classmethod
    def _raw(cls, domain, coeffs) -> Poly:
        p = object.__new__(cls)
        p.domain = domain
        p.c = tuple(_strip(list(coeffs)))
        return p

    @classmethod
    def gen(cls, domain) -> Poly:
        return cls._raw(domain, [domain.zero(), domain.one()])

    @classmethod
    def constant(cls, domain, value) -> Poly:
        return cls._raw(domain, [domain(value)])

    @classmethod
    def from_roots(cls, domain, roots) -> Poly:
        out = cls.constant(domain, 1)
        for r in roots:
            out = out * cls._raw(domain, [-domain(r), domain.one()])
        return out

    @property
    def degree(self) -> int:
        return len(self.c) - 1

    def lc(self):
        return self.c[-1]

    def __bool__(self):
        return bool(self.c)

    def is_constant(self) -> bool:
        return len(self.c) <= 1

    def coeff(self, i: int):
        return self.c[i] if 0 <= i < len(self.c) else self.domain.zero()

    def _lift(self, other) -> Poly | None:
        if isinstance(other, Poly):
            return other
        try:
            return Poly._raw(self.domain, [self.domain(other)])
        except (KindMismatch, TypeError):
            return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b = self.c, o.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] = out[i] + x
        return Poly._raw(self.domain, out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.domain, [-x for x in self.c])

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        a, b = self.c, o.c
        if not a or not b:
            return Poly._raw(self.domain, [])
        fast = _fast_tag(self.domain)
        if fast and len(a) > 1 and len(b) > 1:
            return _wrap(self.domain, _conv([x.v for x in a], [y.v for y in b], fast))
        if len(b) == 1:
            s = b[0]
            return Poly._raw(self.domain, [x * s for x in a])
        if len(a) == 1:
            s = a[0]
            return Poly._raw(self.domain, [s * x for x in b])
        zero = self.domain.zero()
        out = [zero] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = out[i + j] + x * y
        return Poly._raw(self.domain, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> Poly:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly.constant(self.domain, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other):
        o = self._lift(other)
        if not o:
            raise ZeroDivisionError("polynomial division by zero")
        a = list(self.c)
        db = o.degree
        if len(a) <= db:
            return Poly._raw(self.domain, []), self
        fast = _fast_tag(self.domain)
        if fast:
            q, r = _raw_divmod([x.v for x in a], [y.v for y in o.c], fast)
            return _wrap(self.domain, q), _wrap(self.domain, r)
        inv = 1 / o.lc() if not _is_one(o.lc()) else None
        zero = self.domain.zero()
        q = [zero] * (len(a) - db)
        bc = o.c
        for i in range(len(a) - 1 - db, -1, -1):
            coef = a[i + db]
            if not coef:
                continue
            if inv is not None:
                coef = coef * inv
            q[i] = coef
            for j in range(db):
                if bc[j]:
                    a[i + j] = a[i + j] - coef * bc[j]
            a[i + db] = zero
        return Poly._raw(self.domain, q), Poly._raw(self.domain, a[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def exact_div(self, other) -> Poly:
        q, r = divmod(self, other)
        if r:
            raise ValueError("polynomial division is not exact")
        return q

    def monic(self) -> Poly:
        if not self.c or _is_one(self.c[-1]):
            return self
        inv = 1 / self.c[-1]
        return Poly._raw(self.domain, [x * inv for x in self.c])

    def derivative(self) -> Poly:
        return Poly._raw(self.domain, [x * i for i, x in enumerate(self.c)][1:])

    def __call__(self, value):
        """Horner evaluation; ``value`` may be a scalar, Poly or RatFunc."""
        if not self.c:
            return self.domain.zero() if not isinstance(value, (Poly, RatFunc)) else value * 0
        acc = self.c[-1]
        if isinstance(value, (Poly, RatFunc)):
            acc = value * 0 + acc
        for x in reversed(self.c[:-1]):
            acc = acc * value + x
        return acc

    def compose(self, other: Poly) -> Poly:
        return self(other)

    def reciprocal(self) -> Poly:
        """t^deg * f(1/t)."""
        return Poly._raw(self.domain, list(reversed(self.c)))

    def is_palindromic(self) -> bool:
        return self.c == tuple(reversed(self.c))

    def valuation(self) -> int:
        for i, x in enumerate(self.c):
            if x:
                return i
        raise ValueError("valuation of zero polynomial")

    def shift_down(self, k: int) -> Poly:
        """Divide by t^k (must be exact)."""
        if any(self.c[:k]):
            raise ValueError("not divisible by t^k")
        return Poly._raw(self.domain, self.c[k:])

    def even_part(self) -> Poly:
        """g with f(t) = g(t^2); raises if f has odd terms."""
        if any(self.c[1::2]):
            raise NotInvariant("polynomial is not even")
        return Poly._raw(self.domain, self.c[0::2])

    def substitute_power(self, k: int) -> Poly:
        """f(t^k)."""
        zero = self.domain.zero()
        out = [zero] * (k * self.degree + 1) if self.c else []
        for i, x in enumerate(self.c):
            out[k * i] = x
        return Poly._raw(self.domain, out)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.c == other.c
        o = self._lift(other)
        return o is not None and self.c == o.c

    def __hash__(self):
        return hash(self.c)

    def to_str(self, var: str = "t") -> str:
        if not self.c:
            return "0"
        terms = []
        for i in range(len(self.c) - 1, -1, -1):
            x = self.c[i]
            if not x:
                continue
            mono = "" if i == 0 else (var if i == 1 else f"{var}^{i}")
            terms.append(_term(x, mono))
        sign, body = terms[0]
        out = ("-" if sign == "-" else "") + body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __str__(self):
        return self.to_str(getattr(self.domain, "var_name", "t"))

    def __repr__(self):
        return f"Poly({self})"


def _is_one(x) -> bool:
    return x == 1


def _atomic(s: str) -> bool:
    body = s[1:] if s.startswith("-") else s
    return all(ch.isalnum() or ch in "^/" for ch in body) and (
        "/" not in body or body.replace("/", "").isdigit()
    )


def _term(x, mono: str) -> tuple[str, str]:
    s = str(x)
    sign = "+"
    if s.startswith("-") and _atomic(s):
        sign, s = "-", s[1:]
    if not mono:
        return sign, s
    if s == "1":
        return sign, mono
    if _atomic(s) and "/" not in s:
        return sign, f"{s}*{mono}"
    return sign, f"({s})*{mono}"


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (zero if both are zero)."""
    if b:
        b = b.monic()
    while b:
        r = a % b
        a, b = b, (r.monic() if r else r)
    return a.monic()


# ---------------------------------------------------------------------------
# Rational functions


class FunctionField:
    """base(t): rational functions in one variable over ``base``."""

    def __init__(self, base, var: str = "t"):
        self.base = base
        self.var_name = var

    def __eq__(self, other):
        return isinstance(other, FunctionField) and self.base == other.base

    def __hash__(self):
        return hash(("FF", self.base))

    def __repr__(self):
        return f"{self.base}({self.var_name})"

    @property
    def characteristic(self) -> int:
        return self.base.characteristic

    @property
    def ground(self) -> FieldKind:
        b = self.base
        while isinstance(b, FunctionField):
            b = b.base
        return b

    def renamed(self, var: str) -> FunctionField:
        return FunctionField(self.base, var)

    def zero(self) -> RatFunc:
        return RatFunc._raw(self, Poly._raw(self.base, []), Poly.constant(self.base, 1))

    def one(self) -> RatFunc:
        return self(1)

    def gen(self) -> RatFunc:
        return RatFunc._raw(self, Poly.gen(self.base), Poly.constant(self.base, 1))

    def __call__(self, x) -> RatFunc:
        if isinstance(x, RatFunc):
            if x.field == self:
                return x
            # element of the base field of a tower
            return RatFunc._raw(self, Poly._raw(self.base, [self.base(x)]), Poly.constant(self.base, 1))
        if isinstance(x, Poly):
            return RatFunc._raw(self, x, Poly.constant(self.base, 1))
        return RatFunc._raw(self, Poly._raw(self.base, [self.base(x)]), Poly.constant(self.base, 1))

    def root_of_unity(self, m: int):
        r = self.base.root_of_unity(m)
        return None if r is None else self(r)

    def random_element(self, rng: random.Random, degree: int = 2, size: int = 4) -> RatFunc:
        ground = self.base

        def rpoly(d):
            return Poly._raw(ground, [ground.random_element(rng, size) for _ in range(d + 1)])

        num = rpoly(rng.randint(0, degree))
        den = rpoly(rng.randint(0, degree))
        while not den:
            den = rpoly(rng.randint(0, degree))
        return RatFunc(self, num, den)

    def random_nonzero(self, rng: random.Random, degree: int = 2, size: int = 4) -> RatFunc:
        while True:
            f = self.random_element(rng, degree, size)
            if f:
                return f


class _Infinity:
    """The point at infinity of the projective line."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "oo"

    __str__ = __repr__

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


class RatFunc:
    """num/den with gcd(num, den) = 1 and den monic."""

    __slots__ = ("field", "num", "den")

    def __init__(self, field: FunctionField, num, den=None):
        base = field.base
        if not isinstance(num, Poly):
            num = Poly._raw(base, [base(num)])
        if den is None:
            den = Poly.constant(base, 1)
        elif not isinstance(den, Poly):
            den = Poly._raw(base, [base(den)])
        if not den:
            raise ZeroDivisionError("rational function with zero denominator")
        if not num:
            den = Poly.constant(base, 1)
        elif den.degree > 0:
            g = poly_gcd(num, den)
            if g.degree > 0:
                num, den = num // g, den // g
        lead = den.lc()
        if not _is_one(lead):
            inv = 1 / lead
            num = Poly._raw(base, [x * inv for x in num.c])
            den = Poly._raw(base, [x * inv for x in den.c])
        self.field, self.num, self.den = field, num, den

    @classmethod
    def _raw(cls, field, num: Poly, den: Poly) -> RatFunc:
        r = object.__new__(cls)
        r.field, r.num, r.den = field, num, den
        return r

    @property
    def base(self):
        return self.field.base

    @property
    def degree(self) -> int:
        return max(self.num.degree, self.den.degree)

    def is_constant(self) -> bool:
        return self.num.degree <= 0 and self.den.degree == 0

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.coeff(0)

    def is_polynomial(self) -> bool:
        return self.den.degree == 0

    def __bool__(self):
        return bool(self.num)

    def _lift(self, other):
        if isinstance(other, RatFunc) and other.field == self.field:
            return other
        try:
            return self.field(other)
        except (KindMismatch, TypeError):
            return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.field, self.num + o.num, self.den)
        if self.den.degree == 0:
            return RatFunc._raw(self.field, self.num * o.den + o.num, o.den)
        if o.den.degree == 0:
            return RatFunc._raw(self.field, self.num + o.num * self.den, self.den)
        g = poly_gcd(self.den, o.den)
        if g.degree == 0:
            num = self.num * o.den + o.num * self.den
            return RatFunc._raw(self.field, num, self.den * o.den) if num else self.field.zero()
        d1, d2 = self.den // g, o.den // g
        return RatFunc(self.field, self.num * d2 + o.num * d1, d1 * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc._raw(self.field, -self.num, self.den)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if not self.num or not o.num:
            return self.field.zero()
        n1, d1, n2, d2 = self.num, self.den, o.num, o.den
        if d2.degree > 0 and n1.degree > 0:
            g = poly_gcd(n1, d2)
            if g.degree > 0:
                n1, d2 = n1 // g, d2 // g
        if d1.degree > 0 and n2.degree > 0:
            g = poly_gcd(n2, d1)
            if g.degree > 0:
                n2, d1 = n2 // g, d1 // g
        return RatFunc._raw(self.field, n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self) -> RatFunc:
        if not self.num:
            raise ZeroDivisionError("inverse of zero rational function")
        lead = self.num.lc()
        if _is_one(lead):
            return RatFunc._raw(self.field, self.den, self.num)
        inv = 1 / lead
        return RatFunc._raw(
            self.field,
            Poly._raw(self.base, [x * inv for x in self.den.c]),
            Poly._raw(self.base, [x * inv for x in self.num.c]),
        )

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        return RatFunc._raw(self.field, self.num**n, self.den**n)

    def __eq__(self, other):
        if isinstance(other, RatFunc):
            return self.num.c == other.num.c and self.den.c == other.den.c
        o = self._lift(other)
        return o is not None and self.num.c == o.num.c and self.den.c == o.den.c

    def __hash__(self):
        return hash((self.num.c, self.den.c))

    def __call__(self, value):
        """Evaluate at a base-field point or ``INF``; returns ``INF`` at poles."""
        if value is INF:
            dn, dd = self.num.degree, self.den.degree
            if dn > dd:
                return INF
            if dn < dd:
                return self.base.zero()
            return self.num.lc() / self.den.lc()
        d = self.den(value)
        if not d:
            return INF
        return self.num(value) / d

    def compose(self, g: RatFunc) -> RatFunc:
        """Substitute t -> g(t)."""
        P, Q = g.num, g.den
        n, m = self.num.degree, self.den.degree
        if not self.num:
            return self.field.zero()
        hn = _homogeneous_eval(self.num, P, Q)
        hd = _homogeneous_eval(self.den, P, Q)
        if m > n:
            hn = hn * Q ** (m - n)
        elif n > m:
            hd = hd * Q ** (n - m)
        return RatFunc(self.field, hn, hd)

    def derivative(self) -> RatFunc:
        n, d = self.num, self.den
        return RatFunc(self.field, n.derivative() * d - n * d.derivative(), d * d)

    def to_str(self, var: str | None = None) -> str:
        var = var or self.field.var_name
        ns = self.num.to_str(var)
        if self.den.degree == 0:
            return ns
        ds = self.den.to_str(var)
        if not _atomic(ns):
            ns = f"({ns})"
        if not _atomic(ds):
            ds = f"({ds})"
        return f"{ns}/{ds}"

    def __str__(self):
        return self.to_str()

    def __repr__(self):
        return f"RatFunc({self})"


def _homogeneous_eval(f: Poly, P: Poly, Q: Poly) -> Poly:
    """Q^deg(f) * f(P/Q) as a polynomial."""
    n = f.degree
    p_pows = [Poly.constant(P.domain, 1)]
    for _ in range(n):
        p_pows.append(p_pows[-1] * P)
    q_pows = [Poly.constant(P.domain, 1)]
    for _ in range(n):
        q_pows.append(q_pows[-1] * Q)
    out = Poly._raw(P.domain, [])
    for i, c in enumerate(f.c):
        if c:
            out = out + p_pows[i] * q_pows[n - i] * c
    return out


# ---------------------------------------------------------------------------
# Special algorithms


def yun_squarefree(f: Poly) -> list[tuple[Poly, int]]:
    """
    Squarefree decomposition f = lc(f) * prod g_i^e_i with g_i monic,
    squarefree, pairwise coprime and the e_i distinct (Yun's algorithm).
    """
    if not f:
        raise ValueError("squarefree decomposition of zero")
    ch = f.domain.characteristic
    if ch and ch <= f.degree:
        raise UnsupportedInput(
            f"characteristic {ch} too small for a degree {f.degree} squarefree decomposition"
        )
    f = f.monic()
    if f.degree <= 0:
        return []
    df = f.derivative()
    b = poly_gcd(f, df)
    c = f // b
    d = df // b - c.derivative()
    out = []
    i = 1
    while c.degree > 0:
        a = poly_gcd(c, d)
        if a.degree > 0:
            out.append((a, i))
        c = c // a
        d = d // a - c.derivative()
        i += 1
    return out


def squarefree_part(f: Poly, parity_only: bool = True) -> Poly:
    """Product of the squarefree factors of odd multiplicity (monic)."""
    out = Poly.constant(f.domain, 1)
    for g, e in yun_squarefree(f):
        if e % 2 == 1 or not parity_only:
            out = out * g
    return out


def field_root(c: FieldElement, p: int) -> FieldElement | None:
    """A p-th root of the scalar c inside its field, or None if none is found."""
    kind = c.kind
    if not c:
        return c
    if kind.tag == "Q":
        r = _rational_root(c.v, p)
        return None if r is None else kind(r)
    if kind.tag == "Fp":
        return _fp_root(c, p)
    if c.is_rational:
        r = _rational_root(c.to_fraction(), p)
        if r is not None:
            return kind(r)
    for w in kind.roots_of_unity():
        rest = c / w**p
        if rest.is_rational:
            r = _rational_root(rest.to_fraction(), p)
            if r is not None:
                return w * r
    # conservative: other constants of Q(zeta_n) are reported as non-powers
    return None


def _rational_root(x: Fraction, p: int) -> Fraction | None:
    sign = 1
    if x < 0:
        if p % 2 == 0:
            return None
        sign, x = -1, -x
    a, b = _iroot(x.numerator, p), _iroot(x.denominator, p)
    if a is None or b is None:
        return None
    return sign * Fraction(a, b)


def _fp_root(c: FieldElement, p: int) -> FieldElement | None:
    q = c.kind.q
    a = c.v
    order = q - 1
    g = math.gcd(p, order)
    if g == 1:
        return c.kind(pow(a, pow(p, -1, order), q))
    if pow(a, order // p, q) != 1:
        return None
    s, m = 0, order
    while m % p == 0:
        m //= p
        s += 1
    x0 = pow(a, pow(p, -1, m), q) if m > 1 else a
    err = pow(x0, p, q) * pow(a, -1, q) % q
    gen = c.kind._unit_generator.v
    sylow = pow(gen, m, q)  # generator of the Sylow p-subgroup, order p^s
    target = pow(err, -1, q)
    k, cur = 0, 1
    while cur != target:
        cur = cur * sylow % q
        k += 1
        if k > p**s:
            return None
    if k % p:
        return None
    y = pow(sylow, k // p, q)
    root = x0 * y % q
    assert pow(root, p, q) == a
    return c.kind(root)


def pth_power_root(f: RatFunc, p: int) -> RatFunc:
    """g with g^p == f, raising NotAPower if there is none over the field."""
    if not f:
        return f
    field = f.field
    parts = []
    for poly in (f.num, f.den):
        root = Poly.constant(poly.domain, 1)
        for g, e in yun_squarefree(poly):
            if e % p:
                raise NotAPower(f"factor of multiplicity {e} is not divisible by {p}")
            root = root * g ** (e // p)
        parts.append(root)
    lead = f.num.lc()
    c = _scalar_root(lead, p)
    if c is None:
        raise NotAPower(f"leading coefficient {lead} has no {p}-th root")
    g = RatFunc(field, parts[0] * c, parts[1])
    assert g**p == f
    return g


def _scalar_root(c, p: int):
    if isinstance(c, FieldElement):
        return field_root(c, p)
    try:
        return pth_power_root(c, p)
    except NotAPower:
        return None


def root_in(domain, value, p: int):
    """p-th root of ``value`` in ``domain`` (a FieldKind or FunctionField), or None."""
    value = domain(value)
    if isinstance(domain, FunctionField):
        try:
            return pth_power_root(value, p)
        except (NotAPower, UnsupportedInput):
            return None
    return field_root(value, p)


def palindromic_reduce(S: Poly) -> Poly:
    """
    T with S(v) = v^m * T(v + 1/v), for S self-reciprocal of degree 2m.

    Uses v^k + v^-k = D_k(w), D_0 = 2, D_1 = w, D_{k+1} = w D_k - D_{k-1}.
    """
    if not S:
        raise NotInvariant("zero polynomial")
    if S.degree % 2 or not S.is_palindromic():
        raise NotInvariant("polynomial is not self-reciprocal of even degree")
    dom = S.domain
    m = S.degree // 2
    w = Poly.gen(dom)
    T = Poly.constant(dom, S.c[m])
    d_prev, d_cur = Poly.constant(dom, 2), w
    for k in range(1, m + 1):
        T = T + d_cur * S.c[m + k]
        d_prev, d_cur = d_cur, w * d_cur - d_prev
    return T


def roots_in_k(f: Poly) -> tuple[list, Poly]:
    """
    Roots of f lying in the base field, with multiplicity, and the part of f
    without roots in k (so f = remainder * prod(t - r)).
    """
    if not f:
        raise ValueError("roots of the zero polynomial")
    kind = f.domain
    roots = []
    rem = f

    def peel(r):
        nonlocal rem
        lin = Poly._raw(kind, [-kind(r), kind.one()])
        while rem.degree > 0 and not rem(kind(r)):
            rem = rem // lin
            roots.append(kind(r))

    while rem.degree > 0 and not rem.c[0]:
        rem = rem.shift_down(1)
        roots.append(kind.zero())
    if kind.tag == "Fp":
        for x in range(1, kind.q):
            if rem.degree <= 0:
                break
            peel(x)
    else:
        if all(c.is_rational for c in rem.c):
            for r in _rational_root_candidates(rem):
                if rem.degree <= 0:
                    break
                peel(r)
        if kind.tag == "cyclo" and 0 < rem.degree <= 2:
            for r in _quadratic_roots(rem):
                peel(r)
    return roots, rem


def _rational_root_candidates(f: Poly) -> list[Fraction]:
    fr = [c.to_fraction() for c in f.c]
    scale = 1
    for x in fr:
        scale = scale * x.denominator // math.gcd(scale, x.denominator)
    ints = [int(x * scale) for x in fr]
    a0, an = ints[0], ints[-1]
    out = set()
    for p in _divisors(a0):
        for q in _divisors(an):
            out.add(Fraction(p, q))
            out.add(Fraction(-p, q))
    return sorted(out)


def _quadratic_roots(f: Poly) -> list:
    if f.degree == 1:
        return [-f.c[0] / f.c[1]]
    a, b, c = f.c[2], f.c[1], f.c[0]
    disc = b * b - 4 * a * c
    s = field_root(disc, 2)
    if s is None:
        return []
    return [(-b + s) / (2 * a), (-b - s) / (2 * a)]


def rewrite_in_invariant(delta: RatFunc) -> RatFunc:
    """
    Q with delta(t) = Q(t^2 + t^-2), for delta invariant under t -> -t and
    t -> 1/t. The result lives in the same function field (variable s).
    """
    try:
        N, D = delta.num.even_part(), delta.den.even_part()
    except NotInvariant:
        raise NotInvariant("delta is not invariant under t -> -t") from None
    if not N:
        return delta.field.zero()
    centers = []
    for P in (N, D):
        val = P.valuation()
        if (val + P.degree) % 2:
            raise NotInvariant("delta is not invariant under t -> 1/t")
        centers.append((val + P.degree) // 2)
    if centers[0] != centers[1]:
        raise NotInvariant("delta is not invariant under t -> 1/t")
    A = N.shift_down(N.valuation())
    B = D.shift_down(D.valuation())
    try:
        TA, TB = palindromic_reduce(A), palindromic_reduce(B)
    except NotInvariant:
        raise NotInvariant("delta is not invariant under t -> 1/t") from None
    return RatFunc(delta.field, TA, TB)

