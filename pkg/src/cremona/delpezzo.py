"""
Del Pezzo side of the classification: Weyl group orders and the Hurwitz
bound used as divisibility obstructions, the character decompositions
behind the Fermat cubic and the quartic normal forms, and the invariants of
a quartic del Pezzo surface  sum X_i^2 = sum lam_i X_i^2 = 0  built from the
j-function of its fixed elliptic curves.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter, defaultdict
from dataclasses import dataclass

from cremona.birmap import NFData
from cremona.errors import FieldExtensionRequired, MissingRootOfUnity
from cremona.exactfield import INF, FieldKind, FunctionField, Poly, RatFunc, is_prime

# ---------------------------------------------------------------------------
# Weyl groups and the Hurwitz bound

# number of blown-up points -> (root system, |W| as prime factorization)
WEYL_TABLE = {
    4: ("A4", {2: 3, 3: 1, 5: 1}),
    5: ("D5", {2: 7, 3: 1, 5: 1}),
    6: ("E6", {2: 7, 3: 4, 5: 1}),
    7: ("E7", {2: 10, 3: 4, 5: 1, 7: 1}),
    8: ("E8", {2: 14, 3: 5, 5: 2, 7: 1}),
}


@dataclass(frozen=True)
class WeylEntry:
    ell: int
    root_system: str
    factorization: tuple

    @property
    def order(self) -> int:
        return math.prod(p**e for p, e in self.factorization)

    def factor_str(self) -> str:
        return ".".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factorization)


def weyl_entry(ell: int) -> WeylEntry:
    if ell not in WEYL_TABLE:
        raise ValueError("ell must lie in 4..8")
    name, fac = WEYL_TABLE[ell]
    return WeylEntry(ell, name, tuple(sorted(fac.items())))


def weyl_table_query(ell: int, p: int, r: int) -> bool:
    """Whether p^r divides the order of the Weyl group for ell blown-up points."""
    return weyl_entry(ell).order % p**r == 0


def p_valuation(n: int, p: int) -> int:
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def hurwitz_max_rank(g: int, p: int) -> int:
    """Largest r with p^(r-1) dividing 2g - 2."""
    if g < 2:
        raise ValueError("genus must be at least 2")
    if not is_prime(p):
        raise ValueError("p must be prime")
    return p_valuation(2 * g - 2, p) + 1


# ---------------------------------------------------------------------------
# Character decompositions


def monomials(nvars: int, degree: int) -> list[tuple]:
    out = []
    for combo in itertools.combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    return out


@dataclass
class CharacterReport:
    group_order: int
    monomial_count: int
    invariant: list
    semi_invariant: list
    distinct_characters: int
    ok: bool
    notes: dict


def fermat_cubic_check(kind: FieldKind | None = None) -> CharacterReport:
    """
    The diagonal (mu_3)^4 / mu_3 acting on degree-3 forms in X_0..X_3:
    group order, preservation and smoothness of the Fermat cubic, and the
    split of the 20 cubic monomials into invariants and character lines.
    """
    kind = kind or FieldKind.cyclotomic(3)
    zeta = kind.root_of_unity(3)
    if zeta is None:
        raise MissingRootOfUnity("need a primitive cube root of unity")
    # exponent vectors modulo the diagonal: representatives with e_0 = 0
    group = [(0,) + e for e in itertools.product(range(3), repeat=3)]

    def char(g, m):
        return zeta ** (sum(a * b for a, b in zip(g, m)) % 3)

    mons = monomials(4, 3)
    invariant, semi = [], []
    characters = set()
    for m in mons:
        values = tuple(char(g, m) for g in group)
        # well defined on the quotient: the diagonal acts by zeta^(deg) = 1
        assert all(char(tuple((a + 1) % 3 for a in g), m) == char(g, m) for g in group)
        if all(v == 1 for v in values):
            invariant.append(m)
        else:
            semi.append(m)
            characters.add(values)
    members = set(group)
    closed = all(tuple((a + b) % 3 for a, b in zip(g, h)) in members for g in group for h in group)
    fermat = [tuple(3 if i == j else 0 for i in range(4)) for j in range(4)]
    preserved = all(m in invariant for m in fermat)
    # gradient (3 X_i^2): no common projective zero unless char is 3
    smooth = kind.characteristic != 3
    ok = (
        len(group) == 27
        and len(set(group)) == 27
        and closed
        and preserved
        and smooth
        and len(mons) == 20
        and len(invariant) == 4
        and len(semi) == 16
    )
    return CharacterReport(
        27, len(mons), invariant, semi, len(characters), ok, {"preserves_fermat": preserved, "smooth": smooth}
    )


def quadric_character_check() -> CharacterReport:
    """(mu_2)^5 acting by signs on quadratic forms in X_0..X_4."""
    group = list(itertools.product((1, -1), repeat=5))
    mons = monomials(5, 2)
    invariant, semi = [], []
    characters = set()
    for m in mons:
        values = tuple(math.prod(s**e for s, e in zip(g, m)) for g in group)
        if all(v == 1 for v in values):
            invariant.append(m)
        else:
            semi.append(m)
            characters.add(values)
    two_support = all(sum(e % 2 for e in m) == 2 for m in semi)
    ok = len(group) == 32 and len(mons) == 15 and len(invariant) == 5 and len(semi) == 10 and two_support
    return CharacterReport(32, len(mons), invariant, semi, len(characters), ok, {"two_support": two_support})


def invariant_monomials(signs, degree: int = 2) -> list[tuple]:
    """Monomials of the given degree fixed by one diagonal sign pattern."""
    return [m for m in monomials(len(signs), degree) if math.prod(s**e for s, e in zip(signs, m)) == 1]


# ---------------------------------------------------------------------------
# j-function and cross-ratio


def jfun(x):
    """2^8 (x^2 - x + 1)^3 / (x^2 (x - 1)^2); oo at 0, 1, oo."""
    if x is INF:
        return INF
    den = x * x * (x - 1) ** 2
    if not den:
        return INF
    return 256 * (x * x - x + 1) ** 3 / den


def jfun_ratfunc(field: FunctionField) -> RatFunc:
    x = field.gen()
    return 256 * (x * x - x + 1) ** 3 / (x * x * (x - 1) ** 2)


def _proj(a):
    return (1, 0) if a is INF else (a, 1)


def cross_ratio(a, b, c, d):
    """[a, b; c, d] = (a - c)(b - d) / ((a - d)(b - c)); cross_ratio(x, 1, 0, oo) = x."""
    pts = [_proj(v) for v in (a, b, c, d)]

    def det(p, q):
        return p[0] * q[1] - p[1] * q[0]

    for i in range(4):
        for j in range(i + 1, 4):
            if not det(pts[i], pts[j]):
                raise ValueError("cross-ratio needs four distinct points")
    pa, pb, pc, pd = pts
    num = det(pa, pc) * det(pb, pd)
    den = det(pa, pd) * det(pb, pc)
    return num / den


def six_anharmonic(field: FunctionField) -> list[RatFunc]:
    """The cross-ratio group: x, 1/x, 1-x, 1/(1-x), x/(x-1), (x-1)/x."""
    x = field.gen()
    one = field.one()
    return [x, one / x, one - x, one / (one - x), x / (x - one), (x - one) / x]


@dataclass(frozen=True)
class QuarticDP:
    lambdas: tuple

    def __post_init__(self):
        if len(self.lambdas) != 5:
            raise ValueError("a quartic del Pezzo surface needs five parameters")
        if len(set(self.lambdas)) != 5:
            raise ValueError("repeated parameter: the surface is singular")
        if self.kind.characteristic == 2:
            raise ValueError("characteristic 2 is excluded")

    @property
    def kind(self) -> FieldKind:
        return self.lambdas[0].kind


def branch_j(S: QuarticDP, ell: int):
    """j-invariant of the double cover of P^1 branched at the lam_i, i != ell."""
    pts = [v for i, v in enumerate(S.lambdas) if i != ell]
    return jfun(cross_ratio(*pts))


def _branch_j_points(points, ell):
    pts = [v for i, v in enumerate(points) if i != ell]
    return jfun(cross_ratio(*pts))


def Jmap(lam, mu) -> tuple:
    """(j(mu), j(lam), j(lam/mu), j((lam-1)/(mu-1)), j(lam(mu-1)/(mu(lam-1))))."""
    if not lam or not mu or lam == 1 or mu == 1 or lam == mu:
        raise ValueError("(lam, mu, 1, 0, oo) must be pairwise distinct")
    return (
        jfun(mu),
        jfun(lam),
        jfun(lam / mu),
        jfun((lam - 1) / (mu - 1)),
        jfun(lam * (mu - 1) / (mu * (lam - 1))),
    )


def Jmap_via_branch(lam, mu) -> tuple:
    """Slot l of the five-point configuration (lam, mu, 1, 0, oo) with slot l removed."""
    kind = lam.kind
    pts = (lam, mu, kind.one(), kind.zero(), INF)
    return tuple(_branch_j_points(pts, ell) for ell in range(5))


def Jbar(S: QuarticDP) -> tuple:
    """The multiset of the five branch j-invariants, as a sorted tuple."""
    return tuple(sorted((branch_j(S, ell) for ell in range(5)), key=lambda v: v.sort_key()))


# ---------------------------------------------------------------------------
# Jacobian identity


class BiPoly:
    """Sparse polynomial in (lam, mu) with integer coefficients."""

    __slots__ = ("t",)

    def __init__(self, terms=None):
        self.t = {k: v for k, v in (terms or {}).items() if v}

    @classmethod
    def const(cls, c) -> BiPoly:
        return cls({(0, 0): c})

    @classmethod
    def lam(cls) -> BiPoly:
        return cls({(1, 0): 1})

    @classmethod
    def mu(cls) -> BiPoly:
        return cls({(0, 1): 1})

    def __add__(self, o):
        o = o if isinstance(o, BiPoly) else BiPoly.const(o)
        out = dict(self.t)
        for k, v in o.t.items():
            out[k] = out.get(k, 0) + v
        return BiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return BiPoly({k: -v for k, v in self.t.items()})

    def __sub__(self, o):
        return self + (-(o if isinstance(o, BiPoly) else BiPoly.const(o)))

    def __rsub__(self, o):
        return BiPoly.const(o) - self

    def __mul__(self, o):
        if not isinstance(o, BiPoly):
            return BiPoly({k: v * o for k, v in self.t.items()})
        out = defaultdict(int)
        for (a, b), v in self.t.items():
            for (c, d), w in o.t.items():
                out[(a + c, b + d)] += v * w
        return BiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = BiPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def diff(self, var: int) -> BiPoly:
        out = {}
        for k, v in self.t.items():
            if k[var]:
                nk = (k[0] - 1, k[1]) if var == 0 else (k[0], k[1] - 1)
                out[nk] = v * k[var]
        return BiPoly(out)

    def __eq__(self, o):
        return isinstance(o, BiPoly) and self.t == o.t

    __hash__ = None


class BiFrac:
    """Unreduced quotient of BiPolys; equality by cross-multiplication."""

    __slots__ = ("n", "d")

    def __init__(self, n: BiPoly, d: BiPoly):
        if not d.t:
            raise ZeroDivisionError("zero denominator")
        self.n, self.d = n, d

    def __mul__(self, o):
        if isinstance(o, BiFrac):
            return BiFrac(self.n * o.n, self.d * o.d)
        return BiFrac(self.n * o, self.d)

    def __sub__(self, o):
        return BiFrac(self.n * o.d - o.n * self.d, self.d * o.d)

    def diff(self, var: int) -> BiFrac:
        return BiFrac(self.n.diff(var) * self.d - self.n * self.d.diff(var), self.d * self.d)

    def __eq__(self, o):
        return self.n * o.d == o.n * self.d

    __hash__ = None


def _compose_univariate(f: RatFunc, P: BiPoly, Q: BiPoly) -> BiFrac:
    """f(P/Q) for f in Q(x) with integer coefficients after scaling."""

    def hom(poly: Poly, deg: int) -> tuple[BiPoly, int]:
        coeffs = [c.to_fraction() for c in poly.c]
        den = math.lcm(*(c.denominator for c in coeffs)) if coeffs else 1
        out = BiPoly()
        for i, c in enumerate(coeffs):
            if c:
                out = out + (P**i) * (Q ** (deg - i)) * int(c * den)
        return out, den

    deg = max(f.num.degree, f.den.degree)
    n, dn = hom(f.num, deg)
    d, dd = hom(f.den, deg)
    return BiFrac(n * dd, d * dn)


def jacobian_identity_check(scale=1) -> bool:
    """
    Exact check, as rational functions of (lam, mu) over Q, that the Jacobian
    of (j(lam/mu), j((lam-1)/(mu-1))) equals
    j'(lam/mu) j'((lam-1)/(mu-1)) (mu - lam) / (mu^2 (mu - 1)^2) times ``scale``.
    """
    Q = FieldKind.rationals()
    jr = jfun_ratfunc(FunctionField(Q, "x"))
    jp = jr.derivative()
    lam, mu = BiPoly.lam(), BiPoly.mu()
    one = BiPoly.const(1)
    w1 = (lam, mu)
    w2 = (lam - one, mu - one)
    A = _compose_univariate(jr, *w1)
    B = _compose_univariate(jr, *w2)
    lhs = A.diff(0) * B.diff(1) - A.diff(1) * B.diff(0)
    factor = BiFrac((mu - lam) * scale, mu * mu * (mu - one) ** 2)
    rhs = _compose_univariate(jp, *w1) * _compose_univariate(jp, *w2) * factor
    return lhs == rhs


class Dual:
    """a + b eps with eps^2 = 0, over F_q as integers."""

    __slots__ = ("a", "b", "q")

    def __init__(self, a, b, q):
        self.a, self.b, self.q = a % q, b % q, q

    def _c(self, o):
        return o if isinstance(o, Dual) else Dual(o, 0, self.q)

    def __add__(self, o):
        o = self._c(o)
        return Dual(self.a + o.a, self.b + o.b, self.q)

    __radd__ = __add__

    def __sub__(self, o):
        o = self._c(o)
        return Dual(self.a - o.a, self.b - o.b, self.q)

    def __rsub__(self, o):
        return self._c(o) - self

    def __mul__(self, o):
        o = self._c(o)
        return Dual(self.a * o.a, self.a * o.b + self.b * o.a, self.q)

    __rmul__ = __mul__

    def __truediv__(self, o):
        o = self._c(o)
        inv = pow(o.a, -1, self.q)
        return Dual(self.a * inv, (self.b * o.a - self.a * o.b) * inv * inv, self.q)

    def __rtruediv__(self, o):
        return self._c(o) / self

    def __pow__(self, n):
        out = Dual(1, 0, self.q)
        for _ in range(n):
            out = out * self
        return out


def _jdual(x: Dual) -> Dual:
    return 256 * (x * x - x + 1) ** 3 / (x * x * (x - 1) ** 2)


def jacobian_pointwise(lam: int, mu: int, q: int, scale=1) -> bool:
    """The same identity at one point of F_q^2, derivatives taken with dual numbers."""

    def A(l, m):
        return _jdual(l / m)

    def B(l, m):
        return _jdual((l - 1) / (m - 1))

    L, M = Dual(lam, 1, q), Dual(mu, 1, q)
    l0, m0 = Dual(lam, 0, q), Dual(mu, 0, q)
    dA_l, dA_m = A(L, m0).b, A(l0, M).b
    dB_l, dB_m = B(L, m0).b, B(l0, M).b
    lhs = (dA_l * dB_m - dA_m * dB_l) % q
    w1 = Dual(lam * pow(mu, -1, q), 1, q)
    w2 = Dual((lam - 1) * pow(mu - 1, -1, q), 1, q)
    jp1, jp2 = _jdual(w1).b, _jdual(w2).b
    rhs = jp1 * jp2 * (mu - lam) * pow(mu * mu * (mu - 1) ** 2, -1, q) * scale
    return lhs == rhs % q


def jacobian_safe_point(lam: int, mu: int, q: int) -> bool:
    """Avoid poles: all arguments of j finite and away from 0 and 1."""
    if lam % q in (0, 1) or mu % q in (0, 1) or (lam - mu) % q == 0:
        return False
    return True


# ---------------------------------------------------------------------------
# Fiber experiment over F_q


def sixth_root_minus_one(q: int) -> int:
    """Smallest zeta in F_q with zeta^3 = -1 and zeta != -1."""
    for z in range(2, q):
        if pow(z, 3, q) == q - 1 and z != q - 1:
            return z
    raise FieldExtensionRequired(f"F_{q} has no primitive 6th root of unity")


@dataclass
class FiberTable:
    q: int
    zeta: int
    fibers: dict

    def fiber(self, lam: int, mu: int) -> list:
        return self.fibers[jmap_mod(lam, mu, self.q, self._jt)]

    def __post_init__(self):
        self._jt = _jtable(self.q)


def _jtable(q: int) -> list:
    jt = [None] * q
    for x in range(2, q):
        jt[x] = 256 * pow(x * x - x + 1, 3, q) * pow(x * x * (x - 1) ** 2 % q, -1, q) % q
    return jt


def jmap_mod(lam: int, mu: int, q: int, jt=None) -> tuple:
    jt = jt or _jtable(q)
    im = pow(mu, -1, q)
    return (
        jt[mu],
        jt[lam],
        jt[lam * im % q],
        jt[(lam - 1) * pow(mu - 1, -1, q) % q],
        jt[lam * (mu - 1) * pow(mu * (lam - 1), -1, q) % q],
    )


def fiber_table(q: int) -> FiberTable:
    """All points of P(F_q) grouped by their image under J."""
    if not is_prime(q) or q % 6 != 1:
        raise ValueError("q must be a prime congruent to 1 mod 6")
    zeta = sixth_root_minus_one(q)
    jt = _jtable(q)
    inv = [0] + [pow(a, -1, q) for a in range(1, q)]
    fibers = defaultdict(list)
    for lam in range(2, q):
        for mu in range(2, q):
            if lam == mu:
                continue
            im, imm1 = inv[mu], inv[mu - 1]
            key = (
                jt[mu],
                jt[lam],
                jt[lam * im % q],
                jt[(lam - 1) * imm1 % q],
                jt[lam * (mu - 1) * inv[mu * (lam - 1) % q] % q],
            )
            fibers[key].append((lam, mu))
    return FiberTable(q, zeta, dict(fibers))


def fiber_search(alpha: int, q: int, table: FiberTable | None = None) -> list:
    """Every (lam, mu) in P(F_q) with J(lam, mu) = J(alpha, zeta)."""
    table = table or fiber_table(q)
    zeta = table.zeta
    alpha %= q
    if alpha in (0, 1, zeta):
        raise ValueError("(alpha, zeta) must be a point of P")
    return sorted(table.fiber(alpha, zeta))


@dataclass
class FiberStats:
    q: int
    zeta: int
    alphas: int
    singletons: list
    fiber_sizes: dict

    @property
    def fraction(self) -> float:
        return len(self.singletons) / self.alphas if self.alphas else 0.0


def fiber_statistics(q: int) -> FiberStats:
    table = fiber_table(q)
    sizes = Counter()
    singles = []
    alphas = [a for a in range(2, q) if a != table.zeta]
    for a in alphas:
        n = len(fiber_search(a, q, table))
        sizes[n] += 1
        if n == 1:
            singles.append(a)
    return FiberStats(q, table.zeta, len(alphas), singles, dict(sorted(sizes.items())))


# ---------------------------------------------------------------------------
# Pencil of quadrics and the group G_S


def pencil_determinant(S: QuarticDP) -> Poly:
    """det(q_0 - s q_oo) = prod (lam_i - s) for the diagonal pencil."""
    kind = S.kind
    out = Poly.constant(kind, 1)
    for lam in S.lambdas:
        out = out * Poly(kind, [lam, -1])
    return out


def quadric_rank(S: QuarticDP, s) -> int:
    return sum(1 for lam in S.lambdas if lam != s)


@dataclass(frozen=True)
class SingularMember:
    parameter: object
    point: tuple
    rank: int


def pencil_singular(S: QuarticDP) -> list[SingularMember]:
    """The five singular members q_0 - lam_l q_oo: rank 4 cones with vertex e_l."""
    out = []
    for ell, lam in enumerate(S.lambdas):
        point = tuple(1 if i == ell else 0 for i in range(5))
        out.append(SingularMember(lam, point, quadric_rank(S, lam)))
    # the vertices e_0..e_4 are the coordinate points, hence span P^4
    assert all(m.rank == 4 for m in out)
    return out


@dataclass(frozen=True)
class DiagInvolution:
    """Diagonal sign change of P^4, stored with at most two minus signs."""

    signs: tuple

    def __post_init__(self):
        s = tuple(int(v) for v in self.signs)
        if len(s) != 5 or any(v not in (1, -1) for v in s):
            raise ValueError("five signs expected")
        if s.count(-1) > 2:
            s = tuple(-v for v in s)
        object.__setattr__(self, "signs", s)

    def __mul__(self, other: DiagInvolution) -> DiagInvolution:
        return DiagInvolution(tuple(a * b for a, b in zip(self.signs, other.signs)))

    def is_identity(self) -> bool:
        return all(v == 1 for v in self.signs)

    def eigenspaces(self) -> tuple[tuple, tuple]:
        plus = tuple(i for i, v in enumerate(self.signs) if v == 1)
        minus = tuple(i for i, v in enumerate(self.signs) if v == -1)
        return plus, minus

    def fixed_dims(self) -> tuple[int, int]:
        """Dimensions of the two eigenspaces, larger first."""
        plus, minus = self.eigenspaces()
        return tuple(sorted((len(plus), len(minus)), reverse=True))

    def fixes_hyperplane(self) -> bool:
        return self.fixed_dims() == (4, 1)

    def preserves(self, coeffs) -> bool:
        """The diagonal quadric sum c_i X_i^2 is mapped to itself."""
        if len(coeffs) != 5:
            raise ValueError("five coefficients expected")
        return all(c * (s * s) == c for c, s in zip(coeffs, self.signs))


def sigma_ell(ell: int) -> DiagInvolution:
    return DiagInvolution(tuple(-1 if i == ell else 1 for i in range(5)))


def GS_group(S: QuarticDP) -> list[DiagInvolution]:
    """The 2-torsion of the diagonal torus of PGL_5: 16 sign classes."""
    elems = []
    for signs in itertools.product((1, -1), repeat=5):
        g = DiagInvolution(signs)
        if g not in elems:
            elems.append(g)
    one = [S.kind.one()] * 5
    assert len(elems) == 16
    assert all(g.preserves(one) and g.preserves(S.lambdas) for g in elems)
    assert all(g * h in elems for g in elems for h in elems)
    return elems


def nf_GS(S: QuarticDP, g: DiagInvolution) -> NFData:
    """
    Non-rational fixed curves of g on S. Only the sigma_l fix a hyperplane;
    S meets it in the genus 1 curve double covering the pencil line,
    branched at the lam_i with i != l. Smaller eigenspaces meet S in points.
    """
    if g.is_identity():
        raise ValueError("identity has no fixed-locus invariant")
    if not g.fixes_hyperplane():
        return NFData()
    (ell,) = g.eigenspaces()[1]
    kind = S.kind
    R = Poly.constant(kind, 1)
    for i, lam in enumerate(S.lambdas):
        if i != ell:
            R = R * Poly(kind, [-lam, 1])
    return NFData("hyperelliptic", R, False, 1, tuple(R.c) + (False,))


def nf_profile_GS(S: QuarticDP) -> list[tuple[DiagInvolution, NFData]]:
    return [(g, nf_GS(S, g)) for g in GS_group(S) if not g.is_identity()]


def random_quartic(kind: FieldKind, rng, size: int = 50) -> QuarticDP:
    while True:
        lams = tuple(kind.random_element(rng, size) for _ in range(5))
        if len(set(lams)) == 5:
            return QuarticDP(lams)
