"""
PGL_2 over a base field or a function field K = k(t), the semidirect
product PGL_2(K) x| PGL_2(k), and the conjugation algorithms that bring
p-elementary subgroups to their normal forms.

Conventions
-----------
A ``MoebiusElt`` (a, b, c, d) is z -> (az + b)/(cz + d); the product
``A * B`` is the composite A o B (matrix product).

PGL_2(k) acts on K on the left by ``gamma . f = f o gamma^-1``. With this
action the semidirect law (M1, g1)(M2, g2) = (M1 . g1(M2), g1 g2) matches
composition of plane maps under

    (M, g)  <->  (z, t) -> (M(g(t))(z), g(t)),

see ``cremona.birmap.PlaneMap.from_semidirect``.
"""

from __future__ import annotations

from dataclasses import dataclass

from cremona.errors import (
    CocycleError,
    FieldExtensionRequired,
    GroupShapeError,
    MissingRootOfUnity,
)
from cremona.exactfield import INF, FieldKind, FunctionField, Poly, RatFunc, root_in


def _mat_mul(A, B):
    a, b, c, d = A
    e, f, g, h = B
    return (a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h)


def _mat_pow(A, n: int, one):
    zero = one * 0
    result = (one, zero, zero, one)
    base = A
    while n:
        if n & 1:
            result = _mat_mul(result, base)
        base = _mat_mul(base, base)
        n >>= 1
    return result


def _is_scalar(A) -> bool:
    a, b, c, d = A
    return not b and not c and a == d


class MoebiusElt:
    """A homography z -> (az + b)/(cz + d), first nonzero entry scaled to 1."""

    __slots__ = ("domain", "a", "b", "c", "d")

    def __init__(self, a, b, c, d, domain=None):
        if domain is None:
            domain = next(x for x in (a, b, c, d) if hasattr(x, "kind") or hasattr(x, "field"))
            domain = getattr(domain, "kind", None) or domain.field
        a, b, c, d = (domain(v) for v in (a, b, c, d))
        if not (a * d - b * c):
            raise ValueError("singular homography")
        lead = next(v for v in (a, b, c, d) if v)
        if lead != 1:
            inv = 1 / lead
            a, b, c, d = a * inv, b * inv, c * inv, d * inv
        self.domain = domain
        self.a, self.b, self.c, self.d = a, b, c, d

    @classmethod
    def identity(cls, domain) -> MoebiusElt:
        return cls(1, 0, 0, 1, domain)

    @classmethod
    def from_matrix(cls, A, domain) -> MoebiusElt:
        return cls(*A, domain)

    def matrix(self):
        return (self.a, self.b, self.c, self.d)

    def det(self):
        return self.a * self.d - self.b * self.c

    def __mul__(self, other: MoebiusElt) -> MoebiusElt:
        return MoebiusElt(*_mat_mul(self.matrix(), other.matrix()), self.domain)

    def inverse(self) -> MoebiusElt:
        return MoebiusElt(self.d, -self.b, -self.c, self.a, self.domain)

    def __pow__(self, n: int) -> MoebiusElt:
        if n < 0:
            return self.inverse() ** (-n)
        return MoebiusElt(*_mat_pow(self.matrix(), n, self.domain.one()), self.domain)

    def conjugate_by(self, g: MoebiusElt) -> MoebiusElt:
        """g o self o g^-1."""
        return g * self * g.inverse()

    def is_identity(self) -> bool:
        return not self.b and not self.c and self.a == self.d

    def __call__(self, z):
        a, b, c, d = self.matrix()
        if z is INF:
            return a / c if c else INF
        den = c * z + d
        if not den:
            return INF
        return (a * z + b) / den

    def as_ratfunc(self, field: FunctionField) -> RatFunc:
        """The homography as an element (at + b)/(ct + d) of k(t)."""
        base = field.base
        num = Poly(base, [self.b, self.a])
        den = Poly(base, [self.d, self.c])
        return RatFunc(field, num, den)

    def substitute(self, gamma: MoebiusElt) -> MoebiusElt:
        """Entries composed with gamma: M^gamma(t) = M(gamma(t))."""
        if gamma.is_identity():
            return self
        g = gamma.as_ratfunc(self.domain)
        return MoebiusElt(*(x.compose(g) for x in self.matrix()), self.domain)

    def __eq__(self, other):
        return isinstance(other, MoebiusElt) and self.matrix() == other.matrix()

    def __hash__(self):
        return hash(self.matrix())

    def __repr__(self):
        a, b, c, d = self.matrix()
        return f"Moebius[{a}, {b}; {c}, {d}]"

    def to_str(self, var: str = "z") -> str:
        """Rational expression in ``var``, denominators cleared over k(t)."""
        entries = self.matrix()
        if isinstance(self.domain, FunctionField):
            entries = _clear_denominators(entries)
            lead = (entries[2] or entries[3]).num.lc()
            tvar = self.domain.var_name
            strs = [(e * (1 / lead)).to_str(tvar) for e in entries]
        else:
            lead = entries[2] or entries[3]
            strs = [str(e / lead) for e in entries]
        a, b, c, d = strs
        num = _linear_str(a, b, var)
        den = _linear_str(c, d, var)
        if den == "1":
            return num
        if not _is_product(num) or num.startswith("-"):
            num = f"({num})"
        if not den.replace("^", "").isalnum():
            den = f"({den})"
        return f"{num}/{den}"


def _is_product(s: str) -> bool:
    """No top-level sum or difference."""
    depth = 0
    for i, ch in enumerate(s):
        depth += ch == "("
        depth -= ch == ")"
        if depth == 0 and ch in "+-" and i > 0:
            return False
    return True


def _linear_str(p: str, q: str, var: str) -> str:
    parts = []
    if p != "0":
        if p == "1":
            parts.append(var)
        elif p == "-1":
            parts.append("-" + var)
        else:
            parts.append(f"{p}*{var}" if _is_product(p) else f"({p})*{var}")
    if q != "0" or not parts:
        if parts and q.startswith("-") and _is_product(q):
            parts.append("- " + q[1:])
        else:
            parts.append(("+ " if parts else "") + q)
    return " ".join(parts)


def _clear_denominators(entries):
    from cremona.exactfield import poly_gcd

    L = entries[0].den
    for e in entries[1:]:
        L = L * e.den // poly_gcd(L, e.den)
    polys = [e.num * (L // e.den) for e in entries]
    g = polys[0]
    for q in polys[1:]:
        g = poly_gcd(g, q) if q else g
    field = entries[0].field
    one = Poly.constant(field.base, 1)
    polys = [q // g for q in polys]
    return [RatFunc._raw(field, q, one) for q in polys]


def projective_order(A: MoebiusElt, bound: int) -> int | None:
    """Least n <= bound with A^n scalar, or None when no such n exists."""
    if bound < 1:
        raise ValueError("bound must be >= 1")
    one = A.domain.one()
    M = (one, one * 0, one * 0, one)
    for n in range(1, bound + 1):
        M = _mat_mul(M, A.matrix())
        if _is_scalar(M):
            return n
    return None


def moebius_through(src, dst, domain) -> MoebiusElt:
    """The homography sending the three points src[i] to dst[i] (INF allowed)."""

    def to_standard(pts):
        # sends pts to (0, INF, 1)
        z1, z2, z3 = pts
        one, zero = domain.one(), domain.zero()
        if z1 is INF:
            return MoebiusElt(zero, z3 - z2, one, -z2, domain)
        if z2 is INF:
            return MoebiusElt(one, -z1, zero, z3 - z1, domain)
        if z3 is INF:
            return MoebiusElt(one, -z1, one, -z2, domain)
        return MoebiusElt(z3 - z2, -z1 * (z3 - z2), z3 - z1, -z2 * (z3 - z1), domain)

    return to_standard(dst).inverse() * to_standard(src)


# ---------------------------------------------------------------------------
# Conjugation in PGL_2


def _eigenvector(A, lam):
    a, b, c, d = A
    if b or a != lam:
        v = (-b, a - lam) if (b or a - lam) else None
        if v is not None:
            return v
    return (d - lam, -c)


def _normalize_vec(v):
    lead = v[0] if v[0] else v[1]
    inv = 1 / lead
    return (v[0] * inv, v[1] * inv)


def _root_of_unity(domain, p: int):
    r = domain.root_of_unity(p)
    if r is None:
        raise MissingRootOfUnity(f"no primitive {p}-th root of unity in the base field")
    return r


def conjugate_to_Cp(A: MoebiusElt, p: int) -> tuple[MoebiusElt, int]:
    """
    For A of odd prime order p, returns (g, e) with g A g^-1 = (z -> zeta^e z),
    zeta the field's chosen primitive p-th root of unity.

    A^p = delta I forces delta^2 = det(A)^p, so delta * det(A)^((1-p)/2) is a
    p-th root of delta and no root extraction is needed.
    """
    if p % 2 == 0:
        raise ValueError("conjugate_to_Cp needs an odd prime")
    dom = A.domain
    M = A.matrix()
    Ap = _mat_pow(M, p, dom.one())
    if not _is_scalar(Ap) or _is_scalar(M):
        raise GroupShapeError(f"element does not have order {p}")
    delta = Ap[0]
    det = A.det()
    r = delta * det ** ((1 - p) // 2)
    if r**p != delta:
        raise FieldExtensionRequired("scalar of A^p is not a p-th power")
    B = tuple(x / r for x in M)
    zeta = _root_of_unity(dom, p)
    eig = []
    for i in range(p):
        lam = zeta**i
        a, b, c, d = B
        if not ((a - lam) * (d - lam) - b * c):
            eig.append((i, _normalize_vec(_eigenvector(B, lam))))
    if len(eig) != 2:
        raise GroupShapeError("element is not diagonalizable with p-th root eigenvalues")
    # eigenvector with a nonzero first coordinate first, so diagonal input gives g = 1
    eig.sort(key=lambda e: (not e[1][0], e[0]))
    (i1, v1), (i2, v2) = eig
    g_inv = MoebiusElt(v1[0], v2[0], v1[1], v2[1], dom)
    return g_inv.inverse(), (i1 - i2) % p


def diagonalize_involution(A: MoebiusElt) -> MoebiusElt | None:
    """g with g A g^-1 = (z -> -z), or None if A has no rational fixed points."""
    dom = A.domain
    M = A.matrix()
    A2 = _mat_mul(M, M)
    if not _is_scalar(A2) or _is_scalar(M):
        raise GroupShapeError("element is not an involution")
    s = root_in(dom, A2[0], 2)
    if s is None:
        return None
    v1 = _normalize_vec(_eigenvector(M, s))
    v2 = _normalize_vec(_eigenvector(M, -s))
    if not v1[0]:
        v1, v2 = v2, v1
    return MoebiusElt(v1[0], v2[0], v1[1], v2[1], dom).inverse()


def conjugate_to_inversion(A: MoebiusElt) -> tuple[MoebiusElt, object]:
    """
    (g, delta) with g A g^-1 = (z -> delta/z), using the basis (v, Av) for the
    first of e1, e2, e1 + e2 that is not an eigenvector of A.
    """
    dom = A.domain
    M = A.matrix()
    A2 = _mat_mul(M, M)
    if _is_scalar(M):
        raise GroupShapeError("scalar element")
    if not _is_scalar(A2):
        raise GroupShapeError("element is not an involution")
    a, b, c, d = M
    if c:
        M = (a / c, b / c, dom.one(), d / c)
    elif a:
        M = (dom.one(), b / a, dom.zero(), d / a)
    a, b, c, d = M
    delta = a * a + b * c
    one, zero = dom.one(), dom.zero()
    for v in ((one, zero), (zero, one), (one, one)):
        Av = (a * v[0] + b * v[1], c * v[0] + d * v[1])
        if v[0] * Av[1] - v[1] * Av[0]:
            P = MoebiusElt(v[0], Av[0], v[1], Av[1], dom)
            return P.inverse(), delta
    raise AssertionError("no cyclic vector for a nonscalar involution")


def klein_to_Vdelta(G4) -> tuple[MoebiusElt, object]:
    """
    (g, delta) with g G4 g^-1 = {1, -z, delta/z, -delta/z}.

    The first element in input order with rational fixed points is sent to
    z -> -z; its partners then become z -> +-delta/z.
    """
    G4 = list(G4)
    if len(set(G4)) != 4:
        raise GroupShapeError("a Klein four-group has exactly 4 elements")
    dom = G4[0].domain
    ident = MoebiusElt.identity(dom)
    if ident not in G4 or any(not (g * g).is_identity() for g in G4):
        raise GroupShapeError("not a group of exponent 2")
    if any(g * h not in G4 for g in G4 for h in G4):
        raise GroupShapeError("not closed under composition")
    nontrivial = [g for g in G4 if not g.is_identity()]
    minus = MoebiusElt(1, 0, 0, -1, dom)
    if minus in nontrivial:
        anti = [h for h in nontrivial if not h.a and not h.d]
        if len(anti) == 2:
            return ident, 1 / anti[0].c
    for sigma in nontrivial:
        if sigma == minus:
            g = ident
        else:
            g = diagonalize_involution(sigma)
            if g is None:
                continue
        images = [h.conjugate_by(g) for h in nontrivial]
        anti = [h for h in images if not h.a and not h.d]
        if minus not in images or len(anti) != 2:
            raise GroupShapeError("group is not a Klein four-group")
        # normalized antidiagonal (0, 1, 1/delta, 0)
        return g, 1 / anti[0].c
    raise FieldExtensionRequired("no element of the Klein group has rational fixed points")


def same_square_class(a, b, domain) -> bool:
    return root_in(domain, domain(a) / domain(b), 2) is not None


# ---------------------------------------------------------------------------
# Action of PGL_2(k) on K = k(t)


def act(gamma: MoebiusElt, f: RatFunc) -> RatFunc:
    """gamma . f = f o gamma^-1."""
    if gamma.is_identity():
        return f
    return f.compose(gamma.inverse().as_ratfunc(f.field))


def act_on_moebius(gamma: MoebiusElt, M: MoebiusElt) -> MoebiusElt:
    if gamma.is_identity():
        return M
    return M.substitute(gamma.inverse())


def hilbert90_cyclic(lam: RatFunc, sigma: MoebiusElt, p: int, *, step: int = 1, bound: int | None = None) -> RatFunc:
    """
    mu with lam = mu^-1 . sigma(mu), for sigma of order p on K and lam of
    norm 1, via mu = theta^-1 where
    theta = sum_i (prod_{j<i} sigma^j(lam)) sigma^i(c), c = t^(step*k).
    """
    field = lam.field
    if not (sigma**p).is_identity() or sigma.is_identity():
        raise GroupShapeError(f"sigma does not have order {p}")
    conj = [lam]
    for _ in range(p - 1):
        conj.append(act(sigma, conj[-1]))
    norm = field.one()
    for x in conj:
        norm = norm * x
    if norm != 1:
        raise CocycleError("lam does not have norm 1")
    partial = [field.one()]
    for x in conj[:-1]:
        partial.append(partial[-1] * x)
    if bound is None:
        bound = 4 * lam.degree + 4
    t = field.gen()
    for k in range(bound + 1):
        c = t ** (step * k)
        theta = field.zero()
        cur = c
        for i in range(p):
            theta = theta + partial[i] * cur
            cur = act(sigma, cur)
        if theta:
            mu = theta.inverse()
            mu = mu / mu.num.lc()
            assert lam * mu == act(sigma, mu)
            return mu
    raise CocycleError(f"no nonzero character sum among t^k, k <= {bound}; raise the bound")


def V1_elements(domain):
    """[1, t -> -t, t -> 1/t, t -> -1/t] as homographies over ``domain``."""
    return [
        MoebiusElt(1, 0, 0, 1, domain),
        MoebiusElt(1, 0, 0, -1, domain),
        MoebiusElt(0, 1, 1, 0, domain),
        MoebiusElt(0, -1, 1, 0, domain),
    ]


@dataclass
class CocycleV1:
    """A map V_1 -> K^*; ``values`` is keyed by the homographies of V1_elements."""

    values: dict

    @property
    def field(self) -> FunctionField:
        return next(iter(self.values.values())).field

    def check(self) -> bool:
        V = list(self.values)
        for s in V:
            for u in V:
                if self.values[s * u] != self.values[s] * act(s, self.values[u]):
                    return False
        return True

    @classmethod
    def coboundary(cls, mu: RatFunc) -> CocycleV1:
        V = V1_elements(mu.field.base)
        return cls({s: act(s, mu) / mu for s in V})


def trivialize_cocycle_V1(c: CocycleV1) -> RatFunc:
    """mu with c(sigma) = mu^-1 sigma(mu) for every sigma in V_1."""
    if len(c.values) != 4 or not c.check():
        raise CocycleError("cocycle identity fails")
    field = c.field
    one, a, b, ab = V1_elements(field.base)
    lam_a = c.values[a]
    mu1 = hilbert90_cyclic(lam_a, a, 2)
    # cohomologous cocycle with value 1 on a; its value on b is then even
    lam_b = c.values[b] * mu1 / act(b, mu1)
    assert act(a, lam_b) == lam_b
    mu2 = hilbert90_cyclic(lam_b, b, 2, step=2)
    mu = mu1 * mu2
    for s, v in c.values.items():
        assert v == act(s, mu) / mu
    return mu


# ---------------------------------------------------------------------------
# Semidirect product PGL_2(K) x| PGL_2(k)


@dataclass(frozen=True)
class SemidirectElt:
    M: MoebiusElt  # over K = k(t)
    g: MoebiusElt  # over k

    @classmethod
    def identity(cls, field: FunctionField) -> SemidirectElt:
        return cls(MoebiusElt.identity(field), MoebiusElt.identity(field.base))

    @classmethod
    def fiberwise(cls, M: MoebiusElt) -> SemidirectElt:
        return cls(M, MoebiusElt.identity(M.domain.base))

    @classmethod
    def base_only(cls, g: MoebiusElt, field: FunctionField) -> SemidirectElt:
        return cls(MoebiusElt.identity(field), g)

    def __mul__(self, other: SemidirectElt) -> SemidirectElt:
        return SemidirectElt(self.M * act_on_moebius(self.g, other.M), self.g * other.g)

    def inverse(self) -> SemidirectElt:
        gi = self.g.inverse()
        return SemidirectElt(act_on_moebius(gi, self.M.inverse()), gi)

    def conjugate(self, h: SemidirectElt) -> SemidirectElt:
        """h self h^-1."""
        return h * self * h.inverse()

    def is_identity(self) -> bool:
        return self.M.is_identity() and self.g.is_identity()

    def __pow__(self, n: int) -> SemidirectElt:
        out = SemidirectElt.identity(self.M.domain)
        base = self if n >= 0 else self.inverse()
        for _ in range(abs(n)):
            out = out * base
        return out


def conjugate_group(h: SemidirectElt, G) -> list[SemidirectElt]:
    hi = h.inverse()
    return [h * x * hi for x in G]


def Cp_times_Cp(field: FunctionField, p: int) -> list[SemidirectElt]:
    """[(z -> a z, t -> b t) : a, b in mu_p]."""
    k = field.base
    zeta = _root_of_unity(k, p)
    out = []
    for i in range(p):
        for j in range(p):
            out.append(SemidirectElt(MoebiusElt(zeta**i, 0, 0, 1, field), MoebiusElt(zeta**j, 0, 0, 1, k)))
    return out


def Vdelta_elements(delta: RatFunc) -> list[MoebiusElt]:
    F = delta.field
    return [
        MoebiusElt(1, 0, 0, 1, F),
        MoebiusElt(-1, 0, 0, 1, F),
        MoebiusElt(0, delta, 1, 0, F),
        MoebiusElt(0, -delta, 1, 0, F),
    ]


def Vdelta_times_V1(delta: RatFunc) -> list[SemidirectElt]:
    return [SemidirectElt(M, g) for M in Vdelta_elements(delta) for g in V1_elements(delta.field.base)]


def _split(G):
    G = list(G)
    kernel = [x for x in G if x.g.is_identity()]
    images = []
    for x in G:
        if x.g not in images:
            images.append(x.g)
    return kernel, images


def _check_elementary(G, p: int, r: int):
    """Cheap shape check; the group law itself is certified by the final set equality."""
    ident = SemidirectElt.identity(G[0].M.domain)
    S = set(G)
    if len(S) != p**r or ident not in S:
        raise GroupShapeError(f"expected {p**r} distinct elements including the identity")


def _certify(G, gens, images, target, p: int) -> bool:
    """
    h G h^-1 = target, given images[i] = h gens[i] h^-1: the gens span G
    and their images lie in the group ``target``; h is a bijection.
    """
    span = [SemidirectElt.identity(G[0].M.domain)]
    for g in gens:
        layer, cur = list(span), g
        for _ in range(p - 1):
            layer += [x * cur for x in span]
            cur = cur * g
        span = layer
    return set(span) == set(G) and all(x in target for x in images)


def normalize_rank2_odd(G, p: int) -> SemidirectElt:
    """
    Conjugator h with h G h^-1 = C_p x C_p, for G = (Z/p)^2 whose kernel and
    image in PGL_2(k) are both cyclic of order p.
    """
    G = list(G)
    _check_elementary(G, p, 2)
    field = G[0].M.domain
    k = field.base
    kernel, images = _split(G)
    if len(kernel) != p or len(images) != p:
        raise GroupShapeError("kernel and image must both have order p")
    gamma0 = next(g for g in images if not g.is_identity())
    g1, _ = conjugate_to_Cp(gamma0, p)
    h = SemidirectElt.base_only(g1, field)
    kgen = next(x for x in kernel if not x.is_identity())
    A = kgen.conjugate(h).M
    g2, _ = conjugate_to_Cp(A, p)
    h2 = SemidirectElt.fiberwise(g2)
    sigma = gamma0.conjugate_by(g1)
    lgen = next(x for x in G if x.g == gamma0)
    lift = lgen.conjugate(h2 * h)
    M = lift.M
    if M.b or M.c:
        raise GroupShapeError("lift does not commute with the kernel")
    lam = M.a / M.d
    mu = hilbert90_cyclic(lam, sigma, p)
    h3 = SemidirectElt.fiberwise(MoebiusElt(mu, 0, 0, 1, field))
    conj = h3 * h2 * h
    images = [SemidirectElt.fiberwise(A.conjugate_by(g2)).conjugate(h3), lift.conjugate(h3)]
    if not _certify(G, [kgen, lgen], images, set(Cp_times_Cp(field, p)), p):
        raise GroupShapeError("normalization did not reach C_p x C_p")
    return conj


def normalize_rank4_two(G) -> tuple[SemidirectElt, RatFunc]:
    """
    (h, delta) with h G h^-1 = V_delta x V_1 and delta invariant under V_1,
    for G = (Z/2)^4 with Klein kernel and Klein image.
    """
    G = list(G)
    _check_elementary(G, 2, 4)
    field = G[0].M.domain
    k = field.base
    kernel, images = _split(G)
    if len(kernel) != 4 or len(images) != 4:
        raise GroupShapeError("kernel and image must both be Klein four-groups")

    # image -> V_1 over k
    g1, d1 = klein_to_Vdelta(images)
    if root_in(k, d1, 2) is None:
        d1 = -d1
    s = root_in(k, d1, 2)
    if s is None:
        raise FieldExtensionRequired("image group needs a square root outside the base field")
    g1 = MoebiusElt(1 / s, 0, 0, 1, k) * g1
    h = SemidirectElt.base_only(g1, field)

    # kernel -> V_zeta over K
    kern1 = [x.conjugate(h).M for x in kernel]
    g2, zeta = klein_to_Vdelta(kern1)
    h2 = SemidirectElt.fiberwise(g2)
    h21 = h2 * h

    _, a, b, ab = V1_elements(k)
    g1_inv = g1.inverse()
    lifts, originals = {}, {}
    for sigma in (a, b):
        source = sigma.conjugate_by(g1_inv)
        over = [(x.conjugate(h21), x) for x in G if x.g == source]
        cands = [pair for pair in over if not pair[0].M.b and not pair[0].M.c]
        if not cands:
            raise GroupShapeError("no diagonal lift over V_1")
        # prefer the lift z -> z when present, so normal-form input is left alone
        cands.sort(key=lambda pair: not pair[0].M.is_identity())
        lifts[sigma], originals[sigma] = cands[0]
    lifts[ab] = lifts[a] * lifts[b]
    lam = {MoebiusElt.identity(k): field.one()}
    for sigma, x in lifts.items():
        val = x.M.a / x.M.d
        if val * val != zeta / act(sigma, zeta):
            raise GroupShapeError("lift does not commute with the kernel")
        lam[sigma] = val
    mu = trivialize_cocycle_V1(CocycleV1(lam))
    h3 = SemidirectElt.fiberwise(MoebiusElt(mu, 0, 0, 1, field))
    delta = zeta * mu * mu
    for sigma in (a, b):
        if act(sigma, delta) != delta:
            raise GroupShapeError("delta is not V_1-invariant; the group is not abelian")
    conj = h3 * h2 * h
    kgens = [x for x in kernel if not x.is_identity()][:2]
    gens = kgens + [originals[a], originals[b]]
    images = [SemidirectElt.fiberwise(kern1[kernel.index(x)].conjugate_by(g2)).conjugate(h3) for x in kgens]
    images += [lifts[a].conjugate(h3), lifts[b].conjugate(h3)]
    if not _certify(G, gens, images, set(Vdelta_times_V1(delta)), 2):
        raise GroupShapeError("normalization did not reach V_delta x V_1")
    return conj, delta


def is_field(domain) -> bool:
    return isinstance(domain, (FieldKind, FunctionField))
