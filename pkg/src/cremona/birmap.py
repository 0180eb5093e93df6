"""
Plane birational maps of de Jonquieres shape

    (x, y) -> (gamma(x), M(x)(y)),

with gamma a homography of the x-line and M a homography in y whose
coefficients lie in k(x); finite elementary abelian groups of such maps;
and the normalized fixed locus of an involution.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from cremona.errors import ClosureExceeded, NonCommuting, NotAnInvolution, WrongOrder
from cremona.exactfield import INF, FunctionField, Poly, yun_squarefree
from cremona.moebius import MoebiusElt, SemidirectElt


class PlaneMap:
    """(x, y) -> (gamma(x), M(x)(y)); ``M`` lives over k(x), ``gamma`` over k."""

    __slots__ = ("gamma", "M")

    def __init__(self, gamma: MoebiusElt, M: MoebiusElt):
        if not isinstance(M.domain, FunctionField) or M.domain.base != gamma.domain:
            raise TypeError("M must be defined over k(x) where gamma is defined over k")
        self.gamma = gamma
        self.M = M

    @property
    def field(self) -> FunctionField:
        return self.M.domain

    @property
    def base(self):
        return self.gamma.domain

    @classmethod
    def identity(cls, field: FunctionField) -> PlaneMap:
        return cls(MoebiusElt.identity(field.base), MoebiusElt.identity(field))

    @classmethod
    def base_map(cls, gamma: MoebiusElt, field: FunctionField) -> PlaneMap:
        """(x, y) -> (gamma(x), y)."""
        return cls(gamma, MoebiusElt.identity(field))

    @classmethod
    def fiber_map(cls, M: MoebiusElt) -> PlaneMap:
        """(x, y) -> (x, M(x)(y))."""
        return cls(MoebiusElt.identity(M.domain.base), M)

    @classmethod
    def from_semidirect(cls, s: SemidirectElt) -> PlaneMap:
        return cls(s.g, s.M.substitute(s.g))

    def to_semidirect(self) -> SemidirectElt:
        return SemidirectElt(self.M.substitute(self.gamma.inverse()), self.gamma)

    def compose(self, other: PlaneMap) -> PlaneMap:
        """self o other."""
        return PlaneMap(self.gamma * other.gamma, self.M.substitute(other.gamma) * other.M)

    __mul__ = compose

    def inverse(self) -> PlaneMap:
        gi = self.gamma.inverse()
        return PlaneMap(gi, self.M.substitute(gi).inverse())

    def __pow__(self, n: int) -> PlaneMap:
        out = PlaneMap.identity(self.field)
        base = self if n >= 0 else self.inverse()
        for _ in range(abs(n)):
            out = out * base
        return out

    def conjugate_by(self, h: PlaneMap) -> PlaneMap:
        """h o self o h^-1."""
        return h * self * h.inverse()

    def is_identity(self) -> bool:
        return self.gamma.is_identity() and self.M.is_identity()

    def order(self, bound: int = 64) -> int | None:
        f = self
        for n in range(1, bound + 1):
            if f.is_identity():
                return n
            f = f * self
        return None

    def __call__(self, point):
        """Image of an affine point (x, y), or None where the fibre map is undefined or degenerate."""
        x, y = point
        X = self.gamma(x)
        entries = []
        for e in self.M.matrix():
            v = e(x)
            if v is INF:
                return None
            entries.append(v)
        if not entries[0] * entries[3] - entries[1] * entries[2]:
            return None
        return X, MoebiusElt(*entries, self.base)(y)

    def __eq__(self, other):
        return isinstance(other, PlaneMap) and self.gamma == other.gamma and self.M == other.M

    def __hash__(self):
        return hash((self.gamma, self.M))

    def to_str(self) -> str:
        xv = self.field.var_name
        return f"({self.gamma.to_str(xv)}, {self.M.to_str('y')})"

    def __repr__(self):
        return f"PlaneMap{self.to_str()}"


def is_diagonal_shape(f: PlaneMap) -> bool:
    """True if f is (x, y) -> (a x, b y) with constants a, b."""
    g, M = f.gamma, f.M
    if g.b or g.c or M.b or M.c:
        return False
    return (M.a / M.d).is_constant()


def sigma_f(f, p: int, field: FunctionField) -> PlaneMap:
    """(x, y) -> (x, y f(x^p)) for f in k(t)."""
    fx = field(f).compose(field.gen() ** p)
    return PlaneMap.fiber_map(MoebiusElt(fx, 0, 0, 1, field))


def diagonal_map(a, b, field: FunctionField) -> PlaneMap:
    """(x, y) -> (a x, b y)."""
    return PlaneMap(MoebiusElt(a, 0, 0, 1, field.base), MoebiusElt(b, 0, 0, 1, field))


@dataclass
class ElementaryGroup:
    """A verified (Z/p)^r: ``elements[i]`` is the product of generators by the base-p digits of i."""

    p: int
    r: int
    elements: list
    generators: list

    @property
    def order(self) -> int:
        return len(self.elements)

    def index(self, g: PlaneMap) -> int:
        return self.elements.index(g)

    def exponents(self, i: int) -> tuple:
        digits = []
        for _ in range(self.r):
            i, d = divmod(i, self.p)
            digits.append(d)
        return tuple(digits)

    def conjugate(self, h: PlaneMap) -> ElementaryGroup:
        hi = h.inverse()
        return ElementaryGroup(
            self.p,
            self.r,
            [h * g * hi for g in self.elements],
            [h * g * hi for g in self.generators],
        )

    def as_semidirect(self) -> list[SemidirectElt]:
        return [g.to_semidirect() for g in self.elements]

    def __contains__(self, g) -> bool:
        return g in self.elements


def closure(gens, p: int, max_rank: int = 4) -> ElementaryGroup:
    """
    The group generated by ``gens`` after checking that it is elementary
    abelian of exponent p; redundant generators are dropped.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("closure needs at least one generator")
    for g in gens:
        if g.is_identity() or not (g**p).is_identity():
            raise WrongOrder(g, p)
    for i, g in enumerate(gens):
        for h in gens[i + 1 :]:
            if g * h != h * g:
                raise NonCommuting((g, h))
    elements = [PlaneMap.identity(gens[0].field)]
    basis = []
    members = set(elements)
    for g in gens:
        if g in members:
            continue
        if len(basis) == max_rank:
            raise ClosureExceeded(f"generated group has rank above {max_rank}")
        basis.append(g)
        layer = elements
        powers = [g**j for j in range(1, p)]
        new = list(elements)
        for gj in powers:
            new.extend(e * gj for e in layer)
        elements = new
        members = set(elements)
    if len(members) != p ** len(basis):
        raise AssertionError("closure produced repeated elements")
    return ElementaryGroup(p, len(basis), elements, basis)


# ---------------------------------------------------------------------------
# Normalized fixed locus


@dataclass(frozen=True)
class NFData:
    """Normalized fixed locus: empty, or a hyperelliptic curve given by its branch data."""

    kind: str = "empty"
    branch: Poly | None = field(default=None, compare=False)
    infinity: bool = False
    genus: int = 0
    branch_key: tuple = ()

    @property
    def is_empty(self) -> bool:
        return self.kind == "empty"

    @property
    def branch_count(self) -> int:
        return 0 if self.branch is None else self.branch.degree + int(self.infinity)

    def describe(self) -> str:
        if self.is_empty:
            return "empty"
        inf = " + oo" if self.infinity else ""
        return f"genus {self.genus}, branched over roots of {self.branch.to_str('x')}{inf}"


EMPTY = NFData()


def hyperelliptic_from_discriminant(delta) -> NFData:
    """Branch data of Y^2 = delta(x), delta a nonzero element of k(x)."""
    R = Poly.constant(delta.field.base, 1)
    for g, e in yun_squarefree(delta.num * delta.den):
        if e % 2:
            R = R * g
    infinity = R.degree % 2 == 1
    b = R.degree + int(infinity)
    genus = (b - 1) // 2 if b else 0
    if genus < 1:
        return EMPTY
    return NFData("hyperelliptic", R, infinity, genus, tuple(R.c) + (infinity,))


def fixed_curve(sigma: PlaneMap) -> NFData:
    """Normalized fixed locus of an involution of de Jonquieres shape."""
    if sigma.is_identity() or not (sigma * sigma).is_identity():
        raise NotAnInvolution("fixed_curve needs an involution")
    if not sigma.gamma.is_identity():
        # the fixed points lie over the two fixed points of gamma: rational fibres
        return EMPTY
    a, b, c, d = sigma.M.matrix()
    if not c:
        # fixed locus is y = oo and one section: rational curves
        return EMPTY
    delta = (d - a) ** 2 + 4 * b * c
    return hyperelliptic_from_discriminant(delta)


def nf_profile(G: ElementaryGroup) -> list[tuple[int, NFData]]:
    """(index, NF) for every non-identity element of an elementary 2-group."""
    if G.p != 2:
        raise ValueError("normalized fixed loci are computed for involutions only")
    return [(i, fixed_curve(g)) for i, g in enumerate(G.elements) if not g.is_identity()]


def profile_signature(profile) -> list[tuple[int, int]]:
    """Sorted (genus, branch count) pairs of the nonempty entries."""
    return sorted((nf.genus, nf.branch_count) for _, nf in profile if not nf.is_empty)
