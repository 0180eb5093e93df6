"""
Groups of type c1 and their complete conjugacy invariant.

A finite set I of k minus {2, -2} gives the group G_I generated by

    (x, y) -> (-x, y),  (1/x, y),  (x, -y),  (x, P(x)/y),
    P(x) = prod_{a in I} (x^2 + x^-2 - a).

G_I and G_J are conjugate exactly when I and J differ by one of the six
homographies of the u-line permuting {2, -2, oo}, u = x^2 + x^-2.
"""

from __future__ import annotations

from dataclasses import dataclass

from cremona.birmap import ElementaryGroup, PlaneMap, closure, nf_profile
from cremona.errors import FieldExtensionRequired, GroupShapeError, NotNormalCoordinates
from cremona.exactfield import (
    INF,
    FieldKind,
    FunctionField,
    Poly,
    palindromic_reduce,
    rewrite_in_invariant,
    roots_in_k,
    yun_squarefree,
)
from cremona.moebius import MoebiusElt, SemidirectElt, moebius_through, normalize_rank4_two


@dataclass(frozen=True)
class IndexSet:
    """A finite subset of k avoiding 2 and -2, stored sorted."""

    kind: FieldKind
    elements: tuple = ()

    def __post_init__(self):
        elems = [self.kind(a) for a in self.elements]
        if len(set(elems)) != len(elems):
            raise ValueError("index set elements must be distinct")
        if any(a == 2 or a == -2 for a in elems):
            raise ValueError("index set must avoid 2 and -2")
        object.__setattr__(self, "elements", tuple(sorted(elems)))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def sort_key(self):
        return (len(self.elements), [a.sort_key() for a in self.elements])

    def __str__(self):
        return "{" + ", ".join(str(a) for a in self.elements) + "}"


@dataclass(frozen=True)
class ConjClassC1:
    canonical: IndexSet
    orbit: tuple

    def __str__(self):
        return str(self.canonical)


def P_of(I: IndexSet, field: FunctionField):
    x = field.gen()
    s = x * x + 1 / (x * x)
    P = field.one()
    for a in I:
        P = P * (s - a)
    return P


def c1_generators(I: IndexSet, var: str = "x") -> list[PlaneMap]:
    k = I.kind
    K = FunctionField(k, var)
    P = P_of(I, K)
    return [
        PlaneMap.base_map(MoebiusElt(-1, 0, 0, 1, k), K),
        PlaneMap.base_map(MoebiusElt(0, 1, 1, 0, k), K),
        PlaneMap.fiber_map(MoebiusElt(-1, 0, 0, 1, K)),
        PlaneMap.fiber_map(MoebiusElt(0, P, 1, 0, K)),
    ]


def build_GI(I: IndexSet) -> ElementaryGroup:
    G = closure(c1_generators(I), 2, 4)
    assert G.order == 16
    return G


def s3_elements(k: FieldKind) -> list[MoebiusElt]:
    """The six homographies of the u-line permuting {2, -2, oo}; identity first."""
    if k.characteristic == 2:
        raise ValueError("characteristic 2 is excluded")
    pts = [k(2), k(-2), INF]
    perms = [(0, 1, 2), (1, 0, 2), (2, 0, 1), (1, 2, 0), (0, 2, 1), (2, 1, 0)]
    return [moebius_through(pts, [pts[i] for i in perm], k) for perm in perms]


def apply_to_set(h: MoebiusElt, I: IndexSet) -> IndexSet:
    images = [h(a) for a in I]
    assert all(v is not INF for v in images), "S3 homographies keep k minus {2,-2} finite"
    return IndexSet(I.kind, tuple(images))


def canonicalize(I: IndexSet) -> ConjClassC1:
    orbit = []
    for h in s3_elements(I.kind):
        J = apply_to_set(h, I)
        if J not in orbit:
            orbit.append(J)
    orbit.sort(key=IndexSet.sort_key)
    return ConjClassC1(orbit[0], tuple(orbit))


def are_conjugate_c1(I1: IndexSet, I2: IndexSet) -> bool:
    return canonicalize(I1).canonical == canonicalize(I2).canonical


def index_set_from_invariant_poly(T: Poly, kind: FieldKind) -> IndexSet:
    """I with T = c * prod_{a in I} (u - a); T must split over k."""
    roots, rest = roots_in_k(T)
    if rest.degree > 0:
        raise FieldExtensionRequired(f"{rest.to_str('u')} has no root in {kind}")
    return IndexSet(kind, tuple(roots))


def recover_I(G: ElementaryGroup) -> ConjClassC1:
    """
    Read I back from a c1 group whose image on the x-line is V_1: the branch
    polynomial of the fixed elliptic/hyperelliptic curve is V_1-symmetric, and
    two palindromic reductions (x -> v = x^2 -> u = v + 1/v) turn it into
    prod (u - a).
    """
    if G.order != 16 or G.p != 2:
        raise GroupShapeError("type c1 groups have order 16")
    nonempty = [nf for _, nf in nf_profile(G) if not nf.is_empty]
    kind = G.elements[0].base
    if not nonempty:
        return canonicalize(IndexSet(kind))
    if len(nonempty) != 2:
        raise GroupShapeError(f"expected 2 elements with a fixed curve, found {len(nonempty)}")
    nf = nonempty[0]
    R = nf.branch
    if nf.infinity or R.valuation() or R.degree % 4:
        raise NotNormalCoordinates("branch locus is not V_1-stable")
    try:
        S = R.even_part()
        if not S.is_palindromic():
            raise NotNormalCoordinates("branch polynomial is not self-reciprocal")
        T = palindromic_reduce(S)
    except NotNormalCoordinates:
        raise
    except ValueError as exc:
        raise NotNormalCoordinates(str(exc)) from exc
    return canonicalize(index_set_from_invariant_poly(T, kind))


def reduce_delta(delta) -> IndexSet:
    """
    I from a V_1-invariant delta: write delta = Q(s), s = t^2 + t^-2, drop
    square factors and the factors s +- 2, which are squares on the t-line
    up to the moves (z, t) -> (z (t +- 1/t), t).
    """
    Q = rewrite_in_invariant(delta)
    kind = Q.field.base
    R = Poly.constant(kind, 1)
    for g, e in yun_squarefree(Q.num * Q.den):
        if e % 2:
            R = R * g
    for c in (2, -2):
        lin = Poly(kind, [-c, 1])
        q, r = divmod(R, lin)
        if not r:
            R = q
    return index_set_from_invariant_poly(R, kind)


@dataclass
class C1Normalization:
    conjugator: SemidirectElt
    delta: object
    index_set: IndexSet
    invariant: ConjClassC1


def normalize_c1(G: ElementaryGroup) -> C1Normalization:
    """Full pipeline: V_delta x V_1 normal form, then reduction of delta to I."""
    conj, delta = normalize_rank4_two(G.as_semidirect())
    I = reduce_delta(delta)
    return C1Normalization(conj, delta, I, canonicalize(I))


def invariant_c1(G: ElementaryGroup) -> ConjClassC1:
    return normalize_c1(G).invariant


def n_v1_moves(k: FieldKind) -> list[MoebiusElt]:
    """Homographies of the x-line normalizing V_1 that are defined over k."""
    out = [MoebiusElt(1, 1, 1, -1, k), MoebiusElt(1, -1, 1, 1, k)]
    i = k.root_of_unity(4)
    if i is not None:
        out.append(MoebiusElt(i, 0, 0, 1, k))
    return out
