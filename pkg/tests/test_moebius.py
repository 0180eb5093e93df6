import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cremona.errors import CocycleError, FieldExtensionRequired, GroupShapeError
from cremona.exactfield import INF, FieldKind, FunctionField
from cremona.moebius import (
    CocycleV1,
    Cp_times_Cp,
    MoebiusElt,
    SemidirectElt,
    V1_elements,
    Vdelta_elements,
    Vdelta_times_V1,
    act,
    conjugate_group,
    conjugate_to_Cp,
    conjugate_to_inversion,
    hilbert90_cyclic,
    klein_to_Vdelta,
    moebius_through,
    normalize_rank2_odd,
    normalize_rank4_two,
    projective_order,
    trivialize_cocycle_V1,
)

QQ = FieldKind.rationals()
F101 = FieldKind.prime(101)
CYCLO3 = FieldKind.cyclotomic(3)
KQ = FunctionField(QQ, "t")
K3 = FunctionField(CYCLO3, "t")

entries = st.integers(-9, 9)


def _det_nonzero(abcd):
    a, b, c, d = abcd
    return a * d - b * c != 0


def homographies(kind=QQ):
    quads = st.tuples(entries, entries, entries, entries).filter(_det_nonzero)
    return quads.map(lambda e: MoebiusElt(*(kind(x) for x in e), kind))


def fibre_homographies():
    t = KQ.gen()
    linear = st.tuples(entries, entries).map(lambda ab: ab[0] + ab[1] * t)
    quads = st.tuples(linear, linear, linear, linear).filter(lambda e: bool(e[0] * e[3] - e[1] * e[2]))
    return quads.map(lambda e: MoebiusElt(*e, KQ))


@st.composite
def semidirect(draw):
    return SemidirectElt(draw(fibre_homographies()), draw(homographies()))


# ---------------------------------------------------------------------------
# PGL_2


@given(homographies(), homographies(), homographies())
def test_group_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert (a * a.inverse()).is_identity()
    assert a * MoebiusElt.identity(QQ) == a


@given(homographies(), homographies(), st.integers(-20, 20))
def test_composition_matches_evaluation(a, b, z):
    z = QQ(z)
    inner = b(z)
    assert (a * b)(z) == a(inner)


def test_projective_normalization():
    assert MoebiusElt(2, 4, 6, 8, QQ) == MoebiusElt(1, 2, 3, 4, QQ)
    assert MoebiusElt(0, 3, 3, 0, QQ).matrix() == (0, 1, 1, 0)


def test_infinity_handling():
    inv = MoebiusElt(0, 1, 1, 0, QQ)
    assert inv(QQ(0)) is INF and inv(INF) == 0
    assert MoebiusElt(2, 1, 0, 1, QQ)(INF) is INF


def test_projective_orders():
    assert projective_order(MoebiusElt(-1, 0, 0, 1, QQ), 10) == 2
    assert projective_order(MoebiusElt(1, 1, 0, 1, QQ), 10) is None
    zeta = CYCLO3.gen()
    assert projective_order(MoebiusElt(zeta, 0, 0, 1, CYCLO3), 10) == 3
    # t -> 1/(1 - t) has order 3 over Q
    assert projective_order(MoebiusElt(0, 1, -1, 1, QQ), 10) == 3


def test_moebius_through_three_points():
    src = [QQ(0), QQ(1), INF]
    dst = [QQ(2), QQ(-2), INF]
    m = moebius_through(src, dst, QQ)
    assert [m(p) for p in src] == dst


@given(homographies())
def test_substitute_is_entrywise_composition(gamma):
    t = KQ.gen()
    M = MoebiusElt(t, 1, t * t, 3, KQ)
    g = gamma.as_ratfunc(KQ)
    assert M.substitute(gamma) == MoebiusElt(*(e.compose(g) for e in M.matrix()), KQ)


def test_to_str_clears_denominators():
    t = KQ.gen()
    assert MoebiusElt(0, t * t + 1 / (t * t), 1, 0, KQ).to_str("y") == "(x^4 + 1)/(x^2*y)".replace("x", "t")
    assert MoebiusElt(-1, 0, 0, 1, QQ).to_str("x") == "-x"


# ---------------------------------------------------------------------------
# conjugation into normal form


def test_conjugate_to_Cp():
    zeta = CYCLO3.gen()
    t = K3.gen()
    A = MoebiusElt(zeta, 0, 0, 1, K3).conjugate_by(MoebiusElt(t + 1, t, 1, 2 * t, K3))
    g, e = conjugate_to_Cp(A, 3)
    B = A.conjugate_by(g)
    assert B.b == 0 and B.c == 0
    assert B.a / B.d == zeta**e


def test_conjugate_to_Cp_needs_roots_of_unity():
    # an element of order 3 over Q has no Q-rational eigenvalue ratio
    with pytest.raises(FieldExtensionRequired):
        conjugate_to_Cp(MoebiusElt(0, 1, -1, 1, QQ), 3)


def test_conjugate_to_inversion():
    t = KQ.gen()
    g, delta = conjugate_to_inversion(MoebiusElt(0, t, 1, 0, KQ))
    assert g.is_identity() and delta == t
    g, delta = conjugate_to_inversion(MoebiusElt(-1, 0, 0, 1, KQ))
    assert MoebiusElt(-1, 0, 0, 1, KQ).conjugate_by(g) == MoebiusElt(0, delta, 1, 0, KQ)


def test_klein_to_Vdelta_identity_on_normal_form():
    t = KQ.gen()
    g, delta = klein_to_Vdelta(Vdelta_elements(t))
    assert g.is_identity() and delta == t


@settings(max_examples=15, deadline=None)
@given(fibre_homographies())
def test_klein_to_Vdelta_recovers_square_class(h):
    t = KQ.gen()
    V = [x.conjugate_by(h) for x in Vdelta_elements(t * t + 3)]
    g, delta = klein_to_Vdelta(V)
    assert {x.conjugate_by(g) for x in V} == set(Vdelta_elements(delta))


# ---------------------------------------------------------------------------
# Hilbert 90 and cocycles


def test_act_is_left_action():
    t = KQ.gen()
    a, b = MoebiusElt(2, 1, 0, 1, QQ), MoebiusElt(0, 1, 1, 0, QQ)
    f = (t * t + 1) / (t - 3)
    assert act(a * b, f) == act(a, act(b, f))


def test_hilbert90_oracle():
    t = KQ.gen()
    sigma = MoebiusElt(0, 1, 1, 0, QQ)
    lam = act(sigma, t) / t
    mu = hilbert90_cyclic(lam, sigma, 2)
    assert lam * mu == act(sigma, mu)
    assert hilbert90_cyclic(KQ.one(), sigma, 2) == 1


def test_hilbert90_rejects_bad_norm():
    t = KQ.gen()
    with pytest.raises(CocycleError):
        hilbert90_cyclic(t, MoebiusElt(-1, 0, 0, 1, QQ), 2)
    with pytest.raises(GroupShapeError):
        hilbert90_cyclic(KQ.one(), MoebiusElt(2, 0, 0, 1, QQ), 2)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6))
def test_cocycle_round_trip(seed):
    rng = random.Random(seed)
    mu = KQ.random_nonzero(rng)
    c = CocycleV1.coboundary(mu)
    assert c.check()
    nu = trivialize_cocycle_V1(c)
    assert CocycleV1.coboundary(nu).values == c.values


def test_non_cocycle_rejected():
    t = KQ.gen()
    values = {s: KQ.one() for s in V1_elements(QQ)}
    values[V1_elements(QQ)[1]] = t
    with pytest.raises(CocycleError):
        trivialize_cocycle_V1(CocycleV1(values))


# ---------------------------------------------------------------------------
# semidirect product and group normal forms


@settings(max_examples=30, deadline=None)
@given(semidirect(), semidirect(), semidirect())
def test_semidirect_group_laws(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert (a * a.inverse()).is_identity()


def test_targets_are_groups():
    t = KQ.gen()
    for G in (Cp_times_Cp(K3, 3), Vdelta_times_V1(t * t + 1 / (t * t))):
        S = set(G)
        assert all(x * y in S for x in G for y in G)
    assert len(Cp_times_Cp(K3, 3)) == 9
    assert len(Vdelta_times_V1(KQ.gen())) == 16


def test_normal_forms_are_fixed():
    assert normalize_rank2_odd(Cp_times_Cp(K3, 3), 3).is_identity()
    t = KQ.gen()
    conj, delta = normalize_rank4_two(Vdelta_times_V1(t * t + 1 / (t * t)))
    assert conj.is_identity() and delta == t * t + 1 / (t * t)


def test_rank2_normalization_of_conjugate():
    t = K3.gen()
    h = SemidirectElt(MoebiusElt(t, 1, 1, t + 2, K3), MoebiusElt(1, 2, 0, 1, CYCLO3))
    G = conjugate_group(h, Cp_times_Cp(K3, 3))
    conj = normalize_rank2_odd(G, 3)
    assert set(conjugate_group(conj, G)) == set(Cp_times_Cp(K3, 3))


def test_rank4_normalization_rejects_wrong_shape():
    with pytest.raises(GroupShapeError):
        normalize_rank4_two(Vdelta_times_V1(KQ.gen())[:8])
