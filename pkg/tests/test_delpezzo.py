import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cremona.delpezzo import (
    DiagInvolution,
    GS_group,
    Jbar,
    Jmap,
    Jmap_via_branch,
    QuarticDP,
    branch_j,
    cross_ratio,
    fiber_search,
    fiber_statistics,
    fiber_table,
    hurwitz_max_rank,
    invariant_monomials,
    jacobian_identity_check,
    jacobian_pointwise,
    jacobian_safe_point,
    jfun,
    jmap_mod,
    monomials,
    nf_GS,
    nf_profile_GS,
    p_valuation,
    pencil_determinant,
    pencil_singular,
    quadric_rank,
    sigma_ell,
    sixth_root_minus_one,
    weyl_entry,
    weyl_table_query,
)
from cremona.exactfield import INF, FieldKind, Poly

QQ = FieldKind.rationals()
F101 = FieldKind.prime(101)

rationals = st.builds(Fraction, st.integers(-30, 30), st.integers(1, 9)).map(QQ)


def test_weyl_factorizations():
    assert weyl_entry(8).factor_str() == "2^14.3^5.5^2.7"
    assert weyl_entry(4).order == 120
    with pytest.raises(ValueError):
        weyl_entry(9)
    assert weyl_table_query(6, 3, 4) and not weyl_table_query(6, 3, 5)


@given(st.integers(2, 500), st.sampled_from([2, 3, 5, 7, 11]))
def test_hurwitz_rank_is_exact_valuation(g, p):
    r = hurwitz_max_rank(g, p)
    assert (2 * g - 2) % p ** (r - 1) == 0
    assert (2 * g - 2) % p**r != 0


def test_hurwitz_rejects_bad_input():
    with pytest.raises(ValueError):
        hurwitz_max_rank(1, 2)
    with pytest.raises(ValueError):
        hurwitz_max_rank(3, 4)
    assert p_valuation(48, 2) == 4


def test_monomial_counts():
    assert len(monomials(4, 3)) == 20
    assert len(monomials(5, 2)) == 15
    assert invariant_monomials((1, 1, 1, 1, -1)) == [
        m for m in monomials(5, 2) if m[4] % 2 == 0
    ]


# ---------------------------------------------------------------------------
# j-function and cross-ratio


@given(rationals)
def test_jfun_anharmonic_invariance_pointwise(x):
    if x in (0, 1):
        assert jfun(x) is INF
        return
    values = {jfun(x), jfun(1 / x), jfun(1 - x), jfun(1 / (1 - x)), jfun(x / (x - 1)), jfun((x - 1) / x)}
    assert len(values) == 1


def test_jfun_special_values():
    assert jfun(QQ(-1)) == 1728 and jfun(QQ(2)) == 1728 and jfun(QQ(Fraction(1, 2))) == 1728
    assert jfun(INF) is INF


def test_cross_ratio_normalization():
    assert cross_ratio(QQ(5), QQ(1), QQ(0), INF) == 5
    assert cross_ratio(QQ(1), QQ(5), QQ(0), INF) == Fraction(1, 5)
    with pytest.raises(ValueError):
        cross_ratio(QQ(1), QQ(1), QQ(0), INF)


@given(rationals, rationals)
def test_jmap_slots_match_branch_points(lam, mu):
    if len({lam, mu, QQ(0), QQ(1)}) < 4:
        return
    assert Jmap(lam, mu) == Jmap_via_branch(lam, mu)


def test_jacobian_identity_and_mutation():
    assert jacobian_identity_check()
    assert not jacobian_identity_check(2)


def test_jacobian_pointwise_mutation_detected_off_the_zero_locus():
    rng = random.Random(0)
    caught = 0
    for _ in range(200):
        lam, mu = rng.randrange(101), rng.randrange(101)
        if not jacobian_safe_point(lam, mu, 101):
            continue
        assert jacobian_pointwise(lam, mu, 101)
        caught += not jacobian_pointwise(lam, mu, 101, scale=2)
    assert caught > 150


# ---------------------------------------------------------------------------
# fibre experiment


def test_sixth_root_minus_one():
    for q in (31, 43, 61):
        z = sixth_root_minus_one(q)
        assert pow(z, 3, q) == q - 1 and z != q - 1


def test_fiber_table_agrees_with_exact_jmap():
    q = 31
    kind = FieldKind.prime(q)
    table = fiber_table(q)
    rng = random.Random(1)
    for _ in range(30):
        lam, mu = rng.randrange(2, q), rng.randrange(2, q)
        if lam == mu:
            continue
        exact = tuple(v.v for v in Jmap(kind(lam), kind(mu)))
        assert jmap_mod(lam, mu, q) == exact
        assert (lam, mu) in table.fiber(lam, mu)


def test_fiber_search_and_statistics():
    stats = fiber_statistics(31)
    assert stats.zeta == 6 and stats.alphas == 28
    assert sum(stats.fiber_sizes.values()) == 28
    for a in stats.singletons:
        assert fiber_search(a, 31) == [(a, 6)]
    with pytest.raises(ValueError):
        fiber_table(29)
    with pytest.raises(ValueError):
        fiber_search(6, 31)


# ---------------------------------------------------------------------------
# pencil of quadrics and G_S


def _quartic(values):
    return QuarticDP(tuple(QQ(v) for v in values))


def test_quartic_validation():
    with pytest.raises(ValueError):
        _quartic([0, 1, 2, 3, 3])
    with pytest.raises(ValueError):
        _quartic([0, 1, 2, 3])


def test_pencil_determinant_oracle():
    S = _quartic(range(5))
    t = Poly.gen(QQ)
    assert pencil_determinant(S) == -t * (t - 1) * (t - 2) * (t - 3) * (t - 4)
    assert quadric_rank(S, QQ(Fraction(1, 2))) == 5
    assert quadric_rank(S, QQ(2)) == 4


@settings(max_examples=20)
@given(st.lists(rationals, min_size=5, max_size=5, unique=True))
def test_pencil_singular_members(values):
    S = QuarticDP(tuple(values))
    sing = pencil_singular(S)
    assert sorted(m.parameter for m in sing) == sorted(S.lambdas)
    for m in sing:
        ell = S.lambdas.index(m.parameter)
        assert m.rank == 4 and m.point == tuple(int(i == ell) for i in range(5))


def test_GS_group_structure():
    S = _quartic([0, 1, 3, 7, -2])
    G = GS_group(S)
    assert len(G) == 16
    assert sum(g.fixes_hyperplane() for g in G) == 5
    assert {g.fixed_dims() for g in G if not g.is_identity()} == {(4, 1), (3, 2)}
    assert all(g * g == G[0] for g in G) and G[0].is_identity()
    assert DiagInvolution((-1, -1, -1, 1, 1)) == DiagInvolution((1, 1, 1, -1, -1))


def test_nf_of_G_S():
    S = _quartic([0, 1, 3, 7, -2])
    for ell in range(5):
        nf = nf_GS(S, sigma_ell(ell))
        assert nf.genus == 1 and nf.branch.degree == 4
        assert all(nf.branch(lam) == 0 for i, lam in enumerate(S.lambdas) if i != ell)
        assert nf.branch(S.lambdas[ell]) != 0
    profile = nf_profile_GS(S)
    assert len(profile) == 15
    assert sum(not nf.is_empty for _, nf in profile) == 5
    with pytest.raises(ValueError):
        nf_GS(S, DiagInvolution((1, 1, 1, 1, 1)))


def test_jbar_oracle_and_invariance():
    S = _quartic(range(5))
    expected = tuple(
        QQ(v) for v in (Fraction(21952, 9), Fraction(21952, 9), Fraction(35152, 9), Fraction(35152, 9), Fraction(1556068, 81))
    )
    assert Jbar(S) == expected
    for perm in itertools.islice(itertools.permutations(range(5)), 0, 120, 7):
        assert Jbar(QuarticDP(tuple(S.lambdas[i] for i in perm))) == expected
    assert branch_j(S, 4) == jfun(cross_ratio(QQ(0), QQ(1), QQ(2), QQ(3)))


@settings(max_examples=25)
@given(st.tuples(*[st.integers(-5, 5)] * 4), st.lists(st.integers(-20, 20), min_size=5, max_size=5, unique=True))
def test_jbar_moebius_invariance(abcd, values):
    a, b, c, d = abcd
    if a * d - b * c == 0:
        return
    images = []
    for v in values:
        den = c * v + d
        if den == 0:
            return
        images.append(QQ(Fraction(a * v + b, den)))
    assert Jbar(_quartic(values)) == Jbar(QuarticDP(tuple(images)))


def test_finite_field_quartic():
    S = QuarticDP(tuple(F101(v) for v in (0, 1, 5, 9, 44)))
    assert len(pencil_singular(S)) == 5
    assert len(Jbar(S)) == 5
