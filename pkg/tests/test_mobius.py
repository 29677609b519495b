from fractions import Fraction as F

import pytest
from hypothesis import assume, given, strategies as st

from bikepath.errors import AllFixedError, DegenerateFitError, InvalidMapError
from bikepath.mobius import (
    INFINITY,
    MobiusMap,
    ProjectiveParam,
    mobius_apply,
    mobius_compose,
    mobius_conjugacy_invariant,
    mobius_fit,
    mobius_fixed_points,
)

from conftest import fractions

P = ProjectiveParam
ZERO, ONE = P(0, 1), P(1, 1)

maps = st.builds(MobiusMap, fractions(), fractions(), fractions(), fractions()).filter(lambda m: m.det != 0)
params = st.one_of(st.builds(P.of, fractions()), st.just(INFINITY))


def test_homogeneous_equality():
    assert P(2, 4) == P(1, 2) == P(-3, -6)
    assert P(5, 0) == INFINITY
    assert P(1, 2) != P(2, 1)
    with pytest.raises(Exception):
        P(0, 0)


def test_apply_examples():
    assert mobius_apply(MobiusMap.identity(), P(3, 1)) == P(3, 1)
    assert mobius_apply(MobiusMap(0, 1, 1, 0), P(5, 1)) == P(1, 5)
    assert mobius_apply(MobiusMap(2, 0, 0, 1), INFINITY) == INFINITY


def test_singular_map_rejected():
    with pytest.raises(InvalidMapError):
        mobius_apply(MobiusMap(1, 2, 2, 4), ONE)
    with pytest.raises(InvalidMapError):
        mobius_conjugacy_invariant(MobiusMap(1, 2, 2, 4))


def test_fit_examples():
    assert mobius_fit([(ZERO, ZERO), (ONE, ONE), (INFINITY, INFINITY)]).proportional_to(MobiusMap.identity())
    assert mobius_fit([(ZERO, INFINITY), (ONE, ONE), (INFINITY, ZERO)]).proportional_to(MobiusMap(0, 1, 1, 0))
    shift = mobius_fit([(ZERO, ONE), (ONE, P(2, 1)), (INFINITY, INFINITY)])
    assert shift.proportional_to(MobiusMap(1, 1, 0, 1))
    assert mobius_apply(shift, P(2, 1)) == P(3, 1)


def test_fit_rejects_coincident_points():
    with pytest.raises(DegenerateFitError):
        mobius_fit([(ZERO, ZERO), (P(0, 5), ONE), (INFINITY, INFINITY)])
    with pytest.raises(DegenerateFitError):
        mobius_fit([(ZERO, ONE), (ONE, ONE), (INFINITY, INFINITY)])


def test_fixed_point_examples():
    fp = mobius_fixed_points(MobiusMap(2, 0, 0, 1))
    assert set(fp.points) == {ZERO, INFINITY} and fp.kind == "hyperbolic" and fp.exact
    fp = mobius_fixed_points(MobiusMap(1, 1, 0, 1))
    assert fp.points == (INFINITY,) and fp.kind == "parabolic"
    fp = mobius_fixed_points(MobiusMap(0, -1, 1, 0))
    assert fp.points == () and fp.kind == "elliptic" and fp.discriminant_sign == -1


def test_fixed_points_irrational_roots_are_floats():
    # t -> 1/(t+1) has fixed points (-1 +- sqrt 5) / 2
    fp = mobius_fixed_points(MobiusMap(0, 1, 1, 1))
    assert not fp.exact
    assert fp.coefficients == (1, 1, -1)
    values = sorted(t.value() for t in fp.points)
    assert values == pytest.approx([(-1 - 5**0.5) / 2, (-1 + 5**0.5) / 2], rel=1e-14)


def test_identity_signals_all_fixed():
    with pytest.raises(AllFixedError):
        mobius_fixed_points(MobiusMap(3, 0, 0, 3))


def test_invariant_examples():
    assert mobius_conjugacy_invariant(MobiusMap.identity()) == 4
    assert mobius_conjugacy_invariant(MobiusMap(2, 0, 0, 1)) == F(9, 2)
    assert mobius_conjugacy_invariant(MobiusMap(1, 1, 0, 1)) == 4


@given(maps, maps, params)
def test_apply_respects_composition(m, n, t):
    assert mobius_apply(mobius_compose(m, n), t) == mobius_apply(m, mobius_apply(n, t))


@given(maps, st.lists(fractions(), min_size=4, max_size=4, unique=True))
def test_fit_recovers_known_map(m, ts):
    sources = [P.of(t) for t in ts]
    pairs = [(s, mobius_apply(m, s)) for s in sources]
    fitted = mobius_fit(pairs[:3])
    for s, u in pairs[:3]:
        assert mobius_apply(fitted, s) == u
    assert mobius_apply(fitted, pairs[3][0]) == pairs[3][1]
    assert fitted.proportional_to(m)


@given(maps, maps, fractions().filter(lambda f: f != 0))
def test_invariant_under_conjugation_and_scale(m, g, s):
    conj = g @ m @ g.adjugate()
    assert mobius_conjugacy_invariant(conj) == mobius_conjugacy_invariant(m)
    scaled = MobiusMap(s * m.a, s * m.b, s * m.c, s * m.d)
    assert mobius_conjugacy_invariant(scaled) == mobius_conjugacy_invariant(m)


@given(maps)
def test_fixed_points_are_fixed(m):
    try:
        fp = mobius_fixed_points(m)
    except AllFixedError:
        return
    for t in fp.points:
        image = mobius_apply(m, t)
        if fp.exact:
            assert image == t
        else:
            tf = P(float(t.p), float(t.q))
            mf = MobiusMap(*(float(v) for v in m.entries()))
            assert mobius_apply(mf, tf) == tf


@given(maps)
def test_float_fixed_points_agree_with_rational(m):
    assume(not (m.b == 0 and m.c == 0 and m.a == m.d))
    exact = mobius_fixed_points(m)
    mf = MobiusMap(*(float(v) for v in m.entries()))
    approx = mobius_fixed_points(mf)
    if exact.kind != "parabolic" and approx.kind != "parabolic":
        assert exact.kind == approx.kind
