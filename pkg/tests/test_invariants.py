import pytest
from hypothesis import given

from hfcone import cfk
from hfcone.errors import NotKnotLike
from hfcone.invariants import invariant_report, nu, tau

from strategies import knot_complexes

EXPECTED = {
    "unknot": (0, 0, 0),
    "trefoil": (1, 1, 1),
    "left_trefoil": (-1, 0, -1),
    "figure_eight": (0, 0, 0),
    "t25": (2, 2, 1),
    "cable": (2, 2, 1),
}


@pytest.mark.parametrize("name", sorted(EXPECTED))
def test_fixture_invariants(fx, name):
    r = invariant_report(fx[name])
    assert (r.tau, r.nu, r.epsilon) == EXPECTED[name]


def test_mirror_cable_nu(fx):
    assert nu(cfk.mirror(fx["cable"])) == -1


def test_tensor_trefoils(fx):
    t = fx["trefoil"]
    assert tau(cfk.tensor(t, t)) == 2


def test_not_knot_like():
    with pytest.raises(NotKnotLike):
        tau(cfk.box(0, 0))
    with pytest.raises(NotKnotLike):
        tau(cfk.direct_sum([cfk.unknot(), cfk.staircase([1, 1], prefix="y")]))


def _check_relations(c):
    r = invariant_report(c)
    m = invariant_report(cfk.mirror(c))
    assert m.tau == -r.tau and m.epsilon == -r.epsilon
    assert r.nu in (r.tau, r.tau + 1)
    if r.epsilon == 0:
        assert r.tau == 0
    assert (r.epsilon == 1) == (m.nu == -r.tau + 1)


def test_relations_on_fixtures(fx):
    for c in fx.values():
        _check_relations(c)


@given(knot_complexes())
def test_relations_random(c):
    _check_relations(c)


@given(knot_complexes(), knot_complexes())
def test_tau_additive(a, b):
    assert tau(cfk.tensor(a, b)) == tau(a) + tau(b)
