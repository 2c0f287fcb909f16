import numpy as np
import pytest

from orbitspace.errors import DegeneratePoints, NotHyperbolic
from orbitspace.hyperbolic import CirclePoint, MobiusElement, axis_endpoints, enumerate_table, lift
from orbitspace.orbit_space import (
    OrbitPoint,
    PointPair,
    act,
    act_arrays,
    double_class,
    eta,
    eta_inverse,
    eta_minus_s,
    eta_minus_u,
    eta_power,
    eta_s,
    eta_u,
    orbit_of_element,
    project_to_universal_circle,
)


O = OrbitPoint(0.2, 0.9)


def random_points(n, seed=0):
    rng = np.random.default_rng(seed)
    s = rng.uniform(-3, 3, n)
    u = s - rng.uniform(0.01, 0.99, n)
    return [OrbitPoint(float(a), float(b)) for a, b in zip(u, s)]


def test_strip_rejects_points_outside():
    with pytest.raises(ValueError):
        OrbitPoint(0.0, 1.5)
    with pytest.raises(ValueError):
        OrbitPoint(0.5, 0.5)


def test_leaf_space_maps():
    assert eta_s(0.9) == 0.9
    assert eta_u(0.2) == pytest.approx(1.2)
    rng = np.random.default_rng(1)
    for x in rng.uniform(-5, 5, 100):
        assert eta_minus_u(eta_u(x)) == pytest.approx(x, abs=1e-15)
        assert eta_minus_s(eta_s(x)) == x


def test_eta_formula_and_square():
    assert eta(O) == OrbitPoint(0.9, 1.2)
    o2 = eta(eta(O))
    assert o2.u == pytest.approx(1.2) and o2.s == pytest.approx(1.9)
    assert eta_power(O, 2) == OrbitPoint(1.2, 1.9)


def test_eta_inverse_round_trip():
    for o in random_points(1000):
        assert eta_inverse(eta(o)).distance(o) < 1e-12
        assert eta(eta_inverse(o)).distance(o) < 1e-12


def test_eta_power_negative():
    for o in random_points(50, seed=3):
        assert eta_power(o, -3).distance(eta_inverse(eta_inverse(eta_inverse(o)))) < 1e-12


def test_act_identity_and_center():
    e = MobiusElement.identity()
    assert act(lift(e, 0), O).distance(O) < 1e-15
    c = act(lift(e, 1), O)
    assert c.distance(OrbitPoint(1.2, 1.9)) < 1e-12


def test_act_arrays_matches_scalar(torus, word):
    table = enumerate_table(torus, 3)
    U, S, gap = act_arrays(table.alpha, table.beta, O.u, O.s)
    for i in range(0, len(table), 7):
        p = act(lift(table.element(i), 0), O)
        assert p.u == pytest.approx(U[i], abs=1e-12)
        assert p.s == pytest.approx(S[i], abs=1e-12)


def test_project_and_swap():
    p = project_to_universal_circle(O)
    assert p.a_plus.angle == pytest.approx(0.9)
    assert p.a_minus.angle == pytest.approx(0.2)
    q = project_to_universal_circle(eta(O))
    assert q.a_plus.angle == pytest.approx(0.2)
    assert q.a_minus.angle == pytest.approx(0.9)


def test_point_pair_rejects_coincident_points():
    with pytest.raises(DegeneratePoints):
        PointPair(CirclePoint(0.3), CirclePoint(0.3))


def test_orbit_of_element_is_fixed(word):
    for w in ("a", "b", "ab", "aabb", "aBaab"):
        g = word(w)
        o, ghat = orbit_of_element(g)
        assert act(ghat, o).distance(o) < 1e-9
        att, rep = axis_endpoints(g)
        pair = project_to_universal_circle(o)
        assert pair.a_plus.angle == pytest.approx(att.angle, abs=1e-12)
        assert pair.a_minus.angle == pytest.approx(rep.angle, abs=1e-12)


def test_orbit_of_inverse_swaps_pair(word):
    g = word("aab")
    p = project_to_universal_circle(orbit_of_element(g)[0])
    q = project_to_universal_circle(orbit_of_element(g.inverse())[0])
    assert q.a_plus.angle == pytest.approx(p.a_minus.angle, abs=1e-12)
    assert q.a_minus.angle == pytest.approx(p.a_plus.angle, abs=1e-12)


def test_orbit_of_parabolic_raises():
    with pytest.raises(NotHyperbolic):
        orbit_of_element(MobiusElement.from_matrix(1, 1, 0, 1))


def test_double_class_two_labels(word):
    entries = double_class(word("ab"), 2)
    assert [e.index for e in entries] == [-2, -1, 0, 1, 2]
    assert {e.label for e in entries} == {"even", "odd"}
    base = entries[2].pair
    for e in entries:
        if e.index % 2:
            assert e.pair.a_plus.angle == pytest.approx(base.a_minus.angle, abs=1e-12)
        else:
            assert e.pair.a_plus.angle == pytest.approx(base.a_plus.angle, abs=1e-12)
