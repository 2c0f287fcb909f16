import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from orbitspace.cocylinder import linked
from orbitspace.errors import DegeneratePair
from orbitspace.groups import modular_torus
from orbitspace.hyperbolic import CirclePoint, MobiusElement, evaluate, lift
from orbitspace.lozenges import Membership, chain_between, contains, lozenge_of
from orbitspace.orbit_space import OrbitPoint, PointPair, act, eta, eta_inverse, project_to_universal_circle

G = modular_torus()

points = st.builds(
    lambda s, t: OrbitPoint(s - t, s),
    st.floats(-4, 4, allow_nan=False),
    st.floats(0.001, 0.999),
)
words = st.lists(st.sampled_from([1, -1, 2, -2]), max_size=5)
angles = st.floats(0, 1, exclude_max=True, allow_nan=False)


@given(points)
def test_eta_stays_in_strip_and_inverts(o):
    assert eta_inverse(eta(o)).distance(o) < 1e-12
    p = eta(o)
    assert p.s - 1 < p.u < p.s


@given(words, points, st.integers(-3, 3))
@settings(max_examples=200, deadline=None)
def test_action_commutes_with_eta(w, o, k):
    g = G.element(w)
    ghat = lift(g, k)
    try:
        a = eta(act(ghat, o))
        b = act(ghat, eta(o))
    except DegeneratePair:
        return
    assert a.distance(b) < 1e-9


@given(words, words, points)
@settings(max_examples=100, deadline=None)
def test_action_is_a_homomorphism_up_to_center(w1, w2, o):
    g, h = G.element(w1), G.element(w2)
    try:
        two_step = act(lift(g, 0), act(lift(h, 0), o))
        one_step = act(lift(g @ h, 0), o)
    except DegeneratePair:
        return
    k = round(two_step.s - one_step.s)
    assert two_step.distance(one_step.shift(k)) < 1e-9


@given(words, st.floats(-3, 3))
def test_lift_degree_one(w, x):
    f = lift(G.element(w), 0)
    assert abs(evaluate(f, x + 1) - evaluate(f, x) - 1) < 1e-9


@given(angles, angles, angles, angles)
def test_linking_symmetries(a, b, c, d):
    pts = [a, b, c, d]
    gaps = [min(abs(x - y), 1 - abs(x - y)) for i, x in enumerate(pts) for y in pts[i + 1 :]]
    if min(gaps) < 1e-6:
        return
    p = PointPair(CirclePoint(a), CirclePoint(b))
    q = PointPair(CirclePoint(c), CirclePoint(d))
    assert linked(p, q) == linked(q, p) == linked(p.swapped(), q) == linked(p, q.swapped())


@given(words, angles, angles)
@settings(max_examples=100, deadline=None)
def test_linking_is_invariant_under_the_group(w, a, b):
    g = G.element(w)
    p = PointPair(CirclePoint(a), CirclePoint(b)) if min(abs(a - b), 1 - abs(a - b)) > 1e-3 else None
    if p is None:
        return
    q = PointPair(CirclePoint(0.123), CirclePoint(0.654))
    if min(min(abs(x - y), 1 - abs(x - y)) for x in (a, b) for y in (0.123, 0.654)) < 1e-3:
        return
    gp, gq = p.image(g), q.image(g)
    sep = [min(abs(x - y), 1 - abs(x - y)) for x in (gp.a_plus.angle, gp.a_minus.angle) for y in (gq.a_plus.angle, gq.a_minus.angle)]
    if min(sep) < 1e-6:
        return
    assert linked(p, q) == linked(gp, gq)


@given(points, st.integers(1, 6))
def test_chain_sides_disjoint(o, n):
    assert chain_between(o, n).sides_disjoint()


@given(points, st.floats(0.05, 0.95), st.floats(0.05, 0.95))
def test_interior_points_are_inside(o, x, y):
    L = lozenge_of(o)
    (u0, u1), (s0, s1) = L.u_range, L.s_range
    p = OrbitPoint(u0 + x * (u1 - u0), s0 + y * (s1 - s0))
    assert contains(L, p) is Membership.INSIDE


@given(points)
def test_projection_of_eta_swaps(o):
    p, q = project_to_universal_circle(o), project_to_universal_circle(eta(o))
    assert abs(p.a_plus.angle - q.a_minus.angle) % 1 < 1e-12 or abs(abs(p.a_plus.angle - q.a_minus.angle) - 1) < 1e-12


@given(st.lists(st.sampled_from([1, -1, 2, -2]), min_size=1, max_size=6))
def test_matrix_word_inverse(w):
    g = G.element(w)
    assert (g @ g.inverse()).is_identity()
    assert np.isclose(abs(g.trace), abs(g.inverse().trace))


def test_identity_lift_is_translation():
    e = MobiusElement.identity()
    assert evaluate(lift(e, 2), 0.5) == 2.5
