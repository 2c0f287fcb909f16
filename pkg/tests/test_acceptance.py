"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v`` and read the summary block at the
end of the session (it is printed even when output capture is on).
"""

import math
import subprocess
import sys
import time
from contextlib import contextmanager

import numpy as np
import pytest

from orbitspace.annulus import ArcKind, crossing_elements, overlap_records, verify_claim
from orbitspace.cocylinder import cardinality_shift_check, find_linking_witness, self_intersection_oracle
from orbitspace.hyperbolic import enumerate_table, lift, real_axis_endpoints
from orbitspace.lozenges import chain_between, chain_of_element, check_stabilized, lozenge_of, simplicity_check
from orbitspace.orbit_space import (
    OrbitPoint,
    act,
    double_class,
    eta,
    eta_inverse,
    eta_minus_s,
    eta_minus_u,
    eta_s,
    eta_u,
    orbit_of_element,
)

from conftest import ACCEPTANCE_LINES as RESULTS, CORPUS


HYPERBOLIC_WORDS = ["a", "b", "ab", "aB", "aabb", "aabab", "abAb", "aaB", "abbb", "aaaBBB"]


@contextmanager
def criterion(number, title):
    start = time.perf_counter()
    try:
        yield
    except BaseException as exc:
        line = f"criterion {number:>2} FAIL  {title} ({type(exc).__name__}: {exc})"
        RESULTS.append(line)
        print(line)
        raise
    line = f"criterion {number:>2} PASS  {title} ({time.perf_counter() - start:.2f} s)"
    RESULTS.append(line)
    print(line)


def random_points(rng, n):
    s = rng.uniform(-3, 3, n)
    u = s - rng.uniform(0.001, 0.999, n)
    return [OrbitPoint(float(a), float(b)) for a, b in zip(u, s)]


@pytest.fixture(scope="module")
def verdicts(torus, word):
    """Lozenge, linking and oracle verdicts for the corpus, computed once."""
    out = {}
    start = time.perf_counter()
    for w, _ in CORPUS:
        g = word(w)
        lozenge = simplicity_check(chain_of_element(g), torus, 8)
        linking = find_linking_witness(g, torus, 10)
        oracle = self_intersection_oracle(g, torus, 8)
        out[w] = (lozenge, linking, oracle)
    out["_seconds"] = time.perf_counter() - start
    return out


def test_criterion_01_strip_identities():
    with criterion(1, "strip-model identities on 1000 random orbit points, exact to 1e-12"):
        start = time.perf_counter()
        rng = np.random.default_rng(1)
        for o in random_points(rng, 1000):
            e = eta(o)
            assert e.s - 1 < e.u < e.s
            assert eta_inverse(e).distance(o) <= 1e-12
            assert eta(eta_inverse(o)).distance(o) <= 1e-12
            ee = eta(e)
            assert abs(ee.u - (o.u + 1)) <= 1e-12 and abs(ee.s - (o.s + 1)) <= 1e-12
            assert abs(eta_minus_u(eta_s(o.s) + 1) - o.s) <= 1e-12
            assert abs(eta_minus_u(eta_u(o.u)) - o.u) <= 1e-12
            assert abs(eta_minus_s(eta_s(o.u)) - o.u) <= 1e-12
        assert time.perf_counter() - start < 1.0


def test_criterion_02_equivariance(torus):
    with criterion(2, "eta commutes with the group action, 200 samples, 1e-9"):
        start = time.perf_counter()
        rng = np.random.default_rng(2)
        table = enumerate_table(torus, 4)
        picks = rng.integers(0, len(table), 200)
        worst = 0.0
        for i, o in zip(picks, random_points(rng, 200)):
            ghat = lift(table.element(int(i)), int(rng.integers(-2, 3)))
            worst = max(worst, eta(act(ghat, o)).distance(act(ghat, eta(o))))
        assert worst < 1e-9, worst
        assert time.perf_counter() - start < 5.0


def test_criterion_03_triple_agreement(verdicts):
    seconds = verdicts["_seconds"]
    with criterion(3, f"lozenge, linking and oracle criteria agree on all 20 corpus words, computed in {seconds:.1f} s"):
        for w, expected in CORPUS:
            lozenge, linking, oracle = verdicts[w]
            got = (lozenge.non_simple, linking.found, oracle >= 1)
            assert got == (expected,) * 3, (w, got)
        assert seconds < 60.0


def test_criterion_04_claim(torus, word):
    with criterion(4, "no strictly contained arc for any non-simple corpus word at depth 8"):
        start = time.perf_counter()
        for w, non_simple in CORPUS:
            if not non_simple:
                continue
            arcs = crossing_elements(word(w), torus, 8)
            assert arcs, w
            assert not [a for a in arcs if a.classification is ArcKind.STRICTLY_CONTAINED], w
            assert verify_claim(arcs)
        assert time.perf_counter() - start < 60.0


def _linked_on_real_line(g, h):
    """Independent check: do axis(g) and h.axis(g) cross?  Cross-ratio sign on R."""
    att, rep = real_axis_endpoints(g)
    a, b, c, d = h.matrix
    x1 = (a * att + b) / (c * att + d)
    x2 = (a * rep + b) / (c * rep + d)
    # corpus axes have quadratic-irrational endpoints, so none of these is infinite
    assert all(map(math.isfinite, (att, rep, x1, x2)))
    return (x1 - att) * (x2 - rep) / ((x1 - rep) * (x2 - att)) < 0


def test_criterion_05_crossing_iff_linking(torus, word):
    with criterion(5, "arcs are emitted exactly for linked overlaps, exhaustive at depth 6"):
        checked = 0
        for w, _ in CORPUS:
            g = word(w)
            arcs = {(a.element.word, a.offset) for a in crossing_elements(g, torus, 6)}
            for rec in overlap_records(g, torus, 6):
                independent = _linked_on_real_line(g, rec.element)
                assert independent == rec.linked, (w, rec.element.word)
                assert ((rec.element.word, rec.offset) in arcs) == independent, (w, rec.element.word)
                checked += 1
        assert checked > 0


def test_criterion_06_chain_structure():
    with criterion(6, "100 random chains of length 6 have pairwise disjoint interiors"):
        rng = np.random.default_rng(6)
        for o in random_points(rng, 100):
            C = chain_between(o, 6)
            ls = C.lozenges
            assert C.sides_disjoint()
            for i in range(len(ls)):
                for j in range(i + 1, len(ls)):
                    a, b = ls[i], ls[j]
                    assert a.u_range[1] <= b.u_range[0] and a.s_range[1] <= b.s_range[0]


def test_criterion_07_stabilized_lozenge(word):
    with criterion(7, "g fixes both corners of its lozenge for 10 words, 1e-9"):
        for w in HYPERBOLIC_WORDS:
            o, ghat = orbit_of_element(word(w))
            L = lozenge_of(o)
            assert check_stabilized(ghat, L), w
            assert act(ghat, L.opposite).distance(L.opposite) < 1e-9


def test_criterion_08_double_class(word):
    with criterion(8, "double class has two closed orbits, odd iterates reversed"):
        for w in HYPERBOLIC_WORDS:
            entries = double_class(word(w), 3)
            assert {e.label for e in entries} == {"even", "odd"}
            base = next(e.pair for e in entries if e.index == 0)
            for e in entries:
                if e.index % 2:
                    assert e.pair.swapped().a_plus.angle == pytest.approx(base.a_plus.angle, abs=1e-12)
                    assert e.pair.swapped().a_minus.angle == pytest.approx(base.a_minus.angle, abs=1e-12)
                else:
                    assert e.pair.a_plus.angle == pytest.approx(base.a_plus.angle, abs=1e-12)


def test_criterion_09_cardinality_shift(torus, word):
    with criterion(9, "eta-shift preserves partner sets for the whole corpus"):
        for w, _ in CORPUS:
            assert cardinality_shift_check(word(w), torus, 8, 3), w


def test_criterion_10_simple_words_have_no_linking(verdicts):
    with criterion(10, "every simple corpus word reports NoneUpTo(10)"):
        for w, non_simple in CORPUS:
            if not non_simple:
                assert verdicts[w][1].verdict == "NoneUpTo(10)", w


def test_criterion_11_cli_determinism(tmp_path):
    with criterion(11, "classify aabb --render is byte-identical across runs, < 5 s"):
        runs = []
        for name in ("first", "second"):
            d = tmp_path / name
            d.mkdir()
            start = time.perf_counter()
            proc = subprocess.run(
                [sys.executable, "-m", "orbitspace.cli", "classify", "aabb", "--render", "--out", str(d)],
                capture_output=True,
                cwd=tmp_path,
            )
            elapsed = time.perf_counter() - start
            assert proc.returncode == 0, proc.stderr.decode()
            assert elapsed < 5.0, elapsed
            runs.append((proc.stdout, (d / "classify-aabb.report").read_bytes(), (d / "classify-aabb.svg").read_bytes()))
        assert runs[0] == runs[1]


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-v"]))
