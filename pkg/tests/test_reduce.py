import random
from fractions import Fraction as F

import pytest

from lsurf.modn import component_labels, dense_index, project
from lsurf.reduce import (
    BracketReport,
    ReduceProgressError,
    enumerate_S,
    in_S,
    reduce_point,
    s_bound,
)
from lsurf.sampling import sample_point
from lsurf.surface import SurfacePoint, apply_A, apply_B, n_value


def pt(L8, xr, xi, yr, yi):
    return SurfacePoint.from_fractions(L8, F(xr), F(xi), F(yr), F(yi))


def test_s_bound_value(L8):
    b = s_bound(L8)
    assert (b.r, b.i) == (35, 24)
    assert 68.9 < float(b) < 69.0


def test_in_s_examples(L8):
    assert in_S(pt(L8, -96, 68, 0, 0))  # |x_i| = 68 <= 35 + 24w
    assert not in_S(pt(L8, -141, 100, 0, 0))  # 100 > 35 + 24w
    assert in_S(pt(L8, 2, 0, 1, 0))


def test_wrong_surface_rejected(L5m1):
    P = SurfacePoint.from_fractions(L5m1, F(1, 2), 0, F(1, 3), 0)
    with pytest.raises(ValueError):
        in_S(P)
    with pytest.raises(ValueError):
        reduce_point(P)


def test_member_reduces_trivially(L8):
    P = pt(L8, 0, 0, F(1, 2), 0)
    res = reduce_point(P)
    assert res.steps == 0 and len(res.word) == 0 and res.output == P


def test_b_periodic_case_fires_first(L8):
    P = pt(L8, -141, 100, F(1, 2), 0)  # y_i = 0: horizontally periodic
    res = reduce_point(P, check=True)
    assert res.trace[0][0] == 1
    assert in_S(res.output)


def replay_trace_measures(P, trace):
    """Independent per-iteration replay from the recorded cases; returns the
    sequence of max(|x_i|, |y_i|) and the final point."""
    ms = [max(abs(P.x.i), abs(P.y.i))]
    cur = P
    for case, exp in trace:
        if case == 1:
            cur = apply_A(apply_B(apply_A(cur, 1), -1), -1)
        elif case == 2:
            cur = apply_B(apply_A(apply_B(cur, 1), -1), -1)
        elif case == 3:
            cur = apply_A(cur, exp)
        else:
            cur = apply_B(cur, exp)
        ms.append(max(abs(cur.x.i), abs(cur.y.i)))
    return ms, cur


def test_case_coverage_and_progress(L8, rng):
    cases_seen = set()
    for _ in range(150):
        P = sample_point(L8, rng.randint(1, 12), rng, box=4000)
        res = reduce_point(P, check=True)
        assert in_S(res.output)
        assert n_value(res.output) == n_value(P)
        for case, exp in res.trace:
            cases_seen.add(case)
            assert case in (1, 2, 3, 4)
            if case in (3, 4):
                assert exp != 0
        ms, final = replay_trace_measures(P, res.trace)
        assert final == res.output
        for i in range(2, len(ms)):
            assert ms[i] < ms[i - 2]
    assert {3, 4} <= cases_seen


def test_word_empty_iff_member(L8, rng):
    for _ in range(60):
        P = sample_point(L8, rng.randint(1, 6), rng, box=200)
        res = reduce_point(P)
        assert (len(res.word) == 0) == in_S(P)


def test_output_in_same_residue_component(L8, rng):
    for _ in range(40):
        P = sample_point(L8, rng.randint(1, 6), rng, box=2000)
        res = reduce_point(P)
        N = n_value(P)
        labels = component_labels(N)
        assert labels[dense_index(project(P))] == labels[dense_index(project(res.output))]


def test_enumerate_s_small_denominator_membership(L8, rng):
    pts = enumerate_S(1)
    assert len(pts) > 50_000
    sample = random.Random(3).sample(sorted(pts), 200)
    for key in sample:
        P = pts[key]
        assert in_S(P) and n_value(P) == 1
    # reductions of perturbed members land back in the enumerated set
    for key in random.Random(4).sample(sorted(pts), 30):
        from lsurf.surface import apply_A

        moved = apply_A(pts[key], 1)
        out = reduce_point(moved).output
        assert out.key in pts
