import random
from fractions import Fraction as F

import pytest

from lsurf.sampling import sample_b_periodic_point, sample_nonperiodic_point, sample_point
from lsurf.schreier import (
    OTHER,
    ROOT_LOOPED4,
    TREE4,
    OrbitGraph,
    ResourceCapError,
    build_G2,
    build_regular_tree_ball,
    build_root_looped_tree,
    cheeger_of_set,
    classify_component,
    enumerate_root_subsets,
    expand_ball,
    find_non_excluded_start,
    min_cheeger_root_subsets,
    root_paths_strictly_increasing,
    tree_cheeger_profile,
)
from lsurf.surface import SurfacePoint, n_value, thresholds

SINGLE_STEPS = [("A", 1), ("A", -1), ("B", 1), ("B", -1)]


def pt(proto, xr, xi, yr, yi):
    return SurfacePoint.from_fractions(proto, F(xr), F(xi), F(yr), F(yi))


# -- ball expansion -------------------------------------------------------------


def test_radius_zero_ball(L8):
    P = pt(L8, F(1, 3), F(1, 3), F(1, 2), 0)
    ball = expand_ball(P, SINGLE_STEPS, 0)
    assert ball.order() == 1 and ball.frontier == {P.key}


def test_loop_at_periodic_point_with_threshold_exponents(L8):
    P = pt(L8, F(1, 3), F(1, 3), F(1, 2), 0)  # B-periodic, not A-periodic
    th = thresholds(L8, n_value(P))
    ball = expand_ball(P, [("A", th.k), ("A", -th.k), ("B", th.l), ("B", -th.l)], 1)
    loops = ball.loop_vertices()
    assert set(loops) == {P.key}
    assert all(g == "B" for g, _ in loops[P.key])


def test_radius2_vertex_bound(L8, rng):
    for _ in range(5):
        P = sample_point(L8, rng.randint(1, 4), rng, box=300)
        ball = expand_ball(P, SINGLE_STEPS, 2)
        assert ball.order() <= 17  # 1 + 4 + 12


def test_resource_cap_carries_partial(L8):
    P = pt(L8, F(1, 5), F(1, 5), F(2, 5), F(1, 5))
    with pytest.raises(ResourceCapError) as err:
        expand_ball(P, SINGLE_STEPS, 3, max_vertices=4)
    assert err.value.partial is not None
    assert err.value.partial.partial is True
    assert err.value.partial.order() >= 4


def test_deterministic_export(L8):
    P = pt(L8, F(1, 3), F(1, 3), F(1, 2), 0)
    one = build_G2(P, radius=2).to_json_dict()
    two = build_G2(P, radius=2).to_json_dict()
    assert one == two
    assert one["schema"] == "lsurf-graph-v1"
    dot = build_G2(P, radius=2).to_dot()
    assert dot.startswith("graph orbitball {") and '"B^' in dot


# -- pruned-graph structure -------------------------------------------------------


def test_g2_ball_from_periodic_root(L8):
    P = pt(L8, F(1, 3), F(1, 3), F(1, 2), 0)
    ball = build_G2(P, radius=3)
    shape = classify_component(ball)
    assert shape.kind == ROOT_LOOPED4
    assert shape.loop_vertex == P.key
    assert root_paths_strictly_increasing(ball)
    # all expanded vertices have simple-view degree 4 except the looped root
    adj = ball.simple_adjacency()
    for key in ball.expanded:
        want = 2 if key == P.key else 4
        assert len(adj[key]) == want


def test_g2_ball_from_generic_root(L8):
    Q = pt(L8, F(-1, 2), F(1, 2), F(-3, 2), F(3, 2))
    ball = build_G2(Q, radius=3)
    shape = classify_component(ball)
    assert shape.kind == TREE4
    assert ball.order() == 53  # perfect 4-regular tree ball of radius 3


def test_g2_never_other_on_seeds(L8, rng):
    for _ in range(8):
        N = rng.randint(1, 3)
        if rng.random() < 0.5:
            P = sample_b_periodic_point(L8, N, rng, a_periodic=False)
        else:
            P = sample_nonperiodic_point(L8, N, rng, box=60)
        shape = classify_component(build_G2(P, radius=2))
        assert shape.kind in (TREE4, ROOT_LOOPED4), shape.violations


def test_find_non_excluded_start_raises_on_fixed_points(L8):
    # (0,1) and (1,0) are fixed by both generators: nothing survives pruning
    for coords in ((0, 0, 1, 0), (1, 0, 0, 0)):
        P = pt(L8, *coords)
        with pytest.raises(ValueError):
            find_non_excluded_start(P)


def test_classify_flags_cycle():
    # hand-built 4-cycle disguised as a ball: negative control
    import lsurf.schreier as sch
    from lsurf.surface import prototype

    proto = prototype(8, 0)
    keys = [(F(i), F(0), F(0), F(0)) for i in range(4)]
    ball = OrbitGraph(proto=proto, gens=(("A", 1), ("B", 1)), root=keys[0])
    pts = [pt(proto, F(1, 2), F(i + 1, 7), F(1, 3), F(1, 7)) for i in range(4)]
    for key, point in zip(keys, pts):
        ball.points[key] = point
        ball.depth[key] = 0
    ball.depth[keys[1]] = ball.depth[keys[3]] = 1
    ball.depth[keys[2]] = 2
    ball.edges = [
        (keys[0], keys[1], ("A", 1)),
        (keys[1], keys[2], ("B", 1)),
        (keys[2], keys[3], ("A", 1)),
        (keys[3], keys[0], ("B", 1)),
    ]
    ball.expanded = set()
    shape = sch.classify_component(ball)
    assert shape.kind == OTHER
    assert any("edges" in v for v in shape.violations)


# -- Cheeger ----------------------------------------------------------------------


def test_cheeger_examples():
    adj, root, _ = build_root_looped_tree(3)
    M = {root} | set(adj[root])
    assert cheeger_of_set(adj, M) == F(2, 3)
    tadj, troot = build_regular_tree_ball(4, 2)
    ball1 = {troot} | set(tadj[troot])
    assert cheeger_of_set(tadj, ball1) == F(4, 5)
    with pytest.raises(ValueError):
        cheeger_of_set(tadj, set())


def test_cheeger_of_whole_finite_component_is_zero():
    adj = {0: {1}, 1: {0}, 2: {3}, 3: {2}}
    assert cheeger_of_set(adj, {0, 1}) == 0


def _random_graph(rng, n, p):
    adj = {i: set() for i in range(n)}
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < p:
                adj[i].add(j)
                adj[j].add(i)
    return adj


def test_component_min_max_sandwich(rng):
    # c over a disjoint union is between the per-component values
    for _ in range(30):
        n1, n2 = rng.randint(2, 6), rng.randint(2, 6)
        g1 = _random_graph(rng, n1, 0.6)
        g2 = _random_graph(rng, n2, 0.6)
        adj = dict(g1)
        for v, nbrs in g2.items():
            adj[v + n1] = {u + n1 for u in nbrs}
        m1 = {v for v in range(n1) if rng.random() < 0.7}
        m2 = {v + n1 for v in range(n2) if rng.random() < 0.7}
        if not m1 or not m2:
            continue
        c1, c2 = cheeger_of_set(adj, m1), cheeger_of_set(adj, m2)
        c = cheeger_of_set(adj, m1 | m2)
        assert min(c1, c2) <= c <= max(c1, c2)


def test_edge_omission_never_increases_cheeger(rng):
    for _ in range(30):
        n = rng.randint(4, 9)
        adj = _random_graph(rng, n, 0.5)
        edges = [(u, v) for u in adj for v in adj[u] if u < v]
        if not edges:
            continue
        u, v = edges[rng.randrange(len(edges))]
        smaller = {k: set(s) for k, s in adj.items()}
        smaller[u].discard(v)
        smaller[v].discard(u)
        M = {k for k in range(n) if rng.random() < 0.6} or {0}
        assert cheeger_of_set(smaller, M) <= cheeger_of_set(adj, M)


def test_tree_cheeger_profile_values():
    prof = tree_cheeger_profile(2, 8)
    assert prof[0] == F(4, 5)
    assert abs(float(prof[7]) - 2 / 3) < 0.02
    assert all(prof[i] > prof[i + 1] for i in range(7))
    assert all(c > F(2, 3) for c in prof)


def test_tree_cheeger_profile_other_valency():
    prof = tree_cheeger_profile(3, 5)  # 6-regular tree, limit 4/5
    assert all(c > F(4, 5) for c in prof)
    assert abs(float(prof[4]) - 4 / 5) < 0.01


def test_min_cheeger_dp_matches_enumeration():
    adj, root, depths = build_root_looped_tree(5)
    allowed = {v for v, d in depths.items() if d <= 4}
    best_brute = min(
        cheeger_of_set(adj, set(S))
        for S in enumerate_root_subsets(adj, root, allowed, 7)
    )
    # DP restricted to the same size cap must agree exactly
    assert min_cheeger_root_subsets(7, 4) == best_brute
    assert best_brute == F(2, 3)
