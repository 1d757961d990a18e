"""Orbit balls of the generator action and their component-shape certificates.

Vertices are canonical surface points keyed by their exact coordinate
quadruple, so deduplication is collision-free.  A ball of finite radius can
only certify the *local* structure a component is predicted to have (4-valent
tree, or the same tree with one loop at a singly periodic root); the verdict
is evidence about the infinite component, not a proof.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .surface import (
    SurfacePoint,
    SurfaceProto,
    apply_A,
    apply_B,
    is_A_periodic,
    is_B_periodic,
    n_value,
    s_value,
    thresholds,
)

VertexKey = tuple[Fraction, Fraction, Fraction, Fraction]
GenPower = tuple[str, int]

TREE4 = "Tree4"
ROOT_LOOPED4 = "RootLooped4"
OTHER = "Other"


class ResourceCapError(RuntimeError):
    """Exploration hit the vertex cap; .partial holds the partial ball."""

    def __init__(self, message: str, partial: "OrbitGraph" | None = None) -> None:
        super().__init__(message)
        self.partial = partial


def _apply(P: SurfacePoint, gen: GenPower) -> SurfacePoint:
    g, e = gen
    return apply_A(P, e) if g == "A" else apply_B(P, e)


def _gen_order(gens: list[GenPower] | tuple[GenPower, ...]) -> tuple[GenPower, ...]:
    # deterministic BFS: positive exponent before negative, A before B
    return tuple(sorted(gens, key=lambda ge: (ge[0], ge[1] < 0, abs(ge[1]))))


@dataclass
class OrbitGraph:
    """Finite labeled ball of the orbit graph around a root point."""

    proto: SurfaceProto
    gens: tuple[GenPower, ...]
    root: VertexKey
    points: dict[VertexKey, SurfacePoint] = field(default_factory=dict)
    depth: dict[VertexKey, int] = field(default_factory=dict)
    edges: list[tuple[VertexKey, VertexKey, GenPower]] = field(default_factory=list)
    expanded: set[VertexKey] = field(default_factory=set)
    frontier: set[VertexKey] = field(default_factory=set)
    g2: bool = False
    N: int | None = None
    partial: bool = False

    def order(self) -> int:
        return len(self.points)

    def simple_adjacency(self) -> dict[VertexKey, set[VertexKey]]:
        """Undirected simple view: loops and edge multiplicities dropped."""
        adj: dict[VertexKey, set[VertexKey]] = {v: set() for v in self.points}
        for u, v, _ in self.edges:
            if u != v:
                adj[u].add(v)
                adj[v].add(u)
        return adj

    def loop_vertices(self) -> dict[VertexKey, list[GenPower]]:
        loops: dict[VertexKey, list[GenPower]] = {}
        for u, v, g in self.edges:
            if u == v:
                loops.setdefault(u, []).append(g)
        return loops

    def s_of(self, key: VertexKey) -> Fraction:
        return s_value(self.points[key])

    # -- export ------------------------------------------------------------

    def to_json_dict(self) -> dict:
        ids = {key: n for n, key in enumerate(self.points)}
        return {
            "schema": "lsurf-graph-v1",
            "surface": self.proto.name,
            "root": ids[self.root],
            "g2": self.g2,
            "N": self.N,
            "gens": [[g, e] for g, e in self.gens],
            "vertices": [
                {
                    "id": ids[key],
                    "point": ",".join(str(c) for c in key),
                    "depth": self.depth[key],
                    "s": str(self.s_of(key)),
                    "frontier": key in self.frontier,
                }
                for key in self.points
            ],
            "edges": [
                {"src": ids[u], "dst": ids[v], "gen": g, "exp": e}
                for u, v, (g, e) in self.edges
            ],
        }

    def to_dot(self) -> str:
        ids = {key: n for n, key in enumerate(self.points)}
        lines = ["graph orbitball {"]
        for key in self.points:
            label = ",".join(str(c) for c in key)
            shape = "doublecircle" if key == self.root else "circle"
            lines.append(f'  v{ids[key]} [label="{label}", shape={shape}];')
        for u, v, (g, e) in self.edges:
            lines.append(f'  v{ids[u]} -- v{ids[v]} [label="{g}^{e}"];')
        lines.append("}")
        return "\n".join(lines)


def expand_ball(
    P: SurfacePoint,
    gens: list[GenPower] | tuple[GenPower, ...],
    radius: int,
    max_vertices: int = 200_000,
) -> OrbitGraph:
    """BFS ball of the given radius; vertices deduplicated by exact coordinates."""
    if radius < 0:
        raise ValueError("radius must be >= 0")
    gens = _gen_order(gens)
    ball = OrbitGraph(proto=P.proto, gens=gens, root=P.key)
    ball.points[P.key] = P
    ball.depth[P.key] = 0
    queue = [P.key]
    while queue:
        key = queue.pop(0)
        d = ball.depth[key]
        if d >= radius:
            ball.frontier.add(key)
            continue
        point = ball.points[key]
        for gen in gens:
            img = _apply(point, gen)
            ikey = img.key
            if ikey not in ball.points:
                if len(ball.points) >= max_vertices:
                    ball.partial = True
                    raise ResourceCapError(
                        f"ball exceeded {max_vertices} vertices", partial=ball
                    )
                ball.points[ikey] = img
                ball.depth[ikey] = d + 1
                queue.append(ikey)
            ball.edges.append((key, ikey, gen))
        ball.expanded.add(key)
    return ball


def _jointly_periodic(P: SurfacePoint) -> bool:
    return is_A_periodic(P) and is_B_periodic(P)


def find_non_excluded_start(P: SurfacePoint, search_radius: int = 4) -> SurfacePoint:
    """Nearest orbit point not periodic under both generators (single steps)."""
    if not _jointly_periodic(P):
        return P
    seen = {P.key}
    layer = [P]
    for _ in range(search_radius):
        nxt = []
        for Q in layer:
            for gen in (("A", 1), ("A", -1), ("B", 1), ("B", -1)):
                img = _apply(Q, gen)
                if img.key in seen:
                    continue
                seen.add(img.key)
                if not _jointly_periodic(img):
                    return img
                nxt.append(img)
        layer = nxt
    raise ValueError(
        "no vertex survives the pruning near this start: the whole orbit "
        "neighborhood is periodic under both generators"
    )


def build_G2(
    P: SurfacePoint,
    N: int | None = None,
    radius: int = 3,
    max_vertices: int = 200_000,
) -> OrbitGraph:
    """Ball of the pruned graph: only the four chosen generator powers as
    edges, vertices periodic under both generators removed.

    The exponents are the smallest multiples of N beyond the growth
    thresholds, so same-generator edges at singly periodic points close into
    loops.  Starts from the nearest non-excluded vertex if P itself is pruned.
    """
    P = find_non_excluded_start(P)
    if N is None:
        N = n_value(P)
    th = thresholds(P.proto, N)
    gens: tuple[GenPower, ...] = (("A", th.k), ("A", -th.k), ("B", th.l), ("B", -th.l))
    gens = _gen_order(gens)
    ball = OrbitGraph(proto=P.proto, gens=gens, root=P.key, g2=True, N=N)
    ball.points[P.key] = P
    ball.depth[P.key] = 0
    queue = [P.key]
    while queue:
        key = queue.pop(0)
        d = ball.depth[key]
        if d >= radius:
            ball.frontier.add(key)
            continue
        point = ball.points[key]
        for gen in gens:
            img = _apply(point, gen)
            if _jointly_periodic(img):
                # cannot happen unless the start itself were pruned: a pruned
                # point is fixed by these powers, and the powers are invertible
                raise AssertionError(f"pruned vertex reached from {key}")
            ikey = img.key
            if ikey not in ball.points:
                if len(ball.points) >= max_vertices:
                    ball.partial = True
                    raise ResourceCapError(
                        f"ball exceeded {max_vertices} vertices", partial=ball
                    )
                ball.points[ikey] = img
                ball.depth[ikey] = d + 1
                queue.append(ikey)
            ball.edges.append((key, ikey, gen))
        ball.expanded.add(key)
    return ball


@dataclass
class ComponentShape:
    """Classification verdict for an explored pruned-graph ball."""

    kind: str
    witness: OrbitGraph
    violations: list[str]
    loop_vertex: VertexKey | None = None


def _expected_loop(point: SurfacePoint) -> str | None:
    """Generator whose chosen power fixes the point, if exactly one does."""
    a, b = is_A_periodic(point), is_B_periodic(point)
    if a and not b:
        return "A"
    if b and not a:
        return "B"
    return None


def classify_component(ball: OrbitGraph) -> ComponentShape:
    """Certify the ball as a 4-valent-tree or root-looped-tree fragment.

    Checks, on the explored ball: loops occur exactly at a singly periodic
    vertex (all its same-generator edges), the simple view is acyclic with
    interior valency 4, non-loop neighbors of a periodic vertex have strictly
    larger complexity, and every non-periodic vertex has at most one
    non-increasing neighbor (so any non-backtracking path increases strictly
    once it stops decreasing).  Any failure is reported as Other with the
    explicit violations.
    """
    violations: list[str] = []
    loops = ball.loop_vertices()
    loop_vertex: VertexKey | None = None

    if len(loops) > 1:
        violations.append(f"{len(loops)} looped vertices: {sorted(loops)[:2]}...")
    for v, gens_at_v in loops.items():
        loop_vertex = v
        expected = _expected_loop(ball.points[v])
        if expected is None:
            violations.append(f"loop at a vertex periodic under neither/both: {v}")
        elif any(g != expected for g, _ in gens_at_v):
            violations.append(f"loop labels {gens_at_v} at {v} not all {expected}")

    # acyclicity of the simple view (ball is connected by construction)
    adj = ball.simple_adjacency()
    n_edges = sum(len(nbrs) for nbrs in adj.values()) // 2
    if n_edges != ball.order() - 1:
        violations.append(f"simple view has {n_edges} edges on {ball.order()} vertices")

    out_edges: dict[VertexKey, dict[GenPower, VertexKey]] = {}
    for u, v, gen in ball.edges:
        out_edges.setdefault(u, {})[gen] = v

    for key in ball.expanded:
        point = ball.points[key]
        images = out_edges.get(key, {})
        non_loop = [v for v in images.values() if v != key]
        distinct = set(non_loop)
        if len(distinct) != len(non_loop):
            violations.append(f"parallel edges at {key}")
        periodic_gen = _expected_loop(point)
        if key not in loops and periodic_gen is not None and ball.g2:
            violations.append(f"singly periodic vertex {key} misses its loop")
        want_degree = 2 if key in loops else 4
        if len(distinct) != want_degree:
            violations.append(
                f"vertex {key} has {len(distinct)} distinct neighbors, wanted {want_degree}"
            )
        s_here = s_value(point)
        non_increasing = [v for v in distinct if ball.s_of(v) <= s_here]
        if key in loops:
            if non_increasing:
                violations.append(f"periodic vertex {key} has non-growing neighbors")
        elif len(non_increasing) > 1:
            violations.append(f"{len(non_increasing)} non-growing neighbors at {key}")

    if violations:
        return ComponentShape(OTHER, ball, violations, loop_vertex)
    if loops:
        return ComponentShape(ROOT_LOOPED4, ball, [], loop_vertex)
    return ComponentShape(TREE4, ball, [])


def root_paths_strictly_increasing(ball: OrbitGraph) -> bool:
    """True iff the complexity grows strictly along every tree edge away from
    the root (equivalently along every non-backtracking root path in a tree
    ball).  Holds whenever the root is the component's periodic vertex."""
    parent: dict[VertexKey, VertexKey] = {}
    for u, v, _ in ball.edges:
        if u != v and v not in parent and ball.depth[v] == ball.depth[u] + 1:
            parent[v] = u
    for key, p in parent.items():
        if not ball.s_of(key) > ball.s_of(p):
            return False
    return True


# -- Cheeger utilities -------------------------------------------------------


def cheeger_of_set(adj: dict, M: set) -> Fraction:
    """Exact |boundary(M)| / |M| for a finite vertex set in a simple graph."""
    if not M:
        raise ValueError("M must be nonempty")
    boundary = 0
    for v in M:
        if any(u not in M for u in adj[v] if u != v):
            boundary += 1
    return Fraction(boundary, len(M))


def tree_cheeger_profile(k: int, n_max: int) -> list[Fraction]:
    """c(B_n) for balls in the 2k-regular tree, n = 1..n_max, closed form.

    |B_n| = 1 + 2k((2k-1)^n - 1)/(2k-2) and the boundary is the outer sphere
    of 2k(2k-1)^(n-1) vertices; the sequence decreases to (2k-2)/(2k-1).
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    out = []
    q = 2 * k - 1
    for n in range(1, n_max + 1):
        size = 1 + 2 * k * (q**n - 1) // (q - 1) if q > 1 else 1 + 2 * n
        sphere = 2 * k * q ** (n - 1)
        out.append(Fraction(sphere, size))
    return out


def build_regular_tree_ball(degree: int, radius: int) -> tuple[dict[int, set[int]], int]:
    """Adjacency of the radius-r ball in the infinite degree-d tree; root 0."""
    adj: dict[int, set[int]] = {0: set()}
    next_id = 1
    level = [0]
    for _ in range(radius):
        new_level = []
        for v in level:
            n_children = degree if v == 0 else degree - 1
            for _ in range(n_children):
                adj[next_id] = {v}
                adj[v].add(next_id)
                new_level.append(next_id)
                next_id += 1
        level = new_level
    return adj, 0


def build_root_looped_tree(depth: int) -> tuple[dict[int, set[int]], int, dict[int, int]]:
    """Truncated root-looped 4-valent tree: root with a loop and 2 children,
    every other vertex with 3 children, down to the given depth.

    The loop is kept out of the adjacency (it never affects boundaries).
    Returns (adjacency, root, depth_of_vertex).
    """
    adj: dict[int, set[int]] = {0: set()}
    depths = {0: 0}
    next_id = 1
    level = [0]
    for d in range(depth):
        new_level = []
        for v in level:
            n_children = 2 if v == 0 else 3
            for _ in range(n_children):
                adj[next_id] = {v}
                adj[v].add(next_id)
                depths[next_id] = d + 1
                new_level.append(next_id)
                next_id += 1
        level = new_level
    return adj, 0, depths


def min_cheeger_root_subsets(max_size: int, depth: int) -> Fraction:
    """Exact minimum of c(M) over connected root-containing subsets of the
    root-looped tree with |M| <= max_size and vertices within the given depth.

    Tree dynamic program over (remaining depth, subset size): a vertex is
    interior iff all its children in the infinite tree are included, so the
    optimum per size is the minimal count of vertices with a missing child.
    Exhausts the same search space as literal enumeration, exactly.
    """
    INF = max_size + 10

    # g[lvl][m] = min boundary count of an m-vertex connected subset rooted at
    # a non-root vertex with lvl more levels available below it
    g: list[list[int]] = []
    g0 = [INF] * (max_size + 1)
    g0[1] = 1  # children exist only beyond the allowed depth
    g.append(g0)
    for lvl in range(1, depth + 1):
        prev = g[lvl - 1]
        # best[c][s] = min cost of filling c children with total size s
        best = [[INF] * (max_size + 1) for _ in range(4)]
        best[0][0] = 0
        for c in range(1, 4):
            for s in range(max_size + 1):
                acc = INF
                for m in range(1, s + 1):
                    if prev[m] < INF and best[c - 1][s - m] < INF:
                        acc = min(acc, prev[m] + best[c - 1][s - m])
                best[c][s] = acc
        cur = [INF] * (max_size + 1)
        for m in range(1, max_size + 1):
            for c in range(0, 4):
                sub = best[c][m - 1]
                if sub >= INF:
                    continue
                cur[m] = min(cur[m], (0 if c == 3 else 1) + sub)
        g.append(cur)

    # root: 2 children (plus a loop, which never contributes boundary)
    child = g[depth - 1] if depth >= 1 else g[0]
    best2 = [[INF] * (max_size + 1) for _ in range(3)]
    best2[0][0] = 0
    for c in range(1, 3):
        for s in range(max_size + 1):
            acc = INF
            for m in range(1, s + 1):
                if child[m] < INF and best2[c - 1][s - m] < INF:
                    acc = min(acc, child[m] + best2[c - 1][s - m])
            best2[c][s] = acc
    out = None
    for m in range(1, max_size + 1):
        for c in range(0, 3):
            sub = best2[c][m - 1]
            if sub >= INF:
                continue
            cost = Fraction((0 if c == 2 else 1) + sub, m)
            if out is None or cost < out:
                out = cost
    assert out is not None
    return out


def enumerate_root_subsets(
    adj: dict[int, set[int]], root: int, allowed: set[int], max_size: int
):
    """All connected subsets containing root within `allowed`, up to max_size.

    Breadth-first growth with frozenset deduplication; exponential, meant for
    cross-checking the DP at small sizes.
    """
    start = frozenset({root})
    seen = {start}
    frontier = [start]
    while frontier:
        grown: list[frozenset[int]] = []
        for S in frontier:
            yield S
            if len(S) >= max_size:
                continue
            for v in S:
                for u in adj[v]:
                    if u in allowed and u not in S:
                        T = S | {u}
                        if T not in seen:
                            seen.add(T)
                            grown.append(T)
        frontier = grown
