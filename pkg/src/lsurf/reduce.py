"""Reduction of connection points of L_8 into the bounded set S.

S is the set of canonical points with |x_i|, |y_i| <= 35 + 24w (w = sqrt 2).
A continued-fraction-like loop picks, at each step, a generator power that
shrinks the larger irrational part; periodic points get a fixed conjugating
triple instead.  The accumulated word is an exact certificate: replaying it
on the input reproduces the output.  The measure max(|x_i|, |y_i|) must
strictly decrease over every window of two iterations; a violation raises
immediately (it would mean an implementation bug, not a bad input).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from .modn import components
from .quadfield import QuadNum
from .surface import (
    GeneratorWord,
    InvalidPointError,
    SurfacePoint,
    SurfaceProto,
    apply_A,
    apply_B,
    apply_word,
    is_A_periodic,
    is_B_periodic,
    prototype,
)

_L8 = prototype(8, 0)

CASE_B_PERIODIC = 1
CASE_A_PERIODIC = 2
CASE_SHRINK_Y = 3
CASE_SHRINK_X = 4


class ReduceProgressError(RuntimeError):
    """The 2-step decrease of max(|x_i|, |y_i|) failed: internal error."""


def _require_l8(P: SurfacePoint) -> None:
    if P.proto != _L8:
        raise ValueError(f"reduction is implemented for L8 only, got {P.proto.name}")


def s_bound(proto: SurfaceProto | None = None) -> QuadNum:
    """The complexity cutoff 35 + 24w defining membership in S."""
    proto = proto if proto is not None else _L8
    if proto != _L8:
        raise ValueError("S is defined for L8 only")
    return QuadNum(35, 24, proto.field)


def in_S(P: SurfacePoint) -> bool:
    """Exact membership test |x_i| <= 35+24w and |y_i| <= 35+24w."""
    _require_l8(P)
    bound = s_bound(P.proto)
    return (bound - abs(P.x.i)).sign() >= 0 and (bound - abs(P.y.i)).sign() >= 0


@dataclass(frozen=True)
class ReduceResult:
    input: SurfacePoint
    word: GeneratorWord
    output: SurfacePoint
    steps: int
    trace: tuple[tuple[int, int | None], ...]


def reduce_point(
    P: SurfacePoint, check: bool = False, max_steps: int = 10**6
) -> ReduceResult:
    """Drive P into S, returning the certificate word (application order).

    Case order per iteration: B-periodic, A-periodic, |x_i| < |y_i| (shrink
    |y_i| with a vertical power), else shrink |x_i| with a horizontal power.
    Exponent sign ties resolve toward the positive exponent.
    """
    _require_l8(P)
    w = P.proto.w
    letters: list[tuple[str, int]] = []
    trace: list[tuple[int, int | None]] = []
    cur = P
    m_window: list[Fraction] = []

    while not in_S(cur):
        if len(trace) >= max_steps:
            raise ReduceProgressError(f"no convergence after {max_steps} steps")
        m = max(abs(cur.x.i), abs(cur.y.i))
        m_window.append(m)
        if len(m_window) >= 3:
            if not m_window[-1] < m_window[-3]:
                raise ReduceProgressError(
                    f"measure {m_window[-3]} -> {m_window[-1]} did not decrease "
                    f"over two iterations at step {len(trace)}"
                )
            m_window.pop(0)

        if is_B_periodic(cur):
            cur = apply_A(apply_B(apply_A(cur, 1), -1), -1)
            letters += [("A", 1), ("B", -1), ("A", -1)]
            trace.append((CASE_B_PERIODIC, None))
        elif is_A_periodic(cur):
            cur = apply_B(apply_A(apply_B(cur, 1), -1), -1)
            letters += [("B", 1), ("A", -1), ("B", -1)]
            trace.append((CASE_A_PERIODIC, None))
        elif abs(cur.x.i) < abs(cur.y.i):
            if (cur.x - 1).sign() < 0:
                k = (1 / (abs(cur.x.i) * w)).ceil()
            else:
                k = 1
            plus, minus = apply_A(cur, k), apply_A(cur, -k)
            if abs(plus.y.i) <= abs(minus.y.i):
                cur, e = plus, k
            else:
                cur, e = minus, -k
            letters.append(("A", e))
            trace.append((CASE_SHRINK_Y, e))
        else:
            if (cur.y - 1).sign() < 0:
                l = (1 / (abs(cur.y.i) * (w - 1))).ceil()
            else:
                l = 1
            plus, minus = apply_B(cur, l), apply_B(cur, -l)
            if abs(plus.x.i) <= abs(minus.x.i):
                cur, e = plus, l
            else:
                cur, e = minus, -l
            letters.append(("B", e))
            trace.append((CASE_SHRINK_X, e))

    word = GeneratorWord(letters)
    if check and apply_word(P, word) != cur:
        raise AssertionError("word replay does not reproduce the output")
    return ReduceResult(input=P, word=word, output=cur, steps=len(trace), trace=tuple(trace))


# -- enumeration of S and the orbit-class bracket ----------------------------


def enumerate_S(N: int, proto: SurfaceProto | None = None) -> dict[tuple, SurfacePoint]:
    """All canonical points of S with least common denominator exactly N.

    Numerators over denominator N: the irrational parts range over
    |b|, |d| <= floor(N*(35+24w)) and the rational parts over the finitely
    many values placing the point inside the polygon; gcd(a,b,c,d,N)=1 pins
    the denominator.  Singular corners are skipped; identified edge points
    deduplicate through canonical normalization.
    """
    proto = proto if proto is not None else _L8
    bound = s_bound(proto)
    w = proto.w
    nb = (bound * N).floor()

    def rational_range(i_num: int, period: QuadNum) -> range:
        # r/N + (i_num/N) w in [0, period)  <=>  r in [-i_num*w, N*period - i_num*w)
        lo = (-w * i_num).ceil()
        hi = (period * N - w * i_num).ceil() - 1
        return range(lo, hi + 1)

    points: dict[tuple, SurfacePoint] = {}
    x_pairs = [
        (a, b, gcd(a, b, N))
        for b in range(-nb, nb + 1)
        for a in rational_range(b, proto.p_low)
    ]
    y_pairs = [
        (c, d, gcd(c, d, N))
        for d in range(-nb, nb + 1)
        for c in rational_range(d, proto.poly_height)
    ]
    for a, b, gx in x_pairs:
        for c, d, gy in y_pairs:
            if gcd(gx, gy) != 1:
                continue
            try:
                point = SurfacePoint.from_fractions(
                    proto, Fraction(a, N), Fraction(b, N), Fraction(c, N), Fraction(d, N)
                )
            except InvalidPointError:
                continue
            points.setdefault(point.key, point)
    return points


@dataclass
class BracketReport:
    """Orbit-count bracket [C(N), upper] from the finite reduction graph."""

    N: int
    lower: int
    upper: int
    vertex_count: int
    excluded_periodic: list[str]
    class_sizes: list[int]
    class_representatives: list[str]
    classes: dict[tuple, int] = field(repr=False, default_factory=dict)

    def to_json_dict(self) -> dict:
        return {
            "schema": "lsurf-orbit-bracket-v1",
            "N": self.N,
            "lower_bound_components": self.lower,
            "upper_bound_h_components": self.upper,
            "reduced_set_size": self.vertex_count,
            "excluded_periodic_points": self.excluded_periodic,
            "class_sizes": self.class_sizes,
            "class_representatives": self.class_representatives,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2)


def orbit_class_bracket(
    N: int, proto: SurfaceProto | None = None, max_points: int = 2_000_000
) -> BracketReport:
    """Bracket the number of generator-orbits of denominator-N points.

    Vertices: non-periodic points of S with denominator N.  Edges: each
    vertex joins the reduction of each single generator step applied to it;
    edges stay within one true orbit, so the component count bounds the orbit
    count from above while C(N) bounds it from below.
    """
    proto = proto if proto is not None else _L8
    pts = enumerate_S(N, proto)
    if len(pts) > max_points:
        raise ResourceWarning(f"S has {len(pts)} points, above cap {max_points}")
    excluded = []
    vertices: list[SurfacePoint] = []
    for key, point in pts.items():
        if is_A_periodic(point) and is_B_periodic(point):
            excluded.append(str(point))
        else:
            vertices.append(point)
    index = {p.key: i for i, p in enumerate(vertices)}

    parent = list(range(len(vertices)))

    def find(x: int) -> int:
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    for i, point in enumerate(vertices):
        for gen, exp in (("A", 1), ("A", -1), ("B", 1), ("B", -1)):
            moved = apply_A(point, exp) if gen == "A" else apply_B(point, exp)
            out = reduce_point(moved).output
            j = index.get(out.key)
            if j is None:
                raise AssertionError(f"reduction left the enumerated set: {out}")
            union(i, j)

    groups: dict[int, list[int]] = {}
    for i in range(len(vertices)):
        groups.setdefault(find(i), []).append(i)
    class_sizes = sorted((len(g) for g in groups.values()), reverse=True)
    reps = sorted(str(vertices[min(g)]) for g in groups.values())
    lower = components(N, proto)[0]
    classes = {vertices[i].key: find(i) for i in range(len(vertices))}
    return BracketReport(
        N=N,
        lower=lower,
        upper=len(groups),
        vertex_count=len(vertices),
        excluded_periodic=sorted(excluded),
        class_sizes=class_sizes,
        class_representatives=reps,
        classes=classes,
    )
