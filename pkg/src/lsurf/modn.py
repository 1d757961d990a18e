"""Residue-vector orbit graph: the finite shadow of the generator action mod N.

Connection points with least common denominator N project to numerator
vectors [a, b, c, d] in (Z/N)^4 with gcd(a, b, c, d, N) = 1; both generators
descend to invertible affine-free linear maps on these vectors.  The number of
connected components C(N) of the resulting graph bounds the orbit count from
below.  Components are computed twice: a vectorized label-propagation pass
(fast path) and an independent union-find pass (cross-check).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from .surface import SurfaceProto, SurfacePoint, n_value, prototype


class ModNResourceError(RuntimeError):
    """Vertex count N**4 exceeds the configured cap."""


@dataclass(frozen=True)
class ModNVec:
    """Vertex [a, b, c, d] of the mod-N graph; requires gcd(a,b,c,d,N) = 1."""

    N: int
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        if self.N < 1:
            raise ValueError("N must be >= 1")
        for name in "abcd":
            v = getattr(self, name)
            if not 0 <= v < max(self.N, 1):
                raise ValueError(f"residue {name}={v} out of range mod {self.N}")
        if gcd(self.a, self.b, self.c, self.d, self.N) != 1:
            raise ValueError("gcd(a, b, c, d, N) must be 1")

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.a, self.b, self.c, self.d)

    def __str__(self) -> str:
        return f"[{self.a},{self.b},{self.c},{self.d}] mod {self.N}"


def _coeffs(proto: SurfaceProto) -> tuple[int, int]:
    """(e, eps) with w^2 = e + f*w; e must be an integer for the action to
    descend to numerators mod N.  The per-eps wiring (from expanding the twist
    terms x*w, y*(1+w), ... over the basis 1, w):
      eps=0:  A: c += e*b,     d += a;      B: a += c + e*d, b += c + d
      eps=+1: A: c += e*b - a, d += a;      B: a += c + e*d, b += c + 2*d
      eps=-1: A: c += e*b,     d += a + b;  B: a += e*d,     b += c + d
    """
    e = proto.field.e
    if e.denominator != 1:
        raise ValueError("mod-N action needs integer e = w^2 - f*w")
    return int(e), proto.eps


def act(v: ModNVec, gen: str, proto: SurfaceProto | None = None) -> ModNVec:
    """One generator step on a residue vector.

    gen is "A", "B", "A-1" or "B-1".  Default coefficients are those of L_8;
    passing another prototype uses its (experimental) linearized action.
    """
    proto = proto if proto is not None else _L8
    e, eps = _coeffs(proto)
    N = v.N
    a, b, c, d = v.a, v.b, v.c, v.d
    if gen == "A":
        if eps == 0:
            c, d = c + e * b, d + a
        elif eps == 1:
            c, d = c + e * b - a, d + a
        else:
            c, d = c + e * b, d + a + b
    elif gen == "A-1":
        if eps == 0:
            c, d = c - e * b, d - a
        elif eps == 1:
            c, d = c - e * b + a, d - a
        else:
            c, d = c - e * b, d - a - b
    elif gen == "B":
        if eps == 0:
            a, b = a + c + e * d, b + c + d
        elif eps == 1:
            a, b = a + c + e * d, b + c + 2 * d
        else:
            a, b = a + e * d, b + c + d
    elif gen == "B-1":
        if eps == 0:
            a, b = a - c - e * d, b - c - d
        elif eps == 1:
            a, b = a - c - e * d, b - c - 2 * d
        else:
            a, b = a - e * d, b - c - d
    else:
        raise ValueError(f"unknown generator {gen!r}")
    return ModNVec(N, a % N, b % N, c % N, d % N)


def project(P: SurfacePoint) -> ModNVec:
    """Numerators of (x_r, x_i, y_r, y_i) over the common denominator N, mod N."""
    N = n_value(P)
    comps = []
    for frac in (P.x.r, P.x.i, P.y.r, P.y.i):
        scaled = frac * N
        assert scaled.denominator == 1
        comps.append(scaled.numerator % N)
    return ModNVec(N, *comps)


# -- component counting -----------------------------------------------------


def _perm_images(N: int, e: int, eps: int) -> list[np.ndarray]:
    """Dense index permutations for A, A^-1, B, B^-1 over all of (Z/N)^4."""
    idx = np.arange(N**4, dtype=np.int64)
    d = idx % N
    c = (idx // N) % N
    b = (idx // N**2) % N
    a = idx // N**3

    def enc(a_, b_, c_, d_):
        return ((a_ * N + b_) * N + c_) * N + d_

    if eps == 0:
        imgs = [
            enc(a, b, (c + e * b) % N, (d + a) % N),
            enc(a, b, (c - e * b) % N, (d - a) % N),
            enc((a + c + e * d) % N, (b + c + d) % N, c, d),
            enc((a - c - e * d) % N, (b - c - d) % N, c, d),
        ]
    elif eps == 1:
        imgs = [
            enc(a, b, (c + e * b - a) % N, (d + a) % N),
            enc(a, b, (c - e * b + a) % N, (d - a) % N),
            enc((a + c + e * d) % N, (b + c + 2 * d) % N, c, d),
            enc((a - c - e * d) % N, (b - c - 2 * d) % N, c, d),
        ]
    else:
        imgs = [
            enc(a, b, (c + e * b) % N, (d + a + b) % N),
            enc(a, b, (c - e * b) % N, (d - a - b) % N),
            enc((a + e * d) % N, (b + c + d) % N, c, d),
            enc((a - e * d) % N, (b - c - d) % N, c, d),
        ]
    return imgs


def _valid_mask(N: int) -> np.ndarray:
    idx = np.arange(N**4, dtype=np.int64)
    d = idx % N
    c = (idx // N) % N
    b = (idx // N**2) % N
    a = idx // N**3
    g = np.gcd(np.gcd(a, b), np.gcd(c, d))
    return np.gcd(g, N) == 1


def components(
    N: int, proto: SurfaceProto | None = None, max_vertices: int = 10**8
) -> tuple[int, list[ModNVec]]:
    """Connected components of the mod-N graph under both generators.

    Returns the count and one representative per component (smallest vector
    in lexicographic order).  Undirected closure: inverse edges included.
    """
    proto = proto if proto is not None else _L8
    if N < 1:
        raise ValueError("N must be >= 1")
    if N**4 > max_vertices:
        raise ModNResourceError(f"{N}^4 = {N**4} vertices exceeds cap {max_vertices}")
    if N == 1:
        return 1, [ModNVec(1, 0, 0, 0, 0)]
    labels = component_labels(N, proto)
    mask = _valid_mask(N)
    roots = np.unique(labels[mask])
    reps = []
    for r in roots:
        d = int(r % N)
        c = int((r // N) % N)
        b = int((r // N**2) % N)
        a = int(r // N**3)
        reps.append(ModNVec(N, a, b, c, d))
    return len(roots), reps


def dense_index(v: ModNVec) -> int:
    return ((v.a * v.N + v.b) * v.N + v.c) * v.N + v.d


def component_labels(N: int, proto: SurfaceProto | None = None) -> np.ndarray:
    """Label array over the dense (Z/N)^4 index; equal labels = same component."""
    proto = proto if proto is not None else _L8
    if N == 1:
        return np.zeros(1, dtype=np.int64)
    e, eps = _coeffs(proto)
    imgs = _perm_images(N, e, eps)
    labels = np.arange(N**4, dtype=np.int64)
    while True:
        new = labels
        for img in imgs:
            new = np.minimum(new, labels[img])
        new = new[new]
        if np.array_equal(new, labels):
            return labels
        labels = new


class _UnionFind:
    """Classic union-find with path compression; the independent second path."""

    def __init__(self, n: int) -> None:
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> None:
        rx, ry = self.find(x), self.find(y)
        if rx == ry:
            return
        if self.rank[rx] < self.rank[ry]:
            rx, ry = ry, rx
        self.parent[ry] = rx
        if self.rank[rx] == self.rank[ry]:
            self.rank[rx] += 1


def components_unionfind(N: int, proto: SurfaceProto | None = None) -> int:
    """Component count via union-find over explicit edges (cross-check path)."""
    proto = proto if proto is not None else _L8
    if N == 1:
        return 1
    e, eps = _coeffs(proto)
    size = N**4
    uf = _UnionFind(size)
    imgA, _, imgB, _ = _perm_images(N, e, eps)
    for i in range(size):
        uf.union(i, int(imgA[i]))
        uf.union(i, int(imgB[i]))
    mask = _valid_mask(N)
    roots = {uf.find(i) for i in range(size) if mask[i]}
    return len(roots)


def component_table(
    n_max: int, proto: SurfaceProto | None = None
) -> list[tuple[int, int]]:
    """(N, C(N)) for N = 1..n_max."""
    return [(N, components(N, proto)[0]) for N in range(1, n_max + 1)]


def multiplicativity_report(n_max: int) -> list[dict]:
    """Probe C(N*M) ?= C(N)*C(M) for coprime N, M with N*M <= n_max.

    Reported, not asserted: the identity is conjectural.
    """
    table = dict(component_table(n_max))
    rows = []
    for n in range(2, n_max + 1):
        for m in range(n + 1, n_max + 1):
            if n * m > n_max or gcd(n, m) != 1:
                continue
            rows.append(
                {
                    "N": n,
                    "M": m,
                    "C(N)": table[n],
                    "C(M)": table[m],
                    "C(NM)": table[n * m],
                    "multiplicative": table[n] * table[m] == table[n * m],
                }
            )
    return rows


_L8 = prototype(8, 0)
