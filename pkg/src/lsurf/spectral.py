"""Combinatorial Laplacian, Rayleigh quotients, and the Cheeger sandwich.

The Laplacian sends b to i -> sum over neighbors j of b(i) - b(j); loops
contribute nothing and are dropped on construction.  Exact rational mode is
available for the operator identities; eigenvalue work is double precision
with a deterministic start vector.  For a support S inside a larger host
graph, the Dirichlet bottom mu0(S) = min Rayleigh quotient over functions
vanishing outside S satisfies  c_S^2/(2k) <= mu0(S) <= k*c_S  with
c_S = min c(M) over nonempty M inside S, which is the finite, provable form
of the sandwich used here.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import chain, combinations

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from .schreier import cheeger_of_set


class SpectralConvergenceError(RuntimeError):
    """Eigensolver failed to converge; .residual holds the reported residual."""

    def __init__(self, message: str, residual: float | None = None) -> None:
        super().__init__(message)
        self.residual = residual


@dataclass(frozen=True)
class FiniteGraph:
    """Simple undirected graph on vertices 0..n-1."""

    n: int
    edges: tuple[tuple[int, int], ...]

    @classmethod
    def from_edges(cls, n: int, edges) -> FiniteGraph:
        seen = set()
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range")
            if u == v:
                continue  # loops cancel in b(i) - b(j)
            seen.add((min(u, v), max(u, v)))
        return cls(n=n, edges=tuple(sorted(seen)))

    @classmethod
    def from_adjacency(cls, adj: dict) -> tuple[FiniteGraph, dict]:
        """Relabel arbitrary hashable vertices to 0..n-1; returns (graph, id map)."""
        ids = {v: i for i, v in enumerate(adj)}
        edges = [(ids[u], ids[v]) for u in adj for v in adj[u] if u != v]
        return cls.from_edges(len(ids), edges), ids

    @classmethod
    def from_json_dict(cls, data: dict) -> FiniteGraph:
        n = len(data["vertices"])
        edges = [(e["src"], e["dst"]) for e in data["edges"]]
        return cls.from_edges(n, edges)

    def adjacency(self) -> dict[int, set[int]]:
        adj: dict[int, set[int]] = {i: set() for i in range(self.n)}
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    @property
    def max_degree(self) -> int:
        return max(self.degrees(), default=0)

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        adj = self.adjacency()
        seen = {0}
        stack = [0]
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return len(seen) == self.n


def laplacian_apply(G: FiniteGraph, b) -> list:
    """(Delta b)(i) = deg(i) b(i) - sum of b over neighbors; exact on Fractions."""
    if len(b) != G.n:
        raise ValueError("b must be defined on all vertices")
    out = [x * 0 for x in b] if G.n else []
    for u, v in G.edges:
        out[u] += b[u] - b[v]
        out[v] += b[v] - b[u]
    return out


def quadratic_form(G: FiniteGraph, b):
    """q(b) = sum over edges of (b(i) - b(j))^2; equals <Delta b, b>."""
    acc = 0
    for u, v in G.edges:
        diff = b[u] - b[v]
        acc += diff * diff
    return acc


def inner(a, b):
    return sum(x * y for x, y in zip(a, b))


def rayleigh(G: FiniteGraph, b) -> float:
    """||grad b||^2 / ||b||^2 for nonzero b."""
    nb = inner(b, b)
    if nb == 0:
        raise ValueError("b must be nonzero")
    return quadratic_form(G, b) / nb


def _laplacian_matrix(G: FiniteGraph) -> sp.csr_matrix:
    deg = G.degrees()
    rows = list(range(G.n))
    data = [float(d) for d in deg]
    mat = sp.coo_matrix((data, (rows, rows)), shape=(G.n, G.n)).tolil()
    for u, v in G.edges:
        mat[u, v] -= 1.0
        mat[v, u] -= 1.0
    return mat.tocsr()


def dirichlet_mu0(G: FiniteGraph, support: set[int], dense_cutoff: int = 600) -> float:
    """Minimum Rayleigh quotient over functions vanishing outside the support.

    Equals the smallest eigenvalue of the Laplacian restricted to the support
    rows and columns (degrees taken in the full graph); decreasing in the
    support by inclusion.
    """
    if not support:
        raise ValueError("support must be nonempty")
    idx = sorted(support)
    L = _laplacian_matrix(G)[idx, :][:, idx]
    m = len(idx)
    if m == 1:
        return float(L[0, 0])
    if m <= dense_cutoff:
        return float(np.linalg.eigvalsh(L.toarray())[0])
    v0 = np.ones(m) / np.sqrt(m)
    try:
        vals = spla.eigsh(L, k=1, which="SA", v0=v0, maxiter=20000, tol=0)[0]
    except spla.ArpackNoConvergence as exc:
        residual = float(np.linalg.norm(exc.eigenvalues)) if exc.eigenvalues.size else None
        raise SpectralConvergenceError("eigensolver did not converge", residual) from exc
    return float(vals[0])


def cheeger_min_over_subsets(
    G: FiniteGraph, support: set[int] | None = None, cap: int = 20
) -> tuple[Fraction, frozenset[int]]:
    """Brute-force minimum of c(M) over nonempty M inside the support.

    Exponential in |support|; guarded by the cap.  Defaults to proper subsets
    of the whole vertex set.
    """
    verts = sorted(support) if support is not None else list(range(G.n))
    proper_only = support is None
    if len(verts) > cap:
        raise ValueError(f"support of size {len(verts)} exceeds brute-force cap {cap}")
    adj = G.adjacency()
    best: tuple[Fraction, frozenset[int]] | None = None
    sets = chain.from_iterable(combinations(verts, r) for r in range(1, len(verts) + 1))
    for tup in sets:
        if proper_only and len(tup) == G.n:
            continue
        M = set(tup)
        c = cheeger_of_set(adj, M)
        if best is None or c < best[0]:
            best = (c, frozenset(M))
    assert best is not None
    return best


@dataclass(frozen=True)
class SandwichReport:
    """Outcome of one Cheeger-sandwich verification."""

    cheeger: Fraction
    max_degree: int
    lower: float
    upper: float
    mu0: float
    ok_lower: bool
    ok_upper: bool
    witness: frozenset[int] | None = None

    @property
    def ok(self) -> bool:
        return self.ok_lower and self.ok_upper

    def describe(self) -> str:
        status = "ok" if self.ok else "VIOLATED"
        return (
            f"c={self.cheeger} k={self.max_degree}: "
            f"{self.lower:.6g} <= mu0={self.mu0:.6g} <= {self.upper:.6g} [{status}]"
        )


def sandwich_bracket(c: Fraction | float, k: int) -> tuple[float, float]:
    """(c^2/(2k), k*c), the two-sided bound tied to the Cheeger constant."""
    cf = float(c)
    return cf * cf / (2 * k), k * cf


def cheeger_sandwich_check(
    G: FiniteGraph,
    support: set[int],
    mu0_value: float | None = None,
    cheeger_value: Fraction | None = None,
) -> SandwichReport:
    """Check c_S^2/(2k) <= mu0(S) <= k*c_S for a Dirichlet support S.

    c_S is the exact minimum of c(M) over nonempty subsets of S (brute force
    unless supplied); mu0 is computed if not given.  Both inequalities are
    theorems in this finite Dirichlet form, so a violation report means a bug
    or a bad supplied value, never expected behavior.
    """
    witness = None
    if cheeger_value is None:
        cheeger_value, witness = cheeger_min_over_subsets(G, support)
    mu0 = dirichlet_mu0(G, support) if mu0_value is None else mu0_value
    k = G.max_degree
    lower, upper = sandwich_bracket(cheeger_value, k)
    tol = 1e-9
    return SandwichReport(
        cheeger=cheeger_value,
        max_degree=k,
        lower=lower,
        upper=upper,
        mu0=mu0,
        ok_lower=mu0 >= lower - tol,
        ok_upper=mu0 <= upper + tol,
        witness=witness,
    )


def graph_ball(G: FiniteGraph, root: int, radius: int) -> set[int]:
    """Vertex set within the given hop distance of root."""
    adj = G.adjacency()
    seen = {root}
    layer = [root]
    for _ in range(radius):
        nxt = []
        for v in layer:
            for u in adj[v]:
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        layer = nxt
    return seen
