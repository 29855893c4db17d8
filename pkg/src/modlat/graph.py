"""Intersection graphs of submodule lattices and their exact invariants.

Vertices are the proper nonzero submodules, identified by their lattice
index; two distinct vertices are adjacent iff they meet in a nonzero
submodule.  All functions report vertex ids (lattice indices), never
positions.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

import networkx as nx
import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components, shortest_path

from . import kernels
from .errors import SizeBoundExceeded
from .modules import Submodule, SubmoduleLattice
from .planarity import is_planar_graph

SOLVER_CAP = 40
PLANARITY_CAP = 60
SKIPPED = "skipped (size bound)"


@dataclass(frozen=True, eq=False)
class IntersectionGraph:
    vertices: tuple[int, ...]
    adj: np.ndarray
    lattice: SubmoduleLattice | None = field(default=None, repr=False)

    def __post_init__(self):
        a = np.asarray(self.adj, dtype=bool)
        if a.shape != (len(self.vertices), len(self.vertices)):
            raise ValueError("adjacency shape does not match the vertex list")
        if a.diagonal().any() or (a != a.T).any():
            raise ValueError("adjacency must be symmetric without loops")
        a.setflags(write=False)
        object.__setattr__(self, "adj", a)
        object.__setattr__(self, "vertices", tuple(int(v) for v in self.vertices))
        object.__setattr__(self, "_pos", {v: i for i, v in enumerate(self.vertices)})

    @classmethod
    def from_networkx(cls, G: nx.Graph) -> "IntersectionGraph":
        nodes = sorted(G)
        return cls(tuple(range(len(nodes))), nx.to_numpy_array(G, nodelist=nodes, dtype=bool))

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def edge_count(self) -> int:
        return int(np.triu(self.adj, 1).sum())

    def pos(self, v: int) -> int:
        return self._pos[v]

    def edge_positions(self) -> list[tuple[int, int]]:
        i, j = np.nonzero(np.triu(self.adj, 1))
        return list(zip(i.tolist(), j.tolist()))

    def edges(self) -> list[tuple[int, int]]:
        return [(self.vertices[i], self.vertices[j]) for i, j in self.edge_positions()]

    def neighbors(self, v: int) -> list[int]:
        return [self.vertices[j] for j in np.nonzero(self.adj[self.pos(v)])[0]]

    def label(self, v: int) -> str:
        return self.lattice.label(v) if self.lattice is not None else str(v)

    def to_networkx(self) -> nx.Graph:
        G = nx.Graph()
        G.add_nodes_from(self.vertices)
        G.add_edges_from(self.edges())
        return G


def _as_index(L: SubmoduleLattice, x) -> int:
    return L.idx(x) if isinstance(x, Submodule) else int(x)


def induced_graph(L: SubmoduleLattice, members, backend: str | None = None) -> IntersectionGraph:
    """Intersection graph on the given lattice members (nonzero ones only)."""
    idx = sorted({_as_index(L, x) for x in members} - {L.bottom})
    adj = kernels.adjacency(L.masks[idx], backend=backend) if idx else np.zeros((0, 0), bool)
    return IntersectionGraph(tuple(idx), adj, L)


def build_graph(L: SubmoduleLattice, backend: str | None = None) -> IntersectionGraph:
    return induced_graph(L, L.proper(), backend=backend)


# ---------------------------------------------------------------------------
# connectivity


def components_and_diameter(G: IntersectionGraph) -> tuple[list[list[int]], list[int]]:
    if G.n == 0:
        return [], []
    A = csr_matrix(G.adj.astype(np.int8))
    ncomp, labels = connected_components(A, directed=False)
    dist = shortest_path(A, directed=False, unweighted=True)
    comps, diams = [], []
    for c in range(ncomp):
        members = np.nonzero(labels == c)[0]
        comps.append([G.vertices[i] for i in members])
        diams.append(int(dist[np.ix_(members, members)].max()))
    order = sorted(range(ncomp), key=lambda c: comps[c][0])
    return [comps[c] for c in order], [diams[c] for c in order]


def _lowlink(G: IntersectionGraph):
    """Iterative DFS returning (articulation positions, bridge position pairs)."""
    n = G.n
    nbrs = [np.nonzero(G.adj[i])[0].tolist() for i in range(n)]
    disc = [-1] * n
    low = [0] * n
    cuts, bridges = set(), []
    t = 0
    for root in range(n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = t
        t += 1
        children = 0
        stack = [(root, -1, iter(nbrs[root]))]
        while stack:
            u, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] < 0:
                    disc[w] = low[w] = t
                    t += 1
                    stack.append((w, u, iter(nbrs[w])))
                    advanced = True
                    break
                if w != parent:
                    low[u] = min(low[u], disc[w])
            if advanced:
                continue
            stack.pop()
            if parent < 0:
                continue
            low[parent] = min(low[parent], low[u])
            if low[u] > disc[parent]:
                bridges.append((min(parent, u), max(parent, u)))
            if parent == root:
                children += 1
            elif low[u] >= disc[parent]:
                cuts.add(parent)
        if children > 1:
            cuts.add(root)
    return cuts, bridges


def cut_vertices(G: IntersectionGraph) -> list[int]:
    cuts, _ = _lowlink(G)
    return sorted(G.vertices[i] for i in cuts)


def cut_edges(G: IntersectionGraph) -> list[tuple[int, int]]:
    _, bridges = _lowlink(G)
    return sorted((G.vertices[i], G.vertices[j]) for i, j in bridges)


def girth_bipartite(G: IntersectionGraph) -> tuple[int | None, bool]:
    n = G.n
    nbrs = [np.nonzero(G.adj[i])[0].tolist() for i in range(n)]
    girth = None
    for s in range(n):
        dist = {s: 0}
        parent = {s: -1}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in nbrs[u]:
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    c = dist[u] + dist[w] + 1
                    if girth is None or c < girth:
                        girth = c
    side = [-1] * n
    bipartite = True
    for s in range(n):
        if side[s] >= 0:
            continue
        side[s] = 0
        queue = deque([s])
        while queue and bipartite:
            u = queue.popleft()
            for w in nbrs[u]:
                if side[w] < 0:
                    side[w] = 1 - side[u]
                    queue.append(w)
                elif side[w] == side[u]:
                    bipartite = False
                    break
    return girth, bipartite


# ---------------------------------------------------------------------------
# exact solvers


def _check_cap(G: IntersectionGraph, cap: int, what: str):
    if G.n > cap:
        raise SizeBoundExceeded(f"{what}: {G.n} vertices exceed the cap of {cap}")


def is_dominating(G: IntersectionGraph, ids) -> bool:
    covered = np.zeros(G.n, dtype=bool)
    for v in ids:
        p = G.pos(v)
        covered[p] = True
        covered |= G.adj[p]
    return bool(covered.all())


def min_dominating_set(G: IntersectionGraph, backend: str | None = None) -> tuple[list[int], int]:
    _check_cap(G, SOLVER_CAP, "domination")
    D = [G.vertices[i] for i in kernels.dominating(G.adj, backend=backend)]
    return D, len(D)


def max_clique(G: IntersectionGraph, backend: str | None = None) -> tuple[list[int], int]:
    _check_cap(G, SOLVER_CAP, "clique")
    C = [G.vertices[i] for i in kernels.max_clique(G.adj, backend=backend)]
    return C, len(C)


def coloring(G: IntersectionGraph, backend: str | None = None) -> tuple[int, dict[int, int]]:
    """Exact chromatic number with an optimal colouring (vertex id -> colour)."""
    _check_cap(G, SOLVER_CAP, "colouring")
    omega = len(kernels.max_clique(G.adj, backend=backend))
    k, colors = kernels.chromatic(G.adj, omega, backend=backend)
    return k, {G.vertices[i]: c for i, c in enumerate(colors)}


def chromatic_number(G: IntersectionGraph, backend: str | None = None) -> int:
    return coloring(G, backend)[0]


def is_planar(G: IntersectionGraph) -> bool:
    _check_cap(G, PLANARITY_CAP, "planarity")
    return is_planar_graph(G.to_networkx())


def lift_dominating_set(L: SubmoduleLattice, U, A) -> list[int]:
    """Turn a dominating set of G(U) into one of G(V) via ``T -> T + W``.

    ``W`` is a maximal member with ``W & U = 0``, found by scanning the
    lattice; the longest such member is maximal.
    """
    u = _as_index(L, U)
    if L.lengths[u] <= 1:
        raise ValueError("U must be nonzero and not simple")
    A = [_as_index(L, a) for a in A]
    sub = induced_graph(L, [int(x) for x in L.below(u) if x not in (L.bottom, u)])
    if not all(a in sub._pos for a in A) or not is_dominating(sub, A):
        raise ValueError("A is not a dominating set of the graph of U")
    disjoint = [x for x in range(len(L)) if L.meet(x, u) == L.bottom]
    w = max(disjoint, key=lambda x: (L.lengths[x], -x))
    lifted = sorted({L.join(a, w) for a in A})
    G = build_graph(L)
    if not all(x in G._pos for x in lifted) or not is_dominating(G, lifted):
        raise RuntimeError("lifted set does not dominate the graph of V")
    return lifted


# ---------------------------------------------------------------------------
# reports and export


@dataclass
class InvariantReport:
    vertices: int
    edges: int
    components: int
    diameters: list[int]
    cut_vertices: list[int]
    cut_edges: list[tuple[int, int]]
    girth: int | None
    bipartite: bool
    gamma: int | str
    chi: int | str
    omega: int | str
    planar: bool | str
    verdicts: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)

    @property
    def connected(self) -> bool:
        return self.components <= 1


def _solve(fn, *args):
    try:
        return fn(*args)
    except SizeBoundExceeded:
        return SKIPPED


def compute_invariants(L: SubmoduleLattice, backend: str | None = None) -> InvariantReport:
    G = build_graph(L, backend)
    comps, diams = components_and_diameter(G)
    girth, bip = girth_bipartite(G)
    dom = _solve(min_dominating_set, G, backend)
    clq = _solve(max_clique, G, backend)
    col = _solve(coloring, G, backend)
    rep = InvariantReport(
        vertices=G.n,
        edges=G.edge_count,
        components=len(comps),
        diameters=diams,
        cut_vertices=cut_vertices(G),
        cut_edges=cut_edges(G),
        girth=girth,
        bipartite=bip,
        gamma=dom if dom == SKIPPED else dom[1],
        chi=col if col == SKIPPED else col[0],
        omega=clq if clq == SKIPPED else clq[1],
        planar=_solve(is_planar, G),
    )
    if dom != SKIPPED:
        rep.witnesses["dominating_set"] = dom[0]
    if clq != SKIPPED:
        rep.witnesses["max_clique"] = clq[0]
    return rep


def report_dict(L: SubmoduleLattice, rep: InvariantReport) -> dict:
    lab = L.label
    return {
        "vertices": rep.vertices,
        "edges": rep.edges,
        "components": rep.components,
        "connected": rep.connected,
        "diameters": rep.diameters,
        "diameter": max(rep.diameters) if rep.diameters else None,
        "cut_vertices": [lab(v) for v in rep.cut_vertices],
        "cut_edges": [[lab(a), lab(b)] for a, b in rep.cut_edges],
        "girth": rep.girth,
        "bipartite": rep.bipartite,
        "gamma": rep.gamma,
        "chi": rep.chi,
        "omega": rep.omega,
        "planar": rep.planar,
        "witnesses": {k: [lab(v) for v in vs] for k, vs in rep.witnesses.items()},
        "verdicts": rep.verdicts,
    }


def to_json(G: IntersectionGraph) -> dict:
    L = G.lattice
    return {
        "vertices": [
            {"id": v, "label": G.label(v), "length": int(L.lengths[v]) if L is not None else None}
            for v in G.vertices
        ],
        "edges": [[a, b] for a, b in G.edges()],
    }


def to_dot(G: IntersectionGraph, name: str = "G") -> str:
    lines = [f"graph {json.dumps(name)} {{"]
    for v in G.vertices:
        lines.append(f"  {v} [label={json.dumps(G.label(v))}];")
    for a, b in G.edges():
        lines.append(f"  {a} -- {b};")
    lines.append("}")
    return "\n".join(lines) + "\n"
