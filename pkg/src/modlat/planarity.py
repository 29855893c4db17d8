"""Planarity test by path addition on biconnected blocks.

Each block is embedded greedily: start from a cycle, then repeatedly pick a
fragment (an unembedded edge between embedded vertices, or a component of the
remaining vertices with its attaching edges), find the faces that hold all of
its attachment vertices, and route one attachment-to-attachment path through
such a face.  A fragment with a single admissible face is always served
first; a fragment with none proves the block non-planar.  A graph is planar
iff each of its blocks is.
"""

from __future__ import annotations

from collections import deque

import networkx as nx


def _fragments(G: nx.Graph, hv: set, he: set):
    out = []
    for u, v in G.edges:
        if u in hv and v in hv and frozenset((u, v)) not in he:
            out.append(("edge", (u, v), {u, v}))
    rest = G.subgraph(x for x in G if x not in hv)
    for comp in nx.connected_components(rest):
        attach = {w for x in comp for w in G[x] if w in hv}
        out.append(("comp", comp, attach))
    return out


def _path(G: nx.Graph, frag) -> list:
    kind, body, attach = frag
    if kind == "edge":
        return list(body)
    a = min(attach, key=repr)
    start = min((x for x in G[a] if x in body), key=repr)
    prev = {start: None}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        ends = [w for w in G[x] if w in attach and w != a]
        if ends:
            b = min(ends, key=repr)
            path = [x]
            while prev[path[-1]] is not None:
                path.append(prev[path[-1]])
            return [a] + path[::-1] + [b]
        for w in sorted(G[x], key=repr):
            if w in body and w not in prev:
                prev[w] = x
                queue.append(w)
    raise RuntimeError("fragment of a biconnected block has a single attachment")


def _split(face: list, path: list) -> tuple[list, list]:
    a, b = path[0], path[-1]
    inner = path[1:-1]
    ia, ib = face.index(a), face.index(b)
    k = len(face)
    arc_ab = [face[(ia + s) % k] for s in range((ib - ia) % k + 1)]
    arc_ba = [face[(ib + s) % k] for s in range((ia - ib) % k + 1)]
    return arc_ab + inner[::-1], arc_ba + inner


def _block_planar(B: nx.Graph) -> bool:
    n, m = B.number_of_nodes(), B.number_of_edges()
    if n <= 4 or m <= n:
        return True
    if m > 3 * n - 6:
        return False
    cycle = [u for u, _ in nx.find_cycle(B)]
    faces = [list(cycle), list(cycle)]
    hv = set(cycle)
    he = {frozenset((cycle[i], cycle[(i + 1) % len(cycle)])) for i in range(len(cycle))}
    while True:
        frags = _fragments(B, hv, he)
        if not frags:
            return True
        choice = None
        for frag in frags:
            ok = [f for f in range(len(faces)) if frag[2] <= set(faces[f])]
            if not ok:
                return False
            if choice is None or len(ok) == 1:
                choice = (frag, ok[0])
                if len(ok) == 1:
                    break
        frag, f = choice
        path = _path(B, frag)
        f1, f2 = _split(faces[f], path)
        faces[f] = f1
        faces.append(f2)
        hv.update(path)
        he.update(frozenset(e) for e in zip(path, path[1:]))


def is_planar_graph(G: nx.Graph) -> bool:
    n, m = G.number_of_nodes(), G.number_of_edges()
    if n >= 3 and m > 3 * n - 6:
        return False
    for block in nx.biconnected_components(G):
        if not _block_planar(G.subgraph(block)):
            return False
    return True
