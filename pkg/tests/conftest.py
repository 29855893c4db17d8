import itertools

import networkx as nx
import pytest

from modlat.modules import ExplicitSpec, semisimple


def ss(*parts):
    return semisimple(*parts)


def ex(moduli, action=()):
    return ExplicitSpec.of(moduli, action)


def brute_subgroups(moduli, action=()):
    """All action-closed subgroups as frozensets of element tuples.

    Independent of the HNF machinery: every subgroup of a t-generated
    abelian group is t-generated, so closing every t-tuple of elements
    under addition and the action reaches each one.
    """
    elems = list(itertools.product(*(range(m) for m in moduli)))

    def add(a, b):
        return tuple((x + y) % m for x, y, m in zip(a, b, moduli))

    def act(A, v):
        return tuple(sum(a * x for a, x in zip(row, v)) % m for row, m in zip(A, moduli))

    found = set()
    for gens in itertools.combinations_with_replacement(elems, len(moduli)):
        S = {tuple(0 for _ in moduli)}
        frontier = list(gens)
        while frontier:
            new = []
            for g in frontier:
                cand = [add(g, s) for s in S] + [act(A, g) for A in action]
                for c in cand + [g]:
                    if c not in S:
                        S.add(c)
                        new.append(c)
            frontier = new
        found.add(frozenset(S))
    return found


def brute_subspaces(q, n):
    """Subspaces of F_p^n (prime q only) as frozensets of vectors."""
    return brute_subgroups([q] * n)


def brute_gamma(G: nx.Graph) -> int:
    nodes = list(G)
    for k in range(len(nodes) + 1):
        for D in itertools.combinations(nodes, k):
            dom = set(D)
            for v in D:
                dom.update(G[v])
            if len(dom) == len(nodes):
                return k
    raise AssertionError


def brute_chi(G: nx.Graph) -> int:
    nodes = list(G)
    if not nodes:
        return 0
    for k in range(1, len(nodes) + 1):
        for cols in itertools.product(range(k), repeat=len(nodes)):
            c = dict(zip(nodes, cols))
            if all(c[a] != c[b] for a, b in G.edges()):
                return k
    raise AssertionError


@pytest.fixture(params=["numba", "numpy"])
def backend(request):
    return request.param
