"""Closed-form submodule counts for semisimple modules, and complement pairings.

Every count here is an exact Python integer.  Semisimple inputs are either a
``SemisimpleSpec`` or a bare profile: a sequence of ``(multiplicity, d)``
pairs, ``d`` being the size of the endomorphism field of that simple type.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import prod

import networkx as nx
import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from .enumeration import enumerate_subspaces
from .errors import UnsupportedCase
from .field import FieldSpec
from .linalg import subspace_meet_join
from .modules import ModuleSpec, SemisimpleSpec, SubmoduleLattice

Profile = tuple[tuple[int, int], ...]


def profile_of(spec) -> Profile:
    if isinstance(spec, SemisimpleSpec):
        return tuple((c.mult, c.field.q) for c in spec.components)
    return tuple((int(n), int(d)) for n, d in spec)


def gaussian_binomial(n: int, m: int, d: int) -> int:
    """Number of m-dimensional subspaces of an n-dimensional space over a d-element field."""
    if d < 2:
        raise ValueError(f"base d={d} must be at least 2")
    if not 0 <= m <= n:
        raise ValueError(f"need 0 <= m <= n, got m={m}, n={n}")
    num = den = 1
    for k in range(1, m + 1):
        num *= d**n - d ** (k - 1)
        den *= d**m - d ** (k - 1)
    value, rem = divmod(num, den)
    if rem:
        raise ArithmeticError(f"non-integral Gaussian binomial ({n} {m})_{d}")
    return value


def count_maximal_homogeneous(n: int, d: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    value, rem = divmod(d**n - 1, d - 1)
    assert rem == 0
    return value


def count_maximal(spec) -> int:
    return sum(count_maximal_homogeneous(n, d) for n, d in profile_of(spec))


def count_by_length(spec, i: int) -> int:
    prof = profile_of(spec)
    n = sum(m for m, _ in prof)
    if not 0 <= i <= n:
        raise ValueError(f"length {i} outside 0..{n}")
    total = 0
    for parts in itertools.product(*(range(m + 1) for m, _ in prof)):
        if sum(parts) == i:
            total += prod(gaussian_binomial(m, x, d) for (m, d), x in zip(prof, parts))
    return total


def strata_counts(spec) -> list[int]:
    n = sum(m for m, _ in profile_of(spec))
    return [count_by_length(spec, i) for i in range(n + 1)]


def count_intersecting(n: int, d: int, j: int, i: int, m: int) -> int:
    """Length-``i`` submodules of ``nS`` meeting a fixed length-``j`` one in length ``m``."""
    if not (0 <= j <= n and 0 <= i <= n):
        raise ValueError(f"lengths i={i}, j={j} must lie in 0..{n}")
    if not 0 <= m <= min(i, j):
        raise ValueError(f"need 0 <= m <= min(i, j), got m={m}")
    if i - m > n - j:
        raise ValueError(f"need i - m <= n - j, got i={i}, m={m}, n={n}, j={j}")
    return d ** ((i - m) * (j - m)) * gaussian_binomial(n - j, i - m, d) * gaussian_binomial(j, m, d)


def count_complements(spec, sub_multiplicities) -> int:
    prof = profile_of(spec)
    if len(sub_multiplicities) != len(prof):
        raise ValueError("one multiplicity per isotypic component is required")
    out = 1
    for (n, d), m in zip(prof, sub_multiplicities):
        if not 0 <= m <= n:
            raise ValueError(f"multiplicity {m} outside 0..{n}")
        out *= d ** ((n - m) * m)
    return out


# ---------------------------------------------------------------------------
# complement bijections


@lru_cache(maxsize=None)
def component_complement_map(field: FieldSpec, n: int) -> dict:
    """Bijection on the subspaces of ``F_q^n`` sending each to a complement.

    Built stratum by stratum as a perfect bipartite matching between
    dimension ``j`` and dimension ``n - j`` with edges = complementary pairs.
    """
    phi = {}
    for j in range(n + 1):
        left = enumerate_subspaces(field, n, j)
        right = enumerate_subspaces(field, n, n - j)
        rows, cols = [], []
        for a, X in enumerate(left):
            for b, Y in enumerate(right):
                if subspace_meet_join(X, Y)[0].nrows == 0:
                    rows.append(a)
                    cols.append(b)
        graph = csr_matrix((np.ones(len(rows)), (rows, cols)), shape=(len(left), len(right)))
        match = maximum_bipartite_matching(graph, perm_type="column")
        if (match < 0).any():
            raise RuntimeError(f"no perfect complement matching in dimension {j} of F_{field.q}^{n}")
        for a, b in enumerate(match):
            phi[left[a].rows] = right[b].rows
    return phi


def complement_bijection(L: SubmoduleLattice) -> dict[int, int]:
    """Map of lattice indices ``X -> phi(X)`` with ``X & phi(X) = 0`` and ``X + phi(X) = V``."""
    spec = L.ambient
    if not isinstance(spec, SemisimpleSpec):
        raise TypeError("complement bijection needs a semisimple spec")
    maps = [component_complement_map(c.field, c.mult) for c in spec.components]
    out = {}
    for i, X in enumerate(L.members):
        key = tuple(m[rows] for m, rows in zip(maps, X.key))
        out[i] = L.index[key]
    if sorted(out.values()) != list(range(len(L))):
        raise RuntimeError("complement map is not a bijection")
    return out


@dataclass(frozen=True)
class HalfPairing:
    A: tuple[int, ...]
    B: tuple[int, ...]
    alpha: dict
    excluded: int | None = None


def _disjoint(L: SubmoduleLattice, i: int, j: int) -> bool:
    return L.meet(i, j) == L.bottom


def _matching_pairing(L: SubmoduleLattice, stratum, allow_one_left: bool) -> HalfPairing:
    G = nx.Graph()
    G.add_nodes_from(stratum)
    for i, j in itertools.combinations(stratum, 2):
        if _disjoint(L, i, j):
            G.add_edge(i, j)
    matching = nx.max_weight_matching(G, maxcardinality=True)
    pairs = sorted(tuple(sorted(e)) for e in matching)
    covered = {v for e in pairs for v in e}
    left = [v for v in stratum if v not in covered]
    if len(left) > (1 if allow_one_left else 0):
        raise RuntimeError(f"disjointness graph has no near-perfect matching ({len(left)} unmatched)")
    return HalfPairing(
        tuple(a for a, _ in pairs),
        tuple(b for _, b in pairs),
        {a: b for a, b in pairs},
        left[0] if left else None,
    )


def half_pairing(L: SubmoduleLattice, k: int, excluded_vertex: bool = False) -> HalfPairing:
    """Split the length-``k`` stratum into ``A`` and ``B`` matched by disjoint pairs.

    With an odd multiplicity the pairing is built from per-component
    complement maps: a member ``(X1, Y)`` with ``X1`` in the odd component is
    sent to ``(phi(X1), phi(Y))``.  With all multiplicities even and some
    field odd, a perfect matching of the disjointness graph is used.  When
    every multiplicity and every field size is even no pairing is guaranteed;
    ``UnsupportedCase`` is raised unless ``excluded_vertex`` asks for a
    matching that leaves exactly one member out.
    """
    spec = L.ambient
    if not isinstance(spec, SemisimpleSpec):
        raise TypeError("half pairing needs a semisimple spec")
    if L.length != 2 * k:
        raise ValueError(f"composition length {L.length} is not 2*{k}")
    stratum = L.strata[k]
    odd = [c for c, comp in enumerate(spec.components) if comp.mult % 2]
    if odd:
        c1 = odd[0]
        n1 = spec.components[c1].mult
        maps = [component_complement_map(c.field, c.mult) for c in spec.components]
        A, alpha = [], {}
        for i in stratum:
            key = L.members[i].key
            if 2 * len(key[c1]) < n1:
                image = tuple(m[rows] for m, rows in zip(maps, key))
                alpha[i] = L.index[image]
                A.append(i)
        B = sorted(alpha.values())
        if sorted(A + B) != list(stratum) or not all(_disjoint(L, a, b) for a, b in alpha.items()):
            raise RuntimeError("component pairing failed")
        return HalfPairing(tuple(A), tuple(alpha[a] for a in A), alpha)
    if any(c.field.q % 2 for c in spec.components):
        return _matching_pairing(L, stratum, allow_one_left=False)
    if excluded_vertex:
        return _matching_pairing(L, stratum, allow_one_left=True)
    raise UnsupportedCase("all multiplicities and all field sizes are even")


# ---------------------------------------------------------------------------
# formula sides of the graph invariants


@dataclass(frozen=True)
class DominationFacts:
    is_simple: bool
    is_semisimple: bool
    homogeneous: bool
    end_size: int | None = None


def domination_formula(facts: DominationFacts) -> int:
    if facts.is_simple:
        return 0
    if not facts.is_semisimple:
        return 1
    if not facts.homogeneous:
        return 2
    if facts.end_size is None:
        raise ValueError("homogeneous semisimple case needs the endomorphism field size")
    return facts.end_size + 1


def chromatic_formula(spec) -> int:
    prof = profile_of(spec)
    n = sum(m for m, _ in prof)
    if n <= 2:
        raise ValueError("formula needs composition length > 2")
    if n % 2:
        k = (n + 1) // 2
        return sum(count_by_length(prof, i) for i in range(k, n))
    k = n // 2
    if not any(m % 2 for m, _ in prof):
        raise UnsupportedCase("length and all multiplicities are even")
    mid = count_by_length(prof, k)
    assert mid % 2 == 0
    return mid // 2 + sum(count_by_length(prof, i) for i in range(k + 1, n))


@dataclass(frozen=True)
class ColoringBound:
    chi_socle: int
    chi_tilde: int
    n: int
    m: int

    @property
    def value(self) -> int:
        return self.chi_socle + (self.n - 2) * self.chi_tilde + self.m - 1


def chromatic_upper_bound(V: ModuleSpec) -> ColoringBound:
    """Socle-based upper bound on the chromatic number for a non-semisimple module."""
    from .enumeration import enumerate_submodules
    from .graph import chromatic_number, induced_graph

    L = enumerate_submodules(V)
    soc = L.socle
    if soc == L.top:
        raise ValueError("module is semisimple; the bound needs a proper socle")
    below_soc = [int(i) for i in L.below(soc) if i not in (L.bottom, soc)]
    chi_soc = chromatic_number(induced_graph(L, below_soc))
    tilde = sorted(
        {
            L.meet(x, soc)
            for x in range(len(L))
            if not L.leq[x, soc] and not L.leq[soc, x]
        }
    )
    chi_tilde = chromatic_number(induced_graph(L, tilde))
    n = max(int(L.leq[s].sum()) for s in L.strata[1])
    m = int(L.leq[soc].sum())
    return ColoringBound(chi_soc, chi_tilde, n, m)
