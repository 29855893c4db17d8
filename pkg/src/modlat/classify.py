"""Structural predictions of graph properties, read off the submodule lattice.

Nothing here looks at the intersection graph.  Each verdict is computed from
lengths, maximal submodules, socles and the isotypic shape of semisimple
members, so it can be compared against the graph algorithms.
"""

from __future__ import annotations

from dataclasses import dataclass

from .counting import chromatic_formula
from .errors import UnsupportedCase
from .modules import SubmoduleLattice


@dataclass(frozen=True)
class IsotypicClass:
    atoms: tuple[int, ...]
    mult: int
    end_size: int | None  # None when mult == 1: the lattice cannot see |End|


def _isomorphic_atoms(L: SubmoduleLattice, s: int, t: int) -> bool:
    # S + T has exactly two atoms iff S and T are not isomorphic
    return len(L.atoms_of(L.join(s, t))) > 2


def isotypic_profile(L: SubmoduleLattice, i: int | None = None) -> tuple[IsotypicClass, ...]:
    """Isotypic decomposition of the semisimple member ``i`` (default: top)."""
    i = L.top if i is None else i
    if not L.is_semisimple(i):
        raise ValueError("member is not semisimple")
    classes: list[list[int]] = []
    for a in L.atoms_of(i):
        for c in classes:
            if _isomorphic_atoms(L, c[0], a):
                c.append(a)
                break
        else:
            classes.append([a])
    out = []
    for c in classes:
        if len(c) == 1:
            out.append(IsotypicClass(tuple(c), 1, None))
            continue
        d = len(L.atoms_of(L.join(c[0], c[1]))) - 1
        span = L.bottom
        for a in c:
            span = L.join(span, a)
        n = int(L.lengths[span])
        if (d**n - 1) // (d - 1) != len(c):
            raise RuntimeError("atom count does not match a projective space")
        out.append(IsotypicClass(tuple(c), n, d))
    return tuple(out)


def profile_from_lattice(L: SubmoduleLattice, i: int | None = None) -> tuple[tuple[int, int | None], ...]:
    return tuple(sorted(((c.mult, c.end_size) for c in isotypic_profile(L, i)), key=lambda x: (x[0], x[1] or 0)))


def fm(L: SubmoduleLattice, i: int | None = None) -> int:
    """Number of maximal submodules of member ``i``."""
    return len(L.maximals_of(L.top if i is None else i))


def _three_distinct(L: SubmoduleLattice, i: int) -> bool:
    return L.is_semisimple(i) and L.lengths[i] == 3 and all(c.mult == 1 for c in isotypic_profile(L, i))


def _sst_end2(L: SubmoduleLattice) -> bool:
    if not L.is_semisimple(L.top) or L.length != 3:
        return False
    shape = sorted((c.mult, c.end_size) for c in isotypic_profile(L))
    return len(shape) == 2 and shape[1] == (2, 2)


def k3_free_conditions(L: SubmoduleLattice) -> list[str]:
    n = L.length
    out = []
    if n <= 2:
        out.append("length<=2")
    if n == 3 and fm(L) == 1:
        out.append("length3-unique-maximal")
    return out


def k4_free_conditions(L: SubmoduleLattice) -> list[str]:
    n, ss, top = L.length, L.is_semisimple(L.top), L.top
    out = []
    if n <= 2:
        out.append("a")
    if n == 3 and not ss and fm(L) <= 2:
        out.append("b")
    if _three_distinct(L, top):
        out.append("c")
    if n == 4 and fm(L) == 1 and fm(L, L.maximals_of(top)[0]) == 1:
        out.append("d")
    return out


def k5_free_conditions(L: SubmoduleLattice) -> list[str]:
    n, ss, top = L.length, L.is_semisimple(L.top), L.top
    maxs = L.maximals_of(top)
    out = []
    if n <= 2:
        out.append("a")
    if n == 3 and not ss and fm(L) <= 3:
        out.append("b")
    if _three_distinct(L, top):
        out.append("c")
    if _sst_end2(L):
        out.append("d")
    if n == 4 and len(maxs) == 1 and fm(L, maxs[0]) <= 2:
        out.append("e")
    if n == 4 and len(maxs) == 1 and _three_distinct(L, maxs[0]):
        out.append("f")
    if n == 4 and len(maxs) == 2 and all(fm(L, j) == 1 for j in maxs):
        out.append("g")
    if n == 5 and len(maxs) == 1:
        j1 = maxs[0]
        m1 = L.maximals_of(j1)
        if len(m1) == 1 and fm(L, m1[0]) == 1:
            out.append("h")
    return out


def predicted_connected(L: SubmoduleLattice) -> bool | None:
    if L.length <= 1:
        return None
    return not L.is_semisimple(L.top) or L.length >= 3


def predicted_cut_vertices(L: SubmoduleLattice) -> list[int]:
    soc = L.socle
    if soc != L.top and L.lengths[soc] == 2 and L.lengths[soc] == L.length - 1:
        return [soc]
    return []


def predicted_cut_edges(L: SubmoduleLattice) -> list[tuple[int, int]]:
    if L.length != 3:
        return []
    maxs = set(L.strata[2])
    out = []
    for s in L.strata[1]:
        above = [m for m in L.above(s) if int(m) in maxs]
        if len(above) == 1:
            out.append(tuple(sorted((s, int(above[0])))))
    return sorted(out)


def predicted_acyclic(L: SubmoduleLattice) -> bool:
    return L.length <= 2 or (L.length == 3 and fm(L) == 1)


def predicted_gamma(L: SubmoduleLattice) -> int:
    if L.length <= 1:
        return 0
    if not L.is_semisimple(L.top):
        return 1
    prof = isotypic_profile(L)
    if len(prof) > 1:
        return 2
    return prof[0].end_size + 1


def predicted_chi(L: SubmoduleLattice) -> int | None:
    """Closed-form chromatic number for semisimple tops, None where it is not known."""
    if L.length <= 2 or not L.is_semisimple(L.top):
        return None
    prof = [(c.mult, c.end_size or 2) for c in isotypic_profile(L)]
    try:
        return chromatic_formula(prof)
    except UnsupportedCase:
        return None


def verdicts(L: SubmoduleLattice) -> dict:
    k5 = k5_free_conditions(L)
    return {
        "connected": predicted_connected(L),
        "edgeless": L.length <= 2,
        "cut_vertices": predicted_cut_vertices(L),
        "cut_edges": predicted_cut_edges(L),
        "acyclic": predicted_acyclic(L),
        "bipartite": predicted_acyclic(L),
        "gamma": predicted_gamma(L),
        "chi": predicted_chi(L),
        "k3_free": bool(k3_free_conditions(L)),
        "k4_free": bool(k4_free_conditions(L)),
        "k5_free": bool(k5),
        "k5_conditions": k5,
        "planar": bool(k5),
    }


def classify_structure(V, L: SubmoduleLattice | None = None) -> dict:
    if L is None:
        from .enumeration import enumerate_submodules

        L = enumerate_submodules(V)
    return verdicts(L)
