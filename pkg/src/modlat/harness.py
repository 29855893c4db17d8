"""Executable checks of the closed forms and characterizations.

Each check runs over named families from the bundled manifest and compares
a formula or structural prediction with a brute-force computation, one
instance at a time.  Instances above the solver caps are reported as
skipped, never as passing.
"""

from __future__ import annotations

import itertools
import math
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from typing import Callable

import numpy as np
import yaml

from . import classify, counting, graph
from .enumeration import enumerate_subspaces, enumerate_submodules, finiteness_predicate
from .errors import SizeBoundExceeded, UnsupportedCase
from .field import field_of_size, is_prime
from .goursat import ProductModel, _Quotient
from .linalg import subspace_meet_join
from .modules import ExplicitSpec, ModuleSpec, SemisimpleSpec, semisimple
from .specio import spec_from_data, spec_to_data

SCHEMA_VERSION = 1
SCALES = ("small", "full")


class UnknownCheck(KeyError):
    pass


@dataclass
class Outcome:
    status: str  # pass | fail | skipped
    hypothesis: bool = True
    expected: object = None
    computed: object = None
    note: str = ""


def compare(expected, computed, hypothesis: bool = True, note: str = "") -> Outcome:
    return Outcome("pass" if expected == computed else "fail", hypothesis, expected, computed, note)


def holds(ok: bool, hypothesis: bool = True, expected=True, computed=None, note: str = "") -> Outcome:
    return Outcome("pass" if ok else "fail", hypothesis, expected, ok if computed is None else computed, note)


@dataclass(frozen=True)
class Check:
    id: str
    title: str
    families: tuple[str, ...]
    fn: Callable
    negative_control: bool = False


REGISTRY: dict[str, Check] = {}


def check(id: str, title: str, families, negative_control: bool = False):
    def deco(fn):
        REGISTRY[id] = Check(id, title, tuple(families), fn, negative_control)
        return fn

    return deco


# ---------------------------------------------------------------------------
# manifest


@lru_cache(maxsize=None)
def load_manifest() -> dict:
    text = resources.files("modlat").joinpath("data/manifest.yaml").read_text(encoding="utf-8")
    data = yaml.safe_load(text)
    if data.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"manifest schema_version {data.get('schema_version')} is not {SCHEMA_VERSION}")
    return data


def family(name: str, scale: str) -> list:
    if scale not in SCALES:
        raise ValueError(f"unknown scale {scale!r}; expected one of {SCALES}")
    fam = load_manifest()["families"][name]
    items = list(fam.get("small", []))
    if scale == "full":
        items += fam.get("extra", [])
    return items


# ---------------------------------------------------------------------------
# cached per-spec computations


@lru_cache(maxsize=None)
def _lattice(spec: ModuleSpec):
    return enumerate_submodules(spec)


@lru_cache(maxsize=None)
def _graph(spec: ModuleSpec):
    return graph.build_graph(_lattice(spec))


@lru_cache(maxsize=None)
def _invariants(spec: ModuleSpec):
    return graph.compute_invariants(_lattice(spec))


@lru_cache(maxsize=None)
def _verdicts(spec: ModuleSpec):
    return classify.verdicts(_lattice(spec))


def _hom(n: int, q: int) -> SemisimpleSpec:
    return semisimple(("S", n, q))


def _solved(value) -> bool:
    return value != graph.SKIPPED


def _skip(note: str) -> Outcome:
    return Outcome("skipped", note=note)


def describe(item) -> str:
    if isinstance(item, (SemisimpleSpec, ExplicitSpec)):
        return str(item)
    if isinstance(item, dict) and set(item) == {"U", "W"}:
        return f"({spec_from_data(item['U'])}) x ({spec_from_data(item['W'])})"
    if isinstance(item, dict) and ("semisimple" in item or "explicit" in item):
        return str(spec_from_data(item))
    return ", ".join(f"{k}={v}" for k, v in sorted(item.items()))


# ---------------------------------------------------------------------------
# counting checks


@check("Lem5.1", "maximal submodules of nS: (d^n - 1)/(d - 1)", ["homogeneous"])
def _lem51(item):
    L = _lattice(_hom(item["n"], item["q"]))
    return compare(counting.count_maximal_homogeneous(item["n"], item["q"]), len(L.strata[L.length - 1]))


@check("Prop5.2", "maximal submodules of a semisimple module", ["semisimple"])
def _prop52(item):
    spec = spec_from_data(item)
    return compare(counting.count_maximal(spec), classify.fm(_lattice(spec)))


@check("Thm5.3", "finitely many submodules iff composition series and finite End on repeats", ["finiteness", "graph"], negative_control=True)
def _thm53(item):
    if "profile" in item:
        prof = [(n, math.inf if d is None or str(d).lstrip(".") == "inf" else int(d)) for n, d in item["profile"]]
        got = finiteness_predicate(prof, item["composition_series"])
        return compare(item["finite"], got, hypothesis=item["finite"], note="symbolic profile")
    spec = spec_from_data(item)
    L = _lattice(spec)
    prof = [(n, d or 2) for n, d in classify.profile_from_lattice(L)] if L.is_semisimple(L.top) else []
    return compare(True, finiteness_predicate(prof, True), note=f"{len(L)} submodules enumerated")


@check("Lem6.2.2", "strata of F_q^n are Gaussian binomials", ["subspaces"])
def _lem622(item):
    F = field_of_size(item["q"])
    subs = enumerate_subspaces(F, item["n"])
    brute = [sum(1 for s in subs if s.nrows == i) for i in range(item["n"] + 1)]
    return compare([counting.gaussian_binomial(item["n"], i, item["q"]) for i in range(item["n"] + 1)], brute)


@check("Lem6.2.3", "length-i submodules meeting a fixed length-j one in length m", ["intersections"])
def _lem623(item):
    n, q = item["n"], item["q"]
    F = field_of_size(q)
    subs = enumerate_subspaces(F, n)
    bad = []
    for U in subs:
        j = U.nrows
        tally: dict[tuple[int, int], int] = {}
        for W in subs:
            m = subspace_meet_join(U, W)[0].nrows
            tally[(W.nrows, m)] = tally.get((W.nrows, m), 0) + 1
        for i in range(n + 1):
            for m in range(min(i, j) + 1):
                if i - m > n - j:
                    continue
                if tally.get((i, m), 0) != counting.count_intersecting(n, q, j, i, m):
                    bad.append((U.rows, i, m))
        comps = tally.get((n - j, 0), 0)
        if comps != q ** ((n - j) * j):
            bad.append((U.rows, "complements", comps))
    return holds(not bad, computed=bad[:3] or True, note=f"{len(subs)} subspaces as U")


@check("Prop6.4", "strata and complement counts of semisimple modules", ["semisimple"])
def _prop64(item):
    spec = spec_from_data(item)
    L = _lattice(spec)
    strata = [len(s) for s in L.strata]
    if strata != counting.strata_counts(spec):
        return compare(counting.strata_counts(spec), strata)
    for i, X in enumerate(L.members):
        mults = [len(rows) for rows in X.key]
        brute = sum(1 for j in range(len(L)) if L.meet(i, j) == L.bottom and L.join(i, j) == L.top)
        if brute != counting.count_complements(spec, mults):
            return compare(counting.count_complements(spec, mults), brute, note=f"complements of {L.label(i)}")
    return holds(True, note=f"strata {strata}")


@check("Cor6.5", "strata symmetry and complement-count symmetry", ["semisimple", "graph"], negative_control=True)
def _cor65(item):
    spec = spec_from_data(item)
    L = _lattice(spec)
    strata = [len(s) for s in L.strata]
    if not L.is_semisimple(L.top):
        return Outcome("pass", False, None, strata, "not semisimple: symmetry not asserted")
    if strata != strata[::-1]:
        return compare(strata[::-1], strata)
    ncomp = {}
    for i in range(len(L)):
        ncomp[i] = [j for j in range(len(L)) if L.meet(i, j) == L.bottom and L.join(i, j) == L.top]
    for i, cs in ncomp.items():
        for j in cs:
            if len(ncomp[j]) != len(cs):
                return compare(len(cs), len(ncomp[j]), note=f"{L.label(i)} vs complement {L.label(j)}")
    return holds(True, note=f"strata {strata}")


@check("Rem6.3", "(Z/p)^n and F_p^n have the same submodule lattice", ["elementary"])
def _rem63(item):
    p, n = item["p"], item["n"]
    A = _lattice(ExplicitSpec.of([p] * n))
    B = _lattice(_hom(n, p))
    sa = {np.packbits(m).tobytes() for m in A.masks}
    sb = {np.packbits(m).tobytes() for m in B.masks}
    return holds(sa == sb and [len(s) for s in A.strata] == [len(s) for s in B.strata], computed=len(sa))


@check("Lem6.7", "complement bijection and half pairings", ["semisimple"], negative_control=True)
def _lem67(item):
    spec = spec_from_data(item)
    L = _lattice(spec)
    phi = counting.complement_bijection(L)
    for x, y in phi.items():
        if L.meet(x, y) != L.bottom or L.join(x, y) != L.top or L.lengths[y] != L.length - L.lengths[x]:
            return holds(False, computed=(L.label(x), L.label(y)))
    if L.length % 2:
        return holds(True, note="odd length: bijection only")
    k = L.length // 2
    try:
        hp = counting.half_pairing(L, k)
    except UnsupportedCase:
        hp = counting.half_pairing(L, k, excluded_vertex=True)
        ok = len(hp.A) == len(hp.B) and all(L.meet(a, b) == L.bottom for a, b in hp.alpha.items())
        return holds(ok, hypothesis=False, note="all multiplicities and fields even: excluded-vertex pairing")
    ok = (
        sorted(hp.A + hp.B) == list(L.strata[k])
        and len(hp.A) == len(hp.B)
        and all(L.meet(a, b) == L.bottom for a, b in hp.alpha.items())
    )
    return holds(ok, note=f"|A| = |B| = {len(hp.A)}")


@check("Lem4.1", "Goursat quintuples biject with submodules of U x W", ["products"])
def _lem41(item):
    U, W = spec_from_data(item["U"]), spec_from_data(item["W"])
    P = ProductModel(U, W)
    L = _lattice(P.spec)
    quints = P.quintuples()
    built = [P.submodule_of(q) for q in quints]
    if sorted(s.key for s in built) != sorted(s.key for s in L.members) or len(built) != len(L):
        return compare(len(L), len(built), note="quintuple count vs direct enumeration")
    for M in L.members:
        q = P.quintuple_of(M)
        if P.submodule_of(q) != M:
            return holds(False, computed=f"round trip fails at {L.model.label(M)}")
        qu, qw = _Quotient(P.mu, q.U1, q.U2), _Quotient(P.mw, q.W1, q.W2)
        k = P.mu.order(q.U2) * P.mw.order(q.W2)
        if not len(qu.reps) == len(qw.reps) == P.mp.order(M) // k:
            return holds(False, computed=f"quotient orders differ at {L.model.label(M)}")
    if not all(P.quintuple_of(P.submodule_of(q)) == q for q in quints):
        return holds(False, computed="quintuple round trip")
    note = f"{len(L)} submodules"
    # maximal submodules of S_n x S come in three families (S = Z/p)
    moduli = set(U.pres.moduli + W.pres.moduli)
    if not U.pres.action and not W.pres.action and len(moduli) == 1 and W.pres.rank == 1:
        p = W.pres.moduli[0]
        if is_prime(p):
            LU = _lattice(U)
            maxU = set(LU.members[i] for i in LU.strata[LU.length - 1])
            top_u, zero_u = LU.members[LU.top], LU.members[LU.bottom]
            LW = _lattice(W)
            top_w, zero_w = LW.members[LW.top], LW.members[LW.bottom]
            maximal = {m.key for m in (L.members[i] for i in L.strata[L.length - 1])}
            fams = [q for q in quints if P.submodule_of(q).key in maximal]
            expect = sum(
                1
                for q in fams
                if (q.U1 == q.U2 == top_u and q.W1 == q.W2 == zero_w)
                or (q.U1 == q.U2 and q.U1 in maxU and q.W1 == q.W2 == top_w)
                or (q.U1 == top_u and q.U2 in maxU and q.W2 == zero_w and q.W1 == top_w)
            )
            w = len(maxU)
            if expect != len(fams) or len(fams) != 1 + w + (p - 1) * w:
                return compare(1 + w + (p - 1) * w, len(fams), note="maximal quintuple families")
            note += f"; {len(fams)} maximal quintuples in the three families"
    return holds(True, note=note)


# ---------------------------------------------------------------------------
# graph structure checks


def _graph_item(item):
    spec = spec_from_data(item)
    return spec, _lattice(spec), _invariants(spec), _verdicts(spec)


@check("Rem2.2", "diameter of every component is at most 2", ["graph"])
def _rem22(item):
    _, _, r, _ = _graph_item(item)
    return holds(all(d <= 2 for d in r.diameters), computed=r.diameters)


@check("Prop2.3", "connectivity predicted from semisimplicity and length", ["graph"], negative_control=True)
def _prop23(item):
    _, L, r, v = _graph_item(item)
    if v["connected"] is None:
        return Outcome("pass", False, None, r.connected, "simple module: no vertices")
    return compare(v["connected"], r.connected, hypothesis=v["connected"])


@check("Cor2.4", "an edge forces connectivity", ["graph"], negative_control=True)
def _cor24(item):
    _, _, r, _ = _graph_item(item)
    return holds(r.edges == 0 or r.connected, hypothesis=r.edges > 0)


@check("Rem2.5", "edgeless iff length at most 2", ["graph"], negative_control=True)
def _rem25(item):
    _, L, r, v = _graph_item(item)
    return compare(v["edgeless"], r.edges == 0, hypothesis=v["edgeless"])


@check("Rem2.6", "cut vertex iff socle is a maximal sum of two simples", ["graph"], negative_control=True)
def _rem26(item):
    _, L, r, v = _graph_item(item)
    return compare([L.label(x) for x in v["cut_vertices"]], [L.label(x) for x in r.cut_vertices], hypothesis=bool(v["cut_vertices"]))


@check("Rem2.7", "bridges are the edges at simples inside a unique maximal", ["graph"], negative_control=True)
def _rem27(item):
    _, L, r, v = _graph_item(item)
    lab = lambda es: [[L.label(a), L.label(b)] for a, b in es]  # noqa: E731
    return compare(lab(v["cut_edges"]), lab(r.cut_edges), hypothesis=bool(v["cut_edges"]))


@check("Prop3.2", "acyclic iff triangle-free iff the length condition", ["graph"], negative_control=True)
def _prop32(item):
    _, L, r, v = _graph_item(item)
    acyclic = r.girth is None
    triangle_free = r.girth != 3
    return compare((v["acyclic"], v["acyclic"]), (acyclic, triangle_free), hypothesis=v["acyclic"])


@check("Cor3.3", "bipartite iff the length condition", ["graph"], negative_control=True)
def _cor33(item):
    _, L, r, v = _graph_item(item)
    return compare(v["bipartite"], r.bipartite, hypothesis=v["bipartite"])


@check("Rem5.4", "finite vertex set iff finite edge set once an edge exists", ["graph"])
def _rem54(item):
    _, L, r, _ = _graph_item(item)
    return holds(r.edges <= r.vertices * (r.vertices - 1) // 2 and (r.edges == 0 or r.vertices > 0), hypothesis=r.edges > 0)


# ---------------------------------------------------------------------------
# domination


@check("Thm4.4", "domination number 0, 1, 2 or |End| + 1", ["graph"])
def _thm44(item):
    _, L, r, v = _graph_item(item)
    if not _solved(r.gamma):
        return _skip(f"{r.vertices} vertices")
    return compare(v["gamma"], r.gamma)


@check("Lem4.2", "lifting dominating sets from a non-simple submodule", ["graph"])
def _lem42(item):
    _, L, r, _ = _graph_item(item)
    if not _solved(r.gamma):
        return _skip(f"{r.vertices} vertices")
    tried = 0
    for u in range(len(L)):
        if L.lengths[u] < 2:
            continue
        GU = graph.induced_graph(L, [int(x) for x in L.below(u) if x not in (L.bottom, u)])
        if GU.n > graph.SOLVER_CAP:
            continue
        A, _ = graph.min_dominating_set(GU)
        lifted = graph.lift_dominating_set(L, u, A)
        tried += 1
        if len(lifted) < r.gamma or len(lifted) > len(A):
            return holds(False, computed=(L.label(u), len(lifted), r.gamma))
    return holds(True, hypothesis=tried > 0, note=f"{tried} choices of U")


@check("Lem4.3", "a minimum dominating set misses some sum of two simples", ["graph"])
def _lem43(item):
    _, L, r, _ = _graph_item(item)
    if not (L.is_semisimple(L.top) and L.length >= 3):
        return Outcome("pass", False, note="needs a semisimple module of length >= 3")
    if not _solved(r.gamma):
        return _skip(f"{r.vertices} vertices")
    D = r.witnesses["dominating_set"]
    for u in L.strata[2]:
        if any(L.leq[u, a] for a in D):
            continue
        pieces = {L.meet(a, u) for a in D} - {L.bottom}
        GU = graph.induced_graph(L, [int(x) for x in L.below(u) if x not in (L.bottom, u)])
        if pieces <= set(GU.vertices) and graph.is_dominating(GU, pieces):
            return holds(True, note=f"U = {L.label(u)}")
    return holds(False, computed="no length-2 member avoids the dominating set")


# ---------------------------------------------------------------------------
# colouring


@check("Prop7.1", "socle-based upper bound on the chromatic number", ["graph"])
def _prop71(item):
    spec, L, r, _ = _graph_item(item)
    if L.socle == L.top or L.length < 2:
        return Outcome("pass", False, note="semisimple: bound not defined")
    if not _solved(r.chi):
        return _skip(f"{r.vertices} vertices")
    try:
        bound = counting.chromatic_upper_bound(spec).value
    except SizeBoundExceeded:
        return _skip("socle graph above the cap")
    return holds(r.chi <= bound, expected=f"<= {bound}", computed=r.chi)


@check("Rem7.2", "chi(G(W)) + m - 1 <= chi(G(V)) for proper W", ["graph"])
def _rem72(item):
    _, L, r, _ = _graph_item(item)
    if not _solved(r.chi):
        return _skip(f"{r.vertices} vertices")
    for w in L.proper():
        GW = graph.induced_graph(L, [int(x) for x in L.below(w) if x not in (L.bottom, w)])
        m = int(L.leq[w].sum())
        chi_w = graph.chromatic_number(GW)
        if chi_w + m - 1 > r.chi:
            return holds(False, computed=(L.label(w), chi_w, m, r.chi))
    return holds(True, hypothesis=len(L.proper()) > 0)


@check("Lem7.4", "upper strata pairwise intersect; chromatic lower bounds", ["graph"])
def _lem74(item):
    _, L, r, _ = _graph_item(item)
    n = L.length
    if n < 1:
        return Outcome("pass", False)
    k = (n + 1) // 2 if n % 2 else n // 2
    lo = k if n % 2 else k + 1
    top = [i for i in range(len(L)) if lo <= L.lengths[i] <= n]
    pairwise = all(L.meet(a, b) != L.bottom for a, b in itertools.combinations(top, 2))
    if n % 2 == 0:
        pairwise = pairwise and all(L.meet(u, w) != L.bottom for u in L.strata[k] for w in top)
    if not pairwise:
        return holds(False, computed="two upper-stratum members meet in 0")
    if not _solved(r.chi):
        return holds(True, note="intersection part only; chi skipped")
    s = sum(len(L.strata[i]) for i in range(lo, n))
    ok = r.chi >= s if n % 2 else r.chi > s
    return holds(ok, expected=(">=" if n % 2 else ">") + f" {s}", computed=r.chi)


def _odd_mult(L) -> bool:
    return any(c.mult % 2 for c in classify.isotypic_profile(L))


@check("Lem7.5", "no three pairwise disjoint middle members with an odd multiplicity", ["semisimple"], negative_control=True)
def _lem75(item):
    spec = spec_from_data(item)
    L = _lattice(spec)
    if L.length % 2:
        return Outcome("pass", False, note="odd length")
    k = L.length // 2
    mid = L.strata[k]
    triple = next(
        (
            t
            for t in itertools.combinations(mid, 3)
            if all(L.meet(a, b) == L.bottom for a, b in itertools.combinations(t, 2))
        ),
        None,
    )
    if _odd_mult(L):
        return holds(triple is None, computed=None if triple is None else [L.label(x) for x in triple])
    return Outcome("pass", False, None, triple is not None, "all multiplicities even: property not asserted")


def _chi_check(item, want_odd: bool):
    spec = spec_from_data(item)
    L = _lattice(spec)
    r = _invariants(spec)
    if L.length <= 2 or (L.length % 2 == 1) != want_odd:
        return Outcome("pass", False, note="outside this case")
    if not want_odd and not _odd_mult(L):
        return Outcome("pass", False, note="all multiplicities even")
    if not _solved(r.chi):
        return _skip(f"{r.vertices} vertices")
    return compare(counting.chromatic_formula(spec), r.chi)


@check("Prop7.6.2", "chromatic number, odd length", ["semisimple"])
def _prop762(item):
    return _chi_check(item, True)


@check("Prop7.6.3", "chromatic number, even length with an odd multiplicity", ["semisimple"])
def _prop763(item):
    return _chi_check(item, False)


# ---------------------------------------------------------------------------
# cliques and planarity


@check("Rem8.1", "a chain of proper submodules is a clique", ["graph"])
def _rem81(item):
    _, L, r, _ = _graph_item(item)
    if not _solved(r.omega):
        return _skip(f"{r.vertices} vertices")
    return holds(r.omega >= L.length - 1, expected=f">= {L.length - 1}", computed=r.omega)


@check("Lem8.2", "maximal-count bounds when K_n is absent", ["graph"])
def _lem82(item):
    _, L, r, _ = _graph_item(item)
    if not _solved(r.omega):
        return _skip(f"{r.vertices} vertices")
    m = L.length
    if m < 3:
        return Outcome("pass", False, note="length below 3")
    n = r.omega + 1
    fmv = classify.fm(L)
    ss = L.is_semisimple(L.top)
    ok = fmv <= (n - m + 2 if ss else n - m + 1)
    if 2 * m > n + 2:
        ok = ok and not ss
    return holds(ok, computed={"n": n, "m": m, "fm": fmv, "semisimple": ss})


def _kfree(item, key: str, size: int):
    _, L, r, v = _graph_item(item)
    if not _solved(r.omega):
        return _skip(f"{r.vertices} vertices")
    return compare(v[key], r.omega < size, hypothesis=v[key])


@check("Prop8.3", "K3-free characterization", ["graph"], negative_control=True)
def _prop83(item):
    return _kfree(item, "k3_free", 3)


@check("Prop8.4", "K4-free characterization", ["graph"], negative_control=True)
def _prop84(item):
    return _kfree(item, "k4_free", 4)


@check("Prop8.5", "K5-free characterization", ["graph"], negative_control=True)
def _prop85(item):
    return _kfree(item, "k5_free", 5)


@check("Cor8.6", "planarity characterization", ["graph"], negative_control=True)
def _cor86(item):
    _, L, r, v = _graph_item(item)
    if not _solved(r.planar):
        return _skip(f"{r.vertices} vertices")
    return compare(v["planar"], r.planar, hypothesis=v["planar"], note=",".join(v["k5_conditions"]))


@check("Lattice.modular", "the submodule lattice satisfies the modular law", ["graph", "semisimple"])
def _modular(item):
    spec = spec_from_data(item)
    L = _lattice(spec)
    if len(L) > 64:
        return _skip(f"{len(L)} members")
    N = len(L)
    for a in range(N):
        for c in L.above(a):
            for b in range(N):
                lhs = L.join(a, L.meet(b, int(c)))
                rhs = L.meet(L.join(a, b), int(c))
                if lhs != rhs:
                    return holds(False, computed=[L.label(x) for x in (a, b, int(c))])
    return holds(True, note=f"{N} members")


# ---------------------------------------------------------------------------
# running


def _summarize(check: Check, results: list[dict]) -> dict:
    statuses = [r["status"] for r in results]
    ran = [r for r in results if r["status"] != "skipped"]
    problems = []
    if any(s == "fail" for s in statuses):
        problems.append("instance failure")
    if ran and not any(r["hypothesis"] for r in ran):
        problems.append("vacuous: no instance satisfies the hypothesis")
    if check.negative_control and ran and all(r["hypothesis"] for r in ran):
        problems.append("no negative control instance")
    if not ran:
        status = "skipped"
    else:
        status = "fail" if problems else "pass"
    return {
        "id": check.id,
        "title": check.title,
        "status": status,
        "problems": problems,
        "counts": {s: statuses.count(s) for s in ("pass", "fail", "skipped")},
        "instances": results,
    }


def _jsonable(x):
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.bool_,)):
        return bool(x)
    if isinstance(x, Fraction):
        return float(x)
    return x


def run_check(id: str, scale: str = "small", items=None) -> dict:
    if id not in REGISTRY:
        raise UnknownCheck(id)
    chk = REGISTRY[id]
    if items is None:
        items = [it for fam in chk.families for it in family(fam, scale)]
    results = []
    for it in items:
        data = spec_to_data(it) if isinstance(it, (SemisimpleSpec, ExplicitSpec)) else it
        try:
            out = chk.fn(data)
        except SizeBoundExceeded as e:
            out = _skip(str(e))
        except Exception as e:  # a crash is a failure with a witness, not a silent pass
            out = Outcome("fail", True, None, None, f"{type(e).__name__}: {e}")
        results.append(
            {
                "instance": describe(data),
                "spec": _jsonable(data),
                "status": out.status,
                "hypothesis": bool(out.hypothesis),
                "expected": _jsonable(out.expected),
                "computed": _jsonable(out.computed),
                "note": out.note,
            }
        )
    return _summarize(chk, results)


def _run_one(args):
    id, scale = args
    return run_check(id, scale)


def run_all(scale: str = "small", only=None, jobs: int | None = None) -> dict:
    if scale not in SCALES:
        raise ValueError(f"unknown scale {scale!r}; expected one of {SCALES}")
    ids = sorted(REGISTRY) if not only else list(dict.fromkeys(only))
    for i in ids:
        if i not in REGISTRY:
            raise UnknownCheck(i)
    jobs = jobs or os.cpu_count() or 1
    if jobs > 1 and len(ids) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            reports = list(ex.map(_run_one, [(i, scale) for i in ids]))
    else:
        reports = [run_check(i, scale) for i in ids]
    reports.sort(key=lambda r: r["id"])
    failed = [r["id"] for r in reports if r["status"] == "fail"]
    return {
        "schema_version": SCHEMA_VERSION,
        "suite": scale,
        "status": "fail" if failed else "pass",
        "summary": {
            "checks": len(reports),
            "passed": sum(r["status"] == "pass" for r in reports),
            "failed": len(failed),
            "skipped": sum(r["status"] == "skipped" for r in reports),
            "failed_ids": failed,
        },
        "checks": reports,
    }


def explore_open_case(spec: SemisimpleSpec) -> dict:
    """Exact chromatic number when every multiplicity is even; no formula is asserted."""
    if not isinstance(spec, SemisimpleSpec):
        raise TypeError("needs a semisimple spec")
    if any(c.mult % 2 for c in spec.components):
        raise ValueError("some multiplicity is odd; the closed form applies")
    prof = counting.profile_of(spec)
    n = sum(m for m, _ in prof)
    mu = counting.strata_counts(prof)
    k = n // 2
    comparison = Fraction(mu[k], 2) + sum(mu[k + 1 : n])
    vertices = sum(mu) - 2
    out = {
        "schema_version": SCHEMA_VERSION,
        "spec": spec_to_data(spec),
        "length": n,
        "strata": mu,
        "vertices": vertices,
        "comparison": int(comparison) if comparison.denominator == 1 else float(comparison),
    }
    if vertices > graph.SOLVER_CAP:
        out["chi"] = graph.SKIPPED
        return out
    L = enumerate_submodules(spec)
    out["chi"] = graph.chromatic_number(graph.build_graph(L))
    return out
