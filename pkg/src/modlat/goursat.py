"""Submodules of a direct product ``U x W`` as quintuples ``(U1, U2, theta, W2, W1)``.

``theta`` is an isomorphism ``U1/U2 -> W1/W2`` stored as a full coset table:
pairs of canonical coset representatives (HNF-reduced vectors).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import abelian
from .enumeration import enumerate_submodules
from .errors import SizeBoundExceeded
from .modules import ExplicitModel, ExplicitSpec, Submodule, model_of, product_spec

Vec = tuple[int, ...]


@dataclass(frozen=True)
class GoursatQuintuple:
    U1: Submodule
    U2: Submodule
    theta: tuple[tuple[Vec, Vec], ...]
    W2: Submodule
    W1: Submodule


class _Quotient:
    """Finite quotient ``X/Y`` of subgroups of one explicit model."""

    def __init__(self, model: ExplicitModel, X: Submodule, Y: Submodule):
        self.model, self.moduli, self.H = model, model.moduli, Y.key
        self.reps = sorted({self.rep(v) for v in model.elements(X)})
        self.zero = self.rep([0] * len(self.moduli))

    def rep(self, v) -> Vec:
        v = [x % m for x, m in zip(v, self.moduli)]
        return tuple(abelian.hnf_reduce(self.H, v))

    def add(self, a, b) -> Vec:
        return self.rep([x + y for x, y in zip(a, b)])

    def act(self, A, a) -> Vec:
        return self.rep(abelian.apply_action(A, a, self.moduli))

    def order_of(self, a) -> int:
        k, x = 1, a
        while x != self.zero:
            x = self.add(x, a)
            k += 1
        return k

    def generators(self) -> list[Vec]:
        gens, span = [], {self.zero}
        for a in sorted(self.reps, key=lambda r: (-self.order_of(r), r)):
            if a in span:
                continue
            gens.append(a)
            frontier = list(span)
            while frontier:
                nxt = []
                for x in frontier:
                    y = self.add(x, a)
                    if y not in span:
                        span.add(y)
                        nxt.append(y)
                frontier = nxt
        return gens


def _extend(src: _Quotient, dst: _Quotient, gens, images) -> dict | None:
    """Homomorphism on ``src`` determined by ``gens -> images``, or None if inconsistent."""
    f = {src.zero: dst.zero}
    queue = [src.zero]
    while queue:
        x = queue.pop()
        for g, h in zip(gens, images):
            x2, y2 = src.add(x, g), dst.add(f[x], h)
            if x2 in f:
                if f[x2] != y2:
                    return None
            else:
                f[x2] = y2
                queue.append(x2)
    return f


def _equivariant(src: _Quotient, dst: _Quotient, f: dict, action_src, action_dst) -> bool:
    return all(
        f[src.act(A, x)] == dst.act(B, y) for A, B in zip(action_src, action_dst) for x, y in f.items()
    )


def isomorphisms(src: _Quotient, dst: _Quotient, action_src=(), action_dst=()) -> list[dict]:
    """Every action-equivariant group isomorphism ``src -> dst``."""
    if len(src.reps) != len(dst.reps):
        return []
    gens = src.generators()
    by_order: dict[int, list[Vec]] = {}
    for r in dst.reps:
        by_order.setdefault(dst.order_of(r), []).append(r)
    choices = [by_order.get(src.order_of(g), []) for g in gens]
    out = []
    for images in itertools.product(*choices):
        f = _extend(src, dst, gens, images)
        if f is None or len(set(f.values())) != len(f):
            continue
        if _equivariant(src, dst, f, action_src, action_dst):
            out.append(f)
    return out


class ProductModel:
    """``U x W`` for explicit ``U`` and ``W`` acted on by the same number of generators."""

    def __init__(self, U: ExplicitSpec, W: ExplicitSpec):
        if not isinstance(U, ExplicitSpec) or not isinstance(W, ExplicitSpec):
            raise TypeError("Goursat products are built from explicit specs")
        self.U, self.W = U, W
        self.spec = product_spec(U, W)
        self.mu, self.mw, self.mp = model_of(U), model_of(W), model_of(self.spec)
        self.tu = U.pres.rank

    def split(self, v) -> tuple[Vec, Vec]:
        return tuple(v[: self.tu]), tuple(v[self.tu :])

    def quintuple_of(self, M: Submodule) -> GoursatQuintuple:
        if not self.mp.is_closed(M):
            raise ValueError("M is not closed under the product action")
        elems = [self.split(v) for v in self.mp.elements(M)]
        zu, zw = (0,) * self.tu, (0,) * (len(self.spec.pres.moduli) - self.tu)
        p1 = self.mu.sub(self.mu.key_from_indices([self.mu.index_of(u) for u, _ in elems]))
        k1 = self.mu.sub(self.mu.key_from_indices([self.mu.index_of(u) for u, w in elems if w == zw]))
        p2 = self.mw.sub(self.mw.key_from_indices([self.mw.index_of(w) for _, w in elems]))
        k2 = self.mw.sub(self.mw.key_from_indices([self.mw.index_of(w) for u, w in elems if u == zu]))
        qu, qw = _Quotient(self.mu, p1, k1), _Quotient(self.mw, p2, k2)
        theta = {}
        for u, w in elems:
            a, b = qu.rep(u), qw.rep(w)
            if theta.setdefault(a, b) != b:
                raise RuntimeError("theta is not well defined")
        return GoursatQuintuple(p1, k1, tuple(sorted(theta.items())), k2, p2)

    def validate(self, q: GoursatQuintuple) -> tuple[_Quotient, _Quotient, dict]:
        mu, mw = self.mu, self.mw
        if not (abelian.hnf_contains_all(q.U1.key, q.U2.key) and abelian.hnf_contains_all(q.W1.key, q.W2.key)):
            raise ValueError("need U2 <= U1 and W2 <= W1")
        qu, qw = _Quotient(mu, q.U1, q.U2), _Quotient(mw, q.W1, q.W2)
        f = dict(q.theta)
        if sorted(f) != qu.reps or sorted(f.values()) != qw.reps:
            raise ValueError("theta is not a bijection between the coset sets")
        for a, b in itertools.product(qu.reps, repeat=2):
            if f[qu.add(a, b)] != qw.add(f[a], f[b]):
                raise ValueError("theta is not additive")
        if not _equivariant(qu, qw, f, self.U.pres.action, self.W.pres.action):
            raise ValueError("theta does not commute with the action")
        return qu, qw, f

    def submodule_of(self, q: GoursatQuintuple) -> Submodule:
        self.validate(q)
        zu, zw = [0] * self.tu, [0] * (len(self.spec.pres.moduli) - self.tu)
        gens = [list(a) + list(b) for a, b in q.theta]
        gens += [list(r) + zw for r in q.U2.key]
        gens += [zu + list(r) for r in q.W2.key]
        M = self.mp.sub(abelian.hnf(gens, self.spec.pres.moduli))
        if not self.mp.is_closed(M):
            raise RuntimeError("pullback is not action-closed")
        return M

    def quintuples(self) -> list[GoursatQuintuple]:
        LU, LW = enumerate_submodules(self.U), enumerate_submodules(self.W)
        pairs_u = [(a, b) for a in range(len(LU)) for b in LU.below(a)]
        pairs_w = [(a, b) for a in range(len(LW)) for b in LW.below(a)]
        out = []
        for (u1, u2), (w1, w2) in itertools.product(pairs_u, pairs_w):
            if LU.sizes[u1] * LW.sizes[w2] != LU.sizes[u2] * LW.sizes[w1]:
                continue
            U1, U2, W1, W2 = LU.members[u1], LU.members[int(u2)], LW.members[w1], LW.members[int(w2)]
            qu, qw = _Quotient(self.mu, U1, U2), _Quotient(self.mw, W1, W2)
            for f in isomorphisms(qu, qw, self.U.pres.action, self.W.pres.action):
                out.append(GoursatQuintuple(U1, U2, tuple(sorted(f.items())), W2, W1))
        return out


def quintuple_of(U: ExplicitSpec, W: ExplicitSpec, M: Submodule) -> GoursatQuintuple:
    return ProductModel(U, W).quintuple_of(M)


def submodule_of(U: ExplicitSpec, W: ExplicitSpec, q: GoursatQuintuple) -> Submodule:
    return ProductModel(U, W).submodule_of(q)


def enumerate_product_submodules(U: ExplicitSpec, W: ExplicitSpec) -> list[Submodule]:
    P = ProductModel(U, W)
    if P.spec.pres.order > abelian.max_order():
        raise SizeBoundExceeded(f"product of order {P.spec.pres.order} is above the bound")
    subs = [P.submodule_of(q) for q in P.quintuples()]
    keys = {s.key for s in subs}
    if len(keys) != len(subs):
        raise RuntimeError("two quintuples produced the same submodule")
    return sorted(subs, key=lambda s: (s.length, s.key))
