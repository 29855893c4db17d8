"""Brute-force enumeration of subspaces and submodule lattices."""

from __future__ import annotations

import itertools
import math
from functools import lru_cache

import numpy as np

from . import abelian
from .field import FieldSpec
from .linalg import FqMatrix
from .modules import (
    ExplicitModel,
    ExplicitSpec,
    ModuleSpec,
    SemisimpleModel,
    SemisimpleSpec,
    Submodule,
    SubmoduleLattice,
    model_of,
)


def enumerate_subspaces(field: FieldSpec, n: int, dim_filter: int | None = None) -> list[FqMatrix]:
    """Every subspace of ``F_q^n`` as its RREF basis, generated pivot pattern by pivot pattern."""
    q = field.q
    if q**n > abelian.DEFAULT_MAX_ORDER:
        raise ValueError(f"{q}^{n} vectors exceed the enumeration bound")
    dims = range(n + 1) if dim_filter is None else [dim_filter]
    out = []
    for k in dims:
        if not 0 <= k <= n:
            raise ValueError(f"dimension {k} outside 0..{n}")
        for pivots in itertools.combinations(range(n), k):
            free = [(i, j) for i, p in enumerate(pivots) for j in range(p + 1, n) if j not in pivots]
            for vals in itertools.product(range(q), repeat=len(free)):
                rows = [[0] * n for _ in range(k)]
                for i, p in enumerate(pivots):
                    rows[i][p] = 1
                for (i, j), v in zip(free, vals):
                    rows[i][j] = v
                out.append(FqMatrix(field, n, tuple(map(tuple, rows))))
    return out


@lru_cache(maxsize=64)
def explicit_keys(model: ExplicitModel) -> tuple[abelian.Hnf, ...]:
    """HNF keys of all submodules: cyclic submodules closed under pairwise join."""
    cyclic = set()
    for idx in range(model.n_elements):
        cyclic.add(model.closure_key([model.vectors([idx])[0]]))
    cyclic = sorted(cyclic)
    members = set(cyclic)
    members.add(abelian.hnf([], model.moduli))
    work = list(members)
    while work:
        X = work.pop()
        for c in cyclic:
            Y = model.join_key(X, c)
            if Y not in members:
                members.add(Y)
                work.append(Y)
    return tuple(sorted(members))


def lattice_heights(model: ExplicitModel) -> dict:
    """Composition length of each submodule as its height in the lattice."""
    keys = sorted(explicit_keys(model), key=model.key_order)
    masks = np.zeros((len(keys), model.n_elements), dtype=bool)
    for i, k in enumerate(keys):
        masks[i, model.key_indices(k)] = True
    inside = (masks.astype(np.float32) @ (~masks).astype(np.float32).T) < 0.5
    height = np.zeros(len(keys), dtype=np.int64)
    for i in range(len(keys)):
        below = np.nonzero(inside[:i, i])[0]
        height[i] = height[below].max() + 1 if below.size else 0
    return {k: int(h) for k, h in zip(keys, height)}


@lru_cache(maxsize=128)
def enumerate_submodules(V: ModuleSpec) -> SubmoduleLattice:
    model = model_of(V)
    if isinstance(model, SemisimpleModel):
        per_comp = [
            [b.rows for b in enumerate_subspaces(c.field, c.mult)] for c in model.components
        ]
        members = [model.sub(key) for key in itertools.product(*per_comp)]
    else:
        members = [model.sub(k) for k in explicit_keys(model)]
    return SubmoduleLattice(V, members)


def cyclic_submodule(V: ExplicitSpec, v) -> Submodule:
    model = model_of(V)
    if not isinstance(model, ExplicitModel):
        raise TypeError("cyclic submodules are defined on explicit models")
    if len(v) != len(model.moduli):
        raise ValueError(f"element {v} has the wrong number of coordinates")
    return model.cyclic(v)


def complements_of(L: SubmoduleLattice, U: Submodule) -> list[Submodule]:
    i = L.idx(U)
    return [
        L.members[j]
        for j in range(len(L))
        if L.meet(i, j) == L.bottom and L.join(i, j) == L.top
    ]


def finiteness_predicate(profile, has_composition_series: bool) -> bool:
    """Finite submodule count from a symbolic profile of ``(multiplicity, |End|)`` pairs.

    ``|End|`` may be ``math.inf`` or ``None`` for an infinite endomorphism ring.
    """
    if not has_composition_series:
        return False
    for n, d in profile:
        if n >= 2 and (d is None or d == math.inf):
            return False
    return True


def semisimple_lattice_size(spec: SemisimpleSpec) -> int:
    from .counting import gaussian_binomial

    return math.prod(
        sum(gaussian_binomial(c.mult, j, c.field.q) for j in range(c.mult + 1)) for c in spec.components
    )
