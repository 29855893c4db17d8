"""Module models, canonical submodules and the submodule lattice.

Two concrete models are supported:

* ``SemisimpleSpec``: ``n_1 T_1 + ... + n_r T_r`` with each simple type
  ``T_i`` carried as a one-dimensional space over ``F_{q_i}``.  A submodule is
  one subspace of ``F_{q_i}^{n_i}`` per isotypic component.
* ``ExplicitSpec``: a finite abelian group ``Z/m_1 + ... + Z/m_t`` with a list
  of endomorphism matrices.  A submodule is an action-closed subgroup,
  identified by the Hermite normal form of its preimage lattice.

Both models also expose every submodule as a boolean membership mask over
the elements of the ambient module; the lattice and graph code work from
those masks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from math import prod
from typing import Union

import numpy as np

from . import abelian
from .abelian import AbelianPresentation
from .field import FieldSpec
from .linalg import FqMatrix, encode_vectors, span_array, subspace_meet_join

MAX_DIM = 6


@dataclass(frozen=True)
class Component:
    type_id: str
    mult: int
    field: FieldSpec


@dataclass(frozen=True)
class SemisimpleSpec:
    components: tuple[Component, ...]

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        if not self.components:
            raise ValueError("a semisimple module needs at least one component")
        ids = [c.type_id for c in self.components]
        if len(set(ids)) != len(ids):
            raise ValueError(f"type ids must be pairwise distinct, got {ids}")
        for c in self.components:
            if not 1 <= c.mult <= MAX_DIM:
                raise ValueError(f"multiplicity {c.mult} of {c.type_id} outside 1..{MAX_DIM}")
        size = prod(c.field.q**c.mult for c in self.components)
        if size > abelian.max_order():
            raise ValueError(f"module has {size} elements, above the bound {abelian.max_order()}")

    @property
    def length(self) -> int:
        return sum(c.mult for c in self.components)

    def __str__(self) -> str:
        parts = [f"{c.mult if c.mult > 1 else ''}{c.type_id}/F{c.field.q}" for c in self.components]
        return " + ".join(parts)


@dataclass(frozen=True)
class ExplicitSpec:
    pres: AbelianPresentation

    def __post_init__(self):
        bad = abelian.validate_action(self.pres)
        if bad:
            raise ValueError(f"action matrices are not well defined at {bad}")
        if self.pres.order > abelian.max_order():
            raise ValueError(f"group order {self.pres.order} exceeds the bound {abelian.max_order()}")

    @classmethod
    def of(cls, moduli, action=()) -> "ExplicitSpec":
        return cls(AbelianPresentation(tuple(moduli), tuple(action)))

    def __str__(self) -> str:
        s = " + ".join(f"Z/{m}" for m in self.pres.moduli)
        return s + (f" [{len(self.pres.action)} action matrices]" if self.pres.action else "")


ModuleSpec = Union[SemisimpleSpec, ExplicitSpec]


def semisimple(*parts: tuple[str, int, int]) -> SemisimpleSpec:
    """Shorthand: ``semisimple(("S", 2, 2), ("T", 1, 2))`` is ``2S + T`` over F_2."""
    from .field import field_of_size

    return SemisimpleSpec(tuple(Component(t, n, field_of_size(q)) for t, n, q in parts))


@dataclass(frozen=True)
class Submodule:
    """Canonical submodule: equality and hashing use ``key`` only."""

    key: tuple
    length: int = field(compare=False)


# ---------------------------------------------------------------------------
# models


class SemisimpleModel:
    def __init__(self, spec: SemisimpleSpec):
        self.spec = spec
        self.components = spec.components
        self.dims = tuple(c.mult for c in spec.components)
        radices = [c.field.q for c in spec.components for _ in range(c.mult)]
        self.n_elements = prod(radices)
        st = np.ones(len(radices), dtype=np.int64)
        for i in range(1, len(radices)):
            st[i] = st[i - 1] * radices[i - 1]
        self._offsets = []
        pos = 0
        for c in spec.components:
            self._offsets.append(st[pos : pos + c.mult])
            pos += c.mult

    @property
    def length(self) -> int:
        return sum(self.dims)

    def sub(self, key) -> Submodule:
        return Submodule(tuple(key), sum(len(b) for b in key))

    def zero(self) -> Submodule:
        return self.sub(tuple(() for _ in self.components))

    def top(self) -> Submodule:
        return self.sub(tuple(FqMatrix.identity(c.field, c.mult).rows for c in self.components))

    def basis(self, a: Submodule, i: int) -> FqMatrix:
        c = self.components[i]
        return FqMatrix(c.field, c.mult, a.key[i])

    def meet(self, a: Submodule, b: Submodule) -> Submodule:
        key = []
        for i in range(len(self.components)):
            m, _ = subspace_meet_join(self.basis(a, i), self.basis(b, i))
            key.append(m.rows)
        return self.sub(key)

    def join(self, a: Submodule, b: Submodule) -> Submodule:
        key = []
        for i in range(len(self.components)):
            _, j = subspace_meet_join(self.basis(a, i), self.basis(b, i))
            key.append(j.rows)
        return self.sub(key)

    def element_indices(self, a: Submodule) -> np.ndarray:
        idx = np.zeros(1, dtype=np.int64)
        for i, c in enumerate(self.components):
            vecs = span_array(c.field, np.array(a.key[i], dtype=np.int64), c.mult)
            comp = vecs @ self._offsets[i]
            idx = (idx[:, None] + comp[None, :]).ravel()
        return np.sort(idx)

    def mask(self, a: Submodule) -> np.ndarray:
        m = np.zeros(self.n_elements, dtype=bool)
        m[self.element_indices(a)] = True
        return m

    def label(self, a: Submodule) -> str:
        parts = []
        for c, rows in zip(self.components, a.key):
            parts.append(c.type_id + "[" + ",".join("".join(map(str, r)) for r in rows) + "]")
        return "|".join(parts)


class ExplicitModel:
    def __init__(self, spec: ExplicitSpec):
        self.spec = spec
        self.pres = spec.pres
        self.moduli = spec.pres.moduli
        self.action = spec.pres.action
        self.n_elements = spec.pres.order
        self.strides = abelian.strides(self.moduli)
        self._exps = [abelian.prime_power(m) for m in self.moduli]
        self._heights: dict | None = None

    # raw keys (HNF rows) ---------------------------------------------------

    def closure_key(self, gens) -> abelian.Hnf:
        """HNF of the smallest action-closed subgroup containing ``gens``."""
        H = abelian.hnf(gens, self.moduli)
        changed = True
        while changed:
            changed = False
            for row in H:
                for A in self.action:
                    w = abelian.apply_action(A, row, self.moduli)
                    if not abelian.hnf_contains(H, w):
                        H = abelian.hnf(list(H) + [w], self.moduli)
                        changed = True
                        break
                if changed:
                    break
        return H

    def join_key(self, a, b) -> abelian.Hnf:
        return abelian.hnf(list(a) + list(b), self.moduli)

    def key_from_indices(self, idx) -> abelian.Hnf:
        H = abelian.hnf([], self.moduli)
        for v in self.vectors(idx):
            if not abelian.hnf_contains(H, v):
                H = abelian.hnf(list(H) + [v], self.moduli)
        return H

    def vectors(self, idx) -> list[list[int]]:
        idx = np.asarray(idx, dtype=np.int64)
        return [[int((i // s) % m) for s, m in zip(self.strides, self.moduli)] for i in idx]

    def index_of(self, v) -> int:
        return int(sum((x % m) * s for x, m, s in zip(v, self.moduli, self.strides)))

    def key_indices(self, key) -> np.ndarray:
        vecs = abelian.hnf_elements(key, self.moduli)
        return np.sort(vecs @ self.strides)

    def key_order(self, key) -> int:
        return abelian.hnf_subgroup_order(key, self.moduli)

    # Submodule-level API ---------------------------------------------------

    def length_of_key(self, key) -> int:
        if not self.action:
            order = self.key_order(key)
            n = 0
            p = 2
            while order > 1:
                while order % p == 0:
                    order //= p
                    n += 1
                p += 1
            return n
        if self._heights is None:
            from .enumeration import lattice_heights

            self._heights = lattice_heights(self)
        if key not in self._heights:
            raise ValueError(f"subgroup {key} is not closed under the action")
        return self._heights[key]

    @property
    def length(self) -> int:
        return self.top().length

    def sub(self, key) -> Submodule:
        return Submodule(key, self.length_of_key(key))

    def zero(self) -> Submodule:
        return self.sub(abelian.hnf([], self.moduli))

    def top(self) -> Submodule:
        t = len(self.moduli)
        return self.sub(abelian.hnf([[int(i == j) for j in range(t)] for i in range(t)], self.moduli))

    def cyclic(self, v) -> Submodule:
        return self.sub(self.closure_key([list(v)]))

    def generated(self, gens) -> Submodule:
        return self.sub(self.closure_key([list(g) for g in gens]))

    def meet(self, a: Submodule, b: Submodule) -> Submodule:
        both = np.intersect1d(self.key_indices(a.key), self.key_indices(b.key), assume_unique=True)
        return self.sub(self.key_from_indices(both))

    def join(self, a: Submodule, b: Submodule) -> Submodule:
        return self.sub(self.join_key(a.key, b.key))

    def order(self, a: Submodule) -> int:
        return self.key_order(a.key)

    def contains_vector(self, a: Submodule, v) -> bool:
        return abelian.hnf_contains(a.key, v)

    def element_indices(self, a: Submodule) -> np.ndarray:
        return self.key_indices(a.key)

    def mask(self, a: Submodule) -> np.ndarray:
        m = np.zeros(self.n_elements, dtype=bool)
        m[self.key_indices(a.key)] = True
        return m

    def elements(self, a: Submodule) -> list[tuple[int, ...]]:
        return [tuple(v) for v in self.vectors(self.key_indices(a.key))]

    def is_closed(self, a: Submodule) -> bool:
        return all(
            abelian.hnf_contains(a.key, abelian.apply_action(A, row, self.moduli))
            for row in a.key
            for A in self.action
        )

    def label(self, a: Submodule) -> str:
        gens = [
            tuple(x % m for x, m in zip(row, self.moduli))
            for row in a.key
            if any(x % m for x, m in zip(row, self.moduli))
        ]
        if not gens:
            return "<0>"
        if len(self.moduli) == 1:
            return "<" + ",".join(str(g[0]) for g in gens) + ">"
        return "<" + ",".join("(" + ",".join(map(str, g)) + ")" for g in gens) + ">"


Model = Union[SemisimpleModel, ExplicitModel]


@lru_cache(maxsize=256)
def model_of(V: ModuleSpec) -> Model:
    if isinstance(V, SemisimpleSpec):
        return SemisimpleModel(V)
    if isinstance(V, ExplicitSpec):
        return ExplicitModel(V)
    raise TypeError(f"not a module spec: {V!r}")


# ---------------------------------------------------------------------------
# lattice


class SubmoduleLattice:
    """All submodules of ``ambient``, sorted by (length, key).

    ``masks[i]`` is the membership vector of member ``i`` over the ambient
    elements; element index 0 is always the zero element.
    """

    def __init__(self, ambient: ModuleSpec, members):
        self.ambient = ambient
        self.model = model_of(ambient)
        self.members = tuple(sorted(members, key=lambda s: (s.length, s.key)))
        self.index = {s.key: i for i, s in enumerate(self.members)}
        if len(self.index) != len(self.members):
            raise ValueError("duplicate submodules in lattice")
        self.lengths = np.array([s.length for s in self.members], dtype=np.int64)
        self.masks = np.stack([self.model.mask(s) for s in self.members])
        self._by_mask = {np.packbits(m).tobytes(): i for i, m in enumerate(self.masks)}
        self.length = int(self.lengths.max())
        self.bottom = 0
        self.top = len(self.members) - 1
        self.strata = tuple(
            tuple(int(i) for i in np.nonzero(self.lengths == L)[0]) for L in range(self.length + 1)
        )

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, sub: Submodule) -> bool:
        return sub.key in self.index

    def idx(self, sub: Submodule) -> int:
        try:
            return self.index[sub.key]
        except KeyError:
            raise ValueError("submodule is not a member of this lattice") from None

    def label(self, i: int) -> str:
        return self.model.label(self.members[i])

    @cached_property
    def sizes(self) -> np.ndarray:
        return self.masks.sum(axis=1)

    @cached_property
    def leq(self) -> np.ndarray:
        """``leq[i, j]`` iff member ``i`` is contained in member ``j``."""
        M = self.masks.astype(np.float32)
        outside = (~self.masks).astype(np.float32)
        return (M @ outside.T) < 0.5

    def meet(self, i: int, j: int) -> int:
        return self._by_mask[np.packbits(self.masks[i] & self.masks[j]).tobytes()]

    def join(self, i: int, j: int) -> int:
        ups = np.nonzero(self.leq[i] & self.leq[j])[0]
        return int(ups[np.argmin(self.lengths[ups])])

    def above(self, i: int) -> np.ndarray:
        return np.nonzero(self.leq[i])[0]

    def below(self, i: int) -> np.ndarray:
        return np.nonzero(self.leq[:, i])[0]

    def maximals_of(self, i: int) -> list[int]:
        return [int(k) for k in self.below(i) if self.lengths[k] == self.lengths[i] - 1]

    def atoms_of(self, i: int) -> list[int]:
        return [int(k) for k in self.below(i) if self.lengths[k] == 1]

    def proper(self) -> list[int]:
        return list(range(1, len(self.members) - 1))

    @cached_property
    def socle(self) -> int:
        s = self.bottom
        for a in self.strata[1] if self.length >= 1 else ():
            s = self.join(s, a)
        return s

    @cached_property
    def radical(self) -> int:
        r = self.top
        for m in self.strata[self.length - 1] if self.length >= 1 else ():
            r = self.meet(r, m)
        return r

    def socle_of(self, i: int) -> int:
        s = self.bottom
        for a in self.atoms_of(i):
            s = self.join(s, a)
        return s

    def is_semisimple(self, i: int) -> bool:
        return self.socle_of(i) == i


# ---------------------------------------------------------------------------
# operations


def _check_member(V: ModuleSpec, *subs: Submodule):
    model = model_of(V)
    for s in subs:
        if isinstance(model, SemisimpleModel):
            ok = isinstance(s.key, tuple) and len(s.key) == len(model.components) and all(
                all(len(r) == c.mult for r in rows) for rows, c in zip(s.key, model.components)
            )
        else:
            t = len(model.moduli)
            ok = len(s.key) == t and all(len(r) == t for r in s.key)
        if not ok:
            raise ValueError(f"submodule {s.key!r} does not belong to {V}")


def meet(V: ModuleSpec, A: Submodule, B: Submodule) -> Submodule:
    _check_member(V, A, B)
    return model_of(V).meet(A, B)


def join(V: ModuleSpec, A: Submodule, B: Submodule) -> Submodule:
    _check_member(V, A, B)
    return model_of(V).join(A, B)


def composition_length(V: ModuleSpec, sub: Submodule | None = None) -> int:
    if sub is not None:
        return sub.length
    return model_of(V).length


def lattice_of(V: ModuleSpec) -> SubmoduleLattice:
    from .enumeration import enumerate_submodules

    return enumerate_submodules(V)


def socle(V: ModuleSpec) -> Submodule:
    L = lattice_of(V)
    return L.members[L.socle]


def radical_and_maximals(V: ModuleSpec) -> tuple[Submodule, list[Submodule]]:
    L = lattice_of(V)
    maximals = [L.members[i] for i in L.strata[L.length - 1]] if L.length else []
    return L.members[L.radical], maximals


@dataclass(frozen=True)
class StructuralFlags:
    is_semisimple: bool
    is_simple: bool
    is_uniform: bool


def structural_flags(V: ModuleSpec) -> StructuralFlags:
    L = lattice_of(V)
    nonzero = range(1, len(L))
    uniform = all(L.meet(i, j) != L.bottom for i in nonzero for j in nonzero if i < j)
    return StructuralFlags(L.socle == L.top, L.length == 1, uniform)


def interval_count(L: SubmoduleLattice, W: Submodule) -> int:
    """Number of members containing ``W`` (= number of submodules of V/W)."""
    return int(L.leq[L.idx(W)].sum())


def product_spec(U: ExplicitSpec, W: ExplicitSpec) -> ExplicitSpec:
    """External direct sum ``U x W`` with block-diagonal action."""
    pu, pw = U.pres, W.pres
    if len(pu.action) != len(pw.action):
        raise ValueError("factors must be acted on by the same number of ring generators")
    tu, tw = pu.rank, pw.rank
    action = []
    for A, B in zip(pu.action, pw.action):
        M = [[0] * (tu + tw) for _ in range(tu + tw)]
        for i in range(tu):
            M[i][:tu] = A[i]
        for i in range(tw):
            M[tu + i][tu:] = B[i]
        action.append(M)
    return ExplicitSpec.of(pu.moduli + pw.moduli, action)


