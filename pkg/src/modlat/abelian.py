"""Finite abelian groups ``Z/m_1 + ... + Z/m_t`` with an endomorphism action.

Subgroups are identified through the integer lattice of their preimage in
``Z^t``.  That lattice always contains ``diag(m_1, ..., m_t)``, so it has full
rank and a unique Hermite normal form: upper triangular, positive pivots
``d_c`` dividing ``m_c``, entries above each pivot reduced into ``[0, d_c)``.
The HNF rows are the canonical generating matrix of the subgroup.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from math import prod

import numpy as np

from .field import is_prime

DEFAULT_MAX_ORDER = 4096

Hnf = tuple[tuple[int, ...], ...]


def max_order() -> int:
    """Desk-scale bound on group order; ``MODLAT_MAX_ORDER`` may only lower it."""
    raw = os.environ.get("MODLAT_MAX_ORDER")
    if not raw:
        return DEFAULT_MAX_ORDER
    try:
        val = int(raw)
    except ValueError:
        raise ValueError(f"MODLAT_MAX_ORDER={raw!r} is not an integer") from None
    return max(1, min(val, DEFAULT_MAX_ORDER))


def prime_power(m: int) -> tuple[int, int] | None:
    """``(p, k)`` with ``m == p**k`` and ``k >= 1``, else None."""
    if m < 2:
        return None
    p = next(d for d in range(2, m + 1) if m % d == 0)
    k = 0
    while m % p == 0:
        m //= p
        k += 1
    return (p, k) if m == 1 and is_prime(p) else None


@dataclass(frozen=True)
class AbelianPresentation:
    moduli: tuple[int, ...]
    action: tuple[tuple[tuple[int, ...], ...], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "moduli", tuple(int(m) for m in self.moduli))
        object.__setattr__(
            self, "action", tuple(tuple(tuple(int(x) for x in row) for row in A) for A in self.action)
        )
        if not self.moduli:
            raise ValueError("a presentation needs at least one cyclic factor")
        for m in self.moduli:
            if prime_power(m) is None:
                raise ValueError(f"modulus {m} is not a prime power >= 2")
        t = len(self.moduli)
        for k, A in enumerate(self.action):
            if len(A) != t or any(len(row) != t for row in A):
                raise ValueError(f"action matrix {k} is not {t}x{t}")

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @property
    def order(self) -> int:
        return prod(self.moduli)


def validate_action(P: AbelianPresentation) -> list[tuple[int, int, int]]:
    """List of ``(i, j, k)`` (0-based) where matrix ``k`` breaks ``A[i][j]*m_j = 0 mod m_i``.

    An empty list means every matrix induces a well-defined endomorphism.
    """
    bad = []
    m = P.moduli
    for k, A in enumerate(P.action):
        for i in range(P.rank):
            for j in range(P.rank):
                if (A[i][j] * m[j]) % m[i]:
                    bad.append((i, j, k))
    return bad


def _reduce_matrix(P: AbelianPresentation, A) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(A[i][j] % P.moduli[i] for j in range(P.rank)) for i in range(P.rank))


def action_monoid(P: AbelianPresentation, bound: int = 4096) -> list[tuple[tuple[int, ...], ...]]:
    """Closure of the action matrices (and the identity) under composition.

    Entries are reduced mod the row modulus, which is well defined for valid
    actions.  Raises ``ValueError`` if the closure exceeds ``bound`` elements.
    """
    if validate_action(P):
        raise ValueError("action is not well defined on the group")
    t = P.rank
    ident = _reduce_matrix(P, [[int(i == j) for j in range(t)] for i in range(t)])
    gens = [np.array(_reduce_matrix(P, A), dtype=np.int64) for A in P.action]
    mod = np.array(P.moduli, dtype=np.int64)[:, None]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for X in frontier:
            Xa = np.array(X, dtype=np.int64)
            for G in gens:
                Y = tuple(map(tuple, ((G @ Xa) % mod).tolist()))
                if Y not in seen:
                    seen.add(Y)
                    nxt.append(Y)
                    if len(seen) > bound:
                        raise ValueError(f"action monoid exceeds {bound} elements")
        frontier = nxt
    return sorted(seen)


def _egcd(a: int, b: int) -> tuple[int, int, int]:
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


def hnf(gens, moduli: tuple[int, ...]) -> Hnf:
    """Canonical HNF of the lattice spanned by ``gens`` and ``diag(moduli)``."""
    t = len(moduli)
    unit = [tuple(m if i == j else 0 for j in range(t)) for i, m in enumerate(moduli)]
    pool = [list(g) for g in gens if any(x % m for x, m in zip(g, moduli))]
    out: list[list[int]] = []
    for col in range(t):
        # the m_j e_j rows stay in the pool, so reducing entries mod m_j is a lattice-preserving row op
        keys = {tuple(r) for r in pool}
        pool += [list(u) for u in unit[col:] if u not in keys]
        pivot = None
        rest = []
        for r in pool:
            if r[col] == 0:
                rest.append(r)
            elif pivot is None:
                pivot = r
            else:
                a, b = pivot[col], r[col]
                g, x, y = _egcd(a, b)
                new_p = [x * u + y * v for u, v in zip(pivot, r)]
                new_r = [(a // g) * v - (b // g) * u for u, v in zip(pivot, r)]
                pivot = new_p
                if any(new_r):
                    rest.append(new_r)
        if pivot[col] < 0:
            pivot = [-u for u in pivot]
        pivot = [u % moduli[j] if j > col else u for j, u in enumerate(pivot)]
        out.append(pivot)
        pool = {tuple(u % moduli[j] if j > col else u for j, u in enumerate(r)) for r in rest}
        pool = [list(r) for r in sorted(pool) if any(r)]
    for i in range(t):
        d = out[i][i]
        for k in range(i):
            f = out[k][i] // d
            if f:
                out[k] = [u - f * v for u, v in zip(out[k], out[i])]
    return tuple(tuple(r) for r in out)


def hnf_subgroup_order(H: Hnf, moduli: tuple[int, ...]) -> int:
    return prod(m // H[i][i] for i, m in enumerate(moduli))


def hnf_reduce(H: Hnf, v) -> list[int]:
    """Canonical representative of the coset ``v + H``."""
    v = list(v)
    for c, row in enumerate(H):
        f = v[c] // row[c]
        if f:
            v = [a - f * b for a, b in zip(v, row)]
    return v


def hnf_contains(H: Hnf, v) -> bool:
    return not any(hnf_reduce(H, v))


def hnf_elements(H: Hnf, moduli: tuple[int, ...]) -> np.ndarray:
    """All elements of the subgroup as an ``(order, t)`` array of residues."""
    t = len(moduli)
    mod = np.array(moduli, dtype=np.int64)
    vecs = np.zeros((1, t), dtype=np.int64)
    for c, row in enumerate(H):
        r = np.array(row, dtype=np.int64)
        steps = moduli[c] // row[c]
        vecs = np.concatenate([(vecs + a * r) % mod for a in range(steps)], axis=0)
    return vecs


def strides(moduli: tuple[int, ...]) -> np.ndarray:
    s = np.ones(len(moduli), dtype=np.int64)
    for i in range(1, len(moduli)):
        s[i] = s[i - 1] * moduli[i - 1]
    return s


def all_elements(moduli: tuple[int, ...]) -> np.ndarray:
    """Every group element, row ``i`` being the element with mixed-radix index ``i``."""
    n = prod(moduli)
    idx = np.arange(n, dtype=np.int64)
    cols = [(idx // s) % m for s, m in zip(strides(moduli), moduli)]
    return np.stack(cols, axis=1)


def apply_action(A, v, moduli: tuple[int, ...]) -> list[int]:
    return [sum(a * x for a, x in zip(row, v)) % m for row, m in zip(A, moduli)]


def hnf_contains_all(H: Hnf, K: Hnf) -> bool:
    """True iff the subgroup with HNF ``K`` lies inside the one with HNF ``H``."""
    return all(hnf_contains(H, row) for row in K)
