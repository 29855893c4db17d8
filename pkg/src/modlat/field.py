"""Finite fields F_q with q = p^e <= 64, realized as lookup tables.

Elements are the integers ``0 .. q-1``; the integer ``sum(c_i * p**i)``
stands for the polynomial ``sum(c_i * x**i)`` modulo the reduction polynomial.
For ``e == 1`` this is plain residue arithmetic mod p.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

MAX_FIELD_SIZE = 64
MAX_DEGREE = 4


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _poly_mod(a: list[int], m: tuple[int, ...], p: int) -> list[int]:
    """Remainder of ``a`` modulo the monic polynomial ``m`` over F_p (low-to-high)."""
    a = [c % p for c in a]
    dm = len(m) - 1
    while len(a) - 1 >= dm:
        lead = a[-1]
        if lead:
            shift = len(a) - 1 - dm
            for i, c in enumerate(m):
                a[shift + i] = (a[shift + i] - lead * c) % p
        a.pop()
    return a


def _monic_polys(p: int, degree: int):
    for v in range(p**degree):
        coeffs = []
        for _ in range(degree):
            coeffs.append(v % p)
            v //= p
        yield tuple(coeffs) + (1,)


def is_irreducible(poly: tuple[int, ...], p: int) -> bool:
    """Exhaustive factor search; fine for the degrees used here (<= 4)."""
    deg = len(poly) - 1
    if deg < 1 or poly[-1] != 1:
        return False
    for d in range(1, deg // 2 + 1):
        for f in _monic_polys(p, d):
            if not any(_poly_mod(list(poly), f, p)):
                return False
    return True


def least_irreducible(p: int, e: int) -> tuple[int, ...]:
    """Lexicographically least monic irreducible of degree ``e``.

    Order is by the non-leading coefficients read from degree ``e-1`` down to 0.
    """
    for poly in _monic_polys(p, e):
        if is_irreducible(poly, p):
            return poly
    raise RuntimeError(f"no irreducible polynomial of degree {e} over F_{p}")


@dataclass(frozen=True)
class FieldSpec:
    p: int
    e: int
    reduction_poly: tuple[int, ...]
    add: np.ndarray = field(init=False, repr=False, compare=False)
    mul: np.ndarray = field(init=False, repr=False, compare=False)
    neg: np.ndarray = field(init=False, repr=False, compare=False)
    inv: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        p, e, q = self.p, self.e, self.p**self.e
        digits = np.array([[(a // p**i) % p for i in range(e)] for a in range(q)], dtype=np.int64)
        weights = p ** np.arange(e, dtype=np.int64)
        add = ((digits[:, None, :] + digits[None, :, :]) % p) @ weights
        mul = np.zeros((q, q), dtype=np.int64)
        for a in range(q):
            for b in range(a, q):
                prod = [0] * (2 * e - 1)
                for i in range(e):
                    if digits[a, i]:
                        for j in range(e):
                            prod[i + j] += int(digits[a, i] * digits[b, j])
                red = _poly_mod(prod, self.reduction_poly, p) if e > 1 else [prod[0] % p]
                val = sum(c * p**i for i, c in enumerate(red))
                mul[a, b] = mul[b, a] = val
        neg = np.argmin(add, axis=1)
        inv = np.zeros(q, dtype=np.int64)
        for a in range(1, q):
            inv[a] = int(np.nonzero(mul[a] == 1)[0][0])
        for name, arr in (("add", add), ("mul", mul), ("neg", neg), ("inv", inv)):
            arr = np.ascontiguousarray(arr, dtype=np.int64)
            arr.setflags(write=False)
            object.__setattr__(self, name, arr)

    @property
    def q(self) -> int:
        return self.p**self.e

    def __len__(self) -> int:
        return self.q

    def __str__(self) -> str:
        return f"F_{self.q}"

    def sub(self, a, b):
        return self.add[a, self.neg[b]]

    def power(self, a: int, k: int) -> int:
        r = 1
        for _ in range(k):
            r = int(self.mul[r, a])
        return r


@lru_cache(maxsize=None)
def field_make(p: int, e: int = 1) -> FieldSpec:
    """Build F_{p^e}; raises ``ValueError`` outside the supported range."""
    if not is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if not 1 <= e <= MAX_DEGREE:
        raise ValueError(f"extension degree {e} outside 1..{MAX_DEGREE}")
    if p**e > MAX_FIELD_SIZE:
        raise ValueError(f"field size {p**e} exceeds {MAX_FIELD_SIZE}")
    poly = least_irreducible(p, e) if e > 1 else (0, 1)
    return FieldSpec(p, e, poly)


def field_of_size(q: int) -> FieldSpec:
    """Field with ``q`` elements, ``q`` a prime power."""
    if q < 2:
        raise ValueError(f"no field of size {q}")
    for p in range(2, q + 1):
        if q % p == 0:
            break
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    if r != 1 or not is_prime(p):
        raise ValueError(f"{q} is not a prime power")
    return field_make(p, e)
