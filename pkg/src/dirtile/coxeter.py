"""The Coxeter group W_{m,n} generated by reflections in the sides of an m-gon.

Group elements are identified exactly through the contragredient Tits
representation with coefficients in Z[lam], lam = 2 cos(2 pi / n).  A tile w
is keyed by ``w^-1 . rho`` where rho is the all-ones vector; this point has
trivial stabilizer, so keys are in bijection with group elements, and the
key of ``w s_i`` is ``s_i`` applied to the key of ``w``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

Scalar = tuple[int, ...]  # coefficients of 1, lam, lam^2, ...
Key = tuple[Scalar, ...]


class InvalidParams(ValueError):
    pass


def minimal_polynomial(n: int) -> tuple[int, ...]:
    """Monic integer minimal polynomial of 2 cos(2 pi / n), low degree first."""
    roots = [2 * math.cos(2 * math.pi * k / n) for k in range(1, (n + 1) // 2) if math.gcd(k, n) == 1]
    if n <= 2:
        roots = [2.0 * math.cos(2 * math.pi / n)]
    coeffs = [1.0]
    for root in roots:
        nxt = [0.0] * (len(coeffs) + 1)
        for k, c in enumerate(coeffs):
            nxt[k + 1] += c
            nxt[k] -= root * c
        coeffs = nxt
    out = tuple(round(c) for c in coeffs)
    assert all(abs(a - b) < 1e-6 for a, b in zip(out, coeffs))
    return out


class LambdaRing:
    """Arithmetic in Z[lam] as coefficient tuples of fixed length."""

    def __init__(self, n: int):
        self.n = n
        self.poly = minimal_polynomial(n)
        self.degree = len(self.poly) - 1
        self.value = 2 * math.cos(2 * math.pi / n)

    def const(self, c: int) -> Scalar:
        return (c,) + (0,) * (self.degree - 1)

    def add(self, a: Scalar, b: Scalar, scale: int = 1) -> Scalar:
        """a + scale * b."""
        return tuple(x + scale * y for x, y in zip(a, b))

    def times_lambda(self, a: Scalar) -> Scalar:
        shifted = [0] + list(a)
        top = shifted.pop()
        return tuple(c - top * p for c, p in zip(shifted, self.poly))

    def to_float(self, a: Scalar) -> float:
        return sum(c * self.value**k for k, c in enumerate(a))


@dataclass(frozen=True)
class CoxeterParams:
    m: int
    n: int

    def __post_init__(self):
        check_params(self.m, self.n)

    @property
    def matrix(self) -> tuple[tuple[int, ...], ...]:
        """Coxeter matrix in the conventional listing: 1 on the diagonal,
        n/2 for cyclically adjacent generators, 2 otherwise."""
        return tuple(
            tuple(1 if i == j else self.n // 2 if self.adjacent(i, j) else 2 for j in range(1, self.m + 1))
            for i in range(1, self.m + 1)
        )

    @property
    def relation_orders(self) -> tuple[tuple[int, ...], ...]:
        """Orders of s_i s_j in the tiling's reflection group (0 means infinite).

        Sides of a hyperbolic or Euclidean polygon that do not meet have
        reflections generating an infinite dihedral group.
        """
        return tuple(
            tuple(1 if i == j else self.n // 2 if self.adjacent(i, j) else 0 for j in range(1, self.m + 1))
            for i in range(1, self.m + 1)
        )

    def adjacent(self, i: int, j: int) -> bool:
        return i != j and (i - j) % self.m in (1, self.m - 1)

    @property
    def euclidean(self) -> bool:
        return (self.m - 2) * (self.n - 2) == 4

    @cached_property
    def ring(self) -> LambdaRing:
        return LambdaRing(self.n)


def check_params(m: int, n: int) -> None:
    if m < 3:
        raise InvalidParams(f"m must be >= 3, got {m}")
    if n < 4 or n % 2:
        raise InvalidParams(f"reflective {{{m},{n}}} tilings need even n >= 4, got n={n}")
    if (m - 2) * (n - 2) < 4:
        raise InvalidParams(f"{{{m},{n}}} is spherical")


class KeySpace:
    """Tits-representation keys for tiles of W_{m,n}."""

    def __init__(self, params: CoxeterParams):
        self.params = params
        self.ring = params.ring
        self.m = params.m

    def identity(self) -> Key:
        return tuple(self.ring.const(1) for _ in range(self.m))

    def reflect(self, key: Key, i: int) -> Key:
        """s_i acting on a key; i is 1-based."""
        r = self.ring
        fi = key[i - 1]
        out = []
        for j in range(1, self.m + 1):
            fj = key[j - 1]
            if j == i:
                out.append(tuple(-c for c in fj))
            elif self.params.adjacent(i, j):
                out.append(r.add(fj, r.times_lambda(fi)))
            else:
                out.append(r.add(fj, fi, 2))
        return tuple(out)

    def apply_word(self, word, key: Key | None = None) -> Key:
        """Key of the tile reached from ``key`` by following ``word``."""
        key = self.identity() if key is None else key
        for i in word:
            key = self.reflect(key, i)
        return key

    def vertex_walk(self, key: Key, i: int) -> list[tuple[Key, int]]:
        """Tiles around the vertex between sides i-1 and i, walking alternately.

        Returns n pairs (tile key, label of the side crossed to reach the next
        tile); the first step crosses side i-1.
        """
        a = (i - 2) % self.m + 1
        out = []
        cur = key
        for k in range(self.params.n):
            label = a if k % 2 == 0 else i
            out.append((cur, label))
            cur = self.reflect(cur, label)
        assert cur == key
        return out
