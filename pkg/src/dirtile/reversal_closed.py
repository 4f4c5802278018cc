"""Reversal-closed subsets of D_m for a code delta.

A subset G is reversal-closed for delta when for every s1, s2 in G some
s3 in G satisfies ``delta * s1(delta) * s2(delta) == s3(delta)``.

Maximal subsets are found in three stages: build the conflict graph on
D_m, list maximal conflict-free subsets as maximal cliques of its
complement, then cut each candidate down to its reversal-closed subsets.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import networkx as nx
import numpy as np

from .dihedral import (
    Code,
    DihedralElement,
    act_on_code,
    compose,
    conjugate,
    element_name,
    elements,
    make_code,
    multiply,
)

DEFAULT_BOUND = 12
BRUTE_FORCE_BOUND = 8


class BoundExceeded(ValueError):
    pass


class StabilizerError(ValueError):
    pass


@dataclass(frozen=True)
class ReversalClosedSubset:
    m: int
    delta: Code
    elements: frozenset
    maximal: bool = False

    def __post_init__(self):
        object.__setattr__(self, "delta", make_code(self.delta))
        object.__setattr__(self, "elements", frozenset(self.elements))

    def __len__(self) -> int:
        return len(self.elements)

    def __contains__(self, sigma) -> bool:
        return sigma in self.elements

    def sorted(self) -> list[DihedralElement]:
        return sorted(self.elements)

    def names(self) -> list[str]:
        return [element_name(s) for s in self.sorted()]

    def is_valid(self) -> bool:
        return is_reversal_closed(self.delta, self.elements)


@dataclass
class _Table:
    """Closure requirements for one delta, indexed by canonical element order."""

    delta: Code
    group: list = field(init=False)
    values: list = field(init=False)
    req: list = field(init=False)

    def __post_init__(self):
        m = len(self.delta)
        self.group = elements(m)
        self.values = [act_on_code(s, self.delta) for s in self.group]
        by_value: dict[Code, int] = {}
        for k, v in enumerate(self.values):
            by_value[v] = by_value.get(v, 0) | (1 << k)
        n = len(self.group)
        self.req = [[0] * n for _ in range(n)]
        for i in range(n):
            di = multiply(self.delta, self.values[i])
            for j in range(i, n):
                mask = by_value.get(multiply(di, self.values[j]), 0)
                self.req[i][j] = self.req[j][i] = mask

    @cached_property
    def size(self) -> int:
        return len(self.group)

    def violation(self, mask: int):
        """First pair (i, j) in ``mask`` with no witness inside ``mask``."""
        idx = [k for k in range(self.size) if mask >> k & 1]
        for a, i in enumerate(idx):
            row = self.req[i]
            for j in idx[a:]:
                if not row[j] & mask:
                    return i, j
        return None

    def to_elements(self, mask: int) -> frozenset:
        return frozenset(self.group[k] for k in range(self.size) if mask >> k & 1)

    def to_mask(self, gamma: Iterable[DihedralElement]) -> int:
        mask = 0
        for s in gamma:
            mask |= 1 << s.index
        return mask


def is_reversal_closed(delta: Sequence[int], gamma: Iterable[DihedralElement]) -> bool:
    delta = make_code(delta)
    gamma = list(gamma)
    m = len(delta)
    for s in gamma:
        if s.m != m:
            raise ValueError(f"element of D_{s.m} tested against a code of length {m}")
    targets = {act_on_code(s, delta) for s in gamma}
    for a, s1 in enumerate(gamma):
        p = multiply(delta, act_on_code(s1, delta))
        for s2 in gamma[a:]:
            if multiply(p, act_on_code(s2, delta)) not in targets:
                return False
    return True


def conflict_graph(delta: Sequence[int]) -> nx.Graph:
    """Vertices are element indices; edges join conflicting pairs."""
    table = _Table(make_code(delta))
    g = nx.Graph()
    g.add_nodes_from(range(table.size))
    for i in range(table.size):
        for j in range(i + 1, table.size):
            if not table.req[i][j]:
                g.add_edge(i, j)
    return g


def _maximal_conflict_free(table: _Table) -> list[int]:
    compatible = nx.Graph()
    compatible.add_nodes_from(range(table.size))
    for i in range(table.size):
        for j in range(i + 1, table.size):
            if table.req[i][j]:
                compatible.add_edge(i, j)
    masks = []
    for clique in nx.find_cliques(compatible):
        mask = 0
        for k in clique:
            mask |= 1 << k
        masks.append(mask)
    return masks


def _closed_within(table: _Table, mask: int, memo: dict) -> set[int]:
    """Maximal reversal-closed subsets of ``mask`` (possibly non-maximal overall)."""
    if mask in memo:
        return memo[mask]
    bad = table.violation(mask)
    if bad is None:
        out = {mask}
    else:
        # any closed subset of mask must drop one side of the bad pair
        i, j = bad
        out = set()
        for drop in {i, j}:
            out |= _closed_within(table, mask & ~(1 << drop), memo)
    memo[mask] = out
    return out


def _keep_maximal(masks: Iterable[int]) -> list[int]:
    kept: list[int] = []
    for mask in sorted(set(masks), key=lambda x: -bin(x).count("1")):
        if not any(mask & k == mask for k in kept):
            kept.append(mask)
    return kept


def _sort_key(subset: ReversalClosedSubset):
    return (-len(subset), [s.index for s in subset.sorted()])


def enumerate_maximal(
    delta: Sequence[int], bound: int = DEFAULT_BOUND
) -> list[ReversalClosedSubset]:
    """All maximal reversal-closed subsets for ``delta``, largest first."""
    delta = make_code(delta)
    m = len(delta)
    if m > bound:
        raise BoundExceeded(f"m={m} exceeds the enumeration bound {bound}")
    table = _Table(delta)
    memo: dict = {}
    found: set[int] = set()
    for candidate in _maximal_conflict_free(table):
        found |= _closed_within(table, candidate, memo)
    out = [
        ReversalClosedSubset(m, delta, table.to_elements(mask), maximal=True)
        for mask in _keep_maximal(found)
    ]
    return sorted(out, key=_sort_key)


def enumerate_maximal_discarding(delta: Sequence[int]) -> list[ReversalClosedSubset]:
    """Conflict-free candidates that already satisfy closure, nothing else.

    Kept for comparison with :func:`enumerate_maximal`; this variant can miss
    maximal subsets that only appear after dropping elements of a candidate.
    """
    delta = make_code(delta)
    table = _Table(delta)
    keep = [c for c in _maximal_conflict_free(table) if table.violation(c) is None]
    out = [
        ReversalClosedSubset(len(delta), delta, table.to_elements(mask), maximal=True)
        for mask in _keep_maximal(keep)
    ]
    return sorted(out, key=_sort_key)


def brute_force_maximal(delta: Sequence[int]) -> list[ReversalClosedSubset]:
    """Test every subset of D_m; keep the inclusion-maximal closed ones."""
    delta = make_code(delta)
    m = len(delta)
    if m > BRUTE_FORCE_BOUND:
        raise BoundExceeded(f"brute force limited to m <= {BRUTE_FORCE_BOUND}, got {m}")
    table = _Table(delta)
    n = table.size
    masks = np.arange(1 << n, dtype=np.int64)
    ok = np.ones(1 << n, dtype=bool)
    for i in range(n):
        has_i = (masks >> i) & 1 == 1
        for j in range(i, n):
            both = has_i & ((masks >> j) & 1 == 1)
            ok &= ~(both & ((masks & table.req[i][j]) == 0))
    ok[0] = False
    closed = [int(x) for x in masks[ok]]
    out = [
        ReversalClosedSubset(m, delta, table.to_elements(mask), maximal=True)
        for mask in _keep_maximal(closed)
    ]
    return sorted(out, key=_sort_key)


def conjugate_subset(gamma: ReversalClosedSubset, sigma: DihedralElement) -> ReversalClosedSubset:
    """sigma G sigma^-1, closed for sigma(delta)."""
    return ReversalClosedSubset(
        gamma.m,
        act_on_code(sigma, gamma.delta),
        frozenset(conjugate(sigma, t) for t in gamma.elements),
        gamma.maximal,
    )


def stabilizer_translate(
    gamma: ReversalClosedSubset, sigma: DihedralElement
) -> tuple[ReversalClosedSubset, ReversalClosedSubset]:
    """(G sigma, sigma G) for sigma fixing delta."""
    if act_on_code(sigma, gamma.delta) != gamma.delta:
        raise StabilizerError(f"{sigma} does not fix {gamma.delta}")
    right = frozenset(compose(t, sigma) for t in gamma.elements)
    left = frozenset(compose(sigma, t) for t in gamma.elements)
    return (
        ReversalClosedSubset(gamma.m, gamma.delta, right, gamma.maximal),
        ReversalClosedSubset(gamma.m, gamma.delta, left, gamma.maximal),
    )


def repeat_code(delta: Sequence[int], k: int) -> Code:
    """delta written k times in a row."""
    return tuple(delta) * k


def stretch_code(delta: Sequence[int], k: int) -> Code:
    """Each entry of delta repeated k times in place."""
    return tuple(x for x in delta for _ in range(k))


def lift_repeat(gamma: ReversalClosedSubset, k: int) -> ReversalClosedSubset:
    """Preimage of G under D_km -> D_m (f -> f, r -> r)."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    big = gamma.m * k
    lifted = frozenset(
        DihedralElement(big, s.flip, s.rot + j * gamma.m)
        for s in gamma.elements
        for j in range(k)
    )
    return ReversalClosedSubset(big, repeat_code(gamma.delta, k), lifted, gamma.maximal)


def lift_stretch(gamma: ReversalClosedSubset, k: int) -> ReversalClosedSubset:
    """Image of G under D_m -> D_km (f -> f, r -> r^k); maximality is not inherited."""
    if k < 2:
        raise ValueError(f"k must be >= 2, got {k}")
    big = gamma.m * k
    lifted = frozenset(DihedralElement(big, s.flip, s.rot * k) for s in gamma.elements)
    return ReversalClosedSubset(big, stretch_code(gamma.delta, k), lifted, False)


def subset(delta: Sequence[int], names: Iterable) -> ReversalClosedSubset:
    """Build a subset from element names or elements (no validity check)."""
    from .dihedral import parse_element

    delta = make_code(delta)
    m = len(delta)
    elems = frozenset(s if isinstance(s, DihedralElement) else parse_element(s, m) for s in names)
    return ReversalClosedSubset(m, delta, elems)
