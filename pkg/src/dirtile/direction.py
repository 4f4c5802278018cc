"""The direction presheaf at tile level, and its restricted subsets."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import product as cartesian
from typing import Iterable, Optional

from .dihedral import (
    Code,
    DihedralElement,
    DimensionError,
    act_on_code,
    elements,
    format_signs,
    multiply,
)
from .mgon import MGonCategory

__all__ = [
    "Kind",
    "RestrictedDirectionSet",
    "build_restricted",
    "contains",
    "multiply",
]


class Kind(str, Enum):
    FULL = "full"
    DIHEDRAL = "dihedral-restricted"
    GAMMA = "gamma-restricted"


@dataclass(frozen=True)
class RestrictedDirectionSet:
    kind: Kind
    base: MGonCategory
    target: MGonCategory
    members: frozenset
    gamma: Optional[frozenset] = None

    def __contains__(self, code) -> bool:
        return contains(self, code)

    def __len__(self) -> int:
        return len(self.members)

    def sorted_signs(self) -> list[str]:
        return sorted(format_signs(c) for c in self.members)


def full_set(base: MGonCategory) -> RestrictedDirectionSet:
    members = frozenset(cartesian((1, -1), repeat=base.m))
    return RestrictedDirectionSet(Kind.FULL, base, base, members)


def build_restricted(
    base: MGonCategory,
    target: MGonCategory,
    gamma: Optional[Iterable[DihedralElement]] = None,
) -> RestrictedDirectionSet:
    """Codes that turn a ``base`` tile into a ``target`` tile.

    Without ``gamma`` this is ``base . sigma(target)`` over all of D_m; with
    ``gamma`` it is ``target . sigma(target)`` for sigma in gamma.
    """
    if base.m != target.m:
        raise DimensionError(f"m mismatch: {base.m} vs {target.m}")
    t = target.code
    if gamma is None:
        members = frozenset(multiply(base.code, act_on_code(s, t)) for s in elements(base.m))
        return RestrictedDirectionSet(Kind.DIHEDRAL, base, target, members)
    gamma = frozenset(gamma)
    for s in gamma:
        if s.m != base.m:
            raise DimensionError(f"element of D_{s.m} in a subset of D_{base.m}")
    members = frozenset(multiply(t, act_on_code(s, t)) for s in gamma)
    return RestrictedDirectionSet(Kind.GAMMA, base, target, members, gamma)


def contains(rset: RestrictedDirectionSet, code: Code) -> bool:
    if len(code) != rset.base.m:
        raise DimensionError(f"code of length {len(code)} vs m={rset.base.m}")
    return tuple(code) in rset.members
