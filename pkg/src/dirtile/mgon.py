"""m-gon categories, represented by their edge-reversal codes.

Entry ``i`` of a code is +1 when the edge ``d^i`` runs from ``v^i`` to
``v^(i+1)`` and -1 when it runs the other way.  Everything else about the
category (the composites ``d^i . s`` and ``d^i . t``) follows from it.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian
from math import gcd

from .dihedral import (
    Code,
    DimensionError,
    act_on_code,
    elements,
    format_signs,
    make_code,
    multiply,
    ones,
    orbit as code_orbit,
    parse_signs,
)


def _order_key(code: Code) -> tuple[int, ...]:
    # +1 sorts before -1
    return tuple(0 if x == 1 else 1 for x in code)


@dataclass(frozen=True)
class MGonCategory:
    code: Code

    def __post_init__(self):
        code = make_code(self.code)
        if len(code) < 3:
            raise ValueError(f"m-gon categories need m >= 3, got m={len(code)}")
        object.__setattr__(self, "code", code)

    @property
    def m(self) -> int:
        return len(self.code)

    @classmethod
    def cyclic(cls, m: int) -> MGonCategory:
        return cls(ones(m))

    @classmethod
    def from_signs(cls, text: str) -> MGonCategory:
        return cls(parse_signs(text))

    @property
    def signs(self) -> str:
        return format_signs(self.code)

    def is_cyclic(self) -> bool:
        return all(x == 1 for x in self.code)

    def source_corner(self, i: int) -> int:
        """Index j with ``d^i . s = v^j`` (1-based)."""
        return i if self.code[i - 1] == 1 else i % self.m + 1

    def target_corner(self, i: int) -> int:
        return i % self.m + 1 if self.code[i - 1] == 1 else i

    def __str__(self) -> str:
        return self.signs


def relative_code(c1: MGonCategory, c2: MGonCategory) -> Code:
    """Code turning a c1-tile into a c2-tile."""
    if c1.m != c2.m:
        raise DimensionError(f"m mismatch: {c1.m} vs {c2.m}")
    return multiply(c1.code, c2.code)


def orbit(c: MGonCategory) -> set[Code]:
    return code_orbit(c.code)


def canonical_form(c: MGonCategory | Code) -> Code:
    code = c.code if isinstance(c, MGonCategory) else make_code(c)
    return min(code_orbit(code), key=_order_key)


def _check_m(m: int) -> None:
    if m < 3:
        raise ValueError(f"m must be >= 3, got {m}")


def burnside_count_odd(m: int) -> int:
    """Closed form for odd m."""
    if m % 2 == 0:
        raise ValueError("odd-m formula called with even m")
    _check_m(m)
    total = 2**m + 2 * sum(2 ** gcd(i, m) for i in range(1, (m - 1) // 2 + 1))
    q, rem = divmod(total, 2 * m)
    assert rem == 0
    return q


def burnside_count_even(m: int) -> int:
    """Closed form for even m."""
    if m % 2 == 1:
        raise ValueError("even-m formula called with odd m")
    _check_m(m)
    h = m // 2
    total = 2**m + (h + 1) * 2**h + 2 * sum(2 ** gcd(i, m) for i in range(1, h))
    q, rem = divmod(total, 2 * m)
    assert rem == 0
    return q


def count_isomorphism_classes(m: int) -> int:
    _check_m(m)
    return burnside_count_odd(m) if m % 2 else burnside_count_even(m)


def brute_force_orbit_count(m: int) -> int:
    """Partition {+1,-1}^m into D_m-orbits by direct enumeration.

    Codes are packed into bitmasks (bit i set <=> entry i is -1) so that
    m up to 16 stays fast.
    """
    _check_m(m)
    full = (1 << m) - 1

    def rot(x: int, k: int) -> int:
        # left shift of the tuple = bit rotation towards bit 0
        return ((x >> k) | (x << (m - k))) & full

    def flip(x: int) -> int:
        rev = int(format(x, f"0{m}b")[::-1], 2)
        return rev ^ full

    seen = bytearray(1 << m)
    count = 0
    for x in range(1 << m):
        if seen[x]:
            continue
        count += 1
        for k in range(m):
            y = rot(x, k)
            seen[y] = 1
            seen[flip(y)] = 1
    return count


def enumerate_representatives(m: int) -> list[MGonCategory]:
    _check_m(m)
    reps = set()
    for code in cartesian((1, -1), repeat=m):
        reps.add(canonical_form(code))
    return [MGonCategory(c) for c in sorted(reps, key=_order_key)]


def fixed_point_count(m: int) -> dict[str, int]:
    """|X^g| summed by element, straight from the action (Burnside check)."""
    _check_m(m)
    codes = list(cartesian((1, -1), repeat=m))
    return {
        s.name(): sum(1 for c in codes if act_on_code(s, c) == c) for s in elements(m)
    }
