"""Dihedral group D_m acting on sign tuples and on edge indices.

Elements are stored as ``f^flip r^rot``.  On codes, ``r`` is the left
cyclic shift and ``f`` reverses and negates::

    r(d1, ..., dm) = (d2, ..., dm, d1)
    f(d1, ..., dm) = (-dm, ..., -d1)

On indices ``r(i) = i + 1 (mod m)`` and ``f(i) = m + 1 - i``.  Both are
left actions: ``act(s * t, x) == act(s, act(t, x))``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

Code = tuple[int, ...]


class DimensionError(ValueError):
    """Operands live over different m."""


def make_code(entries: Iterable[int]) -> Code:
    code = tuple(int(x) for x in entries)
    if not code:
        raise ValueError("empty code")
    for x in code:
        if x not in (1, -1):
            raise ValueError(f"code entries must be +1 or -1, got {x!r}")
    return code


def parse_signs(text: str) -> Code:
    """Parse a sign string such as ``"+--+-"``."""
    text = text.strip()
    if not text or any(ch not in "+-" for ch in text):
        raise ValueError(f"not a sign string: {text!r}")
    return tuple(1 if ch == "+" else -1 for ch in text)


def format_signs(code: Sequence[int]) -> str:
    return "".join("+" if x == 1 else "-" for x in code)


def ones(m: int) -> Code:
    return (1,) * m


def multiply(a: Sequence[int], b: Sequence[int]) -> Code:
    """Componentwise product in {+1,-1}^m."""
    if len(a) != len(b):
        raise DimensionError(f"length mismatch: {len(a)} vs {len(b)}")
    return tuple(x * y for x, y in zip(a, b))


def product(codes: Iterable[Sequence[int]], m: int) -> Code:
    out = ones(m)
    for c in codes:
        out = multiply(out, c)
    return out


def negate(code: Sequence[int]) -> Code:
    return tuple(-x for x in code)


@dataclass(frozen=True, order=True)
class DihedralElement:
    """The element ``f^flip r^rot`` of D_m."""

    m: int
    flip: bool
    rot: int

    def __post_init__(self):
        if self.m < 3:
            raise ValueError(f"D_m needs m >= 3, got {self.m}")
        object.__setattr__(self, "rot", self.rot % self.m)
        object.__setattr__(self, "flip", bool(self.flip))

    @classmethod
    def identity(cls, m: int) -> DihedralElement:
        return cls(m, False, 0)

    @classmethod
    def r(cls, m: int, k: int = 1) -> DihedralElement:
        return cls(m, False, k)

    @classmethod
    def f(cls, m: int) -> DihedralElement:
        return cls(m, True, 0)

    def __mul__(self, other: DihedralElement) -> DihedralElement:
        return compose(self, other)

    def inverse(self) -> DihedralElement:
        if self.flip:
            return self
        return DihedralElement(self.m, False, -self.rot)

    @property
    def index(self) -> int:
        """Position in the canonical order e, r, ..., r^(m-1), f, f r, ..."""
        return self.rot + (self.m if self.flip else 0)

    def name(self) -> str:
        return element_name(self)

    def __str__(self) -> str:
        return element_name(self)


def compose(a: DihedralElement, b: DihedralElement) -> DihedralElement:
    if a.m != b.m:
        raise DimensionError(f"cannot compose elements of D_{a.m} and D_{b.m}")
    # r^a f = f r^-a
    rot = (-a.rot if b.flip else a.rot) + b.rot
    return DihedralElement(a.m, a.flip != b.flip, rot)


def conjugate(sigma: DihedralElement, tau: DihedralElement) -> DihedralElement:
    """sigma tau sigma^-1."""
    return compose(compose(sigma, tau), sigma.inverse())


def sign(sigma: DihedralElement) -> int:
    return -1 if sigma.flip else 1


def act_on_code(sigma: DihedralElement, code: Sequence[int]) -> Code:
    if len(code) != sigma.m:
        raise DimensionError(f"code of length {len(code)} under D_{sigma.m}")
    k = sigma.rot
    shifted = tuple(code[k:]) + tuple(code[:k])
    if sigma.flip:
        return tuple(-x for x in reversed(shifted))
    return shifted


def act_on_index(sigma: DihedralElement, i: int) -> int:
    m = sigma.m
    if not 1 <= i <= m:
        raise IndexError(f"index {i} outside 1..{m}")
    j = (i - 1 + sigma.rot) % m + 1
    return m + 1 - j if sigma.flip else j


def elements(m: int) -> list[DihedralElement]:
    """All of D_m in canonical order: e, r, ..., r^(m-1), f, f r, ..., f r^(m-1)."""
    return [DihedralElement(m, flip, rot) for flip in (False, True) for rot in range(m)]


def iter_elements(m: int) -> Iterator[DihedralElement]:
    yield from elements(m)


def element_name(sigma: DihedralElement) -> str:
    if not sigma.flip:
        return "e" if sigma.rot == 0 else f"r^{sigma.rot}"
    return "f" if sigma.rot == 0 else f"f r^{sigma.rot}"


_POWER = re.compile(r"^(f)?\s*(?:r\^(-?\d+))?$")


def parse_element(text: str, m: int) -> DihedralElement:
    """Parse ``e``, ``r^k``, ``f r^k``, ``f`` or a word such as ``frrr``."""
    t = text.strip()
    if t == "e":
        return DihedralElement.identity(m)
    if t and set(t) <= {"f", "r"}:
        out = DihedralElement.identity(m)
        for ch in t:
            out = compose(out, DihedralElement.f(m) if ch == "f" else DihedralElement.r(m))
        return out
    match = _POWER.match(t)
    if match and (match.group(1) or match.group(2)):
        rot = int(match.group(2)) if match.group(2) else 0
        return DihedralElement(m, bool(match.group(1)), rot)
    raise ValueError(f"cannot parse dihedral element {text!r}")


def orbit(code: Sequence[int]) -> set[Code]:
    return {act_on_code(s, code) for s in elements(len(code))}
