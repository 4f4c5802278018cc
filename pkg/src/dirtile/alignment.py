"""Edge reversals on patches: re-alignment, reflection schemes and symmetries.

An edge reversal assigns +1 or -1 to every edge; ``tau(x)`` is the tuple of
values on the sides ``d_1(x) .. d_m(x)``.  Reversing the -1 edges of a patch
over C and relabelling each tile by a dihedral element turns it into a patch
over C' exactly when every ``tau(x)`` lies in ``delta^C . orbit(delta^C')``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, replace
from typing import Iterable, Optional, Sequence

from .dihedral import (
    Code,
    DihedralElement,
    act_on_code,
    act_on_index,
    elements,
    format_signs,
    make_code,
    multiply,
    ones,
    product,
    sign,
)
from .mgon import MGonCategory
from .patch import TilingPatch
from .reversal_closed import ReversalClosedSubset, is_reversal_closed


class NotRealizable(ValueError):
    pass


class InvalidScheme(ValueError):
    pass


class SymmetryError(ValueError):
    pass


@dataclass(frozen=True)
class EdgeReversal:
    patch: TilingPatch
    values: tuple

    def __post_init__(self):
        values = tuple(int(v) for v in self.values)
        if len(values) != len(self.patch.edges):
            raise ValueError(f"{len(values)} values for {len(self.patch.edges)} edges")
        if any(v not in (1, -1) for v in values):
            raise ValueError("edge reversal values must be +1 or -1")
        object.__setattr__(self, "values", values)

    def __getitem__(self, e: int) -> int:
        return self.values[e]

    def at(self, x: int) -> Code:
        """tau(x): values on d_1(x), ..., d_m(x)."""
        return tuple(self.values[e] for e in self.patch.tiles[x].edges)

    @classmethod
    def identity(cls, patch: TilingPatch) -> EdgeReversal:
        return cls(patch, (1,) * len(patch.edges))

    @classmethod
    def from_tile_codes(cls, patch: TilingPatch, codes: Sequence[Code]) -> EdgeReversal:
        """Edge values from per-tile tuples; shared sides must agree."""
        values: list[Optional[int]] = [None] * len(patch.edges)
        for t in patch.tiles:
            for e, v in zip(t.edges, codes[t.id]):
                if values[e] is None:
                    values[e] = v
                elif values[e] != v:
                    raise NotRealizable(f"tiles disagree on edge {e}")
        return cls(patch, tuple(values))

    @classmethod
    def constant(cls, patch: TilingPatch, code: Sequence[int]) -> EdgeReversal:
        """tau(x) = code for every tile (needs equal labels on shared sides)."""
        code = make_code(code)
        return cls.from_tile_codes(patch, [code] * len(patch.tiles))


# --- re-alignment -------------------------------------------------------


def _relabel_ok(p: DihedralElement, flipped: Code, target: Code) -> bool:
    s = sign(p)
    return all(
        target[i - 1] == s * flipped[act_on_index(p, i) - 1] for i in range(1, p.m + 1)
    )


def choose_relabel(source: Code, tau_x: Code, target: Code) -> Optional[DihedralElement]:
    """Least p (index action) with new side i = old side p(i) giving the target code."""
    flipped = multiply(source, tau_x)
    for p in elements(len(source)):
        if _relabel_ok(p, flipped, target):
            return p
    return None


def apply_reversal(
    patch: TilingPatch, tau: EdgeReversal, target: MGonCategory
) -> tuple[TilingPatch, dict]:
    """Reverse the -1 edges and relabel each tile so it becomes a target tile.

    Returns the new patch and, per tile, the element p used for the
    relabelling ``d_i'(x) = d_(p(i))(x)``.
    """
    if target.m != patch.m:
        raise ValueError(f"target has m={target.m}, patch has m={patch.m}")
    source = patch.category.code
    chosen = {}
    tiles = []
    for t in patch.tiles:
        p = choose_relabel(source, tau.at(t.id), target.code)
        if p is None:
            raise NotRealizable(
                f"tile {t.id}: tau(x)={format_signs(tau.at(t.id))} cannot turn "
                f"{format_signs(source)} into {format_signs(target.code)}"
            )
        chosen[t.id] = p
        sides = tuple(t.edges[act_on_index(p, i) - 1] for i in range(1, patch.m + 1))
        tiles.append(replace(t, edges=sides))
    edges = tuple(
        e if tau[e.id] == 1 else replace(e, src=e.tgt, tgt=e.src) for e in patch.edges
    )
    out = replace(patch, category=target, edges=edges, tiles=tuple(tiles))
    out = replace(out, reflective=labels_match(out))
    return out, chosen


def labels_match(patch: TilingPatch) -> bool:
    for e in patch.edges:
        a, b = e.tiles
        if b is not None and patch.label(a, e.id) != patch.label(b, e.id):
            return False
    return True


# --- reflection schemes ------------------------------------------------


@dataclass(frozen=True)
class ReflectionScheme:
    base: MGonCategory
    target: MGonCategory
    n: int
    gamma: ReversalClosedSubset
    phi: tuple

    def __post_init__(self):
        object.__setattr__(self, "phi", tuple(make_code(c) for c in self.phi))

    @property
    def m(self) -> int:
        return self.base.m

    def problems(self) -> list[str]:
        out = []
        m = self.m
        if self.target.m != m or self.gamma.m != m or len(self.phi) != m:
            return [f"sizes disagree: base m={m}, target m={self.target.m}, "
                    f"gamma m={self.gamma.m}, {len(self.phi)} phi values"]
        if self.n % 4:
            out.append(f"n={self.n} is not divisible by 4")
        if self.gamma.delta != self.target.code:
            out.append("gamma was built for a different code than the target")
        if not is_reversal_closed(self.target.code, self.gamma.elements):
            out.append("gamma is not reversal-closed for the target code")
        allowed = gamma_codes(self.target.code, self.gamma.elements)
        for i, c in enumerate(self.phi, 1):
            if len(c) != m:
                out.append(f"phi({i}) has length {len(c)}")
                continue
            if c not in allowed:
                out.append(f"phi({i})={format_signs(c)} is outside the gamma-restricted set")
            if c[i - 1] != 1:
                out.append(f"phi({i}) has -1 in position {i}")
        return out

    def check(self) -> None:
        bad = self.problems()
        if bad:
            raise InvalidScheme("; ".join(bad))

    def phi_of_word(self, word: Iterable[int]) -> Code:
        return product((self.phi[i - 1] for i in word), self.m)


def gamma_codes(target: Code, gamma: Iterable[DihedralElement]) -> set:
    return {multiply(target, act_on_code(s, target)) for s in gamma}


def generate_from_scheme(
    patch: TilingPatch, scheme: ReflectionScheme, sigma0: DihedralElement
) -> EdgeReversal:
    """The edge reversal with tau(base) = delta^C . sigma0(delta^C') that
    changes by phi(s_i) across every side labelled i."""
    scheme.check()
    if sigma0 not in scheme.gamma.elements:
        raise InvalidScheme(f"sigma0={sigma0} is not in gamma")
    if patch.category != scheme.base:
        raise InvalidScheme("patch category differs from the scheme's base")
    if patch.n != scheme.n:
        raise InvalidScheme(f"patch has n={patch.n}, scheme has n={scheme.n}")
    start = multiply(scheme.base.code, act_on_code(sigma0, scheme.target.code))
    codes = [multiply(start, scheme.phi_of_word(t.word)) for t in patch.tiles]
    return EdgeReversal.from_tile_codes(patch, codes)


def tau_along(
    patch: TilingPatch, scheme: ReflectionScheme, sigma0: DihedralElement, route: Sequence[int]
) -> Code:
    """tau at the end of a route from the base tile, computed from phi alone."""
    start = multiply(scheme.base.code, act_on_code(sigma0, scheme.target.code))
    return multiply(start, scheme.phi_of_word(route))


def random_track(patch: TilingPatch, x: int, rng: random.Random) -> tuple:
    """Route of a track from the base tile to x via a random intermediate tile.

    Both legs are shortest tracks whose ties are broken at random, so the
    result is generally not the stored word.
    """
    z = rng.randrange(len(patch.tiles))
    return _random_shortest(patch, patch.base_tile, z, rng) + _random_shortest(patch, z, x, rng)


def _random_shortest(patch: TilingPatch, x: int, y: int, rng: random.Random) -> tuple:
    dist = {y: 0}
    frontier = [y]
    while frontier and x not in dist:
        nxt = []
        for t in frontier:
            for i in range(1, patch.m + 1):
                u = patch.neighbor(t, i)
                if u is not None and u not in dist:
                    dist[u] = dist[t] + 1
                    nxt.append(u)
        frontier = nxt
    route = []
    cur = x
    while cur != y:
        steps = [
            (i, u)
            for i in range(1, patch.m + 1)
            if (u := patch.neighbor(cur, i)) is not None and dist.get(u) == dist[cur] - 1
        ]
        i, cur = rng.choice(steps)
        route.append(i)
    return tuple(route)


def check_phi_generated(
    patch: TilingPatch, tau: EdgeReversal, scheme: ReflectionScheme, tiles: Optional[Iterable[int]] = None
) -> bool:
    """tau(neighbour across side i) == phi(s_i) . tau(x) at every interior tile."""
    return not phi_failures(patch, tau, scheme, tiles)


def phi_failures(
    patch: TilingPatch, tau: EdgeReversal, scheme: ReflectionScheme, tiles: Optional[Iterable[int]] = None
) -> list[tuple[int, int]]:
    tiles = patch.interior_tiles() if tiles is None else tiles
    bad = []
    for x in tiles:
        here = tau.at(x)
        for i in range(1, patch.m + 1):
            y = patch.neighbor(x, i)
            if y is not None and tau.at(y) != multiply(scheme.phi[i - 1], here):
                bad.append((x, i))
    return bad


@dataclass(frozen=True)
class SchemeInference:
    phi: Optional[tuple]
    conflict: Optional[tuple] = None  # (label, tile, tile) giving different values
    missing: tuple = ()

    @property
    def ok(self) -> bool:
        return self.phi is not None


def infer_scheme(patch: TilingPatch, tau: EdgeReversal) -> SchemeInference:
    """Read phi(s_i) = tau(x s_i) . tau(x) off every adjacency and check they agree."""
    seen: dict[int, tuple[Code, int]] = {}
    for x in range(len(patch.tiles)):
        for i in range(1, patch.m + 1):
            y = patch.neighbor(x, i)
            if y is None:
                continue
            value = multiply(tau.at(y), tau.at(x))
            if i not in seen:
                seen[i] = (value, x)
            elif seen[i][0] != value:
                return SchemeInference(None, (i, seen[i][1], x))
    missing = tuple(i for i in range(1, patch.m + 1) if i not in seen)
    if missing:
        return SchemeInference(None, None, missing)
    return SchemeInference(tuple(seen[i][0] for i in range(1, patch.m + 1)))


def scheme_from_inference(
    inference: SchemeInference, base: MGonCategory, target: MGonCategory, n: int, gamma: ReversalClosedSubset
) -> ReflectionScheme:
    if not inference.ok:
        raise InvalidScheme(f"no consistent scheme: conflict {inference.conflict}, missing {inference.missing}")
    scheme = ReflectionScheme(base, target, n, gamma, inference.phi)
    scheme.check()
    return scheme


def relations_hold(phi: Sequence[Code], n: int) -> bool:
    """Whether s_i -> phi(i) respects the relations of W_{m,n}.

    In an elementary abelian 2-group (phi_i phi_j)^k is trivial for even k and
    equals phi_i phi_j for odd k, so only adjacent pairs with n/2 odd matter.
    """
    m = len(phi)
    if (n // 2) % 2 == 0:
        return True
    return all(phi[i] == phi[(i + 1) % m] for i in range(m))


def search_schemes(m: int, n: int, fixed_diagonal: bool = True) -> list[tuple]:
    """Every phi tuple compatible with the Coxeter relations.

    With ``fixed_diagonal`` only tuples where phi(i) has +1 in position i are
    tried, as a reflective patch forces.
    """
    pool = list(itertools.product((1, -1), repeat=m))
    per_slot = [[c for c in pool if not fixed_diagonal or c[i] == 1] for i in range(m)]
    return [phi for phi in itertools.product(*per_slot) if relations_hold(phi, n)]


# --- symmetries ---------------------------------------------------------


def reflect_automorphism(patch: TilingPatch, geodesic: Sequence[int]) -> dict:
    """Partial tile map reflecting across a geodesic.

    Tiles on either side of each geodesic edge are swapped, and the map is
    extended by ``gamma(x s_j) = gamma(x) s_j`` as far as the patch allows.
    """
    image: dict[int, int] = {}
    queue = []

    def pair(a: int, b: int) -> None:
        for u, w in ((a, b), (b, a)):
            if u in image:
                if image[u] != w:
                    raise SymmetryError(f"tile {u} would map to both {image[u]} and {w}")
            else:
                image[u] = w
                queue.append(u)

    for e in geodesic:
        a, b = patch.edges[e].tiles
        if b is None:
            continue
        if patch.label(a, e) != patch.label(b, e):
            raise SymmetryError(f"edge {e} has different labels in its two tiles")
        pair(a, b)
    if not image:
        raise SymmetryError("geodesic has no interior edge")
    while queue:
        x = queue.pop()
        y = image[x]
        for j in range(1, patch.m + 1):
            u, w = patch.neighbor(x, j), patch.neighbor(y, j)
            if u is not None and w is not None:
                pair(u, w)
    return image


def check_psi_reflective(patch: TilingPatch, tau: EdgeReversal, gamma: dict, psi: Sequence[int]) -> bool:
    """tau(gamma(x)) == psi . tau(x) over the map's domain."""
    psi = make_code(psi)
    return all(tau.at(y) == multiply(psi, tau.at(x)) for x, y in gamma.items())


def infer_psi(tau: EdgeReversal, gamma: dict) -> Code:
    if not gamma:
        raise SymmetryError("empty automorphism")
    x = min(gamma)
    return multiply(tau.at(gamma[x]), tau.at(x))


def compose_maps(maps: Sequence[dict]) -> dict:
    """Apply maps[0] first, then maps[1], ...; defined where every step is."""
    out = {}
    for x in maps[0]:
        y = x
        for g in maps:
            if y not in g:
                break
            y = g[y]
        else:
            out[x] = y
    return out


def composite_symmetry(patch: TilingPatch, tau: EdgeReversal, geodesics: Sequence[Sequence[int]]) -> Code:
    """psi for the composite of reflections across ``geodesics`` (first one first)."""
    maps = [reflect_automorphism(patch, g) for g in geodesics]
    psi = ones(patch.m)
    for g in maps:
        part = infer_psi(tau, g)
        if not check_psi_reflective(patch, tau, g, part):
            raise SymmetryError("a reflection does not change tau by a single code")
        psi = multiply(psi, part)
    total = compose_maps(maps)
    if not total:
        raise SymmetryError("the reflections have no common domain")
    if not check_psi_reflective(patch, tau, total, psi):
        raise SymmetryError("the composite does not change tau by the product code")
    return psi
