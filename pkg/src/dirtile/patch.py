"""Finite patches of directed {m,n} tilings.

A patch stores vertices, directed edges and tiles.  Tile ``x`` lists its
sides ``d_1(x) .. d_m(x)`` in order; corner ``v_i(x)`` is the vertex shared
by ``d_(i-1)(x)`` and ``d_i(x)``.  A side ``d_i`` with code entry +1 runs
from ``v_i`` to ``v_(i+1)``, otherwise the other way.

Reflective patches are built from the Coxeter group W_{m,n}: tiles are group
elements, the tile across side i of ``w`` is ``w s_i``, and the tiles around a
corner form a coset of a dihedral subgroup of order n.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .coxeter import CoxeterParams, Key, KeySpace
from .mgon import MGonCategory


class NoPath(ValueError):
    pass


@dataclass(frozen=True)
class Vertex:
    id: int
    edges: tuple  # cyclic incident-edge order, None where the edge is outside the patch
    interior: bool


@dataclass(frozen=True)
class Edge:
    id: int
    src: int
    tgt: int
    tiles: tuple  # (tile, tile or None)
    interior: bool


@dataclass(frozen=True)
class Tile:
    id: int
    edges: tuple
    color: int
    word: tuple


@dataclass(frozen=True)
class TilingPatch:
    params: CoxeterParams
    category: MGonCategory
    vertices: tuple
    edges: tuple
    tiles: tuple
    base_tile: int = 0
    radius: int = 0
    reflective: bool = True

    @property
    def m(self) -> int:
        return self.params.m

    @property
    def n(self) -> int:
        return self.params.n

    def edge(self, i: int, x: int) -> int:
        """Edge id of d_i(x)."""
        return self.tiles[x].edges[i - 1]

    def label(self, x: int, e: int) -> int:
        """The index i with d_i(x) = e."""
        return self.tiles[x].edges.index(e) + 1

    def other_tile(self, e: int, x: int) -> Optional[int]:
        a, b = self.edges[e].tiles
        return b if a == x else a

    def neighbor(self, x: int, i: int) -> Optional[int]:
        """The tile across d_i(x), or None on the boundary."""
        return self.other_tile(self.edge(i, x), x)

    def corners(self, x: int) -> tuple:
        """(v_1(x), ..., v_m(x)); an entry is None when two sides fail to meet in one vertex."""
        out = []
        sides = self.tiles[x].edges
        for i in range(self.m):
            prev, cur = self.edges[sides[i - 1]], self.edges[sides[i]]
            common = {prev.src, prev.tgt} & {cur.src, cur.tgt}
            out.append(common.pop() if len(common) == 1 else None)
        return tuple(out)

    def tile_is_interior(self, x: int) -> bool:
        if not all(self.edges[e].interior for e in self.tiles[x].edges):
            return False
        return all(v is not None and self.vertices[v].interior for v in self.corners(x))

    def interior_tiles(self) -> list[int]:
        return [t.id for t in self.tiles if self.tile_is_interior(t.id)]

    def edge_label(self, e: int) -> int:
        """Label of e as seen from its first tile."""
        return self.label(self.edges[e].tiles[0], e)


def _bfs_ball(ks: KeySpace, radius: int) -> dict:
    dist = {ks.identity(): 0}
    frontier = [ks.identity()]
    for d in range(radius):
        nxt = []
        for key in frontier:
            for i in range(1, ks.m + 1):
                k2 = ks.reflect(key, i)
                if k2 not in dist:
                    dist[k2] = d + 1
                    nxt.append(k2)
        frontier = nxt
    return dist


def patch_keys(params: CoxeterParams, radius: int) -> set:
    """Group elements (as keys) making up the patch of the given radius.

    The ball of the given radius, plus every tile around a corner of a
    tile at distance below the radius so those tiles end up interior.
    """
    ks = KeySpace(params)
    dist = _bfs_ball(ks, radius)
    members = set(dist)
    for key, d in dist.items():
        if d < radius:
            for i in range(1, params.m + 1):
                members.update(k for k, _ in ks.vertex_walk(key, i))
    return members


def build_reflective(
    params: CoxeterParams, category: Optional[MGonCategory] = None, radius: int = 2
) -> TilingPatch:
    """Reflective directed tiling patch over ``category`` (cyclic by default).

    Labels come from the Coxeter group: the side shared by ``w`` and
    ``w s_i`` is side i of both.  Directions then follow the category code,
    which is the same for every tile, so shared sides agree.
    """
    if not isinstance(params, CoxeterParams):
        params = CoxeterParams(*params)
    if radius < 0:
        raise ValueError(f"radius must be >= 0, got {radius}")
    m = params.m
    category = category or MGonCategory.cyclic(m)
    if category.m != m:
        raise ValueError(f"category has m={category.m}, params have m={m}")
    ks = KeySpace(params)
    members = patch_keys(params, radius)

    # ids and words by breadth-first search inside the patch
    start = ks.identity()
    order: list[Key] = [start]
    words = {start: ()}
    queue = deque([start])
    while queue:
        key = queue.popleft()
        for i in range(1, m + 1):
            k2 = ks.reflect(key, i)
            if k2 in members and k2 not in words:
                words[k2] = words[key] + (i,)
                order.append(k2)
                queue.append(k2)

    edge_ids: dict = {}
    edge_tiles: list[list[int]] = []
    edge_home: list[tuple[int, int]] = []  # (tile, label) that created the edge
    tile_edges = []
    for j, key in enumerate(order):
        row = []
        for i in range(1, m + 1):
            ek = (i, min(key, ks.reflect(key, i)))
            if ek not in edge_ids:
                edge_ids[ek] = len(edge_tiles)
                edge_tiles.append([])
                edge_home.append((j, i))
            edge_tiles[edge_ids[ek]].append(j)
            row.append(edge_ids[ek])
        tile_edges.append(tuple(row))

    vertex_ids: dict = {}
    vertex_rows = []
    corners = [[0] * m for _ in order]
    for j, key in enumerate(order):
        for i in range(1, m + 1):
            walk = ks.vertex_walk(key, i)
            low = min(k for k, _ in walk)
            vk = (i, low)
            if vk not in vertex_ids:
                vertex_ids[vk] = len(vertex_rows)
                if low != key:
                    walk = ks.vertex_walk(low, i)
                incident = tuple(
                    edge_ids.get((lab, min(k, ks.reflect(k, lab)))) for k, lab in walk
                )
                interior = all(k in members for k, _ in walk)
                vertex_rows.append(Vertex(len(vertex_rows), incident, interior))
            corners[j][i - 1] = vertex_ids[vk]

    edges = []
    for e, (j, i) in enumerate(edge_home):
        a, b = corners[j][i - 1], corners[j][i % m]
        if category.code[i - 1] == -1:
            a, b = b, a
        ts = edge_tiles[e]
        edges.append(Edge(e, a, b, (ts[0], ts[1] if len(ts) > 1 else None), len(ts) == 2))

    tiles = tuple(
        Tile(j, tile_edges[j], (-1) ** len(words[k]), words[k]) for j, k in enumerate(order)
    )
    return TilingPatch(params, category, tuple(vertex_rows), tuple(edges), tiles, 0, radius, True)


def tile_keys(patch: TilingPatch) -> list[Key]:
    """Coxeter keys of a reflective patch's tiles, recomputed from the words."""
    ks = KeySpace(patch.params)
    return [ks.apply_word(t.word) for t in patch.tiles]


# --- validation ---------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    kind: str
    ids: tuple
    detail: str = ""

    def __str__(self) -> str:
        return f"{self.kind} {list(self.ids)}: {self.detail}" if self.detail else f"{self.kind} {list(self.ids)}"


@dataclass
class ValidationReport:
    violations: list = field(default_factory=list)
    euler: Optional[int] = None

    @property
    def ok(self) -> bool:
        return not self.violations

    def kinds(self) -> set[str]:
        return {v.kind for v in self.violations}

    def add(self, kind: str, ids, detail: str = "") -> None:
        self.violations.append(Violation(kind, tuple(ids), detail))

    def __bool__(self) -> bool:
        return self.ok


def _check_structure(patch: TilingPatch, report: ValidationReport) -> bool:
    nv, ne, nt = len(patch.vertices), len(patch.edges), len(patch.tiles)
    fine = True
    for e in patch.edges:
        if not (0 <= e.src < nv and 0 <= e.tgt < nv):
            report.add("dangling", [e.id], "edge endpoint outside vertex table")
            fine = False
        if any(t is not None and not 0 <= t < nt for t in e.tiles):
            report.add("dangling", [e.id], "edge tile outside tile table")
            fine = False
    for t in patch.tiles:
        if len(t.edges) != patch.m or any(not 0 <= e < ne for e in t.edges):
            report.add("dangling", [t.id], "tile edge list malformed")
            fine = False
    return fine


def validate(patch: TilingPatch, reflective: Optional[bool] = None) -> ValidationReport:
    """Check the tiling invariants; violations are returned, never raised.

    Label checks (shared sides carry equal labels, labels alternate around
    interior vertices) run when ``reflective`` is true, defaulting to the
    patch's own flag.
    """
    report = ValidationReport()
    if not _check_structure(patch, report):
        return report
    m, n = patch.m, patch.n
    code = patch.category.code
    reflective = patch.reflective if reflective is None else reflective

    # which tiles actually use each edge
    users: dict[int, list[int]] = {}
    for t in patch.tiles:
        for e in set(t.edges):
            users.setdefault(e, []).append(t.id)

    for t in patch.tiles:
        sides = t.edges
        corners = patch.corners(t.id)
        if len(set(sides)) != m or None in corners or len(set(corners)) != m:
            report.add("nonsingular", [t.id], "sides or corners not distinct")
        for i in range(1, m + 1):
            e = patch.edges[sides[i - 1]]
            v_here, v_next = corners[i - 1], corners[i % m]
            if v_here is None or v_next is None:
                report.add("presheaf", [t.id, e.id], f"side {i} does not meet its neighbours")
                continue
            want = (v_here, v_next) if code[i - 1] == 1 else (v_next, v_here)
            if (e.src, e.tgt) != want:
                report.add("presheaf", [t.id, e.id], f"side {i} runs the wrong way for the code")

    pair_count: Counter = Counter()
    for e, ts in users.items():
        for a in ts:
            for b in ts:
                if a < b:
                    pair_count[(a, b)] += 1
    for (a, b), c in sorted(pair_count.items()):
        if c > 1:
            report.add("shared-edges", [a, b], f"{c} common edges")

    broken: set[int] = set()
    for e in patch.edges:
        ts = sorted(users.get(e.id, []))
        listed = sorted(t for t in e.tiles if t is not None)
        if ts != listed:
            broken.add(e.id)
            report.add("edge-tiles", [e.id], f"listed tiles {listed}, used by {ts}")
        if e.interior and len(ts) != 2:
            report.add("edge-tiles", [e.id], f"interior edge on {len(ts)} tiles")
        if not e.interior and len(ts) != 1:
            report.add("edge-tiles", [e.id], f"boundary edge on {len(ts)} tiles")

    incident: dict[int, set] = {}
    for e in patch.edges:
        incident.setdefault(e.src, set()).add(e.id)
        incident.setdefault(e.tgt, set()).add(e.id)
    for v in patch.vertices:
        listed = [e for e in v.edges if e is not None]
        actual = incident.get(v.id, set())
        if set(listed) != actual or len(listed) != len(set(listed)):
            report.add("vertex-degree", [v.id], "cyclic edge list disagrees with edge table")
        if len(v.edges) != n or (v.interior and len(actual) != n):
            report.add("vertex-degree", [v.id], f"{len(actual)} edges, expected {n}")

    for e in patch.edges:
        a, b = e.tiles
        if b is not None and patch.tiles[a].color == patch.tiles[b].color:
            report.add("color", [a, b], "adjacent tiles share a color")

    if reflective:
        for e in patch.edges:
            a, b = e.tiles
            if e.id in broken:
                continue
            if b is not None and patch.label(a, e.id) != patch.label(b, e.id):
                report.add("reflective-labels", [e.id], "sides differ in label")
        for v in patch.vertices:
            if not v.interior or broken.intersection(v.edges):
                continue
            labels = [patch.edge_label(e) for e in v.edges if e is not None]
            pair = {labels[0], labels[1]}
            ok = (
                len(pair) == 2
                and all(labels[k] == labels[k % 2] for k in range(len(labels)))
                and (labels[0] - labels[1]) % m in (1, m - 1)
            )
            if not ok:
                report.add("alternation", [v.id], f"labels {labels}")

    chi = len(patch.vertices) - len(patch.edges) + len(patch.tiles)
    report.euler = chi
    if chi != 1:
        report.add("euler", [], f"V - E + F = {chi}, expected 1 for a disk")
    return report


# --- tracks, words, geodesics -----------------------------------------


def track_between(patch: TilingPatch, x: int, y: int) -> tuple:
    """Route (labels of crossed sides) of a shortest track from x to y."""
    if x == y:
        return ()
    prev: dict[int, tuple[int, int]] = {x: (-1, 0)}
    queue = deque([x])
    while queue:
        t = queue.popleft()
        for i in range(1, patch.m + 1):
            u = patch.neighbor(t, i)
            if u is None or u in prev:
                continue
            prev[u] = (t, i)
            if u == y:
                route = []
                while u != x:
                    u, i = prev[u]
                    route.append(i)
                return tuple(reversed(route))
            queue.append(u)
    raise NoPath(f"no track from tile {x} to tile {y} inside the patch")


def follow_route(patch: TilingPatch, x: int, route: Sequence[int]) -> Optional[int]:
    """Tile reached from x by crossing sides in route order, None if it leaves the patch."""
    for i in route:
        x = patch.neighbor(x, i)
        if x is None:
            return None
    return x


def coxeter_word(patch: TilingPatch, x: int) -> tuple:
    return patch.tiles[x].word


def opposite(patch: TilingPatch, v: int, e: int) -> Optional[int]:
    """Edge opposite e at vertex v (offset n/2 in the cyclic order)."""
    ring = patch.vertices[v].edges
    k = ring.index(e)
    return ring[(k + patch.n // 2) % patch.n]


def geodesic_through(patch: TilingPatch, e: int) -> tuple:
    """Maximal run of edges through e, passing straight across every vertex."""
    if patch.n % 2:
        raise ValueError("geodesics need even n")

    def extend(edge: int, v: int) -> list[int]:
        out = []
        seen = {edge}
        while True:
            nxt = opposite(patch, v, edge)
            if nxt is None or nxt in seen:
                return out
            out.append(nxt)
            seen.add(nxt)
            ne = patch.edges[nxt]
            v = ne.tgt if ne.src == v else ne.src
            edge = nxt

    start = patch.edges[e]
    back = extend(e, start.src)
    fwd = extend(e, start.tgt)
    return tuple(reversed(back)) + (e,) + tuple(fwd)


def geodesic_labels(patch: TilingPatch, geodesic: Sequence[int]) -> list[int]:
    return [patch.edge_label(e) for e in geodesic]
