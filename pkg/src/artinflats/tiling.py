"""Periodic Euclidean tilings from triangle reflection groups.

Each tiling type is generated by the three reflections in the sides of
an integer-scaled triangle, acting on Z^2 by exact affine maps (for the
hexagonal and 4.6.12 tilings the coordinates live in an oblique basis
with a 60-degree angle; nothing here ever needs the metric).  The dual
chamber graph is the 1-skeleton we work with:

  * vertices  = group elements modulo a sublattice of translations,
                realised as the orbit of a generic base point,
  * edges     = right multiplication by a generating reflection; the
                edge {w, ws} carries type s,
  * 2m-cells  = cosets of the dihedral subgroup generated by a pair of
                reflections, traversed as alternating cycles.

Because the group acts on the left and types come from right
multiplication, a translation preserves all edge types exactly when it
lies in the group itself; the *type-preserving translation lattice* is
therefore the translation subgroup, computed here by a breadth-first
enumeration and frozen by exact determinant checks.

Quotient lattices must lie inside that subgroup ("incompatible
lattice" otherwise).  All positions, directions, and cell centres are
exact integers.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache

from artinflats.presentation import ArtinPresentation, Word
from artinflats import dihedral

Vec = tuple[int, int]
# Affine map (a, b, c, d, tx, ty):  (x, y) -> (a x + b y + tx, c x + d y + ty)
Affine = tuple[int, int, int, int, int, int]

AFFINE_ID: Affine = (1, 0, 0, 1, 0, 0)


def affine_apply(f: Affine, p: Vec) -> Vec:
    a, b, c, d, tx, ty = f
    return (a * p[0] + b * p[1] + tx, c * p[0] + d * p[1] + ty)


def affine_compose(f: Affine, g: Affine) -> Affine:
    """f after g  (apply g first)."""
    a1, b1, c1, d1, tx1, ty1 = f
    a2, b2, c2, d2, tx2, ty2 = g
    return (
        a1 * a2 + b1 * c2,
        a1 * b2 + b1 * d2,
        c1 * a2 + d1 * c2,
        c1 * b2 + d1 * d2,
        a1 * tx2 + b1 * ty2 + tx1,
        c1 * tx2 + d1 * ty2 + ty1,
    )


class TriangleType(Enum):
    SQUARE = "SQUARE"
    E333 = "E333"
    E244 = "E244"
    E236 = "E236"


# Reflections in the three triangle sides, integer-scaled so that every
# map is integral.  Generator names follow the pair exponents:
#   E333: all pairs 3;  E244: m(s,t) = m(t,r) = 4, m(s,r) = 2;
#   E236: m(s,t) = 6, m(t,r) = 3, m(s,r) = 2.
_TYPE_DATA = {
    TriangleType.E333: {
        "generators": ("s", "t", "r"),
        "exponents": {("s", "t"): 3, ("t", "r"): 3, ("s", "r"): 3},
        # s: y = 0, t: x = 0, r: x + y = 3
        "maps": {
            "s": (1, 1, 0, -1, 0, 0),
            "t": (-1, 0, 1, 1, 0, 0),
            "r": (0, -1, -1, 0, 3, 3),
        },
        "base_point": (1, 1),
        "point_group_order": 6,
        "translation_det": 27,
    },
    TriangleType.E244: {
        "generators": ("s", "t", "r"),
        "exponents": {("s", "t"): 4, ("t", "r"): 4, ("s", "r"): 2},
        # t: y = 0, s: x = y, r: x + y = 4  (orthogonal coordinates)
        "maps": {
            "s": (0, 1, 1, 0, 0, 0),
            "t": (1, 0, 0, -1, 0, 0),
            "r": (0, -1, -1, 0, 4, 4),
        },
        "base_point": (2, 1),
        "point_group_order": 8,
        "translation_det": 32,
    },
    TriangleType.E236: {
        "generators": ("s", "t", "r"),
        "exponents": {("s", "t"): 6, ("t", "r"): 3, ("s", "r"): 2},
        # t: y = 0, s: x = y, r: x + y = 6  (oblique 60-degree basis)
        "maps": {
            "s": (0, 1, 1, 0, 0, 0),
            "t": (1, 1, 0, -1, 0, 0),
            "r": (0, -1, -1, 0, 6, 6),
        },
        "base_point": (3, 1),
        "point_group_order": 12,
        "translation_det": 108,
    },
    TriangleType.SQUARE: {
        "generators": ("s", "t"),
        "exponents": {("s", "t"): 2},
        "maps": None,  # built directly on Z^2
        "base_point": (0, 0),
        "point_group_order": 1,
        "translation_det": 1,
    },
}


def presentation_for(tt: TriangleType) -> ArtinPresentation:
    data = _TYPE_DATA[tt]
    return ArtinPresentation(data["generators"], data["exponents"])


def _lattice_basis(vectors: list[Vec]) -> tuple[Vec, Vec]:
    """Hermite-style canonical basis ((a, b), (0, c)) of the integer
    lattice spanned by `vectors`; a, c > 0 and 0 <= b < c."""
    vs = [v for v in vectors if v != (0, 0)]
    if not vs:
        raise ValueError("no nonzero vectors")
    # Reduce to one vector with minimal positive x (via gcd combinations)
    # and a set of x = 0 vectors.
    work = list(vs)
    pivot = None
    rest_y: list[int] = []
    while work:
        v = work.pop()
        x, y = v
        if x == 0:
            if y:
                rest_y.append(abs(y))
            continue
        if pivot is None:
            pivot = (abs(x), y if x > 0 else -y)
            continue
        # gcd step on x components
        px, py = pivot
        while x:
            q = px // x
            px, py, x, y = abs(x), (y if x > 0 else -y), px - q * x, py - q * y
            if x:
                x, y = abs(x), (y if x > 0 else -y)
        pivot = (px, py)
        if y:
            rest_y.append(abs(y))
    if pivot is None:
        raise ValueError("vectors span a rank-deficient lattice")
    from math import gcd

    c = 0
    for y in rest_y:
        c = gcd(c, y)
    if c == 0:
        raise ValueError("vectors span a rank-deficient lattice")
    a, b = pivot
    return (a, b % c), (0, c)


def _solve_in_lattice(basis: tuple[Vec, Vec], v: Vec) -> tuple[Fraction, Fraction]:
    (a1, b1), (a2, b2) = basis
    det = a1 * b2 - b1 * a2
    if det == 0:
        raise ValueError("degenerate lattice")
    alpha = Fraction(v[0] * b2 - v[1] * a2, det)
    beta = Fraction(a1 * v[1] - b1 * v[0], det)
    return alpha, beta


def _reduce_mod(basis: tuple[Vec, Vec], v: Vec) -> Vec:
    alpha, beta = _solve_in_lattice(basis, v)
    fa, fb = alpha.__floor__(), beta.__floor__()
    (a1, b1), (a2, b2) = basis
    return (v[0] - fa * a1 - fb * a2, v[1] - fa * b1 - fb * b2)


_translation_cache: dict[TriangleType, tuple[Vec, Vec]] = {}


def translation_lattice(tt: TriangleType) -> tuple[Vec, Vec]:
    """Canonical basis of the type-preserving translation lattice (the
    translation subgroup of the reflection group), found by a group
    ball search and certified by the exact index/determinant check."""
    if tt == TriangleType.SQUARE:
        return ((1, 0), (0, 1))
    if tt in _translation_cache:
        return _translation_cache[tt]
    data = _TYPE_DATA[tt]
    gens = [data["maps"][g] for g in data["generators"]]
    seen = {AFFINE_ID}
    frontier = [AFFINE_ID]
    translations: list[Vec] = []
    for _ in range(10):
        nxt = []
        for w in frontier:
            for g in gens:
                wg = affine_compose(w, g)
                if wg not in seen:
                    seen.add(wg)
                    nxt.append(wg)
                    if wg[:4] == (1, 0, 0, 1):
                        translations.append((wg[4], wg[5]))
        frontier = nxt
        if len(translations) >= 8:
            break
    basis = _lattice_basis(translations)
    det = basis[0][0] * basis[1][1]
    if det != data["translation_det"]:
        raise AssertionError(
            f"translation search for {tt} gave determinant {det}, expected {data['translation_det']}"
        )
    _translation_cache[tt] = basis
    return basis


class IncompatibleLatticeError(ValueError):
    """The quotient lattice is not made of type-preserving translations."""


@dataclass(frozen=True)
class Edge:
    index: int
    u: int  # endpoint vertex indices, u < v never guaranteed; u is the
    v: int  # BFS-discovery endpoint, delta points u -> v
    gen: str
    delta: Vec  # exact geometric step from u to v

    def other(self, vertex: int) -> int:
        return self.v if vertex == self.u else self.u

    def delta_from(self, vertex: int) -> Vec:
        if vertex == self.u:
            return self.delta
        return (-self.delta[0], -self.delta[1])

    @property
    def direction_class(self) -> Vec:
        d = self.delta
        return d if d > (0, 0) else (-d[0], -d[1])


@dataclass(frozen=True)
class Cell:
    index: int
    pair: tuple[str, str]
    m: int
    vertices: tuple[int, ...]  # 2m cycle, canonical rotation
    edges: tuple[int, ...]  # edges[i] joins vertices[i] and vertices[i+1]


class Patch:
    """A finite quotient of the tiling by a type-preserving lattice."""

    def __init__(self, triangle_type: TriangleType, lattice: tuple[Vec, Vec]):
        self.triangle_type = triangle_type
        self.lattice = (tuple(lattice[0]), tuple(lattice[1]))
        self.presentation = presentation_for(triangle_type)
        self.generators = _TYPE_DATA[triangle_type]["generators"]
        det = self.lattice[0][0] * self.lattice[1][1] - self.lattice[0][1] * self.lattice[1][0]
        if det == 0:
            raise IncompatibleLatticeError("lattice is degenerate")
        tbasis = translation_lattice(triangle_type)
        for vec in self.lattice:
            alpha, beta = _solve_in_lattice(tbasis, vec)
            if alpha.denominator != 1 or beta.denominator != 1:
                raise IncompatibleLatticeError(
                    f"incompatible lattice: {vec} is not a type-preserving translation"
                )
        self.positions: list[Vec] = []
        self.vertex_at: dict[Vec, int] = {}
        self.edges: list[Edge] = []
        self.vertex_edges: list[list[int]] = []
        self.cells: list[Cell] = []
        self.edge_cells: list[list[int]] = []
        if triangle_type == TriangleType.SQUARE:
            self._build_square()
            self._build_square_cells()
        else:
            self._build_coxeter()
            self._build_cells()
        for ei, cells in enumerate(self.edge_cells):
            if len(cells) != 2:
                raise AssertionError(f"edge {ei} lies in {len(cells)} cells")

    # -- construction ------------------------------------------------

    def _add_vertex(self, position: Vec) -> int:
        if position in self.vertex_at:
            raise AssertionError(f"vertex position collision at {position}")
        idx = len(self.positions)
        self.positions.append(position)
        self.vertex_at[position] = idx
        self.vertex_edges.append([])
        return idx

    def _add_edge(self, u: int, v: int, gen: str, delta: Vec) -> int:
        idx = len(self.edges)
        self.edges.append(Edge(idx, u, v, gen, delta))
        self.vertex_edges[u].append(idx)
        self.vertex_edges[v].append(idx)
        self.edge_cells.append([])
        return idx

    def _build_coxeter(self) -> None:
        data = _TYPE_DATA[self.triangle_type]
        maps = data["maps"]
        p0 = data["base_point"]
        reduce_t = lambda vec: _reduce_mod(self.lattice, vec)

        def key(w: Affine):
            return (w[:4], reduce_t((w[4], w[5])))

        start = AFFINE_ID
        states: dict = {key(start): 0}
        reps: list[Affine] = [start]
        self._add_vertex(reduce_t(affine_apply(start, p0)))
        queue = deque([0])
        edge_seen: dict[tuple[int, int, str], int] = {}
        while queue:
            i = queue.popleft()
            w = reps[i]
            for gname in self.generators:
                wg = affine_compose(w, maps[gname])
                k = key(wg)
                if k in states:
                    j = states[k]
                else:
                    j = self._add_vertex(reduce_t(affine_apply(wg, p0)))
                    states[k] = j
                    reps.append(wg)
                    queue.append(j)
                gp0 = affine_apply(maps[gname], p0)
                delta = (
                    w[0] * (gp0[0] - p0[0]) + w[1] * (gp0[1] - p0[1]),
                    w[2] * (gp0[0] - p0[0]) + w[3] * (gp0[1] - p0[1]),
                )
                if i == j:
                    raise AssertionError("self-loop edge; lattice too small")
                dmin = delta if i < j else (-delta[0], -delta[1])
                ekey = (min(i, j), max(i, j), gname, dmin)
                if ekey not in edge_seen:
                    edge_seen[ekey] = self._add_edge(i, j, gname, delta)
        expected = data["point_group_order"] * self._covering_index()
        if len(self.positions) != expected:
            raise AssertionError(
                f"built {len(self.positions)} vertices, expected {expected}"
            )

    def _build_square(self) -> None:
        reduce_t = lambda vec: _reduce_mod(self.lattice, vec)
        start = reduce_t((0, 0))
        queue = deque([self._add_vertex(start)])
        steps = {"s": (1, 0), "t": (0, 1)}
        edge_seen: set[tuple[int, int, str]] = set()
        while queue:
            i = queue.popleft()
            p = self.positions[i]
            for gname, dvec in steps.items():
                for sign in (1, -1):
                    q = reduce_t((p[0] + sign * dvec[0], p[1] + sign * dvec[1]))
                    if q in self.vertex_at:
                        j = self.vertex_at[q]
                    else:
                        j = self._add_vertex(q)
                        queue.append(j)
                    if i == j:
                        raise AssertionError("self-loop edge; lattice too small")
                    delta = (sign * dvec[0], sign * dvec[1])
                    dmin = delta if i < j else (-delta[0], -delta[1])
                    ekey = (min(i, j), max(i, j), gname, dmin)
                    if ekey not in edge_seen:
                        edge_seen.add(ekey)
                        self._add_edge(i, j, gname, delta)

    def _covering_index(self) -> int:
        tb = translation_lattice(self.triangle_type)
        det_t = tb[0][0] * tb[1][1] - tb[0][1] * tb[1][0]
        det_l = (
            self.lattice[0][0] * self.lattice[1][1]
            - self.lattice[0][1] * self.lattice[1][0]
        )
        index = Fraction(abs(det_l), abs(det_t))
        if index.denominator != 1:
            raise IncompatibleLatticeError("lattice index is not integral")
        return int(index)

    def _edge_at(self, vertex: int, gen: str, delta: Vec | None = None) -> Edge:
        hits = []
        for ei in self.vertex_edges[vertex]:
            e = self.edges[ei]
            if e.gen != gen:
                continue
            if delta is not None and e.delta_from(vertex) != delta:
                continue
            hits.append(e)
        if len(hits) != 1:
            raise KeyError(
                f"vertex {vertex} has {len(hits)} {gen}-edges matching delta {delta}"
            )
        return hits[0]

    def _build_cells(self) -> None:
        pairs = []
        gens = self.generators
        for i in range(len(gens)):
            for j in range(i + 1, len(gens)):
                pairs.append((gens[i], gens[j]))
        pres = self.presentation
        for pair in pairs:
            m = int(pres.m(*pair))
            assigned: set[int] = set()
            for e in list(self.edges):
                if e.gen not in pair or e.index in assigned:
                    continue
                cycle_vertices = [e.u]
                cycle_edges = [e.index]
                cur, nxt_gen = e.v, (pair[0] if e.gen == pair[1] else pair[1])
                guard = 0
                while cur != e.u:
                    step = self._walk_cell_step(cur, nxt_gen, cycle_edges[-1])
                    cycle_vertices.append(cur)
                    cycle_edges.append(step.index)
                    cur = step.other(cur)
                    nxt_gen = pair[0] if nxt_gen == pair[1] else pair[1]
                    guard += 1
                    if guard > 2 * m + 1:
                        raise AssertionError("cell cycle failed to close")
                if len(cycle_vertices) != 2 * m:
                    raise AssertionError(
                        f"{pair} cell has {len(cycle_vertices)} vertices, expected {2 * m}"
                    )
                cell_index = len(self.cells)
                verts, edges_cycle = self._canonical_cycle(cycle_vertices, cycle_edges, pair)
                self.cells.append(Cell(cell_index, pair, m, verts, edges_cycle))
                for ei in edges_cycle:
                    assigned.add(ei)
                    self.edge_cells[ei].append(cell_index)

    def _build_square_cells(self) -> None:
        """Unit squares keyed by their lower-left corner; the walk used
        for the triangle types is ambiguous here because every vertex
        carries two edges of each type."""
        for i, p in enumerate(self.positions):
            corners = [p, (p[0] + 1, p[1]), (p[0] + 1, p[1] + 1), (p[0], p[1] + 1)]
            verts = [self.vertex_at[_reduce_mod(self.lattice, q)] for q in corners]
            steps = [("s", (1, 0)), ("t", (0, 1)), ("s", (-1, 0)), ("t", (0, -1))]
            edge_cycle = [
                self._edge_at(verts[k], gen, dvec).index
                for k, (gen, dvec) in enumerate(steps)
            ]
            cell_index = len(self.cells)
            vs, es = self._canonical_cycle(verts, edge_cycle, ("s", "t"))
            self.cells.append(Cell(cell_index, ("s", "t"), 2, vs, es))
            for ei in es:
                self.edge_cells[ei].append(cell_index)

    def _walk_cell_step(self, vertex: int, gen: str, prev_edge: int) -> Edge:
        hits = [
            self.edges[ei]
            for ei in self.vertex_edges[vertex]
            if self.edges[ei].gen == gen and ei != prev_edge
        ]
        if len(hits) != 1:
            # doubled edge between the same endpoints is fine as long as
            # the generator is unambiguous at this vertex
            raise AssertionError(f"ambiguous {gen}-step at vertex {vertex}")
        return hits[0]

    def _canonical_cycle(
        self, verts: list[int], edges: list[int], pair: tuple[str, str]
    ) -> tuple[tuple[int, ...], tuple[int, ...]]:
        """Rotate/orient the cycle to start at the minimal vertex along
        its pair[0]-edge, making cell data order-independent."""
        n = len(verts)
        best = None
        for i in range(n):
            if verts[i] != min(verts):
                continue
            for direction in (1, -1):
                vs, es = [], []
                for k in range(n):
                    vi = (i + direction * k) % n
                    vs.append(verts[vi])
                    ei = (i + direction * k) % n if direction == 1 else (i + direction * k - 1) % n
                    es.append(edges[ei % n])
                if self.edges[es[0]].gen != pair[0]:
                    continue
                cand = (tuple(vs), tuple(es))
                if best is None or cand < best:
                    best = cand
        if best is None:
            raise AssertionError("no canonical rotation found")
        return best

    # -- navigation ---------------------------------------------------

    def vertex_count(self) -> int:
        return len(self.positions)

    def cells_of_pair(self, pair: tuple[str, str]) -> list[Cell]:
        return [c for c in self.cells if c.pair == tuple(sorted(pair, key=self.generators.index))]

    def maximal_m(self) -> int:
        return max(c.m for c in self.cells)

    def maximal_cells(self) -> list[Cell]:
        mm = self.maximal_m()
        return [c for c in self.cells if c.m == mm]

    def translate_vertex(self, vertex: int, vec: Vec) -> int:
        p = self.positions[vertex]
        q = _reduce_mod(self.lattice, (p[0] + vec[0], p[1] + vec[1]))
        try:
            return self.vertex_at[q]
        except KeyError:
            raise KeyError(f"translation {vec} does not preserve the vertex set")

    def translate_edge(self, edge: Edge, vec: Vec) -> Edge:
        u2 = self.translate_vertex(edge.u, vec)
        hits = []
        for ei in self.vertex_edges[u2]:
            e2 = self.edges[ei]
            if e2.delta_from(u2) == edge.delta:
                hits.append(e2)
        if len(hits) != 1:
            raise KeyError(f"translation {vec} does not act on edges")
        return hits[0]

    def translate_cell(self, cell: Cell, vec: Vec) -> Cell:
        mapped = [self.translate_edge(self.edges[ei], vec).index for ei in cell.edges]
        common = set(self.edge_cells[mapped[0]])
        for ei in mapped[1:]:
            common &= set(self.edge_cells[ei])
        if len(common) != 1:
            raise KeyError(f"translation {vec} does not act on cells")
        return self.cells[common.pop()]

    def cell_lift(self, cell: Cell) -> list[Vec]:
        """Boundary vertex positions lifted coherently to the plane,
        anchored at the stored position of the first boundary vertex."""
        pos = list(self.positions[cell.vertices[0]])
        out = [tuple(pos)]
        for k in range(len(cell.edges) - 1):
            e = self.edges[cell.edges[k]]
            d = e.delta_from(cell.vertices[k])
            pos[0] += d[0]
            pos[1] += d[1]
            out.append(tuple(pos))
        return out

    def cell_center2m(self, cell: Cell, anchor: Vec | None = None) -> Vec:
        """Sum of the lifted boundary positions (2m times the centre).
        With `anchor`, the lift starts from that plane position for
        cell.vertices[0] instead of its reduced representative."""
        lift = self.cell_lift(cell)
        if anchor is not None:
            base = self.positions[cell.vertices[0]]
            dx, dy = anchor[0] - base[0], anchor[1] - base[1]
            lift = [(x + dx, y + dy) for x, y in lift]
        return (sum(p[0] for p in lift), sum(p[1] for p in lift))

    def opposite_position(self, cell: Cell, k: int) -> int:
        return (k + cell.m) % (2 * cell.m)

    def direction_classes(self) -> dict[Vec, list[int]]:
        out: dict[Vec, list[int]] = {}
        for e in self.edges:
            out.setdefault(e.direction_class, []).append(e.index)
        return out

    def to_json(self) -> str:
        return json.dumps(
            {
                "type": self.triangle_type.value,
                "lattice": [list(self.lattice[0]), list(self.lattice[1])],
                "vertices": [list(p) for p in self.positions],
                "edges": [
                    {"u": e.u, "v": e.v, "gen": e.gen, "delta": list(e.delta)}
                    for e in self.edges
                ],
                "cells": [
                    {
                        "pair": list(c.pair),
                        "m": c.m,
                        "vertices": list(c.vertices),
                        "edges": list(c.edges),
                    }
                    for c in self.cells
                ],
            },
            indent=2,
        )

    @classmethod
    def from_json(cls, text: str) -> "Patch":
        data = json.loads(text)
        patch = build_patch(
            TriangleType(data["type"]),
            (tuple(data["lattice"][0]), tuple(data["lattice"][1])),
        )
        if [list(p) for p in patch.positions] != data["vertices"]:
            raise ValueError("serialised patch does not match its rebuild")
        return patch


def build_patch(tt: TriangleType, lattice: tuple[Vec, Vec]) -> Patch:
    return Patch(tt, lattice)


def minimal_patch(tt: TriangleType) -> Patch:
    return Patch(tt, translation_lattice(tt))


def scaled_patch(tt: TriangleType, factor: int) -> Patch:
    (a1, b1), (a2, b2) = translation_lattice(tt)
    return Patch(tt, ((factor * a1, factor * b1), (factor * a2, factor * b2)))


# ---------------------------------------------------------------------------
# Edge types from local data
# ---------------------------------------------------------------------------


def assign_edge_types(patch: Patch, seed: dict[int, str], shuffle=None) -> dict[int, str]:
    """Propagate generator types to every edge from a seed assignment.

    Within each cell the boundary alternates between two types, so the
    even and odd boundary positions form two 'same-type' classes; the
    classes meeting at a cell corner must differ.  The result does not
    depend on the worklist order (pass `shuffle` to randomise it in
    tests).  Raises ValueError on contradiction or incomplete coverage.
    """
    # union-find over edges
    parent = list(range(len(patch.edges)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[max(rx, ry)] = min(rx, ry)

    adjacent: set[tuple[int, int]] = set()
    for cell in patch.cells:
        n = len(cell.edges)
        for k in range(n):
            union(cell.edges[k], cell.edges[(k + 2) % n])
        for k in range(n):
            adjacent.add((cell.edges[k], cell.edges[(k + 1) % n]))
    colors: dict[int, str] = {}
    for ei, gen in seed.items():
        root = find(ei)
        if colors.setdefault(root, gen) != gen:
            raise ValueError("seed is inconsistent with the cell structure")
    neighbours: dict[int, set[int]] = {}
    for a, b in adjacent:
        ra, rb = find(a), find(b)
        if ra == rb:
            raise ValueError("adjacent boundary edges forced to equal type")
        neighbours.setdefault(ra, set()).add(rb)
        neighbours.setdefault(rb, set()).add(ra)
    gens = list(patch.generators)
    work = sorted(neighbours)
    if shuffle is not None:
        shuffle(work)
    changed = True
    while changed:
        changed = False
        for node in work:
            if node in colors:
                continue
            seen = {colors[nb] for nb in neighbours[node] if nb in colors}
            if len(seen) == len(gens) - 1:
                colors[node] = next(g for g in gens if g not in seen)
                changed = True
    for node in neighbours:
        for nb in neighbours[node]:
            if node in colors and nb in colors and colors[node] == colors[nb]:
                raise ValueError("propagation reached a contradiction")
    out = {}
    for e in patch.edges:
        root = find(e.index)
        if root not in colors:
            raise ValueError("seed does not determine every edge type")
        out[e.index] = colors[root]
    return out


# ---------------------------------------------------------------------------
# Direction assignments
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class DirectedEdge:
    source: int
    label: int  # k >= 1


DirectionAssignment = dict[int, DirectedEdge]


@dataclass
class Violation:
    check: str  # "cell-word" | "long-pairing" | "crossing-families"
    cell: int | None = None
    detail: str = ""


@dataclass
class ValidationReport:
    ok: bool
    violations: list[Violation]


def boundary_word(patch: Patch, cell: Cell, d: DirectionAssignment) -> Word:
    letters = []
    n = len(cell.edges)
    for k in range(n):
        e = patch.edges[cell.edges[k]]
        de = d[e.index]
        sign = 1 if de.source == cell.vertices[k] else -1
        letters.extend([(e.gen, sign)] * de.label)
    return Word.from_letters(letters)


@lru_cache(maxsize=None)
def _signed_boundary_trivial(m: int, exps: tuple[int, ...]) -> bool:
    """Triviality of a cell word given only its signed labels, since the
    generators alternate around the boundary starting with pair[0]."""
    pres = ArtinPresentation(("a", "b"), {("a", "b"): m})
    letters = []
    for k, e in enumerate(exps):
        g = "a" if k % 2 == 0 else "b"
        letters.extend([(g, 1 if e > 0 else -1)] * abs(e))
    return dihedral.is_trivial(pres, Word.from_letters(letters))


def _cell_signature(patch: Patch, cell: Cell, d: DirectionAssignment) -> tuple[int, ...]:
    sig = []
    for k, ei in enumerate(cell.edges):
        de = d[ei]
        sign = 1 if de.source == cell.vertices[k] else -1
        sig.append(sign * de.label)
    return tuple(sig)


def _cell_checks(patch: Patch, cell: Cell, d: DirectionAssignment) -> list[Violation]:
    out = []
    n = len(cell.edges)
    for k in range(n):
        ke = d[cell.edges[k]].label
        if ke >= 2:
            opp = cell.edges[patch.opposite_position(cell, k)]
            if d[opp].label != ke:
                out.append(
                    Violation(
                        "long-pairing",
                        cell.index,
                        f"label {ke} at position {k} not mirrored opposite",
                    )
                )
    if not _signed_boundary_trivial(cell.m, _cell_signature(patch, cell, d)):
        out.append(
            Violation("cell-word", cell.index, f"boundary spells {boundary_word(patch, cell, d)}")
        )
    return out


def validate_directions(patch: Patch, d: DirectionAssignment) -> ValidationReport:
    """Checks, in order: every cell boundary word is trivial in its
    dihedral group; long labels pair up on opposite edges; all long
    edges are parallel to a single direction."""
    violations: list[Violation] = []
    if sorted(d) != list(range(len(patch.edges))):
        raise ValueError("assignment must cover exactly the patch edges")
    for cell in patch.cells:
        violations.extend(_cell_checks(patch, cell, d))
    long_classes = {
        patch.edges[ei].direction_class for ei, de in d.items() if de.label >= 2
    }
    if len(long_classes) > 1:
        violations.append(
            Violation("crossing-families", None, f"long edges in {len(long_classes)} directions")
        )
    return ValidationReport(not violations, violations)


def standard_directions(patch: Patch) -> DirectionAssignment:
    """The all-labels-1 assignment directing every edge along a generic
    positive functional, so each cell boundary is a relator template."""
    d: DirectionAssignment = {}
    for e in patch.edges:
        # delta is never (0, 0); direct along lexicographically positive
        source = e.u if e.delta > (0, 0) else e.v
        d[e.index] = DirectedEdge(source, 1)
    return d


def enumerate_consistent_directions(
    patch: Patch, labels: tuple[int, ...] = (1, 2)
) -> list[DirectionAssignment]:
    """All assignments passing the cell-word and long-pairing checks
    (the single-direction check is left to the caller, so that both the
    passing and the crossing-family assignments can be inspected).
    Deterministic backtracking, cells completed as early as possible.
    """
    cells_by_size = sorted(patch.cells, key=lambda c: (c.m, c.index))
    edge_order: list[int] = []
    seen: set[int] = set()
    for cell in cells_by_size:
        for ei in cell.edges:
            if ei not in seen:
                seen.add(ei)
                edge_order.append(ei)
    for e in patch.edges:
        if e.index not in seen:
            edge_order.append(e.index)
    completes: dict[int, list[Cell]] = {ei: [] for ei in edge_order}
    rank = {ei: k for k, ei in enumerate(edge_order)}
    for cell in patch.cells:
        last = max(cell.edges, key=lambda ei: rank[ei])
        completes[last].append(cell)
    # map edge -> [(opposite edge, owning cell)] for the early pairing cut
    opposites: dict[int, list[int]] = {ei: [] for ei in edge_order}
    for cell in patch.cells:
        for k, ei in enumerate(cell.edges):
            opposites[ei].append(cell.edges[patch.opposite_position(cell, k)])
    results: list[DirectionAssignment] = []
    assignment: DirectionAssignment = {}

    def admissible_so_far(ei: int) -> bool:
        label = assignment[ei].label
        for opp in opposites[ei]:
            if opp in assignment:
                lo = assignment[opp].label
                if lo != label and (lo >= 2 or label >= 2):
                    return False
        return all(not _cell_checks(patch, cell, assignment) for cell in completes[ei])

    def backtrack(k: int) -> None:
        if k == len(edge_order):
            results.append(dict(assignment))
            return
        ei = edge_order[k]
        e = patch.edges[ei]
        for label in labels:
            for source in (min(e.u, e.v), max(e.u, e.v)):
                assignment[ei] = DirectedEdge(source, label)
                if admissible_so_far(ei):
                    backtrack(k + 1)
        del assignment[ei]

    backtrack(0)
    return results


def lift_directions(
    fine: Patch, coarse: Patch, d_coarse: DirectionAssignment
) -> DirectionAssignment:
    """Pull back an assignment along the covering fine -> coarse
    (the fine lattice must be a sublattice of the coarse one)."""
    if fine.triangle_type != coarse.triangle_type:
        raise ValueError("patches have different tiling types")
    for vec in fine.lattice:
        alpha, beta = _solve_in_lattice(coarse.lattice, vec)
        if alpha.denominator != 1 or beta.denominator != 1:
            raise ValueError("fine lattice is not a sublattice of the coarse one")

    def vmap(i: int) -> int:
        return coarse.vertex_at[_reduce_mod(coarse.lattice, fine.positions[i])]

    out: DirectionAssignment = {}
    for e in fine.edges:
        cu = vmap(e.u)
        ce = coarse._edge_at(cu, e.gen, e.delta)
        de = d_coarse[ce.index]
        source = e.u if de.source == cu else e.v
        if de.source not in (ce.u, ce.v):
            raise ValueError("coarse assignment references a foreign vertex")
        out[e.index] = DirectedEdge(source, de.label)
    return out
