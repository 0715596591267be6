"""Periodic patches of the Euclidean triangle tilings and their
direction assignments.

A patch is the quotient of the plane tiling by a sublattice of the
type-preserving translations; its cells are the 2m-gons of the dual
Coxeter tiling (squares for the SQUARE type).  Direction assignments
put an orientation and a length label on every edge so that each cell
boundary spells a relator.
"""

import random

import pytest

from artinflats.dihedral import is_trivial, subpresentation
from artinflats.tiling import (
    _reduce_mod,
    DirectedEdge,
    IncompatibleLatticeError,
    Patch,
    TriangleType,
    assign_edge_types,
    boundary_word,
    enumerate_consistent_directions,
    lift_directions,
    minimal_patch,
    presentation_for,
    scaled_patch,
    standard_directions,
    translation_lattice,
    validate_directions,
)

# vertices / edges / cells of the smallest buildable patch per type
PATCH_SHAPE = {
    "E333": (6, 9, 3),
    "E244": (8, 12, 4),
    "E236": (12, 18, 6),
}


def test_presentations_for_types():
    p = presentation_for(TriangleType.E333)
    assert p.generators == ("s", "t", "r")
    assert (p.m("s", "t"), p.m("t", "r"), p.m("s", "r")) == (3, 3, 3)
    p = presentation_for(TriangleType.E244)
    assert (p.m("s", "t"), p.m("t", "r"), p.m("s", "r")) == (4, 4, 2)
    p = presentation_for(TriangleType.E236)
    assert (p.m("s", "t"), p.m("t", "r"), p.m("s", "r")) == (6, 3, 2)
    sq = presentation_for(TriangleType.SQUARE)
    assert sq.generators == ("s", "t")
    assert sq.m("s", "t") == 2


def test_translation_lattices_frozen():
    assert translation_lattice(TriangleType.E333) == ((3, 3), (0, 9))
    assert translation_lattice(TriangleType.E244) == ((4, 4), (0, 8))
    assert translation_lattice(TriangleType.E236) == ((6, 6), (0, 18))
    assert translation_lattice(TriangleType.SQUARE) == ((1, 0), (0, 1))


def test_minimal_patch_shapes():
    for name, (v, e, f) in PATCH_SHAPE.items():
        patch = minimal_patch(TriangleType[name])
        assert (len(patch.positions), len(patch.edges), len(patch.cells)) == (v, e, f)
        # torus: Euler characteristic zero, every edge in two cells
        assert len(patch.positions) - len(patch.edges) + len(patch.cells) == 0
        for cells in patch.edge_cells:
            assert len(cells) == 2


def test_square_unit_lattice_refused():
    with pytest.raises(AssertionError):
        minimal_patch(TriangleType.SQUARE)
    patch = scaled_patch(TriangleType.SQUARE, 2)
    assert (len(patch.positions), len(patch.edges), len(patch.cells)) == (4, 8, 4)


def test_scaled_patch_grows_quadratically():
    p1 = minimal_patch(TriangleType.E333)
    p2 = scaled_patch(TriangleType.E333, 2)
    assert len(p2.positions) == 4 * len(p1.positions)
    assert len(p2.edges) == 4 * len(p1.edges)
    assert len(p2.cells) == 4 * len(p1.cells)


def test_incompatible_lattice_rejected():
    with pytest.raises(IncompatibleLatticeError):
        Patch(TriangleType.E333, ((1, 0), (0, 1)))
    with pytest.raises(IncompatibleLatticeError):
        Patch(TriangleType.E333, ((3, 3), (6, 6)))  # degenerate


def test_cell_degrees_and_vertex_figure(patch236):
    # every vertex of a Coxeter tiling patch meets one cell per pair class
    for v in range(len(patch236.positions)):
        incident = [patch236.edges[ei].gen for ei in patch236.vertex_edges[v]]
        assert sorted(incident) == ["r", "s", "t"]


def test_cell_lift_closes_up(patch244):
    for cell in patch244.cells:
        lift = patch244.cell_lift(cell)
        e = patch244.edges[cell.edges[-1]]
        d = e.delta_from(cell.vertices[-1])
        closed = (lift[-1][0] + d[0], lift[-1][1] + d[1])
        assert closed == lift[0]


def test_translate_vertex_by_lattice_vector(patch333):
    for v in range(len(patch333.positions)):
        assert patch333.translate_vertex(v, patch333.lattice[0]) == v
        assert patch333.translate_vertex(v, (0, 0)) == v


def test_standard_directions_validate():
    for name in PATCH_SHAPE:
        patch = minimal_patch(TriangleType[name])
        d = standard_directions(patch)
        report = validate_directions(patch, d)
        assert report.ok, report.violations
        # all labels 1: every boundary word is a bare relator word
        pres = patch.presentation
        for cell in patch.cells:
            w = boundary_word(patch, cell, d)
            assert len(w.syllables) == 2 * cell.m
            assert is_trivial(subpresentation(pres, *cell.pair), w)


def test_boundary_word_uses_labels(patch244):
    d = standard_directions(patch244)
    cell = next(c for c in patch244.cells if c.m == 4)
    ei = cell.edges[0]
    d[ei] = DirectedEdge(d[ei].source, 2)
    w = boundary_word(patch244, cell, d)
    assert any(abs(s.exponent) == 2 for s in w.syllables)


def test_enumerate_consistent_directions_frozen_counts():
    # (consistent under cell-word + long-pairing, single-direction ok)
    expected = {"E333": (18, 18), "E244": (72, 72), "E236": (36, 24)}
    for name, (raw, validated) in expected.items():
        patch = minimal_patch(TriangleType[name])
        cons = enumerate_consistent_directions(patch)
        assert len(cons) == raw
        ok = [d for d in cons if validate_directions(patch, d).ok]
        assert len(ok) == validated
        for d in ok:
            for cell in patch.cells:
                sub = subpresentation(patch.presentation, *cell.pair)
                assert is_trivial(sub, boundary_word(patch, cell, d))


def test_validate_flags_bad_cell_word(patch333):
    d = standard_directions(patch333)
    e = patch333.edges[0]
    d[0] = DirectedEdge(e.v if d[0].source == e.u else e.u, 1)
    report = validate_directions(patch333, d)
    assert not report.ok
    assert any(v.check == "cell-word" for v in report.violations)


def test_assign_edge_types_recovers_construction(patch333):
    # two adjacent boundary edges pin their classes; the third class
    # follows by elimination at the cell corners
    rng = random.Random(3)
    cell = patch333.cells[0]
    e0, e1 = (patch333.edges[cell.edges[i]] for i in (0, 1))
    seed = {e0.index: e0.gen, e1.index: e1.gen}
    got = assign_edge_types(patch333, seed, shuffle=rng.shuffle)
    assert got == {e.index: e.gen for e in patch333.edges}


def test_assign_edge_types_detects_conflict(patch333):
    # seeding two edges of one cell with the same generator is inconsistent
    cell = patch333.cells[0]
    seed = {cell.edges[0]: "s", cell.edges[1]: "s"}
    with pytest.raises(ValueError):
        assign_edge_types(patch333, seed)


def test_lift_directions_is_periodic(patch333):
    d = standard_directions(patch333)
    big = scaled_patch(TriangleType.E333, 2)
    lifted = lift_directions(big, patch333, d)
    assert validate_directions(big, lifted).ok
    for e in big.edges:
        # each fine edge carries its coarse image's label and direction
        u_down = patch333.vertex_at[_reduce_mod(patch333.lattice, big.positions[e.u])]
        coarse_edge = patch333._edge_at(u_down, e.gen, e.delta)
        points_away = lifted[e.index].source == e.u
        assert points_away == (d[coarse_edge.index].source == u_down)
        assert lifted[e.index].label == d[coarse_edge.index].label
    with pytest.raises(ValueError):
        lift_directions(patch333, big, standard_directions(big))
