"""Admissible polarisations and their rigidity.

A polarisation picks a long diagonal in every maximal cell; admissible
means every vertex lies on exactly one chosen diagonal.  The rigidity
check finds a lattice translation preserving the polarisation whose
axis crosses only edges of one parallel class.  Counts here are frozen
from exhaustive runs; the naive enumerator provides the independent
cross-check at the scales where it is feasible.
"""

import random

import pytest

from artinflats.polarisation import (
    RigidityError,
    case0_instances,
    check_rigidity,
    coverage,
    determined_values,
    diagonal_vertices,
    enumerate_admissible,
    induced,
    is_admissible,
    naive_enumerate_admissible,
    polarisation_from_json,
    polarisation_to_json,
    rigidity_witnesses,
)
from artinflats.tiling import (
    TriangleType,
    enumerate_consistent_directions,
    minimal_patch,
    scaled_patch,
    standard_directions,
    validate_directions,
)

ADMISSIBLE_X1 = {"E333": 3, "E244": 8, "E236": 6}
ADMISSIBLE_X2 = {"E333": 9, "E244": 36, "E236": 18}
# witness multiplicities per polarisation, in enumeration order
WITNESS_COUNTS_X1 = {
    "E333": [2, 2, 2],
    "E244": [2, 1, 1, 2, 1, 2, 2, 1],
    "E236": [2, 2, 2, 2, 2, 2],
}


def test_enumerate_admissible_frozen_and_naive_x1():
    for name, count in ADMISSIBLE_X1.items():
        patch = minimal_patch(TriangleType[name])
        smart = enumerate_admissible(patch)
        naive = naive_enumerate_admissible(patch)
        assert len(smart) == count
        assert sorted(map(sorted, (l.items() for l in smart))) == sorted(
            map(sorted, (l.items() for l in naive))
        )
        for l in smart:
            assert is_admissible(patch, l)
            assert all(n == 1 for n in coverage(patch, l).values())


def test_enumerate_admissible_frozen_x2():
    for name, count in ADMISSIBLE_X2.items():
        patch = scaled_patch(TriangleType[name], 2)
        assert len(enumerate_admissible(patch)) == count


def test_naive_agrees_at_x2_e333():
    patch = scaled_patch(TriangleType.E333, 2)
    smart = enumerate_admissible(patch)
    naive = naive_enumerate_admissible(patch)
    assert sorted(map(sorted, (l.items() for l in smart))) == sorted(
        map(sorted, (l.items() for l in naive))
    )


def test_coverage_counts_vertices(patch333):
    l = enumerate_admissible(patch333)[0]
    cov = coverage(patch333, l)
    assert set(cov) == set(range(len(patch333.positions)))
    assert all(n == 1 for n in cov.values())
    # rotating one diagonal doubles up somewhere and leaves a hole
    broken = dict(l)
    ci = sorted(broken)[0]
    broken[ci] = (broken[ci] + 1) % patch333.cells[ci].m
    cov = coverage(patch333, broken)
    assert 0 in cov.values() and 2 in cov.values()
    assert not is_admissible(patch333, broken)


def test_induced_from_consistent_directions_is_admissible(patch244):
    for d in enumerate_consistent_directions(patch244):
        if not validate_directions(patch244, d).ok:
            continue
        l = induced(patch244, d)
        assert is_admissible(patch244, l)


def test_induced_rejects_inconsistent(patch333):
    d = standard_directions(patch333)
    first = d[0]
    e = patch333.edges[0]
    d[0] = type(first)(e.v if first.source == e.u else e.u, first.label)
    with pytest.raises(ValueError):
        induced(patch333, d)


def test_rigidity_witness_counts_frozen():
    for name, counts in WITNESS_COUNTS_X1.items():
        patch = minimal_patch(TriangleType[name])
        got = [len(rigidity_witnesses(patch, l)) for l in enumerate_admissible(patch)]
        assert got == counts


def test_check_rigidity_returns_preserving_translation():
    for name in ADMISSIBLE_X1:
        patch = minimal_patch(TriangleType[name])
        for l in enumerate_admissible(patch):
            w = check_rigidity(patch, l)
            # rho maps chosen diagonals to chosen diagonals and is not
            # parallel to the edge class it pairs with
            ex, ey = w.edge_class
            assert ex * w.rho[1] != ey * w.rho[0]
            for ci, dpos in l.items():
                cell = patch.cells[ci]
                a, b = diagonal_vertices(cell, dpos)
                ta, tb = (patch.translate_vertex(v, w.rho) for v in (a, b))
                hit = [
                    (cj, dj)
                    for cj, dj in l.items()
                    if set(diagonal_vertices(patch.cells[cj], dj)) == {ta, tb}
                ]
                assert len(hit) == 1


def test_check_rigidity_requires_admissible(patch333):
    l = enumerate_admissible(patch333)[0]
    broken = dict(l)
    cells = sorted(broken)
    broken[cells[0]] = (broken[cells[0]] + 1) % patch333.cells[cells[0]].m
    assert not is_admissible(patch333, broken)
    with pytest.raises(ValueError):
        check_rigidity(patch333, broken)


def test_determined_values_unique_completion():
    # the maximal cells' diagonals force everything else
    for name in ("E244", "E236"):
        patch = minimal_patch(TriangleType[name])
        maximal = {c.index for c in patch.maximal_cells()}
        assert maximal != {c.index for c in patch.cells}
        for l in enumerate_admissible(patch):
            partial = {ci: d for ci, d in l.items() if ci in maximal}
            assert determined_values(patch, partial) == l


def test_determined_values_rejects_wrong_domain(patch244):
    l = enumerate_admissible(patch244)[0]
    with pytest.raises(ValueError):
        determined_values(patch244, dict(l))  # non-maximal cells included


def test_determined_values_contradiction_is_none():
    # perturbing one maximal choice never sneaks back to the original;
    # on E244 (two interacting octagons) some perturbations have no
    # completion at all.  The lone 12-gon of the smallest E236 patch
    # completes for every choice by rotational symmetry, so no
    # contradiction can be forced there.
    for name, expect_none in (("E244", True), ("E236", False)):
        patch = minimal_patch(TriangleType[name])
        maximal = {c.index for c in patch.maximal_cells()}
        hits = 0
        for l in enumerate_admissible(patch):
            partial = {ci: d for ci, d in l.items() if ci in maximal}
            for ci in sorted(partial):
                for shift in range(1, patch.cells[ci].m):
                    tweaked = dict(partial)
                    tweaked[ci] = (partial[ci] + shift) % patch.cells[ci].m
                    out = determined_values(patch, tweaked)
                    if out is None:
                        hits += 1
                    else:
                        assert out != l
        assert (hits > 0) == expect_none, name


def test_case0_configuration_absent_from_admissible():
    patch = scaled_patch(TriangleType.E236, 2)
    for l in enumerate_admissible(patch):
        assert case0_instances(patch, l) == []


def test_case0_fires_on_random_assignments():
    patch = scaled_patch(TriangleType.E236, 2)
    hexes = [c for c in patch.cells if c.m == 6]
    rng = random.Random(201)
    fired = 0
    for _ in range(400):
        l = {c.index: rng.randrange(c.m) for c in hexes}
        fired += bool(case0_instances(patch, l))
    # the detector is not vacuous at this scale
    assert fired > 100


def test_polarisation_json_roundtrip(patch236):
    for l in enumerate_admissible(patch236):
        text = polarisation_to_json(patch236, l)
        assert polarisation_from_json(patch236, text) == l
