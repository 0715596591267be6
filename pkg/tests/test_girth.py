"""The syntactic classifier for trivial minimal-girth boundary words.

A nontrivial word with fewer than 2m syllables bounds no van Kampen
diagram, and at exactly 2m syllables the trivial words form a single
rotated one-parameter family.  The classifier is validated here against
the Garside oracle over the full m = 3 sweep; the larger sweeps run in
test_acceptance.
"""

import itertools
import random

import pytest

from artinflats import girth
from artinflats.dihedral import is_trivial
from artinflats.girth import (
    GirthPreconditionError,
    classify,
    classify_commutator,
    minimum_boundary_syllables,
    template_word,
)
from artinflats.presentation import ArtinPresentation, Word


def rotate(word, r):
    syls = word.syllables
    return Word.from_letters(
        (s.generator, 1 if s.exponent > 0 else -1)
        for s in syls[r:] + syls[:r]
        for _ in range(abs(s.exponent))
    )


def test_template_word_shapes():
    # m odd: x^k then alternating, closing with inverses
    assert str(template_word(3, 2)) == "s2 t1 s1 t-2 s-1 t-1"
    assert str(template_word(3, 1)) == "s1 t1 s1 t-1 s-1 t-1"
    # m even: the two k-powers sit on the same generator
    assert str(template_word(4, 3)) == "s3 t1 s1 t1 s-3 t-1 s-1 t-1"
    assert str(template_word(4, -2, swap=True)) == "t-2 s1 t1 s1 t2 s-1 t-1 s-1"


def test_templates_are_trivial():
    for m in (3, 4, 5):
        pres = ArtinPresentation(("s", "t"), {("s", "t"): m})
        for k in (-3, -1, 1, 2):
            for swap in (False, True):
                assert is_trivial(pres, template_word(m, k, swap))


def test_classify_recovers_rotation_and_k():
    for m in (3, 4):
        for k in (-2, 1, 3):
            for swap in (False, True):
                base = template_word(m, k, swap)
                for r in range(2 * m):
                    w = rotate(base, r)
                    if len(w.syllables) != 2 * m:
                        continue  # rotation through the k-power merged syllables
                    hit = classify(m, w)
                    assert hit is not None, (m, k, swap, r)
                    back = rotate(w, hit.rotation)
                    assert back == template_word(m, hit.k, hit.swap)


def test_classify_rejects_perturbations():
    rng = random.Random(9)
    m = 3
    pres = ArtinPresentation(("s", "t"), {("s", "t"): m})
    for _ in range(100):
        exps = [rng.choice([-2, -1, 1, 2]) for _ in range(2 * m)]
        word = Word.from_letters(
            ("st"[i % 2], 1 if e > 0 else -1) for i, e in enumerate(exps) for _ in range(abs(e))
        )
        hit = classify(m, word)
        assert (hit is not None) == is_trivial(pres, word)


def test_classify_shape_preconditions():
    with pytest.raises(GirthPreconditionError):
        classify(3, Word.parse("s1 t1 s1 t1"))  # wrong syllable count
    with pytest.raises(GirthPreconditionError):
        classify(3, Word.parse("s1 t1 r1 s1 t1 r1"))  # third generator
    with pytest.raises(GirthPreconditionError):
        classify(2, Word.parse("s1 t1 s-1 t-1"))


def test_classify_commutator():
    assert classify_commutator(Word.parse("s2 t-1 s-2 t1")) is not None
    assert classify_commutator(Word.parse("t1 s2 t-1 s-2")) is not None
    assert classify_commutator(Word.parse("s2 t-1 s-2 t-1")) is None
    hit = classify_commutator(Word.parse("t3 s1 t-3 s-1"))
    assert (hit.k, hit.l, hit.swap) == (3, 1, True)


def test_full_sweep_m3():
    """Every alternating 6-syllable word with exponents in {+-1, +-2}:
    classifier and oracle agree, and exactly 18 words are trivial."""
    m = 3
    pres = ArtinPresentation(("s", "t"), {("s", "t"): m})
    trivial = 0
    for exps in itertools.product([-2, -1, 1, 2], repeat=2 * m):
        word = Word.from_letters(
            ("st"[i % 2], 1 if e > 0 else -1) for i, e in enumerate(exps) for _ in range(abs(e))
        )
        matched = classify(m, word) is not None
        oracle = is_trivial(pres, word)
        assert matched == oracle, word
        trivial += oracle
    assert trivial == 18


def test_minimum_boundary_syllables():
    assert [minimum_boundary_syllables(m) for m in (2, 3, 4, 5)] == [4, 6, 8, 10]
