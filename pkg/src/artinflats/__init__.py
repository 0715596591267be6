"""Exact computational toolkit for two-dimensional Artin groups.

Subpackages cover syllable words and presentations, dihedral Garside
normal forms with a breadth-first cross-check oracle, a syntactic
classifier for the cyclic words that bound discs of minimal area,
Euclidean triangle-group tilings with edge directions and
polarisations, a certificate-producing prover for the word problem,
and the construction/verification of commuting pairs read off flat
planes.
"""

from artinflats.presentation import (
    INFINITY,
    ArtinPresentation,
    Syllable,
    Word,
)

__all__ = [
    "INFINITY",
    "ArtinPresentation",
    "Syllable",
    "Word",
]

__version__ = "0.1.0"
