"""Optical elements acting on spatial modes, plus their 2x2 matrix forms.

Three devices generate the whole parity algebra used here:

    PF      half-plane pi phase step: psi(x) -> sgn(x) psi(x)
    SF      spatial flip:             psi(x) -> psi(-x)
    PR(t)   half-plane phase step of t radians applied to x > 0

On the ordered basis (even, odd) of the reference subspace these act as

    PF -> sigma_x = [[0, 1], [1, 0]]
    SF -> sigma_z = [[1, 0], [0, -1]]
    PR(t) -> exp(i t/2) [[cos(t/2), i sin(t/2)], [i sin(t/2), cos(t/2)]]

i.e. PR(t) rotates the pseudo-spin sphere about the s1 axis by t.  The
matrices equal the literal continuous action, global phase included, so
words of elements can be checked against plain matrix products.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Sequence

import numpy as np

from .errors import DomainError
from .modes import (
    ParityQubit,
    ReferenceBasis,
    SpatialMode,
    phase_aligned_distance,
    qubit_extract,
)


@dataclass(frozen=True)
class Element:
    """One element of a word: kind in {"PF", "SF", "PR", "I"}, theta for PR."""

    kind: str
    theta: float = 0.0


PF = Element("PF")
SF = Element("SF")
IDENTITY = Element("I")


def pr(theta: float) -> Element:
    return Element("PR", float(theta))


def apply_pf(mode: SpatialMode) -> SpatialMode:
    """Multiply the x > 0 half-plane by -1... equivalently by sgn(x) overall.

    Multiplication by +-1 is exact, so applying PF twice returns the input
    samples bit for bit.
    """
    return SpatialMode(mode.grid, mode.amplitudes * mode.grid.sign)


def apply_sf(mode: SpatialMode) -> SpatialMode:
    """Reflect the field through the origin; exact index reversal."""
    return SpatialMode(mode.grid, mode.amplitudes[::-1])


def apply_pr(mode: SpatialMode, theta: float) -> SpatialMode:
    """Advance the phase of the x > 0 half-plane by theta radians."""
    factor = np.where(mode.grid.x > 0.0, np.exp(1j * theta), 1.0 + 0.0j)
    return SpatialMode(mode.grid, mode.amplitudes * factor)


def apply_element(mode: SpatialMode, element: Element) -> SpatialMode:
    if element.kind == "PF":
        return apply_pf(mode)
    if element.kind == "SF":
        return apply_sf(mode)
    if element.kind == "PR":
        return apply_pr(mode, element.theta)
    if element.kind == "I":
        return mode
    raise DomainError(f"unknown element kind {element.kind!r}")


def apply_sequence(mode: SpatialMode, word: Sequence[Element]) -> SpatialMode:
    """Apply a word of elements left to right: word[0] acts first."""
    for element in word:
        mode = apply_element(mode, element)
    return mode


def element_matrix(element: Element) -> np.ndarray:
    """2x2 matrix of an element on the (even, odd) basis."""
    if element.kind == "PF":
        return np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
    if element.kind == "SF":
        return np.array([[1.0, 0.0], [0.0, -1.0]], dtype=complex)
    if element.kind == "PR":
        half = 0.5 * element.theta
        c, s = np.cos(half), np.sin(half)
        return np.exp(0.5j * element.theta) * np.array([[c, 1j * s], [1j * s, c]])
    if element.kind == "I":
        return np.eye(2, dtype=complex)
    raise DomainError(f"unknown element kind {element.kind!r}")


def word_matrix(word: Sequence[Element]) -> np.ndarray:
    """Matrix of a word applied left to right (last element leftmost)."""
    return reduce(lambda acc, e: element_matrix(e) @ acc, word, np.eye(2, dtype=complex))


def word_to_string(word: Sequence[Element]) -> str:
    parts = []
    for e in word:
        parts.append(f"PR({e.theta:.17g})" if e.kind == "PR" else e.kind)
    return " ".join(parts)


def random_word(rng: np.random.Generator, max_len: int = 8) -> list[Element]:
    """Uniformly random word over {PF, SF, PR(theta)} with 1 <= len <= max_len."""
    length = int(rng.integers(1, max_len + 1))
    word: list[Element] = []
    for _ in range(length):
        kind = int(rng.integers(0, 3))
        if kind == 0:
            word.append(PF)
        elif kind == 1:
            word.append(SF)
        else:
            word.append(pr(float(rng.uniform(0.0, 2.0 * np.pi))))
    return word


def isomorphism_residual(word: Sequence[Element], q0: ParityQubit, basis: ReferenceBasis) -> float:
    """Distance between continuous evolution and the matrix-product prediction.

    The starting mode is q0 realized in the reference basis; the word is
    applied sample by sample, the result projected back to a qubit, and
    compared (up to global phase) with word_matrix(word) @ q0.
    """
    start = SpatialMode(
        basis.grid,
        q0.alpha_e * basis.g.amplitudes + q0.alpha_o * basis.chi.amplitudes,
    )
    evolved = qubit_extract(apply_sequence(start, word), basis)
    predicted = word_matrix(word) @ q0.as_array()
    return phase_aligned_distance(evolved.as_array(), predicted)
