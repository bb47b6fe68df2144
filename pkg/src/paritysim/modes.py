"""Sampled 1D transverse modes and their reduction to a parity qubit.

Modes live on a symmetric midpoint grid with no sample at x = 0, so the
reflection x -> -x is an exact index reversal and every sample belongs
unambiguously to one half-plane.  Any mode splits into even and odd parts;
modes inside the two-dimensional span of a fixed even reference mode g and
its odd partner chi = g * sgn(x) additionally carry a spinor-like amplitude
pair (alpha_e, alpha_o), the parity qubit.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import NamedTuple

import numpy as np

from .errors import OutOfSubspaceError, ShapeError, ZeroNormError

# Residual norm above which a mode is rejected as outside span{g, chi}.
SUBSPACE_RESIDUAL_TOL = 1e-6


@dataclass(frozen=True)
class Grid:
    """Symmetric midpoint sampling of x in [-half_width, +half_width].

    Samples sit at x_k = -half_width + (k + 1/2) * dx for k = 0 .. n-1 with
    dx = 2 * half_width / n.  n must be even, which makes the sampling
    mirror-symmetric: x[n-1-k] == -x[k] holds bit-exactly because the
    positive half is built first and negated.
    """

    half_width: float = 8.0
    n: int = 512

    def __post_init__(self) -> None:
        if self.n < 2 or self.n % 2 != 0:
            raise ShapeError(f"sample count must be even and >= 2, got {self.n}")
        if not self.half_width > 0.0:
            raise ShapeError(f"half_width must be positive, got {self.half_width}")

    @property
    def length(self) -> float:
        return 2.0 * self.half_width

    @property
    def dx(self) -> float:
        return self.length / self.n

    @cached_property
    def x(self) -> np.ndarray:
        pos = (np.arange(self.n // 2) + 0.5) * self.dx
        x = np.concatenate([-pos[::-1], pos])
        x.setflags(write=False)
        return x

    @cached_property
    def sign(self) -> np.ndarray:
        """sgn(x) per sample; never zero because x = 0 is not sampled."""
        s = np.sign(self.x)
        s.setflags(write=False)
        return s


@dataclass(frozen=True, eq=False)
class SpatialMode:
    """Complex field samples on a grid, unit norm under the midpoint rule."""

    grid: Grid
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (self.grid.n,):
            raise ShapeError(
                f"amplitude array of shape {amps.shape} does not match grid n={self.grid.n}"
            )
        amps = amps.copy()
        amps.setflags(write=False)
        object.__setattr__(self, "amplitudes", amps)

    def norm(self) -> float:
        return float(np.sqrt(np.vdot(self.amplitudes, self.amplitudes).real * self.grid.dx))


@dataclass(frozen=True)
class ParityQubit:
    """Amplitude pair (alpha_e, alpha_o) on the even/odd reference basis.

    Factories in this module return normalized pairs; direct construction is
    not validated so that downstream checks can reject bad input themselves.
    """

    alpha_e: complex
    alpha_o: complex

    def as_array(self) -> np.ndarray:
        return np.array([self.alpha_e, self.alpha_o], dtype=complex)

    def norm(self) -> float:
        return float(np.sqrt(abs(self.alpha_e) ** 2 + abs(self.alpha_o) ** 2))


class ParityParts(NamedTuple):
    """Even/odd sample arrays (unnormalized) and their populations."""

    even: np.ndarray
    odd: np.ndarray
    p_even: float
    p_odd: float


def qubit(alpha_e: complex, alpha_o: complex) -> ParityQubit:
    """Build a normalized parity qubit from an unnormalized amplitude pair."""
    n = np.sqrt(abs(alpha_e) ** 2 + abs(alpha_o) ** 2)
    if n == 0.0:
        raise ZeroNormError("qubit amplitudes are both zero")
    return ParityQubit(complex(alpha_e) / n, complex(alpha_o) / n)


def make_mode(values: np.ndarray, grid: Grid) -> SpatialMode:
    """Normalize raw samples into a SpatialMode.

    Parameters
    ----------
    values : array_like of complex, shape (grid.n,)
    grid : Grid

    Returns
    -------
    SpatialMode with unit midpoint-rule norm; the input shape is preserved
    up to one positive scale factor.
    """
    vals = np.asarray(values, dtype=complex)
    if vals.shape != (grid.n,):
        raise ShapeError(f"expected {grid.n} samples, got shape {vals.shape}")
    n = np.sqrt(np.vdot(vals, vals).real * grid.dx)
    if n == 0.0:
        raise ZeroNormError("cannot normalize a zero field")
    return SpatialMode(grid, vals / n)


def parity_decompose(mode: SpatialMode) -> ParityParts:
    """Split a mode into its even and odd parts.

    even(x) = (psi(x) + psi(-x)) / 2 and odd(x) = (psi(x) - psi(-x)) / 2,
    with the reflection realized as an exact index reversal.  Each part then
    belongs to its parity subspace bit-exactly (IEEE addition commutes and
    negation is exact); reconstruction even + odd matches the input to one
    rounding.  Populations are midpoint-rule squared norms and satisfy
    p_even + p_odd = 1 for a normalized mode.
    """
    amps = mode.amplitudes
    rev = amps[::-1]
    even = (amps + rev) / 2.0
    odd = (amps - rev) / 2.0
    dx = mode.grid.dx
    p_even = float(np.vdot(even, even).real * dx)
    p_odd = float(np.vdot(odd, odd).real * dx)
    return ParityParts(even, odd, p_even, p_odd)


@dataclass(frozen=True, eq=False)
class ReferenceBasis:
    """Even reference mode g and its odd partner chi = g * sgn(x)."""

    g: SpatialMode
    chi: SpatialMode

    @classmethod
    def gaussian(cls, grid: Grid) -> "ReferenceBasis":
        """Default basis: g proportional to exp(-x^2) in beam-waist units."""
        g_vals = np.exp(-grid.x ** 2)
        g = make_mode(g_vals, grid)
        chi = make_mode(g.amplitudes * grid.sign, grid)
        return cls(g, chi)

    @property
    def grid(self) -> Grid:
        return self.g.grid


def overlap(a: SpatialMode, b: SpatialMode) -> complex:
    """Midpoint-rule inner product <a|b> = sum conj(a_k) b_k dx."""
    if a.grid != b.grid:
        raise ShapeError("modes live on different grids")
    return complex(np.vdot(a.amplitudes, b.amplitudes) * a.grid.dx)


def qubit_extract(mode: SpatialMode, basis: ReferenceBasis) -> ParityQubit:
    """Project a mode onto the reference subspace and return its qubit.

    Raises OutOfSubspaceError when the residual after projecting onto
    span{g, chi} exceeds the tolerance; the returned pair is renormalized
    (positive real factor, so relative phases survive untouched).
    """
    if mode.grid != basis.grid:
        raise ShapeError("mode and basis live on different grids")
    a_e = overlap(basis.g, mode)
    a_o = overlap(basis.chi, mode)
    resid = mode.amplitudes - a_e * basis.g.amplitudes - a_o * basis.chi.amplitudes
    resid_norm = np.sqrt(np.vdot(resid, resid).real * mode.grid.dx)
    if resid_norm > SUBSPACE_RESIDUAL_TOL:
        raise OutOfSubspaceError(
            f"mode leaves the reference subspace (residual norm {resid_norm:.3e})"
        )
    return qubit(a_e, a_o)


def poincare_coords(q: ParityQubit) -> tuple[float, float, float]:
    """Pseudo-spin sphere coordinates (s1, s2, s3) of a qubit.

    s3 = |alpha_e|^2 - |alpha_o|^2 puts the even mode at the north pole;
    s1 and s2 are twice the real and imaginary parts of conj(alpha_e) *
    alpha_o.  Global phase drops out.
    """
    cross = np.conj(q.alpha_e) * q.alpha_o
    s1 = 2.0 * cross.real
    s2 = 2.0 * cross.imag
    s3 = abs(q.alpha_e) ** 2 - abs(q.alpha_o) ** 2
    return (float(s1), float(s2), float(s3))


def phase_aligned_distance(a: np.ndarray, b: np.ndarray) -> float:
    """Euclidean distance between complex arrays, minimized over the global
    phase of b.  Zero means equal up to a phase factor."""
    a = np.asarray(a, dtype=complex).ravel()
    b = np.asarray(b, dtype=complex).ravel()
    if a.shape != b.shape:
        raise ShapeError("arrays must have matching sizes")
    ip = np.vdot(b, a)
    phase = ip / abs(ip) if abs(ip) > 0.0 else 1.0
    return float(np.linalg.norm(a - phase * b))


def ray_distance(q1: ParityQubit, q2: ParityQubit) -> float:
    """Distance between two qubits ignoring global phase."""
    return phase_aligned_distance(q1.as_array(), q2.as_array())
