"""Uniform periodic grids, sampled signals, and the L^q machinery they carry.

Everything downstream (filter banks, scattering cascades, group actions)
computes on these objects.  Signals live on a periodic torus sampled with a
uniform physical step ``h``; all integrals are Riemann sums with weight
``h**n`` per sample and all convolutions are circular, evaluated through the
FFT.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np


class GridMismatchError(ValueError):
    """Two operands do not share the same grid."""


@dataclass(frozen=True)
class Grid:
    """Uniform periodic sampling lattice in one or two dimensions.

    Parameters
    ----------
    extent : tuple of int
        Sample count per dimension.  Length 1 or 2; every entry >= 4.
    spacing : float
        Physical step ``h``, identical along every axis.

    The spatial coordinates are centered, ``x_i = (i - N//2) * h``, so the
    origin is an actual lattice point and dilations/rotations act about the
    middle of the fundamental domain.
    """

    extent: tuple[int, ...]
    spacing: float = 1.0

    def __post_init__(self):
        extent = tuple(int(n) for n in self.extent)
        object.__setattr__(self, "extent", extent)
        if len(extent) not in (1, 2):
            raise ValueError(f"only 1D and 2D grids are supported, got {len(extent)} dims")
        if any(n < 4 for n in extent):
            raise ValueError(f"each dimension needs >= 4 samples, got {extent}")
        if not self.spacing > 0:
            raise ValueError(f"spacing must be positive, got {self.spacing}")

    @property
    def n_dims(self) -> int:
        return len(self.extent)

    @property
    def n_samples(self) -> int:
        return int(np.prod(self.extent))

    @property
    def cell_volume(self) -> float:
        """Quadrature weight h**n of one sample."""
        return self.spacing ** self.n_dims

    @property
    def total_measure(self) -> float:
        """Measure of the fundamental domain."""
        return self.n_samples * self.cell_volume

    def coordinates(self) -> list[np.ndarray]:
        """Centered physical coordinates, one 1D array per axis."""
        return [
            (np.arange(n) - n // 2) * self.spacing
            for n in self.extent
        ]

    def coordinate_mesh(self) -> list[np.ndarray]:
        """Centered coordinates broadcast to the full grid shape."""
        return list(np.meshgrid(*self.coordinates(), indexing="ij"))

    def angular_frequencies(self) -> list[np.ndarray]:
        """Angular frequencies 2*pi*fftfreq per axis (FFT ordering)."""
        return [
            2.0 * np.pi * np.fft.fftfreq(n, d=self.spacing)
            for n in self.extent
        ]

    def frequency_mesh(self) -> list[np.ndarray]:
        """Angular frequencies broadcast to the full grid shape."""
        return list(np.meshgrid(*self.angular_frequencies(), indexing="ij"))

    def max_frequency(self) -> float:
        """Largest |omega| on the lattice (corner frequency in 2D)."""
        return float(np.sqrt(sum((np.pi / self.spacing) ** 2 for _ in self.extent)))

    def min_frequency(self) -> float:
        """Smallest nonzero |omega| on the lattice."""
        return 2.0 * np.pi / (max(self.extent) * self.spacing)


@dataclass(frozen=True)
class Signal:
    """Complex samples on a :class:`Grid`.

    ``samples`` is stored as complex128 with the grid's shape.  Instances are
    treated as immutable; operations return new signals.
    """

    grid: Grid
    samples: np.ndarray = field(repr=False)

    def __post_init__(self):
        samples = np.asarray(self.samples, dtype=np.complex128)
        if samples.shape != self.grid.extent:
            raise ValueError(
                f"samples shape {samples.shape} does not match grid extent {self.grid.extent}"
            )
        if not np.all(np.isfinite(samples.view(np.float64))):
            raise ValueError("signal samples must be finite (no NaN/Inf)")
        object.__setattr__(self, "samples", samples)

    def spectrum(self) -> np.ndarray:
        """Unnormalized DFT of the samples."""
        return np.fft.fftn(self.samples)

    def mean(self) -> complex:
        return complex(np.mean(self.samples))

    def with_samples(self, samples: np.ndarray) -> "Signal":
        return Signal(self.grid, samples)


class Contraction(enum.Enum):
    """Pointwise nonexpansive nonlinearity applied between cascade layers."""

    MODULUS = "modulus"
    COMPLEX_RELU = "crelu"

    def apply(self, samples: np.ndarray) -> np.ndarray:
        if self is Contraction.MODULUS:
            return np.abs(samples).astype(np.complex128)
        # max(0, Re a), kept complex so the cascade stays type-uniform
        return np.maximum(samples.real, 0.0).astype(np.complex128)


def convolve(f: Signal, filter_freq: np.ndarray) -> Signal:
    """Periodic convolution of ``f`` with a frequency-domain filter.

    ``filter_freq`` holds samples of the continuum transfer function at the
    grid's angular frequencies (FFT ordering).  The equivalent spatial kernel
    on index differences is ``ifftn(filter_freq) / h**n``, which makes the
    discrete delta (value ``1/h**n`` at the origin) the convolution identity.
    """
    filter_freq = np.asarray(filter_freq)
    if filter_freq.shape != f.grid.extent:
        raise GridMismatchError(
            f"filter shape {filter_freq.shape} does not match grid extent {f.grid.extent}"
        )
    out = np.fft.ifftn(np.fft.fftn(f.samples) * filter_freq)
    return Signal(f.grid, out)


def lq_norm(f: Signal, q: float) -> float:
    """Riemann-sum L^q norm, ``(sum |f|^q * h**n) ** (1/q)``."""
    if q < 1:
        raise ValueError(f"q must satisfy q >= 1, got {q}")
    mag = np.abs(f.samples)
    return float((np.sum(mag ** q) * f.grid.cell_volume) ** (1.0 / q))


def apply_contraction(f: Signal, kind: Contraction) -> Signal:
    """Apply a pointwise contraction; modulus by default in the cascades."""
    return Signal(f.grid, kind.apply(f.samples))


def translate(f: Signal, shift: int | tuple[int, ...]) -> Signal:
    """Circular shift by whole samples; L^q norms are preserved exactly."""
    if np.isscalar(shift):
        shift = (int(shift),) * f.grid.n_dims
    shift = tuple(int(s) for s in shift)
    if len(shift) != f.grid.n_dims:
        raise ValueError(f"need {f.grid.n_dims} shift offsets, got {len(shift)}")
    return Signal(f.grid, np.roll(f.samples, shift, axis=tuple(range(f.grid.n_dims))))


def spectral_energy(f: Signal) -> float:
    """||f||_2^2 computed from the DFT (Parseval form)."""
    spec = np.fft.fftn(f.samples)
    return float(np.sum(np.abs(spec) ** 2) * f.grid.cell_volume / f.grid.n_samples)
