"""Scale grids, filter banks, and admissibility diagnostics.

A :class:`FilterBank` holds frequency-domain samples of dilated (and
optionally rotated) copies of a mother wavelet over a :class:`ScaleGrid`,
together with the quadrature weights of the measure ``d(lambda)/lambda^(n+1)``
(continuous mode) or the counting measure (dyadic mode).
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .grids import Grid
from .wavelets import MotherWavelet, frequency_samples

LOG2 = math.log(2.0)


class BankConfigurationError(ValueError):
    """The requested scale range cannot be realized on the grid."""


@dataclass(frozen=True)
class ScaleGrid:
    """Geometric scale lattice with quadrature weights.

    Dyadic mode: scales ``2**j`` for ``j_min <= j <= j_max`` with unit
    weights (counting measure).  Continuous mode: ``voices`` scales per
    octave covering ``[lambda_min, lambda_max]``; the weight of scale
    ``s`` for ambient dimension ``n`` is ``ln(2)/voices * s**(-n)``,
    the log-midpoint rule for ``d(lambda)/lambda^(n+1)``.
    """

    mode: str
    scales: tuple[float, ...]
    j_values: tuple[int, ...] = ()
    voices: int = 0

    def __post_init__(self):
        if self.mode not in ("dyadic", "continuous"):
            raise ValueError(f"unknown scale mode '{self.mode}'")
        if len(self.scales) == 0:
            raise ValueError("scale grid is empty")
        if any(s <= 0 for s in self.scales):
            raise ValueError("scales must be positive")
        if list(self.scales) != sorted(self.scales):
            raise ValueError("scales must be strictly increasing")

    @classmethod
    def dyadic(cls, j_min: int, j_max: int) -> "ScaleGrid":
        if j_max < j_min:
            raise ValueError(f"j_max must be >= j_min, got [{j_min}, {j_max}]")
        js = tuple(range(j_min, j_max + 1))
        return cls(mode="dyadic", scales=tuple(2.0 ** j for j in js), j_values=js)

    @classmethod
    def continuous(cls, lambda_min: float, lambda_max: float, voices: int) -> "ScaleGrid":
        if not (0 < lambda_min < lambda_max):
            raise ValueError("need 0 < lambda_min < lambda_max")
        if voices < 1:
            raise ValueError("voices per octave must be >= 1")
        count = int(round(voices * math.log2(lambda_max / lambda_min))) + 1
        scales = tuple(lambda_min * 2.0 ** (k / voices) for k in range(count))
        return cls(mode="continuous", scales=scales, voices=voices)

    @property
    def n_scales(self) -> int:
        return len(self.scales)

    def weights(self, n_dims: int) -> np.ndarray:
        if self.mode == "dyadic":
            return np.ones(self.n_scales)
        du = LOG2 / self.voices
        return du * np.asarray(self.scales) ** (-n_dims)


@dataclass(frozen=True)
class FilterBank:
    """Immutable frequency-domain bank over (scale, rotation) pairs.

    ``filters`` has shape ``(n_scales, n_rotations, *grid.extent)``.  L2
    normalization samples ``scale**(n/2) * psi_hat(scale * w)`` (continuous
    convention); L1 normalization samples ``psi_hat(scale * w)`` (dyadic
    convention).
    """

    grid: Grid
    scale_grid: ScaleGrid
    angles: tuple[float, ...]
    normalization: str
    filters: np.ndarray = field(repr=False)
    wavelet_name: str = ""
    wavelet_params: dict = field(default_factory=dict)
    mu_total: float = 1.0

    def __post_init__(self):
        expected = (self.scale_grid.n_scales, len(self.angles)) + self.grid.extent
        if self.filters.shape != expected:
            raise ValueError(f"filters shape {self.filters.shape} != expected {expected}")
        self.filters.setflags(write=False)

    @property
    def n_scales(self) -> int:
        return self.scale_grid.n_scales

    @property
    def n_rotations(self) -> int:
        return len(self.angles)

    @property
    def n_filters(self) -> int:
        return self.n_scales * self.n_rotations

    def filter_freq(self, scale_idx: int, rot_idx: int = 0) -> np.ndarray:
        return self.filters[scale_idx, rot_idx]

    def flat_filters(self) -> np.ndarray:
        """(n_filters, *extent) view, scale-major then rotation."""
        return self.filters.reshape((self.n_filters,) + self.grid.extent)

    def scale_weights(self) -> np.ndarray:
        return self.scale_grid.weights(self.grid.n_dims)

    def haar_weights(self) -> np.ndarray:
        return np.full(self.n_rotations, self.mu_total / self.n_rotations)

    def layer_weights(self) -> np.ndarray:
        """Per-filter quadrature weight (scale weight x Haar weight), flat."""
        return np.outer(self.scale_weights(), self.haar_weights()).reshape(-1)

    def spatial_filter(self, scale_idx: int, rot_idx: int = 0) -> np.ndarray:
        """Centered spatial kernel consistent with the convolution contract."""
        kernel = np.fft.ifftn(self.filters[scale_idx, rot_idx]) / self.grid.cell_volume
        return np.fft.fftshift(kernel)

    def filter_l2_norms(self) -> np.ndarray:
        """||psi_(scale,angle)||_2 for every filter, via Parseval."""
        mags = np.abs(self.flat_filters()) ** 2
        sums = mags.reshape(self.n_filters, -1).sum(axis=1)
        return np.sqrt(sums / (self.grid.n_samples * self.grid.cell_volume)).reshape(
            self.n_scales, self.n_rotations)

    def filter_l1_norms(self) -> np.ndarray:
        out = np.empty((self.n_scales, self.n_rotations))
        for s in range(self.n_scales):
            for a in range(self.n_rotations):
                out[s, a] = np.sum(np.abs(self.spatial_filter(s, a))) * self.grid.cell_volume
        return out

    def descriptor(self) -> dict:
        """Compact metadata used for coefficient compatibility checks."""
        return {
            "wavelet": self.wavelet_name,
            "normalization": self.normalization,
            "mode": self.scale_grid.mode,
            "scales": [float(s) for s in self.scale_grid.scales],
            "angles": [float(a) for a in self.angles],
            "mu_total": self.mu_total,
        }


def single_filter(wavelet: MotherWavelet, grid: Grid, scale: float,
                  normalization: str = "l2", angle: float = 0.0) -> np.ndarray:
    """Frequency samples of one dilated/rotated filter at an arbitrary scale."""
    if normalization == "l2":
        amp = scale ** (grid.n_dims / 2.0)
    elif normalization == "l1":
        amp = 1.0
    else:
        raise ValueError(f"unknown normalization '{normalization}'")
    return frequency_samples(wavelet, grid, scale=scale, angle=angle, amplitude=amp)


def build_bank(wavelet: MotherWavelet, grid: Grid, scale_grid: ScaleGrid,
               normalization: str | None = None,
               angles: list[float] | None = None,
               mu_total: float = 1.0,
               strict_zero_mean: bool = True,
               warn_resolution: bool = True) -> FilterBank:
    """Construct a frequency-domain bank of dilated (and rotated) wavelets.

    ``normalization`` defaults to the customary pairing: 'l2' for continuous
    scale grids, 'l1' for dyadic.  Scales whose response vanishes on the
    whole lattice raise :class:`BankConfigurationError`; scales that are only
    marginally resolvable trigger a warning.
    """
    if wavelet.n_dims != grid.n_dims:
        raise ValueError(
            f"wavelet is {wavelet.n_dims}D but grid is {grid.n_dims}D")
    if normalization is None:
        normalization = "l2" if scale_grid.mode == "continuous" else "l1"
    if normalization not in ("l2", "l1"):
        raise ValueError(f"unknown normalization '{normalization}'")
    angle_list = tuple(float(a) for a in (angles if angles else [0.0]))
    if len(angle_list) > 1 and grid.n_dims != 2:
        raise ValueError("rotated banks require a 2D grid")

    shape = (scale_grid.n_scales, len(angle_list)) + grid.extent
    filters = np.empty(shape, dtype=np.complex128)
    for si, scale in enumerate(scale_grid.scales):
        for ai, angle in enumerate(angle_list):
            filters[si, ai] = single_filter(wavelet, grid, scale, normalization, angle)

    dead_scales = []
    low_bins, edge_bins = _boundary_masks(grid)
    under_resolved, over_extended = [], []
    for si, scale in enumerate(scale_grid.scales):
        block = np.abs(filters[si])
        peak = block.max()
        if peak <= 1e-14:
            dead_scales.append(scale)
            continue
        dc = block[(slice(None),) + (0,) * grid.n_dims].max()
        if strict_zero_mean and dc > 1e-8 * peak:
            raise ValueError(
                f"filter at scale {scale} leaks DC: |psi_hat(0)| = {dc:.3e} "
                f"exceeds 1e-8 x peak {peak:.3e}")
        if block[:, edge_bins].max() > 0.01 * peak:
            under_resolved.append(scale)
        if block[:, low_bins].max() > 0.5 * peak:
            over_extended.append(scale)
    if dead_scales:
        raise BankConfigurationError(
            f"scales unresolvable on the grid (zero response): {dead_scales}")
    if warn_resolution and under_resolved:
        warnings.warn(
            f"scales {under_resolved} have significant response at the Nyquist "
            "shell; the finest bands are under-resolved", stacklevel=2)
    if warn_resolution and over_extended:
        warnings.warn(
            f"scales {over_extended} concentrate next to DC; their spatial "
            "support approaches the fundamental domain", stacklevel=2)

    return FilterBank(
        grid=grid,
        scale_grid=scale_grid,
        angles=angle_list,
        normalization=normalization,
        filters=filters,
        wavelet_name=wavelet.name,
        wavelet_params=dict(wavelet.params),
        mu_total=mu_total,
    )


def _boundary_masks(grid: Grid) -> tuple[np.ndarray, np.ndarray]:
    """Masks of near-DC bins (|k| <= 1, excluding DC) and Nyquist-edge bins."""
    low = np.ones(grid.extent, dtype=bool)
    edge = np.zeros(grid.extent, dtype=bool)
    for axis, n in enumerate(grid.extent):
        k = np.fft.fftfreq(n, d=1.0 / n).astype(int)
        shape = [1] * grid.n_dims
        shape[axis] = n
        low &= (np.abs(k) <= 1).reshape(shape)
        edge |= (np.abs(k) == n // 2).reshape(shape)
    low[(0,) * grid.n_dims] = False
    return low, edge


# ---------------------------------------------------------------------------
# admissibility diagnostics
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class AdmissibilityReport:
    """Empirical constancy band of the Littlewood-Paley sum/integral."""

    minimum: float
    maximum: float
    mean: float
    tolerance: float

    @property
    def flatness(self) -> float:
        if self.mean == 0:
            return float("inf")
        return (self.maximum - self.minimum) / self.mean

    @property
    def admissible(self) -> bool:
        return self.mean > 0 and self.flatness <= self.tolerance


def _as_direction_rays(wavelet: MotherWavelet, omega_samples) -> np.ndarray:
    """Normalize frequency probes to an array of shape (count, n_dims)."""
    arr = np.atleast_1d(np.asarray(omega_samples, dtype=np.float64))
    if wavelet.n_dims == 1:
        arr = arr.reshape(-1, 1)
    else:
        arr = arr.reshape(-1, 2)
    if np.any(np.all(arr == 0.0, axis=1)):
        raise ValueError("omega samples must avoid the origin")
    return arr


def check_admissibility_continuous(wavelet: MotherWavelet, omega_samples,
                                   lambda_range: tuple[float, float],
                                   points_per_octave: int = 64,
                                   tolerance: float = 1e-2) -> AdmissibilityReport:
    """Evaluate ``integral |psi_hat(lambda w)|^2 d(lambda)/lambda`` per probe.

    The integral is a dense log-scale midpoint quadrature over
    ``lambda_range``; the report summarizes its spread over the probes.
    """
    probes = _as_direction_rays(wavelet, omega_samples)
    lo, hi = lambda_range
    if not (0 < lo < hi):
        raise ValueError("need 0 < lambda_min < lambda_max")
    if wavelet.frequency is None:
        raise ValueError("admissibility sweeps need a frequency evaluator")
    count = max(2, int(math.ceil(points_per_octave * math.log2(hi / lo))))
    du = math.log(hi / lo) / count
    lam = lo * np.exp((np.arange(count) + 0.5) * du)
    values = np.empty(probes.shape[0])
    for i, w in enumerate(probes):
        axes = [lam * w[d] for d in range(wavelet.n_dims)]
        resp = np.abs(np.asarray(wavelet.frequency(*axes))) ** 2
        values[i] = float(np.sum(resp) * du)
    return AdmissibilityReport(float(values.min()), float(values.max()),
                               float(values.mean()), tolerance)


def check_admissibility_dyadic(wavelet: MotherWavelet, omega_samples,
                               j_range: tuple[int, int],
                               tolerance: float = 1e-2) -> AdmissibilityReport:
    """Evaluate ``sum_j |psi_hat(2^j w)|^2`` over ``j_range`` per probe."""
    probes = _as_direction_rays(wavelet, omega_samples)
    if wavelet.frequency is None:
        raise ValueError("admissibility sweeps need a frequency evaluator")
    j_lo, j_hi = j_range
    js = 2.0 ** np.arange(j_lo, j_hi + 1)
    values = np.empty(probes.shape[0])
    for i, w in enumerate(probes):
        axes = [js * w[d] for d in range(wavelet.n_dims)]
        resp = np.abs(np.asarray(wavelet.frequency(*axes))) ** 2
        values[i] = float(np.sum(resp))
    return AdmissibilityReport(float(values.min()), float(values.max()),
                               float(values.mean()), tolerance)


# ---------------------------------------------------------------------------
# grid-aware scale ranges
# ---------------------------------------------------------------------------

def _ray_response(wavelet: MotherWavelet, r: np.ndarray) -> np.ndarray:
    if wavelet.frequency is None:
        raise ValueError("scale-range helpers need a frequency evaluator")
    if wavelet.n_dims == 1:
        return np.abs(wavelet.frequency(r))
    return np.abs(wavelet.frequency(r, np.zeros_like(r)))


def peak_frequency(wavelet: MotherWavelet, probe_max: float = 64.0) -> float:
    """|omega| of the mother's peak response along its reference ray."""
    r = np.geomspace(1e-3, probe_max, 4096)
    vals = _ray_response(wavelet, r)
    return float(r[int(np.argmax(vals))])


def mother_band(wavelet: MotherWavelet, rel_threshold: float = 1e-6,
                probe_max: float = 256.0) -> tuple[float, float, float]:
    """(low edge, high edge, half-max width) of the mother's frequency bump.

    Edges delimit the contiguous region around the peak where the response
    stays above ``rel_threshold`` times the peak.
    """
    r = np.geomspace(1e-4, probe_max, 1 << 16)
    vals = _ray_response(wavelet, r)
    pk_idx = int(np.argmax(vals))
    pk = vals[pk_idx]
    above = vals >= rel_threshold * pk
    lo_idx = pk_idx
    while lo_idx > 0 and above[lo_idx - 1]:
        lo_idx -= 1
    hi_idx = pk_idx
    while hi_idx < len(r) - 1 and above[hi_idx + 1]:
        hi_idx += 1
    half = vals >= 0.5 * pk
    lo_h = pk_idx
    while lo_h > 0 and half[lo_h - 1]:
        lo_h -= 1
    hi_h = pk_idx
    while hi_h < len(r) - 1 and half[hi_h + 1]:
        hi_h += 1
    return float(r[lo_idx]), float(r[hi_idx]), float(r[hi_h] - r[lo_h])


def dyadic_range_for_grid(wavelet: MotherWavelet, grid: Grid,
                          cover_corner: bool = False) -> tuple[int, int]:
    """Dyadic j range whose filters tile every nonzero grid frequency.

    The finest j places the mother's peak near Nyquist (the axis Nyquist, or
    the corner frequency when ``cover_corner``); the coarsest reaches the
    first nonzero bin.  Scales with no grid response are trimmed.
    """
    pk = peak_frequency(wavelet)
    top = grid.max_frequency() if cover_corner else math.pi / grid.spacing
    j_lo = math.floor(math.log2(pk / top))
    j_hi = math.ceil(math.log2(pk / grid.min_frequency()))
    js = []
    for j in range(j_lo, j_hi + 1):
        resp = np.abs(single_filter(wavelet, grid, 2.0 ** j, "l1"))
        if resp.max() > 1e-12:
            js.append(j)
    if not js:
        raise BankConfigurationError("no dyadic scale is resolvable on this grid")
    return min(js), max(js)


def continuous_range_for_grid(wavelet: MotherWavelet, grid: Grid,
                              margin_octaves: float = 0.0) -> tuple[float, float]:
    """Scale span mapping the mother's peak across the resolvable band."""
    pk = peak_frequency(wavelet)
    lo = pk / (math.pi / grid.spacing) * 2.0 ** (-margin_octaves)
    hi = pk / grid.min_frequency() * 2.0 ** margin_octaves
    return lo, hi
