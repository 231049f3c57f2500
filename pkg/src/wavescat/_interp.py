"""Band-limited (trigonometric) interpolation of periodic samples.

All resampling in the group-action operations goes through these helpers.
Evaluation at fractional lattice indices is done by summing the discrete
Fourier series directly, which is exact for band-limited signals; an FFT
zero-padding oversampler is provided for spline-based fallbacks and for
independent test oracles.
"""

from __future__ import annotations

import numpy as np

# Dense evaluation matrices are chunked to roughly this many complex entries.
_CHUNK_ENTRIES = 4_000_000


def _signed_modes(n: int) -> np.ndarray:
    """Integer mode numbers in FFT order; the Nyquist mode of an even n is
    returned as +n/2 and handled separately by the evaluators."""
    k = np.fft.fftfreq(n, d=1.0 / n)
    return k


def trig_interp_1d(samples: np.ndarray, frac_idx: np.ndarray) -> np.ndarray:
    """Evaluate the trigonometric interpolant of 1D periodic samples.

    ``frac_idx`` holds (possibly fractional) lattice indices; values wrap
    periodically.  For even length the Nyquist coefficient is evaluated as
    ``cos(pi*u)`` so real inputs interpolate to real values.
    """
    samples = np.asarray(samples, dtype=np.complex128)
    n = samples.shape[0]
    u = np.asarray(frac_idx, dtype=np.float64) % n
    spec = np.fft.fft(samples)
    k = _signed_modes(n)
    if n % 2 == 0:
        ny = n // 2
        phases = np.exp(2j * np.pi * np.outer(u, np.delete(k, ny)) / n)
        out = phases @ np.delete(spec, ny)
        out += spec[ny] * np.cos(np.pi * u)
    else:
        phases = np.exp(2j * np.pi * np.outer(u, k) / n)
        out = phases @ spec
    return out / n


def _axis_eval_matrix(n: int, u: np.ndarray) -> tuple[np.ndarray, np.ndarray | None]:
    """Evaluation matrix E with E @ spec / n interpolating along one axis.

    Returns ``(E, nyquist_column)``; for even n the Nyquist term must be added
    as ``outer(cos(pi*u), spec[n/2])`` by the caller.
    """
    u = np.asarray(u, dtype=np.float64) % n
    k = _signed_modes(n)
    if n % 2 == 0:
        ny = n // 2
        e = np.exp(2j * np.pi * np.outer(u, np.delete(k, ny)) / n)
        return e, np.cos(np.pi * u)
    return np.exp(2j * np.pi * np.outer(u, k) / n), None


def trig_interp_axis(samples: np.ndarray, frac_idx: np.ndarray, axis: int) -> np.ndarray:
    """Interpolate along a single axis at shared fractional indices.

    Every slice transverse to ``axis`` is evaluated at the same index list;
    this makes separable maps (axis-aligned dilations) cheap in 2D.
    """
    samples = np.asarray(samples, dtype=np.complex128)
    moved = np.moveaxis(samples, axis, 0)
    n = moved.shape[0]
    spec = np.fft.fft(moved, axis=0)
    e, ny_col = _axis_eval_matrix(n, frac_idx)
    if ny_col is not None:
        ny = n // 2
        body = np.tensordot(e, np.delete(spec, ny, axis=0), axes=(1, 0))
        body += np.multiply.outer(ny_col, np.take(spec, ny, axis=0))
    else:
        body = np.tensordot(e, spec, axes=(1, 0))
    return np.moveaxis(body / n, 0, axis)


def trig_interp_points(samples: np.ndarray, frac_points: np.ndarray) -> np.ndarray:
    """Evaluate an n-D trigonometric interpolant at arbitrary index points.

    ``frac_points`` has shape ``(n_points, ndim)``.  Cost is
    ``n_points * n_samples``; evaluation is chunked over points to bound
    memory.  Exact (to rounding) for any input since it sums the full series.
    """
    samples = np.asarray(samples, dtype=np.complex128)
    shape = samples.shape
    ndim = samples.ndim
    pts = np.asarray(frac_points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != ndim:
        raise ValueError(f"frac_points must have shape (n_points, {ndim})")
    if ndim == 1:
        return trig_interp_1d(samples, pts[:, 0])

    spec = np.fft.fftn(samples)
    # Split even-length axes into body + Nyquist cosine per axis.  Rather than
    # enumerating the 2**ndim combinations, evaluate with modes k in FFT order
    # and replace exp at the Nyquist mode by cos via averaging +/- exponents.
    mode_axes = [_signed_modes(n) for n in shape]
    n_pts = pts.shape[0]
    n_modes = spec.size
    flat_spec = spec.reshape(-1)
    mode_grid = np.stack(
        [m.reshape(-1) for m in np.meshgrid(*mode_axes, indexing="ij")], axis=1
    )
    nyquist_axis = [n % 2 == 0 for n in shape]
    out = np.empty(n_pts, dtype=np.complex128)
    chunk = max(1, _CHUNK_ENTRIES // max(1, n_modes))
    for start in range(0, n_pts, chunk):
        sl = slice(start, min(start + chunk, n_pts))
        block = np.ones((sl.stop - sl.start, n_modes), dtype=np.complex128)
        for d in range(ndim):
            u = pts[sl, d] % shape[d]
            ang = 2.0 * np.pi * np.outer(u, mode_grid[:, d]) / shape[d]
            factor = np.exp(1j * ang)
            if nyquist_axis[d]:
                at_ny = mode_grid[:, d] == shape[d] // 2
                factor[:, at_ny] = np.cos(ang[:, at_ny])
            block *= factor
        out[sl] = block @ flat_spec
    return out / n_modes


def spectral_oversample(samples: np.ndarray, factor: int) -> np.ndarray:
    """Zero-pad the spectrum to refine the lattice by an integer factor.

    Exact trigonometric refinement: the output restricted to the coarse
    lattice reproduces the input, and for band-limited data the fine samples
    equal the underlying interpolant.  Even-length Nyquist bins are split
    symmetrically to match the cosine convention of the evaluators.
    """
    if factor < 1:
        raise ValueError("oversampling factor must be >= 1")
    samples = np.asarray(samples, dtype=np.complex128)
    if factor == 1:
        return samples.copy()
    spec = np.fft.fftn(samples)
    for axis, n in enumerate(samples.shape):
        big = n * factor
        shape = list(spec.shape)
        shape[axis] = big
        padded = np.zeros(shape, dtype=np.complex128)
        half = n // 2
        idx_src_lo = [slice(None)] * spec.ndim
        idx_dst_lo = [slice(None)] * spec.ndim
        if n % 2 == 0:
            idx_src_lo[axis] = slice(0, half)
            idx_dst_lo[axis] = slice(0, half)
            padded[tuple(idx_dst_lo)] = spec[tuple(idx_src_lo)]
            idx_src_hi = [slice(None)] * spec.ndim
            idx_dst_hi = [slice(None)] * spec.ndim
            idx_src_hi[axis] = slice(half + 1, n)
            idx_dst_hi[axis] = slice(big - half + 1, big)
            padded[tuple(idx_dst_hi)] = spec[tuple(idx_src_hi)]
            take = [slice(None)] * spec.ndim
            take[axis] = half
            put_pos = [slice(None)] * spec.ndim
            put_pos[axis] = half
            put_neg = [slice(None)] * spec.ndim
            put_neg[axis] = big - half
            padded[tuple(put_pos)] = spec[tuple(take)] / 2.0
            padded[tuple(put_neg)] = spec[tuple(take)] / 2.0
        else:
            idx_src_lo[axis] = slice(0, half + 1)
            idx_dst_lo[axis] = slice(0, half + 1)
            padded[tuple(idx_dst_lo)] = spec[tuple(idx_src_lo)]
            idx_src_hi = [slice(None)] * spec.ndim
            idx_dst_hi = [slice(None)] * spec.ndim
            idx_src_hi[axis] = slice(half + 1, n)
            idx_dst_hi[axis] = slice(big - half, big)
            padded[tuple(idx_dst_hi)] = spec[tuple(idx_src_hi)]
        spec = padded
    return np.fft.ifftn(spec) * (factor ** samples.ndim)
