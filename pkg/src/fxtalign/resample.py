"""Stretch the spectrum or the signal so harmonic spacing equals period length.

Both directions keep N output samples.  Output sample ``q`` of the
frequency-aligned sequence reads source bin ``q / a``; output sample ``q`` of
the time-aligned sequence reads source sample ``q * a``.  Source positions
past the last sample read as zero and are counted, never extrapolated.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .errors import InvalidInputError
from .grid import GridSpec, alignment_scale, harmonic_bin_spacing, samples_per_period
from .spectral import SampledSignal, Spectrum

# fractional indices closer than this to an integer are read as that integer
SNAP_TOL = 1e-9

FREQUENCY_ALIGNED = "frequency-aligned"
TIME_ALIGNED = "time-aligned"


@dataclass(frozen=True, eq=False)
class AlignedSequence:
    values: np.ndarray
    increment: float
    domain_tag: Literal["frequency-aligned", "time-aligned"]
    source_end_index_0based: float
    out_of_range_count: int

    def __len__(self) -> int:
        return self.values.size

    @property
    def axis(self) -> np.ndarray:
        """Frequency (Hz) or time (s) of each output sample."""
        return np.arange(len(self)) * self.increment


def _snap(index: np.ndarray) -> np.ndarray:
    nearest = np.round(index)
    return np.where(np.abs(index - nearest) <= SNAP_TOL, nearest, index)


def _interpolate(values: np.ndarray, index: np.ndarray) -> tuple[np.ndarray, int]:
    """Linear interpolation at fractional indices; zero past the end."""
    index = _snap(np.asarray(index, dtype=float))
    last = values.size - 1
    inside = index <= last
    lo = np.floor(np.where(inside, index, 0)).astype(int)
    hi = np.minimum(lo + 1, last)
    w = np.where(inside, index, 0) - lo
    out = (1.0 - w) * values[lo] + w * values[hi]
    out[~inside] = 0.0
    return out, int(np.count_nonzero(~inside))


def linear_interpolate(values: Sequence[float], fractional_index: float) -> float:
    """Value of ``values`` at a fractional index, 0 beyond the last element."""
    v = np.asarray(values, dtype=float)
    if v.size < 2:
        raise InvalidInputError(f"need at least 2 values, got {v.size}")
    if not fractional_index >= 0:
        raise InvalidInputError(f"index must be non-negative, got {fractional_index!r}")
    out, _ = _interpolate(v, np.array([fractional_index]))
    return float(out[0])


def _check_length(n: int, spec: GridSpec, what: str) -> None:
    if n != spec.num_samples:
        raise InvalidInputError(f"{what} has {n} samples but the grid has {spec.num_samples}")


def resample_spectrum(spectrum: Spectrum, spec: GridSpec) -> AlignedSequence:
    """Magnitude spectrum on the ``f_p^2 / f_s`` grid; harmonics land N_t apart."""
    _check_length(len(spectrum), spec, "spectrum")
    scale = alignment_scale(spec)
    q = np.arange(spec.num_samples)
    # q / a written as q * N_f / N_t keeps exact-grid peaks on integer sources
    source = q * harmonic_bin_spacing(spec) / samples_per_period(spec)
    values, outside = _interpolate(np.abs(spectrum.bins), source)
    return AlignedSequence(
        values, scale.new_freq_increment_hz, FREQUENCY_ALIGNED,
        scale.freq_end_index_0based, outside,
    )


def resample_time(signal: SampledSignal, spec: GridSpec) -> AlignedSequence:
    """Signal on the ``t_p^2 f_s / N`` grid; periods land N_f apart."""
    _check_length(len(signal), spec, "signal")
    scale = alignment_scale(spec)
    q = np.arange(spec.num_samples)
    source = q * samples_per_period(spec) / harmonic_bin_spacing(spec)
    values, outside = _interpolate(signal.samples, source)
    return AlignedSequence(
        values, scale.new_time_increment_s, TIME_ALIGNED,
        scale.time_end_index_0based, outside,
    )


def lossless_direction(spec: GridSpec) -> str:
    """The direction whose source positions all fall inside the record."""
    return FREQUENCY_ALIGNED if alignment_scale(spec).a >= 1.0 - SNAP_TOL else TIME_ALIGNED

