"""Frequency-time ("fxt") combination of a signal with its aligned spectrum.

For a candidate period the magnitude spectrum is stretched so that harmonic
spacing matches the candidate period length, then laid against the rectified
signal.  If the candidate is right, spectral peaks sit on the signal's
period marks.  Two combinations are produced: the elementwise product, used
for scoring, and the circular convolution, kept for inspection.

The score is the product of two agreements, each in ``[0, 1]``:

``freq_agreement``
    mean of the rectified signal under the frequency-aligned spectrum,
    weighted by that spectrum: ``sum(t * v) / sum(v)``.  Low when the
    candidate is too short (spectral peaks fall between period marks).
``time_agreement``
    the same with roles swapped, using the time-aligned signal ``t'`` read
    at each DFT bin: ``sum(|X| * t') / sum(|X| over in-range bins)``.  Low
    when the candidate is too long.

Either one alone is fooled by octave errors on harmonic signals; together
they pick the true period.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import InvalidCandidateError, InvalidGridError, InvalidInputError
from .grid import GridSpec
from .resample import resample_spectrum, resample_time
from .spectral import SampledSignal, Spectrum, circular_convolve, dft

# scores this close to the best are ties, resolved toward the shortest period
TIE_TOL = 1e-12
# an aligned spectrum peaking below this fraction of the full spectrum is rounding noise
NOISE_FLOOR = 1e-9


@dataclass(frozen=True, eq=False)
class FxtReport:
    candidate_period_s: float
    time_sequence: np.ndarray
    aligned_spectrum: np.ndarray
    product_sequence: np.ndarray
    convolution_sequence: np.ndarray | None
    freq_agreement: float
    time_agreement: float

    @property
    def score(self) -> float:
        return self.freq_agreement * self.time_agreement


@dataclass(frozen=True, eq=False)
class PitchEstimate:
    best_period_s: float
    best_frequency_hz: float
    scores: list[tuple[float, float]]


def _unit_max(x: np.ndarray) -> np.ndarray:
    peak = np.max(x)
    return x / peak if peak > 0 else np.zeros_like(x)


def _ratio(num: float, den: float) -> float:
    return float(num / den) if den > 0 else 0.0


def _candidate_grid(sample_rate_hz: float, n: int, period_s: float) -> GridSpec:
    try:
        return GridSpec(sample_rate_hz, n, period_s)
    except InvalidGridError as exc:
        raise InvalidCandidateError(f"candidate period {period_s!r} s: {exc}") from None


def _combine(
    rectified: np.ndarray, magnitude: np.ndarray, spectrum: Spectrum,
    signal_rate: float, period_s: float, convolve: bool = True,
) -> FxtReport:
    n = rectified.size
    spec = _candidate_grid(signal_rate, n, period_s)
    aligned = resample_spectrum(spectrum, spec).values
    if aligned.max() <= NOISE_FLOOR * magnitude.max():
        aligned = np.zeros_like(aligned)
    aligned = _unit_max(aligned)
    product = rectified * aligned
    stretched = resample_time(SampledSignal(rectified, signal_rate), spec)
    in_range = n - stretched.out_of_range_count
    return FxtReport(
        candidate_period_s=float(period_s),
        time_sequence=rectified,
        aligned_spectrum=aligned,
        product_sequence=product,
        convolution_sequence=circular_convolve(rectified, aligned) if convolve else None,
        freq_agreement=_ratio(product.sum(), aligned.sum()),
        time_agreement=_ratio(magnitude @ stretched.values, magnitude[:in_range].sum()),
    )


def _prepare(signal: SampledSignal):
    rectified = _unit_max(np.abs(signal.samples))
    spectrum = dft(signal)
    return rectified, np.abs(spectrum.bins), spectrum


def fxt_combine(signal: SampledSignal, candidate_period_s: float) -> FxtReport:
    """Align ``signal``'s spectrum to ``candidate_period_s`` and combine.

    Both sequences are normalised to unit maximum, so the score does not
    depend on signal level.  A zero signal scores 0, as does a candidate whose
    aligned window holds only rounding noise.
    """
    rectified, magnitude, spectrum = _prepare(signal)
    return _combine(rectified, magnitude, spectrum, signal.sample_rate_hz, candidate_period_s)


def candidate_periods(period_min_s: float, period_max_s: float, num_candidates: int) -> np.ndarray:
    return np.linspace(period_min_s, period_max_s, num_candidates)


def pitch_sweep(
    signal: SampledSignal,
    period_min_s: float,
    period_max_s: float,
    num_candidates: int,
    workers: int | None = None,
) -> PitchEstimate:
    """Score uniformly spaced candidate periods and return the best.

    ``workers > 1`` evaluates candidates on a thread pool; results are
    gathered in candidate order so the estimate is identical to a serial run.
    """
    duration = len(signal) / signal.sample_rate_hz
    if not 0 < period_min_s < period_max_s < duration:
        raise InvalidInputError(
            f"need 0 < period_min ({period_min_s!r}) < period_max ({period_max_s!r}) "
            f"< record duration ({duration:g} s)"
        )
    if int(num_candidates) != num_candidates or num_candidates < 2:
        raise InvalidInputError(f"num_candidates must be an integer >= 2, got {num_candidates!r}")

    periods = candidate_periods(period_min_s, period_max_s, int(num_candidates))
    rectified, magnitude, spectrum = _prepare(signal)

    def score(period: float) -> float:
        report = _combine(
            rectified, magnitude, spectrum, signal.sample_rate_hz, period, convolve=False
        )
        return report.score

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            scores = list(pool.map(score, periods))
    else:
        scores = [score(p) for p in periods]

    values = np.array(scores)
    best = int(np.flatnonzero(values >= values.max() - TIE_TOL)[0])
    best_period = float(periods[best])
    return PitchEstimate(
        best_period_s=best_period,
        best_frequency_hz=1.0 / best_period,
        scores=[(float(p), float(s)) for p, s in zip(periods, scores)],
    )
