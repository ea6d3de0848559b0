"""Grid geometry of a sampled periodic signal and the time/frequency alignment scales.

Everything here is a pure function of a :class:`GridSpec`.  Quantities follow
the usual notation::

    f_s  sample rate (Hz)            N    number of samples
    t_p  period (s)                  f_p  fundamental, 1 / t_p
    N_t  samples per period, t_p f_s
    N_f  DFT bins between harmonics, N f_p / f_s

Alignment rescales one axis so that N_t == N_f.  The frequency axis is
stretched by ``a = N_t / N_f``; dually the time axis is stretched by
``b = 1 / a``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .errors import GridInexactError, InvalidGridError

EXACT_TOL = 1e-9
# a period of exactly 2 / f_s may round to a fundamental a few ulp above Nyquist
NYQUIST_RTOL = 1e-12


@dataclass(frozen=True)
class GridSpec:
    """Sample rate, record length and signal period of a sampled periodic signal."""

    sample_rate_hz: float
    num_samples: int
    period_s: float

    def __post_init__(self):
        fs, n, tp = self.sample_rate_hz, self.num_samples, self.period_s
        if isinstance(n, bool) or int(n) != n:
            raise InvalidGridError(f"num_samples must be an integer, got {n!r}")
        object.__setattr__(self, "num_samples", int(n))
        for name, value in (("sample_rate_hz", fs), ("period_s", tp)):
            if not (math.isfinite(value) and value > 0):
                raise InvalidGridError(f"{name} must be positive and finite, got {value!r}")
        object.__setattr__(self, "sample_rate_hz", float(fs))
        object.__setattr__(self, "period_s", float(tp))
        if self.num_samples < 2:
            raise InvalidGridError(f"num_samples must be >= 2, got {self.num_samples}")
        duration = self.num_samples / self.sample_rate_hz
        if not self.period_s < duration:
            raise InvalidGridError(
                f"period {self.period_s:g} s does not fit in a record of {duration:g} s"
            )
        if 1.0 / self.period_s > self.sample_rate_hz / 2 * (1 + NYQUIST_RTOL):
            raise InvalidGridError(
                f"fundamental {1.0 / self.period_s:g} Hz is above Nyquist "
                f"({self.sample_rate_hz / 2:g} Hz)"
            )

    @property
    def duration_s(self) -> float:
        """Record length N / f_s."""
        return self.num_samples / self.sample_rate_hz


@dataclass(frozen=True)
class AlignmentScale:
    """Scale factors and resampled-grid parameters for one GridSpec.

    ``freq_end_index`` and ``time_end_index`` are 1-based fractional indices
    (interp1 convention); the ``*_0based`` properties drop the offset.
    """

    a: float
    b: float
    new_freq_increment_hz: float
    new_time_increment_s: float
    freq_end_hz: float
    time_end_s: float
    freq_end_index: float
    time_end_index: float

    @property
    def freq_end_index_0based(self) -> float:
        return self.freq_end_index - 1.0

    @property
    def time_end_index_0based(self) -> float:
        return self.time_end_index - 1.0


class GridExactness(NamedTuple):
    exact: bool
    samples_per_period_offset: float
    harmonic_spacing_offset: float


class FlaxResiduals(NamedTuple):
    classical_residual: float
    scale_residual: float


def fundamental_frequency(spec: GridSpec) -> float:
    return 1.0 / spec.period_s


def sample_interval(spec: GridSpec) -> float:
    return 1.0 / spec.sample_rate_hz


def dft_bin_spacing(spec: GridSpec) -> float:
    """Frequency step between adjacent DFT bins, f_s / N."""
    return spec.sample_rate_hz / spec.num_samples


def samples_per_period(spec: GridSpec) -> float:
    """N_t = t_p * f_s; may be fractional."""
    return spec.period_s * spec.sample_rate_hz


def harmonic_bin_spacing(spec: GridSpec) -> float:
    """N_f = N * f_p / f_s, the bin distance between consecutive harmonics."""
    return spec.num_samples * fundamental_frequency(spec) / spec.sample_rate_hz


def max_harmonics(spec: GridSpec) -> int:
    """Largest harmonic number at or below Nyquist."""
    ratio = spec.sample_rate_hz / (2.0 * fundamental_frequency(spec))
    return math.floor(ratio * (1 + NYQUIST_RTOL))


def alignment_scale(spec: GridSpec) -> AlignmentScale:
    fs, n, tp = spec.sample_rate_hz, spec.num_samples, spec.period_s
    fp = fundamental_frequency(spec)
    n_t = samples_per_period(spec)
    n_f = harmonic_bin_spacing(spec)
    return AlignmentScale(
        a=n_t / n_f,
        b=n_f / n_t,
        new_freq_increment_hz=fp**2 / fs,
        new_time_increment_s=tp**2 * fs / n,
        freq_end_hz=(n - 1) * fp**2 / fs,
        time_end_s=(n - 1) * tp**2 * fs / n,
        freq_end_index=n * (n - 1) * fp**2 / fs**2 + 1.0,
        time_end_index=(n - 1) * tp**2 * fs**2 / n + 1.0,
    )


def flax_frequency_multiplier(spec: GridSpec) -> float:
    """Per-sample index step of the stretched spectrum, N / (f_s^2 t_p^2)."""
    return spec.num_samples / (spec.sample_rate_hz**2 * spec.period_s**2)


def flax_time_multiplier(spec: GridSpec) -> float:
    """Per-sample index step of the stretched signal, f_s^2 t_p^2 / N."""
    return spec.sample_rate_hz**2 * spec.period_s**2 / spec.num_samples


def flax_identity_check(spec: GridSpec) -> FlaxResiduals:
    """Residuals of the sample-count form of the scaling derivation.

    The derivation gives ``a = (t_p^2 f_s^2 / N) * (dt/df)``.  Two checks:

    * ``classical_residual``: with ``a = 1`` the increment ratio is forced to
      ``dt/df = N / (f_s^2 t_p^2)``; substituting it back must give exactly 1.
    * ``scale_residual``: measuring both increments in samples of their own
      axis (``dt/df = 1``) must reproduce ``N_t / N_f`` from
      :func:`alignment_scale`.  Reported relative to that value.
    """
    fs, n, tp = spec.sample_rate_hz, spec.num_samples, spec.period_s
    coefficient = tp**2 * fs**2 / n
    classical_ratio = n / (fs**2 * tp**2)
    classical_residual = abs(coefficient * classical_ratio - 1.0)
    a_counts = coefficient * 1.0
    a = alignment_scale(spec).a
    return FlaxResiduals(classical_residual, abs(a_counts - a) / a)


def _offset_from_integer(x: float) -> float:
    return x - round(x)


def is_grid_exact(spec: GridSpec) -> GridExactness:
    """Whether N_t and N_f are both integral to within 1e-9."""
    dt = _offset_from_integer(samples_per_period(spec))
    df = _offset_from_integer(harmonic_bin_spacing(spec))
    return GridExactness(abs(dt) <= EXACT_TOL and abs(df) <= EXACT_TOL, dt, df)


def exact_counts(spec: GridSpec) -> tuple[int, int]:
    """Integral (N_t, N_f) for an exact grid; raises GridInexactError otherwise."""
    check = is_grid_exact(spec)
    if not check.exact:
        raise GridInexactError(
            f"grid is not exact: N_t={samples_per_period(spec):.12g}, "
            f"N_f={harmonic_bin_spacing(spec):.12g}"
        )
    return round(samples_per_period(spec)), round(harmonic_bin_spacing(spec))


def grid_summary(spec: GridSpec) -> list[tuple[str, float]]:
    """Every derived grid quantity as ordered (name, value) pairs."""
    scale = alignment_scale(spec)
    return [
        ("f_s", spec.sample_rate_hz),
        ("N", spec.num_samples),
        ("t_p", spec.period_s),
        ("f_p", fundamental_frequency(spec)),
        ("delta_t", sample_interval(spec)),
        ("delta_f", dft_bin_spacing(spec)),
        ("N_t", samples_per_period(spec)),
        ("N_f", harmonic_bin_spacing(spec)),
        ("n_max", max_harmonics(spec)),
        ("a", scale.a),
        ("b", scale.b),
        ("delta_f_new", scale.new_freq_increment_hz),
        ("delta_t_new", scale.new_time_increment_s),
        ("f_end", scale.freq_end_hz),
        ("t_end", scale.time_end_s),
        ("n_end", scale.freq_end_index),
        ("m_end", scale.time_end_index),
        ("grid_exact", int(is_grid_exact(spec).exact)),
    ]
