"""Arbitrary-length DFT and synthesis of impulse trains and periodic signals.

The transform is a vectorised radix-2 FFT for power-of-two lengths and
Bluestein's chirp-z algorithm for every other length, so a grid with
``N = N_t * N_f`` never has to be padded.  Spectra are kept full length
(bins ``0 .. N-1`` covering ``[0, f_s)``).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    AliasingError,
    InvalidInputError,
    NonRealSignalError,
    OutOfRangeError,
    OverlapError,
)
from .grid import GridSpec, exact_counts, fundamental_frequency, max_harmonics

IMAG_TOL = 1e-9

# below this size the radix-2 recursion bottoms out in a dense matrix product
_DENSE_BASE = 32


def _readonly(arr: np.ndarray) -> np.ndarray:
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class SampledSignal:
    """Real samples ``x_n = x(n / f_s)``, n = 0 .. N-1."""

    samples: np.ndarray
    sample_rate_hz: float

    def __post_init__(self):
        x = np.array(self.samples, dtype=float).ravel()
        if x.size < 2:
            raise InvalidInputError(f"a signal needs at least 2 samples, got {x.size}")
        if not np.all(np.isfinite(x)):
            raise InvalidInputError("signal contains non-finite samples")
        if not (math.isfinite(self.sample_rate_hz) and self.sample_rate_hz > 0):
            raise InvalidInputError(f"sample rate must be positive, got {self.sample_rate_hz!r}")
        object.__setattr__(self, "samples", _readonly(x))
        object.__setattr__(self, "sample_rate_hz", float(self.sample_rate_hz))

    def __len__(self) -> int:
        return self.samples.size

    @property
    def times(self) -> np.ndarray:
        return np.arange(len(self)) / self.sample_rate_hz


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Full-length DFT bins with their spacing ``f_s / N``."""

    bins: np.ndarray
    bin_spacing_hz: float

    def __post_init__(self):
        X = np.array(self.bins, dtype=complex).ravel()
        if X.size < 2:
            raise InvalidInputError(f"a spectrum needs at least 2 bins, got {X.size}")
        if not (math.isfinite(self.bin_spacing_hz) and self.bin_spacing_hz > 0):
            raise InvalidInputError(f"bin spacing must be positive, got {self.bin_spacing_hz!r}")
        object.__setattr__(self, "bins", _readonly(X))
        object.__setattr__(self, "bin_spacing_hz", float(self.bin_spacing_hz))

    def __len__(self) -> int:
        return self.bins.size

    @property
    def sample_rate_hz(self) -> float:
        return self.bin_spacing_hz * len(self)

    @property
    def frequencies(self) -> np.ndarray:
        return np.arange(len(self)) * self.bin_spacing_hz

    @property
    def magnitude(self) -> np.ndarray:
        return np.abs(self.bins)


def _fft_pow2(x: np.ndarray) -> np.ndarray:
    """Forward FFT of a power-of-two length complex vector."""
    n = x.size
    base = min(n, _DENSE_BASE)
    k = np.arange(base)
    dense = np.exp(-2j * np.pi * (np.outer(k, k) % base) / base)
    # columns hold the decimated subsequences x[j::n//base]
    X = dense @ x.reshape(base, -1)
    while X.shape[0] < n:
        half = X.shape[1] // 2
        even, odd = X[:, :half], X[:, half:]
        twiddle = np.exp(-1j * np.pi * np.arange(X.shape[0]) / X.shape[0])[:, None]
        X = np.vstack([even + twiddle * odd, even - twiddle * odd])
    return X.ravel()


def _ifft_pow2(X: np.ndarray) -> np.ndarray:
    return np.conj(_fft_pow2(np.conj(X))) / X.size


def _bluestein(x: np.ndarray) -> np.ndarray:
    n = x.size
    m = 1 << (2 * n - 1).bit_length()
    k = np.arange(n)
    # n^2 mod 2N keeps the chirp phase exact for large N
    chirp = np.exp(-1j * np.pi * ((k * k) % (2 * n)) / n)
    a = np.zeros(m, dtype=complex)
    a[:n] = x * chirp
    b = np.zeros(m, dtype=complex)
    b[:n] = np.conj(chirp)
    b[m - n + 1:] = np.conj(chirp[1:])[::-1]
    conv = _ifft_pow2(_fft_pow2(a) * _fft_pow2(b))
    return conv[:n] * chirp


def fft(x) -> np.ndarray:
    """Unnormalised forward DFT of any length >= 1."""
    x = np.asarray(x, dtype=complex).ravel()
    n = x.size
    if n == 0:
        raise InvalidInputError("cannot transform an empty sequence")
    if n & (n - 1) == 0:
        return _fft_pow2(x)
    return _bluestein(x)


def ifft(X) -> np.ndarray:
    X = np.asarray(X, dtype=complex).ravel()
    return np.conj(fft(np.conj(X))) / X.size


def dft(signal: SampledSignal) -> Spectrum:
    """``X_k = sum_n x_n exp(-j 2 pi k n / N)`` for k = 0 .. N-1."""
    if not isinstance(signal, SampledSignal):
        signal = SampledSignal(*signal)
    n = len(signal)
    return Spectrum(fft(signal.samples), signal.sample_rate_hz / n)


def idft(spectrum: Spectrum) -> SampledSignal:
    """Inverse of :func:`dft`; refuses spectra of non-real signals."""
    z = ifft(spectrum.bins)
    scale = float(np.max(np.abs(z)))
    residue = float(np.max(np.abs(z.imag)))
    if residue > IMAG_TOL * max(scale, np.finfo(float).tiny):
        raise NonRealSignalError(
            f"imaginary residue {residue:.3g} exceeds {IMAG_TOL:g} of signal scale {scale:.3g}"
        )
    return SampledSignal(z.real, spectrum.sample_rate_hz)


def circular_convolve(x, y) -> np.ndarray:
    """Circular convolution of two equal-length real sequences."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.shape != y.shape:
        raise InvalidInputError(f"length mismatch: {x.size} vs {y.size}")
    return ifft(fft(x) * fft(y)).real


def bin_of_frequency(f: float, spec: GridSpec) -> int:
    """Nearest DFT bin to frequency ``f``; halves round away from zero."""
    fs, n = spec.sample_rate_hz, spec.num_samples
    if not 0.0 <= f <= fs:
        raise OutOfRangeError(f"frequency {f!r} Hz outside [0, {fs:g}]")
    k = math.floor(n * f / fs + 0.5)
    return min(k, n - 1)


def make_impulse_train(spec: GridSpec) -> SampledSignal:
    """Unit impulses every N_t samples, starting at n = 0."""
    n_t, _ = exact_counts(spec)
    x = np.zeros(spec.num_samples)
    x[::n_t] = 1.0
    return SampledSignal(x, spec.sample_rate_hz)


def make_periodic(shape: Sequence[float], spec: GridSpec) -> SampledSignal:
    """One-period ``shape`` circularly convolved with the unit impulse train."""
    n_t, _ = exact_counts(spec)
    h = np.asarray(shape, dtype=float).ravel()
    if h.size == 0:
        raise InvalidInputError("shape must have at least one sample")
    if h.size > n_t:
        raise OverlapError(f"shape of {h.size} samples is longer than the period ({n_t})")
    period = np.zeros(n_t)
    period[: h.size] = h
    reps = -(-spec.num_samples // n_t)
    return SampledSignal(np.tile(period, reps)[: spec.num_samples], spec.sample_rate_hz)


def make_harmonic(spec: GridSpec, num_harmonics: int, amplitudes: Sequence[float]) -> SampledSignal:
    """Zero-phase cosine harmonics ``sum_m A_m cos(2 pi m f_p n / f_s)``."""
    amps = np.asarray(amplitudes, dtype=float).ravel()
    if amps.size != num_harmonics:
        raise InvalidInputError(
            f"expected {num_harmonics} amplitudes, got {amps.size}"
        )
    limit = max_harmonics(spec)
    if num_harmonics > limit:
        raise AliasingError(
            f"{num_harmonics} harmonics requested but only {limit} fit below Nyquist"
        )
    n = np.arange(spec.num_samples)
    cycles = fundamental_frequency(spec) / spec.sample_rate_hz
    x = np.zeros(spec.num_samples)
    for m, amp in enumerate(amps, start=1):
        # reduce the phase to one turn before scaling by 2 pi
        x += amp * np.cos(2 * np.pi * np.mod(m * n * cycles, 1.0))
    return SampledSignal(x, spec.sample_rate_hz)
