"""Time/frequency alignment of sampled periodic signals and fxt pitch estimation."""

__version__ = "0.1.0"

from .errors import (  # noqa: E402
    AliasingError,
    DataError,
    GridInexactError,
    InvalidCandidateError,
    InvalidGridError,
    InvalidInputError,
    NonRealSignalError,
    OutOfRangeError,
    OverlapError,
)
from .fxt import FxtReport, PitchEstimate, fxt_combine, pitch_sweep  # noqa: E402
from .grid import (  # noqa: E402
    AlignmentScale,
    GridSpec,
    alignment_scale,
    dft_bin_spacing,
    flax_identity_check,
    fundamental_frequency,
    harmonic_bin_spacing,
    is_grid_exact,
    max_harmonics,
    samples_per_period,
)
from .resample import AlignedSequence, linear_interpolate, resample_spectrum, resample_time  # noqa: E402
from .spectral import (  # noqa: E402
    SampledSignal,
    Spectrum,
    bin_of_frequency,
    dft,
    idft,
    make_harmonic,
    make_impulse_train,
    make_periodic,
)
from .wav import read_wav  # noqa: E402
