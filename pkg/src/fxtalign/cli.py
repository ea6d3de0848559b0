"""Command-line front end.

    fxtalign gridinfo --fs 8000 --n 4000 --tp 0.01
    fxtalign synth    --fs 8000 --n 4000 --tp 0.01 --waveform harmonic --amps 1,1,1 --out x.csv
    fxtalign align    ... --out align.csv [--svg]
    fxtalign fxt      ... --out fxt.csv
    fxtalign pitch    --waveform from-wav --in rec.wav --sweep-min 0.002 --sweep-max 0.02 \\
                      --sweep-count 901 --out scores.csv

Exit status: 0 success, 1 usage or configuration error, 2 data error.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import __version__
from .csvio import (
    ALIGN_HEADER,
    FXT_HEADER,
    GRIDINFO_HEADER,
    PITCH_HEADER,
    SIGNAL_HEADER,
    format_value,
    render_csv,
    write_csv,
)
from .errors import DataError
from .fxt import fxt_combine, pitch_sweep
from .grid import GridSpec, grid_summary
from .resample import resample_spectrum
from .spectral import SampledSignal, dft, make_harmonic, make_impulse_train
from .wav import read_wav

EXIT_OK, EXIT_USAGE, EXIT_DATA = 0, 1, 2

COMMANDS = ("synth", "align", "fxt", "pitch", "gridinfo")
WAVEFORMS = ("impulse-train", "harmonic", "from-wav")


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    sample_rate_hz: float | None = None
    num_samples: int | None = None
    period_s: float | None = None
    waveform: str = "impulse-train"
    harmonic_amplitudes: tuple[float, ...] | None = None
    input_path: str | None = None
    output_path: str | None = None
    sweep_min_s: float | None = None
    sweep_max_s: float | None = None
    sweep_count: int | None = None
    emit_svg: bool = False
    workers: int = 1

    def validate(self) -> None:
        if self.command not in COMMANDS:
            raise UsageError(f"unknown command {self.command!r}")
        if self.waveform not in WAVEFORMS:
            raise UsageError(f"unknown waveform {self.waveform!r}")
        missing = []
        synthetic = self.waveform != "from-wav"
        if self.command == "gridinfo" or synthetic:
            missing += [flag for flag, value in (("--fs", self.sample_rate_hz), ("--n", self.num_samples))
                        if value is None]
        needs_period = self.command in ("gridinfo", "align", "fxt") or synthetic
        if needs_period and self.period_s is None:
            missing.append("--tp")
        if self.command == "pitch":
            missing += [flag for flag, value in (("--sweep-min", self.sweep_min_s),
                                                 ("--sweep-max", self.sweep_max_s),
                                                 ("--sweep-count", self.sweep_count))
                        if value is None]
        if self.command != "gridinfo" and not synthetic and self.input_path is None:
            missing.append("--in")
        if self.command != "gridinfo" and self.output_path is None:
            missing.append("--out")
        if missing:
            raise UsageError(f"{self.command} requires {', '.join(missing)}")
        if self.emit_svg and self.command == "gridinfo":
            raise UsageError("gridinfo has no plot; drop --svg")


def _load_signal(config: RunConfig) -> SampledSignal:
    if config.waveform == "from-wav":
        signal = read_wav(config.input_path, config.num_samples)
        if config.sample_rate_hz is not None and config.sample_rate_hz != signal.sample_rate_hz:
            raise UsageError(
                f"--fs {config.sample_rate_hz:g} disagrees with the file's rate "
                f"{signal.sample_rate_hz:g}"
            )
        return signal
    spec = GridSpec(config.sample_rate_hz, config.num_samples, config.period_s)
    if config.waveform == "impulse-train":
        return make_impulse_train(spec)
    amps = config.harmonic_amplitudes or (1.0,)
    return make_harmonic(spec, len(amps), amps)


def _grid_for(signal: SampledSignal, period_s: float) -> GridSpec:
    return GridSpec(signal.sample_rate_hz, len(signal), period_s)


def _maybe_plot(config: RunConfig, x, y, xlabel: str, ylabel: str, title: str) -> None:
    if not config.emit_svg:
        return
    from .plotting import plot_series, svg_path_for

    plot_series(x, y, svg_path_for(config.output_path), xlabel, ylabel, title)


def _gridinfo(config: RunConfig, out) -> None:
    spec = GridSpec(config.sample_rate_hz, config.num_samples, config.period_s)
    if config.output_path:
        write_csv(config.output_path, GRIDINFO_HEADER, grid_summary(spec))
    else:
        out.write(render_csv(GRIDINFO_HEADER, grid_summary(spec)))


def _synth(config: RunConfig, out) -> None:
    signal = _load_signal(config)
    rows = zip(range(len(signal)), signal.times, signal.samples)
    write_csv(config.output_path, SIGNAL_HEADER, rows)
    _maybe_plot(config, signal.times, signal.samples, "time (s)", "amplitude", "signal")


def _align(config: RunConfig, out) -> None:
    signal = _load_signal(config)
    spec = _grid_for(signal, config.period_s)
    spectrum = dft(signal)
    aligned = resample_spectrum(spectrum, spec)
    rows = zip(range(len(signal)), spectrum.frequencies, spectrum.magnitude,
               aligned.axis, aligned.values)
    write_csv(config.output_path, ALIGN_HEADER, rows)
    out.write(f"out_of_range_count,{aligned.out_of_range_count}\n")
    _maybe_plot(config, aligned.axis, aligned.values, "aligned frequency (Hz)", "|X|",
                "frequency-aligned spectrum")


def _fxt(config: RunConfig, out) -> None:
    signal = _load_signal(config)
    report = fxt_combine(signal, config.period_s)
    rows = zip(range(len(signal)), report.time_sequence, report.aligned_spectrum,
               report.product_sequence, report.convolution_sequence)
    write_csv(config.output_path, FXT_HEADER, rows)
    out.write(
        f"candidate_period_s={format_value(report.candidate_period_s)} "
        f"score={format_value(report.score)} "
        f"freq_agreement={format_value(report.freq_agreement)} "
        f"time_agreement={format_value(report.time_agreement)}\n"
    )
    _maybe_plot(config, np.arange(len(signal)), report.product_sequence, "sample", "product",
                "fxt product")


def _pitch(config: RunConfig, out) -> None:
    signal = _load_signal(config)
    estimate = pitch_sweep(signal, config.sweep_min_s, config.sweep_max_s, config.sweep_count,
                           workers=config.workers)
    write_csv(config.output_path, PITCH_HEADER, estimate.scores)
    out.write(
        f"best_period_s={format_value(estimate.best_period_s)} "
        f"best_frequency_hz={format_value(estimate.best_frequency_hz)}\n"
    )
    periods, scores = zip(*estimate.scores)
    _maybe_plot(config, periods, scores, "candidate period (s)", "score", "pitch sweep")


HANDLERS = {
    "gridinfo": _gridinfo,
    "synth": _synth,
    "align": _align,
    "fxt": _fxt,
    "pitch": _pitch,
}


def run(config: RunConfig, out=None, err=None) -> int:
    """Execute one command; returns the exit status."""
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        config.validate()
        HANDLERS[config.command](config, out)
    except DataError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_DATA
    except (UsageError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _amplitudes(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated list of numbers: {text!r}")
    return values


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--fs", type=float, help="sample rate (Hz)")
    common.add_argument("--n", type=int, help="number of samples")
    common.add_argument("--tp", type=float, help="signal or candidate period (s)")
    common.add_argument("--waveform", choices=WAVEFORMS, default="impulse-train")
    common.add_argument("--amps", type=_amplitudes, help="harmonic amplitudes, comma separated")
    common.add_argument("--in", dest="input_path", help="16-bit PCM mono WAV input")
    common.add_argument("--out", dest="output_path", help="CSV output path")
    common.add_argument("--sweep-min", type=float, help="shortest candidate period (s)")
    common.add_argument("--sweep-max", type=float, help="longest candidate period (s)")
    common.add_argument("--sweep-count", type=int, help="number of candidate periods")
    common.add_argument("--svg", action="store_true", help="also write an SVG plot next to --out")
    common.add_argument("--workers", type=int, default=1, help="threads for the pitch sweep")

    parser = _Parser(prog="fxtalign", description="Align periodic signals with their spectra.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    helps = {
        "gridinfo": "print every grid and alignment quantity as key,value CSV",
        "synth": "write a synthetic (or decoded) signal as CSV",
        "align": "write the spectrum and its frequency-aligned resampling",
        "fxt": "write the fxt combination for one candidate period",
        "pitch": "sweep candidate periods and report the best",
    }
    for name in COMMANDS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        sample_rate_hz=args.fs,
        num_samples=args.n,
        period_s=args.tp,
        waveform=args.waveform,
        harmonic_amplitudes=args.amps,
        input_path=args.input_path,
        output_path=args.output_path,
        sweep_min_s=args.sweep_min,
        sweep_max_s=args.sweep_max,
        sweep_count=args.sweep_count,
        emit_svg=args.svg,
        workers=args.workers,
    )


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return run(config_from_args(args))


if __name__ == "__main__":
    sys.exit(main())
