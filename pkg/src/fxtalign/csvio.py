"""Deterministic CSV output."""

from __future__ import annotations

import csv
import io
import numbers
from typing import Iterable, Sequence, TextIO

from .errors import DataError

SIGNAL_HEADER = ("index", "time_s", "amplitude")
SPECTRUM_HEADER = ("index", "freq_hz", "magnitude")
ALIGN_HEADER = SPECTRUM_HEADER + ("aligned_freq_hz", "aligned_magnitude")
FXT_HEADER = ("index", "time_sequence", "aligned_spectrum", "product", "convolution")
PITCH_HEADER = ("candidate_period_s", "score")
GRIDINFO_HEADER = ("key", "value")


def format_value(value) -> str:
    """Integers verbatim, reals at 12 significant digits in shortest form."""
    if isinstance(value, str):
        return value
    if isinstance(value, numbers.Integral):
        return str(int(value))
    text = format(float(value), ".12g")
    return "0" if text == "-0" else text


def write_rows(stream: TextIO, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([format_value(v) for v in row])


def render_csv(header: Sequence[str], rows: Iterable[Sequence]) -> str:
    buf = io.StringIO()
    write_rows(buf, header, rows)
    return buf.getvalue()


def write_csv(path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    text = render_csv(header, rows)
    try:
        with open(path, "w", newline="", encoding="ascii") as fh:
            fh.write(text)
    except OSError as exc:
        raise DataError(f"cannot write {path}: {exc.strerror or exc}") from exc


def read_csv(path) -> tuple[list[str], list[list[str]]]:
    with open(path, newline="", encoding="ascii") as fh:
        rows = list(csv.reader(fh))
    return rows[0], rows[1:]
