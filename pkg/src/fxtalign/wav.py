"""Minimal RIFF/WAVE reader for 16-bit PCM mono files."""

from __future__ import annotations

import struct

import numpy as np

from .errors import DataError
from .spectral import SampledSignal

PCM = 1


def _chunks(data: bytes):
    pos = 12
    while pos + 8 <= len(data):
        cid, size = struct.unpack_from("<4sI", data, pos)
        yield cid, pos + 8, size
        pos += 8 + size + (size & 1)


def read_wav(path, num_samples: int | None = None) -> SampledSignal:
    """Read a PCM16 mono WAV file as samples in ``[-1, 1)``.

    With ``num_samples`` the record is truncated or zero-padded to that length.
    """
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc.strerror or exc}") from exc

    if len(data) < 12 or data[:4] != b"RIFF" or data[8:12] != b"WAVE":
        raise DataError(f"{path}: missing RIFF/WAVE header")

    fmt = None
    samples = None
    for cid, start, size in _chunks(data):
        if cid == b"fmt ":
            if size < 16 or start + 16 > len(data):
                raise DataError(f"{path}: 'fmt ' chunk is truncated")
            tag, channels, rate, _, _, bits = struct.unpack_from("<HHIIHH", data, start)
            if tag != PCM:
                raise DataError(f"{path}: 'fmt ' chunk declares format tag {tag}, only PCM (1) is supported")
            if channels != 1:
                raise DataError(f"{path}: 'fmt ' chunk declares {channels} channels, only mono is supported")
            if bits != 16:
                raise DataError(f"{path}: 'fmt ' chunk declares {bits} bits per sample, only 16 is supported")
            if rate == 0:
                raise DataError(f"{path}: 'fmt ' chunk declares a zero sample rate")
            fmt = rate
        elif cid == b"data":
            if fmt is None:
                raise DataError(f"{path}: 'data' chunk precedes 'fmt ' chunk")
            if start + size > len(data):
                raise DataError(
                    f"{path}: 'data' chunk declares {size} bytes but only "
                    f"{len(data) - start} are present"
                )
            if size % 2:
                raise DataError(f"{path}: 'data' chunk size {size} is not a whole number of samples")
            samples = np.frombuffer(data, dtype="<i2", count=size // 2, offset=start) / 32768.0
            break

    if fmt is None:
        raise DataError(f"{path}: no 'fmt ' chunk")
    if samples is None:
        raise DataError(f"{path}: no 'data' chunk")
    if num_samples is not None:
        out = np.zeros(num_samples)
        keep = min(num_samples, samples.size)
        out[:keep] = samples[:keep]
        samples = out
    if samples.size < 2:
        raise DataError(f"{path}: 'data' chunk holds {samples.size} samples, need at least 2")
    return SampledSignal(samples, float(fmt))
