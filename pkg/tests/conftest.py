import struct
import wave

import numpy as np
import pytest


def write_pcm16(path, samples, rate=8000, channels=1):
    with wave.open(str(path), "wb") as w:
        w.setnchannels(channels)
        w.setsampwidth(2)
        w.setframerate(rate)
        w.writeframes(np.asarray(samples, dtype="<i2").tobytes())
    return path


def raw_wav(fmt_fields, data: bytes, declared_data_size=None):
    """RIFF bytes with an arbitrary 'fmt ' body and a possibly lying data size."""
    fmt = struct.pack("<HHIIHH", *fmt_fields)
    size = len(data) if declared_data_size is None else declared_data_size
    body = b"WAVE" + b"fmt " + struct.pack("<I", len(fmt)) + fmt + b"data" + struct.pack("<I", size) + data
    return b"RIFF" + struct.pack("<I", len(body)) + body


@pytest.fixture
def wav_writer(tmp_path):
    def make(samples, rate=8000, name="x.wav"):
        return write_pcm16(tmp_path / name, samples, rate)
    return make


# one pass/fail line per acceptance criterion in the terminal summary
_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(label): acceptance criterion this test gates")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    label = marker.args[0]
    if report.when == "call" or (report.when == "setup" and report.failed):
        previous = _criteria.get(label, True)
        _criteria[label] = previous and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for label in sorted(_criteria):
        status = "PASS" if _criteria[label] else "FAIL"
        terminalreporter.write_line(f"{status}  {label}")
