import subprocess
import sys

import numpy as np
import pytest

from fxtalign.cli import RunConfig, main, run
from fxtalign.csvio import read_csv
from fxtalign.grid import GridSpec, grid_summary
from fxtalign.spectral import make_harmonic

from .conftest import write_pcm16

HARMONIC = ["--fs", "8000", "--n", "4000", "--tp", "0.01", "--waveform", "harmonic", "--amps", "1,1,1,1,1"]
SWEEP = ["--sweep-min", "0.005", "--sweep-max", "0.02", "--sweep-count", "601"]


def test_gridinfo(capsys):
    assert main(["gridinfo", "--fs", "8000", "--tp", "0.01", "--n", "4000"]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "key,value"
    assert {"a,1.6", "N_t,80", "N_f,50", "b,0.625", "n_end,2500.375", "m_end,6399.4"} <= set(lines)


def test_gridinfo_agrees_with_core(capsys):
    main(["gridinfo", "--fs", "44100", "--tp", "0.00227", "--n", "4410"])
    rows = dict(line.split(",") for line in capsys.readouterr().out.splitlines()[1:])
    for key, value in grid_summary(GridSpec(44100, 4410, 0.00227)):
        assert float(rows[key]) == pytest.approx(value, rel=1e-11)


def test_synth_impulse_train(tmp_path):
    out = tmp_path / "s.csv"
    assert main(["synth", "--fs", "1000", "--n", "16", "--tp", "0.004", "--out", str(out)]) == 0
    header, rows = read_csv(out)
    assert header == ["index", "time_s", "amplitude"]
    ones = [int(r[0]) for r in rows if r[2] == "1"]
    assert ones == [0, 4, 8, 12]
    assert all(r[2] in ("0", "1") for r in rows)


def test_synth_csv_resynthesises(tmp_path):
    out = tmp_path / "h.csv"
    main(["synth", *HARMONIC, "--out", str(out)])
    _, rows = read_csv(out)
    parsed = np.array([float(r[2]) for r in rows])
    again = make_harmonic(GridSpec(8000, 4000, 0.01), 5, [1] * 5).samples
    np.testing.assert_array_equal(parsed, [float(f"{v:.12g}") for v in again])


def test_align(tmp_path, capsys):
    out = tmp_path / "a.csv"
    assert main(["align", "--fs", "8000", "--n", "4000", "--tp", "0.01", "--out", str(out)]) == 0
    assert "out_of_range_count,0" in capsys.readouterr().out
    header, rows = read_csv(out)
    assert header[:3] == ["index", "freq_hz", "magnitude"]
    aligned = np.array([float(r[4]) for r in rows])
    assert set(np.flatnonzero(aligned > 25) % 80) == {0}
    assert float(rows[1][3]) == 1.25


def test_fxt(tmp_path, capsys):
    out = tmp_path / "f.csv"
    assert main(["fxt", *HARMONIC, "--out", str(out)]) == 0
    summary = capsys.readouterr().out
    assert summary.startswith("candidate_period_s=0.01 score=")
    header, rows = read_csv(out)
    assert header == ["index", "time_sequence", "aligned_spectrum", "product", "convolution"]
    assert len(rows) == 4000


def test_pitch_summary(tmp_path, capsys):
    out = tmp_path / "p.csv"
    assert main(["pitch", *HARMONIC, *SWEEP, "--out", str(out)]) == 0
    summary = capsys.readouterr().out.strip()
    fields = dict(f.split("=") for f in summary.split())
    # one sweep step is 2.5e-5 s in period
    assert abs(1 / float(fields["best_frequency_hz"]) - 0.01) <= 0.015 / 600
    header, rows = read_csv(out)
    assert header == ["candidate_period_s", "score"] and len(rows) == 601


def test_pitch_from_wav(tmp_path, capsys):
    x = make_harmonic(GridSpec(8000, 4000, 0.01), 5, [1] * 5).samples
    path = write_pcm16(tmp_path / "h.wav", np.round(x / 5 * 30000))
    out = tmp_path / "p.csv"
    code = main(["pitch", "--waveform", "from-wav", "--in", str(path), *SWEEP, "--out", str(out)])
    assert code == 0
    assert "best_period_s=0.01 " in capsys.readouterr().out


def test_pitch_deterministic_bytes(tmp_path):
    a, b, c = tmp_path / "a.csv", tmp_path / "b.csv", tmp_path / "c.csv"
    main(["pitch", *HARMONIC, *SWEEP, "--out", str(a)])
    main(["pitch", *HARMONIC, *SWEEP, "--out", str(b)])
    main(["pitch", *HARMONIC, *SWEEP, "--workers", "4", "--out", str(c)])
    assert a.read_bytes() == b.read_bytes() == c.read_bytes()


def test_svg_written(tmp_path):
    out = tmp_path / "p.csv"
    main(["pitch", *HARMONIC, "--sweep-min", "0.005", "--sweep-max", "0.02", "--sweep-count", "31",
          "--out", str(out), "--svg"])
    svg = (tmp_path / "p.svg").read_text()
    assert svg.lstrip().startswith("<?xml") and "<svg" in svg
    assert 'width="800pt" height="400pt"' in svg


@pytest.mark.parametrize("argv", [
    ["synth", "--fs", "8000", "--n", "4000"],                               # no --tp / --out
    ["pitch", *HARMONIC, "--out", "x.csv"],                                  # no sweep
    ["gridinfo", "--fs", "8000", "--n", "4000", "--tp", "1.0"],               # period too long
    ["synth", "--fs", "8000", "--n", "4000", "--tp", "0.0103", "--out", "x.csv"],  # inexact grid
    ["fxt", "--waveform", "from-wav", "--tp", "0.01", "--out", "x.csv"],     # no --in
])
def test_config_errors_exit_1(argv, tmp_path, monkeypatch, capsys):
    monkeypatch.chdir(tmp_path)
    assert main(argv) == 1
    assert capsys.readouterr().err.startswith("error:")


def test_argparse_errors_exit_1(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 1
    with pytest.raises(SystemExit) as exc:
        main(["gridinfo", "--fs", "abc"])
    assert exc.value.code == 1


def test_data_errors_exit_2(tmp_path, capsys):
    bad = tmp_path / "bad.wav"
    bad.write_bytes(b"RIFF....junk")
    assert main(["pitch", "--waveform", "from-wav", "--in", str(bad), *SWEEP,
                 "--out", str(tmp_path / "p.csv")]) == 2
    assert "error:" in capsys.readouterr().err
    assert main(["synth", "--fs", "1000", "--n", "16", "--tp", "0.004",
                 "--out", str(tmp_path / "missing" / "s.csv")]) == 2


def test_run_accepts_config_directly(tmp_path):
    cfg = RunConfig(command="synth", sample_rate_hz=1000, num_samples=8, period_s=0.004,
                    output_path=str(tmp_path / "s.csv"))
    assert run(cfg) == 0


def test_module_entry_point(tmp_path):
    proc = subprocess.run([sys.executable, "-m", "fxtalign", "gridinfo", "--fs", "8000", "--n", "4000",
                           "--tp", "0.01"], capture_output=True, text=True)
    assert proc.returncode == 0 and "a,1.6" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "fxtalign", "synth"], capture_output=True, text=True)
    assert proc.returncode == 1


def test_svg_deterministic(tmp_path):
    paths = [tmp_path / "a.csv", tmp_path / "b.csv"]
    for path, workers in zip(paths, ["1", "4"]):
        main(["pitch", *HARMONIC, "--sweep-min", "0.005", "--sweep-max", "0.02", "--sweep-count", "31",
              "--workers", workers, "--out", str(path), "--svg"])
    assert (tmp_path / "a.svg").read_bytes() == (tmp_path / "b.svg").read_bytes()
