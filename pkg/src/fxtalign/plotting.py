"""Single-series SVG line plots written next to CSV outputs."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .errors import DataError  # noqa: E402

WIDTH_PX, HEIGHT_PX = 800, 400
# SVG user units are points at 72 per inch
DPI = 72

STYLE = {
    "svg.hashsalt": "fxtalign",
    "svg.fonttype": "none",
    "font.size": 10,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "lines.linewidth": 1.0,
}


def svg_path_for(csv_path) -> Path:
    return Path(csv_path).with_suffix(".svg")


def plot_series(x, y, path, xlabel: str = "", ylabel: str = "", title: str = "") -> Path:
    """Line plot of one series on a fixed 800x400 canvas; returns the file written."""
    path = Path(path)
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots(figsize=(WIDTH_PX / DPI, HEIGHT_PX / DPI), dpi=DPI)
        try:
            ax.plot(x, y, color="C0")
            ax.set_xlabel(xlabel)
            ax.set_ylabel(ylabel)
            if title:
                ax.set_title(title)
            fig.tight_layout()
            fig.savefig(path, format="svg", metadata={"Date": None})
        except OSError as exc:
            raise DataError(f"cannot write {path}: {exc.strerror or exc}") from exc
        finally:
            plt.close(fig)
    return path
