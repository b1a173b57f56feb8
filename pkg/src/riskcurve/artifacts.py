"""Sweep artifacts on disk: CSV, JSON, gnuplot ``.dat`` and a plain SVG chart.

The SVG is written by hand (axes, ticks, one polyline) so output bytes
depend only on the data and this module.
"""
from __future__ import annotations

import csv
import io
import json
import math
import os
import re
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from .exact import ProbSeries, format_decimal

__all__ = ["SweepArtifact", "write_atomic", "render_svg", "write_sweep"]

CSV_HEADER = ["n", "prob_fraction", "prob_decimal"]


def write_atomic(path: Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _decimal(value) -> str:
    if isinstance(value, Fraction):
        return format_decimal(value)
    return f"{float(value):.10f}"


@dataclass
class SweepArtifact:
    """A risk curve plus everything needed to regenerate it.

    ``values`` holds exact fractions for the exact and recurrence methods and
    floats for ``clt`` and ``mc``.
    """

    label: str
    method: str
    ns: list[int]
    values: list
    strict: bool = True
    params: dict = field(default_factory=dict)
    command: str = ""

    @classmethod
    def from_series(cls, series: ProbSeries, method: str, command: str = "", params=None) -> "SweepArtifact":
        return cls(
            series.gamble.label or "table",
            method,
            [n for n, _ in series.values],
            [p for _, p in series.values],
            series.strict,
            dict(params or {}),
            command,
        )

    @property
    def stem(self) -> str:
        safe = re.sub(r"[^A-Za-z0-9]+", "_", self.label).strip("_") or "table"
        return f"{safe}_{self.method}_n{self.ns[-1] if self.ns else 0}"

    def metadata(self) -> dict:
        return {
            "label": self.label,
            "method": self.method,
            "strict": self.strict,
            "n_range": [self.ns[0], self.ns[-1]] if self.ns else [],
            "params": self.params,
            "command": self.command,
        }

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_HEADER)
        for n, v in zip(self.ns, self.values):
            w.writerow([n, str(v) if isinstance(v, Fraction) else "", _decimal(v)])
        return buf.getvalue()

    def to_json(self) -> str:
        rows = [
            {"n": n, "prob_fraction": str(v) if isinstance(v, Fraction) else None, "prob_decimal": _decimal(v)}
            for n, v in zip(self.ns, self.values)
        ]
        return json.dumps({"meta": self.metadata(), "rows": rows}, indent=1) + "\n"

    def to_dat(self) -> str:
        lines = [f"# {self.label} ({self.method}); regenerate with: {self.command}", "# n prob"]
        lines += [f"{n} {_decimal(v)}" for n, v in zip(self.ns, self.values)]
        return "\n".join(lines) + "\n"


def _nice_step(span: float, target: int = 6) -> float:
    raw = span / max(target, 1)
    mag = 10 ** math.floor(math.log10(raw)) if raw > 0 else 1
    for m in (1, 2, 2.5, 5, 10):
        if raw <= m * mag:
            return m * mag
    return 10 * mag


def render_svg(
    ns: Sequence[int],
    ys: Sequence[float],
    title: str,
    width: int = 640,
    height: int = 400,
    comment: str = "",
) -> str:
    """Line chart of probability against number of repeats."""
    left, right, top, bottom = 60, 20, 40, 50
    pw, ph = width - left - right, height - top - bottom
    x0, x1 = (min(ns), max(ns)) if ns else (0, 1)
    if x1 == x0:
        x1 = x0 + 1
    y0, y1 = 0.0, 1.0

    def sx(x):
        return left + (x - x0) / (x1 - x0) * pw

    def sy(y):
        return top + (1.0 - (y - y0) / (y1 - y0)) * ph

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">'
    ]
    if comment:
        out.append(f"<!-- {comment.replace('--', '- -')} -->")
    out.append(f'<rect x="0" y="0" width="{width}" height="{height}" fill="white"/>')
    out.append(
        f'<text x="{width / 2:.1f}" y="{top / 2 + 5:.1f}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="14">{_escape(title)}</text>'
    )
    # axes
    out.append(
        f'<path d="M{left},{top} L{left},{top + ph} L{left + pw},{top + ph}" '
        f'stroke="black" fill="none" stroke-width="1"/>'
    )
    step = _nice_step(x1 - x0)
    t = math.ceil(x0 / step) * step
    while t <= x1 + 1e-9:
        x = sx(t)
        out.append(f'<line x1="{x:.2f}" y1="{top + ph}" x2="{x:.2f}" y2="{top + ph + 5}" stroke="black"/>')
        out.append(
            f'<text x="{x:.2f}" y="{top + ph + 18}" text-anchor="middle" '
            f'font-family="sans-serif" font-size="11">{_fmt_tick(t)}</text>'
        )
        t += step
    for k in range(6):
        yv = k / 5
        y = sy(yv)
        out.append(f'<line x1="{left - 5}" y1="{y:.2f}" x2="{left}" y2="{y:.2f}" stroke="black"/>')
        out.append(
            f'<line x1="{left}" y1="{y:.2f}" x2="{left + pw}" y2="{y:.2f}" stroke="#dddddd"/>'
        )
        out.append(
            f'<text x="{left - 8}" y="{y + 4:.2f}" text-anchor="end" '
            f'font-family="sans-serif" font-size="11">{yv:.1f}</text>'
        )
    out.append(
        f'<text x="{left + pw / 2:.1f}" y="{height - 10}" text-anchor="middle" '
        f'font-family="sans-serif" font-size="12">n (repeats)</text>'
    )
    out.append(
        f'<text x="15" y="{top + ph / 2:.1f}" text-anchor="middle" font-family="sans-serif" '
        f'font-size="12" transform="rotate(-90 15 {top + ph / 2:.1f})">P(ahead after n)</text>'
    )
    pts = " ".join(f"{sx(n):.2f},{sy(min(max(y, 0.0), 1.0)):.2f}" for n, y in zip(ns, ys))
    out.append(f'<polyline points="{pts}" fill="none" stroke="#1f4e9c" stroke-width="1.2"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _fmt_tick(t: float) -> str:
    return str(int(round(t))) if abs(t - round(t)) < 1e-9 else f"{t:g}"


def _escape(s: str) -> str:
    return s.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")


def write_sweep(artifact: SweepArtifact, out_dir: Path, fmt: str = "csv") -> dict[str, Path]:
    """Write data (CSV or JSON), SVG, ``.dat`` and metadata; return the paths."""
    out_dir = Path(out_dir)
    stem = artifact.stem
    paths = {}
    if fmt == "json":
        paths["json"] = out_dir / f"{stem}.json"
        write_atomic(paths["json"], artifact.to_json())
    else:
        paths["csv"] = out_dir / f"{stem}.csv"
        write_atomic(paths["csv"], artifact.to_csv())
    paths["dat"] = out_dir / f"{stem}.dat"
    write_atomic(paths["dat"], artifact.to_dat())
    paths["svg"] = out_dir / f"{stem}.svg"
    title = f"{artifact.label} ({artifact.method})"
    ys = [float(v) for v in artifact.values]
    write_atomic(paths["svg"], render_svg(artifact.ns, ys, title, comment=artifact.command))
    paths["meta"] = out_dir / f"{stem}.meta.json"
    write_atomic(paths["meta"], json.dumps(artifact.metadata(), indent=1) + "\n")
    return paths
