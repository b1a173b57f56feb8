"""Regenerate the nine risk-averseness graphs as CSV, .dat, SVG and metadata.

Six exact curves for the two-outcome family G_i and three St. Petersburg
curves (one exact, two from the normal approximation).  Run from anywhere:

    python demos/regenerate_figures.py --out figures

Each metadata file carries the equivalent ``riskcurve sweep`` command.
"""
from __future__ import annotations

import argparse
import shlex
import time
from pathlib import Path

from riskcurve import g_family_table, prob_pos_clt, prob_pos_sweep, st_pete_table
from riskcurve.artifacts import SweepArtifact, write_sweep

# (name, table spec, n_max, method)
FIGURES = [
    ("g2", "gfamily:2", 200, "exact"),
    ("g3", "gfamily:3", 600, "exact"),
    ("g4", "gfamily:4", 700, "exact"),
    ("g8", "gfamily:8", 3000, "exact"),
    ("g9", "gfamily:9", 3000, "exact"),
    ("g10", "gfamily:10", 3000, "exact"),
    ("stpete7", "stpete:7,7", 300, "exact"),
    ("stpete7_clt", "stpete:7,7", 2000, "clt"),
    ("stpete11_clt", "stpete:11,11", 2000, "clt"),
]


def _table(spec: str):
    kind, args = spec.split(":")
    nums = [int(a) for a in args.split(",")]
    return g_family_table(*nums) if kind == "gfamily" else st_pete_table(*nums)


def build(spec: str, n_max: int, method: str) -> SweepArtifact:
    table = _table(spec)
    command = shlex.join(
        ["riskcurve", "sweep", spec, "--n-max", str(n_max), "--method", method, "--strict", "--format", "csv"]
    )
    params = {"n_max": n_max}
    if method == "exact":
        return SweepArtifact.from_series(prob_pos_sweep(table, n_max), "exact", command, params)
    ns = list(range(1, n_max + 1))
    return SweepArtifact(table.label, "clt", ns, [prob_pos_clt(table, n) for n in ns], True, params, command)


def regenerate(out_dir: Path, only: set[str] | None = None) -> dict[str, dict[str, Path]]:
    written = {}
    for name, spec, n_max, method in FIGURES:
        if only and name not in only:
            continue
        t0 = time.perf_counter()
        written[name] = write_sweep(build(spec, n_max, method), out_dir)
        print(f"{name:>13}: {spec} n<={n_max} ({method}) in {time.perf_counter() - t0:.1f} s")
    return written


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default="figures", type=Path)
    ap.add_argument("--only", nargs="*", choices=[f[0] for f in FIGURES])
    args = ap.parse_args()
    regenerate(args.out, set(args.only or ()))


if __name__ == "__main__":
    main()
