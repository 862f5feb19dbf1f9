"""Sweeps of the two-parameter family pq_state over [-1, 1]^2.

Produces per-cell decision records, a lossless CSV rendering and a static
SVG region map with the analytic boundary curves overlaid.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .decide import Case, decide, pq_state

__all__ = ["SweepRecord", "sweep_grid", "records_to_csv", "parse_csv", "sweep_svg"]

CSV_HEADER = "p,q,case,positive,ppt,separable,f_max"


@dataclass(frozen=True)
class SweepRecord:
    p: float
    q: float
    case: Case
    positive: bool
    ppt: bool
    separable: bool
    f_max: float


def sweep_grid(grid_n: int = 201) -> list[SweepRecord]:
    """Decision records on a grid_n x grid_n lattice over [-1, 1]^2,
    row-major with p varying slowest."""
    if grid_n < 2:
        raise ValueError("grid_n must be at least 2")
    values = np.linspace(-1.0, 1.0, int(grid_n))
    records = []
    for p in values:
        for q in values:
            v = decide(pq_state(float(p), float(q)), include_witness=False)
            records.append(
                SweepRecord(
                    p=float(p),
                    q=float(q),
                    case=v.case,
                    positive=v.positive,
                    ppt=v.ppt,
                    separable=v.separable,
                    f_max=v.f_max,
                )
            )
    return records


def _fmt(x: float) -> str:
    return format(x, ".17g")


def records_to_csv(records: list[SweepRecord]) -> str:
    """CSV text with 17-significant-digit numbers (lossless float
    round-trip), lowercase booleans, '.' decimal separator and newline
    line endings."""
    lines = [CSV_HEADER]
    for r in records:
        lines.append(
            ",".join(
                [
                    _fmt(r.p),
                    _fmt(r.q),
                    r.case.value,
                    "true" if r.positive else "false",
                    "true" if r.ppt else "false",
                    "true" if r.separable else "false",
                    _fmt(r.f_max),
                ]
            )
        )
    return "\n".join(lines) + "\n"


def parse_csv(text: str) -> list[SweepRecord]:
    lines = [ln for ln in text.split("\n") if ln]
    if lines[0] != CSV_HEADER:
        raise ValueError(f"unexpected CSV header: {lines[0]!r}")
    records = []
    for ln in lines[1:]:
        p, q, case, positive, ppt, separable, f_max = ln.split(",")
        records.append(
            SweepRecord(
                p=float(p),
                q=float(q),
                case=Case(case),
                positive=positive == "true",
                ppt=ppt == "true",
                separable=separable == "true",
                f_max=float(f_max),
            )
        )
    return records


_COLORS = {
    "separable": "#9ecae9",
    "ppt_entangled": "#f0a15a",
    "npt": "#c23b3b",
    "non_state": "#d9d9d9",
}


def cell_category(r: SweepRecord) -> str:
    if not r.positive:
        return "non_state"
    if r.separable:
        return "separable"
    if r.ppt:
        return "ppt_entangled"
    return "npt"


def sweep_svg(records: list[SweepRecord], grid_n: int, size: int = 600, margin: int = 50) -> str:
    """Static SVG region map: one color run per vertical strip of equal
    category (cell rects live in a group scaled to cell units, so they
    can be mapped back to grid cells exactly), plus the analytic
    boundary curves and a legend."""
    if len(records) != grid_n * grid_n:
        raise ValueError("record count does not match grid size")
    cell = size / grid_n
    width = size + 2 * margin + 170
    height = size + 2 * margin

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect width="{width}" height="{height}" fill="white"/>',
        f'<g id="cells" transform="translate({margin},{margin}) scale({cell})" '
        'shape-rendering="crispEdges">',
    ]
    # vertical runs: column i is the contiguous slice records[i*n:(i+1)*n]
    for i in range(grid_n):
        column = records[i * grid_n : (i + 1) * grid_n]
        j = 0
        while j < grid_n:
            cat = cell_category(column[j])
            run = 1
            while j + run < grid_n and cell_category(column[j + run]) == cat:
                run += 1
            # q grows upward, svg y grows downward
            y = grid_n - (j + run)
            parts.append(
                f'<rect x="{i}" y="{y}" width="1" height="{run}" fill="{_COLORS[cat]}"/>'
            )
            j += run
    parts.append("</g>")

    def to_xy(p: float, q: float) -> tuple[float, float]:
        return margin + (p + 1.0) / 2.0 * size, margin + (1.0 - q) / 2.0 * size

    def curve(points: list[tuple[float, float]], dash: str = "") -> None:
        runs: list[list[str]] = [[]]
        for p, q in points:
            if -1.0 <= q <= 1.0:
                x, y = to_xy(p, q)
                runs[-1].append(f"{x:.2f},{y:.2f}")
            elif runs[-1]:
                runs.append([])
        for run in runs:
            if len(run) > 1:
                parts.append(
                    f'<polyline points="{" ".join(run)}" fill="none" stroke="black" '
                    f'stroke-width="1.2"{dash}/>'
                )

    ps = np.linspace(-1.0, 1.0, 601)
    curve([(p, 4.0 * p**3 - 3.0 * p) for p in ps])
    curve([(p, p) for p in ps], dash=' stroke-dasharray="6,3"')
    curve([(p, -3.0 * p) for p in ps], dash=' stroke-dasharray="6,3"')
    curve([(p, -2.0 * p) for p in ps], dash=' stroke-dasharray="2,3"')
    curve([(0.0, q) for q in ps], dash=' stroke-dasharray="2,3"')

    x0, y0 = margin, margin
    parts.append(
        f'<rect x="{x0}" y="{y0}" width="{size}" height="{size}" fill="none" stroke="black"/>'
    )
    for p_tick in (-1.0, 0.0, 1.0):
        x, _ = to_xy(p_tick, 0.0)
        parts.append(
            f'<text x="{x:.1f}" y="{y0 + size + 18}" font-size="12" text-anchor="middle">'
            f"{p_tick:g}</text>"
        )
        _, y = to_xy(0.0, p_tick)
        parts.append(
            f'<text x="{x0 - 8}" y="{y + 4:.1f}" font-size="12" text-anchor="end">{p_tick:g}</text>'
        )
    parts.append(
        f'<text x="{x0 + size / 2}" y="{y0 + size + 36}" font-size="13" '
        'text-anchor="middle">p</text>'
    )
    parts.append(f'<text x="{x0 - 30}" y="{y0 + size / 2}" font-size="13">q</text>')

    labels = {
        "separable": "separable",
        "ppt_entangled": "PPT entangled",
        "npt": "NPT",
        "non_state": "not a state",
    }
    ly = y0 + 10
    for key, label in labels.items():
        parts.append(
            f'<rect x="{x0 + size + 20}" y="{ly}" width="14" height="14" '
            f'fill="{_COLORS[key]}" stroke="black" stroke-width="0.5"/>'
        )
        parts.append(
            f'<text x="{x0 + size + 40}" y="{ly + 11}" font-size="12">{label}</text>'
        )
        ly += 22
    parts.append("</svg>")
    return "\n".join(parts) + "\n"
