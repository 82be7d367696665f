"""Byte-deterministic CSV / JSON / SVG emission and run manifests.

Every artifact written here is a pure function of the values that go in:
floats are rendered with their shortest round-trip representation, JSON keys
are sorted, CSV uses comma separators with "\\n" line endings, and the SVG
heatmap is assembled from fixed-format primitives with no library in the
loop.  A RunManifest ties the outputs of one command invocation to a content
hash of its resolved configuration, so identical configs are recognizable by
identical digests (and identical bytes).
"""

from __future__ import annotations

import hashlib
import json
import math
import os
from typing import Iterable, Optional, Sequence

from flrwave.bounds import RegionMap

__all__ = [
    "fmt",
    "clean_for_json",
    "write_text",
    "write_csv",
    "write_json",
    "config_digest",
    "write_manifest",
    "region_map_svg",
    "REGION_COLORS",
]

TOOL_VERSION = "0.1.0"

REGION_COLORS = {
    "A": "#4c72b0",
    "B": "#dd8452",
    "C": "#55a868",
    "critical_fujita": "#c44e52",
    "critical_pc": "#8172b3",
    "unclassified": "#e8e8e8",
}


def fmt(value) -> str:
    """Shortest round-trip text for a cell value."""
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        return repr(value)
    return str(value)


def clean_for_json(obj):
    """Recursively replace non-finite floats by None (strict-JSON safety)."""
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else None
    if isinstance(obj, dict):
        return {k: clean_for_json(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [clean_for_json(v) for v in obj]
    return obj


def write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def write_csv(path: str, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(fmt(v) for v in row))
    write_text(path, "\n".join(lines) + "\n")


def write_json(path: str, payload) -> None:
    write_text(path, json.dumps(clean_for_json(payload), sort_keys=True, indent=2) + "\n")


def config_digest(resolved_config: dict) -> str:
    canonical = json.dumps(
        clean_for_json(resolved_config), sort_keys=True, separators=(",", ":")
    )
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


def write_manifest(outdir: str, command: str, resolved_config: dict, outputs: Sequence[str]) -> str:
    """Write manifest.json next to the outputs; returns the digest."""
    digest = config_digest(resolved_config)
    payload = {
        "command": command,
        "config_digest": digest,
        "tool_version": TOOL_VERSION,
        "outputs": sorted(outputs),
        "config": resolved_config,
    }
    write_json(os.path.join(outdir, "manifest.json"), payload)
    return digest


def _coord(x: float) -> str:
    return f"{x:.2f}"


def _svg_rect(x: float, y: float, w: float, h: float, fill: str) -> str:
    return (
        f'<rect x="{_coord(x)}" y="{_coord(y)}" width="{_coord(w)}" '
        f'height="{_coord(h)}" fill="{fill}"/>'
    )


def _svg_text(x: float, y: float, text: str, size: int = 12, anchor: str = "start") -> str:
    return (
        f'<text x="{_coord(x)}" y="{_coord(y)}" font-family="sans-serif" '
        f'font-size="{size}" text-anchor="{anchor}">{text}</text>'
    )


def _svg_polyline(points: Sequence[tuple], stroke: str, dash: Optional[str] = None) -> str:
    pts = " ".join(f"{_coord(x)},{_coord(y)}" for x, y in points)
    dash_attr = f' stroke-dasharray="{dash}"' if dash else ""
    return f'<polyline points="{pts}" fill="none" stroke="{stroke}" stroke-width="1"{dash_attr}/>'


def region_map_svg(
    rm: RegionMap,
    title: str,
    curves: Optional[dict] = None,
) -> str:
    """Self-contained SVG heatmap of a region map.

    Cells sharing a label are merged into vertical run-length rectangles.
    ``curves`` optionally maps a curve name to per-column values of axis2
    (NaN/None breaks the polyline); curves are overlaid in draw order.
    """
    v1 = rm.axis1.values()
    v2 = rm.axis2.values()
    left, top, plot_w, plot_h = 70.0, 40.0, 560.0, 480.0
    legend_x = left + plot_w + 20.0
    width, height = legend_x + 150.0, top + plot_h + 50.0

    h1 = rm.axis1.step
    h2 = rm.axis2.step
    x_lo, x_hi = v1[0] - h1 / 2.0, v1[-1] + h1 / 2.0
    y_lo, y_hi = v2[0] - h2 / 2.0, v2[-1] + h2 / 2.0

    def sx(val: float) -> float:
        return left + (val - x_lo) / (x_hi - x_lo) * plot_w

    def sy(val: float) -> float:
        return top + (y_hi - val) / (y_hi - y_lo) * plot_h

    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_coord(width)}" '
        f'height="{_coord(height)}" viewBox="0 0 {_coord(width)} {_coord(height)}">',
        _svg_rect(0.0, 0.0, width, height, "#ffffff"),
        _svg_text(left, top - 14.0, title, size=14),
    ]

    present: list[str] = []
    for i, a in enumerate(v1):
        col = rm.labels[i]
        j = 0
        while j < len(col):
            k = j
            while k + 1 < len(col) and col[k + 1] is col[j]:
                k += 1
            label = col[j].value
            if label not in present:
                present.append(label)
            x0 = sx(a - h1 / 2.0)
            x1 = sx(a + h1 / 2.0)
            y_top = sy(v2[k] + h2 / 2.0)
            y_bot = sy(v2[j] - h2 / 2.0)
            parts.append(_svg_rect(x0, y_top, x1 - x0, y_bot - y_top, REGION_COLORS[label]))
            j = k + 1

    for name, series in (curves or {}).items():
        seg: list[tuple] = []
        for a, val in zip(v1, series):
            if val is None or not math.isfinite(val) or not y_lo <= val <= y_hi:
                if len(seg) >= 2:
                    parts.append(_svg_polyline(seg, "#222222", dash="4,3"))
                seg = []
                continue
            seg.append((sx(a), sy(val)))
        if len(seg) >= 2:
            parts.append(_svg_polyline(seg, "#222222", dash="4,3"))

    # frame and tick labels at the axis extremes
    parts.append(
        f'<rect x="{_coord(left)}" y="{_coord(top)}" width="{_coord(plot_w)}" '
        f'height="{_coord(plot_h)}" fill="none" stroke="#000000" stroke-width="1"/>'
    )
    parts.append(_svg_text(left, top + plot_h + 16.0, fmt(v1[0]), anchor="middle"))
    parts.append(_svg_text(left + plot_w, top + plot_h + 16.0, fmt(v1[-1]), anchor="middle"))
    parts.append(_svg_text(left + plot_w / 2.0, top + plot_h + 32.0, rm.axis1.name, anchor="middle"))
    parts.append(_svg_text(left - 6.0, top + plot_h, fmt(v2[0]), anchor="end"))
    parts.append(_svg_text(left - 6.0, top + 10.0, fmt(v2[-1]), anchor="end"))
    parts.append(_svg_text(left - 40.0, top + plot_h / 2.0, rm.axis2.name, anchor="middle"))

    y = top
    for label in present:
        parts.append(_svg_rect(legend_x, y, 14.0, 14.0, REGION_COLORS[label]))
        parts.append(_svg_text(legend_x + 20.0, y + 11.0, label))
        y += 20.0

    parts.append("</svg>")
    return "\n".join(parts) + "\n"
