"""Deterministic report serialization.

CSV: RFC-4180-style, mandatory header, floats at 17 significant digits.
JSON: stable (sorted) key order.  SVG: hand-built XML so identical configs
emit identical bytes (plotting libraries embed ids/timestamps).
"""

from __future__ import annotations

import json
import os

from .errors import ConfigError, RmflabError
from .experiments import ExperimentReport


def _format_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return f"{value:.17g}"
    return str(value)


def _csv_escape(text: str) -> str:
    if any(ch in text for ch in (",", '"', "\n", "\r")):
        return '"' + text.replace('"', '""') + '"'
    return text


def write_csv(report: ExperimentReport, path) -> None:
    """One row per record; header from the first record's key order."""
    if not report.records:
        raise RmflabError("report has no records to write")
    header = list(report.records[0].keys())
    lines = [",".join(_csv_escape(h) for h in header)]
    for record in report.records:
        lines.append(",".join(
            _csv_escape(_format_cell(record.get(key))) for key in header))
    with open(path, "w", newline="") as fh:
        fh.write("\r\n".join(lines) + "\r\n")


def write_json(report: ExperimentReport, path) -> None:
    with open(path, "w") as fh:
        json.dump(report.to_json_dict(), fh, indent=2, sort_keys=True)
        fh.write("\n")


_SVG_W, _SVG_H = 640, 400
_MARGIN = 54


def _svg_scale(values, lo_px, hi_px, flip=False):
    lo, hi = min(values), max(values)
    span = hi - lo if hi > lo else 1.0

    def scale(v):
        frac = (v - lo) / span
        if flip:
            frac = 1.0 - frac
        return lo_px + frac * (hi_px - lo_px)

    return scale, lo, hi


def render_svg(report: ExperimentReport) -> str:
    """Line+scatter plot of the swept statistic vs N."""
    rows = [r for r in report.records if "N" in r and "value" in r]
    if not rows:
        raise ConfigError("svg output needs sweep records (statistic vs N)")
    xs = [r["N"] for r in rows]
    ys = [r["value"] for r in rows]
    sx, x_lo, x_hi = _svg_scale(xs, _MARGIN, _SVG_W - _MARGIN)
    sy, y_lo, y_hi = _svg_scale(ys, _SVG_H - _MARGIN, _MARGIN)
    stat = rows[0].get("statistic", "value")
    points = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in zip(xs, ys))
    parts = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_SVG_W}" '
        f'height="{_SVG_H}" viewBox="0 0 {_SVG_W} {_SVG_H}">',
        f'<rect x="0" y="0" width="{_SVG_W}" height="{_SVG_H}" fill="white"/>',
        f'<line x1="{_MARGIN}" y1="{_SVG_H - _MARGIN}" x2="{_SVG_W - _MARGIN}" '
        f'y2="{_SVG_H - _MARGIN}" stroke="black"/>',
        f'<line x1="{_MARGIN}" y1="{_MARGIN}" x2="{_MARGIN}" '
        f'y2="{_SVG_H - _MARGIN}" stroke="black"/>',
        f'<text x="{_SVG_W // 2}" y="{_SVG_H - 12}" text-anchor="middle" '
        f'font-size="13">N</text>',
        f'<text x="16" y="{_SVG_H // 2}" text-anchor="middle" font-size="13" '
        f'transform="rotate(-90 16 {_SVG_H // 2})">{stat}</text>',
        f'<text x="{_MARGIN}" y="{_SVG_H - _MARGIN + 16}" font-size="11">'
        f'{x_lo:g}</text>',
        f'<text x="{_SVG_W - _MARGIN}" y="{_SVG_H - _MARGIN + 16}" '
        f'text-anchor="end" font-size="11">{x_hi:g}</text>',
        f'<text x="{_MARGIN - 4}" y="{_SVG_H - _MARGIN}" text-anchor="end" '
        f'font-size="11">{y_lo:.6g}</text>',
        f'<text x="{_MARGIN - 4}" y="{_MARGIN + 4}" text-anchor="end" '
        f'font-size="11">{y_hi:.6g}</text>',
        f'<polyline fill="none" stroke="#1f6fb2" stroke-width="1.5" '
        f'points="{points}"/>',
    ]
    for x, y in zip(xs, ys):
        parts.append(f'<circle cx="{sx(x):.2f}" cy="{sy(y):.2f}" r="3" '
                     f'fill="#1f6fb2"/>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def write_svg(report: ExperimentReport, path) -> None:
    with open(path, "w") as fh:
        fh.write(render_svg(report))


def emit_outputs(report: ExperimentReport, out_dir, formats,
                 stem: str | None = None) -> dict:
    """Write the requested formats; returns {format: path}.

    Bit-stable across runs with the same config: the serialized report
    carries no wall-clock or thread-count information.
    """
    os.makedirs(out_dir, exist_ok=True)
    stem = stem or report.kind
    written = {}
    for fmt in formats:
        path = os.path.join(out_dir, f"{stem}.{fmt}")
        try:
            if fmt == "csv":
                write_csv(report, path)
            elif fmt == "json":
                write_json(report, path)
            elif fmt == "svg":
                write_svg(report, path)
            else:
                raise ConfigError(f"unknown output format {fmt!r}")
        except OSError as exc:
            raise RmflabError(f"failed writing {path}: {exc}") from exc
        written[fmt] = path
    return written
