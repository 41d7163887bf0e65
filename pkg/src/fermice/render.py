"""Deterministic SVG rendering of lattice states, patterns, and Maya diagrams.

Same input, byte-identical output: all coordinates are integers derived from
fixed cell sizes, and elements are emitted in a fixed order.
"""

from __future__ import annotations

from typing import Sequence

from .fock import FockState
from .ice import BendIceState, IceState

CELL = 40
MARGIN = 30


def _svg_header(width: int, height: int) -> list[str]:
    return [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<rect width="100%" height="100%" fill="white"/>',
    ]


def _arrow(x1: int, y1: int, x2: int, y2: int) -> list[str]:
    """Line from (x1,y1) to (x2,y2) with a mid-edge arrowhead pointing at (x2,y2)."""
    mx, my = (x1 + x2) // 2, (y1 + y2) // 2
    dx, dy = x2 - x1, y2 - y1
    length = max(abs(dx), abs(dy))
    ux, uy = dx // length, dy // length  # axis-aligned edges only
    tip = (mx + 5 * ux, my + 5 * uy)
    left = (mx - 5 * ux - 4 * uy, my - 5 * uy + 4 * ux)
    right = (mx - 5 * ux + 4 * uy, my - 5 * uy - 4 * ux)
    return [
        f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="black" stroke-width="1"/>',
        f'<polygon points="{tip[0]},{tip[1]} {left[0]},{left[1]} {right[0]},{right[1]}" fill="black"/>',
    ]


def _text(x: int, y: int, s: str, size: int = 13) -> str:
    return f'<text x="{x}" y="{y}" font-size="{size}" text-anchor="middle" font-family="monospace">{s}</text>'


def _grid_arrows(parts, n_rows: int, cols: int, vertical, horizontal, row_label) -> list[str]:
    """Shared grid drawing for rectangular and bend states (no east boundary
    for the latter: callers slice the horizontal rows accordingly)."""
    out = []
    for p in range(cols):
        out.append(_text(MARGIN + CELL + p * CELL, MARGIN - 10, str(cols - p)))
    for r in range(n_rows):
        out.append(_text(MARGIN - 12, MARGIN + CELL + r * CELL + 4, row_label(r)))
    for layer in range(n_rows + 1):
        for p in range(cols):
            x = MARGIN + CELL + p * CELL
            ytop = MARGIN + layer * CELL
            ybot = ytop + CELL
            if vertical[layer][p]:
                out.extend(_arrow(x, ybot, x, ytop))
            else:
                out.extend(_arrow(x, ytop, x, ybot))
    for r in range(n_rows):
        y = MARGIN + CELL + r * CELL
        for p in range(len(horizontal[r])):
            xw = MARGIN + p * CELL
            xe = xw + CELL
            if horizontal[r][p]:
                out.extend(_arrow(xw, y, xe, y))
            else:
                out.extend(_arrow(xe, y, xw, y))
    return out


def svg_ice(state: IceState) -> str:
    width = 2 * MARGIN + (state.cols + 1) * CELL
    height = 2 * MARGIN + (state.n + 1) * CELL
    # vertical layers drawn between y = MARGIN + layer*CELL and +CELL; rebuild
    # full-length verticals: boundary stubs share the cell height.
    vertical = [list(layer) for layer in state.vertical]
    out = _svg_header(width, height)
    out += _grid_arrows(state.lam, state.n, state.cols, vertical, state.horizontal,
                        lambda r: str(state.n - r))
    out.append("</svg>")
    return "\n".join(out)


def svg_bend(state: BendIceState) -> str:
    n2 = 2 * state.n
    width = 2 * MARGIN + (state.cols + 2) * CELL
    height = 2 * MARGIN + (n2 + 1) * CELL
    col_set = [set(p) for p in state.row_parts]
    vertical = []
    for layer in range(n2 + 1):
        members = col_set[layer] if layer < n2 else set()
        vertical.append([ (state.cols - p) in members for p in range(state.cols)])
    horizontal = []
    for r in range(n2):
        w = True
        row = [True]
        top, bot = col_set[r], col_set[r + 1] if r + 1 < n2 else set()
        for label in range(state.cols, 0, -1):
            in_count = (label not in top) + (label in bot) + w
            w = in_count == 2
            row.append(w)
        horizontal.append(row)

    def label(r: int) -> str:
        i = state.n - r // 2
        return f"{i}" if r % 2 == 0 else f"{i}̄"

    out = _svg_header(width, height)
    out += _grid_arrows(state.lam, n2, state.cols, vertical,
                        [row[:-1] for row in horizontal], label)
    # east stubs and u-turns
    for r in range(n2):
        y = MARGIN + CELL + r * CELL
        xw = MARGIN + state.cols * CELL
        xe = xw + CELL
        if horizontal[r][state.cols]:
            out.extend(_arrow(xw, y, xe, y))
        else:
            out.extend(_arrow(xe, y, xw, y))
    for j in range(state.n):
        r_up = 2 * j
        y1 = MARGIN + CELL + r_up * CELL
        y2 = y1 + CELL
        x = MARGIN + (state.cols + 1) * CELL
        out.append(
            f'<path d="M {x} {y1} A {CELL // 2} {CELL // 2} 0 0 1 {x} {y2}" '
            'stroke="black" fill="none" stroke-width="1"/>'
        )
    out.append("</svg>")
    return "\n".join(out)


def svg_pattern(rows: Sequence[Sequence[int]], starred: Sequence[bool] = ()) -> str:
    """Triangular (or half-triangular) array; starred rows get a trailing *."""
    depth = len(rows)
    widest = max((len(r) for r in rows), default=0) + (1 if any(starred) else 0)
    width = 2 * MARGIN + 2 * CELL * widest
    height = 2 * MARGIN + CELL * depth
    out = _svg_header(width, height)
    for j, row in enumerate(rows):
        y = MARGIN + CELL // 2 + j * CELL
        offset = MARGIN + j * (CELL // 2)
        for i, entry in enumerate(row):
            out.append(_text(offset + CELL // 2 + i * CELL, y, str(entry)))
        if j < len(starred) and starred[j]:
            out.append(_text(offset + CELL // 2 + len(row) * CELL, y, "*"))
    out.append("</svg>")
    return "\n".join(out)


def svg_maya(state: FockState, lo: int = -5, hi: int = 6) -> str:
    """Occupation dots for modes lo..hi; the axis tick marks position 0."""
    count = hi - lo + 1
    width = 2 * MARGIN + CELL * count
    height = 2 * MARGIN + CELL
    out = _svg_header(width, height)
    y = MARGIN + CELL // 2
    out.append(f'<line x1="{MARGIN}" y1="{y}" x2="{width - MARGIN}" y2="{y}" stroke="black" stroke-width="1"/>')
    for idx, k in enumerate(range(lo, hi + 1)):
        cx = MARGIN + CELL // 2 + idx * CELL
        fill = "black" if state.occupied(k) else "white"
        out.append(f'<circle cx="{cx}" cy="{y}" r="10" stroke="black" fill="{fill}"/>')
        out.append(_text(cx, y + 28, str(k), size=10))
    zero_idx = -lo  # tick between modes 0 and 1 sits at position coordinate 0
    tick_x = MARGIN + CELL // 2 + zero_idx * CELL + CELL // 2
    out.append(f'<line x1="{tick_x}" y1="{y - 20}" x2="{tick_x}" y2="{y + 20}" stroke="black" stroke-width="2"/>')
    out.append(_text(tick_x, y - 26, "0", size=10))
    out.append("</svg>")
    return "\n".join(out)
