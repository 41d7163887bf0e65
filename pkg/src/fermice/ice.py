"""Six-vertex lattice models on rectangular and u-turn (bend) boundaries.

Grid conventions: an admissible state for a strict boundary partition ``lam``
has ``n = len(lam)`` rows labeled n..1 top to bottom and ``lam[0]`` columns
labeled lam[0]..1 left to right.  Left boundary edges point in (east), bottom
edges point down, and the top edge of a column points up exactly when the
column label is a part of ``lam``.

A vertex is classified by the orientations of its four incident edges
(north/south up?, west/east pointing-east?); exactly six classes are
admissible (two in, two out).  Weight tables assign each class a template in
the row's spectral parameters.  The table below was *fitted*, not read off a
picture: it is the unique assignment reproducing the worked row-weight values
and the row-by-row bracket identities (see verify.weight_table_calibration).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from .evolution import (
    EvolutionSpec,
    TParam,
    apply_exp_current,
    apply_exp_phi,
    interleaving_shapes,
    t_poly,
)
from .fock import (
    FockState,
    FockVector,
    annihilate_state,
    apply_annihilate,
    create_state,
    displacement,
    inner,
    state_from_strict,
)
from .ring import ONE, ZERO, MultiPoly, VarId, prod

# Vertex classes, keyed by (north_up, south_up, west_east, east_east).
# The tuple index (0-based) is the class id used by the weight tables.
VERTEX_KEYS: tuple[tuple[bool, bool, bool, bool], ...] = (
    (False, False, True, True),   # 1
    (True, True, False, False),   # 2
    (True, True, True, True),     # 3
    (False, False, False, False), # 4
    (False, True, False, True),   # 5
    (True, False, True, False),   # 6
)
VERTEX_TYPE = {key: idx + 1 for idx, key in enumerate(VERTEX_KEYS)}

# Weight templates per vertex class: "1", "x", "t", "t*x", "x*(t+1)".
DELTA_TABLE: tuple[str, ...] = ("1", "t*x", "1", "x", "x*(t+1)", "1")
GAMMA_TABLE: tuple[str, ...] = ("1", "x", "t", "x", "x*(t+1)", "1")


def template_weight(tmpl: str, x: MultiPoly, t: TParam) -> MultiPoly:
    if tmpl == "1":
        return ONE
    if tmpl == "x":
        return x
    if tmpl == "t":
        return t_poly(t)
    if tmpl == "t*x":
        return t_poly(t) * x
    if tmpl == "x*(t+1)":
        return x * (t_poly(t) + ONE)
    raise ValueError(f"unknown weight template {tmpl!r}")


@dataclass(frozen=True)
class WeightScheme:
    """Vertex-class -> weight template table plus the row-index rule."""

    name: str
    table: tuple[str, ...]  # six templates, indexed by vertex class - 1
    reversed_rows: bool      # row j reads spectral index n - j + 1

    def spectral_index(self, row_label: int, n: int) -> int:
        return n - row_label + 1 if self.reversed_rows else row_label

    def vertex_weight(self, vtype: int, row_label: int, n: int,
                      xs: Sequence[VarId], ts: Sequence[TParam]) -> MultiPoly:
        idx = self.spectral_index(row_label, n)
        return template_weight(self.table[vtype - 1], MultiPoly.var(xs[idx - 1]), ts[idx - 1])


DELTA = WeightScheme("delta", DELTA_TABLE, reversed_rows=False)
GAMMA = WeightScheme("gamma", GAMMA_TABLE, reversed_rows=True)
SCHEMES = {"delta": DELTA, "gamma": GAMMA}


# -- row filling ---------------------------------------------------------------


def fill_row(top: Iterable[int], bottom: Iterable[int], cols: int):
    """Force the horizontal edges of one row from its vertical edges.

    Returns (vertex types west->east, east-end direction) or None if some
    vertex cannot be completed with two arrows in and two out.
    """
    top_s, bottom_s = set(top), set(bottom)
    w_east = True  # west boundary points in
    types = []
    for label in range(cols, 0, -1):
        n_up = label in top_s
        s_up = label in bottom_s
        in_count = (not n_up) + s_up + w_east
        if in_count == 2:
            e_east = True
        elif in_count == 1:
            e_east = False
        else:
            return None
        types.append(VERTEX_TYPE[(n_up, s_up, w_east, e_east)])
        w_east = e_east
    return tuple(types), w_east


# -- patterns ------------------------------------------------------------------


@dataclass(frozen=True)
class GTPattern:
    """Strict triangular pattern: row j (from the top) has n - j parts."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        for j, row in enumerate(self.rows):
            if len(row) != n - j:
                raise ValueError("row lengths must decrease by one")
            if any(row[i] <= row[i + 1] for i in range(len(row) - 1)):
                raise ValueError(f"row {row} is not strictly decreasing")
            if row and row[-1] < 1:
                raise ValueError("parts must be positive")
        for j in range(n - 1):
            upper, lower = self.rows[j], self.rows[j + 1]
            for i in range(len(lower)):
                if not (upper[i] >= lower[i] >= upper[i + 1]):
                    raise ValueError("rows do not interleave")

    @property
    def top(self) -> tuple[int, ...]:
        return self.rows[0]

    def row_for_label(self, i: int) -> tuple[int, ...]:
        """Pattern row with i parts (label i); label 0 is the empty row."""
        n = len(self.rows)
        if i == 0:
            return ()
        return self.rows[n - i]


def enumerate_patterns(lam: Sequence[int]) -> list[GTPattern]:
    """All strict patterns with the given top row, in lexicographic order."""
    lam = tuple(lam)
    chains: list[tuple[tuple[int, ...], ...]] = []

    def descend(rows: tuple[tuple[int, ...], ...]):
        last = rows[-1]
        if len(last) == 1:
            chains.append(rows)
            return
        for mu in interleaving_shapes(last):
            descend(rows + (mu,))

    if not lam:
        return []
    descend((lam,))
    chains.sort()
    return [GTPattern(rows) for rows in chains]


# -- rectangular states --------------------------------------------------------


@dataclass(frozen=True)
class IceState:
    """Admissible state: edge orientations stored in screen order.

    vertical[v][p]: layer v = 0 (top boundary) .. n (bottom); True = up.
    horizontal[r][p]: row r = 0 (top) .. n-1; p = 0 (west boundary) .. cols;
    True = pointing east.
    """

    lam: tuple[int, ...]
    n: int
    cols: int
    vertical: tuple[tuple[bool, ...], ...]
    horizontal: tuple[tuple[bool, ...], ...]

    def north_up(self, i: int, c: int) -> bool:
        return self.vertical[self.n - i][self.cols - c]

    def south_up(self, i: int, c: int) -> bool:
        return self.vertical[self.n - i + 1][self.cols - c]

    def west_east(self, i: int, c: int) -> bool:
        return self.horizontal[self.n - i][self.cols - c]

    def east_east(self, i: int, c: int) -> bool:
        return self.horizontal[self.n - i][self.cols - c + 1]

    def vertex_type(self, i: int, c: int) -> int:
        key = (self.north_up(i, c), self.south_up(i, c), self.west_east(i, c), self.east_east(i, c))
        return VERTEX_TYPE[key]

    def row_types(self, i: int) -> tuple[int, ...]:
        return tuple(self.vertex_type(i, c) for c in range(self.cols, 0, -1))

    def to_json_obj(self) -> dict:
        return {
            "lambda": list(self.lam),
            "rows": self.n,
            "cols": self.cols,
            "vertical_edges": [[1 if b else 0 for b in layer] for layer in self.vertical],
            "horizontal_edges": [[1 if b else 0 for b in row] for row in self.horizontal],
            "pattern": [list(r) for r in ice_to_pattern(self).rows],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "IceState":
        state = cls(
            lam=tuple(obj["lambda"]),
            n=int(obj["rows"]),
            cols=int(obj["cols"]),
            vertical=tuple(tuple(bool(b) for b in layer) for layer in obj["vertical_edges"]),
            horizontal=tuple(tuple(bool(b) for b in row) for row in obj["horizontal_edges"]),
        )
        state.validate()
        return state

    def validate(self) -> None:
        if len(self.vertical) != self.n + 1 or any(len(l) != self.cols for l in self.vertical):
            raise ValueError("bad vertical edge matrix shape")
        if len(self.horizontal) != self.n or any(len(r) != self.cols + 1 for r in self.horizontal):
            raise ValueError("bad horizontal edge matrix shape")
        top = self.vertical[0]
        want_top = tuple(c in set(self.lam) for c in range(self.cols, 0, -1))
        if top != want_top:
            raise ValueError("top boundary does not match lambda")
        if any(self.vertical[self.n]):
            raise ValueError("bottom boundary must point down")
        for r in range(self.n):
            if not self.horizontal[r][0] or self.horizontal[r][self.cols]:
                raise ValueError("horizontal boundary edges must point inward")
        for i in range(1, self.n + 1):
            for c in range(1, self.cols + 1):
                key = (self.north_up(i, c), self.south_up(i, c),
                       self.west_east(i, c), self.east_east(i, c))
                if key not in VERTEX_TYPE:
                    raise ValueError(f"inadmissible vertex at row {i}, column {c}")


def pattern_to_ice(pattern: GTPattern) -> IceState:
    """Fill the horizontal edges forced by a strict pattern."""
    lam = pattern.top
    n, cols = len(lam), lam[0]
    vertical = []
    horizontal = []
    for i in range(n, 0, -1):
        vertical.append(tuple(c in set(pattern.row_for_label(i)) for c in range(cols, 0, -1)))
    vertical.append(tuple(False for _ in range(cols)))
    for i in range(n, 0, -1):
        filled = fill_row(pattern.row_for_label(i), pattern.row_for_label(i - 1), cols)
        if filled is None:
            raise ValueError("pattern does not produce an admissible state")
        types, east = filled
        if east:
            raise ValueError("east boundary forced outward; pattern invalid")
        row_edges = [True]
        w = True
        for label in range(cols, 0, -1):
            n_up = label in set(pattern.row_for_label(i))
            s_up = label in set(pattern.row_for_label(i - 1))
            in_count = (not n_up) + s_up + w
            w = in_count == 2
            row_edges.append(w)
        horizontal.append(tuple(row_edges))
    state = IceState(lam, n, cols, tuple(vertical), tuple(horizontal))
    state.validate()
    return state


def ice_to_pattern(state: IceState) -> GTPattern:
    rows = []
    for i in range(state.n, 0, -1):
        parts = tuple(c for c in range(state.cols, 0, -1) if state.north_up(i, c))
        rows.append(parts)
    return GTPattern(tuple(rows))


def enumerate_states(lam: Sequence[int]) -> list[IceState]:
    """All admissible states with boundary lam, via strict patterns."""
    return [pattern_to_ice(p) for p in enumerate_patterns(lam)]


def row_weight(state: IceState, i: int, scheme: WeightScheme,
               xs: Sequence[VarId], ts: Sequence[TParam]) -> MultiPoly:
    return prod(
        scheme.vertex_weight(state.vertex_type(i, c), i, state.n, xs, ts)
        for c in range(state.cols, 0, -1)
    )


def state_weight(state: IceState, scheme: WeightScheme,
                 xs: Sequence[VarId], ts: Sequence[TParam]) -> MultiPoly:
    return prod(row_weight(state, i, scheme, xs, ts) for i in range(state.n, 0, -1))


def partition_function(lam: Sequence[int], scheme: WeightScheme,
                       xs: Sequence[VarId], ts: Sequence[TParam]) -> MultiPoly:
    total = ZERO
    for state in enumerate_states(lam):
        total = total + state_weight(state, scheme, xs, ts)
    return total


# -- u-turn (bend) models --------------------------------------------------------


@dataclass(frozen=True)
class BendIceState:
    """State of the 2n-row non-nested bend model.

    Sequence index r runs over rows n, n-bar, n-1, ..., 1, 1-bar top to
    bottom; row_parts[r] records the columns whose north edge points up.
    bends[j] is True when the u-turn joining rows (n-j, n-j bar) points up.
    """

    lam: tuple[int, ...]
    n: int
    cols: int
    row_parts: tuple[tuple[int, ...], ...]
    row_types: tuple[tuple[int, ...], ...]
    bends: tuple[bool, ...]

    def part_for_label(self, i: int, barred: bool) -> tuple[int, ...]:
        if i == 0:
            return ()
        r = 2 * (self.n - i) + (1 if barred else 0)
        return self.row_parts[r]

    def bend_up(self, i: int) -> bool:
        return self.bends[self.n - i]

    def to_json_obj(self) -> dict:
        labels = []
        for i in range(self.n, 0, -1):
            labels.extend([str(i), f"{i}bar"])
        return {
            "lambda": list(self.lam),
            "rows": 2 * self.n,
            "cols": self.cols,
            "row_labels": labels,
            "pattern": [list(p) for p in self.row_parts],
            "bends": ["up" if b else "down" for b in self.bends],
            "vertex_types": [list(t) for t in self.row_types],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))


def _bend_consistent(upper_east: bool, lower_east: bool) -> Optional[bool]:
    """Orientation of the u-turn joining two row ends: True=up, None=invalid."""
    if not upper_east and lower_east:
        return True
    if upper_east and not lower_east:
        return False
    return None


def _all_column_subsets(cols: int) -> list[tuple[int, ...]]:
    out = []
    for mask in range(1 << cols):
        out.append(tuple(c for c in range(cols, 0, -1) if mask & (1 << (c - 1))))
    out.sort()
    return out


def enumerate_nn_states(lam: Sequence[int]) -> list[BendIceState]:
    """All admissible bend states, by depth-first search over row partitions."""
    lam = tuple(lam)
    n, cols = len(lam), lam[0]
    subsets = _all_column_subsets(cols)
    results: list[BendIceState] = []

    def rec(parts: list[tuple[int, ...]], fills: list, bends: list[bool]):
        r = len(fills)
        if r == 2 * n:
            results.append(
                BendIceState(lam, n, cols, tuple(parts),
                             tuple(f[0] for f in fills), tuple(bends))
            )
            return
        below_candidates = [()] if r == 2 * n - 1 else subsets
        for below in below_candidates:
            filled = fill_row(parts[r], below, cols)
            if filled is None:
                continue
            new_bends = bends
            if r % 2 == 1:
                bend = _bend_consistent(fills[r - 1][1], filled[1])
                if bend is None:
                    continue
                new_bends = bends + [bend]
            if r == 2 * n - 1:
                rec(parts, fills + [filled], new_bends)
            else:
                rec(parts + [below], fills + [filled], new_bends)

    rec([lam], [], [])
    results.sort(key=lambda s: s.row_parts)
    return results


def nn_state_from_pattern(lam: Sequence[int], row_parts: Sequence[Sequence[int]]) -> BendIceState:
    """Build (and validate) the bend state with the given 2n pattern rows."""
    lam = tuple(lam)
    n, cols = len(lam), lam[0]
    parts = [tuple(p) for p in row_parts]
    if len(parts) != 2 * n or parts[0] != lam:
        raise ValueError("need 2n pattern rows starting with lambda")
    fills = []
    bends = []
    for r in range(2 * n):
        below = parts[r + 1] if r < 2 * n - 1 else ()
        filled = fill_row(parts[r], below, cols)
        if filled is None:
            raise ValueError(f"row {r} does not fill admissibly")
        fills.append(filled)
        if r % 2 == 1:
            bend = _bend_consistent(fills[r - 1][1], filled[1])
            if bend is None:
                raise ValueError(f"inconsistent u-turn for row pair ending at {r}")
            bends.append(bend)
    return BendIceState(lam, n, cols, tuple(parts), tuple(f[0] for f in fills), tuple(bends))


def bend_weight(up: bool, x: VarId, t: TParam) -> MultiPoly:
    return t_poly(t) * MultiPoly.var(x) if up else MultiPoly.var(x, -1)


def nn_pair_weight(state: BendIceState, i: int, xs: Sequence[VarId], t: TParam) -> MultiPoly:
    """Weight of row pair (i, i-bar) plus its u-turn under the mixed scheme:
    plain rows use the delta table in x_i, barred rows the gamma table in
    1/x_i, all at a shared t."""
    x = xs[i - 1]
    xinv = MultiPoly.var(x, -1)
    r_plain = 2 * (state.n - i)
    w = ONE
    for vt in state.row_types[r_plain]:
        w = w * template_weight(DELTA_TABLE[vt - 1], MultiPoly.var(x), t)
    for vt in state.row_types[r_plain + 1]:
        w = w * template_weight(GAMMA_TABLE[vt - 1], xinv, t)
    return w * bend_weight(state.bend_up(i), x, t)


def nn_state_weight(state: BendIceState, xs: Sequence[VarId], t: TParam) -> MultiPoly:
    return prod(nn_pair_weight(state, i, xs, t) for i in range(state.n, 0, -1))


# -- bracket factorization of bend row pairs ----------------------------------


def _single_state(v: FockVector) -> Optional[tuple[MultiPoly, FockState]]:
    if len(v.terms) != 1:
        return None
    ((st, c),) = v.terms.items()
    return c, st


def _plus_bracket(bra: FockState, ket: FockVector, x: VarId, t: TParam) -> MultiPoly:
    """<bra| e^{phi_+(x;t)} |ket-vector> with the budget fixed by the endpoints."""
    total = ZERO
    for st, c in ket.terms.items():
        d = displacement(st, bra)
        if d is None or d < 0:
            continue
        w = apply_exp_phi(FockVector.unit(st), EvolutionSpec("plus", x, t), d)
        total = total + c * inner(bra, w)
    return total


def _minus_bracket_xinv(bra: FockState, ket: FockVector, x: VarId, t: TParam) -> MultiPoly:
    """<bra| e^{phi_-(1/x;t)} |ket-vector>: rightward currents weighted x^{+q}."""

    def s_of_q(q: int) -> MultiPoly:
        lead = MultiPoly.var(x, q).scale(Fraction(1, q))
        tfac = t_poly(t, q).scale(Fraction((-1) ** (q + 1), q))
        return lead + tfac * MultiPoly.var(x, q)

    total = ZERO
    for st, c in ket.terms.items():
        d = displacement(bra, st)
        if d is None or d < 0:
            continue
        w = apply_exp_current(FockVector.unit(st), s_of_q, "minus", d)
        total = total + c * inner(bra, w)
    return total


def nn_row_factorization_check(state: BendIceState, i: int,
                               xs: Sequence[VarId], t: TParam) -> bool:
    """Check that the weight of row pair (i, i-bar) factors into the two
    vacuum-to-vacuum style brackets with the fitted boundary coefficients.

    Both sides are multiplied by (1+t)^2 so the comparison stays inside the
    Laurent polynomial ring.
    """
    lam1 = state.lam[0]
    x = xs[i - 1]
    lam_i = state.part_for_label(i, False)
    lam_ibar = state.part_for_label(i, True)
    lam_prev = state.part_for_label(i - 1, False)
    ket_i = FockVector.unit(state_from_strict(lam_i))
    bra_ibar = state_from_strict(lam_ibar)

    a1 = _plus_bracket(bra_ibar, apply_annihilate(0, ket_i), x, t)
    a2 = _plus_bracket(bra_ibar, ket_i, x, t)
    # (1+t) * (alpha_1 psi_{-1/2} + alpha_2) contributions
    right = a1 * t_poly(t).scale((-1) ** i) + a2 * (ONE + t_poly(t)) * MultiPoly.var(x, -1)

    ket_ibar = FockVector.unit(state_from_strict(lam_ibar))
    prev_state = state_from_strict(lam_prev)
    # B2 bra: psi at lam1 + 1/2 acting on the bra <-> creation on the bra state
    b2 = ZERO
    res = create_state(prev_state, lam1 + 1)
    if res is not None:
        sgn, target = res
        b2 = _minus_bracket_xinv(target, ket_ibar, x, t).scale(sgn)
    # B1 bra: psi*_{-1/2} psi_{lam1+1/2} on the bra
    b1 = ZERO
    res0 = annihilate_state(prev_state, 0)
    if res0 is not None:
        sgn0, st0 = res0
        res1 = create_state(st0, lam1 + 1)
        if res1 is not None:
            sgn1, target1 = res1
            b1 = _minus_bracket_xinv(target1, ket_ibar, x, t).scale(sgn0 * sgn1)
    left = b1 * MultiPoly.var(x, -(lam1 + 1)).scale((-1) ** (i - 1)) + b2 * MultiPoly.var(x, -lam1)

    wt = nn_pair_weight(state, i, xs, t)
    return wt * (ONE + t_poly(t)) ** 2 == left * right
