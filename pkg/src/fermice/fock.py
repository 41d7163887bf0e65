"""Fermionic Fock space on charged Maya diagrams.

A basis state is an occupation pattern of half-integer slots; the slot for
mode ``k`` (an ordinary integer) sits at position ``k - 1/2``, so every index
in sight stays integral.  States are stored canonically as a *floor* (every
mode strictly below it is occupied) plus the strictly decreasing list of
occupied modes at or above the floor.

Sign convention: a state is the result of creation operators applied to a
deep vacuum in strictly descending mode order.  Creating or annihilating at
mode ``k`` therefore carries the sign ``(-1)**(number of occupied modes
strictly above k)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cache
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Optional, Sequence, Union

from .ring import MultiPoly, ScalarLike


@dataclass(frozen=True)
class FockState:
    """Canonical basis state: modes < floor occupied, `above` occupied, rest empty."""

    floor: int
    above: tuple[int, ...]  # strictly decreasing, all >= floor

    @staticmethod
    def make(floor: int, occupied_at_or_above: Iterable[int]) -> "FockState":
        occ = sorted(set(occupied_at_or_above), reverse=True)
        if any(k < floor for k in occ):
            raise ValueError("occupied mode below floor")
        # raise the floor past any full run floor, floor+1, ...
        occ_set = set(occ)
        f = floor
        while f in occ_set:
            occ_set.remove(f)
            f += 1
        return FockState(f, tuple(sorted(occ_set, reverse=True)))

    @property
    def charge(self) -> int:
        return self.floor + len(self.above) - 1

    def occupied(self, k: int) -> bool:
        return k < self.floor or k in self.above

    def deepened(self, new_floor: int) -> tuple[int, tuple[int, ...]]:
        """Explicit occupation list down to new_floor (no canonicalization)."""
        if new_floor >= self.floor:
            return self.floor, self.above
        extra = tuple(range(self.floor - 1, new_floor - 1, -1))
        return new_floor, self.above + extra

    def count_above(self, k: int) -> int:
        """Number of occupied modes strictly above k (finite by canonicity)."""
        n = sum(1 for m in self.above if m > k)
        if k < self.floor - 1:
            n += (self.floor - 1) - k  # sea modes k+1 .. floor-1
        return n

    def mode_sum_above(self, floor: int) -> int:
        """Sum of occupied modes >= floor; requires floor <= self.floor."""
        if floor > self.floor:
            raise ValueError("floor too high for mode_sum_above")
        sea = range(floor, self.floor)
        return sum(self.above) + sum(sea)

    def maya_str(self, lo: int = -5, hi: int = 6) -> str:
        """Text Maya diagram over mode window [lo, hi]; '|' marks position 0."""
        cells = []
        for k in range(lo, hi + 1):
            if k == 1:
                cells.append("|")
            cells.append("●" if self.occupied(k) else "○")
        return "…" + "".join(cells) + "…"

    def to_json_obj(self) -> dict:
        return {
            "charge": self.charge,
            "floor": self.floor,
            "occupied_above_floor": list(self.above),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: Mapping) -> "FockState":
        st = cls.make(int(obj["floor"]), [int(k) for k in obj["occupied_above_floor"]])
        if "charge" in obj and int(obj["charge"]) != st.charge:
            raise ValueError("charge field inconsistent with occupation data")
        return st


def vacuum(ell: int) -> FockState:
    """Highest-weight state: modes k <= ell occupied, everything above empty."""
    return FockState(ell + 1, ())


def state_from_partition(parts: Sequence[int], ell: int) -> FockState:
    """Charged-partition state: occupied modes ell + parts[i] - i (1-based i)
    above the vacuum of charge ell - len(parts).  Zero padding is invisible."""
    parts = list(parts)
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError("parts must be weakly decreasing")
    if parts and parts[-1] < 0:
        raise ValueError("parts must be nonnegative")
    n = len(parts)
    modes = [ell + parts[i] - i for i in range(n)]  # i is 0-based: ell + p - (i+1) + 1
    return FockState.make(ell - n + 1, modes)


def state_from_strict(parts: Sequence[int]) -> FockState:
    """State with particles at positions part - 1/2 over the charge-0 sea."""
    parts = list(parts)
    if any(parts[i] <= parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError("parts must be strictly decreasing")
    if parts and parts[-1] < 1:
        raise ValueError("strict parts must be positive")
    return FockState.make(1, parts)


class FockVector:
    """Finite linear combination of basis states with MultiPoly coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[FockState, MultiPoly]] = None):
        self.terms: dict[FockState, MultiPoly] = {}
        if terms:
            for s, c in terms.items():
                if not c.is_zero():
                    self.terms[s] = c

    @classmethod
    def unit(cls, state: FockState, coeff: Optional[MultiPoly] = None) -> "FockVector":
        return cls({state: coeff if coeff is not None else MultiPoly.one()})

    def is_zero(self) -> bool:
        return not self.terms

    def __add__(self, other: "FockVector") -> "FockVector":
        out = dict(self.terms)
        for s, c in other.terms.items():
            acc = out.get(s)
            acc = c if acc is None else acc + c
            if acc.is_zero():
                out.pop(s, None)
            else:
                out[s] = acc
        v = FockVector()
        v.terms = out
        return v

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + other.scale(Fraction(-1))

    def scale(self, c: Union[MultiPoly, ScalarLike]) -> "FockVector":
        if not isinstance(c, MultiPoly):
            c = MultiPoly.scalar(c)
        if c.is_zero():
            return FockVector()
        v = FockVector()
        v.terms = {s: cc * c for s, cc in self.terms.items()}
        return v

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FockVector) and self.terms == other.terms

    def items(self) -> Iterator[tuple[FockState, MultiPoly]]:
        return iter(self.terms.items())

    def __repr__(self) -> str:
        if not self.terms:
            return "FockVector(0)"
        bits = [f"({c.to_text()})*{s.to_json()}" for s, c in self.terms.items()]
        return "FockVector(" + " + ".join(bits) + ")"


# -- creation / annihilation -------------------------------------------------


def create_state(state: FockState, k: int) -> Optional[tuple[int, FockState]]:
    """psi*_k on a basis state: None if occupied, else (sign, new state)."""
    if state.occupied(k):
        return None
    sign = -1 if state.count_above(k) % 2 else 1
    return sign, FockState.make(state.floor, state.above + (k,))


def annihilate_state(state: FockState, k: int) -> Optional[tuple[int, FockState]]:
    """psi_k on a basis state: None if empty, else (sign, new state)."""
    if not state.occupied(k):
        return None
    sign = -1 if state.count_above(k) % 2 else 1
    if k < state.floor:
        floor, occ = state.deepened(k)
    else:
        floor, occ = state.floor, state.above
    occ = tuple(m for m in occ if m != k)
    return sign, FockState.make(floor, occ)


def _apply_linear(op, v: FockVector) -> FockVector:
    out = FockVector()
    acc = out.terms
    for s, c in v.terms.items():
        res = op(s)
        if res is None:
            continue
        sign, s2 = res
        c2 = c if sign > 0 else -c
        prev = acc.get(s2)
        prev = c2 if prev is None else prev + c2
        if prev.is_zero():
            acc.pop(s2, None)
        else:
            acc[s2] = prev
    return out


def apply_create(k: int, v: FockVector) -> FockVector:
    return _apply_linear(lambda s: create_state(s, k), v)


def apply_annihilate(k: int, v: FockVector) -> FockVector:
    return _apply_linear(lambda s: annihilate_state(s, k), v)


def inner(bra: FockState, v: FockVector) -> MultiPoly:
    """Coefficient of the canonical basis state `bra` in `v`."""
    return v.terms.get(bra, MultiPoly.zero())


# -- current operators ---------------------------------------------------------


@cache
def j_moves(state: FockState, q: int) -> tuple[tuple[int, FockState], ...]:
    """All single-particle moves of J_q on a basis state, with fermionic signs.

    q > 0 moves a particle q slots toward lower modes, q < 0 toward higher.
    The list is finite: a move needs an occupied source and an empty target,
    and only finitely many source/target pairs straddle the sea surface.
    """
    if q == 0:
        raise ValueError("q must be nonzero")
    moves: list[tuple[int, FockState]] = []
    if q > 0:
        sources = list(state.above)
    else:
        p = -q
        sources = [m for m in state.above if not state.occupied(m + p)]
        sources += [
            m
            for m in range(state.floor - p, state.floor)
            if m + p >= state.floor and not state.occupied(m + p)
        ]
    for m in sources:
        tgt = m - q
        if state.occupied(tgt):
            continue
        s1, st1 = annihilate_state(state, m)  # type: ignore[misc]
        res = create_state(st1, tgt)
        if res is None:
            continue
        s2, st2 = res
        moves.append((s1 * s2, st2))
    return tuple(moves)


def apply_J(q: int, v: FockVector) -> FockVector:
    """Current operator J_q = sum of normal-ordered psi*_{i-q} psi_i."""
    out = FockVector()
    acc = out.terms
    for s, c in v.terms.items():
        for sign, s2 in j_moves(s, q):
            c2 = c if sign > 0 else -c
            prev = acc.get(s2)
            prev = c2 if prev is None else prev + c2
            if prev.is_zero():
                acc.pop(s2, None)
            else:
                acc[s2] = prev
    return out


def displacement(src: FockState, dst: FockState) -> Optional[int]:
    """Signed mode-sum difference src - dst over a common floor.

    Positive means dst is reachable from src by leftward (J_{q>0}) moves of
    that total size; None if the charges differ (no current connects them).
    """
    if src.charge != dst.charge:
        return None
    f = min(src.floor, dst.floor)
    return src.mode_sum_above(f) - dst.mode_sum_above(f)
