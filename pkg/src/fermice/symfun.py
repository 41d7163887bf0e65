"""Symmetric functions: h/e bases, (super/skew) Schur determinants, tableaux.

The Jacobi-Trudi determinant is the normative evaluator; semistandard
tableau enumeration is kept as an independent oracle (exponential, desk
scale only).  The two-alphabet ``h_k[x|y] = sum h_i(x) e_{k-i}(y)`` supports
the supersymmetric Schur determinants.
"""

from __future__ import annotations

from functools import cache
from itertools import combinations
from typing import Optional, Sequence

from .ring import (
    ONE,
    ZERO,
    MultiPoly,
    SeriesTruncation,
    VarId,
    geometric_series,
    mul_trunc,
    poly_det,
    prod,
    truncate,
    xp,
    xvar,
    zp,
    zvar,
)

Partition = tuple[int, ...]


def normalize_partition(parts: Sequence[int]) -> Partition:
    """Validate weak decrease and strip trailing zeros."""
    parts = tuple(int(p) for p in parts)
    if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError(f"{parts} is not weakly decreasing")
    if parts and parts[-1] < 0:
        raise ValueError("parts must be nonnegative")
    while parts and parts[-1] == 0:
        parts = parts[:-1]
    return parts


def contains(lam: Partition, mu: Partition) -> bool:
    lam, mu = normalize_partition(lam), normalize_partition(mu)
    if len(mu) > len(lam):
        return False
    return all(mu[i] <= lam[i] for i in range(len(mu)))


@cache
def elementary_e(j: int, variables: tuple[VarId, ...]) -> MultiPoly:
    """j-th elementary symmetric polynomial; 0 outside 0 <= j <= len(vars)."""
    m = len(variables)
    if j < 0 or j > m:
        return ZERO
    if j == 0:
        return ONE
    out = ZERO
    for combo in combinations(variables, j):
        out = out + prod(MultiPoly.var(v) for v in combo)
    return out


@cache
def _complete_h_plain(k: int, variables: tuple[VarId, ...]) -> MultiPoly:
    if k < 0:
        return ZERO
    if k == 0:
        return ONE
    if not variables:
        return ZERO
    head, tail = variables[-1], variables[:-1]
    return _complete_h_plain(k, tail) + MultiPoly.var(head) * _complete_h_plain(k - 1, variables)


@cache
def complete_h(k: int, xs: tuple[VarId, ...], ys: tuple[VarId, ...] = ()) -> MultiPoly:
    """Two-alphabet complete function: sum_i h_i(x) e_{k-i}(y)."""
    if k < 0:
        return ZERO
    if not ys:
        return _complete_h_plain(k, xs)
    out = ZERO
    for i in range(k + 1):
        e = elementary_e(k - i, ys)
        if e.is_zero():
            continue
        out = out + _complete_h_plain(i, xs) * e
    return out


def jt_matrix(lam: Partition, mu: Partition, xs: tuple[VarId, ...], ys: tuple[VarId, ...] = ()):
    n = max(len(lam), len(mu))
    lam = lam + (0,) * (n - len(lam))
    mu = mu + (0,) * (n - len(mu))
    return [
        [complete_h(lam[q] - mu[p] - (q + 1) + (p + 1), xs, ys) for q in range(n)]
        for p in range(n)
    ]


def schur_jt(
    lam: Sequence[int],
    xs: Sequence[VarId],
    ys: Sequence[VarId] = (),
    mu: Sequence[int] = (),
) -> MultiPoly:
    """(Skew, possibly supersymmetric) Schur polynomial via the h-determinant."""
    lam = normalize_partition(lam)
    mu = normalize_partition(mu)
    if not lam and not mu:
        return ONE
    det = poly_det(jt_matrix(lam, mu, tuple(xs), tuple(ys)))
    if not contains(lam, mu):
        assert det.is_zero(), "determinant must vanish when the skew shape is empty"
    return det


def _skew_rows(lam: Partition, mu: Partition) -> list[tuple[int, int]]:
    n = len(lam)
    mu = mu + (0,) * (n - len(mu))
    return [(mu[i], lam[i]) for i in range(n)]


def schur_tableaux(lam: Sequence[int], xs: Sequence[VarId], mu: Sequence[int] = ()) -> MultiPoly:
    """Independent oracle: sum over semistandard skew tableaux with entries 1..n."""
    lam = normalize_partition(lam)
    mu = normalize_partition(mu)
    if not contains(lam, mu):
        return ZERO
    if not lam:
        return ONE
    xs = tuple(xs)
    nvals = len(xs)
    rows = _skew_rows(lam, mu)

    out = ZERO

    def fill(row: int, fillings: list[tuple[int, ...]]) -> None:
        nonlocal out
        if row == len(rows):
            mono = ONE
            for filling in fillings:
                for v in filling:
                    mono = mono * MultiPoly.var(xs[v - 1])
            out = out + mono
            return
        lo, hi = rows[row]
        width = hi - lo

        def cells(col: int, prev: int, acc: tuple[int, ...]) -> None:
            if col == width:
                fill(row + 1, fillings + [acc])
                return
            j = lo + col  # absolute column index of this cell
            floor_val = 1
            if row > 0:
                above_lo, above_hi = rows[row - 1]
                if above_lo <= j < above_hi:
                    floor_val = fillings[row - 1][j - above_lo] + 1  # strict down columns
            lo_val = max(prev, floor_val)
            for val in range(lo_val, nvals + 1):
                cells(col + 1, val, acc + (val,))

        cells(0, 1, ())

    fill(0, [])
    return out


def pieri_e(nu: Sequence[int], i: int, cap_rows: Optional[int] = None) -> set[Partition]:
    """Shapes obtained from nu by adding a vertical i-strip (<= 1 box per row)."""
    nu = normalize_partition(nu)
    if i < 0:
        raise ValueError("strip size must be nonnegative")
    if i == 0:
        return {nu} if cap_rows is None or len(nu) <= cap_rows else set()
    max_rows = len(nu) + i
    padded = nu + (0,) * (max_rows - len(nu))
    out: set[Partition] = set()
    for rows in combinations(range(max_rows), i):
        cand = list(padded)
        for r in rows:
            cand[r] += 1
        if all(cand[j] >= cand[j + 1] for j in range(len(cand) - 1)):
            shape = normalize_partition(cand)
            if cap_rows is None or len(shape) <= cap_rows:
                out.add(shape)
    return out


def super_h_series_check(
    xs: Sequence[VarId], ys: Sequence[VarId], degree: int
) -> bool:
    """Generating identity: sum_k h_k[x|y] z^k = prod (1+z y_j)/(1-z x_i)."""
    z = zvar(99)
    trunc = SeriesTruncation.of(z=degree)
    lhs = ZERO
    for k in range(degree + 1):
        lhs = lhs + complete_h(k, tuple(xs), tuple(ys)) * MultiPoly.var(z, k)
    rhs = ONE
    for x in xs:
        rhs = mul_trunc(rhs, geometric_series(MultiPoly.var(z) * MultiPoly.var(x), trunc), trunc)
    for y in ys:
        rhs = mul_trunc(rhs, ONE + MultiPoly.var(z) * MultiPoly.var(y), trunc)
    return lhs == rhs


def cauchy_check(n: int, degree: int) -> bool:
    """det{1/(1-x_i z_j)} * prod(1-z_i x_j) == prod_{i<j}(x_i-x_j)(z_i-z_j),
    verified as truncated series in total z-degree."""
    if n > 4:
        raise ValueError("cauchy_check limited to n <= 4")
    trunc = SeriesTruncation.of(z=degree)
    mat = [
        [geometric_series(xp(i) * zp(j), trunc) for j in range(1, n + 1)]
        for i in range(1, n + 1)
    ]
    det = poly_det(mat, trunc=trunc)
    lhs = det
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            lhs = mul_trunc(lhs, ONE - zp(i) * xp(j), trunc)
    rhs = ONE
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            rhs = rhs * (xp(i) - xp(j)) * (zp(i) - zp(j))
    return lhs == truncate(rhs, trunc)
