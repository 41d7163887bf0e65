"""Discrete-time evolution of Fock states and the one-step bracket formulas.

Each time step applies ``exp(sum_q s_q J_{+-q})`` for coefficients
``s_q = (1 - (-t)^q)/q * x^{+-q}``.  The exponential is expanded exactly
within a displacement budget: a term built from currents ``J_{q_1} ... J_{q_m}``
moves mode-sum by ``q_1 + ... + q_m``, so keeping only products with total
displacement ``<= D`` is exact for any bracket whose endpoints differ by at
most ``D``.

Brute-force brackets computed this way are the oracles; the closed forms
(interleaving statistics, factorized products) are checked against them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from typing import Callable, Iterator, Sequence, Union

from .fock import (
    FockState,
    FockVector,
    apply_annihilate,
    create_state,
    displacement,
    inner,
    j_moves,
    state_from_strict,
    vacuum,
)
from .ring import ONE, ZERO, MultiPoly, VarId, prod
from .symfun import schur_jt

TParam = Union[VarId, Fraction, int]


def t_poly(t: TParam, power: int = 1) -> MultiPoly:
    if isinstance(t, VarId):
        if t.cls != "t":
            raise ValueError(f"deformation parameter must be t-class, got {t}")
        return MultiPoly.var(t, power)
    return MultiPoly.scalar(Fraction(t) ** power)


@dataclass(frozen=True)
class EvolutionSpec:
    """One time step: direction (plus = leftward), spectral x, deformation t."""

    direction: str
    x: VarId
    t: TParam

    def __post_init__(self):
        if self.direction not in ("plus", "minus"):
            raise ValueError("direction must be 'plus' or 'minus'")
        if self.x.cls != "x":
            raise ValueError(f"spectral variable must be x-class, got {self.x}")
        if isinstance(self.t, VarId) and self.t.cls != "t":
            raise ValueError(f"deformation parameter must be t-class, got {self.t}")


def s_coeff(q: int, spec: EvolutionSpec) -> MultiPoly:
    """Current coefficient (1 - (-t)^q)/q * x^{+-q}."""
    if q < 1:
        raise ValueError("q must be >= 1")
    sign = 1 if spec.direction == "plus" else -1
    xpow = MultiPoly.var(spec.x, sign * q)
    lead = xpow.scale(Fraction(1, q))
    tfac = t_poly(spec.t, q).scale(Fraction((-1) ** (q + 1), q))
    return lead + tfac * xpow


def apply_exp_current(
    v: FockVector,
    s_of_q: Callable[[int], MultiPoly],
    direction: str,
    budget: int,
) -> FockVector:
    """exp(sum_q s_of_q(q) J_{+-q}) applied to v, exactly up to total
    displacement `budget`."""
    if direction not in ("plus", "minus"):
        raise ValueError("direction must be 'plus' or 'minus'")
    if budget < 0:
        raise ValueError("budget must be nonnegative")
    qsign = 1 if direction == "plus" else -1
    s_cache: dict[int, MultiPoly] = {}
    result: dict[FockState, MultiPoly] = dict(v.terms)
    level: dict[tuple[FockState, int], MultiPoly] = {(s, 0): c for s, c in v.terms.items()}
    m = 0
    while level:
        m += 1
        inv_m = Fraction(1, m)
        nxt: dict[tuple[FockState, int], MultiPoly] = {}
        for (st, d), c in level.items():
            for q in range(1, budget - d + 1):
                sq = s_cache.get(q)
                if sq is None:
                    sq = s_of_q(q)
                    s_cache[q] = sq
                if sq.is_zero():
                    continue
                moves = j_moves(st, qsign * q)
                if not moves:
                    continue
                base = c * sq
                for sgn, st2 in moves:
                    c2 = base if sgn > 0 else -base
                    key = (st2, d + q)
                    prev = nxt.get(key)
                    prev = c2 if prev is None else prev + c2
                    if prev.is_zero():
                        nxt.pop(key, None)
                    else:
                        nxt[key] = prev
        for key in list(nxt):
            scaled = nxt[key].scale(inv_m)
            nxt[key] = scaled
            st = key[0]
            prev = result.get(st)
            prev = scaled if prev is None else prev + scaled
            if prev.is_zero():
                result.pop(st, None)
            else:
                result[st] = prev
        level = nxt
    return FockVector(result)


def apply_exp_phi(v: FockVector, spec: EvolutionSpec, budget: int) -> FockVector:
    """One discrete time step applied to v, exact up to the displacement budget."""
    return apply_exp_current(v, lambda q: s_coeff(q, spec), spec.direction, budget)


# -- one-step brackets --------------------------------------------------------


def _validate_strict(parts: Sequence[int], name: str) -> tuple[int, ...]:
    parts = tuple(int(p) for p in parts)
    if any(parts[i] <= parts[i + 1] for i in range(len(parts) - 1)):
        raise ValueError(f"{name} must be strictly decreasing, got {parts}")
    if parts and parts[-1] < 1:
        raise ValueError(f"{name} must have positive parts, got {parts}")
    return parts


@dataclass(frozen=True)
class StepStatistics:
    """Interleaving statistics of a one-step transition."""

    r: int  # equalities mu_i == lam_{i+1}
    l: int  # equalities mu_i == lam_i
    s: int  # strict drops lam_i > mu_i
    interleaves: bool


def interleave_statistics(lam: Sequence[int], mu: Sequence[int]) -> StepStatistics:
    lam = _validate_strict(lam, "lam")
    mu = _validate_strict(mu, "mu")
    n = len(lam)
    if len(mu) != n - 1:
        raise ValueError("mu must have one part fewer than lam")
    r = sum(1 for i in range(n - 1) if mu[i] == lam[i + 1])
    l = sum(1 for i in range(n - 1) if mu[i] == lam[i])
    s = sum(1 for i in range(n - 1) if lam[i] > mu[i])
    inter = all(lam[i] >= mu[i] >= lam[i + 1] for i in range(n - 1))
    return StepStatistics(r, l, s, inter)


def one_step_closed_plus(mu: Sequence[int], lam: Sequence[int], x: VarId, t: TParam) -> MultiPoly:
    """Closed form of <mu| e^{phi_+(x;t)} psi at -1/2 |lam>."""
    lam = _validate_strict(lam, "lam")
    mu = _validate_strict(mu, "mu")
    st = interleave_statistics(lam, mu)
    if not st.interleaves:
        return ZERO
    n = len(lam)
    val = MultiPoly.var(x, sum(lam) - sum(mu)).scale(Fraction((-1) ** n))
    if st.r:
        val = val * t_poly(t, st.r)
    return val * (ONE + t_poly(t)) ** (st.s - st.r + 1)


def one_step_closed_minus(
    mu: Sequence[int], lam: Sequence[int], k: int, x: VarId, t: TParam
) -> MultiPoly:
    """Closed form of <mu| psi at k-1/2 e^{phi_-(x;t)} |lam>, for k > lam_1."""
    lam = _validate_strict(lam, "lam")
    mu = _validate_strict(mu, "mu")
    if k <= lam[0]:
        raise ValueError("annihilator index k must exceed lam_1")
    st = interleave_statistics(lam, mu)
    if not st.interleaves:
        return ZERO
    val = MultiPoly.var(x, sum(lam) - sum(mu) - k)
    if st.l:
        val = val * t_poly(t, st.l)
    return val * (ONE + t_poly(t)) ** (st.s - st.r + 1)


def plus_evolution(lam: Sequence[int], x: VarId, t: TParam, budget: int) -> FockVector:
    """e^{phi_+(x;t)} psi_{-1/2} |lam>, exact up to the displacement budget."""
    lam = _validate_strict(lam, "lam")
    v = apply_annihilate(0, FockVector.unit(state_from_strict(lam)))
    if v.is_zero():
        return v
    return apply_exp_phi(v, EvolutionSpec("plus", x, t), budget)


def minus_evolution(lam: Sequence[int], x: VarId, t: TParam, budget: int) -> FockVector:
    """e^{phi_-(x;t)} |lam>, exact up to the displacement budget."""
    lam = _validate_strict(lam, "lam")
    v = FockVector.unit(state_from_strict(lam))
    return apply_exp_phi(v, EvolutionSpec("minus", x, t), budget)


def extract_minus(w: FockVector, mu: Sequence[int], k: int) -> MultiPoly:
    """<mu| psi at k-1/2 applied to an evolved vector w."""
    mu = _validate_strict(mu, "mu")
    res = create_state(state_from_strict(mu), k)
    if res is None:
        return ZERO
    sgn, target = res
    val = inner(target, w)
    return val if sgn > 0 else -val


def one_step_oracle_plus(mu: Sequence[int], lam: Sequence[int], x: VarId, t: TParam) -> MultiPoly:
    """Brute-force <mu| e^{phi_+(x;t)} psi_{-1/2} |lam> by expanding the
    exponential over leftward particle migrations."""
    lam = _validate_strict(lam, "lam")
    mu = _validate_strict(mu, "mu")
    if len(mu) != len(lam) - 1:
        raise ValueError("mu must have one part fewer than lam")
    ket = state_from_strict(lam)
    v = apply_annihilate(0, FockVector.unit(ket))
    if v.is_zero():
        return ZERO
    (src,) = v.terms
    bra = state_from_strict(mu)
    d = displacement(src, bra)
    if d is None or d < 0:
        return ZERO
    w = apply_exp_phi(v, EvolutionSpec("plus", x, t), d)
    return inner(bra, w)


def one_step_oracle_minus(
    mu: Sequence[int], lam: Sequence[int], k: int, x: VarId, t: TParam
) -> MultiPoly:
    """Brute-force <mu| psi at k-1/2 e^{phi_-(x;t)} |lam> by expanding the
    exponential over rightward particle migrations."""
    lam = _validate_strict(lam, "lam")
    mu = _validate_strict(mu, "mu")
    if k <= lam[0]:
        raise ValueError("annihilator index k must exceed lam_1")
    if len(mu) != len(lam) - 1:
        raise ValueError("mu must have one part fewer than lam")
    res = create_state(state_from_strict(mu), k)
    if res is None:
        return ZERO
    sgn, target = res
    ket = state_from_strict(lam)
    d = displacement(target, ket)
    if d is None or d < 0:
        return ZERO
    w = minus_evolution(lam, x, t, d)
    val = inner(target, w)
    return val if sgn > 0 else -val


# -- full products over all time steps ----------------------------------------


def interleaving_shapes(lam: tuple[int, ...]) -> Iterator[tuple[int, ...]]:
    """All strict mu with len(lam)-1 parts interleaving lam."""
    n = len(lam)
    if n == 1:
        yield ()
        return
    ranges = [range(lam[i + 1], lam[i] + 1) for i in range(n - 1)]
    for combo in iproduct(*ranges):
        if all(combo[i] > combo[i + 1] for i in range(len(combo) - 1)):
            yield tuple(combo)


def chain_bracket(
    lam: Sequence[int],
    side: str,
    xs: Sequence[VarId],
    ts: Sequence[TParam],
) -> MultiPoly:
    """Bracket of the full n-step product, summed over interleaving chains of
    one-step closed forms.

    Plus side: step lam^(i) -> lam^(i-1) carries (x_i, t_i), the x_n step
    acting first.  Minus side: the x_1 step acts first and every step
    annihilates at mode lam_1 + 1.
    """
    lam = _validate_strict(lam, "lam")
    n = len(lam)
    if len(xs) != n or len(ts) != n:
        raise ValueError("need one (x, t) pair per part")
    if side not in ("plus", "minus"):
        raise ValueError("side must be 'plus' or 'minus'")
    k = lam[0] + 1

    def step(mu: tuple[int, ...], shape: tuple[int, ...], i: int) -> MultiPoly:
        if side == "plus":
            return one_step_closed_plus(mu, shape, xs[i - 1], ts[i - 1])
        return one_step_closed_minus(mu, shape, k, xs[n - i], ts[n - i])

    def down(shape: tuple[int, ...], i: int) -> MultiPoly:
        if i == 0:
            return ONE
        total = ZERO
        for mu in interleaving_shapes(shape):
            w = step(mu, shape, i)
            if w.is_zero():
                continue
            total = total + w * down(mu, i - 1)
        return total

    return down(lam, n)


def factorized_bracket(
    lam: Sequence[int],
    side: str,
    xs: Sequence[VarId],
    ts: Sequence[TParam],
) -> MultiPoly:
    """Closed product form of the full n-step bracket."""
    lam = _validate_strict(lam, "lam")
    n = len(lam)
    if len(xs) != n or len(ts) != n:
        raise ValueError("need one (x, t) pair per part")
    shifted = [lam[i] - (n - i) for i in range(n)]  # lam - (n, n-1, ..., 1)
    schur = schur_jt(shifted, xs)
    if side == "plus":
        head = prod(
            MultiPoly.var(xs[i]).scale((-1) ** (i + 1)) * (t_poly(ts[i]) + ONE)
            for i in range(n)
        )
        cross = prod(
            MultiPoly.var(xs[i]) + t_poly(ts[j]) * MultiPoly.var(xs[j])
            for i in range(n)
            for j in range(i + 1, n)
        )
    elif side == "minus":
        head = prod(
            MultiPoly.var(xs[i], -lam[0]) * (t_poly(ts[i]) + ONE) for i in range(n)
        )
        cross = prod(
            MultiPoly.var(xs[i]) + t_poly(ts[i]) * MultiPoly.var(xs[j])
            for i in range(n)
            for j in range(i + 1, n)
        )
    else:
        raise ValueError("side must be 'plus' or 'minus'")
    return head * cross * schur


def product_bracket_oracle(
    lam: Sequence[int],
    side: str,
    xs: Sequence[VarId],
    ts: Sequence[TParam],
) -> MultiPoly:
    """Brute-force bracket of the full n-step product against the vacuum bra."""
    v = apply_product(lam, side, xs, ts)
    return inner(vacuum(0), v)


def apply_product(
    lam: Sequence[int],
    side: str,
    xs: Sequence[VarId],
    ts: Sequence[TParam],
) -> FockVector:
    """Apply all n time-step factors to |lam>, rightmost factor first."""
    lam = _validate_strict(lam, "lam")
    n = len(lam)
    if len(xs) != n or len(ts) != n:
        raise ValueError("need one (x, t) pair per part")
    v = FockVector.unit(state_from_strict(lam))
    if side == "plus":
        for i in range(n, 0, -1):
            v = apply_annihilate(0, v)
            budget = 0
            for st in v.terms:
                d = displacement(st, vacuum(st.charge))
                budget = max(budget, d if d is not None else 0)
            v = apply_exp_phi(v, EvolutionSpec("plus", xs[i - 1], ts[i - 1]), budget)
    elif side == "minus":
        k = lam[0] + 1
        for i in range(1, n + 1):
            v = apply_exp_phi(v, EvolutionSpec("minus", xs[i - 1], ts[i - 1]), k)
            v = apply_annihilate(k, v)
    else:
        raise ValueError("side must be 'plus' or 'minus'")
    return v
