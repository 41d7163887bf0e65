"""Exact arithmetic substrate: sparse multivariate Laurent polynomials over Q.

Everything downstream (Fock coefficients, Boltzmann weights, partition
functions) is carried by :class:`MultiPoly`.  Coefficients are
``fractions.Fraction``; monomials are sparse exponent vectors over
:class:`VarId`.  Negative exponents are permitted only for the ``x`` and
``z`` variable classes (the ``t`` and ``y`` classes are ordinary polynomial
variables), which catches a whole family of sign/index bugs at construction
time.

The canonical term order is graded lexicographic over the fixed variable
order (class-major: x < y < t < z, then index).  Text and JSON serializations
list terms in descending canonical order and are byte-stable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import cmp_to_key
from typing import Callable, Iterable, Mapping, NamedTuple, Optional, Union

CLASS_RANK = {"x": 0, "y": 1, "t": 2, "z": 3}
LAURENT_CLASSES = frozenset({"x", "z"})

ScalarLike = Union[int, Fraction]


class VarId(NamedTuple):
    """A variable: one of the four symbol classes with a positive index."""

    cls: str
    index: int

    @property
    def rank(self) -> tuple[int, int]:
        return (CLASS_RANK[self.cls], self.index)

    def __str__(self) -> str:
        return f"{self.cls}{self.index}"


def make_var(cls: str, index: int) -> VarId:
    if cls not in CLASS_RANK:
        raise ValueError(f"unknown variable class {cls!r}")
    if index < 1:
        raise ValueError("variable index must be >= 1")
    return VarId(cls, index)


def parse_var(name: str) -> VarId:
    """Parse ``x12``-style variable names."""
    if len(name) < 2 or name[0] not in CLASS_RANK or not name[1:].isdigit():
        raise ValueError(f"bad variable name {name!r}")
    return make_var(name[0], int(name[1:]))


def xvar(i: int) -> VarId:
    return make_var("x", i)


def yvar(i: int) -> VarId:
    return make_var("y", i)


def tvar(i: int) -> VarId:
    return make_var("t", i)


def zvar(i: int) -> VarId:
    return make_var("z", i)


# A monomial is a tuple of (VarId, exponent) pairs, sorted by variable rank,
# with no zero exponents.  The empty tuple is the constant monomial.
Monomial = tuple[tuple[VarId, int], ...]

_EMPTY: Monomial = ()


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    while i < len(a) and j < len(b):
        va, ea = a[i]
        vb, eb = b[j]
        ra, rb = va.rank, vb.rank
        if ra < rb:
            out.append(a[i])
            i += 1
        elif ra > rb:
            out.append(b[j])
            j += 1
        else:
            e = ea + eb
            if e:
                out.append((va, e))
            i += 1
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def _mono_degree(m: Monomial) -> int:
    return sum(e for _, e in m)


def _mono_cmp(a: Monomial, b: Monomial) -> int:
    """Graded lex: higher total degree first, ties by first differing exponent."""
    da, db = _mono_degree(a), _mono_degree(b)
    if da != db:
        return 1 if da > db else -1
    i = j = 0
    while i < len(a) or j < len(b):
        if i < len(a) and (j >= len(b) or a[i][0].rank < b[j][0].rank):
            va, ea, eb = a[i][0], a[i][1], 0
            i += 1
        elif j < len(b) and (i >= len(a) or b[j][0].rank < a[i][0].rank):
            va, ea, eb = b[j][0], 0, b[j][1]
            j += 1
        else:
            va, ea, eb = a[i][0], a[i][1], b[j][1]
            i += 1
            j += 1
        if ea != eb:
            return 1 if ea > eb else -1
    return 0


_MONO_KEY = cmp_to_key(_mono_cmp)


def _validate_mono(m: Monomial) -> None:
    for v, e in m:
        if e < 0 and v.cls not in LAURENT_CLASSES:
            raise ValueError(f"negative exponent not allowed for {v} (class {v.cls!r})")


class MultiPoly:
    """Sparse multivariate Laurent polynomial with exact rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[Monomial, ScalarLike]] = None, *, _raw: bool = False):
        if terms is None:
            self.terms: dict[Monomial, Fraction] = {}
        elif _raw:
            self.terms = dict(terms)  # trusted: canonical monomials, nonzero Fractions
        else:
            out: dict[Monomial, Fraction] = {}
            for m, c in terms.items():
                m = tuple(sorted(((v, int(e)) for v, e in m if e), key=lambda p: p[0].rank))
                _validate_mono(m)
                c = Fraction(c)
                if c:
                    acc = out.get(m)
                    acc = c if acc is None else acc + c
                    if acc:
                        out[m] = acc
                    else:
                        del out[m]
            self.terms = out

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "MultiPoly":
        return cls()

    @classmethod
    def scalar(cls, c: ScalarLike) -> "MultiPoly":
        c = Fraction(c)
        return cls({_EMPTY: c} if c else {}, _raw=True)

    @classmethod
    def one(cls) -> "MultiPoly":
        return cls.scalar(1)

    @classmethod
    def var(cls, v: VarId, exp: int = 1, coeff: ScalarLike = 1) -> "MultiPoly":
        if exp == 0:
            return cls.scalar(coeff)
        if exp < 0 and v.cls not in LAURENT_CLASSES:
            raise ValueError(f"negative exponent not allowed for {v}")
        c = Fraction(coeff)
        return cls({((v, exp),): c} if c else {}, _raw=True)

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_scalar(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and _EMPTY in self.terms)

    def as_scalar(self) -> Fraction:
        if not self.terms:
            return Fraction(0)
        if not self.is_scalar():
            raise ValueError("polynomial is not a scalar")
        return self.terms[_EMPTY]

    def variables(self) -> set[VarId]:
        return {v for m in self.terms for v, _ in m}

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "MultiPoly") -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return NotImplemented
        big, small = (self.terms, other.terms) if len(self.terms) >= len(other.terms) else (other.terms, self.terms)
        out = dict(big)
        for m, c in small.items():
            acc = out.get(m)
            acc = c if acc is None else acc + c
            if acc:
                out[m] = acc
            else:
                del out[m]
        return MultiPoly(out, _raw=True)

    def __neg__(self) -> "MultiPoly":
        return MultiPoly({m: -c for m, c in self.terms.items()}, _raw=True)

    def __sub__(self, other: "MultiPoly") -> "MultiPoly":
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other: Union["MultiPoly", ScalarLike]) -> "MultiPoly":
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        out: dict[Monomial, Fraction] = {}
        a, b = self.terms, other.terms
        if len(a) < len(b):
            a, b = b, a
        for mb, cb in b.items():
            for ma, ca in a.items():
                m = _mono_mul(ma, mb)
                c = ca * cb
                acc = out.get(m)
                acc = c if acc is None else acc + c
                if acc:
                    out[m] = acc
                else:
                    del out[m]
        return MultiPoly(out, _raw=True)

    __rmul__ = __mul__

    def scale(self, c: ScalarLike) -> "MultiPoly":
        c = Fraction(c)
        if not c:
            return MultiPoly.zero()
        return MultiPoly({m: cc * c for m, cc in self.terms.items()}, _raw=True)

    def __pow__(self, k: int) -> "MultiPoly":
        if k < 0:
            if len(self.terms) == 1:
                ((m, c),) = self.terms.items()
                inv_m = tuple((v, -e) for v, e in m)
                _validate_mono(inv_m)
                return MultiPoly({inv_m: 1 / c}, _raw=True) ** (-k)
            raise ValueError("negative power of a non-monomial")
        out = MultiPoly.one()
        base = self
        while k:
            if k & 1:
                out = out * base
            base_needed = k >> 1
            if base_needed:
                base = base * base
            k >>= 1
        return out

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MultiPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    # -- structure ---------------------------------------------------------

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ValueError("zero polynomial has no leading monomial")
        return max(self.terms, key=_MONO_KEY)

    def total_degree(self) -> int:
        if not self.terms:
            return 0
        return max(_mono_degree(m) for m in self.terms)

    def class_degree(self, cls: str) -> int:
        """Maximum total exponent of the given class over all terms."""
        best = 0
        for m in self.terms:
            d = sum(e for v, e in m if v.cls == cls)
            best = max(best, d)
        return best

    def coefficient(self, m: Monomial) -> Fraction:
        return self.terms.get(tuple(sorted(m, key=lambda p: p[0].rank)), Fraction(0))

    def substitute(self, mapping: Mapping[VarId, "MultiPoly"]) -> "MultiPoly":
        """Replace variables by polynomials (or scalars wrapped as polynomials).

        A variable occurring with a negative exponent may only be replaced by
        a nonzero monomial (so the inverse stays in the Laurent ring).
        """
        out = MultiPoly.zero()
        for m, c in self.terms.items():
            term = MultiPoly.scalar(c)
            rest: list[tuple[VarId, int]] = []
            for v, e in m:
                rep = mapping.get(v)
                if rep is None:
                    rest.append((v, e))
                else:
                    term = term * (rep ** e)
            if rest:
                term = term * MultiPoly({tuple(rest): Fraction(1)})
            out = out + term
        return out

    def evaluate(self, values: Mapping[VarId, ScalarLike]) -> "MultiPoly":
        return self.substitute({v: MultiPoly.scalar(c) for v, c in values.items()})

    # -- serialization -----------------------------------------------------

    def sorted_terms(self) -> list[tuple[Monomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda mc: _MONO_KEY(mc[0]), reverse=True)

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = [str(c)] + [f"{v}^{e}" if e != 1 else str(v) for v, e in m]
            parts.append("*".join(factors))
        text = parts[0]
        for p in parts[1:]:
            if p.startswith("-"):
                text += " - " + p[1:]
            else:
                text += " + " + p
        return text

    def to_json_obj(self) -> list[dict]:
        return [
            {"coeff": str(c), "exponents": {str(v): e for v, e in m}}
            for m, c in self.sorted_terms()
        ]

    def to_json(self) -> str:
        return json.dumps(self.to_json_obj(), separators=(",", ":"))

    @classmethod
    def from_json_obj(cls, obj: Iterable[dict]) -> "MultiPoly":
        terms: dict[Monomial, Fraction] = {}
        for entry in obj:
            m = tuple((parse_var(name), int(e)) for name, e in entry["exponents"].items())
            terms[m] = Fraction(entry["coeff"])
        return cls(terms)

    @classmethod
    def from_json(cls, text: str) -> "MultiPoly":
        return cls.from_json_obj(json.loads(text))

    def __repr__(self) -> str:
        return f"MultiPoly({self.to_text()})"


ZERO = MultiPoly.zero()
ONE = MultiPoly.one()


def xp(i: int, exp: int = 1) -> MultiPoly:
    return MultiPoly.var(xvar(i), exp)


def yp(i: int, exp: int = 1) -> MultiPoly:
    return MultiPoly.var(yvar(i), exp)


def tp(i: int, exp: int = 1) -> MultiPoly:
    return MultiPoly.var(tvar(i), exp)


def zp(i: int, exp: int = 1) -> MultiPoly:
    return MultiPoly.var(zvar(i), exp)


def ring_arith(a: MultiPoly, b: MultiPoly, op: str) -> MultiPoly:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown op {op!r}")


def prod(polys: Iterable[MultiPoly]) -> MultiPoly:
    out = ONE
    for p in polys:
        out = out * p
    return out


# -- coefficient extraction -------------------------------------------------


def coefficient_extract(p: MultiPoly, pattern: Mapping[VarId, int]) -> MultiPoly:
    """Coefficient of the given z-monomial, as a polynomial in the other vars.

    Every z-class variable appearing in ``p`` must be assigned an exponent by
    ``pattern`` (possibly 0); terms whose z-part differs are dropped.
    """
    for v in pattern:
        if v.cls != "z":
            raise ValueError(f"pattern variable {v} is not z-class")
    want = {v: e for v, e in pattern.items()}
    out: dict[Monomial, Fraction] = {}
    for m, c in p.terms.items():
        zpart = {}
        rest = []
        for v, e in m:
            if v.cls == "z":
                zpart[v] = e
            else:
                rest.append((v, e))
        covered = set(zpart) | set(want)
        for v in covered:
            if v not in want:
                raise ValueError(f"z-variable {v} present in polynomial but not in pattern")
        if all(zpart.get(v, 0) == e for v, e in want.items()):
            key = tuple(rest)
            acc = out.get(key)
            acc = c if acc is None else acc + c
            if acc:
                out[key] = acc
            else:
                del out[key]
    return MultiPoly(out, _raw=True)


# -- truncated series -------------------------------------------------------


@dataclass(frozen=True)
class SeriesTruncation:
    """Per-variable-class total degree caps; terms above any cap are dropped."""

    caps: tuple[tuple[str, int], ...]

    @classmethod
    def of(cls, **caps: int) -> "SeriesTruncation":
        for k, v in caps.items():
            if k not in CLASS_RANK:
                raise ValueError(f"unknown variable class {k!r}")
            if v < 0:
                raise ValueError("cap must be nonnegative")
        return cls(tuple(sorted(caps.items())))

    def cap_for(self, cls_name: str) -> Optional[int]:
        for k, v in self.caps:
            if k == cls_name:
                return v
        return None

    def admits(self, m: Monomial) -> bool:
        for k, cap in self.caps:
            if sum(e for v, e in m if v.cls == k) > cap:
                return False
        return True


def truncate(p: MultiPoly, trunc: SeriesTruncation) -> MultiPoly:
    return MultiPoly({m: c for m, c in p.terms.items() if trunc.admits(m)}, _raw=True)


def mul_trunc(a: MultiPoly, b: MultiPoly, trunc: Optional[SeriesTruncation]) -> MultiPoly:
    out = a * b
    return truncate(out, trunc) if trunc is not None else out


def _as_monomial(p: MultiPoly) -> tuple[Monomial, Fraction]:
    if len(p.terms) != 1:
        raise ValueError("expected a single monomial")
    ((m, c),) = p.terms.items()
    return m, c


def geometric_series(ratio: MultiPoly, trunc: SeriesTruncation) -> MultiPoly:
    """1/(1 - ratio) as a truncated series; ratio must be a monomial that the
    truncation eventually kills."""
    m, c = _as_monomial(ratio)
    if not any(sum(e for v, e in m if v.cls == k) > 0 for k, _ in trunc.caps):
        raise ValueError("geometric ratio does not grow in any truncated class")
    out = ONE
    power = ONE
    while True:
        power = truncate(power * ratio, trunc)
        if power.is_zero():
            return out
        out = out + power


def series_expand(
    factors: Iterable[tuple[Optional[MultiPoly], Optional[MultiPoly]]],
    trunc: SeriesTruncation,
) -> MultiPoly:
    """Expand a product of rational factors (numerator, 1 - monomial) exactly
    up to the truncation.  Either member of a pair may be None (treated as 1).
    """
    out = ONE
    for num, den in factors:
        if den is not None:
            terms = dict(den.terms)
            const = terms.pop(_EMPTY, None)
            if const != Fraction(1) or len(terms) != 1:
                raise ValueError(f"denominator factor {den.to_text()} is not 1 - monomial")
            ((m, c),) = terms.items()
            ratio = MultiPoly({m: -c}, _raw=True)
            out = mul_trunc(out, geometric_series(ratio, trunc), trunc)
        if num is not None:
            out = mul_trunc(out, num, trunc)
    return out


def series_exp(p: MultiPoly, trunc: SeriesTruncation) -> MultiPoly:
    """exp(p) as a truncated series; every term of p must grow in a truncated
    class so the sum terminates."""
    for m in p.terms:
        if not any(sum(e for v, e in m if v.cls == k) > 0 for k, _ in trunc.caps):
            raise ValueError("series_exp argument has a term the truncation never kills")
    out = ONE
    term = ONE
    k = 0
    while True:
        k += 1
        term = truncate(term * p, trunc).scale(Fraction(1, k))
        if term.is_zero():
            return out
        out = out + term


# -- determinants ------------------------------------------------------------

DET_SIZE_CAP = 8


def poly_det(
    mat: list[list[MultiPoly]],
    trunc: Optional[SeriesTruncation] = None,
    size_cap: int = DET_SIZE_CAP,
) -> MultiPoly:
    """Determinant by cofactor expansion (desk-scale; size <= size_cap)."""
    n = len(mat)
    if any(len(row) != n for row in mat):
        raise ValueError("matrix is not square")
    if n > size_cap:
        raise ValueError(f"matrix size {n} exceeds cap {size_cap}")
    if n == 0:
        return ONE

    def rec(rows: tuple[int, ...], col: int) -> MultiPoly:
        if len(rows) == 1:
            return mat[rows[0]][col]
        out = ZERO
        sign = 1
        for k, r in enumerate(rows):
            entry = mat[r][col]
            if entry.is_zero():
                sign = -sign
                continue
            rest = rows[:k] + rows[k + 1 :]
            sub = rec(rest, col + 1)
            term = mul_trunc(entry, sub, trunc)
            out = out + (term if sign > 0 else -term)
            sign = -sign
        return out

    return rec(tuple(range(n)), 0)


def det_perm_sum(mat: list[list[MultiPoly]], trunc: Optional[SeriesTruncation] = None) -> MultiPoly:
    """Independent oracle: determinant straight from the permutation sum (n <= 4)."""
    from itertools import permutations

    n = len(mat)
    if any(len(row) != n for row in mat):
        raise ValueError("matrix is not square")
    if n > 4:
        raise ValueError("permutation-sum determinant limited to n <= 4")
    out = ZERO
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = ONE
        for i in range(n):
            term = mul_trunc(term, mat[i][perm[i]], trunc)
        out = out + (term if inversions % 2 == 0 else -term)
    return out


# -- exact division ----------------------------------------------------------


class NotDivisible(ArithmeticError):
    """Raised when exact_divide finds no Laurent-polynomial quotient."""


def _content(p: MultiPoly) -> dict[VarId, int]:
    """Componentwise minimum exponent over all terms (missing vars count 0)."""
    vars_all = p.variables()
    content: dict[VarId, int] = {}
    for v in vars_all:
        content[v] = min(dict(m).get(v, 0) for m in p.terms)
    return {v: e for v, e in content.items() if e}


def _shift(p: MultiPoly, by: Mapping[VarId, int]) -> MultiPoly:
    if not by:
        return p
    shift_m = tuple(sorted(((v, e) for v, e in by.items() if e), key=lambda q: q[0].rank))
    return MultiPoly({_mono_mul(m, shift_m): c for m, c in p.terms.items()}, _raw=True)


def exact_divide(p: MultiPoly, q: MultiPoly) -> MultiPoly:
    """Return r with p == q * r, or raise NotDivisible.

    Monomial content is stripped from both arguments first, so Laurent
    inputs reduce to ordinary polynomial division with a monomial shift.
    """
    if q.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    if p.is_zero():
        return ZERO
    cp, cq = _content(p), _content(q)
    phat = _shift(p, {v: -e for v, e in cp.items()})
    qhat = _shift(q, {v: -e for v, e in cq.items()})
    q_lead = qhat.leading_monomial()
    q_lead_d = dict(q_lead)
    q_lc = qhat.terms[q_lead]

    quotient: dict[Monomial, Fraction] = {}
    rem = phat
    while not rem.is_zero():
        lt = rem.leading_monomial()
        lt_d = dict(lt)
        diff = {}
        ok = True
        for v in set(lt_d) | set(q_lead_d):
            e = lt_d.get(v, 0) - q_lead_d.get(v, 0)
            if e < 0:
                ok = False
                break
            if e:
                diff[v] = e
        if not ok:
            raise NotDivisible(f"{p.to_text()} is not divisible by {q.to_text()}")
        cm = tuple(sorted(diff.items(), key=lambda q2: q2[0].rank))
        cc = rem.terms[lt] / q_lc
        quotient[cm] = cc
        rem = rem - MultiPoly({cm: cc}, _raw=True) * qhat
    result = MultiPoly(quotient, _raw=True)
    net = dict(cp)
    for v, e in cq.items():
        net[v] = net.get(v, 0) - e
    result = _shift(result, net)
    for m in result.terms:
        try:
            _validate_mono(m)
        except ValueError as exc:
            raise NotDivisible(str(exc)) from exc
    return result
