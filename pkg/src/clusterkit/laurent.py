"""Exact multivariate Laurent polynomials over the rationals.

Terms are kept in a map from integer exponent vectors (entries may be
negative) to nonzero rational coefficients.  Coefficients are plain ints
whenever the denominator is 1, and `fractions.Fraction` otherwise; no
floating point is used anywhere.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

Coef = Union[int, Fraction]
Exponent = tuple[int, ...]


class PoleError(ZeroDivisionError):
    """Evaluation at a point where a negative exponent meets a zero coordinate."""


def _norm_coef(c: Coef) -> Coef:
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c)
    return c


class LaurentPoly:
    """Immutable Laurent polynomial; the zero polynomial has no terms."""

    __slots__ = ("nvars", "_terms", "_key", "_hash")

    def __init__(self, nvars: int, terms: Mapping[Exponent, Coef] | None = None):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        clean: dict[Exponent, Coef] = {}
        if terms:
            for exp, c in terms.items():
                c = _norm_coef(c)
                if c != 0:
                    e = tuple(int(x) for x in exp)
                    if len(e) != nvars:
                        raise ValueError(f"exponent {e} has wrong length for nvars={nvars}")
                    clean[e] = clean.get(e, 0) + c
            clean = {e: _norm_coef(c) for e, c in clean.items() if c != 0}
        self.nvars = nvars
        self._terms = clean
        self._key = tuple(sorted((e, Fraction(c)) for e, c in clean.items()))
        self._hash = hash((nvars, self._key))

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "LaurentPoly":
        return cls(nvars, {})

    @classmethod
    def constant(cls, nvars: int, c: Coef) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: c})

    @classmethod
    def one(cls, nvars: int) -> "LaurentPoly":
        return cls.constant(nvars, 1)

    @classmethod
    def variable(cls, nvars: int, i: int) -> "LaurentPoly":
        if not 0 <= i < nvars:
            raise IndexError(f"variable index {i} out of range")
        exp = tuple(1 if j == i else 0 for j in range(nvars))
        return cls(nvars, {exp: 1})

    @classmethod
    def monomial(cls, nvars: int, exp: Sequence[int], coef: Coef = 1) -> "LaurentPoly":
        return cls(nvars, {tuple(exp): coef})

    # -- basic protocol ----------------------------------------------------

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self.nvars == other.nvars and self._terms == other._terms

    def __hash__(self) -> int:
        return self._hash

    def sort_key(self):
        """Total order usable for deterministic canonical choices."""
        return (self.nvars, self._key)

    def __repr__(self) -> str:
        return f"LaurentPoly({self.nvars}, {self.to_str()!r})"

    # -- ring operations ---------------------------------------------------

    def _check_same(self, other: "LaurentPoly") -> None:
        if self.nvars != other.nvars:
            raise ValueError(f"nvars mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check_same(other)
        terms = dict(self._terms)
        for e, c in other._terms.items():
            s = terms.get(e, 0) + c
            if s == 0:
                terms.pop(e, None)
            else:
                terms[e] = s
        return LaurentPoly(self.nvars, terms)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.nvars, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other) -> "LaurentPoly":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return LaurentPoly.zero(self.nvars)
            return LaurentPoly(self.nvars, {e: c * other for e, c in self._terms.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        self._check_same(other)
        a, b = self._terms, other._terms
        if len(a) > len(b):
            a, b = b, a
        out: dict[Exponent, Coef] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                e = tuple(x + y for x, y in zip(ea, eb))
                s = out.get(e, 0) + ca * cb
                if s == 0:
                    out.pop(e, None)
                else:
                    out[e] = s
        return LaurentPoly(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentPoly":
        if k < 0:
            if len(self._terms) == 1:
                (e, c), = self._terms.items()
                return LaurentPoly(self.nvars, {tuple(-k * x for x in e): Fraction(1, 1) / Fraction(c) ** (-k)})
            raise ValueError("negative power of a non-monomial")
        result = LaurentPoly.one(self.nvars)
        base = self
        while k:
            if k & 1:
                result = result * base
            base_needed = k >> 1
            if base_needed:
                base = base * base
            k >>= 1
        return result

    def min_exponents(self) -> Exponent:
        """Componentwise minimum exponent over all terms (zero poly disallowed)."""
        if not self._terms:
            raise ValueError("zero polynomial has no exponents")
        cols = zip(*self._terms.keys())
        return tuple(min(col) for col in cols)

    def shift(self, exp: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial x^exp."""
        e0 = tuple(exp)
        return LaurentPoly(self.nvars, {tuple(a + b for a, b in zip(e, e0)): c
                                        for e, c in self._terms.items()})


def add(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p + q


def mul(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    return p * q


def try_div(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly | None:
    """Exact quotient p/q in the Laurent ring, or None when not divisible.

    Monomials are units, so the test reduces to ordinary polynomial
    division after normalizing both arguments to minimum exponent 0.
    """
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    p._check_same(q)
    if p.is_zero():
        return LaurentPoly.zero(p.nvars)
    a = p.min_exponents()
    b = q.min_exponents()
    phat = p.shift(tuple(-x for x in a))._terms
    qhat = q.shift(tuple(-x for x in b))._terms

    # classical single-divisor division in lex order; exact or bust
    q_lead = max(qhat)
    q_lead_coef = qhat[q_lead]
    rem = dict(phat)
    quo: dict[Exponent, Coef] = {}
    while rem:
        p_lead = max(rem)
        e = tuple(x - y for x, y in zip(p_lead, q_lead))
        if any(x < 0 for x in e):
            return None
        c = _norm_coef(Fraction(rem[p_lead]) / Fraction(q_lead_coef))
        quo[e] = c
        for eq, cq in qhat.items():
            key = tuple(x + y for x, y in zip(e, eq))
            s = rem.get(key, 0) - c * cq
            if s == 0:
                rem.pop(key, None)
            else:
                rem[key] = s
    shift_back = tuple(x - y for x, y in zip(a, b))
    return LaurentPoly(p.nvars, quo).shift(shift_back)


@dataclass(frozen=True)
class ReducedForm:
    """p written as numerator / x^denominator with a tight monomial denominator."""

    numerator: LaurentPoly
    denominator: Exponent


def reduced_form(p: LaurentPoly) -> ReducedForm:
    if p.is_zero():
        raise ValueError("zero polynomial has no reduced form")
    mins = p.min_exponents()
    d = tuple(max(0, -x) for x in mins)
    return ReducedForm(p.shift(d), d)


def denominator_vector(p: LaurentPoly) -> Exponent:
    return reduced_form(p).denominator


def evaluate(p: LaurentPoly, point: Sequence[Coef]) -> Fraction:
    """Exact evaluation; raises PoleError on 0 to a negative power."""
    if len(point) != p.nvars:
        raise ValueError("point has wrong length")
    vals = [Fraction(x) for x in point]
    total = Fraction(0)
    for e, c in p._terms.items():
        term = Fraction(c)
        for x, k in zip(vals, e):
            if k == 0:
                continue
            if x == 0:
                if k < 0:
                    raise PoleError(f"evaluation at a pole: 0^{k}")
                term = Fraction(0)
                break
            term *= x ** k
        total += term
    return total


def has_positive_coefficients(p: LaurentPoly) -> bool:
    return all(c > 0 for c in p._terms.values())


# -- text form -------------------------------------------------------------

def default_names(nvars: int) -> list[str]:
    return [f"x{i + 1}" for i in range(nvars)]


def to_str(p: LaurentPoly, names: Sequence[str] | None = None) -> str:
    """Render with terms in lexicographic exponent order, e.g. "3/2*x1^-1*x2^2"."""
    if p.is_zero():
        return "0"
    names = list(names) if names is not None else default_names(p.nvars)
    chunks = []
    for e in sorted(p._terms):
        c = p._terms[e]
        factors = []
        for name, k in zip(names, e):
            if k == 1:
                factors.append(name)
            elif k != 0:
                factors.append(f"{name}^{k}")
        mono = "*".join(factors)
        if not mono:
            body = str(c)
        elif c == 1:
            body = mono
        elif c == -1:
            body = f"-{mono}"
        else:
            body = f"{c}*{mono}"
        if chunks and not body.startswith("-"):
            chunks.append("+")
        chunks.append(body)
    return "".join(chunks)


# convenience alias so LaurentPoly carries its own renderer
LaurentPoly.to_str = to_str  # type: ignore[attr-defined]


_TERM_SPLIT = re.compile(r"(?<![\^*/])([+-])")
_FACTOR = re.compile(r"^([A-Za-z_]\w*)(?:\^(-?\d+))?$")


def parse(text: str, nvars: int, names: Sequence[str] | None = None) -> LaurentPoly:
    """Parse the to_str grammar back into a polynomial."""
    names = list(names) if names is not None else default_names(nvars)
    index = {name: i for i, name in enumerate(names)}
    s = text.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial string")
    if s == "0":
        return LaurentPoly.zero(nvars)
    pieces = _TERM_SPLIT.split(s)
    # pieces alternate: term, sign, term, sign, ...
    terms: dict[Exponent, Coef] = {}
    sign = 1
    pos = 0
    if pieces[0] == "":
        pos = 1  # leading sign
    while pos < len(pieces):
        chunk = pieces[pos]
        if chunk in ("+", "-"):
            sign = 1 if chunk == "+" else -1
            pos += 1
            continue
        coef: Coef = 1
        exp = [0] * nvars
        for factor in chunk.split("*"):
            m = _FACTOR.match(factor)
            if m and m.group(1) in index:
                exp[index[m.group(1)]] += int(m.group(2) or 1)
            else:
                if "/" in factor:
                    num, den = factor.split("/")
                    coef = _norm_coef(coef * Fraction(int(num), int(den)))
                else:
                    coef = _norm_coef(coef * int(factor))
        e = tuple(exp)
        s_c = terms.get(e, 0) + sign * coef
        if s_c == 0:
            terms.pop(e, None)
        else:
            terms[e] = s_c
        sign = 1
        pos += 1
    return LaurentPoly(nvars, terms)


def format_fraction(p: LaurentPoly, names: Sequence[str] | None = None) -> str:
    """Human display as numerator/denominator, e.g. "(1+x1+x2)/(x1*x2)".

    Numerator terms are ordered by total degree and then by variable
    index, which matches how these expressions are usually written.
    """
    if p.is_zero():
        return "0"
    names = list(names) if names is not None else default_names(p.nvars)
    rf = reduced_form(p)
    num = rf.numerator

    def term_key(e):
        return (sum(e), tuple(-x for x in e))

    chunks = []
    for e in sorted(num._terms, key=term_key):
        c = num._terms[e]
        factors = []
        for name, k in zip(names, e):
            if k == 1:
                factors.append(name)
            elif k != 0:
                factors.append(f"{name}^{k}")
        mono = "*".join(factors)
        if not mono:
            body = str(c)
        elif c == 1:
            body = mono
        elif c == -1:
            body = f"-{mono}"
        else:
            body = f"{c}*{mono}"
        if chunks and not body.startswith("-"):
            chunks.append("+")
        chunks.append(body)
    num_str = "".join(chunks)

    den_factors = []
    for name, k in zip(names, rf.denominator):
        if k == 1:
            den_factors.append(name)
        elif k > 1:
            den_factors.append(f"{name}^{k}")
    if not den_factors:
        return num_str
    den_str = "*".join(den_factors)
    if len(num._terms) > 1:
        num_str = f"({num_str})"
    if len(den_factors) > 1:
        den_str = f"({den_str})"
    return f"{num_str}/{den_str}"


# -- JSON form ---------------------------------------------------------------

def to_json(p: LaurentPoly) -> dict:
    return {
        "nvars": p.nvars,
        "terms": [{"coef": str(Fraction(c)), "exp": list(e)} for e, c in sorted(p._terms.items())],
    }


def from_json(obj: Mapping) -> LaurentPoly:
    nvars = int(obj["nvars"])
    terms: dict[Exponent, Coef] = {}
    for t in obj["terms"]:
        terms[tuple(int(x) for x in t["exp"])] = _norm_coef(Fraction(t["coef"]))
    return LaurentPoly(nvars, terms)
