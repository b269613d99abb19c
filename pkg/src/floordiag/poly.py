"""Exact sparse multivariate polynomials with rational coefficients.

Monomials are exponent tuples over a fixed, ordered variable list; all
coefficients are fractions.Fraction, so every operation is exact. This is
the carrier type for node polynomials, Faulhaber closed forms and the
power-series exp/log used elsewhere in the package.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping, Sequence

Rat = int | Fraction


def _frac(x: Rat) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class MPoly:
    """Polynomial over named variables; terms map exponent tuples to Fractions."""

    __slots__ = ("vars", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[tuple[int, ...], Rat] | None = None):
        self.vars = tuple(variables)
        clean: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for exps, coeff in terms.items():
                c = _frac(coeff)
                if c:
                    if len(exps) != len(self.vars):
                        raise ValueError("exponent tuple does not match variable count")
                    clean[tuple(exps)] = c
        self.terms = clean

    # ---- constructors -------------------------------------------------

    @classmethod
    def zero(cls, variables: Sequence[str]) -> "MPoly":
        return cls(variables)

    @classmethod
    def const(cls, variables: Sequence[str], value: Rat) -> "MPoly":
        v = tuple(variables)
        return cls(v, {(0,) * len(v): _frac(value)})

    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> "MPoly":
        v = tuple(variables)
        i = v.index(name)
        e = [0] * len(v)
        e[i] = 1
        return cls(v, {tuple(e): Fraction(1)})

    # ---- basic queries -------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, MPoly):
            return self.vars == other.vars and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == MPoly.const(self.vars, other)
        return NotImplemented

    def __bool__(self) -> bool:
        return bool(self.terms)

    # ---- arithmetic ----------------------------------------------------

    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.vars != self.vars:
                raise ValueError(f"variable mismatch: {self.vars} vs {other.vars}")
            return other
        return MPoly.const(self.vars, other)

    def __add__(self, other) -> "MPoly":
        other = self._coerce(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            s = terms.get(e, Fraction(0)) + c
            if s:
                terms[e] = s
            else:
                terms.pop(e, None)
        return MPoly(self.vars, terms)

    __radd__ = __add__

    def __neg__(self) -> "MPoly":
        return MPoly(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other) -> "MPoly":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "MPoly":
        return (-self) + self._coerce(other)

    def __mul__(self, other) -> "MPoly":
        if isinstance(other, (int, Fraction)):
            c = _frac(other)
            if not c:
                return MPoly.zero(self.vars)
            return MPoly(self.vars, {e: k * c for e, k in self.terms.items()})
        other = self._coerce(other)
        out: dict[tuple[int, ...], Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    out.pop(e, None)
        return MPoly(self.vars, out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "MPoly":
        if not isinstance(other, (int, Fraction)):
            raise TypeError("can only divide by a scalar")
        return self * (Fraction(1) / _frac(other))

    def __pow__(self, n: int) -> "MPoly":
        if n < 0:
            raise ValueError("negative power")
        out = MPoly.const(self.vars, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    # ---- evaluation / rearrangement -------------------------------------

    def evaluate(self, assignment: Mapping[str, Rat]) -> Fraction:
        vals = [_frac(assignment[v]) for v in self.vars]
        total = Fraction(0)
        for exps, coeff in self.terms.items():
            term = coeff
            for val, e in zip(vals, exps):
                if e:
                    term *= val**e
            total += term
        return total

    def substitute(self, name: str, value: "MPoly") -> "MPoly":
        """Replace a variable by a polynomial (over the same variable list)."""
        i = self.vars.index(name)
        value = self._coerce(value)
        powers: dict[int, MPoly] = {0: MPoly.const(self.vars, 1)}
        out = MPoly.zero(self.vars)
        for exps, coeff in self.terms.items():
            e = exps[i]
            if e not in powers:
                p = max(k for k in powers if k < e)
                acc = powers[p]
                while p < e:
                    acc = acc * value
                    p += 1
                    powers[p] = acc
            rest = list(exps)
            rest[i] = 0
            out = out + powers[e] * MPoly(self.vars, {tuple(rest): coeff})
        return out

    def coefficients_in(self, name: str) -> dict[int, "MPoly"]:
        """Coefficient polynomials of each power of one variable."""
        i = self.vars.index(name)
        out: dict[int, dict[tuple[int, ...], Fraction]] = {}
        for exps, coeff in self.terms.items():
            e = list(exps)
            k = e[i]
            e[i] = 0
            out.setdefault(k, {})[tuple(e)] = coeff
        return {k: MPoly(self.vars, t) for k, t in sorted(out.items())}

    def restrict(self, variables: Sequence[str]) -> "MPoly":
        """Project onto a sub-list of variables; the others must not occur."""
        variables = tuple(variables)
        keep = [self.vars.index(v) for v in variables]
        drop = [i for i in range(len(self.vars)) if self.vars[i] not in variables]
        terms: dict[tuple[int, ...], Fraction] = {}
        for exps, coeff in self.terms.items():
            if any(exps[i] for i in drop):
                raise ValueError("polynomial involves a dropped variable")
            terms[tuple(exps[i] for i in keep)] = coeff
        return MPoly(variables, terms)

    def extend(self, variables: Sequence[str]) -> "MPoly":
        """Re-express over a larger variable list."""
        variables = tuple(variables)
        pos = [variables.index(v) for v in self.vars]
        terms: dict[tuple[int, ...], Fraction] = {}
        for exps, coeff in self.terms.items():
            e = [0] * len(variables)
            for p, k in zip(pos, exps):
                e[p] = k
            terms[tuple(e)] = coeff
        return MPoly(variables, terms)

    # ---- presentation ----------------------------------------------------

    def sorted_terms(self) -> list[tuple[tuple[int, ...], Fraction]]:
        """Terms ordered by total degree, then lexicographically, descending."""
        return sorted(self.terms.items(), key=lambda t: (sum(t[0]), t[0]), reverse=True)

    def pretty(self) -> str:
        if not self.terms:
            return "0"
        parts: list[str] = []
        for exps, coeff in self.sorted_terms():
            mono = " ".join(
                v if e == 1 else f"{v}^{e}" for v, e in zip(self.vars, exps) if e
            )
            mag = abs(coeff)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag} {mono}"
            if not parts:
                parts.append(body if coeff > 0 else f"-{body}")
            else:
                parts.append(("+ " if coeff > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"MPoly({self.vars}, {self.pretty()})"

    def to_json(self) -> dict:
        return {
            "vars": list(self.vars),
            "terms": [[list(e), f"{c.numerator}/{c.denominator}"] for e, c in self.sorted_terms()],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "MPoly":
        variables = tuple(data["vars"])
        terms = {}
        for exps, cstr in data["terms"]:
            num, _, den = str(cstr).partition("/")
            terms[tuple(exps)] = Fraction(int(num), int(den or 1))
        return cls(variables, terms)


@dataclass(frozen=True)
class LinForm:
    """Exact affine-linear combination of named variables plus a constant."""

    coeffs: tuple[tuple[str, Fraction], ...] = ()
    const: Fraction = Fraction(0)

    @classmethod
    def make(cls, coeffs: Mapping[str, Rat] | None = None, const: Rat = 0) -> "LinForm":
        items = tuple(sorted((v, _frac(c)) for v, c in (coeffs or {}).items() if _frac(c)))
        return cls(items, _frac(const))

    @classmethod
    def variable(cls, name: str) -> "LinForm":
        return cls.make({name: 1})

    @classmethod
    def constant(cls, value: Rat) -> "LinForm":
        return cls.make({}, value)

    def __add__(self, other) -> "LinForm":
        if isinstance(other, (int, Fraction)):
            return LinForm(self.coeffs, self.const + _frac(other))
        merged = dict(self.coeffs)
        for v, c in other.coeffs:
            merged[v] = merged.get(v, Fraction(0)) + c
        return LinForm.make(merged, self.const + other.const)

    def __sub__(self, other) -> "LinForm":
        if isinstance(other, (int, Fraction)):
            return self + (-other)
        return self + other.scale(-1)

    def scale(self, k: Rat) -> "LinForm":
        k = _frac(k)
        return LinForm.make({v: c * k for v, c in self.coeffs}, self.const * k)

    def to_mpoly(self, variables: Sequence[str]) -> MPoly:
        p = MPoly.const(variables, self.const)
        for v, c in self.coeffs:
            p = p + MPoly.var(variables, v) * c
        return p

    def evaluate(self, assignment: Mapping[str, Rat]) -> Fraction:
        return self.const + sum((_frac(assignment[v]) * c for v, c in self.coeffs), Fraction(0))

    def variables(self) -> tuple[str, ...]:
        return tuple(v for v, _ in self.coeffs)

    def to_json(self):
        return {"coeffs": {v: f"{c.numerator}/{c.denominator}" for v, c in self.coeffs},
                "const": f"{self.const.numerator}/{self.const.denominator}"}

    @classmethod
    def from_json(cls, data) -> "LinForm":
        def parse(s):
            num, _, den = str(s).partition("/")
            return Fraction(int(num), int(den or 1))

        return cls.make({v: parse(c) for v, c in data.get("coeffs", {}).items()},
                        parse(data.get("const", 0)))


# ---- combinatorial polynomial helpers -------------------------------------


def binom_poly(x: MPoly, r: int) -> MPoly:
    """Binomial coefficient C(x, r) as a polynomial: x(x-1)...(x-r+1)/r!."""
    if r < 0:
        raise ValueError("r must be nonnegative")
    out = MPoly.const(x.vars, 1)
    for t in range(r):
        out = out * (x - t)
    return out * Fraction(1, factorial(r))


def bernoulli_numbers(n: int) -> list[Fraction]:
    """B_0..B_n as exact Fractions (Akiyama-Tanigawa; convention B_1 = +1/2)."""
    a = [Fraction(0)] * (n + 1)
    out: list[Fraction] = []
    for m in range(n + 1):
        a[m] = Fraction(1, m + 1)
        for j in range(m, 0, -1):
            a[j - 1] = j * (a[j - 1] - a[j])
        out.append(a[0])
    return out


def power_sum_coeffs(p: int) -> list[Fraction]:
    """Coefficients of N^0..N^{p+1} in the closed form of sum_{k=0}^{N} k^p."""
    from math import comb

    bern = bernoulli_numbers(p)
    coeffs = [Fraction(0)] * (p + 2)
    for j in range(p + 1):
        coeffs[p + 1 - j] += Fraction(comb(p + 1, j), p + 1) * bern[j]
    if p == 0:
        coeffs[0] += 1  # the k=0 term
    return coeffs


def _poly_in(value: MPoly, coeffs: Sequence[Fraction]) -> MPoly:
    out = MPoly.const(value.vars, coeffs[-1])
    for c in reversed(coeffs[:-1]):
        out = out * value + c
    return out


def faulhaber_sum(f: MPoly, var: str, lo: MPoly | LinForm, hi: MPoly | LinForm) -> MPoly:
    """Closed form of sum_{var=lo}^{hi} f, valid for all integers hi >= lo-1.

    The variable `var` is eliminated; the empty sum (hi = lo-1) gives 0.
    """
    if isinstance(lo, LinForm):
        lo = lo.to_mpoly(f.vars)
    if isinstance(hi, LinForm):
        hi = hi.to_mpoly(f.vars)
    lo1 = lo - 1
    out = MPoly.zero(f.vars)
    for p, coeff in f.coefficients_in(var).items():
        cs = power_sum_coeffs(p)
        out = out + coeff * (_poly_in(hi, cs) - _poly_in(lo1, cs))
    return out


def series_exp(q: Sequence[MPoly], up_to: int | None = None) -> list[MPoly]:
    """Given [q_1, q_2, ...], return [p_0, ..., p_n] with sum p_k x^k = exp(sum q_k x^k)."""
    n = up_to if up_to is not None else len(q)
    if n > len(q):
        raise ValueError("not enough series terms")
    variables = q[0].vars
    p: list[MPoly] = [MPoly.const(variables, 1)]
    for m in range(1, n + 1):
        acc = MPoly.zero(variables)
        for k in range(1, m + 1):
            acc = acc + q[k - 1] * p[m - k] * k
        p.append(acc * Fraction(1, m))
    return p


def series_log(p: Sequence[MPoly], up_to: int | None = None) -> list[MPoly]:
    """Inverse of series_exp: given [p_0=1, p_1, ...], return [q_1, ..., q_n]."""
    n = up_to if up_to is not None else len(p) - 1
    variables = p[0].vars
    if p[0] != MPoly.const(variables, 1):
        raise ValueError("series must start with constant term 1")
    q: list[MPoly] = []
    for m in range(1, n + 1):
        acc = p[m] * m
        for k in range(1, m):
            acc = acc - q[k - 1] * p[m - k] * k
        q.append(acc * Fraction(1, m))
    return q
