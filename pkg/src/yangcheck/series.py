"""Truncated power series in u^-1 over an arbitrary coefficient ring.

A ``TruncSeries`` of order K stores the coefficients of u^0 .. u^-K in a
dense list; arithmetic never reads or writes beyond slot K.  Coefficients
may be ints, Fractions, MultiPoly, or enveloping-algebra elements: anything
supporting +, -, * (with ints as absorbing zero / identity) and == 0.
Products preserve the written order of factors, so noncommutative
coefficient rings are safe.

``BiSeries`` is the rectangular two-variable analogue used for relation
checking.  Rational prefactors like 1/(u-v) are never expanded (that would
require choosing a region); instead relations are multiplied out by the
polynomial denominator and compared on the safe window where every slot of
the product is still determined by the truncated inputs.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb
from typing import Callable, Sequence

from .poly import MultiPoly


def _is_zero(x) -> bool:
    return x == 0


def _scalar_inverse(x):
    if isinstance(x, (int, Fraction)):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return Fraction(1, 1) / Fraction(x)
    if hasattr(x, "inverse_as_scalar"):
        return x.inverse_as_scalar()
    raise TypeError(f"do not know how to invert constant term {x!r}")


class TruncSeries:
    """Series a_0 + a_1 u^-1 + ... + a_K u^-K, truncated at a fixed K."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order: int, coeffs: Sequence | None = None):
        if order < 0:
            raise ValueError("order bound must be nonnegative")
        self.order = order
        cs = list(coeffs) if coeffs is not None else []
        if len(cs) > order + 1:
            cs = cs[: order + 1]
        cs.extend([0] * (order + 1 - len(cs)))
        self.coeffs = cs

    @classmethod
    def constant(cls, order: int, value) -> "TruncSeries":
        return cls(order, [value])

    def __getitem__(self, k: int):
        return self.coeffs[k]

    def __add__(self, other: "TruncSeries") -> "TruncSeries":
        k = min(self.order, other.order)
        return TruncSeries(k, [self.coeffs[i] + other.coeffs[i] for i in range(k + 1)])

    def __sub__(self, other: "TruncSeries") -> "TruncSeries":
        k = min(self.order, other.order)
        return TruncSeries(k, [self.coeffs[i] - other.coeffs[i] for i in range(k + 1)])

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(self.order, [-a for a in self.coeffs])

    def __mul__(self, other: "TruncSeries") -> "TruncSeries":
        k = min(self.order, other.order)
        out = [0] * (k + 1)
        for i, a in enumerate(self.coeffs[: k + 1]):
            if _is_zero(a):
                continue
            for j in range(k + 1 - i):
                b = other.coeffs[j]
                if _is_zero(b):
                    continue
                out[i + j] = out[i + j] + a * b
        return TruncSeries(k, out)

    def scale(self, s) -> "TruncSeries":
        return TruncSeries(self.order, [a * s if not _is_zero(a) else 0 for a in self.coeffs])

    def map_coeffs(self, fn: Callable) -> "TruncSeries":
        return TruncSeries(self.order, [fn(a) for a in self.coeffs])

    def negate_argument(self) -> "TruncSeries":
        """s(u) -> s(-u): flips the sign of every odd slot."""
        return TruncSeries(
            self.order,
            [a if k % 2 == 0 else -a for k, a in enumerate(self.coeffs)],
        )

    def __eq__(self, other):
        if not isinstance(other, TruncSeries):
            return NotImplemented
        k = min(self.order, other.order)
        return all((self.coeffs[i] - other.coeffs[i]) == 0 for i in range(k + 1))

    @property
    def is_zero(self) -> bool:
        return all(_is_zero(a) for a in self.coeffs)

    def first_nonzero(self):
        for k, a in enumerate(self.coeffs):
            if not _is_zero(a):
                return k, a
        return None

    def __repr__(self):
        parts = []
        for k, a in enumerate(self.coeffs):
            if _is_zero(a):
                continue
            parts.append(f"({a})" + ("" if k == 0 else f"*u^-{k}"))
        return " + ".join(parts) if parts else "0"


def series_invert(s: TruncSeries) -> TruncSeries:
    """Multiplicative inverse up to the truncation order.

    The constant term must be an invertible scalar of the coefficient
    ring; the recursion b_k = -a_0^{-1} * sum_{i>=1} a_i b_{k-i} is exact
    even when higher coefficients do not commute.
    """
    inv0 = _scalar_inverse(s.coeffs[0])
    out = [inv0]
    for k in range(1, s.order + 1):
        acc = 0
        for i in range(1, k + 1):
            a = s.coeffs[i]
            if _is_zero(a) or _is_zero(out[k - i]):
                continue
            acc = acc + a * out[k - i]
        out.append(-(inv0 * acc) if not _is_zero(acc) else 0)
    return TruncSeries(s.order, out)


def series_shift(s: TruncSeries, a) -> TruncSeries:
    """Expansion of s(u+a) in powers of u^-1.

    Uses (u+a)^-M = sum_{j>=0} C(M-1+j, j) (-a)^j u^-(M+j), truncated at
    the order of s.  The shift a may be any central scalar (Fraction or
    polynomial in c).
    """
    k = s.order
    out = [s.coeffs[0]] + [0] * k
    if _is_zero(a):
        return TruncSeries(k, list(s.coeffs))
    neg_a_pow = [1]
    for _ in range(k):
        neg_a_pow.append(neg_a_pow[-1] * (-a))
    for m in range(1, k + 1):
        cm = s.coeffs[m]
        if _is_zero(cm):
            continue
        for j in range(0, k - m + 1):
            out[m + j] = out[m + j] + cm * (comb(m - 1 + j, j) * neg_a_pow[j])
    return TruncSeries(k, out)


def ratfun_series(num: Sequence, den: Sequence, order: int) -> TruncSeries:
    """Expand num(u)/den(u) as a series in u^-1.

    ``num`` and ``den`` list polynomial coefficients in descending powers
    of u, with deg num <= deg den and an invertible leading coefficient of
    the denominator.  Both sides are divided by u^deg(den), turning the
    quotient into a ratio of genuine series in u^-1.
    """
    num, den = list(num), list(den)
    if len(num) > len(den):
        raise ValueError("numerator degree exceeds denominator degree")
    pad = len(den) - len(num)
    n_series = TruncSeries(order, [0] * pad + num)
    d_series = TruncSeries(order, den)
    return n_series * series_invert(d_series)


class BiSeries:
    """Coefficients of u^-a v^-b on the rectangle a <= ka, b <= kb.

    Only nonzero slots are stored.  Multiplying by u (or v) shifts the
    slots and shrinks the corresponding bound by one: the top row of
    coefficients of the factor is no longer determined, so it leaves the
    window rather than silently truncating.
    """

    __slots__ = ("ka", "kb", "coeffs")

    def __init__(self, ka: int, kb: int, coeffs: dict | None = None):
        self.ka = ka
        self.kb = kb
        self.coeffs = {}
        if coeffs:
            for (a, b), val in coeffs.items():
                if a <= ka and b <= kb and not _is_zero(val):
                    self.coeffs[(a, b)] = val

    @classmethod
    def product(cls, x: TruncSeries, y: TruncSeries) -> "BiSeries":
        """x(u) * y(v), coefficients multiplied in the written order."""
        out = {}
        for a, xa in enumerate(x.coeffs):
            if _is_zero(xa):
                continue
            for b, yb in enumerate(y.coeffs):
                if _is_zero(yb):
                    continue
                out[(a, b)] = xa * yb
        return cls(x.order, y.order, out)

    def _binop(self, other: "BiSeries", sign: int) -> "BiSeries":
        ka, kb = min(self.ka, other.ka), min(self.kb, other.kb)
        out = dict()
        for (a, b), v in self.coeffs.items():
            if a <= ka and b <= kb:
                out[(a, b)] = v
        for (a, b), v in other.coeffs.items():
            if a > ka or b > kb:
                continue
            cur = out.get((a, b), 0)
            new = cur + v if sign > 0 else cur - v
            if _is_zero(new):
                out.pop((a, b), None)
            else:
                out[(a, b)] = new
        return BiSeries(ka, kb, out)

    def __add__(self, other):
        return self._binop(other, +1)

    def __sub__(self, other):
        return self._binop(other, -1)

    def __neg__(self):
        return BiSeries(self.ka, self.kb, {k: -v for k, v in self.coeffs.items()})

    def scale(self, s) -> "BiSeries":
        return BiSeries(self.ka, self.kb, {k: v * s for k, v in self.coeffs.items()})

    def times_u(self) -> "BiSeries":
        out = {}
        for (a, b), v in self.coeffs.items():
            if a >= 1 and a - 1 <= self.ka - 1:
                out[(a - 1, b)] = v
        return BiSeries(self.ka - 1, self.kb, out)

    def times_v(self) -> "BiSeries":
        out = {}
        for (a, b), v in self.coeffs.items():
            if b >= 1 and b - 1 <= self.kb - 1:
                out[(a, b - 1)] = v
        return BiSeries(self.ka, self.kb - 1, out)

    def times_factor(self, factor: str) -> "BiSeries":
        if factor == "u-v":
            return self.times_u() - self.times_v()
        if factor == "u+v":
            return self.times_u() + self.times_v()
        raise ValueError(f"unsupported denominator factor {factor!r}")

    def restrict(self, ka: int, kb: int) -> "BiSeries":
        return BiSeries(ka, kb, {k: v for k, v in self.coeffs.items() if k[0] <= ka and k[1] <= kb})

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def first_nonzero(self):
        if not self.coeffs:
            return None
        key = min(self.coeffs)
        return key, self.coeffs[key]

    def __eq__(self, other):
        if not isinstance(other, BiSeries):
            return NotImplemented
        return (self - other).is_zero


def clear_denominators(lhs: BiSeries, rhs: BiSeries, denominator_spec: Sequence[str]):
    """Multiply `lhs` by the product of the denominator factors.

    Returns the pair (lhs * denom, rhs) restricted to the common safe
    window a, b <= K - deg(denom).  Raises if the window is empty.
    """
    out = lhs
    for factor in denominator_spec:
        out = out.times_factor(factor)
    ka = min(out.ka, rhs.ka)
    kb = min(out.kb, rhs.kb)
    if ka < 0 or kb < 0:
        raise ValueError(
            f"safe window is empty: order bound too small for denominator {denominator_spec}"
        )
    return out.restrict(ka, kb), rhs.restrict(ka, kb)
