"""Exact sparse multivariate polynomials over the rationals.

A polynomial is stored as a dict mapping monomials to nonzero Fraction
coefficients.  A monomial is a tuple of (variable-name, exponent) pairs,
sorted by name, with every exponent >= 1; the empty tuple is the constant
monomial.  The zero polynomial has an empty term dict, so identity testing
is plain dict equality and is fully reliable (no floats anywhere).

Variables are identified by their string names; polynomials over different
variable sets mix freely.  Conventional names used elsewhere in the
package: ``c`` (the stability parameter), ``lam1 .. lamn`` (weight
coordinates), ``y1 .. yK`` and ``z[i,j,M]`` (witness parameters),
``x[i,j]`` (matrix-entry coordinates).
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Union

Scalar = Union[int, Fraction]
Mono = tuple  # tuple[tuple[str, int], ...]

_ZERO = Fraction(0)


def _merge_monos(m1: Mono, m2: Mono) -> Mono:
    """Merge two sorted exponent tuples, adding exponents of shared names."""
    if not m1:
        return m2
    if not m2:
        return m1
    out = []
    i = j = 0
    while i < len(m1) and j < len(m2):
        n1, e1 = m1[i]
        n2, e2 = m2[j]
        if n1 == n2:
            out.append((n1, e1 + e2))
            i += 1
            j += 1
        elif n1 < n2:
            out.append(m1[i])
            i += 1
        else:
            out.append(m2[j])
            j += 1
    out.extend(m1[i:])
    out.extend(m2[j:])
    return tuple(out)


class MultiPoly:
    """Sparse polynomial with exact rational coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Mono, Fraction] | None = None):
        # Internal constructor: `terms` must already be canonical
        # (sorted monomial keys, no zero coefficients, Fraction values).
        self.terms: dict[Mono, Fraction] = dict(terms) if terms else {}

    @classmethod
    def const(cls, value: Scalar) -> "MultiPoly":
        q = Fraction(value)
        return cls({(): q} if q else None)

    @classmethod
    def variable(cls, name: str) -> "MultiPoly":
        return cls({((name, 1),): Fraction(1)})

    # -- ring structure ------------------------------------------------

    @staticmethod
    def _coerce(other) -> "MultiPoly | None":
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.terms:
            return o
        if not o.terms:
            return self
        out = dict(self.terms)
        for mono, q in o.terms.items():
            s = out.get(mono, _ZERO) + q
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
        return MultiPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly({m: -q for m, q in self.terms.items()})

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not self.terms or not o.terms:
            return MultiPoly()
        out: dict[Mono, Fraction] = {}
        for m1, q1 in self.terms.items():
            for m2, q2 in o.terms.items():
                mono = _merge_monos(m1, m2)
                s = out.get(mono, _ZERO) + q1 * q2
                if s:
                    out[mono] = s
                else:
                    del out[mono]
        return MultiPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined for polynomials")
        result = MultiPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def scale(self, q: Scalar) -> "MultiPoly":
        q = Fraction(q)
        if not q:
            return MultiPoly()
        return MultiPoly({m: v * q for m, v in self.terms.items()})

    # -- predicates and access ------------------------------------------

    def __eq__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self.terms == o.terms

    def __bool__(self):
        return bool(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and () in self.terms)

    def constant_value(self) -> Fraction:
        if not self.terms:
            return _ZERO
        if self.is_constant():
            return self.terms[()]
        raise ValueError(f"polynomial is not constant: {self}")

    def inverse_as_scalar(self) -> "MultiPoly":
        # Series inversion only needs inverses of constants.
        v = self.constant_value()
        if not v:
            raise ZeroDivisionError("inverse of zero")
        return MultiPoly.const(1 / v)

    def variables(self) -> tuple[str, ...]:
        names = {name for mono in self.terms for name, _ in mono}
        return tuple(sorted(names))

    def degree(self) -> int:
        """Total degree; zero polynomial has degree 0 by convention."""
        if not self.terms:
            return 0
        return max(sum(e for _, e in mono) for mono in self.terms)

    # -- substitution ---------------------------------------------------

    def substitute(self, mapping: Mapping[str, "MultiPoly | Scalar"]) -> "MultiPoly":
        """Replace variables by polynomials (or scalars); others are kept."""
        subs = {k: self._coerce(v) for k, v in mapping.items()}
        out = MultiPoly()
        for mono, q in self.terms.items():
            term = MultiPoly.const(q)
            for name, exp in mono:
                if name in subs:
                    term = term * subs[name] ** exp
                else:
                    term = term * MultiPoly({((name, exp),): Fraction(1)})
            out = out + term
        return out

    def evaluate(self, values: Mapping[str, Scalar]) -> Fraction:
        result = self.substitute({k: Fraction(v) for k, v in values.items()})
        return result.constant_value()

    def derivative(self, name: str) -> "MultiPoly":
        out: dict[Mono, Fraction] = {}
        for mono, q in self.terms.items():
            for pos, (n, e) in enumerate(mono):
                if n == name:
                    if e == 1:
                        new = mono[:pos] + mono[pos + 1:]
                    else:
                        new = mono[:pos] + ((n, e - 1),) + mono[pos + 1:]
                    s = out.get(new, _ZERO) + q * e
                    if s:
                        out[new] = s
                    else:
                        out.pop(new, None)
                    break
        return MultiPoly(out)

    # -- formatting -------------------------------------------------------

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono in sorted(self.terms, key=lambda m: (sum(e for _, e in m), m)):
            q = self.terms[mono]
            factors = [f"{n}^{e}" if e > 1 else n for n, e in mono]
            if not factors:
                parts.append(str(q))
            elif q == 1:
                parts.append("*".join(factors))
            elif q == -1:
                parts.append("-" + "*".join(factors))
            else:
                parts.append(f"{q}*" + "*".join(factors))
        text = " + ".join(parts).replace("+ -", "- ")
        return text


MP_ZERO = MultiPoly()
MP_ONE = MultiPoly.const(1)


def mp_c() -> MultiPoly:
    """The distinguished stability parameter as a polynomial."""
    return MultiPoly.variable("c")


def as_poly(value: "MultiPoly | Scalar") -> MultiPoly:
    out = MultiPoly._coerce(value)
    if out is None:
        raise TypeError(f"cannot interpret {value!r} as a polynomial")
    return out


def format_fraction(q: Fraction) -> str:
    """Bit-exact `p/q` string used in all JSON output."""
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"
