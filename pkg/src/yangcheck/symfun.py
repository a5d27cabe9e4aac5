"""Shifted symmetric functions and their B/C/D analogues.

Functions on weight sequences that stabilize to the parameter c are
represented by their finite-rank truncations: polynomials in lam1..lamn,
where lam_i stores lambda_i for gl and the coordinate lambda_{-i} for the
B/C/D families.  The projection to rank n-1 substitutes lam_n = c, and a
coherent sequence (f_n) with project_pi(f_n) = f_{n-1} stands in for the
infinite-variable function; the limit object is never materialized.

Generators:

* gl:      p_m = sum_k ((lam_k - k)^m - (c - k)^m), and e_m / h_m via
           prod_k (1 + (lam_k - k)t) / (1 + (c - k)t)  and its inverse
           variant; the Newton interrelations among p/e/h hold verbatim.
* B/C/D:   with l_i = lam_i + rho_i (rho per family) and l^c_i = c + rho_i,
           p_m = sum_i (l_i^{2m} - (l^c_i)^{2m}), e_m / h_m via
           prod_i (1 + l_i^2 t) / (1 + (l^c_i)^2 t) and its inverse variant.

Invariance: gl-side functions are symmetric in the shifted variables
lam_i - i; B/C/D-side functions are invariant under permutations and sign
flips of the l_i (only even numbers of flips for the even orthogonal
family).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .lie import AlgebraSpec, rho
from .poly import MP_ONE, MultiPoly, as_poly
from .series import TruncSeries, ratfun_series, series_invert


def lam(i: int) -> MultiPoly:
    return MultiPoly.variable(f"lam{i}")


def _check_kind(kind: str):
    if kind not in ("p", "e", "h"):
        raise ValueError(f"generator kind must be p, e or h, not {kind!r}")


def generators_A(kind: str, m: int, n: int, c=None) -> MultiPoly:
    """Degree-n truncation of the gl-side generator p_m / e_m / h_m."""
    _check_kind(kind)
    if m < 1:
        raise ValueError("generator index must be >= 1")
    c = as_poly(c if c is not None else MultiPoly.variable("c"))
    shifted = [lam(k) - k for k in range(1, n + 1)]
    base = [c - k for k in range(1, n + 1)]
    if kind == "p":
        out = MultiPoly()
        for a, b in zip(shifted, base):
            out = out + (a ** m - b ** m)
        return out
    # generating functions in the auxiliary variable t, truncated at t^m
    series = TruncSeries.constant(m, MP_ONE)
    for a, b in zip(shifted, base):
        if kind == "e":
            num = TruncSeries(m, [MP_ONE, a])
            den = TruncSeries(m, [MP_ONE, b])
        else:
            num = TruncSeries(m, [MP_ONE, -b])
            den = TruncSeries(m, [MP_ONE, -a])
        series = series * num * series_invert(den)
    return series[m]


def generators_BCD(kind: str, m: int, n: int, spec: AlgebraSpec, c=None) -> MultiPoly:
    """Degree-n truncation of the B/C/D-side generator p_m / e_m / h_m."""
    _check_kind(kind)
    if m < 1:
        raise ValueError("generator index must be >= 1")
    if spec.family == "A":
        raise ValueError("use generators_A for the gl family")
    c = as_poly(c if c is not None else MultiPoly.variable("c"))
    rho_full = rho(AlgebraSpec(spec.family, max(n, 1)))
    lsq = [(lam(i) + rho_full[i - 1]) ** 2 for i in range(1, n + 1)]
    lsq_c = [(c + rho_full[i - 1]) ** 2 for i in range(1, n + 1)]
    if kind == "p":
        out = MultiPoly()
        for a, b in zip(lsq, lsq_c):
            out = out + (a ** m - b ** m)
        return out
    series = TruncSeries.constant(m, MP_ONE)
    for a, b in zip(lsq, lsq_c):
        if kind == "e":
            num = TruncSeries(m, [MP_ONE, a])
            den = TruncSeries(m, [MP_ONE, b])
        else:
            num = TruncSeries(m, [MP_ONE, -b])
            den = TruncSeries(m, [MP_ONE, -a])
        series = series * num * series_invert(den)
    return series[m]


def project_pi(f: MultiPoly, n: int, c=None) -> MultiPoly:
    """Substitute lam_n = c: the rank-lowering projection on polynomials."""
    c = as_poly(c if c is not None else MultiPoly.variable("c"))
    return f.substitute({f"lam{n}": c})


def chi_series(spec: AlgebraSpec, K: int, c=None, n: int | None = None) -> TruncSeries:
    """The scalar series entering the twisted evaluation homomorphism.

    chi(u) = (u + rho_1 - c + 1/2) / (u + rho_1 + 1/2)
             * prod_{i=1..n} ((u+1/2)^2 - l_i^2) / ((u+1/2)^2 - (rho_i - c)^2)

    expanded in u^-1 to order K, with coefficients polynomial in lam_i and
    c.  Here rho_i = -rho_{-i} per family, l_i^2 = (lam_i + rho_{-i})^2,
    and substituting lam_n = c cancels the n-th factor exactly, mapping the
    rank-n series onto the rank-(n-1) one.
    """
    if spec.family == "A":
        raise ValueError("the series is defined for the B/C/D families")
    if n is None:
        n = spec.rank
    c = as_poly(c if c is not None else MultiPoly.variable("c"))
    half = Fraction(1, 2)
    rho_neg = rho(AlgebraSpec(spec.family, max(n, 1)))
    rho1 = -rho_neg[0] if n >= 0 else 0
    # ratio of two linear polynomials in u
    out = ratfun_series(
        [MP_ONE, as_poly(rho1 + half) - c],
        [MP_ONE, as_poly(rho1 + half)],
        K,
    )
    for i in range(1, n + 1):
        l_i = lam(i) + rho_neg[i - 1]
        lc_i = c + rho_neg[i - 1]  # (rho_i - c)^2 == (c + rho_{-i})^2
        num = [MP_ONE, as_poly(1), as_poly(Fraction(1, 4)) - l_i * l_i]
        den = [MP_ONE, as_poly(1), as_poly(Fraction(1, 4)) - lc_i * lc_i]
        out = out * ratfun_series(num, den, K)
    return out


def hc_sdet_rhs(spec: AlgebraSpec, K: int, n: int | None = None) -> TruncSeries:
    """Reference series prod_i ((u+1/2)^2 - l_i^2) / ((u+1/2)^2 - rho_i^2).

    Stored as the known Harish-Chandra image of the (gamma-normalized,
    recentered) Sklyanin determinant of the twisted evaluation image; the
    determinant itself is out of scope, so this is documentation and an
    extension point rather than a checked identity.
    """
    if spec.family == "A":
        raise ValueError("the series is defined for the B/C/D families")
    if n is None:
        n = spec.rank
    out = TruncSeries.constant(K, MP_ONE)
    if n == 0:
        return out
    rho_neg = rho(AlgebraSpec(spec.family, n))
    for i in range(1, n + 1):
        l_i = lam(i) + rho_neg[i - 1]
        r_i = as_poly(rho_neg[i - 1])
        num = [MP_ONE, as_poly(1), as_poly(Fraction(1, 4)) - l_i * l_i]
        den = [MP_ONE, as_poly(1), as_poly(Fraction(1, 4)) - r_i * r_i]
        out = out * ratfun_series(num, den, K)
    return out


# -- invariance -----------------------------------------------------------


def wprime_invariance_check(f: MultiPoly, spec: AlgebraSpec, n: int) -> bool:
    """Invariance under the rho-shifted Weyl group action at rank n.

    gl: symmetric in lam_i - i, i.e. fixed by every substitution
    lam_k -> lam_{k+1} - 1, lam_{k+1} -> lam_k + 1.  B/C/D: in the
    variables l_i = lam_i + rho_i, fixed by all permutations and sign
    flips l_i -> -l_i (even products of flips only for even orthogonal).
    """
    if spec.family == "A":
        for k in range(1, n):
            swap = {f"lam{k}": lam(k + 1) - 1, f"lam{k + 1}": lam(k) + 1}
            if f.substitute(swap) != f:
                return False
        return True
    rho_neg = rho(AlgebraSpec(spec.family, max(n, 1)))
    for k in range(1, n):
        # exchange l_k and l_{k+1}; successive rho values differ by one
        swap = {
            f"lam{k}": lam(k + 1) + rho_neg[k] - rho_neg[k - 1],
            f"lam{k + 1}": lam(k) + rho_neg[k - 1] - rho_neg[k],
        }
        if f.substitute(swap) != f:
            return False
    def flip(k):
        return {f"lam{k}": -lam(k) - 2 * rho_neg[k - 1]}
    if spec.family == "D":
        for k in range(1, n):
            double = flip(k) | flip(k + 1)
            if f.substitute(double) != f:
                return False
    else:
        for k in range(1, n + 1):
            if f.substitute(flip(k)) != f:
                return False
    return True


# -- coherent sequences and weights ----------------------------------------


@dataclass(frozen=True)
class WeightSeq:
    """A weight stabilizing to c: finitely many deviations lam_i != c."""

    c: object
    deviations: Mapping[int, object] = field(default_factory=dict)

    def weight(self, n: int) -> list:
        cp = as_poly(self.c)
        out = []
        for i in range(1, n + 1):
            dev = self.deviations.get(i)
            out.append(cp + as_poly(dev) if dev is not None else cp)
        return out

    def support(self) -> int:
        return max(self.deviations, default=0)


class ShiftedSymFn:
    """A coherent sequence (f_n) of polynomials with project_pi(f_n) = f_{n-1}."""

    def __init__(self, family: str, fns: Sequence[MultiPoly], n0: int = 0, c=None):
        self.family = family
        self.c = as_poly(c if c is not None else MultiPoly.variable("c"))
        self.n0 = n0
        self.fns = list(fns)
        for offset in range(1, len(self.fns)):
            n = n0 + offset
            if project_pi(self.fns[offset], n, self.c) != self.fns[offset - 1]:
                raise ValueError(f"sequence is not coherent at rank {n}")

    def at_rank(self, n: int) -> MultiPoly:
        return self.fns[n - self.n0]

    def evaluate(self, w: WeightSeq) -> MultiPoly:
        """Value on a stabilizing weight (rank-independent by coherence)."""
        n = max(w.support(), self.n0)
        n = min(n, self.n0 + len(self.fns) - 1)
        if w.support() > n:
            raise ValueError("weight deviations exceed the stored ranks")
        values = w.weight(n)
        subs = {f"lam{i + 1}": as_poly(v) for i, v in enumerate(values)}
        return self.at_rank(n).substitute(subs)
