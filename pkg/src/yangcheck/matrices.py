"""Matrix-valued truncated series: the evaluation images of T(u), S(u)
and the twisted tower's generating matrix, with exact enveloping-algebra
coefficients.

Builders (all constant terms equal the identity):

* ``build_T_eta``   -- gl only: T(u) = (1 - E/u)^{-1}, entrywise
                       delta_ij + sum_M (E^M)_ij u^-M.
* ``build_T_phi``   -- gl only: (u+n-c)/(u+n) * (1 - E/(u+n))^{-1}; the
                       u^-1 coefficient is E - c and the higher ones obey
                       T^(M) = T^(M-1) (E - n).
* ``build_S_eta``   -- B/C/D: S(u) = 1 + F/(u + s), s = +1/2 orthogonal,
                       -1/2 symplectic (the sign dictionary is derived
                       from the family, never passed raw).
* ``build_Sigma``   -- B/C/D: (u+c+kappa)/(u+kappa) * (1 - F/(u+kappa))^{-1}
                       with kappa = (N-1)/2 orthogonal, (N+1)/2 symplectic;
                       the u^-1 coefficient is F + c and higher ones obey
                       Sigma^(k) = Sigma^(k-1) (F - kappa).
* ``build_phi_tensor`` -- the twisted evaluation image in the tensor model
                       U(g) (x) Q[lam, c]: the chi scalar series (central
                       by construction) times the Sigma matrix.

Substitutions u -> -u and u -> u+a are coefficient transforms performed on
the one-variable series; matrices never carry a second variable.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .lie import AlgebraSpec, theta
from .pbw import Alphabet, UEAElement, generator_matrix_power, hc_order
from .poly import MP_ONE, MultiPoly, as_poly
from .series import TruncSeries, ratfun_series, series_shift
from .symfun import chi_series


def kappa(spec: AlgebraSpec) -> Fraction:
    """(N-1)/2 in the orthogonal case, (N+1)/2 in the symplectic case."""
    if spec.family == "A":
        raise ValueError("kappa is defined for the B/C/D families")
    N = spec.matrix_size
    return Fraction(N - 1, 2) if spec.is_orthogonal else Fraction(N + 1, 2)


def lift_scalar_series(s: TruncSeries, alphabet: Alphabet) -> TruncSeries:
    """Re-coefficient a polynomial series as central UEA scalars."""
    return TruncSeries(
        s.order,
        [UEAElement.scalar(alphabet, a if isinstance(a, (int, Fraction, MultiPoly)) else a)
         for a in s.coeffs],
    )


@dataclass
class SeriesMatrix:
    """Square matrix of truncated series over UEA coefficients."""

    spec: AlgebraSpec
    order: int
    alphabet: Alphabet
    entries: dict

    @property
    def indices(self):
        return self.spec.index_set()

    def entry(self, i: int, j: int) -> TruncSeries:
        return self.entries[(i, j)]

    def coeff(self, i: int, j: int, k: int) -> UEAElement:
        """UEA coefficient of u^-k in entry (i, j)."""
        val = self.entries[(i, j)][k]
        if isinstance(val, UEAElement):
            return val
        return UEAElement.scalar(self.alphabet, val)

    def __sub__(self, other: "SeriesMatrix") -> "SeriesMatrix":
        out = {key: self.entries[key] - other.entries[key] for key in self.entries}
        return SeriesMatrix(self.spec, min(self.order, other.order), self.alphabet, out)

    def matmul(self, other: "SeriesMatrix") -> "SeriesMatrix":
        idx = self.indices
        out = {}
        for i in idx:
            for j in idx:
                acc = None
                for a in idx:
                    term = self.entries[(i, a)] * other.entries[(a, j)]
                    acc = term if acc is None else acc + term
                out[(i, j)] = acc
        return SeriesMatrix(self.spec, min(self.order, other.order), self.alphabet, out)

    def is_zero(self) -> bool:
        return all(ts.is_zero for ts in self.entries.values())


def _identity_slot(alphabet: Alphabet, i: int, j: int) -> UEAElement:
    return UEAElement.one(alphabet) if i == j else UEAElement.zero(alphabet)


def build_T_eta(spec: AlgebraSpec, K: int, alphabet: Alphabet | None = None) -> SeriesMatrix:
    if spec.family != "A":
        raise ValueError("T(u) builders are for the gl family")
    alph = alphabet or hc_order(spec)
    powers = [generator_matrix_power(alph, M) for M in range(K + 1)]
    entries = {}
    for i in spec.index_set():
        for j in spec.index_set():
            coeffs = [_identity_slot(alph, i, j)]
            coeffs += [powers[M][(i, j)] for M in range(1, K + 1)]
            entries[(i, j)] = TruncSeries(K, coeffs)
    return SeriesMatrix(spec, K, alph, entries)


def _inv_power(shift, M: int, K: int) -> TruncSeries:
    """(u + shift)^-M expanded in u^-1."""
    mono = TruncSeries(K, [0] * M + [MP_ONE])
    return series_shift(mono, shift)


def _resolvent_entries(spec, K, alph, shift):
    """Entries of (1 - X/(u+shift))^{-1} = sum_M X^M (u+shift)^{-M}."""
    powers = [generator_matrix_power(alph, M) for M in range(K + 1)]
    expansions = [_inv_power(shift, M, K) for M in range(1, K + 1)]
    entries = {}
    for i in spec.index_set():
        for j in spec.index_set():
            coeffs = [_identity_slot(alph, i, j)] + [UEAElement.zero(alph)] * K
            for M in range(1, K + 1):
                x = powers[M][(i, j)]
                if x.is_zero:
                    continue
                for k in range(M, K + 1):
                    q = expansions[M - 1][k]
                    if q == 0:
                        continue
                    coeffs[k] = coeffs[k] + x.scale(q)
            entries[(i, j)] = TruncSeries(K, coeffs)
    return entries


def build_T_phi(
    spec: AlgebraSpec, K: int, c=None, alphabet: Alphabet | None = None, shift_perturb: int = 0
) -> SeriesMatrix:
    if spec.family != "A":
        raise ValueError("T(u) builders are for the gl family")
    alph = alphabet or hc_order(spec)
    c = as_poly(c if c is not None else MultiPoly.variable("c"))
    shift = as_poly(spec.rank + shift_perturb)
    entries = _resolvent_entries(spec, K, alph, shift)
    prefactor = lift_scalar_series(ratfun_series([MP_ONE, shift - c], [MP_ONE, shift], K), alph)
    entries = {key: prefactor * ts for key, ts in entries.items()}
    return SeriesMatrix(spec, K, alph, entries)


def build_S_eta(
    spec: AlgebraSpec, K: int, alphabet: Alphabet | None = None, sign_flip: bool = False
) -> SeriesMatrix:
    if spec.family == "A":
        raise ValueError("S(u) builders are for the B/C/D families")
    alph = alphabet or hc_order(spec)
    s = Fraction(1, 2) if spec.is_orthogonal else Fraction(-1, 2)
    if sign_flip:
        s = -s
    expansion = _inv_power(s, 1, K)  # (u+s)^{-1}
    entries = {}
    for i in spec.index_set():
        for j in spec.index_set():
            f = UEAElement.generator(alph, i, j)
            coeffs = [_identity_slot(alph, i, j)]
            coeffs += [f.scale(expansion[k]) for k in range(1, K + 1)]
            entries[(i, j)] = TruncSeries(K, coeffs)
    return SeriesMatrix(spec, K, alph, entries)


def build_Sigma(
    spec: AlgebraSpec, K: int, c=None, alphabet: Alphabet | None = None, kappa_offset: int = 0
) -> SeriesMatrix:
    if spec.family == "A":
        raise ValueError("the Sigma builder is for the B/C/D families")
    alph = alphabet or hc_order(spec)
    c = as_poly(c if c is not None else MultiPoly.variable("c"))
    kap = as_poly(kappa(spec) + kappa_offset)
    entries = _resolvent_entries(spec, K, alph, kap)
    prefactor = lift_scalar_series(ratfun_series([MP_ONE, kap + c], [MP_ONE, kap], K), alph)
    entries = {key: prefactor * ts for key, ts in entries.items()}
    return SeriesMatrix(spec, K, alph, entries)


def scalar_multiply(chi: TruncSeries, M: SeriesMatrix) -> SeriesMatrix:
    """Entrywise product with a central scalar series."""
    lifted = lift_scalar_series(chi, M.alphabet)
    return SeriesMatrix(
        M.spec, min(chi.order, M.order), M.alphabet,
        {key: lifted * ts for key, ts in M.entries.items()},
    )


def build_phi_tensor(
    spec: AlgebraSpec, K: int, c=None, alphabet: Alphabet | None = None, kappa_offset: int = 0
) -> SeriesMatrix:
    """Twisted evaluation image in the tensor model U(g) (x) Q[lam, c]."""
    chi = chi_series(spec, K, c)
    sigma = build_Sigma(spec, K, c, alphabet=alphabet, kappa_offset=kappa_offset)
    return scalar_multiply(chi, sigma)


def transpose_t(M: SeriesMatrix) -> SeriesMatrix:
    """Entrywise transposition (A^t)_ij = theta_ij A_{-j,-i}; u untouched."""
    if M.spec.family == "A":
        raise ValueError("the theta-transposition is for the B/C/D families")
    out = {}
    for i in M.indices:
        for j in M.indices:
            out[(i, j)] = M.entries[(-j, -i)].scale(Fraction(theta(M.spec, i, j)))
    return SeriesMatrix(M.spec, M.order, M.alphabet, out)
