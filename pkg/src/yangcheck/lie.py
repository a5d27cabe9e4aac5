"""Index sets, canonical bases, brackets and rho vectors for gl(n),
o(2n), o(2n+1) and sp(2n).

Family tags: A = gl(n) with indices 1..n; B = o(2n+1) with indices
-n..-1, 0, 1..n; C = sp(2n) and D = o(2n) with indices -n..-1, 1..n.
For the B/C/D families the algebra is spanned by

    F[i,j] = E[i,j] - theta[i,j] * E[-j,-i],

theta = 1 in the orthogonal case, theta = sgn(i)sgn(j) in the symplectic
case, so F[-j,-i] = -theta[i,j] F[i,j].  The canonical basis picks one
representative per sign pair: all (i,j) with i+j < 0, plus both sum-zero
generators F[k,-k] in the symplectic case (they vanish for orthogonal).

Structure constants are computed by expanding F's into matrix units,
bracketing there, and folding back; the full table for a spec is built
once and cached, since the rewriting engine consults it constantly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

Pair = tuple[int, int]

_FAMILIES = ("A", "B", "C", "D")


@dataclass(frozen=True)
class AlgebraSpec:
    """One of the classical families at a fixed rank."""

    family: str  # "A" = gl, "B" = o(2n+1), "C" = sp(2n), "D" = o(2n)
    rank: int

    def __post_init__(self):
        if self.family not in _FAMILIES:
            raise ValueError(f"unknown family {self.family!r}")
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")

    @classmethod
    def from_string(cls, text: str) -> "AlgebraSpec":
        """Parse "gl:3", "o:5", "o:6", "sp:4" (matrix size for o/sp)."""
        try:
            name, _, num = text.partition(":")
            size = int(num)
        except ValueError:
            raise ValueError(f"bad algebra spec {text!r}") from None
        if name == "gl":
            return cls("A", size)
        if name == "o":
            if size % 2 == 1:
                return cls("B", size // 2)
            return cls("D", size // 2)
        if name == "sp":
            if size % 2 == 1:
                raise ValueError("sp requires an even matrix size")
            return cls("C", size // 2)
        raise ValueError(f"unknown algebra family in {text!r}")

    def to_string(self) -> str:
        n = self.rank
        return {
            "A": f"gl:{n}",
            "B": f"o:{2 * n + 1}",
            "C": f"sp:{2 * n}",
            "D": f"o:{2 * n}",
        }[self.family]

    @property
    def is_gl(self) -> bool:
        return self.family == "A"

    @property
    def is_orthogonal(self) -> bool:
        return self.family in ("B", "D")

    @property
    def is_symplectic(self) -> bool:
        return self.family == "C"

    def index_set(self) -> tuple[int, ...]:
        n = self.rank
        if self.family == "A":
            return tuple(range(1, n + 1))
        negative = tuple(range(-n, 0))
        positive = tuple(range(1, n + 1))
        if self.family == "B":
            return negative + (0,) + positive
        return negative + positive

    @property
    def matrix_size(self) -> int:
        return len(self.index_set())

    def dimension(self) -> int:
        n = self.rank
        return {
            "A": n * n,
            "B": 2 * n * n + n,
            "C": 2 * n * n + n,
            "D": n * (2 * n - 1) if n else 0,
        }[self.family]

    def shrink(self) -> "AlgebraSpec":
        """Same family, rank lowered by one."""
        return AlgebraSpec(self.family, self.rank - 1)


def theta(spec: AlgebraSpec, i: int, j: int) -> int:
    if spec.family == "A":
        raise ValueError("theta signs are defined for the B/C/D families only")
    if spec.is_orthogonal:
        return 1
    return (1 if i > 0 else -1) * (1 if j > 0 else -1)


def _check_index(spec: AlgebraSpec, *indices: int):
    allowed = set(spec.index_set())
    for k in indices:
        if k not in allowed:
            raise ValueError(f"index {k} not in the index set of {spec.to_string()}")


def canonicalize(spec: AlgebraSpec, i: int, j: int):
    """Express F[i,j] (or E[i,j]) through the canonical basis.

    Returns (coefficient, pair) with pair = None when the element is zero
    (orthogonal F[i,-i] and the B-family F[0,0]).
    """
    _check_index(spec, i, j)
    if spec.family == "A":
        return Fraction(1), (i, j)
    if i + j < 0:
        return Fraction(1), (i, j)
    if i + j > 0:
        return Fraction(-theta(spec, i, j)), (-j, -i)
    # i + j == 0: self-paired
    if spec.is_orthogonal:
        return Fraction(0), None
    return Fraction(1), (i, j)


def canonical_pairs(spec: AlgebraSpec) -> tuple[Pair, ...]:
    idx = spec.index_set()
    pairs = [(i, j) for i in idx for j in idx if i + j < 0]
    if spec.family == "A":
        pairs = [(i, j) for i in idx for j in idx]
    elif spec.is_symplectic:
        pairs.extend((k, -k) for k in idx)
    return tuple(sorted(pairs))


def triangular_class(pair: Pair) -> str:
    i, j = pair
    if i < j:
        return "upper"
    if i > j:
        return "lower"
    return "cartan"


def f_in_matrix_units(spec: AlgebraSpec, i: int, j: int) -> dict[Pair, Fraction]:
    """F[i,j] as a combination of matrix units E[a,b] (A: E itself)."""
    if spec.family == "A":
        return {(i, j): Fraction(1)}
    out: dict[Pair, Fraction] = {(i, j): Fraction(1)}
    th = Fraction(theta(spec, i, j))
    mirror = (-j, -i)
    out[mirror] = out.get(mirror, Fraction(0)) - th
    return {p: q for p, q in out.items() if q}


def _bracket_e(x: dict[Pair, Fraction], y: dict[Pair, Fraction]) -> dict[Pair, Fraction]:
    # [E_ab, E_cd] = delta_bc E_ad - delta_da E_cb
    out: dict[Pair, Fraction] = {}
    for (a, b), q1 in x.items():
        for (c, d), q2 in y.items():
            q = q1 * q2
            if b == c:
                out[(a, d)] = out.get((a, d), Fraction(0)) + q
            if d == a:
                out[(c, b)] = out.get((c, b), Fraction(0)) - q
    return {p: v for p, v in out.items() if v}


@lru_cache(maxsize=None)
def _bracket_table(spec: AlgebraSpec) -> dict:
    """Full structure-constant table on canonical pairs, built once."""
    pairs = canonical_pairs(spec)
    table: dict[tuple[Pair, Pair], tuple[tuple[Pair, Fraction], ...]] = {}
    e_forms = {p: f_in_matrix_units(spec, *p) for p in pairs}
    for p in pairs:
        for q in pairs:
            raw = _bracket_e(e_forms[p], e_forms[q])
            acc: dict[Pair, Fraction] = {}
            if spec.family == "A":
                folded = [(pair, coef) for pair, coef in raw.items()]
            else:
                # raw = (1/2) sum raw_ab F_ab since raw is t-antisymmetric
                folded = []
                for (a, b), coef in raw.items():
                    cq, cp = canonicalize(spec, a, b)
                    if cp is not None and cq:
                        folded.append((cp, coef * cq / 2))
            for pair, coef in folded:
                acc[pair] = acc.get(pair, Fraction(0)) + coef
            terms = tuple(sorted((pr, v) for pr, v in acc.items() if v))
            if terms:
                table[(p, q)] = terms
    return table


def bracket(spec: AlgebraSpec, p: Pair, q: Pair) -> tuple[tuple[Pair, Fraction], ...]:
    """Structure constants [p, q] as a list of (canonical pair, coefficient)."""
    return _bracket_table(spec).get((p, q), ())


def rho(spec: AlgebraSpec) -> tuple[Fraction, ...]:
    """(rho_{-1}, ..., rho_{-n}); defined for the B/C/D families."""
    if spec.family == "A":
        raise ValueError("for gl(n) use the shifted variables lam_i - i instead of rho")
    n = spec.rank
    if spec.family == "D":
        return tuple(Fraction(i - 1) for i in range(1, n + 1))
    if spec.family == "B":
        return tuple(Fraction(2 * i - 1, 2) for i in range(1, n + 1))
    return tuple(Fraction(i) for i in range(1, n + 1))
