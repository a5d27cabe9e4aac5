"""The commutative graded side: polynomial invariants on matrix space,
stability under the graded column ideals, parity restrictions, and the
block-cyclic witness points certifying algebraic independence.

Coordinates: for gl every entry x[i,j] is an independent variable; for
the B/C/D families the skew condition x^t = -x (with (x^t)_ij =
theta_ij x_{-j,-i}) is enforced by expressing every entry through the
canonical coordinates -- one variable per canonical basis pair.

Independence is certified exactly as in the proofs: evaluate the trace
and corner invariants on the sparse block-cyclic matrix built from the
disjoint index blocks, observe the triangular structure in the y/z
parameters, and take the exact Jacobian rank at a rational point.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .lie import AlgebraSpec, bracket, canonical_pairs, canonicalize, theta
from .pbw import coord_name
from .poly import MP_ONE, MultiPoly, as_poly


def entry_poly(spec: AlgebraSpec, i: int, j: int) -> MultiPoly:
    """Matrix entry (i,j) in independent coordinates (0 when forced)."""
    q, pair = canonicalize(spec, i, j)
    if pair is None or not q:
        return MultiPoly()
    return MultiPoly.variable(coord_name(*pair)).scale(q)


def coordinate_matrix(spec: AlgebraSpec) -> dict:
    return {(i, j): entry_poly(spec, i, j) for i in spec.index_set() for j in spec.index_set()}


def _mat_mul(spec: AlgebraSpec, A: dict, B: dict) -> dict:
    idx = spec.index_set()
    out = {}
    for i in idx:
        for j in idx:
            acc = MultiPoly()
            for a in idx:
                acc = acc + A[(i, a)] * B[(a, j)]
            out[(i, j)] = acc
    return out


def _mat_power(spec: AlgebraSpec, A: dict, M: int) -> dict:
    out = A
    for _ in range(M - 1):
        out = _mat_mul(spec, out, A)
    return out


def invariant_gen(spec: AlgebraSpec, kind: str, M: int, ij=None, matrix: dict | None = None) -> MultiPoly:
    """tr(x^M), or the corner entry (x^M)_ij, in independent coordinates."""
    if M < 1:
        raise ValueError("power must be >= 1")
    A = matrix if matrix is not None else coordinate_matrix(spec)
    P = _mat_power(spec, A, M)
    if kind == "trace":
        out = MultiPoly()
        for i in spec.index_set():
            out = out + P[(i, i)]
        return out
    if kind == "corner":
        if ij is None:
            raise ValueError("corner invariants need the target entry (i, j)")
        return P[ij]
    raise ValueError("kind must be 'trace' or 'corner'")


def check_generation_bound(spec: AlgebraSpec, m: int, degree: int) -> bool:
    """For B/C/D the trace/corner families are only proved to generate the
    invariants of degree < n - m; returns False (callers warn) beyond it."""
    if spec.family == "A":
        return True
    return degree < spec.rank - m


def stability_check(spec: AlgebraSpec, kind: str, M: int, ij=None) -> bool:
    """gen at rank n minus gen at rank n-1 lies in the graded column ideal.

    The ideal is generated by single coordinates, so membership is the
    syntactic test that every monomial of the difference contains a
    column-n coordinate (gl) or a row-(-n) canonical coordinate (B/C/D).
    """
    if kind not in ("trace", "corner"):
        raise ValueError("stability is defined for the trace/corner families only")
    n = spec.rank
    if n < 2 and spec.family == "A":
        raise ValueError("needs rank >= 2")
    low = spec.shrink()
    hi_gen = invariant_gen(spec, kind, M, ij)
    lo_gen = invariant_gen(low, kind, M, ij)
    diff = hi_gen - lo_gen
    if spec.family == "A":
        markers = {coord_name(i, n) for i in spec.index_set()}
    else:
        markers = {coord_name(-n, j) for j in spec.index_set()
                   if canonicalize(spec, -n, j)[1] == (-n, j)}
    for mono in diff.terms:
        if not any(name in markers for name, _ in mono):
            return False
    return True


# -- witness points -----------------------------------------------------------


def _allowed_corner_triples(spec: AlgebraSpec, m: int, K: int):
    """Corner triples (i, j, M) surviving the parity restrictions."""
    small = [i for i in spec.index_set() if abs(i) <= m]
    out = []
    for M in range(1, K + 1):
        for i in small:
            for j in small:
                if spec.family == "A":
                    out.append((i, j, M))
                    continue
                if spec.is_orthogonal:
                    ok = i + j < 0 if M % 2 == 1 else i + j <= 0
                else:
                    ok = i + j < 0 if M % 2 == 0 else i + j <= 0
                if ok:
                    out.append((i, j, M))
    return out


def zvar(i: int, j: int, M: int) -> str:
    return f"z[{i},{j},{M}]"


@dataclass
class WitnessPoint:
    """Block-cyclic matrix realizing the triangular evaluation of the proofs."""

    spec: AlgebraSpec
    m: int
    K: int
    n: int
    matrix: dict
    params: list[str]
    triples: list[tuple[int, int, int]]
    point: dict[str, Fraction] = field(default_factory=dict)

    def trace_values(self) -> dict[int, MultiPoly]:
        spec_n = AlgebraSpec(self.spec.family, self.n)
        out = {}
        P = self.matrix
        for M in range(1, self.K + 1):
            PM = _mat_power(spec_n, P, M) if M > 1 else P
            tr = MultiPoly()
            for i in spec_n.index_set():
                tr = tr + PM[(i, i)]
            out[M] = tr
        return out

    def corner_values(self) -> dict[tuple[int, int, int], MultiPoly]:
        spec_n = AlgebraSpec(self.spec.family, self.n)
        powers = {1: self.matrix}
        for M in range(2, self.K + 1):
            powers[M] = _mat_mul(spec_n, powers[M - 1], self.matrix)
        return {(i, j, M): powers[M][(i, j)] for (i, j, M) in self.triples}


def witness_point(spec: AlgebraSpec, m: int, K: int, n: int) -> WitnessPoint:
    """The sparse matrix of the independence proofs.

    Each corner triple (i,j,M) owns a disjoint block of M-1 auxiliary
    indices inside {m+1 .. n-K}; the last K (pairs of) coordinates carry
    the diagonal y-parameters.  For B/C/D every forward chain entry (r,s)
    with value v is accompanied by the mirror entry (-s,-r) with value
    -theta_rs v, so the matrix satisfies x^t = -x by construction.
    """
    family_a = spec.family == "A"
    triples = _allowed_corner_triples(spec, m, K)
    total = sum(M - 1 for (_, _, M) in triples)
    minimal_n = m + K + total
    if n < minimal_n:
        raise ValueError(f"rank {n} too small for the witness blocks; need n >= {minimal_n}")
    spec_n = AlgebraSpec(spec.family, n)
    idx = spec_n.index_set()
    entries: dict = {(i, j): MultiPoly() for i in idx for j in idx}
    next_free = m + 1
    params: list[str] = []

    def add_entry(r, s, value):
        entries[(r, s)] = entries[(r, s)] + value
        if not family_a:
            th = Fraction(theta(spec_n, r, s))
            entries[(-s, -r)] = entries[(-s, -r)] + value.scale(-th)

    for (i, j, M) in triples:
        z = MultiPoly.variable(zvar(i, j, M))
        params.append(zvar(i, j, M))
        block = list(range(next_free, next_free + M - 1))
        next_free += M - 1
        diag_pair = (not family_a) and i + j == 0
        end_weight = MultiPoly.const(Fraction(1, 2)) if diag_pair else MP_ONE
        if M == 1:
            add_entry(i, j, z)
            continue
        add_entry(block[-1], j, z)
        for t in range(M - 1, 1, -1):
            add_entry(block[t - 2], block[t - 1], MP_ONE)
        add_entry(i, block[0], end_weight)

    for k in range(1, K + 1):
        y = MultiPoly.variable(f"y{k}")
        params.append(f"y{k}")
        pos = n - K + k
        if family_a:
            entries[(pos, pos)] = y
        else:
            entries[(pos, pos)] = y
            entries[(-pos, -pos)] = -y

    if not family_a:
        for i in idx:
            for j in idx:
                mirror = entries[(-j, -i)].scale(-Fraction(theta(spec_n, i, j)))
                if entries[(i, j)] != mirror:
                    raise AssertionError("witness matrix is not skew under the t-transposition")

    params = sorted(set(params))
    point = {p: Fraction(2 + t) for t, p in enumerate(params)}
    return WitnessPoint(spec, m, K, n, entries, params, triples, point)


def jacobian_rank(polys: Sequence[MultiPoly], params: Sequence[str], point: dict) -> int:
    """Exact rank over Q of the Jacobian of `polys` w.r.t. `params`."""
    rows = []
    values = {k: Fraction(v) for k, v in point.items()}
    for p in polys:
        rows.append([p.derivative(name).evaluate(values) for name in params])
    rank = 0
    ncols = len(params)
    col = 0
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(rows)):
            if rows[r][col] != 0:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [v * inv for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
        if rank == len(rows):
            break
    return rank


def independence_report(spec: AlgebraSpec, m: int, K: int, n: int | None = None):
    """Build the witness, evaluate the invariant families on it, and
    certify full Jacobian rank; returns (witness, polys, rank, expected)."""
    triples = _allowed_corner_triples(spec, m, K)
    total = sum(M - 1 for (_, _, M) in triples)
    if n is None:
        n = m + K + total
    w = witness_point(spec, m, K, n)
    traces = w.trace_values()
    corners = w.corner_values()
    polys = []
    if spec.family == "A":
        polys.extend(traces[M] for M in range(1, K + 1))
    else:
        polys.extend(traces[M] for M in range(2, K + 1, 2))
    polys.extend(corners[t] for t in w.triples)
    rank = jacobian_rank(polys, w.params, w.point)
    return w, polys, rank, len(polys)


# -- parity and adjoint invariance ------------------------------------------


def parity_status(spec: AlgebraSpec, i: int, j: int, M: int) -> str:
    """Classify a corner invariant against the skew-symmetry parity table:
    'allowed', 'expressible' (via the mirrored entry), or 'vanishes'."""
    if spec.family == "A":
        return "allowed"
    odd = M % 2 == 1
    strict = odd if spec.is_orthogonal else not odd
    if (i + j < 0) or (i + j == 0 and not strict):
        return "allowed"
    if i + j == 0:
        return "vanishes"
    return "expressible"


def parity_identity_holds(spec: AlgebraSpec, i: int, j: int, M: int) -> bool:
    """Verify p_ij^(M) = (-1)^M theta_ij p_{-j,-i}^(M) (so disallowed
    entries are expressible or vanish identically)."""
    A = coordinate_matrix(spec)
    P = _mat_power(spec, A, M)
    lhs = P[(i, j)]
    rhs = P[(-j, -i)].scale(Fraction(theta(spec, i, j)) * (-1) ** M)
    return lhs == rhs


def coadjoint_derivation(spec: AlgebraSpec, x_pair, f: MultiPoly) -> MultiPoly:
    """Adjoint action of a basis element extended as a derivation of the
    symmetric algebra (coordinates transform by the bracket)."""
    names = {}
    for p in canonical_pairs(spec):
        names[coord_name(*p)] = p
    out = MultiPoly()
    for name in f.variables():
        pair = names.get(name)
        if pair is None:
            continue
        image = MultiPoly()
        for target, coef in bracket(spec, x_pair, pair):
            image = image + MultiPoly.variable(coord_name(*target)).scale(coef)
        if image.is_zero:
            continue
        out = out + f.derivative(name) * image
    return out


def adjoint_invariance_check(spec: AlgebraSpec, m: int, kind: str, M: int, ij=None) -> bool:
    """The invariant is killed by every generator of g_m(n)."""
    gen = invariant_gen(spec, kind, M, ij)
    for pair in canonical_pairs(spec):
        if min(abs(pair[0]), abs(pair[1])) <= m:
            continue
        if not coadjoint_derivation(spec, pair, gen).is_zero:
            return False
    return True
