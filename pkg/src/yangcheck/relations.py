"""Exact residual checks for the quadratic/linear relations satisfied by
the evaluation images, plus quantum-determinant and projection-coherence
machinery.

Relations are always checked on concrete images inside U(g) (or the
tensor model U(g) (x) Q[lam, c]); abstract Yangian-side normal forms are
out of scope.  Rational prefactors 1/(u-v), 1/(u+v), 1/(u^2-v^2) are
cleared rather than expanded, and residuals are asserted on the safe
window a, b <= K - deg(denominator), where every slot of the multiplied-
out relation is still determined by the order-K builders.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations, product

from .lie import AlgebraSpec, theta
from .matrices import (
    SeriesMatrix,
    build_S_eta,
    build_Sigma,
    build_T_eta,
    build_T_phi,
    build_phi_tensor,
)
from .pbw import (
    Alphabet,
    UEAElement,
    commutator,
    hc_order,
    ideal_membership,
    pi_projection,
)
from .poly import MP_ONE, MultiPoly, as_poly
from .series import TruncSeries, ratfun_series, series_shift


@dataclass(frozen=True)
class CheckReport:
    """One verified instance: exact residual status plus a witness if any."""

    name: str
    instance: str
    passed: bool
    witness: str | None = None


def sort_reports(reports):
    return sorted(reports, key=lambda r: (r.name, r.instance))


class _PairProducts:
    """Cache of ordered products coeff(p,q,a) * coeff(r,s,b).

    The same products appear in the commutator side and the right-hand
    side of every index tuple, so one table serves the whole suite.
    """

    def __init__(self, M: SeriesMatrix):
        self.matrix = M
        self.zero = UEAElement.zero(M.alphabet)
        self.coeffs = {
            (i, j): [M.coeff(i, j, k) for k in range(M.order + 1)]
            for i in M.indices
            for j in M.indices
        }
        self.cache: dict = {}

    def get(self, pq, a, rs, b) -> UEAElement:
        if a == 0:
            return self.coeffs[rs][b] if pq[0] == pq[1] else self.zero
        if b == 0:
            return self.coeffs[pq][a] if rs[0] == rs[1] else self.zero
        key = (pq, a, rs, b)
        val = self.cache.get(key)
        if val is None:
            val = self.coeffs[pq][a] * self.coeffs[rs][b]
            self.cache[key] = val
        return val


def _witness_text(a: int, b: int, res: UEAElement) -> str:
    return f"u^-{a}*v^-{b}: {res}"


def check_ternary(T: SeriesMatrix, perturb: bool = False, tuples=None, products=None):
    """Residuals of the gl-family exchange relation, denominators cleared.

    (u-v)[t_ij(u), t_kl(v)] = t_kj(u) t_il(v) - t_kj(v) t_il(u), checked
    for every index tuple on the window a, b <= K-1.
    """
    if T.spec.family != "A":
        raise ValueError("the ternary relation applies to gl-family images")
    K = T.order
    if K < 2:
        raise ValueError("order bound too small: the safe window is empty")
    prods = products if products is not None else _PairProducts(T)
    P = prods.get
    reports = []
    for i, j, k, l in (tuples if tuples is not None else product(T.indices, repeat=4)):
        ij, kl, kj, il = (i, j), (k, l), (k, j), (i, l)
        passed, witness = True, None
        for a in range(K):
            for b in range(K):
                lhs = (
                    P(ij, a + 1, kl, b) - P(kl, b, ij, a + 1)
                    - P(ij, a, kl, b + 1) + P(kl, b + 1, ij, a)
                )
                rhs = P(kj, a, il, b) - P(kj, b, il, a)
                if perturb:
                    rhs = P(kj, a, il, b) + P(kj, b, il, a)
                res = lhs - rhs
                if not res.is_zero:
                    passed, witness = False, _witness_text(a, b, res)
                    break
            if not passed:
                break
        reports.append(CheckReport("ternary", f"i={i},j={j},k={k},l={l}", passed, witness))
    return sort_reports(reports)


def check_reflection(S: SeriesMatrix, perturb: bool = False, tuples=None, products=None):
    """Residuals of the reflection-type exchange relation for S-images.

    Both denominators are cleared by multiplying with (u-v)(u+v); the
    residual is asserted on the window a, b <= K-2.
    """
    spec = S.spec
    if spec.family == "A":
        raise ValueError("the reflection relation applies to B/C/D images")
    K = S.order
    if K < 2:
        raise ValueError("order bound too small: the safe window is empty")
    prods = products if products is not None else _PairProducts(S)
    P = prods.get
    th = lambda i, j: Fraction(theta(spec, i, j))
    reports = []
    for i, j, k, l in (tuples if tuples is not None else product(S.indices, repeat=4)):
        ij, kl, kj, il = (i, j), (k, l), (k, j), (i, l)
        imk, mjl = (i, -k), (-j, l)
        kmi, mlj = (k, -i), (-l, j)
        t_kj = th(k, -j)
        t_il = th(i, -l)
        t_ij = th(i, -j) if not perturb else -th(i, -j)
        passed, witness = True, None
        for a in range(K - 1):
            for b in range(K - 1):
                def LHS(x, y):
                    return P(ij, x, kl, y) - P(kl, y, ij, x)

                lhs = LHS(a + 2, b) - LHS(a, b + 2)

                def A_(x, y):
                    return P(kj, x, il, y) - P(kj, y, il, x)

                term_a = A_(a + 1, b) + A_(a, b + 1)

                def B_(x, y):
                    return (
                        P(imk, x, mjl, y).scale(t_kj)
                        - P(kmi, y, mlj, x).scale(t_il)
                    )

                term_b = B_(a + 1, b) - B_(a, b + 1)
                term_c = (P(kmi, a, mjl, b) - P(kmi, b, mjl, a)).scale(t_ij)
                res = lhs - term_a + term_b - term_c
                if not res.is_zero:
                    passed, witness = False, _witness_text(a, b, res)
                    break
            if not passed:
                break
        reports.append(CheckReport("reflection", f"i={i},j={j},k={k},l={l}", passed, witness))
    return sort_reports(reports)


def check_symmetry(S: SeriesMatrix, sign_override: int | None = None):
    """Residuals of the linear symmetry relation for S-images.

    theta_ij s_{-j,-i}(-u) = s_ij(u) +/- (s_ij(u) - s_ij(-u)) / (2u) with
    "+" orthogonal and "-" symplectic; the 2u denominator is cleared and
    slots k <= K-1 are asserted.
    """
    spec = S.spec
    if spec.family == "A":
        raise ValueError("the symmetry relation applies to B/C/D images")
    K = S.order
    sign = sign_override if sign_override is not None else (1 if spec.is_orthogonal else -1)
    reports = []
    for i in S.indices:
        for j in S.indices:
            t_ij = Fraction(theta(spec, i, j))
            s_ij = [S.coeff(i, j, k) for k in range(K + 1)]
            s_mji = [S.coeff(-j, -i, k) for k in range(K + 1)]
            passed, witness = True, None
            for k in range(K):
                x_next = s_mji[k + 1].scale(t_ij * (-1) ** (k + 1)) - s_ij[k + 1]
                y_k = s_ij[k].scale(1 - (-1) ** k)
                res = x_next.scale(2) - y_k.scale(sign)
                if not res.is_zero:
                    passed, witness = False, f"u^-{k}: {res}"
                    break
            reports.append(CheckReport("symmetry", f"i={i},j={j}", passed, witness))
    return sort_reports(reports)


def qdet(T: SeriesMatrix) -> TruncSeries:
    """Quantum determinant of a gl-family image.

    sum over permutations p of sgn(p) t_{p(1),1}(u) t_{p(2),2}(u-1) ...
    t_{p(n),n}(u-n+1), factors multiplied in the written order, truncated
    at the builder's order.
    """
    spec = T.spec
    if spec.family != "A":
        raise ValueError("the quantum determinant applies to gl-family images")
    n = spec.rank
    K = T.order
    shifted = {
        (p, col): series_shift(T.entry(p, col), -(col - 1))
        for p in T.indices
        for col in T.indices
    }
    total = None
    for perm in permutations(range(1, n + 1)):
        inversions = sum(
            1 for x in range(n) for y in range(x + 1, n) if perm[x] > perm[y]
        )
        prod_series = shifted[(perm[0], 1)]
        for col in range(2, n + 1):
            prod_series = prod_series * shifted[(perm[col - 1], col)]
        if inversions % 2:
            prod_series = -prod_series
        total = prod_series if total is None else total + prod_series
    if total is None:  # rank 0
        total = TruncSeries.constant(K, UEAElement.one(T.alphabet))
    return total


def gamma_series(spec: AlgebraSpec, K: int) -> TruncSeries:
    """Scalar series relating the two determinants of the twisted tower:
    1 for orthogonal, the expansion of (2u+1)/(2u-2n+1) for symplectic."""
    if spec.family == "A":
        raise ValueError("defined for the B/C/D families")
    if spec.is_orthogonal:
        return TruncSeries.constant(K, Fraction(1))
    n = spec.rank
    return ratfun_series([Fraction(2), Fraction(1)], [Fraction(2), Fraction(1 - 2 * n)], K)


# -- projection coherence -----------------------------------------------------


def embed_element(a: UEAElement, target: Alphabet) -> UEAElement:
    """Include an element of a lower-rank algebra into a higher rank."""
    if a.alphabet.offset_id is not None:
        raise ValueError("embed from an offset-free letter order")
    out = UEAElement.zero(target)
    for w, cf in a.terms.items():
        out = out + UEAElement.from_pairs(target, [a.alphabet.letters[lid] for lid in w], cf)
    return out


def substitute_coeffs(a: UEAElement, mapping) -> UEAElement:
    out = {}
    for w, cf in a.terms.items():
        new = cf.substitute(mapping)
        if new.terms:
            out[w] = new
    return UEAElement(a.alphabet, out)


def check_projection_coherence(
    spec: AlgebraSpec,
    K: int,
    c=None,
    perturb: int = 0,
    include_tensor: bool = True,
):
    """Coherence of the parameterized tower under the rank-lowering map.

    (i) boundary coefficients with column index n lie in I(n);
    (ii) differences of matching coefficients across ranks lie in I(n);
    (iii) the projection maps rank-n coefficients exactly onto rank-(n-1)
    ones -- for the twisted families this is run in the tensor model,
    where the scalar chi-series absorbs the lam_n = c substitution.
    """
    c = as_poly(c if c is not None else MultiPoly.variable("c"))
    n = spec.rank
    low = spec.shrink()
    reports = []
    if spec.family == "A":
        high_m = build_T_phi(spec, K, c, shift_perturb=perturb)
        low_m = build_T_phi(low, K, c) if low.rank >= 1 else None
        boundary_col = n
        small = [i for i in spec.index_set() if i != n]
    else:
        high_m = build_Sigma(spec, K, c, kappa_offset=perturb)
        low_m = build_Sigma(low, K, c) if low.matrix_size else None
        boundary_col = n
        small = [i for i in spec.index_set() if abs(i) != n]

    for i in spec.index_set():
        for M in range(1, K + 1):
            member = ideal_membership(high_m.coeff(i, boundary_col, M), "left", c)
            reports.append(
                CheckReport("proj-boundary", f"i={i},M={M}", member,
                            None if member else "coefficient not in the left ideal")
            )

    if low_m is not None:
        target = high_m.alphabet
        for i in small:
            for j in small:
                low_coeffs = [embed_element(low_m.coeff(i, j, M), target) for M in range(K + 1)]
                for M in range(1, K + 1):
                    diff = high_m.coeff(i, j, M) - low_coeffs[M]
                    member = ideal_membership(diff, "left", c)
                    reports.append(
                        CheckReport("proj-difference", f"i={i},j={j},M={M}", member,
                                    None if member else "difference not in the left ideal")
                    )

    if include_tensor and low.rank >= 0:
        if spec.family == "A":
            high_t, low_t = high_m, low_m
            subs = {}
        else:
            high_t = build_phi_tensor(spec, K, c, kappa_offset=perturb)
            low_t = build_phi_tensor(low, K, c) if low.matrix_size else None
            subs = {f"lam{n}": c}
        if low_t is not None:
            for i in small:
                for j in small:
                    for M in range(1, K + 1):
                        projected = pi_projection(high_t.coeff(i, j, M), c)
                        projected = substitute_coeffs(projected, subs) if subs else projected
                        expected = low_t.coeff(i, j, M)
                        same = (projected - expected).is_zero
                        reports.append(
                            CheckReport("proj-image", f"i={i},j={j},M={M}", same,
                                        None if same else f"projection mismatch: {projected - expected}")
                        )
    return sort_reports(reports)


def check_centralizer_images(M: SeriesMatrix, m: int, max_order: int | None = None):
    """Series coefficients with |i|,|j| <= m commute with every generator
    of the lower-right subalgebra g_m(n)."""
    from .pbw import centralizer_check

    K = M.order if max_order is None else min(max_order, M.order)
    reports = []
    for i in M.indices:
        for j in M.indices:
            if abs(i) > m or abs(j) > m:
                continue
            for k in range(1, K + 1):
                ok = centralizer_check(M.coeff(i, j, k), m)
                reports.append(
                    CheckReport("centralizer", f"i={i},j={j},order={k}", ok,
                                None if ok else "nonzero commutator with the small subalgebra")
                )
    return sort_reports(reports)


def check_lie_axioms(spec: AlgebraSpec):
    """Antisymmetry and Jacobi on the cached structure constants, plus the
    dimension formula and closure of the canonical basis."""
    from .lie import canonical_pairs

    pairs = canonical_pairs(spec)
    reports = [
        CheckReport("lie-dimension", f"dim={len(pairs)}", len(pairs) == spec.dimension(),
                    None if len(pairs) == spec.dimension() else "basis size mismatch")
    ]

    from .lie import bracket as _bracket

    def as_dict(p, q):
        return {pr: v for pr, v in _bracket(spec, p, q)}

    anti_ok, anti_w = True, None
    for p in pairs:
        for q in pairs:
            ab = as_dict(p, q)
            ba = as_dict(q, p)
            if {k: -v for k, v in ba.items()} != ab:
                anti_ok, anti_w = False, f"[{p},{q}] != -[{q},{p}]"
                break
        if not anti_ok:
            break
    reports.append(CheckReport("lie-antisymmetry", "all pairs", anti_ok, anti_w))

    jac_ok, jac_w = True, None
    for x in pairs:
        for y in pairs:
            xy = as_dict(x, y)
            for z in pairs:
                acc: dict = {}
                for mid, v in xy.items():
                    for pr, w in as_dict(mid, z).items():
                        acc[pr] = acc.get(pr, 0) + v * w
                for mid, v in as_dict(y, z).items():
                    for pr, w in as_dict(mid, x).items():
                        acc[pr] = acc.get(pr, 0) + v * w
                for mid, v in as_dict(z, x).items():
                    for pr, w in as_dict(mid, y).items():
                        acc[pr] = acc.get(pr, 0) + v * w
                if any(acc.values()):
                    jac_ok, jac_w = False, f"jacobi fails at {x},{y},{z}"
                    break
            if not jac_ok:
                break
        if not jac_ok:
            break
    reports.append(CheckReport("lie-jacobi", "all triples", jac_ok, jac_w))
    return sort_reports(reports)


def check_linear_commutators(M: SeriesMatrix):
    """First-coefficient commutator identities for either family.

    gl: [t_kl^(1), t_ij(u)] = delta_il t_kj(u) - delta_kj t_il(u).
    B/C/D: the same with the two extra theta-terms required by the
    reflection relation.
    """
    spec = M.spec
    K = M.order
    reports = []
    is_gl = spec.family == "A"
    for k, l, i, j in product(M.indices, repeat=4):
        first = M.coeff(k, l, 1)
        passed, witness = True, None
        for t in range(1, K + 1):
            lhs = commutator(first, M.coeff(i, j, t))
            rhs = UEAElement.zero(M.alphabet)
            if i == l:
                rhs = rhs + M.coeff(k, j, t)
            if k == j:
                rhs = rhs - M.coeff(i, l, t)
            if not is_gl:
                if k == -i:
                    rhs = rhs - M.coeff(-l, j, t).scale(Fraction(theta(spec, i, -l)))
                if -j == l:
                    rhs = rhs + M.coeff(i, -k, t).scale(Fraction(theta(spec, k, -j)))
            res = lhs - rhs
            if not res.is_zero:
                passed, witness = False, f"u^-{t}: {res}"
                break
        reports.append(CheckReport("linear-commutator", f"k={k},l={l},i={i},j={j}", passed, witness))
    return sort_reports(reports)
