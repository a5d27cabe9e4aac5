"""PBW normal forms and ideal arithmetic in classical enveloping algebras.

An element of U(g) is a dict mapping normal words to polynomial
coefficients.  A word is a tuple of letter ids into an ``Alphabet``: a
totally ordered list of canonical basis elements, one of which may be a
"shifted" letter (the Cartan generator minus the central parameter c),
so that ideal membership becomes a per-monomial syntactic test after
normalization.  Words are normal iff their letter ids are non-decreasing.

Rewriting replaces the leftmost out-of-order adjacent pair x*y by
y*x + [x,y]; the measure (total degree, inversion count) drops at each
step, and all intermediate words are memoized per alphabet, which is what
makes degree-8 products at rank 3 affordable.

Three letter orders are used:

* ``hc``     -- lower < cartan < upper; the default order, used for the
                Harish-Chandra projection and as the common exchange format.
* ``ideal``  -- row-n < rank-(n-1) letters < column-n < shifted Cartan;
                a normal word lies in the left ideal I(n) iff it contains
                a column-n or shifted letter (they cluster at the right
                end, where a left ideal needs its generator).
* ``ideal_right`` -- shifted Cartan < row-n < rank-(n-1) < column-n; the
                mirror layout for the right ideal J(n), whose generators
                must appear leftmost.  (Literally reversing the ``ideal``
                order does not work: E[n,1]*E[1,n] is in J(n) but its
                normal form under the reversed order has monomials with
                no row-n letter.)
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .lie import (
    AlgebraSpec,
    bracket,
    canonical_pairs,
    canonicalize,
    triangular_class,
)
from .poly import MP_ONE, MultiPoly, as_poly

Pair = tuple[int, int]
Word = tuple[int, ...]

_WITNESS = {"ideal": ("col", "shift"), "ideal_right": ("row", "shift")}


def coord_name(i: int, j: int) -> str:
    """Commutative coordinate name shared with the graded-invariant layer."""
    return f"x[{i},{j}]"


def _ideal_layout(spec: AlgebraSpec):
    if spec.rank < 1:
        raise ValueError("ideal orders need rank >= 1")
    n = spec.rank
    pairs = canonical_pairs(spec)
    if spec.family == "A":
        shift = (n, n)
        row = sorted(p for p in pairs if p[0] == n and p != shift)
        col = sorted(p for p in pairs if p[1] == n and p != shift)
        mid = sorted(p for p in pairs if p[0] != n and p[1] != n)
    else:
        shift = (-n, -n)
        row = sorted(p for p in pairs if p[1] == -n and p[0] != -n)
        col = sorted(p for p in pairs if p[0] == -n and p[1] != -n)
        mid = sorted(p for p in pairs if n not in (abs(p[0]), abs(p[1])))
    return row, mid, col, shift


class Alphabet:
    """A totally ordered alphabet of canonical letters for one spec.

    Instances are interned per (spec, kind, c) so that the rewrite table
    and the normal-form cache are shared; see :func:`hc_order` and
    :func:`ideal_order`.
    """

    __slots__ = (
        "spec", "kind", "c", "letters", "klass", "pair_to_id", "offset_id",
        "_rewrite_cache", "_nf_cache", "_matpow",
    )

    def __init__(self, spec: AlgebraSpec, kind: str, c: MultiPoly | None):
        self.spec = spec
        self.kind = kind
        self.c = c
        letters: list[Pair] = []
        klass: list[str] = []
        if kind == "hc":
            pairs = canonical_pairs(spec)
            for tag in ("lower", "cartan", "upper"):
                for p in sorted(p for p in pairs if triangular_class(p) == tag):
                    letters.append(p)
                    klass.append(tag)
            self.offset_id = None
        elif kind in ("ideal", "ideal_right"):
            row, mid, col, shift = _ideal_layout(spec)
            blocks = (
                [(row, "row"), (mid, "mid"), (col, "col"), ([shift], "shift")]
                if kind == "ideal"
                else [([shift], "shift"), (row, "row"), (mid, "mid"), (col, "col")]
            )
            for block, tag in blocks:
                for p in block:
                    letters.append(p)
                    klass.append(tag)
            self.offset_id = letters.index(shift)
        else:
            raise ValueError(f"unknown alphabet kind {kind!r}")
        self.letters = tuple(letters)
        self.klass = tuple(klass)
        self.pair_to_id = {p: k for k, p in enumerate(letters)}
        assert len(self.letters) == spec.dimension()
        self._rewrite_cache: dict = {}
        self._nf_cache: dict = {}
        self._matpow: dict = {}

    # -- letters ---------------------------------------------------------

    def offset_of(self, lid: int) -> MultiPoly | None:
        if self.offset_id is not None and lid == self.offset_id:
            return self.c
        return None

    def letter_name(self, lid: int) -> str:
        sym = "E" if self.spec.family == "A" else "F"
        i, j = self.letters[lid]
        base = f"{sym}[{i},{j}]"
        off = self.offset_of(lid)
        if off is not None:
            return f"({base}-{off})"
        return base

    # -- rewriting ---------------------------------------------------------

    def rewrite(self, x: int, y: int):
        """x*y -> y*x + [x,y], with [x,y] split into letters + scalar."""
        key = (x, y)
        hit = self._rewrite_cache.get(key)
        if hit is not None:
            return hit
        terms = []
        scalar = MultiPoly()
        for pair, q in bracket(self.spec, self.letters[x], self.letters[y]):
            lid = self.pair_to_id[pair]
            terms.append((lid, q))
            off = self.offset_of(lid)
            if off is not None:
                scalar = scalar + off.scale(q)
        result = (tuple(terms), scalar if scalar.terms else None)
        self._rewrite_cache[key] = result
        return result

    def nf_word(self, word: Word) -> dict:
        """Normal form of an arbitrary word as {normal word: coefficient}."""
        cache = self._nf_cache
        hit = cache.get(word)
        if hit is not None:
            return hit
        pos = -1
        for t in range(len(word) - 1):
            if word[t] > word[t + 1]:
                pos = t
                break
        if pos < 0:
            res = {word: MP_ONE}
            cache[word] = res
            return res
        x, y = word[pos], word[pos + 1]
        head, tail = word[:pos], word[pos + 2:]
        acc = dict(self.nf_word(head + (y, x) + tail))
        terms, scalar = self.rewrite(x, y)
        for lid, q in terms:
            for w, cf in self.nf_word(head + (lid,) + tail).items():
                cur = acc.get(w)
                new = cf.scale(q) if cur is None else cur + cf.scale(q)
                if new.terms:
                    acc[w] = new
                else:
                    acc.pop(w, None)
        if scalar is not None:
            for w, cf in self.nf_word(head + tail).items():
                cur = acc.get(w)
                new = cf * scalar if cur is None else cur + cf * scalar
                if new.terms:
                    acc[w] = new
                else:
                    acc.pop(w, None)
        cache[word] = acc
        return acc


_ALPHABETS: dict = {}


def _get_alphabet(spec: AlgebraSpec, kind: str, c) -> Alphabet:
    key = (spec, kind, None if c is None else repr(as_poly(c)))
    alph = _ALPHABETS.get(key)
    if alph is None:
        alph = Alphabet(spec, kind, None if c is None else as_poly(c))
        _ALPHABETS[key] = alph
    return alph


def hc_order(spec: AlgebraSpec) -> Alphabet:
    return _get_alphabet(spec, "hc", None)


def ideal_order(spec: AlgebraSpec, c=None, side: str = "left") -> Alphabet:
    if c is None:
        c = MultiPoly.variable("c")
    kind = "ideal" if side == "left" else "ideal_right"
    return _get_alphabet(spec, kind, c)


@dataclass(frozen=True)
class IdealSpec:
    """The left ideal I(n) or right ideal J(n) at parameter c."""

    side: str  # "left" or "right"
    spec: AlgebraSpec
    c: object = None


class UEAElement:
    """Element of U(g) with sparse normal words and polynomial coefficients."""

    __slots__ = ("alphabet", "terms")

    def __init__(self, alphabet: Alphabet, terms: dict | None = None):
        self.alphabet = alphabet
        self.terms: dict[Word, MultiPoly] = terms if terms is not None else {}

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, alphabet: Alphabet) -> "UEAElement":
        return cls(alphabet)

    @classmethod
    def one(cls, alphabet: Alphabet) -> "UEAElement":
        return cls(alphabet, {(): MP_ONE})

    @classmethod
    def scalar(cls, alphabet: Alphabet, value) -> "UEAElement":
        p = as_poly(value)
        return cls(alphabet, {(): p} if p.terms else {})

    @classmethod
    def generator(cls, alphabet: Alphabet, i: int, j: int) -> "UEAElement":
        """The basis element E[i,j] / F[i,j] expressed in the alphabet."""
        q, pair = canonicalize(alphabet.spec, i, j)
        if pair is None or not q:
            return cls.zero(alphabet)
        lid = alphabet.pair_to_id[pair]
        terms = {(lid,): as_poly(q)}
        off = alphabet.offset_of(lid)
        if off is not None:
            # base = letter + offset
            p = off.scale(q)
            if p.terms:
                terms[()] = p
        return cls(alphabet, terms)

    @classmethod
    def from_pairs(cls, alphabet: Alphabet, pairs: Iterable[Pair], coeff=1) -> "UEAElement":
        out = cls.one(alphabet)
        for i, j in pairs:
            out = out * cls.generator(alphabet, i, j)
        return out.scale(coeff)

    # -- ring operations ---------------------------------------------------

    def _require_same(self, other: "UEAElement"):
        if self.alphabet is not other.alphabet:
            raise ValueError("elements live over different alphabets/specs")

    def __add__(self, other):
        if isinstance(other, (int, Fraction, MultiPoly)):
            other = UEAElement.scalar(self.alphabet, other)
        self._require_same(other)
        out = dict(self.terms)
        for w, cf in other.terms.items():
            cur = out.get(w)
            new = cf if cur is None else cur + cf
            if new.terms:
                out[w] = new
            else:
                out.pop(w, None)
        return UEAElement(self.alphabet, out)

    __radd__ = __add__

    def __neg__(self):
        return UEAElement(self.alphabet, {w: -cf for w, cf in self.terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction, MultiPoly)):
            other = UEAElement.scalar(self.alphabet, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, s) -> "UEAElement":
        p = as_poly(s)
        if not p.terms:
            return UEAElement.zero(self.alphabet)
        if p is MP_ONE or p == 1:
            return self
        return UEAElement(
            self.alphabet,
            {w: cf * p for w, cf in self.terms.items()},
        )

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, MultiPoly)):
            return self.scale(other)
        self._require_same(other)
        out: dict[Word, MultiPoly] = {}
        nf = self.alphabet.nf_word
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                cc = c1 * c2
                if not cc.terms:
                    continue
                for w, q in nf(w1 + w2).items():
                    add = cc if q is MP_ONE else cc * q
                    cur = out.get(w)
                    new = add if cur is None else cur + add
                    if new.terms:
                        out[w] = new
                    else:
                        out.pop(w, None)
        return UEAElement(self.alphabet, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, MultiPoly)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers in an enveloping algebra")
        out = UEAElement.one(self.alphabet)
        for _ in range(n):
            out = out * self
        return out

    # -- predicates --------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, UEAElement):
            self._require_same(other)
            return self.terms == other.terms
        if isinstance(other, (int, Fraction, MultiPoly)):
            return (self - other).is_zero
        return NotImplemented

    def degree(self) -> int:
        if not self.terms:
            return 0
        return max(len(w) for w in self.terms)

    def scalar_part(self) -> MultiPoly:
        return self.terms.get((), MultiPoly())

    def inverse_as_scalar(self) -> "UEAElement":
        if any(w for w in self.terms):
            raise ValueError("constant term is not a scalar")
        return UEAElement.scalar(self.alphabet, self.scalar_part().inverse_as_scalar())

    # -- conversions ---------------------------------------------------------

    def convert_to(self, target: Alphabet) -> "UEAElement":
        """Re-expand in another letter order (round trips are exact)."""
        if target is self.alphabet:
            return self
        if target.spec != self.alphabet.spec:
            raise ValueError("cannot convert between different specs")
        exprs: dict[int, UEAElement] = {}
        out = UEAElement.zero(target)
        for w, cf in self.terms.items():
            prod = UEAElement.scalar(target, cf)
            for lid in w:
                expr = exprs.get(lid)
                if expr is None:
                    i, j = self.alphabet.letters[lid]
                    expr = UEAElement.generator(target, i, j)
                    off = self.alphabet.offset_of(lid)
                    if off is not None:
                        expr = expr - off
                    exprs[lid] = expr
                prod = prod * expr
            out = out + prod
        return out

    def transpose(self) -> "UEAElement":
        """The anti-automorphism extending E[i,j] -> E[j,i] (F likewise).

        It swaps the left ideal I(n) with the right ideal J(n) and fixes
        their parameters, which makes it a handy membership cross-check.
        """
        alph = self.alphabet
        out = UEAElement.zero(alph)
        sigma: dict[int, UEAElement] = {}
        for w, cf in self.terms.items():
            prod = UEAElement.scalar(alph, cf)
            for lid in reversed(w):
                expr = sigma.get(lid)
                if expr is None:
                    i, j = alph.letters[lid]
                    expr = UEAElement.generator(alph, j, i)
                    off = alph.offset_of(lid)
                    if off is not None:
                        expr = expr - off
                    sigma[lid] = expr
                prod = prod * expr
            out = out + prod
        return out

    def __repr__(self):
        return format_element(self)


def format_element(a: UEAElement) -> str:
    if not a.terms:
        return "0"
    alph = a.alphabet
    parts = []
    for w in sorted(a.terms, key=lambda w: (len(w), w)):
        cf = a.terms[w]
        factors = []
        k = 0
        while k < len(w):
            run = 1
            while k + run < len(w) and w[k + run] == w[k]:
                run += 1
            name = alph.letter_name(w[k])
            factors.append(name if run == 1 else f"{name}^{run}")
            k += run
        body = "*".join(factors)
        cf_text = repr(cf)
        if not factors:
            parts.append(f"({cf_text})" if " " in cf_text else cf_text)
        elif cf == 1:
            parts.append(body)
        else:
            parts.append(f"({cf_text})*{body}")
    return " + ".join(parts)


# -- spec operations ---------------------------------------------------------


def normal_form(a: UEAElement, order: Alphabet) -> UEAElement:
    return a.convert_to(order)


def commutator(a: UEAElement, b: UEAElement) -> UEAElement:
    return a * b - b * a


def nf_reference(alphabet: Alphabet, word: Word, strategy: str = "leftmost") -> dict:
    """Uncached reducer used to cross-check strategy independence."""
    descents = [t for t in range(len(word) - 1) if word[t] > word[t + 1]]
    if not descents:
        return {word: MP_ONE}
    pos = descents[0] if strategy == "leftmost" else descents[-1]
    x, y = word[pos], word[pos + 1]
    head, tail = word[:pos], word[pos + 2:]
    acc: dict[Word, MultiPoly] = {}

    def fold(items, factor):
        for w, cf in items.items():
            add = cf * factor
            cur = acc.get(w)
            new = add if cur is None else cur + add
            if new.terms:
                acc[w] = new
            else:
                acc.pop(w, None)

    fold(nf_reference(alphabet, head + (y, x) + tail, strategy), MP_ONE)
    terms, scalar = alphabet.rewrite(x, y)
    for lid, q in terms:
        fold(nf_reference(alphabet, head + (lid,) + tail, strategy), as_poly(q))
    if scalar is not None:
        fold(nf_reference(alphabet, head + tail, strategy), scalar)
    return acc


def ideal_membership(a: UEAElement, ideal: IdealSpec | str = "left", c=None) -> bool:
    """Exact membership in I(n) (left) or J(n) (right).

    Normalizes under the matching ideal order and checks that every
    monomial contains a generator-class letter.  Defined on all of U(g);
    on the centralizer of the last Cartan generator, left and right
    membership agree.
    """
    if isinstance(ideal, IdealSpec):
        side, c = ideal.side, ideal.c if ideal.c is not None else c
    else:
        side = ideal
    alph = ideal_order(a.alphabet.spec, c, side)
    b = a.convert_to(alph)
    witness = _WITNESS[alph.kind]
    klass = alph.klass
    return all(
        any(klass[lid] in witness for lid in w) for w in b.terms
    )


def _cartan_indices(spec: AlgebraSpec) -> tuple[int, ...]:
    return tuple(range(1, spec.rank + 1))


def _cartan_generator(alphabet: Alphabet, i: int) -> UEAElement:
    if alphabet.spec.family == "A":
        return UEAElement.generator(alphabet, i, i)
    return UEAElement.generator(alphabet, -i, -i)


def pi_projection(a: UEAElement, c=None) -> UEAElement:
    """Project the centralizer of the last Cartan generator onto rank n-1.

    Normalizes under the ideal order and drops every monomial carrying a
    row-n, column-n or shifted-Cartan letter; the remainder is re-expressed
    over the rank-(n-1) algebra.  Raises if the input does not commute with
    the last Cartan generator (the projection is only multiplicative
    there).
    """
    spec = a.alphabet.spec
    n = spec.rank
    if n < 1:
        raise ValueError("nothing to project at rank 0")
    cartan_n = _cartan_generator(a.alphabet, n)
    if not commutator(a, cartan_n).is_zero:
        raise ValueError("element is not in the centralizer of the last Cartan generator")
    alph = ideal_order(spec, c)
    b = a.convert_to(alph)
    target = hc_order(spec.shrink())
    klass = alph.klass
    out = UEAElement.zero(target)
    for w, cf in b.terms.items():
        tags = [klass[lid] for lid in w]
        if any(t in ("col", "shift") for t in tags):
            continue
        if any(t == "row" for t in tags):
            raise AssertionError("unbalanced row-n monomial in a weight-zero element")
        out = out + UEAElement.from_pairs(target, [alph.letters[lid] for lid in w], cf)
    return out


def hc_omega(a: UEAElement) -> MultiPoly:
    """Harish-Chandra projection of an h-centralizing element.

    Keeps the purely-Cartan monomials of the ``hc``-order normal form and
    maps them to polynomials: E[i,i] -> lam_i for gl; F[-i,-i] -> lam_i for
    the B/C/D families (so lam_i stores the coordinate of weight entry -i,
    and F[i,i] maps to -lam_i).
    """
    spec = a.alphabet.spec
    alph = hc_order(spec)
    for i in _cartan_indices(spec):
        if not commutator(a, _cartan_generator(a.alphabet, i)).is_zero:
            raise ValueError("element has nonzero weight; the projection is not defined")
    b = a.convert_to(alph)
    out = MultiPoly()
    klass = alph.klass
    for w, cf in b.terms.items():
        if any(klass[lid] != "cartan" for lid in w):
            continue
        mono = MP_ONE
        for lid in w:
            i, _ = alph.letters[lid]
            mono = mono * MultiPoly.variable(f"lam{abs(i)}")
        out = out + cf * mono
    return out


def highest_weight_eigenvalue(a: UEAElement, weight: Sequence) -> MultiPoly:
    """Eigenvalue of a weight-zero element on a highest weight vector.

    Equals the Harish-Chandra image evaluated at the weight; entry k of
    ``weight`` is lam_{k+1} (the coordinate at index -(k+1) for B/C/D).
    """
    f = hc_omega(a)
    subs = {f"lam{k + 1}": as_poly(v) for k, v in enumerate(weight)}
    return f.substitute(subs)


def generator_matrix_power(alphabet: Alphabet, M: int) -> dict:
    """Entries of the M-th power of the generator matrix (E or F)."""
    if M in alphabet._matpow:
        return alphabet._matpow[M]
    idx = alphabet.spec.index_set()
    if M == 0:
        out = {
            (i, j): (UEAElement.one(alphabet) if i == j else UEAElement.zero(alphabet))
            for i in idx
            for j in idx
        }
    elif M == 1:
        out = {(i, j): UEAElement.generator(alphabet, i, j) for i in idx for j in idx}
    else:
        prev = generator_matrix_power(alphabet, M - 1)
        gens = generator_matrix_power(alphabet, 1)
        out = {}
        for i in idx:
            for j in idx:
                acc = UEAElement.zero(alphabet)
                for a in idx:
                    acc = acc + prev[(i, a)] * gens[(a, j)]
                out[(i, j)] = acc
    alphabet._matpow[M] = out
    return out


def gelfand_invariant(spec: AlgebraSpec, M: int, alphabet: Alphabet | None = None) -> UEAElement:
    """Trace of the M-th power of the generator matrix; central in U(g)."""
    if M < 1:
        raise ValueError("the invariant is defined for M >= 1")
    alph = alphabet or hc_order(spec)
    power = generator_matrix_power(alph, M)
    out = UEAElement.zero(alph)
    for i in spec.index_set():
        out = out + power[(i, i)]
    return out


def centralizer_check(a: UEAElement, m: int) -> bool:
    """Does `a` commute with every basis element of g_m(n)?"""
    spec = a.alphabet.spec
    for i, j in canonical_pairs(spec):
        if min(abs(i), abs(j)) <= m:
            continue
        if not commutator(a, UEAElement.generator(a.alphabet, i, j)).is_zero:
            return False
    return True


def top_symbol(a: UEAElement) -> MultiPoly:
    """Image of the top filtration component in the symmetric algebra."""
    if a.is_zero:
        return MultiPoly()
    d = a.degree()
    out = MultiPoly()
    for w, cf in a.terms.items():
        if len(w) != d:
            continue
        mono = MP_ONE
        for lid in w:
            i, j = a.alphabet.letters[lid]
            mono = mono * MultiPoly.variable(coord_name(i, j))
        out = out + cf * mono
    return out
