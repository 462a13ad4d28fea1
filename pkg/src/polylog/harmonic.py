"""Exact harmonic sums for words, signed indices, polynomials, and stars.

The harmonic sum of a Y-word y_{s1}...y_{sr} at N is the nested sum
sum_{N >= n1 > ... > nr > 0} prod n_i^(-s_i); the same formula with signed
exponents (non-positive entries turn reciprocals into powers) serves as the
universal brute-force oracle of this package.  Both are evaluated through
the prefix recurrence

    H_s(N) = H_s(N-1) + N^(-s1) H_(s2..sr)(N-1),

O(r N) exact operations instead of r nested loops.  :func:`h_word_eval` and
:func:`h_signed_eval` stream with O(r) memory; the table variants memoize
whole columns keyed by suffix, which the identity checkers lean on heavily.

Star combinations sum_k c_k (k x1)* have polynomial harmonic sums:
H of (k x1)* at N is binomial(N+k, k), so the closed form is an exact
polynomial in N (:class:`NPoly`).  Composed with the rational-function
pipeline of :mod:`polylog.negindex`, this yields Faulhaber-style closed
forms for every non-positive multi-index.

Caches here are read-mostly and copy-on-extend: a racing thread can at worst
duplicate work, never observe a partial value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Iterable, Mapping, Sequence

from .nc_core import AlphabetError, NCPoly, RatLike, Word, Y, ZERO, ONE, as_rat
from .negindex import li_nonpositive, ratfunc_to_x1star
from .products import stuffle
from .stars import X1StarPoly, x1star_y_expansion

#: A signed multi-index: positive entries are reciprocal exponents,
#: non-positive entries are power weights.
SignedIndex = tuple[int, ...]


class NPoly:
    """A dense polynomial in N with exact rational coefficients.

    ``coeffs[j]`` is the coefficient of N^j; trailing zeros are trimmed so
    equality is coefficientwise.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[RatLike] = ()) -> None:
        data = [as_rat(c) for c in coeffs]
        while data and not data[-1]:
            data.pop()
        self.coeffs = tuple(data)

    @classmethod
    def from_monomials(cls, monomials: Mapping[int, RatLike]) -> "NPoly":
        """Build from a {degree: coefficient} mapping."""
        if not monomials:
            return cls()
        top = max(monomials)
        data = [ZERO] * (top + 1)
        for deg, c in monomials.items():
            data[deg] = as_rat(c)
        return cls(data)

    @property
    def degree(self) -> int:
        """Degree, with the zero polynomial reported as degree -1."""
        return len(self.coeffs) - 1

    def eval(self, n: int) -> Fraction:
        out = ZERO
        for c in reversed(self.coeffs):
            out = out * n + c
        return out

    def __add__(self, other: "NPoly") -> "NPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        data = list(a)
        for i, c in enumerate(b):
            data[i] += c
        return NPoly(data)

    def __neg__(self) -> "NPoly":
        return NPoly([-c for c in self.coeffs])

    def __sub__(self, other: "NPoly") -> "NPoly":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, NPoly):
            if not self.coeffs or not other.coeffs:
                return NPoly()
            data = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
            for i, a in enumerate(self.coeffs):
                if not a:
                    continue
                for j, b in enumerate(other.coeffs):
                    if b:
                        data[i + j] += a * b
            return NPoly(data)
        return NPoly([as_rat(other) * c for c in self.coeffs])

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    __hash__ = None  # type: ignore[assignment]

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def to_json_dict(self) -> dict:
        return {"coeffs": [str(c) for c in self.coeffs]}

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for j in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[j]
            if not c:
                continue
            if j == 0:
                body = str(c)
            else:
                var = "N" if j == 1 else f"N^{j}"
                body = var if c == 1 else (f"-{var}" if c == -1 else f"{c}*{var}")
            parts.append(body)
        out = " + ".join(parts).replace("+ -", "- ")
        return out

    def __repr__(self) -> str:
        return f"NPoly({self!s})"


def _power_term(n: int, s: int) -> Fraction:
    """n^(-s) as an exact rational for any integer s."""
    return Fraction(1, n**s) if s > 0 else Fraction(n ** (-s))


def _h_stream(index: SignedIndex, n_max: int) -> Fraction:
    """H at a single N with O(r) memory (used for large N)."""
    r = len(index)
    if r == 0:
        return ONE
    # state[j] = H of the suffix starting at position j, at the current n
    state = [ZERO] * r + [ONE]
    for n in range(1, n_max + 1):
        for j in range(r):
            state[j] = state[j] + _power_term(n, index[j]) * state[j + 1]
        # the unit suffix stays 1
    return state[0]


_HVEC_CACHE: dict[SignedIndex, list[Fraction]] = {}


def _h_vector(index: SignedIndex, n_max: int) -> list[Fraction]:
    """Cached column [H_index(0), ..., H_index(n_max)], copy-on-extend."""
    vec = _HVEC_CACHE.get(index)
    if vec is not None and len(vec) > n_max:
        return vec
    if not index:
        vec = [ONE] * (n_max + 1)
        _HVEC_CACHE[index] = vec
        return vec
    sub = _h_vector(index[1:], max(n_max - 1, 0))
    new = list(vec) if vec is not None else [ZERO]
    s = index[0]
    for n in range(len(new), n_max + 1):
        new.append(new[n - 1] + _power_term(n, s) * sub[n - 1])
    _HVEC_CACHE[index] = new
    return new


def h_word_eval(w: Word, n: int) -> Fraction:
    """Exact H_w(N) for a Y-word; 1 on the empty word, 0 when N < depth."""
    if w.alphabet != Y:
        raise AlphabetError("harmonic sums are indexed by Y-words")
    if n < 0:
        raise ValueError("N must be a natural number")
    return _h_stream(w.letters, n)


def h_signed_eval(s: Sequence[int], n: int) -> Fraction:
    """Brute-force oracle: the nested sum with arbitrary integer exponents."""
    if n < 0:
        raise ValueError("N must be a natural number")
    return _h_stream(tuple(s), n)


def h_signed_table(s: Sequence[int], n_max: int) -> list[Fraction]:
    """Oracle values [H_s(0), ..., H_s(n_max)] in one streaming pass."""
    index = tuple(s)
    r = len(index)
    if r == 0:
        return [ONE] * (n_max + 1)
    state = [ZERO] * r + [ONE]
    out = [ZERO]
    for n in range(1, n_max + 1):
        for j in range(r):
            state[j] = state[j] + _power_term(n, index[j]) * state[j + 1]
        out.append(state[0])
    return out


def h_word_table(w: Word, n_max: int) -> list[Fraction]:
    """Cached values [H_w(0), ..., H_w(n_max)] for a Y-word."""
    if w.alphabet != Y:
        raise AlphabetError("harmonic sums are indexed by Y-words")
    return _h_vector(w.letters, n_max)[: n_max + 1]


def h_poly_eval(q: NCPoly, n: int) -> Fraction:
    """Linear extension sum_w <Q|w> H_w(N) over a Y-polynomial."""
    return h_poly_table(q, n)[n]


def h_poly_table(q: NCPoly, n_max: int) -> list[Fraction]:
    """Values of the linear extension for N = 0..n_max, suffix-memoized."""
    if q.alphabet != Y:
        raise AlphabetError("harmonic sums are indexed by Y-polynomials")
    out = [ZERO] * (n_max + 1)
    for w, c in q.items():
        vec = _h_vector(w.letters, n_max)
        for n in range(n_max + 1):
            out[n] += c * vec[n]
    return out


def _binomial_npoly(k: int) -> NPoly:
    """binomial(N+k, k) = prod_{i=1..k} (N+i) / k! as an exact NPoly."""
    poly = NPoly([1])
    for i in range(1, k + 1):
        poly = poly * NPoly([i, 1])
    return poly * Fraction(1, factorial(k))


def h_x1star_closed_form(s: X1StarPoly) -> NPoly:
    """Polynomial N -> H of a star combination, via H of (k x1)* = C(N+k, k)."""
    out = NPoly()
    for k, c in s.items():
        out = out + c * _binomial_npoly(k)
    return out


def h_negindex_closed_form(s: Sequence[int]) -> NPoly:
    """Faulhaber-style closed form of the nested power sum for indices <= 0."""
    return h_x1star_closed_form(ratfunc_to_x1star(li_nonpositive(s)))


def h_stuffle_check(u: Word, v: Word, n_max: int) -> bool:
    """Exact character check H_{u st v}(N) = H_u(N) H_v(N) for N <= n_max."""
    product = stuffle(NCPoly.from_word(u), NCPoly.from_word(v))
    lhs = h_poly_table(product, n_max)
    hu = h_word_table(u, n_max)
    hv = h_word_table(v, n_max)
    return all(lhs[n] == hu[n] * hv[n] for n in range(n_max + 1))


# -- the mixed-index identity table ----------------------------------------


@dataclass(frozen=True, slots=True)
class IdentityReport:
    """Outcome of one mixed-index identity check."""

    name: str
    passed: bool
    first_failure_n: int | None = None

    def to_json_dict(self) -> dict:
        return {
            "identity": self.name,
            "status": "pass" if self.passed else "fail",
            "first_failure_N": self.first_failure_n,
        }


def _star(terms: Mapping[int, RatLike]) -> X1StarPoly:
    return X1StarPoly(terms)


# Star combinations whose harmonic sums are the plain nested power sums.
POWER_SUM_STARS: dict[tuple[int, ...], X1StarPoly] = {
    (0,): _star({1: 1, 0: -1}),
    (-1,): _star({2: 1, 1: -1}),
    (-2,): _star({3: 2, 2: -3, 1: 1}),
    (-2, -2): _star({6: 40, 5: -132, 4: 161, 3: -87, 2: 19, 1: -1}),
}

# Each identity equates an exactly computable combination (closed forms,
# harmonic numbers, or a stuffle against a star expansion) with a
# brute-force nested sum.  Terms on either side are (coefficient, kind,
# payload) with kinds:
#   "star"    - X1StarPoly, evaluated through its closed-form polynomial
#   "word"    - Y-word, evaluated through the harmonic-sum table
#   "stuffle" - (s, X1StarPoly): y_s stuffled against the star's Y-expansion
#   "oracle"  - signed index, evaluated by the brute-force nested sum
_Term = tuple[Fraction, str, object]


def _mixed_identity_table() -> list[tuple[str, list[_Term], tuple[int, ...]]]:
    one = Fraction(1)
    f = Fraction
    return [
        (
            "sum 1/n1 sum n2",
            [(one, "star", _star({2: f(1, 2), 1: -1, 0: f(1, 2)}))],
            (1, -1),
        ),
        (
            "sum n1 sum 1/n2",
            [
                (one, "stuffle", (1, POWER_SUM_STARS[(-1,)])),
                (f(-1, 2), "star", _star({2: 1, 0: -1})),
            ],
            (-1, 1),
        ),
        (
            "sum 1/n1 sum n2^2",
            [(one, "star", _star({3: f(2, 3), 2: f(-3, 2), 1: 1, 0: f(-1, 6)}))],
            (1, -2),
        ),
        (
            "sum n1^2 sum 1/n2",
            [
                (one, "stuffle", (1, POWER_SUM_STARS[(-2,)])),
                (-one, "star", _star({3: f(2, 3), 2: f(-1, 2), 0: f(-1, 6)})),
            ],
            (-2, 1),
        ),
        (
            "sum 1/n1^2 sum n2^2",
            [
                (one, "star", _star({2: f(1, 3), 1: f(-5, 6), 0: f(1, 2)})),
                (f(1, 6), "word", Word((1,), Y)),
            ],
            (2, -2),
        ),
        (
            "sum n1^2 sum 1/n2^2",
            [
                (one, "stuffle", (2, POWER_SUM_STARS[(-2,)])),
                (-one, "star", _star({2: f(1, 3), 1: f(1, 6), 0: f(-1, 2)})),
                (f(-1, 6), "word", Word((1,), Y)),
            ],
            (-2, 2),
        ),
        (
            "sum 1/n1 sum n2^2 sum n3^2",
            # Derived constructively; see the closed-form pipeline tests.
            [
                (
                    one,
                    "star",
                    _star(
                        {
                            6: f(20, 3),
                            5: f(-132, 5),
                            4: f(161, 4),
                            3: -29,
                            2: f(19, 2),
                            1: -1,
                            0: f(-1, 60),
                        }
                    ),
                )
            ],
            (1, -2, -2),
        ),
        (
            "sum n1^2 sum 1/n2 sum n3^2",
            [
                (
                    one,
                    "star",
                    _star(
                        {
                            6: f(40, 3),
                            5: -50,
                            4: f(427, 6),
                            3: f(-281, 6),
                            2: f(27, 2),
                            1: f(-7, 6),
                        }
                    ),
                )
            ],
            (-2, 1, -2),
        ),
        (
            "sum n1^2 sum n2^2 sum 1/n3",
            [
                (one, "stuffle", (1, POWER_SUM_STARS[(-2, -2)])),
                (-one, "oracle", (-2, 1, -2)),
                (-one, "oracle", (1, -2, -2)),
                (-one, "oracle", (-2, -1)),
                (-one, "oracle", (-1, -2)),
            ],
            (-2, -2, 1),
        ),
    ]


def _eval_term_table(term: _Term, n_max: int) -> list[Fraction]:
    coeff, kind, payload = term
    if kind == "star":
        poly = h_x1star_closed_form(payload)
        return [coeff * poly.eval(n) for n in range(n_max + 1)]
    if kind == "word":
        vec = h_word_table(payload, n_max)
        return [coeff * v for v in vec]
    if kind == "stuffle":
        s, star = payload
        # H_w(N) vanishes when depth(w) > N, so expanding the star to depth
        # n_max keeps every contributing word and the check stays exact.
        image = x1star_y_expansion(star, n_max)
        product = stuffle(NCPoly.from_word(Word((s,), Y)), image)
        vec = h_poly_table(product, n_max)
        return [coeff * v for v in vec]
    if kind == "oracle":
        vec = h_signed_table(payload, n_max)
        return [coeff * v for v in vec]
    raise ValueError(f"unknown term kind {kind!r}")


def verify_mixed_examples(n_max: int) -> list[IdentityReport]:
    """Check every mixed-index identity exactly for N = 0..n_max."""
    reports = []
    for name, lhs_terms, oracle_index in _mixed_identity_table():
        lhs = [ZERO] * (n_max + 1)
        for term in lhs_terms:
            vec = _eval_term_table(term, n_max)
            for n in range(n_max + 1):
                lhs[n] += vec[n]
        rhs = h_signed_table(oracle_index, n_max)
        failure = next((n for n in range(n_max + 1) if lhs[n] != rhs[n]), None)
        reports.append(IdentityReport(name, failure is None, failure))
    return reports
