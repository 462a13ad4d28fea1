"""Tractable star fragments: powers of x1*, letter stars, and plane stars.

Three families of rational series are represented exactly:

* :class:`X1StarPoly` - finite combinations sum_k c_k (k x1)* with
  (0 x1)* = 1.  This fragment hosts the non-positive-index polylogarithms
  computed in :mod:`polylog.negindex`.
* :class:`LetterStarForm` - letter stars (a x0 + b x1)* whose polylogarithm
  is the closed form z^a (1-z)^(-b).
* :class:`PlaneStar` - Kleene stars (sum_s alpha_s y_s)* of degree-one
  Y-elements.  Under stuffle these form a commutative group whose law acts
  coefficientwise: c_n = alpha_n + beta_n + sum_{i+j=n} alpha_i beta_j.

Star objects are exact and finite; anything that expands a star into words
takes an explicit cap.
"""

from __future__ import annotations

import cmath
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .coding import PlaneStarBase, QSeriesTrunc, pi_y, q_exp_m1, q_scale, umbra_to_plane
from .nc_core import NCPoly, RatLike, Word, X, X1, Y, ZERO, as_rat
from .products import exp_stuffle, shuffle_pow


class X1StarPoly:
    """A finite combination sum_k c_k (k x1)*, k >= 0, with (0 x1)* = 1.

    Canonical form stores no zero coefficients.  The fragment is closed under
    shuffle: (j x1)* sh (k x1)* = ((j+k) x1)*.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[int, RatLike] | Iterable[tuple[int, RatLike]] | None = None):
        data: dict[int, Fraction] = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for k, c in items:
                if k < 0:
                    raise ValueError(f"star orders must be >= 0, got {k}")
                c = as_rat(c)
                if c:
                    acc = data.get(k, ZERO) + c
                    if acc:
                        data[k] = acc
                    else:
                        data.pop(k, None)
        self._terms = data

    @classmethod
    def star(cls, k: int, coeff: RatLike = 1) -> "X1StarPoly":
        return cls({k: coeff})

    def coeff(self, k: int) -> Fraction:
        return self._terms.get(k, ZERO)

    def items(self) -> list[tuple[int, Fraction]]:
        """Terms ordered by descending star order."""
        return sorted(self._terms.items(), key=lambda kv: -kv[0])

    @property
    def max_order(self) -> int:
        return max(self._terms, default=0)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __add__(self, other: "X1StarPoly") -> "X1StarPoly":
        data = dict(self._terms)
        for k, c in other._terms.items():
            acc = data.get(k, ZERO) + c
            if acc:
                data[k] = acc
            else:
                data.pop(k, None)
        out = X1StarPoly.__new__(X1StarPoly)
        out._terms = data
        return out

    def __sub__(self, other: "X1StarPoly") -> "X1StarPoly":
        return self + (-other)

    def __neg__(self) -> "X1StarPoly":
        out = X1StarPoly.__new__(X1StarPoly)
        out._terms = {k: -c for k, c in self._terms.items()}
        return out

    def __mul__(self, scalar: RatLike) -> "X1StarPoly":
        c = as_rat(scalar)
        out = X1StarPoly.__new__(X1StarPoly)
        out._terms = {} if not c else {k: c * ck for k, ck in self._terms.items()}
        return out

    __rmul__ = __mul__

    def shuffle(self, other: "X1StarPoly") -> "X1StarPoly":
        """Shuffle product inside the fragment: convolution on star orders."""
        acc: dict[int, Fraction] = {}
        for j, cj in self._terms.items():
            for k, ck in other._terms.items():
                key = j + k
                acc[key] = acc.get(key, ZERO) + cj * ck
        return X1StarPoly(acc)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, X1StarPoly):
            return NotImplemented
        return self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for k, c in self.items():
            body = f"star({k})" if k > 0 else "1"
            if k == 0:
                frag = str(c)
            elif c == 1:
                frag = body
            elif c == -1:
                frag = f"-{body}"
            else:
                frag = f"{c}*{body}"
            if not parts:
                parts.append(frag)
            elif frag.startswith("-"):
                parts.append(f"- {frag[1:]}")
            else:
                parts.append(f"+ {frag}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"X1StarPoly({self!s})"


def x1star_expand(k: int, len_cap: int) -> NCPoly:
    """Truncated expansion of (k x1)*: sum_{n<=cap} k^n x1^n."""
    if k < 0:
        raise ValueError(f"star order must be >= 0, got {k}")
    if k == 0:
        return NCPoly.one(X)
    terms = {Word((X1,) * n, X): Fraction(k) ** n for n in range(len_cap + 1)}
    return NCPoly(X, terms)


def x1star_poly_expand(s: X1StarPoly, len_cap: int) -> NCPoly:
    """Truncated expansion of a star combination into x1-power words."""
    out = NCPoly.zero(X)
    for k, c in s.items():
        out = out + x1star_expand(k, len_cap) * c
    return out


def x1star_y_expansion(s: X1StarPoly, depth_cap: int) -> NCPoly:
    """Y-side expansion (words y1^n) of a star combination, up to depth cap."""
    return pi_y(x1star_poly_expand(s, depth_cap))


def check_kstar_shuffle_power(k: int, len_cap: int) -> bool:
    """Check (k x1)* = (x1*)^(sh k) on words of length <= cap."""
    if k < 1:
        raise ValueError(f"needs k >= 1, got {k}")
    lhs = x1star_expand(k, len_cap)
    rhs = shuffle_pow(x1star_expand(1, len_cap), k).truncated(len_cap)
    return lhs == rhs


@dataclass(frozen=True, slots=True)
class PlaneStar:
    """The Kleene star (sum_s alpha_s y_s)* of a degree-one Y-element.

    ``alpha[i]`` is the coefficient of y_(i+1); the sequence length is the
    explicit S_max.  Stuffle products extend S_max additively.
    """

    alpha: tuple[Fraction, ...]

    @classmethod
    def make(cls, alpha) -> "PlaneStar":
        return cls(tuple(as_rat(a) for a in alpha))

    @property
    def s_max(self) -> int:
        return len(self.alpha)

    def coeff(self, s: int) -> Fraction:
        if s < 1:
            raise ValueError("plane coefficients are indexed from 1")
        if s > len(self.alpha):
            return ZERO
        return self.alpha[s - 1]

    def padded(self, s_max: int) -> "PlaneStar":
        if s_max < len(self.alpha):
            raise ValueError("padded() cannot drop coefficients; use truncated()")
        return PlaneStar(self.alpha + (ZERO,) * (s_max - len(self.alpha)))

    def truncated(self, s_max: int) -> "PlaneStar":
        return PlaneStar(self.alpha[:s_max])

    def __str__(self) -> str:
        return "[" + ",".join(str(a) for a in self.alpha) + "]*"


def plane_star_stuffle(a: PlaneStar, b: PlaneStar) -> PlaneStar:
    """Group law on plane stars: c_n = a_n + b_n + sum_{i+j=n} a_i b_j.

    The result carries S_max = a.s_max + b.s_max so no cross term is lost.
    """
    s_max = a.s_max + b.s_max
    coeffs = []
    for n in range(1, s_max + 1):
        c = a.coeff(n) + b.coeff(n)
        for i in range(max(1, n - b.s_max), min(a.s_max, n - 1) + 1):
            c += a.coeff(i) * b.coeff(n - i)
        coeffs.append(c)
    return PlaneStar(tuple(coeffs))


def plane_star_inverse(a: PlaneStar, s_max: int) -> PlaneStar:
    """Stuffle-group inverse, solved degree by degree to order s_max.

    In the umbral coding the law reads (1+S)(1+T) = 1, so
    t_n = -(s_n + sum_{i<n} s_i t_{n-i}).
    """
    t: list[Fraction] = []
    for n in range(1, s_max + 1):
        c = a.coeff(n)
        for i in range(1, n):
            c += a.coeff(i) * t[n - i - 1]
        t.append(-c)
    return PlaneStar(tuple(t))


def plane_element_poly(base: PlaneStarBase | PlaneStar) -> NCPoly:
    """The degree-one Y-polynomial sum_s alpha_s y_s (the starred element)."""
    alpha = base.alpha if isinstance(base, PlaneStar) else tuple(base)
    return NCPoly(Y, {Word((s,), Y): alpha[s - 1] for s in range(1, len(alpha) + 1)})


def plane_star_expand(a: PlaneStar, weight_cap: int) -> NCPoly:
    """All words y_{s1}...y_{sr} of weight <= cap with coefficient prod alpha_{s_i}."""
    letters = [(s, a.coeff(s)) for s in range(1, min(a.s_max, weight_cap) + 1) if a.coeff(s)]
    terms: dict[Word, Fraction] = {Word((), Y): Fraction(1)}
    frontier: list[tuple[tuple[int, ...], Fraction]] = [((), Fraction(1))]
    while frontier:
        new_frontier: list[tuple[tuple[int, ...], Fraction]] = []
        for word, coeff in frontier:
            budget = weight_cap - sum(word)
            for s, alpha_s in letters:
                if s > budget:
                    break
                ext = word + (s,)
                c = coeff * alpha_s
                new_frontier.append((ext, c))
                key = Word(ext, Y)
                terms[key] = terms.get(key, ZERO) + c
        frontier = new_frontier
    return NCPoly(Y, terms)


def one_param_group(t: QSeriesTrunc, z: RatLike, weight_cap: int) -> NCPoly:
    """Expansion of G(z) = (umbral image of exp(z T) - 1)*, to weight <= cap.

    G is a one-parameter group for the stuffle: G(z1) st G(z2) = G(z1+z2)
    and G(0) = 1; every word coefficient is polynomial in z.
    """
    series = q_exp_m1(q_scale(as_rat(z), t), weight_cap)
    return plane_star_expand(PlaneStar(umbra_to_plane(series)), weight_cap)


def ykstar_exp_identity(k: int, z: RatLike, weight_cap: int) -> bool:
    """Check (z y_k)* = exp_st(-sum_{n>=1} y_{nk} (-z)^n / n) up to the cap."""
    if k < 1:
        raise ValueError(f"needs k >= 1, got {k}")
    z = as_rat(z)
    lhs_terms = {
        Word((k,) * n, Y): z**n for n in range(weight_cap // k + 1)
    }
    lhs = NCPoly(Y, lhs_terms)
    arg = NCPoly(
        Y,
        {
            Word((n * k,), Y): -((-z) ** n) * Fraction(1, n)
            for n in range(1, weight_cap // k + 1)
        },
    )
    rhs = exp_stuffle(arg, weight_cap)
    return lhs == rhs


@dataclass(frozen=True, slots=True)
class LetterStarForm:
    """Closed form z^alpha (1-z)^(-beta) of the letter star (a x0 + b x1)*."""

    alpha: Fraction
    beta: Fraction

    def eval(self, z: complex) -> complex:
        """Evaluate at complex z off the cuts (principal branches)."""
        z = complex(z)
        if z == 0:
            if self.alpha == 0:
                first = 1.0 + 0.0j
            elif self.alpha > 0:
                first = 0.0 + 0.0j
            else:
                raise ZeroDivisionError("z^alpha with alpha < 0 at z = 0")
        else:
            first = cmath.exp(float(self.alpha) * cmath.log(z))
        if z == 1:
            if self.beta == 0:
                second = 1.0 + 0.0j
            elif self.beta < 0:
                second = 0.0 + 0.0j
            else:
                raise ZeroDivisionError("(1-z)^(-beta) with beta > 0 at z = 1")
        else:
            second = cmath.exp(-float(self.beta) * cmath.log(1 - z))
        return first * second


def letter_star_li(alpha: RatLike, beta: RatLike) -> LetterStarForm:
    """Closed-form descriptor for the polylogarithm of (a x0 + b x1)*."""
    return LetterStarForm(as_rat(alpha), as_rat(beta))
