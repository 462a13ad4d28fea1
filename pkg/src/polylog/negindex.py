"""Non-positive-index polylogarithms as exact rational functions.

For a multi-index (s1,...,sr) with every s_i <= 0, the polylogarithm
sum_{n1>...>nr>0} n1^(-s1)...nr^(-sr) z^(n1) is a rational function
p(z)/(1-z)^m with integer-friendly exact coefficients.  It is computed
right-to-left through the index list: starting from the constant 1, each
step multiplies by z/(1-z) (appending a 0 index) and then applies the Euler
operator theta = z d/dz |s_i| times.

:class:`RatFuncAtOne` is the canonical carrier: a dense numerator and a pole
order at z = 1, with (1-z) factors always divided out of the numerator so
equality is plain field-wise comparison.  When deg(num) <= pole order, the
function rewrites as sum_k c_k / (1-z)^k, i.e. as the star combination
sum_k c_k (k x1)* of :class:`polylog.stars.X1StarPoly` - that conversion and
its inverse live here too.

The module also hosts the trailing-x0 shuffle regularization: every
X-polynomial P decomposes uniquely as sum_k P_k sh x0^(sh k) with each P_k
ending in x1 (or constant).  The decomposition is computed by rewriting the
terms with maximal trailing-x0 count and strictly descending through the
levels, which terminates because every rewrite only creates words with
fewer trailing zeros.
"""

from __future__ import annotations

from fractions import Fraction
from math import comb, factorial
from typing import Sequence

from .nc_core import (
    AlphabetError,
    InvalidIndexError,
    NCPoly,
    PolylogError,
    RatLike,
    Word,
    X,
    X0,
    ZERO,
    ONE,
    as_rat,
)
from .products import shuffle
from .stars import X1StarPoly


class NotRepresentableError(PolylogError):
    """The rational function lies outside the star fragment C[x1*]."""


# -- dense polynomial helpers (coefficients ascending in z) ----------------


def _trim(p: list[Fraction]) -> tuple[Fraction, ...]:
    n = len(p)
    while n and not p[n - 1]:
        n -= 1
    return tuple(p[:n])


def _padd(p: Sequence[Fraction], q: Sequence[Fraction]) -> list[Fraction]:
    out = [ZERO] * max(len(p), len(q))
    for i, c in enumerate(p):
        out[i] += c
    for i, c in enumerate(q):
        out[i] += c
    return out


def _pmul(p: Sequence[Fraction], q: Sequence[Fraction]) -> list[Fraction]:
    if not p or not q:
        return []
    out = [ZERO] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if not a:
            continue
        for j, b in enumerate(q):
            if b:
                out[i + j] += a * b
    return out

def _pscale(c: Fraction, p: Sequence[Fraction]) -> list[Fraction]:
    return [c * a for a in p]


def _pderiv(p: Sequence[Fraction]) -> list[Fraction]:
    return [i * p[i] for i in range(1, len(p))]


def _peval(p: Sequence[Fraction], z):
    out = 0
    for c in reversed(list(p)):
        out = out * z + c
    return out


def _pdiv_one_minus_z(p: Sequence[Fraction]) -> list[Fraction]:
    # p = (1-z) q  <=>  q_i = p_i + q_{i-1}; requires p(1) = 0
    q: list[Fraction] = []
    run = ZERO
    for c in p[:-1] if p else []:
        run = run + c
        q.append(run)
    return q


class RatFuncAtOne:
    """A rational function p(z)/(1-z)^m with its only pole at z = 1.

    Canonical form: the numerator is trimmed and, whenever m > 0, not
    divisible by (1-z); the zero function has m = 0.
    """

    __slots__ = ("num", "pole_order")

    def __init__(self, num: Sequence[RatLike], pole_order: int) -> None:
        if pole_order < 0:
            raise ValueError(f"pole order must be >= 0, got {pole_order}")
        p = [as_rat(c) for c in num]
        p = list(_trim(p))
        while pole_order > 0 and p and _peval(p, 1) == 0:
            p = _pdiv_one_minus_z(p)
            p = list(_trim(p))
            pole_order -= 1
        if not p:
            pole_order = 0
        self.num = tuple(p)
        self.pole_order = pole_order

    @classmethod
    def constant(cls, c: RatLike) -> "RatFuncAtOne":
        return cls([as_rat(c)], 0)

    @property
    def is_zero(self) -> bool:
        return not self.num

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, RatFuncAtOne):
            return NotImplemented
        return self.num == other.num and self.pole_order == other.pole_order

    __hash__ = None  # type: ignore[assignment]

    def __add__(self, other: "RatFuncAtOne") -> "RatFuncAtOne":
        m = max(self.pole_order, other.pole_order)
        p = _pmul(self.num, _one_minus_z_pow(m - self.pole_order))
        q = _pmul(other.num, _one_minus_z_pow(m - other.pole_order))
        return RatFuncAtOne(_padd(p, q), m)

    def __neg__(self) -> "RatFuncAtOne":
        out = RatFuncAtOne.__new__(RatFuncAtOne)
        out.num = tuple(-c for c in self.num)
        out.pole_order = self.pole_order
        return out

    def __sub__(self, other: "RatFuncAtOne") -> "RatFuncAtOne":
        return self + (-other)

    def __mul__(self, other: "RatFuncAtOne") -> "RatFuncAtOne":
        return RatFuncAtOne(
            _pmul(self.num, other.num), self.pole_order + other.pole_order
        )

    def mul_z_over_one_minus_z(self) -> "RatFuncAtOne":
        """Multiply by z/(1-z): prepend a zero coefficient, bump the pole."""
        return RatFuncAtOne((ZERO,) + self.num, self.pole_order + 1)

    def eval(self, z):
        """Exact evaluation at a rational (or complex) z != 1."""
        denom = (1 - z) ** self.pole_order
        return _peval(self.num, z) / denom

    def taylor_coeffs(self, n_cap: int) -> list[Fraction]:
        """Exact Taylor coefficients a_0..a_{n_cap} at z = 0.

        Uses 1/(1-z)^m = sum_n C(n+m-1, m-1) z^n, independently of the
        harmonic-sum recurrences used elsewhere.
        """
        m = self.pole_order
        out = []
        for n in range(n_cap + 1):
            c = ZERO
            for j, pj in enumerate(self.num):
                if j > n:
                    break
                if not pj:
                    continue
                if m == 0:
                    if j == n:
                        c += pj
                else:
                    c += pj * comb(n - j + m - 1, m - 1)
            out.append(c)
        return out

    def to_json_dict(self) -> dict:
        return {"num": [str(c) for c in self.num], "pole_order": self.pole_order}

    def __str__(self) -> str:
        if not self.num:
            return "0"
        parts = []
        for i, c in enumerate(self.num):
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append(f"{c}*z" if c != 1 else "z")
            else:
                parts.append(f"{c}*z^{i}" if c != 1 else f"z^{i}")
        num = " + ".join(parts).replace("+ -", "- ")
        if self.pole_order == 0:
            return num
        return f"({num})/(1-z)^{self.pole_order}"

    def __repr__(self) -> str:
        return f"RatFuncAtOne({self!s})"


def _one_minus_z_pow(k: int) -> list[Fraction]:
    return [Fraction((-1) ** i) * comb(k, i) for i in range(k + 1)]


def theta_derivative(f: RatFuncAtOne) -> RatFuncAtOne:
    """The Euler operator z d/dz, exactly, re-canonicalized.

    For f = p/(1-z)^m: theta f = z (p'(1-z) + m p) / (1-z)^(m+1).
    """
    p = list(f.num)
    inner = _padd(_pmul(_pderiv(p), [ONE, -ONE]), _pscale(Fraction(f.pole_order), p))
    return RatFuncAtOne([ZERO] + inner, f.pole_order + 1)


def li_nonpositive(s: Sequence[int]) -> RatFuncAtOne:
    """Exact rational function of the polylogarithm at indices all <= 0.

    Computed right-to-left: F starts at the constant 1 and each index s_i
    applies F -> theta^(-s_i)( (z/(1-z)) F ).  The empty index gives 1.
    """
    for si in s:
        if si > 0:
            raise InvalidIndexError(
                f"li_nonpositive needs indices <= 0, got {si}; "
                "mixed signs are evaluated numerically, not in closed form"
            )
    f = RatFuncAtOne.constant(1)
    for si in reversed(list(s)):
        f = f.mul_z_over_one_minus_z()
        for _ in range(-si):
            f = theta_derivative(f)
    return f


def ratfunc_to_x1star(f: RatFuncAtOne) -> X1StarPoly:
    """Rewrite p(z)/(1-z)^m as sum_k c_k (k x1)* via Li_{(k x1)*} = (1-z)^(-k).

    Substituting u = 1-z expands p(1-u) = sum_j b_j u^j, so c_{m-j} = b_j.
    Needs deg p <= m; the outputs of :func:`li_nonpositive` always qualify.
    """
    m = f.pole_order
    if len(f.num) - 1 > m:
        raise NotRepresentableError(
            f"numerator degree {len(f.num) - 1} exceeds pole order {m}; "
            "the function is not a combination of (k x1)* stars"
        )
    terms: dict[int, Fraction] = {}
    for j in range(len(f.num)):
        b = ZERO
        for i in range(j, len(f.num)):
            if f.num[i]:
                b += f.num[i] * comb(i, j) * (-1) ** j
        if b:
            terms[m - j] = b
    return X1StarPoly(terms)


def x1star_to_ratfunc(s: X1StarPoly) -> RatFuncAtOne:
    """Evaluate sum_k c_k / (1-z)^k back into canonical rational form."""
    m = s.max_order
    num: list[Fraction] = []
    for k, c in s.items():
        num = _padd(num, _pscale(c, _one_minus_z_pow(m - k)))
    return RatFuncAtOne(num, m)


def regularize_trailing_x0(p: NCPoly) -> dict[int, NCPoly]:
    """Unique decomposition P = sum_k (result[k] sh x0^(sh k)).

    Each result[k] has all its words ending in x1 (or empty).  Terms whose
    trailing-x0 count j is maximal are rewritten through u sh x0^j, whose
    only j-trailing-zero word is u x0^j itself (coefficient 1); the
    corrections all strictly decrease the trailing count, so the levels are
    cleared from the top down.
    """
    if p.alphabet != X:
        raise AlphabetError("regularization acts on X-polynomials")
    parts: dict[int, NCPoly] = {}
    remainder = p
    while remainder:
        level = max(w.trailing_x0_count for w in remainder.support())
        if level == 0:
            parts[0] = parts.get(0, NCPoly.zero(X)) + remainder
            break
        stripped = NCPoly(
            X,
            [
                (Word(w.letters[: len(w) - level], X), c)
                for w, c in remainder.items()
                if w.trailing_x0_count == level
            ],
        )
        parts[level] = stripped * Fraction(1, factorial(level))
        x0_pow = NCPoly.from_word(Word((X0,) * level, X))
        remainder = remainder - shuffle(stripped, x0_pow)
    return {k: q for k, q in parts.items() if q}
