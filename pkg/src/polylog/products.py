"""Concatenation, shuffle, and stuffle products with powers and exponentials.

The three products are bilinear extensions of their word-level recursions:

* concatenation: juxtaposition of words;
* shuffle: a u <sh> b v = a(u <sh> b v) + b(a u <sh> v), defined over either
  alphabet;
* stuffle: y_s u <st> y_t v = y_s(u <st> y_t v) + y_t(y_s u <st> v)
  + y_{s+t}(u <st> v), defined over Y only.

Word-level products have integer structure constants and are memoized; the
caches are read-mostly and behave as if absent (recomputation is the only
cost of a race), so everything here stays safe for concurrent use.

Both shuffle and stuffle are commutative and associative with the empty word
as unit; stuffle is graded by weight.  The stuffle exponential of a
constant-free polynomial is computed under an explicit weight cap: no
operation in this package truncates silently.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .nc_core import AlphabetError, NCPoly, Word, Y, ZERO

Letters = tuple[int, ...]


@lru_cache(maxsize=None)
def _shuffle_letters(u: Letters, v: Letters) -> dict[Letters, int]:
    if not u:
        return {v: 1}
    if not v:
        return {u: 1}
    out: dict[Letters, int] = {}
    for w, c in _shuffle_letters(u[1:], v).items():
        key = (u[0],) + w
        out[key] = out.get(key, 0) + c
    for w, c in _shuffle_letters(u, v[1:]).items():
        key = (v[0],) + w
        out[key] = out.get(key, 0) + c
    return out


@lru_cache(maxsize=None)
def _stuffle_letters(u: Letters, v: Letters) -> dict[Letters, int]:
    if not u:
        return {v: 1}
    if not v:
        return {u: 1}
    out: dict[Letters, int] = {}
    for w, c in _stuffle_letters(u[1:], v).items():
        key = (u[0],) + w
        out[key] = out.get(key, 0) + c
    for w, c in _stuffle_letters(u, v[1:]).items():
        key = (v[0],) + w
        out[key] = out.get(key, 0) + c
    for w, c in _stuffle_letters(u[1:], v[1:]).items():
        key = (u[0] + v[0],) + w
        out[key] = out.get(key, 0) + c
    return out


def _bilinear(p: NCPoly, q: NCPoly, word_product) -> NCPoly:
    alphabet = p.alphabet
    acc: dict[Letters, Fraction] = {}
    for u, cu in p.items():
        for v, cv in q.items():
            c = cu * cv
            # structure constants are symmetric; canonical order keys the memo
            a, b = (u.letters, v.letters)
            if b < a:
                a, b = b, a
            for letters, k in word_product(a, b).items():
                old = acc.get(letters, ZERO)
                new = old + c * k
                if new:
                    acc[letters] = new
                else:
                    acc.pop(letters, None)
    return NCPoly(alphabet, {Word(l, alphabet): c for l, c in acc.items()})


def conc(p: NCPoly, q: NCPoly) -> NCPoly:
    """Concatenation product, extended bilinearly from words."""
    if p.alphabet != q.alphabet:
        raise AlphabetError(f"alphabet mismatch: {p.alphabet} vs {q.alphabet}")
    alphabet = p.alphabet
    acc: dict[Word, Fraction] = {}
    for u, cu in p.items():
        for v, cv in q.items():
            w = u.concat(v)
            old = acc.get(w, ZERO)
            new = old + cu * cv
            if new:
                acc[w] = new
            else:
                acc.pop(w, None)
    return NCPoly(alphabet, acc)


def shuffle(p: NCPoly, q: NCPoly) -> NCPoly:
    """Shuffle product on X- or Y-polynomials (matching alphabets)."""
    if p.alphabet != q.alphabet:
        raise AlphabetError(f"alphabet mismatch: {p.alphabet} vs {q.alphabet}")
    return _bilinear(p, q, _shuffle_letters)


def stuffle(p: NCPoly, q: NCPoly) -> NCPoly:
    """Stuffle (quasi-shuffle) product; both operands must be Y-polynomials."""
    if p.alphabet != Y or q.alphabet != Y:
        raise AlphabetError("stuffle is defined on Y-polynomials only")
    return _bilinear(p, q, _stuffle_letters)


def shuffle_pow(p: NCPoly, k: int) -> NCPoly:
    """k-fold shuffle power; k = 0 gives the unit."""
    if k < 0:
        raise ValueError(f"shuffle power needs k >= 0, got {k}")
    out = NCPoly.one(p.alphabet)
    for _ in range(k):
        out = shuffle(out, p)
    return out


def stuffle_pow(p: NCPoly, k: int) -> NCPoly:
    """k-fold stuffle power; k = 0 gives the unit."""
    if k < 0:
        raise ValueError(f"stuffle power needs k >= 0, got {k}")
    if p.alphabet != Y:
        raise AlphabetError("stuffle is defined on Y-polynomials only")
    out = NCPoly.one(Y)
    for _ in range(k):
        out = stuffle(out, p)
    return out


def exp_stuffle(p: NCPoly, weight_cap: int) -> NCPoly:
    """Stuffle exponential sum_n P^(st n)/n!, truncated to weight <= cap.

    P must have zero constant term; its stuffle powers then have minimum
    weight n, so the series is finite under the cap.
    """
    if p.alphabet != Y:
        raise AlphabetError("exp_stuffle is defined on Y-polynomials only")
    if p.constant_term != 0:
        raise ValueError("exp_stuffle needs a polynomial with zero constant term")
    if weight_cap < 0:
        raise ValueError(f"weight cap must be >= 0, got {weight_cap}")
    p = p.truncated(weight_cap)
    out = NCPoly.one(Y)
    term = NCPoly.one(Y)
    n = 0
    while term and n < weight_cap:
        n += 1
        term = stuffle(term, p).truncated(weight_cap) * Fraction(1, n)
        out = out + term
    return out
