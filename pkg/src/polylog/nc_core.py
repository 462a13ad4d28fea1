"""Exact noncommutative polynomials over the two-letter and indexed alphabets.

Two alphabets are supported:

* ``"X"``: the letters x0 and x1, stored as the integers 0 and 1.  Words over
  X are graded by length.
* ``"Y"``: letters y_s indexed by an integer s >= 1, stored as s.  Words over
  Y are graded by weight (the sum of the indices).

A :class:`Word` is an immutable sequence of letters tagged with its alphabet;
the empty word is the multiplicative unit.  An :class:`NCPoly` is a finite
linear combination of words with exact rational coefficients
(``fractions.Fraction``), kept in canonical form: no zero coefficient is ever
stored, and all words share the polynomial's alphabet.

Every value in this module is immutable after construction and all operations
are pure functions, so values can be shared freely between threads.

The canonical text syntax (used by the CLI and for JSON output) writes X-words
as bitstrings over {0,1} ("01" is x0x1), Y-words as comma-joined indices
("2,1" is y2y1), and rationals as "p/q" or a bare integer.  The empty word
serializes as "".
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence, Union

X = "X"
Y = "Y"
X0 = 0
X1 = 1

RatLike = Union[Fraction, int, str]

ZERO = Fraction(0)
ONE = Fraction(1)


class PolylogError(Exception):
    """Base class for all errors raised by this package."""


class AlphabetError(PolylogError):
    """Operands or letters do not belong to the expected alphabet."""


class InvalidIndexError(PolylogError):
    """A multi-index entry is outside the domain of the word coding."""


class NotInImageError(PolylogError):
    """A word lies outside the image of the coding being inverted."""


def as_rat(value: RatLike) -> Fraction:
    """Coerce an int, Fraction, or "p/q" string to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def _check_alphabet(alphabet: str) -> None:
    if alphabet not in (X, Y):
        raise AlphabetError(f"unknown alphabet {alphabet!r}; expected 'X' or 'Y'")


@dataclass(frozen=True, slots=True)
class Word:
    """An immutable word over the X or Y alphabet.

    ``letters`` holds 0/1 values for the X alphabet and indices s >= 1 for
    the Y alphabet.  The empty tuple is the unit word of either alphabet.
    """

    letters: tuple[int, ...]
    alphabet: str = X

    def __post_init__(self) -> None:
        _check_alphabet(self.alphabet)
        if self.alphabet == X:
            if any(b not in (0, 1) for b in self.letters):
                raise AlphabetError(f"X-word letters must be 0 or 1, got {self.letters}")
        else:
            if any(s < 1 for s in self.letters):
                raise AlphabetError(f"Y-word indices must be >= 1, got {self.letters}")

    def __len__(self) -> int:
        return len(self.letters)

    @property
    def is_empty(self) -> bool:
        return not self.letters

    @property
    def grade(self) -> int:
        """Length for X-words, weight (sum of indices) for Y-words."""
        if self.alphabet == X:
            return len(self.letters)
        return sum(self.letters)

    @property
    def weight(self) -> int:
        """Alias of :attr:`grade` for Y-words; for X-words the length."""
        return self.grade

    def concat(self, other: "Word") -> "Word":
        if self.alphabet != other.alphabet:
            raise AlphabetError("cannot concatenate words over different alphabets")
        return Word(self.letters + other.letters, self.alphabet)

    def sort_key(self) -> tuple[int, tuple[int, ...]]:
        """Canonical length-then-lexicographic ordering key."""
        return (len(self.letters), self.letters)

    @property
    def ends_in_x1(self) -> bool:
        return self.alphabet == X and bool(self.letters) and self.letters[-1] == X1

    @property
    def trailing_x0_count(self) -> int:
        if self.alphabet != X:
            raise AlphabetError("trailing_x0_count is defined for X-words only")
        n = 0
        for b in reversed(self.letters):
            if b != X0:
                break
            n += 1
        return n

    def text(self) -> str:
        """Canonical serialization: bitstring for X, comma-joined for Y."""
        if self.alphabet == X:
            return "".join(str(b) for b in self.letters)
        return ",".join(str(s) for s in self.letters)

    def __str__(self) -> str:
        if self.is_empty:
            return "1"
        if self.alphabet == X:
            return "".join(f"x{b}" for b in self.letters)
        return "".join(f"y{s}" for s in self.letters)


def x_word(bits: str | Iterable[int]) -> Word:
    """Build an X-word from a bitstring like "011" or an iterable of 0/1."""
    if isinstance(bits, str):
        letters = tuple(int(c) for c in bits)
    else:
        letters = tuple(bits)
    return Word(letters, X)


def y_word(*indices: int) -> Word:
    """Build a Y-word from indices, e.g. ``y_word(2, 1)`` for y2y1."""
    if len(indices) == 1 and not isinstance(indices[0], int):
        indices = tuple(indices[0])
    return Word(tuple(indices), Y)


def word_from_text(text: str, alphabet: str) -> Word:
    """Parse the canonical serialization produced by :meth:`Word.text`."""
    _check_alphabet(alphabet)
    if text == "":
        return Word((), alphabet)
    if alphabet == X:
        if any(c not in "01" for c in text):
            raise AlphabetError(f"X-word text must be over {{0,1}}: {text!r}")
        return x_word(text)
    return y_word(*(int(part) for part in text.split(",")))


def word_from_index(s: Sequence[int]) -> Word:
    """Code a positive multi-index (s1,...,sr) as x0^(s1-1) x1 ... x0^(sr-1) x1.

    The empty index codes to the empty word.  Raises InvalidIndexError for
    any non-positive entry; non-positive indices live in the rational-function
    representation, not in this coding.
    """
    letters: list[int] = []
    for si in s:
        if si < 1:
            raise InvalidIndexError(f"word coding needs indices >= 1, got {si}")
        letters.extend([X0] * (si - 1))
        letters.append(X1)
    return Word(tuple(letters), X)


def index_from_word(w: Word) -> tuple[int, ...]:
    """Invert :func:`word_from_index` on words ending in x1 (or empty)."""
    if w.alphabet != X:
        raise AlphabetError("index_from_word expects an X-word")
    if w.letters and w.letters[-1] != X1:
        raise NotInImageError(f"word {w} ends in x0 and codes no multi-index")
    out: list[int] = []
    zeros = 0
    for b in w.letters:
        if b == X0:
            zeros += 1
        else:
            out.append(zeros + 1)
            zeros = 0
    return tuple(out)


class NCPoly:
    """A finite rational-linear combination of words over one alphabet.

    Instances are immutable; arithmetic returns new polynomials in canonical
    form (zero coefficients dropped).  ``P.coeff(w)`` is the pairing <P | w>
    and returns 0 for absent words.
    """

    __slots__ = ("_terms", "_alphabet")

    def __init__(
        self,
        alphabet: str,
        terms: Mapping[Word, RatLike] | Iterable[tuple[Word, RatLike]] | None = None,
    ) -> None:
        _check_alphabet(alphabet)
        data: dict[Word, Fraction] = {}
        if terms:
            items = terms.items() if isinstance(terms, Mapping) else terms
            for w, c in items:
                if not isinstance(w, Word):
                    raise TypeError(f"NCPoly keys must be Words, got {w!r}")
                if w.alphabet != alphabet:
                    raise AlphabetError(
                        f"word {w} is over {w.alphabet}, polynomial is over {alphabet}"
                    )
                c = as_rat(c)
                if c:
                    acc = data.get(w, ZERO) + c
                    if acc:
                        data[w] = acc
                    else:
                        data.pop(w, None)
        self._terms = data
        self._alphabet = alphabet

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, alphabet: str) -> "NCPoly":
        return cls(alphabet)

    @classmethod
    def one(cls, alphabet: str) -> "NCPoly":
        return cls(alphabet, {Word((), alphabet): ONE})

    @classmethod
    def from_word(cls, w: Word, coeff: RatLike = 1) -> "NCPoly":
        return cls(w.alphabet, {w: coeff})

    # -- inspection --------------------------------------------------------

    @property
    def alphabet(self) -> str:
        return self._alphabet

    def coeff(self, w: Word) -> Fraction:
        if w.alphabet != self._alphabet:
            raise AlphabetError(
                f"cannot pair a {w.alphabet}-word with a {self._alphabet}-polynomial"
            )
        return self._terms.get(w, ZERO)

    def items(self) -> list[tuple[Word, Fraction]]:
        """Terms in canonical (length-then-lexicographic) order."""
        return sorted(self._terms.items(), key=lambda kv: kv[0].sort_key())

    def support(self) -> list[Word]:
        return [w for w, _ in self.items()]

    def __iter__(self) -> Iterator[tuple[Word, Fraction]]:
        return iter(self.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def constant_term(self) -> Fraction:
        return self._terms.get(Word((), self._alphabet), ZERO)

    def grades(self) -> set[int]:
        return {w.grade for w in self._terms}

    @property
    def max_grade(self) -> int:
        """Largest grade present; 0 for the zero polynomial."""
        return max((w.grade for w in self._terms), default=0)

    @property
    def max_length(self) -> int:
        return max((len(w) for w in self._terms), default=0)

    # -- algebra -----------------------------------------------------------

    def _require_same_alphabet(self, other: "NCPoly") -> None:
        if not isinstance(other, NCPoly):
            raise TypeError(f"expected NCPoly, got {type(other).__name__}")
        if other._alphabet != self._alphabet:
            raise AlphabetError(
                f"alphabet mismatch: {self._alphabet} vs {other._alphabet}"
            )

    def __add__(self, other: "NCPoly") -> "NCPoly":
        self._require_same_alphabet(other)
        data = dict(self._terms)
        for w, c in other._terms.items():
            acc = data.get(w, ZERO) + c
            if acc:
                data[w] = acc
            else:
                data.pop(w, None)
        out = NCPoly.__new__(NCPoly)
        out._terms = data
        out._alphabet = self._alphabet
        return out

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + (-other)

    def __neg__(self) -> "NCPoly":
        out = NCPoly.__new__(NCPoly)
        out._terms = {w: -c for w, c in self._terms.items()}
        out._alphabet = self._alphabet
        return out

    def _scaled(self, c: Fraction) -> "NCPoly":
        out = NCPoly.__new__(NCPoly)
        out._terms = {} if not c else {w: c * cw for w, cw in self._terms.items()}
        out._alphabet = self._alphabet
        return out

    def __mul__(self, scalar: RatLike) -> "NCPoly":
        return self._scaled(as_rat(scalar))

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self._alphabet == other._alphabet and self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    def truncated(self, max_grade: int) -> "NCPoly":
        """Restriction to words of grade <= max_grade."""
        return NCPoly(
            self._alphabet,
            {w: c for w, c in self._terms.items() if w.grade <= max_grade},
        )

    def homogeneous_component(self, n: int) -> "NCPoly":
        return NCPoly(
            self._alphabet,
            {w: c for w, c in self._terms.items() if w.grade == n},
        )

    # -- serialization -----------------------------------------------------

    def to_terms_text(self) -> dict[str, str]:
        """Canonical {word text: coefficient text} mapping, ordered."""
        return {w.text(): str(c) for w, c in self.items()}

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts: list[str] = []
        for w, c in self.items():
            body = str(w)
            if w.is_empty:
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
        return f"NCPoly({self._alphabet!r}, {self!s})"


# -- module-level operation surface ---------------------------------------


def add(p: NCPoly, q: NCPoly) -> NCPoly:
    """Sum of two polynomials over the same alphabet."""
    return p + q


def scale(c: RatLike, p: NCPoly) -> NCPoly:
    """Scalar multiple c*P."""
    return p * as_rat(c)


def coeff_of(p: NCPoly, w: Word) -> Fraction:
    """The pairing <P | w>; 0 when w is absent from P."""
    return p.coeff(w)


def homogeneous_component(p: NCPoly, n: int) -> NCPoly:
    """Restriction of P to words of grade n (length over X, weight over Y)."""
    return p.homogeneous_component(n)
