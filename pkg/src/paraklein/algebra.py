"""Free associative algebra on paraoperator generators, extended by a Klein element.

The only multiplication rules imposed are ``K*K = 1`` and ``K g = -g K`` for
every paraoperator generator ``g``. Everything else is a free product, so the
algebra is the right ambient object for replaying identities that hold
without using any triple relation.

Every word is stored with the Klein flag in its canonical rightmost position.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from numbers import Rational
from typing import Iterable, Iterator, Mapping, NamedTuple

__all__ = [
    "Kind",
    "Generator",
    "Word",
    "Expression",
    "f",
    "b",
    "K",
    "ONE",
    "ZERO",
    "scalar",
    "mul",
    "bracket",
    "commutator",
    "anticommutator",
    "dagger",
    "klein_transform",
    "normalize",
    "generators",
]


class Kind(enum.IntEnum):
    # integer values fix the canonical ordering: parafermions sort first
    FERMION = 0
    BOSON = 1


class Generator(NamedTuple):
    kind: Kind
    index: int
    sign: int

    def adjoint(self) -> Generator:
        return Generator(self.kind, self.index, -self.sign)

    def token(self) -> str:
        letter = "f" if self.kind is Kind.FERMION else "b"
        return f"{letter}{'+' if self.sign > 0 else '-'}{self.index}"

    def __repr__(self) -> str:
        return self.token()


def _generator(kind: Kind, index: int, sign: int) -> Generator:
    if not isinstance(index, int) or index < 1:
        raise ValueError(f"generator index must be a positive integer, got {index!r}")
    if sign not in (1, -1):
        raise ValueError(f"generator sign must be +1 or -1, got {sign!r}")
    return Generator(kind, index, sign)


class Word(NamedTuple):
    letters: tuple[Generator, ...]
    klein: int = 0

    def sort_key(self) -> tuple:
        return (
            len(self.letters),
            tuple((g.kind, g.index, g.sign) for g in self.letters),
            self.klein,
        )

    def boson_degree(self) -> int:
        return sum(1 for g in self.letters if g.kind is Kind.BOSON)

    def token(self) -> str:
        parts = [g.token() for g in self.letters]
        if self.klein:
            parts.append("K")
        return " ".join(parts) if parts else "1"


EMPTY_WORD = Word((), 0)


def _word_product(u: Word, v: Word) -> tuple[int, Word]:
    # K in u travels right past every letter of v
    sign = -1 if (u.klein and len(v.letters) % 2) else 1
    return sign, Word(u.letters + v.letters, u.klein ^ v.klein)


class Expression(Mapping[Word, Fraction]):
    """Exact rational linear combination of canonical words.

    Instances are immutable and always normalized: no zero coefficients,
    terms iterated in graded-lexicographic order.
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Word, Rational] | Iterable[tuple[Word, Rational]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Word, Fraction] = {}
        for word, coeff in items:
            if not isinstance(word, Word):
                raise TypeError(f"expected Word, got {type(word).__name__}")
            if word.klein not in (0, 1):
                raise ValueError("klein power must be 0 or 1")
            acc[word] = acc.get(word, Fraction(0)) + Fraction(coeff)
        self._terms = {
            w: acc[w] for w in sorted(acc, key=Word.sort_key) if acc[w] != 0
        }
        self._hash: int | None = None

    # Mapping protocol
    def __getitem__(self, word: Word) -> Fraction:
        return self._terms[word]

    def __iter__(self) -> Iterator[Word]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Expression):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            return self == scalar(other)
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def is_zero(self) -> bool:
        return not self._terms

    # arithmetic
    def __add__(self, other: Expression | Rational) -> Expression:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Expression(list(self._terms.items()) + list(other._terms.items()))

    __radd__ = __add__

    def __neg__(self) -> Expression:
        return Expression({w: -c for w, c in self._terms.items()})

    def __sub__(self, other: Expression | Rational) -> Expression:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Rational) -> Expression:
        return (-self) + other

    def __mul__(self, other: Expression | Rational) -> Expression:
        if isinstance(other, Expression):
            return mul(self, other)
        if isinstance(other, Rational):
            c = Fraction(other)
            return Expression({w: c * v for w, v in self._terms.items()})
        return NotImplemented

    def __rmul__(self, other: Rational) -> Expression:
        if isinstance(other, Rational):
            return self * other
        return NotImplemented

    def boson_degree(self) -> int:
        return max((w.boson_degree() for w in self._terms), default=0)

    def max_length(self) -> int:
        return max((len(w.letters) for w in self._terms), default=0)

    def letters(self) -> set[Generator]:
        return {g for w in self._terms for g in w.letters}

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"{c} * {w.token()}" for w, c in self._terms.items())

    def __repr__(self) -> str:
        return f"Expression({str(self)!r})"


def _coerce(x) -> Expression:
    if isinstance(x, Expression):
        return x
    if isinstance(x, Rational):
        return scalar(x)
    return NotImplemented


def scalar(c: Rational) -> Expression:
    return Expression({EMPTY_WORD: c})


def f(index: int, sign: int) -> Expression:
    """Parafermion generator ``f_index^sign`` as a one-term expression."""
    return Expression({Word((_generator(Kind.FERMION, index, sign),)): 1})


def b(index: int, sign: int) -> Expression:
    """Paraboson generator ``b_index^sign`` as a one-term expression."""
    return Expression({Word((_generator(Kind.BOSON, index, sign),)): 1})


K = Expression({Word((), 1): 1})
ONE = scalar(1)
ZERO = Expression()


def generators(m: int, n: int) -> list[Generator]:
    """All ``2(m+n)`` paraoperator generators in canonical order."""
    gens = [Generator(Kind.FERMION, j, s) for j in range(1, m + 1) for s in (-1, 1)]
    gens += [Generator(Kind.BOSON, k, s) for k in range(1, n + 1) for s in (-1, 1)]
    return gens


def normalize(a: Expression) -> Expression:
    # Expressions are normalized on construction; rebuilding is a no-op copy.
    return Expression(a)


def mul(a: Expression, c: Expression) -> Expression:
    terms: list[tuple[Word, Fraction]] = []
    for u, x in a.items():
        for v, y in c.items():
            sign, w = _word_product(u, v)
            terms.append((w, sign * x * y))
    return Expression(terms)


def commutator(x: Expression, y: Expression) -> Expression:
    return mul(x, y) - mul(y, x)


def anticommutator(x: Expression, y: Expression) -> Expression:
    return mul(x, y) + mul(y, x)


def bracket(x: Expression, y: Expression, type: str = "commutator") -> Expression:
    if type == "commutator":
        return commutator(x, y)
    if type == "anticommutator":
        return anticommutator(x, y)
    raise ValueError(f"unknown bracket type {type!r}")


def _word_expression(word: Word) -> Expression:
    return Expression({word: 1})


def _substitute(a: Expression, image) -> Expression:
    """Extend a map on generators (and K) to an algebra homomorphism."""
    kimage = image(None)
    out: list[tuple[Word, Fraction]] = []
    for word, coeff in a.items():
        acc = ONE
        for g in word.letters:
            acc = mul(acc, image(g))
        if word.klein:
            acc = mul(acc, kimage)
        out.extend((w, coeff * c) for w, c in acc.items())
    return Expression(out)


def dagger(a: Expression) -> Expression:
    """Anti-linear anti-homomorphism: reverse words, swap creation and annihilation.

    ``K`` is self-adjoint; after reversal it sits on the left and is pushed
    back to the right with one sign flip per letter.
    """
    out: list[tuple[Word, Fraction]] = []
    for word, coeff in a.items():
        letters = tuple(g.adjoint() for g in reversed(word.letters))
        sign = -1 if (word.klein and len(letters) % 2) else 1
        out.append((Word(letters, word.klein), sign * coeff))
    return Expression(out)


def klein_transform(a: Expression) -> Expression:
    """Substitute ``f_j^s -> s f_j^s K`` and leave ``b_k^s`` and ``K`` fixed."""

    def image(g: Generator | None) -> Expression:
        if g is None:
            return K
        w = _word_expression(Word((g,)))
        if g.kind is Kind.FERMION:
            return g.sign * mul(w, K)
        return w

    return _substitute(a, image)


def substitute(a: Expression, image) -> Expression:
    """Public form of the homomorphic substitution used by :func:`klein_transform`.

    ``image`` receives a :class:`Generator`, or ``None`` for the Klein element.
    """
    return _substitute(a, image)


def parse(text: str) -> Expression:
    """Parse the report serialization back into an Expression.

    A term without ``*`` is a bare word (coefficient 1) or a bare scalar.

    >>> str(parse("-1 * f+1 K + 1/2 * b-2"))
    '-1 * f+1 K + 1/2 * b-2'
    >>> str(parse("f+1 b-1"))
    '1 * f+1 b-1'
    """
    text = text.strip()
    if text == "0":
        return ZERO
    terms = []
    for chunk in text.split(" + "):
        coeff, star, word = chunk.partition(" * ")
        if not star:
            try:
                coeff, word = Fraction(chunk), "1"
            except ValueError:
                coeff, word = 1, chunk
        letters = []
        klein = 0
        for tok in word.split():
            if tok == "1":
                continue
            if tok == "K":
                klein = 1
                continue
            try:
                kind = {"f": Kind.FERMION, "b": Kind.BOSON}[tok[0]]
                sign = {"+": 1, "-": -1}[tok[1]]
                letters.append(_generator(kind, int(tok[2:]), sign))
            except (KeyError, IndexError) as exc:
                raise ValueError(f"bad generator token {tok!r}") from exc
        terms.append((Word(tuple(letters), klein), Fraction(coeff)))
    return Expression(terms)
