"""Freely reduced words over a named generating alphabet.

A word is an immutable sequence of signed letters ``(generator_index, sign)``
with ``sign`` in ``{+1, -1}``; construction always freely reduces, so equal
group elements of the free group compare equal as values.  The module also
provides cyclic reduction, primitive-root extraction and p-power valuation,
which the presentation invariants are built on.

Conventions (used consistently everywhere):

* conjugation: ``x.conjugate(s) == s^-1 * x * s``
* commutator:  ``commutator(x, y) == x * y * x^-1 * y^-1``
* ``cyclic_reduce(w)`` returns ``(core, conj)`` with ``w == conj * core * conj^-1``
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator

_NAME_RE = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")


class WordError(ValueError):
    """Raised for malformed words, alphabets or word expressions."""


class Alphabet:
    """An ordered tuple of distinct generator names."""

    __slots__ = ("names", "_index")

    def __init__(self, names: Iterable[str]):
        names = tuple(names)
        if not names:
            raise WordError("alphabet needs at least one generator")
        for name in names:
            if not isinstance(name, str) or not _NAME_RE.match(name):
                raise WordError(f"bad generator name: {name!r}")
        if len(set(names)) != len(names):
            raise WordError(f"duplicate generator names in {names}")
        self.names = names
        self._index = {name: i for i, name in enumerate(names)}

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise WordError(f"unknown generator {name!r}") from None

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Alphabet) and self.names == other.names

    def __hash__(self) -> int:
        return hash(self.names)

    def __repr__(self) -> str:
        return f"Alphabet({', '.join(self.names)})"

    def word(self, letters: Iterable[tuple[int, int]] = ()) -> "Word":
        return Word(self, letters)

    def gen(self, i: int) -> "Word":
        """The length-1 word for generator ``i`` (by index or name)."""
        if isinstance(i, str):
            i = self.index(i)
        if not 0 <= i < len(self.names):
            raise WordError(f"generator index {i} out of range")
        return Word(self, ((i, 1),))

    def gens(self) -> tuple["Word", ...]:
        return tuple(self.gen(i) for i in range(len(self.names)))


def _reduce(letters: Iterable[tuple[int, int]], ngens: int) -> tuple[tuple[int, int], ...]:
    out: list[tuple[int, int]] = []
    for g, s in letters:
        if s not in (1, -1):
            raise WordError(f"letter sign must be +1 or -1, got {s}")
        if not 0 <= g < ngens:
            raise WordError(f"letter index {g} out of range")
        if out and out[-1][0] == g and out[-1][1] == -s:
            out.pop()
        else:
            out.append((g, s))
    return tuple(out)


class Word:
    """A freely reduced word; the constructor performs the reduction."""

    __slots__ = ("alphabet", "letters")

    def __init__(self, alphabet: Alphabet, letters: Iterable[tuple[int, int]] = ()):
        self.alphabet = alphabet
        self.letters = _reduce(letters, len(alphabet))

    # -- basic protocol ------------------------------------------------

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.letters)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Word)
            and self.alphabet == other.alphabet
            and self.letters == other.letters
        )

    def __hash__(self) -> int:
        return hash((self.alphabet, self.letters))

    def __repr__(self) -> str:
        return f"Word({format_word(self)!r})"

    def __str__(self) -> str:
        return format_word(self)

    @property
    def is_identity(self) -> bool:
        return not self.letters

    def _check_same(self, other: "Word") -> None:
        if self.alphabet != other.alphabet:
            raise WordError("alphabet mismatch")

    # -- group operations ----------------------------------------------

    def __mul__(self, other: "Word") -> "Word":
        self._check_same(other)
        return Word(self.alphabet, self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(self.alphabet, tuple((g, -s) for g, s in reversed(self.letters)))

    def __invert__(self) -> "Word":
        return self.inverse()

    def __pow__(self, k: int) -> "Word":
        if k == 0:
            return Word(self.alphabet)
        base = self if k > 0 else self.inverse()
        return Word(self.alphabet, base.letters * abs(k))

    def conjugate(self, s: "Word") -> "Word":
        """``self^s = s^-1 * self * s``."""
        self._check_same(s)
        return s.inverse() * self * s

    def exponent_sum(self, gen: int | str) -> int:
        if isinstance(gen, str):
            gen = self.alphabet.index(gen)
        return sum(s for g, s in self.letters if g == gen)


def commutator(x: Word, y: Word) -> Word:
    """``[x, y] = x y x^-1 y^-1``."""
    return x * y * x.inverse() * y.inverse()


def cyclic_reduce(w: Word) -> tuple[Word, Word]:
    """Return ``(core, conj)`` with ``w == conj * core * conj^-1``.

    The core is cyclically reduced (its first and last letters are not
    mutually inverse).
    """
    letters = w.letters
    i, j = 0, len(letters)
    while j - i >= 2:
        g1, s1 = letters[i]
        g2, s2 = letters[j - 1]
        if g1 == g2 and s1 == -s2:
            i += 1
            j -= 1
        else:
            break
    core = Word(w.alphabet, letters[i:j])
    conj = Word(w.alphabet, letters[:i])
    return core, conj


@dataclass(frozen=True)
class RootDecomposition:
    """``original == conjugator * root**multiplicity * conjugator^-1``.

    ``root`` is the primitive root of the cyclic core: it is not itself a
    proper power.
    """

    root: Word
    multiplicity: int
    conjugator: Word

    @property
    def whole_root(self) -> Word:
        """The root conjugated back, ``u`` with ``u**multiplicity == original``."""
        return self.conjugator * self.root * self.conjugator.inverse()

    def rebuild(self) -> Word:
        return self.conjugator * self.root**self.multiplicity * self.conjugator.inverse()


def _divisors_desc(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
        d += 1
    large.reverse()
    return list(reversed(small + large))


def primitive_root(w: Word) -> RootDecomposition:
    """Largest ``m`` with ``w`` a conjugated ``m``-th power, and its root.

    A root ``v`` of the cyclic core satisfies ``core.letters == v.letters * m``
    exactly (a reduced power of a cyclically reduced word never cancels), so
    the search only has to compare letter tuples over the divisors of the
    core length.
    """
    if w.is_identity:
        raise WordError("the empty word has no primitive root")
    core, conj = cyclic_reduce(w)
    letters = core.letters
    n = len(letters)
    for m in _divisors_desc(n):
        if m == 1:
            break
        piece = letters[: n // m]
        if piece * m == letters:
            return RootDecomposition(Word(w.alphabet, piece), m, conj)
    return RootDecomposition(core, 1, conj)


@dataclass(frozen=True)
class PValuation:
    """``p``-power structure of a word: ``root ** (prime**exponent) == original``.

    ``exponent`` is the largest ``a`` such that the word is a ``p**a``-th
    power; ``root`` is the corresponding p-root (conjugated back, so the
    identity above holds literally).
    """

    prime: int
    exponent: int
    root: Word


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


def require_prime(p: int) -> int:
    if not isinstance(p, int) or not is_prime(p):
        raise WordError(f"{p!r} is not a prime")
    return p


def p_valuation(w: Word, p: int) -> PValuation:
    """Largest ``a`` with ``w`` a ``p**a``-th power, plus the p-root."""
    require_prime(p)
    dec = primitive_root(w)
    m = dec.multiplicity
    a = 0
    while m % p == 0:
        m //= p
        a += 1
    whole = dec.conjugator * dec.root**m * dec.conjugator.inverse()
    return PValuation(p, a, whole)


# -- text syntax -------------------------------------------------------
#
# word  := "1" | term+
# term  := atom ("^" int)?
# atom  := name | "(" word ")"
#
# Generator names are matched with maximal munch against the alphabet, so
# juxtaposed one-letter generators need no separator.


class _Parser:
    def __init__(self, text: str, alphabet: Alphabet):
        self.text = text
        self.pos = 0
        self.alphabet = alphabet
        # longest names first so that e.g. "x12" beats "x1"
        self.names = sorted(alphabet.names, key=len, reverse=True)

    def error(self, msg: str) -> WordError:
        return WordError(f"{msg} at position {self.pos} in {self.text!r}")

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def parse_int(self) -> int:
        start = self.pos
        if self.peek() == "-":
            self.pos += 1
        if not self.peek().isdigit():
            raise self.error("expected an integer")
        while self.peek().isdigit():
            self.pos += 1
        return int(self.text[start : self.pos])

    def parse_atom(self) -> Word:
        self.skip_ws()
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            w = self.parse_word()
            self.skip_ws()
            if self.peek() != ")":
                raise self.error("expected ')'")
            self.pos += 1
            return w
        if ch == "1":
            self.pos += 1
            return Word(self.alphabet)
        for name in self.names:
            if self.text.startswith(name, self.pos):
                self.pos += len(name)
                return self.alphabet.gen(name)
        raise self.error("expected a generator name, '(' or '1'")

    def parse_term(self) -> Word:
        atom = self.parse_atom()
        self.skip_ws()
        if self.peek() == "^":
            self.pos += 1
            self.skip_ws()
            return atom ** self.parse_int()
        return atom

    def parse_word(self) -> Word:
        result = Word(self.alphabet)
        while True:
            self.skip_ws()
            ch = self.peek()
            if not ch or ch == ")":
                return result
            result = result * self.parse_term()


def parse_word(text: str, alphabet: Alphabet) -> Word:
    parser = _Parser(text, alphabet)
    w = parser.parse_word()
    parser.skip_ws()
    if parser.pos != len(text):
        raise parser.error("trailing input")
    return w


def format_word(w: Word) -> str:
    """Deterministic compact text form; ``parse_word`` round-trips it."""
    if w.is_identity:
        return "1"
    runs: list[tuple[int, int]] = []  # (gen, signed run exponent)
    for g, s in w.letters:
        if runs and runs[-1][0] == g and (runs[-1][1] > 0) == (s > 0):
            runs[-1] = (g, runs[-1][1] + s)
        else:
            runs.append((g, s))
    parts = []
    for g, e in runs:
        name = w.alphabet.names[g]
        parts.append(name if e == 1 else f"{name}^{e}")
    out = "".join(parts)
    # With exotic alphabets (one name a prefix of another's concatenation) the
    # compact join may re-lex differently; fall back to spaced atoms then.
    if parse_word(out, w.alphabet) != w:
        out = " ".join(parts)
    return out
