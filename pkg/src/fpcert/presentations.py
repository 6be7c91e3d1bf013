"""Finite presentations and their deficiency-style invariants.

All invariants are exact rationals (`fractions.Fraction`); nothing in this
module ever touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .words import Alphabet, Word, WordError, p_valuation, parse_word, format_word, require_prime


class PresentationError(ValueError):
    """Malformed presentation input (text or constructor arguments)."""


@dataclass(frozen=True)
class Presentation:
    """``< alphabet | relators >`` with nonempty, freely reduced relators.

    ``comments`` ride along into the text serialization but do not take part
    in equality.
    """

    alphabet: Alphabet
    relators: tuple[Word, ...]
    comments: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        for i, r in enumerate(self.relators):
            if not isinstance(r, Word) or r.alphabet != self.alphabet:
                raise PresentationError(f"relator {i} is not a word over the alphabet")
            if r.is_identity:
                raise PresentationError(f"relator {i} is empty")

    @property
    def ngens(self) -> int:
        return len(self.alphabet)

    def word(self, text: str) -> Word:
        return parse_word(text, self.alphabet)

    def __repr__(self) -> str:
        rels = ", ".join(format_word(r) for r in self.relators)
        return f"Presentation(<{' '.join(self.alphabet.names)} | {rels}>)"


def presentation(gens: str | Sequence[str], relator_texts: Iterable[str] = ()) -> Presentation:
    """Convenience constructor from generator names and relator text."""
    if isinstance(gens, str):
        gens = gens.split()
    alphabet = Alphabet(gens)
    rels = tuple(parse_word(t, alphabet) for t in relator_texts)
    return Presentation(alphabet, rels)


# -- invariants --------------------------------------------------------


def deficiency(q: Presentation) -> Fraction:
    """Classical deficiency: generators minus relators."""
    return Fraction(q.ngens - len(q.relators))


def p_deficiency(q: Presentation, p: int) -> Fraction:
    """``ngens - sum(p^-v_p(r))`` over the relators.

    The valuation ``v_p(r)`` is the largest ``a`` with ``r`` a ``p**a``-th
    power, so a relator that is not a proper p-power is charged 1 and a
    ``p**a``-th power only ``p**-a``.
    """
    require_prime(p)
    total = Fraction(0)
    for r in q.relators:
        total += Fraction(1, p ** p_valuation(r, p).exponent)
    return Fraction(q.ngens) - total


def residual_deficiency(q: Presentation, orders: Sequence[int | None]) -> Fraction:
    """``ngens - sum(1/k_i)`` with ``k_i`` the supplied root orders.

    ``orders[i]`` is the order of the image of relator ``i``'s primitive root
    in the quotient by the finite residual; ``None`` means infinite order and
    contributes 0.  Supplying orders is the caller's job: the tool exposes no
    algorithm for the orders themselves, only bookkeeping with claimed or
    witnessed values.
    """
    if len(orders) != len(q.relators):
        raise PresentationError(
            f"need one order per relator ({len(q.relators)}), got {len(orders)}"
        )
    total = Fraction(0)
    for i, k in enumerate(orders):
        if k is None:
            continue
        if not isinstance(k, int) or k < 1:
            raise PresentationError(f"order for relator {i} must be a positive int or None")
        total += Fraction(1, k)
    return Fraction(q.ngens) - total


def format_fraction(x: Fraction) -> str:
    """Render as ``a/b`` even for integers (so goldens stay stable)."""
    return f"{x.numerator}/{x.denominator}"


# -- text format -------------------------------------------------------
#
#   # comment lines anywhere
#   gens: a b t
#   rel: a^-1b^2ab^-3
#   rel: ...


def parse_presentation(text: str) -> Presentation:
    alphabet: Alphabet | None = None
    relators: list[Word] = []
    comments: list[str] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            comments.append(line[1:].strip())
            continue
        if line.startswith("gens:"):
            if alphabet is not None:
                raise PresentationError(f"line {lineno}: duplicate gens line")
            names = line[len("gens:"):].split()
            try:
                alphabet = Alphabet(names)
            except WordError as e:
                raise PresentationError(f"line {lineno}: {e}") from None
            continue
        if line.startswith("rel:"):
            if alphabet is None:
                raise PresentationError(f"line {lineno}: rel before gens")
            body = line[len("rel:"):].strip()
            try:
                w = parse_word(body, alphabet)
            except WordError as e:
                raise PresentationError(f"line {lineno}: {e}") from None
            if w.is_identity:
                raise PresentationError(f"line {lineno}: relator reduces to the empty word")
            relators.append(w)
            continue
        raise PresentationError(f"line {lineno}: unrecognized line {line!r}")
    if alphabet is None:
        raise PresentationError("missing gens line")
    return Presentation(alphabet, tuple(relators), tuple(comments))


def format_presentation(q: Presentation) -> str:
    lines = [f"# {c}" if c else "#" for c in q.comments]
    lines.append("gens: " + " ".join(q.alphabet.names))
    for r in q.relators:
        lines.append("rel: " + format_word(r))
    return "\n".join(lines) + "\n"


def load_presentation(path) -> Presentation:
    from pathlib import Path

    try:
        text = Path(path).read_text()
    except OSError as e:
        raise PresentationError(f"cannot read {path}: {e}") from None
    return parse_presentation(text)
