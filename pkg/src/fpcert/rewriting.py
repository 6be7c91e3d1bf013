"""Subgroup presentations by rewriting along a Schreier transversal.

Given a complete coset table, the breadth-first spanning tree over the
table columns yields a prefix-closed transversal.  Each positive-generator
edge outside the tree contributes one free generator of the subgroup; a
word stabilizing a coset rewrites to a word in these generators by reading
off the non-tree edges its trace crosses.

Two relator-lifting modes:

* ``full`` -- every relator rewritten from every coset
  (``len(relators) * index`` relators, duplicates and all);
* ``orbit_reduced`` -- one lift per cycle of the permutation induced by
  the relator's primitive root.  A relator itself permutes the cosets
  trivially, so cycling over its own permutation buys nothing; but lifts
  taken at two cosets on the same root cycle are conjugate inside the
  subgroup (conjugate by a transversal-root-transversal element, which
  commutes past the relator), so one lift per root cycle generates the
  same normal closure.  When the root cycle has length ``l`` and the
  relator is the root to the power ``m``, the lift is textually a word
  to the power ``m // l``, which is what keeps prime valuations visible
  after rewriting.

:func:`simplify` applies weak Tietze moves (drop duplicate or inverse
duplicate relators, eliminate a generator that occurs exactly once in one
relator and nowhere else); it never increases either count and is
deterministic.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .enumeration import CosetTable, EnumerationError
from .presentations import Presentation
from .words import Alphabet, Word, primitive_root


def _subgroup_alphabet(count: int) -> Alphabet:
    return Alphabet([f"y{i}" for i in range(count)])


@dataclass(frozen=True, eq=False)
class SchreierData:
    """Transversal, tree, and subgroup generators for one coset table."""

    table: CosetTable
    transversal: tuple[Word, ...]
    generators: tuple[Word, ...]
    subgroup_alphabet: Alphabet
    _edge_gen: dict = field(repr=False)
    _tree: frozenset = field(repr=False)

    def rewrite(self, word: Word, start: int = 0) -> Word:
        """Rewrite a word stabilizing ``start`` into subgroup generators.

        The trace of the word from ``start`` must return to ``start``;
        otherwise the word does not lie in the (conjugated) subgroup and
        this raises.
        """
        if word.alphabet != self.table.presentation.alphabet:
            raise EnumerationError("word is over a different alphabet")
        arr = self.table.array
        out: list[tuple[int, int]] = []
        c = start
        for g, s in word.letters:
            if s > 0:
                d = int(arr[c, 2 * g])
                if (c, g) not in self._tree:
                    out.append((self._edge_gen[(c, g)], 1))
            else:
                d = int(arr[c, 2 * g + 1])
                if (d, g) not in self._tree:
                    out.append((self._edge_gen[(d, g)], -1))
            c = d
        if c != start:
            raise EnumerationError(
                f"word does not stabilize coset {start}; it maps it to {c}"
            )
        return Word(self.subgroup_alphabet, out)


def schreier_data(table: CosetTable) -> SchreierData:
    """Build the spanning tree, transversal, and Schreier generators.

    The tree is grown breadth-first from coset 0 over the columns in their
    natural order, so the transversal is prefix-closed and deterministic.
    For an index-k table over n generators there are exactly
    ``(n - 1) * k + 1`` subgroup generators.
    """
    q = table.presentation
    n = q.ngens
    k = table.index
    arr = table.array
    transversal: list[Word | None] = [None] * k
    transversal[0] = q.alphabet.word()
    tree: set[tuple[int, int]] = set()
    order = [0]
    qi = 0
    while qi < len(order):
        c = order[qi]
        qi += 1
        for col in range(2 * n):
            d = int(arr[c, col])
            if transversal[d] is None:
                g = col // 2
                if col % 2 == 0:
                    transversal[d] = transversal[c] * q.alphabet.gen(g)
                    tree.add((c, g))
                else:
                    transversal[d] = transversal[c] * q.alphabet.gen(g).inverse()
                    tree.add((d, g))
                order.append(d)
    edge_gen: dict[tuple[int, int], int] = {}
    generators: list[Word] = []
    for c in range(k):
        for g in range(n):
            if (c, g) in tree:
                continue
            d = int(arr[c, 2 * g])
            edge_gen[(c, g)] = len(generators)
            generators.append(
                transversal[c] * q.alphabet.gen(g) * transversal[d].inverse()
            )
    expected = (n - 1) * k + 1
    if len(generators) != expected:
        raise AssertionError(
            f"internal: {len(generators)} Schreier generators, expected {expected}"
        )
    return SchreierData(
        table=table,
        transversal=tuple(transversal),
        generators=tuple(generators),
        subgroup_alphabet=_subgroup_alphabet(len(generators)),
        _edge_gen=edge_gen,
        _tree=frozenset(tree),
    )


MODES = ("full", "orbit_reduced")


def subgroup_presentation(table: CosetTable, mode: str = "orbit_reduced") -> Presentation:
    """Present the subgroup of the coset table on its Schreier generators."""
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    data = schreier_data(table)
    q = table.presentation
    k = table.index
    words: list[Word] = []
    if mode == "full":
        for r in q.relators:
            for c in range(k):
                words.append(data.rewrite(r, c))
    else:
        for r in q.relators:
            root = primitive_root(r).whole_root
            perm = table.word_permutation(root)
            seen = [False] * k
            for start in range(k):
                if seen[start]:
                    continue
                c = start
                while not seen[c]:
                    seen[c] = True
                    c = perm[c]
                words.append(data.rewrite(r, start))
    for w in words:
        if w.is_identity:
            raise AssertionError("internal: a rewritten relator reduced to nothing")
    return Presentation(data.subgroup_alphabet, tuple(words))


def _drop_duplicates(relators: tuple[Word, ...]) -> tuple[Word, ...]:
    seen = set()
    out = []
    for r in relators:
        key = min(r.letters, r.inverse().letters)
        if key in seen:
            continue
        seen.add(key)
        out.append(r)
    return tuple(out)


def _eliminate_single_use(q: Presentation) -> Presentation | None:
    """Remove one generator that occurs exactly once across all relators."""
    counts = [0] * q.ngens
    home = [-1] * q.ngens
    for ri, r in enumerate(q.relators):
        for g, s in r.letters:
            counts[g] += abs(s)
            home[g] = ri
    for g in range(q.ngens):
        if counts[g] != 1:
            continue
        drop_rel = home[g]
        names = [n for i, n in enumerate(q.alphabet.names) if i != g]
        if not names:
            return None
        alphabet = Alphabet(names)
        remap = {}
        j = 0
        for i in range(q.ngens):
            if i != g:
                remap[i] = j
                j += 1
        new_rels = []
        for ri, r in enumerate(q.relators):
            if ri == drop_rel:
                continue
            new_rels.append(Word(alphabet, [(remap[i], s) for i, s in r.letters]))
        return Presentation(alphabet, tuple(new_rels))
    return None


def simplify(q: Presentation) -> Presentation:
    """Weak Tietze simplification; preserves the group, never grows counts."""
    rels = _drop_duplicates(q.relators)
    current = Presentation(q.alphabet, rels) if rels != q.relators else q
    while True:
        smaller = _eliminate_single_use(current)
        if smaller is None:
            return current
        rels = _drop_duplicates(smaller.relators)
        current = (
            Presentation(smaller.alphabet, rels)
            if rels != smaller.relators
            else smaller
        )
