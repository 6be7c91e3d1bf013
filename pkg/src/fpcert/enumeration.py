"""Coset enumeration over finitely presented groups.

The central object is the :class:`CosetTable`: a complete transitive action
of the generators on cosets of a subgroup, with coset 0 the subgroup itself.
Tables are stored as int32 arrays with two columns per generator (column
``2*g`` for the generator, ``2*g + 1`` for its inverse, so ``col ^ 1`` flips
a letter).

Provided here:

* :func:`todd_coxeter` -- coset enumeration for a given subgroup, with a
  coset budget; exhausting the budget returns an :class:`Inconclusive`
  value rather than raising.
* :func:`low_index` -- all subgroups up to a given index, each produced
  once in standardized form; with ``normal_only=True`` the normal ones are
  found instead by intersecting kernels of surjections onto a built-in
  catalogue of the groups of order at most 15.
* helpers for building small witness quotients and for bounding word
  orders over a scan of finite quotients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from pathlib import Path

import numpy as np

from . import _kernels
from .claims import AT_LEAST, EXACT, ClaimError, OrderClaim, Witness
from .presentations import Presentation, PresentationError
from .words import Word, format_word

CATALOGUE_MAX_INDEX = 15
_HOM_SEARCH_LIMIT = 40_000_000


class EnumerationError(ValueError):
    """A coset table or an enumeration request is invalid."""


class CatalogueLimitError(EnumerationError):
    """Normal-subgroup enumeration was asked to go beyond the catalogue."""


@dataclass(frozen=True)
class Inconclusive:
    """Enumeration ran out of coset budget without completing."""

    reason: str
    cosets_used: int


def _word_cols(word: Word) -> list[int]:
    return [2 * g if s > 0 else 2 * g + 1 for g, s in word.letters]


class CosetTable:
    """A complete coset table over a presentation.

    ``array`` has one row per coset and columns as described in the module
    docstring.  ``subgens`` records words known to stabilize coset 0 (the
    generators handed to the enumerator); it may be empty.
    """

    __slots__ = ("presentation", "array", "subgens")

    def __init__(self, presentation: Presentation, array, subgens=()):
        arr = np.asarray(array, dtype=np.int32)
        if arr.ndim != 2:
            raise EnumerationError("coset table must be a 2-d array")
        self.presentation = presentation
        self.array = arr
        self.array.setflags(write=False)
        self.subgens = tuple(subgens)

    @property
    def index(self) -> int:
        return self.array.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, CosetTable):
            return NotImplemented
        return (
            self.presentation == other.presentation
            and self.array.shape == other.array.shape
            and bool((self.array == other.array).all())
        )

    def __hash__(self) -> int:
        return hash((self.presentation, self.array.tobytes()))

    def __repr__(self) -> str:
        return f"CosetTable(index={self.index}, ngens={self.presentation.ngens})"

    def sort_key(self) -> tuple:
        return (self.index, self.array.tobytes())

    def trace(self, coset: int, word: Word) -> int:
        c = coset
        arr = self.array
        for col in _word_cols(word):
            c = int(arr[c, col])
        return c

    def word_permutation(self, word: Word) -> tuple[int, ...]:
        cols = _word_cols(word)
        arr = self.array
        out = []
        for c in range(self.index):
            x = c
            for col in cols:
                x = int(arr[x, col])
            out.append(x)
        return tuple(out)

    def word_order(self, word: Word) -> int:
        """Order of the permutation the word induces on the cosets."""
        perm = self.word_permutation(word)
        seen = [False] * len(perm)
        order = 1
        for start in range(len(perm)):
            if seen[start]:
                continue
            length = 0
            c = start
            while not seen[c]:
                seen[c] = True
                c = perm[c]
                length += 1
            order = math.lcm(order, length)
        return order

    def generator_permutations(self) -> list[tuple[int, ...]]:
        return [
            tuple(int(x) for x in self.array[:, 2 * g])
            for g in range(self.presentation.ngens)
        ]

    def is_regular(self) -> bool:
        """Whether the image permutation group has order equal to the index.

        That happens exactly when the subgroup is normal (the action is then
        the regular action of the quotient).
        """
        k = self.index
        perms = self.generator_permutations()
        ident = tuple(range(k))
        seen = {ident}
        frontier = [ident]
        while frontier:
            x = frontier.pop()
            for p in perms:
                y = tuple(p[i] for i in x)
                if y not in seen:
                    if len(seen) >= k:
                        return False
                    seen.add(y)
                    frontier.append(y)
        return len(seen) == k

    def core(self) -> "CosetTable":
        """Coset table of the kernel of the action (largest normal subgroup
        of the presented group contained in the subgroup)."""
        k = self.index
        n = self.presentation.ngens
        perms = self.generator_permutations()
        inv_perms = []
        for p in perms:
            q = [0] * k
            for i, v in enumerate(p):
                q[v] = i
            inv_perms.append(tuple(q))
        ident = tuple(range(k))
        elems = {ident: 0}
        order_list = [ident]
        qi = 0
        while qi < len(order_list):
            x = order_list[qi]
            qi += 1
            for p in perms:
                y = tuple(p[i] for i in x)
                if y not in elems:
                    elems[y] = len(order_list)
                    order_list.append(y)
        m = len(order_list)
        arr = np.empty((m, 2 * n), dtype=np.int32)
        for xi, x in enumerate(order_list):
            for g in range(n):
                arr[xi, 2 * g] = elems[tuple(perms[g][i] for i in x)]
                arr[xi, 2 * g + 1] = elems[tuple(inv_perms[g][i] for i in x)]
        table = CosetTable(self.presentation, arr, ()).standardized()
        table.validate()
        return table

    def standardized(self) -> "CosetTable":
        """Renumber cosets by breadth-first discovery order from coset 0."""
        k = self.index
        ncols = self.array.shape[1]
        new_of_old = [-1] * k
        new_of_old[0] = 0
        order = [0]
        qi = 0
        while qi < len(order):
            c = order[qi]
            qi += 1
            for col in range(ncols):
                d = int(self.array[c, col])
                if not 0 <= d < k:
                    raise EnumerationError("coset table entry out of range")
                if new_of_old[d] == -1:
                    new_of_old[d] = len(order)
                    order.append(d)
        if len(order) != k:
            raise EnumerationError("coset table is not transitive")
        arr = np.empty_like(self.array)
        for c in range(k):
            for col in range(ncols):
                arr[new_of_old[c], col] = new_of_old[int(self.array[c, col])]
        return CosetTable(self.presentation, arr, self.subgens)

    def validate(self) -> None:
        """Full consistency check; raises EnumerationError on any defect.

        Checks entry ranges, that paired columns are mutually inverse
        permutations, transitivity, that every relator acts trivially, and
        that the recorded subgroup generators stabilize coset 0.
        """
        k = self.index
        if k < 1:
            raise EnumerationError("coset table needs at least one coset")
        ncols = self.array.shape[1]
        if ncols != 2 * self.presentation.ngens:
            raise EnumerationError("coset table has the wrong number of columns")
        arr = self.array
        if arr.min(initial=0) < 0 or arr.max(initial=0) >= k:
            raise EnumerationError("coset table entry out of range")
        for col in range(ncols):
            for c in range(k):
                if int(arr[int(arr[c, col]), col ^ 1]) != c:
                    raise EnumerationError(
                        f"columns {col} and {col ^ 1} are not mutually inverse"
                    )
        reached = [False] * k
        reached[0] = True
        stack = [0]
        count = 1
        while stack:
            c = stack.pop()
            for col in range(ncols):
                d = int(arr[c, col])
                if not reached[d]:
                    reached[d] = True
                    stack.append(d)
                    count += 1
        if count != k:
            raise EnumerationError("coset table is not transitive")
        for r in self.presentation.relators:
            cols = _word_cols(r)
            for c in range(k):
                x = c
                for col in cols:
                    x = int(arr[x, col])
                if x != c:
                    raise EnumerationError(
                        f"relator {format_word(r)} does not act trivially"
                    )
        for w in self.subgens:
            if self.trace(0, w) != 0:
                raise EnumerationError(
                    f"subgroup generator {format_word(w)} moves coset 0"
                )

    def to_json_dict(self) -> dict:
        return {
            "index": self.index,
            "table": [[int(x) for x in row] for row in self.array],
            "subgens": [format_word(w) for w in self.subgens],
        }

    @classmethod
    def from_json_dict(cls, doc, q: Presentation) -> "CosetTable":
        if not isinstance(doc, dict):
            raise EnumerationError("coset table document must be an object")
        for key in ("index", "table"):
            if key not in doc:
                raise EnumerationError(f"coset table document missing {key!r}")
        rows = doc["table"]
        if not isinstance(rows, list) or not rows:
            raise EnumerationError("coset table document has no rows")
        if doc["index"] != len(rows):
            raise EnumerationError("declared index does not match row count")
        subgens = tuple(q.word(text) for text in doc.get("subgens", []))
        table = cls(q, np.array(rows, dtype=np.int32), subgens)
        table.validate()
        return table

    @classmethod
    def from_json_file(cls, path, q: Presentation) -> "CosetTable":
        import json

        path = Path(path)
        try:
            doc = json.loads(path.read_text())
        except json.JSONDecodeError as exc:
            raise EnumerationError(f"quotient file is not valid JSON: {exc}") from exc
        return cls.from_json_dict(doc, q)


def trivial_table(q: Presentation) -> CosetTable:
    """The index-1 table (the whole group as its own subgroup)."""
    return CosetTable(q, np.zeros((1, 2 * q.ngens), dtype=np.int32), ())


def abelian_quotient_table(q: Presentation, moduli, images) -> CosetTable:
    """Regular coset table of a finite abelian quotient.

    ``moduli`` lists the orders of cyclic factors; ``images`` maps each
    generator name to a coefficient tuple of the same length.  Raises if
    some relator has a nonzero image (the assignment then does not define a
    quotient of the presented group).
    """
    moduli = tuple(int(m) for m in moduli)
    if not moduli or any(m < 1 for m in moduli):
        raise EnumerationError("moduli must be positive integers")
    size = math.prod(moduli)
    if size > 10_000:
        raise EnumerationError("abelian quotient too large to tabulate")
    vectors = {}
    order: list[tuple[int, ...]] = []

    def _key(vec):
        v = tuple(vec)
        if v not in vectors:
            vectors[v] = len(order)
            order.append(v)
        return vectors[v]

    _key((0,) * len(moduli))
    img = {}
    for name in q.alphabet.names:
        if name not in images:
            raise EnumerationError(f"no image given for generator {name}")
        coeffs = tuple(int(c) for c in images[name])
        if len(coeffs) != len(moduli):
            raise EnumerationError("image tuple length does not match moduli")
        img[name] = coeffs
    # enumerate the full product group in a fixed order
    from itertools import product

    for vec in product(*[range(m) for m in moduli]):
        _key(vec)
    n = q.ngens
    arr = np.empty((size, 2 * n), dtype=np.int32)
    for vec, idx in vectors.items():
        for g, name in enumerate(q.alphabet.names):
            plus = tuple((vec[i] + img[name][i]) % moduli[i] for i in range(len(moduli)))
            minus = tuple((vec[i] - img[name][i]) % moduli[i] for i in range(len(moduli)))
            arr[idx, 2 * g] = _key(plus)
            arr[idx, 2 * g + 1] = _key(minus)
    table = CosetTable(q, arr, ()).standardized()
    table.validate()
    return table


def _rotation_groups(relators, ncols):
    """Distinct cyclic rotations of the relators, grouped by first column."""
    seen = set()
    by_col: list[list[tuple[int, ...]]] = [[] for _ in range(ncols)]
    for r in relators:
        cols = _word_cols(r)
        if not cols:
            continue
        for s in range(len(cols)):
            rot = tuple(cols[s:] + cols[:s])
            if rot in seen:
                continue
            seen.add(rot)
            by_col[rot[0]].append(rot)
    return by_col


def _rotation_arrays(relators, ncols):
    by_col = _rotation_groups(relators, ncols)
    rots: list[tuple[int, ...]] = []
    col_rot_idx: list[int] = []
    col_rot_off = [0]
    for col in range(ncols):
        for rot in by_col[col]:
            col_rot_idx.append(len(rots))
            rots.append(rot)
        col_rot_off.append(len(col_rot_idx))
    rot_flat: list[int] = []
    rot_off = [0]
    for rot in rots:
        rot_flat.extend(rot)
        rot_off.append(len(rot_flat))
    return (
        np.array(rot_flat, dtype=np.int32),
        np.array(rot_off, dtype=np.int32),
        np.array(col_rot_idx, dtype=np.int32),
        np.array(col_rot_off, dtype=np.int32),
    )


class _Budget(Exception):
    pass


class _Felsch:
    """Deduction-driven coset enumeration with coincidence handling."""

    def __init__(self, q: Presentation, max_cosets: int):
        self.q = q
        self.ncols = 2 * q.ngens
        self.max_cosets = max_cosets
        self.table: list[list[int]] = [[-1] * self.ncols]
        self.parent = [0]
        self.ded: list[tuple[int, int]] = []
        self.rot_by_col = _rotation_groups(q.relators, self.ncols)

    def rep(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def _new_coset(self) -> int:
        if len(self.parent) >= self.max_cosets:
            raise _Budget
        self.table.append([-1] * self.ncols)
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def _set(self, c: int, col: int, d: int) -> None:
        self.table[c][col] = d
        self.table[d][col ^ 1] = c
        self.ded.append((c, col))
        self.ded.append((d, col ^ 1))

    def _merge(self, a: int, b: int, queue: list[int]) -> None:
        a, b = self.rep(a), self.rep(b)
        if a == b:
            return
        if a > b:
            a, b = b, a
        self.parent[b] = a
        queue.append(b)

    def _coincidence(self, a: int, b: int) -> None:
        queue: list[int] = []
        self._merge(a, b, queue)
        qi = 0
        while qi < len(queue):
            y = queue[qi]
            qi += 1
            for col in range(self.ncols):
                d = self.table[y][col]
                if d == -1:
                    continue
                self.table[y][col] = -1
                if self.table[d][col ^ 1] == y:
                    self.table[d][col ^ 1] = -1
                mu = self.rep(y)
                nu = self.rep(d)
                at_mu = self.table[mu][col]
                at_nu = self.table[nu][col ^ 1]
                if at_mu != -1:
                    self._merge(at_mu, nu, queue)
                elif at_nu != -1:
                    self._merge(at_nu, mu, queue)
                else:
                    self._set(mu, col, nu)

    def _scan(self, alpha: int, cols) -> None:
        c = alpha
        i = 0
        length = len(cols)
        while i < length:
            t = self.table[c][cols[i]]
            if t == -1:
                break
            c = t
            i += 1
        if i == length:
            if c != alpha:
                self._coincidence(c, alpha)
            return
        d = alpha
        j = length - 1
        while j >= i:
            t = self.table[d][cols[j] ^ 1]
            if t == -1:
                break
            d = t
            j -= 1
        if j == i:
            self._set(c, cols[i], d)
        elif j < i and c != d:
            self._coincidence(c, d)

    def process_deductions(self) -> None:
        while self.ded:
            c, col = self.ded.pop()
            c = self.rep(c)
            if self.table[c][col] == -1:
                continue
            for rot in self.rot_by_col[col]:
                self._scan(c, rot)

    def scan_and_fill(self, alpha: int, cols) -> None:
        length = len(cols)
        while True:
            a = self.rep(alpha)
            c = a
            i = 0
            while i < length:
                t = self.table[c][cols[i]]
                if t == -1:
                    break
                c = t
                i += 1
            if i == length:
                if c != a:
                    self._coincidence(c, a)
                return
            d = a
            j = length - 1
            while j >= i:
                t = self.table[d][cols[j] ^ 1]
                if t == -1:
                    break
                d = t
                j -= 1
            if j == i:
                self._set(c, cols[i], d)
                return
            if j < i:
                if c != d:
                    self._coincidence(c, d)
                return
            self._set(c, cols[i], self._new_coset())
            self.process_deductions()

    def run(self, subgroup_words) -> None:
        for w in subgroup_words:
            self.scan_and_fill(0, _word_cols(w))
            self.process_deductions()
        while True:
            target = None
            for c in range(len(self.parent)):
                if self.rep(c) != c:
                    continue
                for col in range(self.ncols):
                    if self.table[c][col] == -1:
                        target = (c, col)
                        break
                if target:
                    break
            if target is None:
                return
            c, col = target
            self._set(c, col, self._new_coset())
            self.process_deductions()

    def extract(self, subgens) -> CosetTable:
        live = [c for c in range(len(self.parent)) if self.rep(c) == c]
        renum = {c: i for i, c in enumerate(live)}
        arr = np.empty((len(live), self.ncols), dtype=np.int32)
        for c in live:
            for col in range(self.ncols):
                d = self.table[c][col]
                if d == -1:
                    raise EnumerationError("internal: incomplete table extracted")
                arr[renum[c], col] = renum[self.rep(d)]
        table = CosetTable(self.q, arr, tuple(subgens)).standardized()
        table.validate()
        return table


def todd_coxeter(q: Presentation, subgroup_words=(), max_cosets: int = 100_000):
    """Enumerate cosets of the subgroup generated by ``subgroup_words``.

    Returns a standardized :class:`CosetTable` when the enumeration
    completes within the coset budget, otherwise an :class:`Inconclusive`
    describing how far it got.  The budget counts every coset ever defined,
    including ones later merged away by coincidences.
    """
    if q.ngens < 1:
        raise EnumerationError("enumeration needs at least one generator")
    if max_cosets < 1:
        raise EnumerationError("coset budget must be positive")
    words = tuple(subgroup_words)
    for w in words:
        if not isinstance(w, Word) or w.alphabet != q.alphabet:
            raise EnumerationError("subgroup generators must be words over the presentation")
    engine = _Felsch(q, max_cosets)
    try:
        engine.run(words)
    except _Budget:
        return Inconclusive(
            reason=f"coset budget of {max_cosets} exhausted",
            cosets_used=len(engine.parent),
        )
    return engine.extract(words)


@dataclass
class SubgroupRecord:
    """One subgroup found by :func:`low_index`."""

    table: CosetTable
    index: int
    is_normal: bool
    _generators: tuple | None = field(default=None, repr=False, compare=False)

    @property
    def generators(self) -> tuple[Word, ...]:
        """Free generating words for the subgroup (computed on demand)."""
        if self._generators is None:
            from .rewriting import schreier_data

            self._generators = schreier_data(self.table).generators
        return self._generators


def low_index(q: Presentation, max_index: int, normal_only: bool = False):
    """All subgroups of index at most ``max_index``, one record each.

    Every subgroup appears exactly once, via its standardized coset table;
    records are sorted by (index, table bytes).  With ``normal_only`` the
    enumeration instead intersects kernels of surjections onto the built-in
    catalogue of groups of order at most 15; asking for a larger index in
    that mode raises :class:`CatalogueLimitError`.
    """
    if q.ngens < 1:
        raise EnumerationError("enumeration needs at least one generator")
    if max_index < 1:
        raise EnumerationError("max index must be positive")
    if normal_only:
        return _normal_subgroups(q, max_index)
    ncols = 2 * q.ngens
    rot_flat, rot_off, col_idx, col_off = _rotation_arrays(q.relators, ncols)
    rows, sizes = _kernels.low_index_tables(
        ncols, max_index, rot_flat, rot_off, col_idx, col_off
    )
    records = []
    start = 0
    for size in sizes:
        size = int(size)
        arr = rows[start : start + size].copy()
        start += size
        table = CosetTable(q, arr, ())
        table.validate()
        records.append(SubgroupRecord(table=table, index=size, is_normal=table.is_regular()))
    records.sort(key=lambda r: r.table.sort_key())
    return tuple(records)


# --- normal subgroups via surjections onto small groups ---------------------

# Every group of order at most 15, by a standard presentation.  Dihedral
# groups here have order 2n; dic3 is the dicyclic group of order 12.
_CATALOGUE: tuple[tuple[int, str, str, tuple[str, ...]], ...] = (
    (1, "c1", "a", ("a",)),
    (2, "c2", "a", ("a^2",)),
    (3, "c3", "a", ("a^3",)),
    (4, "c4", "a", ("a^4",)),
    (4, "c2xc2", "a b", ("a^2", "b^2", "a b a^-1 b^-1")),
    (5, "c5", "a", ("a^5",)),
    (6, "c6", "a", ("a^6",)),
    (6, "s3", "a b", ("a^3", "b^2", "(a b)^2")),
    (7, "c7", "a", ("a^7",)),
    (8, "c8", "a", ("a^8",)),
    (8, "c4xc2", "a b", ("a^4", "b^2", "a b a^-1 b^-1")),
    (8, "c2xc2xc2", "a b c", ("a^2", "b^2", "c^2", "a b a^-1 b^-1", "a c a^-1 c^-1", "b c b^-1 c^-1")),
    (8, "d4", "a b", ("a^4", "b^2", "(a b)^2")),
    (8, "q8", "a b", ("a^4", "a^2 b^-2", "b^-1 a b a")),
    (9, "c9", "a", ("a^9",)),
    (9, "c3xc3", "a b", ("a^3", "b^3", "a b a^-1 b^-1")),
    (10, "c10", "a", ("a^10",)),
    (10, "d5", "a b", ("a^5", "b^2", "(a b)^2")),
    (11, "c11", "a", ("a^11",)),
    (12, "c12", "a", ("a^12",)),
    (12, "c6xc2", "a b", ("a^6", "b^2", "a b a^-1 b^-1")),
    (12, "d6", "a b", ("a^6", "b^2", "(a b)^2")),
    (12, "a4", "a b", ("a^2", "b^3", "(a b)^3")),
    (12, "dic3", "a b", ("a^6", "a^3 b^-2", "b^-1 a b a")),
    (13, "c13", "a", ("a^13",)),
    (14, "c14", "a", ("a^14",)),
    (14, "d7", "a b", ("a^7", "b^2", "(a b)^2")),
    (15, "c15", "a", ("a^15",)),
)


@lru_cache(maxsize=None)
def _catalogue_tables(order: int):
    """Multiplication and inverse tables for each group of the given order.

    Built from the catalogue presentations by enumerating over the trivial
    subgroup; element 0 is the identity.
    """
    from .presentations import presentation

    out = []
    for size, name, gens, rels in _CATALOGUE:
        if size != order:
            continue
        p = presentation(gens, rels)
        table = todd_coxeter(p, (), max_cosets=8 * size + 50)
        if isinstance(table, Inconclusive) or table.index != size:
            raise EnumerationError(f"internal: catalogue entry {name} failed to close")
        mult, inv = _regular_multiplication(table)
        out.append((name, mult, inv))
    return tuple(out)


def _regular_multiplication(table: CosetTable):
    """Multiplication and inverse tables from a regular coset table."""
    k = table.index
    ncols = table.array.shape[1]
    paths: list[list[int] | None] = [None] * k
    paths[0] = []
    order = [0]
    qi = 0
    while qi < len(order):
        c = order[qi]
        qi += 1
        for col in range(ncols):
            d = int(table.array[c, col])
            if paths[d] is None:
                paths[d] = paths[c] + [col]
                order.append(d)
    mult = np.empty((k, k), dtype=np.int32)
    for c in range(k):
        for d in range(k):
            x = c
            for col in paths[d]:
                x = int(table.array[x, col])
            mult[c, d] = x
    inv = np.empty(k, dtype=np.int32)
    for c in range(k):
        hits = np.nonzero(mult[c] == 0)[0]
        if len(hits) != 1:
            raise EnumerationError("internal: multiplication table is not a group")
        inv[c] = hits[0]
    return mult, inv


def _relator_arrays(q: Presentation):
    flat: list[int] = []
    off = [0]
    for r in q.relators:
        flat.extend(_word_cols(r))
        off.append(len(flat))
    return np.array(flat, dtype=np.int32), np.array(off, dtype=np.int32)


def _normal_subgroups(q: Presentation, max_index: int):
    if max_index > CATALOGUE_MAX_INDEX:
        raise CatalogueLimitError(
            f"normal-subgroup scan is limited to index {CATALOGUE_MAX_INDEX} "
            f"(the catalogue of target groups stops there); asked for {max_index}"
        )
    rel_flat, rel_off = _relator_arrays(q)
    found: dict[bytes, CosetTable] = {}
    for order in range(1, max_index + 1):
        if order ** q.ngens > _HOM_SEARCH_LIMIT:
            raise EnumerationError(
                f"homomorphism search space {order}^{q.ngens} is too large"
            )
        for _name, mult, inv in _catalogue_tables(order):
            images = _kernels.hom_tuples(q.ngens, rel_flat, rel_off, mult, inv)
            for row in images:
                arr = np.empty((order, 2 * q.ngens), dtype=np.int32)
                for g in range(q.ngens):
                    gi = int(row[g])
                    for x in range(order):
                        arr[x, 2 * g] = mult[x, gi]
                        arr[x, 2 * g + 1] = mult[x, int(inv[gi])]
                table = CosetTable(q, arr, ()).standardized()
                key = table.array.tobytes()
                if key not in found:
                    table.validate()
                    found[key] = table
    records = [
        SubgroupRecord(table=t, index=t.index, is_normal=True)
        for t in found.values()
    ]
    records.sort(key=lambda r: r.table.sort_key())
    return tuple(records)


def order_bound(
    q: Presentation,
    word: Word,
    cap: int | None = None,
    max_index: int = 5,
) -> OrderClaim:
    """Bound the residual order of a word by scanning finite quotients.

    Walks subgroups of increasing index, tracking the largest permutation
    order the word attains.  If ``cap`` (a structural bound the order must
    divide) is reached, the scan stops early and the claim is exact;
    otherwise the result is an at-least claim for the best value seen.
    Either way the attaining table is included as the witness.
    """
    if word.alphabet != q.alphabet:
        raise EnumerationError("word is over a different alphabet")
    if cap is not None and cap < 1:
        raise EnumerationError("cap must be a positive integer")
    best = 1
    best_table = trivial_table(q)
    if word.is_identity or cap == 1:
        return OrderClaim(word=word, kind=EXACT, value=1, evidence=Witness(best_table))
    for k in range(1, max_index + 1):
        for rec in low_index(q, k):
            if rec.index != k:
                continue
            order = rec.table.word_order(word)
            if cap is not None and order > cap:
                raise ClaimError(
                    f"word has order {order} in a quotient, above the stated cap {cap}"
                )
            if order > best:
                best = order
                best_table = rec.table
                if cap is not None and best == cap:
                    return OrderClaim(
                        word=word, kind=EXACT, value=best, evidence=Witness(best_table)
                    )
    return OrderClaim(word=word, kind=AT_LEAST, value=best, evidence=Witness(best_table))
