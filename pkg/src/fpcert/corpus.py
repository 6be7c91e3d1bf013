"""A built-in corpus of presentations with claims and frozen expectations.

Each entry bundles a presentation, the prime it is meant to be studied at,
ready-made order-claim bindings, and an ``expected`` dictionary of values
the test suite replays against the library.  Claims are witnessed by an
explicit finite abelian quotient whenever such a quotient attains the
claimed order; otherwise they are carried as assertions with a short
justification, and every certificate built from them comes out
conditional.

Families:

* ``zee`` and ``dihedral_inf``: tiny sanity anchors (the integers and the
  infinite dihedral group).
* ``bs``: Baumslag-Solitar groups ``<a, b | a^-1 b^m a b^-n>``.
* ``bs_quotient``: a Baumslag-Solitar group with an extra stable letter
  and commutator words from its finite residual raised to finite powers.
  Those words die in every finite quotient, so their roots get residual
  order 1 and the relators classify as strict.
* ``wise``: a four-generator residually finite group built from the
  plane: two stable letters both conjugating a basis vector to the same
  element.  It carries a recursive family of words (:func:`wise_w`) that
  are nontrivial but vanish in every finite quotient.
* ``wise_quotient``: the free product of the above with an extra letter,
  with conjugated ``wise_w`` words raised to finite powers.
* ``coxeter``: reflection presentations ``a_i^2``, ``(a_i a_j)^{m_ij}``.
* ``p_coxeter``: a variant whose exponents are all powers of one prime,
  so a single elementary abelian quotient witnesses every order claim.
* ``gen_triangle``: ``<a, b | a^3, b^3, w^{3n}>`` for an alternating
  positive word ``w``.
* ``cpcpcq``: three generators, ``2p - 1`` relators ``v_i^p`` in the
  first two, and one mixed relator ``w^{pq}``; the claimed orders mix
  two primes and are all pinned by one abelian witness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction

from .claims import (
    EXACT,
    TARGET_P_ROOT,
    TARGET_ROOT,
    Asserted,
    ClaimBinding,
    Witness,
    binding_to_json,
)
from .enumeration import abelian_quotient_table
from .presentations import Presentation, format_fraction, presentation
from .words import (
    Alphabet,
    Word,
    commutator,
    format_word,
    parse_word,
    primitive_root,
    require_prime,
)


class CorpusError(ValueError):
    """Parameters outside a corpus family, or a witness that fails its check."""


@dataclass(frozen=True)
class CorpusEntry:
    """One corpus member: presentation, prime, claims, and expectations.

    ``expected`` maps invariant names to frozen values; the test suite
    recomputes each present key.  ``bindings`` are ready to hand to
    :func:`fpcert.profiles.profile_relators` or to the certificate
    builders.
    """

    name: str
    family: str
    params: dict
    presentation: Presentation
    prime: int | None
    bindings: tuple[ClaimBinding, ...] = ()
    expected: dict = field(default_factory=dict)
    notes: str = ""

    def claims_json(self) -> list[dict]:
        return [binding_to_json(b) for b in self.bindings]


# --- word families ----------------------------------------------------------


def moldavanskii_word(m: int, n: int, k: int, alphabet: Alphabet | None = None) -> Word:
    """The commutator ``[a^k b^d a^-k, b]`` with ``d = gcd(|m|, |n|)``.

    In ``<a, b | a^-1 b^m a b^-n>`` with ``|m|, |n| >= 2`` and
    ``|m| != |n|`` these words are nontrivial but have trivial image in
    every finite quotient, so their residual order is exactly 1.
    """
    if abs(m) < 2 or abs(n) < 2 or abs(m) == abs(n):
        raise CorpusError(
            "finite-residual words need |m| >= 2, |n| >= 2 and |m| != |n|"
        )
    if k < 1:
        raise CorpusError("the word index k must be at least 1")
    if alphabet is None:
        alphabet = Alphabet(("a", "b"))
    a = alphabet.gen(alphabet.index("a"))
    b = alphabet.gen(alphabet.index("b"))
    d = math.gcd(abs(m), abs(n))
    return commutator(a**k * b**d * a**-k, b)


def wise_w(i: int, alphabet: Alphabet | None = None) -> Word:
    """The ``i``-th member of a recursive family of commutators.

    The base word is ``[s(ab)s^-1, t(ab)t^-1]``; each later word is the
    commutator of the ``s``- and ``t``-conjugates of the product of the
    previous word's two halves.  In the group :func:`wise` presents these
    words are nontrivial yet die in every finite quotient.
    """
    if i < 0:
        raise CorpusError("the word index must be nonnegative")
    if alphabet is None:
        alphabet = Alphabet(("a", "b", "s", "t"))
    a, b, s, t = (alphabet.gen(alphabet.index(x)) for x in "abst")
    u1 = s * a * b * s.inverse()
    u2 = t * a * b * t.inverse()
    for _ in range(i):
        prod = u1 * u2
        u1 = s * prod * s.inverse()
        u2 = t * prod * t.inverse()
    return commutator(u1, u2)


# --- small builders ---------------------------------------------------------

_BRANCH_CLAIM_NAMES = {
    1: [
        "p_large",
        "rank_gradient_positive",
        "no_property_tau",
        "no_property_t",
        "non_amenable",
    ],
    2: [
        "large",
        "rank_gradient_positive",
        "finite_index_p_large_subgroup",
        "no_property_tau",
        "no_property_t",
        "non_amenable",
    ],
    3: ["finite_index_z_surjection", "no_property_tau", "no_property_t"],
}


def zee(name: str = "zee") -> CorpusEntry:
    q = presentation("x")
    expected = {
        "deficiency": "1/1",
        "p_deficiency": "1/1",
        "betti": 1,
        "torsion": [],
        "p_rank": 1,
        "root_orders": [],
        "residual_deficiency": "1/1",
        "branch": 3,
        "status": "unconditional",
        "claims": _BRANCH_CLAIM_NAMES[3],
    }
    return CorpusEntry(
        name=name,
        family="zee",
        params={},
        presentation=q,
        prime=2,
        expected=expected,
        notes="The infinite cyclic group; the smallest sanity anchor.",
    )


def dihedral_inf(name: str = "dihedral-inf") -> CorpusEntry:
    q = presentation("a b", ["a^2", "b^2"])
    witness = Witness(abelian_quotient_table(q, (2, 2), {"a": (1, 0), "b": (0, 1)}))
    bindings = []
    for i in range(2):
        bindings.append(ClaimBinding(i, TARGET_ROOT, EXACT, 2, witness))
        bindings.append(ClaimBinding(i, TARGET_P_ROOT, EXACT, 2, witness))
    expected = {
        "deficiency": "0/1",
        "p_deficiency": "1/1",
        "betti": 0,
        "torsion": [2, 2],
        "p_rank": 2,
        "root_orders": [2, 2],
        "residual_deficiency": "1/1",
        "branch": 3,
        "status": "unconditional",
        "claims": _BRANCH_CLAIM_NAMES[3],
    }
    return CorpusEntry(
        name=name,
        family="dihedral_inf",
        params={},
        presentation=q,
        prime=2,
        bindings=tuple(bindings),
        expected=expected,
        notes=(
            "The infinite dihedral group: amenable and virtually the "
            "integers.  The balanced branch applies (the index-2 "
            "translation subgroup maps onto the integers); fittingly, "
            "non-amenability is not among the emitted claims."
        ),
    )


def bs(m: int, n: int, name: str | None = None) -> CorpusEntry:
    """Baumslag-Solitar group ``BS(m, n) = <a, b | a^-1 b^m a b^-n>``."""
    if m == 0 or n == 0:
        raise CorpusError("BS(m, n) needs nonzero m and n")
    q = presentation("a b", [f"a^-1 b^{m} a b^{-n}"])
    if m == n:
        betti, torsion = 2, []
    else:
        betti = 1
        torsion = [abs(m - n)] if abs(m - n) > 1 else []
    expected = {
        "deficiency": "1/1",
        "p_deficiency": "1/1",
        "betti": betti,
        "torsion": torsion,
        "root_orders": [1],
        "residual_deficiency": "1/1",
        "branch": 3,
        "status": "unconditional",
        "claims": _BRANCH_CLAIM_NAMES[3],
    }
    return CorpusEntry(
        name=name or f"bs-{m}-{n}",
        family="bs",
        params={"m": m, "n": n},
        presentation=q,
        prime=2,
        expected=expected,
        notes=(
            "One relator that is not a proper power, so every claim slot "
            "fills itself with the trivial order and the balanced branch "
            "fires (the group itself maps onto the integers)."
        ),
    )


def _p_part(value: int, p: int) -> int:
    part = 1
    while value % p == 0:
        value //= p
        part *= p
    return part


_RESIDUAL_NOTE = (
    "the bracketed word lies in every finite-index subgroup of the base "
    "group, so each finite quotient sends it, and its conjugates here, to "
    "the identity"
)


def bs_quotient(
    m: int,
    n: int,
    p: int,
    indices: tuple[int, ...] | None = None,
    powers: tuple[int, ...] | None = None,
    name: str | None = None,
) -> CorpusEntry:
    """``BS(m, n)``, free product with ``<t>``, finite-residual words killed.

    The relators beyond the Baumslag-Solitar one are ``(t^-1 w_k t)^e``
    for the words of :func:`moldavanskii_word`; each exponent must be a
    multiple of ``p``.  Their roots have residual order 1 (asserted), so
    these relators classify as strict and the deficiency-one route takes
    its first branch when the p-deficiency lands exactly on 1.
    """
    require_prime(p)
    if indices is None:
        indices = tuple(range(1, p + 1))
    indices = tuple(indices)
    if powers is None:
        powers = (p,) * len(indices)
    powers = tuple(powers)
    if len(powers) != len(indices):
        raise CorpusError("need exactly one power per word index")
    if not indices or len(set(indices)) != len(indices):
        raise CorpusError("word indices must be nonempty and distinct")
    for e in powers:
        if e < 2 or e % p != 0:
            raise CorpusError(f"power {e} must be a multiple of {p} and at least 2")
    alphabet = Alphabet(("a", "b", "t"))
    a, b, t = alphabet.gens()
    relators = [a.inverse() * b**m * a * b**-n]
    bindings = []
    for j, (k, e) in enumerate(zip(indices, powers)):
        u = t.inverse() * moldavanskii_word(m, n, k, alphabet) * t
        relators.append(u**e)
        bindings.append(
            ClaimBinding(1 + j, TARGET_ROOT, EXACT, 1, Asserted(_RESIDUAL_NOTE))
        )
        bindings.append(
            ClaimBinding(1 + j, TARGET_P_ROOT, EXACT, 1, Asserted(_RESIDUAL_NOTE))
        )
    q = Presentation(alphabet, tuple(relators))
    dp = Fraction(2) - sum(Fraction(1, _p_part(e, p)) for e in powers)
    expected = {
        "deficiency": format_fraction(Fraction(3 - len(relators))),
        "p_deficiency": format_fraction(dp),
        "betti": 2,
        "torsion": [abs(m - n)] if abs(m - n) > 1 else [],
        "routes": {"rank_gradient": "conditional", "p_large": "conditional"},
        "derived_p_deficiency": "2/1",
    }
    if dp == 1:
        count = len(indices)
        b = 1
        while p**b <= count:
            b += 1
        expected.update(
            {
                "branch": 1,
                "status": "conditional",
                "claims": _BRANCH_CLAIM_NAMES[1],
                "inflation_exponent": b,
            }
        )
    return CorpusEntry(
        name=name or f"bs-quotient-{m}-{n}-p{p}",
        family="bs_quotient",
        params={"m": m, "n": n, "p": p, "indices": list(indices), "powers": list(powers)},
        presentation=q,
        prime=p,
        bindings=tuple(bindings),
        expected=expected,
        notes=(
            "Strict relators by construction: their roots die in every "
            "finite quotient, which no finite witness can show, so all "
            "certificates stay conditional."
        ),
    )


_WISE_RELATORS = (
    "a b a^-1 b^-1",
    "s^-1 a s b^-1 a^-1 b^-1 a^-1",
    "t^-1 b t b^-1 a^-1 b^-1 a^-1",
)


def wise(name: str = "wise") -> CorpusEntry:
    q = presentation("a b s t", _WISE_RELATORS)
    expected = {
        "deficiency": "1/1",
        "p_deficiency": "1/1",
        "betti": 2,
        "torsion": [3],
        "p_rank": 2,
        "root_orders": [1, 1, 1],
        "residual_deficiency": "1/1",
        "branch": 3,
        "status": "unconditional",
        "claims": _BRANCH_CLAIM_NAMES[3],
    }
    return CorpusEntry(
        name=name,
        family="wise",
        params={},
        presentation=q,
        prime=2,
        expected=expected,
        notes=(
            "Residually finite, with positive first Betti number.  No "
            "relator is a proper power, so the balanced branch fires "
            "unconditionally.  The recursive words wise_w(i) are "
            "nontrivial here yet vanish in every finite quotient, which "
            "is what wise_quotient exploits."
        ),
    )


def wise_quotient(
    p: int,
    indices: tuple[int, ...] = (0, 1, 2),
    powers: tuple[int, ...] | None = None,
    name: str | None = None,
) -> CorpusEntry:
    """:func:`wise` free product with ``<z>``, recursive words killed.

    Relators ``(z w_i z^-1)^e`` for ``w_i = wise_w(i)``; each exponent
    must be a multiple of ``p``.  The roots have residual order 1
    (asserted), the relators classify as strict, and the reduced
    presentation keeps p-deficiency 2.
    """
    require_prime(p)
    indices = tuple(indices)
    if powers is None:
        powers = (p,) * len(indices)
    powers = tuple(powers)
    if len(powers) != len(indices):
        raise CorpusError("need exactly one power per word index")
    if not indices or len(set(indices)) != len(indices):
        raise CorpusError("word indices must be nonempty and distinct")
    for e in powers:
        if e < 2 or e % p != 0:
            raise CorpusError(f"power {e} must be a multiple of {p} and at least 2")
    alphabet = Alphabet(("a", "b", "s", "t", "z"))
    z = alphabet.gen(4)
    relators = [parse_word(text, alphabet) for text in _WISE_RELATORS]
    bindings = []
    for j, (i, e) in enumerate(zip(indices, powers)):
        w = wise_w(i, alphabet)
        if primitive_root(w).multiplicity != 1:
            raise CorpusError(f"wise_w({i}) is unexpectedly a proper power")
        relators.append((z * w * z.inverse()) ** e)
        bindings.append(
            ClaimBinding(3 + j, TARGET_ROOT, EXACT, 1, Asserted(_RESIDUAL_NOTE))
        )
        bindings.append(
            ClaimBinding(3 + j, TARGET_P_ROOT, EXACT, 1, Asserted(_RESIDUAL_NOTE))
        )
    q = Presentation(alphabet, tuple(relators))
    dp = Fraction(2) - sum(Fraction(1, _p_part(e, p)) for e in powers)
    expected = {
        "deficiency": format_fraction(Fraction(5 - len(relators))),
        "p_deficiency": format_fraction(dp),
        "betti": 3,
        "torsion": [3],
        "routes": {"rank_gradient": "conditional", "p_large": "conditional"},
        "derived_p_deficiency": "2/1",
    }
    if dp == 1:
        count = len(indices)
        b = 1
        while p**b <= count:
            b += 1
        expected.update(
            {
                "branch": 1,
                "status": "conditional",
                "claims": _BRANCH_CLAIM_NAMES[1],
                "inflation_exponent": b,
            }
        )
    return CorpusEntry(
        name=name or f"wise-quotient-p{p}",
        family="wise_quotient",
        params={"p": p, "indices": list(indices), "powers": list(powers)},
        presentation=q,
        prime=p,
        bindings=tuple(bindings),
        expected=expected,
        notes=(
            "Same shape as bs_quotient but over a base group that is "
            "residually finite; the strict relators again rest on "
            "asserted trivial residual orders."
        ),
    )


# --- reflection-style families ----------------------------------------------


def _check_matrix(matrix) -> int:
    n = len(matrix)
    if n < 2 or any(len(row) != n for row in matrix):
        raise CorpusError("the exponent matrix must be square, at least 2x2")
    for i in range(n):
        if matrix[i][i] != 1:
            raise CorpusError("diagonal entries must be 1")
        for j in range(n):
            m = matrix[i][j]
            if m != matrix[j][i]:
                raise CorpusError("the exponent matrix must be symmetric")
            if i != j and m is not None and (not isinstance(m, int) or m < 2):
                raise CorpusError("off-diagonal entries must be integers >= 2 or None")
    return n


_REFLECTION_NOTE = (
    "the product of the two reflections has this exact order in the group, "
    "and reflection groups are residually finite, so some finite quotient "
    "attains it"
)
_TWO_PART_NOTE = (
    "the 2-part of the rotation order survives in the same finite quotient "
    "that preserves the rotation itself"
)


def coxeter(matrix, name: str | None = None) -> CorpusEntry:
    """Reflection presentation ``a_i^2``, ``(a_i a_j)^{m_ij}`` at prime 2.

    ``matrix`` is symmetric with 1 on the diagonal; ``None`` means no
    relation between the pair.  The witness quotient is the presented
    group's abelianization: one sign coordinate per component of the
    graph whose edges are the pairs with odd exponent.  It witnesses all
    generator claims, and a pair's 2-part of exactly 2 whenever the two
    generators land in different components; everything else is asserted.
    """
    n = _check_matrix(matrix)
    gens = [f"a{i + 1}" for i in range(n)]
    alphabet = Alphabet(gens)
    relators = [alphabet.gen(i) ** 2 for i in range(n)]
    orders = [2] * n
    pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            m = matrix[i][j]
            if m is None:
                continue
            relators.append((alphabet.gen(i) * alphabet.gen(j)) ** m)
            orders.append(m)
            pairs.append((i, j, m))
    q = Presentation(alphabet, tuple(relators))
    comp = list(range(n))

    def _find(x):
        while comp[x] != x:
            comp[x] = comp[comp[x]]
            x = comp[x]
        return x

    for i, j, m in pairs:
        if m % 2 == 1:
            comp[_find(i)] = _find(j)
    roots = sorted({_find(i) for i in range(n)})
    coord = {root: k for k, root in enumerate(roots)}
    images = {}
    for i, g in enumerate(gens):
        vec = [0] * len(roots)
        vec[coord[_find(i)]] = 1
        images[g] = tuple(vec)
    witness = Witness(abelian_quotient_table(q, (2,) * len(roots), images))
    bindings = []
    for i in range(n):
        bindings.append(ClaimBinding(i, TARGET_ROOT, EXACT, 2, witness))
        bindings.append(ClaimBinding(i, TARGET_P_ROOT, EXACT, 2, witness))
    for idx, (i, j, m) in enumerate(pairs, start=n):
        split = _find(i) != _find(j)
        if m == 2 and split:
            bindings.append(ClaimBinding(idx, TARGET_ROOT, EXACT, 2, witness))
            bindings.append(ClaimBinding(idx, TARGET_P_ROOT, EXACT, 2, witness))
            continue
        bindings.append(
            ClaimBinding(idx, TARGET_ROOT, EXACT, m, Asserted(_REFLECTION_NOTE))
        )
        part = _p_part(m, 2)
        if part == 1:
            continue  # odd order: the p-root slot fills itself
        if part == 2 and split:
            # the witness sends a_i a_j across components, to a vector of
            # order 2, exactly the 2-part here
            bindings.append(ClaimBinding(idx, TARGET_P_ROOT, EXACT, 2, witness))
        else:
            bindings.append(
                ClaimBinding(idx, TARGET_P_ROOT, EXACT, part, Asserted(_TWO_PART_NOTE))
            )
    dp = Fraction(n) - Fraction(n, 2) - sum(Fraction(1, _p_part(m, 2)) for _, _, m in pairs)
    rdef = Fraction(n) - Fraction(n, 2) - sum(Fraction(1, m) for _, _, m in pairs)
    expected = {
        "deficiency": format_fraction(Fraction(n - len(relators))),
        "p_deficiency": format_fraction(dp),
        "root_orders": orders,
        "residual_deficiency": format_fraction(rdef),
    }
    return CorpusEntry(
        name=name or f"coxeter-{n}gen",
        family="coxeter",
        params={"matrix": [list(row) for row in matrix]},
        presentation=q,
        prime=2,
        bindings=tuple(bindings),
        expected=expected,
        notes=(
            "Every generator claim is witnessed; pair claims of order "
            "above 2 are asserted on residual finiteness grounds."
        ),
    )


_P_POWER_NOTE = (
    "the full prime-power order is asserted; the included abelian witness "
    "only reaches the prime itself"
)


def p_coxeter(p: int, matrix, name: str | None = None) -> CorpusEntry:
    """Reflection-style presentation with all exponents powers of ``p``.

    For an ``n x n`` matrix the group has ``n - 1`` generators.  Row 1
    gives the generator orders ``x_k^{m_1,k+1}``; the pair ``(i, j)``
    with ``2 <= i < j`` contributes ``(x_{i-1} x_{j-1})^{m_ij}`` when
    ``i == 2`` and ``(x_{i-1}^-1 x_{j-1})^{m_ij}`` otherwise.  When every
    finite entry equals ``p`` the elementary abelian witness pins every
    claim and the balanced branch is unconditional.
    """
    require_prime(p)
    n = _check_matrix(matrix)
    for i in range(n):
        for j in range(n):
            m = matrix[i][j]
            if i != j and m is not None:
                reduced = m
                while reduced % p == 0:
                    reduced //= p
                if reduced != 1:
                    raise CorpusError(
                        f"entry {m} is not a power of the prime {p}"
                    )
    gens = [f"x{i}" for i in range(1, n)]
    alphabet = Alphabet(gens)
    relators = []
    claim_values = []
    for k in range(2, n + 1):
        m = matrix[0][k - 1]
        if m is None:
            continue
        relators.append(alphabet.gen(k - 2) ** m)
        claim_values.append(m)
    for i in range(2, n + 1):
        for j in range(i + 1, n + 1):
            m = matrix[i - 1][j - 1]
            if m is None:
                continue
            left = alphabet.gen(i - 2)
            if i != 2:
                left = left.inverse()
            relators.append((left * alphabet.gen(j - 2)) ** m)
            claim_values.append(m)
    if not relators:
        raise CorpusError("the matrix produced no relators")
    q = Presentation(alphabet, tuple(relators))
    images = {}
    for i, g in enumerate(gens):
        vec = [0] * len(gens)
        vec[i] = 1
        images[g] = tuple(vec)
    witness = Witness(abelian_quotient_table(q, (p,) * len(gens), images))
    bindings = []
    for idx, m in enumerate(claim_values):
        evidence = witness if m == p else Asserted(_P_POWER_NOTE)
        bindings.append(ClaimBinding(idx, TARGET_ROOT, EXACT, m, evidence))
        bindings.append(ClaimBinding(idx, TARGET_P_ROOT, EXACT, m, evidence))
    dp = Fraction(n - 1) - sum(Fraction(1, m) for m in claim_values)
    expected = {
        "deficiency": format_fraction(Fraction(n - 1 - len(relators))),
        "p_deficiency": format_fraction(dp),
        "root_orders": claim_values,
        "residual_deficiency": format_fraction(dp),
    }
    if dp == 1:
        status = "unconditional" if all(m == p for m in claim_values) else "conditional"
        expected.update(
            {"branch": 3, "status": status, "claims": _BRANCH_CLAIM_NAMES[3]}
        )
    return CorpusEntry(
        name=name or f"p-coxeter-{p}-{n - 1}gen",
        family="p_coxeter",
        params={"p": p, "matrix": [list(row) for row in matrix]},
        presentation=q,
        prime=p,
        bindings=tuple(bindings),
        expected=expected,
        notes=(
            "Every relator is a p-power of its root, so root and p-root "
            "claims coincide; the residual deficiency equals the "
            "p-deficiency."
        ),
    )


# --- triangle-style and mixed-prime families --------------------------------


def _check_triangle_word(w: Word) -> None:
    letters = w.letters
    if not letters:
        raise CorpusError("the triangle word must be nonempty")
    if any(s != 1 for _, s in letters):
        raise CorpusError("the triangle word must use positive letters only")
    syllables = []
    for g, _ in letters:
        if syllables and syllables[-1][0] == g:
            syllables[-1][1] += 1
        else:
            syllables.append([g, 1])
    if syllables[0][0] != 0 or syllables[-1][0] != 1:
        raise CorpusError("the triangle word must start with a and end with b")
    if any(count not in (1, 2) for _, count in syllables):
        raise CorpusError("each block must be a or a^2 (same for b)")
    if primitive_root(w).multiplicity != 1:
        raise CorpusError("the triangle word must not be a proper power")


_TRIANGLE_ORDER_NOTE = (
    "the defining exponent is asserted to be the word's residual order; "
    "the included abelian witness only reaches order 3"
)
_TRIANGLE_PART_NOTE = (
    "the full 3-part of the word's residual order is asserted; the "
    "included abelian witness only reaches order 3"
)


def gen_triangle(w_text: str = "ab", n: int = 2, name: str | None = None) -> CorpusEntry:
    """``<a, b | a^3, b^3, w^{3n}>`` at the prime 3, for ``n >= 2``.

    ``w`` must be an alternating positive word in blocks ``a``/``a^2``
    and ``b``/``b^2``, starting with an ``a``-block and ending with a
    ``b``-block, and must not be a proper power.
    """
    if n < 2:
        raise CorpusError("the exponent multiplier n must be at least 2")
    alphabet = Alphabet(("a", "b"))
    w = parse_word(w_text, alphabet)
    _check_triangle_word(w)
    relators = (alphabet.gen(0) ** 3, alphabet.gen(1) ** 3, w ** (3 * n))
    q = Presentation(alphabet, relators)
    witness = Witness(abelian_quotient_table(q, (3,), {"a": (1,), "b": (1,)}))
    bindings = [
        ClaimBinding(0, TARGET_ROOT, EXACT, 3, witness),
        ClaimBinding(0, TARGET_P_ROOT, EXACT, 3, witness),
        ClaimBinding(1, TARGET_ROOT, EXACT, 3, witness),
        ClaimBinding(1, TARGET_P_ROOT, EXACT, 3, witness),
        ClaimBinding(2, TARGET_ROOT, EXACT, 3 * n, Asserted(_TRIANGLE_ORDER_NOTE)),
    ]
    part = _p_part(3 * n, 3)
    d = (3 * n) // part
    image = d * sum(e for _, e in w.letters)
    if part == 3 and image % 3 != 0:
        bindings.append(ClaimBinding(2, TARGET_P_ROOT, EXACT, 3, witness))
    else:
        bindings.append(
            ClaimBinding(2, TARGET_P_ROOT, EXACT, part, Asserted(_TRIANGLE_PART_NOTE))
        )
    dp = Fraction(2) - Fraction(2, 3) - Fraction(1, part)
    rdef = Fraction(2) - Fraction(2, 3) - Fraction(1, 3 * n)
    expected = {
        "deficiency": "-1/1",
        "p_deficiency": format_fraction(dp),
        "betti": 0,
        "torsion": [3, 3],
        "p_rank": 2,
        "root_orders": [3, 3, 3 * n],
        "residual_deficiency": format_fraction(rdef),
    }
    if dp == 1:
        expected.update(
            {"branch": 2, "status": "conditional", "claims": _BRANCH_CLAIM_NAMES[2]}
        )
    return CorpusEntry(
        name=name or f"triangle-{w_text}-n{n}",
        family="gen_triangle",
        params={"w": w_text, "n": n},
        presentation=q,
        prime=3,
        bindings=tuple(bindings),
        expected=expected,
        notes=(
            "The generator claims are witnessed; the long relator's root "
            "order rests on an assertion, so the residual branch stays "
            "conditional."
        ),
    )


_DEFAULT_VS = {
    2: ("x1", "x2", "x1 x2"),
    3: ("x1", "x2", "x1 x2", "x1 x2^2", "x1^2 x2"),
}


def cpcpcq(
    p: int,
    q: int,
    vs: tuple[str, ...] | None = None,
    w_text: str = "x1 t",
    name: str | None = None,
) -> CorpusEntry:
    """Three generators, ``2p - 1`` relators ``v_i^p``, one ``w^{pq}``.

    ``p`` and ``q`` are distinct primes.  The ``v_i`` are words in
    ``x1, x2`` only, each primitive with image of order ``p`` in the
    reference quotient; ``w`` is primitive with image of order ``pq``.
    The reference quotient (the abelian group ``p x p x q`` with
    ``x1, x2, t`` on the coordinates) witnesses every claim, so all
    certificates come out unconditional.
    """
    require_prime(p)
    require_prime(q)
    if p == q:
        raise CorpusError("the two primes must be distinct")
    if vs is None:
        if p not in _DEFAULT_VS:
            raise CorpusError(
                f"no default first-prime words for p={p}; pass vs explicitly"
            )
        vs = _DEFAULT_VS[p]
    vs = tuple(vs)
    if len(vs) != 2 * p - 1:
        raise CorpusError(f"need exactly {2 * p - 1} words v_i, got {len(vs)}")
    alphabet = Alphabet(("x1", "x2", "t"))
    v_words = [parse_word(text, alphabet) for text in vs]
    w = parse_word(w_text, alphabet)
    for v in v_words:
        if any(g == 2 for g, _ in v.letters):
            raise CorpusError(f"{format_word(v)} must not involve t")
        if v.is_identity or primitive_root(v).multiplicity != 1:
            raise CorpusError(f"{format_word(v)} must be primitive")
    if w.is_identity or primitive_root(w).multiplicity != 1:
        raise CorpusError(f"{format_word(w)} must be primitive")
    relators = tuple(v**p for v in v_words) + (w ** (p * q),)
    pres = Presentation(alphabet, relators)
    table = abelian_quotient_table(
        pres, (p, p, q), {"x1": (1, 0, 0), "x2": (0, 1, 0), "t": (0, 0, 1)}
    )
    for v in v_words:
        if table.word_order(v) != p:
            raise CorpusError(
                f"{format_word(v)} has order {table.word_order(v)} in the "
                f"reference quotient; the family needs exactly {p}"
            )
    if table.word_order(w) != p * q:
        raise CorpusError(
            f"{format_word(w)} has order {table.word_order(w)} in the "
            f"reference quotient; the family needs exactly {p * q}"
        )
    witness = Witness(table)
    bindings = []
    for i in range(len(v_words)):
        bindings.append(ClaimBinding(i, TARGET_ROOT, EXACT, p, witness))
        bindings.append(ClaimBinding(i, TARGET_P_ROOT, EXACT, p, witness))
    last = len(v_words)
    bindings.append(ClaimBinding(last, TARGET_ROOT, EXACT, p * q, witness))
    bindings.append(ClaimBinding(last, TARGET_P_ROOT, EXACT, p, witness))
    rdef = Fraction(3) - Fraction(2 * p - 1, p) - Fraction(1, p * q)
    expected = {
        "deficiency": format_fraction(Fraction(3 - len(relators))),
        "p_deficiency": "1/1",
        "p_rank": 3,
        "root_orders": [p] * len(v_words) + [p * q],
        "residual_deficiency": format_fraction(rdef),
        "branch": 2,
        "status": "unconditional",
        "claims": _BRANCH_CLAIM_NAMES[2],
    }
    return CorpusEntry(
        name=name or f"cpcpcq-{p}-{q}",
        family="cpcpcq",
        params={"p": p, "q": q, "vs": list(vs), "w": w_text},
        presentation=pres,
        prime=p,
        bindings=tuple(bindings),
        expected=expected,
        notes=(
            "The one family here whose residual branch is fully witnessed: "
            "a single abelian quotient pins every root order, including the "
            "mixed order pq of the last relator."
        ),
    )


# --- registry ---------------------------------------------------------------

FAMILIES = {
    "zee": zee,
    "dihedral_inf": dihedral_inf,
    "bs": bs,
    "bs_quotient": bs_quotient,
    "wise": wise,
    "wise_quotient": wise_quotient,
    "coxeter": coxeter,
    "p_coxeter": p_coxeter,
    "gen_triangle": gen_triangle,
    "cpcpcq": cpcpcq,
}

_ALL3_4 = (
    (1, 3, 3, 3),
    (3, 1, 3, 3),
    (3, 3, 1, 3),
    (3, 3, 3, 1),
)


def _extend(entry: CorpusEntry, **extra) -> CorpusEntry:
    return replace(entry, expected={**entry.expected, **extra})


def default_instances() -> tuple[CorpusEntry, ...]:
    return (
        zee(),
        dihedral_inf(),
        bs(2, 3),
        bs_quotient(2, 3, 2),
        wise(),
        wise_quotient(2),
        _extend(
            coxeter(_ALL3_4, name="coxeter-4x4-3"),
            betti=0,
            torsion=[2],
            p_rank=1,
        ),
        _extend(
            p_coxeter(3, _ALL3_4, name="p-coxeter-3-4x4"),
            betti=0,
            torsion=[3, 3, 3],
            p_rank=3,
        ),
        gen_triangle("ab", 2),
        gen_triangle("ab", 3),
        gen_triangle("ab", 5),
        _extend(cpcpcq(2, 3), betti=0, torsion=[2, 2, 6]),
        _extend(cpcpcq(3, 2), betti=0, torsion=[3, 3, 6]),
    )


DEFAULT_INSTANCES = default_instances()


def get(name: str) -> CorpusEntry:
    for entry in DEFAULT_INSTANCES:
        if entry.name == name:
            return entry
    known = ", ".join(e.name for e in DEFAULT_INSTANCES)
    raise CorpusError(f"no corpus entry named {name!r}; known: {known}")
