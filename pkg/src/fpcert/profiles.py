"""Relator profiles: roots, p-power structure, and bound order claims.

Profiling a presentation at a prime p decomposes each relator r as
``u**m`` (primitive root, maximal multiplicity) and as ``w**(p**a)``
(p-root, maximal p-power).  Order claims about the images of u and w in
the residual quotient attach to these slots; missing claims with forced
values (multiplicity 1, or no p-part) are synthesized with an index-1
witness.

Classification then sorts relators into three bins by the claimed p-root
order against the structural cap ``p**a``:

* plain      -- no p-part at all (a == 0);
* saturated  -- p-root order equal to ``p**a``;
* strict     -- p-root order strictly below ``p**a``.

The derived presentation keeps the plain and saturated relators.  When
its p-deficiency exceeds 1, the strict relators can be re-inserted as
higher p-powers of their p-roots without giving the excess back; that is
:func:`inflate`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .claims import (
    AT_LEAST,
    EXACT,
    STRICTLY_LESS,
    TARGET_P_ROOT,
    TARGET_ROOT,
    ClaimBinding,
    ClaimError,
    OrderClaim,
    Witness,
    claim_is_proven,
    verify_claim,
)
from .presentations import Presentation, format_fraction, p_deficiency
from .words import Word, p_valuation, primitive_root, require_prime


class ProfileError(ValueError):
    """A classification or inflation request that cannot be satisfied."""


@dataclass(frozen=True)
class RelatorProfile:
    """Root and p-root data for one relator, with any bound claims.

    ``root ** multiplicity == relator`` and
    ``p_root ** (prime ** p_exponent) == relator`` hold literally (the
    roots are conjugated back to make that so).
    """

    index: int
    relator: Word
    root: Word
    multiplicity: int
    p_root: Word
    prime: int
    p_exponent: int
    k_claim: OrderClaim | None
    l_claim: OrderClaim | None

    @property
    def root_cap(self) -> int:
        """The root's image order divides the multiplicity."""
        return self.multiplicity

    @property
    def p_root_cap(self) -> int:
        """The p-root's image order divides the p-power part."""
        return self.prime**self.p_exponent


def _resolve_claim(
    binding: ClaimBinding | None, word: Word, cap: int, q: Presentation
) -> OrderClaim | None:
    if binding is None:
        return None
    if binding.kind == EXACT and cap % binding.value != 0:
        raise ClaimError(
            f"exact order {binding.value} does not divide the structural cap {cap}"
        )
    if binding.kind == AT_LEAST and binding.value > cap:
        raise ClaimError(
            f"at-least order {binding.value} exceeds the structural cap {cap}"
        )
    if binding.kind == STRICTLY_LESS and binding.value > cap:
        raise ClaimError(
            f"strictly-less bound {binding.value} sits above the cap {cap} "
            "and carries no information"
        )
    claim = OrderClaim(
        word=word, kind=binding.kind, value=binding.value, evidence=binding.evidence
    )
    verify_claim(claim, q)
    return claim


def profile_relators(
    q: Presentation, p: int, bindings=()
) -> tuple[RelatorProfile, ...]:
    """Profile every relator of ``q`` at the prime ``p``.

    ``bindings`` attach order claims to (relator, target) slots; duplicate
    slots are an error.  Claims are checked for structural consistency
    (orders divide their caps) and witness evidence is replayed.
    """
    require_prime(p)
    by_slot: dict[tuple[int, str], ClaimBinding] = {}
    for b in bindings:
        if not isinstance(b, ClaimBinding):
            raise ClaimError("bindings must be ClaimBinding instances")
        if not 0 <= b.relator < len(q.relators):
            raise ClaimError(f"claim binds relator {b.relator}, which does not exist")
        slot = (b.relator, b.target)
        if slot in by_slot:
            raise ClaimError(f"two claims bound to relator {b.relator} {b.target}")
        by_slot[slot] = b

    trivial = None

    def _trivial_witness():
        nonlocal trivial
        if trivial is None:
            from .enumeration import trivial_table

            trivial = Witness(trivial_table(q))
        return trivial

    profiles = []
    for i, r in enumerate(q.relators):
        dec = primitive_root(r)
        root = dec.whole_root
        m = dec.multiplicity
        val = p_valuation(r, p)
        a = val.exponent
        p_root = val.root
        k_claim = _resolve_claim(by_slot.pop((i, TARGET_ROOT), None), root, m, q)
        l_claim = _resolve_claim(by_slot.pop((i, TARGET_P_ROOT), None), p_root, p**a, q)
        if k_claim is None and m == 1:
            k_claim = OrderClaim(
                word=root, kind=EXACT, value=1, evidence=_trivial_witness()
            )
        if l_claim is None and a == 0:
            l_claim = OrderClaim(
                word=p_root, kind=EXACT, value=1, evidence=_trivial_witness()
            )
        profiles.append(
            RelatorProfile(
                index=i,
                relator=r,
                root=root,
                multiplicity=m,
                p_root=p_root,
                prime=p,
                p_exponent=a,
                k_claim=k_claim,
                l_claim=l_claim,
            )
        )
    return tuple(profiles)


@dataclass(frozen=True)
class Classification:
    """Relator indices binned by claimed p-root order against the cap."""

    prime: int
    profiles: tuple[RelatorProfile, ...]
    plain: tuple[int, ...]
    saturated: tuple[int, ...]
    strict: tuple[int, ...]


def classify(profiles) -> Classification:
    """Bin relators as plain, saturated, or strict; raise if claims fall short.

    A relator with a p-part needs a usable p-root claim: an exact value (at
    the cap or below it), an at-least value that reaches the cap (which pins
    the order, since the order divides the cap), or a strictly-less bound.
    An at-least value below the cap decides nothing and is rejected.
    """
    profiles = tuple(profiles)
    if not profiles:
        return Classification(prime=2, profiles=(), plain=(), saturated=(), strict=())
    prime = profiles[0].prime
    plain, saturated, strict = [], [], []
    for pr in profiles:
        if pr.prime != prime:
            raise ClaimError("profiles mix different primes")
        if pr.p_exponent == 0:
            plain.append(pr.index)
            continue
        cap = pr.p_root_cap
        lc = pr.l_claim
        if lc is None:
            raise ClaimError(
                f"relator {pr.index} has p-power part {cap} but no p-root order claim"
            )
        if lc.kind == EXACT:
            (saturated if lc.value == cap else strict).append(pr.index)
        elif lc.kind == AT_LEAST:
            if lc.value == cap:
                saturated.append(pr.index)
            else:
                raise ClaimError(
                    f"relator {pr.index}: at-least {lc.value} below the cap {cap} "
                    "cannot settle the classification"
                )
        else:
            strict.append(pr.index)
    return Classification(
        prime=prime,
        profiles=profiles,
        plain=tuple(plain),
        saturated=tuple(saturated),
        strict=tuple(strict),
    )


def derive_P(q: Presentation, classification: Classification) -> Presentation:
    """The reduced presentation: plain and saturated relators only."""
    keep = sorted(classification.plain + classification.saturated)
    return Presentation(q.alphabet, tuple(q.relators[i] for i in keep))


@dataclass(frozen=True)
class Inflation:
    """Strict relators re-inserted as ``p_root ** (p ** exponent)``.

    ``epsilon`` is the excess p-deficiency of the reduced presentation;
    ``exponent`` is the least b with ``len(strict) / p**b < epsilon``, which
    keeps the inflated presentation's p-deficiency above 1.
    """

    presentation: Presentation
    epsilon: Fraction
    exponent: int


def inflate(q: Presentation, classification: Classification) -> Inflation:
    """Rebuild ``q`` with every strict relator raised to a high p-power."""
    cls = classification
    p = cls.prime
    if not cls.strict:
        raise ProfileError("nothing to inflate: no strict relators")
    reduced = derive_P(q, cls)
    epsilon = p_deficiency(reduced, p) - 1
    if epsilon <= 0:
        raise ProfileError(
            "reduced presentation has p-deficiency "
            f"{format_fraction(epsilon + 1)}; inflation needs it above 1"
        )
    count = len(cls.strict)
    b = 1
    while Fraction(count, p**b) >= epsilon:
        b += 1
    by_index = {pr.index: pr for pr in cls.profiles}
    relators = list(q.relators)
    for i in cls.strict:
        relators[i] = by_index[i].p_root ** (p**b)
    inflated = Presentation(q.alphabet, tuple(relators))
    check = p_deficiency(inflated, p)
    if check <= 1:
        raise AssertionError(
            f"internal: inflated presentation has p-deficiency {check}"
        )
    return Inflation(presentation=inflated, epsilon=epsilon, exponent=b)


def claims_summary(profiles) -> tuple[list[dict], list[dict]]:
    """Split the claims attached to the profiles into (witnessed, assumed).

    Returns JSON-ready claim documents.  A claim lands in the first list
    only when its evidence proves it outright (see
    :func:`fpcert.claims.claim_is_proven`); everything else, including
    witness-backed claims whose exactness is not pinned by the cap, goes to
    the assumption list.
    """
    from .claims import claim_to_json

    witnessed: list[dict] = []
    assumed: list[dict] = []
    for pr in profiles:
        for target, claim, cap in (
            (TARGET_ROOT, pr.k_claim, pr.root_cap),
            (TARGET_P_ROOT, pr.l_claim, pr.p_root_cap),
        ):
            if claim is None:
                continue
            doc = claim_to_json(pr.index, target, claim)
            if claim_is_proven(claim, cap):
                witnessed.append(doc)
            else:
                assumed.append(doc)
    return witnessed, assumed
