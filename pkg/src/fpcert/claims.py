"""Claims about the order of a word in a residual quotient.

A claim states that the image of a word (always a relator root or a relator
p-root here) has order exactly ``value``, at least ``value``, or strictly
less than ``value``.  Evidence is either a finite quotient given as a coset
table (a *witness*) or a free-text justification (*asserted*).

What a witness can prove: the order of the induced permutation is a lower
bound on the order of the image in the residual quotient, so a witness
always proves an at-least claim.  It proves an exact claim only when the
claimed value already equals the structural cap for that root (the order
divides the cap, so attaining it pins the order down).  A strictly-less
claim can never be witnessed by a quotient and must be asserted.

Claims enter the system either bound to a relator index via a JSON file
(see :func:`load_claims`) or constructed directly by corpus builders.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .presentations import Presentation
from .words import Word, format_word

EXACT = "exact"
AT_LEAST = "at_least"
STRICTLY_LESS = "strictly_less"
KINDS = (EXACT, AT_LEAST, STRICTLY_LESS)

TARGET_ROOT = "root"
TARGET_P_ROOT = "p_root"
TARGETS = (TARGET_ROOT, TARGET_P_ROOT)


class ClaimError(ValueError):
    """A claim is malformed, inconsistent, or insufficient."""


@dataclass(frozen=True)
class Witness:
    """A finite quotient, as a coset table, exhibiting the claimed order."""

    table: object

    def __post_init__(self) -> None:
        if not hasattr(self.table, "word_order"):
            raise ClaimError("witness must be a coset table")


@dataclass(frozen=True)
class Asserted:
    """An unproven claim carried with its justification text."""

    note: str

    def __post_init__(self) -> None:
        if not isinstance(self.note, str) or not self.note.strip():
            raise ClaimError("asserted evidence needs a nonempty note")


@dataclass(frozen=True)
class OrderClaim:
    """A claim about the residual order of a specific word."""

    word: Word
    kind: str
    value: int
    evidence: Witness | Asserted

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ClaimError(f"unknown claim kind {self.kind!r}")
        if not isinstance(self.value, int) or self.value < 1:
            raise ClaimError("claim value must be a positive integer")
        if self.kind == STRICTLY_LESS:
            if self.value < 2:
                raise ClaimError("a strictly-less claim needs value >= 2")
            if isinstance(self.evidence, Witness):
                raise ClaimError(
                    "a strictly-less claim cannot be witnessed by a quotient"
                )
        if not isinstance(self.evidence, (Witness, Asserted)):
            raise ClaimError("evidence must be a witness table or an assertion")


def claim_is_proven(claim: OrderClaim, cap: int | None = None) -> bool:
    """Whether the evidence establishes the claim outright.

    ``cap`` is the structural bound the image order must divide (the root
    multiplicity for root claims, the p-power part for p-root claims).
    """
    if not isinstance(claim.evidence, Witness):
        return False
    if claim.kind == AT_LEAST:
        return True
    if claim.kind == EXACT:
        return cap is not None and claim.value == cap
    return False


def verify_claim(claim: OrderClaim, q: Presentation) -> None:
    """Check the evidence against the presentation; raise ClaimError if bad.

    For a witness this replays the induced permutation: an exact claim needs
    the permutation order to equal the value (an order above the value would
    refute the claim, one below it would leave the witness short), an
    at-least claim needs it to reach the value.
    """
    if claim.word.alphabet != q.alphabet:
        raise ClaimError("claim word is over a different alphabet")
    if isinstance(claim.evidence, Asserted):
        return
    table = claim.evidence.table
    if table.presentation != q:
        raise ClaimError("witness table is for a different presentation")
    order = table.word_order(claim.word)
    if claim.kind == EXACT and order != claim.value:
        raise ClaimError(
            f"witness gives order {order}, claim says exactly {claim.value}"
        )
    if claim.kind == AT_LEAST and order < claim.value:
        raise ClaimError(
            f"witness gives order {order}, claim needs at least {claim.value}"
        )


@dataclass(frozen=True)
class ClaimBinding:
    """A claim attached to a relator of a presentation by index and target.

    The target names which derived word the claim is about: the relator's
    primitive root or its p-root.  The word itself is resolved when the
    presentation is profiled.
    """

    relator: int
    target: str
    kind: str
    value: int
    evidence: Witness | Asserted

    def __post_init__(self) -> None:
        if not isinstance(self.relator, int) or self.relator < 0:
            raise ClaimError("relator index must be a nonnegative integer")
        if self.target not in TARGETS:
            raise ClaimError(f"unknown claim target {self.target!r}")
        if self.kind not in KINDS:
            raise ClaimError(f"unknown claim kind {self.kind!r}")
        if not isinstance(self.value, int) or self.value < 1:
            raise ClaimError("claim value must be a positive integer")


def _evidence_from_json(spec, base: Path | None, q: Presentation):
    if not isinstance(spec, dict) or "type" not in spec:
        raise ClaimError("evidence must be an object with a 'type' field")
    kind = spec["type"]
    if kind == "asserted":
        return Asserted(note=spec.get("note", ""))
    if kind == "witness":
        from .enumeration import CosetTable

        if "table" in spec:
            return Witness(table=CosetTable.from_json_dict(spec["table"], q))
        if "quotient" in spec:
            if base is None:
                raise ClaimError("witness file reference needs a base path")
            path = base / spec["quotient"]
            return Witness(table=CosetTable.from_json_file(path, q))
        raise ClaimError("witness evidence needs 'table' or 'quotient'")
    raise ClaimError(f"unknown evidence type {kind!r}")


def binding_from_json(entry, base: Path | None, q: Presentation) -> ClaimBinding:
    """Parse one claim object (as found in claims files and certificates)."""
    if not isinstance(entry, dict):
        raise ClaimError("each claim must be a JSON object")
    for key in ("relator", "target", "kind", "value", "evidence"):
        if key not in entry:
            raise ClaimError(f"claim is missing the {key!r} field")
    relator = entry["relator"]
    if not isinstance(relator, int) or not 0 <= relator < len(q.relators):
        raise ClaimError(f"relator index {relator!r} out of range")
    return ClaimBinding(
        relator=relator,
        target=entry["target"],
        kind=entry["kind"],
        value=entry["value"],
        evidence=_evidence_from_json(entry["evidence"], base, q),
    )


def load_claims(path, q: Presentation) -> tuple[ClaimBinding, ...]:
    """Load claim bindings from a JSON file.

    The file holds a list of objects with fields relator (index), target
    ("root" or "p_root"), kind, value, and evidence.  Witness evidence may
    inline a coset table under "table" or reference a quotient file under
    "quotient" (relative to the claims file).  Witness tables are validated
    on load; the order check happens when the claims are profiled against
    the presentation.
    """
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise ClaimError(f"claims file is not valid JSON: {exc}") from exc
    if not isinstance(data, list):
        raise ClaimError("claims file must hold a JSON list")
    return tuple(binding_from_json(entry, path.parent, q) for entry in data)


def evidence_to_json(evidence: Witness | Asserted) -> dict:
    """Serialize evidence with any witness table inlined."""
    if isinstance(evidence, Asserted):
        return {"type": "asserted", "note": evidence.note}
    return {"type": "witness", "table": evidence.table.to_json_dict()}


def binding_to_json(binding: ClaimBinding) -> dict:
    return {
        "relator": binding.relator,
        "target": binding.target,
        "kind": binding.kind,
        "value": binding.value,
        "evidence": evidence_to_json(binding.evidence),
    }


def claim_to_json(relator: int, target: str, claim: OrderClaim) -> dict:
    """Serialize a resolved claim back into binding form, word included."""
    doc = {
        "relator": relator,
        "target": target,
        "kind": claim.kind,
        "value": claim.value,
        "word": format_word(claim.word),
        "evidence": evidence_to_json(claim.evidence),
    }
    return doc
