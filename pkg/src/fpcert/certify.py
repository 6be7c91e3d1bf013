"""Certificates: conclusions about a presented group with replayable evidence.

A certificate records one conclusion (the ``claim``), the rule that
licenses it, the input presentation, the order claims the conclusion rests
on (split into replayable witnesses and open assumptions), and a payload
of derived data.  :func:`verify_certificate` re-derives everything from the
presentation and the claims and compares it field by field; any mismatch,
including a single altered byte in a witness table, makes verification
fail.

A certificate is ``unconditional`` exactly when its assumption list is
empty: every order claim it uses is then proven by an included finite
quotient.  Otherwise it is ``conditional`` on the listed assumptions.

Also here: :func:`gradient_scan` (finite-index rank data and the quotient
values that bound the rank-gradient infimum from above) and
:func:`check_supermultiplicativity` (the deficiency inequality replayed
over normal subgroups with both relator-lifting modes).
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .abelian import abelian_invariants, p_rank
from .claims import AT_LEAST, EXACT, ClaimError, binding_from_json
from .enumeration import low_index
from .presentations import (
    Presentation,
    format_fraction,
    format_presentation,
    p_deficiency,
    parse_presentation,
    residual_deficiency,
)
from .profiles import (
    Classification,
    claims_summary,
    classify,
    derive_P,
    inflate,
    profile_relators,
)
from .rewriting import subgroup_presentation
from .words import is_prime, require_prime

CERT_VERSION = "1"


class GateError(ValueError):
    """A numeric gate required by a certification route is not met."""


class CertificateError(ValueError):
    """A certificate document is structurally malformed."""


CLAIM_RG = "rank_gradient_positive"
CLAIM_P_LARGE = "p_large"
CLAIM_LARGE = "large"
CLAIM_FI_Z = "finite_index_z_surjection"
CLAIM_FI_P_LARGE = "finite_index_p_large_subgroup"
CLAIM_NO_TAU = "no_property_tau"
CLAIM_NO_T = "no_property_t"
CLAIM_NON_AMENABLE = "non_amenable"

RULES = {
    "reduced-defp-rank-gradient": (
        "Discard every relator whose p-root has image order strictly below "
        "its p-power part; if the remaining presentation has p-deficiency "
        "greater than 1, the presented group has positive rank gradient."
    ),
    "reduced-defp-p-large": (
        "Discard every relator whose p-root has image order strictly below "
        "its p-power part; if the remaining presentation has p-deficiency "
        "greater than 1, the group has a finite-index normal subgroup "
        "surjecting onto a free group of rank 2 (it is p-large).  The "
        "discarded relators can be restored as high p-th powers of their "
        "p-roots without losing the deficiency gate."
    ),
    "defp-one-strict-branch": (
        "For a presentation of p-deficiency exactly 1: if some relator's "
        "p-root has image order strictly below its p-power part, dropping "
        "those relators leaves p-deficiency above 1, so the group is "
        "p-large and its rank gradient is positive."
    ),
    "defp-one-residual-branch": (
        "For a presentation of p-deficiency exactly 1 in which every "
        "p-root image order equals its p-power part: if some root image "
        "order strictly exceeds that part, the residual deficiency "
        "computed from the root orders exceeds 1, so the group is large, "
        "has positive rank gradient, and has a finite-index p-large "
        "subgroup."
    ),
    "defp-one-balanced-branch": (
        "For a presentation of p-deficiency exactly 1 in which every root "
        "image order equals its relator's p-power part exactly, the group "
        "has a finite-index subgroup that surjects onto the integers."
    ),
    "largeness-annotations": (
        "Attached consequence of the branch conclusion: a group that is "
        "large or p-large, or that has a finite-index subgroup surjecting "
        "onto the integers, has neither Kazhdan's property nor the "
        "spectral-gap property for its finite quotients; in the large and "
        "p-large cases it is also non-amenable."
    ),
}

BRANCH_RULES = {
    1: "defp-one-strict-branch",
    2: "defp-one-residual-branch",
    3: "defp-one-balanced-branch",
}
BRANCH_CLAIMS = {
    1: (CLAIM_P_LARGE, CLAIM_RG, CLAIM_NO_TAU, CLAIM_NO_T, CLAIM_NON_AMENABLE),
    2: (
        CLAIM_LARGE,
        CLAIM_RG,
        CLAIM_FI_P_LARGE,
        CLAIM_NO_TAU,
        CLAIM_NO_T,
        CLAIM_NON_AMENABLE,
    ),
    3: (CLAIM_FI_Z, CLAIM_NO_TAU, CLAIM_NO_T),
}
ANNOTATION_CLAIMS = (CLAIM_NO_TAU, CLAIM_NO_T, CLAIM_NON_AMENABLE)


def _plain_text(q: Presentation) -> str:
    """Presentation text with comments stripped, for byte-stable payloads."""
    return format_presentation(Presentation(q.alphabet, q.relators))


@dataclass(frozen=True)
class Certificate:
    claim: str
    prime: int
    status: str
    rule: str
    presentation: Presentation
    assumptions: tuple
    payload: dict
    version: str = CERT_VERSION

    def to_json_dict(self) -> dict:
        return {
            "claim": self.claim,
            "prime": self.prime,
            "status": self.status,
            "basis": {"rule": self.rule, "statement": RULES[self.rule]},
            "presentation": _plain_text(self.presentation),
            "assumptions": list(self.assumptions),
            "payload": self.payload,
            "version": self.version,
        }

    def canonical_json(self) -> str:
        return canonical_json(self.to_json_dict())


def canonical_json(doc) -> str:
    """Deterministic JSON: sorted keys, tight separators, trailing newline."""
    return json.dumps(doc, sort_keys=True, separators=(",", ":")) + "\n"


def certificates_to_json(certs) -> str:
    return canonical_json([c.to_json_dict() for c in certs])


def _status(assumed) -> str:
    return "unconditional" if not assumed else "conditional"


def _classification_doc(cls: Classification) -> dict:
    return {
        "plain": list(cls.plain),
        "saturated": list(cls.saturated),
        "strict": list(cls.strict),
    }


def _inflation_doc(q: Presentation, cls: Classification) -> dict:
    inf = inflate(q, cls)
    return {
        "presentation": _plain_text(inf.presentation),
        "epsilon": format_fraction(inf.epsilon),
        "exponent": inf.exponent,
    }


def _reduced_route(q: Presentation, p: int, bindings):
    profiles = profile_relators(q, p, bindings)
    cls = classify(profiles)
    reduced = derive_P(q, cls)
    dp = p_deficiency(reduced, p)
    return profiles, cls, reduced, dp


def certify_rg_positive(q: Presentation, p: int, bindings=()) -> Certificate:
    """Certificate that the group has positive rank gradient.

    Gate: the reduced presentation (strict relators dropped) must have
    p-deficiency above 1.  Raises :class:`GateError` otherwise.
    """
    profiles, cls, reduced, dp = _reduced_route(q, p, bindings)
    if dp <= 1:
        raise GateError(
            f"reduced presentation has p-deficiency {format_fraction(dp)}; "
            "this route needs a value above 1"
        )
    witnessed, assumed = claims_summary(profiles)
    payload = {
        "classification": _classification_doc(cls),
        "derived_presentation": _plain_text(reduced),
        "derived_p_deficiency": format_fraction(dp),
        "witnesses": witnessed,
    }
    return Certificate(
        claim=CLAIM_RG,
        prime=p,
        status=_status(assumed),
        rule="reduced-defp-rank-gradient",
        presentation=q,
        assumptions=tuple(assumed),
        payload=payload,
    )


def certify_p_large(q: Presentation, p: int, bindings=()) -> Certificate:
    """Certificate that the group is p-large, same gate as the rank-gradient
    route, plus the inflated presentation when strict relators were dropped."""
    profiles, cls, reduced, dp = _reduced_route(q, p, bindings)
    if dp <= 1:
        raise GateError(
            f"reduced presentation has p-deficiency {format_fraction(dp)}; "
            "this route needs a value above 1"
        )
    witnessed, assumed = claims_summary(profiles)
    payload = {
        "classification": _classification_doc(cls),
        "derived_presentation": _plain_text(reduced),
        "derived_p_deficiency": format_fraction(dp),
        "witnesses": witnessed,
    }
    if cls.strict:
        payload["inflated"] = _inflation_doc(q, cls)
    return Certificate(
        claim=CLAIM_P_LARGE,
        prime=p,
        status=_status(assumed),
        rule="reduced-defp-p-large",
        presentation=q,
        assumptions=tuple(assumed),
        payload=payload,
    )


def _deficiency_one_branch(q: Presentation, profiles, cls: Classification):
    """Pick the branch of the deficiency-one route from the claims.

    Returns ``(branch, root_lower_bounds, rdef)``; the last two are None
    for branch 1.  Raises :class:`ClaimError` when the claims cannot
    support any branch.
    """
    if cls.strict:
        return 1, None, None
    lower = []
    exceeds = False
    for pr in profiles:
        kc = pr.k_claim
        if kc is None:
            raise ClaimError(
                f"relator {pr.index} needs a root order claim for the "
                "deficiency-one route"
            )
        bound = kc.value if kc.kind in (EXACT, AT_LEAST) else 1
        lower.append(bound)
        if bound > pr.p_root_cap:
            exceeds = True
    if exceeds:
        return 2, lower, residual_deficiency(q, lower)
    for pr in profiles:
        kc = pr.k_claim
        if kc.kind != EXACT or kc.value != pr.p_root_cap:
            raise ClaimError(
                f"relator {pr.index}: the balanced branch needs the root "
                f"order pinned exactly to {pr.p_root_cap}, got "
                f"{kc.kind} {kc.value}"
            )
    caps = [pr.p_root_cap for pr in profiles]
    return 3, caps, residual_deficiency(q, caps)


def certify_pdef_one(q: Presentation, p: int, bindings=()) -> tuple[Certificate, ...]:
    """Certificates from a presentation of p-deficiency exactly 1.

    Three branches, decided by the order claims:

    1. some p-root order sits strictly below its p-power part: p-large and
       positive rank gradient;
    2. p-root orders all saturate but some root order exceeds them, and the
       residual deficiency from the root orders clears 1: large, positive
       rank gradient, and a finite-index p-large subgroup;
    3. every root order equals the p-power part exactly: the group has a
       finite-index subgroup surjecting onto the integers.

    Each conclusion (including the no-(T)/no-(tau)/non-amenability
    annotations) gets its own certificate; they share the payload.
    """
    require_prime(p)
    dp_q = p_deficiency(q, p)
    if dp_q != 1:
        raise GateError(
            f"presentation has p-deficiency {format_fraction(dp_q)}; "
            "this route needs exactly 1"
        )
    profiles = profile_relators(q, p, bindings)
    cls = classify(profiles)
    branch, lower, rdef = _deficiency_one_branch(q, profiles, cls)
    payload = {
        "p_deficiency": format_fraction(dp_q),
        "classification": _classification_doc(cls),
        "branch": branch,
    }
    if branch == 1:
        reduced = derive_P(q, cls)
        dp = p_deficiency(reduced, p)
        if dp <= 1:
            raise AssertionError(
                "internal: dropping strict relators from a deficiency-one "
                "presentation must leave p-deficiency above 1"
            )
        payload["derived_presentation"] = _plain_text(reduced)
        payload["derived_p_deficiency"] = format_fraction(dp)
        payload["inflated"] = _inflation_doc(q, cls)
    elif branch == 2:
        if rdef <= 1:
            raise GateError(
                f"residual deficiency {format_fraction(rdef)} from the root "
                "orders does not clear 1"
            )
        payload["root_orders"] = list(lower)
        payload["residual_deficiency"] = format_fraction(rdef)
    else:
        if rdef != 1:
            raise AssertionError(
                "internal: balanced branch must reproduce residual "
                "deficiency exactly 1"
            )
        payload["root_orders"] = list(lower)
        payload["residual_deficiency"] = format_fraction(rdef)
    witnessed, assumed = claims_summary(profiles)
    payload["witnesses"] = witnessed
    status = _status(assumed)
    certs = []
    for claim in BRANCH_CLAIMS[branch]:
        rule = (
            "largeness-annotations"
            if claim in ANNOTATION_CLAIMS
            else BRANCH_RULES[branch]
        )
        certs.append(
            Certificate(
                claim=claim,
                prime=p,
                status=status,
                rule=rule,
                presentation=q,
                assumptions=tuple(assumed),
                payload=payload,
            )
        )
    return tuple(certs)


# --- verification -----------------------------------------------------------

_SCHEMA_KEYS = (
    "claim",
    "prime",
    "status",
    "basis",
    "presentation",
    "assumptions",
    "payload",
    "version",
)


def load_certificates(path) -> list[dict]:
    """Read a certificate file: either one document or a list of them."""
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise CertificateError(f"cannot read certificate file: {exc}") from exc
    if isinstance(data, dict):
        return [data]
    if isinstance(data, list) and all(isinstance(d, dict) for d in data):
        return data
    raise CertificateError("certificate file must hold an object or a list of them")


def _check_schema(doc) -> None:
    if not isinstance(doc, dict):
        raise CertificateError("certificate must be a JSON object")
    missing = [k for k in _SCHEMA_KEYS if k not in doc]
    if missing:
        raise CertificateError(f"certificate is missing fields: {', '.join(missing)}")
    if not isinstance(doc["basis"], dict) or not {"rule", "statement"} <= doc["basis"].keys():
        raise CertificateError("certificate basis needs 'rule' and 'statement'")
    if not isinstance(doc["presentation"], str):
        raise CertificateError("certificate presentation must be text")
    if not isinstance(doc["assumptions"], list):
        raise CertificateError("certificate assumptions must be a list")
    if not isinstance(doc["payload"], dict):
        raise CertificateError("certificate payload must be an object")


def verify_certificate(source) -> bool:
    """Replay a certificate; True only if every derived field checks out.

    ``source`` may be a document dict or a path to a JSON file holding one
    document.  Structurally malformed documents raise
    :class:`CertificateError`; semantic mismatches return False.
    """
    if isinstance(source, (str, Path)):
        docs = load_certificates(source)
        if len(docs) != 1:
            raise CertificateError("expected a single certificate document")
        doc = docs[0]
    else:
        doc = source
    _check_schema(doc)
    try:
        return _verify(doc)
    except CertificateError:
        raise
    except (ValueError, KeyError, TypeError, IndexError, ArithmeticError):
        return False


def _verify(doc) -> bool:
    if doc["version"] != CERT_VERSION:
        return False
    claim = doc["claim"]
    rule = doc["basis"]["rule"]
    if rule not in RULES or doc["basis"]["statement"] != RULES[rule]:
        return False
    p = doc["prime"]
    if not isinstance(p, int) or not is_prime(p):
        return False
    status = doc["status"]
    if status not in ("unconditional", "conditional"):
        return False
    q = parse_presentation(doc["presentation"])
    payload = doc["payload"]

    witnesses = payload.get("witnesses", [])
    if not isinstance(witnesses, list):
        return False
    bindings = []
    for entry in list(doc["assumptions"]) + list(witnesses):
        bindings.append(binding_from_json(entry, None, q))
    profiles = profile_relators(q, p, bindings)
    # regenerate the claim documents from the replayed profiles; the stored
    # ones must match byte for byte, which pins every field down to the
    # witness tables themselves
    witnessed_docs, assumed_docs = claims_summary(profiles)
    if witnesses != witnessed_docs:
        return False
    if list(doc["assumptions"]) != assumed_docs:
        return False
    if (status == "unconditional") != (len(doc["assumptions"]) == 0):
        return False

    cls = classify(profiles)
    if payload.get("classification") != _classification_doc(cls):
        return False

    if rule in ("reduced-defp-rank-gradient", "reduced-defp-p-large"):
        expected = CLAIM_RG if rule == "reduced-defp-rank-gradient" else CLAIM_P_LARGE
        if claim != expected:
            return False
        reduced = derive_P(q, cls)
        dp = p_deficiency(reduced, p)
        if dp <= 1:
            return False
        if payload.get("derived_presentation") != _plain_text(reduced):
            return False
        if payload.get("derived_p_deficiency") != format_fraction(dp):
            return False
        if rule == "reduced-defp-p-large":
            if cls.strict:
                if payload.get("inflated") != _inflation_doc(q, cls):
                    return False
            elif "inflated" in payload:
                return False
        return True

    # deficiency-one family
    dp_q = p_deficiency(q, p)
    if dp_q != 1:
        return False
    if payload.get("p_deficiency") != format_fraction(dp_q):
        return False
    branch, lower, rdef = _deficiency_one_branch(q, profiles, cls)
    if payload.get("branch") != branch:
        return False
    if claim not in BRANCH_CLAIMS[branch]:
        return False
    if claim in ANNOTATION_CLAIMS:
        if rule != "largeness-annotations":
            return False
    elif rule != BRANCH_RULES[branch]:
        return False
    if branch == 1:
        reduced = derive_P(q, cls)
        dp = p_deficiency(reduced, p)
        if dp <= 1:
            return False
        if payload.get("derived_presentation") != _plain_text(reduced):
            return False
        if payload.get("derived_p_deficiency") != format_fraction(dp):
            return False
        if payload.get("inflated") != _inflation_doc(q, cls):
            return False
    else:
        if branch == 2 and rdef <= 1:
            return False
        if branch == 3 and rdef != 1:
            return False
        if payload.get("root_orders") != list(lower):
            return False
        if payload.get("residual_deficiency") != format_fraction(rdef):
            return False
    return True


# --- rank-gradient scanning -------------------------------------------------


@dataclass(frozen=True)
class GradientSample:
    """Rank data for one finite-index subgroup.

    Without a prime, ``rank_value`` is the lower bound (first Betti number
    plus number of torsion invariants of the abelianization) and
    ``rank_upper`` the generator count of the rewritten presentation.  With
    a prime, ``rank_value`` is the mod-p rank of the abelianization and
    ``rank_upper`` is None.
    """

    index: int
    is_normal: bool
    rank_value: int
    rank_upper: int | None
    quotient: Fraction


@dataclass(frozen=True)
class GradientScan:
    """Scan report; ``infimum`` is the smallest quotient over the scanned
    family, an upper bound for the corresponding gradient infimum (only over
    what was scanned, not over all finite-index subgroups)."""

    prime: int | None
    family: str
    max_index: int
    samples: tuple[GradientSample, ...]
    infimum: Fraction
    label: str


def gradient_scan(
    q: Presentation, p: int | None = None, max_index: int = 4, family: str = "all"
) -> GradientScan:
    """Scan subgroups up to ``max_index`` and report (rank - 1) / index.

    ``family`` is "all" or "normal".  With a prime the rank is the mod-p
    rank of each subgroup's abelianization; without one, the lower bound
    betti + torsion-count is used (with the rewritten presentation's
    generator count reported as the matching upper bound).
    """
    if family not in ("all", "normal"):
        raise ValueError(f"family must be 'all' or 'normal', got {family!r}")
    if p is not None:
        require_prime(p)
    records = low_index(q, max_index, normal_only=(family == "normal"))
    samples = []
    for rec in records:
        sub = subgroup_presentation(rec.table, mode="orbit_reduced")
        if p is not None:
            value = p_rank(sub, p)
            upper = None
        else:
            torsion, betti = abelian_invariants(sub)
            value = betti + len(torsion)
            upper = sub.ngens
        samples.append(
            GradientSample(
                index=rec.index,
                is_normal=rec.is_normal,
                rank_value=value,
                rank_upper=upper,
                quotient=Fraction(value - 1, rec.index),
            )
        )
    infimum = min(s.quotient for s in samples)
    kind = f"mod-{p} rank" if p is not None else "rank lower bound"
    label = (
        f"min of ({kind} - 1)/index over the {family} family up to index "
        f"{max_index}; an upper bound for that family's gradient infimum"
    )
    return GradientScan(
        prime=p,
        family=family,
        max_index=max_index,
        samples=tuple(samples),
        infimum=infimum,
        label=label,
    )


@dataclass(frozen=True)
class SuperSample:
    """One normal subgroup's normalized excess in both lifting modes."""

    index: int
    orbit_value: Fraction
    full_value: Fraction
    orbit_ok: bool
    full_ok: bool


@dataclass(frozen=True)
class SuperReport:
    prime: int
    max_index: int
    baseline: Fraction
    samples: tuple[SuperSample, ...]
    orbit_ok: bool
    full_divergences: tuple[int, ...]


def check_supermultiplicativity(
    q: Presentation, p: int, max_index: int = 4
) -> SuperReport:
    """Replay ``(def_p(H) - 1) >= [G:H] * (def_p(G) - 1)`` over normal subgroups.

    The orbit-reduced lift is the one the inequality holds for; the full
    lift piles on redundant relators and is expected to dip below the
    baseline.  Sample values are normalized: ``(def_p(H) - 1) / index``.
    """
    require_prime(p)
    baseline = p_deficiency(q, p) - 1
    samples = []
    divergences = []
    for rec in low_index(q, max_index, normal_only=True):
        orbit = subgroup_presentation(rec.table, mode="orbit_reduced")
        full = subgroup_presentation(rec.table, mode="full")
        ov = Fraction(p_deficiency(orbit, p) - 1, rec.index)
        fv = Fraction(p_deficiency(full, p) - 1, rec.index)
        sample = SuperSample(
            index=rec.index,
            orbit_value=ov,
            full_value=fv,
            orbit_ok=ov >= baseline,
            full_ok=fv >= baseline,
        )
        samples.append(sample)
        if not sample.full_ok:
            divergences.append(rec.index)
    return SuperReport(
        prime=p,
        max_index=max_index,
        baseline=baseline,
        samples=tuple(samples),
        orbit_ok=all(s.orbit_ok for s in samples),
        full_divergences=tuple(divergences),
    )
