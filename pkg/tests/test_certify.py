"""Certificate builders, replay verification, and the scanning reports."""

import json
from fractions import Fraction

import pytest

from fpcert import (
    AT_LEAST,
    EXACT,
    TARGET_P_ROOT,
    TARGET_ROOT,
    Asserted,
    CertificateError,
    ClaimBinding,
    ClaimError,
    GateError,
    Witness,
    abelian_quotient_table,
    canonical_json,
    certificates_to_json,
    certify_p_large,
    certify_pdef_one,
    certify_rg_positive,
    check_supermultiplicativity,
    gradient_scan,
    load_certificates,
    parse_presentation,
    presentation,
    verify_certificate,
)

F2 = presentation("a b")
DINF = presentation("a b", ("a^2", "b^2"))
TRI6 = presentation("a b", ("a^3", "b^3", "(ab)^6"))

KLEIN = abelian_quotient_table(DINF, (2, 2), {"a": (1, 0), "b": (0, 1)})
C3 = abelian_quotient_table(TRI6, (3,), {"a": (1,), "b": (1,)})


def dinf_bindings():
    out = []
    for i in (0, 1):
        out.append(ClaimBinding(i, TARGET_ROOT, EXACT, 2, Witness(KLEIN)))
        out.append(ClaimBinding(i, TARGET_P_ROOT, EXACT, 2, Witness(KLEIN)))
    return out


def tri6_branch2_bindings():
    out = []
    for i in (0, 1):
        out.append(ClaimBinding(i, TARGET_ROOT, EXACT, 3, Witness(C3)))
        out.append(ClaimBinding(i, TARGET_P_ROOT, EXACT, 3, Witness(C3)))
    out.append(ClaimBinding(2, TARGET_ROOT, EXACT, 6, Asserted(note="assumed order")))
    out.append(ClaimBinding(2, TARGET_P_ROOT, EXACT, 3, Witness(C3)))
    return out


def tri6_branch1_bindings():
    out = [ClaimBinding(i, TARGET_P_ROOT, EXACT, 3, Witness(C3)) for i in (0, 1)]
    out.append(ClaimBinding(2, TARGET_P_ROOT, EXACT, 1, Asserted(note="assumed small")))
    return out


class TestDeficiencyOneBranches:
    def test_gate_requires_p_deficiency_one(self):
        with pytest.raises(GateError, match="exactly 1"):
            certify_pdef_one(F2, 2)

    def test_branch_three_unconditional(self):
        certs = certify_pdef_one(DINF, 2, dinf_bindings())
        assert [c.claim for c in certs] == [
            "finite_index_z_surjection",
            "no_property_tau",
            "no_property_t",
        ]
        assert all(c.status == "unconditional" for c in certs)
        assert certs[0].payload["branch"] == 3
        assert certs[0].payload["root_orders"] == [2, 2]
        assert certs[0].payload["residual_deficiency"] == "1/1"
        assert certs[0].assumptions == ()

    def test_branch_two_conditional(self):
        certs = certify_pdef_one(TRI6, 3, tri6_branch2_bindings())
        assert [c.claim for c in certs] == [
            "large",
            "rank_gradient_positive",
            "finite_index_p_large_subgroup",
            "no_property_tau",
            "no_property_t",
            "non_amenable",
        ]
        assert all(c.status == "conditional" for c in certs)
        payload = certs[0].payload
        assert payload["branch"] == 2
        assert payload["root_orders"] == [3, 3, 6]
        assert payload["residual_deficiency"] == "7/6"
        assert len(certs[0].assumptions) == 1

    def test_branch_one_inflates(self):
        certs = certify_pdef_one(TRI6, 3, tri6_branch1_bindings())
        assert [c.claim for c in certs] == [
            "p_large",
            "rank_gradient_positive",
            "no_property_tau",
            "no_property_t",
            "non_amenable",
        ]
        payload = certs[0].payload
        assert payload["branch"] == 1
        assert payload["derived_p_deficiency"] == "4/3"
        assert payload["inflated"]["exponent"] == 2
        inflated = parse_presentation(payload["inflated"]["presentation"])
        assert inflated.relators[2] == TRI6.word("(ab)^18")

    def test_branch_two_gate_on_residual_deficiency(self):
        q = presentation("a b", ("a^3", "b^6", "(ab)^6"))
        bindings = [
            ClaimBinding(0, TARGET_ROOT, EXACT, 3, Asserted(note="n")),
            ClaimBinding(0, TARGET_P_ROOT, EXACT, 3, Asserted(note="n")),
            ClaimBinding(1, TARGET_ROOT, EXACT, 2, Asserted(note="n")),
            ClaimBinding(1, TARGET_P_ROOT, EXACT, 3, Asserted(note="n")),
            ClaimBinding(2, TARGET_ROOT, EXACT, 6, Asserted(note="n")),
            ClaimBinding(2, TARGET_P_ROOT, EXACT, 3, Asserted(note="n")),
        ]
        with pytest.raises(GateError, match="does not clear 1"):
            certify_pdef_one(q, 3, bindings)

    def test_missing_root_claim_rejected(self):
        bindings = tri6_branch2_bindings()
        # drop the root claim for relator 2, keep its p-root claim
        del bindings[4]
        with pytest.raises(ClaimError, match="root order claim"):
            certify_pdef_one(TRI6, 3, bindings)

    def test_balanced_branch_needs_exact_roots(self):
        bindings = tri6_branch2_bindings()
        bindings[4] = ClaimBinding(2, TARGET_ROOT, EXACT, 3, Witness(C3))
        # now every claim is at its p-cap except relator 2's root (3 < cap 6
        # is fine) but the balanced branch needs k == p-part == 3: that holds,
        # so this actually lands in branch 3 with rdef 2 - 1/3 - 1/3 - 1/3 = 1
        certs = certify_pdef_one(TRI6, 3, bindings)
        assert certs[0].payload["branch"] == 3

    def test_at_least_roots_cannot_balance(self):
        bindings = tri6_branch2_bindings()
        bindings[4] = ClaimBinding(2, TARGET_ROOT, AT_LEAST, 3, Witness(C3))
        with pytest.raises(ClaimError, match="pinned exactly"):
            certify_pdef_one(TRI6, 3, bindings)


class TestReducedRoutes:
    def test_rank_gradient_route(self):
        cert = certify_rg_positive(TRI6, 3, tri6_branch1_bindings())
        assert cert.claim == "rank_gradient_positive"
        assert cert.rule == "reduced-defp-rank-gradient"
        assert cert.payload["derived_p_deficiency"] == "4/3"
        assert "inflated" not in cert.payload

    def test_p_large_route_inflates_strict(self):
        cert = certify_p_large(TRI6, 3, tri6_branch1_bindings())
        assert cert.claim == "p_large"
        assert cert.payload["inflated"]["epsilon"] == "1/3"

    def test_p_large_route_without_strict(self):
        q = presentation("a b", ("a^3",))
        bindings = [ClaimBinding(0, TARGET_P_ROOT, EXACT, 3, Asserted(note="n"))]
        cert = certify_p_large(q, 3, bindings)
        assert "inflated" not in cert.payload
        assert cert.payload["derived_p_deficiency"] == "5/3"

    def test_gate(self):
        with pytest.raises(GateError, match="above 1"):
            certify_rg_positive(DINF, 2, dinf_bindings())
        with pytest.raises(GateError, match="above 1"):
            certify_p_large(DINF, 2, dinf_bindings())


def all_example_certs():
    return (
        list(certify_pdef_one(DINF, 2, dinf_bindings()))
        + list(certify_pdef_one(TRI6, 3, tri6_branch2_bindings()))
        + list(certify_pdef_one(TRI6, 3, tri6_branch1_bindings()))
        + [
            certify_rg_positive(TRI6, 3, tri6_branch1_bindings()),
            certify_p_large(TRI6, 3, tri6_branch1_bindings()),
        ]
    )


class TestVerification:
    def test_replay_accepts_every_builder_output(self):
        for cert in all_example_certs():
            assert verify_certificate(cert.to_json_dict()) is True

    def test_json_roundtrip_through_file(self, tmp_path):
        cert = certify_pdef_one(DINF, 2, dinf_bindings())[0]
        path = tmp_path / "cert.json"
        path.write_text(cert.canonical_json())
        assert verify_certificate(path) is True
        docs = load_certificates(path)
        assert len(docs) == 1

    def test_canonical_json_is_stable(self):
        certs = certify_pdef_one(DINF, 2, dinf_bindings())
        assert certificates_to_json(certs) == certificates_to_json(
            certify_pdef_one(DINF, 2, dinf_bindings())
        )
        doc = json.loads(canonical_json({"b": 1, "a": 2}))
        assert doc == {"a": 2, "b": 1}

    def test_payload_tampering_is_caught(self):
        base = certify_pdef_one(TRI6, 3, tri6_branch2_bindings())[0].to_json_dict()
        tampered = json.loads(json.dumps(base))
        tampered["payload"]["residual_deficiency"] = "9/6"
        assert verify_certificate(tampered) is False

        tampered = json.loads(json.dumps(base))
        tampered["payload"]["root_orders"] = [3, 3, 12]
        assert verify_certificate(tampered) is False

        tampered = json.loads(json.dumps(base))
        tampered["payload"]["branch"] = 3
        assert verify_certificate(tampered) is False

    def test_status_must_match_assumptions(self):
        base = certify_pdef_one(TRI6, 3, tri6_branch2_bindings())[0].to_json_dict()
        tampered = json.loads(json.dumps(base))
        tampered["status"] = "unconditional"
        assert verify_certificate(tampered) is False

    def test_upgrading_an_assumption_is_caught(self):
        base = certify_pdef_one(TRI6, 3, tri6_branch2_bindings())[0].to_json_dict()
        tampered = json.loads(json.dumps(base))
        moved = tampered["assumptions"].pop()
        tampered["payload"]["witnesses"].append(moved)
        tampered["status"] = "unconditional"
        assert verify_certificate(tampered) is False

    def test_statement_text_is_checked(self):
        base = certify_pdef_one(DINF, 2, dinf_bindings())[0].to_json_dict()
        tampered = json.loads(json.dumps(base))
        tampered["basis"]["statement"] = tampered["basis"]["statement"].replace(
            "finite-index", "finite index"
        )
        assert verify_certificate(tampered) is False

    def test_version_mismatch(self):
        base = certify_pdef_one(DINF, 2, dinf_bindings())[0].to_json_dict()
        base["version"] = "0.0"
        assert verify_certificate(base) is False

    def test_malformed_documents_raise(self):
        base = certify_pdef_one(DINF, 2, dinf_bindings())[0].to_json_dict()
        incomplete = {k: v for k, v in base.items() if k != "payload"}
        with pytest.raises(CertificateError, match="missing"):
            verify_certificate(incomplete)
        with pytest.raises(CertificateError):
            verify_certificate("this is not even a path to a file")
        broken = json.loads(json.dumps(base))
        broken["assumptions"] = "none"
        with pytest.raises(CertificateError):
            verify_certificate(broken)
        broken = json.loads(json.dumps(base))
        broken["basis"] = {"rule": "reduced-defp-p-large"}
        with pytest.raises(CertificateError):
            verify_certificate(broken)

    def test_wrong_claim_for_branch(self):
        base = certify_pdef_one(DINF, 2, dinf_bindings())[0].to_json_dict()
        tampered = json.loads(json.dumps(base))
        tampered["claim"] = "large"
        assert verify_certificate(tampered) is False


class TestGradientScan:
    def test_free_group_quotients_are_one(self):
        scan = gradient_scan(F2, p=2, max_index=3)
        assert all(s.quotient == 1 for s in scan.samples)
        assert scan.infimum == 1
        assert len(scan.samples) == 17

    def test_dihedral_has_a_zero_quotient(self):
        scan = gradient_scan(DINF, p=2, max_index=2)
        assert scan.infimum == 0
        zero = [s for s in scan.samples if s.quotient == 0]
        assert zero and zero[0].index == 2

    def test_rankless_mode_reports_upper_bounds(self):
        scan = gradient_scan(F2, max_index=3)
        assert scan.prime is None
        for s in scan.samples:
            assert s.rank_upper == s.rank_value
        assert scan.infimum == 1

    def test_normal_family(self):
        scan = gradient_scan(DINF, p=2, max_index=4, family="normal")
        assert all(s.is_normal for s in scan.samples)
        assert scan.infimum == 0

    def test_family_validation(self):
        with pytest.raises(ValueError, match="family"):
            gradient_scan(F2, max_index=2, family="cosets")


class TestSupermultiplicativity:
    def test_free_group_baseline(self):
        report = check_supermultiplicativity(F2, 2, max_index=4)
        assert report.baseline == 1
        assert report.orbit_ok
        # free groups have no relators, so both modes coincide
        assert report.full_divergences == ()
        for s in report.samples:
            assert s.orbit_value == s.full_value == 1

    def test_dihedral_orbit_holds_full_diverges(self):
        report = check_supermultiplicativity(DINF, 2, max_index=4)
        assert report.baseline == 0
        assert report.orbit_ok
        assert len(report.full_divergences) > 0
        for s in report.samples:
            assert s.orbit_ok

    def test_values_match_modes(self):
        report = check_supermultiplicativity(DINF, 2, max_index=2)
        for s in report.samples:
            assert s.full_value <= s.orbit_value
