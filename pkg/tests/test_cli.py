"""End-to-end checks of the command line: outputs, exit codes, manifests.

Most tests drive :func:`fpcert.cli.main` in-process and read captured
stdout; two subprocess tests make sure the installed entry points work.
"""

import hashlib
import json
import subprocess
import sys

import pytest

from fpcert.cli import main

F2_TEXT = "gens: a b\n"
DINF_TEXT = "gens: a b\nrel: a^2\nrel: b^2\n"
S3_TEXT = "gens: a b\nrel: a^2\nrel: b^3\nrel: (ab)^2\n"
BS23_TEXT = "gens: a b\nrel: a^-1 b^2 a b^-3\n"


@pytest.fixture
def files(tmp_path):
    paths = {}
    for stem, text in [
        ("f2", F2_TEXT),
        ("dinf", DINF_TEXT),
        ("s3", S3_TEXT),
        ("bs23", BS23_TEXT),
    ]:
        path = tmp_path / f"{stem}.pres"
        path.write_text(text)
        paths[stem] = str(path)
    paths["dir"] = tmp_path
    return paths


def run_cli(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def emit_corpus(capsys, tmp_path, name):
    code, _, _ = run_cli(capsys, "corpus", "emit", name, "--dir", str(tmp_path))
    assert code == 0
    pres = tmp_path / f"{name}.pres"
    claims = tmp_path / f"{name}.claims.json"
    return str(pres), (str(claims) if claims.exists() else None)


class TestPdef:
    def test_without_claims_names_missing_relators(self, capsys, files):
        code, out, _ = run_cli(capsys, "pdef", files["dinf"], "--prime", "2")
        assert code == 0
        assert "def = 0/1" in out
        assert "def_2 = 1/1" in out
        assert "rdef needs a root order claim for relator(s) 0, 1" in out

    def test_with_claims_reports_rdef(self, capsys, files, tmp_path):
        pres, claims = emit_corpus(capsys, tmp_path, "dihedral-inf")
        code, out, _ = run_cli(capsys, "pdef", pres, "--prime", "2", "--claims", claims)
        assert code == 0
        assert "rdef = 1/1" in out

    def test_json_runs_are_byte_identical(self, capsys, files):
        code1, out1, _ = run_cli(capsys, "pdef", files["dinf"], "--prime", "2", "--json")
        code2, out2, _ = run_cli(capsys, "pdef", files["dinf"], "--prime", "2", "--json")
        assert code1 == code2 == 0
        assert out1 == out2
        doc = json.loads(out1)
        assert doc["p_deficiency"] == "1/1"
        assert doc["root_orders"] == [None, None]

    def test_composite_prime_is_invalid_input(self, capsys, files):
        code, _, err = run_cli(capsys, "pdef", files["dinf"], "--prime", "4")
        assert code == 2
        assert "error:" in err

    def test_missing_file_is_invalid_input(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "pdef", str(tmp_path / "nope.pres"), "--prime", "2")
        assert code == 2
        assert "error:" in err

    def test_malformed_file_is_invalid_input(self, capsys, tmp_path):
        bad = tmp_path / "bad.pres"
        bad.write_text("a b\n")
        code, _, err = run_cli(capsys, "pdef", str(bad), "--prime", "2")
        assert code == 2
        assert "line 1" in err


class TestRoots:
    def test_plain_root_listing(self, capsys, files):
        code, out, _ = run_cli(capsys, "roots", files["s3"])
        assert code == 0
        assert "relator 0: a^2 = (a)^2" in out
        assert "relator 2: abab = (ab)^2" in out

    def test_profile_listing_with_prime(self, capsys, files, tmp_path):
        pres, claims = emit_corpus(capsys, tmp_path, "dihedral-inf")
        code, out, _ = run_cli(
            capsys, "roots", pres, "--prime", "2", "--claims", claims
        )
        assert code == 0
        assert "p-part 2^1" in out
        assert "root order exact 2 (witnessed)" in out


class TestSubgroups:
    def test_free_group_counts(self, capsys, files):
        code, out, _ = run_cli(
            capsys, "subgroups", files["f2"], "--max-index", "3", "--json"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["counts"] == {"1": 1, "2": 3, "3": 13}
        assert doc["total"] == 17

    def test_normal_family_text(self, capsys, files):
        code, out, _ = run_cli(
            capsys, "subgroups", files["f2"], "--max-index", "3", "--normal"
        )
        assert code == 0
        assert "index 2: 3" in out
        assert "index 3: 4" in out

    def test_normal_catalogue_limit_is_inconclusive(self, capsys, files):
        code, _, err = run_cli(
            capsys, "subgroups", files["f2"], "--max-index", "16", "--normal"
        )
        assert code == 3
        assert "catalogue" in err


class TestRewrite:
    def test_index_two_subgroup_of_s3(self, capsys, files):
        code, out, _ = run_cli(
            capsys, "rewrite", files["s3"], "--subgroup", "b", "--json"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["index"] == 2
        assert doc["mode"] == "full"

    def test_orbit_reduced_never_has_more_relators(self, capsys, files):
        _, full_out, _ = run_cli(
            capsys, "rewrite", files["s3"], "--subgroup", "b", "--json"
        )
        _, orbit_out, _ = run_cli(
            capsys, "rewrite", files["s3"], "--subgroup", "b", "--orbit-reduced", "--json"
        )
        full = json.loads(full_out)
        orbit = json.loads(orbit_out)
        assert orbit["relators"] <= full["relators"]
        assert orbit["generators"] == full["generators"]

    def test_budget_exhaustion_is_inconclusive(self, capsys, files):
        code, _, err = run_cli(
            capsys, "rewrite", files["bs23"], "--max-cosets", "50"
        )
        assert code == 3
        assert "cosets defined" in err


class TestAbelianAndGradient:
    def test_abelian_with_prime(self, capsys, files):
        code, out, _ = run_cli(capsys, "abelian", files["dinf"], "--prime", "2")
        assert code == 0
        assert "betti = 0" in out
        assert "torsion = 2 2" in out
        assert "rank mod 2 = 2" in out

    def test_gradient_quotients_for_free_group(self, capsys, files):
        code, out, _ = run_cli(
            capsys, "gradient", files["f2"], "--max-index", "3", "--json"
        )
        assert code == 0
        doc = json.loads(out)
        assert doc["infimum"] == "1/1"
        assert all(s["quotient"] == "1/1" for s in doc["samples"])


class TestCertifyAndVerify:
    def test_round_trip_via_files(self, capsys, tmp_path):
        pres, claims = emit_corpus(capsys, tmp_path, "dihedral-inf")
        cert_path = tmp_path / "certs.json"
        code, out, _ = run_cli(
            capsys,
            "certify",
            pres,
            "--prime",
            "2",
            "--claims",
            claims,
            "--output",
            str(cert_path),
        )
        assert code == 0
        assert "finite_index_z_surjection: unconditional" in out
        code, out, _ = run_cli(capsys, "verify", str(cert_path))
        assert code == 0
        assert "FAILED" not in out

    def test_tampered_certificate_fails_verification(self, capsys, tmp_path):
        pres, claims = emit_corpus(capsys, tmp_path, "dihedral-inf")
        cert_path = tmp_path / "certs.json"
        run_cli(capsys, "certify", pres, "--prime", "2", "--claims", claims,
                "--output", str(cert_path))
        docs = json.loads(cert_path.read_text())
        docs[0]["payload"]["p_deficiency"] = "2/1"
        cert_path.write_text(json.dumps(docs))
        code, out, _ = run_cli(capsys, "verify", str(cert_path))
        assert code == 1
        assert "FAILED" in out

    def test_gate_failure_exits_one(self, capsys, files):
        code, _, err = run_cli(capsys, "certify", files["f2"], "--prime", "2")
        assert code == 1
        assert err.startswith("no certificate:")

    def test_rg_mode_on_stdout(self, capsys, tmp_path):
        pres, claims = emit_corpus(capsys, tmp_path, "bs-quotient-2-3-p2")
        code, out, _ = run_cli(
            capsys, "certify", pres, "--prime", "2", "--claims", claims, "--mode", "rg"
        )
        assert code == 0
        docs = json.loads(out)
        assert docs[0]["claim"] == "rank_gradient_positive"
        assert docs[0]["status"] == "conditional"


class TestCorpus:
    def test_list_mentions_every_entry(self, capsys):
        code, out, _ = run_cli(capsys, "corpus", "list")
        assert code == 0
        for name in ("zee", "dihedral-inf", "wise", "cpcpcq-3-2"):
            assert name in out

    def test_emit_without_name_is_invalid(self, capsys):
        code, _, err = run_cli(capsys, "corpus", "emit")
        assert code == 2
        assert "needs an entry name" in err

    def test_emit_unknown_name_is_invalid(self, capsys, tmp_path):
        code, _, err = run_cli(capsys, "corpus", "emit", "nope", "--dir", str(tmp_path))
        assert code == 2
        assert "no corpus entry" in err


class TestManifest:
    def test_manifest_records_digests_and_arguments(self, capsys, files, tmp_path):
        man_path = tmp_path / "man.json"
        argv = ["pdef", files["dinf"], "--prime", "2", "--manifest", str(man_path)]
        code, out, _ = run_cli(capsys, *argv)
        assert code == 0
        doc = json.loads(man_path.read_text())
        assert doc["command"] == "pdef"
        assert doc["arguments"] == argv
        assert doc["exit_code"] == 0
        assert doc["wall_time_s"] >= 0
        in_digest = doc["inputs"][files["dinf"]]
        raw = open(files["dinf"], "rb").read()
        assert in_digest == "sha256:" + hashlib.sha256(raw).hexdigest()
        assert doc["outputs"]["stdout"] == (
            "sha256:" + hashlib.sha256(out.encode()).hexdigest()
        )

    def test_manifest_covers_written_files(self, capsys, tmp_path):
        pres, claims = emit_corpus(capsys, tmp_path, "dihedral-inf")
        cert_path = tmp_path / "certs.json"
        man_path = tmp_path / "man.json"
        code, _, _ = run_cli(
            capsys, "certify", pres, "--prime", "2", "--claims", claims,
            "--output", str(cert_path), "--manifest", str(man_path),
        )
        assert code == 0
        doc = json.loads(man_path.read_text())
        raw = cert_path.read_bytes()
        assert doc["outputs"][str(cert_path)] == (
            "sha256:" + hashlib.sha256(raw).hexdigest()
        )
        assert set(doc["inputs"]) == {pres, claims}

    def test_manifest_written_even_on_failure(self, capsys, files, tmp_path):
        man_path = tmp_path / "man.json"
        code, _, _ = run_cli(
            capsys, "certify", files["f2"], "--prime", "2",
            "--manifest", str(man_path),
        )
        assert code == 1
        doc = json.loads(man_path.read_text())
        assert doc["exit_code"] == 1


class TestEntryPoints:
    def test_module_invocation(self, tmp_path):
        pres = tmp_path / "dinf.pres"
        pres.write_text(DINF_TEXT)
        proc = subprocess.run(
            [sys.executable, "-m", "fpcert", "abelian", str(pres)],
            capture_output=True,
            text=True,
        )
        assert proc.returncode == 0
        assert "torsion = 2 2" in proc.stdout

    def test_console_script_version(self):
        proc = subprocess.run(
            ["fpcert", "--version"], capture_output=True, text=True
        )
        assert proc.returncode == 0
        assert proc.stdout.startswith("fpcert ")
