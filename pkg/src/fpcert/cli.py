"""Command-line front end with deterministic output and run manifests.

Exit codes: 0 success; 1 a certification gate is not met or a
verification fails; 2 invalid input; 3 inconclusive (a coset budget ran
out, or a request is beyond the built-in normal-subgroup catalogue).

Every subcommand takes ``--json`` for machine-readable output and
``--manifest PATH`` to record the run: command, arguments, digests of
every input file read and every output produced (stdout included), the
package version, the exit code, and the wall time.  Replaying the same
command on the same inputs reproduces the same output digests; the wall
time is metadata and takes no part in that.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .abelian import abelian_invariants, p_rank
from .certify import (
    CertificateError,
    GateError,
    canonical_json,
    certificates_to_json,
    certify_p_large,
    certify_pdef_one,
    certify_rg_positive,
    gradient_scan,
    load_certificates,
    verify_certificate,
)
from .claims import ClaimError, load_claims
from .corpus import DEFAULT_INSTANCES, CorpusError, get as corpus_get
from .enumeration import (
    CatalogueLimitError,
    CosetTable,
    EnumerationError,
    Inconclusive,
    low_index,
    todd_coxeter,
)
from .presentations import (
    PresentationError,
    deficiency,
    format_fraction,
    format_presentation,
    p_deficiency,
    parse_presentation,
    residual_deficiency,
)
from .profiles import profile_relators
from .rewriting import MODES, simplify, subgroup_presentation
from .words import WordError, format_word, parse_word, primitive_root, require_prime

EXIT_OK = 0
EXIT_GATE = 1
EXIT_INVALID = 2
EXIT_INCONCLUSIVE = 3

_INVALID_INPUT = (
    WordError,
    PresentationError,
    ClaimError,
    EnumerationError,
    CertificateError,
    CorpusError,
    OSError,
    json.JSONDecodeError,
)


class CliFailure(Exception):
    """Terminate the command with a specific exit code and message."""

    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _digest(data: bytes) -> str:
    return "sha256:" + hashlib.sha256(data).hexdigest()


class Run:
    """Collects stdout, input digests, and output digests for the manifest."""

    def __init__(self):
        self.lines: list[str] = []
        self.inputs: dict[str, str] = {}
        self.outputs: dict[str, str] = {}

    def emit(self, text: str = "") -> None:
        self.lines.append(text)

    def emit_json(self, doc) -> None:
        self.emit(json.dumps(doc, sort_keys=True, indent=2))

    def read_text(self, path) -> str:
        raw = Path(path).read_bytes()
        self.inputs[str(path)] = _digest(raw)
        return raw.decode()

    def write_text(self, path, text: str) -> None:
        data = text.encode()
        Path(path).write_bytes(data)
        self.outputs[str(path)] = _digest(data)

    def stdout_text(self) -> str:
        return "".join(line + "\n" for line in self.lines)


def _load_presentation(run: Run, path):
    return parse_presentation(run.read_text(path))


def _load_bindings(run: Run, args, q):
    if getattr(args, "claims", None) is None:
        return ()
    # read through the Run for the digest, parse through the library for
    # relative witness-file references
    run.read_text(args.claims)
    return load_claims(args.claims, q)


# --- subcommands --------------------------------------------------------


def cmd_pdef(args, run: Run) -> int:
    q = _load_presentation(run, args.file)
    p = require_prime(args.prime)
    bindings = _load_bindings(run, args, q)
    profiles = profile_relators(q, p, bindings)
    orders = [pr.k_claim.value if pr.k_claim is not None else None for pr in profiles]
    rdef = residual_deficiency(q, orders) if all(o is not None for o in orders) else None
    doc = {
        "deficiency": format_fraction(deficiency(q)),
        "p_deficiency": format_fraction(p_deficiency(q, p)),
        "prime": p,
        "residual_deficiency": None if rdef is None else format_fraction(rdef),
        "root_orders": orders,
    }
    if args.json:
        run.emit_json(doc)
        return EXIT_OK
    run.emit(f"def = {doc['deficiency']}")
    run.emit(f"def_{p} = {doc['p_deficiency']}")
    if rdef is None:
        missing = [i for i, o in enumerate(orders) if o is None]
        run.emit(
            "rdef needs a root order claim for relator(s) "
            + ", ".join(str(i) for i in missing)
        )
    else:
        run.emit(f"rdef = {doc['residual_deficiency']}")
    return EXIT_OK


def _claim_phrase(claim) -> str:
    if claim is None:
        return "none"
    how = "witnessed" if hasattr(claim.evidence, "table") else "asserted"
    return f"{claim.kind} {claim.value} ({how})"


def cmd_roots(args, run: Run) -> int:
    q = _load_presentation(run, args.file)
    rows = []
    if args.prime is None:
        for i, r in enumerate(q.relators):
            dec = primitive_root(r)
            rows.append(
                {
                    "relator": format_word(r),
                    "root": format_word(dec.whole_root),
                    "multiplicity": dec.multiplicity,
                }
            )
    else:
        p = require_prime(args.prime)
        bindings = _load_bindings(run, args, q)
        for pr in profile_relators(q, p, bindings):
            rows.append(
                {
                    "relator": format_word(pr.relator),
                    "root": format_word(pr.root),
                    "multiplicity": pr.multiplicity,
                    "p_exponent": pr.p_exponent,
                    "p_root": format_word(pr.p_root),
                    "root_claim": _claim_phrase(pr.k_claim),
                    "p_root_claim": _claim_phrase(pr.l_claim),
                }
            )
    if args.json:
        run.emit_json(rows)
        return EXIT_OK
    for i, row in enumerate(rows):
        line = f"relator {i}: {row['relator']} = ({row['root']})^{row['multiplicity']}"
        if "p_root" in row:
            line += (
                f"; p-part {args.prime}^{row['p_exponent']}"
                f", p-root {row['p_root']}"
                f"; root order {row['root_claim']}"
                f", p-root order {row['p_root_claim']}"
            )
        run.emit(line)
    return EXIT_OK


def cmd_subgroups(args, run: Run) -> int:
    q = _load_presentation(run, args.file)
    try:
        records = low_index(q, args.max_index, normal_only=args.normal)
    except CatalogueLimitError as exc:
        raise CliFailure(EXIT_INCONCLUSIVE, str(exc))
    counts: dict[int, int] = {}
    for rec in records:
        counts[rec.index] = counts.get(rec.index, 0) + 1
    doc = {
        "family": "normal" if args.normal else "all",
        "max_index": args.max_index,
        "counts": {str(k): counts.get(k, 0) for k in range(1, args.max_index + 1)},
        "total": len(records),
    }
    if args.json:
        run.emit_json(doc)
        return EXIT_OK
    for k in range(1, args.max_index + 1):
        run.emit(f"index {k}: {counts.get(k, 0)}")
    run.emit(f"total: {len(records)}")
    return EXIT_OK


def cmd_rewrite(args, run: Run) -> int:
    q = _load_presentation(run, args.file)
    words = tuple(
        parse_word(text.strip(), q.alphabet)
        for text in args.subgroup.split(",")
        if text.strip()
    )
    result = todd_coxeter(q, words, max_cosets=args.max_cosets)
    if isinstance(result, Inconclusive):
        raise CliFailure(
            EXIT_INCONCLUSIVE,
            f"{result.reason} ({result.cosets_used} cosets defined)",
        )
    mode = "orbit_reduced" if args.orbit_reduced else "full"
    sub = subgroup_presentation(result, mode=mode)
    if args.simplify:
        sub = simplify(sub)
    doc = {
        "index": result.index,
        "mode": mode,
        "generators": sub.ngens,
        "relators": len(sub.relators),
        "presentation": format_presentation(sub),
    }
    if args.json:
        run.emit_json(doc)
        return EXIT_OK
    run.emit(f"# index {result.index}, mode {mode}")
    run.emit(format_presentation(sub).rstrip("\n"))
    return EXIT_OK


def cmd_abelian(args, run: Run) -> int:
    q = _load_presentation(run, args.file)
    torsion, betti = abelian_invariants(q)
    doc = {"betti": betti, "torsion": list(torsion)}
    if args.prime is not None:
        p = require_prime(args.prime)
        doc["prime"] = p
        doc["p_rank"] = p_rank(q, p)
    if args.json:
        run.emit_json(doc)
        return EXIT_OK
    run.emit(f"betti = {betti}")
    run.emit("torsion = " + (" ".join(str(t) for t in torsion) if torsion else "none"))
    if args.prime is not None:
        run.emit(f"rank mod {doc['prime']} = {doc['p_rank']}")
    return EXIT_OK


def cmd_gradient(args, run: Run) -> int:
    q = _load_presentation(run, args.file)
    family = "normal" if args.normal else "all"
    try:
        scan = gradient_scan(q, p=args.prime, max_index=args.max_index, family=family)
    except CatalogueLimitError as exc:
        raise CliFailure(EXIT_INCONCLUSIVE, str(exc))
    samples = [
        {
            "index": s.index,
            "normal": s.is_normal,
            "rank_value": s.rank_value,
            "rank_upper": s.rank_upper,
            "quotient": format_fraction(s.quotient),
        }
        for s in scan.samples
    ]
    doc = {
        "prime": scan.prime,
        "family": scan.family,
        "max_index": scan.max_index,
        "samples": samples,
        "infimum": format_fraction(scan.infimum),
        "label": scan.label,
    }
    if args.json:
        run.emit_json(doc)
        return EXIT_OK
    for s in samples:
        flag = "normal" if s["normal"] else "      "
        upper = "" if s["rank_upper"] is None else f" (<= {s['rank_upper']} gens)"
        run.emit(
            f"index {s['index']} {flag} rank {s['rank_value']}{upper}"
            f" quotient {s['quotient']}"
        )
    run.emit(f"infimum = {doc['infimum']}")
    run.emit(f"# {scan.label}")
    return EXIT_OK


_MODES = {
    "rg": certify_rg_positive,
    "plarge": certify_p_large,
    "pdef-one": certify_pdef_one,
}


def cmd_certify(args, run: Run) -> int:
    q = _load_presentation(run, args.file)
    p = require_prime(args.prime)
    bindings = _load_bindings(run, args, q)
    builder = _MODES[args.mode]
    try:
        result = builder(q, p, bindings)
    except (GateError, ClaimError) as exc:
        raise CliFailure(EXIT_GATE, f"no certificate: {exc}")
    certs = result if isinstance(result, tuple) else (result,)
    text = certificates_to_json(certs)
    if args.output:
        run.write_text(args.output, text)
        for c in certs:
            run.emit(f"{c.claim}: {c.status} ({c.rule})")
        run.emit(f"wrote {len(certs)} certificate(s) to {args.output}")
    else:
        run.emit(text.rstrip("\n"))
    return EXIT_OK


def cmd_verify(args, run: Run) -> int:
    run.read_text(args.file)
    docs = load_certificates(args.file)
    results = []
    for doc in docs:
        ok = verify_certificate(doc)
        results.append({"claim": doc.get("claim", "?"), "ok": ok})
    all_ok = all(r["ok"] for r in results)
    if args.json:
        run.emit_json({"results": results, "all_ok": all_ok})
    else:
        for i, r in enumerate(results):
            run.emit(f"certificate {i} ({r['claim']}): " + ("ok" if r["ok"] else "FAILED"))
    return EXIT_OK if all_ok else EXIT_GATE


def cmd_corpus(args, run: Run) -> int:
    if args.action == "list":
        if args.json:
            run.emit_json(
                [
                    {
                        "name": e.name,
                        "family": e.family,
                        "prime": e.prime,
                        "generators": e.presentation.ngens,
                        "relators": len(e.presentation.relators),
                        "claims": len(e.bindings),
                        "params": e.params,
                        "expected": e.expected,
                        "notes": e.notes,
                    }
                    for e in DEFAULT_INSTANCES
                ]
            )
            return EXIT_OK
        for e in DEFAULT_INSTANCES:
            run.emit(
                f"{e.name}: family {e.family}, prime {e.prime}, "
                f"{e.presentation.ngens} generators, "
                f"{len(e.presentation.relators)} relators, "
                f"{len(e.bindings)} claims"
            )
        return EXIT_OK
    # emit
    if not args.name:
        raise CliFailure(EXIT_INVALID, "corpus emit needs an entry name")
    entry = corpus_get(args.name)
    outdir = Path(args.dir)
    outdir.mkdir(parents=True, exist_ok=True)
    pres_path = outdir / f"{entry.name}.pres"
    run.write_text(str(pres_path), format_presentation(entry.presentation))
    written = [str(pres_path)]
    if entry.bindings:
        claims_path = outdir / f"{entry.name}.claims.json"
        run.write_text(str(claims_path), canonical_json(entry.claims_json()))
        written.append(str(claims_path))
    if args.json:
        run.emit_json({"name": entry.name, "written": written})
    else:
        for path in written:
            run.emit(f"wrote {path}")
    return EXIT_OK


# --- argument parsing ----------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--manifest", metavar="PATH", help="write a run manifest")

    parser = argparse.ArgumentParser(
        prog="fpcert",
        description="invariants, order claims, and certificates for finitely presented groups",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pdef", parents=[common], help="deficiency invariants of a presentation")
    p.add_argument("file")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--claims", help="claims file for the residual deficiency")
    p.set_defaults(handler=cmd_pdef)

    p = sub.add_parser("roots", parents=[common], help="per-relator root profile")
    p.add_argument("file")
    p.add_argument("--prime", type=int)
    p.add_argument("--claims")
    p.set_defaults(handler=cmd_roots)

    p = sub.add_parser("subgroups", parents=[common], help="count subgroups by index")
    p.add_argument("file")
    p.add_argument("--max-index", type=int, required=True)
    p.add_argument("--normal", action="store_true")
    p.set_defaults(handler=cmd_subgroups)

    p = sub.add_parser("rewrite", parents=[common], help="subgroup presentation")
    p.add_argument("file")
    p.add_argument(
        "--subgroup",
        default="",
        help="comma-separated generator words of the subgroup",
    )
    p.add_argument("--orbit-reduced", action="store_true")
    p.add_argument("--simplify", action="store_true")
    p.add_argument("--max-cosets", type=int, default=100_000)
    p.set_defaults(handler=cmd_rewrite)

    p = sub.add_parser("abelian", parents=[common], help="abelianization invariants")
    p.add_argument("file")
    p.add_argument("--prime", type=int)
    p.set_defaults(handler=cmd_abelian)

    p = sub.add_parser("gradient", parents=[common], help="rank data over finite-index subgroups")
    p.add_argument("file")
    p.add_argument("--prime", type=int)
    p.add_argument("--max-index", type=int, default=4)
    p.add_argument("--normal", action="store_true")
    p.set_defaults(handler=cmd_gradient)

    p = sub.add_parser("certify", parents=[common], help="emit certificates")
    p.add_argument("file")
    p.add_argument("--prime", type=int, required=True)
    p.add_argument("--claims")
    p.add_argument("--mode", choices=sorted(_MODES), default="pdef-one")
    p.add_argument("--output", help="write certificates here instead of stdout")
    p.set_defaults(handler=cmd_certify)

    p = sub.add_parser("verify", parents=[common], help="replay certificates")
    p.add_argument("file")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("corpus", parents=[common], help="built-in example presentations")
    p.add_argument("action", choices=("list", "emit"))
    p.add_argument("name", nargs="?")
    p.add_argument("--dir", default=".")
    p.set_defaults(handler=cmd_corpus)

    return parser


def _write_manifest(path, args, run: Run, code: int, started: float, argv) -> None:
    doc = {
        "command": args.command,
        "arguments": list(argv),
        "version": __version__,
        "inputs": run.inputs,
        "outputs": {"stdout": _digest(run.stdout_text().encode()), **run.outputs},
        "exit_code": code,
        "wall_time_s": round(time.monotonic() - started, 6),
    }
    Path(path).write_text(json.dumps(doc, sort_keys=True, indent=2) + "\n")


def main(argv=None) -> int:
    parser = build_parser()
    if argv is None:
        argv = sys.argv[1:]
    args = parser.parse_args(argv)
    run = Run()
    started = time.monotonic()
    try:
        code = args.handler(args, run)
    except CliFailure as exc:
        print(str(exc), file=sys.stderr)
        code = exc.code
    except _INVALID_INPUT as exc:
        print(f"error: {exc}", file=sys.stderr)
        code = EXIT_INVALID
    text = run.stdout_text()
    if text:
        sys.stdout.write(text)
    if args.manifest:
        _write_manifest(args.manifest, args, run, code, started, argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
