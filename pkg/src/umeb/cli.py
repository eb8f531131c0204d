"""Command-line front end emitting deterministic JSON reports.

Exit codes: 0 success (UMEB proven or supported), 1 extendable / search not
converged, 2 invalid input or rejected parameters, 3 I/O or format error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import channels, verifier
from .constructions import CertificationError, UmebCandidate, complete_deficit_one, icosahedron_umeb, tiles_umeb
from .io import FormatError, matrix_to_json, read_file
from .optimize import OptimizerConfig

SCHEMA = "umeb-report/1"
EXIT_OK, EXIT_EXTENDABLE, EXIT_INVALID, EXIT_IO = 0, 1, 2, 3

UMEB_PROVEN = "UMEB_PROVEN"
UMEB_EVIDENCE = "UMEB_EVIDENCE"
EXTENDABLE = "EXTENDABLE"
INVALID = "INVALID"

CONSTRUCTIONS = {"icosahedron": icosahedron_umeb, "tiles": tiles_umeb}


def default_restarts() -> int:
    return int(os.environ.get("UMEB_DEFAULT_RESTARTS", "100"))


def _jsonable(obj):
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, (np.floating, float)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return [float(obj.real), float(obj.imag)]
    return obj


def dumps(report: dict) -> str:
    return json.dumps(_jsonable(report), indent=2, sort_keys=True) + "\n"


def verify_candidate(candidate: UmebCandidate, cfg: OptimizerConfig) -> dict:
    """Full check of conditions (orthonormality, maximal entanglement, unextendibility)."""
    gram = verifier.gram_check(candidate)
    out = {"gram": gram.to_dict(), "certificates": {}}
    d, n = candidate.d, candidate.n
    if not gram.passes():
        out.update(verdict=INVALID, reason="members are not orthogonal unitaries")
        return out
    if n == d * d:
        out.update(verdict=INVALID, reason="full basis: the complement is empty")
        return out
    if n == d * d - 1:
        psi = complete_deficit_one(candidate)
        out.update(
            verdict=EXTENDABLE,
            label=verifier.PROOF,
            reason="d^2 - 1 members: the one-dimensional complement is maximally entangled",
            witness_state=matrix_to_json(psi),
        )
        return out
    comp = verifier.complement_of(candidate)
    skew = verifier.skew_certificate(candidate, comp)
    out["certificates"]["skew_odd"] = {"holds": skew.holds, "max_symmetric_part": skew.residual}
    if d == 4 and n == 12:
        tiles = verifier.tiles_form_check(candidate, comp)
        out["certificates"]["tiles_form"] = {"holds": tiles.holds, "projection_residual": tiles.residual}
    report, label = verifier.verify_unextendibility(candidate, cfg)
    out["unextendibility"] = report.to_dict()
    if skew:
        out.update(verdict=UMEB_PROVEN, label=verifier.PROOF)
    elif report.extendable(cfg.tol):
        out.update(verdict=EXTENDABLE, label=verifier.EVIDENCE, witness_state=out["unextendibility"]["best_state"])
    else:
        out.update(verdict=UMEB_EVIDENCE, label=label)
    return out


def _optimizer_config(args) -> OptimizerConfig:
    restarts = args.restarts if args.restarts is not None else default_restarts()
    return OptimizerConfig(restarts=restarts, max_iters=args.max_iters, tol=args.tol, seed=args.seed)


def _resolve(args):
    """Candidate or density matrix named by ``--construction``/``--file``."""
    if args.file is not None or args.construction == "file":
        if args.file is None:
            raise FormatError("--construction file needs --file PATH")
        data = read_file(args.file)
        if "rho" in data:
            return data
        return {"candidate": UmebCandidate(data["d"], tuple(data["members"]), data["label"])}
    return {"candidate": CONSTRUCTIONS[args.construction]()}


def _header(args, cfg: OptimizerConfig) -> dict:
    return {
        "schema": SCHEMA,
        "command": args.command,
        "construction": "file" if args.file is not None else args.construction,
        "input": Path(args.file).name if args.file is not None else None,
        "config": cfg.to_dict(),
    }


def cmd_verify(args) -> tuple[int, dict]:
    cfg = _optimizer_config(args)
    out = _header(args, cfg)
    resolved = _resolve(args)
    if "candidate" not in resolved:
        raise FormatError("verify needs a candidate file, not a density matrix")
    out.update(verify_candidate(resolved["candidate"], cfg))
    code = {UMEB_PROVEN: EXIT_OK, UMEB_EVIDENCE: EXIT_OK, EXTENDABLE: EXIT_EXTENDABLE, INVALID: EXIT_INVALID}
    return code[out["verdict"]], out


def cmd_search(args) -> tuple[int, dict]:
    cfg = _optimizer_config(args)
    out = _header(args, cfg)
    out.update(construction=None, d=args.d, n=args.n)
    scfg = verifier.SearchConfig(max_rounds=args.max_rounds, optimizer=cfg)
    try:
        res = verifier.search_umeb(args.d, args.n, scfg, seed=args.seed)
    except ValueError as exc:
        out.update(status="rejected", reason=str(exc))
        return EXIT_INVALID, out
    out["phase1"] = {"converged": res.converged, "rounds": res.rounds, "gram_residual": res.gram_residual}
    out["members"] = [matrix_to_json(u) for u in res.members]
    if not res.converged:
        out["status"] = "search_failed"
        return EXIT_EXTENDABLE, out
    out["status"] = "converged"
    out["unextendibility"] = res.report.to_dict()
    out["label"] = verifier.EVIDENCE
    out["extendable"] = res.report.extendable(cfg.tol)
    return EXIT_OK, out


def cmd_channel(args) -> tuple[int, dict]:
    cfg = _optimizer_config(args)
    out = _header(args, cfg)
    resolved = _resolve(args)
    if "candidate" in resolved:
        cand = resolved["candidate"]
        if not verifier.gram_check(cand).passes() or cand.n >= cand.d**2:
            out.update(verdict=INVALID, reason="candidate has no valid complement state")
            return EXIT_INVALID, out
        rho = channels.complement_state(cand)
        out["landau_streater"] = channels.landau_streater_equivalence(cand) if cand.d == 3 else None
    else:
        rho = resolved["rho"]
        out["landau_streater"] = None
    try:
        report = channels.channel_report(rho, cfg)
    except CertificationError as exc:
        out.update(verdict=INVALID, reason=str(exc))
        return EXIT_INVALID, out
    out["channel_report"] = report.to_dict()
    return EXIT_OK, out


def cmd_eoa(args) -> tuple[int, dict]:
    cfg = _optimizer_config(args)
    out = _header(args, cfg)
    resolved = _resolve(args)
    if "candidate" not in resolved:
        raise FormatError("eoa needs a candidate file, not a density matrix")
    cand = resolved["candidate"]
    if not verifier.gram_check(cand).passes() or cand.n >= cand.d**2:
        out.update(verdict=INVALID, reason="candidate has no valid complement state")
        return EXIT_INVALID, out
    bound = channels.one_copy_eoa_upper_bound(cand, cfg)
    asym = channels.asymptotic_eoa(channels.complement_state(cand))
    out.update(
        one_copy_bound_bits=bound.bits,
        one_copy_bound_tag=bound.tag,
        asymptotic_bits=asym,
        gap_bits=asym - bound.bits,
    )
    return EXIT_OK, out


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--construction", choices=["icosahedron", "tiles", "file"], default="icosahedron")
    common.add_argument("--file", help="candidate or density-matrix JSON file")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--restarts", type=int, default=None, help="default: $UMEB_DEFAULT_RESTARTS or 100")
    common.add_argument("--max-iters", type=int, default=500)
    common.add_argument("--tol", type=float, default=1e-6)
    common.add_argument("--out", help="write the JSON report here instead of stdout")

    parser = argparse.ArgumentParser(prog="umeb", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("verify", parents=[common], help="check a candidate basis")
    p = sub.add_parser("search", parents=[common], help="look for new candidates")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--max-rounds", type=int, default=5000)
    sub.add_parser("channel", parents=[common], help="channel built from the complement state")
    sub.add_parser("eoa", parents=[common], help="entanglement of assistance of the complement state")
    return parser


COMMANDS = {"verify": cmd_verify, "search": cmd_search, "channel": cmd_channel, "eoa": cmd_eoa}


def run(argv=None) -> tuple[int, str, str | None]:
    """Parse ``argv`` and run the command; returns ``(exit_code, json_text, out_path)``."""
    args = build_parser().parse_args(argv)
    if args.restarts is not None and args.restarts < 1:
        return EXIT_INVALID, dumps({"schema": SCHEMA, "error": "--restarts must be >= 1"}), args.out
    if not 0 < args.tol < 1:
        return EXIT_INVALID, dumps({"schema": SCHEMA, "error": "--tol must lie in (0, 1)"}), args.out
    try:
        code, report = COMMANDS[args.command](args)
    except (OSError, FormatError) as exc:
        return EXIT_IO, dumps({"schema": SCHEMA, "command": args.command, "error": str(exc)}), args.out
    except ValueError as exc:
        # candidate constructor rejects shapes or normalization
        err = {"schema": SCHEMA, "command": args.command, "verdict": INVALID, "error": str(exc)}
        return EXIT_INVALID, dumps(err), args.out
    return code, dumps(report), args.out


def main(argv=None) -> int:
    code, text, out = run(argv)
    if out is None:
        sys.stdout.write(text)
        return code
    try:
        Path(out).write_text(text)
    except OSError as exc:
        print(f"umeb: cannot write {out}: {exc}", file=sys.stderr)
        return EXIT_IO
    return code


if __name__ == "__main__":
    sys.exit(main())
