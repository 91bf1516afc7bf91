"""Command-line interface.

Exit codes: 0 pass, 1 predicate failure, 2 input or usage error,
3 internal-consistency error. Reports are JSON on stdout; every number in
them is an integer or an exact ``"p/q"`` string. Only the ``timings``
block varies between runs.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from fractions import Fraction

from .constructions import CONSTRUCTIONS
from .errors import (
    CoefficientBoxError,
    HypercoverError,
    InputError,
    InternalConsistencyError,
    NondegeneracyError,
    NotSlicingError,
)
from .family import (
    find_uncovered,
    find_unsliced_edge,
    find_violation,
    is_skew,
    planes_outside_box,
)
from .io import dump_family, format_fraction, parse_family, plane_to_record, vertex_to_list
from .reduction import reduce_slicing_to_cover
from .witness import format_trace, run_pipeline
from . import search as search_mod

EXIT_PASS, EXIT_FAIL, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3
THREADS_ENV = "HYPERCOVER_THREADS"

PREDICATES = ("cover", "skew", "nondegenerate", "slicing")
SEARCH_MODES = {
    "plain": search_mod.PLAIN,
    "punctured": search_mod.PUNCTURED,
    "skew": search_mod.SKEW,
    "nondegenerate": search_mod.NONDEGENERATE,
    "slicing": search_mod.SLICING,
}


class _Failed(Exception):
    """Predicate failure: carries the payload to print with exit code 1."""

    def __init__(self, payload):
        super().__init__("predicate failed")
        self.payload = payload


def _edge_to_dict(e):
    return {"base": vertex_to_list(e.endpoints[0]), "direction": e.direction}


def _load(path, digest_into):
    try:
        data = open(path, "rb").read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from exc
    digest_into.append("sha256:" + hashlib.sha256(data).hexdigest())
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise InputError(f"{path} is not UTF-8 text") from exc
    return parse_family(text.splitlines())


def _write_family(family, path):
    if path == "-":
        sys.stdout.write(dump_family(family))
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(dump_family(family))


# --- commands ---------------------------------------------------------------


def cmd_verify(args, digests):
    family = _load(args.file, digests)
    result = {"predicate": args.predicate, "n": family.dim, "size": len(family)}
    witness = None
    if args.predicate == "cover":
        v = find_uncovered(family)
        witness = None if v is None else {"uncovered_vertex": vertex_to_list(v)}
    elif args.predicate == "skew":
        bad = [k for k, h in enumerate(family) if not is_skew(h)]
        v = find_uncovered(family)
        if bad:
            witness = {"non_skew_plane": bad[0], "plane": plane_to_record(family[bad[0]])}
        elif v is not None:
            witness = {"uncovered_vertex": vertex_to_list(v)}
    elif args.predicate == "nondegenerate":
        viol = find_violation(family)
        if viol is not None:
            witness = {"vertex": vertex_to_list(viol.vertex), "direction": viol.direction}
    else:
        e = find_unsliced_edge(family)
        witness = None if e is None else {"unsliced_edge": _edge_to_dict(e)}
    result["witness"] = witness
    if witness is not None:
        raise _Failed(result)
    return result


def cmd_construct(args, digests):
    family = CONSTRUCTIONS[args.name](args.n)
    _write_family(family, args.out)
    return None if args.out == "-" else {"name": args.name, "n": args.n, "size": len(family)}


def _reduce(family, C):
    outside = planes_outside_box(family, C)
    if outside:
        k = outside[0]
        raise CoefficientBoxError(
            f"plane #{k} ({family[k]}) has max |coefficient| "
            f"{max(abs(a) for a in family[k].normal)} > C = {C}", plane=family[k], index=k)
    try:
        return reduce_slicing_to_cover(family, C)
    except NotSlicingError as exc:
        raise _Failed({"stage": "reduce", "error": str(exc),
                       "unsliced_edge": _edge_to_dict(exc.edge)}) from exc


def cmd_reduce(args, digests):
    family = _load(args.file, digests)
    reduced = _reduce(family, args.C)
    if args.out:
        _write_family(reduced, args.out)
    viol = find_violation(reduced)
    return {
        "n": family.dim,
        "C": args.C,
        "input_size": len(family),
        "reduced_size": len(reduced),
        "size_bound": 2 * args.C * len(family),
        "within_bound": len(reduced) <= 2 * args.C * len(family),
        "reduced_nondegenerate": viol is None,
        "reduced_family": [plane_to_record(h) for h in reduced],
    }


def cmd_witness(args, digests):
    family = _load(args.file, digests)
    try:
        report = run_pipeline(family)
    except NondegeneracyError as exc:
        v = exc.violation
        raise _Failed({"stage": "precondition", "error": str(exc),
                       "violation": {"vertex": vertex_to_list(v.vertex),
                                     "direction": v.direction}}) from exc
    if args.trace:
        print(format_trace(report), file=sys.stderr)
    return report.to_dict()


def cmd_end_to_end(args, digests):
    family = _load(args.file, digests)
    C = args.C
    try:
        reduced = _reduce(family, C)
    except CoefficientBoxError as exc:
        raise InputError(f"stage reduce: {exc}") from exc
    try:
        report = run_pipeline(reduced)
    except NondegeneracyError as exc:
        raise InternalConsistencyError(f"stage witness: reduced family {exc}") from exc
    n = family.dim
    half = (n + 1) // 2
    from_reduced = Fraction(len(reduced), 2 * C)
    lower = Fraction(half, 2 * C)
    chain_ok = len(family) >= from_reduced >= lower and len(reduced) >= half
    if args.trace:
        print(format_trace(report), file=sys.stderr)
    if not chain_ok:
        raise InternalConsistencyError("stage chain: inequality chain does not hold")
    return {
        "n": n,
        "C": C,
        "family_size": len(family),
        "reduced_size": len(reduced),
        "reduced_over_2C": format_fraction(from_reduced),
        "half_n_ceiling": half,
        "lower_bound": format_fraction(lower),
        "chain": (f"{len(family)} >= {len(reduced)}/{2 * C} >= {half}/{2 * C}"
                  f" = {format_fraction(lower)}"),
        "certified": chain_ok and report.certified,
        "witness": report.to_dict(),
    }


def cmd_search(args, digests):
    mode = SEARCH_MODES[args.mode]
    if mode in search_mod.BOX_MODES and args.C is None:
        raise InputError(f"--C is required for mode {args.mode}")
    problem, cands = search_mod.build_problem(args.n, mode, args.C)
    result = search_mod.solve(problem, cands, workers=args.threads)
    payload = result.to_dict()
    payload["lower_bound"] = search_mod.lower_bound(mode, args.n, args.C)
    if args.oracle:
        payload["oracle"] = search_mod.oracle_check(problem, cands, result)
        if payload["oracle"].get("ran") and not payload["oracle"]["agrees"]:
            raise InternalConsistencyError("exhaustive oracle disagrees with the solver")
    if args.out:
        _write_family(result.optimal, args.out)
    return payload


# --- plumbing ---------------------------------------------------------------


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _default_threads():
    raw = os.environ.get(THREADS_ENV, "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hypercover",
        description="Hyperplane covers and edge-slicing families of the hypercube.")
    parser.add_argument("--threads", type=_positive_int, default=_default_threads(),
                        help=f"worker threads for search (default ${THREADS_ENV} or 1)")
    parser.add_argument("--no-timings", action="store_true",
                        help="omit the timings block from the report")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="check a predicate on a family file")
    p.add_argument("file")
    p.add_argument("--predicate", choices=PREDICATES, required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("construct", help="emit a named construction as JSON lines")
    p.add_argument("name", choices=sorted(CONSTRUCTIONS))
    p.add_argument("n", type=_positive_int)
    p.add_argument("--out", default="-", help="output file (default stdout)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("reduce", help="expand a box-C slicing family into a nondegenerate cover")
    p.add_argument("file")
    p.add_argument("--C", type=_positive_int, required=True)
    p.add_argument("--out", help="write the reduced family here")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("witness", help="run the lower-bound pipeline on a nondegenerate cover")
    p.add_argument("file")
    p.add_argument("--trace", action="store_true", help="print a readable trace to stderr")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("end-to-end", help="reduce a slicing family, then run the pipeline")
    p.add_argument("file")
    p.add_argument("--C", type=_positive_int, required=True)
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_end_to_end)

    p = sub.add_parser("search", help="exact minimum cover or slicing family")
    p.add_argument("--mode", choices=sorted(SEARCH_MODES), required=True)
    p.add_argument("--n", type=_positive_int, required=True)
    p.add_argument("--C", type=_positive_int)
    p.add_argument("--oracle", action="store_true", help="cross-check by exhaustive search")
    p.add_argument("--out", help="write the optimal family here")
    p.set_defaults(func=cmd_search)
    return parser


def _echo(args):
    skip = {"func", "no_timings"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)

    digests = []
    start = time.perf_counter()
    report = {"command": args.command, "args": _echo(args)}
    try:
        payload = args.func(args, digests)
        report["verdict"] = "pass"
        code = EXIT_PASS
    except _Failed as exc:
        payload, report["verdict"], code = exc.payload, "fail", EXIT_FAIL
    except InternalConsistencyError as exc:
        payload, report["verdict"], code = {"error": str(exc)}, "internal-error", EXIT_INTERNAL
    except (InputError, HypercoverError) as exc:
        payload, report["verdict"], code = {"error": str(exc)}, "input-error", EXIT_INPUT
    if args.command == "construct" and code == EXIT_PASS and payload is None:
        return code
    if digests:
        report["input_digest"] = digests[0]
    report["result"] = payload
    if not args.no_timings:
        report["timings"] = {"wall_ms": int((time.perf_counter() - start) * 1000)}
    json.dump(report, sys.stdout, indent=2)
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
