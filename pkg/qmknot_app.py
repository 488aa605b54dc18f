#!/usr/bin/env python3
# vim: expandtab:ts=4:sw=4
"""qmknot command line

Input:
    verify:    --family B|C|D --ranks N..M
    invariant: --family --rank, and --braid WORD --strands K or --tape PATH
    compare:   --family --rank --braid WORD --strands K
    oracle:    --family --rank, and --pd PATH or --braid WORD --strands K
    tabulate:  --family --rank --input knots.tsv --out knots.jsonl
    thimble:   --b B --a-values A,A,... [--locate LO,HI]

Exit status: 0 success, 1 failed check or mismatch, 2 usage error,
3 malformed input.
"""
import argparse
import json
import logging
import sys
from multiprocessing import Pool

from tqdm import tqdm

from application_util import records
from application_util.config import RunConfig, parse_ranks
from qmknot import laurent
from qmknot.algebra_data import make_spec
from qmknot.braiding import build_matrices
from qmknot.errors import (GeneratorOutOfRange, InconsistentEdges, InvalidTape,
                           MalformedPD, ParseError, QmknotError, RecursionLimit,
                           SpecError)
from qmknot.skein_oracle import SkeinParams, braid_to_pd, kauffman_poly, parse_pd
from qmknot.tangle import (closure_tape, evaluate_tape, normalized_invariant,
                           parse_braid, parse_tape, writhe)
from qmknot.thimble import analytic_wall, locate_wall, stokes_scan
from qmknot.verify import run_suite, tampered_matrices

log = logging.getLogger("qmknot_app")

INPUT_ERRORS = (ParseError, GeneratorOutOfRange, MalformedPD, InconsistentEdges,
                InvalidTape)


def emit(config, text):
    """Write program output to ``--out`` or stdout."""
    if config.out:
        with open(config.out, "w") as f:
            f.write(text + "\n")
    else:
        print(text)


def format_poly(config, value):
    if config.fmt == "text":
        return laurent.render(value)
    return laurent.to_json(value)


def dump(config, record):
    """Text lines ``key: value``, or one JSON document."""
    if config.fmt == "text":
        return "\n".join(f"{k}: {v}" for k, v in record.items())
    return json.dumps(record, sort_keys=True)


def gather_braid(args):
    return parse_braid(args.braid, args.strands)


def cmd_verify(config, args):
    reports = []
    for rank in tqdm(parse_ranks(args.ranks), disable=config.quiet, desc="verify"):
        spec = make_spec(args.family, rank)
        matrices = tampered_matrices(spec) if args.tamper else None
        report = run_suite(spec, matrices)
        for failure in report.failures():
            log.warning("%s: check %s failed at %s", spec.name, failure.name,
                        failure.counterexample)
        reports.append(report)

    if config.fmt == "text":
        lines = []
        for report in reports:
            if report.passed:
                lines.append(f"{report.spec_name}: pass")
            for failure in report.failures():
                lines.append(f"{report.spec_name}: FAIL {failure.name} "
                             f"at {failure.counterexample}")
        emit(config, "\n".join(lines))
    elif config.fmt == "jsonl":
        emit(config, "\n".join(json.dumps(r.to_json(), sort_keys=True) for r in reports))
    else:
        emit(config, json.dumps([r.to_json() for r in reports], sort_keys=True))
    return 0 if all(r.passed for r in reports) else 1


def cmd_invariant(config, args):
    spec = make_spec(args.family, args.rank)
    record = {"spec": spec.name}
    if args.tape is not None:
        with open(args.tape) as f:
            tape = parse_tape(f.read())
        record["raw"] = format_poly(config, evaluate_tape(spec, tape))
    else:
        braid = gather_braid(args)
        record["writhe"] = writhe(braid)
        record["raw"] = format_poly(config, evaluate_tape(spec, closure_tape(braid)))
        record["normalized"] = format_poly(config, normalized_invariant(spec, braid))
    emit(config, dump(config, record))
    return 0


def cmd_compare(config, args):
    spec = make_spec(args.family, args.rank)
    braid = gather_braid(args)
    tensor = evaluate_tape(spec, closure_tape(braid))
    oracle = kauffman_poly(braid_to_pd(braid), SkeinParams.from_spec(spec),
                           strategy=config.strategy, limit=config.recursion_limit)
    equal = tensor == oracle
    if not equal:
        log.warning("%s: tensor and skein values differ for %r", spec.name, str(braid))
    emit(config, dump(config, {
        "spec": spec.name,
        "tensor": format_poly(config, tensor),
        "oracle": format_poly(config, oracle),
        "verdict": "equal" if equal else "differ",
    }))
    return 0 if equal else 1


def cmd_oracle(config, args):
    spec = make_spec(args.family, args.rank)
    if args.pd is not None:
        if args.pd == "-":
            diagram = parse_pd(sys.stdin.read())
        else:
            with open(args.pd) as f:
                diagram = parse_pd(f.read())
    else:
        diagram = braid_to_pd(gather_braid(args))
    value = kauffman_poly(diagram, SkeinParams.from_spec(spec), strategy=config.strategy,
                          memo=not args.no_memo, limit=config.recursion_limit)
    emit(config, dump(config, {"spec": spec.name, "crossings": len(diagram),
                               "value": format_poly(config, value)}))
    return 0


def _tabulate_one(job):
    family, rank, name, strands, word = job
    try:
        spec = make_spec(family, rank)
        braid = parse_braid(word, int(strands))
    except (ValueError, QmknotError) as e:
        return None, f"{name}: {e}"
    raw = evaluate_tape(spec, closure_tape(braid))
    normalized = spec.alpha ** (-writhe(braid)) * raw
    return {
        "name": name, "family": spec.family, "rank": spec.rank,
        "writhe": writhe(braid),
        "raw": laurent.to_json(raw), "normalized": laurent.to_json(normalized),
    }, None


def cmd_tabulate(config, args):
    if not config.out:
        raise SpecError("tabulate needs --out")
    spec = make_spec(args.family, args.rank)
    table = records.read_knot_table(args.input)
    appender = records.JsonlAppender(config.out)
    jobs = [(spec.family, spec.rank, row.name, row.strands, row.word)
            for row in table.itertuples(index=False)
            if {"name": row.name, "family": spec.family, "rank": spec.rank} not in appender]
    log.info("%d of %d knots left to tabulate", len(jobs), len(table))

    if config.processes > 1:
        with Pool(config.processes) as pool:
            results = pool.map(_tabulate_one, jobs)
    else:
        build_matrices(spec.family, spec.rank)
        results = [_tabulate_one(job) for job in tqdm(jobs, disable=config.quiet,
                                                      desc="tabulate")]
    written = 0
    for record, error in results:
        if error is not None:
            log.warning("skipping %s", error)
            continue
        written += appender.append(record)
    log.info("appended %d records to %s", written, config.out)
    return 0


def cmd_thimble(config, args):
    a_values = [float(a) for a in args.a_values.split(",")]
    rows = stokes_scan(tqdm(a_values, disable=config.quiet, desc="thimble"), args.b,
                       settings=config.flow, processes=config.processes)
    frame = records.scan_frame(rows)
    if config.fmt == "text":
        text = frame.to_csv(index=False).rstrip("\n")
    else:
        text = frame.to_json(orient="records", lines=config.fmt == "jsonl").rstrip("\n")
    if args.locate:
        lo, hi = (float(v) for v in args.locate.split(","))
        wall = locate_wall(args.b, lo, hi, settings=config.flow)
        log.info("wall by bisection at a=%.6g, analytic a=%.6g", wall, analytic_wall(args.b))
        text += f"\n# wall a={wall:.6g} analytic={analytic_wall(args.b):.6g}"
    emit(config, text)
    return 0


COMMANDS = {
    "verify": cmd_verify,
    "invariant": cmd_invariant,
    "compare": cmd_compare,
    "oracle": cmd_oracle,
    "tabulate": cmd_tabulate,
    "thimble": cmd_thimble,
}


def _add_spec(parser, ranges=False):
    parser.add_argument("--family", required=True, type=str.upper,
                        choices=("B", "C", "D"), help="Lie algebra family")
    if ranges:
        parser.add_argument("--ranks", required=True,
                            help="rank or inclusive range, e.g. 1..3")
    else:
        parser.add_argument("--rank", required=True, type=int, help="rank n")


def _add_braid(parser, required):
    parser.add_argument("--braid", required=required,
                        help="braid word, e.g. \"1 -2 1 -2\"")
    parser.add_argument("--strands", type=int, default=None,
                        help="number of braid strands")


def parse_args(argv=None):
    """ Parse command line arguments.
    """
    parser = argparse.ArgumentParser(description="Exact B/C/D braiding link invariants")
    parser.add_argument("--format", default="text", choices=("text", "json", "jsonl"))
    parser.add_argument("--out", default=None, help="write results to this file")
    parser.add_argument("--config", default=None, help="ini file with defaults")
    parser.add_argument("--log-level", default=None,
                        help="DEBUG, INFO, WARNING or ERROR")
    parser.add_argument("--quiet", action="store_true", default=False,
                        help="no progress bars")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run the exact identity suite")
    _add_spec(p, ranges=True)
    p.add_argument("--tamper", action="store_true", default=False, help=argparse.SUPPRESS)

    p = sub.add_parser("invariant", help="tensor-contraction invariant")
    _add_spec(p)
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--braid", help="braid word")
    source.add_argument("--tape", help="Morse tape file")
    p.add_argument("--strands", type=int, default=None)

    p = sub.add_parser("compare", help="tensor invariant against the skein oracle")
    _add_spec(p)
    _add_braid(p, required=True)
    p.add_argument("--strategy", default=None, choices=("first", "last"))
    p.add_argument("--recursion-limit", type=int, default=None)

    p = sub.add_parser("oracle", help="Kauffman polynomial by skein recursion")
    _add_spec(p)
    source = p.add_mutually_exclusive_group(required=True)
    source.add_argument("--pd", help="PD code JSON file, - for stdin")
    source.add_argument("--braid", help="braid word")
    p.add_argument("--strands", type=int, default=None)
    p.add_argument("--strategy", default=None, choices=("first", "last"))
    p.add_argument("--recursion-limit", type=int, default=None)
    p.add_argument("--no-memo", action="store_true", default=False)

    p = sub.add_parser("tabulate", help="append invariants of a knot table to JSONL")
    _add_spec(p)
    p.add_argument("--input", required=True, help="name<TAB>strands<TAB>word file")
    p.add_argument("--processes", type=int, default=None)

    p = sub.add_parser("thimble", help="Airy Stokes-wall scan")
    p.add_argument("--b", type=float, default=1.0)
    p.add_argument("--a-values", default="-1,0,1")
    p.add_argument("--locate", default=None, help="bracket LO,HI for the wall search")
    p.add_argument("--dt", type=float, default=None)
    p.add_argument("--processes", type=int, default=None)

    args = parser.parse_args(argv)
    if getattr(args, "braid", None) is not None and args.strands is None:
        parser.error("--braid needs --strands")
    return args


def main(argv=None):
    args = parse_args(argv)
    try:
        config = RunConfig(args)
    except (ValueError, FileNotFoundError) as e:
        print(f"qmknot: {e}", file=sys.stderr)
        return 2
    logging.basicConfig(level=config.log_level,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return COMMANDS[args.command](config, args)
    except INPUT_ERRORS as e:
        log.error("%s", e)
        return 3
    except (SpecError, ValueError) as e:
        log.error("%s", e)
        return 2
    except RecursionLimit as e:
        log.error("%s", e)
        return 1
    except QmknotError as e:
        log.error("%s: %s", type(e).__name__, e)
        return 1


if __name__ == "__main__":
    sys.exit(main())
