"""``configprob`` command-line interface.

Exit codes: 0 success (for ``verify``: every row PASS), 1 invalid input,
2 at least one ``verify`` row FAIL.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import __version__
from .analytic import (
    connection_probability,
    directed_connection_probability,
    directed_ensemble_log_size,
    ensemble_log_size,
    format_fraction,
    self_loop_probability,
)
from .degrees import (
    format_degrees,
    parse_distribution,
    read_degrees,
    read_directed_degrees,
    sample_degree_sequence,
)
from .errors import ConfigProbError, InvalidSpec, SameVertex, TooLarge
from .montecarlo import (
    estimate_connection_probability,
    estimate_directed_connection_probability,
    estimate_self_loop_probability,
)
from .oracle import (
    exact_connection_probability,
    exact_directed_connection_probability,
    exact_self_loop_probability,
)
from .sampler import format_edgelist, sample_configuration, sample_directed_configuration

FORMAT_VERSION = "1"
DEFAULT_SEED = 0
DEFAULT_TRIALS = 100_000
ALL_PAIRS_LIMIT = 2000
MC_TOLERANCE = 4.0

PROB_COLUMNS = ["p", "p_full_exact", "p_full_float", "p_first_order", "p_paper_literal"]


class UsageError(ConfigProbError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


# -- output -------------------------------------------------------------------------

def _render(rows, columns, fmt, inputs):
    if fmt == "json":
        doc = {
            "inputs": inputs,
            "results": rows,
            "versions": {"configprob": __version__, "format": FORMAT_VERSION},
        }
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row[c]) for c in columns])
        return buf.getvalue()
    lines = [" ".join(columns)]
    lines += [" ".join(_cell(row[c]) for c in columns) for row in rows]
    return "\n".join(lines) + "\n"


def _cell(value):
    if value is None:
        return ""
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _write(text, out):
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _inputs(args):
    keys = ["command", "degrees", "distribution", "n", "directed", "pair", "all_pairs",
            "vertex", "mode", "trials", "seed", "tolerance"]
    return {k: getattr(args, k) for k in keys if getattr(args, k, None) is not None}


# -- argument helpers -----------------------------------------------------------------

def _mode(args):
    return "first_order" if getattr(args, "sparse", False) else args.mode.replace("-", "_")


def _load(args, directed=None):
    directed = args.directed if directed is None else directed
    if not args.degrees:
        raise UsageError("--degrees FILE is required")
    try:
        if directed:
            return read_directed_degrees(args.degrees)
        return read_degrees(args.degrees)
    except OSError as exc:
        raise UsageError(f"cannot read {args.degrees}: {exc.strerror}") from None


def _pairs(args, n, ordered):
    if args.pair:
        return [tuple(p) for p in args.pair]
    if args.all_pairs:
        if n > args.max_n:
            raise UsageError(f"--all-pairs with N={n} exceeds the limit {args.max_n} (see --max-n)")
        if ordered:
            return [(m, k) for m in range(n) for k in range(n)]
        return [(m, k) for m in range(n) for k in range(m + 1, n)]
    return []


def _prob_row(result_for, mode):
    full = result_for("full")
    selected = full if mode == "full" else result_for(mode)
    return {
        "p": format_fraction(selected.value),
        "p_full_exact": format_fraction(full.value) if full.exact else None,
        "p_full_float": full.float_value,
        "p_first_order": format_fraction(result_for("first_order").value),
        "p_paper_literal": format_fraction(result_for("paper_literal").value),
    }


# -- commands -------------------------------------------------------------------------

def cmd_generate(args):
    if args.distribution:
        if args.directed:
            raise UsageError("--distribution generates undirected sequences only")
        if args.n is None:
            raise UsageError("--distribution needs --n")
        seq = sample_degree_sequence(parse_distribution(args.distribution), args.n, args.seed)
    else:
        seq = _load(args)
    if args.directed:
        g = sample_directed_configuration(seq, args.seed)
    else:
        g = sample_configuration(seq, args.seed)
    _write(format_edgelist(g, seed=args.seed), args.out)
    summary = (f"n={g.n} L={g.num_edges} directed={str(g.directed).lower()} "
               f"self_loops={g.self_loop_count()} multi_edges={g.multi_edge_count()}\n")
    (sys.stdout if args.out else sys.stderr).write(summary)
    return 0


def cmd_prob(args):
    seq = _load(args, directed=False)
    pairs = _pairs(args, seq.n, ordered=False)
    if not pairs:
        raise UsageError("prob needs --pair M N or --all-pairs")
    mode = _mode(args)
    rows = []
    for m, n in pairs:
        try:
            row = _prob_row(lambda md: connection_probability(seq, m, n, mode=md), mode)
        except SameVertex:
            raise SameVertex(f"pair ({m},{m}) is a self-loop query; use `configprob selfloop --vertex {m}`") from None
        rows.append({"m": m, "n": n, **row})
    _write(_render(rows, ["m", "n"] + PROB_COLUMNS, args.format, _inputs(args)), args.out)
    return 0


def cmd_selfloop(args):
    seq = _load(args, directed=False)
    vertices = args.vertex if args.vertex else range(seq.n)
    mode = _mode(args)
    rows = [{"s": s, **_prob_row(lambda md: self_loop_probability(seq, s, mode=md), mode)}
            for s in vertices]
    _write(_render(rows, ["s"] + PROB_COLUMNS, args.format, _inputs(args)), args.out)
    return 0


def cmd_dprob(args):
    dseq = _load(args, directed=True)
    pairs = _pairs(args, dseq.n, ordered=True)
    if not pairs:
        raise UsageError("dprob needs --pair M N or --all-pairs")
    mode = _mode(args)
    rows = [{"m": m, "n": n,
             **_prob_row(lambda md: directed_connection_probability(dseq, m, n, mode=md), mode)}
            for m, n in pairs]
    _write(_render(rows, ["m", "n"] + PROB_COLUMNS, args.format, _inputs(args)), args.out)
    return 0


def cmd_ensemble_size(args):
    seq = _load(args)
    size = directed_ensemble_log_size(seq) if args.directed else ensemble_log_size(seq)
    row = {"n": seq.n, "L": seq.num_edges, "ln_value": size.ln_value,
           "exact_value": None if size.exact_value is None else str(size.exact_value)}
    _write(_render([row], ["n", "L", "ln_value", "exact_value"], args.format, _inputs(args)), args.out)
    return 0


def _estimate_row(est):
    return {"event": est.event, "trials": est.trials, "successes": est.successes,
            "p_hat": est.p_hat, "std_error": est.std_error}


def cmd_estimate(args):
    seq = _load(args)
    rows = []
    if args.directed:
        for m, n in _pairs(args, seq.n, ordered=True):
            rows.append(_estimate_row(estimate_directed_connection_probability(
                seq, m, n, args.trials, args.seed, workers=args.workers)))
    else:
        for m, n in _pairs(args, seq.n, ordered=False):
            rows.append(_estimate_row(estimate_connection_probability(
                seq, m, n, args.trials, args.seed, workers=args.workers)))
        for s in args.vertex or ():
            rows.append(_estimate_row(estimate_self_loop_probability(
                seq, s, args.trials, args.seed, workers=args.workers)))
    if not rows:
        raise UsageError("estimate needs --pair M N, --all-pairs or --vertex S")
    columns = ["event", "trials", "successes", "p_hat", "std_error"]
    _write(_render(rows, columns, args.format, _inputs(args)), args.out)
    return 0


def _verify_row(event, analytic, literal, oracle_fn, estimate, tolerance):
    try:
        oracle = oracle_fn().probability
    except TooLarge:
        oracle = None
    oracle_match = None if oracle is None or not analytic.exact else oracle == analytic.value
    deviation = abs(estimate.p_hat - analytic.float_value)
    mc_ok = deviation <= tolerance * estimate.std_error
    passed = mc_ok and oracle_match is not False
    return {
        "event": event,
        "analytic": format_fraction(analytic.value),
        "analytic_float": analytic.float_value,
        "oracle": "skipped (cap)" if oracle is None else format_fraction(oracle),
        "oracle_match": oracle_match,
        "mc_p_hat": estimate.p_hat,
        "mc_std_error": estimate.std_error,
        "mc_within_tolerance": mc_ok,
        "paper_literal": format_fraction(literal.value),
        "literal_differs": literal.value != analytic.value,
        "status": "PASS" if passed else "FAIL",
    }


def cmd_verify(args):
    seq = _load(args)
    trials, seed = args.trials, args.seed
    jobs = []
    if args.directed:
        for m, n in _pairs(args, seq.n, ordered=True) or [
                (a, b) for a in range(seq.n) for b in range(seq.n)]:
            jobs.append(lambda m=m, n=n: _verify_row(
                f"directed({m}->{n})",
                directed_connection_probability(seq, m, n),
                directed_connection_probability(seq, m, n, mode="paper_literal"),
                lambda: exact_directed_connection_probability(seq, m, n),
                estimate_directed_connection_probability(seq, m, n, trials, seed), args.tolerance))
    else:
        pairs = _pairs(args, seq.n, ordered=False)
        vertices = list(args.vertex or ())
        if not pairs and not vertices:
            pairs = [(a, b) for a in range(seq.n) for b in range(a + 1, seq.n)]
            vertices = list(range(seq.n))
        for m, n in pairs:
            jobs.append(lambda m=m, n=n: _verify_row(
                f"pair({m},{n})",
                connection_probability(seq, m, n),
                connection_probability(seq, m, n, mode="paper_literal"),
                lambda: exact_connection_probability(seq, m, n),
                estimate_connection_probability(seq, m, n, trials, seed), args.tolerance))
        for s in vertices:
            jobs.append(lambda s=s: _verify_row(
                f"self({s})",
                self_loop_probability(seq, s),
                self_loop_probability(seq, s, mode="paper_literal"),
                lambda: exact_self_loop_probability(seq, s),
                estimate_self_loop_probability(seq, s, trials, seed), args.tolerance))
    if args.workers > 1:
        with ThreadPoolExecutor(max_workers=args.workers) as pool:
            rows = list(pool.map(lambda job: job(), jobs))
    else:
        rows = [job() for job in jobs]

    columns = ["event", "analytic", "analytic_float", "oracle", "oracle_match", "mc_p_hat",
               "mc_std_error", "mc_within_tolerance", "paper_literal", "literal_differs", "status"]
    text = _render(rows, columns, args.format, _inputs(args))
    failed = sum(row["status"] == "FAIL" for row in rows)
    if args.format == "text":
        if any(row["oracle"] == "skipped (cap)" for row in rows):
            text += "notice: oracle skipped where the instance exceeds the enumeration cap\n"
        text += f"verify: {len(rows) - failed}/{len(rows)} PASS\n"
    _write(text, args.out)
    return 2 if failed else 0


def cmd_sample_degrees(args):
    if not args.distribution or args.n is None:
        raise UsageError("sample-degrees needs --distribution SPEC and --n N")
    spec = parse_distribution(args.distribution)
    seq = sample_degree_sequence(spec, args.n, args.seed)
    header = [f"distribution {spec}", f"n {args.n}", f"seed {args.seed}"]
    _write(format_degrees(seq, header), args.out)
    return 0


COMMANDS = {
    "generate": cmd_generate,
    "prob": cmd_prob,
    "selfloop": cmd_selfloop,
    "dprob": cmd_dprob,
    "ensemble-size": cmd_ensemble_size,
    "estimate": cmd_estimate,
    "verify": cmd_verify,
    "sample-degrees": cmd_sample_degrees,
}


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--degrees", metavar="FILE",
                        help="degree file: one integer per line, or 'in out' per line with --directed")
    common.add_argument("--directed", action="store_true")
    common.add_argument("--distribution", metavar="SPEC",
                        help="constant:K | poisson:LAM | power_law:GAMMA,KMIN,KMAX")
    common.add_argument("--n", type=int, help="vertex count for --distribution")
    common.add_argument("--pair", type=int, nargs=2, action="append", metavar=("M", "N"))
    common.add_argument("--all-pairs", action="store_true")
    common.add_argument("--max-n", type=int, default=ALL_PAIRS_LIMIT,
                        help="largest N accepted with --all-pairs (default %(default)s)")
    common.add_argument("--vertex", type=int, action="append", metavar="S")
    common.add_argument("--mode", choices=["full", "first-order", "paper-literal"], default="full")
    common.add_argument("--sparse", action="store_true", help="same as --mode first-order")
    common.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    common.add_argument("--seed", type=int, default=DEFAULT_SEED)
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--tolerance", type=float, default=MC_TOLERANCE,
                        help="verify: allowed |p_hat - p| in standard errors (default %(default)s)")
    common.add_argument("--format", choices=["text", "csv", "json"], default="text")
    common.add_argument("--out", metavar="FILE")

    parser = _Parser(prog="configprob", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"configprob {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)
    for name in COMMANDS:
        sub.add_parser(name, parents=[common])
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.trials < 1:
            raise InvalidSpec("--trials must be >= 1")
        return COMMANDS[args.command](args)
    except ConfigProbError as exc:
        sys.stderr.write(f"configprob: error: {type(exc).__name__}: {exc}\n")
        return 1


if __name__ == "__main__":
    sys.exit(main())
