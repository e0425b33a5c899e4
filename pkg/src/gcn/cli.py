"""Command-line front end.

    gcn bounds    --h 12 --eps 2 --ell 1 --alpha 20 --q 2 --t 1
    gcn figure    --h 12 --eps 2 --ell 1 --alpha 20 --r 800000 --t-max 20
    gcn construct --h 2 --ell 1 --eps 0 --alpha 2 --r 3 --q 2 --t 1 --output sol.json
    gcn verify    --input sol.json
    gcn simulate  --input sol.json --seed 0
    gcn oracle    --n 2 --k 1 --delta 1 --alpha 2 --q 2
    gcn compare   --h 6 --eps 2 --ell 2 --alpha 3 --q 2,3 --t-max 2

Exit codes: 0 success, 1 verify/simulate found a failure, 2 bad usage or
parameters, 3 computational failure (search exhausted, instance too large),
4 internal consistency violation.
"""
from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import logging
import os
import sys
from typing import Any

import numpy as np

from . import __version__, codec
from .bounds import best_bounds, compare_upper_bounds, figure_curves, gap_bounds
from .bounds.gap import is_prime_power_big
from .constructor import (
    CoveringCodeParams,
    check_covering,
    covering_code_mrd_dual,
    covering_to_solution,
    randomized_solution,
)
from .errors import (
    Exhausted,
    GCNError,
    InternalConsistencyError,
    NotEnoughCodewords,
    ParamViolation,
    RankConditionUnmet,
    TooLarge,
    TooManySubsets,
)
from .network import SUBSET_GUARD, NetworkParams, classify, simulate, verify_solution
from .oracle import NODE_LIMIT, ORACLE_CAP, oracle_max_code

log = logging.getLogger("gcn")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_COMPUTE, EXIT_INTERNAL = 0, 1, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _prime_power(text: str) -> int:
    try:
        q = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if not is_prime_power_big(q):
        raise argparse.ArgumentTypeError(f"{q} is not a prime power")
    return q


def _prime_power_list(text: str) -> list[int]:
    return [_prime_power(v) for v in text.split(",") if v.strip()]


def _network_args(p: argparse.ArgumentParser, r_required: bool = False) -> None:
    g = p.add_argument_group("network")
    g.add_argument("--h", type=int, required=True, help="number of source messages")
    g.add_argument("--r", type=int, required=r_required, help="number of middle nodes")
    g.add_argument("--alpha", type=int, required=True, help="middle nodes seen by each receiver")
    g.add_argument("--ell", type=int, required=True, help="parallel links into each middle node")
    g.add_argument("--eps", type=int, required=True, help="direct links from the source to each receiver")


def _field_args(p: argparse.ArgumentParser) -> None:
    g = p.add_argument_group("field")
    g.add_argument("--q", type=_prime_power, required=True, help="field size (prime power)")
    g.add_argument("--t", type=int, default=1, help="message vector length (default 1)")


def _output_args(p: argparse.ArgumentParser, default_format: str = "json") -> None:
    p.add_argument("--format", choices=("json", "csv"), default=default_format)
    p.add_argument("--output", "-o", help="write to this file instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="gcn", description="Generalized combination networks: bounds, constructions, checks.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--threads", type=int, default=argparse.SUPPRESS,
                        help="worker threads (falls back to GCN_THREADS; computations are single-threaded)")
    common.add_argument("-v", "--verbose", action="store_true", default=argparse.SUPPRESS)
    parser._add_container_actions(common)
    parser.set_defaults(threads=None, verbose=False)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def _sub(name: str, **kw) -> argparse.ArgumentParser:
        return sub.add_parser(name, parents=[common], **kw)

    p = _sub("bounds", help="all bounds on the largest r, plus the best pair")
    _network_args(p)
    _field_args(p)
    _output_args(p)

    p = _sub("gap", help="bounds on the scalar-vs-vector field size gap")
    _network_args(p, r_required=True)
    _output_args(p)

    p = _sub("figure", help="necessary/sufficient thresholds on q^t for t = 1..t-max")
    _network_args(p, r_required=True)
    p.add_argument("--t-max", type=int, required=True)
    _output_args(p, "csv")

    p = _sub("construct", help="build a (q, t)-solution")
    _network_args(p, r_required=True)
    _field_args(p)
    p.add_argument("--method", choices=("auto", "mrd", "random"), default="auto",
                   help="auto: the MRD-based code when it has enough codewords, else random search")
    p.add_argument("--max-attempts", type=int, default=10_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--guard", type=int, default=SUBSET_GUARD, help="largest number of receivers to check")
    p.add_argument("--code-output", help="also write the covering code used (mrd method)")
    p.add_argument("--output", "-o", help="solution file (default stdout)")

    p = _sub("verify", help="check a solution file (or a covering-code file)")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", "-i", help="solution file")
    src.add_argument("--code", help="covering-code file")
    p.add_argument("--guard", type=int, default=SUBSET_GUARD)
    _output_args(p)

    p = _sub("simulate", help="send messages through a solution and decode at the receivers")
    p.add_argument("--input", "-i", required=True, help="solution file")
    p.add_argument("--message", type=_int_list, help="comma-separated message entries (default: random)")
    p.add_argument("--all-messages", action="store_true", help="round-trip every message")
    p.add_argument("--max-receivers", type=int, default=10_000, help="sample receivers beyond this many")
    p.add_argument("--seed", type=int, default=0)
    _output_args(p)

    p = _sub("oracle", help="largest covering code by exhaustive search")
    g = p.add_argument_group("code")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--delta", type=int, required=True)
    g.add_argument("--alpha", type=int, required=True)
    g.add_argument("--q", type=_prime_power, required=True)
    p.add_argument("--sets-only", action="store_true", help="forbid repeated codewords")
    p.add_argument("--cap", type=int, default=ORACLE_CAP, help="largest number of k-subspaces to enumerate")
    p.add_argument("--node-limit", type=int, default=NODE_LIMIT, help="search budget, 0 for none")
    p.add_argument("--witness-output", help="write the witness code to this file")
    _output_args(p)

    p = _sub("compare", help="ordering of the upper bounds over a sweep of q and t")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.add_argument("--eps", type=int, required=True)
    p.add_argument("--q", type=_prime_power_list, required=True, help="comma-separated field sizes")
    p.add_argument("--t-max", type=int, default=1)
    _output_args(p)
    return parser


# -- output helpers ------------------------------------------------------------------------

def _jsonable(obj: Any) -> Any:
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, float):
        if obj != obj or obj in (float("inf"), float("-inf")):
            return None
        return obj
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, int) and not isinstance(obj, bool) and obj.bit_length() > 63:
        return str(obj)  # exact big integers as decimal strings
    return obj


def _json(obj: Any) -> str:
    return json.dumps(_jsonable(obj), indent=2) + "\n"


def _csv(header: list[str], rows: list[list[Any]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    for row in rows:
        w.writerow(["%.6f" % v if isinstance(v, float) else ("" if v is None else v) for v in row])
    return buf.getvalue()


def _emit(text: str, path: str | None) -> None:
    if path:
        with open(path, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _network(a, with_r: bool = True) -> NetworkParams:
    return NetworkParams(a.h, a.r if with_r else None, a.alpha, a.ell, a.eps)


# -- commands ------------------------------------------------------------------------------

def cmd_bounds(a) -> int:
    params = _network(a)
    best = best_bounds(params, a.q, a.t)
    if a.format == "csv":
        rows = [[r.source, r.kind, r.valid, r.value_log2, r.value_exact, r.approx_log2, r.notes] for r in best.reports]
        _emit(_csv(["source", "kind", "valid", "value_log2", "value_exact", "approx_log2", "notes"], rows), a.output)
    else:
        out = {"h": a.h, "alpha": a.alpha, "ell": a.ell, "eps": a.eps, "q": a.q, "t": a.t,
               "class": classify(params).value, **best.as_dict()}
        _emit(_json(out), a.output)
    return EXIT_OK


def cmd_gap(a) -> int:
    rep = gap_bounds(_network(a))
    if a.format == "csv":
        d = rep.as_dict()
        rows = [[k, v] for k, v in d.items() if not isinstance(v, dict)]
        _emit(_csv(["quantity", "value"], rows), a.output)
    else:
        _emit(_json(rep.as_dict()), a.output)
    return EXIT_OK


def cmd_figure(a) -> int:
    params = _network(a)
    rows = figure_curves(params, a.t_max)
    gap = gap_bounds(params) if params.nontrivial else None
    if a.format == "csv":
        text = _csv(["t", "necessary", "sufficient", "two_pow_t"], [list(r) for r in rows])
        if gap is not None:
            text += "# gap_upper_bits,%.6f\n" % gap.gap_upper_bits
            if gap.gap_lower_bits is not None:
                text += "# gap_lower_bits,%.6f\n" % gap.gap_lower_bits
        _emit(text, a.output)
    else:
        out = {"rows": [r._asdict() for r in rows], "gap": None if gap is None else gap.as_dict()}
        _emit(_json(out), a.output)
    return EXIT_OK


def cmd_construct(a) -> int:
    params = _network(a)
    sol = None
    code = None
    if a.method in ("auto", "mrd"):
        try:
            code = covering_code_mrd_dual(CoveringCodeParams.for_network(params, a.q, a.t))
            sol = covering_to_solution(params, a.q, a.t, code)
            log.info("MRD-based code with %d codewords", code.size)
        except (ParamViolation, NotEnoughCodewords) as exc:
            if a.method == "mrd":
                raise
            log.info("MRD construction not usable (%s); falling back to random search", exc)
            code = None
    if sol is None:
        res = randomized_solution(params, a.q, a.t, max_attempts=a.max_attempts, rng_seed=a.seed, guard=a.guard)
        sol = res.solution
        log.info("random search succeeded after %d attempts", res.attempts)
    if a.code_output and code is not None:
        _emit(codec.dumps(codec.code_to_dict(code, limit=params.r)), a.code_output)
    _emit(codec.dumps(codec.solution_to_dict(params, sol)), a.output)
    return EXIT_OK


def cmd_verify(a) -> int:
    if a.code:
        code = codec.load_code(a.code)
        hit = check_covering(code)
        out = {"valid": hit is None, "first_failure": hit, "size": code.size}
    else:
        params, sol = codec.load_solution(a.input)
        res = verify_solution(params, sol, guard=a.guard)
        out = {"valid": res.valid, "first_failure": res.first_failure, "checked": res.checked}
    if a.format == "csv":
        ff = out["first_failure"]
        _emit(_csv(["valid", "first_failure"], [[out["valid"], "" if ff is None else " ".join(map(str, ff))]]),
              a.output)
    else:
        _emit(_json(out), a.output)
    return EXIT_OK if out["valid"] else EXIT_FAIL


def cmd_simulate(a) -> int:
    params, sol = codec.load_solution(a.input)
    n = params.h * sol.t
    if a.all_messages:
        if sol.q**n > 1 << 16:
            raise TooLarge(f"{sol.q}^{n} messages is too many to enumerate")
        messages = [list(m) for m in itertools.product(range(sol.q), repeat=n)]
    elif a.message is not None:
        messages = [a.message]
    else:
        messages = [np.random.default_rng(a.seed).integers(0, sol.q, size=n).tolist()]
    rows = []
    all_ok = True
    for x in messages:
        for o in simulate(params, sol, x, rng_seed=a.seed, max_receivers=a.max_receivers):
            all_ok &= o.ok
            rows.append({"message": list(x), "receiver": list(o.subset), "decoded": list(o.decoded),
                         "unique": o.unique, "ok": o.ok})
    if a.format == "csv":
        fmt = lambda v: " ".join(map(str, v))  # noqa: E731
        _emit(_csv(["message", "receiver", "decoded", "unique", "ok"],
                   [[fmt(r["message"]), fmt(r["receiver"]), fmt(r["decoded"]), r["unique"], r["ok"]] for r in rows]),
              a.output)
    else:
        _emit(_json({"all_ok": all_ok, "receivers": rows}), a.output)
    return EXIT_OK if all_ok else EXIT_FAIL


def cmd_oracle(a) -> int:
    p = CoveringCodeParams(a.n, a.k, a.delta, a.alpha, a.q)
    res = oracle_max_code(p, multiset_allowed=not a.sets_only, cap=a.cap, node_limit=a.node_limit)
    witness = codec.code_to_dict(res.witness)
    if a.witness_output:
        _emit(codec.dumps(witness), a.witness_output)
    if a.format == "csv":
        _emit(_csv(["n", "k", "delta", "alpha", "q", "size", "upper", "exact"],
                   [[a.n, a.k, a.delta, a.alpha, a.q, res.size, res.upper, res.exact]]), a.output)
    else:
        _emit(_json({"size": res.size, "upper": res.upper, "exact": res.exact, "witness": witness}), a.output)
    return EXIT_OK


def cmd_compare(a) -> int:
    params = NetworkParams(a.h, None, a.alpha, a.ell, a.eps)
    reports = []
    for q in a.q:
        for t in range(1, a.t_max + 1):
            reports.append((q, t, compare_upper_bounds(params, q, t)))
    if any(not rep.consistent for _, _, rep in reports):
        for q, t, rep in reports:
            for note in rep.notes:
                log.warning("q=%d t=%d: %s", q, t, note)
    if a.format == "csv":
        rows = []
        for q, t, rep in reports:
            pr = rep.predicates
            rows.append([q, t, rep.winner, pr["compare2"], pr["compare"], pr["compareAlpha2"], rep.consistent])
        _emit(_csv(["q", "t", "winner", "compare2", "compare", "compareAlpha2", "consistent"], rows), a.output)
    else:
        _emit(_json([{"q": q, "t": t, **rep.as_dict()} for q, t, rep in reports]), a.output)
    return EXIT_OK if all(rep.consistent for _, _, rep in reports) else EXIT_INTERNAL


COMMANDS = {
    "bounds": cmd_bounds,
    "gap": cmd_gap,
    "figure": cmd_figure,
    "construct": cmd_construct,
    "verify": cmd_verify,
    "simulate": cmd_simulate,
    "oracle": cmd_oracle,
    "compare": cmd_compare,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    a = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if a.verbose else logging.WARNING, format="%(levelname)s: %(message)s")
    threads = a.threads if a.threads is not None else os.environ.get("GCN_THREADS")
    if threads is not None:
        try:
            if int(threads) < 1:
                raise ValueError
        except ValueError:
            parser.error(f"threads must be a positive integer, got {threads!r}")
        log.info("threads=%s requested; running single-threaded", threads)
    try:
        return COMMANDS[a.command](a)
    except InternalConsistencyError as exc:
        print(f"gcn: internal consistency violation: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (Exhausted, TooLarge, TooManySubsets, NotEnoughCodewords, RankConditionUnmet) as exc:
        print(f"gcn: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    except (GCNError, ValueError) as exc:
        print(f"gcn: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"gcn: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
