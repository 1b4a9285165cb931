"""``opholder`` command line.

Exit codes: 0 when every verdict passes, 1 when any fails, 2 on usage or
input errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import codec
from . import harness
from .errors import OpHolderError
from .means import geometric_mean, weighted_geometric_mean
from .norms import evaluate, from_json as norm_from_json, to_json as norm_to_json
from .verifiers import TAU

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def default_tolerance() -> float:
    raw = os.environ.get("OPHOLDER_TOL")
    if raw is None:
        return TAU
    try:
        tol = float(raw)
    except ValueError:
        raise UsageError(f"OPHOLDER_TOL is not a number: {raw!r}") from None
    if not tol >= 0:
        raise UsageError(f"OPHOLDER_TOL must be >= 0, got {raw!r}")
    return tol


def _list(conv):
    def parse(text):
        try:
            return [conv(v) for v in text.split(",") if v.strip()]
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad list {text!r}") from None

    return parse


def _norms(text):
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise argparse.ArgumentTypeError(f"--norm: {exc.msg} at column {exc.colno}") from None
    objs = obj if isinstance(obj, list) else [obj]
    try:
        return [norm_from_json(o, f"--norm[{i}]") for i, o in enumerate(objs)]
    except OpHolderError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="opholder", description="Randomized verification of operator Hölder-type inequalities.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run a randomized campaign")
    v.add_argument("--ineq", default="all",
                   help="inequality id, comma-separated ids, or 'all' (%s)" % ", ".join(harness.INEQUALITY_IDS))
    v.add_argument("--dim", type=_list(int), help="dimensions, e.g. 1,2,3,4")
    v.add_argument("--len", dest="seq_len", type=_list(int), help="sequence lengths / quadrature nodes")
    v.add_argument("--p", type=_list(float), help="Hölder exponents p > 1 (q = p/(p-1))")
    v.add_argument("--r", type=_list(float), help="outer exponents r")
    v.add_argument("--alpha", type=_list(float), help="split exponents in [0, 1]")
    v.add_argument("--norm", type=_norms, help='norm spec JSON or list, e.g. \'{"kind": "schatten", "p": 2}\'')
    v.add_argument("--trials", type=int, default=200)
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--tol", type=float, default=None, help="relative tolerance (default 1e-8 or $OPHOLDER_TOL)")
    v.add_argument("--jobs", type=int, default=1, help="worker processes; output does not depend on it")
    v.add_argument("--out", help="write the JSON report here instead of stdout")

    r = sub.add_parser("replay", help="re-evaluate a stored instance fixture")
    r.add_argument("fixture")

    m = sub.add_parser("means", help="geometric means of two PSD matrices")
    m.add_argument("--op", choices=("geo", "weighted"), default="geo")
    m.add_argument("--theta", type=float, default=0.5)
    m.add_argument("a")
    m.add_argument("b")

    n = sub.add_parser("norms", help="evaluate a unitarily invariant norm")
    n.add_argument("--spec", type=_norms, required=True)
    n.add_argument("matrix")
    return ap


def _read_matrix(path):
    return codec.matrix_from_json(harness.load_fixture(path), path)


def _emit(obj, out=None):
    text = json.dumps(obj, indent=2, sort_keys=False) + "\n"
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_verify(args) -> int:
    ids = list(harness.INEQUALITY_IDS) if args.ineq == "all" else [i.strip() for i in args.ineq.split(",")]
    tol = args.tol if args.tol is not None else default_tolerance()
    kw = {k: v for k, v in (("dims", args.dim), ("seq_lens", args.seq_len), ("p_values", args.p),
                            ("r_values", args.r), ("alpha_values", args.alpha), ("norm_specs", args.norm))
          if v is not None}
    try:
        cfg = harness.CampaignConfig(ids, trials=args.trials, seed=args.seed, tolerance=tol, **kw)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    empty = [i for i in ids if not harness.parameter_grid(i, cfg)]
    if empty and len(empty) == len(ids):
        raise UsageError(f"no admissible parameter combination for {', '.join(empty)}")
    report = harness.run_campaign(cfg, jobs=max(1, args.jobs))
    _emit(report.to_json(), args.out)
    s = report.summary
    print(f"{s['total']} trials, {s['failures']} failures", file=sys.stderr)
    return EXIT_FAIL if s["failures"] else EXIT_OK


def cmd_replay(args) -> int:
    res = harness.replay(args.fixture)
    _emit({"record": res.record.to_json(), "expected": res.expected, "matches": res.matches})
    return EXIT_OK if res.matches and res.record.passed else EXIT_FAIL


def cmd_means(args) -> int:
    A, B = _read_matrix(args.a), _read_matrix(args.b)
    res = geometric_mean(A, B) if args.op == "geo" else weighted_geometric_mean(A, B, args.theta)
    _emit({"value": codec.matrix_to_json(res.value), "epsilon_used": res.epsilon_used,
           "convergence_gap": res.convergence_gap})
    return EXIT_OK


def cmd_norms(args) -> int:
    M = _read_matrix(args.matrix)
    _emit([{"norm": norm_to_json(s), "value": evaluate(s, M)} for s in args.spec])
    return EXIT_OK


COMMANDS = {"verify": cmd_verify, "replay": cmd_replay, "means": cmd_means, "norms": cmd_norms}


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except (UsageError, OpHolderError) as exc:
        print(f"opholder: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
