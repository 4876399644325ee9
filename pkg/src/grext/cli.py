"""Command line interface.

    grext ext --source a --target a^2 --max-degree 2 [--mode both] [--rational]
    grext magnus expand --word 'x1*x2^-1' --cutoff 3
    grext passi rank --factors 2,1 --cutoff 2 [--ball 4]
    grext verify extdim | all

Exit codes: 0 success, 1 a check failed, 2 usage error, 3 resource limit.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .config import load_config
from .ext import MODES, ext, rational_ext, source_arity
from .linalg import ResourceLimitError
from .magnus import TruncGroupRing, ball_presentation_rank, graded_rank, magnus_expand, model_rank
from .parser import parse_functor
from .suites import SUITES, run_suite
from .words import parse_word

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_LIMIT = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", choices=("json", "text"), default=argparse.SUPPRESS)
    common.add_argument("--config", default=argparse.SUPPRESS, help="JSON configuration file")
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS)
    common.add_argument("--no-timing", action="store_true", default=argparse.SUPPRESS,
                        help="report zero timings so reruns are byte-identical")
    common.add_argument("--max-module-dim", type=int, default=argparse.SUPPRESS)
    common.add_argument("--max-matrix-entries", type=int, default=argparse.SUPPRESS)

    p = _Parser(prog="grext", description="Ext groups of polynomial functors on free groups",
                parents=[common])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    e = sub.add_parser("ext", parents=[common], help="Ext groups between functors")
    e.add_argument("--source", required=True, help="a, a^n or passi(n)")
    e.add_argument("--target", required=True, help="functor expression")
    e.add_argument("--max-degree", type=int, required=True)
    e.add_argument("--mode", choices=MODES, default="normalized")
    e.add_argument("--rational", action="store_true", help="report Betti numbers instead")

    m = sub.add_parser("magnus", parents=[common], help="Magnus expansion")
    msub = m.add_subparsers(dest="action", required=True, parser_class=_Parser)
    me = msub.add_parser("expand", parents=[common])
    me.add_argument("--word", required=True)
    me.add_argument("--cutoff", type=int, required=True)
    me.add_argument("--rank", type=int, default=None, help="ambient rank (default: largest index)")

    q = sub.add_parser("passi", parents=[common], help="ranks of Z[G]/I^{N+1}")
    qsub = q.add_subparsers(dest="action", required=True, parser_class=_Parser)
    qr = qsub.add_parser("rank", parents=[common])
    qr.add_argument("--factors", required=True, help="comma separated free ranks, e.g. 2,1")
    qr.add_argument("--cutoff", type=int, required=True)
    qr.add_argument("--ball", type=int, default=None, help="also run the ball presentation oracle")

    v = sub.add_parser("verify", parents=[common], help="run verification suites")
    v.add_argument("suite", choices=SUITES + ("all",))
    return p


def _emit(payload: dict, text: str, out: str):
    if out == "json":
        sys.stdout.write(json.dumps(payload, sort_keys=False) + "\n")
    else:
        sys.stdout.write(text.rstrip("\n") + "\n")


def _cmd_ext(args, cfg) -> int:
    source = parse_functor(args.source, cfg.max_functor_degree)
    target = parse_functor(args.target, cfg.max_functor_degree)
    source_arity(source)
    if args.max_degree < 0:
        raise ValueError("--max-degree must be >= 0")
    t0 = time.perf_counter()
    if args.rational:
        betti = rational_ext(source, target, args.max_degree, args.mode, cfg.limits, cfg.jobs)
        ms = int((time.perf_counter() - t0) * 1000) if cfg.timing else 0
        payload = {"query": "rational_ext",
                   "params": {"source": str(source), "target": str(target),
                              "max_degree": args.max_degree, "mode": args.mode},
                   "groups": [{"degree": i, "rank": b, "torsion": []} for i, b in enumerate(betti)],
                   "timing_ms": ms}
        text = "\n".join(f"Betti^{i} = {b}" for i, b in enumerate(betti))
        _emit(payload, text, args.out)
        return EXIT_OK
    table = ext(source, target, args.max_degree, args.mode, cfg.limits, cfg.jobs)
    payload = table.to_json(cfg.timing)
    lines = [f"Ext^{i}({source}, {target}) = {g}" for i, g in enumerate(table.groups)]
    if table.modes_agree is not None:
        lines.append(f"normalized and unnormalized agree: {table.modes_agree}")
    _emit(payload, "\n".join(lines), args.out)
    return EXIT_OK if table.modes_agree in (None, True) else EXIT_FAIL


def _cmd_magnus(args, cfg) -> int:
    w = parse_word(args.word, args.rank)
    series = magnus_expand(w, args.cutoff)
    payload = {"query": "magnus_expand", "params": {"word": str(w), "cutoff": args.cutoff,
                                                    "rank": w.rank},
               "terms": [{"monomial": ".".join(f"X{i}" for i in m) or "1", "coeff": c}
                         for m, c in sorted(series.coeffs.items(), key=lambda kv: (len(kv[0]), kv[0]))]}
    _emit(payload, str(series), args.out)
    return EXIT_OK


def _cmd_passi(args, cfg) -> int:
    try:
        factors = tuple(int(x) for x in args.factors.split(",") if x.strip())
    except ValueError:
        raise ValueError(f"bad --factors {args.factors!r}") from None
    if not factors or any(n < 0 for n in factors) or args.cutoff < 0:
        raise ValueError("factors must be non-negative integers and the cutoff >= 0")
    ring = TruncGroupRing(factors, args.cutoff)
    graded = [graded_rank(ring, r) for r in range(args.cutoff + 1)]
    payload = {"query": "passi_rank", "params": {"factors": list(factors), "cutoff": args.cutoff},
               "rank": model_rank(factors, args.cutoff), "torsion": [], "stable": True,
               "graded_ranks": graded}
    lines = [f"rank Z[G]/I^{args.cutoff + 1} = {payload['rank']} (graded {graded})"]
    ok = True
    if args.ball is not None:
        rep = ball_presentation_rank(factors, args.cutoff, args.ball, cfg.limits.max_module_dim)
        payload["ball"] = rep.to_json()
        payload["stable"] = rep.stable
        ok = rep.rank == payload["rank"] and not rep.torsion
        payload["agrees"] = ok
        lines.append(f"ball radius {args.ball}: rank {rep.rank}, torsion {rep.torsion}, "
                     f"stable {rep.stable}, agrees {ok}")
    _emit(payload, "\n".join(lines), args.out)
    return EXIT_OK if ok else EXIT_FAIL


def _cmd_verify(args, cfg) -> int:
    names = SUITES if args.suite == "all" else (args.suite,)
    reports = [run_suite(n, cfg) for n in names]
    ok = all(r.passed for r in reports)
    payload = {"query": "verify", "suites": [r.to_json() for r in reports],
               "status": "pass" if ok else "fail"}
    _emit(payload, "\n".join(r.to_text() for r in reports), args.out)
    return EXIT_OK if ok else EXIT_FAIL


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    args.out = getattr(args, "out", "text")
    try:
        cfg = load_config(getattr(args, "config", None), jobs=getattr(args, "jobs", None),
                          timing=False if getattr(args, "no_timing", False) else None,
                          max_module_dim=getattr(args, "max_module_dim", None),
                          max_matrix_entries=getattr(args, "max_matrix_entries", None))
        handler = {"ext": _cmd_ext, "magnus": _cmd_magnus, "passi": _cmd_passi,
                   "verify": _cmd_verify}[args.command]
        return handler(args, cfg)
    except ResourceLimitError as exc:
        sys.stderr.write(f"resource limit: {exc}\n")
        return EXIT_LIMIT
    except (ValueError, OSError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
