"""Command-line front end: params, encode, corrupt, decode, verify, lemmas.

Pipelines speak JSON lines.  ``encode`` turns ``{"perm": [...]}`` into
``{"codec": {...}, "word": [...]}``; ``corrupt`` adds a ``pattern`` and
rewrites ``word``; ``decode`` answers ``{"perm": [...]}`` or
``{"error": reason}``.  The codec descriptor travels with every line, so
later stages need no flags.

Exit codes: 0 ok, 1 I/O or format error or a failed line, 2 bad parameters,
3 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from contextlib import ExitStack
from typing import Iterable, Optional, TextIO

import numpy as np

from .channel import PatternA, PatternB, PatternC, inject, pattern_to_dict, random_pattern
from .codec import MODELS, Codec, codec_from_descriptor, make_codec
from .errors import DecodeError, ParamsError
from .oracle import LEMMAS, exhaustive_verify, lemma_suite

EXIT_OK, EXIT_IO, EXIT_PARAMS, EXIT_VERIFY = 0, 1, 2, 3


def _dumps(obj) -> str:
    return json.dumps(obj, separators=(",", ":"))


def _line_seed(seed: int, index: int) -> int:
    return int(np.random.SeedSequence([seed, index]).generate_state(1)[0])


def _codec_from_args(args) -> Codec:
    if args.model is None or args.n is None or args.t is None:
        raise ParamsError("--model, --n and --t are required")
    return make_codec(args.model, args.n, args.t, args.m)


def _param_report(args) -> tuple[dict, int]:
    from .code_a import CodeParamsA, redundancy_length as tp_a
    from .code_b import CodeParamsB, redundancy_length as tp_b
    from .code_c import CodeParamsC, redundancy_length as tp_c

    model, n, t, m = args.model.upper(), args.n, args.t, args.m
    report = {"model": model, "n": n, "t": t}
    try:
        if model == "A":
            if m is None:
                m = CodeParamsA.smallest_threshold(n, t).m
            report["m"] = m
            report["t_prime"] = tp_a(n, t, m)
            cls, kwargs = CodeParamsA, {"n": n, "t": t, "m": m}
        elif model == "B":
            report["t_prime"] = tp_b(n, t)
            cls, kwargs = CodeParamsB, {"n": n, "t": t}
        else:
            report["t_prime"] = tp_c(n, t)
            cls, kwargs = CodeParamsC, {"n": n, "t": t}
        extra = 0 if model == "A" else 1
        report["redundancy"] = report["t_prime"] + extra
        report["length"] = n + report["redundancy"]
        params = cls(**kwargs)
    except ParamsError as e:
        report["valid"] = False
        report["error"] = str(e)
        return report, EXIT_PARAMS
    report["constraints"] = params.constraints()
    report["lower_bound_ok"] = params.lower_bound_ok()
    if model == "C":
        report["hypothesis_n_ge_t_plus_12"] = params.hypothesis_ok()
    report["valid"] = True
    return report, EXIT_OK


def cmd_params(args, out: TextIO) -> int:
    report, code = _param_report(args)
    out.write(_dumps(report) + "\n")
    return code


def _records(stream: TextIO) -> Iterable[tuple[Optional[dict], str]]:
    for raw in stream:
        line = raw.strip()
        if not line:
            continue
        try:
            rec = json.loads(line)
            if not isinstance(rec, dict):
                raise ValueError("not an object")
            yield rec, ""
        except ValueError as e:
            yield None, f"bad JSON: {e}"


def _line_codec(rec: dict, args) -> Codec:
    if "codec" in rec:
        return codec_from_descriptor(rec["codec"])
    return _codec_from_args(args)


def _explicit_pattern(args, codec: Codec):
    m = codec.m if args.pattern_m is None else args.pattern_m
    if args.positions is not None:
        return PatternA(tuple(int(p) for p in args.positions.split(",") if p), m)
    if args.j is not None:
        return PatternB(args.j, args.t1 or 1, m)
    if args.i1 is not None:
        return PatternC(args.i1, args.t1 or 1, m)
    return None


def _process(args, inp: TextIO, out: TextIO, handle) -> int:
    failed = False
    for index, (rec, problem) in enumerate(_records(inp)):
        if rec is None:
            out.write(_dumps({"error": "format", "detail": problem}) + "\n")
            failed = True
            continue
        try:
            result = handle(rec, index)
        except DecodeError as e:
            result = {"error": e.reason}
        except ParamsError as e:
            result = {"error": "params", "detail": str(e)}
        except (KeyError, TypeError, ValueError) as e:
            result = {"error": "format", "detail": str(e)}
        failed = failed or "error" in result
        out.write(_dumps(result) + "\n")
    return EXIT_IO if failed else EXIT_OK


def cmd_encode(args, inp, out) -> int:
    codec = _codec_from_args(args)

    def handle(rec, index):
        return {"codec": codec.descriptor(), "word": list(codec.encode(rec["perm"]))}

    return _process(args, inp, out, handle)


def cmd_corrupt(args, inp, out) -> int:
    def handle(rec, index):
        codec = _line_codec(rec, args)
        word = tuple(rec["word"])
        pattern = _explicit_pattern(args, codec)
        if pattern is None:
            pattern = random_pattern(codec.model, word, codec.t, codec.m, _line_seed(args.seed, index))
        try:
            seen = inject(word, pattern)
        except ValueError as e:
            return {"error": "pattern", "detail": str(e)}
        return {"codec": codec.descriptor(), "word": list(seen), "pattern": pattern_to_dict(pattern)}

    return _process(args, inp, out, handle)


def cmd_decode(args, inp, out) -> int:
    def handle(rec, index):
        codec = _line_codec(rec, args)
        return {"perm": list(codec.decode(rec["word"]))}

    return _process(args, inp, out, handle)


def _scope_args(args, n: int) -> Optional[int]:
    if args.exhaustive:
        return None
    if args.samples is not None:
        return args.samples
    return None if n <= 7 else 1000


def cmd_verify(args, out: TextIO) -> int:
    if args.model_pos:
        args.model = args.model_pos
    codec = _codec_from_args(args)
    report = exhaustive_verify(codec, _scope_args(args, codec.n), args.seed)
    out.write(report.to_json(with_elapsed=False) + "\n")
    print(report.summary(), file=sys.stderr)
    return EXIT_OK if report.verified else EXIT_VERIFY


def cmd_lemmas(args, out: TextIO) -> int:
    names = [args.lemma_pos or args.lemma] if (args.lemma_pos or args.lemma) else list(LEMMAS)
    if args.n is None or args.t is None:
        raise ParamsError("--n and --t are required")
    status = EXIT_OK
    for name in names:
        samples = None if args.exhaustive else args.samples
        report = lemma_suite(name, args.n, args.t, args.m or 0, samples, args.seed)
        out.write(report.to_json(with_elapsed=False) + "\n")
        print(report.summary(), file=sys.stderr)
        if not report.verified:
            status = EXIT_VERIFY
    return status


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--model", type=str.upper, choices=MODELS)
    common.add_argument("--n", type=int)
    common.add_argument("--t", type=int)
    common.add_argument("--m", type=int)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--samples", type=int)
    common.add_argument("--exhaustive", action="store_true")
    common.add_argument("--in", dest="input", metavar="PATH", help="input file (default stdin)")
    common.add_argument("--out", metavar="PATH", help="output file (default stdout)")

    parser = argparse.ArgumentParser(prog="tailcodes", description=__doc__.split("\n")[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("params", parents=[common], help="report t', length and constraint checks")
    sub.add_parser("encode", parents=[common], help="encode {\"perm\"} lines")
    corrupt = sub.add_parser("corrupt", parents=[common], help="inject one error pattern per line")
    corrupt.add_argument("--positions", help="model A: comma-separated 1-based codeword positions")
    corrupt.add_argument("--j", type=int, help="model B: lowest stuck value")
    corrupt.add_argument("--i1", type=int, help="model C: stuck position")
    corrupt.add_argument("--t1", type=int, help="model B burst length / model C drop")
    corrupt.add_argument("--pattern-m", type=int, help="error threshold for explicit patterns")
    sub.add_parser("decode", parents=[common], help="decode {\"word\"} lines")
    verify = sub.add_parser("verify", parents=[common], help="round-trip every pattern over a scope")
    verify.add_argument("model_pos", nargs="?", type=str.upper, choices=MODELS, metavar="MODEL")
    lemmas = sub.add_parser("lemmas", parents=[common], help="run lemma-level checks")
    lemmas.add_argument("lemma_pos", nargs="?", type=str.upper, choices=LEMMAS, metavar="LEMMA")
    lemmas.add_argument("--lemma", type=str.upper, choices=LEMMAS)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        with ExitStack() as stack:
            out = stack.enter_context(open(args.out, "w")) if args.out else sys.stdout
            if args.command == "params":
                if args.model is None or args.n is None or args.t is None:
                    raise ParamsError("--model, --n and --t are required")
                return cmd_params(args, out)
            if args.command == "verify":
                return cmd_verify(args, out)
            if args.command == "lemmas":
                return cmd_lemmas(args, out)
            inp = stack.enter_context(open(args.input)) if args.input else sys.stdin
            handler = {"encode": cmd_encode, "corrupt": cmd_corrupt, "decode": cmd_decode}[args.command]
            return handler(args, inp, out)
    except ParamsError as e:
        print(f"tailcodes: {e}", file=sys.stderr)
        return EXIT_PARAMS
    except OSError as e:
        print(f"tailcodes: {e}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
