"""Command-line entry point: gen | bin | render | eval | serve.

Exit codes: 0 success, 1 usage error (bad flags), 2 data error (a failure
raised while processing inputs, e.g. a degenerate range or a missing file).
Every command is reproducible from its flags plus its input files; there is
no hidden state or clock dependence.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import binning, datagen, render, server
from .core import (AccuStripesError, Distribution, is_manifest, load_dataset,
                   load_manifest, save_dataset)
from .density import density_for
from .evaluation import run_evaluation

USAGE_EXIT = 1
DATA_EXIT = 2


class _Parser(argparse.ArgumentParser):
    # argparse exits 2 on usage errors; the CLI contract reserves 2 for
    # data errors, so remap.
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE_EXIT)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="accustripes",
                     description="Adaptive binning and stacked stripe charts "
                                 "for comparing univariate distributions.")
    sub = parser.add_subparsers(dest="command", required=True)

    p_gen = sub.add_parser("gen", parents=[], help="generate a synthetic dataset")
    p_gen.add_argument("--size", type=int, required=True)
    p_gen.add_argument("--flaw", choices=datagen.FLAW_KINDS, default="none")
    p_gen.add_argument("--severity", type=float, default=0.0)
    p_gen.add_argument("--location", type=float, default=0.5,
                       help="gap center / spike value in (0,1)")
    p_gen.add_argument("--seed", type=int, required=True)
    p_gen.add_argument("--out", help="output JSON path (single dataset)")
    p_gen.add_argument("--sweep", action="store_true",
                       help="write the 0/5/15/25%% severity series instead")
    p_gen.add_argument("--out-dir", default=".",
                       help="output directory for --sweep files")

    p_bin = sub.add_parser("bin", help="bin one dataset")
    p_bin.add_argument("--method", choices=("uniform", "bb", "nb"), required=True)
    p_bin.add_argument("--input", required=True)
    p_bin.add_argument("--out", required=True)
    p_bin.add_argument("--p0", type=float, default=binning.DEFAULT_P0)
    p_bin.add_argument("--gvf-threshold", type=float,
                       default=binning.DEFAULT_GVF_THRESHOLD)
    p_bin.add_argument("--k-max", type=int, default=binning.DEFAULT_K_MAX)

    p_render = sub.add_parser("render", help="render a compared set")
    p_render.add_argument("--layout", choices=("bin", "bin-curve", "filled-curve"),
                          required=True)
    p_render.add_argument("--method", choices=("uniform", "bb", "nb"),
                          required=True)
    p_render.add_argument("--inputs", nargs="+", required=True,
                          help="dataset files, or one manifest JSON")
    p_render.add_argument("--out", required=True)
    p_render.add_argument("--color-scope", choices=("global", "per"),
                          default="global")
    p_render.add_argument("--emit", choices=("svg", "spec"), default="svg")
    p_render.add_argument("--p0", type=float, default=binning.DEFAULT_P0)
    p_render.add_argument("--gvf-threshold", type=float,
                          default=binning.DEFAULT_GVF_THRESHOLD)
    p_render.add_argument("--k-max", type=int, default=binning.DEFAULT_K_MAX)

    p_eval = sub.add_parser("eval", help="run the binning-quality evaluation")
    p_eval.add_argument("--seed", type=int, required=True)
    p_eval.add_argument("--sizes", default="1000,10000,100000",
                        help="comma-separated size categories")
    p_eval.add_argument("--per-size", type=int, default=24)
    p_eval.add_argument("--out", default="eval_report.json")

    p_serve = sub.add_parser("serve", help="serve the JSON API and web UI")
    p_serve.add_argument("--port", type=int, default=8000)
    p_serve.add_argument("--inputs", nargs="+", required=True)
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--ui-dir", default=None,
                         help="directory of built UI assets served at /")
    return parser


def _load_inputs(paths) -> list[Distribution]:
    if len(paths) == 1 and is_manifest(paths[0]):
        return load_manifest(paths[0])
    return [load_dataset(p) for p in paths]


def _cmd_gen(args, parser) -> int:
    if not 0.0 <= args.severity <= datagen.MAX_SEVERITY:
        parser.error(f"--severity must be in [0, {datagen.MAX_SEVERITY}]")
    meta_common = {
        "generator": "numpy.random.default_rng (PCG64)",
        "muRange": list(datagen.MU_RANGE),
        "sigmaRange": list(datagen.SIGMA_RANGE),
    }
    if args.sweep:
        if args.flaw == "none":
            parser.error("--sweep requires --flaw other than 'none'")
        out_dir = Path(args.out_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        series = datagen.flaw_sweep(args.size, args.flaw, args.seed,
                                    location=args.location)
        for dist, pct in zip(series, (0, 5, 15, 25)):
            meta = dict(meta_common)
            meta["flaw"] = {"kind": "none" if pct == 0 else args.flaw,
                            "severity": pct / 100.0,
                            "location": args.location, "seed": args.seed}
            path = out_dir / f"sweep_{args.flaw}_{pct:02d}.json"
            save_dataset(dist, path, meta=meta)
            print(path)
        return 0
    if not args.out:
        parser.error("--out is required without --sweep")
    dist = datagen.gen_gaussian(args.size, args.seed)
    flaw = None
    if args.flaw != "none" and args.severity > 0:
        flaw = datagen.FlawSpec(kind=args.flaw, severity=args.severity,
                                location=args.location, seed=args.seed)
        dist = datagen.apply_flaw(dist, flaw)
    meta = dict(meta_common)
    meta["flaw"] = (flaw.to_json_dict() if flaw
                    else {"kind": "none", "severity": 0.0})
    save_dataset(dist, args.out, meta=meta)
    print(args.out)
    return 0


def _partition_for(dist, args):
    return binning.bin_with(dist, args.method, p0=args.p0,
                            gvf_threshold=args.gvf_threshold, k_max=args.k_max)


def _cmd_bin(args, parser) -> int:
    dist = load_dataset(args.input)
    partition = _partition_for(dist, args)
    Path(args.out).write_text(json.dumps(partition.to_json_dict()),
                              encoding="utf-8")
    print(args.out)
    return 0


def _cmd_render(args, parser) -> int:
    dists = _load_inputs(args.inputs)
    partitions = [_partition_for(d, args) for d in dists]
    layout = render.normalize_layout(args.layout)
    densities = None
    if layout in ("BinCurve", "FilledCurve"):
        densities = [density_for(d) for d in dists]
    spec = render.build_render_spec(dists, partitions, densities,
                                    layout=layout, scope=args.color_scope)
    if args.emit == "spec":
        Path(args.out).write_text(json.dumps(spec.to_json_dict()),
                                  encoding="utf-8")
    else:
        Path(args.out).write_text(render.render_svg(spec), encoding="utf-8")
    print(args.out)
    return 0


def _cmd_eval(args, parser) -> int:
    try:
        sizes = tuple(int(s) for s in args.sizes.split(",") if s)
    except ValueError:
        parser.error("--sizes must be a comma-separated list of integers")
    report = run_evaluation(args.seed, sizes=sizes, per_size=args.per_size)
    Path(args.out).write_text(report.to_json(), encoding="utf-8")
    print(report.to_text_table())
    return 0


def _cmd_serve(args, parser) -> int:
    dists = _load_inputs(args.inputs)
    httpd = server.make_server(dists, host=args.host, port=args.port,
                               ui_dir=args.ui_dir)
    print(f"serving on http://{args.host}:{httpd.server_address[1]}",
          flush=True)
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        httpd.server_close()
    return 0


_COMMANDS = {"gen": _cmd_gen, "bin": _cmd_bin, "render": _cmd_render,
             "eval": _cmd_eval, "serve": _cmd_serve}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_EXIT
    try:
        return _COMMANDS[args.command](args, parser)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_EXIT
    except AccuStripesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_EXIT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return DATA_EXIT


if __name__ == "__main__":
    sys.exit(main())
