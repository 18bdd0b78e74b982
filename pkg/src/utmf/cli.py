"""Command-line front end.

Exit codes: 0 success, 1 usage or parameter error, 2 I/O error,
3 verification failure.
"""

import argparse
import sys
from pathlib import Path

from . import bench
from .filters import FilterParams
from .fsmd import DEFAULT_COSTS, OVERLAPPED_COSTS
from .image import PGMError, load_pgm, save_pgm
from .metrics import QualityReport
from .noise import NoiseSpec, measure_density
from .sorting import SHEAR_NETWORK, SHIPPED_NETWORK

EXIT_OK, EXIT_USAGE, EXIT_IO, EXIT_VERIFY = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: error: {message}")


def _csv_list(convert=str):
    def parse(text):
        return [convert(v.strip()) for v in text.split(",") if v.strip()]

    return parse


def cmd_noise(args):
    if args.kind == "gaussian":
        level = args.var if args.var is not None else 0.001
        spec = NoiseSpec("gaussian", level, args.seed)
    else:
        if args.density is None:
            raise UsageError("--density is required for impulse and mixed noise")
        var = args.var if args.var is not None else 0.001
        spec = NoiseSpec(args.kind, args.density, args.seed, var)
    clean = load_pgm(args.input)
    noisy = spec.apply(clean)
    save_pgm(args.output, noisy, ascii=args.ascii)
    print(f"density={measure_density(clean, noisy):.6f}")
    return EXIT_OK


def cmd_denoise(args):
    img = load_pgm(args.input)
    out = bench.run_filter(args.filter, img, FilterParams(args.t, args.t1))
    save_pgm(args.output, out, ascii=args.ascii)
    return EXIT_OK


def cmd_metrics(args):
    clean, noisy, restored = (load_pgm(p) for p in (args.clean, args.noisy, args.restored))
    print(QualityReport.evaluate(clean, noisy, restored).to_csv_row())
    return EXIT_OK


def cmd_sweep(args):
    config = {}
    if args.config:
        config = bench.parse_config(Path(args.config).read_text())
    for key in ("images", "noise", "levels", "filters", "seeds", "t", "t1", "var", "jobs"):
        value = getattr(args, key)
        if value is not None:
            config[key] = value
    config = {k: ([str(x) for x in v] if isinstance(v, list) else str(v)) for k, v in config.items()}
    spec = bench.sweep_spec_from_config(config)
    missing = [p for p in spec.images if not Path(p).is_file()]
    if missing:
        raise FileNotFoundError(f"image not found: {', '.join(missing)}")
    rows = bench.run_sweep(spec)
    Path(args.output).write_text(bench.format_sweep_csv(rows, spec.noise))
    print(f"rows={len(rows)}")
    return EXIT_OK


def cmd_verify(args, network=None):
    if network is None:
        network = SHEAR_NETWORK if args.wiring == "shear" else SHIPPED_NETWORK
    costs = OVERLAPPED_COSTS if args.costs == "overlapped" else DEFAULT_COSTS
    ok, text = bench.run_verification(network, FilterParams(args.t, args.t1), costs)
    Path(args.report).write_text(text)
    sys.stdout.write(text)
    return EXIT_OK if ok else EXIT_VERIFY


def build_parser():
    parser = _Parser(prog="utmf", description="Trimmed-median impulse noise toolkit.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("noise", help="corrupt a PGM image")
    p.add_argument("--kind", choices=["sp", "rvin", "gaussian", "mixed"], default="sp")
    p.add_argument("--density", type=float, help="impulse density as a fraction")
    p.add_argument("--var", type=float, help="Gaussian variance on the [0, 1] scale")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--ascii", action="store_true", help="write P2 instead of P5")
    p.add_argument("input")
    p.add_argument("output")
    p.set_defaults(func=cmd_noise)

    p = sub.add_parser("denoise", help="filter a PGM image")
    p.add_argument("--filter", choices=sorted(bench.FILTERS), default="pa")
    p.add_argument("--t", type=int, default=40)
    p.add_argument("--t1", type=int, default=20)
    p.add_argument("--ascii", action="store_true")
    p.add_argument("input")
    p.add_argument("output")
    p.set_defaults(func=cmd_denoise)

    p = sub.add_parser("metrics", help="print mse,psnr,ief for a restoration")
    p.add_argument("clean")
    p.add_argument("noisy")
    p.add_argument("restored")
    p.set_defaults(func=cmd_metrics)

    p = sub.add_parser("sweep", help="noise-level sweep to CSV")
    p.add_argument("--config", help="key = value file; flags override it")
    p.add_argument("--images", type=_csv_list())
    p.add_argument("--noise", choices=["sp", "rvin", "gaussian", "mixed"])
    p.add_argument("--levels", type=_csv_list(float))
    p.add_argument("--filters", type=_csv_list())
    p.add_argument("--seeds", type=_csv_list(int))
    p.add_argument("--t", type=int)
    p.add_argument("--t1", type=int)
    p.add_argument("--var", type=float, help="Gaussian part of mixed noise")
    p.add_argument("--jobs", type=int)
    p.add_argument("output")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="check the sorting network and scheduler model")
    p.add_argument("--wiring", choices=["shipped", "shear"], default="shipped")
    p.add_argument("--costs", choices=["default", "overlapped"], default="default")
    p.add_argument("--t", type=int, default=40)
    p.add_argument("--t1", type=int, default=20)
    p.add_argument("report")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except (OSError, PGMError) as exc:
        print(f"utmf: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except ValueError as exc:
        print(f"utmf: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
