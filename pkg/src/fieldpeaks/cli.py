"""Command-line front end: ``scan``, ``cluster`` and ``compare``.

Exit codes: 0 success, 1 bad input or usage, 2 degenerate dataset.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .dataset import DatasetError, load_dataset, pairwise_distances
from .datafield import DegenerateFieldError, FieldScan, SearchConfig, optimize_sigma
from .dpc import DpcParams, parse_centers, run_dpc
from .report import RunSummary, compare, render_table

EXIT_OK, EXIT_INPUT, EXIT_DEGENERATE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT, f"{self.prog}: error: {message}\n")


def _positive_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not (math.isfinite(v) and v > 0):
        raise argparse.ArgumentTypeError(f"must be a positive number: {text!r}")
    return v


def _positive_int(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 2:
        raise argparse.ArgumentTypeError(f"must be at least 2: {text!r}")
    return v


def _dc_source(text):
    return "auto" if text == "auto" else _positive_float(text)


def _g(x):
    return f"{x:.9g}"


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--input", required=True, help="point file, one point per row")
    common.add_argument("--format", choices=("csv", "whitespace"), default="csv",
                        help="column delimiter (default: csv)")
    common.add_argument("--header", action="store_true", help="skip the first row")
    common.add_argument("--sigma-min", type=_positive_float, default=None,
                        help="lower end of the sigma scan (default: 1e-3 * smallest nonzero distance)")
    common.add_argument("--sigma-max", type=_positive_float, default=None,
                        help="upper end of the sigma scan (default: 10 * largest distance)")
    common.add_argument("--sigma-steps", type=_positive_int, default=200,
                        help="number of log-spaced sigma samples (default: 200)")

    clustering = argparse.ArgumentParser(add_help=False)
    clustering.add_argument("--kernel", choices=("gaussian", "cutoff"), default="gaussian",
                            help="density kernel (default: gaussian)")
    clustering.add_argument("--centers", default="gap",
                            help="'gap' (largest gamma ratio) or 'top:<k>' (default: gap)")

    parser = _Parser(prog="fieldpeaks", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("scan", parents=[common], help="entropy curve and optimal sigma")
    p.add_argument("--out", required=True, help="output prefix; writes <out>.entropy.tsv")

    p = sub.add_parser("cluster", parents=[common, clustering], help="run density-peaks clustering")
    p.add_argument("--dc", type=_dc_source, default="auto", help="cutoff distance or 'auto' (default: auto)")
    p.add_argument("--out", required=True,
                   help="output prefix; writes <out>.labels.csv, <out>.decision.tsv, <out>.summary.json")

    p = sub.add_parser("compare", parents=[common, clustering], help="manual versus data-field threshold")
    p.add_argument("--dc", type=_positive_float, required=True, help="manual cutoff distance")
    p.add_argument("--name", default=None, help="dataset name in the report (default: input file stem)")
    p.add_argument("--report-format", choices=("tsv", "json"), default="tsv")
    p.add_argument("--out", default=None, help="output prefix; writes <out>.compare.<fmt> (default: stdout)")
    return parser


def _config(args):
    return SearchConfig(n_coarse=args.sigma_steps, sigma_min=args.sigma_min, sigma_max=args.sigma_max)


def _strategy(args, n):
    try:
        strategy = parse_centers(args.centers)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if getattr(strategy, "k", 0) > n:
        raise UsageError(f"--centers {args.centers} asks for more centers than the {n} points available")
    return strategy


def write_entropy_tsv(path, scan: FieldScan):
    lines = ["sigma\tentropy_nats"]
    lines += [f"{_g(s)}\t{_g(h)}" for s, h in scan.samples]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_labels_csv(path, partition):
    lines = ["index,label,is_halo"]
    lines += [f"{i},{lab},{int(h)}" for i, (lab, h) in enumerate(zip(partition.labels, partition.is_halo))]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def write_decision_tsv(path, state, partition):
    centers = set(partition.centers)
    lines = ["index\trho\tdelta\tgamma\tis_center"]
    for i in range(state.rho.size):
        lines.append(f"{i}\t{_g(state.rho[i])}\t{_g(state.delta[i])}\t{_g(state.gamma[i])}\t{int(i in centers)}")
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _summary_line(scan):
    return f"sigma_star={_g(scan.sigma_star)} dc={_g(scan.dc)} h_min={_g(scan.h_min)}"


def cmd_scan(args):
    ds = load_dataset(args.input, args.format, args.header)
    dm = pairwise_distances(ds)
    cfg = _config(args)
    out = f"{args.out}.entropy.tsv"
    try:
        scan = optimize_sigma(dm, cfg)
    except DegenerateFieldError as exc:
        if exc.scan is not None:
            write_entropy_tsv(out, exc.scan)
        raise
    write_entropy_tsv(out, scan)
    print(_summary_line(scan))
    return EXIT_OK


def cmd_cluster(args):
    ds = load_dataset(args.input, args.format, args.header)
    dm = pairwise_distances(ds)
    strategy = _strategy(args, ds.n)
    scan = None
    if args.dc == "auto":
        scan = optimize_sigma(dm, _config(args))
        dc = scan.dc
    else:
        dc = args.dc
    state, part = run_dpc(dm, DpcParams(dc, args.kernel, strategy))
    summary = RunSummary.from_run(dc, part, scan)
    write_labels_csv(f"{args.out}.labels.csv", part)
    write_decision_tsv(f"{args.out}.decision.tsv", state, part)
    Path(f"{args.out}.summary.json").write_text(json.dumps(summary.to_dict(), indent=2) + "\n", encoding="utf-8")
    print(f"dc={_g(dc)} n_clusters={summary.n_clusters} noise_count={summary.noise_count}")
    return EXIT_OK


def cmd_compare(args):
    ds = load_dataset(args.input, args.format, args.header)
    strategy = _strategy(args, ds.n)
    name = args.name if args.name is not None else Path(args.input).stem
    row = compare(ds, args.dc, strategy, args.kernel, name=name, cfg=_config(args))
    text = render_table([row], args.report_format)
    if args.out is None:
        sys.stdout.write(text)
    else:
        Path(f"{args.out}.compare.{args.report_format}").write_text(text, encoding="utf-8")
    return EXIT_OK


COMMANDS = {"scan": cmd_scan, "cluster": cmd_cluster, "compare": cmd_compare}


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    try:
        return COMMANDS[args.command](args)
    except DatasetError as exc:
        print(f"fieldpeaks: error: {args.input}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"fieldpeaks: error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except DegenerateFieldError as exc:
        print(f"fieldpeaks: degenerate dataset: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except (ValueError, OSError) as exc:
        print(f"fieldpeaks: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
