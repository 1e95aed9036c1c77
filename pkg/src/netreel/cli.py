"""Command-line interface.

Subcommands:
  pipeline        sample a model and write the full frame bundle
  stats           report a statistic's distribution (plus its dotplot) from a bundle
  emd             score one ball distribution against another
  sampling-error  quantify Monte-Carlo sampling error for a model statistic

Exit codes: 0 success, 1 input parse error, 2 validation error,
3 layout non-convergence under --strict.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import deque
from pathlib import Path

from .bundle import FrameBundle, build_bundle, parse_bundle
from .errors import ParseError, ValidationError
from .evaluate import BallDistribution, default_bin_width, emd, qdp, sampling_error
from .layout import DEFAULT_MAX_ITER, DEFAULT_TOL
from .model import VIEW_MODES, ingest_css, parse_css, parse_graph
from .stats import StatDistribution, StatSpec

EXIT_PARSE = 1
EXIT_VALIDATION = 2
EXIT_UNCONVERGED = 3


def _load_model(path: str):
    """Read either input format; CSS JSON is recognized by its
    'perceivers' field. Returns (graph, relation_name)."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    try:
        probe = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON: {exc}") from exc
    if isinstance(probe, dict) and "perceivers" in probe:
        tensor = parse_css(text)
        return ingest_css(tensor), tensor.relation_name
    return parse_graph(text), ""


def _parse_alphas(text: str) -> tuple[float, ...]:
    """Accept 'start:stop:step' (inclusive) or a comma-separated list."""
    try:
        if ":" in text:
            start, stop, step = (float(p) for p in text.split(":"))
            if step <= 0:
                raise ValidationError(f"alpha step must be positive: {text!r}")
            values = []
            k = 0
            while True:
                value = round(start + k * step, 10)
                if value > stop + 1e-9:
                    break
                values.append(min(value, 1.0))
                k += 1
            return tuple(values)
        return tuple(float(p) for p in text.split(","))
    except ValueError as exc:
        raise ValidationError(f"cannot parse alphas {text!r}: {exc}") from exc


def _stat_spec(args) -> StatSpec:
    return StatSpec(
        name=args.statistic,
        source=getattr(args, "source", None),
        target=getattr(args, "target", None),
    )


def _write_output(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text + "\n")


def _cmd_pipeline(args) -> int:
    graph, relation = _load_model(args.input)
    alphas = _parse_alphas(args.alphas)
    bundle, diagnostics = build_bundle(
        graph,
        frames=args.n,
        alphas=alphas,
        seed=args.seed,
        view_mode=args.view_mode,
        tol=args.tol,
        max_iter=args.max_iter,
        relation=relation,
    )
    Path(args.out).write_text(bundle.to_json(), encoding="utf-8")
    for line in diagnostics:
        print(f"warning: {line}", file=sys.stderr)
    if diagnostics and args.strict:
        return EXIT_UNCONVERGED
    return 0


def _bundle_distribution(bundle: FrameBundle, spec: StatSpec) -> StatDistribution:
    """Reconstruct a statistic's distribution from a bundle's frames.

    density/isolates/communities read the precomputed per-frame stats;
    shortest-path runs BFS over each frame's stored edges (directed when
    the bundle's view is directed)."""
    n = bundle.meta["n"]
    directed = bundle.meta["view_mode"] == "directed"
    if spec.name == "shortest-path":
        if not (0 <= spec.source < n and 0 <= spec.target < n):
            raise ValidationError(f"endpoints outside 0..{n - 1}")
        values = []
        unreachable = 0
        for frame in bundle.frames:
            adj: dict[int, list[int]] = {}
            for i, j in frame["edges"]:
                adj.setdefault(i, []).append(j)
                if not directed:
                    adj.setdefault(j, []).append(i)
            dist = {spec.source: 0}
            queue = deque([spec.source])
            while queue:
                v = queue.popleft()
                for u in adj.get(v, ()):
                    if u not in dist:
                        dist[u] = dist[v] + 1
                        queue.append(u)
            if spec.target in dist:
                values.append(float(dist[spec.target]))
            else:
                unreachable += 1
        return StatDistribution(
            statistic=spec.name,
            values=tuple(values),
            n_samples=len(bundle.frames),
            unreachable_count=unreachable,
        )
    key = {"density": "density", "isolates": "isolates", "communities": "communities"}[spec.name]
    values = tuple(float(frame["stats"][key]) for frame in bundle.frames)
    return StatDistribution(statistic=spec.name, values=values, n_samples=len(bundle.frames))


def _cmd_stats(args) -> int:
    spec = _stat_spec(args)
    text = Path(args.bundle).read_text(encoding="utf-8")
    bundle = parse_bundle(text)
    dist = _bundle_distribution(bundle, spec)
    width = args.bin_width if args.bin_width is not None else default_bin_width(dist.values)
    dots = qdp(dist, width)
    report = {
        "statistic": spec.name,
        "source": spec.source,
        "target": spec.target,
        "n_samples": dist.n_samples,
        "unreachable_count": dist.unreachable_count,
        "values": list(dist.values),
        "qdp": dots.to_dict(),
    }
    _write_output(json.dumps(report, separators=(",", ":")), args.out)
    return 0


def _cmd_emd(args) -> int:
    user = BallDistribution.from_json(Path(args.user).read_text(encoding="utf-8"))
    truth = BallDistribution.from_json(Path(args.truth).read_text(encoding="utf-8"))
    report = emd(user, truth)
    payload = {"score": report.score, "flow": [list(pair) for pair in report.flow]}
    _write_output(json.dumps(payload, separators=(",", ":")), args.out)
    return 0


def _cmd_sampling_error(args) -> int:
    graph, _ = _load_model(args.model)
    spec = _stat_spec(args)
    report = sampling_error(
        graph,
        spec,
        resamples=args.resamples,
        set_size=args.size,
        bin_width=args.bin_width,
        seed=args.seed,
        view_mode=args.view_mode,
    )
    payload = {
        "statistic": spec.name,
        "mean_emd": report.mean_emd,
        "ci_low": report.ci_low,
        "ci_high": report.ci_high,
        "resamples": report.resamples,
        "set_size": report.set_size,
        "bin_width": report.bin_width,
    }
    _write_output(json.dumps(payload, separators=(",", ":")), args.out)
    return 0


def _add_common(parser: argparse.ArgumentParser, with_view: bool = True) -> None:
    parser.add_argument("--seed", type=int, default=0, help="master random seed")
    parser.add_argument("--out", default=None, help="output file (default: stdout)")
    if with_view:
        parser.add_argument(
            "--view-mode", choices=VIEW_MODES, default="undirected-union",
            help="how ordered-pair edges are read for structure",
        )


def _add_stat_arguments(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "statistic", choices=["density", "isolates", "shortest-path", "communities"]
    )
    parser.add_argument("--source", type=int, default=None, help="path source vertex")
    parser.add_argument("--target", type=int, default=None, help="path target vertex")
    parser.add_argument("--bin-width", type=float, default=None, help="dotplot bin width")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="netreel",
        description="Animated realization sequences for probabilistic graphs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    pipe = sub.add_parser("pipeline", help="sample a model and write a frame bundle")
    pipe.add_argument("input", help="CSS JSON or edge-probability JSON")
    pipe.add_argument("--n", type=int, default=150, help="number of realizations")
    pipe.add_argument("--alphas", default="0:1:0.1", help="'start:stop:step' or comma list")
    pipe.add_argument("--tol", type=float, default=DEFAULT_TOL)
    pipe.add_argument("--max-iter", type=int, default=DEFAULT_MAX_ITER)
    pipe.add_argument("--strict", action="store_true",
                      help="exit 3 if any layout solve fails to converge")
    _add_common(pipe)
    pipe.set_defaults(func=_cmd_pipeline)
    # pipeline writes a file, not stdout
    pipe.set_defaults(out="bundle.json")

    stats_p = sub.add_parser("stats", help="distribution of a statistic from a bundle")
    stats_p.add_argument("bundle", help="frame bundle JSON")
    _add_stat_arguments(stats_p)
    _add_common(stats_p, with_view=False)
    stats_p.set_defaults(func=_cmd_stats)

    emd_p = sub.add_parser("emd", help="score a ball distribution against another")
    emd_p.add_argument("user", help="ball distribution JSON")
    emd_p.add_argument("truth", help="ball distribution JSON")
    _add_common(emd_p, with_view=False)
    emd_p.set_defaults(func=_cmd_emd)

    err_p = sub.add_parser("sampling-error", help="Monte-Carlo sampling error in EMD")
    err_p.add_argument("model", help="CSS JSON or edge-probability JSON")
    _add_stat_arguments(err_p)
    err_p.add_argument("--resamples", type=int, default=500)
    err_p.add_argument("--size", type=int, default=150)
    _add_common(err_p)
    err_p.set_defaults(func=_cmd_sampling_error)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
