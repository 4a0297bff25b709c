"""netflux command line.

Subcommands: generate, flow, current, mcflow, walk, theory, sweep,
histogram, reproduce-figure. Every run prints its resolved configuration as
one JSON line ("# resolved: {...}") on stderr before doing any work; results
go to stdout or to the requested files.

Exit codes: 0 success, 1 usage or parameter error, 2 numerical failure,
3 I/O failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Callable

import numpy as np
from pydantic import ValidationError

from cli.config import get_settings
from experiments.figures import FIGURE_IDS, SCALES
from theory import THEORY_KINDS
from transport.mcflow import MCFLOW_METHODS

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NUMERICAL = 2
EXIT_IO = 3


class CliParser(argparse.ArgumentParser):
    """ArgumentParser whose usage errors exit with status 1."""

    def error(self, message: str) -> None:  # type: ignore[override]
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from e


def _emit_resolved(args: argparse.Namespace) -> None:
    """Print the effective run configuration; None flags show their Settings value."""
    settings = get_settings()
    resolved = {k: v for k, v in sorted(vars(args).items()) if k != "func"}
    if "tol" in resolved and resolved["tol"] is None:
        resolved["tol"] = settings.current_tol
    if resolved.get("workers") is None and not resolved.get("config"):
        resolved["workers"] = settings.workers
    print("# resolved: " + json.dumps(resolved, default=str, sort_keys=True), file=sys.stderr, flush=True)


def _trace_callback(event: dict[str, Any]) -> None:
    print(json.dumps(event, default=str), file=sys.stderr, flush=True)


# ---------------------------------------------------------------- handlers


def cmd_generate(args: argparse.Namespace) -> int:
    from netgen import format_edge_list, gen_er, gen_sf_config, save_edge_list

    if args.model == "er":
        if args.kavg is None:
            raise _usage("--kavg is required for --model er")
        g = gen_er(args.num_nodes, args.kavg, args.seed)
    else:
        if args.gamma is None:
            raise _usage("--gamma is required for --model sf")
        g = gen_sf_config(args.num_nodes, args.gamma, args.m, args.seed)
    summary = {"num_nodes": g.num_nodes, "num_edges": g.num_edges, "mean_degree": g.mean_degree}
    if args.out:
        save_edge_list(g, args.out)
        print(json.dumps(summary))
    else:
        sys.stdout.write(format_edge_list(g))
        print(json.dumps(summary), file=sys.stderr)
    return EXIT_OK


def _terminals(args: argparse.Namespace, g, default_mode: str):
    from netgen import TerminalSet, sample_terminals

    mode = args.mode or default_mode
    if args.sources is not None or args.sinks is not None:
        if args.sources is None or args.sinks is None:
            raise _usage("--sources and --sinks must be given together")
        return TerminalSet(mode, np.asarray(args.sources), np.asarray(args.sinks))
    return sample_terminals(g, args.n, mode, args.seed)


def cmd_transport(args: argparse.Namespace) -> int:
    import transport
    from netgen import load_edge_list

    g = load_edge_list(args.graph)
    kind = args.command
    if kind == "flow":
        t = _terminals(args, g, "disjoint-sets")
        result = transport.flow_decompose_by_length(g, t) if args.decompose else transport.max_flow(g, t)
    elif kind == "current":
        t = _terminals(args, g, "disjoint-sets")
        result = transport.electrical_current(g, t, args.tol)
    elif kind == "mcflow":
        t = _terminals(args, g, "ordered-pairs")
        result = transport.mc_flow(g, t, method=args.method)
    else:
        t = _terminals(args, g, "disjoint-sets")
        estimate, stderr, truncated = transport.random_walk_escape_stats(g, t, args.walkers, args.seed)
        print(json.dumps({"value": estimate, "stderr": stderr, "truncated": truncated, "walkers": args.walkers}))
        return EXIT_OK
    print(result.to_json())
    return EXIT_OK


def _theory_params(args: argparse.Namespace):
    from theory import TheoryParams

    return TheoryParams(
        num_nodes=args.nodes, mean_degree=args.kavg, gamma=args.gamma, m=args.m, c=args.c
    )


def cmd_theory(args: argparse.Namespace) -> int:
    from experiments import default_n_grid
    from theory import n_star_bounds, theory_curve, write_theory_csv

    params = _theory_params(args)
    if args.n_star:
        lower, upper, recursion = n_star_bounds(params)
        print(json.dumps({"lower": lower, "upper": upper, "recursion": recursion}))
        return EXIT_OK
    max_n = params.num_nodes if args.kind.startswith("mcflow") else params.num_nodes // 2
    df = theory_curve(args.kind, params, args.n_values or default_n_grid(max_n))
    if args.out:
        write_theory_csv(df, args.out)
    else:
        df.to_csv(sys.stdout, index=False, float_format="%.12g")
    return EXIT_OK


def _experiment_config(args: argparse.Namespace):
    from experiments import ExperimentConfig, GraphSpec

    if args.config:
        cfg = ExperimentConfig.from_json_file(args.config)
        updates: dict[str, Any] = {}
        if args.workers is not None:
            updates["workers"] = args.workers
        return cfg.model_copy(update=updates) if updates else cfg
    if args.edge_list:
        graph = GraphSpec(model="edgelist", path=args.edge_list)
    elif args.model is None:
        raise _usage("give --config, --edge-list or --model")
    else:
        graph = GraphSpec(model=args.model, num_nodes=args.nodes, mean_degree=args.kavg, gamma=args.gamma, m=args.m)
    return ExperimentConfig(
        graph=graph,
        transport=args.transport,
        n_values=args.n_values or [],
        realizations=args.realizations,
        samples=args.samples,
        seed=args.seed,
        tol=args.tol,
        mcflow_method=args.mcflow_method,
        workers=args.workers,
    )


def cmd_sweep(args: argparse.Namespace) -> int:
    from experiments import overlay_theory, run_sweep
    from experiments.figures import theory_params_for

    cfg = _experiment_config(args)
    print("# config: " + cfg.model_dump_json(), file=sys.stderr, flush=True)
    sweep = run_sweep(cfg)
    if args.overlay:
        params = theory_params_for(cfg, sweep)
        if args.c is not None:
            params = params.replace(c=args.c)
        sweep = overlay_theory(sweep, params)
    if args.out:
        sweep.to_csv(args.out)
        print(json.dumps(sweep.summary()))
    else:
        sweep.table.to_csv(sys.stdout, index=False, float_format="%.12g")
    return EXIT_OK


def cmd_histogram(args: argparse.Namespace) -> int:
    from experiments import flow_histogram

    cfg = _experiment_config(args)
    print("# config: " + cfg.model_dump_json(), file=sys.stderr, flush=True)
    hists = flow_histogram(cfg, args.n_list, log_bins=args.log_bins, bins_per_decade=args.bins_per_decade)
    out_dir = Path(args.out_dir)
    written = []
    for n, hist in sorted(hists.items()):
        if args.collapse_gamma is not None:
            hist = hist.collapse(args.collapse_gamma)
        written.append(str(hist.to_csv(out_dir / f"histogram_{cfg.transport}_n{n}.csv")))
    print(json.dumps({"files": written}))
    return EXIT_OK


def cmd_reproduce_figure(args: argparse.Namespace) -> int:
    from experiments import reproduce_figure, rerun_manifest

    if args.from_manifest:
        manifest = rerun_manifest(args.from_manifest, args.out_dir)
    else:
        if args.figure_id is None:
            raise _usage("figure id required unless --from-manifest is given")
        manifest = reproduce_figure(
            args.figure_id,
            args.scale,
            args.out_dir or get_settings().output_dir,
            seed=args.seed,
            workers=args.workers,
            edge_list=args.edge_list,
        )
    print(json.dumps({"manifest": str(manifest)}))
    return EXIT_OK


# ------------------------------------------------------------------ parser


class _UsageError(Exception):
    pass


def _usage(message: str) -> _UsageError:
    return _UsageError(message)


def _add_graph_args(p: argparse.ArgumentParser, *, with_model: bool = True) -> None:
    if with_model:
        p.add_argument("--model", choices=["er", "sf"], default=None, help="Random graph model")
    p.add_argument("--nodes", type=int, default=None, help="Number of nodes N")
    p.add_argument("--kavg", type=float, default=None, help="Mean degree <k> (ER)")
    p.add_argument("--gamma", type=float, default=None, help="Power-law exponent (SF)")
    p.add_argument("--m", type=int, default=2, help="Minimum degree (SF)")


def _add_terminal_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--graph", type=Path, required=True, help="Edge-list file")
    p.add_argument("--n", type=int, default=1, help="Number of sources (= sinks, = pairs)")
    p.add_argument("--mode", choices=["disjoint-sets", "ordered-pairs"], default=None)
    p.add_argument("--sources", type=_int_list, default=None, help="Explicit source nodes, comma-separated")
    p.add_argument("--sinks", type=_int_list, default=None, help="Explicit sink nodes, comma-separated")


def _add_experiment_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", type=Path, default=None, help="ExperimentConfig JSON file")
    _add_graph_args(p)
    p.add_argument("--edge-list", type=str, default=None, help="Use one fixed graph from this edge list")
    p.add_argument("--transport", choices=["flow", "current", "mcflow"], default="flow")
    p.add_argument("--n-values", type=_int_list, default=None, help="n grid, comma-separated")
    p.add_argument("--realizations", type=int, default=50)
    p.add_argument("--samples", type=int, default=20)
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--mcflow-method", choices=MCFLOW_METHODS, default="fractional")


def build_parser() -> CliParser:
    settings = get_settings()
    parser = CliParser(prog="netflux", description="Transport between many sources and sinks on random networks")
    parser.add_argument("--log-level", default=settings.log_level, help="DEBUG, INFO, WARNING, ERROR")
    parser.add_argument("--trace", action="store_true", help="Stream solver call events as JSON lines on stderr")
    parser.add_argument("--workers", type=int, default=None, help="Worker processes for sweeps")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, handler: Callable[[argparse.Namespace], int], help_text: str) -> CliParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--seed", type=int, default=settings.seed, help="Base seed (default NETFLUX_SEED)")
        p.set_defaults(func=handler)
        return p

    p = add("generate", cmd_generate, "Generate an ER or SF graph as an edge list")
    p.add_argument("--model", choices=["er", "sf"], required=True)
    p.add_argument("--n", "--nodes", dest="num_nodes", type=int, required=True, help="Number of nodes N")
    p.add_argument("--kavg", type=float, default=None)
    p.add_argument("--gamma", type=float, default=None)
    p.add_argument("--m", type=int, default=2)
    p.add_argument("--out", type=Path, default=None, help="Output file (default stdout)")

    p = add("flow", cmd_transport, "Max flow between random source and sink sets")
    _add_terminal_args(p)
    p.add_argument("--no-decompose", dest="decompose", action="store_false", help="Skip the per-length split")

    p = add("current", cmd_transport, "Electrical current, sources at 1 V, sinks grounded")
    _add_terminal_args(p)
    p.add_argument("--tol", type=float, default=None)

    p = add("mcflow", cmd_transport, "Multi-commodity flow between ordered pairs")
    _add_terminal_args(p)
    p.add_argument("--method", choices=MCFLOW_METHODS, default="auto")

    p = add("walk", cmd_transport, "Random-walk escape probability from the sources")
    _add_terminal_args(p)
    p.add_argument("--walkers", type=int, default=10_000)

    p = add("theory", cmd_theory, "Theory curve over an n grid")
    p.add_argument("--kind", choices=THEORY_KINDS, default="flow_small_n")
    _add_graph_args(p, with_model=False)
    p.add_argument("--c", type=float, default=1.0, help="Current prefactor")
    p.add_argument("--n-values", type=_int_list, default=None)
    p.add_argument("--n-star", action="store_true", help="Print the saturation bounds instead of a curve")
    p.add_argument("--out", type=Path, default=None)

    p = add("sweep", cmd_sweep, "Ensemble sweep over n")
    _add_experiment_args(p)
    p.add_argument("--overlay", action="store_true", help="Append theory and relative-deviation columns")
    p.add_argument("--c", type=float, default=None, help="Current prefactor for the overlay")
    p.add_argument("--out", type=Path, default=None, help="CSV path (default stdout)")

    p = add("histogram", cmd_histogram, "Empirical transport pdf for several n")
    _add_experiment_args(p)
    p.add_argument("--n-list", type=_int_list, required=True)
    p.add_argument("--log-bins", action="store_true")
    p.add_argument("--bins-per-decade", type=int, default=5)
    p.add_argument("--collapse-gamma", type=float, default=None)
    p.add_argument("--out-dir", type=str, default="results")

    p = add("reproduce-figure", cmd_reproduce_figure, "Run a figure preset and write CSV plus manifest")
    p.add_argument("figure_id", nargs="?", choices=FIGURE_IDS, default=None)
    p.add_argument("--scale", choices=SCALES, default="desk")
    p.add_argument("--out-dir", type=str, default=None)
    p.add_argument("--from-manifest", type=Path, default=None)
    p.add_argument("--edge-list", type=str, default=None)
    return parser


def _exit_code(exc: BaseException) -> int:
    from tools.errors import (
        ConvergenceError,
        EdgeListError,
        FitError,
        GenerationError,
        ParameterError,
        SweepError,
    )

    if isinstance(exc, (EdgeListError, OSError)):
        return EXIT_IO
    if isinstance(exc, (ConvergenceError, FitError, SweepError, GenerationError)):
        return EXIT_NUMERICAL
    if isinstance(exc, (ParameterError, ValidationError, _UsageError, ValueError)):
        return EXIT_USAGE
    return EXIT_NUMERICAL


def main(argv: list[str] | None = None) -> int:
    """Entry point; returns the process exit status."""
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(
        level=getattr(logging, str(args.log_level).upper(), logging.INFO),
        format="%(levelname)s %(name)s %(message)s",
        stream=sys.stderr,
    )
    _emit_resolved(args)

    from tools.observability import register_solver_event_callback, unregister_solver_event_callback

    if args.trace:
        register_solver_event_callback(_trace_callback)
    try:
        return args.func(args)
    except Exception as e:
        code = _exit_code(e)
        details = getattr(e, "details", None)
        print(f"netflux: error: {e}" + (f" {json.dumps(details, default=str)}" if details else ""), file=sys.stderr)
        if code == EXIT_USAGE and isinstance(e, _UsageError):
            parser.print_usage(sys.stderr)
        logger.debug("command failed", exc_info=True)
        return code
    finally:
        if args.trace:
            unregister_solver_event_callback(_trace_callback)


if __name__ == "__main__":
    raise SystemExit(main())
