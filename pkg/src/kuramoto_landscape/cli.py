"""Command-line interface.

Subcommands: gen-graph, simulate, classify, census, verify-certificate,
sweep, optimize.  Every run writes a JSON artifact that echoes its fully
resolved configuration, so identical invocations produce byte-identical
output.  Exit codes: 0 success, 1 validation error, 2 certificate failure,
3 numerical failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import asdict
from pathlib import Path

import numpy as np

from . import certificate as cert
from . import dynamics, graphs, landscape

SCHEMA_VERSION = 1
OUTDIR_ENV = "KURAMOTO_LANDSCAPE_OUTDIR"

EXIT_OK = 0
EXIT_VALIDATION = 1
EXIT_CERTIFICATE = 2
EXIT_NUMERICAL = 3


class CliValidationError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on usage errors; remap to validation (1).
    def error(self, message):
        raise CliValidationError(message)


def _resolve_out(path: str | None) -> Path | None:
    if path is None:
        return None
    p = Path(path)
    outdir = os.environ.get(OUTDIR_ENV)
    if outdir and not p.is_absolute():
        p = Path(outdir) / p
    return p


def parse_graph_spec(spec: str) -> graphs.Graph:
    """Compact generator specs: complete:n | circulant:n,k | random:n,mu,seed."""
    kind, _, rest = spec.partition(":")
    args = rest.split(",") if rest else []
    try:
        if kind == "complete" and len(args) == 1:
            return graphs.complete_graph(int(args[0]))
        if kind == "circulant" and len(args) == 2:
            return graphs.circulant_graph(int(args[0]), int(args[1]))
        if kind == "random" and len(args) == 3:
            return graphs.random_min_degree_graph(int(args[0]), float(args[1]), int(args[2]))
    except ValueError as exc:
        raise CliValidationError(f"bad graph spec {spec!r}: {exc}") from exc
    raise CliValidationError(
        f"bad graph spec {spec!r}; expected complete:n, circulant:n,k or random:n,mu,seed"
    )


def _load_graph(args) -> graphs.Graph:
    if getattr(args, "graph", None):
        return parse_graph_spec(args.graph)
    if getattr(args, "edges", None):
        try:
            return graphs.read_edge_list(args.edges)
        except (OSError, graphs.GraphError) as exc:
            raise CliValidationError(f"edges: {exc}") from exc
    raise CliValidationError("one of --graph or --edges is required")


def _load_state(g: graphs.Graph, init: str) -> landscape.PhaseState:
    kind, _, rest = init.partition(":")
    try:
        if kind == "constant":
            return landscape.PhaseState.constant(g.n, float(rest or "0"))
        if kind == "twisted":
            return landscape.PhaseState.twisted(g.n, int(rest or "1"))
        if kind == "random":
            rng = np.random.default_rng(int(rest or "0"))
            return landscape.PhaseState.random(g.n, rng)
        if kind == "file":
            values = json.loads(Path(rest).read_text())
            state = landscape.PhaseState(np.asarray(values, dtype=float))
            if state.n != g.n:
                raise CliValidationError(
                    f"init: state file has {state.n} phases but graph has {g.n} vertices"
                )
            return state
    except (ValueError, OSError, json.JSONDecodeError) as exc:
        if isinstance(exc, CliValidationError):
            raise
        raise CliValidationError(f"init: {exc}") from exc
    raise CliValidationError(
        f"bad init spec {init!r}; expected constant:c, twisted:q, random:seed or file:path"
    )


def _graph_summary(g: graphs.Graph) -> dict:
    return {
        "n": g.n,
        "edges": g.edge_count,
        "min_degree_fraction": graphs.min_degree_fraction(g),
        "connected": graphs.is_connected(g),
        "meta": g.meta,
    }


def _report_dict(rep: dynamics.EquilibriumReport) -> dict:
    eigs = rep.hessian_eigenvalues
    return {
        "state": rep.state.theta.tolist(),
        "gradient_residual": rep.gradient_residual,
        "energy": rep.energy,
        "eigenvalue_min": float(eigs.min()),
        "eigenvalue_max": float(eigs.max()),
        "classification": rep.classification,
        "order_magnitude": rep.order_magnitude,
        "hit_count": rep.hit_count,
    }


def _emit(payload: dict, out: Path | None) -> None:
    text = json.dumps(payload, indent=2, sort_keys=True) + "\n"
    if out is None:
        sys.stdout.write(text)
    else:
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(text)


def _payload(command: str, config: dict, result) -> dict:
    return {"schema_version": SCHEMA_VERSION, "command": command, "config": config, "result": result}


# ---------------------------------------------------------------------------
# Subcommand handlers
# ---------------------------------------------------------------------------


def _cmd_gen_graph(args) -> int:
    g = _load_graph(args)
    out = _resolve_out(args.out)
    graphs.write_edge_list(g, out)
    config = {"graph": args.graph, "edges": args.edges, "out": args.out}
    _emit(_payload("gen-graph", config, _graph_summary(g)), _resolve_out(args.json))
    return EXIT_OK


def _cmd_simulate(args) -> int:
    g = _load_graph(args)
    s0 = _load_state(g, args.init)
    record = 1 if (args.trajectory or args.plot) else 0
    final, meta = dynamics.integrate(
        g, s0, dt=args.dt, t_max=args.t_max, residual_tol=args.residual_tol, record_every=record
    )
    if args.trajectory:
        path = _resolve_out(args.trajectory)
        with open(path, "w") as fh:
            fh.write("t,energy,order_magnitude\n")
            for t, e, r in zip(meta.times, meta.energies, meta.order_mags):
                fh.write(f"{t!r},{e!r},{r!r}\n")
    if args.plot:
        from .plots import plot_trajectory

        plot_trajectory(meta, _resolve_out(args.plot))
    config = {
        "graph": args.graph,
        "edges": args.edges,
        "init": args.init,
        "dt": args.dt,
        "t_max": args.t_max,
        "residual_tol": args.residual_tol,
    }
    result = {
        "graph": _graph_summary(g),
        "final_state": final.theta.tolist(),
        "converged": meta.converged,
        "steps": meta.steps,
        "t_final": meta.t_final,
        "residual": meta.residual,
        "energy": landscape.energy(g, final),
        "order_magnitude": landscape.order_parameter(final).magnitude / g.n,
    }
    _emit(_payload("simulate", config, result), _resolve_out(args.out))
    return EXIT_OK


def _cmd_classify(args) -> int:
    g = _load_graph(args)
    s = _load_state(g, args.init)
    if args.refine:
        s = dynamics.refine_equilibrium(g, s, tol=args.residual_tol)
    rep = dynamics.classify(g, s, zero_tol=args.zero_tol, equilibrium_tol=args.equilibrium_tol)
    config = {
        "graph": args.graph,
        "edges": args.edges,
        "init": args.init,
        "refine": args.refine,
        "zero_tol": args.zero_tol,
        "equilibrium_tol": args.equilibrium_tol,
    }
    result = _report_dict(rep)
    result["hessian_eigenvalues"] = rep.hessian_eigenvalues.tolist()
    _emit(_payload("classify", config, result), _resolve_out(args.out))
    return EXIT_OK


def _cmd_census(args) -> int:
    g = _load_graph(args)
    reports = dynamics.multistart_search(
        g,
        trials=args.trials,
        seed=args.seed,
        dt=args.dt,
        t_max=args.t_max,
        tol=args.tol,
        threads=args.threads,
    )
    if args.plot:
        from .plots import plot_census

        plot_census(reports, _resolve_out(args.plot))
    config = {
        "graph": args.graph,
        "edges": args.edges,
        "trials": args.trials,
        "seed": args.seed,
        "dt": args.dt,
        "t_max": args.t_max,
        "tol": args.tol,
        "threads": args.threads,
    }
    result = {
        "graph": _graph_summary(g),
        "equilibria": [_report_dict(r) for r in reports],
        "classes": sorted({r.classification for r in reports}),
    }
    _emit(_payload("census", config, result), _resolve_out(args.out))
    return EXIT_OK


def _cmd_verify_certificate(args) -> int:
    params = cert.CertificateParams(
        mu=args.mu, alpha=args.alpha, epsilon=args.eps, delta=args.delta
    )
    evaluation = cert.evaluate_certificate(params)
    config = {"mu": args.mu, "alpha": args.alpha, "eps": args.eps, "delta": args.delta}
    result = asdict(evaluation)
    result["params"] = asdict(evaluation.params)
    result["passed"] = evaluation.passed
    _emit(_payload("verify-certificate", config, result), _resolve_out(args.out))
    return EXIT_OK if evaluation.passed else EXIT_CERTIFICATE


def _cmd_sweep(args) -> int:
    report = cert.sweep_certificate(
        mu_range=(args.mu_min, args.mu_max),
        alpha_range=(args.alpha_min, args.alpha_max),
        epsilon=args.eps,
        delta=args.delta,
        grid_steps=args.grid,
    )
    result = report.to_json_dict()
    status = EXIT_OK if report.all_pass else EXIT_CERTIFICATE
    if args.hardened:
        hardened = cert.verify_certificate_hardened(
            mu_range=(args.mu_min, args.mu_max),
            alpha_range=(args.alpha_min, args.alpha_max),
            epsilon=args.eps,
            delta=args.delta,
            grid_steps=args.grid,
        )
        result["hardened"] = hardened.to_json_dict()
        if not hardened.conclusive_pass:
            status = EXIT_CERTIFICATE
    if args.csv:
        report.write_csv(_resolve_out(args.csv))
    if args.plot:
        from .plots import plot_sweep

        plot_sweep(report, _resolve_out(args.plot))
    config = {
        "mu_min": args.mu_min,
        "mu_max": args.mu_max,
        "alpha_min": args.alpha_min,
        "alpha_max": args.alpha_max,
        "eps": args.eps,
        "delta": args.delta,
        "grid": args.grid,
        "hardened": args.hardened,
    }
    _emit(_payload("sweep", config, result), _resolve_out(args.out))
    return status


def _cmd_optimize(args) -> int:
    result = cert.optimize_parameters(args.mu, args.alpha_max)
    config = {"mu": args.mu, "alpha_max": args.alpha_max}
    _emit(_payload("optimize", config, result.to_json_dict()), _resolve_out(args.out))
    return EXIT_OK


# ---------------------------------------------------------------------------
# Parser
# ---------------------------------------------------------------------------


def _add_graph_args(p):
    p.add_argument("--graph", help="generator spec: complete:n | circulant:n,k | random:n,mu,seed")
    p.add_argument("--edges", help="path to an edge-list file")


def build_parser() -> _Parser:
    parser = _Parser(prog="kuramoto-landscape")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen-graph", help="generate a graph and write its edge list")
    _add_graph_args(p)
    p.add_argument("--out", required=True, help="edge-list output path")
    p.add_argument("--json", help="JSON summary output path (default stdout)")
    p.set_defaults(func=_cmd_gen_graph)

    p = sub.add_parser("simulate", help="integrate the gradient flow")
    _add_graph_args(p)
    p.add_argument("--init", default="random:0", help="constant:c | twisted:q | random:seed | file:path")
    p.add_argument("--dt", type=float, default=0.05)
    p.add_argument("--t-max", type=float, default=200.0)
    p.add_argument("--residual-tol", type=float, default=1e-10)
    p.add_argument("--trajectory", help="CSV dump of t, energy, |r|/n")
    p.add_argument("--plot", help="trajectory figure output path")
    p.add_argument("--out", help="JSON output path (default stdout)")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("classify", help="classify an equilibrium by Hessian spectrum")
    _add_graph_args(p)
    p.add_argument("--init", required=True, help="constant:c | twisted:q | random:seed | file:path")
    p.add_argument("--refine", action="store_true", help="Newton-polish the state first")
    p.add_argument("--residual-tol", type=float, default=1e-12, help="refinement target")
    p.add_argument("--zero-tol", type=float, default=None)
    p.add_argument("--equilibrium-tol", type=float, default=1e-8)
    p.add_argument("--out", help="JSON output path (default stdout)")
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("census", help="multistart landscape census")
    _add_graph_args(p)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--dt", type=float, default=0.05)
    p.add_argument("--t-max", type=float, default=200.0)
    p.add_argument("--tol", type=float, default=1e-10)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--plot", help="census figure output path")
    p.add_argument("--out", help="JSON output path (default stdout)")
    p.set_defaults(func=_cmd_census)

    p = sub.add_parser("verify-certificate", help="evaluate the certificate at one point")
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--eps", type=float, default=cert.DEFAULT_EPSILON)
    p.add_argument("--delta", type=float, default=cert.DEFAULT_DELTA)
    p.add_argument("--out", help="JSON output path (default stdout)")
    p.set_defaults(func=_cmd_verify_certificate)

    p = sub.add_parser("sweep", help="grid-sweep the certificate conditions")
    p.add_argument("--mu-min", type=float, default=cert.DEFAULT_MU_RANGE[0])
    p.add_argument("--mu-max", type=float, default=cert.DEFAULT_MU_RANGE[1])
    p.add_argument("--alpha-min", type=float, default=cert.DEFAULT_ALPHA_RANGE[0])
    p.add_argument("--alpha-max", type=float, default=cert.DEFAULT_ALPHA_RANGE[1])
    p.add_argument("--eps", type=float, default=cert.DEFAULT_EPSILON)
    p.add_argument("--delta", type=float, default=cert.DEFAULT_DELTA)
    p.add_argument("--grid", type=int, default=500, help="grid steps per axis")
    p.add_argument("--hardened", action="store_true", help="interval-arithmetic re-verification")
    p.add_argument("--csv", help="full-grid CSV output path")
    p.add_argument("--plot", help="sweep heatmap output path")
    p.add_argument("--out", help="JSON output path (default stdout)")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("optimize", help="search for the best (epsilon, delta)")
    p.add_argument("--mu", type=float, required=True)
    p.add_argument("--alpha-max", type=float, default=cert.ALPHA_BRANCH_LIMIT)
    p.add_argument("--out", help="JSON output path (default stdout)")
    p.set_defaults(func=_cmd_optimize)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except CliValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (graphs.GraphError, ValueError) as exc:
        if isinstance(exc, (cert.RegimeViolationError, dynamics.NotAnEquilibriumError)):
            print(f"numerical: {exc}", file=sys.stderr)
            return EXIT_NUMERICAL
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except (
        dynamics.NumericalBlowupError,
        dynamics.RefinementFailedError,
        cert.InfeasibleError,
    ) as exc:
        print(f"numerical: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
