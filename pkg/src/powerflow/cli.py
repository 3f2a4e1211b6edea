"""Command-line front end.

Grammar::

    powerflow <classify|centrality|simulate|equilibrium|compare>
        [--network FILE | --builder star:N|ring:N|ds:N:SEED]
        [--model st|df] [--x0 uniform|vertex:I|random:SEED|list:a,b,...]
        [--tol F] [--max-steps N] [--record-every N] [--zeta a,b,...]
        [--out FILE] [--quiet]

The environment variable POWERFLOW_LOG (off, info, debug) controls log
verbosity on stderr.  Exit codes: 0 on success, 2 on input problems
(files, flags, malformed matrices, bad initial vectors), 1 on runtime
failures.  Output is deterministic for fixed flags and seeds.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
import numpy as np

from . import io as netio
from .dynamics import (
    Converged,
    DEFAULT_MAX_STEPS,
    EPS_CONV,
    MODELS,
    SINGLE_TIMESCALE,
    Trajectory,
    VertexAbsorbed,
    simulate,
    vertex_index,
)
from .equilibria import (
    EPS_EQUILIBRIUM,
    EPS_TIE,
    assemble_multisink_equilibrium,
    compare_models,
    fixed_point_residual,
    regime_name,
    solve_interior_equilibrium,
)
from .errors import (
    EmptyAdviceSetError,
    FamilyParameterRequiredError,
    InvalidInitialError,
    MatrixValidationError,
    ParseError,
    PowerflowError,
)
from .netcore import (
    Irreducible,
    ReducibleReachable,
    RelativeInteractionMatrix,
    classify,
)
from .spectral import centrality_profile

logger = logging.getLogger(__name__)


def _configure_logging() -> None:
    level_name = os.environ.get("POWERFLOW_LOG", "off").strip().lower()
    levels = {"off": logging.CRITICAL + 10, "info": logging.INFO, "debug": logging.DEBUG}
    if level_name not in levels:
        print(
            f"warning: POWERFLOW_LOG={level_name!r} not in (off, info, debug)",
            file=sys.stderr,
        )
        level_name = "off"
    logging.basicConfig(
        stream=sys.stderr, level=levels[level_name],
        format="%(levelname)s %(name)s: %(message)s",
    )


def _fmt(value: float) -> str:
    return format(float(value), ".12g")


def _fmt_vec(values) -> str:
    return "[" + ", ".join(_fmt(v) for v in values) + "]"


def _node_set(nodes) -> str:
    return "{" + ", ".join(str(v) for v in nodes) + "}"


def _pretty_limit(x) -> str:
    # display label only: 1e-3 matches the distance scale of the slow
    # asymptotic star regimes
    v = vertex_index(np.asarray(x, dtype=float), eps=1e-3)
    return f"e_{v}" if v is not None else _fmt_vec(x)


def _load_network(args) -> RelativeInteractionMatrix:
    if (args.network is None) == (args.builder is None):
        raise InvalidInitialError("pass exactly one of --network or --builder")
    if args.network is not None:
        return netio.load_network(args.network)
    spec = args.builder
    parts = spec.split(":")
    kind = parts[0]
    try:
        if kind == "star" and len(parts) == 2:
            return netio.build_star(int(parts[1]))
        if kind == "ring" and len(parts) == 2:
            return netio.build_ring(int(parts[1]))
        if kind == "ds" and len(parts) == 3:
            return netio.build_doubly_stochastic_random(int(parts[1]), int(parts[2]))
    except ValueError as exc:
        raise InvalidInitialError(f"bad builder spec {spec!r}: {exc}") from exc
    raise InvalidInitialError(
        f"bad builder spec {spec!r}; expected star:N, ring:N or ds:N:SEED"
    )


def _resolve_x0(spec: str, n: int) -> np.ndarray:
    if spec == "uniform":
        return np.full(n, 1.0 / n)
    kind, sep, rest = spec.partition(":")
    try:
        if kind == "vertex" and sep:
            i = int(rest)
            if not 1 <= i <= n:
                raise ValueError(f"vertex index {i} outside 1..{n}")
            x = np.zeros(n)
            x[i - 1] = 1.0
            return x
        if kind == "random" and sep:
            # exponential positives normalized: interior, reproducible per seed
            rng = np.random.default_rng(int(rest))
            x = rng.exponential(1.0, n)
            return x / x.sum()
        if kind == "list" and sep:
            return np.asarray([float(p) for p in rest.split(",")], dtype=float)
    except ValueError as exc:
        raise InvalidInitialError(f"bad x0 spec {spec!r}: {exc}") from exc
    raise InvalidInitialError(
        f"bad x0 spec {spec!r}; expected uniform, vertex:I, random:SEED or list:a,b,..."
    )


def _print_structure(C: RelativeInteractionMatrix, structure) -> None:
    profile = centrality_profile(C, structure)
    print(f"nodes: {C.n}")
    if isinstance(structure, Irreducible):
        print("structure: irreducible")
        if structure.star_center is not None:
            print(f"star center: {structure.star_center}")
        if structure.degenerate_pair:
            print("note: two-node network, every interior point is fixed")
        print(f"centrality: {_fmt_vec(profile.global_c)}")
    elif isinstance(structure, ReducibleReachable):
        print(f"structure: reducible, globally reachable set of size {structure.r}")
        print(f"reachable set: {_node_set(structure.reachable)}")
        outside = sorted(set(range(1, C.n + 1)) - set(structure.reachable))
        print(f"outside reachable set: {_node_set(outside)}")
        if structure.star_center_of_subgraph is not None:
            print(f"star center of reachable subgraph: {structure.star_center_of_subgraph}")
        print(f"centrality: {_fmt_vec(profile.global_c)}")
    else:
        print(f"structure: multi-sink, K={structure.num_sinks} sinks")
        for k, sink in enumerate(structure.sinks, start=1):
            print(f"sink {k}: {_node_set(sink)} (size {len(sink)})")
        print(
            f"non-sink nodes: {_node_set(structure.non_sink_nodes)} "
            f"(m={structure.m})"
        )
        for k, c_k in enumerate(profile.per_sink, start=1):
            print(f"sink {k} centrality: {_fmt_vec(c_k)}")


def cmd_classify(args) -> int:
    C = _load_network(args)
    _print_structure(C, classify(C))
    return 0


def cmd_centrality(args) -> int:
    C = _load_network(args)
    structure = classify(C)
    profile = centrality_profile(C, structure)
    if profile.global_c is not None:
        print(f"centrality: {_fmt_vec(profile.global_c)}")
    else:
        for k, (c_k, lifted) in enumerate(
            zip(profile.per_sink, profile.lifted), start=1
        ):
            print(f"sink {k} centrality: {_fmt_vec(c_k)}")
            print(f"sink {k} lifted: {_fmt_vec(lifted)}")
    return 0


def _print_summary(C, structure, trajectory: Trajectory) -> None:
    status = trajectory.status
    if isinstance(status, Converged):
        print(f"status: converged at step {status.at}")
    elif isinstance(status, VertexAbsorbed):
        print(f"status: vertex absorbed at node {status.vertex} (step {status.at})")
    else:
        print(f"status: max steps reached ({status.steps})")
    print(f"steps: {trajectory.total_steps}")
    print(f"limit: {_fmt_vec(trajectory.final_state)}")
    print(f"residual: {_fmt(fixed_point_residual(C, trajectory.final_state))}")
    if trajectory.sink_power is not None:
        print(f"sink power: {_fmt_vec(trajectory.sink_power[-1])}")


def cmd_simulate(args) -> int:
    C = _load_network(args)
    structure = classify(C)
    x0 = _resolve_x0(args.x0, C.n)
    trajectory = simulate(
        args.model, C, x0,
        eps_conv=args.tol, max_steps=args.max_steps,
        record_every=args.record_every, structure=structure,
    )
    if args.out:
        netio.write_trajectory_csv(trajectory, args.out, structure)
        print(f"wrote trajectory: {args.out}")
    elif not args.quiet:
        for row_idx, t in enumerate(trajectory.steps):
            state = ",".join(_fmt(v) for v in trajectory.states[row_idx])
            print(f"{int(t)},{state}")
    _print_summary(C, structure, trajectory)
    return 0


def cmd_equilibrium(args) -> int:
    C = _load_network(args)
    structure = classify(C)
    profile = centrality_profile(C, structure)
    print(f"regime: {regime_name(structure)}")
    print("fixed points: every autocratic vertex e_i")
    if isinstance(structure, Irreducible) and structure.degenerate_pair:
        print("interior equilibria: every interior point (two-node network)")
        return 0
    if isinstance(structure, (Irreducible, ReducibleReachable)):
        center = (
            structure.star_center
            if isinstance(structure, Irreducible)
            else structure.star_center_of_subgraph
        )
        if center is not None:
            print(f"autocrat at node {center}; interior equilibria: none")
            return 0
        if isinstance(structure, ReducibleReachable) and structure.r == 2:
            a, b = structure.reachable
            print(
                f"equilibrium family: (alpha, 1-alpha) on nodes {a}, {b}, "
                "zero elsewhere; alpha depends on the trajectory"
            )
            return 0
        c = profile.per_sink[0]
        x_sink = solve_interior_equilibrium(c, 1.0, eps=args.tol)
        x_star = np.zeros(C.n)
        if isinstance(structure, ReducibleReachable):
            x_star[np.asarray(structure.reachable, dtype=int) - 1] = x_sink
        else:
            x_star = x_sink
        alpha = float(np.mean(x_sink * (1.0 - x_sink) / c))
        ordering_ok = _ordering_consistent(x_sink, c)
        print(f"interior equilibrium: {_fmt_vec(x_star)}")
        print(f"alpha: {_fmt(alpha)}")
        print(f"residual: {_fmt(fixed_point_residual(C, x_star))}")
        print(f"ordering check: {'PASS' if ordering_ok else 'FAIL'}")
        return 0
    # multi-sink: family unless the split is given
    if args.zeta is None:
        print(
            "equilibrium family: one equilibrium per split of power among "
            f"the {structure.num_sinks} sinks; pass --zeta to assemble one"
        )
        for k, c_k in enumerate(profile.per_sink, start=1):
            print(f"sink {k} centrality: {_fmt_vec(c_k)}")
        return 0
    zeta = np.asarray([float(p) for p in args.zeta.split(",")], dtype=float)
    try:
        x_star = assemble_multisink_equilibrium(structure, profile, zeta, eps=args.tol)
    except FamilyParameterRequiredError as exc:
        print(f"equilibrium family: {exc}")
        return 0
    print(f"sink power: {_fmt_vec(zeta)}")
    print(f"assembled equilibrium: {_fmt_vec(x_star)}")
    print(f"residual: {_fmt(fixed_point_residual(C, x_star))}")
    return 0


def _ordering_consistent(x_star, c, eps_tie: float = EPS_TIE) -> bool:
    for i in range(len(c)):
        for j in range(len(c)):
            if c[i] > c[j] + eps_tie and x_star[i] <= x_star[j]:
                return False
            if abs(c[i] - c[j]) < eps_tie and abs(x_star[i] - x_star[j]) > 10 * eps_tie:
                return False
    return True


def cmd_compare(args) -> int:
    C = _load_network(args)
    structure = classify(C)
    x0 = _resolve_x0(args.x0, C.n)
    report = compare_models(
        C, x0,
        eps_conv=args.tol, max_steps=args.max_steps,
        record_every=args.record_every, structure=structure,
    )
    print(f"regime: {report.regime}")
    print(f"steps: st={report.steps_st} df={report.steps_df}")
    if report.limit_distance < 1e-6:
        print(f"limits agree (dist {report.limit_distance:.3g})")
    else:
        st_label = _pretty_limit(report.limit_st)
        df_label = _pretty_limit(report.limit_df)
        tail = "" if st_label == df_label else f": {st_label} vs {df_label}"
        print(f"limits differ (dist {report.limit_distance:.3g}){tail}")
    print(f"limit st: {_fmt_vec(report.limit_st)}")
    print(f"limit df: {_fmt_vec(report.limit_df)}")
    if report.sink_power_st is not None:
        print(f"sink power st: {_fmt_vec(report.sink_power_st)}")
        print(f"sink power df: {_fmt_vec(report.sink_power_df)}")
    if args.out:
        base = args.out
        netio.write_trajectory_csv(report.trajectory_st, f"{base}.st.csv", structure)
        netio.write_trajectory_csv(report.trajectory_df, f"{base}.df.csv", structure)
        print(f"wrote trajectories: {base}.st.csv {base}.df.csv")
    return 0


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="powerflow",
        description="Social power dynamics on influence networks: classify "
        "structure, simulate self-weight trajectories, solve equilibria, "
        "and compare the single-timescale and classical update rules.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, x0: bool = False, model: bool = False):
        p.add_argument("--network", help="network file (dense matrix or adjacency list)")
        p.add_argument(
            "--builder",
            help="synthetic network: star:N, ring:N or ds:N:SEED "
            "(doubly stochastic random)",
        )
        if model:
            p.add_argument(
                "--model", choices=MODELS, default=SINGLE_TIMESCALE,
                help="update rule: st (single-timescale) or df (classical)",
            )
        if x0:
            p.add_argument(
                "--x0", default="uniform",
                help="initial self-weights: uniform, vertex:I, random:SEED "
                "or list:a,b,...",
            )

    p_classify = sub.add_parser("classify", help="report the network structure")
    add_common(p_classify)
    p_classify.set_defaults(func=cmd_classify)

    p_centrality = sub.add_parser("centrality", help="print centrality scores")
    add_common(p_centrality)
    p_centrality.set_defaults(func=cmd_centrality)

    p_sim = sub.add_parser("simulate", help="run one update rule")
    add_common(p_sim, x0=True, model=True)
    p_sim.add_argument("--tol", type=float, default=EPS_CONV, help="step-delta tolerance")
    p_sim.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    p_sim.add_argument("--record-every", type=int, default=1)
    p_sim.add_argument("--out", help="write the trajectory CSV here")
    p_sim.add_argument(
        "--quiet", action="store_true", help="suppress per-step rows on stdout"
    )
    p_sim.set_defaults(func=cmd_simulate)

    p_eq = sub.add_parser("equilibrium", help="predict or assemble equilibria")
    add_common(p_eq)
    p_eq.add_argument("--tol", type=float, default=EPS_EQUILIBRIUM, help="solver tolerance")
    p_eq.add_argument("--zeta", help="sink power split a,b,... for multi-sink networks")
    p_eq.set_defaults(func=cmd_equilibrium)

    p_cmp = sub.add_parser("compare", help="run both update rules from one start")
    add_common(p_cmp, x0=True)
    p_cmp.add_argument("--tol", type=float, default=EPS_CONV, help="step-delta tolerance")
    p_cmp.add_argument("--max-steps", type=int, default=DEFAULT_MAX_STEPS)
    p_cmp.add_argument("--record-every", type=int, default=1)
    p_cmp.add_argument("--out", help="prefix for the two trajectory CSVs")
    p_cmp.set_defaults(func=cmd_compare)

    return parser


def main(argv=None) -> int:
    args = _parser().parse_args(argv)
    _configure_logging()
    try:
        return args.func(args)
    except (ParseError, MatrixValidationError, EmptyAdviceSetError, InvalidInitialError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, PowerflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
