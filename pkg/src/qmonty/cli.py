"""Command line front end: reproduce the headline numbers, emit data files,
play the game in a terminal, or launch the HTTP service."""

import argparse
import math
import os
import sys

from . import stats
from .core import SEMICLASSICAL_ANGLES, classical_payoffs
from .exceptions import QmontyError
from .game import (
    GameSession,
    HostPrepare,
    HostStrategy,
    OpenDoor,
    PlaceBet,
    PlayerChoose,
    Resolve,
    advance,
)
from .io_formats import series_to_csv, series_to_json, session_view, surface_to_csv, surface_to_json
from .noise import semiclassical_noise_curve

HALF_PI = math.pi / 2

TABLE2_ROWS = [
    # label, corner, entangled, take switch value, target
    ("<P_s> max", (0.0, HALF_PI), False, True, 0.75),
    ("<P_s> min", (HALF_PI, HALF_PI), False, True, 0.5908),
    ("<P_ns> max", (0.0, 0.0), False, False, 0.4092),
    ("<P_ns> min", (0.0, HALF_PI), False, False, 0.25),
    ("<P_e,s> max", (0.0, HALF_PI), True, True, 0.6487),
    ("<P_e,s> min", (HALF_PI, HALF_PI), True, True, 0.4003),
    ("<P_e,ns> max", (0.0, 0.0), True, False, 0.5997),
    ("<P_e,ns> min", (0.0, HALF_PI), True, False, 0.3513),
]

TABLE3_CORNER_ROWS = [
    ("P_abs max", (0.0, HALF_PI), False, 0.5),
    ("P_abs min", (HALF_PI, HALF_PI), False, 0.1817),
    ("P_e,abs max", (0.0, HALF_PI), True, 0.2973),
]


def _positive_grid(text):
    try:
        values = [float(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad grid {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("empty grid")
    return values


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qmonty",
        description="Quantum-optical Monty Hall game: probabilities, ensembles, play",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("semiclassical", help="uniform-superposition game probabilities")
    p.add_argument("--noise-p", type=float, default=None,
                   help="equal-weight Pauli strength; prints the noisy point")

    p = sub.add_parser("random-expectation", help="expectations of the fully random game")
    p.add_argument("--entangled", action="store_true")
    p.add_argument("--noise-p", type=float, default=0.0)
    p.add_argument("--method", default="quad:16", help="quad:K or mc:N")
    p.add_argument("--seed", type=int, default=None)

    p = sub.add_parser("strategy-surface", help="tabulate expectations over door settings")
    p.add_argument("--entangled", action="store_true")
    p.add_argument("--noise-p", type=float, default=0.0)
    p.add_argument("--step", type=float, default=math.pi / 20)
    p.add_argument("--theta-nodes", type=int, default=16)
    p.add_argument("--out", default=None, help="output path (default stdout)")
    p.add_argument("--format", choices=("csv", "json"), default=None)

    p = sub.add_parser("extrema", help="locate surface extrema with refinement")
    p.add_argument("--quantity", choices=("p_ns", "p_s", "p_abs"), default="p_s")
    p.add_argument("--entangled", action="store_true")
    p.add_argument("--noise-p", type=float, default=0.0)
    p.add_argument("--step", type=float, default=math.pi / 200)
    p.add_argument("--theta-nodes", type=int, default=16)

    p = sub.add_parser("noise-sweep", help="quantities versus Pauli strength p")
    p.add_argument("--quantity", choices=("random", "ps-extrema"), default="random")
    p.add_argument("--grid", type=_positive_grid, default=[0.0, 0.25, 0.5, 0.75, 1.0])
    p.add_argument("--entangled", action="store_true")
    p.add_argument("--method", default="quad:16")
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--step", type=float, default=math.pi / 40)
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("csv", "json"), default=None)

    p = sub.add_parser("play", help="interactive terminal session")
    p.add_argument("--entangled", action="store_true")
    p.add_argument("--noise-p", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=None)

    sub.add_parser("table2", help="strategy-expectation corners vs published values")
    sub.add_parser("table3", help="imbalance extrema vs published values")

    p = sub.add_parser("serve", help="run the HTTP game service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=None,
                   help="default from QMONTY_PORT or 8000")

    return parser


def _require_seed_for_mc(args):
    kind, _ = stats.parse_method(args.method)
    if kind == "mc" and args.seed is None:
        raise ValueError("Monte Carlo runs need --seed for reproducibility")


def _weights(noise_p):
    from .noise import PauliWeights

    if not noise_p:
        return None
    return PauliWeights.equal(noise_p)


def cmd_semiclassical(args):
    if args.noise_p is None:
        p_ns, p_s = classical_payoffs(3, 1)
        print(f"P_ns = {float(p_ns):.6f}")
        print(f"P_s = {float(p_s):.6f}")
        return 0
    point = semiclassical_noise_curve([args.noise_p])[0]
    print(f"p = {point.p:g}")
    print(f"P_ns = {point.p_ns:.6f}")
    print(f"P_s = {point.p_s:.6f}")
    print(f"ratio P_s/P_ns = {point.ratio:.6f}")
    return 0


def cmd_random_expectation(args):
    _require_seed_for_mc(args)
    ns, s = stats.random_expectation(
        entangled=args.entangled,
        weights=_weights(args.noise_p),
        method=args.method,
        seed=args.seed,
    )
    label = "e," if args.entangled else ""
    print(f"<P_{label}ns> = {ns.value:.6f} +- {ns.uncertainty:.1e} ({ns.method}, {ns.count})")
    print(f"<P_{label}s> = {s.value:.6f} +- {s.uncertainty:.1e}")
    return 0


def cmd_strategy_surface(args):
    surface = stats.surface_scan(
        step=args.step,
        entangled=args.entangled,
        weights=_weights(args.noise_p),
        theta_nodes=args.theta_nodes,
    )
    fmt = args.format
    if fmt is None:
        fmt = "json" if args.out and args.out.endswith(".json") else "csv"
    if args.out is None:
        if fmt == "csv":
            surface_to_csv(surface, sys.stdout)
        else:
            print(surface_to_json(surface))
    else:
        if fmt == "csv":
            surface_to_csv(surface, args.out)
        else:
            surface_to_json(surface, args.out)
        print(f"wrote {args.out}")
    return 0


def cmd_extrema(args):
    surface = stats.surface_scan(
        step=args.step,
        entangled=args.entangled,
        weights=_weights(args.noise_p),
        theta_nodes=args.theta_nodes,
    )
    mx, mn = stats.find_extrema(surface, args.quantity)
    for rep in (mx, mn):
        print(
            f"{args.quantity} {rep.kind} = {rep.value:.6f} "
            f"at phi1 = {rep.phi1:.6f}, phi2 = {rep.phi2:.6f}"
        )
    return 0


def cmd_noise_sweep(args):
    if args.quantity == "random":
        _require_seed_for_mc(args)
    points = stats.noise_sweep(
        args.quantity,
        args.grid,
        entangled=args.entangled,
        method=args.method,
        step=args.step,
        seed=args.seed,
    )
    fmt = args.format
    if fmt is None:
        fmt = "json" if args.out and args.out.endswith(".json") else "csv"
    if args.out:
        if fmt == "csv":
            series_to_csv(points, args.out)
        else:
            series_to_json(points, args.out)
        print(f"wrote {args.out}")
    else:
        for pt in points:
            vals = "  ".join(f"{k} = {v:.6f}" for k, v in pt.values.items())
            print(f"p = {pt.p:g}: {vals}")
    return 0


def cmd_table2(args):
    print(f"{'quantity':<12} {'phi1':>7} {'phi2':>7} {'target':>8} {'computed':>10} {'delta':>9}")
    for label, (f1, f2), entangled, take_switch, target in TABLE2_ROWS:
        ns, s, _ = stats.strategy_expectation(f1, f2, entangled=entangled, method="quad:16")
        value = s.value if take_switch else ns.value
        print(
            f"{label:<12} {f1:7.4f} {f2:7.4f} {target:8.4f} {value:10.6f} "
            f"{abs(value - target):9.6f}"
        )
    return 0


def cmd_table3(args):
    print(f"{'quantity':<12} {'phi1':>7} {'phi2':>7} {'target':>8} {'computed':>10} {'delta':>9}")
    for label, (f1, f2), entangled, target in TABLE3_CORNER_ROWS:
        _, _, imbalance = stats.strategy_expectation(f1, f2, entangled=entangled, method="quad:16")
        print(
            f"{label:<12} {f1:7.4f} {f2:7.4f} {target:8.4f} {imbalance.value:10.6f} "
            f"{abs(imbalance.value - target):9.6f}"
        )
    surface = stats.surface_scan(step=math.pi / 40, entangled=True)
    _, mn = stats.find_extrema(surface, "p_abs")
    print(
        f"{'P_e,abs min':<12} {mn.phi1:7.4f} {mn.phi2:7.4f} {0.0001:8.4f} {mn.value:10.6f} "
        f"{abs(mn.value - 0.0001):9.6f}  (location grid-dependent; zero contour)"
    )
    return 0


def _prompt(text, default=None):
    raw = input(text).strip()
    if not raw and default is not None:
        return default
    return raw


def cmd_play(args):
    session = GameSession(entangled=args.entangled, noise_p=args.noise_p, seed=args.seed)
    print(f"session {session.id}  entangled={session.entangled}  noise_p={session.noise_p:g}")
    print("commands: prize <uniform|classical-box-J|tb1,tb2>, door <random-projector|help-alice|hurt-alice|phi1,phi2>")
    try:
        while True:
            prize = _prompt("host prize [uniform]: ", "uniform")
            door = _prompt("door policy [random-projector]: ", "random-projector")
            if "," in prize:
                prize = tuple(float(x) for x in prize.split(","))
            if "," in door:
                door = tuple(float(x) for x in door.split(","))
            advance(session, HostPrepare(HostStrategy(prize=prize, door=door)))
            choice = _prompt("your choice, box 1-3 or ta1,ta2 [uniform]: ", "uniform")
            if choice == "uniform":
                advance(session, PlayerChoose(angles=(
                    SEMICLASSICAL_ANGLES.theta_a1, SEMICLASSICAL_ANGLES.theta_a2)))
            elif "," in choice:
                advance(session, PlayerChoose(angles=tuple(float(x) for x in choice.split(","))))
            else:
                advance(session, PlayerChoose(box=int(choice)))
            advance(session, OpenDoor())
            door_info = session_view(session)["door"]
            coeffs = ", ".join(f"{c:.4f}" for c in door_info["coefficients"])
            blocked = door_info["blocked_box"]
            print(f"doors open: coefficients ({coeffs})"
                  + (f", box {blocked} fully blocked" if blocked else ""))
            bet = _prompt("bet, switch or stay [switch]: ", "switch")
            advance(session, PlaceBet(bet))
            advance(session, Resolve())
            out = session.outcome
            print(f"coincidence (A{out.i}, B{out.j}) -> you {'WIN' if out.win else 'LOSE'}")
            probs = session_view(session)["probabilities"]
            print(f"this configuration: P_ns = {probs['p_ns']:.4f}, P_s = {probs['p_s']:.4f}")
            print(f"score: {session.score.as_dict()}")
            again = _prompt("play again? [Y/n]: ", "y").lower()
            if again.startswith("n"):
                break
    except (EOFError, KeyboardInterrupt):
        print()
    return 0


def cmd_serve(args):
    import uvicorn

    from .service import create_app

    port = args.port
    if port is None:
        port = int(os.environ.get("QMONTY_PORT", "8000"))
    uvicorn.run(create_app(), host=args.host, port=port)
    return 0


HANDLERS = {
    "semiclassical": cmd_semiclassical,
    "random-expectation": cmd_random_expectation,
    "strategy-surface": cmd_strategy_surface,
    "extrema": cmd_extrema,
    "noise-sweep": cmd_noise_sweep,
    "play": cmd_play,
    "table2": cmd_table2,
    "table3": cmd_table3,
    "serve": cmd_serve,
}


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return HANDLERS[args.command](args)
    except (QmontyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
