"""Command-line surface: compile, print angles, dump series, verify.

Exit codes: 0 success/verified, 1 verification failed, 2 synthesis failed,
64 usage error.
"""

from __future__ import annotations

import argparse
import math
import sys

import numpy as np

from .circuit import (
    CircuitFormatError,
    build_crot_circuit,
    build_from_merged,
    build_toffoli_circuit,
    deserialize,
    plan_merged_angles,
    serialize,
    to_text,
)
from .fitting import FittingError, fit_A
from .series import ODD, TrigSeries
from .simulate import (
    circuit_unitary,
    control_blocks,
    ideal_crot,
    ideal_toffoli,
    ideal_weighted,
    max_off_block,
    phase_distance,
    project_ancilla,
)
from .subspace import compute_thetas, default_params
from .synthesis import (
    CompletionError,
    ExtractionError,
    complete,
    crot_angles,
    weighted_angles,
)

USAGE_ERROR = 64
SYNTHESIS_ERROR = 2
VERIFY_ERROR = 1
_SYNTH_ERRORS = (FittingError, CompletionError, ExtractionError)


def parse_angle(text: str) -> float:
    """Parse '0.3', 'pi', '-pi', '2pi', 'pi/2', '3pi/4', '2*pi/3' into radians."""
    s = text.strip().lower().replace(" ", "").replace("*", "")
    sign = 1.0
    if s[:1] in "+-":
        sign = -1.0 if s[0] == "-" else 1.0
        s = s[1:]
    try:
        if "pi" in s:
            num, _, rest = s.partition("pi")
            value = (float(num) if num else 1.0) * math.pi
            if rest:
                if not rest.startswith("/"):
                    raise ValueError
                value /= float(rest[1:])
            return sign * value
        return sign * float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"cannot parse angle {text!r}") from None


def parse_angle_list(text: str) -> tuple[float, ...]:
    return tuple(parse_angle(part) for part in text.split(","))


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(USAGE_ERROR, f"{self.prog}: error: {message}\n")


def _build_parser() -> _Parser:
    parser = _Parser(prog="mscompile", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("crot-angles", help="print the pulse-train angles for a controlled Rz")
    p.add_argument("--n", type=int, required=True, help="total qubit count (N-1 controls + target)")
    p.add_argument("--alpha", type=parse_angle, required=True, help="rotation angle (accepts pi forms)")
    p.add_argument("--merged", action="store_true", help="print the 2N+1 combined z-rotations instead")
    p.add_argument("--precision", type=int, default=12, help="significant digits (default 12)")

    p = sub.add_parser("compile", help="compile a gate and write the circuit to a file")
    p.add_argument("--kind", choices=("crot", "toffoli", "weighted"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=parse_angle, help="rotation angle (crot)")
    p.add_argument("--alphas", type=parse_angle_list, help="comma-separated per-weight angles (weighted)")
    p.add_argument("--out", required=True, help="output path")
    p.add_argument("--format", choices=("json", "text"), default="json")

    p = sub.add_parser("verify", help="simulate a circuit file against an ideal gate")
    p.add_argument("--circuit", required=True, help="JSON circuit file")
    p.add_argument("--target", choices=("crot", "toffoli", "weighted"), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=parse_angle)
    p.add_argument("--alphas", type=parse_angle_list)
    p.add_argument("--tolerance", type=float, default=1e-6)

    p = sub.add_parser("series", help="tabulate the fitted series A, B, C, D over theta")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--alpha", type=parse_angle, required=True)
    p.add_argument("--grid-points", type=int, default=513)
    p.add_argument("--out", required=True)

    sub.add_parser("table", help="merged angles and verification distances for N = 3..6, alpha = -pi")
    return parser


def _fmt(value: float, precision: int = 12) -> str:
    return format(value, f".{precision}g")


def cmd_crot_angles(args) -> int:
    if args.n < 2:
        print("error: need --n >= 2", file=sys.stderr)
        return USAGE_ERROR
    plan = crot_angles(args.n, args.alpha)
    pr = args.precision
    print(f"n = {plan.n}  tau = {_fmt(plan.tau, pr)}  h = {_fmt(plan.h, pr)}  L = {plan.num_pulses}")
    if args.merged:
        for j, angle in enumerate(plan_merged_angles(plan)):
            print(f"merged_phi_{j} = {_fmt(angle, pr)}")
    else:
        for j, angle in enumerate(plan.phis):
            print(f"phi_{j} = {_fmt(angle, pr)}")
    return 0


def cmd_compile(args) -> int:
    if args.n < 2:
        print("error: need --n >= 2", file=sys.stderr)
        return USAGE_ERROR
    if args.kind == "crot":
        if args.alpha is None:
            print("error: crot needs --alpha", file=sys.stderr)
            return USAGE_ERROR
        circ = build_crot_circuit(crot_angles(args.n, args.alpha))
    elif args.kind == "toffoli":
        circ = build_toffoli_circuit(args.n)
    else:
        if args.alphas is None:
            print("error: weighted needs --alphas", file=sys.stderr)
            return USAGE_ERROR
        circ = build_crot_circuit(weighted_angles(args.n, args.alphas))
    payload = serialize(circ) if args.format == "json" else to_text(circ).encode()
    with open(args.out, "wb") as fh:
        fh.write(payload)
    print(f"wrote {args.out}: {circ.num_qubits} qubits, {circ.ms_count()} MS gates")
    return 0


def cmd_verify(args) -> int:
    try:
        with open(args.circuit, "rb") as fh:
            circ = deserialize(fh.read())
    except (OSError, CircuitFormatError) as exc:
        print(f"error: cannot load circuit: {exc}", file=sys.stderr)
        return USAGE_ERROR
    u = circuit_unitary(circ)

    if args.target == "toffoli":
        if circ.num_qubits != args.n + 1 or len(circ.ancilla_qubits) != 1:
            print("error: toffoli target expects n+1 qubits and one ancilla", file=sys.stderr)
            return USAGE_ERROR
        ancilla = next(iter(circ.ancilla_qubits))
        block, leakage = project_ancilla(u, ancilla, 0)
        distance = phase_distance(block, ideal_toffoli(args.n))
        print(f"ancilla_leakage = {leakage:.3e}")
    else:
        if circ.num_qubits != args.n:
            print(f"error: circuit has {circ.num_qubits} qubits, target expects {args.n}", file=sys.stderr)
            return USAGE_ERROR
        if args.target == "crot":
            if args.alpha is None:
                print("error: crot target needs --alpha", file=sys.stderr)
                return USAGE_ERROR
            ideal = ideal_crot(args.n, args.alpha, target=circ.target_qubit)
        else:
            if args.alphas is None:
                print("error: weighted target needs --alphas", file=sys.stderr)
                return USAGE_ERROR
            ideal = ideal_weighted(args.n, args.alphas, target=circ.target_qubit)
        distance = phase_distance(u, ideal)
        print(f"off_block_max = {max_off_block(u, circ.target_qubit):.3e}")
        if args.target == "crot":
            worst = 0.0
            for ctrl, block in control_blocks(u, circ.target_qubit):
                if ctrl != 2 ** (args.n - 1) - 1:
                    worst = max(worst, abs(block[0, 1]), abs(block[1, 0]))
            print(f"idle_block_offdiag = {worst:.3e}")

    verdict = "PASS" if distance <= args.tolerance else "FAIL"
    print(f"phase_distance = {distance:.6e}  tolerance = {args.tolerance:.1e}  {verdict}")
    return 0 if verdict == "PASS" else VERIFY_ERROR


def cmd_series(args) -> int:
    if args.n < 2:
        print("error: need --n >= 2", file=sys.stderr)
        return USAGE_ERROR
    alpha = args.alpha
    a = fit_A(args.n, alpha)
    b = TrigSeries.zero(ODD)
    sin_half = np.sin(alpha / 2.0)
    c, d = complete(a, b, -1 if sin_half > 0 else +1)
    thetas = np.linspace(-np.pi, np.pi, args.grid_points)
    with open(args.out, "w") as fh:
        fh.write("theta\tA\tB\tC\tD\n")
        for t in thetas:
            fh.write(f"{t:.12g}\t{a(t):.12g}\t{b(t):.12g}\t{c(t):.12g}\t{d(t):.12g}\n")
        fh.write("\n# pinned points theta_q\n")
        fh.write("# theta_q\tA\tB\tC\tD\n")
        for t in compute_thetas(args.n, *default_params(args.n)):
            fh.write(f"# {t:.12g}\t{a(t):.12g}\t{b(t):.12g}\t{c(t):.12g}\t{d(t):.12g}\n")
    print(f"wrote {args.out}: {args.grid_points} grid rows")
    return 0


def cmd_table(args) -> int:
    print("merged z-rotation angles for the controlled-iZ (alpha = -pi), 3 decimals")
    for n in range(3, 7):
        plan = crot_angles(n, -np.pi)
        merged = plan_merged_angles(plan)
        circ = build_from_merged(n, plan.tau, plan.h, merged)
        distance = phase_distance(circuit_unitary(circ), ideal_crot(n, -np.pi))
        angles = "  ".join(f"{m:6.3f}" for m in merged)
        print(f"N={n}  tau=pi/{n}  [{angles}]  distance={distance:.2e}")
    return 0


_HANDLERS = {
    "crot-angles": cmd_crot_angles,
    "compile": cmd_compile,
    "verify": cmd_verify,
    "series": cmd_series,
    "table": cmd_table,
}


def _glue_angle_values(argv: list[str]) -> list[str]:
    """Rewrite '--alpha -pi' as '--alpha=-pi' so argparse keeps the value."""
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--alpha", "--alphas") and i + 1 < len(argv):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = _build_parser()
    if argv is None:
        argv = sys.argv[1:]
    try:
        args = parser.parse_args(_glue_angle_values(list(argv)))
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else USAGE_ERROR
    try:
        return _HANDLERS[args.command](args)
    except _SYNTH_ERRORS as exc:
        print(f"synthesis failed: {exc}", file=sys.stderr)
        return SYNTHESIS_ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
