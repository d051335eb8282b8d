"""Command-line entry point.

    witnesslab witness build --system dist:2,2 --kind projector
    witnesslab witness spectrum --system fermion:4
    witnesslab concurrence --state bell.json
    witnesslab canonical --state bell.json
    witnesslab verify appendix --system boson --nmax 6

Reports are JSON (stdout unless ``--out``).  Exit codes: 0 success,
2 usage, 3 dimension cap, 4 input or spec error, 5 verification failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import io
from .canonical import NONENTANGLED_TOL, canonical_coefficients
from .concurrence import RANK_TOL, concurrence_pure, convex_roof_upper, optimize_y, parse_strategy, tau_matrices
from .errors import DimensionCap, WitnessLabError
from .lie import BOSON, DISTINGUISHABLE, FERMION, SystemSpec, check_dim_cap, represent
from .states import PureState
from .witness import PROJECTOR, SPECTRAL_GAP, build_witness, casimir, closed_form_casimir, closed_form_spectrum, projector_appendix

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_CAP = 3
EXIT_INPUT = 4
EXIT_VERIFY = 5

VERIFY_TOL = 1e-9


class UsageError(Exception):
    pass


class VerificationFailed(Exception):
    def __init__(self, message: str, report: str):
        super().__init__(message)
        self.report = report


def _system(text: str) -> SystemSpec:
    try:
        return SystemSpec.parse(text)
    except (WitnessLabError, ValueError) as exc:
        raise UsageError(f"bad --system {text!r}: {exc}") from exc


def _state_inputs(path: str) -> tuple[object, dict]:
    state, digest = io.read_state(path)
    return state, {"state": str(path), "sha256": digest, "system": state.spec.label()}


def _spectrum_outputs(w) -> dict:
    return {
        "system": w.spec.label(),
        "kind": w.kind,
        "eigenvalues": [[v, m] for v, m in w.eigenspaces],
        "l_max": w.l_max,
        "kraus_total": len(w.kraus_all),
        "kraus_symmetric": len(w.kraus),
    }


def cmd_witness(args) -> str:
    spec = _system(args.system)
    check_dim_cap(spec)
    w = build_witness(represent(spec), args.kind)
    outputs = _spectrum_outputs(w)
    if args.action == "build" and args.witness_out:
        Path(args.witness_out).write_text(io.dumps(io.witness_to_dict(w)))
        outputs["witness_file"] = args.witness_out
    inputs = {"system": spec.label(), "kind": args.kind}
    return io.make_report(args.argv, inputs, outputs, {"degeneracy": "1e-8*(1+max|l|)"}, args.seed)


def _witness_for_state(state, args):
    spec = state.spec
    if args.system is not None and _system(args.system) != spec:
        raise io.StateFileError(f"state is {spec.label()} but --system is {args.system}")
    check_dim_cap(spec)
    return build_witness(represent(spec), args.kind)


def cmd_concurrence(args) -> str:
    state, inputs = _state_inputs(args.state)
    w = _witness_for_state(state, args)
    inputs["kind"] = args.kind
    tolerances = {"rank": RANK_TOL}
    if isinstance(state, PureState):
        psi = state.normalized()
        outputs = {"state_type": "pure", "concurrence": concurrence_pure(psi, w)}
    else:
        try:
            parse_strategy(args.strategy)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        ts = tau_matrices(state, w)
        rep = optimize_y(ts, args.strategy, seed=args.seed)
        outputs = {
            "state_type": "mixed",
            "rank": ts.r,
            "bound": rep.bound,
            "y": rep.y,
            "singulars": rep.singulars,
            "strategy": rep.strategy,
        }
        if args.trials > 0:
            outputs["convex_roof_upper"] = convex_roof_upper(state, w, trials=args.trials, seed=args.seed)
            outputs["trials"] = args.trials
    return io.make_report(args.argv, inputs, outputs, tolerances, args.seed)


def cmd_canonical(args) -> str:
    state, inputs = _state_inputs(args.state)
    if not isinstance(state, PureState):
        raise io.StateFileError("canonical forms need a pure state")
    psi = state.normalized()
    coeffs = canonical_coefficients(psi)
    outputs = {
        "kind": coeffs.kind,
        "coefficients": coeffs.values,
        "nonentangled": coeffs.count_above(NONENTANGLED_TOL) == 1,
    }
    return io.make_report(args.argv, inputs, outputs, {"nonentangled": NONENTANGLED_TOL}, args.seed)


def _appendix_checks(spec: SystemSpec) -> list[dict]:
    w = build_witness(represent(spec), PROJECTOR)
    checks = []

    expected = [(val, mult) for _, val, mult in closed_form_spectrum(spec) if mult > 0]
    got = list(w.eigenspaces)
    ok = len(got) == len(expected) and all(
        abs(g[0] - e[0]) <= VERIFY_TOL and g[1] == e[1] for g, e in zip(got, expected)
    )
    err = max((abs(g[0] - e[0]) for g, e in zip(got, expected)), default=float("inf"))
    checks.append({"identity": "spectrum", "pass": ok, "error": err, "expected": expected, "found": got})

    ra = represent(spec)
    c = casimir(ra)
    err = float(np.max(np.abs(c - closed_form_casimir(spec) * np.eye(ra.dim))))
    checks.append({"identity": "casimir", "pass": err <= VERIFY_TOL, "error": err})

    err = float(np.max(np.abs(projector_appendix(spec) - w.a_matrix)))
    checks.append({"identity": "projector", "pass": err <= VERIFY_TOL, "error": err})
    return checks


def cmd_verify(args) -> str:
    kinds = {"dist": DISTINGUISHABLE, DISTINGUISHABLE: DISTINGUISHABLE, BOSON: BOSON, FERMION: FERMION}
    if args.system not in kinds:
        raise UsageError(f"--system must be dist, boson or fermion, got {args.system!r}")
    kind = kinds[args.system]
    if args.nmax < 2:
        raise UsageError("--nmax must be at least 2")
    results = []
    first_failure = None
    for n in range(2, args.nmax + 1):
        spec = SystemSpec.distinguishable(n, n) if kind == DISTINGUISHABLE else SystemSpec(kind, (n,))
        check_dim_cap(spec)
        for check in _appendix_checks(spec):
            check["system"] = spec.label()
            results.append(check)
            if not check["pass"] and first_failure is None:
                first_failure = f"{spec.label()}: {check['identity']}"
    outputs = {"checks": results, "pass": first_failure is None}
    if first_failure is not None:
        outputs["first_failure"] = first_failure
    inputs = {"system": kind, "nmax": args.nmax}
    report = io.make_report(args.argv, inputs, outputs, {"identity": VERIFY_TOL}, args.seed)
    if first_failure is not None:
        raise VerificationFailed(f"verification failed: {first_failure}", report)
    return report


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    common.add_argument("--out", help="write the JSON report here instead of stdout")

    kind = argparse.ArgumentParser(add_help=False)
    kind.add_argument("--kind", choices=[PROJECTOR, SPECTRAL_GAP], default=PROJECTOR)

    parser = _Parser(prog="witnesslab", description="Nonlinear entanglement witnesses and concurrence bounds.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("witness", parents=[common, kind], help="build a witness and report the spectrum of L")
    p.add_argument("action", choices=["build", "spectrum"])
    p.add_argument("--system", required=True, help="dist:<d1,d2,...> | boson:<n> | fermion:<n>")
    p.add_argument("--witness-out", help="also write the serialized witness (build only)")
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("concurrence", parents=[common, kind], help="concurrence or mixed-state bound")
    p.add_argument("--state", required=True)
    p.add_argument("--system", help="optional; must match the state file")
    p.add_argument("--strategy", default="single", help="single | random:<k> | ascent")
    p.add_argument("--trials", type=int, default=0, help="convex-roof samples for mixed states (0 = skip)")
    p.set_defaults(func=cmd_concurrence)

    p = sub.add_parser("canonical", parents=[common], help="Schmidt, Slater or Takagi coefficients")
    p.add_argument("--state", required=True)
    p.set_defaults(func=cmd_canonical)

    p = sub.add_parser("verify", parents=[common], help="check closed-form identities")
    p.add_argument("target", choices=["appendix"])
    p.add_argument("--system", required=True, help="dist | boson | fermion")
    p.add_argument("--nmax", type=int, required=True)
    p.set_defaults(func=cmd_verify)
    return parser


def _emit(report: str, out: str | None) -> None:
    if out:
        Path(out).write_text(report)
    else:
        sys.stdout.write(report)


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        args = build_parser().parse_args(argv)
        args.argv = argv
        _emit(args.func(args), args.out)
        return EXIT_OK
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except DimensionCap as exc:
        print(f"dimension cap: {exc}", file=sys.stderr)
        return EXIT_CAP
    except VerificationFailed as exc:
        _emit(exc.report, args.out)
        print(exc, file=sys.stderr)
        return EXIT_VERIFY
    except (WitnessLabError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
