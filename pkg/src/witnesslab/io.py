"""JSON state files, witness files and reports.

Complex numbers are ``[re, im]`` pairs, matrices are lists of rows.  State
files look like::

    {"data": [[0.7071067811865476, 0.0], [0.0, 0.0], ...],
     "schema_version": 1,
     "state_type": "pure",
     "system": {"dims": [2, 2], "kind": "distinguishable"}}

``data`` holds, for pure states, the amplitudes over the full tensor basis
(distinguishable) or the ``n x n`` coefficient matrix (bosons, fermions);
for mixed states, the density matrix on the composite space.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

from .errors import NonHermitian, WitnessLabError
from .lie import SystemSpec
from .states import MixedState, PureState
from .witness import Witness

SCHEMA_VERSION = 1
REPORT_DIGITS = 12
# State files carry 15 significant digits: a state read back differs from the
# decimals in the file by at most a few ulp, so writing it again reproduces
# the same text byte for byte.
STATE_DIGITS = 15


class StateFileError(WitnessLabError):
    pass


def encode_complex(arr, digits: int | None = None) -> list:
    """Nested ``[re, im]`` lists; ``digits`` rounds to that many significant digits."""
    arr = np.asarray(arr, dtype=complex)
    if arr.ndim == 0:
        pair = [float(arr.real), float(arr.imag)]
        return pair if digits is None else [float(f"{x:.{digits}g}") for x in pair]
    return [encode_complex(a, digits) for a in arr]


def decode_complex(data) -> np.ndarray:
    arr = np.asarray(data, dtype=float)
    if arr.ndim == 0 or arr.shape[-1] != 2:
        raise StateFileError("complex entries must be [re, im] pairs")
    out = np.empty(arr.shape[:-1], dtype=complex)
    out.real = arr[..., 0]
    out.imag = arr[..., 1]
    return out


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=1) + "\n"


def state_to_dict(state) -> dict:
    if isinstance(state, PureState):
        if state.spec.identical:
            data = encode_complex(state.coefficient_matrix(), STATE_DIGITS)
        else:
            data = encode_complex(state.vector, STATE_DIGITS)
        kind = "pure"
    else:
        data = encode_complex(state.rho, STATE_DIGITS)
        kind = "mixed"
    return {
        "schema_version": SCHEMA_VERSION,
        "system": state.spec.to_dict(),
        "state_type": kind,
        "data": data,
    }


def state_from_dict(obj: dict):
    try:
        version = obj["schema_version"]
        spec = SystemSpec.from_dict(obj["system"])
        kind = obj["state_type"]
        data = decode_complex(obj["data"])
    except (KeyError, TypeError, ValueError) as exc:
        raise StateFileError(f"malformed state file: {exc}") from exc
    if version != SCHEMA_VERSION:
        raise StateFileError(f"unsupported schema_version {version}")
    d = spec.composite_dim
    if kind == "pure":
        if spec.identical:
            if data.shape != (spec.n, spec.n):
                raise StateFileError(f"expected a {spec.n}x{spec.n} coefficient matrix")
            return PureState.from_coefficients(spec, data)
        if data.shape != (d,):
            raise StateFileError(f"expected {d} amplitudes")
        return PureState(spec, data)
    if kind == "mixed":
        if data.shape != (d, d):
            raise StateFileError(f"expected a {d}x{d} density matrix")
        scale = max(float(np.max(np.abs(data))), 1.0)
        if np.max(np.abs(data - data.conj().T)) > 1e-8 * scale:
            raise NonHermitian("density matrix in state file is not Hermitian")
        return MixedState(spec, 0.5 * (data + data.conj().T))
    raise StateFileError(f"unknown state_type {kind!r}")


def read_state(path) -> tuple[object, str]:
    """Load a state file; returns the state and the SHA-256 of the file bytes."""
    raw = Path(path).read_bytes()
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise StateFileError(f"{path}: not valid JSON ({exc})") from exc
    return state_from_dict(obj), hashlib.sha256(raw).hexdigest()


def write_state(path, state) -> None:
    Path(path).write_text(dumps(state_to_dict(state)))


def witness_to_dict(w: Witness) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "system": w.spec.to_dict(),
        "kind": w.kind,
        "l_max": w.l_max,
        "eigenspaces": [[v, m] for v, m in w.eigenspaces],
        "a_matrix": encode_complex(w.a_matrix),
        "kraus": [encode_complex(t) for t in w.kraus],
        "kraus_all": [encode_complex(t) for t in w.kraus_all],
    }


def witness_from_dict(obj: dict) -> Witness:
    return Witness(
        spec=SystemSpec.from_dict(obj["system"]),
        kind=obj["kind"],
        a_matrix=decode_complex(obj["a_matrix"]),
        l_max=float(obj["l_max"]),
        eigenspaces=tuple((float(v), int(m)) for v, m in obj["eigenspaces"]),
        kraus=tuple(decode_complex(t) for t in obj["kraus"]),
        kraus_all=tuple(decode_complex(t) for t in obj["kraus_all"]),
    )


def round_sig(obj, digits: int = REPORT_DIGITS):
    """Round every float in a nested structure to ``digits`` significant digits."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, (float, np.floating)):
        x = float(f"{float(obj):.{digits}g}")
        return 0.0 if x == 0 else x
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return round_sig(obj.tolist(), digits)
    if isinstance(obj, complex):
        return [round_sig(obj.real, digits), round_sig(obj.imag, digits)]
    if isinstance(obj, dict):
        return {k: round_sig(v, digits) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [round_sig(v, digits) for v in obj]
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def make_report(command: list[str], inputs: dict, outputs: dict, tolerances: dict, seed) -> str:
    return dumps(
        round_sig(
            {
                "command": command,
                "inputs": inputs,
                "outputs": outputs,
                "tolerances": tolerances,
                "seed": seed,
            }
        )
    )
