"""Schmidt, Slater and Takagi canonical coefficients of two-particle pure states."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import UnsupportedSpec
from .lie import BOSON, DISTINGUISHABLE, FERMION
from .states import PureState
from .tensor import antisym_block_diagonalize, takagi

SCHMIDT = "schmidt"
SLATER = "slater"
TAKAGI = "takagi"
NONENTANGLED_TOL = 1e-8


@dataclass(frozen=True)
class CanonicalCoeffs:
    kind: str
    values: np.ndarray

    def count_above(self, tol: float) -> int:
        if self.values.size == 0:
            return 0
        return int(np.sum(self.values > tol * (self.values[0] + 1.0)))


def schmidt(state: PureState) -> CanonicalCoeffs:
    if state.spec.kind != DISTINGUISHABLE or len(state.spec.dims) != 2:
        raise UnsupportedSpec("Schmidt coefficients need exactly two distinguishable parties")
    values = np.linalg.svd(state.coefficient_matrix(), compute_uv=False)
    return CanonicalCoeffs(SCHMIDT, values)


def slater(state: PureState) -> CanonicalCoeffs:
    """Block coefficients ``z_i`` of the antisymmetric coefficient matrix ``w``.

    One value per 2x2 block; a normalized state has ``2 Σ z_i^2 = 1/2``.
    """
    if state.spec.kind != FERMION:
        raise UnsupportedSpec("Slater coefficients need a two-fermion state")
    z, _ = antisym_block_diagonalize(state.coefficient_matrix())
    return CanonicalCoeffs(SLATER, z)


def takagi_coeffs(state: PureState) -> CanonicalCoeffs:
    """Diagonal of the Takagi form ``v = U diag(z) U^T`` of the bosonic coefficient matrix."""
    if state.spec.kind != BOSON:
        raise UnsupportedSpec("Takagi coefficients need a two-boson state")
    z, _ = takagi(state.coefficient_matrix())
    return CanonicalCoeffs(TAKAGI, z)


def canonical_coefficients(state: PureState) -> CanonicalCoeffs:
    kind = state.spec.kind
    if kind == FERMION:
        return slater(state)
    if kind == BOSON:
        return takagi_coeffs(state)
    return schmidt(state)


def is_nonentangled(state: PureState, tol: float = NONENTANGLED_TOL) -> bool:
    """True iff exactly one canonical coefficient exceeds ``tol * (largest + 1)``."""
    return canonical_coefficients(state).count_above(tol) == 1
