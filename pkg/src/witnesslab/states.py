"""Pure and mixed states tagged with the system they live in.

State vectors always live in the composite space of their ``SystemSpec``:
the full tensor product for distinguishable parties, the compressed
symmetric / antisymmetric space for two identical particles (basis order
of ``sym_subspace_isometry`` / ``antisym_subspace_isometry``).

For identical particles the caller-facing description is the coefficient
matrix of ``Σ_ij v_ij a_i^† a_j^† |0>``; a normalized state has
``tr(v^† v) = 1/2``, and the first-quantized ket is ``sqrt(2) Σ v_ij |ij>``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.stats import unitary_group

from .errors import DimensionMismatch, NonHermitian, NotAntisymmetric, NotSymmetric
from .lie import BOSON, DISTINGUISHABLE, FERMION, SystemSpec
from .tensor import is_hermitian, kron_all

MIXED_TOL = 1e-10


@dataclass(frozen=True)
class PureState:
    spec: SystemSpec
    vector: np.ndarray = field(repr=False)

    def __post_init__(self):
        vec = np.asarray(self.vector, dtype=complex).reshape(-1)
        if vec.shape[0] != self.spec.composite_dim:
            raise DimensionMismatch(
                f"{self.spec.label()} needs {self.spec.composite_dim} amplitudes, got {vec.shape[0]}"
            )
        object.__setattr__(self, "vector", vec)

    @classmethod
    def from_coefficients(cls, spec: SystemSpec, matrix) -> "PureState":
        """Build a state from its coefficient matrix (no normalization applied)."""
        c = np.asarray(matrix, dtype=complex)
        if spec.kind == DISTINGUISHABLE:
            return cls(spec, c.reshape(-1))
        n = spec.n
        if c.shape != (n, n):
            raise DimensionMismatch(f"expected a {n}x{n} coefficient matrix")
        scale = max(float(np.max(np.abs(c))), 1.0)
        if spec.kind == BOSON and np.max(np.abs(c - c.T)) > 1e-10 * scale:
            raise NotSymmetric("bosonic coefficient matrix must be symmetric")
        if spec.kind == FERMION and np.max(np.abs(c + c.T)) > 1e-10 * scale:
            raise NotAntisymmetric("fermionic coefficient matrix must be antisymmetric")
        return cls(spec, np.sqrt(2.0) * spec.embedding().T @ c.reshape(-1))

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.vector))

    def normalized(self) -> "PureState":
        return PureState(self.spec, self.vector / self.norm)

    def ambient(self) -> np.ndarray:
        """The ket in the full tensor product of single-particle spaces."""
        return self.spec.embedding() @ self.vector

    def coefficient_matrix(self) -> np.ndarray:
        """``c`` for two distinguishable parties, ``v`` / ``w`` for identical particles."""
        if self.spec.kind == DISTINGUISHABLE:
            if len(self.spec.dims) != 2:
                raise DimensionMismatch("coefficient matrices exist for two parties only")
            return self.vector.reshape(self.spec.dims)
        n = self.spec.n
        return self.ambient().reshape(n, n) / np.sqrt(2.0)

    def density_matrix(self) -> np.ndarray:
        return np.outer(self.vector, self.vector.conj())


@dataclass(frozen=True)
class MixedState:
    spec: SystemSpec
    rho: np.ndarray = field(repr=False)

    def __post_init__(self):
        rho = np.asarray(self.rho, dtype=complex)
        d = self.spec.composite_dim
        if rho.shape != (d, d):
            raise DimensionMismatch(f"{self.spec.label()} needs a {d}x{d} density matrix")
        if not is_hermitian(rho, 1e-10):
            raise NonHermitian("density matrix is not Hermitian")
        if abs(np.trace(rho) - 1) > MIXED_TOL:
            raise ValueError("density matrix must have unit trace")
        if np.linalg.eigvalsh(0.5 * (rho + rho.conj().T))[0] < -MIXED_TOL:
            raise ValueError("density matrix must be positive semidefinite")
        object.__setattr__(self, "rho", 0.5 * (rho + rho.conj().T))

    @classmethod
    def from_pure(cls, psi: PureState) -> "MixedState":
        return cls(psi.spec, psi.normalized().density_matrix())


# ----------------------------------------------------------------------------
# constructors


def product_state(spec: SystemSpec, factors) -> PureState:
    """Tensor product (distinguishable), ``b^†(φ)^2|0>`` (bosons) or ``f^†(φ1) f^†(φ2)|0>`` (fermions).

    The result is normalized.
    """
    factors = [np.asarray(f, dtype=complex) for f in factors]
    if spec.kind == DISTINGUISHABLE:
        vec = kron_all(*[f.reshape(-1, 1) for f in factors]).reshape(-1)
        return PureState(spec, vec).normalized()
    if spec.kind == BOSON:
        phi = factors[0]
        v = np.outer(phi, phi)
    else:
        a, b = factors
        v = np.outer(a, b) - np.outer(b, a)
    psi = PureState.from_coefficients(spec, v)
    if psi.norm < 1e-14:
        raise ValueError("single-particle vectors give the zero state")
    return psi.normalized()


def haar_state(spec: SystemSpec, rng: np.random.Generator) -> PureState:
    d = spec.composite_dim
    z = rng.normal(size=d) + 1j * rng.normal(size=d)
    return PureState(spec, z / np.linalg.norm(z))


def random_product_state(spec: SystemSpec, rng: np.random.Generator) -> PureState:
    def vec(n):
        z = rng.normal(size=n) + 1j * rng.normal(size=n)
        return z / np.linalg.norm(z)

    if spec.kind == DISTINGUISHABLE:
        return product_state(spec, [vec(d) for d in spec.dims])
    if spec.kind == BOSON:
        return product_state(spec, [vec(spec.n)])
    return product_state(spec, [vec(spec.n), vec(spec.n)])


def random_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    return unitary_group.rvs(n, random_state=rng) if n > 1 else np.exp(2j * np.pi * rng.random()) * np.eye(1)


def local_unitary(spec: SystemSpec, unitaries) -> np.ndarray:
    """Composite-space operator of ``U_1 ⊗ ... ⊗ U_n`` or of ``U ⊗ U`` restricted to H∨H / H∧H."""
    if spec.kind == DISTINGUISHABLE:
        return kron_all(*unitaries)
    (u,) = unitaries if isinstance(unitaries, (list, tuple)) else (unitaries,)
    v = spec.embedding()
    return v.T @ np.kron(u, u) @ v


def random_local_unitary(spec: SystemSpec, rng: np.random.Generator) -> np.ndarray:
    if spec.kind == DISTINGUISHABLE:
        return local_unitary(spec, [random_unitary(d, rng) for d in spec.dims])
    return local_unitary(spec, [random_unitary(spec.n, rng)])


def random_mixed_state(spec: SystemSpec, rank: int, rng: np.random.Generator) -> MixedState:
    """Random density matrix of the given rank (Haar eigenvectors, random weights)."""
    d = spec.composite_dim
    g = rng.normal(size=(d, rank)) + 1j * rng.normal(size=(d, rank))
    rho = g @ g.conj().T
    return MixedState(spec, rho / np.trace(rho).real)


def werner_state(p: float) -> MixedState:
    """Two-qubit ``p |Ψ-><Ψ-| + (1-p) I/4``."""
    singlet = np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2.0)
    rho = p * np.outer(singlet, singlet.conj()) + (1 - p) * np.eye(4) / 4
    return MixedState(SystemSpec.distinguishable(2, 2), rho)


def bell_state() -> PureState:
    return PureState(SystemSpec.distinguishable(2, 2), np.array([1, 0, 0, 1]) / np.sqrt(2.0))
