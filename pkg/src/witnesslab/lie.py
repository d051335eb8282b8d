"""su(N) bases and their representations on composite Hilbert spaces.

Generators use the trace normalization ``tr(H_l^2) = tr(X_ij X_ji) = 1``.
The quadratic operators built later (Casimir, L) contract generators with
the inverse Killing form, and the Killing form of su(N) is ``2N tr``.  Each
represented generator therefore carries a ``killing_scale = 1/(2N)``, with
``N`` the dimension of the particle it acts on.  With this weighting the
Casimir of the adjoint representation is 1.
"""

from __future__ import annotations

import os
import re
from dataclasses import dataclass, field

import numpy as np

from .errors import BadDimension, DimensionCap, DimensionMismatch
from .tensor import antisym_subspace_isometry, kron_all, sym_subspace_isometry

DEFAULT_DIM_CAP = 4096**2
HIGHEST_WEIGHT_TOL = 1e-9

DISTINGUISHABLE = "distinguishable"
BOSON = "boson"
FERMION = "fermion"


@dataclass(frozen=True)
class SuBasis:
    """Cartan generators and root vectors of su(n) in the defining representation."""

    n: int
    cartan: tuple[np.ndarray, ...]
    pos_roots: tuple[np.ndarray, ...]
    neg_roots: tuple[np.ndarray, ...]
    root_indices: tuple[tuple[int, int], ...]

    @property
    def rank(self) -> int:
        return self.n - 1

    def cartan_coefficients(self) -> np.ndarray:
        """Matrix ``a[l, k]`` with ``H_l = sum_k a[l, k] |k><k|``."""
        return np.array([np.real(np.diag(h)) for h in self.cartan]).reshape(self.n - 1, self.n)


def su_basis(n: int) -> SuBasis:
    if n < 2:
        raise BadDimension(f"su(N) needs N >= 2, got {n}")
    cartan = []
    for l in range(1, n):
        d = np.zeros(n)
        d[:l] = 1.0
        d[l] = -float(l)
        cartan.append(np.diag(d / np.sqrt(l * (l + 1))).astype(complex))
    pos, neg, idx = [], [], []
    for i in range(n):
        for j in range(i + 1, n):
            x = np.zeros((n, n), dtype=complex)
            x[i, j] = 1.0
            pos.append(x)
            neg.append(x.T.copy())
            idx.append((i, j))
    return SuBasis(n, tuple(cartan), tuple(pos), tuple(neg), tuple(idx))


@dataclass(frozen=True)
class SystemSpec:
    """Which composite system we are looking at.

    ``kind`` is ``"distinguishable"`` (``dims`` lists every party) or
    ``"boson"`` / ``"fermion"`` (two identical particles, ``dims = (n,)``).
    """

    kind: str
    dims: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if self.kind == DISTINGUISHABLE:
            if len(self.dims) < 2 or min(self.dims) < 2:
                raise BadDimension("distinguishable systems need >= 2 parties of dimension >= 2")
        elif self.kind in (BOSON, FERMION):
            if len(self.dims) != 1 or self.dims[0] < 2:
                raise BadDimension(f"{self.kind} systems need a single-particle dimension >= 2")
        else:
            raise BadDimension(f"unknown system kind {self.kind!r}")

    @classmethod
    def distinguishable(cls, *dims: int) -> "SystemSpec":
        return cls(DISTINGUISHABLE, tuple(dims))

    @classmethod
    def boson(cls, n: int) -> "SystemSpec":
        return cls(BOSON, (n,))

    @classmethod
    def fermion(cls, n: int) -> "SystemSpec":
        return cls(FERMION, (n,))

    @classmethod
    def parse(cls, text: str) -> "SystemSpec":
        """Parse ``dist:2,2``, ``boson:3`` or ``fermion:4``."""
        m = re.fullmatch(r"\s*(dist|distinguishable|boson|fermion)\s*:\s*([\d,\s]+)", text)
        if not m:
            raise BadDimension(f"cannot parse system {text!r}")
        kind = {"dist": DISTINGUISHABLE}.get(m.group(1), m.group(1))
        dims = tuple(int(x) for x in m.group(2).split(",") if x.strip())
        return cls(kind, dims)

    def label(self) -> str:
        short = "dist" if self.kind == DISTINGUISHABLE else self.kind
        return f"{short}:{','.join(str(d) for d in self.dims)}"

    @property
    def identical(self) -> bool:
        return self.kind != DISTINGUISHABLE

    @property
    def n(self) -> int:
        """Single-particle dimension for identical particles."""
        return self.dims[0]

    @property
    def ambient_dims(self) -> tuple[int, ...]:
        if self.identical:
            return (self.n, self.n)
        return self.dims

    @property
    def composite_dim(self) -> int:
        if self.kind == DISTINGUISHABLE:
            return int(np.prod(self.dims))
        n = self.n
        return n * (n + 1) // 2 if self.kind == BOSON else n * (n - 1) // 2

    def embedding(self) -> np.ndarray:
        """Isometry from the composite space into the full tensor product."""
        if self.kind == BOSON:
            return sym_subspace_isometry(self.n)
        if self.kind == FERMION:
            return antisym_subspace_isometry(self.n)
        return np.eye(self.composite_dim)

    def to_dict(self) -> dict:
        if self.identical:
            return {"kind": self.kind, "n": self.n}
        return {"kind": self.kind, "dims": list(self.dims)}

    @classmethod
    def from_dict(cls, data: dict) -> "SystemSpec":
        kind = data["kind"]
        if kind in (BOSON, FERMION):
            return cls(kind, (int(data["n"]),))
        return cls(kind, tuple(data["dims"]))


def dim_cap() -> int:
    """Cap on the number of entries of a two-copy operator (``WITNESSLAB_DIM_CAP``)."""
    raw = os.environ.get("WITNESSLAB_DIM_CAP")
    return int(float(raw)) if raw else DEFAULT_DIM_CAP


def check_dim_cap(spec: SystemSpec) -> None:
    side = spec.composite_dim**2
    if side * side > dim_cap():
        raise DimensionCap(
            f"{spec.label()}: two-copy operator of side {side} exceeds the cap {dim_cap()}"
        )


@dataclass(frozen=True)
class RepresentedAlgebra:
    """Represented generators of the local-transformation algebra.

    The generator lists are aligned with their Killing-form scales:
    ``cartan_scale[k]`` belongs to ``rep_cartan[k]`` and ``root_scale[k]``
    to the pair ``(rep_pos_roots[k], rep_neg_roots[k])``.  ``root_weights``
    holds the eigenvalue ``alpha(H_k)`` of every root on every Cartan
    generator, rows indexed by Cartan generators.
    """

    spec: SystemSpec
    rep_cartan: tuple[np.ndarray, ...]
    rep_pos_roots: tuple[np.ndarray, ...]
    rep_neg_roots: tuple[np.ndarray, ...]
    cartan_scale: tuple[float, ...]
    root_scale: tuple[float, ...]
    root_weights: np.ndarray = field(repr=False)
    embed: np.ndarray = field(repr=False)

    @property
    def dim(self) -> int:
        """Dimension of the space the represented operators act on."""
        return self.embed.shape[1]


def _embed_party(op: np.ndarray, dims, slot: int) -> np.ndarray:
    factors = [np.eye(d, dtype=complex) for d in dims]
    factors[slot] = op
    return kron_all(*factors)


def _root_weights(basis: SuBasis) -> np.ndarray:
    a = basis.cartan_coefficients()
    return np.array([[a[l, i] - a[l, j] for (i, j) in basis.root_indices] for l in range(basis.rank)])


def represent(spec: SystemSpec, compress: bool = True) -> RepresentedAlgebra:
    """Represent the local algebra on the composite space of ``spec``.

    Distinguishable parties each get their own copy of su(N_k) acting on
    their slot.  Identical particles use ``A ⊗ I + I ⊗ A``, compressed onto
    the symmetric or antisymmetric subspace unless ``compress=False``, in
    which case the operators act on the full ``C^n ⊗ C^n``.
    """
    check_dim_cap(spec)
    cartan, pos, neg, c_scale, r_scale, weights = [], [], [], [], [], []
    if spec.kind == DISTINGUISHABLE:
        dims = spec.dims
        blocks = []
        for slot, d in enumerate(dims):
            b = su_basis(d)
            cartan += [_embed_party(h, dims, slot) for h in b.cartan]
            pos += [_embed_party(x, dims, slot) for x in b.pos_roots]
            neg += [_embed_party(x, dims, slot) for x in b.neg_roots]
            c_scale += [1.0 / (2 * d)] * b.rank
            r_scale += [1.0 / (2 * d)] * len(b.pos_roots)
            blocks.append(_root_weights(b))
        n_cartan = sum(bl.shape[0] for bl in blocks)
        n_roots = sum(bl.shape[1] for bl in blocks)
        weights = np.zeros((n_cartan, n_roots))
        r0 = c0 = 0
        for bl in blocks:
            weights[r0 : r0 + bl.shape[0], c0 : c0 + bl.shape[1]] = bl
            r0 += bl.shape[0]
            c0 += bl.shape[1]
        embed = np.eye(spec.composite_dim)
    else:
        n = spec.n
        b = su_basis(n)
        eye = np.eye(n, dtype=complex)
        v = spec.embedding() if compress else np.eye(n * n)

        def lift(a):
            full = np.kron(a, eye) + np.kron(eye, a)
            return v.T @ full @ v

        cartan = [lift(h) for h in b.cartan]
        pos = [lift(x) for x in b.pos_roots]
        neg = [lift(x) for x in b.neg_roots]
        c_scale = [1.0 / (2 * n)] * b.rank
        r_scale = [1.0 / (2 * n)] * len(b.pos_roots)
        weights = _root_weights(b)
        embed = v
    return RepresentedAlgebra(
        spec=spec,
        rep_cartan=tuple(cartan),
        rep_pos_roots=tuple(pos),
        rep_neg_roots=tuple(neg),
        cartan_scale=tuple(c_scale),
        root_scale=tuple(r_scale),
        root_weights=np.asarray(weights),
        embed=embed,
    )


def verify_highest_weight(ra: RepresentedAlgebra, v, tol: float = HIGHEST_WEIGHT_TOL) -> bool:
    """True iff ``v`` is a common Cartan eigenvector killed by every positive root."""
    v = np.asarray(v, dtype=complex).reshape(-1)
    side = ra.embed.shape[1]
    if v.shape[0] != side:
        raise DimensionMismatch(f"vector of length {v.shape[0]} does not match the representation")
    for h in ra.rep_cartan:
        hv = h @ v
        eig = np.vdot(v, hv) / np.vdot(v, v)
        if np.linalg.norm(hv - eig * v) > tol:
            return False
    return all(np.linalg.norm(x @ v) <= tol for x in ra.rep_pos_roots)
