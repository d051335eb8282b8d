"""Casimir and Lichtenstein operators, the witness A and its Kraus operators.

For a represented algebra the two-copy operator

    L = C2 ⊗ I + I ⊗ C2 + 2 Σ_{α>0} (π(X_α) ⊗ π(X_-α) + π(X_-α) ⊗ π(X_α))
        + 2 Σ_i π(H_i) ⊗ π(H_i)

(every term weighted by the Killing-form scale of its generator) has the
symmetric squares of nonentangled states as its top eigenspace.  The
witness is either ``l_max I - L`` or the projector onto the non-top
eigenspaces of the copy-symmetric sector.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import comb

import numpy as np

from .errors import DegenerateTop, DimensionMismatch, IndexOutOfRange, UnsupportedSpec
from .lie import BOSON, DISTINGUISHABLE, FERMION, RepresentedAlgebra, SystemSpec, check_dim_cap, represent
from .tensor import (
    antisym_subspace_isometry,
    degeneracy_tol,
    group_eigenvalues,
    orthonormal_span,
    partial_trace_first,
    permutation_operator,
    sym_subspace_isometry,
)

SPECTRAL_GAP = "gap"
PROJECTOR = "projector"
KRAUS_SYMMETRY_TOL = 1e-9


def casimir(ra: RepresentedAlgebra) -> np.ndarray:
    """Second-order Casimir operator of the represented algebra."""
    c = np.zeros((ra.dim, ra.dim), dtype=complex)
    for s, x, y in zip(ra.root_scale, ra.rep_pos_roots, ra.rep_neg_roots):
        c += s * (x @ y + y @ x)
    for s, h in zip(ra.cartan_scale, ra.rep_cartan):
        c += s * (h @ h)
    return c


def lichtenstein(ra: RepresentedAlgebra) -> np.ndarray:
    """The two-copy operator L whose top eigenspace holds ``ψ ⊗ ψ`` for product ``ψ``."""
    check_dim_cap(ra.spec)
    c2 = casimir(ra)
    eye = np.eye(ra.dim)
    out = np.kron(c2, eye) + np.kron(eye, c2)
    for s, x, y in zip(ra.root_scale, ra.rep_pos_roots, ra.rep_neg_roots):
        out += 2 * s * (np.kron(x, y) + np.kron(y, x))
    for s, h in zip(ra.cartan_scale, ra.rep_cartan):
        out += 2 * s * np.kron(h, h)
    return 0.5 * (out + out.conj().T)


def lichtenstein_prime_action(n: int, i: int, j: int, k: int, l: int) -> dict[tuple[int, int, int, int], float]:
    """Action of ``L' = n (L - C2 ⊗ I - I ⊗ C2)`` on ``|ijkl>`` in ``(C^n)^{⊗4}``.

    Indices are 0-based.  Returns the image as ``{(a, b, c, d): coeff}``
    with zero coefficients dropped; this is the closed-form action for the
    two-particle representation ``A ⊗ I + I ⊗ A``.
    """
    for idx in (i, j, k, l):
        if not 0 <= idx < n:
            raise IndexOutOfRange(f"index {idx} outside 0..{n - 1}")
    d = lambda a, b: 1.0 if a == b else 0.0  # noqa: E731
    terms = [
        ((k, j, i, l), 1 - d(i, k)),
        ((l, j, k, i), 1 - d(i, l)),
        ((i, k, j, l), 1 - d(j, k)),
        ((i, l, k, j), 1 - d(j, l)),
        ((i, j, k, l), -4.0 / n + d(i, k) + d(i, l) + d(j, k) + d(j, l)),
    ]
    out: dict[tuple[int, int, int, int], float] = {}
    for key, coeff in terms:
        out[key] = out.get(key, 0.0) + coeff
    return {key: c for key, c in out.items() if abs(c) > 1e-15}


def lichtenstein_prime_dense(n: int) -> np.ndarray:
    """Dense ``L'`` on the full two-particle space, from the uncompressed representation."""
    ra = represent(SystemSpec.boson(n), compress=False)
    c2 = casimir(ra)
    eye = np.eye(ra.dim)
    return n * (lichtenstein(ra) - np.kron(c2, eye) - np.kron(eye, c2))


@dataclass(frozen=True)
class Witness:
    """A positive two-copy operator vanishing exactly on nonentangled ``ψ ⊗ ψ``.

    ``kraus`` holds the symmetric Kraus operators (the only ones that reach
    ``<ψ|T|ψ*>``); ``kraus_all`` holds every Kraus operator of ``a_matrix``.
    ``eigenspaces`` lists the distinct eigenvalues of L with multiplicities,
    largest first.
    """

    spec: SystemSpec
    kind: str
    a_matrix: np.ndarray = field(repr=False)
    l_max: float
    eigenspaces: tuple[tuple[float, int], ...]
    kraus: tuple[np.ndarray, ...] = field(repr=False)
    kraus_all: tuple[np.ndarray, ...] = field(repr=False)

    @property
    def dim(self) -> int:
        return self.spec.composite_dim


def kraus_operator(w, d: int) -> np.ndarray:
    """``T = Σ_ij w_ij |e_i><e_j|`` for a two-copy vector ``w = Σ_ij w_ij |e_i>⊗|e_j>``."""
    w = np.asarray(w)
    if w.shape != (d * d,):
        raise DimensionMismatch(f"expected a vector of length {d * d}")
    return w.reshape(d, d)


def _is_symmetric(t: np.ndarray) -> bool:
    scale = float(np.max(np.abs(t))) if t.size else 0.0
    return float(np.max(np.abs(t - t.T))) <= KRAUS_SYMMETRY_TOL * (1.0 + scale)


def _sector_isometries(d: int) -> tuple[np.ndarray, np.ndarray]:
    vs = sym_subspace_isometry(d)
    va = antisym_subspace_isometry(d) if d >= 2 else np.zeros((d * d, 0))
    return vs, va


def build_witness(ra: RepresentedAlgebra, kind: str = PROJECTOR) -> Witness:
    """Build the witness of the given kind (``"projector"`` or ``"gap"``).

    L commutes with the exchange of the two copies, so it is diagonalized
    separately on the symmetric and antisymmetric sectors.  Eigenvectors
    from the symmetric sector give symmetric Kraus operators, the others
    antisymmetric ones; degenerate eigenspaces never mix the two.
    """
    if kind not in (PROJECTOR, SPECTRAL_GAP):
        raise ValueError(f"unknown witness kind {kind!r}")
    d = ra.dim
    lop = lichtenstein(ra)
    vs, va = _sector_isometries(d)
    sym_vals, sym_vecs = np.linalg.eigh(vs.T @ lop @ vs)
    if va.shape[1]:
        anti_vals, anti_vecs = np.linalg.eigh(va.T @ lop @ va)
    else:
        anti_vals, anti_vecs = np.zeros(0), np.zeros((0, 0))
    all_vals = np.concatenate([sym_vals, anti_vals])
    tol = degeneracy_tol(all_vals)
    groups = group_eigenvalues(all_vals, tol)
    top_vals = all_vals[groups[0][1]]
    if np.ptp(top_vals) > tol or (len(groups) > 1 and groups[0][0] - groups[1][0] < 10 * tol):
        raise DegenerateTop(f"{ra.spec.label()}: top eigenvalue of L is not separated")
    l_max = groups[0][0]
    eigenspaces = tuple((val, len(idx)) for val, idx in groups)

    def top(vals):
        return np.abs(vals - l_max) <= tol

    sym_w = vs @ sym_vecs
    anti_w = va @ anti_vecs if va.shape[1] else np.zeros((d * d, 0))
    kraus_sym: list[np.ndarray] = []
    kraus_anti: list[np.ndarray] = []
    if kind == PROJECTOR:
        keep = ~top(sym_vals)
        cols = sym_w[:, keep]
        a = cols @ cols.conj().T
        kraus_sym = [kraus_operator(cols[:, m], d) for m in range(cols.shape[1])]
    else:
        a = l_max * np.eye(d * d) - lop
        cutoff = 1e-10 * (1.0 + abs(l_max))
        for vals, w, bucket in ((sym_vals, sym_w, kraus_sym), (anti_vals, anti_w, kraus_anti)):
            for m, lam in enumerate(vals):
                nu = l_max - lam
                if nu > cutoff and not top(np.array([lam]))[0]:
                    bucket.append(np.sqrt(nu) * kraus_operator(w[:, m], d))
    a = 0.5 * (a + a.conj().T)
    kraus = tuple(t for t in kraus_sym if _is_symmetric(t))
    return Witness(
        spec=ra.spec,
        kind=kind,
        a_matrix=a,
        l_max=float(l_max),
        eigenspaces=eigenspaces,
        kraus=kraus,
        kraus_all=tuple(kraus_sym + kraus_anti),
    )


def witness_for(spec: SystemSpec, kind: str = PROJECTOR) -> Witness:
    return build_witness(represent(spec), kind)


def jamiolkowski_apply(a, rho) -> np.ndarray:
    """The map ``ρ -> tr_1((ρ^T ⊗ I) a)`` associated with a two-copy operator."""
    a = np.asarray(a)
    rho = np.asarray(rho)
    d = rho.shape[0]
    if rho.shape != (d, d) or a.shape != (d * d, d * d):
        raise DimensionMismatch(f"operator of shape {a.shape} does not act on two copies of {rho.shape}")
    return partial_trace_first(np.kron(rho.T, np.eye(d)) @ a, d, d)


def kraus_apply(kraus, rho) -> np.ndarray:
    rho = np.asarray(rho)
    out = np.zeros_like(rho, dtype=complex)
    for t in kraus:
        out += t @ rho @ t.conj().T
    return out


def kraus_matrix_element(kraus, psi1, psi2, psi3, psi4) -> complex:
    """``Σ_μ <ψ2|T_μ|ψ4*> <ψ1*|T_μ^†|ψ3>``."""
    total = 0j
    for t in kraus:
        total += (psi2.conj() @ t @ psi4.conj()) * (psi1 @ t.conj().T @ psi3)
    return complex(total)


# ----------------------------------------------------------------------------
# closed forms for two-particle systems


def closed_form_spectrum(spec: SystemSpec) -> list[tuple[str, float, int]]:
    """Eigenvalues of L with the dimensions of their eigenspaces.

    Available for two equal-dimension distinguishable parties and for two
    bosons or fermions.  Eigenspaces of dimension zero are included; they
    simply do not show up in a numerical spectrum.
    """
    if spec.kind == DISTINGUISHABLE:
        if len(spec.dims) != 2 or spec.dims[0] != spec.dims[1]:
            raise UnsupportedSpec("closed forms need two parties of equal dimension")
        n = spec.dims[0]
        sym, anti = n * (n + 1) // 2, n * (n - 1) // 2
        return [
            ("S2", 2 + 2 / n - 4 / n**2, sym * sym),
            ("A", 2 - 4 / n**2, 2 * sym * anti),
            ("S1", 2 - 2 / n - 4 / n**2, anti * anti),
        ]
    n = spec.n
    mixed = n * n * (n * n - 1) // 12
    if spec.kind == BOSON:
        m = n * (n + 1) // 2
        return [
            ("+", 2 - 8 / n**2 + 6 / n, comb(n + 3, 4)),
            ("0", 2 - 8 / n**2 + 2 / n, m * (m - 1) // 2),
            ("-", 2 - 8 / n**2, mixed),
        ]
    m = n * (n - 1) // 2
    return [
        ("+", 2 - 8 / n**2, mixed),
        ("0", 2 - 8 / n**2 - 2 / n, m * (m - 1) // 2),
        ("-", 2 - 8 / n**2 - 6 / n, comb(n, 4)),
    ]


def closed_form_casimir(spec: SystemSpec) -> float:
    """Scalar value of the Casimir operator on the composite space."""
    if spec.kind == DISTINGUISHABLE:
        return float(sum(0.5 * (1 - 1 / d**2) for d in spec.dims))
    n = spec.n
    sign = 1 if spec.kind == BOSON else -1
    return 1 - 2 / n**2 + sign / n


def _pair_vectors(spec: SystemSpec) -> np.ndarray:
    """Compressed ``ψ_ab = |ab> + |ba>`` (bosons) or ``φ_ab = |ab> - |ba>`` (fermions)."""
    n = spec.n
    sign = 1.0 if spec.kind == BOSON else -1.0
    v = spec.embedding()
    out = np.zeros((n, n, v.shape[1]))
    for a in range(n):
        for b in range(n):
            amb = np.zeros(n * n)
            amb[a * n + b] += 1.0
            amb[b * n + a] += sign
            out[a, b] = v.T @ amb
    return out


def _sym_pair(p: np.ndarray, a, b, c, d) -> np.ndarray:
    return np.kron(p[a, b], p[c, d]) + np.kron(p[c, d], p[a, b])


def projector_appendix(spec: SystemSpec) -> np.ndarray:
    """Projector onto the relevant eigenspace, built from explicit spanning vectors.

    * two distinguishable parties: ``|ijkl> + |klij> - |kjil> - |ilkj>``,
      i.e. antisymmetric in the first parties' slots and in the second's;
    * bosons: ``ψ_ij⊗ψ_kl + ψ_kl⊗ψ_ij - ψ_il⊗ψ_jk - ψ_jk⊗ψ_il`` and the same
      with ``ik, jl`` in place of ``il, jk``, all index tuples;
    * fermions: the total antisymmetrization of ``|ijkl>`` written in pair
      vectors, ``φ_ij⊗φ_kl - φ_ik⊗φ_jl + φ_il⊗φ_jk`` symmetrized over copies.

    Vectors are orthonormalized with a rank-revealing SVD.
    """
    check_dim_cap(spec)
    if spec.kind == DISTINGUISHABLE:
        if len(spec.dims) != 2:
            raise UnsupportedSpec("appendix projector is defined for two parties")
        n1, n2 = spec.dims
        dims = [n1, n2, n1, n2]
        s1 = permutation_operator(dims, [2, 1, 0, 3])
        s2 = permutation_operator(dims, [0, 3, 2, 1])
        eye = np.eye(s1.shape[0])
        spanning = (eye - s1) @ (eye - s2)
    else:
        p = _pair_vectors(spec)
        n = spec.n
        vecs = []
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    for l in range(n):
                        if spec.kind == BOSON:
                            base = _sym_pair(p, i, j, k, l)
                            vecs.append(base - _sym_pair(p, i, l, j, k))
                            vecs.append(base - _sym_pair(p, i, k, j, l))
                        elif len({i, j, k, l}) == 4:
                            vecs.append(
                                _sym_pair(p, i, j, k, l) - _sym_pair(p, i, k, j, l) + _sym_pair(p, i, l, j, k)
                            )
        m = spec.composite_dim
        spanning = np.column_stack(vecs) if vecs else np.zeros((m * m, 0))
    basis = orthonormal_span(spanning)
    return basis @ basis.conj().T
