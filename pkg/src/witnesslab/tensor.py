"""Dense complex linear algebra used throughout the package.

Everything here works on plain ``numpy`` arrays.  Matrices are complex
``(rows, cols)`` arrays, vectors are 1-D arrays.  The factorizations
(Takagi, antisymmetric block form) are written out by hand; the plain
Hermitian eigensolver and SVD come from LAPACK through numpy.
"""

from __future__ import annotations

from itertools import product

import numpy as np

from .errors import (
    DimensionMismatch,
    NonHermitian,
    NotAntisymmetric,
    NotSymmetric,
)

HERMITIAN_TOL = 1e-12
SYMMETRY_TOL = 1e-10


def degeneracy_tol(values) -> float:
    """Grouping tolerance for eigenvalues of the given spectrum."""
    values = np.asarray(values)
    scale = float(np.max(np.abs(values))) if values.size else 0.0
    return 1e-8 * (1.0 + scale)


def zero_tol(coeffs) -> float:
    """Threshold below which a canonical coefficient counts as zero."""
    coeffs = np.asarray(coeffs)
    largest = float(np.max(coeffs)) if coeffs.size else 0.0
    return 1e-10 * (largest + 1.0)


def _max_abs(m: np.ndarray) -> float:
    return float(np.max(np.abs(m))) if m.size else 0.0


def kron(a, b) -> np.ndarray:
    """Kronecker product ``a ⊗ b``."""
    return np.kron(np.asarray(a), np.asarray(b))


def kron_all(*factors) -> np.ndarray:
    out = np.ones((1, 1), dtype=complex)
    for f in factors:
        out = np.kron(out, f)
    return out


def is_hermitian(m: np.ndarray, tol: float = HERMITIAN_TOL) -> bool:
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        return False
    return _max_abs(m - m.conj().T) <= tol * max(_max_abs(m), 1.0)


def eigh(m) -> tuple[np.ndarray, np.ndarray]:
    """Hermitian eigendecomposition with ascending eigenvalues.

    Raises
    ------
    NonHermitian
        If ``m`` differs from its adjoint by more than ``1e-12 * max|m|``.
    """
    m = np.asarray(m)
    if not is_hermitian(m):
        raise NonHermitian("matrix is not Hermitian")
    vals, vecs = np.linalg.eigh(m)
    return vals, vecs


def group_eigenvalues(values, tol: float | None = None) -> list[tuple[float, list[int]]]:
    """Cluster eigenvalues that lie within ``tol`` of their neighbour.

    Returns ``(mean value, indices)`` pairs sorted by descending value.
    """
    values = np.asarray(values, dtype=float)
    if values.size == 0:
        return []
    if tol is None:
        tol = degeneracy_tol(values)
    order = np.argsort(-values, kind="stable")
    groups: list[list[int]] = [[int(order[0])]]
    for idx in order[1:]:
        if values[groups[-1][-1]] - values[idx] <= tol:
            groups[-1].append(int(idx))
        else:
            groups.append([int(idx)])
    return [(float(np.mean(values[g])), g) for g in groups]


def _check_symmetric(v: np.ndarray, sign: int) -> None:
    scale = max(_max_abs(v), 1.0)
    if _max_abs(v - sign * v.T) > SYMMETRY_TOL * scale:
        if sign > 0:
            raise NotSymmetric("matrix is not complex symmetric")
        raise NotAntisymmetric("matrix is not complex antisymmetric")


def _orthonormalize_against(vec: np.ndarray, basis: list[np.ndarray]) -> np.ndarray:
    # two passes of classical Gram-Schmidt keep the loss of orthogonality at eps level
    for _ in range(2):
        for b in basis:
            vec = vec - (b.conj() @ vec) * b
    return vec


def takagi(v) -> tuple[np.ndarray, np.ndarray]:
    """Takagi factorization ``v = u @ diag(coeffs) @ u.T`` of a symmetric matrix.

    The antilinear map ``x -> v @ conj(x)`` squares to the Hermitian
    ``v @ conj(v)``.  Its eigenvectors ``f`` (eigenvalue ``s**2``) are turned
    into fixed points ``v @ conj(u) = s * u`` by the phase correction
    ``u = s*f + v@conj(f)`` (or ``i*(s*f - v@conj(f))`` when that cancels).
    Inside a degenerate cluster the fixed points have real mutual overlaps,
    so Gram-Schmidt keeps them fixed.

    Returns
    -------
    coeffs : ndarray
        Nonnegative Takagi values in descending order (the singular values).
    u : ndarray
        Unitary matrix whose columns are the Takagi vectors.
    """
    v = np.asarray(v, dtype=complex)
    if v.ndim != 2 or v.shape[0] != v.shape[1]:
        raise DimensionMismatch("takagi expects a square matrix")
    _check_symmetric(v, +1)
    n = v.shape[0]
    if n == 0:
        return np.zeros(0), np.zeros((0, 0), dtype=complex)

    # left singular vectors of v are eigenvectors of v @ conj(v); the SVD keeps
    # tiny coefficients at eps level instead of sqrt(eps)
    vecs, sing, _ = np.linalg.svd(v)
    vals = sing**2
    cutoff = zero_tol(sing)

    chosen: list[np.ndarray] = []
    coeffs: list[float] = []
    for _, idx in group_eigenvalues(vals):
        s = float(np.sqrt(np.mean(vals[idx])))
        if s <= cutoff:
            continue
        want = len(idx)
        candidates = []
        for i in idx:
            f = vecs[:, i]
            g = v @ f.conj()
            candidates.append(s * f + g)
            candidates.append(1j * (s * f - g))
        candidates.sort(key=lambda c: -np.linalg.norm(c))
        got = 0
        for c in candidates:
            if got == want:
                break
            r = _orthonormalize_against(c, chosen)
            nr = np.linalg.norm(r)
            if nr > 1e-3 * max(np.linalg.norm(c), 1e-300):
                chosen.append(r / nr)
                coeffs.append(s)
                got += 1

    # kernel: any orthonormal completion works because the coefficient is zero
    for i in np.argsort(vals):
        if len(chosen) == n:
            break
        r = _orthonormalize_against(vecs[:, i].astype(complex), chosen)
        nr = np.linalg.norm(r)
        if nr > 0.5:
            chosen.append(r / nr)
            coeffs.append(0.0)

    u = np.column_stack(chosen)
    coeffs_arr = np.array(coeffs)
    # realign residual phase drift so that u^† v conj(u) is real positive
    phase = np.einsum("ik,ij,jk->k", u.conj(), v, u.conj())
    nz = coeffs_arr > cutoff
    u[:, nz] = u[:, nz] * np.exp(0.5j * np.angle(phase[nz]))
    return coeffs_arr, u


def antisym_block_diagonalize(w) -> tuple[np.ndarray, np.ndarray]:
    """Bring a complex antisymmetric ``w`` to block-diagonal canonical form.

    Finds a unitary ``u`` with ``u @ w @ u.T = diag(Z_1, ..., Z_r, 0)``
    where ``Z_i = [[0, z_i], [-z_i, 0]]`` and ``z_1 >= ... >= z_r > 0``.

    For an eigenvector ``f`` of ``w @ w^†`` with eigenvalue ``z**2`` (a left
    singular vector of ``w``), the
    vector ``g = w @ conj(f) / z`` is a unit vector orthogonal to ``f`` in
    the same eigenspace; the pair ``(g, f)`` carries one block.
    """
    w = np.asarray(w, dtype=complex)
    if w.ndim != 2 or w.shape[0] != w.shape[1]:
        raise DimensionMismatch("expected a square matrix")
    _check_symmetric(w, -1)
    n = w.shape[0]
    vecs, sing, _ = np.linalg.svd(w)
    vals = sing**2
    cutoff = zero_tol(sing)

    columns: list[np.ndarray] = []
    coeffs: list[float] = []
    for i in np.argsort(-vals, kind="stable"):
        z = float(np.sqrt(vals[i]))
        if z <= cutoff or len(columns) + 2 > n:
            break
        f = _orthonormalize_against(vecs[:, i].astype(complex), columns)
        nf = np.linalg.norm(f)
        if nf < 0.5:
            continue
        f = f / nf
        g = _orthonormalize_against(w @ f.conj(), columns)
        ng = np.linalg.norm(g)
        if ng <= cutoff:
            continue
        g = g / ng
        z_pair = float(np.real(g.conj() @ w @ f.conj()))
        columns.extend([g, f])
        coeffs.append(z_pair)

    for i in np.argsort(vals, kind="stable"):
        if len(columns) == n:
            break
        r = _orthonormalize_against(vecs[:, i].astype(complex), columns)
        nr = np.linalg.norm(r)
        if nr > 0.5:
            columns.append(r / nr)

    basis = np.column_stack(columns) if columns else np.zeros((0, 0), dtype=complex)
    u = basis.conj().T
    return np.array(coeffs), u


def antisym_canonical_matrix(coeffs, n: int) -> np.ndarray:
    """The block matrix ``diag(Z_1, ..., Z_r, 0)`` of side ``n``."""
    out = np.zeros((n, n), dtype=complex)
    for k, z in enumerate(coeffs):
        out[2 * k, 2 * k + 1] = z
        out[2 * k + 1, 2 * k] = -z
    return out


def partial_trace_first(m, dim_first: int, dim_second: int) -> np.ndarray:
    """Trace out the first tensor factor of an operator on ``C^a ⊗ C^b``."""
    m = np.asarray(m)
    side = dim_first * dim_second
    if m.shape != (side, side):
        raise DimensionMismatch(f"expected a {side}x{side} matrix, got {m.shape}")
    return np.einsum("ikil->kl", m.reshape(dim_first, dim_second, dim_first, dim_second))


def partial_trace(m, dims, keep) -> np.ndarray:
    """Reduced operator on the factors listed in ``keep``."""
    dims = list(dims)
    m = np.asarray(m)
    side = int(np.prod(dims))
    if m.shape != (side, side):
        raise DimensionMismatch(f"expected a {side}x{side} matrix, got {m.shape}")
    n = len(dims)
    keep = sorted(keep)
    t = m.reshape(dims + dims)
    letters = "abcdefghijklmnopqrstuvwxyz"
    row = list(letters[:n])
    col = list(letters[n : 2 * n])
    for k in range(n):
        if k not in keep:
            col[k] = row[k]
    out_sub = "".join(row[k] for k in keep) + "".join(col[k] for k in keep)
    r = np.einsum("".join(row) + "".join(col) + "->" + out_sub, t)
    d = int(np.prod([dims[k] for k in keep]))
    return r.reshape(d, d)


def permutation_operator(dims, perm) -> np.ndarray:
    """Operator moving tensor slot ``k`` to slot ``perm[k]``.

    ``P |x_0 x_1 ...> = |y>`` with ``y[perm[k]] = x[k]``.
    """
    dims = list(dims)
    n = len(dims)
    if sorted(perm) != list(range(n)) or any(dims[perm[k]] != dims[k] for k in range(n)):
        raise DimensionMismatch("permutation must map slots onto slots of equal dimension")
    side = int(np.prod(dims))
    xs = np.indices(dims).reshape(n, -1)
    ys = np.empty_like(xs)
    for k in range(n):
        ys[perm[k]] = xs[k]
    p = np.zeros((side, side))
    p[np.ravel_multi_index(tuple(ys), tuple(dims)), np.arange(side)] = 1.0
    return p


def swap_operator(d: int) -> np.ndarray:
    """SWAP on ``C^d ⊗ C^d``."""
    return permutation_operator([d, d], [1, 0])


def copy_swap_operators(n: int) -> tuple[np.ndarray, np.ndarray]:
    """The slot exchanges ``S1|ijkl> = |kjil>`` and ``S2|ijkl> = |ilkj>`` on ``(C^n)^{⊗4}``."""
    if n < 2:
        raise DimensionMismatch("copy_swap_operators needs n >= 2")
    dims = [n] * 4
    s1 = permutation_operator(dims, [2, 1, 0, 3])
    s2 = permutation_operator(dims, [0, 3, 2, 1])
    return s1, s2


def basis_ket(dims, index) -> np.ndarray:
    """Computational basis vector ``|i_0 i_1 ...>``."""
    side = int(np.prod(dims))
    out = np.zeros(side, dtype=complex)
    out[np.ravel_multi_index(tuple(index), tuple(dims))] = 1.0
    return out


def sym_pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i, n)]


def antisym_pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


def sym_subspace_isometry(n: int) -> np.ndarray:
    """Columns ``|ii>`` and ``(|ij> + |ji>)/sqrt(2)``, ``i < j``, in lexicographic order."""
    if n < 1:
        raise DimensionMismatch("n must be positive")
    pairs = sym_pairs(n)
    v = np.zeros((n * n, len(pairs)))
    for c, (i, j) in enumerate(pairs):
        if i == j:
            v[i * n + i, c] = 1.0
        else:
            v[i * n + j, c] = v[j * n + i, c] = 1.0 / np.sqrt(2.0)
    return v


def antisym_subspace_isometry(n: int) -> np.ndarray:
    """Columns ``(|ij> - |ji>)/sqrt(2)``, ``i < j``, in lexicographic order."""
    if n < 2:
        raise DimensionMismatch("antisymmetric subspace needs n >= 2")
    pairs = antisym_pairs(n)
    v = np.zeros((n * n, len(pairs)))
    for c, (i, j) in enumerate(pairs):
        v[i * n + j, c] = 1.0 / np.sqrt(2.0)
        v[j * n + i, c] = -1.0 / np.sqrt(2.0)
    return v


def orthonormal_span(vectors, tol: float = 1e-9) -> np.ndarray:
    """Orthonormal basis (as columns) of the span of the given column vectors."""
    vectors = np.asarray(vectors)
    if vectors.size == 0:
        return np.zeros((vectors.shape[0], 0), dtype=complex)
    u, s, _ = np.linalg.svd(vectors, full_matrices=False)
    if s.size == 0:
        return u[:, :0]
    rank = int(np.sum(s > tol * max(s[0], 1.0)))
    return u[:, :rank]


def index_tuples(n: int, k: int):
    return product(range(n), repeat=k)
