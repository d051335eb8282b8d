"""Generalized concurrence of pure states and bounds for mixed states.

The pure-state concurrence is ``c_A(ψ) = <ψ⊗ψ|A|ψ⊗ψ>^{1/2}``, evaluated
through the symmetric Kraus operators as ``(Σ_μ |<ψ|T_μ|ψ*>|^2)^{1/2}``.
For a mixed state the convex roof of ``c_A`` is bounded from below by the
Uhlmann bound built from the ``τ`` matrices and from above by sampling
decompositions ``|φ_k> = Σ_j V_kj |ξ_j>``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .errors import BadDecompositionSize, BadWeights, SpecMismatch
from .states import MixedState, PureState
from .witness import Witness

RANK_TOL = 1e-10


def _check_spec(state, w: Witness) -> None:
    if state.spec != w.spec:
        raise SpecMismatch(f"state is {state.spec.label()} but witness is {w.spec.label()}")


def concurrence_pure(psi: PureState, w: Witness) -> float:
    """``c_A(ψ)`` via the symmetric Kraus operators; scales as ``|α|^2`` under ``ψ -> αψ``."""
    _check_spec(psi, w)
    v = psi.vector
    total = sum(abs(v.conj() @ t @ v.conj()) ** 2 for t in w.kraus)
    return float(np.sqrt(total))


def concurrence_direct(psi: PureState, w: Witness) -> float:
    """``c_A(ψ)`` from the two-copy expectation value of the witness."""
    _check_spec(psi, w)
    vv = np.kron(psi.vector, psi.vector)
    return float(np.sqrt(max(0.0, np.real(vv.conj() @ w.a_matrix @ vv))))


@dataclass(frozen=True)
class TauSet:
    """Matrices ``(τ_μ)_ij = <ξ_i|T_μ|ξ_j*>`` for the subnormalized eigenvectors ``ξ`` of ρ."""

    taus: tuple[np.ndarray, ...] = field(repr=False)
    r: int
    xi: np.ndarray = field(repr=False)


def tau_matrices(rho: MixedState, w: Witness) -> TauSet:
    _check_spec(rho, w)
    vals, vecs = np.linalg.eigh(rho.rho)
    order = np.argsort(-vals, kind="stable")
    keep = [i for i in order if vals[i] > RANK_TOL]
    xi = vecs[:, keep] * np.sqrt(vals[keep])
    taus = tuple(xi.conj().T @ t @ xi.conj() for t in w.kraus)
    return TauSet(taus=taus, r=len(keep), xi=xi)


@dataclass(frozen=True)
class BoundReport:
    bound: float
    y: np.ndarray
    singulars: np.ndarray
    strategy: str


def _weights_ok(y: np.ndarray) -> bool:
    return abs(float(np.sum(np.abs(y) ** 2)) - 1.0) <= 1e-10


def uhlmann_bound(ts: TauSet, y, strategy: str = "fixed") -> BoundReport:
    """``max(0, λ_1 - Σ_{j>1} λ_j)`` for the singular values of ``Σ_μ y_μ τ_μ``."""
    y = np.asarray(y, dtype=float).reshape(-1)
    if y.shape[0] != len(ts.taus) or not _weights_ok(y):
        raise BadWeights(f"need {len(ts.taus)} weights with unit 2-norm")
    if not ts.taus:
        return BoundReport(0.0, y, np.zeros(0), strategy)
    combined = sum(c * t for c, t in zip(y, ts.taus))
    s = np.linalg.svd(combined, compute_uv=False)
    bound = max(0.0, float(s[0] - np.sum(s[1:]))) if s.size else 0.0
    return BoundReport(bound, y, s, strategy)


def _bound_value(ts: TauSet, y: np.ndarray) -> float:
    combined = np.tensordot(y, np.asarray(ts.taus), axes=1)
    s = np.linalg.svd(combined, compute_uv=False)
    return float(s[0] - np.sum(s[1:]))


def parse_strategy(text: str) -> tuple[str, int]:
    """``single``, ``random:<k>`` or ``ascent``."""
    m = re.fullmatch(r"(single|ascent|random)(?::(\d+))?", text.strip())
    if not m or (m.group(1) == "random") != (m.group(2) is not None):
        raise ValueError(f"unknown strategy {text!r}")
    return m.group(1), int(m.group(2) or 0)


def optimize_y(ts: TauSet, strategy: str = "single", seed: int = 0) -> BoundReport:
    """Search the weight sphere for the largest Uhlmann bound.

    ``single`` tries every unit vector ``e_μ``; ``random:<k>`` adds ``k``
    uniformly random unit vectors; ``ascent`` refines the best unit vector
    by coordinate moves with a shrinking step until the gain drops below
    ``1e-10``.
    """
    name, k = parse_strategy(strategy)
    m = len(ts.taus)
    if m == 0:
        return BoundReport(0.0, np.zeros(0), np.zeros(0), strategy)
    candidates = list(np.eye(m))
    if name == "random":
        rng = np.random.default_rng(seed)
        g = rng.normal(size=(k, m))
        candidates += list(g / np.linalg.norm(g, axis=1, keepdims=True))
    values = [_bound_value(ts, y) for y in candidates]
    best = int(np.argmax(values))
    y, val = candidates[best], values[best]

    if name == "ascent" and m > 1:
        step = 0.5
        while step > 1e-8:
            gained = 0.0
            for mu in range(m):
                for sign in (1.0, -1.0):
                    trial = y.copy()
                    trial[mu] += sign * step
                    trial /= np.linalg.norm(trial)
                    tv = _bound_value(ts, trial)
                    if tv > val + 1e-14:
                        gained += tv - val
                        y, val = trial, tv
            if gained < 1e-10:
                step *= 0.5
    return uhlmann_bound(ts, y, strategy)


# ----------------------------------------------------------------------------
# decompositions


def decomposition_value(ts: TauSet, v: np.ndarray) -> float:
    """``Σ_k (Σ_μ |(V* τ_μ V^†)_kk|^2)^{1/2}`` for an isometry ``V`` (K x r)."""
    vc = v.conj()
    diag = np.einsum("ki,mij,kj->mk", vc, np.asarray(ts.taus), vc) if ts.taus else np.zeros((0, v.shape[0]))
    return float(np.sum(np.sqrt(np.sum(np.abs(diag) ** 2, axis=0))))


def _batch_values(taus: np.ndarray, vs: np.ndarray) -> np.ndarray:
    vc = vs.conj()
    diag = np.einsum("tki,mij,tkj->tmk", vc, taus, vc)
    return np.sum(np.sqrt(np.sum(np.abs(diag) ** 2, axis=1)), axis=1)


def random_isometries(k: int, r: int, count: int, rng: np.random.Generator) -> np.ndarray:
    g = rng.normal(size=(count, k, r)) + 1j * rng.normal(size=(count, k, r))
    q, rr = np.linalg.qr(g)
    phases = np.diagonal(rr, axis1=1, axis2=2)
    return q * (phases / np.abs(phases))[:, None, :]


def _polar(g: np.ndarray) -> np.ndarray:
    u, _, vh = np.linalg.svd(g, full_matrices=False)
    return u @ vh


def convex_roof_upper(
    rho: MixedState,
    w: Witness,
    trials: int = 2000,
    k: int | None = None,
    seed: int = 0,
    refine: int = 3,
) -> float:
    """Upper estimate of the convex roof of ``c_A`` at ``ρ``.

    Samples ``trials`` Haar-random ``K x r`` isometries (batches are indexed
    deterministically, so the result depends only on ``seed``), then polishes
    the ``refine`` best ones with L-BFGS over the polar parametrization
    ``V = G (G^† G)^{-1/2}``.  Every value returned is attained by an actual
    decomposition of ``ρ``.
    """
    ts = tau_matrices(rho, w)
    r = ts.r
    if k is None:
        k = r + 2
    if k < r:
        raise BadDecompositionSize(f"decomposition size {k} is below rank {r}")
    if not ts.taus:
        return 0.0
    rng = np.random.default_rng(seed)
    taus = np.asarray(ts.taus)
    best: list[tuple[float, np.ndarray]] = []
    chunk = 2048
    done = 0
    while done < trials:
        count = min(chunk, trials - done)
        vs = random_isometries(k, r, count, rng)
        vals = _batch_values(taus, vs)
        for idx in np.argsort(vals)[: max(refine, 1)]:
            best.append((float(vals[idx]), vs[idx]))
        best.sort(key=lambda item: item[0])
        best = best[: max(refine, 1)]
        done += count

    result = best[0][0]

    def objective(x):
        g = (x[: k * r] + 1j * x[k * r :]).reshape(k, r)
        return decomposition_value(ts, _polar(g))

    for _, v0 in best[:refine]:
        x0 = np.concatenate([v0.real.ravel(), v0.imag.ravel()])
        res = minimize(objective, x0, method="L-BFGS-B", options={"maxiter": 500})
        result = min(result, objective(res.x))
    return float(result)
