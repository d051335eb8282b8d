import numpy as np
import pytest

from oracles import wootters, wootters_eigen, wootters_pure
from witnesslab.concurrence import (
    concurrence_direct,
    concurrence_pure,
    convex_roof_upper,
    optimize_y,
    parse_strategy,
    tau_matrices,
    uhlmann_bound,
)
from witnesslab.errors import BadDecompositionSize, BadWeights, SpecMismatch
from witnesslab.lie import SystemSpec
from witnesslab.states import (
    MixedState,
    PureState,
    bell_state,
    haar_state,
    product_state,
    random_local_unitary,
    random_mixed_state,
    random_product_state,
    werner_state,
)
from witnesslab.witness import SPECTRAL_GAP, witness_for

SPECS = [
    SystemSpec.distinguishable(2, 2),
    SystemSpec.distinguishable(3, 3),
    SystemSpec.distinguishable(2, 3, 2),
    SystemSpec.boson(3),
    SystemSpec.fermion(4),
]
IDS = [s.label() for s in SPECS]
QUBITS = SystemSpec.distinguishable(2, 2)


def test_pure_examples():
    assert concurrence_pure(bell_state(), witness_for(QUBITS)) == pytest.approx(0.5, abs=1e-12)
    assert concurrence_pure(bell_state(), witness_for(QUBITS, SPECTRAL_GAP)) == pytest.approx(np.sqrt(2) / 2, abs=1e-12)
    for spec in SPECS:
        psi = random_product_state(spec, np.random.default_rng(0))
        assert concurrence_pure(psi, witness_for(spec)) < 1e-12


def test_wootters_oracle_forms_agree():
    rng = np.random.default_rng(20)
    for rank in (1, 2, 3, 4):
        rho = random_mixed_state(QUBITS, rank, rng).rho
        assert abs(wootters(rho) - wootters_eigen(rho)) < 1e-7
    for p in (0.2, 0.5, 0.9):
        assert wootters(werner_state(p).rho) == pytest.approx(max(0.0, (3 * p - 1) / 2), abs=1e-12)


def test_two_qubit_pure_matches_wootters():
    w = witness_for(QUBITS)
    rng = np.random.default_rng(1)
    for _ in range(100):
        psi = haar_state(QUBITS, rng)
        c = psi.vector
        assert abs(concurrence_pure(psi, w) - abs(c[0] * c[3] - c[1] * c[2])) < 1e-12
        assert abs(concurrence_pure(psi, w) - wootters_pure(c) / 2) < 1e-12


@pytest.mark.parametrize("spec", SPECS, ids=IDS)
def test_pure_invariants(spec):
    rng = np.random.default_rng(2)
    for kind in ("projector", SPECTRAL_GAP):
        w = witness_for(spec, kind)
        for _ in range(200):
            psi = haar_state(spec, rng)
            c = concurrence_pure(psi, w)
            assert abs(c - concurrence_direct(psi, w)) < 1e-9
        for _ in range(20):
            psi = haar_state(spec, rng)
            u = random_local_unitary(spec, rng)
            assert abs(concurrence_pure(PureState(spec, u @ psi.vector), w) - concurrence_pure(psi, w)) < 1e-9
            alpha = complex(rng.normal(), rng.normal())
            scaled = PureState(spec, alpha * psi.vector)
            assert abs(concurrence_pure(scaled, w) - abs(alpha) ** 2 * concurrence_pure(psi, w)) < 1e-10


def test_spec_mismatch():
    with pytest.raises(SpecMismatch):
        concurrence_pure(bell_state(), witness_for(SystemSpec.distinguishable(3, 3)))
    with pytest.raises(SpecMismatch):
        tau_matrices(werner_state(0.5), witness_for(SystemSpec.boson(2)))


def test_tau_examples():
    w = witness_for(QUBITS)
    psi = haar_state(QUBITS, np.random.default_rng(3))
    ts = tau_matrices(MixedState.from_pure(psi), w)
    assert ts.r == 1
    assert sum(abs(t[0, 0]) ** 2 for t in ts.taus) == pytest.approx(concurrence_pure(psi, w) ** 2, abs=1e-12)

    ts = tau_matrices(werner_state(0.7), w)
    assert ts.r == 4 and len(ts.taus) == 1 and ts.taus[0].shape == (4, 4)
    np.testing.assert_allclose(ts.taus[0], ts.taus[0].T, atol=1e-9)

    ts = tau_matrices(MixedState(QUBITS, np.eye(4) / 4), w)
    np.testing.assert_allclose(np.abs(ts.xi), np.eye(4) / 2, atol=1e-15)
    xi = ts.xi
    np.testing.assert_allclose(ts.taus[0], xi.conj().T @ w.kraus[0] @ xi.conj(), atol=1e-15)
    np.testing.assert_allclose(np.abs(ts.taus[0]), np.abs(w.kraus[0]) / 4, atol=1e-15)


@pytest.mark.parametrize("p", [0.0, 0.2, 1 / 3, 0.5, 0.8, 1.0])
def test_werner_bound(p):
    rho = werner_state(p)
    ts = tau_matrices(rho, witness_for(QUBITS))
    rep = uhlmann_bound(ts, [1.0])
    assert rep.bound == pytest.approx(max(0.0, (3 * p - 1) / 2) / 2, abs=1e-9)
    assert rep.bound == pytest.approx(wootters(rho.rho) / 2, abs=1e-9)
    assert rep.bound == pytest.approx(max(0.0, rep.singulars[0] - rep.singulars[1:].sum()), abs=1e-15)


def test_uhlmann_bound_edge_cases():
    ts = tau_matrices(MixedState(QUBITS, np.eye(4) / 4), witness_for(QUBITS))
    assert uhlmann_bound(ts, [1.0]).bound == 0.0
    with pytest.raises(BadWeights):
        uhlmann_bound(ts, [0.5])
    with pytest.raises(BadWeights):
        uhlmann_bound(ts, [0.6, 0.8])


def test_parse_strategy():
    assert parse_strategy("single") == ("single", 0)
    assert parse_strategy("random:25") == ("random", 25)
    assert parse_strategy("ascent") == ("ascent", 0)
    for bad in ("random", "single:3", "best"):
        with pytest.raises(ValueError):
            parse_strategy(bad)


def test_optimize_single_tau_strategies_agree():
    ts = tau_matrices(werner_state(0.8), witness_for(QUBITS))
    bounds = [optimize_y(ts, s, seed=1).bound for s in ("single", "random:50", "ascent")]
    assert max(bounds) - min(bounds) < 1e-12
    assert bounds[0] == pytest.approx(uhlmann_bound(ts, [1.0]).bound, abs=1e-15)


@pytest.mark.parametrize("spec", [SystemSpec.fermion(4), SystemSpec.boson(3), SystemSpec.distinguishable(3, 3)], ids=lambda s: s.label())
def test_optimize_monotone_in_search_set(spec):
    w = witness_for(spec)
    rng = np.random.default_rng(4)
    for _ in range(3):
        ts = tau_matrices(random_mixed_state(spec, 2, rng), w)
        single = optimize_y(ts, "single").bound
        assert optimize_y(ts, "random:1000", seed=5).bound >= single
        assert optimize_y(ts, "ascent").bound >= single
        rep = optimize_y(ts, "random:20", seed=6)
        assert abs(np.sum(rep.y**2) - 1) < 1e-10


def test_optimize_deterministic():
    spec = SystemSpec.boson(3)
    ts = tau_matrices(random_mixed_state(spec, 2, np.random.default_rng(7)), witness_for(spec))
    a = optimize_y(ts, "random:100", seed=3)
    b = optimize_y(ts, "random:100", seed=3)
    np.testing.assert_array_equal(a.y, b.y)


def test_convex_roof_pure_state():
    w = witness_for(SystemSpec.boson(3))
    psi = haar_state(SystemSpec.boson(3), np.random.default_rng(8))
    got = convex_roof_upper(MixedState.from_pure(psi), w, trials=50, seed=0)
    assert got == pytest.approx(concurrence_pure(psi, w), abs=1e-10)


def test_convex_roof_separable_mixture():
    a = product_state(QUBITS, [[1, 0], [0, 1]]).vector
    b = product_state(QUBITS, [[1, 1j], [1, -1]]).vector
    rho = MixedState(QUBITS, 0.6 * np.outer(a, a.conj()) + 0.4 * np.outer(b, b.conj()))
    assert convex_roof_upper(rho, witness_for(QUBITS), trials=20000, seed=1) <= 1e-3


def test_convex_roof_werner():
    got = convex_roof_upper(werner_state(0.9), witness_for(QUBITS), trials=20000, seed=2)
    assert abs(got - 0.425) <= 5e-3
    assert got >= 0.425 - 1e-9


def test_convex_roof_random_two_qubit_states():
    w = witness_for(QUBITS)
    rng = np.random.default_rng(9)
    for rank in (2, 3):
        rho = random_mixed_state(QUBITS, rank, rng)
        upper = convex_roof_upper(rho, w, trials=4000, seed=3)
        lower = optimize_y(tau_matrices(rho, w), "ascent").bound
        assert lower <= upper + 1e-7
        assert abs(upper - wootters(rho.rho) / 2) <= 5e-3


def test_convex_roof_errors_and_seed():
    w = witness_for(QUBITS)
    rho = random_mixed_state(QUBITS, 3, np.random.default_rng(10))
    with pytest.raises(BadDecompositionSize):
        convex_roof_upper(rho, w, trials=10, k=2)
    a = convex_roof_upper(rho, w, trials=300, seed=4, refine=0)
    b = convex_roof_upper(rho, w, trials=300, seed=4, refine=0)
    assert a == b
