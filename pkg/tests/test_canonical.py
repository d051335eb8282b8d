import numpy as np
import pytest

from witnesslab.canonical import canonical_coefficients, is_nonentangled, schmidt, slater, takagi_coeffs
from witnesslab.concurrence import concurrence_pure
from witnesslab.errors import NotAntisymmetric, NotSymmetric, UnsupportedSpec
from witnesslab.lie import SystemSpec
from witnesslab.states import (
    PureState,
    bell_state,
    haar_state,
    local_unitary,
    product_state,
    random_product_state,
    random_unitary,
)
from witnesslab.witness import witness_for

TWO_PARTICLE = [
    SystemSpec.distinguishable(2, 2),
    SystemSpec.distinguishable(3, 3),
    SystemSpec.distinguishable(2, 3),
    SystemSpec.boson(3),
    SystemSpec.fermion(4),
]
IDS = [s.label() for s in TWO_PARTICLE]


def test_schmidt_examples():
    spec = SystemSpec.distinguishable(2, 2)
    np.testing.assert_allclose(schmidt(PureState(spec, [1, 0, 0, 0])).values, [1, 0])
    np.testing.assert_allclose(schmidt(bell_state()).values, [1 / np.sqrt(2)] * 2)
    rng = np.random.default_rng(0)
    c = rng.normal(size=(3, 4)) + 1j * rng.normal(size=(3, 4))
    c /= np.linalg.norm(c)
    got = schmidt(PureState(SystemSpec.distinguishable(3, 4), c.reshape(-1))).values
    np.testing.assert_allclose(got, np.linalg.svd(c, compute_uv=False), atol=1e-14)


def test_schmidt_rejects_three_parties():
    spec = SystemSpec.distinguishable(2, 2, 2)
    with pytest.raises(UnsupportedSpec):
        schmidt(haar_state(spec, np.random.default_rng(1)))
    with pytest.raises(UnsupportedSpec):
        is_nonentangled(haar_state(spec, np.random.default_rng(1)))


def test_slater_examples():
    spec = SystemSpec.fermion(4)
    w = np.zeros((4, 4))
    w[0, 1], w[1, 0] = 0.5, -0.5
    assert slater(PureState.from_coefficients(spec, w)).values.tolist() == pytest.approx([0.5])
    w2 = w.copy()
    w2[2, 3], w2[3, 2] = 0.5, -0.5
    z = slater(PureState.from_coefficients(spec, w2 / np.sqrt(2))).values
    np.testing.assert_allclose(z, [0.5 / np.sqrt(2)] * 2, atol=1e-14)
    eig = np.linalg.eigvalsh(w2 @ w2.conj().T / 2)
    np.testing.assert_allclose(np.sort(np.repeat(z**2, 2)), np.sort(eig)[-4:], atol=1e-14)
    rng = np.random.default_rng(2)
    u = random_unitary(4, rng)
    rotated = PureState.from_coefficients(spec, u @ w @ u.T)
    assert slater(rotated).count_above(1e-8) == 1
    with pytest.raises(NotAntisymmetric):
        PureState.from_coefficients(spec, np.eye(4))


def test_takagi_examples():
    spec = SystemSpec.boson(3)
    v = np.zeros((3, 3))
    v[0, 0] = 1 / np.sqrt(2)
    assert takagi_coeffs(PureState.from_coefficients(spec, v)).count_above(1e-8) == 1
    v[1, 1] = 1 / np.sqrt(2)
    coeffs = takagi_coeffs(PureState.from_coefficients(spec, v / np.sqrt(2))).values
    np.testing.assert_allclose(coeffs, [0.5, 0.5, 0], atol=1e-14)
    rng = np.random.default_rng(3)
    g = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    v = (g + g.T) / np.linalg.norm(g + g.T) / np.sqrt(2)
    coeffs = takagi_coeffs(PureState.from_coefficients(spec, v)).values
    np.testing.assert_allclose(coeffs, np.linalg.svd(v, compute_uv=False), atol=1e-12)
    with pytest.raises(NotSymmetric):
        PureState.from_coefficients(spec, np.triu(np.ones((3, 3))))


def test_wrong_kind_rejected():
    with pytest.raises(UnsupportedSpec):
        slater(bell_state())
    with pytest.raises(UnsupportedSpec):
        takagi_coeffs(bell_state())


def test_is_nonentangled_examples():
    spec = SystemSpec.distinguishable(2, 2)
    assert is_nonentangled(product_state(spec, [[1, 0], [0, 1]]))
    assert not is_nonentangled(bell_state())


@pytest.mark.parametrize("spec", TWO_PARTICLE, ids=IDS)
def test_normalization_of_coefficients(spec):
    psi = haar_state(spec, np.random.default_rng(4))
    vals = canonical_coefficients(psi).values
    assert np.all(np.diff(vals) <= 1e-15)
    if spec.kind == "fermion":
        assert abs(2 * np.sum(vals**2) - 0.5) < 1e-12
    elif spec.kind == "boson":
        assert abs(np.sum(vals**2) - 0.5) < 1e-12
    else:
        assert abs(np.sum(vals**2) - 1) < 1e-12


@pytest.mark.parametrize("spec", TWO_PARTICLE, ids=IDS)
def test_local_unitary_invariance(spec):
    rng = np.random.default_rng(5)
    psi = haar_state(spec, rng)
    base = canonical_coefficients(psi).values
    for _ in range(20):
        if spec.kind == "distinguishable":
            u = local_unitary(spec, [random_unitary(d, rng) for d in spec.dims])
        else:
            u = local_unitary(spec, [random_unitary(spec.n, rng)])
        moved = canonical_coefficients(PureState(spec, u @ psi.vector)).values
        np.testing.assert_allclose(moved, base, atol=1e-9)


@pytest.mark.parametrize("spec", TWO_PARTICLE, ids=IDS)
def test_products_are_nonentangled(spec):
    rng = np.random.default_rng(6)
    assert all(is_nonentangled(random_product_state(spec, rng)) for _ in range(100))


@pytest.mark.parametrize("spec", TWO_PARTICLE, ids=IDS)
def test_agreement_with_concurrence(spec):
    rng = np.random.default_rng(7)
    w = witness_for(spec)
    for k in range(500):
        psi = random_product_state(spec, rng) if k % 2 else haar_state(spec, rng)
        assert is_nonentangled(psi) == (concurrence_pure(psi, w) <= 1e-8)
