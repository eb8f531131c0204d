import numpy as np
import pytest

from umeb.constructions import SX, SZ, icosahedron_umeb, tiles_umeb
from umeb.duality import (
    NormalizationError,
    embed_operator,
    extract_operator,
    is_maximally_entangled,
    max_entangled_reference,
    random_unitary,
    schmidt,
    swap_factors,
)


def ket(d, *pairs):
    psi = np.zeros(d * d, dtype=complex)
    for amp, j, k in pairs:
        psi[j * d + k] = amp
    return psi


def test_reference_state():
    r = 1 / np.sqrt(2)
    assert np.allclose(max_entangled_reference(2), ket(2, (r, 0, 0), (r, 1, 1)))
    s = 1 / np.sqrt(3)
    assert np.allclose(max_entangled_reference(3), ket(3, (s, 0, 0), (s, 1, 1), (s, 2, 2)))
    with pytest.raises(ValueError):
        max_entangled_reference(1)


@pytest.mark.parametrize("d", [2, 3, 5])
def test_reference_schmidt_flat(d):
    assert np.allclose(schmidt(max_entangled_reference(d)).coefficients, 1 / np.sqrt(d))


def test_embed_examples():
    r = 1 / np.sqrt(2)
    assert np.allclose(embed_operator(np.eye(3)), max_entangled_reference(3))
    assert np.allclose(embed_operator(SX), ket(2, (r, 0, 1), (r, 1, 0)))
    assert np.allclose(embed_operator(SZ), ket(2, (r, 0, 0), (-r, 1, 1)))


def test_embed_puts_operator_on_second_factor(rng):
    u = random_unitary(3, rng)
    direct = np.kron(np.eye(3), u) @ max_entangled_reference(3)
    assert np.allclose(embed_operator(u), direct, atol=1e-12)


def test_embed_rejects_unnormalized():
    with pytest.raises(NormalizationError, match="Tr"):
        embed_operator(2 * np.eye(2))


def test_extract_examples():
    r = 1 / np.sqrt(2)
    assert np.allclose(extract_operator(ket(2, (r, 0, 0), (r, 1, 1))), np.eye(2))
    singlet = extract_operator(ket(2, (r, 0, 1), (-r, 1, 0)))
    assert np.allclose(singlet, -singlet.T)
    assert np.allclose(singlet, np.array([[0, -1], [1, 0]]))


def test_extract_icosahedron_member():
    u1 = icosahedron_umeb().members[0]
    assert np.max(np.abs(extract_operator(embed_operator(u1)) - u1)) < 1e-12


def test_round_trip_random_unitaries(rng):
    for d in (2, 3, 4):
        for _ in range(1000 // 3 + 1):
            u = random_unitary(d, rng)
            assert np.max(np.abs(extract_operator(embed_operator(u)) - u)) < 1e-12


def test_inner_product_bridge(rng):
    for _ in range(50):
        a, b = random_unitary(4, rng), random_unitary(4, rng)
        lhs = np.vdot(embed_operator(a), embed_operator(b))
        assert lhs == pytest.approx(np.vdot(a, b) / 4, abs=1e-12)


def test_schmidt_examples():
    s = schmidt(max_entangled_reference(3))
    assert s.entropy_bits == pytest.approx(np.log2(3), abs=1e-12)
    prod = schmidt(ket(3, (1, 0, 0)))
    assert np.allclose(prod.coefficients, [1, 0, 0])
    assert prod.entropy_bits == 0.0
    r = 1 / np.sqrt(2)
    singlet = schmidt(ket(3, (r, 0, 1), (-r, 1, 0)))
    assert np.allclose(singlet.coefficients, [r, r, 0])
    assert singlet.entropy_bits == pytest.approx(1.0)
    assert singlet.rank() == 2


def test_schmidt_invariant_under_local_permutations(rng):
    d = 4
    for _ in range(20):
        psi = rng.standard_normal(d * d) + 1j * rng.standard_normal(d * d)
        psi /= np.linalg.norm(psi)
        pa, pb = np.eye(d)[rng.permutation(d)], np.eye(d)[rng.permutation(d)]
        moved = np.kron(pa, pb) @ psi
        a, b = schmidt(psi), schmidt(moved)
        assert np.allclose(a.coefficients, b.coefficients, atol=1e-12)
        assert a.entropy_bits == pytest.approx(b.entropy_bits, abs=1e-12)


def test_schmidt_entropy_bounds(rng):
    for d in (2, 3, 4):
        psi = rng.standard_normal(d * d) + 1j * rng.standard_normal(d * d)
        s = schmidt(psi / np.linalg.norm(psi))
        assert np.sum(s.coefficients**2) == pytest.approx(1.0, abs=1e-10)
        assert 0 <= s.entropy_bits <= np.log2(d) + 1e-12


def test_is_maximally_entangled():
    check = is_maximally_entangled(max_entangled_reference(4))
    assert check and check.deviation < 1e-15
    assert not is_maximally_entangled(ket(2, (1, 0, 0)))
    for u in tiles_umeb().members:
        assert is_maximally_entangled(embed_operator(u), 1e-10)


def test_symmetric_operators_give_swap_symmetric_states():
    for u in icosahedron_umeb().members:
        psi = embed_operator(u)
        assert np.max(np.abs(swap_factors(psi) - psi)) < 1e-12
