"""Code families over the irrep tower, decoders, and source statistics."""

import math

import numpy as np
import pytest

from spinlab.codes import (AlphaFamily, DensityMatrix, MultiRepState,
                           alpha_code, alpha_state, code_state, coherent_code,
                           decoder_coefficients, decoder_state,
                           grid_unit_vectors, matched_decoder, minimal_sn,
                           source_density, sphere_grid, von_neumann_entropy)
from spinlab.su2 import Direction, HalfInt, Z_AXIS, rotate_to


def test_multirep_state_validation():
    with pytest.raises(ValueError):
        MultiRepState(HalfInt(0), 2, np.array([1.0]))  # needs 2 blocks
    with pytest.raises(ValueError):
        MultiRepState(HalfInt(0), 2, np.array([1.0, 1.0]))  # unnormalized
    with pytest.raises(ValueError):
        MultiRepState(HalfInt(1), 2, np.array([1.0, 0.0]))  # parity mismatch
    with pytest.raises(ValueError):
        MultiRepState(HalfInt(5), 2, np.array([1.0]))  # sn > N/2
    with pytest.raises(ValueError):
        MultiRepState(HalfInt(0), 0, np.array([1.0]))


def test_multirep_state_tower_layout():
    a = MultiRepState(HalfInt(0), 4, np.array([0.6, 0.8, 0.0]))
    assert [s.twice for s in a.spins] == [4, 2, 0]
    assert a.dim == 5 + 3 + 1


def test_minimal_sn_parity():
    assert minimal_sn(4) == HalfInt(0)
    assert minimal_sn(5) == HalfInt(1)
    with pytest.raises(ValueError):
        minimal_sn(0)


def test_coherent_code_is_single_block():
    code = coherent_code(5)
    assert code.spins == [HalfInt(4)]
    assert code.dim == 5
    assert code.sn == HalfInt(4)
    with pytest.raises(ValueError):
        coherent_code(1)


def test_alpha_code_structure():
    f = AlphaFamily(0.4, 1.1)
    code = alpha_code(f)
    assert [s.twice for s in code.spins] == [2, 0]
    assert code.coeffs[0] == pytest.approx(math.cos(0.4))
    assert code.coeffs[1] == pytest.approx(math.sin(0.4) * np.exp(1.1j))
    with pytest.raises(ValueError):
        AlphaFamily(-0.1)
    with pytest.raises(ValueError):
        AlphaFamily(math.pi)


def test_code_state_coherent_equals_rotation():
    n = Direction(1.1, 0.7)
    got = code_state(coherent_code(4), n)
    want = rotate_to(HalfInt(3), HalfInt(3), n).amps
    assert np.max(np.abs(got - want)) < 1e-14


def test_code_state_normalized_everywhere():
    code = MultiRepState(HalfInt(1), 5, np.array([0.5, 0.5, 1.0 / math.sqrt(2.0)]))
    for n in (Z_AXIS, Direction(0.3, 4.0), Direction(2.8, 1.0)):
        assert np.linalg.norm(code_state(code, n)) == pytest.approx(1.0, abs=1e-12)


def test_alpha_state_matches_code_state():
    f = AlphaFamily(1.0, 0.3)
    n = Direction(2.0, 0.9)
    assert np.array_equal(alpha_state(f, n), code_state(alpha_code(f), n))


def test_decoder_coefficients_two_spins():
    b = decoder_coefficients(HalfInt(0), 2)
    assert b == pytest.approx([math.sqrt(3.0) / 2.0, 0.5], abs=1e-15)


@pytest.mark.parametrize("nspins", range(1, 9))
def test_decoder_coefficients_formula(nspins):
    sn = minimal_sn(nspins)
    b = decoder_coefficients(sn, nspins)
    spins = [HalfInt(nspins - 2 * i) for i in range(b.size)]
    total = sum(s.twice + 1 for s in spins)
    for coeff, s in zip(b, spins):
        assert coeff == pytest.approx(math.sqrt((s.twice + 1) / total), abs=1e-15)
    assert np.sum(b * b) == pytest.approx(1.0, abs=1e-14)


def test_decoder_coefficients_validation():
    with pytest.raises(ValueError):
        decoder_coefficients(HalfInt(1), 2)
    with pytest.raises(ValueError):
        decoder_coefficients(HalfInt(0), 0)


def test_decoder_state_is_weighted_tower():
    m = Direction(0.8, 5.5)
    got = decoder_state(HalfInt(0), 2, m)
    b = decoder_coefficients(HalfInt(0), 2)
    want = np.concatenate([b[0] * rotate_to(HalfInt(2), HalfInt(0), m).amps,
                           b[1] * rotate_to(HalfInt(0), HalfInt(0), m).amps])
    assert np.max(np.abs(got - want)) < 1e-14
    assert np.linalg.norm(got) == pytest.approx(1.0, abs=1e-12)


def test_matched_decoder_carries_code_phases():
    coeffs = np.array([np.exp(0.7j), np.exp(-1.1j)]) / math.sqrt(2.0)
    code = MultiRepState(HalfInt(0), 2, coeffs)
    dec = matched_decoder(code)
    b = decoder_coefficients(HalfInt(0), 2)
    assert np.max(np.abs(dec.coeffs - b * np.array([np.exp(0.7j), np.exp(-1.1j)]))) < 1e-14


def test_matched_decoder_zero_amplitude_stays_real():
    code = MultiRepState(HalfInt(0), 4, np.array([0.0, 1.0, 0.0], dtype=complex))
    dec = matched_decoder(code)
    assert np.max(np.abs(dec.coeffs.imag)) == 0.0
    assert np.all(dec.coeffs.real > 0.0)


def test_sphere_grid_weights_and_exactness():
    w, th, ph = sphere_grid(6, 5)
    assert w.sum() == pytest.approx(1.0, abs=1e-14)
    assert w.size == th.size == ph.size == 30
    c = np.cos(th)
    # moments of cos(theta): 0 for odd k, 1/(k+1) for even k, exact to degree 11
    for k in range(12):
        want = 0.0 if k % 2 else 1.0 / (k + 1)
        assert float(np.sum(w * c ** k)) == pytest.approx(want, abs=1e-14)
    # azimuthal harmonics below phi_count average to zero
    for m in range(1, 5):
        assert abs(np.sum(w * np.exp(1j * m * ph))) < 1e-14
    with pytest.raises(ValueError):
        sphere_grid(0, 3)


def test_grid_unit_vectors():
    w, th, ph = sphere_grid(4, 3)
    vecs = grid_unit_vectors(th, ph)
    assert vecs.shape == (12, 3)
    assert np.max(np.abs(np.linalg.norm(vecs, axis=1) - 1.0)) < 1e-14
    d = Direction(th[5], ph[5])
    assert np.max(np.abs(vecs[5] - d.unit_vector)) < 1e-14


def block_average_oracle(code):
    """Independent source-density prediction: the direction average projects
    each irrep block to |A_S|^2 / (2S+1) times its identity."""
    out = np.zeros((code.dim, code.dim), dtype=complex)
    row = 0
    for coeff, s in zip(code.coeffs, code.spins):
        d = s.twice + 1
        out[row:row + d, row:row + d] = (abs(coeff) ** 2 / d) * np.eye(d)
        row += d
    return out


@pytest.mark.parametrize("code", [
    coherent_code(2),
    coherent_code(3),
    coherent_code(4),
    alpha_code(AlphaFamily(math.pi / 4.0)),
    alpha_code(AlphaFamily(0.9, 2.1)),
    MultiRepState(HalfInt(1), 3, np.array([0.6, 0.8j])),
])
def test_source_density_matches_block_average(code):
    rho = source_density(code)
    assert np.max(np.abs(rho.matrix - block_average_oracle(code))) < 1e-13


def test_source_density_finer_grid_agrees():
    code = alpha_code(AlphaFamily(0.7, 0.2))
    a = source_density(code).matrix
    b = source_density(code, theta_order=11, phi_count=9).matrix
    assert np.max(np.abs(a - b)) < 1e-13


def test_source_density_rejects_coarse_grid():
    with pytest.raises(ValueError):
        source_density(coherent_code(4), theta_order=2)


def test_density_matrix_validation():
    with pytest.raises(ValueError):
        DensityMatrix(np.array([[0.0, 1.0], [0.0, 1.0]]))  # not Hermitian
    with pytest.raises(ValueError):
        DensityMatrix(np.eye(2))  # trace 2
    with pytest.raises(ValueError):
        DensityMatrix(np.diag([2.0, -1.0]))  # negative eigenvalue


def test_von_neumann_entropy_reference_points():
    pure = np.zeros((3, 3))
    pure[0, 0] = 1.0
    assert von_neumann_entropy(DensityMatrix(pure)) == 0.0
    mixed = np.eye(5) / 5.0
    assert von_neumann_entropy(DensityMatrix(mixed)) == pytest.approx(math.log2(5.0), abs=1e-12)


def test_source_entropies_of_reference_codes():
    assert von_neumann_entropy(source_density(coherent_code(2))) == pytest.approx(1.0, abs=1e-8)
    assert von_neumann_entropy(source_density(coherent_code(3))) == pytest.approx(
        math.log2(3.0), abs=1e-8)
    assert von_neumann_entropy(source_density(coherent_code(4))) == pytest.approx(2.0, abs=1e-8)
    split = source_density(alpha_code(AlphaFamily(math.pi / 4.0)))
    assert np.allclose(np.diag(split.matrix).real, [1 / 6, 1 / 6, 1 / 6, 1 / 2], atol=1e-13)
    assert von_neumann_entropy(split) == pytest.approx(1.0 + 0.5 * math.log2(3.0), abs=1e-8)
