import math

import numpy as np
import pytest

from deformedjc import spectral, states, two
from deformedjc.model import TwoModeParams

LAM = 2e-3


@pytest.fixture(scope="module")
def pc_amps():
    f = states.pair_coherent(1.778, 40)
    return two.evolve_two(f, TwoModeParams(lam=LAM, k=2e-3, delta=0.01), 6.1 / LAM)


def test_rejects_unpaired_input():
    with pytest.raises(TypeError):
        two.evolve_two(states.coherent(1.0, 20), TwoModeParams(lam=LAM), 1.0)


def test_vacuum_pair():
    f = states.PairedFockVector(np.array([1.0]))
    lt = np.linspace(0, 4, 17)
    amps = two.evolve_two(f, TwoModeParams(lam=LAM), lt / LAM)
    np.testing.assert_allclose(np.abs(amps.c_e[:, 0]) ** 2, np.cos(lt) ** 2, atol=1e-14)


def test_initial_record():
    f = states.pair_coherent(1.778, 40)
    rec = two.record(two.evolve_two(f, TwoModeParams(lam=LAM), 0.0))
    assert rec.w_t == pytest.approx(1.0, abs=1e-15)
    assert rec.tangle_a_ff == pytest.approx(0.0, abs=1e-15)
    # the field is pure, so E is the Shannon entropy of the pair distribution;
    # the atom is unentangled, so cutting off one mode gives the same number
    p = np.abs(f.amplitudes) ** 2
    p = p[p > 0]
    assert rec.relative_entropy == pytest.approx(-np.sum(p * np.log2(p)), abs=1e-10)
    assert rec.tangle_af1_f2 == pytest.approx(rec.relative_entropy, abs=1e-10)
    vac = two.record(two.evolve_two(states.pair_coherent(0.0, 5), TwoModeParams(lam=LAM), 0.0))
    assert vac.tangle_af1_f2 == 0.0


def test_reduced_matrices(pc_amps):
    r = two.rho_a_f1(pc_amps)
    np.testing.assert_allclose(np.trace(r), 1.0, atol=1e-12)
    np.testing.assert_allclose(r, r.conj().T, atol=1e-15)
    dense = np.sort(np.linalg.eigvalsh(r))
    blocks = np.sort(two._block_eigenvalues(two._atom_mode_blocks(pc_amps)))
    np.testing.assert_allclose(dense, blocks, atol=1e-12)
    a = two.rho_f1f2(pc_amps)
    np.testing.assert_allclose(a, a.conj().T, atol=1e-15)
    assert np.trace(a).real == pytest.approx(1.0, abs=1e-12)
    assert np.linalg.matrix_rank(a, tol=1e-10) <= 2


def test_exchange_symmetry(pc_amps):
    assert two.tangle_af1_f2(pc_amps) == two.tangle_af2_f1(pc_amps)


def test_entropy_paths_agree(pc_amps):
    assert two.entropy_single_mode(pc_amps) == pytest.approx(two.tangle_af1_f2(pc_amps), abs=1e-10)
    # Schmidt: S(F1F2) equals S(A)
    s_a = spectral.von_neumann_entropy(np.linalg.eigvalsh(two.atomic_density_two(pc_amps)))
    assert two.field_entropy(pc_amps) == pytest.approx(s_a, abs=1e-10)


def test_jacobi_and_lapack_field_entropy_agree(pc_amps):
    assert two.field_entropy(pc_amps, "jacobi") == pytest.approx(two.field_entropy(pc_amps), abs=1e-11)
    with pytest.raises(ValueError):
        two.field_entropy(pc_amps, "qr")


def test_relative_entropy_nonnegative(pc_amps):
    assert two.relative_entropy(pc_amps) >= 0


def test_diagonal_field_has_zero_relative_entropy():
    amps = two.PairedJointAmplitudes(np.array([1.0 + 0j, 0.0]), np.array([0.0j, 0.0]), 0.0)
    assert two.relative_entropy(amps) == pytest.approx(0.0, abs=1e-15)


def test_periodic_return():
    f = states.two_mode_squeezed_vacuum(1.032, 120)
    amps = two.evolve_two(f, TwoModeParams(lam=LAM), 2 * math.pi / LAM)
    np.testing.assert_allclose(np.abs(amps.c_e[:-1]), np.abs(f.amplitudes), atol=1e-12)
    assert two.inversion_two(amps) == pytest.approx(1.0, abs=1e-12)


def test_mean_measures_fields():
    f = states.pair_coherent(1.778, 40)
    rec = two.mean_measures(f, TwoModeParams(lam=LAM), 2.0, 0.01)
    assert rec.time == 2.0
    assert 0.0 <= rec.tangle_a_ff <= 1.0
    assert rec.tangle_af1_f2 == rec.tangle_af2_f1
