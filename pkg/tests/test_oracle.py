import numpy as np
import pytest

from deformedjc import model, oracle, single, states, two, validation
from deformedjc.model import SingleModeParams, TwoModeParams


def test_deformed_ops_definition():
    ops = oracle.build_deformed_ops(20, 0.0)
    np.testing.assert_array_equal(ops.K, oracle.annihilation(20))
    ops = oracle.build_deformed_ops(20, 0.3)
    np.testing.assert_allclose(np.diag(ops.K0).real, 0.3 * np.arange(21) + 0.5)
    n = np.arange(20)
    np.testing.assert_allclose(np.diag(ops.K_dag, -1).real, model.eta_single(n, 0.3), rtol=1e-15)
    with pytest.raises(ValueError):
        oracle.build_deformed_ops(1, 0.1)


def test_heisenberg_weyl_and_su11_limits():
    s = slice(0, 97)
    ops = oracle.build_deformed_ops(99, 0.0, dtype=np.clongdouble)
    comm = ops.K @ ops.K_dag - ops.K_dag @ ops.K
    np.testing.assert_allclose(comm[s, s].astype(complex), np.eye(97), atol=1e-14)
    assert oracle.check_algebra(oracle.build_deformed_ops(99, 1.0, dtype=np.clongdouble), 97) < 1e-12


def test_algebra_random_k():
    rng = np.random.default_rng(5)
    for k in rng.uniform(0, 1, 4):
        assert oracle.check_algebra(oracle.build_deformed_ops(99, k, dtype=np.clongdouble), 97) < 1e-12


def test_algebra_interior_bound():
    ops = oracle.build_deformed_ops(10, 0.1)
    with pytest.raises(ValueError):
        oracle.check_algebra(ops, 9)
    # the edge itself is broken by truncation
    full = ops.K @ ops.K_dag - ops.K_dag @ ops.K - 2 * ops.K0
    assert abs(full[10, 10]) > 1


def test_hamiltonian_structure():
    p = SingleModeParams(lam=1e-3, k=1e-3, delta=0.05)
    h = oracle.build_hamiltonian_single(p, 12)
    np.testing.assert_allclose(h, h.conj().T, atol=1e-14)
    d = 13
    coupling = h[:d, d:]
    rows, cols = np.nonzero(np.abs(coupling) > 0)
    assert np.all(cols == rows + 1)
    for n in range(5):
        block = h[np.ix_([n, d + n + 1], [n, d + n + 1])]
        gap = np.diff(np.linalg.eigvalsh(block))[0]
        assert gap == pytest.approx(model.rabi_single(n, p), rel=1e-9)


def test_two_mode_hamiltonian_elements():
    p = TwoModeParams(lam=2e-3, k=2e-3, delta=0.0161)
    h = oracle.build_hamiltonian_two(p, 15)
    np.testing.assert_allclose(h, h.conj().T, atol=1e-14)
    d = 16
    for n in range(6):
        assert abs(h[d + n + 1, n]) == pytest.approx(2e-3 * (1 + n) * (1 + 2e-3 * n), rel=1e-12)
        block = h[np.ix_([n, d + n + 1], [n, d + n + 1])]
        assert np.diff(np.linalg.eigvalsh(block))[0] == pytest.approx(model.rabi_two(n, p), rel=1e-9)


def test_paired_subspace_invariant():
    assert oracle.paired_leakage(TwoModeParams(lam=2e-3, k=0.3, delta=0.02), 6) == (0.0, 0.0)


def test_integrate_identity_and_unitarity():
    p = SingleModeParams(lam=1e-3, k=1e-3)
    h = oracle.build_hamiltonian_single(p, 20)
    psi0 = oracle.joint_vector(np.r_[states.coherent(1.5, 19).amplitudes, 0], np.zeros(21))
    out = oracle.integrate(h, psi0, [0.0, 100.0 / 1e-3])
    np.testing.assert_allclose(out[0], psi0, atol=1e-12)
    assert np.linalg.norm(out[1]) == pytest.approx(1.0, abs=1e-10)
    with pytest.raises(ValueError):
        oracle.integrate(h, 2 * psi0, 1.0)


def test_compare_reports_injected_error():
    a = np.zeros(8, dtype=complex)
    b = a.copy()
    b[3] = 1e-6j
    dev = oracle.compare(a, b)
    assert dev.max_abs == pytest.approx(1e-6) and dev.max_modulus == pytest.approx(1e-6)
    assert oracle.compare(a, a) == oracle.Deviation(0.0, 0.0)
    with pytest.raises(ValueError):
        oracle.compare(a, np.zeros(9))


def test_phase_insensitive_metric_ignores_constant_shift():
    p = SingleModeParams(lam=1e-3, k=1e-3, delta=0.02)
    h = oracle.build_hamiltonian_single(p, 20)
    psi0 = oracle.joint_vector(np.r_[states.coherent(1.5, 19).amplitudes, 0], np.zeros(21))
    a = oracle.integrate(h, psi0, 5e3)
    b = oracle.integrate(h + 0.37 * np.eye(h.shape[0]), psi0, 5e3)
    assert oracle.compare(a, b).max_modulus < 1e-11
    assert oracle.compare(a, b).max_abs > 1e-3


def test_closed_form_coherent_example():
    f = states.coherent(np.sqrt(5.0), 59)
    dev, _ = validation.oracle_deviation("single", SingleModeParams(lam=1e-3, k=1e-3), f, (10.0,))
    assert dev.max_abs < 1e-8


def test_eta_sign_flip_is_detected(monkeypatch):
    """A mutated coupling (sign flipped on odd n) must fail the full-phase comparison."""
    f = states.coherent(np.sqrt(5.0), 59)
    p = SingleModeParams(lam=1e-3, k=1e-3, delta=0.01)
    good, _ = validation.oracle_deviation("single", p, f)
    assert good.max_abs < 1e-8
    real_eta = model.eta_single
    monkeypatch.setattr(model, "eta_single",
                        lambda n, k: real_eta(n, k) * np.where(np.asarray(n) % 2 == 1, -1.0, 1.0))
    bad, _ = validation.oracle_deviation("single", p, f)
    assert bad.max_abs > 1e-3


def test_two_mode_eta_mutation_detected(monkeypatch):
    f = states.pair_coherent(1.778, 59)
    p = TwoModeParams(lam=2e-3, k=2e-3)
    real = model.eta_two
    # a coupling that lacks the (1 + n) growth
    monkeypatch.setattr(model, "eta_two", lambda n, k: 1 + k * np.asarray(n, float) - k + 0 * real(n, k))
    bad, _ = validation.oracle_deviation("two", p, f)
    assert bad.max_modulus > 1e-2
