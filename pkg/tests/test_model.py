import math

import numpy as np
import pytest

from deformedjc import model
from deformedjc.model import SingleModeParams, TwoModeParams


def test_eta_single_values():
    assert model.eta_single(0, 0.7) == 1.0
    assert model.eta_single(3, 0.0) == 2.0
    assert model.eta_single(30, 1e-4) == pytest.approx(math.sqrt(31 * 1.003), rel=1e-15)


def test_eta_single_increasing():
    n = np.arange(200)
    for k in (0.0, 1e-4, 0.3, 1.0):
        assert np.all(np.diff(model.eta_single(n, k)) > 0)


def test_detuning_single():
    p = SingleModeParams(lam=1e-3, k=1e-4, delta=0.016061)
    assert model.detuning_single(30, p) == pytest.approx(0.010061, abs=1e-15)
    assert model.detuning_single(0, SingleModeParams(lam=1e-3)) == 0.0
    flat = SingleModeParams(lam=1e-3, delta=0.3)
    assert np.all(model.detuning_single(np.arange(10), flat) == 0.3)


def test_rabi_single():
    assert model.rabi_single(0, SingleModeParams(lam=1e-3)) == pytest.approx(2e-3)
    # 3-4-5: delta_n = 3, 2 lam eta_0 = 4
    assert model.rabi_single(0, SingleModeParams(lam=2.0, delta=3.0)) == pytest.approx(5.0)


def test_spectral_point_fields():
    p = SingleModeParams(lam=1e-3, k=1e-3, delta=0.05)
    sp = model.spectral_point_single(7, p)
    assert sp.omega_n == pytest.approx(math.hypot(sp.delta_n, 2e-3 * sp.eta))
    sp2 = model.spectral_point_two(2, TwoModeParams(lam=2e-3, k=2e-3))
    assert sp2.eta == pytest.approx(3.012)


@pytest.mark.parametrize("k, expected", [(1e-4, 0.016061), (1e-3, 0.061061)])
def test_critical_detuning_single_reference_values(k, expected):
    p = SingleModeParams(lam=1e-3, k=k)
    assert model.critical_detuning_single(30.0, p) == pytest.approx(expected, abs=1e-12)
    assert model.n_bar_single(expected, p) == pytest.approx(30.0, abs=1e-6)


@pytest.mark.parametrize("k", [1e-4, 1e-3, 1e-2])
def test_critical_roundtrip_documented_regime(k):
    p = SingleModeParams(lam=1e-3, k=k)
    for n_bar in (1.0, 30.0, 100.0):
        assert abs(model.n_bar_single(model.critical_detuning_single(n_bar, p), p) - n_bar) < 1e-12


def test_n_bar_zero_numerator():
    p = SingleModeParams(lam=1e-3, k=0.2)
    assert model.n_bar_single(1e-6 * 1.2 / 0.2, p) == pytest.approx(0.0, abs=1e-12)


def test_critical_detuning_rejects_k_zero():
    with pytest.raises(ValueError, match="k > 0"):
        model.critical_detuning_single(30.0, SingleModeParams(lam=1e-3))
    with pytest.raises(ValueError):
        model.n_bar_single(0.01, SingleModeParams(lam=1e-3))
    with pytest.raises(ValueError):
        model.critical_detuning_two(3.0, TwoModeParams(lam=2e-3))


def test_rabi_minimum_at_mean_single():
    p0 = SingleModeParams(lam=1e-3, k=1e-3)
    p = SingleModeParams(lam=1e-3, k=1e-3, delta=model.critical_detuning_single(30.0, p0))
    n = np.arange(121)
    assert abs(int(np.argmin(model.rabi_single(n, p))) - 30) <= 1


def test_eta_two_and_detuning_two():
    assert model.eta_two(0, 0.3) == 1.0
    assert model.eta_two(2, 0.0) == 3.0
    assert model.eta_two(2, 2e-3) == pytest.approx(3.012)
    p = TwoModeParams(lam=2e-3, delta=0.01)
    assert np.all(model.detuning_two(np.arange(5), p) == 0.01)
    n = np.arange(20)
    np.testing.assert_allclose(model.rabi_two(n, TwoModeParams(lam=2e-3)), 4e-3 * (1 + n))


def test_critical_detuning_two():
    p = TwoModeParams(lam=2e-3, k=2e-3)
    value = model.critical_detuning_two(3.0, p)
    assert value == pytest.approx(0.0161, abs=1e-4)
    shifted = TwoModeParams(lam=2e-3, k=2e-3, delta=value)
    n = np.arange(51)
    assert abs(int(np.argmin(model.rabi_two(n, shifted))) - 1.5) <= 1


def test_critical_detuning_two_small_k_divergence():
    g, N = 2e-3, 3.0
    for k in (1e-6, 1e-7):
        value = model.critical_detuning_two(N, TwoModeParams(lam=g, k=k))
        leading = g**2 * (1 + k) * (2 + N) / k
        assert value == pytest.approx(leading, rel=1e-3)


@pytest.mark.parametrize("kwargs", [dict(lam=0.0), dict(lam=1e-3, k=-0.1),
                                    dict(lam=1e-3, k=1.5), dict(lam=1e-3, omega=0.0)])
def test_single_params_validation(kwargs):
    with pytest.raises(ValueError):
        SingleModeParams(**kwargs)


def test_params_derived():
    p = SingleModeParams(lam=1e-3, k=0.1, delta=0.02, omega=2.0)
    assert p.nu == pytest.approx(2.02)
    assert p.chi == pytest.approx(0.2)
    q = TwoModeParams(lam=1e-3, delta=0.01)
    assert q.omega_total == 1.0 and q.nu == pytest.approx(1.01)


def test_negative_photon_number_rejected():
    with pytest.raises(ValueError):
        model.eta_single(-1, 0.0)
