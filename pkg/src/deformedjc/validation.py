"""Self-checks run by ``deformedjc validate``: oracle agreement, the operator
algebra, pointwise identities and the periodic resonant two-mode case."""

from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from . import model, oracle, single, spectral, states, two
from .model import SingleModeParams, TwoModeParams
from .scenarios import PRESETS, resolve

ORACLE_N_MAX = 60
ORACLE_TIMES = (1.0, 10.0, 50.0)
ORACLE_TOL = 1e-8
ALGEBRA_KS = (0.0, 1e-4, 1e-3, 0.5, 1.0)
ALGEBRA_DIM = 100
ALGEBRA_TOL = 1e-12
IDENTITY_TOL = 1e-12
NORM_TOL = 1e-10
CROSS_ENTROPY_TOL = 1e-10
PERIOD_TOL = 1e-8
IDENTITY_PRESETS = ("fig1a", "fig1f", "fig2i", "fig3a", "fig6e", "fig7d")


@dataclass(frozen=True)
class CheckResult:
    name: str
    value: float
    threshold: float
    passed: bool


def _check(name: str, value: float, threshold: float, strict: bool = False) -> CheckResult:
    value = float(value)
    ok = value < threshold if strict else value <= threshold
    return CheckResult(name, value, threshold, bool(ok and math.isfinite(value)))


# --- oracle ---------------------------------------------------------------

def oracle_cases():
    """(label, kind, params, field) with the field one level below the oracle cutoff,
    so the closed-form arrays (one slot longer) span exactly the oracle basis."""
    n = ORACLE_N_MAX - 1
    return (
        ("coherent", "single", SingleModeParams(lam=1e-3, k=1e-3, delta=0.01),
         states.coherent(math.sqrt(5.0), n)),
        ("squeezed_vacuum", "single", SingleModeParams(lam=1e-3, k=1e-4, delta=0.016061),
         states.squeezed_vacuum(0.6, n_max=n)),
        ("pair_coherent", "two", TwoModeParams(lam=2e-3, k=2e-3, delta=0.0161),
         states.pair_coherent(1.778, n)),
        ("two_mode_squeezed_vacuum", "two", TwoModeParams(lam=2e-3, k=2e-3, delta=0.01),
         states.two_mode_squeezed_vacuum(1.032, n)),
    )


def oracle_deviation(kind: str, params, field, scaled_times=ORACLE_TIMES):
    """Max (full-phase, phase-insensitive) deviation and max oracle norm error."""
    t = np.asarray(scaled_times, dtype=float) / params.lam
    if kind == "single":
        h = oracle.build_hamiltonian_single(params, ORACLE_N_MAX)
        amps = single.to_schrodinger(single.evolve_single(field, params, t), params)
    else:
        h = oracle.build_hamiltonian_two(params, ORACLE_N_MAX)
        amps = two.to_schrodinger(two.evolve_two(field, params, t), params)
    psi0 = oracle.joint_vector(np.r_[field.amplitudes, 0.0], np.zeros(ORACLE_N_MAX + 1))
    reference = oracle.integrate(h, psi0, t)
    dev = oracle.compare(oracle.joint_vector(amps.c_e, amps.c_g), reference)
    norm_err = float(np.max(np.abs(np.sum(np.abs(reference) ** 2, axis=-1) - 1.0)))
    return dev, norm_err


def oracle_checks() -> list[CheckResult]:
    out = []
    for label, kind, params, field in oracle_cases():
        dev, norm_err = oracle_deviation(kind, params, field)
        out.append(_check(f"oracle.{label}.phase_insensitive", dev.max_modulus, ORACLE_TOL, strict=True))
        out.append(_check(f"oracle.{label}.full_phase", dev.max_abs, ORACLE_TOL, strict=True))
        out.append(_check(f"oracle.{label}.unitarity", norm_err, NORM_TOL))
    leak, mismatch = oracle.paired_leakage(TwoModeParams(lam=2e-3, k=2e-3, delta=0.01), 10)
    out.append(_check("oracle.paired_subspace.leakage", leak, 0.0))
    out.append(_check("oracle.paired_subspace.restriction", mismatch, 0.0))
    return out


def algebra_checks() -> list[CheckResult]:
    out = []
    for k in ALGEBRA_KS:
        ops = oracle.build_deformed_ops(ALGEBRA_DIM - 1, k, dtype=np.clongdouble)
        dev = oracle.check_algebra(ops, ALGEBRA_DIM - 3)
        out.append(_check(f"algebra.k={k:g}", dev, ALGEBRA_TOL, strict=True))
    return out


def critical_detuning_checks() -> list[CheckResult]:
    single_cases = ((1e-4, 0.016061), (1e-3, 0.061061))
    out = []
    for k, expected in single_cases:
        got = model.critical_detuning_single(30.0, SingleModeParams(lam=1e-3, k=k))
        out.append(_check(f"critical.single.k={k:g}", abs(got - expected), 5e-7, strict=True))
    got = model.critical_detuning_two(3.0, TwoModeParams(lam=2e-3, k=2e-3))
    out.append(_check("critical.two.k=0.002", abs(got - 0.0161), 1e-4))
    return out


# --- identities -----------------------------------------------------------

def single_identity_residuals(series: dict) -> dict[str, float]:
    w, c, lin = series["W_S"], series["coherence"], series["L"]
    return {
        "linear_entropy_identity": float(np.max(np.abs(lin - (1.0 - w**2 - 4.0 * c**2)))),
        "normalization": float(np.max(np.abs(series["norm"] - 1.0))),
    }


def two_identity_residuals(series: dict) -> dict[str, float]:
    w, c, t = series["W_T"], series["coherence"], series["T_A_FF"]
    return {
        "inversion_identity": float(np.max(np.abs(w**2 - (1.0 - t - 4.0 * c**2)))),
        "normalization": float(np.max(np.abs(series["norm"] - 1.0))),
        "exchange_symmetry": float(np.max(np.abs(series["T_AF1_F2"] - series["T_AF2_F1"]))),
        "mode_entropy_cross_check": float(np.max(np.abs(series["S_F2"] - series["T_AF1_F2"]))),
    }


_THRESHOLDS = {
    "linear_entropy_identity": IDENTITY_TOL,
    "inversion_identity": IDENTITY_TOL,
    "normalization": NORM_TOL,
    "exchange_symmetry": 0.0,
    "mode_entropy_cross_check": CROSS_ENTROPY_TOL,
}


def identity_checks(presets=IDENTITY_PRESETS) -> list[CheckResult]:
    out = []
    for name in presets:
        res = resolve(PRESETS[name])
        cfg = res.config
        if cfg.model == "single":
            s = single.series_single(res.field, res.params, cfg.tmax, cfg.dt)
            residuals = single_identity_residuals(s)
        else:
            s = two.series_two(res.field, res.params, cfg.tmax, cfg.dt)
            residuals = two_identity_residuals(s)
        for key, value in residuals.items():
            out.append(_check(f"identity.{name}.{key}", value, _THRESHOLDS[key]))
    return out


# --- periodicity ----------------------------------------------------------

def periodicity_residuals(field: states.PairedFockVector, lam: float = 2e-3) -> dict[str, float]:
    """At k = 0, Delta = 0 every paired block has Rabi frequency 2 lam (n + 1),
    so the state returns to itself (up to block phases) at lam t = pi."""
    params = TwoModeParams(lam=lam)
    start = two.record(two.evolve_two(field, params, 0.0))
    end = two.record(two.evolve_two(field, params, math.pi / lam))
    out = {"W_T": abs(end.w_t - 1.0)}
    for key in ("tangle_a_ff", "tangle_af1_f2", "tangle_af2_f1", "relative_entropy", "coherence"):
        out[key] = abs(getattr(end, key) - getattr(start, key))
    return out


def periodicity_checks() -> list[CheckResult]:
    out = []
    for name, field in (("pair_coherent", states.pair_coherent(1.778, 40)),
                        ("two_mode_squeezed_vacuum", states.two_mode_squeezed_vacuum(1.032, 120))):
        for key, value in periodicity_residuals(field).items():
            out.append(_check(f"periodicity.{name}.{key}", value, PERIOD_TOL))
    return out


def jacobi_cross_check() -> list[CheckResult]:
    """The hand-written Jacobi solver against LAPACK on one field density matrix."""
    res = resolve(PRESETS["fig8e"])
    amps = two.evolve_two(res.field, res.params, 7.3 / res.params.lam)
    a = two.rho_f1f2(amps)
    mine = spectral.eigen_hermitian(a).eigenvalues
    ref = spectral.eigvalsh_batch(a)
    return [_check("spectral.jacobi_vs_lapack", float(np.max(np.abs(mine - ref))), 1e-12)]


def run_validate() -> list[CheckResult]:
    return (critical_detuning_checks() + algebra_checks() + oracle_checks()
            + identity_checks() + periodicity_checks() + jacobi_cross_check())


def report(results: list[CheckResult]) -> str:
    width = max(len(r.name) for r in results)
    lines = [f"{'PASS' if r.passed else 'FAIL'}  {r.name:<{width}}  {r.value:.3e}  (limit {r.threshold:.1e})"
             for r in results]
    failed = sum(not r.passed for r in results)
    lines.append(f"{len(results) - failed}/{len(results)} checks passed")
    payload = {"passed": failed == 0, "checks": [asdict(r) for r in results]}
    lines.append("--- begin json ---")
    lines.append(json.dumps(payload, indent=1, sort_keys=True))
    lines.append("--- end json ---")
    return "\n".join(lines) + "\n"
