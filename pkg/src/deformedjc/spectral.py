"""Hermitian eigensolver and entropy functionals.

``eigen_hermitian`` is a cyclic Jacobi method.  Sweeps use the round-robin
(tournament) ordering, so every round applies n/2 disjoint plane rotations
at once as vectorised row/column updates.  It is accurate to working
precision and is what the brute-force oracle relies on.  Large batches of
small density matrices (thousands of time samples) go through
``eigvalsh_batch`` instead, which calls LAPACK.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

MAX_SWEEPS = 100
NEGATIVE_EIGENVALUE_FLOOR = -1e-12


class EigenError(ArithmeticError):
    pass


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray | None = None


def as_hermitian(m, atol: float = 1e-12) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
        raise ValueError(f"expected a non-empty square matrix, got shape {m.shape}")
    scale = max(1.0, float(np.max(np.abs(m))))
    if np.max(np.abs(m - m.conj().T)) > atol * scale:
        raise ValueError("matrix is not hermitian")
    return m


def _round_robin(n: int) -> list[tuple[np.ndarray, np.ndarray]]:
    """n-1 rounds (n even) pairing every index with every other exactly once."""
    m = n + (n % 2)
    players = list(range(m))
    rounds = []
    for _ in range(m - 1):
        p, q = [], []
        for i in range(m // 2):
            a, b = players[i], players[m - 1 - i]
            if a < n and b < n:
                p.append(min(a, b))
                q.append(max(a, b))
        rounds.append((np.array(p, dtype=int), np.array(q, dtype=int)))
        players = [players[0], players[-1]] + players[1:-1]
    return rounds


def _off_norm(a: np.ndarray) -> float:
    off = a - np.diag(np.diag(a))
    return float(np.sqrt(np.sum(np.abs(off) ** 2)))


def eigen_hermitian(m, tol: float | None = None, vectors: bool = False) -> Spectrum:
    """Eigenvalues (ascending) and optionally eigenvectors (columns) of a hermitian matrix.

    Iterates Jacobi sweeps until the off-diagonal Frobenius norm drops below
    ``tol`` (default ``1e-12 * ||m||_F``), then runs one more sweep.
    """
    a = as_hermitian(m).copy()
    n = a.shape[0]
    norm = float(np.linalg.norm(a))
    if tol is None:
        tol = 1e-12 * norm
    v = np.eye(n, dtype=complex) if vectors else None
    rounds = _round_robin(n) if n > 1 else []
    converged_sweeps = 0
    for _ in range(MAX_SWEEPS):
        if _off_norm(a) <= tol:
            converged_sweeps += 1
            if converged_sweeps > 1 or _off_norm(a) == 0.0:
                break
        for p, q in rounds:
            b = a[p, q]
            mag = np.abs(b)
            active = mag > 0.0
            if not np.any(active):
                continue
            p, q, b, mag = p[active], q[active], b[active], mag[active]
            app = a[p, p].real
            aqq = a[q, q].real
            phase = b / mag  # e^{i phi}
            tau = (aqq - app) / (2.0 * mag)
            t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.sqrt(1.0 + tau * tau))
            c = 1.0 / np.sqrt(1.0 + t * t)
            s = t * c
            # columns: U = diag(1, e^{-i phi}) @ [[c, s], [-s, c]]
            cp, cq = a[:, p].copy(), a[:, q].copy()
            a[:, p] = c * cp - (s / phase) * cq
            a[:, q] = s * cp + (c / phase) * cq
            rp, rq = a[p, :].copy(), a[q, :].copy()
            a[p, :] = c[:, None] * rp - (s * phase)[:, None] * rq
            a[q, :] = s[:, None] * rp + (c * phase)[:, None] * rq
            a[p, q] = 0.0
            a[q, p] = 0.0
            a[p, p] = a[p, p].real
            a[q, q] = a[q, q].real
            if v is not None:
                vp, vq = v[:, p].copy(), v[:, q].copy()
                v[:, p] = c * vp - (s / phase) * vq
                v[:, q] = s * vp + (c / phase) * vq
    else:
        raise EigenError(f"Jacobi iteration did not converge in {MAX_SWEEPS} sweeps")
    w = np.diag(a).real
    order = np.argsort(w, kind="stable")
    return Spectrum(w[order], None if v is None else v[:, order])


def eigvalsh_batch(stack) -> np.ndarray:
    """Ascending eigenvalues of a stack of hermitian matrices (LAPACK)."""
    return np.linalg.eigvalsh(np.asarray(stack))


def _clean_probabilities(p, atol: float = 1e-8) -> np.ndarray:
    p = np.asarray(p, dtype=float)
    if np.any(p < NEGATIVE_EIGENVALUE_FLOOR):
        raise ValueError(f"significantly negative eigenvalue {p.min():.3e}")
    total = p.sum(axis=-1)
    if np.any(np.abs(total - 1.0) > atol):
        raise ValueError("probabilities / eigenvalues do not sum to 1")
    return np.clip(p, 0.0, None)


def shannon_bits(p, atol: float = 1e-8):
    """-sum p log2 p along the last axis, with 0 log 0 = 0."""
    p = _clean_probabilities(p, atol)
    with np.errstate(divide="ignore", invalid="ignore"):
        terms = np.where(p > 0.0, -p * np.log2(np.where(p > 0.0, p, 1.0)), 0.0)
    out = terms.sum(axis=-1)
    return float(out) if np.ndim(out) == 0 else out


def von_neumann_entropy(spectrum, atol: float = 1e-8):
    """Base-2 von Neumann entropy from a Spectrum or an eigenvalue array."""
    if isinstance(spectrum, Spectrum):
        spectrum = spectrum.eigenvalues
    return shannon_bits(spectrum, atol)


def linear_entropy_of(m, atol: float = 1e-8):
    """2 (1 - Tr rho^2) for a density matrix or a stack of them, without diagonalising."""
    m = np.asarray(m)
    tr = np.trace(m, axis1=-2, axis2=-1)
    if np.any(np.abs(tr - 1.0) > atol):
        raise ValueError("density matrix trace differs from 1")
    purity = np.sum(np.abs(m) ** 2, axis=(-2, -1))
    out = 2.0 * (1.0 - purity)
    return float(out) if np.ndim(out) == 0 else out
