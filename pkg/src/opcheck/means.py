"""Matrix means and majorization predicates.

The geometric mean uses the congruence formula for definite inputs and falls
back to a shrinking-regularization limit when an input is singular; callers
that need to know which route ran use :func:`geometric_mean_ex`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .errors import DimensionMismatch, NoConvergence, NotIsometry, NotPositiveSemidefinite
from .linalg import (
    LoewnerDecision,
    Tolerance,
    _tol,
    eigh,
    hermitian_part,
    loewner_leq,
    operator_norm,
    require_hermitian,
)
from .decompose import svd_square

__all__ = [
    "MajorizationReport",
    "geometric_mean",
    "geometric_mean_ex",
    "agm_check",
    "kato_supremum",
    "power_mean",
    "q_mean",
    "weak_log_majorizes",
    "compress",
    "ando_compression_check",
]

_EPS_LADDER = (1e-4, 1e-6, 1e-8)
_LIMIT_AGREE = 1e-6


@dataclass(frozen=True)
class MajorizationReport:
    """Prefix products of descending eigenvalues for a weak log-majorization test."""

    k_products_lhs: np.ndarray
    k_products_rhs: np.ndarray
    passed: bool
    worst_ratio: float


def _definite_mean(a: np.ndarray, b: np.ndarray, tol: Optional[Tolerance]) -> np.ndarray:
    es_a = eigh(a, tol)
    lam = np.clip(es_a.values, 0.0, None)
    q = es_a.vectors
    a_half = (q * np.sqrt(lam)) @ q.conj().T
    a_ihalf = (q * (1.0 / np.sqrt(lam))) @ q.conj().T
    inner = hermitian_part(a_ihalf @ b @ a_ihalf)
    es_i = eigh(inner, tol)
    root = (es_i.vectors * np.sqrt(np.clip(es_i.values, 0.0, None))) @ es_i.vectors.conj().T
    return hermitian_part(a_half @ root @ a_half)


def _is_definite(h: np.ndarray, tol: Optional[Tolerance]) -> bool:
    """True for numerically definite input; rejects genuinely indefinite input."""
    es = eigh(h, tol)
    if not es.values.size:
        return False
    t = _tol(tol, es.values.size)
    lmax = float(es.values[0])
    lmin = float(es.values[-1])
    if lmin < -t.abs * (1.0 + abs(lmax)):
        raise NotPositiveSemidefinite(f"mean argument has eigenvalue {lmin:.3e}")
    return lmin > 1e-10 * max(1.0, lmax)


def geometric_mean_ex(a, b, tol: Optional[Tolerance] = None) -> Tuple[np.ndarray, bool]:
    """A # B plus a flag telling whether the singular-input limit was taken.

    Definite inputs use A^1/2 (A^-1/2 B A^-1/2)^1/2 A^1/2. Otherwise the mean
    is the limit of (A + eps I) # (B + eps I) over a fixed epsilon ladder,
    accepted when the last two iterates agree to 1e-6 in operator norm.
    """
    am = require_hermitian(a, tol)
    bm = require_hermitian(b, tol)
    if am.shape != bm.shape:
        raise DimensionMismatch(f"shapes {am.shape} and {bm.shape} differ")
    if _is_definite(am, tol) and _is_definite(bm, tol):
        return _definite_mean(am, bm, tol), False
    eye = np.eye(am.shape[0])
    iterates = [_definite_mean(am + e * eye, bm + e * eye, tol) for e in _EPS_LADDER]
    gap = operator_norm(iterates[-1] - iterates[-2], tol)
    if gap > _LIMIT_AGREE * (1.0 + operator_norm(iterates[-1], tol)):
        raise NoConvergence(f"singular-mean limit not Cauchy: gap {gap:.3e}")
    return iterates[-1], True


def geometric_mean(a, b, tol: Optional[Tolerance] = None) -> np.ndarray:
    """Matrix geometric mean A # B of two PSD matrices."""
    mean, _ = geometric_mean_ex(a, b, tol)
    return mean


def agm_check(a, b, tol: Optional[Tolerance] = None) -> LoewnerDecision:
    """Arithmetic-geometric mean comparison: A # B <= (A + B)/2."""
    mean, _ = geometric_mean_ex(a, b, tol)
    return loewner_leq(mean, (hermitian_part(a) + hermitian_part(b)) / 2.0, tol)


def _scaled_power(es_values: np.ndarray, vectors: np.ndarray, p: float, scale: float) -> np.ndarray:
    lam = np.clip(es_values, 0.0, None) / scale
    return (vectors * lam**p) @ vectors.conj().T


def power_mean(z, p: float, tol: Optional[Tolerance] = None) -> np.ndarray:
    """((|Z|^p + |Z*|^p)/2)^(1/p), computed on a common scale.

    Only reliable while (sigma_min/sigma_max)^p stays above rounding dust;
    used as a moderate-p cross-check of :func:`kato_supremum`.
    """
    parts = svd_square(z, tol)
    sig = parts.values
    scale = float(sig.max()) if sig.size else 0.0
    if scale == 0.0:
        return np.zeros((parts.right.shape[0],) * 2, dtype=complex)
    avg = hermitian_part(
        0.5 * (_scaled_power(sig, parts.right, p, scale) + _scaled_power(sig, parts.left, p, scale))
    )
    es = eigh(avg, tol)
    return hermitian_part(
        (es.vectors * (scale * np.clip(es.values, 0.0, None) ** (1.0 / p))) @ es.vectors.conj().T
    )


def kato_supremum(z, tol: Optional[Tolerance] = None) -> np.ndarray:
    """Least upper bound |Z| v |Z*| of the two moduli, the large-p limit of
    ((|Z|^p + |Z*|^p)/2)^(1/p).

    Computed in closed form as the spectral-order supremum that limit is known
    to equal: sweeping the shared singular values downward, each level
    contributes its value on the new directions the level's eigenvectors of
    |Z| and |Z*| add to the running span. This is exact where the power-mean
    iteration would stall on rounding dust, so it never fails to converge.
    """
    parts = svd_square(z, tol)
    n = parts.right.shape[0]
    sig = parts.values
    scale = float(sig.max()) if sig.size else 0.0
    if scale == 0.0:
        return np.zeros((n, n), dtype=complex)
    cluster = 1e-9 * scale
    basis: list = []
    out = np.zeros((n, n), dtype=complex)
    i = 0
    while i < n and len(basis) < n and sig[i] > 0.0:
        level = sig[i]
        j = i
        while j < n and sig[j] > level - cluster:
            j += 1
        for source in (parts.right, parts.left):
            for col in range(i, j):
                cand = source[:, col].copy()
                for b in basis:
                    cand -= b * np.vdot(b, cand)
                norm = float(np.linalg.norm(cand))
                if norm > 1e-8:
                    cand = cand / norm
                    basis.append(cand)
                    out += level * np.outer(cand, cand.conj())
        i = j
    return hermitian_part(out)


def q_mean(z, q: float, tol: Optional[Tolerance] = None) -> np.ndarray:
    """(|Z|^q + |Z*|^q)^(1/q) for q >= 1; q = 1 is literally |Z| + |Z*|."""
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    parts = svd_square(z, tol)
    sig = parts.values
    scale = float(sig.max()) if sig.size else 0.0
    if scale == 0.0:
        return np.zeros((parts.right.shape[0],) * 2, dtype=complex)
    total = hermitian_part(
        _scaled_power(sig, parts.right, q, scale) + _scaled_power(sig, parts.left, q, scale)
    )
    es = eigh(total, tol)
    return hermitian_part(
        (es.vectors * (scale * np.clip(es.values, 0.0, None) ** (1.0 / q))) @ es.vectors.conj().T
    )


def weak_log_majorizes(a, b, tol: Optional[Tolerance] = None) -> MajorizationReport:
    """Test A majorized by B in the weak log sense over descending spectra.

    Eigenvalue dust below the rank cutoff is clamped to exact zero before the
    prefix products are formed, and zero-against-zero prefixes compare equal.
    """
    am = require_hermitian(a, tol)
    bm = require_hermitian(b, tol)
    if am.shape != bm.shape:
        raise DimensionMismatch(f"shapes {am.shape} and {bm.shape} differ")
    t = _tol(tol, am.shape[0])

    def clamped_spectrum(h: np.ndarray) -> np.ndarray:
        lam = np.clip(eigh(h, tol).values, 0.0, None)
        lmax = float(lam.max()) if lam.size else 0.0
        lam[lam <= t.rank_cutoff * lmax] = 0.0
        return lam

    lhs = np.cumprod(clamped_spectrum(am))
    rhs = np.cumprod(clamped_spectrum(bm))
    passed = True
    worst = 0.0
    for lk, rk in zip(lhs, rhs):
        if rk == 0.0:
            ratio = 1.0 if lk == 0.0 else np.inf
        else:
            ratio = lk / rk
        worst = max(worst, ratio)
        if not lk <= rk * (1.0 + t.rel):
            passed = False
    return MajorizationReport(
        k_products_lhs=lhs, k_products_rhs=rhs, passed=passed, worst_ratio=float(worst)
    )


def compress(a, s, tol: Optional[Tolerance] = None) -> np.ndarray:
    """Compression S* A S onto the range of an isometry S."""
    am = require_hermitian(a, tol)
    sm = np.asarray(s, dtype=complex)
    if sm.ndim != 2 or sm.shape[0] != am.shape[0]:
        raise DimensionMismatch(f"isometry shape {sm.shape} incompatible with {am.shape}")
    t = _tol(tol, sm.shape[1])
    gram_defect = float(np.abs(sm.conj().T @ sm - np.eye(sm.shape[1])).max())
    if gram_defect > t.abs * 10:
        raise NotIsometry(f"columns not orthonormal: defect {gram_defect:.3e}")
    return hermitian_part(sm.conj().T @ am @ sm)


def ando_compression_check(a, b, s, tol: Optional[Tolerance] = None) -> LoewnerDecision:
    """Compression of a geometric mean against the mean of the compressions."""
    mean, _ = geometric_mean_ex(a, b, tol)
    lhs = compress(mean, s, tol)
    rhs = geometric_mean(compress(a, s, tol), compress(b, s, tol), tol)
    return loewner_leq(lhs, rhs, tol)
