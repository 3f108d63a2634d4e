"""Dense complex matrix kernel: Jacobi eigensolver, functional calculus, order predicates.

Matrices are plain ``numpy.ndarray`` values (complex128, row-major). Everything
downstream builds on :func:`eigh`, a cyclic Jacobi diagonalizer for complex
Hermitian matrices with a deterministic sweep order, so results are
reproducible bit-for-bit across runs on the same platform.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple, Optional

import numpy as np

from .errors import (
    DimensionMismatch,
    DomainError,
    NoConvergence,
    NonHermitian,
    NotPositiveSemidefinite,
)

__all__ = [
    "Tolerance",
    "EigenSystem",
    "LoewnerDecision",
    "as_matrix",
    "eigh",
    "matrix_function",
    "sqrtm_psd",
    "generalized_inverse",
    "loewner_leq",
    "operator_norm",
    "spectral_radius_psd_product",
    "spectral_radius",
    "hermitian_part",
    "hermitian_defect",
    "require_square",
    "require_hermitian",
]

_MAX_SWEEPS = 100


@dataclass(frozen=True)
class Tolerance:
    """Numerical slack used by validation, order predicates and rank cutoffs.

    ``rank_cutoff`` is relative to the largest eigenvalue of the matrix at
    hand; the dimension-aware default is ``1e-12 * n``.
    """

    abs: float = 1e-9
    rel: float = 1e-9
    rank_cutoff: float = 1e-12

    def __post_init__(self) -> None:
        if not (self.abs > 0 and self.rel > 0 and self.rank_cutoff > 0):
            raise ValueError("tolerances must be strictly positive")

    @classmethod
    def for_dim(cls, n: int, abs: float = 1e-9, rel: float = 1e-9) -> "Tolerance":
        return cls(abs=abs, rel=rel, rank_cutoff=1e-12 * max(n, 1))


def _tol(tol: Optional[Tolerance], n: int) -> Tolerance:
    return tol if tol is not None else Tolerance.for_dim(n)


class LoewnerDecision(NamedTuple):
    holds: bool
    slack: float


def as_matrix(m) -> np.ndarray:
    """Coerce to a 2-d complex array, rejecting non-finite entries."""
    a = np.asarray(m, dtype=complex)
    if a.ndim != 2:
        raise DimensionMismatch(f"expected a 2-d array, got ndim={a.ndim}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValueError("matrix contains non-finite entries")
    return a


def require_square(m: np.ndarray) -> np.ndarray:
    a = as_matrix(m)
    if a.shape[0] != a.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {a.shape}")
    return a


def hermitian_part(m) -> np.ndarray:
    a = require_square(m)
    return 0.5 * (a + a.conj().T)


def hermitian_defect(m) -> float:
    """max-norm of M - M*."""
    a = require_square(m)
    return float(np.abs(a - a.conj().T).max()) if a.size else 0.0


def require_hermitian(m, tol: Optional[Tolerance] = None) -> np.ndarray:
    a = require_square(m)
    t = _tol(tol, a.shape[0])
    scale = float(np.abs(a).max()) if a.size else 0.0
    if hermitian_defect(a) > t.abs * (1.0 + scale):
        raise NonHermitian(f"Hermitian defect {hermitian_defect(a):.3e} exceeds tolerance")
    return hermitian_part(a)


@dataclass(frozen=True)
class EigenSystem:
    """Spectrum of a Hermitian matrix: real values sorted descending, orthonormal columns."""

    values: np.ndarray
    vectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.values) @ self.vectors.conj().T

    def apply(self, f: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
        """Q f(lambda) Q* with f applied entrywise to the eigenvalues."""
        return (self.vectors * f(self.values)) @ self.vectors.conj().T


def eigh(h, tol: Optional[Tolerance] = None, max_sweeps: int = _MAX_SWEEPS) -> EigenSystem:
    """Diagonalize a complex Hermitian matrix by cyclic Jacobi rotations.

    The pivot order is fixed (row-major over the strict upper triangle), so
    the returned eigenbasis is deterministic, including within degenerate
    eigenspaces. Raises NonHermitian for asymmetric input and NoConvergence
    if the off-diagonal mass does not vanish within the sweep budget.
    """
    a = require_hermitian(h, tol)
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    if n == 1:
        return EigenSystem(values=a.real.diagonal().copy(), vectors=v)

    scale = float(np.linalg.norm(a))
    if scale == 0.0:
        return EigenSystem(values=np.zeros(n), vectors=v)
    stop = 1e-14 * scale
    tiny = 1e-300

    for _ in range(max_sweeps):
        off = math.sqrt(2.0) * float(np.linalg.norm(np.triu(a, 1)))
        if off <= stop:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                r = abs(apq)
                if r <= tiny:
                    continue
                phase = apq / r
                theta = 0.5 * math.atan2(2.0 * r, (a[q, q] - a[p, p]).real)
                c = math.cos(theta)
                s = math.sin(theta)
                sp = s * phase
                spc = s * phase.conjugate()
                # A <- R* A R with R embedding [[c, s*phase], [-s*conj(phase), c]]
                cp = a[:, p].copy()
                cq = a[:, q].copy()
                a[:, p] = c * cp - spc * cq
                a[:, q] = sp * cp + c * cq
                rp = a[p, :].copy()
                rq = a[q, :].copy()
                a[p, :] = c * rp - sp * rq
                a[q, :] = spc * rp + c * rq
                a[p, q] = 0.0
                a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - spc * vq
                v[:, q] = sp * vp + c * vq
    else:
        raise NoConvergence(f"Jacobi sweep budget ({max_sweeps}) exhausted")

    values = a.real.diagonal().copy()
    order = np.argsort(-values, kind="stable")
    return EigenSystem(values=values[order], vectors=v[:, order])


def matrix_function(
    h,
    f: Callable[[np.ndarray], np.ndarray],
    tol: Optional[Tolerance] = None,
    domain_min: Optional[float] = None,
) -> np.ndarray:
    """Functional calculus Q f(lambda) Q* on a Hermitian matrix.

    When ``domain_min`` is given, eigenvalues below it are clamped up to it if
    the shortfall is rounding dust (within the relative rank cutoff) and
    rejected with DomainError otherwise.
    """
    es = eigh(h, tol)
    t = _tol(tol, es.values.size)
    lam = es.values.copy()
    if domain_min is not None:
        slack = t.rank_cutoff * max(1.0, float(np.abs(lam).max()) if lam.size else 0.0)
        if np.any(lam < domain_min - slack):
            worst = float(lam.min())
            raise DomainError(f"eigenvalue {worst:.3e} below function domain [{domain_min}, inf)")
        np.clip(lam, domain_min, None, out=lam)
    vals = np.asarray(f(lam), dtype=float)
    return hermitian_part((es.vectors * vals) @ es.vectors.conj().T)


def sqrtm_psd(h, tol: Optional[Tolerance] = None) -> np.ndarray:
    """PSD square root, clamping negative eigenvalue dust at zero."""
    return matrix_function(h, np.sqrt, tol, domain_min=0.0)


def generalized_inverse(h, p: float, tol: Optional[Tolerance] = None) -> np.ndarray:
    """Generalized power H^p of a PSD matrix.

    Eigenvalues at or below ``rank_cutoff * lambda_max`` are mapped to zero
    for p <= 0 (so p = 0 yields the support projection) and kept for p > 0.
    Negative dust is clamped at zero throughout; the zero matrix maps to zero
    for p > 0 and to the zero projection for p <= 0.
    """
    es = eigh(h, tol)
    t = _tol(tol, es.values.size)
    lam = np.clip(es.values, 0.0, None)
    lmax = float(lam.max()) if lam.size else 0.0
    cutoff = t.rank_cutoff * lmax
    out = np.zeros_like(lam)
    if p > 0:
        out = lam**p
    else:
        keep = lam > cutoff
        if p == 0:
            out[keep] = 1.0
        else:
            out[keep] = lam[keep] ** p
    return hermitian_part(es.apply(lambda _: out))


def loewner_leq(a, b, tol: Optional[Tolerance] = None) -> LoewnerDecision:
    """Decide A <= B in the Loewner order; slack is lambda_min(B - A)."""
    am = require_hermitian(a, tol)
    bm = require_hermitian(b, tol)
    if am.shape != bm.shape:
        raise DimensionMismatch(f"shapes {am.shape} and {bm.shape} differ")
    t = _tol(tol, am.shape[0])
    diff = eigh(bm - am, tol)
    slack = float(diff.values[-1]) if diff.values.size else 0.0
    scale = operator_norm(bm)
    return LoewnerDecision(holds=slack >= -t.abs * (1.0 + scale), slack=slack)


def operator_norm(m, tol: Optional[Tolerance] = None) -> float:
    """Largest singular value, sqrt(lambda_max(M* M))."""
    a = as_matrix(m)
    if a.size == 0:
        return 0.0
    if a.shape[0] == a.shape[1] and hermitian_defect(a) <= 1e-12 * (1.0 + float(np.abs(a).max())):
        es = eigh(hermitian_part(a), tol)
        return float(np.abs(es.values).max())
    gram = hermitian_part(a.conj().T @ a)
    es = eigh(gram, tol)
    return math.sqrt(max(float(es.values[0]), 0.0))


def spectral_radius_psd_product(a, b, tol: Optional[Tolerance] = None) -> float:
    """rho(A B) for PSD A, B, computed as lambda_max(B^1/2 A B^1/2)."""
    am = require_hermitian(a, tol)
    bh = sqrtm_psd(b, tol)
    if am.shape != bh.shape:
        raise DimensionMismatch(f"shapes {am.shape} and {bh.shape} differ")
    es = eigh(hermitian_part(bh @ am @ bh), tol)
    return max(float(es.values[0]), 0.0) if es.values.size else 0.0


def spectral_radius(m, max_squarings: int = 40) -> float:
    """Spectral radius of a general square matrix via scaled repeated squaring.

    Uses the norm-of-powers limit ||M^(2^j)||^(1/2^j) -> rho(M), which
    approaches rho from above for any submultiplicative norm (Frobenius here),
    so the returned value is an upper bound tight to well below 1e-9 after the
    default number of squarings.
    """
    a = require_square(m)
    if a.size == 0:
        return 0.0
    log_acc = 0.0
    weight = 1.0
    t = a
    for _ in range(max_squarings):
        norm = float(np.linalg.norm(t))
        if norm == 0.0:
            return 0.0
        log_acc += weight * math.log(norm)
        t = (t / norm) @ (t / norm)
        weight *= 0.5
    norm = float(np.linalg.norm(t))
    if norm == 0.0:
        return 0.0
    log_acc += weight * math.log(norm)
    return math.exp(log_acc)


def require_psd(h, tol: Optional[Tolerance] = None) -> np.ndarray:
    """Validate PSD-ness within tolerance; returns the Hermitian part."""
    a = require_hermitian(h, tol)
    t = _tol(tol, a.shape[0])
    es = eigh(a, tol)
    lmin = float(es.values[-1]) if es.values.size else 0.0
    scale = float(np.abs(es.values).max()) if es.values.size else 0.0
    if lmin < -t.abs * (1.0 + scale):
        raise NotPositiveSemidefinite(f"lambda_min = {lmin:.3e}")
    return a
