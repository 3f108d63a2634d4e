"""Certificate-producing checks, one per inequality family, plus the
counterexample reproductions and searches.

Every check constructs the same witness the underlying argument does: V is
the adjoint of the unitary polar factor of the mapped matrix, so
V phi(Z) = |phi(Z)|. Certificates record both sides, the witness, the signed
Loewner slack, and whether the singular-mean limit was taken.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from .decompose import cartesian, comodulus, modulus, svd_square
from .errors import ClassViolation, HypothesisViolated, NotContraction, SearchExhausted
from .linalg import (
    Tolerance,
    _tol,
    eigh,
    generalized_inverse,
    hermitian_part,
    loewner_leq,
    operator_norm,
    require_hermitian,
    spectral_radius,
    spectral_radius_psd_product,
)
from .means import MajorizationReport, geometric_mean_ex, weak_log_majorizes
from .posmap import (
    COMPLETELY_POSITIVE,
    TWO_POSITIVE,
    PosMap,
    SchurMultiplier,
    apply,
    map_to_json,
)
from .io import matrix_to_json, tolerance_to_json

__all__ = [
    "FunPair",
    "Certificate",
    "GapReport",
    "ReverseProductReport",
    "CartesianReport",
    "Example28Report",
    "SharpnessReport",
    "CexSearchReport",
    "domination_holds",
    "moduli_images",
    "witness_unitary",
    "check_russo_dye",
    "check_arithmetic_domination",
    "check_geometric_domination",
    "check_two_positive_split",
    "check_log_majorization",
    "check_eigenvalue_gaps",
    "check_reverse_product",
    "check_cartesian_suite",
    "check_schur_remarks",
    "reproduce_counterexample_2_8",
    "reproduce_sharpness_cor2_5",
    "find_counterexamples_remarks",
]


@dataclass(frozen=True)
class FunPair:
    """Parametric pair (f, g) with f(t) g(t) = t^2 pointwise.

    Kinds: ``power`` is f = t^(1+p), g = t^(1-p); ``range`` is f = t^2 with g
    the support indicator; ``scaled`` is f = sqrt(rho) t, g = t / sqrt(rho).
    """

    kind: str
    p: float = 0.0
    rho: float = 1.0

    def __post_init__(self):
        if self.kind not in ("power", "range", "scaled"):
            raise ValueError(f"unknown FunPair kind {self.kind!r}")
        if self.kind == "scaled" and not self.rho > 0:
            raise ValueError("scaled pair needs rho > 0")

    @classmethod
    def power(cls, p: float) -> "FunPair":
        return cls(kind="power", p=float(p))

    @classmethod
    def range_pair(cls) -> "FunPair":
        return cls(kind="range")

    @classmethod
    def scaled(cls, rho: float) -> "FunPair":
        return cls(kind="scaled", rho=float(rho))

    def f_of(self, h, tol: Optional[Tolerance] = None) -> np.ndarray:
        if self.kind == "power":
            return generalized_inverse(h, 1.0 + self.p, tol)
        if self.kind == "range":
            return generalized_inverse(h, 2.0, tol)
        return math.sqrt(self.rho) * require_hermitian(h, tol)

    def g_of(self, h, tol: Optional[Tolerance] = None) -> np.ndarray:
        if self.kind == "power":
            return generalized_inverse(h, 1.0 - self.p, tol)
        if self.kind == "range":
            return generalized_inverse(h, 0.0, tol)
        return require_hermitian(h, tol) / math.sqrt(self.rho)

    def f_scalar(self, t: float) -> float:
        if self.kind == "power":
            return t ** (1.0 + self.p)
        if self.kind == "range":
            return t * t
        return math.sqrt(self.rho) * t

    def g_scalar(self, t: float) -> float:
        if self.kind == "power":
            return t ** (1.0 - self.p)
        if self.kind == "range":
            return 0.0 if t == 0.0 else 1.0
        return t / math.sqrt(self.rho)

    def _power_sigma(self, sig: np.ndarray, exponent: float, cutoff: float) -> np.ndarray:
        out = np.zeros_like(sig)
        if exponent > 0:
            return sig**exponent
        keep = sig > cutoff
        out[keep] = 1.0 if exponent == 0 else sig[keep] ** exponent
        return out

    def f_sigma(self, sig: np.ndarray, cutoff: float) -> np.ndarray:
        """f applied entrywise to singular values, generalized-power semantics."""
        if self.kind == "power":
            return self._power_sigma(sig, 1.0 + self.p, cutoff)
        if self.kind == "range":
            return sig * sig
        return math.sqrt(self.rho) * sig

    def g_sigma(self, sig: np.ndarray, cutoff: float) -> np.ndarray:
        if self.kind == "power":
            return self._power_sigma(sig, 1.0 - self.p, cutoff)
        if self.kind == "range":
            return (sig > cutoff).astype(float)
        return sig / math.sqrt(self.rho)

    def describe(self) -> str:
        if self.kind == "power":
            return f"power(p={self.p:g})"
        if self.kind == "range":
            return "range"
        return f"scaled(rho={self.rho:g})"

    def to_json(self) -> dict:
        return {"kind": self.kind, "p": self.p, "rho": self.rho}

    @classmethod
    def from_json(cls, obj: dict) -> "FunPair":
        return cls(
            kind=obj["kind"], p=float(obj.get("p", 0.0)), rho=float(obj.get("rho", 1.0))
        )


@dataclass(frozen=True)
class Certificate:
    """Outcome of one inequality check: both sides, witness, signed slack."""

    check_id: str
    inputs_digest: str
    lhs: np.ndarray
    rhs: np.ndarray
    witness_v: Optional[np.ndarray]
    slack: float
    passed: bool
    used_singular_mean_limit: bool
    tolerances: Tolerance
    notes: str
    inputs: dict

    def to_json_dict(self) -> dict:
        return {
            "check_id": self.check_id,
            "pass": bool(self.passed),
            "slack": float(self.slack),
            "witness_V": matrix_to_json(self.witness_v) if self.witness_v is not None else None,
            "used_singular_mean_limit": bool(self.used_singular_mean_limit),
            "inputs": self.inputs,
            "inputs_digest": self.inputs_digest,
            "tolerances": tolerance_to_json(self.tolerances),
            "notes": self.notes,
        }


def _digest(inputs: dict) -> str:
    return hashlib.sha256(json.dumps(inputs, sort_keys=True).encode()).hexdigest()


def _certificate(
    check_id: str,
    inputs: dict,
    lhs: np.ndarray,
    rhs: np.ndarray,
    witness_v: Optional[np.ndarray],
    tol: Optional[Tolerance],
    used_limit: bool = False,
    notes: str = "",
    extra_ok: bool = True,
) -> Certificate:
    dec = loewner_leq(lhs, rhs, tol)
    t = _tol(tol, lhs.shape[0])
    return Certificate(
        check_id=check_id,
        inputs_digest=_digest(inputs),
        lhs=lhs,
        rhs=rhs,
        witness_v=witness_v,
        slack=dec.slack,
        passed=bool(dec.holds and extra_ok),
        used_singular_mean_limit=used_limit,
        tolerances=t,
        notes=notes,
        inputs=inputs,
    )


def _polar_witness_and_modulus(w, tol: Optional[Tolerance]) -> Tuple[np.ndarray, np.ndarray]:
    """(V, |W|) with V the adjoint polar unitary, so V W = |W|."""
    parts = svd_square(w, tol)
    unitary = parts.left @ parts.right.conj().T
    mod = hermitian_part((parts.right * parts.values) @ parts.right.conj().T)
    return unitary.conj().T, mod


def moduli_images(z, fp: FunPair, tol: Optional[Tolerance] = None) -> Tuple[np.ndarray, np.ndarray]:
    """(f(|Z|), g(|Z*|)) from a single SVD: both moduli share singular values,
    so f and g act entrywise on them in the right and left bases."""
    parts = svd_square(z, tol)
    t = _tol(tol, parts.values.size)
    smax = float(parts.values.max()) if parts.values.size else 0.0
    cutoff = t.rank_cutoff * smax
    f_vals = fp.f_sigma(parts.values, cutoff)
    g_vals = fp.g_sigma(parts.values, cutoff)
    f_mod = hermitian_part((parts.right * f_vals) @ parts.right.conj().T)
    g_comod = hermitian_part((parts.left * g_vals) @ parts.left.conj().T)
    return f_mod, g_comod


def domination_holds(z, j, fp: FunPair, tol: Optional[Tolerance] = None) -> bool:
    """f(|Z|) <= J and g(|Z*|) <= J, both in the Loewner order."""
    jm = require_hermitian(j, tol)
    f_mod, g_comod = moduli_images(z, fp, tol)
    t = _tol(tol, jm.shape[0])
    scale = float(np.abs(eigh(jm, tol).values).max()) if jm.size else 0.0
    threshold = -t.abs * (1.0 + scale)
    slack_f = float(eigh(jm - f_mod, tol).values[-1])
    if slack_f < threshold:
        return False
    slack_g = float(eigh(jm - g_comod, tol).values[-1])
    return slack_g >= threshold


def witness_unitary(phi: PosMap, z, tol: Optional[Tolerance] = None) -> np.ndarray:
    """Adjoint of the polar unitary of phi(Z): V phi(Z) = |phi(Z)|."""
    v, _ = _polar_witness_and_modulus(apply(phi, z), tol)
    return v


def _std_inputs(phi: PosMap, z, j=None, fp: Optional[FunPair] = None, **extra) -> dict:
    inputs = {"phi": map_to_json(phi), "Z": matrix_to_json(np.asarray(z, dtype=complex))}
    if j is not None:
        inputs["J"] = matrix_to_json(np.asarray(j, dtype=complex))
    if fp is not None:
        inputs["funpair"] = fp.to_json()
    inputs.update(extra)
    return inputs


def check_russo_dye(phi: PosMap, a, tol: Optional[Tolerance] = None) -> Certificate:
    """Norm attained at the identity: ||phi(A)|| <= ||phi(I)|| for contractions."""
    am = np.asarray(a, dtype=complex)
    t = _tol(tol, am.shape[0])
    norm_a = operator_norm(am, tol)
    if norm_a > 1.0 + t.abs:
        raise NotContraction(f"operator norm {norm_a:.6g} exceeds 1")
    lhs = np.array([[operator_norm(apply(phi, am), tol)]], dtype=complex)
    rhs = np.array([[operator_norm(apply(phi, np.eye(phi.in_dim)), tol)]], dtype=complex)
    inputs = {"phi": map_to_json(phi), "A": matrix_to_json(am)}
    return _certificate("check_russo_dye", inputs, lhs, rhs, None, tol)


def check_arithmetic_domination(
    phi: PosMap, z, j, fp: FunPair, tol: Optional[Tolerance] = None
) -> Certificate:
    """|phi(Z)| against the arithmetic mean of phi(J) and its witness conjugate."""
    if not domination_holds(z, j, fp, tol):
        raise HypothesisViolated("f(|Z|) <= J and g(|Z*|) <= J required")
    v, lhs = _polar_witness_and_modulus(apply(phi, z), tol)
    phj = hermitian_part(apply(phi, j))
    rhs = hermitian_part(0.5 * (phj + v @ phj @ v.conj().T))
    inputs = _std_inputs(phi, z, j, fp)
    return _certificate(
        "check_arithmetic_domination", inputs, lhs, rhs, v, tol, notes=fp.describe()
    )


def check_geometric_domination(
    phi: PosMap, z, j, fp: FunPair, tol: Optional[Tolerance] = None
) -> Certificate:
    """|phi(Z)| against phi(J) # V phi(J) V*, the geometric sharpening.

    Also asserts the sharpening itself: the geometric right-hand side must not
    exceed the arithmetic one.
    """
    if not domination_holds(z, j, fp, tol):
        raise HypothesisViolated("f(|Z|) <= J and g(|Z*|) <= J required")
    v, lhs = _polar_witness_and_modulus(apply(phi, z), tol)
    phj = hermitian_part(apply(phi, j))
    conj = hermitian_part(v @ phj @ v.conj().T)
    rhs, used_limit = geometric_mean_ex(phj, conj, tol)
    arith = hermitian_part(0.5 * (phj + conj))
    agm = loewner_leq(rhs, arith, tol)
    notes = f"{fp.describe()}; agm_slack={agm.slack:.3e}"
    inputs = _std_inputs(phi, z, j, fp)
    return _certificate(
        "check_geometric_domination",
        inputs,
        lhs,
        rhs,
        v,
        tol,
        used_limit=used_limit,
        notes=notes,
        extra_ok=agm.holds,
    )


def check_two_positive_split(
    phi: PosMap, z, p: float, tol: Optional[Tolerance] = None
) -> Certificate:
    """|phi(Z)| against phi(|Z|^(1+p)) # V phi(|Z*|^(1-p)) V* for 2-positive maps.

    Powers outside [0, inf) on singular moduli are generalized inverses; the
    zeroth power is the support (resp. range) projection.
    """
    if phi.declared_class not in (TWO_POSITIVE, COMPLETELY_POSITIVE):
        raise ClassViolation(
            f"map declared {phi.declared_class!r}; the split bound needs 2-positivity"
        )
    v, lhs = _polar_witness_and_modulus(apply(phi, z), tol)
    f_mod, g_comod = moduli_images(z, FunPair.power(p), tol)
    left = hermitian_part(apply(phi, f_mod))
    right = hermitian_part(v @ apply(phi, g_comod) @ v.conj().T)
    rhs, used_limit = geometric_mean_ex(left, right, tol)
    inputs = _std_inputs(phi, z, p=p)
    return _certificate(
        "check_two_positive_split",
        inputs,
        lhs,
        rhs,
        v,
        tol,
        used_limit=used_limit,
        notes=f"split exponents 1+p={1 + p:g}, 1-p={1 - p:g}",
    )


def check_log_majorization(
    phi: PosMap, z, j, fp: FunPair, tol: Optional[Tolerance] = None
) -> MajorizationReport:
    """|phi(Z)| weakly log-majorized by phi(J) under the domination hypothesis."""
    if not domination_holds(z, j, fp, tol):
        raise HypothesisViolated("f(|Z|) <= J and g(|Z*|) <= J required")
    lhs = modulus(apply(phi, z), tol)
    rhs = hermitian_part(apply(phi, j))
    return weak_log_majorizes(lhs, rhs, tol)


def _descending_clamped(h, tol: Optional[Tolerance]) -> np.ndarray:
    return np.clip(eigh(h, tol).values, 0.0, None)


@dataclass(frozen=True)
class GapReport:
    """Grid of sub-top eigenvalue bounds lambda_{j+k+1} <= sqrt(lambda_{j+1} lambda_{k+1})."""

    passed: bool
    checked: int
    worst_margin: float
    notes: str = ""


def _scalar_weight(j) -> Optional[float]:
    """lam when J = lam I within rounding, else None."""
    jm = np.asarray(j, dtype=complex)
    lam = float(np.real(np.trace(jm))) / jm.shape[0]
    if np.abs(jm - lam * np.eye(jm.shape[0])).max() <= 1e-12 * (1.0 + abs(lam)):
        return lam
    return None


def check_eigenvalue_gaps(
    phi: PosMap, z, j, fp: FunPair, tol: Optional[Tolerance] = None
) -> GapReport:
    """Eigenvalue gap grid for |phi(Z)| against phi(J), all index pairs.

    For a Schur multiplier and a scalar weight J = lam I the grid is also run
    against the sorted diagonal of the factor (the same numbers, since
    phi(lam I) is lam times that diagonal), and the two diagonal-entry bounds
    for the expansive factor against its inverse and the contractive factor
    against itself are folded in.
    """
    if not domination_holds(z, j, fp, tol):
        raise HypothesisViolated("f(|Z|) <= J and g(|Z*|) <= J required")
    t = _tol(tol, phi.out_dim)
    lhs_vals = _descending_clamped(modulus(apply(phi, z), tol), tol)
    rhs_vals = _descending_clamped(hermitian_part(apply(phi, j)), tol)
    m = lhs_vals.size
    scale = float(rhs_vals[0]) if m else 0.0
    slackstep = t.abs * (1.0 + scale)
    checked = 0
    worst = math.inf
    passed = True
    grids = [rhs_vals]
    notes = ""
    if isinstance(phi, SchurMultiplier):
        lam = _scalar_weight(j)
        if lam is not None:
            diag_sorted = lam * np.sort(np.real(np.diagonal(phi.factor)))[::-1]
            grids.append(diag_sorted)
            notes = "schur diagonal grid included"
        remarks = check_schur_remarks(phi.factor, tol)
        checked += 2
        if not remarks.passed:
            passed = False
        worst = min(worst, remarks.worst_margin_expansive, remarks.worst_margin_contractive)
        notes = (notes + "; " if notes else "") + "schur factor variants included"
    for grid in grids:
        for jj in range(m):
            for kk in range(m - jj):
                idx = jj + kk + 1
                if idx > m:
                    continue
                bound = math.sqrt(max(grid[jj] * grid[kk], 0.0))
                margin = bound - lhs_vals[idx - 1]
                worst = min(worst, margin)
                checked += 1
                if margin < -slackstep:
                    passed = False
    return GapReport(passed=passed, checked=checked, worst_margin=worst, notes=notes)


@dataclass(frozen=True)
class ReverseProductReport:
    """Squared ascending prefix products against mixed ascending/descending ones."""

    passed: bool
    products_lhs_squared: np.ndarray
    products_mixed: np.ndarray
    worst_ratio: float


def check_reverse_product(
    phi: PosMap, z, j, fp: FunPair, tol: Optional[Tolerance] = None
) -> ReverseProductReport:
    """Products of the k smallest eigenvalues of |phi(Z)|, squared, bounded by
    the mixed smallest-times-largest products of phi(J)."""
    if not domination_holds(z, j, fp, tol):
        raise HypothesisViolated("f(|Z|) <= J and g(|Z*|) <= J required")
    t = _tol(tol, phi.out_dim)
    lhs_vals = _descending_clamped(modulus(apply(phi, z), tol), tol)
    rhs_vals = _descending_clamped(hermitian_part(apply(phi, j)), tol)

    def clamp_dust(v: np.ndarray) -> np.ndarray:
        vmax = float(v.max()) if v.size else 0.0
        out = v.copy()
        out[out <= t.rank_cutoff * vmax] = 0.0
        return out

    lhs_vals = clamp_dust(lhs_vals)
    rhs_vals = clamp_dust(rhs_vals)
    asc_lhs = lhs_vals[::-1]
    asc_rhs = rhs_vals[::-1]
    desc_rhs = rhs_vals
    lhs_sq = np.cumprod(asc_lhs) ** 2
    mixed = np.cumprod(asc_rhs * desc_rhs)
    passed = True
    worst = 0.0
    for lk, rk in zip(lhs_sq, mixed):
        if rk == 0.0:
            ratio = 1.0 if lk == 0.0 else np.inf
        else:
            ratio = lk / rk
        worst = max(worst, ratio)
        if not lk <= rk * (1.0 + t.rel * lhs_sq.size):
            passed = False
    return ReverseProductReport(
        passed=passed,
        products_lhs_squared=lhs_sq,
        products_mixed=mixed,
        worst_ratio=float(worst),
    )


@dataclass(frozen=True)
class CartesianReport:
    """Joint report for the Cartesian-decomposition consequences."""

    passed: bool
    mean_certificate: Certificate
    majorization: MajorizationReport
    norm_value: float
    rho_value: float
    singular_cartesian_sum: bool


def check_cartesian_suite(phi: PosMap, z, tol: Optional[Tolerance] = None) -> CartesianReport:
    """All four Cartesian-sum statements for K = |X| + |Y|.

    The geometric-mean certificate and the log-majorization involve phi; the
    norm bound ||K^-1/2 Z K^-1/2|| <= 1 and the spectral-radius bound
    rho(Z K^-1) <= 1 are map-independent. A kernel in K (always inside the
    kernel of Z) is flagged and handled by generalized inverses.
    """
    zm = np.asarray(z, dtype=complex)
    t = _tol(tol, zm.shape[0])
    parts = cartesian(zm)
    k_sum = hermitian_part(modulus(parts.re_part, tol) + modulus(parts.im_part, tol))
    es = eigh(k_sum, tol)
    lmax = float(es.values[0]) if es.values.size else 0.0
    singular = bool(es.values.size and float(es.values[-1]) <= t.rank_cutoff * lmax)

    v, lhs = _polar_witness_and_modulus(apply(phi, zm), tol)
    phk = hermitian_part(apply(phi, k_sum))
    conj = hermitian_part(v @ phk @ v.conj().T)
    rhs, used_limit = geometric_mean_ex(phk, conj, tol)
    inputs = _std_inputs(phi, zm, k_sum)
    cert = _certificate(
        "check_cartesian_suite", inputs, lhs, rhs, v, tol, used_limit=used_limit,
        notes="J = |X| + |Y| from the Cartesian decomposition",
    )
    major = weak_log_majorizes(lhs, phk, tol)

    k_inv_half = generalized_inverse(k_sum, -0.5, tol)
    norm_value = operator_norm(k_inv_half @ zm @ k_inv_half, tol)
    rho_value = spectral_radius(zm @ generalized_inverse(k_sum, -1.0, tol))
    bound = 1.0 + t.abs * (1.0 + lmax) + 1e-6
    passed = bool(cert.passed and major.passed and norm_value <= bound and rho_value <= bound)
    return CartesianReport(
        passed=passed,
        mean_certificate=cert,
        majorization=major,
        norm_value=norm_value,
        rho_value=rho_value,
        singular_cartesian_sum=singular,
    )


@dataclass(frozen=True)
class SchurRemarkReport:
    """Diagonal bounds for S o S^-1 (S expansive) and S o S (S contractive)."""

    passed: bool
    worst_margin_expansive: float
    worst_margin_contractive: float


def check_schur_remarks(s, tol: Optional[Tolerance] = None) -> SchurRemarkReport:
    """lambda_{2j+1}(S o S^-1) <= s_{j+1} for expansive S, and the same with
    S o S for contractive S, built from one PSD sample."""
    sm = require_hermitian(s, tol)
    n = sm.shape[0]
    t = _tol(tol, n)
    expansive = hermitian_part(sm + np.eye(n))
    inv = generalized_inverse(expansive, -1.0, tol)
    prod = hermitian_part(expansive * inv)
    vals = _descending_clamped(prod, tol)
    diag_sorted = np.sort(np.real(np.diagonal(expansive)))[::-1]
    worst_e = math.inf
    for jj in range(n):
        if 2 * jj + 1 > n:
            break
        worst_e = min(worst_e, diag_sorted[jj] - vals[2 * jj])

    top = operator_norm(sm, tol)
    contractive = sm / (top * (1.0 + 1e-12)) if top > 0 else sm
    prod_c = hermitian_part(contractive * contractive)
    vals_c = _descending_clamped(prod_c, tol)
    diag_c = np.sort(np.real(np.diagonal(contractive)))[::-1]
    worst_c = math.inf
    for jj in range(n):
        if 2 * jj + 1 > n:
            break
        worst_c = min(worst_c, diag_c[jj] - vals_c[2 * jj])
    slack = t.abs * (1.0 + float(diag_sorted[0]))
    return SchurRemarkReport(
        passed=bool(worst_e >= -slack and worst_c >= -slack),
        worst_margin_expansive=worst_e,
        worst_margin_contractive=worst_c,
    )


@dataclass(frozen=True)
class Example28Report:
    """Determinant gap for the transpose-augmented map on the 2x2 shift."""

    passed: bool
    det_lhs: float
    det_rhs_min: float
    det_rhs_max: float
    pairs: int


def reproduce_counterexample_2_8(
    pairs: int = 100, seed: int = 2026, tol: Optional[Tolerance] = None
) -> Example28Report:
    """det |phi(Z)| = 25 > 16 = det of the mixed geometric mean, for every
    unitary conjugation pair, with phi(X) = X + X^T and Z the (4,1)-shift."""
    from .ensembles import GeneratorConfig, generate_with_rng
    from .posmap import IdentityMap, MapSum, TransposeMap

    rng = np.random.default_rng(seed)
    z = np.array([[0.0, 4.0], [1.0, 0.0]], dtype=complex)
    phi = MapSum(terms=(IdentityMap(2), TransposeMap(2)))
    lhs_vals = _descending_clamped(modulus(apply(phi, z), tol), tol)
    det_lhs = float(np.prod(lhs_vals))
    phi_mod = hermitian_part(apply(phi, modulus(z, tol)))
    phi_comod = hermitian_part(apply(phi, comodulus(z, tol)))
    haar = GeneratorConfig(ensemble="haar_unitary")
    det_rhss = []
    ok = abs(det_lhs - 25.0) <= 1e-9 * 25.0
    for _ in range(pairs):
        u = generate_with_rng(haar, 2, rng)
        v = generate_with_rng(haar, 2, rng)
        mean, _ = geometric_mean_ex(
            hermitian_part(u @ phi_mod @ u.conj().T),
            hermitian_part(v @ phi_comod @ v.conj().T),
            tol,
        )
        det_rhs = float(np.prod(eigh(mean, tol).values))
        det_rhss.append(det_rhs)
        if abs(det_rhs - 16.0) > 1e-9 * 16.0:
            ok = False
    det_min, det_max = float(min(det_rhss)), float(max(det_rhss))
    ok = ok and det_lhs > det_max
    return Example28Report(
        passed=bool(ok), det_lhs=det_lhs, det_rhs_min=det_min, det_rhs_max=det_max, pairs=pairs
    )


@dataclass(frozen=True)
class SharpnessReport:
    """Sharpness probe for the scaled bound on the 2x2 weighted shift."""

    passed: bool
    k: float
    rho: float
    bracket_lhs: float
    required_constant: float
    scaled_certificate: Certificate


def reproduce_sharpness_cor2_5(k: float, tol: Optional[Tolerance] = None) -> SharpnessReport:
    """With Z = [[0, 1], [k, 0]] and the transpose map: rho = k, the e2 bracket
    of |Z^T| equals k, the minimal admissible constant is at least sqrt(k), and
    the sqrt(rho)-prefactored bound itself passes."""
    from .posmap import TransposeMap

    if not k > 0:
        raise ValueError("k must be positive")
    z = np.array([[0.0, 1.0], [float(k), 0.0]], dtype=complex)
    phi = TransposeMap(2)
    mod = modulus(z, tol)
    comod = comodulus(z, tol)
    rho = spectral_radius_psd_product(comod, generalized_inverse(mod, -1.0, tol), tol)

    v, lhs = _polar_witness_and_modulus(apply(phi, z), tol)
    e2 = np.zeros(2)
    e2[1] = 1.0
    bracket_lhs = float(np.real(e2 @ lhs @ e2))

    phi_mod = hermitian_part(apply(phi, mod))
    mean, used_limit = geometric_mean_ex(
        phi_mod, hermitian_part(v @ phi_mod @ v.conj().T), tol
    )
    bracket_rhs = float(np.real(e2 @ mean @ e2))
    required_c = bracket_lhs / bracket_rhs if bracket_rhs > 0 else math.inf

    rhs_scaled = hermitian_part(math.sqrt(rho) * mean)
    inputs = _std_inputs(phi, z, k=float(k))
    cert = _certificate(
        "reproduce_sharpness_cor2_5",
        inputs,
        lhs,
        rhs_scaled,
        v,
        tol,
        used_limit=used_limit,
        notes=f"rho={rho:.12g}, required_c={required_c:.12g}",
    )
    ok = (
        abs(rho - k) <= 1e-10 * max(1.0, k)
        and abs(bracket_lhs - k) <= 1e-9 * max(1.0, k)
        and required_c >= math.sqrt(k) * (1.0 - 1e-6)
        and cert.passed
    )
    return SharpnessReport(
        passed=bool(ok),
        k=float(k),
        rho=rho,
        bracket_lhs=bracket_lhs,
        required_constant=required_c,
        scaled_certificate=cert,
    )


@dataclass(frozen=True)
class CexWitness:
    trial_index: int
    matrix: np.ndarray
    margin: float


@dataclass(frozen=True)
class CexSearchReport:
    """Witnesses that the Cartesian-sum bounds fail in the operator norm,
    while the spectral-radius and congruence-norm bounds never do."""

    trials: int
    seed: int
    dim: int
    loewner_witness: Optional[CexWitness]
    half_power_witness: Optional[CexWitness]
    plain_norm_witness: Optional[CexWitness]
    consistency_ok: bool
    worst_rho: float
    worst_congruence_norm: float

    @property
    def all_found(self) -> bool:
        return (
            self.loewner_witness is not None
            and self.half_power_witness is not None
            and self.plain_norm_witness is not None
        )


def find_counterexamples_remarks(
    trials: int, seed: int, dim: int = 2, tol: Optional[Tolerance] = None
) -> CexSearchReport:
    """Random search for the three expected failures on K = |X| + |Y|:
    |Z| <= K in the Loewner order, contractivity of |Z|^1/2 K^-1/2, and
    contractivity of Z K^-1. Every sample is simultaneously validated against
    the two statements that do hold (congruence norm and spectral radius).
    Raises SearchExhausted when a target is not found within the trials.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(seed)
    found_a: Optional[CexWitness] = None
    found_b: Optional[CexWitness] = None
    found_c: Optional[CexWitness] = None
    consistency_ok = True
    worst_rho = 0.0
    worst_norm = 0.0
    margin = 1e-6
    for trial in range(trials):
        zm = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / math.sqrt(2)
        parts = cartesian(zm)
        k_sum = hermitian_part(modulus(parts.re_part, tol) + modulus(parts.im_part, tol))
        mod = modulus(zm, tol)
        if found_a is None:
            dec = loewner_leq(mod, k_sum, tol)
            if dec.slack < -margin:
                found_a = CexWitness(trial_index=trial, matrix=zm, margin=-dec.slack)
        k_inv_half = generalized_inverse(k_sum, -0.5, tol)
        if found_b is None:
            half_norm = operator_norm(
                generalized_inverse(mod, 0.5, tol) @ k_inv_half, tol
            )
            if half_norm > 1.0 + margin:
                found_b = CexWitness(trial_index=trial, matrix=zm, margin=half_norm - 1.0)
        if found_c is None:
            plain_norm = operator_norm(zm @ generalized_inverse(k_sum, -1.0, tol), tol)
            if plain_norm > 1.0 + margin:
                found_c = CexWitness(trial_index=trial, matrix=zm, margin=plain_norm - 1.0)
        cong_norm = operator_norm(k_inv_half @ zm @ k_inv_half, tol)
        rho = spectral_radius(zm @ generalized_inverse(k_sum, -1.0, tol))
        worst_rho = max(worst_rho, rho)
        worst_norm = max(worst_norm, cong_norm)
        if cong_norm > 1.0 + margin or rho > 1.0 + margin:
            consistency_ok = False
        if found_a is not None and found_b is not None and found_c is not None and trial >= 99:
            break
    report = CexSearchReport(
        trials=trials,
        seed=seed,
        dim=dim,
        loewner_witness=found_a,
        half_power_witness=found_b,
        plain_norm_witness=found_c,
        consistency_ok=consistency_ok,
        worst_rho=worst_rho,
        worst_congruence_norm=worst_norm,
    )
    if not report.all_found:
        missing = [
            name
            for name, w in (
                ("loewner", found_a),
                ("half_power", found_b),
                ("plain_norm", found_c),
            )
            if w is None
        ]
        raise SearchExhausted(f"targets not found within {trials} trials: {', '.join(missing)}")
    return report
