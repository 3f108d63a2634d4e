"""Positive linear maps as composable family descriptions.

Positivity class is metadata fixed by construction, never decided
algorithmically: each family carries the strongest class its algebra
guarantees (transposition is positive but not 2-positive; sums and
compositions inherit the weakest class among their parts). The sampling
falsifier exists to refute a misdeclared class, not to certify one.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

import numpy as np

from .errors import DimensionMismatch, NotPositiveSemidefinite
from .linalg import Tolerance, as_matrix, eigh, hermitian_part, require_hermitian, sqrtm_psd

__all__ = [
    "POSITIVE",
    "TWO_POSITIVE",
    "COMPLETELY_POSITIVE",
    "PosMap",
    "KrausSum",
    "SchurMultiplier",
    "TransposeMap",
    "PartialTrace2x2",
    "Congruence",
    "MapSum",
    "MapCompose",
    "IdentityMap",
    "apply",
    "compress_map",
    "ChoiMatrix",
    "choi_matrix",
    "FalsifierWitness",
    "sample_positivity_falsifier",
    "map_to_json",
    "map_from_json",
]

POSITIVE = "positive"
TWO_POSITIVE = "two_positive"
COMPLETELY_POSITIVE = "completely_positive"

_CLASS_RANK = {POSITIVE: 1, TWO_POSITIVE: 2, COMPLETELY_POSITIVE: 3}


def weakest_class(classes: Sequence[str]) -> str:
    return min(classes, key=lambda c: _CLASS_RANK[c])


class PosMap:
    """Base for positive linear map descriptions. Immutable after construction."""

    in_dim: int
    out_dim: int
    declared_class: str

    def apply(self, x: np.ndarray) -> np.ndarray:
        raise NotImplementedError

    def __call__(self, x) -> np.ndarray:
        return apply(self, x)


def apply(phi: PosMap, x) -> np.ndarray:
    """Evaluate the map on a matrix of its input dimension."""
    xm = as_matrix(x)
    if xm.shape != (phi.in_dim, phi.in_dim):
        raise DimensionMismatch(
            f"map expects {phi.in_dim}x{phi.in_dim} input, got {xm.shape}"
        )
    return phi.apply(xm)


@dataclass(frozen=True)
class KrausSum(PosMap):
    """X -> sum_i K_i X K_i*; completely positive by construction."""

    kraus: Tuple[np.ndarray, ...]
    in_dim: int = field(init=False)
    out_dim: int = field(init=False)
    declared_class: str = field(init=False, default=COMPLETELY_POSITIVE)

    def __post_init__(self):
        ops = tuple(as_matrix(k) for k in self.kraus)
        if not ops:
            raise ValueError("KrausSum needs at least one operator")
        rows, cols = ops[0].shape
        for k in ops:
            if k.shape != (rows, cols):
                raise DimensionMismatch("Kraus operators must share one shape")
        object.__setattr__(self, "kraus", ops)
        object.__setattr__(self, "in_dim", cols)
        object.__setattr__(self, "out_dim", rows)
        object.__setattr__(self, "declared_class", COMPLETELY_POSITIVE)

    def apply(self, x: np.ndarray) -> np.ndarray:
        out = np.zeros((self.out_dim, self.out_dim), dtype=complex)
        for k in self.kraus:
            out += k @ x @ k.conj().T
        return out


@dataclass(frozen=True)
class SchurMultiplier(PosMap):
    """T -> S o T entrywise with S PSD; completely positive."""

    factor: np.ndarray
    in_dim: int = field(init=False)
    out_dim: int = field(init=False)
    declared_class: str = field(init=False, default=COMPLETELY_POSITIVE)

    def __post_init__(self):
        s = require_hermitian(self.factor)
        es = eigh(s)
        if es.values.size and float(es.values[-1]) < -1e-9 * (1.0 + float(es.values[0])):
            raise NotPositiveSemidefinite("Schur factor must be PSD")
        object.__setattr__(self, "factor", s)
        object.__setattr__(self, "in_dim", s.shape[0])
        object.__setattr__(self, "out_dim", s.shape[0])
        object.__setattr__(self, "declared_class", COMPLETELY_POSITIVE)

    def apply(self, x: np.ndarray) -> np.ndarray:
        return self.factor * x


@dataclass(frozen=True)
class TransposeMap(PosMap):
    """X -> X^T; positive but not 2-positive."""

    dim: int
    in_dim: int = field(init=False)
    out_dim: int = field(init=False)
    declared_class: str = field(init=False, default=POSITIVE)

    def __post_init__(self):
        object.__setattr__(self, "in_dim", self.dim)
        object.__setattr__(self, "out_dim", self.dim)
        object.__setattr__(self, "declared_class", POSITIVE)

    def apply(self, x: np.ndarray) -> np.ndarray:
        return x.T.copy()


@dataclass(frozen=True)
class PartialTrace2x2(PosMap):
    """[[A, B], [C, D]] -> A + D on M_2(M_k); completely positive."""

    block_dim: int
    in_dim: int = field(init=False)
    out_dim: int = field(init=False)
    declared_class: str = field(init=False, default=COMPLETELY_POSITIVE)

    def __post_init__(self):
        object.__setattr__(self, "in_dim", 2 * self.block_dim)
        object.__setattr__(self, "out_dim", self.block_dim)
        object.__setattr__(self, "declared_class", COMPLETELY_POSITIVE)

    def apply(self, x: np.ndarray) -> np.ndarray:
        k = self.block_dim
        return x[:k, :k] + x[k:, k:]


@dataclass(frozen=True)
class Congruence(PosMap):
    """X -> K X K*; completely positive (a one-term Kraus sum)."""

    operator: np.ndarray
    in_dim: int = field(init=False)
    out_dim: int = field(init=False)
    declared_class: str = field(init=False, default=COMPLETELY_POSITIVE)

    def __post_init__(self):
        k = as_matrix(self.operator)
        object.__setattr__(self, "operator", k)
        object.__setattr__(self, "in_dim", k.shape[1])
        object.__setattr__(self, "out_dim", k.shape[0])
        object.__setattr__(self, "declared_class", COMPLETELY_POSITIVE)

    def apply(self, x: np.ndarray) -> np.ndarray:
        return self.operator @ x @ self.operator.conj().T


@dataclass(frozen=True)
class MapSum(PosMap):
    """Pointwise sum; takes the weakest class among the terms."""

    terms: Tuple[PosMap, ...]
    in_dim: int = field(init=False)
    out_dim: int = field(init=False)
    declared_class: str = field(init=False)

    def __post_init__(self):
        terms = tuple(self.terms)
        if not terms:
            raise ValueError("MapSum needs at least one term")
        n, m = terms[0].in_dim, terms[0].out_dim
        for t in terms:
            if (t.in_dim, t.out_dim) != (n, m):
                raise DimensionMismatch("sum terms must share dimensions")
        object.__setattr__(self, "terms", terms)
        object.__setattr__(self, "in_dim", n)
        object.__setattr__(self, "out_dim", m)
        object.__setattr__(self, "declared_class", weakest_class([t.declared_class for t in terms]))

    def apply(self, x: np.ndarray) -> np.ndarray:
        out = np.zeros((self.out_dim, self.out_dim), dtype=complex)
        for t in self.terms:
            out += t.apply(x)
        return out


@dataclass(frozen=True)
class MapCompose(PosMap):
    """outer after inner; takes the weakest class of the two."""

    outer: PosMap
    inner: PosMap
    in_dim: int = field(init=False)
    out_dim: int = field(init=False)
    declared_class: str = field(init=False)

    def __post_init__(self):
        if self.inner.out_dim != self.outer.in_dim:
            raise DimensionMismatch(
                f"cannot compose: inner out_dim {self.inner.out_dim} != outer in_dim {self.outer.in_dim}"
            )
        object.__setattr__(self, "in_dim", self.inner.in_dim)
        object.__setattr__(self, "out_dim", self.outer.out_dim)
        object.__setattr__(
            self,
            "declared_class",
            weakest_class([self.outer.declared_class, self.inner.declared_class]),
        )

    def apply(self, x: np.ndarray) -> np.ndarray:
        return self.outer.apply(self.inner.apply(x))


@dataclass(frozen=True)
class IdentityMap(PosMap):
    dim: int
    in_dim: int = field(init=False)
    out_dim: int = field(init=False)
    declared_class: str = field(init=False, default=COMPLETELY_POSITIVE)

    def __post_init__(self):
        object.__setattr__(self, "in_dim", self.dim)
        object.__setattr__(self, "out_dim", self.dim)
        object.__setattr__(self, "declared_class", COMPLETELY_POSITIVE)

    def apply(self, x: np.ndarray) -> np.ndarray:
        return x.copy()


def compress_map(phi: PosMap, j, tol: Optional[Tolerance] = None) -> PosMap:
    """Restrict the map through a PSD weight: X -> phi(J^1/2 X J^1/2)."""
    jm = require_hermitian(j, tol)
    if jm.shape[0] != phi.in_dim:
        raise DimensionMismatch(f"J has dim {jm.shape[0]}, map expects {phi.in_dim}")
    return MapCompose(outer=phi, inner=Congruence(sqrtm_psd(jm, tol)))


@dataclass(frozen=True)
class ChoiMatrix:
    """Block matrix [phi(E_ij)] over the matrix-unit basis; PSD iff phi is CP."""

    matrix: np.ndarray
    source: PosMap


def choi_matrix(phi: PosMap) -> ChoiMatrix:
    n, m = phi.in_dim, phi.out_dim
    out = np.zeros((n * m, n * m), dtype=complex)
    unit = np.zeros((n, n), dtype=complex)
    for i in range(n):
        for j in range(n):
            unit[i, j] = 1.0
            out[i * m : (i + 1) * m, j * m : (j + 1) * m] = phi.apply(unit)
            unit[i, j] = 0.0
    return ChoiMatrix(matrix=hermitian_part(out), source=phi)


@dataclass(frozen=True)
class FalsifierWitness:
    """A PSD input mapped to a non-PSD output by the amplified map."""

    level: int
    trial_index: int
    input_matrix: np.ndarray
    min_output_eigenvalue: float


def _amplified_apply(phi: PosMap, w: np.ndarray, level: int) -> np.ndarray:
    n, m = phi.in_dim, phi.out_dim
    out = np.zeros((level * m, level * m), dtype=complex)
    for bi in range(level):
        for bj in range(level):
            block = phi.apply(w[bi * n : (bi + 1) * n, bj * n : (bj + 1) * n])
            out[bi * m : (bi + 1) * m, bj * m : (bj + 1) * m] = block
    return out


def sample_positivity_falsifier(
    phi: PosMap,
    level: int,
    trials: int,
    seed: int,
    tol: Optional[Tolerance] = None,
) -> Optional[FalsifierWitness]:
    """Search random PSD inputs for one the amplified map sends outside the cone.

    Returns the first witness found, or None. Absence of a witness is evidence,
    not proof, of level-`level` positivity. Alternates rank-one and full-rank
    PSD draws; deterministic in the seed.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    if level not in (1, 2):
        raise ValueError("level must be 1 or 2")
    rng = np.random.default_rng(seed)
    d = level * phi.in_dim
    for trial in range(trials):
        if trial % 2 == 0:
            v = rng.standard_normal(d) + 1j * rng.standard_normal(d)
            w = np.outer(v, v.conj())
        else:
            g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
            w = g @ g.conj().T
        out = _amplified_apply(phi, w, level)
        es = eigh(hermitian_part(out))
        lam_min = float(es.values[-1])
        scale = float(np.abs(es.values).max()) if es.values.size else 0.0
        if lam_min < -1e-7 * (1.0 + scale):
            return FalsifierWitness(
                level=level,
                trial_index=trial,
                input_matrix=w,
                min_output_eigenvalue=lam_min,
            )
    return None


def _matrix_payload(m: np.ndarray) -> dict:
    from .io import matrix_to_json

    return matrix_to_json(m)


def map_to_json(phi: PosMap) -> dict:
    """Tagged-union JSON form mirroring the family tree."""
    base = {"in_dim": phi.in_dim, "out_dim": phi.out_dim, "class": phi.declared_class}
    if isinstance(phi, KrausSum):
        return {"family": "kraus_sum", "params": {"kraus": [_matrix_payload(k) for k in phi.kraus]}, **base}
    if isinstance(phi, SchurMultiplier):
        return {"family": "schur_multiplier", "params": {"factor": _matrix_payload(phi.factor)}, **base}
    if isinstance(phi, TransposeMap):
        return {"family": "transpose", "params": {"dim": phi.dim}, **base}
    if isinstance(phi, PartialTrace2x2):
        return {"family": "partial_trace_2x2", "params": {"block_dim": phi.block_dim}, **base}
    if isinstance(phi, Congruence):
        return {"family": "congruence", "params": {"operator": _matrix_payload(phi.operator)}, **base}
    if isinstance(phi, MapSum):
        return {"family": "sum", "params": {"terms": [map_to_json(t) for t in phi.terms]}, **base}
    if isinstance(phi, MapCompose):
        return {
            "family": "compose",
            "params": {"outer": map_to_json(phi.outer), "inner": map_to_json(phi.inner)},
            **base,
        }
    if isinstance(phi, IdentityMap):
        return {"family": "identity", "params": {"dim": phi.dim}, **base}
    raise TypeError(f"unknown map type {type(phi)!r}")


def map_from_json(data: dict) -> PosMap:
    from .io import matrix_from_json

    family = data["family"]
    params = data.get("params", {})
    if family == "kraus_sum":
        return KrausSum(kraus=tuple(matrix_from_json(k) for k in params["kraus"]))
    if family == "schur_multiplier":
        return SchurMultiplier(factor=matrix_from_json(params["factor"]))
    if family == "transpose":
        return TransposeMap(dim=int(params["dim"]))
    if family == "partial_trace_2x2":
        return PartialTrace2x2(block_dim=int(params["block_dim"]))
    if family == "congruence":
        return Congruence(operator=matrix_from_json(params["operator"]))
    if family == "sum":
        return MapSum(terms=tuple(map_from_json(t) for t in params["terms"]))
    if family == "compose":
        return MapCompose(outer=map_from_json(params["outer"]), inner=map_from_json(params["inner"]))
    if family == "identity":
        return IdentityMap(dim=int(params["dim"]))
    raise ValueError(f"unknown map family {family!r}")
