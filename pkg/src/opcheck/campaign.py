"""Campaign orchestration: seeded instance generation, trial execution,
deterministic report assembly.

Each trial derives its own RNG from (seed, trial index), so reports are
byte-identical for identical specs regardless of execution order, and any
single trial can be regenerated in isolation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import List, Optional, Sequence

import numpy as np

from . import checks as C
from .checks import Certificate, FunPair
from .decompose import svd_square
from .ensembles import GeneratorConfig, generate_with_rng
from .errors import InstanceGenerationFailure, InvalidSpec
from .io import dump_json, matrix_to_json, matrix_from_json, tolerance_from_json, tolerance_to_json
from .linalg import Tolerance, eigh, hermitian_part
from .means import MajorizationReport, kato_supremum, q_mean
from .posmap import (
    Congruence,
    IdentityMap,
    KrausSum,
    MapCompose,
    MapSum,
    PartialTrace2x2,
    PosMap,
    SchurMultiplier,
    TransposeMap,
    map_from_json,
    map_to_json,
)

__all__ = [
    "CHECK_IDS",
    "MAP_FAMILIES",
    "CampaignSpec",
    "CampaignReport",
    "Instance",
    "make_instance",
    "run_instance",
    "run_campaign",
    "write_report",
]

CHECK_IDS = (
    "check_russo_dye",
    "check_arithmetic_domination",
    "check_geometric_domination",
    "check_two_positive_split",
    "check_log_majorization",
    "check_eigenvalue_gaps",
    "check_reverse_product",
    "check_cartesian_suite",
)

MAP_FAMILIES = (
    "kraus_sum",
    "schur_multiplier",
    "congruence",
    "identity",
    "partial_trace_2x2",
    "transpose_plus_identity",
    "compose",
)

_CP_FAMILIES = (
    "kraus_sum",
    "schur_multiplier",
    "congruence",
    "identity",
    "partial_trace_2x2",
    "compose",
)

FUNPAIR_KINDS = ("power", "range", "scaled")

_SPLIT_EXPONENTS = (-1.0, -0.5, 0.0, 0.5, 1.0)


@dataclass(frozen=True)
class CampaignSpec:
    """What to run: one check id, dimension pools, trial count, seed, subsets."""

    check_id: str
    n_dims: Sequence[int] = (2, 3, 4, 5, 6)
    m_dims: Sequence[int] = (2, 3, 4, 5, 6)
    trials: int = 1000
    seed: int = 0
    map_families: Sequence[str] = MAP_FAMILIES
    funpair_kinds: Sequence[str] = FUNPAIR_KINDS
    tolerances: Tolerance = field(default_factory=lambda: Tolerance(abs=1e-8, rel=1e-8, rank_cutoff=6e-12))
    output_path: Optional[str] = None
    split_exponent: Optional[float] = None

    def validate(self) -> None:
        if self.check_id not in CHECK_IDS:
            raise InvalidSpec(f"unknown check_id {self.check_id!r}")
        if self.trials < 1:
            raise InvalidSpec("trials must be >= 1")
        if not self.n_dims or any(d < 1 for d in self.n_dims):
            raise InvalidSpec("n_dims must be nonempty positive")
        if not self.m_dims or any(d < 1 for d in self.m_dims):
            raise InvalidSpec("m_dims must be nonempty positive")
        bad = set(self.map_families) - set(MAP_FAMILIES)
        if bad:
            raise InvalidSpec(f"unknown map families {sorted(bad)}")
        bad = set(self.funpair_kinds) - set(FUNPAIR_KINDS)
        if bad:
            raise InvalidSpec(f"unknown funpair kinds {sorted(bad)}")

    def to_json(self) -> dict:
        return {
            "check_id": self.check_id,
            "n": list(self.n_dims),
            "m": list(self.m_dims),
            "trials": self.trials,
            "seed": self.seed,
            "map_families": list(self.map_families),
            "funpair_kinds": list(self.funpair_kinds),
            "tolerances": tolerance_to_json(self.tolerances),
            "output_path": self.output_path,
            "split_exponent": self.split_exponent,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "CampaignSpec":
        spec = cls(
            check_id=obj["check_id"],
            n_dims=tuple(obj.get("n", (2, 3, 4, 5, 6))),
            m_dims=tuple(obj.get("m", (2, 3, 4, 5, 6))),
            trials=int(obj.get("trials", 1000)),
            seed=int(obj.get("seed", 0)),
            map_families=tuple(obj.get("map_families", MAP_FAMILIES)),
            funpair_kinds=tuple(obj.get("funpair_kinds", FUNPAIR_KINDS)),
            tolerances=tolerance_from_json(obj.get("tolerances"), dim=6),
            output_path=obj.get("output_path"),
            split_exponent=obj.get("split_exponent"),
        )
        spec.validate()
        return spec


@dataclass(frozen=True)
class Instance:
    """One generated check input set, serializable for replay."""

    check_id: str
    phi: PosMap
    z: Optional[np.ndarray] = None
    j: Optional[np.ndarray] = None
    funpair: Optional[FunPair] = None
    contraction: Optional[np.ndarray] = None
    split_exponent: Optional[float] = None

    def to_json(self) -> dict:
        out = {"check_id": self.check_id, "phi": map_to_json(self.phi)}
        if self.z is not None:
            out["Z"] = matrix_to_json(self.z)
        if self.j is not None:
            out["J"] = matrix_to_json(self.j)
        if self.funpair is not None:
            out["funpair"] = self.funpair.to_json()
        if self.contraction is not None:
            out["A"] = matrix_to_json(self.contraction)
        if self.split_exponent is not None:
            out["p"] = self.split_exponent
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "Instance":
        return cls(
            check_id=obj["check_id"],
            phi=map_from_json(obj["phi"]),
            z=matrix_from_json(obj["Z"]) if "Z" in obj else None,
            j=matrix_from_json(obj["J"]) if "J" in obj else None,
            funpair=FunPair.from_json(obj["funpair"]) if "funpair" in obj else None,
            contraction=matrix_from_json(obj["A"]) if "A" in obj else None,
            split_exponent=obj.get("p"),
        )


def _choice(rng: np.random.Generator, items: Sequence) -> object:
    return items[int(rng.integers(len(items)))]


def _random_map(
    family: str, n: int, m_pool: Sequence[int], rng: np.random.Generator
) -> PosMap:
    """A random map of the family with input dimension n; output dimension is
    drawn from the pool where the family allows it. Structures are chosen so
    PD inputs keep PD images (full Kraus rank, tall congruences avoided)."""
    if family == "kraus_sum":
        m = int(_choice(rng, m_pool))
        r = max(1, -(-m // n)) + int(rng.integers(0, 2))
        ops = tuple(
            (rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))) / math.sqrt(n * r)
            for _ in range(r)
        )
        return KrausSum(kraus=ops)
    if family == "schur_multiplier":
        g = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(n)
        return SchurMultiplier(hermitian_part(g @ g.conj().T) + 0.05 * np.eye(n))
    if family == "congruence":
        m = min(int(_choice(rng, m_pool)), n)
        k = (rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))) / math.sqrt(n)
        return Congruence(k)
    if family == "identity":
        return IdentityMap(n)
    if family == "partial_trace_2x2":
        if n % 2 != 0:
            return IdentityMap(n)
        return PartialTrace2x2(block_dim=n // 2)
    if family == "transpose_plus_identity":
        return MapSum(terms=(IdentityMap(n), TransposeMap(n)))
    if family == "compose":
        m = min(int(_choice(rng, m_pool)), n)
        k = (rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))) / math.sqrt(n)
        inner = Congruence(k)
        r = 2
        ops = tuple(
            (rng.standard_normal((m, m)) + 1j * rng.standard_normal((m, m))) / math.sqrt(m * r)
            for _ in range(r)
        )
        return MapCompose(outer=KrausSum(kraus=ops), inner=inner)
    raise InvalidSpec(f"unknown family {family!r}")


def _random_z(rng: np.random.Generator, n: int) -> np.ndarray:
    kind = int(rng.integers(4))
    if kind == 0:
        cfg = GeneratorConfig(ensemble="random_normal_matrix")
    elif kind == 1:
        cfg = GeneratorConfig(ensemble="random_semi_hyponormal")
    elif kind == 2:
        cfg = GeneratorConfig(ensemble="random_contraction")
    else:
        cfg = GeneratorConfig(ensemble="ginibre")
    return generate_with_rng(cfg, n, rng)


def _funpair_and_j(
    kind: str, z: np.ndarray, tol: Tolerance, rng: np.random.Generator
) -> Optional[tuple]:
    """Build (funpair, J) satisfying the domination hypothesis by construction,
    sharing one SVD of Z across the modulus data. None means resample Z."""
    n = z.shape[0]
    parts = svd_square(z, tol)
    sig = parts.values
    smax = float(sig.max()) if sig.size else 0.0
    if smax == 0.0:
        return None
    cutoff = tol.rank_cutoff * smax
    if kind == "power":
        fp = FunPair.power(float(rng.uniform(-0.75, 0.75)))
    elif kind == "range":
        fp = FunPair.range_pair()
    else:
        if float(sig.min()) <= cutoff:
            return None  # scaled pair needs an invertible modulus
        inv_half = (parts.right * sig**-0.5) @ parts.right.conj().T
        comod = hermitian_part((parts.left * sig) @ parts.left.conj().T)
        rho = float(eigh(hermitian_part(inv_half @ comod @ inv_half), tol).values[0])
        fp = FunPair.scaled(max(rho, 1e-8))
    f_vals = fp.f_sigma(sig, cutoff)
    g_vals = fp.g_sigma(sig, cutoff)
    f_mod = hermitian_part((parts.right * f_vals) @ parts.right.conj().T)
    g_comod = hermitian_part((parts.left * g_vals) @ parts.left.conj().T)
    if fp.kind == "scaled":
        j = f_mod.copy()
        if rng.uniform() < 0.3:
            j = hermitian_part(j + generate_with_rng(GeneratorConfig(ensemble="wishart_psd"), n, rng))
        return fp, j
    modes = ["sum", "sum_plus_psd", "scaled_identity"]
    if fp.kind == "power" and fp.p == 0.0:
        modes += ["qmean", "kato"]
    mode = str(_choice(rng, modes))
    if mode == "sum":
        j = hermitian_part(f_mod + g_comod)
    elif mode == "sum_plus_psd":
        j = hermitian_part(
            f_mod + g_comod + generate_with_rng(GeneratorConfig(ensemble="wishart_psd"), n, rng)
        )
    elif mode == "scaled_identity":
        lam = max(float(f_vals.max()), float(g_vals.max()))
        j = (lam * (1.0 + rng.uniform(0.0, 1.0)) + 1e-6) * np.eye(n)
    elif mode == "qmean":
        j = q_mean(z, float(_choice(rng, (1.0, 2.0, 4.0))), tol)
    else:
        j = kato_supremum(z, tol)
    return fp, j


def make_instance(spec: CampaignSpec, trial: int) -> Instance:
    """Deterministically generate trial inputs satisfying the check's
    hypotheses; resamples (bounded) when a random draw violates them."""
    rng = np.random.default_rng([spec.seed, trial])
    families = spec.map_families
    if spec.check_id == "check_two_positive_split":
        families = tuple(f for f in families if f in _CP_FAMILIES) or _CP_FAMILIES
    for _attempt in range(20):
        family = str(_choice(rng, families))
        n = int(_choice(rng, spec.n_dims))
        if family == "partial_trace_2x2":
            evens = [d for d in spec.n_dims if d % 2 == 0]
            if evens:
                n = int(_choice(rng, evens))
        phi = _random_map(family, n, spec.m_dims, rng)
        if spec.check_id == "check_russo_dye":
            a = generate_with_rng(GeneratorConfig(ensemble="random_contraction"), n, rng)
            return Instance(check_id=spec.check_id, phi=phi, contraction=a)
        z = _random_z(rng, n)
        if spec.check_id == "check_two_positive_split":
            p = (
                spec.split_exponent
                if spec.split_exponent is not None
                else _SPLIT_EXPONENTS[trial % len(_SPLIT_EXPONENTS)]
            )
            return Instance(check_id=spec.check_id, phi=phi, z=z, split_exponent=float(p))
        if spec.check_id == "check_cartesian_suite":
            return Instance(check_id=spec.check_id, phi=phi, z=z)
        built = _funpair_and_j(str(_choice(rng, spec.funpair_kinds)), z, spec.tolerances, rng)
        if built is None:
            continue
        fp, j = built
        if C.domination_holds(z, j, fp, spec.tolerances):
            return Instance(check_id=spec.check_id, phi=phi, z=z, j=j, funpair=fp)
    raise InstanceGenerationFailure(
        f"could not satisfy hypotheses for {spec.check_id} at trial {trial}"
    )


def _outcome_json(result) -> dict:
    if isinstance(result, Certificate):
        return result.to_json_dict()
    if isinstance(result, MajorizationReport):
        return {
            "pass": bool(result.passed),
            "k_products_lhs": [float(x) for x in result.k_products_lhs],
            "k_products_rhs": [float(x) for x in result.k_products_rhs],
            "worst_ratio": float(result.worst_ratio),
        }
    if isinstance(result, C.GapReport):
        return {
            "pass": bool(result.passed),
            "checked": result.checked,
            "worst_margin": float(result.worst_margin),
            "notes": result.notes,
        }
    if isinstance(result, C.ReverseProductReport):
        return {
            "pass": bool(result.passed),
            "products_lhs_squared": [float(x) for x in result.products_lhs_squared],
            "products_mixed": [float(x) for x in result.products_mixed],
            "worst_ratio": float(result.worst_ratio),
        }
    if isinstance(result, C.CartesianReport):
        return {
            "pass": bool(result.passed),
            "mean_certificate": result.mean_certificate.to_json_dict(),
            "majorization": _outcome_json(result.majorization),
            "norm_value": float(result.norm_value),
            "rho_value": float(result.rho_value),
            "singular_cartesian_sum": bool(result.singular_cartesian_sum),
        }
    raise TypeError(f"cannot serialize outcome {type(result)!r}")


def _result_passed_and_slack(result) -> tuple:
    if isinstance(result, Certificate):
        return result.passed, result.slack
    if isinstance(result, MajorizationReport):
        return result.passed, 1.0 - result.worst_ratio
    if isinstance(result, C.GapReport):
        return result.passed, result.worst_margin
    if isinstance(result, C.ReverseProductReport):
        return result.passed, 1.0 - result.worst_ratio
    if isinstance(result, C.CartesianReport):
        return result.passed, result.mean_certificate.slack
    raise TypeError(f"unknown outcome {type(result)!r}")


def run_instance(inst: Instance, tol: Tolerance):
    """Dispatch one generated instance to its check."""
    cid = inst.check_id
    if cid == "check_russo_dye":
        return C.check_russo_dye(inst.phi, inst.contraction, tol)
    if cid == "check_arithmetic_domination":
        return C.check_arithmetic_domination(inst.phi, inst.z, inst.j, inst.funpair, tol)
    if cid == "check_geometric_domination":
        return C.check_geometric_domination(inst.phi, inst.z, inst.j, inst.funpair, tol)
    if cid == "check_two_positive_split":
        return C.check_two_positive_split(inst.phi, inst.z, inst.split_exponent, tol)
    if cid == "check_log_majorization":
        return C.check_log_majorization(inst.phi, inst.z, inst.j, inst.funpair, tol)
    if cid == "check_eigenvalue_gaps":
        return C.check_eigenvalue_gaps(inst.phi, inst.z, inst.j, inst.funpair, tol)
    if cid == "check_reverse_product":
        return C.check_reverse_product(inst.phi, inst.z, inst.j, inst.funpair, tol)
    if cid == "check_cartesian_suite":
        return C.check_cartesian_suite(inst.phi, inst.z, tol)
    raise InvalidSpec(f"unknown check_id {cid!r}")


@dataclass
class CampaignReport:
    spec: CampaignSpec
    outcomes: List[dict]
    trials_run: int
    failures: int
    near_misses: int
    min_slack: float
    aborted_instance: Optional[dict] = None

    def to_json(self) -> dict:
        return {
            "spec": self.spec.to_json(),
            "certificates": self.outcomes,
            "summary": {
                "trials": self.trials_run,
                "failures": self.failures,
                "near_misses": self.near_misses,
                "min_slack": self.min_slack,
                "seed": self.spec.seed,
            },
            "aborted_instance": self.aborted_instance,
        }


def run_campaign(spec: CampaignSpec, keep_outcomes: bool = True) -> CampaignReport:
    """Run every trial; abort on the first hard failure, keeping the
    serialized instance for replay."""
    spec.validate()
    outcomes: List[dict] = []
    failures = 0
    near = 0
    min_slack = math.inf
    aborted = None
    trials_run = 0
    for trial in range(spec.trials):
        inst = make_instance(spec, trial)
        result = run_instance(inst, spec.tolerances)
        passed, slack = _result_passed_and_slack(result)
        trials_run += 1
        min_slack = min(min_slack, slack)
        if keep_outcomes:
            outcomes.append(_outcome_json(result))
        if passed and slack < 0:
            near += 1
        if not passed:
            failures += 1
            aborted = inst.to_json()
            break
    return CampaignReport(
        spec=spec,
        outcomes=outcomes,
        trials_run=trials_run,
        failures=failures,
        near_misses=near,
        min_slack=float(min_slack) if trials_run else 0.0,
        aborted_instance=aborted,
    )


def write_report(report: CampaignReport, path: str) -> None:
    dump_json(report.to_json(), path)
