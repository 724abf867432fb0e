"""Decision procedures for unitary equivalence of Hilbert modules.

Two routes are implemented and must concur:

* :func:`compare_quotient` samples the three complete invariants of a rank-2
  quotient module (tangential curvature, transversal curvature, angle
  pairing) on a grid along the hypersurface and compares them pointwise.
* :func:`oracle_compare` compares the restricted normalized jet kernels
  coefficientwise, a stronger-looking criterion that the invariant theory
  proves equivalent; it serves as the independent check of the decision.

:func:`compare_b1` handles the rank-1 case over the full domain, where the
normalized kernel itself is a complete invariant.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from . import geometry as ge
from . import jets as je
from . import kernels as ke
from . import normalize as no
from . import series as se
from .errors import IncomparableError

#: Default tolerance for sampled invariant comparisons.
DEFAULT_COMPARE_TOL = 1e-8
#: Default tolerance for coefficientwise comparisons.
DEFAULT_ORACLE_TOL = 1e-10
#: Differences between tol and INCONCLUSIVE_FACTOR * tol refuse a verdict.
INCONCLUSIVE_FACTOR = 10.0

ISOMORPHIC = "isomorphic"
NOT_ISOMORPHIC = "not_isomorphic"
INCONCLUSIVE = "inconclusive"


def _complex_dict(value: complex) -> dict:
    return {"re": float(np.real(value)), "im": float(np.imag(value))}


@dataclass(frozen=True)
class QuotientModuleSpec:
    """Resolution data of a quotient module: kernel, hypersurface, jet order."""

    kernel: ke.KernelSpec
    hypersurface: se.HypersurfaceSpec = se.HypersurfaceSpec()
    order: int = 2
    radius: float = se.DEFAULT_RADIUS
    grid_count: int = ge.DEFAULT_GRID_COUNT

    def to_dict(self) -> dict:
        return {
            "kernel": ke.kernel_spec_to_dict(self.kernel),
            "hypersurface": se.hypersurface_to_dict(self.hypersurface),
            "order": self.order,
            "radius": self.radius,
            "grid": self.grid_count,
        }

    def canonical_key(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def quotient_spec_from_dict(data: dict) -> QuotientModuleSpec:
    return QuotientModuleSpec(
        kernel=ke.kernel_spec_from_dict(data["kernel"]),
        hypersurface=se.hypersurface_from_dict(data.get("hypersurface")),
        order=int(data.get("order", 2)),
        radius=float(data.get("radius", se.DEFAULT_RADIUS)),
        grid_count=int(data.get("grid", ge.DEFAULT_GRID_COUNT)),
    )


@dataclass(frozen=True)
class Verdict:
    """Outcome of an equivalence comparison."""

    outcome: str
    failed_condition: str  # "tan" | "trans" | "angle" | "none"
    witness: dict | None
    tolerance: float
    method: str
    details: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "outcome": self.outcome,
            "failed_condition": self.failed_condition,
            "witness": self.witness,
            "tolerance": self.tolerance,
            "method": self.method,
            "details": self.details,
        }


@dataclass(frozen=True, eq=False)
class ModulePipeline:
    """Everything derived from one quotient-module spec."""

    spec: QuotientModuleSpec
    kernel: se.SesquiSeries
    kernel0: se.SesquiSeries
    jet: je.JetKernel
    restricted: tuple[tuple[se.SesquiSeries, ...], ...]
    report: ge.InvariantReport


_PIPELINES: dict[str, ModulePipeline] = {}


def build_pipeline(spec: QuotientModuleSpec) -> ModulePipeline:
    """Build (and cache) the full invariant pipeline of one module."""
    key = spec.canonical_key()
    cached = _PIPELINES.get(key)
    if cached is not None:
        return cached
    spec.hypersurface.validate_dim(spec.kernel.dim)
    kernel = ke.realize_kernel(spec.kernel)
    kernel0 = no.normalize_kernel(kernel)
    jk = je.jet_kernel(kernel0, spec.order, spec.hypersurface)
    restricted = tuple(
        tuple(
            se.restrict_hypersurface(jk.entry(l, j), spec.hypersurface)
            for j in range(spec.order)
        )
        for l in range(spec.order)
    )
    report = ge.invariant_report(
        kernel0,
        spec.hypersurface,
        radius=spec.radius,
        grid_count=spec.grid_count,
        jk=jk,
    )
    pipeline = ModulePipeline(
        spec=spec,
        kernel=kernel,
        kernel0=kernel0,
        jet=jk,
        restricted=restricted,
        report=report,
    )
    _PIPELINES[key] = pipeline
    return pipeline


def _check_comparable(a: QuotientModuleSpec, b: QuotientModuleSpec) -> None:
    if a.kernel.dim != b.kernel.dim:
        raise IncomparableError(
            f"modules live in different dimensions: {a.kernel.dim} vs {b.kernel.dim}"
        )
    if a.kernel.cap != b.kernel.cap:
        raise IncomparableError("modules use different degree caps")
    if a.order != 2 or b.order != 2:
        raise IncomparableError("the decision procedure is limited to jet order 2")
    if a.radius != b.radius or a.grid_count != b.grid_count:
        raise IncomparableError("modules use different sampling grids")
    za, zb = a.hypersurface, b.hypersurface
    if za.normal_index != zb.normal_index or za.is_flat != zb.is_flat:
        raise IncomparableError("modules live over different hypersurfaces")
    if not za.is_flat and not np.array_equal(za.graph.coeffs, zb.graph.coeffs):
        raise IncomparableError("modules live over different hypersurfaces")


def _band(outcome_diff: float, tol: float) -> str:
    if outcome_diff <= tol:
        return ISOMORPHIC
    if outcome_diff <= INCONCLUSIVE_FACTOR * tol:
        return INCONCLUSIVE
    return NOT_ISOMORPHIC


def compare_quotient(
    a: QuotientModuleSpec,
    b: QuotientModuleSpec,
    tol: float = DEFAULT_COMPARE_TOL,
) -> Verdict:
    """Three-condition test for rank-2 quotient modules on the common grid.

    Conditions are checked in the order tan, trans, angle; the first hard
    violation is reported with the grid point of largest difference.
    Differences inside (tol, 10 tol] yield an inconclusive verdict rather
    than an over-claim near the noise floor.
    """
    _check_comparable(a, b)
    pa = build_pipeline(a)
    pb = build_pipeline(b)
    ra, rb = pa.report, pb.report

    diffs = {
        "tan": np.max(np.abs(ra.k_tan - rb.k_tan).reshape(ra.count, -1), axis=1),
        "trans": np.abs(ra.k_trans - rb.k_trans),
        "angle": np.abs(ra.angle - rb.angle),
    }
    values = {
        "tan": (ra.k_tan, rb.k_tan),
        "trans": (ra.k_trans, rb.k_trans),
        "angle": (ra.angle, rb.angle),
    }
    details = {
        "max_diff": {cond: float(d.max()) for cond, d in diffs.items()},
        "grid_count": ra.count,
    }

    borderline: str | None = None
    for cond in ("tan", "trans", "angle"):
        max_diff = float(diffs[cond].max())
        state = _band(max_diff, tol)
        if state == NOT_ISOMORPHIC:
            p = int(np.argmax(diffs[cond]))
            va, vb = values[cond]
            if cond == "tan":
                flat = np.abs(va[p] - vb[p]).ravel()
                entry = int(np.argmax(flat))
                i, j = np.unravel_index(entry, va[p].shape)
                value_a, value_b = va[p][i, j], vb[p][i, j]
                extra = {"entry": [int(i) + 1, int(j) + 1]}
            else:
                value_a, value_b = va[p], vb[p]
                extra = {}
            witness = {
                "point": [_complex_dict(c) for c in ra.points[p]],
                "value_a": _complex_dict(value_a),
                "value_b": _complex_dict(value_b),
                "difference": max_diff,
                **extra,
            }
            return Verdict(
                outcome=NOT_ISOMORPHIC,
                failed_condition=cond,
                witness=witness,
                tolerance=tol,
                method="invariants",
                details=details,
            )
        if state == INCONCLUSIVE and borderline is None:
            borderline = cond
    if borderline is not None:
        return Verdict(
            outcome=INCONCLUSIVE,
            failed_condition=borderline,
            witness=None,
            tolerance=tol,
            method="invariants",
            details=details,
        )
    return Verdict(
        outcome=ISOMORPHIC,
        failed_condition="none",
        witness=None,
        tolerance=tol,
        method="invariants",
        details=details,
    )


def oracle_compare(
    a: QuotientModuleSpec,
    b: QuotientModuleSpec,
    tol: float = DEFAULT_ORACLE_TOL,
) -> Verdict:
    """Coefficientwise comparison of the restricted normalized jet kernels.

    Isomorphism forces these four series to coincide outright, so agreement
    of this check with :func:`compare_quotient` is the desk-scale validation
    of the invariant theory.
    """
    _check_comparable(a, b)
    pa = build_pipeline(a)
    pb = build_pipeline(b)

    worst = -1.0
    witness: dict | None = None
    per_entry = {}
    for l in range(2):
        for j in range(2):
            diff, *_ = se.coefficient_difference(
                pa.restricted[l][j], pb.restricted[l][j]
            )
            per_entry[f"{l}{j}"] = diff
            worst = max(worst, diff)
            if witness is None:
                # lowest-degree violating coefficient of the first bad entry
                hit = se.first_coeff_violation(
                    pa.restricted[l][j], pb.restricted[l][j], tol
                )
                if hit is not None:
                    alpha, beta, va, vb, delta = hit
                    witness = {
                        "entry": [l, j],
                        "alpha": list(alpha),
                        "beta": list(beta),
                        "value_a": _complex_dict(va),
                        "value_b": _complex_dict(vb),
                        "difference": delta,
                    }
    details = {"max_diff": {"jet_entries": worst, "per_entry": per_entry}}
    state = _band(worst, tol)
    if state == NOT_ISOMORPHIC:
        return Verdict(
            outcome=NOT_ISOMORPHIC,
            failed_condition="none",
            witness=witness,
            tolerance=tol,
            method="oracle",
            details=details,
        )
    if state == INCONCLUSIVE:
        return Verdict(
            outcome=INCONCLUSIVE,
            failed_condition="none",
            witness=None,
            tolerance=tol,
            method="oracle",
            details=details,
        )
    return Verdict(
        outcome=ISOMORPHIC,
        failed_condition="none",
        witness=None,
        tolerance=tol,
        method="oracle",
        details=details,
    )


# ---------------------------------------------------------------------------
# rank-1 comparison over the full domain
# ---------------------------------------------------------------------------

_OMEGA_DIRECTIONS = (
    (0.0, 0.0),
    (0.6, 0.0),
    (0.0, 0.6),
    (-0.45, 0.3),
    (0.3j, 0.3),
    (0.15, -0.45j),
    (0.3 + 0.3j, -0.15),
    (-0.2j, -0.5),
)


def domain_grid(dim: int, radius: float = se.DEFAULT_RADIUS) -> tuple[tuple[complex, ...], ...]:
    """Deterministic sample points in the full domain."""
    points = []
    for direction in _OMEGA_DIRECTIONS:
        padded = (direction + (0.0,) * dim)[:dim]
        points.append(tuple(radius * complex(c) for c in padded))
    return tuple(points)


def compare_b1(
    kernel_a: se.SesquiSeries,
    kernel_b: se.SesquiSeries,
    tol: float = DEFAULT_ORACLE_TOL,
    radius: float = se.DEFAULT_RADIUS,
    curvature_tol: float = 1e-9,
) -> Verdict:
    """Rank-1 module equivalence: normalized kernels must agree.

    The verdict comes from the coefficientwise comparison of the normalized
    kernels; the details also record whether the evaluated curvature forms
    agree on the domain grid, since the two criteria must concur.
    """
    if kernel_a.dim != kernel_b.dim or kernel_a.cap != kernel_b.cap:
        raise IncomparableError("kernels live on different series spaces")
    na = no.normalize_kernel(kernel_a)
    nb = no.normalize_kernel(kernel_b)
    diff = se.max_coeff_diff(na, nb)

    ca = ge.curvature_form(kernel_a)
    cb = ge.curvature_form(kernel_b)
    curv_diff = 0.0
    for point in domain_grid(kernel_a.dim, radius):
        for i in range(1, kernel_a.dim + 1):
            for j in range(1, kernel_a.dim + 1):
                delta = abs(
                    se.evaluate(ca.entry(i, j), point, point, radius=radius)
                    - se.evaluate(cb.entry(i, j), point, point, radius=radius)
                )
                curv_diff = max(curv_diff, delta)

    details = {
        "max_diff": {"normalized_coefficients": diff, "curvature_on_grid": curv_diff},
        "curvature_agrees": curv_diff <= curvature_tol,
    }
    state = _band(diff, tol)
    witness = None
    if state == NOT_ISOMORPHIC:
        witness = {
            "alpha": list(alpha),
            "beta": list(beta),
            "value_a": _complex_dict(va),
            "value_b": _complex_dict(vb),
            "difference": diff,
        }
    return Verdict(
        outcome=state,
        failed_condition="none",
        witness=witness,
        tolerance=tol,
        method="b1-normalized",
        details=details,
    )


# ---------------------------------------------------------------------------
# built-in corpus
# ---------------------------------------------------------------------------

GAUGE_FACTORS: dict[str, tuple[tuple[tuple[int, ...], complex], ...]] = {
    "one_plus_z1": (((0, 0), 1.0 + 0j), ((1, 0), 0.3 + 0j)),
    "one_plus_z2sq": (((0, 0), 1.0 + 0j), ((0, 2), 0.1 + 0j)),
    "constant_two": (((0, 0), 2.0 + 0j),),
}


def _exp_matrix(eps: float) -> tuple[tuple[complex, ...], ...]:
    return ((1.0 + 0j, eps + 0j), (eps + 0j, 1.0 + 0j))


def builtin_corpus(
    cap: int = 12,
    radius: float = se.DEFAULT_RADIUS,
    grid_count: int = ge.DEFAULT_GRID_COUNT,
) -> dict[str, QuotientModuleSpec]:
    """Named quotient-module specs used throughout the test suite."""

    def spec(kind, **kw):
        return QuotientModuleSpec(
            kernel=ke.KernelSpec(kind=kind, dim=2, cap=cap, **kw),
            radius=radius,
            grid_count=grid_count,
        )

    return {
        "product_1_1": spec("product_power", lam=1.0, mu=1.0),
        "product_2_1": spec("product_power", lam=2.0, mu=1.0),
        "product_1_2": spec("product_power", lam=1.0, mu=2.0),
        "product_2_3": spec("product_power", lam=2.0, mu=3.0),
        "ball_1": spec("ball_power", lam=1.0),
        "ball_2": spec("ball_power", lam=2.0),
        "exp_0.1": spec("exp_quadratic", matrix=_exp_matrix(0.1)),
        "exp_-0.1": spec("exp_quadratic", matrix=_exp_matrix(-0.1)),
        "exp_0.2": spec("exp_quadratic", matrix=_exp_matrix(0.2)),
        "product_2_3_gauged": spec(
            "product_power", lam=2.0, mu=3.0, gauge=GAUGE_FACTORS["one_plus_z1"]
        ),
        "ball_1_gauged": spec(
            "ball_power", lam=1.0, gauge=GAUGE_FACTORS["one_plus_z2sq"]
        ),
        "exp_0.1_gauged": spec(
            "exp_quadratic", matrix=_exp_matrix(0.1), gauge=GAUGE_FACTORS["constant_two"]
        ),
    }


#: Ordered pairs on which the two decision routes are required to agree.
CONCORDANCE_PAIRS: tuple[tuple[str, str], ...] = (
    ("product_1_1", "product_1_1"),
    ("product_2_3", "product_2_3_gauged"),
    ("product_2_3_gauged", "product_2_3"),
    ("ball_1", "ball_1_gauged"),
    ("exp_0.1", "exp_0.1_gauged"),
    ("product_1_1", "product_2_1"),
    ("product_1_1", "product_1_2"),
    ("product_2_1", "product_1_2"),
    ("product_1_1", "ball_1"),
    ("ball_1", "ball_2"),
    ("exp_0.1", "exp_-0.1"),
    ("exp_0.1", "exp_0.2"),
)
