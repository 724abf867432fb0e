"""Curvature machinery and the sampled invariants along a hypersurface.

The curvature form of a kernel is the matrix of series -d_i dbar_j log K;
with the sign fixed this way the built-in families have negative diagonal
curvature, so the square roots appearing in the orthonormal-frame formulas
stay real.  The raw Hessian of log K (without the minus sign) is exposed
alongside, as is a rational-function route that avoids the series logarithm
entirely and serves as an internal cross-check.

Everything here works in straightened coordinates: the conormal direction of
the hypersurface is the coordinate named by its ``normal_index``, and graph
hypersurfaces enter only through restriction and point lifting.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import jets as je
from . import series as se
from .errors import InvalidOperandError, SignatureError

#: Default number of sample points along the hypersurface.
DEFAULT_GRID_COUNT = 16

_GOLDEN_ANGLE = 2.399963229728653


@dataclass(frozen=True, eq=False)
class CurvatureForm:
    """Matrix of series -d_i dbar_j log K in ambient coordinates."""

    dim: int
    entries: tuple[tuple[se.SesquiSeries, ...], ...]

    def entry(self, i: int, j: int) -> se.SesquiSeries:
        """Entry for derivative directions i, j (1-based coordinates)."""
        return self.entries[i - 1][j - 1]


def log_hessian(kernel: se.SesquiSeries) -> tuple[tuple[se.SesquiSeries, ...], ...]:
    """Raw entries +d_i dbar_j log K, without the curvature sign convention.

    Entries are truncated to their trusted degree, so evaluating them never
    sums the truncation-polluted top coefficients of the derivatives.
    """
    log_k = se.log_series(kernel)
    rows = []
    for i in range(1, kernel.dim + 1):
        di = se.differentiate(log_k, "z", i)
        rows.append(
            tuple(
                se.truncate_to_trusted(se.differentiate(di, "wbar", j))
                for j in range(1, kernel.dim + 1)
            )
        )
    return tuple(rows)


def curvature_form(kernel0: se.SesquiSeries) -> CurvatureForm:
    """Curvature form of a (normalized) kernel via the series logarithm."""
    hess = log_hessian(kernel0)
    entries = tuple(tuple(se.scale(h, -1.0) for h in row) for row in hess)
    return CurvatureForm(dim=kernel0.dim, entries=entries)


def curvature_form_rational(kernel0: se.SesquiSeries) -> CurvatureForm:
    """Curvature through -(K * d dbar K - dK * dbar K) / K**2.

    Independent of the series logarithm; used to cross-validate
    :func:`curvature_form`.
    """
    k2_inv = se.reciprocal_sesqui(se.multiply(kernel0, kernel0))
    d_z = [se.differentiate(kernel0, "z", i) for i in range(1, kernel0.dim + 1)]
    d_w = [se.differentiate(kernel0, "wbar", j) for j in range(1, kernel0.dim + 1)]
    rows = []
    for i in range(1, kernel0.dim + 1):
        row = []
        for j in range(1, kernel0.dim + 1):
            mixed = se.differentiate(d_z[i - 1], "wbar", j)
            numerator = se.multiply(kernel0, mixed) - se.multiply(
                d_z[i - 1], d_w[j - 1]
            )
            entry = se.scale(se.multiply(numerator, k2_inv), -1.0)
            row.append(se.truncate_to_trusted(entry))
        rows.append(tuple(row))
    return CurvatureForm(dim=kernel0.dim, entries=tuple(rows))


def split_curvature(
    form: CurvatureForm, z_spec: se.HypersurfaceSpec
) -> tuple[tuple[tuple[se.SesquiSeries, ...], ...], se.SesquiSeries]:
    """Split the restricted curvature into tangential and transversal parts.

    Returns (K_tan, K_trans): the (m-1) x (m-1) matrix of tangential entries
    and the single conormal entry, all restricted to the hypersurface.
    """
    n = z_spec.normal_index
    k_trans = se.restrict_hypersurface(form.entry(n, n), z_spec)
    tangential = [i for i in range(1, form.dim + 1) if i != n]
    k_tan = tuple(
        tuple(
            se.restrict_hypersurface(form.entry(i, j), z_spec) for j in tangential
        )
        for i in tangential
    )
    return k_tan, k_trans


def angle_invariant(
    jk: je.JetKernel,
    w,
    z_spec: se.HypersurfaceSpec,
    radius: float = se.DEFAULT_RADIUS,
) -> complex:
    """Gram pairing of the jet frame: the dbar-entry of JK on the diagonal.

    ``w`` may be given in ambient coordinates or as a tangential point of the
    hypersurface.
    """
    point = _ambient(z_spec, w, jk.kernel.dim)
    return se.evaluate(jk.entry(0, 1), point, point, radius=radius)


def frame_coefficients(
    kernel0: se.SesquiSeries,
    jk: je.JetKernel,
    z_spec: se.HypersurfaceSpec,
    w,
    radius: float = se.DEFAULT_RADIUS,
) -> tuple[complex, float]:
    """Coefficients (a, b) of the orthonormalized second frame vector.

    gamma_1 = a * e + b * dbar(e) with b real positive; both come from the
    transversal curvature and the angle pairing at w.
    """
    form = curvature_form(kernel0)
    _, k_trans = split_curvature(form, z_spec)
    return _frame_coefficients_from(kernel0, jk, k_trans, z_spec, w, radius)


def _frame_coefficients_from(
    kernel0: se.SesquiSeries,
    jk: je.JetKernel,
    k_trans: se.SesquiSeries,
    z_spec: se.HypersurfaceSpec,
    w,
    radius: float,
) -> tuple[complex, float]:
    wprime = _tangential(z_spec, w, kernel0.dim)
    point = z_spec.ambient_point(wprime, kernel0.dim)
    kt = transversal_value(k_trans, wprime, radius)
    norm_e = math.sqrt(se.evaluate(kernel0, point, point, radius=radius).real)
    pairing = se.evaluate(jk.entry(0, 1), point, point, radius=radius)
    root = (-kt) ** -0.5
    a = -pairing * root / norm_e**3
    b = root / norm_e
    return a, b


def transversal_value(
    k_trans: se.SesquiSeries, wprime, radius: float = se.DEFAULT_RADIUS
) -> float:
    """Evaluate the transversal curvature at a tangential point; must be < 0."""
    value = se.evaluate(k_trans, wprime, wprime, radius=radius)
    if value.real >= 0:
        raise SignatureError(
            f"transversal curvature {value.real:.6g} is not negative at {wprime}"
        )
    return value.real


def nilpotent_orth(
    kernel0: se.SesquiSeries,
    z_spec: se.HypersurfaceSpec,
    phi: se.HoloSeries,
    w,
    radius: float = se.DEFAULT_RADIUS,
) -> np.ndarray:
    """Nilpotent action on the fiber at w in the orthonormalized frame.

    The only nonzero entry is (1, 2) = (-K_trans)**(-1/2) * d(phi)(w).
    """
    form = curvature_form(kernel0)
    _, k_trans = split_curvature(form, z_spec)
    wprime = _tangential(z_spec, w, kernel0.dim)
    point = z_spec.ambient_point(wprime, kernel0.dim)
    kt = transversal_value(k_trans, wprime, radius)
    dphi = se.evaluate_holo(
        se.differentiate_holo(phi, z_spec.normal_index), point, radius=radius
    )
    out = np.zeros((2, 2), dtype=np.complex128)
    out[0, 1] = (-kt) ** -0.5 * dphi
    return out


# ---------------------------------------------------------------------------
# sampling grid
# ---------------------------------------------------------------------------

_GRID_DIRECTIONS = (
    0.0,
    0.5, -0.5, 1.0, -1.0,
    0.5j, -0.5j, 1.0j, -1.0j,
    0.5 + 0.5j, -0.5 + 0.5j, -0.5 - 0.5j, 0.5 - 0.5j,
    0.75, 0.75j, -0.75,
)


def hypersurface_grid(
    count: int = DEFAULT_GRID_COUNT, radius: float = se.DEFAULT_RADIUS
) -> tuple[complex, ...]:
    """Deterministic sample points for one tangential coordinate.

    The canonical 16 points are the origin, the four axis directions at half
    and full radius, the four diagonals at half radius, and three points at
    three-quarter radius.  Requests beyond 16 extend the list along a fixed
    golden-angle spiral; all points stay inside the radius.
    """
    if count < 1:
        raise InvalidOperandError("grid needs at least one point")
    points = [radius * c for c in _GRID_DIRECTIONS[:count]]
    k = 0
    while len(points) < count:
        k += 1
        rad = radius * (0.2 + 0.8 * ((k - 1) % 5) / 5)
        points.append(rad * cmath.exp(1j * _GOLDEN_ANGLE * k))
    return tuple(points)


def _tangential(z_spec: se.HypersurfaceSpec, w, dim: int) -> tuple[complex, ...]:
    """Coerce an ambient or tangential point to tangential coordinates."""
    w = tuple(complex(v) for v in np.atleast_1d(np.asarray(w, dtype=np.complex128)))
    if len(w) == dim - 1:
        return w
    if len(w) == dim:
        k = z_spec.normal_index - 1
        wprime = w[:k] + w[k + 1 :]
        expected = z_spec.ambient_point(wprime, dim)
        if abs(w[k] - expected[k]) > je.ON_SURFACE_TOL:
            raise InvalidOperandError(
                f"ambient point {w} does not lie on the hypersurface"
            )
        return wprime
    raise InvalidOperandError(
        f"point has length {len(w)}, expected {dim} (ambient) or {dim - 1}"
    )


def _ambient(z_spec: se.HypersurfaceSpec, w, dim: int) -> tuple[complex, ...]:
    return z_spec.ambient_point(_tangential(z_spec, w, dim), dim)


# ---------------------------------------------------------------------------
# invariant report
# ---------------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class InvariantReport:
    """Sampled invariants of one quotient module along its hypersurface."""

    dim: int
    radius: float
    points: tuple[tuple[complex, ...], ...]  # tangential coordinates
    k_trans: np.ndarray  # (npts,) float
    k_tan: np.ndarray  # (npts, dim-1, dim-1) complex
    angle: np.ndarray  # (npts,) complex
    b_norm: np.ndarray  # (npts,) float
    n_orth_12: np.ndarray  # (npts,) complex

    @property
    def count(self) -> int:
        return len(self.points)


def invariant_report(
    kernel0: se.SesquiSeries,
    z_spec: se.HypersurfaceSpec,
    radius: float = se.DEFAULT_RADIUS,
    grid_count: int = DEFAULT_GRID_COUNT,
    jk: je.JetKernel | None = None,
    phi: se.HoloSeries | None = None,
) -> InvariantReport:
    """Evaluate all invariants of a normalized kernel on the sampling grid.

    ``jk`` may be passed in when the jet kernel has already been built; the
    defining function defaults to z_normal - g(z').
    """
    dim = kernel0.dim
    z_spec.validate_dim(dim)
    if jk is None:
        jk = je.jet_kernel(kernel0, 2, z_spec)
    if phi is None:
        phi = z_spec.defining_function(dim, kernel0.cap)
    dphi = se.differentiate_holo(phi, z_spec.normal_index)

    form = curvature_form(kernel0)
    k_tan_series, k_trans_series = split_curvature(form, z_spec)

    grid = hypersurface_grid(grid_count, radius)
    points = tuple(
        (w2,) + (0j,) * (dim - 2) for w2 in grid
    )

    n = len(points)
    k_trans = np.zeros(n)
    k_tan = np.zeros((n, dim - 1, dim - 1), dtype=np.complex128)
    angle = np.zeros(n, dtype=np.complex128)
    b_norm = np.zeros(n)
    n_orth = np.zeros(n, dtype=np.complex128)
    for p, wprime in enumerate(points):
        ambient = z_spec.ambient_point(wprime, dim)
        k_trans[p] = transversal_value(k_trans_series, wprime, radius)
        for i in range(dim - 1):
            for j in range(dim - 1):
                k_tan[p, i, j] = se.evaluate(
                    k_tan_series[i][j], wprime, wprime, radius=radius
                )
        angle[p] = se.evaluate(jk.entry(0, 1), ambient, ambient, radius=radius)
        b_norm[p] = (-k_trans[p]) ** -0.5
        n_orth[p] = b_norm[p] * se.evaluate_holo(dphi, ambient, radius=radius)
    return InvariantReport(
        dim=dim,
        radius=radius,
        points=points,
        k_trans=k_trans,
        k_tan=k_tan,
        angle=angle,
        b_norm=b_norm,
        n_orth_12=n_orth,
    )
