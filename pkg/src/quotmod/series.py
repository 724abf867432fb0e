"""Truncated sesquiholomorphic power-series algebra.

A :class:`SesquiSeries` stores a truncated expansion

    s(z, w) = sum_{alpha, beta} c[alpha, beta] * z**alpha * conj(w)**beta

in ``m`` complex variables, with both index groups capped at a fixed total
degree.  A :class:`HoloSeries` is the one-sided analogue (gauge factors,
defining functions, graph functions).  Everything is immutable: operations
return new series, so values can be shared freely across threads.

Degree bookkeeping: every series carries a *trusted* degree.  Stored
coefficients above the trusted degree exist but may be polluted by earlier
truncation (each formal derivative consumes one degree of trust).
Coefficientwise comparisons only look below the trusted degree of both
operands.
"""
from __future__ import annotations

import cmath
from dataclasses import dataclass
from typing import Iterator, Literal, Mapping

import numpy as np

from ._basis import Basis, basis
from .errors import (
    EvaluationRadiusError,
    InvalidKernelError,
    InvalidOperandError,
    NotInvertibleError,
    SingularKernelError,
    TrustedDegreeError,
)

MultiIndex = tuple[int, ...]
Side = Literal["z", "wbar"]

#: Default certified evaluation radius (sup-norm) for truncated series.
DEFAULT_RADIUS = 0.3

#: Tolerance below which a coefficient matrix counts as exactly Hermitian.
HERMITIAN_TOL = 1e-12


def check_multi_index(alpha: MultiIndex, dim: int, cap: int) -> tuple[int, ...]:
    alpha = tuple(int(a) for a in alpha)
    if len(alpha) != dim:
        raise InvalidOperandError(f"multi-index {alpha} has length != dim {dim}")
    if any(a < 0 for a in alpha):
        raise InvalidOperandError(f"multi-index {alpha} has negative entries")
    if sum(alpha) > cap:
        raise InvalidOperandError(f"multi-index {alpha} exceeds degree cap {cap}")
    return alpha


def _freeze(arr: np.ndarray) -> np.ndarray:
    arr = np.ascontiguousarray(arr, dtype=np.complex128)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class HoloSeries:
    """Truncated holomorphic series sum_alpha c[alpha] * z**alpha."""

    dim: int
    cap: int
    coeffs: np.ndarray  # (basis size,) complex128, read-only
    trusted: int

    def __post_init__(self):
        b = basis(self.dim, self.cap)
        if self.coeffs.shape != (b.size,):
            raise InvalidOperandError(
                f"coefficient vector has shape {self.coeffs.shape}, expected ({b.size},)"
            )
        object.__setattr__(self, "coeffs", _freeze(self.coeffs))

    @property
    def basis(self) -> Basis:
        return basis(self.dim, self.cap)

    @property
    def constant(self) -> complex:
        return complex(self.coeffs[0])

    def coeff(self, alpha: MultiIndex) -> complex:
        alpha = check_multi_index(alpha, self.dim, self.cap)
        return complex(self.coeffs[self.basis.position[alpha]])

    def items(self) -> Iterator[tuple[MultiIndex, complex]]:
        """Nonzero coefficients in lexicographic index order."""
        for i, a in enumerate(self.basis.indices):
            c = self.coeffs[i]
            if c != 0:
                yield a, complex(c)


@dataclass(frozen=True, eq=False)
class SesquiSeries:
    """Truncated series sum c[alpha, beta] * z**alpha * conj(w)**beta."""

    dim: int
    cap: int
    coeffs: np.ndarray  # (basis size, basis size) complex128, read-only
    trusted: int

    def __post_init__(self):
        b = basis(self.dim, self.cap)
        if self.coeffs.shape != (b.size, b.size):
            raise InvalidOperandError(
                f"coefficient matrix has shape {self.coeffs.shape}, "
                f"expected ({b.size}, {b.size})"
            )
        object.__setattr__(self, "coeffs", _freeze(self.coeffs))

    @property
    def basis(self) -> Basis:
        return basis(self.dim, self.cap)

    @property
    def constant(self) -> complex:
        return complex(self.coeffs[0, 0])

    def coeff(self, alpha: MultiIndex, beta: MultiIndex) -> complex:
        alpha = check_multi_index(alpha, self.dim, self.cap)
        beta = check_multi_index(beta, self.dim, self.cap)
        b = self.basis
        return complex(self.coeffs[b.position[alpha], b.position[beta]])

    def items(self) -> Iterator[tuple[MultiIndex, MultiIndex, complex]]:
        """Nonzero coefficients in lexicographic (alpha, beta) order."""
        b = self.basis
        for i, a in enumerate(b.indices):
            row = self.coeffs[i]
            for j, be in enumerate(b.indices):
                c = row[j]
                if c != 0:
                    yield a, be, complex(c)

    def __add__(self, other: "SesquiSeries") -> "SesquiSeries":
        return add(self, other)

    def __sub__(self, other: "SesquiSeries") -> "SesquiSeries":
        return add(self, scale(other, -1.0))

    def __neg__(self) -> "SesquiSeries":
        return scale(self, -1.0)

    def __mul__(self, other):
        if isinstance(other, SesquiSeries):
            return multiply(self, other)
        return scale(self, other)

    __rmul__ = __mul__


@dataclass(frozen=True)
class HypersurfaceSpec:
    """Hypersurface Z through the origin in straightened coordinates.

    The coordinate ``normal_index`` (1-based) is transversal to Z.  With no
    graph, Z is the flat slice {z_normal = 0}; with a graph g (a HoloSeries
    in the remaining variables, g(0) = 0), Z is {z_normal = g(z')}.
    """

    normal_index: int = 1
    graph: HoloSeries | None = None

    def __post_init__(self):
        if self.normal_index < 1:
            raise InvalidOperandError("normal_index is 1-based and must be >= 1")
        if self.graph is not None and self.graph.constant != 0:
            raise InvalidOperandError("graph function must vanish at the origin")

    @property
    def is_flat(self) -> bool:
        return self.graph is None

    def validate_dim(self, dim: int) -> None:
        if not 1 <= self.normal_index <= dim:
            raise InvalidOperandError(
                f"normal_index {self.normal_index} outside [1, {dim}]"
            )
        if self.graph is not None and self.graph.dim != dim - 1:
            raise InvalidOperandError(
                f"graph has dim {self.graph.dim}, expected {dim - 1}"
            )

    def ambient_point(self, wprime, dim: int) -> tuple[complex, ...]:
        """Lift a point of Z (tangential coordinates) into ambient space."""
        wprime = tuple(complex(v) for v in np.atleast_1d(wprime))
        if len(wprime) != dim - 1:
            raise InvalidOperandError(
                f"tangential point has length {len(wprime)}, expected {dim - 1}"
            )
        normal = 0j if self.graph is None else evaluate_holo(
            self.graph, wprime, radius=np.inf
        )
        k = self.normal_index - 1
        return wprime[:k] + (normal,) + wprime[k:]

    def defining_function(self, dim: int, cap: int) -> HoloSeries:
        """phi = z_normal - g(z'), vanishing exactly on Z."""
        self.validate_dim(dim)
        b = basis(dim, cap)
        v = np.zeros(b.size, dtype=np.complex128)
        e_k = tuple(1 if i == self.normal_index - 1 else 0 for i in range(dim))
        v[b.position[e_k]] = 1.0
        if self.graph is not None:
            g = embed_holo(self.graph, self.normal_index - 1, dim, cap)
            v -= g.coeffs
        return HoloSeries(dim, cap, v, trusted=cap)


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def holo_series(
    dim: int,
    cap: int,
    coeffs: Mapping[MultiIndex, complex] | None = None,
    trusted: int | None = None,
) -> HoloSeries:
    b = basis(dim, cap)
    v = np.zeros(b.size, dtype=np.complex128)
    for alpha, c in (coeffs or {}).items():
        alpha = check_multi_index(alpha, dim, cap)
        v[b.position[alpha]] = c
    return HoloSeries(dim, cap, v, trusted=cap if trusted is None else trusted)


def sesqui_series(
    dim: int,
    cap: int,
    coeffs: Mapping[tuple[MultiIndex, MultiIndex], complex] | None = None,
    trusted: int | None = None,
) -> SesquiSeries:
    b = basis(dim, cap)
    mat = np.zeros((b.size, b.size), dtype=np.complex128)
    for (alpha, beta), c in (coeffs or {}).items():
        alpha = check_multi_index(alpha, dim, cap)
        beta = check_multi_index(beta, dim, cap)
        mat[b.position[alpha], b.position[beta]] = c
    return SesquiSeries(dim, cap, mat, trusted=cap if trusted is None else trusted)


def sesqui_one(dim: int, cap: int) -> SesquiSeries:
    return sesqui_series(dim, cap, {((0,) * dim, (0,) * dim): 1.0})


def holo_one(dim: int, cap: int) -> HoloSeries:
    return holo_series(dim, cap, {(0,) * dim: 1.0})


def holo_coordinate(dim: int, cap: int, index: int) -> HoloSeries:
    """The coordinate function z_index (1-based)."""
    if not 1 <= index <= dim:
        raise InvalidOperandError(f"coordinate index {index} outside [1, {dim}]")
    e = tuple(1 if i == index - 1 else 0 for i in range(dim))
    return holo_series(dim, cap, {e: 1.0})


def embed_holo(f: HoloSeries, at_coord: int, dim: int, cap: int) -> HoloSeries:
    """Reinterpret f as a series in ``dim`` variables, skipping ``at_coord``."""
    if f.dim != dim - 1:
        raise InvalidOperandError(f"cannot embed dim {f.dim} into dim {dim}")
    if f.cap > cap:
        raise InvalidOperandError("embedding cannot lower the degree cap")
    out = np.zeros(basis(dim, cap).size, dtype=np.complex128)
    target = basis(dim, cap)
    for alpha, c in f.items():
        full = alpha[:at_coord] + (0,) + alpha[at_coord:]
        out[target.position[full]] = c
    return HoloSeries(dim, cap, out, trusted=min(f.trusted, cap))


def pad_holo(f: HoloSeries, cap: int) -> HoloSeries:
    """Re-express f over a larger degree cap (coefficients unchanged)."""
    if cap == f.cap:
        return f
    if cap < f.cap:
        raise InvalidOperandError("padding cannot lower the degree cap")
    b = basis(f.dim, cap)
    v = np.zeros(b.size, dtype=np.complex128)
    for alpha, c in f.items():
        v[b.position[alpha]] = c
    return HoloSeries(f.dim, cap, v, trusted=f.trusted)


# ---------------------------------------------------------------------------
# arithmetic
# ---------------------------------------------------------------------------

def _check_operands(a: SesquiSeries, b: SesquiSeries) -> None:
    if a.dim != b.dim or a.cap != b.cap:
        raise InvalidOperandError(
            f"operand mismatch: ({a.dim}, cap {a.cap}) vs ({b.dim}, cap {b.cap})"
        )


def multiply(a: SesquiSeries, b: SesquiSeries) -> SesquiSeries:
    """Product of two series, truncated to the shared degree caps."""
    _check_operands(a, b)
    out = a.basis.convolve(a.coeffs, b.coeffs)
    return SesquiSeries(a.dim, a.cap, out, trusted=min(a.trusted, b.trusted))


def multiply_holo(s: SesquiSeries, f: HoloSeries, side: Side = "z") -> SesquiSeries:
    """Multiply by f(z) (side "z") or by conj(f(w)) (side "wbar")."""
    if f.dim != s.dim:
        raise InvalidOperandError("holomorphic factor has mismatched dimension")
    f = pad_holo(f, s.cap) if f.cap != s.cap else f
    mat = s.basis.holo_mult_matrix(f.coeffs)
    if side == "z":
        out = mat @ s.coeffs
    elif side == "wbar":
        out = s.coeffs @ s.basis.holo_mult_matrix(np.conj(f.coeffs)).T
    else:
        raise InvalidOperandError(f"unknown side {side!r}")
    return SesquiSeries(s.dim, s.cap, out, trusted=min(s.trusted, f.trusted))


def multiply_holo_pair(a: HoloSeries, b: HoloSeries) -> HoloSeries:
    if a.dim != b.dim or a.cap != b.cap:
        raise InvalidOperandError("operand mismatch for holomorphic product")
    out = a.basis.holo_convolve(a.coeffs, b.coeffs)
    return HoloSeries(a.dim, a.cap, out, trusted=min(a.trusted, b.trusted))


def add(a: SesquiSeries, b: SesquiSeries) -> SesquiSeries:
    _check_operands(a, b)
    return SesquiSeries(
        a.dim, a.cap, a.coeffs + b.coeffs, trusted=min(a.trusted, b.trusted)
    )


def scale(s: SesquiSeries, c: complex) -> SesquiSeries:
    return SesquiSeries(s.dim, s.cap, s.coeffs * c, trusted=s.trusted)


def differentiate(s: SesquiSeries, side: Side, index: int) -> SesquiSeries:
    """Formal partial derivative; consumes one degree of trust.

    ``side="z"`` differentiates in z_index, ``side="wbar"`` in conj(w)_index
    (1-based).  Top-degree coefficients of the result depend on coefficients
    beyond the cap and are therefore not trusted.
    """
    if not 1 <= index <= s.dim:
        raise InvalidOperandError(f"coordinate index {index} outside [1, {s.dim}]")
    if s.trusted < 1:
        raise TrustedDegreeError("series has no trusted degrees left to spend")
    d = s.basis.deriv_matrix(index - 1)
    if side == "z":
        out = d @ s.coeffs
    elif side == "wbar":
        out = s.coeffs @ d.T
    else:
        raise InvalidOperandError(f"unknown side {side!r}")
    return SesquiSeries(s.dim, s.cap, out, trusted=s.trusted - 1)


def differentiate_holo(f: HoloSeries, index: int) -> HoloSeries:
    if not 1 <= index <= f.dim:
        raise InvalidOperandError(f"coordinate index {index} outside [1, {f.dim}]")
    if f.trusted < 1:
        raise TrustedDegreeError("series has no trusted degrees left to spend")
    d = f.basis.deriv_matrix(index - 1)
    return HoloSeries(f.dim, f.cap, d @ f.coeffs, trusted=f.trusted - 1)


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------

def _check_radius(point, dim: int, radius: float, label: str) -> np.ndarray:
    point = np.asarray(tuple(point), dtype=np.complex128)
    if point.shape != (dim,):
        raise InvalidOperandError(f"{label} has shape {point.shape}, expected ({dim},)")
    if dim and np.max(np.abs(point)) > radius * (1 + 1e-12):
        raise EvaluationRadiusError(
            f"{label} with sup-norm {np.max(np.abs(point)):.6g} exceeds the "
            f"certified evaluation radius {radius:.6g}"
        )
    return point


def evaluate(
    s: SesquiSeries, z, w, radius: float = DEFAULT_RADIUS
) -> complex:
    """Evaluate s(z, w).

    Summation runs in lexicographic (alpha, beta) order so that results are
    bit-reproducible.  Points outside the certified radius are refused: the
    truncation error is only controlled inside it.
    """
    z = _check_radius(z, s.dim, radius, "z")
    w = _check_radius(w, s.dim, radius, "w")
    b = s.basis
    pz = b.point_powers(z)
    pw = b.point_powers(np.conj(w))
    terms = (s.coeffs * pz[:, None] * pw[None, :]).ravel()
    return complex(np.cumsum(terms)[-1])


def evaluate_holo(f: HoloSeries, z, radius: float = DEFAULT_RADIUS) -> complex:
    z = _check_radius(z, f.dim, radius, "z")
    terms = f.coeffs * f.basis.point_powers(z)
    return complex(np.cumsum(terms)[-1])


# ---------------------------------------------------------------------------
# log / exp / inversion
# ---------------------------------------------------------------------------

def _sesqui_reciprocal_coeffs(c: np.ndarray, b: Basis) -> np.ndarray:
    """Newton iteration for 1/s; stable against the cancellation that a
    direct alternating geometric series would suffer."""
    c0 = c[0, 0]
    if c0 == 0:
        raise NotInvertibleError("series with zero constant term is not invertible")
    r = np.zeros_like(c)
    r[0, 0] = 1.0 / c0
    correct = 1
    while correct <= 2 * b.cap:
        t = -b.convolve(c, r)
        t[0, 0] += 2.0
        r = b.convolve(r, t)
        correct *= 2
    return r


def reciprocal_sesqui(s: SesquiSeries) -> SesquiSeries:
    """Multiplicative inverse of a series with nonzero constant term."""
    out = _sesqui_reciprocal_coeffs(s.coeffs, s.basis)
    return SesquiSeries(s.dim, s.cap, out, trusted=s.trusted)


def log_series(s: SesquiSeries) -> SesquiSeries:
    """Principal-branch logarithm of a series with nonzero constant term.

    Computed through the grading derivation E (monomial of joint degree d
    maps to d times itself): E(log s) = E(s)/s.  This avoids the severe
    cancellation of the alternating sum over powers of (s/c - 1).
    """
    b = s.basis
    c0 = s.coeffs[0, 0]
    if c0 == 0:
        raise SingularKernelError("log of a kernel that vanishes at the base point")
    u = s.coeffs / c0
    grade = (b.degrees[:, None] + b.degrees[None, :]).astype(np.float64)
    euler = grade * u
    inv = _sesqui_reciprocal_coeffs(u, b)
    v = b.convolve(euler, inv)
    out = np.divide(v, grade, out=np.zeros_like(v), where=grade > 0)
    out[0, 0] = cmath.log(c0)
    return SesquiSeries(s.dim, s.cap, out, trusted=s.trusted)


def exp_series(s: SesquiSeries) -> SesquiSeries:
    """Exponential of a series; exact term recursion in the nonconstant part."""
    b = s.basis
    c0 = s.coeffs[0, 0]
    u = s.coeffs.copy()
    u[0, 0] = 0.0
    acc = np.zeros_like(u)
    acc[0, 0] = 1.0
    term = acc.copy()
    for n in range(1, 2 * b.cap + 1):
        term = b.convolve(term, u) / n
        if not term.any():
            break
        acc += term
    return SesquiSeries(s.dim, s.cap, cmath.exp(c0) * acc, trusted=s.trusted)


def reciprocal(h: HoloSeries) -> HoloSeries:
    """Series inverse of a holomorphic factor with nonzero constant term."""
    b = h.basis
    f = h.coeffs
    if f[0] == 0:
        raise NotInvertibleError("series with zero constant term is not invertible")
    r = np.zeros_like(f)
    r[0] = 1.0 / f[0]
    for t in b.graded_order[1:]:
        ia, ja = b.pairs_by_dst[int(t)]
        mask = ia != 0
        acc = np.cumsum(f[ia[mask]] * r[ja[mask]])[-1] if mask.any() else 0.0
        r[t] = -acc / f[0]
    return HoloSeries(h.dim, h.cap, r, trusted=h.trusted)


# ---------------------------------------------------------------------------
# restriction to a hypersurface
# ---------------------------------------------------------------------------

def restrict_hypersurface(s: SesquiSeries, z_spec: HypersurfaceSpec) -> SesquiSeries:
    """Restrict both arguments of s to the hypersurface.

    Flat case: keeps the coefficients with zero normal exponents.  Graph
    case: substitutes z_normal <- g(z') and conj(w_normal) <- conj(g)(w').
    The result lives in the m-1 tangential variables.
    """
    if s.dim < 1:
        raise InvalidOperandError("cannot restrict a series with no variables")
    z_spec.validate_dim(s.dim)
    coord = z_spec.normal_index - 1
    b = s.basis
    reduced = basis(s.dim - 1, s.cap)
    src, dst = b.slice_positions(coord)

    if z_spec.is_flat:
        out = np.zeros((reduced.size, reduced.size), dtype=np.complex128)
        out[np.ix_(dst, dst)] = s.coeffs[np.ix_(src, src)]
        return SesquiSeries(s.dim - 1, s.cap, out, trusted=s.trusted)

    g = pad_holo(z_spec.graph, s.cap)
    # positions grouped by the normal exponent, with reduced-basis images
    by_power: list[tuple[np.ndarray, np.ndarray]] = []
    for p in range(s.cap + 1):
        rows, images = [], []
        for i, a in enumerate(b.indices):
            if a[coord] == p:
                rows.append(i)
                images.append(reduced.position[a[:coord] + a[coord + 1 :]])
        by_power.append(
            (np.array(rows, dtype=np.int64), np.array(images, dtype=np.int64))
        )

    gpow = [np.zeros(reduced.size, dtype=np.complex128)]
    gpow[0][0] = 1.0
    for _ in range(s.cap):
        gpow.append(reduced.holo_convolve(gpow[-1], g.coeffs))
    mz = [reduced.holo_mult_matrix(gp) for gp in gpow]
    mw = [reduced.holo_mult_matrix(np.conj(gp)) for gp in gpow]

    out = np.zeros((reduced.size, reduced.size), dtype=np.complex128)
    for pa, (rows_a, img_a) in enumerate(by_power):
        if rows_a.size == 0:
            continue
        for pb, (rows_b, img_b) in enumerate(by_power):
            if rows_b.size == 0:
                continue
            block = s.coeffs[np.ix_(rows_a, rows_b)]
            if not block.any():
                continue
            sub = np.zeros((reduced.size, reduced.size), dtype=np.complex128)
            sub[np.ix_(img_a, img_b)] = block
            out += mz[pa] @ sub @ mw[pb].T
    return SesquiSeries(s.dim - 1, s.cap, out, trusted=s.trusted)


# ---------------------------------------------------------------------------
# kernel structure checks
# ---------------------------------------------------------------------------

def truncate_to_trusted(s: SesquiSeries) -> SesquiSeries:
    """Zero all coefficients beyond the trusted degree.

    Stored coefficients above the trusted degree are polluted by earlier
    truncation; dropping them makes the series safe to evaluate or compare
    without consulting the trust bookkeeping again.
    """
    deg = s.basis.degrees
    mask = (deg[:, None] <= s.trusted) & (deg[None, :] <= s.trusted)
    return SesquiSeries(s.dim, s.cap, s.coeffs * mask, trusted=s.trusted)


def hermitian_defect(s: SesquiSeries) -> float:
    """Largest deviation from c[alpha, beta] == conj(c[beta, alpha])."""
    return float(np.max(np.abs(s.coeffs - s.coeffs.conj().T))) if s.basis.size else 0.0

def hermitize(s: SesquiSeries) -> SesquiSeries:
    """Project onto the Hermitian part; exact no-op for Hermitian input."""
    return SesquiSeries(
        s.dim, s.cap, (s.coeffs + s.coeffs.conj().T) / 2.0, trusted=s.trusted
    )


def is_nnd(s: SesquiSeries, tol: float = 1e-10) -> tuple[bool, float]:
    """Check nonnegative definiteness of the truncated coefficient matrix.

    Returns (verdict, witness) with witness the most negative eigenvalue of
    the coefficient matrix (rows alpha, columns beta, lexicographic order).
    A non-Hermitian matrix cannot represent a kernel and is rejected.
    """
    defect = hermitian_defect(s)
    scale_ = max(1.0, float(np.max(np.abs(s.coeffs)))) if s.basis.size else 1.0
    herm = (s.coeffs + s.coeffs.conj().T) / 2.0
    eigs = np.linalg.eigvalsh(herm)
    witness = float(eigs[0])
    if defect > HERMITIAN_TOL * scale_:
        raise InvalidKernelError(
            f"coefficient matrix is not Hermitian (defect {defect:.3g}); "
            f"hermitian part has minimum eigenvalue {witness:.3g}",
            witness=witness,
        )
    return witness >= -tol, witness


# ---------------------------------------------------------------------------
# comparison
# ---------------------------------------------------------------------------

def coefficient_difference(
    a: SesquiSeries, b: SesquiSeries
) -> tuple[float, MultiIndex, MultiIndex, complex, complex]:
    """Largest coefficient difference through the shared trusted degree.

    Returns (max difference, alpha, beta, value_a, value_b) at the argmax.
    """
    _check_operands(a, b)
    t = min(a.trusted, b.trusted)
    deg = a.basis.degrees
    mask = (deg[:, None] <= t) & (deg[None, :] <= t)
    diff = np.abs(a.coeffs - b.coeffs) * mask
    flat = int(np.argmax(diff))
    i, j = np.unravel_index(flat, diff.shape)
    idx = a.basis.indices
    return (
        float(diff[i, j]),
        idx[i],
        idx[j],
        complex(a.coeffs[i, j]),
        complex(b.coeffs[i, j]),
    )


def max_coeff_diff(a: SesquiSeries, b: SesquiSeries) -> float:
    return coefficient_difference(a, b)[0]


def first_coeff_violation(
    a: SesquiSeries, b: SesquiSeries, tol: float
) -> tuple[MultiIndex, MultiIndex, complex, complex, float] | None:
    """First coefficient (lexicographic in (alpha, beta)) differing beyond tol.

    Only trusted degrees are inspected; returns None when every trusted
    coefficient agrees within tol.
    """
    _check_operands(a, b)
    t = min(a.trusted, b.trusted)
    deg = a.basis.degrees
    mask = (deg[:, None] <= t) & (deg[None, :] <= t)
    diff = np.abs(a.coeffs - b.coeffs) * mask
    hits = np.argwhere(diff > tol)
    if hits.size == 0:
        return None
    i, j = hits[0]
    idx = a.basis.indices
    return (
        idx[i],
        idx[j],
        complex(a.coeffs[i, j]),
        complex(b.coeffs[i, j]),
        float(diff[i, j]),
    )


# ---------------------------------------------------------------------------
# JSON wire format
# ---------------------------------------------------------------------------

def sesqui_to_dict(s: SesquiSeries) -> dict:
    return {
        "dim": s.dim,
        "cap": s.cap,
        "coeffs": [
            {
                "alpha": list(alpha),
                "beta": list(beta),
                "re": float(c.real),
                "im": float(c.imag),
            }
            for alpha, beta, c in s.items()
        ],
    }


def sesqui_from_dict(data: Mapping) -> SesquiSeries:
    try:
        dim = int(data["dim"])
        cap = int(data["cap"])
        entries = data["coeffs"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidOperandError(f"malformed series literal: {exc}") from exc
    coeffs = {}
    for entry in entries:
        alpha = tuple(entry["alpha"])
        beta = tuple(entry["beta"])
        coeffs[(alpha, beta)] = complex(
            float(entry.get("re", 0.0)), float(entry.get("im", 0.0))
        )
    return sesqui_series(dim, cap, coeffs)


def holo_to_dict(f: HoloSeries) -> dict:
    return {
        "dim": f.dim,
        "cap": f.cap,
        "coeffs": [
            {"alpha": list(alpha), "re": float(c.real), "im": float(c.imag)}
            for alpha, c in f.items()
        ],
    }


def holo_from_dict(data: Mapping) -> HoloSeries:
    try:
        dim = int(data["dim"])
        cap = int(data["cap"])
        entries = data["coeffs"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidOperandError(f"malformed holomorphic series: {exc}") from exc
    coeffs = {}
    for entry in entries:
        coeffs[tuple(entry["alpha"])] = complex(
            float(entry.get("re", 0.0)), float(entry.get("im", 0.0))
        )
    return holo_series(dim, cap, coeffs)


def hypersurface_to_dict(z_spec: HypersurfaceSpec) -> dict:
    return {
        "normal_index": z_spec.normal_index,
        "graph": None if z_spec.graph is None else holo_to_dict(z_spec.graph),
    }


def hypersurface_from_dict(data: Mapping | None) -> HypersurfaceSpec:
    if data is None:
        return HypersurfaceSpec()
    graph = data.get("graph")
    return HypersurfaceSpec(
        normal_index=int(data.get("normal_index", 1)),
        graph=None if graph is None else holo_from_dict(graph),
    )
