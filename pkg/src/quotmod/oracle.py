"""Finite-truncation Hilbert-space model of a kernel.

The model realizes a kernel's module structure on polynomials of low degree,
independently of everything the invariant pipeline does: the monomial Gram
matrix is forced by the reproducing property (G conj(C) = I), multiplication
by the coordinates acts through degree-truncated shift matrices, and the
metric adjoints admit the kernel vectors K(., w) as joint eigenvectors up to
a truncation tail of order |w|**(degree+1).  The jet map into model x C^k is
unitary onto its range by construction, and the jet reproducing identity can
be checked against direct evaluation.

The model degree is deliberately small: it inverts a Gram-sized matrix and
validates structure, not precision.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._basis import Basis, basis
from . import series as se
from .errors import InvalidOperandError, RankDeficiencyError

#: Default truncation degree of the model.
DEFAULT_MODEL_DEGREE = 6

#: Singular values below this fraction of the largest count as zero when the
#: joint-eigenspace dimension is computed.
RANK_TOL = 1e-7

#: Sample points used when checking the eigenvector structure.  They sit
#: close to the base point so the truncation tail |w|**(degree+1) stays far
#: below both the residual tolerance and the numerical-rank threshold.
DEFAULT_SAMPLE_POINTS: tuple[tuple[complex, ...], ...] = (
    (0j, 0j),
    (0.03 + 0j, 0j),
    (0j, 0.04 + 0j),
    (0.02 + 0j, 0.03 + 0j),
    (0.02 + 0.02j, 0.01 - 0.03j),
)


def sample_points(dim: int) -> tuple[tuple[complex, ...], ...]:
    """The canonical eigenvector sample points, adapted to the dimension."""
    return tuple(
        (point + (0j,) * dim)[:dim] for point in DEFAULT_SAMPLE_POINTS
    )


@dataclass(frozen=True, eq=False)
class TruncatedModel:
    """Concrete Hilbert-space model on monomials of bounded degree."""

    dim: int
    degree: int
    kernel_matrix: np.ndarray  # C: truncated kernel coefficients
    gram: np.ndarray  # G: monomial Gram matrix, G conj(C) = I
    mult: tuple[np.ndarray, ...]  # multiplication by z_i, 0/1 shifts
    adjoints: tuple[np.ndarray, ...]  # adjoints with respect to the Gram metric

    @property
    def basis(self) -> Basis:
        return basis(self.dim, self.degree)

    @property
    def metric(self) -> np.ndarray:
        """Matrix Gamma with <x, y> = y^H Gamma x for coefficient vectors."""
        return self.gram.T

    def inner(self, x: np.ndarray, y: np.ndarray) -> complex:
        return complex(y.conj() @ (self.metric @ x))

    def norm(self, x: np.ndarray) -> float:
        return float(np.sqrt(max(self.inner(x, x).real, 0.0)))

    def kernel_vector(self, w) -> np.ndarray:
        """Coefficient vector of K(., w) on the model monomials."""
        powers = self.basis.point_powers(np.conj(np.asarray(w, dtype=np.complex128)))
        return self.kernel_matrix @ powers


def truncated_model(
    kernel: se.SesquiSeries, model_degree: int = DEFAULT_MODEL_DEGREE
) -> TruncatedModel:
    """Build the finite model of a kernel on monomials of total degree <= D.

    Fails with a rank-deficiency error when the truncated coefficient matrix
    is numerically singular (the reproducing property then does not pin down
    a Gram matrix on the monomial range).
    """
    if model_degree > kernel.cap:
        raise InvalidOperandError(
            f"model degree {model_degree} exceeds the series cap {kernel.cap}"
        )
    big = kernel.basis
    small = basis(kernel.dim, model_degree)
    pos = np.array([big.position[a] for a in small.indices], dtype=np.int64)
    c = kernel.coeffs[np.ix_(pos, pos)]

    herm = (c + c.conj().T) / 2.0
    eigs = np.linalg.eigvalsh(herm)
    if eigs[0] <= 1e-12 * max(eigs[-1], 1e-300):
        raise RankDeficiencyError(
            f"truncated coefficient matrix is singular "
            f"(eigenvalue range [{eigs[0]:.3g}, {eigs[-1]:.3g}])"
        )
    gram = np.linalg.inv(np.conj(c))
    gram = (gram + gram.conj().T) / 2.0

    mult = []
    for coord in range(kernel.dim):
        shift = np.zeros((small.size, small.size))
        for j, alpha in enumerate(small.indices):
            up = tuple(a + 1 if k == coord else a for k, a in enumerate(alpha))
            i = small.position.get(up)
            if i is not None:
                shift[i, j] = 1.0
        mult.append(shift)

    metric = gram.T
    adjoints = tuple(
        np.linalg.solve(metric, m.T @ metric) for m in mult
    )
    return TruncatedModel(
        dim=kernel.dim,
        degree=model_degree,
        kernel_matrix=c,
        gram=gram,
        mult=tuple(mult),
        adjoints=adjoints,
    )


def gram_identity_defect(model: TruncatedModel) -> float:
    """Largest entry of G conj(C) - I, the model's defining relation."""
    eye = np.eye(model.gram.shape[0])
    return float(np.max(np.abs(model.gram @ np.conj(model.kernel_matrix) - eye)))


@dataclass(frozen=True)
class EigenvectorCheck:
    ok: bool
    max_residual: float
    residuals: tuple[float, ...]
    eigenspace_dim: int


def check_eigenvector(
    model: TruncatedModel,
    w,
    tol: float = 1e-5,
    rank_tol: float = RANK_TOL,
) -> EigenvectorCheck:
    """Verify that K(., w) is the joint eigenvector of the adjoint tuple.

    Checks the residuals ||adj_i x - conj(w_i) x|| / ||x|| in the model
    metric and that the joint numerical kernel of the stacked system has
    dimension exactly one.
    """
    w = np.asarray(tuple(w), dtype=np.complex128)
    if w.shape != (model.dim,):
        raise InvalidOperandError(f"point has shape {w.shape}, expected ({model.dim},)")
    x = model.kernel_vector(w)
    nx = model.norm(x)
    residuals = tuple(
        model.norm(adj @ x - np.conj(wi) * x) / nx
        for adj, wi in zip(model.adjoints, w)
    )
    stacked = np.vstack(
        [adj - np.conj(wi) * np.eye(adj.shape[0]) for adj, wi in zip(model.adjoints, w)]
    )
    sv = np.linalg.svd(stacked, compute_uv=False)
    dim = int(np.sum(sv < rank_tol * sv[0]))
    ok = max(residuals) <= tol and dim == 1
    return EigenvectorCheck(
        ok=ok, max_residual=max(residuals), residuals=residuals, eigenspace_dim=dim
    )


@dataclass(frozen=True)
class JetUnitarityCheck:
    ok: bool
    max_defect: float


#: Evaluation points for the jet reproducing identity.
DEFAULT_JET_POINTS: tuple[tuple[complex, ...], ...] = (
    (0j, 0j),
    (0.2 + 0j, 0.1 + 0j),
    (0j, 0.3 + 0j),
    (0.15 + 0j, -0.2 + 0j),
    (0.1 + 0.1j, 0.05 - 0.25j),
)


def check_jet_unitarity(
    model: TruncatedModel,
    k: int = 2,
    points: tuple[tuple[complex, ...], ...] | None = None,
    radius: float = se.DEFAULT_RADIUS,
    tol: float = 1e-6,
    normal_index: int = 1,
) -> JetUnitarityCheck:
    """Check the jet reproducing identity against direct evaluation.

    With the jet-space inner product declared by making the jet map unitary,
    <Jh, JK(., w) e_j> must equal the j-th jet component of h at w.  The
    identity is tested for every model monomial h, every fiber direction,
    and every sample point.
    """
    if k < 1:
        raise InvalidOperandError("jet order must be at least 1")
    b = model.basis
    coord = normal_index - 1
    if points is None:
        points = DEFAULT_JET_POINTS

    defect = 0.0
    for w in points:
        w = np.asarray(tuple(w), dtype=np.complex128)
        if np.max(np.abs(w)) > radius * (1 + 1e-12):
            raise InvalidOperandError(f"jet check point {w} outside radius {radius}")
        wbar = np.conj(w)
        # successive normal wbar-derivatives of the power vector wbar**beta
        deriv_powers = []
        for order in range(k):
            q = np.zeros(b.size, dtype=np.complex128)
            for i, alpha in enumerate(b.indices):
                if alpha[coord] >= order:
                    down = np.array(
                        [a - order if c == coord else a for c, a in enumerate(alpha)]
                    )
                    factor = 1.0
                    for step in range(order):
                        factor *= alpha[coord] - step
                    q[i] = factor * np.prod(wbar**down)
            deriv_powers.append(q)

        for j in range(k):
            g = model.kernel_matrix @ deriv_powers[j]
            pair_row = g.conj() @ model.metric  # <e_gamma, g> over monomials gamma
            for gi, gamma in enumerate(b.indices):
                # j-th jet component of the monomial z**gamma at w
                if j == 0:
                    expected = np.prod(w ** np.array(gamma, dtype=np.complex128))
                else:
                    if gamma[coord] >= j:
                        down = list(gamma)
                        factor = 1.0
                        for step in range(j):
                            factor *= down[coord]
                            down[coord] -= 1
                        expected = factor * np.prod(
                            w ** np.array(down, dtype=np.complex128)
                        )
                    else:
                        expected = 0j
                defect = max(defect, abs(pair_row[gi] - expected))
    return JetUnitarityCheck(ok=defect <= tol, max_defect=float(defect))
