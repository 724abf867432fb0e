"""Jet kernels, the jet module action, and nilpotent fiber actions.

The order-k jet of a kernel along the normal direction of a hypersurface is
the k x k matrix of mixed normal derivatives; its columns span the fibers of
the jet bundle.  Multiplication by the defining function acts on each fiber
through a nilpotent matrix, which is what the equivalence test ultimately
compares.

The graph case needs no change of variables here: straightening
z_normal -> z_normal - g(z') is a shear, so the straightened normal
derivative coincides with the plain partial derivative in the original
coordinates.  Only restriction and point evaluation see the graph.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from . import series as se
from .errors import InvalidOperandError, TrustedDegreeError

#: Points farther than this from the zero set of phi do not count as lying on Z.
ON_SURFACE_TOL = 1e-9


@dataclass(frozen=True)
class JetKernel:
    """k x k matrix of mixed normal derivatives of a kernel."""

    order: int
    normal_index: int
    entries: tuple[tuple[se.SesquiSeries, ...], ...]

    @property
    def kernel(self) -> se.SesquiSeries:
        return self.entries[0][0]

    def entry(self, row: int, col: int) -> se.SesquiSeries:
        return self.entries[row][col]


@dataclass(frozen=True)
class JetActionMatrix:
    """Lower-triangular matrix of binomial-weighted derivatives of f."""

    order: int
    normal_index: int
    entries: tuple[tuple[se.HoloSeries, ...], ...]

    def entry(self, row: int, col: int) -> se.HoloSeries:
        return self.entries[row][col]

    def at_point(self, w, radius: float = se.DEFAULT_RADIUS) -> np.ndarray:
        out = np.zeros((self.order, self.order), dtype=np.complex128)
        for i in range(self.order):
            for j in range(self.order):
                out[i, j] = se.evaluate_holo(self.entries[i][j], w, radius=radius)
        return out


@dataclass(frozen=True)
class NilpotentFiber:
    """Strictly upper-triangular action of the defining function on a fiber."""

    matrix: np.ndarray  # (k, k) complex, read-only

    def __post_init__(self):
        mat = np.ascontiguousarray(self.matrix, dtype=np.complex128)
        mat.setflags(write=False)
        object.__setattr__(self, "matrix", mat)

    @property
    def order(self) -> int:
        return self.matrix.shape[0]


def jet_kernel(
    kernel: se.SesquiSeries, k: int, z_spec: se.HypersurfaceSpec
) -> JetKernel:
    """Jet kernel of order k: entry (l, j) is the l-th normal z-derivative and
    j-th normal conj(w)-derivative of the kernel."""
    if k < 1:
        raise InvalidOperandError("jet order must be at least 1")
    z_spec.validate_dim(kernel.dim)
    if kernel.trusted < k:
        raise TrustedDegreeError(
            f"jet order {k} needs at least {k} trusted degrees, "
            f"kernel has {kernel.trusted}"
        )
    idx = z_spec.normal_index
    rows = []
    d_z = [kernel]
    for _ in range(k - 1):
        d_z.append(se.differentiate(d_z[-1], "z", idx))
    for ell in range(k):
        row = [d_z[ell]]
        for _ in range(k - 1):
            row.append(se.differentiate(row[-1], "wbar", idx))
        rows.append(tuple(row))
    return JetKernel(order=k, normal_index=idx, entries=tuple(rows))


def jet_action_matrix(
    f: se.HoloSeries, k: int, normal_index: int = 1
) -> JetActionMatrix:
    """Matrix of the module action of f on order-k jets.

    Entry (l, j) is binom(l, j) * d^(l-j) f for j <= l and zero above the
    diagonal; this is the unique triangular orientation for which the map
    f -> Jf is multiplicative.
    """
    if k < 1:
        raise InvalidOperandError("jet order must be at least 1")
    zero = se.holo_series(f.dim, f.cap, {}, trusted=f.trusted)
    derivs = [f]
    for _ in range(k - 1):
        derivs.append(se.differentiate_holo(derivs[-1], normal_index))
    rows = []
    for ell in range(k):
        row = []
        for j in range(k):
            if j > ell:
                row.append(zero)
            else:
                row.append(_scale_holo(derivs[ell - j], float(comb(ell, j))))
        rows.append(tuple(row))
    return JetActionMatrix(order=k, normal_index=normal_index, entries=tuple(rows))


def _scale_holo(f: se.HoloSeries, c: float) -> se.HoloSeries:
    if c == 1.0:
        return f
    return se.HoloSeries(f.dim, f.cap, f.coeffs * c, trusted=f.trusted)


def multiply_jet_actions(a: JetActionMatrix, b: JetActionMatrix) -> JetActionMatrix:
    """Matrix product of two jet actions (series entries)."""
    if a.order != b.order:
        raise InvalidOperandError("jet action orders differ")
    k = a.order
    rows = []
    for i in range(k):
        row = []
        for j in range(k):
            acc = None
            for s in range(k):
                term = se.multiply_holo_pair(a.entries[i][s], b.entries[s][j])
                acc = term if acc is None else se.HoloSeries(
                    term.dim,
                    term.cap,
                    acc.coeffs + term.coeffs,
                    trusted=min(acc.trusted, term.trusted),
                )
            row.append(acc)
        rows.append(tuple(row))
    return JetActionMatrix(order=k, normal_index=a.normal_index, entries=tuple(rows))


def nilpotent_at(
    jk: JetKernel,
    phi: se.HoloSeries,
    w,
    radius: float = se.DEFAULT_RADIUS,
) -> NilpotentFiber:
    """Matrix of the adjoint action of phi on the jet-frame fiber at w.

    Requires w on the zero set of phi; there the jet action matrix has zero
    diagonal, so its conjugate transpose is strictly upper triangular.  For
    k = 2 this is [[0, conj(d phi(w))], [0, 0]] in the frame {e, dbar e}.
    Residual below-diagonal entries (on-surface tolerance) are dropped so the
    nilpotency N**k = 0 holds exactly.
    """
    value = se.evaluate_holo(phi, w, radius=radius)
    if abs(value) > ON_SURFACE_TOL:
        raise InvalidOperandError(
            f"point is not on the hypersurface: |phi(w)| = {abs(value):.3g}"
        )
    jf = jet_action_matrix(phi, jk.order, normal_index=jk.normal_index)
    mat = jf.at_point(w, radius=radius).conj().T
    return NilpotentFiber(matrix=np.triu(mat, 1))
