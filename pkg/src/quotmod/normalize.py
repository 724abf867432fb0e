"""Kernel normalization at the base point and the frame normal form.

Two kernels describe unitarily equivalent modules exactly when their
normalized representatives agree, so normalization is the workhorse that
quotients out the gauge freedom K -> f(z) K conj(f(w)).  The base point is
fixed at the origin; every built-in family is nonsingular there.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import jets as je
from . import series as se
from .errors import DegenerateKernelError


def normalize_kernel(kernel: se.SesquiSeries) -> se.SesquiSeries:
    """Gauge representative with K0(., 0) identically one.

    Multiplies by psi(z) = K(z, 0)**(-1) * K(0, 0)**(1/2) on the z side and
    by its conjugate on the w side.  The base-point slices of the result are
    snapped to the exact unit vector (they equal it up to roundoff), which
    makes normalization exactly idempotent.
    """
    c0 = kernel.constant
    if c0 == 0 or abs(c0.imag) > 1e-14 * abs(c0) or c0.real <= 0:
        raise DegenerateKernelError(
            f"kernel value at the base point must be real positive, got {c0}"
        )
    b = kernel.basis
    slice_z = se.HoloSeries(
        kernel.dim, kernel.cap, kernel.coeffs[:, 0].copy(), trusted=kernel.trusted
    )
    psi = se.reciprocal(slice_z)
    psi = se.HoloSeries(
        psi.dim, psi.cap, psi.coeffs * math.sqrt(c0.real), trusted=psi.trusted
    )
    out = se.multiply_holo(kernel, psi, side="z")
    out = se.multiply_holo(out, psi, side="wbar")
    out = se.hermitize(out)

    coeffs = out.coeffs.copy()
    unit = np.zeros(b.size, dtype=np.complex128)
    unit[0] = 1.0
    coeffs[:, 0] = unit
    coeffs[0, :] = unit
    return se.SesquiSeries(kernel.dim, kernel.cap, coeffs, trusted=out.trusted)


@dataclass(frozen=True)
class FrameCheck:
    """Outcome of the jet-frame normal-form check diag(1, S)."""

    ok: bool
    offending_entry: tuple[int, int] | None
    max_defect: float


def lemma_frame_check(
    kernel0: se.SesquiSeries,
    z_spec: se.HypersurfaceSpec,
    k: int = 2,
    tol: float = 1e-12,
) -> FrameCheck:
    """Verify the jet frame of a normalized kernel pairs to diag(1, S) on Z.

    The restricted jet-kernel entries are evaluated against the base point:
    entry (l, 0) pairs the l-th derivative against the base kernel vector, so
    its w = 0 slice must vanish for l >= 1 (K(z, 0) = 1 kills every normal
    z-derivative there); entry (0, j) must vanish on its z = 0 slice by the
    conjugate argument; entry (0, 0) must be the constant one.  All checks
    are coefficientwise within tol.  The lower-right block is unconstrained;
    it is the anti-holomorphic function S.
    """
    jk = je.jet_kernel(kernel0, k, z_spec)
    worst = 0.0
    offender: tuple[int, int] | None = None
    # column-major scan: each column of the jet kernel is one frame vector
    for j in range(k):
        for ell in range(k):
            if ell >= 1 and j >= 1:
                continue
            entry = se.restrict_hypersurface(jk.entry(ell, j), z_spec)
            if j == 0:
                base_slice = entry.coeffs[:, 0].copy()  # w = 0
            else:
                base_slice = entry.coeffs[0, :].copy()  # z = 0
            if ell == 0 and j == 0:
                base_slice[0] -= 1.0
            defect = float(np.max(np.abs(base_slice))) if base_slice.size else 0.0
            if defect > worst:
                worst = defect
                offender = (ell, j)
    if worst <= tol:
        return FrameCheck(ok=True, offending_entry=None, max_defect=worst)
    return FrameCheck(ok=False, offending_entry=offender, max_defect=worst)
