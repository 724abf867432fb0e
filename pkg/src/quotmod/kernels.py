"""Built-in reproducing-kernel families and the gauge transformation.

Three analytic families are provided, all normalized at the origin:

* ``product_power``  (1 - z1*conj(w1))**(-lam) * (1 - z2*conj(w2))**(-mu)
* ``ball_power``     (1 - <z, w>)**(-lam)
* ``exp_quadratic``  exp(z^T A conj(w)) for a Hermitian PSD matrix A

plus ``series_literal`` for raw coefficient input.  ``exp_quadratic`` is the
only family whose jet frame has a nonzero angle pairing, which is what makes
it useful for exercising the third equivalence condition.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

import numpy as np

from . import series as se
from ._basis import basis
from .errors import GaugeSingularError, InvalidKernelError, InvalidOperandError

KERNEL_KINDS = ("product_power", "ball_power", "exp_quadratic", "series_literal")


@dataclass(frozen=True)
class KernelSpec:
    """Declarative description of a kernel, hashable for pipeline caching."""

    kind: str
    dim: int = 2
    cap: int = 12
    lam: float | None = None
    mu: float | None = None
    matrix: tuple[tuple[complex, ...], ...] | None = None
    literal: tuple[tuple[tuple[int, ...], tuple[int, ...], complex], ...] | None = None
    gauge: tuple[tuple[tuple[int, ...], complex], ...] | None = None

    def __post_init__(self):
        if self.kind not in KERNEL_KINDS:
            raise InvalidOperandError(f"unknown kernel kind {self.kind!r}")
        if self.kind == "product_power":
            if self.dim != 2:
                raise InvalidOperandError("product_power is a two-variable family")
            if self.lam is None or self.mu is None or self.lam <= 0 or self.mu <= 0:
                raise InvalidOperandError("product_power needs lambda, mu > 0")
        elif self.kind == "ball_power":
            if self.lam is None or self.lam <= 0:
                raise InvalidOperandError("ball_power needs lambda > 0")
        elif self.kind == "exp_quadratic":
            if self.matrix is None:
                raise InvalidOperandError("exp_quadratic needs a matrix A")
            a = np.array(self.matrix, dtype=np.complex128)
            if a.shape != (self.dim, self.dim):
                raise InvalidOperandError(
                    f"matrix A has shape {a.shape}, expected ({self.dim}, {self.dim})"
                )
            if np.max(np.abs(a - a.conj().T)) > 1e-12:
                raise InvalidOperandError("matrix A must be Hermitian")
            if np.linalg.eigvalsh((a + a.conj().T) / 2).min() < -1e-12:
                raise InvalidOperandError("matrix A must be positive semidefinite")
        elif self.kind == "series_literal" and self.literal is None:
            raise InvalidOperandError("series_literal needs coefficients")

    def gauge_series(self) -> se.HoloSeries | None:
        if self.gauge is None:
            return None
        return se.holo_series(self.dim, self.cap, dict(self.gauge))


def _rising_factorial_over_factorial(lam: float, n: int) -> float:
    # coefficient of t**n in (1 - t)**(-lam)
    value = 1.0
    for k in range(n):
        value *= (lam + k) / (k + 1)
    return value


def construct_kernel(spec: KernelSpec) -> se.SesquiSeries:
    """Assemble the base kernel series without structural validation."""
    b = basis(spec.dim, spec.cap)
    mat = np.zeros((b.size, b.size), dtype=np.complex128)

    if spec.kind == "product_power":
        for i, alpha in enumerate(b.indices):
            a1, a2 = alpha
            mat[i, i] = _rising_factorial_over_factorial(
                spec.lam, a1
            ) * _rising_factorial_over_factorial(spec.mu, a2)
        out = se.SesquiSeries(spec.dim, spec.cap, mat, trusted=spec.cap)

    elif spec.kind == "ball_power":
        # coefficient of z**alpha conj(w)**alpha is (lam)_{|alpha|} / alpha!
        for i, alpha in enumerate(b.indices):
            mat[i, i] = _pochhammer(spec.lam, sum(alpha)) / _multi_factorial(alpha)
        out = se.SesquiSeries(spec.dim, spec.cap, mat, trusted=spec.cap)

    elif spec.kind == "exp_quadratic":
        a = np.array(spec.matrix, dtype=np.complex128)
        quad = {}
        for i in range(spec.dim):
            for j in range(spec.dim):
                if a[i, j] != 0:
                    ei = tuple(1 if c == i else 0 for c in range(spec.dim))
                    ej = tuple(1 if c == j else 0 for c in range(spec.dim))
                    quad[(ei, ej)] = complex(a[i, j])
        out = se.exp_series(se.sesqui_series(spec.dim, spec.cap, quad))
        out = se.hermitize(out)

    else:  # series_literal
        out = se.sesqui_series(
            spec.dim, spec.cap, {(alpha, beta): c for alpha, beta, c in spec.literal}
        )

    return out


def build_kernel(spec: KernelSpec) -> se.SesquiSeries:
    """Truncated series of the base kernel (gauge not applied).

    The result is guaranteed Hermitian and nonnegative definite; invalid
    coefficient input is rejected here.
    """
    out = construct_kernel(spec)
    ok, witness = se.is_nnd(out, tol=1e-10)
    if not ok:
        raise InvalidKernelError(
            f"kernel is not nonnegative definite (minimum eigenvalue {witness:.3g})",
            witness=witness,
        )
    return out


@dataclass(frozen=True)
class KernelValidation:
    """Outcome of the structural checks on a kernel spec."""

    hermitian: bool
    nnd: bool
    hermitian_defect: float
    min_eigenvalue: float
    constant_term_re: float
    constant_term_im: float


def validate_kernel(spec: KernelSpec, tol: float = 1e-10) -> KernelValidation:
    """Run the Hermitian and nnd checks without raising on failure."""
    kernel = construct_kernel(spec)
    gauge = spec.gauge_series()
    if gauge is not None:
        kernel = gauge_transform(kernel, gauge)
    defect = se.hermitian_defect(kernel)
    scale = max(1.0, float(np.max(np.abs(kernel.coeffs))))
    hermitian = defect <= se.HERMITIAN_TOL * scale
    herm_part = (kernel.coeffs + kernel.coeffs.conj().T) / 2.0
    min_eig = float(np.linalg.eigvalsh(herm_part)[0])
    nnd = hermitian and min_eig >= -tol
    c0 = kernel.constant
    return KernelValidation(
        hermitian=hermitian,
        nnd=nnd,
        hermitian_defect=defect,
        min_eigenvalue=min_eig,
        constant_term_re=float(c0.real),
        constant_term_im=float(c0.imag),
    )


def _pochhammer(lam: float, n: int) -> float:
    value = 1.0
    for k in range(n):
        value *= lam + k
    return value


def _multi_factorial(alpha) -> float:
    value = 1
    for a in alpha:
        value *= math.factorial(a)
    return float(value)


def gauge_transform(kernel: se.SesquiSeries, f: se.HoloSeries) -> se.SesquiSeries:
    """Kernel of the isomorphic module carried by f: f(z) K(z, w) conj(f(w)).

    The result is re-symmetrized so Hermitian symmetry holds exactly despite
    the two one-sided products being accumulated in different orders.
    """
    if f.constant == 0:
        raise GaugeSingularError("gauge factor vanishes at the base point")
    out = se.multiply_holo(kernel, f, side="z")
    out = se.multiply_holo(out, f, side="wbar")
    return se.hermitize(out)


def realize_kernel(spec: KernelSpec) -> se.SesquiSeries:
    """Base kernel with the spec's gauge factor (if any) applied."""
    out = build_kernel(spec)
    gauge = spec.gauge_series()
    if gauge is not None:
        out = gauge_transform(out, gauge)
    return out


# ---------------------------------------------------------------------------
# JSON wire format
# ---------------------------------------------------------------------------

def _complex_from_json(value) -> complex:
    if isinstance(value, (int, float)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, Mapping):
        return complex(float(value.get("re", 0.0)), float(value.get("im", 0.0)))
    raise InvalidOperandError(f"cannot read complex number from {value!r}")


def _complex_to_json(value: complex):
    if value.imag == 0:
        return float(value.real)
    return [float(value.real), float(value.imag)]


def kernel_spec_to_dict(spec: KernelSpec) -> dict:
    data: dict = {"kind": spec.kind, "dim": spec.dim, "cap": spec.cap}
    if spec.lam is not None:
        data["lambda"] = spec.lam
    if spec.mu is not None:
        data["mu"] = spec.mu
    if spec.matrix is not None:
        data["A"] = [[_complex_to_json(v) for v in row] for row in spec.matrix]
    if spec.literal is not None:
        data["coeffs"] = [
            {
                "alpha": list(alpha),
                "beta": list(beta),
                "re": float(c.real),
                "im": float(c.imag),
            }
            for alpha, beta, c in spec.literal
        ]
    if spec.gauge is not None:
        data["gauge"] = {
            "coeffs": [
                {"alpha": list(alpha), "re": float(c.real), "im": float(c.imag)}
                for alpha, c in spec.gauge
            ]
        }
    return data


def kernel_spec_from_dict(data: Mapping) -> KernelSpec:
    try:
        kind = data["kind"]
    except (KeyError, TypeError) as exc:
        raise InvalidOperandError("kernel spec needs a 'kind' field") from exc
    dim = int(data.get("dim", 2))
    cap = int(data.get("cap", 12))
    lam = data.get("lambda", data.get("lam"))
    mu = data.get("mu")
    matrix = None
    if data.get("A") is not None:
        matrix = tuple(
            tuple(_complex_from_json(v) for v in row) for row in data["A"]
        )
    literal = None
    if data.get("coeffs") is not None:
        literal = tuple(
            (
                tuple(entry["alpha"]),
                tuple(entry["beta"]),
                complex(float(entry.get("re", 0.0)), float(entry.get("im", 0.0))),
            )
            for entry in data["coeffs"]
        )
    gauge = None
    if data.get("gauge") is not None:
        gauge = tuple(
            (
                tuple(entry["alpha"]),
                complex(float(entry.get("re", 0.0)), float(entry.get("im", 0.0))),
            )
            for entry in data["gauge"]["coeffs"]
        )
    return KernelSpec(
        kind=kind,
        dim=dim,
        cap=cap,
        lam=None if lam is None else float(lam),
        mu=None if mu is None else float(mu),
        matrix=matrix,
        literal=literal,
        gauge=gauge,
    )
