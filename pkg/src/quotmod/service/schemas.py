"""Request and response models for the HTTP API.

These mirror the JSON wire formats of the kernel and series files, so the
same documents work as CLI input files and as request bodies.
"""
from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, ConfigDict, Field

from .. import kernels as ke
from .. import series as se
from ..equivalence import QuotientModuleSpec


class SesquiCoeff(BaseModel):
    alpha: list[int]
    beta: list[int]
    re: float
    im: float = 0.0


class HoloCoeff(BaseModel):
    alpha: list[int]
    re: float
    im: float = 0.0


class GaugeModel(BaseModel):
    coeffs: list[HoloCoeff]


class HoloSeriesModel(BaseModel):
    dim: int
    cap: int
    coeffs: list[HoloCoeff]

    def to_domain(self) -> se.HoloSeries:
        return se.holo_from_dict(self.model_dump())


class KernelSpecModel(BaseModel):
    model_config = ConfigDict(populate_by_name=True)

    kind: Literal["product_power", "ball_power", "exp_quadratic", "series_literal"]
    dim: int = 2
    cap: int = 12
    lam: float | None = Field(default=None, alias="lambda")
    mu: float | None = None
    A: list[list[float | list[float]]] | None = None
    coeffs: list[SesquiCoeff] | None = None
    gauge: GaugeModel | None = None

    def to_domain(self) -> ke.KernelSpec:
        return ke.kernel_spec_from_dict(
            self.model_dump(by_alias=True, exclude_none=True)
        )


class HypersurfaceModel(BaseModel):
    normal_index: int = 1
    graph: HoloSeriesModel | None = None

    def to_domain(self) -> se.HypersurfaceSpec:
        return se.HypersurfaceSpec(
            normal_index=self.normal_index,
            graph=None if self.graph is None else self.graph.to_domain(),
        )


# -- requests ---------------------------------------------------------------

class ValidateRequest(BaseModel):
    kernel: KernelSpecModel


class InvariantsRequest(BaseModel):
    kernel: KernelSpecModel
    hypersurface: HypersurfaceModel = HypersurfaceModel()
    radius: float = 0.3
    grid: int = 16

    def to_domain(self) -> QuotientModuleSpec:
        return QuotientModuleSpec(
            kernel=self.kernel.to_domain(),
            hypersurface=self.hypersurface.to_domain(),
            radius=self.radius,
            grid_count=self.grid,
        )


class CompareRequest(BaseModel):
    a: KernelSpecModel
    b: KernelSpecModel
    hypersurface: HypersurfaceModel = HypersurfaceModel()
    tol: float = 1e-8
    oracle: bool = False
    oracle_tol: float = 1e-10
    radius: float = 0.3
    grid: int = 16

    def to_domain(self) -> tuple[QuotientModuleSpec, QuotientModuleSpec]:
        z = self.hypersurface.to_domain()
        return (
            QuotientModuleSpec(
                kernel=self.a.to_domain(),
                hypersurface=z,
                radius=self.radius,
                grid_count=self.grid,
            ),
            QuotientModuleSpec(
                kernel=self.b.to_domain(),
                hypersurface=z,
                radius=self.radius,
                grid_count=self.grid,
            ),
        )


class ModelCheckRequest(BaseModel):
    kernel: KernelSpecModel
    model_degree: int = 6
    residual_tol: float = 1e-5
    jet_tol: float = 1e-6
    radius: float = 0.3


# -- responses ----------------------------------------------------------------

class ValidateResponse(BaseModel):
    hermitian: bool
    nnd: bool
    hermitian_defect: float
    min_eigenvalue: float
    constant_term_re: float
    constant_term_im: float


class VerdictResponse(BaseModel):
    outcome: Literal["isomorphic", "not_isomorphic", "inconclusive"]
    failed_condition: Literal["tan", "trans", "angle", "none"]
    witness: dict | None
    tolerance: float
    method: str
    details: dict


class InvariantsResponse(BaseModel):
    dim: int
    radius: float
    count: int
    hypersurface: dict
    rows: list[dict]


class EigenvectorPointModel(BaseModel):
    point: list[list[float]]  # [re, im] per coordinate
    max_residual: float
    eigenspace_dim: int
    ok: bool


class ModelCheckResponse(BaseModel):
    model_degree: int
    gram_identity_defect: float
    jet_unitarity_defect: float
    eigenvector_checks: list[EigenvectorPointModel]
    passed: bool
