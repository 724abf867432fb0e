"""Request handlers shared by the HTTP endpoints and the CLI.

Each handler maps a validated request model to a response model using the
core library; domain errors propagate to the caller, which maps them to
HTTP status codes or process exit codes.
"""
from __future__ import annotations

from .. import equivalence as eq
from .. import kernels as ke
from .. import oracle as orc
from .. import reports as rp
from .. import series as se
from . import schemas as sc


def run_validate(request: sc.ValidateRequest) -> sc.ValidateResponse:
    result = ke.validate_kernel(request.kernel.to_domain())
    return sc.ValidateResponse(
        hermitian=result.hermitian,
        nnd=result.nnd,
        hermitian_defect=result.hermitian_defect,
        min_eigenvalue=result.min_eigenvalue,
        constant_term_re=result.constant_term_re,
        constant_term_im=result.constant_term_im,
    )


def run_invariants(request: sc.InvariantsRequest) -> sc.InvariantsResponse:
    spec = request.to_domain()
    pipeline = eq.build_pipeline(spec)
    return sc.InvariantsResponse(
        dim=pipeline.report.dim,
        radius=pipeline.report.radius,
        count=pipeline.report.count,
        hypersurface=se.hypersurface_to_dict(spec.hypersurface),
        rows=rp.report_rows(pipeline.report),
    )


def run_compare(request: sc.CompareRequest) -> sc.VerdictResponse:
    spec_a, spec_b = request.to_domain()
    if request.oracle:
        verdict = eq.oracle_compare(spec_a, spec_b, tol=request.oracle_tol)
    else:
        verdict = eq.compare_quotient(spec_a, spec_b, tol=request.tol)
    return sc.VerdictResponse(**verdict.to_dict())


def run_model_check(request: sc.ModelCheckRequest) -> sc.ModelCheckResponse:
    kernel = ke.realize_kernel(request.kernel.to_domain())
    model = orc.truncated_model(kernel, request.model_degree)
    gram_defect = orc.gram_identity_defect(model)
    jet = orc.check_jet_unitarity(model, tol=request.jet_tol, radius=request.radius)
    checks = []
    all_ok = True
    for point in orc.sample_points(model.dim):
        check = orc.check_eigenvector(model, point, tol=request.residual_tol)
        all_ok &= check.ok
        checks.append(
            sc.EigenvectorPointModel(
                point=[[float(c.real), float(c.imag)] for c in point],
                max_residual=check.max_residual,
                eigenspace_dim=check.eigenspace_dim,
                ok=check.ok,
            )
        )
    passed = bool(all_ok and jet.ok and gram_defect <= 1e-10)
    return sc.ModelCheckResponse(
        model_degree=model.degree,
        gram_identity_defect=gram_defect,
        jet_unitarity_defect=jet.max_defect,
        eigenvector_checks=checks,
        passed=passed,
    )
