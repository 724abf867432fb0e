"""Unitary-equivalence decision for quotient Hilbert modules.

The package works with truncated power-series representations of
reproducing kernels.  A quotient module (functions modulo those vanishing to
second order on a hypersurface) is described by its kernel and the
hypersurface; two such modules are unitarily equivalent exactly when their
tangential curvature, transversal curvature, and jet-frame angle pairing
agree along the hypersurface.  An independent finite-truncation model of the
underlying Hilbert space cross-checks every verdict.
"""

from .equivalence import (
    CONCORDANCE_PAIRS,
    QuotientModuleSpec,
    Verdict,
    builtin_corpus,
    compare_b1,
    compare_quotient,
    oracle_compare,
)
from .errors import QuotmodError
from .geometry import (
    CurvatureForm,
    InvariantReport,
    curvature_form,
    hypersurface_grid,
    invariant_report,
    split_curvature,
)
from .jets import JetKernel, jet_action_matrix, jet_kernel, nilpotent_at
from .kernels import KernelSpec, build_kernel, gauge_transform, realize_kernel
from .normalize import lemma_frame_check, normalize_kernel
from .oracle import TruncatedModel, check_eigenvector, check_jet_unitarity, truncated_model
from .series import (
    HoloSeries,
    HypersurfaceSpec,
    SesquiSeries,
    differentiate,
    evaluate,
    holo_series,
    is_nnd,
    log_series,
    multiply,
    reciprocal,
    restrict_hypersurface,
    sesqui_series,
)

__version__ = "0.1.0"

__all__ = [
    "CONCORDANCE_PAIRS",
    "CurvatureForm",
    "HoloSeries",
    "HypersurfaceSpec",
    "InvariantReport",
    "JetKernel",
    "KernelSpec",
    "QuotientModuleSpec",
    "QuotmodError",
    "SesquiSeries",
    "TruncatedModel",
    "Verdict",
    "build_kernel",
    "builtin_corpus",
    "check_eigenvector",
    "check_jet_unitarity",
    "compare_b1",
    "compare_quotient",
    "curvature_form",
    "differentiate",
    "evaluate",
    "gauge_transform",
    "holo_series",
    "hypersurface_grid",
    "invariant_report",
    "is_nnd",
    "jet_action_matrix",
    "jet_kernel",
    "lemma_frame_check",
    "log_series",
    "multiply",
    "normalize_kernel",
    "oracle_compare",
    "realize_kernel",
    "reciprocal",
    "restrict_hypersurface",
    "sesqui_series",
    "truncated_model",
]
