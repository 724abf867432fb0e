import math

import numpy as np
import pytest

from quotmod import geometry as ge
from quotmod import jets as je
from quotmod import kernels as ke
from quotmod import normalize as no
from quotmod import series as se
from quotmod.errors import SignatureError

from _oracles import fd_mixed_log

CAP = 12
FLAT = se.HypersurfaceSpec()


def _normalized(kind, **kw):
    return no.normalize_kernel(ke.build_kernel(ke.KernelSpec(kind, **kw)))


# closed-form oracles for the three families
def product_tan(mu, w2):
    return -mu / (1 - abs(w2) ** 2) ** 2


def ball_trans(lam, w2):
    return -lam / (1 - abs(w2) ** 2)


def ball_tan(lam, w2):
    return -lam / (1 - abs(w2) ** 2) ** 2


# ---------------------------------------------------------------------------
# curvature form
# ---------------------------------------------------------------------------

def test_curvature_entries_at_origin():
    lam, mu = 2.0, 3.0
    form = ge.curvature_form(_normalized("product_power", lam=lam, mu=mu))
    assert se.evaluate(form.entry(1, 1), (0, 0), (0, 0)) == pytest.approx(-lam)
    assert se.evaluate(form.entry(2, 2), (0, 0), (0, 0)) == pytest.approx(-mu)
    assert abs(se.evaluate(form.entry(1, 2), (0, 0), (0, 0))) < 1e-13


def test_curvature_of_flat_kernel_vanishes():
    form = ge.curvature_form(se.sesqui_one(2, CAP))
    for i in range(1, 3):
        for j in range(1, 3):
            assert not form.entry(i, j).coeffs.any()


def test_curvature_gauge_invariance_on_diagonal():
    k = ke.build_kernel(ke.KernelSpec("product_power", lam=2.0, mu=3.0))
    f = se.holo_series(2, CAP, {(0, 0): 1.0, (1, 0): 0.3, (0, 2): 0.1})
    form = ge.curvature_form(k)
    form_gauged = ge.curvature_form(ke.gauge_transform(k, f))
    for point in [(0.0, 0.0), (0.1, 0.2), (0.15j, -0.1), (0.2, 0.1 + 0.1j)]:
        for i in range(1, 3):
            for j in range(1, 3):
                a = se.evaluate(form.entry(i, j), point, point)
                b = se.evaluate(form_gauged.entry(i, j), point, point)
                assert abs(a - b) < 1e-9


def test_curvature_diagonal_nonpositive_for_builtins(corpus_kernels):
    for name, kernel in corpus_kernels.items():
        form = ge.curvature_form(no.normalize_kernel(kernel))
        for i in (1, 2):
            for w2 in (0.0, 0.2, -0.1j):
                value = se.evaluate(form.entry(i, i), (0, w2), (0, w2))
                assert value.real <= 1e-12, (name, i, w2)


def test_two_formula_agreement():
    for kind, kw in [
        ("product_power", {"lam": 2.0, "mu": 3.0}),
        ("ball_power", {"lam": 2.0}),
        ("exp_quadratic", {"matrix": ((1.0, 0.1), (0.1, 1.0))}),
    ]:
        k0 = _normalized(kind, **kw)
        log_route = ge.curvature_form(k0)
        rational_route = ge.curvature_form_rational(k0)
        for w2 in ge.hypersurface_grid(8, 0.3):
            point = (0.0, w2)
            for i in range(1, 3):
                for j in range(1, 3):
                    a = se.evaluate(log_route.entry(i, j), point, point)
                    b = se.evaluate(rational_route.entry(i, j), point, point)
                    assert abs(a - b) < 1e-9, (kind, i, j, w2)


def test_log_hessian_sign_convention():
    k0 = _normalized("product_power", lam=2.0, mu=1.0)
    raw = ge.log_hessian(k0)
    form = ge.curvature_form(k0)
    a = se.evaluate(raw[0][0], (0, 0), (0, 0))
    b = se.evaluate(form.entry(1, 1), (0, 0), (0, 0))
    assert a == pytest.approx(2.0) and b == pytest.approx(-2.0)


# ---------------------------------------------------------------------------
# split along the hypersurface
# ---------------------------------------------------------------------------

def test_split_product_closed_forms():
    lam, mu = 2.0, 3.0
    k_tan, k_trans = ge.split_curvature(
        ge.curvature_form(_normalized("product_power", lam=lam, mu=mu)), FLAT
    )
    for w2 in ge.hypersurface_grid(16, 0.3):
        assert se.evaluate(k_trans, (w2,), (w2,)) == pytest.approx(-lam, abs=1e-9)
        assert se.evaluate(k_tan[0][0], (w2,), (w2,)) == pytest.approx(
            product_tan(mu, w2), abs=1e-7
        )


def test_split_ball_closed_forms():
    lam = 2.0
    k_tan, k_trans = ge.split_curvature(
        ge.curvature_form(_normalized("ball_power", lam=lam)), FLAT
    )
    for w2 in ge.hypersurface_grid(16, 0.3):
        assert se.evaluate(k_trans, (w2,), (w2,)) == pytest.approx(
            ball_trans(lam, w2), abs=1e-7
        )
        assert se.evaluate(k_tan[0][0], (w2,), (w2,)) == pytest.approx(
            ball_tan(lam, w2), abs=1e-7
        )


def test_split_exp_quadratic_constant_curvature():
    eps = 0.1
    k_tan, k_trans = ge.split_curvature(
        ge.curvature_form(_normalized("exp_quadratic", matrix=((1, eps), (eps, 1)))),
        FLAT,
    )
    for w2 in (0.0, 0.2, -0.25j):
        assert se.evaluate(k_trans, (w2,), (w2,)) == pytest.approx(-1.0, abs=1e-10)
        assert se.evaluate(k_tan[0][0], (w2,), (w2,)) == pytest.approx(
            -1.0, abs=1e-10
        )


def test_finite_difference_cross_check():
    # transversal and tangential curvature against 4-point differences of
    # the evaluated log; step 1e-3, agreement within 1e-5
    for kind, kw, trans_expected in [
        ("product_power", {"lam": 2.0, "mu": 3.0}, lambda w2: -2.0),
        ("ball_power", {"lam": 1.0}, lambda w2: ball_trans(1.0, w2)),
    ]:
        k0 = _normalized(kind, **kw)
        k_tan, k_trans = ge.split_curvature(ge.curvature_form(k0), FLAT)

        def log_eval(z, w):
            return np.log(se.evaluate(k0, z, w, radius=0.32).real + 0j) \
                if np.allclose(z, w) else None

        def log_eval_c(z, w):
            value = se.evaluate(k0, z, w, radius=0.32)
            return complex(np.log(value))

        for w2 in (0.0, 0.15, -0.2, 0.1j):
            base = np.array((0.0, w2), dtype=complex)
            fd_trans = fd_mixed_log(log_eval_c, base, direction=0)
            fd_tan = fd_mixed_log(log_eval_c, base, direction=1)
            assert abs(-fd_trans - se.evaluate(k_trans, (w2,), (w2,))) < 1e-5
            assert abs(-fd_tan - se.evaluate(k_tan[0][0], (w2,), (w2,))) < 1e-5


# ---------------------------------------------------------------------------
# angle invariant
# ---------------------------------------------------------------------------

def test_angle_vanishes_for_diagonal_families():
    for kind, kw in [
        ("product_power", {"lam": 2.0, "mu": 3.0}),
        ("ball_power", {"lam": 2.0}),
    ]:
        jk = je.jet_kernel(_normalized(kind, **kw), 2, FLAT)
        for w2 in ge.hypersurface_grid(16, 0.3):
            assert abs(ge.angle_invariant(jk, (w2,), FLAT)) < 1e-12


def test_angle_exp_quadratic_closed_form():
    # dbar of exp(z.A.wbar) brings down z1 + eps z2, evaluated at z = w
    eps = 0.1
    jk = je.jet_kernel(
        _normalized("exp_quadratic", matrix=((1, eps), (eps, 1))), 2, FLAT
    )
    for w2 in (0.5, 0.3, 0.2j, -0.4):
        expected = eps * w2 * math.exp(abs(w2) ** 2)
        got = ge.angle_invariant(jk, (w2,), FLAT, radius=0.6)
        assert got == pytest.approx(expected, abs=1e-9)


# ---------------------------------------------------------------------------
# frame coefficients and orthonormal nilpotent
# ---------------------------------------------------------------------------

def test_frame_coefficients_product_4_1():
    k0 = _normalized("product_power", lam=4.0, mu=1.0)
    jk = je.jet_kernel(k0, 2, FLAT)
    a, b = ge.frame_coefficients(k0, jk, FLAT, (0.0,))
    assert abs(a) < 1e-12
    assert b == pytest.approx(0.5, abs=1e-12)  # (-(-4))**(-1/2)


def test_frame_coefficients_exp_sign_flip():
    values = {}
    for eps in (0.1, -0.1):
        k0 = _normalized("exp_quadratic", matrix=((1, eps), (eps, 1)))
        jk = je.jet_kernel(k0, 2, FLAT)
        a, b = ge.frame_coefficients(k0, jk, FLAT, (0.2,))
        values[eps] = a
        assert b > 0
    assert values[0.1] == pytest.approx(-values[-0.1], abs=1e-12)
    assert abs(values[0.1]) > 1e-3


def test_nilpotent_orth_product_4_1():
    k0 = _normalized("product_power", lam=4.0, mu=1.0)
    phi = FLAT.defining_function(2, CAP)
    mat = ge.nilpotent_orth(k0, FLAT, phi, (0.0,))
    assert mat[0, 1] == pytest.approx(0.5, abs=1e-9)
    assert np.array_equal(mat @ mat, np.zeros((2, 2)))


def test_nilpotent_orth_exp_identity_matrix():
    k0 = _normalized("exp_quadratic", matrix=((1.0, 0.0), (0.0, 1.0)))
    phi = FLAT.defining_function(2, CAP)
    for w2 in ge.hypersurface_grid(8, 0.3):
        mat = ge.nilpotent_orth(k0, FLAT, phi, (w2,))
        assert mat[0, 1] == pytest.approx(1.0, abs=1e-10)


def test_signature_error_outside_regime():
    k0 = se.sesqui_one(2, CAP)  # flat metric, zero curvature
    with pytest.raises(SignatureError):
        ge.nilpotent_orth(k0, FLAT, FLAT.defining_function(2, CAP), (0.0,))


# ---------------------------------------------------------------------------
# grid and report
# ---------------------------------------------------------------------------

def test_grid_canonical_prefix():
    grid = ge.hypersurface_grid(16, 0.3)
    assert grid[:9] == (
        0.0,
        0.15,
        -0.15,
        0.3,
        -0.3,
        0.15j,
        -0.15j,
        0.3j,
        -0.3j,
    )
    assert grid[9] == 0.15 + 0.15j
    assert len(grid) == 16
    assert all(abs(p) <= 0.3 + 1e-12 for p in grid)


def test_grid_other_counts():
    assert len(ge.hypersurface_grid(5, 0.3)) == 5
    big = ge.hypersurface_grid(29, 0.3)
    assert len(big) == 29
    assert all(abs(p) <= 0.3 + 1e-12 for p in big)
    assert big == ge.hypersurface_grid(29, 0.3)  # deterministic


def test_invariant_report_values():
    report = ge.invariant_report(
        _normalized("product_power", lam=4.0, mu=1.0), FLAT
    )
    assert report.count == 16
    assert np.allclose(report.k_trans, -4.0, atol=1e-9)
    assert np.allclose(report.angle, 0.0, atol=1e-12)
    assert np.allclose(report.b_norm, 0.5, atol=1e-10)
    assert np.allclose(report.n_orth_12, 0.5, atol=1e-10)
    for p, (w2,) in enumerate(report.points):
        assert report.k_tan[p, 0, 0] == pytest.approx(product_tan(1.0, w2), abs=1e-7)


def test_b_norm_definition_consistency():
    report = ge.invariant_report(_normalized("ball_power", lam=2.0), FLAT)
    assert np.allclose(report.b_norm**2 * (-report.k_trans), 1.0, atol=1e-12)
