import numpy as np
import pytest

from quotmod import kernels as ke
from quotmod import oracle as orc
from quotmod import series as se
from quotmod.errors import InvalidOperandError, RankDeficiencyError

CAP = 12
DM = 6


def _model(kernel):
    return orc.truncated_model(kernel, DM)


def test_gram_identity_for_geometric_kernel():
    # one-variable kernel with unit coefficients: monomials are orthonormal
    k = se.sesqui_series(1, CAP, {((n,), (n,)): 1.0 for n in range(CAP + 1)})
    model = _model(k)
    assert np.array_equal(model.gram, np.eye(DM + 1))


def test_monomial_norm_product_2_1(corpus_kernels):
    model = _model(corpus_kernels["product_2_1"])
    i = model.basis.position[(1, 0)]
    # coefficient of z1 conj(w1) is lambda = 2, so ||z1||^2 = 1/2
    assert model.gram[i, i] == pytest.approx(0.5)


def test_gram_identity_defect_corpus(corpus_kernels):
    for name, kernel in corpus_kernels.items():
        defect = orc.gram_identity_defect(_model(kernel))
        assert defect <= 1e-10, name


def test_gram_hermitian_positive_definite(corpus_kernels):
    for name, kernel in corpus_kernels.items():
        gram = _model(kernel).gram
        assert np.max(np.abs(gram - gram.conj().T)) < 1e-12, name
        assert np.linalg.eigvalsh(gram)[0] > 0, name


def test_multiplication_operators_commute_exactly(corpus_kernels):
    model = _model(corpus_kernels["ball_2"])
    m1, m2 = model.mult
    assert np.array_equal(m1 @ m2, m2 @ m1)
    assert set(np.unique(m1)) <= {0.0, 1.0}


def test_adjoint_pairing_identity(corpus_kernels):
    model = _model(corpus_kernels["product_2_3"])
    rng = np.random.default_rng(5)
    n = model.gram.shape[0]
    for _ in range(4):
        x = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        y = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        for m, adj in zip(model.mult, model.adjoints):
            lhs = model.inner(m @ x, y)
            rhs = model.inner(x, adj @ y)
            assert abs(lhs - rhs) < 1e-12


def test_eigenvector_at_origin(corpus_kernels):
    for name, kernel in corpus_kernels.items():
        check = orc.check_eigenvector(_model(kernel), (0, 0))
        assert check.ok, name
        assert check.max_residual < 1e-12, name
        # eigenvector at 0 is the constant monomial
        x = _model(kernel).kernel_vector((0, 0))
        assert abs(x[0]) > 0 and np.max(np.abs(x[1:])) < 1e-12, name


def test_eigenvector_at_sample_points(corpus_kernels):
    for name, kernel in corpus_kernels.items():
        model = _model(kernel)
        for w in orc.sample_points(2):
            check = orc.check_eigenvector(model, w)
            assert check.ok, (name, w)
            assert check.max_residual <= 1e-5, (name, w)
            assert check.eigenspace_dim == 1, (name, w)


def test_eigenvector_residual_scales_with_radius(corpus_kernels):
    # the truncation tail grows like |w|**(degree+1): measurable but bounded
    model = _model(corpus_kernels["product_1_1"])
    near = orc.check_eigenvector(model, (0.02, 0.01), tol=1e-4)
    far = orc.check_eigenvector(model, (0.2, 0.1), tol=1e-4)
    assert near.max_residual < far.max_residual
    assert far.max_residual == pytest.approx(1.45e-5, rel=0.2)
    assert far.max_residual <= 1e-4


def test_joint_kernel_dimension_is_one_not_more(corpus_kernels):
    # degenerate rank would show as dimension > 1; residual tolerance is
    # generous enough that a dimension-2 kernel would be a real failure
    model = _model(corpus_kernels["exp_0.2"])
    for w in orc.sample_points(2):
        assert orc.check_eigenvector(model, w).eigenspace_dim == 1


def test_rank_deficient_kernel_rejected():
    k = se.sesqui_series(2, CAP, {((1, 0), (1, 0)): 1.0})
    with pytest.raises(RankDeficiencyError):
        orc.truncated_model(k, 4)


def test_model_degree_gate():
    k = se.sesqui_one(2, 4)
    with pytest.raises(InvalidOperandError):
        orc.truncated_model(k, 6)


# ---------------------------------------------------------------------------
# jet unitarity
# ---------------------------------------------------------------------------

def test_jet_unitarity_scalar_reduction(corpus_kernels):
    # first fiber direction reduces to the scalar reproducing property
    model = _model(corpus_kernels["product_1_1"])
    w = (0.2, 0.1)
    g1 = model.kernel_vector(w)
    for gi, gamma in enumerate(model.basis.indices):
        lhs = (g1.conj() @ model.metric)[gi]
        rhs = np.prod(np.asarray(w, dtype=complex) ** np.array(gamma))
        assert abs(lhs - rhs) < 1e-13


def test_jet_unitarity_derivative_component(corpus_kernels):
    # h = z1 against the second fiber direction gives d(z1)/dz1 = 1 at w
    model = _model(corpus_kernels["product_2_3"])
    check = orc.check_jet_unitarity(model, k=2, points=((0.1, 0.2),))
    assert check.ok


def test_jet_unitarity_corpus_defect(corpus_kernels):
    for name, kernel in corpus_kernels.items():
        check = orc.check_jet_unitarity(_model(kernel))
        assert check.ok, name
        assert check.max_defect <= 1e-6, name


def test_jet_point_outside_radius_rejected(corpus_kernels):
    model = _model(corpus_kernels["product_1_1"])
    with pytest.raises(InvalidOperandError):
        orc.check_jet_unitarity(model, points=((0.5, 0.0),))
