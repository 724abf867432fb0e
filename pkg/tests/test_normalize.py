import numpy as np
import pytest

from quotmod import kernels as ke
from quotmod import normalize as no
from quotmod import series as se
from quotmod.errors import DegenerateKernelError

CAP = 12
FLAT = se.HypersurfaceSpec()

GAUGES = {
    "one_plus_z1": {(0, 0): 1.0, (1, 0): 0.3},
    "one_plus_z2sq": {(0, 0): 1.0, (0, 2): 0.1},
    "constant_two": {(0, 0): 2.0},
}


def _gauge(name):
    return se.holo_series(2, CAP, GAUGES[name])


def test_already_normalized_fixed_point():
    k = ke.build_kernel(ke.KernelSpec("product_power", lam=2.0, mu=3.0))
    k0 = no.normalize_kernel(k)
    assert np.array_equal(k0.coeffs, k.coeffs)


def test_idempotence_exact():
    k = ke.build_kernel(ke.KernelSpec("ball_power", lam=2.0))
    gauged = ke.gauge_transform(k, _gauge("one_plus_z1"))
    once = no.normalize_kernel(gauged)
    twice = no.normalize_kernel(once)
    assert np.array_equal(once.coeffs, twice.coeffs)


def test_base_point_slice_exactly_one():
    k = ke.gauge_transform(
        ke.build_kernel(ke.KernelSpec("product_power", lam=1.0, mu=2.0)),
        _gauge("one_plus_z2sq"),
    )
    k0 = no.normalize_kernel(k)
    unit = np.zeros(k0.basis.size)
    unit[0] = 1.0
    assert np.array_equal(k0.coeffs[:, 0], unit)
    assert np.array_equal(k0.coeffs[0, :], unit)


@pytest.mark.parametrize("gauge_name", sorted(GAUGES))
@pytest.mark.parametrize(
    "kernel_name", ["product_1_1", "product_2_3", "ball_1", "exp_0.1"]
)
def test_gauge_quotient(corpus_kernels, kernel_name, gauge_name):
    base = corpus_kernels[kernel_name]
    gauged = ke.gauge_transform(base, _gauge(gauge_name))
    assert se.max_coeff_diff(
        no.normalize_kernel(gauged), no.normalize_kernel(base)
    ) < 1e-10


def test_constant_scale_absorbed():
    k = ke.build_kernel(ke.KernelSpec("product_power", lam=2.0, mu=3.0))
    doubled = se.scale(k, 2.0)
    diff = se.max_coeff_diff(no.normalize_kernel(doubled), no.normalize_kernel(k))
    assert diff < 1e-12


def test_normalize_preserves_nnd():
    k = ke.gauge_transform(
        ke.build_kernel(ke.KernelSpec("ball_power", lam=1.0)), _gauge("one_plus_z1")
    )
    ok, witness = se.is_nnd(no.normalize_kernel(k), tol=1e-10)
    assert ok, witness


def test_degenerate_base_point_rejected():
    k = se.sesqui_series(2, CAP, {((1, 0), (1, 0)): 1.0})
    with pytest.raises(DegenerateKernelError):
        no.normalize_kernel(k)
    neg = se.sesqui_series(2, CAP, {((0, 0), (0, 0)): -1.0})
    with pytest.raises(DegenerateKernelError):
        no.normalize_kernel(neg)


# ---------------------------------------------------------------------------
# frame normal form
# ---------------------------------------------------------------------------

def test_lemma_frame_product():
    k0 = no.normalize_kernel(
        ke.build_kernel(ke.KernelSpec("product_power", lam=2.0, mu=3.0))
    )
    check = no.lemma_frame_check(k0, FLAT)
    assert check.ok
    assert check.max_defect <= 1e-12


def test_lemma_frame_exp_quadratic():
    k0 = no.normalize_kernel(
        ke.build_kernel(ke.KernelSpec("exp_quadratic", matrix=((1.0, 0.1), (0.1, 1.0))))
    )
    assert no.lemma_frame_check(k0, FLAT).ok


def test_lemma_frame_whole_corpus(corpus_kernels):
    for name, kernel in corpus_kernels.items():
        k0 = no.normalize_kernel(kernel)
        check = no.lemma_frame_check(k0, FLAT)
        assert check.ok, (name, check)


def test_lemma_frame_fails_for_unnormalized_gauge():
    k = ke.build_kernel(ke.KernelSpec("product_power", lam=2.0, mu=3.0))
    gauged = ke.gauge_transform(k, _gauge("one_plus_z1"))
    check = no.lemma_frame_check(gauged, FLAT)
    assert not check.ok
    assert check.offending_entry == (1, 0)
    # the defect is exactly the gauge derivative at the base point
    assert check.max_defect == pytest.approx(0.3)


def test_second_frame_vector_value():
    # S(w) entry of the normal form: for the product kernel, entry (1,1)
    # restricted to the surface is the constant lam
    from quotmod import jets as je

    lam, mu = 4.0, 1.0
    k0 = no.normalize_kernel(
        ke.build_kernel(ke.KernelSpec("product_power", lam=lam, mu=mu))
    )
    jk = je.jet_kernel(k0, 2, FLAT)
    entry11 = se.restrict_hypersurface(jk.entry(1, 1), FLAT)
    # z = 0 slice: the anti-holomorphic function S; constant lam here
    slice_w = entry11.coeffs[0, :]
    assert slice_w[0] == pytest.approx(lam)
    assert np.max(np.abs(slice_w[1:])) < 1e-14
