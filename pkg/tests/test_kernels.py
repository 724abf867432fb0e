import math

import numpy as np
import pytest

from quotmod import kernels as ke
from quotmod import normalize as no
from quotmod import series as se
from quotmod.errors import GaugeSingularError, InvalidKernelError, InvalidOperandError

from _oracles import ball_coefficient_bruteforce, diagonal_kernel_coeff_dft

CAP = 12


def test_product_power_first_coefficient():
    k = ke.build_kernel(ke.KernelSpec("product_power", lam=1.0, mu=1.0))
    assert k.coeff((1, 0), (1, 0)) == 1.0


def test_product_power_against_dft_oracle():
    lam, mu = 2.0, 3.0
    k = ke.build_kernel(ke.KernelSpec("product_power", lam=lam, mu=mu))

    def closed(t1, t2):
        return (1 - t1) ** -lam * (1 - t2) ** -mu

    for alpha in [(0, 0), (1, 0), (2, 1), (3, 3), (5, 2)]:
        expected = diagonal_kernel_coeff_dft(closed, alpha)
        assert k.coeff(alpha, alpha) == pytest.approx(expected, abs=1e-8)


def test_ball_power_multinomial_coefficient():
    k = ke.build_kernel(ke.KernelSpec("ball_power", lam=2.0))
    # brute-force multinomial oracle gives 6 for the z1 z2 conj(w1 w2) term
    expected = ball_coefficient_bruteforce(2, (1, 1))
    assert expected == 6
    assert k.coeff((1, 1), (1, 1)) == pytest.approx(float(expected))


def test_ball_power_against_dft_oracle():
    lam = 1.0
    k = ke.build_kernel(ke.KernelSpec("ball_power", lam=lam))

    def closed(t1, t2):
        return (1 - t1 - t2) ** -lam

    for alpha in [(1, 0), (2, 2), (4, 1)]:
        expected = diagonal_kernel_coeff_dft(closed, alpha, r=0.35)
        assert k.coeff(alpha, alpha) == pytest.approx(expected, abs=1e-7)


def test_exp_quadratic_identity_matrix_coefficient():
    k = ke.build_kernel(ke.KernelSpec("exp_quadratic", matrix=((1.0, 0), (0, 1.0))))
    assert k.coeff((2, 0), (2, 0)) == pytest.approx(0.5)
    assert k.coeff((1, 1), (1, 1)) == pytest.approx(1.0)


def test_exp_quadratic_off_diagonal():
    eps = 0.1
    k = ke.build_kernel(
        ke.KernelSpec("exp_quadratic", matrix=((1.0, eps), (eps, 1.0)))
    )
    assert k.coeff((1, 0), (0, 1)) == pytest.approx(eps)
    assert k.coeff((0, 1), (1, 0)) == pytest.approx(eps)


def test_builtin_kernels_nnd_and_hermitian(corpus_kernels):
    for name, kernel in corpus_kernels.items():
        ok, witness = se.is_nnd(kernel, tol=1e-10)
        assert ok, f"{name} failed nnd with witness {witness}"
        assert se.hermitian_defect(kernel) == 0.0, name


def test_builtin_kernels_normalized_constant(corpus_kernels):
    for name, spec_kernel in corpus_kernels.items():
        if "gauged" in name:
            continue
        assert spec_kernel.constant == 1.0, name
        # base-point slices are exactly the constant function 1
        assert not spec_kernel.coeffs[1:, 0].any(), name


def test_invalid_parameters_rejected():
    with pytest.raises(InvalidOperandError):
        ke.KernelSpec("product_power", lam=-1.0, mu=1.0)
    with pytest.raises(InvalidOperandError):
        ke.KernelSpec("ball_power")
    with pytest.raises(InvalidOperandError):
        ke.KernelSpec("exp_quadratic", matrix=((0.0, 1.0), (0.0, 0.0)))
    with pytest.raises(InvalidOperandError):
        ke.KernelSpec("unknown_kind")


def test_literal_kernel_nnd_gate():
    spec = ke.KernelSpec(
        "series_literal",
        literal=(((0, 0), (0, 0), 1.0), ((0, 1), (1, 0), 1.0), ((1, 0), (0, 1), 1.0)),
    )
    with pytest.raises(InvalidKernelError):
        ke.build_kernel(spec)


def test_gauge_identity():
    k = ke.build_kernel(ke.KernelSpec("product_power", lam=2.0, mu=3.0))
    gauged = ke.gauge_transform(k, se.holo_one(2, CAP))
    assert np.max(np.abs(gauged.coeffs - k.coeffs)) == 0.0


def test_gauge_rank_one_product():
    one = se.sesqui_one(2, CAP)
    f = se.holo_series(2, CAP, {(0, 0): 1.0, (1, 0): 1.0})
    gauged = ke.gauge_transform(one, f)
    expected = {
        ((0, 0), (0, 0)): 1.0,
        ((1, 0), (0, 0)): 1.0,
        ((0, 0), (1, 0)): 1.0,
        ((1, 0), (1, 0)): 1.0,
    }
    assert {(a, b): c for a, b, c in gauged.items()} == expected


def test_gauge_singular_rejected():
    k = se.sesqui_one(2, CAP)
    with pytest.raises(GaugeSingularError):
        ke.gauge_transform(k, se.holo_series(2, CAP, {(1, 0): 1.0}))


def test_gauge_preserves_nnd(corpus_kernels):
    f = se.holo_series(2, CAP, {(0, 0): 1.0, (1, 0): 0.3, (0, 2): 0.1})
    for name in ("product_1_1", "ball_2", "exp_0.1"):
        gauged = ke.gauge_transform(corpus_kernels[name], f)
        ok, _ = se.is_nnd(gauged, tol=1e-10)
        assert ok, name


def test_normalize_of_gauged_recovers_normalized():
    k = ke.build_kernel(ke.KernelSpec("product_power", lam=2.0, mu=3.0))
    f = se.holo_series(2, CAP, {(0, 0): 1.0, (1, 0): 0.3, (0, 2): 0.1})
    left = no.normalize_kernel(ke.gauge_transform(k, f))
    right = no.normalize_kernel(k)
    assert se.max_coeff_diff(left, right) < 1e-10


def test_product_restricts_to_one_variable_power():
    lam, mu = 2.0, 3.0
    k = ke.build_kernel(ke.KernelSpec("product_power", lam=lam, mu=mu))
    restricted = se.restrict_hypersurface(k, se.HypersurfaceSpec())
    # oracle: rising-factorial recurrence for (1 - t)**-mu, done independently
    coeff = 1.0
    for n in range(CAP + 1):
        assert restricted.coeff((n,), (n,)) == pytest.approx(coeff)
        coeff *= (mu + n) / (n + 1)


def test_kernel_spec_json_round_trip():
    specs = [
        ke.KernelSpec("product_power", lam=2.0, mu=3.0),
        ke.KernelSpec("ball_power", lam=1.5, cap=10),
        ke.KernelSpec("exp_quadratic", matrix=((1.0, 0.1j), (-0.1j, 1.0))),
        ke.KernelSpec(
            "series_literal",
            literal=(((0, 0), (0, 0), 1.0), ((1, 0), (1, 0), 0.5 + 0j)),
            gauge=(((0, 0), 1.0 + 0j), ((1, 0), 0.3 + 0j)),
        ),
    ]
    for spec in specs:
        back = ke.kernel_spec_from_dict(ke.kernel_spec_to_dict(spec))
        assert back == spec


def test_exp_quadratic_complex_off_diagonal():
    k = ke.build_kernel(
        ke.KernelSpec("exp_quadratic", matrix=((1.0, 0.1j), (-0.1j, 1.0)))
    )
    assert k.coeff((1, 0), (0, 1)) == pytest.approx(0.1j)
    ok, _ = se.is_nnd(k, tol=1e-10)
    assert ok


def test_trusted_degree_of_builtins(corpus_kernels):
    for kernel in corpus_kernels.values():
        assert kernel.trusted == CAP
