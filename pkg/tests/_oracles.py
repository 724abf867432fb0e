"""Independent brute-force oracles.

Everything here deliberately avoids the library's computational paths:
products are dict convolutions, kernel coefficients come from DFT extraction
on closed-form evaluations, and curvature is checked by finite differences
of the evaluated logarithm.
"""
from __future__ import annotations

import itertools

import numpy as np


def dict_multiply(a: dict, b: dict, cap: int) -> dict:
    """Truncated product of {(alpha, beta): coeff} dictionaries."""
    out: dict = {}
    for (aa, ab), ca in a.items():
        for (ba, bb), cb in b.items():
            alpha = tuple(x + y for x, y in zip(aa, ba))
            beta = tuple(x + y for x, y in zip(ab, bb))
            if sum(alpha) <= cap and sum(beta) <= cap:
                key = (alpha, beta)
                out[key] = out.get(key, 0) + ca * cb
    return {k: v for k, v in out.items() if v != 0}


def dict_evaluate(d: dict, z, w) -> complex:
    z = np.asarray(z, dtype=complex)
    wbar = np.conj(np.asarray(w, dtype=complex))
    total = 0j
    for (alpha, beta), c in sorted(d.items()):
        total += c * np.prod(z ** np.array(alpha)) * np.prod(wbar ** np.array(beta))
    return complex(total)


def diagonal_kernel_coeff_dft(closed_form, alpha, r: float = 0.4, n: int = 32):
    """Coefficient of (z conj(w))**alpha for a kernel K = F(z1 conj(w1), z2 conj(w2)).

    ``closed_form`` maps the two products t1, t2 to K.  Sampling on a torus
    of radius r**2 and applying a 2D inverse FFT extracts the coefficient
    without any series arithmetic.
    """
    psi = 2 * np.pi * np.arange(n) / n
    t1 = (r**2) * np.exp(1j * psi)[:, None]
    t2 = (r**2) * np.exp(1j * psi)[None, :]
    values = closed_form(t1, t2)
    coeffs = np.fft.fft2(values) / n**2
    a1, a2 = alpha
    return complex(coeffs[a1, a2] / (r ** (2 * (a1 + a2))))


def fd_mixed_log(evaluate_log, w, direction: int, h: float = 1e-3) -> complex:
    """Centered 4-point approximation of d_z d_wbar of a log-evaluated kernel.

    ``evaluate_log`` maps (z, w) points to log K(z, w); the derivative is
    taken in the given coordinate (0-based) on both sides.
    """
    w = np.asarray(w, dtype=complex)
    e = np.zeros_like(w)
    e[direction] = 1.0
    pp = evaluate_log(w + h * e, w + h * e)
    pm = evaluate_log(w + h * e, w - h * e)
    mp = evaluate_log(w - h * e, w + h * e)
    mm = evaluate_log(w - h * e, w - h * e)
    return (pp - pm - mp + mm) / (4 * h * h)


def pochhammer_fraction(lam_num: int, lam_den: int, n: int):
    """(lam)_n as an exact fraction for rational lam."""
    from fractions import Fraction

    lam = Fraction(lam_num, lam_den)
    value = Fraction(1)
    for k in range(n):
        value *= lam + k
    return value


def ball_coefficient_bruteforce(lam: int, alpha: tuple[int, int]):
    """Coefficient of z**alpha conj(w)**alpha in (1 - <z, w>)**(-lam).

    Expands sum_n (lam)_n / n! * (t1 + t2)**n with exact integer arithmetic
    (lam integer), entirely independent of the library's formula.
    """
    from fractions import Fraction
    from math import comb, factorial

    n = sum(alpha)
    poch = pochhammer_fraction(lam, 1, n)
    # multinomial expansion of (t1 + t2)**n: coefficient of t1**a1 t2**a2
    multi = comb(n, alpha[0])
    return Fraction(poch) * multi / factorial(n)


def monomials_up_to(dim: int, cap: int):
    return sorted(
        a for a in itertools.product(range(cap + 1), repeat=dim) if sum(a) <= cap
    )
