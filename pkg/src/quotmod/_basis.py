"""Monomial-basis bookkeeping shared by every series operation.

A basis enumerates all multi-indices of a fixed dimension with total degree
up to a cap, in lexicographic order.  All series coefficients are stored as
dense arrays over this enumeration, so the expensive truncated convolution
can be driven by precomputed index-pair tables.
"""
from __future__ import annotations

import itertools
from functools import lru_cache

import numba
import numpy as np


@numba.njit(cache=True)
def _convolve_pairs(a, b, out, src_a, src_b, dst):
    # out[t, s] += a[i, k] * b[j, l] over all index pairs with
    # alpha_i + alpha_j = alpha_t and beta_k + beta_l = beta_s.
    n_pairs = src_a.shape[0]
    for p in range(n_pairs):
        i = src_a[p]
        j = src_b[p]
        t = dst[p]
        for q in range(n_pairs):
            out[t, dst[q]] += a[i, src_a[q]] * b[j, src_b[q]]


class Basis:
    """Index bookkeeping for one (dimension, degree cap) pair."""

    def __init__(self, dim: int, cap: int):
        if dim < 0 or cap < 0:
            raise ValueError(f"invalid basis parameters dim={dim} cap={cap}")
        self.dim = dim
        self.cap = cap
        self.indices: tuple[tuple[int, ...], ...] = tuple(
            sorted(
                a
                for a in itertools.product(range(cap + 1), repeat=dim)
                if sum(a) <= cap
            )
        )
        self.size = len(self.indices)
        self.position: dict[tuple[int, ...], int] = {
            a: i for i, a in enumerate(self.indices)
        }
        self.exponents = np.array(self.indices, dtype=np.int64).reshape(self.size, dim)
        self.degrees = self.exponents.sum(axis=1)

        src_a, src_b, dst = [], [], []
        for i, a in enumerate(self.indices):
            for j, b in enumerate(self.indices):
                if sum(a) + sum(b) <= cap:
                    src_a.append(i)
                    src_b.append(j)
                    dst.append(self.position[tuple(x + y for x, y in zip(a, b))])
        self.pair_src_a = np.array(src_a, dtype=np.int64)
        self.pair_src_b = np.array(src_b, dtype=np.int64)
        self.pair_dst = np.array(dst, dtype=np.int64)

        self._deriv_matrices: dict[int, np.ndarray] = {}
        self._graded_order: np.ndarray | None = None
        self._pairs_by_dst: list[tuple[np.ndarray, np.ndarray]] | None = None

    # -- derivatives -------------------------------------------------------

    def deriv_matrix(self, coord: int) -> np.ndarray:
        """Matrix D with (D v)_alpha = (alpha_coord + 1) * v_{alpha + e_coord}."""
        if coord not in self._deriv_matrices:
            mat = np.zeros((self.size, self.size))
            for i, a in enumerate(self.indices):
                shifted = tuple(
                    x + 1 if c == coord else x for c, x in enumerate(a)
                )
                j = self.position.get(shifted)
                if j is not None:
                    mat[i, j] = a[coord] + 1
            self._deriv_matrices[coord] = mat
        return self._deriv_matrices[coord]

    # -- convolution -------------------------------------------------------

    def convolve(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        """Truncated product of two coefficient matrices over this basis."""
        out = np.zeros((self.size, self.size), dtype=np.complex128)
        _convolve_pairs(
            np.ascontiguousarray(a, dtype=np.complex128),
            np.ascontiguousarray(b, dtype=np.complex128),
            out,
            self.pair_src_a,
            self.pair_src_b,
            self.pair_dst,
        )
        return out

    def holo_convolve(self, f: np.ndarray, g: np.ndarray) -> np.ndarray:
        """Truncated product of two coefficient vectors over this basis."""
        out = np.zeros(self.size, dtype=np.complex128)
        np.add.at(out, self.pair_dst, f[self.pair_src_a] * g[self.pair_src_b])
        return out

    def holo_mult_matrix(self, f: np.ndarray) -> np.ndarray:
        """Dense matrix of truncated multiplication by the series f."""
        mat = np.zeros((self.size, self.size), dtype=np.complex128)
        np.add.at(mat, (self.pair_dst, self.pair_src_b), f[self.pair_src_a])
        return mat

    # -- graded recursions -------------------------------------------------

    @property
    def graded_order(self) -> np.ndarray:
        """Index positions sorted by (total degree, lexicographic index)."""
        if self._graded_order is None:
            order = sorted(range(self.size), key=lambda i: (self.degrees[i], i))
            self._graded_order = np.array(order, dtype=np.int64)
        return self._graded_order

    @property
    def pairs_by_dst(self) -> list[tuple[np.ndarray, np.ndarray]]:
        """For each target index, the (i, j) source pairs with i + j = target."""
        if self._pairs_by_dst is None:
            groups: list[list[tuple[int, int]]] = [[] for _ in range(self.size)]
            for i, j, t in zip(self.pair_src_a, self.pair_src_b, self.pair_dst):
                groups[t].append((i, j))
            self._pairs_by_dst = [
                (
                    np.array([p[0] for p in g], dtype=np.int64),
                    np.array([p[1] for p in g], dtype=np.int64),
                )
                for g in groups
            ]
        return self._pairs_by_dst

    # -- restriction helpers -------------------------------------------------

    def slice_positions(self, coord: int) -> tuple[np.ndarray, np.ndarray]:
        """Positions with zero exponent at coord, and their reduced-basis images."""
        reduced = basis(self.dim - 1, self.cap)
        src, dst = [], []
        for i, a in enumerate(self.indices):
            if a[coord] == 0:
                src.append(i)
                dst.append(reduced.position[a[:coord] + a[coord + 1 :]])
        return np.array(src, dtype=np.int64), np.array(dst, dtype=np.int64)

    # -- evaluation --------------------------------------------------------

    def point_powers(self, point: np.ndarray) -> np.ndarray:
        """Vector of point**alpha over the basis (empty products give 1)."""
        if self.dim == 0:
            return np.ones(1, dtype=np.complex128)
        return np.prod(
            np.asarray(point, dtype=np.complex128)[None, :] ** self.exponents, axis=1
        )


@lru_cache(maxsize=None)
def basis(dim: int, cap: int) -> Basis:
    return Basis(dim, cap)
