"""Momentum-space potential kernels <k'|V|k> and their constructors.

A kernel is a dense matrix of samples on a quadrature grid plus a little
metadata: which space it lives in, whether it is symmetric, and (when the
defining formula is known in closed form) a row evaluator that returns
<q|V|k_i> at arbitrary off-grid momentum q.  The evaluator is what lets
the scattering solver append an on-shell node to the grid without ever
interpolating a kernel, which would degrade it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import ContractError, ShapeError
from .grid import MomentumGrid, RadialGrid

SYMMETRY_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class Kernel:
    """Dense kernel samples with symmetry and space metadata.

    Parameters
    ----------
    grid : MomentumGrid or RadialGrid
        The quadrature rule the samples live on.
    values : ndarray, shape (n, n)
        Samples V(k'_i, k_j); fm for momentum-space potentials.
    symmetry : {"symmetric", "general"}
        Declared symmetry; validated on construction for "symmetric".
    space : {"momentum", "coordinate"}
    evaluate : callable, optional
        evaluate(q, k_array) -> row of V(q, k) at scalar momentum q.
        Present only when a closed-form or transform expression exists.
    """

    grid: object
    values: np.ndarray
    symmetry: str = "symmetric"
    space: str = "momentum"
    evaluate: Optional[Callable] = None

    def __post_init__(self):
        v = np.asarray(self.values)
        n = self.grid.n
        if v.shape != (n, n):
            raise ShapeError(f"kernel values {v.shape} do not match grid of {n} nodes")
        if not np.all(np.isfinite(v)):
            raise ContractError("kernel contains non-finite entries")
        if self.symmetry not in ("symmetric", "general"):
            raise ContractError(f"unknown symmetry flag {self.symmetry!r}")
        if self.space not in ("momentum", "coordinate"):
            raise ContractError(f"unknown space flag {self.space!r}")
        if self.symmetry == "symmetric":
            scale = np.max(np.abs(v))
            if scale > 0 and np.max(np.abs(v - v.T)) > SYMMETRY_TOL * scale:
                raise ContractError("kernel declared symmetric is not")
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return self.grid.n


def _gauss_formula(lam: float, b: float):
    """Closed form of the Gaussian kernel as a broadcastable function.

    The subtractive form

        4 pi lam (b sqrt(pi))^3 [exp(-(k-k')^2 b^2/4) - exp(-(k+k')^2 b^2/4)] / (k k' b^2)

    is evaluated with a 2-term series once z = k k' b^2 drops below 1e-6,
    where the subtraction turns into 0/0.  Both branches agree to 1e-12
    in the overlap region.
    """
    pref = 4.0 * np.pi * lam * (b * np.sqrt(np.pi)) ** 3

    def formula(kp, k):
        kp = np.asarray(kp, dtype=float)
        k = np.asarray(k, dtype=float)
        kpc = kp[:, None] if kp.ndim == 1 else kp
        kc = k[None, :] if k.ndim == 1 else k
        z = kpc * kc * b * b
        small = z < 1e-6
        zsafe = np.where(small, 1.0, z)
        direct = (np.exp(-((kpc - kc) ** 2) * b * b / 4.0)
                  - np.exp(-((kpc + kc) ** 2) * b * b / 4.0)) / zsafe
        series = np.exp(-(kpc * kpc + kc * kc) * b * b / 4.0) * (1.0 + z * z / 24.0)
        return pref * np.where(small, series, direct)

    return formula


def gaussian_momentum_kernel(lam: float, b: float, grid: MomentumGrid) -> Kernel:
    """Momentum-space kernel of the local Gaussian potential lam exp(-r^2/b^2).

    Parameters
    ----------
    lam : float
        Strength in fm^-2; negative values are attractive.
    b : float
        Range in fm, must be positive.
    grid : MomentumGrid

    Returns
    -------
    Kernel
        Symmetric momentum-space kernel with an analytic row evaluator.
        The k, k' -> 0 limit is 4 pi lam (b sqrt(pi))^3.
    """
    if b <= 0:
        raise ContractError(f"need b > 0, got {b}")
    f = _gauss_formula(lam, b)
    k = grid.nodes

    def evaluate(q, kk):
        return f(np.atleast_1d(float(q)), np.asarray(kk))[0]

    return Kernel(grid=grid, values=f(k, k), symmetry="symmetric",
                  space="momentum", evaluate=evaluate)


def local_to_momentum(v_r: np.ndarray, rgrid: RadialGrid, kgrid: MomentumGrid) -> Kernel:
    """Double spherical-Bessel transform of a local radial potential.

    Computes <k'|V|k> = 4 pi integral 4 pi r^2 dr j0(k'r) V(r) j0(kr) on
    the radial quadrature rule; the extra 4 pi pairs the kernel with the
    k^2 dk/(2 pi)^3 momentum measure so that diagonalizing it reproduces
    the radial equation.  The same quadrature serves as the row
    evaluator, so scattering solves on the result never interpolate.

    Parameters
    ----------
    v_r : ndarray
        Potential samples on rgrid.nodes, fm^-2.
    rgrid : RadialGrid
    kgrid : MomentumGrid
    """
    v_r = np.asarray(v_r, dtype=float)
    if v_r.shape != rgrid.nodes.shape:
        raise ShapeError("potential samples do not match the radial grid")
    r = rgrid.nodes
    core = (4.0 * np.pi) ** 2 * rgrid.weights * r * r * v_r

    def bessel_rows(q):
        return np.sinc(np.multiply.outer(np.atleast_1d(q), r) / np.pi)

    j = bessel_rows(kgrid.nodes)
    values = (j * core[None, :]) @ j.T
    values = 0.5 * (values + values.T)

    def evaluate(q, kk):
        jq = bessel_rows(float(q))[0]
        return bessel_rows(np.asarray(kk)) @ (core * jq)

    return Kernel(grid=kgrid, values=values, symmetry="symmetric",
                  space="momentum", evaluate=evaluate)


def rank_one_update(base: Kernel, left: np.ndarray, right: np.ndarray,
                    coefficient: float, left_fn=None, right_fn=None) -> Kernel:
    """base + coefficient * |left><right| as a new kernel.

    Parameters
    ----------
    base : Kernel
    left, right : ndarray
        Function samples on the base grid.
    coefficient : float
        fm^-2 strength multiplying the outer product.
    left_fn, right_fn : callable, optional
        Off-grid evaluators left_fn(q) -> float for the factors.  When
        both are supplied and the base kernel has a row evaluator, the
        result keeps one too.

    Notes
    -----
    The result is flagged symmetric only when the base is symmetric and
    left and right are the same samples; otherwise the update breaks
    symmetry and the flag says so.
    """
    left = np.asarray(left, dtype=float)
    right = np.asarray(right, dtype=float)
    n = base.n
    if left.shape != (n,) or right.shape != (n,):
        raise ShapeError("factor samples do not match the kernel grid")
    if coefficient == 0.0:
        return base
    values = base.values + coefficient * np.outer(left, right)
    same = left is right or np.array_equal(left, right)
    symmetry = "symmetric" if (base.symmetry == "symmetric" and same) else "general"

    evaluate = None
    if base.evaluate is not None and left_fn is not None and right_fn is not None:
        base_eval = base.evaluate

        def evaluate(q, kk):
            kk = np.asarray(kk)
            # right factor on the requested momenta: exact samples where
            # they coincide with stored ones, evaluator elsewhere
            rvals = np.array([float(right_fn(t)) for t in np.atleast_1d(kk)])
            return base_eval(q, kk) + coefficient * float(left_fn(q)) * rvals

    return Kernel(grid=base.grid, values=values, symmetry=symmetry,
                  space=base.space, evaluate=evaluate)
