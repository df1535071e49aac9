"""Half-on-shell T-matrices and phase shifts from the Lippmann-Schwinger equation.

The solver works in the real standing-wave (K-matrix) formulation.  The
principal-value integral over the quadrature grid is handled by the
subtraction method: the on-shell integrand is subtracted node by node and
its integral restored analytically through

    PV integral dp / (k0^2 - p^2) on (0, Lambda)  =  L0
    L0 = ln((Lambda + k0) / (Lambda - k0)) / (2 k0).

When the on-shell momentum coincides with a grid node (the half-on-shell
matrix needs every column at its own node), the subtraction deletes that
node's sample of the smooth part of the integrand.  Its value is restored
through the derivative identity

    lim_{p -> k0} [f(p) - f(k0)] / (k0^2 - p^2) = -(d/du)(u f) / du at k0,
    u = p^2,

evaluated as a Lagrange derivative stencil in the Gauss-Legendre map
variable x (width 17) divided by du/dx.  Differentiating in x rather
than in u keeps the stencil on the natural polynomial variable of the
grid and is what pushes the scheme to 1e-10 class accuracy.

The complex T-matrix follows from K by the Heitler relation

    T = K / (1 + i pi rho_k K(k, k)),    rho_k = k / (2 (2 pi)^3),

which enforces on-shell unitarity exactly at the discrete level.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ContractError, SolverError
from .grid import TWO_PI_CUBED, MomentumGrid
from .kernels import Kernel

STENCIL_WIDTH = 17


def density_of_states(k):
    """rho_k = k / (2 (2 pi)^3), the on-shell state density."""
    return k / (2.0 * TWO_PI_CUBED)


@dataclass(frozen=True, eq=False)
class ScatteringSolution:
    """Half-on-shell solution at a single on-shell momentum.

    The column arrays have n + 1 entries: the grid nodes followed by the
    on-shell point itself, which the solver appends as an extra node.

    Parameters
    ----------
    on_shell_momentum : float
    momenta : ndarray
        The n + 1 sample momenta (grid nodes plus the on-shell point).
    half_on_shell_K : ndarray
        Real K(k_i, k) column.
    half_on_shell_T : ndarray
        Complex T(k_i, k) column.
    delta : float
        Phase shift in rad, principal branch of arctan(-pi rho K(k,k)).
    rho : float
        On-shell density of states.
    """

    on_shell_momentum: float
    momenta: np.ndarray
    half_on_shell_K: np.ndarray
    half_on_shell_T: np.ndarray
    delta: float
    rho: float

    @property
    def on_shell_K(self) -> float:
        return float(self.half_on_shell_K[-1])

    @property
    def on_shell_t(self) -> complex:
        return complex(self.half_on_shell_T[-1])


@dataclass(frozen=True, eq=False)
class PhaseShiftCurve:
    """Unwrapped phase-shift curve with its endpoint extrapolations.

    delta0 extrapolates quadratically from the three smallest momenta.
    deltaInf is the asymptote of a d + a/k + b/k^3 tail fit over the top
    third of the samples; the raw value at the last sample still carries
    an O(1/k) tail and would corrupt the bound-state count.
    """

    momenta: np.ndarray
    delta: np.ndarray
    delta0: float
    deltaInf: float


def _lagrange_x_derivative(x, m, width):
    """Weights of d/dx at x[m] from a Lagrange stencil of given width.

    The window is clipped to the array, never centered past its ends.
    """
    n = x.size
    width = min(width, n)
    half = width // 2
    lo = max(0, min(m - half, n - width))
    idx = np.arange(lo, lo + width)
    xs = x[idx]
    xm = x[m]
    d = np.zeros(width)
    mloc = m - lo
    for l in range(width):
        if l == mloc:
            d[l] = np.sum(1.0 / (xm - np.delete(xs, l)))
        else:
            others = np.delete(xs, [l, mloc])
            d[l] = np.prod(xm - others) / np.prod(xs[l] - np.concatenate([others, [xm]]))
    return idx, d


class PrincipalValueWeights:
    """Per-column quadrature weights for the on-node subtraction scheme.

    For on-shell node m the weights W satisfy

        sum_j W_j f(k_j) / (2 pi)^3  ~  PV integral p^2 dp/(2 pi)^3 f(p)/(k_m^2 - p^2)

    for smooth f, including the derivative correction that restores the
    sample the subtraction removes at j = m.  Weights are cached per
    column; they do not include the 1/(2 pi)^3.
    """

    def __init__(self, grid: MomentumGrid, width: int = STENCIL_WIDTH):
        self.grid = grid
        self.width = width
        k = grid.nodes
        x = grid.gauss_x
        d = 1.0 + 2.0 * grid.map_scale / grid.cutoff
        jac = grid.map_scale * (d + 1.0) / (d - x) ** 2
        self._u = k * k
        self._dudx = 2.0 * k * jac
        self._cache = {}

    def column(self, m: int) -> np.ndarray:
        if m in self._cache:
            return self._cache[m]
        grid = self.grid
        k, w, u = grid.nodes, grid.weights, self._u
        k0 = k[m]
        cut = grid.cutoff
        weights = np.zeros_like(k)
        mask = np.ones(k.size, dtype=bool)
        mask[m] = False
        weights[mask] = w[mask] * u[mask] / (u[m] - u[mask])
        log_term = np.log((cut + k0) / (cut - k0)) / (2.0 * k0)
        weights[m] = u[m] * (log_term - np.sum(w[mask] / (u[m] - u[mask])))
        idx, d = _lagrange_x_derivative(grid.gauss_x, m, self.width)
        weights[idx] += -w[m] * d * u[idx] / self._dudx[m]
        self._cache[m] = weights
        return weights


def _require_scattering_kernel(V: Kernel, grid: MomentumGrid):
    if V.space != "momentum" or V.symmetry != "symmetric":
        raise ContractError("scattering requires a symmetric momentum-space kernel")
    if V.n != grid.n:
        raise ContractError("kernel does not live on the supplied grid")


@lru_cache(maxsize=16)
def _bary_weights(n: int) -> np.ndarray:
    x, glw = np.polynomial.legendre.leggauss(n)
    return ((-1.0) ** np.arange(n)) * np.sqrt((1.0 - x * x) * glw)


def _barycentric_coeffs(grid: MomentumGrid, q: float):
    """Barycentric interpolation coefficients at momentum q, in the map variable.

    Returns (coeffs, node_index): either a weight vector over the grid
    nodes, or the index of an exactly coinciding node.  Interpolating in
    the Gauss-Legendre variable x keeps the scheme spectrally accurate
    for smooth kernels.
    """
    x = grid.gauss_x
    d = 1.0 + 2.0 * grid.map_scale / grid.cutoff
    xq = (d * q - grid.map_scale) / (q + grid.map_scale)
    diff = xq - x
    hit = int(np.argmin(np.abs(diff)))
    if abs(diff[hit]) < 1e-14:
        return None, hit
    c = _bary_weights(grid.n) / diff
    return c / np.sum(c), None


def _kernel_row(V: Kernel, grid: MomentumGrid, q: float, momenta: np.ndarray) -> np.ndarray:
    """Kernel row V(q, momenta), solver-grade when an evaluator exists.

    Without an evaluator the row is barycentric-interpolated from the
    stored samples: interpolation-grade, fine for phase curves and
    counting, not for 1e-8 level invariance checks.
    """
    if V.evaluate is not None:
        return np.asarray(V.evaluate(q, momenta), dtype=float)
    c, hit = _barycentric_coeffs(grid, q)
    row_nodes = V.values[hit, :].astype(float) if c is None else c @ V.values
    n = grid.n
    row = np.empty(momenta.size)
    row[:n] = row_nodes
    for j in range(n, momenta.size):
        cj, hj = _barycentric_coeffs(grid, momenta[j])
        row[j] = row_nodes[hj] if cj is None else float(cj @ row_nodes)
    return row


def solve_k_matrix(V: Kernel, grid: MomentumGrid, k_on: float) -> ScatteringSolution:
    """Standing-wave solve at one off-node on-shell momentum.

    The on-shell point is appended to the grid as an (n+1)-th node, so
    the subtraction scheme needs no derivative stencil here: the
    appended node itself samples the smooth part of the integrand.

    Parameters
    ----------
    V : Kernel
        Symmetric momentum-space kernel.
    grid : MomentumGrid
    k_on : float
        On-shell momentum, inside (0, cutoff) and not a grid node.

    Raises
    ------
    ContractError
        For on-shell momenta outside the open interval or on a node.
    SolverError
        If the linear system is singular at this momentum.
    """
    _require_scattering_kernel(V, grid)
    k = grid.nodes
    if not (0.0 < k_on < grid.cutoff):
        raise ContractError(f"on-shell momentum {k_on} outside (0, {grid.cutoff})")
    if np.min(np.abs(k - k_on)) < 1e-12 * grid.cutoff:
        raise ContractError(
            f"on-shell momentum {k_on} coincides with a grid node; "
            "the half-on-shell matrix covers that case"
        )

    n = grid.n
    w, u = grid.weights, k * k
    u0 = k_on * k_on
    momenta = np.append(k, k_on)

    weights = np.empty(n + 1)
    weights[:n] = w * u / (u0 - u)
    log_term = np.log((grid.cutoff + k_on) / (grid.cutoff - k_on)) / (2.0 * k_on)
    weights[n] = u0 * (log_term - np.sum(w / (u0 - u)))

    v_ext = np.empty((n + 1, n + 1))
    v_ext[:n, :n] = V.values
    row = _kernel_row(V, grid, k_on, momenta)
    v_ext[n, :] = row
    v_ext[:n, n] = row[:n]

    a = np.eye(n + 1) - v_ext * (weights / TWO_PI_CUBED)[None, :]
    try:
        k_col = np.linalg.solve(a, v_ext[:, n])
    except np.linalg.LinAlgError as exc:
        raise SolverError(f"singular standing-wave system at k_on={k_on}") from exc

    rho = density_of_states(k_on)
    k_on_shell = k_col[-1]
    delta = float(np.arctan(-np.pi * rho * k_on_shell))
    t_col = k_col / (1.0 + 1j * np.pi * rho * k_on_shell)
    return ScatteringSolution(on_shell_momentum=float(k_on), momenta=momenta,
                              half_on_shell_K=k_col, half_on_shell_T=t_col,
                              delta=delta, rho=float(rho))


def half_on_shell_T_matrix(V: Kernel, grid: MomentumGrid,
                           pv: PrincipalValueWeights | None = None) -> np.ndarray:
    """Complex half-on-shell matrix T(k_i, k_j), column j on shell at k_j.

    Every column is a standing-wave solve with the on-shell point ON its
    grid node, using the derivative-corrected subtraction weights, then
    converted through the Heitler relation.
    """
    _require_scattering_kernel(V, grid)
    if pv is None:
        pv = PrincipalValueWeights(grid)
    n = grid.n
    v = V.values
    k_half = np.empty((n, n))
    eye = np.eye(n)
    for m in range(n):
        weights = pv.column(m) / TWO_PI_CUBED
        a = eye - v * weights[None, :]
        try:
            k_half[:, m] = np.linalg.solve(a, v[:, m])
        except np.linalg.LinAlgError as exc:
            raise SolverError(f"singular standing-wave system at node {m}") from exc
    rho = density_of_states(grid.nodes)
    return k_half / (1.0 + 1j * np.pi * rho * np.diag(k_half))[None, :]


def phase_curve(V: Kernel, grid: MomentumGrid, samples: int = 64) -> PhaseShiftCurve:
    """Continuous phase-shift curve on a log-spaced momentum set.

    Phases are computed modulo pi at each sample, unwrapped to a
    continuous branch, then anchored by the convention delta -> 0 at the
    cutoff (the branch Levinson counting assumes).

    Parameters
    ----------
    V : Kernel
    grid : MomentumGrid
    samples : int
        At least 16; the top third feeds the asymptote fit.
    """
    if samples < 16:
        raise ContractError(f"need at least 16 samples, got {samples}")
    lo = 5.0e-4 * grid.cutoff
    hi = 0.97 * grid.cutoff
    ks = np.geomspace(lo, hi, samples)
    # nudge any sample that collides with a grid node
    for i, q in enumerate(ks):
        if np.min(np.abs(grid.nodes - q)) < 1e-9 * grid.cutoff:
            ks[i] = q * (1.0 + 1e-7)

    raw = np.empty(samples)
    for i, q in enumerate(ks):
        raw[i] = solve_k_matrix(V, grid, q).delta

    delta = np.unwrap(2.0 * raw) / 2.0
    delta = delta - np.round(delta[-1] / np.pi) * np.pi

    coeffs = np.polyfit(ks[:3], delta[:3], 2)
    delta0 = float(np.polyval(coeffs, 0.0))

    tail = slice(2 * samples // 3, samples)
    kt = ks[tail]
    design = np.vstack([np.ones(kt.size), 1.0 / kt, 1.0 / kt ** 3]).T
    asymptote = float(np.linalg.lstsq(design, delta[tail], rcond=None)[0][0])

    return PhaseShiftCurve(momenta=ks, delta=delta, delta0=delta0,
                           deltaInf=asymptote)
