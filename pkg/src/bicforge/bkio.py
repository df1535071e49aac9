"""Line-oriented text files for kernels (.bk): diffable and bit-stable.

Layout: header lines `#grid ...`, `#space momentum|coordinate`,
`#symmetry symmetric|general`, then one `node,weight` line per
quadrature point, then the n x n values row by row.  Momentum grids
store their construction parameters (`#grid n map_scale cutoff`) and
are rebuilt through the grid constructor on read, with the stored nodes
cross-checked; coordinate grids (`#grid n r_max`) are taken verbatim
from the stored quadrature.

All numbers are written with 17 significant digits, which round-trips
IEEE doubles exactly: a kernel survives write/read bit for bit, and
identical runs produce byte-identical files.

Only dense real values are stored.  Symbolic local parts of coordinate
kernels and evaluator closures are construction-time objects with no
file representation; a loaded kernel is interpolation-grade.
"""

from __future__ import annotations

import numpy as np

from .coordinate import CoordinateKernel
from .errors import ConsistencyError, ContractError
from .grid import MomentumGrid, RadialGrid, build_momentum_grid
from .kernels import Kernel


def _fmt(x: float) -> str:
    return f"{float(x):.17g}"


def write_kernel(kernel, path) -> None:
    """Write a momentum- or coordinate-space kernel to a .bk file."""
    grid = kernel.grid
    lines = []
    if isinstance(kernel, CoordinateKernel):
        lines.append(f"#grid {grid.n} {_fmt(grid.r_max)}")
        lines.append("#space coordinate")
        lines.append("#symmetry general")
    elif isinstance(kernel, Kernel):
        if kernel.space != "momentum":
            raise ContractError("Kernel instances in files must be momentum-space")
        lines.append(f"#grid {grid.n} {_fmt(grid.map_scale)} {_fmt(grid.cutoff)}")
        lines.append("#space momentum")
        lines.append(f"#symmetry {kernel.symmetry}")
    else:
        raise ContractError(f"cannot serialize {type(kernel).__name__}")
    for node, weight in zip(grid.nodes, grid.weights):
        lines.append(f"{_fmt(node)},{_fmt(weight)}")
    for row in np.asarray(kernel.values, dtype=float):
        lines.append(" ".join(_fmt(x) for x in row))
    with open(path, "w") as fh:
        fh.write("\n".join(lines) + "\n")


def read_kernel(path):
    """Read a .bk file back into a Kernel or CoordinateKernel.

    Momentum grids are rebuilt from their stored parameters; a mismatch
    beyond 1e-12 relative between rebuilt and stored nodes means the
    file was produced by an incompatible grid construction and raises
    ConsistencyError.
    """
    with open(path) as fh:
        lines = [ln.rstrip("\n") for ln in fh if ln.strip()]
    header = {}
    body_start = 0
    for i, ln in enumerate(lines):
        if not ln.startswith("#"):
            body_start = i
            break
        key, _, rest = ln[1:].partition(" ")
        header[key] = rest
    for key in ("grid", "space", "symmetry"):
        if key not in header:
            raise ContractError(f"missing #{key} header")

    grid_parts = header["grid"].split()
    n = int(grid_parts[0])
    body = lines[body_start:]
    if len(body) != 2 * n:
        raise ContractError(
            f"expected {n} quadrature lines plus {n} value rows, got {len(body)}"
        )
    nodes = np.empty(n)
    weights = np.empty(n)
    for i, ln in enumerate(body[:n]):
        a, _, b = ln.partition(",")
        nodes[i] = float(a)
        weights[i] = float(b)
    values = np.array([[float(tok) for tok in ln.split()] for ln in body[n:]])
    if values.shape != (n, n):
        raise ContractError(f"value block {values.shape} does not match n={n}")

    space = header["space"]
    if space == "coordinate":
        grid = RadialGrid(nodes=nodes, weights=weights,
                          r_max=float(grid_parts[1]))
        return CoordinateKernel(grid=grid, values=values)
    if space != "momentum":
        raise ContractError(f"unknown space {space!r}")
    grid = build_momentum_grid(n, float(grid_parts[1]), float(grid_parts[2]))
    if np.max(np.abs(grid.nodes - nodes)) > 1e-12 * grid.cutoff:
        raise ConsistencyError(
            "stored nodes disagree with the rebuilt grid; "
            "the file used a different grid construction"
        )
    return Kernel(grid=grid, values=values, symmetry=header["symmetry"],
                  space="momentum")
