"""Construction and analysis of potentials with bound states in the continuum.

The package builds nonlocal momentum-space potentials that hold a
normalizable state at any prescribed energy, including energies
embedded in the scattering continuum, without changing the scattering
observables of the potential they started from.  Around that core sit
the diagnostics: phase-shift curves and state counting, the
scattering/bound decomposition V = V_S + V_B, extraction of embedded
states back out of V_B, coordinate-space transforms, and two
closed-form benchmark models.
"""

from .bkio import read_kernel, write_kernel
from .coordinate import (CoordinateKernel, build_uniform_radial_grid,
                         coordinate_residual, coordinate_to_momentum,
                         local_coordinate_kernel, momentum_to_coordinate,
                         vb_profile_node, wavefunction_to_coordinate)
from .errors import (BicForgeError, CensusAmbiguousError,
                     CensusIndeterminateError, ConfigurationError,
                     ConsistencyError, ContractError, ExtractionError,
                     NormalizabilityError, NotABicError, ShapeError,
                     SolverError)
from .grid import (MEV_PER_FM2, MomentumGrid, RadialGrid, build_momentum_grid,
                   build_radial_grid, inner_product)
from .kernels import (Kernel, gaussian_momentum_kernel, local_to_momentum,
                      rank_one_update)
from .levinson import BicCensus, bic_census, count_states
from .reference import (SeparableModel, VnwPotential, local_oracle,
                        separable_bic, separable_tune, vnw_build, vnw_verify)
from .scattering import (PhaseShiftCurve, ScatteringSolution, density_of_states,
                         half_on_shell_T_matrix, phase_curve, solve_k_matrix)
from .sbdecomp import (BicSignature, SBDecomposition, build_v_b,
                       detect_bic_signature, energy_shift, extract_bics,
                       orthonormalize, s_space_perturb, sb_decompose,
                       v_s_from_T, verify_conditions_AB)
from .spectral import (BoundState, ground_state, negative_energy_states,
                       schrodinger_residual)

__version__ = "0.1.0"

__all__ = [
    "BicCensus",
    "BicForgeError",
    "BicSignature",
    "BoundState",
    "CensusAmbiguousError",
    "CensusIndeterminateError",
    "ConfigurationError",
    "ConsistencyError",
    "ContractError",
    "CoordinateKernel",
    "ExtractionError",
    "Kernel",
    "MEV_PER_FM2",
    "MomentumGrid",
    "NormalizabilityError",
    "NotABicError",
    "PhaseShiftCurve",
    "RadialGrid",
    "SBDecomposition",
    "ScatteringSolution",
    "SeparableModel",
    "ShapeError",
    "SolverError",
    "VnwPotential",
    "bic_census",
    "build_momentum_grid",
    "build_radial_grid",
    "build_uniform_radial_grid",
    "build_v_b",
    "coordinate_residual",
    "coordinate_to_momentum",
    "count_states",
    "density_of_states",
    "detect_bic_signature",
    "energy_shift",
    "extract_bics",
    "gaussian_momentum_kernel",
    "ground_state",
    "half_on_shell_T_matrix",
    "inner_product",
    "local_coordinate_kernel",
    "local_oracle",
    "local_to_momentum",
    "momentum_to_coordinate",
    "negative_energy_states",
    "orthonormalize",
    "phase_curve",
    "rank_one_update",
    "read_kernel",
    "s_space_perturb",
    "sb_decompose",
    "schrodinger_residual",
    "separable_bic",
    "separable_tune",
    "solve_k_matrix",
    "v_s_from_T",
    "vb_profile_node",
    "verify_conditions_AB",
    "vnw_build",
    "vnw_verify",
    "wavefunction_to_coordinate",
    "write_kernel",
]
