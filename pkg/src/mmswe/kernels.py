"""Backend dispatch for the hot kernels (see accel.py for the env flag)."""

from .accel import USE_NUMBA

if USE_NUMBA:
    from ._kernels_numba import (  # noqa: F401
        edge_flux_1d,
        edge_flux_2d,
        edge_speeds,
        locate_points,
        minmod_mod,
        mmpde_velocities_1d,
        mmpde_velocities_2d,
        pp_theta,
    )
else:
    from ._kernels_numpy import (  # noqa: F401
        edge_flux_1d,
        edge_flux_2d,
        edge_speeds,
        locate_points,
        minmod_mod,
        mmpde_velocities_1d,
        mmpde_velocities_2d,
        pp_theta,
    )
