"""Symmetric solitons of mean curvature flow in the upper half-space."""

from ._core import (
    HoroError,
    ProfileCurve,
    bowl_shoot,
    bowl_tip_curvature,
    cli,
    conformal_factor,
    cubic_asymptote_check,
    curvature_sign_changes,
    f_rhs,
    grim_curve,
    grim_height_for_width,
    grim_phi,
    grim_u,
    grim_width,
    h_of_r2,
    integrate_geodesic,
    q_residual_1d,
    r2_of_h,
    read_profile,
    run_suite,
    sectional_curvature_axis,
    sectional_curvature_mixed,
    solve_problem,
    wing_shoot,
    write_profile,
)

__all__ = [name for name in dir() if not name.startswith("_")]
