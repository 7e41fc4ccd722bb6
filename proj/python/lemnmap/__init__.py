"""Conformal maps from the exterior of compact sets onto lemniscatic domains."""

from ._lemnmap import (
    BoundaryError,
    ConstructionError,
    ContractError,
    DomainError,
    EllipticParameters,
    Error,
    LemniscaticDomain,
    LemniscaticMap,
    NumericalError,
    PoleError,
    agm,
    annulus_to_slit,
    annulus_to_slit_derivative_at_minus_one,
    annulus_to_slit_inverse,
    apply_linear_transform,
    complete_elliptic_k,
    conjugate_map,
    doubly_connected_from_annulus,
    green_value,
    interval_preimage_map,
    jacobi_sn,
    rational_preimage_map,
    lemniscate_modulus,
    make_family,
    normalization_probe,
    phase_portrait,
    radial_slit_map,
    rotate_map,
    run_verification,
    trace_level_curve,
    two_disk_map,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
