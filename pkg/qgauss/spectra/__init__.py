"""Spectrum estimates, Hausdorff distances and q-sweeps."""
from .service import (
    SpectrumEstimate,
    SweepOptions,
    SweepRow,
    adjacent_hausdorff,
    compressed_matrix,
    compression_norm,
    hausdorff_distance,
    orthonormal_compression,
    q_edge,
    q_grid,
    spectrum_estimate,
    sweep,
    symmetry_defect,
    truncated_basis,
    truncated_matrix,
)

__all__ = [
    "SpectrumEstimate",
    "SweepOptions",
    "SweepRow",
    "adjacent_hausdorff",
    "compressed_matrix",
    "compression_norm",
    "hausdorff_distance",
    "orthonormal_compression",
    "q_edge",
    "q_grid",
    "spectrum_estimate",
    "sweep",
    "symmetry_defect",
    "truncated_basis",
    "truncated_matrix",
]
