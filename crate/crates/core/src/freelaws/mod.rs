//! The free Bessel laws `π_st`: closed-form moments, support, density and a
//! positivity probe for the parameters where the law may fail to exist.

mod density;
mod moments;
mod probe;
pub mod quadrature;
mod support;

pub use density::{density, density_grid, Atom, BranchTracker, DensityGrid, EdgeFit};
pub use moments::{
    default_route, moment, moment_polynomial_via_series, moments, moments_via_partitions,
    moments_via_partitions_bounded,
    moments_via_series, stieltjes_residual, SeriesRoute,
};
pub use probe::{
    existence_probe, probe_sweep, HankelMatrix, ProbeReport, DEFAULT_PROBE_ORDER,
    PROBE_RELATIVE_TOLERANCE,
};
pub use support::{
    critical_points, critical_right_edge, critical_right_edge_exact, in_defined_region, phi,
    support, BesselParams, Regime, SupportInfo,
};
