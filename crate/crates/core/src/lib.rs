//! Exact arithmetic in cyclotomic fields, finite patches of cyclotomic model
//! sets, affinely regular polygons, and discrete parallel X-rays.
//!
//! The crate decides for which m an affinely regular m-gon exists in a model
//! set over O_n, constructs such polygons explicitly with exact coordinates,
//! and demonstrates the tomographic consequence: U-polygons yield distinct
//! convex subsets with identical X-rays, so fewer than max{3, lcm(n,2)/2} + 1
//! directions never suffice to determine the convex subsets.
//!
//! All values are immutable and all operations are pure functions; everything
//! is safe to share across threads without synchronization.

pub mod cyclotomic;
pub mod error;
pub mod fields;
pub mod geometry;
pub mod interval;
pub mod model_sets;
pub mod polygon;
pub mod tomography;

pub use cyclotomic::{
    cyclotomic_polynomial, mobius, phi, CyclotomicNumber, EmbedValue, Rational,
    RealCyclotomicNumber,
};
pub use error::{CycError, Result};
pub use fields::{
    classify_phi_half, intersection_conductor, is_prime, is_sophie_germain, k_field_equal,
    k_field_subset, real_subfield_equal, real_subfield_subset, PhiHalfClass, PhiHalfKind,
};
pub use model_sets::{DeloneDiagnostics, ModelSetDescriptor, ModelSetKind, Patch};
pub use polygon::{
    admissible_m, basis_coords, construct_polygon_in_field, exists_affinely_regular,
    inflate_into_model_set, verify_affinely_regular, AffineWitness, Inflation, Polygon,
};
pub use tomography::{
    build_counterexample, determination_bruteforce, edge_directions, is_convex_subset,
    is_u_polygon, min_k_bound, witness_bound, xray, xrays_equal, Determination, Direction,
    XRayTable,
};

/// Search cap shared by the inflation and brute-force enumerations, overridden
/// by the CYCLOPOLY_BUDGET environment variable.
pub fn search_budget(default: u64) -> u64 {
    std::env::var("CYCLOPOLY_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(default)
}
