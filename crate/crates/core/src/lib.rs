//! Exact combinatorics of weighted blow-ups of hypersurface singularities.
//!
//! The library works purely with exponent supports: it builds Newton
//! polyhedra and essential cones, computes Hilbert bases, and decides which
//! weights give canonical modifications.

pub mod cone;
pub mod deformation;
pub mod error;
pub mod lattice;
mod linalg;
pub mod newton;
pub mod nondegeneracy;
pub mod parse;
pub mod weight;

use std::sync::atomic::{AtomicU64, Ordering};

pub use cone::{
    componentwise_min, cone_from_inequalities, cone_from_rays, lattice_points_under, meet_closed_under,
    simplicial_frame, RationalCone, SimplicialFrame,
};
pub use deformation::{halfspace_condition, simultaneous_report, weight_constancy, SimultaneousReport, SupportFamily};
pub use error::{Error, Result};
pub use lattice::{
    make_primitive, monomial_divisor_weight, pairing, weight_of_poly, ExponentVector, PolynomialSupport, WeightVector,
};
pub use newton::{
    build_newton, classify, face_containing_one, is_type_t, position_of_one, quasi_reduced, quasi_reduced_strict, ClassLabel, Facet, Kappa,
    NewtonPolyhedron, NondegeneracyFlag, OneFace, Position, SingularityClass,
};
pub use nondegeneracy::{check_nondegeneracy_limited, Nondegeneracy};
pub use parse::{parse_json_polynomial, parse_polynomial, parse_polynomial_with, serialize_polynomial, ParseOptions};
pub use weight::{
    absolutely_minimal, blowup_candidates, blowup_summary, canonical_weight_verdict, discrepancies, essential_cone, f_hash, interior_chart, is_f_minimal,
    leading_coefficient, leq_f, prec_f, star_subdivision, unit_entries, weights_above_threshold, BlowupSituation, BlowupSummary, CandidateReport,
    CandidateStatus, Certificate, Conclusion, DiscrepancyRecord, FMinimality, LeadingCoefficient, SearchInfo,
    StarSubdivision, VerdictOptions, Violator, WeightVerdict, DEFAULT_CAP,
};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Default cap on the number of cells a single cone-engine step may visit.
pub const DEFAULT_MAX_CELLS: u64 = 20_000_000;

static MAX_CELLS: AtomicU64 = AtomicU64::new(0);

/// Current work cap. Read from `CANWEIGHT_MAX_CELLS` on first use unless set
/// explicitly.
pub fn max_cells() -> u64 {
    let v = MAX_CELLS.load(Ordering::Relaxed);
    if v != 0 {
        return v;
    }
    let from_env = std::env::var("CANWEIGHT_MAX_CELLS")
        .ok()
        .and_then(|s| s.trim().parse::<u64>().ok())
        .filter(|&n| n > 0)
        .unwrap_or(DEFAULT_MAX_CELLS);
    MAX_CELLS.store(from_env, Ordering::Relaxed);
    from_env
}

pub fn set_max_cells(n: u64) {
    MAX_CELLS.store(n.max(1), Ordering::Relaxed);
}

pub(crate) fn charge(needed: u128) -> Result<()> {
    let limit = max_cells();
    if needed > limit as u128 {
        Err(Error::WorkLimit { needed, limit })
    } else {
        Ok(())
    }
}
