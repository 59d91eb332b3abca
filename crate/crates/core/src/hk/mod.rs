//! Ratliff–Rush closures, reductions, exact finite-q Hilbert coefficients
//! of Frobenius powers, and the checks built on them.

pub mod checks;
pub mod paper;
pub mod reduction;
pub mod report;
pub mod rr;

pub use checks::{
    estimates_inequality_check, star_refutation_search, theorem41_check, InequalityReport, SearchReport,
    Theorem41Report, Witness,
};
pub use reduction::{find_minimal_reduction, stability_check, verify_reduction, ReductionData};
pub use report::{ehk_tables, frobenius_coefficients, Analysis, FrobeniusCoefficients, HKReport, QRow, Ratio};
pub use rr::{
    ratliff_rush_closure, ratliff_rush_of_power, rr_filtration, rr_filtration_with_reduction, RRClosureResult,
    RrFiltration,
};
