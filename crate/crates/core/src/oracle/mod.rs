//! Brute-force point counting over prime fields, and everything derived from the counts.

mod affine;
mod count;
mod crosscheck;
mod enumerate;
mod interpolate;
mod theorems;

pub use affine::{
    affine_report_from, classify_counts, euler_characteristic, euler_from_report, exponent_of, poincare_from_report,
    poincare_polynomial, verify_affine, AffineReport, CellCertificate, CellVerdict, PoincarePolynomial, AFFINE_PRIMES,
};
pub use count::{count, CountReport};
pub use crosscheck::{crosscheck_counts, subspaces};
pub use enumerate::{
    ambient_estimate, assign_cell, budget_from_env, cell_points, check_budget, count_cell, count_cells,
    enumerate_subreps, is_subrepresentation, SubrepPoint, DEFAULT_BUDGET,
};
pub use interpolate::{
    counting_polynomial, degree_bound, extend_primes, format_terms, interpolate, polynomial_from_reports,
    CountingPolynomial, DEFAULT_PRIMES,
};
pub use theorems::{check_fibration, check_main_theorem_cell, FibrationCheck, MainTheoremCell, PushForwardSetting};
