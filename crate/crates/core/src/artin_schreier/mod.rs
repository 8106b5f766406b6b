//! Artin-Schreier covers `y^p - y = f(x)` of the projective line.

pub mod census;
pub mod cover;
pub mod enumerate;

pub use census::{
    census_analytic, census_enumerated, component_count, component_growth_ratio,
    empirical_probability, generating_series,
};
pub use cover::{ASCover, ASCoverFile, BranchEntry};
pub use enumerate::{enumerate_covers, AsEnumerator, Shape};
