//! Superelliptic covers `y^n = f(x)` with `n` an odd prime.

pub mod census;
pub mod cover;
pub mod growth;
pub mod kernel;
pub mod random;

pub use census::{
    bdfl_ratio_report, census_se_analytic, census_se_enumerated, compare_routes,
    count_tuple_family, dirichlet_coefficients, enumerate_se_covers, enumerate_tuple_counts, omega_route,
    ordered_coprime_factorizations, ordinary_counts_constructive, ordinary_ratio_se,
    ordinary_trend_se, tuple_counts_gf, tuple_route, BdflReport, RouteComparison, RouteRow,
    TrendPoint, TupleCounts, TUPLE_LIMIT,
};
pub use cover::{
    a_number_from, branch_count, eigen_degrees_from, genus_from_degrees, infinity_data,
    ordinary_by_degrees, sigma_permutation, symmetry_criterion_exact, EigenDegrees, SECover, SECoverFile,
};
pub use growth::{growth_bound_check, growth_constant, GrowthRow, GROWTH_MARGIN};
pub use kernel::{verify_kernel_lemma, KernelReport, MAX_KERNEL_N};
pub use random::{random_cover, random_covers};
