//! Dirichlet series in `q^{-s}` and Euler products over `F_q[x]`.

pub mod constants;
pub mod euler;
pub mod real;
pub mod series;

pub use constants::{
    cezb_constant, constants_report, constants_report_with, kappa_constant, l_constant, modified_family_census_limit,
    ordinary_probability_as, phi_at_1, phi_k_at_1, psi_p_at_1, table1, zeta2, zeta_affine,
    zeta_affine_product, ConstantsReport, Table1Row, TABLE1_PUBLISHED,
};
pub use euler::{euler_product, EulerProductValue, EulerSummary, LocalFactor};
pub use real::Real;
pub use series::{zeta_shift_series, CoeffSeries};
