//! Arithmetic in `F_q` and `F_q[x]`.

pub mod factor;
pub mod field;
pub mod irreducible;
pub mod partial;
pub mod poly;

pub use factor::{factor, is_nth_power_free, is_squarefree, is_squarefree_gcd, omega};
pub use field::{prime_power, Embedding, FieldElement, FieldSpec, MAX_FIELD_SIZE};
pub use irreducible::{
    count_irreducibles, count_irreducibles_u128, is_irreducible, places_of_degree, places_up_to,
    Place,
};
pub use partial::{partial_fractions, PartialFraction};
pub use poly::{enumerate_monic, enumerate_monic_range, monic_count, MonicIter, MonicPoly, Poly};
