//! Census and ordinarity tools for Artin-Schreier and superelliptic covers
//! of the projective line over small finite fields.

pub mod artin_schreier;
pub mod census;
pub mod dirichlet;
pub mod error;
pub mod poly_fq;
pub mod prank_oracle;
pub mod superelliptic;

pub use artin_schreier::ASCover;
pub use census::{CensusRow, CensusSource, CensusTable};
pub use dirichlet::{CoeffSeries, EulerProductValue};
pub use error::{Error, Result};
pub use prank_oracle::{LPolynomial, PointCounts};
pub use poly_fq::{FieldElement, FieldSpec, MonicPoly, Place, Poly};
pub use superelliptic::{EigenDegrees, SECover};
