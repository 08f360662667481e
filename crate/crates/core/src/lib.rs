//! Shuffle algebra of power series over finite fields.

pub mod algebraic;
pub mod combinat;
pub mod error;
pub mod field;
pub mod json;
pub mod linalg;
pub mod noncomm;
mod poly;
pub mod rational;
pub mod series;
pub mod text;

pub use algebraic::{AlgebraicRelation, Dfao, KernelBasis};
pub use error::{Error, Result};
pub use field::{Elem, Field, FieldElement};
pub use noncomm::{LinRep, NcSeries, Word};
pub use rational::RationalFunction;
pub use series::Series;
