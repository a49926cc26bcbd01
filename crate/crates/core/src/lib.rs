pub mod averages;
pub mod constants;
pub mod error;
pub mod families;
pub mod ordinals;
pub mod rational;
pub mod renorm;
pub mod scalar;
pub mod spaces;

pub use error::{Error, Result};
pub use families::{FamilyExpr, FiniteSubset, Subsequence};
pub use ordinals::Ordinal;
