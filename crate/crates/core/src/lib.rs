//! Nielsen equivalence of generating tuples in free groups and finite
//! quotients, with the group-level shadows of Heegaard splittings and
//! trisections built on top.

pub mod error;
pub mod library;
pub mod nielsen;
pub mod perm;
pub mod presentation;
pub mod quotient;
pub mod spine;
pub mod trisection;
pub mod word;

pub use error::{Error, Result};
pub use nielsen::{GeneratingTuple, NielsenMove};
pub use perm::Permutation;
pub use presentation::{Presentation, SeifertInvariants, VerticalChoice};
pub use quotient::{FiniteQuotient, TupleImage};
pub use spine::{Spine, SpineMove};
pub use trisection::{HeegaardData, TrisectionData};
pub use word::{Alphabet, Letter, Word};
