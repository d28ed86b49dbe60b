//! A desk calculator for presheaves over finite categories: the functors
//! `F_! ⊣ F^* ⊣ F_*` induced by a functor `F`, local representability of
//! dependent presheaves, and preservation of context extension. Every law is
//! checked by brute force.

pub mod cat;
pub mod catalog;
pub mod error;
pub mod json;
pub mod kan;
pub mod preserve;
pub mod psh;
pub mod random;
pub mod rep;
pub mod report;
mod solve;
pub mod suites;

pub use cat::{CatBuilder, FinCat, FinFunctor, Mor, Obj};
pub use error::{KanError, LawError};
pub use psh::{DepFinPsh, DepNat, DepSection, FinNat, FinPsh};
pub use report::Report;
