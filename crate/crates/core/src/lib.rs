//! Kernel for a non-cumulative dependent type theory with a universe
//! hierarchy, explicit `Lift`, dependent functions and booleans.
//!
//! The normalizer is normalization by evaluation over the category of
//! renamings; [`canonicity`] reuses it on closed terms.

pub mod canonicity;
pub mod enumerate;
pub mod gen;
pub mod nbe;
pub mod normal;
pub mod parse;
pub mod pretty;
pub mod renaming;
pub mod suites;
pub mod syntax;
pub mod typecheck;
