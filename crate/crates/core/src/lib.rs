//! Exact integer constructions of Weyl modules, their PBW-graded
//! degenerations and Demazure modules for the classical types A and C, with
//! machine checks relating the graded modules to Demazure modules of the
//! doubled-rank algebra.

pub mod budget;
pub mod chevrep;
pub mod error;
pub mod exactlat;
pub mod isocheck;
pub mod pbwdem;
pub mod rootdata;

pub use budget::Budget;
pub use chevrep::{ChevalleyBasis, Generator, Realization};
pub use error::{Error, Result};
pub use exactlat::{ExactMatrix, Lattice, SparseVec};
pub use isocheck::{DPMonomial, GradedCharacter, IdealSlice, VerificationReport};
pub use pbwdem::{DemazureModule, FilteredModule, GradedCyclicModule, Side, WeylModule};
pub use rootdata::{Family, Root, RootDatum, RootType, Weight, WeylWord};
