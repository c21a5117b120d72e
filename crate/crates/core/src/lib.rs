//! Exact mod-2 cycle calculus on powers of split quadrics.
//!
//! The crate covers the Chow ring of a split quadric with `Z/2`
//! coefficients, cycles on its powers (external products, symmetrization,
//! diagonal pullbacks, projections, correspondences), Steenrod operations
//! of cohomological type on that basis, the degree pairing on the maximal
//! orthogonal grassmannian, and a rule engine that propagates restrictions
//! on the elementary discrete invariant of a quadratic form.

pub mod classes;
pub mod cycle;
pub mod edi;
pub mod error;
pub mod expr;
pub mod gf2;
pub mod grassmannian;
pub mod perm;
pub mod quadric;
pub mod report;
pub mod steenrod;
pub mod verify;

pub use cycle::{Cycle, Monomial};
pub use error::{CalcError, Result};
pub use perm::Permutation;
pub use quadric::{BasisClass, MiddleConvention, Orientation, QuadricContext};
