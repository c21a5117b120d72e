//! Independent reference computations for the quadcycles test suites.
//!
//! Nothing here shares code with the engine it checks.

pub mod binomial;
pub mod integral;
pub mod orbit;
