//! Relative Rota-Baxter groups over finite groups: structure, induced skew
//! braces, second cohomology with trivial coefficients, Schur multipliers and
//! covers, and isoclinism.

pub mod group;
pub mod linalg;
pub mod rrb;
pub mod brace;
pub mod cohomology;
pub mod oracle;
pub mod schur;
pub mod catalog;
pub mod isoclinism;
