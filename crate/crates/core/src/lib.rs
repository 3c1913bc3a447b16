//! Numerical verification of the objects behind lower bounds for `L(1, chi)`
//! over primitive quadratic characters.

// NaN-rejecting checks are written as negated comparisons on purpose
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod characters;
pub mod cli;
pub mod coeffs;
pub mod harness;
pub mod lfun;
pub mod mellin;
pub mod special;
pub mod sum;
