//! Checking sufficient conditions for universal sequences of words over `{a, b}`.
//!
//! A sequence `w_1, w_2, ...` is universal when every family of transformations
//! `f_1, f_2, ...` of a set is the image of the sequence under some homomorphism.

pub mod action;
pub mod cli;
pub mod closure;
pub mod conditions;
pub mod oracle;
pub mod sequence;
pub mod witness;
pub mod word;
