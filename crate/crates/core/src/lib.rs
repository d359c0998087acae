//! Exact Coxeter transformations of integral bilinear forms.
//!
//! The crate computes `Phi_C = -C^{-1} C^t` for unimodular integer matrices,
//! decides periodicity and weak periodicity from the characteristic
//! polynomial, classifies the associated quadratic form with explicit
//! witnesses, and specializes everything to incidence algebras of finite
//! posets and path algebras of acyclic quivers.

mod digraph;
pub mod error;
pub mod exactmat;
pub mod fixtures;
pub mod forms;
pub mod paper_check;
pub mod polynomials;
pub mod posets;
pub mod quivers;
pub mod reflections;

pub use error::{Error, Result};
pub use exactmat::{IntMatrix, RatMatrix};
pub use polynomials::IntPolynomial;
