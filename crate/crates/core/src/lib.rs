//! Finite-field algebra for building and checking k-normal polynomials.

pub mod arith;
pub mod construct;
pub mod cyclotomic;
pub mod ext;
pub mod field;
pub mod knormal;
pub mod linalg;
pub mod par;
pub mod poly;
pub mod search;
pub mod text;
