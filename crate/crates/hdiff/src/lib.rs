//! Exact symbolic engine for rings of h-deformed differential operators.

pub mod expr;
pub mod linalg;
pub mod poly;
pub mod report;
pub mod ring;
pub mod rmatrix;
pub mod consistency;
pub mod center;
pub mod weyliso;
pub mod reps;
pub mod symmetry;
pub mod cli;
