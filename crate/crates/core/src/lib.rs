pub mod catalog;
pub mod error;
pub mod field;
pub mod grading;
pub mod groebner;
pub mod koszul;
pub mod linalg;
pub mod monoprime;
pub mod poly;
pub mod semigroup;
pub mod standardness;
