//! The stdlab guide, compiled so that its snippets run as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/polynomials.md")]
pub mod polynomials {}

#[doc = include_str!("../../../book/src/local-rings.md")]
pub mod local_rings {}

#[doc = include_str!("../../../book/src/reductions.md")]
pub mod reductions {}

#[doc = include_str!("../../../book/src/koszul.md")]
pub mod koszul {}

#[doc = include_str!("../../../book/src/semigroups.md")]
pub mod semigroups {}

#[doc = include_str!("../../../book/src/monomial.md")]
pub mod monomial {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
