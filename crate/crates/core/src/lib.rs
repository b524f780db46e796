//! Exact computations around the simplicity of universal minimal W-algebras.
//!
//! The crate is layered bottom-up: [`weights`] (rationals, sparse weights,
//! bilinear forms), [`rootsys`] (the algebra catalog), [`weyl`] (reflections,
//! translations, group enumeration), [`charser`] (truncated character series),
//! [`aplus`] (the odd-subset inequality engine), [`vacuum`] (Jantzen and
//! Kac-Wakimoto sides of the vacuum module), [`sl2verma`] (affine sl2 Verma
//! quotients with a brute-force oracle) and [`verdict`] (the decision table).

pub mod aplus;
pub mod charser;
pub mod error;
pub mod expr;
pub mod lattice;
pub mod linalg;
pub mod par;
pub mod rootsys;
pub mod sl2verma;
pub mod vacuum;
pub mod verdict;
pub mod weights;
pub mod weyl;

pub use error::{Error, Result};
pub use weights::{BasisLabel, BilinearForm, Rational, Weight};
