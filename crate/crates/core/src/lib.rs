//! Homological invariants of polarized neural ideals.
//!
//! A polarized neural ideal on `n` neurons is a squarefree monomial ideal in
//! `k[x_1..x_n, y_1..y_n]` none of whose minimal generators is divisible by
//! any `x_i * y_i`. This crate builds such ideals from binary neural codes,
//! computes their multigraded Betti numbers, projective dimension and
//! regularity, and checks linear resolution and linear quotients.
//!
//! ```
//! use neural_ideals::{betti, code, FieldTag};
//!
//! let c = code::NeuralCode::parse("00\n11\n").unwrap();
//! let ideal = code::code_to_polarized_ideal(&c);
//! assert_eq!(ideal.to_string(), "(y1*x2, x1*y2)");
//! let inv = betti::invariants(&ideal, FieldTag::F2).unwrap();
//! assert_eq!((inv.pd, inv.reg), (1, 3));
//! ```

pub mod betti;
pub mod code;
pub mod error;
pub mod families;
pub mod homology;
pub mod ideal;
pub mod monomial;
pub mod structure;
pub mod verify;

pub use error::{Error, Result};
pub use homology::FieldTag;
pub use ideal::{MonomialIdeal, PolarizedNeuralIdeal};
pub use monomial::{Monomial, Var};
