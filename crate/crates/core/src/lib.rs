//! Exact beta-expansions of p-adic numbers.
//!
//! The crate computes beta-expansions `z = Σ d_i β^(-i)` of elements of
//! `Q(β) ∩ Z_p` for Pisot-Chabauty bases `β ∈ Q_p`, classifies candidate
//! bases from their minimal polynomial `x^n - a_1 x^(n-1) - … - a_n`,
//! and decides the finiteness property through shift radix systems.
//!
//! All arithmetic is exact over the rationals; p-adic limits are carried
//! as `A_p = Z[1/p]` truncations with explicit precision.

pub mod beta;
pub mod classify;
pub mod error;
pub mod newton;
pub mod padic;
pub mod poly;
pub mod rational;
pub mod srs;
pub mod stability;

pub use error::{Error, ParseError, Result};
pub use padic::{Prime, Valuation};
pub use rational::QRational;
