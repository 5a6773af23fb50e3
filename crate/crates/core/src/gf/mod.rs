//! Finite field arithmetic and the number theory around it.

mod field;
pub mod numtheory;
mod subfield;

pub use field::{make_field, Fe, Field, FieldCtx, MAX_ORDER};
pub use numtheory::{gcd_pm, odd_part, two_adic_valuation, zsigmondy_prime, Sign};
pub use subfield::{decompose_square, sylow_subgroup_r, Embedding, Tower};
