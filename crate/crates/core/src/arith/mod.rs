//! Exact arithmetic: rationals, polynomials, rational functions, number
//! fields, factorization and resultants.

pub mod factor;
pub mod frac;
pub mod linalg;
pub mod mpoly;
pub mod number_field;
pub mod poly;
pub mod resultant;
pub mod ring;

pub use factor::{adjoin_root, factor_over_field, factor_over_q, Adjunction};
pub use frac::Frac;
pub use number_field::{Embedding, FieldRef, NfElem, NumberField};
pub use poly::Poly;
pub use ring::{int, rat, Field, Rat, Ring};

/// Rational function in `x` over number-field constants.
pub type RatFunc = Frac<NfElem>;
