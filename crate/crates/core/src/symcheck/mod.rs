//! Symbolic verification of the closed form: products of factorial-type
//! factors over linear forms in `n, m, a, b`, a cancellation rewrite system,
//! and expansion into polynomial identities.

mod linear;
mod poly;
mod product;
mod prove;

pub use linear::{LinearForm, Point, Symbol};
pub use poly::{Monomial, MultiPoly};
pub use product::{ratio, FacFactor, FacProduct, FactorKind, RewriteStats};
pub use prove::*;
