//! Exact arithmetic: rationals, jets, polynomials and coordinate forms.

pub mod forms;
pub mod jet;
pub mod poly;
pub mod rational;
pub mod scalar;

pub use forms::{exterior_d, grad, integrate_radial, OneForm, TwoForm};
pub use jet::{Jet1, Jet2};
pub use poly::{jet_lift, poly_partial, LiftedJet, Poly, PolyTerm};
pub use rational::{format_rational, int, parse_rational, rat, Rational};
pub use scalar::{lift_point, sum, Scalar};
