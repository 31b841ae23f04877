//! Enumeration of 2-bridge knots by crossing number through even continued
//! fractions, with exact closed forms for knot counts and genus statistics.

pub mod cli;
pub mod contfrac;
pub mod enumerate;
pub mod formulas;
pub mod identities;
pub mod knots;
pub mod rational;

pub use contfrac::{even_expansion, ContFracError, EvenSequence};
pub use knots::{canonicalize, KnotClass, Mode};
pub use rational::Rational;
