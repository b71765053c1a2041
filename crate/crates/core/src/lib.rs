//! Exact arithmetic for checking local-global divisibility counterexamples
//! on elliptic curves over ℚ.
//!
//! The crate is split along the mathematical layers it needs:
//!
//! * [`localfields`]: valuations, power-residue tests and Hensel lifting over
//!   the completions ℚ_v.
//! * [`weierstrass`]: curves `y² = (x−e₁)(x−e₂)(x−e₃)`, their group law and the
//!   explicit 2-descent map δ₂.
//! * [`diagcubic`]: diagonal cubics `aX³+bY³+cZ³ = 0`, Euler's 3-covering map
//!   and the local triviality criteria for the covering classes.
//! * [`search`]: bounded-height point search and local solvability.
//! * [`verify`]: scenario registry, configuration and reports.

pub mod diagcubic;
pub mod error;
pub mod localfields;
pub mod search;
pub mod verify;
pub mod weierstrass;

pub use diagcubic::{CoveringMap, DiagonalCubic, ProjPoint};
pub use error::{Error, Result};
pub use localfields::{PadicNumber, Place, RationalNumber};
pub use weierstrass::{ECPoint, FactoredCubicCurve, SquareClassPair};
