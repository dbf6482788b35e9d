//! Exact computation with the long solenoids `S(Λ, p⃗)`: inverse limits of
//! circles made of nonmetric ordered continua.
//!
//! * [`ordinal`]: Cantor normal form arithmetic below `ε₀`.
//! * [`long_line`]: points of `[0, ω₁·ω^ω]`, the NG set and orbit labels.
//! * [`tower`]: the towers `Λ_κ` and the types of their points.
//! * [`stage`]: the stages `Σ^(n)`, bonding maps, threads and recipes.
//! * [`cohomology`]: `H¹ ≅ ℚ(p⃗)` and its supernatural invariant.
//! * [`parse`]: text forms used by the command line.

pub mod cohomology;
pub mod error;
pub mod long_line;
pub mod ordinal;
pub mod parse;
pub mod stage;
pub mod tower;

pub use error::{Error, Result};
pub use ordinal::Ordinal;

/// Exact fractional parts and arc positions.
pub type Rational = num_rational::Ratio<i64>;
