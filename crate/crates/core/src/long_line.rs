//! Points of the closed long line `[0, δ]` with `δ = ω₁·ω^ω`.
//!
//! A point below `δ` is written uniquely as `ω₁·γ + ρ + t` where `γ < ω^ω`
//! counts whole copies of the standard long line, `ρ` is a countable ordinal
//! and `t ∈ [0, 1)` is the position inside the unit interval glued after `ρ`.
//! The maximal point `δ` is [`LongPoint::EndMax`]; in the circle `Σ` it is
//! identified with `0`, the joint.
//!
//! The positive multiples of `ω₁` form the NG set (points that are not `G_δ`
//! or are limits of such points). Its complement splits into the open
//! intervals `(ω₁·γ, ω₁·(γ+1))`, each a copy of the open long line.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ordinal::Ordinal;
use crate::stage::token::{IntervalAutToken, TokenDomain};
use crate::stage::InnerPoint;
use crate::Rational;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum LongPoint {
    /// `ω₁·blocks + remainder + fraction`.
    At {
        blocks: Ordinal,
        remainder: Ordinal,
        fraction: Rational,
    },
    /// The right endpoint `δ`.
    EndMax,
}

impl LongPoint {
    pub fn new(blocks: Ordinal, remainder: Ordinal, fraction: Rational) -> Result<Self> {
        if !blocks.below_omega_pow_omega() {
            return Err(Error::InvalidPoint(format!(
                "block count {blocks} is not below w^w"
            )));
        }
        if fraction < Rational::zero() || fraction >= Rational::one() {
            return Err(Error::InvalidPoint(format!(
                "fraction {fraction} is outside [0, 1)"
            )));
        }
        Ok(LongPoint::At {
            blocks,
            remainder,
            fraction,
        })
    }

    /// The point `ω₁·blocks`.
    pub fn omega1_times(blocks: Ordinal) -> Result<Self> {
        LongPoint::new(blocks, Ordinal::zero(), Rational::zero())
    }

    pub fn zero() -> Self {
        LongPoint::At {
            blocks: Ordinal::zero(),
            remainder: Ordinal::zero(),
            fraction: Rational::zero(),
        }
    }

    /// True for `0` and `δ`, the two points collapsed to the joint of `Σ`.
    pub fn is_joint(&self) -> bool {
        match self {
            LongPoint::EndMax => true,
            LongPoint::At {
                blocks,
                remainder,
                fraction,
            } => blocks.is_zero() && remainder.is_zero() && fraction.is_zero(),
        }
    }

    pub fn blocks(&self) -> Option<&Ordinal> {
        match self {
            LongPoint::At { blocks, .. } => Some(blocks),
            LongPoint::EndMax => None,
        }
    }
}

impl Ord for LongPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (LongPoint::EndMax, LongPoint::EndMax) => Ordering::Equal,
            (LongPoint::EndMax, _) => Ordering::Greater,
            (_, LongPoint::EndMax) => Ordering::Less,
            (
                LongPoint::At {
                    blocks: b1,
                    remainder: r1,
                    fraction: f1,
                },
                LongPoint::At {
                    blocks: b2,
                    remainder: r2,
                    fraction: f2,
                },
            ) => b1.cmp(b2).then_with(|| r1.cmp(r2)).then_with(|| f1.cmp(f2)),
        }
    }
}

impl PartialOrd for LongPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LongPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let LongPoint::At {
            blocks,
            remainder,
            fraction,
        } = self
        else {
            return f.write_str("end");
        };
        let mut parts = Vec::new();
        if !blocks.is_zero() {
            parts.push(format!("w1*({blocks})"));
        }
        if !remainder.is_zero() {
            parts.push(remainder.to_string());
        }
        if !fraction.is_zero() {
            parts.push(fraction.to_string());
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Orbit-partition label of a non-joint point.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum OrbitClassLabel {
    /// `O_{ω₁·γ}`: the single NG point `ω₁·γ`, `γ ≥ 1`.
    Ng(Ordinal),
    /// `P`: the open interval `(ω₁·γ, ω₁·(γ+1))`.
    Interval(Ordinal),
}

impl fmt::Display for OrbitClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrbitClassLabel::Ng(g) => write!(f, "NG(w1*({g}))"),
            OrbitClassLabel::Interval(g) => write!(f, "interval(w1*({g}), w1*({}))", g.successor()),
        }
    }
}

/// True iff `x = ω₁·γ` with `γ ≥ 1`. The point `0` is the joint and is
/// reported as `false` here.
pub fn is_ng(x: &LongPoint) -> Result<bool> {
    match x {
        LongPoint::EndMax => Err(Error::EndpointNotInDomain),
        LongPoint::At {
            blocks,
            remainder,
            fraction,
        } => Ok(!blocks.is_zero() && remainder.is_zero() && fraction.is_zero()),
    }
}

/// The orbit-partition class of `x`: its own NG class if `x` is an NG point,
/// otherwise the maximal interval of the complement of NG containing `x`.
pub fn partition_class(x: &LongPoint) -> Result<OrbitClassLabel> {
    if is_ng(x)? {
        return Ok(OrbitClassLabel::Ng(x.blocks().cloned().unwrap_or_default()));
    }
    if x.is_joint() {
        return Err(Error::JointHasNoClass);
    }
    let blocks = x.blocks().cloned().unwrap_or_default();
    Ok(OrbitClassLabel::Interval(blocks))
}

/// Why two points were proven to lie in different orbits.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DistinctReason {
    /// `x₁ = ω₁·ω^a`, `y₁ = ω₁·ω^b` with `a ≠ b` (the joint counts as
    /// `ω₁·ω^ω`): no final segment `[x, ω₁·ω^a]` embeds below `ω₁·ω^a`.
    OmegaPowerBlocks { left: Ordinal, right: Ordinal },
    /// Exactly one point lies in NG: only one of them has a neighbourhood of
    /// `G_δ` points.
    NgVersusInterval,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum OrbitProof {
    ProvenDistinct(DistinctReason),
    NotProven,
}

// The exponent `a` when `x` sits at `ω₁·ω^a` in Σ; the joint is δ = ω₁·ω^ω.
fn omega_power_exponent(x: &LongPoint) -> Option<Ordinal> {
    if x.is_joint() {
        return Some(Ordinal::omega());
    }
    match x {
        LongPoint::At {
            blocks,
            remainder,
            fraction,
        } if remainder.is_zero() && fraction.is_zero() => blocks.as_omega_power().cloned(),
        _ => None,
    }
}

fn in_ng_closure(x: &LongPoint) -> bool {
    x.is_joint() || is_ng(x).unwrap_or(false)
}

/// Proven orbit distinctness for first coordinates in `Σ`.
///
/// `0` and `δ` are both read as the joint.
pub fn distinct_orbit_proof(x: &LongPoint, y: &LongPoint) -> OrbitProof {
    if let (Some(a), Some(b)) = (omega_power_exponent(x), omega_power_exponent(y)) {
        if a != b {
            return OrbitProof::ProvenDistinct(DistinctReason::OmegaPowerBlocks {
                left: a,
                right: b,
            });
        }
    }
    if in_ng_closure(x) != in_ng_closure(y) {
        return OrbitProof::ProvenDistinct(DistinctReason::NgVersusInterval);
    }
    OrbitProof::NotProven
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum OrbitRecipe {
    /// Same orbit; the token fixes the class boundary and maps `x` to `y`.
    Same(IntervalAutToken),
    Unknown,
}

/// Same-orbit witness for first coordinates, when one is known.
///
/// Points in the same interval class are related by an automorphism of the
/// closed interval `[ω₁·γ, ω₁·(γ+1)]` fixing both ends. Distinct NG points
/// are left as [`OrbitRecipe::Unknown`]: whether they share an orbit is open.
pub fn same_orbit_recipe(x: &LongPoint, y: &LongPoint) -> OrbitRecipe {
    match (x.is_joint(), y.is_joint()) {
        (true, true) => return OrbitRecipe::Same(IntervalAutToken::Identity),
        (true, false) | (false, true) => return OrbitRecipe::Unknown,
        (false, false) => {}
    }
    if x == y {
        return OrbitRecipe::Same(IntervalAutToken::Identity);
    }
    match (partition_class(x), partition_class(y)) {
        (Ok(OrbitClassLabel::Interval(a)), Ok(OrbitClassLabel::Interval(b))) if a == b => {
            OrbitRecipe::Same(IntervalAutToken::mapping(
                TokenDomain::LongInterval { block: a },
                InnerPoint::Long(x.clone()),
                InnerPoint::Long(y.clone()),
            ))
        }
        _ => OrbitRecipe::Unknown,
    }
}
