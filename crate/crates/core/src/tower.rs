//! Points of the towers `Λ_κ` for finite `κ ≥ 1`.
//!
//! `Λ₁ = [0, ω₁]` is the closed standard long line. `Λ_{κ+1}` is the
//! two-point compactification of `ℤ × Λ_κ⁻` in lexicographic order, where
//! `Λ_κ⁻` drops the right endpoint. Collapsing the two endpoints of `Λ_κ`
//! gives the circle `Σ`, whose collapsed point is the joint.
//!
//! A non-joint point is an address `[z₁, …, z_j]` followed by a terminator:
//!
//! * `IntStop`: the point `(z₁, …, z_j, min)`, an integer point of depth `j`
//!   (`1 ≤ j ≤ κ−1`);
//! * `Base(ρ, t)`: after exactly `κ−1` integers, the point `ρ + t` of the
//!   open long line `(0, ω₁)`.

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ordinal::Ordinal;
use crate::stage::token::{IntervalAutToken, TokenDomain};
use crate::stage::InnerPoint;
use crate::Rational;

/// A point `ρ + t` of the open long line `(0, ω₁)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct BasePoint {
    rho: Ordinal,
    t: Rational,
}

impl BasePoint {
    pub fn new(rho: Ordinal, t: Rational) -> Result<Self> {
        if t < Rational::zero() || t >= Rational::one() {
            return Err(Error::InvalidPoint(format!("fraction {t} is outside [0, 1)")));
        }
        if rho.is_zero() && t.is_zero() {
            return Err(Error::InvalidPoint(
                "base point 0 is the integer point of the enclosing level".into(),
            ));
        }
        Ok(BasePoint { rho, t })
    }

    pub fn rho(&self) -> &Ordinal {
        &self.rho
    }

    pub fn t(&self) -> Rational {
        self.t
    }
}

impl fmt::Display for BasePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.rho.is_zero(), self.t.is_zero()) {
            (false, true) => write!(f, "{}", self.rho),
            (true, false) => write!(f, "{}", self.t),
            _ => write!(f, "{} + {}", self.rho, self.t),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Terminator {
    IntStop,
    Base(BasePoint),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum TowerBody {
    Joint,
    Address { ints: Vec<i64>, stop: Terminator },
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TowerPoint {
    kappa: u32,
    body: TowerBody,
}

impl TowerPoint {
    pub fn joint(kappa: u32) -> Result<Self> {
        check_kappa(kappa)?;
        Ok(TowerPoint {
            kappa,
            body: TowerBody::Joint,
        })
    }

    /// The integer point `(z₁, …, z_j, min)`.
    pub fn int_stop(kappa: u32, ints: Vec<i64>) -> Result<Self> {
        TowerPoint::address(kappa, ints, Terminator::IntStop)
    }

    pub fn base(kappa: u32, ints: Vec<i64>, base: BasePoint) -> Result<Self> {
        TowerPoint::address(kappa, ints, Terminator::Base(base))
    }

    pub fn address(kappa: u32, ints: Vec<i64>, stop: Terminator) -> Result<Self> {
        check_kappa(kappa)?;
        let max_depth = kappa as usize - 1;
        match stop {
            Terminator::IntStop if ints.is_empty() || ints.len() > max_depth => {
                return Err(Error::InvalidPoint(format!(
                    "integer point needs 1..={max_depth} integers at level {kappa}, got {}",
                    ints.len()
                )))
            }
            Terminator::Base(_) if ints.len() != max_depth => {
                return Err(Error::InvalidPoint(format!(
                    "base point needs exactly {max_depth} integers at level {kappa}, got {}",
                    ints.len()
                )))
            }
            _ => {}
        }
        Ok(TowerPoint {
            kappa,
            body: TowerBody::Address { ints, stop },
        })
    }

    pub fn kappa(&self) -> u32 {
        self.kappa
    }

    pub fn body(&self) -> &TowerBody {
        &self.body
    }

    pub fn is_joint(&self) -> bool {
        matches!(self.body, TowerBody::Joint)
    }

    pub fn ints(&self) -> &[i64] {
        match &self.body {
            TowerBody::Joint => &[],
            TowerBody::Address { ints, .. } => ints,
        }
    }

    /// The first integer `z₁` (levels `κ ≥ 2`).
    pub fn top_integer(&self) -> Option<i64> {
        self.ints().first().copied()
    }

    /// The within-copy component `w` of `z₁ + w`, as a point of `Λ_{κ−1}`.
    ///
    /// `None` for the joint, for `κ = 1`, and for depth-one integer points
    /// (whose component is the minimum of `Λ_{κ−1}⁻`).
    pub fn tail(&self) -> Option<TowerPoint> {
        let TowerBody::Address { ints, stop } = &self.body else {
            return None;
        };
        if ints.is_empty() || (ints.len() == 1 && *stop == Terminator::IntStop) {
            return None;
        }
        Some(TowerPoint {
            kappa: self.kappa - 1,
            body: TowerBody::Address {
                ints: ints[1..].to_vec(),
                stop: stop.clone(),
            },
        })
    }

    /// `z + tail` as a point of `Λ_{κ+1}`; a `None` tail gives the integer
    /// point `z`.
    pub fn prepend(kappa: u32, z: i64, tail: Option<&TowerPoint>) -> Result<TowerPoint> {
        match tail {
            None => TowerPoint::int_stop(kappa, vec![z]),
            Some(t) => {
                if t.kappa + 1 != kappa {
                    return Err(Error::LevelMismatch {
                        left: t.kappa + 1,
                        right: kappa,
                    });
                }
                let TowerBody::Address { ints, stop } = &t.body else {
                    return Err(Error::InvalidPoint("the joint is not a tail".into()));
                };
                let mut all = Vec::with_capacity(ints.len() + 1);
                all.push(z);
                all.extend_from_slice(ints);
                TowerPoint::address(kappa, all, stop.clone())
            }
        }
    }

    /// Translation `T_k`: shifts `z₁` by `k` and fixes the joint.
    pub fn translate(&self, k: i64) -> Result<TowerPoint> {
        if self.kappa < 2 {
            return Err(Error::UnsupportedTranslation(
                "level 1 has no integer coordinate".into(),
            ));
        }
        let mut out = self.clone();
        if let TowerBody::Address { ints, .. } = &mut out.body {
            ints[0] += k;
        }
        Ok(out)
    }
}

fn check_kappa(kappa: u32) -> Result<()> {
    if kappa == 0 {
        return Err(Error::InvalidPoint("tower level must be at least 1".into()));
    }
    Ok(())
}

impl fmt::Display for TowerPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.body {
            TowerBody::Joint => f.write_str("inf"),
            TowerBody::Address { ints, stop } => {
                let joined = ints
                    .iter()
                    .map(i64::to_string)
                    .collect::<Vec<_>>()
                    .join(",");
                match stop {
                    Terminator::IntStop => write!(f, "[{joined}]"),
                    Terminator::Base(b) => write!(f, "[{joined}; {b}]"),
                }
            }
        }
    }
}

/// Type of a point of `Σ(Λ_κ)`, in `1..=κ+1`.
///
/// The joint has the top type `κ+1`; an integer point of depth `j` has type
/// `κ+1−j`; base points have type 1 (they have a neighbourhood of points of
/// first countability).
pub fn point_type(p: &TowerPoint) -> u32 {
    match &p.body {
        TowerBody::Joint => p.kappa + 1,
        TowerBody::Address {
            ints,
            stop: Terminator::IntStop,
        } => p.kappa + 1 - ints.len() as u32,
        TowerBody::Address {
            stop: Terminator::Base(_),
            ..
        } => 1,
    }
}

fn check_level(x: &TowerPoint, y: &TowerPoint) -> Result<()> {
    if x.kappa != y.kappa {
        return Err(Error::LevelMismatch {
            left: x.kappa,
            right: y.kappa,
        });
    }
    Ok(())
}

/// Orbit relation on first coordinates of `S(Λ_κ, p⃗)`: same type.
pub fn same_orbit(x: &TowerPoint, y: &TowerPoint) -> Result<bool> {
    check_level(x, y)?;
    Ok(point_type(x) == point_type(y))
}

/// `T_k ∘ Â` on `Λ_κ`: `Â` applies the endpoint-fixing automorphism `A` in
/// every copy of `Λ_{κ−1}`, then `T_k` shifts the first integer.
///
/// At level 1 there is no translation and `A` acts on `Λ₁` itself.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TowerAutomorphism {
    pub kappa: u32,
    pub translation: i64,
    pub hat: IntervalAutToken,
}

impl TowerAutomorphism {
    pub fn identity(kappa: u32) -> Self {
        TowerAutomorphism {
            kappa,
            translation: 0,
            hat: IntervalAutToken::Identity,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.translation == 0 && self.hat == IntervalAutToken::Identity
    }

    pub fn apply(&self, p: &TowerPoint) -> Result<TowerPoint> {
        if p.kappa != self.kappa {
            return Err(Error::LevelMismatch {
                left: self.kappa,
                right: p.kappa,
            });
        }
        let hatted = match self.hat.eval(&InnerPoint::Tower(p.clone()))? {
            InnerPoint::Tower(q) => q,
            InnerPoint::Long(_) => unreachable!("tower token maps tower points to tower points"),
        };
        if self.translation == 0 {
            Ok(hatted)
        } else {
            hatted.translate(self.translation)
        }
    }
}

/// Automorphism of `Λ_κ` fixing the endpoints and carrying the point `x`
/// to `y`, built as `T_k ∘ Â` with `k = q − p` for `x = p + w`, `y = q + z`.
pub fn base_automorphism_token(x: &TowerPoint, y: &TowerPoint) -> Result<TowerAutomorphism> {
    if !same_orbit(x, y)? {
        return Err(Error::NotSameOrbit);
    }
    if x.is_joint() {
        return Err(Error::InvalidPoint(
            "the joint is handled by rotations alone".into(),
        ));
    }
    let kappa = x.kappa;
    if x == y {
        return Ok(TowerAutomorphism::identity(kappa));
    }
    if kappa == 1 {
        let (TowerBody::Address { stop: Terminator::Base(w), .. }, TowerBody::Address { stop: Terminator::Base(z), .. }) =
            (&x.body, &y.body)
        else {
            unreachable!("level-1 non-joint points are base points");
        };
        // [0, bound] is a countable, hence metric, arc containing both points.
        let bound = w.rho().max(z.rho()).successor();
        return Ok(TowerAutomorphism {
            kappa,
            translation: 0,
            hat: IntervalAutToken::mapping(
                TokenDomain::MetricArc { bound },
                InnerPoint::Tower(x.clone()),
                InnerPoint::Tower(y.clone()),
            ),
        });
    }
    let translation = y.top_integer().unwrap_or(0) - x.top_integer().unwrap_or(0);
    let hat = match (x.tail(), y.tail()) {
        (None, None) => IntervalAutToken::Identity,
        (Some(w), Some(z)) => IntervalAutToken::mapping(
            TokenDomain::TowerTail { kappa },
            InnerPoint::Tower(w),
            InnerPoint::Tower(z),
        ),
        _ => unreachable!("same type implies same address depth"),
    };
    Ok(TowerAutomorphism {
        kappa,
        translation,
        hat,
    })
}
