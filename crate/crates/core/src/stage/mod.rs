//! The finite stages `Σ^(n)` of the inverse limit and the maps between them.
//!
//! `Σ^(n)` is `n` copies of an ordered continuum `Λ` laid end to end in a
//! circle. The gluing points are the joints `∞_0, …, ∞_{n−1}`; the copy of an
//! interior point `x` of `Λ` in the `i`-th copy is `∞_i + x`. Two choices of
//! `Λ` are supported: the long line `[0, ω₁·ω^ω]` ([`InnerPoint::Long`]) and
//! the towers `Λ_κ` ([`InnerPoint::Tower`]).

pub mod arcs;
pub mod recipe;
pub mod thread;
pub mod token;

use std::fmt;

use crate::error::{Error, Result};
use crate::long_line::LongPoint;
use crate::tower::TowerPoint;

/// An interior, non-joint point of one copy of `Λ`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum InnerPoint {
    Long(LongPoint),
    Tower(TowerPoint),
}

/// Which `Λ` a point lives in.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Mode {
    LongLine,
    Tower(u32),
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::LongLine => f.write_str("long-line"),
            Mode::Tower(k) => write!(f, "tower-{k}"),
        }
    }
}

impl InnerPoint {
    pub fn mode(&self) -> Mode {
        match self {
            InnerPoint::Long(_) => Mode::LongLine,
            InnerPoint::Tower(t) => Mode::Tower(t.kappa()),
        }
    }

    fn validate(&self) -> Result<()> {
        let is_joint = match self {
            InnerPoint::Long(p) => p.is_joint(),
            InnerPoint::Tower(t) => t.is_joint(),
        };
        if is_joint {
            return Err(Error::InvalidPoint(format!(
                "{self} is a joint, not an interior point of a copy"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for InnerPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InnerPoint::Long(p) => write!(f, "{p}"),
            InnerPoint::Tower(t) => write!(f, "{t}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum StageBody {
    Joint(u64),
    Inner(u64, InnerPoint),
}

/// A point of `Σ^(n)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct StagePoint {
    n: u64,
    body: StageBody,
}

impl StagePoint {
    /// `∞_i` on `Σ^(n)`; the index is reduced mod `n`.
    pub fn joint(n: u64, i: i64) -> Result<Self> {
        check_stage(n)?;
        Ok(StagePoint {
            n,
            body: StageBody::Joint(reduce(i, n)),
        })
    }

    /// `∞_i + x` on `Σ^(n)`; the index is reduced mod `n`.
    pub fn inner(n: u64, i: i64, x: InnerPoint) -> Result<Self> {
        check_stage(n)?;
        x.validate()?;
        Ok(StagePoint {
            n,
            body: StageBody::Inner(reduce(i, n), x),
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn body(&self) -> &StageBody {
        &self.body
    }

    pub fn index(&self) -> u64 {
        match self.body {
            StageBody::Joint(i) | StageBody::Inner(i, _) => i,
        }
    }

    pub fn is_joint(&self) -> bool {
        matches!(self.body, StageBody::Joint(_))
    }

    pub fn coordinate(&self) -> Option<&InnerPoint> {
        match &self.body {
            StageBody::Joint(_) => None,
            StageBody::Inner(_, x) => Some(x),
        }
    }

    fn with_index(&self, n: u64, i: u64) -> StagePoint {
        let body = match &self.body {
            StageBody::Joint(_) => StageBody::Joint(i),
            StageBody::Inner(_, x) => StageBody::Inner(i, x.clone()),
        };
        StagePoint { n, body }
    }

    fn with_coordinate(&self, x: InnerPoint) -> StagePoint {
        StagePoint {
            n: self.n,
            body: StageBody::Inner(self.index(), x),
        }
    }
}

impl fmt::Display for StagePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.body {
            StageBody::Joint(i) => write!(f, "inf{i}"),
            StageBody::Inner(i, x) => write!(f, "({i}| {x})"),
        }
    }
}

fn check_stage(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("a stage has at least one copy".into()));
    }
    Ok(())
}

fn reduce(i: i64, n: u64) -> u64 {
    i.rem_euclid(n as i64) as u64
}

/// The bonding map `φ^m_n : Σ^(mn) → Σ^(n)`, reducing copy indices mod `n`.
pub fn apply_bond(m: u64, n: u64, p: &StagePoint) -> Result<StagePoint> {
    if m == 0 || n == 0 {
        return Err(Error::Domain("bond degrees must be positive".into()));
    }
    if p.n != m * n {
        return Err(Error::Domain(format!(
            "point lives on a stage of {} copies, expected {m}·{n} = {}",
            p.n,
            m * n
        )));
    }
    Ok(p.with_index(n, p.index() % n))
}

/// The fibre `(φ^m_n)⁻¹(q)`: the `m` points with indices `j + kn`, in
/// ascending index order.
pub fn fiber(m: u64, n: u64, q: &StagePoint) -> Result<Vec<StagePoint>> {
    if m == 0 || n == 0 {
        return Err(Error::Domain("bond degrees must be positive".into()));
    }
    if q.n != n {
        return Err(Error::Domain(format!(
            "point lives on a stage of {} copies, expected {n}",
            q.n
        )));
    }
    let j = q.index();
    Ok((0..m).map(|k| q.with_index(m * n, j + k * n)).collect())
}

/// Rotation `R_k`: `∞_i + x ↦ ∞_{i+k mod n} + x`.
pub fn rotate(k: i64, p: &StagePoint) -> StagePoint {
    let n = p.n;
    let shifted = (p.index() as i128 + k as i128).rem_euclid(n as i128) as u64;
    p.with_index(n, shifted)
}

/// Translation `T_k` on a tower stage: shifts the first integer coordinate
/// inside every copy and fixes the joints.
pub fn translate(k: i64, p: &StagePoint) -> Result<StagePoint> {
    match &p.body {
        StageBody::Joint(_) => Ok(p.clone()),
        StageBody::Inner(_, InnerPoint::Tower(t)) => {
            Ok(p.with_coordinate(InnerPoint::Tower(t.translate(k)?)))
        }
        StageBody::Inner(_, InnerPoint::Long(_)) => Err(Error::UnsupportedTranslation(
            "the long line has no integer coordinate".into(),
        )),
    }
}
