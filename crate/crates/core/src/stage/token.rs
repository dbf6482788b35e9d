//! Endpoint-fixing automorphisms of an interval, recorded by contract.
//!
//! An [`IntervalAutToken`] stands for some autohomeomorphism `A` of an arc
//! that fixes the arc's endpoints and sends a source point `w` to a target
//! point `z`. Only the contracted values are ever evaluated: `A(w) = z`, and
//! `A(p) = p` for the boundary and for everything outside the arc. Anything
//! else is [`Error::TokenUndefined`].

use std::fmt;

use crate::error::{Error, Result};
use crate::long_line::LongPoint;
use crate::ordinal::Ordinal;
use crate::stage::InnerPoint;
use crate::tower::{TowerBody, TowerPoint};

/// The arc an automorphism acts on, inside one copy of `Λ`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum TokenDomain {
    /// `[ω₁·block, ω₁·(block+1)]` in the long line `[0, ω₁·ω^ω]`.
    LongInterval { block: Ordinal },
    /// The countable initial arc `[0, bound]` of `Λ₁ = [0, ω₁]`; points
    /// `≥ bound` are fixed.
    MetricArc { bound: Ordinal },
    /// Every copy `{z} × Λ_{κ−1}` inside `Λ_κ`; the map acts on the tail after
    /// the first integer and fixes the integer points `z` themselves.
    TowerTail { kappa: u32 },
}

impl fmt::Display for TokenDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenDomain::LongInterval { block } => {
                write!(f, "[w1*({block}), w1*({})]", block.successor())
            }
            TokenDomain::MetricArc { bound } => write!(f, "[0, {bound}]"),
            TokenDomain::TowerTail { kappa } => write!(f, "tails of level {kappa}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum IntervalAutToken {
    Identity,
    Mapping {
        domain: TokenDomain,
        source: InnerPoint,
        target: InnerPoint,
    },
}

impl IntervalAutToken {
    /// A mapping token; collapses to [`IntervalAutToken::Identity`] when
    /// source and target coincide.
    pub fn mapping(domain: TokenDomain, source: InnerPoint, target: InnerPoint) -> Self {
        if source == target {
            IntervalAutToken::Identity
        } else {
            IntervalAutToken::Mapping {
                domain,
                source,
                target,
            }
        }
    }

    pub fn is_identity(&self) -> bool {
        matches!(self, IntervalAutToken::Identity)
    }

    /// Evaluates the automorphism on a within-copy point (or a tower joint,
    /// which is always fixed).
    pub fn eval(&self, p: &InnerPoint) -> Result<InnerPoint> {
        let IntervalAutToken::Mapping {
            domain,
            source,
            target,
        } = self
        else {
            return Ok(p.clone());
        };
        let undefined = || Err(Error::TokenUndefined(p.to_string()));
        match (domain, p) {
            (TokenDomain::LongInterval { block }, InnerPoint::Long(x)) => {
                if p == source {
                    return Ok(target.clone());
                }
                match x {
                    LongPoint::EndMax => Ok(p.clone()),
                    LongPoint::At {
                        blocks,
                        remainder,
                        fraction,
                    } => {
                        let at_left_end = remainder.is_zero() && *fraction.numer() == 0;
                        if blocks != block || at_left_end {
                            Ok(p.clone())
                        } else {
                            undefined()
                        }
                    }
                }
            }
            (TokenDomain::MetricArc { bound }, InnerPoint::Tower(t)) if t.kappa() == 1 => {
                if p == source {
                    return Ok(target.clone());
                }
                match t.body() {
                    TowerBody::Joint => Ok(p.clone()),
                    TowerBody::Address { stop, .. } => match stop {
                        crate::tower::Terminator::Base(b) if b.rho() >= bound => Ok(p.clone()),
                        _ => undefined(),
                    },
                }
            }
            (TokenDomain::TowerTail { kappa }, InnerPoint::Tower(t)) if t.kappa() == *kappa => {
                if t.is_joint() {
                    return Ok(p.clone());
                }
                let Some(tail) = t.tail() else {
                    return Ok(p.clone());
                };
                if InnerPoint::Tower(tail) == *source {
                    let InnerPoint::Tower(image) = target else {
                        unreachable!("tower tokens carry tower points");
                    };
                    let z = t.top_integer().expect("non-joint tower point above level 1");
                    Ok(InnerPoint::Tower(TowerPoint::prepend(*kappa, z, Some(image))?))
                } else {
                    undefined()
                }
            }
            _ => Err(Error::TokenUndefined(format!(
                "{p} is not in the domain {domain}"
            ))),
        }
    }
}

impl fmt::Display for IntervalAutToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntervalAutToken::Identity => f.write_str("id"),
            IntervalAutToken::Mapping {
                domain,
                source,
                target,
            } => write!(f, "A on {domain}: {source} -> {target}"),
        }
    }
}
