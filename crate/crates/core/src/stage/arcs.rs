//! Closed arcs on the stages and the combinatorics behind indecomposability
//! and circle-likeness.
//!
//! Only the cyclic order of `Σ^(n)` matters here, so its points are encoded
//! by positions in `[0, n)`: the joint `∞_i` sits at `i` and the interior of
//! the `i`-th copy is the open interval `(i, i+1)`. A non-integer position
//! stands for some interior point of that copy; positions are compared
//! exactly and nothing depends on their actual values beyond order.
//! The bonding map `φ^m_n` reads positions mod `n`.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::Rational;

fn modulo(x: Rational, n: u64) -> Rational {
    let n = Rational::from_integer(n as i64);
    let r = x - (x / n).floor() * n;
    if r < Rational::from_integer(0) {
        r + n
    } else {
        r
    }
}

/// The closed arc of `Σ^(n)` from `start` counter-clockwise over `length`.
/// A length of `n` is the whole stage.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CyclicArc {
    n: u64,
    start: Rational,
    length: Rational,
}

impl CyclicArc {
    /// The arc from `start` to `end`; both are reduced mod `n`. Equal
    /// endpoints are rejected.
    pub fn new(n: u64, start: Rational, end: Rational) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("a stage has at least one copy".into()));
        }
        let start = modulo(start, n);
        let length = modulo(end - start, n);
        if length == Rational::from_integer(0) {
            return Err(Error::Domain(format!(
                "arc endpoints coincide at {start}; use the full stage instead"
            )));
        }
        Ok(CyclicArc { n, start, length })
    }

    pub fn full(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("a stage has at least one copy".into()));
        }
        Ok(CyclicArc {
            n,
            start: Rational::from_integer(0),
            length: Rational::from_integer(n as i64),
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn start(&self) -> Rational {
        self.start
    }

    pub fn end(&self) -> Rational {
        modulo(self.start + self.length, self.n)
    }

    pub fn length(&self) -> Rational {
        self.length
    }

    pub fn is_proper(&self) -> bool {
        self.length < Rational::from_integer(self.n as i64)
    }

    pub fn contains(&self, x: Rational) -> bool {
        modulo(x - self.start, self.n) <= self.length
    }

    pub fn intersects(&self, other: &CyclicArc) -> bool {
        self.contains(other.start) || other.contains(self.start)
    }

    /// Joints `∞_i` lying on the arc, in the arc's order.
    pub fn joints(&self) -> Vec<u64> {
        let first = self.start.ceil();
        let last = (self.start + self.length).floor();
        let mut out = Vec::new();
        let mut j = first;
        while j <= last && out.len() < self.n as usize {
            out.push(modulo(j, self.n).to_integer() as u64);
            j += Rational::from_integer(1);
        }
        out
    }

    /// The components of `(φ^m_n)⁻¹(self)` on `Σ^(mn)`.
    pub fn preimage(&self, m: u64) -> Result<Vec<CyclicArc>> {
        if m == 0 {
            return Err(Error::Domain("bond degrees must be positive".into()));
        }
        let total = self.n * m;
        let lifts: Vec<CyclicArc> = (0..m)
            .map(|k| CyclicArc {
                n: total,
                start: self.start + Rational::from_integer((k * self.n) as i64),
                length: self.length,
            })
            .collect();
        merge_components(total, &lifts)
    }
}

impl fmt::Display for CyclicArc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_proper() {
            write!(f, "[{}, {}]", self.start, self.end())
        } else {
            write!(f, "all of {} copies", self.n)
        }
    }
}

// Closed linear intervals in [0, total] covering the arcs.
fn unroll(total: Rational, arcs: &[CyclicArc]) -> Vec<(Rational, Rational)> {
    let mut out = Vec::new();
    for a in arcs {
        if !a.is_proper() {
            out.push((Rational::from_integer(0), total));
        } else if a.start + a.length <= total {
            out.push((a.start, a.start + a.length));
        } else {
            out.push((a.start, total));
            out.push((Rational::from_integer(0), a.start + a.length - total));
        }
    }
    out.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.cmp(&y.1)));
    out
}

/// A position of `Σ^(n)` on none of the arcs, or `None` if they cover it.
pub fn uncovered_point(n: u64, arcs: &[CyclicArc]) -> Option<Rational> {
    let total = Rational::from_integer(n as i64);
    let mut reach = Rational::from_integer(0);
    let two = Rational::from_integer(2);
    for (lo, hi) in unroll(total, arcs) {
        if lo > reach {
            return Some((reach + lo) / two);
        }
        reach = reach.max(hi);
    }
    (reach < total).then(|| (reach + total) / two)
}

/// Connected components of a union of arcs on `Σ^(n)`.
pub fn merge_components(n: u64, arcs: &[CyclicArc]) -> Result<Vec<CyclicArc>> {
    if arcs.iter().any(|a| a.n != n) {
        return Err(Error::Domain("arcs live on different stages".into()));
    }
    if arcs.is_empty() {
        return Ok(Vec::new());
    }
    let Some(cut) = uncovered_point(n, arcs) else {
        return Ok(vec![CyclicArc::full(n)?]);
    };
    let mut shifted: Vec<(Rational, Rational)> = arcs
        .iter()
        .map(|a| {
            let s = modulo(a.start - cut, n);
            (s, s + a.length)
        })
        .collect();
    shifted.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.cmp(&y.1)));
    let mut merged: Vec<(Rational, Rational)> = Vec::new();
    for (lo, hi) in shifted {
        match merged.last_mut() {
            Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
            _ => merged.push((lo, hi)),
        }
    }
    let mut out: Vec<CyclicArc> = merged
        .into_iter()
        .map(|(lo, hi)| CyclicArc {
            n,
            start: modulo(lo + cut, n),
            length: hi - lo,
        })
        .collect();
    out.sort_by(|a, b| a.start.cmp(&b.start));
    Ok(out)
}

/// A point of `Σ^(k·p)` that avoids one lift of each covering arc.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Miss {
    pub c_component: usize,
    pub g_component: usize,
    pub point: Rational,
}

/// Why `C ∪ G = Σ^(k)` with `C`, `G` proper cannot lift to a cover of the
/// next stage by connected sets.
///
/// A connected set mapping into `C` lies in a single component of its
/// preimage; for every choice of one component of each preimage, `misses`
/// names a point of `Σ^(k·p)` outside both.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WitnessReport {
    pub stage: u64,
    pub degree: u64,
    pub c_components: Vec<CyclicArc>,
    pub g_components: Vec<CyclicArc>,
    pub misses: Vec<Miss>,
}

impl WitnessReport {
    /// Every pair of components leaves a point uncovered.
    pub fn holds(&self) -> bool {
        self.misses.len() == self.c_components.len() * self.g_components.len()
    }
}

pub fn indecomposability_witness(
    degree: u64,
    stage: u64,
    c: &CyclicArc,
    g: &CyclicArc,
) -> Result<WitnessReport> {
    if degree < 2 {
        return Err(Error::InvalidWitnessInput(format!(
            "bonding degree {degree} is below 2"
        )));
    }
    if c.n != stage || g.n != stage {
        return Err(Error::InvalidWitnessInput(format!(
            "arcs must live on the stage of {stage} copies"
        )));
    }
    if !c.is_proper() || !g.is_proper() {
        return Err(Error::InvalidWitnessInput(
            "both arcs must be proper subcontinua".into(),
        ));
    }
    if let Some(x) = uncovered_point(stage, &[c.clone(), g.clone()]) {
        return Err(Error::InvalidWitnessInput(format!(
            "the arcs do not cover the stage; {x} is missed"
        )));
    }
    let c_components = c.preimage(degree)?;
    let g_components = g.preimage(degree)?;
    let top = stage * degree;
    let mut misses = Vec::new();
    for (i, ci) in c_components.iter().enumerate() {
        for (j, gj) in g_components.iter().enumerate() {
            if let Some(point) = uncovered_point(top, &[ci.clone(), gj.clone()]) {
                misses.push(Miss {
                    c_component: i,
                    g_component: j,
                    point,
                });
            }
        }
    }
    Ok(WitnessReport {
        stage,
        degree,
        c_components,
        g_components,
        misses,
    })
}

/// `U_i ∩ U_j ≠ ∅ ⇔ |i − j| ≤ 1 (mod t)` for the cover `U_0, …, U_{t−1}`.
pub fn circular_chain_check(cover: &[CyclicArc]) -> bool {
    let t = cover.len();
    if t == 0 || cover.iter().any(|a| a.n != cover[0].n) {
        return false;
    }
    for i in 0..t {
        for j in i + 1..t {
            let d = (j - i).min(t - (j - i));
            if cover[i].intersects(&cover[j]) != (d <= 1) {
                return false;
            }
        }
    }
    true
}

/// Lifts every arc of a cover of `Σ^(n)` through `φ^m_n` and lists the
/// lifted components in cyclic order of their starting points.
pub fn pullback_cover(m: u64, cover: &[CyclicArc]) -> Result<Vec<CyclicArc>> {
    let mut lifted = Vec::new();
    for a in cover {
        lifted.extend(a.preimage(m)?);
    }
    lifted.sort_by(|a, b| match a.start.cmp(&b.start) {
        Ordering::Equal => a.length.cmp(&b.length),
        o => o,
    });
    Ok(lifted)
}
