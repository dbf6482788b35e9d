//! Finite-depth threads of the inverse limit `S(Λ, p⃗)`.

use std::fmt;

use crate::error::{Error, Result};
use crate::stage::{apply_bond, fiber, Mode, StagePoint};

/// Stage sizes `k(1) = 1`, `k(n) = p₁⋯p_{n−1}` for the first `depth` levels.
pub fn stage_sizes(p: &[u64], depth: usize) -> Result<Vec<u64>> {
    let mut sizes = Vec::with_capacity(depth);
    let mut k: u64 = 1;
    for level in 0..depth {
        if level > 0 {
            let factor = *p.get(level - 1).ok_or_else(|| {
                Error::InvalidThread(format!("{depth} levels need {} bonding degrees", depth - 1))
            })?;
            k = k
                .checked_mul(factor)
                .ok_or_else(|| Error::Domain("stage size overflows u64".into()))?;
        }
        sizes.push(k);
    }
    Ok(sizes)
}

/// A bonding-compatible sequence `(x₁, …, x_d)` with `x_n ∈ Σ^(k(n))` and
/// `φ^{p_n}_{k(n)}(x_{n+1}) = x_n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Thread {
    p: Vec<u64>,
    points: Vec<StagePoint>,
}

impl Thread {
    /// Validates degrees, stage sizes, a single within-copy mode and bonding
    /// compatibility. `p` holds exactly `points.len() − 1` degrees.
    pub fn new(p: Vec<u64>, points: Vec<StagePoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidThread("a thread has at least one level".into()));
        }
        if p.len() + 1 != points.len() {
            return Err(Error::InvalidThread(format!(
                "{} levels need {} bonding degrees, got {}",
                points.len(),
                points.len() - 1,
                p.len()
            )));
        }
        if let Some(bad) = p.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidThread(format!("bonding degree {bad} is below 2")));
        }
        let sizes = stage_sizes(&p, points.len())?;
        for (level, (pt, &k)) in points.iter().zip(&sizes).enumerate() {
            if pt.n() != k {
                return Err(Error::InvalidThread(format!(
                    "level {} lives on {} copies but k({}) = {k}",
                    level + 1,
                    pt.n(),
                    level + 1
                )));
            }
        }
        for level in 0..p.len() {
            let image = apply_bond(p[level], sizes[level], &points[level + 1])?;
            if image != points[level] {
                return Err(Error::InvalidThread(format!(
                    "level {} maps to {image}, not {}",
                    level + 2,
                    points[level]
                )));
            }
        }
        Ok(Thread { p, points })
    }

    /// Builds the thread over `base ∈ Σ^(1)` that picks, at level `n+1`, the
    /// `choices[n]`-th element of the fibre (ascending copy index).
    pub fn from_choices(p: Vec<u64>, base: StagePoint, choices: &[u64]) -> Result<Self> {
        if choices.len() != p.len() {
            return Err(Error::InvalidThread("one fibre choice per bond".into()));
        }
        let sizes = stage_sizes(&p, p.len() + 1)?;
        let mut points = vec![base];
        for (level, &c) in choices.iter().enumerate() {
            let options = fiber(p[level], sizes[level], &points[level])?;
            let pick = options.get(c as usize).cloned().ok_or_else(|| {
                Error::InvalidThread(format!("fibre choice {c} out of range {}", p[level]))
            })?;
            points.push(pick);
        }
        Thread::new(p, points)
    }

    pub fn p(&self) -> &[u64] {
        &self.p
    }

    pub fn points(&self) -> &[StagePoint] {
        &self.points
    }

    pub fn depth(&self) -> usize {
        self.points.len()
    }

    pub fn first(&self) -> &StagePoint {
        &self.points[0]
    }

    pub fn last(&self) -> &StagePoint {
        self.points.last().expect("threads are nonempty")
    }

    pub fn stage_sizes(&self) -> Vec<u64> {
        self.points.iter().map(StagePoint::n).collect()
    }

    /// The within-copy mode, or `None` for a thread of joints.
    pub fn mode(&self) -> Option<Mode> {
        self.first().coordinate().map(|x| x.mode())
    }
}

impl fmt::Display for Thread {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.points.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join("; "))
    }
}

/// All extensions of `t` by `next.len()` further levels with degrees `next`.
///
/// Exactly `∏ next` threads come back, in depth-first order with fibres
/// taken in ascending copy index; their deepest coordinates are pairwise
/// distinct.
pub fn extend_thread(t: &Thread, next: &[u64]) -> Result<Vec<Thread>> {
    if let Some(bad) = next.iter().find(|&&d| d < 2) {
        return Err(Error::InvalidThread(format!("bonding degree {bad} is below 2")));
    }
    let mut frontier = vec![t.points.clone()];
    let mut k = t.last().n();
    for &d in next {
        let mut grown = Vec::with_capacity(frontier.len() * d as usize);
        for prefix in &frontier {
            let tip = prefix.last().expect("nonempty prefix");
            for q in fiber(d, k, tip)? {
                let mut longer = prefix.clone();
                longer.push(q);
                grown.push(longer);
            }
        }
        frontier = grown;
        k = k
            .checked_mul(d)
            .ok_or_else(|| Error::Domain("stage size overflows u64".into()))?;
    }
    let mut p = t.p.clone();
    p.extend_from_slice(next);
    Ok(frontier
        .into_iter()
        .map(|points| Thread {
            p: p.clone(),
            points,
        })
        .collect())
}
