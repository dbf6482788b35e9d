//! Level-wise homeomorphisms `H_n = R_{l_n} ∘ T_k ∘ Â` of the stages and
//! their action on threads.
//!
//! A [`HomeoRecipe`] defines an autohomeomorphism of the inverse limit when
//! every `H_n` commutes with the bonding maps. Rotations commute exactly when
//! `l_{n+1} ≡ l_n (mod k(n))`; `T_k` and `Â` act copy-wise and always commute.

use std::fmt;

use crate::error::{Error, Result};
use crate::long_line::{self, DistinctReason, LongPoint, OrbitProof, OrbitRecipe};
use crate::ordinal::Ordinal;
use crate::stage::thread::{stage_sizes, Thread};
use crate::stage::token::{IntervalAutToken, TokenDomain};
use crate::stage::{apply_bond, rotate, translate, InnerPoint, Mode, StageBody, StagePoint};
use crate::tower::{self, BasePoint, TowerPoint};
use crate::Rational;

/// One level of a recipe as exchanged with other tools.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RecipeLevel {
    /// 1-based level number `n`.
    pub level: usize,
    /// Number of copies `k(n)` of the stage.
    pub stage: u64,
    pub rot: u64,
    pub trans: i64,
    pub hat: IntervalAutToken,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HomeoRecipe {
    stages: Vec<u64>,
    rotations: Vec<u64>,
    translation: i64,
    hat: IntervalAutToken,
}

impl HomeoRecipe {
    /// Builds a recipe over stages of the given sizes; each size must divide
    /// the next. Rotations are reduced mod the stage size.
    pub fn new(
        stages: Vec<u64>,
        rotations: &[i64],
        translation: i64,
        hat: IntervalAutToken,
    ) -> Result<Self> {
        if stages.is_empty() || stages.len() != rotations.len() {
            return Err(Error::InvalidRecipe(
                "one rotation per stage, at least one stage".into(),
            ));
        }
        if stages.contains(&0) {
            return Err(Error::InvalidRecipe("stage sizes must be positive".into()));
        }
        if let Some(w) = stages.windows(2).find(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidRecipe(format!(
                "stage size {} does not divide {}",
                w[0], w[1]
            )));
        }
        let rotations = stages
            .iter()
            .zip(rotations)
            .map(|(&k, &l)| l.rem_euclid(k as i64) as u64)
            .collect();
        Ok(HomeoRecipe {
            stages,
            rotations,
            translation,
            hat,
        })
    }

    /// A recipe over the stages `k(1..=depth)` of the degree sequence `p`.
    pub fn for_degrees(
        p: &[u64],
        rotations: &[i64],
        translation: i64,
        hat: IntervalAutToken,
    ) -> Result<Self> {
        HomeoRecipe::new(stage_sizes(p, rotations.len())?, rotations, translation, hat)
    }

    pub fn identity(stages: Vec<u64>) -> Self {
        let rotations = vec![0; stages.len()];
        HomeoRecipe {
            stages,
            rotations,
            translation: 0,
            hat: IntervalAutToken::Identity,
        }
    }

    pub fn from_levels(levels: &[RecipeLevel]) -> Result<Self> {
        let Some(first) = levels.first() else {
            return Err(Error::InvalidRecipe("a recipe has at least one level".into()));
        };
        for (i, l) in levels.iter().enumerate() {
            if l.level != i + 1 {
                return Err(Error::InvalidRecipe(format!(
                    "levels must be numbered 1, 2, …; found {} at position {}",
                    l.level,
                    i + 1
                )));
            }
            if l.trans != first.trans || l.hat != first.hat {
                return Err(Error::InvalidRecipe(
                    "translation and hat token must be the same at every level".into(),
                ));
            }
        }
        let rotations: Vec<i64> = levels.iter().map(|l| l.rot as i64).collect();
        HomeoRecipe::new(
            levels.iter().map(|l| l.stage).collect(),
            &rotations,
            first.trans,
            first.hat.clone(),
        )
    }

    pub fn levels(&self) -> Vec<RecipeLevel> {
        self.stages
            .iter()
            .zip(&self.rotations)
            .enumerate()
            .map(|(i, (&stage, &rot))| RecipeLevel {
                level: i + 1,
                stage,
                rot,
                trans: self.translation,
                hat: self.hat.clone(),
            })
            .collect()
    }

    pub fn depth(&self) -> usize {
        self.stages.len()
    }

    pub fn stages(&self) -> &[u64] {
        &self.stages
    }

    pub fn rotations(&self) -> &[u64] {
        &self.rotations
    }

    pub fn translation(&self) -> i64 {
        self.translation
    }

    pub fn hat(&self) -> &IntervalAutToken {
        &self.hat
    }

    /// `H_n(q) = R_{l_n}(T_k(Â(q)))` at the 0-based `level`.
    pub fn apply_level(&self, level: usize, q: &StagePoint) -> Result<StagePoint> {
        let k = *self
            .stages
            .get(level)
            .ok_or_else(|| Error::InvalidRecipe(format!("no level {}", level + 1)))?;
        if q.n() != k {
            return Err(Error::Domain(format!(
                "level {} acts on {k} copies, point lives on {}",
                level + 1,
                q.n()
            )));
        }
        let hatted = match q.body() {
            StageBody::Joint(_) => q.clone(),
            StageBody::Inner(_, x) => q.with_coordinate(self.hat.eval(x)?),
        };
        let shifted = if self.translation == 0 {
            hatted
        } else {
            translate(self.translation, &hatted)?
        };
        Ok(rotate(self.rotations[level] as i64, &shifted))
    }
}

impl fmt::Display for HomeoRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in self.levels() {
            writeln!(
                f,
                "H_{} on {} copies = R_{} ∘ T_{} ∘ ({})",
                l.level, l.stage, l.rot, l.trans, l.hat
            )?;
        }
        Ok(())
    }
}

/// Applies the recipe level by level and re-validates the image thread.
pub fn apply_recipe(r: &HomeoRecipe, t: &Thread) -> Result<Thread> {
    if r.stages != t.stage_sizes() {
        return Err(Error::ThreadMismatch(format!(
            "recipe stages {:?} differ from thread stages {:?}",
            r.stages,
            t.stage_sizes()
        )));
    }
    let points = t
        .points()
        .iter()
        .enumerate()
        .map(|(level, q)| r.apply_level(level, q))
        .collect::<Result<Vec<_>>>()?;
    Thread::new(t.p().to_vec(), points)
}

/// First failure of `φ ∘ H_{n+1} = H_n ∘ φ`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Counterexample {
    /// 1-based level `n`; the point lives on level `n+1`.
    pub level: usize,
    pub point: StagePoint,
    /// `φ(H_{n+1}(q))`, or the error it raised.
    pub upper_then_bond: String,
    /// `H_n(φ(q))`, or the error it raised.
    pub bond_then_lower: String,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CommuteReport {
    pub checked: usize,
    pub counterexample: Option<Counterexample>,
}

impl CommuteReport {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Within-copy coordinates checked by [`verify_commutes`] before restricting
/// to where the hat token is defined.
///
/// * towers: every integer point `[z₁, …, z_j]` with `|z_i| ≤ bound`, plus a
///   few base points;
/// * long line: `ω₁·j`, `ω₁·j + ω + 1/2` for `j ≤ bound`, and `ω₁·ω (+1)`;
///
/// together with the hat's tracked source point in every copy position.
pub fn candidate_coordinates(mode: Mode, bound: i64, hat: &IntervalAutToken) -> Vec<InnerPoint> {
    let mut out = Vec::new();
    match mode {
        Mode::Tower(kappa) => {
            let mut prefixes: Vec<Vec<i64>> = vec![Vec::new()];
            for _ in 1..kappa {
                prefixes = prefixes
                    .into_iter()
                    .flat_map(|pre| {
                        (-bound..=bound).map(move |z| {
                            let mut v = pre.clone();
                            v.push(z);
                            v
                        })
                    })
                    .collect();
                for ints in &prefixes {
                    if let Ok(t) = TowerPoint::int_stop(kappa, ints.clone()) {
                        out.push(InnerPoint::Tower(t));
                    }
                }
            }
            if kappa == 1 {
                for (rho, t) in [
                    (Ordinal::one(), Rational::new(0, 1)),
                    (Ordinal::omega(), Rational::new(1, 2)),
                    (Ordinal::monomial(Ordinal::omega(), 1u32), Rational::new(0, 1)),
                ] {
                    let b = BasePoint::new(rho, t).expect("valid sample");
                    out.push(InnerPoint::Tower(TowerPoint::base(1, vec![], b).expect("valid sample")));
                }
            }
        }
        Mode::LongLine => {
            let half = Rational::new(1, 2);
            for j in 0..=bound.max(0) as u64 {
                if j > 0 {
                    out.push(InnerPoint::Long(
                        LongPoint::omega1_times(Ordinal::from(j)).expect("valid sample"),
                    ));
                }
                out.push(InnerPoint::Long(
                    LongPoint::new(Ordinal::from(j), Ordinal::omega(), half).expect("valid sample"),
                ));
            }
            out.push(InnerPoint::Long(
                LongPoint::omega1_times(Ordinal::omega()).expect("valid sample"),
            ));
            out.push(InnerPoint::Long(
                LongPoint::new(Ordinal::omega(), Ordinal::one(), Rational::new(0, 1))
                    .expect("valid sample"),
            ));
        }
    }
    if let IntervalAutToken::Mapping { domain, source, .. } = hat {
        match (domain, source) {
            (TokenDomain::TowerTail { kappa }, InnerPoint::Tower(w)) => {
                for z in -bound..=bound {
                    if let Ok(t) = TowerPoint::prepend(*kappa, z, Some(w)) {
                        out.push(InnerPoint::Tower(t));
                    }
                }
            }
            _ => out.push(source.clone()),
        }
    }
    out
}

/// Checks `φ^{p_n}_{k(n)} ∘ H_{n+1} = H_n ∘ φ^{p_n}_{k(n)}` for the first
/// `depth` levels on: every joint of `Σ^(k(n+1))`, and every copy of every
/// [`candidate_coordinates`] point at which the hat token is defined.
///
/// `mode` selects the within-copy coordinates; `None` checks joints only.
/// Stops at the first counterexample.
pub fn verify_commutes(
    r: &HomeoRecipe,
    depth: usize,
    mode: Option<Mode>,
    bound: i64,
) -> CommuteReport {
    let depth = depth.min(r.depth());
    let coords: Vec<InnerPoint> = mode
        .map(|m| candidate_coordinates(m, bound, &r.hat))
        .unwrap_or_default()
        .into_iter()
        .filter(|x| r.hat.eval(x).is_ok())
        .collect();
    let mut checked = 0;
    for level in 0..depth.saturating_sub(1) {
        let (k, k_up) = (r.stages[level], r.stages[level + 1]);
        let m = k_up / k;
        let joints = (0..k_up).map(|i| StagePoint::joint(k_up, i as i64));
        let inner = (0..k_up).flat_map(|i| {
            coords
                .iter()
                .map(move |x| StagePoint::inner(k_up, i as i64, x.clone()))
        });
        for q in joints.chain(inner) {
            let q = q.expect("stage sizes are positive");
            checked += 1;
            let upper = r
                .apply_level(level + 1, &q)
                .and_then(|h| apply_bond(m, k, &h));
            let lower = apply_bond(m, k, &q).and_then(|b| r.apply_level(level, &b));
            let agree = matches!((&upper, &lower), (Ok(a), Ok(b)) if a == b);
            if !agree {
                let show = |res: &Result<StagePoint>| match res {
                    Ok(p) => p.to_string(),
                    Err(e) => format!("error: {e}"),
                };
                return CommuteReport {
                    checked,
                    counterexample: Some(Counterexample {
                        level: level + 1,
                        point: q,
                        upper_then_bond: show(&upper),
                        bond_then_lower: show(&lower),
                    }),
                };
            }
        }
    }
    CommuteReport {
        checked,
        counterexample: None,
    }
}

/// Why two threads cannot be in the same orbit.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum DistinctionWitness {
    /// First coordinates have different types in `Σ(Λ_κ)`.
    TowerTypes { left: u32, right: u32 },
    LongLine(DistinctReason),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum RecipeStatus {
    Recipe(HomeoRecipe),
    ProvenDistinct(DistinctionWitness),
    Unknown(String),
}

fn thread_mode(x: &Thread, y: &Thread) -> Result<Option<Mode>> {
    match (x.mode(), y.mode()) {
        (Some(a), Some(b)) if a != b => Err(Error::ThreadMismatch(format!(
            "within-copy modes differ: {a} vs {b}"
        ))),
        (a, b) => Ok(a.or(b)),
    }
}

// The long-line reading of a first coordinate: joints are the point 0.
fn long_first(q: &StagePoint) -> LongPoint {
    match q.coordinate() {
        Some(InnerPoint::Long(p)) => p.clone(),
        _ => LongPoint::zero(),
    }
}

fn tower_first(q: &StagePoint, kappa: u32) -> TowerPoint {
    match q.coordinate() {
        Some(InnerPoint::Tower(t)) => t.clone(),
        _ => TowerPoint::joint(kappa).expect("kappa of an existing point"),
    }
}

/// Decides whether some recipe carries thread `x` to thread `y`, and builds
/// it when the answer is yes.
///
/// Tower mode is decided completely by point types. Long-line mode returns
/// [`RecipeStatus::Unknown`] for distinct points of one NG class.
pub fn synthesize_recipe(x: &Thread, y: &Thread) -> Result<RecipeStatus> {
    if x.p() != y.p() {
        return Err(Error::ThreadMismatch(format!(
            "bonding degrees differ: {:?} vs {:?}",
            x.p(),
            y.p()
        )));
    }
    let mode = thread_mode(x, y)?;
    let (x1, y1) = (x.first(), y.first());

    let (translation, hat) = match mode {
        None => (0, IntervalAutToken::Identity),
        Some(Mode::Tower(kappa)) => {
            let (a, b) = (tower_first(x1, kappa), tower_first(y1, kappa));
            let (ta, tb) = (tower::point_type(&a), tower::point_type(&b));
            if ta != tb {
                return Ok(RecipeStatus::ProvenDistinct(DistinctionWitness::TowerTypes {
                    left: ta,
                    right: tb,
                }));
            }
            if a.is_joint() {
                (0, IntervalAutToken::Identity)
            } else {
                let token = tower::base_automorphism_token(&a, &b)?;
                (token.translation, token.hat)
            }
        }
        Some(Mode::LongLine) => {
            let (a, b) = (long_first(x1), long_first(y1));
            if let OrbitProof::ProvenDistinct(reason) = long_line::distinct_orbit_proof(&a, &b) {
                return Ok(RecipeStatus::ProvenDistinct(DistinctionWitness::LongLine(reason)));
            }
            match long_line::same_orbit_recipe(&a, &b) {
                OrbitRecipe::Same(token) => (0, token),
                OrbitRecipe::Unknown => {
                    return Ok(RecipeStatus::Unknown(format!(
                        "{a} and {b} are distinct NG points; whether they share an orbit is open"
                    )))
                }
            }
        }
    };

    let rotations: Vec<i64> = x
        .points()
        .iter()
        .zip(y.points())
        .map(|(xn, yn)| yn.index() as i64 - xn.index() as i64)
        .collect();
    let recipe = HomeoRecipe::new(x.stage_sizes(), &rotations, translation, hat)?;
    let image = apply_recipe(&recipe, x)?;
    if image != *y {
        return Err(Error::InvalidRecipe(format!(
            "synthesized recipe sends {x} to {image}, not {y}"
        )));
    }
    Ok(RecipeStatus::Recipe(recipe))
}
