//! Command-line front end for `solenoid-core`: one JSON document per run.

pub mod json;

use std::fmt;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::{json, Value};

use solenoid_core::cohomology::{self, DirectLimitElement, SequenceDescriptor};
use solenoid_core::long_line::{self, LongPoint, OrbitProof, OrbitRecipe};
use solenoid_core::ordinal::{self, Ordinal};
use solenoid_core::parse;
use solenoid_core::stage::arcs::{self, CyclicArc};
use solenoid_core::stage::recipe::{self, RecipeStatus};
use solenoid_core::stage::thread::{self, Thread};
use solenoid_core::stage::{self as stage_ops, Mode, StagePoint};
use solenoid_core::tower::{self, TowerPoint};
use solenoid_core::Error;

pub const DEPTH_VAR: &str = "SOLENOID_MAX_DEPTH";
pub const INDEX_VAR: &str = "SOLENOID_INDEX_BOUND";

#[derive(Parser, Debug)]
#[command(name = "solenoid", version, about = "Exact computations on long solenoids")]
pub struct Cli {
    /// Output encoding; `json` is stable, `text` is for reading.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
}

/// Selects the continuum `Λ`: a tower `Λ_K` or the long line.
#[derive(Args, Debug, Clone, Copy)]
pub struct ModeArgs {
    /// Points live in the tower `Λ_K`.
    #[arg(long, value_name = "K", conflicts_with = "long")]
    pub tower: Option<u32>,
    /// Points live in the long line.
    #[arg(long)]
    pub long: bool,
}

impl ModeArgs {
    fn kappa(&self) -> Result<Option<u32>, CliError> {
        match self.tower {
            Some(0) => Err(CliError::usage("--tower", "the tower height K must be at least 1")),
            k => Ok(k),
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Ordinal arithmetic in Cantor normal form.
    #[command(subcommand)]
    Ordinal(OrdinalCommand),
    /// Type of a tower point, or orbit class of a long-line point.
    Classify {
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(long)]
        point: String,
    },
    /// Orbit relation between two first coordinates.
    PointOrbit {
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Homeomorphism recipe carrying thread `x` to thread `y`.
    Orbit {
        #[command(flatten)]
        mode: ModeArgs,
        /// Bonding degrees `p_1,…,p_{d−1}`.
        #[arg(long, default_value = "")]
        p: String,
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
        /// Integer range used for the verification set.
        #[arg(long, default_value_t = 2)]
        bound: i64,
    },
    /// Image of a point of `Σ^(mn)` under the bonding map onto `Σ^(n)`.
    Bond {
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        point: String,
    },
    /// Preimage of a point of `Σ^(n)` in `Σ^(mn)`.
    Fiber {
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        point: String,
    },
    /// Rotations and translations of a single stage.
    #[command(subcommand)]
    Stage(StageCommand),
    /// Threads of the inverse limit.
    #[command(subcommand)]
    Thread(ThreadCommand),
    /// Level-wise homeomorphism recipes.
    #[command(subcommand)]
    Recipe(RecipeCommand),
    /// Indecomposability witness for a proper covering pair of arcs.
    Indecomp {
        /// Bonding degree `p_n`.
        #[arg(long)]
        degree: u64,
        /// Number of copies in the stage carrying the arcs.
        #[arg(long)]
        stage: u64,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long, allow_hyphen_values = true)]
        g: String,
    },
    /// Whether a cover of `Σ^(n)` is a circular chain.
    ChainCheck {
        #[arg(long)]
        n: u64,
        /// Arcs `START:END` separated by `;`.
        #[arg(long, allow_hyphen_values = true)]
        arcs: String,
        /// Also pull the cover back to `Σ^(mn)` and check that.
        #[arg(long, value_name = "M")]
        pullback: Option<u64>,
    },
    /// First Čech cohomology of the solenoid.
    #[command(subcommand)]
    Cohomology(CohomologyCommand),
}

#[derive(Subcommand, Debug)]
pub enum OrdinalCommand {
    Compare {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    Add {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    Mul {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// `ω^a`.
    Pow {
        #[arg(long)]
        a: String,
    },
    /// Parse and print in normal form.
    Normalize {
        #[arg(long)]
        a: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum StageCommand {
    Rotate {
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(long)]
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long)]
        point: String,
    },
    Translate {
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(long)]
        n: u64,
        #[arg(long, allow_hyphen_values = true)]
        k: i64,
        #[arg(long)]
        point: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum ThreadCommand {
    /// Check that the points form a thread.
    Verify {
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(long, default_value = "")]
        p: String,
        /// Stage points separated by `;`, level 1 first.
        #[arg(long)]
        points: String,
    },
    /// Every extension by further levels of the given degrees.
    Extend {
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(long, default_value = "")]
        p: String,
        #[arg(long)]
        points: String,
        #[arg(long)]
        next: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum RecipeCommand {
    /// Apply a recipe to a thread.
    Apply {
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(long, default_value = "")]
        p: String,
        #[arg(long)]
        points: String,
        /// JSON array of `{level, stage?, rot, trans, hat}`.
        #[arg(long)]
        recipe: String,
    },
    /// Check commutation with the bonding maps.
    Verify {
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(long, default_value = "")]
        p: String,
        #[arg(long)]
        recipe: String,
        /// Levels to check; defaults to the whole recipe.
        #[arg(long)]
        depth: Option<usize>,
        #[arg(long, default_value_t = 2)]
        bound: i64,
    },
}

#[derive(Subcommand, Debug)]
pub enum CohomologyCommand {
    /// The supernatural number classifying `H¹`.
    Invariant {
        #[arg(long)]
        s: String,
    },
    Equiv {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Whether a rational lies in `H¹ ≅ ℚ(p⃗)`.
    Member {
        #[arg(long)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        r: String,
    },
    /// Degree of the bonding map `Σ^(mn) → Σ^(n)` on `H¹`.
    Degree {
        #[arg(long)]
        m: u64,
        #[arg(long)]
        n: u64,
    },
    /// Sum of direct-limit elements written `LEVEL:NUMERATOR`.
    Add {
        #[arg(long)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
    },
    Equal {
        #[arg(long)]
        s: String,
        #[arg(long, allow_hyphen_values = true)]
        u: String,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
    },
    /// Pairwise inequivalent descriptors.
    Generate {
        #[arg(long)]
        count: usize,
    },
}

/// Library operations and the one subcommand path that reaches each.
pub const OPERATIONS: &[(&str, &[&str])] = &[
    ("ordinal::compare", &["ordinal", "compare"]),
    ("ordinal::add", &["ordinal", "add"]),
    ("ordinal::mul", &["ordinal", "mul"]),
    ("ordinal::omega_pow", &["ordinal", "pow"]),
    ("parse::parse_ordinal", &["ordinal", "normalize"]),
    ("long_line::is_ng", &["classify"]),
    ("long_line::partition_class", &["classify"]),
    ("tower::point_type", &["classify"]),
    ("long_line::distinct_orbit_proof", &["point-orbit"]),
    ("long_line::same_orbit_recipe", &["point-orbit"]),
    ("tower::same_orbit", &["point-orbit"]),
    ("tower::base_automorphism_token", &["point-orbit"]),
    ("stage::apply_bond", &["bond"]),
    ("stage::fiber", &["fiber"]),
    ("stage::rotate", &["stage", "rotate"]),
    ("stage::translate", &["stage", "translate"]),
    ("stage::thread::Thread::new", &["thread", "verify"]),
    ("stage::thread::extend_thread", &["thread", "extend"]),
    ("stage::recipe::apply_recipe", &["recipe", "apply"]),
    ("stage::recipe::verify_commutes", &["recipe", "verify"]),
    ("stage::recipe::synthesize_recipe", &["orbit"]),
    ("stage::arcs::indecomposability_witness", &["indecomp"]),
    ("stage::arcs::circular_chain_check", &["chain-check"]),
    ("cohomology::supernatural_of", &["cohomology", "invariant"]),
    ("cohomology::h1_of_solenoid", &["cohomology", "invariant"]),
    ("cohomology::mccord_equivalent", &["cohomology", "equiv"]),
    ("cohomology::member", &["cohomology", "member"]),
    ("cohomology::h1_action", &["cohomology", "degree"]),
    ("cohomology::dl_add", &["cohomology", "add"]),
    ("cohomology::dl_equal", &["cohomology", "equal"]),
    ("cohomology::distinct_descriptors", &["cohomology", "generate"]),
];

/// Resource bounds read from the environment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Most thread levels any command builds.
    pub max_depth: usize,
    /// Largest stage `Σ^(k)` any command builds.
    pub index_bound: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_depth: 6,
            index_bound: 48,
        }
    }
}

impl Limits {
    pub fn from_env() -> Result<Self, CliError> {
        let mut limits = Limits::default();
        if let Some(v) = read_var(DEPTH_VAR)? {
            limits.max_depth = v as usize;
        }
        if let Some(v) = read_var(INDEX_VAR)? {
            limits.index_bound = v;
        }
        Ok(limits)
    }

    fn depth(&self, depth: usize) -> Result<(), CliError> {
        if depth > self.max_depth {
            return Err(CliError::limit(format!(
                "{depth} levels exceed the depth bound {} (set {DEPTH_VAR})",
                self.max_depth
            )));
        }
        Ok(())
    }

    fn stage(&self, k: u64) -> Result<(), CliError> {
        if k > self.index_bound {
            return Err(CliError::limit(format!(
                "stage Σ^({k}) exceeds the index bound {} (set {INDEX_VAR})",
                self.index_bound
            )));
        }
        Ok(())
    }

    fn product(&self, factors: &[u64]) -> Result<(), CliError> {
        let k = factors
            .iter()
            .try_fold(1u64, |acc, &f| acc.checked_mul(f))
            .unwrap_or(u64::MAX);
        self.stage(k)
    }
}

fn read_var(name: &str) -> Result<Option<u64>, CliError> {
    match std::env::var(name) {
        Ok(text) => text.trim().parse().map(Some).map_err(|_| CliError {
            code: "invalid_environment".into(),
            message: format!("{name} must be a natural number, got {text:?}"),
            position: None,
            argument: Some(name.into()),
        }),
        Err(_) => Ok(None),
    }
}

/// The structured error document printed on failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliError {
    pub code: String,
    pub message: String,
    pub position: Option<usize>,
    pub argument: Option<String>,
}

impl CliError {
    pub fn usage(argument: &str, message: impl Into<String>) -> Self {
        CliError {
            code: "usage_error".into(),
            message: message.into(),
            position: None,
            argument: Some(argument.into()),
        }
    }

    fn limit(message: String) -> Self {
        CliError {
            code: "limit_exceeded".into(),
            message,
            position: None,
            argument: None,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut doc = json!({ "error": { "code": self.code, "message": self.message } });
        if let Some(p) = self.position {
            doc["error"]["position"] = p.into();
        }
        if let Some(a) = &self.argument {
            doc["error"]["argument"] = a.clone().into();
        }
        doc
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.code, self.message)
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let (message, position) = match &e {
            Error::Parse(p) => (p.message.clone(), Some(p.position)),
            other => (other.to_string(), None),
        };
        CliError {
            code: e.code().into(),
            message,
            position,
            argument: None,
        }
    }
}

type Outcome<T> = Result<T, CliError>;

// Tags a failure with the flag whose literal caused it.
fn arg<T>(name: &str, r: solenoid_core::Result<T>) -> Outcome<T> {
    r.map_err(|e| CliError {
        argument: Some(name.into()),
        ..e.into()
    })
}

fn ordinal_arg(name: &str, text: &str) -> Outcome<Ordinal> {
    arg(name, parse::parse_ordinal(text))
}

fn degrees(name: &str, text: &str) -> Outcome<Vec<u64>> {
    arg(name, parse::parse_nat_list(text))
}

fn descriptor(name: &str, text: &str) -> Outcome<SequenceDescriptor> {
    arg(name, parse::parse_descriptor(text))
}

fn stage_point(name: &str, text: &str, n: u64, mode: &ModeArgs) -> Outcome<StagePoint> {
    arg(name, parse::parse_stage_point(text, n, mode.kappa()?))
}

fn thread_arg(name: &str, p: &[u64], text: &str, mode: &ModeArgs, limits: &Limits) -> Outcome<Thread> {
    limits.depth(p.len() + 1)?;
    limits.product(p)?;
    arg(name, parse::parse_thread(p, text, mode.kappa()?))
}

fn element(name: &str, text: &str) -> Outcome<DirectLimitElement> {
    let Some(colon) = text.find(':') else {
        return Err(CliError {
            code: "syntax_error".into(),
            message: "expected LEVEL:NUMERATOR".into(),
            position: Some(text.len()),
            argument: Some(name.into()),
        });
    };
    let syntax = |position: usize, message: &str| CliError {
        code: "syntax_error".into(),
        message: message.into(),
        position: Some(position),
        argument: Some(name.into()),
    };
    let level: usize = text[..colon]
        .trim()
        .parse()
        .map_err(|_| syntax(0, "level must be a natural number"))?;
    let numerator: BigInt = text[colon + 1..]
        .trim()
        .parse()
        .map_err(|_| syntax(colon + 1, "numerator must be an integer"))?;
    Ok(DirectLimitElement::new(level, numerator))
}

fn mode_of(mode: &ModeArgs) -> Outcome<Mode> {
    Ok(match mode.kappa()? {
        Some(k) => Mode::Tower(k),
        None => Mode::LongLine,
    })
}

/// Runs one command and returns its JSON document.
pub fn run_command(command: &Command, limits: &Limits) -> Outcome<Value> {
    match command {
        Command::Ordinal(c) => run_ordinal(c),
        Command::Classify { mode, point } => classify(mode, point),
        Command::PointOrbit { mode, x, y } => point_orbit(mode, x, y),
        Command::Orbit {
            mode,
            p,
            x,
            y,
            bound,
        } => orbit(mode, p, x, y, *bound, limits),
        Command::Bond { mode, m, n, point } => {
            limits.product(&[*m, *n])?;
            let source = stage_point("--point", point, m * n, mode)?;
            let image = stage_ops::apply_bond(*m, *n, &source)?;
            Ok(json!({ "point": image.to_string() }))
        }
        Command::Fiber { mode, m, n, point } => {
            limits.product(&[*m, *n])?;
            let q = stage_point("--point", point, *n, mode)?;
            let points = stage_ops::fiber(*m, *n, &q)?;
            Ok(json!({ "points": json::strings(&points) }))
        }
        Command::Stage(c) => run_stage(c, limits),
        Command::Thread(c) => run_thread(c, limits),
        Command::Recipe(c) => run_recipe(c, limits),
        Command::Indecomp { degree, stage, c, g } => {
            limits.product(&[*degree, *stage])?;
            let c = arg("--c", parse::parse_arc(c, *stage))?;
            let g = arg("--g", parse::parse_arc(g, *stage))?;
            let report = arcs::indecomposability_witness(*degree, *stage, &c, &g)?;
            Ok(json::witness_report(&report))
        }
        Command::ChainCheck { n, arcs: text, pullback } => {
            limits.stage(*n)?;
            let cover = arg("--arcs", parse::parse_arcs(text, *n))?;
            let mut doc = json!({ "chain": arcs::circular_chain_check(&cover) });
            if let Some(m) = pullback {
                limits.product(&[*m, *n])?;
                let lifted = arcs::pullback_cover(*m, &cover)?;
                doc["pullback"] = json!({
                    "stage": m * n,
                    "arcs": lifted.iter().map(CyclicArc::to_string).collect::<Vec<_>>(),
                    "chain": arcs::circular_chain_check(&lifted),
                });
            }
            Ok(doc)
        }
        Command::Cohomology(c) => run_cohomology(c),
    }
}

fn run_ordinal(c: &OrdinalCommand) -> Outcome<Value> {
    let result = match c {
        OrdinalCommand::Compare { a, b } => {
            let ord = ordinal::compare(&ordinal_arg("--a", a)?, &ordinal_arg("--b", b)?);
            let word = match ord {
                std::cmp::Ordering::Less => "less",
                std::cmp::Ordering::Equal => "equal",
                std::cmp::Ordering::Greater => "greater",
            };
            return Ok(json!({ "ordering": word }));
        }
        OrdinalCommand::Add { a, b } => ordinal::add(&ordinal_arg("--a", a)?, &ordinal_arg("--b", b)?),
        OrdinalCommand::Mul { a, b } => ordinal::mul(&ordinal_arg("--a", a)?, &ordinal_arg("--b", b)?),
        OrdinalCommand::Pow { a } => ordinal::omega_pow(&ordinal_arg("--a", a)?).map_err(Error::from)?,
        OrdinalCommand::Normalize { a } => ordinal_arg("--a", a)?,
    };
    Ok(json!({ "result": result.to_string() }))
}

fn classify(mode: &ModeArgs, point: &str) -> Outcome<Value> {
    if let Some(kappa) = mode.kappa()? {
        let p = arg("--point", parse::parse_tower_point(point, kappa))?;
        return Ok(json!({
            "mode": Mode::Tower(kappa).to_string(),
            "point": p.to_string(),
            "type": tower::point_type(&p),
            "joint": p.is_joint(),
        }));
    }
    let p = arg("--point", parse::parse_long_point(point))?;
    let class = if p.is_joint() {
        Value::Null
    } else {
        json::class(&long_line::partition_class(&p)?)
    };
    Ok(json!({
        "mode": Mode::LongLine.to_string(),
        "point": p.to_string(),
        "joint": p.is_joint(),
        "is_ng": long_line::is_ng(&p).ok(),
        "class": class,
    }))
}

fn point_orbit(mode: &ModeArgs, x: &str, y: &str) -> Outcome<Value> {
    if let Some(kappa) = mode.kappa()? {
        let px: TowerPoint = arg("--x", parse::parse_tower_point(x, kappa))?;
        let py: TowerPoint = arg("--y", parse::parse_tower_point(y, kappa))?;
        let same = tower::same_orbit(&px, &py)?;
        let mut doc = json!({
            "status": if same { "same" } else { "proven_distinct" },
            "types": [tower::point_type(&px), tower::point_type(&py)],
        });
        if same {
            doc["token"] = json::tower_token(&tower::base_automorphism_token(&px, &py)?);
        }
        return Ok(doc);
    }
    let px: LongPoint = arg("--x", parse::parse_long_point(x))?;
    let py: LongPoint = arg("--y", parse::parse_long_point(y))?;
    if let OrbitProof::ProvenDistinct(reason) = long_line::distinct_orbit_proof(&px, &py) {
        return Ok(json!({ "status": "proven_distinct", "witness": json::long_reason(&reason) }));
    }
    Ok(match long_line::same_orbit_recipe(&px, &py) {
        OrbitRecipe::Same(token) => json!({ "status": "same", "token": json::hat(&token) }),
        OrbitRecipe::Unknown => json!({ "status": "unknown" }),
    })
}

fn orbit(mode: &ModeArgs, p: &str, x: &str, y: &str, bound: i64, limits: &Limits) -> Outcome<Value> {
    let p = degrees("--p", p)?;
    let tx = thread_arg("--x", &p, x, mode, limits)?;
    let ty = thread_arg("--y", &p, y, mode, limits)?;
    Ok(match recipe::synthesize_recipe(&tx, &ty)? {
        RecipeStatus::Recipe(r) => {
            let check_mode = tx.mode().or(ty.mode());
            let report = recipe::verify_commutes(&r, r.depth(), check_mode, bound);
            let image = recipe::apply_recipe(&r, &tx)?;
            json!({
                "status": "same",
                "recipe": json::recipe(&r),
                "verification": json::commute_report(&report),
                "maps_x_to_y": image == ty,
            })
        }
        RecipeStatus::ProvenDistinct(w) => {
            json!({ "status": "proven_distinct", "witness": json::witness(&w) })
        }
        RecipeStatus::Unknown(reason) => json!({ "status": "unknown", "reason": reason }),
    })
}

fn run_stage(c: &StageCommand, limits: &Limits) -> Outcome<Value> {
    let (mode, n, k, point, rotating) = match c {
        StageCommand::Rotate { mode, n, k, point } => (mode, n, k, point, true),
        StageCommand::Translate { mode, n, k, point } => (mode, n, k, point, false),
    };
    limits.stage(*n)?;
    let p = stage_point("--point", point, *n, mode)?;
    let image = if rotating {
        stage_ops::rotate(*k, &p)
    } else {
        stage_ops::translate(*k, &p)?
    };
    Ok(json!({ "point": image.to_string() }))
}

fn run_thread(c: &ThreadCommand, limits: &Limits) -> Outcome<Value> {
    match c {
        ThreadCommand::Verify { mode, p, points } => {
            let p = degrees("--p", p)?;
            match thread_arg("--points", &p, points, mode, limits) {
                Ok(t) => Ok(json!({
                    "valid": true,
                    "depth": t.depth(),
                    "stage_sizes": t.stage_sizes(),
                    "mode": t.mode().map(|m| m.to_string()),
                })),
                Err(e) if e.code == "invalid_thread" || e.code == "thread_mismatch" => Ok(json!({
                    "valid": false,
                    "code": e.code,
                    "reason": e.message,
                })),
                Err(e) => Err(e),
            }
        }
        ThreadCommand::Extend {
            mode,
            p,
            points,
            next,
        } => {
            let p = degrees("--p", p)?;
            let next = degrees("--next", next)?;
            let all: Vec<u64> = p.iter().chain(&next).copied().collect();
            limits.depth(all.len() + 1)?;
            limits.product(&all)?;
            let t = thread_arg("--points", &p, points, mode, limits)?;
            let threads = thread::extend_thread(&t, &next)?;
            Ok(json!({
                "count": threads.len(),
                "threads": threads.iter().map(|t| json::strings(t.points())).collect::<Vec<_>>(),
            }))
        }
    }
}

fn recipe_arg(text: &str, p: &[u64], depth: usize) -> Outcome<recipe::HomeoRecipe> {
    let sizes = arg("--p", thread::stage_sizes(p, depth))?;
    arg("--recipe", json::decode_recipe(text, &sizes))
}

fn run_recipe(c: &RecipeCommand, limits: &Limits) -> Outcome<Value> {
    match c {
        RecipeCommand::Apply {
            mode,
            p,
            points,
            recipe: text,
        } => {
            let p = degrees("--p", p)?;
            let t = thread_arg("--points", &p, points, mode, limits)?;
            let r = recipe_arg(text, &p, t.depth())?;
            let image = recipe::apply_recipe(&r, &t)?;
            Ok(json!({ "points": json::strings(image.points()) }))
        }
        RecipeCommand::Verify {
            mode,
            p,
            recipe: text,
            depth,
            bound,
        } => {
            let p = degrees("--p", p)?;
            limits.depth(p.len() + 1)?;
            limits.product(&p)?;
            let r = recipe_arg(text, &p, p.len() + 1)?;
            let depth = depth.unwrap_or(r.depth());
            let check_mode = if mode.tower.is_some() || mode.long {
                Some(mode_of(mode)?)
            } else {
                None
            };
            let report = recipe::verify_commutes(&r, depth, check_mode, *bound);
            Ok(json::commute_report(&report))
        }
    }
}

fn run_cohomology(c: &CohomologyCommand) -> Outcome<Value> {
    Ok(match c {
        CohomologyCommand::Invariant { s } => {
            let s = descriptor("--s", s)?;
            let h = cohomology::h1_of_solenoid(&s);
            debug_assert_eq!(h, cohomology::supernatural_of(&s));
            json!({ "descriptor": s.to_string(), "invariant": json::supernatural(&h) })
        }
        CohomologyCommand::Equiv { a, b } => {
            let (a, b) = (descriptor("--a", a)?, descriptor("--b", b)?);
            json!({
                "equivalent": cohomology::mccord_equivalent(&a, &b),
                "invariants": [
                    json::supernatural(&cohomology::supernatural_of(&a)),
                    json::supernatural(&cohomology::supernatural_of(&b)),
                ],
            })
        }
        CohomologyCommand::Member { s, r } => {
            let s = descriptor("--s", s)?;
            let r: BigRational = arg("--r", parse::parse_big_rational(r))?;
            let mut doc = json!({ "member": cohomology::member(&s, &r) });
            if let Some(u) = cohomology::dl_from_rational(&s, &r) {
                doc["element"] = json::element(&s, &u);
            }
            doc
        }
        CohomologyCommand::Degree { m, n } => {
            json!({ "degree": cohomology::h1_action(*m, *n)? })
        }
        CohomologyCommand::Add { s, u, v } => {
            let s = descriptor("--s", s)?;
            let (u, v) = (element("--u", u)?, element("--v", v)?);
            json!({ "sum": json::element(&s, &cohomology::dl_add(&s, &u, &v)) })
        }
        CohomologyCommand::Equal { s, u, v } => {
            let s = descriptor("--s", s)?;
            let (u, v) = (element("--u", u)?, element("--v", v)?);
            json!({ "equal": cohomology::dl_equal(&s, &u, &v) })
        }
        CohomologyCommand::Generate { count } => {
            let descriptors = cohomology::distinct_descriptors(*count);
            json!({ "count": descriptors.len(), "descriptors": json::strings(&descriptors) })
        }
    })
}

/// Human-oriented rendering: one `key: value` line per top-level field.
pub fn render_text(doc: &Value) -> String {
    match doc {
        Value::Object(map) => map
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k}: {s}"),
                other => format!("{k}: {other}"),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        other => other.to_string(),
    }
}
