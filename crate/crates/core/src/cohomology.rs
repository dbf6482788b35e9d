//! First cohomology of the solenoids `S(Λ, p⃗)`: the groups `ℚ(p⃗)`, their
//! supernatural invariants and the degree of stage maps.
//!
//! Sequences are eventually periodic. For such a sequence only the primes of
//! the prefix can have finite nonzero multiplicity, so two sequences are
//! McCord equivalent exactly when the primes of infinite multiplicity agree.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// `p⃗ = prefix, cycle, cycle, …`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct SequenceDescriptor {
    prefix: Vec<u64>,
    cycle: Vec<u64>,
}

impl SequenceDescriptor {
    pub fn new(prefix: Vec<u64>, cycle: Vec<u64>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::InvalidDescriptor("the cycle must be nonempty".into()));
        }
        if let Some(bad) = prefix.iter().chain(&cycle).find(|&&e| e < 2) {
            return Err(Error::InvalidDescriptor(format!("entry {bad} is below 2")));
        }
        Ok(SequenceDescriptor { prefix, cycle })
    }

    pub fn prefix(&self) -> &[u64] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[u64] {
        &self.cycle
    }

    /// `p_i`, 1-based.
    pub fn term(&self, i: usize) -> u64 {
        assert!(i >= 1, "terms are numbered from 1");
        let i = i - 1;
        match self.prefix.get(i) {
            Some(&p) => p,
            None => self.cycle[(i - self.prefix.len()) % self.cycle.len()],
        }
    }

    pub fn terms(&self, count: usize) -> Vec<u64> {
        (1..=count).map(|i| self.term(i)).collect()
    }

    /// `p₁⋯p_n`; the empty product is 1.
    pub fn product(&self, n: usize) -> BigUint {
        (1..=n).fold(BigUint::one(), |acc, i| acc * self.term(i))
    }
}

impl fmt::Display for SequenceDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{}:{}", join(&self.prefix), join(&self.cycle))
    }
}

/// Prime factorization by trial division.
pub fn factorize(mut n: u64) -> BTreeMap<u64, u32> {
    let mut out = BTreeMap::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        while n % d == 0 {
            *out.entry(d).or_insert(0) += 1;
            n /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        *out.entry(n).or_insert(0) += 1;
    }
    out
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Multiplicity {
    Finite(u32),
    Infinite,
}

impl Multiplicity {
    pub fn at_least(self, a: u32) -> bool {
        match self {
            Multiplicity::Finite(m) => m >= a,
            Multiplicity::Infinite => true,
        }
    }
}

/// `∏ q^{e_q}` with `e_q ∈ ℕ ∪ {∞}`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct SupernaturalNumber {
    finite: BTreeMap<u64, u32>,
    infinite: BTreeSet<u64>,
}

impl SupernaturalNumber {
    pub fn new(finite: BTreeMap<u64, u32>, infinite: BTreeSet<u64>) -> Result<Self> {
        if let Some((q, _)) = finite.iter().find(|(_, &m)| m == 0) {
            return Err(Error::InvalidDescriptor(format!(
                "finite multiplicity of {q} must be positive"
            )));
        }
        if let Some(q) = finite.keys().find(|q| infinite.contains(q)) {
            return Err(Error::InvalidDescriptor(format!(
                "{q} has both finite and infinite multiplicity"
            )));
        }
        Ok(SupernaturalNumber { finite, infinite })
    }

    pub fn finite(&self) -> &BTreeMap<u64, u32> {
        &self.finite
    }

    pub fn infinite(&self) -> &BTreeSet<u64> {
        &self.infinite
    }

    pub fn multiplicity(&self, q: u64) -> Multiplicity {
        if self.infinite.contains(&q) {
            Multiplicity::Infinite
        } else {
            Multiplicity::Finite(self.finite.get(&q).copied().unwrap_or(0))
        }
    }

    /// Primes with nonzero multiplicity, ascending.
    pub fn support(&self) -> Vec<u64> {
        let mut all: Vec<u64> = self.finite.keys().chain(&self.infinite).copied().collect();
        all.sort_unstable();
        all
    }
}

impl fmt::Display for SupernaturalNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .support()
            .into_iter()
            .map(|q| match self.multiplicity(q) {
                Multiplicity::Infinite => format!("{q}^inf"),
                Multiplicity::Finite(1) => q.to_string(),
                Multiplicity::Finite(m) => format!("{q}^{m}"),
            })
            .collect();
        if parts.is_empty() {
            f.write_str("1")
        } else {
            f.write_str(&parts.join(" * "))
        }
    }
}

pub fn supernatural_of(s: &SequenceDescriptor) -> SupernaturalNumber {
    let infinite: BTreeSet<u64> = s.cycle.iter().flat_map(|&e| factorize(e).into_keys()).collect();
    let mut finite = BTreeMap::new();
    for &e in &s.prefix {
        for (q, m) in factorize(e) {
            if !infinite.contains(&q) {
                *finite.entry(q).or_insert(0) += m;
            }
        }
    }
    SupernaturalNumber { finite, infinite }
}

/// The isomorphism invariant of `H¹(S(Λ, p⃗)) ≅ ℚ(p⃗)`.
pub fn h1_of_solenoid(s: &SequenceDescriptor) -> SupernaturalNumber {
    supernatural_of(s)
}

pub fn mccord_equivalent(a: &SequenceDescriptor, b: &SequenceDescriptor) -> bool {
    supernatural_of(a).infinite == supernatural_of(b).infinite
}

/// Whether `r ∈ ℚ(p⃗)`, i.e. the reduced denominator of `r` divides some
/// `p₁⋯p_n`.
pub fn member(s: &SequenceDescriptor, r: &BigRational) -> bool {
    let sn = supernatural_of(s);
    let mut d = r.denom().abs();
    for q in sn.support() {
        let q = BigInt::from(q);
        let mut a = 0u32;
        while d.is_multiple_of(&q) {
            d /= &q;
            a += 1;
        }
        if !sn.multiplicity(q.try_into().expect("prime fits u64")).at_least(a) {
            return false;
        }
    }
    d.is_one()
}

/// `numerator / (p₁⋯p_level)` in `ℚ(p⃗)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct DirectLimitElement {
    pub level: usize,
    pub numerator: BigInt,
}

impl DirectLimitElement {
    pub fn new(level: usize, numerator: impl Into<BigInt>) -> Self {
        DirectLimitElement {
            level,
            numerator: numerator.into(),
        }
    }

    pub fn zero() -> Self {
        DirectLimitElement::new(0, 0)
    }
}

impl fmt::Display for DirectLimitElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} @ level {}", self.numerator, self.level)
    }
}

/// Divides out `p_level` while it divides the numerator.
pub fn dl_canonical(s: &SequenceDescriptor, u: &DirectLimitElement) -> DirectLimitElement {
    if u.numerator.is_zero() {
        return DirectLimitElement::zero();
    }
    let mut level = u.level;
    let mut num = u.numerator.clone();
    while level >= 1 {
        let p = BigInt::from(s.term(level));
        if !num.is_multiple_of(&p) {
            break;
        }
        num /= p;
        level -= 1;
    }
    DirectLimitElement { level, numerator: num }
}

/// The same element written at a level `≥ u.level`, via `× p_{i+1}`.
pub fn dl_lift(s: &SequenceDescriptor, u: &DirectLimitElement, level: usize) -> DirectLimitElement {
    assert!(level >= u.level, "lifting only goes up");
    let num = (u.level + 1..=level).fold(u.numerator.clone(), |acc, i| acc * s.term(i));
    DirectLimitElement { level, numerator: num }
}

pub fn dl_add(s: &SequenceDescriptor, u: &DirectLimitElement, v: &DirectLimitElement) -> DirectLimitElement {
    let top = u.level.max(v.level);
    let sum = dl_lift(s, u, top).numerator + dl_lift(s, v, top).numerator;
    dl_canonical(s, &DirectLimitElement::new(top, sum))
}

pub fn dl_neg(s: &SequenceDescriptor, u: &DirectLimitElement) -> DirectLimitElement {
    dl_canonical(s, &DirectLimitElement::new(u.level, -u.numerator.clone()))
}

pub fn dl_equal(s: &SequenceDescriptor, u: &DirectLimitElement, v: &DirectLimitElement) -> bool {
    let top = u.level.max(v.level);
    dl_lift(s, u, top).numerator == dl_lift(s, v, top).numerator
}

/// The rational number an element stands for.
pub fn dl_value(s: &SequenceDescriptor, u: &DirectLimitElement) -> BigRational {
    BigRational::new(u.numerator.clone(), BigInt::from(s.product(u.level)))
}

/// The canonical element with value `r`, or `None` when `r ∉ ℚ(p⃗)`.
pub fn dl_from_rational(s: &SequenceDescriptor, r: &BigRational) -> Option<DirectLimitElement> {
    if !member(s, r) {
        return None;
    }
    let mut rest = r.denom().abs();
    let mut level = 0;
    while !rest.is_one() {
        level += 1;
        let g = rest.gcd(&BigInt::from(s.term(level)));
        rest /= g;
    }
    let num = r * BigRational::from_integer(BigInt::from(s.product(level)));
    debug_assert!(num.is_integer());
    Some(dl_canonical(s, &DirectLimitElement::new(level, num.to_integer())))
}

/// Where one copy of the source stage goes under a combinatorial map.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum Step {
    /// Onto copy `j`, from `∞_j` to `∞_{j+1}`.
    Forward(u64),
    /// Onto copy `j`, from `∞_{j+1}` to `∞_j`.
    Backward(u64),
    /// To the joint `∞_j`.
    Collapse(u64),
}

impl Step {
    fn ends(self, n: u64) -> (u64, u64) {
        match self {
            Step::Forward(j) => (j, (j + 1) % n),
            Step::Backward(j) => ((j + 1) % n, j),
            Step::Collapse(j) => (j, j),
        }
    }

    fn reversed(self) -> Step {
        match self {
            Step::Forward(j) => Step::Backward(j),
            Step::Backward(j) => Step::Forward(j),
            c => c,
        }
    }
}

/// A map `Σ^(source) → Σ^(target)` sending each copy onto a copy or a joint.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct StageMap {
    target: u64,
    steps: Vec<Step>,
}

impl StageMap {
    /// Checks that the copy images chain up around the circle.
    pub fn new(target: u64, steps: Vec<Step>) -> Result<Self> {
        if target == 0 || steps.is_empty() {
            return Err(Error::Domain("stages have at least one copy".into()));
        }
        for (i, s) in steps.iter().enumerate() {
            let (Step::Forward(j) | Step::Backward(j) | Step::Collapse(j)) = *s;
            if j >= target {
                return Err(Error::Domain(format!("copy {j} does not exist in Σ^({target})")));
            }
            let next = steps[(i + 1) % steps.len()];
            if s.ends(target).1 != next.ends(target).0 {
                return Err(Error::Domain(format!(
                    "copies {i} and {} do not meet at a joint",
                    (i + 1) % steps.len()
                )));
            }
        }
        Ok(StageMap { target, steps })
    }

    /// The bonding map `φ^m_n`.
    pub fn bond(m: u64, n: u64) -> Result<Self> {
        if m == 0 || n == 0 {
            return Err(Error::Domain("bond degrees must be positive".into()));
        }
        StageMap::new(n, (0..m * n).map(|i| Step::Forward(i % n)).collect())
    }

    pub fn source(&self) -> u64 {
        self.steps.len() as u64
    }

    pub fn target(&self) -> u64 {
        self.target
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// `outer ∘ self`.
    pub fn then(&self, outer: &StageMap) -> Result<StageMap> {
        if outer.source() != self.target {
            return Err(Error::Domain(format!(
                "cannot follow a map into Σ^({}) by a map from Σ^({})",
                self.target,
                outer.source()
            )));
        }
        let steps = self
            .steps
            .iter()
            .map(|s| match *s {
                Step::Forward(j) => outer.steps[j as usize],
                Step::Backward(j) => outer.steps[j as usize].reversed(),
                Step::Collapse(j) => Step::Collapse(outer.steps[j as usize].ends(outer.target).0),
            })
            .collect();
        StageMap::new(outer.target, steps)
    }

    /// Signed crossings of the base joint `∞_0` over a run of copies: a
    /// forward arrival at `∞_0` counts `+1`, a backward departure `−1`.
    fn signed_crossings(&self, steps: &[Step]) -> i64 {
        let n = self.target;
        steps
            .iter()
            .map(|s| match *s {
                Step::Forward(j) if (j + 1) % n == 0 => 1,
                Step::Backward(j) if (j + 1) % n == 0 => -1,
                _ => 0,
            })
            .sum()
    }

    /// The integer by which the map multiplies `H¹ ≅ ℤ`.
    pub fn degree(&self) -> i64 {
        self.signed_crossings(&self.steps)
    }

    /// Splits the source at the joints `∞_{k·source/pieces}` and returns the
    /// degree of each piece; they sum to [`StageMap::degree`].
    pub fn piece_degrees(&self, pieces: u64) -> Result<Vec<i64>> {
        if pieces == 0 || self.source() % pieces != 0 {
            return Err(Error::Domain(format!(
                "{} copies do not split into {pieces} pieces",
                self.source()
            )));
        }
        let len = (self.source() / pieces) as usize;
        Ok(self.steps.chunks(len).map(|c| self.signed_crossings(c)).collect())
    }
}

/// The action on `H¹` of the bond `Σ^(mn) → Σ^(n)`.
pub fn h1_action(m: u64, n: u64) -> Result<i64> {
    Ok(StageMap::bond(m, n)?.degree())
}

/// The first `count` primes.
pub fn first_primes(count: usize) -> Vec<u64> {
    let mut primes: Vec<u64> = Vec::with_capacity(count);
    let mut c = 2u64;
    while primes.len() < count {
        if primes.iter().take_while(|&&p| p * p <= c).all(|&p| c % p != 0) {
            primes.push(c);
        }
        c += 1;
    }
    primes
}

/// `count` pairwise inequivalent descriptors: the `i`-th has as its cycle
/// the primes selected by the binary digits of `i`.
pub fn distinct_descriptors(count: usize) -> Vec<SequenceDescriptor> {
    let bits = (usize::BITS - count.leading_zeros()) as usize;
    let primes = first_primes(bits.max(1));
    (1..=count)
        .map(|i| {
            let cycle = primes
                .iter()
                .enumerate()
                .filter(|(b, _)| (i >> b) & 1 == 1)
                .map(|(_, &p)| p)
                .collect();
            SequenceDescriptor::new(Vec::new(), cycle).expect("primes are at least 2")
        })
        .collect()
}
