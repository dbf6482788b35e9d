#![allow(dead_code)]

use proptest::prelude::*;
use rand::Rng;
use solenoid_core::cohomology::SequenceDescriptor;
use solenoid_core::long_line::LongPoint;
use solenoid_core::stage::thread::Thread;
use solenoid_core::stage::{InnerPoint, StagePoint};
use solenoid_core::tower::{BasePoint, TowerPoint};
use solenoid_core::{Ordinal, Rational};

/// Ordinals with `ω`-towers at most `depth` deep and small coefficients.
pub fn arb_ordinal(depth: u32) -> BoxedStrategy<Ordinal> {
    let leaf = (0u64..6).prop_map(Ordinal::from).boxed();
    leaf.prop_recursive(depth, 24, 3, |inner| {
        prop::collection::vec((inner, 1u32..5), 1..4)
            .prop_map(Ordinal::from_terms)
            .boxed()
    })
    .boxed()
}

/// Ordinals below `ω^ω` with exponents and coefficients bounded.
pub fn arb_block_ordinal(max_exp: u64, max_coef: u32) -> BoxedStrategy<Ordinal> {
    prop::collection::vec((0..=max_exp, 1..=max_coef), 0..4)
        .prop_map(|ts| Ordinal::from_terms(ts.into_iter().map(|(e, c)| (Ordinal::from(e), c))))
        .boxed()
}

pub fn arb_fraction() -> BoxedStrategy<Rational> {
    (1i64..12)
        .prop_flat_map(|d| (0..d, Just(d)))
        .prop_map(|(n, d)| Rational::new(n, d))
        .boxed()
}

pub fn arb_long_point() -> BoxedStrategy<LongPoint> {
    prop_oneof![
        1 => Just(LongPoint::EndMax),
        12 => (arb_block_ordinal(4, 4), arb_ordinal(2), arb_fraction())
            .prop_map(|(g, r, t)| LongPoint::new(g, r, t).expect("valid components")),
    ]
    .boxed()
}

pub fn arb_base_point() -> BoxedStrategy<BasePoint> {
    (arb_ordinal(2), arb_fraction())
        .prop_filter("(0, 0) is an integer point", |(r, t)| !(r.is_zero() && *t == Rational::from_integer(0)))
        .prop_map(|(r, t)| BasePoint::new(r, t).expect("nonzero base point"))
        .boxed()
}

/// Any point of `Σ(Λ_κ)`, joints included.
pub fn arb_tower_point(kappa: u32) -> BoxedStrategy<TowerPoint> {
    let depth = kappa as usize - 1;
    let ints = move |len: usize| prop::collection::vec(-9i64..10, len);
    let joint = Just(TowerPoint::joint(kappa).unwrap()).boxed();
    let base = (ints(depth), arb_base_point())
        .prop_map(move |(z, b)| TowerPoint::base(kappa, z, b).unwrap())
        .boxed();
    if depth == 0 {
        return prop_oneof![1 => joint, 6 => base].boxed();
    }
    let int_stop = (1..=depth)
        .prop_flat_map(move |j| ints(j))
        .prop_map(move |z| TowerPoint::int_stop(kappa, z).unwrap())
        .boxed();
    prop_oneof![1 => joint, 4 => int_stop, 4 => base].boxed()
}

pub fn arb_descriptor() -> BoxedStrategy<SequenceDescriptor> {
    (
        prop::collection::vec(2u64..40, 0..4),
        prop::collection::vec(2u64..40, 1..4),
    )
        .prop_map(|(p, c)| SequenceDescriptor::new(p, c).unwrap())
        .boxed()
}

/// Every ordinal `Σ_{e ≤ max_exp} ω^e·c_e` with `c_e ≤ max_coef` and at most
/// `max_terms` nonzero coefficients.
pub fn small_ordinals(max_exp: u64, max_coef: u32, max_terms: usize) -> Vec<Ordinal> {
    let mut out = Vec::new();
    let slots = max_exp as usize + 1;
    let mut coefs = vec![0u32; slots];
    loop {
        if coefs.iter().filter(|&&c| c > 0).count() <= max_terms {
            out.push(Ordinal::from_terms(
                coefs
                    .iter()
                    .enumerate()
                    .rev()
                    .map(|(e, &c)| (Ordinal::from(e as u64), c)),
            ));
        }
        let mut i = 0;
        loop {
            if i == slots {
                return out;
            }
            if coefs[i] < max_coef {
                coefs[i] += 1;
                break;
            }
            coefs[i] = 0;
            i += 1;
        }
    }
}

/// A random point of `Σ(Λ_κ)` of the given type (`κ+1` is the joint).
pub fn random_tower_point<R: Rng>(rng: &mut R, kappa: u32, ty: u32) -> TowerPoint {
    assert!((1..=kappa + 1).contains(&ty));
    let mut ints = |len: usize| (0..len).map(|_| rng.gen_range(-9..=9)).collect::<Vec<i64>>();
    if ty == kappa + 1 {
        return TowerPoint::joint(kappa).unwrap();
    }
    if ty == 1 {
        let z = ints(kappa as usize - 1);
        let rho = Ordinal::from_terms(
            (0..rng.gen_range(0..3u32))
                .map(|_| (Ordinal::from(rng.gen_range(0..4u64)), rng.gen_range(1..4u32)))
                .collect::<Vec<_>>(),
        );
        let d = rng.gen_range(1..8i64);
        let mut t = Rational::new(rng.gen_range(0..d), d);
        if rho.is_zero() && t == Rational::from_integer(0) {
            t = Rational::new(1, 2);
        }
        return TowerPoint::base(kappa, z, BasePoint::new(rho, t).unwrap()).unwrap();
    }
    TowerPoint::int_stop(kappa, ints((kappa + 1 - ty) as usize)).unwrap()
}

/// A random thread over `p` whose first coordinate is `first`.
pub fn random_thread<R: Rng>(rng: &mut R, p: &[u64], first: &TowerPoint) -> Thread {
    let base = if first.is_joint() {
        StagePoint::joint(1, 0).unwrap()
    } else {
        StagePoint::inner(1, 0, InnerPoint::Tower(first.clone())).unwrap()
    };
    let choices: Vec<u64> = p.iter().map(|&d| rng.gen_range(0..d)).collect();
    Thread::from_choices(p.to_vec(), base, &choices).unwrap()
}

/// Every sequence of integers `≥ 2` with product at most `limit`.
pub fn degree_sequences(limit: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    let mut frontier = vec![(vec![], 1u64)];
    while let Some((seq, prod)) = frontier.pop() {
        for d in 2..=limit / prod {
            let mut next: Vec<u64> = seq.clone();
            next.push(d);
            out.push(next.clone());
            frontier.push((next, prod * d));
        }
    }
    out.sort();
    out
}

/// One point of every address shape of `Σ(Λ_κ)`, several integer choices.
pub fn shapes(kappa: u32) -> Vec<TowerPoint> {
    let mut out = vec![TowerPoint::joint(kappa).unwrap()];
    let depth = kappa as usize - 1;
    for seed in [-3i64, 0, 4] {
        for j in 1..=depth {
            let ints: Vec<i64> = (0..j as i64).map(|i| seed + i).collect();
            out.push(TowerPoint::int_stop(kappa, ints).unwrap());
        }
        let ints: Vec<i64> = (0..depth as i64).map(|i| seed - i).collect();
        for (rho, t) in [
            (Ordinal::from(3u64), Rational::new(0, 1)),
            (Ordinal::omega(), Rational::new(1, 2)),
            (Ordinal::zero(), Rational::new(1, 3)),
        ] {
            let b = BasePoint::new(rho, t).unwrap();
            out.push(TowerPoint::base(kappa, ints.clone(), b).unwrap());
        }
    }
    out
}

pub fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

pub fn modulo(x: Rational, n: u64) -> Rational {
    let n = Rational::from_integer(n as i64);
    x - (x / n).floor() * n
}

/// Membership in the closed arc of `Σ^(n)` from `a` to `b`, read off the
/// unrolled interval `[a, b]` or `[a, b + n]`.
pub fn on_arc(n: u64, a: Rational, b: Rational, x: Rational) -> bool {
    let (a, mut b, x) = (modulo(a, n), modulo(b, n), modulo(x, n));
    if b <= a {
        b += Rational::from_integer(n as i64);
    }
    (a <= x && x <= b) || (a <= x + Rational::from_integer(n as i64) && x + Rational::from_integer(n as i64) <= b)
}

/// Components of `{y ∈ Σ^(mn) : y mod n ∈ [a, b]}` counted as maximal runs
/// of covered sample positions around the circle.
pub fn count_preimage_components(m: u64, n: u64, a: Rational, b: Rational) -> usize {
    let total = m * n;
    let mut marks: Vec<Rational> = Vec::new();
    for k in 0..m {
        let off = Rational::from_integer((k * n) as i64);
        marks.push(modulo(a + off, total));
        marks.push(modulo(b + off, total));
    }
    marks.push(Rational::from_integer(0));
    marks.sort();
    marks.dedup();
    let mut samples = Vec::new();
    for (i, &x) in marks.iter().enumerate() {
        let next = marks
            .get(i + 1)
            .copied()
            .unwrap_or(Rational::from_integer(total as i64));
        samples.push(x);
        samples.push((x + next) / 2);
    }
    let covered: Vec<bool> = samples.iter().map(|&y| on_arc(n, a, b, y)).collect();
    if covered.iter().all(|&c| c) {
        return 1;
    }
    (0..covered.len())
        .filter(|&i| covered[i] && !covered[(i + covered.len() - 1) % covered.len()])
        .count()
}

/// Random proper arcs `C`, `G` covering `Σ^(n)`: `C` runs from `a` to `b`
/// and `G` from just before `b` round to just after `a`.
pub fn covering_pair<R: Rng>(rng: &mut R, n: u64) -> (Rational, Rational, Rational, Rational) {
    let den = 12i64;
    let span = n as i64 * den;
    let a = rng.gen_range(0..span);
    let len = rng.gen_range(3..span - 1);
    let eps = rng.gen_range(1..=((len - 1) / 2).min(3));
    let (c0, c1) = (q(a, den), q(a + len, den));
    let (g0, g1) = (q(a + len - eps, den), q(a + span + eps, den));
    (c0, c1, g0, g1)
}

/// Descriptor literals and whether they are McCord equivalent.
pub const HAND_PAIRS: &[(&str, &str, bool)] = &[
    (":2", ":2", true),
    (":2", "3:2", true),
    (":2", ":3", false),
    (":2,3", ":6", true),
    (":6", ":2", false),
    (":4", ":2", true),
    (":4", ":8,2", true),
    ("5,5,5:2", ":2", true),
    (":10", ":2,5", true),
    (":10", "5:2", false),
    ("12:5", ":5", true),
    ("12:5", "7:5,25", true),
    (":15", ":3,5", true),
    (":15", ":3", false),
    (":30", ":2,3,5", true),
    (":30", ":6,10", true),
    (":30", ":6", false),
    ("2,3,5:7", ":49", true),
    (":9", "27:3", true),
    (":12", ":18", true),
];
