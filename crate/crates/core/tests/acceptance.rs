//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. A criterion passes when every check holds and it finishes
//! within its time limit.

mod common;

use std::collections::HashSet;
use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{
    count_preimage_components, covering_pair, degree_sequences, on_arc, random_thread,
    random_tower_point, shapes, small_ordinals, HAND_PAIRS,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use solenoid_core::cohomology::{
    distinct_descriptors, dl_add, dl_canonical, dl_from_rational, dl_neg, dl_value, h1_action,
    h1_of_solenoid, mccord_equivalent, member, DirectLimitElement, SequenceDescriptor,
};
use solenoid_core::long_line::{distinct_orbit_proof, partition_class, LongPoint, OrbitProof};
use solenoid_core::ordinal::{add, mul, omega_pow};
use solenoid_core::parse::{parse_descriptor, parse_ordinal};
use solenoid_core::stage::arcs::{indecomposability_witness, CyclicArc};
use solenoid_core::stage::recipe::{
    apply_recipe, synthesize_recipe, verify_commutes, HomeoRecipe, RecipeStatus,
};
use solenoid_core::stage::thread::{extend_thread, stage_sizes, Thread};
use solenoid_core::stage::token::IntervalAutToken;
use solenoid_core::stage::{apply_bond, fiber, Mode, StagePoint};
use solenoid_core::tower::{point_type, same_orbit, TowerPoint};
use solenoid_core::{Ordinal, Rational};

const SEED: u64 = 0x5eed_2024;

type Outcome = Result<String, String>;

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what())
    }
}

fn covering_structure() -> Outcome {
    let mut checked = 0;
    for m in 1..=12u64 {
        for n in 1..=12u64 {
            let upstairs: Vec<StagePoint> =
                (0..(m * n) as i64).map(|i| StagePoint::joint(m * n, i).unwrap()).collect();
            for j in 0..n as i64 {
                let q = StagePoint::joint(n, j).unwrap();
                let f = fiber(m, n, &q).map_err(|e| e.to_string())?;
                ensure(f.len() as u64 == m, || format!("|fiber({m},{n},{q})| = {}", f.len()))?;
                let images: HashSet<StagePoint> = f
                    .iter()
                    .map(|p| apply_bond(m, n, p).unwrap())
                    .collect();
                ensure(images == HashSet::from([q.clone()]), || format!("bond of fiber({m},{n},{q})"))?;
                let scanned: Vec<&StagePoint> =
                    upstairs.iter().filter(|p| apply_bond(m, n, p).unwrap() == q).collect();
                ensure(scanned == f.iter().collect::<Vec<_>>(), || format!("scan of fiber({m},{n},{q})"))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} fibres"))
}

fn ordinal_identities() -> Outcome {
    let o = |s: &str| parse_ordinal(s).unwrap();
    ensure(mul(&o("2"), &o("w")) == o("w"), || "2·ω ≠ ω".into())?;
    ensure(mul(&o("w"), &o("2")) == add(&o("w"), &o("w")), || "ω·2 ≠ ω+ω".into())?;
    ensure(omega_pow(&Ordinal::zero()).unwrap() == Ordinal::one(), || "ω^0 ≠ 1".into())?;
    let singles = small_ordinals(3, 4, 1);
    let family = small_ordinals(3, 4, 2);
    let mut checked = 0;
    let mut check = |a: &Ordinal, b: &Ordinal, c: &Ordinal| -> Result<(), String> {
        ensure(add(&add(a, b), c) == add(a, &add(b, c)), || format!("({a}+{b})+{c}"))?;
        ensure(mul(&mul(a, b), c) == mul(a, &mul(b, c)), || format!("({a}·{b})·{c}"))?;
        ensure(mul(a, &add(b, c)) == add(&mul(a, b), &mul(a, c)), || format!("{a}·({b}+{c})"))?;
        checked += 1;
        Ok(())
    };
    for a in &singles {
        for b in &singles {
            for c in &singles {
                check(a, b, c)?;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for _ in 0..4000 {
        let pick = |rng: &mut ChaCha8Rng| family[rng.gen_range(0..family.len())].clone();
        let (a, b, c) = (pick(&mut rng), pick(&mut rng), pick(&mut rng));
        check(&a, &b, &c)?;
    }
    Ok(format!("{checked} triples"))
}

/// Rotation sequences with `l_{n+1} ≡ l_n (mod k(n))`, all of them.
fn consistent_rotations(sizes: &[u64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![0i64]];
    for w in sizes.windows(2) {
        let (k, k_up) = (w[0] as i64, w[1] as i64);
        out = out
            .into_iter()
            .flat_map(|seq| {
                let last = *seq.last().unwrap();
                (0..k_up / k).map(move |c| {
                    let mut s = seq.clone();
                    s.push(last + c * k);
                    s
                })
            })
            .collect();
    }
    out
}

fn commutation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut recipes, mut points) = (0, 0);
    for p in degree_sequences(48) {
        let sizes = stage_sizes(&p, p.len() + 1).unwrap();
        let all = consistent_rotations(&sizes);
        for rots in &all {
            let r = HomeoRecipe::new(sizes.clone(), rots, 0, IntervalAutToken::Identity).unwrap();
            let report = verify_commutes(&r, sizes.len(), None, 0);
            ensure(report.holds(), || format!("{r}: {:?}", report.counterexample))?;
            recipes += 1;
            points += report.checked;
        }
        for _ in 0..3 {
            let rots = &all[rng.gen_range(0..all.len())];
            for (mode, k) in [
                (Mode::Tower(2), rng.gen_range(-6..=6)),
                (Mode::Tower(3), rng.gen_range(-6..=6)),
                (Mode::LongLine, 0),
            ] {
                let r = HomeoRecipe::new(sizes.clone(), rots, k, IntervalAutToken::Identity).unwrap();
                let report = verify_commutes(&r, sizes.len(), Some(mode), 2);
                ensure(report.holds(), || format!("{r} in {mode}: {:?}", report.counterexample))?;
                recipes += 1;
                points += report.checked;
            }
        }
        if sizes.len() >= 2 && sizes[sizes.len() - 2] > 1 {
            let mut broken = all[0].clone();
            *broken.last_mut().unwrap() += 1;
            let r = HomeoRecipe::new(sizes.clone(), &broken, 0, IntervalAutToken::Identity).unwrap();
            let report = verify_commutes(&r, sizes.len(), None, 0);
            ensure(!report.holds(), || format!("inconsistent {r} passed"))?;
        }
    }
    Ok(format!("{recipes} recipes, {points} points"))
}

fn orbit_counts() -> Outcome {
    for kappa in 1..=5u32 {
        let mut classes: Vec<Vec<TowerPoint>> = Vec::new();
        for p in shapes(kappa) {
            match classes.iter_mut().find(|c| same_orbit(&c[0], &p).unwrap()) {
                Some(c) => c.push(p),
                None => classes.push(vec![p]),
            }
        }
        ensure(classes.len() as u32 == kappa + 1, || {
            format!("κ={kappa}: {} classes", classes.len())
        })?;
        let top: Vec<_> = classes.iter().filter(|c| c.iter().any(TowerPoint::is_joint)).collect();
        ensure(top.len() == 1 && top[0].len() == 1, || format!("κ={kappa}: joint not alone"))?;
        ensure(point_type(&top[0][0]) == kappa + 1, || format!("κ={kappa}: joint not on top"))?;
    }
    Ok("κ = 1..5".into())
}

fn recipe_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let threads = |rng: &mut ChaCha8Rng, same: bool| {
        let kappa = rng.gen_range(1..=4u32);
        let p: Vec<u64> = (0..rng.gen_range(0..=4)).map(|_| rng.gen_range(2..=4)).collect();
        let ty = rng.gen_range(1..=kappa + 1);
        let other = if same {
            ty
        } else {
            let o = rng.gen_range(1..=kappa);
            if o >= ty { o + 1 } else { o }
        };
        let a = random_tower_point(rng, kappa, ty);
        let b = random_tower_point(rng, kappa, other);
        (random_thread(rng, &p, &a), random_thread(rng, &p, &b))
    };
    for _ in 0..200 {
        let (x, y) = threads(&mut rng, true);
        let RecipeStatus::Recipe(r) = synthesize_recipe(&x, &y).map_err(|e| e.to_string())? else {
            return Err(format!("no recipe for {x} → {y}"));
        };
        let report = verify_commutes(&r, r.depth(), x.mode(), 3);
        ensure(report.holds(), || format!("{r}: {:?}", report.counterexample))?;
        ensure(apply_recipe(&r, &x).ok().as_ref() == Some(&y), || format!("{r} misses {y}"))?;
    }
    for _ in 0..200 {
        let (x, y) = threads(&mut rng, false);
        let status = synthesize_recipe(&x, &y).map_err(|e| e.to_string())?;
        ensure(matches!(status, RecipeStatus::ProvenDistinct(_)), || {
            format!("{x} vs {y}: {status:?}")
        })?;
    }
    Ok("200 + 200 pairs".into())
}

fn cantor_fiber() -> Outcome {
    let base = Thread::new(vec![], vec![StagePoint::joint(1, 0).unwrap()]).unwrap();
    let sequences = degree_sequences(64);
    for p in &sequences {
        let out = extend_thread(&base, p).map_err(|e| e.to_string())?;
        let expected: u64 = p.iter().product();
        ensure(out.len() as u64 == expected, || format!("{p:?}: {} threads", out.len()))?;
        let distinct: HashSet<&Thread> = out.iter().collect();
        ensure(distinct.len() == out.len(), || format!("{p:?}: repeated thread"))?;
        let tops: HashSet<&StagePoint> = out.iter().map(Thread::last).collect();
        ensure(tops.len() == out.len(), || format!("{p:?}: repeated top point"))?;
    }
    Ok(format!("{} prefixes", sequences.len()))
}

fn indecomposability() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut cases = 0;
    for degree in [2u64, 3, 5] {
        for stage in [1u64, 2, 3, 4, 5, 6, 8, 12] {
            for _ in 0..25 {
                let (c0, c1, g0, g1) = covering_pair(&mut rng, stage);
                let c = CyclicArc::new(stage, c0, c1).unwrap();
                let g = CyclicArc::new(stage, g0, g1).unwrap();
                let w = indecomposability_witness(degree, stage, &c, &g).map_err(|e| e.to_string())?;
                for (arc, comps, lo, hi) in [(&c, &w.c_components, c0, c1), (&g, &w.g_components, g0, g1)] {
                    ensure(comps.len() as u64 == degree, || format!("{arc}: {} components", comps.len()))?;
                    ensure(count_preimage_components(degree, stage, lo, hi) == comps.len(), || {
                        format!("{arc}: bookkeeping disagrees")
                    })?;
                }
                ensure(w.holds(), || format!("{c} ∪ {g}: some pair of lifts covers"))?;
                let top = stage * degree;
                for miss in &w.misses {
                    let ci = &w.c_components[miss.c_component];
                    let gj = &w.g_components[miss.g_component];
                    ensure(
                        !on_arc(top, ci.start(), ci.end(), miss.point)
                            && !on_arc(top, gj.start(), gj.end(), miss.point),
                        || format!("{} is covered", miss.point),
                    )?;
                }
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} arc pairs"))
}

fn long_line_invariants() -> Outcome {
    for a in 0..=6u64 {
        for b in 0..=6u64 {
            let x = LongPoint::omega1_times(omega_pow(&Ordinal::from(a)).unwrap()).unwrap();
            let y = LongPoint::omega1_times(omega_pow(&Ordinal::from(b)).unwrap()).unwrap();
            let proven = matches!(distinct_orbit_proof(&x, &y), OrbitProof::ProvenDistinct(_));
            ensure(proven == (a != b), || format!("ω₁·ω^{a} vs ω₁·ω^{b}"))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let blocks = small_ordinals(3, 3, 2);
    for gamma in &blocks {
        let reference = partition_class(&LongPoint::new(gamma.clone(), Ordinal::zero(), Rational::new(1, 2)).unwrap())
            .map_err(|e| e.to_string())?;
        for _ in 0..20 {
            let rho = Ordinal::from_terms(
                (0..rng.gen_range(0..3u32))
                    .map(|_| (Ordinal::from(rng.gen_range(0..5u64)), rng.gen_range(1..5u32)))
                    .collect::<Vec<_>>(),
            );
            let den = rng.gen_range(1..10i64);
            let t = Rational::new(rng.gen_range(0..den), den);
            if rho.is_zero() && t == Rational::from_integer(0) {
                continue;
            }
            let x = LongPoint::new(gamma.clone(), rho, t).unwrap();
            let class = partition_class(&x).map_err(|e| e.to_string())?;
            ensure(class == reference, || format!("{x} left its interval"))?;
        }
    }
    Ok(format!("{} intervals", blocks.len()))
}

fn cohomology_suite() -> Outcome {
    for m in 1..=12u64 {
        for n in 1..=12u64 {
            let a = h1_action(m, n).map_err(|e| e.to_string())?;
            ensure(a == m as i64, || format!("h1_action({m},{n}) = {a}"))?;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let random_descriptor = |rng: &mut ChaCha8Rng| {
        let prefix = (0..rng.gen_range(0..4)).map(|_| rng.gen_range(2..30)).collect();
        let cycle = (0..rng.gen_range(1..4)).map(|_| rng.gen_range(2..30)).collect();
        SequenceDescriptor::new(prefix, cycle).unwrap()
    };
    for _ in 0..300 {
        let s = random_descriptor(&mut rng);
        let el = |rng: &mut ChaCha8Rng| DirectLimitElement::new(rng.gen_range(0..=6), rng.gen_range(-999i64..1000));
        let (u, v, w) = (el(&mut rng), el(&mut rng), el(&mut rng));
        let sum = |a: &DirectLimitElement, b: &DirectLimitElement| dl_add(&s, a, b);
        ensure(sum(&sum(&u, &v), &w) == sum(&u, &sum(&v, &w)), || format!("associativity over {s}"))?;
        ensure(sum(&u, &v) == sum(&v, &u), || format!("commutativity over {s}"))?;
        ensure(sum(&u, &DirectLimitElement::zero()) == dl_canonical(&s, &u), || format!("identity over {s}"))?;
        ensure(sum(&u, &dl_neg(&s, &u)) == DirectLimitElement::zero(), || format!("inverse over {s}"))?;
        ensure(dl_value(&s, &sum(&u, &v)) == dl_value(&s, &u) + dl_value(&s, &v), || format!("values over {s}"))?;
        ensure(member(&s, &dl_value(&s, &u)), || format!("{u} outside {s}"))?;
        for n in 0..=8 {
            let m = BigInt::from(rng.gen_range(-999i64..1000));
            let r = BigRational::new(m, BigInt::from(s.product(n)));
            let back = dl_from_rational(&s, &r).map(|e| dl_value(&s, &e));
            ensure(back.as_ref() == Some(&r), || format!("{r} over {s}"))?;
        }
    }
    let family: Vec<SequenceDescriptor> = (0..40).map(|_| random_descriptor(&mut rng)).collect();
    for a in &family {
        ensure(mccord_equivalent(a, a), || format!("{a} not reflexive"))?;
        for b in &family {
            ensure(mccord_equivalent(a, b) == mccord_equivalent(b, a), || format!("{a}, {b} asymmetric"))?;
            for c in &family {
                if mccord_equivalent(a, b) && mccord_equivalent(b, c) {
                    ensure(mccord_equivalent(a, c), || format!("{a}, {b}, {c} intransitive"))?;
                }
            }
        }
    }
    for &(a, b, expected) in HAND_PAIRS {
        let (da, db) = (parse_descriptor(a).unwrap(), parse_descriptor(b).unwrap());
        ensure(mccord_equivalent(&da, &db) == expected, || format!("{a} vs {b}"))?;
    }
    Ok(format!("{} hand-built pairs", HAND_PAIRS.len()))
}

fn distinct_types() -> Outcome {
    let family = distinct_descriptors(1000);
    ensure(family.len() == 1000, || format!("{} descriptors", family.len()))?;
    let invariants: Vec<_> = family.iter().map(h1_of_solenoid).collect();
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            ensure(invariants[i] != invariants[j], || format!("{} ≅ {}", family[i], family[j]))?;
            ensure(!mccord_equivalent(&family[i], &family[j]), || format!("{} ~ {}", family[i], family[j]))?;
        }
    }
    Ok("1000 descriptors".into())
}

struct Criterion {
    number: u32,
    name: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

const CRITERIA: &[Criterion] = &[
    Criterion { number: 1, name: "covering structure", limit: Duration::from_secs(10), run: covering_structure },
    Criterion { number: 2, name: "ordinal identities", limit: Duration::from_secs(10), run: ordinal_identities },
    Criterion { number: 3, name: "commutation", limit: Duration::from_secs(30), run: commutation },
    Criterion { number: 4, name: "orbit counts", limit: Duration::from_secs(10), run: orbit_counts },
    Criterion { number: 5, name: "recipe soundness", limit: Duration::from_secs(60), run: recipe_soundness },
    Criterion { number: 6, name: "cantor fiber", limit: Duration::from_secs(10), run: cantor_fiber },
    Criterion { number: 7, name: "indecomposability witness", limit: Duration::from_secs(10), run: indecomposability },
    Criterion { number: 8, name: "long-line invariants", limit: Duration::from_secs(5), run: long_line_invariants },
    Criterion { number: 9, name: "cohomology", limit: Duration::from_secs(30), run: cohomology_suite },
    Criterion { number: 10, name: "distinct homeomorphism types", limit: Duration::from_secs(10), run: distinct_types },
];

fn main() -> ExitCode {
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for c in CRITERIA {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(c.run))
            .unwrap_or_else(|e| {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                Err(format!("panicked: {msg}"))
            });
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|detail| {
            if elapsed <= c.limit {
                Ok(detail)
            } else {
                Err(format!("{detail}, over the time limit"))
            }
        });
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!(
            "{tag} {:>2} {} ({:.2}s / {}s): {detail}",
            c.number,
            c.name,
            elapsed.as_secs_f64(),
            c.limit.as_secs()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
