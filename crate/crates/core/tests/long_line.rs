mod common;

use common::{arb_block_ordinal, arb_fraction, arb_long_point, arb_ordinal};
use proptest::prelude::*;
use solenoid_core::long_line::{
    distinct_orbit_proof, is_ng, partition_class, same_orbit_recipe, DistinctReason, LongPoint,
    OrbitClassLabel, OrbitProof, OrbitRecipe,
};
use solenoid_core::ordinal::omega_pow;
use solenoid_core::parse::{parse_long_point, parse_ordinal};
use solenoid_core::stage::token::{IntervalAutToken, TokenDomain};
use solenoid_core::stage::InnerPoint;
use solenoid_core::{Error, Ordinal};

fn lp(s: &str) -> LongPoint {
    parse_long_point(s).unwrap()
}

fn o(s: &str) -> Ordinal {
    parse_ordinal(s).unwrap()
}

/// The greatest multiple of `ω₁` at or below `ω₁·γ + ρ + t`, read off the
/// printed form: everything before the first `" + "` that follows `w1*(…)`.
fn block_by_truncation(text: &str) -> Ordinal {
    match text.strip_prefix("w1*(") {
        Some(rest) => {
            let mut depth = 1;
            let end = rest
                .char_indices()
                .find(|&(_, c)| {
                    match c {
                        '(' => depth += 1,
                        ')' => depth -= 1,
                        _ => {}
                    }
                    depth == 0
                })
                .map(|(i, _)| i)
                .unwrap();
            o(&rest[..end])
        }
        None => Ordinal::zero(),
    }
}

#[test]
fn ng_examples() {
    assert!(is_ng(&lp("w1*(w + 2)")).unwrap());
    assert!(!is_ng(&lp("w1*(3) + w^2")).unwrap());
    assert!(is_ng(&lp("w1*(1)")).unwrap());
    assert!(!is_ng(&lp("0")).unwrap());
    assert_eq!(is_ng(&LongPoint::EndMax), Err(Error::EndpointNotInDomain));
}

#[test]
fn partition_examples() {
    assert_eq!(partition_class(&lp("w1*(2)")).unwrap(), OrbitClassLabel::Ng(o("2")));
    let x = "w1*(2) + w*5 + 1/2";
    assert_eq!(partition_class(&lp(x)).unwrap(), OrbitClassLabel::Interval(o("2")));
    assert_eq!(block_by_truncation(x), o("2"));
    assert_eq!(partition_class(&lp("w^3 + 4")).unwrap(), OrbitClassLabel::Interval(o("0")));
    assert_eq!(partition_class(&lp("0")), Err(Error::JointHasNoClass));
    assert_eq!(partition_class(&LongPoint::EndMax), Err(Error::EndpointNotInDomain));
}

#[test]
fn distinctness_examples() {
    let proof = distinct_orbit_proof(&lp("w1*(1)"), &lp("w1*(w)"));
    assert_eq!(
        proof,
        OrbitProof::ProvenDistinct(DistinctReason::OmegaPowerBlocks { left: o("0"), right: o("1") })
    );
    assert_eq!(distinct_orbit_proof(&lp("w1*(2)"), &lp("w1*(2)")), OrbitProof::NotProven);
    assert_eq!(distinct_orbit_proof(&lp("w1*(3)"), &lp("w1*(5)")), OrbitProof::NotProven);
    assert_eq!(
        distinct_orbit_proof(&lp("w1*(3)"), &lp("w1*(3) + 1/2")),
        OrbitProof::ProvenDistinct(DistinctReason::NgVersusInterval)
    );
}

#[test]
fn omega_power_blocks_are_pairwise_distinct() {
    for a in 0..=6u64 {
        for b in 0..=6u64 {
            let x = LongPoint::omega1_times(omega_pow(&Ordinal::from(a)).unwrap()).unwrap();
            let y = LongPoint::omega1_times(omega_pow(&Ordinal::from(b)).unwrap()).unwrap();
            let proven = matches!(distinct_orbit_proof(&x, &y), OrbitProof::ProvenDistinct(_));
            assert_eq!(proven, a != b, "w1*w^{a} vs w1*w^{b}");
        }
    }
}

#[test]
fn recipe_examples() {
    let x = lp("w1*(2) + w");
    let y = lp("w1*(2) + 5");
    assert_eq!(
        same_orbit_recipe(&x, &y),
        OrbitRecipe::Same(IntervalAutToken::Mapping {
            domain: TokenDomain::LongInterval { block: o("2") },
            source: InnerPoint::Long(x.clone()),
            target: InnerPoint::Long(y.clone()),
        })
    );
    assert_eq!(
        same_orbit_recipe(&lp("w1*(4)"), &lp("w1*(4)")),
        OrbitRecipe::Same(IntervalAutToken::Identity)
    );
    assert_eq!(same_orbit_recipe(&lp("w1*(3)"), &lp("w1*(5)")), OrbitRecipe::Unknown);
}

#[test]
fn token_fixes_interval_ends() {
    let x = lp("w1*(2) + w");
    let y = lp("w1*(2) + 5");
    let OrbitRecipe::Same(t) = same_orbit_recipe(&x, &y) else {
        panic!("same interval")
    };
    for end in ["w1*(2)", "w1*(3)"] {
        let e = InnerPoint::Long(lp(end));
        assert_eq!(t.eval(&e).unwrap(), e);
    }
    assert_eq!(t.eval(&InnerPoint::Long(x)).unwrap(), InnerPoint::Long(y));
}

proptest! {
    #[test]
    fn class_depends_only_on_block(g in arb_block_ordinal(4, 4), r in arb_ordinal(2), t in arb_fraction()) {
        prop_assume!(!(r.is_zero() && t.numer() == &0));
        let x = LongPoint::new(g.clone(), r, t).unwrap();
        prop_assume!(!x.is_joint());
        prop_assert_eq!(partition_class(&x).unwrap(), OrbitClassLabel::Interval(g.clone()));
        prop_assert_eq!(block_by_truncation(&x.to_string()), g);
    }

    #[test]
    fn ng_and_interval_are_exclusive(x in arb_long_point()) {
        prop_assume!(!x.is_joint());
        let ng = is_ng(&x).unwrap();
        let interval = matches!(partition_class(&x).unwrap(), OrbitClassLabel::Interval(_));
        prop_assert!(ng != interval);
    }

    #[test]
    fn distinctness_is_symmetric_and_irreflexive(x in arb_long_point(), y in arb_long_point()) {
        let xy = matches!(distinct_orbit_proof(&x, &y), OrbitProof::ProvenDistinct(_));
        let yx = matches!(distinct_orbit_proof(&y, &x), OrbitProof::ProvenDistinct(_));
        prop_assert_eq!(xy, yx);
        prop_assert_eq!(distinct_orbit_proof(&x, &x), OrbitProof::NotProven);
    }

    #[test]
    fn recipes_and_proofs_respect_labels(x in arb_long_point(), y in arb_long_point()) {
        prop_assume!(!x.is_joint() && !y.is_joint());
        let (lx, ly) = (partition_class(&x).unwrap(), partition_class(&y).unwrap());
        if let OrbitRecipe::Same(t) = same_orbit_recipe(&x, &y) {
            prop_assert_eq!(&lx, &ly);
            prop_assert_eq!(t.eval(&InnerPoint::Long(x.clone())).unwrap(), InnerPoint::Long(y.clone()));
        }
        if let OrbitProof::ProvenDistinct(_) = distinct_orbit_proof(&x, &y) {
            prop_assert_ne!(lx, ly);
        }
    }

    #[test]
    fn long_points_round_trip(x in arb_long_point()) {
        prop_assert_eq!(parse_long_point(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn order_follows_components(x in arb_long_point(), y in arb_long_point()) {
        let key = |p: &LongPoint| match p {
            LongPoint::At { blocks, remainder, fraction } => (0, blocks.clone(), remainder.clone(), *fraction),
            LongPoint::EndMax => (1, Ordinal::zero(), Ordinal::zero(), Default::default()),
        };
        prop_assert_eq!(x.cmp(&y), key(&x).cmp(&key(&y)));
    }
}
