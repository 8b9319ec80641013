use ballq_core::ledger::{
    ample_threshold, format_ledger, log_chern_parts, parse_ledger, proportionality_check,
    pullback_intersection, selfint_via_pullback, BlowupLedger, ProportionalityStatus,
};
use ballq_core::pipeline::{run_bundled, PipelineOutput};
use ballq_core::torus::intersection_number;
use num_bigint::BigInt;
use proptest::prelude::*;
use std::sync::OnceLock;

const PIPELINES: [&str; 4] = [
    "z2_abelian.pipeline",
    "z2_bielliptic.pipeline",
    "z4_abelian.pipeline",
    "z4_bielliptic.pipeline",
];

fn outputs() -> &'static [PipelineOutput] {
    static CELL: OnceLock<Vec<PipelineOutput>> = OnceLock::new();
    CELL.get_or_init(|| PIPELINES.iter().map(|p| run_bundled(p).unwrap()).collect())
}

fn with_blown(full: &BlowupLedger, keep: &[bool]) -> BlowupLedger {
    let mut l = full.clone();
    l.blown = full
        .blown
        .iter()
        .zip(keep)
        .filter(|(_, &k)| k)
        .map(|(p, _)| p.clone())
        .collect();
    l
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn one_more_blowup_updates_parts(which in 0usize..4, mask in proptest::collection::vec(any::<bool>(), 24), pick in any::<prop::sample::Index>()) {
        let full = &outputs()[which].ledger;
        let n = full.blown.len();
        let keep = &mask[..n];
        let unblown: Vec<usize> = (0..n).filter(|&i| !keep[i]).collect();
        prop_assume!(!unblown.is_empty());
        let add = unblown[pick.index(unblown.len())];
        let before = with_blown(full, keep);
        let mut more = keep.to_vec();
        more[add] = true;
        let after = with_blown(full, &more);

        let p = &full.blown[add];
        let mu = BigInt::from(before.boundary_mult(p).unwrap());
        let sq: BigInt = before
            .boundary_curves()
            .unwrap()
            .iter()
            .map(|c| BigInt::from(c.mult_at(p)).pow(2))
            .sum();
        let a = log_chern_parts(&before).unwrap();
        let b = log_chern_parts(&after).unwrap();
        prop_assert_eq!(b.k2, a.k2 - 1);
        prop_assert_eq!(b.kd, a.kd + mu);
        prop_assert_eq!(b.d2, a.d2 - sq);
        prop_assert_eq!(b.euler, a.euler + 1);
    }
}

#[test]
fn pullback_conservation() {
    for out in outputs() {
        let c = &out.config;
        let lines = c.upstairs().lines();
        let order = BigInt::from(c.group_order());
        let curves = c.image_curves();
        for (i, g) in curves.iter().enumerate() {
            for h in &curves[i..] {
                // recomputed from the line list, not from the config
                let mut total = BigInt::from(0);
                for &a in &g.preimages {
                    for &b in &h.preimages {
                        if a != b {
                            total += intersection_number(&lines[a].line, &lines[b].line).unwrap();
                        }
                    }
                }
                let down = if g.name == h.name {
                    selfint_via_pullback(c, &g.name).unwrap()
                } else {
                    pullback_intersection(c, &g.name, &h.name).unwrap()
                };
                assert_eq!(&order * down, total, "{} . {}", g.name, h.name);
            }
        }
    }
}

#[test]
fn exceptional_curves_are_geodesic_spheres() {
    for out in outputs() {
        let l = &out.ledger;
        for (p, m) in l.exceptional_records().unwrap() {
            assert_eq!(m, vec![1; 4], "{p}");
            let v = proportionality_check(&BigInt::from(-1), &BigInt::from(-1), &m);
            assert_eq!(v.status, ProportionalityStatus::EqualityTotallyGeodesic);
        }
    }
}

#[test]
fn bielliptic_thresholds_are_a_quarter() {
    use num_rational::BigRational;
    for out in [&outputs()[1], &outputs()[3]] {
        let t = ample_threshold(&out.ledger, &[]).unwrap();
        assert_eq!(t, Some(BigRational::new(1.into(), 4.into())));
    }
}

#[test]
fn synthesized_ledgers_round_trip() {
    for out in outputs() {
        let text = format_ledger(&out.ledger);
        assert_eq!(parse_ledger(&text).unwrap(), out.ledger);
    }
}
