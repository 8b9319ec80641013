//! The bundled arrangements checked against hand-written incidence tables.

use ballq_core::arith::parse_gaussian;
use ballq_core::fixtures;
use ballq_core::ledger::{log_chern, proper_transform_selfint, selfint_via_pullback};
use ballq_core::pipeline::run_bundled;
use ballq_core::torus::{
    canonical_point, intersect_lines, parse_arrangement_file, translate_arrangement,
    ArrangementFile, TorusPoint,
};
use num_bigint::BigInt;

type Pt = (&'static str, &'static str);
use std::collections::{BTreeMap, BTreeSet};

fn load(name: &str) -> ArrangementFile {
    parse_arrangement_file(fixtures::get(name).unwrap()).unwrap()
}

fn pt(f: &ArrangementFile, w: &str, z: &str) -> TorusPoint {
    canonical_point(
        &parse_gaussian(w).unwrap(),
        &parse_gaussian(z).unwrap(),
        f.surface(),
    )
}

fn meet(f: &ArrangementFile, a: &str, b: &str) -> BTreeSet<TorusPoint> {
    let lines = f.arrangement.lines();
    let la = &lines[f.arrangement.index_of(a).unwrap()].line;
    let lb = &lines[f.arrangement.index_of(b).unwrap()].line;
    intersect_lines(la, lb).unwrap().into_iter().collect()
}

fn set(f: &ArrangementFile, pts: &[(&str, &str)]) -> BTreeSet<TorusPoint> {
    pts.iter().map(|(w, z)| pt(f, w, z)).collect()
}

const H: &str = "1/2+1/2*i";

#[test]
fn eight_curve_intersections() {
    let f = load("z2_abelian.arr");
    let e13 = set(&f, &[("0", "0"), ("1/2", "1/2"), ("1/2*i", "1/2*i"), (H, H)]);
    let e24 = set(&f, &[("0", H), ("1/2", "1/2"), ("1/2*i", "1/2*i"), (H, "0")]);
    let half = set(&f, &[("1/2", "1/2"), ("1/2*i", "1/2*i")]);
    assert_eq!(meet(&f, "E1", "E3"), e13);
    assert_eq!(meet(&f, "E2", "E4"), e24);
    for (a, b) in [("E1", "E2"), ("E1", "E4"), ("E2", "E3"), ("E3", "E4")] {
        assert_eq!(meet(&f, a, b), half, "{a} {b}");
    }
    let groups: [(&[Pt], Pt); 4] = [
        (&[("F1", "F3"), ("E1", "F1"), ("E1", "F3"), ("E3", "F1"), ("E3", "F3")], ("0", "0")),
        (&[("F1", "F4"), ("E2", "F1"), ("E2", "F4"), ("E4", "F1"), ("E4", "F4")], (H, "0")),
        (&[("F2", "F3"), ("E2", "F2"), ("E2", "F3"), ("E4", "F2"), ("E4", "F3")], ("0", H)),
        (&[("F2", "F4"), ("E1", "F2"), ("E1", "F4"), ("E3", "F2"), ("E3", "F4")], (H, H)),
    ];
    for (pairs, p) in groups {
        for (a, b) in pairs {
            assert_eq!(meet(&f, a, b), set(&f, &[p]), "{a} {b}");
        }
    }
    assert!(meet(&f, "F1", "F2").is_empty());
    assert!(meet(&f, "F3", "F4").is_empty());

    let multiple = f.arrangement.multiple_points().unwrap();
    assert_eq!(multiple.len(), 6);
    assert!(multiple.values().all(|through| through.len() == 4));
}

/// Each row of the incidence table for the fourteen curves, `j = 0..3`.
fn table_one(f: &ArrangementFile) -> BTreeMap<TorusPoint, BTreeSet<String>> {
    let mut out = BTreeMap::new();
    for j in 0..4 {
        let rows: [((String, String), [String; 4]); 6] = [
            (("0".into(), format!("{j}")), ["E1".into(), "E3".into(), format!("F1_{j}"), "F3".into()]),
            (("1/2".into(), format!("{}/2", 2 * j + 1)), ["E1", "E2", "E3", "E4"].map(String::from)),
            (("1/2*i".into(), format!("{j}+1/2*i")), ["E1", "E2", "E3", "E4"].map(String::from)),
            ((H.into(), format!("{}/2+1/2*i", 2 * j + 1)), ["E1".into(), "E3".into(), format!("F2_{j}"), "F4".into()]),
            ((H.into(), format!("{j}")), ["E2".into(), "E4".into(), format!("F1_{j}"), "F4".into()]),
            (("0".into(), format!("{}/2+1/2*i", 2 * j + 1)), ["E2".into(), "E4".into(), format!("F2_{j}"), "F3".into()]),
        ];
        for ((w, z), names) in rows {
            let p = pt(f, &w, &z);
            let prev = out.insert(p, names.into_iter().collect());
            assert!(prev.is_none(), "table rows overlap");
        }
    }
    out
}

#[test]
fn fourteen_curves_meet_as_tabulated() {
    let f = load("z4_abelian.arr");
    let expect = table_one(&f);
    assert_eq!(expect.len(), 24);
    let names = |v: &Vec<usize>| -> BTreeSet<String> {
        v.iter().map(|&i| f.arrangement.lines()[i].name.clone()).collect()
    };
    let got: BTreeMap<TorusPoint, BTreeSet<String>> = f
        .arrangement
        .multiple_points()
        .unwrap()
        .iter()
        .map(|(p, v)| (p.clone(), names(v)))
        .collect();
    assert_eq!(got, expect);
}

#[test]
fn bielliptic_quotient_points() {
    let out = run_bundled("z2_bielliptic.pipeline").unwrap();
    let c = &out.config;
    let f = &out.file;
    assert_eq!(c.group_order(), 2);
    let names: Vec<&str> = c.image_curves().iter().map(|i| i.name.as_str()).collect();
    assert_eq!(names, ["G1", "G2", "H1", "H2"]);
    assert_eq!(c.special_points().len(), 3);

    // each special point, located through a known representative
    let at = |w: &str, z: &str| c.point_containing(&pt(f, w, z)).unwrap();
    let origin = at("0", "0");
    let corner = at(H, "0");
    let half = at("1/2", "1/2");
    let idx = |n: &str| c.curve_index(n).unwrap();
    assert_eq!(origin.branches, vec![(idx("G1"), 2), (idx("H1"), 1), (idx("H2"), 1)]);
    assert_eq!(corner.branches, vec![(idx("G2"), 2), (idx("H1"), 1), (idx("H2"), 1)]);
    assert_eq!(half.branches, vec![(idx("G1"), 2), (idx("G2"), 2)]);

    let mut singular: Vec<(String, u32)> = c
        .singular_points()
        .into_iter()
        .map(|(p, n, m)| (format!("{n}@{p}"), m))
        .collect();
    singular.sort();
    assert_eq!(singular.len(), 4);
    assert!(singular.iter().all(|(_, m)| *m == 2));

    for (n, v) in [("G1", 4), ("G2", 4), ("H1", 0), ("H2", 0)] {
        assert_eq!(selfint_via_pullback(c, n).unwrap(), BigInt::from(v), "{n}");
    }
}

#[test]
fn chern_numbers_of_the_bundled_pipelines() {
    for (name, c1, c2, cusps) in [
        ("z2_abelian.pipeline", 18, 6, 8),
        ("z2_bielliptic.pipeline", 9, 3, 4),
        ("z4_abelian.pipeline", 72, 24, 14),
        ("z4_bielliptic.pipeline", 18, 6, 4),
    ] {
        let out = run_bundled(name).unwrap();
        let r = log_chern(&out.ledger).unwrap();
        assert_eq!(r.c1sq_log, BigInt::from(c1), "{name}");
        assert_eq!(r.c2_log, BigInt::from(c2), "{name}");
        assert_eq!(r.cusp_count, cusps, "{name}");
        assert!(r.bmy_equal, "{name}");
    }
}

#[test]
fn order_four_quotient_curves() {
    let out = run_bundled("z4_bielliptic.pipeline").unwrap();
    let l = &out.ledger;
    let f = &out.file;
    let c = &out.config;
    assert_eq!(c.special_points().len(), 6);
    let g1 = l.curve("G1").unwrap();
    let mut ms: Vec<u32> = g1.mults.values().copied().collect();
    ms.sort();
    assert_eq!(ms, [2, 2, 2, 2, 4, 4]);
    // the quadruple points are the images of (1/2, 1/2) and (i/2, i/2)
    for (w, z) in [("1/2", "1/2"), ("1/2*i", "1/2*i")] {
        let p = c.point_containing(&pt(f, w, z)).unwrap();
        assert_eq!(p.branches, vec![(c.curve_index("G1").unwrap(), 4)]);
    }
    let selfints: Vec<BigInt> = ["G1", "G2", "G3", "G4"]
        .iter()
        .map(|n| l.proper_selfint(l.curve(n).unwrap()))
        .collect();
    assert_eq!(selfints, [-16, -2, -2, -4].map(BigInt::from));
    assert_eq!(g1.self_int, BigInt::from(32));
    assert_eq!(proper_transform_selfint(&BigInt::from(32), &ms), BigInt::from(-16));
}

#[test]
fn holzapfel_curves_are_a_translate() {
    let h = load("holzapfel.arr");
    let d = load("z2_abelian.arr");
    let half = parse_gaussian("1/2").unwrap();
    let moved = translate_arrangement(&h.arrangement, (&half, &half));
    assert!(moved.same_lines(&d.arrangement));
    let m: BTreeMap<String, String> = moved.line_matching(&d.arrangement).unwrap().into_iter().collect();
    assert_eq!(m["E2'"], "E3");
    assert_eq!(m["E3'"], "E2");
    assert_eq!(m["E1'"], "E1");
    assert!(!h.arrangement.same_lines(&d.arrangement));
}
