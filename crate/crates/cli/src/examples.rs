//! The bundled constructions, each checked against its published numbers.

use crate::commands::{
    abelian_facts, blowup_facts, chern_facts, inconsistent, join, math, quotient_facts, relation_facts, torsion_checks,
    Outcome,
};
use crate::load::Loader;
use crate::report::Report;
use ballq_core::affine::{
    bagnera_classify, load_affine_spec, load_substitution, verify_presentation, AffineMap, BieType,
};
use ballq_core::arith::{parse_gaussian, rat, GaussianRational};
use ballq_core::fixtures;
use ballq_core::fpgroup::{
    coset_index_of_image_subgroup, euler_cover, max_cosets_from_env, parse_group_file, parse_image_file,
    subgroup_abelianization, todd_coxeter, verify_finite_image, Presentation, Word,
};
use ballq_core::ledger::{ample_threshold, char_numbers};
use ballq_core::pipeline::run_bundled;
use ballq_core::torus::{
    canonical_point, intersect_lines, parse_arrangement_file, translate_arrangement, AbelianSurface, AffineAuto,
    ArrangementFile, TorusPoint,
};
use num_bigint::BigInt;
use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

pub const NAMES: [&str; 7] = [
    "z2-abelian",
    "z2-bielliptic",
    "z4-abelian",
    "z4-bielliptic",
    "holzapfel",
    "gz4-covers",
    "appendix",
];

pub fn run_example(name: &str, fixture_dir: &Path) -> Outcome {
    match name {
        "z2-abelian" => z2_abelian(),
        "z2-bielliptic" => z2_bielliptic(),
        "z4-abelian" => z4_abelian(),
        "z4-bielliptic" => z4_bielliptic(),
        "holzapfel" => holzapfel(),
        "gz4-covers" => gz4_covers(),
        "appendix" => appendix(fixture_dir),
        other => Err(format!("unknown example {other}; expected one of {}", NAMES.join(", "))),
    }
}

const H: &str = "1/2+1/2*i";

/// A torus point as a pair of Gaussian literals.
type Pt = (&'static str, &'static str);

fn arrangement(name: &str) -> ArrangementFile {
    parse_arrangement_file(fixtures::get(name).expect("bundled")).expect("bundled arrangement parses")
}

fn g(s: &str) -> GaussianRational {
    parse_gaussian(s).expect("literal")
}

fn pt(f: &ArrangementFile, w: &str, z: &str) -> TorusPoint {
    canonical_point(&g(w), &g(z), f.surface())
}

fn pts(f: &ArrangementFile, list: &[(&str, &str)]) -> BTreeSet<TorusPoint> {
    list.iter().map(|(w, z)| pt(f, w, z)).collect()
}

fn run(name: &str) -> Result<ballq_core::pipeline::PipelineOutput, String> {
    run_bundled(name).map_err(|e| e.to_string())
}

/// Curves through each multiple point, by name.
fn incidences(f: &ArrangementFile) -> Result<BTreeMap<TorusPoint, BTreeSet<String>>, String> {
    let lines = f.arrangement.lines();
    let mp = f.arrangement.multiple_points().map_err(|e| e.to_string())?;
    Ok(mp
        .into_iter()
        .map(|(p, v)| (p, v.iter().map(|&i| lines[i].name.clone()).collect()))
        .collect())
}

fn z2_abelian() -> Outcome {
    let f = arrangement("z2_abelian.arr");
    let mut r = Report::new();
    let inc = math!(r, incidences(&f));
    r.fact("curves", f.arrangement.len());
    r.fact("multiple_points", inc.len());
    let p = pts(&f, &[("0", "0"), ("1/2", "1/2"), ("1/2*i", "1/2*i"), (H, H), (H, "0"), ("0", H)]);
    r.check("points_match", inc.keys().cloned().collect::<BTreeSet<_>>() == p);
    r.check("four_curves_per_point", inc.values().all(|c| c.len() == 4));

    let half: &[Pt] = &[("1/2", "1/2"), ("1/2*i", "1/2*i")];
    let mut expected: Vec<(&str, &str, &[Pt])> = vec![
        ("E1", "E3", &[("0", "0"), ("1/2", "1/2"), ("1/2*i", "1/2*i"), (H, H)]),
        ("E2", "E4", &[("0", H), ("1/2", "1/2"), ("1/2*i", "1/2*i"), (H, "0")]),
        ("E1", "E2", half),
        ("E1", "E4", half),
        ("E2", "E3", half),
        ("E3", "E4", half),
        ("F1", "F2", &[]),
        ("F3", "F4", &[]),
    ];
    let corners: [(&[&str], &[&str], Pt); 4] = [
        (&["E1", "E3"], &["F1", "F3"], ("0", "0")),
        (&["E2", "E4"], &["F1", "F4"], (H, "0")),
        (&["E2", "E4"], &["F2", "F3"], ("0", H)),
        (&["E1", "E3"], &["F2", "F4"], (H, H)),
    ];
    let singles: Vec<[(&str, &str); 1]> = corners.iter().map(|c| [c.2]).collect();
    for ((es, fs, _), one) in corners.iter().zip(&singles) {
        expected.push((fs[0], fs[1], one));
        for e in *es {
            for f in *fs {
                expected.push((e, f, one));
            }
        }
    }
    let lines = f.arrangement.lines();
    let line = |n: &str| &lines[f.arrangement.index_of(n).expect("bundled curve")].line;
    for (a, b, want) in expected {
        let got: BTreeSet<TorusPoint> = math!(r, intersect_lines(line(a), line(b))).into_iter().collect();
        r.fact(format!("meet.{a}.{b}"), join(&got, "; "));
        r.check(&format!("meet.{a}.{b}"), got == pts(&f, want));
    }

    let out = math!(r, run("z2_abelian.pipeline"));
    let mut r = chern_facts(r, &out.ledger);
    r.check_fact("c1sq", 18);
    r.check_fact("c2", 6);
    r.check_fact("cusps", 8);
    r.check_fact("bmy", "equal");
    Ok(r)
}

fn map(m: [&str; 4], t: [&str; 2]) -> AffineMap {
    AffineMap::from_parts(m.map(g), t.map(g)).expect("invertible")
}

fn z2_bielliptic() -> Outcome {
    let mut r = Report::new();
    let out = math!(r, run("z2_bielliptic.pipeline"));
    let (c, f) = (&out.config, &out.file);
    math!(r, quotient_facts(&mut r, c));
    r.check_fact("image_curves", "G1,G2,H1,H2");
    r.check_fact("special_points", 3);
    r.check_fact("curve.G1.singular_branches", "2,2");
    r.check_fact("curve.G2.singular_branches", "2,2");
    r.check_fact("curve.H1.singular_branches", "none");
    r.check_fact("curve.H2.singular_branches", "none");
    let idx = |n: &str| c.curve_index(n).expect("named image curve");
    for (label, (w, z), want) in [
        ("origin", ("0", "0"), vec![(idx("G1"), 2), (idx("H1"), 1), (idx("H2"), 1)]),
        ("corner", (H, "0"), vec![(idx("G2"), 2), (idx("H1"), 1), (idx("H2"), 1)]),
        ("half", ("1/2", "1/2"), vec![(idx("G1"), 2), (idx("G2"), 2)]),
    ] {
        let ok = c.point_containing(&pt(f, w, z)).is_some_and(|p| p.branches == want);
        r.check(&format!("point_{label}"), ok);
    }

    math!(r, blowup_facts(&mut r, &out.ledger));
    r.check_fact("boundary_disjoint", true);
    let t = math!(r, ample_threshold(&out.ledger, &[]));
    r.check("ample_threshold_quarter", t == Some(rat(1, 4)));

    // psi conjugates the involution to the standard one
    let phi = map(["-1", "0", "0", "1"], [H, H]);
    let psi = map(["i", "0", "0", "1"], ["1/4+3/4*i", "3/4+1/4*i"]);
    let phi1 = map(["-1", "0", "0", "1"], ["0", H]);
    let conj = psi.compose(&phi).compose(&psi.inverse());
    let diff = conj.compose(&phi1.inverse());
    let s = AbelianSurface::gaussian_square();
    let [t1, t2] = diff.translation();
    r.fact("psi_conjugate.exact", conj == phi1);
    r.fact("psi_conjugate.offset", format!("{t1}, {t2}"));
    r.check("psi_conjugate.mod_lattice", diff.linear_is_identity() && s.contains(t1, t2));

    let mut r = chern_facts(r, &out.ledger);
    r.check_fact("c1sq", 9);
    r.check_fact("c2", 3);
    r.check_fact("cusps", 4);
    r.check_fact("bmy", "equal");
    Ok(r)
}

/// Curves through the 24 points of the fourteen-curve arrangement.
fn table_one(f: &ArrangementFile) -> BTreeMap<TorusPoint, BTreeSet<String>> {
    let mut out = BTreeMap::new();
    for j in 0..4 {
        let odd = 2 * j + 1;
        let rows: [((String, String), [String; 4]); 6] = [
            (("0".into(), format!("{j}")), ["E1".into(), "E3".into(), format!("F1_{j}"), "F3".into()]),
            (("1/2".into(), format!("{odd}/2")), ["E1", "E2", "E3", "E4"].map(String::from)),
            (("1/2*i".into(), format!("{j}+1/2*i")), ["E1", "E2", "E3", "E4"].map(String::from)),
            ((H.into(), format!("{odd}/2+1/2*i")), ["E1".into(), "E3".into(), format!("F2_{j}"), "F4".into()]),
            ((H.into(), format!("{j}")), ["E2".into(), "E4".into(), format!("F1_{j}"), "F4".into()]),
            (("0".into(), format!("{odd}/2+1/2*i")), ["E2".into(), "E4".into(), format!("F2_{j}"), "F3".into()]),
        ];
        for ((w, z), names) in rows {
            out.insert(pt(f, &w, &z), names.into_iter().collect());
        }
    }
    out
}

fn z4_abelian() -> Outcome {
    let f = arrangement("z4_abelian.arr");
    let mut r = Report::new();
    let inc = math!(r, incidences(&f));
    r.fact("curves", f.arrangement.len());
    r.fact("multiple_points", inc.len());
    let table = table_one(&f);
    for (k, (p, names)) in table.iter().enumerate() {
        let key = crate::commands::indexed("row", k, table.len());
        r.fact(&key, format!("{p} {}", join(names, ",")));
        r.check(&key, inc.get(p) == Some(names));
    }
    r.check_fact("multiple_points", 24);
    let out = math!(r, run("z4_abelian.pipeline"));
    let mut r = chern_facts(r, &out.ledger);
    r.check_fact("c1sq", 72);
    r.check_fact("c2", 24);
    r.check_fact("cusps", 14);
    r.check_fact("bmy", "equal");
    Ok(r)
}

fn z4_bielliptic() -> Outcome {
    let mut r = Report::new();
    let out = math!(r, run("z4_bielliptic.pipeline"));
    let (c, f) = (&out.config, &out.file);
    math!(r, quotient_facts(&mut r, c));
    r.check_fact("special_points", 6);
    r.check_fact("curve.G1.singular_branches", "2,2,2,2,4,4");
    let g1 = c.curve_index("G1");
    for (w, z) in [("1/2", "1/2"), ("1/2*i", "1/2*i")] {
        let ok = c
            .point_containing(&pt(f, w, z))
            .is_some_and(|p| g1.is_some_and(|i| p.branches == vec![(i, 4)]));
        r.check(&format!("quadruple_point_at.{w}"), ok);
    }
    math!(r, blowup_facts(&mut r, &out.ledger));
    for (n, v) in [("G1", -16), ("G2", -2), ("G3", -2), ("G4", -4)] {
        r.check_fact(&format!("transform.{n}"), v);
    }
    r.check_fact("boundary_disjoint", true);
    let t = math!(r, ample_threshold(&out.ledger, &[]));
    r.check("ample_threshold_quarter", t == Some(rat(1, 4)));
    let mut r = chern_facts(r, &out.ledger);
    r.check_fact("c1sq", 18);
    r.check_fact("c2", 6);
    r.check_fact("cusps", 4);
    r.check_fact("bmy", "equal");
    Ok(r)
}

fn holzapfel() -> Outcome {
    let h = arrangement("holzapfel.arr");
    let d = arrangement("z2_abelian.arr");
    let half = g("1/2");
    let moved = translate_arrangement(&h.arrangement, (&half, &half));
    let mut r = Report::new();
    let equivalent = moved.same_lines(&d.arrangement);
    r.fact("translation_equivalent", equivalent);
    r.check("translation_equivalent", equivalent);
    r.fact("identical_before_translation", h.arrangement.same_lines(&d.arrangement));
    for (from, to) in moved.line_matching(&d.arrangement).unwrap_or_default() {
        r.fact(format!("match.{from}"), to);
    }
    Ok(r)
}

fn bundled(name: &str) -> Option<String> {
    fixtures::get(name).map(String::from)
}

fn gz4_covers() -> Outcome {
    let mut r = Report::new();
    for (key, file, count) in [("g", "g_z4.aff", 11), ("hprime", "hprime.aff", 17), ("hprime_cover", "hprime_cover.aff", 17)] {
        let spec = load_affine_spec(file, &bundled).map_err(|e| e.to_string())?;
        relation_facts(&mut r, &format!("{key}."), &verify_presentation(&spec));
        r.check_fact(&format!("{key}.relators"), count);
    }
    for (key, file) in [("sub.hprime", "hprime.sub"), ("sub.hprime_cover", "hprime_cover.sub")] {
        let s = load_substitution(file, &bundled).map_err(|e| e.to_string())?;
        relation_facts(&mut r, &format!("{key}."), &s.verify());
    }

    let gf = parse_group_file(fixtures::get("g_z4.grp").expect("bundled")).map_err(|e| e.to_string())?;
    let p = &gf.presentation;
    let h = gf.subgroup.clone().unwrap_or_default();
    let mut k = h.clone();
    k[4] = p.parse_word("e^2").map_err(|e| e.to_string())?;
    let th = math!(r, todd_coxeter(p, &h, max_cosets_from_env()));
    let tk = math!(r, todd_coxeter(p, &k, max_cosets_from_env()));
    let k_in_h = k.iter().all(|w| th.trace(0, w) == 0);
    r.fact("index.h_in_g", th.n_cosets());
    r.fact("index.k_in_g", tk.n_cosets());
    r.check("cover_subgroup_inside_h", k_in_h);
    if k_in_h && tk.n_cosets() % th.n_cosets() == 0 {
        r.fact("index.k_in_h", tk.n_cosets() / th.n_cosets());
    }
    r.check_fact("index.h_in_g", 2);
    r.check_fact("index.k_in_h", 2);

    for (key, file, want) in [
        ("z2_phi", "z2_phi.aff", BieType::Z2),
        ("z4_phi", "z4_phi.aff", BieType::Z4),
        ("hprime", "hprime.aff", BieType::Z4xZ2),
        ("hprime_cover", "hprime_cover.aff", BieType::Z2xZ2),
    ] {
        let spec = load_affine_spec(file, &bundled).map_err(|e| e.to_string())?;
        let s = spec.surface().cloned().expect("bundled actions name a surface");
        let mut gens = Vec::new();
        for f in spec.maps() {
            gens.push(math!(r, AffineAuto::new(f.clone(), &s)));
        }
        let c = math!(r, bagnera_classify(&gens, &s));
        r.fact(format!("type.{key}"), c.kind.tag());
        r.check(&format!("type.{key}"), c.kind == want);
        r.check(&format!("free.{key}"), c.notes.iter().any(|n| n == "action is free"));
    }
    Ok(r)
}

const RHO_IMAGES: &str = "rho_images.fix";
const CUSP_B: &str = "cusp_b.grp";

/// Words of the `sub` section of `file`, read against `gamma`.
fn cusp_subgroup(text: &str, gamma: &Presentation) -> Result<Vec<Word>, String> {
    let b = parse_group_file(text).map_err(|e| format!("{CUSP_B}: {e}"))?;
    if b.presentation.names() != gamma.names() {
        return Err(format!("{CUSP_B}: generators must be {}", gamma.names().join(", ")));
    }
    b.subgroup.ok_or_else(|| format!("{CUSP_B}: no `sub` section"))
}

fn appendix(dir: &Path) -> Outcome {
    let loader = Loader::in_dir(dir);
    let rho = loader.load(RHO_IMAGES).ok_or_else(|| format!("missing fixture {RHO_IMAGES}"))?;
    let b_text = loader.load(CUSP_B).ok_or_else(|| format!("missing fixture {CUSP_B}"))?;
    let gamma = parse_group_file(fixtures::get("gamma_picard.grp").expect("bundled"))
        .map_err(|e| e.to_string())?
        .presentation;
    let f = parse_image_file(&rho).map_err(|e| format!("{RHO_IMAGES}: {e}"))?;
    let imgs = f.images_for(&gamma).map_err(|e| format!("{RHO_IMAGES}: {e}"))?;
    let sub = cusp_subgroup(&b_text, &gamma)?;

    let mut r = Report::new();
    let img = math!(r, verify_finite_image(&gamma, imgs));
    r.fact("image_order", &img.order);
    r.check_fact("image_order", 1536);
    let ab = subgroup_abelianization(&gamma, &img, max_cosets_from_env()).map_err(|e| e.to_string())?;
    abelian_facts(&mut r, "kernel.", &ab);
    r.check_fact("kernel.invariants", "(Z/2)^9 x (Z/4)^6");
    let torsion: Vec<String> = ["i", "q", "i*q", "i*t", "i*q*t"].map(String::from).into();
    math!(r, torsion_checks(&mut r, &gamma, &img, &torsion));

    let cusps = coset_index_of_image_subgroup(&img, &sub);
    r.fact("cusps", &cusps);
    r.check_fact("cusps", 24);
    let index = u64::try_from(&img.order).map_err(|_| "image order out of range".to_string())?;
    let euler = euler_cover(&rat(1, 32), index);
    r.fact("euler", &euler);
    r.check_fact("euler", 48);
    let n_cusps = usize::try_from(&cusps).map_err(|_| "cusp count out of range".to_string())?;
    let boundary = vec![BigInt::from(-4); n_cusps];
    if !euler.is_integer() {
        return Err(format!("orbifold Euler number {euler} of the cover is not an integer"));
    }
    let e = euler.to_integer();
    let n = math!(r, char_numbers(&e, &boundary, &BigInt::from(0)));
    r.fact("k2", &n.k2);
    r.fact("chi", &n.chi);
    r.fact("p_g", &n.p_g);
    r.check_fact("k2", 48);
    r.check_fact("chi", 8);
    r.check_fact("p_g", 7);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_names_are_input_errors() {
        let e = run_example("z3-abelian", Path::new(".")).unwrap_err();
        assert!(e.starts_with("unknown example z3-abelian"));
    }

    #[test]
    fn appendix_reports_the_missing_slot() {
        let dir = tempfile::tempdir().unwrap();
        assert_eq!(run_example("appendix", dir.path()).unwrap_err(), "missing fixture rho_images.fix");
        std::fs::write(dir.path().join(RHO_IMAGES), "degree 2\n").unwrap();
        assert_eq!(run_example("appendix", dir.path()).unwrap_err(), "missing fixture cusp_b.grp");
    }

    #[test]
    fn table_rows_are_distinct() {
        let f = arrangement("z4_abelian.arr");
        assert_eq!(table_one(&f).len(), 24);
    }
}
