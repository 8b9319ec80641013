//! One function per verb. Each returns a report, or `Err` with an input
//! diagnostic (exit code 2).

use crate::load::{read_input, Loader};
use crate::report::Report;
use ballq_core::affine::{
    bagnera_classify, load_affine_spec, load_substitution, verify_presentation, AffineSpecError,
    EqualityMode, RelationReport,
};
use ballq_core::arith::{parse_rational, Rational};
use ballq_core::fpgroup::{
    abelianization, coset_index_of_image_subgroup, euler_cover, find_homomorphisms_in, format_image_file,
    max_cosets_from_env, parse_group_file, parse_image_file, subgroup_abelianization, todd_coxeter,
    verify_finite_image, AbelianInvariants, ElementTable, FiniteImage, FpError, GroupFile, HomOptions, Perm,
    Presentation,
};
use ballq_core::ledger::{
    ample_threshold, disjointness_check, format_ledger, log_chern, parse_ledger, selfint_via_pullback, BlowupLedger,
};
use ballq_core::pipeline::{parse_pipeline, run_pipeline, BlowSpec, Pipeline, PipelineError, PipelineOutput};
use ballq_core::torus::{intersect_lines, intersection_number, parse_arrangement_file, QuotientConfig};
use num_bigint::BigInt;
use std::fmt::Display;
use std::path::Path;

pub type Outcome = Result<Report, String>;

/// Marks `r` as failed with `e` as the reason.
pub(crate) fn inconsistent(mut r: Report, e: impl Display) -> Report {
    r.note(e.to_string());
    r.check("consistent", false);
    r
}

macro_rules! math {
    ($r:ident, $e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return Ok(inconsistent($r, e)),
        }
    };
}
pub(crate) use math;

pub(crate) fn located(file: &str, e: impl Display) -> String {
    format!("{file}: {e}")
}

fn extension(path: &str) -> &str {
    Path::new(path).extension().and_then(|e| e.to_str()).unwrap_or("")
}

/// Zero-padded index keys so that facts sort in numeric order.
pub(crate) fn indexed(prefix: &str, k: usize, total: usize) -> String {
    let width = total.to_string().len();
    format!("{prefix}.{:0width$}", k + 1)
}

pub(crate) fn join<T: Display>(items: impl IntoIterator<Item = T>, sep: &str) -> String {
    let v: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    if v.is_empty() {
        "none".to_string()
    } else {
        v.join(sep)
    }
}

pub(crate) fn torsion_list(ab: &AbelianInvariants) -> String {
    join(&ab.torsion, ",")
}

/// A loader that also serves the top-level file under its own path.
fn serving<'a>(path: &'a str, text: &'a str, loader: &'a Loader) -> impl Fn(&str) -> Option<String> + 'a {
    move |n: &str| {
        if n == path {
            Some(text.to_string())
        } else {
            loader.load(n)
        }
    }
}

fn pipeline_error(e: PipelineError, r: Report) -> Outcome {
    match e {
        PipelineError::Parse { .. } | PipelineError::MissingFixture(_) => Err(e.to_string()),
        other => Ok(inconsistent(r, other)),
    }
}

/// Runs a `.pipeline` file, or an `.arr` file through its first group with
/// the given blowup directive.
fn run_input(path: &str, blow: BlowSpec) -> Result<Result<PipelineOutput, PipelineError>, String> {
    let (text, loader) = read_input(path)?;
    if extension(path) == "arr" {
        let file = parse_arrangement_file(&text).map_err(|e| located(path, e))?;
        let p = Pipeline {
            arrangement: path.to_string(),
            quotient: file.groups.first().map(|(n, _)| n.clone()),
            blow,
        };
        Ok(run_pipeline(&p, |_| Some(text.clone())))
    } else {
        let p = parse_pipeline(&text).map_err(|e| located(path, e))?;
        Ok(run_pipeline(&p, |n| loader.load(n)))
    }
}

pub fn arr_intersect(path: &str, curves: &[String]) -> Outcome {
    let (text, _) = read_input(path)?;
    let f = parse_arrangement_file(&text).map_err(|e| located(path, e))?;
    let arr = &f.arrangement;
    let lines = arr.lines();
    let mut r = Report::new();
    r.fact("curves", arr.len());
    match curves {
        [] => {
            let mp = math!(r, arr.multiple_points());
            r.fact("multiple_points", mp.len());
            for (k, (p, through)) in mp.iter().enumerate() {
                let names = join(through.iter().map(|&i| &lines[i].name), ",");
                r.fact(indexed("point", k, mp.len()), format!("{p} {names}"));
            }
            for (i, a) in lines.iter().enumerate() {
                for b in &lines[i + 1..] {
                    let n = math!(r, intersection_number(&a.line, &b.line));
                    if n != BigInt::from(0) {
                        r.fact(format!("meet.{}.{}", a.name, b.name), n);
                    }
                }
            }
        }
        [a, b] => {
            let find = |n: &String| {
                arr.index_of(n)
                    .map(|i| &lines[i].line)
                    .ok_or_else(|| format!("{path}: no curve named {n}"))
            };
            let (la, lb) = (find(a)?, find(b)?);
            let pts = math!(r, intersect_lines(la, lb));
            r.fact("meet", pts.len());
            r.fact("points", join(&pts, "; "));
            r.fact("intersection_number", math!(r, intersection_number(la, lb)));
        }
        _ => return Err("arr-intersect takes either no curve names or exactly two".into()),
    }
    Ok(r)
}

pub(crate) fn quotient_facts(r: &mut Report, c: &QuotientConfig) -> Result<(), String> {
    let names: Vec<&str> = c.image_curves().iter().map(|g| g.name.as_str()).collect();
    let upstairs = c.upstairs().lines();
    r.fact("group_order", c.group_order());
    r.fact("image_curves", names.join(","));
    for (k, g) in c.image_curves().iter().enumerate() {
        let pre = join(g.preimages.iter().map(|&i| &upstairs[i].name), ",");
        r.fact(format!("curve.{}.preimages", g.name), pre);
        let s = selfint_via_pullback(c, &g.name).map_err(|e| e.to_string())?;
        r.fact(format!("curve.{}.selfint", g.name), s);
        let mut ms: Vec<u32> = c
            .special_points()
            .iter()
            .map(|p| p.branches_of(k))
            .filter(|&m| m >= 2)
            .collect();
        ms.sort_unstable();
        r.fact(format!("curve.{}.singular_branches", g.name), join(ms, ","));
    }
    let pts = c.special_points();
    r.fact("special_points", pts.len());
    for (k, p) in pts.iter().enumerate() {
        let b = join(p.branches.iter().map(|&(i, m)| format!("{}:{m}", names[i])), ",");
        r.fact(indexed("point", k, pts.len()), format!("{} {b}", p.representative));
    }
    Ok(())
}

pub fn arr_quotient(path: &str) -> Outcome {
    let r = Report::new();
    let out = match run_input(path, BlowSpec::Nothing)? {
        Ok(o) => o,
        Err(e) => return pipeline_error(e, r),
    };
    let mut r = r;
    math!(r, quotient_facts(&mut r, &out.config));
    Ok(r)
}

pub(crate) fn blowup_facts(r: &mut Report, l: &BlowupLedger) -> Result<(), String> {
    r.fact("blown", l.blown.len());
    for c in l.boundary_curves().map_err(|e| e.to_string())? {
        r.fact(format!("transform.{}", c.name), l.proper_selfint(c));
    }
    let disjoint = disjointness_check(l).map_err(|e| e.to_string())?;
    r.fact("boundary_disjoint", disjoint.is_ok());
    if let Err(w) = disjoint {
        r.note(format!("{w:?}"));
    }
    Ok(())
}

pub fn arr_blowup(path: &str, write: Option<&Path>) -> Outcome {
    let r = Report::new();
    let out = match run_input(path, BlowSpec::All)? {
        Ok(o) => o,
        Err(e) => return pipeline_error(e, r),
    };
    let mut r = r;
    math!(r, blowup_facts(&mut r, &out.ledger));
    if let Some(dest) = write {
        std::fs::write(dest, format_ledger(&out.ledger)).map_err(|e| format!("cannot write {}: {e}", dest.display()))?;
    }
    Ok(r)
}

/// `c1sq`, `c2`, `bmy`, `cusps` and the parts behind them. The report fails
/// unless `c1sq = 3 c2`.
pub(crate) fn chern_facts(r: Report, l: &BlowupLedger) -> Report {
    let mut r = r;
    let c = match log_chern(l) {
        Ok(c) => c,
        Err(e) => return inconsistent(r, e),
    };
    let three_c2 = BigInt::from(3) * &c.c2_log;
    let bmy = match c.c1sq_log.cmp(&three_c2) {
        std::cmp::Ordering::Equal => "equal",
        std::cmp::Ordering::Less => "strict",
        std::cmp::Ordering::Greater => "violated",
    };
    r.fact("c1sq", &c.c1sq_log);
    r.fact("c2", &c.c2_log);
    r.fact("bmy", bmy);
    r.fact("cusps", c.cusp_count);
    r.fact("parts.k2", &c.parts.k2);
    r.fact("parts.kd", &c.parts.kd);
    r.fact("parts.d2", &c.parts.d2);
    r.fact("parts.euler", &c.parts.euler);
    if let Ok(t) = ample_threshold(l, &[]) {
        r.fact("ample_threshold", t.map_or("none".to_string(), |t| t.to_string()));
    }
    for n in c.notes {
        r.note(n);
    }
    r.check("bmy_equality", c.bmy_equal);
    r
}

pub fn arr_chern(path: &str) -> Outcome {
    if extension(path) == "ledger" {
        let (text, _) = read_input(path)?;
        let l = parse_ledger(&text).map_err(|e| located(path, e))?;
        return Ok(chern_facts(Report::new(), &l));
    }
    match run_input(path, BlowSpec::All)? {
        Ok(out) => Ok(chern_facts(Report::new(), &out.ledger)),
        Err(e) => pipeline_error(e, Report::new()),
    }
}

fn read_group(path: &str) -> Result<(GroupFile, Loader), String> {
    let (text, loader) = read_input(path)?;
    let g = parse_group_file(&text).map_err(|e| located(path, e))?;
    Ok((g, loader))
}

/// Coset-bound failures are input errors: they say nothing about the group.
fn fp_error(e: FpError, r: Report) -> Outcome {
    match e {
        FpError::BoundExceeded(n) => Err(format!(
            "coset enumeration exceeded {n} cosets; raise BALLQ_MAX_COSETS to continue"
        )),
        other => Ok(inconsistent(r, other)),
    }
}

pub fn grp_index(path: &str, sub: Option<&str>) -> Outcome {
    let (g, _) = read_group(path)?;
    let p = &g.presentation;
    let words = match sub {
        Some(text) => p.parse_words(text).map_err(|e| format!("--sub: {e}"))?,
        None => g.subgroup.clone().unwrap_or_default(),
    };
    let mut r = Report::new();
    r.fact("generators", p.ngens());
    r.fact("relators", p.relators().len());
    r.fact("subgroup_generators", words.len());
    let t = match todd_coxeter(p, &words, max_cosets_from_env()) {
        Ok(t) => t,
        Err(e) => return fp_error(e, r),
    };
    r.fact("index", t.n_cosets());
    r.check("table_compatible", t.is_compatible(p));
    Ok(r)
}

pub(crate) fn abelian_facts(r: &mut Report, prefix: &str, ab: &AbelianInvariants) {
    r.fact(format!("{prefix}rank"), ab.free_rank);
    r.fact(format!("{prefix}torsion"), torsion_list(ab));
    r.fact(format!("{prefix}invariants"), ab);
}

pub fn grp_abel(path: &str) -> Outcome {
    let (g, _) = read_group(path)?;
    let mut r = Report::new();
    abelian_facts(&mut r, "", &abelianization(&g.presentation));
    Ok(r)
}

/// Reads a `.fix` file and orders its images like the generators of `pres`.
fn read_images(name: &str, pres: &Presentation) -> Result<(Vec<Perm>, Vec<String>), String> {
    let (text, _) = read_input(name)?;
    let f = parse_image_file(&text).map_err(|e| located(name, e))?;
    let imgs = f.images_for(pres).map_err(|e| located(name, e))?;
    Ok((imgs, f.torsion))
}

/// Checks that every torsion word maps to a nontrivial element.
pub(crate) fn torsion_checks(r: &mut Report, pres: &Presentation, img: &FiniteImage, words: &[String]) -> Result<(), String> {
    for text in words {
        let w = pres.parse_word(text).map_err(|e| format!("torsion word {text}: {e}"))?;
        let order = img.evaluate(&w).order();
        r.fact(format!("torsion.{text}"), order);
        r.check(&format!("torsion_survives.{text}"), order > 1);
    }
    Ok(())
}

pub struct KernelArgs<'a> {
    pub images: Option<&'a str>,
    pub onto: Option<&'a str>,
    pub write_images: Option<&'a Path>,
}

pub fn grp_kernel_abel(path: &str, args: KernelArgs<'_>) -> Outcome {
    let (g, _) = read_group(path)?;
    let pres = &g.presentation;
    let max = max_cosets_from_env();
    let mut r = Report::new();
    match (args.images, args.onto) {
        (Some(fix), None) => {
            let (imgs, torsion) = read_images(fix, pres)?;
            let img = math!(r, verify_finite_image(pres, imgs));
            r.fact("image_order", &img.order);
            let ab = match subgroup_abelianization(pres, &img, max) {
                Ok(ab) => ab,
                Err(e) => return fp_error(e, r),
            };
            abelian_facts(&mut r, "kernel.", &ab);
            torsion_checks(&mut r, pres, &img, &torsion)?;
            if let Some(dest) = args.write_images {
                write_images(dest, pres, &img.generator_images)?;
            }
        }
        (None, Some(target)) => {
            let (t, _) = read_group(target)?;
            let table = match todd_coxeter(&t.presentation, &[], max) {
                Ok(table) => table,
                Err(e) => return fp_error(e, r),
            };
            let regular: Vec<Perm> = (0..t.presentation.ngens())
                .map(|k| Perm::new(table.generator_action(k)).expect("coset action"))
                .collect();
            let elements = match ElementTable::new(&regular, max) {
                Ok(e) => e,
                Err(e) => return fp_error(e, r),
            };
            r.fact("target_order", elements.len());
            let opts = HomOptions {
                surjective_only: true,
                up_to_conjugacy: true,
                node_limit: 100_000_000,
            };
            let search = math!(r, find_homomorphisms_in(pres, &elements, opts));
            r.fact("surjections", search.found.len());
            r.fact("search_nodes", search.nodes);
            r.check("search_complete", search.complete);
            let mut kernels = Vec::new();
            for (k, rho) in search.found.iter().enumerate() {
                let img = math!(r, verify_finite_image(pres, rho.clone()));
                let ab = match subgroup_abelianization(pres, &img, max) {
                    Ok(ab) => ab,
                    Err(e) => return fp_error(e, r),
                };
                r.fact(format!("{}.kernel", indexed("class", k, search.found.len())), &ab);
                kernels.push(ab);
            }
            match kernels.first() {
                Some(first) if kernels.iter().all(|k| k == first) => abelian_facts(&mut r, "kernel.", first),
                Some(_) => r.fact("kernel.invariants", "varies"),
                None => r.check("surjection_exists", false),
            }
            if let (Some(dest), Some(rho)) = (args.write_images, search.found.first()) {
                write_images(dest, pres, rho)?;
            }
        }
        _ => return Err("grp-kernel-abel needs exactly one of IMAGES.fix or --onto TARGET.grp".into()),
    }
    Ok(r)
}

fn write_images(dest: &Path, pres: &Presentation, imgs: &[Perm]) -> Result<(), String> {
    std::fs::write(dest, format_image_file(pres, imgs)).map_err(|e| format!("cannot write {}: {e}", dest.display()))
}

pub fn grp_cusps(path: &str, images: &str, chi: Option<&str>) -> Outcome {
    let (g, _) = read_group(path)?;
    let pres = &g.presentation;
    let sub = g.subgroup.clone().ok_or_else(|| format!("{path}: no `sub` section naming the cusp subgroup"))?;
    let chi: Option<Rational> = chi
        .map(|c| parse_rational(c).map_err(|e| format!("--chi: {e}")))
        .transpose()?;
    let (imgs, torsion) = read_images(images, pres)?;
    let mut r = Report::new();
    let img = math!(r, verify_finite_image(pres, imgs));
    r.fact("image_order", &img.order);
    r.fact("cusps", coset_index_of_image_subgroup(&img, &sub));
    if let Some(chi) = chi {
        let order = img.order.to_string().parse::<u64>().map_err(|_| "image order does not fit in 64 bits".to_string())?;
        r.fact("euler", euler_cover(&chi, order));
    }
    torsion_checks(&mut r, pres, &img, &torsion)?;
    Ok(r)
}

fn affine_error(e: AffineSpecError) -> String {
    e.to_string()
}

pub(crate) fn relation_facts(r: &mut Report, prefix: &str, rep: &RelationReport) {
    r.fact(format!("{prefix}relators"), rep.checks.len());
    r.fact(format!("{prefix}holding"), rep.checks.iter().filter(|c| c.holds).count());
    for c in rep.failures() {
        r.note(format!("{prefix}relator {} evaluates to {}", c.relator, c.value));
    }
    r.check(&format!("{prefix}relators_hold"), rep.all_hold());
}

pub fn rep_verify(path: &str) -> Outcome {
    let (text, loader) = read_input(path)?;
    let load = serving(path, &text, &loader);
    let mut r = Report::new();
    if extension(path) == "sub" {
        let s = load_substitution(path, &load).map_err(affine_error)?;
        r.fact("mode", mode_name(s.target.mode()));
        relation_facts(&mut r, "", &s.verify());
    } else {
        let spec = load_affine_spec(path, &load).map_err(affine_error)?;
        r.fact("mode", mode_name(spec.mode()));
        relation_facts(&mut r, "", &verify_presentation(&spec));
    }
    Ok(r)
}

fn mode_name(m: &EqualityMode) -> &'static str {
    match m {
        EqualityMode::Exact => "exact",
        EqualityMode::ModLattice(_) => "modlattice",
    }
}

pub fn rep_classify(path: &str) -> Outcome {
    let (text, loader) = read_input(path)?;
    let load = serving(path, &text, &loader);
    let spec = load_affine_spec(path, &load).map_err(affine_error)?;
    let surface = spec
        .surface()
        .cloned()
        .ok_or_else(|| format!("{path}: classification needs a `surface` line"))?;
    let mut r = Report::new();
    let mut gens = Vec::new();
    for f in spec.maps() {
        gens.push(math!(r, ballq_core::torus::AffineAuto::new(f.clone(), &surface)));
    }
    match bagnera_classify(&gens, &surface) {
        Ok(c) => {
            r.fact("type", c.kind.tag());
            r.fact("group", c.kind.group_name());
            r.fact("order", c.order);
            let free = c.notes.iter().any(|n| n == "action is free");
            r.fact("free", free);
            r.check("free_action", free);
            for n in &c.notes[1..] {
                r.note(n.clone());
            }
        }
        Err(e) => return Ok(inconsistent(r, e)),
    }
    Ok(r)
}
