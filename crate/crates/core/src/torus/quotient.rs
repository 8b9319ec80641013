use super::auto::{check_group, full_orbit, image_line, is_free_action, AffineAuto, FreeReport};
use super::lattice::{AbelianSurface, TorusPoint};
use super::line::{intersect_lines, intersection_number, TorusLine};
use super::TorusError;
use crate::arith::GaussianRational;
use num_bigint::BigInt;
use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

type G = GaussianRational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedLine {
    pub name: String,
    pub line: TorusLine,
}

/// Named, pairwise distinct torus lines on one surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    surface: Arc<AbelianSurface>,
    lines: Vec<NamedLine>,
}

impl Arrangement {
    pub fn new(surface: Arc<AbelianSurface>, lines: Vec<NamedLine>) -> Result<Self, TorusError> {
        for (i, l) in lines.iter().enumerate() {
            if *l.line.surface() != surface {
                return Err(TorusError::DifferentSurface);
            }
            for prev in &lines[..i] {
                if prev.name == l.name {
                    return Err(TorusError::DuplicateName(l.name.clone()));
                }
                if prev.line == l.line {
                    return Err(TorusError::DuplicateLine(prev.name.clone(), l.name.clone()));
                }
            }
        }
        Ok(Arrangement { surface, lines })
    }

    pub fn surface(&self) -> &Arc<AbelianSurface> {
        &self.surface
    }

    pub fn lines(&self) -> &[NamedLine] {
        &self.lines
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.lines.iter().position(|l| l.name == name)
    }

    pub fn position(&self, line: &TorusLine) -> Option<usize> {
        self.lines.iter().position(|l| l.line == *line)
    }

    /// True iff both arrangements consist of the same curves, names ignored.
    pub fn same_lines(&self, other: &Arrangement) -> bool {
        self.line_matching(other).is_some()
    }

    /// For each line of `self`, the name of the equal line of `other`.
    pub fn line_matching(&self, other: &Arrangement) -> Option<Vec<(String, String)>> {
        if self.len() != other.len() {
            return None;
        }
        self.lines
            .iter()
            .map(|l| {
                other
                    .position(&l.line)
                    .map(|j| (l.name.clone(), other.lines[j].name.clone()))
            })
            .collect()
    }

    /// Every point on at least two lines, with the indices of the lines
    /// through it.
    pub fn multiple_points(&self) -> Result<BTreeMap<TorusPoint, Vec<usize>>, TorusError> {
        let mut out: BTreeMap<TorusPoint, BTreeSet<usize>> = BTreeMap::new();
        for i in 0..self.len() {
            for j in i + 1..self.len() {
                for p in intersect_lines(&self.lines[i].line, &self.lines[j].line)? {
                    let e = out.entry(p).or_default();
                    e.insert(i);
                    e.insert(j);
                }
            }
        }
        Ok(out
            .into_iter()
            .map(|(p, s)| (p, s.into_iter().collect()))
            .collect())
    }
}

/// Shifts every line by `(v1, v2)`: the image of the arrangement under
/// `(w, z) -> (w + v1, z + v2)`.
pub fn translate_arrangement(arr: &Arrangement, by: (&G, &G)) -> Arrangement {
    let lines = arr
        .lines
        .iter()
        .map(|l| {
            let delta = l.line.form(by.0, by.1);
            NamedLine {
                name: l.name.clone(),
                line: l.line.shifted(&delta),
            }
        })
        .collect();
    Arrangement::new(Arc::clone(&arr.surface), lines).expect("translation is injective on lines")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageCurve {
    pub name: String,
    /// Indices into the upstairs arrangement, ascending.
    pub preimages: Vec<usize>,
}

/// A point of the quotient lying on two or more branches of the image
/// divisor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpecialPoint {
    /// Least member of the fiber.
    pub representative: TorusPoint,
    pub fiber: Vec<TorusPoint>,
    /// `(image curve index, branch count)` for every curve through the
    /// point, ascending by index.
    pub branches: Vec<(usize, u32)>,
}

impl SpecialPoint {
    pub fn total_branches(&self) -> u32 {
        self.branches.iter().map(|(_, m)| m).sum()
    }

    pub fn branches_of(&self, curve: usize) -> u32 {
        self.branches
            .iter()
            .find(|(c, _)| *c == curve)
            .map_or(0, |(_, m)| *m)
    }
}

/// An arrangement modulo a free group action.
#[derive(Clone, Debug)]
pub struct QuotientConfig {
    upstairs: Arrangement,
    group: Vec<AffineAuto>,
    image_curves: Vec<ImageCurve>,
    points: Vec<SpecialPoint>,
}

impl QuotientConfig {
    pub fn upstairs(&self) -> &Arrangement {
        &self.upstairs
    }

    pub fn group(&self) -> &[AffineAuto] {
        &self.group
    }

    pub fn group_order(&self) -> usize {
        self.group.len()
    }

    pub fn image_curves(&self) -> &[ImageCurve] {
        &self.image_curves
    }

    pub fn curve_index(&self, name: &str) -> Option<usize> {
        self.image_curves.iter().position(|c| c.name == name)
    }

    /// Downstairs points where at least two branches meet, sorted by
    /// representative.
    pub fn special_points(&self) -> &[SpecialPoint] {
        &self.points
    }

    /// `(point, curve name, m)` for every branch count of at least two.
    pub fn singular_points(&self) -> Vec<(&TorusPoint, &str, u32)> {
        let mut out = Vec::new();
        for p in &self.points {
            for &(c, m) in &p.branches {
                if m >= 2 {
                    out.push((&p.representative, self.image_curves[c].name.as_str(), m));
                }
            }
        }
        out
    }

    /// The special point whose fiber contains `p`.
    pub fn point_containing(&self, p: &TorusPoint) -> Option<&SpecialPoint> {
        self.points.iter().find(|s| s.fiber.binary_search(p).is_ok())
    }

    /// Intersection number upstairs of the pullbacks of two image curves:
    /// `sum over preimage pairs (L, L')` with `L != L'` of `L . L'`. Torus
    /// lines have self-intersection zero, so for a curve with itself this
    /// is `(pi^* G)^2`.
    pub fn pullback_product(&self, c1: usize, c2: usize) -> Result<BigInt, TorusError> {
        let lines = self.upstairs.lines();
        let mut total = BigInt::from(0);
        for &i in &self.image_curves[c1].preimages {
            for &j in &self.image_curves[c2].preimages {
                if i != j {
                    total += intersection_number(&lines[i].line, &lines[j].line)?;
                }
            }
        }
        Ok(total)
    }

    /// Replaces default curve names with declared `(name, preimage names)`
    /// pairs, which must match the computed orbits exactly.
    pub fn rename_curves(&mut self, declared: &[(String, Vec<String>)]) -> Result<(), TorusError> {
        let mut used = vec![false; self.image_curves.len()];
        let mut names = vec![None; self.image_curves.len()];
        for (name, pre) in declared {
            let mut idx = Vec::with_capacity(pre.len());
            for n in pre {
                idx.push(
                    self.upstairs
                        .index_of(n)
                        .ok_or_else(|| TorusError::UnknownLine(n.clone()))?,
                );
            }
            idx.sort_unstable();
            let k = self
                .image_curves
                .iter()
                .position(|c| c.preimages == idx)
                .ok_or_else(|| TorusError::ImageMismatch(name.clone()))?;
            if used[k] {
                return Err(TorusError::ImageMismatch(name.clone()));
            }
            used[k] = true;
            names[k] = Some(name.clone());
        }
        for (c, n) in self.image_curves.iter_mut().zip(names) {
            if let Some(n) = n {
                c.name = n;
            }
        }
        let mut seen = BTreeSet::new();
        for c in &self.image_curves {
            if !seen.insert(&c.name) {
                return Err(TorusError::DuplicateName(c.name.clone()));
            }
        }
        Ok(())
    }
}

/// Builds the quotient of `arr` by the free action of `group`.
///
/// Image curves are line orbits, named by their preimages joined with `+`
/// until renamed. A line may be mapped to itself by a non-identity element;
/// its image is then covered with degree equal to the stabilizer order, and
/// the branch counts below still hold because the fiber formula only uses
/// incidences.
pub fn build_quotient_config(
    arr: &Arrangement,
    group: &[AffineAuto],
) -> Result<QuotientConfig, TorusError> {
    check_group(group)?;
    if *group[0].surface() != *arr.surface() {
        return Err(TorusError::DifferentSurface);
    }
    if let FreeReport::NotFree { element, witness } = is_free_action(group)? {
        return Err(TorusError::NotFreeAction {
            element: element.to_string(),
            witness,
        });
    }
    let lines = arr.lines();
    let mut curve_of = vec![None; lines.len()];
    let mut image_curves = Vec::new();
    for (i, l) in lines.iter().enumerate() {
        if curve_of[i].is_some() {
            continue;
        }
        let mut orbit = BTreeSet::new();
        for g in group {
            let img = image_line(g, &l.line);
            let j = arr.position(&img).ok_or_else(|| TorusError::NotStable {
                line: l.name.clone(),
                element: g.to_string(),
            })?;
            orbit.insert(j);
        }
        let preimages: Vec<usize> = orbit.into_iter().collect();
        for &j in &preimages {
            curve_of[j] = Some(image_curves.len());
        }
        let name = preimages
            .iter()
            .map(|&j| lines[j].name.as_str())
            .collect::<Vec<_>>()
            .join("+");
        image_curves.push(ImageCurve { name, preimages });
    }

    let order = group.len() as u32;
    let multiple = arr.multiple_points()?;
    let mut done: BTreeSet<TorusPoint> = BTreeSet::new();
    let mut points = Vec::new();
    for (p, through) in &multiple {
        if done.contains(p) {
            continue;
        }
        let fiber = full_orbit(group, p);
        debug_assert_eq!(fiber.len(), group.len());
        let mut incidences: BTreeMap<usize, u32> = BTreeMap::new();
        for q in &fiber {
            let on_q = multiple.get(q).ok_or_else(|| TorusError::NotStable {
                line: lines[through[0]].name.clone(),
                element: "orbit of a multiple point".into(),
            })?;
            for &j in on_q {
                *incidences.entry(curve_of[j].expect("assigned")).or_default() += 1;
            }
            done.insert(q.clone());
        }
        let branches = incidences
            .into_iter()
            .map(|(c, n)| {
                debug_assert_eq!(n % order, 0);
                (c, n / order)
            })
            .collect();
        check_ordinary(arr, through, p)?;
        points.push(SpecialPoint {
            representative: fiber[0].clone(),
            fiber,
            branches,
        });
    }
    points.sort_by(|a, b| a.representative.cmp(&b.representative));
    Ok(QuotientConfig {
        upstairs: arr.clone(),
        group: group.to_vec(),
        image_curves,
        points,
    })
}

fn check_ordinary(arr: &Arrangement, through: &[usize], p: &TorusPoint) -> Result<(), TorusError> {
    let lines = arr.lines();
    for (k, &i) in through.iter().enumerate() {
        for &j in &through[k + 1..] {
            if lines[i].line.is_parallel(&lines[j].line) {
                return Err(TorusError::NonOrdinarySingularity(Box::new(p.clone())));
            }
        }
    }
    Ok(())
}

/// The full upstairs orbit over the downstairs point represented by `q`.
pub fn fiber(q: &TorusPoint, config: &QuotientConfig) -> Vec<TorusPoint> {
    full_orbit(&config.group, q)
}
