//! Presentations realized by affine maps, and the `.aff` / `.sub` formats.
//!
//! ```text
//! presentation g_z4.grp
//! mode exact
//! affine a m=1,0,0,1 t=1,0
//! affine e m=i,0,0,1 t=0,1/4
//! ```
//!
//! `mode modlattice` compares maps modulo the lattice of a `surface` line
//! (same syntax as in `.arr` files). A substitution file maps the
//! generators of one presentation to words in an affine spec:
//!
//! ```text
//! source hprime.grp
//! target g_z4.aff
//! image x = b*a^-1
//! ```

use super::map::AffineMap;
use crate::fpgroup::{parse_group_file, Presentation, PresentationError, Word};
use crate::text::{source_lines, ParseError, Token};
use crate::torus::{parse_surface_line, AbelianSurface};
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EqualityMode {
    Exact,
    ModLattice(Arc<AbelianSurface>),
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum AffineSpecError {
    #[error("{file}: {error}")]
    Parse { file: String, error: ParseError },
    #[error("{file}: {error}")]
    Presentation { file: String, error: PresentationError },
    #[error("missing fixture {0}")]
    MissingFixture(String),
    #[error("no affine map for generator {0}")]
    MissingGenerator(String),
    #[error("affine map {0} is not a generator of the presentation")]
    ExtraGenerator(String),
    #[error("no image for generator {0}")]
    MissingImage(String),
}

/// Affine maps for the generators of a presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineGroupSpec {
    presentation: Presentation,
    maps: Vec<AffineMap>,
    inverses: Vec<AffineMap>,
    mode: EqualityMode,
    surface: Option<Arc<AbelianSurface>>,
}

impl AffineGroupSpec {
    /// `named` must cover the presentation's generators exactly.
    pub fn new(
        presentation: Presentation,
        named: Vec<(String, AffineMap)>,
        mode: EqualityMode,
        surface: Option<Arc<AbelianSurface>>,
    ) -> Result<Self, AffineSpecError> {
        if let Some((extra, _)) = named.iter().find(|(n, _)| presentation.generator_index(n).is_none()) {
            return Err(AffineSpecError::ExtraGenerator(extra.clone()));
        }
        let maps = presentation
            .names()
            .iter()
            .map(|n| {
                named
                    .iter()
                    .find(|(m, _)| m == n)
                    .map(|(_, f)| f.clone())
                    .ok_or_else(|| AffineSpecError::MissingGenerator(n.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let inverses = maps.iter().map(AffineMap::inverse).collect();
        let surface = surface.or_else(|| match &mode {
            EqualityMode::ModLattice(s) => Some(Arc::clone(s)),
            EqualityMode::Exact => None,
        });
        Ok(AffineGroupSpec {
            presentation,
            maps,
            inverses,
            mode,
            surface,
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn mode(&self) -> &EqualityMode {
        &self.mode
    }

    pub fn surface(&self) -> Option<&Arc<AbelianSurface>> {
        self.surface.as_ref()
    }

    /// Generator maps in presentation order.
    pub fn maps(&self) -> &[AffineMap] {
        &self.maps
    }

    pub fn map_of(&self, name: &str) -> Option<&AffineMap> {
        self.presentation.generator_index(name).map(|g| &self.maps[g])
    }

    /// `g1 g2 ... gk` as the composite `g1 ∘ g2 ∘ ... ∘ gk`.
    pub fn evaluate(&self, w: &Word) -> AffineMap {
        w.letters().iter().fold(AffineMap::identity(), |acc, &l| {
            let g = l.unsigned_abs() as usize - 1;
            acc.compose(if l > 0 { &self.maps[g] } else { &self.inverses[g] })
        })
    }

    /// Whether `f` is the identity under the spec's equality mode.
    pub fn is_trivial(&self, f: &AffineMap) -> bool {
        match &self.mode {
            EqualityMode::Exact => f.is_identity(),
            EqualityMode::ModLattice(s) => {
                let [t1, t2] = f.translation();
                f.linear_is_identity() && s.contains(t1, t2)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelatorCheck {
    pub relator: String,
    pub value: AffineMap,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    pub checks: Vec<RelatorCheck>,
}

impl RelationReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelatorCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

/// Evaluates every relator of the spec's presentation.
pub fn verify_presentation(spec: &AffineGroupSpec) -> RelationReport {
    let pres = spec.presentation();
    RelationReport {
        checks: pres
            .relators()
            .iter()
            .map(|r| {
                let value = spec.evaluate(r);
                RelatorCheck {
                    relator: pres.format_word(r),
                    holds: spec.is_trivial(&value),
                    value,
                }
            })
            .collect(),
    }
}

/// Rewrites each relator of `source` through `images` (one target word per
/// source generator) and evaluates it in `target`.
pub fn verify_substitution(source: &Presentation, target: &AffineGroupSpec, images: &[Word]) -> RelationReport {
    assert_eq!(images.len(), source.ngens(), "one image per source generator");
    RelationReport {
        checks: source
            .relators()
            .iter()
            .map(|r| {
                let rewritten = r.letters().iter().fold(Word::empty(), |acc, &l| {
                    let img = &images[l.unsigned_abs() as usize - 1];
                    acc.mul(&if l > 0 { img.clone() } else { img.inverse() })
                });
                let value = target.evaluate(&rewritten);
                RelatorCheck {
                    relator: source.format_word(r),
                    holds: target.is_trivial(&value),
                    value,
                }
            })
            .collect(),
    }
}

/// A parsed `.aff` file whose presentation is still a file name.
#[derive(Clone, Debug)]
pub struct AffineFile {
    pub presentation: String,
    pub modlattice: bool,
    pub surface: Option<Arc<AbelianSurface>>,
    pub maps: Vec<(String, AffineMap)>,
}

fn single_name<'a>(l: &crate::text::SourceLine<'a>, usage: &str) -> Result<Token<'a>, ParseError> {
    l.expect_len(2, usage)?;
    Ok(l.tokens[1])
}

pub fn parse_affine_file(text: &str) -> Result<AffineFile, ParseError> {
    let mut presentation = None;
    let mut mode = None;
    let mut surface = None;
    let mut maps: Vec<(String, AffineMap)> = Vec::new();
    for l in source_lines(text) {
        match l.keyword() {
            "presentation" => presentation = Some(single_name(&l, "presentation <file.grp>")?.text.to_string()),
            "mode" => {
                let t = single_name(&l, "mode exact|modlattice")?;
                mode = Some(match t.text {
                    "exact" => false,
                    "modlattice" => true,
                    other => return Err(t.error(format!("unknown mode `{other}`"))),
                });
            }
            "surface" => surface = Some(Arc::new(parse_surface_line(&l)?)),
            "affine" => {
                l.expect_len(4, "affine <name> m=<g>,<g>,<g>,<g> t=<g>,<g>")?;
                let name = l.tokens[1];
                if maps.iter().any(|(n, _)| n == name.text) {
                    return Err(name.error(format!("duplicate map {}", name.text)));
                }
                let f = crate::torus::parse_map_fields(&l.tokens[2], &l.tokens[3])?;
                maps.push((name.text.to_string(), f));
            }
            other => return Err(l.error(format!("unknown directive `{other}`"))),
        }
    }
    let presentation = presentation.ok_or_else(|| ParseError::new(1, 1, "missing `presentation` line"))?;
    // the mode is mandatory so that lattice equality is never silently assumed
    let modlattice = mode.ok_or_else(|| ParseError::new(1, 1, "missing `mode` line"))?;
    if modlattice && surface.is_none() {
        return Err(ParseError::new(1, 1, "`mode modlattice` needs a `surface` line"));
    }
    Ok(AffineFile {
        presentation,
        modlattice,
        surface,
        maps,
    })
}

fn load_presentation<F>(name: &str, load: &F) -> Result<Presentation, AffineSpecError>
where
    F: Fn(&str) -> Option<String>,
{
    let text = load(name).ok_or_else(|| AffineSpecError::MissingFixture(name.to_string()))?;
    parse_group_file(&text)
        .map(|g| g.presentation)
        .map_err(|error| AffineSpecError::Presentation {
            file: name.to_string(),
            error,
        })
}

impl AffineFile {
    /// Loads the presentation through `load` and builds the spec.
    pub fn resolve<F>(&self, load: &F) -> Result<AffineGroupSpec, AffineSpecError>
    where
        F: Fn(&str) -> Option<String>,
    {
        let pres = load_presentation(&self.presentation, load)?;
        let mode = match (&self.surface, self.modlattice) {
            (Some(s), true) => EqualityMode::ModLattice(Arc::clone(s)),
            _ => EqualityMode::Exact,
        };
        AffineGroupSpec::new(pres, self.maps.clone(), mode, self.surface.clone())
    }
}

/// Reads and resolves the `.aff` file `name`.
pub fn load_affine_spec<F>(name: &str, load: &F) -> Result<AffineGroupSpec, AffineSpecError>
where
    F: Fn(&str) -> Option<String>,
{
    let text = load(name).ok_or_else(|| AffineSpecError::MissingFixture(name.to_string()))?;
    parse_affine_file(&text)
        .map_err(|error| AffineSpecError::Parse {
            file: name.to_string(),
            error,
        })?
        .resolve(load)
}

/// A resolved `.sub` file.
#[derive(Clone, Debug)]
pub struct Substitution {
    pub source: Presentation,
    pub target: AffineGroupSpec,
    pub images: Vec<Word>,
}

impl Substitution {
    pub fn verify(&self) -> RelationReport {
        verify_substitution(&self.source, &self.target, &self.images)
    }
}

/// Reads and resolves the `.sub` file `name`.
pub fn load_substitution<F>(name: &str, load: &F) -> Result<Substitution, AffineSpecError>
where
    F: Fn(&str) -> Option<String>,
{
    let text = load(name).ok_or_else(|| AffineSpecError::MissingFixture(name.to_string()))?;
    let parse_err = |error: ParseError| AffineSpecError::Parse {
        file: name.to_string(),
        error,
    };
    let mut source = None;
    let mut target = None;
    let mut images: Vec<(Token<'_>, String)> = Vec::new();
    for l in source_lines(&text) {
        match l.keyword() {
            "source" => source = Some(single_name(&l, "source <file.grp>").map_err(parse_err)?.text),
            "target" => target = Some(single_name(&l, "target <file.aff>").map_err(parse_err)?.text),
            "image" => {
                let rest = l.after_equals("image <generator> = <word>").map_err(parse_err)?;
                let word: Vec<&str> = rest.iter().map(|t| t.text).collect();
                images.push((l.tokens[1], word.join(" ")));
            }
            other => return Err(parse_err(l.error(format!("unknown directive `{other}`")))),
        }
    }
    let source_name = source.ok_or_else(|| parse_err(ParseError::new(1, 1, "missing `source` line")))?;
    let target_name = target.ok_or_else(|| parse_err(ParseError::new(1, 1, "missing `target` line")))?;
    let source = load_presentation(source_name, load)?;
    let target = load_affine_spec(target_name, load)?;
    let mut words = Vec::with_capacity(source.ngens());
    for g in source.names() {
        let (tok, text) = images
            .iter()
            .find(|(t, _)| t.text == g)
            .ok_or_else(|| AffineSpecError::MissingImage(g.clone()))?;
        let w = target.presentation().parse_word(text).map_err(|e| {
            let error = match e {
                PresentationError::Syntax(p) => tok.error(p.message),
                other => tok.error(other.to_string()),
            };
            parse_err(error)
        })?;
        words.push(w);
    }
    if let Some((tok, _)) = images.iter().find(|(t, _)| source.generator_index(t.text).is_none()) {
        return Err(parse_err(tok.error(format!("{} is not a source generator", tok.text))));
    }
    Ok(Substitution {
        source,
        target,
        images: words,
    })
}
