//! The `.arr` arrangement format.
//!
//! ```text
//! surface lambda1=1,i lambda2=4,i
//! line E1 a=1 b=-1 c=0
//! auto phi m=i,0,0,1 t=1/2+1/2*i,1
//! group Z4 = phi
//! image G1 = E1 E2 E3 E4
//! ```
//!
//! `image` lines are optional names for line orbits of the first group and
//! are checked against the computed orbits.

use super::auto::{generate_group, AffineAuto};
use super::lattice::{AbelianSurface, Lattice2};
use super::line::TorusLine;
use super::quotient::{Arrangement, NamedLine};
use super::{TorusError, GROUP_CAP};
use crate::affine::AffineMap;
use crate::text::{source_lines, ParseError, SourceLine, Token};
use std::sync::Arc;

#[derive(Clone, Debug)]
pub struct ArrangementFile {
    pub arrangement: Arrangement,
    pub autos: Vec<(String, AffineAuto)>,
    pub groups: Vec<(String, Vec<String>)>,
    pub images: Vec<(String, Vec<String>)>,
}

impl ArrangementFile {
    pub fn surface(&self) -> &Arc<AbelianSurface> {
        self.arrangement.surface()
    }

    pub fn auto(&self, name: &str) -> Option<&AffineAuto> {
        self.autos.iter().find(|(n, _)| n == name).map(|(_, a)| a)
    }

    /// All elements of the named group, or of the first group when `name`
    /// is `None`. A file without groups yields the trivial group.
    pub fn group_elements(&self, name: Option<&str>) -> Result<Vec<AffineAuto>, TorusError> {
        let gens: &[String] = match name {
            Some(n) => {
                &self
                    .groups
                    .iter()
                    .find(|(g, _)| g == n)
                    .ok_or_else(|| TorusError::NotAGroup(format!("no group named {n}")))?
                    .1
            }
            None => self.groups.first().map_or(&[], |(_, g)| g.as_slice()),
        };
        let gens: Vec<AffineAuto> = gens
            .iter()
            .map(|g| self.auto(g).cloned().expect("checked while parsing"))
            .collect();
        generate_group(self.surface(), &gens, GROUP_CAP)
    }
}

fn lattice_of(tok: &Token<'_>, key: &str) -> Result<Lattice2, ParseError> {
    let v = tok.value_of(key)?;
    let parts = v.split_commas();
    if parts.len() != 2 {
        return Err(v.error(format!("{key} needs two basis vectors")));
    }
    Lattice2::new(parts[0].gaussian()?, parts[1].gaussian()?).map_err(|e| v.error(e.to_string()))
}

/// `surface lambda1=<g>,<g> lambda2=<g>,<g>`
pub fn parse_surface_line(line: &SourceLine<'_>) -> Result<AbelianSurface, ParseError> {
    line.expect_len(3, "surface lambda1=<g>,<g> lambda2=<g>,<g>")?;
    Ok(AbelianSurface::new(
        lattice_of(&line.tokens[1], "lambda1")?,
        lattice_of(&line.tokens[2], "lambda2")?,
    ))
}

/// `m=<g>,<g>,<g>,<g> t=<g>,<g>`
pub(crate) fn parse_map_fields(m: &Token<'_>, t: &Token<'_>) -> Result<AffineMap, ParseError> {
    let mv = m.value_of("m")?;
    let tv = t.value_of("t")?;
    let ms = mv.split_commas();
    let ts = tv.split_commas();
    if ms.len() != 4 {
        return Err(mv.error("linear part needs four entries, row-major"));
    }
    if ts.len() != 2 {
        return Err(tv.error("translation needs two entries"));
    }
    let mut entries = Vec::with_capacity(4);
    for e in &ms {
        entries.push(e.gaussian()?);
    }
    let m: [_; 4] = entries.try_into().expect("four entries");
    let t = [ts[0].gaussian()?, ts[1].gaussian()?];
    AffineMap::from_parts(m, t).map_err(|e| mv.error(e.to_string()))
}

/// Names after `=`, separated by whitespace and/or commas.
pub(crate) fn name_list<'a>(tokens: &[Token<'a>]) -> Vec<Token<'a>> {
    tokens
        .iter()
        .flat_map(|t| t.split_commas())
        .filter(|t| !t.text.is_empty())
        .collect()
}

pub fn parse_arrangement_file(text: &str) -> Result<ArrangementFile, ParseError> {
    let mut surface: Option<Arc<AbelianSurface>> = None;
    let mut lines = Vec::new();
    let mut line_tokens = Vec::new();
    let mut autos: Vec<(String, AffineAuto)> = Vec::new();
    let mut groups: Vec<(String, Vec<String>)> = Vec::new();
    let mut images = Vec::new();
    let mut image_tokens = Vec::new();
    let need_surface = |s: &Option<Arc<AbelianSurface>>, l: &SourceLine<'_>| {
        s.clone()
            .ok_or_else(|| l.error("`surface` must come before lines and automorphisms"))
    };

    for l in source_lines(text) {
        match l.keyword() {
            "surface" => {
                if surface.is_some() {
                    return Err(l.error("duplicate `surface` line"));
                }
                surface = Some(Arc::new(parse_surface_line(&l)?));
            }
            "line" => {
                let s = need_surface(&surface, &l)?;
                l.expect_len(5, "line <name> a=<gi> b=<gi> c=<g>")?;
                let a = l.tokens[2].value_of("a")?.gaussian_integer()?;
                let b = l.tokens[3].value_of("b")?.gaussian_integer()?;
                let c = l.tokens[4].value_of("c")?.gaussian()?;
                let line = TorusLine::new(&s, a, b, c).map_err(|e| l.tokens[2].error(e.to_string()))?;
                lines.push(NamedLine {
                    name: l.tokens[1].text.to_string(),
                    line,
                });
                line_tokens.push(l.tokens[1]);
            }
            "auto" => {
                let s = need_surface(&surface, &l)?;
                l.expect_len(4, "auto <name> m=<g>,<g>,<g>,<g> t=<g>,<g>")?;
                let name = l.tokens[1];
                if autos.iter().any(|(n, _)| n == name.text) {
                    return Err(name.error(format!("duplicate automorphism {}", name.text)));
                }
                let map = parse_map_fields(&l.tokens[2], &l.tokens[3])?;
                let auto = AffineAuto::new(map, &s).map_err(|e| l.tokens[2].error(e.to_string()))?;
                autos.push((name.text.to_string(), auto));
            }
            "group" => {
                let rest = l.after_equals("group <name> = <auto names>")?;
                let mut gens = Vec::new();
                for t in name_list(rest) {
                    if !autos.iter().any(|(n, _)| n == t.text) {
                        return Err(t.error(format!("unknown automorphism {}", t.text)));
                    }
                    gens.push(t.text.to_string());
                }
                groups.push((l.tokens[1].text.to_string(), gens));
            }
            "image" => {
                let rest = l.after_equals("image <name> = <line names>")?;
                let names = name_list(rest);
                images.push((
                    l.tokens[1].text.to_string(),
                    names.iter().map(|t| t.text.to_string()).collect::<Vec<_>>(),
                ));
                image_tokens.push(l.tokens[1]);
            }
            other => return Err(l.error(format!("unknown directive `{other}`"))),
        }
    }

    let s = surface.ok_or_else(|| ParseError::new(1, 1, "missing `surface` line"))?;
    let arrangement = Arrangement::new(s, lines).map_err(|e| {
        let at = match &e {
            TorusError::DuplicateName(n) | TorusError::DuplicateLine(_, n) => {
                line_tokens.iter().rev().find(|t| t.text == n)
            }
            _ => None,
        };
        at.map_or_else(|| ParseError::new(1, 1, e.to_string()), |t| t.error(e.to_string()))
    })?;
    for ((_, pre), tok) in images.iter().zip(&image_tokens) {
        if let Some(bad) = pre.iter().find(|n| arrangement.index_of(n).is_none()) {
            return Err(tok.error(format!("unknown line {bad}")));
        }
    }
    Ok(ArrangementFile {
        arrangement,
        autos,
        groups,
        images,
    })
}
