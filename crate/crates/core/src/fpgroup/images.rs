//! `.fix` files: permutation images of a presentation's generators.
//!
//! ```text
//! degree 4
//! image a = (1,2)
//! image b = (1,2,3,4)
//! torsion a*b
//! ```
//!
//! Points are 1-based. `torsion` lines are optional words whose images are
//! checked to be nontrivial.

use super::perm::Perm;
use super::presentation::Presentation;
use crate::text::{source_lines, ParseError, Token};
use std::fmt::Write;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageFile {
    pub degree: usize,
    pub images: Vec<(String, Perm)>,
    pub torsion: Vec<String>,
}

/// Cycle notation such as `(1,3,2)(4,5)`; `()` is the identity. Errors carry
/// a byte offset into `text`.
pub fn parse_perm(text: &str, degree: usize) -> Result<Perm, (usize, String)> {
    let mut img: Vec<u32> = (0..degree as u32).collect();
    let mut moved = vec![false; degree];
    let bytes = text.as_bytes();
    let mut k = 0;
    while k < bytes.len() {
        if bytes[k] != b'(' {
            return Err((k, "expected `(`".into()));
        }
        k += 1;
        let mut cycle: Vec<usize> = Vec::new();
        loop {
            let start = k;
            while k < bytes.len() && bytes[k].is_ascii_digit() {
                k += 1;
            }
            if k == start {
                if cycle.is_empty() && bytes.get(k) == Some(&b')') {
                    break;
                }
                return Err((k, "expected a point".into()));
            }
            let x: usize = text[start..k].parse().map_err(|_| (start, "point out of range".to_string()))?;
            if x == 0 || x > degree {
                return Err((start, format!("point {x} outside 1..{degree}")));
            }
            if moved[x - 1] {
                return Err((start, format!("point {x} appears twice")));
            }
            moved[x - 1] = true;
            cycle.push(x - 1);
            match bytes.get(k) {
                Some(b',') => k += 1,
                Some(b')') => break,
                _ => return Err((k, "expected `,` or `)`".into())),
            }
        }
        k += 1;
        for (j, &x) in cycle.iter().enumerate() {
            img[x] = cycle[(j + 1) % cycle.len()] as u32;
        }
    }
    Ok(Perm::new(img).expect("disjoint cycles"))
}

fn joined(tokens: &[Token<'_>]) -> String {
    tokens.iter().map(|t| t.text).collect()
}

pub fn parse_image_file(text: &str) -> Result<ImageFile, ParseError> {
    let mut degree: Option<usize> = None;
    let mut images: Vec<(String, Perm)> = Vec::new();
    let mut torsion = Vec::new();
    for l in source_lines(text) {
        match l.keyword() {
            "degree" => {
                l.expect_len(2, "degree <n>")?;
                let n = l.tokens[1].integer()?;
                if n < 1 {
                    return Err(l.tokens[1].error("degree must be positive"));
                }
                degree = Some(n as usize);
            }
            "image" => {
                let n = degree.ok_or_else(|| l.error("`degree` must come before images"))?;
                let rest = l.after_equals("image <generator> = <cycles>")?;
                let name = l.tokens[1];
                if images.iter().any(|(g, _)| g == name.text) {
                    return Err(name.error(format!("duplicate image for {}", name.text)));
                }
                let start = rest.first().ok_or_else(|| l.error("missing cycles"))?;
                let p = parse_perm(&joined(rest), n)
                    .map_err(|(off, msg)| ParseError::new(start.line, start.column + off, msg))?;
                images.push((name.text.to_string(), p));
            }
            "torsion" => {
                if l.tokens.len() < 2 {
                    return Err(l.error("expected `torsion <word>`"));
                }
                torsion.push(joined(&l.tokens[1..]));
            }
            other => return Err(l.error(format!("unknown directive `{other}`"))),
        }
    }
    let degree = degree.ok_or_else(|| ParseError::new(1, 1, "missing `degree` line"))?;
    Ok(ImageFile { degree, images, torsion })
}

impl ImageFile {
    /// Images in the generator order of `pres`; names the first generator
    /// without an image on failure.
    pub fn images_for(&self, pres: &Presentation) -> Result<Vec<Perm>, String> {
        if let Some((extra, _)) = self.images.iter().find(|(n, _)| pres.generator_index(n).is_none()) {
            return Err(format!("{extra} is not a generator"));
        }
        pres.names()
            .iter()
            .map(|g| {
                self.images
                    .iter()
                    .find(|(n, _)| n == g)
                    .map(|(_, p)| p.clone())
                    .ok_or_else(|| format!("no image for generator {g}"))
            })
            .collect()
    }
}

pub fn format_image_file(pres: &Presentation, images: &[Perm]) -> String {
    let mut out = String::new();
    let degree = images.first().map_or(0, Perm::degree);
    writeln!(out, "degree {degree}").unwrap();
    for (name, p) in pres.names().iter().zip(images) {
        writeln!(out, "image {name} = {p}").unwrap();
    }
    out
}
