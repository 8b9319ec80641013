//! Text form of a [`BlowupLedger`].
//!
//! ```text
//! base bielliptic:2
//! curve G1 selfint=4 genus=elliptic mults=p1:2,p3:2
//! curve H1 selfint=0 genus=elliptic mults=p1:1,p2:1
//! meet G1 H1 2
//! label p1 [0, 0]
//! blow p1
//! boundary G1 H1
//! ```
//!
//! `meet` gives a base intersection number that is not concentrated at the
//! marked points; `label` attaches free text to a point id.

use super::{Base, BlowupLedger, CurveRecord, Genus};
use crate::text::{source_lines, ParseError, Token};
use num_bigint::BigInt;
use std::collections::BTreeMap;
use std::fmt::Write as _;

fn bigint(tok: &Token<'_>) -> Result<BigInt, ParseError> {
    tok.text
        .parse()
        .map_err(|_| tok.error(format!("expected an integer, found `{}`", tok.text)))
}

fn parse_base(tok: &Token<'_>) -> Result<Base, ParseError> {
    let t = tok.text;
    if t == "abelian" {
        return Ok(Base::Abelian);
    }
    if let Some(n) = t.strip_prefix("bielliptic:") {
        return n
            .parse::<u32>()
            .ok()
            .filter(|&n| n >= 2)
            .map(Base::Bielliptic)
            .ok_or_else(|| tok.error("bielliptic group order must be an integer of at least 2"));
    }
    if let Some(rest) = t.strip_prefix("explicit:") {
        let sub = Token {
            text: rest,
            line: tok.line,
            column: tok.column + "explicit:".len(),
        };
        let parts = sub.split_commas();
        if parts.len() == 2 {
            return Ok(Base::Explicit {
                k2: bigint(&parts[0])?,
                e: bigint(&parts[1])?,
            });
        }
        return Err(sub.error("explicit base needs <K2>,<e>"));
    }
    Err(tok.error("base must be abelian, bielliptic:<n> or explicit:<K2>,<e>"))
}

fn parse_mults(tok: &Token<'_>) -> Result<BTreeMap<String, u32>, ParseError> {
    let v = tok.value_of("mults")?;
    let mut out = BTreeMap::new();
    if v.text.is_empty() {
        return Ok(out);
    }
    for part in v.split_commas() {
        let (p, m) = part
            .text
            .split_once(':')
            .ok_or_else(|| part.error("expected <point>:<multiplicity>"))?;
        let m: u32 = m
            .parse()
            .ok()
            .filter(|&m| m >= 1)
            .ok_or_else(|| part.error("multiplicity must be a positive integer"))?;
        if out.insert(p.to_string(), m).is_some() {
            return Err(part.error(format!("point {p} listed twice")));
        }
    }
    Ok(out)
}

pub fn parse_ledger(text: &str) -> Result<BlowupLedger, ParseError> {
    let mut ledger: Option<BlowupLedger> = None;
    for l in source_lines(text) {
        if l.keyword() == "base" {
            if ledger.is_some() {
                return Err(l.error("duplicate `base` line"));
            }
            l.expect_len(2, "base abelian|bielliptic:<n>|explicit:<K2>,<e>")?;
            ledger = Some(BlowupLedger::new(parse_base(&l.tokens[1])?));
            continue;
        }
        let led = ledger
            .as_mut()
            .ok_or_else(|| l.error("`base` must be the first directive"))?;
        match l.keyword() {
            "blow" => {
                if l.tokens.len() < 2 {
                    return Err(l.error("usage: blow <point-id>..."));
                }
                for t in &l.tokens[1..] {
                    led.blow(t.text).map_err(|e| t.error(e.to_string()))?;
                }
            }
            "curve" => {
                l.expect_len(5, "curve <name> selfint=<int> genus=elliptic|rational mults=<p>:<m>,...")?;
                let name = l.tokens[1];
                if led.curve(name.text).is_some() {
                    return Err(name.error(format!("curve {} is listed twice", name.text)));
                }
                let self_int = bigint(&l.tokens[2].value_of("selfint")?)?;
                let g = l.tokens[3].value_of("genus")?;
                let genus = match g.text {
                    "elliptic" => Genus::Elliptic,
                    "rational" => Genus::Rational,
                    _ => return Err(g.error("genus must be elliptic or rational")),
                };
                led.curves.push(CurveRecord {
                    name: name.text.to_string(),
                    self_int,
                    genus,
                    mults: parse_mults(&l.tokens[4])?,
                });
            }
            "boundary" => {
                for t in &l.tokens[1..] {
                    if led.boundary.iter().any(|b| b == t.text) {
                        return Err(t.error(format!("curve {} is listed twice", t.text)));
                    }
                    led.boundary.push(t.text.to_string());
                }
            }
            "meet" => {
                l.expect_len(4, "meet <curve> <curve> <int>")?;
                let (a, b) = (l.tokens[1].text.to_string(), l.tokens[2].text.to_string());
                if a == b {
                    return Err(l.tokens[2].error("a curve does not meet itself here; use selfint="));
                }
                let key = if a <= b { (a, b) } else { (b, a) };
                led.meets.insert(key, bigint(&l.tokens[3])?);
            }
            "label" => {
                if l.tokens.len() < 3 {
                    return Err(l.error("usage: label <point-id> <text>"));
                }
                let text: Vec<&str> = l.tokens[2..].iter().map(|t| t.text).collect();
                led.labels.insert(l.tokens[1].text.to_string(), text.join(" "));
            }
            other => return Err(l.error(format!("unknown directive `{other}`"))),
        }
    }
    let led = ledger.ok_or_else(|| ParseError::new(1, 1, "missing `base` line"))?;
    for b in &led.boundary {
        if led.curve(b).is_none() {
            return Err(ParseError::new(1, 1, format!("boundary names unknown curve {b}")));
        }
    }
    for (a, b) in led.meets.keys() {
        for n in [a, b] {
            if led.curve(n).is_none() {
                return Err(ParseError::new(1, 1, format!("meet names unknown curve {n}")));
            }
        }
    }
    Ok(led)
}

/// Inverse of [`parse_ledger`]; labels whose text contains `#` are dropped.
pub fn format_ledger(ledger: &BlowupLedger) -> String {
    let mut s = String::new();
    writeln!(s, "base {}", ledger.base).unwrap();
    for c in &ledger.curves {
        let mults: Vec<String> = c.mults.iter().map(|(p, m)| format!("{p}:{m}")).collect();
        writeln!(
            s,
            "curve {} selfint={} genus={} mults={}",
            c.name,
            c.self_int,
            c.genus,
            mults.join(",")
        )
        .unwrap();
    }
    for ((a, b), v) in &ledger.meets {
        writeln!(s, "meet {a} {b} {v}").unwrap();
    }
    for (p, t) in &ledger.labels {
        if !t.contains('#') && !t.trim().is_empty() {
            writeln!(s, "label {p} {t}").unwrap();
        }
    }
    for p in &ledger.blown {
        writeln!(s, "blow {p}").unwrap();
    }
    if !ledger.boundary.is_empty() {
        writeln!(s, "boundary {}", ledger.boundary.join(" ")).unwrap();
    }
    s
}
