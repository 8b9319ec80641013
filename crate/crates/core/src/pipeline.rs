//! `.pipeline` files: an arrangement, an optional quotient, and a blowup
//! directive.
//!
//! ```text
//! arrangement z2_abelian.arr
//! quotient Z2
//! blow singular-and-intersections
//! ```
//!
//! `blow` also accepts explicit point ids (`blow p1 p3`) or `none`.

use crate::ledger::{ledger_from_quotient, BlowupLedger, LedgerError};
use crate::text::{source_lines, ParseError};
use crate::torus::{
    build_quotient_config, parse_arrangement_file, AffineAuto, ArrangementFile, QuotientConfig,
    TorusError,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BlowSpec {
    All,
    Points(Vec<String>),
    Nothing,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pipeline {
    pub arrangement: String,
    pub quotient: Option<String>,
    pub blow: BlowSpec,
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum PipelineError {
    #[error("{file}: {error}")]
    Parse { file: String, error: ParseError },
    #[error("missing fixture {0}")]
    MissingFixture(String),
    #[error(transparent)]
    Torus(#[from] TorusError),
    #[error(transparent)]
    Ledger(#[from] LedgerError),
}

pub fn parse_pipeline(text: &str) -> Result<Pipeline, ParseError> {
    let mut arrangement = None;
    let mut quotient = None;
    let mut blow = None;
    for l in source_lines(text) {
        match l.keyword() {
            "arrangement" => {
                l.expect_len(2, "arrangement <file>")?;
                if arrangement.replace(l.tokens[1].text.to_string()).is_some() {
                    return Err(l.error("duplicate `arrangement` line"));
                }
            }
            "quotient" => {
                l.expect_len(2, "quotient <group>")?;
                if quotient.replace(l.tokens[1].text.to_string()).is_some() {
                    return Err(l.error("duplicate `quotient` line"));
                }
            }
            "blow" => {
                if l.tokens.len() < 2 {
                    return Err(l.error("usage: blow singular-and-intersections | none | <point-id>..."));
                }
                let spec = match l.tokens[1].text {
                    "singular-and-intersections" | "none" if l.tokens.len() > 2 => {
                        return Err(l.tokens[2].error("unexpected token"));
                    }
                    "singular-and-intersections" => BlowSpec::All,
                    "none" => BlowSpec::Nothing,
                    _ => BlowSpec::Points(l.tokens[1..].iter().map(|t| t.text.to_string()).collect()),
                };
                if blow.replace(spec).is_some() {
                    return Err(l.error("duplicate `blow` line"));
                }
            }
            other => return Err(l.error(format!("unknown directive `{other}`"))),
        }
    }
    Ok(Pipeline {
        arrangement: arrangement.ok_or_else(|| ParseError::new(1, 1, "missing `arrangement` line"))?,
        quotient,
        blow: blow.unwrap_or(BlowSpec::All),
    })
}

/// Everything a pipeline produces.
#[derive(Clone, Debug)]
pub struct PipelineOutput {
    pub file: ArrangementFile,
    pub config: QuotientConfig,
    pub ledger: BlowupLedger,
}

/// Runs `p` with `load` resolving the arrangement file name to its text.
pub fn run_pipeline<F>(p: &Pipeline, load: F) -> Result<PipelineOutput, PipelineError>
where
    F: FnOnce(&str) -> Option<String>,
{
    let text = load(&p.arrangement).ok_or_else(|| PipelineError::MissingFixture(p.arrangement.clone()))?;
    let file = parse_arrangement_file(&text).map_err(|error| PipelineError::Parse {
        file: p.arrangement.clone(),
        error,
    })?;
    let group = match &p.quotient {
        Some(g) => file.group_elements(Some(g))?,
        None => vec![AffineAuto::identity(file.surface())],
    };
    let mut config = build_quotient_config(&file.arrangement, &group)?;
    // declared image names refer to orbits of the first group
    let first = file.groups.first().map(|(n, _)| n.as_str());
    if p.quotient.is_some() && p.quotient.as_deref() == first {
        config.rename_curves(&file.images)?;
    }
    let ledger = match &p.blow {
        BlowSpec::All => ledger_from_quotient(&config, None)?,
        BlowSpec::Nothing => ledger_from_quotient(&config, Some(&[]))?,
        BlowSpec::Points(ids) => ledger_from_quotient(&config, Some(ids))?,
    };
    Ok(PipelineOutput { file, config, ledger })
}

/// Runs a bundled pipeline by file name.
pub fn run_bundled(name: &str) -> Result<PipelineOutput, PipelineError> {
    let text = crate::fixtures::get(name).ok_or_else(|| PipelineError::MissingFixture(name.to_string()))?;
    let p = parse_pipeline(text).map_err(|error| PipelineError::Parse {
        file: name.to_string(),
        error,
    })?;
    run_pipeline(&p, |n| crate::fixtures::get(n).map(str::to_string))
}
