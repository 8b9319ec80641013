//! Line-oriented tokenizing shared by the fixture formats.

use crate::arith::{
    parse_gaussian, parse_gaussian_integer, GaussianInteger, GaussianRational, LiteralError,
};
use std::fmt;

/// A parse failure located at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Token<'a> {
    pub text: &'a str,
    pub line: usize,
    pub column: usize,
}

impl<'a> Token<'a> {
    pub fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::new(self.line, self.column, message)
    }

    /// The value of a `key=value` token.
    pub fn value_of(&self, key: &str) -> Result<Token<'a>, ParseError> {
        match self.text.split_once('=') {
            Some((k, v)) if k == key => Ok(Token {
                text: v,
                line: self.line,
                column: self.column + k.chars().count() + 1,
            }),
            _ => Err(self.error(format!("expected `{key}=...`, found `{}`", self.text))),
        }
    }

    /// Splits on commas, keeping columns.
    pub fn split_commas(&self) -> Vec<Token<'a>> {
        let mut out = Vec::new();
        let mut col = self.column;
        for part in self.text.split(',') {
            out.push(Token {
                text: part,
                line: self.line,
                column: col,
            });
            col += part.chars().count() + 1;
        }
        out
    }

    pub fn gaussian(&self) -> Result<GaussianRational, ParseError> {
        parse_gaussian(self.text).map_err(|e| self.literal_error(e))
    }

    pub fn gaussian_integer(&self) -> Result<GaussianInteger, ParseError> {
        parse_gaussian_integer(self.text).map_err(|e| self.literal_error(e))
    }

    pub fn integer(&self) -> Result<i64, ParseError> {
        self.text
            .parse()
            .map_err(|_| self.error(format!("expected an integer, found `{}`", self.text)))
    }

    fn literal_error(&self, e: LiteralError) -> ParseError {
        let column = match &e {
            LiteralError::BadChar { offset, .. } => self.column + offset,
            _ => self.column,
        };
        ParseError::new(self.line, column, e.to_string())
    }
}

/// One non-blank line with comments (`#` to end of line) removed.
#[derive(Clone, Debug)]
pub struct SourceLine<'a> {
    pub number: usize,
    pub tokens: Vec<Token<'a>>,
}

impl<'a> SourceLine<'a> {
    pub fn keyword(&self) -> &'a str {
        self.tokens[0].text
    }

    pub fn error(&self, message: impl Into<String>) -> ParseError {
        self.tokens[0].error(message)
    }

    /// Fails unless the line has exactly `n` tokens.
    pub fn expect_len(&self, n: usize, usage: &str) -> Result<(), ParseError> {
        if self.tokens.len() == n {
            return Ok(());
        }
        let at = self.tokens.get(n).unwrap_or(&self.tokens[self.tokens.len() - 1]);
        Err(at.error(format!("expected `{usage}`")))
    }

    /// The tokens after a `<keyword> <name> =` prefix.
    pub fn after_equals(&self, usage: &str) -> Result<&[Token<'a>], ParseError> {
        if self.tokens.len() < 3 || self.tokens[2].text != "=" {
            return Err(self.error(format!("expected `{usage}`")));
        }
        Ok(&self.tokens[3..])
    }
}

pub fn source_lines(text: &str) -> Vec<SourceLine<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split_once('#').map_or(raw, |(b, _)| b);
        let mut tokens = Vec::new();
        let mut start: Option<usize> = None;
        for (idx, ch) in body.char_indices().chain(std::iter::once((body.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(idx),
                (true, Some(s)) => {
                    tokens.push(Token {
                        text: &body[s..idx],
                        line: i + 1,
                        column: body[..s].chars().count() + 1,
                    });
                    start = None;
                }
                _ => {}
            }
        }
        if !tokens.is_empty() {
            out.push(SourceLine {
                number: i + 1,
                tokens,
            });
        }
    }
    out
}
