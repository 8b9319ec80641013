//! Group presentations and their text form.
//!
//! ```text
//! gens a, b ; rels a^2, b^2, (a*b)^3 ; sub a
//! ```
//!
//! Words use `*` for products, `^n` for powers (negative allowed), brackets
//! for commutators `[x, y] = x^-1 y^-1 x y`, and parentheses. A relator may
//! be written `u = v`, meaning `u v^-1`. The `sub` section is optional and
//! lists subgroup generators. Sections may span lines; `#` starts a comment.

use super::word::{letter, Word};
use crate::text::ParseError;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    names: Vec<String>,
    relators: Vec<Word>,
}

#[derive(thiserror::Error, Debug, Clone, PartialEq, Eq)]
pub enum PresentationError {
    #[error("{0}")]
    Syntax(ParseError),
    #[error("line {line}, column {column}: unknown generator {name}")]
    UnknownGenerator {
        name: String,
        line: usize,
        column: usize,
    },
    #[error("line {line}, column {column}: relator reduces to the empty word")]
    TrivialRelator { line: usize, column: usize },
    #[error("generator {0} out of range")]
    GeneratorOutOfRange(usize),
}

impl From<ParseError> for PresentationError {
    fn from(e: ParseError) -> Self {
        PresentationError::Syntax(e)
    }
}

impl Presentation {
    /// Relators are cyclically reduced; empty relators are rejected.
    pub fn new(names: Vec<String>, relators: Vec<Word>) -> Result<Self, PresentationError> {
        let mut out = Vec::with_capacity(relators.len());
        for r in relators {
            if let Some(g) = r.max_generator().filter(|&g| g >= names.len()) {
                return Err(PresentationError::GeneratorOutOfRange(g));
            }
            let r = r.cyclically_reduced();
            if r.is_empty() {
                return Err(PresentationError::TrivialRelator { line: 0, column: 0 });
            }
            out.push(r);
        }
        Ok(Presentation {
            names,
            relators: out,
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn ngens(&self) -> usize {
        self.names.len()
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn format_word(&self, w: &Word) -> String {
        w.format(&self.names)
    }

    /// Parses one word over these generators.
    pub fn parse_word(&self, text: &str) -> Result<Word, PresentationError> {
        let toks = lex(text)?;
        let mut p = Parser {
            toks: &toks,
            pos: 0,
            names: &self.names,
        };
        let w = p.expr()?;
        p.finish()?;
        Ok(w)
    }

    /// Parses a comma-separated list of words.
    pub fn parse_words(&self, text: &str) -> Result<Vec<Word>, PresentationError> {
        let toks = lex(text)?;
        let mut p = Parser {
            toks: &toks,
            pos: 0,
            names: &self.names,
        };
        let mut out = Vec::new();
        if p.peek().is_none() {
            return Ok(out);
        }
        loop {
            out.push(p.expr()?);
            if !p.eat(&Tok::Comma) {
                break;
            }
        }
        p.finish()?;
        Ok(out)
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gens {} ; rels ", self.names.join(","))?;
        let rels: Vec<String> = self.relators.iter().map(|r| self.format_word(r)).collect();
        write!(f, "{}", rels.join(", "))
    }
}

/// A presentation file with its optional subgroup section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupFile {
    pub presentation: Presentation,
    pub subgroup: Option<Vec<Word>>,
}

pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    Ok(parse_group_file(text)?.presentation)
}

pub fn parse_group_file(text: &str) -> Result<GroupFile, PresentationError> {
    let toks = lex(text)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        names: &[],
    };
    p.keyword("gens")?;
    let mut names: Vec<String> = Vec::new();
    loop {
        let (name, line, column) = p.ident()?;
        if names.contains(&name) {
            return Err(ParseError::new(line, column, format!("duplicate generator {name}")).into());
        }
        names.push(name);
        if !p.eat(&Tok::Comma) {
            break;
        }
    }
    p.expect(&Tok::Semi)?;
    p.keyword("rels")?;
    p.names = &names;
    let mut relators = Vec::new();
    if !matches!(p.peek(), Some(Tok::Semi) | None) {
        loop {
            let (line, column) = p.here();
            let mut w = p.expr()?;
            if p.eat(&Tok::Equals) {
                w = w.mul(&p.expr()?.inverse());
            }
            if w.cyclically_reduced().is_empty() {
                return Err(PresentationError::TrivialRelator { line, column });
            }
            relators.push(w);
            if !p.eat(&Tok::Comma) {
                break;
            }
        }
    }
    let mut subgroup = None;
    if p.eat(&Tok::Semi) {
        p.keyword("sub")?;
        let mut sub = Vec::new();
        if p.peek().is_some() {
            loop {
                sub.push(p.expr()?);
                if !p.eat(&Tok::Comma) {
                    break;
                }
            }
        }
        subgroup = Some(sub);
    }
    p.finish()?;
    let names_owned = names.clone();
    Ok(GroupFile {
        presentation: Presentation::new(names_owned, relators)?,
        subgroup,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Star,
    Caret,
    Minus,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Equals,
}

struct Lexed {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Lexed>, ParseError> {
    let mut out = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let body = raw.split('#').next().unwrap_or("");
        let chars: Vec<(usize, char)> = body.char_indices().collect();
        let mut k = 0;
        while k < chars.len() {
            let (_, c) = chars[k];
            let column = k + 1;
            let single = match c {
                '*' => Some(Tok::Star),
                '^' => Some(Tok::Caret),
                '-' => Some(Tok::Minus),
                '(' => Some(Tok::LParen),
                ')' => Some(Tok::RParen),
                '[' => Some(Tok::LBracket),
                ']' => Some(Tok::RBracket),
                ',' => Some(Tok::Comma),
                ';' => Some(Tok::Semi),
                '=' => Some(Tok::Equals),
                _ => None,
            };
            if let Some(tok) = single {
                out.push(Lexed { tok, line, column });
                k += 1;
            } else if c.is_whitespace() {
                k += 1;
            } else if c.is_ascii_digit() {
                let start = k;
                while k < chars.len() && chars[k].1.is_ascii_digit() {
                    k += 1;
                }
                let s: String = chars[start..k].iter().map(|(_, c)| c).collect();
                let n = s
                    .parse()
                    .map_err(|_| ParseError::new(line, column, format!("exponent {s} is too large")))?;
                out.push(Lexed {
                    tok: Tok::Int(n),
                    line,
                    column,
                });
            } else if c.is_alphabetic() || c == '_' {
                let start = k;
                while k < chars.len() && (chars[k].1.is_alphanumeric() || matches!(chars[k].1, '_' | '\'')) {
                    k += 1;
                }
                out.push(Lexed {
                    tok: Tok::Ident(chars[start..k].iter().map(|(_, c)| c).collect()),
                    line,
                    column,
                });
            } else {
                return Err(ParseError::new(line, column, format!("unexpected character `{c}`")));
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Lexed],
    pos: usize,
    names: &'a [String],
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        match self.toks.get(self.pos).or(self.toks.last()) {
            Some(t) => (t.line, t.column),
            None => (1, 1),
        }
    }

    fn error(&self, msg: impl Into<String>) -> PresentationError {
        let (l, c) = self.here();
        ParseError::new(l, c, msg).into()
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: &Tok) -> Result<(), PresentationError> {
        if self.eat(t) {
            Ok(())
        } else {
            Err(self.error(format!("expected {}", describe(t))))
        }
    }

    fn keyword(&mut self, kw: &str) -> Result<(), PresentationError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == kw => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.error(format!("expected `{kw}`"))),
        }
    }

    fn ident(&mut self) -> Result<(String, usize, usize), PresentationError> {
        let (l, c) = self.here();
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok((s, l, c))
            }
            _ => Err(self.error("expected a generator name")),
        }
    }

    fn finish(&self) -> Result<(), PresentationError> {
        if self.pos < self.toks.len() {
            return Err(self.error("unexpected trailing input"));
        }
        Ok(())
    }

    fn expr(&mut self) -> Result<Word, PresentationError> {
        let mut w = self.power()?;
        while self.eat(&Tok::Star) {
            w = w.mul(&self.power()?);
        }
        Ok(w)
    }

    fn power(&mut self) -> Result<Word, PresentationError> {
        let base = self.atom()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let neg = self.eat(&Tok::Minus);
        match self.peek() {
            Some(&Tok::Int(n)) => {
                self.pos += 1;
                Ok(base.pow(if neg { -n } else { n }))
            }
            _ => Err(self.error("expected an integer exponent")),
        }
    }

    fn atom(&mut self) -> Result<Word, PresentationError> {
        let (l, c) = self.here();
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                let g = self.names.iter().position(|n| *n == name).ok_or(
                    PresentationError::UnknownGenerator {
                        name,
                        line: l,
                        column: c,
                    },
                )?;
                Ok(Word::from_letters([letter(g, false)]))
            }
            Some(Tok::Int(1)) => {
                self.pos += 1;
                Ok(Word::empty())
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let w = self.expr()?;
                self.expect(&Tok::RParen)?;
                Ok(w)
            }
            Some(Tok::LBracket) => {
                self.pos += 1;
                let a = self.expr()?;
                self.expect(&Tok::Comma)?;
                let b = self.expr()?;
                self.expect(&Tok::RBracket)?;
                Ok(Word::commutator(&a, &b))
            }
            _ => Err(self.error("expected a generator, `1`, `(` or `[`")),
        }
    }
}

fn describe(t: &Tok) -> &'static str {
    match t {
        Tok::RParen => "`)`",
        Tok::RBracket => "`]`",
        Tok::Comma => "`,`",
        Tok::Semi => "`;`",
        _ => "a token",
    }
}
