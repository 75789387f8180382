//! The framework text format.
//!
//! ```text
//! % comment
//! arg(a). arg(b).
//! att(r1, a, b).      % id, source, target
//! supp(t1, a, r1).
//! ```

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use thiserror::Error;

use super::{FrameworkError, Hafs, HafsBuilder};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error(transparent)]
    Invalid(#[from] FrameworkError),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Name(String),
    Open,
    Close,
    Comma,
    Dot,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Name(n) => alloc::format!("name `{n}`"),
            Tok::Open => "`(`".to_string(),
            Tok::Close => "`)`".to_string(),
            Tok::Comma => "`,`".to_string(),
            Tok::Dot => "`.`".to_string(),
        }
    }
}

struct Lexer<'a> {
    chars: core::iter::Peekable<core::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    /// Next token with its starting position, or `None` at end of input.
    fn next_token(&mut self) -> Result<Option<(Tok, usize, usize)>, ParseError> {
        loop {
            match self.chars.peek() {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('%') => {
                    while let Some(c) = self.bump() {
                        if c == '\n' {
                            break;
                        }
                    }
                }
                _ => break,
            }
        }
        let (line, column) = (self.line, self.column);
        let Some(c) = self.bump() else {
            return Ok(None);
        };
        let tok = match c {
            '(' => Tok::Open,
            ')' => Tok::Close,
            ',' => Tok::Comma,
            '.' => Tok::Dot,
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let mut name = String::new();
                name.push(c);
                while let Some(&c) = self.chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        name.push(c);
                        self.bump();
                    } else {
                        break;
                    }
                }
                if !super::is_valid_name(&name) {
                    return Err(syntax(line, column, alloc::format!("invalid name `{name}`")));
                }
                Tok::Name(name)
            }
            other => {
                return Err(syntax(
                    line,
                    column,
                    alloc::format!("unexpected character `{other}`"),
                ))
            }
        };
        Ok(Some((tok, line, column)))
    }
}

fn syntax(line: usize, column: usize, msg: String) -> ParseError {
    ParseError {
        line,
        column,
        kind: ParseErrorKind::Syntax(msg),
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
}

impl Parser<'_> {
    fn expect(&mut self, want: &Tok) -> Result<(), ParseError> {
        match self.lexer.next_token()? {
            Some((tok, _, _)) if tok == *want => Ok(()),
            Some((tok, l, c)) => Err(syntax(
                l,
                c,
                alloc::format!("expected {}, found {}", want.describe(), tok.describe()),
            )),
            None => Err(self.eof(want.describe())),
        }
    }

    fn name(&mut self) -> Result<String, ParseError> {
        match self.lexer.next_token()? {
            Some((Tok::Name(n), _, _)) => Ok(n),
            Some((tok, l, c)) => Err(syntax(
                l,
                c,
                alloc::format!("expected a name, found {}", tok.describe()),
            )),
            None => Err(self.eof("a name".to_string())),
        }
    }

    fn eof(&self, want: String) -> ParseError {
        syntax(
            self.lexer.line,
            self.lexer.column,
            alloc::format!("expected {want}, found end of input"),
        )
    }
}

/// Parses and validates a framework. References may point forward.
pub fn parse(text: &str) -> Result<Hafs, ParseError> {
    let mut p = Parser {
        lexer: Lexer::new(text),
    };
    let mut builder = HafsBuilder::new();
    // where each name was declared, for locating validation errors
    let mut declared_at: BTreeMap<String, Vec<(usize, usize)>> = BTreeMap::new();
    let mut first_at: Option<(usize, usize)> = None;

    while let Some((tok, line, column)) = p.lexer.next_token()? {
        first_at.get_or_insert((line, column));
        let keyword = match tok {
            Tok::Name(k) => k,
            other => {
                return Err(syntax(
                    line,
                    column,
                    alloc::format!("expected a statement, found {}", other.describe()),
                ))
            }
        };
        p.expect(&Tok::Open)?;
        let id = p.name()?;
        match keyword.as_str() {
            "arg" => {
                builder.argument(id.clone());
            }
            "att" | "supp" => {
                p.expect(&Tok::Comma)?;
                let source = p.name()?;
                p.expect(&Tok::Comma)?;
                let target = p.name()?;
                if keyword == "att" {
                    builder.attack(id.clone(), source, target);
                } else {
                    builder.support(id.clone(), source, target);
                }
            }
            other => {
                return Err(syntax(
                    line,
                    column,
                    alloc::format!("unknown statement `{other}`, expected arg, att or supp"),
                ))
            }
        }
        p.expect(&Tok::Close)?;
        p.expect(&Tok::Dot)?;
        declared_at.entry(id).or_default().push((line, column));
    }

    builder.build().map_err(|err| {
        let (culprit, last) = match &err {
            FrameworkError::DuplicateName(n) => (n, true),
            FrameworkError::InvalidName(n)
            | FrameworkError::SelfReference(n)
            | FrameworkError::DefinitionCycle(n) => (n, false),
            FrameworkError::DuplicateRelation { second, .. } => (second, false),
            FrameworkError::DanglingReference { relation, .. } => (relation, false),
        };
        let (line, column) = declared_at
            .get(culprit)
            .and_then(|at| if last { at.last() } else { at.first() })
            .copied()
            .or(first_at)
            .unwrap_or((1, 1));
        ParseError {
            line,
            column,
            kind: ParseErrorKind::Invalid(err),
        }
    })
}
