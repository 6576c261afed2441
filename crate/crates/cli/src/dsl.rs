//! Quantified-pattern expressions.
//!
//! ```text
//! expr := QUANT '(' WINDOW ( ',' term )+ ')'
//! term := SERIES ( 'is' LABEL )? ( 'shift' INT )?
//! ```
//!
//! Identifiers match `[A-Za-z_][A-Za-z0-9_.]*`; names that do not (or that
//! collide with the keywords `is` and `shift`) can be written as
//! double-quoted strings, e.g. `"very hot"`.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Expression {
    pub quantifier: String,
    pub window: String,
    pub terms: Vec<Term>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Term {
    pub series: String,
    pub label: Option<String>,
    pub shift: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at line {line}, column {column}: expected {}, found {found}", expected.join(" or "))]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub found: String,
    pub expected: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Str(String),
    Int(i64),
    LParen,
    RParen,
    Comma,
    Is,
    Shift,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Str(s) => format!("string {s:?}"),
            Tok::Int(i) => format!("integer {i}"),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Is => "keyword `is`".into(),
            Tok::Shift => "keyword `shift`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '.'
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut column) = (0, 1, 1);
    let err = |line, column, found: String, expected: &[&str]| ParseError {
        line,
        column,
        found,
        expected: expected.iter().map(|s| s.to_string()).collect(),
    };
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, column);
        if c == '\n' {
            i += 1;
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            column += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '(' => {
                i += 1;
                Tok::LParen
            }
            ')' => {
                i += 1;
                Tok::RParen
            }
            ',' => {
                i += 1;
                Tok::Comma
            }
            '"' => {
                i += 1;
                let mut s = String::new();
                loop {
                    match chars.get(i) {
                        None | Some('\n') => {
                            return Err(err(l0, c0, "unterminated string".into(), &["closing `\"`"]))
                        }
                        Some('"') => {
                            i += 1;
                            break;
                        }
                        Some('\\') => {
                            match chars.get(i + 1) {
                                Some(&e @ ('"' | '\\')) => s.push(e),
                                _ => {
                                    return Err(err(
                                        l0,
                                        c0 + (i - start),
                                        "invalid escape".into(),
                                        &["`\\\"`", "`\\\\`"],
                                    ))
                                }
                            }
                            i += 2;
                        }
                        Some(&ch) => {
                            s.push(ch);
                            i += 1;
                        }
                    }
                }
                if s.is_empty() {
                    return Err(err(l0, c0, "empty string".into(), &["name"]));
                }
                Tok::Str(s)
            }
            '-' | '0'..='9' => {
                i += 1;
                while chars.get(i).is_some_and(char::is_ascii_digit) {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                if chars.get(i).copied().is_some_and(is_ident_continue) || digits == "-" {
                    return Err(err(l0, c0, format!("`{digits}`"), &["integer"]));
                }
                let value = digits
                    .parse()
                    .map_err(|_| err(l0, c0, format!("`{digits}`"), &["integer within 64 bits"]))?;
                Tok::Int(value)
            }
            c if is_ident_start(c) => {
                while chars.get(i).copied().is_some_and(is_ident_continue) {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                match word.as_str() {
                    "is" => Tok::Is,
                    "shift" => Tok::Shift,
                    _ => Tok::Ident(word),
                }
            }
            other => return Err(err(l0, c0, format!("character `{other}`"), &["expression"])),
        };
        column += i - start;
        out.push(Spanned {
            tok,
            line: l0,
            column: c0,
        });
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        column,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T, ParseError> {
        let t = &self.toks[self.pos];
        Err(ParseError {
            line: t.line,
            column: t.column,
            found: t.tok.describe(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        })
    }

    fn name(&mut self, what: &str) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) | Tok::Str(s) => {
                self.pos += 1;
                Ok(s)
            }
            _ => self.fail(&[what]),
        }
    }

    fn punct(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.pos += 1;
            Ok(())
        } else {
            self.fail(&[what])
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        let series = self.name("series name")?;
        let mut label = None;
        if *self.peek() == Tok::Is {
            self.pos += 1;
            label = Some(self.name("label name")?);
        }
        let mut shift = None;
        if *self.peek() == Tok::Shift {
            self.pos += 1;
            match *self.peek() {
                Tok::Int(d) => {
                    self.pos += 1;
                    shift = Some(d);
                }
                _ => return self.fail(&["integer"]),
            }
        }
        Ok(Term { series, label, shift })
    }

    fn expression(&mut self) -> Result<Expression, ParseError> {
        let quantifier = self.name("quantifier name")?;
        self.punct(Tok::LParen, "`(`")?;
        let window = self.name("window name")?;
        let mut terms = Vec::new();
        loop {
            match self.peek() {
                Tok::Comma => {
                    self.pos += 1;
                    terms.push(self.term()?);
                }
                Tok::RParen if !terms.is_empty() => {
                    self.pos += 1;
                    break;
                }
                _ if terms.is_empty() => return self.fail(&["`,`"]),
                _ => {
                    let last = terms.last().expect("at least one term");
                    return self.fail(&term_followers(last, &["`,`", "`)`"]));
                }
            }
        }
        Ok(Expression {
            quantifier,
            window,
            terms,
        })
    }
}

/// Tokens that may follow `term`, given the parts it already has.
fn term_followers(term: &Term, tail: &[&'static str]) -> Vec<&'static str> {
    let mut out = Vec::new();
    if term.label.is_none() && term.shift.is_none() {
        out.push("`is`");
    }
    if term.shift.is_none() {
        out.push("`shift`");
    }
    out.extend_from_slice(tail);
    out
}

pub fn parse_expression(text: &str) -> Result<Expression, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let expr = p.expression()?;
    if *p.peek() != Tok::Eof {
        return p.fail(&["end of input"]);
    }
    Ok(expr)
}

/// Parses a lone term such as `temp is hot shift -1`.
pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let term = p.term()?;
    if *p.peek() != Tok::Eof {
        return p.fail(&term_followers(&term, &["end of input"]));
    }
    Ok(term)
}

/// Writes `name` bare when it lexes back as the same identifier.
fn write_name(f: &mut fmt::Formatter<'_>, name: &str) -> fmt::Result {
    let mut chars = name.chars();
    let bare = chars.next().is_some_and(is_ident_start)
        && chars.all(is_ident_continue)
        && name != "is"
        && name != "shift";
    if bare {
        f.write_str(name)
    } else {
        f.write_str("\"")?;
        for c in name.chars() {
            if c == '"' || c == '\\' {
                f.write_str("\\")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("\"")
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_name(f, &self.series)?;
        if let Some(label) = &self.label {
            f.write_str(" is ")?;
            write_name(f, label)?;
        }
        if let Some(d) = self.shift {
            write!(f, " shift {d}")?;
        }
        Ok(())
    }
}

/// Canonical form: single spaces after commas, no other padding.
impl fmt::Display for Expression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_name(f, &self.quantifier)?;
        f.write_str("(")?;
        write_name(f, &self.window)?;
        for t in &self.terms {
            write!(f, ", {t}")?;
        }
        f.write_str(")")
    }
}
