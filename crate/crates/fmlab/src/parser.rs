//! Concrete formula syntax.
//!
//! ```text
//! formula := "E" var formula | "A" var formula | "!" formula
//!          | "(" formula op formula ")" | atom
//! op      := "&" | "|" | "->"
//! atom    := NAME "(" term {"," term} ")" | NAME | term "=" term
//!          | "true" | "false"
//! term    := var | "<" NAME ">"
//! ```
//!
//! Angle brackets mark constants naming structure elements, matching how
//! formulas are printed.
//!
//! `->` is sugar for `!.. | ..`. Names may contain `@`; past the first `@`
//! the characters `:` and `,` also count as name characters, which is how
//! derived relation symbols such as `R@1:a` stay single tokens.

use crate::error::{Error, Result};
use crate::formula::{Formula, Term};
use crate::structure::{ElementId, Vocabulary};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Name(String),
    Const(String),
    LParen,
    RParen,
    Comma,
    Eq,
    Bang,
    Amp,
    Pipe,
    Arrow,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

fn name_start(c: u8) -> bool {
    c.is_ascii_alphabetic() || c == b'_'
}

fn name_cont(c: u8, seen_at: bool) -> bool {
    c.is_ascii_alphanumeric()
        || c == b'_'
        || c == b'.'
        || c == b'@'
        || (seen_at && (c == b':' || c == b','))
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn bump(&mut self) -> u8 {
        let c = self.src[self.pos];
        self.pos += 1;
        if c == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        c
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::Parse {
            line: self.line,
            column: self.col,
            message: msg.into(),
        }
    }

    fn tokens(mut self) -> Result<Vec<(Tok, usize, usize)>> {
        let mut out = Vec::new();
        while self.pos < self.src.len() {
            let (line, col) = (self.line, self.col);
            let c = self.src[self.pos];
            if c.is_ascii_whitespace() {
                self.bump();
                continue;
            }
            let tok = match c {
                b'(' => {
                    self.bump();
                    Tok::LParen
                }
                b')' => {
                    self.bump();
                    Tok::RParen
                }
                b',' => {
                    self.bump();
                    Tok::Comma
                }
                b'=' => {
                    self.bump();
                    Tok::Eq
                }
                b'!' => {
                    self.bump();
                    Tok::Bang
                }
                b'&' => {
                    self.bump();
                    Tok::Amp
                }
                b'|' => {
                    self.bump();
                    Tok::Pipe
                }
                b'<' => {
                    self.bump();
                    let start = self.pos;
                    while self.pos < self.src.len() && self.src[self.pos] != b'>' {
                        self.bump();
                    }
                    if self.pos == self.src.len() {
                        return Err(self.err("unterminated constant, expected '>'"));
                    }
                    let s = std::str::from_utf8(&self.src[start..self.pos])
                        .map_err(|_| self.err("constant name is not valid UTF-8"))?
                        .to_string();
                    self.bump();
                    if s.is_empty() {
                        return Err(self.err("empty constant name"));
                    }
                    Tok::Const(s)
                }
                b'-' => {
                    self.bump();
                    if self.pos < self.src.len() && self.src[self.pos] == b'>' {
                        self.bump();
                        Tok::Arrow
                    } else {
                        return Err(self.err("expected '>' after '-'"));
                    }
                }
                c if name_start(c) => {
                    let start = self.pos;
                    let mut seen_at = false;
                    while self.pos < self.src.len() && name_cont(self.src[self.pos], seen_at) {
                        if self.src[self.pos] == b'@' {
                            seen_at = true;
                        }
                        self.bump();
                    }
                    let s = std::str::from_utf8(&self.src[start..self.pos])
                        .expect("ascii slice")
                        .to_string();
                    Tok::Name(s)
                }
                other => return Err(self.err(format!("unexpected character '{}'", other as char))),
            };
            out.push((tok, line, col));
        }
        Ok(out)
    }
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _, _)| t)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map(|&(_, l, c)| (l, c))
            .unwrap_or(self.end)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        let (line, column) = self.here();
        Error::Parse {
            line,
            column,
            message: msg.into(),
        }
    }

    fn next(&mut self, what: &str) -> Result<Tok> {
        match self.toks.get(self.pos) {
            Some((t, _, _)) => {
                let t = t.clone();
                self.pos += 1;
                Ok(t)
            }
            None => Err(self.err(format!("expected {what}, found end of input"))),
        }
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<()> {
        let got = self.next(what)?;
        if got == want {
            Ok(())
        } else {
            self.pos -= 1;
            Err(self.err(format!("expected {what}")))
        }
    }

    fn name(&mut self, what: &str) -> Result<String> {
        match self.next(what)? {
            Tok::Name(s) => Ok(s),
            _ => {
                self.pos -= 1;
                Err(self.err(format!("expected {what}")))
            }
        }
    }

    fn term(&mut self) -> Result<Term> {
        match self.next("term")? {
            Tok::Name(s) => Ok(Term::var(s)),
            Tok::Const(c) => Ok(Term::Const(ElementId::new(c))),
            _ => {
                self.pos -= 1;
                Err(self.err("expected a term"))
            }
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        // "E"/"A" head a quantifier exactly when a bare name (the bound
        // variable) follows; `E(x,y)` stays an atom over a symbol named E.
        let quantifier_ahead = matches!(self.peek(), Some(Tok::Name(n)) if n == "E" || n == "A")
            && matches!(self.toks.get(self.pos + 1), Some((Tok::Name(_), _, _)));
        match self.peek() {
            Some(Tok::Name(_)) if quantifier_ahead => {
                let q = self.name("quantifier")?;
                let var = self.name("variable")?;
                if var == "E" || var == "A" || var == "true" || var == "false" {
                    self.pos -= 1;
                    return Err(self.err("keyword used as variable"));
                }
                let body = self.formula()?;
                Ok(if q == "E" {
                    Formula::exists(var, body)
                } else {
                    Formula::forall(var, body)
                })
            }
            Some(Tok::Bang) => {
                self.next("'!'")?;
                Ok(Formula::not(self.formula()?))
            }
            Some(Tok::LParen) => {
                self.next("'('")?;
                let lhs = self.formula()?;
                let op = self.next("'&', '|' or '->'")?;
                let rhs = self.formula()?;
                self.expect(Tok::RParen, "')'")?;
                match op {
                    Tok::Amp => Ok(Formula::and(lhs, rhs)),
                    Tok::Pipe => Ok(Formula::or(lhs, rhs)),
                    Tok::Arrow => Ok(Formula::implies(lhs, rhs)),
                    _ => {
                        self.pos -= 2;
                        Err(self.err("expected '&', '|' or '->'"))
                    }
                }
            }
            Some(Tok::Name(_)) => self.atom(),
            Some(Tok::Const(_)) => {
                let lhs = self.term()?;
                self.expect(Tok::Eq, "'='")?;
                let rhs = self.term()?;
                Ok(Formula::Eq(lhs, rhs))
            }
            _ => Err(self.err("expected a formula")),
        }
    }

    fn atom(&mut self) -> Result<Formula> {
        let name = self.name("name")?;
        if name == "true" {
            return Ok(Formula::Bool(true));
        }
        if name == "false" {
            return Ok(Formula::Bool(false));
        }
        match self.peek() {
            Some(Tok::LParen) => {
                self.next("'('")?;
                let mut terms = vec![self.term()?];
                while self.peek() == Some(&Tok::Comma) {
                    self.next("','")?;
                    terms.push(self.term()?);
                }
                self.expect(Tok::RParen, "')'")?;
                Ok(Formula::atom(name, terms))
            }
            Some(Tok::Eq) => {
                self.next("'='")?;
                let rhs = self.term()?;
                Ok(Formula::Eq(Term::var(name), rhs))
            }
            _ => Ok(Formula::atom(name, Vec::new())),
        }
    }
}

/// Parses a formula and checks its atoms against `vocab`.
pub fn parse_formula(text: &str, vocab: &Vocabulary) -> Result<Formula> {
    let f = parse_formula_untyped(text)?;
    f.validate_against(vocab)?;
    Ok(f)
}

/// Parses without arity checking (useful before a vocabulary exists).
pub fn parse_formula_untyped(text: &str) -> Result<Formula> {
    let end_line = text.lines().count().max(1);
    let end_col = text.lines().last().map(|l| l.len() + 1).unwrap_or(1);
    let toks = Lexer::new(text).tokens()?;
    let mut p = Parser {
        toks,
        pos: 0,
        end: (end_line, end_col),
    };
    let f = p.formula()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input after formula"));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::Formula;

    fn roundtrip(s: &str) {
        let f = parse_formula_untyped(s).unwrap();
        let g = parse_formula_untyped(&f.to_string()).unwrap();
        assert_eq!(f, g, "roundtrip failed for {s}");
    }

    #[test]
    fn parses_quantified_formula() {
        let f = parse_formula_untyped("E x A y (E(x,y) -> x=y)").unwrap();
        assert_eq!(f.quantifier_rank(), 2);
        assert_eq!(f.to_string(), "E x A y (!E(x,y) | x=y)");
    }

    #[test]
    fn parses_nullary_atom_and_bools() {
        let f = parse_formula_untyped("(Flag & !false)").unwrap();
        assert_eq!(
            f,
            Formula::and(
                Formula::atom("Flag", vec![]),
                Formula::not(Formula::Bool(false))
            )
        );
    }

    #[test]
    fn derived_symbol_names_lex_as_one_token() {
        let f = parse_formula_untyped("R@1:a,2:b(x)").unwrap();
        match &f {
            Formula::Atom { symbol, terms } => {
                assert_eq!(symbol, "R@1:a,2:b");
                assert_eq!(terms.len(), 1);
            }
            other => panic!("unexpected: {other:?}"),
        }
    }

    #[test]
    fn reports_position_on_error() {
        let err = parse_formula_untyped("(P(x) &").unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 1"), "{msg}");
    }

    #[test]
    fn rejects_unbalanced_and_trailing() {
        assert!(parse_formula_untyped("P(x) Q(x)").is_err());
        assert!(parse_formula_untyped("(P(x) & Q(x)").is_err());
        assert!(parse_formula_untyped("").is_err());
    }

    #[test]
    fn vocabulary_check() {
        let v = crate::structure::Vocabulary::of(&[("E", 2)]);
        assert!(parse_formula("E x E(x,x)", &v).is_ok());
        assert!(parse_formula("E x E(x)", &v).is_err());
        assert!(parse_formula("E x F(x)", &v).is_err());
    }

    #[test]
    fn roundtrips() {
        for s in [
            "E x (P(x) & A y (E(x,y) | x=y))",
            "!(P(x) -> Q(y))",
            "true",
            "(false | Zero)",
            "A x E y (E(x,y) & !x=y)",
            "E x (E(x,<hub>) & !x=<hub>)",
            "<a>=<b>",
        ] {
            roundtrip(s);
        }
    }
}
