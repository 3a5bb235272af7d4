//! Recursive-descent parser for terms, equations and quasi-equations.
//!
//! ```text
//! term  := or ; or := and ('|' and)* ; and := unary ('&' unary)* ;
//! unary := '~' unary | 's[' nat ',' nat ']' unary | 's{' nat (',' nat)* '}' unary | atom ;
//! atom  := '0' | '1' | ident | '(' term ')' ;
//! eq    := term '=' term ;
//! quasi := eq (',' eq)* '=>' eq .
//! ```

use crate::error::{Error, Result};
use crate::seqspace::Perm;

use super::ast::{Equation, PermSpec, QuasiEquation, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Nat(usize),
    Pipe,
    Amp,
    Tilde,
    LParen,
    RParen,
    LBrack,
    RBrack,
    LBrace,
    RBrace,
    Comma,
    Equals,
    Arrow,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Nat(n) => format!("number `{n}`"),
            Tok::Eof => "end of input".into(),
            other => format!(
                "`{}`",
                match other {
                    Tok::Pipe => "|",
                    Tok::Amp => "&",
                    Tok::Tilde => "~",
                    Tok::LParen => "(",
                    Tok::RParen => ")",
                    Tok::LBrack => "[",
                    Tok::RBrack => "]",
                    Tok::LBrace => "{",
                    Tok::RBrace => "}",
                    Tok::Comma => ",",
                    Tok::Equals => "=",
                    Tok::Arrow => "=>",
                    _ => unreachable!(),
                }
            ),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Pos {
    line: usize,
    column: usize,
}

fn syntax(pos: Pos, message: impl Into<String>) -> Error {
    Error::Syntax {
        line: pos.line,
        column: pos.column,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Pos)>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    let (mut line, mut line_start) = (1, 0);
    while let Some(&(at, c)) = chars.peek() {
        let pos = Pos {
            line,
            column: text[line_start..at].chars().count() + 1,
        };
        if c == '\n' {
            chars.next();
            line += 1;
            line_start = at + 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c.is_ascii_digit() {
            let mut end = at;
            while let Some(&(i, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = i + d.len_utf8();
                chars.next();
            }
            let n = text[at..end]
                .parse()
                .map_err(|_| syntax(pos, format!("number `{}` is too large", &text[at..end])))?;
            out.push((Tok::Nat(n), pos));
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut end = at;
            while let Some(&(i, d)) = chars.peek() {
                if !(d.is_ascii_alphanumeric() || d == '_') {
                    break;
                }
                end = i + d.len_utf8();
                chars.next();
            }
            out.push((Tok::Ident(text[at..end].to_string()), pos));
            continue;
        }
        chars.next();
        let tok = match c {
            '|' => Tok::Pipe,
            '&' => Tok::Amp,
            '~' => Tok::Tilde,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '[' => Tok::LBrack,
            ']' => Tok::RBrack,
            '{' => Tok::LBrace,
            '}' => Tok::RBrace,
            ',' => Tok::Comma,
            '=' => {
                if chars.peek().is_some_and(|&(_, d)| d == '>') {
                    chars.next();
                    Tok::Arrow
                } else {
                    Tok::Equals
                }
            }
            other => return Err(syntax(pos, format!("unexpected character `{other}`"))),
        };
        out.push((tok, pos));
    }
    let end = Pos {
        line,
        column: text[line_start..].chars().count() + 1,
    };
    out.push((Tok::Eof, end));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        Ok(Parser { toks: lex(text)?, at: 0 })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.at + 1).min(self.toks.len() - 1)].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok) -> Result<()> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(syntax(
                self.pos(),
                format!("expected {}, found {}", want.describe(), self.peek().describe()),
            ))
        }
    }

    fn nat(&mut self) -> Result<usize> {
        match self.peek() {
            Tok::Nat(n) => {
                let n = *n;
                self.bump();
                Ok(n)
            }
            other => Err(syntax(self.pos(), format!("expected a number, found {}", other.describe()))),
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            Tok::Eof => Ok(()),
            other => Err(syntax(self.pos(), format!("unexpected {} after end of formula", other.describe()))),
        }
    }

    fn term(&mut self) -> Result<Term> {
        let mut lhs = self.and()?;
        while *self.peek() == Tok::Pipe {
            self.bump();
            lhs = Term::or(lhs, self.and()?);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Term> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            lhs = Term::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Term> {
        match (self.peek(), self.peek2()) {
            (Tok::Tilde, _) => {
                self.bump();
                Ok(Term::not(self.unary()?))
            }
            (Tok::Ident(s), Tok::LBrack) if s == "s" => {
                let start = self.pos();
                self.bump();
                self.bump();
                let i = self.nat()?;
                self.expect(Tok::Comma)?;
                let j = self.nat()?;
                self.expect(Tok::RBrack)?;
                if i == j {
                    return Err(syntax(start, format!("s[{i},{j}] is not a transposition")));
                }
                Ok(Term::subst(PermSpec::Transposition(i, j), self.unary()?))
            }
            (Tok::Ident(s), Tok::LBrace) if s == "s" => {
                let start = self.pos();
                self.bump();
                self.bump();
                let mut images = vec![self.nat()?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    images.push(self.nat()?);
                }
                self.expect(Tok::RBrace)?;
                let f = Perm::from_images(images)
                    .map_err(|e| syntax(start, e.to_string()))?;
                Ok(Term::subst(PermSpec::from_perm(&f), self.unary()?))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Term> {
        let pos = self.pos();
        match self.bump() {
            Tok::Nat(0) => Ok(Term::Zero),
            Tok::Nat(1) => Ok(Term::One),
            Tok::Ident(name) => Ok(Term::Var(name)),
            Tok::LParen => {
                let t = self.term()?;
                self.expect(Tok::RParen)?;
                Ok(t)
            }
            Tok::Nat(n) => Err(syntax(pos, format!("constant {n} is not 0 or 1"))),
            other => Err(syntax(pos, format!("expected a term, found {}", other.describe()))),
        }
    }

    fn equation(&mut self) -> Result<Equation> {
        let lhs = self.term()?;
        self.expect(Tok::Equals)?;
        let rhs = self.term()?;
        Ok(Equation::new(lhs, rhs))
    }

    fn quasi(&mut self) -> Result<QuasiEquation> {
        let mut eqs = vec![self.equation()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            eqs.push(self.equation()?);
        }
        if *self.peek() == Tok::Arrow {
            self.bump();
            let conclusion = self.equation()?;
            Ok(QuasiEquation::new(eqs, conclusion))
        } else if eqs.len() == 1 {
            Ok(QuasiEquation::from(eqs.pop().unwrap()))
        } else {
            Err(syntax(self.pos(), format!("expected `=>`, found {}", self.peek().describe())))
        }
    }
}

pub fn parse_term(text: &str) -> Result<Term> {
    let mut p = Parser::new(text)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_equation(text: &str) -> Result<Equation> {
    let mut p = Parser::new(text)?;
    let eq = p.equation()?;
    p.finish()?;
    Ok(eq)
}

/// Parses `h_1, …, h_m => c`; a bare equation is accepted as a
/// quasi-equation without hypotheses.
pub fn parse_quasi(text: &str) -> Result<QuasiEquation> {
    let mut p = Parser::new(text)?;
    let qe = p.quasi()?;
    p.finish()?;
    Ok(qe)
}
