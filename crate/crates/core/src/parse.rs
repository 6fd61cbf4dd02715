//! Text syntax for terms, equations and disjunctive systems.
//!
//! ```text
//! system      := disjunction ( ',' disjunction )*
//! disjunction := equation ( '|' equation )*
//! equation    := term '=' term
//! term        := operand ( OPSYM operand )*        left-associative
//! operand     := NAME
//!              | '(' SYMBOL operand* ')'           prefix, exactly arity operands
//!              | '(' term NAME term ')'            infix, NAME a binary symbol
//!              | '(' term ')'
//! ```
//!
//! `NAME` is an identifier (`[A-Za-z_][A-Za-z0-9_']*`) or a run of operator
//! characters such as `^`, `*` or `+`. A name is a symbol when the signature
//! declares it, otherwise a variable. `OPSYM` is a declared binary symbol
//! spelled with operator characters; identifier-named binary symbols are
//! infix only inside parentheses.

use crate::algebra::Signature;
use crate::error::{Error, Result};
use crate::term::Term;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Equation { lhs, rhs }
    }
}

impl std::fmt::Display for Equation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Eq,
    Bar,
    Comma,
    Name(String),
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

fn is_op_char(c: char) -> bool {
    matches!(
        c,
        '^' | '*' | '+' | '-' | '&' | '~' | '!' | '<' | '>' | '/' | '\\' | '.' | '@' | '#' | '$' | '%' | ':' | '?'
    )
}

fn tokenize(input: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = input.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '(' => {
                out.push((pos, Tok::Open));
                i += 1;
            }
            ')' => {
                out.push((pos, Tok::Close));
                i += 1;
            }
            '=' => {
                out.push((pos, Tok::Eq));
                i += 1;
            }
            '|' => {
                out.push((pos, Tok::Bar));
                i += 1;
            }
            ',' => {
                out.push((pos, Tok::Comma));
                i += 1;
            }
            c if is_ident_start(c) || is_op_char(c) => {
                let ident = is_ident_start(c);
                let start = i;
                while i < chars.len()
                    && (if ident {
                        is_ident_char(chars[i].1)
                    } else {
                        is_op_char(chars[i].1)
                    })
                {
                    i += 1;
                }
                let end = chars.get(i).map_or(input.len(), |&(p, _)| p);
                out.push((pos, Tok::Name(input[chars[start].0..end].to_string())));
            }
            other => {
                return Err(Error::Parse {
                    offset: pos,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    Ok(out)
}

fn is_operator_name(name: &str) -> bool {
    name.chars().all(is_op_char)
}

struct Parser<'a> {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
    sig: &'a Signature,
}

impl<'a> Parser<'a> {
    fn new(input: &str, sig: &'a Signature) -> Result<Self> {
        Ok(Parser {
            toks: tokenize(input)?,
            pos: 0,
            end: input.len(),
            sig,
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            offset: self.offset(),
            message: message.into(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            self.error(format!("expected {what}"))
        }
    }

    fn arity_of(&self, name: &str) -> Option<usize> {
        self.sig.index_of(name).map(|op| self.sig.arity(op))
    }

    fn term(&mut self) -> Result<Term> {
        let mut lhs = self.operand()?;
        while let Some(Tok::Name(name)) = self.peek() {
            if !(is_operator_name(name) && self.arity_of(name) == Some(2)) {
                break;
            }
            let name = name.clone();
            self.pos += 1;
            let rhs = self.operand()?;
            lhs = Term::Op(name, vec![lhs, rhs]);
        }
        Ok(lhs)
    }

    fn operand(&mut self) -> Result<Term> {
        match self.peek().cloned() {
            Some(Tok::Name(name)) => {
                self.pos += 1;
                match self.arity_of(&name) {
                    None => Ok(Term::Var(name)),
                    Some(0) => Ok(Term::Op(name, vec![])),
                    Some(k) => {
                        self.pos -= 1;
                        self.error(format!("symbol `{name}` of arity {k} needs parentheses"))
                    }
                }
            }
            Some(Tok::Open) => {
                self.pos += 1;
                if let Some(Tok::Name(name)) = self.peek().cloned() {
                    if let Some(k) = self.arity_of(&name).filter(|&k| k > 0) {
                        self.pos += 1;
                        let mut args = Vec::with_capacity(k);
                        while self.peek() != Some(&Tok::Close) {
                            if self.peek().is_none() {
                                return self.error("unclosed `(`");
                            }
                            args.push(self.operand()?);
                        }
                        if args.len() != k {
                            return Err(Error::ArityMismatch {
                                symbol: name,
                                expected: k,
                                found: args.len(),
                            });
                        }
                        self.pos += 1;
                        return Ok(Term::Op(name, args));
                    }
                }
                let first = self.term()?;
                match self.peek().cloned() {
                    Some(Tok::Close) => {
                        self.pos += 1;
                        Ok(first)
                    }
                    Some(Tok::Name(name)) if self.arity_of(&name) == Some(2) => {
                        self.pos += 1;
                        let second = self.term()?;
                        self.expect(Tok::Close, "`)`")?;
                        Ok(Term::Op(name, vec![first, second]))
                    }
                    _ => self.error("expected `)` or a binary symbol"),
                }
            }
            _ => self.error("expected a term"),
        }
    }

    fn equation(&mut self) -> Result<Equation> {
        let lhs = self.term()?;
        self.expect(Tok::Eq, "`=`")?;
        let rhs = self.term()?;
        Ok(Equation { lhs, rhs })
    }

    fn disjunction(&mut self) -> Result<Vec<Equation>> {
        let mut out = vec![self.equation()?];
        while self.peek() == Some(&Tok::Bar) {
            self.pos += 1;
            out.push(self.equation()?);
        }
        Ok(out)
    }

    fn finish(&self) -> Result<()> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            self.error("trailing input")
        }
    }
}

pub fn parse_term(input: &str, sig: &Signature) -> Result<Term> {
    let mut p = Parser::new(input, sig)?;
    let t = p.term()?;
    p.finish()?;
    Ok(t)
}

pub fn parse_equation(input: &str, sig: &Signature) -> Result<Equation> {
    let mut p = Parser::new(input, sig)?;
    let e = p.equation()?;
    p.finish()?;
    Ok(e)
}

pub fn parse_disjunction(input: &str, sig: &Signature) -> Result<Vec<Equation>> {
    let mut p = Parser::new(input, sig)?;
    let d = p.disjunction()?;
    p.finish()?;
    Ok(d)
}

/// Comma-separated disjunctions; blank input is the empty system.
pub fn parse_system(input: &str, sig: &Signature) -> Result<Vec<Vec<Equation>>> {
    let mut p = Parser::new(input, sig)?;
    let mut out = Vec::new();
    if p.peek().is_none() {
        return Ok(out);
    }
    out.push(p.disjunction()?);
    while p.peek() == Some(&Tok::Comma) {
        p.pos += 1;
        out.push(p.disjunction()?);
    }
    p.finish()?;
    Ok(out)
}
