//! Boolean formulas over sign conditions `f_i relop 0`.
//!
//! Grammar: `f3 <= 0`, `!`/`not`, `&`/`and`, `|`/`or`, parentheses, and the
//! constants `true`/`false`. Polynomial references are 1-based.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RelOp {
    Lt,
    Le,
    Eq,
    Ge,
    Gt,
    Ne,
}

impl RelOp {
    pub fn holds(self, sign: i8) -> bool {
        match self {
            RelOp::Lt => sign < 0,
            RelOp::Le => sign <= 0,
            RelOp::Eq => sign == 0,
            RelOp::Ge => sign >= 0,
            RelOp::Gt => sign > 0,
            RelOp::Ne => sign != 0,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            RelOp::Lt => "<",
            RelOp::Le => "<=",
            RelOp::Eq => "=",
            RelOp::Ge => ">=",
            RelOp::Gt => ">",
            RelOp::Ne => "!=",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    Const(bool),
    /// Zero-based polynomial index.
    Atom(usize, RelOp),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
}

impl Formula {
    pub fn atom(i: usize, op: RelOp) -> Self {
        Formula::Atom(i, op)
    }

    pub fn eval(&self, signs: &[i8]) -> bool {
        match self {
            Formula::Const(b) => *b,
            Formula::Atom(i, op) => op.holds(signs[*i]),
            Formula::Not(f) => !f.eval(signs),
            Formula::And(v) => v.iter().all(|f| f.eval(signs)),
            Formula::Or(v) => v.iter().any(|f| f.eval(signs)),
        }
    }

    pub fn max_index(&self) -> Option<usize> {
        match self {
            Formula::Const(_) => None,
            Formula::Atom(i, _) => Some(*i),
            Formula::Not(f) => f.max_index(),
            Formula::And(v) | Formula::Or(v) => v.iter().filter_map(|f| f.max_index()).max(),
        }
    }

    /// Error unless every atom refers to one of `count` polynomials.
    pub fn check_refs(&self, count: usize) -> Result<()> {
        match self.max_index() {
            Some(i) if i >= count => Err(Error::FormulaReference { index: i + 1, count }),
            _ => Ok(()),
        }
    }

    /// The atoms in order of first appearance.
    pub fn atoms(&self) -> Vec<(usize, RelOp)> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut Vec<(usize, RelOp)>) {
        match self {
            Formula::Const(_) => {}
            Formula::Atom(i, op) => out.push((*i, *op)),
            Formula::Not(f) => f.collect_atoms(out),
            Formula::And(v) | Formula::Or(v) => v.iter().for_each(|f| f.collect_atoms(out)),
        }
    }

    /// True when the formula is a plain conjunction of atoms.
    pub fn is_conjunction(&self) -> bool {
        match self {
            Formula::Atom(..) | Formula::Const(true) => true,
            Formula::And(v) => v.iter().all(|f| f.is_conjunction()),
            _ => false,
        }
    }

    pub fn parse(s: &str) -> Result<Formula> {
        let toks = lex(s)?;
        let mut p = Parser { toks, pos: 0 };
        let f = p.or()?;
        if p.pos != p.toks.len() {
            return Err(perr(p.pos, "trailing input in formula"));
        }
        Ok(f)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Const(b) => write!(f, "{b}"),
            Formula::Atom(i, op) => write!(f, "f{} {} 0", i + 1, op.symbol()),
            Formula::Not(g) => write!(f, "!({g})"),
            Formula::And(v) | Formula::Or(v) => {
                let sep = if matches!(self, Formula::And(_)) { " & " } else { " | " };
                write!(f, "(")?;
                for (k, g) in v.iter().enumerate() {
                    if k > 0 {
                        write!(f, "{sep}")?;
                    }
                    write!(f, "{g}")?;
                }
                write!(f, ")")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Poly(usize),
    Zero,
    Op(RelOp),
    Not,
    And,
    Or,
    True,
    False,
    LParen,
    RParen,
}

fn perr(pos: usize, msg: &str) -> Error {
    Error::Parse {
        pos,
        msg: msg.to_string(),
    }
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let b = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < b.len() {
        let c = b[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let two = s.get(i..i + 2).unwrap_or("");
        let (tok, len) = match (c, two) {
            (_, "<=") => (Tok::Op(RelOp::Le), 2),
            (_, ">=") => (Tok::Op(RelOp::Ge), 2),
            (_, "!=") => (Tok::Op(RelOp::Ne), 2),
            (_, "==") => (Tok::Op(RelOp::Eq), 2),
            (_, "&&") => (Tok::And, 2),
            (_, "||") => (Tok::Or, 2),
            ('<', _) => (Tok::Op(RelOp::Lt), 1),
            ('>', _) => (Tok::Op(RelOp::Gt), 1),
            ('=', _) => (Tok::Op(RelOp::Eq), 1),
            ('!', _) => (Tok::Not, 1),
            ('&', _) => (Tok::And, 1),
            ('|', _) => (Tok::Or, 1),
            ('(', _) => (Tok::LParen, 1),
            (')', _) => (Tok::RParen, 1),
            ('0', _) => (Tok::Zero, 1),
            ('f', _) if b.get(i + 1).is_some_and(|d| d.is_ascii_digit()) => {
                let mut j = i + 1;
                while j < b.len() && b[j].is_ascii_digit() {
                    j += 1;
                }
                let k: usize = s[i + 1..j].parse().map_err(|_| perr(i, "bad polynomial index"))?;
                if k == 0 {
                    return Err(perr(i, "polynomial indices start at f1"));
                }
                (Tok::Poly(k - 1), j - i)
            }
            (c, _) if c.is_ascii_alphabetic() => {
                let mut j = i;
                while j < b.len() && (b[j] as char).is_ascii_alphabetic() {
                    j += 1;
                }
                let tok = match &s[i..j] {
                    "and" => Tok::And,
                    "or" => Tok::Or,
                    "not" => Tok::Not,
                    "true" => Tok::True,
                    "false" => Tok::False,
                    w => return Err(perr(i, &format!("unknown word '{w}' in formula"))),
                };
                (tok, j - i)
            }
            _ => return Err(perr(i, &format!("unexpected character '{c}' in formula"))),
        };
        out.push(tok);
        i += len;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn or(&mut self) -> Result<Formula> {
        let mut v = vec![self.and()?];
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            v.push(self.and()?);
        }
        Ok(if v.len() == 1 { v.pop().unwrap() } else { Formula::Or(v) })
    }

    fn and(&mut self) -> Result<Formula> {
        let mut v = vec![self.not()?];
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            v.push(self.not()?);
        }
        Ok(if v.len() == 1 { v.pop().unwrap() } else { Formula::And(v) })
    }

    fn not(&mut self) -> Result<Formula> {
        match self.peek() {
            Some(Tok::Not) => {
                self.pos += 1;
                Ok(Formula::Not(Box::new(self.not()?)))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let f = self.or()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(perr(self.pos, "expected ')' in formula"));
                }
                self.pos += 1;
                Ok(f)
            }
            Some(Tok::True) => {
                self.pos += 1;
                Ok(Formula::Const(true))
            }
            Some(Tok::False) => {
                self.pos += 1;
                Ok(Formula::Const(false))
            }
            Some(Tok::Poly(i)) => {
                let i = *i;
                self.pos += 1;
                let op = match self.peek() {
                    Some(Tok::Op(op)) => *op,
                    _ => return Err(perr(self.pos, "expected relation after polynomial")),
                };
                self.pos += 1;
                if self.peek() != Some(&Tok::Zero) {
                    return Err(perr(self.pos, "atoms compare against 0"));
                }
                self.pos += 1;
                Ok(Formula::Atom(i, op))
            }
            _ => Err(perr(self.pos, "expected atom")),
        }
    }
}
