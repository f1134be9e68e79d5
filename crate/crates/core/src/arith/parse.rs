//! Text grammar for polynomials: variables `x1..x9`, integer or `p/q`
//! rational literals, `+ - * ^`, parentheses. Whitespace is ignored.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{MultiPoly, Rational};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(Rational),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>> {
    let b = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < b.len() {
        let c = b[i] as char;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            'x' => {
                i += 1;
                let ds = i;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                let idx: usize = s[ds..i].parse().map_err(|_| Error::Parse {
                    pos: start,
                    msg: "expected variable index after 'x'".into(),
                })?;
                if !(1..=9).contains(&idx) {
                    return Err(Error::Parse {
                        pos: start,
                        msg: format!("variable x{idx} outside x1..x9"),
                    });
                }
                out.push((start, Tok::Var(idx - 1)));
                continue;
            }
            d if d.is_ascii_digit() => {
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                let num: BigInt = s[start..i].parse().unwrap();
                // a `/` directly followed by digits belongs to the literal
                let mut j = i;
                while j < b.len() && (b[j] as char).is_whitespace() {
                    j += 1;
                }
                let mut val = Rational::from_integer(num.clone());
                if j < b.len() && b[j] == b'/' {
                    j += 1;
                    while j < b.len() && (b[j] as char).is_whitespace() {
                        j += 1;
                    }
                    let ds = j;
                    while j < b.len() && b[j].is_ascii_digit() {
                        j += 1;
                    }
                    if ds == j {
                        return Err(Error::Parse {
                            pos: ds,
                            msg: "expected denominator".into(),
                        });
                    }
                    let den: BigInt = s[ds..j].parse().unwrap();
                    if den.is_zero() {
                        return Err(Error::Parse {
                            pos: ds,
                            msg: "zero denominator".into(),
                        });
                    }
                    val = Rational::new(num, den);
                    i = j;
                }
                out.push((start, Tok::Num(val)));
                continue;
            }
            other => {
                return Err(Error::Parse {
                    pos: start,
                    msg: format!("unexpected character '{other}'"),
                })
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    nvars: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.0).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse {
            pos: self.here(),
            msg: msg.to_string(),
        })
    }

    fn expr(&mut self) -> Result<MultiPoly> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc + &t;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = &acc - &t;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly> {
        let mut acc = self.unary()?;
        while let Some(Tok::Star) = self.peek() {
            self.pos += 1;
            let f = self.unary()?;
            acc = &acc * &f;
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<MultiPoly> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                Ok(-&self.unary()?)
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<MultiPoly> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(r)) if r.is_integer() && r >= Rational::zero() => {
                    self.pos += 1;
                    let k: u32 = r.to_integer().try_into().map_err(|_| Error::Parse {
                        pos: self.here(),
                        msg: "exponent too large".into(),
                    })?;
                    Ok(base.pow(k))
                }
                _ => self.err("expected non-negative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MultiPoly> {
        match self.peek().cloned() {
            Some(Tok::Num(r)) => {
                self.pos += 1;
                Ok(MultiPoly::constant(self.nvars, r))
            }
            Some(Tok::Var(v)) => {
                if v >= self.nvars {
                    return self.err(&format!(
                        "variable x{} exceeds the ambient dimension {}",
                        v + 1,
                        self.nvars
                    ));
                }
                self.pos += 1;
                Ok(MultiPoly::var(self.nvars, v))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(e)
            }
            _ => self.err("expected number, variable or '('"),
        }
    }
}

/// Parse a polynomial. With `nvars = None` the ring is sized to the highest
/// variable that appears (at least 1).
pub fn parse_poly(s: &str, nvars: Option<usize>) -> Result<MultiPoly> {
    let toks = lex(s)?;
    let n = match nvars {
        Some(n) => n,
        None => toks
            .iter()
            .filter_map(|t| match t.1 {
                Tok::Var(v) => Some(v + 1),
                _ => None,
            })
            .max()
            .unwrap_or(1),
    };
    if toks.is_empty() {
        return Err(Error::Parse {
            pos: 0,
            msg: "empty polynomial".into(),
        });
    }
    let mut p = Parser {
        toks,
        pos: 0,
        nvars: n,
        end: s.len(),
    };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

/// Parse a rational literal `p`, `-p` or `p/q`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = || Error::Parse {
        pos: 0,
        msg: format!("invalid rational '{s}'"),
    };
    let (neg, body) = match t.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, t),
    };
    let r = match body.split_once('/') {
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: BigInt = b.trim().parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err(bad());
            }
            Rational::new(a, b)
        }
        None => {
            if let Ok(a) = body.parse::<BigInt>() {
                Rational::from_integer(a)
            } else {
                // decimal forms such as 1e-9 or 0.25
                let f: f64 = body.parse().map_err(|_| bad())?;
                Rational::from_float(f).ok_or_else(bad)?
            }
        }
    };
    Ok(if neg { -r } else { r })
}

pub fn rational_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_grammar_examples() {
        let f = parse_poly("x1^2*x3 - x2^2", None).unwrap();
        assert_eq!(f.nvars(), 3);
        assert_eq!(f.to_string(), "x1^2*x3 - x2^2");
        let g = parse_poly(" 3/4 * ( x1 + 1 ) ^ 2 ", Some(2)).unwrap();
        assert_eq!(g.to_string(), "3/4*x1^2 + 3/2*x1 + 3/4");
        assert_eq!(parse_poly("-x1", None).unwrap().to_string(), "-x1");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(parse_poly("x1 +", None).is_err());
        assert!(parse_poly("x0", None).is_err());
        assert!(parse_poly("x3", Some(2)).is_err());
        assert!(parse_poly("1/0", None).is_err());
        assert!(parse_poly("x1^x2", None).is_err());
        assert!(parse_poly("", None).is_err());
    }

    #[test]
    fn display_roundtrip() {
        for s in ["x1^2 + x2^2 - 1", "-2/3*x1*x2 + 5", "x3^4 - x1"] {
            let p = parse_poly(s, Some(3)).unwrap();
            assert_eq!(parse_poly(&p.to_string(), Some(3)).unwrap(), p);
        }
    }

    #[test]
    fn rationals() {
        assert_eq!(rational_to_string(&parse_rational("-6/4").unwrap()), "-3/2");
        assert_eq!(rational_to_string(&parse_rational("7").unwrap()), "7");
        assert_eq!(rational_to_string(&parse_rational("0.25").unwrap()), "1/4");
        assert!(parse_rational("a/b").is_err());
    }
}
