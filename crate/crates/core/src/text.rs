//! Recursive-descent parser for polynomial text over a prime field.
//!
//! Grammar (whitespace ignored):
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (['*'] factor)*
//! factor := atom ['^' uint]
//! atom   := uint | var | '(' expr ')'
//! ```
//!
//! Integer literals are reduced modulo the characteristic. The result is a
//! sparse map from exponent vectors (one slot per declared variable) to
//! nonzero residues.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

/// Largest exponent accepted by the parser.
pub const MAX_EXPONENT: u64 = 1 << 24;

pub(crate) type Sparse = BTreeMap<Vec<u32>, u64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Num(u64, u128),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Lexer {
    toks: Vec<(Tok, usize)>,
}

fn lex(src: &str, vars: &[char], p: u64) -> Result<Lexer> {
    let mut toks = Vec::new();
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        match c {
            ' ' | '\t' | '\n' | '\r' => {
                i += 1;
            }
            '+' => {
                toks.push((Tok::Plus, pos));
                i += 1;
            }
            '-' => {
                toks.push((Tok::Minus, pos));
                i += 1;
            }
            '*' => {
                toks.push((Tok::Star, pos));
                i += 1;
            }
            '^' => {
                toks.push((Tok::Caret, pos));
                i += 1;
            }
            '(' => {
                toks.push((Tok::LParen, pos));
                i += 1;
            }
            ')' => {
                toks.push((Tok::RParen, pos));
                i += 1;
            }
            d if d.is_ascii_digit() => {
                let mut residue: u64 = 0;
                let mut exact: u128 = 0;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    let digit = chars[i].1.to_digit(10).unwrap_or(0) as u64;
                    residue = (residue * 10 + digit) % p;
                    exact = exact.saturating_mul(10).saturating_add(digit as u128);
                    i += 1;
                }
                toks.push((Tok::Num(residue, exact), pos));
            }
            v => match vars.iter().position(|&w| w == v) {
                Some(idx) => {
                    toks.push((Tok::Var(idx), pos));
                    i += 1;
                }
                None => {
                    return Err(Error::Parse {
                        pos,
                        msg: format!("unexpected character '{v}'"),
                    })
                }
            },
        }
    }
    Ok(Lexer { toks })
}

struct Parser<'a> {
    toks: &'a [(Tok, usize)],
    at: usize,
    end: usize,
    nvars: usize,
    p: u64,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.at).map(|t| t.0)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map(|t| t.1).unwrap_or(self.end)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn constant(&self, c: u64) -> Sparse {
        let mut m = Sparse::new();
        if c % self.p != 0 {
            m.insert(vec![0; self.nvars], c % self.p);
        }
        m
    }

    fn expr(&mut self) -> Result<Sparse> {
        let mut acc = Sparse::new();
        let mut negate = false;
        match self.peek() {
            Some(Tok::Plus) => self.at += 1,
            Some(Tok::Minus) => {
                negate = true;
                self.at += 1;
            }
            _ => {}
        }
        loop {
            let term = self.term()?;
            if negate {
                add_into(&mut acc, &neg(&term, self.p), self.p);
            } else {
                add_into(&mut acc, &term, self.p);
            }
            match self.peek() {
                Some(Tok::Plus) => {
                    negate = false;
                    self.at += 1;
                }
                Some(Tok::Minus) => {
                    negate = true;
                    self.at += 1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Sparse> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                    let f = self.factor()?;
                    acc = mul(&acc, &f, self.p);
                }
                Some(Tok::Num(..)) | Some(Tok::Var(_)) | Some(Tok::LParen) => {
                    let f = self.factor()?;
                    acc = mul(&acc, &f, self.p);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Sparse> {
        let base = self.atom()?;
        if self.peek() == Some(Tok::Caret) {
            self.at += 1;
            match self.peek() {
                Some(Tok::Num(_, e)) => {
                    if e > MAX_EXPONENT as u128 {
                        return self.err(format!("exponent {e} exceeds {MAX_EXPONENT}"));
                    }
                    self.at += 1;
                    Ok(pow(&base, e as u64, self.nvars, self.p))
                }
                _ => self.err("expected a nonnegative integer exponent after '^'"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Sparse> {
        match self.peek() {
            Some(Tok::Num(r, _)) => {
                self.at += 1;
                Ok(self.constant(r))
            }
            Some(Tok::Var(v)) => {
                self.at += 1;
                let mut e = vec![0u32; self.nvars];
                e[v] = 1;
                let mut m = Sparse::new();
                m.insert(e, 1 % self.p);
                Ok(m)
            }
            Some(Tok::LParen) => {
                self.at += 1;
                let inner = self.expr()?;
                if self.peek() != Some(Tok::RParen) {
                    return self.err("expected ')'");
                }
                self.at += 1;
                Ok(inner)
            }
            Some(_) => self.err("expected a number, a variable or '('"),
            None => self.err("unexpected end of input"),
        }
    }
}

fn add_into(acc: &mut Sparse, other: &Sparse, p: u64) {
    for (e, &c) in other {
        let slot = acc.entry(e.clone()).or_insert(0);
        *slot = (*slot + c) % p;
        if *slot == 0 {
            acc.remove(e);
        }
    }
}

fn neg(a: &Sparse, p: u64) -> Sparse {
    a.iter().map(|(e, &c)| (e.clone(), (p - c) % p)).collect()
}

fn mul(a: &Sparse, b: &Sparse, p: u64) -> Sparse {
    let mut out = Sparse::new();
    for (ea, &ca) in a {
        for (eb, &cb) in b {
            let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            let slot = out.entry(e).or_insert(0);
            *slot = (*slot + ca * cb) % p;
        }
    }
    out.retain(|_, c| *c != 0);
    out
}

fn pow(base: &Sparse, mut e: u64, nvars: usize, p: u64) -> Sparse {
    // Monomials are raised directly so x^59049 does not cost 16 squarings of
    // a growing sum.
    if base.len() == 1 {
        let (exps, &c) = base.iter().next().expect("one term");
        let mut coef = 1u64;
        let mut b = c;
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                coef = coef * b % p;
            }
            b = b * b % p;
            k >>= 1;
        }
        let mut m = Sparse::new();
        if coef != 0 {
            m.insert(exps.iter().map(|&x| x * e as u32).collect(), coef);
        }
        return m;
    }
    let mut result = Sparse::new();
    result.insert(vec![0; nvars], 1 % p);
    let mut b = base.clone();
    while e > 0 {
        if e & 1 == 1 {
            result = mul(&result, &b, p);
        }
        e >>= 1;
        if e > 0 {
            b = mul(&b, &b, p);
        }
    }
    result
}

/// Parses `src` as a polynomial in `vars` with coefficients in F_p.
pub(crate) fn parse_sparse(src: &str, vars: &[char], p: u64) -> Result<Sparse> {
    let lexer = lex(src, vars, p)?;
    if lexer.toks.is_empty() {
        return Err(Error::Parse {
            pos: 0,
            msg: "empty polynomial".into(),
        });
    }
    let mut parser = Parser {
        toks: &lexer.toks,
        at: 0,
        end: src.len(),
        nvars: vars.len(),
        p,
    };
    let out = parser.expr()?;
    if parser.at != lexer.toks.len() {
        return parser.err("unexpected trailing input");
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_paper_inputs() {
        let m = parse_sparse("x^11+t*x^2-1", &['x', 't'], 3).unwrap();
        assert_eq!(m.get(&vec![11, 0]), Some(&1));
        assert_eq!(m.get(&vec![2, 1]), Some(&1));
        assert_eq!(m.get(&vec![0, 0]), Some(&2));
        assert_eq!(m.len(), 3);
    }

    #[test]
    fn implicit_products_and_parens() {
        let m = parse_sparse("2 t^5 x^57 + (1+t)^2", &['x', 't'], 3).unwrap();
        assert_eq!(m.get(&vec![57, 5]), Some(&2));
        assert_eq!(m.get(&vec![0, 1]), Some(&2));
        assert_eq!(m.get(&vec![0, 2]), Some(&1));
    }

    #[test]
    fn cancellation_in_char_two() {
        let m = parse_sparse("x + x + t", &['x', 't'], 2).unwrap();
        assert_eq!(m.len(), 1);
    }

    #[test]
    fn rejects_bad_input_with_position() {
        match parse_sparse("x^^", &['x', 't'], 2) {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_sparse("x + y", &['x', 't'], 2),
            Err(Error::Parse { pos: 4, .. })
        ));
        assert!(parse_sparse("", &['x'], 2).is_err());
        assert!(parse_sparse("(x+1", &['x'], 2).is_err());
    }
}
