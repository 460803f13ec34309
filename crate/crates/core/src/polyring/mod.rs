//! Univariate polynomials over a [`FieldSpec`], their factorization, and the
//! bivariate container F_q[t][x].

mod factor;
pub(crate) mod fastmul;
mod frac;
mod xt;

use std::fmt;

use crate::error::{Error, Result};
use crate::ffield::{Embedding, Fe, FieldSpec};
use crate::text;

pub use factor::{roots_in_extension, DegreeBlock};
pub use frac::FracT;
pub use xt::{Discriminant, XTPoly};
pub(crate) use xt::{tpoly_text, xt_term_text};

/// Dense univariate polynomial, constant term first, with no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    field: FieldSpec,
    coeffs: Vec<Fe>,
}

/// A polynomial in t over F_q; same representation as [`UniPoly`].
pub type TPoly = UniPoly;

fn to_u64(v: &[Fe]) -> Vec<u64> {
    v.iter().map(|c| c.0).collect()
}

fn from_u64(v: Vec<u64>) -> Vec<Fe> {
    v.into_iter().map(Fe).collect()
}

impl UniPoly {
    pub fn new(field: &FieldSpec, mut coeffs: Vec<Fe>) -> UniPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &FieldSpec) -> UniPoly {
        UniPoly::new(field, Vec::new())
    }

    pub fn one(field: &FieldSpec) -> UniPoly {
        UniPoly::new(field, vec![field.one()])
    }

    /// The variable itself.
    pub fn x(field: &FieldSpec) -> UniPoly {
        UniPoly::new(field, vec![field.zero(), field.one()])
    }

    pub fn constant(field: &FieldSpec, c: Fe) -> UniPoly {
        UniPoly::new(field, vec![c])
    }

    pub fn monomial(field: &FieldSpec, c: Fe, degree: usize) -> UniPoly {
        let mut coeffs = vec![Fe::ZERO; degree + 1];
        coeffs[degree] = c;
        UniPoly::new(field, coeffs)
    }

    /// Builds a polynomial from integer coefficients taken modulo p.
    pub fn from_u64s(field: &FieldSpec, coeffs: &[u64]) -> UniPoly {
        UniPoly::new(
            field,
            coeffs.iter().map(|&c| field.from_int((c % field.p()) as i64)).collect(),
        )
    }

    /// Parses a polynomial in `var` with integer coefficients.
    pub fn parse(field: &FieldSpec, src: &str, var: char) -> Result<UniPoly> {
        let sparse = text::parse_sparse(src, &[var], field.p())?;
        let deg = sparse.keys().map(|e| e[0] as usize).max().unwrap_or(0);
        let mut coeffs = vec![Fe::ZERO; deg + 1];
        for (e, c) in sparse {
            coeffs[e[0] as usize] = field.from_int(c as i64);
        }
        Ok(UniPoly::new(field, coeffs))
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Fe> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Fe {
        self.coeffs.get(i).copied().unwrap_or(Fe::ZERO)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == self.field.one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> Fe {
        self.coeffs.last().copied().unwrap_or(Fe::ZERO)
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    fn check(&self, other: &UniPoly) {
        assert!(
            self.field == other.field,
            "polynomials over different fields: {} vs {}",
            self.field,
            other.field
        );
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        self.check(other);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.add(self.coeff(i), other.coeff(i))).collect();
        UniPoly::new(f, coeffs)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.check(other);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| f.sub(self.coeff(i), other.coeff(i))).collect();
        UniPoly::new(f, coeffs)
    }

    pub fn neg(&self) -> UniPoly {
        let f = &self.field;
        UniPoly::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        self.check(other);
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(&self.field);
        }
        let f = &self.field;
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        let coeffs = if f.is_prime_field() {
            from_u64(fastmul::mul(&to_u64(&self.coeffs), &to_u64(&other.coeffs), f.p()))
        } else {
            f.mul_trunc(&self.coeffs, &other.coeffs, n)
        };
        UniPoly::new(f, coeffs)
    }

    /// Product truncated below degree `n`.
    pub fn mul_trunc(&self, other: &UniPoly, n: usize) -> UniPoly {
        self.check(other);
        let f = &self.field;
        let coeffs = if f.is_prime_field() {
            from_u64(fastmul::mul_trunc(&to_u64(&self.coeffs), &to_u64(&other.coeffs), n, f.p()))
        } else {
            f.mul_trunc(&self.coeffs, &other.coeffs, n)
        };
        UniPoly::new(f, coeffs)
    }

    pub fn scale(&self, c: Fe) -> UniPoly {
        let f = &self.field;
        if c.is_zero() {
            return UniPoly::zero(f);
        }
        UniPoly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Multiplies by var^k.
    pub fn shift(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Fe::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        UniPoly::new(&self.field, coeffs)
    }

    /// Keeps the terms of degree < n.
    pub fn truncate(&self, n: usize) -> UniPoly {
        UniPoly::new(&self.field, self.coeffs[..self.coeffs.len().min(n)].to_vec())
    }

    pub fn pow(&self, mut e: u64) -> UniPoly {
        let mut result = UniPoly::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn divmod(&self, d: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        self.check(d);
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        if self.coeffs.len() < d.coeffs.len() {
            return Ok((UniPoly::zero(f), self.clone()));
        }
        if f.is_prime_field() {
            let (q, r) = fastmul::divmod(&to_u64(&self.coeffs), &to_u64(&d.coeffs), f.p());
            return Ok((UniPoly::new(f, from_u64(q)), UniPoly::new(f, from_u64(r))));
        }
        let dd = d.coeffs.len() - 1;
        let inv = f.inv(d.lc())?;
        let mut rem = self.coeffs.clone();
        let mut q = vec![Fe::ZERO; rem.len() - dd];
        for i in (0..q.len()).rev() {
            let top = rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let c = f.mul(top, inv);
            q[i] = c;
            for j in 0..=dd {
                rem[i + j] = f.sub(rem[i + j], f.mul(c, d.coeffs[j]));
            }
        }
        rem.truncate(dd);
        Ok((UniPoly::new(f, q), UniPoly::new(f, rem)))
    }

    pub fn rem(&self, d: &UniPoly) -> Result<UniPoly> {
        Ok(self.divmod(d)?.1)
    }

    /// Quotient of an exact division.
    pub fn div_exact(&self, d: &UniPoly) -> Result<UniPoly> {
        let (q, r) = self.divmod(d)?;
        if !r.is_zero() {
            return Err(Error::InexactDivision);
        }
        Ok(q)
    }

    /// Scales to leading coefficient 1 (the zero polynomial is returned as is).
    pub fn monic(&self) -> UniPoly {
        if self.is_zero() || self.lc() == self.field.one() {
            return self.clone();
        }
        let inv = self.field.inv(self.lc()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    /// Monic greatest common divisor; gcd(0, 0) = 0.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        self.check(other);
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> UniPoly {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.from_int((i as u64 % f.p()) as i64)))
            .collect();
        UniPoly::new(f, coeffs)
    }

    pub fn eval(&self, x: Fe) -> Fe {
        let f = &self.field;
        self.coeffs.iter().rev().fold(Fe::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// Substitutes `g` for the variable.
    pub fn compose(&self, g: &UniPoly) -> UniPoly {
        let f = &self.field;
        let mut acc = UniPoly::zero(f);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&UniPoly::constant(f, c));
        }
        acc
    }

    pub fn mul_mod(&self, other: &UniPoly, m: &UniPoly) -> UniPoly {
        self.mul(other).rem(m).expect("nonzero modulus")
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u128, m: &UniPoly) -> UniPoly {
        let mut result = UniPoly::one(&self.field).rem(m).expect("nonzero modulus");
        let mut base = self.rem(m).expect("nonzero modulus");
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul_mod(&base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, m);
            }
        }
        result
    }

    /// Applies `c ↦ c^{p^e}` to every coefficient.
    pub fn frobenius_coeffs(&self, e: u32) -> UniPoly {
        let f = &self.field;
        UniPoly::new(f, self.coeffs.iter().map(|&c| f.frobenius(c, e)).collect())
    }

    /// Transports the coefficients along a field embedding.
    pub fn map(&self, emb: &Embedding) -> UniPoly {
        assert!(emb.source() == &self.field, "embedding source differs from coefficient field");
        UniPoly::new(emb.target(), self.coeffs.iter().map(|&c| emb.map(c)).collect())
    }

    /// Resultant by the Euclidean algorithm.
    pub fn resultant(&self, other: &UniPoly) -> Fe {
        self.check(other);
        let f = &self.field;
        if self.is_zero() || other.is_zero() {
            return Fe::ZERO;
        }
        let mut a = self.clone();
        let mut b = other.clone();
        let mut acc = f.one();
        loop {
            let da = a.degree().expect("nonzero");
            let db = b.degree().expect("nonzero");
            if db == 0 {
                return f.mul(acc, f.pow(b.lc(), da as u128));
            }
            let r = a.rem(&b).expect("nonzero divisor");
            if r.is_zero() {
                return Fe::ZERO;
            }
            let dr = r.degree().expect("nonzero");
            if da % 2 == 1 && db % 2 == 1 {
                acc = f.neg(acc);
            }
            acc = f.mul(acc, f.pow(b.lc(), (da - dr) as u128));
            a = b;
            b = r;
        }
    }

    /// Text with decreasing degree in the given variable, e.g. `x^3 + 2*x + 1`.
    pub fn to_string_in(&self, var: char) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let f = &self.field;
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            parts.push(format_term(f, c, &monomial_text(var, i)));
        }
        parts.join(" + ")
    }
}

pub(crate) fn monomial_text(var: char, e: usize) -> String {
    match e {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{e}"),
    }
}

/// Formats `c*mono`, wrapping compound coefficients in parentheses.
pub(crate) fn format_term(f: &FieldSpec, c: Fe, mono: &str) -> String {
    let ctext = f.format(c);
    if mono.is_empty() {
        return if ctext.contains('+') { format!("({ctext})") } else { ctext };
    }
    if c == f.one() {
        return mono.to_string();
    }
    if ctext.contains('+') {
        format!("({ctext})*{mono}")
    } else {
        format!("{ctext}*{mono}")
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_string_in('x'))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self.to_string_in('x'), self.field)
    }
}

/// Operation selector for [`poly_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Mul,
    Div,
    Rem,
    Gcd,
}

/// Checked binary arithmetic on univariate polynomials.
pub fn poly_arith(f: &UniPoly, g: &UniPoly, op: PolyOp) -> Result<UniPoly> {
    if f.field() != g.field() {
        return Err(Error::FieldMismatch {
            left: f.field().tag(),
            right: g.field().tag(),
        });
    }
    Ok(match op {
        PolyOp::Add => f.add(g),
        PolyOp::Mul => f.mul(g),
        PolyOp::Div => f.divmod(g)?.0,
        PolyOp::Rem => f.divmod(g)?.1,
        PolyOp::Gcd => f.gcd(g),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    #[test]
    fn gcd_example() {
        let f = f2();
        let a = UniPoly::parse(&f, "x^2+x", 'x').unwrap();
        let b = UniPoly::parse(&f, "x", 'x').unwrap();
        assert_eq!(a.gcd(&b), b);
        assert!(poly_arith(&a, &b, PolyOp::Gcd).unwrap() == b);
    }

    #[test]
    fn printing() {
        let f = FieldSpec::prime(3).unwrap();
        let a = UniPoly::parse(&f, "x^11+2*x^2-1", 'x').unwrap();
        assert_eq!(a.to_string(), "x^11 + 2*x^2 + 2");
        let f8 = FieldSpec::new(2, 3, Some(&[1, 0, 1, 1])).unwrap();
        let b = UniPoly::new(&f8, vec![f8.gen(), f8.add(f8.gen(), f8.one()), f8.one()]);
        assert_eq!(b.to_string(), "x^2 + (z+1)*x + z");
    }

    #[test]
    fn resultant_examples() {
        let f = FieldSpec::prime(3).unwrap();
        // res(x^2 - 1, x - 1) = 0; res(x^2+1, x) = 1
        let a = UniPoly::parse(&f, "x^2-1", 'x').unwrap();
        assert!(a.resultant(&UniPoly::parse(&f, "x-1", 'x').unwrap()).is_zero());
        let b = UniPoly::parse(&f, "x^2+1", 'x').unwrap();
        assert_eq!(b.resultant(&UniPoly::x(&f)), f.one());
    }

    #[test]
    fn divmod_extension_field() {
        let f8 = FieldSpec::new(2, 3, Some(&[1, 0, 1, 1])).unwrap();
        let a = UniPoly::new(&f8, (0..8).map(|i| Fe(i % 7 + 1)).collect());
        let b = UniPoly::new(&f8, vec![Fe(3), Fe(5), Fe(7)]);
        let (q, r) = a.divmod(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < 2);
    }
}
