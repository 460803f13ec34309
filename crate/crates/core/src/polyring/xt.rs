//! Polynomials in x with coefficients in F_q[t].

use std::fmt;

use super::{format_term, monomial_text, TPoly, UniPoly};
use crate::error::{Error, Result};
use crate::ffield::{Embedding, Fe, FieldSpec, FqElem};
use crate::text;

/// f(x, t) stored densely by x-degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct XTPoly {
    field: FieldSpec,
    xcoeffs: Vec<TPoly>,
}

/// Outcome of a discriminant computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Discriminant {
    Value(TPoly),
    /// ∂f/∂x vanishes identically.
    Inseparable,
}

/// A t-polynomial in increasing degree, e.g. `t + t^24`.
pub(crate) fn tpoly_text(c: &TPoly) -> String {
    if c.is_zero() {
        return "0".to_string();
    }
    let f = c.field();
    c.coeffs()
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(j, &a)| format_term(f, a, &monomial_text('t', j)))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// One `c(t)*mono` term in canonical form.
pub(crate) fn xt_term_text(field: &FieldSpec, c: &TPoly, mono: &str) -> String {
    let nz: Vec<usize> = (0..c.coeffs().len()).filter(|&j| !c.coeff(j).is_zero()).collect();
    if nz.len() == 1 {
        let j = nz[0];
        let ctext = format_term(field, c.coeff(j), &monomial_text('t', j));
        match (mono.is_empty(), ctext.as_str()) {
            (true, _) => ctext,
            (false, "1") => mono.to_string(),
            (false, _) => format!("{ctext}*{mono}"),
        }
    } else if mono.is_empty() {
        tpoly_text(c)
    } else {
        format!("({})*{mono}", tpoly_text(c))
    }
}

impl XTPoly {
    pub fn new(field: &FieldSpec, mut xcoeffs: Vec<TPoly>) -> XTPoly {
        while xcoeffs.last().is_some_and(|c| c.is_zero()) {
            xcoeffs.pop();
        }
        XTPoly {
            field: field.clone(),
            xcoeffs,
        }
    }

    pub fn zero(field: &FieldSpec) -> XTPoly {
        XTPoly::new(field, Vec::new())
    }

    pub fn x(field: &FieldSpec) -> XTPoly {
        XTPoly::new(field, vec![UniPoly::zero(field), UniPoly::one(field)])
    }

    /// A polynomial with no x.
    pub fn from_tpoly(c: TPoly) -> XTPoly {
        let field = c.field().clone();
        XTPoly::new(&field, vec![c])
    }

    /// Parses text such as `x^11+t*x^2-1` with integer coefficients.
    pub fn parse(field: &FieldSpec, src: &str) -> Result<XTPoly> {
        let sparse = text::parse_sparse(src, &['x', 't'], field.p())?;
        let xdeg = sparse.keys().map(|e| e[0] as usize).max().unwrap_or(0);
        let mut dense: Vec<Vec<Fe>> = vec![Vec::new(); xdeg + 1];
        for (e, c) in sparse {
            let (i, j) = (e[0] as usize, e[1] as usize);
            if dense[i].len() <= j {
                dense[i].resize(j + 1, Fe::ZERO);
            }
            dense[i][j] = field.from_int(c as i64);
        }
        Ok(XTPoly::new(
            field,
            dense.into_iter().map(|c| UniPoly::new(field, c)).collect(),
        ))
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn xcoeffs(&self) -> &[TPoly] {
        &self.xcoeffs
    }

    pub fn coeff(&self, i: usize) -> TPoly {
        self.xcoeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| UniPoly::zero(&self.field))
    }

    pub fn degree_x(&self) -> Option<usize> {
        self.xcoeffs.len().checked_sub(1)
    }

    /// Largest t-degree among the coefficients (0 for the zero polynomial).
    pub fn degree_t(&self) -> usize {
        self.xcoeffs
            .iter()
            .filter_map(|c| c.degree())
            .max()
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.xcoeffs.is_empty()
    }

    /// Leading x-coefficient.
    pub fn lc_x(&self) -> TPoly {
        self.xcoeffs
            .last()
            .cloned()
            .unwrap_or_else(|| UniPoly::zero(&self.field))
    }

    pub fn is_monic_x(&self) -> bool {
        self.lc_x().is_one()
    }

    pub fn add(&self, other: &XTPoly) -> XTPoly {
        let n = self.xcoeffs.len().max(other.xcoeffs.len());
        XTPoly::new(&self.field, (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect())
    }

    pub fn sub(&self, other: &XTPoly) -> XTPoly {
        let n = self.xcoeffs.len().max(other.xcoeffs.len());
        XTPoly::new(&self.field, (0..n).map(|i| self.coeff(i).sub(&other.coeff(i))).collect())
    }

    pub fn neg(&self) -> XTPoly {
        XTPoly::new(&self.field, self.xcoeffs.iter().map(|c| c.neg()).collect())
    }

    pub fn mul(&self, other: &XTPoly) -> XTPoly {
        if self.is_zero() || other.is_zero() {
            return XTPoly::zero(&self.field);
        }
        let mut out = vec![UniPoly::zero(&self.field); self.xcoeffs.len() + other.xcoeffs.len() - 1];
        for (i, a) in self.xcoeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.xcoeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        XTPoly::new(&self.field, out)
    }

    /// Multiplies every coefficient by a t-polynomial.
    pub fn scale_t(&self, c: &TPoly) -> XTPoly {
        XTPoly::new(&self.field, self.xcoeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn shift_x(&self, k: usize) -> XTPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![UniPoly::zero(&self.field); k];
        v.extend(self.xcoeffs.iter().cloned());
        XTPoly::new(&self.field, v)
    }

    pub fn derivative_x(&self) -> XTPoly {
        let f = &self.field;
        XTPoly::new(
            f,
            self.xcoeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(f.from_int((i as u64 % f.p()) as i64)))
                .collect(),
        )
    }

    /// Substitutes a t-polynomial for x.
    pub fn eval_x(&self, x0: &TPoly) -> TPoly {
        let mut acc = UniPoly::zero(&self.field);
        for c in self.xcoeffs.iter().rev() {
            acc = acc.mul(x0).add(c);
        }
        acc
    }

    /// Evaluates every coefficient at t = t0 (same field).
    pub fn eval_t(&self, t0: Fe) -> UniPoly {
        UniPoly::new(&self.field, self.xcoeffs.iter().map(|c| c.eval(t0)).collect())
    }

    /// f(x, t0) over the field of t0.
    pub fn specialize(&self, t0: &FqElem) -> Result<UniPoly> {
        if t0.field() == &self.field {
            return Ok(self.eval_t(t0.value()));
        }
        let emb = Embedding::find(&self.field, t0.field())?;
        Ok(self.map(&emb).eval_t(t0.value()))
    }

    /// Transports the coefficients along a field embedding.
    pub fn map(&self, emb: &Embedding) -> XTPoly {
        XTPoly::new(emb.target(), self.xcoeffs.iter().map(|c| c.map(emb)).collect())
    }

    /// Division with remainder by a polynomial whose leading x-coefficient is
    /// a nonzero constant.
    pub fn divmod(&self, g: &XTPoly) -> Result<(XTPoly, XTPoly)> {
        let lc = g.lc_x();
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if !lc.is_constant() {
            return Err(Error::NonInvertibleLeading);
        }
        let inv = self.field.inv(lc.coeff(0))?;
        self.divide(g, |top| Ok(top.scale(inv)))
    }

    /// Quotient of an exact division; fails on a nonzero remainder or an
    /// inexact leading-coefficient division.
    pub fn div_exact(&self, g: &XTPoly) -> Result<XTPoly> {
        if g.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let lc = g.lc_x();
        let (q, r) = self.divide(g, |top| top.div_exact(&lc))?;
        if !r.is_zero() {
            return Err(Error::InexactDivision);
        }
        Ok(q)
    }

    fn divide(
        &self,
        g: &XTPoly,
        lead: impl Fn(&TPoly) -> Result<TPoly>,
    ) -> Result<(XTPoly, XTPoly)> {
        let dg = g.degree_x().expect("nonzero divisor");
        let mut rem = self.xcoeffs.clone();
        if rem.len() <= dg {
            return Ok((XTPoly::zero(&self.field), self.clone()));
        }
        let mut q = vec![UniPoly::zero(&self.field); rem.len() - dg];
        for i in (0..q.len()).rev() {
            let top = &rem[i + dg];
            if top.is_zero() {
                continue;
            }
            let c = lead(top)?;
            for j in 0..=dg {
                if !g.xcoeffs[j].is_zero() {
                    rem[i + j] = rem[i + j].sub(&c.mul(&g.xcoeffs[j]));
                }
            }
            q[i] = c;
        }
        rem.truncate(dg);
        Ok((XTPoly::new(&self.field, q), XTPoly::new(&self.field, rem)))
    }

    /// disc_x(f) = (-1)^{n(n-1)/2} Res(f, ∂f/∂x) / lc_x(f).
    pub fn discriminant(&self) -> Result<Discriminant> {
        let n = match self.degree_x() {
            Some(n) if n >= 1 => n,
            _ => {
                return Err(Error::InvalidArgument(
                    "discriminant needs x-degree at least 1".into(),
                ))
            }
        };
        let d = self.derivative_x();
        if d.is_zero() {
            return Ok(Discriminant::Inseparable);
        }
        if n == 1 {
            return Ok(Discriminant::Value(UniPoly::one(&self.field)));
        }
        // Sylvester matrix of f (degree n) and f' (formal degree n-1).
        let size = 2 * n - 1;
        let zero = UniPoly::zero(&self.field);
        let mut m = vec![vec![zero.clone(); size]; size];
        for r in 0..n - 1 {
            for j in 0..=n {
                m[r][r + j] = self.coeff(n - j);
            }
        }
        for r in 0..n {
            for j in 0..n {
                m[n - 1 + r][r + j] = d.coeff(n - 1 - j);
            }
        }
        let res = det_bareiss(m);
        let mut disc = res.div_exact(&self.lc_x())?;
        if (n * (n - 1) / 2) % 2 == 1 {
            disc = disc.neg();
        }
        Ok(Discriminant::Value(disc))
    }
}

/// Determinant over F_q[t] by fraction-free elimination.
pub(crate) fn det_bareiss(mut m: Vec<Vec<TPoly>>) -> TPoly {
    let n = m.len();
    assert!(n > 0, "determinant of an empty matrix");
    let field = m[0][0].field().clone();
    let mut sign_flip = false;
    let mut prev = UniPoly::one(&field);
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return UniPoly::zero(&field),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
            m[i][k] = UniPoly::zero(&field);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_flip {
        det.neg()
    } else {
        det
    }
}

impl fmt::Display for XTPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (i, c) in self.xcoeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let text = xt_term_text(&self.field, c, &monomial_text('x', i));
            parts.push(text);
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for XTPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self, self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xt(p: u64, s: &str) -> XTPoly {
        XTPoly::parse(&FieldSpec::prime(p).unwrap(), s).unwrap()
    }

    #[test]
    fn canonical_printing_round_trips() {
        for (p, s) in [
            (2, "x^24 + x + t"),
            (3, "x^11 + t*x^2 + 2"),
            (2, "(1 + t)*x^2 + t^64*x + 1 + t"),
            (3, "2*t^5*x^57 + x"),
        ] {
            let f = xt(p, s);
            assert_eq!(f.to_string(), s);
            assert_eq!(xt(p, &f.to_string()), f);
        }
        assert_eq!(xt(3, "x^11+t*x^2-1").to_string(), "x^11 + t*x^2 + 2");
    }

    #[test]
    fn discriminant_examples() {
        let d = xt(3, "x^11+t*x^2-1").discriminant().unwrap();
        assert_eq!(d, Discriminant::Value(UniPoly::one(&FieldSpec::prime(3).unwrap())));
        let d = xt(3, "x^2+t").discriminant().unwrap();
        let f3 = FieldSpec::prime(3).unwrap();
        assert_eq!(d, Discriminant::Value(UniPoly::parse(&f3, "2*t", 't').unwrap()));
        let d = xt(2, "x^2+x+t").discriminant().unwrap();
        assert_eq!(d, Discriminant::Value(UniPoly::one(&FieldSpec::prime(2).unwrap())));
        assert_eq!(xt(2, "x^4+t*x^2").discriminant().unwrap(), Discriminant::Inseparable);
    }

    #[test]
    fn evaluation_and_specialization() {
        let f = xt(2, "x^24+x+t");
        let f2 = f.field().clone();
        assert_eq!(f.eval_x(&UniPoly::one(&f2)), UniPoly::parse(&f2, "t", 't').unwrap());
        let s0 = f.eval_t(Fe(0));
        assert_eq!(s0, UniPoly::parse(&f2, "x^24+x", 'x').unwrap());
        let f8 = FieldSpec::new(2, 3, Some(&[1, 0, 1, 1])).unwrap();
        let theta = FqElem::new(&f8, f8.gen());
        let s = f.specialize(&theta).unwrap();
        assert_eq!(s.distinct_degree_shape().unwrap(), vec![(1, 1), (23, 1)]);
    }

    #[test]
    fn division() {
        let f = xt(2, "x^7+t*x+1");
        let g = xt(2, "x^3+t*x+1");
        let (q, r) = f.divmod(&g).unwrap();
        assert_eq!(q.mul(&g).add(&r), f);
        let prod = f.mul(&xt(2, "t*x+1"));
        assert_eq!(prod.div_exact(&xt(2, "t*x+1")).unwrap(), f);
        assert_eq!(prod.div_exact(&xt(2, "t*x+t")), Err(Error::InexactDivision));
        assert_eq!(f.divmod(&xt(2, "t*x+1")).unwrap_err(), Error::NonInvertibleLeading);
    }
}
