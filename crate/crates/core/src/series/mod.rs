//! Truncated Taylor and Puiseux series over a finite field.
//!
//! A [`TruncSeries`] with ramification index e stores the coefficients of
//! t^{(lowexp + j)/e} for lowexp ≤ lowexp + j < prec; everything at or above
//! t^{prec/e} is unknown.

mod constructions;
mod kernel;
mod lang;
mod lift;
mod puiseux;

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ffield::{Embedding, Fe, FieldSpec};
use crate::polyring::{TPoly, XTPoly};

pub use constructions::{
    fano_epsilon, fano_field, fano_series, m11_coeffs, m11_epsilon, m11_field, m11_series,
    m11_series_closed_form, mathieu_field, mathieu_series,
};
pub(crate) use kernel::mul_trunc;
pub use lang::{omega_member, ExponentLanguage, LanguageKind};
pub use lift::{all_taylor_roots, newton_lift, NonLiftable, TaylorRoots};
pub use puiseux::{puiseux_expand, Branch, Expansion, ExpansionPoint, WildReport};

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

fn lcm(a: u32, b: u32) -> u32 {
    (a as i64 / gcd(a as i64, b as i64) * b as i64) as u32
}

/// A truncated series in t^{1/ram}.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruncSeries {
    field: FieldSpec,
    ram: u32,
    lowexp: i64,
    coeffs: Vec<Fe>,
    prec: i64,
}

impl TruncSeries {
    /// Coefficients of t^{(lowexp+j)/ram}; the precision is lowexp + len.
    pub fn new(field: &FieldSpec, ram: u32, lowexp: i64, coeffs: Vec<Fe>) -> Result<TruncSeries> {
        if coeffs.is_empty() {
            return Err(Error::EmptyPrecision);
        }
        if ram == 0 {
            return Err(Error::InvalidArgument("ramification index must be positive".into()));
        }
        let prec = lowexp + coeffs.len() as i64;
        Ok(TruncSeries {
            field: field.clone(),
            ram,
            lowexp,
            coeffs,
            prec,
        })
    }

    /// A Taylor series from its first coefficients; precision = length.
    pub fn taylor(field: &FieldSpec, coeffs: Vec<Fe>) -> Result<TruncSeries> {
        TruncSeries::new(field, 1, 0, coeffs)
    }

    /// A polynomial in t viewed as a series known below t^prec.
    pub fn from_tpoly(c: &TPoly, prec: usize) -> Result<TruncSeries> {
        let mut coeffs: Vec<Fe> = c.coeffs().iter().take(prec).copied().collect();
        coeffs.resize(prec, Fe::ZERO);
        TruncSeries::new(c.field(), 1, 0, coeffs)
    }

    pub fn zero(field: &FieldSpec, prec: usize) -> Result<TruncSeries> {
        TruncSeries::new(field, 1, 0, vec![Fe::ZERO; prec])
    }

    pub fn constant(field: &FieldSpec, c: Fe, prec: usize) -> Result<TruncSeries> {
        let mut coeffs = vec![Fe::ZERO; prec];
        if prec > 0 {
            coeffs[0] = c;
        }
        TruncSeries::new(field, 1, 0, coeffs)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn ram(&self) -> u32 {
        self.ram
    }

    pub fn lowexp(&self) -> i64 {
        self.lowexp
    }

    /// Exclusive precision bound in units of 1/ram.
    pub fn prec(&self) -> i64 {
        self.prec
    }

    pub fn coeffs(&self) -> &[Fe] {
        &self.coeffs
    }

    /// Coefficient of t^{num/ram}; zero below the window, `None` at or
    /// above the precision.
    pub fn coeff(&self, num: i64) -> Option<Fe> {
        if num >= self.prec {
            return None;
        }
        if num < self.lowexp {
            return Some(Fe::ZERO);
        }
        Some(self.coeffs[(num - self.lowexp) as usize])
    }

    /// Numerator of the least exponent with a nonzero coefficient, or the
    /// precision if every known coefficient vanishes.
    pub fn valuation(&self) -> i64 {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            Some(j) => self.lowexp + j as i64,
            None => self.prec,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// Exponent numerators with nonzero coefficients.
    pub fn support(&self) -> Vec<i64> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(j, _)| self.lowexp + j as i64)
            .collect()
    }

    /// Rewrites the series in t^{1/ram} for a multiple `ram` of the current index.
    pub fn refine(&self, ram: u32) -> TruncSeries {
        assert!(ram % self.ram == 0, "refinement {ram} is not a multiple of {}", self.ram);
        let r = (ram / self.ram) as i64;
        if r == 1 {
            return self.clone();
        }
        let lowexp = self.lowexp * r;
        let prec = self.prec * r;
        let mut coeffs = vec![Fe::ZERO; (prec - lowexp) as usize];
        for (j, &c) in self.coeffs.iter().enumerate() {
            coeffs[j * r as usize] = c;
        }
        TruncSeries {
            field: self.field.clone(),
            ram,
            lowexp,
            coeffs,
            prec,
        }
    }

    /// Rewrites with the least possible ramification index.
    pub fn coarsen(&self) -> TruncSeries {
        let mut g = self.ram as i64;
        g = gcd(g, self.prec);
        for n in self.support() {
            g = gcd(g, n);
        }
        if g <= 1 {
            return self.clone();
        }
        let low = self.lowexp.div_euclid(g) * g;
        let low = if low < self.lowexp { low + g } else { low };
        let low = low.min(self.prec - g);
        let coeffs = (0..(self.prec - low) / g)
            .map(|k| self.coeff(low + k * g).unwrap_or(Fe::ZERO))
            .collect();
        TruncSeries {
            field: self.field.clone(),
            ram: self.ram / g as u32,
            lowexp: low / g,
            coeffs,
            prec: self.prec / g,
        }
    }

    fn common(&self, other: &TruncSeries) -> (TruncSeries, TruncSeries) {
        assert!(
            self.field == other.field,
            "series over different fields: {} vs {}",
            self.field,
            other.field
        );
        let e = lcm(self.ram, other.ram);
        (self.refine(e), other.refine(e))
    }

    /// Window [lowexp, prec) with the given bounds, reading known values.
    fn window(&self, lowexp: i64, prec: i64) -> Vec<Fe> {
        (lowexp..prec)
            .map(|n| self.coeff(n).unwrap_or(Fe::ZERO))
            .collect()
    }

    pub fn add(&self, other: &TruncSeries) -> TruncSeries {
        let (a, b) = self.common(other);
        let prec = a.prec.min(b.prec);
        let lowexp = a.lowexp.min(b.lowexp).min(prec - 1);
        let f = &a.field;
        let coeffs = (lowexp..prec)
            .map(|n| f.add(a.coeff(n).unwrap_or(Fe::ZERO), b.coeff(n).unwrap_or(Fe::ZERO)))
            .collect();
        TruncSeries {
            field: a.field.clone(),
            ram: a.ram,
            lowexp,
            coeffs,
            prec,
        }
    }

    pub fn neg(&self) -> TruncSeries {
        let f = &self.field;
        TruncSeries {
            coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect(),
            ..self.clone()
        }
    }

    pub fn sub(&self, other: &TruncSeries) -> TruncSeries {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Fe) -> TruncSeries {
        let f = &self.field;
        TruncSeries {
            coeffs: self.coeffs.iter().map(|&a| f.mul(a, c)).collect(),
            ..self.clone()
        }
    }

    /// Multiplies by t^{k/ram}.
    pub fn shift(&self, k: i64) -> TruncSeries {
        TruncSeries {
            lowexp: self.lowexp + k,
            prec: self.prec + k,
            ..self.clone()
        }
    }

    /// Lowers the precision to `prec` (in 1/ram units).
    pub fn truncate(&self, prec: i64) -> TruncSeries {
        if prec >= self.prec {
            return self.clone();
        }
        let lowexp = self.lowexp.min(prec - 1);
        TruncSeries {
            field: self.field.clone(),
            ram: self.ram,
            lowexp,
            coeffs: self.window(lowexp, prec),
            prec,
        }
    }

    /// Product; the precision is min(prec_a + val_b, prec_b + val_a).
    pub fn mul(&self, other: &TruncSeries) -> TruncSeries {
        let (a, b) = self.common(other);
        let va = a.valuation();
        let vb = b.valuation();
        let prec = (a.prec + vb).min(b.prec + va);
        let low = va + vb;
        if low >= prec {
            return TruncSeries {
                field: a.field.clone(),
                ram: a.ram,
                lowexp: prec - 1,
                coeffs: vec![Fe::ZERO],
                prec,
            };
        }
        let n = (prec - low) as usize;
        let aw = a.window(va, va + n as i64);
        let bw = b.window(vb, vb + n as i64);
        let coeffs = mul_trunc(&a.field, &aw, &bw, n);
        TruncSeries {
            field: a.field.clone(),
            ram: a.ram,
            lowexp: low,
            coeffs,
            prec,
        }
    }

    pub fn pow(&self, mut e: u64) -> TruncSeries {
        let p = self.field.p();
        if e == 0 {
            let ram = self.ram;
            let prec = self.prec - self.valuation().min(0) + self.prec.max(1);
            let mut one = TruncSeries::constant(&self.field, self.field.one(), prec.max(1) as usize)
                .expect("nonempty");
            one = one.refine(ram);
            return one;
        }
        // p-th powers are coefficientwise Frobenius with scaled exponents.
        let mut frob = 0u32;
        while e % p == 0 {
            e /= p;
            frob += 1;
        }
        let mut result: Option<TruncSeries> = None;
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = Some(match result {
                    None => base.clone(),
                    Some(r) => r.mul(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        let mut r = result.expect("positive exponent");
        for _ in 0..frob {
            r = r.frobenius_power();
        }
        r
    }

    /// The p-th power, exact in characteristic p.
    pub fn frobenius_power(&self) -> TruncSeries {
        let f = &self.field;
        let p = f.p() as i64;
        let lowexp = self.lowexp * p;
        let prec = self.prec * p;
        let mut coeffs = vec![Fe::ZERO; (prec - lowexp) as usize];
        for (j, &c) in self.coeffs.iter().enumerate() {
            coeffs[j * p as usize] = f.frobenius(c, 1);
        }
        TruncSeries {
            field: f.clone(),
            ram: self.ram,
            lowexp,
            coeffs,
            prec,
        }
    }

    /// Applies c ↦ c^{p^e} to every coefficient, keeping exponents.
    pub fn frobenius_coeffs(&self, e: u32) -> TruncSeries {
        let f = &self.field;
        TruncSeries {
            coeffs: self.coeffs.iter().map(|&c| f.frobenius(c, e)).collect(),
            ..self.clone()
        }
    }

    /// Multiplies by an exact polynomial in t.
    pub fn mul_tpoly(&self, c: &TPoly) -> TruncSeries {
        let r = self.ram as usize;
        let vc = match c.valuation() {
            Some(v) => (v * r) as i64,
            None => {
                return TruncSeries {
                    field: self.field.clone(),
                    ram: self.ram,
                    lowexp: self.prec - 1,
                    coeffs: vec![Fe::ZERO],
                    prec: self.prec,
                }
            }
        };
        let va = self.valuation();
        let prec = self.prec + vc;
        let low = va + vc;
        if low >= prec {
            return TruncSeries {
                field: self.field.clone(),
                ram: self.ram,
                lowexp: prec - 1,
                coeffs: vec![Fe::ZERO],
                prec,
            };
        }
        let n = (prec - low) as usize;
        let aw = self.window(va, va + n as i64);
        let mut cw = vec![Fe::ZERO; n];
        for (j, &v) in c.coeffs().iter().enumerate().skip(vc as usize / r) {
            let k = j * r - vc as usize;
            if k < n {
                cw[k] = v;
            }
        }
        TruncSeries {
            field: self.field.clone(),
            ram: self.ram,
            lowexp: low,
            coeffs: mul_trunc(&self.field, &aw, &cw, n),
            prec,
        }
    }

    /// Adds an exact polynomial in t; the precision is unchanged.
    pub fn add_tpoly(&self, c: &TPoly) -> TruncSeries {
        let f = &self.field;
        let r = self.ram as i64;
        let lowexp = if c.is_zero() {
            self.lowexp
        } else {
            self.lowexp.min(0).min(self.prec - 1)
        };
        let mut coeffs = self.window(lowexp, self.prec);
        for (j, &v) in c.coeffs().iter().enumerate() {
            let n = j as i64 * r;
            if n >= self.prec {
                break;
            }
            let slot = (n - lowexp) as usize;
            coeffs[slot] = f.add(coeffs[slot], v);
        }
        TruncSeries {
            field: f.clone(),
            ram: self.ram,
            lowexp,
            coeffs,
            prec: self.prec,
        }
    }

    /// g(self, t) for g in F[t][x]; coefficients of g are embedded into the
    /// series field through the least-root embedding.
    pub fn compose_poly(&self, g: &XTPoly) -> Result<TruncSeries> {
        let g = if g.field() == &self.field {
            g.clone()
        } else {
            g.map(&Embedding::find(g.field(), &self.field)?)
        };
        let n = match g.degree_x() {
            None => return Ok(self.mul_tpoly(&TPoly::zero(&self.field))),
            Some(n) => n,
        };
        if n == 0 {
            let zero = TruncSeries {
                coeffs: vec![Fe::ZERO; (self.prec - self.lowexp.min(0)) as usize],
                lowexp: self.lowexp.min(0),
                ..self.clone()
            };
            return Ok(zero.add_tpoly(&g.coeff(0)));
        }
        let mut acc = self.mul_tpoly(&g.coeff(n));
        for i in (0..n).rev() {
            acc = acc.add_tpoly(&g.coeff(i));
            if i > 0 {
                acc = acc.mul(self);
            }
        }
        Ok(acc)
    }

    /// Transports the coefficients along a field embedding.
    pub fn map(&self, emb: &Embedding) -> TruncSeries {
        TruncSeries {
            field: emb.target().clone(),
            coeffs: self.coeffs.iter().map(|&c| emb.map(c)).collect(),
            ..self.clone()
        }
    }

    /// Whether both series agree on every exponent below `bound` (same ram units).
    pub fn agrees_with(&self, other: &TruncSeries, bound: i64) -> bool {
        let (a, b) = self.common(other);
        let r = (a.ram / self.ram) as i64;
        let bound = bound * r;
        if bound > a.prec || bound > b.prec {
            return false;
        }
        let low = a.lowexp.min(b.lowexp);
        (low..bound).all(|n| a.coeff(n) == b.coeff(n))
    }

    /// The first exponent (in this series' ram units) where `self` and
    /// `other` differ below the common precision.
    pub fn first_difference(&self, other: &TruncSeries) -> Option<i64> {
        let (a, b) = self.common(other);
        let prec = a.prec.min(b.prec);
        let low = a.lowexp.min(b.lowexp);
        (low..prec).find(|&n| a.coeff(n) != b.coeff(n))
    }

    fn format_with(&self, var: &str, coeff: &dyn Fn(Fe) -> String) -> String {
        let f = &self.field;
        let mut parts = Vec::new();
        for n in self.support() {
            let c = self.coeff(n).expect("inside window");
            let mono = exponent_text(var, n, self.ram);
            let ctext = coeff(c);
            let compound = ctext.contains('+');
            parts.push(match (mono.is_empty(), c == f.one()) {
                (true, _) => ctext,
                (false, true) => mono,
                (false, false) if compound => format!("({ctext})*{mono}"),
                (false, false) => format!("{ctext}*{mono}"),
            });
        }
        let big_o = format!("O({})", {
            let m = exponent_text(var, self.prec, self.ram);
            if m.is_empty() {
                "1".to_string()
            } else {
                m
            }
        });
        parts.push(big_o);
        parts.join(" + ")
    }

    /// Text in the variable `var` with coefficients in generator form.
    pub fn to_text(&self, var: &str) -> String {
        self.format_with(var, &|c| self.field.format(c))
    }

    /// Text with coefficients written as powers `name^k` of `base` when possible.
    pub fn to_text_powers(&self, var: &str, base: Fe, name: &str) -> String {
        let f = &self.field;
        self.format_with(var, &|c| match f.log_base(c, base) {
            Some(0) => "1".to_string(),
            Some(1) => name.to_string(),
            Some(k) => format!("{name}^{k}"),
            None => f.format(c),
        })
    }

    /// JSON form: (exponent numerator, ram, coefficient) triples.
    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field.tag(),
            "ram": self.ram,
            "prec": self.prec,
            "terms": self
                .support()
                .into_iter()
                .map(|n| json!([n, self.ram, self.field.format(self.coeff(n).expect("inside window"))]))
                .collect::<Vec<_>>(),
        })
    }
}

fn exponent_text(var: &str, num: i64, ram: u32) -> String {
    let g = gcd(num, ram as i64).max(1);
    let (n, d) = (num / g, ram as i64 / g);
    match (n, d) {
        (0, _) => String::new(),
        (1, 1) => var.to_string(),
        (n, 1) => format!("{var}^{n}"),
        (n, d) => format!("{var}^({n}/{d})"),
    }
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text("t"))
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} @{}", self.to_text("t"), self.field.tag())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::UniPoly;

    fn f2() -> FieldSpec {
        FieldSpec::prime(2).unwrap()
    }

    fn ser(f: &FieldSpec, bits: &[u64], prec: usize) -> TruncSeries {
        let mut c: Vec<Fe> = bits.iter().map(|&b| Fe(b)).collect();
        c.resize(prec, Fe::ZERO);
        TruncSeries::taylor(f, c).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        let f = f2();
        let a = ser(&f, &[0, 1, 0, 1], 10);
        let b = ser(&f, &[0, 0, 0, 1], 10);
        let s = a.add(&b);
        assert_eq!(s.support(), vec![1]);
        assert_eq!(s.prec(), 10);
        let one_t = ser(&f, &[1, 1], 10);
        assert_eq!(one_t.mul(&one_t).support(), vec![0, 2]);
    }

    #[test]
    fn compose_with_a_taylor_root() {
        let f = f2();
        let g = XTPoly::parse(&f, "x^3+x+t").unwrap();
        let a = ser(&f, &[0, 1, 0, 1, 0, 1, 0, 0, 0, 1], 10);
        let r = a.compose_poly(&g).unwrap();
        assert!(r.is_zero());
        assert!(r.prec() >= 10);
    }

    #[test]
    fn precision_tracking() {
        let f = f2();
        let a = ser(&f, &[0, 0, 1], 5); // t^2 + O(t^5)
        let b = ser(&f, &[1, 1], 4); // 1 + t + O(t^4)
        let p = a.mul(&b);
        assert_eq!(p.prec(), 5);
        assert_eq!(p.support(), vec![2, 3]);
        let z = TruncSeries::zero(&f, 3).unwrap();
        assert_eq!(z.mul(&z).prec(), 6);
        assert!(TruncSeries::taylor(&f, vec![]).is_err());
    }

    #[test]
    fn refinement_and_display() {
        let f = f2();
        let s = TruncSeries::new(&f, 3, -1, vec![Fe(1), Fe(0), Fe(1)]).unwrap();
        assert_eq!(s.to_string(), "t^(-1/3) + t^(1/3) + O(t^(2/3))");
        let t = ser(&f, &[0, 1], 3);
        let sum = s.add(&t);
        assert_eq!(sum.ram(), 3);
        assert_eq!(sum.prec(), 2);
        assert_eq!(t.refine(2).coarsen(), t);
        let c = UniPoly::parse(&f, "1+t", 't').unwrap();
        assert_eq!(t.mul_tpoly(&c).support(), vec![1, 2]);
        assert_eq!(t.pow(4).support(), vec![4]);
        assert_eq!(t.pow(4).prec(), 12);
    }
}
