//! Additive (p-polynomial) multiples and affine relations L(x) ≡ c (mod f).
//!
//! With a = lc_x(f) and n = deg_x f, the substitution y = a·x turns f into
//! the monic g(y) = a^{n-1} f(y/a). Residues of y^{p^i} modulo g live in
//! F_q[t], and a dependency Σ μ_i (y^{p^i} mod g) = 0 gives the relation
//! Σ μ_i a^{p^i} x^{p^i} ≡ 0 (mod f). All linear algebra is therefore
//! fraction-free over F_q[t].

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ffield::{Embedding, Fe, FieldSpec, FqElem};
use crate::polyring::{tpoly_text, xt_term_text, FracT, TPoly, UniPoly, XTPoly};

/// Default cap on the t-degree of residue coefficients.
pub const DEFAULT_DEGREE_BUDGET: usize = 10_000;

/// Largest x-degree for which the relation is re-checked by dividing
/// L(x) - c by f; above it the residues are replayed by direct powering.
const DIVISION_CHECK_LIMIT: u64 = 1 << 13;

#[derive(Clone, Debug)]
pub struct AdditiveOptions {
    /// Cap on the t-degree of residues kept as pivots and of the relation's
    /// coefficients. The final, dependent residue is not capped.
    pub degree_budget: usize,
    /// Largest Frobenius index tried; defaults to deg_x f.
    pub max_index: Option<usize>,
}

impl Default for AdditiveOptions {
    fn default() -> Self {
        AdditiveOptions {
            degree_budget: DEFAULT_DEGREE_BUDGET,
            max_index: None,
        }
    }
}

/// L(x) = Σ a_i(t) x^{p^i} with L ≡ affine_c (mod f).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditiveRelation {
    pub field: FieldSpec,
    /// Nonzero terms (i, a_i), increasing in i.
    pub terms: Vec<(usize, TPoly)>,
    pub affine_c: TPoly,
    pub pdeg: usize,
    pub denominator_cleared: bool,
}

impl AdditiveRelation {
    pub fn is_affine(&self) -> bool {
        !self.affine_c.is_zero()
    }

    pub fn coeff(&self, i: usize) -> TPoly {
        self.terms
            .iter()
            .find(|(j, _)| *j == i)
            .map(|(_, a)| a.clone())
            .unwrap_or_else(|| UniPoly::zero(&self.field))
    }

    /// Number of nonzero monomials t^a x^{p^i} in L.
    pub fn term_count(&self) -> usize {
        self.terms
            .iter()
            .map(|(_, a)| a.coeffs().iter().filter(|c| !c.is_zero()).count())
            .sum()
    }

    /// L as a polynomial in x (dense; use only for moderate p^pdeg).
    pub fn to_xtpoly(&self) -> XTPoly {
        let p = self.field.p() as usize;
        let deg = p.pow(self.pdeg as u32);
        let mut xcoeffs = vec![UniPoly::zero(&self.field); deg + 1];
        for (i, a) in &self.terms {
            xcoeffs[p.pow(*i as u32)] = a.clone();
        }
        XTPoly::new(&self.field, xcoeffs)
    }

    /// L in the polynomial grammar, exponents expanded.
    pub fn l_text(&self) -> String {
        let p = self.field.p();
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(i, a)| {
                let e = p.pow(*i as u32);
                let mono = if e == 1 { "x".to_string() } else { format!("x^{e}") };
                xt_term_text(&self.field, a, &mono)
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }

    pub fn c_text(&self) -> String {
        tpoly_text(&self.affine_c)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "p": self.field.p(),
            "field": self.field.tag(),
            "pdeg": self.pdeg,
            "affine": self.is_affine(),
            "terms": self.terms.iter().map(|(i, a)| json!({"i": i, "coeff": tpoly_text(a)})).collect::<Vec<_>>(),
            "c": self.c_text(),
            "term_count": self.term_count(),
            "denominator_cleared": self.denominator_cleared,
            "text": self.l_text(),
        })
    }

    /// L(a) at t = t0, computed in the field of `a` (which must contain t0).
    pub fn eval(&self, t0: &FqElem, a: &FqElem) -> Result<FqElem> {
        if t0.field() != a.field() {
            return Err(Error::FieldMismatch {
                left: t0.field().tag(),
                right: a.field().tag(),
            });
        }
        let target = a.field();
        let emb = Embedding::find(&self.field, target)?;
        let mut acc = Fe::ZERO;
        for (i, c) in &self.terms {
            let ci = c.map(&emb).eval(t0.value());
            let xi = target.frobenius(a.value(), *i as u32);
            acc = target.add(acc, target.mul(ci, xi));
        }
        Ok(FqElem::new(target, acc))
    }
}

/// Applies Frobenius to a t-polynomial: Σ c_k t^k ↦ Σ c_k^p t^{pk}.
fn frob_tpoly(c: &TPoly) -> TPoly {
    let f = c.field();
    let p = f.p() as usize;
    if c.is_zero() {
        return c.clone();
    }
    let mut out = vec![Fe::ZERO; (c.coeffs().len() - 1) * p + 1];
    for (k, &a) in c.coeffs().iter().enumerate() {
        out[k * p] = f.frobenius(a, 1);
    }
    UniPoly::new(f, out)
}

/// The monic transform g(y) = a^{n-1} f(y/a), returned as its lower
/// coefficients g_0..g_{n-1}, together with a = lc_x(f).
fn monic_transform(f: &XTPoly) -> Result<(Vec<TPoly>, TPoly)> {
    let n = match f.degree_x() {
        Some(n) if n >= 1 => n,
        _ => return Err(Error::InvalidArgument("need x-degree at least 1".into())),
    };
    let a = f.lc_x();
    let mut lower = Vec::with_capacity(n);
    let mut apow = UniPoly::one(f.field());
    let mut powers = vec![apow.clone()];
    for _ in 0..n {
        apow = apow.mul(&a);
        powers.push(apow.clone());
    }
    for j in 0..n {
        lower.push(f.coeff(j).mul(&powers[n - 1 - j]));
    }
    Ok((lower, a))
}

/// Successive residues y^{p^i} mod g as coefficient vectors over F_q[t].
struct MonicResidues {
    p: usize,
    /// table[m] = y^m mod g for m <= p(n-1)
    table: Vec<Vec<TPoly>>,
    last: Option<Vec<TPoly>>,
}

impl MonicResidues {
    fn new(g: &[TPoly], p: usize) -> MonicResidues {
        let n = g.len();
        let field = g[0].field().clone();
        let zero = UniPoly::zero(&field);
        let mut table: Vec<Vec<TPoly>> = Vec::with_capacity(p * (n - 1) + 2);
        let mut cur = vec![zero.clone(); n];
        cur[0] = UniPoly::one(&field);
        for _ in 0..=(p * (n - 1)).max(1) {
            table.push(cur.clone());
            let top = cur[n - 1].clone();
            let mut next = vec![zero.clone(); n];
            for j in (1..n).rev() {
                next[j] = cur[j - 1].sub(&top.mul(&g[j]));
            }
            next[0] = top.mul(&g[0]).neg();
            cur = next;
        }
        MonicResidues {
            p,
            table,
            last: None,
        }
    }

    fn next_residue(&mut self) -> Result<Vec<TPoly>> {
        let next = match &self.last {
            None => self.table[1].clone(),
            Some(prev) => {
                let field = prev[0].field().clone();
                let mut next = vec![UniPoly::zero(&field); prev.len()];
                for (j, c) in prev.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let cp = frob_tpoly(c);
                    for (slot, r) in next.iter_mut().zip(&self.table[self.p * j]) {
                        if !r.is_zero() {
                            *slot = slot.add(&cp.mul(r));
                        }
                    }
                }
                next
            }
        };
        self.last = Some(next.clone());
        Ok(next)
    }
}

fn check_budget<'a>(polys: impl IntoIterator<Item = &'a TPoly>, budget: usize) -> Result<()> {
    let deg = polys.into_iter().filter_map(|c| c.degree()).max().unwrap_or(0);
    if deg > budget {
        return Err(Error::Budget { degree: deg, budget });
    }
    Ok(())
}

fn monic_residues(g: &[TPoly], p: usize, imax: usize, budget: usize) -> Result<Vec<Vec<TPoly>>> {
    let mut it = MonicResidues::new(g, p);
    let mut out = Vec::with_capacity(imax + 1);
    for _ in 0..=imax {
        let r = it.next_residue()?;
        check_budget(&r, budget)?;
        out.push(r);
    }
    Ok(out)
}

/// x^{p^i} mod f for i = 0..=imax, as coordinate vectors over F_q(t).
pub fn frobenius_residues(f: &XTPoly, imax: usize, budget: usize) -> Result<Vec<Vec<FracT>>> {
    let (g, a) = monic_transform(f)?;
    let p = f.field().p() as usize;
    let monic = monic_residues(&g, p, imax, budget)?;
    let n = g.len();
    let mut apows = vec![UniPoly::one(f.field())];
    for j in 1..n {
        apows.push(apows[j - 1].mul(&a));
    }
    let mut out = Vec::with_capacity(monic.len());
    let mut den = a.clone();
    for row in monic {
        let entries = row
            .into_iter()
            .enumerate()
            .map(|(j, c)| FracT::new(c.mul(&apows[j]), den.clone()))
            .collect::<Result<Vec<_>>>()?;
        out.push(entries);
        den = frob_tpoly(&den);
    }
    Ok(out)
}

/// Fraction-free incremental row reduction over F_q[t]. Each row carries a
/// tracking part recording its combination of the inserted rows.
struct Eliminator {
    width: usize,
    tracking: usize,
    pivots: Vec<(usize, Vec<TPoly>)>,
    inserted: usize,
    field: FieldSpec,
}

impl Eliminator {
    fn new(field: &FieldSpec, width: usize, tracking: usize) -> Eliminator {
        Eliminator {
            width,
            tracking,
            pivots: Vec::new(),
            inserted: 0,
            field: field.clone(),
        }
    }

    /// Inserts a row; returns the tracking coefficients of a dependency if
    /// the row is in the span of the earlier ones.
    fn push(&mut self, w: &[TPoly]) -> Option<Vec<TPoly>> {
        let zero = UniPoly::zero(&self.field);
        let mut v: Vec<TPoly> = w.to_vec();
        v.resize(self.width, zero.clone());
        v.extend(std::iter::repeat(zero).take(self.tracking));
        v[self.width + self.inserted] = UniPoly::one(&self.field);
        self.inserted += 1;
        let mut prev = UniPoly::one(&self.field);
        for (col, row) in &self.pivots {
            let pk = &row[*col];
            let vc = v[*col].clone();
            for j in 0..v.len() {
                let mut x = v[j].mul(pk);
                if !vc.is_zero() && !row[j].is_zero() {
                    x = x.sub(&vc.mul(&row[j]));
                }
                v[j] = if prev.is_one() {
                    x
                } else {
                    x.div_exact(&prev).expect("fraction-free step divides exactly")
                };
            }
            prev = pk.clone();
        }
        match (0..self.width).find(|&j| !v[j].is_zero()) {
            Some(col) => {
                self.pivots.push((col, v));
                None
            }
            None => Some(v[self.width..self.width + self.inserted].to_vec()),
        }
    }
}

fn normalize(
    field: &FieldSpec,
    mut lambdas: Vec<(usize, TPoly)>,
    mut c: TPoly,
    cleared: bool,
) -> AdditiveRelation {
    lambdas.retain(|(_, a)| !a.is_zero());
    let mut content = c.clone();
    for (_, a) in &lambdas {
        content = content.gcd(a);
    }
    if !content.is_zero() && !content.is_one() {
        for (_, a) in lambdas.iter_mut() {
            *a = a.div_exact(&content).expect("content divides");
        }
        c = c.div_exact(&content).expect("content divides");
    }
    let top = lambdas.last().map(|(_, a)| a.lc()).unwrap_or(field.one());
    let inv = field.inv(top).expect("nonzero leading coefficient");
    for (_, a) in lambdas.iter_mut() {
        *a = a.scale(inv);
    }
    c = c.scale(inv);
    let pdeg = lambdas.last().map(|(i, _)| *i).unwrap_or(0);
    AdditiveRelation {
        field: field.clone(),
        terms: lambdas,
        affine_c: c,
        pdeg,
        denominator_cleared: cleared,
    }
}

fn search(f: &XTPoly, opts: &AdditiveOptions, affine: bool) -> Result<AdditiveRelation> {
    let (g, a) = monic_transform(f)?;
    let n = g.len();
    let field = f.field().clone();
    let p = field.p() as usize;
    let imax = opts.max_index.unwrap_or(n);
    let mut source = MonicResidues::new(&g, p);
    let mut residues = Vec::new();
    let mut elim = Eliminator::new(&field, n, imax + 2);
    let offset = usize::from(affine);
    if affine {
        let mut one = vec![UniPoly::zero(&field); n];
        one[0] = UniPoly::one(&field);
        elim.push(&one);
    }
    for i in 0..=imax {
        residues.push(source.next_residue()?);
        if let Some(mu) = elim.push(&residues[i]) {
            // λ_i = μ_i a^{p^i}
            let mut apow = a.clone();
            let mut lambdas = Vec::new();
            for (k, m) in mu.iter().enumerate().skip(offset) {
                let idx = k - offset;
                lambdas.push((idx, m.mul(&apow)));
                apow = frob_tpoly(&apow);
            }
            let c = if affine { mu[0].neg() } else { UniPoly::zero(&field) };
            let rel = normalize(&field, lambdas, c, !a.is_constant());
            check_budget(rel.terms.iter().map(|(_, a)| a), opts.degree_budget)?;
            debug_assert_eq!(rel.pdeg, i);
            verify_relation(f, &rel, &residues, &a)?;
            return Ok(rel);
        }
        // the row stays in the elimination as a pivot
        check_budget(&residues[i], opts.degree_budget)?;
    }
    Err(Error::Budget {
        degree: imax,
        budget: imax,
    })
}

/// Checks L(x) ≡ c (mod f): by exact division for moderate x-degree,
/// otherwise by recomputing the residues with plain powering modulo f.
fn verify_relation(f: &XTPoly, rel: &AdditiveRelation, residues: &[Vec<TPoly>], a: &TPoly) -> Result<()> {
    let field = f.field();
    let p = field.p();
    if p.pow(rel.pdeg as u32) <= DIVISION_CHECK_LIMIT {
        let diff = rel.to_xtpoly().sub(&XTPoly::from_tpoly(rel.affine_c.clone()));
        return diff.div_exact(f).map(|_| ());
    }
    // Independent replay: r_{i+1} = r_i^p mod g by multiplication and division.
    let (g, _) = monic_transform(f)?;
    let n = g.len();
    let mut gpoly: Vec<TPoly> = g.clone();
    gpoly.push(UniPoly::one(field));
    let g_xt = XTPoly::new(field, gpoly);
    let mut r = XTPoly::new(field, residues[0].clone());
    for (i, expected) in residues.iter().enumerate().take(rel.pdeg + 1) {
        if r != XTPoly::new(field, expected.clone()) {
            return Err(Error::InexactDivision);
        }
        if i < rel.pdeg {
            let mut acc = r.clone();
            for _ in 1..p {
                acc = acc.mul(&r).divmod(&g_xt)?.1;
            }
            r = acc;
        }
    }
    // x^{p^i} ≡ r_i(a x)/a^{p^i}; clear denominators with D = a^{p^pdeg}.
    let mut dens = vec![a.clone()];
    for i in 0..rel.pdeg {
        let next = frob_tpoly(&dens[i]);
        dens.push(next);
    }
    let big = dens[rel.pdeg].clone();
    let mut total = vec![UniPoly::zero(field); n];
    for (i, lam) in &rel.terms {
        let coef = lam.mul(&big.div_exact(&dens[*i])?);
        for (slot, e) in total.iter_mut().zip(&residues[*i]) {
            *slot = slot.add(&coef.mul(e));
        }
    }
    total[0] = total[0].sub(&rel.affine_c.mul(&big));
    if total.iter().all(|c| c.is_zero()) {
        Ok(())
    } else {
        Err(Error::InexactDivision)
    }
}

/// The affine relation of least p-degree, searching 1, x, x^p, x^{p^2}, ...
pub fn affine_relation(f: &XTPoly, opts: &AdditiveOptions) -> Result<AdditiveRelation> {
    search(f, opts, true)
}

/// The homogeneous additive multiple of f of least p-degree.
pub fn minimal_additive_multiple(f: &XTPoly, opts: &AdditiveOptions) -> Result<AdditiveRelation> {
    search(f, opts, false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xt(p: u64, s: &str) -> XTPoly {
        XTPoly::parse(&FieldSpec::prime(p).unwrap(), s).unwrap()
    }

    #[test]
    fn residue_examples() {
        let f = xt(2, "x^7+t*x+1");
        let r = frobenius_residues(&f, 3, 100).unwrap();
        // x^8 = t x^2 + x
        let r3: Vec<String> = r[3].iter().map(|c| c.to_string()).collect();
        assert_eq!(r3, vec!["0", "1", "t", "0", "0", "0", "0"]);
        let f = xt(2, "x^4+x+t");
        let r = frobenius_residues(&f, 2, 100).unwrap();
        let r2: Vec<String> = r[2].iter().map(|c| c.to_string()).collect();
        assert_eq!(r2, vec!["t", "1", "0", "0"]);
        let f = xt(2, "x^24+x+t");
        let r = frobenius_residues(&f, 5, 100).unwrap();
        assert_eq!(r[5][9].to_string(), "1");
        assert_eq!(r[5][8].to_string(), "t");
        assert_eq!(r[5].iter().filter(|c| !c.is_zero()).count(), 2);
    }

    #[test]
    fn small_relations() {
        let opts = AdditiveOptions::default();
        let rel = affine_relation(&xt(2, "x^4+x+t"), &opts).unwrap();
        assert_eq!(rel.l_text(), "x^4 + x");
        assert_eq!(rel.c_text(), "t");
        let rel = affine_relation(&xt(2, "x^7+t*x+1"), &opts).unwrap();
        assert_eq!(rel.l_text(), "x^8 + t*x^2 + x");
        assert!(!rel.is_affine());
        let rel = minimal_additive_multiple(&xt(2, "x^7+t*x+1"), &opts).unwrap();
        assert_eq!((rel.pdeg, rel.l_text()), (3, "x^8 + t*x^2 + x".to_string()));
    }

    #[test]
    fn non_monic_input() {
        // t x^2 + x + 1: x^2 ≡ (x + 1)/t
        let opts = AdditiveOptions::default();
        let f = xt(2, "t*x^2+x+1");
        let rel = affine_relation(&f, &opts).unwrap();
        assert!(rel.denominator_cleared);
        let diff = rel.to_xtpoly().sub(&XTPoly::from_tpoly(rel.affine_c.clone()));
        assert!(diff.div_exact(&f).is_ok());
        let r = frobenius_residues(&f, 1, 100).unwrap();
        assert_eq!(r[1][0].to_string(), "(1)/(t)");
    }
}
