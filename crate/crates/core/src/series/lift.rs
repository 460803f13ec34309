//! Newton lifting of simple roots and the Taylor-root census.

use serde_json::{json, Value};

use super::kernel::{inv_trunc, mul_trunc};
use super::puiseux::{puiseux_expand, ExpansionPoint};
use super::TruncSeries;
use crate::error::{Error, Result};
use crate::ffield::{Embedding, Fe, FieldSpec, FqElem};
use crate::polyring::XTPoly;

/// x^e mod t^n, using the Frobenius for the p-part of e.
fn pow_trunc(field: &FieldSpec, x: &[Fe], mut e: usize, n: usize) -> Vec<Fe> {
    let p = field.p() as usize;
    let mut frob = 0;
    while e > 0 && e % p == 0 {
        e /= p;
        frob += 1;
    }
    let mut result = vec![Fe::ZERO; n];
    result[0] = field.one();
    let mut base: Vec<Fe> = x.iter().take(n).copied().collect();
    base.resize(n, Fe::ZERO);
    let mut first = true;
    while e > 0 {
        if e & 1 == 1 {
            result = if first { base.clone() } else { mul_trunc(field, &result, &base, n) };
            first = false;
        }
        e >>= 1;
        if e > 0 {
            base = mul_trunc(field, &base, &base, n);
        }
    }
    for _ in 0..frob {
        let mut next = vec![Fe::ZERO; n];
        for (j, &c) in result.iter().enumerate() {
            if j * p >= n {
                break;
            }
            next[j * p] = field.frobenius(c, 1);
        }
        result = next;
    }
    result
}

/// g(x(t), t) mod t^n for g over the field of the slice.
pub(crate) fn eval_trunc(g: &XTPoly, x: &[Fe], n: usize) -> Vec<Fe> {
    let field = g.field();
    let mut out = vec![Fe::ZERO; n];
    let Some(deg) = g.degree_x() else {
        return out;
    };
    let coeff_slice = |i: usize| -> Vec<Fe> {
        let c = g.coeff(i);
        let mut v: Vec<Fe> = c.coeffs().iter().take(n).copied().collect();
        v.resize(n, Fe::ZERO);
        v
    };
    let nnz = g.xcoeffs().iter().filter(|c| !c.is_zero()).count();
    let log = usize::BITS - deg.leading_zeros();
    if nnz * (log as usize + 1) < deg {
        for i in 0..=deg {
            let c = g.coeff(i);
            if c.is_zero() {
                continue;
            }
            let term = if i == 0 {
                coeff_slice(0)
            } else {
                mul_trunc(field, &coeff_slice(i), &pow_trunc(field, x, i, n), n)
            };
            for (o, v) in out.iter_mut().zip(term) {
                *o = field.add(*o, v);
            }
        }
        return out;
    }
    let mut acc = coeff_slice(deg);
    for i in (0..deg).rev() {
        acc = mul_trunc(field, &acc, x, n);
        for (a, v) in acc.iter_mut().zip(g.coeff(i).coeffs()) {
            *a = field.add(*a, *v);
        }
    }
    out.copy_from_slice(&acc[..n]);
    out
}

/// Lifts a simple root z0 of g(z, 0) to a power series root modulo t^n.
pub(crate) fn lift_simple(g: &XTPoly, z0: Fe, n: usize) -> Vec<Fe> {
    let field = g.field();
    let dg = g.derivative_x();
    let mut x = vec![z0];
    let mut k = 1;
    while k < n {
        k = (2 * k).min(n);
        x.resize(k, Fe::ZERO);
        let fx = eval_trunc(g, &x, k);
        if fx.iter().all(|c| c.is_zero()) {
            continue;
        }
        let d = eval_trunc(&dg, &x, k);
        let corr = mul_trunc(field, &fx, &inv_trunc(field, &d, k), k);
        for (a, c) in x.iter_mut().zip(corr) {
            *a = field.sub(*a, c);
        }
    }
    x.resize(n.max(1), Fe::ZERO);
    x
}

/// The unique power series root x(t) with x(0) = x0, known modulo t^prec.
///
/// Requires f(x0, 0) = 0 and ∂f/∂x(x0, 0) ≠ 0; the series lives over the
/// field of `x0`.
pub fn newton_lift(f: &XTPoly, x0: &FqElem, prec: usize) -> Result<TruncSeries> {
    if prec == 0 {
        return Err(Error::EmptyPrecision);
    }
    let k = x0.field();
    let g = if f.field() == k {
        f.clone()
    } else {
        f.map(&Embedding::find(f.field(), k)?)
    };
    let g0 = g.eval_t(k.zero());
    if !g0.eval(x0.value()).is_zero() {
        return Err(Error::InvalidArgument(format!("{x0} is not a root of f(x, 0)")));
    }
    if g0.derivative().eval(x0.value()).is_zero() {
        return Err(Error::NotLiftable(format!("{x0} is a multiple root of f(x, 0)")));
    }
    TruncSeries::taylor(k, lift_simple(&g, x0.value(), prec))
}

/// A root of f(x, 0) without a full set of Taylor lifts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonLiftable {
    pub root: Fe,
    pub multiplicity: usize,
    pub reason: String,
}

/// All Taylor series roots of f at t = 0 over one field.
#[derive(Clone, Debug)]
pub struct TaylorRoots {
    pub field: FieldSpec,
    pub series: Vec<TruncSeries>,
    /// Parallel to `series`: the root is an exact constant or polynomial.
    pub exact: Vec<bool>,
    pub non_liftable: Vec<NonLiftable>,
}

impl TaylorRoots {
    pub fn count(&self) -> usize {
        self.series.len()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "field": self.field.tag(),
            "count": self.series.len(),
            "series": self
                .series
                .iter()
                .zip(&self.exact)
                .map(|(s, &e)| json!({"text": s.to_string(), "exact": e, "series": s.to_json()}))
                .collect::<Vec<_>>(),
            "non_liftable": self
                .non_liftable
                .iter()
                .map(|r| json!({
                    "root": self.field.format(r.root),
                    "multiplicity": r.multiplicity,
                    "reason": r.reason,
                }))
                .collect::<Vec<_>>(),
        })
    }
}

/// Every Taylor series root of f at t = 0, over the splitting field of the
/// branches (or over `field` and its extensions when given).
///
/// Simple roots of f(x, 0) are lifted directly; clusters over multiple roots
/// are resolved by Newton polygons, and roots whose cluster contains
/// ramified or wild branches are listed as non-liftable.
pub fn all_taylor_roots(f: &XTPoly, prec: usize, field: Option<&FieldSpec>) -> Result<TaylorRoots> {
    if prec == 0 {
        return Err(Error::EmptyPrecision);
    }
    let f0 = f.eval_t(f.field().zero());
    if f0.is_zero() {
        return Err(Error::InvalidArgument("f(x, 0) vanishes identically".into()));
    }
    let exp = puiseux_expand(f, ExpansionPoint::Origin, prec, field)?;
    let k = exp.field.clone();
    let emb = Embedding::find(f.field(), &k)?;
    let roots0: Vec<(Fe, usize)> = f0.map(&emb).roots();
    let mult_of = |c: Fe| roots0.iter().find(|r| r.0 == c).map_or(0, |r| r.1);

    let mut series = Vec::new();
    let mut exact = Vec::new();
    let mut bad: Vec<NonLiftable> = Vec::new();
    let mut note = |root: Fe, reason: String| {
        if !bad.iter().any(|b| b.root == root && b.reason == reason) {
            bad.push(NonLiftable {
                root,
                multiplicity: mult_of(root),
                reason,
            });
        }
    };
    for b in &exp.branches {
        let s = b.series.coarsen();
        if s.valuation() < 0 {
            continue;
        }
        if s.ram() == 1 {
            series.push(s.truncate(prec as i64));
            exact.push(b.exact);
        } else {
            let root = s.coeff(0).unwrap_or(Fe::ZERO);
            note(root, format!("ramified branch (e = {})", s.ram()));
        }
    }
    for w in &exp.wild {
        if w.prefix.valuation() < 0 {
            continue;
        }
        let root = w.prefix.coeff(0).unwrap_or(Fe::ZERO);
        note(root, format!("wild ramification (e = {})", w.ram));
    }
    bad.sort_by(|a, b| a.root.cmp(&b.root).then(a.reason.cmp(&b.reason)));
    Ok(TaylorRoots {
        field: k,
        series,
        exact,
        non_liftable: bad,
    })
}

