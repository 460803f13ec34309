//! k-set resolvents from series roots.
//!
//! Products of k-subsets of lifted roots are multiplied out as Π(x − v) with
//! truncated-series coefficients; a coefficient is accepted as a polynomial
//! in t when everything between `tdeg_max` and the end of the precision
//! window vanishes.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ffield::{Embedding, Fe, FieldSpec};
use crate::permgrp::k_subsets;
use crate::polyring::{TPoly, XTPoly};
use crate::series::{mul_trunc, TruncSeries};

/// Default number of trailing zero coefficients demanded after `tdeg_max`.
pub const DEFAULT_GUARD: usize = 16;
/// Default cap on the number of subset products.
pub const DEFAULT_PRODUCT_BUDGET: usize = 1_000_000;
/// Cap on exhaustive subset enumeration.
pub const MAX_EXHAUSTIVE: u64 = 1 << 20;

/// The product of the roots indexed by `subset`.
#[derive(Clone, Debug)]
pub struct SubsetProduct {
    pub subset: Vec<usize>,
    pub value: TruncSeries,
}

/// A polynomial recovered from series data.
#[derive(Clone, Debug)]
pub struct ReconstructionResult {
    pub poly: XTPoly,
    /// The last `guard` coefficients of every x-coefficient were zero.
    pub guard_ok: bool,
    /// Half-open range of t-exponents checked for vanishing.
    pub window: (usize, usize),
}

impl ReconstructionResult {
    pub fn to_json(&self) -> Value {
        json!({
            "poly": self.poly.to_string(),
            "field": self.poly.field().tag(),
            "x_degree": self.poly.degree_x(),
            "t_degree": self.poly.degree_t(),
            "guard_ok": self.guard_ok,
            "window": [self.window.0, self.window.1],
        })
    }
}

fn check_common(values: &[TruncSeries]) -> Result<(FieldSpec, usize)> {
    let first = values
        .first()
        .ok_or_else(|| Error::InvalidArgument("no series given".into()))?;
    let field = first.field().clone();
    let mut prec = i64::MAX;
    for v in values {
        if v.field() != &field {
            return Err(Error::FieldMismatch {
                left: field.tag(),
                right: v.field().tag(),
            });
        }
        let c = v.coarsen();
        if c.ram() != 1 || c.valuation() < 0 {
            return Err(Error::InvalidArgument("resolvents need Taylor series roots".into()));
        }
        prec = prec.min(c.prec());
    }
    Ok((field, prec.max(0) as usize))
}

fn taylor_coeffs(s: &TruncSeries, prec: usize) -> Vec<Fe> {
    let c = s.coarsen();
    (0..prec as i64).map(|n| c.coeff(n).unwrap_or(Fe::ZERO)).collect()
}

/// Products over all k-subsets of `roots`, lexicographic in the subsets.
pub fn subset_products(roots: &[TruncSeries], k: usize, budget: usize) -> Result<Vec<SubsetProduct>> {
    let n = roots.len();
    check_common(roots)?;
    let count = binomial(n as u64, k as u64);
    if count > budget as u128 {
        return Err(Error::EnumerationBudget {
            count,
            budget: budget as u128,
        });
    }
    Ok(k_subsets(n, k)
        .into_iter()
        .map(|subset| SubsetProduct {
            value: product_of(roots, &subset),
            subset,
        })
        .collect())
}

/// Π roots[i] over i in `subset`.
pub fn product_of(roots: &[TruncSeries], subset: &[usize]) -> TruncSeries {
    let mut it = subset.iter();
    let Some(&first) = it.next() else {
        let f = roots[0].field();
        return TruncSeries::constant(f, f.one(), roots[0].prec().max(1) as usize).expect("nonempty");
    };
    let mut acc = roots[first].clone();
    for &i in it {
        acc = acc.mul(&roots[i]);
    }
    acc
}

pub(crate) fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
    }
    r
}

/// A polynomial in x whose coefficients are series known mod t^prec.
type SerPoly = Vec<Vec<Fe>>;

fn serpoly_mul(field: &FieldSpec, a: &SerPoly, b: &SerPoly, prec: usize) -> SerPoly {
    let mut out = vec![vec![Fe::ZERO; prec]; a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.iter().all(|c| c.is_zero()) {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            let prod = mul_trunc(field, ai, bj, prec);
            for (o, p) in out[i + j].iter_mut().zip(prod) {
                *o = field.add(*o, p);
            }
        }
    }
    out
}

/// Π (x − v) by a balanced product tree.
fn product_tree(field: &FieldSpec, roots: &[Vec<Fe>], prec: usize) -> SerPoly {
    if roots.len() == 1 {
        let mut one = vec![Fe::ZERO; prec];
        one[0] = field.one();
        let neg: Vec<Fe> = roots[0].iter().map(|&c| field.neg(c)).collect();
        return vec![neg, one];
    }
    let mid = roots.len() / 2;
    let left = product_tree(field, &roots[..mid], prec);
    let right = product_tree(field, &roots[mid..], prec);
    serpoly_mul(field, &left, &right, prec)
}

/// Π (x − v_i) with each x-coefficient replaced by its polynomial part of
/// t-degree ≤ `tdeg_max`.
///
/// Needs precision ≥ tdeg_max + 1 + guard. A nonzero term between
/// `tdeg_max` and the final `guard` coefficients is an error; a nonzero term
/// inside the final guard window clears `guard_ok`.
pub fn reconstruct_poly(values: &[TruncSeries], tdeg_max: usize, guard: usize) -> Result<ReconstructionResult> {
    let (field, prec) = check_common(values)?;
    let needed = tdeg_max + 1 + guard;
    if prec < needed {
        return Err(Error::InsufficientPrecision {
            needed: needed as i64,
            available: prec as i64,
        });
    }
    let roots: Vec<Vec<Fe>> = values.iter().map(|v| taylor_coeffs(v, prec)).collect();
    let full = product_tree(&field, &roots, prec);
    let guard_start = prec - guard;
    let mut guard_ok = true;
    let mut xcoeffs = Vec::with_capacity(full.len());
    for (i, c) in full.iter().enumerate() {
        if let Some(j) = (tdeg_max + 1..guard_start).find(|&j| !c[j].is_zero()) {
            return Err(Error::NotRational { xdeg: i, tdeg: j });
        }
        if c[guard_start..].iter().any(|v| !v.is_zero()) {
            guard_ok = false;
        }
        xcoeffs.push(TPoly::new(&field, c[..=tdeg_max].to_vec()));
    }
    Ok(ReconstructionResult {
        poly: XTPoly::new(&field, xcoeffs),
        guard_ok,
        window: (tdeg_max + 1, prec),
    })
}

/// Rewrites `poly` over the subfield `base` when all its coefficients lie there.
pub fn descend(poly: &XTPoly, base: &FieldSpec) -> Result<Option<XTPoly>> {
    if poly.field() == base {
        return Ok(Some(poly.clone()));
    }
    let emb = Embedding::find(base, poly.field())?;
    let mut xcoeffs = Vec::new();
    for c in poly.xcoeffs() {
        let mut v = Vec::with_capacity(c.coeffs().len());
        for &a in c.coeffs() {
            match emb.preimage(a) {
                Some(b) => v.push(b),
                None => return Ok(None),
            }
        }
        xcoeffs.push(TPoly::new(base, v));
    }
    Ok(Some(XTPoly::new(base, xcoeffs)))
}

/// Subsets of `values` whose product Π(x − v) is a polynomial over `base`.
///
/// With `candidates`, only those subsets are tried; otherwise every nonempty
/// subset is, which needs 2^len ≤ min(max_enum, 2^20).
pub fn rational_subfactor_search(
    values: &[TruncSeries],
    base: &FieldSpec,
    tdeg_max: usize,
    guard: usize,
    max_enum: u64,
    candidates: Option<&[Vec<usize>]>,
) -> Result<Vec<(Vec<usize>, XTPoly)>> {
    check_common(values)?;
    let n = values.len();
    let subsets: Vec<Vec<usize>> = match candidates {
        Some(c) => {
            for s in c {
                if s.is_empty() || s.iter().any(|&i| i >= n) {
                    return Err(Error::InvalidArgument(format!("candidate {s:?} is not a subset of 0..{n}")));
                }
            }
            c.to_vec()
        }
        None => {
            let count = if n >= 64 { u128::MAX } else { 1u128 << n };
            let cap = max_enum.min(MAX_EXHAUSTIVE) as u128;
            if count > cap {
                return Err(Error::EnumerationBudget { count, budget: cap });
            }
            (1..=n).flat_map(|k| k_subsets(n, k)).collect()
        }
    };
    let mut out = Vec::new();
    for s in subsets {
        let vals: Vec<TruncSeries> = s.iter().map(|&i| values[i].clone()).collect();
        match reconstruct_poly(&vals, tdeg_max, guard) {
            Ok(r) if r.guard_ok => {
                if let Some(p) = descend(&r.poly, base)? {
                    out.push((s, p));
                }
            }
            Ok(_) | Err(Error::NotRational { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

/// g(s, t) as a truncated series.
pub fn eval_at_series(g: &XTPoly, s: &TruncSeries) -> Result<TruncSeries> {
    s.compose_poly(g)
}

/// Coordinates of a K-element over the base field.
fn coords_over(base: &FieldSpec, k: &FieldSpec, a: Fe) -> Vec<Fe> {
    if base == k {
        vec![a]
    } else {
        k.coords(a).into_iter().map(Fe).collect()
    }
}

/// The least x-degree monic polynomial with coefficients in base[t] of
/// t-degree ≤ `tdeg_max` that annihilates `s` mod t^prec, if one of x-degree
/// ≤ `xdeg_max` exists. `base` must be the series field or its prime field.
pub fn min_poly_of_series(
    s: &TruncSeries,
    base: &FieldSpec,
    xdeg_max: usize,
    tdeg_max: usize,
    prec: usize,
) -> Result<Option<XTPoly>> {
    let k = s.field().clone();
    if base != &k && !(base.is_prime_field() && base.p() == k.p()) {
        return Err(Error::InvalidArgument(format!(
            "base {} must be the series field or its prime field",
            base.tag()
        )));
    }
    let needed = (xdeg_max + 1) * (tdeg_max + 1);
    if prec < needed {
        return Err(Error::InsufficientPrecision {
            needed: needed as i64,
            available: prec as i64,
        });
    }
    check_common(std::slice::from_ref(s))?;
    if (s.coarsen().prec() as usize) < prec {
        return Err(Error::InsufficientPrecision {
            needed: prec as i64,
            available: s.coarsen().prec(),
        });
    }
    let sv = taylor_coeffs(s, prec);
    // Column for s^i t^j: coordinates of its first `prec` coefficients.
    let column = |pow: &[Fe], j: usize| -> Vec<Fe> {
        let mut v = Vec::with_capacity(prec * base.k().max(1));
        for n in 0..prec {
            let c = if n >= j { pow[n - j] } else { Fe::ZERO };
            v.extend(coords_over(base, &k, c));
        }
        v
    };
    let ncols_max = xdeg_max * (tdeg_max + 1);
    // Echelon basis: (pivot row, vector, combination over column indices).
    let mut basis: Vec<(usize, Vec<Fe>, Vec<Fe>)> = Vec::new();
    let mut ncols = 0usize;
    let mut pow = vec![Fe::ZERO; prec];
    pow[0] = k.one();
    let reduce = |v: &mut Vec<Fe>, comb: &mut Vec<Fe>, basis: &[(usize, Vec<Fe>, Vec<Fe>)]| {
        for (piv, b, bc) in basis {
            let c = v[*piv];
            if c.is_zero() {
                continue;
            }
            let factor = base.div(c, b[*piv]).expect("pivot nonzero");
            for (x, &y) in v.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x = base.sub(*x, base.mul(factor, y));
                }
            }
            for (x, &y) in comb.iter_mut().zip(bc) {
                if !y.is_zero() {
                    *x = base.sub(*x, base.mul(factor, y));
                }
            }
        }
    };
    for d in 0..=xdeg_max {
        if d > 0 {
            // s^d as a target: s^d + Σ a_ij s^i t^j = 0.
            let mut v = column(&pow, 0);
            let mut comb = vec![Fe::ZERO; ncols_max];
            reduce(&mut v, &mut comb, &basis);
            if v.iter().all(|c| c.is_zero()) {
                // Now s^d + Σ comb_c col_c = 0.
                let mut xcoeffs = Vec::with_capacity(d + 1);
                for i in 0..d {
                    let coeffs: Vec<Fe> = (0..=tdeg_max).map(|j| comb[i * (tdeg_max + 1) + j]).collect();
                    xcoeffs.push(TPoly::new(base, coeffs));
                }
                xcoeffs.push(TPoly::one(base));
                return Ok(Some(XTPoly::new(base, xcoeffs)));
            }
        }
        if d == xdeg_max {
            break;
        }
        for j in 0..=tdeg_max {
            let mut v = column(&pow, j);
            let mut comb = vec![Fe::ZERO; ncols_max];
            comb[ncols] = base.one();
            reduce(&mut v, &mut comb, &basis);
            if let Some(piv) = v.iter().position(|c| !c.is_zero()) {
                basis.push((piv, v, comb));
            }
            ncols += 1;
        }
        pow = mul_trunc(&k, &pow, &sv, prec);
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ffield::FqElem;
    use crate::series::newton_lift;

    #[test]
    fn binomials() {
        assert_eq!(binomial(11, 5), 462);
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(3, 5), 0);
    }

    #[test]
    fn min_poly_small() {
        let f2 = FieldSpec::prime(2).unwrap();
        let f = XTPoly::parse(&f2, "x^3+x+t").unwrap();
        let s = newton_lift(&f, &FqElem::new(&f2, Fe(0)), 64).unwrap();
        let m = min_poly_of_series(&s, &f2, 3, 1, 64).unwrap().unwrap();
        assert_eq!(m, f);
        assert!(min_poly_of_series(&s, &f2, 2, 1, 64).unwrap().is_none());
        let f3 = FieldSpec::prime(3).unwrap();
        let t = TruncSeries::taylor(&f3, vec![Fe(0), Fe(1), Fe(0), Fe(0)]).unwrap();
        let m = min_poly_of_series(&t, &f3, 1, 1, 4).unwrap().unwrap();
        assert_eq!(m.to_string(), "x + 2*t");
    }
}
