//! Discriminant, additive and resolvent evidence for identification.

use serde::{Deserialize, Serialize};

use crate::additive::{affine_relation, minimal_additive_multiple, AdditiveOptions};
use crate::error::{Error, Result};
use crate::ffield::{Fe, FieldSpec};
use crate::permgrp::BlockSet;
use crate::polyring::{Discriminant, UniPoly, XTPoly};
use crate::resolvent::{binomial, descend, product_of, reconstruct_poly};
use crate::series::{all_taylor_roots, TruncSeries};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DiscVerdict {
    Square,
    Nonsquare,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiscReport {
    pub verdict: DiscVerdict,
    /// disc_x f as a polynomial in t; absent in characteristic 2.
    pub value: Option<String>,
}

/// Whether disc_x f is a square in F_q(t). Characteristic 2 is not applicable.
pub fn disc_square_test(f: &XTPoly) -> Result<DiscReport> {
    let field = f.field();
    if field.p() == 2 {
        return Ok(DiscReport {
            verdict: DiscVerdict::NotApplicable,
            value: None,
        });
    }
    let d = match f.discriminant()? {
        Discriminant::Value(d) => d,
        Discriminant::Inseparable => return Err(Error::InvalidArgument("f is inseparable in x".into())),
    };
    if d.is_zero() {
        return Err(Error::InvalidArgument("f has a repeated factor: discriminant is zero".into()));
    }
    let lc = d.lc();
    let lc_square = field.pow(lc, ((field.q() - 1) / 2) as u128) == field.one();
    let even = d.factor_complete().iter().all(|(_, m)| m % 2 == 0);
    Ok(DiscReport {
        verdict: if lc_square && even {
            DiscVerdict::Square
        } else {
            DiscVerdict::Nonsquare
        },
        value: Some(d.to_string_in('t')),
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdditiveSummary {
    /// p-degree of the least homogeneous additive multiple of f.
    pub homogeneous_pdeg: Option<usize>,
    /// p-degree of the least relation L(x) ≡ c (mod f).
    pub affine_pdeg: Option<usize>,
    /// Whether that relation has c ≠ 0.
    pub affine: bool,
    pub notes: Vec<String>,
}

pub fn additive_summary(f: &XTPoly, opts: &AdditiveOptions) -> AdditiveSummary {
    let mut out = AdditiveSummary::default();
    match minimal_additive_multiple(f, opts) {
        Ok(r) => out.homogeneous_pdeg = Some(r.pdeg),
        Err(e) => out.notes.push(format!("homogeneous relation not found: {e}")),
    }
    match affine_relation(f, opts) {
        Ok(r) => {
            out.affine = r.is_affine();
            out.affine_pdeg = Some(r.pdeg);
        }
        Err(e) => out.notes.push(format!("affine relation not found: {e}")),
    }
    out
}

/// How resolvent roots are numbered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RootLabeling {
    /// Order returned by the Taylor root census.
    Canonical,
    /// Root i is the one with constant term base^i, over `field`.
    PowersOf { field: FieldSpec, base: Fe },
}

/// A candidate Galois-stable family of k-subsets of the roots.
#[derive(Clone, Debug)]
pub struct BlockSpec {
    pub blocks: BlockSet,
    pub labeling: RootLabeling,
}

impl BlockSpec {
    /// The 66 blocks of S(4,5,11), roots labeled by powers of an element of
    /// order 11 in F_{3^5}.
    pub fn steiner11() -> BlockSpec {
        BlockSpec {
            blocks: crate::permgrp::steiner11_blocks(),
            labeling: RootLabeling::PowersOf {
                field: crate::series::m11_field(),
                base: crate::series::m11_epsilon().value(),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolventFinding {
    pub k: usize,
    /// Degree of the full k-set resolvent, C(n, k).
    pub resolvent_degree: usize,
    /// x-degrees of proper factors over F_q(t) shown to divide the resolvent.
    pub factor_degrees: Vec<usize>,
    /// Factors found in truncated arithmetic that could not be confirmed.
    pub unverified_degrees: Vec<usize>,
    /// Proven t-degree bound on the resolvent's coefficients.
    pub tdeg_bound: usize,
    pub precision: usize,
    /// t was replaced by t + shift to make f(x, 0) squarefree.
    pub shift: Option<String>,
    /// The first verified factor, as text.
    pub factor: Option<String>,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct ResolventOptions {
    pub guard: usize,
    pub product_budget: usize,
    /// Largest C(n, k) for an exhaustive subset search.
    pub max_exhaustive: usize,
}

impl Default for ResolventOptions {
    fn default() -> Self {
        ResolventOptions {
            guard: crate::resolvent::DEFAULT_GUARD,
            product_budget: crate::resolvent::DEFAULT_PRODUCT_BUDGET,
            max_exhaustive: 16,
        }
    }
}

/// Bound on the t-degree of the elementary symmetric functions of m
/// products of k roots of the monic f: each root has pole order at most
/// max_i deg a_i / (n − i) at infinity.
pub fn symmetric_tdeg_bound(f: &XTPoly, m: usize, k: usize) -> usize {
    let n = f.degree_x().unwrap_or(0);
    (0..n)
        .filter_map(|i| f.coeff(i).degree().map(|d| m * k * d / (n - i)))
        .max()
        .unwrap_or(0)
}

fn shift_t(f: &XTPoly, c: Fe) -> XTPoly {
    let field = f.field();
    let s = UniPoly::new(field, vec![c, field.one()]);
    XTPoly::new(field, f.xcoeffs().iter().map(|a| a.compose(&s)).collect())
}

/// k-set resolvent facts for the monic f: the full resolvent is rebuilt with
/// a proven degree bound, and candidate factors count only if they divide it
/// exactly. With `blocks`, that family is the only candidate; otherwise
/// every subset of the C(n, k) products is tried when C(n, k) is small.
pub fn resolvent_facts(
    f: &XTPoly,
    k: usize,
    blocks: Option<&BlockSpec>,
    opts: &ResolventOptions,
) -> Result<ResolventFinding> {
    let n = f.degree_x().unwrap_or(0);
    if k == 0 || k >= n {
        return Err(Error::InvalidArgument(format!("resolvent size k = {k} must lie in 1..{n}")));
    }
    let base = f.field().clone();
    let total = binomial(n as u64, k as u64);
    let tdeg_bound = symmetric_tdeg_bound(f, total as usize, k);
    let precision = tdeg_bound + 1 + opts.guard;
    let mut finding = ResolventFinding {
        k,
        resolvent_degree: total as usize,
        factor_degrees: Vec::new(),
        unverified_degrees: Vec::new(),
        tdeg_bound,
        precision,
        shift: None,
        factor: None,
        notes: Vec::new(),
    };
    if total > opts.product_budget as u128 {
        finding.notes.push(format!("C({n},{k}) = {total} exceeds the product budget"));
        return Ok(finding);
    }
    if let Some(b) = blocks {
        if b.blocks.n() != n || b.blocks.block_size() != k {
            return Err(Error::InvalidArgument(format!(
                "blocks are {}-subsets of {} points, expected {k}-subsets of {n}",
                b.blocks.block_size(),
                b.blocks.n()
            )));
        }
    }

    let shift = base
        .elements()
        .find(|&c| {
            let g = f.eval_t(c);
            g.degree() == Some(n) && g.is_squarefree()
        })
        .ok_or_else(|| Error::InvalidArgument("no base-field point where f(x, t0) is squarefree".into()))?;
    let g = if shift.is_zero() {
        f.clone()
    } else {
        finding.shift = Some(base.format(shift));
        shift_t(f, shift)
    };
    let field_hint = match blocks.map(|b| &b.labeling) {
        Some(RootLabeling::PowersOf { field, .. }) => Some(field.clone()),
        _ => None,
    };
    let census = all_taylor_roots(&g, precision, field_hint.as_ref())?;
    if census.series.len() != n {
        finding.notes.push(format!("only {} of {n} roots are Taylor series", census.series.len()));
        return Ok(finding);
    }
    let roots = match blocks.map(|b| &b.labeling) {
        Some(RootLabeling::PowersOf { field, base: b }) => label_by_powers(&census.series, field, *b, n)?,
        _ => census.series.clone(),
    };

    let subsets = crate::permgrp::k_subsets(n, k);
    let products: Vec<TruncSeries> = subsets.iter().map(|s| product_of(&roots, s)).collect();
    let mut heads: Vec<Vec<Fe>> = products
        .iter()
        .map(|v| (0..precision as i64).map(|i| v.coeff(i).unwrap_or(Fe::ZERO)).collect())
        .collect();
    heads.sort();
    heads.dedup();
    if heads.len() != products.len() {
        finding.notes.push("subset products coincide; the resolvent is not squarefree".into());
        return Ok(finding);
    }
    let full = reconstruct_poly(&products, tdeg_bound, opts.guard)?;
    let Some(full) = descend(&full.poly, &base)? else {
        return Err(Error::InvalidArgument("full resolvent is not defined over the base field".into()));
    };

    let candidates: Vec<Vec<usize>> = match blocks {
        Some(b) => vec![b
            .blocks
            .blocks()
            .iter()
            .map(|blk| subsets.binary_search(blk).expect("blocks are sorted k-subsets"))
            .collect()],
        None if products.len() <= opts.max_exhaustive => {
            let c = products.len();
            (1..(1usize << c) - 1)
                .filter(|mask| mask.count_ones() as usize <= c / 2)
                .map(|mask| (0..c).filter(|i| mask >> i & 1 == 1).collect())
                .collect()
        }
        None => {
            finding.notes.push(format!(
                "C({n},{k}) = {total} is too large for an exhaustive factor search; pass blocks"
            ));
            Vec::new()
        }
    };
    for cand in candidates {
        let vals: Vec<TruncSeries> = cand.iter().map(|&i| products[i].clone()).collect();
        let m = vals.len();
        let bound = symmetric_tdeg_bound(&g, m, k);
        let r = match reconstruct_poly(&vals, bound, opts.guard) {
            Ok(r) if r.guard_ok => r,
            Ok(_) | Err(Error::NotRational { .. }) => continue,
            Err(e) => return Err(e),
        };
        let Some(factor) = descend(&r.poly, &base)? else {
            continue;
        };
        if full.div_exact(&factor).is_ok() {
            if !finding.factor_degrees.contains(&m) {
                finding.factor_degrees.push(m);
            }
            if finding.factor.is_none() {
                let exact = if shift.is_zero() {
                    factor
                } else {
                    shift_t(&factor, base.neg(shift))
                };
                finding.factor = Some(exact.to_string());
            }
        } else if !finding.unverified_degrees.contains(&m) {
            finding.unverified_degrees.push(m);
        }
    }
    finding.factor_degrees.sort_unstable();
    finding.unverified_degrees.sort_unstable();
    Ok(finding)
}

fn label_by_powers(series: &[TruncSeries], field: &FieldSpec, base: Fe, n: usize) -> Result<Vec<TruncSeries>> {
    let mut out = Vec::with_capacity(n);
    let mut c = field.one();
    for i in 0..n {
        let s = series
            .iter()
            .find(|s| s.field() == field && s.coeff(0).unwrap_or(Fe::ZERO) == c)
            .ok_or_else(|| {
                Error::InvalidArgument(format!("no root with constant term {} (label {i})", field.format(c)))
            })?;
        out.push(s.clone());
        c = field.mul(c, base);
    }
    Ok(out)
}
