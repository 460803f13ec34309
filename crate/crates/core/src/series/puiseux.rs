//! Newton–Puiseux expansion at t = 0 or t = ∞.

use serde_json::{json, Value};

use super::lift::lift_simple;
use super::{gcd, TruncSeries};
use crate::error::{Error, Result};
use crate::ffield::{Embedding, Fe, FieldSpec};
use crate::polyring::{TPoly, UniPoly, XTPoly};

const MAX_DEPTH: usize = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpansionPoint {
    /// Series in t.
    Origin,
    /// Series in s = 1/t.
    Infinity,
}

/// One root of f as a Puiseux series.
#[derive(Clone, Debug)]
pub struct Branch {
    pub series: TruncSeries,
    /// The root is the displayed finite sum itself.
    pub exact: bool,
    /// Greater than one only for repeated exact roots.
    pub multiplicity: usize,
}

/// A cluster of roots whose next term needs ramification divisible by p.
#[derive(Clone, Debug)]
pub struct WildReport {
    /// Terms determined before the wild step.
    pub prefix: TruncSeries,
    /// Ramification index the next term would need.
    pub ram: u32,
    /// Exponent of the next term as a reduced fraction.
    pub valuation: (i64, u32),
    /// Number of roots in the cluster.
    pub cluster: usize,
}

#[derive(Clone, Debug)]
pub struct Expansion {
    pub point: ExpansionPoint,
    pub field: FieldSpec,
    pub prec: usize,
    pub branches: Vec<Branch>,
    pub wild: Vec<WildReport>,
}

impl Expansion {
    fn var(&self) -> &'static str {
        match self.point {
            ExpansionPoint::Origin => "t",
            ExpansionPoint::Infinity => "s",
        }
    }

    pub fn to_json(&self) -> Value {
        let var = self.var();
        json!({
            "point": match self.point {
                ExpansionPoint::Origin => "origin",
                ExpansionPoint::Infinity => "infinity",
            },
            "variable": var,
            "field": self.field.tag(),
            "prec": self.prec,
            "branches": self.branches.iter().map(|b| json!({
                "text": b.series.to_text(var),
                "ram": b.series.ram(),
                "exact": b.exact,
                "multiplicity": b.multiplicity,
                "series": b.series.to_json(),
            })).collect::<Vec<_>>(),
            "wild": self.wild.iter().map(|w| json!({
                "prefix": w.prefix.to_text(var),
                "ram": w.ram,
                "valuation": format!("{}/{}", w.valuation.0, w.valuation.1),
                "cluster": w.cluster,
            })).collect::<Vec<_>>(),
        })
    }
}

enum Step {
    Extend(usize),
    Fail(Error),
}

impl From<Error> for Step {
    fn from(e: Error) -> Step {
        Step::Fail(e)
    }
}

struct Level {
    /// F(y, τ) with x = prefix + τ^mult_exp · y and t = τ^ram.
    poly: XTPoly,
    ram: u32,
    mult_exp: i64,
    /// (numerator, ramification, coefficient)
    prefix: Vec<(i64, u32, Fe)>,
    depth: usize,
}

struct Ctx {
    field: FieldSpec,
    prec: usize,
    branches: Vec<Branch>,
    wild: Vec<WildReport>,
}

/// Assembles prefix + τ^mult_exp · tail as a series with ramification `ram`.
fn assemble(field: &FieldSpec, ram: u32, prefix: &[(i64, u32, Fe)], mult_exp: i64, tail: &[Fe], prec: i64) -> TruncSeries {
    let mut terms: Vec<(i64, Fe)> = prefix
        .iter()
        .map(|&(n, d, c)| (n * (ram / d) as i64, c))
        .collect();
    for (j, &c) in tail.iter().enumerate() {
        if !c.is_zero() {
            terms.push((mult_exp + j as i64, c));
        }
    }
    let low = terms.iter().map(|t| t.0).min().unwrap_or(prec - 1).min(prec - 1);
    let mut coeffs = vec![Fe::ZERO; (prec - low) as usize];
    for (n, c) in terms {
        if n < prec {
            let slot = (n - low) as usize;
            coeffs[slot] = field.add(coeffs[slot], c);
        }
    }
    TruncSeries::new(field, ram, low, coeffs).expect("nonempty window")
}

/// Irreducible factor degrees of `g`; `Extend` unless they are all one.
fn split_check(g: &UniPoly) -> std::result::Result<(), Step> {
    let mut need = 1usize;
    for (fac, _) in g.factor_complete() {
        let d = fac.degree().unwrap_or(0);
        if d > 1 {
            need = need / gcd(need as i64, d as i64) as usize * d;
        }
    }
    if need > 1 {
        Err(Step::Extend(need))
    } else {
        Ok(())
    }
}

/// Lower convex hull of the Newton polygon points.
fn lower_hull(points: &[(i64, i64)]) -> Vec<(i64, i64)> {
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for &pt in points {
        while hull.len() >= 2 {
            let o = hull[hull.len() - 2];
            let a = hull[hull.len() - 1];
            let cross = (a.0 - o.0) * (pt.1 - o.1) - (a.1 - o.1) * (pt.0 - o.0);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    hull
}

/// G(z, σ) = F(σ^a (c + z), σ^e) / σ^h.
fn substitute(f: &XTPoly, a: i64, e: i64, h: i64, c: Fe) -> XTPoly {
    let k = f.field();
    let n = f.degree_x().unwrap_or(0);
    let mut out: Vec<Vec<(usize, Fe)>> = vec![Vec::new(); n + 1];
    let mut cz = UniPoly::one(k);
    let lin = UniPoly::new(k, vec![c, k.one()]);
    for i in 0..=n {
        let ci = f.coeff(i);
        if !ci.is_zero() {
            let mut b: Vec<(usize, Fe)> = Vec::new();
            for (j, &v) in ci.coeffs().iter().enumerate() {
                if !v.is_zero() {
                    let ex = a * i as i64 + e * j as i64 - h;
                    debug_assert!(ex >= 0, "point below the edge");
                    b.push((ex as usize, v));
                }
            }
            for (kk, &w) in cz.coeffs().iter().enumerate() {
                if w.is_zero() {
                    continue;
                }
                for &(ex, v) in &b {
                    out[kk].push((ex, k.mul(v, w)));
                }
            }
        }
        cz = cz.mul(&lin);
    }
    let xcoeffs = out
        .into_iter()
        .map(|terms| {
            let top = terms.iter().map(|t| t.0).max().map_or(0, |m| m + 1);
            let mut v = vec![Fe::ZERO; top];
            for (ex, c) in terms {
                v[ex] = k.add(v[ex], c);
            }
            TPoly::new(k, v)
        })
        .collect();
    XTPoly::new(k, xcoeffs)
}

fn expand(ctx: &mut Ctx, lv: Level, positive_only: bool) -> std::result::Result<(), Step> {
    if lv.depth > MAX_DEPTH {
        return Err(Step::Fail(Error::NotLiftable(format!(
            "expansion did not separate after {MAX_DEPTH} levels; f may have a repeated factor"
        ))));
    }
    let k = ctx.field.clone();
    let p = k.p() as i64;
    let f = &lv.poly;
    let points: Vec<(i64, i64)> = f
        .xcoeffs()
        .iter()
        .enumerate()
        .filter_map(|(i, c)| c.valuation().map(|j| (i as i64, j as i64)))
        .collect();
    let Some(&(i_min, _)) = points.first() else {
        return Err(Step::Fail(Error::InvalidArgument("zero polynomial".into())));
    };
    let out_prec = ctx.prec as i64 * lv.ram as i64;
    if i_min > 0 {
        ctx.branches.push(Branch {
            series: assemble(&k, lv.ram, &lv.prefix, lv.mult_exp, &[], out_prec),
            exact: true,
            multiplicity: i_min as usize,
        });
    }
    let hull = lower_hull(&points);
    for w in hull.windows(2) {
        let ((i0, j0), (i1, j1)) = (w[0], w[1]);
        let rise = j0 - j1;
        if positive_only && rise <= 0 {
            break;
        }
        let g = gcd(rise, i1 - i0);
        let (a, e) = (rise / g, (i1 - i0) / g);
        let ram = lv.ram as i64 * e;
        let m_next = lv.mult_exp * e + a;
        if e % p == 0 {
            let known = assemble(&k, ram as u32, &lv.prefix, 0, &[], m_next.min(out_prec * e));
            let r = gcd(m_next, ram);
            ctx.wild.push(WildReport {
                prefix: known,
                ram: e as u32,
                valuation: (m_next / r, (ram / r) as u32),
                cluster: (i1 - i0) as usize,
            });
            continue;
        }
        let phi: Vec<Fe> = (0..=g)
            .map(|s| {
                let c = f.coeff((i0 + s * e) as usize);
                let j = (j0 - s * a) as usize;
                c.coeffs().get(j).copied().unwrap_or(Fe::ZERO)
            })
            .collect();
        let phi = UniPoly::new(&k, phi);
        split_check(&phi)?;
        let h = a * i0 + e * j0;
        for (w, mu) in phi.roots() {
            let mut ze = vec![Fe::ZERO; e as usize + 1];
            ze[0] = k.neg(w);
            ze[e as usize] = k.one();
            let ze = UniPoly::new(&k, ze);
            split_check(&ze)?;
            for (c, _) in ze.roots() {
                let gpoly = substitute(f, a, e, h, c);
                let mut prefix = lv.prefix.clone();
                prefix.push((m_next, ram as u32, c));
                if mu == 1 {
                    let need = (ctx.prec as i64 * ram - m_next).max(1) as usize;
                    let z = lift_simple(&gpoly, Fe::ZERO, need);
                    ctx.branches.push(Branch {
                        series: assemble(&k, ram as u32, &prefix, m_next, &z, ctx.prec as i64 * ram),
                        exact: false,
                        multiplicity: 1,
                    });
                } else {
                    expand(
                        ctx,
                        Level {
                            poly: gpoly,
                            ram: ram as u32,
                            mult_exp: m_next,
                            prefix,
                            depth: lv.depth + 1,
                        },
                        true,
                    )?;
                }
            }
        }
    }
    Ok(())
}

/// f(x, 1/s) · s^{deg_t f}.
fn at_infinity(f: &XTPoly) -> XTPoly {
    let d = f.degree_t();
    let k = f.field();
    let xcoeffs = f
        .xcoeffs()
        .iter()
        .map(|c| {
            let mut v = vec![Fe::ZERO; d + 1];
            for (j, &x) in c.coeffs().iter().enumerate() {
                v[d - j] = x;
            }
            TPoly::new(k, v)
        })
        .collect();
    XTPoly::new(k, xcoeffs)
}

/// Puiseux expansions of all roots of f at t = 0 (series in t) or at t = ∞
/// (series in s = 1/t), each known below exponent `prec`.
///
/// The coefficient field starts at `field` (or the field of f) and is
/// extended until every tame branch is defined over it. Branches that need
/// ramification divisible by p are returned as [`WildReport`]s.
pub fn puiseux_expand(f: &XTPoly, at: ExpansionPoint, prec: usize, field: Option<&FieldSpec>) -> Result<Expansion> {
    if prec == 0 {
        return Err(Error::EmptyPrecision);
    }
    match f.degree_x() {
        None | Some(0) => return Err(Error::InvalidArgument("f must have positive degree in x".into())),
        Some(_) => {}
    }
    if f.derivative_x().is_zero() {
        return Err(Error::InvalidArgument("f is inseparable in x".into()));
    }
    let base = match at {
        ExpansionPoint::Origin => f.clone(),
        ExpansionPoint::Infinity => at_infinity(f),
    };
    let mut k = field.cloned().unwrap_or_else(|| f.field().clone());
    loop {
        let emb = Embedding::find(f.field(), &k)?;
        let mut ctx = Ctx {
            field: k.clone(),
            prec,
            branches: Vec::new(),
            wild: Vec::new(),
        };
        let level = Level {
            poly: base.map(&emb),
            ram: 1,
            mult_exp: 0,
            prefix: Vec::new(),
            depth: 0,
        };
        match expand(&mut ctx, level, false) {
            Ok(()) => {
                let mut branches = ctx.branches;
                for b in &mut branches {
                    b.series = b.series.coarsen();
                }
                branches.sort_by(|x, y| {
                    let kx = (x.series.ram(), x.series.valuation(), x.series.coeffs().to_vec());
                    let ky = (y.series.ram(), y.series.valuation(), y.series.coeffs().to_vec());
                    kx.cmp(&ky)
                });
                return Ok(Expansion {
                    point: at,
                    field: k,
                    prec,
                    branches,
                    wild: ctx.wild,
                });
            }
            Err(Step::Extend(d)) => {
                k = FieldSpec::new(k.p(), k.k() * d, None)?;
            }
            Err(Step::Fail(e)) => return Err(e),
        }
    }
}
