//! Galois group identification: Frobenius shapes, structural bounds and
//! resolvent facts, filtered against a catalog of transitive groups.
//!
//! Only positive evidence excludes a group. A shape that was never sampled
//! proves nothing, so every exclusion cites one rule from the list below,
//! applied in order:
//!
//! - R1: transitivity, when the sampled shapes admit no proper factor degree;
//! - R2: the lcm of each sampled shape divides |G|;
//! - R3: each sampled shape occurs in G;
//! - R4: an (n−1)-cycle forces 2-transitivity;
//! - R5: discriminant parity in odd characteristic;
//! - R6: additive relations bound G inside GL_d(p) or AGL_d(p);
//! - R7: a verified k-set resolvent factor of degree m needs a union of
//!   k-subset orbits of size m.

mod catalog;
mod evidence;
mod shapes;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

pub use catalog::{Catalog, CatalogEntry, ShapeSpec};
pub use evidence::{
    additive_summary, disc_square_test, resolvent_facts, symmetric_tdeg_bound, AdditiveSummary, BlockSpec,
    DiscReport, DiscVerdict, ResolventFinding, ResolventOptions, RootLabeling,
};
pub use shapes::{factor_degree_candidates, forces_transitive, shape_sweep, specialize_shape, ShapeSample, SpecPoint};

use crate::additive::AdditiveOptions;
use crate::error::{Error, Result};
use crate::permgrp::CycleShape;
use crate::polyring::XTPoly;

/// Largest C(n, k) for which k-subset orbits of catalog groups are computed.
const ORBIT_CAP: usize = 200_000;

#[derive(Clone, Debug)]
pub struct IdentifyOptions {
    /// Specialization points are taken in F_{q^m} for m up to this.
    pub sweep_degree: usize,
    pub point_budget: usize,
    pub additive: bool,
    pub additive_options: AdditiveOptions,
    /// Size of subsets for an explicit resolvent computation.
    pub resolvent_k: Option<usize>,
    pub blocks: Option<BlockSpec>,
    /// Try a 2-set resolvent when several groups survive and C(n, 2) is small.
    pub auto_resolvent: bool,
    pub resolvent_options: ResolventOptions,
}

impl Default for IdentifyOptions {
    fn default() -> Self {
        IdentifyOptions {
            sweep_degree: 3,
            point_budget: 4096,
            additive: true,
            additive_options: AdditiveOptions::default(),
            resolvent_k: None,
            blocks: None,
            auto_resolvent: true,
            resolvent_options: ResolventOptions::default(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Hardness {
    Hard,
    Statistical,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exclusion {
    pub name: String,
    pub rule: String,
    pub reason: String,
    pub hardness: Hardness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Survivor {
    pub name: String,
    pub order: String,
    pub hardness: Hardness,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleLog {
    pub rule: String,
    pub summary: String,
    pub excluded: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvidenceReport {
    pub input: String,
    pub field: String,
    pub degree: usize,
    pub samples: Vec<ShapeSample>,
    /// Distinct sampled shapes.
    pub shapes: Vec<String>,
    /// Factor-degree multisets compatible with the shapes; absent for large n.
    pub factor_degree_candidates: Option<Vec<Vec<usize>>>,
    pub transitive: bool,
    pub additive: Option<AdditiveSummary>,
    pub discriminant: Option<DiscReport>,
    pub resolvents: Vec<ResolventFinding>,
    pub log: Vec<RuleLog>,
    pub excluded: Vec<Exclusion>,
    pub survivors: Vec<Survivor>,
    /// Set only when exactly one group survives and transitivity is proven.
    pub identified: Option<String>,
    pub notes: Vec<String>,
}

impl EvidenceReport {
    pub fn survivor_names(&self) -> Vec<&str> {
        self.survivors.iter().map(|s| s.name.as_str()).collect()
    }
}

struct Filter<'a> {
    alive: Vec<&'a CatalogEntry>,
    excluded: Vec<Exclusion>,
    log: Vec<RuleLog>,
}

impl<'a> Filter<'a> {
    fn apply(&mut self, rule: &str, summary: String, mut reject: impl FnMut(&CatalogEntry) -> Option<String>) {
        let mut names = Vec::new();
        let mut keep = Vec::new();
        for e in std::mem::take(&mut self.alive) {
            match reject(e) {
                Some(reason) => {
                    names.push(e.name.clone());
                    self.excluded.push(Exclusion {
                        name: e.name.clone(),
                        rule: rule.into(),
                        reason,
                        hardness: Hardness::Hard,
                    });
                }
                None => keep.push(e),
            }
        }
        self.alive = keep;
        self.log.push(RuleLog {
            rule: rule.into(),
            summary,
            excluded: names,
        });
    }
}

/// |GL_d(p)|, or `None` on overflow.
fn gl_order(d: usize, p: u64) -> Option<u128> {
    let p = p as u128;
    let pd = p.checked_pow(d as u32)?;
    let mut acc: u128 = 1;
    let mut pi: u128 = 1;
    for _ in 0..d {
        acc = acc.checked_mul(pd - pi)?;
        pi *= p;
    }
    Some(acc)
}

fn agl_order(d: usize, p: u64) -> Option<u128> {
    gl_order(d, p)?.checked_mul((p as u128).checked_pow(d as u32)?)
}

/// Applies R1–R7 to the catalog entries of degree deg_x f.
pub fn identify(f: &XTPoly, catalog: &Catalog, opts: &IdentifyOptions) -> Result<EvidenceReport> {
    let field = f.field().clone();
    let n = f.degree_x().unwrap_or(0);
    let mut report = EvidenceReport {
        input: f.to_string(),
        field: field.tag(),
        degree: n,
        samples: Vec::new(),
        shapes: Vec::new(),
        factor_degree_candidates: None,
        transitive: false,
        additive: None,
        discriminant: None,
        resolvents: Vec::new(),
        log: Vec::new(),
        excluded: Vec::new(),
        survivors: Vec::new(),
        identified: None,
        notes: Vec::new(),
    };
    if n <= 1 {
        report.transitive = true;
        report.identified = Some("1".into());
        report.notes.push("degree ≤ 1: the Galois group is trivial".into());
        return Ok(report);
    }
    if !f.lc_x().is_one() {
        return Err(Error::InvalidArgument("identify needs f monic in x".into()));
    }
    let entries = catalog.of_degree(n);
    if entries.is_empty() {
        return Err(Error::Catalog(format!(
            "no catalog entries of degree {n} (available: {:?})",
            catalog.degrees()
        )));
    }

    report.samples = shape_sweep(f, opts.sweep_degree, opts.point_budget)?;
    let distinct: BTreeSet<CycleShape> = report.samples.iter().map(|s| s.cycle_shape()).collect();
    let shapes: Vec<CycleShape> = distinct.into_iter().collect();
    report.shapes = shapes.iter().map(|s| s.to_string()).collect();
    report.factor_degree_candidates = factor_degree_candidates(&shapes, n).map(|c| c.into_iter().collect());
    report.transitive = forces_transitive(&shapes, n);

    let mut filt = Filter {
        alive: entries,
        excluded: Vec::new(),
        log: Vec::new(),
    };

    // R1 excludes nothing by itself: the catalog holds transitive groups only.
    filt.log.push(RuleLog {
        rule: "R1".into(),
        summary: if report.transitive {
            "sampled shapes admit only the factor degree {n}: f is irreducible, G is transitive".replace("{n}", &n.to_string())
        } else {
            "irreducibility not forced by the sampled shapes; survivors are statistical".into()
        },
        excluded: Vec::new(),
    });

    filt.apply("R2", "lcm of every sampled shape divides |G|".into(), |e| {
        let order = e.order_u128();
        shapes
            .iter()
            .find(|s| order % s.order() as u128 != 0)
            .map(|s| format!("element order {} of shape {s} does not divide |G| = {order}", s.order()))
    });

    filt.apply("R3", "every sampled shape occurs in G".into(), |e| {
        shapes
            .iter()
            .find(|s| !e.contains_shape(s))
            .map(|s| format!("shape {s} does not occur in {}", e.name))
    });

    let has_long_cycle = shapes.iter().any(|s| s.parts() == [n - 1, 1]);
    if report.transitive && has_long_cycle {
        filt.apply(
            "R4",
            format!("an {}-cycle in a transitive group forces 2-transitivity", n - 1),
            |e| (!e.two_transitive).then(|| format!("{} is not 2-transitive", e.name)),
        );
    } else {
        filt.log.push(RuleLog {
            rule: "R4".into(),
            summary: "no (n-1)-cycle with proven transitivity; not applied".into(),
            excluded: Vec::new(),
        });
    }

    let disc = disc_square_test(f)?;
    match disc.verdict {
        DiscVerdict::Square => {
            if let Some(odd) = shapes.iter().find(|s| !s.is_even()) {
                filt.log.push(RuleLog {
                    rule: "R5".into(),
                    summary: format!("square discriminant contradicts the odd shape {odd}"),
                    excluded: Vec::new(),
                });
                return Err(Error::NoSurvivors(log_text(&filt.log)));
            }
            filt.apply("R5", "square discriminant: G lies in the alternating group".into(), |e| {
                (!e.in_alternating).then(|| format!("{} contains odd permutations", e.name))
            });
        }
        DiscVerdict::Nonsquare => {
            filt.apply("R5", "nonsquare discriminant: G contains an odd permutation".into(), |e| {
                e.in_alternating.then(|| format!("{} lies in the alternating group", e.name))
            });
        }
        DiscVerdict::NotApplicable => filt.log.push(RuleLog {
            rule: "R5".into(),
            summary: "characteristic 2: discriminant parity not applicable".into(),
            excluded: Vec::new(),
        }),
    }
    report.discriminant = Some(disc);

    if opts.additive {
        let summary = additive_summary(f, &opts.additive_options);
        apply_additive(&mut filt, &summary, field.p());
        report.additive = Some(summary);
    }

    let mut findings = Vec::new();
    if let Some(k) = opts.resolvent_k.or(opts.blocks.as_ref().map(|b| b.blocks.block_size())) {
        findings.push(resolvent_facts(f, k, opts.blocks.as_ref(), &opts.resolvent_options)?);
    } else if opts.auto_resolvent
        && filt.alive.len() > 1
        && crate::resolvent::binomial(n as u64, 2) <= opts.resolvent_options.max_exhaustive as u128
    {
        match resolvent_facts(f, 2, None, &opts.resolvent_options) {
            Ok(r) => findings.push(r),
            Err(e) => report.notes.push(format!("2-set resolvent skipped: {e}")),
        }
    }
    for fnd in &findings {
        if fnd.factor_degrees.is_empty() {
            continue;
        }
        let k = fnd.k;
        let degrees = fnd.factor_degrees.clone();
        filt.apply(
            "R7",
            format!("the {k}-set resolvent has factors of degrees {degrees:?}"),
            |e| match e.k_subset_orbit_sizes(k, ORBIT_CAP) {
                Ok(Some(sizes)) => {
                    let sums = shapes::subset_sums(&sizes, fnd.resolvent_degree);
                    degrees
                        .iter()
                        .find(|&&m| !sums[m])
                        .map(|m| format!("no union of {k}-subset orbits (sizes {sizes:?}) has size {m}"))
                }
                _ => None,
            },
        );
    }
    report.resolvents = findings;

    let hardness = if report.transitive {
        Hardness::Hard
    } else {
        Hardness::Statistical
    };
    let several = filt.alive.len() > 1;
    report.survivors = filt
        .alive
        .iter()
        .map(|e| Survivor {
            name: e.name.clone(),
            order: e.order.clone(),
            hardness,
            note: several.then(|| "not excluded by hard evidence".to_string()),
        })
        .collect();
    report.excluded = filt.excluded;
    report.log = filt.log;
    if report.survivors.is_empty() {
        let mut text = log_text(&report.log);
        for x in &report.excluded {
            text.push_str(&format!("; {} excluded by {}: {}", x.name, x.rule, x.reason));
        }
        return Err(Error::NoSurvivors(text));
    }
    if report.survivors.len() == 1 && report.transitive {
        report.identified = Some(report.survivors[0].name.clone());
    }
    if has_long_cycle {
        report
            .notes
            .push("3-transitivity is not inferred from shapes; R4 stops at 2-transitivity".into());
    }
    Ok(report)
}

fn log_text(log: &[RuleLog]) -> String {
    log.iter()
        .map(|l| format!("{}: {}", l.rule, l.summary))
        .collect::<Vec<_>>()
        .join("; ")
}

fn apply_additive(filt: &mut Filter<'_>, s: &AdditiveSummary, p: u64) {
    if let Some(d) = s.homogeneous_pdeg {
        let bound = gl_order(d, p);
        filt.apply(
            "R6",
            format!("roots span an F_{p}-space of dimension ≤ {d}: G ⊆ GL_{d}({p})"),
            |e| {
                if let Some(m) = e.min_dim(p).filter(|&m| m > d) {
                    return Some(format!("{} has no faithful F_{p}-module of dimension < {m}", e.name));
                }
                bound
                    .filter(|&b| e.order_u128() > b)
                    .map(|b| format!("|{}| = {} exceeds |GL_{d}({p})| = {b}", e.name, e.order))
            },
        );
    }
    if let (Some(d), true) = (s.affine_pdeg, s.affine) {
        let bound = agl_order(d, p);
        filt.apply(
            "R6",
            format!("roots form an affine F_{p}-space of dimension ≤ {d}: G ⊆ AGL_{d}({p})"),
            |e| {
                if let Some(m) = e.min_dim(p).filter(|&m| m > d + 1) {
                    return Some(format!("{} has no faithful F_{p}-module of dimension < {m}", e.name));
                }
                bound
                    .filter(|&b| e.order_u128() > b)
                    .map(|b| format!("|{}| = {} exceeds |AGL_{d}({p})| = {b}", e.name, e.order))
            },
        );
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_group_orders() {
        assert_eq!(gl_order(3, 2), Some(168));
        assert_eq!(agl_order(2, 2), Some(24));
        assert_eq!(gl_order(2, 3), Some(48));
        assert_eq!(gl_order(12, 2), None);
    }
}
