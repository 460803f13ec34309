//! Transitive permutation groups of the supported degrees.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::permgrp::{k_subsets, CycleShape, Permutation};

const SHIPPED: &str = include_str!("../../data/catalog.json");

/// Shape sets too large to list are given as keywords.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ShapeSpec {
    /// `"all"` (symmetric group) or `"even"` (alternating group).
    Keyword(String),
    List(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub degree: usize,
    /// Decimal; symmetric groups overflow u64.
    pub order: String,
    pub generators: Vec<String>,
    pub shapes: ShapeSpec,
    pub in_alternating: bool,
    pub two_transitive: bool,
    /// Characteristic (decimal) to least d with the group inside GL_d(p).
    #[serde(default)]
    pub min_faithful_dim: BTreeMap<String, usize>,
    pub source: String,
}

impl CatalogEntry {
    pub fn order_u128(&self) -> u128 {
        self.order.parse().expect("validated on load")
    }

    pub fn is_symmetric(&self) -> bool {
        self.shapes == ShapeSpec::Keyword("all".into())
    }

    pub fn is_alternating(&self) -> bool {
        self.shapes == ShapeSpec::Keyword("even".into())
    }

    pub fn contains_shape(&self, s: &CycleShape) -> bool {
        if s.degree() != self.degree {
            return false;
        }
        match &self.shapes {
            ShapeSpec::Keyword(k) if k == "all" => true,
            ShapeSpec::Keyword(_) => s.is_even(),
            ShapeSpec::List(v) => v.iter().any(|t| CycleShape::parse(t).ok().as_ref() == Some(s)),
        }
    }

    /// The listed shapes, parsed; `None` for keyword entries.
    pub fn shape_list(&self) -> Option<BTreeSet<CycleShape>> {
        match &self.shapes {
            ShapeSpec::List(v) => Some(v.iter().map(|t| CycleShape::parse(t).expect("validated on load")).collect()),
            ShapeSpec::Keyword(_) => None,
        }
    }

    pub fn min_dim(&self, p: u64) -> Option<usize> {
        self.min_faithful_dim.get(&p.to_string()).copied()
    }

    pub fn generator_perms(&self) -> Result<Vec<Permutation>> {
        self.generators.iter().map(|g| Permutation::parse(g, self.degree)).collect()
    }

    /// Orbit sizes on k-subsets, or `None` when there are more than `cap`
    /// subsets to track.
    pub fn k_subset_orbit_sizes(&self, k: usize, cap: usize) -> Result<Option<Vec<usize>>> {
        let n = self.degree;
        if k > n {
            return Ok(Some(Vec::new()));
        }
        let total = crate::resolvent::binomial(n as u64, k as u64);
        if self.is_symmetric() || (self.is_alternating() && n >= 3) {
            return Ok(Some(vec![total as usize]));
        }
        if total > cap as u128 {
            return Ok(None);
        }
        let subsets = k_subsets(n, k);
        let index: std::collections::HashMap<Vec<usize>, usize> =
            subsets.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let mut parent: Vec<usize> = (0..subsets.len()).collect();
        fn root(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for g in self.generator_perms()? {
            for (i, s) in subsets.iter().enumerate() {
                let mut img: Vec<usize> = s.iter().map(|&x| g.apply(x)).collect();
                img.sort_unstable();
                let j = index[&img];
                let (a, b) = (root(&mut parent, i), root(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
        let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
        for i in 0..subsets.len() {
            *sizes.entry(root(&mut parent, i)).or_default() += 1;
        }
        let mut v: Vec<usize> = sizes.into_values().collect();
        v.sort_unstable();
        Ok(Some(v))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub version: u32,
    pub entries: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn shipped() -> Catalog {
        Catalog::from_json(SHIPPED).expect("shipped catalog is valid")
    }

    pub fn load(path: &Path) -> Result<Catalog> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Catalog::from_json(&text)
    }

    pub fn from_json(text: &str) -> Result<Catalog> {
        let cat: Catalog = serde_json::from_str(text).map_err(|e| Error::Catalog(e.to_string()))?;
        for e in &cat.entries {
            e.validate()?;
        }
        Ok(cat)
    }

    pub fn of_degree(&self, n: usize) -> Vec<&CatalogEntry> {
        self.entries.iter().filter(|e| e.degree == n).collect()
    }

    pub fn degrees(&self) -> BTreeSet<usize> {
        self.entries.iter().map(|e| e.degree).collect()
    }
}

impl CatalogEntry {
    fn validate(&self) -> Result<()> {
        let bad = |msg: String| Error::Catalog(format!("{} (degree {}): {msg}", self.name, self.degree));
        let order: u128 = self.order.parse().map_err(|_| bad(format!("order {:?} is not an integer", self.order)))?;
        let fact = (1..=self.degree as u128).try_fold(1u128, |acc, i| acc.checked_mul(i));
        if let Some(f) = fact {
            if order == 0 || f % order != 0 {
                return Err(bad(format!("order {order} does not divide {}!", self.degree)));
            }
        }
        match &self.shapes {
            ShapeSpec::Keyword(k) if k == "all" || k == "even" => {}
            ShapeSpec::Keyword(k) => return Err(bad(format!("unknown shape keyword {k:?}"))),
            ShapeSpec::List(v) => {
                for s in v {
                    let c = CycleShape::parse(s)?;
                    if c.degree() != self.degree {
                        return Err(bad(format!("shape {s} does not sum to the degree")));
                    }
                }
            }
        }
        self.generator_perms().map_err(|e| bad(e.to_string()))?;
        Ok(())
    }
}
