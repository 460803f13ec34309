//! Frobenius cycle shapes from specializations t = t₀.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ffield::{Embedding, Fe, FieldSpec};
use crate::permgrp::CycleShape;
use crate::polyring::{UniPoly, XTPoly};

/// Where a specialization point lives: an element of the base field, or the
/// class of roots of a monic irreducible polynomial over it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecPoint {
    Element(Fe),
    MinPoly(UniPoly),
}

/// One sampled shape and the point that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShapeSample {
    pub shape: String,
    /// `t = a` for base-field points, otherwise the minimal polynomial of t₀.
    pub point: String,
    pub ext_degree: usize,
}

impl ShapeSample {
    pub fn cycle_shape(&self) -> CycleShape {
        CycleShape::parse(&self.shape).expect("sample shapes are well formed")
    }
}

/// Shape of f(x, t₀), or `None` when the specialization drops degree or is
/// not squarefree.
pub fn specialize_shape(f: &XTPoly, point: &SpecPoint) -> Result<Option<CycleShape>> {
    match point {
        SpecPoint::Element(a) => shape_of(&f.eval_t(*a), f.degree_x()),
        SpecPoint::MinPoly(g) => {
            let m = match g.degree() {
                Some(m) if m >= 1 => m,
                _ => return Err(Error::InvalidArgument("specialization polynomial must have degree ≥ 1".into())),
            };
            if g.field() != f.field() {
                return Err(Error::FieldMismatch {
                    left: g.field().tag(),
                    right: f.field().tag(),
                });
            }
            if !g.is_irreducible() {
                return Err(Error::InvalidArgument(format!(
                    "specialization polynomial {} is reducible",
                    g.to_string_in('t')
                )));
            }
            let base = f.field();
            let ext = FieldSpec::new(base.p(), base.k() * m, None)?;
            let emb = Embedding::find(base, &ext)?;
            let t0 = g.roots_in(&ext)?[0].0;
            let fx = f.map(&emb);
            shape_of(&fx.eval_t(t0), f.degree_x())
        }
    }
}

fn shape_of(g: &UniPoly, n: Option<usize>) -> Result<Option<CycleShape>> {
    if g.degree() != n || n.is_none() || !g.is_squarefree() {
        return Ok(None);
    }
    let mut parts = Vec::new();
    for (d, count) in g.monic().distinct_degree_shape()? {
        parts.extend(std::iter::repeat(d).take(count));
    }
    Ok(Some(CycleShape::new(parts)))
}

/// Shapes at one point of each Frobenius orbit of F_{q^m}, m = 1..=max_ext,
/// over points of exact degree m, in element encoding order. Stops after
/// `budget` points.
pub fn shape_sweep(f: &XTPoly, max_ext: usize, budget: usize) -> Result<Vec<ShapeSample>> {
    let base = f.field();
    let n = f.degree_x();
    let mut out = Vec::new();
    let mut visited = 0usize;
    for m in 1..=max_ext {
        if visited >= budget {
            break;
        }
        let ext = if m == 1 {
            base.clone()
        } else {
            FieldSpec::new(base.p(), base.k() * m, None)?
        };
        let emb = Embedding::find(base, &ext)?;
        let fx = f.map(&emb);
        let k = base.k() as u32;
        let mut points = Vec::new();
        for a in ext.elements() {
            if visited + points.len() >= budget {
                break;
            }
            let mut orbit = vec![a];
            let mut b = ext.frobenius(a, k);
            while b != a {
                orbit.push(b);
                b = ext.frobenius(b, k);
            }
            if orbit.len() == m && orbit.iter().all(|&c| c >= a) {
                points.push(orbit);
            }
        }
        visited += points.len();
        let results = crate::par::parallel_map(&points, |orbit| -> Result<Option<ShapeSample>> {
            let a = orbit[0];
            let shape = match shape_of(&fx.eval_t(a), n)? {
                Some(s) => s,
                None => return Ok(None),
            };
            let point = if m == 1 {
                format!("t = {}", base.format(a))
            } else {
                orbit_min_poly(&ext, &emb, orbit).to_string_in('t')
            };
            Ok(Some(ShapeSample {
                shape: shape.to_string(),
                point,
                ext_degree: m,
            }))
        });
        for r in results {
            if let Some(s) = r? {
                out.push(s);
            }
        }
    }
    Ok(out)
}

/// Π (t − c) over a Frobenius orbit, as a polynomial over the base field.
fn orbit_min_poly(ext: &FieldSpec, emb: &Embedding, orbit: &[Fe]) -> UniPoly {
    let mut acc = UniPoly::one(ext);
    for &c in orbit {
        acc = acc.mul(&UniPoly::new(ext, vec![ext.neg(c), ext.one()]));
    }
    let coeffs = acc
        .coeffs()
        .iter()
        .map(|&c| emb.preimage(c).expect("orbit products lie in the base field"))
        .collect();
    UniPoly::new(emb.source(), coeffs)
}

/// Partitions of n (decreasing parts) into which every shape can be grouped.
/// `None` when n is too large to enumerate partitions.
pub fn factor_degree_candidates(shapes: &[CycleShape], n: usize) -> Option<BTreeSet<Vec<usize>>> {
    const MAX_N: usize = 60;
    if n > MAX_N {
        return None;
    }
    let mut out = BTreeSet::new();
    let mut current = Vec::new();
    partitions(n, n, &mut current, &mut |d| {
        if shapes.iter().all(|s| refines(s.parts(), d)) {
            out.insert(d.to_vec());
        }
    });
    Some(out)
}

/// Whether no proper sub-multiset sum is common to all shapes, which forces
/// every candidate to be {n}.
pub fn forces_transitive(shapes: &[CycleShape], n: usize) -> bool {
    if n <= 1 {
        return true;
    }
    let mut common = vec![true; n + 1];
    for s in shapes {
        let sums = subset_sums(s.parts(), n);
        for (c, ok) in common.iter_mut().zip(sums) {
            *c &= ok;
        }
    }
    !shapes.is_empty() && !(1..n).any(|s| common[s])
}

pub(crate) fn subset_sums(parts: &[usize], cap: usize) -> Vec<bool> {
    let mut reach = vec![false; cap + 1];
    reach[0] = true;
    for &p in parts {
        for s in (p..=cap).rev() {
            if reach[s - p] {
                reach[s] = true;
            }
        }
    }
    reach
}

fn partitions(n: usize, max: usize, current: &mut Vec<usize>, emit: &mut impl FnMut(&[usize])) {
    if n == 0 {
        emit(current);
        return;
    }
    for part in (1..=n.min(max)).rev() {
        current.push(part);
        partitions(n - part, part, current, emit);
        current.pop();
    }
}

/// Whether the parts can be distributed into bins of exactly the sizes `bins`.
fn refines(parts: &[usize], bins: &[usize]) -> bool {
    let mut room = bins.to_vec();
    fn place(parts: &[usize], room: &mut [usize]) -> bool {
        let Some((&p, rest)) = parts.split_first() else {
            return room.iter().all(|&r| r == 0);
        };
        for i in 0..room.len() {
            if room[i] >= p && !room[..i].contains(&room[i]) {
                room[i] -= p;
                if place(rest, room) {
                    return true;
                }
                room[i] += p;
            }
        }
        false
    }
    place(parts, &mut room)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shapes(v: &[&str]) -> Vec<CycleShape> {
        v.iter().map(|s| CycleShape::parse(s).unwrap()).collect()
    }

    #[test]
    fn candidates_for_m24_shapes() {
        let c = factor_degree_candidates(&shapes(&["[23,1]", "[21,3]"]), 24).unwrap();
        assert_eq!(c.into_iter().collect::<Vec<_>>(), vec![vec![24]]);
        assert!(forces_transitive(&shapes(&["[23,1]", "[21,3]"]), 24));
    }

    #[test]
    fn candidates_for_one_shape() {
        let c = factor_degree_candidates(&shapes(&["[2,1,1]"]), 4).unwrap();
        let want: BTreeSet<Vec<usize>> = [vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1]].into_iter().collect();
        assert_eq!(c, want);
        assert!(!forces_transitive(&shapes(&["[2,1,1]"]), 4));
    }

    #[test]
    fn no_shapes_allows_every_partition() {
        assert_eq!(factor_degree_candidates(&[], 6).unwrap().len(), 11);
    }
}
