//! Squarefree, distinct-degree and equal-degree factorization.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::UniPoly;
use crate::error::{Error, Result};
use crate::ffield::{prime_factors, Embedding, Fe, FieldSpec};

/// Seed of the generator used for equal-degree splitting.
pub const SPLIT_SEED: u64 = 0x6671_6761_6c6f_6973;

/// All irreducible factors of one degree inside a squarefree polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeBlock {
    pub degree: usize,
    pub count: usize,
    pub product: UniPoly,
}

impl UniPoly {
    fn pth_root_poly(&self) -> UniPoly {
        let f = self.field();
        let p = f.p() as usize;
        let coeffs = self
            .coeffs()
            .iter()
            .step_by(p)
            .map(|&c| f.pth_root(c))
            .collect();
        UniPoly::new(f, coeffs)
    }

    /// `x^q mod self`.
    fn x_to_q(&self) -> UniPoly {
        UniPoly::x(self.field()).pow_mod(self.field().q() as u128, self)
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => {
                let d = self.derivative();
                !d.is_zero() && self.gcd(&d).is_one()
            }
        }
    }

    /// Squarefree parts with multiplicities, sorted by multiplicity. The
    /// product of `factor^multiplicity` equals `self` up to a unit.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, usize)> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        sfd_into(&self.monic(), 1, &mut out);
        out.sort_by_key(|(_, m)| *m);
        // merge equal multiplicities
        let mut merged: Vec<(UniPoly, usize)> = Vec::new();
        for (g, m) in out {
            match merged.last_mut() {
                Some((h, mm)) if *mm == m => *h = h.mul(&g),
                _ => merged.push((g, m)),
            }
        }
        merged
    }

    /// Distinct-degree factorization of a squarefree polynomial.
    pub fn distinct_degree_factorization(&self) -> Result<Vec<DegreeBlock>> {
        if !self.is_squarefree() {
            return Err(Error::InvalidArgument(format!(
                "distinct-degree factorization needs a squarefree polynomial, got {self}"
            )));
        }
        let f = self.field();
        let x = UniPoly::x(f);
        let mut rest = self.monic();
        let mut h = x.clone();
        let mut blocks = Vec::new();
        let mut d = 0;
        while let Some(n) = rest.degree() {
            d += 1;
            if 2 * d > n {
                if n > 0 {
                    blocks.push(DegreeBlock {
                        degree: n,
                        count: 1,
                        product: rest.clone(),
                    });
                }
                break;
            }
            h = h.pow_mod(f.q() as u128, &rest);
            let g = rest.gcd(&h.sub(&x));
            if !g.is_one() {
                let gd = g.degree().unwrap_or(0);
                rest = rest.div_exact(&g)?;
                h = h.rem(&rest)?;
                blocks.push(DegreeBlock {
                    degree: d,
                    count: gd / d,
                    product: g,
                });
            }
        }
        Ok(blocks)
    }

    /// Pairs (degree, count) of irreducible factors of a squarefree polynomial.
    pub fn distinct_degree_shape(&self) -> Result<Vec<(usize, usize)>> {
        Ok(self
            .distinct_degree_factorization()?
            .into_iter()
            .map(|b| (b.degree, b.count))
            .collect())
    }

    /// Splits a monic squarefree polynomial whose irreducible factors all
    /// have degree `d`.
    pub fn equal_degree_split(&self, d: usize) -> Vec<UniPoly> {
        let mut rng = ChaCha8Rng::seed_from_u64(SPLIT_SEED);
        let mut out = Vec::new();
        edf(&self.monic(), d, &mut rng, &mut out);
        out.sort_by(|a, b| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()));
        out.sort_by_key(|g| g.degree());
        out
    }

    /// Monic irreducible factors with multiplicities, in a canonical order
    /// (by degree, then by coefficients from the top).
    pub fn factor_complete(&self) -> Vec<(UniPoly, usize)> {
        let mut out = Vec::new();
        for (part, m) in self.squarefree_decomposition() {
            let blocks = part
                .distinct_degree_factorization()
                .expect("squarefree part");
            for block in blocks {
                for g in block.product.equal_degree_split(block.degree) {
                    out.push((g, m));
                }
            }
        }
        out.sort_by(|(a, _), (b, _)| {
            a.degree()
                .cmp(&b.degree())
                .then_with(|| a.coeffs().iter().rev().cmp(b.coeffs().iter().rev()))
        });
        out
    }

    /// Rabin's irreducibility test.
    pub fn is_irreducible(&self) -> bool {
        let n = match self.degree() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(n) => n,
        };
        let f = self.monic();
        let q = f.field().q() as u128;
        let x = UniPoly::x(f.field());
        let mut powers = Vec::with_capacity(n + 1);
        powers.push(x.clone());
        for i in 1..=n {
            let next = powers[i - 1].pow_mod(q, &f);
            powers.push(next);
        }
        if powers[n] != x.rem(&f).expect("nonzero") {
            return false;
        }
        prime_factors(n as u64)
            .into_iter()
            .all(|r| f.gcd(&powers[n / r as usize].sub(&x)).is_one())
    }

    /// Roots in the coefficient field with multiplicities, sorted by encoding.
    pub fn roots(&self) -> Vec<(Fe, usize)> {
        let f = self.field();
        let mut out = Vec::new();
        for (part, m) in self.squarefree_decomposition() {
            let lin = part.gcd(&part.x_to_q().sub(&UniPoly::x(f)));
            if lin.degree().unwrap_or(0) == 0 {
                continue;
            }
            for g in lin.equal_degree_split(1) {
                out.push((f.neg(g.coeff(0)), m));
            }
        }
        out.sort();
        out
    }

    /// Roots in a larger field, reached through the least-root embedding.
    pub fn roots_in(&self, target: &FieldSpec) -> Result<Vec<(Fe, usize)>> {
        let emb = Embedding::find(self.field(), target)?;
        Ok(self.map(&emb).roots())
    }
}

fn sfd_into(f: &UniPoly, scale: usize, out: &mut Vec<(UniPoly, usize)>) {
    let p = f.field().p() as usize;
    let d = f.derivative();
    let mut c = f.gcd(&d);
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1;
    while !w.is_one() && !w.is_zero() {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y).expect("gcd divides");
        if !fac.is_one() {
            out.push((fac, i * scale));
        }
        w = y;
        c = c.div_exact(&w).expect("gcd divides");
        i += 1;
    }
    if !c.is_constant() {
        sfd_into(&c.pth_root_poly().monic(), scale * p, out);
    }
}

fn random_poly(field: &FieldSpec, len: usize, rng: &mut ChaCha8Rng) -> UniPoly {
    let coeffs = (0..len).map(|_| Fe(rng.gen_range(0..field.q()))).collect();
    UniPoly::new(field, coeffs)
}

fn edf(g: &UniPoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<UniPoly>) {
    let n = g.degree().unwrap_or(0);
    if n == 0 {
        return;
    }
    if n == d {
        out.push(g.clone());
        return;
    }
    let f = g.field();
    let q = f.q() as u128;
    loop {
        let a = random_poly(f, n, rng);
        if a.is_constant() {
            continue;
        }
        let t = if f.p() == 2 {
            let steps = f.k() * d;
            let mut acc = a.clone();
            let mut cur = a.clone();
            for _ in 1..steps {
                cur = cur.mul_mod(&cur, g);
                acc = acc.add(&cur);
            }
            acc
        } else {
            let mut prod = a.clone();
            let mut cur = a.clone();
            for _ in 1..d {
                cur = cur.pow_mod(q, g);
                prod = prod.mul_mod(&cur, g);
            }
            prod.pow_mod((q - 1) / 2, g).sub(&UniPoly::one(f))
        };
        let h = g.gcd(&t);
        let dh = h.degree().unwrap_or(0);
        if dh > 0 && dh < n {
            let other = g.div_exact(&h).expect("gcd divides");
            edf(&h, d, rng, out);
            edf(&other.monic(), d, rng, out);
            return;
        }
    }
}

/// Roots of `g` in its extension of relative degree `m` (default modulus).
pub fn roots_in_extension(g: &UniPoly, m: usize) -> Result<(FieldSpec, Vec<(Fe, usize)>)> {
    if g.is_zero() {
        return Err(Error::InvalidArgument("roots of the zero polynomial".into()));
    }
    let f = g.field();
    if m == 1 {
        return Ok((f.clone(), g.roots()));
    }
    let target = FieldSpec::new(f.p(), f.k() * m, None)?;
    let roots = g.roots_in(&target)?;
    Ok((target, roots))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(p: u64, s: &str) -> UniPoly {
        UniPoly::parse(&FieldSpec::prime(p).unwrap(), s, 'x').unwrap()
    }

    #[test]
    fn squarefree_examples() {
        let sf = parse(2, "x^2+1").squarefree_decomposition();
        assert_eq!(sf, vec![(parse(2, "x+1"), 2)]);
        let sf = parse(2, "x^24+x").squarefree_decomposition();
        assert_eq!(sf.len(), 1);
        assert_eq!(sf[0].1, 1);
        let sf = parse(3, "x^6").squarefree_decomposition();
        assert_eq!(sf, vec![(parse(3, "x"), 6)]);
    }

    #[test]
    fn ddf_shapes_from_the_m24_specializations() {
        assert_eq!(
            parse(2, "x^24+x").distinct_degree_shape().unwrap(),
            vec![(1, 2), (11, 2)]
        );
        assert_eq!(
            parse(2, "x^24+x+1").distinct_degree_shape().unwrap(),
            vec![(3, 1), (21, 1)]
        );
        let f8 = FieldSpec::new(2, 3, Some(&[1, 0, 1, 1])).unwrap();
        let mut coeffs = vec![Fe::ZERO; 25];
        coeffs[0] = f8.gen();
        coeffs[1] = f8.one();
        coeffs[24] = f8.one();
        let g = UniPoly::new(&f8, coeffs);
        assert_eq!(g.distinct_degree_shape().unwrap(), vec![(1, 1), (23, 1)]);
        assert!(parse(2, "x^2+1").distinct_degree_shape().is_err());
    }

    #[test]
    fn complete_factorization_examples() {
        let fs = parse(2, "x^23+1").factor_complete();
        let degrees: Vec<usize> = fs.iter().map(|(g, _)| g.degree().unwrap()).collect();
        assert_eq!(degrees, vec![1, 11, 11]);
        assert!(parse(3, "x^2+1").is_irreducible());
        let fs = parse(2, "x^3+x").factor_complete();
        assert_eq!(fs, vec![(parse(2, "x"), 1), (parse(2, "x+1"), 2)]);
    }

    #[test]
    fn roots_in_extensions() {
        let (_, r) = roots_in_extension(&parse(2, "x^2+x+1"), 2).unwrap();
        assert_eq!(r.len(), 2);
        let (_, r) = roots_in_extension(&parse(2, "x^23+1"), 11).unwrap();
        assert_eq!(r.len(), 23);
        let (_, r) = roots_in_extension(&parse(3, "x^11-1"), 1).unwrap();
        assert_eq!(r, vec![(Fe(1), 1)]);
    }

    #[test]
    fn odd_characteristic_edf() {
        let f = FieldSpec::new(3, 2, None).unwrap();
        let g = UniPoly::parse(&f, "x^9-x", 'x').unwrap();
        let roots = g.roots();
        assert_eq!(roots.len(), 9);
        assert!(roots.iter().all(|&(r, m)| m == 1 && g.eval(r).is_zero()));
    }
}
