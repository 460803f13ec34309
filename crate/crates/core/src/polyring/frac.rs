//! Rational functions in t over F_q.

use std::fmt;

use super::{TPoly, UniPoly};
use crate::error::{Error, Result};
use crate::ffield::FieldSpec;

/// A reduced fraction with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FracT {
    num: TPoly,
    den: TPoly,
}

impl FracT {
    pub fn new(num: TPoly, den: TPoly) -> Result<FracT> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let field = num.field().clone();
        if num.is_zero() {
            return Ok(FracT::zero(&field));
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g)?;
        let mut den = den.div_exact(&g)?;
        let lc = den.lc();
        if lc != field.one() {
            let inv = field.inv(lc)?;
            num = num.scale(inv);
            den = den.scale(inv);
        }
        Ok(FracT { num, den })
    }

    pub fn from_poly(num: TPoly) -> FracT {
        let den = UniPoly::one(num.field());
        FracT { num, den }
    }

    pub fn zero(field: &FieldSpec) -> FracT {
        FracT::from_poly(UniPoly::zero(field))
    }

    pub fn one(field: &FieldSpec) -> FracT {
        FracT::from_poly(UniPoly::one(field))
    }

    pub fn num(&self) -> &TPoly {
        &self.num
    }

    pub fn den(&self) -> &TPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    pub fn add(&self, other: &FracT) -> FracT {
        if self.den == other.den {
            return FracT::new(self.num.add(&other.num), self.den.clone()).expect("nonzero denominator");
        }
        FracT::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
        .expect("nonzero denominator")
    }

    pub fn neg(&self) -> FracT {
        FracT {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &FracT) -> FracT {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FracT) -> FracT {
        FracT::new(self.num.mul(&other.num), self.den.mul(&other.den)).expect("nonzero denominator")
    }

    pub fn inv(&self) -> Result<FracT> {
        FracT::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &FracT) -> Result<FracT> {
        Ok(self.mul(&other.inv()?))
    }
}

impl fmt::Display for FracT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = super::xt::tpoly_text(&self.num);
        if self.is_poly() {
            write!(f, "{num}")
        } else {
            write!(f, "({num})/({})", super::xt::tpoly_text(&self.den))
        }
    }
}

impl fmt::Debug for FracT {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes() {
        let f = FieldSpec::prime(3).unwrap();
        let num = UniPoly::parse(&f, "2*t^2-2", 't').unwrap();
        let den = UniPoly::parse(&f, "2*t+2", 't').unwrap();
        let q = FracT::new(num, den).unwrap();
        assert!(q.is_poly());
        assert_eq!(q.to_string(), "2 + t");
        let half = FracT::new(UniPoly::one(&f), UniPoly::parse(&f, "t", 't').unwrap()).unwrap();
        let sum = half.add(&half);
        assert_eq!(sum.to_string(), "(2)/(t)");
        assert!(FracT::new(UniPoly::one(&f), UniPoly::zero(&f)).is_err());
    }
}
