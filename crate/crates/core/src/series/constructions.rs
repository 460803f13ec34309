//! Closed-form series roots for the Fano, Mathieu and M11 families.

use super::kernel::mul_trunc;
use super::lang::{omega_member, ExponentLanguage};
use super::TruncSeries;
use crate::error::{Error, Result};
use crate::ffield::{Fe, FieldSpec, FqElem};

/// F_8 = F_2[z]/(z^3 + z + 1).
pub fn fano_field() -> FieldSpec {
    FieldSpec::new(2, 3, Some(&[1, 1, 0, 1])).expect("irreducible modulus")
}

/// The generator z of [`fano_field`], a primitive 7th root of unity.
pub fn fano_epsilon() -> FqElem {
    let f = fano_field();
    FqElem::new(&f, f.gen())
}

/// F_2048 with the default modulus, which contains the 23rd roots of unity.
pub fn mathieu_field() -> FieldSpec {
    FieldSpec::new(2, 11, None).expect("default modulus")
}

/// F_243 = F_3[z]/(z^5 + 2z^3 + z^2 + 2z + 2).
pub fn m11_field() -> FieldSpec {
    FieldSpec::new(3, 5, Some(&[2, 2, 1, 2, 0, 1])).expect("irreducible modulus")
}

/// The generator z of [`m11_field`], of multiplicative order 11.
pub fn m11_epsilon() -> FqElem {
    let f = m11_field();
    FqElem::new(&f, f.gen())
}

fn require_root_of_unity(a: &FqElem, n: u64, what: &str) -> Result<()> {
    let f = a.field();
    if a.value().is_zero() || f.pow(a.value(), n as u128) != f.one() {
        return Err(Error::InvalidArgument(format!("{what} must satisfy {what}^{n} = 1, got {a}")));
    }
    Ok(())
}

/// Σ_{i ∈ Ω, i < prec} ε^{2^{popcount(i)} mod 7} t^i, a root of x^7 + t x + 1
/// when ε^7 = 1.
pub fn fano_series(eps: &FqElem, prec: usize) -> Result<TruncSeries> {
    require_root_of_unity(eps, 7, "epsilon")?;
    if eps.field().p() != 2 {
        return Err(Error::InvalidArgument("the Fano series lives in characteristic 2".into()));
    }
    let f = eps.field();
    let lang = ExponentLanguage::fano();
    let coeffs = (0..prec as u64)
        .map(|i| {
            if omega_member(&lang, i) {
                let e = (1u64 << (i.count_ones() % 3)) % 7;
                f.pow(eps.value(), e as u128)
            } else {
                Fe::ZERO
            }
        })
        .collect();
    TruncSeries::taylor(f, coeffs)
}

/// The Taylor root of x^24 + x + t through α (α^23 = 1), built from the
/// exponent grammar with coefficient α^{1-n} at t^n.
pub fn mathieu_series(alpha: &FqElem, prec: usize) -> Result<TruncSeries> {
    mathieu_series_in(alpha, prec, &ExponentLanguage::mathieu())
}

pub(crate) fn mathieu_series_in(alpha: &FqElem, prec: usize, lang: &ExponentLanguage) -> Result<TruncSeries> {
    require_root_of_unity(alpha, 23, "alpha")?;
    if alpha.field().p() != 2 {
        return Err(Error::InvalidArgument("the Mathieu series lives in characteristic 2".into()));
    }
    let f = alpha.field();
    let coeffs = (0..prec as u64)
        .map(|n| {
            if omega_member(lang, n) {
                let e = (1 + 22 * (n % 23)) % 23;
                f.pow(alpha.value(), e as u128)
            } else {
                Fe::ZERO
            }
        })
        .collect();
    TruncSeries::taylor(f, coeffs)
}

/// θ ↦ θ^12 + t θ^3 on truncated coefficient vectors.
fn m11_step(f: &FieldSpec, theta: &[Fe], n: usize) -> Vec<Fe> {
    let mut cube = vec![Fe::ZERO; n];
    for (j, &c) in theta.iter().enumerate() {
        if 3 * j >= n {
            break;
        }
        cube[3 * j] = f.frobenius(c, 1);
    }
    let sq = mul_trunc(f, &cube, &cube, n);
    let twelfth = mul_trunc(f, &sq, &sq, n);
    let mut out = twelfth;
    for j in 0..n - 1 {
        out[j + 1] = f.add(out[j + 1], cube[j]);
    }
    out
}

fn m11_fixed_point(f: &FieldSpec, start: Fe, n: usize) -> Vec<Fe> {
    let mut theta = vec![Fe::ZERO; n];
    theta[0] = start;
    let mut known = 1usize;
    loop {
        let next = m11_step(f, &theta, n);
        let stable = next == theta;
        theta = next;
        if stable && known >= n {
            return theta;
        }
        known = known.saturating_mul(3);
    }
}

/// Coefficients c_0, …, c_{prec-1} in F_3 of the root of x^11 + t x^2 - 1
/// with constant term 1, from c_{3j+2} = 0, c_{3j+1} = c_j and
/// c_{3j} = Σ_{3m+n=j} c_m c_n.
pub fn m11_coeffs(prec: usize) -> Vec<u8> {
    let mut c = vec![0u8; prec];
    for k in 0..prec {
        c[k] = match k % 3 {
            2 => 0,
            1 => c[k / 3],
            _ if k == 0 => 1,
            _ => {
                let j = k / 3;
                let mut acc = 0u32;
                for m in 0..=j / 3 {
                    acc += c[m] as u32 * c[j - 3 * m] as u32;
                }
                (acc % 3) as u8
            }
        };
    }
    c
}

/// The root θ_i of x^11 + t x^2 - 1 with θ_i(0) = ε^i, by iterating
/// θ ← θ^12 + t θ^3 until it is stable modulo t^prec.
pub fn m11_series(eps: &FqElem, i: u32, prec: usize) -> Result<TruncSeries> {
    require_root_of_unity(eps, 11, "epsilon")?;
    if eps.field().p() != 3 {
        return Err(Error::InvalidArgument("the M11 series lives in characteristic 3".into()));
    }
    if prec == 0 {
        return Err(Error::EmptyPrecision);
    }
    let f = eps.field();
    let start = f.pow(eps.value(), i as u128);
    TruncSeries::taylor(f, m11_fixed_point(f, start, prec))
}

/// Σ_k c_k ε^{(2k+1) i} t^k.
pub fn m11_series_closed_form(eps: &FqElem, i: u32, prec: usize) -> Result<TruncSeries> {
    require_root_of_unity(eps, 11, "epsilon")?;
    let f = eps.field();
    let coeffs = m11_coeffs(prec)
        .into_iter()
        .enumerate()
        .map(|(k, c)| {
            let e = ((2 * k as u64 + 1) * i as u64) % 11;
            f.mul(f.from_int(c as i64), f.pow(eps.value(), e as u128))
        })
        .collect();
    TruncSeries::taylor(f, coeffs)
}
