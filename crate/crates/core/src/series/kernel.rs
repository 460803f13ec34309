//! Dense truncated products and inverses on coefficient slices.

use crate::ffield::{Fe, FieldSpec};
use crate::polyring::fastmul;

/// Product of `a` and `b` modulo t^n.
pub(crate) fn mul_trunc(field: &FieldSpec, a: &[Fe], b: &[Fe], n: usize) -> Vec<Fe> {
    if field.is_prime_field() {
        let a: Vec<u64> = a.iter().take(n).map(|c| c.0).collect();
        let b: Vec<u64> = b.iter().take(n).map(|c| c.0).collect();
        if a.is_empty() || b.is_empty() {
            return vec![Fe::ZERO; n];
        }
        return fastmul::mul_trunc(&a, &b, n, field.p())
            .into_iter()
            .map(Fe)
            .collect();
    }
    field.mul_trunc(a, b, n)
}

/// Inverse of a unit series modulo t^n.
pub(crate) fn inv_trunc(field: &FieldSpec, a: &[Fe], n: usize) -> Vec<Fe> {
    assert!(!a.is_empty() && !a[0].is_zero(), "series is not a unit");
    let mut g = vec![field.inv(a[0]).expect("nonzero")];
    let mut k = 1;
    while k < n {
        k = (2 * k).min(n);
        // g <- g (2 - a g)
        let ag = mul_trunc(field, a, &g, k);
        let mut corr: Vec<Fe> = ag.iter().map(|&c| field.neg(c)).collect();
        corr[0] = field.add(corr[0], field.from_int(2));
        g = mul_trunc(field, &g, &corr, k);
    }
    g.truncate(n);
    g.resize(n, Fe::ZERO);
    g
}
