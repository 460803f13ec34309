//! Dense kernels over a prime field F_p with residues stored as `u64`.
//!
//! Inputs are reduced residues (< p < 2^16), so a product fits in 32 bits
//! and sums of up to 2^32 products fit in a `u64` before reduction.

const KARATSUBA_THRESHOLD: usize = 48;
const NEWTON_DIVISION_THRESHOLD: usize = 256;

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn schoolbook(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (slot, &y) in acc[i..i + b.len()].iter_mut().zip(b) {
            *slot += x * y;
        }
    }
    for v in acc.iter_mut() {
        *v %= p;
    }
    acc
}

fn add_into(out: &mut [u64], src: &[u64], p: u64) {
    for (o, &s) in out.iter_mut().zip(src) {
        let v = *o + s;
        *o = if v >= p { v - p } else { v };
    }
}

fn sub_into(out: &mut [u64], src: &[u64], p: u64) {
    for (o, &s) in out.iter_mut().zip(src) {
        *o = if *o >= s { *o - s } else { *o + p - s };
    }
}

fn add_vecs(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    add_into(&mut out, short, p);
    out
}

/// Full product of two residue vectors (no trailing-zero trimming).
pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let (a, b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if b.len() < KARATSUBA_THRESHOLD {
        return schoolbook(a, b, p);
    }
    if a.len() >= 2 * b.len() {
        // Unbalanced: slice the long operand into chunks of the short length.
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (ci, chunk) in a.chunks(b.len()).enumerate() {
            let part = mul(chunk, b, p);
            add_into(&mut out[ci * b.len()..], &part, p);
        }
        return out;
    }
    let m = a.len() / 2;
    let (a0, a1) = a.split_at(m);
    let (b0, b1) = b.split_at(m.min(b.len()));
    let z0 = mul(a0, b0, p);
    let z2 = mul(a1, b1, p);
    let mut z1 = mul(&add_vecs(a0, a1, p), &add_vecs(b0, b1, p), p);
    sub_into(&mut z1, &z0, p);
    sub_into(&mut z1, &z2, p);
    let mut out = vec![0u64; a.len() + b.len() - 1];
    add_into(&mut out, &z0, p);
    add_into(&mut out[m..], &z1, p);
    if !z2.is_empty() {
        add_into(&mut out[2 * m..], &z2, p);
    }
    out
}

/// Product truncated to the first `n` coefficients.
pub(crate) fn mul_trunc(a: &[u64], b: &[u64], n: usize, p: u64) -> Vec<u64> {
    let a = &a[..a.len().min(n)];
    let b = &b[..b.len().min(n)];
    let mut out = mul(a, b, p);
    out.resize(n, 0);
    out
}

pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    r
}

/// Inverse of a power series with `a[0] != 0`, modulo x^n.
pub(crate) fn inv_series(a: &[u64], n: usize, p: u64) -> Vec<u64> {
    let mut g = vec![inv_mod(a[0], p)];
    let mut k = 1;
    while k < n {
        k = (2 * k).min(n);
        let ag = mul_trunc(a, &g, k, p);
        // g <- g * (2 - a g)
        let mut two_minus: Vec<u64> = ag.iter().map(|&v| (p - v) % p).collect();
        two_minus[0] = (two_minus[0] + 2) % p;
        g = mul_trunc(&g, &two_minus, k, p);
    }
    g.truncate(n);
    g
}

/// Quotient and remainder of `a` by `b` (b nonzero with nonzero top coefficient).
pub(crate) fn divmod(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let db = b.len() - 1;
    if a.len() < b.len() {
        let mut r = a.to_vec();
        trim(&mut r);
        return (Vec::new(), r);
    }
    let dq = a.len() - b.len();
    if dq + 1 >= NEWTON_DIVISION_THRESHOLD && db >= NEWTON_DIVISION_THRESHOLD / 4 {
        let ra: Vec<u64> = a.iter().rev().copied().collect();
        let rb: Vec<u64> = b.iter().rev().copied().collect();
        let inv = inv_series(&rb, dq + 1, p);
        let mut rq = mul_trunc(&ra, &inv, dq + 1, p);
        rq.reverse();
        let mut q = rq;
        let prod = mul(&q, b, p);
        let mut r: Vec<u64> = a[..db].to_vec();
        sub_into(&mut r, &prod[..db.min(prod.len())], p);
        trim(&mut r);
        trim(&mut q);
        return (q, r);
    }
    let lead_inv = inv_mod(b[db], p);
    let neg_b: Vec<u64> = b.iter().map(|&v| (p - v) % p).collect();
    let mut rem = a.to_vec();
    let mut q = vec![0u64; dq + 1];
    for i in (0..=dq).rev() {
        let top = rem[i + db] % p;
        rem[i + db] = 0;
        if top == 0 {
            continue;
        }
        let c = top * lead_inv % p;
        q[i] = c;
        for (slot, &nb) in rem[i..i + db].iter_mut().zip(&neg_b[..db]) {
            *slot += c * nb;
        }
    }
    rem.truncate(db);
    for v in rem.iter_mut() {
        *v %= p;
    }
    trim(&mut rem);
    trim(&mut q);
    (q, rem)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn naive(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        out
    }

    fn lcg(seed: &mut u64, p: u64) -> u64 {
        *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (*seed >> 33) % p
    }

    #[test]
    fn karatsuba_matches_naive() {
        let mut s = 7;
        for &(la, lb, p) in &[(300usize, 300usize, 3u64), (517, 61, 2), (1000, 999, 65521), (130, 1, 5)] {
            let a: Vec<u64> = (0..la).map(|_| lcg(&mut s, p)).collect();
            let b: Vec<u64> = (0..lb).map(|_| lcg(&mut s, p)).collect();
            assert_eq!(mul(&a, &b, p), naive(&a, &b, p));
        }
    }

    #[test]
    fn division_paths_agree() {
        let mut s = 11;
        let p = 3;
        let mut b: Vec<u64> = (0..400).map(|_| lcg(&mut s, p)).collect();
        b.push(2);
        let a: Vec<u64> = (0..1500).map(|_| lcg(&mut s, p)).collect();
        let (q, r) = divmod(&a, &b, p);
        let mut back = mul(&q, &b, p);
        back.resize(a.len(), 0);
        for (i, v) in r.iter().enumerate() {
            back[i] = (back[i] + v) % p;
        }
        assert_eq!(back, a);
        assert!(r.len() < b.len());
    }
}
