//! Finite fields F_{p^k} with an explicit, user-controllable modulus.
//!
//! Elements are stored as [`Fe`], the base-p integer encoding
//! `c_0 + c_1 p + ... + c_{k-1} p^{k-1}` of their power-basis coordinates.
//! All arithmetic goes through a [`FieldSpec`], which is immutable and cheap
//! to clone. [`FqElem`] pairs an element with its field for the checked,
//! text-facing API.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::polyring::UniPoly;
use crate::text;

/// Largest supported characteristic.
pub const MAX_CHARACTERISTIC: u64 = 1 << 16;

/// Fields up to this order get log/antilog multiplication tables.
const TABLE_LIMIT: u64 = 1 << 16;

/// Odd-characteristic fields up to this order also get an addition table.
const ADD_TABLE_LIMIT: u64 = 1024;

/// A field element in base-p encoding, without a reference to its field.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fe(pub u64);

impl Fe {
    pub const ZERO: Fe = Fe(0);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Option<Vec<u16>>,
}

struct FieldInner {
    p: u64,
    k: usize,
    q: u64,
    modulus: Vec<u64>,
    pows: Vec<u64>,
    gen: u64,
    bin_modulus: u128,
    tables: Option<Tables>,
}

/// An explicit finite field F_{p^k} = F_p[z]/(modulus).
#[derive(Clone)]
pub struct FieldSpec(Arc<FieldInner>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl std::hash::Hash for FieldSpec {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.modulus.hash(state);
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag())
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag())
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn format_z_poly(coeffs: &[u64]) -> String {
    let mut parts = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "z".to_string(),
            _ => format!("z^{i}"),
        };
        parts.push(match (c, i) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}*{mono}"),
        });
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

impl FieldSpec {
    /// Builds F_{p^k}. Without a modulus, the least irreducible monic
    /// polynomial of degree k is used, where candidates are ordered by the
    /// integer `c_0 + c_1 p + ... + c_{k-1} p^{k-1}` of their lower
    /// coefficients. `modulus` lists coefficients from the constant term up.
    pub fn new(p: u64, k: usize, modulus: Option<&[u64]>) -> Result<FieldSpec> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if p >= MAX_CHARACTERISTIC {
            return Err(Error::UnsupportedCharacteristic(p));
        }
        if k == 0 {
            return Err(Error::InvalidArgument("extension degree must be at least 1".into()));
        }
        let mut q: u64 = 1;
        for _ in 0..k {
            q = q
                .checked_mul(p)
                .filter(|&v| v < (1u64 << 63))
                .ok_or(Error::FieldTooLarge { p, k })?;
        }
        let modulus = match modulus {
            Some(m) => {
                let m: Vec<u64> = m.iter().map(|&c| c % p).collect();
                let mut trimmed = m.clone();
                while trimmed.last() == Some(&0) {
                    trimmed.pop();
                }
                if trimmed.len() != k + 1 {
                    return Err(Error::ModulusDegree {
                        modulus: format_z_poly(&trimmed),
                        expected: k,
                        found: trimmed.len().saturating_sub(1),
                    });
                }
                if trimmed[k] != 1 {
                    return Err(Error::ModulusNotMonic {
                        modulus: format_z_poly(&trimmed),
                    });
                }
                if k > 1 {
                    let prime = FieldSpec::prime(p)?;
                    let poly = UniPoly::from_u64s(&prime, &trimmed);
                    if !poly.is_irreducible() {
                        let factor = poly
                            .factor_complete()
                            .into_iter()
                            .map(|(f, _)| f)
                            .find(|f| f.degree().unwrap_or(0) > 0)
                            .map(|f| format_z_poly(&f.coeffs().iter().map(|c| c.0).collect::<Vec<_>>()))
                            .unwrap_or_default();
                        return Err(Error::ReducibleModulus {
                            modulus: format_z_poly(&trimmed),
                            factor,
                        });
                    }
                }
                trimmed
            }
            None => {
                if k == 1 {
                    vec![0, 1]
                } else {
                    Self::least_irreducible(p, k)?
                }
            }
        };
        Ok(Self::assemble(p, k, q, modulus))
    }

    /// The prime field F_p.
    pub fn prime(p: u64) -> Result<FieldSpec> {
        FieldSpec::new(p, 1, None)
    }

    fn least_irreducible(p: u64, k: usize) -> Result<Vec<u64>> {
        let prime = FieldSpec::prime(p)?;
        let q = p.pow(k as u32);
        for index in 0..q {
            let mut coeffs = Vec::with_capacity(k + 1);
            let mut r = index;
            for _ in 0..k {
                coeffs.push(r % p);
                r /= p;
            }
            if coeffs[0] == 0 {
                continue;
            }
            coeffs.push(1);
            if UniPoly::from_u64s(&prime, &coeffs).is_irreducible() {
                return Ok(coeffs);
            }
        }
        Err(Error::InvalidArgument(format!("no irreducible polynomial of degree {k} over F_{p}")))
    }

    fn assemble(p: u64, k: usize, q: u64, modulus: Vec<u64>) -> FieldSpec {
        let mut pows = Vec::with_capacity(k + 1);
        let mut acc = 1u64;
        for i in 0..=k {
            pows.push(acc);
            if i < k {
                acc = acc.wrapping_mul(p);
            }
        }
        let gen = if k == 1 { (p - modulus[0]) % p } else { p };
        let mut bin_modulus = 0u128;
        if p == 2 {
            for (i, &c) in modulus.iter().enumerate() {
                if c == 1 {
                    bin_modulus |= 1u128 << i;
                }
            }
        }
        let mut inner = FieldInner {
            p,
            k,
            q,
            modulus,
            pows,
            gen,
            bin_modulus,
            tables: None,
        };
        if k > 1 && q <= TABLE_LIMIT {
            inner.tables = Some(build_tables(&inner));
        }
        FieldSpec(Arc::new(inner))
    }

    pub fn p(&self) -> u64 {
        self.0.p
    }

    pub fn k(&self) -> usize {
        self.0.k
    }

    /// Field order p^k.
    pub fn q(&self) -> u64 {
        self.0.q
    }

    /// Modulus coefficients, constant term first (monic, length k+1).
    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.k == 1
    }

    /// Textual tag such as `GF(2^3;z^3+z^2+1)` or `GF(3)`.
    pub fn tag(&self) -> String {
        if self.0.k == 1 && self.0.modulus == [0, 1] {
            format!("GF({})", self.0.p)
        } else {
            format!("GF({}^{};{})", self.0.p, self.0.k, format_z_poly(&self.0.modulus))
        }
    }

    /// Parses a tag produced by [`FieldSpec::tag`]. `GF(p^k)` selects the
    /// default modulus.
    pub fn parse_tag(s: &str) -> Result<FieldSpec> {
        let s = s.trim();
        let body = s
            .strip_prefix("GF(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse {
                pos: 0,
                msg: format!("expected GF(...), got '{s}'"),
            })?;
        let (order, modulus) = match body.split_once(';') {
            Some((a, b)) => (a, Some(b)),
            None => (body, None),
        };
        let (p_text, k_text) = match order.split_once('^') {
            Some((a, b)) => (a, Some(b)),
            None => (order, None),
        };
        let bad = |what: &str| Error::Parse {
            pos: 3,
            msg: format!("bad {what} in field tag '{s}'"),
        };
        let p: u64 = p_text.trim().parse().map_err(|_| bad("characteristic"))?;
        let k: usize = match k_text {
            Some(t) => t.trim().parse().map_err(|_| bad("degree"))?,
            None => 1,
        };
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        match modulus {
            Some(m) => {
                let coeffs = parse_z_poly(m, p)?;
                FieldSpec::new(p, k, Some(&coeffs))
            }
            None => FieldSpec::new(p, k, None),
        }
    }

    pub fn zero(&self) -> Fe {
        Fe(0)
    }

    pub fn one(&self) -> Fe {
        Fe(1 % self.0.p)
    }

    /// The residue class of z (for k = 1, the root of the linear modulus).
    pub fn gen(&self) -> Fe {
        Fe(self.0.gen)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> Fe {
        let p = self.0.p as i64;
        Fe((((v % p) + p) % p) as u64)
    }

    /// Whether `a` lies in the prime subfield (only its constant coordinate is set).
    pub fn in_prime_subfield(&self, a: Fe) -> bool {
        a.0 < self.0.p
    }

    pub fn coords(&self, a: Fe) -> Vec<u64> {
        let mut out = vec![0; self.0.k];
        self.decode_into(a.0, &mut out);
        out
    }

    pub fn from_coords(&self, coords: &[u64]) -> Fe {
        let mut v = 0u64;
        for (i, &c) in coords.iter().enumerate().take(self.0.k) {
            v += (c % self.0.p) * self.0.pows[i];
        }
        Fe(v)
    }

    /// All field elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Fe> {
        (0..self.0.q).map(Fe)
    }

    #[inline]
    fn decode_into(&self, mut a: u64, out: &mut [u64]) {
        let p = self.0.p;
        for slot in out.iter_mut().take(self.0.k) {
            *slot = a % p;
            a /= p;
        }
    }

    #[inline]
    pub fn add(&self, a: Fe, b: Fe) -> Fe {
        let f = &*self.0;
        if f.p == 2 {
            return Fe(a.0 ^ b.0);
        }
        if f.k == 1 {
            let s = a.0 + b.0;
            return Fe(if s >= f.p { s - f.p } else { s });
        }
        if let Some(t) = &f.tables {
            if let Some(add) = &t.add {
                return Fe(add[(a.0 * f.q + b.0) as usize] as u64);
            }
        }
        self.add_digits(a.0, b.0)
    }

    fn add_digits(&self, mut a: u64, mut b: u64) -> Fe {
        let f = &*self.0;
        let mut out = 0;
        for i in 0..f.k {
            let s = (a % f.p + b % f.p) % f.p;
            out += s * f.pows[i];
            a /= f.p;
            b /= f.p;
        }
        Fe(out)
    }

    #[inline]
    pub fn neg(&self, a: Fe) -> Fe {
        let f = &*self.0;
        if f.p == 2 || a.0 == 0 {
            return a;
        }
        if f.k == 1 {
            return Fe(f.p - a.0);
        }
        let mut x = a.0;
        let mut out = 0;
        for i in 0..f.k {
            let c = x % f.p;
            out += ((f.p - c) % f.p) * f.pows[i];
            x /= f.p;
        }
        Fe(out)
    }

    #[inline]
    pub fn sub(&self, a: Fe, b: Fe) -> Fe {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fe, b: Fe) -> Fe {
        let f = &*self.0;
        if a.0 == 0 || b.0 == 0 {
            return Fe(0);
        }
        if f.k == 1 {
            return Fe(a.0 * b.0 % f.p);
        }
        if let Some(t) = &f.tables {
            let l = t.log[a.0 as usize] + t.log[b.0 as usize];
            return Fe(t.exp[l as usize] as u64);
        }
        self.mul_slow(a.0, b.0)
    }

    fn mul_slow(&self, a: u64, b: u64) -> Fe {
        let f = &*self.0;
        if f.p == 2 {
            let mut prod: u128 = 0;
            let mut bb = b;
            let mut shift = 0;
            while bb != 0 {
                if bb & 1 == 1 {
                    prod ^= (a as u128) << shift;
                }
                bb >>= 1;
                shift += 1;
            }
            let k = f.k;
            let mut i = 2 * k;
            while i > k {
                i -= 1;
                if (prod >> i) & 1 == 1 {
                    prod ^= f.bin_modulus << (i - k);
                }
            }
            return Fe(prod as u64);
        }
        let k = f.k;
        let p = f.p;
        let mut ca = [0u64; 64];
        let mut cb = [0u64; 64];
        self.decode_into(a, &mut ca);
        self.decode_into(b, &mut cb);
        let mut prod = [0u64; 128];
        for i in 0..k {
            if ca[i] == 0 {
                continue;
            }
            for j in 0..k {
                prod[i + j] = (prod[i + j] + ca[i] * cb[j]) % p;
            }
        }
        for i in (k..2 * k - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            for j in 0..k {
                prod[i - k + j] = (prod[i - k + j] + (p - c) * f.modulus[j]) % p;
            }
            prod[i] = 0;
        }
        let mut out = 0;
        for i in 0..k {
            out += prod[i] * f.pows[i];
        }
        Fe(out)
    }

    /// `a^e`; `0^0 = 1`.
    pub fn pow(&self, a: Fe, e: u128) -> Fe {
        if e == 0 {
            return self.one();
        }
        if a.0 == 0 {
            return Fe(0);
        }
        let f = &*self.0;
        if let Some(t) = &f.tables {
            let order = (f.q - 1) as u128;
            let l = (t.log[a.0 as usize] as u128 * (e % order)) % order;
            return Fe(t.exp[l as usize] as u64);
        }
        let e = e % (f.q as u128 - 1);
        let e = if e == 0 { f.q as u128 - 1 } else { e };
        let mut result = self.one();
        let mut base = a;
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        result
    }

    pub fn inv(&self, a: Fe) -> Result<Fe> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let f = &*self.0;
        if let Some(t) = &f.tables {
            let l = (f.q - 1) as u32 - t.log[a.0 as usize];
            return Ok(Fe(t.exp[l as usize] as u64));
        }
        Ok(self.pow(a, (f.q - 2) as u128))
    }

    pub fn div(&self, a: Fe, b: Fe) -> Result<Fe> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// The Frobenius power `a ↦ a^{p^e}`.
    pub fn frobenius(&self, a: Fe, e: u32) -> Fe {
        let f = &*self.0;
        let e = e as usize % f.k;
        if e == 0 || a.0 == 0 {
            return a;
        }
        if f.p == 2 && f.tables.is_none() {
            let mut x = a;
            for _ in 0..e {
                x = self.mul(x, x);
            }
            return x;
        }
        self.pow(a, f.pows[e] as u128)
    }

    /// Inverse Frobenius `a ↦ a^{1/p}`.
    pub fn pth_root(&self, a: Fe) -> Fe {
        self.frobenius(a, (self.0.k - 1) as u32)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Fe) -> Result<u64> {
        if a.0 == 0 {
            return Err(Error::DivisionByZero);
        }
        let mut n = self.0.q - 1;
        for r in prime_factors(self.0.q - 1) {
            while n % r == 0 && self.pow(a, (n / r) as u128) == self.one() {
                n /= r;
            }
        }
        Ok(n)
    }

    /// A generator of the multiplicative group (least by encoding).
    pub fn primitive_element(&self) -> Fe {
        let order = self.0.q - 1;
        let factors = prime_factors(order);
        for v in 1..self.0.q {
            let g = Fe(v);
            if factors.iter().all(|&r| self.pow(g, (order / r) as u128) != self.one()) {
                return g;
            }
        }
        self.one()
    }

    /// Discrete logarithm of `a` to base `base`, by table or by search.
    pub fn log_base(&self, a: Fe, base: Fe) -> Option<u64> {
        if a.0 == 0 || base.0 == 0 {
            return None;
        }
        let ord = self.order(base).ok()?;
        let mut acc = self.one();
        for e in 0..ord {
            if acc == a {
                return Some(e);
            }
            acc = self.mul(acc, base);
        }
        None
    }

    /// Absolute trace to F_p.
    pub fn trace(&self, a: Fe) -> Fe {
        let mut acc = Fe(0);
        let mut x = a;
        for _ in 0..self.0.k {
            acc = self.add(acc, x);
            x = self.frobenius(x, 1);
        }
        acc
    }

    /// Formats an element in generator form, e.g. `z^2+1`.
    pub fn format(&self, a: Fe) -> String {
        if self.0.k == 1 {
            return a.0.to_string();
        }
        format_z_poly(&self.coords(a))
    }

    /// Parses an element written in generator form (without field tag).
    pub fn parse_elem(&self, s: &str) -> Result<Fe> {
        let coeffs = parse_z_poly(s, self.0.p)?;
        if self.0.k == 1 {
            // z denotes the generator of the prime field convention.
            let mut acc = Fe(0);
            let mut zpow = self.one();
            for &c in &coeffs {
                acc = self.add(acc, self.mul(self.from_int(c as i64), zpow));
                zpow = self.mul(zpow, self.gen());
            }
            return Ok(acc);
        }
        // Reduce modulo the field modulus.
        let k = self.0.k;
        let p = self.0.p;
        let mut c = coeffs;
        if c.len() > k {
            for i in (k..c.len()).rev() {
                let top = c[i];
                if top == 0 {
                    continue;
                }
                for j in 0..k {
                    c[i - k + j] = (c[i - k + j] + (p - top) * self.0.modulus[j]) % p;
                }
                c[i] = 0;
            }
        }
        c.resize(k, 0);
        Ok(self.from_coords(&c))
    }

    /// Truncated product `a*b mod t^n` of coefficient slices.
    pub(crate) fn mul_trunc(&self, a: &[Fe], b: &[Fe], n: usize) -> Vec<Fe> {
        let mut out = vec![Fe(0); n];
        if a.is_empty() || b.is_empty() || n == 0 {
            return out;
        }
        let f = &*self.0;
        if f.k == 1 {
            let p = f.p;
            let mut acc = vec![0u64; n];
            for (i, &x) in a.iter().enumerate().take(n) {
                if x.0 == 0 {
                    continue;
                }
                let lim = (n - i).min(b.len());
                let row = &mut acc[i..i + lim];
                for (slot, &y) in row.iter_mut().zip(&b[..lim]) {
                    *slot += x.0 * y.0;
                }
                // keep accumulators bounded
                if i % 4096 == 4095 {
                    for v in acc.iter_mut() {
                        *v %= p;
                    }
                }
            }
            for (o, v) in out.iter_mut().zip(acc) {
                *o = Fe(v % p);
            }
            return out;
        }
        if let Some(t) = &f.tables {
            const NONE: u32 = u32::MAX;
            let lb: Vec<u32> = b.iter().map(|&y| if y.0 == 0 { NONE } else { t.log[y.0 as usize] }).collect();
            if f.p == 2 {
                let mut acc = vec![0u32; n];
                for (i, &x) in a.iter().enumerate().take(n) {
                    if x.0 == 0 {
                        continue;
                    }
                    let la = t.log[x.0 as usize];
                    let lim = (n - i).min(b.len());
                    for (slot, &l) in acc[i..i + lim].iter_mut().zip(&lb[..lim]) {
                        if l != NONE {
                            *slot ^= t.exp[(la + l) as usize];
                        }
                    }
                }
                for (o, v) in out.iter_mut().zip(acc) {
                    *o = Fe(v as u64);
                }
                return out;
            }
            for (i, &x) in a.iter().enumerate().take(n) {
                if x.0 == 0 {
                    continue;
                }
                let la = t.log[x.0 as usize];
                let lim = (n - i).min(b.len());
                for j in 0..lim {
                    let l = lb[j];
                    if l != NONE {
                        let prod = Fe(t.exp[(la + l) as usize] as u64);
                        out[i + j] = self.add(out[i + j], prod);
                    }
                }
            }
            return out;
        }
        for (i, &x) in a.iter().enumerate().take(n) {
            if x.0 == 0 {
                continue;
            }
            let lim = (n - i).min(b.len());
            for j in 0..lim {
                if b[j].0 != 0 {
                    out[i + j] = self.add(out[i + j], self.mul(x, b[j]));
                }
            }
        }
        out
    }
}

fn build_tables(f: &FieldInner) -> Tables {
    // Bootstrap through a table-less spec to search for a primitive element.
    let bare = FieldSpec(Arc::new(FieldInner {
        p: f.p,
        k: f.k,
        q: f.q,
        modulus: f.modulus.clone(),
        pows: f.pows.clone(),
        gen: f.gen,
        bin_modulus: f.bin_modulus,
        tables: None,
    }));
    let g = bare.primitive_element();
    let order = (f.q - 1) as usize;
    let mut exp = vec![0u32; 2 * order + 1];
    let mut log = vec![0u32; f.q as usize];
    let mut x = bare.one();
    for i in 0..order {
        exp[i] = x.0 as u32;
        log[x.0 as usize] = i as u32;
        x = bare.mul(x, g);
    }
    for i in order..exp.len() {
        exp[i] = exp[i - order];
    }
    let add = if f.p != 2 && f.q <= ADD_TABLE_LIMIT {
        let q = f.q as usize;
        let mut table = vec![0u16; q * q];
        for a in 0..q {
            for b in 0..q {
                table[a * q + b] = bare.add_digits(a as u64, b as u64).0 as u16;
            }
        }
        Some(table)
    } else {
        None
    };
    Tables { exp, log, add }
}

/// Parses a polynomial in `z` over F_p into dense coefficients.
pub(crate) fn parse_z_poly(s: &str, p: u64) -> Result<Vec<u64>> {
    let sparse = text::parse_sparse(s, &['z'], p)?;
    let deg = sparse.keys().map(|e| e[0] as usize).max().unwrap_or(0);
    let mut out = vec![0u64; deg + 1];
    for (e, c) in sparse {
        out[e[0] as usize] = c;
    }
    while out.len() > 1 && out.last() == Some(&0) {
        out.pop();
    }
    Ok(out)
}

/// Operation selector for [`field_arith`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Inv,
    Pow(u64),
    Frobenius(u32),
}

/// A field element bundled with its field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FqElem {
    field: FieldSpec,
    value: Fe,
}

impl FqElem {
    pub fn new(field: &FieldSpec, value: Fe) -> FqElem {
        FqElem {
            field: field.clone(),
            value,
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn value(&self) -> Fe {
        self.value
    }

    pub fn coords(&self) -> Vec<u64> {
        self.field.coords(self.value)
    }

    fn same_field(&self, other: &FqElem) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.tag(),
                right: other.field.tag(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &FqElem) -> Result<FqElem> {
        self.same_field(other)?;
        Ok(FqElem::new(&self.field, self.field.add(self.value, other.value)))
    }

    pub fn try_sub(&self, other: &FqElem) -> Result<FqElem> {
        self.same_field(other)?;
        Ok(FqElem::new(&self.field, self.field.sub(self.value, other.value)))
    }

    pub fn try_mul(&self, other: &FqElem) -> Result<FqElem> {
        self.same_field(other)?;
        Ok(FqElem::new(&self.field, self.field.mul(self.value, other.value)))
    }

    pub fn inv(&self) -> Result<FqElem> {
        Ok(FqElem::new(&self.field, self.field.inv(self.value)?))
    }

    pub fn pow(&self, e: u64) -> FqElem {
        FqElem::new(&self.field, self.field.pow(self.value, e as u128))
    }

    pub fn frobenius(&self, e: u32) -> FqElem {
        FqElem::new(&self.field, self.field.frobenius(self.value, e))
    }
}

/// Applies `op` to `a` (and `b` for binary operations).
pub fn field_arith(a: &FqElem, b: Option<&FqElem>, op: FieldOp) -> Result<FqElem> {
    let need_b = || b.ok_or_else(|| Error::InvalidArgument(format!("{op:?} needs two operands")));
    match op {
        FieldOp::Add => a.try_add(need_b()?),
        FieldOp::Sub => a.try_sub(need_b()?),
        FieldOp::Mul => a.try_mul(need_b()?),
        FieldOp::Inv => a.inv(),
        FieldOp::Pow(e) => Ok(a.pow(e)),
        FieldOp::Frobenius(e) => Ok(a.frobenius(e)),
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.field.format(self.value), self.field.tag())
    }
}

impl fmt::Debug for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for FqElem {
    type Err = Error;

    fn from_str(s: &str) -> Result<FqElem> {
        let (elem, tag) = s.split_once('@').ok_or_else(|| Error::Parse {
            pos: 0,
            msg: "expected <element>@GF(...)".into(),
        })?;
        let field = FieldSpec::parse_tag(tag)?;
        let value = field.parse_elem(elem)?;
        Ok(FqElem { field, value })
    }
}

/// A field embedding F_{p^a} → F_{p^b} determined by the image of the generator.
#[derive(Clone, Debug)]
pub struct Embedding {
    from: FieldSpec,
    to: FieldSpec,
    basis_images: Vec<Fe>,
}

impl Embedding {
    /// Embedding sending the generator of `from` to `image`, which must be a
    /// root of `from`'s modulus inside `to`.
    pub fn new(from: &FieldSpec, to: &FieldSpec, image: Fe) -> Result<Embedding> {
        if from.p() != to.p() || to.k() % from.k() != 0 {
            return Err(Error::NoEmbedding {
                from: from.tag(),
                to: to.tag(),
            });
        }
        if from.k() == 1 {
            return Ok(Embedding::prime(to));
        }
        let mut value = Fe(0);
        let mut zpow = to.one();
        for &c in from.modulus() {
            value = to.add(value, to.mul(to.from_int(c as i64), zpow));
            zpow = to.mul(zpow, image);
        }
        if !value.is_zero() {
            return Err(Error::NoEmbedding {
                from: from.tag(),
                to: to.tag(),
            });
        }
        let mut basis_images = Vec::with_capacity(from.k());
        let mut acc = to.one();
        for _ in 0..from.k() {
            basis_images.push(acc);
            acc = to.mul(acc, image);
        }
        Ok(Embedding {
            from: from.clone(),
            to: to.clone(),
            basis_images,
        })
    }

    /// The canonical embedding of the prime field.
    pub fn prime(to: &FieldSpec) -> Embedding {
        let from = FieldSpec::prime(to.p()).expect("characteristic of an existing field");
        Embedding {
            from,
            to: to.clone(),
            basis_images: vec![to.one()],
        }
    }

    pub fn identity(field: &FieldSpec) -> Embedding {
        let mut basis_images = Vec::with_capacity(field.k());
        let mut acc = field.one();
        for _ in 0..field.k() {
            basis_images.push(acc);
            acc = field.mul(acc, field.gen());
        }
        if field.k() == 1 {
            basis_images = vec![field.one()];
        }
        Embedding {
            from: field.clone(),
            to: field.clone(),
            basis_images,
        }
    }

    /// The embedding that sends the generator to the least (by encoding) root
    /// of `from`'s modulus in `to`.
    pub fn find(from: &FieldSpec, to: &FieldSpec) -> Result<Embedding> {
        if from.k() == 1 {
            if from.p() != to.p() {
                return Err(Error::NoEmbedding {
                    from: from.tag(),
                    to: to.tag(),
                });
            }
            return Ok(Embedding::prime(to));
        }
        if from == to {
            return Ok(Embedding::identity(from));
        }
        if from.p() != to.p() || to.k() % from.k() != 0 {
            return Err(Error::NoEmbedding {
                from: from.tag(),
                to: to.tag(),
            });
        }
        let m = UniPoly::from_u64s(to, from.modulus());
        let roots = m.roots();
        let root = roots.first().ok_or_else(|| Error::NoEmbedding {
            from: from.tag(),
            to: to.tag(),
        })?;
        Embedding::new(from, to, root.0)
    }

    pub fn source(&self) -> &FieldSpec {
        &self.from
    }

    pub fn target(&self) -> &FieldSpec {
        &self.to
    }

    pub fn map(&self, a: Fe) -> Fe {
        if self.from.k() == 1 {
            return self.to.from_int(a.0 as i64);
        }
        let coords = self.from.coords(a);
        let mut acc = Fe(0);
        for (c, &b) in coords.iter().zip(&self.basis_images) {
            if *c != 0 {
                acc = self.to.add(acc, self.to.mul(self.to.from_int(*c as i64), b));
            }
        }
        acc
    }

    /// Inverse image of `b`, if `b` lies in the embedded subfield.
    pub fn preimage(&self, b: Fe) -> Option<Fe> {
        let p = self.to.p();
        let kf = self.from.k();
        if kf == 1 {
            return self.to.in_prime_subfield(b).then_some(b);
        }
        // Solve sum_i c_i coords(basis_i) = coords(b) over F_p.
        let kt = self.to.k();
        let cols: Vec<Vec<u64>> = self.basis_images.iter().map(|&e| self.to.coords(e)).collect();
        let target = self.to.coords(b);
        let mut rows: Vec<Vec<u64>> = (0..kt)
            .map(|r| {
                let mut row: Vec<u64> = cols.iter().map(|c| c[r]).collect();
                row.push(target[r]);
                row
            })
            .collect();
        let inv = |a: u64| -> u64 {
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
        };
        let mut pivot_row = 0;
        let mut pivots = Vec::new();
        for col in 0..kf {
            let Some(r) = (pivot_row..kt).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            rows.swap(pivot_row, r);
            let iv = inv(rows[pivot_row][col]);
            for v in rows[pivot_row].iter_mut() {
                *v = *v * iv % p;
            }
            for r2 in 0..kt {
                if r2 != pivot_row && rows[r2][col] != 0 {
                    let factor = rows[r2][col];
                    for c in 0..=kf {
                        let sub = factor * rows[pivot_row][c] % p;
                        rows[r2][c] = (rows[r2][c] + p - sub) % p;
                    }
                }
            }
            pivots.push((pivot_row, col));
            pivot_row += 1;
        }
        if rows[pivot_row..].iter().any(|row| row[kf] != 0) {
            return None;
        }
        let mut coords = vec![0u64; kf];
        for (r, c) in pivots {
            coords[c] = rows[r][kf];
        }
        Some(self.from.from_coords(&coords))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f8_paper() -> FieldSpec {
        FieldSpec::new(2, 3, Some(&[1, 0, 1, 1])).unwrap()
    }

    #[test]
    fn paper_moduli_have_expected_generator_orders() {
        let f8 = f8_paper();
        assert_eq!(f8.order(f8.gen()).unwrap(), 7);
        let f243 = FieldSpec::new(3, 5, Some(&[2, 2, 1, 2, 0, 1])).unwrap();
        assert_eq!(f243.order(f243.gen()).unwrap(), 11);
        let f2 = FieldSpec::new(2, 1, None).unwrap();
        assert_eq!(f2.q(), 2);
        assert!(f2.is_prime_field());
    }

    #[test]
    fn small_arithmetic_examples() {
        let f2 = FieldSpec::prime(2).unwrap();
        assert_eq!(f2.add(f2.one(), f2.one()), f2.zero());
        let f8 = f8_paper();
        let z = f8.gen();
        let z2 = f8.mul(z, z);
        // z * z^2 = z^3 = z^2 + 1
        assert_eq!(f8.format(f8.mul(z, z2)), "z^2+1");
        let zp1 = f8.add(z, f8.one());
        assert_eq!(f8.format(f8.frobenius(zp1, 1)), "z^2+1");
        assert_eq!(f8.inv(f8.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn default_modulus_is_least_irreducible() {
        let f8 = FieldSpec::new(2, 3, None).unwrap();
        assert_eq!(f8.modulus(), &[1, 1, 0, 1]);
        let f9 = FieldSpec::new(3, 2, None).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(FieldSpec::new(4, 1, None).unwrap_err(), Error::NotPrime(4));
        match FieldSpec::new(2, 3, Some(&[1, 0, 0, 1])) {
            Err(Error::ReducibleModulus { factor, .. }) => assert_eq!(factor, "z+1"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            FieldSpec::new(2, 3, Some(&[1, 1, 1])),
            Err(Error::ModulusDegree { .. })
        ));
        assert!(matches!(
            FieldSpec::new(3, 2, Some(&[1, 0, 2])),
            Err(Error::ModulusNotMonic { .. })
        ));
    }

    #[test]
    fn element_text_round_trip() {
        let e: FqElem = "z^2+1@GF(2^3;z^3+z^2+1)".parse().unwrap();
        assert_eq!(e.to_string(), "z^2+1@GF(2^3;z^3+z^2+1)");
        let e: FqElem = "2*z^4+z+2@GF(3^5;z^5+2*z^3+z^2+2*z+2)".parse().unwrap();
        assert_eq!(e.to_string(), "2*z^4+z+2@GF(3^5;z^5+2*z^3+z^2+2*z+2)");
        let e: FqElem = "4@GF(7)".parse().unwrap();
        assert_eq!(e.to_string(), "4@GF(7)");
        // z^3 reduces through the modulus on input
        let e: FqElem = "z^3@GF(2^3;z^3+z^2+1)".parse().unwrap();
        assert_eq!(e.to_string(), "z^2+1@GF(2^3;z^3+z^2+1)");
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let a: FqElem = "z@GF(2^3;z^3+z^2+1)".parse().unwrap();
        let b: FqElem = "z@GF(2^3;z^3+z+1)".parse().unwrap();
        assert!(matches!(a.try_add(&b), Err(Error::FieldMismatch { .. })));
        assert!(field_arith(&a, None, FieldOp::Mul).is_err());
        assert_eq!(field_arith(&a, None, FieldOp::Pow(7)).unwrap().value(), a.field().one());
    }

    #[test]
    fn table_and_generic_paths_agree() {
        // F_{3^7} is above the add-table limit; F_{2^17} above the mul-table limit.
        for (p, k) in [(3u64, 7usize), (2, 17), (5, 3), (3, 11)] {
            let f = FieldSpec::new(p, k, None).unwrap();
            let bare = FieldSpec::assemble(p, k, f.q(), f.modulus().to_vec());
            let mut x = Fe(1);
            for i in 0..200u64 {
                let y = Fe((i * 7919 + 13) % f.q());
                assert_eq!(f.mul(x, y), bare.mul_slow_checked(x, y));
                assert_eq!(f.add(x, y), bare.add_digits(x.0, y.0));
                x = f.add(f.mul(x, y), Fe(1));
            }
        }
    }

    impl FieldSpec {
        fn mul_slow_checked(&self, a: Fe, b: Fe) -> Fe {
            if a.0 == 0 || b.0 == 0 {
                return Fe(0);
            }
            if self.k() == 1 {
                return Fe(a.0 * b.0 % self.p());
            }
            self.mul_slow(a.0, b.0)
        }
    }

    #[test]
    fn embeddings() {
        let f8 = f8_paper();
        let f64_ = FieldSpec::new(2, 6, None).unwrap();
        let emb = Embedding::find(&f8, &f64_).unwrap();
        for a in f8.elements() {
            for b in f8.elements() {
                assert_eq!(emb.map(f8.mul(a, b)), f64_.mul(emb.map(a), emb.map(b)));
            }
            assert_eq!(emb.preimage(emb.map(a)), Some(a));
        }
        let f16 = FieldSpec::new(2, 4, None).unwrap();
        assert!(Embedding::find(&f8, &f16).is_err());
    }

    #[test]
    fn every_element_satisfies_x_to_the_q() {
        for (p, k) in [(2u64, 3usize), (3, 2), (3, 5), (2, 11)] {
            let f = FieldSpec::new(p, k, None).unwrap();
            for a in f.elements().step_by(1 + f.q() as usize / 300) {
                assert_eq!(f.pow(a, f.q() as u128), a);
            }
        }
    }
}
