//! Exponent languages describing the supports of the Fano and Mathieu series.

/// Which support set to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LanguageKind {
    /// Binary words whose zero blocks all have length divisible by 3.
    Fano,
    /// Exponents of the Taylor roots of x^24 + x + t.
    Mathieu,
}

/// A support language. The two flags select literal variants of the
/// Mathieu grammar that are known to disagree with the lifted series; they
/// exist only so the disagreement can be exhibited.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExponentLanguage {
    pub kind: LanguageKind,
    /// Use the seed 101000 (= 40) in place of 1001000 (= 72).
    pub b_prefix_101000: bool,
    /// Let the K block append twelve zeros instead of eleven.
    pub k_twelve_zeros: bool,
}

impl ExponentLanguage {
    pub fn fano() -> ExponentLanguage {
        ExponentLanguage {
            kind: LanguageKind::Fano,
            b_prefix_101000: false,
            k_twelve_zeros: false,
        }
    }

    pub fn mathieu() -> ExponentLanguage {
        ExponentLanguage {
            kind: LanguageKind::Mathieu,
            b_prefix_101000: false,
            k_twelve_zeros: false,
        }
    }

    pub fn contains(&self, n: u64) -> bool {
        omega_member(self, n)
    }
}

fn fano_member(n: u64) -> bool {
    if n == 0 {
        return true;
    }
    let mut run = 0u32;
    let top = 63 - n.leading_zeros();
    for bit in (0..top).rev() {
        if n >> bit & 1 == 0 {
            run += 1;
        } else {
            if run % 3 != 0 {
                return false;
            }
            run = 0;
        }
    }
    run % 3 == 0
}

/// Membership of e = n/8 in the closure of the seeds under the four
/// block appends, tested by peeling blocks off the low end.
fn mathieu_block_member(lang: &ExponentLanguage, mut e: u64) -> bool {
    let b_seed = if lang.b_prefix_101000 { 40 } else { 72 };
    let (k_mod, k_shift) = if lang.k_twelve_zeros { (4096, 12) } else { (2048, 11) };
    loop {
        if e == 0 || e == 3 || e == b_seed || e == 256 {
            return true;
        }
        if e % 16 == 1 {
            e >>= 4;
        } else if e % 8 == 2 {
            e >>= 3;
        } else if e % 512 == 8 {
            e >>= 9;
        } else if e % k_mod == 0 {
            e >>= k_shift;
        } else {
            return false;
        }
    }
}

/// Whether t^n occurs in the series described by `lang`.
pub fn omega_member(lang: &ExponentLanguage, n: u64) -> bool {
    match lang.kind {
        LanguageKind::Fano => fano_member(n),
        LanguageKind::Mathieu => n == 1 || (n % 8 == 0 && mathieu_block_member(lang, n / 8)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fano_words() {
        let l = ExponentLanguage::fano();
        let members: Vec<u64> = (0..20).filter(|&n| l.contains(n)).collect();
        assert_eq!(members, vec![0, 1, 3, 7, 8, 15, 17]);
    }

    #[test]
    fn mathieu_words() {
        let l = ExponentLanguage::mathieu();
        assert!(l.contains(24));
        assert!(l.contains(208));
        assert!(!l.contains(7));
        let members: Vec<u64> = (0..100).filter(|&n| l.contains(n)).collect();
        assert_eq!(members, vec![0, 1, 8, 16, 24, 64, 80]);
    }
}
