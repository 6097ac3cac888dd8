//! Small integer helpers shared by the group and labeller modules.

use alloc::vec::Vec;

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub(crate) fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Prime factorization by trial division, as `(prime, exponent)` in ascending
/// prime order. `factorize(1)` is empty.
pub fn factorize(mut m: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= m {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// Returns `Some(e)` when `m == base^e` for some `e >= 1`.
pub(crate) fn exact_power(m: u64, base: u64) -> Option<u32> {
    if m < base || base < 2 {
        return None;
    }
    let mut x = m;
    let mut e = 0;
    while x.is_multiple_of(base) {
        x /= base;
        e += 1;
    }
    (x == 1).then_some(e)
}

/// Inverse of `a` modulo `m`, for coprime `a` and `m`.
pub(crate) fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    #[test]
    fn factorizations() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(12), vec![(2, 2), (3, 1)]);
        assert_eq!(factorize(97), vec![(97, 1)]);
        assert_eq!(factorize(3 * 3 * 3 * 5 * 49), vec![(3, 3), (5, 1), (7, 2)]);
    }

    #[test]
    fn powers_and_inverses() {
        assert_eq!(exact_power(27, 3), Some(3));
        assert_eq!(exact_power(28, 3), None);
        assert_eq!(exact_power(1, 2), None);
        assert_eq!(mod_inverse(3, 7), Some(5));
        assert_eq!(mod_inverse(4, 8), None);
        assert_eq!(lcm(4, 6), 12);
    }
}
