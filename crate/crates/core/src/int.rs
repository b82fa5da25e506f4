//! Arbitrary-precision integer helpers.

use ibig::ops::{Abs, RemEuclid};

pub use ibig::IBig as Int;

#[inline]
pub fn int(x: i64) -> Int {
    Int::from(x)
}

pub fn is_zero(x: &Int) -> bool {
    *x == Int::from(0u8)
}

pub fn is_one(x: &Int) -> bool {
    *x == Int::from(1u8)
}

/// Non-negative gcd, with `gcd(0, 0) = 0`.
pub fn gcd(a: &Int, b: &Int) -> Int {
    if is_zero(a) {
        return b.abs();
    }
    if is_zero(b) {
        return a.abs();
    }
    a.gcd(b).abs()
}

/// Canonical residue of `x` modulo `m`; modulo 0 is the identity.
pub fn reduce(x: &Int, m: &Int) -> Int {
    if is_zero(m) {
        x.clone()
    } else {
        x.rem_euclid(m)
    }
}

/// `a | b`, where `0 | b` holds only for `b = 0`.
pub fn divides(a: &Int, b: &Int) -> bool {
    if is_zero(a) {
        is_zero(b)
    } else {
        is_zero(&b.rem_euclid(a))
    }
}

/// Exact quotient `b / a`; callers guarantee divisibility.
pub fn exact_div(b: &Int, a: &Int) -> Int {
    debug_assert!(divides(a, b));
    b / a
}

pub fn to_i64(x: &Int) -> Option<i64> {
    i64::try_from(x).ok()
}

pub fn to_usize(x: &Int) -> Option<usize> {
    usize::try_from(x).ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_and_reduce() {
        assert_eq!(gcd(&int(12), &int(-18)), int(6));
        assert_eq!(gcd(&int(0), &int(0)), int(0));
        assert_eq!(gcd(&int(0), &int(5)), int(5));
        assert_eq!(reduce(&int(-1), &int(4)), int(3));
        assert_eq!(reduce(&int(-7), &int(0)), int(-7));
        assert!(divides(&int(0), &int(0)));
        assert!(!divides(&int(0), &int(2)));
        assert!(divides(&int(3), &int(-9)));
    }
}
