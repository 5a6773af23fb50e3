//! Integer helpers: gcd formulas for `p^i ± 1`, odd parts, primitive prime divisors.

use crate::error::{Error, Result};

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `base^exp`, panicking on overflow. Every caller works at desk scale.
pub fn ipow(base: u64, exp: u32) -> u64 {
    base.checked_pow(exp).expect("integer power overflows u64")
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors in increasing order, by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
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

/// Multiplicative order of `a` modulo `n` (requires gcd(a, n) = 1, n > 1).
pub fn multiplicative_order(a: u64, n: u64) -> u64 {
    let a = a % n;
    let mut x = a;
    let mut k = 1;
    while x != 1 {
        x = ((x as u128 * a as u128) % n as u128) as u64;
        k += 1;
    }
    k
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// `gcd(p^i + 1, p^m - 1)` or `gcd(p^i - 1, p^m - 1)` from the closed form.
pub fn gcd_pm(p: u64, i: u32, m: u32, sign: Sign) -> u64 {
    assert!(i >= 1 && m >= 1, "gcd_pm needs i, m >= 1");
    let g = gcd(i as u64, m as u64) as u32;
    match sign {
        Sign::Minus => ipow(p, g) - 1,
        Sign::Plus => {
            if (m / g) % 2 == 1 {
                if p == 2 {
                    1
                } else {
                    2
                }
            } else {
                ipow(p, g) + 1
            }
        }
    }
}

pub fn odd_part(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::NumberTheory("odd part of 0 is undefined".into()));
    }
    Ok(n >> n.trailing_zeros())
}

pub fn two_adic_valuation(n: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::NumberTheory("2-adic valuation of 0 is undefined".into()));
    }
    Ok(n.trailing_zeros())
}

/// Smallest prime dividing `p^m - 1` but no `p^i - 1` with `i < m`.
pub fn zsigmondy_prime(p: u64, m: u32) -> Result<u64> {
    if m <= 2 || (p == 2 && m == 6) {
        return Err(Error::NumberTheory(format!(
            "no primitive divisor guaranteed for (p, m) = ({p}, {m})"
        )));
    }
    let n = ipow(p, m) - 1;
    prime_factors(n)
        .into_iter()
        .find(|&r| r != p && multiplicative_order(p, r) == m as u64)
        .ok_or_else(|| Error::NumberTheory(format!("no primitive divisor of {p}^{m} - 1")))
}

/// The largest power of `r` dividing `n`.
pub fn prime_part(mut n: u64, r: u64) -> u64 {
    let mut part = 1;
    while n.is_multiple_of(r) {
        n /= r;
        part *= r;
    }
    part
}

/// Exact rational `num/den` in lowest terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Ratio {
        let g = gcd(num, den).max(1);
        Ratio { num: num / g, den: den / g }
    }

    pub fn ceil(self) -> u64 {
        self.num.div_ceil(self.den)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_examples() {
        assert_eq!(gcd_pm(3, 2, 6, Sign::Minus), 8);
        assert_eq!(gcd_pm(3, 2, 6, Sign::Plus), 2);
        assert_eq!(gcd_pm(3, 2, 4, Sign::Plus), 10);
    }

    #[test]
    fn odd_part_and_valuation() {
        assert_eq!((odd_part(12).unwrap(), two_adic_valuation(12).unwrap()), (3, 2));
        assert_eq!((odd_part(1).unwrap(), two_adic_valuation(1).unwrap()), (1, 0));
        assert_eq!((odd_part(40).unwrap(), two_adic_valuation(40).unwrap()), (5, 3));
        assert!(odd_part(0).is_err());
        assert!(two_adic_valuation(0).is_err());
    }

    #[test]
    fn zsigmondy_examples() {
        assert_eq!(zsigmondy_prime(3, 6).unwrap(), 7);
        assert_eq!(zsigmondy_prime(3, 4).unwrap(), 5);
        assert!(zsigmondy_prime(2, 6).is_err());
        assert!(zsigmondy_prime(5, 2).is_err());
    }

    #[test]
    fn ratio_reduces() {
        let r = Ratio::new(26, 12);
        assert_eq!((r.num, r.den, r.ceil()), (13, 6, 3));
    }
}
