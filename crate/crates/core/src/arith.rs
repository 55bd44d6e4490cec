//! Exact integer number theory on the modulus: factorization, divisors,
//! gcd of a vector with `n`, and the Jordan totient.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};

/// A validated modulus `n >= 2` together with its prime factorization.
///
/// Cloning is cheap: the factor list is shared.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Modulus {
    n: u64,
    factors: Arc<[(u64, u32)]>,
}

impl Modulus {
    pub fn new(n: u64) -> Result<Self> {
        factorize(n)
    }

    #[inline]
    pub fn value(&self) -> u64 {
        self.n
    }

    /// Ascending `(p, k)` pairs with `p^k || n`.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    /// `Some((p, k))` when `n = p^k`.
    pub fn prime_power(&self) -> Option<(u64, u32)> {
        match *self.factors {
            [single] => Some(single),
            _ => None,
        }
    }

    pub fn is_prime(&self) -> bool {
        matches!(*self.factors, [(_, 1)])
    }

    /// `n^e`, failing loudly on overflow.
    pub fn pow(&self, e: u32) -> Result<u64> {
        checked_pow(self.n, e)
    }

    #[inline]
    pub fn reduce(&self, x: i128) -> u64 {
        x.rem_euclid(self.n as i128) as u64
    }
}

impl fmt::Debug for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Modulus({} = ", self.n)?;
        for (i, (p, k)) in self.factors.iter().enumerate() {
            if i > 0 {
                f.write_str("·")?;
            }
            if *k == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{k}")?;
            }
        }
        f.write_str(")")
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.n)
    }
}

/// A positive divisor `d` of the modulus, with its cofactor `n / d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Divisor {
    d: u64,
    cofactor: u64,
}

impl Divisor {
    pub fn of(d: u64, nn: &Modulus) -> Result<Self> {
        let n = nn.value();
        if d == 0 || !n.is_multiple_of(d) {
            return Err(Error::Domain(format!("{d} does not divide {n}")));
        }
        Ok(Self { d, cofactor: n / d })
    }

    #[inline]
    pub fn value(&self) -> u64 {
        self.d
    }

    #[inline]
    pub fn cofactor(&self) -> u64 {
        self.cofactor
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.d)
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Extended Euclid: returns `(g, x, y)` with `a·x + b·y = g = gcd(a, b)`.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    let (mut r0, mut r1) = (a, b);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (-r0, -s0, -t0)
    } else {
        (r0, s0, t0)
    }
}

/// Inverse of `a` modulo `n`, if `gcd(a, n) = 1`.
pub fn inv_mod(a: u64, n: u64) -> Option<u64> {
    let (g, x, _) = ext_gcd(a as i128, n as i128);
    (g == 1).then(|| x.rem_euclid(n as i128) as u64)
}

pub(crate) fn checked_pow(base: u64, e: u32) -> Result<u64> {
    base.checked_pow(e)
        .ok_or_else(|| Error::Overflow(format!("{base}^{e} does not fit in 64 bits")))
}

pub(crate) fn checked_mul(a: u64, b: u64) -> Result<u64> {
    a.checked_mul(b)
        .ok_or_else(|| Error::Overflow(format!("{a}·{b} does not fit in 64 bits")))
}

/// Trial division up to `√n`.
pub fn factorize(n: u64) -> Result<Modulus> {
    if n < 2 {
        return Err(Error::Domain("modulus must be at least 2".into()));
    }
    let mut factors = Vec::new();
    let mut rest = n;
    let mut p = 2u64;
    while p.saturating_mul(p) <= rest {
        if rest.is_multiple_of(p) {
            let mut k = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                k += 1;
            }
            factors.push((p, k));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Modulus {
        n,
        factors: factors.into(),
    })
}

/// All divisors of `n`, ascending.
pub fn divisors(nn: &Modulus) -> Vec<Divisor> {
    let mut ds = vec![1u64];
    for &(p, k) in nn.factors() {
        let current = ds.clone();
        let mut pk = 1u64;
        for _ in 0..k {
            pk *= p;
            ds.extend(current.iter().map(|d| d * pk));
        }
    }
    ds.sort_unstable();
    ds.into_iter()
        .map(|d| Divisor {
            d,
            cofactor: nn.value() / d,
        })
        .collect()
}

/// `gcd(a_1, ..., a_m, n)`. The zero vector yields `n`.
pub fn gcd_of_components(components: &[u64], n: u64) -> u64 {
    components.iter().fold(n, |g, &c| gcd(g, c))
}

pub fn gcd_with_modulus(a: &crate::linalg::VectorModN) -> Divisor {
    let nn = a.modulus();
    let d = gcd_of_components(a.components(), nn.value());
    Divisor {
        d,
        cofactor: nn.value() / d,
    }
}

/// Jordan totient `φ_m(n)`: the number of vectors in `Z_n^m` coprime with `n`.
///
/// Computed over prime powers as `∏ (p^{mk} - p^{m(k-1)})`.
pub fn jordan_totient(m: u32, nn: &Modulus) -> Result<u64> {
    jordan_totient_of_factors(m, nn.factors())
}

/// `φ_m(x)` for arbitrary `x >= 1` (so that `φ_m(1) = 1`).
pub fn jordan_totient_u64(m: u32, x: u64) -> Result<u64> {
    if x == 1 {
        return Ok(1);
    }
    jordan_totient(m, &factorize(x)?)
}

fn jordan_totient_of_factors(m: u32, factors: &[(u64, u32)]) -> Result<u64> {
    if m == 0 {
        return Err(Error::Domain(
            "Jordan totient order must be at least 1".into(),
        ));
    }
    factors.iter().try_fold(1u64, |acc, &(p, k)| {
        let pm = checked_pow(p, m)?;
        let lower = checked_pow(pm, k - 1)?;
        // p^{m(k-1)} · (p^m - 1)
        checked_mul(acc, checked_mul(lower, pm - 1)?)
    })
}

/// `∑_{d | n} φ_m(d)`, which should always equal `n^m`.
pub fn jordan_divisor_sum(m: u32, nn: &Modulus) -> Result<u64> {
    divisors(nn).iter().try_fold(0u64, |acc, d| {
        let term = jordan_totient_u64(m, d.value())?;
        acc.checked_add(term)
            .ok_or_else(|| Error::Overflow("divisor sum does not fit in 64 bits".into()))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn is_prime_naive(p: u64) -> bool {
        p >= 2 && (2..p).all(|q| !p.is_multiple_of(q))
    }

    /// Count vectors in `Z_n^m` with gcd equal to `d` by enumerating all of them.
    fn brute_stratum(m: u32, n: u64, d: u64) -> u64 {
        let total = n.pow(m);
        (0..total)
            .filter(|&idx| {
                let mut x = idx;
                let comps: Vec<u64> = (0..m)
                    .map(|_| {
                        let c = x % n;
                        x /= n;
                        c
                    })
                    .collect();
                gcd_of_components(&comps, n) == d
            })
            .count() as u64
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(12).unwrap().factors(), &[(2, 2), (3, 1)]);
        assert_eq!(factorize(7).unwrap().factors(), &[(7, 1)]);
        let f = factorize(360).unwrap();
        assert_eq!(f.factors(), &[(2, 3), (3, 2), (5, 1)]);
        let back: u64 = f.factors().iter().map(|&(p, k)| p.pow(k)).product();
        assert_eq!(back, 360);
        assert!(f.primes().all(is_prime_naive));
    }

    #[test]
    fn factorize_rejects_small() {
        for n in [0, 1] {
            let err = factorize(n).unwrap_err();
            assert_eq!(err.to_string(), "domain error: modulus must be at least 2");
        }
    }

    #[test]
    fn factorization_is_exact_and_prime() {
        for n in 2..2000u64 {
            let f = factorize(n).unwrap();
            let back: u64 = f.factors().iter().map(|&(p, k)| p.pow(k)).product();
            assert_eq!(back, n);
            assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));
            assert!(f.primes().all(is_prime_naive));
        }
        let big = factorize(999_999_937).unwrap();
        assert!(big.is_prime());
    }

    #[test]
    fn divisor_lists() {
        let list = |n| {
            divisors(&factorize(n).unwrap())
                .iter()
                .map(Divisor::value)
                .collect::<Vec<_>>()
        };
        assert_eq!(list(6), vec![1, 2, 3, 6]);
        assert_eq!(list(4), vec![1, 2, 4]);
        let scan: Vec<u64> = (1..=12).filter(|d| 12 % d == 0).collect();
        assert_eq!(list(12), scan);
        for n in 2..300u64 {
            let nn = factorize(n).unwrap();
            let expected: usize = nn.factors().iter().map(|&(_, k)| k as usize + 1).product();
            assert_eq!(divisors(&nn).len(), expected);
        }
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(gcd_of_components(&[2, 4], 6), 2);
        assert_eq!(gcd_of_components(&[0, 0, 0], 9), 9);
        assert_eq!(gcd_of_components(&[3, 5], 15), 1);
    }

    #[test]
    fn jordan_examples() {
        let j = |m, n| jordan_totient(m, &factorize(n).unwrap()).unwrap();
        assert_eq!(j(2, 4), brute_stratum(2, 4, 1));
        assert_eq!(j(2, 4), 12);
        assert_eq!(j(2, 6), brute_stratum(2, 6, 1));
        assert_eq!(j(2, 6), 24);
        assert_eq!(j(3, 2), brute_stratum(3, 2, 1));
        assert_eq!(j(3, 2), 7);
        assert_eq!(j(1, 12), 4);
    }

    #[test]
    fn jordan_divisor_sum_examples() {
        let s = |m, n| jordan_divisor_sum(m, &factorize(n).unwrap()).unwrap();
        assert_eq!(s(2, 4), 1 + brute_stratum(2, 2, 1) + brute_stratum(2, 4, 1));
        assert_eq!(s(2, 4), 16);
        assert_eq!(s(1, 6), 6);
        assert_eq!(s(2, 6), 36);
    }

    #[test]
    fn divisor_sum_identity() {
        for n in 2..=60u64 {
            let nn = factorize(n).unwrap();
            for m in 1..=3 {
                assert_eq!(jordan_divisor_sum(m, &nn).unwrap(), n.pow(m), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn multiplicativity() {
        for p in 2..=30u64 {
            for q in 2..=30u64 {
                if gcd(p, q) != 1 || p * q > 60 {
                    continue;
                }
                for m in 1..=4 {
                    assert_eq!(
                        jordan_totient_u64(m, p * q).unwrap(),
                        jordan_totient_u64(m, p).unwrap() * jordan_totient_u64(m, q).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn stratification_by_brute_force() {
        for n in 2..=12u64 {
            let nn = factorize(n).unwrap();
            for m in 1..=3 {
                for d in divisors(&nn) {
                    assert_eq!(
                        brute_stratum(m, n, d.value()),
                        jordan_totient_u64(m, d.cofactor()).unwrap(),
                        "n={n} m={m} d={d}"
                    );
                }
            }
        }
    }

    #[test]
    fn overflow_is_reported() {
        let nn = factorize(1_000_000_007).unwrap();
        assert!(matches!(jordan_totient(3, &nn), Err(Error::Overflow(_))));
        assert!(matches!(nn.pow(4), Err(Error::Overflow(_))));
    }

    #[test]
    fn ext_gcd_bezout() {
        for a in 0..40i128 {
            for b in 1..40i128 {
                let (g, x, y) = ext_gcd(a, b);
                assert_eq!(a * x + b * y, g);
                assert_eq!(g as u64, gcd(a as u64, b as u64));
            }
        }
        assert_eq!(inv_mod(3, 7), Some(5));
        assert_eq!(inv_mod(2, 4), None);
    }
}
