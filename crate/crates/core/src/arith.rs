//! Small integer utilities: prime sieves and factorization at machine size.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Primes up to and including `n`, by sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut is_comp = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if !is_comp[p] {
            primes.push(p as u64);
            let mut q = p * p;
            while q <= n {
                is_comp[q] = true;
                q += p;
            }
        }
    }
    primes
}

/// Smallest-prime-factor table for `0..=n`; `spf[0] = spf[1] = 0`.
pub fn spf_table(n: u64) -> Vec<u32> {
    let n = n as usize;
    let mut spf = vec![0u32; n + 1];
    let mut primes: Vec<usize> = Vec::new();
    for m in 2..=n {
        if spf[m] == 0 {
            spf[m] = m as u32;
            primes.push(m);
        }
        for &p in &primes {
            if p > spf[m] as usize || m * p > n {
                break;
            }
            spf[m * p] = p as u32;
        }
    }
    spf
}

/// Prime factorization of a machine integer by trial division.
pub fn factorize_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Prime factorization of a non-zero big integer by trial division.
pub fn factorize_bigint(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    assert!(!n.is_zero(), "factorize_bigint(0)");
    let mut out = Vec::new();
    let mut d = BigInt::from(2);
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            let mut e = 0u32;
            while (&n % &d).is_zero() {
                n /= &d;
                e += 1;
            }
            out.push((d.clone(), e));
        }
        d += if d == BigInt::from(2) { BigInt::one() } else { BigInt::from(2) };
    }
    if n > BigInt::one() {
        out.push((n, 1));
    }
    out
}

/// `n` with every factor of two removed.
pub fn odd_part(mut n: u64) -> u64 {
    while n != 0 && n % 2 == 0 {
        n /= 2;
    }
    n
}

pub fn gcd_u64(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    let mut a = a.unsigned_abs();
    let mut b = b.unsigned_abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a as i64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_and_factor() {
        assert_eq!(primes_up_to(20), vec![2, 3, 5, 7, 11, 13, 17, 19]);
        assert_eq!(factorize_u64(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(odd_part(96), 3);
        assert_eq!(odd_part(7), 7);
        let spf = spf_table(30);
        assert_eq!(spf[30], 2);
        assert_eq!(spf[29], 29);
        assert_eq!(spf[25], 5);
    }

    #[test]
    fn big_factorization() {
        let n = BigInt::from(5 * 5 * 13 * 997);
        let f = factorize_bigint(&n);
        assert_eq!(
            f,
            vec![
                (BigInt::from(5), 2),
                (BigInt::from(13), 1),
                (BigInt::from(997), 1)
            ]
        );
    }
}
