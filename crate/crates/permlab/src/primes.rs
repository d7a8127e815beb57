//! Small prime utilities: sieve, trial-division factoring, and prime
//! divisors of big integers via bounded trial division.

use num_bigint::BigUint;
use num_traits::Zero;

/// Primes up to and including `limit`, by Eratosthenes.
pub fn sieve(limit: usize) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for p in 2..=limit {
        if composite[p] {
            continue;
        }
        primes.push(p as u64);
        let mut q = p * p;
        while q <= limit {
            composite[q] = true;
            q += p;
        }
    }
    primes
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime factorization of a `u64` by trial division, as (prime, multiplicity).
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut m = 0;
            while n % d == 0 {
                n /= d;
                m += 1;
            }
            out.push((d, m));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Distinct primes up to `max_prime` dividing `x`. For the order of a
/// permutation group of degree n, every prime divisor is at most n, so
/// `max_prime = n` gives the complete set.
pub fn distinct_prime_divisors(x: &BigUint, max_prime: usize) -> Vec<u64> {
    let mut out = Vec::new();
    if x.is_zero() {
        return out;
    }
    for p in sieve(max_prime) {
        if (x % BigUint::from(p)).is_zero() {
            out.push(p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_small() {
        assert_eq!(sieve(1), Vec::<u64>::new());
        assert_eq!(sieve(12), vec![2, 3, 5, 7, 11]);
        assert_eq!(sieve(100).len(), 25);
    }

    #[test]
    fn factoring() {
        assert_eq!(factor_u64(60), vec![(2, 2), (3, 1), (5, 1)]);
        assert_eq!(factor_u64(97), vec![(97, 1)]);
        assert!(is_prime_u64(2));
        assert!(is_prime_u64(61));
        assert!(!is_prime_u64(1));
        assert!(!is_prime_u64(91));
    }

    #[test]
    fn big_divisors() {
        let x = BigUint::from(720u32); // 2^4 * 3^2 * 5
        assert_eq!(distinct_prime_divisors(&x, 6), vec![2, 3, 5]);
        assert_eq!(distinct_prime_divisors(&BigUint::from(1u32), 10), Vec::<u64>::new());
    }
}
