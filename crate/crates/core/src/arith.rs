//! Small integer helpers: factorization by trial division, square tests,
//! divisor listing. Everything here is exact and sized for "desk scale"
//! inputs (up to roughly 10^12).

use num_integer::{Integer, Roots};

/// Prime factorization as `(prime, exponent)` pairs in increasing order.
/// Returns an empty list for `n <= 1`.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n <= 1 {
        return out;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Number of distinct prime factors.
pub fn omega(n: u64) -> u32 {
    factorize(n).len() as u32
}

pub fn is_prime(n: u64) -> bool {
    matches!(factorize(n).as_slice(), [(_, 1)])
}

/// All positive divisors of `n`, sorted.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for (p, e) in factorize(n) {
        let len = out.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                out.push(out[i] * pk);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Exact integer square root when `n` is a perfect square.
pub fn exact_sqrt(n: i128) -> Option<i128> {
    if n < 0 {
        return None;
    }
    let r = n.sqrt();
    (r * r == n).then_some(r)
}

pub fn gcd3(a: i64, b: i64, c: i64) -> i64 {
    a.gcd(&b).gcd(&c)
}

/// True iff `n` is 1 or a product of distinct primes congruent to 1 mod 3.
pub fn is_admissible_d(n: u64) -> bool {
    n >= 1 && factorize(n).iter().all(|&(p, e)| e == 1 && p % 3 == 1)
}

/// True iff every prime congruent to 2 mod 3 divides `n` to an even power.
/// This is exactly the set of nonzero values of `x^2 - xy + y^2`.
pub fn primes_2_mod_3_even(n: u64) -> bool {
    n >= 1 && factorize(n).iter().all(|&(p, e)| p % 3 != 2 || e % 2 == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization() {
        assert_eq!(factorize(1), vec![]);
        assert_eq!(factorize(84), vec![(2, 2), (3, 1), (7, 1)]);
        assert_eq!(factorize(1925), vec![(5, 2), (7, 1), (11, 1)]);
        assert_eq!(factorize(97), vec![(97, 1)]);
    }

    #[test]
    fn divisor_list() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(divisors(84).len(), 12);
    }

    #[test]
    fn squares() {
        assert_eq!(exact_sqrt(0), Some(0));
        assert_eq!(exact_sqrt(49), Some(7));
        assert_eq!(exact_sqrt(50), None);
        assert_eq!(exact_sqrt(-4), None);
    }

    #[test]
    fn admissible_d() {
        assert!(is_admissible_d(1));
        assert!(is_admissible_d(7));
        assert!(is_admissible_d(91));
        assert!(!is_admissible_d(49));
        assert!(!is_admissible_d(3));
        assert!(!is_admissible_d(5));
    }
}
