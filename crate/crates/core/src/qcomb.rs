//! q-analog combinatorics: the brackets `[a,b]_q`, `[a]_q` and Gaussian
//! binomial coefficients.
//!
//! `q` is an arbitrary integer >= 2 here; nothing checks that it is a prime
//! power.

use num_traits::Zero;

use crate::exactmath::{exact_div, BigInt};

fn big_pow(q: u64, e: u64) -> BigInt {
    num_traits::pow(BigInt::from(q), e as usize)
}

/// `[a,b]_q = prod_{i<b} (q^a - q^i)`; one for `b = 0`, zero for `b > a`.
pub fn qfact(a: u64, b: u64, q: u64) -> BigInt {
    let qa = big_pow(q, a);
    (0..b).map(|i| &qa - big_pow(q, i)).product()
}

/// `[a]_q = [a,a]_q`, the order of GL(a, q).
pub fn qbracket(a: u64, q: u64) -> BigInt {
    qfact(a, a, q)
}

/// Gaussian binomial: the number of b-dimensional subspaces of GF(q)^a.
pub fn gauss_binom(a: u64, b: u64, q: u64) -> BigInt {
    if b > a {
        return BigInt::zero();
    }
    let num = qfact(a, b, q);
    let den = qbracket(b, q);
    exact_div(&num, &den).unwrap_or_else(|| panic!("[{a},{b}]_{q} not divisible by [{b}]_{q}"))
}

/// `C(n, 2)` as used in the exponents `q^{C(r-j,2)}`.
pub fn choose2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// Checks the expansion
/// `[a,b]_q = sum_i gauss(b,i) (-1)^{b-i} q^{C(b-i,2)} (q^a)^i`.
pub fn qbinom_expansion_check(a: u64, b: u64, q: u64) -> bool {
    let qa = big_pow(q, a);
    let rhs: BigInt = (0..=b)
        .map(|i| {
            let term = gauss_binom(b, i, q)
                * big_pow(q, choose2(b - i))
                * num_traits::pow(qa.clone(), i as usize);
            if (b - i) % 2 == 1 {
                -term
            } else {
                term
            }
        })
        .sum();
    rhs == qfact(a, b, q)
}
