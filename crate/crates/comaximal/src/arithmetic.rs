//! Validated factorization and totient arithmetic for squarefree moduli.
//!
//! Every other module obtains its ordered prime list through [`Modulus`],
//! so the standing hypotheses (squarefree, at least two prime factors)
//! are enforced exactly once, at construction.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ModulusError {
    #[error("modulus must be at least 2, got {0}")]
    TooSmall(u64),
    #[error("{n} is not squarefree: {prime}^2 divides it")]
    NotSquarefree { n: u64, prime: u64 },
    #[error("{0} is prime: the graph on nonzero nonunits is empty")]
    PrimeModulus(u64),
}

/// A squarefree modulus n = p_1 p_2 ... p_m with m >= 2 distinct primes
/// in strictly increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Modulus {
    n: u64,
    primes: Vec<u64>,
}

impl Modulus {
    /// Factor `n` by trial division and validate the squarefree composite
    /// hypothesis. Equivalent to [`factor_squarefree`].
    pub fn new(n: u64) -> Result<Self, ModulusError> {
        factor_squarefree(n)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// Ordered distinct prime factors p_1 < ... < p_m.
    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    /// Number of distinct prime factors m.
    pub fn prime_count(&self) -> usize {
        self.primes.len()
    }

    pub fn largest_prime(&self) -> u64 {
        *self.primes.last().unwrap()
    }
}

impl std::fmt::Display for Modulus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let factors: Vec<String> = self.primes.iter().map(u64::to_string).collect();
        write!(f, "{} = {}", self.n, factors.join("*"))
    }
}

/// Trial-division factorization, rejecting anything outside the squarefree
/// composite domain. Desk-scale inputs keep this well below sqrt overflow.
pub fn factor_squarefree(n: u64) -> Result<Modulus, ModulusError> {
    if n < 2 {
        return Err(ModulusError::TooSmall(n));
    }
    let mut primes = Vec::new();
    let mut rest = n;
    let mut d = 2u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= rest) {
        if rest % d == 0 {
            rest /= d;
            if rest % d == 0 {
                return Err(ModulusError::NotSquarefree { n, prime: d });
            }
            primes.push(d);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        primes.push(rest);
    }
    if primes.len() < 2 {
        return Err(ModulusError::PrimeModulus(n));
    }
    debug_assert!(primes.windows(2).all(|w| w[0] < w[1]));
    debug_assert_eq!(primes.iter().product::<u64>(), n);
    Ok(Modulus { n, primes })
}

/// Euler totient of a squarefree modulus: prod_i (p_i - 1).
pub fn euler_phi(modulus: &Modulus) -> u64 {
    modulus
        .primes()
        .iter()
        .fold(1u64, |acc, &p| acc.checked_mul(p - 1).expect("phi overflow"))
}

/// Deterministic trial-division primality test.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= n) {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest prime strictly greater than `n`.
pub fn next_prime(n: u64) -> u64 {
    let mut candidate = n + 1;
    while !is_prime(candidate) {
        candidate += 1;
    }
    candidate
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}
