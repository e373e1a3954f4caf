//! Track how connectivity grows as larger primes are appended to a
//! modulus: kappa(n * q) = (p_m - 1) * kappa(n) for q > p_m.

use comaximal::arithmetic::next_prime;
use comaximal::factor_squarefree;
use comaximal::support_model::{kappa, kappa_append_prime};

fn main() {
    let mut n: u64 = 6;
    println!("{:>12}  {:>8}  {:>8}", "n", "kappa", "predicted");
    for _ in 0..6 {
        let modulus = factor_squarefree(n).unwrap();
        let q = next_prime(modulus.largest_prime());
        let predicted = kappa_append_prime(&modulus, q).unwrap();
        let extended = factor_squarefree(n * q).unwrap();
        let actual = kappa(&extended);
        assert_eq!(predicted, actual);
        println!("{:>12}  {:>8}  {:>8}", n * q, actual, predicted);
        n *= q;
    }
}
