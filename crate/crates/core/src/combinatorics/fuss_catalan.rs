use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// `Γ(x+len)/Γ(x) = x (x+1) … (x+len-1)`.
fn rising(x: &BigRational, len: u64) -> BigRational {
    let mut acc = BigRational::one();
    let mut t = x.clone();
    for _ in 0..len {
        acc *= &t;
        t += BigRational::one();
    }
    acc
}

fn factorial(m: u64) -> BigInt {
    (1..=m).map(BigInt::from).product()
}

/// Fuss-Catalan number `A_m(ν, r) = r/m! · Γ(mν+r)/Γ(m(ν-1)+r+1)`, exactly.
///
/// The two gamma arguments differ by `m-1`, so for `m ≥ 1` the ratio is a
/// finite rising product and any pole cancels. For `m = 0` the ratio is
/// `1/r`, which is undefined at `r = 0`.
pub fn fuss_catalan(m: u64, nu: &BigRational, r: &BigRational) -> Result<BigRational> {
    if m == 0 {
        if r.is_zero() {
            return Err(Error::Pole("A_0(nu, 0): Gamma(0)/Gamma(1)".into()));
        }
        return Ok(BigRational::one());
    }
    let mb = BigRational::from_integer(BigInt::from(m));
    let x = &mb * (nu - BigRational::one()) + r + BigRational::one();
    let ratio = rising(&x, m - 1);
    Ok(r * ratio / BigRational::from_integer(factorial(m)))
}

/// Series coefficient `b_n = Γ(n-1+n/k) / (n! Γ(n/k))`, via
/// `b_n = Π_{i=0}^{n-2} (n + ik) / (k^{n-1} n!)`.
pub fn b_n(n: u64, k: u64) -> BigRational {
    assert!(n >= 1 && k >= 2, "b_n needs n >= 1 and k >= 2");
    let num: BigInt = (0..n.saturating_sub(1)).map(|i| BigInt::from(n + i * k)).product();
    let den = BigInt::from(k).pow((n - 1) as u32) * factorial(n);
    BigRational::new(num, den)
}

/// `b_n` through the general Fuss-Catalan form `-A_n(1 + 1/k, -1)`.
pub fn b_n_via_fuss_catalan(n: u64, k: u64) -> BigRational {
    let nu = BigRational::one() + BigRational::new(BigInt::one(), BigInt::from(k));
    let r = -BigRational::one();
    -fuss_catalan(n, &nu, &r).expect("m >= 1 never hits a pole")
}

/// Binomial coefficient `C(n, r)` for nonnegative arguments.
pub fn binomial(n: u64, r: u64) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    let r = r.min(n - r);
    let mut acc = BigInt::one();
    for t in 1..=r {
        acc = acc * BigInt::from(n - r + t) / BigInt::from(t);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn first_coefficient_is_one() {
        for k in 2..12 {
            assert_eq!(b_n(1, k), q(1, 1));
            assert_eq!(b_n_via_fuss_catalan(1, k), q(1, 1));
        }
    }

    #[test]
    fn small_values() {
        assert_eq!(b_n(2, 3), q(1, 3));
        assert_eq!(b_n(3, 3), q(1, 3));
        assert_eq!(b_n(4, 2), q(1, 1));
        assert_eq!(b_n(6, 3), q(1, 1));
        assert_eq!(b_n(3, 2), q(5, 8));
    }

    #[test]
    fn fuss_catalan_examples() {
        // Ordinary Catalan numbers are A_m(2, 1).
        let catalan: Vec<BigRational> = (0..8).map(|m| fuss_catalan(m, &q(2, 1), &q(1, 1)).unwrap()).collect();
        let expect: Vec<BigRational> = [1, 1, 2, 5, 14, 42, 132, 429].iter().map(|&c| q(c, 1)).collect();
        assert_eq!(catalan, expect);
        assert!(matches!(fuss_catalan(0, &q(2, 1), &q(0, 1)), Err(Error::Pole(_))));
        assert_eq!(fuss_catalan(0, &q(3, 2), &q(-1, 1)).unwrap(), q(1, 1));
        // Γ(0)/Γ(0) style cancellation: m = 1 always gives r.
        assert_eq!(fuss_catalan(1, &q(-4, 1), &q(-1, 1)).unwrap(), q(-1, 1));
    }

    #[test]
    fn product_and_fuss_catalan_forms_agree() {
        for k in 2..=10 {
            for n in 1..=200 {
                let b = b_n(n, k);
                assert!(b > BigRational::zero(), "b_{n} for k={k}");
                assert_eq!(b, b_n_via_fuss_catalan(n, k), "b_{n} for k={k}");
            }
        }
    }

    #[test]
    fn multiples_of_k_closed_form() {
        for k in 2..=10u64 {
            for m in 1..=20u64 {
                let closed = BigRational::new(binomial((k + 1) * m - 2, m - 1), BigInt::from(m * k));
                assert_eq!(b_n(m * k, k), closed, "m={m} k={k}");
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(6, 0), BigInt::from(1));
        assert_eq!(binomial(10, 3), BigInt::from(120));
        assert_eq!(binomial(3, 5), BigInt::from(0));
        assert_eq!(binomial(52, 26).to_string(), "495918532948104");
    }
}
