use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::compositions::{Composition, Compositions};
use super::fuss_catalan::binomial;

/// Integer polynomial in `β_1, …, β_k` with one monomial
/// `β_1^{i_1} ⋯ β_k^{i_k}` per composition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BetaPolynomial {
    k: usize,
    terms: Vec<(Composition, BigInt)>,
}

impl BetaPolynomial {
    pub fn new(k: usize, terms: Vec<(Composition, BigInt)>) -> Self {
        BetaPolynomial { k, terms }
    }

    pub fn order(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> &[(Composition, BigInt)] {
        &self.terms
    }

    /// Evaluates at `beta`; monomials touching a zero coefficient are skipped.
    pub fn eval(&self, beta: &[BigInt]) -> BigInt {
        assert_eq!(beta.len(), self.k, "coefficient count must match the order");
        let max_exp = self
            .terms
            .iter()
            .flat_map(|(c, _)| c.parts.iter().copied())
            .max()
            .unwrap_or(0) as usize;
        // powers[j][e] = β_j^e
        let powers: Vec<Vec<BigInt>> = beta
            .iter()
            .map(|b| {
                let mut row = Vec::with_capacity(max_exp + 1);
                let mut p = BigInt::one();
                for _ in 0..=max_exp {
                    row.push(p.clone());
                    p *= b;
                }
                row
            })
            .collect();
        let mut sum = BigInt::zero();
        'terms: for (comp, coeff) in &self.terms {
            let mut term = coeff.clone();
            for (j, &e) in comp.parts.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if beta[j].is_zero() {
                    continue 'terms;
                }
                term *= &powers[j][e as usize];
            }
            sum += term;
        }
        sum
    }
}

/// The Dickson polynomial of the second kind in `k` variables at weight `n`:
/// `Σ_{i_1+2i_2+…+ki_k=n} (i_1+…+i_k)!/(i_1!⋯i_k!) β_1^{i_1}⋯β_k^{i_k}`.
pub fn dickson_second_kind(n: u64, k: usize) -> BetaPolynomial {
    let terms = Compositions::new(n, k)
        .map(|c| {
            let m = c.multinomial();
            (c, m)
        })
        .collect();
    BetaPolynomial::new(k, terms)
}

/// `f̂(n+k-1)` for the recurrence with coefficients `beta` and initial tuple `(0, …, 0, 1)`.
pub fn multinomial_sum(n: u64, beta: &[BigInt]) -> BigInt {
    assert!(beta.len() >= 2, "order must be at least 2");
    dickson_second_kind(n, beta.len()).eval(beta)
}

/// `F̂_k(n+k-1) = Σ (i_1+…+i_k)!/(i_1!⋯i_k!)` over compositions of weight `n`.
pub fn kfib_multinomial(n: u64, k: usize) -> BigInt {
    Compositions::new(n, k).map(|c| c.multinomial()).sum()
}

/// `W^N_2(n+2) = Σ_{i=0}^{⌊n/3⌋} C(n-2i, i)`; equals the Narayana number `N(n)`.
pub fn narayana_sum(n: u64) -> BigInt {
    (0..=n / 3).map(|i| binomial(n - 2 * i, i)).sum()
}
