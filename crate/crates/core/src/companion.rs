//! Companion matrices of `x^k - β_1 x^{k-1} - … - β_k`: exact powers, the
//! composition-sum formula for their entries, and the first-column identity.

use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::combinatorics::{BetaPolynomial, Compositions};
use crate::error::{Error, Result};
use crate::exact::RecurrenceSpec;

/// Dense square matrix of exact integers, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    dim: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut data = vec![BigInt::zero(); dim * dim];
        for i in 0..dim {
            data[i * dim + i] = BigInt::one();
        }
        IntMatrix { dim, data }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry at zero-based `(row, col)`.
    pub fn at(&self, row: usize, col: usize) -> &BigInt {
        &self.data[row * self.dim + col]
    }

    /// Entry at one-based `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        self.at(i - 1, j - 1)
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.data.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        (0..self.dim)
            .map(|r| (0..self.dim).map(|c| self.at(r, c) * &v[c]).sum())
            .collect()
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        let d = self.dim;
        assert_eq!(d, rhs.dim);
        let mut data = vec![BigInt::zero(); d * d];
        for r in 0..d {
            for t in 0..d {
                let a = self.at(r, t);
                if a.is_zero() {
                    continue;
                }
                for c in 0..d {
                    data[r * d + c] += a * rhs.at(t, c);
                }
            }
        }
        IntMatrix { dim: d, data }
    }
}

/// `C_k` with first row `β_1 … β_k`, ones on the subdiagonal, zeros elsewhere.
///
/// No power cache: every power is recomputed by repeated squaring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompanionMatrix {
    beta: Vec<BigInt>,
}

impl CompanionMatrix {
    pub fn new(beta: Vec<BigInt>) -> Result<Self> {
        if beta.len() < 2 {
            return Err(Error::InvalidOrder(beta.len()));
        }
        Ok(CompanionMatrix { beta })
    }

    pub fn order(&self) -> usize {
        self.beta.len()
    }

    pub fn beta(&self) -> &[BigInt] {
        &self.beta
    }

    pub fn matrix(&self) -> IntMatrix {
        let k = self.order();
        let mut m = IntMatrix {
            dim: k,
            data: vec![BigInt::zero(); k * k],
        };
        m.data[..k].clone_from_slice(&self.beta);
        for r in 1..k {
            m.data[r * k + r - 1] = BigInt::one();
        }
        m
    }

    /// `C^n` by binary exponentiation.
    pub fn power(&self, n: u64) -> IntMatrix {
        let k = self.order();
        let mut acc = IntMatrix::identity(k);
        let mut base = self.matrix();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// `C^0, C^1, …, C^{n_max}` by successive multiplication.
    pub fn powers_upto(&self, n_max: u64) -> Vec<IntMatrix> {
        let c = self.matrix();
        let mut out = Vec::with_capacity(n_max as usize + 1);
        out.push(IntMatrix::identity(self.order()));
        for n in 1..=n_max as usize {
            let next = &c * &out[n - 1];
            out.push(next);
        }
        out
    }

    /// Characteristic polynomial `p_k(x) = x^k - Σ β_j x^{k-j}`, highest degree first.
    pub fn char_poly(&self) -> Vec<BigInt> {
        let mut p = vec![BigInt::one()];
        p.extend(self.beta.iter().map(|b| -b));
        p
    }
}

/// Integer polynomial in `β` giving entry `(·, j)` of `C^n` at composition weight `w = n - i + j`:
/// `Σ_{weight w} (i_j+…+i_k)/(i_1+…+i_k) · multinomial · β^i`.
///
/// The weight factor is applied in exact rationals; each term is an integer.
/// Only meaningful for `w ≥ 1`; the empty composition at `w = 0` has no defined weight.
pub fn entry_polynomial(k: usize, w: u64, j: usize) -> BetaPolynomial {
    assert!(w >= 1, "weight-zero entries are fixed by convention, not by the sum");
    assert!((1..=k).contains(&j));
    let terms = Compositions::new(w, k)
        .filter_map(|c| {
            let total = c.len();
            let tail: u64 = c.parts[j - 1..].iter().sum();
            if tail == 0 {
                return None;
            }
            let weight = BigRational::new(BigInt::from(tail), BigInt::from(total));
            let coeff = weight * BigRational::from_integer(c.multinomial());
            assert!(coeff.is_integer(), "weighted multinomial must be integral");
            Some((c, coeff.to_integer()))
        })
        .collect();
    BetaPolynomial::new(k, terms)
}

/// Entry `(i, j)` (one-based) of `C^n` from the composition sum.
///
/// `n = i - j` gives 1 and `n - i + j < 0` gives 0; both are handled before
/// any composition is formed.
pub fn entry_multinomial(beta: &[BigInt], n: u64, i: usize, j: usize) -> BigInt {
    let k = beta.len();
    assert!((1..=k).contains(&i) && (1..=k).contains(&j), "indices are one-based within 1..=k");
    let w = n as i64 - i as i64 + j as i64;
    if w < 0 {
        return BigInt::zero();
    }
    if w == 0 {
        return BigInt::one();
    }
    entry_polynomial(k, w as u64, j).eval(beta)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColumnViolation {
    pub n: u64,
    pub i: usize,
    pub j: usize,
    /// `c_{i,j}^{(n)}` from the matrix power.
    #[serde(with = "crate::decimal::bigint")]
    pub entry: BigInt,
    /// `Σ_{s=0}^{min(k-j, n-1)} β_{j+s} c_{i,1}^{(n-s-1)}`.
    #[serde(with = "crate::decimal::bigint")]
    pub column_sum: BigInt,
}

impl ColumnViolation {
    /// The entry sits on the `n = i - j` diagonal and exceeds the sum by exactly one.
    pub fn is_unit_diagonal(&self) -> bool {
        self.n as i64 == self.i as i64 - self.j as i64 && &self.entry - &self.column_sum == BigInt::one()
    }
}

/// Outcome of checking `c_{i,j}^{(n)} = Σ_{s=0}^{min(k-j,n-1)} β_{j+s} c_{i,1}^{(n-s-1)}`
/// for `1 ≤ n ≤ n_max`, `2 ≤ j ≤ k`, `1 ≤ i ≤ k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColumnIdentityReport {
    #[serde(with = "crate::decimal::bigints")]
    pub beta: Vec<BigInt>,
    pub n_max: u64,
    pub checked: usize,
    pub violations: Vec<ColumnViolation>,
}

impl ColumnIdentityReport {
    /// Every entry satisfied the identity as written.
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Every mismatch is accounted for by adding `[n = i - j]` to the right-hand side.
    pub fn passed_with_unit_diagonal(&self) -> bool {
        self.violations.iter().all(ColumnViolation::is_unit_diagonal)
    }
}

pub fn column_identity_check(beta: &[BigInt], n_max: u64) -> Result<ColumnIdentityReport> {
    let c = CompanionMatrix::new(beta.to_vec())?;
    let k = c.order();
    if n_max < 1 {
        return Err(Error::InvalidRange("n_max must be at least 1".into()));
    }
    let powers = c.powers_upto(n_max);
    let mut checked = 0;
    let mut violations = Vec::new();
    for n in 1..=n_max {
        for j in 2..=k {
            let s_max = ((k - j) as u64).min(n - 1);
            for i in 1..=k {
                let sum: BigInt = (0..=s_max)
                    .map(|s| &beta[j + s as usize - 1] * powers[(n - s - 1) as usize].entry(i, 1))
                    .sum();
                let entry = powers[n as usize].entry(i, j);
                checked += 1;
                if *entry != sum {
                    violations.push(ColumnViolation {
                        n,
                        i,
                        j,
                        entry: entry.clone(),
                        column_sum: sum,
                    });
                }
            }
        }
    }
    Ok(ColumnIdentityReport {
        beta: beta.to_vec(),
        n_max,
        checked,
        violations,
    })
}

/// `f(n)` read from the last row of `C^n (f(k-1), …, f(0))ᵀ`.
pub fn iterate_via_matrix(spec: &RecurrenceSpec, n: u64) -> BigInt {
    let c = CompanionMatrix::new(spec.beta().to_vec()).expect("spec order is at least 2");
    let init: Vec<BigInt> = spec.gamma().iter().rev().cloned().collect();
    let v = c.power(n).mul_vec(&init);
    v[spec.order() - 1].clone()
}
