//! Fuss-Catalan series for the roots of `B(x) = x^{k+1} - 2x^k + 1`.
//!
//! Every root is `2 Σ_n b_n x^n` at `x = ω^j y`, `y = 2^{-(k+1)/k}`. Grouping
//! the terms by `n mod k` leaves `k` real sums
//! `S_r = Σ_q b_{qk+r} 2^{-q(k+1)}`, shared by all roots:
//! `ζ_j = 2 Σ_r S_r y^r ω^{jr}`.

use num_bigint::BigInt;

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::hp::{HpComplex, HpReal, Precision};

/// Hard cap on strides per residue class.
pub const MAX_TERMS: usize = 100_000;

/// Extra bits carried by root computations: `|B'(ζ_0)|` grows like `2^k`.
pub fn root_bits(k: usize, precision: Precision) -> usize {
    precision.bits() + 2 * k
}

/// The per-residue sums `S_1, …, S_k`.
#[derive(Clone, Debug)]
pub struct ResidueSums {
    k: usize,
    bits: usize,
    sums: Vec<HpReal>,
    terms: usize,
}

impl ResidueSums {
    pub fn compute(k: usize, precision: Precision) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidOrder(k));
        }
        let bits = root_bits(k, precision);
        let tol = HpReal::one(bits) / HpReal::from_i64(2, bits).powi(bits as u64);
        let limit = limit_ratio(k, bits);
        let one = HpReal::one(bits);
        let mut sums = Vec::with_capacity(k);
        let mut terms = 0;
        for r in 1..=k {
            let mut t = HpReal::from_ratio(&crate::combinatorics::b_n(r as u64, k as u64), bits);
            let mut s = t.clone();
            let mut q = 0usize;
            loop {
                let n = (q * k + r) as u64;
                let rho = stride_ratio(n, k as u64, bits);
                let next = &t * &rho;
                s = &s + &next;
                q += 1;
                let rho_star = if rho > limit { rho } else { limit.clone() };
                let tail = &(&next * &rho_star) / &(&one - &rho_star);
                if tail < tol {
                    break;
                }
                if q >= MAX_TERMS {
                    return Err(Error::ConvergenceBudgetExceeded { terms: q * k });
                }
                t = next;
            }
            terms += q + 1;
            sums.push(s);
        }
        Ok(ResidueSums { k, bits, sums, terms })
    }

    pub fn order(&self) -> usize {
        self.k
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    /// `S_r` for `1 ≤ r ≤ k`.
    pub fn sum(&self, r: usize) -> &HpReal {
        &self.sums[r - 1]
    }

    /// Total number of series terms summed.
    pub fn terms(&self) -> usize {
        self.terms
    }

    /// `ζ_0 = 2 - 2k · 2^{-(k+1)} · S_k`.
    pub fn principal(&self) -> HpReal {
        let k = self.k as i64;
        let scale = HpReal::one(self.bits) / HpReal::from_i64(2, self.bits).powi(self.k as u64 + 1);
        let two = HpReal::from_i64(2, self.bits);
        &two - &(&scale * self.sum(self.k)).mul_i64(2 * k)
    }

    /// `ζ_j` for any `j`; `j = 0` gives the extraneous root `1` of `B`.
    pub fn root(&self, j: usize) -> HpComplex {
        let k = self.k;
        let bits = self.bits;
        let y = HpReal::pow_ratio(2, -(k as i64 + 1), k as u64, bits);
        let mut acc = HpComplex::zero(bits);
        let mut yr = HpReal::one(bits);
        for r in 1..=k {
            yr = &yr * &y;
            let w = HpComplex::unit_root((j * r) as i64, k as u64, bits);
            acc = &acc + &w.scale(&(&yr * self.sum(r)));
        }
        acc.scale(&HpReal::from_i64(2, bits))
    }
}

/// `t_{q+1}/t_q = b_{n+k}/b_n · 2^{-(k+1)}`, where
/// `b_{n+k}/b_n = Π_{t=0}^{k} (n(k+1) + (t-1)k) / (k^k · n · Π_{t=1}^{k} (n+t))`.
fn stride_ratio(n: u64, k: u64, bits: usize) -> HpReal {
    let num: BigInt = (0..=k).map(|t| BigInt::from(n * (k + 1) + t * k) - BigInt::from(k)).product();
    let den: BigInt = BigInt::from(k).pow(k as u32)
        * BigInt::from(n)
        * (1..=k).map(|t| BigInt::from(n + t)).product::<BigInt>()
        * (BigInt::from(1) << (k + 1));
    &HpReal::from_bigint(&num, bits) / &HpReal::from_bigint(&den, bits)
}

/// Limit of [`stride_ratio`] as `n → ∞`: `((k+1)/2)^{k+1} / k^k`.
fn limit_ratio(k: usize, bits: usize) -> HpReal {
    let kb = BigInt::from(k);
    let num = (&kb + 1u32).pow(k as u32 + 1);
    let den = kb.pow(k as u32) * (BigInt::from(1) << (k + 1));
    &HpReal::from_bigint(&num, bits) / &HpReal::from_bigint(&den, bits)
}

/// `ζ_0` from the series.
pub fn principal_root(k: usize, precision: Precision) -> Result<HpReal> {
    Ok(ResidueSums::compute(k, precision)?.principal())
}

/// `ζ_j` for `1 ≤ j ≤ k-1` from the series.
pub fn secondary_root(k: usize, j: usize, precision: Precision) -> Result<HpComplex> {
    if j == 0 || j >= k {
        return Err(Error::IndexOutOfRange {
            what: "secondary root",
            index: j as i64,
            lo: 1,
            hi: k as i64 - 1,
        });
    }
    Ok(ResidueSums::compute(k, precision)?.root(j))
}

/// `ε_k = Σ_{i≥1} C((k+1)i-2, i-1) / (i · 2^{(k+1)i})`, so that `ζ_0 = 2(1 - ε_k)`.
pub fn wolfram_epsilon(k: usize, precision: Precision) -> Result<HpReal> {
    if k < 2 {
        return Err(Error::InvalidOrder(k));
    }
    let bits = root_bits(k, precision);
    let tol = HpReal::one(bits) / HpReal::from_i64(2, bits).powi(bits as u64);
    let limit = limit_ratio(k, bits);
    let one = HpReal::one(bits);
    let k1 = k as u64 + 1;
    let mut sum = HpReal::zero(bits);
    for i in 1..=MAX_TERMS as u64 {
        let num = binomial(k1 * i - 2, i - 1);
        let den = BigInt::from(i) << (k1 * i) as usize;
        let t = &HpReal::from_bigint(&num, bits) / &HpReal::from_bigint(&den, bits);
        sum = &sum + &t;
        // Term i is k · b_{ik} · 2^{-(k+1)i}, so consecutive terms follow the stride ratio.
        let rho = stride_ratio(i * k as u64, k as u64, bits);
        let rho_star = if rho > limit { rho } else { limit.clone() };
        if &(&t * &rho_star) / &(&one - &rho_star) < tol {
            return Ok(sum);
        }
    }
    Err(Error::ConvergenceBudgetExceeded { terms: MAX_TERMS })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Precision {
        Precision::default()
    }

    fn close(a: &HpReal, b: f64, tol: f64) -> bool {
        (a.to_f64() - b).abs() < tol
    }

    #[test]
    fn golden_ratio() {
        let z = principal_root(2, p()).unwrap();
        let phi = (&HpReal::one(400) + &HpReal::from_i64(5, 400).sqrt()).div_i64(2);
        assert!((&z - &phi).abs() < HpReal::pow10(-62, 400));
        let s = secondary_root(2, 1, p()).unwrap();
        assert!((&s.re - &(&HpReal::one(400) - &phi)).abs() < HpReal::pow10(-62, 400));
        assert!(s.im.is_zero());
    }

    #[test]
    fn tribonacci_roots() {
        let z = principal_root(3, p()).unwrap();
        assert!(close(&z, 1.839_286_755_214_161, 1e-14));
        let s = secondary_root(3, 1, p()).unwrap();
        assert!(close(&s.re, -0.419_643_377_607_080_7, 1e-14));
        assert!(close(&s.im, 0.606_290_729_207_199, 1e-14));
        let c = secondary_root(3, 2, p()).unwrap();
        assert!((&c - &s.conj()).abs() < HpReal::pow10(-62, c.bits()));
    }

    #[test]
    fn extraneous_root_from_zero_index() {
        for k in 2..8 {
            let sums = ResidueSums::compute(k, p()).unwrap();
            let one = sums.root(0);
            assert!((&one.re - &HpReal::one(sums.bits())).abs() < HpReal::pow10(-60, sums.bits()));
        }
    }

    #[test]
    fn first_term_estimate() {
        for k in 2..20 {
            let z = principal_root(k, Precision::new(20).unwrap()).unwrap().to_f64();
            let first = 2.0 - 2f64.powi(-(k as i32));
            assert!((z - first).abs() < 4.0 * 2f64.powi(-2 * k as i32) * k as f64, "k={k}");
        }
    }

    #[test]
    fn wolfram_matches_principal() {
        for k in 2..=12 {
            let eps = wolfram_epsilon(k, p()).unwrap();
            let z = principal_root(k, p()).unwrap();
            let bits = z.bits();
            let two = HpReal::from_i64(2, bits);
            let diff = (&(&two * &(&HpReal::one(bits) - &eps)) - &z).abs();
            assert!(diff < HpReal::pow10(-60, bits), "k={k}");
        }
        assert!(close(&wolfram_epsilon(2, p()).unwrap(), 0.190_983_005_625_052_6, 1e-15));
        assert!(close(&wolfram_epsilon(3, p()).unwrap(), 0.080_356_622_392_919_5, 1e-15));
    }

    #[test]
    fn bad_indices() {
        assert!(matches!(secondary_root(3, 0, p()), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(secondary_root(3, 3, p()), Err(Error::IndexOutOfRange { .. })));
        assert!(matches!(principal_root(1, p()), Err(Error::InvalidOrder(1))));
    }
}
