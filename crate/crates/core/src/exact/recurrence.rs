use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// One constant-coefficient recurrence `f(n) = Σ_{j=1}^{k} β_j f(n-j)`
/// together with its initial values `f(0), …, f(k-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceSpec {
    beta: Vec<BigInt>,
    gamma: Vec<BigInt>,
}

impl RecurrenceSpec {
    pub fn new(beta: Vec<BigInt>, gamma: Vec<BigInt>) -> Result<Self> {
        let k = beta.len();
        if k < 2 {
            return Err(Error::InvalidOrder(k));
        }
        if gamma.len() != k {
            return Err(Error::InvalidSpec(format!(
                "{} coefficients but {} initial values",
                k,
                gamma.len()
            )));
        }
        if beta[k - 1].is_zero() {
            return Err(Error::InvalidSpec("trailing coefficient beta_k must be nonzero".into()));
        }
        Ok(RecurrenceSpec { beta, gamma })
    }

    pub fn from_i64(beta: &[i64], gamma: &[i64]) -> Result<Self> {
        Self::new(
            beta.iter().map(|&b| BigInt::from(b)).collect(),
            gamma.iter().map(|&g| BigInt::from(g)).collect(),
        )
    }

    pub fn order(&self) -> usize {
        self.beta.len()
    }

    /// `β_1, …, β_k`.
    pub fn beta(&self) -> &[BigInt] {
        &self.beta
    }

    /// Initial values at `n = 0, …, k-1`.
    pub fn gamma(&self) -> &[BigInt] {
        &self.gamma
    }

    /// Same coefficients, new initial values.
    pub fn with_gamma(&self, gamma: Vec<BigInt>) -> Result<Self> {
        Self::new(self.beta.clone(), gamma)
    }

    /// The recurrence with initial tuple `δ_{i,n}`.
    pub fn basis_spec(&self, i: usize) -> Result<Self> {
        let k = self.order();
        if i >= k {
            return Err(Error::IndexOutOfRange {
                what: "basis",
                index: i as i64,
                lo: 0,
                hi: k as i64 - 1,
            });
        }
        let gamma = (0..k).map(|n| if n == i { BigInt::one() } else { BigInt::zero() }).collect();
        self.with_gamma(gamma)
    }

    pub fn has_unit_coefficients(&self) -> bool {
        self.beta.iter().all(|b| b.is_one())
    }

    fn trailing_is_unit(&self) -> bool {
        self.beta[self.order() - 1].abs().is_one()
    }

    fn forward_step(&self, prev: &[BigInt]) -> BigInt {
        // prev holds f(n-k), …, f(n-1).
        let k = self.order();
        (1..=k).map(|j| &self.beta[j - 1] * &prev[k - j]).sum()
    }
}

/// Contiguous run of exact sequence values starting at index `start`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceWindow {
    pub start: i64,
    #[serde(with = "crate::decimal::bigints")]
    pub values: Vec<BigInt>,
}

impl SequenceWindow {
    /// Last covered index.
    pub fn end(&self) -> i64 {
        self.start + self.values.len() as i64 - 1
    }

    pub fn get(&self, n: i64) -> Option<&BigInt> {
        if n < self.start {
            return None;
        }
        self.values.get((n - self.start) as usize)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, &BigInt)> + '_ {
        self.values.iter().enumerate().map(move |(i, v)| (self.start + i as i64, v))
    }

    /// Sub-window `from..=to`, if covered.
    pub fn slice(&self, from: i64, to: i64) -> Option<SequenceWindow> {
        if from < self.start || to > self.end() || from > to {
            return None;
        }
        let a = (from - self.start) as usize;
        let b = (to - self.start) as usize;
        Some(SequenceWindow {
            start: from,
            values: self.values[a..=b].to_vec(),
        })
    }

    /// True when every value with `k` predecessors inside the window obeys the recurrence.
    pub fn satisfies(&self, beta: &[BigInt]) -> bool {
        let k = beta.len();
        self.values.windows(k + 1).all(|w| {
            let rhs: BigInt = (1..=k).map(|j| &beta[j - 1] * &w[k - j]).sum();
            rhs == w[k]
        })
    }
}

/// Values `f(0), …, f(n_max)`.
pub fn iterate_forward(spec: &RecurrenceSpec, n_max: i64) -> Result<SequenceWindow> {
    let k = spec.order() as i64;
    if n_max < k - 1 {
        return Err(Error::InvalidRange(format!("n_max = {n_max} is below k-1 = {}", k - 1)));
    }
    let mut values = spec.gamma.clone();
    values.reserve((n_max - k + 1) as usize);
    for _ in k..=n_max {
        let next = spec.forward_step(&values[values.len() - k as usize..]);
        values.push(next);
    }
    Ok(SequenceWindow { start: 0, values })
}

/// Values `f(n_min), …, f(k-1)`, extending the initial tuple to negative indices.
pub fn iterate_backward(spec: &RecurrenceSpec, n_min: i64) -> Result<SequenceWindow> {
    let k = spec.order();
    if !spec.trailing_is_unit() {
        return Err(Error::NonUnitTrailingCoefficient(spec.beta[k - 1].clone()));
    }
    if n_min > k as i64 - 1 {
        return Err(Error::InvalidRange(format!("n_min = {n_min} is above k-1 = {}", k - 1)));
    }
    let beta_k = &spec.beta[k - 1];
    // Work newest-first so each step pushes one older value.
    let mut rev: Vec<BigInt> = spec.gamma.iter().rev().cloned().collect();
    let steps = (0 - n_min).max(0) as usize;
    for _ in 0..steps {
        let len = rev.len();
        // rev[len-1] = f(m), the oldest known; we want f(m-1), using f(m+k-1) = Σ β_j f(m+k-1-j).
        let top = &rev[len - k];
        let partial: BigInt = (1..k).map(|j| &spec.beta[j - 1] * &rev[len - k + j]).sum();
        // β_k = ±1, so dividing equals multiplying.
        rev.push((top - partial) * beta_k);
    }
    rev.reverse();
    let window = SequenceWindow { start: -(steps as i64), values: rev };
    let from = n_min.max(window.start);
    Ok(window.slice(from, k as i64 - 1).expect("window covers requested range"))
}

/// `f(from), …, f(to)` for any range; negative indices need `|β_k| = 1`.
pub fn window(spec: &RecurrenceSpec, from: i64, to: i64) -> Result<SequenceWindow> {
    if from > to {
        return Err(Error::InvalidRange(format!("from = {from} exceeds to = {to}")));
    }
    let k = spec.order() as i64;
    let hi = to.max(k - 1);
    let fwd = iterate_forward(spec, hi)?;
    let full = if from < 0 {
        let back = iterate_backward(spec, from)?;
        let mut values = back.values;
        values.extend(fwd.values.into_iter().skip(k as usize));
        SequenceWindow { start: from, values }
    } else {
        fwd
    };
    Ok(full.slice(from, to).expect("window covers requested range"))
}

/// Same as [`iterate_backward`] but in exact rationals, so any nonzero `β_k` works.
fn backward_rational(spec: &RecurrenceSpec, n_min: i64) -> Vec<BigRational> {
    let k = spec.order();
    let beta: Vec<BigRational> = spec.beta.iter().map(|b| BigRational::from_integer(b.clone())).collect();
    let mut rev: Vec<BigRational> = spec.gamma.iter().rev().map(|g| BigRational::from_integer(g.clone())).collect();
    for _ in 0..(0 - n_min).max(0) {
        let len = rev.len();
        let top = &rev[len - k];
        let partial: BigRational = (1..k).map(|j| &beta[j - 1] * &rev[len - k + j]).sum();
        rev.push((top - partial) / &beta[k - 1]);
    }
    rev.reverse();
    rev
}

/// Basis sequence `W_i`, the solution with initial tuple `δ_{i,n}`, over `0..=n_max`.
pub fn basis_sequence(spec: &RecurrenceSpec, i: usize, n_max: i64) -> Result<SequenceWindow> {
    iterate_forward(&spec.basis_spec(i)?, n_max)
}

/// `W_i(n)` for `0 ≤ n ≤ n_max` rebuilt from the last basis sequence alone:
/// `W_i(n) = Σ_{s=0}^{i} β_{k+s-i} W_{k-1}(n-s-1)`.
///
/// The small-`n` terms reach negative indices of `W_{k-1}`; those are
/// extended backwards in exact rationals, so no restriction on `β_k`.
pub fn basis_from_last(spec: &RecurrenceSpec, i: usize, n_max: i64) -> Result<SequenceWindow> {
    let k = spec.order();
    if i >= k {
        return Err(Error::IndexOutOfRange {
            what: "basis",
            index: i as i64,
            lo: 0,
            hi: k as i64 - 1,
        });
    }
    let last_spec = spec.basis_spec(k - 1)?;
    if i == k - 1 {
        return iterate_forward(&last_spec, n_max.max(k as i64 - 1))
            .map(|w| w.slice(0, n_max).expect("covered"));
    }
    let lo = -(i as i64) - 1;
    let mut last: Vec<BigRational> = backward_rational(&last_spec, lo);
    let fwd = iterate_forward(&last_spec, n_max.max(k as i64 - 1))?;
    last.extend(fwd.values.into_iter().skip(k).map(BigRational::from_integer));
    let at = |n: i64| &last[(n - lo) as usize];
    let mut values = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let v: BigRational = (0..=i)
            .map(|s| BigRational::from_integer(spec.beta[k + s - i - 1].clone()) * at(n - s as i64 - 1))
            .sum();
        values.push(into_integer(v)?);
    }
    Ok(SequenceWindow { start: 0, values })
}

/// Precomputed `δ_0 = γ_{k-1}`, `δ_i = Σ_{j=2}^{k-i+1} β_{j+i-1} γ_{k-j}`.
pub fn initial_deltas(spec: &RecurrenceSpec) -> Vec<BigInt> {
    let k = spec.order();
    let b = |j: usize| &spec.beta[j - 1];
    let g = |i: usize| &spec.gamma[i];
    let mut deltas = vec![g(k - 1).clone()];
    for i in 1..k {
        deltas.push((2..=k - i + 1).map(|j| b(j + i - 1) * g(k - j)).sum());
    }
    deltas
}

/// The general solution assembled from the last basis sequence:
/// `W(n) = Σ_i δ_i W_{k-1}(n-i)` over `0..=n_max`.
pub fn combine_initials(spec: &RecurrenceSpec, n_max: i64) -> Result<SequenceWindow> {
    let k = spec.order();
    if n_max < 0 {
        return Err(Error::InvalidRange(format!("n_max = {n_max} is negative")));
    }
    let deltas = initial_deltas(spec);
    let last_spec = spec.basis_spec(k - 1)?;
    let lo = -(k as i64 - 1);
    let mut last = backward_rational(&last_spec, lo);
    let fwd = iterate_forward(&last_spec, n_max.max(k as i64 - 1))?;
    last.extend(fwd.values.into_iter().skip(k).map(BigRational::from_integer));
    let mut values = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        let v: BigRational = deltas
            .iter()
            .enumerate()
            .map(|(i, d)| BigRational::from_integer(d.clone()) * &last[(n - i as i64 - lo) as usize])
            .sum();
        values.push(into_integer(v)?);
    }
    Ok(SequenceWindow { start: 0, values })
}

fn into_integer(v: BigRational) -> Result<BigInt> {
    if v.is_integer() {
        Ok(v.to_integer())
    } else {
        Err(Error::InvalidSpec(format!("non-integer value {v} in an integer sequence")))
    }
}

/// `F(n)/2^n` for `n = 0..=n_max`.
pub fn halving_scaled(spec: &RecurrenceSpec, n_max: i64) -> Result<Vec<BigRational>> {
    let w = iterate_forward(spec, n_max)?;
    Ok(w
        .iter()
        .map(|(n, v)| BigRational::new(v.clone(), BigInt::one() << n as usize))
        .collect())
}

/// Checks `f(n) = Σ_j q p^{j-1} f(n-j)` at `p = q = 1/2` for the scaled values.
pub fn halving_identity_holds(k: usize, scaled: &[BigRational]) -> bool {
    let weights: Vec<BigRational> = (1..=k)
        .map(|j| BigRational::new(BigInt::one(), BigInt::one() << j))
        .collect();
    scaled.windows(k + 1).all(|w| {
        let rhs: BigRational = (1..=k).map(|j| &weights[j - 1] * &w[k - j]).sum();
        rhs == w[k]
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn kfib(k: usize) -> RecurrenceSpec {
        let mut gamma = vec![0; k];
        gamma[k - 1] = 1;
        RecurrenceSpec::from_i64(&vec![1; k], &gamma).unwrap()
    }

    #[test]
    fn spec_validation() {
        assert_eq!(RecurrenceSpec::from_i64(&[1], &[0]), Err(Error::InvalidOrder(1)));
        assert!(RecurrenceSpec::from_i64(&[1, 0], &[0, 1]).is_err());
        assert!(RecurrenceSpec::from_i64(&[1, 1], &[0, 1, 2]).is_err());
    }

    #[test]
    fn tribonacci_forward() {
        let w = iterate_forward(&kfib(3), 10).unwrap();
        assert_eq!(w.values, ints(&[0, 0, 1, 1, 2, 4, 7, 13, 24, 44, 81]));
        assert!(w.satisfies(kfib(3).beta()));
    }

    #[test]
    fn forward_rejects_short_range() {
        assert!(iterate_forward(&kfib(3), 1).is_err());
    }

    #[test]
    fn fibonacci_backward() {
        let w = iterate_backward(&kfib(2), -3).unwrap();
        assert_eq!(w.start, -3);
        assert_eq!(w.values, ints(&[2, -1, 1, 0, 1]));
    }

    #[test]
    fn tribonacci_backward_one_step() {
        let w = iterate_backward(&kfib(3), -1).unwrap();
        assert_eq!(w.get(-1), Some(&BigInt::from(1)));
    }

    #[test]
    fn backward_needs_unit_trailing_coefficient() {
        let spec = RecurrenceSpec::from_i64(&[1, 2], &[0, 1]).unwrap();
        assert_eq!(
            iterate_backward(&spec, -2),
            Err(Error::NonUnitTrailingCoefficient(BigInt::from(2)))
        );
        let neg = RecurrenceSpec::from_i64(&[3, -1], &[0, 1]).unwrap();
        let w = iterate_backward(&neg, -4).unwrap();
        let fwd = iterate_forward(&neg.with_gamma(w.values[..2].to_vec()).unwrap(), 5).unwrap();
        assert_eq!(fwd.values, w.values);
    }

    #[test]
    fn mixed_window() {
        let w = window(&kfib(4), -5, 5).unwrap();
        assert_eq!(w.start, -5);
        assert_eq!(w.values.len(), 11);
        assert!(w.satisfies(kfib(4).beta()));
        assert_eq!(w.get(5), Some(&BigInt::from(2)));
    }

    #[test]
    fn basis_examples() {
        let w = basis_sequence(&kfib(3), 2, 5).unwrap();
        assert_eq!(w.values, ints(&[0, 0, 1, 1, 2, 4]));
        let w = basis_sequence(&kfib(3), 0, 6).unwrap();
        assert_eq!(w.values, ints(&[1, 0, 0, 1, 1, 2, 4]));
        let padovan = RecurrenceSpec::from_i64(&[0, 1, 1], &[1, 1, 1]).unwrap();
        let w = basis_sequence(&padovan, 1, 6).unwrap();
        assert_eq!(w.values, ints(&[0, 1, 0, 1, 1, 1, 2]));
        assert!(basis_sequence(&padovan, 3, 6).is_err());
    }

    #[test]
    fn basis_from_last_matches_direct_iteration() {
        let spec = RecurrenceSpec::from_i64(&[2, -1, 3], &[0, 0, 1]).unwrap();
        for i in 0..3 {
            assert_eq!(
                basis_from_last(&spec, i, 20).unwrap(),
                basis_sequence(&spec, i, 20).unwrap(),
                "i = {i}"
            );
        }
    }

    #[test]
    fn perrin_deltas_and_combination() {
        let perrin = RecurrenceSpec::from_i64(&[0, 1, 1], &[3, 0, 2]).unwrap();
        assert_eq!(initial_deltas(&perrin), ints(&[2, 3, 0]));
        let w = combine_initials(&perrin, 11).unwrap();
        assert_eq!(w.values, ints(&[3, 0, 2, 3, 2, 5, 5, 7, 10, 12, 17, 22]));
    }

    #[test]
    fn combination_identity_case() {
        let spec = RecurrenceSpec::from_i64(&[1, -2, 1, 1], &[0, 0, 0, 1]).unwrap();
        assert_eq!(initial_deltas(&spec), ints(&[1, 0, 0, 0]));
        assert_eq!(combine_initials(&spec, 15).unwrap(), basis_sequence(&spec, 3, 15).unwrap());
    }

    #[test]
    fn shifted_fibonacci_from_geometric_initials() {
        let spec = RecurrenceSpec::from_i64(&[1, 1], &[1, 2]).unwrap();
        assert_eq!(combine_initials(&spec, 5).unwrap().values, ints(&[1, 2, 3, 5, 8, 13]));
    }

    #[test]
    fn combination_with_non_unit_trailing_coefficient() {
        let spec = RecurrenceSpec::from_i64(&[1, 3, -2], &[4, -1, 7]).unwrap();
        assert_eq!(combine_initials(&spec, 25).unwrap(), iterate_forward(&spec, 25).unwrap());
    }

    #[test]
    fn halving_scaling() {
        for k in 2..=6 {
            let scaled = halving_scaled(&kfib(k), 30).unwrap();
            assert!(halving_identity_holds(k, &scaled));
        }
        let mut bad = halving_scaled(&kfib(3), 10).unwrap();
        bad[7] += BigRational::new(BigInt::one(), BigInt::from(1024));
        assert!(!halving_identity_holds(3, &bad));
    }
}
