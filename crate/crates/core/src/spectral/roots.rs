use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::series::{root_bits, ResidueSums};
use crate::error::{Error, Result};
use crate::hp::{HpComplex, HpReal, Precision};

/// When to run Newton steps on `B(x)` after the series.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PolishMode {
    /// Polish for `k > 20` only.
    #[default]
    Auto,
    Always,
    Never,
}

impl PolishMode {
    pub fn applies(self, k: usize) -> bool {
        match self {
            PolishMode::Auto => k > 20,
            PolishMode::Always => true,
            PolishMode::Never => false,
        }
    }
}

impl FromStr for PolishMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "auto" => Ok(PolishMode::Auto),
            "always" | "on" => Ok(PolishMode::Always),
            "never" | "off" => Ok(PolishMode::Never),
            _ => Err(Error::UnknownName {
                kind: "polish mode",
                name: s.to_string(),
            }),
        }
    }
}

impl fmt::Display for PolishMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PolishMode::Auto => "auto",
            PolishMode::Always => "always",
            PolishMode::Never => "never",
        })
    }
}

/// `B(z) = z^k (z - 2) + 1` for order `k`.
pub fn eval_b(k: usize, z: &HpComplex) -> HpComplex {
    let bits = z.bits();
    let zk = z.powi(k as i64);
    let two = HpReal::from_i64(2, bits);
    (&zk * &z.add_real(&-two)).add_real(&HpReal::one(bits))
}

/// `B'(z) = z^{k-1} ((k+1) z - 2k)`.
pub fn eval_b_prime(k: usize, z: &HpComplex) -> HpComplex {
    let bits = z.bits();
    let lin = z.scale(&HpReal::from_i64(k as i64 + 1, bits)).add_real(&HpReal::from_i64(-2 * k as i64, bits));
    &z.powi(k as i64 - 1) * &lin
}

/// `A(z) = z^k - z^{k-1} - … - 1` by Horner's rule.
pub fn eval_a(k: usize, z: &HpComplex) -> HpComplex {
    let bits = z.bits();
    let minus_one = HpReal::from_i64(-1, bits);
    let mut acc = HpComplex::one(bits);
    for _ in 0..k {
        acc = (&acc * z).add_real(&minus_one);
    }
    acc
}

/// The `k` roots of `A(x)`, indexed so that `ζ_0` is principal and
/// `arg ζ_j ≈ 2πj/k` for the rest.
#[derive(Clone, Debug)]
pub struct RootSet {
    k: usize,
    precision: Precision,
    roots: Vec<HpComplex>,
    residuals: Vec<HpReal>,
    polished: bool,
}

impl RootSet {
    /// Wraps an externally supplied root list, e.g. a perturbed copy.
    pub fn with_roots(k: usize, precision: Precision, roots: Vec<HpComplex>) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidOrder(k));
        }
        if roots.len() != k {
            return Err(Error::InvalidSpec(format!("expected {k} roots, got {}", roots.len())));
        }
        let residuals = roots.iter().map(|z| eval_b(k, z).abs()).collect();
        Ok(RootSet {
            k,
            precision,
            roots,
            residuals,
            polished: false,
        })
    }

    pub fn order(&self) -> usize {
        self.k
    }

    pub fn precision(&self) -> Precision {
        self.precision
    }

    pub fn bits(&self) -> usize {
        self.roots[0].bits()
    }

    pub fn roots(&self) -> &[HpComplex] {
        &self.roots
    }

    pub fn root(&self, j: usize) -> &HpComplex {
        &self.roots[j]
    }

    pub fn principal(&self) -> &HpReal {
        &self.roots[0].re
    }

    /// `|B(ζ_j)|`.
    pub fn residuals(&self) -> &[HpReal] {
        &self.residuals
    }

    pub fn is_polished(&self) -> bool {
        self.polished
    }

    /// Conjugate partner: `0 ↦ 0`, `j ↦ k - j`.
    pub fn pair(&self, j: usize) -> usize {
        if j == 0 {
            0
        } else {
            self.k - j
        }
    }

    /// Index of the negative real root, present for even `k` only.
    pub fn negative_real_index(&self) -> Option<usize> {
        self.k.is_multiple_of(2).then_some(self.k / 2)
    }

    /// Up to three Newton steps on `B` per root, each kept only if it lowers the residual.
    pub fn polish(mut self) -> Self {
        let k = self.k;
        for j in 0..=k / 2 {
            let mut z = self.roots[j].clone();
            let mut res = self.residuals[j].clone();
            for _ in 0..3 {
                let step = &eval_b(k, &z) / &eval_b_prime(k, &z);
                let cand = &z - &step;
                let cand_res = eval_b(k, &cand).abs();
                if cand_res < res {
                    z = cand;
                    res = cand_res;
                } else {
                    break;
                }
            }
            if j == 0 || 2 * j == k {
                z.im = HpReal::zero(z.bits());
                res = eval_b(k, &z).abs();
            }
            if j != 0 && 2 * j != k {
                let partner = z.conj();
                self.residuals[k - j] = eval_b(k, &partner).abs();
                self.roots[k - j] = partner;
            }
            self.roots[j] = z;
            self.residuals[j] = res;
        }
        self.polished = true;
        self
    }

    /// Numerical status of every structural property of the root set.
    pub fn invariants(&self) -> RootInvariants {
        let k = self.k;
        let bits = self.bits();
        let d = self.precision.digits();
        let real_tol = self.precision.tolerance(d / 2);
        let cmp_tol = self.precision.tolerance(8);
        let one = HpReal::one(bits);
        let two = HpReal::from_i64(2, bits);
        let z0 = &self.roots[0];

        let lo = &two - &(&one / &two.powi(k as u64 - 1));
        let hi = &two - &(&one / &two.powi(k as u64));
        let principal_bounds = z0.is_real_within(&real_tol) && z0.re > lo && z0.re < hi;

        let mags: Vec<HpReal> = self.roots.iter().map(HpComplex::abs).collect();
        let inner = HpReal::pow_ratio(3, -1, k as u64, bits);
        let secondary_bound_violations = (1..k).filter(|&j| !(mags[j] > inner && mags[j] < one)).collect();
        let principal_dominates = (1..k).all(|j| mags[j] < mags[0]) && z0.re.is_positive();

        let conjugate_pairs = (1..k).all(|j| (&self.roots[self.pair(j)] - &self.roots[j].conj()).abs() < cmp_tol);

        let min_abs_re = self
            .roots
            .iter()
            .map(|z| z.re.abs())
            .fold(None::<HpReal>, |m, x| match m {
                Some(m) if m < x => Some(m),
                _ => Some(x),
            })
            .expect("at least two roots");

        let real: Vec<usize> = (1..k).filter(|&j| self.roots[j].is_real_within(&real_tol)).collect();
        let negative_reals: Vec<usize> = real.iter().copied().filter(|&j| self.roots[j].re.is_negative()).collect();
        let positive_secondary_reals = real.iter().copied().filter(|&j| !self.roots[j].re.is_negative()).collect();

        let sign = |a: &HpReal, b: &HpReal| -> i8 {
            let diff = b - a;
            if diff.abs() < cmp_tol {
                0
            } else if diff.is_positive() {
                1
            } else {
                -1
            }
        };
        let mut ordering_violations = Vec::new();
        for a in 0..k {
            for b in a + 1..k {
                if sign(&self.roots[a].re, &self.roots[b].re) != sign(&mags[a], &mags[b]) {
                    ordering_violations.push((a, b));
                }
            }
        }

        let even_negative_is_smallest = if k.is_multiple_of(2) {
            Some(match negative_reals.as_slice() {
                [m] => (0..k).filter(|&j| j != *m).all(|j| mags[*m] < mags[j]),
                _ => false,
            })
        } else {
            None
        };

        let max_of = |xs: Vec<HpReal>| xs.into_iter().fold(HpReal::zero(bits), |m, x| if x > m { x } else { m });
        let max_residual_b = max_of(self.residuals.clone());
        let max_residual_a = max_of(self.roots.iter().map(|z| eval_a(k, z).abs()).collect());

        let sum = self.roots.iter().fold(HpComplex::zero(bits), |acc, z| &acc + z);
        let vieta_sum_error = (&sum - &HpComplex::one(bits)).abs();
        let prod = self.roots.iter().fold(HpComplex::one(bits), |acc, z| &acc * z);
        let expected = if k % 2 == 1 { 1 } else { -1 };
        let vieta_product_error = (&prod - &HpComplex::from_i64(expected, bits)).abs();

        RootInvariants {
            principal_bounds,
            secondary_bound_violations,
            principal_dominates,
            conjugate_pairs,
            min_abs_re,
            negative_reals,
            positive_secondary_reals,
            ordering_violations,
            even_negative_is_smallest,
            max_residual_b,
            max_residual_a,
            vieta_sum_error,
            vieta_product_error,
        }
    }
}

/// Output of [`RootSet::invariants`]. Tolerances are applied by [`RootInvariants::failures`].
#[derive(Clone, Debug)]
pub struct RootInvariants {
    /// `2 - 2^{1-k} < ζ_0 < 2 - 2^{-k}` and `ζ_0` real.
    pub principal_bounds: bool,
    /// Secondary roots outside `3^{-1/k} < |ζ_j| < 1`.
    pub secondary_bound_violations: Vec<usize>,
    pub principal_dominates: bool,
    pub conjugate_pairs: bool,
    pub min_abs_re: HpReal,
    pub negative_reals: Vec<usize>,
    pub positive_secondary_reals: Vec<usize>,
    /// Pairs where `Re` order and magnitude order disagree.
    pub ordering_violations: Vec<(usize, usize)>,
    /// `None` for odd `k`.
    pub even_negative_is_smallest: Option<bool>,
    pub max_residual_b: HpReal,
    pub max_residual_a: HpReal,
    pub vieta_sum_error: HpReal,
    pub vieta_product_error: HpReal,
}

impl RootInvariants {
    pub fn real_root_pattern_holds(&self, k: usize) -> bool {
        let want_negative = if k.is_multiple_of(2) { 1 } else { 0 };
        self.negative_reals.len() == want_negative && self.positive_secondary_reals.is_empty()
    }

    /// Human-readable list of every property that does not hold.
    pub fn failures(&self, k: usize, precision: Precision) -> Vec<String> {
        let mut out = Vec::new();
        if !self.principal_bounds {
            out.push("principal root outside (2 - 2^(1-k), 2 - 2^(-k))".to_string());
        }
        if !self.secondary_bound_violations.is_empty() {
            out.push(format!("secondary roots outside (3^(-1/k), 1): {:?}", self.secondary_bound_violations));
        }
        if !self.principal_dominates {
            out.push("principal root is not strictly largest".to_string());
        }
        if !self.conjugate_pairs {
            out.push("roots j and k-j are not conjugate".to_string());
        }
        if self.min_abs_re < HpReal::pow10(-6, self.min_abs_re.bits()) {
            out.push(format!("root with |Re| = {} (pure imaginary?)", self.min_abs_re.to_sci(6)));
        }
        if !self.real_root_pattern_holds(k) {
            out.push(format!(
                "real secondary roots: negative {:?}, positive {:?}",
                self.negative_reals, self.positive_secondary_reals
            ));
        }
        if let Some((a, b)) = self.ordering_violations.first() {
            out.push(format!("Re order and |.| order disagree for roots {a} and {b}"));
        }
        if self.even_negative_is_smallest == Some(false) {
            out.push("negative real root is not the smallest in magnitude".to_string());
        }
        if self.max_residual_b >= precision.tolerance(4) {
            out.push(format!("|B(z)| residual {}", self.max_residual_b.to_sci(4)));
        }
        if self.max_residual_a >= precision.tolerance(6) {
            out.push(format!("|A(z)| residual {}", self.max_residual_a.to_sci(4)));
        }
        if self.vieta_sum_error >= precision.tolerance(6) {
            out.push(format!("sum of roots off by {}", self.vieta_sum_error.to_sci(4)));
        }
        if self.vieta_product_error >= precision.tolerance(6) {
            out.push(format!("product of roots off by {}", self.vieta_product_error.to_sci(4)));
        }
        out
    }
}

/// All `k` roots from the Fuss-Catalan series, optionally Newton-polished.
///
/// Roots `k-j` are stored as exact conjugates of roots `j`.
pub fn all_roots(k: usize, precision: Precision, polish: PolishMode) -> Result<RootSet> {
    let sums = ResidueSums::compute(k, precision)?;
    let bits = root_bits(k, precision);
    debug_assert_eq!(bits, sums.bits());
    let y = HpReal::pow_ratio(2, -(k as i64 + 1), k as u64, bits);
    // y^r S_r and ω^m, shared by all roots.
    let mut weights = Vec::with_capacity(k);
    let mut yr = HpReal::one(bits);
    for r in 1..=k {
        yr = &yr * &y;
        weights.push(&yr * sums.sum(r));
    }
    let omega: Vec<HpComplex> = (0..k).map(|m| HpComplex::unit_root(m as i64, k as u64, bits)).collect();

    let mut roots = vec![HpComplex::zero(bits); k];
    roots[0] = HpComplex::real(sums.principal());
    for j in 1..=k / 2 {
        let mut acc = HpComplex::zero(bits);
        for r in 1..=k {
            acc = &acc + &omega[(j * r) % k].scale(&weights[r - 1]);
        }
        let mut z = acc.scale(&HpReal::from_i64(2, bits));
        if 2 * j == k {
            z.im = HpReal::zero(bits);
        } else {
            roots[k - j] = z.conj();
        }
        roots[j] = z;
    }
    let set = RootSet::with_roots(k, precision, roots)?;
    Ok(if polish.applies(k) { set.polish() } else { set })
}

#[derive(Clone, Debug, Serialize)]
pub struct FigureRow {
    #[serde(with = "crate::decimal::display")]
    pub j: usize,
    pub re: String,
    pub im: String,
    pub abs: String,
    pub arg_over_2pi: String,
    pub residual: String,
}

/// One row per root: `(j, Re ζ_j, Im ζ_j, |ζ_j|, arg ζ_j / 2π ∈ [0, 1), |B(ζ_j)|)`,
/// reals in fixed-point at the working precision.
pub fn root_figure_data(roots: &RootSet) -> Vec<FigureRow> {
    let decimals = roots.precision().digits() as usize;
    roots
        .roots()
        .iter()
        .enumerate()
        .map(|(j, z)| FigureRow {
            j,
            re: z.re.to_fixed(decimals),
            im: z.im.to_fixed(decimals),
            abs: z.abs().to_fixed(decimals),
            arg_over_2pi: z.turns().to_fixed(decimals),
            residual: roots.residuals()[j].to_sci(6),
        })
        .collect()
}

/// Least-squares line through `(j, arg ζ_j / 2π)` over the secondary roots.
#[derive(Clone, Debug, Serialize)]
pub struct ArgFit {
    pub slope: f64,
    pub intercept: f64,
    pub max_deviation: f64,
    /// Normalised arguments strictly increase with `j`.
    pub monotone: bool,
}

pub fn secondary_arg_fit(roots: &RootSet) -> ArgFit {
    let turns: Vec<HpReal> = roots.roots()[1..].iter().map(HpComplex::turns).collect();
    let monotone = turns.windows(2).all(|w| w[0] < w[1]);
    let pts: Vec<(f64, f64)> = turns.iter().enumerate().map(|(i, t)| ((i + 1) as f64, t.to_f64())).collect();
    let n = pts.len() as f64;
    let (sx, sy) = pts.iter().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / n, sy / n);
    let sxx: f64 = pts.iter().map(|(x, _)| (x - mx) * (x - mx)).sum();
    let sxy: f64 = pts.iter().map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = if sxx > 0.0 { sxy / sxx } else { 0.0 };
    let intercept = my - slope * mx;
    let max_deviation = pts.iter().map(|(x, y)| (y - (slope * x + intercept)).abs()).fold(0.0, f64::max);
    ArgFit {
        slope,
        intercept,
        max_deviation,
        monotone,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Precision {
        Precision::default()
    }

    #[test]
    fn quadratic_roots() {
        let rs = all_roots(2, p(), PolishMode::Never).unwrap();
        assert_eq!(rs.root(0).re.to_fixed(6), "1.618034");
        assert_eq!(rs.root(1).re.to_fixed(6), "-0.618034");
        assert_eq!(rs.negative_real_index(), Some(1));
    }

    #[test]
    fn invariants_hold_across_orders() {
        for k in 2..=24 {
            let rs = all_roots(k, p(), PolishMode::Auto).unwrap();
            let inv = rs.invariants();
            assert!(inv.failures(k, p()).is_empty(), "k={k}: {:?}", inv.failures(k, p()));
        }
    }

    #[test]
    fn tetranacci_principal_bounds() {
        let rs = all_roots(4, p(), PolishMode::Never).unwrap();
        let z = rs.principal().to_f64();
        assert!(1.875 < z && z < 1.9375);
    }

    #[test]
    fn polish_does_not_move_converged_roots() {
        let raw = all_roots(7, p(), PolishMode::Never).unwrap();
        let pol = all_roots(7, p(), PolishMode::Always).unwrap();
        assert!(pol.is_polished());
        for j in 0..7 {
            assert!((raw.root(j) - pol.root(j)).abs() < p().tolerance(4));
        }
    }

    #[test]
    fn perturbed_roots_fail_residuals() {
        let rs = all_roots(5, p(), PolishMode::Never).unwrap();
        let mut roots = rs.roots().to_vec();
        roots[1] = roots[1].add_real(&HpReal::pow10(-3, rs.bits()));
        let bad = RootSet::with_roots(5, p(), roots).unwrap();
        let failures = bad.invariants().failures(5, p());
        assert!(failures.iter().any(|f| f.contains("|B(z)|")));
        assert!(failures.iter().any(|f| f.contains("conjugate")));
    }

    #[test]
    fn figure_rows() {
        let rs = all_roots(2, Precision::new(20).unwrap(), PolishMode::Never).unwrap();
        let rows = root_figure_data(&rs);
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].arg_over_2pi, format!("0.{}", "0".repeat(20)));
        assert_eq!(rows[1].arg_over_2pi, format!("0.5{}", "0".repeat(19)));
    }

    #[test]
    fn forty_roots_are_evenly_spread() {
        let rs = all_roots(40, p(), PolishMode::Auto).unwrap();
        let fit = secondary_arg_fit(&rs);
        assert!(fit.monotone);
        assert!((fit.slope - 1.0 / 40.0).abs() < 1e-3);
        assert!(fit.max_deviation < 0.02);
    }
}
