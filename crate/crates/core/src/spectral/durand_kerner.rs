//! Durand–Kerner simultaneous iteration, used as an independent root oracle.

use super::roots::{all_roots, PolishMode, RootSet};
use super::series::root_bits;
use crate::error::{Error, Result};
use crate::hp::{HpComplex, HpReal, Precision};
use crate::registry::Named;

const MAX_ITERATIONS: usize = 5_000;

/// Roots of the monic polynomial with lower coefficients `coeffs`
/// (`x^d + coeffs[0] x^{d-1} + … + coeffs[d-1]`).
pub fn durand_kerner(coeffs: &[HpReal], precision: Precision, bits: usize) -> Result<Vec<HpComplex>> {
    let d = coeffs.len();
    let eval = |z: &HpComplex| {
        coeffs
            .iter()
            .fold(HpComplex::one(bits), |acc, c| (&acc * z).add_real(c))
    };
    let seed = HpComplex::new(HpReal::from_f64(0.4, bits), HpReal::from_f64(0.9, bits));
    let mut z: Vec<HpComplex> = (0..d).map(|j| seed.powi(j as i64)).collect();
    let tol = HpReal::pow10(-(precision.digits() as i64 + 4), bits);
    for _ in 0..MAX_ITERATIONS {
        let mut biggest = HpReal::zero(bits);
        for i in 0..d {
            let mut den = HpComplex::one(bits);
            for (j, zj) in z.iter().enumerate() {
                if j != i {
                    den = &den * &(&z[i] - zj);
                }
            }
            let step = &eval(&z[i]) / &den;
            let size = step.abs();
            if size > biggest {
                biggest = size;
            }
            z[i] = &z[i] - &step;
        }
        if biggest < tol {
            return Ok(z);
        }
    }
    Err(Error::ConvergenceBudgetExceeded { terms: MAX_ITERATIONS })
}

/// Roots of `A(x) = B(x)/(x-1)`, unordered.
pub fn characteristic_roots(k: usize, precision: Precision) -> Result<Vec<HpComplex>> {
    if k < 2 {
        return Err(Error::InvalidOrder(k));
    }
    let bits = root_bits(k, precision);
    let coeffs = vec![HpReal::from_i64(-1, bits); k];
    durand_kerner(&coeffs, precision, bits)
}

/// Largest distance from a root in `a` to its nearest neighbour in `b`.
pub fn max_nearest_distance(a: &[HpComplex], b: &[HpComplex]) -> HpReal {
    let bits = a.first().map(HpComplex::bits).unwrap_or(64);
    a.iter()
        .map(|x| {
            b.iter()
                .map(|y| (x - y).abs())
                .fold(None::<HpReal>, |m, v| match m {
                    Some(m) if m < v => Some(m),
                    _ => Some(v),
                })
                .unwrap_or_else(|| HpReal::zero(bits))
        })
        .fold(HpReal::zero(bits), |m, v| if v > m { v } else { m })
}

/// Strategy for producing an ordered [`RootSet`].
pub trait RootFinder: Named + Send + Sync {
    /// Roots in [`RootSet`] order: principal first, then by increasing argument in `[0, 2π)`.
    fn solve(&self, k: usize, precision: Precision) -> Result<Vec<HpComplex>>;

    fn root_set(&self, k: usize, precision: Precision, polish: PolishMode) -> Result<RootSet> {
        let set = RootSet::with_roots(k, precision, self.solve(k, precision)?)?;
        Ok(if polish.applies(k) { set.polish() } else { set })
    }
}

pub struct SeriesFinder;

impl Named for SeriesFinder {
    fn name(&self) -> &'static str {
        "series"
    }
    fn summary(&self) -> &'static str {
        "Fuss-Catalan root series"
    }
}

impl RootFinder for SeriesFinder {
    fn solve(&self, k: usize, precision: Precision) -> Result<Vec<HpComplex>> {
        Ok(all_roots(k, precision, PolishMode::Never)?.roots().to_vec())
    }

    fn root_set(&self, k: usize, precision: Precision, polish: PolishMode) -> Result<RootSet> {
        all_roots(k, precision, polish)
    }
}

pub struct DurandKernerFinder;

impl Named for DurandKernerFinder {
    fn name(&self) -> &'static str {
        "durand-kerner"
    }
    fn summary(&self) -> &'static str {
        "Durand-Kerner iteration on A(x)"
    }
}

impl RootFinder for DurandKernerFinder {
    fn solve(&self, k: usize, precision: Precision) -> Result<Vec<HpComplex>> {
        let mut roots = characteristic_roots(k, precision)?;
        let p = roots
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.re.partial_cmp(&b.1.re).expect("finite roots"))
            .map(|(i, _)| i)
            .expect("k >= 2");
        let principal = roots.swap_remove(p);
        let mut rest: Vec<(HpReal, HpComplex)> = roots.into_iter().map(|z| (z.turns(), z)).collect();
        rest.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite arguments"));
        let mut out = vec![principal];
        out.extend(rest.into_iter().map(|(_, z)| z));
        Ok(out)
    }
}

pub fn root_finders() -> crate::registry::Registry<dyn RootFinder> {
    let mut reg: crate::registry::Registry<dyn RootFinder> = crate::registry::Registry::new("root finder");
    reg.register(Box::new(SeriesFinder)).register(Box::new(DurandKernerFinder));
    reg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matches_series_for_small_orders() {
        let p = Precision::default();
        for k in 2..=10 {
            let dk = characteristic_roots(k, p).unwrap();
            let series = all_roots(k, p, PolishMode::Never).unwrap();
            let d = max_nearest_distance(series.roots(), &dk);
            assert!(d < HpReal::pow10(-50, d.bits()), "k={k}: {}", d.to_sci(3));
        }
    }

    #[test]
    fn ordered_like_series() {
        let p = Precision::new(30).unwrap();
        let reg = root_finders();
        assert_eq!(reg.names(), vec!["durand-kerner", "series"]);
        let a = reg.get("durand-kerner").unwrap().root_set(6, p, PolishMode::Never).unwrap();
        let b = reg.get("series").unwrap().root_set(6, p, PolishMode::Never).unwrap();
        for j in 0..6 {
            assert!((a.root(j) - b.root(j)).abs() < HpReal::pow10(-25, a.bits()), "j={j}");
        }
    }
}
