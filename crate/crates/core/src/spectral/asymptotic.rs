//! Principal-root asymptotics and the threshold beyond which they dominate.

use num_bigint::BigInt;
use serde::Serialize;

use super::roots::{all_roots, PolishMode, RootSet};
use crate::error::{Error, Result};
use crate::hp::{HpReal, Precision};

/// `(2 - ζ_0)(ζ_0 - 1) / ((k+1)ζ_0 - 2k) · ζ_0^{n+1}`.
pub fn asymptotic_estimate(roots: &RootSet, n: i64) -> HpReal {
    let k = roots.order() as i64;
    let bits = roots.bits();
    let z = roots.principal();
    let one = HpReal::one(bits);
    let two = HpReal::from_i64(2, bits);
    let den = &z.mul_i64(k + 1) - &HpReal::from_i64(2 * k, bits);
    let front = &(&(&two - z) * &(z - &one)) / &den;
    let power = if n + 1 >= 0 {
        z.powi((n + 1) as u64)
    } else {
        z.powi((-(n + 1)) as u64).recip()
    };
    &front * &power
}

/// `⌊(ζ_0 - 1)/((k+1)ζ_0 - 2k) · ζ_0^{n-k+1} + 1/2⌋`.
pub fn dresden_du_round(roots: &RootSet, n: i64) -> Result<BigInt> {
    if n < 0 {
        return Err(Error::InvalidRange(format!("rounding formula needs n >= 0, got {n}")));
    }
    let v = asymptotic_estimate(roots, n);
    let top = v.exponent().unwrap_or(0);
    if top + 24 > roots.bits() as i64 {
        return Err(Error::PrecisionExhausted {
            n,
            digits: roots.precision().digits(),
        });
    }
    Ok(v.round_int())
}

/// [`dresden_du_round`] with automatic precision doubling.
pub fn dresden_du_escalating(k: usize, n: i64, start: Precision) -> Result<BigInt> {
    let mut p = start;
    loop {
        let roots = all_roots(k, p, PolishMode::Auto)?;
        match dresden_du_round(&roots, n) {
            Err(e @ Error::PrecisionExhausted { .. }) => p = p.escalated().ok_or(e)?,
            other => return other,
        }
    }
}

/// Index past which the secondary roots contribute less than `ε` times the principal term.
#[derive(Clone, Debug, Serialize)]
pub struct Threshold {
    pub delta: f64,
    pub kappa: f64,
    /// `N` with `κ = min{(k+1)/(2k), 1 - δ}`.
    pub n: f64,
    /// `N` with `κ = (k+1)/(2k)`.
    pub n_simplified: f64,
}

/// `N = k + ln(ε/(k-1)) / ln κ`.
pub fn n_threshold(k: usize, eps: f64) -> Result<Threshold> {
    if k < 2 {
        return Err(Error::InvalidOrder(k));
    }
    if !(eps > 0.0 && eps < 1.0) {
        return Err(Error::InvalidRange(format!("epsilon must lie in (0, 1), got {eps}")));
    }
    let kf = k as f64;
    let a = 2f64.powf((kf + 1.0) / kf);
    let root = (1.0 + 1.0 / (a * a * kf * kf) + (2.0 * std::f64::consts::PI / kf).cos() / (2f64.powf(1.0 / kf) * kf)).sqrt();
    let delta = (1.0 + 1.0 / (a * kf) - root) / (kf + 1.0).powf(1.0 / kf);
    let simple = (kf + 1.0) / (2.0 * kf);
    let kappa = simple.min(1.0 - delta);
    let num = (eps / (kf - 1.0)).ln();
    Ok(Threshold {
        delta,
        kappa,
        n: kf + num / kappa.ln(),
        n_simplified: kf + num / simple.ln(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{iterate_forward, named_spec, NamedSequence};

    fn p() -> Precision {
        Precision::default()
    }

    #[test]
    fn estimates_near_integers() {
        let rs = all_roots(3, p(), PolishMode::Never).unwrap();
        assert!((asymptotic_estimate(&rs, 10).to_f64() - 81.0).abs() < 0.5);
        let rs = all_roots(2, p(), PolishMode::Never).unwrap();
        assert!((asymptotic_estimate(&rs, 20).to_f64() - 6765.0).abs() < 0.5);
    }

    #[test]
    fn relative_error_envelope_shrinks() {
        // The secondary roots oscillate, so compare block maxima rather than single terms.
        for k in 2..=6usize {
            let rs = all_roots(k, p(), PolishMode::Never).unwrap();
            let w = iterate_forward(&named_spec(&NamedSequence::KFib(k)).unwrap(), 120).unwrap();
            let rel: Vec<f64> = (k as i64..=120)
                .map(|n| {
                    let est = asymptotic_estimate(&rs, n);
                    let exact = HpReal::from_bigint(w.get(n).unwrap(), rs.bits());
                    ((&exact - &est) / est).abs().to_f64()
                })
                .collect();
            let maxima: Vec<f64> = rel.chunks(2 * k).map(|c| c.iter().copied().fold(0.0, f64::max)).collect();
            for pair in maxima.windows(2) {
                assert!(pair[1] < pair[0], "k={k}: {maxima:?}");
            }
        }
    }

    #[test]
    fn rounding_reproduces_sequences() {
        let rs = all_roots(2, p(), PolishMode::Never).unwrap();
        let w = iterate_forward(&named_spec(&NamedSequence::KFib(2)).unwrap(), 40).unwrap();
        for n in 0..=40 {
            assert_eq!(&dresden_du_round(&rs, n).unwrap(), w.get(n).unwrap());
        }
        let rs = all_roots(10, p(), PolishMode::Never).unwrap();
        let w = iterate_forward(&named_spec(&NamedSequence::KFib(10)).unwrap(), 50).unwrap();
        assert_eq!(&dresden_du_round(&rs, 50).unwrap(), w.get(50).unwrap());
        let rs = all_roots(3, p(), PolishMode::Never).unwrap();
        assert_eq!(dresden_du_round(&rs, 2).unwrap(), BigInt::from(1));
        assert!(dresden_du_round(&rs, -1).is_err());
    }

    #[test]
    fn escalation() {
        let w = iterate_forward(&named_spec(&NamedSequence::KFib(2)).unwrap(), 300).unwrap();
        assert_eq!(&dresden_du_escalating(2, 300, Precision::new(16).unwrap()).unwrap(), w.get(300).unwrap());
    }

    #[test]
    fn thresholds() {
        let t = n_threshold(3, 0.01).unwrap();
        assert!((t.kappa - 2.0 / 3.0).abs() < 1e-12);
        assert!((t.n - 16.07).abs() < 0.01, "{}", t.n);
        let t = n_threshold(2, 0.5).unwrap();
        assert!((t.n - 4.41).abs() < 0.01, "{}", t.n);
        assert!(n_threshold(3, 0.0).is_err());
        assert!(n_threshold(3, 1.0).is_err());
    }
}
