//! Binet-style sums `value(n) = Re Σ_j c_j ζ_j^n` over the roots of `A(x)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::roots::{all_roots, PolishMode, RootSet};
use crate::error::{Error, Result};
use crate::hp::{HpComplex, HpReal, Precision};

/// Which initial tuple the coefficients reproduce.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    /// `(0, …, 0, 1)`: the k-generalized Fibonacci numbers.
    Standard,
    /// `(1, μ, …, μ^{k-1})`.
    SpickermanJoyner(BigRational),
    /// Basis sequence `B_{k,k-m}`, i.e. initial tuple `δ_{i,k-m}`.
    Basis(usize),
    /// Arbitrary integer initial tuple, as a combination of basis sequences.
    Initials(Vec<BigInt>),
}

/// `c_0 … c_{k-1}`, normalised so that `value(n) = Σ c_j ζ_j^n`.
#[derive(Clone, Debug)]
pub struct BinetCoefficients {
    pub coeffs: Vec<HpComplex>,
    pub provenance: Provenance,
}

impl BinetCoefficients {
    /// `Σ c_j ζ_j^n` before rounding.
    pub fn value(&self, roots: &RootSet, n: i64) -> HpComplex {
        let bits = roots.bits();
        self.coeffs
            .iter()
            .zip(roots.roots())
            .fold(HpComplex::zero(bits), |acc, (c, z)| &acc + &(c * &z.powi(n)))
    }
}

/// `(k+1)ζ_j - 2k`, rejected when it is too small to divide by.
fn denominator(roots: &RootSet, j: usize) -> Result<HpComplex> {
    let k = roots.order() as i64;
    let bits = roots.bits();
    let z = roots.root(j);
    let d = z.scale(&HpReal::from_i64(k + 1, bits)).add_real(&HpReal::from_i64(-2 * k, bits));
    if d.abs() < roots.precision().tolerance(roots.precision().digits() / 2) {
        return Err(Error::DegenerateDenominator(j));
    }
    Ok(d)
}

/// `c_j = (ζ_j - 1) / (((k+1)ζ_j - 2k) ζ_j^{k-1})`.
pub fn binet_coefficients(roots: &RootSet) -> Result<BinetCoefficients> {
    let k = roots.order() as i64;
    let one = HpReal::one(roots.bits());
    let coeffs = (0..roots.order())
        .map(|j| {
            let z = roots.root(j);
            let den = &denominator(roots, j)? * &z.powi(k - 1);
            Ok(&z.add_real(&-&one) / &den)
        })
        .collect::<Result<_>>()?;
    Ok(BinetCoefficients {
        coeffs,
        provenance: Provenance::Standard,
    })
}

/// Coefficients of `B_{k,k-m}(n) = Σ_j (ζ_j^m - 2ζ_j^{m-1} + 1)/((k+1)ζ_j - 2k) · ζ_j^{n-k+1}`.
pub fn basis_coefficients(roots: &RootSet, m: usize) -> Result<BinetCoefficients> {
    let k = roots.order();
    if m == 0 || m > k {
        return Err(Error::IndexOutOfRange {
            what: "basis index m",
            index: m as i64,
            lo: 1,
            hi: k as i64,
        });
    }
    let bits = roots.bits();
    let coeffs = (0..k)
        .map(|j| {
            let z = roots.root(j);
            let zm1 = z.powi(m as i64 - 1);
            let num = (&(&zm1 * z) - &zm1.scale(&HpReal::from_i64(2, bits))).add_real(&HpReal::one(bits));
            let den = &denominator(roots, j)? * &z.powi(k as i64 - 1);
            Ok(&num / &den)
        })
        .collect::<Result<_>>()?;
    Ok(BinetCoefficients {
        coeffs,
        provenance: Provenance::Basis(m),
    })
}

/// Coefficients for an arbitrary initial tuple `γ`: `Σ_i γ_i · basis(k - i)`.
pub fn initials_coefficients(roots: &RootSet, gamma: &[BigInt]) -> Result<BinetCoefficients> {
    let k = roots.order();
    if gamma.len() != k {
        return Err(Error::InvalidSpec(format!("need {k} initial values, got {}", gamma.len())));
    }
    let bits = roots.bits();
    let mut coeffs = vec![HpComplex::zero(bits); k];
    for (i, g) in gamma.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        let basis = basis_coefficients(roots, k - i)?;
        let w = HpReal::from_bigint(g, bits);
        for (c, b) in coeffs.iter_mut().zip(&basis.coeffs) {
            *c = &*c + &b.scale(&w);
        }
    }
    Ok(BinetCoefficients {
        coeffs,
        provenance: Provenance::Initials(gamma.to_vec()),
    })
}

/// Lagrange coefficients `c_j = L_j(μ)` for the initial tuple `(1, μ, …, μ^{k-1})`.
///
/// `μ = 1` uses the limit `(k-1)/(((k+1)ζ_j - 2k) ζ_j^{k-1})`; `μ` within
/// `10^{-p/2}` of a root `ζ_i` gives `c_j = δ_{ij}`.
pub fn sj_coefficients(roots: &RootSet, mu: &BigRational) -> Result<BinetCoefficients> {
    let k = roots.order() as i64;
    let bits = roots.bits();
    let one = HpReal::one(bits);
    let m = HpComplex::real(HpReal::from_ratio(mu, bits));
    let provenance = Provenance::SpickermanJoyner(mu.clone());

    let near = roots.precision().tolerance(roots.precision().digits() / 2);
    if let Some(i) = (0..roots.order()).find(|&j| (&m - roots.root(j)).abs() < near) {
        let coeffs = (0..roots.order())
            .map(|j| HpComplex::from_i64(i64::from(j == i), bits))
            .collect();
        return Ok(BinetCoefficients { coeffs, provenance });
    }

    let coeffs = if mu.is_one() {
        (0..roots.order())
            .map(|j| {
                let den = &denominator(roots, j)? * &roots.root(j).powi(k - 1);
                Ok(&HpComplex::from_i64(k - 1, bits) / &den)
            })
            .collect::<Result<_>>()?
    } else {
        // (μ^{k+1} - 2μ^k + 1) / (μ - 1), the μ-only factor.
        let mk = m.powi(k);
        let b_mu = (&mk * &m.add_real(&HpReal::from_i64(-2, bits))).add_real(&one);
        let front = &b_mu / &m.add_real(&-&one);
        (0..roots.order())
            .map(|j| {
                let z = roots.root(j);
                let den = &(&(&m - z) * &denominator(roots, j)?) * &z.powi(k - 1);
                Ok(&(&front * &z.add_real(&-&one)) / &den)
            })
            .collect::<Result<_>>()?
    };
    Ok(BinetCoefficients { coeffs, provenance })
}

/// Rebuilds the coefficients named by `provenance` on a (possibly new) root set.
pub fn coefficients_for(roots: &RootSet, provenance: &Provenance) -> Result<BinetCoefficients> {
    match provenance {
        Provenance::Standard => binet_coefficients(roots),
        Provenance::SpickermanJoyner(mu) => sj_coefficients(roots, mu),
        Provenance::Basis(m) => basis_coefficients(roots, *m),
        Provenance::Initials(gamma) => initials_coefficients(roots, gamma),
    }
}

/// Rounds `Σ c_j ζ_j^n` to an integer.
///
/// Fails with `PrecisionExhausted` if the largest term is too big for the
/// working precision to resolve units, or if the real part is 0.25 or more
/// from an integer, or the imaginary part is 0.25 or more in magnitude.
pub fn binet_eval(roots: &RootSet, coeffs: &BinetCoefficients, n: i64) -> Result<BigInt> {
    let exhausted = Error::PrecisionExhausted {
        n,
        digits: roots.precision().digits(),
    };
    let bits = roots.bits();
    let mut sum = HpComplex::zero(bits);
    let mut top: i64 = i64::MIN;
    for (c, z) in coeffs.coeffs.iter().zip(roots.roots()) {
        let t = c * &z.powi(n);
        if let Some(e) = t.abs().exponent() {
            top = top.max(e);
        }
        sum = &sum + &t;
    }
    let slack = 64 - (n.unsigned_abs() + roots.order() as u64).leading_zeros() as i64 + 24;
    if top != i64::MIN && top + slack > bits as i64 {
        return Err(exhausted);
    }
    let rounded = sum.re.round_int();
    let quarter = HpReal::from_f64(0.25, bits);
    let off = (&sum.re - &HpReal::from_bigint(&rounded, bits)).abs();
    if off >= quarter || sum.im.abs() >= quarter {
        return Err(exhausted);
    }
    Ok(rounded)
}

/// `B_{k,k-m}(n)` from its Binet form.
pub fn basis_binet(roots: &RootSet, m: usize, n: i64) -> Result<BigInt> {
    binet_eval(roots, &basis_coefficients(roots, m)?, n)
}

/// Binet evaluation that recomputes roots at doubled precision whenever
/// rounding fails, up to [`Precision::MAX_DIGITS`].
#[derive(Clone, Debug)]
pub struct EscalatingBinet {
    k: usize,
    provenance: Provenance,
    polish: PolishMode,
    roots: RootSet,
    coeffs: BinetCoefficients,
}

impl EscalatingBinet {
    pub fn new(k: usize, provenance: Provenance, precision: Precision, polish: PolishMode) -> Result<Self> {
        let roots = all_roots(k, precision, polish)?;
        let coeffs = coefficients_for(&roots, &provenance)?;
        Ok(EscalatingBinet {
            k,
            provenance,
            polish,
            roots,
            coeffs,
        })
    }

    /// Precision currently in use; only grows.
    pub fn precision(&self) -> Precision {
        self.roots.precision()
    }

    pub fn roots(&self) -> &RootSet {
        &self.roots
    }

    pub fn coefficients(&self) -> &BinetCoefficients {
        &self.coeffs
    }

    pub fn eval(&mut self, n: i64) -> Result<BigInt> {
        loop {
            match binet_eval(&self.roots, &self.coeffs, n) {
                Err(e @ Error::PrecisionExhausted { .. }) => {
                    let next = self.precision().escalated().ok_or(e)?;
                    self.roots = all_roots(self.k, next, self.polish)?;
                    self.coeffs = coefficients_for(&self.roots, &self.provenance)?;
                }
                other => return other,
            }
        }
    }
}

/// Result of comparing Lagrange coefficients at `μ = 2` with `d_j ζ_j`.
#[derive(Clone, Debug)]
pub struct SjEquivalence {
    pub holds: bool,
    pub max_deviation: HpReal,
}

/// Checks `c_j = d_j ζ_j` with `d_j = ζ_j^k (ζ_j - 1) / (2ζ_j^k - (k+1))`,
/// to `10^{-(p-6)}`.
pub fn sj_equivalence_check(roots: &RootSet) -> Result<SjEquivalence> {
    let k = roots.order() as i64;
    let bits = roots.bits();
    let c = sj_coefficients(roots, &BigRational::from_integer(BigInt::from(2)))?;
    let mut max_deviation = HpReal::zero(bits);
    for (j, cj) in c.coeffs.iter().enumerate() {
        let z = roots.root(j);
        let zk = z.powi(k);
        let den = zk.scale(&HpReal::from_i64(2, bits)).add_real(&HpReal::from_i64(-(k + 1), bits));
        let d = &(&zk * &z.add_real(&HpReal::from_i64(-1, bits))) / &den;
        let dev = (cj - &(&d * z)).abs();
        if dev > max_deviation {
            max_deviation = dev;
        }
    }
    let holds = max_deviation < roots.precision().tolerance(6);
    Ok(SjEquivalence { holds, max_deviation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{basis_sequence, iterate_backward, iterate_forward, named_spec, window, NamedSequence, RecurrenceSpec};

    fn p() -> Precision {
        Precision::default()
    }

    fn roots(k: usize) -> RootSet {
        all_roots(k, p(), PolishMode::Auto).unwrap()
    }

    #[test]
    fn golden_coefficient() {
        let rs = roots(2);
        let c = binet_coefficients(&rs).unwrap();
        let inv_sqrt5 = HpReal::from_i64(5, rs.bits()).sqrt().recip();
        assert!((&c.coeffs[0].re - &inv_sqrt5).abs() < p().tolerance(4));
    }

    #[test]
    fn vandermonde_last_row() {
        for k in 2..=9 {
            let rs = roots(k);
            let c = binet_coefficients(&rs).unwrap();
            let v = c.value(&rs, k as i64 - 1);
            assert!((&v - &HpComplex::one(rs.bits())).abs() < p().tolerance(8));
            for j in 1..k {
                assert!((&c.coeffs[rs.pair(j)] - &c.coeffs[j].conj()).abs() < p().tolerance(8));
            }
        }
    }

    #[test]
    fn standard_examples() {
        let rs = roots(3);
        let c = binet_coefficients(&rs).unwrap();
        assert_eq!(binet_eval(&rs, &c, 10).unwrap(), BigInt::from(81));
        let rs = roots(2);
        let c = binet_coefficients(&rs).unwrap();
        assert_eq!(binet_eval(&rs, &c, 30).unwrap(), BigInt::from(832040));
        let rs = roots(5);
        let c = binet_coefficients(&rs).unwrap();
        let back = iterate_backward(&named_spec(&NamedSequence::KFib(5)).unwrap(), -5).unwrap();
        assert_eq!(&binet_eval(&rs, &c, -5).unwrap(), back.get(-5).unwrap());
    }

    #[test]
    fn basis_examples() {
        let rs = roots(3);
        assert_eq!(basis_binet(&rs, 1, 10).unwrap(), BigInt::from(81));
        assert_eq!(basis_binet(&rs, 3, 8).unwrap(), BigInt::from(13));
        let rs = roots(4);
        let got: Vec<BigInt> = (0..4).map(|n| basis_binet(&rs, 2, n).unwrap()).collect();
        assert_eq!(got, [0, 0, 1, 0].map(BigInt::from));
        assert!(basis_binet(&rs, 0, 1).is_err());
        assert!(basis_binet(&rs, 5, 1).is_err());
    }

    #[test]
    fn basis_matches_exact() {
        for k in 2..=6 {
            let rs = roots(k);
            let kfib = named_spec(&NamedSequence::KFib(k)).unwrap();
            for m in 1..=k {
                let w = basis_sequence(&kfib, k - m, 30).unwrap();
                let c = basis_coefficients(&rs, m).unwrap();
                for n in 0..=30 {
                    assert_eq!(&binet_eval(&rs, &c, n).unwrap(), w.get(n).unwrap(), "k={k} m={m} n={n}");
                }
            }
        }
    }

    #[test]
    fn initials_combination() {
        let rs = roots(4);
        let gamma: Vec<BigInt> = [3, -1, 4, 1].map(BigInt::from).to_vec();
        let spec = RecurrenceSpec::new(vec![BigInt::from(1); 4], gamma.clone()).unwrap();
        let c = initials_coefficients(&rs, &gamma).unwrap();
        let w = window(&spec, -8, 30).unwrap();
        for n in -8..=30 {
            assert_eq!(&binet_eval(&rs, &c, n).unwrap(), w.get(n).unwrap());
        }
    }

    #[test]
    fn sj_examples() {
        let two = BigRational::from_integer(BigInt::from(2));
        let rs = roots(2);
        let c = sj_coefficients(&rs, &two).unwrap();
        let got: Vec<BigInt> = (0..6).map(|n| binet_eval(&rs, &c, n).unwrap()).collect();
        assert_eq!(got, [1, 2, 3, 5, 8, 13].map(BigInt::from));

        let rs = roots(5);
        let c = sj_coefficients(&rs, &BigRational::one()).unwrap();
        let ones = RecurrenceSpec::new(vec![BigInt::from(1); 5], vec![BigInt::from(1); 5]).unwrap();
        let w = iterate_forward(&ones, 20).unwrap();
        for n in 0..=20 {
            assert_eq!(&binet_eval(&rs, &c, n).unwrap(), w.get(n).unwrap());
        }
    }

    #[test]
    fn sj_at_a_root_is_a_unit_vector() {
        let rs = roots(3);
        // A rational within 10^-40 of ζ_0.
        let scale = BigInt::from(10).pow(40);
        let approx = BigRational::new((rs.principal() * &HpReal::from_bigint(&scale, rs.bits())).round_int(), scale);
        let c = sj_coefficients(&rs, &approx).unwrap();
        assert_eq!(c.coeffs[0], HpComplex::one(rs.bits()));
        assert!(c.coeffs[1..].iter().all(|x| x.re.is_zero() && x.im.is_zero()));
    }

    #[test]
    fn sj_equivalence() {
        for k in [2, 7] {
            assert!(sj_equivalence_check(&roots(k)).unwrap().holds);
        }
        let rs = roots(4);
        let mut zs = rs.roots().to_vec();
        zs[1] = zs[1].add_real(&HpReal::pow10(-3, rs.bits()));
        let bad = RootSet::with_roots(4, p(), zs).unwrap();
        let out = sj_equivalence_check(&bad).unwrap();
        assert!(!out.holds);
        assert!(out.max_deviation > HpReal::pow10(-6, rs.bits()));
    }

    #[test]
    fn escalation_recovers_large_indices() {
        let mut ev = EscalatingBinet::new(3, Provenance::Standard, Precision::new(16).unwrap(), PolishMode::Never).unwrap();
        let spec = named_spec(&NamedSequence::KFib(3)).unwrap();
        let w = iterate_forward(&spec, 200).unwrap();
        assert_eq!(&ev.eval(200).unwrap(), w.get(200).unwrap());
        assert!(ev.precision().digits() > 16);
    }

    #[test]
    fn fixed_precision_reports_exhaustion() {
        let rs = all_roots(3, Precision::new(16).unwrap(), PolishMode::Never).unwrap();
        let c = binet_coefficients(&rs).unwrap();
        assert!(matches!(binet_eval(&rs, &c, 400), Err(Error::PrecisionExhausted { n: 400, digits: 16 })));
    }
}
