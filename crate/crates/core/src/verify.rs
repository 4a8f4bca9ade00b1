//! Cross-checks between the exact, spectral and combinatorial engines,
//! grouped into named suites.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::combinatorics::{b_n, b_n_via_fuss_catalan, binomial, dickson_second_kind, kfib_multinomial, narayana_sum};
use crate::companion::{column_identity_check, entry_polynomial, CompanionMatrix};
use crate::error::Result;
use crate::exact::{
    basis_from_last, basis_sequence, combine_initials, iterate_forward, named_spec, narayana_via_basis,
    padovan_via_basis, perrin_via_basis, perrin_via_padovan, window, NamedSequence, RecurrenceSpec,
};
use crate::hp::{HpReal, Precision};
use crate::registry::{Named, Registry};
use crate::spectral::{
    all_roots, asymptotic_estimate, characteristic_roots, dresden_du_round, max_nearest_distance, n_threshold,
    principal_root, secondary_arg_fit, sj_equivalence_check, wolfram_epsilon, EscalatingBinet,
    PolishMode, Provenance,
};

/// Box sizes for a suite run; `None` picks the suite's own default.
#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyParams {
    pub k_max: Option<usize>,
    pub n_max: Option<i64>,
    pub precision: Precision,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    /// The identity or property, written out.
    pub identity: String,
    pub passed: bool,
    #[serde(with = "crate::decimal::display")]
    pub checked: usize,
    #[serde(with = "crate::decimal::display")]
    pub failures: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub checks: Vec<CheckOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| !c.passed)
    }
}

/// Running count for one check.
pub struct Tally {
    name: String,
    identity: String,
    checked: usize,
    failures: usize,
    first: Option<String>,
    note: Option<String>,
}

impl Tally {
    pub fn new(name: &str, identity: &str) -> Self {
        Tally {
            name: name.to_string(),
            identity: identity.to_string(),
            checked: 0,
            failures: 0,
            first: None,
            note: None,
        }
    }

    /// Records one case; `detail` is only built on failure.
    pub fn record(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.first.is_none() {
                self.first = Some(detail());
            }
        }
    }

    /// Records an evaluation error as a failed case.
    pub fn record_result<T>(&mut self, r: Result<T>, ok: impl FnOnce(&T) -> bool, detail: impl FnOnce() -> String) {
        match r {
            Ok(v) => {
                let pass = ok(&v);
                self.record(pass, detail)
            }
            Err(e) => self.record(false, || format!("{}: {e}", detail())),
        }
    }

    pub fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn finish(self) -> CheckOutcome {
        CheckOutcome {
            passed: self.failures == 0 && self.checked > 0,
            name: self.name,
            identity: self.identity,
            checked: self.checked,
            failures: self.failures,
            counterexample: self.first,
            note: self.note,
        }
    }
}

pub trait VerifySuite: Named + Send + Sync {
    fn run(&self, params: &VerifyParams) -> Result<SuiteReport>;
}

/// Every `β ∈ [-bound, bound]^k`, optionally with `β_k ≠ 0`.
pub fn beta_box(k: usize, bound: i64, nonzero_last: bool) -> Vec<Vec<i64>> {
    let side = (2 * bound + 1) as usize;
    let total = side.pow(k as u32);
    (0..total)
        .map(|mut idx| {
            (0..k)
                .map(|_| {
                    let d = (idx % side) as i64 - bound;
                    idx /= side;
                    d
                })
                .collect::<Vec<_>>()
        })
        .filter(|b| !nonzero_last || b[k - 1] != 0)
        .collect()
}

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

/// `f̂(0..=top)` from `(0, …, 0, 1)` by direct iteration, without a `RecurrenceSpec`.
fn hat_sequence(beta: &[BigInt], top: usize) -> Vec<BigInt> {
    let k = beta.len();
    let mut vals = vec![BigInt::zero(); k];
    vals[k - 1] = BigInt::one();
    for m in k..=top {
        let v = (1..=k).map(|j| &beta[j - 1] * &vals[m - j]).sum();
        vals.push(v);
    }
    vals.truncate(top + 1);
    vals
}

pub struct RootsSuite;

impl Named for RootsSuite {
    fn name(&self) -> &'static str {
        "roots"
    }
    fn summary(&self) -> &'static str {
        "root series: bounds, structure, residuals, independent solve"
    }
}

impl VerifySuite for RootsSuite {
    fn run(&self, params: &VerifyParams) -> Result<SuiteReport> {
        let k_max = params.k_max.unwrap_or(40).max(2);
        let p = params.precision;
        let mut principal = Tally::new("principal-bounds", "2 - 2^(1-k) < z_0 < 2 - 2^(-k)");
        let mut secondary = Tally::new("secondary-bounds", "3^(-1/k) < |z_j| < 1 for j >= 1");
        let mut structure = Tally::new(
            "root-structure",
            "conjugate pairs; |Re z| > 1e-6; one negative real root iff k even; Re order = |z| order; even-k negative root smallest",
        );
        let mut residual = Tally::new("residuals", "|B(z)| < 10^-(p-4), |A(z)| < 10^-(p-6), sum z = 1, prod z = (-1)^(k+1)");
        let mut dk = Tally::new("durand-kerner", "series roots agree with Durand-Kerner roots of A(x) to 10 digits");
        let mut wolfram = Tally::new("wolfram-epsilon", "|2(1 - eps_k) - z_0| < 10^-(p-6)");
        let mut coeffs = Tally::new("fuss-catalan", "b_n = -A_n(1 + 1/k, -1) > 0 and b_mk = C((k+1)m-2, m-1)/(mk)");
        let mut figure = Tally::new("figure-args", "arg(z_j)/2pi strictly increasing in j");

        for k in 2..=k_max {
            let rs = all_roots(k, p, PolishMode::Auto)?;
            let inv = rs.invariants();
            principal.record(inv.principal_bounds, || format!("k={k}: z_0 = {}", rs.principal().to_sci(20)));
            secondary.record(inv.secondary_bound_violations.is_empty(), || {
                format!("k={k}: roots {:?}", inv.secondary_bound_violations)
            });
            let fails = inv.failures(k, p);
            let structural: Vec<&String> = fails
                .iter()
                .filter(|f| !f.contains("residual") && !f.contains("off by") && !f.contains("outside"))
                .collect();
            structure.record(structural.is_empty(), || format!("k={k}: {structural:?}"));
            let numeric: Vec<&String> = fails.iter().filter(|f| f.contains("residual") || f.contains("off by")).collect();
            residual.record(numeric.is_empty(), || format!("k={k}: {numeric:?}"));

            if k <= 10 {
                let other = characteristic_roots(k, p);
                dk.record_result(
                    other,
                    |o| max_nearest_distance(rs.roots(), o) < HpReal::pow10(-10, rs.bits()),
                    || format!("k={k}"),
                );
            }
            if k <= 12 {
                let eps = wolfram_epsilon(k, p)?;
                let z0 = principal_root(k, p)?;
                let bits = z0.bits();
                let diff = (&(&HpReal::from_i64(2, bits) * &(&HpReal::one(bits) - &eps)) - &z0).abs();
                wolfram.record(diff < p.tolerance(6), || format!("k={k}: difference {}", diff.to_sci(4)));
            }
            if k <= 10 {
                for n in 1..=200u64 {
                    let b = b_n(n, k as u64);
                    coeffs.record(b > BigRational::zero() && b == b_n_via_fuss_catalan(n, k as u64), || {
                        format!("k={k} n={n}")
                    });
                }
                for m in 1..=20u64 {
                    let closed = BigRational::new(binomial((k as u64 + 1) * m - 2, m - 1), BigInt::from(m * k as u64));
                    coeffs.record(b_n(m * k as u64, k as u64) == closed, || format!("k={k} m={m}"));
                }
            }
            if k == k_max {
                let fit = secondary_arg_fit(&rs);
                figure.record(fit.monotone, || format!("k={k}"));
                figure = figure.note(format!("k={k}: max deviation from best-fit line {:.3e}", fit.max_deviation));
            }
        }
        Ok(SuiteReport {
            suite: self.name(),
            checks: [principal, secondary, structure, residual, dk, wolfram, coeffs, figure]
                .into_iter()
                .map(Tally::finish)
                .collect(),
        })
    }
}

pub struct BinetSuite;

impl Named for BinetSuite {
    fn name(&self) -> &'static str {
        "binet"
    }
    fn summary(&self) -> &'static str {
        "Binet sum, rounding formula and asymptotic threshold against exact values"
    }
}

impl VerifySuite for BinetSuite {
    fn run(&self, params: &VerifyParams) -> Result<SuiteReport> {
        let k_max = params.k_max.unwrap_or(10).max(2);
        let n_max = params.n_max.unwrap_or(60);
        let n_min = -10;
        let p = params.precision;
        let mut binet = Tally::new("binet-sum", "F_k(n) = sum_j (z_j - 1)/((k+1)z_j - 2k) z_j^(n-k+1)");
        let mut dd = Tally::new("dresden-du", "F_k(n) = floor((z_0 - 1)/((k+1)z_0 - 2k) z_0^(n-k+1) + 1/2)");
        let mut threshold = Tally::new(
            "threshold",
            "|F_k(n) - principal term| < eps * principal term for n >= N, eps in {0.1, 0.01}",
        );
        let mut top_precision = p;

        for k in 2..=k_max {
            let spec = named_spec(&NamedSequence::KFib(k))?;
            let exact = window(&spec, n_min, n_max.max(0))?;
            let mut ev = EscalatingBinet::new(k, Provenance::Standard, p, PolishMode::Auto)?;
            for n in n_min..=n_max {
                let want = exact.get(n).expect("window covers range");
                let got = ev.eval(n);
                binet.record_result(got, |v| v == want, || format!("k={k} n={n}"));
            }
            top_precision = top_precision.max(ev.precision());
            let rs = ev.roots().clone();
            for n in 0..=n_max {
                let want = exact.get(n).expect("window covers range");
                dd.record_result(dresden_du_round(&rs, n), |v| v == want, || format!("k={k} n={n}"));
            }
            if k <= 8 {
                for eps in [0.1, 0.01] {
                    let t = n_threshold(k, eps)?;
                    let start = t.n.ceil().max(0.0) as i64;
                    let long = iterate_forward(&spec, start.max(n_max) + 60)?;
                    for n in start..=start.max(n_max) + 60 {
                        let est = asymptotic_estimate(&rs, n);
                        let f = HpReal::from_bigint(long.get(n).expect("covered"), rs.bits());
                        let rel = (&(&f - &est) / &est).abs();
                        let eps_hp = HpReal::from_f64(eps, rs.bits());
                        threshold.record(rel < eps_hp, || {
                            format!("k={k} eps={eps} N={:.3} n={n}: ratio {}", t.n, rel.to_sci(4))
                        });
                    }
                }
            }
        }
        let binet = binet.note(format!("highest precision used: {} digits", top_precision.digits()));
        Ok(SuiteReport {
            suite: self.name(),
            checks: vec![binet.finish(), dd.finish(), threshold.finish()],
        })
    }
}

pub struct BasisSuite;

impl Named for BasisSuite {
    fn name(&self) -> &'static str {
        "basis"
    }
    fn summary(&self) -> &'static str {
        "basis sequences: Binet form, last-basis reconstruction, initial-value combination"
    }
}

impl VerifySuite for BasisSuite {
    fn run(&self, params: &VerifyParams) -> Result<SuiteReport> {
        let k_max = params.k_max.unwrap_or(8).max(2);
        let n_max = params.n_max.unwrap_or(40);
        let n_min = -5;
        let p = params.precision;
        let mut binet = Tally::new(
            "basis-binet",
            "B_(k,k-m)(n) = sum_j (z_j^m - 2 z_j^(m-1) + 1)/((k+1)z_j - 2k) z_j^(n-k+1)",
        );
        let mut first = Tally::new("basis-m1", "B_(k,k-1) Binet form equals the k-generalized Fibonacci Binet form");
        let mut from_last = Tally::new("from-last", "W_i(n) = sum_(s=0..i) beta_(k+s-i) W_(k-1)(n-s-1)");
        let mut combine = Tally::new("combine-initials", "f(n) = sum_i delta_i W_(k-1)(n-i)");
        let mut linear = Tally::new("linearity", "f = sum_i gamma_i W_i");

        for k in 2..=k_max {
            let kfib = named_spec(&NamedSequence::KFib(k))?;
            let mut standard = EscalatingBinet::new(k, Provenance::Standard, p, PolishMode::Auto)?;
            for m in 1..=k {
                let exact = window(&kfib.basis_spec(k - m)?, n_min, n_max)?;
                let mut ev = EscalatingBinet::new(k, Provenance::Basis(m), p, PolishMode::Auto)?;
                for n in n_min..=n_max {
                    let want = exact.get(n).expect("covered");
                    let got = ev.eval(n);
                    if m == 1 {
                        let s = standard.eval(n);
                        first.record(matches!((&got, &s), (Ok(a), Ok(b)) if a == b), || format!("k={k} n={n}"));
                    }
                    binet.record_result(got, |v| v == want, || format!("k={k} m={m} n={n}"));
                }
            }
        }

        // Exact-only identities over a few coefficient patterns per order.
        for k in 2..=k_max.min(6) {
            let patterns: Vec<Vec<i64>> = vec![
                vec![1; k],
                (0..k).map(|j| if j % 2 == 0 { 1 } else { -1 }).collect(),
                (0..k).map(|j| (j as i64 % 3) - 1).map(|b| if b == 0 { 2 } else { b }).collect(),
            ];
            for beta in patterns {
                let gammas: Vec<Vec<i64>> = vec![
                    (0..k as i64).map(|i| (i * 7 + 3) % 19 - 9).collect(),
                    (0..k as i64).map(|i| 9 - 2 * i).collect(),
                    (0..k).map(|i| i64::from(i == 0)).collect(),
                ];
                for gamma in gammas {
                    let spec = RecurrenceSpec::from_i64(&beta, &gamma)?;
                    let want = iterate_forward(&spec, n_max.max(k as i64))?;
                    let comb = combine_initials(&spec, n_max)?;
                    combine.record(comb.values[..] == want.values[..=n_max as usize], || format!("beta={beta:?} gamma={gamma:?}"));
                    let mut sum = vec![BigInt::zero(); n_max as usize + 1];
                    for i in 0..k {
                        let w = basis_sequence(&spec, i, n_max.max(k as i64))?;
                        let rebuilt = basis_from_last(&spec, i, n_max)?;
                        from_last.record(rebuilt.values[..] == w.values[..=n_max as usize], || format!("beta={beta:?} i={i}"));
                        for (s, v) in sum.iter_mut().zip(&w.values) {
                            *s += BigInt::from(gamma[i]) * v;
                        }
                    }
                    linear.record(sum[..] == want.values[..=n_max as usize], || format!("beta={beta:?} gamma={gamma:?}"));
                }
            }
        }
        Ok(SuiteReport {
            suite: self.name(),
            checks: [binet, first, from_last, combine, linear].into_iter().map(Tally::finish).collect(),
        })
    }
}

pub struct SjSuite;

impl Named for SjSuite {
    fn name(&self) -> &'static str {
        "sj"
    }
    fn summary(&self) -> &'static str {
        "geometric initial values (1, mu, mu^2, ...): Lagrange coefficients and the mu = 2 equivalence"
    }
}

impl VerifySuite for SjSuite {
    fn run(&self, params: &VerifyParams) -> Result<SuiteReport> {
        let k_max = params.k_max.unwrap_or(10).max(2);
        let n_max = params.n_max.unwrap_or(40);
        let p = params.precision;
        let mut equiv = Tally::new("sj-equivalence", "c_j = d_j z_j with d_j = z_j^k (z_j - 1)/(2 z_j^k - (k+1)), to 10^-(p-6)");
        let mut recon = Tally::new("sj-sequence", "sum_j L_j(mu) z_j^n reproduces the recurrence from (1, mu, ..., mu^(k-1))");
        let mut worst = HpReal::zero(64);

        for k in 2..=k_max {
            let rs = all_roots(k, p, PolishMode::Auto)?;
            let e = sj_equivalence_check(&rs)?;
            equiv.record(e.holds, || format!("k={k}: deviation {}", e.max_deviation.to_sci(4)));
            if e.max_deviation > worst {
                worst = e.max_deviation.clone();
            }
            for mu in [2i64, 1, -1, 3] {
                let gamma: Vec<BigInt> = (0..k as u32).map(|i| BigInt::from(mu).pow(i)).collect();
                let spec = RecurrenceSpec::new(vec![BigInt::one(); k], gamma)?;
                let exact = iterate_forward(&spec, n_max.max(k as i64))?;
                let provenance = Provenance::SpickermanJoyner(BigRational::from_integer(BigInt::from(mu)));
                let mut ev = EscalatingBinet::new(k, provenance, p, PolishMode::Auto)?;
                for n in 0..=n_max {
                    let want = exact.get(n).expect("covered");
                    recon.record_result(ev.eval(n), |v| v == want, || format!("k={k} mu={mu} n={n}"));
                }
            }
        }
        let equiv = equiv.note(format!("largest deviation {}", worst.to_sci(4)));
        Ok(SuiteReport {
            suite: self.name(),
            checks: vec![equiv.finish(), recon.finish()],
        })
    }
}

pub struct CompanionSuite;

impl Named for CompanionSuite {
    fn name(&self) -> &'static str {
        "companion"
    }
    fn summary(&self) -> &'static str {
        "companion-matrix powers: entry formula, column identity, basis columns"
    }
}

impl VerifySuite for CompanionSuite {
    fn run(&self, params: &VerifyParams) -> Result<SuiteReport> {
        let k_max = params.k_max.unwrap_or(5).max(2);
        let n_max = params.n_max.unwrap_or(15).max(1);
        let bound = 2;
        let mut entries = Tally::new(
            "entry-formula",
            "c_ij^(n) = sum over i_1+2i_2+...+k i_k = n-i+j of (i_j+...+i_k)/(i_1+...+i_k) multinomial beta^i",
        );
        let mut column = Tally::new("column-identity", "c_ij^(n) = sum_(s=0..min(k-j,n-1)) beta_(j+s) c_i1^(n-s-1), j >= 2");
        let mut corrected = Tally::new(
            "column-identity-unit-diagonal",
            "c_ij^(n) = [n = i-j] + sum_(s=0..min(k-j,n-1)) beta_(j+s) c_i1^(n-s-1), j >= 2",
        );
        let mut bridge = Tally::new("basis-columns", "W_(k-j)(n+k-i) = c_ij^(n)");
        let mut violation_pattern = String::new();

        for k in 2..=k_max {
            let polys: Vec<Vec<Option<crate::combinatorics::BetaPolynomial>>> = (0..=(n_max as usize + k))
                .map(|w| (1..=k).map(|j| (w >= 1).then(|| entry_polynomial(k, w as u64, j))).collect())
                .collect();
            for beta_i in beta_box(k, bound, true) {
                let beta = big(&beta_i);
                let c = CompanionMatrix::new(beta.clone())?;
                let powers = c.powers_upto(n_max as u64);
                let spec = RecurrenceSpec::new(beta.clone(), vec![BigInt::zero(); k])?;
                let cols: Vec<Vec<BigInt>> = (1..=k)
                    .map(|j| Ok(basis_sequence(&spec, k - j, n_max + k as i64)?.values))
                    .collect::<Result<_>>()?;
                for (n, m) in powers.iter().enumerate() {
                    for i in 1..=k {
                        for j in 1..=k {
                            let w = n as i64 - i as i64 + j as i64;
                            let formula = match w {
                                w if w < 0 => BigInt::zero(),
                                0 => BigInt::one(),
                                w => polys[w as usize][j - 1].as_ref().expect("w >= 1").eval(&beta),
                            };
                            entries.record(&formula == m.entry(i, j), || format!("beta={beta_i:?} n={n} ({i},{j})"));
                            let col = &cols[j - 1][n + k - i];
                            bridge.record(col == m.entry(i, j), || format!("beta={beta_i:?} n={n} ({i},{j})"));
                        }
                    }
                }
                let report = column_identity_check(&beta, n_max as u64)?;
                for v in &report.violations {
                    column.record(false, || {
                        format!(
                            "beta={beta_i:?} n={} i={} j={}: entry {} but sum {}",
                            v.n, v.i, v.j, v.entry, v.column_sum
                        )
                    });
                }
                for _ in report.violations.len()..report.checked {
                    column.record(true, String::new);
                }
                corrected.record(report.passed_with_unit_diagonal(), || format!("beta={beta_i:?}"));
                if violation_pattern.is_empty() && !report.passed() {
                    violation_pattern = format!(
                        "mismatches sit on n = i - j only (e.g. k={k}: {:?})",
                        report.violations.iter().take(3).map(|v| (v.n, v.i, v.j)).collect::<Vec<_>>()
                    );
                }
            }
        }
        let column = if violation_pattern.is_empty() { column } else { column.note(violation_pattern) };
        Ok(SuiteReport {
            suite: self.name(),
            checks: [entries, column, corrected, bridge].into_iter().map(Tally::finish).collect(),
        })
    }
}

pub struct MultinomialSuite;

impl Named for MultinomialSuite {
    fn name(&self) -> &'static str {
        "multinomial"
    }
    fn summary(&self) -> &'static str {
        "multinomial (Dickson) sums and the Narayana, Padovan and Perrin closed forms"
    }
}

impl VerifySuite for MultinomialSuite {
    fn run(&self, params: &VerifyParams) -> Result<SuiteReport> {
        let k_max = params.k_max.unwrap_or(5).max(2);
        let n_max = params.n_max.unwrap_or(18).max(0);
        let bound = 3;
        let mut sums = Tally::new(
            "dickson-sum",
            "f^(n+k-1) = sum over i_1+2i_2+...+k i_k = n of multinomial(i) beta_1^i_1...beta_k^i_k",
        );
        let mut corner = Tally::new("matrix-corner", "multinomial sum = c_11^(n)");
        let mut kfib = Tally::new("kfib-sum", "F^_k(n+k-1) = sum of multinomial(i) over weight-n compositions");
        let mut named = Tally::new("named-prefixes", "Narayana, Padovan and Perrin prefixes");
        let mut closed = Tally::new(
            "closed-forms",
            "N(n) = W2(n+2); P(n) = W2(n+4); Q(n) = 3 W2(n+2) - W2(n) = 4P(n) + 2P(n+1) - 3P(n+2)",
        );

        for k in 2..=k_max {
            let polys: Vec<_> = (0..=n_max as u64).map(|n| dickson_second_kind(n, k)).collect();
            for beta_i in beta_box(k, bound, false) {
                let beta = big(&beta_i);
                let hat = hat_sequence(&beta, n_max as usize + k - 1);
                let check_corner = beta_i[k - 1] != 0 && beta_i.iter().all(|b| b.abs() <= 2);
                let powers = check_corner.then(|| CompanionMatrix::new(beta.clone()).map(|c| c.powers_upto(n_max as u64)));
                for (n, poly) in polys.iter().enumerate() {
                    let v = poly.eval(&beta);
                    sums.record(v == hat[n + k - 1], || format!("beta={beta_i:?} n={n}"));
                    if let Some(Ok(ps)) = &powers {
                        corner.record(&v == ps[n].entry(1, 1), || format!("beta={beta_i:?} n={n}"));
                    }
                }
            }
            let ones = vec![BigInt::one(); k];
            let hat = hat_sequence(&ones, n_max as usize + k - 1);
            for n in 0..=n_max as usize {
                kfib.record(kfib_multinomial(n as u64, k) == hat[n + k - 1], || format!("k={k} n={n}"));
            }
        }

        let prefix = |tag: NamedSequence, expect: &[i64]| -> Result<bool> {
            let w = iterate_forward(&named_spec(&tag)?, expect.len() as i64 - 1)?;
            Ok(w.values == big(expect))
        };
        named.record(prefix(NamedSequence::Narayana, &[1, 1, 1, 2, 3, 4, 6, 9, 13, 19])?, || "narayana".into());
        named.record(prefix(NamedSequence::Padovan, &[1, 1, 1, 2, 2, 3, 4, 5, 7, 9, 12, 16])?, || "padovan".into());
        named.record(prefix(NamedSequence::Perrin, &[3, 0, 2, 3, 2, 5, 5, 7, 10, 12, 17, 22])?, || "perrin".into());

        let top = 40;
        let nar = iterate_forward(&named_spec(&NamedSequence::Narayana)?, top)?;
        let pad = iterate_forward(&named_spec(&NamedSequence::Padovan)?, top)?;
        let per = iterate_forward(&named_spec(&NamedSequence::Perrin)?, top)?;
        let checks = [
            ("narayana", narayana_via_basis(top), &nar),
            ("padovan", padovan_via_basis(top), &pad),
            ("perrin", perrin_via_basis(top), &per),
            ("perrin-from-padovan", perrin_via_padovan(top), &per),
        ];
        for (label, got, want) in checks {
            for n in 0..=top as usize {
                closed.record(got[n] == want.values[n], || format!("{label} n={n}"));
            }
        }
        for n in 0..=top {
            closed.record(&narayana_sum(n as u64) == nar.get(n).expect("covered"), || format!("narayana sum n={n}"));
        }

        Ok(SuiteReport {
            suite: self.name(),
            checks: [sums, corner, kfib, named, closed].into_iter().map(Tally::finish).collect(),
        })
    }
}

pub fn verify_suites() -> Registry<dyn VerifySuite> {
    let mut reg: Registry<dyn VerifySuite> = Registry::new("verify suite");
    reg.register(Box::new(RootsSuite))
        .register(Box::new(BinetSuite))
        .register(Box::new(BasisSuite))
        .register(Box::new(SjSuite))
        .register(Box::new(CompanionSuite))
        .register(Box::new(MultinomialSuite));
    reg
}
