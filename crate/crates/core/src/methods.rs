//! Interchangeable evaluators for `f(from..=to)`, selected by name.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::combinatorics::dickson_second_kind;
use crate::companion::iterate_via_matrix;
use crate::error::{Error, Result};
use crate::exact::{initial_deltas, window, RecurrenceSpec, SequenceWindow};
use crate::hp::Precision;
use crate::registry::{Named, Registry};
use crate::spectral::{dresden_du_escalating, EscalatingBinet, PolishMode, Provenance};

/// Largest index the multinomial method will enumerate compositions for.
pub const MULTINOMIAL_MAX_N: i64 = 64;

#[derive(Clone, Copy, Debug, Default)]
pub struct MethodContext {
    /// Starting precision for the root-based methods; they escalate on their own.
    pub precision: Precision,
    pub polish: PolishMode,
}

pub trait SequenceMethod: Named + Send + Sync {
    fn window(&self, spec: &RecurrenceSpec, from: i64, to: i64, ctx: &MethodContext) -> Result<SequenceWindow>;
}

fn unsupported(method: &str, reason: impl Into<String>) -> Error {
    Error::Unsupported {
        method: method.to_string(),
        reason: reason.into(),
    }
}

fn check_range(from: i64, to: i64) -> Result<()> {
    if from > to {
        return Err(Error::InvalidRange(format!("from = {from} exceeds to = {to}")));
    }
    Ok(())
}

fn is_kfib(spec: &RecurrenceSpec) -> bool {
    let k = spec.order();
    spec.has_unit_coefficients() && spec.gamma()[..k - 1].iter().all(Zero::is_zero) && spec.gamma()[k - 1].is_one()
}

pub struct Iterate;

impl Named for Iterate {
    fn name(&self) -> &'static str {
        "iterate"
    }
    fn summary(&self) -> &'static str {
        "exact recurrence, forwards and (for |beta_k| = 1) backwards"
    }
}

impl SequenceMethod for Iterate {
    fn window(&self, spec: &RecurrenceSpec, from: i64, to: i64, _ctx: &MethodContext) -> Result<SequenceWindow> {
        window(spec, from, to)
    }
}

pub struct Binet;

impl Named for Binet {
    fn name(&self) -> &'static str {
        "binet"
    }
    fn summary(&self) -> &'static str {
        "rounded sum over the roots of A(x); all-ones coefficients only"
    }
}

impl SequenceMethod for Binet {
    fn window(&self, spec: &RecurrenceSpec, from: i64, to: i64, ctx: &MethodContext) -> Result<SequenceWindow> {
        check_range(from, to)?;
        if !spec.has_unit_coefficients() {
            return Err(unsupported(self.name(), "root sums are implemented for beta = (1, ..., 1) only"));
        }
        let provenance = if is_kfib(spec) {
            Provenance::Standard
        } else {
            Provenance::Initials(spec.gamma().to_vec())
        };
        let mut ev = EscalatingBinet::new(spec.order(), provenance, ctx.precision, ctx.polish)?;
        let values = (from..=to).map(|n| ev.eval(n)).collect::<Result<_>>()?;
        Ok(SequenceWindow { start: from, values })
    }
}

pub struct Matrix;

impl Named for Matrix {
    fn name(&self) -> &'static str {
        "matrix"
    }
    fn summary(&self) -> &'static str {
        "companion-matrix powers applied to the initial vector"
    }
}

impl SequenceMethod for Matrix {
    fn window(&self, spec: &RecurrenceSpec, from: i64, to: i64, _ctx: &MethodContext) -> Result<SequenceWindow> {
        check_range(from, to)?;
        if from < 0 {
            return Err(unsupported(self.name(), "matrix powers need n >= 0"));
        }
        let values = (from..=to).map(|n| iterate_via_matrix(spec, n as u64)).collect();
        Ok(SequenceWindow { start: from, values })
    }
}

pub struct Multinomial;

impl Named for Multinomial {
    fn name(&self) -> &'static str {
        "multinomial"
    }
    fn summary(&self) -> &'static str {
        "Dickson-polynomial sums over weighted compositions"
    }
}

impl SequenceMethod for Multinomial {
    /// `f(n) = Σ_i δ_i W_{k-1}(n-i)` for `n ≥ k-1`, with `W_{k-1}(m) = f̂(m)` read
    /// from the multinomial sum of weight `m - k + 1`; earlier values are `γ_n`.
    fn window(&self, spec: &RecurrenceSpec, from: i64, to: i64, _ctx: &MethodContext) -> Result<SequenceWindow> {
        check_range(from, to)?;
        if from < 0 {
            return Err(unsupported(self.name(), "composition sums need n >= 0"));
        }
        if to > MULTINOMIAL_MAX_N {
            return Err(unsupported(
                self.name(),
                format!("composition counts grow too fast past n = {MULTINOMIAL_MAX_N}"),
            ));
        }
        let k = spec.order() as i64;
        let deltas = initial_deltas(spec);
        let last: Vec<BigInt> = (0..=to)
            .map(|m| {
                if m < k - 1 {
                    BigInt::zero()
                } else {
                    dickson_second_kind((m - k + 1) as u64, k as usize).eval(spec.beta())
                }
            })
            .collect();
        let values = (from..=to)
            .map(|n| {
                if n < k - 1 {
                    spec.gamma()[n as usize].clone()
                } else {
                    deltas.iter().enumerate().map(|(i, d)| d * &last[(n - i as i64) as usize]).sum()
                }
            })
            .collect();
        Ok(SequenceWindow { start: from, values })
    }
}

pub struct DresdenDu;

impl Named for DresdenDu {
    fn name(&self) -> &'static str {
        "dresden-du"
    }
    fn summary(&self) -> &'static str {
        "principal root alone, rounded; k-generalized Fibonacci only"
    }
}

impl SequenceMethod for DresdenDu {
    fn window(&self, spec: &RecurrenceSpec, from: i64, to: i64, ctx: &MethodContext) -> Result<SequenceWindow> {
        check_range(from, to)?;
        if !is_kfib(spec) {
            return Err(unsupported(self.name(), "needs beta = (1, ..., 1) and gamma = (0, ..., 0, 1)"));
        }
        if from < 0 {
            return Err(unsupported(self.name(), "rounding formula needs n >= 0"));
        }
        let values = (from..=to)
            .map(|n| dresden_du_escalating(spec.order(), n, ctx.precision))
            .collect::<Result<_>>()?;
        Ok(SequenceWindow { start: from, values })
    }
}

pub fn sequence_methods() -> Registry<dyn SequenceMethod> {
    let mut reg: Registry<dyn SequenceMethod> = Registry::new("method");
    reg.register(Box::new(Iterate))
        .register(Box::new(Binet))
        .register(Box::new(Matrix))
        .register(Box::new(Multinomial))
        .register(Box::new(DresdenDu));
    reg
}
