use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::recurrence::{iterate_forward, RecurrenceSpec};
use crate::error::{Error, Result};

/// The sequences with a fixed recipe for their coefficients and initial values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NamedSequence {
    /// k-generalized Fibonacci numbers, initial tuple `(0, …, 0, 1)`.
    KFib(usize),
    Narayana,
    Padovan,
    Perrin,
    /// All-ones coefficients with geometric initial values `(1, μ, μ², …)`.
    SjPowers { k: usize, mu: BigInt },
}

impl NamedSequence {
    pub fn name(&self) -> &'static str {
        match self {
            NamedSequence::KFib(_) => "kfib",
            NamedSequence::Narayana => "narayana",
            NamedSequence::Padovan => "padovan",
            NamedSequence::Perrin => "perrin",
            NamedSequence::SjPowers { .. } => "sj-powers",
        }
    }

    /// Builds a tag from its name plus the order and ratio that some tags take.
    pub fn parse(name: &str, k: Option<usize>, mu: Option<BigInt>) -> Result<Self> {
        let need_k = || {
            k.ok_or_else(|| Error::InvalidSpec(format!("sequence `{name}` needs an order k")))
        };
        match name {
            "kfib" => Ok(NamedSequence::KFib(need_k()?)),
            "narayana" => Ok(NamedSequence::Narayana),
            "padovan" => Ok(NamedSequence::Padovan),
            "perrin" => Ok(NamedSequence::Perrin),
            "sj-powers" => Ok(NamedSequence::SjPowers {
                k: need_k()?,
                mu: mu.unwrap_or_else(|| BigInt::from(2)),
            }),
            _ => Err(Error::UnknownName {
                kind: "sequence",
                name: name.to_string(),
            }),
        }
    }
}

impl fmt::Display for NamedSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedSequence::KFib(k) => write!(f, "kfib({k})"),
            NamedSequence::SjPowers { k, mu } => write!(f, "sj-powers({k}, {mu})"),
            other => f.write_str(other.name()),
        }
    }
}

impl FromStr for NamedSequence {
    type Err = Error;

    /// Accepts `narayana`, `padovan`, `perrin`, `kfib(k)` and `sj-powers(k, mu)`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let Some(open) = s.find('(') else {
            return NamedSequence::parse(s, None, None);
        };
        let bad = || Error::InvalidSpec(format!("malformed sequence tag `{s}`"));
        let inner = s[open + 1..].strip_suffix(')').ok_or_else(bad)?;
        let args: Vec<&str> = inner.split(',').map(str::trim).collect();
        let k = args.first().and_then(|a| a.parse().ok()).ok_or_else(bad)?;
        let mu = match args.get(1) {
            Some(a) => Some(a.parse::<BigInt>().map_err(|_| bad())?),
            None => None,
        };
        NamedSequence::parse(&s[..open], Some(k), mu)
    }
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn named_spec(tag: &NamedSequence) -> Result<RecurrenceSpec> {
    match tag {
        NamedSequence::KFib(k) => {
            let k = *k;
            if k < 2 {
                return Err(Error::InvalidOrder(k));
            }
            let mut gamma = vec![BigInt::zero(); k];
            gamma[k - 1] = BigInt::one();
            RecurrenceSpec::new(vec![BigInt::one(); k], gamma)
        }
        NamedSequence::Narayana => RecurrenceSpec::new(ints(&[1, 0, 1]), ints(&[1, 1, 1])),
        NamedSequence::Padovan => RecurrenceSpec::new(ints(&[0, 1, 1]), ints(&[1, 1, 1])),
        NamedSequence::Perrin => RecurrenceSpec::new(ints(&[0, 1, 1]), ints(&[3, 0, 2])),
        NamedSequence::SjPowers { k, mu } => {
            let k = *k;
            if k < 2 {
                return Err(Error::InvalidOrder(k));
            }
            let mut gamma = Vec::with_capacity(k);
            let mut p = BigInt::one();
            for _ in 0..k {
                gamma.push(p.clone());
                p *= mu;
            }
            RecurrenceSpec::new(vec![BigInt::one(); k], gamma)
        }
    }
}

/// Values `W_2(0..=n_max)` of the order-3 recurrence with coefficients `beta`.
fn last_basis(beta: &[i64], n_max: i64) -> Vec<BigInt> {
    let spec = RecurrenceSpec::from_i64(beta, &[0, 0, 1]).expect("valid order-3 recurrence");
    iterate_forward(&spec, n_max.max(2)).expect("forward range").values
}

/// `N(n) = W^N_2(n+2)` for `0 ≤ n ≤ n_max`.
pub fn narayana_via_basis(n_max: i64) -> Vec<BigInt> {
    let w = last_basis(&[1, 0, 1], n_max + 2);
    (0..=n_max).map(|n| w[(n + 2) as usize].clone()).collect()
}

/// `P(n) = W^P_2(n+4)` for `0 ≤ n ≤ n_max`.
pub fn padovan_via_basis(n_max: i64) -> Vec<BigInt> {
    let w = last_basis(&[0, 1, 1], n_max + 4);
    (0..=n_max).map(|n| w[(n + 4) as usize].clone()).collect()
}

/// `Q(n) = 3 W^P_2(n+2) - W^P_2(n)` for `0 ≤ n ≤ n_max`.
pub fn perrin_via_basis(n_max: i64) -> Vec<BigInt> {
    let w = last_basis(&[0, 1, 1], n_max + 2);
    (0..=n_max as usize).map(|n| BigInt::from(3) * &w[n + 2] - &w[n]).collect()
}

/// `Q(n) = 4P(n) + 2P(n+1) - 3P(n+2)` for `0 ≤ n ≤ n_max`.
pub fn perrin_via_padovan(n_max: i64) -> Vec<BigInt> {
    let p = padovan_via_basis(n_max + 2);
    (0..=n_max as usize)
        .map(|n| BigInt::from(4) * &p[n] + BigInt::from(2) * &p[n + 1] - BigInt::from(3) * &p[n + 2])
        .collect()
}
