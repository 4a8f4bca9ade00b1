//! Multi-precision real and complex scalars.
//!
//! [`HpReal`] wraps an `astro_float::BigFloat` together with the binary
//! working precision it was created at. Binary operations run at the larger
//! of the two operand precisions, so a value never loses precision by being
//! combined with a coarser one.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, RoundingMode, Sign, Word};
use num_bigint::{BigInt, BigUint, Sign as BigSign};
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

const RM: RoundingMode = RoundingMode::ToEven;
const WORD_BITS: usize = Word::BITS as usize;

/// Extra binary digits carried beyond the requested decimal precision.
pub const GUARD_BITS: usize = 32;

/// Working precision in decimal digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Precision(u32);

impl Precision {
    pub const MIN_DIGITS: u32 = 16;
    pub const DEFAULT_DIGITS: u32 = 64;
    /// Ceiling for automatic escalation.
    pub const MAX_DIGITS: u32 = 1024;

    pub fn new(digits: u32) -> Result<Self> {
        if digits < Self::MIN_DIGITS {
            return Err(Error::InvalidPrecision {
                got: digits,
                min: Self::MIN_DIGITS,
            });
        }
        Ok(Precision(digits))
    }

    pub fn digits(self) -> u32 {
        self.0
    }

    /// Binary precision including [`GUARD_BITS`].
    pub fn bits(self) -> usize {
        (self.0 as f64 * std::f64::consts::LOG2_10).ceil() as usize + GUARD_BITS
    }

    /// Twice the digits, or `None` once [`Precision::MAX_DIGITS`] is reached.
    pub fn escalated(self) -> Option<Self> {
        if self.0 >= Self::MAX_DIGITS {
            None
        } else {
            Some(Precision((self.0 * 2).min(Self::MAX_DIGITS)))
        }
    }

    /// `10^-(digits - slack)` as a working-precision real.
    pub fn tolerance(self, slack: u32) -> HpReal {
        HpReal::pow10(-(self.0 as i64 - slack as i64), self.bits())
    }
}

impl Default for Precision {
    fn default() -> Self {
        Precision(Self::DEFAULT_DIGITS)
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

fn consts() -> Consts {
    Consts::new().expect("astro-float constant cache allocation")
}

#[derive(Clone, Debug)]
pub struct HpReal {
    v: BigFloat,
    bits: usize,
}

impl HpReal {
    fn wrap(v: BigFloat, bits: usize) -> Self {
        debug_assert!(!v.is_nan(), "NaN escaped a multi-precision operation");
        HpReal { v, bits }
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    pub fn zero(bits: usize) -> Self {
        Self::wrap(BigFloat::from_word(0, bits), bits)
    }

    pub fn one(bits: usize) -> Self {
        Self::from_i64(1, bits)
    }

    pub fn from_i64(x: i64, bits: usize) -> Self {
        Self::wrap(BigFloat::from_i64(x, bits), bits)
    }

    pub fn from_f64(x: f64, bits: usize) -> Self {
        Self::wrap(BigFloat::from_f64(x, bits), bits)
    }

    /// Exact conversion when `x` fits in `bits`, correctly rounded otherwise.
    pub fn from_bigint(x: &BigInt, bits: usize) -> Self {
        if x.is_zero() {
            return Self::zero(bits);
        }
        let (sign, mag) = x.to_u64_digits();
        let words: Vec<Word> = mag.iter().map(|&d| d as Word).collect();
        let s = if sign == BigSign::Minus { Sign::Neg } else { Sign::Pos };
        let exact = BigFloat::from_words(&words, s, (words.len() * WORD_BITS) as i32);
        // `from_words` carries the full mantissa; round once to the working precision.
        let v = exact.add(&BigFloat::from_word(0, bits), bits, RM);
        Self::wrap(v, bits)
    }

    pub fn from_ratio(x: &BigRational, bits: usize) -> Self {
        let n = Self::from_bigint(x.numer(), bits + WORD_BITS);
        let d = Self::from_bigint(x.denom(), bits + WORD_BITS);
        Self::wrap(n.v.div(&d.v, bits, RM), bits)
    }

    /// `10^e`, exact for `e >= 0` within the working precision.
    pub fn pow10(e: i64, bits: usize) -> Self {
        let ten = BigFloat::from_word(10, bits + WORD_BITS);
        let p = ten.powi(e.unsigned_abs() as usize, bits + WORD_BITS, RM);
        let v = if e < 0 {
            BigFloat::from_word(1, bits).div(&p, bits, RM)
        } else {
            p.add(&BigFloat::from_word(0, bits), bits, RM)
        };
        Self::wrap(v, bits)
    }

    pub fn pi(bits: usize) -> Self {
        Self::wrap(consts().pi(bits, RM), bits)
    }

    /// `base^(num/den)` for a positive integer base.
    pub fn pow_ratio(base: u64, num: i64, den: u64, bits: usize) -> Self {
        let mut cc = consts();
        let b = BigFloat::from_u64(base, bits + WORD_BITS);
        let e = BigFloat::from_i64(num, bits + WORD_BITS).div(
            &BigFloat::from_u64(den, bits + WORD_BITS),
            bits + WORD_BITS,
            RM,
        );
        Self::wrap(b.pow(&e, bits, RM, &mut cc), bits)
    }

    /// `(cos 2πf, sin 2πf)` for the rational fraction `f = num/den`,
    /// exact at multiples of a quarter turn.
    pub fn cos_sin_turn(num: i64, den: u64, bits: usize) -> (Self, Self) {
        let den_i = den as i64;
        let m = num.rem_euclid(den_i);
        if (4 * m) % den_i == 0 {
            let (c, s) = match 4 * m / den_i {
                0 => (1, 0),
                1 => (0, 1),
                2 => (-1, 0),
                _ => (0, -1),
            };
            return (Self::from_i64(c, bits), Self::from_i64(s, bits));
        }
        let mut cc = consts();
        let wp = bits + WORD_BITS;
        let two_pi = consts().pi(wp, RM).mul(&BigFloat::from_word(2, wp), wp, RM);
        let angle = two_pi
            .mul(&BigFloat::from_i64(m, wp), wp, RM)
            .div(&BigFloat::from_u64(den, wp), wp, RM);
        let c = angle.cos(bits, RM, &mut cc);
        let s = angle.sin(bits, RM, &mut cc);
        (Self::wrap(c, bits), Self::wrap(s, bits))
    }

    pub fn is_zero(&self) -> bool {
        self.v.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        !self.v.is_zero() && self.v.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        !self.v.is_zero() && self.v.is_positive()
    }

    pub fn abs(&self) -> Self {
        Self::wrap(self.v.abs(), self.bits)
    }

    pub fn sqrt(&self) -> Self {
        Self::wrap(self.v.sqrt(self.bits, RM), self.bits)
    }

    pub fn ln(&self) -> Self {
        Self::wrap(self.v.ln(self.bits, RM, &mut consts()), self.bits)
    }

    pub fn powi(&self, n: u64) -> Self {
        Self::wrap(self.v.powi(n as usize, self.bits, RM), self.bits)
    }

    pub fn recip(&self) -> Self {
        Self::wrap(self.v.reciprocal(self.bits, RM), self.bits)
    }

    pub fn mul_i64(&self, x: i64) -> Self {
        self * &Self::from_i64(x, self.bits)
    }

    pub fn div_i64(&self, x: i64) -> Self {
        self / &Self::from_i64(x, self.bits)
    }

    /// `atan2(y, x)` in `(-π, π]`.
    pub fn atan2(y: &Self, x: &Self) -> Self {
        let bits = y.bits.max(x.bits);
        let pi = Self::pi(bits);
        if x.is_zero() {
            let half = pi.div_i64(2);
            return if y.is_negative() { -half } else if y.is_zero() { Self::zero(bits) } else { half };
        }
        let mut cc = consts();
        let ratio = y.v.div(&x.v, bits, RM);
        let base = Self::wrap(ratio.atan(bits, RM, &mut cc), bits);
        if x.is_positive() {
            base
        } else if y.is_negative() {
            &base - &pi
        } else {
            &base + &pi
        }
    }

    /// Binary exponent `e` with `2^(e-1) <= |x| < 2^e`; `None` for zero.
    pub fn exponent(&self) -> Option<i64> {
        if self.v.is_zero() {
            None
        } else {
            self.v.exponent().map(|e| e as i64)
        }
    }

    /// Largest integer not above `self`.
    pub fn floor_int(&self) -> BigInt {
        let f = self.v.floor();
        if f.is_zero() {
            return BigInt::zero();
        }
        let words = f.mantissa_digits().expect("finite value");
        let e = f.exponent().expect("finite value") as i64;
        let mut mag = BigUint::zero();
        for &w in words.iter().rev() {
            mag = (mag << WORD_BITS) + BigUint::from(w);
        }
        let shift = (words.len() * WORD_BITS) as i64 - e;
        let mag = if shift >= 0 { mag >> shift as usize } else { mag << (-shift) as usize };
        let sign = if f.is_negative() { BigSign::Minus } else { BigSign::Plus };
        BigInt::from_biguint(sign, mag)
    }

    /// Nearest integer, ties rounded up.
    pub fn round_int(&self) -> BigInt {
        let half = Self::wrap(BigFloat::from_f64(0.5, self.bits), self.bits);
        (self + &half).floor_int()
    }

    pub fn to_f64(&self) -> f64 {
        if self.v.is_zero() {
            return 0.0;
        }
        let words = self.v.mantissa_digits().expect("finite value");
        let top = *words.last().expect("non-empty mantissa") as f64;
        let e = self.v.exponent().expect("finite value");
        let mag = top * 2f64.powi(e - WORD_BITS as i32);
        if self.v.is_negative() {
            -mag
        } else {
            mag
        }
    }

    /// Fixed-point decimal rendering with `decimals` digits after the point.
    pub fn to_fixed(&self, decimals: usize) -> String {
        let scaled = self * &Self::pow10(decimals as i64, self.bits + 4 * decimals);
        let q = scaled.round_int();
        let neg = q.is_negative();
        let digits = q.abs().to_string();
        let digits = if digits.len() <= decimals {
            format!("{}{}", "0".repeat(decimals + 1 - digits.len()), digits)
        } else {
            digits
        };
        let (int_part, frac_part) = digits.split_at(digits.len() - decimals);
        let sign = if neg { "-" } else { "" };
        if decimals == 0 {
            format!("{sign}{int_part}")
        } else {
            format!("{sign}{int_part}.{frac_part}")
        }
    }

    /// Scientific rendering `d.ddd…e±X` with `sig` significant digits.
    pub fn to_sci(&self, sig: usize) -> String {
        let sig = sig.max(1);
        if self.is_zero() {
            return format!("{}e+0", Self::zero(self.bits).to_fixed(sig - 1));
        }
        let e2 = self.exponent().unwrap_or(0);
        let mut e10 = ((e2 - 1) as f64 * std::f64::consts::LOG10_2).floor() as i64;
        let bits = self.bits + 4 * sig;
        let lo = HpReal::pow10(sig as i64 - 1, bits);
        let hi = HpReal::pow10(sig as i64, bits);
        let mag = self.abs();
        let q = loop {
            let scaled = &mag * &HpReal::pow10(sig as i64 - 1 - e10, bits);
            let r = HpReal::from_bigint(&scaled.round_int(), bits);
            if r < lo {
                e10 -= 1;
            } else if r >= hi {
                e10 += 1;
            } else {
                break scaled.round_int();
            }
        };
        let s = q.to_string();
        let sign = if self.is_negative() { "-" } else { "" };
        let (lead, rest) = s.split_at(1);
        let exp_sign = if e10 < 0 { "-" } else { "+" };
        if rest.is_empty() {
            format!("{sign}{lead}e{exp_sign}{}", e10.abs())
        } else {
            format!("{sign}{lead}.{rest}e{exp_sign}{}", e10.abs())
        }
    }
}

impl PartialEq for HpReal {
    fn eq(&self, other: &Self) -> bool {
        self.v.cmp(&other.v) == Some(0)
    }
}

impl PartialOrd for HpReal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.v.cmp(&other.v).map(|c| c.cmp(&0))
    }
}

impl fmt::Display for HpReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sci(17))
    }
}

macro_rules! real_binop {
    ($tr:ident, $method:ident, $op:ident) => {
        impl $tr<&HpReal> for &HpReal {
            type Output = HpReal;
            fn $method(self, rhs: &HpReal) -> HpReal {
                let bits = self.bits.max(rhs.bits);
                HpReal::wrap(self.v.$op(&rhs.v, bits, RM), bits)
            }
        }
        impl $tr<HpReal> for HpReal {
            type Output = HpReal;
            fn $method(self, rhs: HpReal) -> HpReal {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&HpReal> for HpReal {
            type Output = HpReal;
            fn $method(self, rhs: &HpReal) -> HpReal {
                (&self).$method(rhs)
            }
        }
    };
}

real_binop!(Add, add, add);
real_binop!(Sub, sub, sub);
real_binop!(Mul, mul, mul);
real_binop!(Div, div, div);

impl Neg for HpReal {
    type Output = HpReal;
    fn neg(self) -> HpReal {
        HpReal::wrap(self.v.neg(), self.bits)
    }
}

impl Neg for &HpReal {
    type Output = HpReal;
    fn neg(self) -> HpReal {
        HpReal::wrap(self.v.clone().neg(), self.bits)
    }
}

/// Complex number with [`HpReal`] parts.
#[derive(Clone, Debug, PartialEq)]
pub struct HpComplex {
    pub re: HpReal,
    pub im: HpReal,
}

impl HpComplex {
    pub fn new(re: HpReal, im: HpReal) -> Self {
        HpComplex { re, im }
    }

    pub fn real(re: HpReal) -> Self {
        let im = HpReal::zero(re.bits());
        HpComplex { re, im }
    }

    pub fn from_i64(x: i64, bits: usize) -> Self {
        Self::real(HpReal::from_i64(x, bits))
    }

    pub fn zero(bits: usize) -> Self {
        Self::from_i64(0, bits)
    }

    pub fn one(bits: usize) -> Self {
        Self::from_i64(1, bits)
    }

    /// `e^{2πi·num/den}`.
    pub fn unit_root(num: i64, den: u64, bits: usize) -> Self {
        let (c, s) = HpReal::cos_sin_turn(num, den, bits);
        HpComplex { re: c, im: s }
    }

    pub fn bits(&self) -> usize {
        self.re.bits().max(self.im.bits())
    }

    pub fn conj(&self) -> Self {
        HpComplex {
            re: self.re.clone(),
            im: -&self.im,
        }
    }

    pub fn norm_sqr(&self) -> HpReal {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn abs(&self) -> HpReal {
        self.norm_sqr().sqrt()
    }

    /// Argument in `(-π, π]`.
    pub fn arg(&self) -> HpReal {
        HpReal::atan2(&self.im, &self.re)
    }

    /// `arg / 2π` normalised into `[0, 1)`.
    pub fn turns(&self) -> HpReal {
        let bits = self.bits();
        let t = &self.arg() / &(HpReal::pi(bits).mul_i64(2));
        if t.is_negative() {
            &t + &HpReal::one(bits)
        } else {
            t
        }
    }

    pub fn scale(&self, s: &HpReal) -> Self {
        HpComplex {
            re: &self.re * s,
            im: &self.im * s,
        }
    }

    pub fn add_real(&self, x: &HpReal) -> Self {
        HpComplex {
            re: &self.re + x,
            im: self.im.clone(),
        }
    }

    pub fn recip(&self) -> Self {
        let d = self.norm_sqr();
        HpComplex {
            re: &self.re / &d,
            im: -(&self.im / &d),
        }
    }

    /// Integer power by repeated squaring; negative exponents go through the reciprocal.
    pub fn powi(&self, n: i64) -> Self {
        let bits = self.bits();
        let mut base = if n < 0 { self.recip() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = HpComplex::one(bits);
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

    pub fn is_real_within(&self, tol: &HpReal) -> bool {
        self.im.abs() < *tol
    }
}

impl fmt::Display for HpComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.re, self.im)
    }
}

impl Add<&HpComplex> for &HpComplex {
    type Output = HpComplex;
    fn add(self, rhs: &HpComplex) -> HpComplex {
        HpComplex {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub<&HpComplex> for &HpComplex {
    type Output = HpComplex;
    fn sub(self, rhs: &HpComplex) -> HpComplex {
        HpComplex {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul<&HpComplex> for &HpComplex {
    type Output = HpComplex;
    fn mul(self, rhs: &HpComplex) -> HpComplex {
        HpComplex {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

impl Div<&HpComplex> for &HpComplex {
    type Output = HpComplex;
    fn div(self, rhs: &HpComplex) -> HpComplex {
        let d = rhs.norm_sqr();
        let re = &(&self.re * &rhs.re) + &(&self.im * &rhs.im);
        let im = &(&self.im * &rhs.re) - &(&self.re * &rhs.im);
        HpComplex {
            re: &re / &d,
            im: &im / &d,
        }
    }
}

impl Neg for &HpComplex {
    type Output = HpComplex;
    fn neg(self) -> HpComplex {
        HpComplex {
            re: -&self.re,
            im: -&self.im,
        }
    }
}
