//! Outward-rounded fixed-point intervals.
//!
//! An [`Interval`] with `bits` fractional bits stores integers `lo ≤ hi` and
//! encloses every real `x` with `lo·2^-bits ≤ x ≤ hi·2^-bits`. Each operation
//! rounds its lower end down and its upper end up, so enclosures stay valid
//! through any composition. `ln` and `exp` use series with explicit
//! remainder bounds.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
    bits: u32,
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

fn one_shifted(bits: u64) -> BigInt {
    BigInt::from(1) << bits
}

impl Interval {
    /// The exact rational `num / den`, enclosed.
    pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>, bits: u32) -> Self {
        let (mut num, mut den) = (num.into(), den.into());
        assert!(!den.is_zero(), "zero denominator");
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        let scaled = num << bits;
        Interval {
            lo: floor_div(&scaled, &den),
            hi: ceil_div(&scaled, &den),
            bits,
        }
    }

    pub fn int(v: impl Into<BigInt>, bits: u32) -> Self {
        let raw = v.into() << bits;
        Interval {
            lo: raw.clone(),
            hi: raw,
            bits,
        }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    fn check(&self, other: &Interval) {
        assert_eq!(self.bits, other.bits, "mixed precisions");
    }

    /// `lhs ≤ rhs` for every pair of enclosed values.
    pub fn certainly_le(&self, other: &Interval) -> bool {
        self.check(other);
        self.hi <= other.lo
    }

    /// `lhs > rhs` for every pair of enclosed values.
    pub fn certainly_gt(&self, other: &Interval) -> bool {
        self.check(other);
        self.lo > other.hi
    }

    pub fn add(&self, o: &Interval) -> Interval {
        self.check(o);
        Interval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
            bits: self.bits,
        }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        self.check(o);
        Interval {
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
            bits: self.bits,
        }
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
            bits: self.bits,
        }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        self.check(o);
        let unit = one_shifted(self.bits as u64);
        let products = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let min = products.iter().min().expect("nonempty");
        let max = products.iter().max().expect("nonempty");
        Interval {
            lo: floor_div(min, &unit),
            hi: ceil_div(max, &unit),
            bits: self.bits,
        }
    }

    /// Panics if `o` contains zero.
    pub fn div(&self, o: &Interval) -> Interval {
        self.check(o);
        assert!(
            o.lo.is_positive() || o.hi.is_negative(),
            "division by an interval containing zero"
        );
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        for x in [&self.lo, &self.hi] {
            let scaled = x << self.bits;
            for y in [&o.lo, &o.hi] {
                let f = floor_div(&scaled, y);
                let c = ceil_div(&scaled, y);
                if lo.as_ref().is_none_or(|l| f < *l) {
                    lo = Some(f);
                }
                if hi.as_ref().is_none_or(|h| c > *h) {
                    hi = Some(c);
                }
            }
        }
        Interval {
            lo: lo.expect("set"),
            hi: hi.expect("set"),
            bits: self.bits,
        }
    }

    pub fn div_int(&self, d: u64) -> Interval {
        self.div(&Interval::int(d, self.bits))
    }

    fn widen(&self, ulps: &BigInt) -> Interval {
        Interval {
            lo: &self.lo - ulps,
            hi: &self.hi + ulps,
            bits: self.bits,
        }
    }

    /// Natural logarithm; panics unless the interval is positive.
    pub fn ln(&self) -> Interval {
        assert!(self.lo.is_positive(), "ln of a non-positive interval");
        let lo = ln_point(&self.lo, self.bits);
        let hi = if self.is_point() {
            lo.clone()
        } else {
            ln_point(&self.hi, self.bits)
        };
        Interval {
            lo: lo.lo,
            hi: hi.hi,
            bits: self.bits,
        }
    }

    pub fn log2(&self) -> Interval {
        self.ln().div(&ln2(self.bits))
    }

    pub fn log4(&self) -> Interval {
        self.ln()
            .div(&ln2(self.bits).mul(&Interval::int(2, self.bits)))
    }

    pub fn exp(&self) -> Interval {
        let lo = exp_point(&self.lo, self.bits);
        let hi = if self.is_point() {
            lo.clone()
        } else {
            exp_point(&self.hi, self.bits)
        };
        Interval {
            lo: lo.lo,
            hi: hi.hi,
            bits: self.bits,
        }
    }

    pub fn lower_f64(&self) -> f64 {
        raw_f64(&self.lo, self.bits)
    }

    pub fn upper_f64(&self) -> f64 {
        raw_f64(&self.hi, self.bits)
    }

    pub fn mid_f64(&self) -> f64 {
        raw_f64(&(&self.lo + &self.hi), self.bits + 1)
    }

    /// Lower end rounded down to `digits` decimals.
    pub fn lower_decimal(&self, digits: u32) -> String {
        decimal(&self.lo, self.bits, digits, false)
    }

    /// Upper end rounded up to `digits` decimals.
    pub fn upper_decimal(&self, digits: u32) -> String {
        decimal(&self.hi, self.bits, digits, true)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}, {}]",
            self.lower_decimal(20),
            self.upper_decimal(20)
        )
    }
}

fn raw_f64(raw: &BigInt, bits: u32) -> f64 {
    // shift into f64 range before converting
    let excess = raw.bits().saturating_sub(1000);
    let mantissa = (raw >> excess).to_f64().expect("finite");
    mantissa * 2f64.powi(excess as i32 - bits as i32)
}

fn decimal(raw: &BigInt, bits: u32, digits: u32, up: bool) -> String {
    let scaled = raw * BigInt::from(10).pow(digits);
    let unit = one_shifted(bits as u64);
    let v = if up {
        ceil_div(&scaled, &unit)
    } else {
        floor_div(&scaled, &unit)
    };
    let sign = if v.is_negative() { "-" } else { "" };
    let s = v.abs().to_string();
    let s = format!("{s:0>width$}", width = digits as usize + 1);
    let (int, frac) = s.split_at(s.len() - digits as usize);
    format!("{sign}{int}.{frac}")
}

/// `atanh(z)` for a rational `0 ≤ z ≤ 1/3`.
fn atanh_small(num: &BigInt, den: &BigInt, bits: u32) -> Interval {
    let z = Interval::ratio(num.clone(), den.clone(), bits);
    let z2 = z.mul(&z);
    let mut term = z.clone();
    let mut sum = Interval::int(0, bits);
    let mut i = 0u64;
    loop {
        sum = sum.add(&term.div_int(2 * i + 1));
        term = term.mul(&z2);
        i += 1;
        if term.hi <= BigInt::from(1) {
            break;
        }
    }
    // tail ≤ z^(2i+1) / ((2i+1)(1 − z²)) ≤ 2·z^(2i+1)
    let tail = BigInt::from(2) * &term.hi + 1;
    Interval {
        lo: sum.lo,
        hi: sum.hi + tail,
        bits,
    }
}

pub(crate) fn ln2(bits: u32) -> Interval {
    atanh_small(&BigInt::from(1), &BigInt::from(3), bits).mul(&Interval::int(2, bits))
}

/// Enclosure of `ln(raw · 2^-bits)` for `raw > 0`.
fn ln_point(raw: &BigInt, bits: u32) -> Interval {
    // raw·2^-bits = 2^j · y with y = raw / q ∈ [1, 2), q = 2^(len−1)
    let len = raw.bits();
    let q = one_shifted(len - 1);
    let j = len as i64 - 1 - bits as i64;
    // ln y = 2·atanh((y − 1)/(y + 1)), argument in [0, 1/3)
    let ln_y = atanh_small(&(raw - &q), &(raw + &q), bits).mul(&Interval::int(2, bits));
    ln2(bits).mul(&Interval::int(j, bits)).add(&ln_y)
}

/// Enclosure of `exp(raw · 2^-bits)`.
fn exp_point(raw: &BigInt, bits: u32) -> Interval {
    // r = v / 2^j with |r| ≤ 1/2, then square j times
    let len = raw.bits() as i64;
    let j = (len - bits as i64 + 1).max(0) as u32;
    let r = Interval::ratio(raw.clone(), one_shifted((bits + j) as u64), bits);
    let mut sum = Interval::int(1, bits);
    let mut term = Interval::int(1, bits);
    let mut i = 1u64;
    loop {
        term = term.mul(&r).div_int(i);
        sum = sum.add(&term);
        i += 1;
        let size = term.lo.abs().max(term.hi.abs());
        if size <= BigInt::from(1) && i > 2 {
            // tail ≤ 2·|r|^i / i! ≤ |term|
            sum = sum.widen(&(size + 1));
            break;
        }
    }
    let mut out = sum;
    for _ in 0..j {
        out = out.mul(&out);
    }
    out
}
