//! Fixed-point arbitrary-precision real and complex arithmetic.
//!
//! Values are stored as `mant / 2^bits` with a shared scale chosen from the
//! requested decimal precision plus guard digits. This is enough machinery
//! for CM-point evaluation: field operations, square roots, pi, exp of real
//! arguments, and cos/sin with argument reduction. Transcendental functions
//! carry 64 extra guard bits internally so the truncation of individual
//! series terms stays far below the working precision.

use alloc::string::ToString;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Working precision: decimal digits plus guard digits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrecisionContext {
    pub digits: u32,
    pub guard: u32,
}

impl PrecisionContext {
    pub fn new(digits: u32, guard: u32) -> Self {
        assert!(digits >= 30, "precision below 30 digits is not supported");
        assert!(guard >= 10, "at least 10 guard digits are required");
        PrecisionContext { digits, guard }
    }

    /// Default evaluation precision: 60 digits plus 20 guard digits.
    pub fn standard() -> Self {
        PrecisionContext::new(60, 20)
    }

    /// Binary scale: about (digits + guard) * log2(10) plus headroom.
    pub fn bits(&self) -> u32 {
        (self.digits + self.guard) * 3322 / 1000 + 64
    }
}

impl Default for PrecisionContext {
    fn default() -> Self {
        Self::standard()
    }
}

/// Fixed-point real number `mant / 2^bits`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigFloat {
    mant: BigInt,
    bits: u32,
}

impl BigFloat {
    pub fn zero(bits: u32) -> Self {
        BigFloat {
            mant: BigInt::zero(),
            bits,
        }
    }

    pub fn from_i64(v: i64, bits: u32) -> Self {
        BigFloat {
            mant: BigInt::from(v) << bits,
            bits,
        }
    }

    pub fn from_bigint(v: &BigInt, bits: u32) -> Self {
        BigFloat {
            mant: v.clone() << bits,
            bits,
        }
    }

    pub fn from_ratio(num: &BigInt, den: &BigInt, bits: u32) -> Self {
        assert!(!den.is_zero());
        BigFloat {
            mant: round_div(&(num.clone() << bits), den),
            bits,
        }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn is_negative(&self) -> bool {
        self.mant.is_negative()
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    pub fn abs(&self) -> Self {
        BigFloat {
            mant: self.mant.abs(),
            bits: self.bits,
        }
    }

    pub fn neg(&self) -> Self {
        BigFloat {
            mant: -self.mant.clone(),
            bits: self.bits,
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.bits, o.bits);
        BigFloat {
            mant: &self.mant + &o.mant,
            bits: self.bits,
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        debug_assert_eq!(self.bits, o.bits);
        BigFloat {
            mant: &self.mant - &o.mant,
            bits: self.bits,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.bits, o.bits);
        BigFloat {
            mant: shift_round(&(&self.mant * &o.mant), self.bits),
            bits: self.bits,
        }
    }

    pub fn mul_i64(&self, k: i64) -> Self {
        BigFloat {
            mant: &self.mant * k,
            bits: self.bits,
        }
    }

    pub fn div(&self, o: &Self) -> Self {
        debug_assert_eq!(self.bits, o.bits);
        assert!(!o.mant.is_zero(), "division by zero");
        BigFloat {
            mant: round_div(&(self.mant.clone() << self.bits), &o.mant),
            bits: self.bits,
        }
    }

    pub fn div_i64(&self, k: i64) -> Self {
        assert!(k != 0);
        BigFloat {
            mant: round_div(&self.mant, &BigInt::from(k)),
            bits: self.bits,
        }
    }

    /// Square root of a non-negative value.
    pub fn sqrt(&self) -> Self {
        assert!(!self.mant.is_negative(), "sqrt of a negative value");
        BigFloat {
            mant: (self.mant.clone() << self.bits).sqrt(),
            bits: self.bits,
        }
    }

    pub fn cmp_value(&self, o: &Self) -> core::cmp::Ordering {
        debug_assert_eq!(self.bits, o.bits);
        self.mant.cmp(&o.mant)
    }

    /// Lossy conversion for diagnostics and table output.
    pub fn to_f64(&self) -> f64 {
        if self.mant.is_zero() {
            return 0.0;
        }
        let nbits = self.mant.bits();
        if nbits <= 1000 {
            return self.mant.to_f64().unwrap() * libm::exp2(-(self.bits as f64));
        }
        let shift = (nbits - 64) as u32;
        let top = (&self.mant >> shift).to_f64().unwrap();
        top * libm::exp2(shift as f64 - self.bits as f64)
    }

    /// Decimal rendering with the given number of fractional digits.
    pub fn to_decimal_string(&self, digits: u32) -> alloc::string::String {
        use alloc::string::String;
        let scale = BigInt::from(10u32).pow(digits);
        let scaled = round_div(&(&self.mant * &scale), &(BigInt::from(1) << self.bits));
        let negative = scaled.is_negative();
        let digits_str = scaled.abs().to_string();
        let mut s = String::new();
        if negative {
            s.push('-');
        }
        let d = digits as usize;
        if digits_str.len() <= d {
            s.push_str("0.");
            for _ in 0..(d - digits_str.len()) {
                s.push('0');
            }
            s.push_str(&digits_str);
        } else {
            let (int_part, frac_part) = digits_str.split_at(digits_str.len() - d);
            s.push_str(int_part);
            if d > 0 {
                s.push('.');
                s.push_str(frac_part);
            }
        }
        s
    }

    /// Nearest integer together with the absolute rounding residue.
    pub fn round_to_integer(&self) -> (BigInt, f64) {
        let half = BigInt::from(1) << (self.bits - 1);
        let nearest = (&self.mant + half) >> self.bits;
        let diff = &self.mant - (&nearest << self.bits);
        let residue = BigFloat {
            mant: diff,
            bits: self.bits,
        };
        (nearest, libm::fabs(residue.to_f64()))
    }
}

fn shift_round(v: &BigInt, bits: u32) -> BigInt {
    let half = BigInt::from(1) << (bits - 1);
    (v + half) >> bits
}

fn round_div(num: &BigInt, den: &BigInt) -> BigInt {
    // round to nearest, ties away from zero
    let (q, r) = num.div_rem(den);
    let r2: BigInt = r * 2;
    if r2.abs() >= den.abs() {
        if num.is_negative() ^ den.is_negative() {
            q - 1
        } else {
            q + 1
        }
    } else {
        q
    }
}

/// Internal series are evaluated with extra guard bits.
const SERIES_GUARD: u32 = 64;

/// Pi via Machin's formula `16 atan(1/5) - 4 atan(1/239)`.
pub fn pi(bits: u32) -> BigFloat {
    let w = bits + SERIES_GUARD;
    let a5 = atan_inv_integer(5, w);
    let a239 = atan_inv_integer(239, w);
    let p = &a5 * 16 - &a239 * 4;
    BigFloat {
        mant: shift_round(&p, SERIES_GUARD),
        bits,
    }
}

/// `atan(1/x)` at scale `2^w` for integer `x >= 2`.
fn atan_inv_integer(x: i64, w: u32) -> BigInt {
    let x2 = BigInt::from(x) * x;
    let mut term = (BigInt::from(1) << w) / x;
    let mut sum = term.clone();
    let mut k: i64 = 1;
    while !term.is_zero() {
        term = term / &x2;
        if term.is_zero() {
            break;
        }
        let contrib = &term / (2 * k + 1);
        if k % 2 == 1 {
            sum -= contrib;
        } else {
            sum += contrib;
        }
        k += 1;
    }
    sum
}

/// `ln 2 = 2 atanh(1/3)` at scale `2^w`.
fn ln2_scaled(w: u32) -> BigInt {
    let nine = BigInt::from(9);
    let mut term: BigInt = (BigInt::from(2) << w) / 3;
    let mut sum = term.clone();
    let mut k: i64 = 1;
    while !term.is_zero() {
        term = term / &nine;
        if term.is_zero() {
            break;
        }
        sum += &term / (2 * k + 1);
        k += 1;
    }
    sum
}

/// `exp(x)` for a real argument of moderate size.
pub fn exp(x: &BigFloat) -> BigFloat {
    let bits = x.bits;
    let w = bits + SERIES_GUARD;
    let ln2 = ln2_scaled(w);
    let m = x.mant.clone() << SERIES_GUARD;
    // n = round(x / ln2), r = x - n ln2 with |r| <= ln2/2
    let n = round_div(&m, &ln2);
    let r = &m - &n * &ln2;
    let mut term = BigInt::from(1) << w;
    let mut sum = term.clone();
    let mut k: i64 = 1;
    while !term.is_zero() {
        term = shift_round(&(&term * &r), w);
        term = round_div(&term, &BigInt::from(k));
        if term.is_zero() {
            break;
        }
        sum += &term;
        k += 1;
        assert!(k < 10_000, "exp series failed to terminate");
    }
    let n_i64 = n.to_i64().expect("exp argument out of range");
    let shift = SERIES_GUARD as i64 - n_i64;
    let mant = if shift >= 0 {
        shift_round(&sum, shift as u32)
    } else {
        sum << ((-shift) as u32)
    };
    BigFloat { mant, bits }
}

/// `(cos y, sin y)` with argument reduction modulo 2 pi.
pub fn cos_sin(y: &BigFloat) -> (BigFloat, BigFloat) {
    let bits = y.bits;
    let w = bits + SERIES_GUARD;
    let two_pi = {
        let p = pi(w + 32);
        shift_round(&(p.mant << 1), 32)
    };
    let m = y.mant.clone() << SERIES_GUARD;
    let n = round_div(&m, &two_pi);
    let r = &m - &n * &two_pi; // |r| <= pi
    let mut term = BigInt::from(1) << w; // r^k / k!
    let mut cos_sum = BigInt::zero();
    let mut sin_sum = BigInt::zero();
    let mut k: i64 = 0;
    loop {
        match k % 4 {
            0 => cos_sum += &term,
            1 => sin_sum += &term,
            2 => cos_sum -= &term,
            _ => sin_sum -= &term,
        }
        term = shift_round(&(&term * &r), w);
        term = round_div(&term, &BigInt::from(k + 1));
        if term.is_zero() {
            break;
        }
        k += 1;
        assert!(k < 10_000, "cos/sin series failed to terminate");
    }
    (
        BigFloat {
            mant: shift_round(&cos_sum, SERIES_GUARD),
            bits,
        },
        BigFloat {
            mant: shift_round(&sin_sum, SERIES_GUARD),
            bits,
        },
    )
}

/// Complex number over [`BigFloat`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl BigComplex {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        BigComplex { re, im }
    }

    pub fn zero(bits: u32) -> Self {
        BigComplex {
            re: BigFloat::zero(bits),
            im: BigFloat::zero(bits),
        }
    }

    pub fn from_i64(v: i64, bits: u32) -> Self {
        BigComplex {
            re: BigFloat::from_i64(v, bits),
            im: BigFloat::zero(bits),
        }
    }

    pub fn bits(&self) -> u32 {
        self.re.bits
    }

    pub fn add(&self, o: &Self) -> Self {
        BigComplex {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        BigComplex {
            re: self.re.sub(&o.re),
            im: self.im.sub(&o.im),
        }
    }

    pub fn neg(&self) -> Self {
        BigComplex {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        BigComplex {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }

    pub fn conj(&self) -> Self {
        BigComplex {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    pub fn norm_sqr(&self) -> BigFloat {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    pub fn div(&self, o: &Self) -> Self {
        let d = o.norm_sqr();
        let num = self.mul(&o.conj());
        BigComplex {
            re: num.re.div(&d),
            im: num.im.div(&d),
        }
    }

    pub fn scale(&self, k: &BigFloat) -> Self {
        BigComplex {
            re: self.re.mul(k),
            im: self.im.mul(k),
        }
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        BigComplex {
            re: self.re.mul_i64(k),
            im: self.im.mul_i64(k),
        }
    }

    pub fn abs(&self) -> BigFloat {
        self.norm_sqr().sqrt()
    }

    /// Integer power by binary exponentiation.
    pub fn powi(&self, e: u32) -> Self {
        let mut base = self.clone();
        let mut e = e;
        let mut acc = BigComplex::from_i64(1, self.bits());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

/// `e^{2 pi i z}` for complex `z = x + i y`: magnitude `e^{-2 pi y}` and
/// phase `2 pi x`.
pub fn exp_2pi_i(z: &BigComplex) -> BigComplex {
    let bits = z.bits();
    let two_pi = {
        let p = pi(bits + 32);
        BigFloat {
            mant: shift_round(&(p.mant << 1), 32),
            bits,
        }
    };
    let magnitude = exp(&two_pi.mul(&z.im).neg());
    let (c, s) = cos_sin(&two_pi.mul(&z.re));
    BigComplex {
        re: magnitude.mul(&c),
        im: magnitude.mul(&s),
    }
}

/// Round a value expected to be a real integer: checks the imaginary part
/// and the rounding residue against `10^-tol_digits`.
pub fn round_real_integer(z: &BigComplex, tol_digits: u32, what: &str) -> Result<(BigInt, f64)> {
    let tol = libm::pow(10.0, -(tol_digits as f64));
    let im = libm::fabs(z.im.to_f64());
    if !(im < tol) {
        return Err(Error::ResidueTooLarge {
            what: what.to_string(),
            residue_log10: libm::log10(im.max(f64::MIN_POSITIVE)) as i32,
        });
    }
    let (n, residue) = z.re.round_to_integer();
    if !(residue < tol) {
        return Err(Error::ResidueTooLarge {
            what: what.to_string(),
            residue_log10: libm::log10(residue.max(f64::MIN_POSITIVE)) as i32,
        });
    }
    Ok((n, residue.max(im)))
}
