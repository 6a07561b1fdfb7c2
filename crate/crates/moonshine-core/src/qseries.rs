//! Exact rational q-series: sparse Laurent series with explicit truncation
//! windows, and the specific modular forms needed downstream (theta, eta,
//! E4, E10, Delta, the weight one-half form f3 and F3 = 2 f3 + 248 theta,
//! genus-zero hauptmoduls, and the cube-root-of-j product check).
//!
//! All arithmetic here is exact; no floating point enters this module.
//! Truncation bookkeeping is pessimistic: a product only claims the
//! coefficient window that is provably correct from its factors.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::{Error, Result};

/// Shorthand for the exact coefficient ring.
pub type Rat = BigRational;

fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Sparse Laurent series in q with exact rational coefficients.
///
/// Coefficients are known exactly for every exponent `e` with
/// `offset <= e < trunc`; exponents below `offset` are exactly zero and
/// exponents at or above `trunc` are unknown. Only nonzero coefficients are
/// stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalSeries {
    offset: i64,
    trunc: i64,
    coeffs: BTreeMap<i64, Rat>,
}

impl RationalSeries {
    /// The zero series known through exponents `< trunc`.
    pub fn zero(trunc: i64) -> Self {
        RationalSeries {
            offset: 0,
            trunc,
            coeffs: BTreeMap::new(),
        }
    }

    /// The constant series 1.
    pub fn one(trunc: i64) -> Self {
        Self::monomial(0, Rat::one(), trunc)
    }

    /// The series `c * q^e`.
    pub fn monomial(e: i64, c: Rat, trunc: i64) -> Self {
        assert!(e < trunc, "monomial exponent outside window");
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(e, c);
        }
        RationalSeries {
            offset: e.min(0),
            trunc,
            coeffs,
        }
    }

    /// Build from explicit (exponent, coefficient) pairs.
    pub fn from_terms(terms: &[(i64, Rat)], trunc: i64) -> Self {
        let mut s = Self::zero(trunc);
        for (e, c) in terms {
            assert!(*e < trunc);
            s.offset = s.offset.min(*e);
            if !c.is_zero() {
                s.coeffs.insert(*e, c.clone());
            }
        }
        s
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn trunc(&self) -> i64 {
        self.trunc
    }

    /// The coefficient of `q^e`, or `None` when `e` lies outside the known
    /// window.
    pub fn coeff(&self, e: i64) -> Option<Rat> {
        if e >= self.trunc {
            return None;
        }
        Some(self.coeffs.get(&e).cloned().unwrap_or_else(Rat::zero))
    }

    /// The coefficient of `q^e` as an `i64`; panics if unknown or not an
    /// integer that fits. Convenient in tests and table assembly.
    pub fn coeff_i64(&self, e: i64) -> i64 {
        let c = self.coeff(e).expect("coefficient outside known window");
        assert!(c.is_integer(), "coefficient of q^{e} is not an integer: {c}");
        let i = c.to_integer();
        i64::try_from(&i).expect("coefficient does not fit in i64")
    }

    /// The coefficient of `q^e` as an exact `BigInt`; panics if unknown or
    /// non-integral.
    pub fn coeff_int(&self, e: i64) -> BigInt {
        let c = self.coeff(e).expect("coefficient outside known window");
        assert!(c.is_integer(), "coefficient of q^{e} is not an integer: {c}");
        c.to_integer()
    }

    /// Iterate over the stored (exponent, coefficient) pairs in order.
    pub fn iter(&self) -> impl Iterator<Item = (&i64, &Rat)> {
        self.coeffs.iter()
    }

    /// True when every known coefficient is zero.
    pub fn is_zero_series(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn insert(&mut self, e: i64, c: Rat) {
        if c.is_zero() {
            self.coeffs.remove(&e);
        } else {
            self.coeffs.insert(e, c);
        }
    }

    /// Restrict the known window to exponents `< new_trunc`.
    pub fn truncate_to(&self, new_trunc: i64) -> Self {
        assert!(
            new_trunc <= self.trunc,
            "cannot extend a window by truncation"
        );
        let mut s = self.clone();
        s.trunc = new_trunc;
        s.coeffs = s.coeffs.into_iter().filter(|(e, _)| *e < new_trunc).collect();
        s
    }

    pub fn add(&self, other: &Self) -> Self {
        let trunc = self.trunc.min(other.trunc);
        let mut out = RationalSeries {
            offset: self.offset.min(other.offset),
            trunc,
            coeffs: BTreeMap::new(),
        };
        for (e, c) in self.coeffs.iter().chain(other.coeffs.iter()) {
            if *e >= trunc {
                continue;
            }
            let cur = out.coeffs.entry(*e).or_insert_with(Rat::zero);
            *cur += c;
        }
        out.coeffs.retain(|_, c| !c.is_zero());
        out
    }

    pub fn neg(&self) -> Self {
        let mut s = self.clone();
        for c in s.coeffs.values_mut() {
            *c = -c.clone();
        }
        s
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, k: &Rat) -> Self {
        let mut s = self.clone();
        if k.is_zero() {
            s.coeffs.clear();
            return s;
        }
        for c in s.coeffs.values_mut() {
            *c *= k;
        }
        s
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        self.scale(&rat_int(k))
    }

    /// Multiply by `q^k` (shifts every exponent and the window by `k`).
    pub fn shift(&self, k: i64) -> Self {
        RationalSeries {
            offset: self.offset + k,
            trunc: self.trunc + k,
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    /// Product, with the tightest provable truncation window
    /// `min(self.trunc + other.offset, other.trunc + self.offset)`.
    pub fn mul(&self, other: &Self) -> Self {
        let trunc = (self.trunc + other.offset).min(other.trunc + self.offset);
        let mut out = RationalSeries {
            offset: self.offset + other.offset,
            trunc,
            coeffs: BTreeMap::new(),
        };
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                let e = e1 + e2;
                if e >= trunc {
                    break;
                }
                let cur = out.coeffs.entry(e).or_insert_with(Rat::zero);
                *cur += c1 * c2;
            }
        }
        out.coeffs.retain(|_, c| !c.is_zero());
        out
    }

    /// Integer power by repeated multiplication (`n >= 1`).
    pub fn pow(&self, n: u32) -> Self {
        assert!(n >= 1, "pow expects a positive exponent");
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// The operator `D = q d/dq` (normalized derivative).
    pub fn derivative(&self) -> Self {
        let mut s = self.clone();
        let mut out = BTreeMap::new();
        for (e, c) in s.coeffs.iter() {
            let d = c * rat_int(*e);
            if !d.is_zero() {
                out.insert(*e, d);
            }
        }
        s.coeffs = out;
        s
    }

    /// Formal substitution `q -> q^m` for `m >= 1`.
    pub fn substitute_power(&self, m: i64) -> Self {
        assert!(m >= 1);
        RationalSeries {
            offset: self.offset * m,
            // exponents e*m with e < trunc are known, and every non-multiple
            // of m below that is known to vanish
            trunc: m * (self.trunc - 1) + 1,
            coeffs: self
                .coeffs
                .iter()
                .map(|(e, c)| (e * m, c.clone()))
                .collect(),
        }
    }

    /// Multiplicative inverse. The series must have an invertible leading
    /// term `c_v q^v`; the result has offset `-v` and window `trunc - 2v`.
    pub fn invert(&self) -> Self {
        let v = *self
            .coeffs
            .keys()
            .next()
            .expect("cannot invert the zero series");
        let lead = self.coeffs[&v].clone();
        let order = self.trunc - v; // unit part known to this many terms
        assert!(order > 0, "no known terms to invert");
        // unit u with u[0] = lead, want w with u*w = 1
        let mut w: Vec<Rat> = Vec::with_capacity(order as usize);
        let inv_lead = Rat::one() / lead;
        w.push(inv_lead.clone());
        for k in 1..order {
            // w[k] = -inv_lead * sum_{j=1..=k} u[j] w[k-j]
            let mut s = Rat::zero();
            for j in 1..=k {
                if let Some(uj) = self.coeffs.get(&(v + j)) {
                    s += uj * &w[(k - j) as usize];
                }
            }
            w.push(-s * &inv_lead);
        }
        let mut coeffs = BTreeMap::new();
        for (k, c) in w.into_iter().enumerate() {
            if !c.is_zero() {
                coeffs.insert(k as i64 - v, c);
            }
        }
        RationalSeries {
            offset: -v,
            trunc: self.trunc - 2 * v,
            coeffs,
        }
    }

    /// Exact division `self / other` via `other.invert()`.
    pub fn div(&self, other: &Self) -> Self {
        self.mul(&other.invert())
    }

    /// `(1 - q^n)^e` for an arbitrary integer exponent `e`, expanded through
    /// the window `< trunc` with exact binomial coefficients.
    pub fn binomial_power(n: i64, e: &BigInt, trunc: i64) -> Self {
        assert!(n >= 1);
        let mut s = Self::zero(trunc);
        let mut coef = Rat::one();
        let mut j: i64 = 0;
        loop {
            let exp = n * j;
            if exp >= trunc {
                break;
            }
            // (-1)^j binom(e, j)
            let c = if j % 2 == 0 { coef.clone() } else { -coef.clone() };
            s.insert(exp, c);
            // binom(e, j+1) = binom(e, j) * (e - j) / (j + 1)
            coef *= Rat::new(e - BigInt::from(j), BigInt::from(j + 1));
            if coef.is_zero() {
                break;
            }
            j += 1;
        }
        s
    }

    /// Serialize nonzero coefficients as `exponent<TAB>numerator/denominator`
    /// lines, one per term, in increasing exponent order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (e, c) in &self.coeffs {
            out.push_str(&format!("{}\t{}/{}\n", e, c.numer(), c.denom()));
        }
        out
    }

    /// Parse the format produced by [`Self::to_text`]; the truncation window
    /// is supplied by the caller.
    pub fn from_text(text: &str, trunc: i64) -> Result<Self> {
        let mut s = Self::zero(trunc);
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (e_str, c_str) = line
                .split_once('\t')
                .ok_or_else(|| Error::Parse(format!("bad series line: {line}")))?;
            let e: i64 = e_str
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent: {e_str}")))?;
            let (num, den) = c_str
                .split_once('/')
                .ok_or_else(|| Error::Parse(format!("bad coefficient: {c_str}")))?;
            let num: BigInt = num
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad numerator: {num}")))?;
            let den: BigInt = den
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad denominator: {den}")))?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".to_string()));
            }
            s.offset = s.offset.min(e);
            s.insert(e, Rat::new(num, den));
        }
        Ok(s)
    }
}

/// A series together with an overall factor `q^{num/den}`, used for eta
/// (den 24), theta at scaled arguments (integer), and the cube root of j
/// (den 3).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionalPower {
    pub series: RationalSeries,
    pub prefactor_num: i64,
    pub prefactor_den: i64,
}

impl FractionalPower {
    pub fn new(series: RationalSeries, num: i64, den: i64) -> Self {
        assert!(den > 0);
        FractionalPower {
            series,
            prefactor_num: num,
            prefactor_den: den,
        }
    }
}

/// Jacobi theta function `theta(tau) = sum_n q^{n^2}`.
///
/// The coefficient of `q^m` is 2 when `m` is a positive perfect square,
/// 1 at `m = 0`, and 0 otherwise.
pub fn theta_series(trunc: i64) -> RationalSeries {
    assert!(trunc >= 1);
    let mut s = RationalSeries::zero(trunc);
    s.insert(0, Rat::one());
    let mut n: i64 = 1;
    while n * n < trunc {
        s.insert(n * n, rat_int(2));
        n += 1;
    }
    s
}

/// `theta(m^2 tau)` through the same window.
pub fn theta_scaled(m: i64, trunc: i64) -> RationalSeries {
    assert!(m >= 1);
    let mut s = RationalSeries::zero(trunc);
    s.insert(0, Rat::one());
    let mut n: i64 = 1;
    while let Some(e) = (n * n).checked_mul(m * m) {
        if e >= trunc {
            break;
        }
        s.insert(e, rat_int(2));
        n += 1;
    }
    s
}

/// Euler product `prod_{n>=1} (1 - q^n)` expanded exactly.
pub fn euler_product(trunc: i64) -> RationalSeries {
    assert!(trunc >= 1);
    let mut acc = RationalSeries::one(trunc);
    for n in 1..trunc {
        let factor = RationalSeries::from_terms(&[(0, Rat::one()), (n, -Rat::one())], trunc);
        acc = acc.mul(&factor);
    }
    acc
}

/// Dedekind eta: `q^{1/24} prod (1 - q^n)` as a fractional-power series.
pub fn eta_series(trunc: i64) -> FractionalPower {
    FractionalPower::new(euler_product(trunc), 1, 24)
}

/// Weight ten Eisenstein series `E10 = 1 - 264 sum sigma_9(n) q^n`.
pub fn eisenstein_e10(trunc: i64) -> RationalSeries {
    assert!(trunc >= 1);
    let mut s = RationalSeries::one(trunc);
    for n in 1..trunc {
        let c = -264 * sigma(n, 9);
        s.insert(n, Rat::from_integer(c));
    }
    s
}

/// Weight four Eisenstein series `E4 = 1 + 240 sum sigma_3(n) q^n`.
pub fn eisenstein_e4(trunc: i64) -> RationalSeries {
    assert!(trunc >= 1);
    let mut s = RationalSeries::one(trunc);
    for n in 1..trunc {
        let c = 240 * sigma(n, 3);
        s.insert(n, Rat::from_integer(c));
    }
    s
}

/// Divisor power sum `sigma_k(n)`.
fn sigma(n: i64, k: u32) -> BigInt {
    let mut s = BigInt::zero();
    for d in 1..=n {
        if n % d == 0 {
            s += BigInt::from(d).pow(k);
        }
    }
    s
}

/// The weight twelve cusp form `Delta = q prod (1 - q^n)^24`.
pub fn delta_series(trunc: i64) -> RationalSeries {
    assert!(trunc >= 2);
    euler_product(trunc - 1).pow(24).shift(1)
}

/// First Rankin--Cohen bracket `[f, g]_1 = k f Dg - l g Df` for forms of
/// weights `k` and `l` (half-integral weights are allowed).
pub fn rankin_cohen_1(f: &RationalSeries, k: &Rat, g: &RationalSeries, l: &Rat) -> RationalSeries {
    let left = f.mul(&g.derivative()).scale(k);
    let right = g.mul(&f.derivative()).scale(l);
    left.sub(&right)
}

/// The form `f3 = -(1/20) ( [theta, E10(4 tau)]_1 / Delta(4 tau) + 608 theta )`,
/// with Fourier expansion `q^{-3} + sum_{n>0} A(n,3) q^n`.
///
/// Coefficients are integers supported on `n = 0, 1 mod 4`, with `A(0,3) = 0`.
pub fn f3_series(trunc: i64) -> RationalSeries {
    assert!(trunc >= 1);
    let m = trunc + 8; // window margin consumed by the division below
    let theta = theta_series(m);
    let e10_4 = eisenstein_e10((m + 3) / 4 + 1).substitute_power(4);
    let delta_4 = delta_series((m + 3) / 4 + 2).substitute_power(4);
    let half = Rat::new(BigInt::one(), BigInt::from(2));
    let bracket = rankin_cohen_1(&theta, &half, &e10_4, &rat_int(10));
    let ratio = bracket.div(&delta_4);
    let f3 = ratio
        .add(&theta.scale_i64(608))
        .scale(&Rat::new(BigInt::from(-1), BigInt::from(20)));
    assert!(f3.trunc() >= trunc, "window bookkeeping error in f3");
    f3.truncate_to(trunc)
}

/// `F3 = 2 f3 + 248 theta`, the form whose coefficients carry the
/// supermodule structure.
pub fn f3_cal_series(trunc: i64) -> RationalSeries {
    let f3 = f3_series(trunc);
    let theta = theta_series(trunc);
    f3.scale_i64(2).add(&theta.scale_i64(248))
}

/// The inner q-series of `j(tau)^{1/3} = q^{-1/3} (inner)`, computed from
/// `E4 / Delta^{1/3} = q^{-1/3} E4 prod (1 - q^n)^{-8}`.
pub fn j_cube_root(trunc: i64) -> FractionalPower {
    assert!(trunc >= 1);
    let e4 = eisenstein_e4(trunc);
    let p8_inv = euler_product(trunc).pow(8).invert();
    FractionalPower::new(e4.mul(&p8_inv).truncate_to(trunc), -1, 3)
}

/// Outcome of the Borcherds product comparison.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BorcherdsCheck {
    Pass { through: i64 },
    Mismatch { exponent: i64, product: Rat, direct: Rat },
}

/// Verify the Borcherds lift of f3: the product
/// `q^{-1/3} prod (1 - q^n)^{A(n^2,3)}` must equal `j^{1/3}`.
///
/// Equivalently (after clearing `q^{-1/3}` and `Delta^{1/3}`),
/// `prod (1 - q^n)^{A(n^2,3) + 8} = E4`, which is checked coefficientwise
/// through `q^{trunc-1}`. On failure the first disagreeing exponent is
/// reported.
pub fn borcherds_product_check(trunc: i64) -> BorcherdsCheck {
    assert!(trunc >= 4);
    let nmax = trunc - 1;
    let f3 = f3_series(nmax * nmax + 1);
    let mut product = RationalSeries::one(trunc);
    for n in 1..=nmax {
        let a = f3.coeff_int(n * n) + 8;
        product = product.mul(&RationalSeries::binomial_power(n, &a, trunc));
    }
    let e4 = eisenstein_e4(trunc);
    for e in 0..trunc {
        let lhs = product.coeff(e).unwrap();
        let rhs = e4.coeff(e).unwrap();
        if lhs != rhs {
            return BorcherdsCheck::Mismatch {
                exponent: e,
                product: lhs,
                direct: rhs,
            };
        }
    }
    BorcherdsCheck::Pass { through: nmax }
}

/// Eta-quotient data for the genus-zero hauptmoduls: numerator factors,
/// denominator factors (as `(argument multiplier, power)`), and the additive
/// constant that cancels the constant term.
pub fn hauptmodul_eta_quotient(level: u32) -> Option<(&'static [(i64, u32)], &'static [(i64, u32)], i64)> {
    let data: (&[(i64, u32)], &[(i64, u32)], i64) = match level {
        2 => (&[(1, 24)], &[(2, 24)], 24),
        3 => (&[(1, 12)], &[(3, 12)], 12),
        4 => (&[(1, 8)], &[(4, 8)], 8),
        5 => (&[(1, 6)], &[(5, 6)], 6),
        6 => (&[(1, 5), (3, 1)], &[(2, 1), (6, 5)], 5),
        7 => (&[(1, 4)], &[(7, 4)], 4),
        8 => (&[(1, 4), (4, 2)], &[(2, 2), (8, 4)], 4),
        9 => (&[(1, 3)], &[(9, 3)], 3),
        10 => (&[(1, 3), (5, 1)], &[(2, 1), (10, 3)], 3),
        12 => (&[(1, 3), (4, 1), (6, 2)], &[(2, 2), (3, 1), (12, 3)], 3),
        13 => (&[(1, 2)], &[(13, 2)], 2),
        16 => (&[(1, 2), (8, 1)], &[(2, 1), (16, 2)], 2),
        18 => (&[(1, 2), (6, 1), (9, 1)], &[(2, 1), (3, 1), (18, 2)], 2),
        25 => (&[(1, 1)], &[(25, 1)], 1),
        _ => return None,
    };
    Some(data)
}

/// Levels with a genus-zero `Gamma_0(N)` hauptmodul available here.
pub const HAUPTMODUL_LEVELS: [u32; 15] = [1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 13, 16, 18, 25];

/// q-expansion of the normalized hauptmodul `T_N = q^{-1} + 0 + O(q)`.
///
/// Level 1 returns `J = j - 744`; other supported levels are eta quotients
/// with the constant term removed.
pub fn hauptmodul_qexp(level: u32, trunc: i64) -> Result<RationalSeries> {
    if level == 1 {
        // j = E4^3 / Delta = q^{-1} E4^3 prod (1-q^n)^{-24}
        let w = trunc + 1;
        let e4_cubed = eisenstein_e4(w).pow(3);
        let inv = euler_product(w).pow(24).invert();
        let j = e4_cubed.mul(&inv).shift(-1);
        let jj = j.truncate_to(trunc);
        return Ok(jj.sub(&RationalSeries::monomial(0, rat_int(744), trunc)));
    }
    let (num, den, constant) =
        hauptmodul_eta_quotient(level).ok_or(Error::UnsupportedLevel(level))?;
    // Window: each eta factor is exact to high order; the binding constraint
    // is the n=1 factor, so work at trunc + 1 and shift by the q-exponent.
    let w = trunc + 2;
    let mut series = RationalSeries::one(w);
    let mut q_exponent_24: i64 = 0; // 24 * (exponent of the overall q power)
    for (m, e) in num {
        let p = euler_product((w + m - 1) / m + 1).substitute_power(*m);
        for _ in 0..*e {
            series = series.mul(&p);
        }
        q_exponent_24 += m * (*e as i64);
    }
    for (m, e) in den {
        let p = euler_product((w + m - 1) / m + 1)
            .substitute_power(*m)
            .invert();
        for _ in 0..*e {
            series = series.mul(&p);
        }
        q_exponent_24 -= m * (*e as i64);
    }
    assert!(
        q_exponent_24 % 24 == 0,
        "eta quotient exponent is not integral"
    );
    let shift = q_exponent_24 / 24;
    assert_eq!(shift, -1, "hauptmodul quotient must have leading power q^-1");
    let t = series.shift(shift).truncate_to(trunc);
    let t = t.add(&RationalSeries::monomial(0, rat_int(constant), trunc));
    let c0 = t.coeff(0).expect("constant term in window");
    assert!(
        c0.is_zero(),
        "hauptmodul constant term did not cancel at level {level}: {c0}"
    );
    Ok(t)
}
