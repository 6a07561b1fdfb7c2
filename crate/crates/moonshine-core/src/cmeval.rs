//! Arbitrary-precision evaluation of eta quotients and hauptmoduls at CM
//! points, and character-twisted traces of singular moduli.
//!
//! A positive definite form `Q = [a, b, c]` of discriminant `-d` has the
//! unique upper-half-plane root `alpha_Q = (-b + i sqrt(d)) / (2a)`; traces
//! sum hauptmodul values over the `Gamma_0(N)`-classes with `a = 0 mod N`,
//! weighted by genus characters and stabilizer orders. Dividing a twisted
//! trace by `sqrt(n)` recovers the integer Fourier coefficients of the
//! weight one-half forms, which is asserted by rounding-residue checks.

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::bqf::{self, Bqf};
use crate::precision::{cos_sin, exp_2pi_i, pi, BigComplex, BigFloat, PrecisionContext};
use crate::qseries;
use crate::{Error, Result};

/// Hard cap on q-series terms during evaluation; reaching it means the
/// imaginary part is too small for the requested precision.
const MAX_TERMS: i64 = 500_000;

/// CM point attached to a positive definite form: exact rational real part
/// `-b / 2a` and imaginary part `sqrt(d) / 2a`.
#[derive(Debug, Clone)]
pub struct CmPoint {
    pub form: Bqf,
}

impl CmPoint {
    pub fn new(form: Bqf) -> Self {
        assert!(form.is_positive_definite());
        CmPoint { form }
    }

    /// The root as a complex number at the context precision.
    pub fn to_complex(&self, ctx: &PrecisionContext) -> BigComplex {
        let bits = ctx.bits();
        let d = -self.form.discriminant();
        let re = BigFloat::from_ratio(
            &BigInt::from(-self.form.b),
            &BigInt::from(2 * self.form.a),
            bits,
        );
        let im = BigFloat::from_i64(d, bits)
            .sqrt()
            .div_i64(2 * self.form.a);
        BigComplex::new(re, im)
    }
}

/// Number of q-power terms needed so the tail is below the working
/// precision at this imaginary part.
fn terms_needed(tau: &BigComplex, ctx: &PrecisionContext) -> Result<i64> {
    let im = tau.im.to_f64();
    if !(im > 0.0) {
        return Err(Error::PrecisionInfeasible(
            "evaluation point is not in the upper half plane".to_string(),
        ));
    }
    let decimal = (ctx.digits + ctx.guard) as f64 + 10.0;
    let n = decimal * core::f64::consts::LN_10 / (2.0 * core::f64::consts::PI * im);
    let n = n as i64 + 8;
    if n > MAX_TERMS {
        return Err(Error::PrecisionInfeasible(format!(
            "imaginary part {im:.3e} needs {n} terms"
        )));
    }
    Ok(n)
}

/// Translate by an integer so the real part lies in (-1/2, 1/2]; returns the
/// normalized point and the translation amount.
fn normalize_re(tau: &BigComplex) -> (BigComplex, i64) {
    let re = tau.re.to_f64();
    let k = libm::floor(re + 0.5) as i64;
    if k == 0 {
        return (tau.clone(), 0);
    }
    let bits = tau.bits();
    let shifted = BigComplex::new(tau.re.sub(&BigFloat::from_i64(k, bits)), tau.im.clone());
    (shifted, k)
}

/// Dedekind eta via the product `q^{1/24} prod (1 - q^n)`, truncated when
/// `|q|^n` falls below the working precision.
pub fn eval_eta(tau: &BigComplex, ctx: &PrecisionContext) -> Result<BigComplex> {
    let bits = ctx.bits();
    let (tau0, k) = normalize_re(tau);
    let n_terms = terms_needed(&tau0, ctx)?;
    let q = exp_2pi_i(&tau0);
    // q^{1/24} from tau directly (principal branch)
    let prefactor = exp_2pi_i(&BigComplex::new(
        tau0.re.div_i64(24),
        tau0.im.div_i64(24),
    ));
    let mut acc = BigComplex::from_i64(1, bits);
    let mut qn = BigComplex::from_i64(1, bits);
    let one = BigComplex::from_i64(1, bits);
    for _ in 1..=n_terms {
        qn = qn.mul(&q);
        acc = acc.mul(&one.sub(&qn));
    }
    let eta0 = prefactor.mul(&acc);
    if k == 0 {
        return Ok(eta0);
    }
    // eta(tau) = e(k/24) eta(tau - k)
    let (c, s) = cos_sin(&pi(bits).mul_i64(k).div_i64(12));
    Ok(eta0.mul(&BigComplex::new(c, s)))
}

/// `prod (1 - q^n)` at an explicit q (shared by Delta and the level-one j).
fn euler_product_at(q: &BigComplex, n_terms: i64, bits: u32) -> BigComplex {
    let mut acc = BigComplex::from_i64(1, bits);
    let mut qn = BigComplex::from_i64(1, bits);
    let one = BigComplex::from_i64(1, bits);
    for _ in 1..=n_terms {
        qn = qn.mul(q);
        acc = acc.mul(&one.sub(&qn));
    }
    acc
}

/// `E4(tau) = 1 + 240 sum sigma_3(n) q^n` evaluated at an explicit q.
fn e4_at(q: &BigComplex, n_terms: i64, bits: u32) -> BigComplex {
    // sieve sigma_3 up to n_terms
    let n = n_terms as usize;
    let mut sigma3 = alloc::vec![0i128; n + 1];
    for d in 1..=n {
        let d3 = (d as i128).pow(3);
        let mut m = d;
        while m <= n {
            sigma3[m] += d3;
            m += d;
        }
    }
    let mut acc = BigComplex::from_i64(1, bits);
    let mut qn = BigComplex::from_i64(1, bits);
    for s3 in sigma3.iter().skip(1) {
        qn = qn.mul(q);
        let coef = BigFloat::from_bigint(&(BigInt::from(*s3) * 240), bits);
        acc = acc.add(&qn.scale(&coef));
    }
    acc
}

/// Hauptmodul value `T_N(tau)` with the vanishing-constant normalization.
///
/// Level 1 evaluates `J = E4^3 / Delta - 744`; other supported levels use
/// the eta quotients with their additive constants.
pub fn eval_hauptmodul(level: u32, tau: &BigComplex, ctx: &PrecisionContext) -> Result<BigComplex> {
    let bits = ctx.bits();
    if level == 1 {
        let (tau0, _) = normalize_re(tau);
        let n_terms = terms_needed(&tau0, ctx)?;
        let q = exp_2pi_i(&tau0);
        let e4 = e4_at(&q, n_terms, bits);
        let delta = q.mul(&euler_product_at(&q, n_terms, bits).powi(24));
        let j = e4.powi(3).div(&delta);
        return Ok(j.sub(&BigComplex::from_i64(744, bits)));
    }
    let (num, den, constant) =
        qseries::hauptmodul_eta_quotient(level).ok_or(Error::UnsupportedLevel(level))?;
    let mut value = BigComplex::from_i64(1, bits);
    for (m, e) in num {
        let scaled = BigComplex::new(tau.re.mul_i64(*m), tau.im.mul_i64(*m));
        let eta = eval_eta(&scaled, ctx)?;
        value = value.mul(&eta.powi(*e));
    }
    for (m, e) in den {
        let scaled = BigComplex::new(tau.re.mul_i64(*m), tau.im.mul_i64(*m));
        let eta = eval_eta(&scaled, ctx)?;
        value = value.div(&eta.powi(*e));
    }
    Ok(value.add(&BigComplex::from_i64(constant, bits)))
}

/// Twisted trace of singular moduli
/// `Tr_{N,D1}(T_N; D2) = sum chi_{D1}(Q) T_N(alpha_Q) / omega_Q` over the
/// classes of discriminant `D1 D2` with `a = 0 mod N`.
///
/// Requires `D1 D2 < 0` and `D2 = 0, 1 mod 4`. Returns the real part; the
/// imaginary residue must stay below `10^-guard` or an error is raised.
pub fn trace_singular_moduli(
    level: u32,
    d1: i64,
    d2: i64,
    ctx: &PrecisionContext,
) -> Result<BigFloat> {
    if d1 * d2 >= 0 {
        return Err(Error::InvalidInput(
            "trace requires D1 * D2 < 0".to_string(),
        ));
    }
    if d2.rem_euclid(4) > 1 {
        return Err(Error::InvalidInput("D2 must be 0 or 1 mod 4".to_string()));
    }
    let bits = ctx.bits();
    let d = (d1 * d2).abs();
    let reps = bqf::class_reps(d, level as i64, true);
    let mut acc = BigComplex::zero(bits);
    for rep in &reps {
        let chi = bqf::genus_character(&rep.form, d1)?;
        if chi == 0 {
            continue;
        }
        let alpha = CmPoint::new(rep.form).to_complex(ctx);
        let value = eval_hauptmodul(level, &alpha, ctx)?;
        let term = value.scale_i64(chi);
        let term = if rep.stab_order > 1 {
            BigComplex::new(
                term.re.div_i64(rep.stab_order),
                term.im.div_i64(rep.stab_order),
            )
        } else {
            term
        };
        acc = acc.add(&term);
    }
    let tol = libm::pow(10.0, -(ctx.guard as f64));
    let im = libm::fabs(acc.im.to_f64());
    if !(im < tol) {
        return Err(Error::ResidueTooLarge {
            what: format!("Im Tr_{{{level},{d1}}}(T;{d2})"),
            residue_log10: libm::log10(im) as i32,
        });
    }
    Ok(acc.re)
}

/// Fourier coefficient `A_{N,psi0}(n) = Tr_{N,-3}(T_N; n) / sqrt(n)` for
/// `n > 0` not a perfect square, rounded to the nearest integer with a
/// certified residue below `10^{-guard/2}`.
pub fn trace_coefficient(level: u32, n: i64, ctx: &PrecisionContext) -> Result<(BigInt, f64)> {
    if !qseries::HAUPTMODUL_LEVELS.contains(&level) {
        return Err(Error::UnsupportedLevel(level));
    }
    if n <= 0 || n.rem_euclid(4) > 1 {
        return Err(Error::InvalidInput(format!(
            "coefficient index {n} is not positive and 0,1 mod 4"
        )));
    }
    let isq = libm::sqrt(n as f64) as i64;
    if (isq - 1..=isq + 1).any(|r| r * r == n) {
        return Err(Error::InvalidInput(format!(
            "square index {n} is not determined by the trace route"
        )));
    }
    let tr = trace_singular_moduli(level, -3, n, ctx)?;
    let bits = ctx.bits();
    let sqrt_n = BigFloat::from_i64(n, bits).sqrt();
    let value = tr.div(&sqrt_n);
    let (int, residue) = value.round_to_integer();
    let tol = libm::pow(10.0, -((ctx.guard / 2) as f64));
    if !(residue < tol) {
        return Err(Error::ResidueTooLarge {
            what: format!("A_{{{level}}}({n})"),
            residue_log10: libm::log10(residue.max(f64::MIN_POSITIVE)) as i32,
        });
    }
    Ok((int, residue))
}

/// All class representatives entering the trace at this level and index,
/// with their genus character values (diagnostic view used by the CLI).
pub fn trace_support(level: u32, d1: i64, d2: i64) -> Result<Vec<(Bqf, i64, i64)>> {
    let d = (d1 * d2).abs();
    bqf::class_reps(d, level as i64, true)
        .into_iter()
        .map(|rep| Ok((rep.form, rep.stab_order, bqf::genus_character(&rep.form, d1)?)))
        .collect()
}
