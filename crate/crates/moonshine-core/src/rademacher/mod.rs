//! Multiplier systems, Bessel--Kloosterman sums, Hurwitz class numbers, and
//! the Rademacher coefficient formulas for the weight one-half forms
//! `Z_{N,psi}` with principal part `q^{-3}`.
//!
//! Convergence of these weight one-half sums is conditional and slow, so
//! every consumer certifies a value by requiring two successive cutoff
//! doublings to round to the same integer; the reported `tail_indicator`
//! (the oscillation of the partial sums over the last block) gives callers
//! an independent convergence diagnostic.

pub mod kloosterman;

use alloc::format;
use alloc::vec::Vec;

use num_rational::Ratio;

pub use kloosterman::{kloosterman_brute, C64};
use kloosterman::{factorize, kloosterman_psi0_factored, merge_factors, twist_shift, FactorSieve};

use crate::{Error, Result};

/// The multiplier system `psi_{N,v,h}(gamma) = psi_0(gamma) e(-v c d / (N h))`;
/// `(N, 0, 1)` is the plain theta multiplier `psi_0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MultiplierSystem {
    pub level: i64,
    pub v: i64,
    pub h: i64,
}

impl MultiplierSystem {
    pub fn new(level: i64, v: i64, h: i64) -> Self {
        assert!(level >= 1 && h >= 1);
        assert!(96 % h == 0, "h must divide 4 * 24");
        MultiplierSystem { level, v, h }
    }

    pub fn psi0_system(level: i64) -> Self {
        Self::new(level, 0, 1)
    }

    pub fn is_theta_multiplier(&self) -> bool {
        self.v == 0
    }
}

/// `psi_0(c, d) = (c/d) eps_d` for `c = 0 mod 4`, `d` odd and coprime to c.
pub fn psi0(c: i64, d: i64) -> Result<C64> {
    if c % 4 != 0 || d % 2 == 0 || num_integer::gcd(c, d) != 1 {
        return Err(Error::InvalidInput(format!(
            "psi0 needs c = 0 mod 4 and odd d coprime to c; got ({c}, {d})"
        )));
    }
    let sym = crate::bqf::kronecker(c, d) as f64;
    Ok(match d.rem_euclid(4) {
        1 => C64::new(sym, 0.0),
        _ => C64::new(0.0, sym),
    })
}

/// `psi_{N,v,h}(c, d) = psi_0(c, d) e(-v c d / (N h))`.
pub fn psi_twisted(ms: &MultiplierSystem, c: i64, d: i64) -> Result<C64> {
    let base = psi0(c, d)?;
    if ms.v == 0 {
        return Ok(base);
    }
    let den = ms.level * ms.h;
    let num = (-(ms.v as i128) * c as i128 * d as i128).rem_euclid(den as i128);
    Ok(base.mul(C64::unit(num as f64 / den as f64)))
}

/// `I_{1/2}(x) = sqrt(2 / (pi x)) sinh(x)`, the closed form of the Bessel
/// function at order one-half.
pub fn bessel_i_half(x: f64) -> f64 {
    assert!(x > 0.0);
    libm::sqrt(2.0 / (core::f64::consts::PI * x)) * libm::sinh(x)
}

/// Hurwitz--Kronecker class number `H(d)` (exact rational), by weighted
/// count of reduced forms.
pub fn hurwitz(d: i64) -> Ratio<i64> {
    crate::bqf::hurwitz_class_number(d)
}

/// One partial-sum evaluation of a Rademacher coefficient formula.
#[derive(Debug, Clone, Copy)]
pub struct RademacherEval {
    /// Largest modulus included (`c <= cutoff`, `c = 0 mod 4N`).
    pub cutoff: i64,
    /// Real part of the partial sum.
    pub estimate: f64,
    /// Imaginary residue of the partial sum (should be near zero).
    pub imag: f64,
    /// Oscillation (max minus min of the running real part) over the block
    /// of terms since the previous checkpoint.
    pub tail_indicator: f64,
    /// Smallest running estimate over the block.
    pub block_low: f64,
    /// Largest running estimate over the block.
    pub block_high: f64,
}

struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    fn new() -> Self {
        Kahan { sum: 0.0, comp: 0.0 }
    }

    fn add(&mut self, v: f64) {
        let y = v - self.comp;
        let t = self.sum + y;
        self.comp = (t - self.sum) - y;
        self.sum = t;
    }
}

/// Coefficient formula `A^{(1,3)}_{N,psi}(n)`: prefactor and weight per
/// modulus c.
///
/// For `n > 0`:
/// `pi sqrt(2) (3/n)^{1/4} (1-i) sum (1 + delta_odd(c/4)) K_psi(-3,n,c)/c I_{1/2}(4 pi sqrt(3n)/c)`;
/// for `n = 0` the weight is `c^{-3/2}` with prefactor `4 pi sqrt(3) (1-i)`.
fn term_weight(n: i64, c: i64) -> f64 {
    if n == 0 {
        libm::pow(c as f64, -1.5)
    } else {
        bessel_i_half(4.0 * core::f64::consts::PI * libm::sqrt(3.0 * n as f64) / c as f64)
            / c as f64
    }
}

fn prefactor(n: i64) -> C64 {
    let pi = core::f64::consts::PI;
    let scale = if n == 0 {
        4.0 * pi * libm::sqrt(3.0)
    } else {
        pi * libm::sqrt(2.0) * libm::pow(3.0 / n as f64, 0.25)
    };
    C64::new(scale, -scale) // scale * (1 - i)
}

/// Evaluate the partial sums of `A^{(1,3)}_{N,psi}(n)` at a list of cutoffs
/// (in units of `k = c / 4N`), in one streaming pass.
///
/// `n` must satisfy `n >= 0` and `n = 0, 1 mod 4`. Non-convergence is
/// reported through the tail indicators, never raised.
pub fn coefficient_checkpoints(
    ms: &MultiplierSystem,
    n: i64,
    k_checkpoints: &[i64],
) -> Vec<RademacherEval> {
    assert!(n >= 0 && n.rem_euclid(4) <= 1, "index must be 0,1 mod 4");
    let mut checkpoints: Vec<i64> = k_checkpoints.to_vec();
    checkpoints.sort_unstable();
    checkpoints.dedup();
    let k_max = *checkpoints.last().expect("at least one cutoff");
    let four_n = 4 * ms.level;
    let sieve = FactorSieve::new(k_max as usize + 1);
    let base_factors = factorize(four_n);
    let pref = prefactor(n);

    let mut re = Kahan::new();
    let mut im = Kahan::new();
    let mut out = Vec::with_capacity(checkpoints.len());
    let mut block_min = f64::INFINITY;
    let mut block_max = f64::NEG_INFINITY;
    let mut next_checkpoint = 0usize;
    for k in 1..=k_max {
        let c = four_n * k;
        let factors = merge_factors(&base_factors, &sieve.factorize(k));
        let shifted_n = n - twist_shift(c, ms.level, ms.v, ms.h);
        let kv = kloosterman_psi0_factored(-3, shifted_n, c, &factors);
        let delta = if (c / 4) % 2 == 1 { 2.0 } else { 1.0 };
        let w = delta * term_weight(n, c);
        re.add(kv.re * w);
        im.add(kv.im * w);
        let running = pref.mul(C64::new(re.sum, im.sum));
        block_min = block_min.min(running.re);
        block_max = block_max.max(running.re);
        if k == checkpoints[next_checkpoint] {
            out.push(RademacherEval {
                cutoff: c,
                estimate: running.re,
                imag: running.im,
                tail_indicator: block_max - block_min,
                block_low: block_min,
                block_high: block_max,
            });
            block_min = f64::INFINITY;
            block_max = f64::NEG_INFINITY;
            next_checkpoint += 1;
            if next_checkpoint >= checkpoints.len() {
                break;
            }
        }
    }
    out
}

/// Partial sum with a single cutoff (`cutoff` in units of the modulus `c`;
/// it is rounded down to a multiple of `4N`). The tail indicator measures
/// the oscillation over the last quarter of the summation range.
pub fn rademacher_coefficient(ms: &MultiplierSystem, n: i64, cutoff: i64) -> RademacherEval {
    let k = (cutoff / (4 * ms.level)).max(1);
    if k < 4 {
        return coefficient_checkpoints(ms, n, &[k])[0];
    }
    *coefficient_checkpoints(ms, n, &[k * 3 / 4, k])
        .last()
        .unwrap()
}

/// Level-one coefficient formula with the Hurwitz correction:
/// `A(n,3) = -24 delta_square(n) H(3) + (Bessel--Kloosterman sum)`.
pub fn level1_coefficient_bringmann(n: i64, cutoff: i64) -> RademacherEval {
    assert!(n > 0);
    let ms = MultiplierSystem::psi0_system(1);
    let mut eval = rademacher_coefficient(&ms, n, cutoff);
    let root = libm::sqrt(n as f64) as i64;
    if (root - 1..=root + 1).any(|r| r * r == n) {
        eval.estimate += -24.0 / 3.0; // -24 H(3) with H(3) = 1/3
    }
    eval
}

/// Certify a Rademacher value by doubling the cutoff until two successive
/// rounded estimates agree, starting from `base_k` terms and capping at
/// `max_k` (both in units of `k = c / 4N`). Returns the integer, the final
/// residue, and the cutoff at which agreement was reached.
pub fn certified_value(
    ms: &MultiplierSystem,
    n: i64,
    base_k: i64,
    max_k: i64,
) -> Result<(f64, f64, i64)> {
    let mut cuts = Vec::new();
    let mut k = base_k.max(1);
    while k <= max_k {
        cuts.push(k);
        k *= 2;
    }
    if cuts.len() < 2 {
        cuts.push(base_k.max(1) * 2);
    }
    let evals = coefficient_checkpoints(ms, n, &cuts);
    for pair in evals.windows(2) {
        let a = libm::round(pair[0].estimate);
        let b = libm::round(pair[1].estimate);
        if a == b {
            let residue = libm::fabs(pair[1].estimate - b);
            return Ok((b, residue, pair[1].cutoff));
        }
    }
    let last = evals.last().unwrap();
    Err(Error::Unconverged {
        what: format!(
            "A_{{{},{},{}}}({n}) at cutoff {}",
            ms.level, ms.v, ms.h, last.cutoff
        ),
        tail: last.tail_indicator,
    })
}
