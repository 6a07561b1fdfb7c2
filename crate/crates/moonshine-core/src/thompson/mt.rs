//! Assembly of the McKay--Thompson series `F_{3,[g]}` from the weight
//! one-half forms `Z_{N,psi}`:
//!
//! `F_{3,[g]} = 2 Z_{o(g),psi} + sum kappa_{m,g} theta(m^2 tau)`, with the
//! two exceptional identifications `F_{3,4B} = -2 (Z_4 - 2 Z_8)` and
//! `F_{3,8A} = -2 (Z_8 - 2 Z_16)`.
//!
//! Coefficients of `Z` at non-square exponents come from traces of singular
//! moduli whenever the multiplier is the plain theta multiplier and the
//! level is genus zero; everything else (constants, square exponents,
//! twisted multipliers, positive-genus levels) comes from the Rademacher
//! formulas, certified by two successive cutoff doublings rounding to the
//! same integer.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::{ConjugacyClass, ThompsonData};
use crate::cmeval;
use crate::precision::PrecisionContext;
use crate::qseries;
use crate::rademacher::{coefficient_checkpoints, MultiplierSystem};
use crate::{Error, Result};

/// Which computation produced a coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Fixed by the principal part / theta corrections alone.
    Exact,
    /// Trace of singular moduli (rounding residue far below 1e-6).
    Trace,
    /// Rademacher sum certified by doubling agreement.
    Rademacher,
}

impl Route {
    pub fn label(&self) -> &'static str {
        match self {
            Route::Exact => "exact",
            Route::Trace => "trace",
            Route::Rademacher => "rademacher",
        }
    }
}

/// Options for the series assembly.
#[derive(Debug, Clone, Copy)]
pub struct MtOptions {
    pub ctx: PrecisionContext,
    /// First Rademacher cutoff, in units of `k = c / 4N`.
    pub base_k: i64,
    /// Cutoff cap, in the same units.
    pub max_k: i64,
}

impl Default for MtOptions {
    fn default() -> Self {
        MtOptions {
            ctx: PrecisionContext::standard(),
            base_k: 10_000,
            max_k: 1_000_000,
        }
    }
}

/// A certified coefficient of a McKay--Thompson series.
#[derive(Debug, Clone)]
pub struct MtCoefficient {
    pub n: i64,
    pub value: BigInt,
    pub route: Route,
    pub residue: f64,
}

fn is_square(n: i64) -> bool {
    if n < 0 {
        return false;
    }
    let r = num_integer::Roots::sqrt(&n);
    r * r == n
}

/// Coefficient of `q^n` in `theta(m2 tau)` (with `m2` a perfect square).
fn theta_coeff(m2: i64, n: i64) -> i64 {
    if n == 0 {
        1
    } else if n > 0 && n % m2 == 0 && is_square(n / m2) {
        2
    } else {
        0
    }
}

/// One additive contribution `scale * A_{N,psi}(n)` to a coefficient.
struct ZPart {
    ms: MultiplierSystem,
    scale: i64,
}

fn z_parts(class: &ConjugacyClass) -> Vec<ZPart> {
    match class.name.as_str() {
        "4B" => vec![
            ZPart {
                ms: MultiplierSystem::psi0_system(4),
                scale: -2,
            },
            ZPart {
                ms: MultiplierSystem::psi0_system(8),
                scale: 4,
            },
        ],
        "8A" => vec![
            ZPart {
                ms: MultiplierSystem::psi0_system(8),
                scale: -2,
            },
            ZPart {
                ms: MultiplierSystem::psi0_system(16),
                scale: 4,
            },
        ],
        _ => vec![ZPart {
            ms: MultiplierSystem::new(class.order, class.v, class.h),
            scale: 2,
        }],
    }
}

fn trace_route_available(ms: &MultiplierSystem, n: i64) -> bool {
    ms.is_theta_multiplier()
        && qseries::HAUPTMODUL_LEVELS.contains(&(ms.level as u32))
        && n > 0
        && !is_square(n)
}

/// The sequence of exponents carried by these series: -3 and then all
/// `n = 0, 1 mod 4` up to `trunc`.
pub fn exponents(trunc: i64) -> Vec<i64> {
    let mut out = vec![-3];
    for n in 0..=trunc {
        if n % 4 <= 1 {
            out.push(n);
        }
    }
    out
}

/// Compute the coefficient of `q^n` in `F_{3,[g]}`.
pub fn mt_coefficient(
    data: &ThompsonData,
    class_name: &str,
    n: i64,
    opts: &MtOptions,
) -> Result<MtCoefficient> {
    let class = data.class(class_name)?;
    if n == -3 {
        // principal part: every identification gives 2 q^{-3}
        return Ok(MtCoefficient {
            n,
            value: BigInt::from(2),
            route: Route::Exact,
            residue: 0.0,
        });
    }
    if n < 0 || n % 4 > 1 {
        return Ok(MtCoefficient {
            n,
            value: BigInt::zero(),
            route: Route::Exact,
            residue: 0.0,
        });
    }
    // exact additive part from the theta corrections
    let mut exact = BigRational::zero();
    if class.name != "4B" && class.name != "8A" {
        for (m2, kappa) in &class.kappas {
            let t = theta_coeff(*m2, n);
            if t != 0 {
                exact += kappa * BigRational::from_integer(BigInt::from(t));
            }
        }
    }
    let parts = z_parts(class);
    let mut used_trace = false;
    let mut max_residue = 0.0f64;
    let mut pending: Vec<(&ZPart, usize)> = Vec::new(); // parts needing Rademacher
    for part in &parts {
        if trace_route_available(&part.ms, n) {
            let (value, residue) = cmeval::trace_coefficient(part.ms.level as u32, n, &opts.ctx)?;
            exact += BigRational::from_integer(value * BigInt::from(part.scale));
            max_residue = max_residue.max(residue);
            used_trace = true;
        } else {
            pending.push((part, 0));
        }
    }
    if pending.is_empty() {
        // value must be an integer already
        if !exact.is_integer() {
            return Err(Error::ResidueTooLarge {
                what: format!("{class_name} q^{n} exact assembly"),
                residue_log10: 0,
            });
        }
        let route = if used_trace { Route::Trace } else { Route::Exact };
        return Ok(MtCoefficient {
            n,
            value: exact.to_integer(),
            route,
            residue: max_residue,
        });
    }
    // Rademacher constituents: extend the cutoff until two successive
    // doublings of the assembled value round to the same integer.
    let exact_f = exact.to_f64().ok_or_else(|| {
        Error::InvalidInput("exact part out of f64 range".to_string())
    })?;
    let mut k_hi = opts.base_k.max(1);
    let mut prev: Option<f64> = None;
    while k_hi <= opts.max_k {
        let mut assembled = exact_f;
        for (part, _) in &pending {
            let evals = coefficient_checkpoints(&part.ms, n, &[k_hi]);
            assembled += part.scale as f64 * evals[0].estimate;
        }
        if let Some(p) = prev {
            if libm::round(p) == libm::round(assembled) {
                let value = libm::round(assembled);
                let residue = libm::fabs(assembled - value);
                let int = BigInt::from(value as i64);
                return Ok(MtCoefficient {
                    n,
                    value: int,
                    route: Route::Rademacher,
                    residue: residue.max(max_residue),
                });
            }
        }
        prev = Some(assembled);
        k_hi *= 2;
    }
    Err(Error::Unconverged {
        what: format!("{class_name} coefficient of q^{n}"),
        tail: prev.unwrap_or(f64::NAN),
    })
}

/// The full series for one class through `q^trunc`.
pub fn mt_series(
    data: &ThompsonData,
    class_name: &str,
    trunc: i64,
    opts: &MtOptions,
) -> Result<Vec<MtCoefficient>> {
    exponents(trunc)
        .into_iter()
        .map(|n| mt_coefficient(data, class_name, n, opts))
        .collect()
}
