//! Implementations of the CLI commands.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::Zero;

use moonshine_core::bqf;
use moonshine_core::cmeval;
use moonshine_core::qseries;
use moonshine_core::rademacher::{self, MultiplierSystem};
use moonshine_core::thompson::{
    self, decompose, mt_series, verify_discriminant_property, MtCoefficient,
    SupermoduleDecomposition,
};

use crate::output::Table;
use crate::Config;

type AnyError = Box<dyn std::error::Error>;

pub fn cmd_f3(config: &Config) -> Result<bool, AnyError> {
    let series = qseries::f3_cal_series(config.trunc + 1);
    let mut table = Table::new(vec!["m", "c"]);
    table.comment("Fourier coefficients of F_3 = 2 f_3 + 248 theta (exact)");
    for m in thompson::mt::exponents(config.trunc) {
        table.row(vec![m.to_string(), series.coeff_int(m).to_string()]);
    }
    table.print(config.format);
    Ok(true)
}

pub fn cmd_mt(config: &Config, class: &str) -> Result<bool, AnyError> {
    let coeffs = mt_series(&config.data, class, config.trunc, &config.mt)?;
    let mut table = Table::new(vec!["n", "value", "route", "residue"]);
    table.comment(format!("McKay-Thompson series for class {class}"));
    for c in &coeffs {
        table.row(vec![
            c.n.to_string(),
            c.value.to_string(),
            c.route.label().to_string(),
            format!("{:.3e}", c.residue),
        ]);
    }
    table.print(config.format);
    Ok(true)
}

pub fn cmd_trace(config: &Config, level: u32, d1: i64, d2: i64) -> Result<bool, AnyError> {
    let value = cmeval::trace_singular_moduli(level, d1, d2, &config.ctx)?;
    let mut table = Table::new(vec!["level", "d1", "d2", "form", "omega", "chi"]);
    table.comment("classes entering the trace (a = 0 mod N)");
    for (form, omega, chi) in cmeval::trace_support(level, d1, d2)? {
        table.row(vec![
            level.to_string(),
            d1.to_string(),
            d2.to_string(),
            format!("[{} {} {}]", form.a, form.b, form.c),
            omega.to_string(),
            chi.to_string(),
        ]);
    }
    table.print(config.format);
    println!("trace = {}", value.to_decimal_string(config.ctx.digits));
    Ok(true)
}

pub fn cmd_rademacher(config: &Config, level: i64, v: i64, h: i64, n: i64) -> Result<bool, AnyError> {
    let ms = MultiplierSystem::new(level, v, h);
    let eval = rademacher::rademacher_coefficient(&ms, n, 4 * level * config.mt.base_k);
    let nearest = eval.estimate.round();
    let mut table = Table::new(vec![
        "level", "v", "h", "n", "cutoff", "estimate", "nearest", "residue", "tail_indicator",
    ]);
    table.row(vec![
        level.to_string(),
        v.to_string(),
        h.to_string(),
        n.to_string(),
        eval.cutoff.to_string(),
        format!("{:.9}", eval.estimate),
        format!("{}", nearest as i64),
        format!("{:.3e}", (eval.estimate - nearest).abs()),
        format!("{:.3e}", eval.tail_indicator),
    ]);
    table.print(config.format);
    Ok(true)
}

/// Compute all 48 McKay--Thompson series through `q^trunc`, class-parallel
/// with deterministic (class-table) output order.
pub fn compute_mt_table(
    config: &Config,
    trunc: i64,
) -> Result<Vec<(String, Vec<MtCoefficient>)>, AnyError> {
    let names: Vec<String> = config.data.table.class_names().to_vec();
    let results: Mutex<Vec<Option<Result<Vec<MtCoefficient>, moonshine_core::Error>>>> =
        Mutex::new((0..names.len()).map(|_| None).collect());
    let next = AtomicUsize::new(0);
    let workers = config.jobs.max(1).min(names.len());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= names.len() {
                    break;
                }
                let r = mt_series(&config.data, &names[i], trunc, &config.mt);
                results.lock().unwrap()[i] = Some(r);
            });
        }
    });
    let mut out = Vec::with_capacity(names.len());
    for (name, slot) in names.into_iter().zip(results.into_inner().unwrap()) {
        let coeffs = slot.expect("worker finished")?;
        out.push((name, coeffs));
    }
    Ok(out)
}

pub fn cmd_decompose(config: &Config, max_m: i64, print_decomps: bool) -> Result<bool, AnyError> {
    let mt = compute_mt_table(config, max_m)?;
    let exponents = thompson::mt::exponents(max_m);
    let mut ok = true;
    let mut decomps: BTreeMap<i64, SupermoduleDecomposition> = BTreeMap::new();
    let mut table = Table::new(vec!["m", "irrep", "multiplicity"]);
    table.comment("multiplicities b_{m,i} of V_i in W_m");
    let mut failures = Table::new(vec!["m", "error"]);
    for &m in &exponents {
        let coef: Vec<BigInt> = mt
            .iter()
            .map(|(_, coeffs)| {
                coeffs
                    .iter()
                    .find(|c| c.n == m)
                    .map(|c| c.value.clone())
                    .unwrap_or_else(BigInt::zero)
            })
            .collect();
        match decompose(&config.data.table, m, &coef, &config.ctx) {
            Ok(dec) => {
                for (i, b) in dec.mults.iter().enumerate() {
                    if !b.is_zero() {
                        table.row(vec![m.to_string(), (i + 1).to_string(), b.to_string()]);
                    }
                }
                decomps.insert(m, dec);
            }
            Err(e) => {
                ok = false;
                failures.row(vec![m.to_string(), e.to_string()]);
            }
        }
    }
    if print_decomps {
        table.print(config.format);
        if !failures.rows.is_empty() {
            failures.print(config.format);
        }
    }
    let findings = verify_discriminant_property(&config.data, &decomps, max_m);
    let mut report = Table::new(vec!["section", "label", "status", "detail"]);
    report.comment("discriminant property report");
    for f in &findings {
        ok &= f.pass;
        report.row(vec![
            f.section.to_string(),
            f.label.clone(),
            if f.pass { "pass" } else { "FAIL" }.to_string(),
            f.detail.clone(),
        ]);
    }
    report.print(config.format);
    Ok(ok)
}

pub fn cmd_crosscheck(config: &Config) -> Result<bool, AnyError> {
    let mut table = Table::new(vec!["route_a", "route_b", "what", "max_residue", "status"]);
    let mut all_ok = true;
    let record = |a: &str, b: &str, what: String, residue: f64, pass: bool, t: &mut Table| {
        t.row(vec![
            a.to_string(),
            b.to_string(),
            what,
            format!("{residue:.3e}"),
            if pass { "pass" } else { "FAIL" }.to_string(),
        ]);
        pass
    };

    // exact series vs traces of singular moduli at level 1
    let f3 = qseries::f3_series(34);
    let mut worst = 0.0f64;
    let mut pass = true;
    for n in (1..=33).filter(|n| n % 4 <= 1 && !is_square(*n)) {
        let (int, residue) = cmeval::trace_coefficient(1, n, &config.ctx)?;
        worst = worst.max(residue);
        pass &= int == f3.coeff_int(n);
    }
    all_ok &= record(
        "series",
        "trace",
        "A(n,3) for non-square n <= 33".into(),
        worst,
        pass,
        &mut table,
    );

    // trace vs Rademacher at the genus-zero levels
    for level in [1u32, 2, 3, 4, 5, 6, 7, 8, 9, 10, 12, 13, 16, 18] {
        let mut worst = 0.0f64;
        let mut pass = true;
        for n in [5i64, 8] {
            let (int, _) = cmeval::trace_coefficient(level, n, &config.ctx)?;
            let ms = MultiplierSystem::psi0_system(level as i64);
            let (value, _residue, _cutoff) =
                rademacher::certified_value(&ms, n, config.mt.base_k, config.mt.max_k)
                    .map_err(|e| format!("level {level} n {n}: {e}"))?;
            let int_f = bigint_to_f64(&int);
            worst = worst.max((value - int_f).abs());
            pass &= value == int_f;
        }
        all_ok &= record(
            "trace",
            "rademacher",
            format!("A_{level}(n) for n in {{5, 8}}"),
            worst,
            pass,
            &mut table,
        );
    }

    // Borcherds product
    let pass = matches!(
        qseries::borcherds_product_check(6),
        qseries::BorcherdsCheck::Pass { .. }
    );
    all_ok &= record("f3 exponents", "E4 product", "j^{1/3} lift".into(), 0.0, pass, &mut table);

    // Hurwitz class numbers vs weighted class counts
    let mut pass = true;
    for d in 1..=100i64 {
        if d % 4 == 1 || d % 4 == 2 {
            continue;
        }
        let h = rademacher::hurwitz(d);
        let mut total = num_rational::Ratio::new(0i64, 1);
        for rep in bqf::class_reps(d, 1, false) {
            total += num_rational::Ratio::new(1, rep.stab_order);
        }
        pass &= h == total;
    }
    all_ok &= record(
        "reduced forms",
        "class reps",
        "H(d) for d <= 100".into(),
        0.0,
        pass,
        &mut table,
    );

    table.print(config.format);
    Ok(all_ok)
}

fn is_square(n: i64) -> bool {
    let r = (n as f64).sqrt() as i64;
    (r - 1..=r + 1).any(|x| x * x == n)
}

fn bigint_to_f64(v: &BigInt) -> f64 {
    v.to_string().parse().unwrap_or(f64::NAN)
}
