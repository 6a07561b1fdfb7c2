//! Weight one-half Kloosterman sums with the theta multiplier, evaluated
//! two ways: a direct definition sum (the oracle) and a fast route that
//! factors the modulus, brutes the 2-part, and closes the odd prime-power
//! parts with Salie/Gauss evaluations. The fast route makes million-term
//! Rademacher tails affordable; the two routes are compared term-by-term in
//! tests.

use alloc::vec;
use alloc::vec::Vec;

use crate::bqf::kronecker;

/// Minimal complex arithmetic over f64 pairs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct C64 {
    pub re: f64,
    pub im: f64,
}

impl C64 {
    pub const ZERO: C64 = C64 { re: 0.0, im: 0.0 };
    pub const ONE: C64 = C64 { re: 1.0, im: 0.0 };

    pub fn new(re: f64, im: f64) -> Self {
        C64 { re, im }
    }

    /// `e(x) = exp(2 pi i x)`.
    pub fn unit(x: f64) -> Self {
        let t = 2.0 * core::f64::consts::PI * x;
        C64 {
            re: libm::cos(t),
            im: libm::sin(t),
        }
    }

    pub fn add(self, o: C64) -> C64 {
        C64::new(self.re + o.re, self.im + o.im)
    }

    pub fn mul(self, o: C64) -> C64 {
        C64::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }

    pub fn scale(self, k: f64) -> C64 {
        C64::new(self.re * k, self.im * k)
    }

    pub fn abs(self) -> f64 {
        libm::hypot(self.re, self.im)
    }
}

pub fn mulmod(a: i64, b: i64, m: i64) -> i64 {
    (((a as i128) * (b as i128)).rem_euclid(m as i128)) as i64
}

pub fn powmod(mut base: i64, mut exp: i64, m: i64) -> i64 {
    base = base.rem_euclid(m);
    let mut acc = 1i64 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// Inverse of `a` mod `m`; `a` must be coprime to `m`.
pub fn invmod(a: i64, m: i64) -> i64 {
    let (g, x, _) = ext_gcd(a.rem_euclid(m), m);
    debug_assert_eq!(g, 1, "invmod of non-unit");
    x.rem_euclid(m)
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// `epsilon_d`: 1 for `d = 1 mod 4`, i for `d = 3 mod 4`.
fn eps(d: i64) -> C64 {
    match d.rem_euclid(4) {
        1 => C64::ONE,
        3 => C64::new(0.0, 1.0),
        _ => panic!("eps of even argument"),
    }
}

/// Direct definition sum: `sum_d psi(c, d) e((m dbar + n d)/c)` over
/// primitive residues `d mod c`, with the theta multiplier optionally
/// twisted by `e(-v c d / (N h))`.
pub fn kloosterman_brute(m: i64, n: i64, c: i64, level: i64, v: i64, h: i64) -> C64 {
    assert!(c > 0 && c % 4 == 0);
    let mut acc = C64::ZERO;
    for d in (1..c).step_by(2) {
        if gcd(d, c) != 1 {
            continue;
        }
        let dbar = invmod(d, c);
        let psi = eps(d).scale(kronecker(c, d) as f64);
        let phase = C64::unit(((mulmod(m, dbar, c) + mulmod(n, d, c)) as f64) / c as f64);
        let twist = if v == 0 {
            C64::ONE
        } else {
            // exponent -v c d / (N h), reduced as a rational phase
            let num = (-(v as i128) * (c as i128) * (d as i128)).rem_euclid((level * h) as i128);
            C64::unit(num as f64 / (level * h) as f64)
        };
        acc = acc.add(psi.mul(phase).mul(twist));
    }
    acc
}

/// Factorization as (prime, exponent) pairs by trial division.
pub fn factorize(mut n: i64) -> Vec<(i64, u32)> {
    assert!(n >= 1);
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Smallest-prime-factor sieve for fast factorization of the running index
/// in Rademacher sums.
pub struct FactorSieve {
    spf: Vec<u32>,
}

impl FactorSieve {
    pub fn new(limit: usize) -> Self {
        let mut spf = vec![0u32; limit + 1];
        for i in 2..=limit {
            if spf[i] == 0 {
                let mut j = i;
                while j <= limit {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
        }
        FactorSieve { spf }
    }

    pub fn factorize(&self, mut n: i64) -> Vec<(i64, u32)> {
        assert!(n >= 1 && (n as usize) < self.spf.len());
        let mut out: Vec<(i64, u32)> = Vec::new();
        while n > 1 {
            let p = self.spf[n as usize] as i64;
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        out.sort_unstable();
        out
    }
}

/// Merge two sorted factorizations.
pub fn merge_factors(a: &[(i64, u32)], b: &[(i64, u32)]) -> Vec<(i64, u32)> {
    let mut out: Vec<(i64, u32)> = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j >= b.len() || (i < a.len() && a[i].0 < b[j].0) {
            out.push(a[i]);
            i += 1;
        } else if i >= a.len() || b[j].0 < a[i].0 {
            out.push(b[j]);
            j += 1;
        } else {
            out.push((a[i].0, a[i].1 + b[j].1));
            i += 1;
            j += 1;
        }
    }
    out
}

/// Square root mod an odd prime (Tonelli--Shanks); `a` must be a unit.
fn sqrt_mod_prime(a: i64, p: i64) -> Option<i64> {
    let a = a.rem_euclid(p);
    debug_assert!(a != 0);
    if powmod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(powmod(a, (p + 1) / 4, p));
    }
    // write p - 1 = q 2^s with q odd
    let mut q = p - 1;
    let mut s = 0;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    // find a non-residue
    let mut z = 2;
    while powmod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut cc = powmod(z, q, p);
    let mut t = powmod(a, q, p);
    let mut r = powmod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut t2 = t;
        let mut i = 0;
        while t2 != 1 {
            t2 = mulmod(t2, t2, p);
            i += 1;
        }
        let b = powmod(cc, 1 << (m - i - 1), p);
        m = i;
        cc = mulmod(b, b, p);
        t = mulmod(t, cc, p);
        r = mulmod(r, b, p);
    }
    Some(r)
}

/// Square root mod `p^e` by Hensel lifting; `a` must be a unit mod p.
fn sqrt_mod_prime_power(a: i64, p: i64, e: u32) -> Option<i64> {
    let q = p.pow(e);
    let a = a.rem_euclid(q);
    let mut y = sqrt_mod_prime(a, p)?;
    let mut pk = p;
    while pk < q {
        // y -> y + t p^k with t = (a - y^2)/p^k * (2y)^{-1} mod p
        let delta = ((a as i128 - (y as i128) * (y as i128)).rem_euclid((pk as i128) * p as i128)
            / pk as i128) as i64;
        let t = mulmod(delta, invmod(2 * y % p, p), p);
        y = (y as i128 + (t as i128) * (pk as i128)).rem_euclid((pk as i128) * p as i128) as i64;
        pk *= p;
    }
    debug_assert_eq!(mulmod(y, y, q), a.rem_euclid(q));
    Some(y)
}

/// Brute local factor `sum_y (y/p)^e e((M ybar + N y)/p^e)`, used when both
/// arguments share the prime (rare) and for the 2-part and 3-part.
fn local_brute_odd(p: i64, e: u32, m: i64, n: i64) -> C64 {
    let q = p.pow(e);
    let mut acc = C64::ZERO;
    for y in 1..q {
        if y % p == 0 {
            continue;
        }
        let ybar = invmod(y, q);
        let chi = if e % 2 == 1 { kronecker(y, p) } else { 1 };
        let phase = C64::unit(((mulmod(m, ybar, q) + mulmod(n, y, q)) as f64) / q as f64);
        acc = acc.add(phase.scale(chi as f64));
    }
    acc
}

/// Closed-form local factor at an odd prime power: the Salie evaluation for
/// odd exponents, the classical Kloosterman prime-power evaluation for even
/// exponents, Gauss sums for the semi-degenerate case, and zero when the
/// stationary-phase equation has no solution.
fn salie_local(p: i64, e: u32, m0: i64, n0: i64) -> C64 {
    let q = p.pow(e);
    let mut m = m0.rem_euclid(q);
    let mut n = n0.rem_euclid(q);
    if m % p == 0 && n % p == 0 {
        return local_brute_odd(p, e, m, n);
    }
    if m % p == 0 {
        // T(M, N) = T(N, M) via y -> ybar
        core::mem::swap(&mut m, &mut n);
    }
    if n % p == 0 {
        if e == 1 {
            // Gauss sum: (M/p) eps_p sqrt(p)
            let s = kronecker(m, p) as f64 * libm::sqrt(p as f64);
            return if p % 4 == 1 {
                C64::new(s, 0.0)
            } else {
                C64::new(0.0, s)
            };
        }
        return C64::ZERO;
    }
    let a = mulmod(m, n, q);
    let y0 = match sqrt_mod_prime_power(a, p, e) {
        None => return C64::ZERO,
        Some(y) => y,
    };
    // e(2 y0 / q) + e(-2 y0 / q)
    let base = 2.0 * libm::cos(4.0 * core::f64::consts::PI * (y0 as f64) / q as f64);
    let scale = libm::sqrt(q as f64);
    if e % 2 == 0 {
        C64::new(scale * base, 0.0)
    } else {
        let w = (kronecker(n, p) as f64) * scale * base;
        if p % 4 == 1 {
            C64::new(w, 0.0)
        } else {
            C64::new(0.0, w)
        }
    }
}

/// 2-part local factor: direct sum over odd residues mod `2^lambda` with the
/// theta-multiplier data folded in (`u` is the odd part of the modulus).
fn two_part(lambda: u32, u: i64, u2inv: i64, m: i64, n: i64) -> C64 {
    let a2 = 1i64 << lambda;
    let sigma_flag = (u - 1) / 2 % 2 == 1;
    let mut acc = C64::ZERO;
    let mr = m.rem_euclid(a2);
    let nr = n.rem_euclid(a2);
    let mut x = 1i64;
    while x < a2 {
        let xbar = invmod(x, a2);
        let phase_num = mulmod(u2inv, mulmod(mr, xbar, a2) + mulmod(nr, x, a2), a2);
        let mut term = eps(x).mul(C64::unit(phase_num as f64 / a2 as f64));
        if lambda % 2 == 1 {
            // (2/x) by x mod 8
            let xm8 = x.rem_euclid(8);
            if xm8 == 3 || xm8 == 5 {
                term = term.scale(-1.0);
            }
        }
        if sigma_flag && (x - 1) / 2 % 2 == 1 {
            term = term.scale(-1.0);
        }
        acc = acc.add(term);
        x += 2;
    }
    acc
}

/// Fast `K_{psi_0}(m, n, c)` from a factorization of `c`; `c = 0 mod 4`.
pub fn kloosterman_psi0_factored(m: i64, n: i64, c: i64, factors: &[(i64, u32)]) -> C64 {
    debug_assert!(c % 4 == 0);
    debug_assert_eq!(factors.iter().map(|(p, e)| p.pow(*e)).product::<i64>(), c);
    let lambda = factors
        .iter()
        .find(|(p, _)| *p == 2)
        .map(|(_, e)| *e)
        .expect("modulus divisible by 4");
    let a2 = 1i64 << lambda;
    let u = c / a2;
    let mut acc = two_part(lambda, u, invmod(u.rem_euclid(a2), a2), m, n);
    for (p, e) in factors.iter().filter(|(p, _)| *p != 2) {
        let q = p.pow(*e);
        let cofactor = (c / q).rem_euclid(q);
        let uq = invmod(cofactor, q);
        let local = salie_local(*p, *e, mulmod(uq, m.rem_euclid(q), q), mulmod(uq, n.rem_euclid(q), q));
        if local == C64::ZERO {
            return C64::ZERO;
        }
        acc = acc.mul(local);
    }
    acc
}

/// Fast `K_psi(m, n, c)` for the twisted multiplier `psi_{N,v,h}`: the twist
/// is an integer shift of `n` depending on `c`, after which the theta-
/// multiplier evaluation applies.
pub fn kloosterman_fast(
    m: i64,
    n: i64,
    c: i64,
    level: i64,
    v: i64,
    h: i64,
    factors: &[(i64, u32)],
) -> C64 {
    let n_shifted = n - twist_shift(c, level, v, h);
    kloosterman_psi0_factored(m, n_shifted, c, factors)
}

/// The integer `16 N v k^2 / h` with `k = c / 4N`: subtracting it from `n`
/// absorbs the character `e(-v c d / (N h))` into the exponential.
pub fn twist_shift(c: i64, level: i64, v: i64, h: i64) -> i64 {
    if v == 0 {
        return 0;
    }
    debug_assert_eq!(c % (4 * level), 0);
    let k = c / (4 * level);
    let num = 16i128 * level as i128 * v as i128 * (k as i128) * (k as i128);
    debug_assert_eq!(num % h as i128, 0, "h must divide 2N");
    i64::try_from(num / h as i128).expect("twist shift overflow")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a.re - b.re).abs() <= tol && (a.im - b.im).abs() <= tol
    }

    #[test]
    fn printed_values_at_c4() {
        let k = kloosterman_brute(-3, 1, 4, 1, 0, 1);
        assert!(close(k, C64::new(-1.0, -1.0), 1e-12), "{k:?}");
        let k0 = kloosterman_brute(0, 0, 4, 1, 0, 1);
        assert!(close(k0, C64::new(1.0, 1.0), 1e-12), "{k0:?}");
    }

    #[test]
    fn fast_matches_brute_small_moduli() {
        for c in (4..=200).step_by(4) {
            let factors = factorize(c);
            for m in [-3i64, 1, -4] {
                for n in [0i64, 1, 4, 5, 8, 9, 12, 21, 33, -7] {
                    let fast = kloosterman_psi0_factored(m, n, c, &factors);
                    let brute = kloosterman_brute(m, n, c, 1, 0, 1);
                    assert!(
                        close(fast, brute, 1e-7 * (1.0 + brute.abs())),
                        "c={c} m={m} n={n}: fast {fast:?} brute {brute:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn fast_matches_brute_structured_moduli() {
        // prime powers and mixed structures in the odd part
        let cs = [
            4 * 9,
            4 * 27,
            4 * 81,
            4 * 25,
            4 * 125,
            4 * 49,
            4 * 121,
            4 * 15,
            4 * 45,
            4 * 75,
            4 * 3 * 25,
            8 * 27,
            16 * 25,
            32 * 9,
            64 * 5,
            4 * 9 * 25,
            4 * 9 * 49,
        ];
        for &c in &cs {
            let factors = factorize(c);
            for m in [-3i64, 2] {
                for n in [0i64, 1, 5, 9, 25, 27, 45, 75, -15] {
                    let fast = kloosterman_psi0_factored(m, n, c, &factors);
                    let brute = kloosterman_brute(m, n, c, 1, 0, 1);
                    assert!(
                        close(fast, brute, 1e-6 * (1.0 + brute.abs())),
                        "c={c} m={m} n={n}: fast {fast:?} brute {brute:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn fast_matches_brute_randomized() {
        let mut state: u64 = 0x9E3779B97F4A7C15;
        let mut next = move |range: i64| {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) as i64).rem_euclid(range)
        };
        for _ in 0..300 {
            let c = 4 * (1 + next(120));
            let m = next(60) - 30;
            let n = next(200) - 100;
            let factors = factorize(c);
            let fast = kloosterman_psi0_factored(m, n, c, &factors);
            let brute = kloosterman_brute(m, n, c, 1, 0, 1);
            assert!(
                close(fast, brute, 1e-6 * (1.0 + brute.abs())),
                "c={c} m={m} n={n}: fast {fast:?} brute {brute:?}"
            );
        }
    }

    #[test]
    fn twisted_matches_brute() {
        for (level, v, h) in [(3i64, 2i64, 3i64), (4, 1, 8), (8, 3, 16), (6, 1, 6), (12, 5, 12)] {
            for k in 1..=10i64 {
                let c = 4 * level * k;
                let factors = factorize(c);
                for n in [0i64, 4, 5, 9] {
                    let fast = kloosterman_fast(-3, n, c, level, v, h, &factors);
                    let brute = kloosterman_brute(-3, n, c, level, v, h);
                    assert!(
                        close(fast, brute, 1e-6 * (1.0 + brute.abs())),
                        "N={level} v={v} h={h} c={c} n={n}: {fast:?} vs {brute:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn sieve_factorization() {
        let sieve = FactorSieve::new(10_000);
        for n in 1..5_000i64 {
            assert_eq!(sieve.factorize(n), factorize(n), "n={n}");
        }
    }

    #[test]
    fn sqrt_mod_prime_powers() {
        for (p, e) in [(5i64, 1u32), (5, 3), (7, 2), (11, 2), (13, 1), (3, 4)] {
            let q = p.pow(e);
            for a in 1..q.min(200) {
                if a % p == 0 {
                    continue;
                }
                if let Some(y) = sqrt_mod_prime_power(a, p, e) {
                    assert_eq!(mulmod(y, y, q), a % q, "p={p} e={e} a={a}");
                }
            }
        }
    }
}
