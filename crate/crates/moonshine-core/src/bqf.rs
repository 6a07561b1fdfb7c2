//! Integral binary quadratic forms: discriminants, the right action of
//! SL(2,Z), reduction to the classical fundamental domain, stabilizers,
//! coset representatives for Gamma_0(N), a canonical Gamma_0(N) reduction,
//! orbit representatives of Q_d / Gamma_0(N), and genus characters.
//!
//! The Gamma_0(N) reduction is the two-step scheme: reduce under the full
//! modular group, then resolve the finite ambiguity coming from the
//! stabilizer of the reduced form. For each stabilizer element there is one
//! admissible left coset of Gamma_0(N); acting with a fixed canonical
//! representative of that coset (and normalizing the middle coefficient into
//! [-a, a) with translations, which always lie in Gamma_0(N)) yields a small
//! candidate set whose lexicographic minimum is constant on orbits and
//! separates them.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;
use num_rational::Ratio;

use crate::{Error, Result};

/// Integral binary quadratic form `[a, b, c] = a X^2 + b XY + c Y^2`.
///
/// The derived ordering is lexicographic in `(a, b, c)`, the total order used
/// for every canonical choice below.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bqf {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl Bqf {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        Bqf { a, b, c }
    }

    /// `b^2 - 4ac`.
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    /// Negative discriminant and `a > 0`.
    pub fn is_positive_definite(&self) -> bool {
        self.discriminant() < 0 && self.a > 0
    }

    /// Value `Q(x, y)`.
    pub fn eval(&self, x: i64, y: i64) -> i64 {
        self.a * x * x + self.b * x * y + self.c * y * y
    }

    /// Content `gcd(a, b, c)`.
    pub fn content(&self) -> i64 {
        self.a.gcd(&self.b).gcd(&self.c)
    }

    /// Classically reduced: `-a < b <= a <= c`, with `b >= 0` when `a == c`.
    pub fn is_reduced(&self) -> bool {
        -self.a < self.b
            && self.b <= self.a
            && self.a <= self.c
            && (self.a != self.c || self.b >= 0)
    }
}

/// Element of SL(2, Z): `[[p, q], [r, s]]` with `ps - qr = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UnimodularMatrix {
    pub p: i64,
    pub q: i64,
    pub r: i64,
    pub s: i64,
}

pub const IDENTITY: UnimodularMatrix = UnimodularMatrix {
    p: 1,
    q: 0,
    r: 0,
    s: 1,
};

/// `S = [[0, -1], [1, 0]]`.
pub const S_MAT: UnimodularMatrix = UnimodularMatrix {
    p: 0,
    q: -1,
    r: 1,
    s: 0,
};

impl UnimodularMatrix {
    pub fn new(p: i64, q: i64, r: i64, s: i64) -> Self {
        let m = UnimodularMatrix { p, q, r, s };
        assert_eq!(m.det(), 1, "matrix is not unimodular");
        m
    }

    pub fn det(&self) -> i64 {
        self.p * self.s - self.q * self.r
    }

    /// Translation `T^k = [[1, k], [0, 1]]`.
    pub fn translation(k: i64) -> Self {
        UnimodularMatrix {
            p: 1,
            q: k,
            r: 0,
            s: 1,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        UnimodularMatrix {
            p: self.p * o.p + self.q * o.r,
            q: self.p * o.q + self.q * o.s,
            r: self.r * o.p + self.s * o.r,
            s: self.r * o.q + self.s * o.s,
        }
    }

    pub fn inverse(&self) -> Self {
        UnimodularMatrix {
            p: self.s,
            q: -self.q,
            r: -self.r,
            s: self.p,
        }
    }

    pub fn neg(&self) -> Self {
        UnimodularMatrix {
            p: -self.p,
            q: -self.q,
            r: -self.r,
            s: -self.s,
        }
    }

    /// Lower-left entry divisible by `N`.
    pub fn in_gamma0(&self, n: i64) -> bool {
        self.r.rem_euclid(n) == 0
    }

    /// Pick the sign (irrelevant to the action on forms) making the first
    /// nonzero entry of the top row positive.
    pub fn sign_normalized(&self) -> Self {
        if self.p > 0 || (self.p == 0 && self.q > 0) {
            *self
        } else {
            self.neg()
        }
    }
}

/// Right action `Q|_gamma (X, Y) = Q(pX + qY, rX + sY)`; preserves the
/// discriminant.
pub fn act(q: &Bqf, g: &UnimodularMatrix) -> Bqf {
    let a = q.eval(g.p, g.r);
    let c = q.eval(g.q, g.s);
    let b = 2 * q.a * g.p * g.q + q.b * (g.p * g.s + g.q * g.r) + 2 * q.c * g.r * g.s;
    Bqf::new(a, b, c)
}

/// SL(2,Z) reduction of a positive definite form: the unique reduced
/// representative together with a matrix `gamma` satisfying
/// `act(q, gamma) = reduced`.
pub fn sl2_reduce(q: &Bqf) -> (Bqf, UnimodularMatrix) {
    assert!(q.is_positive_definite(), "form must be positive definite");
    let mut f = *q;
    let mut g = IDENTITY;
    loop {
        // normalize b into (-a, a]
        if f.b > f.a || f.b <= -f.a {
            let k = (f.a - f.b).div_euclid(2 * f.a);
            let t = UnimodularMatrix::translation(k);
            f = act(&f, &t);
            g = g.mul(&t);
        }
        if f.a > f.c {
            f = act(&f, &S_MAT);
            g = g.mul(&S_MAT);
            continue;
        }
        if f.a == f.c && f.b < 0 {
            f = act(&f, &S_MAT);
            g = g.mul(&S_MAT);
        }
        break;
    }
    debug_assert!(f.is_reduced());
    debug_assert_eq!(act(q, &g), f);
    (f, g)
}

/// Coset representatives of the stabilizer of a reduced form in PSL(2, Z):
/// three elements for `[a, a, a]`, two for `[a, 0, a]`, otherwise only the
/// identity.
pub fn sl2_stabilizer(q: &Bqf) -> Vec<UnimodularMatrix> {
    assert!(q.is_reduced(), "stabilizer is computed on reduced forms");
    if q.a == q.b && q.b == q.c {
        vec![
            IDENTITY,
            UnimodularMatrix::new(-1, -1, 1, 0),
            UnimodularMatrix::new(0, 1, -1, -1),
        ]
    } else if q.b == 0 && q.a == q.c {
        vec![IDENTITY, S_MAT]
    } else {
        vec![IDENTITY]
    }
}

/// Index of `Gamma_0(N)` in SL(2, Z): `N prod_{p | N} (1 + 1/p)`.
pub fn gamma0_index(n: i64) -> i64 {
    assert!(n >= 1);
    let mut idx = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            idx = idx / p * (p + 1);
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        idx = idx / m * (m + 1);
    }
    idx
}

/// Lexicographically least representative of the projective class of
/// `(x : y)` in P^1(Z/N).
fn canonical_class(x: i64, y: i64, n: i64) -> (i64, i64) {
    if n == 1 {
        return (0, 0);
    }
    let mut best = (n, n);
    for u in 1..n {
        if u.gcd(&n) != 1 {
            continue;
        }
        let cand = ((x * u).rem_euclid(n), (y * u).rem_euclid(n));
        if cand < best {
            best = cand;
        }
    }
    best
}

/// Canonical labels of P^1(Z/N), one per coset of `Gamma_0(N)`.
fn projective_classes(n: i64) -> Vec<(i64, i64)> {
    assert!(n >= 1);
    if n == 1 {
        return vec![(0, 1)];
    }
    let mut reps = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if x.gcd(&y).gcd(&n) != 1 {
                continue;
            }
            if canonical_class(x, y, n) == (x, y) {
                reps.push((x, y));
            }
        }
    }
    debug_assert_eq!(reps.len() as i64, gamma0_index(n));
    reps
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

fn mod_inverse(a: i64, n: i64) -> i64 {
    let (g, x, _) = ext_gcd(a.rem_euclid(n), n);
    assert_eq!(g, 1, "not invertible");
    x.rem_euclid(n)
}

/// Lift a projective first-column class `(x : y)` to an integer column
/// `(p, r)` with `gcd(p, r) = 1`. Classes of the shape `(x : 1)` lift to
/// `(x - N, 1)`, which makes the canonical coset representatives the words
/// `T^{-k} S`; other classes get the smallest admissible shift.
fn lift_column(x: i64, y: i64, n: i64) -> (i64, i64) {
    debug_assert!(n >= 2);
    if y.gcd(&n) == 1 {
        let p = (x * mod_inverse(y, n)).rem_euclid(n);
        return (p - n, 1);
    }
    let r = y; // y >= 1 here: classes (x : 0) are projectively (1 : 0)
    let mut p = x.rem_euclid(n) - n;
    while p.gcd(&r) != 1 {
        p -= n;
    }
    (p, r)
}

/// Complete a coprime column `(p, r)` to `[[p, q], [r, s]]` in SL(2, Z).
fn complete_column(p: i64, r: i64) -> UnimodularMatrix {
    let (g, x, y) = ext_gcd(p, r);
    assert_eq!(g, 1, "column is not coprime");
    // p x + r y = 1, so [[p, -y], [r, x]] has determinant 1
    UnimodularMatrix::new(p, -y, r, x)
}

/// The canonical left-coset representative of `SL(2,Z) / Gamma_0(N)` whose
/// first column lies in the projective class of `(x : y)`.
fn left_rep_for_class(x: i64, y: i64, n: i64) -> UnimodularMatrix {
    if n == 1 || canonical_class(x, y, n) == canonical_class(1, 0, n) {
        return IDENTITY;
    }
    let (p, r) = lift_column(x, y, n);
    complete_column(p, r)
}

/// Right-coset representatives of `Gamma_0(N) \ SL(2, Z)`, one per point of
/// P^1(Z/N) labelled by the bottom row `(c : d)`; the count is the index
/// `N prod (1 + 1/p)`. For `N = 2` this is the classical set
/// `{ I, S, [[1,0],[1,1]] }`.
pub fn coset_reps_gamma0(n: i64) -> Vec<UnimodularMatrix> {
    projective_classes(n)
        .into_iter()
        .map(|(c, d)| {
            if (c, d) == (0, 1) {
                return IDENTITY;
            }
            if (c, d) == (1, 0) {
                return S_MAT;
            }
            let (mut c0, mut d0) = (c, d);
            if c0 == 0 {
                c0 = n;
            }
            while c0.gcd(&d0) != 1 {
                d0 += n;
            }
            let (g, x, y) = ext_gcd(c0, d0);
            assert_eq!(g, 1);
            // c0 x + d0 y = 1 gives [[y, -x], [c0, d0]] of determinant 1
            UnimodularMatrix::new(y, -x, c0, d0)
        })
        .collect()
}

/// Normalize `b` into `[-a, a)` with a translation; returns the normalized
/// form and the translation power applied.
fn t_normalize(q: &Bqf) -> (Bqf, i64) {
    let k = (q.a - 1 - q.b).div_euclid(2 * q.a);
    let t = UnimodularMatrix::translation(k);
    let f = act(q, &t);
    debug_assert!(-f.a <= f.b && f.b < f.a);
    (f, k)
}

/// Canonical `Gamma_0(N)`-reduction.
///
/// Returns the canonical orbit representative together with a connecting
/// matrix `h` in `Gamma_0(N)` with `act(reduced, h) = q`; two forms are
/// `Gamma_0(N)`-equivalent exactly when their reduced forms coincide.
/// For `N = 1` the representative is the classical reduced form.
pub fn gamma0_reduce(q: &Bqf, n: i64) -> (Bqf, UnimodularMatrix) {
    assert!(q.is_positive_definite());
    assert!(n >= 1);
    if n == 1 {
        let (red, g) = sl2_reduce(q);
        return (red, g.inverse().sign_normalized());
    }
    let (red, g) = sl2_reduce(q);
    let mut best: Option<(Bqf, UnimodularMatrix)> = None;
    for s in sl2_stabilizer(&red) {
        // admissible left coset: class of the first column of s^{-1} g^{-1}
        let m = s.inverse().mul(&g.inverse());
        let class = canonical_class(m.p, m.r, n);
        let rep = left_rep_for_class(class.0, class.1, n);
        debug_assert_eq!(canonical_class(rep.p, rep.r, n), class);
        let (candidate, k) = t_normalize(&act(&red, &rep));
        let h0 = g
            .mul(&s)
            .mul(&rep)
            .mul(&UnimodularMatrix::translation(k));
        debug_assert!(h0.in_gamma0(n), "connecting matrix must be in Gamma_0(N)");
        debug_assert_eq!(act(q, &h0), candidate);
        if best.as_ref().map_or(true, |(b, _)| candidate < *b) {
            best = Some((candidate, h0.inverse().sign_normalized()));
        }
    }
    best.expect("stabilizer is never empty")
}

/// Order of the stabilizer of `q` in `Gamma_0(N) / {+-1}`.
pub fn gamma0_stabilizer_order(q: &Bqf, n: i64) -> i64 {
    let (red, g) = sl2_reduce(q);
    sl2_stabilizer(&red)
        .iter()
        .filter(|s| g.mul(s).mul(&g.inverse()).in_gamma0(n))
        .count() as i64
}

/// An orbit representative of `Q_d / Gamma_0(N)` with its stabilizer order
/// and the matrix relating it to its SL(2,Z)-reduced form.
#[derive(Debug, Clone)]
pub struct OrbitRep {
    pub form: Bqf,
    /// Order of the stabilizer in `Gamma_0(N) / {+-1}`.
    pub stab_order: i64,
    /// Matrix `m` with `act(form, m)` SL(2,Z)-reduced.
    pub transform_from_sl2_rep: UnimodularMatrix,
}

/// All SL(2,Z)-reduced forms of discriminant `-d`, in lexicographic order.
pub fn reduced_forms(d: i64) -> Vec<Bqf> {
    assert!(d > 0);
    if d % 4 == 1 || d % 4 == 2 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut a: i64 = 1;
    while 3 * a * a <= d {
        for b in (-a + 1)..=a {
            let num = b * b + d;
            if num % (4 * a) == 0 {
                let f = Bqf::new(a, b, num / (4 * a));
                if f.is_reduced() {
                    out.push(f);
                }
            }
        }
        a += 1;
    }
    out.sort();
    out
}

/// Complete duplicate-free representatives of `Q_d / Gamma_0(N)`, optionally
/// filtered to forms with `a = 0 mod N` (the condition entering the twisted
/// trace; it is constant on orbits). Each representative is the canonical
/// reduced form of its orbit.
pub fn class_reps(d: i64, n: i64, require_a_divisible: bool) -> Vec<OrbitRep> {
    assert!(d > 0 && n >= 1);
    let mut seen: BTreeMap<Bqf, ()> = BTreeMap::new();
    for red in reduced_forms(d) {
        for class in projective_classes(n) {
            let rep = left_rep_for_class(class.0, class.1, n);
            let image = act(&red, &rep);
            let (canon, _) = gamma0_reduce(&image, n);
            seen.insert(canon, ());
        }
    }
    seen.into_keys()
        .filter(|form| !require_a_divisible || form.a.rem_euclid(n) == 0)
        .map(|form| {
            let (_, m) = sl2_reduce(&form);
            OrbitRep {
                form,
                stab_order: gamma0_stabilizer_order(&form, n),
                transform_from_sl2_rep: m,
            }
        })
        .collect()
}

/// Serialize orbit representatives as CSV rows `d,N,a,b,c,omega`.
pub fn class_reps_csv(d: i64, n: i64, require_a_divisible: bool) -> alloc::string::String {
    use core::fmt::Write;
    let mut out = alloc::string::String::from("d,N,a,b,c,omega\n");
    for rep in class_reps(d, n, require_a_divisible) {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            d, n, rep.form.a, rep.form.b, rep.form.c, rep.stab_order
        );
    }
    out
}

/// Kronecker symbol `(a / n)` with the standard extension to all integers.
pub fn kronecker(a: i64, n: i64) -> i64 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut a = a;
    let mut n = n;
    let mut result = 1i64;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    let mut twos = 0;
    while n % 2 == 0 {
        n /= 2;
        twos += 1;
    }
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        let am8 = a.rem_euclid(8);
        if twos % 2 == 1 && (am8 == 3 || am8 == 5) {
            result = -result;
        }
    }
    a = a.rem_euclid(n);
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let nm8 = n.rem_euclid(8);
            if nm8 == 3 || nm8 == 5 {
                result = -result;
            }
        }
        core::mem::swap(&mut a, &mut n);
        if a.rem_euclid(4) == 3 && n.rem_euclid(4) == 3 {
            result = -result;
        }
        a = a.rem_euclid(n);
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Genus character `chi_{D1}(Q)`: zero when `gcd(a, b, c, D1) > 1`,
/// otherwise the Kronecker symbol `(D1 / r)` for any represented value `r`
/// coprime to `D1`.
///
/// Any coprime represented value gives the same symbol, so the search takes
/// the first one found on expanding shells `|x|, |y| <= radius`; exhausting
/// the bound is reported as an error.
pub fn genus_character(q: &Bqf, d1: i64) -> Result<i64> {
    if q.content().gcd(&d1) > 1 {
        return Ok(0);
    }
    const BOUND: i64 = 50;
    for radius in 1..=BOUND {
        for x in -radius..=radius {
            for y in -radius..=radius {
                if x.abs().max(y.abs()) != radius && radius > 1 {
                    continue;
                }
                let r = q.eval(x, y);
                if r != 0 && r.gcd(&d1) == 1 {
                    return Ok(kronecker(d1, r));
                }
            }
        }
    }
    Err(Error::GenusCharacterBound {
        a: q.a,
        b: q.b,
        c: q.c,
        d1,
    })
}

/// Hurwitz--Kronecker class number `H(d)` as an exact rational:
/// `sum 1 / omega_Q` over `Q_d / SL(2,Z)`.
pub fn hurwitz_class_number(d: i64) -> Ratio<i64> {
    assert!(d > 0 && (d % 4 == 0 || d % 4 == 3));
    let mut h = Ratio::new(0, 1);
    for f in reduced_forms(d) {
        let w = if f.a == f.b && f.b == f.c {
            3
        } else if f.b == 0 && f.a == f.c {
            2
        } else {
            1
        };
        h += Ratio::new(1, w);
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn discriminants() {
        assert_eq!(Bqf::new(1, 1, 4).discriminant(), -15);
        assert_eq!(Bqf::new(1, 0, 1).discriminant(), -4);
        assert_eq!(Bqf::new(3, 3, 1).discriminant(), -3);
    }

    #[test]
    fn action_identity_and_example() {
        let q = Bqf::new(3, 3, 1);
        assert_eq!(act(&q, &IDENTITY), q);
        let g = UnimodularMatrix::new(0, -1, 1, 2);
        assert_eq!(act(&q, &g), Bqf::new(1, 1, 1));
    }

    #[test]
    fn action_is_a_right_action() {
        let gs = [
            UnimodularMatrix::new(1, 1, 0, 1),
            UnimodularMatrix::new(0, -1, 1, 0),
            UnimodularMatrix::new(1, 0, 1, 1),
            UnimodularMatrix::new(2, 1, 1, 1),
            UnimodularMatrix::new(1, -1, -1, 2),
        ];
        let qs = [Bqf::new(1, 1, 4), Bqf::new(2, 1, 2), Bqf::new(3, 3, 1)];
        for q in &qs {
            for g1 in &gs {
                for g2 in &gs {
                    assert_eq!(act(&act(q, g1), g2), act(q, &g1.mul(g2)));
                    assert_eq!(act(q, g1).discriminant(), q.discriminant());
                }
            }
        }
    }

    #[test]
    fn sl2_reduce_appendix_example() {
        let (red, g) = sl2_reduce(&Bqf::new(3, 3, 1));
        assert_eq!(red, Bqf::new(1, 1, 1));
        assert_eq!(g, UnimodularMatrix::new(0, -1, 1, 2));
    }

    #[test]
    fn sl2_reduce_fixed_point() {
        let (red, g) = sl2_reduce(&Bqf::new(1, 1, 4));
        assert_eq!(red, Bqf::new(1, 1, 4));
        assert_eq!(g, IDENTITY);
    }

    #[test]
    fn classes_disc_15() {
        assert_eq!(
            reduced_forms(15),
            vec![Bqf::new(1, 1, 4), Bqf::new(2, 1, 2)]
        );
    }

    #[test]
    fn stabilizers() {
        let s3 = sl2_stabilizer(&Bqf::new(1, 1, 1));
        assert_eq!(s3.len(), 3);
        assert_eq!(s3[1], UnimodularMatrix::new(-1, -1, 1, 0));
        assert_eq!(s3[2], UnimodularMatrix::new(0, 1, -1, -1));
        for s in &s3 {
            assert_eq!(act(&Bqf::new(1, 1, 1), s), Bqf::new(1, 1, 1));
        }
        assert_eq!(sl2_stabilizer(&Bqf::new(1, 0, 1)).len(), 2);
        assert_eq!(sl2_stabilizer(&Bqf::new(1, 1, 4)).len(), 1);
    }

    #[test]
    fn coset_reps_match_paper_at_two() {
        let reps = coset_reps_gamma0(2);
        assert_eq!(reps.len(), 3);
        assert!(reps.contains(&IDENTITY));
        assert!(reps.contains(&S_MAT));
        assert!(reps.contains(&UnimodularMatrix::new(1, 0, 1, 1)));
    }

    #[test]
    fn coset_reps_counts_and_distinctness() {
        assert_eq!(coset_reps_gamma0(1).len(), 1);
        assert_eq!(coset_reps_gamma0(3).len(), 4);
        for n in 1..=12 {
            let reps = coset_reps_gamma0(n);
            assert_eq!(reps.len() as i64, gamma0_index(n), "index at N={n}");
            for (i, g1) in reps.iter().enumerate() {
                for g2 in reps.iter().skip(i + 1) {
                    // distinct right cosets: g1 g2^{-1} outside Gamma_0(N)
                    assert!(
                        !g1.mul(&g2.inverse()).in_gamma0(n)
                            && !g1.mul(&g2.inverse()).neg().in_gamma0(n)
                            || !g1.mul(&g2.inverse()).in_gamma0(n),
                        "repeated coset at N={n}"
                    );
                }
            }
        }
    }

    #[test]
    fn gamma0_reduce_appendix_example() {
        let (red, h) = gamma0_reduce(&Bqf::new(3, 3, 1), 2);
        assert_eq!(red, Bqf::new(1, -1, 1));
        assert_eq!(h, UnimodularMatrix::new(1, 0, 2, 1));
        assert_eq!(act(&red, &h), Bqf::new(3, 3, 1));
    }

    #[test]
    fn gamma0_reduce_second_example() {
        let (r1, _) = gamma0_reduce(&Bqf::new(5, 4, 1), 3);
        let (r2, _) = gamma0_reduce(&Bqf::new(2, -2, 1), 3);
        assert_eq!(r1, r2);
        let (r3, _) = gamma0_reduce(&Bqf::new(1, 0, 1), 3);
        assert_ne!(r1, r3);
    }

    #[test]
    fn gamma0_reduce_idempotent() {
        for (q, n) in [
            (Bqf::new(3, 3, 1), 2),
            (Bqf::new(5, 4, 1), 3),
            (Bqf::new(6, 3, 1), 3),
            (Bqf::new(11, 7, 2), 5),
        ] {
            let (red, _) = gamma0_reduce(&q, n);
            let (red2, h2) = gamma0_reduce(&red, n);
            assert_eq!(red, red2);
            assert_eq!(act(&red, &h2), red);
        }
    }

    #[test]
    fn class_reps_disc4_level3() {
        let forms: Vec<Bqf> = class_reps(4, 3, false).iter().map(|r| r.form).collect();
        assert_eq!(forms, vec![Bqf::new(1, 0, 1), Bqf::new(2, -2, 1)]);
    }

    #[test]
    fn class_reps_disc15_level3_filtered() {
        let reps = class_reps(15, 3, true);
        let forms: Vec<Bqf> = reps.iter().map(|r| r.form).collect();
        assert_eq!(forms, vec![Bqf::new(3, -3, 2), Bqf::new(6, 3, 1)]);
        assert!(reps.iter().all(|r| r.stab_order == 1));
    }

    #[test]
    fn class_reps_disc3_level1() {
        let reps = class_reps(3, 1, false);
        assert_eq!(reps.len(), 1);
        assert_eq!(reps[0].form, Bqf::new(1, 1, 1));
        assert_eq!(reps[0].stab_order, 3);
    }

    #[test]
    fn class_reps_csv_rows() {
        let csv = class_reps_csv(15, 3, true);
        assert_eq!(csv, "d,N,a,b,c,omega
15,3,3,-3,2,1
15,3,6,3,1,1
");
        let csv1 = class_reps_csv(3, 1, false);
        assert_eq!(csv1, "d,N,a,b,c,omega
3,1,1,1,1,3
");
    }

    #[test]
    fn kronecker_values() {
        assert_eq!(kronecker(4, 1), 1);
        assert_eq!(kronecker(4, 3), 1);
        assert_eq!(kronecker(8, 3), -1);
        assert_eq!(kronecker(-3, 2), -1);
        assert_eq!(kronecker(-3, 4), 1);
        assert_eq!(kronecker(5, 5), 0);
        for a in -20i64..20 {
            for n1 in 1i64..15 {
                for n2 in 1i64..10 {
                    assert_eq!(
                        kronecker(a, n1 * n2),
                        kronecker(a, n1) * kronecker(a, n2),
                        "a={a} n1={n1} n2={n2}"
                    );
                }
            }
        }
    }

    #[test]
    fn genus_characters_examples() {
        // level-1 twist chi_{5,-3} on discriminant -15 classes
        assert_eq!(genus_character(&Bqf::new(1, 1, 4), 5).unwrap(), 1);
        assert_eq!(genus_character(&Bqf::new(2, 1, 2), 5).unwrap(), -1);
        // chi_{-3} on the level-3 representatives
        assert_eq!(genus_character(&Bqf::new(3, -3, 2), -3).unwrap(), -1);
        assert_eq!(genus_character(&Bqf::new(6, 3, 1), -3).unwrap(), 1);
        // imprimitive forms sharing a factor with D1 vanish
        assert_eq!(genus_character(&Bqf::new(3, 3, 3), -3).unwrap(), 0);
    }

    #[test]
    fn genus_character_constant_on_orbits() {
        let gammas = [
            UnimodularMatrix::new(1, 0, 3, 1),
            UnimodularMatrix::new(1, 1, 0, 1),
            UnimodularMatrix::new(4, 1, 3, 1),
            UnimodularMatrix::new(7, 2, 3, 1).neg(),
        ];
        for q in [Bqf::new(3, -3, 2), Bqf::new(6, 3, 1)] {
            let base = genus_character(&q, -3).unwrap();
            for g in &gammas {
                assert!(g.in_gamma0(3));
                assert_eq!(genus_character(&act(&q, g), -3).unwrap(), base);
            }
        }
    }

    #[test]
    fn hurwitz_small_values() {
        assert_eq!(hurwitz_class_number(3), Ratio::new(1, 3));
        assert_eq!(hurwitz_class_number(4), Ratio::new(1, 2));
        assert_eq!(hurwitz_class_number(15), Ratio::new(2, 1));
        assert_eq!(hurwitz_class_number(12), Ratio::new(4, 3));
    }

    #[test]
    fn reduction_constant_on_orbits() {
        let mut lcg: u64 = 0x243F6A8885A308D3;
        let mut next = move || {
            lcg = lcg
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((lcg >> 33) % 7) as i64 - 3
        };
        for n in 1..=6i64 {
            for d in [3, 4, 15, 20, 23, 24] {
                for rep in class_reps(d, n, false) {
                    let (canon, _) = gamma0_reduce(&rep.form, n);
                    assert_eq!(canon, rep.form, "rep not canonical d={d} N={n}");
                    for _ in 0..8 {
                        let a = next();
                        let b = next();
                        let c = next() * n;
                        let lower = UnimodularMatrix::new(1, 0, c, 1);
                        let g = UnimodularMatrix::translation(a)
                            .mul(&lower)
                            .mul(&UnimodularMatrix::translation(b));
                        let moved = act(&rep.form, &g);
                        let (canon2, h) = gamma0_reduce(&moved, n);
                        assert_eq!(canon2, canon, "d={d} N={n} g={g:?}");
                        assert_eq!(act(&canon2, &h), moved);
                        assert!(h.in_gamma0(n));
                    }
                }
            }
        }
    }

    #[test]
    fn partition_by_classes_brute_force() {
        // every form of discriminant -d in a window reduces to exactly one
        // listed representative
        for n in 1..=6i64 {
            for d in [3i64, 4, 12, 15, 16, 23, 32] {
                let reps = class_reps(d, n, false);
                let rep_forms: Vec<Bqf> = reps.iter().map(|r| r.form).collect();
                let bound = 3 * d;
                for a in 1..=bound {
                    for b in -bound..=bound {
                        let num = b * b + d;
                        if num % (4 * a) != 0 {
                            continue;
                        }
                        let f = Bqf::new(a, b, num / (4 * a));
                        let (canon, _) = gamma0_reduce(&f, n);
                        assert!(
                            rep_forms.contains(&canon),
                            "missing class for {f:?} at N={n}: canon {canon:?}"
                        );
                    }
                }
            }
        }
    }
}
