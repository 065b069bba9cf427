//! Basis monomials of the coefficient ring and the rewrite system that
//! reduces raw power products onto them.
//!
//! The ring is generated by `s_p` (one generator per prime `p`), `r_j`
//! (`j >= 0`), and `u`, `v`, `t`, `x`, subject to
//!
//! ```text
//! t*x^2 = t*x - x        u*x = v*x = t*x
//! s_p^2 = s_p            r_j^2 = r_j
//! s_p*s_q = 0 (p != q)   r_j*r_k = 0 (j != k)
//! ```
//!
//! It splits as an idempotent factor tensored with a `u,v,t,x` factor, and a
//! Z-linear basis is given by pairs of
//!
//! * idempotent part: `1`, `s_p`, `r_j`, or `s_p*r_j`;
//! * main part: `u^a v^b t^c`, `t^c x`, or `x^e` with `e >= 2`.
//!
//! [`reduce_raw`] rewrites an arbitrary power product `u^a v^b t^c x^d` into
//! a Z-combination of main-part basis monomials: while an `x` is present,
//! each `u` and `v` turns into a `t` (rule `ux = vx = tx`), and then
//! `t^c x^d` with `c >= 1, d >= 2` rewrites by
//!
//! ```text
//! t^c x^d  ->  t^c x^(d-1) - t^(c-1) x^(d-1)
//! ```
//!
//! (multiply `t x^2 = t x - x` by `t^(c-1) x^(d-2)`). Every rule strictly
//! decreases the measure `(x-exponent, u+v-exponent)` lexicographically, so
//! reduction terminates, and the terminal monomials are exactly the basis.
//! [`reduce_raw_random_order`] applies the same rules with a randomized
//! schedule; agreement of the two reducers is the confluence check run by
//! the `ring` verification suite.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;
use thiserror::Error;

/// A prime number, validated at construction.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Prime(u64);

/// Error returned when a claimed prime fails the primality check.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Error)]
#[error("{0} is not a prime number")]
pub struct NotPrime(pub u64);

impl Prime {
    pub fn new(n: u64) -> Result<Prime, NotPrime> {
        if is_prime_u64(n) {
            Ok(Prime(n))
        } else {
            Err(NotPrime(n))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Deterministic Miller-Rabin over the full u64 range.
///
/// The witness set 2..=37 is known to be exact for all 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in WITNESSES {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Basis of the idempotent tensor factor.
///
/// The derived `Ord` is the canonical rendering order:
/// `1 < s_p (p ascending) < r_j (j ascending) < s_p*r_j (lexicographic)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum IdemPart {
    One,
    S(Prime),
    R(u32),
    Sr(Prime, u32),
}

impl IdemPart {
    /// Product in the idempotent factor; `None` means the product is zero.
    pub fn product(self, other: IdemPart) -> Option<IdemPart> {
        use IdemPart::*;
        match (self, other) {
            (One, e) | (e, One) => Some(e),
            (S(p), S(q)) => (p == q).then_some(S(p)),
            (R(j), R(k)) => (j == k).then_some(R(j)),
            (S(p), R(j)) | (R(j), S(p)) => Some(Sr(p, j)),
            (S(p), Sr(q, j)) | (Sr(q, j), S(p)) => (p == q).then_some(Sr(q, j)),
            (R(j), Sr(p, k)) | (Sr(p, k), R(j)) => (j == k).then_some(Sr(p, k)),
            (Sr(p, j), Sr(q, k)) => (p == q && j == k).then_some(Sr(p, j)),
        }
    }

    fn render(&self) -> Option<String> {
        match self {
            IdemPart::One => None,
            IdemPart::S(p) => Some(format!("s_{p}")),
            IdemPart::R(j) => Some(format!("r_{j}")),
            IdemPart::Sr(p, j) => Some(format!("s_{p}*r_{j}")),
        }
    }
}

/// Basis of the `u,v,t,x` tensor factor.
///
/// The derived `Ord` is the canonical rendering order: `u^a v^b t^c` by
/// `(a, b, c)` lexicographic, then `t^c x` by `c`, then `x^e` by `e`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum MainPart {
    /// `u^u v^v t^t`; the constant monomial when all three vanish.
    Uvt { u: u32, v: u32, t: u32 },
    /// `t^t x`; plain `x` when `t = 0`.
    Tx { t: u32 },
    /// `x^e`, only for `e >= 2` (`x^0` is `Uvt`, `x^1` is `Tx`).
    Xpow { e: u32 },
}

impl MainPart {
    pub fn one() -> MainPart {
        MainPart::Uvt { u: 0, v: 0, t: 0 }
    }

    /// `x^e`. Panics if `e < 2`; smaller powers are `Uvt`/`Tx` monomials.
    pub fn xpow(e: u32) -> MainPart {
        assert!(e >= 2, "x^{e} is not an Xpow basis monomial");
        MainPart::Xpow { e }
    }

    pub fn is_canonical(&self) -> bool {
        match self {
            MainPart::Xpow { e } => *e >= 2,
            _ => true,
        }
    }

    /// Exponent sum of `t`, `u`, `v`; the `x` exponent does not count.
    pub fn tuv_degree(&self) -> i64 {
        match *self {
            MainPart::Uvt { u, v, t } => u as i64 + v as i64 + t as i64,
            MainPart::Tx { t } => t as i64,
            MainPart::Xpow { .. } => 0,
        }
    }

    pub fn raw(&self) -> RawMonomial {
        match *self {
            MainPart::Uvt { u, v, t } => RawMonomial { u, v, t, x: 0 },
            MainPart::Tx { t } => RawMonomial {
                u: 0,
                v: 0,
                t,
                x: 1,
            },
            MainPart::Xpow { e } => RawMonomial {
                u: 0,
                v: 0,
                t: 0,
                x: e,
            },
        }
    }

    fn render(&self) -> Option<String> {
        fn push_pow(out: &mut Vec<String>, var: &str, exp: u32) {
            match exp {
                0 => {}
                1 => out.push(var.to_string()),
                _ => out.push(format!("{var}^{exp}")),
            }
        }
        let mut parts = Vec::new();
        match *self {
            MainPart::Uvt { u, v, t } => {
                push_pow(&mut parts, "u", u);
                push_pow(&mut parts, "v", v);
                push_pow(&mut parts, "t", t);
            }
            MainPart::Tx { t } => {
                push_pow(&mut parts, "t", t);
                parts.push("x".to_string());
            }
            MainPart::Xpow { e } => push_pow(&mut parts, "x", e),
        }
        if parts.is_empty() {
            None
        } else {
            Some(parts.join("*"))
        }
    }
}

/// A basis monomial of the full ring: idempotent part times main part.
///
/// The derived `Ord` (idempotent part first, then main part) is the total
/// order used for rendering and deterministic iteration everywhere.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BasisMonomial {
    pub idem: IdemPart,
    pub main: MainPart,
}

impl BasisMonomial {
    pub fn one() -> BasisMonomial {
        BasisMonomial {
            idem: IdemPart::One,
            main: MainPart::one(),
        }
    }

    /// `u^u v^v t^t` with trivial idempotent part.
    pub fn uvt(u: u32, v: u32, t: u32) -> BasisMonomial {
        BasisMonomial {
            idem: IdemPart::One,
            main: MainPart::Uvt { u, v, t },
        }
    }

    /// The torsion bookkeeping monomial `s_p r_j t^i x`.
    pub fn srtx(p: Prime, j: u32, i: u32) -> BasisMonomial {
        BasisMonomial {
            idem: IdemPart::Sr(p, j),
            main: MainPart::Tx { t: i },
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.main.is_canonical()
    }
}

impl fmt::Display for BasisMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.idem.render(), self.main.render()) {
            (None, None) => write!(f, "1"),
            (Some(i), None) => write!(f, "{i}"),
            (None, Some(m)) => write!(f, "{m}"),
            (Some(i), Some(m)) => write!(f, "{i}*{m}"),
        }
    }
}

/// An unreduced power product `u^u v^v t^t x^x` of the main factor.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct RawMonomial {
    pub u: u32,
    pub v: u32,
    pub t: u32,
    pub x: u32,
}

impl RawMonomial {
    /// Exponent-wise product of two raw monomials.
    pub fn product(self, other: RawMonomial) -> RawMonomial {
        let add = |a: u32, b: u32| a.checked_add(b).expect("monomial exponent overflow");
        RawMonomial {
            u: add(self.u, other.u),
            v: add(self.v, other.v),
            t: add(self.t, other.t),
            x: add(self.x, other.x),
        }
    }

    fn is_basis(&self) -> bool {
        self.x == 0 || (self.u == 0 && self.v == 0 && (self.x == 1 || self.t == 0))
    }

    fn to_main_part(self) -> MainPart {
        debug_assert!(self.is_basis());
        if self.x == 0 {
            MainPart::Uvt {
                u: self.u,
                v: self.v,
                t: self.t,
            }
        } else if self.x == 1 {
            MainPart::Tx { t: self.t }
        } else {
            MainPart::Xpow { e: self.x }
        }
    }
}

fn add_coeff<K: Ord>(map: &mut BTreeMap<K, BigInt>, key: K, c: BigInt) {
    let entry = map.entry(key).or_insert_with(BigInt::zero);
    *entry += c;
    // zeros are pruned by the callers when the map is drained
}

/// Deterministic reduction of a raw power product to basis monomials.
pub fn reduce_raw(raw: RawMonomial) -> Vec<(MainPart, BigInt)> {
    if raw.x == 0 {
        return vec![(raw.to_main_part(), BigInt::one())];
    }
    // An x is present, so every u and v becomes a t.
    let t0 = raw
        .t
        .checked_add(raw.u)
        .and_then(|t| t.checked_add(raw.v))
        .expect("monomial exponent overflow");
    // Worklist keyed by (x, t); rewriting only produces keys strictly below
    // the current maximum, so each key is processed exactly once.
    let mut work: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
    work.insert((raw.x, t0), BigInt::one());
    let mut out: BTreeMap<MainPart, BigInt> = BTreeMap::new();
    while let Some(((x, t), c)) = work.pop_last() {
        if c.is_zero() {
            continue;
        }
        if x == 1 {
            add_coeff(&mut out, MainPart::Tx { t }, c);
        } else if t == 0 {
            add_coeff(&mut out, MainPart::Xpow { e: x }, c);
        } else {
            // t^t x^x -> t^t x^(x-1) - t^(t-1) x^(x-1)
            add_coeff(&mut work, (x - 1, t), c.clone());
            add_coeff(&mut work, (x - 1, t - 1), -c);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out.into_iter().collect()
}

/// Reduction with a randomized rule schedule.
///
/// Picks a random pending term and a random applicable rewrite rule at each
/// step. Used to exercise confluence against [`reduce_raw`].
pub fn reduce_raw_random_order<R: Rng + ?Sized>(
    raw: RawMonomial,
    rng: &mut R,
) -> Vec<(MainPart, BigInt)> {
    #[derive(Clone, Copy)]
    enum Rule {
        SubstU,
        SubstV,
        SplitTx,
    }
    let mut work: Vec<(RawMonomial, BigInt)> = vec![(raw, BigInt::one())];
    let mut out: BTreeMap<MainPart, BigInt> = BTreeMap::new();
    while !work.is_empty() {
        let idx = rng.gen_range(0..work.len());
        let (m, c) = work.swap_remove(idx);
        let mut rules = Vec::with_capacity(3);
        if m.u >= 1 && m.x >= 1 {
            rules.push(Rule::SubstU);
        }
        if m.v >= 1 && m.x >= 1 {
            rules.push(Rule::SubstV);
        }
        if m.t >= 1 && m.x >= 2 {
            rules.push(Rule::SplitTx);
        }
        if rules.is_empty() {
            add_coeff(&mut out, m.to_main_part(), c);
            continue;
        }
        match rules[rng.gen_range(0..rules.len())] {
            Rule::SubstU => work.push((
                RawMonomial {
                    u: m.u - 1,
                    t: m.t + 1,
                    ..m
                },
                c,
            )),
            Rule::SubstV => work.push((
                RawMonomial {
                    v: m.v - 1,
                    t: m.t + 1,
                    ..m
                },
                c,
            )),
            Rule::SplitTx => {
                work.push((RawMonomial { x: m.x - 1, ..m }, c.clone()));
                work.push((
                    RawMonomial {
                        x: m.x - 1,
                        t: m.t - 1,
                        ..m
                    },
                    -c,
                ));
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out.into_iter().collect()
}
