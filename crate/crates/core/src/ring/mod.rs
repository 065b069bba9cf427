//! Exact arithmetic in the coefficient ring of integral Hodge functions.
//!
//! [`RingElement`] is a sparse integer combination of [`BasisMonomial`]s,
//! kept fully reduced at all times: the representation of an element is
//! unique, so `==` decides ring equality. Multiplication distributes over
//! monomial pairs and reduces each product through the rewrite system in
//! [`monomial`].
//!
//! [`LocalizedElement`] adjoins an inverse of `u*v`: it is a pair of a
//! numerator and a nonnegative denominator exponent, compared by
//! cross-multiplication (see [`LocalizedElement::localized_equals`] for the
//! caveat and [`LocalizedElement::localized_equals_witnessed`] for the
//! general semantics).

pub mod monomial;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_traits::{One, Zero};

pub use monomial::{
    is_prime_u64, reduce_raw, reduce_raw_random_order, BasisMonomial, IdemPart, MainPart, NotPrime,
    Prime, RawMonomial,
};

/// Bound on the multiplier search of
/// [`LocalizedElement::localized_equals_witnessed`].
pub const DEFAULT_WITNESS_POWER: u32 = 4;

/// A fully reduced element of the ring, as a sparse map from basis
/// monomials to nonzero integer coefficients.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct RingElement {
    terms: BTreeMap<BasisMonomial, BigInt>,
}

impl RingElement {
    pub fn zero() -> RingElement {
        RingElement::default()
    }

    pub fn one() -> RingElement {
        RingElement::from_monomial(BasisMonomial::one())
    }

    pub fn from_monomial(m: BasisMonomial) -> RingElement {
        RingElement::from_term(m, 1)
    }

    pub fn from_term(m: BasisMonomial, coeff: impl Into<BigInt>) -> RingElement {
        debug_assert!(m.is_canonical());
        let coeff = coeff.into();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(m, coeff);
        }
        RingElement { terms }
    }

    /// The monomial `(u*v)^k`.
    pub fn uv_pow(k: u32) -> RingElement {
        RingElement::from_monomial(BasisMonomial::uvt(k, k, 0))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisMonomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of a basis monomial (zero when absent).
    pub fn coeff(&self, m: &BasisMonomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn scalar_mul(&self, n: impl Into<BigInt>) -> RingElement {
        let n = n.into();
        if n.is_zero() {
            return RingElement::zero();
        }
        RingElement {
            terms: self.terms.iter().map(|(m, c)| (*m, c * &n)).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> RingElement {
        let mut acc = RingElement::one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Largest `t,u,v` exponent sum over the stored monomials, or `None`
    /// for the zero element. Powers of `x` do not contribute.
    pub fn degree(&self) -> Option<i64> {
        self.terms.keys().map(|m| m.main.tuv_degree()).max()
    }

    /// True when no `u` or `v` occurs, i.e. the element lies in the
    /// subring generated by the `s_p`, `r_j`, `t` and `x`.
    pub fn is_in_subring_s(&self) -> bool {
        self.terms.keys().all(|m| match m.main {
            MainPart::Uvt { u, v, .. } => u == 0 && v == 0,
            _ => true,
        })
    }

    fn insert_add(terms: &mut BTreeMap<BasisMonomial, BigInt>, m: BasisMonomial, c: BigInt) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }
}

impl Add for &RingElement {
    type Output = RingElement;

    fn add(self, rhs: &RingElement) -> RingElement {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            RingElement::insert_add(&mut terms, *m, c.clone());
        }
        RingElement { terms }
    }
}

impl Sub for &RingElement {
    type Output = RingElement;

    fn sub(self, rhs: &RingElement) -> RingElement {
        let mut terms = self.terms.clone();
        for (m, c) in &rhs.terms {
            RingElement::insert_add(&mut terms, *m, -c.clone());
        }
        RingElement { terms }
    }
}

impl Neg for &RingElement {
    type Output = RingElement;

    fn neg(self) -> RingElement {
        RingElement {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Mul for &RingElement {
    type Output = RingElement;

    fn mul(self, rhs: &RingElement) -> RingElement {
        let mut terms = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                let Some(idem) = m1.idem.product(m2.idem) else {
                    continue;
                };
                let coeff = c1 * c2;
                let raw = m1.main.raw().product(m2.main.raw());
                for (main, k) in reduce_raw(raw) {
                    RingElement::insert_add(&mut terms, BasisMonomial { idem, main }, &coeff * k);
                }
            }
        }
        RingElement { terms }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.sign() == Sign::Minus;
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let magnitude = c.magnitude();
            let rendered = m.to_string();
            if rendered == "1" {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{rendered}")?;
            } else {
                write!(f, "{magnitude}*{rendered}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingElement({self})")
    }
}

/// An element of the localization at `u*v`, stored as
/// `numerator * (u*v)^(-denom_exp)`.
#[derive(Clone, Debug)]
pub struct LocalizedElement {
    numerator: RingElement,
    denom_exp: u32,
}

impl LocalizedElement {
    pub fn new(numerator: RingElement, denom_exp: u32) -> LocalizedElement {
        LocalizedElement {
            numerator,
            denom_exp,
        }
    }

    pub fn zero() -> LocalizedElement {
        LocalizedElement::new(RingElement::zero(), 0)
    }

    pub fn from_ring(e: RingElement) -> LocalizedElement {
        LocalizedElement::new(e, 0)
    }

    /// `(u*v)^k` for a possibly negative `k`.
    pub fn uv_pow(k: i64) -> LocalizedElement {
        if k >= 0 {
            LocalizedElement::from_ring(RingElement::uv_pow(k as u32))
        } else {
            LocalizedElement::new(RingElement::one(), (-k) as u32)
        }
    }

    pub fn numerator(&self) -> &RingElement {
        &self.numerator
    }

    pub fn denom_exp(&self) -> u32 {
        self.denom_exp
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn add(&self, other: &LocalizedElement) -> LocalizedElement {
        let d = self.denom_exp.max(other.denom_exp);
        let lhs = &self.numerator * &RingElement::uv_pow(d - self.denom_exp);
        let rhs = &other.numerator * &RingElement::uv_pow(d - other.denom_exp);
        LocalizedElement::new(&lhs + &rhs, d)
    }

    pub fn negate(&self) -> LocalizedElement {
        LocalizedElement::new(-&self.numerator, self.denom_exp)
    }

    pub fn sub(&self, other: &LocalizedElement) -> LocalizedElement {
        self.add(&other.negate())
    }

    pub fn mul(&self, other: &LocalizedElement) -> LocalizedElement {
        LocalizedElement::new(
            &self.numerator * &other.numerator,
            self.denom_exp + other.denom_exp,
        )
    }

    /// Equality by cross-multiplication:
    /// `a/(uv)^d == b/(uv)^e  iff  a*(uv)^e == b*(uv)^d`.
    ///
    /// This is exact localization equality provided `u*v` is not a zero
    /// divisor; otherwise it may miss equalities witnessed only by an extra
    /// `(u*v)^m` factor, see
    /// [`localized_equals_witnessed`](Self::localized_equals_witnessed).
    pub fn localized_equals(&self, other: &LocalizedElement) -> bool {
        self.localized_equals_witnessed(other, 0)
    }

    /// Equality in the general localization semantics, with the witness
    /// power bounded by `max_power`: true iff some `m <= max_power` has
    /// `(uv)^m * (a*(uv)^e - b*(uv)^d) = 0`.
    pub fn localized_equals_witnessed(&self, other: &LocalizedElement, max_power: u32) -> bool {
        let lhs = &self.numerator * &RingElement::uv_pow(other.denom_exp);
        let rhs = &other.numerator * &RingElement::uv_pow(self.denom_exp);
        let mut diff = &lhs - &rhs;
        if diff.is_zero() {
            return true;
        }
        let uv = RingElement::uv_pow(1);
        for _ in 0..max_power {
            diff = &diff * &uv;
            if diff.is_zero() {
                return true;
            }
        }
        false
    }

    /// Degree of the underlying localized element:
    /// `degree(numerator) - 2 * denom_exp`, or `None` for zero.
    pub fn degree(&self) -> Option<i64> {
        self.numerator
            .degree()
            .map(|d| d - 2 * self.denom_exp as i64)
    }
}

impl fmt::Display for LocalizedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom_exp == 0 {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / (u*v)^{}", self.numerator, self.denom_exp)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn elem(terms: &[(BasisMonomial, i64)]) -> RingElement {
        let mut acc = RingElement::zero();
        for (m, c) in terms {
            acc = &acc + &RingElement::from_term(*m, *c);
        }
        acc
    }

    #[test]
    fn add_cancels() {
        let uv = RingElement::uv_pow(1);
        assert!((&uv + &-&uv).is_zero());
        let one_plus_uv = &RingElement::one() + &uv;
        let sum = &one_plus_uv + &uv;
        assert_eq!(sum.coeff(&BasisMonomial::uvt(1, 1, 0)), BigInt::from(2));
        assert_eq!(sum.coeff(&BasisMonomial::one()), BigInt::from(1));
    }

    #[test]
    fn ux_and_vx_collapse_to_tx() {
        let u = RingElement::from_monomial(BasisMonomial::uvt(1, 0, 0));
        let v = RingElement::from_monomial(BasisMonomial::uvt(0, 1, 0));
        let x = RingElement::from_monomial(BasisMonomial {
            idem: IdemPart::One,
            main: MainPart::Tx { t: 0 },
        });
        let tx = RingElement::from_monomial(BasisMonomial {
            idem: IdemPart::One,
            main: MainPart::Tx { t: 1 },
        });
        assert_eq!(&u * &x, tx);
        assert_eq!(&v * &x, tx);
    }

    #[test]
    fn square_of_torsion_monomial() {
        // (s_2 r_0 t x)^2 = s_2 r_0 t^2 x - s_2 r_0 t x
        let m = RingElement::from_monomial(BasisMonomial::srtx(p(2), 0, 1));
        let expected = elem(&[
            (BasisMonomial::srtx(p(2), 0, 2), 1),
            (BasisMonomial::srtx(p(2), 0, 1), -1),
        ]);
        assert_eq!(&m * &m, expected);
    }

    #[test]
    fn distinct_primes_annihilate() {
        let a = RingElement::from_monomial(BasisMonomial::srtx(p(2), 0, 1));
        let b = RingElement::from_monomial(BasisMonomial::srtx(p(3), 0, 1));
        assert!((&a * &b).is_zero());
    }

    #[test]
    fn x_squared_is_a_basis_monomial() {
        let x = RingElement::from_monomial(BasisMonomial {
            idem: IdemPart::One,
            main: MainPart::Tx { t: 0 },
        });
        let x2 = RingElement::from_monomial(BasisMonomial {
            idem: IdemPart::One,
            main: MainPart::xpow(2),
        });
        assert_eq!(&x * &x, x2);
    }

    #[test]
    fn degree_examples() {
        // u^2 v^3 t has degree 6
        let m = RingElement::from_monomial(BasisMonomial::uvt(2, 3, 1));
        assert_eq!(m.degree(), Some(6));
        // x^2 has degree 0, t^3 x has degree 3
        let x2 = RingElement::from_monomial(BasisMonomial {
            idem: IdemPart::One,
            main: MainPart::xpow(2),
        });
        assert_eq!(x2.degree(), Some(0));
        let t3x = RingElement::from_monomial(BasisMonomial {
            idem: IdemPart::One,
            main: MainPart::Tx { t: 3 },
        });
        assert_eq!(t3x.degree(), Some(3));
        // maximum over monomials
        assert_eq!((&RingElement::uv_pow(1) + &t3x).degree(), Some(3));
        assert_eq!(RingElement::zero().degree(), None);
    }

    #[test]
    fn subring_membership() {
        let t3x = RingElement::from_monomial(BasisMonomial {
            idem: IdemPart::Sr(p(2), 0),
            main: MainPart::Tx { t: 3 },
        });
        assert!(t3x.is_in_subring_s());
        assert!(RingElement::from_monomial(BasisMonomial::uvt(0, 0, 5)).is_in_subring_s());
        assert!(!RingElement::uv_pow(1).is_in_subring_s());
        assert!(RingElement::zero().is_in_subring_s());
    }

    #[test]
    fn localized_equality_by_cross_multiplication() {
        // (uv)^2 / (uv) == uv
        let a = LocalizedElement::new(RingElement::uv_pow(2), 1);
        let b = LocalizedElement::from_ring(RingElement::uv_pow(1));
        assert!(a.localized_equals(&b));
        // uv != 1
        let one = LocalizedElement::from_ring(RingElement::one());
        assert!(!b.localized_equals(&one));
        // t^2 x / (uv) == x, since uv * x = t^2 x
        let t2x = RingElement::from_monomial(BasisMonomial {
            idem: IdemPart::One,
            main: MainPart::Tx { t: 2 },
        });
        let x = RingElement::from_monomial(BasisMonomial {
            idem: IdemPart::One,
            main: MainPart::Tx { t: 0 },
        });
        assert!(LocalizedElement::new(t2x.clone(), 1)
            .localized_equals(&LocalizedElement::from_ring(x.clone())));
        // and in the other arrangement the two classes differ
        assert!(!LocalizedElement::from_ring(t2x).localized_equals(&LocalizedElement::new(x, 1)));
    }

    #[test]
    fn localized_add_normalizes_denominators() {
        let a = LocalizedElement::new(RingElement::one(), 1); // (uv)^-1
        let b = LocalizedElement::from_ring(RingElement::one()); // 1
        let sum = a.add(&b);
        assert_eq!(sum.denom_exp(), 1);
        let expected = &RingElement::one() + &RingElement::uv_pow(1);
        assert_eq!(*sum.numerator(), expected);
    }

    #[test]
    fn localized_degree() {
        let a = LocalizedElement::new(RingElement::uv_pow(2), 3);
        assert_eq!(a.degree(), Some(-2));
        assert_eq!(LocalizedElement::zero().degree(), None);
    }

    #[test]
    fn rendering_golden() {
        assert_eq!(RingElement::zero().to_string(), "0");
        assert_eq!(RingElement::one().to_string(), "1");
        let e = elem(&[
            (BasisMonomial::one(), 1),
            (BasisMonomial::uvt(1, 1, 0), 10),
            (BasisMonomial::uvt(2, 2, 0), 1),
            (BasisMonomial::srtx(p(2), 0, 2), 1),
            (BasisMonomial::srtx(p(2), 0, 3), -1),
        ]);
        assert_eq!(
            e.to_string(),
            "1 + 10*u*v + u^2*v^2 + s_2*r_0*t^2*x - s_2*r_0*t^3*x"
        );
        let neg_lead = elem(&[(BasisMonomial::srtx(p(2), 0, 3), -1)]);
        assert_eq!(neg_lead.to_string(), "-s_2*r_0*t^3*x");
        let neg_two = elem(&[(BasisMonomial::one(), -2)]);
        assert_eq!(neg_two.to_string(), "-2");
    }
}
