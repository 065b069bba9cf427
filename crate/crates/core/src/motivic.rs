//! The Grothendieck-ring layer: formal classes of varieties and the
//! extension of the integral Hodge function to them.
//!
//! A [`VirtualClass`] is a free term algebra over cohomology profiles: an
//! integer combination of terms, each a finite multiset of profiles times a
//! (possibly negative) power of the Lefschetz class `L`. Cut-and-paste and
//! blow-up relations are deliberately *not* quotiented out syntactically;
//! instead [`cut_and_paste_check`] and the blow-up identity verify that
//! [`h_vir`] respects them, which is all the downstream pipeline needs.
//!
//! `h_vir` sends a term to the product of the integral Hodge functions of
//! its factors times `(u*v)^l`, with negative `l` collected into the
//! denominator exponent of a [`LocalizedElement`].
//!
//! Multiplicativity has three independent routes, cross-checked by the
//! `kunneth` verification suite:
//! ring multiplication `H_Z(X) * H_Z(Y)`, the expanded bilinear formula
//! [`product_hz_direct`], and `H_Z` of the profile-level Kunneth product
//! [`kunneth_product_profile`].

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::abgroup::FinAbGroup;
use crate::hodge::CohomologyProfile;
use crate::ring::{BasisMonomial, LocalizedElement, Prime, RingElement};

/// A single term: a sorted multiset of profiles times `L^lefschetz`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct ClassTerm {
    factors: Vec<CohomologyProfile>,
    lefschetz: i64,
}

impl ClassTerm {
    fn point() -> ClassTerm {
        ClassTerm {
            factors: Vec::new(),
            lefschetz: 0,
        }
    }

    pub fn factors(&self) -> &[CohomologyProfile] {
        &self.factors
    }

    pub fn lefschetz_power(&self) -> i64 {
        self.lefschetz
    }
}

/// An element of the free algebra generated by profile classes and `L^(-1)`,
/// modelling the ring of varieties with the Lefschetz class inverted.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct VirtualClass {
    terms: BTreeMap<ClassTerm, BigInt>,
}

impl VirtualClass {
    pub fn zero() -> VirtualClass {
        VirtualClass::default()
    }

    /// The class of a point (empty product, `L^0`).
    pub fn point() -> VirtualClass {
        VirtualClass::from_integer(1)
    }

    /// An integer multiple of the point class.
    pub fn from_integer(n: impl Into<BigInt>) -> VirtualClass {
        let n = n.into();
        let mut terms = BTreeMap::new();
        if !n.is_zero() {
            terms.insert(ClassTerm::point(), n);
        }
        VirtualClass { terms }
    }

    pub fn from_profile(profile: CohomologyProfile) -> VirtualClass {
        let mut terms = BTreeMap::new();
        terms.insert(
            ClassTerm {
                factors: vec![profile],
                lefschetz: 0,
            },
            BigInt::one(),
        );
        VirtualClass { terms }
    }

    /// `L^k`, with `k` possibly negative.
    pub fn lefschetz_power(k: i64) -> VirtualClass {
        let mut terms = BTreeMap::new();
        terms.insert(
            ClassTerm {
                factors: Vec::new(),
                lefschetz: k,
            },
            BigInt::one(),
        );
        VirtualClass { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ClassTerm, &BigInt)> {
        self.terms.iter()
    }

    fn insert_add(terms: &mut BTreeMap<ClassTerm, BigInt>, key: ClassTerm, c: BigInt) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match terms.entry(key) {
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

    pub fn add(&self, other: &VirtualClass) -> VirtualClass {
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            VirtualClass::insert_add(&mut terms, k.clone(), c.clone());
        }
        VirtualClass { terms }
    }

    pub fn negate(&self) -> VirtualClass {
        VirtualClass {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &VirtualClass) -> VirtualClass {
        self.add(&other.negate())
    }

    pub fn scalar_mul(&self, n: impl Into<BigInt>) -> VirtualClass {
        let n = n.into();
        if n.is_zero() {
            return VirtualClass::zero();
        }
        VirtualClass {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k.clone(), c * &n))
                .collect(),
        }
    }

    /// Product: multisets of factors merge, Lefschetz powers add.
    pub fn mul(&self, other: &VirtualClass) -> VirtualClass {
        let mut terms = BTreeMap::new();
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                let mut factors = k1.factors.clone();
                factors.extend(k2.factors.iter().cloned());
                factors.sort();
                let key = ClassTerm {
                    factors,
                    lefschetz: k1
                        .lefschetz
                        .checked_add(k2.lefschetz)
                        .expect("Lefschetz power overflow"),
                };
                VirtualClass::insert_add(&mut terms, key, c1 * c2);
            }
        }
        VirtualClass { terms }
    }

    pub fn pow(&self, k: u32) -> VirtualClass {
        let mut acc = VirtualClass::point();
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum MotivicError {
    #[error("blow-up codimension must be >= 2, got {0}")]
    CodimensionTooSmall(u32),
    #[error(
        "dimension mismatch: dim X = {dim_x} but dim Z + c = {dim_z} + {codim} = {}",
        dim_z + codim
    )]
    DimensionMismatch { dim_x: u32, dim_z: u32, codim: u32 },
    #[error("a projectivized bundle needs rank >= 1")]
    ZeroRankBundle,
}

/// The profile of `X x Y` by the integral Kunneth formula: Hodge numbers
/// convolve, and
///
/// ```text
/// H^i(X x Y) = (+)_{c+d=i} H^c(X) (x) H^d(Y)  (+)  (+)_{c+d=i+1} Tor(H^c(X), H^d(Y))
/// ```
///
/// with each `H^c` reassembled as `Z^betti(c) (+) torsion[c]`. Only the
/// torsion part of the right-hand side is stored; the free part is already
/// carried by the Hodge numbers.
pub fn kunneth_product_profile(x: &CohomologyProfile, y: &CohomologyProfile) -> CohomologyProfile {
    let dim = x.dim() + y.dim();
    let mut hodge: BTreeMap<(u32, u32), u64> = BTreeMap::new();
    for ((e, g), hx) in x.hodge_numbers() {
        for ((f, h), hy) in y.hodge_numbers() {
            let entry = hodge.entry((e + f, g + h)).or_insert(0);
            *entry = entry
                .checked_add(hx.checked_mul(hy).expect("hodge number overflow"))
                .expect("hodge number overflow");
        }
    }
    let groups_x: Vec<FinAbGroup> = (0..=2 * x.dim()).map(|c| x.cohomology_group(c)).collect();
    let groups_y: Vec<FinAbGroup> = (0..=2 * y.dim()).map(|d| y.cohomology_group(d)).collect();
    let mut torsion: BTreeMap<u32, FinAbGroup> = BTreeMap::new();
    let mut add_torsion = |degree: u32, g: FinAbGroup| {
        if !g.is_trivial() {
            let entry = torsion.entry(degree).or_default();
            *entry = entry.direct_sum(&g);
        }
    };
    for (c, gx) in groups_x.iter().enumerate() {
        for (d, gy) in groups_y.iter().enumerate() {
            let i = (c + d) as u32;
            add_torsion(i, gx.tensor(gy).torsion_part());
            if i >= 1 {
                add_torsion(i - 1, gx.tor(gy));
            }
        }
    }
    CohomologyProfile::new(
        format!("({} x {})", x.name(), y.name()),
        dim,
        hodge.into_iter().map(|((p, q), h)| (p, q, h)),
        torsion,
    )
    .expect("Kunneth output is a valid profile")
}

/// `H_Z(X x Y)` evaluated directly from the bilinear expansion, without
/// multiplying in the ring and without building the product profile:
/// free x free convolves the Hodge numbers, free x torsion pairs each
/// `h^{p,q}` with each `a(p,c,j)` symmetrically, and torsion x torsion
/// contributes once in degree `c + d` (tensor) and once in degree
/// `c + d - 1` (Tor).
pub fn product_hz_direct(x: &CohomologyProfile, y: &CohomologyProfile) -> RingElement {
    let mut acc = RingElement::zero();
    let mut add_term = |monomial: BasisMonomial, coeff: BigInt| {
        acc = &acc + &RingElement::from_term(monomial, coeff);
    };
    let sign = |i: u32| -> BigInt {
        if i.is_multiple_of(2) {
            BigInt::one()
        } else {
            -BigInt::one()
        }
    };

    // free x free
    for ((e, g), hx) in x.hodge_numbers() {
        for ((f, h), hy) in y.hodge_numbers() {
            let (p, q) = (e + f, g + h);
            add_term(
                BasisMonomial::uvt(p, q, 0),
                sign(p + q) * BigInt::from(hx) * BigInt::from(hy),
            );
        }
    }

    let a_table = |profile: &CohomologyProfile| -> Vec<(Prime, u32, u32, u64)> {
        let mut entries = Vec::new();
        for (degree, group) in profile.torsion_degrees() {
            for ((prime, j), a) in group.a_invariant_table() {
                entries.push((prime, degree, j, a));
            }
        }
        entries
    };
    let ax = a_table(x);
    let ay = a_table(y);

    // free x torsion, both ways
    let mut mixed = |hodge: &CohomologyProfile, torsion: &[(Prime, u32, u32, u64)]| {
        for ((p, q), h) in hodge.hodge_numbers() {
            for &(prime, c, j, a) in torsion {
                let i = p + q + c;
                add_term(
                    BasisMonomial::srtx(prime, j, i),
                    sign(i) * BigInt::from(h) * BigInt::from(a),
                );
            }
        }
    };
    mixed(x, &ay);
    mixed(y, &ax);

    // torsion x torsion: tensor lands in degree c + d, Tor in c + d - 1
    for &(prime_x, c, jx, a_x) in &ax {
        for &(prime_y, d, jy, a_y) in &ay {
            if prime_x != prime_y || jx != jy {
                continue;
            }
            let product = BigInt::from(a_x) * BigInt::from(a_y);
            let tensor_degree = c + d;
            add_term(
                BasisMonomial::srtx(prime_x, jx, tensor_degree),
                sign(tensor_degree) * product.clone(),
            );
            let tor_degree = c + d - 1; // torsion degrees are >= 2
            add_term(
                BasisMonomial::srtx(prime_x, jx, tor_degree),
                sign(tor_degree) * product,
            );
        }
    }
    acc
}

/// Direct sum of `(i, i)`-shifted copies of `shift_source` over the given
/// shift range, on top of an optional untouched base profile. Each copy
/// places `h^{p,q}` at `(p+i, q+i)` and torsion of degree `d` at `d + 2i`.
fn shifted_copies(
    base: Option<&CohomologyProfile>,
    shift_source: &CohomologyProfile,
    shifts: std::ops::RangeInclusive<u32>,
    name: String,
    dim: u32,
) -> CohomologyProfile {
    let mut hodge: BTreeMap<(u32, u32), u64> = BTreeMap::new();
    let mut torsion: BTreeMap<u32, FinAbGroup> = BTreeMap::new();
    if let Some(base) = base {
        hodge.extend(base.hodge_numbers());
        torsion.extend(base.torsion_degrees().map(|(d, g)| (d, g.clone())));
    }
    for i in shifts {
        for ((p, q), h) in shift_source.hodge_numbers() {
            let entry = hodge.entry((p + i, q + i)).or_insert(0);
            *entry = entry.checked_add(h).expect("hodge number overflow");
        }
        for (degree, group) in shift_source.torsion_degrees() {
            let entry = torsion.entry(degree + 2 * i).or_default();
            *entry = entry.direct_sum(group);
        }
    }
    CohomologyProfile::new(
        name,
        dim,
        hodge.into_iter().map(|((p, q), h)| (p, q, h)),
        torsion,
    )
    .expect("shifted sum of valid profiles is a valid profile")
}

/// The profile of the projectivization of a rank-`rank` bundle over `base`
/// (fiber `P^(rank-1)`):
///
/// ```text
/// H^k(P) = (+)_{i=0}^{rank-1} H^(k-2i)(base)
/// ```
///
/// with each copy carrying the `(i, i)` Hodge shift of the `i`-th power of
/// the relative hyperplane class.
pub fn projective_bundle_profile(
    base: &CohomologyProfile,
    rank: u32,
) -> Result<CohomologyProfile, MotivicError> {
    if rank == 0 {
        return Err(MotivicError::ZeroRankBundle);
    }
    Ok(shifted_copies(
        None,
        base,
        0..=rank - 1,
        format!("P_{rank}({})", base.name()),
        base.dim() + rank - 1,
    ))
}

/// Profiles of the blow-up of `X` along `Z` of codimension `c`, and of the
/// exceptional divisor (the projectivized normal bundle, a `P^(c-1)` bundle
/// over `Z`):
///
/// ```text
/// H^k(Bl) = H^k(X) (+) (+)_{i=1}^{c-1} H^(k-2i)(Z)
/// H^k(E)  =          (+)_{i=0}^{c-1} H^(k-2i)(Z)
/// ```
///
/// so `h^{p,q}(Bl) = h^{p,q}(X) + sum_i h^{p-i,q-i}(Z)` and torsion
/// transports degree-wise.
pub fn blowup_profiles(
    x: &CohomologyProfile,
    z: &CohomologyProfile,
    codim: u32,
) -> Result<(CohomologyProfile, CohomologyProfile), MotivicError> {
    if codim < 2 {
        return Err(MotivicError::CodimensionTooSmall(codim));
    }
    if z.dim() + codim != x.dim() {
        return Err(MotivicError::DimensionMismatch {
            dim_x: x.dim(),
            dim_z: z.dim(),
            codim,
        });
    }
    let bl = shifted_copies(
        Some(x),
        z,
        1..=codim - 1,
        format!("Bl_{{{}}}({})", z.name(), x.name()),
        x.dim(),
    );
    let e = projective_bundle_profile(z, codim)
        .expect("codim >= 2")
        .renamed(format!("E_{{{}}}({})", z.name(), x.name()));
    Ok((bl, e))
}

/// Evaluate a virtual class: each term maps to the product of the integral
/// Hodge functions of its factors times `(u*v)^l`, and negative Lefschetz
/// powers accumulate into the common denominator exponent.
pub fn h_vir(class: &VirtualClass) -> LocalizedElement {
    if class.is_zero() {
        return LocalizedElement::zero();
    }
    let min_lefschetz = class
        .terms
        .keys()
        .map(|t| t.lefschetz)
        .min()
        .expect("nonempty");
    let denom_exp = u32::try_from(
        min_lefschetz
            .checked_neg()
            .expect("Lefschetz power out of range")
            .max(0),
    )
    .expect("denominator exponent overflow");
    let mut numerator = RingElement::zero();
    for (term, coeff) in &class.terms {
        let mut value = RingElement::one();
        for factor in &term.factors {
            value = &value * &factor.integral_hodge();
        }
        let shift = u32::try_from(term.lefschetz + denom_exp as i64)
            .expect("shift is nonnegative by choice of denominator");
        value = &value * &RingElement::uv_pow(shift);
        numerator = &numerator + &value.scalar_mul(coeff.clone());
    }
    LocalizedElement::new(numerator, denom_exp)
}

/// The class of a variety with an algebraic cell decomposition: one `L^k`
/// per cell of dimension `k`.
pub fn cell_decomposition_class(cells: &[u32]) -> VirtualClass {
    let mut acc = VirtualClass::zero();
    for &k in cells {
        acc = acc.add(&VirtualClass::lefschetz_power(k as i64));
    }
    acc
}

/// Check the cut-and-paste relation `H_vir(X) = H_vir(U) + H_vir(X \ U)`
/// on given classes.
pub fn cut_and_paste_check(
    whole: &VirtualClass,
    open: &VirtualClass,
    complement: &VirtualClass,
) -> bool {
    h_vir(whole).localized_equals(&h_vir(open).add(&h_vir(complement)))
}

/// Check the dimension-filtration degree bound
/// `deg H_vir([X] L^(-i)) <= 2 (dim X - i)`.
pub fn filtration_degree_check(profile: &CohomologyProfile, i: u32) -> bool {
    let class = VirtualClass::from_profile(profile.clone())
        .mul(&VirtualClass::lefschetz_power(-(i as i64)));
    let bound = 2 * (profile.dim() as i64 - i as i64);
    match h_vir(&class).degree() {
        None => true,
        Some(d) => d <= bound,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hodge::{is_in_r_plus, phi};

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    fn t0() -> CohomologyProfile {
        CohomologyProfile::new("T0", 2, [(0, 0, 1)], [(3, FinAbGroup::cyclic(p(2), 1))]).unwrap()
    }

    fn pn(n: u32) -> CohomologyProfile {
        CohomologyProfile::projective_space(n)
    }

    #[test]
    fn kunneth_p1_squared() {
        let product = kunneth_product_profile(&pn(1), &pn(1));
        assert_eq!(product.dim(), 2);
        assert_eq!(product.hodge_number(0, 0), 1);
        assert_eq!(product.hodge_number(1, 1), 2);
        assert_eq!(product.hodge_number(2, 2), 1);
        assert!(product.torsion_degrees().next().is_none());
    }

    #[test]
    fn kunneth_torsion_placement() {
        // T0 x T0: cross terms in degree 3, Tor in degree 5, tensor in 6
        let product = kunneth_product_profile(&t0(), &t0());
        assert_eq!(
            product.torsion_at(3).unwrap(),
            &FinAbGroup::from_parts(0, [(p(2), 1, 2)]).unwrap()
        );
        assert_eq!(product.torsion_at(5).unwrap(), &FinAbGroup::cyclic(p(2), 1));
        assert_eq!(product.torsion_at(6).unwrap(), &FinAbGroup::cyclic(p(2), 1));
        assert!(product.torsion_at(4).is_none());
    }

    #[test]
    fn kunneth_point_is_unit() {
        let e = crate::verify::enriques();
        let product = kunneth_product_profile(&e, &CohomologyProfile::point());
        assert_eq!(product.renamed(e.name()), e);
    }

    #[test]
    fn direct_product_t0_golden() {
        let direct = product_hz_direct(&t0(), &t0());
        assert_eq!(
            direct.to_string(),
            "1 - 2*s_2*r_0*t^3*x - s_2*r_0*t^5*x + s_2*r_0*t^6*x"
        );
        let hz = t0().integral_hodge();
        assert_eq!(direct, &hz * &hz);
        assert_eq!(
            direct,
            kunneth_product_profile(&t0(), &t0()).integral_hodge()
        );
    }

    #[test]
    fn mixed_torsion_square_golden() {
        // dim 2, H^0 = Z, H^2 torsion Z/2 (+) Z/4, H^3 torsion Z/9: the
        // square exercises invariants with j = 1 at two primes. Expected
        // element computed by hand from the Kunneth formula: degree 3
        // collects the Z/9 cross terms and Tor(H^2, H^2) = (Z/2)^3 (+) Z/4,
        // degree 4 the tensor H^2 (x) H^2, degrees 5 and 6 the Z/9 Tor and
        // tensor squares.
        let mixed = CohomologyProfile::new(
            "M",
            2,
            [(0, 0, 1)],
            [
                (
                    2,
                    FinAbGroup::from_parts(0, [(p(2), 1, 1), (p(2), 2, 1)]).unwrap(),
                ),
                (3, FinAbGroup::cyclic(p(3), 2)),
            ],
        )
        .unwrap();
        let hz = mixed.integral_hodge();
        let square = &hz * &hz;
        assert_eq!(
            square.to_string(),
            "1 + 4*s_2*r_0*t^2*x - 4*s_2*r_0*t^3*x + 4*s_2*r_0*t^4*x \
             + 2*s_2*r_1*t^2*x - s_2*r_1*t^3*x + s_2*r_1*t^4*x \
             - 2*s_3*r_0*t^3*x - s_3*r_0*t^5*x + s_3*r_0*t^6*x \
             - 2*s_3*r_1*t^3*x - s_3*r_1*t^5*x + s_3*r_1*t^6*x"
        );
        assert_eq!(square, product_hz_direct(&mixed, &mixed));
        let product = kunneth_product_profile(&mixed, &mixed);
        assert_eq!(square, product.integral_hodge());
        assert_eq!(
            product.torsion_at(3).unwrap(),
            &FinAbGroup::from_parts(0, [(p(2), 1, 3), (p(2), 2, 1), (p(3), 2, 2)]).unwrap()
        );
        assert_eq!(product.torsion_at(5).unwrap(), &FinAbGroup::cyclic(p(3), 2));
    }

    #[test]
    fn direct_product_unit() {
        let e = crate::verify::enriques();
        assert_eq!(
            product_hz_direct(&e, &CohomologyProfile::point()),
            e.integral_hodge()
        );
    }

    #[test]
    fn blowup_p2_at_point() {
        let (bl, e) = blowup_profiles(&pn(2), &CohomologyProfile::point(), 2).unwrap();
        assert_eq!(bl.hodge_number(0, 0), 1);
        assert_eq!(bl.hodge_number(1, 1), 2);
        assert_eq!(bl.hodge_number(2, 2), 1);
        assert_eq!(e.renamed("P1"), pn(1));

        // H_Z(X) - H_Z(Z) = H_Z(Bl) - H_Z(E), both sides u*v + u^2*v^2
        let lhs = &pn(2).integral_hodge() - &CohomologyProfile::point().integral_hodge();
        let rhs = &bl.integral_hodge() - &e.integral_hodge();
        assert_eq!(lhs, rhs);
        let expected = &RingElement::uv_pow(1) + &RingElement::uv_pow(2);
        assert_eq!(lhs, expected);
    }

    #[test]
    fn blowup_transports_torsion() {
        // Z of dim 2 with H^3 torsion Z/2 inside X of dim 4, c = 2:
        // Bl gains Z/2 in degree 5
        let x = pn(4);
        let z = t0();
        let (bl, e) = blowup_profiles(&x, &z, 2).unwrap();
        assert_eq!(bl.torsion_at(5).unwrap(), &FinAbGroup::cyclic(p(2), 1));
        // E = P(N) over Z with fiber P^1: torsion in degrees 3 and 5
        assert_eq!(e.torsion_at(3).unwrap(), &FinAbGroup::cyclic(p(2), 1));
        assert_eq!(e.torsion_at(5).unwrap(), &FinAbGroup::cyclic(p(2), 1));

        let lhs = &x.integral_hodge() - &z.integral_hodge();
        let rhs = &bl.integral_hodge() - &e.integral_hodge();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn projective_bundle_examples() {
        // a rank-c bundle over a point projectivizes to P^(c-1)
        for c in 1..=4u32 {
            let bundle = projective_bundle_profile(&CohomologyProfile::point(), c).unwrap();
            assert_eq!(bundle.renamed(""), pn(c - 1).renamed(""));
        }
        // rank-1 bundles projectivize to the base itself
        let t0 = t0();
        assert_eq!(
            projective_bundle_profile(&t0, 1).unwrap().renamed(""),
            t0.renamed("")
        );
        // a P^1 bundle over P^1 has the Hodge diamond of a Hirzebruch surface
        let hirzebruch = projective_bundle_profile(&pn(1), 2).unwrap();
        assert_eq!(hirzebruch.dim(), 2);
        assert_eq!(hirzebruch.hodge_number(0, 0), 1);
        assert_eq!(hirzebruch.hodge_number(1, 1), 2);
        assert_eq!(hirzebruch.hodge_number(2, 2), 1);
        // and H_Z matches the product with P^1, as for the trivial bundle
        assert_eq!(
            hirzebruch.integral_hodge(),
            kunneth_product_profile(&pn(1), &pn(1)).integral_hodge()
        );
        assert_eq!(
            projective_bundle_profile(&t0, 0),
            Err(MotivicError::ZeroRankBundle)
        );
    }

    #[test]
    fn blowup_rejects_bad_dimensions() {
        assert_eq!(
            blowup_profiles(&pn(2), &pn(1), 2),
            Err(MotivicError::DimensionMismatch {
                dim_x: 2,
                dim_z: 1,
                codim: 2
            })
        );
        assert_eq!(
            blowup_profiles(&pn(2), &pn(1), 1),
            Err(MotivicError::CodimensionTooSmall(1))
        );
    }

    #[test]
    fn h_vir_lefschetz() {
        let l = h_vir(&VirtualClass::lefschetz_power(1));
        assert_eq!(l.denom_exp(), 0);
        assert_eq!(*l.numerator(), RingElement::uv_pow(1));

        let l_inv = h_vir(&VirtualClass::lefschetz_power(-1));
        assert_eq!(l_inv.denom_exp(), 1);
        assert_eq!(*l_inv.numerator(), RingElement::one());
        assert!(!l_inv.localized_equals(&LocalizedElement::from_ring(RingElement::one())));
        assert!(!l_inv.localized_equals(&LocalizedElement::from_ring(RingElement::uv_pow(1))));
    }

    #[test]
    fn h_vir_p1_squared_minus_p1() {
        let p1 = VirtualClass::from_profile(pn(1));
        let class = p1.mul(&p1).sub(&p1);
        let value = h_vir(&class);
        assert_eq!(value.denom_exp(), 0);
        let expected = &RingElement::uv_pow(1) + &RingElement::uv_pow(2);
        assert_eq!(*value.numerator(), expected);
    }

    #[test]
    fn cells_examples() {
        // P^n
        let cells: Vec<u32> = (0..=3).collect();
        let value = h_vir(&cell_decomposition_class(&cells));
        let mut expected = RingElement::zero();
        for k in 0..=3 {
            expected = &expected + &RingElement::uv_pow(k);
        }
        assert_eq!(*value.numerator(), expected);

        // Gr(2,4): Schubert cells of dimensions 0,1,2,2,3,4
        let value = h_vir(&cell_decomposition_class(&[0, 1, 2, 2, 3, 4]));
        let mut expected = RingElement::zero();
        for (k, coeff) in [(0u32, 1), (1, 1), (2, 2), (3, 1), (4, 1)] {
            expected = &expected + &RingElement::uv_pow(k).scalar_mul(coeff);
        }
        assert_eq!(*value.numerator(), expected);
        assert!(is_in_r_plus(value.numerator()));
        for (i, betti) in [1u64, 0, 1, 0, 2, 0, 1, 0, 1].into_iter().enumerate() {
            let group = phi(value.numerator(), i as u32).unwrap();
            assert_eq!(group, FinAbGroup::free(betti));
        }

        assert!(h_vir(&cell_decomposition_class(&[])).is_zero());
    }

    #[test]
    fn cut_and_paste_examples() {
        // [P^n] = [L^n] + [P^(n-1)]
        for n in 1..=4u32 {
            assert!(cut_and_paste_check(
                &VirtualClass::from_profile(pn(n)),
                &VirtualClass::lefschetz_power(n as i64),
                &VirtualClass::from_profile(pn(n - 1)),
            ));
        }
        // [X] = [X] + 0
        let x = VirtualClass::from_profile(crate::verify::enriques());
        assert!(cut_and_paste_check(&x, &x, &VirtualClass::zero()));
        // over-counting a point fails
        assert!(!cut_and_paste_check(
            &VirtualClass::from_profile(pn(2)),
            &VirtualClass::lefschetz_power(2),
            &VirtualClass::from_profile(pn(1)).add(&VirtualClass::point()),
        ));
    }

    #[test]
    fn filtration_examples() {
        assert!(filtration_degree_check(&pn(2), 0));
        assert!(filtration_degree_check(&pn(2), 3));
        assert!(filtration_degree_check(&CohomologyProfile::point(), 0));
        let class = VirtualClass::from_profile(pn(2)).mul(&VirtualClass::lefschetz_power(-3));
        assert_eq!(h_vir(&class).degree(), Some(-2));
    }
}
