//! Cohomology profiles and the integral Hodge function.
//!
//! A [`CohomologyProfile`] is the input datum standing in for a smooth
//! projective variety: a complex dimension, sparse Hodge numbers `h^{p,q}`,
//! and per-degree torsion groups. Profiles are synthetic first-class data;
//! an optional realizability lint ([`realizability_lints`]) flags profiles
//! that no smooth projective variety could produce.
//!
//! The torsion Poincare function packs all torsion invariants into the
//! subring generated by `s_p, r_j, t, x`:
//!
//! ```text
//! T(X) = sum_{p, i, j} (-1)^i a(p, i, j) s_p r_j t^i x
//! ```
//!
//! and the integral Hodge function adds the signed Hodge numbers:
//!
//! ```text
//! H_Z(X) = T(X) + sum_{p,q} (-1)^(p+q) h^{p,q} u^p v^q.
//! ```
//!
//! Since the monomials involved are linearly independent basis elements,
//! every invariant can be read back off. [`RPlusForm`] extracts them from
//! any ring element of this shape, and [`phi`] reconstructs the degree-`i`
//! cohomology group `Z^(sum_{p+q=i} h^{p,q}) (+) torsion[i]`.

use std::collections::BTreeMap;
use std::fmt;

use serde::Deserialize;
use thiserror::Error;

use crate::abgroup::{AbGroupError, FinAbGroup};
use crate::ring::{BasisMonomial, IdemPart, MainPart, Prime, RingElement};

/// Hodge numbers plus integral torsion data of a (possibly synthetic)
/// smooth projective variety.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CohomologyProfile {
    name: String,
    dim: u32,
    hodge: BTreeMap<(u32, u32), u64>,
    torsion: BTreeMap<u32, FinAbGroup>,
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum ProfileError {
    #[error("hodge number h^{{{p},{q}}} lies outside 0 <= p,q <= {dim}")]
    HodgeOutOfRange { p: u32, q: u32, dim: u32 },
    #[error("duplicate hodge entry for ({p},{q})")]
    DuplicateHodgeEntry { p: u32, q: u32 },
    #[error("torsion in degree {degree} lies outside 1 <= degree <= {max}")]
    TorsionDegreeOutOfRange { degree: u32, max: u32 },
    #[error("torsion in degree 1 is impossible (universal coefficients)")]
    TorsionInDegreeOne,
    #[error("torsion group in degree {degree} has free rank {rank}")]
    FreeRankInTorsion { degree: u32, rank: u64 },
    #[error("{0} is not a prime number")]
    NotPrime(u64),
    #[error(transparent)]
    Group(#[from] AbGroupError),
}

impl CohomologyProfile {
    /// Validate and build a profile. Zero Hodge numbers and trivial torsion
    /// groups are pruned; out-of-range supports are rejected.
    pub fn new(
        name: impl Into<String>,
        dim: u32,
        hodge: impl IntoIterator<Item = (u32, u32, u64)>,
        torsion: impl IntoIterator<Item = (u32, FinAbGroup)>,
    ) -> Result<CohomologyProfile, ProfileError> {
        let mut hodge_map = BTreeMap::new();
        for (p, q, h) in hodge {
            if p > dim || q > dim {
                return Err(ProfileError::HodgeOutOfRange { p, q, dim });
            }
            if hodge_map.contains_key(&(p, q)) {
                return Err(ProfileError::DuplicateHodgeEntry { p, q });
            }
            if h > 0 {
                hodge_map.insert((p, q), h);
            }
        }
        let mut torsion_map = BTreeMap::new();
        for (degree, group) in torsion {
            if group.is_trivial() {
                continue;
            }
            if degree == 1 {
                return Err(ProfileError::TorsionInDegreeOne);
            }
            if degree == 0 || degree > 2 * dim {
                return Err(ProfileError::TorsionDegreeOutOfRange {
                    degree,
                    max: 2 * dim,
                });
            }
            if group.free_rank() > 0 {
                return Err(ProfileError::FreeRankInTorsion {
                    degree,
                    rank: group.free_rank(),
                });
            }
            torsion_map.insert(degree, group);
        }
        Ok(CohomologyProfile {
            name: name.into(),
            dim,
            hodge: hodge_map,
            torsion: torsion_map,
        })
    }

    /// A point: `h^{0,0} = 1`, nothing else.
    pub fn point() -> CohomologyProfile {
        CohomologyProfile::new("point", 0, [(0, 0, 1)], []).unwrap()
    }

    /// Projective space `P^n`: `h^{i,i} = 1` for `0 <= i <= n`.
    pub fn projective_space(n: u32) -> CohomologyProfile {
        CohomologyProfile::new(format!("P{n}"), n, (0..=n).map(|i| (i, i, 1)), []).unwrap()
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn renamed(&self, name: impl Into<String>) -> CohomologyProfile {
        CohomologyProfile {
            name: name.into(),
            ..self.clone()
        }
    }

    pub fn dim(&self) -> u32 {
        self.dim
    }

    pub fn hodge_number(&self, p: u32, q: u32) -> u64 {
        self.hodge.get(&(p, q)).copied().unwrap_or(0)
    }

    pub fn hodge_numbers(&self) -> impl Iterator<Item = ((u32, u32), u64)> + '_ {
        self.hodge.iter().map(|(&k, &h)| (k, h))
    }

    pub fn torsion_at(&self, degree: u32) -> Option<&FinAbGroup> {
        self.torsion.get(&degree)
    }

    pub fn torsion_degrees(&self) -> impl Iterator<Item = (u32, &FinAbGroup)> {
        self.torsion.iter().map(|(&d, g)| (d, g))
    }

    /// Rank of `H^i`: the sum of `h^{p,q}` over `p + q = i`.
    pub fn betti(&self, i: u32) -> u64 {
        self.hodge
            .iter()
            .filter(|(&(p, q), _)| p + q == i)
            .fold(0u64, |acc, (_, &h)| {
                acc.checked_add(h).expect("betti number overflow")
            })
    }

    /// The full degree-`i` group `Z^betti(i) (+) torsion[i]`.
    pub fn cohomology_group(&self, i: u32) -> FinAbGroup {
        let free = FinAbGroup::free(self.betti(i));
        match self.torsion.get(&i) {
            Some(t) => free.direct_sum(t),
            None => free,
        }
    }

    /// The invariant `a(p, i, j)` of the degree-`i` torsion group.
    pub fn a_pij(&self, p: Prime, i: u32, j: u32) -> u64 {
        self.torsion
            .get(&i)
            .map(|g| g.a_invariant(p, j))
            .unwrap_or(0)
    }

    /// `T(X) = sum (-1)^i a(p, i, j) s_p r_j t^i x`; always lies in the
    /// `u,v`-free subring.
    pub fn torsion_poincare(&self) -> RingElement {
        let mut acc = RingElement::zero();
        for (&i, group) in &self.torsion {
            let sign: i64 = if i.is_multiple_of(2) { 1 } else { -1 };
            for ((p, j), a) in group.a_invariant_table() {
                let coeff = sign * i64::try_from(a).expect("invariant too large");
                acc = &acc + &RingElement::from_term(BasisMonomial::srtx(p, j, i), coeff);
            }
        }
        acc
    }

    /// `H_Z(X) = T(X) + sum (-1)^(p+q) h^{p,q} u^p v^q`.
    pub fn integral_hodge(&self) -> RingElement {
        let mut acc = self.torsion_poincare();
        for (&(p, q), &h) in &self.hodge {
            let sign: i64 = if (p + q).is_multiple_of(2) { 1 } else { -1 };
            let coeff = sign * i64::try_from(h).expect("hodge number too large");
            acc = &acc + &RingElement::from_term(BasisMonomial::uvt(p, q, 0), coeff);
        }
        acc
    }
}

impl fmt::Display for CohomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "profile {} (dim {})", self.name, self.dim)?;
        if self.hodge.is_empty() {
            writeln!(f, "  h^{{p,q}}: none")?;
        } else {
            write!(f, "  h^{{p,q}}:")?;
            for (&(p, q), &h) in &self.hodge {
                write!(f, " ({p},{q})={h}")?;
            }
            writeln!(f)?;
        }
        if self.torsion.is_empty() {
            write!(f, "  torsion: none")?;
        } else {
            write!(f, "  torsion:")?;
            let mut first = true;
            for (&d, g) in &self.torsion {
                if !first {
                    write!(f, ";")?;
                }
                first = false;
                write!(f, " H^{d} = {g}")?;
            }
        }
        Ok(())
    }
}

/// Realizability lints for smooth projective varieties: Hodge symmetry
/// `h^{p,q} = h^{q,p}`, Serre duality `h^{p,q} = h^{n-p,n-q}`, and torsion
/// duality `torsion[i] = torsion[2n+1-i]`. Synthetic profiles violating
/// these are accepted everywhere; callers decide whether to warn or reject.
pub fn realizability_lints(profile: &CohomologyProfile) -> Vec<String> {
    let mut lints = Vec::new();
    let n = profile.dim();
    for ((p, q), h) in profile.hodge_numbers() {
        let sym = profile.hodge_number(q, p);
        if h != sym {
            lints.push(format!(
                "hodge symmetry violated: h^{{{p},{q}}} = {h} but h^{{{q},{p}}} = {sym}"
            ));
        }
        let dual = profile.hodge_number(n - p, n - q);
        if h != dual {
            lints.push(format!(
                "serre duality violated: h^{{{p},{q}}} = {h} but h^{{{},{}}} = {dual}",
                n - p,
                n - q
            ));
        }
    }
    for i in 0..=2 * n {
        let here = profile.torsion_at(i).cloned().unwrap_or_default();
        let dual_degree = 2 * n + 1 - i;
        let there = profile.torsion_at(dual_degree).cloned().unwrap_or_default();
        if i < dual_degree && here != there {
            lints.push(format!(
                "torsion duality violated: H^{i} torsion {here} but H^{dual_degree} torsion {there}"
            ));
        }
    }
    lints
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum HodgeError {
    #[error("element is not in R+: {0}")]
    NotInRPlus(#[from] RPlusViolation),
    #[error("extracted invariant does not fit in 64 bits")]
    InvariantOverflow,
}

/// Why a ring element fails to have the reconstructible shape.
#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum RPlusViolation {
    #[error("monomial {0} is not of the form u^p v^q or s_p r_j t^i x")]
    NonShapeMonomial(String),
    #[error("coefficient of u^{p} v^{q} has sign inconsistent with h^{{{p},{q}}} >= 0")]
    NegativeHodgeNumber { p: u32, q: u32 },
    #[error("coefficient of s_{p} r_{j} t^{i} x has sign inconsistent with a(p,i,j) >= 0")]
    NegativeTorsionInvariant { p: u64, i: u32, j: u32 },
    #[error("torsion invariants for prime {p} in degree {i} are not weakly decreasing at j={j}")]
    NonMonotoneInvariants { p: u64, i: u32, j: u32 },
}

/// The invariants extracted from an element of the reconstructible subset:
/// nonnegative Hodge numbers plus per-degree torsion invariants, weakly
/// decreasing in `j`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct RPlusForm {
    hodge: BTreeMap<(u32, u32), u64>,
    // (prime, degree i, j) -> a(p, i, j) > 0
    invariants: BTreeMap<(Prime, u32, u32), u64>,
}

impl RPlusForm {
    /// Decompose `alpha`, verifying the shape constraints: only `u^p v^q`
    /// and `s_p r_j t^i x` monomials, signs `(-1)^(p+q)` and `(-1)^i`
    /// respectively, and monotone torsion invariants.
    pub fn extract(alpha: &RingElement) -> Result<RPlusForm, HodgeError> {
        let mut form = RPlusForm::default();
        for (monomial, coeff) in alpha.terms() {
            match (monomial.idem, monomial.main) {
                (IdemPart::One, MainPart::Uvt { u: p, v: q, t: 0 }) => {
                    let negative = !(p + q).is_multiple_of(2);
                    let value = if negative { -coeff } else { coeff.clone() };
                    let h = u64::try_from(&value).map_err(|_| {
                        signed_or_overflow(&value, || RPlusViolation::NegativeHodgeNumber { p, q })
                    })?;
                    form.hodge.insert((p, q), h);
                }
                (IdemPart::Sr(p, j), MainPart::Tx { t: i }) => {
                    let negative = !i.is_multiple_of(2);
                    let value = if negative { -coeff } else { coeff.clone() };
                    let a =
                        u64::try_from(&value).map_err(|_| {
                            signed_or_overflow(&value, || {
                                RPlusViolation::NegativeTorsionInvariant { p: p.get(), i, j }
                            })
                        })?;
                    form.invariants.insert((p, i, j), a);
                }
                _ => return Err(RPlusViolation::NonShapeMonomial(monomial.to_string()).into()),
            }
        }
        // weakly decreasing in j for each (prime, degree), counting missing
        // entries as zero
        for (&(p, i, j), &a) in &form.invariants {
            if j > 0 {
                let previous = form.invariants.get(&(p, i, j - 1)).copied().unwrap_or(0);
                if a > previous {
                    return Err(RPlusViolation::NonMonotoneInvariants { p: p.get(), i, j }.into());
                }
            }
        }
        Ok(form)
    }

    pub fn hodge_number(&self, p: u32, q: u32) -> u64 {
        self.hodge.get(&(p, q)).copied().unwrap_or(0)
    }

    /// Largest cohomological degree with a nonzero invariant.
    pub fn max_degree(&self) -> Option<u32> {
        let hodge_max = self.hodge.keys().map(|&(p, q)| p + q).max();
        let torsion_max = self.invariants.keys().map(|&(_, i, _)| i).max();
        hodge_max.max(torsion_max)
    }

    /// Reconstruct the degree-`i` group.
    pub fn group_in_degree(&self, i: u32) -> Result<FinAbGroup, HodgeError> {
        let mut rank: u64 = 0;
        for (&(p, q), &h) in &self.hodge {
            if p + q == i {
                rank = rank.checked_add(h).ok_or(HodgeError::InvariantOverflow)?;
            }
        }
        let table: BTreeMap<(Prime, u32), u64> = self
            .invariants
            .iter()
            .filter(|(&(_, degree, _), _)| degree == i)
            .map(|(&(p, _, j), &a)| ((p, j), a))
            .collect();
        let torsion =
            FinAbGroup::from_invariants(&table).expect("monotonicity checked at extraction");
        Ok(FinAbGroup::free(rank).direct_sum(&torsion))
    }
}

fn signed_or_overflow(
    value: &num_bigint::BigInt,
    violation: impl FnOnce() -> RPlusViolation,
) -> HodgeError {
    use num_traits::sign::Signed;
    if value.is_negative() {
        violation().into()
    } else {
        HodgeError::InvariantOverflow
    }
}

/// Whether `alpha` lies in the reconstructible subset: shaped like an
/// integral Hodge function with nonnegative Hodge numbers and monotone
/// torsion invariants.
pub fn is_in_r_plus(alpha: &RingElement) -> bool {
    RPlusForm::extract(alpha).is_ok()
}

/// Reconstruct the degree-`i` cohomology group from a ring element.
pub fn phi(alpha: &RingElement, i: u32) -> Result<FinAbGroup, HodgeError> {
    RPlusForm::extract(alpha)?.group_in_degree(i)
}

// ---------------------------------------------------------------------------
// profile file format

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfileDoc {
    name: String,
    dim: u32,
    hodge: Vec<(u32, u32, u64)>,
    #[serde(default)]
    torsion: BTreeMap<String, Vec<(u64, u32, u64)>>,
}

#[derive(Debug, Error)]
pub enum ProfileParseError {
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("torsion key {0:?} is not a cohomological degree")]
    BadTorsionKey(String),
    #[error(transparent)]
    Profile(#[from] ProfileError),
}

/// Parse a profile document:
///
/// ```json
/// { "name": "E", "dim": 2,
///   "hodge": [[0,0,1],[1,1,10],[2,2,1]],
///   "torsion": { "2": [[2,1,1]], "3": [[2,1,1]] } }
/// ```
///
/// `torsion` maps a degree to `[prime, exponent, multiplicity]` triples and
/// may be omitted for torsion-free profiles. Unknown keys are rejected.
pub fn parse_profile_json(text: &str) -> Result<CohomologyProfile, ProfileParseError> {
    let doc: ProfileDoc = serde_json::from_str(text)?;
    let mut torsion = Vec::new();
    for (key, runs) in doc.torsion {
        let degree: u32 = key
            .parse()
            .map_err(|_| ProfileParseError::BadTorsionKey(key.clone()))?;
        let summands: Result<Vec<_>, ProfileError> = runs
            .into_iter()
            .map(|(p, k, m)| {
                let prime = Prime::new(p).map_err(|_| ProfileError::NotPrime(p))?;
                Ok((prime, k, m))
            })
            .collect();
        let group = FinAbGroup::from_parts(0, summands?).map_err(ProfileError::Group)?;
        torsion.push((degree, group));
    }
    Ok(CohomologyProfile::new(
        doc.name, doc.dim, doc.hodge, torsion,
    )?)
}

/// Serialize a profile in the same document format (hodge entries sorted by
/// `(p, q)`, torsion runs by descending exponent).
pub fn profile_to_json(profile: &CohomologyProfile) -> serde_json::Value {
    let hodge: Vec<serde_json::Value> = profile
        .hodge_numbers()
        .map(|((p, q), h)| serde_json::json!([p, q, h]))
        .collect();
    let mut torsion = serde_json::Map::new();
    for (degree, group) in profile.torsion_degrees() {
        let runs: Vec<serde_json::Value> = group
            .torsion_runs()
            .map(|(p, k, m)| serde_json::json!([p.get(), k, m]))
            .collect();
        torsion.insert(degree.to_string(), serde_json::Value::Array(runs));
    }
    let mut doc = serde_json::Map::new();
    doc.insert("name".into(), profile.name().into());
    doc.insert("dim".into(), profile.dim().into());
    doc.insert("hodge".into(), serde_json::Value::Array(hodge));
    if !torsion.is_empty() {
        doc.insert("torsion".into(), serde_json::Value::Object(torsion));
    }
    serde_json::Value::Object(doc)
}
