//! Randomized verification suites and the independent brute-force oracles
//! they check against.
//!
//! Every identity the library relies on has at least two computation routes
//! here: ring multiplication vs the bilinear product formula vs the
//! profile-level Kunneth product, the canonical tensor vs full summand
//! expansion through gcd of cyclic orders, deterministic vs
//! randomized-schedule monomial reduction. Suites draw seeded pseudo-random
//! inputs, compare the routes exactly, and report the first counterexample
//! on failure.
//!
//! All randomness flows through a ChaCha stream seeded from a caller `u64`,
//! so reports are reproducible byte for byte.

use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::abgroup::FinAbGroup;
use crate::hodge::CohomologyProfile;
use crate::motivic::{
    blowup_profiles, cell_decomposition_class, h_vir, kunneth_product_profile, product_hz_direct,
    VirtualClass,
};
use crate::ring::{
    reduce_raw, reduce_raw_random_order, BasisMonomial, IdemPart, LocalizedElement, MainPart,
    Prime, RawMonomial, RingElement,
};

/// Bounds for random profile generation. The defaults keep brute-force
/// oracles instant while still exercising torsion at several primes.
#[derive(Clone, Debug)]
pub struct ProfileParams {
    pub max_dim: u32,
    pub max_hodge: u64,
    pub primes: Vec<u64>,
    pub max_exponent: u32,
    pub max_multiplicity: u64,
}

impl Default for ProfileParams {
    fn default() -> ProfileParams {
        ProfileParams {
            max_dim: 4,
            max_hodge: 5,
            primes: vec![2, 3, 5, 7],
            max_exponent: 4,
            max_multiplicity: 2,
        }
    }
}

impl ProfileParams {
    fn prime(&self, rng: &mut impl Rng) -> Prime {
        let p = *self.primes.choose(rng).expect("nonempty prime pool");
        Prime::new(p).expect("prime pool contains primes")
    }
}

/// A random torsion group over the parameter prime pool.
pub fn random_torsion_group(rng: &mut impl Rng, params: &ProfileParams) -> FinAbGroup {
    let num_primes = if rng.gen_bool(0.4) { 2 } else { 1 };
    let mut summands = Vec::new();
    for _ in 0..num_primes {
        let p = params.prime(rng);
        let runs = rng.gen_range(1..=2);
        for _ in 0..runs {
            summands.push((
                p,
                rng.gen_range(1..=params.max_exponent),
                rng.gen_range(1..=params.max_multiplicity),
            ));
        }
    }
    FinAbGroup::from_parts(0, summands).expect("generated summands are valid")
}

/// A random profile of the given dimension.
pub fn random_profile_with_dim(
    rng: &mut impl Rng,
    params: &ProfileParams,
    dim: u32,
    name: impl Into<String>,
) -> CohomologyProfile {
    let mut hodge = Vec::new();
    for p in 0..=dim {
        for q in 0..=dim {
            if rng.gen_bool(0.4) {
                hodge.push((p, q, rng.gen_range(1..=params.max_hodge)));
            }
        }
    }
    let mut torsion = Vec::new();
    for degree in 2..=2 * dim {
        if rng.gen_bool(0.35) {
            torsion.push((degree, random_torsion_group(rng, params)));
        }
    }
    CohomologyProfile::new(name, dim, hodge, torsion).expect("generated profile is valid")
}

/// A random profile with dimension up to `params.max_dim`.
pub fn random_profile(
    rng: &mut impl Rng,
    params: &ProfileParams,
    name: impl Into<String>,
) -> CohomologyProfile {
    let dim = rng.gen_range(0..=params.max_dim);
    random_profile_with_dim(rng, params, dim, name)
}

/// A random ring element with up to `max_terms` terms, coefficients in
/// `[-9, 9]`, and small exponents.
pub fn random_ring_element(
    rng: &mut impl Rng,
    params: &ProfileParams,
    max_terms: usize,
) -> RingElement {
    let mut acc = RingElement::zero();
    let terms = rng.gen_range(0..=max_terms);
    for _ in 0..terms {
        let idem = match rng.gen_range(0..4) {
            0 => IdemPart::One,
            1 => IdemPart::S(params.prime(rng)),
            2 => IdemPart::R(rng.gen_range(0..=3)),
            _ => IdemPart::Sr(params.prime(rng), rng.gen_range(0..=3)),
        };
        let main = match rng.gen_range(0..10) {
            0..=4 => MainPart::Uvt {
                u: rng.gen_range(0..=3),
                v: rng.gen_range(0..=3),
                t: rng.gen_range(0..=3),
            },
            5..=7 => MainPart::Tx {
                t: rng.gen_range(0..=6),
            },
            _ => MainPart::xpow(rng.gen_range(2..=5)),
        };
        let coeff: i64 = loop {
            let c = rng.gen_range(-9..=9);
            if c != 0 {
                break c;
            }
        };
        acc = &acc + &RingElement::from_term(BasisMonomial { idem, main }, coeff);
    }
    acc
}

/// A random raw power product for confluence checks.
pub fn random_raw_monomial(rng: &mut impl Rng) -> RawMonomial {
    RawMonomial {
        u: rng.gen_range(0..=4),
        v: rng.gen_range(0..=4),
        t: rng.gen_range(0..=5),
        x: rng.gen_range(0..=6),
    }
}

// ---------------------------------------------------------------------------
// brute-force oracles

/// Tensor product by full summand expansion, independent of
/// [`FinAbGroup::tensor`]: write both groups as explicit lists of cyclic
/// summands (`None` for a `Z` summand, `Some(n)` for `Z/n`), tensor each
/// pair through gcd of the orders, factor the resulting orders back into
/// prime powers by trial division, and re-canonicalize.
pub fn tensor_by_summand_expansion(a: &FinAbGroup, b: &FinAbGroup) -> FinAbGroup {
    let expand = |g: &FinAbGroup| -> Vec<Option<u64>> {
        let mut cyclics: Vec<Option<u64>> = vec![None; g.free_rank() as usize];
        for (p, k, m) in g.torsion_runs() {
            let order = p
                .get()
                .checked_pow(k)
                .expect("cyclic order overflow in oracle");
            for _ in 0..m {
                cyclics.push(Some(order));
            }
        }
        cyclics
    };
    let factor_prime_power = |n: u64| -> (Prime, u32) {
        let mut d = 2;
        while !n.is_multiple_of(d) {
            d += 1;
        }
        let mut k = 0;
        let mut rest = n;
        while rest.is_multiple_of(d) {
            rest /= d;
            k += 1;
        }
        assert_eq!(rest, 1, "gcd of prime powers must be a prime power");
        (Prime::new(d).expect("smallest divisor is prime"), k)
    };

    let left = expand(a);
    let right = expand(b);
    let mut free_rank = 0u64;
    let mut summands = Vec::new();
    for &lhs in &left {
        for &rhs in &right {
            match (lhs, rhs) {
                (None, None) => free_rank += 1,
                (Some(n), None) | (None, Some(n)) => {
                    let (p, k) = factor_prime_power(n);
                    summands.push((p, k, 1));
                }
                (Some(n), Some(m)) => {
                    let d = n.gcd(&m);
                    if d > 1 {
                        let (p, k) = factor_prime_power(d);
                        summands.push((p, k, 1));
                    }
                }
            }
        }
    }
    let mut g = FinAbGroup::from_parts(0, summands).expect("oracle summands are valid");
    g = FinAbGroup::free(free_rank).direct_sum(&g);
    g
}

/// dim 2, `h^{0,0} = h^{2,2} = 1`, `h^{1,1} = 10`, `Z/2` torsion in degrees
/// 2 and 3: the profile of an Enriques surface.
pub fn enriques() -> CohomologyProfile {
    let z2 = FinAbGroup::cyclic(Prime::new(2).unwrap(), 1);
    CohomologyProfile::new(
        "E",
        2,
        [(0, 0, 1), (1, 1, 10), (2, 2, 1)],
        [(2, z2.clone()), (3, z2)],
    )
    .unwrap()
}

/// dim 2, `H^0 = Z` and `H^3` torsion `Z/2`: the smallest profile whose
/// self-product exercises both torsion lines of the Kunneth formula.
pub fn minimal_torsion_profile() -> CohomologyProfile {
    let z2 = FinAbGroup::cyclic(Prime::new(2).unwrap(), 1);
    CohomologyProfile::new("T0", 2, [(0, 0, 1)], [(3, z2)]).unwrap()
}

/// Fixed profiles used by the degree suite and the benchmarks, alongside
/// random draws.
pub fn builtin_corpus() -> Vec<CohomologyProfile> {
    let mut corpus: Vec<CohomologyProfile> =
        (0..=8).map(CohomologyProfile::projective_space).collect();
    corpus.push(CohomologyProfile::point());
    corpus.push(enriques());
    corpus.push(minimal_torsion_profile());
    corpus
}

// ---------------------------------------------------------------------------
// suites

/// Outcome of one verification suite run. Rendering is up to the caller;
/// all fields are deterministic functions of (suite, seed, case count).
#[derive(Clone, Debug, Serialize)]
pub struct SuiteOutcome {
    pub suite: &'static str,
    pub seed: u64,
    pub cases: u64,
    pub passed: u64,
    pub failed: u64,
    pub first_counterexample: Option<String>,
}

impl SuiteOutcome {
    fn new(suite: &'static str, seed: u64) -> SuiteOutcome {
        SuiteOutcome {
            suite,
            seed,
            cases: 0,
            passed: 0,
            failed: 0,
            first_counterexample: None,
        }
    }

    fn record(&mut self, ok: bool, counterexample: impl FnOnce() -> String) {
        self.cases += 1;
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            if self.first_counterexample.is_none() {
                self.first_counterexample = Some(counterexample());
            }
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

/// Three-way multiplicativity: `H_Z(X) * H_Z(Y)`, the bilinear product
/// formula, and `H_Z` of the Kunneth profile must agree exactly.
pub fn run_kunneth_suite(seed: u64, cases: u64) -> SuiteOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = ProfileParams::default();
    let mut outcome = SuiteOutcome::new("kunneth", seed);
    for case in 0..cases {
        let x = random_profile(&mut rng, &params, format!("X{case}"));
        let y = random_profile(&mut rng, &params, format!("Y{case}"));
        let by_ring = &x.integral_hodge() * &y.integral_hodge();
        let by_formula = product_hz_direct(&x, &y);
        let by_profile = kunneth_product_profile(&x, &y).integral_hodge();
        let ok = by_ring == by_formula && by_ring == by_profile;
        outcome.record(ok, || {
            format!(
                "{x}\n{y}\nH_Z(X)*H_Z(Y)      = {by_ring}\nbilinear formula   = {by_formula}\nH_Z(Kunneth(X,Y))  = {by_profile}"
            )
        });
    }
    outcome
}

/// Blow-up identity `H_Z(X) - H_Z(Z) = H_Z(Bl) - H_Z(E)` over random
/// centers and codimensions `2..=5`.
pub fn run_blowup_suite(seed: u64, cases: u64) -> SuiteOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = ProfileParams::default();
    let mut outcome = SuiteOutcome::new("blowup", seed);
    for case in 0..cases {
        let codim = rng.gen_range(2..=5);
        let dim_z = rng.gen_range(0..=2);
        let z = random_profile_with_dim(&mut rng, &params, dim_z, format!("Z{case}"));
        let x = random_profile_with_dim(&mut rng, &params, dim_z + codim, format!("X{case}"));
        let (bl, e) = blowup_profiles(&x, &z, codim).expect("dimensions chosen to match");
        let lhs = &x.integral_hodge() - &z.integral_hodge();
        let rhs = &bl.integral_hodge() - &e.integral_hodge();
        let ok = lhs == rhs;
        outcome.record(ok, || {
            format!("codim {codim}\n{x}\n{z}\nH_Z(X) - H_Z(Z)   = {lhs}\nH_Z(Bl) - H_Z(E)  = {rhs}")
        });
    }
    outcome
}

/// Cell decompositions force torsion-free cohomology: `h_vir` of a cell
/// class is a pure polynomial in `u*v` and reconstructs torsion-free
/// groups. Runs over projective spaces, Gr(2,4), and random cell multisets.
pub fn run_cells_suite(seed: u64, cases: u64) -> SuiteOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut outcome = SuiteOutcome::new("cells", seed);
    let check = |outcome: &mut SuiteOutcome, cells: &[u32]| {
        let value = h_vir(&cell_decomposition_class(cells));
        let pure_uv = value.numerator().terms().all(|(m, _)| {
            m.idem == IdemPart::One && matches!(m.main, MainPart::Uvt { u, v, t: 0 } if u == v)
        });
        let torsion_free = match crate::hodge::RPlusForm::extract(value.numerator()) {
            Err(_) => false,
            Ok(form) => {
                let max = form.max_degree().unwrap_or(0);
                (0..=max).all(|i| {
                    form.group_in_degree(i)
                        .map(|g| g.is_torsion_free())
                        .unwrap_or(false)
                })
            }
        };
        let ok = value.denom_exp() == 0 && pure_uv && torsion_free;
        outcome.record(ok, || format!("cells {cells:?}\nh_vir = {value}"));
    };
    for n in 0..=8u32 {
        let cells: Vec<u32> = (0..=n).collect();
        check(&mut outcome, &cells);
    }
    check(&mut outcome, &[0, 1, 2, 2, 3, 4]); // Gr(2,4)
    for _ in 0..cases {
        let len = rng.gen_range(0..=8);
        let cells: Vec<u32> = (0..len).map(|_| rng.gen_range(0..=6)).collect();
        check(&mut outcome, &cells);
    }
    outcome
}

/// Localization and the dimension filtration: `H_vir(L^k)` localized-equals
/// `(u*v)^k` for `-4 <= k <= 4`, and the degree bound
/// `deg H_vir([X] L^(-i)) <= 2 (dim X - i)` holds over the corpus plus
/// random profiles for `0 <= i <= 2 dim + 2`.
pub fn run_degree_suite(seed: u64, cases: u64) -> SuiteOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let params = ProfileParams::default();
    let mut outcome = SuiteOutcome::new("degree", seed);
    for k in -4i64..=4 {
        let lhs = h_vir(&VirtualClass::lefschetz_power(k));
        let rhs = LocalizedElement::uv_pow(k);
        outcome.record(lhs.localized_equals(&rhs), || {
            format!("H_vir(L^{k}) = {lhs} but (u*v)^{k} = {rhs}")
        });
    }
    // the affine-cell route: H_vir(L^k) = H_Z(P^k) - H_Z(P^(k-1))
    for k in 1..=8u32 {
        let route = VirtualClass::from_profile(CohomologyProfile::projective_space(k)).sub(
            &VirtualClass::from_profile(CohomologyProfile::projective_space(k - 1)),
        );
        let value = h_vir(&route);
        let expected = LocalizedElement::from_ring(RingElement::uv_pow(k));
        outcome.record(value.localized_equals(&expected), || {
            format!(
                "H_Z(P^{k}) - H_Z(P^{}) = {value}, expected (u*v)^{k}",
                k - 1
            )
        });
    }
    let mut profiles = builtin_corpus();
    for case in 0..cases {
        profiles.push(random_profile(&mut rng, &params, format!("R{case}")));
    }
    for profile in &profiles {
        for i in 0..=2 * profile.dim() + 2 {
            outcome.record(crate::motivic::filtration_degree_check(profile, i), || {
                let class = VirtualClass::from_profile(profile.clone())
                    .mul(&VirtualClass::lefschetz_power(-(i as i64)));
                format!(
                    "{profile}\ni = {i}: deg H_vir = {:?}, bound {}",
                    h_vir(&class).degree(),
                    2 * (profile.dim() as i64 - i as i64)
                )
            });
        }
    }
    outcome
}

/// Case counts for [`run_ring_suite`].
#[derive(Clone, Copy, Debug)]
pub struct RingSuiteParams {
    pub seed: u64,
    pub triples: u64,
    pub raw_monomials: u64,
    pub degree_pairs: u64,
}

/// Ring soundness: associativity, commutativity, distributivity and the
/// unit law on random triples; confluence of the rewrite system under
/// randomized rule scheduling; structural validity of every monomial that
/// appears; and the degree laws
/// `deg(a+b) <= max(deg a, deg b)`, `deg(n a) = deg a` for `n != 0`,
/// `deg(a b) <= deg a + deg b`, plus consistency of localized equality with
/// plain equality at denominator zero.
pub fn run_ring_suite(params: RingSuiteParams) -> SuiteOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let gen_params = ProfileParams::default();
    let mut outcome = SuiteOutcome::new("ring", params.seed);

    for _ in 0..params.triples {
        let a = random_ring_element(&mut rng, &gen_params, 5);
        let b = random_ring_element(&mut rng, &gen_params, 5);
        let c = random_ring_element(&mut rng, &gen_params, 5);
        let ab = &a * &b;
        let assoc = &ab * &c == &a * &(&b * &c);
        let comm = ab == &b * &a;
        let distrib = &a * &(&b + &c) == &(&a * &b) + &(&a * &c);
        let unit = &a * &RingElement::one() == a;
        let canonical = ab.terms().all(|(m, _)| m.is_canonical());
        let ok = assoc && comm && distrib && unit && canonical;
        outcome.record(ok, || {
            format!(
                "a = {a}\nb = {b}\nc = {c}\nassoc={assoc} comm={comm} distrib={distrib} unit={unit} canonical={canonical}"
            )
        });
    }

    for _ in 0..params.raw_monomials {
        let raw = random_raw_monomial(&mut rng);
        let deterministic = reduce_raw(raw);
        let randomized = reduce_raw_random_order(raw, &mut rng);
        let canonical = deterministic.iter().all(|(m, _)| m.is_canonical());
        let ok = deterministic == randomized && canonical;
        outcome.record(ok, || {
            format!(
                "raw u^{} v^{} t^{} x^{}\ndeterministic = {deterministic:?}\nrandomized    = {randomized:?}",
                raw.u, raw.v, raw.t, raw.x
            )
        });
    }

    for _ in 0..params.degree_pairs {
        let a = random_ring_element(&mut rng, &gen_params, 5);
        let b = random_ring_element(&mut rng, &gen_params, 5);
        let n: i64 = loop {
            let n = rng.gen_range(-9..=9);
            if n != 0 {
                break n;
            }
        };
        let sum_law = (&a + &b).degree() <= a.degree().max(b.degree());
        let scalar_law = a.scalar_mul(n).degree() == a.degree();
        let product_degree = (&a * &b).degree();
        let product_law = match (product_degree, a.degree(), b.degree()) {
            (None, _, _) => true,
            (Some(d), Some(da), Some(db)) => d <= da + db,
            (Some(_), _, _) => false, // product nonzero but a factor zero
        };
        let da = rng.gen_range(0..=2);
        let db = rng.gen_range(0..=2);
        let la = LocalizedElement::new(a.clone(), da);
        let lb = LocalizedElement::new(b.clone(), db);
        let reflexive = la.localized_equals(&la);
        let symmetric = la.localized_equals(&lb) == lb.localized_equals(&la);
        let denom_zero = LocalizedElement::from_ring(a.clone())
            .localized_equals(&LocalizedElement::from_ring(b.clone()))
            == (a == b);
        let ok = sum_law && scalar_law && product_law && reflexive && symmetric && denom_zero;
        outcome.record(ok, || {
            format!(
                "a = {a}\nb = {b}\nn = {n}\nsum_law={sum_law} scalar_law={scalar_law} product_law={product_law} reflexive={reflexive} symmetric={symmetric} denom_zero={denom_zero}"
            )
        });
    }

    outcome
}

/// Run a suite by name with a flat case count (`ring` uses it for each of
/// its three sub-checks).
pub fn run_suite(name: &str, seed: u64, cases: u64) -> Option<SuiteOutcome> {
    match name {
        "kunneth" => Some(run_kunneth_suite(seed, cases)),
        "blowup" => Some(run_blowup_suite(seed, cases)),
        "cells" => Some(run_cells_suite(seed, cases)),
        "degree" => Some(run_degree_suite(seed, cases)),
        "ring" => Some(run_ring_suite(RingSuiteParams {
            seed,
            triples: cases,
            raw_monomials: cases,
            degree_pairs: cases,
        })),
        _ => None,
    }
}
