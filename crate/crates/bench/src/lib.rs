//! Shared fixtures for the benchmarks: deterministic medium-sized inputs
//! that exercise the hot paths without being toy-trivial.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use hodgez_core::hodge::CohomologyProfile;
use hodgez_core::ring::RingElement;
use hodgez_core::verify::{random_profile, random_ring_element, ProfileParams};

pub const BENCH_SEED: u64 = 0xB00C;

/// A pair of ~15-term ring elements.
pub fn medium_ring_elements() -> (RingElement, RingElement) {
    let mut rng = ChaCha8Rng::seed_from_u64(BENCH_SEED);
    let params = ProfileParams::default();
    let a = random_ring_element(&mut rng, &params, 15);
    let b = random_ring_element(&mut rng, &params, 15);
    (a, b)
}

/// A pair of dimension-4 profiles with torsion in several degrees.
pub fn torsion_rich_profiles() -> (CohomologyProfile, CohomologyProfile) {
    let mut rng = ChaCha8Rng::seed_from_u64(BENCH_SEED + 1);
    let params = ProfileParams {
        max_dim: 4,
        ..ProfileParams::default()
    };
    loop {
        let x = random_profile(&mut rng, &params, "X");
        let y = random_profile(&mut rng, &params, "Y");
        let torsion_degrees = x.torsion_degrees().count() + y.torsion_degrees().count();
        if x.dim() == 4 && y.dim() == 4 && torsion_degrees >= 3 {
            return (x, y);
        }
    }
}

/// Schubert cell dimensions of Gr(2,5).
pub fn grassmannian_cells() -> Vec<u32> {
    vec![0, 1, 2, 2, 3, 3, 4, 4, 5, 6]
}
