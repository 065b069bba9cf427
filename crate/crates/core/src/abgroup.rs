//! Finitely generated abelian groups in canonical form.
//!
//! A [`FinAbGroup`] is `Z^r (+) T` with the torsion part `T` stored per
//! prime as a run-length list of cyclic summands `Z/p^k`, exponents
//! descending. The form is canonical, so structural equality decides
//! isomorphism.
//!
//! The torsion invariant `a(p, j)` counts the cyclic `p`-summands of
//! exponent greater than `j`; equivalently it is the `Z/p`-rank of
//! `p^j T / p^(j+1) T`. A torsion group is reconstructed from its
//! invariants by
//!
//! ```text
//! T = (+)_p (+)_{j>=1} (Z/p^j)^(a(p,j-1) - a(p,j))
//! ```
//!
//! which is implemented by [`FinAbGroup::from_invariants`] and inverted by
//! [`FinAbGroup::a_invariant_table`].

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::ring::{NotPrime, Prime};

/// A run of identical cyclic summands `(Z/p^exponent)^multiplicity`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct TorsionRun {
    pub exponent: u32,
    pub multiplicity: u64,
}

/// A finitely generated abelian group `Z^free_rank (+) torsion`, in
/// canonical form.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct FinAbGroup {
    free_rank: u64,
    // per prime: runs with strictly descending exponents, multiplicities >= 1
    torsion: BTreeMap<Prime, Vec<TorsionRun>>,
}

#[derive(Clone, PartialEq, Eq, Debug, Error)]
pub enum AbGroupError {
    #[error(transparent)]
    NotPrime(#[from] NotPrime),
    #[error("torsion exponent must be >= 1")]
    ZeroExponent,
    #[error(
        "invariants for prime {prime} are not weakly decreasing at j={j}: {previous} < {current}"
    )]
    NonMonotoneInvariants {
        prime: u64,
        j: u32,
        previous: u64,
        current: u64,
    },
}

fn checked_add(a: u64, b: u64) -> u64 {
    a.checked_add(b).expect("abelian group rank overflow")
}

fn checked_mul(a: u64, b: u64) -> u64 {
    a.checked_mul(b).expect("abelian group rank overflow")
}

impl FinAbGroup {
    /// The trivial group.
    pub fn trivial() -> FinAbGroup {
        FinAbGroup::default()
    }

    /// `Z^rank`.
    pub fn free(rank: u64) -> FinAbGroup {
        FinAbGroup {
            free_rank: rank,
            torsion: BTreeMap::new(),
        }
    }

    /// The cyclic group `Z/p^k`. Panics if `k == 0`.
    pub fn cyclic(p: Prime, k: u32) -> FinAbGroup {
        assert!(k >= 1, "cyclic torsion exponent must be >= 1");
        FinAbGroup::from_parts(0, [(p, k, 1)]).unwrap()
    }

    /// Assemble a group from a free rank and `(prime, exponent,
    /// multiplicity)` summand runs, canonicalizing as needed. Runs with the
    /// same exponent merge; zero multiplicities are dropped.
    pub fn from_parts(
        free_rank: u64,
        summands: impl IntoIterator<Item = (Prime, u32, u64)>,
    ) -> Result<FinAbGroup, AbGroupError> {
        let mut by_prime: BTreeMap<Prime, BTreeMap<u32, u64>> = BTreeMap::new();
        for (p, exponent, multiplicity) in summands {
            if multiplicity == 0 {
                continue;
            }
            if exponent == 0 {
                return Err(AbGroupError::ZeroExponent);
            }
            let entry = by_prime.entry(p).or_default().entry(exponent).or_insert(0);
            *entry = checked_add(*entry, multiplicity);
        }
        let torsion = by_prime
            .into_iter()
            .map(|(p, runs)| {
                let runs = runs
                    .into_iter()
                    .rev() // descending exponents
                    .map(|(exponent, multiplicity)| TorsionRun {
                        exponent,
                        multiplicity,
                    })
                    .collect();
                (p, runs)
            })
            .collect();
        Ok(FinAbGroup { free_rank, torsion })
    }

    pub fn free_rank(&self) -> u64 {
        self.free_rank
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// The torsion subgroup.
    pub fn torsion_part(&self) -> FinAbGroup {
        FinAbGroup {
            free_rank: 0,
            torsion: self.torsion.clone(),
        }
    }

    /// Iterate torsion summand runs as `(prime, exponent, multiplicity)`,
    /// primes ascending, exponents descending.
    pub fn torsion_runs(&self) -> impl Iterator<Item = (Prime, u32, u64)> + '_ {
        self.torsion
            .iter()
            .flat_map(|(p, runs)| runs.iter().map(move |r| (*p, r.exponent, r.multiplicity)))
    }

    pub fn torsion_primes(&self) -> impl Iterator<Item = Prime> + '_ {
        self.torsion.keys().copied()
    }

    /// Direct sum: free ranks add, torsion summand multisets merge.
    pub fn direct_sum(&self, other: &FinAbGroup) -> FinAbGroup {
        let summands = self.torsion_runs().chain(other.torsion_runs());
        let mut g = FinAbGroup::from_parts(0, summands).expect("canonical inputs");
        g.free_rank = checked_add(self.free_rank, other.free_rank);
        g
    }

    /// `n`-fold direct sum of `self`.
    pub fn repeated(&self, n: u64) -> FinAbGroup {
        if n == 0 {
            return FinAbGroup::trivial();
        }
        let summands = self
            .torsion_runs()
            .map(|(p, k, m)| (p, k, checked_mul(m, n)));
        let mut g = FinAbGroup::from_parts(0, summands).expect("canonical inputs");
        g.free_rank = checked_mul(self.free_rank, n);
        g
    }

    /// Tensor product over Z:
    ///
    /// ```text
    /// (Z^a (+) T) (x) (Z^b (+) S) = Z^(ab) (+) T^b (+) S^a (+) (T (x) S)
    /// ```
    ///
    /// where cyclic `p`-summands tensor to `Z/p^min(k,k')` and summands at
    /// distinct primes annihilate.
    pub fn tensor(&self, other: &FinAbGroup) -> FinAbGroup {
        let mut acc = self
            .torsion_part()
            .repeated(other.free_rank)
            .direct_sum(&other.torsion_part().repeated(self.free_rank));
        acc = acc.direct_sum(&torsion_tensor(self, other));
        acc.free_rank = checked_mul(self.free_rank, other.free_rank);
        acc
    }

    /// `Tor_Z`: free parts contribute nothing, and on torsion parts Tor
    /// agrees with the tensor product.
    pub fn tor(&self, other: &FinAbGroup) -> FinAbGroup {
        torsion_tensor(self, other)
    }

    /// The invariant `a(p, j)`: number of cyclic `p`-summands of the
    /// torsion part with exponent greater than `j`.
    pub fn a_invariant(&self, p: Prime, j: u32) -> u64 {
        self.torsion
            .get(&p)
            .map(|runs| {
                runs.iter()
                    .take_while(|r| r.exponent > j)
                    .fold(0u64, |acc, r| checked_add(acc, r.multiplicity))
            })
            .unwrap_or(0)
    }

    /// All nonzero invariants, as `(p, j) -> a(p, j)`.
    pub fn a_invariant_table(&self) -> BTreeMap<(Prime, u32), u64> {
        let mut table = BTreeMap::new();
        for (p, runs) in &self.torsion {
            let max_exp = runs.first().map(|r| r.exponent).unwrap_or(0);
            for j in 0..max_exp {
                table.insert((*p, j), self.a_invariant(*p, j));
            }
        }
        table
    }

    /// Reconstruct a torsion group from an invariant table: the multiplicity
    /// of `Z/p^j` is `a(p, j-1) - a(p, j)`. Rejects tables that are not
    /// weakly decreasing in `j` (including an implicit `a(p, j) = 0` for
    /// missing entries), since no group realizes them.
    pub fn from_invariants(
        table: &BTreeMap<(Prime, u32), u64>,
    ) -> Result<FinAbGroup, AbGroupError> {
        let mut per_prime: BTreeMap<Prime, BTreeMap<u32, u64>> = BTreeMap::new();
        for (&(p, j), &a) in table {
            if a > 0 {
                per_prime.entry(p).or_default().insert(j, a);
            }
        }
        let mut summands = Vec::new();
        for (p, values) in per_prime {
            let max_j = *values.keys().last().expect("nonempty by construction");
            // missing entries count as zero, so a gap below a positive value
            // fails the monotonicity check in the loop
            let mut previous = *values.get(&0).unwrap_or(&0);
            for j in 1..=max_j + 1 {
                let current = *values.get(&j).unwrap_or(&0);
                if current > previous {
                    return Err(AbGroupError::NonMonotoneInvariants {
                        prime: p.get(),
                        j,
                        previous,
                        current,
                    });
                }
                // multiplicity of Z/p^j
                summands.push((p, j, previous - current));
                previous = current;
            }
        }
        FinAbGroup::from_parts(0, summands)
    }
}

/// Tensor of the torsion parts: for each common prime, runs
/// `(k, m)` and `(k', m')` contribute `(min(k, k'), m * m')`.
fn torsion_tensor(a: &FinAbGroup, b: &FinAbGroup) -> FinAbGroup {
    let mut summands = Vec::new();
    for (p, runs_a) in &a.torsion {
        if let Some(runs_b) = b.torsion.get(p) {
            for ra in runs_a {
                for rb in runs_b {
                    summands.push((
                        *p,
                        ra.exponent.min(rb.exponent),
                        checked_mul(ra.multiplicity, rb.multiplicity),
                    ));
                }
            }
        }
    }
    FinAbGroup::from_parts(0, summands).expect("canonical inputs")
}

impl fmt::Display for FinAbGroup {
    /// `Z^r + Z/p^k + ...` with primes ascending and exponents descending;
    /// `0` for the trivial group.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut first = true;
        let mut sep = |f: &mut fmt::Formatter<'_>| -> fmt::Result {
            if first {
                first = false;
                Ok(())
            } else {
                write!(f, " + ")
            }
        };
        match self.free_rank {
            0 => {}
            1 => {
                sep(f)?;
                write!(f, "Z")?;
            }
            r => {
                sep(f)?;
                write!(f, "Z^{r}")?;
            }
        }
        for (p, exponent, multiplicity) in self.torsion_runs() {
            for _ in 0..multiplicity {
                sep(f)?;
                if exponent == 1 {
                    write!(f, "Z/{p}")?;
                } else {
                    write!(f, "Z/{p}^{exponent}")?;
                }
            }
        }
        Ok(())
    }
}
