//! Minimal reductions and reduction numbers.

use log::debug;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::Ideal;

#[derive(Clone, Debug)]
pub struct ReductionData {
    pub ideal: Ideal,
    pub reduction: Ideal,
    /// Smallest `r` with `I^{r+1} = J I^r`.
    pub r: usize,
    pub transcript: Vec<ReductionCheck>,
}

/// Outcome of testing `I^{n+1} = J I^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionCheck {
    pub n: usize,
    pub equal: bool,
}

/// Checks that `J ⊆ I` is a reduction and finds its reduction number.
pub fn verify_reduction(ideal: &Ideal, j: &Ideal, r_cap: usize) -> Result<ReductionData> {
    if !j.is_subset_of(ideal)? {
        return Err(Error::InvalidArgument("reduction is not contained in the ideal".into()));
    }
    let mut transcript = Vec::new();
    let mut power = ideal.ring().unit_ideal(); // I^n
    for n in 0..=r_cap {
        let next = if n == 0 { ideal.clone() } else { power.product(ideal)? };
        let jp = j.product(&power)?;
        let equal = next.equals(&jp)?;
        transcript.push(ReductionCheck { n, equal });
        if equal {
            return Ok(ReductionData {
                ideal: ideal.clone(),
                reduction: j.clone(),
                r: n,
                transcript,
            });
        }
        power = next;
    }
    Err(Error::NotAReduction { r_cap })
}

/// Searches for a two-generated reduction among random `F_p`-combinations
/// of the generators. Deterministic for a given seed.
pub fn find_minimal_reduction(ideal: &Ideal, seed: u64, attempts: usize, r_cap: usize) -> Result<ReductionData> {
    let ring = ideal.ring();
    ring.require_dimension_two()?;
    if !ideal.is_m_primary()? {
        return Err(Error::InvalidArgument("ideal is not m-primary".into()));
    }
    let pr = ring.poly_ring();
    let p = ring.characteristic();
    let gens = ideal.generators();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    if gens.len() <= 2 {
        // the ideal is its own candidate
        if let Ok(d) = verify_reduction(ideal, ideal, r_cap) {
            return Ok(d);
        }
    }
    for attempt in 0..attempts {
        let mut combo = || {
            let mut acc = crate::poly::Polynomial::zero();
            for g in gens {
                let c: u32 = rng.gen_range(0..p);
                acc = pr.add(&acc, &pr.scale(g, c));
            }
            acc
        };
        let (a, b) = (combo(), combo());
        if a.is_zero() || b.is_zero() {
            continue;
        }
        let j = Ideal::new(ring, vec![a, b]);
        debug!(
            "reduction attempt {attempt} (seed {seed}): J = ({})",
            j.format_generators().join(", ")
        );
        match verify_reduction(ideal, &j, r_cap) {
            Ok(d) => return Ok(d),
            Err(Error::NotAReduction { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::ReductionNotFound { attempts, r_cap })
}

/// `I^2 = J I`.
pub fn stability_check(ideal: &Ideal, j: &Ideal) -> Result<bool> {
    ideal.power(2)?.equals(&j.product(ideal)?)
}
