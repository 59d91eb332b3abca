//! Shared fixtures for the integration tests.
#![allow(dead_code)]

use std::sync::Arc;

use hk_core::{Ideal, Monomial, Polynomial, QuotientRing};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn fermat(p: u64) -> Arc<QuotientRing> {
    QuotientRing::new(p, &["x", "y", "z"], &["x^3+y^3+z^3"]).unwrap()
}

pub fn plane(p: u64) -> Arc<QuotientRing> {
    QuotientRing::new(p, &["x", "y"], &[]).unwrap()
}

/// A random polynomial with `1..=max_terms` terms of degree `1..=max_deg`
/// (so it vanishes at the origin).
pub fn random_poly<R: Rng>(ring: &QuotientRing, rng: &mut R, max_terms: usize, max_deg: u32) -> Polynomial {
    let pr = ring.poly_ring();
    let n = ring.nvars();
    let p = ring.characteristic();
    let terms = rng.gen_range(1..=max_terms);
    let mut f = Polynomial::zero();
    for _ in 0..terms {
        let deg = rng.gen_range(1..=max_deg);
        let mut exps = vec![0u32; n];
        for _ in 0..deg {
            exps[rng.gen_range(0..n)] += 1;
        }
        let c = rng.gen_range(1..p);
        f = pr.add(&f, &pr.term(c, Monomial::from_exponents(&exps).unwrap()));
    }
    f
}

/// An m-primary ideal of `F_p[x,y]`: pure powers of both variables plus up
/// to `extra` random generators.
pub fn random_m_primary<R: Rng>(ring: &Arc<QuotientRing>, rng: &mut R, max_pow: u32, extra: usize) -> Ideal {
    let pr = ring.poly_ring();
    let mut gens = Vec::new();
    for v in 0..ring.nvars() {
        let mut exps = vec![0u32; ring.nvars()];
        exps[v] = rng.gen_range(1..=max_pow);
        gens.push(pr.monomial(Monomial::from_exponents(&exps).unwrap()));
    }
    for _ in 0..rng.gen_range(0..=extra) {
        gens.push(random_poly(ring, rng, 3, max_pow));
    }
    gens.shuffle(rng);
    Ideal::new(ring, gens)
}
