//! Ratliff–Rush closures.

use log::warn;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::Ideal;

/// Default hard cap on the colon chain length.
pub const DEFAULT_RR_CAP: usize = 30;

#[derive(Clone, Debug)]
pub struct RRClosureResult {
    pub input: Ideal,
    pub closure: Ideal,
    /// First `n` with `K_n = K_{n+1} = ... = K_{n+confirm}`.
    pub stabilization_index: usize,
    pub confirm: usize,
    pub transcript: Vec<ChainStep>,
    /// True when the closure is exact by a certificate rather than by the
    /// consecutive-equality stopping rule.
    pub certified: bool,
}

/// One link `K_n` of a colon chain, recorded by its colength.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ChainStep {
    pub n: usize,
    pub colength: u64,
}

fn require_regular(ideal: &Ideal) -> Result<()> {
    if ideal.is_zero()? {
        return Err(Error::NoRegularElement);
    }
    Ok(())
}

/// Follows an ascending chain `K_1 ⊆ K_2 ⊆ ...` until `confirm + 1`
/// consecutive members agree. `step(n, prev)` produces `K_n` given
/// `K_{n-1}` (or the seed for `n = 1`).
fn stabilize<F>(seed: &Ideal, confirm: usize, cap: usize, mut step: F) -> Result<(Ideal, usize, Vec<ChainStep>)>
where
    F: FnMut(usize, &Ideal) -> Result<Ideal>,
{
    let mut transcript = Vec::new();
    let mut prev = seed.clone();
    let mut run_start = 0usize;
    let mut run_len = 0usize;
    let mut current: Option<Ideal> = None;
    for n in 1..=cap {
        let k = step(n, &prev)?;
        let colength = k.colength().unwrap_or(u64::MAX);
        transcript.push(ChainStep { n, colength });
        match &current {
            Some(c) if c.equals(&k)? => run_len += 1,
            _ => {
                run_start = n;
                run_len = 0;
            }
        }
        if run_len >= confirm {
            return Ok((k, run_start, transcript));
        }
        prev = k.clone();
        current = Some(k);
    }
    Err(Error::IterationCap { cap })
}

/// `Ĩ = ⋃ (I^{n+1} : I^n)`, stopping once the chain is constant over
/// `confirm + 1` consecutive steps.
pub fn ratliff_rush_closure(ideal: &Ideal, confirm: usize) -> Result<RRClosureResult> {
    ratliff_rush_closure_capped(ideal, confirm, DEFAULT_RR_CAP)
}

pub fn ratliff_rush_closure_capped(ideal: &Ideal, confirm: usize, cap: usize) -> Result<RRClosureResult> {
    require_regular(ideal)?;
    let mut powers = vec![ideal.ring().unit_ideal(), ideal.clone()];
    let (closure, stabilization_index, transcript) = stabilize(ideal, confirm, cap, |n, prev| {
        while powers.len() <= n + 1 {
            let next = powers.last().unwrap().product(ideal)?;
            powers.push(next);
        }
        // K_{n-1} ⊆ K_n, so the previous link bounds the search space
        powers[n + 1].colon_with_lower(&powers[n], prev)
    })?;
    Ok(RRClosureResult {
        input: ideal.clone(),
        closure,
        stabilization_index,
        confirm,
        transcript,
        certified: false,
    })
}

/// Lazily extended powers `B^0, B^1, ...` of a fixed ideal.
pub struct PowerCache {
    powers: Vec<Ideal>,
}

impl PowerCache {
    pub fn new(base: &Ideal) -> Self {
        PowerCache {
            powers: vec![base.ring().unit_ideal(), base.clone()],
        }
    }

    pub fn get(&mut self, k: usize) -> Result<&Ideal> {
        while self.powers.len() <= k {
            let next = self.powers.last().unwrap().product(&self.powers[1])?;
            self.powers.push(next);
        }
        Ok(&self.powers[k])
    }
}

/// Ratliff–Rush closure of `I^n` through the chain `(I^{n+k} : I^k)`,
/// which ascends to the same union and needs only powers `I^{n+k}`.
pub fn ratliff_rush_of_power(base: &Ideal, n: usize, confirm: usize, cap: usize) -> Result<RRClosureResult> {
    ratliff_rush_of_power_cached(&mut PowerCache::new(base), n, confirm, cap)
}

pub fn ratliff_rush_of_power_cached(
    cache: &mut PowerCache,
    n: usize,
    confirm: usize,
    cap: usize,
) -> Result<RRClosureResult> {
    require_regular(cache.get(1)?)?;
    let input = cache.get(n)?.clone();
    if n == 0 {
        return Ok(RRClosureResult {
            closure: input.clone(),
            input,
            stabilization_index: 0,
            confirm,
            transcript: Vec::new(),
            certified: true,
        });
    }
    let (closure, stabilization_index, transcript) = stabilize(&input, confirm, cap, |k, prev| {
        let num = cache.get(n + k)?.clone();
        let den = cache.get(k)?;
        num.colon_with_lower(den, prev)
    })?;
    Ok(RRClosureResult {
        input,
        closure,
        stabilization_index,
        confirm,
        transcript,
        certified: false,
    })
}

/// The Ratliff–Rush filtration `F_n = RR(B^n)`, `n = 0..=n_max`.
#[derive(Clone, Debug)]
pub struct RrFiltration {
    pub ideals: Vec<Ideal>,
    pub closures: Vec<RRClosureResult>,
    /// Index `m` certifying `RR(B^n) = B^n` for all `n >= m`, if found.
    pub certificate: Option<usize>,
}

impl RrFiltration {
    pub fn certified(&self) -> bool {
        self.closures.iter().all(|c| c.certified)
    }
}

pub fn rr_filtration(base: &Ideal, n_max: usize, confirm: usize, cap: usize) -> Result<(RrFiltration, PowerCache)> {
    let mut cache = PowerCache::new(base);
    let mut closures = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        closures.push(ratliff_rush_of_power_cached(&mut cache, n, confirm, cap)?);
    }
    let ideals = closures.iter().map(|c| c.closure.clone()).collect();
    Ok((
        RrFiltration {
            ideals,
            closures,
            certificate: None,
        },
        cache,
    ))
}

/// Smallest `m` in `r..=m_cap` with `(B^{m+1} : x) = B^m` for a generator
/// `x` of the reduction `J` (`B^{m+1} = J B^m` holds for `m >= r`). In a
/// two-dimensional Cohen–Macaulay ring this forces `RR(B^n) = B^n` for all
/// `n >= m` (Rossi–Swanson).
pub fn rr_closed_from(cache: &mut PowerCache, j: &Ideal, r: usize, m_cap: usize) -> Result<Option<usize>> {
    let ring = j.ring().clone();
    for m in r.max(1)..=m_cap {
        let upper = cache.get(m + 1)?.clone();
        let lower = cache.get(m)?.clone();
        let target = lower.colength()?;
        for x in j.generators() {
            let principal = Ideal::new(&ring, vec![x.clone()]);
            // B^m ⊆ (B^{m+1} : x), so equal colengths mean equality
            if upper.colon_with_lower(&principal, &lower)?.colength()? == target {
                return Ok(Some(m));
            }
        }
    }
    Ok(None)
}

/// The Ratliff–Rush filtration of `B` with reduction `J` and reduction
/// number `r`. With a certificate `m`, `RR(B^n) = (B^{n+k} : B^k)` exactly
/// for `n + k >= m`, since `(RR(B^{n+k}) : B^k) = RR(B^n)`. Without one
/// (none found up to `m_cap`), falls back to the stopping rule.
pub fn rr_filtration_with_reduction(
    base: &Ideal,
    j: &Ideal,
    r: usize,
    n_max: usize,
    m_cap: usize,
    confirm: usize,
    cap: usize,
) -> Result<(RrFiltration, PowerCache)> {
    require_regular(base)?;
    let mut cache = PowerCache::new(base);
    let Some(m) = rr_closed_from(&mut cache, j, r, m_cap)? else {
        warn!("no Ratliff-Rush certificate up to m = {m_cap}; using the stopping rule with confirm = {confirm}");
        let (f, _) = rr_filtration(base, n_max, confirm, cap)?;
        return Ok((f, cache));
    };
    let mut closures = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let input = cache.get(n)?.clone();
        let (closure, k) = if n == 0 || n >= m {
            (input.clone(), 0)
        } else {
            let k = m - n;
            let num = cache.get(n + k)?.clone();
            (num.colon_with_lower(cache.get(k)?, &input)?, k)
        };
        let colength = closure.colength()?;
        closures.push(RRClosureResult {
            input,
            closure,
            stabilization_index: k,
            confirm: 0,
            transcript: if k > 0 { vec![ChainStep { n: k, colength }] } else { Vec::new() },
            certified: true,
        });
    }
    let ideals = closures.iter().map(|c| c.closure.clone()).collect();
    Ok((
        RrFiltration {
            ideals,
            closures,
            certificate: Some(m),
        },
        cache,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::QuotientRing;

    #[test]
    fn maximal_ideal_of_plane_is_closed() {
        let r = QuotientRing::new(7, &["x", "y"], &[]).unwrap();
        let m = r.maximal_ideal();
        let rr = ratliff_rush_closure(&m, 1).unwrap();
        assert!(rr.closure.equals(&m).unwrap());
        assert_eq!(rr.stabilization_index, 1);
    }

    #[test]
    fn remark_ideal_gains_x2y2() {
        let r = QuotientRing::new(2, &["x", "y"], &[]).unwrap();
        let i = r.ideal(&["x^4", "x^3*y", "x*y^3", "y^4"]).unwrap();
        let rr = ratliff_rush_closure(&i, 1).unwrap();
        let w = r.parse("x^2*y^2").unwrap();
        assert!(rr.closure.contains(&w).unwrap());
        assert!(!i.contains(&w).unwrap());
        assert!(i.is_subset_of(&rr.closure).unwrap());
        // closure is m^4 here
        assert!(rr.closure.equals(&r.maximal_ideal().power(4).unwrap()).unwrap());
    }

    #[test]
    fn power_chain_matches_direct_definition() {
        let r = QuotientRing::new(2, &["x", "y", "z"], &["x^3+y^3+z^3"]).unwrap();
        let m2 = r.maximal_ideal().frobenius_power(2).unwrap();
        for n in 1..=3 {
            let direct = ratliff_rush_closure(&m2.power(n as i64).unwrap(), 1).unwrap();
            let shifted = ratliff_rush_of_power(&m2, n, 1, DEFAULT_RR_CAP).unwrap();
            assert!(direct.closure.equals(&shifted.closure).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn certified_filtration_matches_long_chain() {
        let r = QuotientRing::new(2, &["x", "y", "z"], &["x^3+y^3+z^3"]).unwrap();
        let m4 = r.maximal_ideal().frobenius_power(4).unwrap();
        let j4 = r.ideal(&["y", "z"]).unwrap().frobenius_power(4).unwrap();
        let (cert, _) = rr_filtration_with_reduction(&m4, &j4, 2, 3, 10, 1, DEFAULT_RR_CAP).unwrap();
        assert!(cert.certified());
        let (plain, _) = rr_filtration(&m4, 3, 5, DEFAULT_RR_CAP).unwrap();
        for n in 0..=3 {
            assert!(cert.ideals[n].equals(&plain.ideals[n]).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn consecutive_equality_can_stop_early() {
        // (I^2 : I) = (I^3 : I^2) for I = m^[8], yet (I^4 : I^3) is larger
        let r = QuotientRing::new(2, &["x", "y", "z"], &["x^3+y^3+z^3"]).unwrap();
        let m8 = r.maximal_ideal().frobenius_power(8).unwrap();
        let early = ratliff_rush_closure(&m8, 1).unwrap();
        let late = ratliff_rush_closure(&m8, 3).unwrap();
        assert_eq!(early.closure.colength().unwrap(), 142);
        assert_eq!(late.closure.colength().unwrap(), 136);
        let j8 = r.ideal(&["y", "z"]).unwrap().frobenius_power(8).unwrap();
        let (cert, _) = rr_filtration_with_reduction(&m8, &j8, 2, 1, 10, 1, DEFAULT_RR_CAP).unwrap();
        assert!(cert.ideals[1].equals(&late.closure).unwrap());
    }

    #[test]
    fn zero_ideal_rejected() {
        let r = QuotientRing::new(2, &["x", "y"], &[]).unwrap();
        assert!(matches!(
            ratliff_rush_closure(&r.zero_ideal(), 1),
            Err(Error::NoRegularElement)
        ));
    }

    #[test]
    fn iteration_cap() {
        let r = QuotientRing::new(2, &["x", "y"], &[]).unwrap();
        let i = r.ideal(&["x^4", "x^3*y", "x*y^3", "y^4"]).unwrap();
        assert!(matches!(
            ratliff_rush_closure_capped(&i, 3, 2),
            Err(Error::IterationCap { cap: 2 })
        ));
    }
}
