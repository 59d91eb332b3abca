//! Exact finite-q checks: the closed forms for `e1`, `e2` and the
//! Ratliff–Rush Hilbert polynomial, the estimate inequality, and the
//! test-ideal refutation search.

use log::{info, warn};
use serde::Serialize;

use super::report::{Analysis, HKReport};
use super::rr::PowerCache;
use crate::error::{Error, Result};
use crate::filtration::binom2;
use crate::ideal::Ideal;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem41Row {
    pub q: u64,
    /// `e1 - [r q² e + ℓ(R/F̃_{r-1}) - ℓ(R/F̃_r)]`
    pub residual_e1: i64,
    /// `e2 - [C(r,2) q² e + r ℓ(R/F̃_{r-1}) - (r-1) ℓ(R/F̃_r)]`
    pub residual_e2: i64,
    /// `(n, ℓ(R/F̃_n) - P(n))` for `r-1 <= n <= n_max`
    pub residual_polynomial: Vec<(i64, i64)>,
}

impl Theorem41Row {
    pub fn ok(&self) -> bool {
        self.residual_e1 == 0 && self.residual_e2 == 0 && self.residual_polynomial.iter().all(|r| r.1 == 0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem41Report {
    pub reduction_number: usize,
    pub rows: Vec<Theorem41Row>,
}

impl Theorem41Report {
    pub fn ok(&self) -> bool {
        self.rows.iter().all(Theorem41Row::ok)
    }
}

/// Residuals of the exact finite-q closed forms for every row of `report`.
/// `ℓ(R/F̃_{-1})` is taken to be 0.
pub fn theorem41_check(report: &HKReport) -> Result<Theorem41Report> {
    let r = report.reduction_number as i64;
    let e = report.multiplicity;
    let rows = report
        .rows
        .iter()
        .map(|row| {
            let len = |n: i64| -> i64 {
                if n < 0 {
                    0
                } else {
                    row.ratliff_rush[n as usize] as i64
                }
            };
            if row.ratliff_rush.len() < r as usize + 1 {
                return Err(Error::InvalidArgument(format!(
                    "row q = {} stops before n = r = {r}",
                    row.q
                )));
            }
            let q2e = (row.q * row.q) as i64 * e;
            let (lo, hi) = (len(r - 1), len(r));
            let residual_e1 = row.e1 - (r * q2e + lo - hi);
            let residual_e2 = row.e2 - (binom2(r) * q2e + r * lo - (r - 1) * hi);
            let residual_polynomial = ((r - 1)..row.ratliff_rush.len() as i64)
                .map(|n| (n, len(n) - (row.e0 * binom2(n + 1) - row.e1 * n + row.e2)))
                .collect();
            Ok(Theorem41Row {
                q: row.q,
                residual_e1,
                residual_e2,
                residual_polynomial,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Theorem41Report {
        reduction_number: report.reduction_number,
        rows,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InequalityReport {
    pub q: u64,
    pub n: usize,
    /// `(t, slack)` with slack
    /// `[ℓ(R/(I^[q])^{n+t}) - ℓ(R/(J^[q])^t)] - [(t+1) ℓ(R/(I^[q])^n) - t ℓ(R/(I^[q])^{n-1})]`
    pub slacks: Vec<(usize, i64)>,
}

impl InequalityReport {
    pub fn ok(&self) -> bool {
        self.slacks.iter().all(|s| s.1 >= 0)
    }
}

pub fn estimates_inequality_check(analysis: &Analysis, q: u64, n: usize, t_max: usize) -> Result<InequalityReport> {
    if t_max == 0 {
        return Err(Error::InvalidArgument("t_max must be at least 1".into()));
    }
    if n < analysis.r() || n == 0 {
        return Err(Error::InvalidArgument(format!(
            "n = {n} must satisfy n >= max(r, 1) with r = {}",
            analysis.r()
        )));
    }
    let iq = analysis.ideal.frobenius_power(q)?;
    let jq = analysis.reduction.reduction.frobenius_power(q)?;
    let mut ip = PowerCache::new(&iq);
    let mut jp = PowerCache::new(&jq);
    let l_n = ip.get(n)?.colength()? as i64;
    let l_prev = ip.get(n - 1)?.colength()? as i64;
    let mut slacks = Vec::with_capacity(t_max);
    for t in 1..=t_max {
        let rhs = ip.get(n + t)?.colength()? as i64 - jp.get(t)?.colength()? as i64;
        let lhs = (t as i64 + 1) * l_n - t as i64 * l_prev;
        slacks.push((t, rhs - lhs));
    }
    Ok(InequalityReport { q, n, slacks })
}

/// A product `a * b` with `a ∈ J_star`, `b ∈ ((I^[q])^{n+1} : I^[q])` and
/// `a * b ∉ (I^[q])^n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub q: u64,
    pub n: usize,
    pub multiplier: String,
    pub colon_element: String,
    pub certificate: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SearchReport {
    pub tested: Vec<(u64, usize)>,
    pub witnesses: Vec<Witness>,
    /// Set when a resource cap stopped the search; earlier cells are kept.
    pub aborted: Option<String>,
}

/// Tests `J_star · ((I^[q])^{n+1} : I^[q]) ⊆ (I^[q])^n` over the grid.
/// With `J_star` the test ideal, a witness shows the colon is not inside
/// the tight closure of `(I^[q])^n`.
pub fn star_refutation_search(ideal: &Ideal, j_star: &Ideal, qs: &[u64], ns: &[usize]) -> Result<SearchReport> {
    ideal.ring().require_dimension_two()?;
    let ring = ideal.ring();
    let pr = ring.poly_ring();
    let mut out = SearchReport::default();
    'grid: for &q in qs {
        let iq = match ideal.frobenius_power(q) {
            Ok(i) => i,
            Err(e) if e.is_resource_cap() => {
                warn!("search aborted at q = {q}: {e}");
                out.aborted = Some(format!("q = {q}: {e}"));
                break;
            }
            Err(e) => return Err(e),
        };
        let mut cache = PowerCache::new(&iq);
        for &n in ns {
            let cell = (|| -> Result<Vec<Witness>> {
                let target = cache.get(n)?.clone();
                let colon = cache.get(n + 1)?.colon(&iq)?;
                let mut found = Vec::new();
                for a in j_star.generators() {
                    for b in colon.groebner()?.generators() {
                        let ab = pr.mul(a, b);
                        if !target.contains(&ab)? {
                            found.push(Witness {
                                q,
                                n,
                                multiplier: ring.format(a),
                                colon_element: ring.format(b),
                                certificate: ring.format(&ab),
                            });
                            return Ok(found);
                        }
                    }
                }
                Ok(found)
            })();
            match cell {
                Ok(w) => {
                    info!("search cell q = {q}, n = {n}: {} witness(es)", w.len());
                    out.tested.push((q, n));
                    out.witnesses.extend(w);
                }
                Err(e) if e.is_resource_cap() => {
                    warn!("search aborted at q = {q}, n = {n}: {e}");
                    out.aborted = Some(format!("q = {q}, n = {n}: {e}"));
                    break 'grid;
                }
                Err(e) => return Err(e),
            }
        }
    }
    Ok(out)
}
