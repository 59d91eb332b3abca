//! Finite-q tables of Frobenius powers: ordinary and Ratliff–Rush
//! colengths, exact Hilbert coefficients, and the normalized estimators.

use std::fmt;

use log::info;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use super::reduction::ReductionData;
use super::rr::{rr_filtration_with_reduction, RrFiltration, DEFAULT_RR_CAP};
use crate::error::{Error, Result};
use crate::filtration::{
    binom2, coefficients_from_v, filtration_table, filtration_v_values, fit_powers_adaptive, verify_hm_identities,
    FiltrationTable, HilbertCoefficients, DEFAULT_WINDOW,
};
use crate::ideal::Ideal;

/// How far past the reduction number to look for a Ratliff–Rush
/// certificate before falling back to the stopping rule.
pub const DEFAULT_CERTIFICATE_SEARCH: usize = 8;

/// Exact rational, serialized as `"a/b"` (or `"a"` when integral).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Ratio(pub BigRational);

impl Ratio {
    pub fn new(num: i64, den: i64) -> Self {
        Ratio(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn integer(n: i64) -> Self {
        Ratio(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `(e0, e1, e2)` of `I^[q]` from the Ratliff–Rush filtration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusCoefficients {
    pub q: u64,
    pub e0: i64,
    pub e1: i64,
    pub e2: i64,
    pub v: FiltrationTable,
}

/// One row of an [`HKReport`]; vectors are indexed by `n`.
#[derive(Clone, Debug, Serialize)]
pub struct QRow {
    pub q: u64,
    /// `ℓ(R/(I^[q])^n)`
    pub ordinary: Vec<u64>,
    /// `ℓ(R/F̃_{q,n})`
    pub ratliff_rush: Vec<u64>,
    pub normalized_ordinary: Vec<Ratio>,
    pub normalized_rr: Vec<Ratio>,
    /// `g(q,n) = ℓ(F̃_{q,n}/(I^[q])^n)`
    pub gaps: Vec<i64>,
    pub e0: i64,
    pub e1: i64,
    pub e2: i64,
    pub v: Vec<i64>,
    pub hm_residuals: Vec<(usize, i64)>,
    pub l1: Ratio,
    pub l2: Ratio,
    /// `f^(q)(n) = ℓ(R/(I^[q])^n)/q² - e(I) C(n+1,2) + L1^(q) n`
    pub f: Vec<Ratio>,
    pub rr_stabilization: Vec<usize>,
    /// `m` with `RR((I^[q])^n) = (I^[q])^n` for `n >= m`, when certified.
    pub rr_certificate: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct HKReport {
    pub characteristic: u32,
    pub ideal: Vec<String>,
    pub reduction: Vec<String>,
    pub reduction_number: usize,
    pub multiplicity: i64,
    pub coefficients: HilbertCoefficients,
    pub n_max: usize,
    pub rows: Vec<QRow>,
    /// Heuristic `a + b/q` extrapolations through the last two rows.
    pub l1_extrapolated: Option<Ratio>,
    pub l2_extrapolated: Option<Ratio>,
    /// Set when a resource cap stopped the table early.
    pub aborted: Option<String>,
}

/// An m-primary ideal together with a verified reduction and its
/// multiplicity, checked two ways.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub ideal: Ideal,
    pub reduction: ReductionData,
    pub multiplicity: i64,
    pub coefficients: HilbertCoefficients,
    pub confirm: usize,
    pub rr_cap: usize,
}

/// Frobenius level `q`: `I^[q]`, `J^[q]`, the RR filtration and the
/// ordinary powers up to the same index.
pub struct Level {
    pub q: u64,
    pub iq: Ideal,
    pub jq: Ideal,
    pub rr: RrFiltration,
    pub powers: Vec<Ideal>,
}

impl Analysis {
    /// `e(I)` as `ℓ(R/J)` must match the fitted `e0` of the ordinary powers;
    /// a mismatch means the Cohen–Macaulay assumption is wrong.
    pub fn new(reduction: ReductionData, confirm: usize) -> Result<Self> {
        let ideal = reduction.ideal.clone();
        ideal.ring().require_dimension_two()?;
        let from_reduction = reduction.reduction.colength()? as i64;
        let start = reduction.r + DEFAULT_WINDOW + 2;
        let (_, coefficients) = fit_powers_adaptive(&ideal, start, start + 16, DEFAULT_WINDOW)?;
        if coefficients.e0 != from_reduction {
            return Err(Error::CmCrossCheck {
                from_reduction,
                from_fit: coefficients.e0,
            });
        }
        Ok(Analysis {
            ideal,
            reduction,
            multiplicity: from_reduction,
            coefficients,
            confirm,
            rr_cap: DEFAULT_RR_CAP,
        })
    }

    pub fn r(&self) -> usize {
        self.reduction.r
    }

    /// Builds `F̃_{q,n}` and `(I^[q])^n` for `n = 0..=n_max`.
    pub fn level(&self, q: u64, n_max: usize) -> Result<Level> {
        let iq = self.ideal.frobenius_power(q)?;
        let jq = self.reduction.reduction.frobenius_power(q)?;
        let (rr, mut cache) = rr_filtration_with_reduction(
            &iq,
            &jq,
            self.r(),
            n_max,
            self.r() + DEFAULT_CERTIFICATE_SEARCH,
            self.confirm,
            self.rr_cap,
        )?;
        let powers = (0..=n_max).map(|n| cache.get(n).cloned()).collect::<Result<Vec<_>>>()?;
        Ok(Level { q, iq, jq, rr, powers })
    }

    /// Exact `(e0, e1, e2)(I^[q])` from v-values of the RR filtration
    /// against `J^[q]`, over `n = 1..=r+1` so the vanishing tail is checked.
    pub fn coefficients(&self, q: u64) -> Result<FrobeniusCoefficients> {
        let n = self.r() + 1;
        let level = self.level(q, n)?;
        let v = filtration_v_values(&level.rr.ideals, &level.jq, n)?;
        let (e1, e2) = coefficients_from_v(&v)?;
        let e0 = (q * q) as i64 * self.multiplicity;
        Ok(FrobeniusCoefficients { q, e0, e1, e2, v })
    }

    pub fn q_row(&self, q: u64, n_max: usize) -> Result<QRow> {
        let top = n_max.max(self.r() + 1);
        info!("building row q = {q} up to n = {top}");
        let level = self.level(q, top)?;
        let ordinary = filtration_table("ordinary", &level.powers)?;
        let rr_table = filtration_table("ratliff-rush", &level.rr.ideals)?;
        let v = filtration_v_values(&level.rr.ideals, &level.jq, top)?;
        let (e1, e2) = coefficients_from_v(&v)?;
        let q2 = (q * q) as i64;
        let e0 = q2 * self.multiplicity;
        let hm = verify_hm_identities(&rr_table, &v, e0);
        let norm = |x: u64| Ratio::new(x as i64, q2);
        let l1 = Ratio::new(e1, q2);
        let l2 = Ratio::new(e2, q2);
        let f = ordinary
            .values
            .iter()
            .enumerate()
            .map(|(n, &len)| {
                let n = n as i64;
                let base = BigRational::new(BigInt::from(len), BigInt::from(q2))
                    - BigRational::from_integer(BigInt::from(self.multiplicity * binom2(n + 1)));
                Ratio(base + &l1.0 * BigInt::from(n))
            })
            .collect();
        Ok(QRow {
            q,
            normalized_ordinary: ordinary.values.iter().map(|&x| norm(x)).collect(),
            normalized_rr: rr_table.values.iter().map(|&x| norm(x)).collect(),
            gaps: ordinary
                .values
                .iter()
                .zip(&rr_table.values)
                .map(|(&a, &b)| a as i64 - b as i64)
                .collect(),
            ordinary: ordinary.values,
            ratliff_rush: rr_table.values,
            e0,
            e1,
            e2,
            v: v.v,
            hm_residuals: hm.residuals,
            l1,
            l2,
            f,
            rr_stabilization: level.rr.closures.iter().map(|c| c.stabilization_index).collect(),
            rr_certificate: level.rr.certificate,
        })
    }

    /// Rows for `q = p^1..p^{e_max}`, computed in parallel. A resource cap
    /// keeps the rows below the first failing `q` and marks the report.
    pub fn tables(&self, e_max: u32, n_max: usize) -> Result<HKReport> {
        let p = self.ideal.ring().characteristic() as u64;
        let qs: Vec<u64> = (1..=e_max).map(|e| p.pow(e)).collect();
        let results: Vec<Result<QRow>> = qs.par_iter().map(|&q| self.q_row(q, n_max)).collect();
        let mut rows = Vec::new();
        let mut aborted = None;
        for (q, r) in qs.iter().zip(results) {
            match r {
                Ok(row) => rows.push(row),
                Err(e) if e.is_resource_cap() => {
                    aborted = Some(format!("q = {q}: {e}"));
                    break;
                }
                Err(e) => return Err(e),
            }
        }
        Ok(self.report(rows, n_max, aborted))
    }

    pub fn report(&self, rows: Vec<QRow>, n_max: usize, aborted: Option<String>) -> HKReport {
        let ring = self.ideal.ring();
        HKReport {
            characteristic: ring.characteristic(),
            ideal: self.ideal.format_generators(),
            reduction: self.reduction.reduction.format_generators(),
            reduction_number: self.r(),
            multiplicity: self.multiplicity,
            coefficients: self.coefficients,
            n_max,
            l1_extrapolated: extrapolate(&rows, |r| &r.l1),
            l2_extrapolated: extrapolate(&rows, |r| &r.l2),
            rows,
            aborted,
        }
    }
}

/// Fits `y = a + b/q` through the last two rows and returns `a`.
fn extrapolate(rows: &[QRow], pick: impl Fn(&QRow) -> &Ratio) -> Option<Ratio> {
    if rows.len() < 2 {
        return None;
    }
    let (r1, r2) = (&rows[rows.len() - 2], &rows[rows.len() - 1]);
    let inv = |q: u64| BigRational::new(BigInt::from(1), BigInt::from(q));
    let (x1, x2) = (inv(r1.q), inv(r2.q));
    let (y1, y2) = (&pick(r1).0, &pick(r2).0);
    let dx = &x1 - &x2;
    if dx.is_zero() {
        return None;
    }
    let b = (y1 - y2) / dx;
    Some(Ratio(y1 - b * x1))
}

pub fn frobenius_coefficients(reduction: &ReductionData, q: u64, confirm: usize) -> Result<FrobeniusCoefficients> {
    Analysis::new(reduction.clone(), confirm)?.coefficients(q)
}

pub fn ehk_tables(reduction: &ReductionData, e_max: u32, n_max: usize, confirm: usize) -> Result<HKReport> {
    Analysis::new(reduction.clone(), confirm)?.tables(e_max, n_max)
}
