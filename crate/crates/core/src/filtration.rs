//! Hilbert–Samuel tables of filtrations in dimension two, coefficient
//! extraction by finite differences, and v-values `ℓ(F_n / J F_{n-1})`.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::Ideal;

/// Default number of trailing constant second differences required before a
/// fit is trusted.
pub const DEFAULT_WINDOW: usize = 3;

pub fn binom2(n: i64) -> i64 {
    // C(n, 2) as a polynomial in n
    n * (n - 1) / 2
}

/// `ℓ(R/F_n)` for `n = 0..=n_max`, with `ℓ = 0` for negative `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertTable {
    pub label: String,
    pub values: Vec<u64>,
}

impl HilbertTable {
    pub fn new(label: impl Into<String>, values: Vec<u64>) -> Self {
        HilbertTable {
            label: label.into(),
            values,
        }
    }

    pub fn n_max(&self) -> usize {
        self.values.len().saturating_sub(1)
    }

    pub fn at(&self, n: i64) -> i64 {
        if n < 0 {
            0
        } else {
            self.values[n as usize] as i64
        }
    }

    pub fn delta(&self, n: i64) -> i64 {
        self.at(n) - self.at(n - 1)
    }

    pub fn delta2(&self, n: i64) -> i64 {
        self.at(n) - 2 * self.at(n - 1) + self.at(n - 2)
    }

    /// Rows `(n, ℓ, Δ, Δ²)`.
    pub fn rows(&self) -> Vec<[i64; 4]> {
        (0..self.values.len() as i64)
            .map(|n| [n, self.at(n), self.delta(n), self.delta2(n)])
            .collect()
    }

    pub fn is_non_decreasing(&self) -> bool {
        self.values.windows(2).all(|w| w[0] <= w[1])
    }
}

/// `(e0, e1, e2)` with `ℓ(R/F_n) = e0 C(n+1,2) - e1 n + e2` for `n > σ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HilbertCoefficients {
    pub e0: i64,
    pub e1: i64,
    pub e2: i64,
    /// Largest `n >= 0` where the table differs from the polynomial, or -1.
    pub postulation: i64,
}

impl HilbertCoefficients {
    pub fn polynomial_at(&self, n: i64) -> i64 {
        self.e0 * binom2(n + 1) - self.e1 * n + self.e2
    }
}

/// Colengths of the ordinary powers `I^n`, `n = 0..=n_max`.
pub fn hilbert_samuel_table(ideal: &Ideal, n_max: usize) -> Result<HilbertTable> {
    ideal.ring().require_dimension_two()?;
    let mut powers = Vec::with_capacity(n_max + 1);
    powers.push(ideal.ring().unit_ideal());
    for n in 1..=n_max {
        let next = if n == 1 {
            ideal.clone()
        } else {
            powers[n - 1].product(ideal)?
        };
        powers.push(next);
    }
    let values = powers.par_iter().map(|p| p.colength()).collect::<Result<Vec<_>>>()?;
    Ok(HilbertTable::new("ordinary powers", values))
}

/// Colengths of an explicit filtration `F_0..F_{n_max}`.
pub fn filtration_table(label: &str, filtration: &[Ideal]) -> Result<HilbertTable> {
    let values = filtration.par_iter().map(|f| f.colength()).collect::<Result<Vec<_>>>()?;
    Ok(HilbertTable::new(label, values))
}

/// Fits the dimension-two Hilbert polynomial once `Δ²` is constant over
/// the last `window` rows.
pub fn fit_hilbert_polynomial(table: &HilbertTable, window: usize) -> Result<HilbertCoefficients> {
    let window = window.max(1);
    let n = table.n_max() as i64;
    if n < window as i64 + 1 {
        return Err(Error::NotStabilized { window });
    }
    let e0 = table.delta2(n);
    if (n - window as i64 + 1..=n).any(|k| table.delta2(k) != e0) {
        return Err(Error::NotStabilized { window });
    }
    let e1 = e0 * n - table.delta(n);
    let e2 = table.at(n) - e0 * binom2(n + 1) + e1 * n;
    let mut coeffs = HilbertCoefficients {
        e0,
        e1,
        e2,
        postulation: -1,
    };
    coeffs.postulation = (0..=n).rev().find(|&k| table.at(k) != coeffs.polynomial_at(k)).unwrap_or(-1);
    debug_assert!(((coeffs.postulation + 1)..=n).all(|k| table.at(k) == coeffs.polynomial_at(k)));
    Ok(coeffs)
}

/// Grows `n_max` from `start` until the fit stabilizes or `limit` is hit.
pub fn fit_powers_adaptive(
    ideal: &Ideal,
    start: usize,
    limit: usize,
    window: usize,
) -> Result<(HilbertTable, HilbertCoefficients)> {
    let mut n_max = start.max(window + 1);
    loop {
        let table = hilbert_samuel_table(ideal, n_max)?;
        match fit_hilbert_polynomial(&table, window) {
            Ok(c) => return Ok((table, c)),
            Err(Error::NotStabilized { .. }) if n_max < limit => n_max = (n_max + 2).min(limit),
            Err(e) => return Err(e),
        }
    }
}

/// v-values of a filtration against a reduction `J`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationTable {
    /// `v[n] = ℓ(F_n / J F_{n-1})`; `v[0]` is unused and zero.
    pub v: Vec<i64>,
    /// Smallest `r` with `v(n) = 0` for every computed `n > r`.
    pub reduction_number: usize,
}

impl FiltrationTable {
    pub fn from_values(v: Vec<i64>) -> Self {
        let reduction_number = v.iter().rposition(|&x| x != 0).unwrap_or(0);
        FiltrationTable { v, reduction_number }
    }

    pub fn n_max(&self) -> usize {
        self.v.len().saturating_sub(1)
    }
}

/// `v(n) = ℓ(R/J F_{n-1}) - ℓ(R/F_n)` for `n = 1..=n_max`, after checking
/// `J F_{n-1} ⊆ F_n`. `filtration[0]` must be the unit ideal.
pub fn filtration_v_values(filtration: &[Ideal], j: &Ideal, n_max: usize) -> Result<FiltrationTable> {
    if filtration.len() <= n_max {
        return Err(Error::InvalidArgument(format!(
            "filtration has {} terms, need {}",
            filtration.len(),
            n_max + 1
        )));
    }
    let v = (1..=n_max)
        .into_par_iter()
        .map(|n| {
            let jf = j.product(&filtration[n - 1])?;
            if !jf.is_subset_of(&filtration[n])? {
                return Err(Error::ContainmentViolation(n));
            }
            Ok(jf.colength()? as i64 - filtration[n].colength()? as i64)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut all = vec![0];
    all.extend(v);
    Ok(FiltrationTable::from_values(all))
}

/// `e1 = Σ v(n)`, `e2 = Σ (n-1) v(n)`; valid when `depth G(F) >= 1`.
pub fn coefficients_from_v(table: &FiltrationTable) -> Result<(i64, i64)> {
    let n_max = table.n_max();
    if n_max == 0 {
        return Err(Error::InvalidArgument("empty v-table".into()));
    }
    if table.v[n_max] != 0 {
        return Err(Error::VTailNotZero {
            n: n_max,
            value: table.v[n_max],
        });
    }
    let e1 = table.v.iter().skip(1).sum();
    let e2 = table.v.iter().enumerate().skip(1).map(|(n, &v)| (n as i64 - 1) * v).sum();
    Ok((e1, e2))
}

/// Per-n residuals of `v(n) = e0 - Δ²ℓ(R/F_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HmReport {
    pub residuals: Vec<(usize, i64)>,
}

impl HmReport {
    pub fn ok(&self) -> bool {
        self.residuals.iter().all(|r| r.1 == 0)
    }
}

pub fn verify_hm_identities(table: &HilbertTable, v: &FiltrationTable, e0: i64) -> HmReport {
    let n_max = table.n_max().min(v.n_max());
    let residuals = (1..=n_max)
        .map(|n| (n, v.v[n] - (e0 - table.delta2(n as i64))))
        .collect();
    HmReport { residuals }
}
