//! Named membership and equality facts for the char-2 Fermat cubic and
//! the Ratliff–Rush example in the plane.

use serde::Serialize;

use super::reduction::verify_reduction;
use super::rr::{ratliff_rush_closure, rr_filtration_with_reduction, DEFAULT_RR_CAP};
use crate::error::{Error, Result};
use crate::ideal::Ideal;
use crate::ring::QuotientRing;
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl FactCheck {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        FactCheck {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

fn is_fermat_char2(ring: &QuotientRing) -> bool {
    ring.characteristic() == 2
        && ring.nvars() == 3
        && ring.relations().len() == 1
        && ring.format(&ring.relations()[0]) == "x^3+y^3+z^3"
}

/// Ring `F_2[x,y,z]/(x^3+y^3+z^3)`.
pub fn fermat_char2() -> Result<Arc<QuotientRing>> {
    QuotientRing::new(2, &["x", "y", "z"], &["x^3+y^3+z^3"])
}

/// `x²y⁴z¹³ ∈ (m^[8])⁴ : (m^[8])²` and `∉ (m^[8])²`.
pub fn fermat_membership(ring: &Arc<QuotientRing>) -> Result<(bool, bool)> {
    let m8 = ring.maximal_ideal().frobenius_power(8)?;
    let w = ring.parse("x^2*y^4*z^13")?;
    let colon = m8.power(4)?.colon(&m8.power(2)?)?;
    Ok((colon.contains(&w)?, m8.power(2)?.contains(&w)?))
}

/// `(m^[q])³ = J^[q] (m^[q])²` for `J = (y, z)`.
pub fn fermat_frobenius_reduction(ring: &Arc<QuotientRing>, q: u64) -> Result<bool> {
    let mq = ring.maximal_ideal().frobenius_power(q)?;
    let jq = ring.ideal(&["y", "z"])?.frobenius_power(q)?;
    mq.power(3)?.equals(&jq.product(&mq.power(2)?)?)
}

/// The char-2 Fermat cubic facts, for a ring file that describes it.
pub fn fermat_char2_suite(ring: &Arc<QuotientRing>, qs: &[u64]) -> Result<Vec<FactCheck>> {
    if !is_fermat_char2(ring) {
        return Err(Error::InvalidArgument(
            "ring is not F_2[x,y,z]/(x^3+y^3+z^3) in variables x, y, z".into(),
        ));
    }
    let mut out = Vec::new();
    let (in_colon, in_square) = fermat_membership(ring)?;
    out.push(FactCheck::new(
        "x^2*y^4*z^13 in (m^[8])^4 : (m^[8])^2",
        in_colon,
        format!("member: {in_colon}"),
    ));
    out.push(FactCheck::new(
        "x^2*y^4*z^13 not in (m^[8])^2",
        !in_square,
        format!("member: {in_square}"),
    ));
    let m = ring.maximal_ideal();
    let j = ring.ideal(&["y", "z"])?;
    let r = match verify_reduction(&m, &j, 6) {
        Ok(d) => Some(d.r),
        Err(Error::NotAReduction { .. }) => None,
        Err(e) => return Err(e),
    };
    out.push(FactCheck::new("r_J(m) = 2 for J = (y,z)", r == Some(2), format!("r = {r:?}")));
    for &q in qs {
        let eq = fermat_frobenius_reduction(ring, q)?;
        out.push(FactCheck::new(
            format!("(m^[{q}])^3 = J^[{q}] (m^[{q}])^2"),
            eq,
            format!("equal: {eq}"),
        ));
    }
    Ok(out)
}

/// For `I = (x⁴, x³y, xy³, y⁴)` in `F_2[x,y]`: `x²y² ∈ Ĩ ∖ I`, `ℓ(R/I) = 11`,
/// and `ℓ(R/RR(I^[q])) < q² ℓ(R/I)`.
pub fn remark_suite(qs: &[u64], confirm: usize) -> Result<Vec<FactCheck>> {
    let ring = QuotientRing::new(2, &["x", "y"], &[])?;
    let i = ring.ideal(&["x^4", "x^3*y", "x*y^3", "y^4"])?;
    let w = ring.parse("x^2*y^2")?;
    let rr = ratliff_rush_closure(&i, confirm)?;
    let mut out = Vec::new();
    let (in_rr, in_i) = (rr.closure.contains(&w)?, i.contains(&w)?);
    out.push(FactCheck::new(
        "x^2*y^2 in RR(I) \\ I",
        in_rr && !in_i,
        format!("in closure: {in_rr}, in I: {in_i}"),
    ));
    let len = i.colength()?;
    out.push(FactCheck::new("l(R/I) = 11", len == 11, format!("l(R/I) = {len}")));
    // J = (x^4, y^4) is a reduction with I^3 = J I^2
    let j = ring.ideal(&["x^4", "y^4"])?;
    let r = verify_reduction(&i, &j, 4)?.r;
    for &q in qs {
        let iq: Ideal = i.frobenius_power(q)?;
        let jq = j.frobenius_power(q)?;
        let (f, _) = rr_filtration_with_reduction(&iq, &jq, r, 1, r + 8, confirm, DEFAULT_RR_CAP)?;
        let l = f.ideals[1].colength()?;
        let bound = q * q * len;
        out.push(FactCheck::new(
            format!("l(R/RR(I^[{q}])) < {q}^2 l(R/I)"),
            l < bound,
            format!("{l} vs {bound}"),
        ));
    }
    Ok(out)
}
