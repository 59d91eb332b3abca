//! Ideals of a quotient ring, represented by preimage generators in the
//! polynomial ring; every ideal implicitly contains the ring relations.
//!
//! The reduced Gröbner basis of the preimage is computed lazily and then
//! frozen, so handles can be shared across threads.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::log_base;
use crate::groebner::{self, GroebnerBasis};
use crate::linalg::{self, Accumulator, Echelon, QuotientBasis, SparseVec};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::Polynomial;
use crate::ring::QuotientRing;

#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Arc<QuotientRing>,
    gens: Vec<Polynomial>,
    gb: OnceLock<Arc<GroebnerBasis>>,
}

/// True when `g = u * h` for a monomial `u` (both monic).
fn is_term_multiple(g: &Polynomial, h: &Polynomial) -> bool {
    if g.len() != h.len() {
        return false;
    }
    let (lg, lh) = (g.lead().unwrap().1, h.lead().unwrap().1);
    let Some(u) = lg.checked_div(&lh) else {
        return false;
    };
    g.terms().iter().zip(h.terms()).all(|(a, b)| a.0 == b.0 && b.1.mul(&u) == a.1)
}

/// Monic, deduplicated generators with term multiples of other generators
/// and elements of the relation ideal removed.
fn tidy_generators(ring: &QuotientRing, gens: Vec<Polynomial>) -> Vec<Polynomial> {
    let pr = ring.poly_ring();
    let mut out: Vec<Polynomial> = Vec::with_capacity(gens.len());
    let mut sorted: Vec<Polynomial> = gens
        .into_iter()
        .filter(|g| !g.is_zero())
        .map(|g| pr.make_monic(&g))
        .collect();
    if sorted.iter().any(|g| g.lead().unwrap().1.is_one()) {
        return vec![pr.one()];
    }
    sorted.sort_by(|a, b| pr.cmp(&a.lead().unwrap().1, &b.lead().unwrap().1).then(a.len().cmp(&b.len())));
    sorted.dedup();
    let rel = ring.relations_gb();
    for g in sorted {
        if !rel.is_zero_ideal() && rel.contains(&g) {
            continue;
        }
        if out.iter().any(|h| is_term_multiple(&g, h)) {
            continue;
        }
        out.push(g);
    }
    out
}

impl Ideal {
    pub fn new(ring: &Arc<QuotientRing>, gens: Vec<Polynomial>) -> Self {
        Ideal {
            gens: tidy_generators(ring, gens),
            ring: Arc::clone(ring),
            gb: OnceLock::new(),
        }
    }

    fn with_basis(ring: &Arc<QuotientRing>, gens: Vec<Polynomial>, gb: GroebnerBasis) -> Self {
        let cell = OnceLock::new();
        let _ = cell.set(Arc::new(gb));
        Ideal {
            gens: tidy_generators(ring, gens),
            ring: Arc::clone(ring),
            gb: cell,
        }
    }

    pub fn ring(&self) -> &Arc<QuotientRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn format_generators(&self) -> Vec<String> {
        self.gens.iter().map(|g| self.ring.format(g)).collect()
    }

    /// Reduced Gröbner basis of the preimage `generators + Q`.
    pub fn groebner(&self) -> Result<&GroebnerBasis> {
        if let Some(g) = self.gb.get() {
            return Ok(g);
        }
        let mut all = self.gens.clone();
        all.extend(self.ring.relations_gb().generators().iter().cloned());
        let gb = groebner::buchberger_capped(self.ring.poly_ring(), &all, self.ring.degree_cap())?;
        // racing threads compute identical bases; the first one is kept
        let _ = self.gb.set(Arc::new(gb));
        Ok(self.gb.get().expect("just set"))
    }

    fn check_ring(&self, other: &Ideal) -> Result<()> {
        if !self.ring.same_ring(&other.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(|g| g.is_homogeneous())
    }

    pub fn is_unit(&self) -> Result<bool> {
        Ok(self.groebner()?.is_unit_ideal())
    }

    /// True when the ideal is zero in `R`.
    pub fn is_zero(&self) -> Result<bool> {
        let rel = self.ring.relations_gb();
        Ok(self.gens.iter().all(|g| rel.contains(g)))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.groebner()?.contains(f))
    }

    pub fn is_subset_of(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        let gb = other.groebner()?;
        Ok(self.gens.iter().all(|g| gb.contains(g)))
    }

    pub fn equals(&self, other: &Ideal) -> Result<bool> {
        self.check_ring(other)?;
        Ok(self.groebner()?.generators() == other.groebner()?.generators())
    }

    pub fn sum(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ok(Ideal::new(&self.ring, gens))
    }

    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let pr = self.ring.poly_ring();
        let cap = self.ring.degree_cap();
        let mut gens = Vec::with_capacity(self.gens.len() * other.gens.len());
        for f in &self.gens {
            for g in &other.gens {
                let d = f.total_degree() + g.total_degree();
                if d > cap {
                    return Err(Error::DegreeCap {
                        cap,
                        degree: d,
                        context: "ideal product".into(),
                    });
                }
                gens.push(pr.mul(f, g));
            }
        }
        Ok(Ideal::new(&self.ring, gens))
    }

    /// `I^n`; non-positive powers are the unit ideal.
    pub fn power(&self, n: i64) -> Result<Ideal> {
        if n <= 0 {
            return Ok(self.ring.unit_ideal());
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.product(self)?;
        }
        Ok(acc)
    }

    /// `I^[q] = (g^q : g a generator)`, `q` a power of the characteristic.
    pub fn frobenius_power(&self, q: u64) -> Result<Ideal> {
        let p = self.ring.characteristic();
        if log_base(q, p as u64).is_none() {
            return Err(Error::NotPowerOfCharacteristic { q, p });
        }
        let pr = self.ring.poly_ring();
        let cap = self.ring.degree_cap();
        let gens = self
            .gens
            .iter()
            .map(|g| {
                let d = g.total_degree() as u64 * q;
                if d > cap as u64 {
                    return Err(Error::DegreeCap {
                        cap,
                        degree: d.min(u32::MAX as u64) as u32,
                        context: format!("Frobenius power q = {q}"),
                    });
                }
                pr.frobenius(g, q as u32)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(&self.ring, gens))
    }

    /// `I ∩ J` by eliminating `t` from `t*I' + (1-t)*J'`.
    pub fn intersection(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        if self.is_unit()? {
            return Ok(other.clone());
        }
        if other.is_unit()? {
            return Ok(self.clone());
        }
        let a = self.groebner()?.generators().to_vec();
        let b = other.groebner()?.generators().to_vec();
        let gens = eliminate_intersection(&self.ring, &a, &b)?;
        Ok(Ideal::new(&self.ring, gens))
    }

    /// `(I : J) = {r : rJ ⊆ I}`.
    pub fn colon(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        if groebner::is_zero_dimensional(self.groebner()?) {
            return colon_artinian(self, other, self);
        }
        self.colon_by_elimination(other)
    }

    /// `(I : J)` given an ideal `lower` already known to satisfy
    /// `lower ⊆ (I : J)`; the search space shrinks to `R/lower`.
    pub fn colon_with_lower(&self, other: &Ideal, lower: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        self.check_ring(lower)?;
        if !groebner::is_zero_dimensional(self.groebner()?) {
            return self.colon_by_elimination(other);
        }
        colon_artinian(self, other, lower)
    }

    /// Colon through intersections with principal ideals and exact division.
    pub fn colon_by_elimination(&self, other: &Ideal) -> Result<Ideal> {
        self.check_ring(other)?;
        let pr = self.ring.poly_ring();
        let gb = self.groebner()?;
        let mut acc: Option<Ideal> = None;
        for f in &other.gens {
            if gb.contains(f) {
                continue;
            }
            let inter = eliminate_intersection(&self.ring, gb.generators(), std::slice::from_ref(f))?;
            let quotients = inter
                .iter()
                .map(|h| {
                    pr.exact_div(h, f)
                        .ok_or_else(|| Error::InvalidArgument("inexact division in colon".into()))
                })
                .collect::<Result<Vec<_>>>()?;
            let single = Ideal::new(&self.ring, quotients);
            acc = Some(match acc {
                None => single,
                Some(prev) => prev.intersection(&single)?,
            });
        }
        Ok(acc.unwrap_or_else(|| self.ring.unit_ideal()))
    }

    /// `ℓ(R/I)` as the number of standard monomials. For inputs that are
    /// not homogeneous the quotient must also be supported at the origin,
    /// so that the count is the local length at `m`.
    pub fn colength(&self) -> Result<u64> {
        let gb = self.groebner()?;
        let len = groebner::standard_monomial_count(gb).ok_or(Error::NotArtinian)?;
        if !(self.ring.relations_homogeneous() && self.is_homogeneous()) {
            self.check_support_at_origin(len)?;
        }
        Ok(len)
    }

    /// Every variable is nilpotent modulo `I`: `x_i^L ∈ I` with `L = ℓ(R/I)`.
    /// Equivalent to `ℓ(R/(I + m^{L+1})) = L`.
    fn check_support_at_origin(&self, len: u64) -> Result<()> {
        if len == 0 {
            return Ok(());
        }
        let gb = self.groebner()?;
        let pr = self.ring.poly_ring();
        for i in 0..self.ring.nvars() {
            let mut base = gb.normal_form(&pr.var(i));
            let mut acc = pr.one();
            let mut k = len;
            while k > 0 {
                if k & 1 == 1 {
                    acc = gb.normal_form(&pr.mul(&acc, &base));
                }
                k >>= 1;
                if k > 0 {
                    base = gb.normal_form(&pr.mul(&base, &base));
                }
            }
            if !acc.is_zero() {
                return Err(Error::SupportNotAtOrigin(format!(
                    "variable {} is not nilpotent modulo the ideal",
                    pr.var_names()[i]
                )));
            }
        }
        Ok(())
    }

    /// Artinian and supported at the origin.
    pub fn is_m_primary(&self) -> Result<bool> {
        match self.colength() {
            Ok(l) => Ok(l > 0),
            Err(Error::NotArtinian) | Err(Error::SupportNotAtOrigin(_)) => Ok(false),
            Err(e) => Err(e),
        }
    }
}

/// Generators of `A ∩ B` in the polynomial ring.
fn eliminate_intersection(ring: &QuotientRing, a: &[Polynomial], b: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let pr = ring.poly_ring();
    let ext = pr.extended(&["_t"], MonomialOrder::Block(1))?;
    let t = ext.var(0);
    let one_minus_t = ext.sub(&ext.one(), &t);
    let mut gens = Vec::with_capacity(a.len() + b.len());
    for f in a {
        gens.push(ext.mul(&t, &pr.embed_up(f, &ext, 1)));
    }
    for f in b {
        gens.push(ext.mul(&one_minus_t, &pr.embed_up(f, &ext, 1)));
    }
    let gb = groebner::buchberger_capped(&ext, &gens, ring.degree_cap())?;
    Ok(gb
        .generators()
        .iter()
        .filter(|g| g.terms().iter().all(|t| t.1.exponent(0) == 0))
        .map(|g| ext.embed_down(g, pr, 1))
        .collect())
}

/// Colon of an Artinian ideal by linear algebra: `(A : B) = C + V` where `V`
/// is the subspace of `span(standard monomials of C)` killed into `A` by
/// every generator of `B`. Returns the reduced basis directly.
fn colon_artinian(a: &Ideal, b: &Ideal, c: &Ideal) -> Result<Ideal> {
    let ring = &a.ring;
    let pr = ring.poly_ring();
    let field = pr.field();
    let gb_a = a.groebner()?;
    let gb_c = c.groebner()?;
    let mut qa = QuotientBasis::new(gb_a).ok_or(Error::NotArtinian)?;
    let qc = QuotientBasis::new(gb_c).ok_or(Error::NotArtinian)?;
    let standard_c: Vec<Monomial> = qc.standard().to_vec();

    let mut kernel: Vec<SparseVec> = (0..standard_c.len() as u32).map(|i| vec![(i, 1)]).collect();
    let mut acc = Accumulator::new(qa.dim());
    for f in &b.gens {
        if kernel.is_empty() {
            break;
        }
        if gb_a.contains(f) {
            continue;
        }
        let mut ech = Echelon::new(field);
        let mut next = Vec::new();
        for k in kernel {
            for &(i, coef) in &k {
                qa.add_product_nf(&mut acc, coef, &standard_c[i as usize], f);
            }
            let image = acc.take();
            if let Some(comp) = ech.insert(image, k) {
                next.push(comp);
            }
        }
        kernel = next;
    }

    let rows = linalg::rref(&field, kernel);
    let pivots: Vec<Monomial> = rows.iter().map(|r| standard_c[r[0].0 as usize]).collect();
    let pivot_index: std::collections::HashMap<u32, usize> =
        rows.iter().enumerate().map(|(k, r)| (r[0].0, k)).collect();
    let mut basis = Vec::new();
    let mut new_gens = Vec::new();
    for (k, r) in rows.iter().enumerate() {
        let pm = pivots[k];
        let minimal = !pivots.iter().enumerate().any(|(j, q)| j != k && q.divides(&pm) && *q != pm);
        if minimal {
            let poly = qc.to_polynomial(r);
            basis.push(poly.clone());
            new_gens.push(poly);
        }
    }
    for g in gb_c.generators() {
        let (lc, lm) = *g.lead().unwrap();
        if pivots.iter().any(|q| q.divides(&lm)) {
            continue;
        }
        let mut tail: SparseVec = g.terms()[1..]
            .iter()
            .map(|&(coef, m)| (qc.index_of(&m).expect("reduced tail is standard"), coef))
            .collect();
        tail.sort_unstable_by_key(|t| t.0);
        let hits: Vec<(u32, u32)> = tail.iter().filter(|t| pivot_index.contains_key(&t.0)).copied().collect();
        for (idx, _) in hits {
            let coef = tail.iter().find(|t| t.0 == idx).map_or(0, |t| t.1);
            if coef != 0 {
                tail = linalg::axpy(&field, &tail, field.neg(coef), &rows[pivot_index[&idx]]);
            }
        }
        let mut terms = vec![(lc, lm)];
        terms.extend(qc.to_polynomial(&tail).terms().iter().copied());
        basis.push(Polynomial::from_sorted_terms(terms));
    }
    let gb = GroebnerBasis::from_reduced_unchecked(pr.clone(), basis);
    let mut gens = c.gens.clone();
    gens.extend(new_gens);
    Ok(Ideal::with_basis(ring, gens, gb))
}

pub fn ideal_sum(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.sum(j)
}

pub fn ideal_product(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.product(j)
}

pub fn ideal_power(i: &Ideal, n: i64) -> Result<Ideal> {
    i.power(n)
}

pub fn frobenius_power(i: &Ideal, q: u64) -> Result<Ideal> {
    i.frobenius_power(q)
}

pub fn ideal_colon(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.colon(j)
}

pub fn ideal_intersection(i: &Ideal, j: &Ideal) -> Result<Ideal> {
    i.intersection(j)
}

pub fn ideal_equals(i: &Ideal, j: &Ideal) -> Result<bool> {
    i.equals(j)
}

pub fn colength(i: &Ideal) -> Result<u64> {
    i.colength()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plane(p: u64) -> Arc<QuotientRing> {
        QuotientRing::new(p, &["x", "y"], &[]).unwrap()
    }

    fn fermat2() -> Arc<QuotientRing> {
        QuotientRing::new(2, &["x", "y", "z"], &["x^3+y^3+z^3"]).unwrap()
    }

    #[test]
    fn sums() {
        let r = plane(7);
        let i = r.ideal(&["x^2", "x*y"]).unwrap();
        assert!(i.sum(&r.zero_ideal()).unwrap().equals(&i).unwrap());
        let xy = r.ideal(&["x"]).unwrap().sum(&r.ideal(&["y"]).unwrap()).unwrap();
        assert!(xy.equals(&r.ideal(&["x", "y"]).unwrap()).unwrap());
        let s = r.ideal(&["x^2"]).unwrap().sum(&r.ideal(&["x"]).unwrap()).unwrap();
        assert!(s.equals(&r.ideal(&["x"]).unwrap()).unwrap());
    }

    #[test]
    fn products_and_powers() {
        let r = plane(7);
        let m = r.maximal_ideal();
        assert!(m.product(&r.unit_ideal()).unwrap().equals(&m).unwrap());
        let m2 = r.ideal(&["x^2", "x*y", "y^2"]).unwrap();
        assert!(m.product(&m).unwrap().equals(&m2).unwrap());
        assert!(m.power(2).unwrap().equals(&m2).unwrap());
        assert!(m.power(0).unwrap().is_unit().unwrap());
        assert!(m.power(-3).unwrap().is_unit().unwrap());

        let f = fermat2();
        let m8 = f.maximal_ideal().frobenius_power(8).unwrap();
        let sq = m8.product(&m8).unwrap();
        let expected = f
            .ideal(&["x^16", "y^16", "z^16", "x^8*y^8", "x^8*z^8", "y^8*z^8"])
            .unwrap();
        assert!(sq.equals(&expected).unwrap());
        assert_eq!(sq.generators().len(), 6);
    }

    #[test]
    fn frobenius_examples() {
        let r = plane(2);
        let m4 = r.maximal_ideal().frobenius_power(4).unwrap();
        assert!(m4.equals(&r.ideal(&["x^4", "y^4"]).unwrap()).unwrap());
        let f = r.ideal(&["x+y"]).unwrap().frobenius_power(2).unwrap();
        assert_eq!(f.format_generators(), vec!["x^2+y^2".to_string()]);
        assert!(matches!(
            r.maximal_ideal().frobenius_power(6),
            Err(Error::NotPowerOfCharacteristic { q: 6, p: 2 })
        ));
    }

    #[test]
    fn colons() {
        let r = plane(7);
        let i = r.ideal(&["x^3", "x*y^2", "y^5"]).unwrap();
        assert!(i.colon(&r.unit_ideal()).unwrap().equals(&i).unwrap());
        let c = r.ideal(&["x^2"]).unwrap().colon(&r.ideal(&["x"]).unwrap()).unwrap();
        assert!(c.equals(&r.ideal(&["x"]).unwrap()).unwrap());

        let remark = QuotientRing::new(2, &["x", "y"], &[]).unwrap();
        let i = remark.ideal(&["x^4", "x^3*y", "x*y^3", "y^4"]).unwrap();
        let i2 = i.power(2).unwrap();
        let k = i2.colon(&i).unwrap();
        let x2y2 = remark.parse("x^2*y^2").unwrap();
        assert!(k.contains(&x2y2).unwrap());
        assert!(!i.contains(&x2y2).unwrap());
    }

    #[test]
    fn colon_routes_agree() {
        let r = plane(7);
        let a = r.ideal(&["x^4+x*y^2", "x^2*y^2", "y^5+3x^3"]).unwrap();
        let b = r.ideal(&["x^2+y", "x*y"]).unwrap();
        let fast = a.colon(&b).unwrap();
        let slow = a.colon_by_elimination(&b).unwrap();
        assert!(fast.equals(&slow).unwrap());
        let f = fermat2();
        let m2 = f.maximal_ideal().frobenius_power(2).unwrap();
        let a = m2.power(2).unwrap();
        let fast = a.colon(&m2).unwrap();
        let slow = a.colon_by_elimination(&m2).unwrap();
        assert!(fast.equals(&slow).unwrap());
    }

    #[test]
    fn intersections() {
        let r = plane(7);
        let i = r.ideal(&["x^2", "y"]).unwrap();
        assert!(i.intersection(&r.unit_ideal()).unwrap().equals(&i).unwrap());
        let xy = r.ideal(&["x"]).unwrap().intersection(&r.ideal(&["y"]).unwrap()).unwrap();
        assert!(xy.equals(&r.ideal(&["x*y"]).unwrap()).unwrap());
        let k = i.intersection(&r.ideal(&["x"]).unwrap()).unwrap();
        let expected = r.ideal(&["x^2", "x*y"]).unwrap();
        // membership both ways
        assert!(k.is_subset_of(&expected).unwrap() && expected.is_subset_of(&k).unwrap());
    }

    #[test]
    fn equality_and_membership() {
        let r = plane(7);
        let a = r.ideal(&["x", "y"]).unwrap();
        assert!(a.equals(&a).unwrap());
        assert!(a.equals(&r.ideal(&["x+y", "y"]).unwrap()).unwrap());
        let other = QuotientRing::new(5, &["x", "y"], &[]).unwrap();
        assert!(matches!(a.equals(&other.maximal_ideal()), Err(Error::RingMismatch)));
    }

    #[test]
    fn colength_examples() {
        let f = fermat2();
        assert_eq!(f.maximal_ideal().colength().unwrap(), 1);
        assert_eq!(f.maximal_ideal().frobenius_power(2).unwrap().colength().unwrap(), 8);
        let r = plane(2);
        let i = r.ideal(&["x^4", "x^3*y", "x*y^3", "y^4"]).unwrap();
        assert_eq!(i.colength().unwrap(), 11);
        assert!(matches!(r.ideal(&["x"]).unwrap().colength(), Err(Error::NotArtinian)));
    }

    #[test]
    fn support_away_from_origin_is_rejected() {
        let r = plane(7);
        // V(I) = {(0,0), (1,0)}
        let i = r.ideal(&["x^2-x", "y"]).unwrap();
        assert!(matches!(i.colength(), Err(Error::SupportNotAtOrigin(_))));
        let j = r.ideal(&["x^2+x^3", "y^2"]).unwrap();
        assert!(matches!(j.colength(), Err(Error::SupportNotAtOrigin(_))));
        let k = r.ideal(&["x^2+y^3", "y^2+x^3"]).unwrap();
        assert!(k.colength().is_err());
        let ok = r.ideal(&["x^2+y^3", "y^2"]).unwrap();
        assert_eq!(ok.colength().unwrap(), 4);
    }
}
