//! Quotient rings `F_p[x_1..x_n] / Q`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::groebner::{self, GroebnerBasis, DEFAULT_DEGREE_CAP};
use crate::ideal::Ideal;
use crate::monomial::{MonomialOrder, MAX_VARS};
use crate::parse::{format_polynomial, parse_polynomial};
use crate::poly::{PolyRing, Polynomial};

/// `R = k[x_1..x_n]/Q` with its Krull dimension. The local ring of the
/// theory is modeled by `R` with maximal ideal `m = (x_1..x_n)`.
#[derive(Debug)]
pub struct QuotientRing {
    poly: PolyRing,
    relations: Vec<Polynomial>,
    relations_gb: GroebnerBasis,
    dimension: usize,
    degree_cap: u32,
    homogeneous: bool,
}

impl QuotientRing {
    pub fn new(characteristic: u64, vars: &[&str], relations: &[&str]) -> Result<Arc<Self>> {
        Self::with_degree_cap(characteristic, vars, relations, DEFAULT_DEGREE_CAP)
    }

    pub fn with_degree_cap(
        characteristic: u64,
        vars: &[&str],
        relations: &[&str],
        degree_cap: u32,
    ) -> Result<Arc<Self>> {
        let field = PrimeField::new(characteristic)?;
        // one slot is reserved for the elimination variable
        if vars.len() >= MAX_VARS {
            return Err(Error::TooManyVariables {
                got: vars.len(),
                max: MAX_VARS - 1,
            });
        }
        if vars.is_empty() {
            return Err(Error::InvalidArgument("ring needs at least one variable".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            let ok = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::InvalidArgument(format!("bad variable name `{v}`")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidArgument(format!("duplicate variable `{v}`")));
            }
        }
        if degree_cap == 0 || degree_cap > u16::MAX as u32 / 2 {
            return Err(Error::InvalidArgument(format!(
                "degree cap must lie in 1..={}",
                u16::MAX / 2
            )));
        }
        let poly = PolyRing::new(
            field,
            vars.iter().map(|s| s.to_string()).collect(),
            MonomialOrder::Grevlex,
        )?;
        let relations = relations
            .iter()
            .map(|s| parse_polynomial(s, &poly))
            .collect::<Result<Vec<_>>>()?;
        Self::from_polynomials(poly, relations, degree_cap)
    }

    pub fn from_polynomials(poly: PolyRing, relations: Vec<Polynomial>, degree_cap: u32) -> Result<Arc<Self>> {
        let relations: Vec<Polynomial> = relations.into_iter().filter(|f| !f.is_zero()).collect();
        let relations_gb = groebner::buchberger_capped(&poly, &relations, degree_cap)?;
        let dimension = groebner::krull_dimension(&relations_gb);
        let homogeneous = relations.iter().all(|f| f.is_homogeneous());
        Ok(Arc::new(QuotientRing {
            poly,
            relations,
            relations_gb,
            dimension,
            degree_cap,
            homogeneous,
        }))
    }

    pub fn poly_ring(&self) -> &PolyRing {
        &self.poly
    }

    pub fn characteristic(&self) -> u32 {
        self.poly.field().characteristic()
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    pub fn relations_gb(&self) -> &GroebnerBasis {
        &self.relations_gb
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    pub fn relations_homogeneous(&self) -> bool {
        self.homogeneous
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.relations.is_empty()
    }

    pub fn require_dimension_two(&self) -> Result<()> {
        if self.dimension != 2 {
            return Err(Error::DimensionNotTwo(self.dimension));
        }
        Ok(())
    }

    pub fn parse(&self, text: &str) -> Result<Polynomial> {
        parse_polynomial(text, &self.poly)
    }

    pub fn format(&self, f: &Polynomial) -> String {
        format_polynomial(f, &self.poly)
    }

    pub fn same_ring(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || (self.poly == other.poly && self.relations == other.relations)
    }

    /// The ideal generated by the given polynomial strings.
    pub fn ideal(self: &Arc<Self>, gens: &[&str]) -> Result<Ideal> {
        let gens = gens.iter().map(|s| self.parse(s)).collect::<Result<Vec<_>>>()?;
        Ok(Ideal::new(self, gens))
    }

    /// The homogeneous maximal ideal `m = (x_1..x_n)`.
    pub fn maximal_ideal(self: &Arc<Self>) -> Ideal {
        let gens = (0..self.nvars()).map(|i| self.poly.var(i)).collect();
        Ideal::new(self, gens)
    }

    pub fn unit_ideal(self: &Arc<Self>) -> Ideal {
        Ideal::new(self, vec![self.poly.one()])
    }

    pub fn zero_ideal(self: &Arc<Self>) -> Ideal {
        Ideal::new(self, Vec::new())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fermat_cubic_is_two_dimensional() {
        let r = QuotientRing::new(2, &["x", "y", "z"], &["x^3+y^3+z^3"]).unwrap();
        assert_eq!(r.dimension(), 2);
        assert!(r.relations_homogeneous());
        let plane = QuotientRing::new(7, &["x", "y"], &[]).unwrap();
        assert_eq!(plane.dimension(), 2);
        assert!(plane.is_polynomial_ring());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(QuotientRing::new(4, &["x"], &[]).is_err());
        assert!(QuotientRing::new(2, &["x", "x"], &[]).is_err());
        assert!(QuotientRing::new(2, &["1x"], &[]).is_err());
        assert!(QuotientRing::new(2, &["x"], &["y"]).is_err());
        assert!(QuotientRing::new(2, &["a", "b", "c", "d", "e", "f", "g", "h"], &[]).is_err());
    }
}
