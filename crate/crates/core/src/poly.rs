//! Sparse multivariate polynomials over `F_p`.
//!
//! A [`Polynomial`] is a term list kept strictly descending under the order
//! of the [`PolyRing`] that created it; arithmetic goes through the ring.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::PrimeField;
use crate::monomial::{Monomial, MonomialOrder, MAX_VARS};

pub type Term = (u32, Monomial);

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    terms: Vec<Term>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn lead_monomial(&self) -> Option<Monomial> {
        self.terms.first().map(|t| t.1)
    }

    pub fn lead_coeff(&self) -> u32 {
        self.terms.first().map_or(0, |t| t.0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|t| t.1.degree()).max().unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(&(_, m)) => self.terms.iter().all(|t| t.1.degree() == m.degree()),
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Builds a polynomial from terms already sorted strictly descending with
    /// nonzero coefficients.
    pub(crate) fn from_sorted_terms(terms: Vec<Term>) -> Self {
        Polynomial { terms }
    }

    pub(crate) fn into_terms(self) -> Vec<Term> {
        self.terms
    }
}

/// `F_p[x_1..x_n]` with a fixed monomial order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing {
    field: PrimeField,
    vars: Vec<String>,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new(field: PrimeField, vars: Vec<String>, order: MonomialOrder) -> Result<Self> {
        if vars.len() > MAX_VARS {
            return Err(Error::TooManyVariables {
                got: vars.len(),
                max: MAX_VARS,
            });
        }
        Ok(PolyRing { field, vars, order })
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b)
    }

    pub fn one_monomial(&self) -> Monomial {
        Monomial::one(self.nvars())
    }

    pub fn constant(&self, c: i64) -> Polynomial {
        let c = self.field.reduce_i64(c);
        if c == 0 {
            Polynomial::zero()
        } else {
            Polynomial::from_sorted_terms(vec![(c, self.one_monomial())])
        }
    }

    pub fn one(&self) -> Polynomial {
        self.constant(1)
    }

    pub fn var(&self, i: usize) -> Polynomial {
        Polynomial::from_sorted_terms(vec![(1, Monomial::var(self.nvars(), i))])
    }

    pub fn monomial(&self, m: Monomial) -> Polynomial {
        debug_assert_eq!(m.nvars(), self.nvars());
        Polynomial::from_sorted_terms(vec![(1, m)])
    }

    pub fn term(&self, c: u32, m: Monomial) -> Polynomial {
        if c % self.field.characteristic() == 0 {
            Polynomial::zero()
        } else {
            Polynomial::from_sorted_terms(vec![(c % self.field.characteristic(), m)])
        }
    }

    /// Sorts and combines an arbitrary term list.
    pub fn from_terms(&self, terms: impl IntoIterator<Item = Term>) -> Polynomial {
        let mut acc: HashMap<Monomial, u32> = HashMap::new();
        let p = self.field.characteristic();
        for (c, m) in terms {
            debug_assert_eq!(m.nvars(), self.nvars());
            let e = acc.entry(m).or_insert(0);
            *e = self.field.add(*e, c % p);
        }
        self.collect_map(acc)
    }

    fn collect_map(&self, acc: HashMap<Monomial, u32>) -> Polynomial {
        let mut terms: Vec<Term> = acc.into_iter().filter(|t| t.1 != 0).map(|(m, c)| (c, m)).collect();
        terms.sort_unstable_by(|a, b| self.cmp(&b.1, &a.1));
        Polynomial::from_sorted_terms(terms)
    }

    /// Re-sorts a polynomial whose terms come from another order.
    pub fn normalize(&self, f: Polynomial) -> Polynomial {
        let mut terms = f.into_terms();
        terms.sort_unstable_by(|a, b| self.cmp(&b.1, &a.1));
        Polynomial::from_sorted_terms(terms)
    }

    pub fn add(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        self.add_scaled(f, 1, &self.one_monomial(), g)
    }

    pub fn sub(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        let minus_one = self.field.neg(1);
        self.add_scaled(f, minus_one, &self.one_monomial(), g)
    }

    pub fn neg(&self, f: &Polynomial) -> Polynomial {
        self.scale(f, self.field.neg(1))
    }

    pub fn scale(&self, f: &Polynomial, c: u32) -> Polynomial {
        if c == 0 {
            return Polynomial::zero();
        }
        Polynomial::from_sorted_terms(
            f.terms.iter().map(|&(a, m)| (self.field.mul(a, c), m)).collect(),
        )
    }

    /// `c * m * f`.
    pub fn mul_term(&self, f: &Polynomial, c: u32, m: &Monomial) -> Polynomial {
        if c == 0 {
            return Polynomial::zero();
        }
        Polynomial::from_sorted_terms(
            f.terms.iter().map(|&(a, t)| (self.field.mul(a, c), t.mul(m))).collect(),
        )
    }

    /// `f + c * m * g` by a single merge pass.
    pub fn add_scaled(&self, f: &Polynomial, c: u32, m: &Monomial, g: &Polynomial) -> Polynomial {
        if c == 0 || g.is_zero() {
            return f.clone();
        }
        let mut out = Vec::with_capacity(f.len() + g.len());
        let (mut i, mut j) = (0, 0);
        let ft = &f.terms;
        let gt = &g.terms;
        while i < ft.len() && j < gt.len() {
            let gm = gt[j].1.mul(m);
            match self.cmp(&ft[i].1, &gm) {
                Ordering::Greater => {
                    out.push(ft[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push((self.field.mul(gt[j].0, c), gm));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = self.field.add(ft[i].0, self.field.mul(gt[j].0, c));
                    if s != 0 {
                        out.push((s, gm));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&ft[i..]);
        for &(a, t) in &gt[j..] {
            out.push((self.field.mul(a, c), t.mul(m)));
        }
        Polynomial::from_sorted_terms(out)
    }

    pub fn mul(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        if f.is_zero() || g.is_zero() {
            return Polynomial::zero();
        }
        if f.len() == 1 {
            return self.mul_term(g, f.terms[0].0, &f.terms[0].1);
        }
        if g.len() == 1 {
            return self.mul_term(f, g.terms[0].0, &g.terms[0].1);
        }
        let mut acc: HashMap<Monomial, u32> = HashMap::with_capacity(f.len() * g.len());
        for &(a, m) in &f.terms {
            for &(b, n) in &g.terms {
                let e = acc.entry(m.mul(&n)).or_insert(0);
                *e = self.field.add(*e, self.field.mul(a, b));
            }
        }
        self.collect_map(acc)
    }

    pub fn pow(&self, f: &Polynomial, mut k: u64) -> Polynomial {
        let mut acc = self.one();
        let mut base = f.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// `f^q` for `q` a power of the characteristic: `(sum c m)^q = sum c m^q`
    /// because Frobenius is additive and fixes `F_p`.
    pub fn frobenius(&self, f: &Polynomial, q: u32) -> Result<Polynomial> {
        let terms = f
            .terms
            .iter()
            .map(|&(c, m)| m.checked_pow(q).map(|mq| (c, mq)).ok_or(Error::ExponentOverflow))
            .collect::<Result<Vec<_>>>()?;
        // m -> m^q preserves every admissible order
        Ok(Polynomial::from_sorted_terms(terms))
    }

    pub fn make_monic(&self, f: &Polynomial) -> Polynomial {
        match f.lead() {
            None => Polynomial::zero(),
            Some(&(1, _)) => f.clone(),
            Some(&(c, _)) => {
                let inv = self.field.inv(c).expect("nonzero leading coefficient");
                self.scale(f, inv)
            }
        }
    }

    /// Exact division `f / g`; `None` when `g` does not divide `f`.
    pub fn exact_div(&self, f: &Polynomial, g: &Polynomial) -> Option<Polynomial> {
        let (gc, gm) = *g.lead()?;
        let ginv = self.field.inv(gc).ok()?;
        let mut rem = f.clone();
        let mut quot = Vec::new();
        while let Some(&(c, m)) = rem.lead() {
            let u = m.checked_div(&gm)?;
            let k = self.field.mul(c, ginv);
            quot.push((k, u));
            rem = self.add_scaled(&rem, self.field.neg(k), &u, g);
        }
        Some(Polynomial::from_sorted_terms(quot))
    }

    /// Embeds into a ring with `k` extra leading variables.
    pub fn embed_up(&self, f: &Polynomial, target: &PolyRing, k: usize) -> Polynomial {
        debug_assert_eq!(target.nvars(), self.nvars() + k);
        target.normalize(Polynomial::from_sorted_terms(
            f.terms.iter().map(|&(c, m)| (c, m.shift_up(k))).collect(),
        ))
    }

    /// Drops `k` leading variables that do not occur in `f`.
    pub fn embed_down(&self, f: &Polynomial, target: &PolyRing, k: usize) -> Polynomial {
        debug_assert_eq!(target.nvars() + k, self.nvars());
        target.normalize(Polynomial::from_sorted_terms(
            f.terms.iter().map(|&(c, m)| (c, m.shift_down(k))).collect(),
        ))
    }

    /// Same variables and field, different order.
    pub fn with_order(&self, order: MonomialOrder) -> PolyRing {
        PolyRing {
            field: self.field,
            vars: self.vars.clone(),
            order,
        }
    }

    /// Same field and order, `k` fresh leading variables.
    pub fn extended(&self, names: &[&str], order: MonomialOrder) -> Result<PolyRing> {
        let mut vars: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        vars.extend(self.vars.iter().cloned());
        PolyRing::new(self.field, vars, order)
    }
}
