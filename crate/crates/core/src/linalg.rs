//! Sparse vectors over `F_p` and the normal-form table of an Artinian
//! quotient, used to compute colon ideals by linear algebra.

use std::collections::HashMap;

use crate::field::PrimeField;
use crate::groebner::{self, GroebnerBasis, Reducers};
use crate::monomial::Monomial;
use crate::poly::Polynomial;

/// Sparse vector: `(index, coefficient)` sorted by index, no zeros.
pub type SparseVec = Vec<(u32, u32)>;

/// `a + c * b`.
pub fn axpy(field: &PrimeField, a: &[(u32, u32)], c: u32, b: &[(u32, u32)]) -> SparseVec {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i].0 < b[j].0 {
            out.push(a[i]);
            i += 1;
        } else if a[i].0 > b[j].0 {
            out.push((b[j].0, field.mul(c, b[j].1)));
            j += 1;
        } else {
            let s = field.add(a[i].1, field.mul(c, b[j].1));
            if s != 0 {
                out.push((a[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(b[j..].iter().map(|&(k, v)| (k, field.mul(c, v))));
    out
}

pub fn scale(field: &PrimeField, a: &mut SparseVec, c: u32) {
    for t in a.iter_mut() {
        t.1 = field.mul(t.1, c);
    }
}

/// Dense accumulator for summing many sparse vectors of one dimension.
pub struct Accumulator {
    dense: Vec<u32>,
    touched: Vec<u32>,
}

impl Accumulator {
    pub fn new(dim: usize) -> Self {
        Accumulator {
            dense: vec![0; dim],
            touched: Vec::new(),
        }
    }

    pub fn add_scaled(&mut self, field: &PrimeField, c: u32, v: &[(u32, u32)]) {
        for &(k, x) in v {
            let slot = &mut self.dense[k as usize];
            if *slot == 0 {
                self.touched.push(k);
            }
            *slot = field.add(*slot, field.mul(c, x));
        }
    }

    pub fn take(&mut self) -> SparseVec {
        self.touched.sort_unstable();
        self.touched.dedup();
        let mut out = Vec::with_capacity(self.touched.len());
        for &k in &self.touched {
            let v = std::mem::take(&mut self.dense[k as usize]);
            if v != 0 {
                out.push((k, v));
            }
        }
        self.touched.clear();
        out
    }
}

/// Echelon form with pivot = smallest index; rows monic at the pivot.
/// Each row may carry a companion vector transformed alongside it.
pub struct Echelon {
    field: PrimeField,
    rows: HashMap<u32, (SparseVec, SparseVec)>,
}

impl Echelon {
    pub fn new(field: PrimeField) -> Self {
        Echelon {
            field,
            rows: HashMap::new(),
        }
    }

    /// Reduces `(v, companion)` against the stored rows. If `v` reduces to
    /// zero returns the reduced companion; otherwise stores the row.
    pub fn insert(&mut self, mut v: SparseVec, mut comp: SparseVec) -> Option<SparseVec> {
        let f = self.field;
        loop {
            let Some(&(piv, c)) = v.first() else {
                return Some(comp);
            };
            match self.rows.get(&piv) {
                Some((row, rcomp)) => {
                    let k = f.neg(c);
                    v = axpy(&f, &v, k, row);
                    comp = axpy(&f, &comp, k, rcomp);
                }
                None => {
                    let inv = f.inv(c).expect("nonzero pivot");
                    scale(&f, &mut v, inv);
                    scale(&f, &mut comp, inv);
                    self.rows.insert(piv, (v, comp));
                    return None;
                }
            }
        }
    }
}

/// Reduced row echelon form of a list of vectors (pivot = smallest index),
/// rows returned sorted by pivot.
pub fn rref(field: &PrimeField, vecs: Vec<SparseVec>) -> Vec<SparseVec> {
    let mut ech = Echelon::new(*field);
    for v in vecs {
        ech.insert(v, Vec::new());
    }
    let mut rows: Vec<(u32, SparseVec)> = ech.rows.into_iter().map(|(k, (v, _))| (k, v)).collect();
    rows.sort_unstable_by_key(|r| r.0);
    let pivots: HashMap<u32, usize> = rows.iter().enumerate().map(|(i, r)| (r.0, i)).collect();
    // back-substitution from the largest pivot down
    for i in (0..rows.len()).rev() {
        let mut v = std::mem::take(&mut rows[i].1);
        let mut k = 1;
        while k < v.len() {
            let (idx, c) = v[k];
            match pivots.get(&idx) {
                Some(&j) if j != i => {
                    v = axpy(field, &v, field.neg(c), &rows[j].1);
                }
                _ => k += 1,
            }
        }
        rows[i].1 = v;
    }
    rows.into_iter().map(|r| r.1).collect()
}

/// Normal forms modulo a zero-dimensional reduced Gröbner basis, expressed
/// in the basis of standard monomials (index 0 = largest monomial).
pub struct QuotientBasis<'g> {
    gb: &'g GroebnerBasis,
    red: Reducers<'g>,
    standard: Vec<Monomial>,
    index: HashMap<Monomial, u32>,
    cache: HashMap<Monomial, SparseVec>,
}

impl<'g> QuotientBasis<'g> {
    /// `None` when the quotient is not Artinian.
    pub fn new(gb: &'g GroebnerBasis) -> Option<Self> {
        let standard = groebner::standard_monomials(gb)?;
        let index = standard.iter().enumerate().map(|(i, m)| (*m, i as u32)).collect();
        Some(QuotientBasis {
            gb,
            red: Reducers::new(gb.generators()),
            standard,
            index,
            cache: HashMap::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.standard.len()
    }

    pub fn standard(&self) -> &[Monomial] {
        &self.standard
    }

    pub fn index_of(&self, m: &Monomial) -> Option<u32> {
        self.index.get(m).copied()
    }

    fn compute(&mut self, m: Monomial) {
        let field = self.gb.ring().field();
        let mut stack = vec![m];
        while let Some(&top) = stack.last() {
            if self.cache.contains_key(&top) {
                stack.pop();
                continue;
            }
            let i = self.red.find(&top).expect("non-standard monomial has a reducer");
            let g = &self.gb.generators()[i];
            let u = g.lead().unwrap().1.quotient_of(&top);
            let mut pending = false;
            for &(_, t) in &g.terms()[1..] {
                let tu = t.mul(&u);
                if !self.index.contains_key(&tu) && !self.cache.contains_key(&tu) {
                    stack.push(tu);
                    pending = true;
                }
            }
            if pending {
                continue;
            }
            let mut acc: SparseVec = Vec::new();
            for &(b, t) in &g.terms()[1..] {
                let tu = t.mul(&u);
                let nb = field.neg(b);
                match self.index.get(&tu) {
                    Some(&k) => acc = axpy(&field, &acc, nb, &[(k, 1)]),
                    None => {
                        let v = &self.cache[&tu];
                        acc = axpy(&field, &acc, nb, v);
                    }
                }
            }
            self.cache.insert(top, acc);
            stack.pop();
        }
    }

    /// Normal form of a monomial as a sparse coordinate vector.
    pub fn monomial_nf(&mut self, m: &Monomial) -> SparseVec {
        if let Some(&k) = self.index.get(m) {
            return vec![(k, 1)];
        }
        if !self.cache.contains_key(m) {
            self.compute(*m);
        }
        self.cache[m].clone()
    }

    /// Normal form of `c * m * f`, accumulated into `acc`.
    pub fn add_product_nf(&mut self, acc: &mut Accumulator, c: u32, m: &Monomial, f: &Polynomial) {
        let field = self.gb.ring().field();
        for &(b, t) in f.terms() {
            let tm = t.mul(m);
            let k = field.mul(c, b);
            if let Some(&i) = self.index.get(&tm) {
                acc.add_scaled(&field, k, &[(i, 1)]);
            } else {
                if !self.cache.contains_key(&tm) {
                    self.compute(tm);
                }
                acc.add_scaled(&field, k, &self.cache[&tm]);
            }
        }
    }

    pub fn to_polynomial(&self, v: &[(u32, u32)]) -> Polynomial {
        // indices ascend while monomials descend
        Polynomial::from_sorted_terms(v.iter().map(|&(k, c)| (c, self.standard[k as usize])).collect())
    }

    pub fn coordinates(&mut self, f: &Polynomial) -> SparseVec {
        let mut acc = Accumulator::new(self.dim());
        let one = Monomial::one(self.gb.ring().nvars());
        self.add_product_nf(&mut acc, 1, &one, f);
        acc.take()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::buchberger;
    use crate::monomial::MonomialOrder;
    use crate::parse::parse_polynomial;
    use crate::poly::PolyRing;

    #[test]
    fn rref_is_reduced() {
        let f = PrimeField::new(7).unwrap();
        let rows = rref(&f, vec![vec![(0, 2), (1, 3), (2, 1)], vec![(1, 1), (2, 5)], vec![(0, 2), (2, 6)]]);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r[0].1, 1);
            for (j, s) in rows.iter().enumerate() {
                if i != j {
                    assert!(!s.iter().any(|t| t.0 == r[0].0));
                }
            }
        }
    }

    #[test]
    fn memoized_nf_agrees_with_division() {
        let r = PolyRing::new(
            PrimeField::new(2).unwrap(),
            vec!["x".into(), "y".into(), "z".into()],
            MonomialOrder::Grevlex,
        )
        .unwrap();
        let gens: Vec<_> = ["x^3+y^3+z^3", "x^4", "y^4", "z^4"]
            .iter()
            .map(|s| parse_polynomial(s, &r).unwrap())
            .collect();
        let gb = buchberger(&r, &gens).unwrap();
        let mut qb = QuotientBasis::new(&gb).unwrap();
        for e in [[3, 3, 1], [2, 2, 2], [5, 0, 1], [0, 3, 3]] {
            let m = Monomial::from_exponents(&e).unwrap();
            let v = qb.monomial_nf(&m);
            assert_eq!(qb.to_polynomial(&v), gb.normal_form(&r.monomial(m)));
        }
    }
}
