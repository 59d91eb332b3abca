//! Buchberger's algorithm with sugar selection and the Gebauer–Möller
//! criteria, reduction, and standard-monomial counting.

use std::cmp::Ordering;
use std::collections::{BinaryHeap, HashMap};

use crate::error::{Error, Result};
use crate::monomial::{Monomial, MonomialOrder};
use crate::poly::{PolyRing, Polynomial, Term};

/// Default maximum total degree of any pair lcm or input generator.
pub const DEFAULT_DEGREE_CAP: u32 = 4096;

/// A Gröbner basis together with the ring (and hence order) it lives in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: PolyRing,
    generators: Vec<Polynomial>,
    reduced: bool,
}

impl GroebnerBasis {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn lead_monomials(&self) -> Vec<Monomial> {
        self.generators.iter().filter_map(|g| g.lead_monomial()).collect()
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.generators.iter().any(|g| g.lead_monomial().is_some_and(|m| m.is_one()))
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn into_generators(self) -> Vec<Polynomial> {
        self.generators
    }

    /// Wraps generators that are already a reduced basis, sorted by leading
    /// monomial ascending. Used by the linear-algebra constructions.
    pub(crate) fn from_reduced_unchecked(ring: PolyRing, mut generators: Vec<Polynomial>) -> Self {
        generators.sort_by(|a, b| ring.cmp(&a.lead().unwrap().1, &b.lead().unwrap().1));
        GroebnerBasis {
            ring,
            generators,
            reduced: true,
        }
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let red = Reducers::new(&self.generators);
        reduce(&self.ring, f, &red, true)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }
}

#[inline]
fn divmask(m: &Monomial) -> u32 {
    let mut mask = 0u32;
    for (i, &e) in m.exponents().iter().enumerate() {
        // two bits per variable: exponent >= 1 and exponent >= 4
        if e >= 1 {
            mask |= 1 << (2 * i);
        }
        if e >= 4 {
            mask |= 1 << (2 * i + 1);
        }
    }
    mask
}

/// Monic reducers with precomputed leading data.
pub(crate) struct Reducers<'a> {
    polys: Vec<&'a Polynomial>,
    leads: Vec<Monomial>,
    masks: Vec<u32>,
}

impl<'a> Reducers<'a> {
    pub(crate) fn new(polys: impl IntoIterator<Item = &'a Polynomial>) -> Self {
        let polys: Vec<&Polynomial> = polys.into_iter().filter(|p| !p.is_zero()).collect();
        let leads: Vec<Monomial> = polys.iter().map(|p| p.lead().unwrap().1).collect();
        let masks = leads.iter().map(divmask).collect();
        Reducers { polys, leads, masks }
    }

    #[inline]
    pub(crate) fn find(&self, m: &Monomial) -> Option<usize> {
        let mm = divmask(m);
        (0..self.leads.len()).find(|&i| self.masks[i] & !mm == 0 && self.leads[i].divides(m))
    }
}

struct Keyed {
    m: Monomial,
    ord: MonomialOrder,
}

impl PartialEq for Keyed {
    fn eq(&self, other: &Self) -> bool {
        self.m == other.m
    }
}
impl Eq for Keyed {}
impl PartialOrd for Keyed {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Keyed {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ord.cmp(&self.m, &other.m)
    }
}

/// Reduces `f` by monic reducers. With `full = false` only the leading term
/// is reduced; the returned polynomial then has an irreducible leading term.
pub(crate) fn reduce(ring: &PolyRing, f: &Polynomial, red: &Reducers, full: bool) -> Polynomial {
    if f.is_zero() {
        return Polynomial::zero();
    }
    let field = ring.field();
    let ord = ring.order();
    let mut acc: HashMap<Monomial, u32> = HashMap::with_capacity(f.len() * 2);
    let mut heap = BinaryHeap::with_capacity(f.len() * 2);
    for &(c, m) in f.terms() {
        acc.insert(m, c);
        heap.push(Keyed { m, ord });
    }
    let mut rem: Vec<Term> = Vec::new();
    while let Some(Keyed { m, .. }) = heap.pop() {
        let c = match acc.remove(&m) {
            Some(c) if c != 0 => c,
            _ => continue,
        };
        match red.find(&m) {
            Some(i) => {
                let g = red.polys[i];
                let (gc, gm) = *g.lead().unwrap();
                let u = gm.quotient_of(&m);
                let k = if gc == 1 {
                    c
                } else {
                    field.mul(c, field.inv(gc).expect("nonzero"))
                };
                let nk = field.neg(k);
                for &(b, t) in &g.terms()[1..] {
                    let tm = t.mul(&u);
                    let d = field.mul(nk, b);
                    match acc.entry(tm) {
                        std::collections::hash_map::Entry::Occupied(mut e) => {
                            let v = e.get_mut();
                            *v = field.add(*v, d);
                        }
                        std::collections::hash_map::Entry::Vacant(e) => {
                            e.insert(d);
                            heap.push(Keyed { m: tm, ord });
                        }
                    }
                }
            }
            None => {
                rem.push((c, m));
                if !full {
                    // drain the rest unchanged
                    let mut rest: Vec<Term> = acc.into_iter().filter(|t| t.1 != 0).map(|(m, c)| (c, m)).collect();
                    rest.sort_unstable_by(|a, b| ord.cmp(&b.1, &a.1));
                    rem.extend(rest);
                    return Polynomial::from_sorted_terms(rem);
                }
            }
        }
    }
    Polynomial::from_sorted_terms(rem)
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    sugar: u32,
}

struct Engine<'r> {
    ring: &'r PolyRing,
    polys: Vec<Polynomial>,
    sugar: Vec<u32>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
    degree_cap: u32,
}

impl<'r> Engine<'r> {
    fn lead(&self, i: usize) -> Monomial {
        self.polys[i].lead().unwrap().1
    }

    fn pair(&self, i: usize, j: usize) -> Pair {
        let (li, lj) = (self.lead(i), self.lead(j));
        let lcm = li.lcm(&lj);
        let si = self.sugar[i] + lcm.degree() - li.degree();
        let sj = self.sugar[j] + lcm.degree() - lj.degree();
        Pair {
            i,
            j,
            lcm,
            sugar: si.max(sj),
        }
    }

    /// Gebauer–Möller update with the new basis element `h`.
    fn update(&mut self, h: usize) {
        let lh = self.lead(h);
        let mut cands: Vec<(Pair, bool)> = self
            .active
            .iter()
            .map(|&g| {
                let p = self.pair(g, h);
                let coprime = lh.gcd_is_one(&self.lead(g));
                (p, coprime)
            })
            .collect();

        // chain criterion among the new pairs
        let mut keep = vec![true; cands.len()];
        for a in 0..cands.len() {
            if cands[a].1 {
                continue;
            }
            let la = cands[a].0.lcm;
            for b in 0..cands.len() {
                if a == b || !keep[b] {
                    continue;
                }
                let lb = cands[b].0.lcm;
                if lb.divides(&la) && (lb != la || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        let mut fresh: Vec<Pair> = Vec::new();
        for (k, (p, coprime)) in cands.drain(..).enumerate() {
            if keep[k] && !coprime {
                fresh.push(p);
            }
        }

        let old = std::mem::take(&mut self.pairs);
        for p in old {
            let drop = lh.divides(&p.lcm)
                && self.lead(p.i).lcm(&lh) != p.lcm
                && self.lead(p.j).lcm(&lh) != p.lcm;
            if !drop {
                self.pairs.push(p);
            }
        }
        self.pairs.extend(fresh);

        let polys = &self.polys;
        self.active.retain(|&g| !lh.divides(&polys[g].lead().unwrap().1));
        self.active.push(h);
    }

    fn select(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let ring = self.ring;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let better = match a.sugar.cmp(&b.sugar) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => ring.cmp(&a.lcm, &b.lcm) == Ordering::Less,
            };
            if better {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    fn spoly(&self, p: &Pair) -> Polynomial {
        let (f, g) = (&self.polys[p.i], &self.polys[p.j]);
        let (fc, fm) = *f.lead().unwrap();
        let (gc, gm) = *g.lead().unwrap();
        debug_assert!(fc == 1 && gc == 1);
        let uf = fm.quotient_of(&p.lcm);
        let ug = gm.quotient_of(&p.lcm);
        let a = self.ring.mul_term(f, 1, &uf);
        let minus = self.ring.field().neg(1);
        self.ring.add_scaled(&a, minus, &ug, g)
    }

    fn add_poly(&mut self, f: Polynomial, sugar: u32) -> usize {
        let f = self.ring.make_monic(&f);
        self.polys.push(f);
        self.sugar.push(sugar);
        self.polys.len() - 1
    }

    fn run(&mut self) -> Result<()> {
        while let Some(p) = self.select() {
            if p.lcm.degree() > self.degree_cap {
                return Err(Error::DegreeCap {
                    cap: self.degree_cap,
                    degree: p.lcm.degree(),
                    context: "S-pair".into(),
                });
            }
            let s = self.spoly(&p);
            let h = {
                let red = Reducers::new(self.active.iter().map(|&i| &self.polys[i]));
                reduce(self.ring, &s, &red, true)
            };
            if h.is_zero() {
                continue;
            }
            let sugar = p.sugar.max(h.total_degree());
            let idx = self.add_poly(h, sugar);
            if self.lead(idx).is_one() {
                self.active = vec![idx];
                self.pairs.clear();
                return Ok(());
            }
            self.update(idx);
        }
        Ok(())
    }
}

/// Reduced Gröbner basis of the ideal generated by `gens` in `ring`.
pub fn buchberger(ring: &PolyRing, gens: &[Polynomial]) -> Result<GroebnerBasis> {
    buchberger_capped(ring, gens, DEFAULT_DEGREE_CAP)
}

pub fn buchberger_capped(ring: &PolyRing, gens: &[Polynomial], degree_cap: u32) -> Result<GroebnerBasis> {
    let mut eng = Engine {
        ring,
        polys: Vec::new(),
        sugar: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        degree_cap,
    };
    // inputs are interreduced on the way in, smallest leads first
    let mut inputs: Vec<Polynomial> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    for g in &inputs {
        let d = g.total_degree();
        if d > degree_cap {
            return Err(Error::DegreeCap {
                cap: degree_cap,
                degree: d,
                context: "input generator".into(),
            });
        }
    }
    inputs.sort_by(|a, b| ring.cmp(&a.lead().unwrap().1, &b.lead().unwrap().1));
    for g in inputs {
        let h = {
            let red = Reducers::new(eng.active.iter().map(|&i| &eng.polys[i]));
            reduce(ring, &g, &red, true)
        };
        if h.is_zero() {
            continue;
        }
        let deg = h.total_degree();
        let idx = eng.add_poly(h, deg);
        if eng.lead(idx).is_one() {
            return Ok(GroebnerBasis {
                ring: ring.clone(),
                generators: vec![ring.one()],
                reduced: true,
            });
        }
        eng.update(idx);
    }
    eng.run()?;
    let basis: Vec<Polynomial> = eng.active.iter().map(|&i| eng.polys[i].clone()).collect();
    Ok(GroebnerBasis {
        ring: ring.clone(),
        generators: interreduce(ring, basis),
        reduced: true,
    })
}

/// Minimalizes and tail-reduces a Gröbner basis; output sorted by leading
/// monomial ascending.
pub(crate) fn interreduce(ring: &PolyRing, basis: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut basis: Vec<Polynomial> = basis
        .into_iter()
        .filter(|g| !g.is_zero())
        .map(|g| ring.make_monic(&g))
        .collect();
    basis.sort_by(|a, b| ring.cmp(&a.lead().unwrap().1, &b.lead().unwrap().1));
    let mut minimal: Vec<Polynomial> = Vec::new();
    for g in basis {
        let lg = g.lead().unwrap().1;
        if minimal.iter().any(|h| h.lead().unwrap().1.divides(&lg)) {
            continue;
        }
        minimal.push(g);
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let g = &minimal[k];
        let (c, m) = *g.lead().unwrap();
        let red = Reducers::new(minimal.iter().enumerate().filter(|&(j, _)| j != k).map(|(_, h)| h));
        let tail = Polynomial::from_sorted_terms(g.terms()[1..].to_vec());
        let tail = reduce(ring, &tail, &red, true);
        let mut terms = vec![(c, m)];
        terms.extend_from_slice(tail.terms());
        out.push(Polynomial::from_sorted_terms(terms));
    }
    out
}

/// Remainder of `f` on division by `g`.
pub fn normal_form(f: &Polynomial, g: &GroebnerBasis) -> Polynomial {
    g.normal_form(f)
}

/// True iff every variable has a pure power among the leading monomials.
pub fn is_zero_dimensional(g: &GroebnerBasis) -> bool {
    pure_power_bounds(g).is_some()
}

/// For each variable, the smallest exponent `k` with `x_i^k` a leading
/// monomial; `None` if some variable has no such power.
pub fn pure_power_bounds(g: &GroebnerBasis) -> Option<Vec<u32>> {
    let n = g.ring.nvars();
    if g.is_unit_ideal() {
        return Some(vec![0; n]);
    }
    let mut bounds = vec![u32::MAX; n];
    for m in g.lead_monomials() {
        if let Some(i) = m.pure_power_var() {
            bounds[i] = bounds[i].min(m.exponent(i));
        }
    }
    bounds.iter().all(|&b| b != u32::MAX).then_some(bounds)
}

/// Count of standard monomials, or `None` when infinite.
pub fn standard_monomial_count(g: &GroebnerBasis) -> Option<u64> {
    let bounds = pure_power_bounds(g)?;
    if g.is_unit_ideal() {
        return Some(0);
    }
    let leads = g.lead_monomials();
    let n = bounds.len();
    if n == 0 {
        return Some(1);
    }
    let mut prefix = vec![0u32; n];
    Some(count_rec(&leads, &bounds, &mut prefix, 0))
}

fn count_rec(leads: &[Monomial], bounds: &[u32], prefix: &mut [u32], i: usize) -> u64 {
    let n = bounds.len();
    if i == n - 1 {
        // last exponent: bounded by the smallest last-exponent among leads
        // whose other coordinates divide the prefix
        let mut cap = bounds[n - 1];
        for m in leads {
            if (0..n - 1).all(|k| m.exponent(k) <= prefix[k]) {
                cap = cap.min(m.exponent(n - 1));
            }
        }
        return cap as u64;
    }
    let mut total = 0;
    for e in 0..bounds[i] {
        prefix[i] = e;
        // once the prefix (rest zero) is in the leading ideal, so are all
        // larger exponents of this variable
        let divisible = leads
            .iter()
            .any(|m| (0..n).all(|k| m.exponent(k) <= if k <= i { prefix[k] } else { 0 }));
        if divisible {
            break;
        }
        total += count_rec(leads, bounds, prefix, i + 1);
    }
    prefix[i] = 0;
    total
}

/// All standard monomials, sorted descending in the basis order.
pub fn standard_monomials(g: &GroebnerBasis) -> Option<Vec<Monomial>> {
    let bounds = pure_power_bounds(g)?;
    if g.is_unit_ideal() {
        return Some(Vec::new());
    }
    let leads = g.lead_monomials();
    let n = bounds.len();
    let mut out = Vec::new();
    let mut cur = Monomial::one(n);
    enumerate_rec(&leads, &bounds, &mut cur, 0, &mut out);
    let ring = &g.ring;
    out.sort_unstable_by(|a, b| ring.cmp(b, a));
    Some(out)
}

fn enumerate_rec(leads: &[Monomial], bounds: &[u32], cur: &mut Monomial, i: usize, out: &mut Vec<Monomial>) {
    let n = bounds.len();
    if i == n {
        out.push(*cur);
        return;
    }
    for e in 0..bounds[i] {
        *cur = cur.with_exponent(i, e as u16);
        if leads.iter().any(|m| m.divides(cur)) {
            break;
        }
        enumerate_rec(leads, bounds, cur, i + 1, out);
    }
    *cur = cur.with_exponent(i, 0);
}

/// Dimension of the leading-term ideal: the largest set `S` of variables
/// such that no leading monomial is supported inside `S`. Returns 0 for the
/// unit ideal.
pub fn krull_dimension(g: &GroebnerBasis) -> usize {
    let n = g.ring.nvars();
    if g.is_unit_ideal() {
        return 0;
    }
    let supports: Vec<u32> = g
        .lead_monomials()
        .iter()
        .map(|m| {
            (0..n).filter(|&i| m.exponent(i) > 0).fold(0u32, |acc, i| acc | (1 << i))
        })
        .collect();
    let mut best = 0;
    for s in 0u32..(1 << n) {
        let size = s.count_ones() as usize;
        if size <= best {
            continue;
        }
        if supports.iter().all(|&sup| sup & !s != 0) {
            best = size;
        }
    }
    best
}
