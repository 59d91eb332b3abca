//! Monomials with small fixed-capacity exponent vectors, and monomial orders.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Capacity of the exponent vector. Rings use at most `MAX_VARS - 1`
/// variables so that one elimination variable can always be adjoined.
pub const MAX_VARS: usize = 8;

pub type Exp = u16;

/// A power product `x_1^{a_1} ... x_n^{a_n}`.
#[derive(Clone, Copy)]
pub struct Monomial {
    exps: [Exp; MAX_VARS],
    degree: u32,
    nvars: u8,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        assert!(nvars <= MAX_VARS);
        Monomial {
            exps: [0; MAX_VARS],
            degree: 0,
            nvars: nvars as u8,
        }
    }

    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        if exps.len() > MAX_VARS {
            return Err(Error::TooManyVariables {
                got: exps.len(),
                max: MAX_VARS,
            });
        }
        let mut m = Monomial::one(exps.len());
        for (i, &e) in exps.iter().enumerate() {
            m.exps[i] = Exp::try_from(e).map_err(|_| Error::ExponentOverflow)?;
            m.degree += e;
        }
        Ok(m)
    }

    /// The variable `x_i` in a ring with `nvars` variables.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[i] = 1;
        m.degree = 1;
        m
    }

    #[inline]
    pub fn nvars(&self) -> usize {
        self.nvars as usize
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.degree
    }

    #[inline]
    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i] as u32
    }

    #[inline]
    pub fn exponents(&self) -> &[Exp] {
        &self.exps[..self.nvars as usize]
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = *self;
        for i in 0..self.nvars() {
            out.exps[i] = out.exps[i].checked_add(other.exps[i])?;
        }
        out.degree = self.degree + other.degree;
        Some(out)
    }

    /// Product; exponent overflow is an invariant violation upstream of the
    /// degree cap and panics.
    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other).expect("monomial exponent overflow")
    }

    pub fn checked_pow(&self, k: u32) -> Option<Monomial> {
        let mut out = *self;
        for i in 0..self.nvars() {
            let e = (self.exps[i] as u32).checked_mul(k)?;
            out.exps[i] = Exp::try_from(e).ok()?;
        }
        out.degree = self.degree.checked_mul(k)?;
        Some(out)
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        if self.degree > other.degree {
            return false;
        }
        (0..self.nvars()).all(|i| self.exps[i] <= other.exps[i])
    }

    /// `other / self`, assuming `self | other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let mut out = *other;
        for i in 0..self.nvars() {
            out.exps[i] -= self.exps[i];
        }
        out.degree = other.degree - self.degree;
        out
    }

    pub fn checked_div(&self, divisor: &Monomial) -> Option<Monomial> {
        divisor.divides(self).then(|| divisor.quotient_of(self))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = *self;
        let mut deg = 0;
        for i in 0..self.nvars() {
            out.exps[i] = self.exps[i].max(other.exps[i]);
            deg += out.exps[i] as u32;
        }
        out.degree = deg;
        out
    }

    pub fn gcd_is_one(&self, other: &Monomial) -> bool {
        (0..self.nvars()).all(|i| self.exps[i] == 0 || other.exps[i] == 0)
    }

    /// Index of the unique variable when this is a pure power `x_i^k`, `k > 0`.
    pub fn pure_power_var(&self) -> Option<usize> {
        let mut found = None;
        for i in 0..self.nvars() {
            if self.exps[i] > 0 {
                if found.is_some() {
                    return None;
                }
                found = Some(i);
            }
        }
        found
    }

    /// Prepends `k` zero exponents (new leading variables).
    pub fn shift_up(&self, k: usize) -> Monomial {
        let n = self.nvars() + k;
        assert!(n <= MAX_VARS);
        let mut out = Monomial::one(n);
        out.exps[k..n].copy_from_slice(&self.exps[..self.nvars()]);
        out.degree = self.degree;
        out
    }

    /// Drops the first `k` variables, which must have exponent zero.
    pub fn shift_down(&self, k: usize) -> Monomial {
        debug_assert!(self.exps[..k].iter().all(|&e| e == 0));
        let n = self.nvars() - k;
        let mut out = Monomial::one(n);
        out.exps[..n].copy_from_slice(&self.exps[k..self.nvars()]);
        out.degree = self.degree;
        out
    }

    pub fn with_exponent(&self, i: usize, e: Exp) -> Monomial {
        let mut out = *self;
        out.degree = out.degree - out.exps[i] as u32 + e as u32;
        out.exps[i] = e;
        out
    }
}

impl PartialEq for Monomial {
    fn eq(&self, other: &Self) -> bool {
        self.nvars == other.nvars && self.exps == other.exps
    }
}

impl Eq for Monomial {}

impl Hash for Monomial {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.exps.hash(state);
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exponents())
    }
}

/// Admissible monomial orders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub enum MonomialOrder {
    #[default]
    Grevlex,
    Lex,
    /// Grevlex on the first `k` variables, ties broken by grevlex on the rest.
    /// Eliminates the leading block.
    Block(usize),
}

fn grevlex_range(a: &[Exp], b: &[Exp]) -> Ordering {
    let da: u32 = a.iter().map(|&e| e as u32).sum();
    let db: u32 = b.iter().map(|&e| e as u32).sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.len()).rev() {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    /// Total order; panics in debug builds on mismatched variable counts.
    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.nvars, b.nvars);
        let n = a.nvars();
        match *self {
            MonomialOrder::Grevlex => {
                match a.degree.cmp(&b.degree) {
                    Ordering::Equal => {}
                    o => return o,
                }
                for i in (0..n).rev() {
                    match a.exps[i].cmp(&b.exps[i]) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }
            MonomialOrder::Lex => a.exps[..n].cmp(&b.exps[..n]),
            MonomialOrder::Block(k) => {
                let k = k.min(n);
                match grevlex_range(&a.exps[..k], &b.exps[..k]) {
                    Ordering::Equal => grevlex_range(&a.exps[k..n], &b.exps[k..n]),
                    o => o,
                }
            }
        }
    }
}

/// Checked comparison for the public API.
pub fn monomial_compare(a: &Monomial, b: &Monomial, order: MonomialOrder) -> Result<Ordering> {
    if a.nvars != b.nvars {
        return Err(Error::VariableCountMismatch(a.nvars(), b.nvars()));
    }
    Ok(order.cmp(a, b))
}
