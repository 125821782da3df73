//! Sparse multivariate polynomials with rational coefficients.

mod interp;
mod parse;

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;
use thiserror::Error;

use crate::ring::{IntDivRing, RationalRing, Ring};

pub use interp::{newton_coefficients, vandermonde_solve};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("symbol `{0}` has no assigned value")]
    UnassignedSymbol(String),
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("interpolation node {0} appears twice")]
    DuplicateNode(BigInt),
    #[error("value ring cannot divide by {0}")]
    NonDivisibleRing(BigInt),
}

/// Exponent vector over the owning polynomial's symbol table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[u32; 8]>);

impl Monomial {
    fn degree(&self) -> u64 {
        self.0.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }
}

/// Graded lexicographic order.
impl Ord for Monomial {
    fn cmp(&self, o: &Self) -> Ordering {
        self.degree()
            .cmp(&o.degree())
            .then_with(|| self.0.cmp(&o.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

#[derive(Clone)]
pub struct MultiPoly {
    vars: Arc<Vec<String>>,
    terms: BTreeMap<Monomial, BigRational>,
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MultiPoly({self})")
    }
}

fn empty_vars() -> Arc<Vec<String>> {
    static EMPTY: std::sync::OnceLock<Arc<Vec<String>>> = std::sync::OnceLock::new();
    EMPTY.get_or_init(|| Arc::new(Vec::new())).clone()
}

impl MultiPoly {
    pub fn constant(q: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(Monomial(SmallVec::new()), q);
        }
        MultiPoly { vars: empty_vars(), terms }
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Monomial(SmallVec::from_slice(&[1])), BigRational::one());
        MultiPoly { vars: Arc::new(vec![name.to_string()]), terms }
    }

    /// Symbols in table order (sorted). May include symbols with no
    /// occurrence after cancellation.
    pub fn symbols(&self) -> &[String] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms as `(symbol, exponent)` lists, highest grlex term first.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<(&str, u32)>, &BigRational)> + '_ {
        self.terms.iter().rev().map(move |(m, c)| {
            let named = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| (self.vars[i].as_str(), e))
                .collect();
            (named, c)
        })
    }

    pub fn coefficients(&self) -> impl Iterator<Item = &BigRational> {
        self.terms.values()
    }

    pub fn has_integer_coefficients(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    pub fn constant_term(&self) -> BigRational {
        self.terms
            .iter()
            .find(|(m, _)| m.degree() == 0)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(BigRational::zero)
    }

    pub fn degree_in(&self, sym: &str) -> u32 {
        match self.vars.iter().position(|v| v == sym) {
            Some(i) => self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Re-expresses both operands over the union of their symbol tables.
    fn aligned(&self, o: &MultiPoly) -> (Arc<Vec<String>>, MultiPoly, MultiPoly) {
        if Arc::ptr_eq(&self.vars, &o.vars) || self.vars == o.vars {
            return (self.vars.clone(), self.clone(), o.with_table(self.vars.clone()));
        }
        if o.vars.is_empty() {
            return (self.vars.clone(), self.clone(), o.with_table(self.vars.clone()));
        }
        if self.vars.is_empty() {
            return (o.vars.clone(), self.with_table(o.vars.clone()), o.clone());
        }
        let mut all: Vec<String> = self.vars.iter().chain(o.vars.iter()).cloned().collect();
        all.sort();
        all.dedup();
        let table = Arc::new(all);
        (table.clone(), self.with_table(table.clone()), o.with_table(table))
    }

    /// Same polynomial over a superset symbol table.
    fn with_table(&self, table: Arc<Vec<String>>) -> MultiPoly {
        if Arc::ptr_eq(&self.vars, &table) {
            return self.clone();
        }
        if *self.vars == *table {
            return MultiPoly { vars: table, terms: self.terms.clone() };
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| table.iter().position(|t| t == v).expect("superset table"))
            .collect();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e: SmallVec<[u32; 8]> = SmallVec::from_elem(0, table.len());
                for (i, &x) in m.0.iter().enumerate() {
                    e[map[i]] = x;
                }
                (Monomial(e), c.clone())
            })
            .collect();
        MultiPoly { vars: table, terms }
    }

    /// Coefficient of `monomial` (in the listed symbols only), as a polynomial
    /// in the remaining symbols. Symbols missing from the table have exponent 0.
    pub fn coefficient(&self, monomial: &[(&str, u32)]) -> MultiPoly {
        let mut want: Vec<Option<u32>> = vec![None; self.vars.len()];
        for &(s, e) in monomial {
            match self.vars.iter().position(|v| v == s) {
                Some(i) => want[i] = Some(e),
                None if e > 0 => return MultiPoly::zero_elem(),
                None => {}
            }
        }
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let matches = want
                .iter()
                .zip(m.0.iter())
                .all(|(w, &e)| w.is_none_or(|w| w == e));
            if !matches {
                continue;
            }
            let mut stripped = m.clone();
            for (i, w) in want.iter().enumerate() {
                if w.is_some() {
                    stripped.0[i] = 0;
                }
            }
            terms.insert(stripped, c.clone());
        }
        MultiPoly { vars: self.vars.clone(), terms }.compacted()
    }

    /// Drops symbols that no longer occur.
    pub fn compacted(&self) -> MultiPoly {
        let used: Vec<usize> = (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect();
        if used.len() == self.vars.len() {
            return self.clone();
        }
        let vars: Vec<String> = used.iter().map(|&i| self.vars[i].clone()).collect();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| (Monomial(used.iter().map(|&i| m.0[i]).collect()), c.clone()))
            .collect();
        MultiPoly { vars: Arc::new(vars), terms }
    }

    /// Ring homomorphism into `R`.
    pub fn eval<R: RationalRing>(&self, assignment: &HashMap<String, R>) -> Result<R, PolyError> {
        let mut powers: Vec<Vec<R>> = Vec::with_capacity(self.vars.len());
        for (i, v) in self.vars.iter().enumerate() {
            let max = self.terms.keys().map(|m| m.0[i]).max().unwrap_or(0);
            if max == 0 {
                powers.push(vec![R::one_elem()]);
                continue;
            }
            let x = assignment
                .get(v)
                .ok_or_else(|| PolyError::UnassignedSymbol(v.clone()))?;
            let mut p = vec![R::one_elem()];
            for k in 1..=max as usize {
                p.push(p[k - 1].mul(x));
            }
            powers.push(p);
        }
        let mut acc = R::zero_elem();
        for (m, c) in &self.terms {
            let mut t = R::from_rational(c);
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&powers[i][e as usize]);
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Substitutes rational values for some symbols, keeping the rest.
    pub fn substitute(&self, values: &HashMap<String, BigRational>) -> MultiPoly {
        let mut acc = MultiPoly::zero_elem();
        for (named, c) in self.terms() {
            let mut t = MultiPoly::constant(c.clone());
            for (s, e) in named {
                let f = match values.get(s) {
                    Some(q) => MultiPoly::constant(q.clone()),
                    None => MultiPoly::var(s),
                };
                t = t.mul(&f.pow(e));
            }
            acc = acc.add(&t);
        }
        acc.compacted()
    }

    pub fn scale(&self, q: &BigRational) -> MultiPoly {
        if q.is_zero() {
            return MultiPoly::zero_elem();
        }
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect(),
        }
    }
}

impl PartialEq for MultiPoly {
    fn eq(&self, o: &Self) -> bool {
        let (_, a, b) = self.aligned(o);
        a.terms == b.terms
    }
}

impl Eq for MultiPoly {}

impl Ring for MultiPoly {
    fn zero_elem() -> Self {
        MultiPoly { vars: empty_vars(), terms: BTreeMap::new() }
    }

    fn one_elem() -> Self {
        MultiPoly::constant(BigRational::one())
    }

    fn add(&self, o: &Self) -> Self {
        if o.terms.is_empty() {
            return self.clone();
        }
        if self.terms.is_empty() {
            return o.clone();
        }
        let (vars, mut a, b) = self.aligned(o);
        for (m, c) in b.terms {
            match a.terms.entry(m) {
                std::collections::btree_map::Entry::Vacant(v) => {
                    v.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    *e.get_mut() += c;
                    if e.get().is_zero() {
                        e.remove();
                    }
                }
            }
        }
        MultiPoly { vars, terms: a.terms }
    }

    fn mul(&self, o: &Self) -> Self {
        if self.terms.is_empty() || o.terms.is_empty() {
            return MultiPoly::zero_elem();
        }
        let (vars, a, b) = self.aligned(o);
        let mut acc: HashMap<Monomial, BigRational> = HashMap::with_capacity(a.terms.len() * b.terms.len());
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let m = Monomial(ma.0.iter().zip(mb.0.iter()).map(|(x, y)| x + y).collect());
                *acc.entry(m).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        MultiPoly { vars, terms }
    }

    fn neg(&self) -> Self {
        MultiPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    fn from_integer(n: &BigInt) -> Self {
        MultiPoly::constant(BigRational::from_integer(n.clone()))
    }

    fn is_exact_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl RationalRing for MultiPoly {
    fn from_rational(q: &BigRational) -> Self {
        MultiPoly::constant(q.clone())
    }
}

impl IntDivRing for MultiPoly {
    fn div_integer(&self, d: &BigInt) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        Some(self.scale(&BigRational::new(BigInt::one(), d.clone())))
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (named, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let a = c.abs();
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || named.is_empty() {
                factors.push(a.to_string());
            }
            for (s, e) in named {
                if e == 1 {
                    factors.push(s.to_string());
                } else {
                    factors.push(format!("{s}^{e}"));
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl std::str::FromStr for MultiPoly {
    type Err = PolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::parse(s)
    }
}
