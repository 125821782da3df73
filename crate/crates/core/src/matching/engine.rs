//! Pivot recursion for the vertex-weighted matching polynomial,
//! `MP(S) = w(v) MP(S - v) + sum_{u in N(v)} MP(S - v - u)`, over vertex
//! subsets stored as fixed-width bitsets.

use std::collections::HashMap;

use super::MatchingError;
use crate::ring::Ring;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineConfig {
    /// Maximum number of recursion nodes that miss the memo.
    pub budget: u64,
    /// Memo entries kept before the table is cleared; 0 disables memoization.
    pub memo_capacity: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { budget: 200_000_000, memo_capacity: 1 << 21 }
    }
}

impl EngineConfig {
    pub fn with_budget(budget: u64) -> Self {
        EngineConfig { budget, ..Self::default() }
    }
}

type Bits<const W: usize> = [u64; W];

fn is_empty<const W: usize>(s: &Bits<W>) -> bool {
    s.iter().all(|&w| w == 0)
}

fn count<const W: usize>(s: &Bits<W>) -> u32 {
    s.iter().map(|w| w.count_ones()).sum()
}

fn lowest<const W: usize>(s: &Bits<W>) -> Option<usize> {
    s.iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
}

fn clear<const W: usize>(s: &mut Bits<W>, v: usize) {
    s[v / 64] &= !(1u64 << (v % 64));
}

fn and<const W: usize>(a: &Bits<W>, b: &Bits<W>) -> Bits<W> {
    std::array::from_fn(|i| a[i] & b[i])
}

fn iter_bits<const W: usize>(s: &Bits<W>) -> impl Iterator<Item = usize> + '_ {
    s.iter().enumerate().flat_map(|(i, &w)| {
        let mut w = w;
        std::iter::from_fn(move || {
            if w == 0 {
                return None;
            }
            let t = w.trailing_zeros() as usize;
            w &= w - 1;
            Some(i * 64 + t)
        })
    })
}

struct Core<'a, R, const W: usize> {
    adj: Vec<Bits<W>>,
    weights: &'a [R],
    memo: HashMap<Bits<W>, R>,
    cfg: EngineConfig,
    nodes: u64,
}

impl<R: Ring, const W: usize> Core<'_, R, W> {
    fn component(&self, s: &Bits<W>, start: usize) -> Bits<W> {
        let mut comp = [0u64; W];
        comp[start / 64] |= 1 << (start % 64);
        let mut frontier = comp;
        loop {
            let mut next = [0u64; W];
            for v in iter_bits(&frontier) {
                for i in 0..W {
                    next[i] |= self.adj[v][i];
                }
            }
            for i in 0..W {
                next[i] &= s[i] & !comp[i];
            }
            if is_empty(&next) {
                return comp;
            }
            for i in 0..W {
                comp[i] |= next[i];
            }
            frontier = next;
        }
    }

    fn mp(&mut self, s: &Bits<W>) -> Result<R, MatchingError> {
        let Some(first) = lowest(s) else {
            return Ok(R::one_elem());
        };
        let comp = self.component(s, first);
        if comp != *s {
            let mut rest = *s;
            let mut acc = self.mp_connected(&comp)?;
            for i in 0..W {
                rest[i] &= !comp[i];
            }
            while let Some(v) = lowest(&rest) {
                let c = self.component(&rest, v);
                for i in 0..W {
                    rest[i] &= !c[i];
                }
                let f = self.mp_connected(&c)?;
                acc = acc.mul(&f);
            }
            return Ok(acc);
        }
        self.mp_connected(s)
    }

    fn mp_connected(&mut self, s: &Bits<W>) -> Result<R, MatchingError> {
        let n = count(s);
        if n == 1 {
            return Ok(self.weights[lowest(s).unwrap()].clone());
        }
        if n == 2 {
            let mut it = iter_bits(s);
            let (a, b) = (it.next().unwrap(), it.next().unwrap());
            return Ok(self.weights[a].mul(&self.weights[b]).add(&R::one_elem()));
        }
        if let Some(v) = self.memo.get(s) {
            return Ok(v.clone());
        }
        self.nodes += 1;
        if self.nodes > self.cfg.budget {
            return Err(MatchingError::ResourceBudgetExceeded { budget: self.cfg.budget });
        }
        // maximum degree inside s, smallest index on ties
        let mut pivot = usize::MAX;
        let mut best = 0;
        for v in iter_bits(s) {
            let d = count(&and(&self.adj[v], s));
            if pivot == usize::MAX || d > best {
                pivot = v;
                best = d;
            }
        }
        let mut without = *s;
        clear(&mut without, pivot);
        let mut acc = self.weights[pivot].mul(&self.mp(&without)?);
        let nbrs = and(&self.adj[pivot], s);
        for u in iter_bits(&nbrs) {
            let mut t = without;
            clear(&mut t, u);
            acc = acc.add(&self.mp(&t)?);
        }
        if self.cfg.memo_capacity > 0 {
            if self.memo.len() >= self.cfg.memo_capacity {
                self.memo.clear();
            }
            self.memo.insert(*s, acc.clone());
        }
        Ok(acc)
    }
}

enum Width<'a, R> {
    W1(Core<'a, R, 1>),
    W2(Core<'a, R, 2>),
    W4(Core<'a, R, 4>),
    W8(Core<'a, R, 8>),
}

/// Matching-polynomial evaluator for one graph and one weight vector. The
/// memo persists across calls, so evaluating many vertex subsets of the
/// same graph shares work.
pub struct Engine<'a, R> {
    n: usize,
    inner: Width<'a, R>,
}

pub const MAX_ENGINE_VERTICES: usize = 512;

fn build<'a, R: Ring, const W: usize>(
    n: usize,
    edges: &[(usize, usize)],
    weights: &'a [R],
    cfg: EngineConfig,
) -> Core<'a, R, W> {
    let mut adj = vec![[0u64; W]; n];
    for &(a, b) in edges {
        adj[a][b / 64] |= 1 << (b % 64);
        adj[b][a / 64] |= 1 << (a % 64);
    }
    Core { adj, weights, memo: HashMap::new(), cfg, nodes: 0 }
}

impl<'a, R: Ring> Engine<'a, R> {
    pub fn new(
        n: usize,
        edges: &[(usize, usize)],
        weights: &'a [R],
        cfg: EngineConfig,
    ) -> Result<Self, MatchingError> {
        assert_eq!(weights.len(), n, "one weight per vertex");
        let inner = match n {
            0..=64 => Width::W1(build(n, edges, weights, cfg)),
            65..=128 => Width::W2(build(n, edges, weights, cfg)),
            129..=256 => Width::W4(build(n, edges, weights, cfg)),
            257..=MAX_ENGINE_VERTICES => Width::W8(build(n, edges, weights, cfg)),
            _ => return Err(MatchingError::TooManyVertices(n)),
        };
        Ok(Engine { n, inner })
    }

    /// MP of the subgraph induced by the vertices with `keep[v] == true`.
    pub fn mp_induced(&mut self, keep: &[bool]) -> Result<R, MatchingError> {
        assert_eq!(keep.len(), self.n);
        fn mask<const W: usize>(keep: &[bool]) -> [u64; W] {
            let mut m = [0u64; W];
            for (v, &k) in keep.iter().enumerate() {
                if k {
                    m[v / 64] |= 1 << (v % 64);
                }
            }
            m
        }
        match &mut self.inner {
            Width::W1(c) => c.mp(&mask(keep)),
            Width::W2(c) => c.mp(&mask(keep)),
            Width::W4(c) => c.mp(&mask(keep)),
            Width::W8(c) => c.mp(&mask(keep)),
        }
    }

    pub fn mp_all(&mut self) -> Result<R, MatchingError> {
        self.mp_induced(&vec![true; self.n])
    }

    /// Recursion nodes evaluated so far (memo misses).
    pub fn nodes(&self) -> u64 {
        match &self.inner {
            Width::W1(c) => c.nodes,
            Width::W2(c) => c.nodes,
            Width::W4(c) => c.nodes,
            Width::W8(c) => c.nodes,
        }
    }
}
