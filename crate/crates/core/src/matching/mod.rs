//! Matchings: brute-force enumeration, the weighted matching polynomial,
//! size distributions and boundary profiles.

mod engine;
mod enumerate;
mod maxsize;
mod profile;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use crate::graph::{Graph, WeightTag};
use crate::poly::MultiPoly;
use crate::ring::{RationalRing, Ring, UniPoly};

pub use engine::{Engine, EngineConfig, MAX_ENGINE_VERTICES};
pub use enumerate::{enumerate_matchings, for_each_matching, mp_by_enumeration, DEFAULT_ORACLE_BOUND};
pub use maxsize::maximum_matching_size;
pub use profile::{boundary_profile, boundary_profile_with, BoundaryEdge, BoundaryProfile};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchingError {
    #[error("graph has {n} vertices, above the oracle bound {bound}")]
    TooLargeForOracle { n: usize, bound: usize },
    #[error("recursion budget of {budget} nodes exceeded")]
    ResourceBudgetExceeded { budget: u64 },
    #[error("graph has {0} vertices; the engine handles at most 512")]
    TooManyVertices(usize),
    #[error("weight tag `{0}` has no value")]
    UnmappedTag(String),
    #[error("bad boundary: {0}")]
    BadBoundary(String),
    #[error("graph is not bipartite")]
    NotBipartite,
}

/// Values for weight tags. Tag "1" always maps to the ring's one.
#[derive(Debug, Clone)]
pub struct WeightAssignment<R> {
    values: BTreeMap<String, R>,
}

impl<R: Ring> Default for WeightAssignment<R> {
    fn default() -> Self {
        Self::new()
    }
}

impl<R: Ring> WeightAssignment<R> {
    pub fn new() -> Self {
        WeightAssignment { values: BTreeMap::new() }
    }

    pub fn with(mut self, tag: impl Into<String>, value: R) -> Self {
        self.values.insert(tag.into(), value);
        self
    }

    pub fn insert(&mut self, tag: impl Into<String>, value: R) {
        self.values.insert(tag.into(), value);
    }

    pub fn get(&self, tag: &str) -> Option<R> {
        if tag == "1" {
            return Some(R::one_elem());
        }
        self.values.get(tag).cloned()
    }

    /// Per-vertex weights of `g`.
    pub fn resolve(&self, g: &Graph) -> Result<Vec<R>, MatchingError> {
        g.vertices()
            .iter()
            .map(|v| self.get(&v.weight).ok_or_else(|| MatchingError::UnmappedTag(v.weight.clone())))
            .collect()
    }
}

impl<R: RationalRing> WeightAssignment<R> {
    /// Adds every rational tag of `g` (like "3/2") as its exact value.
    pub fn with_rational_tags(mut self, g: &Graph) -> Self {
        for tag in g.weight_tags() {
            if let Ok(WeightTag::Rational(q)) = WeightTag::parse(&tag) {
                self.values.entry(tag).or_insert_with(|| R::from_rational(&q));
            }
        }
        self
    }
}

impl WeightAssignment<MultiPoly> {
    /// Every symbolic tag becomes the indeterminate of the same name.
    pub fn symbolic(g: &Graph) -> Self {
        let mut w = WeightAssignment::new().with_rational_tags(g);
        for tag in g.weight_tags() {
            if let Ok(WeightTag::Symbol(s)) = WeightTag::parse(&tag) {
                w.values.insert(tag, MultiPoly::var(&s));
            }
        }
        w
    }
}

pub fn matching_polynomial<R: Ring>(g: &Graph, w: &WeightAssignment<R>) -> Result<R, MatchingError> {
    matching_polynomial_with(g, w, EngineConfig::default())
}

pub fn matching_polynomial_with<R: Ring>(
    g: &Graph,
    w: &WeightAssignment<R>,
    cfg: EngineConfig,
) -> Result<R, MatchingError> {
    let weights = w.resolve(g)?;
    Engine::new(g.vertex_count(), g.edges(), &weights, cfg)?.mp_all()
}

/// Number of matchings of each size, `m_0 = 1` first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SizeDistribution {
    pub counts: Vec<BigInt>,
}

impl SizeDistribution {
    pub fn total(&self) -> BigInt {
        self.counts.iter().sum()
    }

    /// Size of a maximum matching.
    pub fn nu(&self) -> usize {
        self.counts.len() - 1
    }

    pub fn maximum_count(&self) -> BigInt {
        self.counts.last().cloned().unwrap_or_else(BigInt::zero)
    }
}

/// Every weight set to one indeterminate `y`; `m_j` is the coefficient of `y^(n-2j)`.
pub fn size_distribution(g: &Graph, cfg: EngineConfig) -> Result<SizeDistribution, MatchingError> {
    let n = g.vertex_count();
    let weights = vec![UniPoly::variable(); n];
    let p = Engine::new(n, g.edges(), &weights, cfg)?.mp_all()?;
    let mut counts = Vec::new();
    for j in 0..=n / 2 {
        let c = p.coefficient(n - 2 * j);
        if c.is_zero() {
            break;
        }
        counts.push(c);
    }
    Ok(SizeDistribution { counts })
}

pub fn count_matchings(g: &Graph) -> Result<BigInt, MatchingError> {
    let ones = vec![BigInt::from(1); g.vertex_count()];
    Engine::new(g.vertex_count(), g.edges(), &ones, EngineConfig::default())?.mp_all()
}

pub fn count_maximum_matchings(g: &Graph) -> Result<BigInt, MatchingError> {
    Ok(size_distribution(g, EngineConfig::default())?.maximum_count())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Vertex;
    use num_rational::BigRational;

    fn cycle(n: usize) -> Graph {
        let ids: Vec<String> = (0..n).map(|i| i.to_string()).collect();
        let mut g = Graph::new();
        for id in &ids {
            g.add_vertex(Vertex::new(id.as_str())).unwrap();
        }
        for i in 0..n {
            g.add_edge(i, (i + 1) % n).unwrap();
        }
        g
    }

    fn k33() -> Graph {
        let mut g = Graph::new();
        for i in 0..6 {
            g.add_vertex(Vertex::new(format!("v{i}"))).unwrap();
        }
        for a in 0..3 {
            for b in 3..6 {
                g.add_edge(a, b).unwrap();
            }
        }
        g
    }

    #[test]
    fn isolated_vertex_weight() {
        let g = Graph::from_parts([Vertex::weighted("v", "x")], []).unwrap();
        let mp = matching_polynomial(&g, &WeightAssignment::symbolic(&g)).unwrap();
        assert_eq!(mp, "x".parse().unwrap());
    }

    #[test]
    fn single_edge_polynomial() {
        let g = Graph::from_parts(
            [Vertex::weighted("u", "x"), Vertex::weighted("v", "x")],
            [("u", "v")],
        )
        .unwrap();
        let mp = matching_polynomial(&g, &WeightAssignment::symbolic(&g)).unwrap();
        assert_eq!(mp, "x^2 + 1".parse().unwrap());
    }

    #[test]
    fn cycle_distributions() {
        let d = size_distribution(&cycle(4), EngineConfig::default()).unwrap();
        assert_eq!(d.counts, vec![1.into(), 4.into(), 2.into()]);
        assert_eq!(count_matchings(&cycle(6)).unwrap(), BigInt::from(18));
    }

    #[test]
    fn k33_counts() {
        assert_eq!(count_matchings(&k33()).unwrap(), BigInt::from(34));
        assert_eq!(count_maximum_matchings(&k33()).unwrap(), BigInt::from(6));
    }

    #[test]
    fn empty_graph_counts() {
        let g = Graph::new();
        assert_eq!(count_matchings(&g).unwrap(), BigInt::from(1));
        assert_eq!(count_maximum_matchings(&g).unwrap(), BigInt::from(1));
    }

    #[test]
    fn path3_counts() {
        let g = Graph::from_parts(["a", "b", "c"].map(Vertex::new), [("a", "b"), ("b", "c")]).unwrap();
        assert_eq!(count_matchings(&g).unwrap(), BigInt::from(3));
        assert_eq!(count_maximum_matchings(&g).unwrap(), BigInt::from(2));
    }

    #[test]
    fn rational_tags_resolve() {
        let g = Graph::from_parts([Vertex::weighted("v", "3/2")], []).unwrap();
        let w = WeightAssignment::<BigRational>::new().with_rational_tags(&g);
        assert_eq!(
            matching_polynomial(&g, &w).unwrap(),
            BigRational::new(3.into(), 2.into())
        );
    }

    #[test]
    fn unmapped_tag_is_error() {
        let g = Graph::from_parts([Vertex::weighted("v", "q")], []).unwrap();
        let w = WeightAssignment::<BigInt>::new();
        assert_eq!(matching_polynomial(&g, &w), Err(MatchingError::UnmappedTag("q".into())));
    }

    #[test]
    fn budget_is_enforced() {
        let r = matching_polynomial_with(
            &k33(),
            &WeightAssignment::<BigInt>::new(),
            EngineConfig { budget: 1, memo_capacity: 0 },
        );
        assert_eq!(r, Err(MatchingError::ResourceBudgetExceeded { budget: 1 }));
    }
}
