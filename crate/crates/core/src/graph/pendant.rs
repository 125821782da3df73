use super::{Bipartition, Graph, GraphError, Side, Vertex};

/// G' together with the bookkeeping needed to map matchings back to G.
#[derive(Debug, Clone)]
pub struct PendantExtension {
    pub graph: Graph,
    /// The smaller class U (indices shared between G and G').
    pub u_class: Vec<usize>,
    /// `(u, pendant)` pairs, indices into `graph`.
    pub pendants: Vec<(usize, usize)>,
    pub original_vertex_count: usize,
}

impl PendantExtension {
    pub fn is_pendant_edge(&self, a: usize, b: usize) -> bool {
        a >= self.original_vertex_count || b >= self.original_vertex_count
    }
}

/// Attaches one fresh degree-1 neighbor (weight tag "1") to every vertex of
/// the smaller bipartition class. Equal classes are broken towards the class
/// holding the lexicographically smallest vertex id.
pub fn pendant_extension(g: &Graph, bip: &Bipartition) -> Result<PendantExtension, GraphError> {
    for &(a, b) in g.edges() {
        if bip.side(a) == bip.side(b) {
            return Err(GraphError::SideConflict(
                g.vertex(a).id.clone(),
                g.vertex(b).id.clone(),
            ));
        }
    }
    let (na, nb) = bip.class_sizes();
    let u_side = match na.cmp(&nb) {
        std::cmp::Ordering::Less => Side::A,
        std::cmp::Ordering::Greater => Side::B,
        std::cmp::Ordering::Equal => g
            .vertices()
            .iter()
            .enumerate()
            .min_by(|x, y| x.1.id.cmp(&y.1.id))
            .map(|(i, _)| bip.side(i))
            .unwrap_or(Side::A),
    };
    let u_class = bip.class(u_side);

    let mut ext = g.with_sides(&bip.sides)?;
    let mut pendants = Vec::with_capacity(u_class.len());
    for &u in &u_class {
        let base = format!("{}~p", g.vertex(u).id);
        let mut id = base.clone();
        let mut n = 1;
        while ext.vertex_index(&id).is_some() {
            id = format!("{base}{n}");
            n += 1;
        }
        let p = ext.add_vertex(Vertex::new(id).with_side(u_side.opposite()))?;
        ext.add_edge(u, p)?;
        pendants.push((u, p));
    }
    Ok(PendantExtension {
        graph: ext,
        u_class,
        pendants,
        original_vertex_count: g.vertex_count(),
    })
}
