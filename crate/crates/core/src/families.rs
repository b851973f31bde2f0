//! Graph family generators and the Cartesian product.
//!
//! The petal generator also returns a descriptor giving the clockwise vertex
//! order of every cycle, which the survivor policy on these graphs needs.

use crate::error::GraphError;
use crate::graph::{Graph, VertexId, VertexLabel};

pub fn path(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::InvalidParameter(
            "path needs n >= 1".to_string(),
        ));
    }
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges)?.with_labels((0..n).map(VertexLabel::Index).collect())
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(GraphError::InvalidParameter(
            "cycle needs n >= 3".to_string(),
        ));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)?.with_labels((0..n).map(VertexLabel::Index).collect())
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    if n == 0 {
        return Err(GraphError::InvalidParameter(
            "complete graph needs n >= 1".to_string(),
        ));
    }
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v));
        }
    }
    Graph::from_edges(n, &edges)?.with_labels((0..n).map(VertexLabel::Index).collect())
}

/// Hypercube Q_dim: vertices are bit vectors, edges flip one bit.
pub fn hypercube(dim: usize) -> Result<Graph, GraphError> {
    if dim == 0 || dim > 20 {
        return Err(GraphError::InvalidParameter(
            "hypercube needs 1 <= dim <= 20".to_string(),
        ));
    }
    let n = 1usize << dim;
    let mut edges = Vec::with_capacity(n * dim / 2);
    for v in 0..n {
        for b in 0..dim {
            let w = v ^ (1 << b);
            if v < w {
                edges.push((v, w));
            }
        }
    }
    Graph::from_edges(n, &edges)?.with_labels(
        (0..n)
            .map(|value| VertexLabel::Bits { value, dim })
            .collect(),
    )
}

/// One cycle of a petal graph; `vertices` lists the clockwise order starting
/// and ending at the hub.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PetalCycle {
    pub copy: usize,
    pub length_index: usize,
    pub length: usize,
    pub vertices: Vec<VertexId>,
}

impl PetalCycle {
    /// Interior vertices, clockwise (the list without the hub endpoints).
    pub fn interior(&self) -> &[VertexId] {
        &self.vertices[1..self.vertices.len() - 1]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PetalDescriptor {
    pub k: usize,
    pub hub: VertexId,
    pub cycles: Vec<PetalCycle>,
}

impl PetalDescriptor {
    /// Cycle length for length index `i` (1-based): 2^(i+2) - 3.
    pub fn cycle_length(i: usize) -> usize {
        (1usize << (i + 2)) - 3
    }

    /// The cycle of a given copy and length index, both 1-based.
    pub fn cycle(&self, copy: usize, length_index: usize) -> &PetalCycle {
        self.cycles
            .iter()
            .find(|c| c.copy == copy && c.length_index == length_index)
            .expect("copy and length index in 1..=k")
    }
}

/// Petal graph: k copies of the cycles C_5, C_13, ..., C_(2^(k+2)-3), all
/// k^2 of them merged on a single hub vertex.
pub fn petal(k: usize) -> Result<(Graph, PetalDescriptor), GraphError> {
    if k == 0 || k > 10 {
        return Err(GraphError::InvalidParameter(
            "petal needs 1 <= k <= 10".to_string(),
        ));
    }
    let hub = 0;
    let mut edges = Vec::new();
    let mut labels = vec![VertexLabel::Hub];
    let mut cycles = Vec::new();
    let mut next = 1;
    for copy in 1..=k {
        for i in 1..=k {
            let len = PetalDescriptor::cycle_length(i);
            let mut vertices = Vec::with_capacity(len + 1);
            vertices.push(hub);
            for pos in 1..len {
                vertices.push(next);
                labels.push(VertexLabel::Petal {
                    copy,
                    cycle: i,
                    pos,
                });
                next += 1;
            }
            vertices.push(hub);
            edges.extend(vertices.windows(2).map(|w| (w[0], w[1])));
            cycles.push(PetalCycle {
                copy,
                length_index: i,
                length: len,
                vertices,
            });
        }
    }
    let graph = Graph::from_edges(next, &edges)?.with_labels(labels)?;
    Ok((graph, PetalDescriptor { k, hub, cycles }))
}

/// Cartesian product: (a, x) is adjacent to (b, y) iff a = b and x ~ y, or
/// x = y and a ~ b. Vertex (a, x) gets id a * |H| + x.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Graph {
    let (ng, nh) = (g.vertex_count(), h.vertex_count());
    let id = |a: VertexId, x: VertexId| a * nh + x;
    let mut edges = Vec::with_capacity(g.edge_count() * nh + h.edge_count() * ng);
    for a in 0..ng {
        for (x, y) in h.edges() {
            edges.push((id(a, x), id(a, y)));
        }
    }
    for (a, b) in g.edges() {
        for x in 0..nh {
            edges.push((id(a, x), id(b, x)));
        }
    }
    let labels = (0..ng)
        .flat_map(|a| (0..nh).map(move |x| VertexLabel::Product { left: a, right: x }))
        .collect();
    Graph::from_edges(ng * nh, &edges)
        .expect("product of connected graphs is connected")
        .with_labels(labels)
        .expect("product labels are distinct")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::DistanceMatrix;

    #[test]
    fn small_families_have_expected_counts() {
        assert_eq!(path(1).unwrap().vertex_count(), 1);
        assert_eq!(path(4).unwrap().edge_count(), 3);
        assert_eq!(cycle(5).unwrap().edge_count(), 5);
        assert_eq!(complete(4).unwrap().edge_count(), 6);
        assert!(cycle(2).is_err());
        assert!(path(0).is_err());
    }

    #[test]
    fn hypercube_q3_is_cubic() {
        let q3 = hypercube(3).unwrap();
        assert_eq!(q3.vertex_count(), 8);
        assert_eq!(q3.edge_count(), 12);
        assert!((0..8).all(|v| q3.degree(v) == 3));
        assert_eq!(q3.label(5), Some(&VertexLabel::Bits { value: 5, dim: 3 }));
    }

    #[test]
    fn hypercube_distance_is_hamming_distance() {
        let q4 = hypercube(4).unwrap();
        let d = DistanceMatrix::compute(&q4);
        for u in 0..16usize {
            for v in 0..16usize {
                assert_eq!(d.get(u, v), (u ^ v).count_ones());
            }
        }
    }

    #[test]
    fn petal_lengths_follow_the_doubling_rule() {
        assert_eq!(PetalDescriptor::cycle_length(1), 5);
        assert_eq!(PetalDescriptor::cycle_length(2), 13);
        assert_eq!(PetalDescriptor::cycle_length(3), 29);
    }

    #[test]
    fn petal_one_is_a_five_cycle() {
        let (g, desc) = petal(1).unwrap();
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edge_count(), 5);
        assert_eq!(desc.cycles.len(), 1);
        assert_eq!(desc.cycle(1, 1).vertices, vec![0, 1, 2, 3, 4, 0]);
    }

    #[test]
    fn petal_two_counts() {
        let (g, desc) = petal(2).unwrap();
        assert_eq!(g.vertex_count(), 33);
        assert_eq!(g.edge_count(), 36);
        assert_eq!(g.degree(desc.hub), 8);
        let mut lengths: Vec<_> = desc.cycles.iter().map(|c| c.length).collect();
        lengths.sort_unstable();
        assert_eq!(lengths, vec![5, 5, 13, 13]);
        // Interior vertices all have degree 2 and sit in exactly one cycle.
        for v in 1..g.vertex_count() {
            assert_eq!(g.degree(v), 2);
        }
    }

    #[test]
    fn petal_three_counts() {
        let (g, desc) = petal(3).unwrap();
        assert_eq!(g.vertex_count(), 133);
        assert_eq!(desc.cycles.len(), 9);
        assert_eq!(g.edge_count(), 3 * (5 + 13 + 29));
    }

    #[test]
    fn petal_cycles_trace_real_cycles() {
        let (g, desc) = petal(2).unwrap();
        for c in &desc.cycles {
            assert_eq!(c.vertices.len(), c.length + 1);
            assert_eq!(c.vertices[0], desc.hub);
            assert_eq!(*c.vertices.last().unwrap(), desc.hub);
            for w in c.vertices.windows(2) {
                assert!(g.has_edge(w[0], w[1]));
            }
        }
    }

    #[test]
    fn petal_labels_match_descriptor_positions() {
        let (g, desc) = petal(2).unwrap();
        assert_eq!(g.label(desc.hub), Some(&VertexLabel::Hub));
        let c = desc.cycle(2, 1);
        assert_eq!(
            g.label(c.vertices[3]),
            Some(&VertexLabel::Petal {
                copy: 2,
                cycle: 1,
                pos: 3
            })
        );
    }

    #[test]
    fn product_of_k1_is_identity_on_structure() {
        let k1 = complete(1).unwrap();
        let c5 = cycle(5).unwrap();
        let p = cartesian_product(&k1, &c5);
        assert_eq!(p.vertex_count(), 5);
        assert_eq!(p.edge_count(), 5);
    }

    #[test]
    fn product_of_two_paths_is_a_four_cycle() {
        let p2 = path(2).unwrap();
        let p = cartesian_product(&p2, &p2);
        assert_eq!(p.vertex_count(), 4);
        assert_eq!(p.edge_count(), 4);
        assert!((0..4).all(|v| p.degree(v) == 2));
    }

    #[test]
    fn torus_c5_c5_is_four_regular() {
        let c5 = cycle(5).unwrap();
        let p = cartesian_product(&c5, &c5);
        assert_eq!(p.vertex_count(), 25);
        assert_eq!(p.edge_count(), 50);
        assert!((0..25).all(|v| p.degree(v) == 4));
    }

    #[test]
    fn product_distance_splits_over_factors() {
        let g = cycle(5).unwrap();
        let h = path(4).unwrap();
        let p = cartesian_product(&g, &h);
        let (dg, dh, dp) = (
            DistanceMatrix::compute(&g),
            DistanceMatrix::compute(&h),
            DistanceMatrix::compute(&p),
        );
        let nh = h.vertex_count();
        for a in 0..5 {
            for x in 0..4 {
                for b in 0..5 {
                    for y in 0..4 {
                        assert_eq!(dp.get(a * nh + x, b * nh + y), dg.get(a, b) + dh.get(x, y));
                    }
                }
            }
        }
    }
}
