//! All-pairs BFS distances and geodesic steps.

use crate::graph::{Graph, VertexId};
use std::collections::VecDeque;

/// Dense all-pairs distance table computed by BFS from every vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistanceMatrix {
    pub fn compute(graph: &Graph) -> DistanceMatrix {
        let n = graph.vertex_count();
        let mut d = vec![u32::MAX; n * n];
        let mut queue = VecDeque::new();
        for source in 0..n {
            let row = &mut d[source * n..(source + 1) * n];
            row[source] = 0;
            queue.push_back(source);
            while let Some(u) = queue.pop_front() {
                for &v in graph.neighbors(u) {
                    if row[v] == u32::MAX {
                        row[v] = row[u] + 1;
                        queue.push_back(v);
                    }
                }
            }
        }
        DistanceMatrix { n, d }
    }

    pub fn get(&self, u: VertexId, v: VertexId) -> u32 {
        self.d[u * self.n + v]
    }

    pub fn diameter(&self) -> u32 {
        self.d.iter().copied().max().unwrap_or(0)
    }
}

/// Neighbors of `from` that are one step closer to `to`, in increasing order.
/// Nonempty whenever `from != to`; stepping to a vertex equal to `to` is the
/// capturing case and callers must not ask for a step from `to` itself.
pub fn geodesic_successors(
    graph: &Graph,
    dist: &DistanceMatrix,
    from: VertexId,
    to: VertexId,
) -> Vec<VertexId> {
    assert_ne!(from, to, "no geodesic step from a vertex to itself");
    let target = dist.get(from, to) - 1;
    graph
        .neighbors(from)
        .iter()
        .copied()
        .filter(|&w| dist.get(w, to) == target)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    #[test]
    fn path_distances_are_index_differences() {
        let g = families::path(5).unwrap();
        let d = DistanceMatrix::compute(&g);
        for u in 0..5 {
            for v in 0..5 {
                assert_eq!(d.get(u, v), (u as i64 - v as i64).unsigned_abs() as u32);
            }
        }
        assert_eq!(d.diameter(), 4);
    }

    #[test]
    fn even_cycle_has_two_geodesic_successors_at_the_antipode() {
        let g = families::cycle(4).unwrap();
        let d = DistanceMatrix::compute(&g);
        assert_eq!(geodesic_successors(&g, &d, 0, 2), vec![1, 3]);
        assert_eq!(geodesic_successors(&g, &d, 1, 2), vec![2]);
    }

    #[test]
    fn odd_cycle_geodesic_successors_are_unique() {
        let g = families::cycle(5).unwrap();
        let d = DistanceMatrix::compute(&g);
        for from in 0..5 {
            for to in 0..5 {
                if from != to {
                    assert_eq!(geodesic_successors(&g, &d, from, to).len(), 1);
                }
            }
        }
    }

    #[test]
    #[should_panic(expected = "no geodesic step")]
    fn geodesic_successors_reject_zero_length() {
        let g = families::cycle(4).unwrap();
        let d = DistanceMatrix::compute(&g);
        geodesic_successors(&g, &d, 2, 2);
    }
}
