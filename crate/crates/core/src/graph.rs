//! Undirected simple connected graphs with sorted adjacency lists, plus
//! edge-list parsing/serialization, DOT export, and the pendant and
//! subdivide-and-keep transforms.

use crate::error::GraphError;
use std::collections::VecDeque;
use std::fmt::Write as _;

pub type VertexId = usize;

/// Structural role of a vertex, attached by the generators that know it.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum VertexLabel {
    /// Plain index, used by the path/cycle/complete families.
    Index(usize),
    /// Bit vector of a hypercube vertex.
    Bits { value: usize, dim: usize },
    /// Coordinates in a Cartesian product, one id per factor.
    Product { left: VertexId, right: VertexId },
    /// The merge vertex of a petal graph.
    Hub,
    /// Interior petal vertex: copy and cycle indices are 1-based, pos is the
    /// clockwise distance from the hub.
    Petal {
        copy: usize,
        cycle: usize,
        pos: usize,
    },
}

impl VertexLabel {
    pub fn render(&self) -> String {
        match self {
            VertexLabel::Index(i) => i.to_string(),
            VertexLabel::Bits { value, dim } => (0..*dim)
                .rev()
                .map(|b| if value >> b & 1 == 1 { '1' } else { '0' })
                .collect(),
            VertexLabel::Product { left, right } => format!("({left},{right})"),
            VertexLabel::Hub => "u".to_string(),
            VertexLabel::Petal { copy, cycle, pos } => format!("{copy}.{cycle}.{pos}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<VertexId>>,
    edge_count: usize,
    labels: Option<Vec<VertexLabel>>,
}

impl Graph {
    /// Builds a graph from an explicit edge list, rejecting loops, duplicate
    /// edges, out-of-range endpoints, and disconnected results.
    pub fn from_edges(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Graph, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        for (u, list) in adj.iter().enumerate() {
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        let g = Graph {
            adj,
            edge_count: edges.len(),
            labels: None,
        };
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    /// Attaches labels; there must be exactly one distinct label per vertex.
    pub fn with_labels(mut self, labels: Vec<VertexLabel>) -> Result<Graph, GraphError> {
        if labels.len() != self.vertex_count() {
            return Err(GraphError::BadLabels);
        }
        let mut seen = std::collections::HashSet::new();
        if !labels.iter().all(|l| seen.insert(l)) {
            return Err(GraphError::BadLabels);
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Neighbors of `v` in increasing order.
    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as (u, v) pairs with u < v, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn labels(&self) -> Option<&[VertexLabel]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: VertexId) -> Option<&VertexLabel> {
        self.labels.as_ref().map(|l| &l[v])
    }

    fn is_connected(&self) -> bool {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    reached += 1;
                    queue.push_back(v);
                }
            }
        }
        reached == n
    }

    /// Parses the edge-list format: a `n m` header line followed by `m` lines
    /// `u v`, with `#` starting a comment and blank lines ignored.
    pub fn from_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse = |tok: &str| {
                tok.parse::<usize>().map_err(|_| GraphError::Parse {
                    line: idx + 1,
                    message: format!("expected a nonnegative integer, got {tok:?}"),
                })
            };
            let mut toks = line.split_whitespace();
            let (a, b) = match (toks.next(), toks.next(), toks.next()) {
                (Some(a), Some(b), None) => (parse(a)?, parse(b)?),
                _ => {
                    return Err(GraphError::Parse {
                        line: idx + 1,
                        message: "expected exactly two integers".to_string(),
                    })
                }
            };
            if header.is_none() {
                header = Some((a, b));
            } else {
                edges.push((a, b));
            }
        }
        let Some((n, m)) = header else {
            return Err(GraphError::Parse {
                line: 0,
                message: "missing `n m` header".to_string(),
            });
        };
        if edges.len() != m {
            return Err(GraphError::EdgeCountMismatch {
                expected: m,
                found: edges.len(),
            });
        }
        Graph::from_edges(n, &edges)
    }

    /// Serializes to the edge-list format; parsing the result reproduces the
    /// same adjacency structure (labels are not serialized).
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.vertex_count(), self.edge_count());
        for (u, v) in self.edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    /// Renders an undirected DOT graph, using labels when present.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph {\n");
        if let Some(labels) = self.labels() {
            for (v, label) in labels.iter().enumerate() {
                let _ = writeln!(out, "  {v} [label=\"{}\"];", label.render());
            }
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }

    /// Adds one pendant vertex per attachment point; the new vertex for
    /// `attach[i]` gets id `n + i`. Labels are dropped.
    pub fn add_pendants(&self, attach: &[VertexId]) -> Result<Graph, GraphError> {
        let n = self.vertex_count();
        for &v in attach {
            if v >= n {
                return Err(GraphError::VertexOutOfRange { vertex: v, n });
            }
        }
        let mut edges: Vec<_> = self.edges().collect();
        edges.extend(attach.iter().enumerate().map(|(i, &v)| (v, n + i)));
        Graph::from_edges(n + attach.len(), &edges)
    }

    /// Subdivides every edge with `k` fresh vertices while keeping the
    /// original edge alongside the new path. `k = 0` leaves the graph as is.
    pub fn subdivide_and_keep(&self, k: usize) -> Graph {
        if k == 0 {
            return self.clone();
        }
        let n = self.vertex_count();
        let mut edges: Vec<_> = self.edges().collect();
        let mut next = n;
        for (u, v) in self.edges().collect::<Vec<_>>() {
            let mut prev = u;
            for _ in 0..k {
                edges.push((prev, next));
                prev = next;
                next += 1;
            }
            edges.push((prev, v));
        }
        Graph::from_edges(next, &edges).expect("subdividing a valid graph stays valid")
    }
}
