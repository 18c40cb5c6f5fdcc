//! Finite simple undirected graphs with indexed vertices.
//!
//! Vertices are plain indices; labels are kept in a parallel table and never
//! consulted by the algorithms here.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::Gf2Matrix;

pub type VertexId = usize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<VertexId>>,
    labels: Vec<String>,
}

/// JSON form: `{ "n": .., "labels": [..], "edges": [[i, j], ..] }` with `i < j`
/// and edges sorted.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphJson {
    pub n: usize,
    pub labels: Vec<String>,
    pub edges: Vec<[usize; 2]>,
}

impl Graph {
    /// Builds a graph from an edge list. Loops and repeated edges are rejected.
    pub fn from_edges(labels: Vec<String>, edges: &[(VertexId, VertexId)]) -> Result<Self> {
        let n = labels.len();
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(Error::InvalidVertex(u));
            }
            if v >= n {
                return Err(Error::InvalidVertex(v));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (v, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if list.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!("repeated edge at {v}")));
            }
        }
        Ok(Self { adj, labels })
    }

    /// Builds a graph from a neighbour function, keeping each edge once.
    pub fn from_neighbor_fn<F>(labels: Vec<String>, mut nbrs: F) -> Result<Self>
    where
        F: FnMut(VertexId) -> Vec<VertexId>,
    {
        let n = labels.len();
        let mut edges = Vec::new();
        for u in 0..n {
            for v in nbrs(u) {
                if u < v {
                    edges.push((u, v));
                } else if u == v {
                    return Err(Error::InvalidGraph(format!("self-loop at {u}")));
                }
            }
        }
        let g = Self::from_edges(labels, &edges)?;
        // Symmetry: every reported neighbour must report back.
        for u in 0..n {
            let mut mine = nbrs(u);
            mine.sort_unstable();
            if mine != g.adj[u] {
                return Err(Error::InvalidGraph(format!("asymmetric neighbourhood at {u}")));
            }
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn arc_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, v: VertexId) -> &str {
        &self.labels[v]
    }

    pub fn find_label(&self, label: &str) -> Option<VertexId> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn neighbors(&self, v: VertexId) -> Result<&[VertexId]> {
        self.adj.get(v).map(Vec::as_slice).ok_or(Error::InvalidVertex(v))
    }

    /// Unchecked neighbour slice for hot loops.
    #[inline]
    pub fn nbrs(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn is_regular(&self, k: usize) -> bool {
        self.adj.iter().all(|a| a.len() == k)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj.get(u).is_some_and(|a| a.binary_search(&v).is_ok())
    }

    /// Edges `(i, j)` with `i < j`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| u < v).map(|&v| (u, v)));
        }
        out
    }

    pub fn arcs(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.arc_count());
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().map(|&v| (u, v)));
        }
        out
    }

    /// BFS order and parent table from `root`; unreachable vertices have no parent.
    pub fn bfs(&self, root: VertexId) -> (Vec<VertexId>, Vec<Option<VertexId>>) {
        let n = self.vertex_count();
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::new();
        seen[root] = true;
        queue.push_back(root);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &v in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = Some(u);
                    queue.push_back(v);
                }
            }
        }
        (order, parent)
    }

    pub fn is_connected(&self) -> bool {
        match self.vertex_count() {
            0 => true,
            n => self.bfs(0).0.len() == n,
        }
    }

    pub fn is_bipartite(&self) -> bool {
        let mut colour = vec![None; self.vertex_count()];
        for s in 0..self.vertex_count() {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let cu = colour[u].unwrap();
                for &v in &self.adj[u] {
                    match colour[v] {
                        None => {
                            colour[v] = Some(!cu);
                            queue.push_back(v);
                        }
                        Some(cv) if cv == cu => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    pub fn adjacency_gf2(&self) -> Gf2Matrix {
        let n = self.vertex_count();
        let mut m = Gf2Matrix::zeros(n, n);
        for (u, list) in self.adj.iter().enumerate() {
            for &v in list {
                m.set(u, v, true);
            }
        }
        m
    }

    /// Whether `images` (a bijection given as an image table) preserves adjacency.
    pub fn is_automorphism(&self, images: &[VertexId]) -> bool {
        if images.len() != self.vertex_count() {
            return false;
        }
        let mut seen = vec![false; images.len()];
        for &i in images {
            if i >= images.len() || std::mem::replace(&mut seen[i], true) {
                return false;
            }
        }
        self.adj.iter().enumerate().all(|(u, list)| {
            list.len() == self.adj[images[u]].len() && list.iter().all(|&v| self.has_edge(images[u], images[v]))
        })
    }

    /// Lexicographic product with the edgeless graph on two vertices.
    ///
    /// Vertex `(v, x)` gets index `2v + x`; `(u, x) ~ (v, y)` iff `u ~ v`.
    pub fn lex_blowup(&self) -> Graph {
        let n = self.vertex_count();
        let mut adj = Vec::with_capacity(2 * n);
        let mut labels = Vec::with_capacity(2 * n);
        for v in 0..n {
            let list: Vec<_> = self.adj[v].iter().flat_map(|&u| [2 * u, 2 * u + 1]).collect();
            for x in 0..2 {
                adj.push(list.clone());
                labels.push(format!("({},{x})", self.labels[v]));
            }
        }
        Graph { adj, labels }
    }

    pub fn to_json_value(&self) -> GraphJson {
        GraphJson {
            n: self.vertex_count(),
            labels: self.labels.clone(),
            edges: self.edges().into_iter().map(|(u, v)| [u, v]).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_json_value()).expect("graph JSON is always serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GraphJson = serde_json::from_str(text)?;
        if doc.labels.len() != doc.n {
            return Err(Error::InvalidGraph(format!("{} labels for {} vertices", doc.labels.len(), doc.n)));
        }
        let edges: Vec<_> = doc.edges.iter().map(|e| (e[0], e[1])).collect();
        Self::from_edges(doc.labels, &edges)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for (v, l) in self.labels.iter().enumerate() {
            let _ = writeln!(out, "  {v} [label=\"{}\"];", l.replace('"', "\\\""));
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }
}

/// The complete graph on `n` vertices labelled `0..n`.
pub fn complete(n: usize) -> Graph {
    let labels = (0..n).map(|i| i.to_string()).collect();
    let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Graph::from_edges(labels, &edges).expect("complete graph is simple")
}

pub fn edgeless(n: usize) -> Graph {
    Graph::from_edges((0..n).map(|i| i.to_string()).collect(), &[]).expect("edgeless graph is simple")
}
