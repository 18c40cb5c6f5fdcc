//! 1-eigenspaces over F2, the 72-vertex support `S_1`, and the greedy
//! construction of independent eigenvectors from translates of one vector.
//!
//! A vector `x ∈ F2^V` is a 1-eigenvector iff `(A + I)x = 0`, i.e. every
//! vertex in the support has an odd number of support neighbours and every
//! other vertex an even number.

use std::collections::HashSet;

use serde::Serialize;

use crate::cover::Cover;
use crate::error::{Error, Result};
use crate::gf2::{kernel_basis, Gf2Basis, Gf2Vector};
use crate::graph::{Graph, VertexId};
use crate::mk::RElement;
use crate::perm::{Perm, PermGroup};

const S1_FIXTURE: &str = include_str!("../data/s1.txt");

#[derive(Debug, Clone)]
pub struct EigenReport {
    pub n: Option<u32>,
    pub vertex_count: usize,
    pub dim: usize,
    pub basis: Gf2Basis,
}

/// Basis of `ker(A + I)` over F2.
pub fn one_eigenspace(g: &Graph) -> EigenReport {
    let mut m = g.adjacency_gf2();
    m.add_identity();
    let basis = kernel_basis(&m);
    EigenReport { n: None, vertex_count: g.vertex_count(), dim: basis.dim(), basis }
}

pub fn cover_eigenspace(cover: &Cover) -> EigenReport {
    EigenReport { n: Some(cover.modulus()), ..one_eigenspace(cover.graph()) }
}

/// Conjectured dimension of the 1-eigenspace of `Λ_n`: `|V|/8 + 2` for odd
/// `n`, `|V|/8 + 8` for even `n`.
pub fn formula_dimension(n: u32) -> usize {
    let v = 16 * (n as usize).pow(4);
    v / 8 + if n % 2 == 1 { 2 } else { 8 }
}

/// JSON summary: `{ "n", "vertices", "dim", "formula_expected", "matches_formula" }`.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct EigenSummary {
    pub n: u32,
    pub vertices: usize,
    pub dim: usize,
    pub formula_expected: usize,
    pub matches_formula: bool,
}

impl EigenReport {
    pub fn summary(&self, n: u32) -> EigenSummary {
        let expected = formula_dimension(n);
        EigenSummary {
            n,
            vertices: self.vertex_count,
            dim: self.dim,
            formula_expected: expected,
            matches_formula: self.dim == expected,
        }
    }
}

/// One fixture line: a base word and four integer coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct S1Entry {
    pub word: String,
    pub coords: [i64; 4],
}

pub fn parse_support_fixture(text: &str) -> Result<Vec<S1Entry>> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 5 {
            return Err(Error::Fixture(format!("line {}: expected 5 fields, got {}", k + 1, fields.len())));
        }
        RElement::parse(fields[0])?;
        let mut coords = [0i64; 4];
        for (c, f) in coords.iter_mut().zip(&fields[1..]) {
            *c = f.parse().map_err(|_| Error::Fixture(format!("line {}: bad coordinate {f:?}", k + 1)))?;
        }
        out.push(S1Entry { word: fields[0].to_string(), coords });
    }
    let distinct: HashSet<_> = out.iter().collect();
    if distinct.len() != out.len() {
        return Err(Error::Fixture("duplicate entries".into()));
    }
    Ok(out)
}

pub fn s1_entries() -> Vec<S1Entry> {
    let entries = parse_support_fixture(S1_FIXTURE).expect("bundled fixture parses");
    assert_eq!(entries.len(), 72, "bundled fixture must list 72 vertices");
    entries
}

/// A set of vertices, viewed as an indicator vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportSet {
    pub vertices: Vec<VertexId>,
}

impl SupportSet {
    pub fn new(mut vertices: Vec<VertexId>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        Self { vertices }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    pub fn indicator(&self, len: usize) -> Gf2Vector {
        Gf2Vector::from_support(len, self.vertices.iter().copied())
    }
}

/// `S_1` inside `Λ_n`, coordinates read mod n. Needs `n ≥ 3`.
pub fn s1_vertices(cover: &Cover) -> Result<SupportSet> {
    let n = cover.modulus();
    if n < 3 {
        return Err(Error::InvalidModulus { min: 3, got: n });
    }
    let vs = s1_entries().iter().map(|e| cover.vertex_by_label(&e.word, e.coords)).collect::<Result<Vec<_>>>()?;
    let set = SupportSet::new(vs);
    if set.len() != 72 {
        return Err(Error::Fixture(format!("S_1 collapses to {} vertices mod {n}", set.len())));
    }
    Ok(set)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParityViolation {
    pub vertex: VertexId,
    pub label: String,
    pub in_set: bool,
    pub neighbours_in_set: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SupportCheck {
    pub ok: bool,
    pub members_odd: usize,
    pub others_even: usize,
    pub violations: Vec<ParityViolation>,
}

/// Checks the odd/even neighbour-count criterion at every vertex.
pub fn verify_eigen_support(g: &Graph, s: &SupportSet) -> SupportCheck {
    let mut members_odd = 0;
    let mut others_even = 0;
    let mut violations = Vec::new();
    for v in 0..g.vertex_count() {
        let inside = s.contains(v);
        let count = g.nbrs(v).iter().filter(|&&u| s.contains(u)).count();
        match (inside, count % 2 == 1) {
            (true, true) => members_odd += 1,
            (false, false) => others_even += 1,
            _ => violations.push(ParityViolation {
                vertex: v,
                label: g.label(v).to_string(),
                in_set: inside,
                neighbours_in_set: count,
            }),
        }
    }
    SupportCheck { ok: violations.is_empty(), members_odd, others_even, violations }
}

/// `x^g`, the vector with `x^g(v^g) = x(v)`.
pub fn permute_vector(x: &Gf2Vector, g: &Perm) -> Gf2Vector {
    Gf2Vector::from_support(x.len(), x.support().into_iter().map(|v| g.apply(v)))
}

pub fn is_one_eigenvector(g: &Graph, x: &Gf2Vector) -> bool {
    (0..g.vertex_count()).all(|v| {
        let s = g.nbrs(v).iter().filter(|&&u| x.get(u)).count();
        x.get(v) == (s % 2 == 1)
    })
}

#[derive(Debug, Clone)]
pub struct GreedyBasis {
    pub basis: Gf2Basis,
    pub vectors: Vec<Gf2Vector>,
    /// `vectors[i] = x1^{witnesses[i]}`.
    pub witnesses: Vec<Perm>,
}

impl GreedyBasis {
    pub fn size(&self) -> usize {
        self.vectors.len()
    }
}

/// Grows `{x1}` by translates `x1^g` until the supports cover every vertex.
///
/// Each step takes the least uncovered vertex `v` and an element `g` mapping
/// a fixed support vertex of `x1` to `v` (read off a Schreier tree of the
/// transitive action), so `v ∈ supp(x1^g)` and independence is automatic.
pub fn greedy_orbit_basis(g: &Graph, x1: &Gf2Vector, group: &PermGroup) -> Result<GreedyBasis> {
    let n = g.vertex_count();
    if x1.len() != n || group.degree() != n {
        return Err(Error::DimensionMismatch { expected: n, got: x1.len().min(group.degree()) });
    }
    if !is_one_eigenvector(g, x1) {
        return Err(Error::Construction("seed vector is not a 1-eigenvector".into()));
    }
    let Some(anchor) = x1.leading() else {
        return Err(Error::Construction("seed vector is zero".into()));
    };
    let tree = group.schreier_tree(anchor);
    if tree.orbit().len() != n {
        return Err(Error::Intransitive);
    }
    let mut covered = x1.clone();
    let mut basis = Gf2Basis::empty(n);
    basis.insert(x1.clone())?;
    let mut vectors = vec![x1.clone()];
    let mut witnesses = vec![Perm::identity(n)];
    while let Some(v) = (0..n).find(|&v| !covered.get(v)) {
        let h = tree.element_to(group.generators(), v).expect("transitive action reaches every vertex");
        let x = permute_vector(x1, &h);
        debug_assert!(x.get(v));
        if !basis.insert(x.clone())? {
            return Err(Error::Construction(format!("translate covering vertex {v} is dependent")));
        }
        for u in x.support() {
            covered.set(u, true);
        }
        vectors.push(x);
        witnesses.push(h);
    }
    Ok(GreedyBasis { basis, vectors, witnesses })
}
