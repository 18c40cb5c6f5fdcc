//! Regular covers derived from voltage assignments in `Z_n^4`, lifting of base
//! automorphisms, and the quotient chain `MK → Q_3 → K_4`.
//!
//! Voltages are written additively. The derived cover has vertex set
//! `V(base) × Z_n^4` with `(u, x) ~ (v, x + ζ(u, v))`. Cover vertex `(u, x)`
//! has index `u·n^4 + code(x)`, where `code` reads the coordinates as base-n
//! digits with `x_1` most significant.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::mk::{build_mk, RElement};
use crate::perm::{Perm, PermGroup};

pub const RANK: usize = 4;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct ZnVec {
    pub coords: [u32; RANK],
    pub n: u32,
}

impl ZnVec {
    pub fn zero(n: u32) -> Self {
        Self { coords: [0; RANK], n }
    }

    pub fn unit(n: u32, i: usize) -> Self {
        let mut v = Self::zero(n);
        v.coords[i] = 1 % n;
        v
    }

    /// Reads integer coordinates modulo `n`.
    pub fn from_ints(n: u32, c: [i64; RANK]) -> Self {
        Self { coords: c.map(|x| x.rem_euclid(n as i64) as u32), n }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn code(&self) -> usize {
        self.coords.iter().fold(0usize, |acc, &c| acc * self.n as usize + c as usize)
    }

    pub fn from_code(n: u32, mut code: usize) -> Self {
        let mut c = [0u32; RANK];
        for slot in c.iter_mut().rev() {
            *slot = (code % n as usize) as u32;
            code /= n as usize;
        }
        ZnVec { coords: c, n }
    }
}

impl fmt::Debug for ZnVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coords)
    }
}

impl Add for ZnVec {
    type Output = ZnVec;

    fn add(self, o: ZnVec) -> ZnVec {
        debug_assert_eq!(self.n, o.n);
        let mut c = self.coords;
        for (x, y) in c.iter_mut().zip(o.coords) {
            *x = (*x + y) % self.n;
        }
        ZnVec { coords: c, n: self.n }
    }
}

impl Neg for ZnVec {
    type Output = ZnVec;

    fn neg(self) -> ZnVec {
        ZnVec { coords: self.coords.map(|x| (self.n - x) % self.n), n: self.n }
    }
}

impl Sub for ZnVec {
    type Output = ZnVec;

    fn sub(self, o: ZnVec) -> ZnVec {
        self + (-o)
    }
}

/// A 4×4 matrix over `Z_n` acting on column vectors.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ZnMat {
    pub rows: [[u32; RANK]; RANK],
    #[serde(skip)]
    pub n: u32,
}

impl ZnMat {
    pub fn identity(n: u32) -> Self {
        let mut rows = [[0; RANK]; RANK];
        for (i, r) in rows.iter_mut().enumerate() {
            r[i] = 1 % n;
        }
        Self { rows, n }
    }

    pub fn from_columns(n: u32, cols: [ZnVec; RANK]) -> Self {
        let mut rows = [[0; RANK]; RANK];
        for (j, c) in cols.iter().enumerate() {
            for (row, &x) in rows.iter_mut().zip(&c.coords) {
                row[j] = x;
            }
        }
        Self { rows, n }
    }

    pub fn apply(&self, v: ZnVec) -> ZnVec {
        let n = self.n as u64;
        let mut out = [0u32; RANK];
        for (i, o) in out.iter_mut().enumerate() {
            let s: u64 = (0..RANK).map(|j| self.rows[i][j] as u64 * v.coords[j] as u64).sum();
            *o = (s % n) as u32;
        }
        ZnVec { coords: out, n: self.n }
    }

    pub fn mul(&self, o: &ZnMat) -> ZnMat {
        let n = self.n as u64;
        let mut rows = [[0u32; RANK]; RANK];
        for (i, r) in rows.iter_mut().enumerate() {
            for (j, x) in r.iter_mut().enumerate() {
                let s: u64 = (0..RANK).map(|k| self.rows[i][k] as u64 * o.rows[k][j] as u64).sum();
                *x = (s % n) as u32;
            }
        }
        ZnMat { rows, n: self.n }
    }

    /// Determinant reduced modulo `n`.
    pub fn det_mod(&self) -> u32 {
        let m: Vec<Vec<i128>> = self.rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
        det(&m).rem_euclid(self.n as i128) as u32
    }

    pub fn is_invertible(&self) -> bool {
        gcd(self.det_mod() as u64, self.n as u64) == 1
    }
}

impl fmt::Debug for ZnMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} mod {}", self.rows, self.n)
    }
}

fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        k => (0..k)
            .map(|j| {
                let minor: Vec<Vec<i128>> = m[1..]
                    .iter()
                    .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, &x)| x).collect())
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[derive(Debug, Clone)]
pub struct VoltageAssignment {
    base: Graph,
    n: u32,
    arcs: HashMap<(VertexId, VertexId), ZnVec>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VoltageArcJson {
    pub from: String,
    pub to: String,
    pub voltage: [u32; RANK],
}

/// `{ "n": n, "arcs": [ { "from", "to", "voltage" } ] }`, nonzero voltages only.
#[derive(Debug, Clone, Serialize)]
pub struct VoltageTableJson {
    pub n: u32,
    pub arcs: Vec<VoltageArcJson>,
}

impl VoltageAssignment {
    /// Assigns the given voltages to arcs and their negatives to the reversed
    /// arcs; all other arcs get the zero voltage.
    pub fn new(base: Graph, n: u32, voltages: &[((VertexId, VertexId), ZnVec)]) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidModulus { min: 1, got: n });
        }
        let mut arcs = HashMap::new();
        for &((u, v), x) in voltages {
            if !base.has_edge(u, v) {
                return Err(Error::InvalidVoltage(format!("({u}, {v}) is not an arc")));
            }
            if x.n != n {
                return Err(Error::InvalidVoltage(format!("voltage modulus {} differs from {n}", x.n)));
            }
            for (key, val) in [((u, v), x), ((v, u), x.neg())] {
                if let Some(old) = arcs.insert(key, val) {
                    if old != val {
                        return Err(Error::InvalidVoltage(format!("conflicting voltages on {key:?}")));
                    }
                }
            }
        }
        arcs.retain(|_, x: &mut ZnVec| !x.is_zero());
        Ok(Self { base, n, arcs })
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn modulus(&self) -> u32 {
        self.n
    }

    pub fn voltage(&self, u: VertexId, v: VertexId) -> ZnVec {
        self.arcs.get(&(u, v)).copied().unwrap_or(ZnVec::zero(self.n))
    }

    pub fn is_inverse_consistent(&self) -> bool {
        self.base.arcs().iter().all(|&(u, v)| self.voltage(v, u) == self.voltage(u, v).neg())
    }

    /// BFS tree over zero-voltage arcs rooted at vertex 0, as a parent table.
    /// Fails unless the tree spans the base graph.
    pub fn normalising_tree(&self) -> Result<Vec<Option<VertexId>>> {
        let n = self.base.vertex_count();
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = queue.pop_front() {
            for &v in self.base.nbrs(u) {
                if !seen[v] && self.voltage(u, v).is_zero() {
                    seen[v] = true;
                    parent[v] = Some(u);
                    reached += 1;
                    queue.push_back(v);
                }
            }
        }
        if reached != n {
            return Err(Error::InvalidVoltage("zero-voltage arcs do not span the base graph".into()));
        }
        Ok(parent)
    }

    pub fn is_normalised(&self) -> bool {
        self.normalising_tree().is_ok()
    }

    /// Closed walks `root → u → v → root` through each cotree edge `{u, v}`.
    pub fn fundamental_cycles(&self) -> Result<Vec<Vec<VertexId>>> {
        let parent = self.normalising_tree()?;
        let path_to_root = |mut x: VertexId| {
            let mut p = vec![x];
            while let Some(y) = parent[x] {
                p.push(y);
                x = y;
            }
            p
        };
        let mut out = Vec::new();
        for (u, v) in self.base.edges() {
            if parent[v] == Some(u) || parent[u] == Some(v) {
                continue;
            }
            let mut walk = path_to_root(u);
            walk.reverse();
            walk.extend(path_to_root(v));
            out.push(walk);
        }
        Ok(out)
    }

    pub fn walk_voltage(&self, walk: &[VertexId]) -> ZnVec {
        walk.windows(2).fold(ZnVec::zero(self.n), |acc, w| acc.add(self.voltage(w[0], w[1])))
    }

    pub fn to_json_value(&self) -> VoltageTableJson {
        let arcs = self
            .base
            .arcs()
            .into_iter()
            .filter(|&(u, v)| !self.voltage(u, v).is_zero())
            .map(|(u, v)| VoltageArcJson {
                from: self.base.label(u).to_string(),
                to: self.base.label(v).to_string(),
                voltage: self.voltage(u, v).coords,
            })
            .collect();
        VoltageTableJson { n: self.n, arcs }
    }
}

/// The voltage assignment on the Möbius–Kantor graph whose rim arcs carry
/// `e_1, e_2, e_3, e_4, -e_1, -e_2, -e_3, -e_4`.
pub fn mk_voltage(n: u32) -> Result<VoltageAssignment> {
    if n < 1 {
        return Err(Error::InvalidModulus { min: 1, got: n });
    }
    let mk = build_mk();
    let v = |w: &str| RElement::parse(w).map(RElement::index);
    let rim = [
        ("id", "c", 0, 1),
        ("c", "bc", 1, 1),
        ("bc", "bz", 2, 1),
        ("bz", "z", 3, 1),
        ("z", "cz", 0, -1),
        ("cz", "bcz", 1, -1),
        ("bcz", "b", 2, -1),
        ("b", "id", 3, -1),
    ];
    let mut voltages = Vec::new();
    for (from, to, i, sign) in rim {
        let mut c = [0i64; RANK];
        c[i] = sign;
        voltages.push(((v(from)?, v(to)?), ZnVec::from_ints(n, c)));
    }
    VoltageAssignment::new(mk, n, &voltages)
}

#[derive(Debug, Clone)]
pub struct CoverVertex {
    pub base_vertex: VertexId,
    pub fiber_coord: ZnVec,
}

#[derive(Debug, Clone)]
pub struct Cover {
    voltage: VoltageAssignment,
    graph: Graph,
    fibre: usize,
}

pub fn derived_cover(voltage: &VoltageAssignment) -> Result<Cover> {
    if !voltage.is_inverse_consistent() {
        return Err(Error::InvalidVoltage("voltage is not inverse-consistent".into()));
    }
    let n = voltage.n;
    let fibre = (n as usize).pow(RANK as u32);
    let base = &voltage.base;
    let mut labels = Vec::with_capacity(base.vertex_count() * fibre);
    for u in 0..base.vertex_count() {
        for code in 0..fibre {
            let c = ZnVec::from_code(n, code).coords;
            labels.push(format!("({},{},{},{},{})", base.label(u), c[0], c[1], c[2], c[3]));
        }
    }
    let graph = Graph::from_neighbor_fn(labels, |i| {
        let (u, x) = (i / fibre, ZnVec::from_code(n, i % fibre));
        base.nbrs(u).iter().map(|&v| v * fibre + x.add(voltage.voltage(u, v)).code()).collect()
    })?;
    Ok(Cover { voltage: voltage.clone(), graph, fibre })
}

/// Whether base automorphism `g` lifts, and if so the induced automorphism of `Z_n^4`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Liftability {
    Lifts(ZnMat),
    NoLift(String),
}

/// Determines the voltage-group automorphism `φ_g` with `ζ(C^g) = φ_g(ζ(C))`
/// on every fundamental cycle `C`, reading `φ_g(e_i)` off the cycles whose
/// voltage is `±e_i`.
pub fn induced_voltage_aut(voltage: &VoltageAssignment, g: &Perm) -> Result<Liftability> {
    let base = &voltage.base;
    if !base.is_automorphism(g.images()) {
        return Err(Error::NotAutomorphism);
    }
    let n = voltage.n;
    let cycles = voltage.fundamental_cycles()?;
    let pairs: Vec<(ZnVec, ZnVec)> = cycles
        .iter()
        .map(|c| {
            let image: Vec<_> = c.iter().map(|&x| g.apply(x)).collect();
            (voltage.walk_voltage(c), voltage.walk_voltage(&image))
        })
        .collect();
    let mut cols = [ZnVec::zero(n); RANK];
    for (i, col) in cols.iter_mut().enumerate() {
        let e = ZnVec::unit(n, i);
        // A cycle carrying -e_i is used in reverse.
        *col = if let Some((_, img)) = pairs.iter().find(|(v, _)| *v == e) {
            *img
        } else if let Some((_, img)) = pairs.iter().find(|(v, _)| *v == e.neg()) {
            img.neg()
        } else {
            return Err(Error::InvalidVoltage(format!("no fundamental cycle carries e_{}", i + 1)));
        };
    }
    let phi = ZnMat::from_columns(n, cols);
    for (k, (v, img)) in pairs.iter().enumerate() {
        if phi.apply(*v) != *img {
            return Ok(Liftability::NoLift(format!(
                "fundamental cycle {k} maps to {img:?}, expected {:?}",
                phi.apply(*v)
            )));
        }
    }
    if !phi.is_invertible() {
        return Ok(Liftability::NoLift(format!("induced map {phi:?} is not invertible")));
    }
    Ok(Liftability::Lifts(phi))
}

/// A cover automorphism `(u, x) ↦ (g(u), φ·x + ψ(u))`.
#[derive(Debug, Clone)]
pub struct LiftedAut {
    pub cover_perm: Perm,
    pub base_perm: Perm,
    pub voltage_aut: ZnMat,
    pub shift: Vec<ZnVec>,
}

impl Cover {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn voltage(&self) -> &VoltageAssignment {
        &self.voltage
    }

    pub fn base(&self) -> &Graph {
        &self.voltage.base
    }

    pub fn modulus(&self) -> u32 {
        self.voltage.n
    }

    pub fn fibre_size(&self) -> usize {
        self.fibre
    }

    pub fn vertex_count(&self) -> usize {
        self.graph.vertex_count()
    }

    pub fn index(&self, base_vertex: VertexId, x: ZnVec) -> VertexId {
        base_vertex * self.fibre + x.code()
    }

    pub fn decode(&self, v: VertexId) -> CoverVertex {
        CoverVertex { base_vertex: v / self.fibre, fiber_coord: ZnVec::from_code(self.voltage.n, v % self.fibre) }
    }

    pub fn projection(&self, v: VertexId) -> VertexId {
        v / self.fibre
    }

    /// Looks up a vertex by base label and integer coordinates read mod n.
    pub fn vertex_by_label(&self, base_label: &str, coords: [i64; RANK]) -> Result<VertexId> {
        let u = self.base().find_label(base_label).ok_or_else(|| Error::UnknownLabel(base_label.into()))?;
        Ok(self.index(u, ZnVec::from_ints(self.voltage.n, coords)))
    }

    /// Lift of `g` with shift `t` at base vertex 0; fails if the lifting
    /// equation breaks on any arc.
    pub fn lift_automorphism(&self, g: &Perm, phi: &ZnMat, t: ZnVec) -> Result<LiftedAut> {
        let base = self.base();
        let z = &self.voltage;
        let nb = base.vertex_count();
        let mut shift: Vec<Option<ZnVec>> = vec![None; nb];
        shift[0] = Some(t);
        let (order, parent) = base.bfs(0);
        if order.len() != nb {
            return Err(Error::InvalidGraph("base graph is disconnected".into()));
        }
        let step = |psi: ZnVec, u: VertexId, v: VertexId| {
            psi.add(z.voltage(g.apply(u), g.apply(v))).sub(phi.apply(z.voltage(u, v)))
        };
        for &v in &order[1..] {
            let u = parent[v].unwrap();
            shift[v] = Some(step(shift[u].unwrap(), u, v));
        }
        let shift: Vec<ZnVec> = shift.into_iter().map(Option::unwrap).collect();
        for (u, v) in base.arcs() {
            if step(shift[u], u, v) != shift[v] {
                return Err(Error::LiftValidation(u, v));
            }
        }
        let images = (0..self.vertex_count())
            .map(|i| {
                let CoverVertex { base_vertex: u, fiber_coord: x } = self.decode(i);
                self.index(g.apply(u), phi.apply(x).add(shift[u]))
            })
            .collect();
        let cover_perm = Perm::from_images(images)?;
        Ok(LiftedAut { cover_perm, base_perm: g.clone(), voltage_aut: *phi, shift })
    }

    /// Lift of `g` with zero shift at base vertex 0.
    pub fn lift(&self, g: &Perm) -> Result<LiftedAut> {
        match induced_voltage_aut(&self.voltage, g)? {
            Liftability::Lifts(phi) => self.lift_automorphism(g, &phi, ZnVec::zero(self.voltage.n)),
            Liftability::NoLift(why) => Err(Error::NoLift(why)),
        }
    }

    /// The unique lift of `g` sending cover vertex `v` to `target`; `target`
    /// must lie in the fibre over `g` of `v`'s base vertex.
    pub fn lift_mapping(&self, g: &Perm, v: VertexId, target: VertexId) -> Result<LiftedAut> {
        let CoverVertex { base_vertex: u, fiber_coord: x } = self.decode(v);
        let CoverVertex { base_vertex: w, fiber_coord: y } = self.decode(target);
        if g.apply(u) != w {
            return Err(Error::Construction(format!("base automorphism sends {u} to {}, not {w}", g.apply(u))));
        }
        let first = self.lift(g)?;
        // Lifts of g differ by a constant shift; choose it so that v lands on target.
        let d = y.sub(first.voltage_aut.apply(x)).sub(first.shift[u]);
        let pinned = self.lift_automorphism(g, &first.voltage_aut, first.shift[0].add(d))?;
        debug_assert_eq!(pinned.cover_perm.apply(v), target);
        Ok(pinned)
    }

    /// The unique lift of `g` fixing cover vertex `v`; `g` must fix `v`'s base vertex.
    pub fn lift_fixing(&self, g: &Perm, v: VertexId) -> Result<LiftedAut> {
        self.lift_mapping(g, v, v)
    }

    /// Deck transformation `(u, x) ↦ (u, x + t)`.
    pub fn deck(&self, t: ZnVec) -> LiftedAut {
        let id = Perm::identity(self.base().vertex_count());
        self.lift_automorphism(&id, &ZnMat::identity(self.voltage.n), t).expect("translations always lift")
    }

    pub fn deck_generators(&self) -> Vec<LiftedAut> {
        (0..RANK).map(|i| self.deck(ZnVec::unit(self.voltage.n, i))).collect()
    }

    /// The lift of `⟨base_gens⟩`: lifts of each generator plus the deck group.
    pub fn lifted_group(&self, base_gens: &[Perm]) -> Result<(Vec<LiftedAut>, PermGroup)> {
        let mut lifts = base_gens.iter().map(|g| self.lift(g)).collect::<Result<Vec<_>>>()?;
        lifts.extend(self.deck_generators());
        let perms = lifts.iter().map(|l| l.cover_perm.clone()).collect();
        Ok((lifts, PermGroup::new(self.vertex_count(), perms)?))
    }

    /// Whether `p` maps fibres to fibres; returns the projected base permutation.
    pub fn projects_to(&self, p: &Perm) -> Option<Perm> {
        let nb = self.base().vertex_count();
        let mut base = vec![usize::MAX; nb];
        for i in 0..self.vertex_count() {
            let (u, w) = (self.projection(i), self.projection(p.apply(i)));
            if base[u] == usize::MAX {
                base[u] = w;
            } else if base[u] != w {
                return None;
            }
        }
        Perm::from_images(base).ok()
    }
}

/// Whether `proj` is a covering projection: surjective onto the base, maps
/// edges to edges, and is a bijection from each neighbourhood onto the
/// neighbourhood of the image.
pub fn is_covering_projection(cover: &Graph, base: &Graph, proj: &[VertexId]) -> bool {
    if proj.len() != cover.vertex_count() {
        return false;
    }
    let mut hit = vec![false; base.vertex_count()];
    for v in 0..cover.vertex_count() {
        hit[proj[v]] = true;
        let mut imgs: Vec<_> = cover.nbrs(v).iter().map(|&u| proj[u]).collect();
        imgs.sort_unstable();
        if imgs != base.nbrs(proj[v]) {
            return false;
        }
    }
    hit.into_iter().all(|h| h)
}

fn quotient(g: &Graph, classes: usize, labels: Vec<String>, proj: &[VertexId]) -> Result<Graph> {
    debug_assert_eq!(labels.len(), classes);
    let mut edges: Vec<(usize, usize)> =
        g.edges().into_iter().map(|(u, v)| (proj[u].min(proj[v]), proj[u].max(proj[v]))).collect();
    edges.sort_unstable();
    edges.dedup();
    Graph::from_edges(labels, &edges)
}

/// Quotient of the Möbius–Kantor graph by the central subgroup `⟨z⟩`. The
/// result is the cube with vertex `4ea + 2eb + ec` labelled by its bits.
pub fn quotient_to_q3(mk: &Graph) -> Result<(Graph, Vec<VertexId>)> {
    let proj = mk
        .labels()
        .iter()
        .map(|l| RElement::parse(l).map(|e| (4 * e.ea + 2 * e.eb + e.ec) as usize))
        .collect::<Result<Vec<_>>>()?;
    let labels = (0..8).map(|i| format!("{:03b}", i)).collect();
    Ok((quotient(mk, 8, labels, &proj)?, proj))
}

/// Quotient of the cube by the antipodal map; the class of `b` is indexed by
/// the representative with leading bit 0.
pub fn quotient_to_k4(q3: &Graph) -> Result<(Graph, Vec<VertexId>)> {
    let proj = q3
        .labels()
        .iter()
        .map(|l| {
            let bits = usize::from_str_radix(l, 2).map_err(|_| Error::UnknownLabel(l.clone()))?;
            if l.len() != 3 {
                return Err(Error::UnknownLabel(l.clone()));
            }
            Ok(if bits & 4 == 0 { bits } else { bits ^ 7 })
        })
        .collect::<Result<Vec<_>>>()?;
    let labels = (0..4).map(|i| format!("{:03b}|{:03b}", i, i ^ 7)).collect();
    Ok((quotient(q3, 4, labels, &proj)?, proj))
}
