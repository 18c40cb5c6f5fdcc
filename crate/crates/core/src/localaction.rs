//! The 6-valent graphs `Γ_n = Λ_n[K̄_2]` and the groups acting on them.
//!
//! A vertex `(v, ε)` of Γ has index `2v + ε`. Three groups are built from
//! second-coordinate flips by vectors of `E_1` (the 1-eigenspace of Λ over
//! GF(2)) together with lifted automorphisms of Λ:
//!
//! * `G1 = ⟨E_1, Ã⟩`, local action A4(6);
//! * `G2 = ⟨E_1, B̃⟩`, local action S4(6d);
//! * `G3 = ⟨G1, τσ⟩`, local action S4(6c),
//!
//! where σ is the pulled-back indicator of one vertex of K_4 and τ is a
//! reflection fixing the special vertex.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::cover::{derived_cover, mk_voltage, quotient_to_k4, quotient_to_q3, Cover, LiftedAut};
use crate::eigen::{cover_eigenspace, permute_vector};
use crate::error::{Error, Result};
use crate::gf2::{Gf2Basis, Gf2Vector};
use crate::graph::{Graph, VertexId};
use crate::mk::{
    a_elements, aut_a_generators, aut_b_generators, conjugate_to_vertex, induced_automorphism, rotate_abc, RElement,
};
use crate::perm::{all_perms, identify_degree6, minimal_blocks, Degree6Class, Perm, PermGroup, SchreierTree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Construction {
    G1,
    G2,
    G3,
}

impl Construction {
    pub const ALL: [Construction; 3] = [Construction::G1, Construction::G2, Construction::G3];

    /// Expected local action.
    pub fn target(self) -> Degree6Class {
        match self {
            Construction::G1 => Degree6Class::A4_6,
            Construction::G2 => Degree6Class::S4_6d,
            Construction::G3 => Degree6Class::S4_6c,
        }
    }

    /// Order of the top part of a vertex stabiliser, beyond `(E_1)_v`.
    pub fn top_order(self) -> u32 {
        match self {
            Construction::G1 => 3,
            Construction::G2 | Construction::G3 => 6,
        }
    }
}

impl fmt::Display for Construction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Γ-vertex index of `(v, ε)`.
pub fn gamma_vertex(v: VertexId, eps: u8) -> VertexId {
    2 * v + eps as usize
}

/// `(v, ε) ↦ (v, ε + x(v))` for any vector `x` on V(Λ); always an automorphism of Γ.
pub fn flip_perm(x: &Gf2Vector) -> Perm {
    let images = (0..2 * x.len()).map(|i| if x.get(i / 2) { i ^ 1 } else { i }).collect();
    Perm::from_images(images).expect("flip is an involution")
}

/// `(v, ε) ↦ (g̃(v), ε)`.
pub fn lift_as_gamma_perm(g: &LiftedAut) -> Perm {
    let p = &g.cover_perm;
    let images = (0..2 * p.degree()).map(|i| 2 * p.apply(i / 2) + (i & 1)).collect();
    Perm::from_images(images).expect("doubling a permutation")
}

pub struct GammaAction {
    pub n: u32,
    pub cover: Cover,
    pub gamma: Graph,
    pub e1_basis: Gf2Basis,
    /// Generators of B̃: lifts of the B generators, then the deck translations.
    pub lift_gens: Vec<LiftedAut>,
    /// Generators of Ã, in the same layout.
    pub a_lift_gens: Vec<LiftedAut>,
    /// Further generators on V(Γ), such as τσ.
    pub extra_gens: Vec<Perm>,
    a_set: HashSet<Perm>,
}

pub fn build_gamma(n: u32) -> Result<GammaAction> {
    let cover = derived_cover(&mk_voltage(n)?)?;
    let gamma = cover.graph().lex_blowup();
    let e1_basis = cover_eigenspace(&cover).basis;
    let (lift_gens, _) = cover.lifted_group(aut_b_generators().generators())?;
    let (a_lift_gens, _) = cover.lifted_group(aut_a_generators().generators())?;
    let action = GammaAction {
        n,
        cover,
        gamma,
        e1_basis,
        lift_gens,
        a_lift_gens,
        extra_gens: Vec::new(),
        a_set: a_elements().into_iter().collect(),
    };
    for g in &action.lift_gens {
        action.check_automorphism(&lift_as_gamma_perm(g))?;
    }
    Ok(action)
}

impl GammaAction {
    pub fn lambda(&self) -> &Graph {
        self.cover.graph()
    }

    pub fn e1_dim(&self) -> usize {
        self.e1_basis.dim()
    }

    /// `m = |V(Γ)|`.
    pub fn vertex_count(&self) -> usize {
        self.gamma.vertex_count()
    }

    pub fn check_automorphism(&self, p: &Perm) -> Result<()> {
        if p.degree() == self.gamma.vertex_count() && self.gamma.is_automorphism(p.images()) {
            Ok(())
        } else {
            Err(Error::NotAutomorphism)
        }
    }

    /// The Γ-action of `x ∈ E_1`.
    pub fn e1_as_perm(&self, x: &Gf2Vector) -> Result<Perm> {
        if !self.e1_basis.in_span(x)? {
            return Err(Error::Construction("vector is not in the 1-eigenspace".into()));
        }
        Ok(flip_perm(x))
    }

    pub fn is_in_a(&self, base: &Perm) -> bool {
        self.a_set.contains(base)
    }

    /// The six elements of B̃_v: lifts fixing `v` of the stabiliser in B of
    /// its base vertex, in a fixed order (even ones lie in Ã_v).
    pub fn stabiliser_lifts(&self, v: VertexId) -> Result<Vec<LiftedAut>> {
        let u = RElement::from_index(self.cover.projection(v));
        let gens = RElement::GENERATORS;
        all_perms(3)
            .iter()
            .map(|p| {
                let phi = induced_automorphism([gens[p.apply(0)], gens[p.apply(1)], gens[p.apply(2)]]);
                self.cover.lift_fixing(&conjugate_to_vertex(&phi, u), v)
            })
            .collect()
    }

    /// The order-3 lift generating Ã_v.
    pub fn rotation_at(&self, v: VertexId) -> Result<LiftedAut> {
        let u = RElement::from_index(self.cover.projection(v));
        let r = self.cover.lift_fixing(&conjugate_to_vertex(&rotate_abc(), u), v)?;
        if r.cover_perm.order() != 3 {
            return Err(Error::Construction(format!("pinned rotation has order {}", r.cover_perm.order())));
        }
        Ok(r)
    }

    /// Lifts in B̃_v ∖ Ã_v, all of which are involutions.
    pub fn reflections_at(&self, v: VertexId) -> Result<Vec<LiftedAut>> {
        Ok(self.stabiliser_lifts(v)?.into_iter().filter(|l| !self.is_in_a(&l.base_perm)).collect())
    }

    pub fn e1_flips(&self) -> Vec<Perm> {
        self.e1_basis.vectors().iter().map(flip_perm).collect()
    }

    /// Generators of the whole group on V(Γ). G3 needs τσ.
    pub fn group_generators(&self, c: Construction, sigma_tau: Option<&SigmaTau>) -> Result<Vec<Perm>> {
        let mut gens = self.e1_flips();
        let lifts = if c == Construction::G2 { &self.lift_gens } else { &self.a_lift_gens };
        gens.extend(lifts.iter().map(lift_as_gamma_perm));
        if c == Construction::G3 {
            let st = sigma_tau.ok_or_else(|| Error::Construction("G3 requires the sigma/tau data".into()))?;
            gens.push(st.tau_sigma());
        }
        gens.extend(self.extra_gens.iter().cloned());
        Ok(gens)
    }

    /// Whether `p` lies in `G1 = E_1 ⋊ Ã`.
    pub fn g1_membership(&self, p: &Perm) -> Result<bool> {
        let m = self.vertex_count();
        if p.degree() != m {
            return Err(Error::DimensionMismatch { expected: m, got: p.degree() });
        }
        let nv = m / 2;
        let mut beta = Vec::with_capacity(nv);
        let mut x = Gf2Vector::zeros(nv);
        for v in 0..nv {
            let (i0, i1) = (p.apply(2 * v), p.apply(2 * v + 1));
            if i0 / 2 != i1 / 2 {
                return Err(Error::Construction("permutation does not preserve the pair structure".into()));
            }
            beta.push(i0 / 2);
            if i0 & 1 == 1 {
                x.set(i0 / 2, true);
            }
        }
        if !self.e1_basis.in_span(&x)? {
            return Ok(false);
        }
        let beta = Perm::from_images(beta)?;
        if !self.lambda().is_automorphism(beta.images()) {
            return Ok(false);
        }
        let Some(g) = self.cover.projects_to(&beta) else { return Ok(false) };
        if !self.is_in_a(&g) {
            return Ok(false);
        }
        // Ã is regular on arcs, so β is in Ã iff it agrees with the lift of g
        // sending vertex 0 to β(0).
        let lift = self.cover.lift_mapping(&g, 0, beta.apply(0))?;
        Ok(lift.cover_perm == beta)
    }
}

/// Whether `⟨gens⟩` is transitive on the arcs of `graph`.
pub fn is_arc_transitive(graph: &Graph, gens: &[Perm]) -> bool {
    let arcs = graph.arcs();
    if arcs.is_empty() {
        return true;
    }
    let index: HashMap<(VertexId, VertexId), usize> = arcs.iter().enumerate().map(|(i, &a)| (a, i)).collect();
    let mut seen = vec![false; arcs.len()];
    seen[0] = true;
    let mut queue = vec![0];
    let mut count = 1;
    while let Some(i) = queue.pop() {
        let (u, v) = arcs[i];
        for g in gens {
            let Some(&j) = index.get(&(g.apply(u), g.apply(v))) else { return false };
            if !seen[j] {
                seen[j] = true;
                count += 1;
                queue.push(j);
            }
        }
    }
    count == arcs.len()
}

pub fn is_vertex_transitive(degree: usize, gens: &[Perm]) -> bool {
    SchreierTree::new(gens, degree, 0).orbit().len() == degree
}

pub struct SigmaTau {
    /// σ on V(Λ).
    pub sigma: Gf2Vector,
    pub tau: LiftedAut,
    pub special_arc: (VertexId, VertexId),
}

impl SigmaTau {
    /// τ followed by the σ flip, as a permutation of V(Γ).
    pub fn tau_sigma(&self) -> Perm {
        lift_as_gamma_perm(&self.tau).then(&flip_perm(&self.sigma))
    }

    /// Transports the data to the Λ-vertex `v` along an element of B̃.
    pub fn translated(&self, action: &GammaAction, v: VertexId) -> Result<SigmaTau> {
        let (v0, w0) = self.special_arc;
        if v == v0 {
            return Ok(SigmaTau { sigma: self.sigma.clone(), tau: self.tau.clone(), special_arc: self.special_arc });
        }
        let gens: Vec<Perm> = action.lift_gens.iter().map(|l| l.cover_perm.clone()).collect();
        let tree = SchreierTree::new(&gens, action.lambda().vertex_count(), v0);
        let h = tree.element_to(&gens, v).ok_or(Error::Intransitive)?;
        let w = h.apply(w0);
        let sigma = permute_vector(&self.sigma, &h);
        let tau = pick_tau(action, v, w)?;
        Ok(SigmaTau { sigma, tau, special_arc: (v, w) })
    }
}

fn pick_tau(action: &GammaAction, v: VertexId, w: VertexId) -> Result<LiftedAut> {
    action
        .stabiliser_lifts(v)?
        .into_iter()
        .find(|l| !action.is_in_a(&l.base_perm) && l.cover_perm.apply(w) != w)
        .ok_or_else(|| Error::Construction("no reflection in the stabiliser moves w".into()))
}

/// σ on the Möbius–Kantor graph: the preimage of the K_4 vertex containing
/// the image of `id` under `MK → Q_3 → K_4`.
pub fn sigma_mk(mk: &Graph) -> Result<Gf2Vector> {
    let (q3, p1) = quotient_to_q3(mk)?;
    let (_, p2) = quotient_to_k4(&q3)?;
    let id = mk.find_label("id").ok_or_else(|| Error::UnknownLabel("id".into()))?;
    let seed = p2[p1[id]];
    Ok(Gf2Vector::from_support(mk.vertex_count(), (0..mk.vertex_count()).filter(|&u| p2[p1[u]] == seed)))
}

pub fn build_sigma_tau(action: &GammaAction) -> Result<SigmaTau> {
    let cover = &action.cover;
    let s_mk = sigma_mk(cover.base())?;
    let nv = cover.vertex_count();
    let sigma = Gf2Vector::from_support(nv, (0..nv).filter(|&u| s_mk.get(cover.projection(u))));
    let v = cover.vertex_by_label("a", [0; 4])?;
    let w = cover.vertex_by_label("id", [0; 4])?;
    if !cover.graph().has_edge(v, w) {
        return Err(Error::Construction("special arc is not an arc".into()));
    }
    let tau = pick_tau(action, v, w)?;
    Ok(SigmaTau { sigma, tau, special_arc: (v, w) })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SigmaTauReport {
    pub n: u32,
    pub special_arc: (String, String),
    pub sigma_support_size: usize,
    pub sigma_v_zero: bool,
    pub sigma_w_one: bool,
    pub other_neighbours_zero: bool,
    pub sigma_b_sigma_in_e1: bool,
    pub tau_fixes_v: bool,
    pub tau_moves_w: bool,
    pub tau_outside_a: bool,
    pub tau_sigma_is_automorphism: bool,
    pub tau_sigma_fixes_v0: bool,
    pub tau_sigma_squared_in_g1: bool,
    pub tau_sigma_outside_g1: bool,
    pub ok: bool,
}

pub fn check_sigma_tau(action: &GammaAction, st: &SigmaTau) -> Result<SigmaTauReport> {
    let g = action.lambda();
    let (v, w) = st.special_arc;
    let s = &st.sigma;
    let sigma_b_sigma_in_e1 = action.lift_gens.iter().try_fold(true, |acc, b| -> Result<bool> {
        Ok(acc && action.e1_basis.in_span(&permute_vector(s, &b.cover_perm).xor(s))?)
    })?;
    let ts = st.tau_sigma();
    let tau_sigma_is_automorphism = action.gamma.is_automorphism(ts.images());
    let v0 = gamma_vertex(v, 0);
    let mut r = SigmaTauReport {
        n: action.n,
        special_arc: (g.label(v).to_string(), g.label(w).to_string()),
        sigma_support_size: s.weight(),
        sigma_v_zero: !s.get(v),
        sigma_w_one: s.get(w),
        other_neighbours_zero: g.nbrs(v).iter().filter(|&&u| u != w).all(|&u| !s.get(u)),
        sigma_b_sigma_in_e1,
        tau_fixes_v: st.tau.cover_perm.apply(v) == v,
        tau_moves_w: st.tau.cover_perm.apply(w) != w,
        tau_outside_a: !action.is_in_a(&st.tau.base_perm),
        tau_sigma_is_automorphism,
        tau_sigma_fixes_v0: ts.apply(v0) == v0,
        tau_sigma_squared_in_g1: action.g1_membership(&ts.then(&ts))?,
        tau_sigma_outside_g1: !action.g1_membership(&ts)?,
        ok: false,
    };
    r.ok = r.sigma_v_zero
        && r.sigma_w_one
        && r.other_neighbours_zero
        && r.sigma_b_sigma_in_e1
        && r.tau_fixes_v
        && r.tau_moves_w
        && r.tau_outside_a
        && r.tau_sigma_is_automorphism
        && r.tau_sigma_fixes_v0
        && r.tau_sigma_squared_in_g1
        && r.tau_sigma_outside_g1;
    Ok(r)
}

/// A power of two written as the exponent `num / den`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exponent {
    pub num: i64,
    pub den: i64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LocalActionReport {
    pub construction: Construction,
    pub n: u32,
    pub vertex: String,
    pub neighbours: Vec<String>,
    pub identified_as: Degree6Class,
    pub expected: Degree6Class,
    pub local_order: u128,
    pub kernel_image_order: u128,
    pub block_kernel_order: Option<u128>,
    pub four_cycle_generator: bool,
    pub e1_dim: usize,
    /// The stabiliser has order `3 · 2^k` with this `k`.
    pub stabiliser_order_log2_times3: usize,
    /// The lower bound is `3 · 2^e` with this exponent `e`.
    pub bound_log2: Exponent,
    pub bound_applies: bool,
    pub meets_bound: bool,
    pub witnesses: Vec<String>,
    #[serde(skip)]
    pub local_group: Option<PermGroup>,
}

impl LocalActionReport {
    pub fn ok(&self) -> bool {
        self.identified_as == self.expected
            && self.kernel_image_order == 4
            && (!self.bound_applies || self.meets_bound)
            && (self.construction != Construction::G3 || self.four_cycle_generator)
    }
}

/// Exponent of the stabiliser lower bound: `m/144 − 1` for G1, `m/144` otherwise.
pub fn bound_exponent(c: Construction, m: usize) -> Exponent {
    let shift = if c == Construction::G1 { 144 } else { 0 };
    Exponent { num: m as i64 - shift, den: 144 }
}

fn restrict_all(gens: &[Perm], points: &[usize]) -> Result<Vec<Perm>> {
    let mut out: Vec<Perm> = gens
        .iter()
        .map(|g| {
            g.restrict(points).ok_or_else(|| Error::Construction("generator does not fix the neighbourhood".into()))
        })
        .collect::<Result<_>>()?;
    out.retain(|p| !p.is_identity());
    out.sort();
    out.dedup();
    Ok(out)
}

/// Local action at `(v, 0)` of the stabiliser in G1, G2 or G3, built from
/// `(E_1)_v` and pinned lifts.
pub fn vertex_stabiliser_local_action(action: &GammaAction, c: Construction, v: VertexId) -> Result<LocalActionReport> {
    let dim = action.e1_dim();
    if dim < 2 {
        return Err(Error::Construction(format!("1-eigenspace has dimension {dim}")));
    }
    if v >= action.lambda().vertex_count() {
        return Err(Error::InvalidVertex(v));
    }
    let kernel: Vec<Perm> = action.e1_basis.vanishing_at(v).vectors().iter().map(flip_perm).collect();
    let mut top = vec![lift_as_gamma_perm(&action.rotation_at(v)?)];
    match c {
        Construction::G1 => {}
        Construction::G2 => top.push(lift_as_gamma_perm(&action.reflections_at(v)?[0])),
        Construction::G3 => {
            let st = build_sigma_tau(action)?.translated(action, v)?;
            top.push(st.tau_sigma());
        }
    }
    let root = gamma_vertex(v, 0);
    for g in kernel.iter().chain(&top) {
        action.check_automorphism(g)?;
        if g.apply(root) != root {
            return Err(Error::Construction("stabiliser generator moves the vertex".into()));
        }
    }
    let points = action.gamma.nbrs(root).to_vec();
    let kernel_local = restrict_all(&kernel, &points)?;
    let top_local = restrict_all(&top, &points)?;
    let mut all_local = kernel_local.clone();
    all_local.extend(top_local.iter().cloned());
    let local = PermGroup::new(6, all_local.clone())?;
    let identified_as = identify_degree6(&local)?;
    let local_order = local.order()?;
    let kernel_image_order = PermGroup::new(6, kernel_local)?.order()?;
    let block_kernel_order =
        minimal_blocks(&local)?.into_iter().find(|b| b.block_size() == 2).and_then(|b| b.kernel_order);
    let four_cycle_generator = top_local.iter().any(|p| p.cycle_type() == [1, 1, 4]);
    let k = dim - 1 + usize::from(c != Construction::G1);
    let m = action.vertex_count();
    let bound_log2 = bound_exponent(c, m);
    Ok(LocalActionReport {
        construction: c,
        n: action.n,
        vertex: action.lambda().label(v).to_string(),
        neighbours: points.iter().map(|&p| action.gamma.label(p).to_string()).collect(),
        identified_as,
        expected: c.target(),
        local_order,
        kernel_image_order,
        block_kernel_order,
        four_cycle_generator,
        e1_dim: dim,
        stabiliser_order_log2_times3: k,
        bound_applies: action.n >= 3,
        meets_bound: 144 * k as i64 >= bound_log2.num,
        bound_log2,
        witnesses: all_local.iter().map(Perm::cycle_string).collect(),
        local_group: Some(local),
    })
}

/// Stabiliser order of `(v, 0)` in the whole group by a generic
/// stabiliser chain; feasible only for small n.
pub fn generic_stabiliser_order(action: &GammaAction, c: Construction, v: VertexId) -> Result<u128> {
    let st = if c == Construction::G3 { Some(build_sigma_tau(action)?) } else { None };
    let gens = action.group_generators(c, st.as_ref())?;
    let group = PermGroup::new(action.vertex_count(), gens)?;
    let orbit = group.orbit(gamma_vertex(v, 0)).len() as u128;
    Ok(group.order()? / orbit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::sync::OnceLock;

    fn gamma(n: u32) -> &'static GammaAction {
        static G1: OnceLock<GammaAction> = OnceLock::new();
        static G2: OnceLock<GammaAction> = OnceLock::new();
        let cell = if n == 1 { &G1 } else { &G2 };
        cell.get_or_init(|| build_gamma(n).unwrap())
    }

    #[test]
    fn gamma_shape() {
        for n in [1, 2] {
            let a = gamma(n);
            assert_eq!(a.vertex_count(), 32 * (n as usize).pow(4));
            assert!(a.gamma.is_regular(6));
            assert!(a.gamma.is_connected());
        }
    }

    #[test]
    fn flips_and_lifts_are_automorphisms() {
        let a = gamma(2);
        let zero = Gf2Vector::zeros(a.lambda().vertex_count());
        assert!(a.e1_as_perm(&zero).unwrap().is_identity());
        for x in a.e1_basis.vectors() {
            let p = a.e1_as_perm(x).unwrap();
            assert_eq!(p.order(), 2);
            assert_eq!(p.moved_points(), 2 * x.weight());
            a.check_automorphism(&p).unwrap();
        }
        let not_eigen = Gf2Vector::unit(a.lambda().vertex_count(), 0);
        assert!(a.e1_as_perm(&not_eigen).is_err());
        let deck = lift_as_gamma_perm(&a.a_lift_gens[4]);
        assert_eq!(deck.fixed_points(), 0);
        a.check_automorphism(&deck).unwrap();
    }

    #[test]
    fn sigma_on_mk() {
        let a = gamma(1);
        let s = sigma_mk(a.cover.base()).unwrap();
        let mut words: Vec<&str> = s.support().into_iter().map(|u| a.cover.base().label(u)).collect();
        words.sort();
        assert_eq!(words, ["abc", "abcz", "id", "z"]);
    }

    #[test]
    fn sigma_tau_checks_hold() {
        for n in [1, 2] {
            let a = gamma(n);
            let st = build_sigma_tau(a).unwrap();
            let r = check_sigma_tau(a, &st).unwrap();
            assert!(r.ok, "{r:?}");
            assert_eq!(r.special_arc, ("(a,0,0,0,0)".to_string(), "(id,0,0,0,0)".to_string()));
        }
    }

    #[test]
    fn g1_membership_basics() {
        let a = gamma(2);
        let m = a.vertex_count();
        assert!(a.g1_membership(&Perm::identity(m)).unwrap());
        assert!(a.g1_membership(&flip_perm(&a.e1_basis.vectors()[0])).unwrap());
        for l in &a.a_lift_gens {
            assert!(a.g1_membership(&lift_as_gamma_perm(l)).unwrap());
        }
        let reflection = lift_as_gamma_perm(&a.lift_gens[3]);
        assert!(!a.g1_membership(&reflection).unwrap());
        let lone = flip_perm(&Gf2Vector::unit(m / 2, 5));
        assert!(!a.g1_membership(&lone).unwrap());
        let mut images: Vec<usize> = (0..m).collect();
        images.swap(1, 2);
        assert!(a.g1_membership(&Perm::from_images(images).unwrap()).is_err());
    }

    #[test]
    fn local_actions_small() {
        for n in [1, 2] {
            let a = gamma(n);
            let nv = a.lambda().vertex_count();
            for v in [a.cover.vertex_by_label("a", [0; 4]).unwrap(), 0, nv - 1, nv / 3] {
                for c in Construction::ALL {
                    let r = vertex_stabiliser_local_action(a, c, v).unwrap();
                    assert_eq!(r.identified_as, c.target(), "n={n} v={v} {c}");
                    assert_eq!(r.kernel_image_order, 4);
                    assert_eq!(r.block_kernel_order, Some(4));
                    assert_eq!(r.local_order, if c == Construction::G1 { 12 } else { 24 });
                    assert!(r.ok());
                }
            }
        }
    }

    #[test]
    fn generic_cross_check_n1() {
        let a = gamma(1);
        assert_eq!(a.e1_dim(), 4);
        let v = a.cover.vertex_by_label("a", [0; 4]).unwrap();
        for c in Construction::ALL {
            let r = vertex_stabiliser_local_action(a, c, v).unwrap();
            let generic = generic_stabiliser_order(a, c, v).unwrap();
            assert_eq!(generic, 3u128 << r.stabiliser_order_log2_times3, "{c}");
        }
        let g1 = PermGroup::new(32, a.group_generators(Construction::G1, None).unwrap()).unwrap();
        assert_eq!(g1.order().unwrap(), 768);
    }

    #[test]
    fn transitivity() {
        for n in [1, 2] {
            let a = gamma(n);
            let st = build_sigma_tau(a).unwrap();
            for c in Construction::ALL {
                let gens = a.group_generators(c, Some(&st)).unwrap();
                assert!(is_vertex_transitive(a.vertex_count(), &gens));
                assert!(is_arc_transitive(&a.gamma, &gens));
            }
        }
    }

    #[test]
    fn bound_exponents() {
        // m = 2592 at n = 3; dim 164 gives 163 ≥ 17.
        let e = bound_exponent(Construction::G1, 2592);
        assert_eq!(e, Exponent { num: 2448, den: 144 });
        assert!(144 * 163 >= e.num);
        assert!(144 * 16 < e.num);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn gamma_action_preserves_order(i in 0usize..9, j in 0usize..9, k in 0u32..3) {
            let a = gamma(2);
            let l = a.cover.lift(&a.lift_gens[i % a.lift_gens.len()].base_perm.then(&a.lift_gens[j % a.lift_gens.len()].base_perm)).unwrap();
            let composed = l.cover_perm.then(&a.lift_gens[i].cover_perm.pow(k));
            let lifted = LiftedAut { cover_perm: composed.clone(), ..l };
            prop_assert_eq!(lift_as_gamma_perm(&lifted).order(), composed.order());
        }
    }
}
