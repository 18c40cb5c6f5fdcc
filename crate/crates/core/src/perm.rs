//! Permutations and permutation groups given by generators.
//!
//! Permutations act on the right: `p.then(&q)` first applies `p`, then `q`,
//! and `x^(pq) = (x^p)^q`. Group orders come from a deterministic
//! Schreier–Sims stabiliser chain.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

pub const DEFAULT_MAX_DEGREE: usize = 4096;

/// Degree ceiling for stabiliser-chain computations, overridable through
/// `ATCOVER_MAX_DEGREE`.
pub fn max_degree() -> usize {
    std::env::var("ATCOVER_MAX_DEGREE").ok().and_then(|s| s.trim().parse().ok()).unwrap_or(DEFAULT_MAX_DEGREE)
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Perm {
    images: Vec<usize>,
}

impl TryFrom<Vec<usize>> for Perm {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Perm::from_images(images)
    }
}

impl From<Perm> for Vec<usize> {
    fn from(p: Perm) -> Self {
        p.images
    }
}

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Self { images: (0..degree).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return Err(Error::NotPermutation(format!("{images:?}")));
            }
        }
        Ok(Self { images })
    }

    /// Builds a permutation from disjoint cycles.
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        for c in cycles {
            for (k, &x) in c.iter().enumerate() {
                if x >= degree {
                    return Err(Error::NotPermutation(format!("point {x} exceeds degree {degree}")));
                }
                images[x] = c[(k + 1) % c.len()];
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm { images: self.images.iter().map(|&i| other.images[i]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j] = i;
        }
        Perm { images: inv }
    }

    pub fn pow(&self, k: u32) -> Perm {
        (0..k).fold(Perm::identity(self.degree()), |acc, _| acc.then(self))
    }

    /// `other^-1 · self · other`.
    pub fn conjugate_by(&self, other: &Perm) -> Perm {
        other.inverse().then(self).then(other)
    }

    pub fn order(&self) -> u64 {
        self.cycles().iter().fold(1u64, |acc, c| lcm(acc, c.len() as u64))
    }

    /// Non-trivial cycles, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for s in 0..self.degree() {
            if seen[s] || self.images[s] == s {
                continue;
            }
            let mut c = vec![s];
            seen[s] = true;
            let mut x = self.images[s];
            while x != s {
                seen[x] = true;
                c.push(x);
                x = self.images[x];
            }
            out.push(c);
        }
        out
    }

    pub fn fixed_points(&self) -> usize {
        self.images.iter().enumerate().filter(|(i, j)| i == *j).count()
    }

    pub fn moved_points(&self) -> usize {
        self.degree() - self.fixed_points()
    }

    /// Sorted cycle lengths including fixed points; a conjugacy invariant.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.extend(std::iter::repeat_n(1, self.fixed_points()));
        t.sort_unstable();
        t
    }

    pub fn cycle_string(&self) -> String {
        let cs = self.cycles();
        if cs.is_empty() {
            return "()".into();
        }
        cs.iter().map(|c| format!("({})", c.iter().map(usize::to_string).collect::<Vec<_>>().join(" "))).collect()
    }

    /// Restriction to a set of points that the permutation maps onto itself,
    /// reindexed by position in `points`.
    pub fn restrict(&self, points: &[usize]) -> Option<Perm> {
        let pos: HashMap<usize, usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let images = points.iter().map(|&p| pos.get(&self.images[p]).copied()).collect::<Option<Vec<_>>>()?;
        Perm::from_images(images).ok()
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{}", self.cycle_string())
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Breadth-first tree of a point's orbit, with the generator used to reach
/// each point.
#[derive(Debug, Clone)]
pub struct SchreierTree {
    root: usize,
    parent: Vec<Option<(usize, usize)>>,
    orbit: Vec<usize>,
}

impl SchreierTree {
    pub fn new(gens: &[Perm], degree: usize, root: usize) -> Self {
        let mut parent = vec![None; degree];
        let mut seen = vec![false; degree];
        let mut orbit = vec![root];
        seen[root] = true;
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for (k, g) in gens.iter().enumerate() {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some((k, x));
                    orbit.push(y);
                }
            }
            i += 1;
        }
        Self { root, parent, orbit }
    }

    pub fn orbit(&self) -> &[usize] {
        &self.orbit
    }

    pub fn contains(&self, x: usize) -> bool {
        x == self.root || self.parent.get(x).is_some_and(Option::is_some)
    }

    /// A group element mapping the root to `target`.
    pub fn element_to(&self, gens: &[Perm], target: usize) -> Option<Perm> {
        if !self.contains(target) {
            return None;
        }
        let mut word = Vec::new();
        let mut x = target;
        while let Some((k, prev)) = self.parent[x] {
            word.push(k);
            x = prev;
        }
        let degree = self.parent.len();
        Some(word.iter().rev().fold(Perm::identity(degree), |acc, &k| acc.then(&gens[k])))
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::DimensionMismatch { expected: degree, got: g.degree() });
        }
        Ok(Self { degree, generators })
    }

    pub fn trivial(degree: usize) -> Self {
        Self { degree, generators: Vec::new() }
    }

    /// The symmetric group in its natural action.
    pub fn symmetric(degree: usize) -> Self {
        let mut gens = Vec::new();
        if degree >= 2 {
            let cycle: Vec<usize> = (0..degree).collect();
            gens.push(Perm::from_cycles(degree, &[&cycle]).unwrap());
            gens.push(Perm::from_cycles(degree, &[&[0, 1]]).unwrap());
        }
        Self { degree, generators: gens }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn orbit(&self, p: usize) -> Vec<usize> {
        let mut o = SchreierTree::new(&self.generators, self.degree, p).orbit;
        o.sort_unstable();
        o
    }

    pub fn schreier_tree(&self, root: usize) -> SchreierTree {
        SchreierTree::new(&self.generators, self.degree, root)
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).len() == self.degree
    }

    pub fn stab_chain(&self) -> Result<StabChain> {
        StabChain::new(self.degree, &self.generators, max_degree())
    }

    pub fn order(&self) -> Result<u128> {
        Ok(self.stab_chain()?.order())
    }

    pub fn contains(&self, p: &Perm) -> Result<bool> {
        Ok(self.stab_chain()?.contains(p))
    }

    /// All elements, by closure. Fails when more than `limit` elements exist.
    pub fn elements(&self, limit: usize) -> Result<Vec<Perm>> {
        let id = Perm::identity(self.degree);
        let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
        let mut out = vec![id];
        let mut i = 0;
        while i < out.len() {
            for g in &self.generators {
                let h = out[i].then(g);
                if seen.insert(h.clone()) {
                    if out.len() == limit {
                        return Err(Error::ResourceLimit { degree: self.degree, ceiling: limit });
                    }
                    out.push(h);
                }
            }
            i += 1;
        }
        Ok(out)
    }
}

pub fn group_order(g: &PermGroup) -> Result<u128> {
    g.order()
}

pub fn orbit(g: &PermGroup, p: usize) -> Vec<usize> {
    g.orbit(p)
}

#[derive(Debug, Clone)]
struct Level {
    base: usize,
    orbit: Vec<usize>,
    reps: Vec<Option<Perm>>,
}

/// Stabiliser chain with base points chosen in increasing order.
#[derive(Debug, Clone)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
    // Strong generators with the number of leading base points each fixes.
    strong: Vec<(Perm, usize)>,
}

impl StabChain {
    pub fn new(degree: usize, gens: &[Perm], ceiling: usize) -> Result<Self> {
        if degree > ceiling {
            return Err(Error::ResourceLimit { degree, ceiling });
        }
        let mut chain = StabChain { degree, levels: Vec::new(), strong: Vec::new() };
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DimensionMismatch { expected: degree, got: g.degree() });
            }
            let (residue, depth) = chain.sift(g.clone(), 0);
            if !residue.is_identity() {
                chain.add_strong(residue, depth);
            }
        }
        chain.complete();
        Ok(chain)
    }

    pub fn order(&self) -> u128 {
        self.levels.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    pub fn basic_orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn contains(&self, p: &Perm) -> bool {
        p.degree() == self.degree && self.sift(p.clone(), 0).0.is_identity()
    }

    /// Sifts `h` through levels `from..`. Returns the residue and the level
    /// where sifting stopped (`levels.len()` if it went all the way).
    fn sift(&self, mut h: Perm, from: usize) -> (Perm, usize) {
        for (k, level) in self.levels.iter().enumerate().skip(from) {
            let beta = h.apply(level.base);
            match &level.reps[beta] {
                Some(u) => h = h.then(&u.inverse()),
                None => return (h, k),
            }
        }
        let k = self.levels.len();
        (h, k)
    }

    /// Adds a strong generator fixing the first `depth` base points,
    /// extending the base if the generator fixes all of them.
    fn add_strong(&mut self, g: Perm, depth: usize) {
        if depth == self.levels.len() {
            let moved = (0..self.degree).find(|&x| g.apply(x) != x).expect("non-identity residue");
            self.levels.push(Level { base: moved, orbit: Vec::new(), reps: Vec::new() });
        }
        let fixed = self.levels.iter().take_while(|l| g.apply(l.base) == l.base).count();
        self.strong.push((g, fixed));
        for k in 0..=fixed.min(self.levels.len() - 1) {
            self.rebuild_level(k);
        }
    }

    fn level_gens(&self, k: usize) -> impl Iterator<Item = &Perm> {
        self.strong.iter().filter(move |(_, d)| *d >= k).map(|(g, _)| g)
    }

    fn rebuild_level(&mut self, k: usize) {
        let base = self.levels[k].base;
        let gens: Vec<Perm> = self.level_gens(k).cloned().collect();
        let mut reps: Vec<Option<Perm>> = vec![None; self.degree];
        reps[base] = Some(Perm::identity(self.degree));
        let mut orbit = vec![base];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for g in &gens {
                let y = g.apply(x);
                if reps[y].is_none() {
                    reps[y] = Some(reps[x].as_ref().unwrap().then(g));
                    orbit.push(y);
                }
            }
            i += 1;
        }
        self.levels[k].orbit = orbit;
        self.levels[k].reps = reps;
    }

    /// Runs Schreier generator tests from the deepest level upwards until
    /// every level's Schreier generators sift to the identity.
    fn complete(&mut self) {
        let mut k = self.levels.len();
        while k > 0 {
            let level = k - 1;
            match self.failing_schreier_generator(level) {
                Some((h, depth)) => {
                    self.add_strong(h, depth);
                    k = depth.min(self.levels.len() - 1) + 1;
                }
                None => k -= 1,
            }
        }
    }

    fn failing_schreier_generator(&self, k: usize) -> Option<(Perm, usize)> {
        let level = &self.levels[k];
        let gens: Vec<&Perm> = self.level_gens(k).collect();
        for &beta in &level.orbit {
            let u = level.reps[beta].as_ref().unwrap();
            for s in &gens {
                let img = s.apply(beta);
                let v = level.reps[img].as_ref().unwrap();
                let h = u.then(s).then(&v.inverse());
                if h.is_identity() {
                    continue;
                }
                let (res, depth) = self.sift(h, k + 1);
                if !res.is_identity() {
                    return Some((res, depth));
                }
            }
        }
        None
    }
}

/// How a group acts on the s-arcs of a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArcAction {
    Regular,
    TransitiveNotRegular,
    Intransitive,
}

/// All s-arcs (walks of length `s` without immediate backtracking).
pub fn s_arcs(graph: &Graph, s: usize) -> Vec<Vec<usize>> {
    let mut walks: Vec<Vec<usize>> = (0..graph.vertex_count()).map(|v| vec![v]).collect();
    for _ in 0..s {
        let mut next = Vec::new();
        for w in &walks {
            let last = *w.last().unwrap();
            let prev = (w.len() >= 2).then(|| w[w.len() - 2]);
            for &u in graph.nbrs(last) {
                if Some(u) != prev {
                    let mut x = w.clone();
                    x.push(u);
                    next.push(x);
                }
            }
        }
        walks = next;
    }
    walks
}

pub fn s_arc_count_regularity(group: &PermGroup, graph: &Graph, s: usize) -> Result<ArcAction> {
    if group.degree() != graph.vertex_count() {
        return Err(Error::DimensionMismatch { expected: graph.vertex_count(), got: group.degree() });
    }
    if group.generators().iter().any(|g| !graph.is_automorphism(g.images())) {
        return Err(Error::NotAutomorphism);
    }
    let arcs = s_arcs(graph, s);
    if arcs.is_empty() {
        return Ok(ArcAction::Intransitive);
    }
    let mut seen: HashSet<Vec<usize>> = HashSet::from([arcs[0].clone()]);
    let mut queue = VecDeque::from([arcs[0].clone()]);
    while let Some(w) = queue.pop_front() {
        for g in group.generators() {
            let img: Vec<usize> = w.iter().map(|&x| g.apply(x)).collect();
            if seen.insert(img.clone()) {
                queue.push_back(img);
            }
        }
    }
    if seen.len() < arcs.len() {
        return Ok(ArcAction::Intransitive);
    }
    Ok(if group.order()? == arcs.len() as u128 { ArcAction::Regular } else { ArcAction::TransitiveNotRegular })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSystem {
    pub blocks: Vec<Vec<usize>>,
    pub kernel_order: Option<u128>,
}

impl BlockSystem {
    pub fn block_size(&self) -> usize {
        self.blocks.first().map_or(0, Vec::len)
    }
}

fn find(uf: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while uf[r] != r {
        r = uf[r];
    }
    let mut y = x;
    while uf[y] != r {
        let next = uf[y];
        uf[y] = r;
        y = next;
    }
    r
}

/// Finest block system in which `a` and `b` share a block.
fn block_closure(group: &PermGroup, a: usize, b: usize) -> Vec<Vec<usize>> {
    let n = group.degree();
    let mut uf: Vec<usize> = (0..n).collect();
    let mut queue = VecDeque::new();
    let (ra, rb) = (find(&mut uf, a), find(&mut uf, b));
    uf[ra.max(rb)] = ra.min(rb);
    queue.push_back((a, b));
    while let Some((x, y)) = queue.pop_front() {
        for g in group.generators() {
            let (gx, gy) = (g.apply(x), g.apply(y));
            let (rx, ry) = (find(&mut uf, gx), find(&mut uf, gy));
            if rx != ry {
                uf[rx.max(ry)] = rx.min(ry);
                queue.push_back((gx, gy));
            }
        }
    }
    let mut classes: HashMap<usize, Vec<usize>> = HashMap::new();
    for x in 0..n {
        let r = find(&mut uf, x);
        classes.entry(r).or_default().push(x);
    }
    let mut blocks: Vec<Vec<usize>> = classes.into_values().collect();
    blocks.sort();
    blocks
}

/// Action of the group on the blocks of a system, as a group of degree `#blocks`.
pub fn block_action(group: &PermGroup, blocks: &[Vec<usize>]) -> Result<PermGroup> {
    let mut which = vec![0; group.degree()];
    for (i, b) in blocks.iter().enumerate() {
        for &x in b {
            which[x] = i;
        }
    }
    let gens = group
        .generators()
        .iter()
        .map(|g| Perm::from_images(blocks.iter().map(|b| which[g.apply(b[0])]).collect()))
        .collect::<Result<Vec<_>>>()?;
    PermGroup::new(blocks.len(), gens)
}

/// All minimal non-trivial block systems of a transitive group, each with the
/// order of the kernel of the action on its blocks.
pub fn minimal_blocks(group: &PermGroup) -> Result<Vec<BlockSystem>> {
    if !group.is_transitive() {
        return Err(Error::Intransitive);
    }
    let n = group.degree();
    let mut systems: Vec<Vec<Vec<usize>>> = Vec::new();
    for q in 1..n {
        let blocks = block_closure(group, 0, q);
        if blocks.len() > 1 && !systems.contains(&blocks) {
            systems.push(blocks);
        }
    }
    let block_of_zero = |s: &Vec<Vec<usize>>| s.iter().find(|b| b.contains(&0)).unwrap().clone();
    let zero_blocks: Vec<Vec<usize>> = systems.iter().map(block_of_zero).collect();
    let order = group.order()?;
    let mut out = Vec::new();
    for (i, s) in systems.iter().enumerate() {
        let b = &zero_blocks[i];
        let refined =
            zero_blocks.iter().enumerate().any(|(j, c)| j != i && c.len() < b.len() && c.iter().all(|x| b.contains(x)));
        if refined {
            continue;
        }
        let top = block_action(group, s)?.order()?;
        out.push(BlockSystem { blocks: s.clone(), kernel_order: Some(order / top) });
    }
    Ok(out)
}

/// The three transitive groups of degree 6 with three blocks of size two and a
/// block kernel of order four.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Degree6Class {
    #[serde(rename = "A4(6)")]
    A4_6,
    #[serde(rename = "S4(6d)")]
    S4_6d,
    #[serde(rename = "S4(6c)")]
    S4_6c,
    #[serde(rename = "other")]
    Other,
}

impl Degree6Class {
    pub const NAMED: [Degree6Class; 3] = [Degree6Class::A4_6, Degree6Class::S4_6d, Degree6Class::S4_6c];

    pub fn name(self) -> &'static str {
        match self {
            Degree6Class::A4_6 => "A4(6)",
            Degree6Class::S4_6d => "S4(6d)",
            Degree6Class::S4_6c => "S4(6c)",
            Degree6Class::Other => "other",
        }
    }
}

impl fmt::Display for Degree6Class {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Permutation action of `gens` on the right cosets of `sub` in `⟨gens⟩`.
pub fn coset_action(group: &PermGroup, sub: &PermGroup) -> Result<PermGroup> {
    let elements = group.elements(1 << 16)?;
    let h = sub.elements(1 << 16)?;
    let coset_of = |x: &Perm| -> Vec<Perm> {
        let mut c: Vec<Perm> = h.iter().map(|y| y.then(x)).collect();
        c.sort();
        c
    };
    let mut cosets: Vec<Vec<Perm>> = Vec::new();
    let mut index: HashMap<Perm, usize> = HashMap::new();
    for x in &elements {
        if index.contains_key(x) {
            continue;
        }
        let c = coset_of(x);
        for y in &c {
            index.insert(y.clone(), cosets.len());
        }
        cosets.push(c);
    }
    let gens = group
        .generators()
        .iter()
        .map(|g| Perm::from_images(cosets.iter().map(|c| index[&c[0].then(g)]).collect()))
        .collect::<Result<Vec<_>>>()?;
    PermGroup::new(cosets.len(), gens)
}

pub fn reference_degree6(which: Degree6Class) -> PermGroup {
    let p = |cs: &[&[usize]]| Perm::from_cycles(4, cs).unwrap();
    let (big, small) = match which {
        Degree6Class::A4_6 => (vec![p(&[&[0, 1, 2]]), p(&[&[0, 1], &[2, 3]])], vec![p(&[&[0, 1], &[2, 3]])]),
        Degree6Class::S4_6d => (vec![p(&[&[0, 1, 2, 3]]), p(&[&[0, 1]])], vec![p(&[&[0, 1]]), p(&[&[2, 3]])]),
        Degree6Class::S4_6c => (vec![p(&[&[0, 1, 2, 3]]), p(&[&[0, 1]])], vec![p(&[&[0, 1, 2, 3]])]),
        Degree6Class::Other => return PermGroup::symmetric(6),
    };
    let g = PermGroup::new(4, big).unwrap();
    let h = PermGroup::new(4, small).unwrap();
    coset_action(&g, &h).expect("coset action of a subgroup of Sym(4)")
}

/// All permutations of `0..n` in lexicographic order.
pub fn all_perms(n: usize) -> Vec<Perm> {
    let mut cur: Vec<usize> = (0..n).collect();
    let mut out = vec![Perm { images: cur.clone() }];
    while let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) {
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(Perm { images: cur.clone() });
    }
    out
}

fn cycle_type_profile(elements: &[Perm]) -> Vec<Vec<usize>> {
    let mut v: Vec<Vec<usize>> = elements.iter().map(Perm::cycle_type).collect();
    v.sort();
    v
}

/// Identifies a transitive group of degree 6 up to conjugacy in Sym(6).
pub fn identify_degree6(group: &PermGroup) -> Result<Degree6Class> {
    if group.degree() != 6 {
        return Err(Error::DimensionMismatch { expected: 6, got: group.degree() });
    }
    if !group.is_transitive() {
        return Err(Error::Intransitive);
    }
    let elements = group.elements(720)?;
    let profile = cycle_type_profile(&elements);
    for which in Degree6Class::NAMED {
        let reference = reference_degree6(which);
        let ref_elements: HashSet<Perm> = reference.elements(720)?.into_iter().collect();
        if ref_elements.len() != elements.len() {
            continue;
        }
        let ref_list: Vec<Perm> = ref_elements.iter().cloned().collect();
        if cycle_type_profile(&ref_list) != profile {
            continue;
        }
        // Equal orders, so conjugating the generators into the reference suffices.
        let conjugate =
            all_perms(6).iter().any(|pi| group.generators().iter().all(|g| ref_elements.contains(&g.conjugate_by(pi))));
        if conjugate {
            return Ok(which);
        }
    }
    Ok(Degree6Class::Other)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::complete;

    fn c(degree: usize, cycles: &[&[usize]]) -> Perm {
        Perm::from_cycles(degree, cycles).unwrap()
    }

    #[test]
    fn composition_is_right_action() {
        let p = c(3, &[&[0, 1]]);
        let q = c(3, &[&[1, 2]]);
        assert_eq!(p.then(&q).apply(0), 2);
        assert_eq!(p.then(&p.inverse()), Perm::identity(3));
        assert_eq!(c(6, &[&[0, 1, 2], &[3, 4]]).order(), 6);
        assert_eq!(c(4, &[&[0, 2, 1]]).cycle_string(), "(0 2 1)");
        assert!(Perm::from_images(vec![0, 0]).is_err());
    }

    #[test]
    fn orbits() {
        assert_eq!(PermGroup::trivial(4).orbit(2), vec![2]);
        let g = PermGroup::new(6, vec![c(6, &[&[0, 1, 2, 3, 4, 5]])]).unwrap();
        assert_eq!(g.orbit(0), (0..6).collect::<Vec<_>>());
    }

    #[test]
    fn orders() {
        assert_eq!(PermGroup::new(2, vec![c(2, &[&[0, 1]])]).unwrap().order().unwrap(), 2);
        assert_eq!(PermGroup::trivial(5).order().unwrap(), 1);
        for n in 1..=7 {
            let f: u128 = (1..=n as u128).product();
            assert_eq!(PermGroup::symmetric(n).order().unwrap(), f);
        }
        let too_big = PermGroup::trivial(10);
        assert!(matches!(
            StabChain::new(10, too_big.generators(), 8),
            Err(Error::ResourceLimit { degree: 10, ceiling: 8 })
        ));
    }

    #[test]
    fn order_matches_enumeration() {
        let groups = [
            PermGroup::new(8, vec![c(8, &[&[0, 1, 2, 3]]), c(8, &[&[4, 5], &[6, 7]]), c(8, &[&[0, 4], &[1, 5]])])
                .unwrap(),
            PermGroup::new(9, vec![c(9, &[&[0, 1, 2], &[3, 4, 5]]), c(9, &[&[0, 3, 6], &[1, 4, 7], &[2, 5, 8]])])
                .unwrap(),
            reference_degree6(Degree6Class::S4_6c),
        ];
        for g in &groups {
            let elements = g.elements(50_000).unwrap();
            assert_eq!(g.order().unwrap(), elements.len() as u128);
            let chain = g.stab_chain().unwrap();
            for e in elements {
                assert!(chain.contains(&e));
            }
        }
    }

    #[test]
    fn schreier_tree_elements_map_root() {
        let g = PermGroup::symmetric(5);
        let t = g.schreier_tree(1);
        for x in 0..5 {
            assert_eq!(t.element_to(g.generators(), x).unwrap().apply(1), x);
        }
    }

    #[test]
    fn arc_actions_on_small_graphs() {
        let k2 = complete(2);
        assert_eq!(s_arc_count_regularity(&PermGroup::trivial(2), &k2, 1).unwrap(), ArcAction::Intransitive);
        let swap = PermGroup::new(2, vec![c(2, &[&[0, 1]])]).unwrap();
        assert_eq!(s_arc_count_regularity(&swap, &k2, 1).unwrap(), ArcAction::Regular);
        let k4 = complete(4);
        let s4 = PermGroup::symmetric(4);
        assert_eq!(s_arc_count_regularity(&s4, &k4, 1).unwrap(), ArcAction::TransitiveNotRegular);
        assert_eq!(s_arc_count_regularity(&s4, &k4, 2).unwrap(), ArcAction::Regular);
        let bad = PermGroup::new(4, vec![c(4, &[&[0, 1]])]).unwrap();
        assert!(s_arc_count_regularity(&bad, &crate::graph::edgeless(4).lex_blowup(), 1).is_err());
    }

    #[test]
    fn blocks() {
        assert!(minimal_blocks(&PermGroup::symmetric(3)).unwrap().is_empty());
        let intransitive = PermGroup::new(6, vec![c(6, &[&[0, 1], &[2, 3], &[4, 5]])]).unwrap();
        assert!(matches!(minimal_blocks(&intransitive), Err(Error::Intransitive)));
        let cyc = PermGroup::new(6, vec![c(6, &[&[0, 1, 2, 3, 4, 5]])]).unwrap();
        let systems = minimal_blocks(&cyc).unwrap();
        // Z_6 has blocks {0,3},.. and {0,2,4},..; both are minimal.
        assert_eq!(systems.len(), 2);
        for s in &systems {
            assert_eq!(s.blocks.len() * s.block_size(), 6);
            assert_eq!(6 % s.kernel_order.unwrap(), 0);
        }
    }

    #[test]
    fn reference_groups() {
        let expected = [(Degree6Class::A4_6, 12), (Degree6Class::S4_6d, 24), (Degree6Class::S4_6c, 24)];
        for (which, order) in expected {
            let g = reference_degree6(which);
            assert_eq!(g.degree(), 6);
            assert!(g.is_transitive());
            assert_eq!(g.order().unwrap(), order);
            let systems = minimal_blocks(&g).unwrap();
            let pairs: Vec<_> = systems.iter().filter(|s| s.blocks.len() == 3).collect();
            assert_eq!(pairs.len(), 1, "{which}");
            assert_eq!(pairs[0].kernel_order, Some(4));
            assert_eq!(identify_degree6(&g).unwrap(), which);
        }
        // Point stabiliser of S4(6d) is a Klein group: three involutions.
        let d = reference_degree6(Degree6Class::S4_6d).elements(24).unwrap();
        let stab: Vec<_> = d.iter().filter(|p| p.apply(0) == 0).collect();
        assert_eq!(stab.len(), 4);
        assert!(stab.iter().all(|p| p.order() <= 2));
        // S4(6c) has an element with two fixed points and a 4-cycle.
        let cc = reference_degree6(Degree6Class::S4_6c).elements(24).unwrap();
        assert!(cc.iter().any(|p| p.cycle_type() == vec![1, 1, 4]));
        assert!(!d.iter().any(|p| p.cycle_type() == vec![1, 1, 4]));
    }

    #[test]
    fn identification_rejects_others() {
        assert_eq!(identify_degree6(&PermGroup::symmetric(6)).unwrap(), Degree6Class::Other);
        let intransitive = PermGroup::new(6, vec![c(6, &[&[0, 1]])]).unwrap();
        assert!(identify_degree6(&intransitive).is_err());
    }

    #[test]
    fn all_perms_counts() {
        assert_eq!(all_perms(6).len(), 720);
        assert_eq!(all_perms(0).len(), 1);
    }
}
