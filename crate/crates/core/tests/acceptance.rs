//! Acceptance run: one line per criterion, nonzero exit if any gating
//! criterion fails. Set `ATCOVER_ACCEPTANCE_LARGE=1` to include the n = 4
//! eigenspace dimension and the n = 3 local actions.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use atcover::cover::{derived_cover, mk_voltage, Cover};
use atcover::eigen::{cover_eigenspace, formula_dimension, greedy_orbit_basis, s1_vertices, verify_eigen_support};
use atcover::gf2::{kernel_basis, rank, Gf2Matrix};
use atcover::localaction::{
    build_gamma, build_sigma_tau, check_sigma_tau, generic_stabiliser_order, vertex_stabiliser_local_action,
    Construction,
};
use atcover::mk::{aut_a_generators, aut_b_generators, build_mk};
use atcover::perm::{identify_degree6, s_arc_count_regularity, ArcAction, Perm, PermGroup, SchreierTree};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn large() -> bool {
    std::env::var("ATCOVER_ACCEPTANCE_LARGE").is_ok_and(|v| v == "1")
}

fn lambda(n: u32) -> Cover {
    derived_cover(&mk_voltage(n).unwrap()).unwrap()
}

fn c1_mk_base() -> Outcome {
    let mk = build_mk();
    ensure!(mk.vertex_count() == 16 && mk.edge_count() == 24, "size {} / {}", mk.vertex_count(), mk.edge_count());
    ensure!(mk.is_regular(3) && mk.is_connected(), "not a connected cubic graph");
    let (b, a) = (aut_b_generators(), aut_a_generators());
    let (ob, oa) = (b.order().unwrap(), a.order().unwrap());
    ensure!(ob == 96 && oa == 48, "|B| = {ob}, |A| = {oa}");
    ensure!(s_arc_count_regularity(&b, &mk, 2).unwrap() == ArcAction::Regular, "B not 2-arc-regular");
    ensure!(s_arc_count_regularity(&a, &mk, 1).unwrap() == ArcAction::Regular, "A not arc-regular");
    Ok("16 vertices, 24 edges, |B| = 96 2-arc-regular, |A| = 48 arc-regular".into())
}

fn c2_cover_facts() -> Outcome {
    for n in 1..=3u32 {
        let c = lambda(n);
        let g = c.graph();
        ensure!(g.vertex_count() == 16 * (n as usize).pow(4), "n={n}: {} vertices", g.vertex_count());
        ensure!(g.is_regular(3) && g.is_connected(), "n={n}: not connected cubic");
    }
    let (c, mk) = (lambda(1), build_mk());
    let map: Vec<usize> = (0..16).map(|v| c.projection(v)).collect();
    ensure!(map.iter().enumerate().all(|(i, &j)| i == j), "(v, 0) ↦ v is not the vertex indexing");
    for (u, v) in c.graph().edges() {
        ensure!(mk.has_edge(map[u], map[v]), "edge ({u},{v}) does not map to an edge");
    }
    ensure!(c.graph().edge_count() == mk.edge_count(), "edge counts differ");
    Ok("n = 1..3 connected cubic with 16n^4 vertices; Λ_1 ≅ MK".into())
}

fn c3_lifting() -> Outcome {
    for n in 1..=3u32 {
        let c = lambda(n);
        for g in aut_b_generators().generators() {
            let l = c.lift(g).map_err(|e| format!("n={n}: {e}"))?;
            ensure!(c.graph().is_automorphism(l.cover_perm.images()), "n={n}: lift is not an automorphism");
        }
        let decks: Vec<Perm> = c.deck_generators().into_iter().map(|d| d.cover_perm).collect();
        let order = PermGroup::new(c.vertex_count(), decks.clone()).unwrap().order().unwrap();
        ensure!(order == (n as u128).pow(4), "n={n}: deck order {order}");
        for v in [0, c.vertex_count() - 1] {
            let orbit = SchreierTree::new(&decks, c.vertex_count(), v).orbit().to_vec();
            ensure!(orbit.len() == c.fibre_size(), "n={n}: deck orbit is not a fibre");
            ensure!(orbit.iter().all(|&u| c.projection(u) == c.projection(v)), "n={n}: deck leaves the fibre");
        }
    }
    Ok("all B generators lift for n = 1..3; deck group of order n^4 regular on fibres".into())
}

fn c4_order_oracle() -> Outcome {
    for n in 1..=2u32 {
        let c = lambda(n);
        let (_, group) = c.lifted_group(aut_b_generators().generators()).unwrap();
        let order = group.order().unwrap();
        ensure!(order == 96 * (n as u128).pow(4), "n={n}: order {order}");
    }
    Ok("|B̃| = 96 and 1536 for n = 1, 2".into())
}

fn c5_s1() -> Outcome {
    let c = lambda(3);
    let s = s1_vertices(&c).unwrap();
    let r = verify_eigen_support(c.graph(), &s);
    ensure!(
        r.ok && r.members_odd == 72 && r.others_even == 1224,
        "{} odd, {} even, {} violations",
        r.members_odd,
        r.others_even,
        r.violations.len()
    );
    Ok("72 members odd, 1224 others even".into())
}

fn c6_greedy() -> Outcome {
    let c = lambda(3);
    let x1 = s1_vertices(&c).unwrap().indicator(c.vertex_count());
    let (_, group) = c.lifted_group(aut_b_generators().generators()).unwrap();
    let basis = greedy_orbit_basis(c.graph(), &x1, &group).map_err(|e| e.to_string())?;
    ensure!(basis.size() >= 18, "t = {}", basis.size());
    ensure!(basis.basis.dim() == basis.size(), "vectors are dependent");
    ensure!(basis.vectors.iter().all(|x| x.weight() == 72), "support size differs from 72");
    let mut covered = vec![false; c.vertex_count()];
    basis.vectors.iter().flat_map(|x| x.support()).for_each(|u| covered[u] = true);
    ensure!(covered.iter().all(|&b| b), "supports do not cover V");
    Ok(format!("t = {} ≥ 18 independent vectors, supports of size 72 cover all 1296 vertices", basis.size()))
}

fn c7_formula() -> Outcome {
    let mut ns = vec![1u32, 2, 3];
    if large() {
        ns.push(4);
    }
    let mut parts = Vec::new();
    for n in ns {
        let dim = cover_eigenspace(&lambda(n)).dim;
        ensure!(dim == formula_dimension(n), "n={n}: dim {dim}, formula {}", formula_dimension(n));
        parts.push(format!("n={n}: {dim}"));
    }
    Ok(parts.join(", "))
}

fn c8_local_actions() -> Outcome {
    let mut ns = vec![1u32, 2];
    if large() {
        ns.push(3);
    }
    for n in ns {
        let a = build_gamma(n).unwrap();
        let nv = a.lambda().vertex_count();
        let special = a.cover.vertex_by_label("a", [0; 4]).unwrap();
        for v in [special, 0, nv / 2 + 1] {
            for c in Construction::ALL {
                let r = vertex_stabiliser_local_action(&a, c, v).map_err(|e| e.to_string())?;
                ensure!(r.identified_as == c.target(), "n={n} v={} {c}: {}", r.vertex, r.identified_as);
                ensure!(r.kernel_image_order == 4, "n={n} {c}: kernel image order {}", r.kernel_image_order);
            }
        }
    }
    Ok("G1 → A4(6), G2 → S4(6d), G3 → S4(6c); (E_1)_v image of order 4".into())
}

fn c9_stabiliser_growth() -> Outcome {
    for n in 1..=3u32 {
        let a = build_gamma(n).unwrap();
        let v = a.cover.vertex_by_label("a", [0; 4]).unwrap();
        let r = vertex_stabiliser_local_action(&a, Construction::G1, v).unwrap();
        ensure!(r.stabiliser_order_log2_times3 + 1 == a.e1_dim(), "n={n}: exponent mismatch");
        if n <= 2 {
            // Independent oracle: stabiliser chains on the whole groups.
            let orders: Vec<u128> =
                Construction::ALL.iter().map(|&c| generic_stabiliser_order(&a, c, v).unwrap()).collect();
            ensure!(orders[0] == 3 << r.stabiliser_order_log2_times3, "n={n}: generic order {}", orders[0]);
            ensure!(
                orders[2] == 2 * orders[0] && orders[1] == orders[2],
                "n={n}: |G3| = 2|G1| = |G2| fails: {orders:?}"
            );
        }
        if n == 3 {
            let m = 32 * 81;
            // 3·2^k ≥ 3·2^{m/144 − 1} ⟺ 144k ≥ m − 144.
            ensure!(144 * r.stabiliser_order_log2_times3 as i64 >= m - 144, "bound fails");
            ensure!(r.meets_bound, "report disagrees");
        }
    }
    Ok("stabiliser 3·2^(dim E_1 − 1), stabiliser chains agree for n ≤ 2 with |G3| = 2|G1| = |G2|; n = 3: 2^163 ≥ 2^17"
        .into())
}

fn c10_sigma_tau() -> Outcome {
    for n in 1..=3u32 {
        let a = build_gamma(n).unwrap();
        let r = check_sigma_tau(&a, &build_sigma_tau(&a).unwrap()).unwrap();
        ensure!(r.ok, "n={n}: {r:?}");
    }
    Ok("σ^bσ ∈ E_1, special arc, τσ fixes (v,0), (τσ)^2 ∈ G1 for n = 1..3".into())
}

fn c11_properties() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for _ in 0..100 {
        let (r, c) = (rng.gen_range(1..=64), rng.gen_range(1..=64));
        let mut m = Gf2Matrix::zeros(r, c);
        let density = rng.gen_range(0.05..0.95);
        for i in 0..r {
            for j in 0..c {
                if rng.gen_bool(density) {
                    m.set(i, j, true);
                }
            }
        }
        let k = kernel_basis(&m);
        ensure!(rank(&m) + k.dim() == c, "rank-nullity fails on {r}x{c}");
        for x in k.vectors() {
            ensure!(m.mul_vec(x).unwrap().is_zero(), "kernel vector not in kernel");
        }
    }
    for n in 1..=3u32 {
        let c = lambda(n);
        let gens = aut_b_generators().generators().to_vec();
        for g in &gens {
            for h in &gens {
                let lg = c.lift(g).unwrap();
                let lh = c.lift(h).unwrap();
                let proj = c.projects_to(&lg.cover_perm.then(&lh.cover_perm));
                ensure!(proj.as_ref() == Some(&g.then(h)), "n={n}: composition does not project");
            }
        }
    }
    let a = build_gamma(2).unwrap();
    let v = a.cover.vertex_by_label("a", [0; 4]).unwrap();
    for c in Construction::ALL {
        let local = vertex_stabiliser_local_action(&a, c, v).unwrap().local_group.unwrap();
        for _ in 0..20 {
            let mut images: Vec<usize> = (0..6).collect();
            for i in (1..6).rev() {
                images.swap(i, rng.gen_range(0..=i));
            }
            let pi = Perm::from_images(images).unwrap();
            let relabelled =
                PermGroup::new(6, local.generators().iter().map(|g| g.conjugate_by(&pi)).collect()).unwrap();
            ensure!(identify_degree6(&relabelled).unwrap() == c.target(), "{c}: relabelling changes the class");
        }
    }
    Ok("rank-nullity ×100, lift composition over B pairs, 20 relabelings per group".into())
}

struct Criterion {
    id: u32,
    name: &'static str,
    gating: bool,
    limit: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion { id: 1, name: "MK base facts", gating: true, limit: secs(1), run: c1_mk_base },
        Criterion { id: 2, name: "cover facts", gating: true, limit: secs(5), run: c2_cover_facts },
        Criterion { id: 3, name: "lifting", gating: true, limit: None, run: c3_lifting },
        Criterion { id: 4, name: "order oracle", gating: true, limit: secs(30), run: c4_order_oracle },
        Criterion { id: 5, name: "S_1 parity", gating: true, limit: secs(1), run: c5_s1 },
        Criterion { id: 6, name: "greedy basis", gating: true, limit: None, run: c6_greedy },
        Criterion { id: 7, name: "eigenspace formula (advisory)", gating: false, limit: None, run: c7_formula },
        Criterion { id: 8, name: "local actions", gating: true, limit: secs(60), run: c8_local_actions },
        Criterion { id: 9, name: "stabiliser growth", gating: true, limit: None, run: c9_stabiliser_growth },
        Criterion { id: 10, name: "sigma and tau", gating: true, limit: None, run: c10_sigma_tau },
        Criterion { id: 11, name: "property suites", gating: true, limit: None, run: c11_properties },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match (outcome, c.limit) {
            (Ok(_), Some(limit)) if elapsed > limit => Err(format!("took {elapsed:.2?}, limit {limit:?}")),
            (o, _) => o,
        };
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d.as_str()),
            Err(d) if c.gating => ("FAIL", d.as_str()),
            Err(d) => ("ADVISORY-MISMATCH", d.as_str()),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("[{tag}] criterion {:>2} {} ({elapsed:.2?}): {detail}", c.id, c.name);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
