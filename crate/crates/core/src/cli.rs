//! Command-line front end: construction, single checks and the full
//! certification run. Every report is printed as pretty JSON.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use crate::cover::{derived_cover, mk_voltage, Cover};
use crate::eigen::{
    cover_eigenspace, greedy_orbit_basis, s1_vertices, verify_eigen_support, EigenSummary, SupportCheck,
};
use crate::error::{Error, Result};
use crate::localaction::{
    build_gamma, build_sigma_tau, check_sigma_tau, vertex_stabiliser_local_action, Construction, LocalActionReport,
    SigmaTauReport,
};
use crate::mk::{aut_a_generators, aut_b_generators, build_mk};
use crate::perm::{s_arc_count_regularity, ArcAction};

/// Largest n run without `--allow-large`.
pub const DESK_SCALE_MAX_N: u32 = 3;

#[derive(Debug, Parser)]
#[command(name = "atcover", version, about = "Arc-transitive 6-valent graphs from covers of the Möbius–Kantor graph")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write the cover graph and its voltage table.
    Build {
        #[arg(long)]
        n: u32,
        /// Output directory.
        #[arg(long)]
        out: PathBuf,
        /// Also write a DOT file.
        #[arg(long)]
        dot: bool,
        #[arg(long)]
        allow_large: bool,
    },
    /// Dimension of the 1-eigenspace over GF(2).
    Eigen {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        allow_large: bool,
    },
    /// Parity check of the 72-vertex support set.
    VerifyS1 {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        allow_large: bool,
    },
    /// Local action of a vertex stabiliser.
    LocalAction {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum)]
        group: GroupArg,
        /// Cover vertex label such as `(a,0,0,0,0)`.
        #[arg(long)]
        vertex: Option<String>,
        #[arg(long)]
        allow_large: bool,
    },
    /// Run every check for n = 1..=n_max.
    Certify {
        #[arg(long, default_value_t = DESK_SCALE_MAX_N)]
        n_max: u32,
        #[arg(long)]
        parallel: bool,
        /// Also write the report here.
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        allow_large: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GroupArg {
    G1,
    G2,
    G3,
}

impl From<GroupArg> for Construction {
    fn from(g: GroupArg) -> Self {
        match g {
            GroupArg::G1 => Construction::G1,
            GroupArg::G2 => Construction::G2,
            GroupArg::G3 => Construction::G3,
        }
    }
}

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Run(Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Io(_) | Error::InvalidModulus { .. } | Error::UnknownLabel(_) | Error::ResourceLimit { .. } => {
                CliError::Usage(e.to_string())
            }
            e => CliError::Run(e),
        }
    }
}

fn check_n(n: u32, min: u32, allow_large: bool) -> Result<(), CliError> {
    if n < min {
        return Err(CliError::Usage(format!("n must be at least {min}, got {n}")));
    }
    if n > DESK_SCALE_MAX_N && !allow_large {
        return Err(CliError::Usage(format!(
            "n = {n} builds {} cover vertices; pass --allow-large to run it",
            16 * (n as u64).pow(4)
        )));
    }
    if n > DESK_SCALE_MAX_N {
        eprintln!("warning: n = {n} is beyond desk scale and may take a long time");
    }
    Ok(())
}

fn lambda(n: u32) -> Result<Cover> {
    derived_cover(&mk_voltage(n)?)
}

fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

#[derive(Debug, Serialize)]
pub struct BuildOutput {
    pub n: u32,
    pub vertices: usize,
    pub edges: usize,
    pub files: Vec<String>,
}

pub fn cmd_build(n: u32, out: &Path, dot: bool) -> Result<BuildOutput> {
    let cover = lambda(n)?;
    fs::create_dir_all(out)?;
    let mut files = Vec::new();
    let mut write = |name: String, body: String| -> Result<()> {
        let path = out.join(&name);
        fs::write(&path, body)?;
        files.push(path.display().to_string());
        Ok(())
    };
    write(format!("lambda_{n}.json"), cover.graph().to_json())?;
    write(format!("voltage_{n}.json"), to_json(&cover.voltage().to_json_value())?)?;
    if dot {
        write(format!("lambda_{n}.dot"), cover.graph().to_dot())?;
    }
    Ok(BuildOutput { n, vertices: cover.vertex_count(), edges: cover.graph().edge_count(), files })
}

#[derive(Debug, Clone, Serialize)]
pub struct EigenOutput {
    #[serde(flatten)]
    pub summary: EigenSummary,
    /// `|V|/72`, the guaranteed lower bound once n ≥ 3.
    pub lower_bound: usize,
    pub lower_bound_applies: bool,
    pub meets_lower_bound: bool,
}

pub fn cmd_eigen(n: u32) -> Result<EigenOutput> {
    let cover = lambda(n)?;
    let summary = cover_eigenspace(&cover).summary(n);
    let lower_bound = summary.vertices.div_ceil(72);
    Ok(EigenOutput { lower_bound, lower_bound_applies: n >= 3, meets_lower_bound: summary.dim >= lower_bound, summary })
}

#[derive(Debug, Clone, Serialize)]
pub struct S1Output {
    pub n: u32,
    pub members: usize,
    #[serde(flatten)]
    pub check: SupportCheck,
}

pub fn cmd_verify_s1(n: u32) -> Result<S1Output> {
    let cover = lambda(n)?;
    let s = s1_vertices(&cover)?;
    let check = verify_eigen_support(cover.graph(), &s);
    Ok(S1Output { n, members: s.len(), check })
}

pub fn cmd_local_action(n: u32, c: Construction, vertex: Option<&str>) -> Result<LocalActionReport> {
    let action = build_gamma(n)?;
    let label = vertex.unwrap_or("(a,0,0,0,0)");
    let v = action.lambda().find_label(label).ok_or_else(|| Error::UnknownLabel(label.into()))?;
    vertex_stabiliser_local_action(&action, c, v)
}

#[derive(Debug, Clone, Serialize)]
pub struct BaseReport {
    pub vertices: usize,
    pub edges: usize,
    pub cubic: bool,
    pub connected: bool,
    pub b_order: u128,
    pub b_two_arc_regular: bool,
    pub a_order: u128,
    pub a_arc_regular: bool,
    pub ok: bool,
}

pub fn base_report() -> Result<BaseReport> {
    let mk = build_mk();
    let (b, a) = (aut_b_generators(), aut_a_generators());
    let mut r = BaseReport {
        vertices: mk.vertex_count(),
        edges: mk.edge_count(),
        cubic: mk.is_regular(3),
        connected: mk.is_connected(),
        b_order: b.order()?,
        b_two_arc_regular: s_arc_count_regularity(&b, &mk, 2)? == ArcAction::Regular,
        a_order: a.order()?,
        a_arc_regular: s_arc_count_regularity(&a, &mk, 1)? == ArcAction::Regular,
        ok: false,
    };
    r.ok = r.vertices == 16
        && r.edges == 24
        && r.cubic
        && r.connected
        && r.b_order == 96
        && r.b_two_arc_regular
        && r.a_order == 48
        && r.a_arc_regular;
    Ok(r)
}

#[derive(Debug, Clone, Serialize)]
pub struct CoverStats {
    pub vertices: usize,
    pub edges: usize,
    pub cubic: bool,
    pub connected: bool,
    pub b_generators_lift: bool,
    pub deck_regular_on_fibres: bool,
    /// Order of the lifted group by stabiliser chain; computed for n ≤ 2.
    pub lifted_order: Option<u128>,
    pub expected_lifted_order: u128,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GreedyReport {
    pub size: usize,
    pub lower_bound: usize,
    pub support_sizes_all_72: bool,
    pub covers_vertices: bool,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Gated<T> {
    Ran(T),
    Skipped { reason: String },
}

impl<T> Gated<T> {
    fn passes(&self, ok: impl Fn(&T) -> bool) -> bool {
        match self {
            Gated::Ran(t) => ok(t),
            Gated::Skipped { .. } => true,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct LevelReport {
    pub n: u32,
    pub cover: CoverStats,
    /// Advisory: a formula mismatch does not fail the level.
    pub eigen: EigenSummary,
    pub s1: Gated<S1Output>,
    pub greedy_basis: Gated<GreedyReport>,
    pub local_actions: Vec<LocalActionReport>,
    pub sigma_tau_checks: SigmaTauReport,
    pub exponential_bound_applies: bool,
    pub ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CertifyReport {
    pub n_max: u32,
    pub base: BaseReport,
    pub levels: Vec<LevelReport>,
    pub pass: bool,
}

fn cover_stats(cover: &Cover, n: u32) -> Result<CoverStats> {
    let b = aut_b_generators();
    let lifted = cover.lifted_group(b.generators());
    let b_generators_lift = lifted.is_ok();
    let nv = cover.vertex_count();
    let fibre = cover.fibre_size();
    let deck_regular_on_fibres = cover
        .deck_generators()
        .iter()
        .all(|d| (0..nv).all(|v| cover.projection(d.cover_perm.apply(v)) == cover.projection(v)))
        && {
            let gens: Vec<_> = cover.deck_generators().into_iter().map(|d| d.cover_perm).collect();
            crate::perm::SchreierTree::new(&gens, nv, 0).orbit().len() == fibre
        };
    let expected_lifted_order = 96 * fibre as u128;
    let lifted_order = match (&lifted, n <= 2) {
        (Ok((_, group)), true) => Some(group.order()?),
        _ => None,
    };
    let g = cover.graph();
    let mut s = CoverStats {
        vertices: nv,
        edges: g.edge_count(),
        cubic: g.is_regular(3),
        connected: g.is_connected(),
        b_generators_lift,
        deck_regular_on_fibres,
        lifted_order,
        expected_lifted_order,
        ok: false,
    };
    s.ok = s.vertices == 16 * fibre
        && s.cubic
        && s.connected
        && s.b_generators_lift
        && s.deck_regular_on_fibres
        && s.lifted_order.is_none_or(|o| o == expected_lifted_order);
    Ok(s)
}

pub fn certify_level(n: u32) -> Result<LevelReport> {
    let action = build_gamma(n)?;
    let cover = &action.cover;
    let cover_stats = cover_stats(cover, n)?;
    let eigen = cover_eigenspace(cover).summary(n);
    let (s1, greedy_basis) = if n >= 3 {
        let s1 = cmd_verify_s1(n)?;
        let set = s1_vertices(cover)?;
        let x1 = set.indicator(cover.vertex_count());
        let (_, group) = cover.lifted_group(aut_b_generators().generators())?;
        let basis = greedy_orbit_basis(cover.graph(), &x1, &group)?;
        let lower_bound = cover.vertex_count().div_ceil(72);
        let mut covered = vec![false; cover.vertex_count()];
        for x in &basis.vectors {
            for u in x.support() {
                covered[u] = true;
            }
        }
        let mut g = GreedyReport {
            size: basis.size(),
            lower_bound,
            support_sizes_all_72: basis.vectors.iter().all(|x| x.weight() == 72),
            covers_vertices: covered.into_iter().all(|c| c),
            ok: false,
        };
        g.ok = g.size >= g.lower_bound && g.support_sizes_all_72 && g.covers_vertices;
        (Gated::Ran(s1), Gated::Ran(g))
    } else {
        let reason = "the 72-vertex support set needs n >= 3".to_string();
        (Gated::Skipped { reason: reason.clone() }, Gated::Skipped { reason })
    };
    let v = cover.vertex_by_label("a", [0; 4])?;
    let local_actions =
        Construction::ALL.iter().map(|&c| vertex_stabiliser_local_action(&action, c, v)).collect::<Result<Vec<_>>>()?;
    let sigma_tau_checks = check_sigma_tau(&action, &build_sigma_tau(&action)?)?;
    let ok = cover_stats.ok
        && s1.passes(|s| s.check.ok && s.members == 72)
        && greedy_basis.passes(|g| g.ok)
        && local_actions.iter().all(LocalActionReport::ok)
        && sigma_tau_checks.ok;
    Ok(LevelReport {
        n,
        cover: cover_stats,
        eigen,
        s1,
        greedy_basis,
        local_actions,
        sigma_tau_checks,
        exponential_bound_applies: n >= 3,
        ok,
    })
}

pub fn cmd_certify(n_max: u32, parallel: bool) -> Result<CertifyReport> {
    let base = base_report()?;
    let levels = if parallel {
        (1..=n_max).into_par_iter().map(certify_level).collect::<Result<Vec<_>>>()?
    } else {
        (1..=n_max).map(certify_level).collect::<Result<Vec<_>>>()?
    };
    let pass = base.ok && levels.iter().all(|l| l.ok);
    Ok(CertifyReport { n_max, base, levels, pass })
}

fn dispatch(command: &Command, stdout: &mut dyn Write) -> Result<i32, CliError> {
    let emit = |stdout: &mut dyn Write, body: &str| -> Result<(), CliError> {
        stdout.write_all(body.as_bytes()).map_err(Error::from)?;
        Ok(())
    };
    let verdict = |ok: bool| if ok { EXIT_PASS } else { EXIT_FAIL };
    match command {
        Command::Build { n, out, dot, allow_large } => {
            check_n(*n, 1, *allow_large)?;
            let r = cmd_build(*n, out, *dot)?;
            emit(stdout, &to_json(&r)?)?;
            Ok(EXIT_PASS)
        }
        Command::Eigen { n, allow_large } => {
            check_n(*n, 1, *allow_large)?;
            let r = cmd_eigen(*n)?;
            emit(stdout, &to_json(&r)?)?;
            Ok(verdict(!r.lower_bound_applies || r.meets_lower_bound))
        }
        Command::VerifyS1 { n, allow_large } => {
            check_n(*n, 3, *allow_large)?;
            let r = cmd_verify_s1(*n)?;
            emit(stdout, &to_json(&r)?)?;
            Ok(verdict(r.check.ok))
        }
        Command::LocalAction { n, group, vertex, allow_large } => {
            check_n(*n, 1, *allow_large)?;
            let r = cmd_local_action(*n, (*group).into(), vertex.as_deref())?;
            emit(stdout, &to_json(&r)?)?;
            Ok(verdict(r.ok()))
        }
        Command::Certify { n_max, parallel, json, allow_large } => {
            check_n(*n_max, 1, *allow_large)?;
            let r = cmd_certify(*n_max, *parallel)?;
            let body = to_json(&r)?;
            if let Some(path) = json {
                fs::write(path, &body).map_err(Error::from)?;
            }
            emit(stdout, &body)?;
            Ok(verdict(r.pass))
        }
    }
}

/// Runs a parsed command and returns the process exit code.
pub fn run(cli: &Cli, stdout: &mut dyn Write) -> i32 {
    match dispatch(&cli.command, stdout) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Run(e)) => {
            eprintln!("check failed: {e}");
            EXIT_FAIL
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String) {
        let cli = Cli::try_parse_from(std::iter::once("atcover").chain(args.iter().copied())).unwrap();
        let mut out = Vec::new();
        let code = run(&cli, &mut out);
        (code, String::from_utf8(out).unwrap())
    }

    #[test]
    fn eigen_small() {
        let (code, out) = run_args(&["eigen", "--n", "1"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["dim"], 4);
        assert_eq!(v["matches_formula"], true);
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_args(&["certify", "--n-max", "0"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["eigen", "--n", "4"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["verify-s1", "--n", "2"]).0, EXIT_USAGE);
        assert_eq!(run_args(&["local-action", "--n", "1", "--group", "g1", "--vertex", "nope"]).0, EXIT_USAGE);
        assert!(Cli::try_parse_from(["atcover", "local-action", "--n", "1", "--group", "g4"]).is_err());
    }

    #[test]
    fn local_action_json_fields() {
        let (code, out) = run_args(&["local-action", "--n", "1", "--group", "g3", "--vertex", "(abz,0,0,0,0)"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        for key in [
            "construction",
            "n",
            "identified_as",
            "local_order",
            "stabiliser_order_log2_times3",
            "bound_log2",
            "witnesses",
        ] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(v["identified_as"], "S4(6c)");
    }

    #[test]
    fn certify_one_is_deterministic() {
        let (c1, a) = run_args(&["certify", "--n-max", "1"]);
        let (c2, b) = run_args(&["certify", "--n-max", "1", "--parallel"]);
        assert_eq!((c1, c2), (0, 0));
        assert_eq!(a, b);
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["levels"][0]["s1"]["status"], "skipped");
    }
}
