//! `mgzz` command-line front end.

mod recipe;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use mgzz::bounds::{self, Regime};
use mgzz::builders::FHParams;
use mgzz::engine::{conjugate_through, expectation};
use mgzz::oracle::{
    pauli_conjugation_decompose, statevector_expectation, MAX_DENSE_QUBITS,
    MAX_STATEVECTOR_QUBITS,
};
use mgzz::{Circuit, EngineConfig, Mode, Observable, ProductState};
use serde::Serialize;

#[derive(Parser)]
#[command(name = "mgzz", version, about = "Sparse Pauli-basis simulation of matchgate + ZZ circuits")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate ⟨Z_j⟩ for a circuit and product state.
    Run(RunArgs),
    /// Rank bounds as JSON, or a sweep as CSV.
    Bounds(BoundsArgs),
    /// Compare the engine against the dense oracles.
    Check(CheckArgs),
    /// Rank and time per gate for Fermi-Hubbard Trotter circuits.
    ProfileFh(ProfileFhArgs),
    /// Write a builder's circuit as JSON.
    Build(BuildArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Circuit JSON file.
    #[arg(long)]
    circuit: Option<PathBuf>,
    /// Builder spec, e.g. `fermi-hubbard:n_sites=5,T=3,sites=1`.
    #[arg(long)]
    builder: Option<String>,
}

impl Source {
    fn load(&self, seed: u64) -> Result<Circuit> {
        match (&self.circuit, &self.builder) {
            (Some(path), None) => {
                let text = std::fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                Ok(Circuit::from_json(&text)?)
            }
            (None, Some(spec)) => recipe::build(spec, seed),
            _ => bail!("give exactly one of --circuit and --builder"),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Heisenberg,
    Interaction,
}

#[derive(Args)]
struct RunArgs {
    #[command(flatten)]
    source: Source,
    /// Measured qubit (1-based).
    #[arg(long, default_value_t = 1)]
    qubit: usize,
    /// `zeros`, `bits:0110` or `bloch:[[x,y,z],...]`.
    #[arg(long, default_value = "zeros")]
    state: String,
    #[arg(long, default_value_t = 0.0)]
    epsilon: f64,
    #[arg(long, value_enum, default_value_t = ModeArg::Heisenberg)]
    mode: ModeArg,
    /// Gates on the state side in interaction mode.
    #[arg(long)]
    cut: Option<usize>,
    /// Per-step CSV.
    #[arg(long)]
    profile: Option<PathBuf>,
    /// Result JSON; printed to stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    parallel: bool,
}

#[derive(Serialize)]
struct RunOutput {
    format: u32,
    value: f64,
    chi_total: u64,
    pruned_mass_total: f64,
    elapsed: f64,
    n: usize,
    gates: usize,
    qubit: usize,
    epsilon: f64,
}

fn cmd_run(a: &RunArgs) -> Result<()> {
    let circuit = a.source.load(a.seed)?;
    let state = ProductState::parse_spec(&a.state, circuit.n())?;
    let config = EngineConfig {
        epsilon: a.epsilon,
        mode: match a.mode {
            ModeArg::Heisenberg => Mode::Heisenberg,
            ModeArg::Interaction => Mode::InteractionPicture,
        },
        cut: a.cut,
        parallel: a.parallel,
        profile: a.profile.is_some(),
        corrupt_tables: false,
    };
    let t0 = Instant::now();
    let (value, profile) = expectation::<f64>(&circuit, a.qubit, &state, &config)?;
    let elapsed = t0.elapsed().as_secs_f64();
    if let Some(path) = &a.profile {
        std::fs::write(path, profile.to_csv())
            .with_context(|| format!("writing {}", path.display()))?;
    }
    let out = RunOutput {
        format: 1,
        value,
        chi_total: profile.chi_total,
        pruned_mass_total: profile.pruned_mass_total,
        elapsed,
        n: circuit.n(),
        gates: circuit.len(),
        qubit: a.qubit,
        epsilon: a.epsilon,
    };
    emit(&serde_json::to_string_pretty(&out)?, a.out.as_ref())
}

#[derive(Clone, Copy, ValueEnum)]
enum Structure {
    General,
    Layered,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    /// Gate count.
    #[arg(long = "N", default_value_t = 1)]
    big_n: usize,
    /// Sweep over a range of n (e.g. `4..12`), all m from 0 to n−2.
    #[arg(long)]
    sweep: Option<String>,
    /// Which polynomial-regime bound fills the sweep's bound column.
    #[arg(long, value_enum, default_value_t = Structure::General)]
    structure: Structure,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Serialize)]
struct VersionedReport<'a> {
    format: u32,
    #[serde(flatten)]
    report: &'a bounds::BoundReport,
}

fn cmd_bounds(a: &BoundsArgs) -> Result<()> {
    if let Some(range) = &a.sweep {
        let ns: Vec<usize> = recipe::parse_list(range)?;
        let (lo, hi) = match (ns.iter().min(), ns.iter().max()) {
            (Some(&lo), Some(&hi)) => (lo, hi),
            _ => bail!("empty sweep range"),
        };
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["n", "m", "N", "chi_general", "bound", "regime"])?;
        for row in bounds::sweep(lo..=hi, a.big_n)? {
            let mut bound = row.bound;
            if matches!(a.structure, Structure::Layered) && row.m < bounds::m_critical(row.n) {
                bound = bounds::bound_layered(row.n, row.m, row.big_n)?;
            }
            let regime = match row.regime {
                Regime::Polynomial => "polynomial",
                Regime::Exponential => "exponential",
            };
            w.write_record([
                row.n.to_string(),
                row.m.to_string(),
                row.big_n.to_string(),
                format!("{:e}", row.chi_general),
                format!("{bound:e}"),
                regime.to_string(),
            ])?;
        }
        let text = String::from_utf8(w.into_inner()?)?;
        return emit(&text, a.out.as_ref());
    }
    let (Some(n), Some(m)) = (a.n, a.m) else {
        bail!("bounds needs --n and --m, or --sweep");
    };
    let report = bounds::report(n, m, a.big_n)?;
    let json = serde_json::to_string_pretty(&VersionedReport {
        format: 1,
        report: &report,
    })?;
    emit(&json, a.out.as_ref())
}

#[derive(Args)]
struct CheckArgs {
    /// Check one circuit instead of random ones.
    #[arg(long)]
    circuit: Option<PathBuf>,
    #[arg(long)]
    builder: Option<String>,
    /// Random circuits to draw.
    #[arg(long, default_value_t = 20)]
    seeds: u64,
    /// Qubit counts for random circuits, e.g. `2..6`.
    #[arg(long, default_value = "2..6")]
    n: String,
    /// Gates per random circuit.
    #[arg(long = "N", default_value_t = 30)]
    big_n: usize,
    /// Largest ZZ count per random circuit.
    #[arg(long, default_value_t = 4)]
    max_zz: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
    #[arg(long, hide = true)]
    corrupt: bool,
}

fn cmd_check(a: &CheckArgs) -> Result<bool> {
    let config = EngineConfig {
        corrupt_tables: a.corrupt,
        ..EngineConfig::default()
    };
    let mut circuits = Vec::new();
    if a.circuit.is_some() || a.builder.is_some() {
        let src = Source {
            circuit: a.circuit.clone(),
            builder: a.builder.clone(),
        };
        circuits.push(src.load(a.seed)?);
    } else {
        let ns: Vec<usize> = recipe::parse_list(&a.n)?;
        if ns.is_empty() {
            bail!("empty --n range");
        }
        for s in 0..a.seeds {
            let seed = a.seed.wrapping_add(s);
            let n = ns[(s as usize) % ns.len()];
            let m = (s as usize) % (a.max_zz + 1);
            let spec = format!("mgzz:n={n},N={},m={},flavor=mixed", a.big_n, m.min(a.big_n));
            circuits.push(recipe::build(&spec, seed)?);
        }
    }
    let mut worst_value = 0.0f64;
    let mut worst_coeff = 0.0f64;
    let mut skipped = 0;
    for circuit in &circuits {
        let n = circuit.n();
        if n > MAX_STATEVECTOR_QUBITS {
            skipped += 1;
            continue;
        }
        let state = ProductState::zeros(n)?;
        for j in 1..=n {
            let (v, _) = expectation::<f64>(circuit, j, &state, &config)?;
            let want = statevector_expectation(circuit, &state, j)?;
            worst_value = worst_value.max((v - want).abs());
            if n <= MAX_DENSE_QUBITS {
                let z = Observable::from_single_z(n, j)?;
                let (got, _) = conjugate_through(circuit, &z, &config)?;
                let dec = pauli_conjugation_decompose(circuit, &z)?;
                worst_coeff = worst_coeff.max(coefficient_gap(&got, &dec));
            }
        }
    }
    if skipped > 0 {
        eprintln!("skipped {skipped} circuit(s) above {MAX_STATEVECTOR_QUBITS} qubits");
    }
    let worst = worst_value.max(worst_coeff);
    let ok = worst <= a.tolerance;
    println!(
        "checked {} circuit(s): max |Δ⟨Z⟩| {worst_value:e}, max coefficient gap {worst_coeff:e}: {}",
        circuits.len() - skipped,
        if ok { "ok" } else { "FAILED" }
    );
    Ok(ok)
}

fn coefficient_gap(a: &Observable, b: &Observable) -> f64 {
    a.keys()
        .chain(b.keys())
        .map(|k| (a.get(k) - b.get(k)).abs())
        .fold(0.0, f64::max)
}

#[derive(Args)]
struct ProfileFhArgs {
    /// Site counts, e.g. `3..5`.
    #[arg(long, default_value = "5")]
    n_sites: String,
    /// Trotter step counts, e.g. `0..4`.
    #[arg(long, default_value = "0..4")]
    trotter: String,
    /// Pruning thresholds, e.g. `0,1e-8,1e-5`.
    #[arg(long, default_value = "0")]
    epsilon: String,
    /// Interaction sites; `none` for a matchgate-only circuit.
    #[arg(long, default_value = "1")]
    sites: String,
    #[arg(long, default_value_t = 1)]
    qubit: usize,
    #[arg(long, default_value_t = 1.0)]
    hopping: f64,
    #[arg(long, default_value_t = 4.0)]
    onsite: f64,
    #[arg(long, default_value_t = 0.1)]
    dt: f64,
    #[arg(long, default_value_t = 1)]
    q: usize,
    /// Instances with more qubits are skipped.
    #[arg(long, default_value_t = 24)]
    max_qubits: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    parallel: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn cmd_profile_fh(a: &ProfileFhArgs) -> Result<()> {
    let sizes: Vec<usize> = recipe::parse_list(&a.n_sites)?;
    let steps: Vec<usize> = recipe::parse_list(&a.trotter)?;
    let eps = recipe::parse_floats(&a.epsilon)?;
    let sites: Vec<usize> = if a.sites == "none" {
        Vec::new()
    } else {
        recipe::parse_list(&a.sites)?
    };
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "n_sites",
        "T",
        "epsilon",
        "chi_per_gate",
        "time_per_gate",
        "abs_error_vs_eps0",
    ])?;
    for &n_sites in &sizes {
        if 2 * n_sites > a.max_qubits {
            eprintln!("skipping n_sites = {n_sites}: {} qubits exceeds --max-qubits", 2 * n_sites);
            continue;
        }
        for &t in &steps {
            let params = FHParams {
                n_sites,
                trotter_steps: t,
                hopping: a.hopping,
                onsite: a.onsite,
                dt: a.dt,
                interaction_sites: sites.clone(),
                q: a.q,
                seed: a.seed,
            };
            let circuit = mgzz::builders::fermi_hubbard_trotter(&params)?;
            let mut bits = vec![false; 2 * n_sites];
            for c in 0..a.q.min(n_sites) {
                bits[c] = true;
                bits[n_sites + c] = true;
            }
            let state = ProductState::from_bits(&bits)?;
            let norm = params.nominal_gate_count() as f64;
            let base = if eps.iter().any(|&e| e > 0.0) {
                Some(expectation::<f64>(&circuit, a.qubit, &state, &EngineConfig::default())?.0)
            } else {
                None
            };
            for &e in &eps {
                let config = EngineConfig {
                    epsilon: e,
                    parallel: a.parallel,
                    ..EngineConfig::default()
                };
                let t0 = Instant::now();
                let (v, prof) = expectation::<f64>(&circuit, a.qubit, &state, &config)?;
                let secs = t0.elapsed().as_secs_f64();
                let err = match base {
                    Some(b) if e > 0.0 => format!("{:e}", (v - b).abs()),
                    _ => String::new(),
                };
                w.write_record([
                    n_sites.to_string(),
                    t.to_string(),
                    format!("{e:e}"),
                    format!("{}", prof.chi_total as f64 / norm),
                    format!("{:e}", secs / norm),
                    err,
                ])?;
            }
        }
    }
    let text = String::from_utf8(w.into_inner()?)?;
    emit(&text, a.out.as_ref())
}

#[derive(Args)]
struct BuildArgs {
    #[arg(long)]
    builder: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn emit(text: &str, path: Option<&PathBuf>) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            match writeln!(out, "{}", text.trim_end()) {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
                other => Ok(other?),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run(a) => cmd_run(a).map(|_| true),
        Command::Bounds(a) => cmd_bounds(a).map(|_| true),
        Command::Check(a) => cmd_check(a),
        Command::ProfileFh(a) => cmd_profile_fh(a).map(|_| true),
        Command::Build(a) => recipe::build(&a.builder, a.seed)
            .and_then(|c| emit(&c.to_json(), a.out.as_ref()))
            .map(|_| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
