//! Command-line driver: builds states from JSON specs and reports
//! discords, landscapes, purity sweeps, witnesses and the classical
//! identity check as text, CSV or JSON.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use tripartite_discord::classical_info::{
    mutual_information_i, mutual_information_j, trivariate_mi_expressions, JointDistribution,
};
use tripartite_discord::{
    bipartite_discord, boundary_discord, discord_landscape, fixed_basis_discord, make_state,
    tripartite_discord, werner_boundary, witness_value, Boundary, DensityOperator, DiscordResult,
    Error, Landscape, MeasurementBasis, OptimizerConfig, StateSpec, Subsystem, WernerFamily,
    WitnessKind, WitnessSpec,
};

pub const EXIT_INPUT: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "tqd",
    version,
    about = "Tripartite quantum discord of three-qubit states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalArgs,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Focus subsystem k (the one left unmeasured).
    #[arg(long, global = true, default_value = "A")]
    pub focus: Subsystem,
    /// `optimize` minimizes over bases; `fixed` evaluates given bases.
    /// Defaults to `optimize` for `discord` and `fixed` for `sweep`.
    #[arg(long, global = true)]
    pub mode: Option<Mode>,
    /// Grid points per angle: optimizer grid, or landscape side length.
    #[arg(long, global = true)]
    pub grid: Option<usize>,
    /// Purity steps of a sweep (rows, endpoints included).
    #[arg(long, global = true, default_value_t = 101)]
    pub steps: usize,
    /// Seed for randomized reports.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Emit JSON instead of text or CSV.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Fixed,
    Optimize,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Discord of the state in a spec file (bipartite for two-qubit states).
    Discord {
        #[arg(long)]
        spec: PathBuf,
        /// Fixed-mode angles `theta_m,phi_m,theta_n,phi_n` (radians) for the
        /// non-focus subsystems in alphabetical order; defaults to all zero.
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        angles: Option<Vec<f64>>,
    },
    /// CSV of the objective on a theta grid with zero phases.
    Landscape {
        #[arg(long)]
        spec: PathBuf,
    },
    /// CSV of discord and witness values along a Werner family.
    Sweep {
        #[arg(long)]
        family: FamilyArg,
    },
    /// Witness values for a spec, or the Werner boundary table without one.
    Witness {
        #[arg(long)]
        spec: Option<PathBuf>,
    },
    /// Checks that the classical mutual-information expressions agree.
    ClassicalDemo {
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// Validates a spec file and its density operator.
    Validate {
        #[arg(long)]
        spec: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum FamilyArg {
    WernerGhz,
    WernerW,
}

impl From<FamilyArg> for WernerFamily {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::WernerGhz => WernerFamily::WernerGhz,
            FamilyArg::WernerW => WernerFamily::WernerW,
        }
    }
}

/// A failure, classified by exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Density(_) | Error::NotHermitian { .. } => EXIT_NUMERICAL,
            _ => EXIT_INPUT,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

/// Six decimals, without a negative sign on zero.
pub fn fmt6(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

pub fn read_spec(path: &Path) -> CliResult<StateSpec> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))?;
    let spec: StateSpec = serde_json::from_str(&text)
        .map_err(|e| Failure::input(format!("invalid spec {}: {e}", path.display())))?;
    spec.check()?;
    Ok(spec)
}

fn load_state(path: &Path) -> CliResult<DensityOperator> {
    Ok(make_state(&read_spec(path)?)?)
}

fn optimizer_config(grid: Option<usize>) -> CliResult<OptimizerConfig> {
    let mut cfg = OptimizerConfig::default();
    if let Some(n) = grid {
        if n < 2 {
            return Err(Failure::input("--grid must be at least 2"));
        }
        cfg.theta_points = n;
        cfg.phi_points = n;
    }
    Ok(cfg)
}

// ---- discord ---------------------------------------------------------------

fn fixed_bases(angles: Option<&[f64]>) -> CliResult<[MeasurementBasis; 2]> {
    match angles {
        None => Ok([MeasurementBasis::computational(); 2]),
        Some(&[tm, pm, tn, pn]) => {
            Ok([MeasurementBasis::new(tm, pm), MeasurementBasis::new(tn, pn)])
        }
        Some(other) => Err(Failure::input(format!(
            "--angles takes 4 values theta_m,phi_m,theta_n,phi_n, got {}",
            other.len()
        ))),
    }
}

pub fn compute_discord(
    rho: &DensityOperator,
    focus: Subsystem,
    mode: Mode,
    angles: Option<&[f64]>,
    cfg: &OptimizerConfig,
) -> CliResult<DiscordResult> {
    match (rho.num_qubits(), mode) {
        (3, Mode::Optimize) => Ok(tripartite_discord(rho, focus, cfg)?),
        (3, Mode::Fixed) => {
            let bases = fixed_bases(angles)?;
            let value = fixed_basis_discord(rho, focus, bases)?;
            Ok(DiscordResult {
                value,
                focus: Some(focus),
                measured: focus.others().to_vec(),
                argmin_bases: bases.to_vec(),
                grid_value: value,
                evaluations: 1,
                refine_converged: true,
                landscape: None,
            })
        }
        (2, Mode::Optimize) => {
            let measured = rho
                .labels()
                .iter()
                .copied()
                .find(|&l| l != focus)
                .ok_or_else(|| Failure::input("two-qubit state has no other subsystem"))?;
            if rho.position(focus).is_none() {
                return Err(Failure::input(format!(
                    "two-qubit state has no subsystem {focus}"
                )));
            }
            Ok(bipartite_discord(rho, measured, cfg)?)
        }
        (2, Mode::Fixed) => Err(Failure::input("fixed mode needs a three-qubit state")),
        (n, _) => Err(Failure::input(format!(
            "discord needs two or three qubits, got {n}"
        ))),
    }
}

pub fn render_discord(r: &DiscordResult) -> String {
    let mut out = String::new();
    if let Some(k) = r.focus {
        let _ = writeln!(out, "focus: {k}");
    }
    let measured: Vec<String> = r.measured.iter().map(|s| s.to_string()).collect();
    let _ = writeln!(out, "measured: {}", measured.join(", "));
    let _ = writeln!(out, "value: {}", fmt6(r.value));
    for (s, b) in r.measured.iter().zip(&r.argmin_bases) {
        let _ = writeln!(
            out,
            "basis {s}: theta {} phi {}",
            fmt6(b.theta()),
            fmt6(b.phi())
        );
    }
    let _ = writeln!(out, "evaluations: {}", r.evaluations);
    out
}

// ---- landscape -------------------------------------------------------------

pub fn landscape_csv(l: &Landscape) -> String {
    let mut out = String::from("theta_m,theta_n,objective\n");
    for (tm, tn, v) in l.rows() {
        let _ = writeln!(out, "{},{},{}", fmt6(tm), fmt6(tn), fmt6(v));
    }
    out
}

// ---- sweep -----------------------------------------------------------------

/// One point of a purity sweep.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRecord {
    pub mu: f64,
    /// Discord at the bases optimal for the pure member of the family.
    pub delta_fixed: f64,
    /// Discord minimized afresh at this purity, when requested.
    pub delta_opt: Option<f64>,
    pub gme_witness: f64,
    pub epr_witness: f64,
    /// `gme_witness < 0`.
    pub gte: bool,
    /// `epr_witness < 0`.
    pub gteprs: bool,
}

pub fn sweep(
    family: WernerFamily,
    focus: Subsystem,
    steps: usize,
    optimize: bool,
    cfg: &OptimizerConfig,
) -> CliResult<Vec<SweepRecord>> {
    if steps < 2 {
        return Err(Failure::input("--steps must be at least 2"));
    }
    let gme = WitnessSpec::standard(family, WitnessKind::Gme);
    let epr = WitnessSpec::standard(family, WitnessKind::Epr);
    let bases = family.pure_optimal_bases();
    (0..steps)
        .into_par_iter()
        .map(|i| {
            let mu = i as f64 / (steps - 1) as f64;
            let rho = family.state(mu)?;
            let gme_witness = witness_value(&gme, &rho)?;
            let epr_witness = witness_value(&epr, &rho)?;
            let delta_opt = if optimize {
                Some(tripartite_discord(&rho, focus, cfg)?.value)
            } else {
                None
            };
            Ok(SweepRecord {
                mu,
                delta_fixed: fixed_basis_discord(&rho, focus, bases)?,
                delta_opt,
                gme_witness,
                epr_witness,
                gte: gme_witness < 0.0,
                gteprs: epr_witness < 0.0,
            })
        })
        .collect::<tripartite_discord::Result<Vec<_>>>()
        .map_err(Failure::from)
}

pub fn sweep_csv(records: &[SweepRecord]) -> String {
    let mut out = String::from("mu,delta_fixed,delta_opt,gme_witness,epr_witness,gte,gteprs\n");
    for r in records {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            fmt6(r.mu),
            fmt6(r.delta_fixed),
            r.delta_opt.map(fmt6).unwrap_or_default(),
            fmt6(r.gme_witness),
            fmt6(r.epr_witness),
            r.gte,
            r.gteprs
        );
    }
    out
}

// ---- witness ---------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct BoundaryRow {
    pub family: WernerFamily,
    pub kind: WitnessKind,
    pub alpha: f64,
    pub boundary: Option<f64>,
    /// Fixed-basis discord at the boundary purity.
    pub delta_at_boundary: Option<f64>,
}

pub fn boundary_table(focus: Subsystem) -> CliResult<Vec<BoundaryRow>> {
    let mut rows = Vec::new();
    for family in [WernerFamily::WernerGhz, WernerFamily::WernerW] {
        for kind in [WitnessKind::Gme, WitnessKind::Epr] {
            let w = WitnessSpec::standard(family, kind);
            let boundary = match werner_boundary(&w, family)? {
                Boundary::At(mu) => Some(mu),
                Boundary::NeverCrosses => None,
            };
            let delta_at_boundary = boundary
                .map(|mu| boundary_discord(family, mu, focus))
                .transpose()?;
            rows.push(BoundaryRow {
                family,
                kind,
                alpha: w.alpha(),
                boundary,
                delta_at_boundary,
            });
        }
    }
    Ok(rows)
}

pub const WERNER_W_NOTE: &str =
    "note: along werner_w the fixed-basis delta_A is not monotone in mu, \
so equal values occur on both sides of a boundary and delta_A alone does not locate it";

pub fn render_boundary_table(rows: &[BoundaryRow]) -> String {
    let mut out = String::from("family,kind,alpha,boundary_mu,delta_at_boundary\n");
    let opt = |x: Option<f64>| x.map(fmt6).unwrap_or_else(|| "never".into());
    for r in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.family,
            r.kind,
            fmt6(r.alpha),
            opt(r.boundary),
            opt(r.delta_at_boundary)
        );
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessRow {
    pub target: WernerFamily,
    pub kind: WitnessKind,
    pub alpha: f64,
    pub value: f64,
    pub certified: bool,
}

pub fn evaluate_witnesses(rho: &DensityOperator) -> CliResult<Vec<WitnessRow>> {
    if rho.num_qubits() != 3 {
        return Err(Failure::input("witnesses need a three-qubit state"));
    }
    let mut rows = Vec::new();
    for target in [WernerFamily::WernerGhz, WernerFamily::WernerW] {
        for kind in [WitnessKind::Gme, WitnessKind::Epr] {
            let w = WitnessSpec::standard(target, kind);
            let value = witness_value(&w, rho)?;
            rows.push(WitnessRow {
                target,
                kind,
                alpha: w.alpha(),
                value,
                certified: value < 0.0,
            });
        }
    }
    Ok(rows)
}

pub fn render_witnesses(rows: &[WitnessRow]) -> String {
    let mut out = String::from("target,kind,alpha,value,certified\n");
    for r in rows {
        let target = match r.target {
            WernerFamily::WernerGhz => "ghz",
            WernerFamily::WernerW => "w",
        };
        let _ = writeln!(
            out,
            "{target},{},{},{},{}",
            r.kind,
            fmt6(r.alpha),
            fmt6(r.value),
            r.certified
        );
    }
    out
}

// ---- classical demo --------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct ClassicalReport {
    pub samples: usize,
    pub seed: u64,
    /// Largest pairwise gap between the three trivariate expressions.
    pub max_trivariate_discrepancy: f64,
    /// Largest `|I - J|` over bivariate distributions.
    pub max_bivariate_discrepancy: f64,
    /// The three expressions on `Z = X xor Y` with uniform `X, Y`.
    pub xor: [f64; 3],
}

pub fn classical_demo(samples: usize, seed: u64) -> ClassicalReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut tri: f64 = 0.0;
    let mut bi: f64 = 0.0;
    for _ in 0..samples {
        let w: Vec<f64> = (0..8).map(|_| rng.random::<f64>()).collect();
        let d = JointDistribution::from_weights(vec![2, 2, 2], &w).expect("positive weights");
        let [a, b, c] = trivariate_mi_expressions(&d).expect("three variables");
        tri = tri.max((a - b).abs()).max((a - c).abs()).max((b - c).abs());

        let w: Vec<f64> = (0..4).map(|_| rng.random::<f64>()).collect();
        let d = JointDistribution::from_weights(vec![2, 2], &w).expect("positive weights");
        let gap = mutual_information_i(&d).expect("two variables")
            - mutual_information_j(&d).expect("two variables");
        bi = bi.max(gap.abs());
    }
    let mut xor = vec![0.0; 8];
    for x in 0..2 {
        for y in 0..2 {
            xor[4 * x + 2 * y + (x ^ y)] = 0.25;
        }
    }
    let xor = JointDistribution::new(vec![2, 2, 2], xor).expect("normalized");
    ClassicalReport {
        samples,
        seed,
        max_trivariate_discrepancy: tri,
        max_bivariate_discrepancy: bi,
        xor: trivariate_mi_expressions(&xor).expect("three variables"),
    }
}

pub fn render_classical(r: &ClassicalReport) -> String {
    let verdict = if r.max_trivariate_discrepancy <= 1e-10 && r.max_bivariate_discrepancy <= 1e-10 {
        "<="
    } else {
        ">"
    };
    format!(
        "max discrepancy {verdict} 1e-10, N={} distributions (seed {})\n\
         trivariate: {:.3e}\nbivariate: {:.3e}\nxor: {}, {}, {}\n",
        r.samples,
        r.seed,
        r.max_trivariate_discrepancy,
        r.max_bivariate_discrepancy,
        fmt6(r.xor[0]),
        fmt6(r.xor[1]),
        fmt6(r.xor[2])
    )
}

// ---- driver ----------------------------------------------------------------

fn to_json<T: Serialize>(value: &T) -> CliResult<String> {
    serde_json::to_string_pretty(value)
        .map(|s| s + "\n")
        .map_err(|e| Failure::input(format!("cannot serialize output: {e}")))
}

fn emit(out: Option<&Path>, text: &str) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Runs a parsed command and returns the text to emit.
pub fn execute(cli: &Cli) -> CliResult<String> {
    let g = &cli.global;
    match &cli.command {
        Command::Discord { spec, angles } => {
            let rho = load_state(spec)?;
            let cfg = optimizer_config(g.grid)?;
            let mode = g.mode.unwrap_or(Mode::Optimize);
            let r = compute_discord(&rho, g.focus, mode, angles.as_deref(), &cfg)?;
            if g.json {
                to_json(&r)
            } else {
                Ok(render_discord(&r))
            }
        }
        Command::Landscape { spec } => {
            let rho = load_state(spec)?;
            let n = g.grid.unwrap_or(25);
            if n < 2 {
                return Err(Failure::input("--grid must be at least 2"));
            }
            let l = discord_landscape(&rho, g.focus, n)?;
            if g.json {
                to_json(&l)
            } else {
                Ok(landscape_csv(&l))
            }
        }
        Command::Sweep { family } => {
            let cfg = optimizer_config(g.grid)?;
            let optimize = g.mode == Some(Mode::Optimize);
            let records = sweep((*family).into(), g.focus, g.steps, optimize, &cfg)?;
            if g.json {
                to_json(&records)
            } else {
                Ok(sweep_csv(&records))
            }
        }
        Command::Witness { spec: Some(spec) } => {
            let rows = evaluate_witnesses(&load_state(spec)?)?;
            if g.json {
                to_json(&rows)
            } else {
                Ok(render_witnesses(&rows))
            }
        }
        Command::Witness { spec: None } => {
            let rows = boundary_table(g.focus)?;
            if g.json {
                to_json(&rows)
            } else {
                Ok(render_boundary_table(&rows) + WERNER_W_NOTE + "\n")
            }
        }
        Command::ClassicalDemo { samples } => {
            let r = classical_demo(*samples, g.seed);
            if g.json {
                to_json(&r)
            } else {
                Ok(render_classical(&r))
            }
        }
        Command::Validate { spec } => {
            let rho = load_state(spec)?;
            let min_eig = rho.matrix().eigenvalues_hermitian()?[0];
            let text = format!(
                "valid: {} qubit(s), purity {}, minimum eigenvalue {:.3e}\n",
                rho.num_qubits(),
                fmt6(rho.purity()),
                min_eig
            );
            Ok(text)
        }
    }
}

pub fn run(cli: &Cli) -> ExitCode {
    match execute(cli).and_then(|text| emit(cli.global.out.as_deref(), &text)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
