//! Bipartite and tripartite quantum discord.
//!
//! The tripartite discord focused on subsystem `k` is the minimum over
//! local projective measurements of the two non-focus subsystems of
//! `I(A;B;C) - J_k(A;B;C)`. Unlike the bipartite quantity it can be
//! negative. The minimization is a coarse grid over both polar and
//! azimuthal angles followed by Nelder-Mead refinement from the best
//! cell.

use std::f64::consts::{FRAC_PI_2, TAU};

use rayon::prelude::*;
use serde::Serialize;

use crate::entropy::{
    conditional_entropy_1, conditional_entropy_2, joint_entropy, mutual_information_i3,
    von_neumann, weighted_branch_entropy,
};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::optimize::nelder_mead;
use crate::states::{DensityOperator, MeasurementBasis, Subsystem};

/// Grid values within this distance of the running minimum count as ties;
/// ties go to the lexicographically smallest `(theta_m, theta_n, phi_m, phi_n)`.
pub const GRID_TIE_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OptimizerConfig {
    /// Polar grid points spanning `[0, pi/2]` inclusive.
    pub theta_points: usize,
    /// Azimuthal grid points spanning `[0, 2 pi)`.
    pub phi_points: usize,
    pub refine_iterations: usize,
    /// Refinement stops once the simplex values agree to within this.
    pub tolerance: f64,
    /// Keep every grid evaluation in [`DiscordResult::landscape`].
    pub record_landscape: bool,
}

impl Default for OptimizerConfig {
    fn default() -> Self {
        Self {
            theta_points: 25,
            phi_points: 25,
            refine_iterations: 200,
            tolerance: 1e-9,
            record_landscape: false,
        }
    }
}

impl OptimizerConfig {
    fn validate(&self) -> Result<()> {
        for (name, value) in [
            ("theta_points", self.theta_points),
            ("phi_points", self.phi_points),
            ("refine_iterations", self.refine_iterations),
        ] {
            if value == 0 {
                return Err(Error::Parameter {
                    name,
                    value: 0.0,
                    range: "positive counts",
                });
            }
        }
        if !(self.tolerance > 0.0) {
            return Err(Error::Parameter {
                name: "tolerance",
                value: self.tolerance,
                range: "(0, inf)",
            });
        }
        Ok(())
    }

    fn thetas(&self) -> Vec<f64> {
        theta_grid(self.theta_points)
    }

    fn phis(&self) -> Vec<f64> {
        (0..self.phi_points)
            .map(|i| TAU * i as f64 / self.phi_points as f64)
            .collect()
    }

    fn steps(&self) -> (f64, f64) {
        let theta_step = if self.theta_points > 1 {
            FRAC_PI_2 / (self.theta_points - 1) as f64
        } else {
            FRAC_PI_2 / 4.0
        };
        (theta_step, TAU / self.phi_points as f64)
    }
}

fn theta_grid(points: usize) -> Vec<f64> {
    if points == 1 {
        return vec![0.0];
    }
    (0..points)
        .map(|i| FRAC_PI_2 * i as f64 / (points - 1) as f64)
        .collect()
}

/// One recorded grid evaluation.
#[derive(Debug, Clone, Serialize)]
pub struct LandscapeSample {
    pub bases: Vec<MeasurementBasis>,
    pub objective: f64,
}

/// A minimized discord and where it was attained.
///
/// The argmin is generally not unique (GHZ, for example, is minimized
/// along whole curves); the reported bases are the refined point started
/// from the lexicographically first grid minimum.
#[derive(Debug, Clone, Serialize)]
pub struct DiscordResult {
    pub value: f64,
    /// Focus subsystem for the tripartite measure; `None` for bipartite.
    pub focus: Option<Subsystem>,
    pub measured: Vec<Subsystem>,
    pub argmin_bases: Vec<MeasurementBasis>,
    /// Best value seen on the coarse grid.
    pub grid_value: f64,
    pub evaluations: usize,
    pub refine_converged: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub landscape: Option<Vec<LandscapeSample>>,
}

/// `I(A;B;C) - J_k(A;B;C)` as a function of the two local bases.
#[derive(Debug, Clone)]
pub struct TripartiteObjective {
    focus: Subsystem,
    measured: [Subsystem; 2],
    /// `I(A;B;C) - S(k)`, which no measurement changes.
    constant: f64,
    rho: DensityOperator,
    pair_m: DensityOperator,
    pair_n: DensityOperator,
}

impl TripartiteObjective {
    pub fn new(rho: &DensityOperator, focus: Subsystem) -> Result<Self> {
        if rho.num_qubits() != 3 {
            return Err(Error::DimensionMismatch {
                expected: 8,
                found: rho.matrix().rows(),
            });
        }
        let measured = focus.others();
        Ok(Self {
            focus,
            measured,
            constant: mutual_information_i3(rho)? - joint_entropy(rho, &[focus])?,
            rho: rho.clone(),
            pair_m: rho.reduced(&[focus, measured[0]])?,
            pair_n: rho.reduced(&[focus, measured[1]])?,
        })
    }

    pub fn focus(&self) -> Subsystem {
        self.focus
    }

    /// The non-focus subsystems, in the order `bases` refers to them.
    pub fn measured(&self) -> [Subsystem; 2] {
        self.measured
    }

    pub fn evaluate(&self, bases: [MeasurementBasis; 2]) -> f64 {
        self.constant + self.one_particle(0, bases[0]) + self.one_particle(1, bases[1])
            - self.two_particle(bases)
    }

    fn one_particle(&self, which: usize, basis: MeasurementBasis) -> f64 {
        let pair = if which == 0 {
            &self.pair_m
        } else {
            &self.pair_n
        };
        conditional_entropy_1(pair, self.focus, self.measured[which], basis)
            .expect("labels checked at construction")
    }

    fn two_particle(&self, bases: [MeasurementBasis; 2]) -> f64 {
        conditional_entropy_2(&self.rho, self.focus, self.measured, bases)
            .expect("labels checked at construction")
    }

    /// Unnormalized `(focus, n)` operators for both outcomes on `m`.
    fn contract_m(&self, basis: MeasurementBasis) -> [ComplexMatrix; 2] {
        let pos = self.rho.position(self.measured[0]).expect("labels checked");
        basis.vectors().map(|v| {
            self.rho
                .matrix()
                .contract_subsystem(&[2, 2, 2], pos, &v)
                .expect("three qubits checked")
        })
    }

    /// `S(focus | m, n)` from the output of [`Self::contract_m`]; agrees
    /// with `two_particle` to rounding.
    fn two_particle_after_m(&self, after_m: &[ComplexMatrix; 2], basis_n: MeasurementBasis) -> f64 {
        let pos = self.position_after_m(self.measured[1]);
        let vectors = basis_n.vectors();
        after_m
            .iter()
            .flat_map(|pair| vectors.iter().map(move |v| (pair, v)))
            .map(|(pair, v)| {
                let branch = pair
                    .contract_subsystem(&[2, 2], pos, v)
                    .expect("two qubits");
                weighted_branch_entropy(&branch).expect("Hermitian branch")
            })
            .sum()
    }

    fn position_after_m(&self, s: Subsystem) -> usize {
        self.rho
            .labels()
            .iter()
            .filter(|&&l| l != self.measured[0])
            .position(|&l| l == s)
            .expect("labels checked")
    }
}

/// `delta_k` at fixed bases, without optimization.
pub fn fixed_basis_discord(
    rho: &DensityOperator,
    focus: Subsystem,
    bases: [MeasurementBasis; 2],
) -> Result<f64> {
    Ok(TripartiteObjective::new(rho, focus)?.evaluate(bases))
}

/// Minimizes `I(A;B;C) - J_k(A;B;C)` over local bases of the two
/// non-focus subsystems.
pub fn tripartite_discord(
    rho: &DensityOperator,
    focus: Subsystem,
    cfg: &OptimizerConfig,
) -> Result<DiscordResult> {
    cfg.validate()?;
    let objective = TripartiteObjective::new(rho, focus)?;
    let thetas = cfg.thetas();
    let phis = cfg.phis();
    let cell_bases: Vec<MeasurementBasis> = thetas
        .iter()
        .flat_map(|&t| phis.iter().map(move |&p| MeasurementBasis::new(t, p)))
        .collect();

    // One-particle terms depend on a single basis; cache them per grid basis.
    let s_m: Vec<f64> = cell_bases
        .par_iter()
        .map(|&b| objective.one_particle(0, b))
        .collect();
    let s_n: Vec<f64> = cell_bases
        .par_iter()
        .map(|&b| objective.one_particle(1, b))
        .collect();
    // Likewise the (focus, n) operator left after each outcome on m.
    let after_m: Vec<[ComplexMatrix; 2]> = cell_bases
        .par_iter()
        .map(|&b| objective.contract_m(b))
        .collect();

    let (nt, np) = (thetas.len(), phis.len());
    // Flat order (theta_m, theta_n, phi_m, phi_n) so that a sequential scan
    // meets ties in lexicographic order.
    let total = nt * nt * np * np;
    let decode = |flat: usize| {
        let phi_n = flat % np;
        let phi_m = (flat / np) % np;
        let theta_n = (flat / (np * np)) % nt;
        let theta_m = flat / (np * np * nt);
        (theta_m * np + phi_m, theta_n * np + phi_n)
    };
    let values: Vec<f64> = (0..total)
        .into_par_iter()
        .map(|flat| {
            let (im, jn) = decode(flat);
            objective.constant + s_m[im] + s_n[jn]
                - objective.two_particle_after_m(&after_m[im], cell_bases[jn])
        })
        .collect();

    let mut best = 0;
    for (flat, &v) in values.iter().enumerate() {
        if v < values[best] - GRID_TIE_TOL {
            best = flat;
        }
    }
    let grid_value = values[best];
    let (im, jn) = decode(best);
    let grid_bases = [cell_bases[im], cell_bases[jn]];

    let (theta_step, phi_step) = cfg.steps();
    let steps = [theta_step, phi_step, theta_step, phi_step];
    let f = |x: &[f64]| {
        objective.evaluate([
            MeasurementBasis::new(x[0], x[1]),
            MeasurementBasis::new(x[2], x[3]),
        ])
    };
    let start = [
        grid_bases[0].theta(),
        grid_bases[0].phi(),
        grid_bases[1].theta(),
        grid_bases[1].phi(),
    ];
    let refined = refine(f, &start, &steps, cfg);

    let (value, argmin) = if refined.value < grid_value {
        let x = &refined.point;
        (
            refined.value,
            [
                MeasurementBasis::new(x[0], x[1]),
                MeasurementBasis::new(x[2], x[3]),
            ],
        )
    } else {
        (grid_value, grid_bases)
    };

    let landscape = cfg.record_landscape.then(|| {
        values
            .iter()
            .enumerate()
            .map(|(flat, &objective)| {
                let (im, jn) = decode(flat);
                LandscapeSample {
                    bases: vec![cell_bases[im], cell_bases[jn]],
                    objective,
                }
            })
            .collect()
    });

    Ok(DiscordResult {
        value,
        focus: Some(focus),
        measured: objective.measured().to_vec(),
        argmin_bases: argmin.to_vec(),
        grid_value,
        evaluations: total + 2 * cell_bases.len() + refined.evaluations,
        refine_converged: refined.converged,
        landscape,
    })
}

/// Two Nelder-Mead passes: one from the grid cell, one polishing restart.
fn refine<F>(f: F, start: &[f64], steps: &[f64], cfg: &OptimizerConfig) -> RefineOutcome
where
    F: Fn(&[f64]) -> f64,
{
    let first = nelder_mead(&f, start, steps, cfg.refine_iterations, cfg.tolerance);
    let small: Vec<f64> = steps.iter().map(|s| s * 0.1).collect();
    let second = nelder_mead(
        &f,
        &first.point,
        &small,
        cfg.refine_iterations,
        cfg.tolerance,
    );
    let evaluations = first.evaluations + second.evaluations;
    let best = if second.value < first.value {
        second
    } else {
        first
    };
    RefineOutcome {
        point: best.point,
        value: best.value,
        evaluations,
        converged: best.converged,
    }
}

struct RefineOutcome {
    point: Vec<f64>,
    value: f64,
    evaluations: usize,
    converged: bool,
}

/// Bipartite discord `min_{Pi_measured} [I(A;B) - J(A;B)]` of a two-qubit state.
pub fn bipartite_discord(
    rho: &DensityOperator,
    measured: Subsystem,
    cfg: &OptimizerConfig,
) -> Result<DiscordResult> {
    cfg.validate()?;
    if rho.num_qubits() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 4,
            found: rho.matrix().rows(),
        });
    }
    rho.require_position(measured)?;
    let target = *rho
        .labels()
        .iter()
        .find(|&&l| l != measured)
        .expect("two distinct labels");
    // I - J = S(measured) - S(A,B) + S(target|measured)
    let constant = joint_entropy(rho, &[measured])? - von_neumann(rho);
    let objective = |b: MeasurementBasis| {
        constant + conditional_entropy_1(rho, target, measured, b).expect("labels checked")
    };

    let grid: Vec<MeasurementBasis> = cfg
        .thetas()
        .iter()
        .flat_map(|&t| {
            cfg.phis()
                .into_iter()
                .map(move |p| MeasurementBasis::new(t, p))
        })
        .collect();
    let values: Vec<f64> = grid.par_iter().map(|&b| objective(b)).collect();
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v < values[best] - GRID_TIE_TOL {
            best = i;
        }
    }
    let grid_value = values[best];
    let (theta_step, phi_step) = cfg.steps();
    let f = |x: &[f64]| objective(MeasurementBasis::new(x[0], x[1]));
    let refined = refine(
        f,
        &[grid[best].theta(), grid[best].phi()],
        &[theta_step, phi_step],
        cfg,
    );
    let (value, argmin) = if refined.value < grid_value {
        (
            refined.value,
            MeasurementBasis::new(refined.point[0], refined.point[1]),
        )
    } else {
        (grid_value, grid[best])
    };
    let landscape = cfg.record_landscape.then(|| {
        grid.iter()
            .zip(&values)
            .map(|(&b, &objective)| LandscapeSample {
                bases: vec![b],
                objective,
            })
            .collect()
    });
    Ok(DiscordResult {
        value,
        focus: None,
        measured: vec![measured],
        argmin_bases: vec![argmin],
        grid_value,
        evaluations: grid.len() + refined.evaluations,
        refine_converged: refined.converged,
        landscape,
    })
}

/// `D_k(theta_m, theta_n)` on a square polar grid with both phases zero.
#[derive(Debug, Clone, Serialize)]
pub struct Landscape {
    pub focus: Subsystem,
    pub thetas: Vec<f64>,
    /// Row-major: `values[i * thetas.len() + j]` is at `(thetas[i], thetas[j])`.
    pub values: Vec<f64>,
}

impl Landscape {
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.thetas.len() + j]
    }

    /// `(theta_m, theta_n, objective)` in row-major order.
    pub fn rows(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        let n = self.thetas.len();
        self.values
            .iter()
            .enumerate()
            .map(move |(flat, &v)| (self.thetas[flat / n], self.thetas[flat % n], v))
    }
}

pub fn discord_landscape(
    rho: &DensityOperator,
    focus: Subsystem,
    theta_points: usize,
) -> Result<Landscape> {
    if theta_points < 2 {
        return Err(Error::Parameter {
            name: "theta_points",
            value: theta_points as f64,
            range: "at least 2",
        });
    }
    let objective = TripartiteObjective::new(rho, focus)?;
    let thetas = theta_grid(theta_points);
    let n = thetas.len();
    let values = (0..n * n)
        .into_par_iter()
        .map(|flat| {
            objective.evaluate([
                MeasurementBasis::new(thetas[flat / n], 0.0),
                MeasurementBasis::new(thetas[flat % n], 0.0),
            ])
        })
        .collect();
    Ok(Landscape {
        focus,
        thetas,
        values,
    })
}
