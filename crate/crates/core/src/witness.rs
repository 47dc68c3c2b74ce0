//! Fidelity-based witnesses `W = alpha I - |psi><psi|` for genuine
//! tripartite entanglement and genuine tripartite EPR steering.
//!
//! The kernels `alpha` are inputs. The published values are provided as
//! constants; computing steering kernels is a separate optimization
//! problem that this crate does not attempt.

use std::fmt;

use serde::Serialize;

use crate::discord::fixed_basis_discord;
use crate::error::{Error, Result};
use crate::states::{DensityOperator, Subsystem, WernerFamily, DENSITY_TOL};

pub const ALPHA_GME_GHZ: f64 = 0.5;
pub const ALPHA_GME_W: f64 = 2.0 / 3.0;
pub const ALPHA_EPR_GHZ: f64 = 0.683;
pub const ALPHA_EPR_W: f64 = 0.8047;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WitnessKind {
    /// Genuine multipartite entanglement.
    Gme,
    /// Genuine tripartite EPR steering.
    Epr,
}

impl fmt::Display for WitnessKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WitnessKind::Gme => "GME",
            WitnessKind::Epr => "EPR",
        })
    }
}

#[derive(Debug, Clone)]
pub struct WitnessSpec {
    target: DensityOperator,
    alpha: f64,
    kind: WitnessKind,
}

impl WitnessSpec {
    /// `target` must be pure (purity within 1e-10 of one) and
    /// `alpha` must lie in `(0, 1)`.
    pub fn new(target: DensityOperator, alpha: f64, kind: WitnessKind) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::Parameter {
                name: "alpha",
                value: alpha,
                range: "(0, 1)",
            });
        }
        let purity = target.purity();
        if (purity - 1.0).abs() > DENSITY_TOL {
            return Err(Error::Witness(format!(
                "target state has purity {purity}, not 1"
            )));
        }
        Ok(Self {
            target,
            alpha,
            kind,
        })
    }

    /// Witness against the pure member of `family` with the published kernel.
    pub fn standard(family: WernerFamily, kind: WitnessKind) -> Self {
        let alpha = match (kind, family) {
            (WitnessKind::Gme, WernerFamily::WernerGhz) => ALPHA_GME_GHZ,
            (WitnessKind::Gme, WernerFamily::WernerW) => ALPHA_GME_W,
            (WitnessKind::Epr, WernerFamily::WernerGhz) => ALPHA_EPR_GHZ,
            (WitnessKind::Epr, WernerFamily::WernerW) => ALPHA_EPR_W,
        };
        let target = DensityOperator::pure(&family.target_vector()).expect("normalized target");
        Self::new(target, alpha, kind).expect("published kernels are valid")
    }

    pub fn target(&self) -> &DensityOperator {
        &self.target
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn kind(&self) -> WitnessKind {
        self.kind
    }

    /// `Tr(|psi><psi| rho)`.
    pub fn fidelity(&self, rho: &DensityOperator) -> Result<f64> {
        let (t, r) = (self.target.matrix(), rho.matrix());
        if t.rows() != r.rows() {
            return Err(Error::DimensionMismatch {
                expected: t.rows(),
                found: r.rows(),
            });
        }
        let n = t.rows();
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += (t[(i, j)] * r[(j, i)]).re;
            }
        }
        Ok(acc)
    }
}

/// `Tr(W rho) = alpha - <psi|rho|psi>`. Negative values certify the
/// correlation the witness was built for.
pub fn witness_value(w: &WitnessSpec, rho: &DensityOperator) -> Result<f64> {
    Ok(w.alpha - w.fidelity(rho)?)
}

/// Purity at which a witness changes sign along a Werner family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Boundary {
    /// Witness is negative exactly for `mu > mu*`.
    At(f64),
    /// The sign does not change on `[0, 1]`.
    NeverCrosses,
}

impl Boundary {
    pub fn mu(self) -> Option<f64> {
        match self {
            Boundary::At(mu) => Some(mu),
            Boundary::NeverCrosses => None,
        }
    }
}

/// Solves `witness_value(w, rho_family(mu)) = 0` in closed form.
///
/// Along the family the fidelity is `(1 - mu)/8 + mu F1`, with `F1` the
/// fidelity of the pure member, so the root is
/// `mu* = (alpha - 1/8) / (F1 - 1/8)`.
pub fn werner_boundary(w: &WitnessSpec, family: WernerFamily) -> Result<Boundary> {
    if w.target.num_qubits() != 3 {
        return Err(Error::DimensionMismatch {
            expected: 8,
            found: w.target.matrix().rows(),
        });
    }
    let floor = 1.0 / 8.0;
    let f1 = w.fidelity(&family.state(1.0)?)?;
    if f1 - floor <= DENSITY_TOL {
        return Ok(Boundary::NeverCrosses);
    }
    let mu = (w.alpha - floor) / (f1 - floor);
    Ok(if (0.0..=1.0).contains(&mu) {
        Boundary::At(mu)
    } else {
        Boundary::NeverCrosses
    })
}

/// Fixed-basis discord of a Werner state, at the bases optimal for the
/// pure member of its family.
pub fn boundary_discord(family: WernerFamily, mu: f64, focus: Subsystem) -> Result<f64> {
    fixed_basis_discord(&family.state(mu)?, focus, family.pure_optimal_bases())
}
