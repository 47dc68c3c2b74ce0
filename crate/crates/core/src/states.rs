//! Density operators, measurement bases and the state families studied
//! here: GHZ, W, their Werner mixtures and a biseparable family.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI, TAU};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{DensityViolation, Error, Result};
use crate::linalg::ComplexMatrix;

/// Tolerance for the Hermiticity, trace and positivity checks.
pub const DENSITY_TOL: f64 = 1e-10;

/// One of the (at most three) qubit subsystems.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Subsystem {
    A,
    B,
    C,
}

impl Subsystem {
    pub const ALL: [Subsystem; 3] = [Subsystem::A, Subsystem::B, Subsystem::C];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i).copied()
    }

    /// The two subsystems other than `self`, in ascending order.
    pub fn others(self) -> [Subsystem; 2] {
        match self {
            Subsystem::A => [Subsystem::B, Subsystem::C],
            Subsystem::B => [Subsystem::A, Subsystem::C],
            Subsystem::C => [Subsystem::A, Subsystem::B],
        }
    }
}

impl fmt::Display for Subsystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Subsystem::A => "A",
            Subsystem::B => "B",
            Subsystem::C => "C",
        };
        f.write_str(name)
    }
}

impl FromStr for Subsystem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(Subsystem::A),
            "B" | "b" => Ok(Subsystem::B),
            "C" | "c" => Ok(Subsystem::C),
            other => Err(Error::Subsystems(format!("unknown subsystem `{other}`"))),
        }
    }
}

/// A validated density operator on one to three labelled qubits.
#[derive(Debug, Clone)]
pub struct DensityOperator {
    matrix: ComplexMatrix,
    labels: Vec<Subsystem>,
}

impl DensityOperator {
    /// Validates `matrix`, labelling its qubits A, B, C in order.
    pub fn new(matrix: ComplexMatrix) -> Result<Self> {
        validate_density(matrix)
    }

    pub fn with_labels(matrix: ComplexMatrix, labels: Vec<Subsystem>) -> Result<Self> {
        let mut rho = validate_density(matrix)?;
        if labels.len() != rho.labels.len() {
            return Err(Error::Subsystems(format!(
                "{} labels given for {} qubits",
                labels.len(),
                rho.labels.len()
            )));
        }
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != labels.len() {
            return Err(Error::Subsystems(format!("duplicate labels {labels:?}")));
        }
        rho.labels = labels;
        Ok(rho)
    }

    /// `|psi><psi|` for a unit vector `psi`.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if (norm - 1.0).abs() > DENSITY_TOL {
            return Err(DensityViolation::Trace(norm).into());
        }
        validate_density(ComplexMatrix::outer(psi))
    }

    /// Skips validation; for operators that are density operators by construction.
    pub(crate) fn from_trusted(matrix: ComplexMatrix, labels: Vec<Subsystem>) -> Self {
        debug_assert_eq!(matrix.rows(), 1 << labels.len());
        Self { matrix, labels }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn labels(&self) -> &[Subsystem] {
        &self.labels
    }

    pub fn num_qubits(&self) -> usize {
        self.labels.len()
    }

    pub fn dims(&self) -> Vec<usize> {
        vec![2; self.labels.len()]
    }

    pub fn position(&self, s: Subsystem) -> Option<usize> {
        self.labels.iter().position(|&l| l == s)
    }

    pub(crate) fn require_position(&self, s: Subsystem) -> Result<usize> {
        self.position(s).ok_or_else(|| {
            Error::Subsystems(format!("subsystem {s} not present in {:?}", self.labels))
        })
    }

    /// Reduced operator on `keep`; the result lists its labels in the
    /// original order.
    pub fn reduced(&self, keep: &[Subsystem]) -> Result<Self> {
        let positions = keep
            .iter()
            .map(|&s| self.require_position(s))
            .collect::<Result<Vec<_>>>()?;
        let matrix = self.matrix.partial_trace(&self.dims(), &positions)?;
        let mut sorted = positions;
        sorted.sort_unstable();
        let labels = sorted.iter().map(|&p| self.labels[p]).collect();
        Ok(Self::from_trusted(matrix, labels))
    }

    /// `Tr(rho^2)`.
    pub fn purity(&self) -> f64 {
        // For Hermitian rho, Tr(rho^2) is the squared Frobenius norm.
        self.matrix.frobenius_norm().powi(2)
    }

    /// `<psi|rho|psi>`.
    pub fn overlap(&self, psi: &[Complex64]) -> Result<f64> {
        let n = self.matrix.rows();
        if psi.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: psi.len(),
            });
        }
        let mut acc = Complex64::new(0.0, 0.0);
        for r in 0..n {
            for c in 0..n {
                acc += psi[r].conj() * self.matrix[(r, c)] * psi[c];
            }
        }
        Ok(acc.re)
    }

    /// `U rho U^dagger`.
    pub fn transformed(&self, unitary: &ComplexMatrix) -> Result<Self> {
        let m = unitary.matmul(&self.matrix)?.matmul(&unitary.adjoint())?;
        Self::with_labels(m, self.labels.clone())
    }

    /// `weight * self + (1 - weight) * other`.
    pub fn mixture(&self, other: &Self, weight: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&weight) {
            return Err(Error::Parameter {
                name: "weight",
                value: weight,
                range: "[0, 1]",
            });
        }
        let m = self
            .matrix
            .scale(weight)
            .add_scaled(&other.matrix, 1.0 - weight)?;
        Ok(Self::from_trusted(m, self.labels.clone()))
    }
}

/// Checks the density-operator invariants in order: dimension,
/// Hermiticity, unit trace, positivity.
pub fn validate_density(m: ComplexMatrix) -> Result<DensityOperator> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let n = m.rows();
    let qubits = match n {
        2 => 1,
        4 => 2,
        8 => 3,
        other => return Err(DensityViolation::Dimension(other).into()),
    };
    let deviation = m.hermiticity_deviation();
    if deviation > DENSITY_TOL {
        return Err(DensityViolation::Hermiticity(deviation).into());
    }
    let trace = m.trace().re;
    if (trace - 1.0).abs() > DENSITY_TOL {
        return Err(DensityViolation::Trace(trace).into());
    }
    let min_eigenvalue = m.eigenvalues_hermitian()?[0];
    if min_eigenvalue < -DENSITY_TOL {
        return Err(DensityViolation::Positivity(min_eigenvalue).into());
    }
    Ok(DensityOperator {
        matrix: m,
        labels: Subsystem::ALL[..qubits].to_vec(),
    })
}

/// Local projective measurement on one qubit, parameterized by the polar
/// angle `theta` and the azimuthal phase `phi`.
///
/// The two outcomes are `|+> = cos(theta)|0> + e^{i phi} sin(theta)|1>` and
/// its orthogonal complement `|-> = cos(theta)|1> - e^{-i phi} sin(theta)|0>`.
/// Angles are stored canonically with `theta` in `[0, pi/2]` and `phi` in
/// `[0, 2 pi)`; the constructor maps any other pair onto the one with the
/// same `|+><+|`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MeasurementBasis {
    theta: f64,
    phi: f64,
}

impl MeasurementBasis {
    pub fn new(theta: f64, phi: f64) -> Self {
        // theta -> theta + pi flips the sign of |+>; pi - theta equals theta
        // with the phase advanced by pi.
        let mut theta = theta.rem_euclid(PI);
        let mut phi = phi;
        if theta > FRAC_PI_2 {
            theta = PI - theta;
            phi += PI;
        }
        let mut phi = phi.rem_euclid(TAU);
        if phi >= TAU {
            phi = 0.0;
        }
        Self { theta, phi }
    }

    /// `{|0>, |1>}`.
    pub fn computational() -> Self {
        Self::new(0.0, 0.0)
    }

    /// `{(|0> + |1>)/sqrt 2, (|0> - |1>)/sqrt 2}`.
    pub fn hadamard() -> Self {
        Self::new(FRAC_PI_4, 0.0)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// `[|+>, |->]`.
    pub fn vectors(&self) -> [[Complex64; 2]; 2] {
        let (s, c) = self.theta.sin_cos();
        let phase = Complex64::from_polar(1.0, self.phi);
        [
            [Complex64::new(c, 0.0), phase * s],
            [-phase.conj() * s, Complex64::new(c, 0.0)],
        ]
    }

    /// `[Pi_+, Pi_-]`.
    pub fn projectors(&self) -> [ComplexMatrix; 2] {
        let [plus, minus] = self.vectors();
        [ComplexMatrix::outer(&plus), ComplexMatrix::outer(&minus)]
    }
}

/// `(|000> + |111>) / sqrt 2`.
pub fn ghz_vector() -> Vec<Complex64> {
    let mut v = vec![Complex64::new(0.0, 0.0); 8];
    v[0b000] = Complex64::new(FRAC_1_SQRT_2, 0.0);
    v[0b111] = Complex64::new(FRAC_1_SQRT_2, 0.0);
    v
}

/// `(|100> + |010> + |001>) / sqrt 3`.
pub fn w_vector() -> Vec<Complex64> {
    let amp = Complex64::new(1.0 / 3f64.sqrt(), 0.0);
    let mut v = vec![Complex64::new(0.0, 0.0); 8];
    v[0b100] = amp;
    v[0b010] = amp;
    v[0b001] = amp;
    v
}

pub fn ghz() -> DensityOperator {
    trusted3(ComplexMatrix::outer(&ghz_vector()))
}

pub fn w() -> DensityOperator {
    trusted3(ComplexMatrix::outer(&w_vector()))
}

/// `I / 2^n` on `n` qubits.
pub fn maximally_mixed(qubits: usize) -> Result<DensityOperator> {
    if !(1..=3).contains(&qubits) {
        return Err(DensityViolation::Dimension(1 << qubits.min(16)).into());
    }
    let d = 1usize << qubits;
    Ok(DensityOperator::from_trusted(
        ComplexMatrix::identity(d).scale(1.0 / d as f64),
        Subsystem::ALL[..qubits].to_vec(),
    ))
}

/// Werner-type mixture `(1 - mu)/8 I + mu |psi><psi|`.
pub fn werner(family: WernerFamily, mu: f64) -> Result<DensityOperator> {
    check_unit_interval("mu", mu)?;
    let pure = ComplexMatrix::outer(&family.target_vector());
    let noise = ComplexMatrix::identity(8).scale((1.0 - mu) / 8.0);
    Ok(trusted3(noise.add_scaled(&pure, mu)?))
}

/// `a |0><0| ⊗ |phi+><phi+| + (1 - a) |1><1| ⊗ |psi-><psi-|`, with A the
/// separated qubit.
pub fn biseparable(a: f64) -> Result<DensityOperator> {
    check_unit_interval("a", a)?;
    let s = FRAC_1_SQRT_2;
    let zero = Complex64::new(0.0, 0.0);
    let phi_plus = [Complex64::new(s, 0.0), zero, zero, Complex64::new(s, 0.0)];
    let psi_minus = [zero, Complex64::new(s, 0.0), Complex64::new(-s, 0.0), zero];
    let first = ComplexMatrix::from_diagonal(&[a, 0.0]).kron(&ComplexMatrix::outer(&phi_plus));
    let second =
        ComplexMatrix::from_diagonal(&[0.0, 1.0 - a]).kron(&ComplexMatrix::outer(&psi_minus));
    Ok(trusted3(first.add_scaled(&second, 1.0)?))
}

fn trusted3(m: ComplexMatrix) -> DensityOperator {
    DensityOperator::from_trusted(m, Subsystem::ALL.to_vec())
}

fn check_unit_interval(name: &'static str, value: f64) -> Result<()> {
    if (0.0..=1.0).contains(&value) {
        Ok(())
    } else {
        Err(Error::Parameter {
            name,
            value,
            range: "[0, 1]",
        })
    }
}

/// The two Werner families: white noise mixed into GHZ or into W.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WernerFamily {
    WernerGhz,
    WernerW,
}

impl WernerFamily {
    pub fn target_vector(self) -> Vec<Complex64> {
        match self {
            WernerFamily::WernerGhz => ghz_vector(),
            WernerFamily::WernerW => w_vector(),
        }
    }

    pub fn state(self, mu: f64) -> Result<DensityOperator> {
        werner(self, mu)
    }

    /// Bases minimizing the focus-A discord of the pure member: the
    /// computational basis for GHZ, `theta = pi/4` for W. Sweeps over the
    /// purity evaluate the discord at these fixed bases.
    pub fn pure_optimal_bases(self) -> [MeasurementBasis; 2] {
        match self {
            WernerFamily::WernerGhz => [MeasurementBasis::computational(); 2],
            WernerFamily::WernerW => [MeasurementBasis::new(FRAC_PI_4, 0.0); 2],
        }
    }
}

impl fmt::Display for WernerFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WernerFamily::WernerGhz => "werner_ghz",
            WernerFamily::WernerW => "werner_w",
        })
    }
}

impl FromStr for WernerFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "werner_ghz" => Ok(WernerFamily::WernerGhz),
            "werner_w" => Ok(WernerFamily::WernerW),
            other => Err(Error::Spec(format!("unknown Werner family `{other}`"))),
        }
    }
}

/// Kind of state described by a [`StateSpec`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StateKind {
    Ghz,
    W,
    WernerGhz,
    WernerW,
    Biseparable,
    Explicit,
}

/// Declarative state description, as read from JSON:
/// `{"kind": "werner_ghz", "mu": 0.5}` or
/// `{"kind": "explicit", "matrix": [[re, im], ...]}` (row-major entries).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateSpec {
    pub kind: StateKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<[f64; 2]>>,
}

/// Biseparable weight used when a spec leaves `a` out.
pub const DEFAULT_BISEPARABLE_WEIGHT: f64 = 0.5;

impl StateSpec {
    pub fn of_kind(kind: StateKind) -> Self {
        Self {
            kind,
            mu: None,
            a: None,
            matrix: None,
        }
    }

    pub fn werner(family: WernerFamily, mu: f64) -> Self {
        let kind = match family {
            WernerFamily::WernerGhz => StateKind::WernerGhz,
            WernerFamily::WernerW => StateKind::WernerW,
        };
        Self {
            mu: Some(mu),
            ..Self::of_kind(kind)
        }
    }

    pub fn biseparable(a: f64) -> Self {
        Self {
            a: Some(a),
            ..Self::of_kind(StateKind::Biseparable)
        }
    }

    pub fn explicit(m: &ComplexMatrix) -> Self {
        Self {
            matrix: Some(m.as_slice().iter().map(|z| [z.re, z.im]).collect()),
            ..Self::of_kind(StateKind::Explicit)
        }
    }

    /// Schema checks that do not need any linear algebra.
    pub fn check(&self) -> Result<()> {
        let allow_mu = matches!(self.kind, StateKind::WernerGhz | StateKind::WernerW);
        let allow_a = self.kind == StateKind::Biseparable;
        let allow_matrix = self.kind == StateKind::Explicit;
        let kind = self.kind_name();
        if self.mu.is_some() && !allow_mu {
            return Err(Error::Spec(format!(
                "field `mu` does not apply to kind `{kind}`"
            )));
        }
        if self.a.is_some() && !allow_a {
            return Err(Error::Spec(format!(
                "field `a` does not apply to kind `{kind}`"
            )));
        }
        if self.matrix.is_some() && !allow_matrix {
            return Err(Error::Spec(format!(
                "field `matrix` does not apply to kind `{kind}`"
            )));
        }
        if allow_mu {
            match self.mu {
                None => return Err(Error::Spec(format!("kind `{kind}` requires field `mu`"))),
                Some(mu) => check_unit_interval("mu", mu)?,
            }
        }
        if let Some(a) = self.a {
            check_unit_interval("a", a)?;
        }
        if allow_matrix {
            let entries = self
                .matrix
                .as_ref()
                .ok_or_else(|| Error::Spec("kind `explicit` requires field `matrix`".into()))?;
            if ![4, 16, 64].contains(&entries.len()) {
                return Err(Error::Spec(format!(
                    "`matrix` must hold 4, 16 or 64 [re, im] entries, got {}",
                    entries.len()
                )));
            }
        }
        Ok(())
    }

    fn kind_name(&self) -> &'static str {
        match self.kind {
            StateKind::Ghz => "ghz",
            StateKind::W => "w",
            StateKind::WernerGhz => "werner_ghz",
            StateKind::WernerW => "werner_w",
            StateKind::Biseparable => "biseparable",
            StateKind::Explicit => "explicit",
        }
    }
}

/// Builds the density operator a spec describes.
pub fn make_state(spec: &StateSpec) -> Result<DensityOperator> {
    spec.check()?;
    match spec.kind {
        StateKind::Ghz => Ok(ghz()),
        StateKind::W => Ok(w()),
        StateKind::WernerGhz => werner(WernerFamily::WernerGhz, spec.mu.unwrap_or_default()),
        StateKind::WernerW => werner(WernerFamily::WernerW, spec.mu.unwrap_or_default()),
        StateKind::Biseparable => biseparable(spec.a.unwrap_or(DEFAULT_BISEPARABLE_WEIGHT)),
        StateKind::Explicit => {
            let entries = spec.matrix.as_deref().unwrap_or_default();
            let n = (entries.len() as f64).sqrt().round() as usize;
            let data = entries
                .iter()
                .map(|&[re, im]| Complex64::new(re, im))
                .collect();
            validate_density(ComplexMatrix::new(n, n, data)?)
        }
    }
}
