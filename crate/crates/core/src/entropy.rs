//! Von Neumann entropies, measurement-conditioned entropies and the two
//! information-diagram expressions of tripartite mutual information.
//!
//! All entropies are in bits. A conditional entropy `S(a|b)` here is the
//! outcome-weighted entropy of `a` after local rank-one projective
//! measurements on the conditioning subsystems, i.e.
//! `sum_j P_j S(rho_{a|j})`.

use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;
use crate::states::{DensityOperator, MeasurementBasis, Subsystem};

/// Eigenvalues in `[-CLAMP_TOL, 0)` are treated as zero before taking logs.
pub const CLAMP_TOL: f64 = 1e-10;

/// Measurement branches at or below this probability contribute nothing.
pub const BRANCH_PROBABILITY_FLOOR: f64 = 1e-12;

/// `-sum lambda log2 lambda` over a spectrum, with `0 log 0 = 0`.
pub fn spectrum_entropy(eigenvalues: &[f64]) -> f64 {
    -eigenvalues
        .iter()
        .map(|&l| if l < 0.0 { 0.0 } else { l })
        .filter(|&l| l > 0.0)
        .map(|l| l * l.log2())
        .sum::<f64>()
}

/// `S(rho) = -Tr[rho log2 rho]`.
pub fn von_neumann(rho: &DensityOperator) -> f64 {
    matrix_entropy(rho.matrix())
}

fn matrix_entropy(m: &ComplexMatrix) -> f64 {
    let eigenvalues = m
        .eigenvalues_hermitian()
        .expect("density operators are Hermitian");
    debug_assert!(eigenvalues[0] >= -CLAMP_TOL, "spectrum {eigenvalues:?}");
    spectrum_entropy(&eigenvalues)
}

/// Entropy of the reduced operator on `subsystems`.
pub fn joint_entropy(rho: &DensityOperator, subsystems: &[Subsystem]) -> Result<f64> {
    Ok(von_neumann(&rho.reduced(subsystems)?))
}

/// Outcome statistics of local measurements, seen from the unmeasured target.
#[derive(Debug, Clone)]
pub struct ConditionalDecomposition {
    /// `P_j` for every product outcome, first measured subsystem most significant.
    pub probabilities: Vec<f64>,
    /// Normalized target state per outcome; `None` for negligible branches.
    pub states: Vec<Option<DensityOperator>>,
    /// `S(rho_{target|j})`, zero for negligible branches.
    pub branch_entropies: Vec<f64>,
}

impl ConditionalDecomposition {
    /// `sum_j P_j S(rho_{target|j})`.
    pub fn entropy(&self) -> f64 {
        self.probabilities
            .iter()
            .zip(&self.branch_entropies)
            .map(|(p, s)| p * s)
            .sum()
    }
}

/// Measures each listed subsystem in its basis and records the conditional
/// states of `target`. Subsystems that are neither measured nor the target
/// are traced out first.
pub fn measure_conditional(
    rho: &DensityOperator,
    target: Subsystem,
    measured: &[(Subsystem, MeasurementBasis)],
) -> Result<ConditionalDecomposition> {
    rho.require_position(target)?;
    for (i, &(s, _)) in measured.iter().enumerate() {
        rho.require_position(s)?;
        if s == target {
            return Err(Error::Subsystems(format!(
                "subsystem {s} cannot be both measured and conditioned"
            )));
        }
        if measured[..i].iter().any(|&(t, _)| t == s) {
            return Err(Error::Subsystems(format!("subsystem {s} measured twice")));
        }
    }
    let keep: Vec<Subsystem> = std::iter::once(target)
        .chain(measured.iter().map(|&(s, _)| s))
        .collect();
    let sub = rho.reduced(&keep)?;
    let vectors: Vec<_> = measured.iter().map(|(_, b)| b.vectors()).collect();

    let outcomes = 1usize << measured.len();
    let mut probabilities = Vec::with_capacity(outcomes);
    let mut states = Vec::with_capacity(outcomes);
    let mut branch_entropies = Vec::with_capacity(outcomes);
    for outcome in 0..outcomes {
        let mut matrix = sub.matrix().clone();
        let mut labels = sub.labels().to_vec();
        for (k, &(s, _)) in measured.iter().enumerate() {
            let bit = (outcome >> (measured.len() - 1 - k)) & 1;
            let pos = labels.iter().position(|&l| l == s).expect("kept above");
            matrix = matrix.contract_subsystem(&vec![2; labels.len()], pos, &vectors[k][bit])?;
            labels.remove(pos);
        }
        match normalize_branch(&matrix) {
            Some((p, state)) => {
                branch_entropies.push(branch_entropy(&state)?);
                states.push(Some(DensityOperator::from_trusted(state, labels)));
                probabilities.push(p);
            }
            None => {
                branch_entropies.push(0.0);
                states.push(None);
                probabilities.push(matrix.trace().re.max(0.0));
            }
        }
    }
    Ok(ConditionalDecomposition {
        probabilities,
        states,
        branch_entropies,
    })
}

/// `(P, M / P)` with `P = Tr M`, or `None` for a negligible branch.
fn normalize_branch(m: &ComplexMatrix) -> Option<(f64, ComplexMatrix)> {
    let p = m.trace().re;
    // Dividing by a small P_j magnifies rounding in the contraction.
    (p > BRANCH_PROBABILITY_FLOOR).then(|| (p, m.scale(1.0 / p).hermitian_part()))
}

/// Not `von_neumann`: its spectrum check is too strict once rounding has
/// been scaled by 1/P_j.
fn branch_entropy(state: &ComplexMatrix) -> Result<f64> {
    Ok(spectrum_entropy(&state.eigenvalues_hermitian()?))
}

/// `P S(M / P)` for an unnormalized post-measurement operator `M`.
pub(crate) fn weighted_branch_entropy(m: &ComplexMatrix) -> Result<f64> {
    Ok(match normalize_branch(m) {
        Some((p, state)) => p * branch_entropy(&state)?,
        None => 0.0,
    })
}

/// `S(target | measured)` after a projective measurement of one subsystem.
pub fn conditional_entropy_1(
    rho: &DensityOperator,
    target: Subsystem,
    measured: Subsystem,
    basis: MeasurementBasis,
) -> Result<f64> {
    Ok(measure_conditional(rho, target, &[(measured, basis)])?.entropy())
}

/// `S(target | m, n)` after local projective measurements of two subsystems
/// (four product outcomes).
pub fn conditional_entropy_2(
    rho: &DensityOperator,
    target: Subsystem,
    measured: [Subsystem; 2],
    bases: [MeasurementBasis; 2],
) -> Result<f64> {
    let pairs = [(measured[0], bases[0]), (measured[1], bases[1])];
    Ok(measure_conditional(rho, target, &pairs)?.entropy())
}

fn require_qubits(rho: &DensityOperator, n: usize) -> Result<()> {
    if rho.num_qubits() != n {
        return Err(Error::DimensionMismatch {
            expected: 1 << n,
            found: rho.matrix().rows(),
        });
    }
    Ok(())
}

/// `I(A;B) = S(A) + S(B) - S(A,B)` for a two-qubit operator.
pub fn mutual_information_i2(rho: &DensityOperator) -> Result<f64> {
    require_qubits(rho, 2)?;
    let [a, b] = [rho.labels()[0], rho.labels()[1]];
    Ok(joint_entropy(rho, &[a])? + joint_entropy(rho, &[b])? - von_neumann(rho))
}

/// `J(target;measured) = S(target) - S(target|measured)` for a two-qubit operator.
pub fn mutual_information_j2(
    rho: &DensityOperator,
    measured: Subsystem,
    basis: MeasurementBasis,
) -> Result<f64> {
    require_qubits(rho, 2)?;
    rho.require_position(measured)?;
    let target = *rho
        .labels()
        .iter()
        .find(|&&l| l != measured)
        .expect("two distinct labels");
    Ok(joint_entropy(rho, &[target])? - conditional_entropy_1(rho, target, measured, basis)?)
}

/// `I(A;B;C)` from single and joint entropies only (inclusion-exclusion).
pub fn mutual_information_i3(rho: &DensityOperator) -> Result<f64> {
    require_qubits(rho, 3)?;
    use Subsystem::{A, B, C};
    let s = |keep: &[Subsystem]| joint_entropy(rho, keep);
    Ok(s(&[A])? + s(&[B])? + s(&[C])? - s(&[A, B])? - s(&[B, C])? - s(&[A, C])? + von_neumann(rho))
}

/// `J_k(A;B;C) = S(k) - S(k|m) - S(k|n) + S(k|m,n)`.
///
/// `bases[0]` measures the lower-lettered non-focus subsystem and
/// `bases[1]` the other; each basis is used for both the one- and the
/// two-particle term.
pub fn mutual_information_jk(
    rho: &DensityOperator,
    focus: Subsystem,
    bases: [MeasurementBasis; 2],
) -> Result<f64> {
    require_qubits(rho, 3)?;
    let [m, n] = focus.others();
    Ok(joint_entropy(rho, &[focus])?
        - conditional_entropy_1(rho, focus, m, bases[0])?
        - conditional_entropy_1(rho, focus, n, bases[1])?
        + conditional_entropy_2(rho, focus, [m, n], bases)?)
}
