//! Shannon entropies of discrete joint distributions (in bits).
//!
//! Classically the different information-diagram expressions of mutual
//! information coincide; this module evaluates each of them independently
//! so that the identities can be checked numerically.

use crate::error::{Error, Result};

const NORMALIZATION_TOL: f64 = 1e-12;

/// Joint probability mass function over two or three discrete variables.
///
/// Probabilities are stored row-major over outcome tuples, the first
/// variable most significant.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    outcome_counts: Vec<usize>,
    probabilities: Vec<f64>,
}

impl JointDistribution {
    pub fn new(outcome_counts: Vec<usize>, probabilities: Vec<f64>) -> Result<Self> {
        if !(2..=3).contains(&outcome_counts.len()) {
            return Err(Error::Distribution(format!(
                "expected 2 or 3 variables, got {}",
                outcome_counts.len()
            )));
        }
        if outcome_counts.contains(&0) {
            return Err(Error::Distribution(
                "every variable needs at least one outcome".into(),
            ));
        }
        let size: usize = outcome_counts.iter().product();
        if probabilities.len() != size {
            return Err(Error::Distribution(format!(
                "expected {size} probabilities, got {}",
                probabilities.len()
            )));
        }
        if let Some(p) = probabilities
            .iter()
            .find(|p| !(**p >= 0.0) || !p.is_finite())
        {
            return Err(Error::Distribution(format!("invalid probability {p}")));
        }
        let total: f64 = probabilities.iter().sum();
        if (total - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::Distribution(format!("probabilities sum to {total}")));
        }
        Ok(Self {
            outcome_counts,
            probabilities,
        })
    }

    /// Normalizes nonnegative weights into a distribution.
    pub fn from_weights(outcome_counts: Vec<usize>, weights: &[f64]) -> Result<Self> {
        let total: f64 = weights.iter().sum();
        if !(total > 0.0) {
            return Err(Error::Distribution(
                "weights must have a positive sum".into(),
            ));
        }
        Self::new(outcome_counts, weights.iter().map(|w| w / total).collect())
    }

    pub fn variable_count(&self) -> usize {
        self.outcome_counts.len()
    }

    pub fn outcome_counts(&self) -> &[usize] {
        &self.outcome_counts
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    /// Marginal over `vars` (in the listed order, first most significant).
    pub fn marginal(&self, vars: &[usize]) -> Result<Vec<f64>> {
        self.check_vars(vars)?;
        let size: usize = vars.iter().map(|&v| self.outcome_counts[v]).product();
        let mut out = vec![0.0; size];
        for (flat, &p) in self.probabilities.iter().enumerate() {
            out[self.project(flat, vars)] += p;
        }
        Ok(out)
    }

    fn check_vars(&self, vars: &[usize]) -> Result<()> {
        if vars.is_empty() {
            return Err(Error::Distribution(
                "variable subset must be nonempty".into(),
            ));
        }
        for (i, &v) in vars.iter().enumerate() {
            if v >= self.variable_count() {
                return Err(Error::Distribution(format!("no variable with index {v}")));
            }
            if vars[..i].contains(&v) {
                return Err(Error::Distribution(format!("variable {v} listed twice")));
            }
        }
        Ok(())
    }

    fn digits(&self, mut flat: usize) -> Vec<usize> {
        let mut digits = vec![0; self.variable_count()];
        for (d, &count) in digits.iter_mut().zip(&self.outcome_counts).rev() {
            *d = flat % count;
            flat /= count;
        }
        digits
    }

    fn project(&self, flat: usize, vars: &[usize]) -> usize {
        let digits = self.digits(flat);
        vars.iter()
            .fold(0, |acc, &v| acc * self.outcome_counts[v] + digits[v])
    }
}

/// Entropy in bits of a probability vector; `0 log 0 = 0`.
pub fn entropy_bits(probabilities: &[f64]) -> f64 {
    -probabilities
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| p * p.log2())
        .sum::<f64>()
}

/// `H(vars)`: entropy of the marginal over `vars`.
pub fn shannon_entropy(d: &JointDistribution, vars: &[usize]) -> Result<f64> {
    Ok(entropy_bits(&d.marginal(vars)?))
}

/// `H(target | given)` as a probability-weighted sum of entropies of the
/// conditional distributions; zero-probability conditions contribute zero.
pub fn conditional_entropy(
    d: &JointDistribution,
    target: &[usize],
    given: &[usize],
) -> Result<f64> {
    if target.iter().any(|t| given.contains(t)) {
        return Err(Error::Distribution("target and condition overlap".into()));
    }
    let vars: Vec<usize> = given.iter().chain(target).copied().collect();
    let joint = d.marginal(&vars)?;
    let target_size: usize = target.iter().map(|&v| d.outcome_counts[v]).product();
    Ok(joint
        .chunks(target_size)
        .map(|block| {
            let weight: f64 = block.iter().sum();
            if weight <= 0.0 {
                return 0.0;
            }
            let conditional: Vec<f64> = block.iter().map(|p| p / weight).collect();
            weight * entropy_bits(&conditional)
        })
        .sum())
}

/// `J(X;Y) = H(X) - H(X|Y)` with the conditional entropy summed directly.
pub fn mutual_information_j(d: &JointDistribution) -> Result<f64> {
    require_vars(d, 2)?;
    Ok(shannon_entropy(d, &[0])? - conditional_entropy(d, &[0], &[1])?)
}

/// `I(X;Y) = H(X) + H(Y) - H(X,Y)`.
pub fn mutual_information_i(d: &JointDistribution) -> Result<f64> {
    require_vars(d, 2)?;
    Ok(shannon_entropy(d, &[0])? + shannon_entropy(d, &[1])? - shannon_entropy(d, &[0, 1])?)
}

/// The three classical expressions of `H(X;Y;Z)`, each evaluated on its own:
/// inclusion-exclusion, the conditional form and the mixed form.
pub fn trivariate_mi_expressions(d: &JointDistribution) -> Result<[f64; 3]> {
    require_vars(d, 3)?;
    let (x, y, z) = (0, 1, 2);
    let h = |vars: &[usize]| shannon_entropy(d, vars);
    let hc = |target: &[usize], given: &[usize]| conditional_entropy(d, target, given);

    let inclusion_exclusion =
        h(&[x])? + h(&[y])? + h(&[z])? - h(&[x, y])? - h(&[y, z])? - h(&[x, z])? + h(&[x, y, z])?;
    let conditional =
        h(&[x, y])? - hc(&[y], &[x])? - hc(&[x], &[y])? - hc(&[x], &[z])? - hc(&[y], &[z])?
            + hc(&[x, y], &[z])?;
    let mixed = h(&[x])? + h(&[y])? + h(&[z])? - h(&[x, y])? - h(&[x, z])? + hc(&[x], &[y, z])?;
    Ok([inclusion_exclusion, conditional, mixed])
}

fn require_vars(d: &JointDistribution, n: usize) -> Result<()> {
    if d.variable_count() != n {
        return Err(Error::Distribution(format!(
            "expected {n} variables, got {}",
            d.variable_count()
        )));
    }
    Ok(())
}
