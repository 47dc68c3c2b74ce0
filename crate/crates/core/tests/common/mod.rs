//! Reference implementations used as test oracles.
//!
//! Matrices here are plain row-major `Vec<Complex64>` manipulated with
//! explicit index loops; spectra come from nalgebra. Nothing in this file
//! calls the crate's linear algebra, so agreement is a genuine cross-check.

#![allow(dead_code)]

use std::f64::consts::{FRAC_PI_2, TAU};

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use tripartite_discord::{ComplexMatrix, DensityOperator};

pub type C = Complex64;

pub fn c(re: f64) -> C {
    C::new(re, 0.0)
}

/// Binary entropy in bits.
pub fn h(p: f64) -> f64 {
    shannon(&[p, 1.0 - p])
}

pub fn shannon(p: &[f64]) -> f64 {
    p.iter().filter(|&&x| x > 0.0).map(|&x| -x * x.log2()).sum()
}

// ---- closed forms ----------------------------------------------------------

/// `S(alpha|beta)` of GHZ when `beta` is measured at polar angle `theta`.
pub fn ghz_pair_conditional(theta: f64) -> f64 {
    h((1.0 + (2.0 * theta).cos()) / 2.0)
}

/// `D_A(theta_2, theta_3)` of GHZ with zero phases.
pub fn ghz_objective(theta_2: f64, theta_3: f64) -> f64 {
    -1.0 + ghz_pair_conditional(theta_2) + ghz_pair_conditional(theta_3)
}

pub fn werner_ghz_s1(mu: f64) -> f64 {
    h((1.0 + mu) / 2.0)
}

pub fn werner_ghz_s2(mu: f64) -> f64 {
    let l = |x: f64| if x > 0.0 { x.log2() } else { 0.0 };
    (1.0 - mu) / 2.0
        - (1.0 - mu) / 4.0 * l((1.0 - mu) / (2.0 * (1.0 + mu)))
        - (1.0 + 3.0 * mu) / 4.0 * l((1.0 + 3.0 * mu) / (2.0 * (1.0 + mu)))
}

/// `I(A;B;C)` of the Werner-GHZ state, from its known spectra.
pub fn werner_ghz_i3(mu: f64) -> f64 {
    let pair = shannon(&[
        (1.0 + mu) / 4.0,
        (1.0 + mu) / 4.0,
        (1.0 - mu) / 4.0,
        (1.0 - mu) / 4.0,
    ]);
    let mut full = vec![(1.0 - mu) / 8.0; 7];
    full.push((1.0 + 7.0 * mu) / 8.0);
    3.0 - 3.0 * pair + shannon(&full)
}

/// Fixed computational-basis `delta_A` of the Werner-GHZ state.
pub fn werner_ghz_delta(mu: f64) -> f64 {
    werner_ghz_i3(mu) - 1.0 + 2.0 * werner_ghz_s1(mu) - werner_ghz_s2(mu)
}

pub fn werner_w_s1(mu: f64) -> f64 {
    h((3.0 - 5f64.sqrt() * mu) / 6.0)
}

/// `S(A|B,C)` of the Werner-W state with both partners measured at
/// `theta = pi/4`. The first logarithm carries the factor 2 needed for the
/// branch spectra to be normalized.
pub fn werner_w_s2(mu: f64) -> f64 {
    let t = |w: f64, x: f64| if w > 0.0 { -w * x.log2() } else { 0.0 };
    t(
        (1.0 - mu) / 4.0,
        3.0 * (1.0 - mu) / (2.0 * (3.0 + 2.0 * mu)),
    ) + t(
        (3.0 + 7.0 * mu) / 12.0,
        (3.0 + 7.0 * mu) / (2.0 * (3.0 + 2.0 * mu)),
    ) + t(
        (1.0 - mu) / 4.0,
        3.0 * (1.0 - mu) / (2.0 * (3.0 - 2.0 * mu)),
    ) + t((3.0 - mu) / 12.0, (3.0 - mu) / (2.0 * (3.0 - 2.0 * mu)))
}

// ---- dense reference path --------------------------------------------------

/// Square matrix on `n` qubits, qubit 0 the most significant bit.
#[derive(Debug, Clone)]
pub struct Dense {
    pub qubits: usize,
    pub data: Vec<C>,
}

impl Dense {
    pub fn dim(&self) -> usize {
        1 << self.qubits
    }

    pub fn at(&self, r: usize, col: usize) -> C {
        self.data[r * self.dim() + col]
    }

    pub fn from_vector(psi: &[C]) -> Self {
        let n = psi.len();
        let mut data = vec![c(0.0); n * n];
        for r in 0..n {
            for col in 0..n {
                data[r * n + col] = psi[r] * psi[col].conj();
            }
        }
        Self {
            qubits: n.trailing_zeros() as usize,
            data,
        }
    }

    pub fn to_density(&self) -> DensityOperator {
        let n = self.dim();
        DensityOperator::new(ComplexMatrix::new(n, n, self.data.clone()).unwrap()).unwrap()
    }

    pub fn from_density(rho: &DensityOperator) -> Self {
        Self {
            qubits: rho.num_qubits(),
            data: rho.matrix().as_slice().to_vec(),
        }
    }

    fn bit(&self, index: usize, q: usize) -> usize {
        (index >> (self.qubits - 1 - q)) & 1
    }

    /// Removes qubit `q` by `sum_{b,b'} conj(v_b) M_{..b.., ..b'..} v_b'`;
    /// with `v = None` it is the partial trace.
    pub fn remove(&self, q: usize, v: Option<[C; 2]>) -> Dense {
        let out_qubits = self.qubits - 1;
        let out_dim = 1 << out_qubits;
        let squeeze = |index: usize| {
            let high = index >> (self.qubits - q);
            let low = index & ((1 << (self.qubits - 1 - q)) - 1);
            (high << (self.qubits - 1 - q)) | low
        };
        let mut data = vec![c(0.0); out_dim * out_dim];
        for r in 0..self.dim() {
            for col in 0..self.dim() {
                let (br, bc) = (self.bit(r, q), self.bit(col, q));
                let weight = match v {
                    None if br == bc => c(1.0),
                    None => continue,
                    Some(v) => v[br].conj() * v[bc],
                };
                data[squeeze(r) * out_dim + squeeze(col)] += weight * self.at(r, col);
            }
        }
        Dense {
            qubits: out_qubits,
            data,
        }
    }

    /// Keeps the listed qubits (any order of listing; result in ascending order).
    pub fn keep(&self, qubits: &[usize]) -> Dense {
        let mut m = self.clone();
        for q in (0..self.qubits).rev() {
            if !qubits.contains(&q) {
                m = m.remove(q, None);
            }
        }
        m
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self.at(i, i).re).sum()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        let n = self.dim();
        let m = DMatrix::from_row_slice(n, n, &self.data);
        let mut ev: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
        ev.sort_by(f64::total_cmp);
        ev
    }

    /// Entropy of `M / Tr M`, zero when the trace vanishes.
    pub fn entropy(&self) -> f64 {
        let t = self.trace();
        if t <= 1e-12 {
            return 0.0;
        }
        if self.qubits == 1 {
            return qubit_entropy(
                self.at(0, 0).re / t,
                self.at(0, 1) / t,
                self.at(1, 1).re / t,
            );
        }
        shannon(
            &self
                .eigenvalues()
                .iter()
                .map(|&e| (e / t).max(0.0))
                .collect::<Vec<_>>(),
        )
    }

    pub fn conjugate_by(&self, u: &Dense) -> Dense {
        let n = self.dim();
        let mul = |a: &[C], b: &[C], adj_b: bool| {
            let mut out = vec![c(0.0); n * n];
            for i in 0..n {
                for k in 0..n {
                    for j in 0..n {
                        let bkj = if adj_b {
                            b[j * n + k].conj()
                        } else {
                            b[k * n + j]
                        };
                        out[i * n + j] += a[i * n + k] * bkj;
                    }
                }
            }
            out
        };
        let left = mul(&u.data, &self.data, false);
        Dense {
            qubits: self.qubits,
            data: mul(&left, &u.data, true),
        }
    }

    pub fn kron(&self, other: &Dense) -> Dense {
        let (n, m) = (self.dim(), other.dim());
        let d = n * m;
        let mut data = vec![c(0.0); d * d];
        for i in 0..n {
            for j in 0..n {
                for k in 0..m {
                    for l in 0..m {
                        data[(i * m + k) * d + j * m + l] = self.at(i, j) * other.at(k, l);
                    }
                }
            }
        }
        Dense {
            qubits: self.qubits + other.qubits,
            data,
        }
    }

    /// Relabels qubits: output qubit `i` is input qubit `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Dense {
        let n = self.dim();
        // Input index whose qubit perm[i] carries bit i of the output index.
        let map = |index: usize| {
            perm.iter().enumerate().fold(0, |acc, (i, &src)| {
                acc | (self.bit(index, i) << (self.qubits - 1 - src))
            })
        };
        let mut data = vec![c(0.0); n * n];
        for r in 0..n {
            for col in 0..n {
                data[r * n + col] = self.at(map(r), map(col));
            }
        }
        Dense {
            qubits: self.qubits,
            data,
        }
    }
}

/// Entropy of a normalized qubit state from its closed-form spectrum.
pub fn qubit_entropy(a: f64, b: C, d: f64) -> f64 {
    let mean = (a + d) / 2.0;
    let radius = (((a - d) / 2.0).powi(2) + b.norm_sqr()).sqrt();
    shannon(&[(mean + radius).max(0.0), (mean - radius).max(0.0)])
}

pub fn basis_vectors(theta: f64, phi: f64) -> [[C; 2]; 2] {
    let e = C::from_polar(1.0, phi);
    [
        [c(theta.cos()), e * theta.sin()],
        [-e.conj() * theta.sin(), c(theta.cos())],
    ]
}

/// `sum_j P_j S(rho_focus | j)` after measuring `measured` qubits.
pub fn conditional(rho: &Dense, focus: usize, measured: &[(usize, f64, f64)]) -> f64 {
    let keep: Vec<usize> = std::iter::once(focus)
        .chain(measured.iter().map(|m| m.0))
        .collect();
    let reduced = rho.keep(&keep);
    // Position of each kept qubit inside `reduced` (ascending order).
    let mut order = keep.clone();
    order.sort_unstable();
    let pos = |q: usize| order.iter().position(|&x| x == q).unwrap();

    let mut total = 0.0;
    let outcomes = 1usize << measured.len();
    for sel in 0..outcomes {
        // Remove measured qubits from the highest position down.
        let mut ms: Vec<(usize, [C; 2])> = measured
            .iter()
            .enumerate()
            .map(|(i, &(q, t, p))| (pos(q), basis_vectors(t, p)[(sel >> i) & 1]))
            .collect();
        ms.sort_by_key(|&(p, _)| std::cmp::Reverse(p));
        let mut m = reduced.clone();
        for (p, v) in ms {
            m = m.remove(p, Some(v));
        }
        total += m.trace() * m.entropy();
    }
    total
}

/// `I(A;B;C) - J_k` at the given bases of the non-focus qubits (ascending).
pub fn discord_at(rho: &Dense, focus: usize, angles: [(f64, f64); 2]) -> f64 {
    let others: Vec<usize> = (0..3).filter(|&q| q != focus).collect();
    let s = |qs: &[usize]| rho.keep(qs).entropy();
    let i3 = s(&[0]) + s(&[1]) + s(&[2]) - s(&[0, 1]) - s(&[1, 2]) - s(&[0, 2]) + rho.entropy();
    let (m, n) = (others[0], others[1]);
    let j = s(&[focus])
        - conditional(rho, focus, &[(m, angles[0].0, angles[0].1)])
        - conditional(rho, focus, &[(n, angles[1].0, angles[1].1)])
        + conditional(
            rho,
            focus,
            &[(m, angles[0].0, angles[0].1), (n, angles[1].0, angles[1].1)],
        );
    i3 - j
}

/// Minimum of [`discord_at`] over a `points^4` grid: polar angles on
/// `[0, pi/2]` inclusive, phases on `[0, 2 pi)`.
pub fn grid_minimum(rho: &Dense, focus: usize, points: usize) -> f64 {
    let others: Vec<usize> = (0..3).filter(|&q| q != focus).collect();
    let (m, n) = (others[0], others[1]);
    let thetas: Vec<f64> = (0..points)
        .map(|i| FRAC_PI_2 * i as f64 / (points - 1) as f64)
        .collect();
    let phis: Vec<f64> = (0..points)
        .map(|i| TAU * i as f64 / points as f64)
        .collect();
    let bases: Vec<(f64, f64)> = thetas
        .iter()
        .flat_map(|&t| phis.iter().map(move |&p| (t, p)))
        .collect();

    let s = |qs: &[usize]| rho.keep(qs).entropy();
    let constant = s(&[0]) + s(&[1]) + s(&[2]) - s(&[0, 1]) - s(&[1, 2]) - s(&[0, 2])
        + rho.entropy()
        - s(&[focus]);
    let single_m: Vec<f64> = bases
        .iter()
        .map(|&(t, p)| conditional(rho, focus, &[(m, t, p)]))
        .collect();
    let single_n: Vec<f64> = bases
        .iter()
        .map(|&(t, p)| conditional(rho, focus, &[(n, t, p)]))
        .collect();

    // Contract m first; the remaining pair (focus, n) stays in ascending order.
    let pos_m = m;
    let after_m: Vec<[Dense; 2]> = bases
        .iter()
        .map(|&(t, p)| {
            let v = basis_vectors(t, p);
            [rho.remove(pos_m, Some(v[0])), rho.remove(pos_m, Some(v[1]))]
        })
        .collect();
    let pos_n = if focus < n { 1 } else { 0 };

    let mut best = f64::INFINITY;
    for (i, pair) in after_m.iter().enumerate() {
        for (j, &(t, p)) in bases.iter().enumerate() {
            let v = basis_vectors(t, p);
            let mut two = 0.0;
            for half in pair {
                for vn in &v {
                    // Two-qubit contraction done inline to keep the grid fast.
                    let mut q = [[c(0.0); 2]; 2];
                    for r in 0..4 {
                        for col in 0..4 {
                            let (br, bc) = (half.bit(r, pos_n), half.bit(col, pos_n));
                            let (ar, ac) = (half.bit(r, 1 - pos_n), half.bit(col, 1 - pos_n));
                            q[ar][ac] += vn[br].conj() * vn[bc] * half.at(r, col);
                        }
                    }
                    let tr = q[0][0].re + q[1][1].re;
                    if tr > 1e-12 {
                        two += tr * qubit_entropy(q[0][0].re / tr, q[0][1] / tr, q[1][1].re / tr);
                    }
                }
            }
            best = best.min(constant + single_m[i] + single_n[j] - two);
        }
    }
    best
}

// ---- random ensembles ------------------------------------------------------

fn gaussian(rng: &mut ChaCha8Rng) -> C {
    C::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// `G G^dagger / Tr` with complex Gaussian `G`; full rank almost surely.
pub fn random_density(rng: &mut ChaCha8Rng, qubits: usize) -> Dense {
    let n = 1 << qubits;
    let g: Vec<C> = (0..n * n).map(|_| gaussian(rng)).collect();
    let mut data = vec![c(0.0); n * n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                data[i * n + j] += g[i * n + k] * g[j * n + k].conj();
            }
        }
    }
    let t: f64 = (0..n).map(|i| data[i * n + i].re).sum();
    for x in &mut data {
        *x /= t;
    }
    Dense { qubits, data }
}

/// Haar-random element of SU(2).
pub fn random_su2(rng: &mut ChaCha8Rng) -> Dense {
    let (a, b) = (gaussian(rng), gaussian(rng));
    let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
    let (a, b) = (a / norm, b / norm);
    Dense {
        qubits: 1,
        data: vec![a, -b.conj(), b, a.conj()],
    }
}

pub fn random_local_unitary(rng: &mut ChaCha8Rng) -> Dense {
    random_su2(rng)
        .kron(&random_su2(rng))
        .kron(&random_su2(rng))
}
