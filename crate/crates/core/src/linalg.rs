//! Dense complex linear algebra at qubit scale.
//!
//! Everything here works on matrices of dimension at most 8, so the
//! routines favour clarity over blocking or SIMD. Subsystem indices follow
//! the computational-basis convention: index 0 is the most significant
//! factor, so for three qubits `|abc>` sits at row `4a + 2b + c`.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Elementwise tolerance used by [`ComplexMatrix::hermitian_check`].
pub const HERMITIAN_CHECK_TOL: f64 = 1e-12;

/// Input tolerance accepted by [`ComplexMatrix::eigh`].
pub const EIGH_INPUT_TOL: f64 = 1e-10;

/// Jacobi sweeps stop once the off-diagonal Frobenius norm drops below this
/// (scaled by the matrix norm when that exceeds one).
pub const JACOBI_OFF_DIAGONAL_TOL: f64 = 1e-14;

const JACOBI_MAX_SWEEPS: usize = 64;

/// Row-major dense complex matrix.
#[derive(Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Complex64>,
}

/// Spectral decomposition of a Hermitian matrix.
///
/// Eigenvalues are ascending; column `i` of `eigenvectors` belongs to
/// `eigenvalues[i]`.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    /// Rebuilds `V diag(lambda) V^dagger`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let n = self.eigenvalues.len();
        let v = &self.eigenvectors;
        let mut out = ComplexMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, &lambda) in self.eigenvalues.iter().enumerate() {
                    acc += v[(r, k)] * v[(c, k)].conj() * lambda;
                }
                out[(r, c)] = acc;
            }
        }
        out
    }
}

impl ComplexMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Complex64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(Self { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        Self {
            rows,
            cols,
            data: vec![Complex64::new(0.0, 0.0); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = Complex64::new(d, 0.0);
        }
        m
    }

    /// Builds a square matrix from real rows.
    pub fn from_real_rows(rows: &[&[f64]]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            data.extend(row.iter().map(|&x| Complex64::new(x, 0.0)));
        }
        Self::new(n, n, data)
    }

    /// The rank-one operator `|v><v|`.
    pub fn outer(v: &[Complex64]) -> Self {
        let n = v.len();
        let mut m = Self::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                m[(r, c)] = v[r] * v[c].conj();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Complex64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(c, r)] = self[(r, c)].conj();
            }
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).sum()
    }

    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: rhs.rows,
            });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(r, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..rhs.cols {
                    out.data[r * rhs.cols + c] += a * rhs[(k, c)];
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|z| z * factor).collect(),
        }
    }

    /// `self + factor * other`.
    pub fn add_scaled(&self, other: &Self, factor: f64) -> Result<Self> {
        self.require_same_shape(other)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + b * factor)
                .collect(),
        })
    }

    /// Largest elementwise modulus of `self - other`; infinite on shape mismatch.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.rows != other.rows || self.cols != other.cols {
            return f64::INFINITY;
        }
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest elementwise modulus of `M - M^dagger`; infinite if not square.
    pub fn hermiticity_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows;
        let mut worst: f64 = 0.0;
        for r in 0..n {
            for c in r..n {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    /// `(M + M^dagger) / 2`.
    pub fn hermitian_part(&self) -> Self {
        let mut out = self.clone();
        for r in 0..self.rows {
            for c in 0..self.cols.min(self.rows) {
                out[(r, c)] = (self[(r, c)] + self[(c, r)].conj()) * 0.5;
            }
        }
        out
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_deviation() <= tol
    }

    /// Hermiticity at the strict elementwise tolerance of 1e-12.
    pub fn hermitian_check(&self) -> bool {
        self.is_hermitian(HERMITIAN_CHECK_TOL)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Kronecker product `self ⊗ rhs`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let rows = self.rows * rhs.rows;
        let cols = self.cols * rhs.cols;
        let mut out = Self::zeros(rows, cols);
        for ar in 0..self.rows {
            for ac in 0..self.cols {
                let a = self[(ar, ac)];
                for br in 0..rhs.rows {
                    for bc in 0..rhs.cols {
                        out[(ar * rhs.rows + br, ac * rhs.cols + bc)] = a * rhs[(br, bc)];
                    }
                }
            }
        }
        out
    }

    /// Traces out every subsystem not listed in `keep`.
    ///
    /// `dims` lists the subsystem dimensions (most significant first). The
    /// kept subsystems appear in the output in their original order,
    /// regardless of the order of `keep`.
    pub fn partial_trace(&self, dims: &[usize], keep: &[usize]) -> Result<Self> {
        let layout = Layout::new(self, dims)?;
        let mut kept = keep.to_vec();
        kept.sort_unstable();
        kept.dedup();
        if kept.len() != keep.len() {
            return Err(Error::Subsystems(format!(
                "duplicate subsystem in keep list {keep:?}"
            )));
        }
        if let Some(&bad) = kept.iter().find(|&&k| k >= dims.len()) {
            return Err(Error::Subsystems(format!(
                "subsystem {bad} out of range for {} subsystems",
                dims.len()
            )));
        }
        if kept.len() == dims.len() {
            return Ok(self.clone());
        }
        if kept.is_empty() {
            return Self::new(1, 1, vec![self.trace()]);
        }
        let traced: Vec<usize> = (0..dims.len()).filter(|i| !kept.contains(i)).collect();
        let kept_offsets = layout.offsets(&kept);
        let traced_offsets = layout.offsets(&traced);
        let n = kept_offsets.len();
        let mut out = Self::zeros(n, n);
        for (i, &ri) in kept_offsets.iter().enumerate() {
            for (j, &cj) in kept_offsets.iter().enumerate() {
                out[(i, j)] = traced_offsets.iter().map(|&t| self[(ri + t, cj + t)]).sum();
            }
        }
        Ok(out)
    }

    /// Contracts subsystem `index` against the vector `v`, returning
    /// `(<v| ⊗ I) M (|v> ⊗ I)` on the remaining subsystems.
    ///
    /// For a density operator this is the unnormalized conditional state
    /// after the outcome `|v><v|`; its trace is the outcome probability.
    pub fn contract_subsystem(
        &self,
        dims: &[usize],
        index: usize,
        v: &[Complex64],
    ) -> Result<Self> {
        let layout = Layout::new(self, dims)?;
        if index >= dims.len() {
            return Err(Error::Subsystems(format!(
                "subsystem {index} out of range for {} subsystems",
                dims.len()
            )));
        }
        if v.len() != dims[index] {
            return Err(Error::DimensionMismatch {
                expected: dims[index],
                found: v.len(),
            });
        }
        if dims.len() == 1 {
            let mut acc = Complex64::new(0.0, 0.0);
            for (a, va) in v.iter().enumerate() {
                for (b, vb) in v.iter().enumerate() {
                    acc += va.conj() * self[(a, b)] * vb;
                }
            }
            return Self::new(1, 1, vec![acc]);
        }
        let rest: Vec<usize> = (0..dims.len()).filter(|&i| i != index).collect();
        let offsets = layout.offsets(&rest);
        let stride = layout.strides[index];
        let n = offsets.len();
        let mut out = Self::zeros(n, n);
        for (i, &ri) in offsets.iter().enumerate() {
            for (j, &cj) in offsets.iter().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for (a, va) in v.iter().enumerate() {
                    let row = ri + a * stride;
                    let mut inner = Complex64::new(0.0, 0.0);
                    for (b, vb) in v.iter().enumerate() {
                        inner += self[(row, cj + b * stride)] * vb;
                    }
                    acc += va.conj() * inner;
                }
                out[(i, j)] = acc;
            }
        }
        Ok(out)
    }

    /// Full spectral decomposition by cyclic complex Jacobi rotations.
    pub fn eigh(&self) -> Result<EigenDecomposition> {
        self.require_hermitian()?;
        let (eigenvalues, vectors) = jacobi(self, true);
        Ok(EigenDecomposition {
            eigenvalues,
            eigenvectors: vectors.expect("vectors requested"),
        })
    }

    /// Ascending eigenvalues only; skips accumulating the eigenvectors.
    pub fn eigenvalues_hermitian(&self) -> Result<Vec<f64>> {
        self.require_hermitian()?;
        if self.rows == 2 {
            // Closed form; measured branch states are qubits and this is the hot path.
            let (a, d) = (self[(0, 0)].re, self[(1, 1)].re);
            let mean = 0.5 * (a + d);
            let radius = (0.5 * (a - d)).hypot(self[(0, 1)].norm());
            return Ok(vec![mean - radius, mean + radius]);
        }
        Ok(jacobi(self, false).0)
    }

    fn require_hermitian(&self) -> Result<()> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let deviation = self.hermiticity_deviation();
        if deviation > EIGH_INPUT_TOL {
            return Err(Error::NotHermitian { deviation });
        }
        Ok(())
    }

    fn require_same_shape(&self, other: &Self) -> Result<()> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: other.rows,
            });
        }
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.cols,
            });
        }
        Ok(())
    }
}

impl Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;

    fn index(&self, (r, c): (usize, usize)) -> &Complex64 {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Complex64 {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for ComplexMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ComplexMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "  ")?;
            for c in 0..self.cols {
                let z = self[(r, c)];
                write!(f, "{:+.6}{:+.6}i ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Offsets of a square matrix viewed as a tensor product of subsystems.
struct Layout {
    dims: Vec<usize>,
    strides: Vec<usize>,
}

impl Layout {
    fn new(m: &ComplexMatrix, dims: &[usize]) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows,
                cols: m.cols,
            });
        }
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::Subsystems(format!(
                "invalid subsystem dimensions {dims:?}"
            )));
        }
        let total: usize = dims.iter().product();
        if total != m.rows {
            return Err(Error::DimensionMismatch {
                expected: m.rows,
                found: total,
            });
        }
        let mut strides = vec![1; dims.len()];
        for i in (0..dims.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * dims[i + 1];
        }
        Ok(Self {
            dims: dims.to_vec(),
            strides,
        })
    }

    /// Flat offsets of every multi-index over `subset`, enumerated with the
    /// first listed subsystem most significant.
    fn offsets(&self, subset: &[usize]) -> Vec<usize> {
        let mut out = vec![0usize];
        for &s in subset {
            let mut next = Vec::with_capacity(out.len() * self.dims[s]);
            for &base in &out {
                for digit in 0..self.dims[s] {
                    next.push(base + digit * self.strides[s]);
                }
            }
            out = next;
        }
        out
    }
}

fn jacobi(m: &ComplexMatrix, want_vectors: bool) -> (Vec<f64>, Option<ComplexMatrix>) {
    let n = m.rows;
    let mut a = m.data.clone();
    // Symmetrize so that tiny input asymmetries do not bias the rotations.
    for r in 0..n {
        a[r * n + r] = Complex64::new(a[r * n + r].re, 0.0);
        for c in (r + 1)..n {
            let avg = (a[r * n + c] + a[c * n + r].conj()) * 0.5;
            a[r * n + c] = avg;
            a[c * n + r] = avg.conj();
        }
    }
    let mut v = want_vectors.then(|| ComplexMatrix::identity(n).data);
    let threshold = JACOBI_OFF_DIAGONAL_TOL * m.frobenius_norm().max(1.0);

    for _ in 0..JACOBI_MAX_SWEEPS {
        if off_diagonal_norm(&a, n) <= threshold {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let r = apq.norm();
                if r <= f64::MIN_POSITIVE {
                    continue;
                }
                // Phase-align the pivot, then apply the real symmetric rotation.
                let phase = (apq / r).conj();
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let tau = (aqq - app) / (2.0 * r);
                let t = if tau >= 0.0 {
                    1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    -1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let u_pp = Complex64::new(c, 0.0);
                let u_pq = Complex64::new(s, 0.0);
                let u_qp = phase * -s;
                let u_qq = phase * c;

                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = akp * u_pp + akq * u_qp;
                    a[k * n + q] = akp * u_pq + akq * u_qq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = u_pp.conj() * apk + u_qp.conj() * aqk;
                    a[q * n + k] = u_pq.conj() * apk + u_qq.conj() * aqk;
                }
                a[p * n + q] = Complex64::new(0.0, 0.0);
                a[q * n + p] = Complex64::new(0.0, 0.0);
                a[p * n + p].im = 0.0;
                a[q * n + q].im = 0.0;

                if let Some(v) = v.as_mut() {
                    for k in 0..n {
                        let vkp = v[k * n + p];
                        let vkq = v[k * n + q];
                        v[k * n + p] = vkp * u_pp + vkq * u_qp;
                        v[k * n + q] = vkp * u_pq + vkq * u_qq;
                    }
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[i * n + i].re.total_cmp(&a[j * n + j].re));
    let eigenvalues = order.iter().map(|&i| a[i * n + i].re).collect();
    let vectors = v.map(|v| {
        let mut out = ComplexMatrix::zeros(n, n);
        for (new_col, &old_col) in order.iter().enumerate() {
            for r in 0..n {
                out[(r, new_col)] = v[r * n + old_col];
            }
        }
        out
    });
    (eigenvalues, vectors)
}

fn off_diagonal_norm(a: &[Complex64], n: usize) -> f64 {
    let mut acc = 0.0;
    for r in 0..n {
        for c in 0..n {
            if r != c {
                acc += a[r * n + c].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn ghz_density() -> ComplexMatrix {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let mut v = vec![c(0.0, 0.0); 8];
        v[0] = c(s, 0.0);
        v[7] = c(s, 0.0);
        ComplexMatrix::outer(&v)
    }

    #[test]
    fn kron_of_identities_is_identity() {
        let i2 = ComplexMatrix::identity(2);
        assert_eq!(i2.kron(&i2), ComplexMatrix::identity(4));
    }

    #[test]
    fn kron_of_projectors() {
        let p0 = ComplexMatrix::from_diagonal(&[1.0, 0.0]);
        assert_eq!(
            p0.kron(&p0),
            ComplexMatrix::from_diagonal(&[1.0, 0.0, 0.0, 0.0])
        );
    }

    #[test]
    fn kron_projector_with_classical_pair() {
        let p0 = ComplexMatrix::from_diagonal(&[1.0, 0.0]);
        let pair = ComplexMatrix::from_diagonal(&[0.5, 0.0, 0.0, 0.5]);
        let m = p0.kron(&pair);
        assert_eq!((m.rows(), m.cols()), (8, 8));
        for r in 0..8 {
            for col in 0..8 {
                let expected = if (r, col) == (0, 0) || (r, col) == (3, 3) {
                    0.5
                } else {
                    0.0
                };
                assert_eq!(m[(r, col)], c(expected, 0.0), "entry ({r},{col})");
            }
        }
    }

    #[test]
    fn ghz_marginals() {
        let rho = ghz_density();
        let single = rho.partial_trace(&[2, 2, 2], &[0]).unwrap();
        assert!(single.max_abs_diff(&ComplexMatrix::from_diagonal(&[0.5, 0.5])) < 1e-15);
        let pair = rho.partial_trace(&[2, 2, 2], &[0, 1]).unwrap();
        assert!(pair.max_abs_diff(&ComplexMatrix::from_diagonal(&[0.5, 0.0, 0.0, 0.5])) < 1e-15);
    }

    #[test]
    fn partial_trace_of_product_state() {
        let r1 = ComplexMatrix::from_real_rows(&[&[0.7, 0.1], &[0.1, 0.3]]).unwrap();
        let r2 = ComplexMatrix::from_diagonal(&[0.25, 0.75]);
        let mut r3 = ComplexMatrix::from_diagonal(&[0.5, 0.5]);
        r3[(0, 1)] = c(0.0, 0.2);
        r3[(1, 0)] = c(0.0, -0.2);
        let rho = r1.kron(&r2).kron(&r3);
        let dims = [2, 2, 2];
        assert!(
            rho.partial_trace(&dims, &[1, 2])
                .unwrap()
                .max_abs_diff(&r2.kron(&r3))
                < 1e-15
        );
        assert!(
            rho.partial_trace(&dims, &[0, 2])
                .unwrap()
                .max_abs_diff(&r1.kron(&r3))
                < 1e-15
        );
        assert!(
            rho.partial_trace(&dims, &[0, 1])
                .unwrap()
                .max_abs_diff(&r1.kron(&r2))
                < 1e-15
        );
        // Output order follows subsystem order, not the order of `keep`.
        assert_eq!(
            rho.partial_trace(&dims, &[2, 0]).unwrap(),
            rho.partial_trace(&dims, &[0, 2]).unwrap()
        );
    }

    #[test]
    fn partial_trace_rejects_bad_dims() {
        let rho = ghz_density();
        assert!(matches!(
            rho.partial_trace(&[2, 2], &[0]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            rho.partial_trace(&[2, 2, 2], &[3]),
            Err(Error::Subsystems(_))
        ));
        assert!(matches!(
            rho.partial_trace(&[2, 2, 2], &[1, 1]),
            Err(Error::Subsystems(_))
        ));
        let rect = ComplexMatrix::zeros(2, 4);
        assert!(matches!(
            rect.partial_trace(&[2], &[0]),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn contraction_matches_projector_then_trace() {
        let rho = ghz_density();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let v = [c(s, 0.0), c(0.0, s)];
        let proj = ComplexMatrix::outer(&v);
        let i2 = ComplexMatrix::identity(2);
        let big = i2.kron(&proj).kron(&i2);
        let direct = big
            .matmul(&rho)
            .unwrap()
            .matmul(&big)
            .unwrap()
            .partial_trace(&[2, 2, 2], &[0, 2])
            .unwrap();
        let contracted = rho.contract_subsystem(&[2, 2, 2], 1, &v).unwrap();
        assert!(direct.max_abs_diff(&contracted) < 1e-15);
    }

    #[test]
    fn eigh_diagonal() {
        let d = ComplexMatrix::from_diagonal(&[0.75, 0.25]).eigh().unwrap();
        assert!((d.eigenvalues[0] - 0.25).abs() < 1e-15);
        assert!((d.eigenvalues[1] - 0.75).abs() < 1e-15);
    }

    #[test]
    fn eigh_rank_one_projector() {
        let m = ComplexMatrix::from_real_rows(&[&[0.5, 0.5], &[0.5, 0.5]]).unwrap();
        let d = m.eigh().unwrap();
        assert!(d.eigenvalues[0].abs() < 1e-15);
        assert!((d.eigenvalues[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn eigh_w_pair_marginal() {
        // (|00><00| + |01><01| + |01><10| + |10><01| + |10><10|) / 3
        let t = 1.0 / 3.0;
        let m = ComplexMatrix::from_real_rows(&[
            &[t, 0.0, 0.0, 0.0],
            &[0.0, t, t, 0.0],
            &[0.0, t, t, 0.0],
            &[0.0, 0.0, 0.0, 0.0],
        ])
        .unwrap();
        let d = m.eigh().unwrap();
        let expected = [0.0, 0.0, 1.0 / 3.0, 2.0 / 3.0];
        for (got, want) in d.eigenvalues.iter().zip(expected) {
            assert!((got - want).abs() < 1e-14, "{:?}", d.eigenvalues);
        }
        // One of the null vectors is |11>.
        let null_on_11 = (0..2).any(|k| (d.eigenvectors[(3, k)].norm() - 1.0).abs() < 1e-12);
        assert!(null_on_11);
    }

    #[test]
    fn eigh_complex_hermitian() {
        // Pauli Y has eigenvalues -1, +1 with complex eigenvectors.
        let y = ComplexMatrix::new(
            2,
            2,
            vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)],
        )
        .unwrap();
        let d = y.eigh().unwrap();
        assert!((d.eigenvalues[0] + 1.0).abs() < 1e-15);
        assert!((d.eigenvalues[1] - 1.0).abs() < 1e-15);
        assert!(d.reconstruct().max_abs_diff(&y) < 1e-14);
    }

    #[test]
    fn eigh_rejects_non_hermitian() {
        let m = ComplexMatrix::from_real_rows(&[&[1.0, 2.0], &[0.0, 1.0]]).unwrap();
        assert!(matches!(m.eigh(), Err(Error::NotHermitian { .. })));
        assert!(matches!(
            ComplexMatrix::zeros(2, 3).eigh(),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn hermitian_check_threshold() {
        let mut m = ComplexMatrix::identity(2);
        m[(0, 1)] = c(1e-13, 0.0);
        assert!(m.hermitian_check());
        m[(0, 1)] = c(1e-11, 0.0);
        assert!(!m.hermitian_check());
    }

    #[test]
    fn new_validates_entry_count() {
        assert!(ComplexMatrix::new(2, 2, vec![c(1.0, 0.0); 3]).is_err());
        assert!(ComplexMatrix::new(0, 2, vec![]).is_err());
    }
}
