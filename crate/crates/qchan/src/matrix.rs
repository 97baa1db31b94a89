//! Dense complex linear algebra primitives.
//!
//! Everything in this crate works on small dense matrices (dimension 16 at
//! most: a four-qubit register), so the representation is a plain row-major
//! `Vec<Complex64>` and the eigensolver is a cyclic Jacobi iteration. All
//! well-formedness checks (square, Hermitian, unitary, PSD) are explicit
//! predicates with a caller-supplied tolerance.

use num_complex::Complex;

use crate::error::{Error, Result};

/// Complex number type used throughout the crate.
pub type Complex64 = Complex<f64>;

/// Shorthand for a real complex constant.
pub fn cx(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

// ---------------------------------------------------------------------------
// ComplexMatrix
// ---------------------------------------------------------------------------

/// Dense complex matrix in row-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Complex64>,
}

impl ComplexMatrix {
    /// Build a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<Complex64>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix needs {} entries, got {}",
                rows,
                cols,
                rows * cols,
                entries.len()
            )));
        }
        Ok(Self { rows, cols, entries })
    }

    /// All-zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![ZERO; rows * cols],
        }
    }

    /// Identity matrix of dimension `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, ONE);
        }
        m
    }

    /// Square matrix from real row-major entries.
    pub fn from_real(rows: usize, cols: usize, entries: &[f64]) -> Result<Self> {
        Self::new(
            rows,
            cols,
            entries.iter().map(|&r| cx(r, 0.0)).collect(),
        )
    }

    /// Diagonal matrix from the given entries.
    pub fn from_diagonal(diag: &[Complex64]) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(n, n);
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
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

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.entries[row * self.cols + col]
    }

    #[inline]
    pub fn set(&mut self, row: usize, col: usize, value: Complex64) {
        self.entries[row * self.cols + col] = value;
    }

    /// Raw row-major entries.
    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    /// Matrix product `self * other`.
    pub fn matmul(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = ComplexMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == ZERO {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Kronecker product with `self` on the most significant index.
    ///
    /// With the crate-wide big-endian qubit convention, `a.kron(&b)` places
    /// `a`'s subsystem on the high bits (ancillas before the work qubit).
    pub fn kron(&self, other: &ComplexMatrix) -> ComplexMatrix {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        let mut out = ComplexMatrix::zeros(rows, cols);
        for i1 in 0..self.rows {
            for j1 in 0..self.cols {
                let a = self.get(i1, j1);
                if a == ZERO {
                    continue;
                }
                for i2 in 0..other.rows {
                    for j2 in 0..other.cols {
                        out.set(
                            i1 * other.rows + i2,
                            j1 * other.cols + j2,
                            a * other.get(i2, j2),
                        );
                    }
                }
            }
        }
        out
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    pub fn add(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &ComplexMatrix) -> Result<ComplexMatrix> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &ComplexMatrix,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<ComplexMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let entries = self
            .entries
            .iter()
            .zip(other.entries.iter())
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    /// Scalar multiple.
    pub fn scale(&self, factor: Complex64) -> ComplexMatrix {
        ComplexMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&e| e * factor).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    /// Matrix-vector product.
    pub fn matvec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix applied to length-{} vector",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![ZERO; self.rows];
        for i in 0..self.rows {
            let mut acc = ZERO;
            for j in 0..self.cols {
                acc += self.get(i, j) * v[j];
            }
            out[i] = acc;
        }
        Ok(out)
    }

    /// Largest entry magnitude.
    pub fn max_abs(&self) -> f64 {
        self.entries.iter().map(|e| e.norm()).fold(0.0, f64::max)
    }

    /// Largest elementwise difference `max |self - other|`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        debug_assert_eq!(self.rows, other.rows);
        debug_assert_eq!(self.cols, other.cols);
        self.entries
            .iter()
            .zip(other.entries.iter())
            .map(|(&a, &b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Hermiticity residual `max |M - M†|`.
    pub fn hermiticity_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.rows {
            for j in 0..self.cols {
                let d = (self.get(i, j) - self.get(j, i).conj()).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.is_square() && self.hermiticity_residual() < tol
    }

    /// Unitarity residual `max |U†U - I|`.
    pub fn unitarity_residual(&self) -> f64 {
        let gram = self.dagger().matmul(self).expect("square product");
        gram.max_abs_diff(&ComplexMatrix::identity(self.cols))
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.is_square() && self.unitarity_residual() < tol
    }

    /// PSD predicate: Hermitian within `tol` and min eigenvalue >= -tol.
    pub fn is_psd(&self, tol: f64) -> bool {
        if !self.is_hermitian(tol) {
            return false;
        }
        match self.hermitian_eig() {
            Ok((eigenvalues, _)) => eigenvalues.iter().all(|&l| l >= -tol),
            Err(_) => false,
        }
    }

    /// Operator norm (largest singular value), via the eigenvalues of `M†M`.
    pub fn operator_norm(&self) -> f64 {
        let gram = self.dagger().matmul(self).expect("square product");
        let (eigenvalues, _) = gram.hermitian_eig().expect("Gram matrix is Hermitian");
        eigenvalues
            .last()
            .copied()
            .unwrap_or(0.0)
            .max(0.0)
            .sqrt()
    }

    /// Partial trace over the subsystems not listed in `keep`.
    ///
    /// `dims` are the subsystem dimensions ordered most significant first
    /// (matching [`ComplexMatrix::kron`]); the reduced matrix keeps the
    /// subsystems in `keep` in their original relative order.
    pub fn partial_trace(&self, dims: &[usize], keep: &[usize]) -> Result<ComplexMatrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(
                "partial trace needs a square matrix".into(),
            ));
        }
        let total: usize = dims.iter().product();
        if total != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "subsystem dims {:?} give {}, matrix is {}x{}",
                dims, total, self.rows, self.cols
            )));
        }
        if keep.iter().any(|&k| k >= dims.len()) {
            return Err(Error::DimensionMismatch(format!(
                "keep set {:?} out of range for {} subsystems",
                keep,
                dims.len()
            )));
        }
        let traced: Vec<usize> = (0..dims.len()).filter(|i| !keep.contains(i)).collect();
        let keep_dim: usize = keep.iter().map(|&k| dims[k]).product();
        let trace_dim: usize = traced.iter().map(|&t| dims[t]).product();

        // Strides of each subsystem in the flat index (big-endian layout).
        let mut strides = vec![1usize; dims.len()];
        for i in (0..dims.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * dims[i + 1];
        }

        let flat_index = |subsystems: &[usize], values: &[usize]| -> usize {
            subsystems
                .iter()
                .zip(values.iter())
                .map(|(&s, &v)| strides[s] * v)
                .sum()
        };
        let unrank = |mut r: usize, subsystems: &[usize]| -> Vec<usize> {
            let mut vals = vec![0usize; subsystems.len()];
            for i in (0..subsystems.len()).rev() {
                let d = dims[subsystems[i]];
                vals[i] = r % d;
                r /= d;
            }
            vals
        };

        let mut out = ComplexMatrix::zeros(keep_dim, keep_dim);
        for ki in 0..keep_dim {
            let kvi = unrank(ki, keep);
            let base_i = flat_index(keep, &kvi);
            for kj in 0..keep_dim {
                let kvj = unrank(kj, keep);
                let base_j = flat_index(keep, &kvj);
                let mut acc = ZERO;
                for t in 0..trace_dim {
                    let tv = unrank(t, &traced);
                    let offset = flat_index(&traced, &tv);
                    acc += self.get(base_i + offset, base_j + offset);
                }
                out.set(ki, kj, acc);
            }
        }
        Ok(out)
    }

    /// Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
    ///
    /// Returns eigenvalues in ascending order and the unitary of eigenvectors
    /// (as columns) with `M = V diag(λ) V†`.
    pub fn hermitian_eig(&self) -> Result<(Vec<f64>, ComplexMatrix)> {
        let residual = if self.is_square() {
            self.hermiticity_residual()
        } else {
            f64::INFINITY
        };
        if residual >= 1e-9 {
            return Err(Error::NotHermitian { residual });
        }
        let n = self.rows;
        let mut m = self.clone();
        // Symmetrize to kill the sub-tolerance asymmetry before iterating.
        for i in 0..n {
            for j in 0..n {
                let avg = (m.get(i, j) + m.get(j, i).conj()) * cx(0.5, 0.0);
                m.set(i, j, avg);
                m.set(j, i, avg.conj());
            }
        }
        let mut v = ComplexMatrix::identity(n);
        let scale = m.frobenius_norm().max(1.0);

        for _sweep in 0..60 {
            let mut off = 0.0f64;
            for p in 0..n {
                for q in (p + 1)..n {
                    off += m.get(p, q).norm_sqr();
                }
            }
            if off.sqrt() <= 1e-14 * scale {
                break;
            }
            for p in 0..n {
                for q in (p + 1)..n {
                    let f = m.get(p, q);
                    let fmag = f.norm();
                    if fmag <= 1e-300 {
                        continue;
                    }
                    let phase = f / fmag;
                    let a = m.get(p, p).re;
                    let b = m.get(q, q).re;
                    let tau = (a - b) / (2.0 * fmag);
                    let t = if tau == 0.0 {
                        1.0
                    } else {
                        tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
                    };
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = t * c;
                    // Rotation columns: col_p' = c col_p + s e^{-iφ} col_q,
                    //                   col_q' = -s e^{iφ} col_p + c col_q.
                    let sp = phase.conj() * s; // s e^{-iφ}
                    let sq = phase * s; // s e^{iφ}
                    for k in 0..n {
                        let mkp = m.get(k, p);
                        let mkq = m.get(k, q);
                        m.set(k, p, mkp * c + mkq * sp);
                        m.set(k, q, mkq * c - mkp * sq);
                    }
                    for k in 0..n {
                        let mpk = m.get(p, k);
                        let mqk = m.get(q, k);
                        m.set(p, k, mpk * c + mqk * sq.conj());
                        m.set(q, k, mqk * c - mpk * sp.conj());
                    }
                    for k in 0..n {
                        let vkp = v.get(k, p);
                        let vkq = v.get(k, q);
                        v.set(k, p, vkp * c + vkq * sp);
                        v.set(k, q, vkq * c - vkp * sq);
                    }
                }
            }
        }

        let mut order: Vec<usize> = (0..n).collect();
        let diagonal: Vec<f64> = (0..n).map(|i| m.get(i, i).re).collect();
        order.sort_by(|&i, &j| diagonal[i].partial_cmp(&diagonal[j]).unwrap());
        let eigenvalues: Vec<f64> = order.iter().map(|&i| diagonal[i]).collect();
        let mut vectors = ComplexMatrix::zeros(n, n);
        for (new_col, &old_col) in order.iter().enumerate() {
            for row in 0..n {
                vectors.set(row, new_col, v.get(row, old_col));
            }
        }
        Ok((eigenvalues, vectors))
    }

    /// Principal square root of a PSD matrix.
    ///
    /// Eigenvalues in `(-1e-6, 0)` are clamped to zero; anything more
    /// negative is rejected.
    pub fn psd_sqrt(&self) -> Result<ComplexMatrix> {
        let (eigenvalues, vectors) = self.hermitian_eig()?;
        if let Some(&min) = eigenvalues.first() {
            if min < -1e-6 {
                return Err(Error::NotPositive {
                    min_eigenvalue: min,
                });
            }
        }
        let roots: Vec<Complex64> = eigenvalues
            .iter()
            .map(|&l| cx(clamp_eigenvalue(l).sqrt(), 0.0))
            .collect();
        let d = ComplexMatrix::from_diagonal(&roots);
        vectors.matmul(&d)?.matmul(&vectors.dagger())
    }
}

/// Clamp tiny negative or near-zero eigenvalues to exactly zero.
///
/// Guards the `0·log 0` and `sqrt(-ε)` singularities in entropy and
/// square-root computations.
pub fn clamp_eigenvalue(value: f64) -> f64 {
    if value.abs() < 1e-12 {
        0.0
    } else {
        value.max(0.0)
    }
}

/// Complete a unit column to a full unitary via a Householder reflection.
///
/// The returned matrix is deterministic, has `first_column` as column 0
/// exactly, and is unitary within 1e-10.
pub fn complete_unitary(first_column: &[Complex64]) -> Result<ComplexMatrix> {
    let n = first_column.len();
    let norm: f64 = first_column
        .iter()
        .map(|e| e.norm_sqr())
        .sum::<f64>()
        .sqrt();
    if (norm - 1.0).abs() >= 1e-10 {
        return Err(Error::NotNormalized(norm));
    }
    let lead = first_column[0];
    let phase = if lead.norm() < 1e-14 {
        ONE
    } else {
        lead / lead.norm()
    };
    // v = x - ω e₀, H = I - 2 v v† / |v|², then H (ω e₀) = x.
    let mut v: Vec<Complex64> = first_column.to_vec();
    v[0] -= phase;
    let vnorm_sqr: f64 = v.iter().map(|e| e.norm_sqr()).sum();
    let mut u = ComplexMatrix::identity(n);
    if vnorm_sqr > 1e-28 {
        for i in 0..n {
            for j in 0..n {
                let h = u.get(i, j) - v[i] * v[j].conj() * cx(2.0 / vnorm_sqr, 0.0);
                u.set(i, j, h);
            }
        }
    }
    // Fold the phase of the leading entry into column 0 and pin it exactly.
    for i in 0..n {
        let c = u.get(i, 0) * phase;
        u.set(i, 0, c);
    }
    for (i, &x) in first_column.iter().enumerate() {
        u.set(i, 0, x);
    }
    Ok(u)
}

// ---------------------------------------------------------------------------
// Common gates and operators
// ---------------------------------------------------------------------------

/// Fixed 2x2 operators and rotation gates.
pub mod gates {
    use super::{cx, Complex64, ComplexMatrix};

    pub fn pauli_x() -> ComplexMatrix {
        ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 1.0, 0.0]).unwrap()
    }

    pub fn pauli_y() -> ComplexMatrix {
        ComplexMatrix::new(
            2,
            2,
            vec![cx(0.0, 0.0), cx(0.0, -1.0), cx(0.0, 1.0), cx(0.0, 0.0)],
        )
        .unwrap()
    }

    pub fn pauli_z() -> ComplexMatrix {
        ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, -1.0]).unwrap()
    }

    /// Pauli operator by index: σ₀ = I, σ₁ = X, σ₂ = Y, σ₃ = Z.
    pub fn pauli(index: usize) -> ComplexMatrix {
        match index {
            0 => ComplexMatrix::identity(2),
            1 => pauli_x(),
            2 => pauli_y(),
            3 => pauli_z(),
            _ => panic!("Pauli index {index} out of range"),
        }
    }

    pub fn hadamard() -> ComplexMatrix {
        let h = 1.0 / 2.0_f64.sqrt();
        ComplexMatrix::from_real(2, 2, &[h, h, h, -h]).unwrap()
    }

    /// Rotation about the y axis: `R_y(θ)`.
    pub fn ry(theta: f64) -> ComplexMatrix {
        let c = (theta / 2.0).cos();
        let s = (theta / 2.0).sin();
        ComplexMatrix::from_real(2, 2, &[c, -s, s, c]).unwrap()
    }

    /// Phase gate `diag(1, e^{iλ})`.
    pub fn phase(lambda: f64) -> ComplexMatrix {
        ComplexMatrix::new(
            2,
            2,
            vec![
                cx(1.0, 0.0),
                cx(0.0, 0.0),
                cx(0.0, 0.0),
                Complex64::from_polar(1.0, lambda),
            ],
        )
        .unwrap()
    }

    pub fn t_gate() -> ComplexMatrix {
        phase(std::f64::consts::FRAC_PI_4)
    }

    pub fn t_dagger() -> ComplexMatrix {
        phase(-std::f64::consts::FRAC_PI_4)
    }

    /// CNOT on two qubits, control on the high bit.
    pub fn cnot() -> ComplexMatrix {
        ComplexMatrix::from_real(
            4,
            4,
            &[
                1.0, 0.0, 0.0, 0.0, //
                0.0, 1.0, 0.0, 0.0, //
                0.0, 0.0, 0.0, 1.0, //
                0.0, 0.0, 1.0, 0.0,
            ],
        )
        .unwrap()
    }
}

// ---------------------------------------------------------------------------
// StateVector
// ---------------------------------------------------------------------------

/// Pure state on a register of qubits (big-endian labeling).
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// Build a state from amplitudes, requiring unit norm within 1e-6.
    pub fn new(num_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        if amplitudes.len() != 1 << num_qubits {
            return Err(Error::DimensionMismatch(format!(
                "{} qubits need {} amplitudes, got {}",
                num_qubits,
                1usize << num_qubits,
                amplitudes.len()
            )));
        }
        let norm: f64 = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-6 {
            return Err(Error::NotNormalized(norm));
        }
        let mut state = Self {
            num_qubits,
            amplitudes,
        };
        state.normalize();
        Ok(state)
    }

    /// Computational basis state |index⟩.
    pub fn basis(num_qubits: usize, index: usize) -> Self {
        let mut amplitudes = vec![ZERO; 1 << num_qubits];
        amplitudes[index] = ONE;
        Self {
            num_qubits,
            amplitudes,
        }
    }

    /// |0...0⟩.
    pub fn zero(num_qubits: usize) -> Self {
        Self::basis(num_qubits, 0)
    }

    /// Single-qubit |+⟩ = (|0⟩ + |1⟩)/√2.
    pub fn plus() -> Self {
        let h = cx(1.0 / 2.0_f64.sqrt(), 0.0);
        Self {
            num_qubits: 1,
            amplitudes: vec![h, h],
        }
    }

    /// Pure single-qubit state at the given unit Bloch vector.
    pub fn from_bloch(r: [f64; 3]) -> Result<Self> {
        let len = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
        if (len - 1.0).abs() > 1e-6 {
            return Err(Error::NotNormalized(len));
        }
        let theta = r[2].clamp(-1.0, 1.0).acos();
        let phi = r[1].atan2(r[0]);
        let a0 = cx((theta / 2.0).cos(), 0.0);
        let a1 = Complex64::from_polar((theta / 2.0).sin(), phi);
        Self::new(1, vec![a0, a1])
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitudes_mut(&mut self) -> &mut [Complex64] {
        &mut self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes
            .iter()
            .map(|a| a.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// Rescale to unit norm; after this `Σ|amplitude|² = 1` within 1e-10.
    pub fn normalize(&mut self) {
        let n = self.norm();
        if n > 1e-300 {
            for a in &mut self.amplitudes {
                *a /= n;
            }
        }
    }

    /// Tensor product with `self` on the high bits.
    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let mut amplitudes = vec![ZERO; self.dim() * other.dim()];
        for (i, &a) in self.amplitudes.iter().enumerate() {
            if a == ZERO {
                continue;
            }
            for (j, &b) in other.amplitudes.iter().enumerate() {
                amplitudes[i * other.dim() + j] = a * b;
            }
        }
        StateVector {
            num_qubits: self.num_qubits + other.num_qubits,
            amplitudes,
        }
    }

    /// Inner product ⟨self|other⟩.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(other.amplitudes.iter())
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// Density matrix |ψ⟩⟨ψ|.
    pub fn density_matrix(&self) -> ComplexMatrix {
        let d = self.dim();
        let mut out = ComplexMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                out.set(i, j, self.amplitudes[i] * self.amplitudes[j].conj());
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testkit;

    #[test]
    fn matmul_identity_and_paulis() {
        let m = testkit::random_matrix(&mut testkit::rng(1), 2, 2);
        let id = ComplexMatrix::identity(2);
        assert!(id.matmul(&m).unwrap().max_abs_diff(&m) < 1e-15);

        // X Z = [[0,-1],[1,0]]
        let xz = gates::pauli_x().matmul(&gates::pauli_z()).unwrap();
        let expected = ComplexMatrix::from_real(2, 2, &[0.0, -1.0, 1.0, 0.0]).unwrap();
        assert!(xz.max_abs_diff(&expected) < 1e-15);

        // X swaps the rows of a diagonal matrix.
        let d = ComplexMatrix::from_diagonal(&[cx(3.0, 0.0), cx(5.0, 0.0)]);
        let xd = gates::pauli_x().matmul(&d).unwrap();
        let expected = ComplexMatrix::from_real(2, 2, &[0.0, 5.0, 3.0, 0.0]).unwrap();
        assert!(xd.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn matmul_rejects_dimension_mismatch() {
        let a = ComplexMatrix::zeros(2, 3);
        let b = ComplexMatrix::zeros(2, 2);
        assert!(matches!(a.matmul(&b), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn kron_basics() {
        let id2 = ComplexMatrix::identity(2);
        assert!(id2.kron(&id2).max_abs_diff(&ComplexMatrix::identity(4)) < 1e-15);

        // |0⟩⟨0| ⊗ X places X in the upper-left block.
        let p0 = ComplexMatrix::from_real(2, 2, &[1.0, 0.0, 0.0, 0.0]).unwrap();
        let m = p0.kron(&gates::pauli_x());
        let expected = ComplexMatrix::from_real(
            4,
            4,
            &[
                0.0, 1.0, 0.0, 0.0, //
                1.0, 0.0, 0.0, 0.0, //
                0.0, 0.0, 0.0, 0.0, //
                0.0, 0.0, 0.0, 0.0,
            ],
        )
        .unwrap();
        assert!(m.max_abs_diff(&expected) < 1e-15);

        let zz = gates::pauli_z().kron(&gates::pauli_z());
        let expected = ComplexMatrix::from_diagonal(&[
            cx(1.0, 0.0),
            cx(-1.0, 0.0),
            cx(-1.0, 0.0),
            cx(1.0, 0.0),
        ]);
        assert!(zz.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn kron_is_associative() {
        let mut rng = testkit::rng(2);
        for _ in 0..20 {
            let a = testkit::random_matrix(&mut rng, 2, 2);
            let b = testkit::random_matrix(&mut rng, 2, 2);
            let c = testkit::random_matrix(&mut rng, 2, 2);
            let left = a.kron(&b).kron(&c);
            let right = a.kron(&b.kron(&c));
            assert!(left.max_abs_diff(&right) < 1e-12);
        }
    }

    #[test]
    fn partial_trace_of_product_state_factorizes() {
        let mut rng = testkit::rng(3);
        for _ in 0..20 {
            let a = testkit::random_psd(&mut rng, 2);
            let b = testkit::random_psd(&mut rng, 2);
            let joint = a.kron(&b);
            let reduced = joint.partial_trace(&[2, 2], &[0]).unwrap();
            let expected = a.scale(b.trace());
            assert!(reduced.max_abs_diff(&expected) < 1e-12);
        }
    }

    #[test]
    fn partial_trace_of_bell_state_is_maximally_mixed() {
        let h = cx(1.0 / 2.0_f64.sqrt(), 0.0);
        let bell = StateVector::new(2, vec![h, ZERO, ZERO, h]).unwrap();
        let reduced = bell
            .density_matrix()
            .partial_trace(&[2, 2], &[0])
            .unwrap();
        let half = ComplexMatrix::identity(2).scale(cx(0.5, 0.0));
        assert!(reduced.max_abs_diff(&half) < 1e-15);
    }

    #[test]
    fn partial_trace_preserves_trace() {
        let mut rng = testkit::rng(4);
        for _ in 0..100 {
            let m = testkit::random_psd(&mut rng, 8);
            let reduced = m.partial_trace(&[2, 2, 2], &[1]).unwrap();
            assert!((reduced.trace() - m.trace()).norm() < 1e-10);
        }
    }

    #[test]
    fn partial_trace_rejects_bad_dims() {
        let m = ComplexMatrix::identity(6);
        assert!(m.partial_trace(&[2, 2], &[0]).is_err());
    }

    #[test]
    fn hermitian_eig_known_values() {
        let (vals, _) = gates::pauli_z().hermitian_eig().unwrap();
        assert!((vals[0] + 1.0).abs() < 1e-12);
        assert!((vals[1] - 1.0).abs() < 1e-12);

        let half = ComplexMatrix::identity(2).scale(cx(0.5, 0.0));
        let (vals, _) = half.hermitian_eig().unwrap();
        assert!((vals[0] - 0.5).abs() < 1e-14 && (vals[1] - 0.5).abs() < 1e-14);
    }

    #[test]
    fn hermitian_eig_reconstructs_random_inputs() {
        let mut rng = testkit::rng(5);
        for trial in 0..100 {
            let n = 2 + trial % 7;
            let h = testkit::random_hermitian(&mut rng, n);
            let (vals, vecs) = h.hermitian_eig().unwrap();
            for w in vals.windows(2) {
                assert!(w[0] <= w[1] + 1e-12, "eigenvalues must ascend");
            }
            let d = ComplexMatrix::from_diagonal(
                &vals.iter().map(|&l| cx(l, 0.0)).collect::<Vec<_>>(),
            );
            let rebuilt = vecs.matmul(&d).unwrap().matmul(&vecs.dagger()).unwrap();
            assert!(
                rebuilt.max_abs_diff(&h) < 1e-9,
                "reconstruction residual too large at n={n}"
            );
            assert!(vecs.is_unitary(1e-9));
        }
    }

    #[test]
    fn hermitian_eig_rejects_non_hermitian() {
        let m = ComplexMatrix::from_real(2, 2, &[0.0, 1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(
            m.hermitian_eig(),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn psd_sqrt_known_and_random() {
        let id = ComplexMatrix::identity(3);
        assert!(id.psd_sqrt().unwrap().max_abs_diff(&id) < 1e-12);

        let m = ComplexMatrix::from_diagonal(&[cx(4.0, 0.0), cx(9.0, 0.0)]);
        let root = m.psd_sqrt().unwrap();
        let expected = ComplexMatrix::from_diagonal(&[cx(2.0, 0.0), cx(3.0, 0.0)]);
        assert!(root.max_abs_diff(&expected) < 1e-12);

        let mut rng = testkit::rng(6);
        for _ in 0..50 {
            let m = testkit::random_psd(&mut rng, 4);
            let root = m.psd_sqrt().unwrap();
            let squared = root.matmul(&root).unwrap();
            assert!(squared.max_abs_diff(&m) < 1e-8);
            // The root commutes with its square.
            let mr = m.matmul(&root).unwrap();
            let rm = root.matmul(&m).unwrap();
            assert!(mr.max_abs_diff(&rm) < 1e-8);
        }
    }

    #[test]
    fn psd_sqrt_rejects_negative_matrix() {
        let m = ComplexMatrix::from_diagonal(&[cx(1.0, 0.0), cx(-0.5, 0.0)]);
        assert!(matches!(m.psd_sqrt(), Err(Error::NotPositive { .. })));
    }

    #[test]
    fn complete_unitary_contract() {
        let e0 = vec![ONE, ZERO, ZERO, ZERO];
        let u = complete_unitary(&e0).unwrap();
        assert!(u.is_unitary(1e-12));
        for i in 0..4 {
            assert!((u.get(i, 0) - e0[i]).norm() < 1e-15);
        }

        let e1 = vec![ZERO, ONE, ZERO, ZERO];
        let u = complete_unitary(&e1).unwrap();
        assert!(u.is_unitary(1e-12));
        assert!((u.get(1, 0) - ONE).norm() < 1e-15);

        let mut rng = testkit::rng(7);
        for _ in 0..200 {
            let col = testkit::random_unit_vector(&mut rng, 4);
            let u = complete_unitary(&col).unwrap();
            assert!(
                u.unitarity_residual() < 1e-10,
                "unitarity residual {}",
                u.unitarity_residual()
            );
            for i in 0..4 {
                assert_eq!(u.get(i, 0), col[i], "first column must match exactly");
            }
        }
    }

    #[test]
    fn complete_unitary_rejects_unnormalized_input() {
        let col = vec![cx(2.0, 0.0), ZERO];
        assert!(matches!(
            complete_unitary(&col),
            Err(Error::NotNormalized(_))
        ));
    }

    #[test]
    fn state_vector_basics() {
        let s = StateVector::basis(2, 3);
        assert_eq!(s.dim(), 4);
        assert!((s.norm() - 1.0).abs() < 1e-15);

        let plus = StateVector::plus();
        let rho = plus.density_matrix();
        assert!((rho.get(0, 1).re - 0.5).abs() < 1e-15);

        let from_bloch = StateVector::from_bloch([1.0, 0.0, 0.0]).unwrap();
        assert!((from_bloch.inner(&plus).norm() - 1.0).abs() < 1e-12);

        assert!(StateVector::new(1, vec![ONE, ONE]).is_err());
    }

    #[test]
    fn tensor_orders_high_bits_first() {
        let zero = StateVector::basis(1, 0);
        let one = StateVector::basis(1, 1);
        let s = zero.tensor(&one);
        assert!((s.amplitudes()[1] - ONE).norm() < 1e-15, "|0⟩⊗|1⟩ = |01⟩");
    }
}
