//! Kraus-operator channel representation and the qubit channel families.
//!
//! The universal family realizes an arbitrary single-qubit channel from four
//! Kraus operators, as a probability-P convex combination of two two-Kraus
//! quasiextreme maps parameterized by angle pairs (α₁, β₁) and (α₂, β₂):
//!
//! ```text
//! K₀ = √P      diag(cos β₁, cos α₁)     K₁ = √P      [[0, sin α₁], [sin β₁, 0]]
//! K₂ = √(1-P)  diag(cos β₂, cos α₂)     K₃ = √(1-P)  [[0, sin α₂], [sin β₂, 0]]
//! ```
//!
//! Generalized amplitude damping and phase damping are instances; the module
//! also extracts the 4x4 Pauli transfer matrix and applies channels to plain
//! and reference-extended density matrices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{cx, gates, ComplexMatrix};

/// Density-matrix validity tolerance for externally supplied states.
pub const DENSITY_TOL_INPUT: f64 = 1e-7;
/// Density-matrix validity tolerance for internally generated states.
pub const DENSITY_TOL_INTERNAL: f64 = 1e-9;

// ---------------------------------------------------------------------------
// Parameters and channel type
// ---------------------------------------------------------------------------

/// The five parameters of the universal four-Kraus channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UniversalParams {
    /// Mixing probability of the first quasiextreme map, in [0, 1].
    pub p: f64,
    pub alpha1: f64,
    pub beta1: f64,
    pub alpha2: f64,
    pub beta2: f64,
}

impl UniversalParams {
    pub fn new(p: f64, alpha1: f64, beta1: f64, alpha2: f64, beta2: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) || !p.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "mixing probability p must lie in [0, 1], got {p}"
            )));
        }
        Ok(Self {
            p,
            alpha1,
            beta1,
            alpha2,
            beta2,
        })
    }
}

/// A qubit channel as an ordered list of 2x2 Kraus operators.
///
/// Zero Kraus operators arising from parameter choices are retained rather
/// than pruned so that operator indices stay aligned with the two-ancilla
/// circuit branches.
#[derive(Debug, Clone)]
pub struct QubitChannel {
    kraus: Vec<ComplexMatrix>,
    params: Option<UniversalParams>,
    label: String,
}

/// Result of the completeness check `Σ K†K = I`.
#[derive(Debug, Clone, Copy)]
pub struct CptpReport {
    pub ok: bool,
    pub completeness_residual: f64,
}

impl QubitChannel {
    /// Build a channel from explicit Kraus operators.
    ///
    /// Requires 1..=4 operators of shape 2x2 satisfying the completeness
    /// condition within 1e-9.
    pub fn from_kraus(kraus: Vec<ComplexMatrix>, label: impl Into<String>) -> Result<Self> {
        if kraus.is_empty() || kraus.len() > 4 {
            return Err(Error::InvalidParameter(format!(
                "a qubit channel needs 1..=4 Kraus operators, got {}",
                kraus.len()
            )));
        }
        for k in &kraus {
            if k.rows() != 2 || k.cols() != 2 {
                return Err(Error::DimensionMismatch(format!(
                    "Kraus operators must be 2x2, got {}x{}",
                    k.rows(),
                    k.cols()
                )));
            }
        }
        let ch = Self {
            kraus,
            params: None,
            label: label.into(),
        };
        let report = ch.check_cptp(1e-9);
        if !report.ok {
            return Err(Error::InvalidParameter(format!(
                "Kraus operators violate completeness (residual {:.3e})",
                report.completeness_residual
            )));
        }
        Ok(ch)
    }

    /// The universal four-Kraus channel.
    pub fn from_universal_params(params: UniversalParams) -> Result<Self> {
        let UniversalParams {
            p,
            alpha1,
            beta1,
            alpha2,
            beta2,
        } = UniversalParams::new(params.p, params.alpha1, params.beta1, params.alpha2, params.beta2)?;
        let w1 = p.sqrt();
        let w2 = (1.0 - p).sqrt();
        let kraus = vec![
            scaled_diag(w1, beta1.cos(), alpha1.cos()),
            scaled_antidiag(w1, alpha1.sin(), beta1.sin()),
            scaled_diag(w2, beta2.cos(), alpha2.cos()),
            scaled_antidiag(w2, alpha2.sin(), beta2.sin()),
        ];
        Ok(Self {
            kraus,
            params: Some(params),
            label: "universal".into(),
        })
    }

    /// Two-Kraus quasiextreme channel `K₀ = diag(cos β, cos α)`,
    /// `K₁ = [[0, sin α], [sin β, 0]]`.
    pub fn quasiextreme(alpha: f64, beta: f64) -> Self {
        let kraus = vec![
            scaled_diag(1.0, beta.cos(), alpha.cos()),
            scaled_antidiag(1.0, alpha.sin(), beta.sin()),
        ];
        Self {
            kraus,
            params: Some(UniversalParams {
                p: 1.0,
                alpha1: alpha,
                beta1: beta,
                alpha2: 0.0,
                beta2: 0.0,
            }),
            label: "quasiextreme".into(),
        }
    }

    /// Identity channel.
    pub fn identity() -> Self {
        Self {
            kraus: vec![ComplexMatrix::identity(2)],
            params: None,
            label: "identity".into(),
        }
    }

    /// Generalized amplitude damping with damping rate `lambda` and
    /// environment-temperature parameter `p`.
    ///
    /// The first quasiextreme pair damps toward |0⟩ (β₁ = 0,
    /// α₁ = arccos √(1-λ)); the second is its |1⟩-damping mirror (α₂ = 0,
    /// β₂ = arccos √(1-λ)). `p = 1` is the zero-temperature damping channel
    /// and `p = 1/2` the infinite-temperature one.
    pub fn generalized_amplitude_damping(lambda: f64, p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&lambda) || !lambda.is_finite() {
            return Err(Error::InvalidParameter(format!(
                "damping rate lambda must lie in [0, 1], got {lambda}"
            )));
        }
        let theta = (1.0 - lambda).sqrt().acos();
        let mut ch = Self::from_universal_params(UniversalParams::new(p, theta, 0.0, 0.0, theta)?)?;
        ch.label = "gad".into();
        Ok(ch)
    }

    /// Phase damping with strengths `gamma1`, `gamma2` mixed by `p`:
    /// `K₀ = √p diag(1, √(1-γ₁))`, `K₁ = √p diag(0, √γ₁)` and the analogous
    /// pair weighted by `1-p`.
    pub fn phase_damping(gamma1: f64, gamma2: f64, p: f64) -> Result<Self> {
        for (name, v) in [("gamma1", gamma1), ("gamma2", gamma2), ("p", p)] {
            if !(0.0..=1.0).contains(&v) || !v.is_finite() {
                return Err(Error::InvalidParameter(format!(
                    "{name} must lie in [0, 1], got {v}"
                )));
            }
        }
        let w1 = p.sqrt();
        let w2 = (1.0 - p).sqrt();
        let kraus = vec![
            scaled_diag(w1, 1.0, (1.0 - gamma1).sqrt()),
            scaled_diag(w1, 0.0, gamma1.sqrt()),
            scaled_diag(w2, 1.0, (1.0 - gamma2).sqrt()),
            scaled_diag(w2, 0.0, gamma2.sqrt()),
        ];
        Ok(Self {
            kraus,
            params: None,
            label: "pd".into(),
        })
    }

    /// Unital family with sin β = sin α in both pairs (α₁ = β₁, α₂ = β₂).
    pub fn unital_aligned(beta1: f64, beta2: f64, p: f64) -> Result<Self> {
        let mut ch = Self::from_universal_params(UniversalParams::new(p, beta1, beta1, beta2, beta2)?)?;
        ch.label = "unital_aligned".into();
        Ok(ch)
    }

    /// Unital family with sin β₁ = sin α₁ and sin β₂ = -sin α₂ (α₂ = -β₂).
    pub fn unital_anti(beta1: f64, beta2: f64, p: f64) -> Result<Self> {
        let mut ch = Self::from_universal_params(UniversalParams::new(p, beta1, beta1, -beta2, beta2)?)?;
        ch.label = "unital_anti".into();
        Ok(ch)
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    pub fn params(&self) -> Option<UniversalParams> {
        self.params
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Completeness residual `max |Σ K†K - I|` and pass/fail at `tol`.
    pub fn check_cptp(&self, tol: f64) -> CptpReport {
        let mut sum = ComplexMatrix::zeros(2, 2);
        for k in &self.kraus {
            sum = sum.add(&k.dagger().matmul(k).unwrap()).unwrap();
        }
        let completeness_residual = sum.max_abs_diff(&ComplexMatrix::identity(2));
        CptpReport {
            ok: completeness_residual < tol,
            completeness_residual,
        }
    }

    /// Kraus sum `Σ K m K†` on an arbitrary operator (no validity checks).
    pub fn apply_to_operator(&self, m: &ComplexMatrix) -> ComplexMatrix {
        let mut out = ComplexMatrix::zeros(2, 2);
        for k in &self.kraus {
            let term = k.matmul(m).unwrap().matmul(&k.dagger()).unwrap();
            out = out.add(&term).unwrap();
        }
        out
    }

    /// Apply the channel to a density matrix.
    pub fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        validate_density(rho, 2, DENSITY_TOL_INPUT)?;
        Ok(self.apply_to_operator(rho))
    }

    /// Apply `Φ ⊗ I` to a two-qubit density matrix; the channel acts on the
    /// first (high-bit) qubit.
    pub fn apply_extended(&self, rho_wr: &ComplexMatrix) -> Result<ComplexMatrix> {
        validate_density(rho_wr, 4, DENSITY_TOL_INPUT)?;
        Ok(self.apply_extended_to_operator(rho_wr))
    }

    /// `Σ (K ⊗ I) m (K ⊗ I)†` without validity checks.
    pub fn apply_extended_to_operator(&self, m: &ComplexMatrix) -> ComplexMatrix {
        let id = ComplexMatrix::identity(2);
        let mut out = ComplexMatrix::zeros(4, 4);
        for k in &self.kraus {
            let ext = k.kron(&id);
            let term = ext.matmul(m).unwrap().matmul(&ext.dagger()).unwrap();
            out = out.add(&term).unwrap();
        }
        out
    }

    /// Choi matrix `(Φ ⊗ I)(|Φ⁺⟩⟨Φ⁺|)`; PSD iff the channel is completely
    /// positive.
    pub fn choi_matrix(&self) -> ComplexMatrix {
        self.apply_extended_to_operator(&bell_state_density())
    }

    /// Pauli transfer matrix `T_ab = Tr(σ_a Φ(σ_b)) / 2`.
    pub fn pauli_transfer(&self) -> Result<TransferMatrix> {
        let report = self.check_cptp(1e-6);
        if !report.ok {
            return Err(Error::InvalidParameter(format!(
                "transfer matrix requires a trace-preserving channel (residual {:.3e})",
                report.completeness_residual
            )));
        }
        let mut entries = [[0.0f64; 4]; 4];
        for b in 0..4 {
            let mapped = self.apply_to_operator(&gates::pauli(b));
            for (a, row) in entries.iter_mut().enumerate() {
                let value = gates::pauli(a).matmul(&mapped).unwrap().trace() * cx(0.5, 0.0);
                if value.im.abs() > 1e-9 {
                    return Err(Error::InvalidParameter(format!(
                        "transfer matrix entry ({a},{b}) has imaginary part {:.3e}",
                        value.im
                    )));
                }
                row[b] = value.re;
            }
        }
        Ok(TransferMatrix { entries })
    }

    /// Unitary conjugation `ρ ↦ U_B Φ(U_A ρ U_A†) U_B†`, i.e. Kraus
    /// operators `U_B K_j U_A`.
    pub fn conjugate(&self, u_a: &ComplexMatrix, u_b: &ComplexMatrix) -> Result<QubitChannel> {
        for u in [u_a, u_b] {
            if u.rows() != 2 || u.cols() != 2 {
                return Err(Error::DimensionMismatch("conjugators must be 2x2".into()));
            }
            if !u.is_unitary(1e-10) {
                return Err(Error::NotUnitary {
                    residual: u.unitarity_residual(),
                });
            }
        }
        let kraus = self
            .kraus
            .iter()
            .map(|k| u_b.matmul(k).unwrap().matmul(u_a).unwrap())
            .collect();
        Ok(QubitChannel {
            kraus,
            params: None,
            label: format!("{}+conjugated", self.label),
        })
    }
}

fn scaled_diag(weight: f64, top: f64, bottom: f64) -> ComplexMatrix {
    ComplexMatrix::from_real(2, 2, &[weight * top, 0.0, 0.0, weight * bottom]).unwrap()
}

fn scaled_antidiag(weight: f64, top_right: f64, bottom_left: f64) -> ComplexMatrix {
    ComplexMatrix::from_real(2, 2, &[0.0, weight * top_right, weight * bottom_left, 0.0]).unwrap()
}

// ---------------------------------------------------------------------------
// Transfer matrix and density helpers
// ---------------------------------------------------------------------------

/// The 4x4 real Pauli transfer matrix of a qubit channel.
///
/// Row and column 0 are the identity component; the channel maps the Bloch
/// vector as `r ↦ t + T r` with shift `t` and 3x3 block `T`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferMatrix {
    entries: [[f64; 4]; 4],
}

impl TransferMatrix {
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row][col]
    }

    pub fn entries(&self) -> &[[f64; 4]; 4] {
        &self.entries
    }

    /// Bloch shift vector `t`.
    pub fn shift(&self) -> [f64; 3] {
        [self.entries[1][0], self.entries[2][0], self.entries[3][0]]
    }

    /// 3x3 Bloch block `T`.
    pub fn block(&self) -> [[f64; 3]; 3] {
        let mut b = [[0.0; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                b[i][j] = self.entries[i + 1][j + 1];
            }
        }
        b
    }

    pub fn max_abs_diff(&self, other: &TransferMatrix) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..4 {
            for j in 0..4 {
                worst = worst.max((self.entries[i][j] - other.entries[i][j]).abs());
            }
        }
        worst
    }

    /// Composition: the transfer matrix of `self ∘ other`.
    pub fn compose(&self, other: &TransferMatrix) -> TransferMatrix {
        let mut entries = [[0.0f64; 4]; 4];
        for (i, row) in entries.iter_mut().enumerate() {
            for j in 0..4 {
                row[j] = (0..4).map(|k| self.entries[i][k] * other.entries[k][j]).sum();
            }
        }
        TransferMatrix { entries }
    }

    pub fn identity() -> TransferMatrix {
        let mut entries = [[0.0f64; 4]; 4];
        for (i, row) in entries.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        TransferMatrix { entries }
    }
}

/// Check that `m` is a valid `dim`-dimensional density matrix.
pub fn validate_density(m: &ComplexMatrix, dim: usize, tol: f64) -> Result<()> {
    if m.rows() != dim || m.cols() != dim {
        return Err(Error::InvalidDensity(format!(
            "expected {dim}x{dim}, got {}x{}",
            m.rows(),
            m.cols()
        )));
    }
    let herm = m.hermiticity_residual();
    if herm > tol {
        return Err(Error::InvalidDensity(format!(
            "not Hermitian (residual {herm:.3e})"
        )));
    }
    let trace = m.trace();
    if (trace.re - 1.0).abs() > tol.max(1e-9) || trace.im.abs() > tol {
        return Err(Error::InvalidDensity(format!(
            "trace is {trace}, expected 1"
        )));
    }
    let (eigenvalues, _) = m.hermitian_eig()?;
    if let Some(&min) = eigenvalues.first() {
        if min < -tol.max(1e-9) {
            return Err(Error::InvalidDensity(format!(
                "negative eigenvalue {min:.3e}"
            )));
        }
    }
    Ok(())
}

/// Density matrix `(I + r·σ)/2` for a Bloch vector with |r| <= 1.
pub fn density_from_bloch(r: [f64; 3]) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(2, 2);
    m.set(0, 0, cx((1.0 + r[2]) / 2.0, 0.0));
    m.set(0, 1, cx(r[0] / 2.0, -r[1] / 2.0));
    m.set(1, 0, cx(r[0] / 2.0, r[1] / 2.0));
    m.set(1, 1, cx((1.0 - r[2]) / 2.0, 0.0));
    m
}

/// Bloch vector of a 2x2 density matrix.
pub fn bloch_from_density(rho: &ComplexMatrix) -> [f64; 3] {
    [
        gates::pauli_x().matmul(rho).unwrap().trace().re,
        gates::pauli_y().matmul(rho).unwrap().trace().re,
        gates::pauli_z().matmul(rho).unwrap().trace().re,
    ]
}

/// The maximally mixed qubit state I/2.
pub fn maximally_mixed() -> ComplexMatrix {
    ComplexMatrix::identity(2).scale(cx(0.5, 0.0))
}

/// Density matrix of the Bell state (|00⟩ + |11⟩)/√2.
pub fn bell_state_density() -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(4, 4);
    for &i in &[0usize, 3] {
        for &j in &[0usize, 3] {
            m.set(i, j, cx(0.5, 0.0));
        }
    }
    m
}

// ---------------------------------------------------------------------------
// JSON channel spec
// ---------------------------------------------------------------------------

/// Parsed form of the JSON channel spec consumed by the CLI and compiler.
#[derive(Debug, Clone)]
pub enum ChannelSpec {
    Universal(UniversalParams),
    Quasiextreme { alpha: f64, beta: f64 },
    Gad { lambda: f64, p: f64 },
    Pd { gamma1: f64, gamma2: f64, p: f64 },
    Kraus(Vec<ComplexMatrix>),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    family: String,
    #[serde(default)]
    params: Option<serde_json::Value>,
    #[serde(default)]
    kraus: Option<Vec<Vec<Vec<[f64; 2]>>>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct QuasiextremeParams {
    alpha: f64,
    beta: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct GadParams {
    lambda: f64,
    p: f64,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PdParams {
    gamma1: f64,
    gamma2: f64,
    p: f64,
}

impl ChannelSpec {
    /// Parse a channel spec from JSON text.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: RawSpec = serde_json::from_str(text)
            .map_err(|e| Error::ChannelSpec(format!("invalid JSON: {e}")))?;
        let params = |value: &Option<serde_json::Value>| -> Result<serde_json::Value> {
            value.clone().ok_or_else(|| {
                Error::ChannelSpec(format!("family \"{}\" requires a \"params\" object", raw.family))
            })
        };
        match raw.family.as_str() {
            "universal" => {
                let p: UniversalParams = serde_json::from_value(params(&raw.params)?)
                    .map_err(|e| Error::ChannelSpec(format!("bad universal params: {e}")))?;
                Ok(ChannelSpec::Universal(p))
            }
            "quasiextreme" => {
                let p: QuasiextremeParams = serde_json::from_value(params(&raw.params)?)
                    .map_err(|e| Error::ChannelSpec(format!("bad quasiextreme params: {e}")))?;
                Ok(ChannelSpec::Quasiextreme {
                    alpha: p.alpha,
                    beta: p.beta,
                })
            }
            "gad" => {
                let p: GadParams = serde_json::from_value(params(&raw.params)?)
                    .map_err(|e| Error::ChannelSpec(format!("bad gad params: {e}")))?;
                Ok(ChannelSpec::Gad {
                    lambda: p.lambda,
                    p: p.p,
                })
            }
            "pd" => {
                let p: PdParams = serde_json::from_value(params(&raw.params)?)
                    .map_err(|e| Error::ChannelSpec(format!("bad pd params: {e}")))?;
                Ok(ChannelSpec::Pd {
                    gamma1: p.gamma1,
                    gamma2: p.gamma2,
                    p: p.p,
                })
            }
            "kraus" => {
                let rows = raw.kraus.ok_or_else(|| {
                    Error::ChannelSpec("family \"kraus\" requires a \"kraus\" array".into())
                })?;
                let mut kraus = Vec::new();
                for m in &rows {
                    if m.len() != 2 || m.iter().any(|row| row.len() != 2) {
                        return Err(Error::ChannelSpec(
                            "each Kraus matrix must be 2x2 with [re, im] entries".into(),
                        ));
                    }
                    let entries = m
                        .iter()
                        .flatten()
                        .map(|&[re, im]| cx(re, im))
                        .collect();
                    kraus.push(ComplexMatrix::new(2, 2, entries)?);
                }
                Ok(ChannelSpec::Kraus(kraus))
            }
            other => Err(Error::ChannelSpec(format!(
                "unknown family \"{other}\" (expected universal, quasiextreme, gad, pd, or kraus)"
            ))),
        }
    }

    /// Construct the channel this spec describes.
    pub fn build(&self) -> Result<QubitChannel> {
        match self {
            ChannelSpec::Universal(p) => QubitChannel::from_universal_params(*p),
            ChannelSpec::Quasiextreme { alpha, beta } => {
                Ok(QubitChannel::quasiextreme(*alpha, *beta))
            }
            ChannelSpec::Gad { lambda, p } => {
                QubitChannel::generalized_amplitude_damping(*lambda, *p)
            }
            ChannelSpec::Pd { gamma1, gamma2, p } => {
                QubitChannel::phase_damping(*gamma1, *gamma2, *p)
            }
            ChannelSpec::Kraus(kraus) => QubitChannel::from_kraus(kraus.clone(), "kraus"),
        }
    }

    /// Universal-form parameters when the spec's Kraus set is exactly an
    /// instance of the four-Kraus family (required by the circuit pipeline).
    pub fn universal_params(&self) -> Option<UniversalParams> {
        match self {
            ChannelSpec::Universal(p) => Some(*p),
            ChannelSpec::Quasiextreme { alpha, beta } => Some(UniversalParams {
                p: 1.0,
                alpha1: *alpha,
                beta1: *beta,
                alpha2: 0.0,
                beta2: 0.0,
            }),
            ChannelSpec::Gad { lambda, p } => {
                let theta = (1.0 - lambda).sqrt().acos();
                Some(UniversalParams {
                    p: *p,
                    alpha1: theta,
                    beta1: 0.0,
                    alpha2: 0.0,
                    beta2: theta,
                })
            }
            ChannelSpec::Pd { .. } | ChannelSpec::Kraus(_) => None,
        }
    }
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
