//! Linear-combination-of-unitaries plans for the universal channel.
//!
//! Each Eq.-8-style Kraus operator is a combination of the unitaries
//! {I, Z, X, ZX}. The plan consists of a 4x4 preparation unitary V (only its
//! first column matters; the rest is a deterministic Householder completion),
//! a block-diagonal recombination unitary W = [W₁ 0; 0 W₂], and the derived
//! duality gates `L_j = Σ_i W_ji V_i0 U_i`. The original Kraus operators are
//! recovered as `K_j = X^(j mod 2) L_j`.
//!
//! The module also carries the generic decomposition of an arbitrary
//! contraction into a linear combination of four unitaries.

use crate::channel::{QubitChannel, UniversalParams};
use crate::error::{Error, Result};
use crate::matrix::{complete_unitary, cx, gates, Complex64, ComplexMatrix};

// ---------------------------------------------------------------------------
// LcuPlan
// ---------------------------------------------------------------------------

/// The unitary data realizing a universal channel as an LCU circuit.
#[derive(Debug, Clone)]
pub struct LcuPlan {
    /// U₀..U₄ = I, Z, I, Z, X.
    unitaries: [ComplexMatrix; 5],
    v: ComplexMatrix,
    w: ComplexMatrix,
    params: UniversalParams,
}

impl LcuPlan {
    pub fn unitaries(&self) -> &[ComplexMatrix; 5] {
        &self.unitaries
    }

    /// Ancilla preparation unitary.
    pub fn v(&self) -> &ComplexMatrix {
        &self.v
    }

    /// Ancilla recombination unitary, block-diagonal [W₁ 0; 0 W₂].
    pub fn w(&self) -> &ComplexMatrix {
        &self.w
    }

    pub fn params(&self) -> UniversalParams {
        self.params
    }
}

/// Build the LCU plan for the universal channel parameters.
///
/// Writing s = (β+α)/2 and h = (β-α)/2 for each pair, the V column and W
/// blocks are assembled from half-angle identities:
///
/// ```text
/// V_00 = √P |cos h₁|      W₁ = [ sgn(cos h₁)·cos s₁   -sgn(sin h₁)·sin s₁ ]
/// V_10 = √P |sin h₁|           [ sgn(cos h₁)·sin s₁    sgn(sin h₁)·cos s₁ ]
/// ```
///
/// which equal the quotient forms `(cos β + cos α)/√(2(1+cos(β-α)))` etc.
/// wherever those are defined, stay exactly orthogonal in the degenerate
/// limits (the 0/0 column at β = α becomes (-sin β, cos β)ᵀ), and make the
/// products `W_ji V_i0` reproduce the Kraus coefficients to machine
/// precision.
pub fn build_lcu(params: UniversalParams) -> Result<LcuPlan> {
    let UniversalParams {
        p,
        alpha1,
        beta1,
        alpha2,
        beta2,
    } = UniversalParams::new(params.p, params.alpha1, params.beta1, params.alpha2, params.beta2)?;

    let half1 = (beta1 - alpha1) / 2.0;
    let half2 = (beta2 - alpha2) / 2.0;
    let column = [
        p.sqrt() * half1.cos().abs(),
        p.sqrt() * half1.sin().abs(),
        (1.0 - p).sqrt() * half2.cos().abs(),
        (1.0 - p).sqrt() * half2.sin().abs(),
    ];
    let first_column: Vec<Complex64> = column.iter().map(|&c| cx(c, 0.0)).collect();
    let v = complete_unitary(&first_column)?;

    let w1 = w_block(alpha1, beta1);
    let w2 = w_block(alpha2, beta2);
    let mut w = ComplexMatrix::zeros(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            w.set(i, j, cx(w1[i][j], 0.0));
            w.set(i + 2, j + 2, cx(w2[i][j], 0.0));
        }
    }

    Ok(LcuPlan {
        unitaries: [
            ComplexMatrix::identity(2),
            gates::pauli_z(),
            ComplexMatrix::identity(2),
            gates::pauli_z(),
            gates::pauli_x(),
        ],
        v,
        w,
        params,
    })
}

/// One 2x2 recombination block in the exactly-orthogonal half-angle form.
fn w_block(alpha: f64, beta: f64) -> [[f64; 2]; 2] {
    let s = (beta + alpha) / 2.0;
    let h = (beta - alpha) / 2.0;
    let sign_c = if h.cos() < 0.0 { -1.0 } else { 1.0 };
    let sign_s = if h.sin() < 0.0 { -1.0 } else { 1.0 };
    [
        [sign_c * s.cos(), -sign_s * s.sin()],
        [sign_c * s.sin(), sign_s * s.cos()],
    ]
}

/// Duality gates `L_j = Σ_i W_ji V_i0 U_i` with U_i ∈ {I, Z, I, Z}.
pub fn duality_gates(plan: &LcuPlan) -> [ComplexMatrix; 4] {
    let mut gates_out = [
        ComplexMatrix::zeros(2, 2),
        ComplexMatrix::zeros(2, 2),
        ComplexMatrix::zeros(2, 2),
        ComplexMatrix::zeros(2, 2),
    ];
    for (j, l) in gates_out.iter_mut().enumerate() {
        for i in 0..4 {
            let coeff = plan.w.get(j, i) * plan.v.get(i, 0);
            if coeff.norm() == 0.0 {
                continue;
            }
            *l = l.add(&plan.unitaries[i].scale(coeff)).unwrap();
        }
    }
    gates_out
}

/// Rebuild the channel from the plan: `K_j = X^(j mod 2) L_j`.
///
/// Even-index duality gates already equal the diagonal Kraus operators; odd
/// ones need a left basis change by X, which in the circuit is the
/// controlled-X applied after W on the odd ancilla branches.
pub fn reconstruct_kraus(plan: &LcuPlan) -> Result<QubitChannel> {
    let x = gates::pauli_x();
    let kraus: Vec<ComplexMatrix> = duality_gates(plan)
        .iter()
        .enumerate()
        .map(|(j, l)| {
            if j % 2 == 1 {
                x.matmul(l).unwrap()
            } else {
                l.clone()
            }
        })
        .collect();
    QubitChannel::from_kraus(kraus, "lcu-reconstructed")
}

// ---------------------------------------------------------------------------
// Four-unitary decomposition of an arbitrary matrix
// ---------------------------------------------------------------------------

/// A matrix expressed as `(U₁ + U₂)/2 + i (U₃ + U₄)/2`, optionally after
/// rescaling the source to a contraction.
#[derive(Debug, Clone)]
pub struct FourUnitaryDecomposition {
    unitaries: [ComplexMatrix; 4],
    source: ComplexMatrix,
    /// Factor by which the source was divided before decomposing (1 when the
    /// source was already a contraction).
    scale: f64,
}

impl FourUnitaryDecomposition {
    pub fn unitaries(&self) -> &[ComplexMatrix; 4] {
        &self.unitaries
    }

    /// Fixed combination coefficients (1/2, 1/2, i/2, i/2).
    pub fn coefficients(&self) -> [Complex64; 4] {
        [cx(0.5, 0.0), cx(0.5, 0.0), cx(0.0, 0.5), cx(0.0, 0.5)]
    }

    pub fn source(&self) -> &ComplexMatrix {
        &self.source
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// `scale · [(U₁ + U₂)/2 + i (U₃ + U₄)/2]`, which reproduces the source.
    pub fn recombine(&self) -> ComplexMatrix {
        let [u1, u2, u3, u4] = &self.unitaries;
        let real_part = u1.add(u2).unwrap().scale(cx(0.5, 0.0));
        let imag_part = u3.add(u4).unwrap().scale(cx(0.0, 0.5));
        real_part
            .add(&imag_part)
            .unwrap()
            .scale(cx(self.scale, 0.0))
    }
}

/// Split a matrix into Hermitian parts `A = B + iC` and decompose each as a
/// sum of two unitaries `B = (U₁ + U₂)/2` with `U₁,₂ = B ± i√(I - B²)`.
///
/// The input must be a contraction (operator norm <= 1); larger inputs are
/// accepted only with `allow_rescale`, in which case the recorded scale
/// restores the original on recombination.
pub fn decompose_four_unitaries(
    a: &ComplexMatrix,
    allow_rescale: bool,
) -> Result<FourUnitaryDecomposition> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(
            "four-unitary decomposition needs a square matrix".into(),
        ));
    }
    let norm = a.operator_norm();
    let (scale, contraction) = if norm <= 1.0 + 1e-12 {
        (1.0, a.clone())
    } else if allow_rescale {
        (norm, a.scale(cx(1.0 / norm, 0.0)))
    } else {
        return Err(Error::InvalidParameter(format!(
            "operator norm {norm:.6} exceeds 1; pass allow_rescale to proceed"
        )));
    };

    let half = cx(0.5, 0.0);
    let b = contraction.add(&contraction.dagger()).unwrap().scale(half);
    // Anti-Hermitian part, taken so that A = B + iC.
    let c = contraction
        .sub(&contraction.dagger())
        .unwrap()
        .scale(cx(0.0, -0.5));

    let pair = |h: &ComplexMatrix| -> Result<(ComplexMatrix, ComplexMatrix)> {
        let n = h.rows();
        let h2 = h.matmul(h)?;
        let defect = ComplexMatrix::identity(n).sub(&h2)?;
        let root = defect.psd_sqrt()?;
        let i_root = root.scale(cx(0.0, 1.0));
        Ok((h.add(&i_root)?, h.sub(&i_root)?))
    };
    let (u1, u2) = pair(&b)?;
    let (u3, u4) = pair(&c)?;

    Ok(FourUnitaryDecomposition {
        unitaries: [u1, u2, u3, u4],
        source: a.clone(),
        scale,
    })
}

// ---------------------------------------------------------------------------
// Tests
// ---------------------------------------------------------------------------
