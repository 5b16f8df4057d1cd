//! Hilbert-space operators for the dispersively coupled qudit-qubit system:
//! ladder operators, static and control Hamiltonians, SNAP target unitaries,
//! and the trace-fidelity metric.
//!
//! Conventions: the product space is ordered qudit ⊗ qubit, so the state
//! |k⟩_qudit ⊗ |m⟩_qubit sits at index `k * qubit_levels + m`. Energies are
//! angular frequencies in rad/ns and time is in ns.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::TAU;

use crate::error::{Error, Result};

/// Dense square complex matrix used for operators and unitaries.
pub type ComplexOperator = DMatrix<Complex64>;

/// Physical constants of the qudit-qubit system.
///
/// `chi_mhz` and `xi_mhz` are quoted in MHz as linear frequencies; when
/// `two_pi_units` is set (the default) they are converted to angular
/// frequency with a 2π factor, giving rad/ns internally.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemSpec {
    /// Number of qudit logical levels.
    pub d: usize,
    /// Ancilla qubit truncation (number of levels kept).
    pub qubit_levels: usize,
    /// Dispersive coupling strength in MHz.
    pub chi_mhz: f64,
    /// Qubit nonlinearity in MHz.
    pub xi_mhz: f64,
    /// Whether chi/xi are linear frequencies needing the 2π factor.
    pub two_pi_units: bool,
}

impl Default for SystemSpec {
    fn default() -> Self {
        SystemSpec {
            d: 5,
            qubit_levels: 3,
            chi_mhz: 5.0,
            xi_mhz: 200.0,
            two_pi_units: true,
        }
    }
}

impl SystemSpec {
    pub fn validate(&self) -> Result<()> {
        if self.d < 2 {
            return Err(Error::invalid_dimension(format!(
                "qudit needs at least 2 levels, got {}",
                self.d
            )));
        }
        if self.qubit_levels < 2 {
            return Err(Error::invalid_dimension(format!(
                "qubit truncation needs at least 2 levels, got {}",
                self.qubit_levels
            )));
        }
        if !(self.chi_mhz > 0.0) || !(self.xi_mhz > 0.0) {
            return Err(Error::invalid_argument(
                "chi and xi must be positive".to_string(),
            ));
        }
        Ok(())
    }

    /// Total dimension of the product space.
    pub fn dim(&self) -> usize {
        self.d * self.qubit_levels
    }

    /// Dispersive coupling as angular frequency in rad/ns.
    pub fn chi_ang(&self) -> f64 {
        to_angular(self.chi_mhz, self.two_pi_units)
    }

    /// Qubit nonlinearity as angular frequency in rad/ns.
    pub fn xi_ang(&self) -> f64 {
        to_angular(self.xi_mhz, self.two_pi_units)
    }
}

/// MHz → rad/ns (1 MHz = 1e-3 cycles/ns), optionally with the 2π factor.
fn to_angular(mhz: f64, two_pi: bool) -> f64 {
    let f = mhz * 1e-3;
    if two_pi {
        TAU * f
    } else {
        f
    }
}

/// Target SNAP gate: phase `alpha` on qudit level `n`, identity elsewhere.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SnapSpec {
    /// Phase angle in radians, in (−π, π].
    pub alpha: f64,
    /// Target level index (0-based).
    pub n: usize,
}

impl SnapSpec {
    pub fn new(alpha: f64, n: usize) -> Self {
        SnapSpec { alpha, n }
    }

    pub fn validate(&self, d: usize) -> Result<()> {
        if self.n >= d {
            return Err(Error::invalid_dimension(format!(
                "SNAP level index {} out of range for d = {}",
                self.n, d
            )));
        }
        if !self.alpha.is_finite() {
            return Err(Error::NonFinite("SNAP phase angle".to_string()));
        }
        Ok(())
    }

    /// Diagonal phases e^{jα δ_{kn}} of the target on the qudit space.
    pub fn phases(&self, d: usize) -> Vec<Complex64> {
        (0..d)
            .map(|k| {
                if k == self.n {
                    Complex64::from_polar(1.0, self.alpha)
                } else {
                    Complex64::new(1.0, 0.0)
                }
            })
            .collect()
    }
}

/// Annihilation operator on a `levels`-dimensional Fock space:
/// entry (k, k+1) = √(k+1).
pub fn annihilation(levels: usize) -> Result<ComplexOperator> {
    if levels < 2 {
        return Err(Error::invalid_dimension(format!(
            "annihilation operator needs at least 2 levels, got {levels}"
        )));
    }
    let mut a = DMatrix::zeros(levels, levels);
    for k in 0..levels - 1 {
        a[(k, k + 1)] = Complex64::new(((k + 1) as f64).sqrt(), 0.0);
    }
    Ok(a)
}

/// Number operator a†a = diag(0, 1, ..., levels−1).
pub fn number_operator(levels: usize) -> Result<ComplexOperator> {
    if levels < 2 {
        return Err(Error::invalid_dimension(format!(
            "number operator needs at least 2 levels, got {levels}"
        )));
    }
    Ok(DMatrix::from_fn(levels, levels, |i, j| {
        if i == j {
            Complex64::new(i as f64, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    }))
}

/// Static Hamiltonian H₀ = −χ a†a ⊗ b†b − ξ I ⊗ (b†)²b² in rad/ns.
///
/// Both terms are diagonal in the Fock basis, so the matrix is diagonal:
/// the entry for qudit level k, qubit level m is −χ·k·m − ξ·m(m−1).
pub fn static_hamiltonian(sys: &SystemSpec) -> Result<ComplexOperator> {
    sys.validate()?;
    let diag = static_diagonal(sys);
    Ok(DMatrix::from_diagonal(&DVector::from_iterator(
        diag.len(),
        diag.iter().map(|&x| Complex64::new(x, 0.0)),
    )))
}

/// Diagonal of H₀ over the product space, ordered qudit-major.
pub(crate) fn static_diagonal(sys: &SystemSpec) -> Vec<f64> {
    let chi = sys.chi_ang();
    let xi = sys.xi_ang();
    let q = sys.qubit_levels;
    let mut diag = Vec::with_capacity(sys.dim());
    for k in 0..sys.d {
        for m in 0..q {
            let m = m as f64;
            diag.push(-chi * k as f64 * m - xi * m * (m - 1.0));
        }
    }
    diag
}

/// Qubit-local drive quadrature operators (b + b†) and j(b − b†).
pub(crate) fn qubit_quadratures(qubit_levels: usize) -> Result<(ComplexOperator, ComplexOperator)> {
    let b = annihilation(qubit_levels)?;
    let bdag = b.adjoint();
    let x = &b + &bdag;
    let y = (&b - &bdag).map(|z| z * Complex64::new(0.0, 1.0));
    Ok((x, y))
}

/// Control operators on the full space: Bx = I ⊗ (b + b†), By = I ⊗ j(b − b†).
///
/// The drive couples to the qubit only; the time-dependent Hamiltonian is
/// H(t) = H₀ + I(t)·Bx + Q(t)·By.
pub fn control_operators(sys: &SystemSpec) -> Result<(ComplexOperator, ComplexOperator)> {
    sys.validate()?;
    let (x, y) = qubit_quadratures(sys.qubit_levels)?;
    let id = DMatrix::<Complex64>::identity(sys.d, sys.d);
    Ok((id.kronecker(&x), id.kronecker(&y)))
}

/// SNAP(α, n) as a d×d diagonal unitary: entry (n, n) = e^{jα}, others 1.
pub fn snap_unitary(spec: &SnapSpec, d: usize) -> Result<ComplexOperator> {
    spec.validate(d)?;
    let phases = spec.phases(d);
    Ok(DMatrix::from_diagonal(&DVector::from_vec(phases)))
}

/// The SNAP target embedded in the product space: SNAP(α, n) ⊗ I_qubit.
pub fn embedded_snap(spec: &SnapSpec, sys: &SystemSpec) -> Result<ComplexOperator> {
    sys.validate()?;
    let v = snap_unitary(spec, sys.d)?;
    let id = DMatrix::<Complex64>::identity(sys.qubit_levels, sys.qubit_levels);
    Ok(v.kronecker(&id))
}

/// Trace fidelity of `u` against the embedded SNAP target:
/// f = |Tr(Π V† U Π)|² / d², with Π projecting onto the qudit ⊗ |0⟩_qubit
/// subspace. Global-phase invariant and bounded in [0, 1].
pub fn trace_fidelity(u: &ComplexOperator, spec: &SnapSpec, sys: &SystemSpec) -> Result<f64> {
    sys.validate()?;
    spec.validate(sys.d)?;
    let dim = sys.dim();
    if u.nrows() != dim || u.ncols() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: u.nrows(),
        });
    }
    let q = sys.qubit_levels;
    let phases = spec.phases(sys.d);
    let mut overlap = Complex64::new(0.0, 0.0);
    for k in 0..sys.d {
        let idx = k * q;
        overlap += phases[k].conj() * u[(idx, idx)];
    }
    Ok(overlap.norm_sqr() / (sys.d * sys.d) as f64)
}

/// Largest entry magnitude, used as the ‖·‖_max operator norm in checks.
pub fn max_entry_norm(m: &ComplexOperator) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// ‖U†U − I‖_max, zero for exactly unitary matrices.
pub fn unitarity_defect(u: &ComplexOperator) -> f64 {
    let n = u.nrows();
    let gram = u.adjoint() * u;
    let id = DMatrix::<Complex64>::identity(n, n);
    max_entry_norm(&(gram - id))
}
