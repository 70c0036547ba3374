//! Communication protocols built on the Hawking channel.
//!
//! In the superposition protocol the Bell pair passes through channel 1 or
//! channel 2 depending on a control qubit prepared in `|+>`. Once the mass
//! register is reset, the Alice-Rob-control state is
//!
//! ```text
//! rho_ARc = 1/2 sum_ij xi_ij(rho_psi) ⊗ |i><j|_c
//! ```
//!
//! and Rob measures the control in the `{|+>, |->}` basis. Each outcome acts
//! on the pair with Kraus operators `(M_1n ± M_2n) / 2`, which is how
//! [`measure_control`] computes the branches: the minus branch stays positive
//! semidefinite even when the two channels nearly coincide.

use core::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::channel::{cross_term, kraus_pair, ChannelParams, KrausPair};
use crate::error::{Error, Result};
use crate::linop::{tensor, ComplexMatrix, DensityMatrix, C64};
use crate::tol;

/// Two Hawking channels in equal-amplitude superposition.
///
/// The relative phase between the two branch unitaries is zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProtocolConfig {
    pub params1: ChannelParams,
    pub params2: ChannelParams,
}

impl ProtocolConfig {
    pub fn new(params1: ChannelParams, params2: ChannelParams) -> Self {
        Self { params1, params2 }
    }

    pub fn from_angles(r1: f64, r2: f64, phi1: f64, phi2: f64) -> Result<Self> {
        Ok(Self::new(
            ChannelParams::new(r1, phi1)?,
            ChannelParams::new(r2, phi2)?,
        ))
    }

    /// Same squeezing in both branches, phases `pi` and `0`.
    pub fn opposite_phases(r: f64) -> Result<Self> {
        Self::from_angles(r, r, PI, 0.0)
    }

    pub fn swapped(&self) -> Self {
        Self::new(self.params2, self.params1)
    }

    pub fn phase_difference(&self) -> f64 {
        self.params1.phi() - self.params2.phi()
    }

    fn kraus(&self) -> (KrausPair, KrausPair) {
        (kraus_pair(&self.params1), kraus_pair(&self.params2))
    }
}

/// Outcome of measuring the control qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ControlOutcome {
    Plus,
    Minus,
}

impl ControlOutcome {
    fn sign(self) -> f64 {
        match self {
            ControlOutcome::Plus => 1.0,
            ControlOutcome::Minus => -1.0,
        }
    }
}

/// Result of measuring the control in the `{|+>, |->}` basis.
#[derive(Debug, Clone, PartialEq)]
pub struct BranchStatistics {
    /// `A = 3 + cos r1 cos r2 + cos(phi1 - phi2) sin r1 sin r2`
    pub a_scalar: f64,
    /// `B = sin^2((phi1 - phi2)/2) sin r1 sin r2`
    pub b_scalar: f64,
    /// `C = 1 - cos r1 cos r2 - cos(phi1 - phi2) sin r1 sin r2`
    pub c_scalar: f64,
    pub p_plus: f64,
    pub p_minus: f64,
    pub rho_plus: DensityMatrix,
    /// `None` when the minus outcome cannot occur (`C` below
    /// [`tol::DEGENERATE_BRANCH`]).
    pub rho_minus: Option<DensityMatrix>,
}

impl BranchStatistics {
    /// `p+ rho+ + p- rho-`, which must equal the classical mixture.
    pub fn recombined(&self) -> ComplexMatrix {
        let plus = self.rho_plus.matrix().scale_real(self.p_plus);
        match &self.rho_minus {
            Some(minus) => &plus + &minus.matrix().scale_real(self.p_minus),
            None => plus,
        }
    }

    /// `(probability, state)` for each outcome that can occur.
    pub fn branches(&self) -> impl Iterator<Item = (f64, &DensityMatrix)> {
        core::iter::once((self.p_plus, &self.rho_plus))
            .chain(self.rho_minus.as_ref().map(|m| (self.p_minus, m)))
    }
}

/// `(|00> + |11>) / sqrt 2` on Alice ⊗ Rob.
pub fn bell_state() -> DensityMatrix {
    let h = C64::new(FRAC_1_SQRT_2, 0.0);
    let zero = C64::new(0.0, 0.0);
    DensityMatrix::from_pure(&[h, zero, zero, h]).expect("Bell vector is normalizable")
}

/// The Bell pair after a single Hawking channel on Rob's side.
pub fn classical_scenario(p: &ChannelParams) -> Result<DensityMatrix> {
    crate::channel::apply_channel(&bell_state(), &kraus_pair(p))
}

/// `xi_ij(rho_psi)` for `i, j` in `{1, 2}`, indexed `[i-1][j-1]`.
fn cross_terms(cfg: &ProtocolConfig) -> Result<[[ComplexMatrix; 2]; 2]> {
    let rho = bell_state();
    let (k1, k2) = cfg.kraus();
    Ok([
        [cross_term(&rho, &k1, &k1)?, cross_term(&rho, &k1, &k2)?],
        [cross_term(&rho, &k2, &k1)?, cross_term(&rho, &k2, &k2)?],
    ])
}

/// `rho_ARc` on Alice ⊗ Rob ⊗ control (8x8).
pub fn superposed_state(cfg: &ProtocolConfig) -> Result<DensityMatrix> {
    let xi = cross_terms(cfg)?;
    let mut out = ComplexMatrix::zeros(8, 8);
    for (i, row) in xi.iter().enumerate() {
        for (j, block) in row.iter().enumerate() {
            let mut ket_bra = ComplexMatrix::zeros(2, 2);
            ket_bra[(i, j)] = C64::new(0.5, 0.0);
            out = &out + &tensor(block, &ket_bra);
        }
    }
    DensityMatrix::new(out)
}

/// `<±|rho|±>` on the last (control) qubit of an 8x8 state, unnormalized.
pub fn project_control(state: &DensityMatrix, outcome: ControlOutcome) -> Result<ComplexMatrix> {
    if state.dim() != 8 {
        return Err(Error::WrongDimension {
            expected: 8,
            got: state.dim(),
        });
    }
    let ket = ComplexMatrix::from_real(2, 1, &[FRAC_1_SQRT_2, outcome.sign() * FRAC_1_SQRT_2])?;
    let embed = tensor(&ComplexMatrix::identity(4), &ket);
    Ok(&(&embed.adjoint() * state.matrix()) * &embed)
}

fn closed_form_scalars(cfg: &ProtocolConfig) -> (f64, f64, f64) {
    let (s1, c1) = libm::sincos(cfg.params1.r());
    let (s2, c2) = libm::sincos(cfg.params2.r());
    let delta = cfg.phase_difference();
    let interference = libm::cos(delta) * s1 * s2;
    let half = libm::sin(delta / 2.0);
    (
        3.0 + c1 * c2 + interference,
        half * half * s1 * s2,
        1.0 - c1 * c2 - interference,
    )
}

/// Unnormalized branch state `sum_n K_n rho_psi K_n^†` with
/// `K_n = (M_1n ± M_2n) / 2`.
fn branch(k1: &KrausPair, k2: &KrausPair, outcome: ControlOutcome) -> ComplexMatrix {
    let rho = bell_state();
    let sign = outcome.sign();
    let mut out = ComplexMatrix::zeros(4, 4);
    for (a, b) in k1.operators().into_iter().zip(k2.operators()) {
        let k = (a + &b.scale_real(sign)).scale_real(0.5);
        out = &out + &(&(&k * rho.matrix()) * &k.adjoint());
    }
    out
}

/// Heralded Alice-Rob states and outcome probabilities.
pub fn measure_control(cfg: &ProtocolConfig) -> Result<BranchStatistics> {
    let (a_scalar, b_scalar, c_scalar) = closed_form_scalars(cfg);
    let (k1, k2) = cfg.kraus();
    let plus = branch(&k1, &k2, ControlOutcome::Plus);
    let minus = branch(&k1, &k2, ControlOutcome::Minus);
    let p_plus = plus.trace().re;
    let p_minus = minus.trace().re;
    let rho_plus = DensityMatrix::normalized(plus)?;
    let rho_minus = if 4.0 * p_minus < tol::DEGENERATE_BRANCH {
        None
    } else {
        Some(DensityMatrix::normalized(minus)?)
    };
    Ok(BranchStatistics {
        a_scalar,
        b_scalar,
        c_scalar,
        p_plus,
        p_minus,
        rho_plus,
        rho_minus,
    })
}

/// `rho_Av = (xi_11 + xi_22)(rho_psi) / 2`, the state a classical coin flip
/// between the two channels would produce.
pub fn classical_mixture(cfg: &ProtocolConfig) -> Result<DensityMatrix> {
    let [[xi11, _], [_, xi22]] = cross_terms(cfg)?;
    DensityMatrix::new((&xi11 + &xi22).scale_real(0.5))
}

/// Superposition of two channels with equal squeezing `r` and opposite
/// phases, evaluated from its closed form.
pub fn phase_protocol(r: f64) -> Result<BranchStatistics> {
    // Validates r.
    ChannelParams::new(r, 0.0)?;
    let (s, c) = libm::sincos(r);
    let norm = 1.0 + c * c;
    #[rustfmt::skip]
    let plus = [
        c * c, 0.0, 0.0, c,
        0.0,   0.0, 0.0, 0.0,
        0.0,   0.0, 0.0, 0.0,
        c,     0.0, 0.0, 1.0,
    ];
    let rho_plus =
        DensityMatrix::new(ComplexMatrix::from_real(4, 4, &plus)?.scale_real(1.0 / norm))?;
    let c_scalar = 2.0 * s * s;
    let rho_minus = if c_scalar < tol::DEGENERATE_BRANCH {
        None
    } else {
        Some(DensityMatrix::new(ComplexMatrix::from_real_diagonal(&[
            0.0, 1.0, 0.0, 0.0,
        ]))?)
    };
    Ok(BranchStatistics {
        a_scalar: 2.0 * norm,
        b_scalar: s * s,
        c_scalar,
        p_plus: norm / 2.0,
        p_minus: s * s / 2.0,
        rho_plus,
        rho_minus,
    })
}
