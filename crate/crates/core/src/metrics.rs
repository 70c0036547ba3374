//! Entanglement and information measures for two-qubit states.
//!
//! Numeric measures work on any valid [`DensityMatrix`]; the `*_closed`
//! functions are the analytic expressions for the Bell pair pushed through
//! the protocols in [`crate::protocol`], and the reports check one against
//! the other.

use alloc::format;

use crate::channel::ChannelParams;
use crate::error::{Error, Result};
use crate::linop::{
    hermitian_eigenvalues, partial_trace, partial_transpose, trace_norm, DensityMatrix,
};
use crate::protocol::{classical_mixture, classical_scenario, measure_control, phase_protocol};
use crate::protocol::{BranchStatistics, ProtocolConfig};
use crate::tol;

const TWO_QUBITS: [usize; 2] = [2, 2];

fn ensure_two_qubit(rho: &DensityMatrix) -> Result<()> {
    if rho.dim() == 4 {
        Ok(())
    } else {
        Err(Error::WrongDimension {
            expected: 4,
            got: rho.dim(),
        })
    }
}

/// `(||rho^{Γ_A}||_1 - 1) / 2`.
pub fn negativity(rho: &DensityMatrix) -> Result<f64> {
    ensure_two_qubit(rho)?;
    let pt = partial_transpose(rho.matrix(), &TWO_QUBITS, 0)?;
    let n = (trace_norm(&pt)? - 1.0) / 2.0;
    if n >= 0.0 {
        Ok(n)
    } else if n >= -tol::NEGATIVITY_CLIP {
        Ok(0.0)
    } else {
        Err(Error::Invariant(format!("negative negativity {n:e}")))
    }
}

/// Peres-Horodecki test; exact for two qubits.
pub fn ppt_separable(rho: &DensityMatrix) -> Result<bool> {
    ensure_two_qubit(rho)?;
    let pt = partial_transpose(rho.matrix(), &TWO_QUBITS, 0)?;
    Ok(hermitian_eigenvalues(&pt)?[0] >= -tol::SPECTRAL)
}

/// Von Neumann entropy in bits.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    let s: f64 = rho
        .eigenvalues()
        .into_iter()
        .filter(|&x| x > 0.0)
        .map(|x| -x * libm::log2(x))
        .sum();
    s.clamp(0.0, libm::log2(rho.dim() as f64))
}

/// Which party receives the transmitted half of the pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Direction {
    /// `I(A>R) = S(R) - S(AR)`
    #[default]
    AliceToRob,
    /// `I(R>A) = S(A) - S(AR)`
    RobToAlice,
}

/// Coherent information of a two-qubit state, in bits.
pub fn coherent_information(rho: &DensityMatrix, direction: Direction) -> Result<f64> {
    ensure_two_qubit(rho)?;
    let keep = match direction {
        Direction::AliceToRob => [1],
        Direction::RobToAlice => [0],
    };
    let receiver = partial_trace(rho, &TWO_QUBITS, &keep)?;
    Ok(von_neumann_entropy(&receiver) - von_neumann_entropy(rho))
}

/// `p+ N[rho+] + p- N[rho-]`; the minus branch is always separable, so this
/// is `p+ N[rho+]`.
pub fn negativity_average(stats: &BranchStatistics) -> Result<f64> {
    stats
        .branches()
        .map(|(p, rho)| Ok(p * negativity(rho)?))
        .sum()
}

/// Outcome-weighted coherent information of the heralded branches.
pub fn coherent_information_average(stats: &BranchStatistics) -> Result<f64> {
    stats
        .branches()
        .map(|(p, rho)| Ok(p * coherent_information(rho, Direction::AliceToRob)?))
        .sum()
}

/// Average heralded negativity of the superposed channels, for `phi1 = phi2`.
pub fn negativity_avg_closed(r1: f64, r2: f64) -> f64 {
    let s = libm::sin(r1) + libm::sin(r2);
    let c = libm::cos(r1) + libm::cos(r2);
    let s2 = s * s;
    (-s2 + libm::sqrt(16.0 * c * c + s2 * s2)) / 16.0
}

/// Negativity of the equal classical mixture of two channels.
pub fn negativity_mixture_closed(r1: f64, r2: f64) -> f64 {
    let (s1, c1) = libm::sincos(r1);
    let (s2, c2) = libm::sincos(r2);
    let s = s1 * s1 + s2 * s2;
    let c = c1 + c2;
    (-s + libm::sqrt(4.0 * c * c + s * s)) / 8.0
}

/// Equal-weight average of the single-channel negativities.
pub fn negativity_convex_avg(r1: f64, r2: f64) -> f64 {
    let c1 = libm::cos(r1);
    let c2 = libm::cos(r2);
    (c1 * c1 + c2 * c2) / 4.0
}

/// Negativity of one channel applied to the Bell pair, `cos^2 r / 2`.
pub fn negativity_single_closed(r: f64) -> f64 {
    let c = libm::cos(r);
    c * c / 2.0
}

/// Average heralded negativity for opposite phases, `|cos r| / 2`.
pub fn phase_avg_negativity(r: f64) -> f64 {
    libm::fabs(libm::cos(r)) / 2.0
}

/// Negativity of the plus branch for opposite phases, `|cos r| / (1 + cos^2 r)`.
pub fn phase_plus_negativity(r: f64) -> f64 {
    let c = libm::cos(r);
    libm::fabs(c) / (1.0 + c * c)
}

fn agree(what: &str, numeric: f64, closed: f64) -> Result<()> {
    if libm::fabs(numeric - closed) <= tol::SPECTRAL {
        Ok(())
    } else {
        Err(Error::Invariant(format!(
            "{what}: numeric {numeric} vs closed form {closed}"
        )))
    }
}

/// Measures of one two-qubit state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricReport {
    pub negativity_numeric: f64,
    pub negativity_closed_form: Option<f64>,
    /// Bits, Alice to Rob.
    pub coherent_information: f64,
    pub ppt: bool,
}

impl MetricReport {
    /// Fails if a supplied closed form disagrees with the numeric negativity
    /// by more than [`tol::SPECTRAL`].
    pub fn evaluate(rho: &DensityMatrix, closed_form: Option<f64>) -> Result<Self> {
        let negativity_numeric = negativity(rho)?;
        if let Some(closed) = closed_form {
            agree("negativity", negativity_numeric, closed)?;
        }
        Ok(Self {
            negativity_numeric,
            negativity_closed_form: closed_form,
            coherent_information: coherent_information(rho, Direction::AliceToRob)?,
            ppt: ppt_separable(rho)?,
        })
    }

    /// The Bell pair after a single channel.
    pub fn single_channel(p: &ChannelParams) -> Result<(DensityMatrix, Self)> {
        let rho = classical_scenario(p)?;
        let report = Self::evaluate(&rho, Some(negativity_single_closed(p.r())))?;
        Ok((rho, report))
    }
}

/// Superposed channels against their classical counterparts.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperpositionReport {
    pub stats: BranchStatistics,
    pub mixture: DensityMatrix,
    /// `p+ N[rho+]`, numerically.
    pub negativity_avg: f64,
    /// Present when both phases agree.
    pub negativity_avg_closed: Option<f64>,
    pub negativity_mixture: f64,
    pub negativity_mixture_closed: f64,
    pub negativity_convex: f64,
    pub negativity_convex_closed: f64,
    /// Outcome-weighted coherent information of the heralded branches.
    pub coherent_info_ensemble: f64,
    /// Coherent information of the plus branch alone.
    pub coherent_info_plus: f64,
    pub coherent_info_mixture: f64,
}

impl SuperpositionReport {
    pub fn evaluate(cfg: &ProtocolConfig) -> Result<Self> {
        let (r1, r2) = (cfg.params1.r(), cfg.params2.r());
        let stats = measure_control(cfg)?;
        let mixture = classical_mixture(cfg)?;

        let negativity_avg = negativity_average(&stats)?;
        let negativity_avg_closed =
            (cfg.params1.phi() == cfg.params2.phi()).then(|| negativity_avg_closed(r1, r2));
        if let Some(closed) = negativity_avg_closed {
            agree("average negativity", negativity_avg, closed)?;
        }
        let negativity_mixture = negativity(&mixture)?;
        let negativity_mixture_closed = negativity_mixture_closed(r1, r2);
        agree(
            "mixture negativity",
            negativity_mixture,
            negativity_mixture_closed,
        )?;
        let negativity_convex = (negativity(&classical_scenario(&cfg.params1)?)?
            + negativity(&classical_scenario(&cfg.params2)?)?)
            / 2.0;
        let negativity_convex_closed = negativity_convex_avg(r1, r2);
        agree(
            "convex negativity",
            negativity_convex,
            negativity_convex_closed,
        )?;

        Ok(Self {
            coherent_info_ensemble: coherent_information_average(&stats)?,
            coherent_info_plus: coherent_information(&stats.rho_plus, Direction::AliceToRob)?,
            coherent_info_mixture: coherent_information(&mixture, Direction::AliceToRob)?,
            stats,
            mixture,
            negativity_avg,
            negativity_avg_closed,
            negativity_mixture,
            negativity_mixture_closed,
            negativity_convex,
            negativity_convex_closed,
        })
    }
}

/// Opposite-phase superposition against a single channel.
#[derive(Debug, Clone, PartialEq)]
pub struct PhaseReport {
    pub r: f64,
    pub stats: BranchStatistics,
    pub negativity_plus: f64,
    pub negativity_plus_closed: f64,
    pub negativity_avg: f64,
    pub negativity_avg_closed: f64,
    /// `cos^2 r / 2`: both phases give the same single channel.
    pub negativity_classical: f64,
}

impl PhaseReport {
    pub fn evaluate(r: f64) -> Result<Self> {
        let stats = phase_protocol(r)?;
        let negativity_plus = negativity(&stats.rho_plus)?;
        let negativity_plus_closed = phase_plus_negativity(r);
        agree(
            "plus-branch negativity",
            negativity_plus,
            negativity_plus_closed,
        )?;
        let negativity_avg = negativity_average(&stats)?;
        let negativity_avg_closed = phase_avg_negativity(r);
        agree("average negativity", negativity_avg, negativity_avg_closed)?;
        Ok(Self {
            r,
            stats,
            negativity_plus,
            negativity_plus_closed,
            negativity_avg,
            negativity_avg_closed,
            negativity_classical: negativity_single_closed(r),
        })
    }
}
