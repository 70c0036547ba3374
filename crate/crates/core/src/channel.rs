//! The Hawking channel on Rob's mode.
//!
//! An observer hovering above a horizon describes a free-falling observer's
//! fermionic mode through a two-mode squeezing unitary that couples it to a
//! mode beyond the horizon. Tracing that partner mode out leaves a channel on
//! Rob's qubit with exactly two Kraus operators, because each fermionic mode
//! holds at most one excitation:
//!
//! ```text
//! N0 = diag(cos r, 1)        N1 = e^{-i phi} sin r |1><0|
//! ```
//!
//! On the Alice-Rob pair the Kraus operators are `M_n = I ⊗ N_n`.
//!
//! [`dilation_oracle`] rebuilds the same channel from the squeezing unitary
//! itself, via a matrix exponential, and is used to cross-check the Kraus
//! route.

use alloc::format;

use crate::error::{Error, Result};
use crate::linop::{
    matrix_exponential, partial_trace_matrix, tensor, ComplexMatrix, DensityMatrix, C64,
};

const TAU: f64 = 2.0 * core::f64::consts::PI;

/// A Schwarzschild black hole and a static observer, in units `G = c = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlackHoleGeometry {
    mass: f64,
    radius: f64,
    k0: f64,
    hbar: f64,
}

fn finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NotFinite { name, value })
    }
}

fn positive(name: &'static str, value: f64) -> Result<f64> {
    if finite(name, value)? > 0.0 {
        Ok(value)
    } else {
        Err(Error::NonPositive { name, value })
    }
}

impl BlackHoleGeometry {
    /// `radius` is the observer's distance from the centre; it must lie
    /// outside the horizon `R_s = 2m`.
    pub fn new(mass: f64, radius: f64, k0: f64, hbar: f64) -> Result<Self> {
        let mass = positive("mass", mass)?;
        let radius = finite("radius", radius)?;
        let k0 = positive("k0", k0)?;
        let hbar = positive("hbar", hbar)?;
        let horizon = 2.0 * mass;
        if radius <= horizon {
            return Err(Error::InsideHorizon { radius, horizon });
        }
        Ok(Self {
            mass,
            radius,
            k0,
            hbar,
        })
    }

    /// Geometry with `hbar = 1`.
    pub fn with_unit_hbar(mass: f64, radius: f64, k0: f64) -> Result<Self> {
        Self::new(mass, radius, k0, 1.0)
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn radius(&self) -> f64 {
        self.radius
    }

    pub fn k0(&self) -> f64 {
        self.k0
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Redshift factor `f0 = 1 - 2m/R0`, in `(0, 1)`.
    pub fn redshift_factor(&self) -> f64 {
        1.0 - 2.0 * self.mass / self.radius
    }

    /// `kappa = 1 / (4m)`.
    pub fn surface_gravity(&self) -> f64 {
        1.0 / (4.0 * self.mass)
    }

    pub fn schwarzschild_radius(&self) -> f64 {
        2.0 * self.mass
    }
}

/// Squeezing `r` and phase `phi` of one Hawking channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams {
    r: f64,
    phi: f64,
}

impl ChannelParams {
    /// Accepts `0 <= r < pi/2`; `phi` is reduced to `[0, 2 pi)`.
    pub fn new(r: f64, phi: f64) -> Result<Self> {
        let r = finite("r", r)?;
        let phi = finite("phi", phi)?;
        if !(0.0..core::f64::consts::FRAC_PI_2).contains(&r) {
            return Err(Error::SqueezingOutOfRange { r });
        }
        let mut phi = libm::fmod(phi, TAU);
        if phi < 0.0 {
            phi += TAU;
        }
        if phi >= TAU {
            phi = 0.0;
        }
        Ok(Self { r, phi })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// `r = arctan(exp(-hbar pi sqrt(f0) k0 / kappa))`, with `phi = 0`.
///
/// Valid geometries give `tan r < 1`, so `r < pi/4`. Large `k0` drives `r`
/// to zero exponentially: high-frequency modes barely feel the horizon.
pub fn squeezing_from_geometry(g: &BlackHoleGeometry) -> ChannelParams {
    let exponent = g.hbar * core::f64::consts::PI * libm::sqrt(g.redshift_factor()) * g.k0
        / g.surface_gravity();
    let r = libm::atan(libm::exp(-exponent));
    ChannelParams { r, phi: 0.0 }
}

/// Kraus operators `M_0, M_1` of one Hawking channel on the Alice-Rob pair.
#[derive(Debug, Clone, PartialEq)]
pub struct KrausPair {
    pub m0: ComplexMatrix,
    pub m1: ComplexMatrix,
}

impl KrausPair {
    pub fn operators(&self) -> [&ComplexMatrix; 2] {
        [&self.m0, &self.m1]
    }

    /// Largest entry of `M0^† M0 + M1^† M1 - I`.
    pub fn completeness_defect(&self) -> f64 {
        let sum = &(&self.m0.adjoint() * &self.m0) + &(&self.m1.adjoint() * &self.m1);
        sum.max_abs_diff(&ComplexMatrix::identity(sum.rows()))
    }
}

/// Kraus operators `N_0, N_1` acting on Rob's qubit alone.
pub fn rob_kraus(p: &ChannelParams) -> [ComplexMatrix; 2] {
    let (s, c) = libm::sincos(p.r);
    let n0 = ComplexMatrix::from_real_diagonal(&[c, 1.0]);
    let mut n1 = ComplexMatrix::zeros(2, 2);
    n1[(1, 0)] = C64::from_polar(s, -p.phi);
    [n0, n1]
}

pub fn kraus_pair(p: &ChannelParams) -> KrausPair {
    let [n0, n1] = rob_kraus(p);
    let id = ComplexMatrix::identity(2);
    KrausPair {
        m0: tensor(&id, &n0),
        m1: tensor(&id, &n1),
    }
}

fn check_two_qubit(op: &'static str, m: &ComplexMatrix) -> Result<()> {
    if m.rows() == 4 && m.cols() == 4 {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            op,
            detail: format!("expected a 4x4 operand, got {}x{}", m.rows(), m.cols()),
        })
    }
}

/// `sum_n M_in rho M_jn^†`; Hermitian only when `ki == kj`.
pub fn cross_term(rho: &DensityMatrix, ki: &KrausPair, kj: &KrausPair) -> Result<ComplexMatrix> {
    cross_term_matrix(rho.matrix(), ki, kj)
}

/// [`cross_term`] for an arbitrary 4x4 operand.
pub fn cross_term_matrix(
    m: &ComplexMatrix,
    ki: &KrausPair,
    kj: &KrausPair,
) -> Result<ComplexMatrix> {
    check_two_qubit("cross_term", m)?;
    let mut out = ComplexMatrix::zeros(4, 4);
    for (a, b) in ki.operators().into_iter().zip(kj.operators()) {
        out = &out + &(&(a * m) * &b.adjoint());
    }
    Ok(out)
}

/// `xi(rho) = M0 rho M0^† + M1 rho M1^†`.
pub fn apply_channel(rho: &DensityMatrix, k: &KrausPair) -> Result<DensityMatrix> {
    DensityMatrix::new(cross_term(rho, k, k)?)
}

/// The channel's action on the Bell pair, written out entrywise.
pub fn channel_output_closed_form(p: &ChannelParams) -> DensityMatrix {
    let (s, c) = libm::sincos(p.r);
    #[rustfmt::skip]
    let entries = [
        c * c, 0.0,   0.0, c,
        0.0,   s * s, 0.0, 0.0,
        0.0,   0.0,   0.0, 0.0,
        c,     0.0,   0.0, 1.0,
    ];
    let m = ComplexMatrix::from_real(4, 4, &entries)
        .expect("finite entries")
        .scale_real(0.5);
    DensityMatrix::new(m).expect("closed-form output is a state")
}

/// The two-mode squeezing unitary on (Rob's mode ⊗ partner mode).
///
/// Basis `|n_R n_anc>`. The generator maps `|00> -> e^{-i phi} |11>` and
/// `|11> -> -e^{i phi} |00>` and annihilates `|01>`, `|10>`, so
/// `U = exp(r K)` rotates `|00>` into `cos r |00> + e^{-i phi} sin r |11>`.
pub fn dilation_oracle(p: &ChannelParams) -> ComplexMatrix {
    let mut generator = ComplexMatrix::zeros(4, 4);
    generator[(3, 0)] = C64::from_polar(1.0, -p.phi);
    generator[(0, 3)] = -C64::from_polar(1.0, p.phi);
    matrix_exponential(&generator.scale_real(p.r)).expect("generator is square")
}

/// `Tr_anc[(I ⊗ U_i)(m ⊗ |0><0|)(I ⊗ U_j)^†]` for a 4x4 Alice-Rob operand.
///
/// With `pi == pj` this is the channel itself, computed without the Kraus
/// operators.
pub fn dilated_cross_term(
    m: &ComplexMatrix,
    pi: &ChannelParams,
    pj: &ChannelParams,
) -> Result<ComplexMatrix> {
    check_two_qubit("dilated_cross_term", m)?;
    let id = ComplexMatrix::identity(2);
    let ui = tensor(&id, &dilation_oracle(pi));
    let uj = tensor(&id, &dilation_oracle(pj));
    let vacuum = ComplexMatrix::from_real_diagonal(&[1.0, 0.0]);
    let joint = tensor(m, &vacuum);
    let evolved = &(&ui * &joint) * &uj.adjoint();
    partial_trace_matrix(&evolved, &[2, 2, 2], &[0, 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, FRAC_PI_4, PI};

    #[test]
    fn params_validation() {
        assert!(ChannelParams::new(-0.1, 0.0).is_err());
        assert!(ChannelParams::new(FRAC_PI_2, 0.0).is_err());
        assert!(ChannelParams::new(f64::NAN, 0.0).is_err());
        assert!(ChannelParams::new(0.3, f64::INFINITY).is_err());
        let p = ChannelParams::new(0.3, -FRAC_PI_2).unwrap();
        assert!((p.phi() - 1.5 * PI).abs() < 1e-15);
        let p = ChannelParams::new(0.3, 5.0 * PI).unwrap();
        assert!((p.phi() - PI).abs() < 1e-14);
    }

    #[test]
    fn geometry_validation() {
        assert!(matches!(
            BlackHoleGeometry::with_unit_hbar(1.0, 2.0, 0.1),
            Err(Error::InsideHorizon { .. })
        ));
        assert!(matches!(
            BlackHoleGeometry::with_unit_hbar(1.0, 1.5, 0.1),
            Err(Error::InsideHorizon { .. })
        ));
        assert!(matches!(
            BlackHoleGeometry::with_unit_hbar(0.0, 1.5, 0.1),
            Err(Error::NonPositive { name: "mass", .. })
        ));
        assert!(matches!(
            BlackHoleGeometry::with_unit_hbar(1.0, 3.0, -0.1),
            Err(Error::NonPositive { name: "k0", .. })
        ));
        assert!(BlackHoleGeometry::new(1.0, 3.0, 0.1, 0.0).is_err());
    }

    #[test]
    fn geometry_derived_quantities() {
        let g = BlackHoleGeometry::with_unit_hbar(2.0, 5.0, 0.1).unwrap();
        assert_eq!(g.schwarzschild_radius(), 4.0);
        assert!((g.redshift_factor() - 0.2).abs() < 1e-15);
        assert_eq!(g.surface_gravity(), 0.125);
    }

    #[test]
    fn high_frequency_limit_kills_squeezing() {
        let g = BlackHoleGeometry::with_unit_hbar(1.0, 2.1, 1e6).unwrap();
        assert!(squeezing_from_geometry(&g).r() < 1e-12);
    }

    #[test]
    fn identity_channel_at_zero_squeezing() {
        let k = kraus_pair(&ChannelParams::new(0.0, 0.7).unwrap());
        assert_eq!(k.m0, ComplexMatrix::identity(4));
        assert!(k.m1.max_abs_diff(&ComplexMatrix::zeros(4, 4)) == 0.0);
    }

    #[test]
    fn kraus_at_quarter_pi() {
        let k = kraus_pair(&ChannelParams::new(FRAC_PI_4, 0.0).unwrap());
        let m0 = ComplexMatrix::from_real_diagonal(&[FRAC_1_SQRT_2, 1.0, FRAC_1_SQRT_2, 1.0]);
        assert!(k.m0.max_abs_diff(&m0) < 1e-15);
        let mut m1 = ComplexMatrix::zeros(4, 4);
        m1[(1, 0)] = C64::new(FRAC_1_SQRT_2, 0.0);
        m1[(3, 2)] = C64::new(FRAC_1_SQRT_2, 0.0);
        assert!(k.m1.max_abs_diff(&m1) < 1e-15);
    }

    #[test]
    fn kraus_completeness_and_phase() {
        for (r, phi) in [(0.1, 0.0), (0.7, 2.0), (1.5, 4.0)] {
            let k = kraus_pair(&ChannelParams::new(r, phi).unwrap());
            assert!(k.completeness_defect() < 1e-12);
            let expected = C64::from_polar(libm::sin(r), -phi);
            assert!((k.m1[(1, 0)] - expected).norm() < 1e-15);
            assert!((k.m1[(3, 2)] - expected).norm() < 1e-15);
        }
    }

    #[test]
    fn cross_term_rejects_wrong_dims() {
        let k = kraus_pair(&ChannelParams::new(0.2, 0.0).unwrap());
        let small = ComplexMatrix::identity(2);
        assert!(cross_term_matrix(&small, &k, &k).is_err());
        assert!(dilated_cross_term(
            &small,
            &ChannelParams::new(0.2, 0.0).unwrap(),
            &ChannelParams::new(0.2, 0.0).unwrap()
        )
        .is_err());
    }

    #[test]
    fn dilation_is_identity_at_zero() {
        let u = dilation_oracle(&ChannelParams::new(0.0, 1.0).unwrap());
        assert_eq!(u, ComplexMatrix::identity(4));
    }

    #[test]
    fn dilation_induces_printed_kraus() {
        let p = ChannelParams::new(0.4, 1.1).unwrap();
        let u = dilation_oracle(&p);
        let [n0, n1] = rob_kraus(&p);
        for (n, expected) in [n0, n1].iter().enumerate() {
            let mut induced = ComplexMatrix::zeros(2, 2);
            for a in 0..2 {
                for b in 0..2 {
                    induced[(a, b)] = u[(2 * a + n, 2 * b)];
                }
            }
            assert!(induced.max_abs_diff(expected) < 1e-14);
        }
    }
}
