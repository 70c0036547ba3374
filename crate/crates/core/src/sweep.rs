//! Parameter grids comparing superposed and classical channel combinations.
//!
//! Every cell runs the full numeric pipeline ([`crate::protocol`] then
//! [`crate::metrics`]); closed forms are never used here. Cells are
//! independent, so a caller may evaluate them in any order with
//! [`SweepSpec::cell_coordinates`] and [`evaluate_cell`] and then assemble
//! the grid with [`SweepGrid::from_cells`].

use alloc::format;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, FRAC_PI_4};
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};
use crate::metrics::{
    coherent_information, coherent_information_average, negativity, negativity_average, Direction,
};
use crate::protocol::{classical_mixture, classical_scenario, measure_control, ProtocolConfig};
use crate::tol;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Metric {
    /// `100 (N_Av - N[rho_Av]) / N[rho_Av]`
    NegPctDiffMixture,
    /// `100 (N_Av - N^C_Av) / N^C_Av`
    NegPctDiffConvex,
    /// `I_ensemble - I[rho_Av]`, in bits
    CoherentInfoDiff,
    /// Average heralded negativity for opposite phases, as a function of `r`
    PhaseCurve,
}

impl Metric {
    pub const ALL: [Metric; 4] = [
        Metric::NegPctDiffMixture,
        Metric::NegPctDiffConvex,
        Metric::CoherentInfoDiff,
        Metric::PhaseCurve,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Metric::NegPctDiffMixture => "neg_pct_diff_mixture",
            Metric::NegPctDiffConvex => "neg_pct_diff_convex",
            Metric::CoherentInfoDiff => "coherent_info_diff",
            Metric::PhaseCurve => "phase_curve",
        }
    }

    pub fn is_two_dimensional(self) -> bool {
        self != Metric::PhaseCurve
    }

    /// Percentage metrics carry a flag column marking cells whose baseline
    /// was too small to divide by.
    pub fn is_percentage(self) -> bool {
        matches!(self, Metric::NegPctDiffMixture | Metric::NegPctDiffConvex)
    }

    /// Admissible squeezing interval for this metric's axes.
    fn domain(self) -> (f64, f64, bool) {
        match self {
            // upper bound inclusive
            Metric::PhaseCurve => (0.0, FRAC_PI_2, false),
            _ => (0.0, FRAC_PI_4, true),
        }
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Metric::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::UnknownMetric(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepSpec {
    pub metric: Metric,
    pub r1_range: (f64, f64),
    /// Ignored by one-dimensional metrics.
    pub r2_range: (f64, f64),
    /// Grid points per axis, endpoints included.
    pub resolution: usize,
}

impl SweepSpec {
    pub const DEFAULT_RESOLUTION: usize = 101;

    /// Same range on both axes.
    pub fn new(metric: Metric, min: f64, max: f64, resolution: usize) -> Result<Self> {
        Self::with_ranges(metric, (min, max), (min, max), resolution)
    }

    pub fn with_ranges(
        metric: Metric,
        r1_range: (f64, f64),
        r2_range: (f64, f64),
        resolution: usize,
    ) -> Result<Self> {
        let spec = Self {
            metric,
            r1_range,
            r2_range,
            resolution,
        };
        spec.validate()?;
        Ok(spec)
    }

    /// `[0, pi/4]` on both axes at the default resolution.
    pub fn default_for(metric: Metric) -> Self {
        Self {
            metric,
            r1_range: (0.0, FRAC_PI_4),
            r2_range: (0.0, FRAC_PI_4),
            resolution: Self::DEFAULT_RESOLUTION,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.resolution < 2 {
            return Err(Error::InvalidSweep(format!(
                "resolution must be at least 2, got {}",
                self.resolution
            )));
        }
        let (lo, hi, inclusive) = self.metric.domain();
        let mut ranges = Vec::from([("r1", self.r1_range)]);
        if self.metric.is_two_dimensional() {
            ranges.push(("r2", self.r2_range));
        }
        for (axis, (min, max)) in ranges {
            if !min.is_finite() || !max.is_finite() {
                return Err(Error::InvalidSweep(format!("{axis} range must be finite")));
            }
            if min >= max {
                return Err(Error::InvalidSweep(format!(
                    "{axis} range [{min}, {max}] is empty"
                )));
            }
            let above = if inclusive { max > hi } else { max >= hi };
            if min < lo || above {
                let close = if inclusive { ']' } else { ')' };
                return Err(Error::InvalidSweep(format!(
                    "{axis} range [{min}, {max}] leaves [{lo}, {hi}{close} for {}",
                    self.metric
                )));
            }
        }
        Ok(())
    }

    fn axis((min, max): (f64, f64), n: usize) -> Vec<f64> {
        let step = (max - min) / (n - 1) as f64;
        (0..n)
            .map(|i| {
                if i == n - 1 {
                    max
                } else {
                    min + step * i as f64
                }
            })
            .collect()
    }

    pub fn r1_axis(&self) -> Vec<f64> {
        Self::axis(self.r1_range, self.resolution)
    }

    /// Empty for one-dimensional metrics.
    pub fn r2_axis(&self) -> Vec<f64> {
        if self.metric.is_two_dimensional() {
            Self::axis(self.r2_range, self.resolution)
        } else {
            Vec::new()
        }
    }

    pub fn cell_count(&self) -> usize {
        if self.metric.is_two_dimensional() {
            self.resolution * self.resolution
        } else {
            self.resolution
        }
    }

    /// `(r1, r2)` of the cell at `index` in output order (`r1` outer).
    /// One-dimensional metrics report `r2 = r1`.
    pub fn cell_coordinates(&self, index: usize) -> (f64, f64) {
        let n = self.resolution;
        let step = |(min, max): (f64, f64), i: usize| {
            if i == n - 1 {
                max
            } else {
                min + (max - min) / (n - 1) as f64 * i as f64
            }
        };
        if self.metric.is_two_dimensional() {
            (
                step(self.r1_range, index / n),
                step(self.r2_range, index % n),
            )
        } else {
            let r = step(self.r1_range, index);
            (r, r)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Cell {
    pub value: f64,
    /// Percentage metrics only: the baseline fell below
    /// [`tol::BASELINE_FLOOR`] and `value` is the plain difference.
    pub flagged: bool,
}

fn percentage(quantum: f64, classical: f64) -> Cell {
    if quantum == classical {
        Cell {
            value: 0.0,
            flagged: false,
        }
    } else if libm::fabs(classical) < tol::BASELINE_FLOOR {
        Cell {
            value: quantum - classical,
            flagged: true,
        }
    } else {
        Cell {
            value: 100.0 * (quantum - classical) / classical,
            flagged: false,
        }
    }
}

/// One grid cell. For [`Metric::PhaseCurve`], `r2` is ignored.
pub fn evaluate_cell(metric: Metric, r1: f64, r2: f64) -> Result<Cell> {
    let cfg = match metric {
        Metric::PhaseCurve => ProtocolConfig::opposite_phases(r1)?,
        _ => ProtocolConfig::from_angles(r1, r2, 0.0, 0.0)?,
    };
    let stats = measure_control(&cfg)?;
    let cell = match metric {
        Metric::NegPctDiffMixture => percentage(
            negativity_average(&stats)?,
            negativity(&classical_mixture(&cfg)?)?,
        ),
        Metric::NegPctDiffConvex => {
            let convex = (negativity(&classical_scenario(&cfg.params1)?)?
                + negativity(&classical_scenario(&cfg.params2)?)?)
                / 2.0;
            percentage(negativity_average(&stats)?, convex)
        }
        Metric::CoherentInfoDiff => Cell {
            value: coherent_information_average(&stats)?
                - coherent_information(&classical_mixture(&cfg)?, Direction::AliceToRob)?,
            flagged: false,
        },
        Metric::PhaseCurve => Cell {
            value: negativity_average(&stats)?,
            flagged: false,
        },
    };
    Ok(cell)
}

/// A filled grid. For two-dimensional metrics `values[i * n + j]` belongs to
/// `(r1_axis[i], r2_axis[j])`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepGrid {
    pub spec: SweepSpec,
    pub r1_axis: Vec<f64>,
    /// Empty for one-dimensional metrics.
    pub r2_axis: Vec<f64>,
    pub values: Vec<f64>,
    pub flags: Vec<bool>,
}

/// One output row of a grid, in deterministic order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridRow {
    pub r1: f64,
    /// `None` for one-dimensional metrics.
    pub r2: Option<f64>,
    pub value: f64,
    pub flagged: bool,
}

impl SweepGrid {
    /// Assembles a grid from cells listed in output order.
    pub fn from_cells(spec: SweepSpec, cells: Vec<Cell>) -> Result<Self> {
        spec.validate()?;
        if cells.len() != spec.cell_count() {
            return Err(Error::InvalidSweep(format!(
                "expected {} cells, got {}",
                spec.cell_count(),
                cells.len()
            )));
        }
        if let Some(k) = cells.iter().position(|c| !c.value.is_finite()) {
            return Err(Error::Invariant(format!(
                "non-finite value at cell {k} of {} sweep",
                spec.metric
            )));
        }
        Ok(Self {
            r1_axis: spec.r1_axis(),
            r2_axis: spec.r2_axis(),
            values: cells.iter().map(|c| c.value).collect(),
            flags: cells.iter().map(|c| c.flagged).collect(),
            spec,
        })
    }

    pub fn resolution(&self) -> usize {
        self.spec.resolution
    }

    /// Value at `(r1_axis[i], r2_axis[j])`; `j` is ignored in 1-D grids.
    pub fn value(&self, i: usize, j: usize) -> f64 {
        if self.spec.metric.is_two_dimensional() {
            self.values[i * self.spec.resolution + j]
        } else {
            self.values[i]
        }
    }

    pub fn has_flag_column(&self) -> bool {
        self.spec.metric.is_percentage()
    }

    pub fn rows(&self) -> impl Iterator<Item = GridRow> + '_ {
        let n = self.spec.resolution;
        let two_d = self.spec.metric.is_two_dimensional();
        self.values
            .iter()
            .zip(&self.flags)
            .enumerate()
            .map(move |(k, (&value, &flagged))| {
                if two_d {
                    GridRow {
                        r1: self.r1_axis[k / n],
                        r2: Some(self.r2_axis[k % n]),
                        value,
                        flagged,
                    }
                } else {
                    GridRow {
                        r1: self.r1_axis[k],
                        r2: None,
                        value,
                        flagged,
                    }
                }
            })
    }
}

/// Evaluates every cell in order on the calling thread.
pub fn run_sweep(spec: &SweepSpec) -> Result<SweepGrid> {
    spec.validate()?;
    let cells = (0..spec.cell_count())
        .map(|k| {
            let (r1, r2) = spec.cell_coordinates(k);
            evaluate_cell(spec.metric, r1, r2)
        })
        .collect::<Result<Vec<_>>>()?;
    SweepGrid::from_cells(*spec, cells)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn metric_names_round_trip() {
        for m in Metric::ALL {
            assert_eq!(m.name().parse::<Metric>().unwrap(), m);
        }
        assert!(matches!(
            "bogus".parse::<Metric>(),
            Err(Error::UnknownMetric(_))
        ));
    }

    #[test]
    fn spec_validation() {
        assert!(SweepSpec::new(Metric::NegPctDiffMixture, 0.0, FRAC_PI_4, 1).is_err());
        assert!(SweepSpec::new(Metric::NegPctDiffMixture, 0.3, 0.3, 5).is_err());
        assert!(SweepSpec::new(Metric::NegPctDiffMixture, 0.5, 0.3, 5).is_err());
        assert!(SweepSpec::new(Metric::NegPctDiffMixture, -0.1, 0.3, 5).is_err());
        assert!(SweepSpec::new(Metric::NegPctDiffMixture, 0.0, 1.0, 5).is_err());
        assert!(SweepSpec::new(Metric::NegPctDiffMixture, 0.0, f64::NAN, 5).is_err());
        assert!(SweepSpec::new(Metric::PhaseCurve, 0.0, 1.5, 5).is_ok());
        assert!(SweepSpec::new(Metric::PhaseCurve, 0.0, FRAC_PI_2, 5).is_err());
        assert!(SweepSpec::default_for(Metric::CoherentInfoDiff)
            .validate()
            .is_ok());
    }

    #[test]
    fn axes_include_endpoints() {
        let spec = SweepSpec::new(Metric::CoherentInfoDiff, 0.0, FRAC_PI_4, 5).unwrap();
        let axis = spec.r1_axis();
        assert_eq!(axis.len(), 5);
        assert_eq!(axis[0], 0.0);
        assert_eq!(axis[4], FRAC_PI_4);
        for k in 0..spec.cell_count() {
            let (r1, r2) = spec.cell_coordinates(k);
            assert_eq!(r1, axis[k / 5]);
            assert_eq!(r2, axis[k % 5]);
        }
        let phase = SweepSpec::new(Metric::PhaseCurve, 0.0, 1.0, 4).unwrap();
        assert!(phase.r2_axis().is_empty());
        assert_eq!(phase.cell_count(), 4);
    }

    #[test]
    fn corner_is_exactly_zero() {
        for m in [Metric::NegPctDiffMixture, Metric::NegPctDiffConvex] {
            let cell = evaluate_cell(m, 0.0, 0.0).unwrap();
            assert_eq!(cell.value, 0.0);
            assert!(!cell.flagged);
        }
    }

    #[test]
    fn percentage_flags_tiny_baseline() {
        let cell = percentage(0.25, 1e-15);
        assert!(cell.flagged);
        assert!((cell.value - 0.25).abs() < 1e-14);
        assert!((percentage(0.3, 0.2).value - 50.0).abs() < 1e-12);
    }

    #[test]
    fn phase_curve_starts_at_half() {
        let cell = evaluate_cell(Metric::PhaseCurve, 0.0, 123.0).unwrap();
        assert!((cell.value - 0.5).abs() < 1e-14);
    }

    #[test]
    fn from_cells_checks_count_and_finiteness() {
        let spec = SweepSpec::new(Metric::PhaseCurve, 0.0, 1.0, 3).unwrap();
        let cell = Cell {
            value: 1.0,
            flagged: false,
        };
        assert!(SweepGrid::from_cells(spec, Vec::from([cell; 2])).is_err());
        let mut cells = Vec::from([cell; 3]);
        cells[1].value = f64::NAN;
        assert!(SweepGrid::from_cells(spec, cells).is_err());
    }

    #[test]
    fn small_grid_rows_are_ordered() {
        let spec = SweepSpec::new(Metric::NegPctDiffMixture, 0.0, FRAC_PI_4, 3).unwrap();
        let grid = run_sweep(&spec).unwrap();
        let rows: Vec<_> = grid.rows().collect();
        assert_eq!(rows.len(), 9);
        for w in rows.windows(2) {
            let a = (w[0].r1, w[0].r2.unwrap());
            let b = (w[1].r1, w[1].r2.unwrap());
            assert!(a < b);
        }
        assert_eq!(grid.value(1, 2), rows[5].value);
    }
}
