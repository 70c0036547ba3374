//! Multi-threaded sweep evaluation.

use hawking_core::sweep::evaluate_cell;
use hawking_core::{Result, SweepGrid, SweepSpec};
use rayon::prelude::*;

/// Same grid as [`hawking_core::sweep::run_sweep`], with cells spread over
/// the rayon pool. Results are collected by cell index, so output order does
/// not depend on scheduling.
pub fn run_sweep_parallel(spec: &SweepSpec) -> Result<SweepGrid> {
    spec.validate()?;
    let cells = (0..spec.cell_count())
        .into_par_iter()
        .map(|k| {
            let (r1, r2) = spec.cell_coordinates(k);
            evaluate_cell(spec.metric, r1, r2)
        })
        .collect::<Result<Vec<_>>>()?;
    SweepGrid::from_cells(*spec, cells)
}
