//! The per-run CSV artifact: one row per recorded step, state columns first,
//! diagnostics after. Values use Rust's shortest round-trip float text, so
//! every f64 survives a write/read cycle bit-exactly and repeated runs are
//! byte-identical.

use std::fs;
use std::path::Path;

use crate::diagnostics::DiagnosticsRow;
use crate::dynamics::Trajectory;
use crate::error::{Error, Result};
use crate::game_core::BilinearGame;

pub fn header(dim_p: usize, dim_q: usize) -> String {
    let mut cols = vec!["step".to_string()];
    cols.extend((0..dim_p).map(|i| format!("x_{i}")));
    cols.extend((0..dim_q).map(|i| format!("y_{i}")));
    cols.extend((0..dim_p).map(|i| format!("p_{i}")));
    cols.extend((0..dim_q).map(|i| format!("q_{i}")));
    cols.extend(
        [
            "energy",
            "modified_energy",
            "commutator",
            "regret1",
            "regret2",
            "total_regret",
            "duality_gap_avg",
        ]
        .iter()
        .map(|s| s.to_string()),
    );
    cols.join(",")
}

fn fmt(v: f64) -> String {
    // Display for f64 is the shortest text that round-trips the exact bits;
    // negative zero is normalized so ledgers of zeros stay tidy
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v}")
}

pub fn render(game: &BilinearGame, traj: &Trajectory, rows: &[DiagnosticsRow]) -> String {
    let mut out = String::new();
    out.push_str(&header(game.dim_p(), game.dim_q()));
    out.push('\n');
    for (st, row) in traj.states.iter().zip(rows) {
        let mut cells: Vec<String> = vec![row.step.to_string()];
        cells.extend(st.x.iter().map(|&v| fmt(v)));
        cells.extend(st.y.iter().map(|&v| fmt(v)));
        cells.extend(st.p.iter().map(|&v| fmt(v)));
        cells.extend(st.q.iter().map(|&v| fmt(v)));
        cells.push(fmt(row.energy));
        cells.push(fmt(row.modified_energy));
        cells.push(fmt(row.commutator_step));
        cells.push(fmt(row.regret1));
        cells.push(fmt(row.regret2));
        cells.push(fmt(row.total_regret));
        // absence is not zero: unbounded-domain runs leave the cell empty
        cells.push(row.duality_gap_avg.map(fmt).unwrap_or_default());
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn write(
    game: &BilinearGame,
    traj: &Trajectory,
    rows: &[DiagnosticsRow],
    path: &Path,
) -> Result<()> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    fs::write(path, render(game, traj, rows))?;
    Ok(())
}

/// A loaded CSV: header names plus string cells (floats stay text until a
/// consumer picks its columns).
pub struct CsvTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl CsvTable {
    pub fn read(path: &Path) -> Result<Self> {
        let text =
            fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let mut lines = text.lines();
        let columns: Vec<String> = lines
            .next()
            .ok_or_else(|| Error::Io(format!("{}: empty CSV", path.display())))?
            .split(',')
            .map(|s| s.to_string())
            .collect();
        let rows = lines
            .filter(|l| !l.is_empty())
            .map(|l| l.split(',').map(|s| s.to_string()).collect())
            .collect();
        Ok(CsvTable { columns, rows })
    }

    pub fn column_index(&self, name: &str) -> Result<usize> {
        self.columns
            .iter()
            .position(|c| c == name)
            .ok_or_else(|| Error::MissingColumn(name.to_string()))
    }

    /// Parse one column as f64s (all rows must have a value).
    pub fn float_column(&self, name: &str) -> Result<Vec<f64>> {
        let idx = self.column_index(name)?;
        self.rows
            .iter()
            .map(|r| {
                r.get(idx)
                    .and_then(|s| s.parse::<f64>().ok())
                    .ok_or_else(|| Error::Io(format!("bad value in column {name}")))
            })
            .collect()
    }
}
