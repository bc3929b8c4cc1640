//! Hand-rendered two-panel SVG figures, no plotting dependency.
//!
//! Left panel: the dual trajectory (x_k, y_k) as a scatter-line. Right
//! panel: energy and modified energy against the step index. Fixed 800x400
//! canvas, linear axis mapping, 12px labels; output is deterministic for a
//! fixed input CSV.

use std::fs;
use std::path::Path;

use super::csv::CsvTable;
use crate::error::Result;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 400.0;

struct Panel {
    x0: f64,
    y0: f64, // top-left of the plot rect
    w: f64,
    h: f64,
}

impl Panel {
    fn map(&self, v: f64, lo: f64, hi: f64, horizontal: bool) -> f64 {
        let t = (v - lo) / (hi - lo);
        if horizontal {
            self.x0 + t * self.w
        } else {
            self.y0 + self.h - t * self.h
        }
    }
}

fn padded_range(values: &[f64]) -> (f64, f64) {
    let lo = values.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let span = hi - lo;
    if span <= 0.0 {
        // single point or constant series: open a symmetric window around it
        let pad = lo.abs().max(1.0) * 0.05;
        (lo - pad, hi + pad)
    } else {
        (lo - 0.05 * span, hi + 0.05 * span)
    }
}

fn polyline(points: &[(f64, f64)], color: &str) -> String {
    if points.len() == 1 {
        return format!(
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"{color}\"/>\n",
            points[0].0, points[0].1
        );
    }
    let coords: Vec<String> = points
        .iter()
        .map(|(x, y)| format!("{x:.2},{y:.2}"))
        .collect();
    format!(
        "<polyline fill=\"none\" stroke=\"{color}\" stroke-width=\"1\" points=\"{}\"/>\n",
        coords.join(" ")
    )
}

fn axis_box(
    pan: &Panel,
    x_range: (f64, f64),
    y_range: (f64, f64),
    x_label: &str,
    y_label: &str,
) -> String {
    let mut s = String::new();
    s.push_str(&format!(
        "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"none\" stroke=\"#333\" stroke-width=\"1\"/>\n",
        pan.x0, pan.y0, pan.w, pan.h
    ));
    let label = |x: f64, y: f64, anchor: &str, text: String| {
        format!("<text x=\"{x:.2}\" y=\"{y:.2}\" font-size=\"12\" text-anchor=\"{anchor}\" fill=\"#333\">{text}</text>\n")
    };
    s.push_str(&label(
        pan.x0,
        pan.y0 + pan.h + 14.0,
        "middle",
        format!("{:.4}", x_range.0),
    ));
    s.push_str(&label(
        pan.x0 + pan.w,
        pan.y0 + pan.h + 14.0,
        "middle",
        format!("{:.4}", x_range.1),
    ));
    s.push_str(&label(
        pan.x0 - 4.0,
        pan.y0 + pan.h,
        "end",
        format!("{:.4}", y_range.0),
    ));
    s.push_str(&label(
        pan.x0 - 4.0,
        pan.y0 + 10.0,
        "end",
        format!("{:.4}", y_range.1),
    ));
    s.push_str(&label(
        pan.x0 + pan.w / 2.0,
        pan.y0 + pan.h + 28.0,
        "middle",
        x_label.to_string(),
    ));
    s.push_str(&label(
        pan.x0 + pan.w / 2.0,
        pan.y0 - 6.0,
        "middle",
        y_label.to_string(),
    ));
    s
}

/// Render the figure for an existing run CSV. Requires the `x_0`, `y_0`,
/// `step`, `energy` and `modified_energy` columns.
pub fn emit_svg(csv_path: &Path, out_path: &Path) -> Result<()> {
    let table = CsvTable::read(csv_path)?;
    let xs = table.float_column("x_0")?;
    let ys = table.float_column("y_0")?;
    let steps = table.float_column("step")?;
    let energy = table.float_column("energy")?;
    let modified = table.float_column("modified_energy")?;

    let left = Panel {
        x0: 55.0,
        y0: 40.0,
        w: 320.0,
        h: 300.0,
    };
    let right = Panel {
        x0: 455.0,
        y0: 40.0,
        w: 320.0,
        h: 300.0,
    };

    let xr = padded_range(&xs);
    let yr = padded_range(&ys);
    let sr = padded_range(&steps);
    let mut all_energy = energy.clone();
    all_energy.extend_from_slice(&modified);
    let er = padded_range(&all_energy);

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    svg.push_str(&axis_box(&left, xr, yr, "x", "y"));
    let traj_pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(&ys)
        .map(|(&x, &y)| {
            (
                left.map(x, xr.0, xr.1, true),
                left.map(y, yr.0, yr.1, false),
            )
        })
        .collect();
    svg.push_str(&polyline(&traj_pts, "#1f77b4"));
    if let Some(first) = traj_pts.first() {
        svg.push_str(&format!(
            "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"3\" fill=\"#1f77b4\"/>\n",
            first.0, first.1
        ));
    }

    svg.push_str(&axis_box(&right, sr, er, "step", "energy"));
    let series = |vals: &[f64]| -> Vec<(f64, f64)> {
        steps
            .iter()
            .zip(vals)
            .map(|(&k, &v)| {
                (
                    right.map(k, sr.0, sr.1, true),
                    right.map(v, er.0, er.1, false),
                )
            })
            .collect()
    };
    svg.push_str(&polyline(&series(&energy), "#d62728"));
    svg.push_str(&polyline(&series(&modified), "#2ca02c"));
    svg.push_str(
        "<text x=\"465\" y=\"58\" font-size=\"12\" fill=\"#d62728\">energy</text>\n\
         <text x=\"465\" y=\"72\" font-size=\"12\" fill=\"#2ca02c\">modified energy</text>\n",
    );
    svg.push_str("</svg>\n");

    if let Some(parent) = out_path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent)?;
        }
    }
    fs::write(out_path, svg)?;
    Ok(())
}
