//! Run every bundled figure preset, writing the CSV and SVG artifacts to
//! ./out (or $SKEWFLOW_OUT_DIR). Equivalent to `skewflow run <preset>` for
//! each name.
//!
//! ```bash
//! cargo run --example figure_presets
//! ```

use skewflow::harness::{load_config, resolve_config_path, run_experiment};

fn main() -> skewflow::Result<()> {
    let presets = [
        "fig_quad1",
        "fig_quad2",
        "fig_logcosh1",
        "fig_logcosh2",
        "fig_logcosh3",
        "fig_quadlogcosh1",
        "fig_quadlogcosh2",
        "fig_cubic1",
        "fig_cubic2",
    ];
    for name in presets {
        let config = load_config(&resolve_config_path(name)?)?;
        let out = run_experiment(&config)?;
        println!("{}", out.summary_line());
        for path in &out.written {
            println!("  wrote {}", path.display());
        }
    }
    Ok(())
}
