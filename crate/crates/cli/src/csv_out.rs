//! CSV time series for simulation runs.

use std::io::Write;

use anyhow::Result;

use crossdiff_core::simulate::SimResult;

/// Write `t, entropy, dissipation, residual, mass_i…, min_i…, max_i…`
/// rows, one per recorded frame.
pub fn write_time_series(out: &mut impl Write, result: &SimResult, n: usize) -> Result<()> {
    write!(out, "t,entropy,dissipation,residual")?;
    for label in ["mass", "min", "max"] {
        for i in 1..=n {
            write!(out, ",{label}_{i}")?;
        }
    }
    writeln!(out)?;
    for frame in &result.frames {
        write!(
            out,
            "{:.12e},{:.12e},{:.12e},{:.12e}",
            frame.t, frame.entropy, frame.dissipation, frame.residual
        )?;
        for series in [&frame.mass, &frame.min, &frame.max] {
            for v in series.iter() {
                write!(out, ",{v:.12e}")?;
            }
        }
        writeln!(out)?;
    }
    Ok(())
}

/// Write per-frame state snapshots as CSV blocks separated by `# t=` lines.
pub fn write_snapshots(
    out: &mut impl Write,
    result: &SimResult,
    n: usize,
    length: f64,
) -> Result<()> {
    for frame in &result.frames {
        writeln!(out, "# t={:.12e}", frame.t)?;
        write!(out, "x")?;
        for i in 1..=n {
            write!(out, ",u_{i}")?;
        }
        writeln!(out)?;
        let cells = frame.state.len() / n;
        let dx = length / cells as f64;
        for j in 0..cells {
            write!(out, "{:.12e}", (j as f64 + 0.5) * dx)?;
            for i in 0..n {
                write!(out, ",{:.12e}", frame.state[j * n + i])?;
            }
            writeln!(out)?;
        }
    }
    Ok(())
}
