//! CSV/JSON writers and the human-readable summary.

use std::io::{self, Write};

use crate::run::Report;

/// `x,cdf[,density]`, 17 significant digits per value.
pub fn write_csv<W: Write>(report: &Report, mut out: W) -> io::Result<()> {
    let e = &report.estimate;
    match &e.density {
        Some(_) => writeln!(out, "x,cdf,density")?,
        None => writeln!(out, "x,cdf")?,
    }
    for i in 0..e.len() {
        write!(out, "{:.16e},{:.16e}", e.x[i], e.cdf[i])?;
        if let Some(d) = &e.density {
            write!(out, ",{:.16e}", d[i])?;
        }
        writeln!(out)?;
    }
    out.flush()
}

pub fn write_json<W: Write>(report: &Report, mut out: W) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut out, report)?;
    writeln!(out)?;
    out.flush()
}

/// `# key: value` lines for the extras the CSV table cannot carry.
pub fn write_summary<W: Write>(report: &Report, mut out: W) -> io::Result<()> {
    for q in &report.quantiles {
        writeln!(out, "# quantile p={} x={:.16e}", q.p, q.x)?;
    }
    if let Some(b) = &report.error_bound {
        let label = if b.heuristic { " (heuristic M2)" } else { "" };
        writeln!(
            out,
            "# error bound{label}: {:.6e} (M2={:.6e}, eps*={:.6e}, source={:?})",
            b.report.bound, b.report.m2, b.report.epsilon_star, b.report.m2_source
        )?;
    }
    if let Some(r) = &report.reference {
        writeln!(
            out,
            "# reference N={}: max |cdf difference| = {:.6e}",
            r.resolution, r.max_cdf_difference
        )?;
        for q in &r.quantiles {
            writeln!(out, "# reference quantile p={} x={:.16e}", q.p, q.x)?;
        }
    }
    if let Some(o) = &report.oracle {
        writeln!(
            out,
            "# oracle: {} atoms, max midpoint error {:.6e} over {} points, max grid error {:.6e}",
            o.atoms, o.max_midpoint_error, o.midpoints_checked, o.max_grid_error
        )?;
        if let Some(b) = &o.error_bound {
            writeln!(
                out,
                "# oracle error bound: {:.6e} (M2={:.6e})",
                b.bound, b.m2
            )?;
        }
    }
    Ok(())
}
