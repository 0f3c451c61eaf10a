//! Output files: heatmap grid (CSV and plain PGM), peak table, report.

use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use super::report::{PeakRecord, RunReport};
use crate::error::{Error, Result};
use crate::imaging::Heatmap;

pub const HEATMAP_CSV: &str = "heatmap.csv";
pub const HEATMAP_PGM: &str = "heatmap.pgm";
pub const PEAKS_CSV: &str = "peaks.csv";
pub const REPORT_JSON: &str = "report.json";
pub const TIMINGS_JSON: &str = "timings.json";

/// `x,y,indicator`, one node per line in row-major order. Floats use the
/// shortest representation that parses back to the same value.
pub fn write_heatmap_csv(h: &Heatmap, mut out: impl Write) -> io::Result<()> {
    writeln!(out, "x,y,indicator")?;
    for iy in 0..h.ny {
        for ix in 0..h.nx {
            writeln!(out, "{:?},{:?},{:?}", h.x(ix), h.y(iy), h.value(ix, iy))?;
        }
    }
    Ok(())
}

/// Gray levels 0..=255 of `log10(indicator)` rescaled linearly between the
/// grid's minimum and maximum; a constant grid maps to 0. Rows run from
/// `ymax` (top) down to `ymin`.
pub fn gray_levels(h: &Heatmap) -> Vec<u8> {
    let logs: Vec<f64> = h.values.iter().map(|v| v.log10()).collect();
    let lo = logs.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let span = hi - lo;
    let mut levels = Vec::with_capacity(logs.len());
    for iy in (0..h.ny).rev() {
        for ix in 0..h.nx {
            let l = logs[iy * h.nx + ix];
            let g = if span > 0.0 {
                ((l - lo) / span * 255.0).round()
            } else {
                0.0
            };
            levels.push(g.clamp(0.0, 255.0) as u8);
        }
    }
    levels
}

/// Plain (ASCII, `P2`) 8-bit portable graymap of [`gray_levels`].
pub fn write_heatmap_pgm(h: &Heatmap, mut out: impl Write) -> io::Result<()> {
    writeln!(out, "P2")?;
    writeln!(out, "{} {}", h.nx, h.ny)?;
    writeln!(out, "255")?;
    for row in gray_levels(h).chunks(h.nx.max(1)) {
        let line: Vec<String> = row.iter().map(u8::to_string).collect();
        writeln!(out, "{}", line.join(" "))?;
    }
    Ok(())
}

pub fn write_peaks_csv(peaks: &[PeakRecord], mut out: impl Write) -> io::Result<()> {
    writeln!(out, "x,y,indicator,matched_error")?;
    for p in peaks {
        let err = p
            .matched_error
            .map(|e| format!("{e:?}"))
            .unwrap_or_default();
        writeln!(out, "{:?},{:?},{:?},{}", p.x, p.y, p.indicator, err)?;
    }
    Ok(())
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::io(path, e))
}

fn write_file(
    path: &Path,
    f: impl FnOnce(&mut BufWriter<File>) -> io::Result<()>,
) -> Result<PathBuf> {
    let mut w = create(path)?;
    f(&mut w)
        .and_then(|_| w.flush())
        .map_err(|e| Error::io(path, e))?;
    Ok(path.to_path_buf())
}

/// Writes `heatmap.csv` and `heatmap.pgm` into `dir`.
pub fn emit_heatmap(h: &Heatmap, dir: &Path) -> Result<(PathBuf, PathBuf)> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let csv = write_file(&dir.join(HEATMAP_CSV), |w| write_heatmap_csv(h, w))?;
    let pgm = write_file(&dir.join(HEATMAP_PGM), |w| write_heatmap_pgm(h, w))?;
    Ok((csv, pgm))
}

/// Writes the peak table, `report.json` (without wall-clock timings, so that
/// identical runs give identical bytes) and `timings.json`.
pub fn emit_report(report: &RunReport, dir: &Path) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut written = vec![write_file(&dir.join(PEAKS_CSV), |w| {
        write_peaks_csv(&report.peaks, w)
    })?];

    let mut stable = report.clone();
    let timings = stable.timings.take();
    let json = serde_json::to_string_pretty(&stable)?;
    written.push(write_file(&dir.join(REPORT_JSON), |w| {
        writeln!(w, "{json}")
    })?);
    if let Some(t) = timings {
        let json = serde_json::to_string_pretty(&t)?;
        written.push(write_file(&dir.join(TIMINGS_JSON), |w| {
            writeln!(w, "{json}")
        })?);
    }
    Ok(written)
}
