//! CSV series for external plotting. Each file starts with `#` comment
//! lines describing its columns, followed by a header row.

use std::fs::File;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::Context;
use hk_core::filtration::HilbertTable;
use hk_core::hk::HKReport;

fn write_series(path: &Path, comments: &[&str], header: &[&str], rows: &[Vec<String>]) -> anyhow::Result<()> {
    let mut file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    for c in comments {
        writeln!(file, "# {c}")?;
    }
    let mut w = csv::Writer::from_writer(file);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Writes one CSV per series into `dir` and returns the paths.
pub fn emit_plot_data(report: &HKReport, dir: &Path) -> anyhow::Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let mut emit = |name: &str, comments: &[&str], header: &[&str], rows: Vec<Vec<String>>| -> anyhow::Result<()> {
        let path = dir.join(name);
        write_series(&path, comments, header, &rows)?;
        written.push(path);
        Ok(())
    };

    let grid = |pick: &dyn Fn(&hk_core::hk::QRow, usize) -> Vec<String>| -> Vec<Vec<String>> {
        let mut rows = Vec::new();
        for row in &report.rows {
            for n in 0..row.ordinary.len() {
                let mut r = vec![row.q.to_string(), n.to_string()];
                r.extend(pick(row, n));
                rows.push(r);
            }
        }
        rows
    };

    emit(
        "ehk_normalized.csv",
        &[
            "ordinary powers of the Frobenius power: length = l(R/(I^[q])^n)",
            "normalized = length/q^2 as an exact fraction; approx is its float value",
        ],
        &["q", "n", "length", "normalized", "approx"],
        grid(&|row, n| {
            vec![
                row.ordinary[n].to_string(),
                row.normalized_ordinary[n].to_string(),
                format!("{:.6}", row.normalized_ordinary[n].to_f64()),
            ]
        }),
    )?;
    emit(
        "rr_normalized.csv",
        &[
            "Ratliff-Rush filtration: length = l(R/RR((I^[q])^n))",
            "normalized = length/q^2 as an exact fraction; approx is its float value",
        ],
        &["q", "n", "length", "normalized", "approx"],
        grid(&|row, n| {
            vec![
                row.ratliff_rush[n].to_string(),
                row.normalized_rr[n].to_string(),
                format!("{:.6}", row.normalized_rr[n].to_f64()),
            ]
        }),
    )?;
    emit(
        "gaps.csv",
        &["gap = l(RR((I^[q])^n) / (I^[q])^n) = l(R/(I^[q])^n) - l(R/RR((I^[q])^n))"],
        &["q", "n", "gap"],
        grid(&|row, n| vec![row.gaps[n].to_string()]),
    )?;
    emit(
        "f_curves.csv",
        &["f = l(R/(I^[q])^n)/q^2 - e(I)*C(n+1,2) + L1*n with L1 = e1(I^[q])/q^2"],
        &["q", "n", "f", "approx"],
        grid(&|row, n| vec![row.f[n].to_string(), format!("{:.6}", row.f[n].to_f64())]),
    )?;
    emit(
        "coefficients.csv",
        &["exact Hilbert coefficients of I^[q]; L1 = e1/q^2, L2 = e2/q^2"],
        &["q", "e0", "e1", "e2", "L1", "L2"],
        report
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.q.to_string(),
                    r.e0.to_string(),
                    r.e1.to_string(),
                    r.e2.to_string(),
                    r.l1.to_string(),
                    r.l2.to_string(),
                ]
            })
            .collect(),
    )?;
    Ok(written)
}

/// A Hilbert table as CSV text with columns `n, length, delta, delta2`.
pub fn hilbert_csv(table: &HilbertTable) -> anyhow::Result<String> {
    let mut out = format!("# {}: length = l(R/F_n), delta and delta2 are backward differences\n", table.label);
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["n", "length", "delta", "delta2"])?;
    for row in table.rows() {
        w.write_record(row.iter().map(|v| v.to_string()))?;
    }
    out.push_str(&String::from_utf8(w.into_inner()?)?);
    Ok(out)
}
