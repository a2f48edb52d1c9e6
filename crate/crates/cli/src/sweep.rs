//! Certificate summaries over a parameter grid.

use std::path::Path;

use rayon::prelude::*;

use trinoid::certifier::{certify, Certificate};
use trinoid::che::{SignTuple, TrinoidParams};
use trinoid::exactalg::Rational;
use trinoid::monodromy::{end_weights, WeightReport};

use crate::json::fmt_float;
use crate::Failure;

const HEADER: [&str; 18] = [
    "w0", "w1", "r_hat0", "r_hat1", "p", "k0", "sign_pp", "sign_pm", "sign_mp", "sign_mm", "parity_plus", "verdict",
    "w_inf", "balanced", "balance_0", "balance_1", "balance_inf", "error",
];

fn read_grid(path: &Path) -> Result<Vec<Vec<String>>, Failure> {
    let mut rd = csv::ReaderBuilder::new().trim(csv::Trim::All).flexible(true).from_path(path).map_err(|e| Failure::Io(e.to_string()))?;
    let mut rows = Vec::new();
    for rec in rd.records() {
        let rec = rec.map_err(|e| Failure::Io(e.to_string()))?;
        rows.push(rec.iter().map(str::to_string).collect());
    }
    Ok(rows)
}

fn weight_fields(w: &WeightReport) -> Vec<String> {
    let mut v = vec![w.w_inf.map(fmt_float).unwrap_or_default(), w.balanced.to_string()];
    for end in ["0", "1", "inf"] {
        v.push(w.balancing.iter().find(|b| b.end == end).map(|b| b.holds.to_string()).unwrap_or_default());
    }
    v
}

fn certificate_fields(c: &Certificate) -> Vec<String> {
    let mut v = vec![c.k0.to_string()];
    for s in SignTuple::ALL {
        v.push(c.sign_table.get(s.label()).cloned().unwrap_or_default());
    }
    v.push(c.parity_plus.to_string());
    v.push(format!("{:?}", c.verdict));
    v
}

/// One output row. Failures stay local to their row.
fn row(fields: &[String], t0: &Rational) -> Vec<String> {
    let mut out: Vec<String> = fields.iter().take(5).cloned().collect();
    out.resize(5, String::new());
    let fail = |mut out: Vec<String>, kind: &str| {
        out.extend(["", "", "", "", "", "", "error", "", "", "", "", ""].map(String::from));
        out.push(kind.to_string());
        out
    };
    if fields.len() != 5 {
        return fail(out, "domain");
    }
    let theta = match TrinoidParams::parse(&fields.join(",")) {
        Ok(t) => t,
        Err(e) => return fail(out, e.kind()),
    };
    match certify(&theta, t0) {
        Ok(c) => {
            out.extend(certificate_fields(&c));
            out.extend(weight_fields(&end_weights(&theta)));
            out.push(String::new());
            out
        }
        Err(e) => fail(out, e.kind()),
    }
}

/// Rows come back in grid order whatever the job count.
pub fn run(grid: &Path, t0: &Rational, jobs: usize) -> Result<String, Failure> {
    let rows = read_grid(grid)?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().map_err(|e| Failure::Io(e.to_string()))?;
    let results: Vec<Vec<String>> = pool.install(|| rows.par_iter().map(|r| row(r, t0)).collect());
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Failure::Io(e.to_string());
    w.write_record(HEADER).map_err(io)?;
    for r in &results {
        w.write_record(r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Failure::Io(e.to_string()))
}
