//! Density-scan CSV: `alignment,x0,...,x{k-1},mean,stderr,method`, one row
//! per segment, where `x` is the segment midpoint and `alignment` reads
//! `i-j`.

use std::fmt::Write as _;

use mwc_core::density::{DensityMethod, DensityReport};
use mwc_core::Alignment;

use super::FormatError;

#[derive(Clone, Debug, PartialEq)]
pub struct DensityRow {
    pub alignment: Alignment,
    pub center: Vec<f64>,
    pub mean: f64,
    pub stderr: f64,
    pub method: DensityMethod,
}

fn method_name(m: DensityMethod) -> &'static str {
    match m {
        DensityMethod::Exact => "exact",
        DensityMethod::MonteCarlo => "mc",
    }
}

pub fn write_density_csv(r: &DensityReport) -> String {
    let k = r.entries.first().map_or(0, |e| e.segment.k());
    let mut s = String::from("alignment");
    for l in 0..k {
        let _ = write!(s, ",x{l}");
    }
    s.push_str(",mean,stderr,method\n");
    for e in &r.entries {
        let _ = write!(s, "{}-{}", e.alignment.i(), e.alignment.j());
        for x in e.segment.midpoint().coords() {
            let _ = write!(s, ",{x}");
        }
        let _ = writeln!(s, ",{},{},{}", e.mean, e.stderr, method_name(e.method));
    }
    s
}

pub fn parse_density_csv(text: &str) -> Result<Vec<DensityRow>, FormatError> {
    let bad = |line: usize, msg: &str| FormatError::Syntax { line, msg: msg.into() };
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| bad(0, "empty file"))?;
    let cols: Vec<&str> = header.split(',').collect();
    let k = cols.len().checked_sub(4).ok_or_else(|| bad(1, "too few columns"))?;
    let valid = cols[0] == "alignment"
        && cols[1..=k].iter().enumerate().all(|(l, c)| *c == format!("x{l}"))
        && cols[k + 1..] == ["mean", "stderr", "method"];
    if !valid {
        return Err(bad(1, "unexpected header"));
    }
    let mut rows = Vec::new();
    for (n, line) in lines {
        let n = n + 1;
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != k + 4 {
            return Err(bad(n, "wrong number of fields"));
        }
        let num = |s: &str| s.parse::<f64>().map_err(|_| bad(n, "bad number"));
        let (i, j) = f[0].split_once('-').ok_or_else(|| bad(n, "bad alignment"))?;
        let i = i.parse().map_err(|_| bad(n, "bad alignment"))?;
        let j = j.parse().map_err(|_| bad(n, "bad alignment"))?;
        let method = match f[k + 3] {
            "exact" => DensityMethod::Exact,
            "mc" => DensityMethod::MonteCarlo,
            _ => return Err(bad(n, "method must be exact or mc")),
        };
        rows.push(DensityRow {
            alignment: Alignment::new(i, j)?,
            center: f[1..=k].iter().map(|s| num(s)).collect::<Result<_, _>>()?,
            mean: num(f[k + 1])?,
            stderr: num(f[k + 2])?,
            method,
        });
    }
    Ok(rows)
}
