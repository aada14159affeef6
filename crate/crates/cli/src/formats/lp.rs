//! Reader for the CPLEX LP subset written by
//! [`mwc_core::lp::LpProblem::to_cplex_lp`]: one objective row, one
//! constraint per line, `free` and two-sided bounds.
//!
//! Variables named `x<index>` keep their index; any other naming numbers
//! variables by first appearance and keeps the names.

use std::collections::HashMap;

use mwc_core::lp::{LpProblem, Objective, RowSense};

use super::FormatError;

#[derive(PartialEq)]
enum Section {
    Start,
    Objective,
    Rows,
    Bounds,
    End,
}

type Terms = Vec<(String, f64)>;

fn bad(line: usize, msg: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, msg: msg.into() }
}

fn parse_num(line: usize, s: &str) -> Result<f64, FormatError> {
    match s {
        "+inf" | "inf" | "+infinity" | "infinity" => Ok(f64::INFINITY),
        "-inf" | "-infinity" => Ok(f64::NEG_INFINITY),
        _ => s.parse().map_err(|_| bad(line, format!("bad number {s:?}"))),
    }
}

/// `[+|-] coef name` repeated; `coef` may be omitted.
fn parse_expr(line: usize, toks: &[&str]) -> Result<Terms, FormatError> {
    let mut out = Vec::new();
    let mut at = 0;
    while at < toks.len() {
        let mut sign = 1.0;
        if toks[at] == "+" || toks[at] == "-" {
            if toks[at] == "-" {
                sign = -1.0;
            }
            at += 1;
        }
        let tok = toks.get(at).ok_or_else(|| bad(line, "dangling sign"))?;
        let (coef, name) = match tok.parse::<f64>() {
            Ok(c) => {
                let name = toks.get(at + 1).ok_or_else(|| bad(line, "coefficient without variable"))?;
                at += 2;
                (c, *name)
            }
            Err(_) => {
                at += 1;
                (1.0, *tok)
            }
        };
        if name.parse::<f64>().is_ok() {
            return Err(bad(line, format!("expected a variable, found {name:?}")));
        }
        out.push((name.to_string(), sign * coef));
    }
    Ok(out)
}

fn strip_label<'a>(toks: &'a [&'a str]) -> &'a [&'a str] {
    match toks.first() {
        Some(t) if t.ends_with(':') => &toks[1..],
        _ => toks,
    }
}

pub fn parse_cplex_lp(text: &str) -> Result<LpProblem, FormatError> {
    let mut sense = None;
    let mut section = Section::Start;
    let mut objective: Terms = Vec::new();
    let mut rows: Vec<(Terms, RowSense, f64)> = Vec::new();
    let mut bounds: Vec<(String, f64, f64)> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let n = n + 1;
        let line = raw.split('\\').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        match line.to_ascii_lowercase().as_str() {
            "minimize" | "maximize" => {
                if section != Section::Start {
                    return Err(bad(n, "objective sense repeated"));
                }
                sense = Some(if line.eq_ignore_ascii_case("minimize") {
                    Objective::Minimize
                } else {
                    Objective::Maximize
                });
                section = Section::Objective;
                continue;
            }
            "subject to" => {
                section = Section::Rows;
                continue;
            }
            "bounds" => {
                section = Section::Bounds;
                continue;
            }
            "end" => {
                section = Section::End;
                continue;
            }
            _ => {}
        }
        let toks: Vec<&str> = line.split_whitespace().collect();
        match section {
            Section::Start | Section::End => return Err(bad(n, "text outside a section")),
            Section::Objective => objective.extend(parse_expr(n, strip_label(&toks))?),
            Section::Rows => {
                let toks = strip_label(&toks);
                let at = toks
                    .iter()
                    .position(|t| matches!(*t, "<=" | ">=" | "=" | "=<" | "=>"))
                    .ok_or_else(|| bad(n, "constraint without relation"))?;
                if at + 2 != toks.len() {
                    return Err(bad(n, "expected a single right-hand side"));
                }
                let rel = match toks[at] {
                    "<=" | "=<" => RowSense::Le,
                    ">=" | "=>" => RowSense::Ge,
                    _ => RowSense::Eq,
                };
                rows.push((parse_expr(n, &toks[..at])?, rel, parse_num(n, toks[at + 1])?));
            }
            Section::Bounds => match toks.as_slice() {
                [name, free] if free.eq_ignore_ascii_case("free") => {
                    bounds.push((name.to_string(), f64::NEG_INFINITY, f64::INFINITY));
                }
                [lo, "<=", name, "<=", hi] => {
                    bounds.push((name.to_string(), parse_num(n, lo)?, parse_num(n, hi)?));
                }
                [name, ">=", lo] => bounds.push((name.to_string(), parse_num(n, lo)?, f64::INFINITY)),
                [name, "<=", hi] => bounds.push((name.to_string(), 0.0, parse_num(n, hi)?)),
                [name, "=", v] => {
                    let v = parse_num(n, v)?;
                    bounds.push((name.to_string(), v, v));
                }
                _ => return Err(bad(n, "unsupported bound")),
            },
        }
    }
    if section != Section::End {
        return Err(bad(text.lines().count(), "missing End"));
    }
    let sense = sense.ok_or_else(|| bad(0, "missing objective sense"))?;

    // variable table
    let mentioned = objective
        .iter()
        .map(|(v, _)| v)
        .chain(rows.iter().flat_map(|(t, _, _)| t.iter().map(|(v, _)| v)))
        .chain(bounds.iter().map(|(v, _, _)| v));
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut order: Vec<String> = Vec::new();
    for v in mentioned {
        if !index.contains_key(v) {
            index.insert(v.clone(), order.len());
            order.push(v.clone());
        }
    }
    let numbered: Option<Vec<usize>> = order
        .iter()
        .map(|v| v.strip_prefix('x').and_then(|d| d.parse().ok()))
        .collect();
    let num_vars;
    let mut renamed = false;
    match numbered {
        Some(ids) => {
            num_vars = ids.iter().max().map_or(0, |m| m + 1);
            for (v, id) in order.iter().zip(ids) {
                index.insert(v.clone(), id);
            }
        }
        None => {
            num_vars = order.len();
            renamed = true;
        }
    }
    let mut p = LpProblem::new(num_vars, sense);
    if renamed {
        for (j, v) in order.iter().enumerate() {
            p.set_name(j, v.clone());
        }
    }
    let collect = |terms: &Terms| {
        let mut acc: Vec<(usize, f64)> = Vec::new();
        for (v, c) in terms {
            let j = index[v];
            match acc.iter_mut().find(|(i, _)| *i == j) {
                Some(slot) => slot.1 += c,
                None => acc.push((j, *c)),
            }
        }
        acc
    };
    for (j, c) in collect(&objective) {
        p.set_cost(j, c);
    }
    for (terms, rel, rhs) in &rows {
        let coeffs: Vec<(usize, f64)> = collect(terms).into_iter().filter(|&(_, c)| c != 0.0).collect();
        p.add_constraint(&coeffs, *rel, *rhs);
    }
    for (v, lo, hi) in bounds {
        p.set_bounds(index[&v], lo, hi);
    }
    Ok(p)
}
