use num_bigint::BigInt;
use serde_json::{json, Value};

use twopop::analysis::{
    basic_identities_check, central_sequence_check, half_check, log_concavity_check, wilf_check,
    CheckReport, Status, IDENTITY_LABELS, WILF_CLASSES, WILF_MAX_N,
};
use twopop::enumeration::{
    a_table, bfile, brute_force_triangle, expand_bivariate, generate_sortable, total_counts,
    BivariateRationalGF, CountMethod, CountTriangle,
};
use twopop::patterns::{
    find_forbidden_pattern, is_sortable_by_blocks, is_sortable_by_divided, is_sortable_by_patterns,
};
use twopop::polyomino::{
    enumerate_polyominoes, list_polyominoes, perm_to_polyomino, perm_to_strip, polyomino_to_perm,
    right_free_distribution, CylinderPolyomino,
};
use twopop::popstack::{is_two_pop_sortable, pop_pass};
use twopop::{Error, Permutation, Policy};

use crate::output::{bigs, csv, joined, json, out, outln, table, to_json, unsupported};
use crate::{BijectionArgs, EnumerateArgs, Format, PolyominoArgs, Verdict};

type Outcome = Result<Verdict, Error>;

fn verdict(ok: bool) -> Verdict {
    if ok {
        Verdict::Ok
    } else {
        Verdict::False
    }
}

pub fn sort(pi: &Permutation, passes: usize, fmt: Format) -> Outcome {
    let mut stages = vec![pi.clone()];
    while stages.len() <= passes && !stages.last().unwrap().is_identity() {
        stages.push(pop_pass(stages.last().unwrap()));
    }
    let sorted = stages.last().unwrap().is_identity();
    let rows: Vec<Vec<String>> = stages
        .iter()
        .enumerate()
        .map(|(i, s)| vec![i.to_string(), s.to_string()])
        .collect();
    match fmt {
        Format::Table => {
            out!("{}", table(&["pass", "permutation"], &rows));
            let used = stages.len() - 1;
            outln!("sorted: {sorted} (passes used {used} of {passes})");
        }
        Format::Csv => out!("{}", csv(&["pass", "permutation"], &rows)?),
        Format::Json => out!(
            "{}",
            json(&json!({
                "permutation": pi,
                "passes": passes,
                "stages": stages,
                "sorted": sorted,
            }))
        ),
        Format::Bfile => return Err(unsupported(fmt, "sort")),
    }
    Ok(verdict(sorted))
}

pub fn classify(pi: &Permutation, fmt: Format) -> Outcome {
    let verdicts = [
        ("simulation", is_two_pop_sortable(pi)),
        ("blocks", is_sortable_by_blocks(pi)),
        ("divided", is_sortable_by_divided(pi)),
        ("patterns", is_sortable_by_patterns(pi)),
    ];
    let sortable = verdicts[0].1;
    if verdicts.iter().any(|v| v.1 != sortable) {
        return Err(Error::Internal(format!(
            "criteria disagree on {pi}: {verdicts:?}"
        )));
    }
    let witness = find_forbidden_pattern(pi);
    let word = |b: bool| if b { "sortable" } else { "unsortable" };
    match fmt {
        Format::Table => {
            let mut rows: Vec<Vec<String>> = verdicts
                .iter()
                .map(|(name, v)| vec![name.to_string(), word(*v).to_string()])
                .collect();
            if let Some(w) = &witness {
                rows.push(vec![
                    "witness".into(),
                    format!(
                        "{} at positions {} (values {})",
                        w.pattern,
                        joined(&w.positions),
                        joined(&w.values)
                    ),
                ]);
            }
            out!("{}", table(&["criterion", "verdict"], &rows));
        }
        Format::Csv => {
            let rows: Vec<Vec<String>> = verdicts
                .iter()
                .map(|(name, v)| vec![name.to_string(), v.to_string()])
                .collect();
            out!("{}", csv(&["criterion", "sortable"], &rows)?);
        }
        Format::Json => {
            let mut obj = json!({ "permutation": pi, "sortable": sortable, "witness": witness });
            for (name, v) in verdicts {
                obj[name] = json!(v);
            }
            out!("{}", json(&obj));
        }
        Format::Bfile => return Err(unsupported(fmt, "classify")),
    }
    Ok(verdict(sortable))
}

fn triangle_by(method: CountMethod, n: usize, policy: &Policy) -> Result<CountTriangle, Error> {
    match method {
        CountMethod::Recurrence => Ok(a_table(n)),
        CountMethod::Gf => Ok(expand_bivariate(
            &BivariateRationalGF::two_pop_by_ascents(),
            n,
        )),
        CountMethod::Bruteforce => Ok(brute_force_triangle(n, policy)?.0),
        CountMethod::Prefix => {
            let mut rows = Vec::with_capacity(n + 1);
            for len in 0..=n {
                let mut row = vec![BigInt::from(0); len.max(1)];
                for pi in generate_sortable(len, policy)? {
                    row[pi.ascent_count()] += 1;
                }
                rows.push(row);
            }
            Ok(CountTriangle::from_rows(rows))
        }
        CountMethod::Linear => Err(Error::InvalidInput(
            "the linear recurrence has no refinement by ascents".into(),
        )),
    }
}

/// Runs every method over the range it reaches; returns the coverage per method or
/// the first disagreement.
fn verify(
    n: usize,
    by_ascents: bool,
    policy: &Policy,
) -> Result<Result<Vec<(CountMethod, usize)>, String>, Error> {
    let reference = total_counts(n, CountMethod::Recurrence, policy)?;
    let ref_tri = a_table(n);
    let mut coverage = Vec::new();
    for method in CountMethod::ALL {
        let reach = if method.is_exhaustive() {
            n.min(policy.max_brute)
        } else {
            n
        };
        let counts = total_counts(reach, method, policy)?;
        if let Some(i) = (1..=reach).find(|&i| counts[i] != reference[i]) {
            return Ok(Err(format!(
                "{method} differs from recurrence at n = {i}: {} != {}",
                counts[i], reference[i]
            )));
        }
        if by_ascents && method != CountMethod::Linear {
            let tri = triangle_by(method, reach, policy)?;
            if let Some((i, k, x, y)) = tri.first_difference(&ref_tri.truncated(reach)) {
                return Ok(Err(format!(
                    "{method} differs from recurrence at (n, k) = ({i}, {k}): {x} != {y}"
                )));
            }
        }
        coverage.push((method, reach));
    }
    Ok(Ok(coverage))
}

pub fn enumerate(args: &EnumerateArgs, policy: &Policy, fmt: Format) -> Outcome {
    let n = args.n;
    if n == 0 {
        return Err(Error::InvalidInput("--n must be at least 1".into()));
    }
    let checked = if args.verify {
        Some(verify(n, args.by_ascents, policy)?)
    } else {
        None
    };

    let first_row = if args.all_rows { 1 } else { n };
    if args.by_ascents {
        let tri = triangle_by(args.method, n, policy)?;
        let rows: Vec<(usize, &[BigInt])> = (first_row..=n).map(|i| (i, tri.row(i))).collect();
        match fmt {
            Format::Table => {
                let lines: Vec<Vec<String>> = rows
                    .iter()
                    .map(|(i, r)| vec![i.to_string(), joined(r)])
                    .collect();
                out!("{}", table(&["n", "counts by ascents"], &lines));
            }
            Format::Csv => {
                let lines: Vec<Vec<String>> = rows
                    .iter()
                    .flat_map(|(i, r)| {
                        r.iter()
                            .enumerate()
                            .map(move |(k, c)| vec![i.to_string(), k.to_string(), c.to_string()])
                    })
                    .collect();
                out!("{}", csv(&["n", "k", "count"], &lines)?);
            }
            Format::Bfile => {
                let flat: Vec<BigInt> = rows.iter().flat_map(|(_, r)| r.iter().cloned()).collect();
                out!("{}", bfile(&flat, 1));
            }
            Format::Json => {
                let rows: Vec<Value> = rows
                    .iter()
                    .map(|(i, r)| json!({"n": i, "counts": bigs(r)}))
                    .collect();
                let mut obj = json!({"method": args.method.name(), "rows": rows});
                if let Some(c) = &checked {
                    obj["verification"] = verification_json(c);
                }
                out!("{}", json(&obj));
            }
        }
    } else {
        let counts = total_counts(n, args.method, policy)?;
        match fmt {
            Format::Table => {
                let lines: Vec<Vec<String>> = (1..=n)
                    .map(|i| vec![i.to_string(), counts[i].to_string()])
                    .collect();
                out!("{}", table(&["n", "count"], &lines));
            }
            Format::Csv => {
                let lines: Vec<Vec<String>> = (1..=n)
                    .map(|i| vec![i.to_string(), counts[i].to_string()])
                    .collect();
                out!("{}", csv(&["n", "count"], &lines)?);
            }
            Format::Bfile => out!("{}", bfile(&counts[1..], 1)),
            Format::Json => {
                let mut obj = json!({"method": args.method.name(), "offset": 1, "counts": bigs(&counts[1..])});
                if let Some(c) = &checked {
                    obj["verification"] = verification_json(c);
                }
                out!("{}", json(&obj));
            }
        }
    }

    match checked {
        None => Ok(Verdict::Ok),
        Some(Ok(coverage)) => {
            if fmt == Format::Table {
                let parts: Vec<String> = coverage
                    .iter()
                    .map(|(m, r)| format!("{m} (n <= {r})"))
                    .collect();
                outln!("verified: {}", parts.join(", "));
            }
            Ok(Verdict::Ok)
        }
        Some(Err(msg)) => {
            eprintln!("verification failed: {msg}");
            Ok(Verdict::False)
        }
    }
}

fn verification_json(checked: &Result<Vec<(CountMethod, usize)>, String>) -> Value {
    match checked {
        Ok(coverage) => json!({
            "status": "pass",
            "methods": coverage.iter().map(|(m, r)| json!({"method": m.name(), "max_n": r})).collect::<Vec<_>>(),
        }),
        Err(msg) => json!({"status": "fail", "mismatch": msg}),
    }
}

pub fn polyomino(args: &PolyominoArgs, policy: &Policy, fmt: Format) -> Outcome {
    let (w, size) = (args.width, args.size);
    if args.list {
        let all = list_polyominoes(w, size, policy)?;
        match fmt {
            Format::Table => {
                for p in &all {
                    outln!("{p}");
                    if args.render {
                        outln!("{}", p.render_rows());
                    }
                }
            }
            Format::Csv => {
                let rows: Vec<Vec<String>> = all
                    .iter()
                    .map(|p| vec![p.to_string(), p.right_free_count().to_string()])
                    .collect();
                out!("{}", csv(&["polyomino", "right_free"], &rows)?);
            }
            Format::Json => out!(
                "{}",
                json(&json!({
                    "width": w,
                    "size": size,
                    "count": all.len(),
                    "polyominoes": all.iter().map(|p| p.cells()).collect::<Vec<_>>(),
                }))
            ),
            Format::Bfile => return Err(unsupported(fmt, "polyomino --list")),
        }
    } else if args.by_right_free {
        let hist = right_free_distribution(w, size, policy)?;
        let rows: Vec<Vec<String>> = hist
            .iter()
            .enumerate()
            .map(|(k, c)| vec![(k + 1).to_string(), c.to_string()])
            .collect();
        match fmt {
            Format::Table => out!("{}", table(&["right_free", "count"], &rows)),
            Format::Csv => out!("{}", csv(&["right_free", "count"], &rows)?),
            Format::Json => out!(
                "{}",
                json(&json!({"width": w, "size": size, "by_right_free": hist}))
            ),
            Format::Bfile => return Err(unsupported(fmt, "polyomino --by-right-free")),
        }
    } else {
        match fmt {
            Format::Bfile => {
                let counts = (1..=size)
                    .map(|s| enumerate_polyominoes(w, s, policy).map(BigInt::from))
                    .collect::<Result<Vec<_>, _>>()?;
                out!("{}", bfile(&counts, 1));
            }
            _ => {
                let count = enumerate_polyominoes(w, size, policy)?;
                let row = vec![vec![w.to_string(), size.to_string(), count.to_string()]];
                match fmt {
                    Format::Table => out!("{}", table(&["width", "size", "count"], &row)),
                    Format::Csv => out!("{}", csv(&["width", "size", "count"], &row)?),
                    _ => out!(
                        "{}",
                        json(&json!({"width": w, "size": size, "count": count}))
                    ),
                }
            }
        }
    }
    Ok(Verdict::Ok)
}

fn describe_forward(
    pi: &Permutation,
    p: &CylinderPolyomino,
    render: bool,
    fmt: Format,
) -> Result<(), Error> {
    let strip = perm_to_strip(pi, p.width())?;
    match fmt {
        Format::Table => {
            outln!("{p}");
            if render {
                out!("{}", p.render_rows());
            }
        }
        Format::Csv => out!(
            "{}",
            csv(
                &["permutation", "polyomino"],
                &[vec![pi.to_string(), p.to_string()]]
            )?
        ),
        Format::Json => out!(
            "{}",
            json(&json!({
                "permutation": pi,
                "width": p.width(),
                "cells": p.cells(),
                "polyomino": p.to_string(),
                "strip": to_json(&strip),
            }))
        ),
        Format::Bfile => return Err(unsupported(fmt, "bijection")),
    }
    Ok(())
}

fn describe_inverse(
    p: &CylinderPolyomino,
    pi: &Permutation,
    render: bool,
    fmt: Format,
) -> Result<(), Error> {
    match fmt {
        Format::Table => {
            if render {
                out!("{}", p.render_rows());
            }
            outln!("{pi}");
        }
        Format::Csv => out!(
            "{}",
            csv(
                &["polyomino", "permutation"],
                &[vec![p.to_string(), pi.to_string()]]
            )?
        ),
        Format::Json => out!(
            "{}",
            json(&json!({ "polyomino": p.to_string(), "width": p.width(), "permutation": pi }))
        ),
        Format::Bfile => return Err(unsupported(fmt, "bijection")),
    }
    Ok(())
}

pub fn bijection(args: &BijectionArgs, fmt: Format) -> Outcome {
    let recovered = match (&args.perm, &args.cells) {
        (Some(pi), None) => {
            let w = args.width.expect("clap requires --width with --perm");
            let p = perm_to_polyomino(pi, w)?;
            describe_forward(pi, &p, args.render, fmt)?;
            !args.round_trip || polyomino_to_perm(&p)? == *pi
        }
        (None, Some(p)) => {
            let pi = polyomino_to_perm(p)?;
            describe_inverse(p, &pi, args.render, fmt)?;
            !args.round_trip || perm_to_polyomino(&pi, p.width())? == *p
        }
        _ => unreachable!("clap enforces exactly one input"),
    };
    if args.round_trip {
        if fmt == Format::Table {
            outln!("round trip: {}", if recovered { "ok" } else { "MISMATCH" });
        } else if !recovered {
            eprintln!("round trip mismatch");
        }
    }
    Ok(verdict(recovered))
}

pub fn wilf(n: usize, policy: &Policy, fmt: Format) -> Outcome {
    let limit = WILF_MAX_N.min(policy.max_brute);
    if n > limit {
        return Err(Error::PolicyRefusal {
            what: "wilf length",
            requested: n,
            limit,
        });
    }
    if n == 0 {
        return Err(Error::InvalidInput("--n must be at least 1".into()));
    }
    let report = wilf_check(n, policy);
    let totals = total_counts(n, CountMethod::Recurrence, policy)?;
    match fmt {
        Format::Json => out!("{}", json(&to_json(&report))),
        Format::Table | Format::Csv => {
            let mut header = vec!["n".to_string(), "sortable".to_string()];
            header.extend(WILF_CLASSES.iter().map(|c| format!("Av({})", c.join(","))));
            header.push("status".into());
            let rows: Vec<Vec<String>> = (1..=n)
                .map(|i| {
                    let inst: Vec<_> = report.instances.iter().filter(|x| x.n == i).collect();
                    let ok = inst.iter().all(|x| x.status == Status::Pass);
                    let mut row = vec![i.to_string(), totals[i].to_string()];
                    row.extend(inst.iter().map(|x| x.value.clone().unwrap_or_default()));
                    row.push(if ok { "pass" } else { "fail" }.into());
                    row
                })
                .collect();
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            if fmt == Format::Table {
                out!("{}", table(&header, &rows));
            } else {
                out!("{}", csv(&header, &rows)?);
            }
        }
        Format::Bfile => return Err(unsupported(fmt, "wilf")),
    }
    Ok(verdict(report.passed()))
}

pub fn conjectures(n_max: usize, strict: bool, fmt: Format) -> Outcome {
    let ids = basic_identities_check(n_max);
    let mut reports: Vec<CheckReport> = IDENTITY_LABELS
        .iter()
        .map(|l| ids.restricted_to(l))
        .collect();
    reports.push(log_concavity_check(n_max));
    reports.push(central_sequence_check(n_max)?);
    reports.push(half_check(n_max));

    let rows: Vec<Vec<String>> = reports
        .iter()
        .map(|r| {
            let first = r
                .first_counterexample()
                .map(|c| {
                    let k = c.k.map(|k| format!(", k={k}")).unwrap_or_default();
                    format!("n={}{k}: expected {}, got {}", c.n, c.expected, c.actual)
                })
                .unwrap_or_default();
            vec![
                r.check.clone(),
                format!("{}..{}", r.range.min, r.range.max),
                r.status.to_string(),
                r.count(Status::Fail).to_string(),
                first,
            ]
        })
        .collect();
    let header = [
        "check",
        "range",
        "status",
        "failures",
        "first counterexample",
    ];
    match fmt {
        Format::Table => out!("{}", table(&header, &rows)),
        Format::Csv => out!("{}", csv(&header, &rows)?),
        Format::Json => {
            let all: Vec<Value> = reports.iter().map(to_json).collect();
            out!("{}", json(&Value::Array(all)));
        }
        Format::Bfile => return Err(unsupported(fmt, "conjectures")),
    }
    let failed = reports.iter().any(|r| r.status == Status::Fail);
    Ok(verdict(!(strict && failed)))
}
