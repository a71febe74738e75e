//! Acceptance suite: one line per criterion, nonzero exit if any fails.

use std::collections::{BTreeSet, HashMap};
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;

use twopop::analysis::{
    basic_identities_check, central_sequence_check, half_check, log_concavity_check, wilf_check,
    IDENTITY_LABELS,
};
use twopop::enumeration::{
    a_table, brute_force_triangle, classify_prefix, expand_bivariate, generate_sortable,
    total_counts, BivariateRationalGF, CountMethod,
};
use twopop::patterns::{is_sortable_by_blocks, is_sortable_by_divided, is_sortable_by_patterns};
use twopop::perm::all_permutations;
use twopop::polyomino::{
    enumerate_polyominoes, list_polyominoes, perm_to_polyomino, polyomino_to_perm,
    right_free_distribution,
};
use twopop::popstack::{is_sortable, is_two_pop_sortable};
use twopop::{sweep, Permutation, Policy};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ints(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn oracle_equivalence() -> Outcome {
    let mut checked = 0u64;
    for n in 0..=9 {
        let mismatch = sweep::find_first(n, |pi| {
            let sim = is_two_pop_sortable(pi);
            sim != is_sortable_by_blocks(pi)
                || sim != is_sortable_by_divided(pi)
                || sim != is_sortable_by_patterns(pi)
        });
        if let Some(pi) = mismatch {
            return Err(format!("predicates disagree on {pi}"));
        }
        checked += (1..=n as u64).product::<u64>();
    }
    Ok(format!(
        "all of S_0..S_9, {checked} permutations, zero mismatches"
    ))
}

const TOTALS: [u64; 10] = [1, 2, 6, 16, 42, 112, 298, 792, 2106, 5600];

fn counting() -> Outcome {
    let policy = Policy::default();
    for method in CountMethod::ALL {
        let counts = total_counts(10, method, &policy).map_err(|e| format!("{method}: {e}"))?;
        ensure(counts[1..] == ints(&TOTALS)[..], || {
            format!("{method} gave {counts:?}")
        })?;
    }
    Ok(format!(
        "{} methods agree on n = 1..10",
        CountMethod::ALL.len()
    ))
}

fn ascent_triangle() -> Outcome {
    let printed: [&[u64]; 7] = [
        &[1],
        &[1],
        &[1, 1],
        &[1, 4, 1],
        &[1, 6, 8, 1],
        &[1, 8, 20, 12, 1],
        &[1, 10, 36, 48, 16, 1],
    ];
    let rec = a_table(10);
    let gf = expand_bivariate(&BivariateRationalGF::two_pop_by_ascents(), 10);
    for (n, row) in printed.iter().enumerate() {
        ensure(rec.row(n) == ints(row), || {
            format!("recurrence row {n}: {:?}", rec.row(n))
        })?;
        ensure(gf.row(n) == ints(row), || {
            format!("series row {n}: {:?}", gf.row(n))
        })?;
    }
    let (brute, _) = brute_force_triangle(10, &Policy::default()).map_err(|e| e.to_string())?;
    for (name, t) in [("recurrence", &rec), ("series", &gf)] {
        if let Some((n, k, x, y)) = t.first_difference(&brute) {
            return Err(format!("{name} vs brute force at ({n},{k}): {x} != {y}"));
        }
    }
    Ok("printed rows through x^6; recurrence = series = brute force for n <= 10".into())
}

fn prefix_decomposition() -> Outcome {
    let policy = Policy::default();
    let four = generate_sortable(4, &policy).map_err(|e| e.to_string())?;
    let mut mult = [0usize; 6];
    for pi in &four {
        let case = classify_prefix(pi).map_err(|e| e.to_string())?.case;
        mult[case as usize - 1] += 1;
    }
    ensure(four.len() == 16 && mult == [6, 6, 1, 0, 1, 2], || {
        format!(
            "n = 4: {} permutations, multiplicities {mult:?}",
            four.len()
        )
    })?;
    for n in 0..=9 {
        let generated = generate_sortable(n, &policy).map_err(|e| e.to_string())?;
        let brute = sweep::collect(n, is_two_pop_sortable);
        ensure(generated == brute, || {
            format!("generated set differs at n = {n}")
        })?;
    }
    Ok("multiplicities (6,6,1,0,1,2); generated = brute force for n <= 9".into())
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Forward map is injective onto all polyominoes and both round trips are identities.
fn round_trips(
    width: usize,
    n: usize,
    sortable: &[Permutation],
    policy: &Policy,
) -> Result<(), String> {
    let mut image = HashMap::new();
    for pi in sortable {
        let p = perm_to_polyomino(pi, width).map_err(|e| e.to_string())?;
        let back = polyomino_to_perm(&p).map_err(|e| e.to_string())?;
        ensure(&back == pi, || {
            format!("width {width}: {pi} -> {p} -> {back}")
        })?;
        if let Some(other) = image.insert(p.clone(), pi.clone()) {
            return Err(format!("width {width}: {other} and {pi} both map to {p}"));
        }
    }
    let all = list_polyominoes(width, n, policy).map_err(|e| e.to_string())?;
    ensure(all.len() == image.len(), || {
        format!("width {width}, n = {n}: image misses polyominoes")
    })?;
    for p in &all {
        let pi = polyomino_to_perm(p).map_err(|e| format!("{p}: {e}"))?;
        let again = perm_to_polyomino(&pi, width).map_err(|e| e.to_string())?;
        ensure(&again == p, || {
            format!("width {width}: {p} -> {pi} -> {again}")
        })?;
    }
    Ok(())
}

fn width_two() -> Outcome {
    let policy = Policy::default();
    for n in 1..=12usize {
        let count = enumerate_polyominoes(2, n, &policy).map_err(|e| e.to_string())?;
        ensure(count == 1 << (n - 1), || {
            format!("n = {n}: {count} polyominoes")
        })?;
        let hist = right_free_distribution(2, n, &policy).map_err(|e| e.to_string())?;
        for (k, &h) in hist.iter().enumerate() {
            let c = binomial(n as u64 - 1, k as u64);
            ensure(h == c, || {
                format!("n = {n}, k = {k}: {h} != C({}, {k}) = {c}", n - 1)
            })?;
        }
        let layered: Vec<Permutation> = twopop::perm::all_compositions(n)
            .map(|c| Permutation::layered(&c))
            .collect();
        round_trips(2, n, &layered, &policy)?;
    }
    let fig: Permutation = "4,3,2,1,6,5,7,10,9,8".parse().unwrap();
    let p = perm_to_polyomino(&fig, 2).map_err(|e| e.to_string())?;
    ensure(p.cells() == [1, 2, 3, 4, 6, 7, 9, 11, 12, 13], || {
        format!("example maps to {p}")
    })?;
    Ok(
        "2^(n-1) polyominoes, C(n-1,k) refinement, round trips for n <= 12; example cells match"
            .into(),
    )
}

fn width_three() -> Outcome {
    let policy = Policy::default();
    let totals = total_counts(13, CountMethod::Recurrence, &policy).map_err(|e| e.to_string())?;
    let a = a_table(12);
    for n in 1..=13usize {
        let count = enumerate_polyominoes(3, n, &policy).map_err(|e| e.to_string())?;
        ensure(BigInt::from(count) == totals[n], || {
            format!("n = {n}: {count} != {}", totals[n])
        })?;
        if n <= 12 {
            let hist = right_free_distribution(3, n, &policy).map_err(|e| e.to_string())?;
            for (k, &h) in hist.iter().enumerate() {
                let want = a.get(n, k as i64);
                ensure(BigInt::from(h) == want, || {
                    format!("a({n},{k}) = {want}, refinement {h}")
                })?;
            }
        }
    }
    for n in 1..=10 {
        let sortable = generate_sortable(n, &policy).map_err(|e| e.to_string())?;
        round_trips(3, n, &sortable, &policy)?;
    }
    let fig: Permutation = "6,4,3,2,1,5,8,7,12,10,9,14,13,11".parse().unwrap();
    let p = perm_to_polyomino(&fig, 3).map_err(|e| e.to_string())?;
    let want = [1, 2, 3, 4, 5, 7, 10, 11, 14, 15, 16, 18, 19, 20];
    ensure(p.cells() == want, || format!("example maps to {p}"))?;
    Ok(
        "counts for n <= 13, a(n,k) refinement n <= 12, round trips n <= 10; example cells match"
            .into(),
    )
}

fn negative_control() -> Outcome {
    let polys = enumerate_polyominoes(4, 4, &Policy::default()).map_err(|e| e.to_string())?;
    let three_pass = all_permutations(4).filter(|pi| is_sortable(pi, 3)).count() as u64;
    ensure(polys == 19 && three_pass == 24, || {
        format!("width 4 size 4: {polys} polyominoes, {three_pass} three-pass sortable")
    })?;
    Ok(format!(
        "width 4 size 4: {polys} polyominoes != {three_pass} three-pass sortable permutations"
    ))
}

fn wilf() -> Outcome {
    let report = wilf_check(9, &Policy::default());
    if let Some(c) = report.first_counterexample() {
        return Err(format!(
            "{} at n = {}: expected {}, got {}",
            c.label, c.n, c.expected, c.actual
        ));
    }
    ensure(report.passed(), || format!("status {}", report.status))?;
    Ok("three classes equal the sortable counts for n = 1..9".into())
}

fn section_five() -> Outcome {
    let ids = basic_identities_check(12);
    for label in [IDENTITY_LABELS[0], IDENTITY_LABELS[2], IDENTITY_LABELS[3]] {
        let r = ids.restricted_to(label);
        ensure(r.passed(), || {
            format!("{label}: {:?}", r.first_counterexample())
        })?;
    }
    let two = ids.restricted_to(IDENTITY_LABELS[1]);
    let c = two
        .first_counterexample()
        .ok_or_else(|| "identity (2) unexpectedly holds".to_string())?;
    ensure(
        (c.n, c.k, c.expected.as_str(), c.actual.as_str()) == (4, Some(1), "4", "6"),
        || format!("identity (2) first counterexample {c:?}"),
    )?;
    ensure(log_concavity_check(14).passed(), || {
        "log-concavity fails for n <= 14".into()
    })?;
    let central = central_sequence_check(6).map_err(|e| e.to_string())?;
    ensure(central.passed(), || {
        format!("central sequence: {:?}", central.counterexamples)
    })?;
    ensure(half_check(6).passed(), || {
        "a(2n+1,n) != 2b(2n+1,n) for some n <= 6".into()
    })?;
    Ok(format!(
        "identities (1),(3),(4) hold for n <= 12; identity (2) FAILED: a({},1) = {} != {}; \
         log-concavity n <= 14, central sequence and halving n <= 6 hold",
        c.n, c.actual, c.expected
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("oracle equivalence", oracle_equivalence),
        ("counting methods", counting),
        ("ascent triangle", ascent_triangle),
        ("prefix decomposition", prefix_decomposition),
        ("width-2 bijection", width_two),
        ("width-3 bijection", width_three),
        ("width-4 negative control", negative_control),
        ("wilf equivalence", wilf),
        ("identities and conjectures", section_five),
    ];
    let mut failed = BTreeSet::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail}) [{secs:.1}s]", i + 1),
            Err(detail) => {
                println!("criterion {} {name}: FAIL ({detail}) [{secs:.1}s]", i + 1);
                failed.insert(i + 1);
            }
        }
    }
    if failed.is_empty() {
        println!("acceptance: all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
