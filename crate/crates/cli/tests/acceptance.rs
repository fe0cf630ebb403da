//! Acceptance suite: one PASS/FAIL line per criterion. Criteria about the
//! command-line surface go through the built binary; the others call the
//! library directly with independent oracles.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::Command;

use num_bigint::BigUint;
use num_rational::BigRational;
use serde_json::Value;

use hofstadter::algebraic::exact::parse_decimal;
use hofstadter::algebraic::{
    coefficient_polynomial, root_set, RationalInterval, DEFAULT_PRECISION,
};
use hofstadter::discrepancy::{
    additivity_defect, compare, delta_u64, extrema_table, ExactAffine, FloorOracle,
};
use hofstadter::{ASeq, Decomp, FContext, MorphicWord, Numeration, Rank, SeedImages};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_hofstadter"))
}

/// Runs the binary, requiring exit status 0, and returns stdout.
fn run(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = bin()
        .args(args)
        .output()
        .map_err(|e| format!("cannot start binary: {e}"))?;
    if !out.status.success() {
        return Err(format!(
            "`hofstadter {}` exited with {:?}: {}",
            args.join(" "),
            out.status.code(),
            String::from_utf8_lossy(&out.stderr).trim()
        ));
    }
    Ok(out.stdout)
}

fn run_json(args: &[&str]) -> Result<Value, String> {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    serde_json::from_slice(&run(&full)?).map_err(|e| format!("bad JSON: {e}"))
}

fn dec(s: &str) -> BigRational {
    parse_decimal(s).expect("decimal literal")
}

fn json_interval(v: &Value) -> Result<RationalInterval, String> {
    let lo = v["lo"].as_str().ok_or("missing lo")?;
    let hi = v["hi"].as_str().ok_or("missing hi")?;
    Ok(RationalInterval::new(dec(lo), dec(hi)))
}

/// The enclosure matches `value` when it lies within `tol` of it.
fn near(iv: &RationalInterval, value: &str, tol: &str, what: &str) -> Result<(), String> {
    let d = iv.distance_to(&dec(value));
    ensure(d <= dec(tol), || {
        format!(
            "{what} [{}, {}] is not within {tol} of {value}",
            iv.lo(),
            iv.hi()
        )
    })
}

fn narrow(iv: &RationalInterval, tol: &str, what: &str) -> Result<(), String> {
    ensure(iv.width() <= dec(tol), || {
        format!("{what} is wider than {tol}")
    })
}

fn criterion_1() -> Outcome {
    let r = run_json(&["certify", "--k", "3", "--p", "400"])?;
    let sup = json_interval(&r["sup"])?;
    let inf = json_interval(&r["inf"])?;
    // Printed decimals are truncations, hence one unit of the last digit.
    near(&sup, "0.854187179928304", "1e-15", "sup")?;
    near(&inf, "-0.708415898743967", "1e-15", "inf")?;
    narrow(&sup, "1e-12", "sup")?;
    narrow(&inf, "1e-12", "inf")?;
    let f = run_json(&["certify", "--k", "3", "--p", "400", "--full"])?;
    let sup_f = json_interval(&f["sup"])?;
    let inf_f = json_interval(&f["inf"])?;
    near(
        &sup_f,
        "0.854187179928304211983581540152668",
        "3e-33",
        "full sup",
    )?;
    near(
        &inf_f,
        "-0.708415898743967960305146324178773",
        "3e-33",
        "full inf",
    )?;
    let short = |v: &Value| {
        v.as_str()
            .unwrap_or("?")
            .chars()
            .take(38)
            .collect::<String>()
    };
    Ok(format!(
        "sup in [{}.., {}..], inf in [{}.., {}..]",
        short(&f["sup"]["lo"]),
        short(&f["sup"]["hi"]),
        short(&f["inf"]["lo"]),
        short(&f["inf"]["hi"])
    ))
}

fn criterion_2() -> Outcome {
    let r = run_json(&["certify", "--k", "4", "--p", "600"])?;
    let sup = json_interval(&r["sup"])?;
    let inf = json_interval(&r["inf"])?;
    near(&sup, "1.5834687793247475", "6e-16", "sup")?;
    near(&inf, "-1.5060895457389591", "6e-16", "inf")?;
    narrow(&sup, "1e-10", "sup")?;
    narrow(&inf, "1e-10", "inf")?;
    Ok(format!(
        "sup lo {}, inf hi {}",
        r["sup"]["lo"].as_str().unwrap_or("?"),
        r["inf"]["hi"].as_str().unwrap_or("?")
    ))
}

fn keys(v: &Value) -> BTreeSet<i64> {
    v.as_object()
        .map(|m| m.keys().filter_map(|k| k.parse().ok()).collect())
        .unwrap_or_default()
}

fn criterion_3() -> Outcome {
    let r3 = run_json(&["conjecture", "--k", "3", "--nmax", "1000000"])?;
    let v3 = keys(&r3["histogram"]);
    ensure(v3 == BTreeSet::from([0, 1]), || {
        format!("k = 3 values {v3:?}")
    })?;
    let r4 = run_json(&["conjecture", "--k", "4", "--nmax", "1000000"])?;
    let v4 = keys(&r4["histogram"]);
    ensure(v4 == BTreeSet::from([-1, 0, 1, 2]), || {
        format!("k = 4 values {v4:?}")
    })?;
    let first = &r4["first_occurrences"];
    ensure(first["2"] == 120 && first["-1"] == 243, || {
        format!("first occurrences {first}")
    })?;
    for r in [&r3, &r4] {
        ensure(
            r["violations"].as_array().is_some_and(|v| v.is_empty()),
            || "violations".into(),
        )?;
        ensure(
            r["ambiguous"].as_array().is_some_and(|v| v.is_empty()),
            || "undecided floors".into(),
        )?;
    }
    Ok("k = 3 in {0,1}; k = 4 in {-1,0,1,2}, 2 first at 120, -1 first at 243".into())
}

fn criterion_4() -> Outcome {
    const N: u64 = 100_000;
    let mut golden = FloorOracle::new(2, 1).map_err(|e| e.to_string())?;
    for k in 1..=8 {
        let ctx = FContext::warmed(k, N).map_err(|e| e.to_string())?;
        let mut num = Numeration::new(k).map_err(|e| e.to_string())?;
        for n in 0..=N {
            let f = ctx.table()[n as usize];
            ensure(num.f_by_shift_u64(n) == f, || {
                format!("shift differs at k = {k}, n = {n}")
            })?;
            let closed = match k {
                1 => Some(n.div_ceil(2)),
                // (n + 1) / phi = alpha_2 (n + 1)
                2 => Some(golden.floor_mul(n + 1).ok_or("undecided floor")?),
                _ => None,
            };
            if let Some(c) = closed {
                ensure(c == f, || {
                    format!("closed form differs at k = {k}, n = {n}")
                })?;
            }
        }
    }
    Ok(format!(
        "k = 1..8, n <= {N}: recursion, shift and closed forms agree"
    ))
}

/// Every canonical decomposition with positions below `top`, with its value.
fn canonical_below(k: usize, top: usize, a: &[u64]) -> Vec<(u64, Vec<usize>)> {
    fn go(
        k: usize,
        next: usize,
        top: usize,
        a: &[u64],
        cur: &mut Vec<usize>,
        sum: u64,
        out: &mut Vec<(u64, Vec<usize>)>,
    ) {
        out.push((sum, cur.clone()));
        for p in next..top {
            cur.push(p);
            go(k, p + k, top, a, cur, sum + a[p], out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(k, 0, top, a, &mut Vec::new(), 0, &mut out);
    out
}

fn criterion_5() -> Outcome {
    for k in 1..=5 {
        let mut num = Numeration::new(k).map_err(|e| e.to_string())?;
        let mut seq = ASeq::new(k).map_err(|e| e.to_string())?;
        // Smallest `top` with A_{k,top} > 5000; canonical decompositions with
        // positions below it reach exactly the n < A_{k,top}.
        let mut top = 0;
        while seq.a_u64(top).unwrap() <= 5000 {
            top += 1;
        }
        let a: Vec<u64> = (0..=top).map(|p| seq.a_u64(p).unwrap()).collect();
        let all = canonical_below(k, top, &a);
        let mut hits = vec![0u32; a[top] as usize];
        for (n, pos) in &all {
            hits[*n as usize] += 1;
            let z = num.zeckendorf_u64(*n);
            ensure(z.positions() == pos.as_slice(), || {
                format!("k = {k}: {pos:?} is not D({n})")
            })?;
        }
        ensure(hits.iter().all(|&h| h == 1), || {
            format!("k = {k}: some n below {} not uniquely hit", a[top])
        })?;
    }
    for k in 1..=6 {
        let mut num = Numeration::new(k).map_err(|e| e.to_string())?;
        let ctx = FContext::warmed(k, 10_001).map_err(|e| e.to_string())?;
        let mut prev: Option<Decomp> = None;
        for n in 0..=10_000u64 {
            let d = num.zeckendorf_u64(n);
            ensure(d.is_canonical(), || {
                format!("k = {k}: D({n}) not canonical")
            })?;
            let back = num.sum(&d).map_err(|e| e.to_string())?;
            ensure(back == BigUint::from(n), || {
                format!("k = {k}: round trip fails at {n}")
            })?;
            if let Some(p) = &prev {
                let s = num.succ_decomp(p).map_err(|e| e.to_string())?;
                ensure(s == d, || {
                    format!("k = {k}: succ of D({}) is {s}, not {d}", n - 1)
                })?;
            }
            let rank = d.rank();
            for q in 0..=k {
                let flat = ctx.iter_warm(q, n + 1) == ctx.iter_warm(q, n);
                let low = matches!(rank, Rank::Finite(r) if r < q);
                ensure(flat == low, || {
                    format!("flat-rank fails at k = {k}, q = {q}, n = {n}")
                })?;
            }
            prev = Some(d);
        }
    }
    Ok("round trip, uniqueness, successor and flat-rank hold".into())
}

fn criterion_6() -> Outcome {
    const N: usize = 10_000;
    for k in 1..=6 {
        let mut word = MorphicWord::new(k).map_err(|e| e.to_string())?;
        let x = word.prefix(N + 1).to_vec();
        let mut num = Numeration::new(k).map_err(|e| e.to_string())?;
        let mut images = SeedImages::new(k).map_err(|e| e.to_string())?;
        for n in 0..=N {
            let d = num.zeckendorf_u64(n as u64);
            let w = images.word_of_decomp(&d).map_err(|e| e.to_string())?;
            ensure(w[..] == x[..n], || {
                format!("k = {k}: word of D({n}) is not the prefix")
            })?;
            let expected = match d.rank() {
                Rank::Finite(r) => k.min(1 + r),
                Rank::Infinity => k,
            };
            ensure(x[n] as usize == expected, || {
                format!("k = {k}: letter {} at {n}", x[n])
            })?;
        }
    }
    Ok(format!("k = 1..6, n <= {N}"))
}

/// Power sums of the zeros of X^k - X^(k-1) - 1 from r^k = r^(k-1) + 1:
/// s_j = 1 for 0 < j < k, s_k = k + 1, then s_j = s_{j-1} + s_{j-k}.
fn power_sums(k: usize, upto: usize) -> Vec<f64> {
    let mut s = vec![k as f64];
    for j in 1..=upto {
        let v = if k == 1 {
            2f64.powi(j as i32)
        } else if j < k {
            1.0
        } else if j == k {
            (k + 1) as f64
        } else {
            s[j - 1] + s[j - k]
        };
        s.push(v);
    }
    s
}

fn criterion_7() -> Outcome {
    let expected = [
        (2usize, vec![-1i64, -5, 5]),
        (3, vec![-1, -12, -31, 31]),
        (4, vec![-1, -24, -162, -283, 283]),
    ];
    for k in 1..=12 {
        let rs = root_set(k, DEFAULT_PRECISION).map_err(|e| e.to_string())?;
        let roots = rs.roots_f64();
        let sums = power_sums(k, 2 * k);
        for (j, want) in sums.iter().enumerate().skip(1) {
            let got: f64 = roots
                .iter()
                .map(|r| r.powi(j as i32))
                .sum::<num_complex::Complex64>()
                .re;
            ensure((got - want).abs() <= 1e-10 * want.abs().max(1.0), || {
                format!("k = {k}: power sum {j} is {got}, expected {want}")
            })?;
        }
        let prod: num_complex::Complex64 = roots.iter().product();
        let want_prod = if k == 1 {
            2.0
        } else if k % 2 == 0 {
            -1.0
        } else {
            1.0
        };
        ensure(
            (prod.re - want_prod).abs() <= 1e-10 && prod.im.abs() <= 1e-10,
            || format!("k = {k}: product {prod}"),
        )?;
        if k >= 2 {
            let m = roots[1].norm();
            let ok = match k {
                2..=4 => m < 1.0,
                5 => (m - 1.0).abs() <= 1e-10,
                _ => m > 1.0,
            };
            ensure(ok, || format!("k = {k}: secondary modulus {m}"))?;
        }
    }
    for (k, coeffs) in expected {
        let rs = root_set(k, DEFAULT_PRECISION).map_err(|e| e.to_string())?;
        let cp = coefficient_polynomial(&rs).map_err(|e| e.to_string())?;
        let got: Vec<String> = cp.poly.coeffs().iter().map(|c| c.to_string()).collect();
        let want: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
        ensure(got == want, || format!("k = {k}: coefficients {got:?}"))?;
        ensure(cp.max_gap < dec("0.25"), || {
            format!("k = {k}: gap {}", cp.max_gap)
        })?;
    }
    Ok("power sums, products, trichotomy and coefficient polynomials for k <= 12".into())
}

fn criterion_8() -> Outcome {
    for k in 1..=5 {
        let t = extrema_table(k, 12).map_err(|e| e.to_string())?;
        let mut seq = ASeq::new(k).map_err(|e| e.to_string())?;
        let mut num = Numeration::new(k).map_err(|e| e.to_string())?;
        for p in 0..=12 {
            let end = seq.a_u64(p).unwrap();
            let mut hi = ExactAffine::zero(k);
            let mut lo = ExactAffine::zero(k);
            for n in 0..end {
                let d = delta_u64(&mut num, n);
                if compare(&d, &hi).map_err(|e| e.to_string())? == Ordering::Greater {
                    hi = d.clone();
                }
                if compare(&d, &lo).map_err(|e| e.to_string())? == Ordering::Less {
                    lo = d;
                }
            }
            let same_hi = compare(&t.dmax()[p], &hi).map_err(|e| e.to_string())? == Ordering::Equal;
            let same_lo = compare(&t.dmin()[p], &lo).map_err(|e| e.to_string())? == Ordering::Equal;
            ensure(same_hi && same_lo, || format!("k = {k}, p = {p}"))?;
        }
    }
    Ok("k <= 5, p <= 12: zero mismatches".into())
}

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap_or(f64::NAN)
}

fn criterion_9() -> Outcome {
    let k5 = run_json(&["diverge", "--k", "5", "--nmax", "120"])?;
    let first = k5["first_above_two"].as_u64();
    ensure(first.is_some_and(|n| n <= 120), || {
        format!("first above 2: {first:?}")
    })?;
    let (slope, predicted) = (num(&k5["slope"]), num(&k5["predicted_slope"]));
    ensure((slope - predicted).abs() <= 0.1 * predicted.abs(), || {
        format!("slope {slope} vs {predicted}")
    })?;
    let k6 = run_json(&["diverge", "--k", "6", "--nmax", "400", "--scan", "1000"])?;
    let (hi, lo) = (num(&k6["max_on_a"]["value"]), num(&k6["min_on_a"]["value"]));
    ensure(hi > 1.0 && lo < -1.0, || {
        format!("k = 6 extremes {lo}, {hi}")
    })?;
    let e6 = num(&k6["fitted_exponent"]);
    ensure((e6 - 0.1287).abs() <= 0.03, || {
        format!("k = 6 exponent {e6}")
    })?;
    let k7 = run_json(&["diverge", "--k", "7", "--nmax", "400", "--scan", "1000"])?;
    let e7 = num(&k7["fitted_exponent"]);
    ensure((e7 - 0.2218).abs() <= 0.03, || {
        format!("k = 7 exponent {e7}")
    })?;
    Ok(format!(
        "k = 5 slope {slope:.5} (predicted {predicted:.5}), above 2 at n = {}; exponents {e6:.4}, {e7:.4}",
        first.unwrap_or(0)
    ))
}

fn criterion_10() -> Outcome {
    let r3 = run_json(&["additivity", "--k", "3", "--nmax", "300"])?;
    ensure(r3["max_abs"] == 2, || {
        format!("k = 3 max {}", r3["max_abs"])
    })?;
    let mut ctx = FContext::new(3).map_err(|e| e.to_string())?;
    let w = additivity_defect(&mut ctx, 18, 78);
    ensure(w.abs() == 2, || format!("defect at (18, 78) is {w}"))?;
    let r4 = run_json(&["additivity", "--k", "4", "--nmax", "10000"])?;
    let m4 = r4["max_abs"].as_u64().unwrap_or(u64::MAX);
    ensure(m4 <= 4, || format!("k = 4 max {m4}"))?;
    for k in ["1", "2"] {
        let r = run_json(&["additivity", "--k", k, "--nmax", "2000"])?;
        ensure(r["max_abs"].as_u64().is_some_and(|m| m <= 1), || {
            format!("k = {k} max {}", r["max_abs"])
        })?;
    }
    Ok(format!(
        "k = 3 max 2, (18, 78) is a witness; k = 4 observed max {m4}"
    ))
}

fn criterion_11() -> Outcome {
    let dir = std::env::temp_dir().join(format!("hofstadter-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let paths: Vec<PathBuf> = (0..2)
        .map(|i| dir.join(format!("fractal{i}.csv")))
        .collect();
    for p in &paths {
        run(&["fractal", "--nmax", "10000", "--out", p.to_str().unwrap()])?;
    }
    let a = std::fs::read(&paths[0]).map_err(|e| e.to_string())?;
    let b = std::fs::read(&paths[1]).map_err(|e| e.to_string())?;
    let _ = std::fs::remove_dir_all(&dir);
    ensure(a == b, || "runs differ".into())?;
    let text = String::from_utf8(a).map_err(|e| e.to_string())?;
    let mut lines = text.lines();
    ensure(lines.next() == Some("n,x,y"), || "missing header".into())?;
    let mut count = 0;
    for line in lines {
        let cols: Vec<&str> = line.split(',').collect();
        let x: f64 = cols[1].parse().map_err(|_| format!("bad row {line}"))?;
        let y: f64 = cols[2].parse().map_err(|_| format!("bad row {line}"))?;
        let inside = |v: f64| (-0.7085..=0.8542).contains(&v);
        ensure(inside(x) && inside(y), || {
            format!("row {line} leaves the box")
        })?;
        count += 1;
    }
    ensure(count == 10_000, || format!("{count} points"))?;
    Ok("10000 points inside the box, identical across runs".into())
}

fn criterion_12() -> Outcome {
    let r = run_json(&["second-iterate", "--nmax", "1000000"])?;
    let lo = dec(r["min"]["lo"].as_str().ok_or("min")?);
    let hi = dec(r["max"]["hi"].as_str().ok_or("max")?);
    ensure(lo >= dec("-0.7864") && hi <= dec("1.0393"), || {
        format!("range [{lo}, {hi}]")
    })?;
    let values = keys(&r["histogram"]);
    ensure(values.is_subset(&BTreeSet::from([0, 1, 2])), || {
        format!("values {values:?}")
    })?;
    ensure(r["first_occurrences"]["2"] == 1235, || {
        format!("2 first at {}", r["first_occurrences"]["2"])
    })?;
    let freq = num(&r["frequency_of_two"]);
    ensure((freq - 0.001).abs() <= 0.0005, || {
        format!("frequency {freq}")
    })?;
    Ok(format!(
        "range [{}, {}], 2 first at 1235, frequency {:.4}%",
        r["min"]["lo"].as_str().unwrap_or("?"),
        r["max"]["hi"].as_str().unwrap_or("?"),
        100.0 * freq
    ))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 12] = [
        ("certification k = 3", criterion_1),
        ("certification k = 4", criterion_2),
        ("floor-difference conjectures", criterion_3),
        ("cross-implementation equivalence", criterion_4),
        ("numeration properties", criterion_5),
        ("word laws", criterion_6),
        ("algebraic suite", criterion_7),
        ("extrema table oracle", criterion_8),
        ("divergence probes", criterion_9),
        ("almost-additivity", criterion_10),
        ("fractal emission", criterion_11),
        ("second-iterate scan", criterion_12),
    ];
    let results: Vec<Outcome> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria.iter().map(|(_, f)| s.spawn(f)).collect();
        handles
            .into_iter()
            .map(|h| h.join().unwrap_or_else(|_| Err("panicked".into())))
            .collect()
    });
    let mut failed = 0;
    for (i, ((name, _), r)) in criteria.iter().zip(&results).enumerate() {
        match r {
            Ok(detail) => println!("PASS criterion {:>2} ({name}): {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2} ({name}): {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
