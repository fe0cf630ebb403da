use std::collections::BTreeMap;
use std::fs::File;
use std::io::{BufWriter, Write};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use hofstadter::algebraic::exact::{parse_decimal, to_decimal, to_f64_up};
use hofstadter::algebraic::{
    alpha_interval, beta_interval, coefficient_polynomial, root_set, ComplexBall, RationalInterval,
};
use hofstadter::discrepancy::{self as disc, CloitreReport};
use hofstadter::words::{render, MorphicWord};
use hofstadter::{ASeq, FContext, Numeration, Rank};

use crate::args::*;
use crate::reports::*;
use crate::CliError;

/// Beyond this argument `eval` only uses the shift formula.
const RECURSION_LIMIT: u64 = 10_000_000;
/// Fractional digits used when rendering root-related decimals.
const ROOT_DIGITS: usize = 30;
/// Box confining every `delta_3` value, from the certified extremes.
const DELTA3_BOX: (f64, f64) = (-0.7085, 0.8542);
/// Range of `F_3(F_3(n)) - alpha_3^2 n`.
const SECOND_ITERATE_RANGE: (&str, &str) = ("-0.7864", "1.0393");

pub fn dispatch<W: Write>(cli: &Cli, out: &mut W) -> Result<(), CliError> {
    let fmt = |default: Format| cli.format.unwrap_or(default);
    match &cli.command {
        Command::Eval(a) => {
            let r = eval(a)?;
            emit(out, fmt(Format::Text), &r, || r.text())
        }
        Command::Seq(a) => {
            let r = seq(a)?;
            emit(out, fmt(Format::Text), &r, || r.text())
        }
        Command::Decomp(a) => {
            let r = decomp(a)?;
            emit(out, fmt(Format::Text), &r, || r.text())
        }
        Command::Word(a) => {
            let r = word(a)?;
            emit(out, fmt(Format::Text), &r, || format!("{}\n", r.word))
        }
        Command::Roots(a) => {
            let r = roots(a.k, cli.precision_bits)?;
            emit(out, fmt(Format::Json), &r, || r.text())
        }
        Command::Certify(a) => {
            let r = certify(a, cli.precision_bits)?;
            emit(out, fmt(Format::Json), &r, || r.text())
        }
        Command::Conjecture(a) => {
            let r = conjecture(a)?;
            emit(out, fmt(Format::Json), &r, || r.text())?;
            check_conjecture(&r)
        }
        Command::Additivity(a) => {
            let r = additivity(a)?;
            emit(out, fmt(Format::Json), &r, || r.text())?;
            match r.bound {
                Some(b) if r.max_abs > b => Err(CliError::Violation(format!(
                    "additivity defect {} exceeds {b} at (n, m) = ({}, {})",
                    r.max_abs, r.witness.n, r.witness.m
                ))),
                _ => Ok(()),
            }
        }
        Command::Diverge(a) => {
            let r = diverge(a)?;
            emit(out, fmt(Format::Json), &r, || r.text())
        }
        Command::Fractal(a) => fractal(a, fmt(Format::Csv), out),
        Command::SecondIterate(a) => {
            let r = second_iterate(a.nmax)?;
            emit(out, fmt(Format::Json), &r, || r.text())?;
            check_second_iterate(&r)
        }
    }
}

fn emit<W: Write, T: serde::Serialize>(
    out: &mut W,
    format: Format,
    report: &T,
    text: impl FnOnce() -> String,
) -> Result<(), CliError> {
    match format {
        Format::Json => {
            serde_json::to_writer_pretty(&mut *out, report).map_err(std::io::Error::from)?;
            writeln!(out)?;
        }
        Format::Text => out.write_all(text().as_bytes())?,
        Format::Csv => {
            return Err(CliError::Usage(
                "csv output is only available for fractal".into(),
            ))
        }
    }
    Ok(())
}

fn interval(iv: &RationalInterval, digits: usize) -> Interval {
    Interval {
        lo: to_decimal(iv.lo(), digits, false),
        hi: to_decimal(iv.hi(), digits, true),
    }
}

fn eval(a: &EvalArgs) -> Result<EvalReport, CliError> {
    let mut num = Numeration::new(a.k)?;
    let f = num.f_iter_by_shift(a.iter, &a.n);
    let l = num.l_by_shift(&a.n, 1);
    let mut checked = false;
    if let Some(n) = a.n.to_u64().filter(|&n| n <= RECURSION_LIMIT) {
        let mut ctx = FContext::warmed(a.k, n)?;
        let fr = ctx.f_iter(a.iter, n);
        let lr = ctx.l(n);
        if BigUint::from(fr) != f || BigUint::from(lr) != l {
            return Err(CliError::Violation(format!(
                "recursion gives F = {fr}, L = {lr} but shifting gives F = {f}, L = {l} at n = {n}"
            )));
        }
        checked = true;
    }
    Ok(EvalReport {
        k: a.k,
        n: a.n.to_string(),
        iter: a.iter,
        f: f.to_string(),
        l: l.to_string(),
        recursion_checked: checked,
    })
}

fn seq(a: &SeqArgs) -> Result<SeqReport, CliError> {
    let mut s = ASeq::new(a.k)?;
    s.extend_to(a.p);
    Ok(SeqReport {
        k: a.k,
        values: s.values()[..=a.p].iter().map(|v| v.to_string()).collect(),
    })
}

fn decomp(a: &DecompArgs) -> Result<DecompReport, CliError> {
    let mut num = Numeration::new(a.k)?;
    let d = num.zeckendorf(&a.n);
    if num.sum(&d)? != a.n {
        return Err(CliError::Violation(format!(
            "decomposition {d} does not sum to {}",
            a.n
        )));
    }
    Ok(DecompReport {
        k: a.k,
        n: a.n.to_string(),
        positions: d.positions().to_vec(),
        digits: d.digits(),
        rank: match d.rank() {
            Rank::Finite(r) => serde_json::Value::from(r),
            Rank::Infinity => serde_json::Value::from("inf"),
        },
    })
}

fn word(a: &WordArgs) -> Result<WordReport, CliError> {
    let mut w = MorphicWord::new(a.k)?;
    Ok(WordReport {
        k: a.k,
        len: a.len,
        word: render(w.prefix(a.len)),
    })
}

fn disk(b: &ComplexBall) -> Disk {
    let c = b.center();
    Disk {
        re: to_decimal(&c.re, ROOT_DIGITS, false),
        im: to_decimal(&c.im, ROOT_DIGITS, false),
        // The decimal truncation adds at most 2 * 10^-digits.
        radius: to_f64_up(b.radius()) + 2e-30,
    }
}

fn roots(k: usize, precision: u32) -> Result<RootsReport, CliError> {
    let rs = root_set(k, precision)?;
    let eps = parse_decimal("1e-40")?;
    let prec = rs.precision();
    Ok(RootsReport {
        k,
        precision_bits: prec,
        alpha: interval(&alpha_interval(k, &eps)?, 40),
        beta: interval(&beta_interval(k, &eps)?, 40),
        roots: rs.roots().iter().map(disk).collect(),
        moduli: rs.roots_f64().iter().map(|z| z.norm()).collect(),
        c: rs.c().iter().map(disk).collect(),
        d: rs.d().iter().map(disk).collect(),
        secondary_exponent: rs.secondary_exponent(),
        coefficient_polynomial: coefficient_polynomial(&rs)
            .ok()
            .map(|cp| cp.poly.coeffs().iter().map(|c| c.to_string()).collect()),
    })
}

fn certify(a: &CertifyArgs, precision: u32) -> Result<CertifyReport, CliError> {
    let p = match (a.k, a.p) {
        (_, Some(p)) => p,
        (3, None) => 400,
        (4, None) => 600,
        (k, None) => {
            return Err(CliError::Usage(format!(
                "certification is provided for k = 3 and k = 4, not k = {k}"
            )))
        }
    };
    let eps_text = if a.full {
        "1e-100"
    } else {
        a.alpha_eps.as_str()
    };
    let eps = parse_decimal(eps_text)?;
    if !eps.is_positive() {
        return Err(CliError::Usage("--alpha-eps must be positive".into()));
    }
    let c = disc::certify_bounds(a.k, p, &eps, precision)?;
    let digits = decimal_digits_for(&eps);
    Ok(CertifyReport {
        k: c.k,
        p: c.p,
        alpha_eps: eps_text.to_string(),
        precision_bits: precision,
        alpha: interval(&c.alpha, digits),
        dmax: ExactPair {
            a: c.dmax.a().to_string(),
            b: c.dmax.b().to_string(),
        },
        dmin: ExactPair {
            a: c.dmin.a().to_string(),
            b: c.dmin.b().to_string(),
        },
        residue_bound: to_decimal(&c.residue_bound, digits, true),
        sup: interval(&c.sup, digits),
        inf: interval(&c.inf, digits),
    })
}

/// Enough fractional digits to show an error of size `eps`, plus margin.
fn decimal_digits_for(eps: &BigRational) -> usize {
    let mut digits = 0usize;
    let mut scaled = eps.clone();
    let one = BigRational::from_integer(1.into());
    while scaled < one && digits < 2000 {
        scaled *= BigRational::from_integer(10.into());
        digits += 1;
    }
    digits + 5
}

fn keyed<V: Copy>(m: &BTreeMap<i64, V>) -> BTreeMap<String, V> {
    m.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn conjecture(a: &ScanArgs) -> Result<HistogramReport, CliError> {
    let r = disc::cloitre_scan(a.k, a.nmax)?;
    Ok(HistogramReport {
        k: r.k,
        n_max: r.n_max,
        histogram: keyed(&r.histogram),
        first_occurrences: keyed(&r.first_occurrences),
        ambiguous: r.ambiguous.clone(),
        expected: CloitreReport::expected_values(a.k).map(|v| v.to_vec()),
        violations: r
            .violations()
            .into_iter()
            .map(|(value, n)| Occurrence { value, n })
            .collect(),
    })
}

fn check_conjecture(r: &HistogramReport) -> Result<(), CliError> {
    if let Some(v) = r.violations.first() {
        return Err(CliError::Violation(format!(
            "F_{k}(n) - floor(alpha_{k} n) = {} at n = {}, outside {:?}",
            v.value,
            v.n,
            r.expected.as_deref().unwrap_or(&[]),
            k = r.k
        )));
    }
    if let Some(n) = r.ambiguous.first() {
        return Err(CliError::Violation(format!(
            "floor(alpha_{} n) undecided at n = {n}",
            r.k
        )));
    }
    Ok(())
}

fn witness(w: disc::Witness) -> WitnessReport {
    WitnessReport {
        n: w.n,
        m: w.m,
        defect: w.defect,
    }
}

fn additivity(a: &ScanArgs) -> Result<AdditivityReport, CliError> {
    let r = disc::additivity_scan(a.k, a.nmax)?;
    Ok(AdditivityReport {
        k: r.k,
        n_max: r.n_max,
        max_abs: r.max_abs(),
        witness: witness(r.max_abs_witness()),
        max: witness(r.max),
        min: witness(r.min),
        bound: match a.k {
            1 | 2 => Some(1),
            3 => Some(2),
            4 => Some(4),
            _ => None,
        },
    })
}

fn diverge(a: &DivergeArgs) -> Result<DivergeReport, CliError> {
    match a.k {
        5 => {
            let p = disc::divergence_probe_k5(a.nmax)?;
            let rs = root_set(5, hofstadter::algebraic::DEFAULT_PRECISION)?;
            let (c, m) = disc::log_bound_k5(&rs)?;
            Ok(DivergeReport::K5(K5Report {
                k: 5,
                n_max: a.nmax,
                predicted_slope: p.predicted_slope,
                slope: p.slope,
                slope_prime: p.slope_prime,
                increasing_from: p.increasing_from,
                decreasing_from: p.decreasing_from,
                first_above_two: p.first_above_two,
                log_bound: LogBound { c, m },
                rows: p
                    .rows
                    .into_iter()
                    .map(|r| DriftRow {
                        n: r.n,
                        u: r.u.to_string(),
                        delta_u: r.delta_u,
                        u_prime: r.u_prime.to_string(),
                        delta_u_prime: r.delta_u_prime,
                    })
                    .collect(),
            }))
        }
        k if k >= 6 => {
            let p_max =
                usize::try_from(a.nmax).map_err(|_| CliError::Usage("--nmax too large".into()))?;
            let g = disc::divergence_probe_general(k, p_max, a.scan)?;
            let ext = |(value, at): (f64, usize)| Extreme {
                value,
                at: at as u64,
            };
            let ext_n = |(value, at): (f64, u64)| Extreme { value, at };
            Ok(DivergeReport::Growth(GrowthReport {
                k,
                p_max,
                n_scan: g.n_scan,
                max_on_a: ext(g.max_on_a),
                min_on_a: ext(g.min_on_a),
                max_scan: ext_n(g.max_scan),
                min_scan: ext_n(g.min_scan),
                fitted_exponent: g.fitted_exponent,
                predicted_exponent: g.predicted_exponent,
            }))
        }
        k => Err(CliError::Usage(format!(
            "the discrepancy is bounded for k = {k}; divergence probes need k >= 5"
        ))),
    }
}

fn fractal<W: Write>(a: &FractalArgs, format: Format, out: &mut W) -> Result<(), CliError> {
    let points = disc::fractal_points(a.nmax, a.shear)?;
    let mut sink: Box<dyn Write + '_> = match &a.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(&mut *out),
    };
    match format {
        Format::Csv => disc::write_fractal_csv(&mut sink, &points)?,
        Format::Json => {
            let r = FractalReport {
                n_max: a.nmax,
                shear: a.shear,
                points: points
                    .iter()
                    .map(|p| Point {
                        n: p.n,
                        x: p.x,
                        y: p.y,
                    })
                    .collect(),
            };
            serde_json::to_writer_pretty(&mut sink, &r).map_err(std::io::Error::from)?;
            writeln!(sink)?;
        }
        Format::Text => {
            return Err(CliError::Usage(
                "fractal writes csv or json, not text".into(),
            ))
        }
    }
    sink.flush()?;
    drop(sink);
    let (lo, hi) = DELTA3_BOX;
    let inside = |v: f64| (lo..=hi).contains(&v);
    let bad = points
        .iter()
        .find(|p| !inside(p.x) || (!a.shear && !inside(p.y)));
    match bad {
        Some(p) => Err(CliError::Violation(format!(
            "point ({}, {}) at n = {} leaves [{lo}, {hi}]^2",
            p.x, p.y, p.n
        ))),
        None => Ok(()),
    }
}

fn second_iterate(n_max: u64) -> Result<SecondIterateReport, CliError> {
    let r = disc::second_iterate_scan(n_max)?;
    let digits = 25;
    let end = |(iv, n): &(RationalInterval, u64)| RangeEnd {
        lo: to_decimal(iv.lo(), digits, false),
        hi: to_decimal(iv.hi(), digits, true),
        n: *n,
    };
    Ok(SecondIterateReport {
        n_max: r.n_max,
        min: end(&r.min),
        max: end(&r.max),
        histogram: keyed(&r.histogram),
        first_occurrences: keyed(&r.first_occurrences),
        ambiguous: r.ambiguous.clone(),
        frequency_of_two: r.frequency(2),
    })
}

fn check_second_iterate(r: &SecondIterateReport) -> Result<(), CliError> {
    let lo = parse_decimal(SECOND_ITERATE_RANGE.0)?;
    let hi = parse_decimal(SECOND_ITERATE_RANGE.1)?;
    let min_lo = parse_decimal(&r.min.lo)?;
    let max_hi = parse_decimal(&r.max.hi)?;
    if min_lo < lo {
        return Err(CliError::Violation(format!(
            "F_3^2(n) - alpha_3^2 n may drop to {} at n = {}",
            r.min.lo, r.min.n
        )));
    }
    if max_hi > hi {
        return Err(CliError::Violation(format!(
            "F_3^2(n) - alpha_3^2 n may reach {} at n = {}",
            r.max.hi, r.max.n
        )));
    }
    if let Some((v, n)) = r
        .first_occurrences
        .iter()
        .find(|(v, _)| !["0", "1", "2"].contains(&v.as_str()))
    {
        return Err(CliError::Violation(format!(
            "floor difference {v} at n = {n}, outside {{0, 1, 2}}"
        )));
    }
    if let Some(n) = r.ambiguous.first() {
        return Err(CliError::Violation(format!(
            "floor(alpha_3^2 n) undecided at n = {n}"
        )));
    }
    Ok(())
}
