//! Serializable reports. Big numbers and rationals are decimal strings so
//! that no precision is lost in JSON.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

/// Closed rational interval as directed decimal strings.
#[derive(Debug, Clone, Serialize)]
pub struct Interval {
    pub lo: String,
    pub hi: String,
}

#[derive(Debug, Serialize)]
pub struct EvalReport {
    pub k: usize,
    pub n: String,
    pub iter: usize,
    pub f: String,
    pub l: String,
    /// Whether the table-driven recursion was run and agreed.
    pub recursion_checked: bool,
}

impl EvalReport {
    pub fn text(&self) -> String {
        let power = if self.iter == 1 {
            String::new()
        } else {
            format!("^{}", self.iter)
        };
        format!(
            "F_{k}{power}({n}) = {f}\nL_{k}({n}) = {l}\n",
            k = self.k,
            n = self.n,
            f = self.f,
            l = self.l
        )
    }
}

#[derive(Debug, Serialize)]
pub struct SeqReport {
    pub k: usize,
    pub values: Vec<String>,
}

impl SeqReport {
    pub fn text(&self) -> String {
        let mut s = String::new();
        for (p, v) in self.values.iter().enumerate() {
            let _ = writeln!(s, "{p} {v}");
        }
        s
    }
}

#[derive(Debug, Serialize)]
pub struct DecompReport {
    pub k: usize,
    pub n: String,
    pub positions: Vec<usize>,
    /// Absent when some digit exceeds 9.
    pub digits: Option<String>,
    /// Least position, or `"inf"` for zero.
    pub rank: serde_json::Value,
}

impl DecompReport {
    pub fn text(&self) -> String {
        let pos: Vec<String> = self.positions.iter().map(|p| p.to_string()).collect();
        format!(
            "positions {}\ndigits {}\nrank {}\n",
            pos.join(","),
            self.digits.as_deref().unwrap_or("-"),
            match &self.rank {
                serde_json::Value::String(s) => s.clone(),
                v => v.to_string(),
            }
        )
    }
}

#[derive(Debug, Serialize)]
pub struct WordReport {
    pub k: usize,
    pub len: usize,
    pub word: String,
}

/// A disk of the complex plane: decimal center and an upper bound on the
/// radius.
#[derive(Debug, Serialize)]
pub struct Disk {
    pub re: String,
    pub im: String,
    pub radius: f64,
}

#[derive(Debug, Serialize)]
pub struct RootsReport {
    pub k: usize,
    pub precision_bits: u32,
    pub alpha: Interval,
    pub beta: Interval,
    pub roots: Vec<Disk>,
    pub moduli: Vec<f64>,
    pub c: Vec<Disk>,
    pub d: Vec<Disk>,
    pub secondary_exponent: Option<f64>,
    /// Integer coefficients, lowest degree first, of the polynomial whose
    /// zeros are the `c` values.
    pub coefficient_polynomial: Option<Vec<String>>,
}

fn complex(z: &Disk) -> String {
    match z.im.strip_prefix('-') {
        Some(mag) => format!("{} - {mag} i", z.re),
        None => format!("{} + {} i", z.re, z.im),
    }
}

impl RootsReport {
    pub fn text(&self) -> String {
        let mut s = format!(
            "k = {}\nalpha in [{}, {}]\nbeta in [{}, {}]\n",
            self.k, self.alpha.lo, self.alpha.hi, self.beta.lo, self.beta.hi
        );
        for (i, ((r, c), m)) in self.roots.iter().zip(&self.c).zip(&self.moduli).enumerate() {
            let _ = writeln!(
                s,
                "r{i} = {}  |r| = {m:.12}  c{i} = {}",
                complex(r),
                complex(c)
            );
        }
        if let Some(e) = self.secondary_exponent {
            let _ = writeln!(s, "growth exponent {e:.6}");
        }
        if let Some(p) = &self.coefficient_polynomial {
            let _ = writeln!(s, "coefficient polynomial {}", p.join(" "));
        }
        s
    }
}

#[derive(Debug, Serialize)]
pub struct ExactPair {
    pub a: String,
    pub b: String,
}

#[derive(Debug, Serialize)]
pub struct CertifyReport {
    pub k: usize,
    pub p: usize,
    pub alpha_eps: String,
    pub precision_bits: u32,
    pub alpha: Interval,
    pub dmax: ExactPair,
    pub dmin: ExactPair,
    pub residue_bound: String,
    pub sup: Interval,
    pub inf: Interval,
}

impl CertifyReport {
    pub fn text(&self) -> String {
        format!(
            "k = {} p = {}\nsup in [{}, {}]\ninf in [{}, {}]\nresidue <= {}\n",
            self.k, self.p, self.sup.lo, self.sup.hi, self.inf.lo, self.inf.hi, self.residue_bound
        )
    }
}

#[derive(Debug, Serialize)]
pub struct Occurrence {
    pub value: i64,
    pub n: u64,
}

#[derive(Debug, Serialize)]
pub struct HistogramReport {
    pub k: usize,
    pub n_max: u64,
    pub histogram: BTreeMap<String, u64>,
    pub first_occurrences: BTreeMap<String, u64>,
    pub ambiguous: Vec<u64>,
    pub expected: Option<Vec<i64>>,
    pub violations: Vec<Occurrence>,
}

fn histogram_text(h: &BTreeMap<String, u64>, first: &BTreeMap<String, u64>) -> String {
    let mut rows: Vec<(i64, &String)> = h.keys().map(|v| (v.parse().unwrap_or(0), v)).collect();
    rows.sort();
    let mut s = String::from("value count first_n\n");
    for (_, v) in rows {
        let _ = writeln!(s, "{v} {} {}", h[v], first[v]);
    }
    s
}

impl HistogramReport {
    pub fn text(&self) -> String {
        let mut s = format!("k = {} n <= {}\n", self.k, self.n_max);
        s += &histogram_text(&self.histogram, &self.first_occurrences);
        if !self.ambiguous.is_empty() {
            let _ = writeln!(s, "undecided floors: {:?}", self.ambiguous);
        }
        s
    }
}

#[derive(Debug, Serialize)]
pub struct WitnessReport {
    pub n: u64,
    pub m: u64,
    pub defect: i64,
}

#[derive(Debug, Serialize)]
pub struct AdditivityReport {
    pub k: usize,
    pub n_max: u64,
    pub max_abs: u64,
    pub witness: WitnessReport,
    pub max: WitnessReport,
    pub min: WitnessReport,
    pub bound: Option<u64>,
}

impl AdditivityReport {
    pub fn text(&self) -> String {
        format!(
            "k = {} n+m <= {}\nmax |defect| = {} at (n, m) = ({}, {})\nmax defect {} at ({}, {})\nmin defect {} at ({}, {})\n",
            self.k,
            self.n_max,
            self.max_abs,
            self.witness.n,
            self.witness.m,
            self.max.defect,
            self.max.n,
            self.max.m,
            self.min.defect,
            self.min.n,
            self.min.m
        )
    }
}

#[derive(Debug, Serialize)]
pub struct DriftRow {
    pub n: u64,
    pub u: String,
    pub delta_u: f64,
    pub u_prime: String,
    pub delta_u_prime: f64,
}

#[derive(Debug, Serialize)]
pub struct K5Report {
    pub k: usize,
    pub n_max: u64,
    pub predicted_slope: f64,
    pub slope: f64,
    pub slope_prime: f64,
    pub increasing_from: u64,
    pub decreasing_from: u64,
    pub first_above_two: Option<u64>,
    pub log_bound: LogBound,
    pub rows: Vec<DriftRow>,
}

#[derive(Debug, Serialize)]
pub struct LogBound {
    pub c: f64,
    pub m: f64,
}

#[derive(Debug, Serialize)]
pub struct Extreme {
    pub value: f64,
    pub at: u64,
}

#[derive(Debug, Serialize)]
pub struct GrowthReport {
    pub k: usize,
    pub p_max: usize,
    pub n_scan: u64,
    pub max_on_a: Extreme,
    pub min_on_a: Extreme,
    pub max_scan: Extreme,
    pub min_scan: Extreme,
    pub fitted_exponent: f64,
    pub predicted_exponent: f64,
}

#[derive(Debug, Serialize)]
#[serde(untagged)]
pub enum DivergeReport {
    K5(K5Report),
    Growth(GrowthReport),
}

impl DivergeReport {
    pub fn text(&self) -> String {
        match self {
            DivergeReport::K5(r) => {
                let mut s = format!(
                    "slope {:.6} (predicted {:.6}), opposite slope {:.6}\nincreasing from n = {}, decreasing from n = {}\n",
                    r.slope, r.predicted_slope, r.slope_prime, r.increasing_from, r.decreasing_from
                );
                s += "n delta(u_n) delta(u'_n)\n";
                for row in &r.rows {
                    let _ = writeln!(s, "{} {:.12} {:.12}", row.n, row.delta_u, row.delta_u_prime);
                }
                s
            }
            DivergeReport::Growth(r) => format!(
                "k = {}\nalong A_p, p <= {}: max {:.12} at p = {}, min {:.12} at p = {}\n\
                 n <= {}: max {:.12} at n = {}, min {:.12} at n = {}\n\
                 exponent {:.4} (predicted {:.4})\n",
                r.k,
                r.p_max,
                r.max_on_a.value,
                r.max_on_a.at,
                r.min_on_a.value,
                r.min_on_a.at,
                r.n_scan,
                r.max_scan.value,
                r.max_scan.at,
                r.min_scan.value,
                r.min_scan.at,
                r.fitted_exponent,
                r.predicted_exponent
            ),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Point {
    pub n: u64,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Serialize)]
pub struct FractalReport {
    pub n_max: u64,
    pub shear: bool,
    pub points: Vec<Point>,
}

#[derive(Debug, Serialize)]
pub struct RangeEnd {
    pub lo: String,
    pub hi: String,
    pub n: u64,
}

#[derive(Debug, Serialize)]
pub struct SecondIterateReport {
    pub n_max: u64,
    pub min: RangeEnd,
    pub max: RangeEnd,
    pub histogram: BTreeMap<String, u64>,
    pub first_occurrences: BTreeMap<String, u64>,
    pub ambiguous: Vec<u64>,
    pub frequency_of_two: f64,
}

impl SecondIterateReport {
    pub fn text(&self) -> String {
        let mut s = format!(
            "n <= {}\nmin in [{}, {}] at n = {}\nmax in [{}, {}] at n = {}\n",
            self.n_max, self.min.lo, self.min.hi, self.min.n, self.max.lo, self.max.hi, self.max.n
        );
        s += &histogram_text(&self.histogram, &self.first_occurrences);
        s
    }
}
