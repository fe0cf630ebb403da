//! The complex zeros `r_{k,i}` of `Q_k = X^k - X^{k-1} - 1` as certified
//! disks, with the coefficients `c_{k,i}` of `A_{k,n} = sum c_{k,i} r_{k,i}^n`
//! and `d_{k,i}` of `A_{k,n-1} - alpha_k A_{k,n} = sum d_{k,i} r_{k,i}^n`.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::ball::{CRat, ComplexBall};
use super::exact::{pow2, rat, round_up, IntPoly};
use super::interval::DyadicBracket;
use crate::error::{Error, Result};

/// Default working precision in bits.
pub const DEFAULT_PRECISION: u32 = 128;

/// Simultaneous Aberth iteration in `f64` for a polynomial given by its
/// coefficients, lowest degree first. Returns the approximate zeros.
pub fn aberth(coeffs: &[f64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    assert!(n >= 1 && coeffs[n] != 0.0, "degree must be positive");
    let eval = |z: Complex64| {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in coeffs.iter().rev() {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    };
    // Cauchy bound on the moduli of the zeros.
    let bound = 1.0
        + coeffs[..n]
            .iter()
            .map(|c| (c / coeffs[n]).abs())
            .fold(0.0, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|j| {
            let t = std::f64::consts::TAU * j as f64 / n as f64 + 0.4;
            Complex64::from_polar(0.6 * bound, t)
        })
        .collect();
    for _ in 0..500 {
        let mut worst: f64 = 0.0;
        for j in 0..n {
            let (p, dp) = eval(z[j]);
            if p == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..n)
                .filter(|&l| l != j)
                .map(|l| (z[j] - z[l]).inv())
                .sum();
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            z[j] -= w;
            worst = worst.max(w.norm() / z[j].norm().max(1.0));
        }
        if worst < 1e-15 {
            break;
        }
    }
    z
}

fn eval_crat(poly: &IntPoly, z: &CRat) -> CRat {
    let mut acc = CRat::zero();
    for c in poly.coeffs().iter().rev() {
        acc = acc
            .mul(z)
            .add(&CRat::real(BigRational::from_integer(c.clone())));
    }
    acc
}

fn derivative(poly: &IntPoly) -> IntPoly {
    let c = poly.coeffs();
    if c.len() <= 1 {
        return IntPoly::new(vec![BigInt::zero()]);
    }
    IntPoly::new(
        c.iter()
            .enumerate()
            .skip(1)
            .map(|(i, a)| a * BigInt::from(i))
            .collect(),
    )
}

/// Newton iteration in exact complex rationals, rounding each iterate to
/// `prec + 8` bits, until the step drops below `2^-(prec + 4)`.
fn polish(poly: &IntPoly, dpoly: &IntPoly, mut z: CRat, prec: u32) -> Result<CRat> {
    let tiny = pow2(-2 * (prec as i64 + 4));
    for _ in 0..64 {
        let d = eval_crat(dpoly, &z);
        if d.norm_sqr().is_zero() {
            return Err(Error::Precision("derivative vanished during Newton".into()));
        }
        let step = eval_crat(poly, &z).div(&d);
        z = z.sub(&step).round(prec + 8).0;
        if step.norm_sqr() <= tiny {
            return Ok(z);
        }
    }
    Err(Error::Precision("Newton iteration did not converge".into()))
}

/// Roots of `Q_k` with their closed-form coefficients.
#[derive(Debug, Clone)]
pub struct RootSet {
    k: usize,
    precision: u32,
    roots: Vec<ComplexBall>,
    c: Vec<ComplexBall>,
    d: Vec<ComplexBall>,
    alpha: ComplexBall,
}

/// Computes the `k` zeros of `Q_k`, each enclosed in a certified disk, in
/// decreasing lexicographic order of (real part, imaginary part).
pub fn root_set(k: usize, precision: u32) -> Result<RootSet> {
    if k == 0 {
        return Err(Error::ZeroDepth);
    }
    if precision < 32 {
        return Err(Error::Precision(format!(
            "{precision} bits is below the 32-bit minimum"
        )));
    }
    let poly = IntPoly::q_k(k);
    let dpoly = derivative(&poly);
    let coeffs: Vec<f64> = poly
        .coeffs()
        .iter()
        .map(|c| c.to_f64().expect("small coefficient"))
        .collect();
    let mut seeds = aberth(&coeffs);

    // Q_k has one real zero for odd k and two for even k; the others come
    // in conjugate pairs.
    let n_real = if k % 2 == 1 { 1 } else { 2 };
    seeds.sort_by(|a, b| a.im.abs().total_cmp(&b.im.abs()));
    let (real_seeds, rest) = seeds.split_at(n_real);
    let upper: Vec<Complex64> = rest.iter().filter(|z| z.im > 0.0).copied().collect();
    if upper.len() * 2 != rest.len() {
        return Err(Error::Precision(
            "floating seeds do not split into conjugate pairs".into(),
        ));
    }

    let mut centers = Vec::with_capacity(k);
    for z in real_seeds {
        let seed = CRat::real(BigRational::from_float(z.re).expect("finite seed"));
        centers.push(polish(&poly, &dpoly, seed, precision)?);
    }
    for z in &upper {
        let w = polish(&poly, &dpoly, CRat::from_f64(*z), precision)?;
        centers.push(w.conj());
        centers.push(w);
    }

    // Each disk of radius k |Q(z)| / |Q'(z)| around z holds a zero of Q;
    // pairwise disjoint disks therefore hold exactly one zero each.
    let residual_cap = pow2(-(precision as i64));
    let kk = rat(k as i64);
    let mut roots = Vec::with_capacity(k);
    for z in centers {
        let q = eval_crat(&poly, &z);
        if q.norm_sqr() > residual_cap {
            return Err(Error::Precision(format!(
                "residual above 2^-{} at {precision} bits",
                precision / 2
            )));
        }
        let dq = eval_crat(&dpoly, &z).abs_lower(precision);
        if dq.is_zero() {
            return Err(Error::Precision("derivative too small to certify".into()));
        }
        let radius = round_up(&(&kk * q.abs_upper(precision) / dq), 40);
        roots.push(ComplexBall::new(z, radius));
    }
    for i in 0..k {
        for j in i + 1..k {
            if !roots[i].disjoint(&roots[j]) {
                return Err(Error::Precision("root disks overlap".into()));
            }
        }
    }
    roots.sort_by(|a, b| {
        b.center()
            .re
            .cmp(&a.center().re)
            .then_with(|| b.center().im.cmp(&a.center().im))
    });

    let mut bracket = DyadicBracket::alpha(k)?;
    bracket.refine_bits(precision as u64 + 8);
    let alpha = {
        let iv = bracket.interval();
        let half = iv.width() / rat(2);
        ComplexBall::real(iv.midpoint(), half)
    };

    let mut c = Vec::with_capacity(k);
    let mut d = Vec::with_capacity(k);
    let km1 = ComplexBall::exact(CRat::real(rat(k as i64 - 1)));
    for (i, r) in roots.iter().enumerate() {
        let denom = r.scale(&kk, precision).sub(&km1, precision);
        let inv = denom
            .recip(precision)
            .ok_or_else(|| Error::Precision("k r - (k-1) not separated from 0".into()))?;
        let ci = r.pow(k as u64, precision).mul(&inv, precision);
        if i == 0 {
            d.push(ComplexBall::zero());
        } else {
            let rinv = r
                .recip(precision)
                .ok_or_else(|| Error::Precision("root not separated from 0".into()))?;
            d.push(ci.mul(&rinv.sub(&alpha, precision), precision));
        }
        c.push(ci);
    }

    Ok(RootSet {
        k,
        precision,
        roots,
        c,
        d,
        alpha,
    })
}

impl RootSet {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn roots(&self) -> &[ComplexBall] {
        &self.roots
    }

    pub fn c(&self) -> &[ComplexBall] {
        &self.c
    }

    pub fn d(&self) -> &[ComplexBall] {
        &self.d
    }

    /// `alpha_k` as a real disk.
    pub fn alpha(&self) -> &ComplexBall {
        &self.alpha
    }

    pub fn root_f64(&self, i: usize) -> Complex64 {
        self.roots[i].to_f64()
    }

    pub fn c_f64(&self, i: usize) -> Complex64 {
        self.c[i].to_f64()
    }

    pub fn d_f64(&self, i: usize) -> Complex64 {
        self.d[i].to_f64()
    }

    pub fn roots_f64(&self) -> Vec<Complex64> {
        self.roots.iter().map(ComplexBall::to_f64).collect()
    }

    pub fn d_all_f64(&self) -> Vec<Complex64> {
        self.d.iter().map(ComplexBall::to_f64).collect()
    }

    /// `ln |r_{k,1}| / ln beta_k`, the growth exponent of the discrepancy
    /// along its extremal subsequences. `None` for `k = 1`.
    pub fn secondary_exponent(&self) -> Option<f64> {
        (self.k >= 2).then(|| self.root_f64(1).norm().ln() / self.root_f64(0).re.ln())
    }
}

fn pow_up(x: &BigRational, mut e: u64, prec: u32) -> BigRational {
    let mut base = x.clone();
    let mut acc = BigRational::one();
    while e > 0 {
        if e & 1 == 1 {
            acc = round_up(&(&acc * &base), prec);
        }
        e >>= 1;
        if e > 0 {
            base = round_up(&(&base * &base), prec);
        }
    }
    acc
}

/// Certified upper bound on
/// `R_k(p) = sum_{i >= 1} |d_{k,i}| |r_{k,i}|^p / (1 - |r_{k,i}|^k)`.
/// Only defined when every secondary root lies strictly inside the unit
/// disk, i.e. for `k` in `{2, 3, 4}`.
pub fn residue_bound(rs: &RootSet, p: u64) -> Result<BigRational> {
    let k = rs.k;
    if !(2..=4).contains(&k) {
        return Err(Error::UnsupportedDepth {
            k,
            reason: "the residue needs all secondary roots inside the unit disk",
        });
    }
    let prec = rs.precision;
    let mut total = BigRational::zero();
    for i in 1..k {
        let m = round_up(&rs.roots[i].abs_upper(prec), prec);
        let mk = pow_up(&m, k as u64, prec);
        if mk >= BigRational::one() {
            return Err(Error::Precision("secondary modulus not below 1".into()));
        }
        let mp = pow_up(&m, p, prec);
        let term = rs.d[i].abs_upper(prec) * mp / (BigRational::one() - mk);
        total += round_up(&term, prec);
    }
    Ok(round_up(&total, 64))
}

/// `sum_i c_{k,i} r_{k,i}^n` as a disk, which contains the integer
/// `A_{k,n}`.
pub fn a_closed_form(rs: &RootSet, n: u64) -> ComplexBall {
    let prec = rs.precision;
    let mut acc = ComplexBall::zero();
    for (c, r) in rs.c.iter().zip(&rs.roots) {
        acc = acc.add(&c.mul(&r.pow(n, prec), prec), prec);
    }
    acc
}

/// `a_closed_form(rs, n)` for every `n <= n_max`, sharing the powers.
pub fn a_closed_form_series(rs: &RootSet, n_max: u64) -> Vec<ComplexBall> {
    let prec = rs.precision;
    let mut terms = rs.c.clone();
    let mut out = Vec::with_capacity(n_max as usize + 1);
    for n in 0..=n_max {
        if n > 0 {
            for (t, r) in terms.iter_mut().zip(&rs.roots) {
                *t = t.mul(r, prec);
            }
        }
        let mut acc = ComplexBall::zero();
        for t in &terms {
            acc = acc.add(t, prec);
        }
        out.push(acc);
    }
    out
}

/// Integer polynomial whose zeros are the `c_{k,i}`, recovered by rounding.
#[derive(Debug, Clone)]
pub struct CoefficientPolynomial {
    pub poly: IntPoly,
    /// Largest distance between a computed coefficient and its rounding.
    pub max_gap: BigRational,
}

/// `k^k + (k-1)^(k-1)`, the leading coefficient of the polynomial of the
/// `c_{k,i}` (and `1` for `k = 1`).
pub fn leading_coefficient(k: usize) -> BigInt {
    if k == 1 {
        return BigInt::one();
    }
    num_traits::pow(BigInt::from(k), k) + num_traits::pow(BigInt::from(k - 1), k - 1)
}

/// Expands `L * prod_i (X - c_{k,i})` in disk arithmetic, with `L` the
/// leading coefficient, and rounds every coefficient to an integer.
/// Fails when some rounding is not certain to be within `1/4`.
pub fn coefficient_polynomial(rs: &RootSet) -> Result<CoefficientPolynomial> {
    let k = rs.k;
    let prec = rs.precision;
    let lead = BigRational::from_integer(leading_coefficient(k));
    // Lowest degree first.
    let mut prod = vec![ComplexBall::exact(CRat::one())];
    for c in &rs.c {
        let mut next = vec![ComplexBall::zero(); prod.len() + 1];
        for (j, a) in prod.iter().enumerate() {
            next[j + 1] = next[j + 1].add(a, prec);
            next[j] = next[j].sub(&a.mul(c, prec), prec);
        }
        prod = next;
    }
    let quarter = BigRational::new(1.into(), 4.into());
    let mut coeffs = Vec::with_capacity(k + 1);
    let mut max_gap = BigRational::zero();
    for a in &prod {
        let (n, gap) = a.scale(&lead, prec).nearest_integer();
        if gap >= quarter {
            return Err(Error::Precision(format!(
                "coefficient rounding gap {gap} is not below 1/4"
            )));
        }
        if gap > max_gap {
            max_gap = gap;
        }
        coeffs.push(n);
    }
    let poly = IntPoly::new(coeffs);
    let lead_int = leading_coefficient(k);
    let c = poly.coeffs();
    if c[0] != BigInt::from(-1) || c[k] != lead_int || (k >= 2 && c[k - 1] != -lead_int) {
        return Err(Error::Precision(format!(
            "rounded polynomial {poly} breaks the expected coefficient pattern"
        )));
    }
    Ok(CoefficientPolynomial { poly, max_gap })
}

fn binomial(n: usize, j: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..j {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// `(X + k - 1)^k - k (X + k - 1)^(k-1) - k^k`, the monic polynomial whose
/// zeros are `k r_{k,i} - (k - 1)`.
pub fn shifted_polynomial(k: usize) -> IntPoly {
    assert!(k >= 1);
    let km1 = BigInt::from(k - 1);
    let kb = BigInt::from(k);
    let mut c = vec![BigInt::zero(); k + 1];
    for (j, slot) in c.iter_mut().enumerate() {
        *slot += binomial(k, j) * num_traits::pow(km1.clone(), k - j);
        if j < k {
            *slot -= &kb * binomial(k - 1, j) * num_traits::pow(km1.clone(), k - 1 - j);
        }
    }
    c[0] -= num_traits::pow(kb, k);
    IntPoly::new(c)
}

/// The negated reciprocal of [`shifted_polynomial`], whose zeros are
/// `1 / (k r_{k,i} - (k - 1))`.
pub fn shifted_reciprocal_polynomial(k: usize) -> IntPoly {
    let s = shifted_polynomial(k);
    IntPoly::new(s.coeffs().iter().rev().map(|c| -c).collect())
}

/// The same reciprocal written as
/// `lead X^k - sum_{j=1}^{k-1} C(k,j) (k-j-1) (k-1)^(j-1) X^j - 1`
/// for a caller-chosen leading coefficient.
pub fn reciprocal_by_formula(k: usize, lead: BigInt) -> IntPoly {
    let mut c = vec![BigInt::zero(); k + 1];
    c[0] = BigInt::from(-1);
    for (j, slot) in c.iter_mut().enumerate().take(k).skip(1) {
        *slot = -binomial(k, j)
            * BigInt::from(k as i64 - j as i64 - 1)
            * num_traits::pow(BigInt::from(k - 1), j - 1);
    }
    c[k] = lead;
    IntPoly::new(c)
}
