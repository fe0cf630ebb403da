//! Running extremes of the discrepancy over `[0, A_{k,p})`, and the
//! certified enclosures of its supremum and infimum built from them.

use std::cmp::Ordering;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::One;

use super::affine::{compare, ExactAffine};
use crate::algebraic::exact::biguint_to_rational;
use crate::algebraic::{residue_bound, root_set, DyadicBracket, RationalInterval};
use crate::error::{Error, Result};
use crate::sequences::ASeq;

/// `dmax[p]` and `dmin[p]`: the largest and smallest `delta_k(n)` over
/// `n < A_{k,p}`.
#[derive(Debug, Clone)]
pub struct ExtremaTable {
    k: usize,
    dmax: Vec<ExactAffine>,
    dmin: Vec<ExactAffine>,
}

impl ExtremaTable {
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn p_max(&self) -> usize {
        self.dmax.len() - 1
    }

    pub fn dmax(&self) -> &[ExactAffine] {
        &self.dmax
    }

    pub fn dmin(&self) -> &[ExactAffine] {
        &self.dmin
    }
}

fn pick(x: ExactAffine, y: ExactAffine, want: Ordering) -> ExactAffine {
    match compare(&y, &x).expect("same depth") {
        o if o == want => y,
        _ => x,
    }
}

/// Fills `dmax`/`dmin` up to `p_max` with the recursion
/// `dmax[p] = max(dmax[p-1], dmax[p-k] + delta_k(A_{k,p-1}))`, indices below
/// zero clamped to zero, and `delta_k(A_{k,q}) = A_{k,q-1} - alpha_k A_{k,q}`.
pub fn extrema_table(k: usize, p_max: usize) -> Result<ExtremaTable> {
    let mut seq = ASeq::new(k)?;
    seq.extend_to(p_max);
    let a = seq.values();
    let mut dmax = vec![ExactAffine::zero(k)];
    let mut dmin = vec![ExactAffine::zero(k)];
    for p in 1..=p_max {
        let q = p - 1;
        let step = ExactAffine::new(k, a[q.saturating_sub(1)].clone(), a[q].clone());
        let back = p.saturating_sub(k);
        let hi = &dmax[back] + &step;
        let lo = &dmin[back] + &step;
        dmax.push(pick(dmax[p - 1].clone(), hi, Ordering::Greater));
        dmin.push(pick(dmin[p - 1].clone(), lo, Ordering::Less));
    }
    Ok(ExtremaTable { k, dmax, dmin })
}

/// Certified enclosures of `sup delta_k` and `inf delta_k`.
#[derive(Debug, Clone)]
pub struct Certification {
    pub k: usize,
    pub p: usize,
    /// Bracket of `alpha_k` used for the conversion.
    pub alpha: RationalInterval,
    pub dmax: ExactAffine,
    pub dmin: ExactAffine,
    pub residue_bound: BigRational,
    pub sup: RationalInterval,
    pub inf: RationalInterval,
}

/// Converts `dmax[p]` and `dmin[p]` to rational intervals and widens them
/// by the residue bound `R_k(p)`: `sup` lies in `[dmax, dmax + R]` and
/// `inf` in `[dmin - R, dmin]`.
///
/// `alpha_eps` bounds the error that the bracket of `alpha_k` contributes to
/// each converted value, so the bracket itself is made narrower by the size
/// of the coefficients `b`.
pub fn certify_bounds(
    k: usize,
    p: usize,
    alpha_eps: &BigRational,
    precision: u32,
) -> Result<Certification> {
    if !(3..=4).contains(&k) {
        return Err(Error::UnsupportedDepth {
            k,
            reason: "certification is provided for k = 3 and k = 4",
        });
    }
    let table = extrema_table(k, p)?;
    let dmax = table.dmax[p].clone();
    let dmin = table.dmin[p].clone();
    let b_max = dmax.b().max(dmin.b()).max(&BigUint::one()).clone();
    let mut bracket = DyadicBracket::alpha(k)?;
    bracket.refine_width(&(alpha_eps / biguint_to_rational(&b_max)))?;
    let alpha = bracket.interval();

    let rs = root_set(k, precision)?;
    let r = residue_bound(&rs, p as u64)?;

    let hi_iv = dmax.evaluate(&alpha);
    let lo_iv = dmin.evaluate(&alpha);
    let sup = RationalInterval::new(hi_iv.lo().clone(), hi_iv.hi() + &r);
    let inf = RationalInterval::new(lo_iv.lo() - &r, lo_iv.hi().clone());
    Ok(Certification {
        k,
        p,
        alpha,
        dmax,
        dmin,
        residue_bound: r,
        sup,
        inf,
    })
}

/// Largest `p` with `A_{k,p} <= limit`, used to pick scan ranges.
pub fn last_position_below(k: usize, limit: u64) -> Result<usize> {
    let mut seq = ASeq::new(k)?;
    let mut p = 0;
    while seq.a_u64(p + 1).is_some_and(|v| v <= limit) {
        p += 1;
    }
    Ok(p)
}
