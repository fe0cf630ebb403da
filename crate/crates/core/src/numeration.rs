//! Digital expansions in base `(A_{k,p})_p`: canonical decompositions
//! (a generalised Zeckendorf theorem), lax normalisation, shifts, and the
//! shift-based formulations of `F_k`, `F~_k`, `L_k` and the rank.

use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::sequences::ASeq;

/// A finite non-decreasing list of positions, read against `A_{k,.}`.
///
/// Repeated positions are allowed (they stand for digits of 2 or more), so
/// this is a multiset rather than a digit vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Decomp {
    k: usize,
    positions: Vec<usize>,
}

/// Least position of a decomposition, or `Infinity` when it is empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rank {
    Finite(usize),
    Infinity,
}

impl fmt::Display for Rank {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rank::Finite(r) => write!(f, "{r}"),
            Rank::Infinity => f.write_str("inf"),
        }
    }
}

impl Decomp {
    /// Builds a decomposition; positions are sorted.
    pub fn new(k: usize, mut positions: Vec<usize>) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroDepth);
        }
        positions.sort_unstable();
        Ok(Self { k, positions })
    }

    pub fn empty(k: usize) -> Result<Self> {
        Self::new(k, Vec::new())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    fn gaps_at_least(&self, d: usize) -> bool {
        self.positions.windows(2).all(|w| w[1] - w[0] >= d)
    }

    /// Consecutive positions at distance `>= k` (hence strictly increasing).
    pub fn is_canonical(&self) -> bool {
        self.gaps_at_least(self.k)
    }

    /// Consecutive positions at distance `>= k - 1`.
    pub fn is_lax(&self) -> bool {
        self.gaps_at_least(self.k - 1)
    }

    pub fn rank(&self) -> Rank {
        self.positions
            .first()
            .map_or(Rank::Infinity, |&p| Rank::Finite(p))
    }

    /// `D << q`: adds `q` to every position.
    pub fn shift_left(&self, q: usize) -> Decomp {
        Decomp {
            k: self.k,
            positions: self.positions.iter().map(|p| p + q).collect(),
        }
    }

    /// `D >>+ q`: every position `p` becomes `max(0, p - q)`.
    pub fn shift_right_upper(&self, q: usize) -> Decomp {
        Decomp {
            k: self.k,
            positions: self.positions.iter().map(|p| p.saturating_sub(q)).collect(),
        }
    }

    /// `D >> q`: drops positions below `q` and subtracts `q` from the rest.
    pub fn shift_right(&self, q: usize) -> Decomp {
        Decomp {
            k: self.k,
            positions: self
                .positions
                .iter()
                .filter(|&&p| p >= q)
                .map(|p| p - q)
                .collect(),
        }
    }

    /// Digit string, most significant digit first (`17` at `k = 2` is
    /// `"100101"`). The empty decomposition renders as `"0"`; a digit above 9
    /// cannot be represented and yields `None`.
    pub fn digits(&self) -> Option<String> {
        let Some(&top) = self.positions.last() else {
            return Some("0".to_string());
        };
        let mut counts = vec![0usize; top + 1];
        for &p in &self.positions {
            counts[p] += 1;
        }
        counts
            .iter()
            .rev()
            .map(|&c| char::from_digit(c as u32, 10))
            .collect()
    }
}

impl fmt::Display for Decomp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.positions.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// The numeration system of base `A_{k,.}`, holding a growable cache of
/// the sequence.
#[derive(Debug, Clone)]
pub struct Numeration {
    seq: ASeq,
}

impl Numeration {
    pub fn new(k: usize) -> Result<Self> {
        Ok(Self { seq: ASeq::new(k)? })
    }

    pub fn k(&self) -> usize {
        self.seq.k()
    }

    pub fn seq(&mut self) -> &mut ASeq {
        &mut self.seq
    }

    fn check_k(&self, d: &Decomp) -> Result<()> {
        if d.k != self.k() {
            return Err(Error::DepthMismatch(d.k, self.k()));
        }
        Ok(())
    }

    /// `Sigma_k(D)`.
    pub fn sum(&mut self, d: &Decomp) -> Result<BigUint> {
        self.check_k(d)?;
        Ok(self.sum_positions(&d.positions))
    }

    pub(crate) fn sum_positions(&mut self, positions: &[usize]) -> BigUint {
        if let Some(&top) = positions.last() {
            self.seq.extend_to(top);
        }
        let v = self.seq.values();
        positions
            .iter()
            .fold(BigUint::zero(), |acc, &p| acc + &v[p])
    }

    /// Sum of positions when every term and the total fit in a `u64`.
    pub(crate) fn sum_positions_u64(&mut self, positions: &[usize]) -> Option<u64> {
        let mut total: u64 = 0;
        for &p in positions {
            total = total.checked_add(self.seq.a_u64(p)?)?;
        }
        Some(total)
    }

    /// Canonical decomposition `D_k(n)`, built greedily from the largest
    /// `A_{k,p} <= n` downwards.
    pub fn zeckendorf(&mut self, n: &BigUint) -> Decomp {
        if let Some(small) = num_traits::ToPrimitive::to_u64(n) {
            return self.zeckendorf_u64(small);
        }
        let k = self.k();
        self.seq.extend_past(n);
        let values = self.seq.values();
        let mut rest = n.clone();
        let mut top = values.len();
        let mut positions = Vec::new();
        while !rest.is_zero() {
            // largest p < top with A_p <= rest
            let p = values[..top].partition_point(|a| a <= &rest) - 1;
            rest -= &values[p];
            positions.push(p);
            top = (p + 1).saturating_sub(k);
        }
        positions.reverse();
        Decomp { k, positions }
    }

    /// `D_k(n)` for machine-word `n`.
    pub fn zeckendorf_u64(&mut self, n: u64) -> Decomp {
        let k = self.k();
        self.seq.extend_past_u64(n);
        let values = self.seq.small_values();
        let mut rest = n;
        let mut top = values.len();
        let mut positions = Vec::new();
        while rest != 0 {
            let p = values[..top].partition_point(|&a| a <= rest) - 1;
            rest -= values[p];
            positions.push(p);
            top = (p + 1).saturating_sub(k);
        }
        positions.reverse();
        Decomp { k, positions }
    }

    /// Repairs a lax decomposition into the canonical one of equal sum by
    /// repeatedly merging the highest pair `p-1, p-k` into `p`.
    pub fn normalize(&self, d: &Decomp) -> Result<Decomp> {
        self.check_k(d)?;
        if !d.is_lax() {
            return Err(Error::NotLax {
                k: d.k,
                positions: d.positions.clone(),
            });
        }
        Ok(normalize_lax(d))
    }

    /// Given the canonical decomposition of `n`, returns `D_k(n + 1)`: adjoin
    /// position 0 when the rank is at least `k`, otherwise bump the lowest
    /// position and renormalise.
    pub fn succ_decomp(&self, d: &Decomp) -> Result<Decomp> {
        self.check_k(d)?;
        if !d.is_canonical() {
            return Err(Error::NotCanonical {
                k: d.k,
                positions: d.positions.clone(),
            });
        }
        let k = d.k;
        match d.rank() {
            Rank::Finite(r) if r < k => {
                let mut positions = d.positions.clone();
                positions[0] = r + 1;
                Ok(normalize_lax(&Decomp { k, positions }))
            }
            _ => {
                let mut positions = Vec::with_capacity(d.len() + 1);
                positions.push(0);
                positions.extend_from_slice(&d.positions);
                Ok(Decomp { k, positions })
            }
        }
    }

    /// k-rank of `n`: least position of `D_k(n)`.
    pub fn rank(&mut self, n: &BigUint) -> Rank {
        self.zeckendorf(n).rank()
    }

    pub fn rank_u64(&mut self, n: u64) -> Rank {
        self.zeckendorf_u64(n).rank()
    }

    /// `F_k(n) = Sigma_k(D_k(n) >>+ 1)`.
    pub fn f_by_shift(&mut self, n: &BigUint) -> BigUint {
        self.f_iter_by_shift(1, n)
    }

    /// `F_k^q(n) = Sigma_k(D_k(n) >>+ q)`, valid for `q <= k`.
    pub fn f_iter_by_shift(&mut self, q: usize, n: &BigUint) -> BigUint {
        let d = self.zeckendorf(n).shift_right_upper(q);
        self.sum_positions(&d.positions)
    }

    pub fn f_by_shift_u64(&mut self, n: u64) -> u64 {
        self.f_iter_by_shift_u64(1, n)
    }

    pub fn f_iter_by_shift_u64(&mut self, q: usize, n: u64) -> u64 {
        let d = self.zeckendorf_u64(n).shift_right_upper(q);
        self.sum_positions_u64(&d.positions)
            .expect("F_k^q(n) <= n fits in u64")
    }

    /// Meek and Van Rees' `F~_k(n) = Sigma_k(D_k(n) >> 1)`.
    pub fn f_tilde(&mut self, n: &BigUint) -> BigUint {
        let d = self.zeckendorf(n).shift_right(1);
        self.sum_positions(&d.positions)
    }

    /// `L_k^q(n) = Sigma_k(D_k(n) << q)`.
    pub fn l_by_shift(&mut self, n: &BigUint, q: usize) -> BigUint {
        let d = self.zeckendorf(n).shift_left(q);
        self.sum_positions(&d.positions)
    }
}

fn normalize_lax(d: &Decomp) -> Decomp {
    let k = d.k;
    let mut pos = d.positions.clone();
    // Scan from the top for the highest pair at distance exactly k - 1.
    'outer: loop {
        for i in (1..pos.len()).rev() {
            if pos[i] - pos[i - 1] == k - 1 {
                let merged = pos[i] + 1;
                pos.remove(i);
                pos[i - 1] = merged;
                continue 'outer;
            }
        }
        break;
    }
    Decomp { k, positions: pos }
}
