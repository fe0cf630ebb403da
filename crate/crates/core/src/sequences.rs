//! The nested recursions `F_k(n) = n - F_k^k(n-1)`, their iterates, the
//! right adjoint `L_k`, and the Fibonacci-like sequences `A_{k,p}`.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};

/// Memoised evaluation of `F_k` for one fixed nesting depth `k`.
///
/// Values are filled bottom-up: computing `F_k(n)` only needs the `k`-fold
/// iterate at `n - 1`, and every intermediate argument is `<= n - 1`, so the
/// table is always complete below its length.
#[derive(Debug, Clone)]
pub struct FContext {
    k: usize,
    memo: Vec<u64>,
}

impl FContext {
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroDepth);
        }
        Ok(Self { k, memo: vec![0] })
    }

    /// Context with the table already filled up to `n_max` inclusive.
    pub fn warmed(k: usize, n_max: u64) -> Result<Self> {
        let mut ctx = Self::new(k)?;
        ctx.warm(n_max);
        Ok(ctx)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Largest `n` for which `F_k(n)` is tabulated.
    pub fn bound(&self) -> u64 {
        self.memo.len() as u64 - 1
    }

    /// Extends the table so that `F_k(n)` is known for every `n <= n_max`.
    pub fn warm(&mut self, n_max: u64) {
        let target = usize::try_from(n_max).expect("n_max exceeds addressable memory");
        if target < self.memo.len() {
            return;
        }
        self.memo.reserve(target + 1 - self.memo.len());
        for n in self.memo.len()..=target {
            let mut m = (n - 1) as u64;
            for _ in 0..self.k {
                m = self.memo[m as usize];
            }
            assert!(m <= n as u64, "F_k^k(n-1) exceeded n");
            self.memo.push(n as u64 - m);
        }
    }

    /// Read-only lookup in the warmed table.
    pub fn get(&self, n: u64) -> Option<u64> {
        usize::try_from(n)
            .ok()
            .and_then(|i| self.memo.get(i).copied())
    }

    /// `F_k(n)`.
    pub fn f(&mut self, n: u64) -> u64 {
        self.warm(n);
        self.memo[n as usize]
    }

    /// `F_k^j(n)`; `j = 0` is the identity.
    pub fn f_iter(&mut self, j: usize, n: u64) -> u64 {
        self.warm(n);
        self.iter_warm(j, n)
    }

    /// Iterate on an already warmed table; panics if `n` is out of range.
    pub fn iter_warm(&self, j: usize, n: u64) -> u64 {
        let mut m = n;
        for _ in 0..j {
            m = self.memo[m as usize];
        }
        m
    }

    /// Right adjoint `L_k(n) = n + F_k^{k-1}(n)`.
    pub fn l(&mut self, n: u64) -> u64 {
        n + self.f_iter(self.k - 1, n)
    }

    /// The tabulated values `F_k(0..=bound)`.
    pub fn table(&self) -> &[u64] {
        &self.memo
    }
}

/// The sequence `A_{k,p}`: `p + 1` for `p <= k`, then
/// `A_{k,p} = A_{k,p-1} + A_{k,p-k}`.
#[derive(Debug, Clone)]
pub struct ASeq {
    k: usize,
    values: Vec<BigUint>,
    // Prefix of `values` that fits in a machine word.
    small: Vec<u64>,
}

impl ASeq {
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::ZeroDepth);
        }
        Ok(Self {
            k,
            values: vec![BigUint::one()],
            small: vec![1],
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Number of materialised terms.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn extend_to(&mut self, p: usize) {
        while self.values.len() <= p {
            let q = self.values.len();
            let next = &self.values[q - 1] + &self.values[q.saturating_sub(self.k)];
            if self.small.len() == q {
                if let Some(v) = next.to_u64() {
                    self.small.push(v);
                }
            }
            self.values.push(next);
        }
    }

    /// `A_{k,p}`.
    pub fn a(&mut self, p: usize) -> &BigUint {
        self.extend_to(p);
        &self.values[p]
    }

    /// `A_{k,p}` when it fits in a `u64`.
    pub fn a_u64(&mut self, p: usize) -> Option<u64> {
        while self.small.len() <= p && self.small.len() == self.values.len() {
            self.extend_to(self.values.len());
        }
        self.small.get(p).copied()
    }

    /// Read-only access to already materialised terms.
    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    pub(crate) fn small_values(&self) -> &[u64] {
        &self.small
    }

    /// Extends the sequence until its last term is strictly above `n`.
    pub fn extend_past(&mut self, n: &BigUint) {
        while self.values.last().unwrap() <= n {
            self.extend_to(self.values.len());
        }
    }

    pub(crate) fn extend_past_u64(&mut self, n: u64) {
        loop {
            match self.small.last() {
                Some(&last) if last > n => return,
                _ if self.small.len() < self.values.len() => return,
                _ => self.extend_to(self.values.len()),
            }
        }
    }
}

/// Largest `p` accepted by [`a_combinatorial_oracle`].
pub const COMBINATORIAL_LIMIT: usize = 24;

/// Counts the subsets of `{1..p}` whose elements are pairwise at distance at
/// least `k`, by enumerating all `2^p` subsets.
pub fn a_combinatorial_oracle(k: usize, p: usize) -> Result<BigUint> {
    if k == 0 {
        return Err(Error::ZeroDepth);
    }
    if p > COMBINATORIAL_LIMIT {
        return Err(Error::EnumerationTooLarge {
            p,
            limit: COMBINATORIAL_LIMIT,
        });
    }
    let mut count: u64 = 0;
    for mask in 0u32..(1u32 << p) {
        let mut last: Option<usize> = None;
        let mut ok = true;
        for bit in 0..p {
            if mask & (1 << bit) != 0 {
                if let Some(prev) = last {
                    if bit - prev < k {
                        ok = false;
                        break;
                    }
                }
                last = Some(bit);
            }
        }
        if ok {
            count += 1;
        }
    }
    Ok(BigUint::from(count))
}
