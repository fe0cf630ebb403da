//! The substitution `tau_k` (`k -> k1`, `i -> i+1`), its fixed point `x_k`,
//! and the correspondence between decompositions and prefixes of `x_k`.

use crate::error::{Error, Result};
use crate::numeration::Decomp;

/// A word over the alphabet `1..=k`, one letter per byte.
pub type Word = Vec<u8>;

/// The substitution `tau_k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Substitution {
    k: usize,
}

impl Substitution {
    pub fn new(k: usize) -> Result<Self> {
        match k {
            0 => Err(Error::ZeroDepth),
            k if k > u8::MAX as usize => Err(Error::UnsupportedDepth {
                k,
                reason: "letters are stored as bytes",
            }),
            k => Ok(Self { k }),
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    fn push_image(&self, letter: u8, out: &mut Word) {
        if letter as usize == self.k {
            out.push(letter);
            out.push(1);
        } else {
            out.push(letter + 1);
        }
    }

    /// `tau_k(w)`, the concatenation of the letter images.
    pub fn apply(&self, w: &[u8]) -> Result<Word> {
        let mut out = Vec::with_capacity(w.len() * 2);
        for &c in w {
            if c == 0 || c as usize > self.k {
                return Err(Error::LetterOutOfAlphabet {
                    k: self.k,
                    letter: c,
                });
            }
            self.push_image(c, &mut out);
        }
        Ok(out)
    }

    /// `tau_k^j(w)`.
    pub fn apply_n(&self, j: usize, w: &[u8]) -> Result<Word> {
        let mut cur = w.to_vec();
        for _ in 0..j {
            cur = self.apply(&cur)?;
        }
        Ok(cur)
    }
}

/// Lazily materialised prefix of the fixed point `x_k` of `tau_k`.
#[derive(Debug, Clone)]
pub struct MorphicWord {
    sub: Substitution,
    prefix: Word,
}

impl MorphicWord {
    pub fn new(k: usize) -> Result<Self> {
        let sub = Substitution::new(k)?;
        Ok(Self {
            sub,
            prefix: vec![k as u8],
        })
    }

    pub fn k(&self) -> usize {
        self.sub.k
    }

    /// Grows the buffer until it holds at least `n` letters. Since `x_k`
    /// starts with `k` and `tau_k(k) = k1`, every image of the buffer extends
    /// the buffer.
    pub fn materialize(&mut self, n: usize) {
        while self.prefix.len() < n {
            let next = self
                .sub
                .apply(&self.prefix)
                .expect("buffer letters stay in the alphabet");
            self.prefix = next;
        }
    }

    /// `x_k[0:n)`.
    pub fn prefix(&mut self, n: usize) -> &[u8] {
        self.materialize(n);
        &self.prefix[..n]
    }

    /// `x_k[n]`.
    pub fn letter(&mut self, n: usize) -> u8 {
        self.materialize(n + 1);
        self.prefix[n]
    }

    /// Currently materialised prefix.
    pub fn buffer(&self) -> &[u8] {
        &self.prefix
    }
}

/// `L_k(n) = |tau_k(x_k[0:n))|`: each letter `k` contributes two letters.
pub fn length_by_word(word: &mut MorphicWord, n: usize) -> u64 {
    let k = word.k() as u8;
    let extra = word.prefix(n).iter().filter(|&&c| c == k).count();
    (n + extra) as u64
}

/// Cache of the images `tau_k^p(k)`, built by substitution.
#[derive(Debug, Clone)]
pub struct SeedImages {
    sub: Substitution,
    images: Vec<Word>,
}

impl SeedImages {
    pub fn new(k: usize) -> Result<Self> {
        let sub = Substitution::new(k)?;
        Ok(Self {
            sub,
            images: vec![vec![k as u8]],
        })
    }

    /// `tau_k^p(k)`.
    pub fn image(&mut self, p: usize) -> &[u8] {
        while self.images.len() <= p {
            let next = self
                .sub
                .apply(self.images.last().unwrap())
                .expect("images stay in the alphabet");
            self.images.push(next);
        }
        &self.images[p]
    }

    /// `W_k(D) = tau_k^{p_m}(k) ... tau_k^{p_0}(k)`, highest position first.
    pub fn word_of_decomp(&mut self, d: &Decomp) -> Result<Word> {
        if d.k() != self.sub.k {
            return Err(Error::DepthMismatch(d.k(), self.sub.k));
        }
        let mut out = Vec::new();
        for &p in d.positions().iter().rev() {
            out.extend_from_slice(self.image(p));
        }
        Ok(out)
    }
}

/// Renders a word as decimal digits (letters above 9 are written in full,
/// which makes the rendering ambiguous but keeps it readable).
pub fn render(w: &[u8]) -> String {
    w.iter().map(|c| c.to_string()).collect()
}
