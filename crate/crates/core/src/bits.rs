//! Fixed-length cyclic bitstrings.
//!
//! A word of length `n` is stored in the low `n` bits of a `u64`. Index `i`
//! (0-based) is the character at offset `i` of the textual form, so the
//! leftmost character is bit 0 and stands for element 1 of the ground set.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

pub const MAX_LEN: usize = 64;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclicWord {
    len: u8,
    bits: u64,
}

#[inline]
pub(crate) fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl CyclicWord {
    pub fn new(bits: u64, len: usize) -> Result<Self> {
        if len == 0 || len > MAX_LEN {
            return Err(Error::InvalidInput(format!("word length {len} outside 1..=64")));
        }
        if bits & !low_mask(len) != 0 {
            return Err(Error::InvalidInput(format!("bits {bits:#x} do not fit in {len} positions")));
        }
        Ok(CyclicWord { len: len as u8, bits })
    }

    /// Caller guarantees `1 <= len <= 64` and that `bits` fits.
    #[inline]
    pub(crate) fn raw(bits: u64, len: usize) -> Self {
        debug_assert!((1..=MAX_LEN).contains(&len) && bits & !low_mask(len) == 0);
        CyclicWord { len: len as u8, bits }
    }

    pub fn zeros(len: usize) -> Result<Self> {
        Self::new(0, len)
    }

    /// Word with ones exactly at the given 0-based indices.
    pub fn from_indices(len: usize, indices: &[usize]) -> Result<Self> {
        let mut bits = 0u64;
        for &i in indices {
            if i >= len {
                return Err(Error::InvalidInput(format!("index {i} out of range for length {len}")));
            }
            bits |= 1 << i;
        }
        Self::new(bits, len)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn bits(&self) -> u64 {
        self.bits
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        (self.bits >> i) & 1 == 1
    }

    pub fn with(&self, i: usize, value: bool) -> Self {
        let bits = if value { self.bits | (1 << i) } else { self.bits & !(1 << i) };
        CyclicWord::raw(bits, self.len())
    }

    #[inline]
    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(move |&i| self.get(i))
    }

    /// Cyclic left shift by `i`: the result has at index `p` the bit at index `(p + i) mod n`.
    pub fn shift(&self, i: i64) -> Self {
        let n = self.len();
        let r = i.rem_euclid(n as i64) as usize;
        if r == 0 {
            return *self;
        }
        let bits = ((self.bits >> r) | (self.bits << (n - r))) & low_mask(n);
        CyclicWord::raw(bits, n)
    }

    pub fn complement(&self) -> Self {
        CyclicWord::raw(!self.bits & low_mask(self.len()), self.len())
    }

    /// Appends `other` on the right.
    pub fn concat(&self, other: &CyclicWord) -> Result<Self> {
        let n = self.len() + other.len();
        Self::new(self.bits | (other.bits << self.len()), n)
    }

    pub fn push(&self, bit: bool) -> Result<Self> {
        Self::new(self.bits | ((bit as u64) << self.len()), self.len() + 1)
    }

    /// The `len` characters starting at index `start` (non-cyclic).
    pub fn slice(&self, start: usize, len: usize) -> Result<Self> {
        if start + len > self.len() {
            return Err(Error::InvalidInput("slice out of range".into()));
        }
        Self::new((self.bits >> start) & low_mask(len), len)
    }

    pub fn is_dyck(&self) -> bool {
        let mut h = 0i32;
        for i in 0..self.len() {
            h += if self.get(i) { 1 } else { -1 };
            if h < 0 {
                return false;
            }
        }
        h == 0
    }

    /// Number of prefixes ending in 0 that contain strictly fewer 1s than 0s.
    pub fn flaws(&self) -> usize {
        let mut h = 0i32;
        let mut count = 0;
        for i in 0..self.len() {
            if self.get(i) {
                h += 1;
            } else {
                h -= 1;
                if h < 0 {
                    count += 1;
                }
            }
        }
        count
    }

    pub fn paren_match(&self) -> Result<ParenMatching> {
        let n = self.len();
        if 2 * self.weight() > n {
            return Err(Error::InvalidInput(format!("{self} has more 1s than 0s")));
        }
        let mut stack = Vec::with_capacity(n);
        let mut pairs = Vec::with_capacity(self.weight());
        let mut pending = Vec::new();
        for i in 0..n {
            if self.get(i) {
                stack.push(i);
            } else if let Some(o) = stack.pop() {
                pairs.push((o, i));
            } else {
                pending.push(i);
            }
        }
        let mut unmatched = Vec::new();
        for z in pending {
            match stack.pop() {
                Some(o) => pairs.push((o, z)),
                None => unmatched.push(z),
            }
        }
        pairs.sort_unstable();
        Ok(ParenMatching { pairs, unmatched_zeros: unmatched })
    }

    /// Mask of all matched positions; `None` if there are more 1s than 0s.
    pub fn matched_mask(&self) -> Option<u64> {
        matched_mask(self.bits, self.len())
    }

    /// Writes `x = shift(y·0, i)` with `y` a Dyck word.
    pub fn kt_factorize(&self) -> Result<(CyclicWord, usize)> {
        let n = self.len();
        if n.is_multiple_of(2) || 2 * self.weight() + 1 != n {
            return Err(Error::InvalidInput(format!("{self} is not a length-2k+1 word with k ones")));
        }
        let matched = matched_mask(self.bits, n).expect("weight checked");
        let z = (!matched & low_mask(n)).trailing_zeros() as usize;
        let i = (n - 1 - z) % n;
        let y0 = self.shift((n - i) as i64);
        let y = y0.slice(0, n - 1)?;
        Ok((y, i))
    }

    /// Key whose numeric order is the lexicographic order of the text form.
    pub fn lex_key(&self) -> u64 {
        self.bits.reverse_bits() >> (64 - self.len())
    }
}

pub(crate) fn matched_mask(bits: u64, n: usize) -> Option<u64> {
    let mut stack = [0u8; 64];
    let mut top = 0usize;
    let mut matched = 0u64;
    let mut pending = 0u64;
    for i in 0..n {
        if (bits >> i) & 1 == 1 {
            stack[top] = i as u8;
            top += 1;
        } else if top > 0 {
            top -= 1;
            matched |= (1 << i) | (1 << stack[top]);
        } else {
            pending |= 1 << i;
        }
    }
    while top > 0 {
        if pending == 0 {
            return None;
        }
        let z = pending.trailing_zeros();
        pending &= pending - 1;
        top -= 1;
        matched |= (1 << z) | (1 << stack[top]);
    }
    Some(matched)
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = (0..self.len()).map(|i| if self.get(i) { '1' } else { '0' }).collect();
        f.pad(&s)
    }
}

impl fmt::Debug for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CyclicWord({self})")
    }
}

impl FromStr for CyclicWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s.len() > MAX_LEN {
            return Err(Error::InvalidInput(format!("bitstring {s:?} must have 1..=64 characters")));
        }
        let mut bits = 0u64;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => return Err(Error::InvalidInput(format!("unexpected character {c:?} in bitstring"))),
            }
        }
        Self::new(bits, s.len())
    }
}

/// Cyclic matching of 1s (opening) with 0s (closing). Indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParenMatching {
    /// `(open, close)` pairs sorted by opening index.
    pub pairs: Vec<(usize, usize)>,
    pub unmatched_zeros: Vec<usize>,
}

pub fn shift(x: CyclicWord, i: i64) -> CyclicWord {
    x.shift(i)
}

pub fn is_dyck(y: CyclicWord) -> bool {
    y.is_dyck()
}

pub fn flaws(x: CyclicWord) -> usize {
    x.flaws()
}

pub fn paren_match(x: CyclicWord) -> Result<ParenMatching> {
    x.paren_match()
}

pub fn kt_factorize(x: CyclicWord) -> Result<(CyclicWord, usize)> {
    x.kt_factorize()
}

pub fn complement(x: CyclicWord) -> CyclicWord {
    x.complement()
}

pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut r: u128 = 1;
    for i in 0..k {
        r = r * (n - i) as u128 / (i + 1) as u128;
        if r > u64::MAX as u128 {
            return None;
        }
    }
    Some(r as u64)
}

pub fn catalan(k: u64) -> Result<u64> {
    let mut c: u128 = 1;
    for j in 0..k {
        c = c
            .checked_mul(2 * (2 * j as u128 + 1))
            .ok_or_else(|| Error::Overflow(format!("catalan({k})")))?
            / (j as u128 + 2);
        if c > u64::MAX as u128 {
            return Err(Error::Overflow(format!("catalan({k})")));
        }
    }
    Ok(c as u64)
}

/// All words of length `n` with exactly `k` ones, in increasing bitmask order.
pub fn level(n: usize, k: usize) -> Vec<CyclicWord> {
    let mut out = Vec::new();
    if k > n || n == 0 || n > MAX_LEN {
        return out;
    }
    if k == 0 {
        out.push(CyclicWord::raw(0, n));
        return out;
    }
    let limit = low_mask(n);
    let mut x: u64 = low_mask(k);
    loop {
        out.push(CyclicWord::raw(x, n));
        let c = x & x.wrapping_neg();
        let r = x.wrapping_add(c);
        if r == 0 || r > limit {
            break;
        }
        x = (((r ^ x) >> 2) / c) | r;
        if x > limit {
            break;
        }
    }
    out
}

/// All Dyck words of length `2k`, in increasing bitmask order.
pub fn dyck_words(k: usize) -> Vec<CyclicWord> {
    fn go(pos: usize, n: usize, h: usize, ones: usize, k: usize, bits: u64, out: &mut Vec<u64>) {
        if pos == n {
            out.push(bits);
            return;
        }
        if h > 0 {
            go(pos + 1, n, h - 1, ones, k, bits, out);
        }
        if ones < k {
            go(pos + 1, n, h + 1, ones + 1, k, bits | (1 << pos), out);
        }
    }
    assert!(k >= 1 && 2 * k <= MAX_LEN, "dyck_words needs 1 <= k <= 32");
    let mut raw = Vec::new();
    go(0, 2 * k, 0, 0, k, 0, &mut raw);
    raw.sort_unstable();
    raw.into_iter().map(|b| CyclicWord::raw(b, 2 * k)).collect()
}
