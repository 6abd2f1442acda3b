//! Cycle factor of the Kneser graph from cyclic parenthesis matching.

use super::CycleFactor;
use crate::bits::{level, low_mask, matched_mask, CyclicWord};
use crate::error::{Error, Result};
use crate::graphs::FamilySpec;

/// Complements all matched bits and keeps the unmatched 0s.
pub fn paren_f(x: CyclicWord) -> Result<CyclicWord> {
    let m = matched_mask(x.bits(), x.len())
        .ok_or_else(|| Error::InvalidInput(format!("{x} has more 1s than 0s")))?;
    Ok(CyclicWord::raw(x.bits() ^ m, x.len()))
}

#[inline]
pub(crate) fn paren_f_raw(bits: u64, n: usize) -> u64 {
    bits ^ matched_mask(bits, n).expect("weight at most n/2")
}

pub fn paren_factor(n: usize, k: usize) -> Result<CycleFactor> {
    let family = FamilySpec::Kneser { n, k };
    family.validate()?;
    if n > 30 {
        return Err(Error::ResourceLimit("paren_factor supports n <= 30".into()));
    }
    let mut seen = vec![0u64; (1usize << n).div_ceil(64)];
    let mut cycles = Vec::new();
    for x in level(n, k) {
        let b = x.bits();
        if seen[b as usize / 64] >> (b % 64) & 1 == 1 {
            continue;
        }
        let mut cycle = Vec::new();
        let mut cur = b;
        loop {
            seen[cur as usize / 64] |= 1 << (cur % 64);
            cycle.push(CyclicWord::raw(cur, n));
            cur = paren_f_raw(cur, n) & low_mask(n);
            if cur == b {
                break;
            }
        }
        cycles.push(cycle);
    }
    Ok(CycleFactor { family, cycles })
}
