use std::collections::HashMap;

use super::exact_cover::ExactCover;
use super::gray::combo_gray;
use crate::bits::{binomial, level, low_mask, CyclicWord};
use crate::error::{Error, Result};
use crate::graphs::{verify_hamilton, FamilySpec, HamiltonResult, Mode};

pub const MAX_BARANYAI_SETS: u64 = 1000;
const BARANYAI_BUDGET: u64 = 20_000_000;

/// All `k`-subsets of `[n]` split into groups, each group a partition of `[n]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaranyaiPartition {
    pub n: usize,
    pub k: usize,
    pub groups: Vec<Vec<CyclicWord>>,
}

impl BaranyaiPartition {
    pub fn p(&self) -> usize {
        self.n / self.k
    }

    pub fn validate(&self) -> Result<()> {
        let full = low_mask(self.n);
        let mut seen = std::collections::HashSet::new();
        for (i, g) in self.groups.iter().enumerate() {
            let mut union = 0u64;
            for x in g {
                if x.len() != self.n || x.weight() != self.k {
                    return Err(Error::ConstructionFailure(format!("{x} is not a {}-subset", self.k)));
                }
                if union & x.bits() != 0 {
                    return Err(Error::ConstructionFailure(format!("group {i} has overlapping sets")));
                }
                union |= x.bits();
                if !seen.insert(*x) {
                    return Err(Error::ConstructionFailure(format!("{x} appears twice")));
                }
            }
            if union != full || g.len() != self.p() {
                return Err(Error::ConstructionFailure(format!("group {i} does not partition the ground set")));
            }
        }
        if seen.len() as u64 != binomial(self.n as u64, self.k as u64).unwrap_or(0) {
            return Err(Error::ConstructionFailure("some subsets are missing".into()));
        }
        Ok(())
    }
}

fn partitions(rest: u64, k: usize, current: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
    if rest == 0 {
        out.push(current.clone());
        return;
    }
    let low = rest & rest.wrapping_neg();
    for others in crate::graphs::sub_masks(rest & !low, k - 1) {
        current.push(low | others);
        partitions(rest & !(low | others), k, current, out);
        current.pop();
    }
}

/// Baranyai partition found by exact cover over all partitions of `[n]`
/// into `k`-sets.
pub fn baranyai(n: usize, k: usize) -> Result<BaranyaiPartition> {
    if k == 0 || n == 0 || !n.is_multiple_of(k) {
        return Err(Error::InvalidParams(format!("k={k} must divide n={n}")));
    }
    let sets = binomial(n as u64, k as u64).unwrap_or(u64::MAX);
    if sets > MAX_BARANYAI_SETS || n > 63 {
        return Err(Error::ResourceLimit(format!("{sets} subsets exceed the limit of {MAX_BARANYAI_SETS}")));
    }
    let words = level(n, k);
    let index: HashMap<u64, usize> = words.iter().enumerate().map(|(i, w)| (w.bits(), i)).collect();
    let mut parts = Vec::new();
    partitions(low_mask(n), k, &mut Vec::new(), &mut parts);
    let options: Vec<Vec<usize>> = parts.iter().map(|p| p.iter().map(|m| index[m]).collect()).collect();
    let ec = ExactCover::new(words.len(), options)?;
    let sol = ec
        .solve(BARANYAI_BUDGET)?
        .ok_or_else(|| Error::ConstructionFailure("exact cover found no partition".into()))?;
    let mut groups: Vec<Vec<CyclicWord>> = sol
        .into_iter()
        .map(|o| {
            let mut g: Vec<CyclicWord> = parts[o].iter().map(|&m| CyclicWord::raw(m, n)).collect();
            g.sort();
            g
        })
        .collect();
    groups.sort();
    let bp = BaranyaiPartition { n, k, groups };
    bp.validate()?;
    Ok(bp)
}

/// Hamilton cycle in `K_{n,k}` for `n = pk`, `p >= 3`, built from a
/// Baranyai partition. The groups are ordered by a Gray code on the sets
/// containing element `n`, and each group starts with a set avoiding the
/// element just dropped.
pub fn chen_furedi(n: usize, k: usize) -> Result<HamiltonResult> {
    if k == 0 || !n.is_multiple_of(k) || n / k < 3 {
        return Err(Error::InvalidParams(format!("need n = p*k with p >= 3, got n={n}, k={k}")));
    }
    let bp = baranyai(n, k)?;
    let top = 1u64 << (n - 1);
    let order: HashMap<u64, usize> = combo_gray(n - 1, k - 1)?
        .into_iter()
        .enumerate()
        .map(|(i, w)| (w.bits(), i))
        .collect();
    let mut groups: Vec<(usize, Vec<CyclicWord>)> = bp
        .groups
        .into_iter()
        .map(|mut g| {
            let pos = g.iter().position(|x| x.bits() & top != 0).expect("group partitions [n]");
            let last = g.remove(pos);
            g.push(last);
            (order[&(last.bits() & !top)], g)
        })
        .collect();
    groups.sort_by_key(|(i, _)| *i);
    let groups: Vec<Vec<CyclicWord>> = groups.into_iter().map(|(_, g)| g).collect();
    let l = groups.len();
    let mut seq = Vec::with_capacity(l * (n / k));
    for i in 0..l {
        let prev_last = groups[(i + l - 1) % l].last().unwrap().bits();
        let this_last = groups[i].last().unwrap().bits();
        let dropped = prev_last & !this_last;
        let mut g = groups[i].clone();
        if l > 1 {
            let first = g[..g.len() - 1]
                .iter()
                .position(|x| x.bits() & dropped == 0)
                .ok_or_else(|| Error::ConstructionFailure("no group member avoids the dropped element".into()))?;
            let x = g.remove(first);
            g.insert(0, x);
        }
        seq.extend(g);
    }
    let family = FamilySpec::Kneser { n, k };
    verify_hamilton(&family, &seq, Mode::Cycle)
        .map_err(|v| Error::ConstructionFailure(format!("Chen-Füredi sequence invalid: {v}")))?;
    Ok(HamiltonResult::cycle(seq, "Chen-Füredi"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_two() {
        let bp = baranyai(4, 2).unwrap();
        let s: Vec<Vec<String>> = bp.groups.iter().map(|g| g.iter().map(|x| x.to_string()).collect()).collect();
        assert_eq!(s.len(), 3);
        let mut flat: Vec<Vec<String>> = s.clone();
        for g in flat.iter_mut() {
            g.sort();
        }
        flat.sort();
        assert_eq!(
            flat,
            vec![vec!["0011", "1100"], vec!["0101", "1010"], vec!["0110", "1001"]]
        );
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(baranyai(7, 2).is_err());
        assert!(chen_furedi(8, 4).is_err());
        assert!(baranyai(16, 4).is_err());
    }

    #[test]
    fn six_two() {
        let r = chen_furedi(6, 2).unwrap();
        assert_eq!(r.sequence.len(), 15);
    }
}
