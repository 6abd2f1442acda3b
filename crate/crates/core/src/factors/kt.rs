//! The two matchings `f`, `g` between levels `k` and `k+1` of the
//! `(2k+1)`-cube and the cycle factor they form.

use super::CycleFactor;
use crate::bits::{level, CyclicWord};
use crate::error::{Error, Result};
use crate::graphs::FamilySpec;
use crate::trees::{plane_canonical, tree_rotation, PlaneTree};

pub const MAX_KT_K: usize = 12;

/// `f(x) = shift(y·1, i)` where `x = shift(y·0, i)`.
pub fn kt_f(x: CyclicWord) -> Result<CyclicWord> {
    let (_, i) = x.kt_factorize()?;
    let z = (x.len() - 1 + x.len() - i) % x.len();
    Ok(x.with(z, true))
}

/// `g(x) = shift(1u1v0, i)` where `x = shift(1u0v0, i)` and `1u0` is the
/// first block of the Dyck word.
pub fn kt_g(x: CyclicWord) -> Result<CyclicWord> {
    let (y, i) = x.kt_factorize()?;
    let mut h = 0i32;
    let mut m = 0;
    for j in 0..y.len() {
        h += if y.get(j) { 1 } else { -1 };
        if h == 0 {
            m = j;
            break;
        }
    }
    let y0 = y.with(m, true).push(false)?;
    Ok(y0.shift(i as i64))
}

/// One step along the factor: `shift(u1v00, i) -> shift(1u0v0, i+1)`,
/// i.e. `g⁻¹(f(x))`.
pub fn kt_step(x: CyclicWord) -> Result<CyclicWord> {
    let (y, i) = x.kt_factorize()?;
    let y2 = tree_rotation(y)?;
    Ok(y2.push(false)?.shift(i as i64 + 1))
}

/// Cycle factor of the middle levels graph formed by the matchings `f` and `g`.
pub fn kt_factor(k: usize) -> Result<CycleFactor> {
    if k == 0 {
        return Err(Error::InvalidParams("k must be at least 1".into()));
    }
    if k > MAX_KT_K {
        return Err(Error::ResourceLimit(format!("kt_factor supports k <= {MAX_KT_K}")));
    }
    let n = 2 * k + 1;
    let mut seen = vec![0u64; (1usize << n).div_ceil(64)];
    let mut cycles = Vec::new();
    for x in level(n, k) {
        let b = x.bits() as usize;
        if seen[b / 64] >> (b % 64) & 1 == 1 {
            continue;
        }
        let mut cycle = Vec::new();
        let mut cur = x;
        loop {
            let c = cur.bits() as usize;
            seen[c / 64] |= 1 << (c % 64);
            cycle.push(cur);
            cycle.push(kt_f(cur)?);
            cur = kt_step(cur)?;
            if cur == x {
                break;
            }
        }
        cycles.push(cycle);
    }
    Ok(CycleFactor { family: FamilySpec::MiddleLevels { k }, cycles })
}

/// Plane tree of the Dyck word behind any level-`k` vertex of the cycle.
pub fn cycle_tree_label(cycle: &[CyclicWord]) -> Result<PlaneTree> {
    let x = cycle
        .iter()
        .find(|x| 2 * x.weight() + 1 == x.len())
        .ok_or_else(|| Error::InvalidInput("cycle has no vertex on the lower level".into()))?;
    let (y, _) = x.kt_factorize()?;
    plane_canonical(y)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> CyclicWord {
        s.parse().unwrap()
    }

    #[test]
    fn k1_maps() {
        assert_eq!(kt_f(w("100")).unwrap(), w("101"));
        assert_eq!(kt_f(w("010")).unwrap(), w("110"));
        assert_eq!(kt_f(w("001")).unwrap(), w("011"));
        assert_eq!(kt_g(w("100")).unwrap(), w("110"));
        assert_eq!(kt_g(w("010")).unwrap(), w("011"));
        assert_eq!(kt_g(w("001")).unwrap(), w("101"));
        assert_eq!(kt_step(w("100")).unwrap(), w("001"));
    }

    #[test]
    fn k2_step() {
        assert_eq!(kt_step(w("10100")).unwrap(), w("10001"));
    }

    #[test]
    fn small_factors() {
        let f1 = kt_factor(1).unwrap();
        assert_eq!(f1.cycles.len(), 1);
        assert_eq!(f1.cycles[0].len(), 6);
        let f2 = kt_factor(2).unwrap();
        assert_eq!(f2.cycles.len(), 1);
        assert_eq!(f2.cycles[0].len(), 20);
        f2.validate().unwrap();
        assert!(kt_factor(0).is_err());
        assert!(kt_factor(13).is_err());
    }

    #[test]
    fn rejects_wrong_level() {
        assert!(kt_f(w("110")).is_err());
        assert!(kt_g(w("1100")).is_err());
    }
}
