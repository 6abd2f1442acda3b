//! Flaw-raising bijection on balanced words and the cycle factor of the odd
//! graph derived from it.
//!
//! For a Dyck word `x` of length `2k` the map walks through `k` words
//! `x = w_0, w_1, ..., w_k = complement(x)`, each obtained from the previous
//! one by moving a single 1, with one more flaw at every step. The moves are
//! given by a recursion on the block structure of `x`:
//!
//! * `x = B·R` with `B` the first block: the moves of `B`, then those of `R`;
//! * `x = 10`: the only transposition;
//! * `x = 1u0` with last block `B = 1w0` of `u`, so `x = 1 u' 1w0 0`:
//!   first swap the opening bit of `B` with the final 0, then the moves of
//!   `w` inside `B`, then the moves of `1u'0` on the outer bits.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::CycleFactor;
use crate::bits::{dyck_words, level, CyclicWord};
use crate::error::{Error, Result};
use crate::graphs::FamilySpec;

pub const MAX_CF_K: usize = 12;

/// Number of words of length `2k` with `k` ones and `e` flaws, for `e = 0..=k`.
pub fn class_sizes(k: usize) -> Vec<u64> {
    let mut sizes = vec![0u64; k + 1];
    for x in level(2 * k, k) {
        sizes[x.flaws()] += 1;
    }
    sizes
}

fn blocks(x: &[bool]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut h = 0i32;
    let mut s = 0;
    for (t, &b) in x.iter().enumerate() {
        h += if b { 1 } else { -1 };
        if h == 0 {
            out.push((s, t + 1));
            s = t + 1;
        }
    }
    out
}

/// Transpositions `(i, j)`: bit `i` goes 1 -> 0 and bit `j` goes 0 -> 1.
fn moves(x: &[bool]) -> Vec<(usize, usize)> {
    if x.is_empty() {
        return Vec::new();
    }
    let bl = blocks(x);
    let (_, t) = bl[0];
    if t < x.len() {
        let mut out = moves(&x[..t]);
        out.extend(moves(&x[t..]).into_iter().map(|(i, j)| (i + t, j + t)));
        return out;
    }
    let n = x.len();
    let u = &x[1..n - 1];
    if u.is_empty() {
        return vec![(0, 1)];
    }
    let (s, t) = *blocks(u).last().unwrap();
    let (bo, bc) = (s + 1, t);
    let wpos: Vec<usize> = (bo + 1..bc).collect();
    let mut rpos = vec![0];
    rpos.extend(1..bo);
    rpos.push(bc);
    let r: Vec<bool> = rpos.iter().map(|&p| x[p]).collect();
    let mut out = vec![(bo, n - 1)];
    out.extend(moves(&x[bo + 1..bc]).into_iter().map(|(i, j)| (wpos[i], wpos[j])));
    out.extend(moves(&r).into_iter().map(|(i, j)| (rpos[i], rpos[j])));
    out
}

/// The bijection for a fixed `k`, tabulated and checked.
#[derive(Debug, Clone)]
pub struct ChungFeller {
    k: usize,
    map: HashMap<CyclicWord, CyclicWord>,
    /// Orbits `x, f(x), ..., f^k(x)` starting at each Dyck word.
    orbits: Vec<Vec<CyclicWord>>,
}

impl ChungFeller {
    pub fn new(k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParams("k must be at least 1".into()));
        }
        if k > MAX_CF_K {
            return Err(Error::ResourceLimit(format!("Chung-Feller tables supported for k <= {MAX_CF_K}")));
        }
        let mut map = HashMap::new();
        let mut orbits = Vec::new();
        for x in dyck_words(k) {
            let bits: Vec<bool> = (0..2 * k).map(|i| x.get(i)).collect();
            let mut cur = x;
            let mut orbit = vec![x];
            for (i, j) in moves(&bits) {
                if !cur.get(i) || cur.get(j) {
                    return Err(Error::ConstructionFailure(format!("move ({i},{j}) invalid at {cur}")));
                }
                let next = cur.with(i, false).with(j, true);
                map.insert(cur, next);
                orbit.push(next);
                cur = next;
            }
            orbits.push(orbit);
        }
        let cf = ChungFeller { k, map, orbits };
        cf.check()?;
        Ok(cf)
    }

    /// Checks the defining properties on the whole table.
    fn check(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::ConstructionFailure(msg));
        let k = self.k;
        let mut covers = std::collections::HashSet::new();
        let mut images = std::collections::HashSet::new();
        for orbit in &self.orbits {
            let x = orbit[0];
            if orbit.len() != k + 1 {
                return fail(format!("orbit of {x} has {} steps", orbit.len() - 1));
            }
            let mut moved = 0u64;
            for pair in orbit.windows(2) {
                let (a, b) = (pair[0], pair[1]);
                let diff = a.bits() ^ b.bits();
                if diff.count_ones() != 2 || a.weight() != b.weight() {
                    return fail(format!("{a} -> {b} is not a single transposition"));
                }
                if b.flaws() != a.flaws() + 1 {
                    return fail(format!("{a} -> {b} does not raise the flaw count by one"));
                }
                let from = a.bits() & diff;
                let to = b.bits() & diff;
                if moved & (from | to) != 0 {
                    return fail(format!("a position of {x} is transposed twice"));
                }
                moved |= diff;
                if !covers.insert(a.bits() | b.bits()) {
                    return fail(format!("cover of {a} repeats"));
                }
                if !images.insert(b) {
                    return fail(format!("{b} has two preimages"));
                }
            }
            if *orbit.last().unwrap() != x.complement() {
                return fail(format!("orbit of {x} does not end at its complement"));
            }
            if moved != crate::bits::low_mask(2 * k) {
                return fail(format!("orbit of {x} leaves positions untouched"));
            }
        }
        let upper = crate::bits::binomial(2 * k as u64, k as u64 + 1).unwrap_or(0);
        if covers.len() as u64 != upper {
            return fail(format!("covers fill {} of {upper} upper-level words", covers.len()));
        }
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn apply(&self, x: CyclicWord) -> Result<CyclicWord> {
        if x.len() != 2 * self.k || x.weight() != self.k {
            return Err(Error::InvalidInput(format!("{x} is not balanced of length {}", 2 * self.k)));
        }
        self.map
            .get(&x)
            .copied()
            .ok_or_else(|| Error::InvalidInput(format!("{x} already has the maximum number of flaws")))
    }

    /// Paths `x, x | f(x), f(x), ..., f^k(x)` through levels `k` and `k+1`
    /// of the `2k`-cube, one per Dyck word.
    pub fn paths(&self) -> Vec<Vec<CyclicWord>> {
        self.orbits
            .iter()
            .map(|orbit| {
                let mut p = vec![orbit[0]];
                for pair in orbit.windows(2) {
                    p.push(CyclicWord::raw(pair[0].bits() | pair[1].bits(), 2 * self.k));
                    p.push(pair[1]);
                }
                p
            })
            .collect()
    }
}

fn cache() -> &'static Mutex<HashMap<usize, Arc<ChungFeller>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<ChungFeller>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Shared, checked table for `k`.
pub fn table(k: usize) -> Result<Arc<ChungFeller>> {
    if let Some(t) = cache().lock().unwrap().get(&k) {
        return Ok(t.clone());
    }
    let t = Arc::new(ChungFeller::new(k)?);
    cache().lock().unwrap().insert(k, t.clone());
    Ok(t)
}

pub fn cf_bijection(x: CyclicWord) -> Result<CyclicWord> {
    if !x.len().is_multiple_of(2) {
        return Err(Error::InvalidInput(format!("{x} has odd length")));
    }
    table(x.len() / 2)?.apply(x)
}

pub fn cf_paths(k: usize) -> Result<Vec<Vec<CyclicWord>>> {
    Ok(table(k)?.paths())
}

/// Cycle factor of the odd graph `O_k`: every path gets a trailing 0 and its
/// upper-level vertices are complemented.
pub fn odd_factor(k: usize) -> Result<CycleFactor> {
    if k < 2 {
        return Err(Error::InvalidParams("odd graphs need k >= 2".into()));
    }
    let cycles = cf_paths(k)?
        .into_iter()
        .map(|p| {
            p.into_iter()
                .map(|v| {
                    let w = v.push(false).expect("length below 64");
                    if v.weight() == k {
                        w
                    } else {
                        w.complement()
                    }
                })
                .collect::<Vec<_>>()
        })
        .collect();
    Ok(CycleFactor { family: FamilySpec::OddGraph { k }, cycles })
}
