//! Gliders: groups of matched bits moving under [`paren_f`].
//!
//! Positions are 0-based indices. Reading cyclically from the first unmatched
//! 0, the matched positions form maximal runs. A configuration is *separated*
//! when every run splits into consecutive blocks `1^v 0^v`; each block is a
//! glider of speed `v` whose reference position is its first 1.

use std::collections::{BTreeMap, BTreeSet};

use super::paren::paren_f;
use crate::bits::{low_mask, matched_mask, CyclicWord};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Glider {
    pub id: usize,
    pub speed: usize,
    pub ones: Vec<usize>,
    pub zeros: Vec<usize>,
    pub ref_pos: usize,
}

impl Glider {
    fn ones_mask(&self) -> u64 {
        self.ones.iter().fold(0, |m, &p| m | 1 << p)
    }

    fn mask(&self) -> u64 {
        self.zeros.iter().fold(self.ones_mask(), |m, &p| m | 1 << p)
    }
}

/// Maximal run of matched positions in cyclic reading order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Run {
    pub positions: Vec<usize>,
    pub ones: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decomposition {
    Separated(Vec<Glider>),
    Interacting(Vec<Run>),
}

impl Decomposition {
    pub fn is_separated(&self) -> bool {
        matches!(self, Decomposition::Separated(_))
    }

    /// Sorted glider speeds of a separated configuration.
    pub fn speeds(&self) -> Option<Vec<usize>> {
        match self {
            Decomposition::Separated(g) => {
                let mut v: Vec<usize> = g.iter().map(|g| g.speed).collect();
                v.sort_unstable();
                Some(v)
            }
            Decomposition::Interacting(_) => None,
        }
    }
}

fn runs(x: CyclicWord) -> Result<Vec<Run>> {
    let n = x.len();
    let m = matched_mask(x.bits(), n).ok_or_else(|| Error::InvalidInput(format!("{x} has more 1s than 0s")))?;
    let unmatched = !m & low_mask(n);
    if unmatched == 0 {
        return Ok(vec![Run { positions: (0..n).collect(), ones: x.weight() }]);
    }
    let s = unmatched.trailing_zeros() as usize;
    let mut out = Vec::new();
    let mut cur: Vec<usize> = Vec::new();
    for t in 1..=n {
        let p = (s + t) % n;
        if (m >> p) & 1 == 0 {
            if !cur.is_empty() {
                let ones = cur.iter().filter(|&&q| x.get(q)).count();
                out.push(Run { positions: std::mem::take(&mut cur), ones });
            }
        } else {
            cur.push(p);
        }
    }
    Ok(out)
}

pub fn glider_decompose(x: CyclicWord) -> Result<Decomposition> {
    let rs = runs(x)?;
    if matched_mask(x.bits(), x.len()) == Some(low_mask(x.len())) {
        return Ok(Decomposition::Interacting(rs));
    }
    let mut gliders = Vec::new();
    for r in &rs {
        let bits: Vec<bool> = r.positions.iter().map(|&p| x.get(p)).collect();
        let mut i = 0;
        while i < bits.len() {
            let v = bits[i..].iter().take_while(|&&b| b).count();
            if v == 0 || i + 2 * v > bits.len() || bits[i + v..i + 2 * v].iter().any(|&b| b) {
                return Ok(Decomposition::Interacting(rs));
            }
            gliders.push(Glider {
                id: 0,
                speed: v,
                ones: r.positions[i..i + v].to_vec(),
                zeros: r.positions[i + v..i + 2 * v].to_vec(),
                ref_pos: r.positions[i],
            });
            i += 2 * v;
        }
    }
    gliders.sort_by_key(|g| g.ref_pos);
    for (i, g) in gliders.iter_mut().enumerate() {
        g.id = i;
    }
    Ok(Decomposition::Separated(gliders))
}

/// Speeds of the gliders on a cycle of the parenthesis factor, read at its
/// separated configurations (which must all agree).
pub fn speed_multiset(cycle: &[CyclicWord]) -> Result<Vec<usize>> {
    let mut found: Option<Vec<usize>> = None;
    for &x in cycle {
        if let Some(s) = glider_decompose(x)?.speeds() {
            match &found {
                None => found = Some(s),
                Some(f) if *f != s => {
                    return Err(Error::ConstructionFailure(format!("speeds {f:?} and {s:?} on one cycle")));
                }
                _ => {}
            }
        }
    }
    found.ok_or(Error::NoSeparatedState)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FrameState {
    /// Before the first separated configuration: no identities yet.
    Untracked,
    Separated(Vec<Glider>),
    /// Runs with the ids of the gliders taking part in each.
    Interacting(Vec<(Run, Vec<usize>)>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    pub t: usize,
    pub word: CyclicWord,
    pub state: FrameState,
    /// Cumulative overtaking counts per unordered pair of ids.
    pub overtakings: BTreeMap<(usize, usize), u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GliderTrace {
    pub initial: CyclicWord,
    pub steps: usize,
    pub frames: Vec<Frame>,
    /// Speed of each glider id.
    pub speeds: Vec<usize>,
}

struct Group {
    zeros: u64,
    ids: Vec<usize>,
}

impl GliderTrace {
    /// Reference position of glider `id` at each frame where it is separated.
    pub fn positions(&self, id: usize) -> Vec<Option<usize>> {
        self.frames
            .iter()
            .map(|f| match &f.state {
                FrameState::Separated(g) => g.iter().find(|g| g.id == id).map(|g| g.ref_pos),
                _ => None,
            })
            .collect()
    }

    /// First frame with identities assigned.
    pub fn first_tracked(&self) -> Option<usize> {
        self.frames.iter().position(|f| matches!(f.state, FrameState::Separated(_)))
    }

    /// Offset from uniform motion, `pos(t) - pos(t0) - v (t - t0) mod n`,
    /// at every separated frame.
    pub fn deviations(&self, id: usize) -> Vec<Option<usize>> {
        let n = self.initial.len() as i64;
        let v = self.speeds[id] as i64;
        let pos = self.positions(id);
        let Some(t0) = self.first_tracked() else {
            return vec![None; pos.len()];
        };
        let p0 = pos[t0].expect("all gliders present at first tracked frame") as i64;
        pos.iter()
            .enumerate()
            .map(|(t, p)| p.map(|p| (p as i64 - p0 - v * (t as i64 - t0 as i64)).rem_euclid(n) as usize))
            .collect()
    }

    pub fn overtakings(&self, a: usize, b: usize) -> u32 {
        let key = (a.min(b), a.max(b));
        self.frames.last().and_then(|f| f.overtakings.get(&key).copied()).unwrap_or(0)
    }
}

fn groups_of(state: &FrameState, word: CyclicWord) -> Vec<Group> {
    match state {
        FrameState::Untracked => Vec::new(),
        FrameState::Separated(gs) => gs
            .iter()
            .map(|g| Group { zeros: g.mask() & !g.ones_mask(), ids: vec![g.id] })
            .collect(),
        FrameState::Interacting(rs) => rs
            .iter()
            .map(|(r, ids)| {
                let mask = r.positions.iter().fold(0u64, |m, &p| m | 1 << p);
                Group { zeros: mask & !word.bits(), ids: ids.clone() }
            })
            .collect(),
    }
}

/// Iterates [`paren_f`] for `steps` steps from `x`, following glider
/// identities through interactions: the 0s of a group at time `t` are 1s at
/// time `t+1`, which ties each group to its successors.
pub fn glider_trace(x: CyclicWord, steps: usize) -> Result<GliderTrace> {
    if steps == 0 {
        return Err(Error::InvalidParams("trace needs at least one step".into()));
    }
    let mut frames: Vec<Frame> = Vec::with_capacity(steps + 1);
    let mut speeds: Vec<usize> = Vec::new();
    let mut word = x;
    for t in 0..=steps {
        if t > 0 {
            word = paren_f(word)?;
        }
        let dec = glider_decompose(word)?;
        let (prev_state, prev_word, prev_counts) = match frames.last() {
            Some(f) => (f.state.clone(), f.word, f.overtakings.clone()),
            None => (FrameState::Untracked, word, BTreeMap::new()),
        };
        let prev_groups = groups_of(&prev_state, prev_word);
        let mut counts = prev_counts;
        let state = match (&prev_state, dec) {
            (FrameState::Untracked, Decomposition::Separated(gs)) => {
                speeds = gs.iter().map(|g| g.speed).collect();
                FrameState::Separated(gs)
            }
            (FrameState::Untracked, Decomposition::Interacting(_)) => FrameState::Untracked,
            (_, Decomposition::Separated(mut gs)) => {
                let mut cands: Vec<BTreeSet<usize>> = gs
                    .iter()
                    .map(|g| {
                        prev_groups
                            .iter()
                            .filter(|pg| pg.zeros & g.ones_mask() != 0)
                            .flat_map(|pg| pg.ids.iter().copied())
                            .filter(|&id| speeds[id] == g.speed)
                            .collect()
                    })
                    .collect();
                let mut assigned = vec![None; gs.len()];
                // forced choices first; gliders of equal speed leaving one
                // group are interchangeable, so the rest take the smallest id
                while let Some(i) = (0..gs.len())
                    .filter(|&i| assigned[i].is_none() && !cands[i].is_empty())
                    .min_by_key(|&i| (cands[i].len(), gs[i].ref_pos))
                {
                    let id = *cands[i].iter().next().unwrap();
                    assigned[i] = Some(id);
                    for c in cands.iter_mut() {
                        c.remove(&id);
                    }
                }
                if assigned.iter().any(|a| a.is_none()) {
                    return Err(Error::TrackingAmbiguity(t));
                }
                for (g, a) in gs.iter_mut().zip(&assigned) {
                    g.id = a.unwrap();
                }
                gs.sort_by_key(|g| g.id);
                FrameState::Separated(gs)
            }
            (_, Decomposition::Interacting(rs)) => {
                let mut out = Vec::new();
                for r in rs {
                    let ones = r.positions.iter().filter(|&&p| word.get(p)).fold(0u64, |m, &p| m | 1 << p);
                    let ids: BTreeSet<usize> = prev_groups
                        .iter()
                        .filter(|pg| pg.zeros & ones != 0)
                        .flat_map(|pg| pg.ids.iter().copied())
                        .collect();
                    let ids: Vec<usize> = ids.into_iter().collect();
                    for (a_i, &a) in ids.iter().enumerate() {
                        for &b in &ids[a_i + 1..] {
                            let together = prev_groups.iter().any(|pg| pg.ids.contains(&a) && pg.ids.contains(&b));
                            if !together {
                                *counts.entry((a, b)).or_insert(0) += 1;
                            }
                        }
                    }
                    out.push((r, ids));
                }
                FrameState::Interacting(out)
            }
        };
        frames.push(Frame { t, word, state, overtakings: counts });
    }
    Ok(GliderTrace { initial: x, steps, frames, speeds })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> CyclicWord {
        s.parse().unwrap()
    }

    #[test]
    fn decompose_examples() {
        let Decomposition::Separated(g) = glider_decompose(w("11000")).unwrap() else { panic!() };
        assert_eq!(g.len(), 1);
        assert_eq!((g[0].speed, g[0].ref_pos), (2, 0));
        let Decomposition::Separated(g) = glider_decompose(w("10001")).unwrap() else { panic!() };
        assert_eq!((g[0].speed, g[0].ref_pos), (2, 4));
        assert_eq!(g[0].ones, vec![4, 0]);
        assert!(!glider_decompose(w("1101000")).unwrap().is_separated());
        assert!(glider_decompose(w("1010000")).unwrap().is_separated());
    }

    #[test]
    fn petersen_trace() {
        let tr = glider_trace(w("11000"), 5).unwrap();
        assert_eq!(tr.frames[5].word, w("11000"));
        let pos: Vec<usize> = tr.positions(0).into_iter().map(Option::unwrap).collect();
        assert_eq!(pos, vec![0, 2, 4, 1, 3, 0]);
        assert_eq!(speed_multiset(&[w("11000")]).unwrap(), vec![2]);
    }

    #[test]
    fn no_separated_state() {
        assert_eq!(speed_multiset(&[w("1101000")]), Err(Error::NoSeparatedState));
    }
}
