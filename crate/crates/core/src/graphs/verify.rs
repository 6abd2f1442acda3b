use std::collections::HashMap;
use std::fmt;

use super::{FamilySpec, Mode};
use crate::bits::CyclicWord;

/// First problem found in a claimed Hamilton cycle or path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Empty,
    NotAVertex { index: usize },
    Duplicate { index: usize, first: usize },
    /// No edge between `index` and the following entry (cyclically for cycles).
    NonEdge { index: usize },
    Missing { count: u64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Empty => write!(f, "empty sequence"),
            Violation::NotAVertex { index } => write!(f, "entry {index} is not a vertex of the graph"),
            Violation::Duplicate { index, first } => {
                write!(f, "duplicate: entry {index} repeats entry {first}")
            }
            Violation::NonEdge { index } => write!(f, "non-edge between entry {index} and its successor"),
            Violation::Missing { count } => write!(f, "missing {count} vertices"),
        }
    }
}

impl std::error::Error for Violation {}

pub fn verify_hamilton(family: &FamilySpec, seq: &[CyclicWord], mode: Mode) -> Result<(), Violation> {
    if seq.is_empty() {
        return Err(Violation::Empty);
    }
    let mut first_seen: HashMap<CyclicWord, usize> = HashMap::with_capacity(seq.len());
    for (i, &x) in seq.iter().enumerate() {
        if !family.is_vertex(x) {
            return Err(Violation::NotAVertex { index: i });
        }
        if let Some(&j) = first_seen.get(&x) {
            return Err(Violation::Duplicate { index: i, first: j });
        }
        first_seen.insert(x, i);
        if i > 0 && !family.adjacent(seq[i - 1].bits(), x.bits()) {
            return Err(Violation::NonEdge { index: i - 1 });
        }
    }
    let total = family.vertex_count();
    if (seq.len() as u64) < total {
        return Err(Violation::Missing { count: total - seq.len() as u64 });
    }
    if mode == Mode::Cycle && seq.len() > 1 {
        let last = seq.len() - 1;
        let closes = if seq.len() == 2 {
            family.adjacent(seq[0].bits(), seq[1].bits())
        } else {
            family.adjacent(seq[last].bits(), seq[0].bits())
        };
        if !closes {
            return Err(Violation::NonEdge { index: last });
        }
    }
    Ok(())
}

/// Rotates a cycle to start at its lexicographically smallest vertex and
/// orients it so that the second vertex is smaller than the last.
pub fn canonical_cycle(seq: &[CyclicWord]) -> Vec<CyclicWord> {
    if seq.len() < 3 {
        let mut v = seq.to_vec();
        v.sort_by_key(|x| x.lex_key());
        return v;
    }
    let n = seq.len();
    let s = (0..n).min_by_key(|&i| seq[i].lex_key()).unwrap();
    let next = seq[(s + 1) % n];
    let prev = seq[(s + n - 1) % n];
    if next.lex_key() < prev.lex_key() {
        (0..n).map(|j| seq[(s + j) % n]).collect()
    } else {
        (0..n).map(|j| seq[(s + n - j) % n]).collect()
    }
}
