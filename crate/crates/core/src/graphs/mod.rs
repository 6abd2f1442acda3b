//! Graph families on subsets of `[n]`, Hamilton certificates and a
//! backtracking solver.

mod brute;
mod verify;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::bits::{binomial, level, low_mask, CyclicWord};
use crate::error::{Error, Result};

pub use brute::brute_force_hamilton;
pub use verify::{canonical_cycle, verify_hamilton, Violation};

/// Largest vertex set the crate will materialize.
pub const MAX_VERTICES: u64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Hypercube { n: usize },
    /// Levels `k` and `k+1` of the `n`-cube.
    LevelBand { n: usize, k: usize },
    /// Levels `k` and `k+1` of the `(2k+1)`-cube.
    MiddleLevels { k: usize },
    BipartiteKneser { n: usize, k: usize },
    Kneser { n: usize, k: usize },
    /// `Kneser { n: 2k+1, k }`.
    OddGraph { k: usize },
    /// `k`-sets, adjacent when they share exactly `s` elements.
    GenJohnson { n: usize, k: usize, s: usize },
    /// `k`-sets, adjacent when they share at most `s` elements.
    GenKneser { n: usize, k: usize, s: usize },
}

fn bad(msg: impl Into<String>) -> Error {
    Error::InvalidParams(msg.into())
}

impl FamilySpec {
    pub fn validate(&self) -> Result<()> {
        use FamilySpec::*;
        let n = self.word_len();
        if n == 0 || n > crate::bits::MAX_LEN {
            return Err(bad(format!("ground set size {n} outside 1..=64")));
        }
        match *self {
            Hypercube { .. } => {}
            LevelBand { n, k } => {
                if k >= n {
                    return Err(bad("level band needs k < n"));
                }
            }
            MiddleLevels { k } => {
                if k < 1 {
                    return Err(bad("middle levels graph needs k >= 1"));
                }
            }
            BipartiteKneser { n, k } | Kneser { n, k } => {
                if k < 1 || n < 2 * k + 1 {
                    return Err(bad("need k >= 1 and n >= 2k+1"));
                }
            }
            OddGraph { k } => {
                if k < 2 {
                    return Err(bad("odd graph needs k >= 2"));
                }
            }
            GenJohnson { n, k, s } | GenKneser { n, k, s } => {
                if k < 1 || s >= k {
                    return Err(bad("need k >= 1 and 0 <= s < k"));
                }
                let min = 2 * k - s + usize::from(s == 0);
                if n < min {
                    return Err(bad(format!("need n >= {min}")));
                }
            }
        }
        let count = self.vertex_count_u128();
        if count > MAX_VERTICES as u128 {
            return Err(Error::ResourceLimit(format!("{self} has {count} vertices")));
        }
        Ok(())
    }

    /// Length of the vertex bitstrings.
    pub fn word_len(&self) -> usize {
        use FamilySpec::*;
        match *self {
            Hypercube { n } | LevelBand { n, .. } | BipartiteKneser { n, .. } | Kneser { n, .. } => n,
            GenJohnson { n, .. } | GenKneser { n, .. } => n,
            MiddleLevels { k } | OddGraph { k } => 2 * k + 1,
        }
    }

    /// Levels (set sizes) occupied by vertices; `None` for the full cube.
    pub fn levels(&self) -> Option<Vec<usize>> {
        use FamilySpec::*;
        match *self {
            Hypercube { .. } => None,
            LevelBand { k, .. } | MiddleLevels { k } => Some(vec![k, k + 1]),
            BipartiteKneser { n, k } => Some(vec![k, n - k]),
            Kneser { k, .. } | OddGraph { k } | GenJohnson { k, .. } | GenKneser { k, .. } => Some(vec![k]),
        }
    }

    fn vertex_count_u128(&self) -> u128 {
        let n = self.word_len() as u64;
        match self.levels() {
            None => 1u128 << n,
            Some(ls) => ls.iter().map(|&l| binomial(n, l as u64).map_or(u128::MAX / 4, u128::from)).sum(),
        }
    }

    pub fn vertex_count(&self) -> u64 {
        self.vertex_count_u128().min(u64::MAX as u128) as u64
    }

    pub fn is_vertex(&self, x: CyclicWord) -> bool {
        if x.len() != self.word_len() {
            return false;
        }
        match self.levels() {
            None => true,
            Some(ls) => ls.contains(&x.weight()),
        }
    }

    pub fn check_vertex(&self, x: CyclicWord) -> Result<()> {
        if self.is_vertex(x) {
            Ok(())
        } else {
            Err(Error::InvalidVertex(format!("{x} is not a vertex of {self}")))
        }
    }

    /// Adjacency on raw masks of valid vertices.
    pub(crate) fn adjacent(&self, a: u64, b: u64) -> bool {
        use FamilySpec::*;
        if a == b {
            return false;
        }
        match *self {
            Hypercube { .. } | LevelBand { .. } | MiddleLevels { .. } => (a ^ b).count_ones() == 1,
            BipartiteKneser { .. } => (a & b) == a.min_by_weight(b),
            Kneser { .. } | OddGraph { .. } => a & b == 0,
            GenJohnson { s, .. } => (a & b).count_ones() as usize == s,
            GenKneser { s, .. } => (a & b).count_ones() as usize <= s,
        }
    }

    pub fn is_edge(&self, x: CyclicWord, y: CyclicWord) -> Result<bool> {
        self.check_vertex(x)?;
        self.check_vertex(y)?;
        Ok(self.adjacent(x.bits(), y.bits()))
    }

    /// All vertices in increasing bitmask order.
    pub fn vertices(&self) -> Vec<CyclicWord> {
        let n = self.word_len();
        let mut out = match self.levels() {
            None => (0..=low_mask(n)).map(|b| CyclicWord::raw(b, n)).collect(),
            Some(ls) => {
                let mut v = Vec::new();
                for l in ls {
                    v.extend(level(n, l));
                }
                v
            }
        };
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Neighbours of a vertex in increasing bitmask order.
    pub fn neighbors(&self, x: CyclicWord) -> Result<Vec<CyclicWord>> {
        use FamilySpec::*;
        self.check_vertex(x)?;
        let n = self.word_len();
        let a = x.bits();
        let full = low_mask(n);
        let comp = !a & full;
        let mut out: Vec<u64> = Vec::new();
        match *self {
            Hypercube { .. } | LevelBand { .. } | MiddleLevels { .. } => {
                for i in 0..n {
                    let b = a ^ (1 << i);
                    if self.is_vertex(CyclicWord::raw(b, n)) {
                        out.push(b);
                    }
                }
            }
            BipartiteKneser { n, k } => {
                if x.weight() == k {
                    for t in sub_masks(comp, n - 2 * k) {
                        out.push(a | t);
                    }
                } else {
                    out.extend(sub_masks(a, k));
                }
            }
            Kneser { k, .. } | OddGraph { k } => out.extend(sub_masks(comp, k)),
            GenJohnson { k, s, .. } => {
                for keep in sub_masks(a, s) {
                    for add in sub_masks(comp, k - s) {
                        out.push(keep | add);
                    }
                }
            }
            GenKneser { k, s, .. } => {
                for t in 0..=s {
                    for keep in sub_masks(a, t) {
                        for add in sub_masks(comp, k - t) {
                            out.push(keep | add);
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        Ok(out.into_iter().map(|b| CyclicWord::raw(b, n)).collect())
    }

    pub fn graph(&self) -> Result<IndexedGraph> {
        IndexedGraph::new(*self)
    }
}

trait MinByWeight {
    fn min_by_weight(self, other: u64) -> u64;
}

impl MinByWeight for u64 {
    fn min_by_weight(self, other: u64) -> u64 {
        if self.count_ones() <= other.count_ones() {
            self
        } else {
            other
        }
    }
}

/// Submasks of `mask` with exactly `r` bits set.
pub(crate) fn sub_masks(mask: u64, r: usize) -> Vec<u64> {
    let positions: Vec<u32> = (0..64).filter(|&i| (mask >> i) & 1 == 1).collect();
    let mut out = Vec::new();
    if r > positions.len() {
        return out;
    }
    let m = positions.len();
    let mut idx: Vec<usize> = (0..r).collect();
    loop {
        out.push(idx.iter().fold(0u64, |acc, &j| acc | (1 << positions[j])));
        let mut i = r;
        while i > 0 && idx[i - 1] == m - r + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        idx[i - 1] += 1;
        for j in i..r {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use FamilySpec::*;
        match *self {
            Hypercube { n } => write!(f, "hypercube:n={n}"),
            LevelBand { n, k } => write!(f, "band:n={n},k={k}"),
            MiddleLevels { k } => write!(f, "middle:k={k}"),
            BipartiteKneser { n, k } => write!(f, "bkneser:n={n},k={k}"),
            Kneser { n, k } => write!(f, "kneser:n={n},k={k}"),
            OddGraph { k } => write!(f, "odd:k={k}"),
            GenJohnson { n, k, s } => write!(f, "johnson:n={n},k={k},s={s}"),
            GenKneser { n, k, s } => write!(f, "genkneser:n={n},k={k},s={s}"),
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    /// Parses strings such as `kneser:n=9,k=3` or `middle:k=4`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let mut params: HashMap<&str, usize> = HashMap::new();
        for part in rest.split(',').filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidInput(format!("expected key=value, got {part:?}")))?;
            let value: usize = value
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad number in {part:?}")))?;
            if params.insert(key.trim(), value).is_some() {
                return Err(Error::InvalidInput(format!("duplicate parameter {key:?}")));
            }
        }
        let mut take = |key: &str| {
            params
                .remove(key)
                .ok_or_else(|| Error::InvalidInput(format!("family {name:?} needs parameter {key}")))
        };
        use FamilySpec::*;
        let spec = match name.trim() {
            "hypercube" | "cube" => Hypercube { n: take("n")? },
            "band" | "levels" => LevelBand { n: take("n")?, k: take("k")? },
            "middle" => MiddleLevels { k: take("k")? },
            "bkneser" | "bipartite-kneser" => BipartiteKneser { n: take("n")?, k: take("k")? },
            "kneser" => Kneser { n: take("n")?, k: take("k")? },
            "odd" => OddGraph { k: take("k")? },
            "johnson" => GenJohnson { n: take("n")?, k: take("k")?, s: take("s")? },
            "genkneser" | "gen-kneser" => GenKneser { n: take("n")?, k: take("k")?, s: take("s")? },
            other => return Err(Error::InvalidInput(format!("unknown family {other:?}"))),
        };
        if let Some(key) = params.keys().next() {
            return Err(Error::InvalidInput(format!("unexpected parameter {key:?} for {name}")));
        }
        spec.validate()?;
        Ok(spec)
    }
}

/// A family with its vertices numbered in enumeration order.
#[derive(Debug, Clone)]
pub struct IndexedGraph {
    pub family: FamilySpec,
    pub vertices: Vec<CyclicWord>,
    pub adj: Vec<Vec<u32>>,
    index: HashMap<u64, u32>,
}

impl IndexedGraph {
    pub fn new(family: FamilySpec) -> Result<Self> {
        family.validate()?;
        let vertices = family.vertices();
        let index: HashMap<u64, u32> = vertices.iter().enumerate().map(|(i, v)| (v.bits(), i as u32)).collect();
        let adj = vertices
            .iter()
            .map(|&v| {
                family
                    .neighbors(v)
                    .expect("enumerated vertex")
                    .iter()
                    .map(|w| index[&w.bits()])
                    .collect()
            })
            .collect();
        Ok(IndexedGraph { family, vertices, adj, index })
    }

    pub fn index_of(&self, x: CyclicWord) -> Option<usize> {
        if x.len() != self.family.word_len() {
            return None;
        }
        self.index.get(&x.bits()).map(|&i| i as usize)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Cycle,
    Path,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Cycle,
    Path,
    None,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Cycle => "cycle",
            Kind::Path => "path",
            Kind::None => "none",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HamiltonResult {
    pub kind: Kind,
    pub sequence: Vec<CyclicWord>,
    /// How the result was obtained, most recent step last.
    pub notes: Vec<String>,
}

impl HamiltonResult {
    pub fn cycle(sequence: Vec<CyclicWord>, note: impl Into<String>) -> Self {
        HamiltonResult { kind: Kind::Cycle, sequence, notes: vec![note.into()] }
    }

    pub fn path(sequence: Vec<CyclicWord>, note: impl Into<String>) -> Self {
        HamiltonResult { kind: Kind::Path, sequence, notes: vec![note.into()] }
    }

    pub fn none(note: impl Into<String>) -> Self {
        HamiltonResult { kind: Kind::None, sequence: Vec::new(), notes: vec![note.into()] }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    /// Checks the result against the family; `Kind::None` always fails.
    pub fn verify(&self, family: &FamilySpec) -> std::result::Result<(), Violation> {
        match self.kind {
            Kind::Cycle => verify_hamilton(family, &self.sequence, Mode::Cycle),
            Kind::Path => verify_hamilton(family, &self.sequence, Mode::Path),
            Kind::None => Err(Violation::Empty),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> CyclicWord {
        s.parse().unwrap()
    }

    #[test]
    fn edge_examples() {
        let k52: FamilySpec = "kneser:n=5,k=2".parse().unwrap();
        assert!(k52.is_edge(w("11000"), w("00110")).unwrap());
        let h52: FamilySpec = "bkneser:n=5,k=2".parse().unwrap();
        assert!(h52.is_edge(w("11000"), w("11100")).unwrap());
        assert!(!h52.is_edge(w("11000"), w("01110")).unwrap());
        let j531: FamilySpec = "johnson:n=5,k=3,s=1".parse().unwrap();
        assert!(j531.is_edge(w("11100"), w("10011")).unwrap());
        assert!(k52.is_edge(w("11100"), w("00011")).is_err());
    }

    #[test]
    fn vertex_counts() {
        assert_eq!(FamilySpec::MiddleLevels { k: 1 }.vertices().len(), 6);
        assert_eq!(FamilySpec::Kneser { n: 5, k: 2 }.vertices().len(), 10);
        assert_eq!(FamilySpec::OddGraph { k: 3 }.vertices().len(), 35);
        assert_eq!(FamilySpec::Hypercube { n: 4 }.vertices().len(), 16);
    }

    #[test]
    fn parse_roundtrip_and_errors() {
        for s in ["kneser:n=9,k=3", "johnson:n=7,k=3,s=1", "middle:k=4", "hypercube:n=4", "odd:k=3"] {
            let f: FamilySpec = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        assert!("kneser:n=5,k=3".parse::<FamilySpec>().is_err());
        assert!("kneser:n=9".parse::<FamilySpec>().is_err());
        assert!("kneser:n=9,k=3,z=1".parse::<FamilySpec>().is_err());
        assert!("torus:n=3".parse::<FamilySpec>().is_err());
        assert!("johnson:n=4,k=2,s=0".parse::<FamilySpec>().is_err());
        assert!("johnson:n=5,k=2,s=0".parse::<FamilySpec>().is_ok());
        assert!("odd:k=1".parse::<FamilySpec>().is_err());
    }

    #[test]
    fn sub_masks_counts() {
        assert_eq!(sub_masks(0b1011, 2), vec![0b0011, 0b1001, 0b1010]);
        assert_eq!(sub_masks(0b1011, 0), vec![0]);
        assert!(sub_masks(0b1, 2).is_empty());
        assert_eq!(sub_masks(u64::MAX, 1).len(), 64);
    }
}
