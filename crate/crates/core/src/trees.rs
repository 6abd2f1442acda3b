//! Dyck words, ordered rooted trees and plane trees.

use std::collections::BTreeSet;
use std::fmt;

use crate::bits::{dyck_words, CyclicWord};
use crate::error::{Error, Result};

/// Rooted tree with ordered children. Vertex 0 is the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderedRootedTree {
    children: Vec<Vec<usize>>,
}

impl OrderedRootedTree {
    pub fn from_children(children: Vec<Vec<usize>>) -> Result<Self> {
        if children.is_empty() {
            return Err(Error::InvalidInput("tree needs a root".into()));
        }
        let mut seen = vec![false; children.len()];
        seen[0] = true;
        let mut stack = vec![0];
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &c in &children[v] {
                if c >= children.len() || seen[c] {
                    return Err(Error::InvalidInput("child lists do not form a tree".into()));
                }
                seen[c] = true;
                count += 1;
                stack.push(c);
            }
        }
        if count != children.len() {
            return Err(Error::InvalidInput("tree is not connected".into()));
        }
        Ok(OrderedRootedTree { children })
    }

    pub fn root(&self) -> usize {
        0
    }

    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.children.len()
    }

    pub fn edge_count(&self) -> usize {
        self.children.len() - 1
    }

    /// Structural equality up to vertex naming.
    pub fn same_shape(&self, other: &Self) -> bool {
        self.edge_count() == other.edge_count() && shape(self, 0) == shape(other, 0)
    }
}

fn shape(t: &OrderedRootedTree, v: usize) -> String {
    let mut s = String::from("(");
    for &c in t.children(v) {
        s.push_str(&shape(t, c));
    }
    s.push(')');
    s
}

pub fn dyck_to_tree(y: CyclicWord) -> Result<OrderedRootedTree> {
    if !y.is_dyck() {
        return Err(Error::InvalidInput(format!("{y} is not a Dyck word")));
    }
    let mut children: Vec<Vec<usize>> = vec![Vec::new()];
    let mut path = vec![0usize];
    for i in 0..y.len() {
        if y.get(i) {
            let v = children.len();
            children.push(Vec::new());
            children[*path.last().unwrap()].push(v);
            path.push(v);
        } else {
            path.pop();
        }
    }
    Ok(OrderedRootedTree { children })
}

pub fn tree_to_dyck(t: &OrderedRootedTree) -> Result<CyclicWord> {
    if t.edge_count() == 0 || 2 * t.edge_count() > crate::bits::MAX_LEN {
        return Err(Error::InvalidInput("tree must have 1..=32 edges".into()));
    }
    let mut bits = 0u64;
    let mut pos = 0usize;
    // iterative preorder walk: (vertex, next child index)
    let mut stack = vec![(0usize, 0usize)];
    while let Some(top) = stack.last_mut() {
        let (v, next) = *top;
        if next < t.children[v].len() {
            let c = t.children[v][next];
            top.1 += 1;
            bits |= 1 << pos;
            pos += 1;
            stack.push((c, 0));
        } else {
            stack.pop();
            if !stack.is_empty() {
                pos += 1;
            }
        }
    }
    CyclicWord::new(bits, pos)
}

/// Index of the 1 matched with the final 0 of a Dyck word.
fn last_match(y: CyclicWord) -> usize {
    let mut h = 0i32;
    for i in (0..y.len()).rev() {
        h += if y.get(i) { -1 } else { 1 };
        if h == 0 {
            return i;
        }
    }
    unreachable!("Dyck word always closes")
}

/// Rewrites `y = u 1 v 0` into `1 u 0 v`, where the final 0 closes the 1
/// in front of `v` (so `u` and `v` are Dyck words).
pub fn tree_rotation(y: CyclicWord) -> Result<CyclicWord> {
    if !y.is_dyck() {
        return Err(Error::InvalidInput(format!("{y} is not a Dyck word")));
    }
    let n = y.len();
    let a = last_match(y);
    let u = y.bits() & ((1u64 << a) - 1);
    let v = (y.bits() >> (a + 1)) & ((1u64 << (n - a - 2)) - 1);
    let bits = 1 | (u << 1) | (v << (a + 2));
    CyclicWord::new(bits, n)
}

/// Rotation class of ordered rooted trees, identified by its lexicographically
/// smallest Dyck word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlaneTree {
    code: CyclicWord,
}

impl PlaneTree {
    pub fn code(&self) -> CyclicWord {
        self.code
    }

    pub fn edge_count(&self) -> usize {
        self.code.len() / 2
    }

    pub fn is_star(&self) -> bool {
        (0..self.edge_count()).all(|i| self.code.get(2 * i) && !self.code.get(2 * i + 1))
    }
}

impl fmt::Display for PlaneTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.code.fmt(f)
    }
}

impl fmt::Debug for PlaneTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PlaneTree({})", self.code)
    }
}

pub fn rotation_orbit(y: CyclicWord) -> Result<Vec<CyclicWord>> {
    let mut orbit = vec![y];
    let mut cur = tree_rotation(y)?;
    while cur != y {
        orbit.push(cur);
        cur = tree_rotation(cur)?;
    }
    Ok(orbit)
}

pub fn plane_canonical(y: CyclicWord) -> Result<PlaneTree> {
    let orbit = rotation_orbit(y)?;
    let code = *orbit.iter().min_by_key(|w| w.lex_key()).unwrap();
    Ok(PlaneTree { code })
}

/// All plane trees with `k` edges, sorted by code.
pub fn plane_trees(k: usize) -> Vec<PlaneTree> {
    let mut set = BTreeSet::new();
    let mut seen = std::collections::HashSet::new();
    for y in dyck_words(k) {
        if seen.contains(&y) {
            continue;
        }
        let orbit = rotation_orbit(y).expect("Dyck input");
        let code = *orbit.iter().min_by_key(|w| w.lex_key()).unwrap();
        seen.extend(orbit);
        set.insert(PlaneTree { code });
    }
    set.into_iter().collect()
}

/// Undirected tree where each vertex lists its neighbours in cyclic order.
#[derive(Debug, Clone)]
pub(crate) struct EmbeddedTree {
    pub adj: Vec<Vec<usize>>,
}

impl EmbeddedTree {
    pub fn from_dyck(y: CyclicWord) -> Result<Self> {
        let t = dyck_to_tree(y)?;
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); t.vertex_count()];
        for v in 0..t.vertex_count() {
            for &c in t.children(v) {
                adj[c].push(v);
            }
        }
        for v in 0..t.vertex_count() {
            adj[v].extend_from_slice(t.children(v));
        }
        Ok(EmbeddedTree { adj })
    }

    /// Dyck word seen when rooting at `r` with `adj[r][start]` as the first child.
    pub fn rooted_word(&self, r: usize, start: usize) -> CyclicWord {
        let mut bits = 0u64;
        let mut pos = 0usize;
        let d = self.adj[r].len();
        let mut stack: Vec<(usize, usize, usize, usize)> = vec![(r, usize::MAX, start, d)];
        // (vertex, parent, next offset into adj, remaining)
        while let Some(top) = stack.last_mut() {
            let (v, _, off, rem) = *top;
            if rem == 0 {
                stack.pop();
                if !stack.is_empty() {
                    pos += 1;
                }
                continue;
            }
            let deg = self.adj[v].len();
            let c = self.adj[v][off % deg];
            top.2 = off + 1;
            top.3 = rem - 1;
            bits |= 1 << pos;
            pos += 1;
            let back = self.adj[c].iter().position(|&x| x == v).unwrap();
            let cdeg = self.adj[c].len();
            stack.push((c, v, back + 1, cdeg - 1));
        }
        CyclicWord::raw(bits, pos)
    }

    pub fn canonical(&self) -> PlaneTree {
        let mut best: Option<CyclicWord> = None;
        for r in 0..self.adj.len() {
            for s in 0..self.adj[r].len() {
                let w = self.rooted_word(r, s);
                if best.is_none_or(|b| w.lex_key() < b.lex_key()) {
                    best = Some(w);
                }
            }
        }
        PlaneTree { code: best.expect("tree has an edge") }
    }
}

/// Plane trees obtained by removing a leaf and reattaching it, at any corner,
/// to a neighbour of its old attachment vertex.
pub fn leaf_moves(p: &PlaneTree) -> BTreeSet<PlaneTree> {
    let base = EmbeddedTree::from_dyck(p.code).expect("canonical code is Dyck");
    let mut out = BTreeSet::new();
    for leaf in 0..base.adj.len() {
        if base.adj[leaf].len() != 1 {
            continue;
        }
        let a = base.adj[leaf][0];
        let mut t = base.clone();
        t.adj[a].retain(|&x| x != leaf);
        for b in t.adj[a].clone() {
            for corner in 0..t.adj[b].len() {
                let mut t2 = t.clone();
                t2.adj[b].insert(corner, leaf);
                t2.adj[leaf] = vec![b];
                out.insert(t2.canonical());
            }
        }
    }
    out.remove(p);
    out
}
