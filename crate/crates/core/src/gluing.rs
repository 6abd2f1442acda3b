//! Joining the cycles of a cycle factor into one Hamilton cycle.
//!
//! A gluing cycle `H = (v0, v1, ..., v_{2m-1})` alternates between factor
//! edges `(v0,v1), (v2,v3), ...` and graph edges that are not in the factor.
//! Replacing the factor edges of `H` by its other edges merges the factor
//! cycles it touches, provided the result is a single cycle.

use std::collections::{BTreeSet, HashMap, HashSet};

use rayon::prelude::*;

use crate::bits::CyclicWord;
use crate::error::{Error, Result};
use crate::factors::CycleFactor;
use crate::graphs::{FamilySpec, HamiltonResult, Mode};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GluingCycle {
    /// `vertices[2j]`–`vertices[2j+1]` are factor edges.
    pub vertices: Vec<CyclicWord>,
    /// Factor cycle of each factor edge.
    pub edge_cycles: Vec<usize>,
    /// Distinct factor cycles touched, sorted.
    pub touched: Vec<usize>,
}

impl GluingCycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn arity(&self) -> usize {
        self.touched.len()
    }

    pub fn factor_edges(&self) -> impl Iterator<Item = (CyclicWord, CyclicWord)> + '_ {
        self.vertices.chunks(2).map(|e| (e[0], e[1]))
    }

    pub fn other_edges(&self) -> impl Iterator<Item = (CyclicWord, CyclicWord)> + '_ {
        let l = self.vertices.len();
        (0..l / 2).map(move |j| (self.vertices[2 * j + 1], self.vertices[(2 * j + 2) % l]))
    }

    fn edge_keys(&self) -> Vec<(u64, u64)> {
        self.factor_edges()
            .chain(self.other_edges())
            .map(|(a, b)| (a.bits().min(b.bits()), a.bits().max(b.bits())))
            .collect()
    }

    fn sort_key(&self) -> (usize, Vec<CyclicWord>) {
        (self.arity(), self.vertices.clone())
    }
}

/// Mutable cycle collection with vertex locations.
#[derive(Debug, Clone)]
struct Working {
    family: FamilySpec,
    cycles: Vec<Option<Vec<CyclicWord>>>,
    loc: HashMap<CyclicWord, (usize, usize)>,
    alive: usize,
}

impl Working {
    fn new(factor: &CycleFactor) -> Self {
        Working {
            family: factor.family,
            cycles: factor.cycles.iter().cloned().map(Some).collect(),
            loc: factor.locations(),
            alive: factor.cycles.len(),
        }
    }

    fn cycle(&self, c: usize) -> &[CyclicWord] {
        self.cycles[c].as_deref().expect("live cycle")
    }

    fn succ(&self, x: CyclicWord) -> CyclicWord {
        let (c, p) = self.loc[&x];
        let cyc = self.cycle(c);
        cyc[(p + 1) % cyc.len()]
    }

    fn pred(&self, x: CyclicWord) -> CyclicWord {
        let (c, p) = self.loc[&x];
        let cyc = self.cycle(c);
        cyc[(p + cyc.len() - 1) % cyc.len()]
    }

    fn is_cycle_edge(&self, a: CyclicWord, b: CyclicWord) -> bool {
        self.loc[&a].0 == self.loc[&b].0 && (self.succ(a) == b || self.pred(a) == b)
    }

    /// Position `p` such that the cycle edge is between positions `p` and `p+1`.
    fn edge_pos(&self, a: CyclicWord, b: CyclicWord) -> (usize, usize) {
        let (c, pa) = self.loc[&a];
        let (_, pb) = self.loc[&b];
        let l = self.cycle(c).len();
        if (pa + 1) % l == pb {
            (c, pa)
        } else {
            (c, pb)
        }
    }

    /// Arcs left after removing the factor edges of `h`, as
    /// `(cycle, from position, to position)` walking forward.
    fn arcs(&self, h: &GluingCycle) -> Vec<(usize, usize, usize)> {
        let mut by_cycle: HashMap<usize, Vec<usize>> = HashMap::new();
        for (a, b) in h.factor_edges() {
            let (c, p) = self.edge_pos(a, b);
            by_cycle.entry(c).or_default().push(p);
        }
        let mut arcs = Vec::new();
        let mut keys: Vec<usize> = by_cycle.keys().copied().collect();
        keys.sort_unstable();
        for c in keys {
            let ps = by_cycle.get_mut(&c).unwrap();
            ps.sort_unstable();
            let l = self.cycle(c).len();
            for i in 0..ps.len() {
                let from = (ps[i] + 1) % l;
                let to = ps[(i + 1) % ps.len()];
                arcs.push((c, from, to));
            }
        }
        arcs
    }

    /// Current cycles touched by `h` if it can be applied now.
    fn check(&self, h: &GluingCycle) -> Option<Vec<usize>> {
        for (a, b) in h.factor_edges() {
            if !self.is_cycle_edge(a, b) {
                return None;
            }
        }
        for (a, b) in h.other_edges() {
            if self.is_cycle_edge(a, b) || !self.family.adjacent(a.bits(), b.bits()) {
                return None;
            }
        }
        let touched: BTreeSet<usize> = h.vertices.iter().map(|v| self.loc[v].0).collect();
        if touched.len() < 2 {
            return None;
        }
        let merged = self.walk(h)?;
        let total: usize = touched.iter().map(|&c| self.cycle(c).len()).sum();
        (merged == total).then(|| touched.into_iter().collect())
    }

    /// Length of the closed walk through arcs and new edges starting at `v0`.
    fn walk(&self, h: &GluingCycle) -> Option<usize> {
        self.trace(h, |_| {})
    }

    fn trace(&self, h: &GluingCycle, mut emit: impl FnMut(CyclicWord)) -> Option<usize> {
        let arcs = self.arcs(h);
        let mut arc_of: HashMap<CyclicWord, (usize, bool)> = HashMap::new();
        for (i, &(c, from, to)) in arcs.iter().enumerate() {
            let cyc = self.cycle(c);
            arc_of.insert(cyc[from], (i, true));
            arc_of.insert(cyc[to], (i, false));
        }
        let mut partner: HashMap<CyclicWord, CyclicWord> = HashMap::new();
        for (a, b) in h.other_edges() {
            partner.insert(a, b);
            partner.insert(b, a);
        }
        let start = h.vertices[0];
        let mut at = start;
        let mut count = 0usize;
        for _ in 0..arcs.len() {
            let &(i, forward) = arc_of.get(&at)?;
            let (c, from, to) = arcs[i];
            let cyc = self.cycle(c);
            let l = cyc.len();
            let span = (to + l - from) % l + 1;
            for s in 0..span {
                let p = if forward { (from + s) % l } else { (to + l - s) % l };
                emit(cyc[p]);
            }
            count += span;
            let end = if forward { cyc[to] } else { cyc[from] };
            at = *partner.get(&end)?;
            if at == start {
                return Some(count);
            }
        }
        None
    }

    fn apply(&mut self, h: &GluingCycle) -> Result<()> {
        let touched = self
            .check(h)
            .ok_or_else(|| Error::InvalidGluing("gluing cycle does not apply to the current cycles".into()))?;
        let mut merged = Vec::new();
        self.trace(h, |v| merged.push(v));
        let keep = touched[0];
        for &c in &touched[1..] {
            self.cycles[c] = None;
        }
        for (p, &v) in merged.iter().enumerate() {
            self.loc.insert(v, (keep, p));
        }
        self.cycles[keep] = Some(merged);
        self.alive -= touched.len() - 1;
        Ok(())
    }

    fn into_factor(self) -> CycleFactor {
        CycleFactor { family: self.family, cycles: self.cycles.into_iter().flatten().collect() }
    }
}

/// All gluing cycles of the requested lengths, sorted by arity and then by
/// vertex sequence. Each is listed once, starting at its smallest vertex.
pub fn find_gluing_cycles(factor: &CycleFactor, lengths: &[usize]) -> Result<Vec<GluingCycle>> {
    for &l in lengths {
        if ![4, 6, 8].contains(&l) {
            return Err(Error::InvalidParams(format!("gluing cycles of length {l} not supported")));
        }
    }
    let w = Working::new(factor);
    let vertices: Vec<CyclicWord> = factor.cycles.iter().flatten().copied().collect();
    let mut found: Vec<GluingCycle> = vertices
        .par_iter()
        .flat_map_iter(|&v0| {
            let mut out = Vec::new();
            for &len in lengths {
                let mut firsts = vec![w.succ(v0), w.pred(v0)];
                firsts.dedup();
                for v1 in firsts {
                    if v1 > v0 {
                        let mut path = vec![v0, v1];
                        extend(&w, &mut path, len, &mut out);
                    }
                }
            }
            out
        })
        .collect();
    found.sort_by_key(|h| h.sort_key());
    found.dedup();
    Ok(found)
}

fn extend(w: &Working, path: &mut Vec<CyclicWord>, len: usize, out: &mut Vec<GluingCycle>) {
    let v0 = path[0];
    let last = *path.last().unwrap();
    if path.len() == len {
        if w.family.adjacent(last.bits(), v0.bits()) && !w.is_cycle_edge(last, v0) {
            let edge_cycles: Vec<usize> = path.chunks(2).map(|e| w.loc[&e[0]].0).collect();
            let touched: Vec<usize> = edge_cycles.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
            let h = GluingCycle { vertices: path.clone(), edge_cycles, touched };
            if w.check(&h).is_some() {
                out.push(h);
            }
        }
        return;
    }
    for a in w.family.neighbors(last).expect("factor vertex") {
        if a <= v0 || path.contains(&a) || w.is_cycle_edge(last, a) {
            continue;
        }
        let mut nexts = vec![w.succ(a), w.pred(a)];
        nexts.dedup();
        for b in nexts {
            if b <= v0 || b == a || path.contains(&b) {
                continue;
            }
            path.push(a);
            path.push(b);
            extend(w, path, len, out);
            path.pop();
            path.pop();
        }
    }
}

/// Applies one gluing cycle; the merged cycle takes the place of the first
/// touched cycle.
pub fn apply_gluing(factor: &CycleFactor, h: &GluingCycle) -> Result<CycleFactor> {
    let mut w = Working::new(factor);
    w.apply(h)?;
    Ok(w.into_factor())
}

/// Nodes are factor cycles; each hyperedge is the set of cycles a gluing
/// cycle touches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxiliaryHypergraph {
    pub node_count: usize,
    pub hyperedges: Vec<Vec<usize>>,
    /// Indices of hyperedges that may not be chosen together.
    pub conflicts: Vec<BTreeSet<usize>>,
}

impl AuxiliaryHypergraph {
    pub fn new(node_count: usize, hyperedges: Vec<Vec<usize>>, conflict_pairs: &[(usize, usize)]) -> Result<Self> {
        let mut conflicts = vec![BTreeSet::new(); hyperedges.len()];
        for e in &hyperedges {
            let set: BTreeSet<usize> = e.iter().copied().collect();
            if set.len() != e.len() || e.iter().any(|&v| v >= node_count) {
                return Err(Error::InvalidInput("hyperedge nodes must be distinct and in range".into()));
            }
        }
        for &(a, b) in conflict_pairs {
            if a >= hyperedges.len() || b >= hyperedges.len() {
                return Err(Error::InvalidInput("conflict refers to a missing hyperedge".into()));
            }
            if a != b {
                conflicts[a].insert(b);
                conflicts[b].insert(a);
            }
        }
        Ok(AuxiliaryHypergraph { node_count, hyperedges, conflicts })
    }

    /// Two gluing cycles conflict when they share an edge.
    pub fn from_gluings(factor: &CycleFactor, gluings: &[GluingCycle]) -> Self {
        let mut by_edge: HashMap<(u64, u64), Vec<usize>> = HashMap::new();
        for (i, h) in gluings.iter().enumerate() {
            for e in h.edge_keys() {
                by_edge.entry(e).or_default().push(i);
            }
        }
        let mut pairs = HashSet::new();
        for list in by_edge.values() {
            for (i, &a) in list.iter().enumerate() {
                for &b in &list[i + 1..] {
                    pairs.insert((a.min(b), a.max(b)));
                }
            }
        }
        let mut pairs: Vec<(usize, usize)> = pairs.into_iter().collect();
        pairs.sort_unstable();
        let edges = gluings.iter().map(|h| h.touched.clone()).collect();
        Self::new(factor.cycle_count(), edges, &pairs).expect("gluings reference factor cycles")
    }

    pub fn is_connected(&self) -> bool {
        let mut uf = UnionFind::new(self.node_count);
        for e in &self.hyperedges {
            for w in e.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        uf.components == 1
    }
}

#[derive(Debug, Clone)]
struct UnionFind {
    parent: Vec<usize>,
    components: usize,
    history: Vec<(usize, usize)>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), components: n, history: Vec::new() }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[rb] = ra;
        self.components -= 1;
        self.history.push((rb, ra));
        true
    }

    fn rollback(&mut self, to: usize) {
        while self.history.len() > to {
            let (child, _) = self.history.pop().unwrap();
            self.parent[child] = child;
            self.components += 1;
        }
    }
}

pub const SPANNING_BUDGET: u64 = 2_000_000;

/// Chooses pairwise conflict-free hyperedges forming a spanning hypertree in
/// which any two hyperedges share at most one node. Hyperedges are tried in
/// their given order, with backtracking.
pub fn spanning_structure(aux: &AuxiliaryHypergraph) -> Result<Vec<usize>> {
    if aux.node_count == 0 {
        return Err(Error::InvalidInput("auxiliary graph has no nodes".into()));
    }
    let mut uf = UnionFind::new(aux.node_count);
    let mut chosen = Vec::new();
    let mut blocked = vec![0u32; aux.hyperedges.len()];
    let mut nodes = 0u64;
    if select(aux, 0, &mut uf, &mut chosen, &mut blocked, &mut nodes)? {
        Ok(chosen)
    } else {
        Err(Error::AssemblyFailure("no conflict-free loose spanning tree exists".into()))
    }
}

fn select(
    aux: &AuxiliaryHypergraph,
    idx: usize,
    uf: &mut UnionFind,
    chosen: &mut Vec<usize>,
    blocked: &mut Vec<u32>,
    nodes: &mut u64,
) -> Result<bool> {
    if uf.components == 1 {
        return Ok(true);
    }
    *nodes += 1;
    if *nodes > SPANNING_BUDGET {
        return Err(Error::AssemblyFailure(format!("spanning tree search exceeded {SPANNING_BUDGET} nodes")));
    }
    // the remaining usable hyperedges must still be able to connect everything
    let mut probe = uf.clone();
    probe.history.clear();
    for (i, e) in aux.hyperedges.iter().enumerate().skip(idx) {
        if blocked[i] == 0 {
            for w in e.windows(2) {
                probe.union(w[0], w[1]);
            }
        }
    }
    if probe.components != 1 {
        return Ok(false);
    }
    for i in idx..aux.hyperedges.len() {
        if blocked[i] > 0 {
            continue;
        }
        let e = &aux.hyperedges[i];
        let roots: BTreeSet<usize> = e.iter().map(|&v| uf.find(v)).collect();
        if roots.len() != e.len() {
            continue;
        }
        let mark = uf.history.len();
        for w in e.windows(2) {
            uf.union(w[0], w[1]);
        }
        for &c in &aux.conflicts[i] {
            blocked[c] += 1;
        }
        chosen.push(i);
        if select(aux, i + 1, uf, chosen, blocked, nodes)? {
            return Ok(true);
        }
        chosen.pop();
        for &c in &aux.conflicts[i] {
            blocked[c] -= 1;
        }
        uf.rollback(mark);
    }
    Ok(false)
}

/// Default gluing-cycle lengths per family.
pub fn default_lengths(family: &FamilySpec) -> Vec<usize> {
    match family {
        FamilySpec::MiddleLevels { .. } | FamilySpec::LevelBand { .. } | FamilySpec::Hypercube { .. } => vec![6],
        FamilySpec::OddGraph { .. } => vec![6, 8],
        FamilySpec::Kneser { n, k } if *n == 2 * k + 1 => vec![6, 8],
        _ => vec![4],
    }
}

pub fn assemble_hamilton(factor: &CycleFactor) -> Result<HamiltonResult> {
    assemble_with(factor, &default_lengths(&factor.family))
}

/// Glues the factor along a spanning structure of gluing cycles. Gluings
/// that no longer apply when their turn comes are skipped, and the remaining
/// candidates are then tried greedily.
pub fn assemble_with(factor: &CycleFactor, lengths: &[usize]) -> Result<HamiltonResult> {
    if let Some(h) = factor.as_hamilton() {
        return Ok(h);
    }
    let candidates = find_gluing_cycles(factor, lengths)?;
    if candidates.is_empty() {
        return Err(Error::AssemblyFailure("no gluing cycles found".into()));
    }
    let aux = AuxiliaryHypergraph::from_gluings(factor, &candidates);
    let mut w = Working::new(factor);
    let mut notes = Vec::new();
    match spanning_structure(&aux) {
        Ok(sel) => {
            let mut skipped = 0;
            for &i in &sel {
                if w.apply(&candidates[i]).is_err() {
                    skipped += 1;
                }
            }
            notes.push(format!("spanning structure of {} gluings ({skipped} skipped)", sel.len()));
        }
        Err(e) => notes.push(format!("no spanning structure: {e}")),
    }
    if w.alive > 1 {
        let mut progress = true;
        while progress && w.alive > 1 {
            progress = false;
            for h in &candidates {
                if w.apply(h).is_ok() {
                    progress = true;
                    if w.alive == 1 {
                        break;
                    }
                }
            }
        }
        notes.push("greedy gluing pass".into());
    }
    if w.alive > 1 {
        return Err(Error::AssemblyFailure(format!("{} cycles remain after gluing", w.alive)));
    }
    let family = w.family;
    let cycle = w.into_factor().cycles.pop().unwrap();
    crate::graphs::verify_hamilton(&family, &cycle, Mode::Cycle)
        .map_err(|v| Error::AssemblyFailure(format!("glued cycle fails verification: {v}")))?;
    let mut r = HamiltonResult::cycle(cycle, "cycle factor and gluing");
    r.notes.extend(notes);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factors::{kt_factor, odd_factor, paren_factor};

    #[test]
    fn middle_levels_has_no_gluing_four_cycles() {
        let f = kt_factor(3).unwrap();
        assert!(find_gluing_cycles(&f, &[4]).unwrap().is_empty());
        assert!(!find_gluing_cycles(&f, &[6]).unwrap().is_empty());
    }

    #[test]
    fn petersen_has_no_gluings() {
        let f = paren_factor(5, 2).unwrap();
        assert!(find_gluing_cycles(&f, &[4, 6, 8]).unwrap().is_empty());
        assert!(assemble_hamilton(&f).is_err());
    }

    #[test]
    fn middle_three_glues_once() {
        let f = kt_factor(3).unwrap();
        let hs = find_gluing_cycles(&f, &[6]).unwrap();
        let g = apply_gluing(&f, &hs[0]).unwrap();
        assert_eq!(g.cycle_count(), 1);
        g.validate().unwrap();
        assert_eq!(g.cycles[0].len(), 70);
    }

    #[test]
    fn odd_three_assembles() {
        let f = odd_factor(3).unwrap();
        let r = assemble_hamilton(&f).unwrap();
        assert_eq!(r.sequence.len(), 35);
    }

    #[test]
    fn crafted_failures() {
        let tri = AuxiliaryHypergraph::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]], &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(tri.is_connected());
        assert!(spanning_structure(&tri).is_err());
        let loose = AuxiliaryHypergraph::new(4, vec![vec![0, 1, 2], vec![1, 2, 3]], &[]).unwrap();
        assert!(loose.is_connected());
        assert!(spanning_structure(&loose).is_err());
        let ok = AuxiliaryHypergraph::new(3, vec![vec![0, 1], vec![1, 2], vec![0, 2]], &[(0, 1)]).unwrap();
        assert_eq!(spanning_structure(&ok).unwrap(), vec![0, 2]);
    }

    #[test]
    fn bad_lengths_rejected() {
        let f = kt_factor(2).unwrap();
        assert!(find_gluing_cycles(&f, &[5]).is_err());
    }
}
