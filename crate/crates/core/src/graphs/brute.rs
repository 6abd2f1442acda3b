use super::{FamilySpec, HamiltonResult, IndexedGraph, Mode};
use crate::error::{Error, Result};

/// Exhaustive backtracking search.
///
/// Cycles always start at the first vertex; paths try start vertices in
/// enumeration order. `Kind::None` means the search space was exhausted;
/// running out of `budget` search nodes is an error instead.
pub fn brute_force_hamilton(family: &FamilySpec, mode: Mode, budget: u64) -> Result<HamiltonResult> {
    if budget == 0 {
        return Err(Error::InvalidParams("budget must be positive".into()));
    }
    if let Some((a, b)) = bipartition_sizes(family) {
        let gap = a.abs_diff(b);
        if gap > 1 || (gap == 1 && mode == Mode::Cycle) {
            let what = if mode == Mode::Cycle { "cycle" } else { "path" };
            return Ok(HamiltonResult::none(format!("no Hamilton {what}: bipartite sides have sizes {a} and {b}")));
        }
    }
    let g = IndexedGraph::new(*family)?;
    let mut nodes = 0u64;
    match mode {
        Mode::Cycle => match search(&g, 0, true, budget, &mut nodes)? {
            Some(p) => Ok(HamiltonResult::cycle(to_words(&g, &p), "brute force")),
            None => Ok(HamiltonResult::none(format!("no Hamilton cycle (exhausted after {nodes} nodes)"))),
        },
        Mode::Path => {
            for s in 0..g.len() {
                if let Some(p) = search(&g, s, false, budget, &mut nodes)? {
                    return Ok(HamiltonResult::path(to_words(&g, &p), "brute force"));
                }
            }
            Ok(HamiltonResult::none(format!("no Hamilton path (exhausted after {nodes} nodes)")))
        }
    }
}

/// Side sizes for the families that are bipartite by weight parity or level.
fn bipartition_sizes(family: &FamilySpec) -> Option<(u64, u64)> {
    use crate::bits::binomial;
    let n = family.word_len() as u64;
    match *family {
        FamilySpec::Hypercube { n } if n >= 1 => Some((1 << (n - 1), 1 << (n - 1))),
        FamilySpec::LevelBand { .. } | FamilySpec::MiddleLevels { .. } | FamilySpec::BipartiteKneser { .. } => {
            let ls = family.levels()?;
            Some((binomial(n, ls[0] as u64)?, binomial(n, ls[1] as u64)?))
        }
        _ => None,
    }
}

fn to_words(g: &IndexedGraph, p: &[u32]) -> Vec<crate::bits::CyclicWord> {
    p.iter().map(|&i| g.vertices[i as usize]).collect()
}

fn search(g: &IndexedGraph, start: usize, cycle: bool, budget: u64, nodes: &mut u64) -> Result<Option<Vec<u32>>> {
    let n = g.len();
    if n == 1 {
        return Ok(Some(vec![start as u32]));
    }
    let mut visited = vec![false; n];
    let mut unvisited_deg: Vec<u32> = g.adj.iter().map(|a| a.len() as u32).collect();
    let mut near_start = vec![false; n];
    if cycle {
        for &w in &g.adj[start] {
            near_start[w as usize] = true;
        }
    }
    let adjacent = |a: u32, b: u32| g.family.adjacent(g.vertices[a as usize].bits(), g.vertices[b as usize].bits());

    // neighbours with the fewest unvisited neighbours first
    let candidates = |v: u32, visited: &[bool], deg: &[u32]| {
        let mut c: Vec<u32> = g.adj[v as usize].iter().copied().filter(|&w| !visited[w as usize]).collect();
        // in cycle mode the start's neighbours stay open for the return
        c.sort_by_key(|&w| (deg[w as usize] + near_start[w as usize] as u32, w));
        c
    };

    let mut path: Vec<u32> = vec![start as u32];
    visited[start] = true;
    for &w in &g.adj[start] {
        unvisited_deg[w as usize] -= 1;
    }
    let mut next: Vec<(Vec<u32>, usize)> = vec![(candidates(start as u32, &visited, &unvisited_deg), 0)];
    *nodes += 1;

    while let Some(&end) = path.last() {
        let depth = path.len() - 1;
        if path.len() == n
            && (!cycle || n == 2 || adjacent(end, start as u32)) {
                return Ok(Some(path));
            }
        let mut advanced = false;
        while next[depth].1 < next[depth].0.len() {
            let v = next[depth].0[next[depth].1];
            next[depth].1 += 1;
            if visited[v as usize] {
                continue;
            }
            *nodes += 1;
            if *nodes > budget {
                return Err(Error::BudgetExhausted(budget));
            }
            visited[v as usize] = true;
            for &w in &g.adj[v as usize] {
                unvisited_deg[w as usize] -= 1;
            }
            let ok = !cycle
                || depth == 0
                || g.adj[end as usize].iter().all(|&u| {
                    let u = u as usize;
                    visited[u] || unvisited_deg[u] + near_start[u] as u32 + adjacent(u as u32, v) as u32 >= 2
                });
            if ok {
                path.push(v);
                next.push((candidates(v, &visited, &unvisited_deg), 0));
                advanced = true;
                break;
            }
            visited[v as usize] = false;
            for &w in &g.adj[v as usize] {
                unvisited_deg[w as usize] += 1;
            }
        }
        if !advanced {
            let v = path.pop().unwrap();
            next.pop();
            visited[v as usize] = false;
            for &w in &g.adj[v as usize] {
                unvisited_deg[w as usize] += 1;
            }
        }
    }
    Ok(None)
}
