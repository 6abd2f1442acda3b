//! Exact cover by backtracking, branching on the item with the fewest
//! remaining options (smallest item on ties).

use crate::error::{Error, Result};

pub struct ExactCover {
    items: usize,
    options: Vec<Vec<usize>>,
    by_item: Vec<Vec<usize>>,
}

struct State {
    covered: Vec<bool>,
    blocked: Vec<u32>,
    avail: Vec<usize>,
    chosen: Vec<usize>,
    nodes: u64,
}

impl ExactCover {
    pub fn new(items: usize, options: Vec<Vec<usize>>) -> Result<Self> {
        let mut by_item = vec![Vec::new(); items];
        for (o, opt) in options.iter().enumerate() {
            for &i in opt {
                if i >= items {
                    return Err(Error::InvalidInput(format!("option {o} names item {i} of {items}")));
                }
                by_item[i].push(o);
            }
        }
        Ok(ExactCover { items, options, by_item })
    }

    /// First solution in branching order, as option indices in the order chosen.
    pub fn solve(&self, budget: u64) -> Result<Option<Vec<usize>>> {
        let mut st = State {
            covered: vec![false; self.items],
            blocked: vec![0; self.options.len()],
            avail: self.by_item.iter().map(|v| v.len()).collect(),
            chosen: Vec::new(),
            nodes: 0,
        };
        if self.search(&mut st, budget)? {
            Ok(Some(st.chosen))
        } else {
            Ok(None)
        }
    }

    fn search(&self, st: &mut State, budget: u64) -> Result<bool> {
        st.nodes += 1;
        if st.nodes > budget {
            return Err(Error::BudgetExhausted(budget));
        }
        let Some(item) = (0..self.items).filter(|&i| !st.covered[i]).min_by_key(|&i| st.avail[i]) else {
            return Ok(true);
        };
        if st.avail[item] == 0 {
            return Ok(false);
        }
        for &o in &self.by_item[item] {
            if st.blocked[o] > 0 {
                continue;
            }
            self.choose(st, o, true);
            st.chosen.push(o);
            if self.search(st, budget)? {
                return Ok(true);
            }
            st.chosen.pop();
            self.choose(st, o, false);
        }
        Ok(false)
    }

    fn choose(&self, st: &mut State, o: usize, cover: bool) {
        for &i in &self.options[o] {
            st.covered[i] = cover;
            for &o2 in &self.by_item[i] {
                if cover {
                    st.blocked[o2] += 1;
                    if st.blocked[o2] == 1 {
                        for &j in &self.options[o2] {
                            st.avail[j] -= 1;
                        }
                    }
                } else {
                    st.blocked[o2] -= 1;
                    if st.blocked[o2] == 0 {
                        for &j in &self.options[o2] {
                            st.avail[j] += 1;
                        }
                    }
                }
            }
        }
    }
}
