//! Cycle factors: spanning collections of disjoint cycles.

pub mod chung_feller;
pub mod gliders;
pub mod kt;
pub mod paren;

use std::collections::HashMap;

use crate::bits::CyclicWord;
use crate::error::{Error, Result};
use crate::graphs::{FamilySpec, HamiltonResult};

pub use chung_feller::{cf_bijection, cf_paths, class_sizes, odd_factor, ChungFeller};
pub use gliders::{glider_decompose, glider_trace, speed_multiset, Decomposition, Glider, GliderTrace};
pub use kt::{cycle_tree_label, kt_f, kt_factor, kt_g, kt_step};
pub use paren::{paren_f, paren_factor};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleFactor {
    pub family: FamilySpec,
    /// Each cycle lists its vertices in successor order.
    pub cycles: Vec<Vec<CyclicWord>>,
}

impl CycleFactor {
    /// Builds a factor after checking that the cycles partition the vertex
    /// set and follow graph edges.
    pub fn new(family: FamilySpec, cycles: Vec<Vec<CyclicWord>>) -> Result<Self> {
        let f = CycleFactor { family, cycles };
        f.validate()?;
        Ok(f)
    }

    pub fn validate(&self) -> Result<()> {
        let mut seen = std::collections::HashSet::new();
        for (ci, c) in self.cycles.iter().enumerate() {
            if c.len() < 3 && !(c.len() == 1 && self.family.vertex_count() == 1) {
                return Err(Error::ConstructionFailure(format!("cycle {ci} has length {}", c.len())));
            }
            for (j, &x) in c.iter().enumerate() {
                self.family.check_vertex(x)?;
                if !seen.insert(x) {
                    return Err(Error::ConstructionFailure(format!("vertex {x} covered twice")));
                }
                let y = c[(j + 1) % c.len()];
                if c.len() > 1 && !self.family.adjacent(x.bits(), y.bits()) {
                    return Err(Error::ConstructionFailure(format!("{x} -> {y} is not an edge")));
                }
            }
        }
        if seen.len() as u64 != self.family.vertex_count() {
            return Err(Error::ConstructionFailure(format!(
                "factor covers {} of {} vertices",
                seen.len(),
                self.family.vertex_count()
            )));
        }
        Ok(())
    }

    pub fn cycle_count(&self) -> usize {
        self.cycles.len()
    }

    pub fn successor_map(&self) -> HashMap<CyclicWord, CyclicWord> {
        let mut m = HashMap::new();
        for c in &self.cycles {
            for (j, &x) in c.iter().enumerate() {
                m.insert(x, c[(j + 1) % c.len()]);
            }
        }
        m
    }

    /// Cycle index and position of every vertex.
    pub fn locations(&self) -> HashMap<CyclicWord, (usize, usize)> {
        let mut m = HashMap::new();
        for (ci, c) in self.cycles.iter().enumerate() {
            for (j, &x) in c.iter().enumerate() {
                m.insert(x, (ci, j));
            }
        }
        m
    }

    /// The sole cycle as a Hamilton cycle, if the factor has just one.
    pub fn as_hamilton(&self) -> Option<HamiltonResult> {
        match self.cycles.as_slice() {
            [c] => Some(HamiltonResult::cycle(c.clone(), "cycle factor is a single cycle")),
            _ => None,
        }
    }
}
