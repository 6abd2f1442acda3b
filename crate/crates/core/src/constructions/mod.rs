//! End-to-end Hamilton cycle and path constructions.

mod baranyai;
mod double_cover;
pub mod exact_cover;
mod gray;

use std::fmt;
use std::str::FromStr;

use crate::bits::CyclicWord;
use crate::error::{Error, Result};
use crate::factors::{kt_factor, odd_factor, paren_factor};
use crate::gluing::{assemble_hamilton, assemble_with};
use crate::graphs::{brute_force_hamilton, canonical_cycle, FamilySpec, HamiltonResult, Kind, Mode};

pub use baranyai::{baranyai, chen_furedi, BaranyaiPartition};
pub use double_cover::double_cover;
pub use gray::{brgc, combo_gray, GrayMode};

/// Largest graph handed to the backtracking solver by the dispatchers.
pub const BRUTE_MAX_VERTICES: u64 = 5000;
pub const DEFAULT_BUDGET: u64 = 50_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Auto,
    Brgc,
    Combo,
    ChenFuredi,
    FactorGlue,
    DoubleCover,
    Brute,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "auto" => Method::Auto,
            "brgc" => Method::Brgc,
            "combo" => Method::Combo,
            "chen-furedi" => Method::ChenFuredi,
            "factor-glue" => Method::FactorGlue,
            "double-cover" => Method::DoubleCover,
            "brute" => Method::Brute,
            _ => return Err(Error::InvalidInput(format!("unknown method {s:?}"))),
        })
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Auto => "auto",
            Method::Brgc => "brgc",
            Method::Combo => "combo",
            Method::ChenFuredi => "chen-furedi",
            Method::FactorGlue => "factor-glue",
            Method::DoubleCover => "double-cover",
            Method::Brute => "brute",
        })
    }
}

fn is_petersen(n: usize, k: usize) -> bool {
    (n, k) == (5, 2)
}

/// Brute-force Hamilton cycle, or a path with a proof that no cycle exists.
fn brute(family: &FamilySpec) -> Result<HamiltonResult> {
    if family.vertex_count() > BRUTE_MAX_VERTICES {
        return Err(Error::OutOfScope(format!(
            "{family} has {} vertices, beyond the brute-force bound of {BRUTE_MAX_VERTICES}",
            family.vertex_count()
        )));
    }
    let r = brute_force_hamilton(family, Mode::Cycle, DEFAULT_BUDGET)?;
    if r.kind != Kind::None {
        return Ok(r);
    }
    let proof = r.notes.join("; ");
    let p = brute_force_hamilton(family, Mode::Path, DEFAULT_BUDGET)?;
    Ok(p.with_note(proof))
}

fn checked(family: &FamilySpec, r: HamiltonResult) -> Result<HamiltonResult> {
    if r.kind == Kind::None {
        return Ok(r);
    }
    r.verify(family)
        .map_err(|v| Error::ConstructionFailure(format!("result for {family} fails verification: {v}")))?;
    Ok(r)
}

/// Hamilton cycle of the middle levels graph from the matching factor.
pub fn middle_hc(k: usize) -> Result<HamiltonResult> {
    let family = FamilySpec::MiddleLevels { k };
    family.validate()?;
    let r = match kt_factor(k).and_then(|f| assemble_hamilton(&f)) {
        Ok(r) => r,
        Err(e) if family.vertex_count() <= BRUTE_MAX_VERTICES => brute(&family)?.with_note(format!("fallback: {e}")),
        Err(e) => return Err(e),
    };
    checked(&family, r)
}

/// Hamilton cycle of `K_{n,k}` (a path for the Petersen graph).
pub fn kneser_hc(n: usize, k: usize, method: Method) -> Result<HamiltonResult> {
    let family = FamilySpec::Kneser { n, k };
    family.validate()?;
    let r = match method {
        Method::Brute => brute(&family)?,
        Method::ChenFuredi => chen_furedi(n, k)?,
        Method::FactorGlue => factor_glue(n, k)?,
        Method::Auto => {
            if is_petersen(n, k) {
                brute(&family)?.with_note("Petersen exception: no Hamilton cycle")
            } else if k == 1 {
                HamiltonResult::cycle(family.vertices(), "complete graph")
            } else if n == 2 * k + 2 {
                match brute(&family) {
                    Ok(r) if r.kind == Kind::Cycle => r,
                    Ok(_) => return Err(Error::ConstructionFailure(format!("no Hamilton cycle found in {family}"))),
                    Err(e) => factor_glue(n, k)?.with_note(format!("fallback: {e}")),
                }
            } else {
                match factor_glue(n, k) {
                    Ok(r) => r,
                    Err(e) => {
                        if n.is_multiple_of(k) && n / k >= 3 {
                            chen_furedi(n, k)?.with_note(format!("fallback: {e}"))
                        } else if family.vertex_count() <= BRUTE_MAX_VERTICES {
                            brute(&family)?.with_note(format!("fallback: {e}"))
                        } else {
                            return Err(e);
                        }
                    }
                }
            }
        }
        other => return Err(Error::InvalidParams(format!("method {other} does not apply to Kneser graphs"))),
    };
    checked(&family, r)
}

fn factor_glue(n: usize, k: usize) -> Result<HamiltonResult> {
    if n == 2 * k + 1 {
        let f = odd_factor(k)?;
        Ok(assemble_hamilton(&f)?.with_note("odd graph factor"))
    } else if n >= 2 * k + 2 {
        let f = paren_factor(n, k)?;
        Ok(assemble_with(&f, &[4])?.with_note("parenthesis factor"))
    } else {
        Err(Error::OutOfScope(format!("no factor construction for K_{{{n},{k}}}")))
    }
}

/// Hamilton cycle of `J_{n,k,s}` by splitting on the last element and
/// joining the cycles of both halves along a 4-cycle.
pub fn johnson_hc(n: usize, k: usize, s: usize) -> Result<HamiltonResult> {
    let family = FamilySpec::GenJohnson { n, k, s };
    family.validate()?;
    let r = johnson_inner(n, k, s)?;
    checked(&family, r)
}

fn johnson_inner(n: usize, k: usize, s: usize) -> Result<HamiltonResult> {
    let family = FamilySpec::GenJohnson { n, k, s };
    if (n, k, s) == (5, 2, 0) || (n, k, s) == (5, 3, 1) {
        return Ok(brute(&family)?.with_note("Petersen exception: no Hamilton cycle"));
    }
    if s == 0 {
        let r = kneser_hc(n, k, Method::Auto)?;
        return Ok(r.with_note("Kneser graph"));
    }
    if n < 2 * k {
        let r = johnson_inner(n, n - k, n + s - 2 * k)?;
        let mut c = HamiltonResult { kind: r.kind, sequence: r.sequence.iter().map(|x| x.complement()).collect(), notes: r.notes };
        c.notes.push("complement".into());
        return Ok(c);
    }
    let r0 = johnson_inner(n - 1, k, s)?;
    let r1 = johnson_inner(n - 1, k - 1, s - 1)?;
    if r0.kind != Kind::Cycle || r1.kind != Kind::Cycle {
        return brute(&family).map(|r| r.with_note("split part without Hamilton cycle"));
    }
    let c0: Vec<CyclicWord> = r0.sequence.iter().map(|x| x.push(false)).collect::<Result<_>>()?;
    let c1: Vec<CyclicWord> = r1.sequence.iter().map(|x| x.push(true)).collect::<Result<_>>()?;
    match join_by_four_cycle(&family, &c0, &c1) {
        Some(seq) => Ok(HamiltonResult::cycle(seq, "split and glue")),
        None => brute(&family).map(|r| r.with_note("no joining 4-cycle")),
    }
}

/// Finds `a, b` consecutive on `c0` and `c, d` consecutive on `c1` with
/// `a ~ c` and `b ~ d`, and returns the merged cycle.
fn join_by_four_cycle(family: &FamilySpec, c0: &[CyclicWord], c1: &[CyclicWord]) -> Option<Vec<CyclicWord>> {
    let pos1: std::collections::HashMap<CyclicWord, usize> = c1.iter().enumerate().map(|(i, &x)| (x, i)).collect();
    let (l0, l1) = (c0.len(), c1.len());
    for i in 0..l0 {
        let (a, b) = (c0[i], c0[(i + 1) % l0]);
        for c in family.neighbors(a).ok()? {
            let Some(&j) = pos1.get(&c) else { continue };
            for forward in [true, false] {
                let d = if forward { c1[(j + 1) % l1] } else { c1[(j + l1 - 1) % l1] };
                if !family.adjacent(b.bits(), d.bits()) {
                    continue;
                }
                let mut seq: Vec<CyclicWord> = (0..l0).map(|t| c0[(i + 1 + t) % l0]).collect();
                // walk c1 from c away from d, ending at d
                seq.extend((0..l1).map(|t| if forward { c1[(j + l1 - t) % l1] } else { c1[(j + t) % l1] }));
                return Some(seq);
            }
        }
    }
    None
}

/// Hamilton cycle of the generalized Kneser graph, taken from the spanning
/// generalized Johnson graph.
pub fn gen_kneser_hc(n: usize, k: usize, s: usize) -> Result<HamiltonResult> {
    let family = FamilySpec::GenKneser { n, k, s };
    family.validate()?;
    let r = johnson_hc(n, k, s)?.with_note("generalized Johnson subgraph");
    checked(&family, r)
}

/// Constructs a Hamilton cycle (or path where none exists) for any family,
/// verified and in canonical rotation.
pub fn generate(family: &FamilySpec, method: Method) -> Result<HamiltonResult> {
    use FamilySpec::*;
    family.validate()?;
    let mismatch = || Error::InvalidParams(format!("method {method} does not apply to {family}"));
    let r = match (*family, method) {
        (_, Method::Brute) => brute(family)?,
        (Hypercube { n }, Method::Auto | Method::Brgc) => {
            HamiltonResult::cycle(brgc(n, GrayMode::Reflected)?, "binary reflected Gray code")
        }
        (GenJohnson { n, k, s }, Method::Combo) if s + 1 == k => {
            HamiltonResult::cycle(combo_gray(n, k)?, "combination Gray code")
        }
        (MiddleLevels { k }, Method::Auto | Method::FactorGlue) => middle_hc(k)?,
        (LevelBand { n, k }, Method::Auto | Method::FactorGlue) if n == 2 * k + 1 => middle_hc(k)?,
        (LevelBand { .. }, Method::Auto) => brute(family)?,
        (BipartiteKneser { n, k }, Method::Auto | Method::FactorGlue) if n == 2 * k + 1 => middle_hc(k)?,
        (BipartiteKneser { n, k }, Method::Auto | Method::DoubleCover) => {
            let base = kneser_hc(n, k, Method::Auto)?;
            if base.kind != Kind::Cycle {
                brute(family)?.with_note("base Kneser graph has no Hamilton cycle")
            } else {
                double_cover(n, k, &base.sequence, true)?
            }
        }
        (Kneser { n, k }, m) => kneser_hc(n, k, m)?,
        (OddGraph { k }, m) => kneser_hc(2 * k + 1, k, m)?,
        (GenJohnson { n, k, s }, Method::Auto) => johnson_hc(n, k, s)?,
        (GenKneser { n, k, s }, Method::Auto) => gen_kneser_hc(n, k, s)?,
        _ => return Err(mismatch()),
    };
    let mut r = checked(family, r)?;
    if r.kind == Kind::Cycle {
        r.sequence = canonical_cycle(&r.sequence);
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_dispatch() {
        assert_eq!(kneser_hc(5, 2, Method::Auto).unwrap().kind, Kind::Path);
        assert_eq!(kneser_hc(4, 1, Method::Auto).unwrap().kind, Kind::Cycle);
        assert_eq!(johnson_hc(5, 2, 0).unwrap().kind, Kind::Path);
        assert_eq!(johnson_hc(6, 3, 1).unwrap().kind, Kind::Cycle);
    }

    #[test]
    fn method_parsing() {
        for m in ["auto", "brgc", "combo", "chen-furedi", "factor-glue", "double-cover", "brute"] {
            assert_eq!(m.parse::<Method>().unwrap().to_string(), m);
        }
        assert!("magic".parse::<Method>().is_err());
    }
}
