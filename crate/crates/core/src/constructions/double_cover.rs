use crate::bits::CyclicWord;
use crate::error::{Error, Result};
use crate::factors::CycleFactor;
use crate::gluing::assemble_with;
use crate::graphs::{verify_hamilton, FamilySpec, HamiltonResult, Mode};

/// Lifts a Hamilton cycle `X_1, ..., X_l` of `K_{n,k}` to the bipartite
/// Kneser graph `H_{n,k}` via `P = (X_1, !X_2, X_3, ...)` and its complement
/// `P'`. For odd `l`, `PP'` is a Hamilton cycle. For even `l`, `P` and `P'` are
/// disjoint cycles; they are joined along a cross edge into a Hamilton path,
/// or, with `merge`, glued into a cycle when a gluing 4-cycle exists.
pub fn double_cover(n: usize, k: usize, hc: &[CyclicWord], merge: bool) -> Result<HamiltonResult> {
    let kneser = FamilySpec::Kneser { n, k };
    kneser.validate()?;
    verify_hamilton(&kneser, hc, Mode::Cycle).map_err(|v| Error::InvalidCertificate(v.to_string()))?;
    let family = FamilySpec::BipartiteKneser { n, k };
    let l = hc.len();
    let p: Vec<CyclicWord> = hc
        .iter()
        .enumerate()
        .map(|(i, x)| if i % 2 == 1 { x.complement() } else { *x })
        .collect();
    let q: Vec<CyclicWord> = p.iter().map(|x| x.complement()).collect();
    let result = if l % 2 == 1 {
        let mut seq = p;
        seq.extend(q);
        HamiltonResult::cycle(seq, "double cover (odd length)")
    } else {
        let glued = if merge {
            CycleFactor::new(family, vec![p.clone(), q.clone()])
                .ok()
                .and_then(|f| assemble_with(&f, &[4]).ok())
        } else {
            None
        };
        match glued {
            Some(r) => r.with_note("double cover (even length) glued by a 4-cycle"),
            None => join_path(&family, &p, &q)?,
        }
    };
    result
        .verify(&family)
        .map_err(|v| Error::ConstructionFailure(format!("double cover result invalid: {v}")))?;
    Ok(result)
}

fn join_path(family: &FamilySpec, p: &[CyclicWord], q: &[CyclicWord]) -> Result<HamiltonResult> {
    let l = p.len();
    for (i, a) in p.iter().enumerate() {
        for (j, b) in q.iter().enumerate() {
            if family.adjacent(a.bits(), b.bits()) {
                let mut seq: Vec<CyclicWord> = (1..=l).map(|s| p[(i + s) % l]).collect();
                seq.extend((0..l).map(|s| q[(j + s) % l]));
                return Ok(HamiltonResult::path(seq, "double cover (even length) joined by a cross edge"));
            }
        }
    }
    Err(Error::ConstructionFailure("no edge between the two covering cycles".into()))
}
