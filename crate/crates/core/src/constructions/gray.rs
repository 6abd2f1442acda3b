use crate::bits::{low_mask, CyclicWord};
use crate::error::{Error, Result};

pub const MAX_GRAY_N: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GrayMode {
    /// Flip the rightmost bit that leads to an unvisited word.
    Greedy,
    /// `i xor (i >> 1)` with the least significant bit as the rightmost character.
    Reflected,
}

fn from_numeral(g: u64, n: usize) -> CyclicWord {
    CyclicWord::raw(g.reverse_bits() >> (64 - n), n)
}

/// Binary reflected Gray code on `n` bits, starting at the all-zeros word.
pub fn brgc(n: usize, mode: GrayMode) -> Result<Vec<CyclicWord>> {
    if n == 0 || n > MAX_GRAY_N {
        return Err(Error::InvalidParams(format!("brgc supports 1 <= n <= {MAX_GRAY_N}")));
    }
    let total = 1usize << n;
    match mode {
        GrayMode::Reflected => Ok((0..total as u64).map(|i| from_numeral(i ^ (i >> 1), n)).collect()),
        GrayMode::Greedy => {
            let mut visited = vec![false; total];
            let mut cur = 0u64;
            visited[0] = true;
            let mut out = vec![CyclicWord::raw(0, n)];
            'outer: while out.len() < total {
                for i in (0..n).rev() {
                    let next = cur ^ (1 << i);
                    if !visited[next as usize] {
                        visited[next as usize] = true;
                        cur = next;
                        out.push(CyclicWord::raw(cur & low_mask(n), n));
                        continue 'outer;
                    }
                }
                return Err(Error::ConstructionFailure("greedy Gray code got stuck".into()));
            }
            Ok(out)
        }
    }
}

/// The level-`k` words of the reflected Gray code, in order. Consecutive
/// words differ by moving a single 1.
pub fn combo_gray(n: usize, k: usize) -> Result<Vec<CyclicWord>> {
    if k > n {
        return Err(Error::InvalidParams("combo_gray needs k <= n".into()));
    }
    Ok(brgc(n, GrayMode::Reflected)?.into_iter().filter(|x| x.weight() == k).collect())
}
