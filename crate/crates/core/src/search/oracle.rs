//! Independent brute-force oracle: exhaustive enumeration of all set
//! partitions of `[n]` in restricted-growth-string order, with no pruning
//! beyond cutting branches that already contain a rainbow AP(3).

use std::ops::ControlFlow;

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::rainbow::extension_makes_rainbow;

/// Largest `n` the oracle accepts; above this the full partition lattice is
/// no longer desk-scale.
pub const BRUTE_FORCE_CEILING: u32 = 14;

fn enumerate_rainbow_free_partitions(
    n: usize,
    sink: &mut impl FnMut(&[u16]) -> ControlFlow<()>,
) {
    fn rec(ids: &mut Vec<u16>, used: u16, n: usize, sink: &mut impl FnMut(&[u16]) -> ControlFlow<()>) -> ControlFlow<()> {
        if ids.len() == n {
            return sink(ids);
        }
        for cid in 0..=used {
            if extension_makes_rainbow(ids, cid) {
                continue;
            }
            ids.push(cid);
            let next_used = used.max(cid + 1);
            rec(ids, next_used, n, sink)?;
            ids.pop();
        }
        ControlFlow::Continue(())
    }
    let mut ids = Vec::with_capacity(n);
    rec(&mut ids, 0, n, sink);
}

/// Exact `f(n)`: the minimum over rainbow-free partitions of `[n]` of the
/// largest block size. Refuses n above [`BRUTE_FORCE_CEILING`].
pub fn brute_force_f(n: u32) -> Result<u64> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    if n > BRUTE_FORCE_CEILING {
        return Err(Error::OracleCeiling {
            n,
            ceiling: BRUTE_FORCE_CEILING,
        });
    }
    let mut best = u64::MAX;
    enumerate_rainbow_free_partitions(n as usize, &mut |ids| {
        let mut sizes = [0u64; 16];
        for &id in ids {
            sizes[id as usize] += 1;
        }
        let max = sizes.iter().copied().max().unwrap_or(0);
        best = best.min(max);
        ControlFlow::Continue(())
    });
    debug_assert!(best != u64::MAX, "every [n] has a rainbow-free coloring");
    Ok(best)
}

/// All canonical rainbow-free colorings of `[n]` whose largest class equals
/// `f(n)`, paired with that value, in restricted-growth-string order.
pub fn brute_force_extremal(n: u32) -> Result<(u64, Vec<Coloring>)> {
    let f = brute_force_f(n)?;
    let mut out = Vec::new();
    enumerate_rainbow_free_partitions(n as usize, &mut |ids| {
        let mut sizes = [0u64; 16];
        for &id in ids {
            sizes[id as usize] += 1;
        }
        if sizes.iter().copied().max().unwrap_or(0) == f {
            out.push(Coloring::from_ids(ids));
        }
        ControlFlow::Continue(())
    });
    Ok((f, out))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(brute_force_f(1).unwrap(), 1);
        assert_eq!(brute_force_f(2).unwrap(), 1);
        // Of the five partitions of [3] only the all-distinct one is rainbow.
        assert_eq!(brute_force_f(3).unwrap(), 2);
        assert_eq!(brute_force_f(4).unwrap(), 2);
    }

    #[test]
    fn refuses_above_ceiling() {
        assert!(matches!(
            brute_force_f(BRUTE_FORCE_CEILING + 1),
            Err(Error::OracleCeiling { .. })
        ));
    }

    #[test]
    fn extremal_set_for_three() {
        let (f, sols) = brute_force_extremal(3).unwrap();
        assert_eq!(f, 2);
        let strings: Vec<Vec<u16>> = sols
            .iter()
            .map(|c| c.colors().iter().map(|c| c.id()).collect())
            .collect();
        assert_eq!(strings, vec![vec![0, 0, 1], vec![0, 1, 0], vec![0, 1, 1]]);
    }
}
