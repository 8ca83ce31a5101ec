//! Rainbow AP(3) detection: a three-term arithmetic progression is rainbow
//! when its three positions carry pairwise-distinct colors.

use serde::{Deserialize, Serialize};

use crate::coloring::{Color, Coloring};

/// A three-term arithmetic progression `first, first + step, first + 2*step`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApTriple {
    pub first: i64,
    pub step: i64,
}

impl ApTriple {
    pub fn terms(self) -> [i64; 3] {
        [self.first, self.first + self.step, self.first + 2 * self.step]
    }
}

impl std::fmt::Display for ApTriple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let [a, b, c] = self.terms();
        write!(f, "({a}, {b}, {c})")
    }
}

/// Returns the lexicographically least `(first, step)` rainbow AP(3) of the
/// coloring, or `None` if every three-term progression repeats a color.
pub fn find_rainbow_ap3(c: &Coloring) -> Option<ApTriple> {
    let colors = c.colors();
    let n = colors.len();
    for a in 0..n {
        let ca = colors[a];
        let max_d = (n - 1 - a) / 2;
        for d in 1..=max_d {
            let cb = colors[a + d];
            if ca == cb {
                continue;
            }
            let cc = colors[a + 2 * d];
            if cc != ca && cc != cb {
                return Some(ApTriple {
                    first: c.start() + a as i64,
                    step: d as i64,
                });
            }
        }
    }
    None
}

/// True iff appending `next` to the id sequence `prefix` completes some
/// rainbow AP(3) ending at the new position. Every AP(3) ends somewhere, so
/// checking only progressions that end at the freshly assigned position is a
/// complete incremental test.
pub fn extension_makes_rainbow(prefix: &[u16], next: u16) -> bool {
    let i = prefix.len();
    for d in 1..=i / 2 {
        let a = prefix[i - 2 * d];
        let b = prefix[i - d];
        if a != b && a != next && b != next {
            return true;
        }
    }
    false
}

/// Full-enumeration variant of [`find_rainbow_ap3`] used as a cross-check:
/// walks `(step, first)` order and keeps the `(first, step)`-least hit.
pub fn find_rainbow_ap3_exhaustive(c: &Coloring) -> Option<ApTriple> {
    let colors = c.colors();
    let n = colors.len();
    let mut best: Option<(i64, i64)> = None;
    for d in 1..=n.saturating_sub(1) / 2 {
        for a in 0..n - 2 * d {
            let (x, y, z) = (colors[a], colors[a + d], colors[a + 2 * d]);
            if x != y && y != z && x != z {
                let cand = (c.start() + a as i64, d as i64);
                if best.map_or(true, |b| cand < b) {
                    best = Some(cand);
                }
            }
        }
    }
    best.map(|(first, step)| ApTriple { first, step })
}
