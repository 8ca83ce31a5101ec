//! Integer intervals and the decomposition of a coloring into the gaps
//! between consecutive occurrences of an anchor color.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coloring::{Color, Coloring};

/// A closed integer interval `[lo, hi]`, empty when `hi < lo`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    lo: i64,
    hi: i64,
}

impl Interval {
    pub fn new(lo: i64, hi: i64) -> Interval {
        Interval { lo, hi }
    }

    /// The empty interval anchored at `pos`.
    pub fn empty_at(pos: i64) -> Interval {
        Interval { lo: pos, hi: pos - 1 }
    }

    pub fn lo(self) -> i64 {
        self.lo
    }

    pub fn hi(self) -> i64 {
        self.hi
    }

    pub fn len(self) -> u64 {
        if self.hi < self.lo {
            0
        } else {
            (self.hi - self.lo + 1) as u64
        }
    }

    pub fn is_empty(self) -> bool {
        self.hi < self.lo
    }

    pub fn contains(self, pos: i64) -> bool {
        self.lo <= pos && pos <= self.hi
    }

    pub fn contains_interval(self, other: Interval) -> bool {
        other.is_empty() || (self.lo <= other.lo && other.hi <= self.hi)
    }

    pub fn intersect(self, other: Interval) -> Option<Interval> {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        if hi < lo {
            None
        } else {
            Some(Interval { lo, hi })
        }
    }

    pub fn iter(self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "[]")
        } else {
            write!(f, "[{}, {}]", self.lo, self.hi)
        }
    }
}

/// The split of a coloring's domain around an anchor color `X`: an initial
/// segment before the first `X`, then one interval per gap between
/// consecutive `X`s (left occurrence included, right excluded), then a
/// terminal segment from the last `X` on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalDecomposition {
    pub anchor: Color,
    pub initial: Interval,
    pub xx_intervals: Vec<Interval>,
    pub terminal: Interval,
    /// Populated only for colorings with the three-color structure required
    /// by the refined split (see [`SpecialIntervals`]).
    pub special: Option<SpecialIntervals>,
    /// Gap length -> number of anchor-anchor intervals of that length.
    pub length_histogram: std::collections::BTreeMap<u64, u64>,
}

/// The refined split of a three-color coloring whose anchor `G` is solitary
/// with a monochromatic neighbor set `R` and whose third color `B` occurs
/// doubled somewhere:
///
/// * `i1` — longest initial segment free of `BB` ending with `G`,
/// * `i2` — the segment after `i1` up to and including the first `BB`,
/// * `i3` — everything after `i2`,
/// * `i0` — longest initial segment containing no `G`,
/// * `i2_prime` — the mirror image of `i1` minus its endpoint, reflected
///   through the end of `i1` (kept as the raw formula interval even when it
///   overruns `i2`; consumers check containment first),
/// * `i2_second` — `i2` minus `i2_prime`,
/// * `i_terminal` — longest terminal segment free of `BB`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialIntervals {
    pub i0: Interval,
    pub i1: Interval,
    pub i2: Interval,
    pub i2_prime: Interval,
    pub i2_second: Interval,
    pub i3: Interval,
    pub i_terminal: Interval,
    /// The color of the anchor's neighbors.
    pub neighbor_color: Color,
    /// The remaining third color.
    pub third_color: Color,
}

impl IntervalDecomposition {
    /// Sum of `length * count` over the histogram, i.e. the number of
    /// positions covered by the anchor-anchor intervals.
    pub fn covered_by_gaps(&self) -> u64 {
        self.length_histogram.iter().map(|(l, c)| l * c).sum()
    }
}

/// Splits the domain of `c` around the anchor color `x`.
pub fn decompose(c: &Coloring, x: Color) -> IntervalDecomposition {
    let occurrences: Vec<i64> = c
        .iter()
        .filter_map(|(pos, col)| (col == x).then_some(pos))
        .collect();

    let (initial, xx_intervals, terminal) = match (occurrences.first(), occurrences.last()) {
        (Some(&first), Some(&last)) => {
            let initial = Interval::new(c.start(), first - 1);
            let gaps = occurrences
                .windows(2)
                .map(|w| Interval::new(w[0], w[1] - 1))
                .collect();
            (initial, gaps, Interval::new(last, c.end()))
        }
        _ => (
            c.domain(),
            Vec::new(),
            Interval::empty_at(c.end() + 1),
        ),
    };

    let mut length_histogram = std::collections::BTreeMap::new();
    for iv in &xx_intervals {
        *length_histogram.entry(iv.len()).or_insert(0) += 1;
    }

    let special = special_intervals(c, x);

    IntervalDecomposition {
        anchor: x,
        initial,
        xx_intervals,
        terminal,
        special,
        length_histogram,
    }
}

/// Start positions of `BB`-style doubled occurrences of `color`.
fn doubled_positions(c: &Coloring, color: Color) -> Vec<i64> {
    c.colors()
        .windows(2)
        .enumerate()
        .filter_map(|(i, w)| (w[0] == color && w[1] == color).then_some(c.start() + i as i64))
        .collect()
}

fn special_intervals(c: &Coloring, anchor: Color) -> Option<SpecialIntervals> {
    let palette = c.palette();
    if palette.len() != 3 || !palette.contains(&anchor) {
        return None;
    }
    if !c.is_solitary(anchor) {
        return None;
    }
    let neighbors = c.neighbor_set(anchor);
    let mut neighbor_colors = neighbors
        .iter()
        .map(|&p| c.get(p).expect("neighbor inside domain"));
    let neighbor_color = neighbor_colors.next()?;
    if neighbor_colors.any(|col| col != neighbor_color) {
        return None;
    }
    let third_color = *palette
        .iter()
        .find(|&&col| col != anchor && col != neighbor_color)?;

    let doubles = doubled_positions(c, third_color);
    let &first_double = doubles.first()?;
    let &last_double = doubles.last()?;

    // Longest prefix ending with the anchor and containing no doubled third
    // color: its endpoint is the last anchor before the first double.
    let l = c
        .iter()
        .filter(|&(pos, col)| col == anchor && pos <= first_double)
        .map(|(pos, _)| pos)
        .last()?;

    let i1 = Interval::new(c.start(), l);
    let i2 = Interval::new(l + 1, first_double + 1);
    let i2_prime = Interval::new(l + 1, 2 * l - c.start());
    let i2_second = Interval::new((2 * l - c.start() + 1).max(l + 1), i2.hi());
    let i3 = Interval::new(first_double + 2, c.end());
    let first_anchor = c
        .iter()
        .find(|&(_, col)| col == anchor)
        .map(|(pos, _)| pos)
        .expect("anchor occurs");
    let i0 = Interval::new(c.start(), first_anchor - 1);
    let i_terminal = Interval::new(last_double + 1, c.end());

    Some(SpecialIntervals {
        i0,
        i1,
        i2,
        i2_prime,
        i2_second,
        i3,
        i_terminal,
        neighbor_color,
        third_color,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_basics() {
        let iv = Interval::new(3, 7);
        assert_eq!(iv.len(), 5);
        assert!(iv.contains(3) && iv.contains(7) && !iv.contains(8));
        assert!(Interval::empty_at(4).is_empty());
        assert_eq!(Interval::empty_at(4).len(), 0);
        assert_eq!(iv.intersect(Interval::new(6, 9)), Some(Interval::new(6, 7)));
        assert_eq!(iv.intersect(Interval::new(8, 9)), None);
    }

    #[test]
    fn decompose_without_anchor_puts_everything_initial() {
        let c = Coloring::parse("RRBB").unwrap();
        let d = decompose(&c, Color::G);
        assert_eq!(d.initial, c.domain());
        assert!(d.xx_intervals.is_empty());
        assert!(d.terminal.is_empty());
        assert!(d.special.is_none());
    }

    #[test]
    fn decompose_partition_is_exact() {
        let c = Coloring::parse("RGRRGBRG").unwrap();
        let d = decompose(&c, Color::G);
        assert_eq!(d.initial, Interval::new(1, 1));
        assert_eq!(
            d.xx_intervals,
            vec![Interval::new(2, 4), Interval::new(5, 7)]
        );
        assert_eq!(d.terminal, Interval::new(8, 8));
        let total: u64 =
            d.initial.len() + d.covered_by_gaps() + d.terminal.len();
        assert_eq!(total, c.len() as u64);
    }

    #[test]
    fn special_intervals_for_structured_coloring() {
        // G solitary, neighbors all R, B doubled once: RGR RGR BB R
        let c = Coloring::parse("RGRRGRBBR").unwrap();
        let d = decompose(&c, Color::G);
        let s = d.special.expect("structured coloring");
        assert_eq!(s.neighbor_color, Color::R);
        assert_eq!(s.third_color, Color::B);
        assert_eq!(s.i0, Interval::new(1, 1));
        assert_eq!(s.i1, Interval::new(1, 5)); // ends at the last G before BB
        assert_eq!(s.i2, Interval::new(6, 8)); // up to and including BB
        assert_eq!(s.i2_prime, Interval::new(6, 9));
        assert_eq!(s.i3, Interval::new(9, 9));
        assert_eq!(s.i_terminal, Interval::new(8, 9));
    }

    #[test]
    fn special_absent_without_double() {
        // Three colors but no BB anywhere.
        let c = Coloring::parse("RGRBRGR").unwrap();
        assert!(decompose(&c, Color::G).special.is_none());
    }
}
