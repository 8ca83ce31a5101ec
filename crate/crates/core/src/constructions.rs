//! Explicit rainbow-free constructions and the window quantity `Q(n)`.
//!
//! The period-17 coloring puts `G` on multiples of 17, `R` on residues
//! `±1, ±2, ±4, ±8` and `B` on `±3, ±5, ±6, ±7`; the period-15 variant uses
//! `R` on `±1, ±2, ±4, ±7` and `B` on `±3, ±5, ±6`, with residue 0 left
//! free. Both are closed under doubling of residues, which is what makes
//! every AP(3) through an anchor repeat a color.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::coloring::{Color, Coloring};
use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::rainbow::find_rainbow_ap3;

/// A coloring of the integers that is periodic modulo `period`. A residue
/// may be left free (unconstrained); sampling requires all residues fixed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicPattern {
    name: String,
    period: u32,
    cells: Vec<Option<Color>>,
}

/// Witness that a periodic pattern admits a rainbow AP(3): the offending
/// `(first, step)` residue pair and the colored residue triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RainbowResidueWitness {
    pub first_residue: u32,
    pub step_residue: u32,
    pub residues: [u32; 3],
    pub colors: [Color; 3],
}

/// Outcome of the exhaustive residue check of a periodic pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicVerdict {
    pub rainbow_free: bool,
    pub certificate: Option<RainbowResidueWitness>,
}

impl PeriodicPattern {
    pub fn new(name: impl Into<String>, period: u32, cells: Vec<Option<Color>>) -> Result<Self> {
        let name = name.into();
        if period == 0 || cells.len() != period as usize {
            return Err(Error::Precondition(format!(
                "pattern `{name}` must assign (or free) each of its {period} residues"
            )));
        }
        Ok(PeriodicPattern { name, period, cells })
    }

    /// The period-17 pattern with residue 0 free.
    pub fn mod17() -> PeriodicPattern {
        Self::from_residue_classes("mod17", 17, &[1, 2, 4, 8], &[3, 5, 6, 7])
    }

    /// The period-15 pattern with residue 0 free.
    pub fn mod15() -> PeriodicPattern {
        Self::from_residue_classes("mod15", 15, &[1, 2, 4, 7], &[3, 5, 6])
    }

    /// Builds a symmetric pattern from the positive halves of the `R` and
    /// `B` residue classes (`r` and `-r` get the same color).
    fn from_residue_classes(name: &str, period: u32, r: &[u32], b: &[u32]) -> PeriodicPattern {
        let mut cells = vec![None; period as usize];
        for &x in r {
            cells[x as usize] = Some(Color::R);
            cells[(period - x) as usize] = Some(Color::R);
        }
        for &x in b {
            cells[x as usize] = Some(Color::B);
            cells[(period - x) as usize] = Some(Color::B);
        }
        let p = PeriodicPattern {
            name: name.into(),
            period,
            cells,
        };
        debug_assert!(p.is_symmetric());
        p
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn period(&self) -> u32 {
        self.period
    }

    /// Fixes every free residue to `color`.
    pub fn assigned(&self, color: Color) -> PeriodicPattern {
        PeriodicPattern {
            name: self.name.clone(),
            period: self.period,
            cells: self
                .cells
                .iter()
                .map(|cell| Some(cell.unwrap_or(color)))
                .collect(),
        }
    }

    pub fn color_of_residue(&self, r: u32) -> Option<Color> {
        self.cells[(r % self.period) as usize]
    }

    /// Color at an absolute integer position (requires the residue fixed).
    pub fn color_at(&self, i: i64) -> Result<Color> {
        let r = i.rem_euclid(self.period as i64) as u32;
        self.cells[r as usize].ok_or_else(|| Error::UnassignedResidue {
            residue: r,
            name: self.name.clone(),
        })
    }

    /// `color(r) == color(-r mod period)` for every residue.
    pub fn is_symmetric(&self) -> bool {
        (0..self.period).all(|r| {
            self.cells[r as usize] == self.cells[((self.period - r) % self.period) as usize]
        })
    }

    /// The coloring of `[lo, hi]` induced by the pattern.
    pub fn sample(&self, lo: i64, hi: i64) -> Result<Coloring> {
        if hi < lo {
            return Err(Error::Precondition(format!(
                "empty sampling interval [{lo}, {hi}]"
            )));
        }
        let colors: Result<Vec<Color>> = (lo..=hi).map(|i| self.color_at(i)).collect();
        Ok(Coloring::new(lo, colors?))
    }

    /// Decides whether the infinite periodic coloring contains a rainbow
    /// AP(3), exhaustively over the finite set of `(first, step)` residue
    /// pairs. Every integer AP(3) reduces to one of these pairs.
    pub fn verify_rainbow_free(&self) -> Result<PeriodicVerdict> {
        let p = self.period;
        let color = |r: u32| -> Result<Color> {
            self.cells[(r % p) as usize].ok_or_else(|| Error::UnassignedResidue {
                residue: r % p,
                name: self.name.clone(),
            })
        };
        for a in 0..p {
            for d in 0..p {
                let rs = [a % p, (a + d) % p, (a + 2 * d) % p];
                let cs = [color(rs[0])?, color(rs[1])?, color(rs[2])?];
                if cs[0] != cs[1] && cs[1] != cs[2] && cs[0] != cs[2] {
                    return Ok(PeriodicVerdict {
                        rainbow_free: false,
                        certificate: Some(RainbowResidueWitness {
                            first_residue: a,
                            step_residue: d,
                            residues: rs,
                            colors: cs,
                        }),
                    });
                }
            }
        }
        Ok(PeriodicVerdict {
            rainbow_free: true,
            certificate: None,
        })
    }

    /// Minimum over one full period of window start positions of the
    /// largest color-class size inside a length-`n` window. Periodicity
    /// makes one period of offsets exhaustive; tests assert this against a
    /// brute scan over ten periods of offsets.
    pub fn min_window_max_class(&self, n: u64) -> Result<u64> {
        if n == 0 {
            return Ok(0);
        }
        let p = self.period as i64;
        let mut best = u64::MAX;
        for t in 1..=p {
            let lo = t;
            let hi = t + n as i64 - 1;
            let mut per_color: BTreeMap<Color, u64> = BTreeMap::new();
            for r in 0..self.period {
                let c = self.cells[r as usize].ok_or_else(|| Error::UnassignedResidue {
                    residue: r,
                    name: self.name.clone(),
                })?;
                *per_color.entry(c).or_insert(0) +=
                    count_congruent(lo, hi, r as i64, p);
            }
            best = best.min(per_color.values().copied().max().unwrap_or(0));
        }
        Ok(best)
    }

    /// JSON form `{ "name": ..., "period": p, "residues": { "0": "G", ... } }`
    /// with free residues omitted from the map.
    pub fn to_json(&self) -> Result<String> {
        let mut residues = BTreeMap::new();
        for (r, cell) in self.cells.iter().enumerate() {
            if let Some(c) = cell {
                residues.insert(r.to_string(), c.token()?.to_string());
            }
        }
        Ok(serde_json::to_string(&PatternJson {
            name: Some(self.name.clone()),
            period: self.period,
            residues,
        })?)
    }

    pub fn from_json(input: &str) -> Result<PeriodicPattern> {
        let dto: PatternJson = serde_json::from_str(input)?;
        let mut cells = vec![None; dto.period as usize];
        for (key, token) in &dto.residues {
            let r: usize = key.parse().map_err(|_| Error::Parse {
                line: 1,
                col: 1,
                msg: format!("invalid residue key `{key}`"),
            })?;
            if r >= dto.period as usize {
                return Err(Error::Parse {
                    line: 1,
                    col: 1,
                    msg: format!("residue {r} outside 0..{}", dto.period),
                });
            }
            let mut chars = token.chars();
            let (ch, extra) = (chars.next(), chars.next());
            let color = match (ch, extra) {
                (Some(ch), None) => Color::from_token(ch),
                _ => None,
            }
            .ok_or_else(|| Error::Parse {
                line: 1,
                col: 1,
                msg: format!("invalid color token `{token}` for residue {r}"),
            })?;
            cells[r] = Some(color);
        }
        PeriodicPattern::new(dto.name.unwrap_or_else(|| "pattern".into()), dto.period, cells)
    }
}

#[derive(Serialize, Deserialize)]
struct PatternJson {
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    period: u32,
    residues: BTreeMap<String, String>,
}

/// Number of integers in `[lo, hi]` congruent to `r` mod `p`.
fn count_congruent(lo: i64, hi: i64, r: i64, p: i64) -> u64 {
    if hi < lo {
        return 0;
    }
    let first = lo + (r - lo).rem_euclid(p);
    if first > hi {
        0
    } else {
        ((hi - first) / p + 1) as u64
    }
}

/// The period-17 coloring of `[lo, hi]` (free residue fixed to `G`).
pub fn c0(lo: i64, hi: i64) -> Coloring {
    PeriodicPattern::mod17()
        .assigned(Color::G)
        .sample(lo, hi)
        .expect("fully assigned pattern samples any non-empty interval")
}

/// The period-15 coloring of `[lo, hi]` with residue 0 colored `zero`.
pub fn c15(lo: i64, hi: i64, zero: Color) -> Coloring {
    PeriodicPattern::mod15()
        .assigned(zero)
        .sample(lo, hi)
        .expect("fully assigned pattern samples any non-empty interval")
}

/// Colors each `i` in `[1, n]` by the exponent of the largest power of 3
/// dividing it. Uses `log_3(n) + 1` colors and has no rainbow AP(3).
pub fn ternary_valuation(n: u64) -> Coloring {
    let colors = (1..=n as i64)
        .map(|i| {
            let mut v = 0u16;
            let mut m = i;
            while m % 3 == 0 {
                v += 1;
                m /= 3;
            }
            Color(v)
        })
        .collect();
    Coloring::new(1, colors)
}

/// Size of the largest color class of `c` inside the interval `iv`.
pub fn q_of_interval(c: &Coloring, iv: Interval) -> Result<u64> {
    Ok(c.census_interval(iv)?.max_class())
}

/// The window quantity for the period-17 coloring at length `n`: both the
/// closed form `ceil(8(n-1)/17) + epsilon` and the window-scan minimum.
///
/// The closed form is valid for `n >= 2`; at `n = 1` it yields 0 while any
/// single position has a class of size 1, so `scan_value` is authoritative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QValue {
    pub n: u64,
    pub formula_value: u64,
    pub epsilon: u8,
    pub scan_value: u64,
}

impl QValue {
    pub fn consistent(&self) -> bool {
        self.formula_value == self.scan_value
    }
}

/// `epsilon` of the closed form: 1 exactly when `n` is congruent to 3 or 5
/// modulo 17.
pub fn q_epsilon(n: u64) -> u8 {
    matches!(n % 17, 3 | 5) as u8
}

/// Computes [`QValue`] for `n >= 1`, flagging formula/scan disagreement via
/// [`QValue::consistent`]. The scan minimizes over the 17 translate classes
/// of length-`n` windows using exact residue counts.
pub fn q_value(n: u64) -> QValue {
    assert!(n >= 1, "q_value requires n >= 1");
    let formula_value = 8 * (n - 1) / 17 + u64::from(8 * (n - 1) % 17 != 0) + q_epsilon(n) as u64;
    let scan_value = c0_assigned()
        .min_window_max_class(n)
        .expect("built-in pattern is fully assigned");
    QValue {
        n,
        formula_value,
        epsilon: q_epsilon(n),
        scan_value,
    }
}

fn c0_assigned() -> PeriodicPattern {
    PeriodicPattern::mod17().assigned(Color::G)
}

/// Reference scan for tests: constructs each window `[t, t+n-1]` for
/// `t = 1..=offsets` explicitly and takes the census minimum.
pub fn q_scan_literal(n: u64, offsets: u32) -> u64 {
    assert!(n >= 1 && offsets >= 1);
    (1..=offsets as i64)
        .map(|t| {
            let w = c0(t, t + n as i64 - 1);
            w.census().max_class()
        })
        .min()
        .expect("at least one offset")
}

/// A length-`n` window of the period-17 coloring whose largest color class
/// attains the window-scan minimum, re-based to start at 1. It inherits
/// rainbow-freeness from the infinite coloring, so it certifies that a
/// rainbow-free coloring of `[n]` with largest class `Q(n)` exists.
pub fn extremal_witness(n: u64) -> Coloring {
    assert!(n >= 1, "extremal_witness requires n >= 1");
    let pattern = c0_assigned();
    let scan = q_value(n).scan_value;
    for t in 1..=17i64 {
        let w = pattern
            .sample(t, t + n as i64 - 1)
            .expect("fully assigned pattern");
        if w.census().max_class() == scan {
            return Coloring::new(1, w.colors().to_vec());
        }
    }
    unreachable!("some window attains the scan minimum");
}

/// Whether `c` is, up to color relabeling, a window of the period-17
/// coloring. Reversals are covered automatically because the pattern is
/// symmetric.
pub fn is_c0_window(c: &Coloring) -> bool {
    if c.is_empty() {
        return true;
    }
    let n = c.len() as i64;
    let canon = c.canonicalize();
    let pattern = c0_assigned();
    (1..=17i64).any(|t| {
        let w = pattern.sample(t, t + n - 1).expect("fully assigned");
        Coloring::new(c.start(), w.colors().to_vec()).canonicalize() == canon
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c0_first_period_tokens() {
        assert_eq!(
            c0(1, 17).to_token_string().unwrap(),
            "RRBRBBBRRBBBRBRRG"
        );
        assert_eq!(c0(17, 17).to_token_string().unwrap(), "G");
        assert_eq!(c0(-2, 2).to_token_string().unwrap(), "RRGRR");
    }

    #[test]
    fn c0_census_per_period() {
        let census = c0(1, 17).census();
        assert_eq!(census.count(Color::R), 8);
        assert_eq!(census.count(Color::B), 8);
        assert_eq!(census.count(Color::G), 1);
        let two = c0(1, 34).census();
        assert_eq!(
            (two.count(Color::R), two.count(Color::B), two.count(Color::G)),
            (16, 16, 2)
        );
    }

    #[test]
    fn c15_first_period_tokens() {
        assert_eq!(
            c15(0, 15, Color::G).to_token_string().unwrap(),
            "GRRBRBBRRBBRBRRG"
        );
        assert_eq!(c15(3, 3, Color::G).to_token_string().unwrap(), "B");
        let census = c15(0, 14, Color::G).census();
        assert_eq!(
            (
                census.count(Color::R),
                census.count(Color::B),
                census.count(Color::G)
            ),
            (8, 6, 1)
        );
    }

    #[test]
    fn builtin_patterns_are_symmetric() {
        assert!(PeriodicPattern::mod17().is_symmetric());
        assert!(PeriodicPattern::mod15().is_symmetric());
        assert!(PeriodicPattern::mod17().assigned(Color::G).is_symmetric());
    }

    #[test]
    fn doubling_preserves_colors() {
        let p17 = c0_assigned();
        for x in 1..17u32 {
            assert_eq!(
                p17.color_of_residue(2 * x % 17),
                p17.color_of_residue(x),
                "period 17 doubling at {x}"
            );
        }
        let p15 = PeriodicPattern::mod15().assigned(Color::G);
        for x in 0..15u32 {
            assert_eq!(
                p15.color_of_residue(2 * x % 15),
                p15.color_of_residue(x),
                "period 15 doubling at {x}"
            );
        }
        // The companion identity c(2i-1) = c(7+i) of the period-15 pattern.
        for i in 1..=7u32 {
            assert_eq!(
                p15.color_of_residue((2 * i - 1) % 15),
                p15.color_of_residue((7 + i) % 15),
                "period 15 odd identity at {i}"
            );
        }
    }

    #[test]
    fn ternary_valuation_values() {
        let c = ternary_valuation(9);
        let ids: Vec<u16> = c.colors().iter().map(|c| c.id()).collect();
        assert_eq!(ids, [0, 0, 1, 0, 0, 1, 0, 0, 2]);
        assert_eq!(c.get(1), Some(Color(0)));
        assert_eq!(find_rainbow_ap3(&ternary_valuation(27)), None);
    }

    #[test]
    fn periodic_verification() {
        let v17 = c0_assigned().verify_rainbow_free().unwrap();
        assert!(v17.rainbow_free);
        let v15 = PeriodicPattern::mod15()
            .assigned(Color::G)
            .verify_rainbow_free()
            .unwrap();
        assert!(v15.rainbow_free);

        let rgb = PeriodicPattern::new(
            "rgb",
            3,
            vec![Some(Color::R), Some(Color::G), Some(Color::B)],
        )
        .unwrap();
        let verdict = rgb.verify_rainbow_free().unwrap();
        assert!(!verdict.rainbow_free);
        let w = verdict.certificate.unwrap();
        assert_eq!((w.first_residue, w.step_residue), (0, 1));
        assert_eq!(w.residues, [0, 1, 2]);
    }

    #[test]
    fn verification_requires_assigned_residues() {
        assert!(matches!(
            PeriodicPattern::mod17().verify_rainbow_free(),
            Err(Error::UnassignedResidue { residue: 0, .. })
        ));
    }

    #[test]
    fn q_of_interval_examples() {
        let c = c0(1, 20);
        assert_eq!(q_of_interval(&c, Interval::new(1, 17)).unwrap(), 8);
        assert_eq!(q_of_interval(&c, Interval::new(5, 5)).unwrap(), 1);
        assert_eq!(q_of_interval(&c, Interval::new(14, 20)).unwrap(), 4);
        assert!(q_of_interval(&c, Interval::new(10, 25)).is_err());
    }

    #[test]
    fn q_value_examples() {
        let q17 = q_value(17);
        assert_eq!((q17.formula_value, q17.epsilon, q17.scan_value), (8, 0, 8));
        let q20 = q_value(20);
        assert_eq!((q20.formula_value, q20.epsilon, q20.scan_value), (10, 1, 10));
        let q2 = q_value(2);
        assert_eq!(q2.scan_value, 1);
        // The closed form under-reports at n = 1; the scan is authoritative.
        let q1 = q_value(1);
        assert_eq!(q1.scan_value, 1);
        assert_eq!(q1.formula_value, 0);
    }

    #[test]
    fn one_period_of_offsets_is_exhaustive() {
        for n in 1..=300u64 {
            let fast = q_value(n).scan_value;
            assert_eq!(fast, q_scan_literal(n, 170), "n = {n}");
        }
    }

    #[test]
    fn extremal_witness_is_rainbow_free_with_tight_class() {
        for n in [1u64, 2, 3, 17, 35, 100] {
            let w = extremal_witness(n);
            assert_eq!(w.len() as u64, n);
            assert_eq!(w.census().max_class(), q_value(n).scan_value);
            assert_eq!(find_rainbow_ap3(&w), None);
            assert!(is_c0_window(&w));
        }
    }

    #[test]
    fn c15_r_density() {
        // The period-15 pattern keeps R dense: 15*r >= 8(n-1) - 15.
        for n in 1..=600i64 {
            let r = c15(1, n, Color::G).census().count(Color::R) as i64;
            assert!(15 * r >= 8 * (n - 1) - 15, "n = {n}, r = {r}");
        }
    }

    #[test]
    fn pattern_json_round_trip() {
        let p = PeriodicPattern::mod15();
        let json = p.to_json().unwrap();
        assert!(json.contains("\"period\":15"));
        assert!(!json.contains("\"0\"")); // free residue omitted
        let back = PeriodicPattern::from_json(&json).unwrap();
        assert_eq!(back, p);

        let assigned = p.assigned(Color::G);
        let back2 = PeriodicPattern::from_json(&assigned.to_json().unwrap()).unwrap();
        assert_eq!(back2, assigned);
    }
}
