//! The coloring data model: colors, colorings of integer intervals, the
//! shared text/JSON formats, censuses, and the small structural predicates
//! (solitary colors, neighbor sets, pattern containment).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::interval::Interval;

/// A color identifier. Ids 0, 1, 2 carry the conventional display tokens
/// `R`, `G`, `B`; higher ids use the `0-9A-Za-z` token table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Color(pub u16);

impl Color {
    pub const R: Color = Color(0);
    pub const G: Color = Color(1);
    pub const B: Color = Color(2);

    pub fn id(self) -> u16 {
        self.0
    }

    /// Single-character token, or an error for the three ids whose table
    /// slot is shadowed by the `R`/`G`/`B` aliases.
    pub fn token(self) -> Result<char> {
        const TABLE: &[u8; 62] = b"0123456789ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz";
        match self.0 {
            0 => Ok('R'),
            1 => Ok('G'),
            2 => Ok('B'),
            // 'B', 'G', 'R' in the positional table always parse back as the
            // aliases, so these ids cannot round-trip through text.
            11 | 16 | 27 => Err(Error::Unrepresentable { id: self.0 }),
            id if (id as usize) < 62 => Ok(TABLE[id as usize] as char),
            id => Err(Error::Unrepresentable { id }),
        }
    }

    /// Inverse of [`Color::token`]. `R`, `G`, `B` are aliases for 0, 1, 2.
    pub fn from_token(ch: char) -> Option<Color> {
        match ch {
            'R' => Some(Color(0)),
            'G' => Some(Color(1)),
            'B' => Some(Color(2)),
            '0'..='9' => Some(Color(ch as u16 - '0' as u16)),
            'A'..='Z' => Some(Color(ch as u16 - 'A' as u16 + 10)),
            'a'..='z' => Some(Color(ch as u16 - 'a' as u16 + 36)),
            _ => None,
        }
    }
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.token() {
            Ok(ch) => write!(f, "{ch}"),
            Err(_) => write!(f, "#{}", self.0),
        }
    }
}

/// A coloring of a finite integer interval `[start, start + len - 1]`.
///
/// Every position carries exactly one color. Color ids are arbitrary;
/// [`Coloring::canonicalize`] relabels them into restricted-growth form
/// (first occurrence order) when a canonical representative is needed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Coloring {
    start: i64,
    colors: Vec<Color>,
}

impl Coloring {
    pub fn new(start: i64, colors: Vec<Color>) -> Coloring {
        Coloring { start, colors }
    }

    /// Coloring of `[1, ids.len()]` from raw ids, the common case in search.
    pub fn from_ids(ids: &[u16]) -> Coloring {
        Coloring {
            start: 1,
            colors: ids.iter().map(|&id| Color(id)).collect(),
        }
    }

    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn end(&self) -> i64 {
        self.start + self.colors.len() as i64 - 1
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn domain(&self) -> Interval {
        Interval::new(self.start, self.end())
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn color_at(&self, pos: i64) -> Result<Color> {
        self.get(pos).ok_or(Error::OutOfDomain {
            pos,
            lo: self.start,
            hi: self.end(),
        })
    }

    pub fn get(&self, pos: i64) -> Option<Color> {
        if pos < self.start {
            return None;
        }
        self.colors.get((pos - self.start) as usize).copied()
    }

    /// Iterator over `(position, color)` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (i64, Color)> + '_ {
        self.colors
            .iter()
            .enumerate()
            .map(|(i, &c)| (self.start + i as i64, c))
    }

    /// The set of distinct colors used.
    pub fn palette(&self) -> BTreeSet<Color> {
        self.colors.iter().copied().collect()
    }

    /// Per-color counts over the whole domain.
    pub fn census(&self) -> ColorCensus {
        let mut counts = BTreeMap::new();
        for &c in &self.colors {
            *counts.entry(c).or_insert(0) += 1;
        }
        ColorCensus {
            counts,
            domain_size: self.colors.len() as u64,
        }
    }

    /// Per-color counts over a subinterval of the domain.
    pub fn census_interval(&self, iv: Interval) -> Result<ColorCensus> {
        if !iv.is_empty() && !self.domain().contains_interval(iv) {
            return Err(Error::IntervalOutOfDomain {
                lo: iv.lo(),
                hi: iv.hi(),
                dom_lo: self.start,
                dom_hi: self.end(),
            });
        }
        let mut counts = BTreeMap::new();
        for pos in iv.iter() {
            let c = self.get(pos).expect("position inside verified interval");
            *counts.entry(c).or_insert(0) += 1;
        }
        Ok(ColorCensus {
            counts,
            domain_size: iv.len(),
        })
    }

    /// Per-color counts over an arbitrary subset of the domain.
    pub fn census_positions<I>(&self, positions: I) -> Result<ColorCensus>
    where
        I: IntoIterator<Item = i64>,
    {
        let mut counts = BTreeMap::new();
        let mut size = 0u64;
        for pos in positions {
            let c = self.color_at(pos)?;
            *counts.entry(c).or_insert(0) += 1;
            size += 1;
        }
        Ok(ColorCensus {
            counts,
            domain_size: size,
        })
    }

    /// True iff color `x` never occupies two consecutive positions.
    pub fn is_solitary(&self, x: Color) -> bool {
        self.colors.windows(2).all(|w| w[0] != x || w[1] != x)
    }

    /// Positions adjacent to an occurrence of `x`. Positions outside the
    /// domain contribute no neighbor relation.
    pub fn neighbor_set(&self, x: Color) -> BTreeSet<i64> {
        let mut out = BTreeSet::new();
        for (pos, c) in self.iter() {
            if c == x {
                if pos - 1 >= self.start {
                    out.insert(pos - 1);
                }
                if pos + 1 <= self.end() {
                    out.insert(pos + 1);
                }
            }
        }
        out
    }

    /// Least `x` in `iv` such that the pattern occurs at `x` entirely inside
    /// `iv`. The interval is clamped to the domain.
    pub fn contains_pattern(&self, iv: Interval, pattern: &[Color]) -> Option<i64> {
        assert!(!pattern.is_empty(), "pattern must be non-empty");
        let iv = iv.intersect(self.domain())?;
        let k = pattern.len() as i64 - 1;
        for x in iv.lo()..=iv.hi() - k {
            if pattern
                .iter()
                .enumerate()
                .all(|(i, &p)| self.get(x + i as i64) == Some(p))
            {
                return Some(x);
            }
        }
        None
    }

    /// Relabels colors by order of first occurrence (restricted-growth
    /// form). Idempotent; preserves the partition into color classes.
    pub fn canonicalize(&self) -> Coloring {
        let mut relabel: BTreeMap<Color, Color> = BTreeMap::new();
        let mut next = 0u16;
        let colors = self
            .colors
            .iter()
            .map(|&c| {
                *relabel.entry(c).or_insert_with(|| {
                    let id = next;
                    next += 1;
                    Color(id)
                })
            })
            .collect();
        Coloring {
            start: self.start,
            colors,
        }
    }

    /// Reverses the sequence of colors, keeping the same domain.
    pub fn reverse(&self) -> Coloring {
        let mut colors = self.colors.clone();
        colors.reverse();
        Coloring {
            start: self.start,
            colors,
        }
    }

    /// Recolors every occurrence of `absorb` with `keep`, merging the two
    /// color classes. Ids are left as-is (possibly no longer dense).
    pub fn merge_classes(&self, keep: Color, absorb: Color) -> Coloring {
        let colors = self
            .colors
            .iter()
            .map(|&c| if c == absorb { keep } else { c })
            .collect();
        Coloring {
            start: self.start,
            colors,
        }
    }

    /// Token string (no header). Fails if some id has no token.
    pub fn to_token_string(&self) -> Result<String> {
        self.colors.iter().map(|c| c.token()).collect()
    }

    /// The shared one-line text format: a `start=<int>` header when the
    /// interval does not begin at 1, then the token string.
    pub fn to_text(&self) -> Result<String> {
        let tokens = self.to_token_string()?;
        if self.start == 1 {
            Ok(format!("{tokens}\n"))
        } else {
            Ok(format!("start={}\n{tokens}\n", self.start))
        }
    }

    /// Parses either the text format or the JSON form
    /// `{ "start": int, "colors": [int, ...] }`, auto-detected.
    pub fn parse(input: &str) -> Result<Coloring> {
        if input.trim_start().starts_with('{') {
            return Ok(serde_json::from_str(input)?);
        }
        Self::parse_text(input)
    }

    fn parse_text(input: &str) -> Result<Coloring> {
        let mut start = 1i64;
        let mut body: Option<(usize, &str)> = None;
        for (lineno, raw) in input.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(rest) = line.strip_prefix("start=") {
                if body.is_some() {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        col: 1,
                        msg: "start= header must precede the color tokens".into(),
                    });
                }
                start = rest.trim().parse().map_err(|_| Error::Parse {
                    line: lineno + 1,
                    col: 7,
                    msg: format!("invalid start value `{rest}`"),
                })?;
            } else if body.is_none() {
                body = Some((lineno + 1, line));
            } else {
                return Err(Error::Parse {
                    line: lineno + 1,
                    col: 1,
                    msg: "unexpected extra line after the color tokens".into(),
                });
            }
        }
        let (lineno, tokens) = body.unwrap_or((1, ""));
        let mut colors = Vec::with_capacity(tokens.len());
        for (i, ch) in tokens.chars().enumerate() {
            match Color::from_token(ch) {
                Some(c) => colors.push(c),
                None => {
                    return Err(Error::Parse {
                        line: lineno,
                        col: i + 1,
                        msg: format!("illegal color token `{ch}`"),
                    })
                }
            }
        }
        Ok(Coloring { start, colors })
    }
}

/// Per-color counts over some set of positions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColorCensus {
    counts: BTreeMap<Color, u64>,
    domain_size: u64,
}

impl ColorCensus {
    pub fn count(&self, c: Color) -> u64 {
        self.counts.get(&c).copied().unwrap_or(0)
    }

    pub fn domain_size(&self) -> u64 {
        self.domain_size
    }

    pub fn counts(&self) -> &BTreeMap<Color, u64> {
        &self.counts
    }

    /// Size of the largest color class (0 for an empty domain).
    pub fn max_class(&self) -> u64 {
        self.counts.values().copied().max().unwrap_or(0)
    }

    pub fn num_colors(&self) -> usize {
        self.counts.len()
    }

    /// Union with a census over a disjoint set.
    pub fn merge(mut self, other: &ColorCensus) -> ColorCensus {
        for (&c, &n) in &other.counts {
            *self.counts.entry(c).or_insert(0) += n;
        }
        self.domain_size += other.domain_size;
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn token_round_trip() {
        for id in 0u16..62 {
            let c = Color(id);
            match c.token() {
                Ok(ch) => assert_eq!(Color::from_token(ch), Some(c)),
                Err(_) => assert!(matches!(id, 11 | 16 | 27)),
            }
        }
        assert_eq!(Color::from_token('R'), Some(Color(0)));
        assert_eq!(Color::from_token('G'), Some(Color(1)));
        assert_eq!(Color::from_token('B'), Some(Color(2)));
        assert_eq!(Color::from_token(' '), None);
    }

    #[test]
    fn parse_and_emit_text() {
        let c = Coloring::parse("RRBB\n").unwrap();
        assert_eq!(c.start(), 1);
        assert_eq!(c.colors(), &[Color(0), Color(0), Color(2), Color(2)]);
        assert_eq!(c.to_text().unwrap(), "RRBB\n");

        let shifted = Coloring::parse("start=-2\nRRGRR\n").unwrap();
        assert_eq!(shifted.start(), -2);
        assert_eq!(shifted.end(), 2);
        assert_eq!(shifted.to_text().unwrap(), "start=-2\nRRGRR\n");
    }

    #[test]
    fn parse_json_form() {
        let c = Coloring::parse(r#"{ "start": 3, "colors": [0, 1, 1, 2] }"#).unwrap();
        assert_eq!(c.start(), 3);
        assert_eq!(c.colors().len(), 4);
        let back: Coloring = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn parse_rejects_bad_tokens() {
        let err = Coloring::parse("RR?B\n").unwrap_err();
        match err {
            Error::Parse { line, col, .. } => {
                assert_eq!(line, 1);
                assert_eq!(col, 3);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn empty_coloring_is_valid() {
        let c = Coloring::parse("").unwrap();
        assert!(c.is_empty());
        assert_eq!(c.census().max_class(), 0);
    }

    #[test]
    fn census_counts_whole_domain() {
        let c = Coloring::parse("RRGGB").unwrap();
        let census = c.census();
        assert_eq!(census.count(Color::R), 2);
        assert_eq!(census.count(Color::G), 2);
        assert_eq!(census.count(Color::B), 1);
        assert_eq!(census.domain_size(), 5);
        assert_eq!(census.max_class(), 2);
    }

    #[test]
    fn census_empty_subset_is_zero() {
        let c = Coloring::parse("RRGGB").unwrap();
        let census = c.census_positions(std::iter::empty()).unwrap();
        assert_eq!(census.domain_size(), 0);
        assert_eq!(census.max_class(), 0);
    }

    #[test]
    fn census_rejects_out_of_domain() {
        let c = Coloring::parse("RGB").unwrap();
        assert!(c.census_positions([1, 4]).is_err());
        assert!(c.census_interval(Interval::new(2, 4)).is_err());
    }

    #[test]
    fn solitary_scan() {
        assert!(!Coloring::parse("RR").unwrap().is_solitary(Color::R));
        assert!(Coloring::parse("RGRBBG").unwrap().is_solitary(Color::G));
        assert!(!Coloring::parse("RGRBBG").unwrap().is_solitary(Color::B));
        // A color that never occurs is trivially solitary.
        assert!(Coloring::parse("RR").unwrap().is_solitary(Color::G));
    }

    #[test]
    fn neighbor_sets_look_inward_at_boundaries() {
        let c = Coloring::parse("RGR").unwrap();
        assert_eq!(c.neighbor_set(Color::G), BTreeSet::from([1, 3]));
        let gg = Coloring::parse("GG").unwrap();
        assert_eq!(gg.neighbor_set(Color::G), BTreeSet::from([1, 2]));
    }

    #[test]
    fn pattern_containment() {
        let c = Coloring::parse("RGRBBG").unwrap();
        let whole = c.domain();
        assert_eq!(c.contains_pattern(whole, &[Color::B, Color::B]), Some(4));
        assert_eq!(c.contains_pattern(whole, c.colors()), Some(1));
        assert_eq!(
            c.contains_pattern(whole, &[Color::G, Color::G]),
            None
        );
        // Occurrence must lie inside the queried interval.
        assert_eq!(
            c.contains_pattern(Interval::new(5, 6), &[Color::B, Color::G]),
            None
        );
    }

    #[test]
    fn canonicalize_relabels_by_first_occurrence() {
        let c = Coloring::parse("BGB").unwrap().canonicalize();
        assert_eq!(c.colors(), &[Color(0), Color(1), Color(0)]);
        let g = Coloring::parse("GRRB").unwrap().canonicalize();
        assert_eq!(g.colors(), &[Color(0), Color(1), Color(1), Color(2)]);
        assert_eq!(g.canonicalize(), g);
    }

    #[test]
    fn merge_classes_recolors() {
        let c = Coloring::parse("RGBG").unwrap();
        let m = c.merge_classes(Color::R, Color::G);
        assert_eq!(m.colors(), &[Color(0), Color(0), Color(2), Color(0)]);
    }
}
