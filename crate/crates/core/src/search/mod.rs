//! Exact decision and optimization engines for rainbow-free colorings:
//! feasibility of class-size-bounded colorings, the extremal function
//! `f(n)`, its dual `sr(3, k)`, extremal enumeration, and an independent
//! brute-force oracle.

mod cache;
mod engine;
mod oracle;

pub use cache::{CachedF, FCache, ENGINE_VERSION};
pub use oracle::{brute_force_extremal, brute_force_f, BRUTE_FORCE_CEILING};

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::coloring::Coloring;
use crate::constructions::{extremal_witness, q_value};
use crate::error::{Error, Result};
use crate::rainbow::find_rainbow_ap3;

/// Parameters of one feasibility/enumeration run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SearchConfig {
    /// Interval length; positions 1..=n are colored.
    pub n: u64,
    /// Upper bound on every color-class size.
    pub k: u64,
    /// Cap on the number of colors (defaults to n, i.e. no cap).
    pub max_colors: Option<usize>,
    /// Node budget; exceeding it aborts without a feasibility verdict.
    pub node_limit: Option<u64>,
    /// Worker count. Budgeted runs execute sequentially regardless, so that
    /// node accounting stays exact.
    pub parallel_width: usize,
    /// Collect every solution instead of stopping at the first.
    pub enumerate_all: bool,
}

impl SearchConfig {
    pub fn new(n: u64, k: u64) -> SearchConfig {
        SearchConfig {
            n,
            k,
            max_colors: None,
            node_limit: None,
            parallel_width: 1,
            enumerate_all: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::Precondition("n must be at least 1".into()));
        }
        if self.k < 1 || self.k > self.n {
            return Err(Error::Precondition(format!(
                "k must satisfy 1 <= k <= n, got k = {}, n = {}",
                self.k, self.n
            )));
        }
        if self.max_colors == Some(0) {
            return Err(Error::Precondition("max_colors must be at least 1".into()));
        }
        Ok(())
    }
}

/// Result of a feasibility or enumeration run. Witnesses are canonical and
/// re-validated against the core predicates before being returned.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub feasible: bool,
    pub witness: Option<Coloring>,
    /// Number of solutions, present when enumerating.
    pub witness_count: Option<u64>,
    pub nodes_explored: u64,
    pub wall_time: Duration,
}

/// An enumeration result: every canonical solution in lexicographic order.
#[derive(Debug, Clone)]
pub struct Enumeration {
    pub colorings: Vec<Coloring>,
    pub outcome: SearchOutcome,
    /// False when a node budget cut the listing short.
    pub complete: bool,
}

/// Re-checks a search product with the core predicates: canonical labeling,
/// no rainbow AP(3), and no class larger than `k`.
pub fn validate_witness(c: &Coloring, k: u64) -> Result<()> {
    if c.canonicalize() != *c {
        return Err(Error::Invariant("witness is not canonical".into()));
    }
    if let Some(t) = find_rainbow_ap3(c) {
        return Err(Error::Invariant(format!(
            "witness contains a rainbow AP(3) at {t}"
        )));
    }
    let max = c.census().max_class();
    if max > k {
        return Err(Error::Invariant(format!(
            "witness has a class of size {max} > {k}"
        )));
    }
    Ok(())
}

/// Decides whether `[n]` admits a rainbow-free coloring with every class of
/// size at most `k` (plus the optional color cap). Deterministic for a fixed
/// config, including under parallel branching.
pub fn feasible(cfg: &SearchConfig) -> Result<SearchOutcome> {
    let start = Instant::now();
    let out = engine::run(cfg, cfg.enumerate_all)?;
    let witness = out.witness.as_deref().map(engine::ids_to_coloring);
    if let Some(w) = &witness {
        validate_witness(w, cfg.k)?;
    }
    Ok(SearchOutcome {
        feasible: out.feasible,
        witness,
        witness_count: cfg.enumerate_all.then_some(out.solution_count),
        nodes_explored: out.nodes,
        wall_time: start.elapsed(),
    })
}

/// Enumerates every canonical rainbow-free coloring of `[n]` with classes of
/// size at most `k`, in lexicographic order.
pub fn enumerate_bounded(cfg: &SearchConfig) -> Result<Enumeration> {
    let start = Instant::now();
    let out = engine::run(cfg, true)?;
    let colorings: Vec<Coloring> = out
        .solutions
        .iter()
        .map(|ids| engine::ids_to_coloring(ids))
        .collect();
    for c in &colorings {
        validate_witness(c, cfg.k)?;
    }
    Ok(Enumeration {
        outcome: SearchOutcome {
            feasible: out.feasible,
            witness: colorings.first().cloned(),
            witness_count: Some(out.solution_count),
            nodes_explored: out.nodes,
            wall_time: start.elapsed(),
        },
        colorings,
        complete: out.complete,
    })
}

/// Of a list of canonical colorings, keeps one representative per
/// {coloring, reversal} pair: the lexicographically smaller of the coloring
/// and its reversal's canonical form.
pub fn mirror_representatives(list: &[Coloring]) -> Vec<Coloring> {
    list.iter()
        .filter(|c| {
            let mirrored = c.reverse().canonicalize();
            c.colors() <= mirrored.colors()
        })
        .cloned()
        .collect()
}

/// Options shared by the `f`/`sr` drivers.
#[derive(Debug, Clone)]
pub struct FOptions {
    pub parallel_width: usize,
    pub node_limit: Option<u64>,
    /// Start the ascent at k = 1 instead of the proven lower bound
    /// `max(1, Q(n) - 4)`, re-deriving the bound instead of trusting it.
    pub paranoid: bool,
}

impl Default for FOptions {
    fn default() -> Self {
        FOptions {
            parallel_width: 1,
            node_limit: None,
            paranoid: false,
        }
    }
}

/// An exact f value together with its certifying coloring.
#[derive(Debug, Clone)]
pub struct FValue {
    pub n: u64,
    pub f: u64,
    pub witness: Coloring,
    /// Search nodes spent (0 when answered from cache).
    pub nodes: u64,
}

/// Result of computing `f(n)`: exact, or bracketed when the node budget ran
/// out at some `k` (every value below `lo` is proven infeasible; `hi` is the
/// constructive window bound).
#[derive(Debug, Clone)]
pub enum FOutcome {
    Exact(FValue),
    Bracketed { n: u64, lo: u64, hi: u64, nodes: u64 },
}

/// Smallest `k` such that `[n]` has a rainbow-free coloring with classes of
/// size at most `k`.
///
/// Ascends `k` from the seeded lower bound and stops no later than the
/// window bound `Q(n)`, where the explicit window coloring certifies
/// feasibility constructively, so no search is run there.
pub fn f_value(n: u64, opts: &FOptions) -> Result<FOutcome> {
    if n < 1 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let ub = q_value(n).scan_value;
    let seeded = ub.saturating_sub(4).max(1);
    let start_k = if opts.paranoid { 1 } else { seeded };
    let mut nodes = 0u64;
    for k in start_k..=ub {
        if k == ub {
            let witness = extremal_witness(n).canonicalize();
            validate_witness(&witness, k)?;
            return Ok(FOutcome::Exact(FValue {
                n,
                f: k,
                witness,
                nodes,
            }));
        }
        let cfg = SearchConfig {
            parallel_width: opts.parallel_width,
            node_limit: opts.node_limit.map(|l| l.saturating_sub(nodes)),
            ..SearchConfig::new(n, k)
        };
        match feasible(&cfg) {
            Ok(out) => {
                nodes += out.nodes_explored;
                if out.feasible {
                    if k < seeded {
                        return Err(Error::Invariant(format!(
                            "f({n}) = {k} found below the window lower bound {seeded}"
                        )));
                    }
                    let witness = out.witness.expect("feasible outcome carries a witness");
                    return Ok(FOutcome::Exact(FValue {
                        n,
                        f: k,
                        witness,
                        nodes,
                    }));
                }
            }
            Err(Error::BudgetExceeded { nodes: spent }) => {
                return Ok(FOutcome::Bracketed {
                    n,
                    lo: k,
                    hi: ub,
                    nodes: nodes + spent,
                });
            }
            Err(e) => return Err(e),
        }
    }
    unreachable!("the ascent terminates at the window bound");
}

/// `f(n)` through a cache; computed values are stored back.
pub fn f_value_cached(n: u64, opts: &FOptions, cache: &mut FCache) -> Result<FOutcome> {
    if let Some(hit) = cache.get(n) {
        return Ok(FOutcome::Exact(FValue {
            n: hit.n,
            f: hit.f,
            witness: hit.witness.clone(),
            nodes: 0,
        }));
    }
    let outcome = f_value(n, opts)?;
    if let FOutcome::Exact(v) = &outcome {
        cache.put(CachedF {
            n: v.n,
            f: v.f,
            witness: v.witness.clone(),
        })?;
    }
    Ok(outcome)
}

/// The dual quantity: the largest `n` whose `f(n)` stays within `k`,
/// certified by the first `n` that exceeds it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Sr3Outcome {
    pub k: u64,
    pub sr: u64,
    /// f at `sr` (at most k) and at `sr + 1` (exceeds k).
    pub f_at_sr: u64,
    pub f_after: u64,
    /// The concrete bounds `17k - 32 <= 8*sr <= 17k + 80`.
    pub lower_bound_ok: bool,
    pub upper_bound_ok: bool,
}

/// Largest `n` with `f(n) <= k`, scanning `n` upward. Monotonicity of the
/// computed table is asserted; a violation is a hard failure.
pub fn sr3(k: u64, opts: &FOptions, cache: &mut FCache) -> Result<Sr3Outcome> {
    if k < 1 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    // f grows without bound, so the scan must stop well before this.
    let scan_limit = (17 * k + 80) / 8 + 3;
    let mut prev_f = 0u64;
    let mut f_at_sr = 0u64;
    for n in 1..=scan_limit {
        let f = match f_value_cached(n, opts, cache)? {
            FOutcome::Exact(v) => v.f,
            // A bracketed value cannot certify the scan either way.
            FOutcome::Bracketed { nodes, .. } => return Err(Error::BudgetExceeded { nodes }),
        };
        if f < prev_f {
            return Err(Error::Invariant(format!(
                "monotonicity violated: f({}) = {} but f({}) = {}",
                n - 1,
                prev_f,
                n,
                f
            )));
        }
        if f > k {
            let sr = n - 1;
            return Ok(Sr3Outcome {
                k,
                sr,
                f_at_sr,
                f_after: f,
                lower_bound_ok: 8 * sr + 32 >= 17 * k,
                upper_bound_ok: 8 * sr <= 17 * k + 80,
            });
        }
        prev_f = f;
        f_at_sr = f;
    }
    Err(Error::Invariant(format!(
        "f(n) stayed within k = {k} beyond the theoretical scan limit {scan_limit}"
    )))
}

/// All canonical rainbow-free colorings of `[n]` with largest class exactly
/// `f(n)`. Every solution of the `k = f(n)` enumeration qualifies: a smaller
/// maximum class would contradict the minimality of `f(n)`.
#[derive(Debug, Clone)]
pub struct ExtremalSet {
    pub n: u64,
    pub f: u64,
    pub colorings: Vec<Coloring>,
    pub complete: bool,
}

pub fn enumerate_extremal(n: u64, opts: &FOptions) -> Result<ExtremalSet> {
    let f = match f_value(n, opts)? {
        FOutcome::Exact(v) => v.f,
        FOutcome::Bracketed { .. } => {
            return Err(Error::Precondition(format!(
                "f({n}) is not settled within the node budget"
            )))
        }
    };
    let cfg = SearchConfig {
        parallel_width: opts.parallel_width,
        node_limit: opts.node_limit,
        enumerate_all: true,
        ..SearchConfig::new(n, f)
    };
    let enumeration = enumerate_bounded(&cfg)?;
    debug_assert!(enumeration
        .colorings
        .iter()
        .all(|c| c.census().max_class() == f));
    Ok(ExtremalSet {
        n,
        f,
        colorings: enumeration.colorings,
        complete: enumeration.complete,
    })
}
