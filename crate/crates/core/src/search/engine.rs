//! Depth-first search over restricted-growth color assignments.
//!
//! Positions are assigned left to right; at each new position only the
//! AP(3)s ending there are rechecked, which is complete because every AP(3)
//! ends somewhere. Candidate colors are the existing classes in id order
//! followed by one fresh color, skipping classes already at the size bound,
//! so the leaves are exactly the canonical (restricted-growth) rainbow-free
//! colorings with classes of size at most `k`, visited in lexicographic
//! order.

use std::ops::ControlFlow;

use rayon::prelude::*;

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::rainbow::extension_makes_rainbow;

use super::SearchConfig;

/// Subtrees are split off at this depth when searching in parallel. The
/// split is independent of the worker count, so results are too.
const PREFIX_DEPTH: usize = 7;

pub(super) struct EngineOutput {
    pub feasible: bool,
    pub witness: Option<Vec<u16>>,
    pub solutions: Vec<Vec<u16>>,
    pub solution_count: u64,
    pub nodes: u64,
    pub complete: bool,
}

struct Dfs {
    n: usize,
    k: u64,
    max_colors: usize,
    ids: Vec<u16>,
    class_sizes: Vec<u64>,
    nodes: u64,
    node_limit: u64,
}

enum Step {
    /// Subtree fully explored.
    Exhausted,
    /// The sink asked to stop.
    Stopped,
    /// Node budget ran out.
    Budget,
}

impl Dfs {
    fn new(n: usize, k: u64, max_colors: usize, node_limit: u64) -> Dfs {
        Dfs {
            n,
            k,
            max_colors,
            ids: Vec::with_capacity(n),
            class_sizes: Vec::new(),
            nodes: 0,
            node_limit,
        }
    }

    fn seed(mut self, prefix: &[u16]) -> Dfs {
        for &id in prefix {
            if id as usize == self.class_sizes.len() {
                self.class_sizes.push(0);
            }
            self.class_sizes[id as usize] += 1;
            self.ids.push(id);
        }
        self
    }

    fn walk(&mut self, depth_limit: usize, sink: &mut impl FnMut(&[u16]) -> ControlFlow<()>) -> Step {
        if self.ids.len() == depth_limit {
            return match sink(&self.ids) {
                ControlFlow::Continue(()) => Step::Exhausted,
                ControlFlow::Break(()) => Step::Stopped,
            };
        }
        let used = self.class_sizes.len();
        let candidates = (used + 1).min(self.max_colors);
        for cid in 0..candidates as u16 {
            self.nodes += 1;
            if self.nodes > self.node_limit {
                return Step::Budget;
            }
            let fresh = cid as usize == used;
            if !fresh && self.class_sizes[cid as usize] >= self.k {
                continue;
            }
            if extension_makes_rainbow(&self.ids, cid) {
                continue;
            }
            if fresh {
                self.class_sizes.push(0);
            }
            self.class_sizes[cid as usize] += 1;
            self.ids.push(cid);

            let step = self.walk(depth_limit, sink);

            self.ids.pop();
            self.class_sizes[cid as usize] -= 1;
            if fresh {
                self.class_sizes.pop();
            }
            match step {
                Step::Exhausted => {}
                stop => return stop,
            }
        }
        Step::Exhausted
    }
}

pub(super) fn run(cfg: &SearchConfig, enumerate: bool) -> Result<EngineOutput> {
    cfg.validate()?;
    let max_colors = cfg.max_colors.unwrap_or(cfg.n as usize);

    // Pigeonhole: every class holds at most k positions.
    if (max_colors as u64).saturating_mul(cfg.k) < cfg.n {
        return Ok(EngineOutput {
            feasible: false,
            witness: None,
            solutions: Vec::new(),
            solution_count: 0,
            nodes: 0,
            complete: true,
        });
    }

    // Budgeted runs stay sequential so that node accounting is exact and the
    // budget verdict is reproducible.
    let sequential = cfg.parallel_width <= 1
        || cfg.node_limit.is_some()
        || cfg.n as usize <= PREFIX_DEPTH;
    if sequential {
        run_sequential(cfg, max_colors, enumerate)
    } else {
        run_parallel(cfg, max_colors, enumerate)
    }
}

fn run_sequential(cfg: &SearchConfig, max_colors: usize, enumerate: bool) -> Result<EngineOutput> {
    let limit = cfg.node_limit.unwrap_or(u64::MAX);
    let mut dfs = Dfs::new(cfg.n as usize, cfg.k, max_colors, limit);
    let mut solutions: Vec<Vec<u16>> = Vec::new();
    let mut count = 0u64;
    let mut witness: Option<Vec<u16>> = None;
    let n = cfg.n as usize;
    let step = dfs.walk(n, &mut |ids| {
        count += 1;
        if witness.is_none() {
            witness = Some(ids.to_vec());
        }
        if enumerate {
            solutions.push(ids.to_vec());
            ControlFlow::Continue(())
        } else {
            ControlFlow::Break(())
        }
    });
    match step {
        Step::Budget => {
            if enumerate {
                Ok(EngineOutput {
                    feasible: count > 0,
                    witness,
                    solutions,
                    solution_count: count,
                    nodes: dfs.nodes,
                    complete: false,
                })
            } else {
                Err(Error::BudgetExceeded { nodes: dfs.nodes })
            }
        }
        _ => Ok(EngineOutput {
            feasible: witness.is_some(),
            witness,
            solutions,
            solution_count: count,
            nodes: dfs.nodes,
            complete: true,
        }),
    }
}

struct Prefix {
    ids: Vec<u16>,
}

fn collect_prefixes(cfg: &SearchConfig, max_colors: usize) -> (Vec<Prefix>, u64) {
    let mut dfs = Dfs::new(cfg.n as usize, cfg.k, max_colors, u64::MAX);
    let mut prefixes = Vec::new();
    let step = dfs.walk(PREFIX_DEPTH, &mut |ids| {
        prefixes.push(Prefix { ids: ids.to_vec() });
        ControlFlow::Continue(())
    });
    debug_assert!(matches!(step, Step::Exhausted));
    (prefixes, dfs.nodes)
}

fn run_parallel(cfg: &SearchConfig, max_colors: usize, enumerate: bool) -> Result<EngineOutput> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.parallel_width)
        .build()
        .map_err(|e| Error::Precondition(format!("worker pool: {e}")))?;
    let (prefixes, prefix_nodes) = collect_prefixes(cfg, max_colors);
    let n = cfg.n as usize;

    if enumerate {
        // Every subtree is fully enumerated; concatenation in prefix order
        // reproduces the sequential lexicographic order.
        let per_subtree: Vec<(Vec<Vec<u16>>, u64)> = pool.install(|| {
            prefixes
                .par_iter()
                .map(|p| {
                    let mut dfs =
                        Dfs::new(n, cfg.k, max_colors, u64::MAX).seed(&p.ids);
                    let mut sols = Vec::new();
                    dfs.walk(n, &mut |ids| {
                        sols.push(ids.to_vec());
                        ControlFlow::Continue(())
                    });
                    (sols, dfs.nodes)
                })
                .collect()
        });
        let mut solutions = Vec::new();
        let mut nodes = prefix_nodes;
        for (sols, sub_nodes) in per_subtree {
            nodes += sub_nodes;
            solutions.extend(sols);
        }
        let count = solutions.len() as u64;
        Ok(EngineOutput {
            feasible: count > 0,
            witness: solutions.first().cloned(),
            solution_count: count,
            solutions,
            nodes,
            complete: true,
        })
    } else {
        // find_map_first keeps the leftmost hit, so the witness equals the
        // sequential one; only the node count depends on scheduling.
        let nodes = std::sync::atomic::AtomicU64::new(prefix_nodes);
        let witness: Option<Vec<u16>> = pool.install(|| {
            prefixes.par_iter().find_map_first(|p| {
                let mut dfs = Dfs::new(n, cfg.k, max_colors, u64::MAX).seed(&p.ids);
                let mut found = None;
                dfs.walk(n, &mut |ids| {
                    found = Some(ids.to_vec());
                    ControlFlow::Break(())
                });
                nodes.fetch_add(dfs.nodes, std::sync::atomic::Ordering::Relaxed);
                found
            })
        });
        Ok(EngineOutput {
            feasible: witness.is_some(),
            witness,
            solutions: Vec::new(),
            solution_count: 0,
            nodes: nodes.into_inner(),
            complete: true,
        })
    }
}

pub(super) fn ids_to_coloring(ids: &[u16]) -> Coloring {
    Coloring::from_ids(ids)
}
