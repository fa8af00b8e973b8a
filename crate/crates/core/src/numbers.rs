//! Classical and two-player pebbling numbers by exhaustive sweep.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::certificate::{infinity_certificate, InfinityCertificate};
use crate::config::{enumerate_configurations, Configuration, MAX_PEBBLES};
use crate::error::{Error, Result};
use crate::game::Player;
use crate::graph::{Graph, Vertex};
use crate::solver::{Memo, Solver};

const CHUNK: usize = 1 << 15;

/// First item (in iteration order) satisfying `pred`, evaluated in parallel
/// over fixed-size chunks.
pub(crate) fn par_find_first<I, T, F>(items: I, pred: F) -> Option<T>
where
    I: Iterator<Item = T>,
    T: Send + Sync,
    F: Fn(&T) -> bool + Sync,
{
    let mut items = items.peekable();
    while items.peek().is_some() {
        let chunk: Vec<T> = items.by_ref().take(CHUNK).collect();
        if let Some(i) = chunk.par_iter().position_first(&pred) {
            return chunk.into_iter().nth(i);
        }
    }
    None
}

/// Configurations of `size` pebbles with the root empty.
fn rootless_configurations(n: usize, root: Vertex, size: u32) -> impl Iterator<Item = Configuration> {
    let others = n - 1;
    let first: Box<dyn Iterator<Item = Configuration>> = if others == 0 {
        Box::new((size == 0).then(|| Configuration::zeros(1)).into_iter())
    } else {
        Box::new(enumerate_configurations(others, size).map(move |c| {
            let mut counts = c.counts().to_vec();
            counts.insert(root, 0);
            Configuration::new(counts).unwrap()
        }))
    };
    first
}

/// Single-agent reachability of the root, memoized across queries.
pub struct ClassicalSolver<'g> {
    graph: &'g Graph,
    root: Vertex,
    memo: Memo,
}

impl<'g> ClassicalSolver<'g> {
    pub fn new(graph: &'g Graph, root: Vertex) -> Result<Self> {
        graph.check_vertex(root)?;
        if !graph.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(ClassicalSolver {
            graph,
            root,
            memo: Memo::for_order(graph.n()),
        })
    }

    pub fn is_solvable(&self, config: &Configuration) -> Result<bool> {
        config.check_for(self.graph)?;
        let mut c = config.counts().to_vec();
        Ok(self.search(&mut c))
    }

    fn search(&self, c: &mut [u8]) -> bool {
        if c[self.root] > 0 {
            return true;
        }
        if let Some(v) = self.memo.get(c) {
            return v;
        }
        let mut ok = false;
        'outer: for u in 0..c.len() {
            if c[u] < 2 {
                continue;
            }
            for &v in self.graph.neighbors(u) {
                c[u] -= 2;
                c[v] += 1;
                let w = self.search(c);
                c[u] += 2;
                c[v] -= 1;
                if w {
                    ok = true;
                    break 'outer;
                }
            }
        }
        self.memo.insert(c, ok);
        ok
    }
}

pub fn is_r_solvable(g: &Graph, config: &Configuration, r: Vertex) -> Result<bool> {
    ClassicalSolver::new(g, r)?.is_solvable(config)
}

/// Smallest `m` such that every size-`m` configuration is `r`-solvable.
/// Adding pebbles never hurts in classical pebbling, so the first all-solvable
/// size is the answer.
pub fn pi_rooted(g: &Graph, r: Vertex) -> Result<u32> {
    let solver = ClassicalSolver::new(g, r)?;
    for m in 1..=MAX_PEBBLES {
        let bad = par_find_first(rootless_configurations(g.n(), r, m), |c| {
            !solver.is_solvable(c).unwrap()
        });
        if bad.is_none() {
            return Ok(m);
        }
    }
    Err(Error::TooManyPebbles(MAX_PEBBLES as u64 + 1))
}

pub fn pi(g: &Graph) -> Result<u32> {
    g.vertices().map(|r| pi_rooted(g, r)).try_fold(0, |acc, x| Ok(acc.max(x?)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum EtaResult {
    Finite(u32),
    /// Defender still wins some configuration at the budget size.
    ExceedsBudget(u32),
    InfiniteCertified(InfinityCertificate),
}

#[derive(Clone, Copy, Debug)]
pub struct EtaOptions {
    pub budget: u32,
    /// Largest cut set tried by the certificate search; 0 disables it.
    pub max_cut: usize,
}

impl EtaOptions {
    pub fn budget(budget: u32) -> Self {
        EtaOptions { budget, max_cut: 4 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaReport {
    pub root: Vertex,
    pub result: EtaResult,
    /// Sizes at which some configuration is a Defender win.
    pub defender_sizes: Vec<u32>,
    /// Sizes below the reported value at which every configuration is a
    /// Mover win: a failure of monotonicity in the number of pebbles.
    pub violations: Vec<u32>,
    /// A Defender-win configuration of the largest such size.
    pub witness: Option<Configuration>,
}

pub fn eta_rooted_report(g: &Graph, r: Vertex, opts: EtaOptions) -> Result<EtaReport> {
    if opts.budget == 0 || opts.budget > MAX_PEBBLES {
        return Err(Error::InvalidSize(format!("budget must be in 1..={MAX_PEBBLES}")));
    }
    let solver = Solver::with_root(g, r)?;
    if opts.max_cut > 0 {
        if let Some(cert) = infinity_certificate(g, r, opts.max_cut)? {
            return Ok(EtaReport {
                root: r,
                result: EtaResult::InfiniteCertified(cert),
                defender_sizes: vec![],
                violations: vec![],
                witness: None,
            });
        }
    }
    let mut defender_sizes = Vec::new();
    let mut witness = None;
    for size in 1..=opts.budget {
        let found = par_find_first(rootless_configurations(g.n(), r, size), |c| {
            !solver.mover_wins(c.counts())
        });
        if let Some(c) = found {
            defender_sizes.push(size);
            witness = Some(c);
        }
    }
    let largest = defender_sizes.last().copied().unwrap_or(0);
    let value = largest + 1;
    let violations = (1..value)
        .filter(|s| defender_sizes.binary_search(s).is_err())
        .collect();
    let result = if value > opts.budget {
        EtaResult::ExceedsBudget(opts.budget)
    } else {
        EtaResult::Finite(value)
    };
    Ok(EtaReport {
        root: r,
        result,
        defender_sizes,
        violations,
        witness,
    })
}

pub fn eta_rooted(g: &Graph, r: Vertex, budget: u32) -> Result<EtaResult> {
    Ok(eta_rooted_report(g, r, EtaOptions::budget(budget))?.result)
}

/// Maximum over all roots. Any certified root makes the whole result
/// infinite; otherwise any root over budget makes it inconclusive.
pub fn combine_roots(reports: &[EtaReport]) -> EtaResult {
    if let Some(r) = reports
        .iter()
        .find(|r| matches!(r.result, EtaResult::InfiniteCertified(_)))
    {
        return r.result.clone();
    }
    if let Some(r) = reports
        .iter()
        .find(|r| matches!(r.result, EtaResult::ExceedsBudget(_)))
    {
        return r.result.clone();
    }
    let best = reports
        .iter()
        .filter_map(|r| match r.result {
            EtaResult::Finite(m) => Some(m),
            _ => None,
        })
        .max()
        .unwrap_or(0);
    EtaResult::Finite(best)
}

pub fn eta_report(g: &Graph, opts: EtaOptions) -> Result<Vec<EtaReport>> {
    g.vertices().map(|r| eta_rooted_report(g, r, opts)).collect()
}

pub fn eta(g: &Graph, budget: u32) -> Result<EtaResult> {
    Ok(combine_roots(&eta_report(g, EtaOptions::budget(budget))?))
}

/// Winner of `config` on `g` rooted at `r`, Mover first.
pub fn winner(g: &Graph, r: Vertex, config: &Configuration) -> Result<Player> {
    Solver::with_root(g, r)?.solve_config(config)
}
