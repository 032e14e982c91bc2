//! Green sequences: validation, bounded search and the source-order
//! construction for acyclic quivers.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::ExchangeMatrix;
use crate::seed::{VertexColor, YSeed};

/// An ordered list of mutation vertices (0-based), i.e. a walk from the root
/// of the n-regular tree. Displays and parses as 1-based comma-separated
/// indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MutationSequence(Vec<usize>);

impl MutationSequence {
    pub fn new(steps: Vec<usize>) -> Self {
        MutationSequence(steps)
    }

    /// From 1-based indices.
    pub fn from_one_based(steps: &[usize]) -> Self {
        MutationSequence(steps.iter().map(|&k| k - 1).collect())
    }

    pub fn steps(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, k: usize) {
        self.0.push(k);
    }

    pub fn check_range(&self, n: usize) -> Result<()> {
        match self.0.iter().find(|&&k| k >= n) {
            Some(&vertex) => Err(Error::VertexOutOfRange { vertex, n }),
            None => Ok(()),
        }
    }

    /// Length first, then lexicographic.
    pub fn shortlex_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for MutationSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|k| (k + 1).to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for MutationSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(MutationSequence::default());
        }
        let mut steps = Vec::new();
        let mut column = 1;
        for part in s.split(',') {
            let k: usize = part.trim().parse().map_err(|_| Error::Parse {
                line: 1,
                column,
                message: format!("expected a vertex index, found `{}`", part.trim()),
            })?;
            if k == 0 {
                return Err(Error::Parse {
                    line: 1,
                    column,
                    message: "vertex indices are 1-based".into(),
                });
            }
            steps.push(k - 1);
            column += part.len() + 1;
        }
        Ok(MutationSequence(steps))
    }
}

/// Fold seed mutation over `seq` starting from the initial seed of `b0`.
/// With `require_green`, fails at the first step whose vertex is red.
pub fn apply_sequence(
    b0: &ExchangeMatrix,
    seq: &MutationSequence,
    require_green: bool,
) -> Result<YSeed> {
    seq.check_range(b0.n())?;
    let mut seed = YSeed::initial(b0);
    for (step, &k) in seq.steps().iter().enumerate() {
        if require_green && seed.color(k)? != VertexColor::Green {
            return Err(Error::NotGreenAtStep { step: step + 1, vertex: k });
        }
        seed = seed.mutate(k)?;
    }
    Ok(seed)
}

/// `Ok(())` if `seq` is a maximal green sequence for `b0`, otherwise the
/// reason it is not.
pub fn check_maximal_green(b0: &ExchangeMatrix, seq: &MutationSequence) -> Result<(), String> {
    let seed = apply_sequence(b0, seq, true).map_err(|e| e.to_string())?;
    let colors = seed.colors().map_err(|e| e.to_string())?;
    match colors.iter().position(|&c| c == VertexColor::Green) {
        Some(k) => Err(format!("vertex {} is still green at the end", k + 1)),
        None => Ok(()),
    }
}

pub fn is_maximal_green(b0: &ExchangeMatrix, seq: &MutationSequence) -> bool {
    check_maximal_green(b0, seq).is_ok()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchMode {
    All,
    First,
}

impl FromStr for SearchMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "all" => Ok(SearchMode::All),
            "first" => Ok(SearchMode::First),
            other => Err(format!("unknown mode `{other}` (expected all|first)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    /// Maximal green sequences found, ordered by length then lexicographically.
    pub found: Vec<MutationSequence>,
    /// True iff no branch was cut by the depth bound or aborted by an error.
    pub exhausted: bool,
    /// Number of seeds visited, the root included.
    pub nodes: u64,
    /// Branches aborted by an arithmetic or invariant error.
    pub aborted: Vec<(MutationSequence, Error)>,
    /// False when the initial matrix is not skew-symmetric, where sign
    /// coherence is only conjectural.
    pub coherence_proven: bool,
}

#[derive(Default)]
struct Dfs {
    found: Vec<MutationSequence>,
    cut: bool,
    nodes: u64,
    aborted: Vec<(MutationSequence, Error)>,
}

impl Dfs {
    fn visit(&mut self, seed: &YSeed, depth: usize, max_len: usize, first_only: bool) {
        self.nodes += 1;
        let greens = match seed.green_vertices() {
            Ok(g) => g,
            Err(e) => {
                self.aborted.push((seed.path().clone(), e));
                return;
            }
        };
        if greens.is_empty() {
            self.found.push(seed.path().clone());
            return;
        }
        if depth == max_len {
            self.cut = true;
            return;
        }
        for k in greens {
            if first_only && !self.found.is_empty() {
                return;
            }
            match seed.mutate(k) {
                Ok(child) => self.visit(&child, depth + 1, max_len, first_only),
                Err(e) => {
                    let mut path = seed.path().clone();
                    path.push(k);
                    self.aborted.push((path, e));
                }
            }
        }
    }

    fn merge(mut self, other: Dfs) -> Dfs {
        self.found.extend(other.found);
        self.cut |= other.cut;
        self.nodes += other.nodes;
        self.aborted.extend(other.aborted);
        self
    }
}

/// Depth-first search over green mutations up to `max_len` steps.
///
/// Children are explored in ascending vertex order. In `All` mode the
/// branches below the root run in parallel and are merged in order; in
/// `First` mode the search is sequential and stops at the first hit.
pub fn search_mgs(b0: &ExchangeMatrix, max_len: usize, mode: SearchMode) -> Result<SearchOutcome> {
    if max_len == 0 {
        return Err(Error::PreconditionFailed("max_len must be at least 1".into()));
    }
    let root = YSeed::initial(b0);
    let dfs = match mode {
        SearchMode::First => {
            let mut dfs = Dfs::default();
            dfs.visit(&root, 0, max_len, true);
            dfs
        }
        SearchMode::All => {
            // the initial seed is all green, so the root always has n children
            let children: Vec<usize> = (0..b0.n()).collect();
            let mut root_dfs = Dfs { nodes: 1, ..Dfs::default() };
            let branches: Vec<Dfs> = children
                .par_iter()
                .map(|&k| {
                    let mut dfs = Dfs::default();
                    match root.mutate(k) {
                        Ok(child) => dfs.visit(&child, 1, max_len, false),
                        Err(e) => dfs.aborted.push((MutationSequence::new(vec![k]), e)),
                    }
                    dfs
                })
                .collect();
            for b in branches {
                root_dfs = root_dfs.merge(b);
            }
            root_dfs
        }
    };
    let mut found = dfs.found;
    found.sort_by(MutationSequence::shortlex_cmp);
    Ok(SearchOutcome {
        found,
        exhausted: !dfs.cut && dfs.aborted.is_empty(),
        nodes: dfs.nodes,
        aborted: dfs.aborted,
        coherence_proven: b0.is_skew_symmetric(),
    })
}

/// Vertices in the order of repeatedly removing the smallest source
/// (no incoming arrow `w → v`, i.e. `B[v][w] ≤ 0`, from a remaining `w`).
/// `None` if the quiver has an oriented cycle.
pub(crate) fn source_order(b: &ExchangeMatrix) -> Option<Vec<usize>> {
    let n = b.n();
    let mut remaining = vec![true; n];
    let mut order = Vec::with_capacity(n);
    while order.len() < n {
        let v = (0..n).find(|&v| remaining[v] && (0..n).all(|w| !remaining[w] || b.get(v, w) <= 0))?;
        remaining[v] = false;
        order.push(v);
    }
    Some(order)
}

/// For an acyclic quiver, the length-n maximal green sequence that mutates
/// at a current source each time (smallest index first).
pub fn acyclic_source_sequence(b0: &ExchangeMatrix) -> Option<MutationSequence> {
    source_order(b0).map(MutationSequence)
}
