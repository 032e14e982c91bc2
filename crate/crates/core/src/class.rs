//! Mutation classes up to simultaneous row/column permutation.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::canon::canonical_form;
use crate::error::{Error, Result};
use crate::matrix::ExchangeMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutationClass {
    /// Canonical forms in breadth-first discovery order.
    pub members: Vec<ExchangeMatrix>,
    /// True if the closure was cut off at `max_size`.
    pub truncated: bool,
}

impl MutationClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, b: &ExchangeMatrix) -> Result<bool> {
        let c = canonical_form(b)?;
        Ok(self.members.contains(&c))
    }
}

/// Breadth-first closure of `canonical_form(b)` under all mutations.
///
/// Each frontier is expanded in parallel; children are merged in frontier
/// order, so the result does not depend on scheduling.
pub fn enumerate_mutation_class(b: &ExchangeMatrix, max_size: usize) -> Result<MutationClass> {
    if max_size == 0 {
        return Err(Error::PreconditionFailed("max_size must be at least 1".into()));
    }
    let start = canonical_form(b)?;
    let mut seen: HashSet<ExchangeMatrix> = HashSet::from([start.clone()]);
    let mut members = vec![start.clone()];
    let mut frontier = vec![start];
    while !frontier.is_empty() {
        let children: Vec<Vec<ExchangeMatrix>> = frontier
            .par_iter()
            .map(|m| (0..m.n()).map(|k| canonical_form(&m.mutate(k)?)).collect())
            .collect::<Result<_>>()?;
        let mut next = Vec::new();
        for child in children.into_iter().flatten() {
            if seen.contains(&child) {
                continue;
            }
            if members.len() == max_size {
                return Ok(MutationClass { members, truncated: true });
            }
            seen.insert(child.clone());
            members.push(child.clone());
            next.push(child);
        }
        frontier = next;
    }
    Ok(MutationClass { members, truncated: false })
}
