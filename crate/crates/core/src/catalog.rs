//! Built-in quivers, shipped as matrix-text assets under `catalog/`.
//!
//! `x7` numbers the center as vertex 1 with peripheral pairs `{2,3}`,
//! `{4,5}`, `{6,7}`; each triangle `1 → p → q → 1` has a doubled `p → q`
//! arrow. `x7b`, the other member of its mutation class, is the canonical
//! form of `x7` mutated at the center.

use crate::error::{Error, Result};
use crate::format::parse_matrix;
use crate::matrix::ExchangeMatrix;

#[derive(Debug, Clone)]
pub struct NamedQuiver {
    pub name: &'static str,
    pub matrix: ExchangeMatrix,
    pub notes: &'static str,
}

const ENTRIES: &[(&str, &str, &str)] = &[
    ("x7", include_str!("../catalog/x7.txt"), "exceptional mutation-finite quiver X7"),
    ("x7b", include_str!("../catalog/x7b.txt"), "X7 mutated at its center, canonical form"),
    ("a2", include_str!("../catalog/a2.txt"), "A2, arrow 2 -> 1"),
    ("a3", include_str!("../catalog/a3.txt"), "linear A3, 3 -> 2 -> 1"),
    ("a4", include_str!("../catalog/a4.txt"), "linear A4, 4 -> 3 -> 2 -> 1"),
    ("cycle3", include_str!("../catalog/cycle3.txt"), "oriented 3-cycle"),
    ("markov", include_str!("../catalog/markov.txt"), "Markov quiver, doubled 3-cycle"),
    ("kronecker2", include_str!("../catalog/kronecker2.txt"), "Kronecker quiver"),
];

/// Names in catalog order.
pub fn names() -> impl Iterator<Item = &'static str> {
    ENTRIES.iter().map(|(name, _, _)| *name)
}

/// The raw asset text for `name`.
pub fn source(name: &str) -> Result<&'static str> {
    ENTRIES
        .iter()
        .find(|(n, _, _)| *n == name)
        .map(|(_, text, _)| *text)
        .ok_or_else(|| Error::UnknownName(name.to_string()))
}

pub fn get_quiver(name: &str) -> Result<ExchangeMatrix> {
    parse_matrix(source(name)?)
}

pub fn catalog() -> Vec<NamedQuiver> {
    ENTRIES
        .iter()
        .map(|&(name, text, notes)| NamedQuiver {
            name,
            matrix: parse_matrix(text).expect("catalog assets are valid"),
            notes,
        })
        .collect()
}
