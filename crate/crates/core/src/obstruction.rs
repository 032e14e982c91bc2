//! Radical-vector obstructions to maximal green sequences.
//!
//! Write a fixed vector `u` in the c-vector basis of a Y-seed. Under seed
//! mutation at `k` its coordinates change only at `k`:
//!
//! ```text
//! a'_k = −a_k + Σ_{i≠k} a_i·[ε·B[k][i]]₊,    ε = sgn(c_k)
//! ```
//!
//! A maximal green sequence ends in a seed whose c-vectors are all
//! nonpositive, where a strictly positive `u` must have some negative
//! coordinate. So if `u > 0` keeps nonnegative coordinates in every seed, no
//! maximal green sequence exists. When `B₀·u = 0` the update above does not
//! depend on `ε`, the coordinate vector stays in the kernel of the current
//! exchange matrix, and the pair `(B, a)` evolves on its own. Its closure is
//! finite for mutation-finite `B₀`, and exploring it proves the claim for the
//! whole mutation class at once.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::canon::{are_isomorphic, canonical_pair};
use crate::catalog::get_quiver;
use crate::error::{Error, Result};
use crate::format::{join, serialize_matrix};
use crate::green::MutationSequence;
use crate::linalg::integer_kernel;
use crate::matrix::{pos, ExchangeMatrix, Sign};

/// Default bound on distinct states explored by [`certify_no_mgs`].
pub const DEFAULT_MAX_STATES: usize = 10_000;

/// A vector `u` with `B·u = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RadicalVector(Vec<i64>);

impl RadicalVector {
    pub fn new(b: &ExchangeMatrix, u: Vec<i64>) -> Result<Self> {
        if b.is_radical(&u)? {
            Ok(RadicalVector(u))
        } else {
            Err(Error::PreconditionFailed(format!("B·u ≠ 0 for u = ({})", join(&u))))
        }
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<i64> {
        self.0
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|&x| x > 0)
    }
}

/// Primitive integer basis of `ker B`.
pub fn radical_basis(b: &ExchangeMatrix) -> Result<Vec<Vec<i64>>> {
    integer_kernel(b.n(), b.n(), b.entries())
}

/// Result of looking for a strictly positive radical vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PositiveRadical {
    Found(RadicalVector),
    /// The kernel is zero.
    TrivialKernel,
    /// The kernel is a line that contains no strictly positive vector.
    NotPositive(Vec<i64>),
    /// Kernel of the given dimension ≥ 2; a vector must be supplied.
    MultiDimensional(usize),
}

impl PositiveRadical {
    pub fn vector(&self) -> Option<&RadicalVector> {
        match self {
            PositiveRadical::Found(u) => Some(u),
            _ => None,
        }
    }

    pub fn diagnostic(&self) -> String {
        match self {
            PositiveRadical::Found(u) => format!("positive radical vector ({})", join(&u.0)),
            PositiveRadical::TrivialKernel => "B has trivial kernel; no radical vector".into(),
            PositiveRadical::NotPositive(v) => {
                format!("kernel is spanned by ({}), which has no strictly positive multiple", join(v))
            }
            PositiveRadical::MultiDimensional(d) => format!(
                "kernel has dimension {d}; supply a positive radical vector explicitly"
            ),
        }
    }
}

pub fn find_positive_radical(b: &ExchangeMatrix) -> Result<PositiveRadical> {
    let basis = radical_basis(b)?;
    Ok(match basis.as_slice() {
        [] => PositiveRadical::TrivialKernel,
        [v] => {
            if v.iter().all(|&x| x > 0) {
                PositiveRadical::Found(RadicalVector(v.clone()))
            } else if v.iter().all(|&x| x < 0) {
                PositiveRadical::Found(RadicalVector(v.iter().map(|&x| -x).collect()))
            } else {
                PositiveRadical::NotPositive(v.clone())
            }
        }
        many => PositiveRadical::MultiDimensional(many.len()),
    })
}

/// Coordinates of a fixed vector in the c-basis after mutation at `k`, with
/// `eps` standing in for `sgn(c_k)`.
pub fn update_coordinates(b: &ExchangeMatrix, a: &[i64], k: usize, eps: Sign) -> Result<Vec<i64>> {
    b.check_vertex(k)?;
    if a.len() != b.n() {
        return Err(Error::DimensionMismatch { expected: b.n(), got: a.len() });
    }
    let e = eps.value();
    let sum = (0..b.n())
        .filter(|&i| i != k)
        .try_fold(0i64, |acc, i| pos(e * b.get(k, i)).checked_mul(a[i])?.checked_add(acc))
        .ok_or(Error::Overflow { context: "coordinate update" })?;
    let mut out = a.to_vec();
    out[k] = sum.checked_sub(a[k]).ok_or(Error::Overflow { context: "coordinate update" })?;
    Ok(out)
}

/// `Σ_{i≠k} a_i·[B[k][i]]₊ = Σ_{i≠k} a_i·[−B[k][i]]₊`, i.e. the coordinate
/// update at `k` is the same for both signs. Holds whenever `B·a = 0`.
pub fn sign_independent_at(b: &ExchangeMatrix, a: &[i64], k: usize) -> bool {
    let side = |e: i64| -> i128 {
        (0..b.n())
            .filter(|&i| i != k)
            .map(|i| pos(e * b.get(k, i)) as i128 * a[i] as i128)
            .sum()
    };
    side(1) == side(-1)
}

/// A node of the certifier's state space: an exchange matrix with the
/// coordinates of the fixed radical vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoordState {
    pub b: ExchangeMatrix,
    pub a: Vec<i64>,
}

impl CoordState {
    /// The state after mutation at `k`. Fails if the two signs disagree or the
    /// new coordinates leave the kernel.
    pub fn mutate(&self, k: usize) -> Result<CoordState> {
        let plus = update_coordinates(&self.b, &self.a, k, Sign::Plus)?;
        let minus = update_coordinates(&self.b, &self.a, k, Sign::Minus)?;
        if plus != minus {
            return Err(Error::InvariantViolated(format!(
                "coordinate update at vertex {} depends on the sign: ({}) vs ({})",
                k + 1,
                join(&plus),
                join(&minus)
            )));
        }
        let b = self.b.mutate(k)?;
        if !b.is_radical(&plus)? {
            return Err(Error::InvariantViolated(format!(
                "coordinates ({}) are not radical after mutation at vertex {}",
                join(&plus),
                k + 1
            )));
        }
        Ok(CoordState { b, a: plus })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Certified,
    ViolationFound,
    Inconclusive,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Outcome::Certified => "Certified",
            Outcome::ViolationFound => "ViolationFound",
            Outcome::Inconclusive => "Inconclusive",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    /// Mutation path from the initial seed.
    pub path: MutationSequence,
    /// The state reached, in the labeling of the initial matrix.
    pub state: CoordState,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub outcome: Outcome,
    pub states_explored: usize,
    pub class_size: usize,
    pub witness: Option<Witness>,
    pub max_states: usize,
    /// Why the run was inconclusive.
    pub cause: Option<String>,
    /// False when the initial matrix is not skew-symmetric; the result then
    /// relies on conjectural sign coherence.
    pub coherence_proven: bool,
    /// Distinct states in canonical labeling, breadth-first order.
    pub states: Vec<CoordState>,
}

impl Certificate {
    /// Canonical exchange matrices with the coordinate vectors seen on each.
    pub fn orbits(&self) -> Vec<(&ExchangeMatrix, Vec<&[i64]>)> {
        let mut out: Vec<(&ExchangeMatrix, Vec<&[i64]>)> = Vec::new();
        for s in &self.states {
            match out.iter_mut().find(|(b, _)| **b == s.b) {
                Some((_, coords)) => coords.push(&s.a),
                None => out.push((&s.b, vec![&s.a])),
            }
        }
        out
    }

    /// Text serialization. Sections are emitted in breadth-first order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "outcome: {}", self.outcome);
        let _ = writeln!(out, "states_explored: {}", self.states_explored);
        let _ = writeln!(out, "class_size: {}", self.class_size);
        let _ = writeln!(out, "max_states: {}", self.max_states);
        if !self.coherence_proven {
            out.push_str(
                "warning: exchange matrix is not skew-symmetric; sign coherence is assumed, not proven\n",
            );
        }
        if let Some(cause) = &self.cause {
            let _ = writeln!(out, "cause: {cause}");
        }
        if let Some(w) = &self.witness {
            let _ = writeln!(out, "witness: {}", w.path);
            let _ = writeln!(out, "witness_coordinates: {}", join(&w.state.a));
        }
        for (i, (b, coords)) in self.orbits().into_iter().enumerate() {
            let _ = writeln!(out, "form {}", i + 1);
            out.push_str(&serialize_matrix(b));
            out.push_str("coordinates:\n");
            for a in coords {
                out.push_str(&join(a));
                out.push('\n');
            }
        }
        out
    }
}

/// Explore the closure of `(B₀, u₀)` under all mutations.
///
/// States are deduplicated by joint canonical form of `(B, a)`. The run is
/// `ViolationFound` as soon as a breadth-first level produces a negative
/// coordinate (the witness is the lexicographically smallest such path on
/// that level), `Inconclusive` if more than `max_states` distinct states
/// appear or arithmetic overflows, and `Certified` when the closure is
/// complete with all coordinates nonnegative.
pub fn certify_no_mgs(b0: &ExchangeMatrix, u0: &[i64], max_states: usize) -> Result<Certificate> {
    let n = b0.n();
    if u0.len() != n {
        return Err(Error::PreconditionFailed(format!(
            "vector has {} coordinates, matrix has {n} vertices",
            u0.len()
        )));
    }
    if !u0.iter().all(|&x| x > 0) {
        return Err(Error::PreconditionFailed(format!(
            "u0 = ({}) is not strictly positive",
            join(u0)
        )));
    }
    if !b0.is_radical(u0)? {
        return Err(Error::PreconditionFailed(format!("u0 = ({}) is not radical: B·u0 ≠ 0", join(u0))));
    }
    if max_states == 0 {
        return Err(Error::PreconditionFailed("max_states must be at least 1".into()));
    }

    struct Node {
        state: CoordState,
        path: MutationSequence,
    }

    let mut cert = Certificate {
        outcome: Outcome::Certified,
        states_explored: 0,
        class_size: 0,
        witness: None,
        max_states,
        cause: None,
        coherence_proven: b0.is_skew_symmetric(),
        states: Vec::new(),
    };

    let mut index: HashMap<(ExchangeMatrix, Vec<i64>), usize> = HashMap::new();
    let (cb, ca, _) = canonical_pair(b0, u0)?;
    index.insert((cb.clone(), ca.clone()), 0);
    cert.states.push(CoordState { b: cb, a: ca });
    let mut frontier =
        vec![Node { state: CoordState { b: b0.clone(), a: u0.to_vec() }, path: MutationSequence::default() }];

    let finish = |mut cert: Certificate| {
        cert.states_explored = cert.states.len();
        let mut forms: Vec<&ExchangeMatrix> = Vec::new();
        for s in &cert.states {
            if !forms.contains(&&s.b) {
                forms.push(&s.b);
            }
        }
        cert.class_size = forms.len();
        cert
    };

    while !frontier.is_empty() {
        let mut next = Vec::new();
        let mut violations: Vec<Witness> = Vec::new();
        let mut limit_hit = false;
        for node in &frontier {
            for k in 0..n {
                let child = match node.state.mutate(k) {
                    Ok(c) => c,
                    Err(Error::Overflow { context }) => {
                        cert.outcome = Outcome::Inconclusive;
                        cert.cause = Some(format!("integer overflow in {context} at path {}", {
                            let mut p = node.path.clone();
                            p.push(k);
                            p
                        }));
                        return Ok(finish(cert));
                    }
                    Err(e) => return Err(e),
                };
                let mut path = node.path.clone();
                path.push(k);
                if child.a.iter().any(|&x| x < 0) {
                    violations.push(Witness { path: path.clone(), state: child.clone() });
                }
                let (cb, ca, _) = canonical_pair(&child.b, &child.a)?;
                let key = (cb, ca);
                if index.contains_key(&key) || limit_hit {
                    continue;
                }
                if cert.states.len() == max_states {
                    limit_hit = true;
                    continue;
                }
                index.insert(key.clone(), cert.states.len());
                cert.states.push(CoordState { b: key.0, a: key.1 });
                next.push(Node { state: child, path });
            }
        }
        if let Some(w) = violations.into_iter().min_by(|x, y| x.path.cmp(&y.path)) {
            cert.outcome = Outcome::ViolationFound;
            cert.witness = Some(w);
            return Ok(finish(cert));
        }
        if limit_hit {
            cert.outcome = Outcome::Inconclusive;
            cert.cause = Some(format!("more than {max_states} distinct states"));
            return Ok(finish(cert));
        }
        frontier = next;
    }
    Ok(finish(cert))
}

/// Whether `state` has the coordinate shape expected on the X7 class: on a
/// matrix isomorphic to `x7`, `2` at the center and `1` elsewhere; on a matrix
/// isomorphic to `x7b`, all ones.
pub fn x7_form_check(state: &CoordState) -> Result<bool> {
    if state.b.n() != 7 || state.a.len() != 7 {
        return Err(Error::NotInClass);
    }
    let x7 = get_quiver("x7")?;
    if let Some(sigma) = are_isomorphic(&x7, &state.b) {
        let center = sigma.apply(0);
        return Ok(state.a.iter().enumerate().all(|(i, &x)| x == if i == center { 2 } else { 1 }));
    }
    let x7b = get_quiver("x7b")?;
    if are_isomorphic(&x7b, &state.b).is_some() {
        return Ok(state.a.iter().all(|&x| x == 1));
    }
    Err(Error::NotInClass)
}
