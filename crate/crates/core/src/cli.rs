//! The `qmgs` command-line front end.
//!
//! Exit codes: 0 success (found / Certified), 1 negative result (no maximal
//! green sequence / ViolationFound / failed self-check), 2 inconclusive or a
//! limit was hit, 3 input error.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::canon::{are_isomorphic, canonical_form};
use crate::catalog::{catalog, get_quiver};
use crate::class::enumerate_mutation_class;
use crate::error::Error;
use crate::format::{parse_matrix, serialize_matrix};
use crate::green::{acyclic_source_sequence, check_maximal_green, search_mgs, MutationSequence, SearchMode};
use crate::matrix::{find_symmetrizer, ExchangeMatrix, Sign};
use crate::obstruction::{
    certify_no_mgs, find_positive_radical, radical_basis, sign_independent_at, CoordState, Outcome,
    DEFAULT_MAX_STATES,
};
use crate::seed::YSeed;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

/// Environment variable overriding the certifier's default state bound.
pub const MAX_STATES_ENV: &str = "QMGS_MAX_STATES";

#[derive(Debug, Parser)]
#[command(name = "qmgs", about = "Quiver mutation and maximal green sequences")]
struct Cli {
    /// Worker threads for parallel searches (output does not depend on it)
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Read the exchange matrix from a file in matrix text format
    #[arg(short = 'f', long = "file")]
    file: Option<PathBuf>,

    /// Use a built-in quiver (see `qmgs list`)
    #[arg(short = 'q', long = "quiver")]
    quiver: Option<String>,
}

impl Input {
    fn load(&self) -> Result<ExchangeMatrix, String> {
        match (&self.file, &self.quiver) {
            (Some(path), _) => {
                let text = std::fs::read_to_string(path)
                    .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
                parse_matrix(&text).map_err(|e| format!("{}: {e}", path.display()))
            }
            (None, Some(name)) => get_quiver(name).map_err(|e| e.to_string()),
            (None, None) => Err("no input matrix given".into()),
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Apply a mutation sequence and print the seed trace
    Mutate {
        #[command(flatten)]
        input: Input,
        /// Comma-separated 1-based vertices
        #[arg(short = 's', long = "sequence", allow_hyphen_values = true)]
        sequence: String,
    },
    /// Search for maximal green sequences up to a length bound
    Search {
        #[command(flatten)]
        input: Input,
        /// Length bound (default 2n)
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long, default_value = "all")]
        mode: SearchMode,
    },
    /// Certify that the mutation class has no maximal green sequence
    Certify {
        #[command(flatten)]
        input: Input,
        /// Positive radical vector, comma-separated (default: from the kernel)
        #[arg(long, allow_hyphen_values = true)]
        vector: Option<String>,
        #[arg(long)]
        max_states: Option<usize>,
    },
    /// Enumerate the mutation class up to isomorphism
    Class {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 1000)]
        max_size: usize,
    },
    /// List the built-in quivers
    List,
    /// Run the invariant self-checks on a matrix
    Check {
        #[command(flatten)]
        input: Input,
    },
}

impl clap::ValueEnum for SearchMode {
    fn value_variants<'a>() -> &'a [Self] {
        &[SearchMode::All, SearchMode::First]
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(clap::builder::PossibleValue::new(match self {
            SearchMode::All => "all",
            SearchMode::First => "first",
        }))
    }
}

/// Outcome of a subcommand before it is mapped to an exit code.
enum Failure {
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

/// Run the tool on `args` (the program name first), writing data to `out`
/// and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let rendered = e.render().to_string();
                    let first = rendered.lines().next().unwrap_or("invalid arguments");
                    let _ = writeln!(err, "{first}");
                    EXIT_INPUT
                }
            };
        }
    };

    let result = match cli.threads {
        Some(0) => Err(Failure::Input("--threads must be at least 1".into())),
        Some(threads) => match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => {
                let (result, o, e) = pool.install(|| {
                    let (mut o, mut e) = (Vec::new(), Vec::new());
                    let result = dispatch(&cli.command, &mut o, &mut e);
                    (result, o, e)
                });
                let _ = out.write_all(&o);
                let _ = err.write_all(&e);
                result
            }
            Err(e) => Err(Failure::Input(format!("cannot start thread pool: {e}"))),
        },
        None => dispatch(&cli.command, out, err),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

fn parse_vector(s: &str, n: usize) -> Result<Vec<i64>, Failure> {
    let v: Result<Vec<i64>, _> = s.split(',').map(|x| x.trim().parse::<i64>()).collect();
    let v = v.map_err(|_| Failure::Input(format!("invalid vector `{s}`")))?;
    if v.len() != n {
        return Err(Failure::Input(format!("vector has {} entries, matrix has {n} vertices", v.len())));
    }
    Ok(v)
}

fn max_states_default() -> Result<usize, Failure> {
    match std::env::var(MAX_STATES_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Input(format!("{MAX_STATES_ENV} is not a positive integer: `{v}`"))),
        Err(_) => Ok(DEFAULT_MAX_STATES),
    }
}

fn dispatch(command: &Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let w = |e: std::io::Error| Failure::Input(format!("write failed: {e}"));
    match command {
        Command::Mutate { input, sequence } => {
            let b = input.load().map_err(Failure::Input)?;
            let seq: MutationSequence = sequence.parse()?;
            seq.check_range(b.n())?;
            let mut seed = YSeed::initial(&b);
            writeln!(out, "{}", seed.trace_line(0, None)?).map_err(w)?;
            for (step, &k) in seq.steps().iter().enumerate() {
                seed = seed.mutate(k)?;
                writeln!(out, "{}", seed.trace_line(step + 1, Some(k))?).map_err(w)?;
            }
            if !seed.coherence_proven() {
                writeln!(err, "warning: sign coherence is conjectural for this matrix").map_err(w)?;
            }
            Ok(EXIT_OK)
        }
        Command::Search { input, max_len, mode } => {
            let b = input.load().map_err(Failure::Input)?;
            let max_len = max_len.unwrap_or(2 * b.n());
            let outcome = search_mgs(&b, max_len, *mode)?;
            for s in &outcome.found {
                writeln!(out, "{s}").map_err(w)?;
            }
            writeln!(out, "exhausted: {}", outcome.exhausted).map_err(w)?;
            writeln!(err, "nodes: {}", outcome.nodes).map_err(w)?;
            for (path, e) in &outcome.aborted {
                writeln!(err, "aborted branch [{path}]: {e}").map_err(w)?;
            }
            if !outcome.coherence_proven {
                writeln!(err, "warning: sign coherence is conjectural for this matrix").map_err(w)?;
            }
            Ok(if !outcome.found.is_empty() {
                EXIT_OK
            } else if outcome.exhausted {
                EXIT_NEGATIVE
            } else {
                EXIT_INCONCLUSIVE
            })
        }
        Command::Certify { input, vector, max_states } => {
            let b = input.load().map_err(Failure::Input)?;
            let max_states = match max_states {
                Some(m) => *m,
                None => max_states_default()?,
            };
            let u0 = match vector {
                Some(v) => parse_vector(v, b.n())?,
                None => {
                    let found = find_positive_radical(&b)?;
                    match found.vector() {
                        Some(u) => u.as_slice().to_vec(),
                        None => return Err(Failure::Input(found.diagnostic())),
                    }
                }
            };
            let cert = certify_no_mgs(&b, &u0, max_states)?;
            out.write_all(cert.to_text().as_bytes()).map_err(w)?;
            Ok(match cert.outcome {
                Outcome::Certified => EXIT_OK,
                Outcome::ViolationFound => EXIT_NEGATIVE,
                Outcome::Inconclusive => EXIT_INCONCLUSIVE,
            })
        }
        Command::Class { input, max_size } => {
            let b = input.load().map_err(Failure::Input)?;
            let class = enumerate_mutation_class(&b, *max_size)?;
            writeln!(out, "class_size: {}", class.len()).map_err(w)?;
            writeln!(out, "truncated: {}", class.truncated).map_err(w)?;
            for (i, m) in class.members.iter().enumerate() {
                writeln!(out, "form {}", i + 1).map_err(w)?;
                out.write_all(serialize_matrix(m).as_bytes()).map_err(w)?;
            }
            Ok(if class.truncated { EXIT_INCONCLUSIVE } else { EXIT_OK })
        }
        Command::List => {
            for q in catalog() {
                writeln!(out, "{} {} {}", q.name, q.matrix.n(), q.notes).map_err(w)?;
            }
            Ok(EXIT_OK)
        }
        Command::Check { input } => {
            let b = input.load().map_err(Failure::Input)?;
            let mut failed = false;
            for (name, result) in self_check(&b) {
                match result {
                    Ok(()) => writeln!(out, "ok {name}").map_err(w)?,
                    Err(reason) => {
                        failed = true;
                        writeln!(out, "FAIL {name}: {reason}").map_err(w)?
                    }
                }
            }
            Ok(if failed { EXIT_NEGATIVE } else { EXIT_OK })
        }
    }
}

type Check = (&'static str, Result<(), String>);

fn check_all(it: impl IntoIterator<Item = Result<(), String>>) -> Result<(), String> {
    it.into_iter().collect()
}

/// The invariant checks run by `qmgs check`.
pub fn self_check(b: &ExchangeMatrix) -> Vec<Check> {
    let n = b.n();
    let e = |x: Error| x.to_string();
    let mut checks: Vec<Check> = Vec::new();

    checks.push((
        "symmetrizer",
        find_symmetrizer(&b.rows()).map_err(e).and_then(|d| {
            if d == *b.symmetrizer() && d.symmetrizes(b) {
                Ok(())
            } else {
                Err("recomputed symmetrizer differs".into())
            }
        }),
    ));
    checks.push((
        "involution",
        check_all((0..n).map(|k| {
            let twice = b.mutate(k).and_then(|m| m.mutate(k)).map_err(e)?;
            if twice == *b { Ok(()) } else { Err(format!("mu_{0} mu_{0} B != B", k + 1)) }
        })),
    ));
    checks.push((
        "product-form",
        check_all((0..n).flat_map(|k| Sign::BOTH.map(|eps| (k, eps))).map(|(k, eps)| {
            let entry = b.mutate(k).map_err(e)?;
            let product = b.mutate_matrix_form(k, eps).map_err(e)?;
            if entry == product {
                Ok(())
            } else {
                Err(format!("formulas differ at vertex {} with sign {}", k + 1, eps.value()))
            }
        })),
    ));
    checks.push((
        "symmetrizer-stability",
        check_all((0..n).map(|k| {
            let m = b.mutate(k).map_err(e)?;
            if b.symmetrizer().symmetrizes(&m) {
                Ok(())
            } else {
                Err(format!("D does not symmetrize mu_{}(B)", k + 1))
            }
        })),
    ));
    checks.push((
        "seed-invariants",
        (|| {
            let s0 = YSeed::initial(b);
            s0.check_invariants().map_err(e)?;
            for start in [s0.clone(), s0.mutate(0).map_err(e)?] {
                for k in 0..n {
                    let back = start.mutate(k).and_then(|s| s.mutate(k)).map_err(e)?;
                    if back != start {
                        return Err(format!("seed mutation at {} is not involutive", k + 1));
                    }
                }
            }
            Ok(())
        })(),
    ));
    checks.push((
        "radical-vectors",
        radical_basis(b).map_err(e).and_then(|basis| {
            for v in &basis {
                if !b.is_radical(v).map_err(e)? {
                    return Err(format!("B·v != 0 for basis vector {v:?}"));
                }
                let state = CoordState { b: b.clone(), a: v.clone() };
                for k in 0..n {
                    if !sign_independent_at(b, v, k) {
                        return Err(format!("update at {} depends on the sign", k + 1));
                    }
                    state.mutate(k).map_err(e)?;
                }
            }
            Ok(())
        }),
    ));
    checks.push((
        "canonical-form",
        canonical_form(b).map_err(e).and_then(|c| {
            if canonical_form(&c).map_err(e)? != c {
                Err("canonical form is not idempotent".into())
            } else if are_isomorphic(b, &c).is_none() {
                Err("canonical form is not isomorphic to the input".into())
            } else {
                Ok(())
            }
        }),
    ));
    if let Some(seq) = acyclic_source_sequence(b) {
        checks.push(("acyclic-source-sequence", check_maximal_green(b, &seq)));
    }
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("qmgs").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn search_a2() {
        let (code, out, _) = run_str(&["search", "-q", "a2", "--max-len", "5", "--mode", "all"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out, "2,1\n1,2,1\nexhausted: true\n");
    }

    #[test]
    fn search_markov_finds_nothing() {
        let (code, out, _) = run_str(&["search", "-q", "markov", "--max-len", "4"]);
        assert_eq!(code, EXIT_INCONCLUSIVE);
        assert_eq!(out, "exhausted: false\n");
    }

    #[test]
    fn mutate_involution_trace() {
        let (code, out, _) = run_str(&["mutate", "-q", "a2", "-s", "1,1"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out, "0 - GG | 1 0 | 0 1\n1 1 RG | -1 0 | 1 1\n2 1 GG | 1 0 | 0 1\n");
    }

    #[test]
    fn certify_x7() {
        let (code, out, _) = run_str(&["certify", "-q", "x7"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.starts_with("outcome: Certified\n"));
        assert!(out.contains("class_size: 2\n"));
    }

    #[test]
    fn certify_without_positive_radical_is_input_error() {
        let (code, _, err) = run_str(&["certify", "-q", "a2"]);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("trivial kernel"));
        let (code, _, _) = run_str(&["certify", "-q", "x7", "--vector", "1,1,1,1,1,1,1"]);
        assert_eq!(code, EXIT_INPUT);
    }

    #[test]
    fn certify_limit_is_inconclusive() {
        let (code, out, _) = run_str(&["certify", "-q", "x7", "--max-states", "1"]);
        assert_eq!(code, EXIT_INCONCLUSIVE);
        assert!(out.starts_with("outcome: Inconclusive\n"));
    }

    #[test]
    fn class_and_list() {
        let (code, out, _) = run_str(&["class", "-q", "x7", "--max-size", "10"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.starts_with("class_size: 2\ntruncated: false\n"));
        let (code, out, _) = run_str(&["list"]);
        assert_eq!(code, EXIT_OK);
        assert_eq!(out.lines().count(), 8);
    }

    #[test]
    fn check_catalog() {
        for name in crate::catalog::names() {
            let (code, out, _) = run_str(&["check", "-q", name]);
            assert_eq!(code, EXIT_OK, "{name}: {out}");
            assert!(!out.contains("FAIL"));
        }
    }

    #[test]
    fn input_errors() {
        assert_eq!(run_str(&["search", "-q", "nope"]).0, EXIT_INPUT);
        assert_eq!(run_str(&["search"]).0, EXIT_INPUT);
        assert_eq!(run_str(&["search", "-q", "a2", "-f", "x.txt"]).0, EXIT_INPUT);
        assert_eq!(run_str(&["mutate", "-q", "a2", "-s", "3"]).0, EXIT_INPUT);
        assert_eq!(run_str(&["frobnicate"]).0, EXIT_INPUT);
        assert_eq!(run_str(&["search", "-q", "a2", "--mode", "some"]).0, EXIT_INPUT);
        assert_eq!(run_str(&["--threads", "0", "list"]).0, EXIT_INPUT);
    }

    #[test]
    fn threads_do_not_change_output() {
        let one = run_str(&["--threads", "1", "search", "-q", "a3", "--max-len", "6"]);
        let four = run_str(&["--threads", "4", "search", "-q", "a3", "--max-len", "6"]);
        assert_eq!(one, four);
    }
}
