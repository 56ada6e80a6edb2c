//! QAP instances, assignments and the objective.
//!
//! An assignment is stored as a permutation `assign` where `assign[i]` is the
//! location of facility `i`. The objective is
//!
//! ```text
//! cost(p) = sum_i sum_k flow[i][k] * dist[p(i)][p(k)]
//! ```
//!
//! over all ordered pairs, diagonal included. All arithmetic is on `i64` and
//! overflow is reported as [`Error::Overflow`].

use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};

/// Objective value of an assignment. Always non-negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct Cost(i64);

impl Cost {
    pub const ZERO: Cost = Cost(0);

    pub fn new(value: i64) -> Result<Self> {
        if value < 0 {
            return Err(Error::InvalidInstance(format!("negative cost {value}")));
        }
        Ok(Cost(value))
    }

    pub fn get(self) -> i64 {
        self.0
    }
}

impl TryFrom<i64> for Cost {
    type Error = Error;

    fn try_from(value: i64) -> Result<Self> {
        Cost::new(value)
    }
}

impl From<Cost> for i64 {
    fn from(c: Cost) -> i64 {
        c.0
    }
}

impl fmt::Display for Cost {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A bijection from facilities to locations, 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    assign: Vec<usize>,
}

impl Permutation {
    /// Validates that `assign` is a bijection on `0..assign.len()`.
    pub fn new(assign: Vec<usize>) -> Result<Self> {
        let n = assign.len();
        let mut seen = vec![false; n];
        for (facility, &loc) in assign.iter().enumerate() {
            if loc >= n {
                return Err(Error::InvalidPermutation(format!(
                    "facility {facility} mapped to location {loc}, outside 0..{n}"
                )));
            }
            if seen[loc] {
                return Err(Error::InvalidPermutation(format!(
                    "location {loc} assigned more than once"
                )));
            }
            seen[loc] = true;
        }
        Ok(Permutation { assign })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            assign: (0..n).collect(),
        }
    }

    /// Builds a permutation from 1-based location labels, as printed in reports.
    pub fn from_one_based(labels: &[usize]) -> Result<Self> {
        let assign = labels
            .iter()
            .map(|&l| {
                l.checked_sub(1).ok_or_else(|| {
                    Error::InvalidPermutation("1-based label 0 is not allowed".to_string())
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::new(assign)
    }

    /// Callers guarantee the bijection invariant.
    pub(crate) fn from_vec_unchecked(assign: Vec<usize>) -> Self {
        debug_assert!(is_bijection(&assign));
        Permutation { assign }
    }

    pub fn len(&self) -> usize {
        self.assign.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assign.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.assign
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.assign.iter().map(|&l| l + 1).collect()
    }

    /// Exchanges the locations of facilities `i` and `k`.
    pub fn swap(&mut self, i: usize, k: usize) {
        self.assign.swap(i, k);
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(assign: Vec<usize>) -> Result<Self> {
        Permutation::new(assign)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.assign
    }
}

impl fmt::Display for Permutation {
    /// Space-separated 1-based labels.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, l) in self.assign.iter().enumerate() {
            if idx > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", l + 1)?;
        }
        Ok(())
    }
}

pub(crate) fn is_bijection(assign: &[usize]) -> bool {
    let mut seen = vec![false; assign.len()];
    for &l in assign {
        if l >= assign.len() || seen[l] {
            return false;
        }
        seen[l] = true;
    }
    true
}

/// A QAP instance: `n` facilities, `n` locations, a flow and a distance matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    name: String,
    n: usize,
    flow: Vec<i64>,
    dist: Vec<i64>,
}

impl Instance {
    /// Builds an instance from row-major `n*n` matrices.
    pub fn new(name: impl Into<String>, n: usize, flow: Vec<i64>, dist: Vec<i64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidInstance("size must be at least 1".into()));
        }
        let cells = n
            .checked_mul(n)
            .ok_or_else(|| Error::InvalidInstance(format!("size {n} too large")))?;
        for (label, m) in [("flow", &flow), ("distance", &dist)] {
            if m.len() != cells {
                return Err(Error::InvalidInstance(format!(
                    "{label} matrix has {} entries, expected {cells}",
                    m.len()
                )));
            }
            if let Some(pos) = m.iter().position(|&v| v < 0) {
                return Err(Error::InvalidInstance(format!(
                    "{label} matrix entry ({}, {}) is negative",
                    pos / n + 1,
                    pos % n + 1
                )));
            }
        }
        Ok(Instance {
            name: name.into(),
            n,
            flow,
            dist,
        })
    }

    /// Builds an instance from nested rows.
    pub fn from_rows(name: impl Into<String>, flow: &[Vec<i64>], dist: &[Vec<i64>]) -> Result<Self> {
        let n = flow.len();
        if dist.len() != n {
            return Err(Error::InvalidInstance(format!(
                "flow has {n} rows but distance has {} (unequal facility and location counts are not supported)",
                dist.len()
            )));
        }
        for row in flow.iter().chain(dist) {
            if row.len() != n {
                return Err(Error::InvalidInstance(format!(
                    "row of length {} in a {n}x{n} matrix",
                    row.len()
                )));
            }
        }
        Instance::new(name, n, flow.concat(), dist.concat())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn flow(&self, i: usize, k: usize) -> i64 {
        self.flow[i * self.n + k]
    }

    #[inline]
    pub fn dist(&self, j: usize, l: usize) -> i64 {
        self.dist[j * self.n + l]
    }

    pub fn flow_matrix(&self) -> &[i64] {
        &self.flow
    }

    pub fn dist_matrix(&self) -> &[i64] {
        &self.dist
    }

    /// Reads a QAPLIB file; the instance is named after the file stem.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let name = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        Ok(parse_qaplib(&text)?.with_name(name))
    }
}

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

fn tokens(text: &str) -> impl Iterator<Item = Token<'_>> {
    text.lines().enumerate().flat_map(|(li, line)| {
        let mut rest = line;
        let mut offset = 0;
        std::iter::from_fn(move || {
            let start = rest.find(|c: char| !c.is_whitespace())?;
            let after = &rest[start..];
            let len = after.find(char::is_whitespace).unwrap_or(after.len());
            let tok = Token {
                text: &after[..len],
                line: li + 1,
                column: line[..offset + start].chars().count() + 1,
            };
            offset += start + len;
            rest = &after[len..];
            Some(tok)
        })
    })
}

/// Parses a QAPLIB `.dat` stream: `n`, then `n*n` flow entries, then `n*n`
/// distance entries, all row-major and whitespace separated.
///
/// The returned instance has an empty name.
pub fn parse_qaplib(text: &str) -> Result<Instance, ParseError> {
    let mut toks = tokens(text);
    let first = toks.next().ok_or(ParseError::Empty)?;
    let n: i64 = first.text.parse().map_err(|_| ParseError::MalformedToken {
        line: first.line,
        column: first.column,
        token: first.text.to_string(),
    })?;
    if n <= 0 {
        return Err(ParseError::InvalidSize {
            line: first.line,
            column: first.column,
            value: first.text.to_string(),
        });
    }
    let n = n as usize;
    let expected = n
        .checked_mul(n)
        .and_then(|c| c.checked_mul(2))
        .ok_or_else(|| ParseError::InvalidSize {
            line: first.line,
            column: first.column,
            value: first.text.to_string(),
        })?;

    let mut values = Vec::with_capacity(expected.min(1 << 20));
    for tok in toks.by_ref().take(expected) {
        let v: i64 = tok.text.parse().map_err(|_| ParseError::MalformedToken {
            line: tok.line,
            column: tok.column,
            token: tok.text.to_string(),
        })?;
        if v < 0 {
            return Err(ParseError::NegativeEntry {
                line: tok.line,
                column: tok.column,
                value: v,
            });
        }
        values.push(v);
    }
    if values.len() < expected {
        return Err(ParseError::TooFewEntries {
            expected,
            found: values.len(),
        });
    }
    if let Some(tok) = toks.next() {
        return Err(ParseError::TrailingGarbage {
            line: tok.line,
            column: tok.column,
            token: tok.text.to_string(),
        });
    }
    let dist = values.split_off(n * n);
    Ok(Instance {
        name: String::new(),
        n,
        flow: values,
        dist,
    })
}

/// Canonical QAPLIB writer: `n`, blank line, flow rows, blank line, distance rows.
pub fn render_qaplib(inst: &Instance) -> String {
    let n = inst.n;
    let mut out = format!("{n}\n");
    for m in [&inst.flow, &inst.dist] {
        out.push('\n');
        for row in m.chunks(n) {
            let line: Vec<String> = row.iter().map(i64::to_string).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
    }
    out
}

fn check_dims(inst: &Instance, p: &Permutation) -> Result<()> {
    if p.len() != inst.n {
        return Err(Error::DimensionMismatch {
            expected: inst.n,
            found: p.len(),
        });
    }
    Ok(())
}

/// Exact objective value of `p`.
pub fn evaluate_cost(inst: &Instance, p: &Permutation) -> Result<Cost> {
    check_dims(inst, p)?;
    let n = inst.n;
    let assign = p.as_slice();
    let mut total: i64 = 0;
    for (i, &pi) in assign.iter().enumerate() {
        let flow_row = &inst.flow[i * n..(i + 1) * n];
        let dist_row = &inst.dist[pi * n..(pi + 1) * n];
        for (&f, &pk) in flow_row.iter().zip(assign) {
            let Some(next) = f
                .checked_mul(dist_row[pk])
                .and_then(|term| total.checked_add(term))
            else {
                return Err(Error::Overflow);
            };
            total = next;
        }
    }
    Ok(Cost(total))
}

/// Cost of `p` with facilities `i` and `k` exchanged, given `current` is the
/// cost of `p`. Runs in O(n).
pub fn swap_delta(inst: &Instance, p: &Permutation, current: Cost, i: usize, k: usize) -> Result<Cost> {
    check_dims(inst, p)?;
    let n = inst.n;
    for index in [i, k] {
        if index >= n {
            return Err(Error::IndexOutOfRange { index, n });
        }
    }
    if i == k {
        return Err(Error::SameIndex(i));
    }
    let a = |x: usize, y: usize| i128::from(inst.flow[x * n + y]);
    let b = |x: usize, y: usize| i128::from(inst.dist[x * n + y]);
    let assign = p.as_slice();
    let (r, s) = (assign[i], assign[k]);

    // Pairs touching neither i nor k are unchanged.
    let mut delta: i128 = a(i, i) * (b(s, s) - b(r, r))
        + a(k, k) * (b(r, r) - b(s, s))
        + a(i, k) * (b(s, r) - b(r, s))
        + a(k, i) * (b(r, s) - b(s, r));
    for (j, &pj) in assign.iter().enumerate() {
        if j == i || j == k {
            continue;
        }
        delta += (a(i, j) - a(k, j)) * (b(s, pj) - b(r, pj))
            + (a(j, i) - a(j, k)) * (b(pj, s) - b(pj, r));
    }
    let next = i128::from(current.0) + delta;
    let next = i64::try_from(next).map_err(|_| Error::Overflow)?;
    if next < 0 {
        // Only reachable when `current` was not the cost of `p`.
        return Err(Error::InvalidInstance(format!(
            "swap produced negative cost {next}; `current` does not match the permutation"
        )));
    }
    Ok(Cost(next))
}
