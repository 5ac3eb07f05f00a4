//! Restricted normalized color sequences and their enumeration.
//!
//! A sequence `c_1, ..., c_L` over the colors `1..=k+1` is *restricted* when
//! no two consecutive entries are equal, and *normalized* when `c_1 = 1` and
//! every entry exceeds the running maximum of its prefix by at most one.
//! Such sequences of length `L = n - k - 1`, taken up to reversal, are in
//! bijection with the k-path graphs of order `n`.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use thiserror::Error;

/// Upper bound on the oracle's sequence length; the search space is
/// exponential in the length.
pub const ORACLE_MAX_LEN: usize = 14;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeqError {
    #[error("clique parameter k must be at least 2, got {0}")]
    InvalidK(usize),
    #[error("order n must be at least k + 1 (k = {k}, n = {n})")]
    InvalidOrder { k: usize, n: usize },
    #[error("entries {0} and {1} are equal and adjacent at position {2}")]
    AdjacentRepeat(u8, u8, usize),
    #[error("sequence uses more than k + 1 = {limit} distinct values")]
    TooManyColors { limit: usize },
    #[error("entry {value} at position {pos} breaks normalization")]
    NotNormalized { value: u8, pos: usize },
    #[error("no closed-form count is known for k = {0}")]
    NoClosedForm(usize),
    #[error("closed form for k = {k} is only validated for n >= {min_n}, got n = {n}")]
    OutOfValidatedRange { k: usize, n: usize, min_n: usize },
    #[error("oracle limited to sequences of length <= {ORACLE_MAX_LEN}, got {0}")]
    OracleTooLarge(usize),
}

/// A restricted normalized color sequence for a fixed clique parameter `k`.
///
/// The empty sequence (order `n = k + 1`, the clique `K_{k+1}`) is valid.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColorSequence {
    k: usize,
    entries: Vec<u8>,
}

impl ColorSequence {
    /// Wraps `entries` after checking all three invariants (restricted,
    /// normalized, at most `k + 1` distinct values).
    pub fn new(k: usize, entries: Vec<u8>) -> Result<Self, SeqError> {
        if k < 2 {
            return Err(SeqError::InvalidK(k));
        }
        check_restricted(&entries)?;
        let limit = k + 1;
        let mut running_max = 0u8;
        for (pos, &value) in entries.iter().enumerate() {
            if value as usize > limit {
                return Err(SeqError::TooManyColors { limit });
            }
            if value == 0 || value > running_max + 1 {
                return Err(SeqError::NotNormalized { value, pos });
            }
            running_max = running_max.max(value);
        }
        Ok(ColorSequence { k, entries })
    }

    /// Relabels `entries` by order of first appearance (first-seen value
    /// becomes 1, second 2, ...) and wraps the result. The input must already
    /// be restricted and use at most `k + 1` distinct values.
    pub fn normalize(k: usize, entries: &[u8]) -> Result<Self, SeqError> {
        if k < 2 {
            return Err(SeqError::InvalidK(k));
        }
        check_restricted(entries)?;
        let limit = k + 1;
        let mut relabel: Vec<(u8, u8)> = Vec::new();
        let mut out = Vec::with_capacity(entries.len());
        for &value in entries {
            let new = match relabel.iter().find(|&&(old, _)| old == value) {
                Some(&(_, new)) => new,
                None => {
                    if relabel.len() == limit {
                        return Err(SeqError::TooManyColors { limit });
                    }
                    let new = relabel.len() as u8 + 1;
                    relabel.push((value, new));
                    new
                }
            };
            out.push(new);
        }
        Ok(ColorSequence { k, entries: out })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Order of the k-path graph this sequence encodes: `n = len + k + 1`.
    pub fn order(&self) -> usize {
        self.entries.len() + self.k + 1
    }

    /// The normalization of the reversed sequence. This is the color sequence
    /// read along the reversed core sequence: the vertex removed at step `i`
    /// of the forward construction carries color `c_i`, so running the
    /// construction backwards colors its additions `c_L, ..., c_1`.
    pub fn reverse_canonical(&self) -> Self {
        let reversed: Vec<u8> = self.entries.iter().rev().copied().collect();
        Self::normalize(self.k, &reversed)
            .expect("reversal preserves the restricted property and color count")
    }

    /// True iff this sequence is lexicographically <= its reverse canonical
    /// form. Exactly one member of each reversal orbit is canonical, and
    /// palindromic fixed points count themselves.
    pub fn is_canonical(&self) -> bool {
        self.entries <= self.reverse_canonical().entries
    }
}

impl fmt::Display for ColorSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, value) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{value}")?;
        }
        Ok(())
    }
}

fn check_restricted(entries: &[u8]) -> Result<(), SeqError> {
    for (pos, pair) in entries.windows(2).enumerate() {
        if pair[0] == pair[1] {
            return Err(SeqError::AdjacentRepeat(pair[0], pair[1], pos));
        }
    }
    Ok(())
}

/// Streams every canonical restricted normalized sequence of length
/// `n - k - 1` over at most `k + 1` colors, in strictly increasing
/// lexicographic order. One sequence per non-isomorphic k-path graph of
/// order `n`; for `n = k + 1` the stream holds exactly the empty sequence.
pub fn enumerate(k: usize, n: usize) -> Result<SequenceIter, SeqError> {
    if k < 2 {
        return Err(SeqError::InvalidK(k));
    }
    if n < k + 1 {
        return Err(SeqError::InvalidOrder { k, n });
    }
    let len = n - k - 1;
    Ok(SequenceIter {
        k,
        pending: Some(minimal_fill(len)),
    })
}

/// Iterator over canonical sequences. Cloning reproduces the identical
/// remaining stream.
#[derive(Debug, Clone)]
pub struct SequenceIter {
    k: usize,
    /// Next raw (pre-canonical-filter) sequence to consider; `None` once the
    /// raw language is exhausted.
    pending: Option<Vec<u8>>,
}

impl Iterator for SequenceIter {
    type Item = ColorSequence;

    fn next(&mut self) -> Option<ColorSequence> {
        loop {
            let current = self.pending.take()?;
            self.pending = raw_successor(&current, self.k);
            let candidate = ColorSequence {
                k: self.k,
                entries: current,
            };
            debug_assert!(ColorSequence::new(candidate.k, candidate.entries.clone()).is_ok());
            if candidate.is_canonical() {
                return Some(candidate);
            }
        }
    }
}

/// The lexicographically smallest restricted normalized sequence of a given
/// length: `1, 2, 1, 2, ...`.
fn minimal_fill(len: usize) -> Vec<u8> {
    (0..len).map(|i| if i % 2 == 0 { 1 } else { 2 }).collect()
}

/// Successor of `s` in the lexicographic order of the raw sequence language
/// (restricted + normalized over at most `k + 1` colors), or `None` when `s`
/// is the maximum. Scans for the rightmost position that can be raised, then
/// refills the suffix minimally.
fn raw_successor(s: &[u8], k: usize) -> Option<Vec<u8>> {
    let len = s.len();
    // Position 0 is pinned to 1 by normalization.
    for i in (1..len).rev() {
        let prefix_max = s[..i].iter().copied().max().unwrap_or(0);
        let cap = (prefix_max + 1).min(k as u8 + 1);
        let prev = s[i - 1];
        let mut value = s[i] + 1;
        if value == prev {
            value += 1;
        }
        if value <= cap {
            let mut next = s[..i].to_vec();
            next.push(value);
            for j in i + 1..len {
                next.push(if next[j - 1] == 1 { 2 } else { 1 });
            }
            return Some(next);
        }
    }
    None
}

/// Exact count of non-isomorphic k-path graphs of order `n` for
/// `k in {2, 3, 4}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountResult {
    pub k: usize,
    pub n: usize,
    pub count: BigUint,
}

/// Closed-form count of non-isomorphic k-path graphs of order `n`, evaluated
/// in exact integer arithmetic. Formulas exist for `k in {2, 3, 4}` and are
/// validated for `n >= 6`, `n >= 8`, and `n >= 10` respectively; smaller `n`
/// is rejected rather than extrapolated.
pub fn count_closed_form(k: usize, n: usize) -> Result<CountResult, SeqError> {
    let min_n = match k {
        2 => 6,
        3 => 8,
        4 => 10,
        _ => return Err(SeqError::NoClosedForm(k)),
    };
    if n < min_n {
        return Err(SeqError::OutOfValidatedRange { k, n, min_n });
    }
    let big = |v: usize| BigUint::from(v);
    let pow = |base: usize, exp: usize| big(base).pow(exp as u32);
    let even = n.is_multiple_of(2);
    let count = match k {
        2 => {
            if even {
                pow(2, n - 6) + pow(2, (n - 6) / 2)
            } else {
                pow(2, n - 6) + pow(2, (n - 7) / 2)
            }
        }
        3 => {
            let numerator = if even {
                pow(3, n - 6) + big(2) * pow(3, (n - 6) / 2) + big(1)
            } else {
                pow(3, n - 6) + big(4) * pow(3, (n - 7) / 2) + big(1)
            };
            exact_div(numerator, 4)
        }
        4 => {
            let numerator = if even {
                pow(4, n - 8) + big(4) * pow(2, n - 8) + big(1)
            } else {
                pow(4, n - 8) + big(7) * pow(2, n - 9) + big(1)
            };
            exact_div(numerator, 3)
        }
        _ => unreachable!(),
    };
    Ok(CountResult { k, n, count })
}

fn exact_div(value: BigUint, divisor: usize) -> BigUint {
    let divisor = BigUint::from(divisor);
    debug_assert!((&value % &divisor) == BigUint::from(0usize));
    value / divisor
}

/// Independent oracle for [`enumerate`]: generates all restricted sequences
/// over `{1..=k+1}` of length `n - k - 1` by exhaustive recursion, then keeps
/// the normalized canonical ones. Exponential; capped at [`ORACLE_MAX_LEN`].
pub fn brute_force_enumerate(k: usize, n: usize) -> Result<BTreeSet<ColorSequence>, SeqError> {
    if k < 2 {
        return Err(SeqError::InvalidK(k));
    }
    if n < k + 1 {
        return Err(SeqError::InvalidOrder { k, n });
    }
    let len = n - k - 1;
    if len > ORACLE_MAX_LEN {
        return Err(SeqError::OracleTooLarge(len));
    }
    let mut out = BTreeSet::new();
    let mut buffer = Vec::with_capacity(len);
    recurse_all(k, len, &mut buffer, &mut out);
    Ok(out)
}

fn recurse_all(k: usize, len: usize, buffer: &mut Vec<u8>, out: &mut BTreeSet<ColorSequence>) {
    if buffer.len() == len {
        if let Ok(seq) = ColorSequence::new(k, buffer.clone()) {
            if seq.is_canonical() {
                out.insert(seq);
            }
        }
        return;
    }
    for value in 1..=(k as u8 + 1) {
        // Only the restricted property prunes; normalization and canonicity
        // are filtered at the leaves.
        if buffer.last() == Some(&value) {
            continue;
        }
        buffer.push(value);
        recurse_all(k, len, buffer, out);
        buffer.pop();
    }
}
