use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PermError {
    #[error("values {0:?} are not a permutation of 1..{1}")]
    NotBijective(Vec<u32>, usize),
    #[error("empty permutation not allowed here")]
    Empty,
    #[error("cannot parse {0:?} as a permutation")]
    Parse(String),
    #[error("inflation arity mismatch: skeleton length {0}, {1} blocks")]
    ArityMismatch(usize, usize),
    #[error("inflation block {0} is empty")]
    EmptyBlock(usize),
}

/// A permutation of {1..n} in one-line notation.  The empty permutation is
/// representable; operations that need it nonempty say so.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    values: Vec<u32>,
}

impl Permutation {
    pub fn new(values: Vec<u32>) -> Result<Self, PermError> {
        let n = values.len();
        let mut seen = vec![false; n];
        for &v in &values {
            if v == 0 || v as usize > n || seen[v as usize - 1] {
                return Err(PermError::NotBijective(values.clone(), n));
            }
            seen[v as usize - 1] = true;
        }
        Ok(Permutation { values })
    }

    pub fn empty() -> Self {
        Permutation { values: Vec::new() }
    }

    pub fn one() -> Self {
        Permutation { values: vec![1] }
    }

    pub fn identity(n: usize) -> Self {
        Permutation { values: (1..=n as u32).collect() }
    }

    pub fn decreasing(n: usize) -> Self {
        Permutation { values: (1..=n as u32).rev().collect() }
    }

    /// The pattern (standardisation) of any sequence of distinct integers.
    pub fn pattern_of(seq: &[u32]) -> Self {
        let mut idx: Vec<usize> = (0..seq.len()).collect();
        idx.sort_by_key(|&i| seq[i]);
        let mut values = vec![0u32; seq.len()];
        for (rank, &i) in idx.iter().enumerate() {
            values[i] = rank as u32 + 1;
        }
        Permutation { values }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    /// Entry at 1-based position `i`.
    pub fn at(&self, i: usize) -> u32 {
        self.values[i - 1]
    }

    // ---- symmetries -------------------------------------------------------

    pub fn reverse(&self) -> Self {
        let mut v = self.values.clone();
        v.reverse();
        Permutation { values: v }
    }

    pub fn complement(&self) -> Self {
        let n = self.len() as u32;
        Permutation { values: self.values.iter().map(|&v| n + 1 - v).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut v = vec![0u32; self.len()];
        for (i, &x) in self.values.iter().enumerate() {
            v[x as usize - 1] = i as u32 + 1;
        }
        Permutation { values: v }
    }

    /// The eight images under the dihedral symmetries of the plot
    /// (duplicates not removed).
    pub fn symmetries(&self) -> Vec<Permutation> {
        let r = self.reverse();
        let c = self.complement();
        let rc = r.complement();
        let i = self.inverse();
        let ir = i.reverse();
        let ic = i.complement();
        let irc = ir.complement();
        vec![self.clone(), r, c, rc, i, ir, ic, irc]
    }

    // ---- containment ------------------------------------------------------

    /// Pattern containment: does some subsequence of `self` standardise to
    /// `patt`?  Exhaustive search with position/value pruning.
    pub fn contains(&self, patt: &Permutation) -> bool {
        self.find_embedding(patt).is_some()
    }

    pub fn avoids(&self, patt: &Permutation) -> bool {
        !self.contains(patt)
    }

    /// One witness embedding as 1-based positions, or None.
    pub fn find_embedding(&self, patt: &Permutation) -> Option<Vec<usize>> {
        let mut out = None;
        self.embed_search(patt, &mut |emb| {
            out = Some(emb.iter().map(|&i| i + 1).collect());
            false
        });
        out
    }

    /// Every embedding of `patt` into `self`, as 1-based position sequences
    /// in lexicographic order.
    pub fn embeddings(&self, patt: &Permutation) -> Vec<Vec<usize>> {
        let mut all = Vec::new();
        self.embed_search(patt, &mut |emb| {
            all.push(emb.iter().map(|&i| i + 1).collect());
            true
        });
        all
    }

    /// DFS over embeddings; `visit` returns false to stop early.
    /// Positions in `chosen` are 0-based.
    fn embed_search(&self, patt: &Permutation, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        fn rec(
            pi: &[u32],
            sigma: &[u32],
            chosen: &mut Vec<usize>,
            start: usize,
            visit: &mut dyn FnMut(&[usize]) -> bool,
        ) -> bool {
            let k = chosen.len();
            if k == sigma.len() {
                return visit(chosen);
            }
            // not enough entries left
            if pi.len() - start < sigma.len() - k {
                return true;
            }
            for p in start..pi.len() {
                if pi.len() - p < sigma.len() - k {
                    break;
                }
                let v = pi[p];
                let ok = chosen
                    .iter()
                    .enumerate()
                    .all(|(j, &q)| (pi[q] < v) == (sigma[j] < sigma[k]));
                if ok {
                    chosen.push(p);
                    if !rec(pi, sigma, chosen, p + 1, visit) {
                        return false;
                    }
                    chosen.pop();
                }
            }
            true
        }
        if patt.len() > self.len() {
            return true;
        }
        if patt.is_empty() {
            return visit(&[]);
        }
        let mut chosen = Vec::with_capacity(patt.len());
        rec(&self.values, &patt.values, &mut chosen, 0, visit)
    }

    // ---- intervals and simplicity ----------------------------------------

    /// All proper intervals as 1-based inclusive index ranges `(a, b)`:
    /// contiguous positions whose values are contiguous, with
    /// `1 < b - a + 1 < n`.
    pub fn proper_intervals(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for a in 0..n {
            let mut lo = self.values[a];
            let mut hi = self.values[a];
            for b in a + 1..n {
                lo = lo.min(self.values[b]);
                hi = hi.max(self.values[b]);
                let width = b - a + 1;
                if width == n {
                    break;
                }
                if (hi - lo + 1) as usize == width {
                    out.push((a + 1, b + 1));
                }
            }
        }
        out
    }

    /// Simple: nontrivial and without proper intervals.
    pub fn is_simple(&self) -> bool {
        let n = self.len();
        if n < 2 {
            return false;
        }
        // same scan as proper_intervals, stopping at the first hit
        for a in 0..n {
            let mut lo = self.values[a];
            let mut hi = self.values[a];
            for b in a + 1..n {
                lo = lo.min(self.values[b]);
                hi = hi.max(self.values[b]);
                let width = b - a + 1;
                if width == n {
                    break;
                }
                if (hi - lo + 1) as usize == width {
                    return false;
                }
            }
        }
        true
    }

    // ---- sums, skews, components ------------------------------------------

    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        let k = self.len() as u32;
        let mut v = self.values.clone();
        v.extend(other.values.iter().map(|&x| x + k));
        Permutation { values: v }
    }

    pub fn skew_sum(&self, other: &Permutation) -> Permutation {
        let k = other.len() as u32;
        let mut v: Vec<u32> = self.values.iter().map(|&x| x + k).collect();
        v.extend_from_slice(&other.values);
        Permutation { values: v }
    }

    /// The unique maximal decomposition into sum components.
    pub fn sum_components(&self) -> Vec<Permutation> {
        let n = self.len();
        let mut out = Vec::new();
        let mut start = 0usize;
        let mut max = 0u32;
        for i in 0..n {
            max = max.max(self.values[i]);
            if max as usize == i + 1 {
                let seg: Vec<u32> = self.values[start..=i].iter().map(|&v| v - start as u32).collect();
                out.push(Permutation { values: seg });
                start = i + 1;
            }
        }
        out
    }

    pub fn skew_components(&self) -> Vec<Permutation> {
        let mut comps: Vec<Permutation> = self.complement().sum_components();
        for c in &mut comps {
            *c = c.complement();
        }
        comps
    }

    pub fn is_sum_decomposable(&self) -> bool {
        self.len() >= 2 && self.sum_components().len() >= 2
    }

    pub fn is_skew_decomposable(&self) -> bool {
        self.len() >= 2 && self.skew_components().len() >= 2
    }

    /// First sum component if sum decomposable, first skew component if skew
    /// decomposable, the permutation itself otherwise.  Well defined since no
    /// permutation is both.
    pub fn first_component(&self) -> Permutation {
        if self.is_sum_decomposable() {
            self.sum_components().remove(0)
        } else if self.is_skew_decomposable() {
            self.skew_components().remove(0)
        } else {
            self.clone()
        }
    }

    // ---- point insertion / deletion ----------------------------------------

    /// Delete the entry at 1-based position `i`.
    pub fn delete(&self, i: usize) -> Permutation {
        let removed = self.values[i - 1];
        let values = self
            .values
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i - 1)
            .map(|(_, &v)| if v > removed { v - 1 } else { v })
            .collect();
        Permutation { values }
    }

    pub fn one_point_deletions(&self) -> Vec<Permutation> {
        (1..=self.len()).map(|i| self.delete(i)).collect()
    }

    /// All permutations of length n+1 with a one-entry deletion equal to
    /// `self`.
    pub fn one_point_extensions(&self) -> BTreeSet<Permutation> {
        let n = self.len();
        let mut out = BTreeSet::new();
        for pos in 0..=n {
            for val in 1..=n as u32 + 1 {
                let mut v: Vec<u32> = self.values.iter().map(|&x| if x >= val { x + 1 } else { x }).collect();
                v.insert(pos, val);
                out.insert(Permutation { values: v });
            }
        }
        out
    }

    /// Insert a new maximum at 1-based slot `pos` (1..=n+1).
    pub fn insert_max(&self, pos: usize) -> Permutation {
        let mut v = self.values.clone();
        v.insert(pos - 1, self.len() as u32 + 1);
        Permutation { values: v }
    }

    /// All distinct patterns of subsequences (the downward closure of a
    /// single permutation).  Exponential in the length; intended for n ≤ 12.
    pub fn all_patterns(&self) -> BTreeSet<Permutation> {
        let n = self.len();
        let mut out = BTreeSet::new();
        let mut buf = Vec::with_capacity(n);
        for mask in 0u32..(1 << n) {
            buf.clear();
            for i in 0..n {
                if mask >> i & 1 == 1 {
                    buf.push(self.values[i]);
                }
            }
            out.insert(Permutation::pattern_of(&buf));
        }
        out
    }
}

impl fmt::Display for Permutation {
    /// Compact digits when every value fits one digit, whitespace-separated
    /// otherwise (lengths above 9 never render ambiguously).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.values.is_empty() {
            return write!(f, "()");
        }
        if self.len() <= 9 {
            for v in &self.values {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let words: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", words.join(" "))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for Permutation {
    type Err = PermError;

    /// Whitespace-separated values, or a compact digit string when every
    /// value is at most 9.
    fn from_str(s: &str) -> Result<Self, PermError> {
        let s = s.trim();
        if s.is_empty() || s == "()" {
            return Ok(Permutation::empty());
        }
        let values: Vec<u32> = if s.contains(char::is_whitespace) {
            s.split_whitespace()
                .map(|t| t.parse::<u32>().map_err(|_| PermError::Parse(s.to_string())))
                .collect::<Result<_, _>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).ok_or_else(|| PermError::Parse(s.to_string())))
                .collect::<Result<_, _>>()?
        };
        Permutation::new(values).map_err(|_| PermError::Parse(s.to_string()))
    }
}

/// All permutations of length n in lexicographic order.  Factorial; intended
/// for n ≤ 10.
pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut cur: Vec<u32> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(n: usize, cur: &mut Vec<u32>, used: &mut Vec<bool>, out: &mut Vec<Permutation>) {
        if cur.len() == n {
            out.push(Permutation { values: cur.clone() });
            return;
        }
        for v in 1..=n as u32 {
            if !used[v as usize - 1] {
                used[v as usize - 1] = true;
                cur.push(v);
                rec(n, cur, used, out);
                cur.pop();
                used[v as usize - 1] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}
