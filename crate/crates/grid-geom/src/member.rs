use std::cmp::Reverse;
use std::collections::BinaryHeap;

use perm_core::Permutation;

use crate::{CellLetter, GridError, GridMatrix};

/// Visit every composition of n into `parts` nonnegative parts.
fn for_each_composition(n: usize, parts: usize, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    fn rec(left: usize, idx: usize, buf: &mut Vec<usize>, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if idx + 1 == buf.len() {
            buf[idx] = left;
            return f(buf);
        }
        for take in 0..=left {
            buf[idx] = take;
            if !rec(left - take, idx + 1, buf, f) {
                return false;
            }
        }
        true
    }
    if parts == 0 {
        return n > 0 || f(&[]);
    }
    let mut buf = vec![0usize; parts];
    rec(n, 0, &mut buf, f)
}

fn assignment_from_split(split: &[usize], n: usize) -> Vec<usize> {
    let mut out = Vec::with_capacity(n);
    for (idx, &size) in split.iter().enumerate() {
        out.extend(std::iter::repeat_n(idx, size));
    }
    out
}

/// Scratch space for the distance-order constraint graph of one gridding.
/// Every point has at most two successors (its column chain and row chain
/// neighbours).
struct DagScratch {
    succ: Vec<[usize; 2]>,
    succ_len: Vec<u8>,
    indeg: Vec<u8>,
    stack: Vec<usize>,
}

impl DagScratch {
    fn new() -> Self {
        DagScratch { succ: Vec::new(), succ_len: Vec::new(), indeg: Vec::new(), stack: Vec::new() }
    }

    /// Build the constraint graph.  Within a column the distance follows the
    /// reading direction of that column's sign; likewise within a row.
    fn build(
        &mut self,
        m: &GridMatrix,
        pos_of_val: &[usize],
        col_of_pos: &[usize],
        row_of_val: &[usize],
        col_signs: &[i8],
        row_signs: &[i8],
    ) {
        let n = col_of_pos.len();
        self.succ.clear();
        self.succ.resize(n, [0, 0]);
        self.succ_len.clear();
        self.succ_len.resize(n, 0);
        self.indeg.clear();
        self.indeg.resize(n, 0);
        let mut prev_in_col = vec![usize::MAX; m.cols()];
        for p in 0..n {
            let k = col_of_pos[p];
            let q = prev_in_col[k];
            if q != usize::MAX {
                let (from, to) = if col_signs[k] > 0 { (q, p) } else { (p, q) };
                self.succ[from][self.succ_len[from] as usize] = to;
                self.succ_len[from] += 1;
                self.indeg[to] += 1;
            }
            prev_in_col[k] = p;
        }
        let mut prev_in_row = vec![usize::MAX; m.rows()];
        for v in 0..n {
            let p = pos_of_val[v];
            let l = row_of_val[v];
            let q = prev_in_row[l];
            if q != usize::MAX {
                let (from, to) = if row_signs[l] > 0 { (q, p) } else { (p, q) };
                self.succ[from][self.succ_len[from] as usize] = to;
                self.succ_len[from] += 1;
                self.indeg[to] += 1;
            }
            prev_in_row[l] = p;
        }
    }

    /// Kahn's algorithm: is the constraint graph acyclic?
    fn acyclic(&mut self) -> bool {
        let n = self.indeg.len();
        self.stack.clear();
        for p in 0..n {
            if self.indeg[p] == 0 {
                self.stack.push(p);
            }
        }
        let mut done = 0;
        let mut indeg = std::mem::take(&mut self.indeg);
        while let Some(p) = self.stack.pop() {
            done += 1;
            for i in 0..self.succ_len[p] as usize {
                let t = self.succ[p][i];
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    self.stack.push(t);
                }
            }
        }
        self.indeg = indeg;
        done == n
    }

    /// The lexicographically least linearization by letter, or None when the
    /// constraints are cyclic.  Greedy smallest-letter source gives the
    /// lex-least topological word; available sources always carry distinct
    /// letters because same-cell points are chain-ordered.
    fn lexmin(
        &mut self,
        perm: &Permutation,
        col_of_pos: &[usize],
        row_of_val: &[usize],
    ) -> Option<Vec<CellLetter>> {
        let n = self.indeg.len();
        let letter =
            |p: usize| CellLetter::new(col_of_pos[p] + 1, row_of_val[perm.values()[p] as usize - 1] + 1);
        let mut heap: BinaryHeap<Reverse<(CellLetter, usize)>> = BinaryHeap::new();
        let mut indeg = self.indeg.clone();
        for p in 0..n {
            if indeg[p] == 0 {
                heap.push(Reverse((letter(p), p)));
            }
        }
        let mut word = Vec::with_capacity(n);
        while let Some(Reverse((l, p))) = heap.pop() {
            word.push(l);
            for i in 0..self.succ_len[p] as usize {
                let t = self.succ[p][i];
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    heap.push(Reverse((letter(t), t)));
                }
            }
        }
        (word.len() == n).then_some(word)
    }
}

/// Visit every gridding of the permutation into nonzero cells of the matrix:
/// a split of positions into consecutive column blocks and of values into
/// consecutive row blocks.  `f` returns false to stop the search.
///
/// Row blocks are grown value by value with an immediate nonzero-cell check,
/// which prunes almost all of the composition space.
fn for_each_gridding(m: &GridMatrix, perm: &Permutation, f: &mut impl FnMut(&[usize], &[usize]) -> bool) {
    let n = perm.len();
    let mut pos_of_val = vec![0usize; n];
    for (p, &v) in perm.values().iter().enumerate() {
        pos_of_val[v as usize - 1] = p;
    }
    for_each_composition(n, m.cols(), &mut |col_split| {
        let col_of_pos = assignment_from_split(col_split, n);
        // a nonempty column must have at least one nonzero cell
        for k in 0..m.cols() {
            if col_split[k] > 0 && (1..=m.rows()).all(|l| m.entry(k + 1, l) == 0) {
                return true;
            }
        }
        let col_of_val: Vec<usize> = (0..n).map(|v| col_of_pos[pos_of_val[v]]).collect();
        let mut row_of_val = vec![0usize; n];
        fn rec(
            m: &GridMatrix,
            col_of_pos: &[usize],
            col_of_val: &[usize],
            row_of_val: &mut Vec<usize>,
            l: usize,
            v_start: usize,
            f: &mut impl FnMut(&[usize], &[usize]) -> bool,
        ) -> bool {
            let n = col_of_val.len();
            let u = m.rows();
            if l + 1 == u {
                // last row takes the rest
                for v in v_start..n {
                    if m.entry(col_of_val[v] + 1, u) == 0 {
                        return true;
                    }
                    row_of_val[v] = u - 1;
                }
                return f(col_of_pos, row_of_val);
            }
            // empty block first, then grow while the cells stay nonzero
            if !rec(m, col_of_pos, col_of_val, row_of_val, l + 1, v_start, f) {
                return false;
            }
            for v in v_start..n {
                if m.entry(col_of_val[v] + 1, l + 1) == 0 {
                    break;
                }
                row_of_val[v] = l;
                if !rec(m, col_of_pos, col_of_val, row_of_val, l + 1, v + 1, f) {
                    return false;
                }
            }
            true
        }
        rec(m, &col_of_pos, &col_of_val, &mut row_of_val, 0, 0, f)
    });
}

fn coerce_signed(m: &GridMatrix) -> GridMatrix {
    if m.signs().is_some() {
        return m.clone();
    }
    match m.ensure_signs() {
        Ok(signed) => signed,
        // not a partial multiplication matrix: the doubling draws the same
        // figure and always admits the parity signs
        Err(_) => m.double(),
    }
}

fn positions_by_value(perm: &Permutation) -> Vec<usize> {
    let mut pos_of_val = vec![0usize; perm.len()];
    for (p, &v) in perm.values().iter().enumerate() {
        pos_of_val[v as usize - 1] = p;
    }
    pos_of_val
}

/// Membership in Geom(M): some word decodes to the permutation, equivalently
/// some gridding admits a consistent distance order.
pub fn geom_member(m: &GridMatrix, perm: &Permutation) -> bool {
    if perm.is_empty() {
        return true;
    }
    let signed = coerce_signed(m);
    let (col_signs, row_signs) = {
        let (c, r) = signed.signs().expect("coerced matrix is signed");
        (c.to_vec(), r.to_vec())
    };
    let pos_of_val = positions_by_value(perm);
    let mut scratch = DagScratch::new();
    let mut found = false;
    for_each_gridding(&signed, perm, &mut |col_of, row_of| {
        scratch.build(&signed, &pos_of_val, col_of, row_of, &col_signs, &row_signs);
        if scratch.acyclic() {
            found = true;
            return false;
        }
        true
    });
    found
}

/// The lexicographically least word decoding to the permutation, over all
/// griddings.  Requires a partial multiplication matrix (the word alphabet
/// is tied to the stored or inferred signs).
pub fn lexmin_word(m: &GridMatrix, perm: &Permutation) -> Result<Option<Vec<CellLetter>>, GridError> {
    let signed = m.ensure_signs()?;
    if perm.is_empty() {
        return Ok(Some(Vec::new()));
    }
    let (col_signs, row_signs) = {
        let (c, r) = signed.signs().expect("signed");
        (c.to_vec(), r.to_vec())
    };
    let pos_of_val = positions_by_value(perm);
    let mut scratch = DagScratch::new();
    let mut best: Option<Vec<CellLetter>> = None;
    for_each_gridding(&signed, perm, &mut |col_of, row_of| {
        scratch.build(&signed, &pos_of_val, col_of, row_of, &col_signs, &row_signs);
        if let Some(w) = scratch.lexmin(perm, col_of, row_of) {
            if best.as_ref().is_none_or(|b| w < *b) {
                best = Some(w);
            }
        }
        true
    });
    Ok(best)
}

/// Membership in the monotone grid class Grid(M): some gridding puts every
/// cell's points in the orientation of its entry, with no drawing constraint.
pub fn grid_member(m: &GridMatrix, perm: &Permutation) -> bool {
    if perm.is_empty() {
        return true;
    }
    let n = perm.len();
    let mut found = false;
    for_each_gridding(m, perm, &mut |col_of, row_of| {
        for k in 0..m.cols() {
            for l in 0..m.rows() {
                let vals: Vec<u32> = (0..n)
                    .filter(|&p| col_of[p] == k && row_of[perm.values()[p] as usize - 1] == l)
                    .map(|p| perm.values()[p])
                    .collect();
                let ok = match m.entry(k + 1, l + 1) {
                    1 => vals.windows(2).all(|w| w[0] < w[1]),
                    -1 => vals.windows(2).all(|w| w[0] > w[1]),
                    _ => vals.is_empty(),
                };
                if !ok {
                    return true;
                }
            }
        }
        found = true;
        false
    });
    found
}

/// Members of Geom(M) of each length 0..=n_max, grown by inserting a new
/// maximum into shorter members (sound because classes are downward closed).
pub fn geom_class_members(m: &GridMatrix, n_max: usize) -> Vec<Vec<Permutation>> {
    let signed = coerce_signed(m);
    let mut out: Vec<Vec<Permutation>> = vec![vec![Permutation::empty()]];
    if n_max == 0 {
        return out;
    }
    let one = Permutation::one();
    out.push(if geom_member(&signed, &one) { vec![one] } else { Vec::new() });
    for n in 2..=n_max {
        let mut level = Vec::new();
        for q in &out[n - 1] {
            for pos in 1..=n {
                let cand = q.insert_max(pos);
                if geom_member(&signed, &cand) {
                    level.push(cand);
                }
            }
        }
        level.sort();
        out.push(level);
    }
    out
}
