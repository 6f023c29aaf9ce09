use std::fmt;

use crate::{CellLetter, GridError};

/// A 0/±1 matrix in Cartesian orientation: indexed first by column (left to
/// right from 1), then by row (bottom to top from 1).  Column and row signs,
/// when present, certify the partial multiplication property: every nonzero
/// entry equals the product of its column and row sign.
#[derive(Clone, PartialEq, Eq)]
pub struct GridMatrix {
    cols: usize,
    rows: usize,
    /// entry (k, l) at index (k-1) * rows + (l-1)
    entries: Vec<i8>,
    col_signs: Option<Vec<i8>>,
    row_signs: Option<Vec<i8>>,
}

impl GridMatrix {
    pub fn new(cols: usize, rows: usize, entries: Vec<i8>) -> Result<Self, GridError> {
        if cols == 0 || rows == 0 || entries.len() != cols * rows {
            return Err(GridError::Malformed("matrix dimensions do not match entry count".into()));
        }
        if entries.iter().any(|&e| !(-1..=1).contains(&e)) {
            return Err(GridError::Malformed("entries must be -1, 0, or 1".into()));
        }
        Ok(GridMatrix { cols, rows, entries, col_signs: None, row_signs: None })
    }

    /// Build from rows listed top to bottom, the visual order used by the
    /// matrix file format.
    pub fn from_rows_top_down(rows_top_down: &[Vec<i8>]) -> Result<Self, GridError> {
        let rows = rows_top_down.len();
        if rows == 0 {
            return Err(GridError::Malformed("no rows".into()));
        }
        let cols = rows_top_down[0].len();
        if rows_top_down.iter().any(|r| r.len() != cols) {
            return Err(GridError::Malformed("ragged rows".into()));
        }
        let mut entries = vec![0i8; cols * rows];
        for (i, row) in rows_top_down.iter().enumerate() {
            let l = rows - i; // cartesian row index
            for (j, &e) in row.iter().enumerate() {
                entries[j * rows + (l - 1)] = e;
            }
        }
        GridMatrix::new(cols, rows, entries)
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Entry at 1-based (column, row).
    pub fn entry(&self, k: usize, l: usize) -> i8 {
        self.entries[(k - 1) * self.rows + (l - 1)]
    }

    pub fn nonzero_cells(&self) -> Vec<CellLetter> {
        let mut out = Vec::new();
        for k in 1..=self.cols {
            for l in 1..=self.rows {
                if self.entry(k, l) != 0 {
                    out.push(CellLetter::new(k, l));
                }
            }
        }
        out
    }

    pub fn signs(&self) -> Option<(&[i8], &[i8])> {
        match (&self.col_signs, &self.row_signs) {
            (Some(c), Some(r)) => Some((c, r)),
            _ => None,
        }
    }

    /// Attach explicit signs after checking the partial multiplication
    /// property.
    pub fn with_signs(mut self, col_signs: Vec<i8>, row_signs: Vec<i8>) -> Result<Self, GridError> {
        if col_signs.len() != self.cols || row_signs.len() != self.rows {
            return Err(GridError::Malformed("sign vector lengths do not match".into()));
        }
        if col_signs.iter().chain(&row_signs).any(|&s| s != 1 && s != -1) {
            return Err(GridError::Malformed("signs must be +1 or -1".into()));
        }
        if !self.verify_signs(&col_signs, &row_signs) {
            return Err(GridError::NotPartialMultiplication);
        }
        self.col_signs = Some(col_signs);
        self.row_signs = Some(row_signs);
        Ok(self)
    }

    /// Does every nonzero entry factor as column sign times row sign?
    pub fn verify_signs(&self, col_signs: &[i8], row_signs: &[i8]) -> bool {
        for k in 1..=self.cols {
            for l in 1..=self.rows {
                let e = self.entry(k, l);
                if e != 0 && e != col_signs[k - 1] * row_signs[l - 1] {
                    return false;
                }
            }
        }
        true
    }

    /// A consistent sign assignment, if one exists.  Within each connected
    /// component of the row-column graph the assignment is unique up to a
    /// global flip; the component's highest row is anchored to +1 (rows read
    /// bottom to top), matching the worked figure, and a component with no
    /// constrained row anchors its first column to +1.
    pub fn infer_signs(&self) -> Option<(Vec<i8>, Vec<i8>)> {
        let t = self.cols;
        let u = self.rows;
        let mut col = vec![0i8; t];
        let mut row = vec![0i8; u];
        // vertices 0..t are columns, t..t+u are rows
        let mut comp = vec![usize::MAX; t + u];
        let mut comps: Vec<Vec<usize>> = Vec::new();
        for start in 0..t + u {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = comps.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                let neighbours: Vec<usize> = if v < t {
                    (0..u).filter(|&l| self.entry(v + 1, l + 1) != 0).map(|l| t + l).collect()
                } else {
                    (0..t).filter(|&k| self.entry(k + 1, v - t + 1) != 0).collect()
                };
                for w in neighbours {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                        stack.push(w);
                    }
                }
            }
            comps.push(members);
        }
        for members in &comps {
            // anchor
            let anchor_row = members.iter().filter(|&&v| v >= t).max();
            let (anchor, sign) = match anchor_row {
                Some(&v) => (v, 1i8),
                None => (members[0], 1i8),
            };
            if anchor < t {
                col[anchor] = sign;
            } else {
                row[anchor - t] = sign;
            }
            // propagate
            let mut stack = vec![anchor];
            while let Some(v) = stack.pop() {
                if v < t {
                    for l in 0..u {
                        let e = self.entry(v + 1, l + 1);
                        if e != 0 {
                            let want = e * col[v];
                            if row[l] == 0 {
                                row[l] = want;
                                stack.push(t + l);
                            } else if row[l] != want {
                                return None;
                            }
                        }
                    }
                } else {
                    let l = v - t;
                    for k in 0..t {
                        let e = self.entry(k + 1, l + 1);
                        if e != 0 {
                            let want = e * row[l];
                            if col[k] == 0 {
                                col[k] = want;
                                stack.push(k);
                            } else if col[k] != want {
                                return None;
                            }
                        }
                    }
                }
            }
        }
        // unconstrained vertices default positive
        for s in col.iter_mut().chain(row.iter_mut()) {
            if *s == 0 {
                *s = 1;
            }
        }
        debug_assert!(self.verify_signs(&col, &row));
        Some((col, row))
    }

    /// Signs as stored, inferred when absent; error for matrices that are not
    /// partial multiplication matrices.
    pub fn ensure_signs(&self) -> Result<GridMatrix, GridError> {
        if self.signs().is_some() {
            return Ok(self.clone());
        }
        let (c, r) = self.infer_signs().ok_or(GridError::NotPartialMultiplication)?;
        self.clone().with_signs(c, r)
    }

    /// The doubling: each entry becomes a 2x2 block (0 stays zero, 1 becomes
    /// the antidiagonal split of the increasing segment, -1 the diagonal
    /// split of the decreasing one).  The result is always a partial
    /// multiplication matrix with the parity signs, which are attached.
    pub fn double(&self) -> GridMatrix {
        let t = 2 * self.cols;
        let u = 2 * self.rows;
        let mut entries = vec![0i8; t * u];
        let mut set = |k: usize, l: usize, e: i8| entries[(k - 1) * u + (l - 1)] = e;
        for k in 1..=self.cols {
            for l in 1..=self.rows {
                match self.entry(k, l) {
                    1 => {
                        set(2 * k - 1, 2 * l - 1, 1);
                        set(2 * k, 2 * l, 1);
                    }
                    -1 => {
                        set(2 * k - 1, 2 * l, -1);
                        set(2 * k, 2 * l - 1, -1);
                    }
                    _ => {}
                }
            }
        }
        let parity = |n: usize| (1..=n).map(|i| if i % 2 == 1 { -1i8 } else { 1 }).collect::<Vec<_>>();
        GridMatrix::new(t, u, entries)
            .expect("doubled dimensions are consistent")
            .with_signs(parity(t), parity(u))
            .expect("parity signs satisfy the doubled matrix")
    }

    /// Parse the matrix file format: lines of space-separated -1/0/1, top row
    /// first, then optional `cols:` and `rows:` sign lines (`rows:` bottom to
    /// top).
    pub fn parse(text: &str) -> Result<GridMatrix, GridError> {
        let mut rows_top_down: Vec<Vec<i8>> = Vec::new();
        let mut col_signs: Option<Vec<i8>> = None;
        let mut row_signs: Option<Vec<i8>> = None;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let sign_line = |rest: &str| -> Result<Vec<i8>, GridError> {
                rest.split_whitespace()
                    .map(|tok| match tok {
                        "+" | "+1" | "1" => Ok(1i8),
                        "-" | "-1" => Ok(-1i8),
                        _ => Err(GridError::ParseAt { line: i + 1, message: format!("bad sign {tok:?}") }),
                    })
                    .collect()
            };
            if let Some(rest) = line.strip_prefix("cols:") {
                col_signs = Some(sign_line(rest)?);
            } else if let Some(rest) = line.strip_prefix("rows:") {
                row_signs = Some(sign_line(rest)?);
            } else {
                if col_signs.is_some() || row_signs.is_some() {
                    return Err(GridError::ParseAt { line: i + 1, message: "matrix rows after sign lines".into() });
                }
                let row: Vec<i8> = line
                    .split_whitespace()
                    .map(|tok| match tok {
                        "0" => Ok(0i8),
                        "1" | "+1" => Ok(1i8),
                        "-1" => Ok(-1i8),
                        _ => Err(GridError::ParseAt { line: i + 1, message: format!("bad entry {tok:?}") }),
                    })
                    .collect::<Result<_, _>>()?;
                rows_top_down.push(row);
            }
        }
        let m = GridMatrix::from_rows_top_down(&rows_top_down)?;
        match (col_signs, row_signs) {
            (Some(c), Some(r)) => m.with_signs(c, r),
            (None, None) => Ok(m),
            _ => Err(GridError::Malformed("cols: and rows: must be given together".into())),
        }
    }
}

impl fmt::Display for GridMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in (1..=self.rows).rev() {
            let row: Vec<String> = (1..=self.cols).map(|k| self.entry(k, l).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        if let Some((c, r)) = self.signs() {
            let fmt_signs = |s: &[i8]| s.iter().map(|&x| if x > 0 { "+" } else { "-" }).collect::<Vec<_>>().join(" ");
            writeln!(f, "cols: {}", fmt_signs(c))?;
            writeln!(f, "rows: {}", fmt_signs(r))?;
        }
        Ok(())
    }
}

impl fmt::Debug for GridMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GridMatrix({}x{})", self.cols, self.rows)
    }
}

/// The bipartite graph with a column vertex joined to a row vertex exactly at
/// the nonzero cells.
#[derive(Clone, Debug)]
pub struct RowColumnGraph {
    pub cols: usize,
    pub rows: usize,
    pub edges: Vec<(usize, usize)>,
}

pub fn row_column_graph(m: &GridMatrix) -> RowColumnGraph {
    let mut edges = Vec::new();
    for k in 1..=m.cols() {
        for l in 1..=m.rows() {
            if m.entry(k, l) != 0 {
                edges.push((k, l));
            }
        }
    }
    RowColumnGraph { cols: m.cols(), rows: m.rows(), edges }
}

pub fn is_forest(g: &RowColumnGraph) -> bool {
    let n = g.cols + g.rows;
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(k, l) in &g.edges {
        let a = find(&mut parent, k - 1);
        let b = find(&mut parent, g.cols + l - 1);
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}
