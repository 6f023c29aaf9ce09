use std::fmt;
use std::str::FromStr;

use crate::GridError;

/// A letter of the cell alphabet: the 1-based (column, row) address of a
/// nonzero cell.  The derived order (column first) is the fixed letter order
/// used by every lexicographic construction.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellLetter {
    pub col: usize,
    pub row: usize,
}

impl CellLetter {
    pub fn new(col: usize, row: usize) -> Self {
        CellLetter { col, row }
    }
}

impl fmt::Display for CellLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.col <= 9 && self.row <= 9 {
            write!(f, "a{}{}", self.col, self.row)
        } else {
            write!(f, "{},{}", self.col, self.row)
        }
    }
}

impl fmt::Debug for CellLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl FromStr for CellLetter {
    type Err = GridError;

    /// Either `k,l` or the compact `a{k}{l}` with single digits.
    fn from_str(s: &str) -> Result<Self, GridError> {
        let bad = || GridError::Malformed(format!("cannot parse cell name {s:?}"));
        if let Some((k, l)) = s.split_once(',') {
            let col = k.trim().parse().map_err(|_| bad())?;
            let row = l.trim().parse().map_err(|_| bad())?;
            if col == 0 || row == 0 {
                return Err(bad());
            }
            return Ok(CellLetter { col, row });
        }
        let digits: Vec<u32> = s
            .strip_prefix('a')
            .ok_or_else(bad)?
            .chars()
            .map(|c| c.to_digit(10).ok_or_else(bad))
            .collect::<Result<_, _>>()?;
        match digits[..] {
            [k, l] if k > 0 && l > 0 => Ok(CellLetter { col: k as usize, row: l as usize }),
            _ => Err(bad()),
        }
    }
}

/// Parse a whitespace-separated sequence of cell names.
pub fn parse_word(s: &str) -> Result<Vec<CellLetter>, GridError> {
    s.split_whitespace().map(CellLetter::from_str).collect()
}

pub fn format_word(word: &[CellLetter]) -> String {
    word.iter().map(CellLetter::to_string).collect::<Vec<_>>().join(" ")
}

/// The bijection ψ between entry positions of a decoded permutation and the
/// indices of the word letters that produced them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexCorrespondence {
    word_index_by_position: Vec<usize>,
}

impl IndexCorrespondence {
    pub(crate) fn new(word_index_by_position: Vec<usize>) -> Self {
        IndexCorrespondence { word_index_by_position }
    }

    /// ψ(i): the 1-based word index producing the i-th entry (1-based).
    pub fn psi(&self, position: usize) -> usize {
        self.word_index_by_position[position - 1]
    }

    pub fn len(&self) -> usize {
        self.word_index_by_position.len()
    }

    pub fn is_empty(&self) -> bool {
        self.word_index_by_position.is_empty()
    }

    /// 1-based word indices listed by permutation position.
    pub fn as_slice(&self) -> &[usize] {
        &self.word_index_by_position
    }

    pub fn is_bijective(&self) -> bool {
        let n = self.word_index_by_position.len();
        let mut seen = vec![false; n];
        for &i in &self.word_index_by_position {
            if i == 0 || i > n || seen[i - 1] {
                return false;
            }
            seen[i - 1] = true;
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cell_name_formats() {
        assert_eq!("a12".parse::<CellLetter>().unwrap(), CellLetter::new(1, 2));
        assert_eq!("3,2".parse::<CellLetter>().unwrap(), CellLetter::new(3, 2));
        assert_eq!("12,11".parse::<CellLetter>().unwrap(), CellLetter::new(12, 11));
        assert!("a0".parse::<CellLetter>().is_err());
        assert!("b12".parse::<CellLetter>().is_err());
        let w = parse_word("1,2 3,2 2,1 3,1 3,2 1,2 2,2").unwrap();
        assert_eq!(w.len(), 7);
        assert_eq!(format_word(&w), "a12 a32 a21 a31 a32 a12 a22");
        assert_eq!(parse_word(&format_word(&w)).unwrap(), w);
    }

    #[test]
    fn letter_order_is_column_major() {
        let mut letters = vec![CellLetter::new(2, 1), CellLetter::new(1, 2), CellLetter::new(1, 1)];
        letters.sort();
        assert_eq!(letters, vec![CellLetter::new(1, 1), CellLetter::new(1, 2), CellLetter::new(2, 1)]);
    }
}
