use perm_core::Permutation;

use crate::{CellLetter, GridError, GridMatrix, IndexCorrespondence};

/// The map φ: place the i-th letter's point on its cell's segment at the
/// i-th smallest distance from the cell's base point, then read the
/// permutation off the points.  ψ records which letter produced each entry.
///
/// The base point of a cell sits where its column and row base lines cross:
/// left of the column for column sign +1, right for -1; below the row for
/// row sign +1, above for -1.
pub fn decode(m: &GridMatrix, word: &[CellLetter]) -> Result<(Permutation, IndexCorrespondence), GridError> {
    let (col_signs, row_signs) = m.signs().ok_or(GridError::SignsRequired)?;
    let n = word.len();
    // exact scaled coordinates: the open cell (k, l) spans ((k-1)D, kD) x
    // ((l-1)D, lD) with D = n + 1, and distance i from the base point lands
    // at offset i or D - i depending on the sign
    let scale = n as i64 + 1;
    let mut pts = Vec::with_capacity(n);
    for (i, letter) in word.iter().enumerate() {
        let (k, l) = (letter.col, letter.row);
        if k == 0 || k > m.cols() || l == 0 || l > m.rows() || m.entry(k, l) == 0 {
            return Err(GridError::ZeroCell(*letter));
        }
        let d = i as i64 + 1;
        let x = if col_signs[k - 1] > 0 { (k as i64 - 1) * scale + d } else { k as i64 * scale - d };
        let y = if row_signs[l - 1] > 0 { (l as i64 - 1) * scale + d } else { l as i64 * scale - d };
        pts.push((x, y, i + 1));
    }
    let mut by_x = pts.clone();
    by_x.sort_by_key(|&(x, _, _)| x);
    let mut by_y: Vec<i64> = pts.iter().map(|&(_, y, _)| y).collect();
    by_y.sort_unstable();
    let values: Vec<u32> = by_x
        .iter()
        .map(|&(_, y, _)| (by_y.binary_search(&y).expect("distinct y") + 1) as u32)
        .collect();
    let psi: Vec<usize> = by_x.iter().map(|&(_, _, i)| i).collect();
    let perm = Permutation::new(values).expect("decoded points give a permutation");
    Ok((perm, IndexCorrespondence::new(psi)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_word;

    fn figure_matrix() -> GridMatrix {
        GridMatrix::parse("-1 1 1\n0 -1 -1\n").unwrap().ensure_signs().unwrap()
    }

    #[test]
    fn worked_figure() {
        let m = figure_matrix();
        let w = parse_word("1,2 3,2 2,1 3,1 3,2 1,2 2,2").unwrap();
        let (perm, psi) = decode(&m, &w).unwrap();
        assert_eq!(perm, "6327415".parse().unwrap());
        assert!(psi.is_bijective());
        // the first entry (the 6) comes from the second a12, letter 6
        assert_eq!(psi.psi(1), 6);
        assert_eq!(psi.psi(2), 1);
    }

    #[test]
    fn single_letters() {
        let m = figure_matrix();
        for letter in m.nonzero_cells() {
            let (perm, _) = decode(&m, &[letter]).unwrap();
            assert_eq!(perm, Permutation::one());
        }
    }

    #[test]
    fn zero_cell_rejected() {
        let m = figure_matrix();
        assert!(matches!(decode(&m, &[CellLetter::new(1, 1)]), Err(GridError::ZeroCell(_))));
    }

    #[test]
    fn length_preserving_on_random_words() {
        use rand::prelude::*;
        let m = figure_matrix();
        let letters = m.nonzero_cells();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..1000 {
            let n = rng.gen_range(0..=9);
            let w: Vec<CellLetter> = (0..n).map(|_| *letters.choose(&mut rng).unwrap()).collect();
            let (perm, psi) = decode(&m, &w).unwrap();
            assert_eq!(perm.len(), n);
            assert!(psi.is_bijective());
        }
    }
}
