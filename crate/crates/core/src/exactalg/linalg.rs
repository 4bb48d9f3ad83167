//! Dense linear systems over ℚ.

use num_traits::{One, Zero};

use super::Rat;

/// Solves `m · x = rhs` by Gauss–Jordan elimination. Free variables are set
/// to zero. Returns `None` when the system is inconsistent.
pub fn solve(m: &[Vec<Rat>], rhs: &[Rat], ncols: usize) -> Option<Vec<Rat>> {
    assert_eq!(m.len(), rhs.len(), "row count");
    let mut rows: Vec<Vec<Rat>> = m
        .iter()
        .zip(rhs)
        .map(|(r, b)| {
            assert_eq!(r.len(), ncols, "row length");
            let mut row = r.clone();
            row.push(b.clone());
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = rows[rank][col].recip();
        for v in rows[rank].iter_mut().skip(col) {
            *v *= &inv;
        }
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == rank || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row).skip(col) {
                *v -= &f * p;
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if rows[rank..].iter().any(|r| !r[ncols].is_zero()) {
        return None;
    }
    let mut x = vec![Rat::zero(); ncols];
    for (r, &c) in pivots.iter().enumerate() {
        debug_assert!(rows[r][c].is_one());
        x[c] = rows[r][ncols].clone();
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, rat_frac};

    fn row(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&c| rat(c)).collect()
    }

    #[test]
    fn unique_solution() {
        let m = vec![row(&[2, 1]), row(&[1, 3])];
        let x = solve(&m, &row(&[1, 2]), 2).unwrap();
        assert_eq!(x, vec![rat_frac(1, 5), rat_frac(3, 5)]);
    }

    #[test]
    fn underdetermined_sets_free_to_zero() {
        let m = vec![row(&[1, 1, 0]), row(&[2, 2, 0])];
        let x = solve(&m, &row(&[3, 6]), 3).unwrap();
        assert_eq!(x, row(&[3, 0, 0]));
    }

    #[test]
    fn inconsistent() {
        let m = vec![row(&[1, 1]), row(&[2, 2])];
        assert!(solve(&m, &row(&[1, 3]), 2).is_none());
    }
}
