//! Dense matrices over a small finite field.
//!
//! The field is passed to each operation rather than stored, so matrices stay
//! plain data.  Rows are the outer index throughout.

use crate::field::SmallField;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<usize>,
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<usize>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c));
        Mat {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn get(&self, r: usize, c: usize) -> usize {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: usize) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[usize] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    /// Row reduce in place; returns the pivot columns.
    pub fn rref(&mut self, f: &SmallField) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..self.cols {
                    let (a, b) = (self.get(r, j), self.get(pr, j));
                    self.set(r, j, b);
                    self.set(pr, j, a);
                }
            }
            let inv = f.inv(self.get(r, c));
            for j in 0..self.cols {
                self.set(r, j, f.mul(self.get(r, j), inv));
            }
            for i in 0..self.rows {
                if i != r && self.get(i, c) != 0 {
                    let factor = self.get(i, c);
                    for j in 0..self.cols {
                        let v = f.sub(self.get(i, j), f.mul(factor, self.get(r, j)));
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self, f: &SmallField) -> usize {
        self.clone().rref(f).len()
    }

    /// Rank of the submatrix formed by the given columns.
    pub fn rank_of_columns(&self, f: &SmallField, cols: &[usize]) -> usize {
        let rows = (0..self.rows)
            .map(|r| cols.iter().map(|&c| self.get(r, c)).collect())
            .collect();
        Mat::from_rows(rows).rank(f)
    }

    /// Basis of {x : A x = 0}, one vector per row.
    pub fn nullspace(&self, f: &SmallField) -> Mat {
        let mut red = self.clone();
        let pivots = red.rref(f);
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::new();
        for &fc in &free {
            let mut v = vec![0; self.cols];
            v[fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(red.get(i, fc));
            }
            basis.push(v);
        }
        if basis.is_empty() {
            Mat::zeros(0, self.cols)
        } else {
            Mat::from_rows(basis)
        }
    }

    /// A solution of A x = b with every free variable set to zero.
    pub fn solve(&self, f: &SmallField, b: &[usize]) -> Option<Vec<usize>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Mat::zeros(self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, self.cols, b[r]);
        }
        let pivots = aug.rref(f);
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![0; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = aug.get(i, self.cols);
        }
        Some(x)
    }
}

pub fn dot(f: &SmallField, x: &[usize], y: &[usize]) -> usize {
    assert_eq!(x.len(), y.len());
    let mut acc = 0;
    for (&a, &b) in x.iter().zip(y) {
        acc = f.add(acc, f.mul(a, b));
    }
    acc
}

/// Row vector times matrix: m has one entry per row of a.
pub fn row_times_mat(f: &SmallField, m: &[usize], a: &Mat) -> Vec<usize> {
    assert_eq!(m.len(), a.rows);
    let mut out = vec![0; a.cols];
    for (r, &coef) in m.iter().enumerate() {
        if coef == 0 {
            continue;
        }
        for c in 0..a.cols {
            out[c] = f.add(out[c], f.mul(coef, a.get(r, c)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rref_example_over_gf4() {
        let f = SmallField::new(4).unwrap();
        let dep = Mat::from_rows(vec![vec![1, 2, 3], vec![2, 3, 1]]);
        // the second row is x times the first
        assert_eq!(dep.rank(&f), 1);
        let mut m = Mat::from_rows(vec![vec![2, 2, 3], vec![2, 3, 2]]);
        let pivots = m.rref(&f);
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(m.get(0, 0), 1);
        assert_eq!(m.get(1, 0), 0);
        for (i, &pc) in pivots.iter().enumerate() {
            assert_eq!(m.get(i, pc), 1);
        }
        let mut again = m.clone();
        again.rref(&f);
        assert_eq!(again, m);
    }

    #[test]
    fn rank_nullity_on_random_matrices() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for size in [2, 4, 9] {
            let f = SmallField::new(size).unwrap();
            for _ in 0..50 {
                let rows = rng.gen_range(1..6);
                let cols = rng.gen_range(1..7);
                let m = Mat::from_rows(
                    (0..rows)
                        .map(|_| (0..cols).map(|_| rng.gen_range(0..size)).collect())
                        .collect(),
                );
                let ns = m.nullspace(&f);
                assert_eq!(m.rank(&f) + ns.rows, cols);
                for r in 0..ns.rows {
                    for row in 0..m.rows {
                        assert_eq!(dot(&f, m.row(row), ns.row(r)), 0);
                    }
                }
                assert_eq!(ns.rank(&f), ns.rows);
            }
        }
    }

    #[test]
    fn solve_finds_consistent_solutions() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let f = SmallField::new(9).unwrap();
        for _ in 0..100 {
            let rows = rng.gen_range(1..5);
            let cols = rng.gen_range(1..6);
            let m = Mat::from_rows(
                (0..rows)
                    .map(|_| (0..cols).map(|_| rng.gen_range(0..9)).collect())
                    .collect(),
            );
            let x0: Vec<usize> = (0..cols).map(|_| rng.gen_range(0..9)).collect();
            let b: Vec<usize> = (0..rows).map(|r| dot(&f, m.row(r), &x0)).collect();
            let x = m.solve(&f, &b).expect("constructed system is consistent");
            let back: Vec<usize> = (0..rows).map(|r| dot(&f, m.row(r), &x)).collect();
            assert_eq!(back, b);
        }
        // An inconsistent system
        let m = Mat::from_rows(vec![vec![1, 1], vec![1, 1]]);
        assert!(m.solve(&f, &[1, 2]).is_none());
    }

    #[test]
    fn restricted_rank_matches_submatrix() {
        let f = SmallField::new(4).unwrap();
        let m = Mat::from_rows(vec![vec![1, 0, 1, 2], vec![0, 1, 1, 3], vec![1, 1, 0, 1]]);
        assert_eq!(m.rank_of_columns(&f, &[0, 1, 2, 3]), m.rank(&f));
        assert_eq!(m.rank_of_columns(&f, &[0]), 1);
        assert_eq!(m.rank_of_columns(&f, &[]), 0);
        let sub = Mat::from_rows(vec![vec![1, 2], vec![1, 3], vec![0, 1]]);
        assert_eq!(m.rank_of_columns(&f, &[2, 3]), sub.rank(&f));
    }

    #[test]
    fn row_times_mat_matches_manual_combination() {
        let f = SmallField::new(8).unwrap();
        let m = Mat::from_rows(vec![vec![1, 2, 3], vec![4, 5, 6]]);
        let v = row_times_mat(&f, &[3, 5], &m);
        for c in 0..3 {
            let want = f.add(f.mul(3, m.get(0, c)), f.mul(5, m.get(1, c)));
            assert_eq!(v[c], want);
        }
    }
}
