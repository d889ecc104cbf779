//! Two-point evaluation and differential codes on Hermitian curves, with
//! exact minimum and coset distances for small parameters, and the access
//! structures of the secret sharing schemes built from code extensions.

use crate::curve::{DivClass, LatticeDivisor, TwoPointCurve};
use crate::field::SmallField;
use crate::linalg::{dot, row_times_mat, Mat};

/// The curve y^q + y = x^(q+1) over GF(q^2) together with its rational
/// points.  The code machinery uses P = the point at infinity and
/// Q = (0, 0); the evaluation divisor D is the remaining q^3 - 1 affine
/// points in coordinate order.
pub struct HermitianCodes {
    pub q: i64,
    pub field: SmallField,
    pub curve: TwoPointCurve,
    pub eval_points: Vec<(usize, usize)>,
}

impl HermitianCodes {
    pub fn new(q: i64) -> Result<Self, String> {
        let field = SmallField::new((q * q) as usize)?;
        let curve = TwoPointCurve::hermitian(q).map_err(|e| e.to_string())?;
        let mut eval_points = Vec::new();
        for x in field.elements() {
            for y in field.elements() {
                let lhs = if y == 0 { 0 } else { field.add(field.pow(y, q), y) };
                let rhs = if x == 0 { 0 } else { field.pow(x, q + 1) };
                if lhs == rhs && (x, y) != (0, 0) {
                    eval_points.push((x, y));
                }
            }
        }
        assert_eq!(eval_points.len() as i64, q * q * q - 1);
        Ok(HermitianCodes {
            q,
            field,
            curve,
            eval_points,
        })
    }

    pub fn n(&self) -> usize {
        self.eval_points.len()
    }

    /// Class of the evaluation divisor: the affine points sum to q^3 P, so
    /// D is equivalent to q^3 P - Q.
    pub fn d_class(&self) -> DivClass {
        self.curve
            .lattice_class(LatticeDivisor::new(self.q * self.q * self.q, -1))
    }

    /// Monomial exponents (i, j) spanning L(aP + bQ): x has pole order q at
    /// P and a simple zero at Q, y has pole order q + 1 at P and zero order
    /// q + 1 at Q.
    pub fn rr_basis(&self, a: i64, b: i64) -> Vec<(i64, i64)> {
        let q = self.q;
        let mut out = Vec::new();
        if a + b < 0 {
            return out;
        }
        let jmax = a.div_euclid(q + 1);
        let jmin = (-b - q).div_euclid(q + 1);
        for i in 0..=q {
            for j in jmin..=jmax {
                if q * i + (q + 1) * j <= a && i + (q + 1) * j >= -b {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// The unique monomial x^i y^j with 0 <= i <= q and pole order exactly
    /// k at P.
    pub fn monomial_with_pole(&self, k: i64) -> (i64, i64) {
        let q = self.q;
        let i = (-k).rem_euclid(q + 1);
        let j = (k - q * i) / (q + 1);
        debug_assert_eq!(q * i + (q + 1) * j, k);
        (i, j)
    }

    /// Values of x^i y^j over the evaluation points.  j may be negative:
    /// y vanishes only at Q, which is not an evaluation point.
    pub fn evaluate(&self, i: i64, j: i64) -> Vec<usize> {
        let f = &self.field;
        self.eval_points
            .iter()
            .map(|&(x, y)| {
                let xi = if i == 0 {
                    1
                } else {
                    f.pow(x, i)
                };
                let yj = if j == 0 { 1 } else { f.pow(y, j) };
                f.mul(xi, yj)
            })
            .collect()
    }

    /// Evaluation code C_L(D, aP + bQ).
    pub fn eval_code(&self, a: i64, b: i64) -> LinearCode {
        let rows: Vec<Vec<usize>> = self
            .rr_basis(a, b)
            .into_iter()
            .map(|(i, j)| self.evaluate(i, j))
            .collect();
        let label = format!("C_L(D, {}P{:+}Q) over {}", a, b, self.field);
        LinearCode::from_rows(self.field.clone(), self.n(), rows, label)
    }

    /// Differential code C_Omega(D, aP + bQ), the dual of the evaluation
    /// code with the same divisor.
    pub fn omega_code(&self, a: i64, b: i64) -> LinearCode {
        let mut code = self.eval_code(a, b).dual();
        code.label = format!("C_O(D, {}P{:+}Q) over {}", a, b, self.field);
        code
    }
}

#[derive(Debug, Clone)]
pub struct LinearCode {
    pub field: SmallField,
    pub n: usize,
    pub k: usize,
    /// Row reduced generator matrix, k rows.
    pub gen: Mat,
    pub label: String,
}

pub fn weight(w: &[usize]) -> i64 {
    w.iter().filter(|&&x| x != 0).count() as i64
}

impl LinearCode {
    pub fn from_rows(
        field: SmallField,
        n: usize,
        rows: Vec<Vec<usize>>,
        label: impl Into<String>,
    ) -> Self {
        let mut m = if rows.is_empty() {
            Mat::zeros(0, n)
        } else {
            Mat::from_rows(rows)
        };
        assert_eq!(m.cols, n);
        let pivots = m.rref(&field);
        let k = pivots.len();
        let gen = Mat::from_rows((0..k).map(|r| m.row(r).to_vec()).collect::<Vec<_>>());
        let gen = if k == 0 { Mat::zeros(0, n) } else { gen };
        LinearCode {
            field,
            n,
            k,
            gen,
            label: label.into(),
        }
    }

    pub fn dual(&self) -> LinearCode {
        let ns = self.gen.nullspace(&self.field);
        let rows = (0..ns.rows).map(|r| ns.row(r).to_vec()).collect();
        LinearCode::from_rows(
            self.field.clone(),
            self.n,
            rows,
            format!("dual of {}", self.label),
        )
    }

    pub fn contains(&self, word: &[usize]) -> bool {
        let mut rows: Vec<Vec<usize>> = (0..self.k).map(|r| self.gen.row(r).to_vec()).collect();
        rows.push(word.to_vec());
        Mat::from_rows(rows).rank(&self.field) == self.k
    }

    /// Visit every codeword once, the zero word included.
    pub fn for_each_codeword(&self, mut visit: impl FnMut(&[usize])) {
        let size = self.field.size();
        let mut partial: Vec<Vec<usize>> = vec![vec![0; self.n]];
        let mut coef = vec![0usize; self.k];
        let mut level = 0usize;
        // depth-first over coefficient vectors, keeping partial sums
        loop {
            if level == self.k {
                visit(partial.last().unwrap());
                // backtrack to the deepest level with an unfinished digit
                loop {
                    if level == 0 {
                        return;
                    }
                    level -= 1;
                    partial.pop();
                    if coef[level] + 1 < size {
                        coef[level] += 1;
                        break;
                    }
                    coef[level] = 0;
                }
            }
            let prev = partial.last().unwrap();
            let c = coef[level];
            let next = if c == 0 {
                prev.clone()
            } else {
                let f = &self.field;
                prev.iter()
                    .zip(self.gen.row(level))
                    .map(|(&p, &g)| f.add(p, f.mul(c, g)))
                    .collect()
            };
            partial.push(next);
            level += 1;
        }
    }

    fn enumeration_cost(&self) -> Option<u128> {
        let mut cost: u128 = 1;
        for _ in 0..self.k {
            cost = cost.checked_mul(self.field.size() as u128)?;
            if cost > 200_000_000 {
                return None;
            }
        }
        Some(cost * self.n as u128)
    }

    /// Exact minimum distance; None for the zero code.  Uses codeword
    /// enumeration when the code is small enough and a growing support
    /// search otherwise.
    pub fn min_distance(&self) -> Option<i64> {
        if self.k == 0 {
            return None;
        }
        if self.enumeration_cost().is_some() {
            let mut best = i64::MAX;
            self.for_each_codeword(|w| {
                let wt = weight(w);
                if wt != 0 && wt < best {
                    best = wt;
                }
            });
            return Some(best);
        }
        for d in 1..=self.n {
            if self.word_with_support_of_size(d).is_some() {
                return Some(d as i64);
            }
        }
        None
    }

    fn word_with_support_of_size(&self, d: usize) -> Option<Vec<usize>> {
        let mut subset: Vec<usize> = (0..d).collect();
        loop {
            let outside: Vec<usize> = (0..self.n).filter(|c| !subset.contains(c)).collect();
            if self.gen.rank_of_columns(&self.field, &outside) < self.k {
                // some combination vanishes outside the subset
                let rows: Vec<Vec<usize>> = (0..self.k)
                    .map(|r| outside.iter().map(|&c| self.gen.get(r, c)).collect())
                    .collect();
                let mt = Mat::from_rows(rows).transpose();
                let ns = mt.nullspace(&self.field);
                let m = ns.row(0).to_vec();
                return Some(row_times_mat(&self.field, &m, &self.gen));
            }
            // next subset in lexicographic order
            let mut i = d;
            loop {
                if i == 0 {
                    return None;
                }
                i -= 1;
                if subset[i] < self.n - (d - i) {
                    subset[i] += 1;
                    for j in i + 1..d {
                        subset[j] = subset[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    /// Exact minimum weight over words of self outside sub; None when the
    /// codes coincide.  sub must be a subcode.
    pub fn coset_distance(&self, sub: &LinearCode) -> Option<i64> {
        assert!(sub.k <= self.k);
        if self.k == sub.k {
            return None;
        }
        let checks = sub.dual();
        let f = &self.field;
        let mut best = i64::MAX;
        self.for_each_codeword(|w| {
            let inside = (0..checks.k).all(|r| dot(f, checks.gen.row(r), w) == 0);
            if !inside {
                best = best.min(weight(w));
            }
        });
        Some(best)
    }
}

/// Access structure of the secret sharing scheme for a codimension-one
/// extension big/small: entry A (a coordinate bitmask) is true when the
/// shares indexed by A determine the secret.  A set qualifies exactly when
/// no word of big \ small vanishes on all of A.
pub fn qualified_sets(big: &LinearCode, small: &LinearCode) -> Vec<bool> {
    assert_eq!(big.n, small.n);
    assert_eq!(big.k, small.k + 1);
    let n = big.n;
    assert!(n <= 20, "bitmask enumeration needs small n");
    let f = &big.field;
    (0u32..1 << n)
        .map(|mask| {
            let cols: Vec<usize> = (0..n).filter(|&c| mask >> c & 1 == 1).collect();
            let inside_big = big.k - big.gen.rank_of_columns(f, &cols);
            let inside_small = small.k - small.gen.rank_of_columns(f, &cols);
            inside_big == inside_small
        })
        .collect()
}

/// Size of the smallest qualified set, if any set qualifies.
pub fn smallest_qualified(qualified: &[bool]) -> Option<u32> {
    qualified
        .iter()
        .enumerate()
        .filter(|&(_, &q)| q)
        .map(|(mask, _)| (mask as u32).count_ones())
        .min()
}

/// Size of the largest unqualified set.
pub fn largest_unqualified(qualified: &[bool]) -> Option<u32> {
    qualified
        .iter()
        .enumerate()
        .filter(|&(_, &q)| !q)
        .map(|(mask, _)| (mask as u32).count_ones())
        .max()
}
