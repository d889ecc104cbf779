//! Delta sets: the divisor classes counted by the coset bounds.
//!
//! For a point P and a threshold class C, the delta set holds the classes A
//! with A in Gamma_P but A - C not in Gamma_P.  Restricting the set to a line
//! B + iP gives the index sets I_P(B,C) whose sizes drive the order bound;
//! the K/N tables tabulate how those sets change under single-point steps of
//! B or C.

use crate::curve::{DivClass, Point, TwoPointCurve};
use serde::Serialize;

/// A in Gamma_pt with A - thr not in Gamma_pt.
pub fn in_delta(c: &TwoPointCurve, pt: Point, thr: DivClass, a: DivClass) -> bool {
    c.gamma_contains(pt, a) && !c.gamma_contains(pt, c.class_sub(a, thr))
}

/// A in the semigroup ideal: both A and A - thr in Gamma_pt.
pub fn in_gamma_ideal(c: &TwoPointCurve, pt: Point, thr: DivClass, a: DivClass) -> bool {
    c.gamma_contains(pt, a) && c.gamma_contains(pt, c.class_sub(a, thr))
}

fn line_window(c: &TwoPointCurve, thr: DivClass, base: DivClass) -> (i64, i64) {
    // Members have degree in [0, deg thr + 2g - 1].
    (-base.deg, thr.deg + 2 * c.genus() - 1 - base.deg)
}

/// I_pt(base, thr): indices i with base + i*pt in the delta set.
pub fn line_indices(c: &TwoPointCurve, pt: Point, thr: DivClass, base: DivClass) -> Vec<i64> {
    let (lo, hi) = line_window(c, thr, base);
    (lo..=hi)
        .filter(|&i| in_delta(c, pt, thr, c.class_shift(base, pt, i)))
        .collect()
}

/// I*_pt(base, thr) = I_pt(base - thr, -thr).
pub fn line_indices_star(c: &TwoPointCurve, pt: Point, thr: DivClass, base: DivClass) -> Vec<i64> {
    line_indices(c, pt, c.class_neg(thr), c.class_sub(base, thr))
}

pub fn line_count(c: &TwoPointCurve, pt: Point, thr: DivClass, base: DivClass) -> i64 {
    line_indices(c, pt, thr, base).len() as i64
}

/// Part of the line with i <= 0, i.e. divisors below the base point.
pub fn indices_le(c: &TwoPointCurve, pt: Point, thr: DivClass, base: DivClass) -> Vec<i64> {
    line_indices(c, pt, thr, base)
        .into_iter()
        .filter(|&i| i <= 0)
        .collect()
}

/// Part of the line with i >= 1.
pub fn indices_ge(c: &TwoPointCurve, pt: Point, thr: DivClass, base: DivClass) -> Vec<i64> {
    line_indices(c, pt, thr, base)
        .into_iter()
        .filter(|&i| i >= 1)
        .collect()
}

pub fn count_le(c: &TwoPointCurve, pt: Point, thr: DivClass, base: DivClass) -> i64 {
    indices_le(c, pt, thr, base).len() as i64
}

pub fn count_ge(c: &TwoPointCurve, pt: Point, thr: DivClass, base: DivClass) -> i64 {
    indices_ge(c, pt, thr, base).len() as i64
}

fn count_congruent(lo: i64, hi: i64, rho: i64, m: i64) -> i64 {
    if hi < lo {
        return 0;
    }
    let first = lo + (rho - lo).rem_euclid(m);
    if first > hi {
        0
    } else {
        (hi - first) / m + 1
    }
}

/// Size of I_pt(base, thr) in O(m) time.  Within one residue class of the
/// element degree d the two membership conditions reduce to an interval.
pub fn line_size(c: &TwoPointCurve, pt: Point, thr: DivClass, base: DivClass) -> i64 {
    let m = c.period();
    let mut n = 0;
    for rho in 0..m {
        let (lo, hi) = match pt {
            Point::P => {
                let r = (base.res - base.deg + rho).rem_euclid(m);
                (c.d_p(r), thr.deg + c.d_p(r - thr.res) - 1)
            }
            Point::Q => {
                let s = rho - base.res;
                (c.d_q(s), thr.deg + c.d_q(s - thr.deg + thr.res) - 1)
            }
        };
        n += count_congruent(lo, hi, rho, m);
    }
    n
}

/// All classes of the delta set, sorted by degree then residue.
pub fn delta_classes(c: &TwoPointCurve, pt: Point, thr: DivClass) -> Vec<DivClass> {
    let mut out = Vec::new();
    for deg in 0..=(thr.deg + 2 * c.genus() - 1) {
        for res in 0..c.period() {
            let a = c.class(deg, res);
            if in_delta(c, pt, thr, a) {
                out.push(a);
            }
        }
    }
    out
}

/// Lines in the pt-direction fall into m residue classes.  Returns a
/// degree-zero base class for each, paired with its delta-set size.
pub fn line_counts(c: &TwoPointCurve, pt: Point, thr: DivClass) -> Vec<(DivClass, i64)> {
    (0..c.period())
        .map(|r| {
            let base = match pt {
                // P-lines are indexed by (deg - res) mod m.
                Point::P => c.class(0, -r),
                // Q-lines are indexed by res.
                Point::Q => c.class(0, r),
            };
            (base, line_size(c, pt, thr, base))
        })
        .collect()
}

/// Largest delta-set size over all lines in the pt-direction.
pub fn best_line(c: &TwoPointCurve, pt: Point, thr: DivClass) -> (DivClass, i64) {
    line_counts(c, pt, thr)
        .into_iter()
        .max_by_key(|&(_, n)| n)
        .unwrap()
}

// ----- step tables -----

/// How a delta set changes under a single-point step, following the three
/// membership criteria for A = B0 + kP + lQ and C = C0 + iP + jQ + Q.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TableKind {
    /// New element of Delta_P(B0 + lQ, C + Q) over Delta_P(B0 + lQ, C);
    /// l and i fixed, j varies.
    Step,
    /// Element of Delta_P(B0 + lQ, C + Q) whose predecessor A - Q is not in
    /// Delta_P(B0 + lQ - Q, C + Q); i and j fixed, l varies.
    Up,
    /// Element of Delta_P(B0 + lQ, C + Q) whose successor A + Q is not in
    /// Delta_P(B0 + lQ + Q, C + Q); i and j fixed, l varies.
    Down,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct TableCell {
    /// Value of the varying parameter (j for Step, l for Up and Down).
    pub var: i64,
    /// Degree of the reference discrepancy: d'_Q(l - j) for Step and Down,
    /// d_Q(l) for Up.
    pub d_ref: i64,
    /// Candidate P-multiplicity of the new element.
    pub k: i64,
    /// Degree of the discrepancy at k: d_P(k) for Step and Down,
    /// d'_P(k - i) for Up.
    pub d_k: i64,
    /// member is equivalent to diff <= i + j.
    pub diff: i64,
    pub member: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct StepTable {
    pub kind: TableKind,
    pub b0: DivClass,
    pub c0: DivClass,
    pub i: i64,
    /// Fixed j (Up and Down) or fixed l (Step).
    pub fixed: i64,
    pub cells: Vec<TableCell>,
}

fn sigma_of(c: &TwoPointCurve, base: DivClass, k: i64) -> i64 {
    c.sigma_from(base.res, k) - base.deg
}

fn tau_of(c: &TwoPointCurve, base: DivClass, j: i64) -> i64 {
    c.tau_from(base.res, j + base.deg)
}

/// Table for the differences Delta(B0+lQ, C0+iP+jQ+Q) minus
/// Delta(B0+lQ, C0+iP+jQ), at fixed l and i, for j in the given range.
pub fn step_table(
    c: &TwoPointCurve,
    b0: DivClass,
    c0: DivClass,
    ell: i64,
    i: i64,
    j_range: impl IntoIterator<Item = i64>,
) -> StepTable {
    let b0c0 = c.class_sub(b0, c0);
    let cells = j_range
        .into_iter()
        .map(|j| {
            let tp = tau_of(c, b0c0, ell - j);
            let k = tp + i;
            let sk = sigma_of(c, b0, k);
            TableCell {
                var: j,
                d_ref: tp + (ell - j),
                k,
                d_k: k + sk,
                diff: sk - ell + i + j,
                member: sk <= ell,
            }
        })
        .collect();
    StepTable {
        kind: TableKind::Step,
        b0,
        c0,
        i,
        fixed: ell,
        cells,
    }
}

/// Table for elements entering at the bottom of a line as the base moves up,
/// at fixed i and j, for l in the given range.
pub fn up_table(
    c: &TwoPointCurve,
    b0: DivClass,
    c0: DivClass,
    i: i64,
    j: i64,
    ell_range: impl IntoIterator<Item = i64>,
) -> StepTable {
    let b0c0 = c.class_sub(b0, c0);
    let cells = ell_range
        .into_iter()
        .map(|ell| {
            let k = tau_of(c, b0, ell);
            let sp = sigma_of(c, b0c0, k - i);
            TableCell {
                var: ell,
                d_ref: k + ell,
                k,
                d_k: (k - i) + sp,
                diff: ell + i - sp,
                member: sp >= ell - j,
            }
        })
        .collect();
    StepTable {
        kind: TableKind::Up,
        b0,
        c0,
        i,
        fixed: j,
        cells,
    }
}

/// Table for elements leaving at the top of a line as the base moves up,
/// at fixed i and j, for l in the given range.
pub fn down_table(
    c: &TwoPointCurve,
    b0: DivClass,
    c0: DivClass,
    i: i64,
    j: i64,
    ell_range: impl IntoIterator<Item = i64>,
) -> StepTable {
    let mut t = StepTable {
        kind: TableKind::Down,
        b0,
        c0,
        i,
        fixed: j,
        cells: Vec::new(),
    };
    for ell in ell_range {
        let cell = step_table(c, b0, c0, ell, i, [j]).cells[0];
        t.cells.push(TableCell { var: ell, ..cell });
    }
    t
}

impl StepTable {
    /// Multi-line rendering in the style of a discrepancy worksheet; the k of
    /// a non-member is parenthesized.
    pub fn render(&self) -> String {
        let var_name = match self.kind {
            TableKind::Step => "j",
            TableKind::Up | TableKind::Down => "l",
        };
        let mut rows = [
            vec![var_name.to_string()],
            vec!["d_ref".to_string()],
            vec!["k".to_string()],
            vec!["d_k".to_string()],
            vec!["diff".to_string()],
            vec!["N".to_string()],
        ];
        for cell in &self.cells {
            rows[0].push(cell.var.to_string());
            rows[1].push(cell.d_ref.to_string());
            rows[2].push(if cell.member {
                cell.k.to_string()
            } else {
                format!("({})", cell.k)
            });
            rows[3].push(cell.d_k.to_string());
            rows[4].push(cell.diff.to_string());
            rows[5].push(if cell.member { "1" } else { "0" }.to_string());
        }
        let widths: Vec<usize> = (0..rows[0].len())
            .map(|col| rows.iter().map(|r| r[col].len()).max().unwrap())
            .collect();
        rows.iter()
            .map(|r| {
                r.iter()
                    .zip(&widths)
                    .map(|(s, w)| format!("{:>width$}", s, width = w))
                    .collect::<Vec<_>>()
                    .join("  ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

// ----- partition of {-2g, ..., 4g-1} -----

/// Partition of the interval {-2g, ..., 4g-1} into three nongap and three gap
/// parts of size g each, relative to degree-zero classes B0 and C0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SixPartition {
    pub n1: Vec<i64>,
    pub g1: Vec<i64>,
    pub n2: Vec<i64>,
    pub g2: Vec<i64>,
    pub n3: Vec<i64>,
    pub g3: Vec<i64>,
}

pub fn partition_6g(c: &TwoPointCurve, b0: DivClass, c0: DivClass) -> SixPartition {
    assert_eq!(b0.deg, 0, "base class must have degree zero");
    assert_eq!(c0.deg, 0, "threshold class must have degree zero");
    let g = c.genus();
    let in_gamma_p = |a: DivClass| c.gamma_contains(Point::P, a);
    let split = |lo: i64, hi: i64, test: &dyn Fn(i64) -> bool| {
        let mut yes = Vec::new();
        let mut no = Vec::new();
        for k in lo..=hi {
            if test(k) {
                yes.push(k);
            } else {
                no.push(k);
            }
        }
        (yes, no)
    };
    let b0c0 = c.class_sub(b0, c0);
    let (n1, g1) = split(-2 * g, -1, &|k| {
        in_gamma_p(c.class_shift(c.class_shift(b0c0, Point::Q, 2 * g), Point::P, k))
    });
    let (n2, g2) = split(0, 2 * g - 1, &|k| {
        in_gamma_p(c.class_shift(b0, Point::P, k))
    });
    let (n3, g3) = split(2 * g, 4 * g - 1, &|k| {
        in_gamma_p(c.class_shift(c.class_shift(b0c0, Point::Q, -2 * g), Point::P, k))
    });
    SixPartition {
        n1,
        g1,
        n2,
        g2,
        n3,
        g3,
    }
}
