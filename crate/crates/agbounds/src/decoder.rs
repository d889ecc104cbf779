//! Majority coset decoding for differential codes on Hermitian curves.
//!
//! One step determines, for an extension of codes big/small of codimension
//! one and a received word y within t of big, the coset of small nearest
//! to y.  The step is powered by a chain A_1 <= ... <= A_w of divisors with
//! A_{i+1} >= A_i + P: products of functions attached to the chain give
//! vectors a_i, b_j whose Hadamard products with y vote on the coset, and
//! with w > 2t the majority vote is always correct.  Peeling one coset
//! after another recovers the codeword.

use crate::bounds::{chain_bound, Witness};
use crate::codes::{weight, HermitianCodes, LinearCode};
use crate::curve::{LatticeDivisor, Point};
use crate::field::SmallField;
use crate::linalg::Mat;
use std::collections::BTreeMap;

fn hadamard_dot(f: &SmallField, a: &[usize], b: &[usize], y: &[usize]) -> usize {
    let mut acc = 0;
    for k in 0..y.len() {
        acc = f.add(acc, f.mul(f.mul(a[k], b[k]), y[k]));
    }
    acc
}

/// Decoder for one codimension-one extension
/// C_Omega(D, G - P) / C_Omega(D, G).
pub struct StepDecoder {
    field: SmallField,
    n: usize,
    pub g: LatticeDivisor,
    pub w: usize,
    /// a[i - 1] = values of f_i, a function with pole divisor A_i and pole
    /// order exactly mult(A_i, P) at P.
    a: Vec<Vec<usize>>,
    /// b[v - 1] = values of g_{w+1-v} (for the function attached to G - A_j,
    /// stored so that a_i * b_{w+1-i} always tags the same nontrivial coset).
    b: Vec<Vec<usize>>,
    /// x = a_1 * b_w; x . c separates the cosets of small in big.
    x: Vec<usize>,
    /// A word of big outside small, used to turn a tag back into a coset
    /// representative.
    h: Vec<usize>,
    /// x . h, nonzero.
    s0: usize,
}

pub struct StepOutcome {
    pub coset_rep: Vec<usize>,
    pub tag: usize,
    /// Vote tally over the coset tags.
    pub votes: BTreeMap<usize, usize>,
    /// Winning votes minus all other votes.
    pub margin: i64,
}

impl StepDecoder {
    pub fn new(codes: &HermitianCodes, g: LatticeDivisor) -> Result<StepDecoder, String> {
        let f = codes.field.clone();
        let n = codes.n();
        let curve = &codes.curve;

        let big = codes.omega_code(g.at_p - 1, g.at_q);
        let small = codes.omega_code(g.at_p, g.at_q);
        if big.k != small.k + 1 {
            return Err(format!(
                "extension at {} is not of codimension one",
                g
            ));
        }

        let thr = curve.class_sub(
            curve.lattice_class(LatticeDivisor::new(g.at_p - 1, g.at_q)),
            curve.canonical_class(),
        );
        let bound = chain_bound(curve, Point::P, thr);
        let chain = match bound.witness {
            Some(Witness::Chain(ch)) => ch,
            _ => Vec::new(),
        };
        let w = chain.len();
        if w == 0 {
            return Err("no chain supports the extension".into());
        }

        let mut a = Vec::with_capacity(w);
        let mut b = vec![Vec::new(); w];
        for (i, div) in chain.iter().enumerate() {
            let (fi, fj) = codes.monomial_with_pole(div.at_p);
            a.push(codes.evaluate(fi, fj));
            let (gi, gj) = codes.monomial_with_pole(g.at_p - div.at_p);
            b[w - 1 - i] = codes.evaluate(gi, gj);
        }

        // boundary checks of the coset bound conditions: one step off the
        // diagonal must stay inside the small function code, the diagonal
        // itself must leave it
        let cl_small = codes.eval_code(g.at_p - 1, g.at_q);
        let cl_big = codes.eval_code(g.at_p, g.at_q);
        let prod = |u: usize, v: usize| -> Vec<usize> {
            (0..n).map(|k| f.mul(a[u][k], b[v][k])).collect()
        };
        for i in 0..w {
            let diag = prod(i, w - 1 - i);
            if !cl_big.contains(&diag) || cl_small.contains(&diag) {
                return Err(format!("chain element {i} fails the coset condition"));
            }
            if i + 2 <= w {
                let off = prod(i, w - 2 - i);
                if !cl_small.contains(&off) {
                    return Err(format!("chain step {i} leaks out of the small code"));
                }
            }
        }

        let h = (0..big.k)
            .map(|r| big.gen.row(r).to_vec())
            .find(|row| !small.contains(row))
            .ok_or("no coset representative in the dual extension")?;
        let x = prod(0, w - 1);
        let s0 = crate::linalg::dot(&f, &x, &h);
        if s0 == 0 {
            return Err("tag word pairs trivially with the coset".into());
        }

        // rescale b so that every diagonal product tags the same coset as x
        let lambdas: Vec<usize> = (1..w)
            .map(|i| f.div(crate::linalg::dot(&f, &prod(i, w - 1 - i), &h), s0))
            .collect();
        for (i, &lam) in (1..w).zip(&lambdas) {
            let inv = f.inv(lam);
            for e in b[w - 1 - i].iter_mut() {
                *e = f.mul(*e, inv);
            }
        }

        Ok(StepDecoder {
            field: f,
            n,
            g,
            w,
            a,
            b,
            x,
            h,
            s0,
        })
    }

    /// Syndromes s[u][v] = (a_{u+1} * b_{v+1}) . y.
    fn syndromes(&self, y: &[usize]) -> Vec<Vec<usize>> {
        let f = &self.field;
        (0..self.w)
            .map(|u| {
                (0..self.w)
                    .map(|v| hadamard_dot(f, &self.a[u], &self.b[v], y))
                    .collect()
            })
            .collect()
    }

    /// A combination a_i + sum alpha_u a_u over u < i with
    /// (a' * b_j) . y = 0 for j <= w - i, if one exists.  Indices are one
    /// based as in the vote sets.
    fn row_witness(&self, s: &[Vec<usize>], i: usize) -> Option<Vec<usize>> {
        let f = &self.field;
        let rows = self.w - i;
        let cols = i - 1;
        let m = Mat::from_rows(
            (0..rows)
                .map(|j| (0..cols).map(|u| s[u][j]).collect())
                .collect::<Vec<_>>(),
        );
        let m = if rows == 0 { Mat::zeros(0, cols) } else { m };
        let rhs: Vec<usize> = (0..rows).map(|j| f.neg(s[i - 1][j])).collect();
        let alpha = m.solve(f, &rhs)?;
        let mut out = self.a[i - 1].clone();
        for (u, &coef) in alpha.iter().enumerate() {
            if coef != 0 {
                for k in 0..self.n {
                    out[k] = f.add(out[k], f.mul(coef, self.a[u][k]));
                }
            }
        }
        Some(out)
    }

    /// A combination b_{w+1-j} + sum beta_v b_v over v <= w - j with
    /// (a_i * b') . y = 0 for i <= j - 1.
    fn col_witness(&self, s: &[Vec<usize>], j: usize) -> Option<Vec<usize>> {
        let f = &self.field;
        let rows = j - 1;
        let cols = self.w - j;
        let m = Mat::from_rows(
            (0..rows)
                .map(|i| (0..cols).map(|v| s[i][v]).collect())
                .collect::<Vec<_>>(),
        );
        let m = if rows == 0 { Mat::zeros(0, cols) } else { m };
        let rhs: Vec<usize> = (0..rows).map(|i| f.neg(s[i][self.w - j])).collect();
        let beta = m.solve(f, &rhs)?;
        let mut out = self.b[self.w - j].clone();
        for (v, &coef) in beta.iter().enumerate() {
            if coef != 0 {
                for k in 0..self.n {
                    out[k] = f.add(out[k], f.mul(coef, self.b[v][k]));
                }
            }
        }
        Some(out)
    }

    /// Majority vote over the witness pairs.  The winning tag x . c selects
    /// the coset of the transmitted word.
    pub fn decode(&self, y: &[usize]) -> Result<StepOutcome, String> {
        assert_eq!(y.len(), self.n);
        let f = &self.field;
        let s = self.syndromes(y);
        let mut votes: BTreeMap<usize, usize> = BTreeMap::new();
        for i in 1..=self.w {
            let (Some(ai), Some(bi)) = (self.row_witness(&s, i), self.col_witness(&s, i))
            else {
                continue;
            };
            let tag = hadamard_dot(f, &ai, &bi, y);
            *votes.entry(tag).or_insert(0) += 1;
        }
        if votes.is_empty() {
            return Err("no coset received any vote".into());
        }
        let total: usize = votes.values().sum();
        let (&tag, &best) = votes.iter().max_by_key(|&(_, &c)| c).unwrap();
        if votes.values().filter(|&&c| c == best).count() > 1 {
            return Err("vote is tied between cosets".into());
        }
        let margin = best as i64 - (total - best) as i64;
        let scale = f.div(tag, self.s0);
        let coset_rep = self.h.iter().map(|&e| f.mul(scale, e)).collect();
        Ok(StepOutcome {
            coset_rep,
            tag,
            votes,
            margin,
        })
    }

    /// The tag x . c of an arbitrary word, for checking votes against the
    /// transmitted codeword.
    pub fn tag_of(&self, c: &[usize]) -> usize {
        crate::linalg::dot(&self.field, &self.x, c)
    }
}

pub struct DecodeOutcome {
    pub codeword: Vec<usize>,
    pub error: Vec<usize>,
    /// Majority margin of each peeling step, smallest first guarantees
    /// correctness when every margin stays positive.
    pub margins: Vec<i64>,
}

/// Full decoder for C_Omega(D, G): peels codimension-one cosets until the
/// code is exhausted, then reads off the error as the residual.
pub struct MajorityDecoder {
    field: SmallField,
    n: usize,
    pub code: LinearCode,
    pub t: i64,
    steps: Vec<StepDecoder>,
    /// Smallest chain length over the steps; decoding is guaranteed for
    /// 2t < min_w.
    pub min_w: usize,
}

impl MajorityDecoder {
    pub fn new(codes: &HermitianCodes, g0: LatticeDivisor, t: i64) -> Result<Self, String> {
        let code = codes.omega_code(g0.at_p, g0.at_q);
        let mut steps = Vec::new();
        let mut cur = g0;
        let mut dim = code.k;
        let limit = g0.at_p + codes.n() as i64 + 4 * codes.curve.genus() + 16;
        while dim > 0 {
            if cur.at_p > limit {
                return Err("peeling fails to exhaust the code".into());
            }
            let next = LatticeDivisor::new(cur.at_p + 1, cur.at_q);
            let next_dim = codes.omega_code(next.at_p, next.at_q).k;
            if next_dim < dim {
                assert_eq!(next_dim, dim - 1);
                let step = StepDecoder::new(codes, next)?;
                if step.w as i64 <= 2 * t {
                    return Err(format!(
                        "chain of length {} at {} cannot correct {} errors",
                        step.w, next, t
                    ));
                }
                steps.push(step);
            }
            cur = next;
            dim = next_dim;
        }
        let min_w = steps.iter().map(|s| s.w).min().unwrap_or(0);
        Ok(MajorityDecoder {
            field: codes.field.clone(),
            n: codes.n(),
            code,
            t,
            steps,
            min_w,
        })
    }

    /// Chain lengths of the peeling steps, aligned with the margins reported
    /// by decode.
    pub fn step_widths(&self) -> Vec<usize> {
        self.steps.iter().map(|s| s.w).collect()
    }

    pub fn decode(&self, y: &[usize]) -> Result<DecodeOutcome, String> {
        assert_eq!(y.len(), self.n);
        let f = &self.field;
        let mut residual = y.to_vec();
        let mut margins = Vec::with_capacity(self.steps.len());
        for step in &self.steps {
            let out = step.decode(&residual)?;
            for (r, c) in residual.iter_mut().zip(&out.coset_rep) {
                *r = f.sub(*r, *c);
            }
            margins.push(out.margin);
        }
        if weight(&residual) > self.t {
            return Err(format!(
                "residual weight {} exceeds the radius {}",
                weight(&residual),
                self.t
            ));
        }
        let codeword = y
            .iter()
            .zip(&residual)
            .map(|(&a, &b)| f.sub(a, b))
            .collect::<Vec<_>>();
        debug_assert!(self.code.contains(&codeword));
        Ok(DecodeOutcome {
            codeword,
            error: residual,
            margins,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn add_error(
        f: &SmallField,
        c: &[usize],
        positions: &[usize],
        values: &[usize],
    ) -> Vec<usize> {
        let mut y = c.to_vec();
        for (&p, &v) in positions.iter().zip(values) {
            y[p] = f.add(y[p], v);
        }
        y
    }

    #[test]
    fn step_conditions_hold_on_construction() {
        let h = HermitianCodes::new(2).unwrap();
        let step = StepDecoder::new(&h, LatticeDivisor::new(5, 0)).unwrap();
        assert!(step.w >= 3, "w = {}", step.w);
    }

    #[test]
    fn zero_error_words_decode_to_themselves() {
        let h = HermitianCodes::new(2).unwrap();
        let dec = MajorityDecoder::new(&h, LatticeDivisor::new(4, 0), 1).unwrap();
        let mut seen = 0;
        dec.code.clone().for_each_codeword(|c| {
            let out = dec.decode(c).unwrap();
            assert_eq!(out.codeword, c);
            assert_eq!(weight(&out.error), 0);
            seen += 1;
        });
        assert!(seen > 1);
    }

    #[test]
    fn single_errors_decode_exhaustively() {
        let h = HermitianCodes::new(2).unwrap();
        let f = &h.field;
        let dec = MajorityDecoder::new(&h, LatticeDivisor::new(4, 0), 1).unwrap();
        assert!(dec.min_w >= 3);
        dec.code.clone().for_each_codeword(|c| {
            for pos in 0..h.n() {
                for val in 1..f.size() {
                    let y = add_error(f, c, &[pos], &[val]);
                    let out = dec.decode(&y).unwrap();
                    assert_eq!(out.codeword, c);
                    assert!(out
                        .margins
                        .iter()
                        .all(|&m| m >= dec.min_w as i64 - 2 * dec.t));
                }
            }
        });
    }

    #[test]
    fn step_votes_tag_the_transmitted_coset() {
        let h = HermitianCodes::new(2).unwrap();
        let f = &h.field;
        let step = StepDecoder::new(&h, LatticeDivisor::new(5, 0)).unwrap();
        let big = h.omega_code(4, 0);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let coefs: Vec<usize> = (0..big.k).map(|_| rng.gen_range(0..f.size())).collect();
            let c = crate::linalg::row_times_mat(f, &coefs, &big.gen);
            let pos = rng.gen_range(0..h.n());
            let val = rng.gen_range(1..f.size());
            let y = add_error(f, &c, &[pos], &[val]);
            let out = step.decode(&y).unwrap();
            assert_eq!(out.tag, step.tag_of(&c));
            assert!(out.margin >= step.w as i64 - 2);
        }
    }

    #[test]
    fn double_errors_on_a_larger_code() {
        let h = HermitianCodes::new(3).unwrap();
        let f = &h.field;
        let dec = MajorityDecoder::new(&h, LatticeDivisor::new(12, 0), 2).unwrap();
        assert!(dec.min_w >= 5, "min_w = {}", dec.min_w);
        let k = dec.code.k;
        assert!(k > 0);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..40 {
            let coefs: Vec<usize> = (0..k).map(|_| rng.gen_range(0..f.size())).collect();
            let c = crate::linalg::row_times_mat(f, &coefs, &dec.code.gen);
            let p1 = rng.gen_range(0..h.n());
            let mut p2 = rng.gen_range(0..h.n());
            while p2 == p1 {
                p2 = rng.gen_range(0..h.n());
            }
            let v1 = rng.gen_range(1..f.size());
            let v2 = rng.gen_range(1..f.size());
            let y = add_error(f, &c, &[p1, p2], &[v1, v2]);
            let out = dec.decode(&y).unwrap();
            assert_eq!(out.codeword, c);
            assert!(out
                .margins
                .iter()
                .all(|&m| m >= dec.min_w as i64 - 2 * dec.t));
        }
    }
}
