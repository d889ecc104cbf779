//! Lower bounds for minimum distances and coset distances.
//!
//! All bounds are stated on divisor classes of a [`TwoPointCurve`].  For a
//! differential code with divisor G = K + C every bound below returns a lower
//! bound for the weight of words in the code (or in a coset of a code pair),
//! valid whenever the evaluation divisor D avoids the points in `excluded`.
//! For an evaluation code with divisor G take C = D - G instead.

use crate::curve::{DivClass, LatticeDivisor, NumericalSemigroup, Point, TwoPointCurve};
use crate::delta;
use serde::Serialize;
use std::collections::HashMap;

/// Evidence attached to a bound, enough to re-check it independently.
#[derive(Debug, Clone, Serialize)]
pub enum Witness {
    /// Divisors A_1 <= ... <= A_w in the delta set, each step increasing the
    /// multiplicity at the distinguished point.
    Chain(Vec<LatticeDivisor>),
    /// Decomposition K + C = A + B + Z.
    Decomposition {
        a: DivClass,
        b: DivClass,
        z: LatticeDivisor,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundResult {
    pub method: String,
    pub value: i64,
    /// Points the evaluation divisor must avoid for the bound to hold.
    pub excluded: Vec<Point>,
    pub witness: Option<Witness>,
}

/// The hypotheses of a bound are not met by the given arguments.  This is a
/// verdict rather than an error; the CLI reports it with exit status 1.
#[derive(Debug, Clone, Serialize)]
pub struct Inapplicable {
    pub method: String,
    pub reason: String,
}

impl std::fmt::Display for Inapplicable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} does not apply: {}", self.method, self.reason)
    }
}

pub type Outcome = Result<BoundResult, Inapplicable>;

fn point_set(pts: impl IntoIterator<Item = Point>) -> Vec<Point> {
    let mut has = [false; 2];
    for p in pts {
        has[matches!(p, Point::Q) as usize] = true;
    }
    let mut out = Vec::new();
    if has[0] {
        out.push(Point::P);
    }
    if has[1] {
        out.push(Point::Q);
    }
    out
}

/// Designed distance: every nonzero word of the code with divisor K + C has
/// weight at least deg C.
pub fn goppa(_c: &TwoPointCurve, thr: DivClass) -> BoundResult {
    BoundResult {
        method: "goppa".into(),
        value: thr.deg,
        excluded: Vec::new(),
        witness: None,
    }
}

/// Floor bound.  For K + C = A + B + Z with Z effective and disjoint from D,
/// if L(A + Z) = L(A) and L(B + Z) = L(B) then w >= deg C + deg Z.
pub fn floor(
    c: &TwoPointCurve,
    thr: DivClass,
    a: DivClass,
    b: DivClass,
    z: LatticeDivisor,
) -> Outcome {
    let method = "floor";
    if !z.is_effective() {
        return Err(Inapplicable {
            method: method.into(),
            reason: format!("Z = {} is not effective", z),
        });
    }
    let lhs = c.class_add(c.canonical_class(), thr);
    let rhs = c.class_add(c.class_add(a, b), c.lattice_class(z));
    if lhs != rhs {
        return Err(Inapplicable {
            method: method.into(),
            reason: format!("K + C = {} but A + B + Z = {}", lhs, rhs),
        });
    }
    let zc = c.lattice_class(z);
    for (name, base) in [("A", a), ("B", b)] {
        let plain = c.dim_l(base);
        let raised = c.dim_l(c.class_add(base, zc));
        if plain != raised {
            return Err(Inapplicable {
                method: method.into(),
                reason: format!(
                    "L({name} + Z) has dimension {raised}, L({name}) has dimension {plain}"
                ),
            });
        }
    }
    Ok(BoundResult {
        method: method.into(),
        value: thr.deg + z.deg(),
        excluded: z.support(),
        witness: Some(Witness::Decomposition { a, b, z }),
    })
}

/// Effective divisor supported on P and Q in the given class, if one exists.
fn effective_two_point_rep(c: &TwoPointCurve, cls: DivClass) -> Option<LatticeDivisor> {
    if c.has_effective_rep(cls) {
        Some(c.canonical_rep(cls))
    } else {
        None
    }
}

/// Dimension form of the decomposition bound.  For K + C = A + B + Z with Z
/// effective and disjoint from D,
/// w >= l(A) - l(A - C) + l(B) - l(B - C).
pub fn abz_code(c: &TwoPointCurve, thr: DivClass, a: DivClass, b: DivClass) -> Outcome {
    let method = "abz";
    let zc = c.class_sub(c.class_add(c.canonical_class(), thr), c.class_add(a, b));
    let z = match effective_two_point_rep(c, zc) {
        Some(z) => z,
        None => {
            return Err(Inapplicable {
                method: method.into(),
                reason: format!("K + C - A - B = {} has no effective representative", zc),
            })
        }
    };
    let value = c.dim_l(a) - c.dim_l(c.class_sub(a, thr)) + c.dim_l(b)
        - c.dim_l(c.class_sub(b, thr));
    Ok(BoundResult {
        method: method.into(),
        value,
        excluded: z.support(),
        witness: Some(Witness::Decomposition { a, b, z }),
    })
}

/// Coset form of the decomposition bound.  For K + C = A + B + Z with Z
/// effective, the coset distance in the pt direction is at least
/// #Delta_pt(<=A, C) + #Delta_pt(<=B, C), with supp Z and pt avoided by D.
/// A is derived from the other three divisors.
pub fn abz_coset(
    c: &TwoPointCurve,
    pt: Point,
    thr: DivClass,
    b: DivClass,
    z: LatticeDivisor,
) -> Outcome {
    let method = "abz-coset";
    if !z.is_effective() {
        return Err(Inapplicable {
            method: method.into(),
            reason: format!("Z = {} is not effective", z),
        });
    }
    let a = c.class_sub(
        c.class_add(c.canonical_class(), thr),
        c.class_add(b, c.lattice_class(z)),
    );
    let value = delta::count_le(c, pt, thr, a) + delta::count_le(c, pt, thr, b);
    Ok(BoundResult {
        method: method.into(),
        value,
        excluded: point_set(z.support().into_iter().chain([pt])),
        witness: Some(Witness::Decomposition { a, b, z }),
    })
}

/// Check a chain witness: every divisor lies in Delta_pt(C), the multiplicity
/// at pt strictly increases, the other multiplicity never decreases.
pub fn verify_chain(
    c: &TwoPointCurve,
    pt: Point,
    thr: DivClass,
    chain: &[LatticeDivisor],
) -> Result<(), String> {
    for d in chain {
        if !delta::in_delta(c, pt, thr, c.lattice_class(*d)) {
            return Err(format!("{} is not in the delta set", d));
        }
    }
    for pair in chain.windows(2) {
        let (x, y) = (pair[0], pair[1]);
        if y.mult(pt) <= x.mult(pt) || y.mult(pt.other()) < x.mult(pt.other()) {
            return Err(format!("{} to {} is not a valid step", x, y));
        }
    }
    Ok(())
}

/// Longest chain inside Delta_pt(C), found by dynamic programming over the
/// multiplicity lattice.  A chain A_1 <= ... <= A_w bounds the coset distance
/// in the pt direction by w, with D avoiding supp(A_w - A_1).
///
/// Translating a chain by a multiple of m(pt - other) moves it along the same
/// delta lines, so the search normalizes the starting multiplicity at the
/// other point into [0, m).  The reported witness is shifted back so that the
/// first divisor has other-multiplicity in (-m, 0].
pub fn chain_bound(c: &TwoPointCurve, pt: Point, thr: DivClass) -> BoundResult {
    let method = "chain";
    let m = c.period();
    let dmax = thr.deg + 2 * c.genus() - 1;
    if dmax < 0 {
        return BoundResult {
            method: method.into(),
            value: 0,
            excluded: Vec::new(),
            witness: Some(Witness::Chain(Vec::new())),
        };
    }
    let kmin = -(m - 1);
    let h = (dmax + m) as usize; // other-point multiplicities 0..h
    let w = (dmax - kmin + 1) as usize; // pt multiplicities kmin..=dmax
    let class_at = |k: i64, l: i64| match pt {
        Point::P => c.class(k + l, k),
        Point::Q => c.class(k + l, l),
    };
    let member = |k: i64, l: i64| delta::in_delta(c, pt, thr, class_at(k, l));

    let idx = |ki: usize, li: usize| ki * h + li;
    let mut dp = vec![0i64; w * h];
    let mut best_prev = vec![0i64; h];
    for ki in 0..w {
        let k = kmin + ki as i64;
        let mut run = 0i64;
        for li in 0..h {
            run = run.max(best_prev[li]);
            dp[idx(ki, li)] = if member(k, li as i64) { run + 1 } else { 0 };
        }
        for li in 0..h {
            best_prev[li] = best_prev[li].max(dp[idx(ki, li)]);
        }
    }
    let value = dp.iter().copied().max().unwrap_or(0);

    let mut chain = Vec::new();
    if value > 0 {
        // When a full delta line attains the optimum its endpoints come out
        // in closed form; prefer that witness.
        let mut from_line = None;
        for (base, n) in delta::line_counts(c, pt, thr) {
            if n == value {
                let lam = match pt {
                    Point::P => (-base.res).rem_euclid(m),
                    Point::Q => base.res,
                };
                let l0 = if lam > 0 { lam - m } else { 0 };
                let line_base = match pt {
                    Point::P => c.class(l0, 0),
                    Point::Q => c.class(l0, l0),
                };
                let divisors = delta::line_indices(c, pt, thr, line_base)
                    .into_iter()
                    .map(|i| match pt {
                        Point::P => LatticeDivisor::new(i, l0),
                        Point::Q => LatticeDivisor::new(l0, i),
                    })
                    .collect::<Vec<_>>();
                from_line = Some(divisors);
                break;
            }
        }
        chain = from_line.unwrap_or_else(|| {
            // Backtrack through the table.
            let (mut ki, mut li) = (0usize, 0usize);
            'found: for i in 0..w {
                for j in 0..h {
                    if dp[idx(i, j)] == value {
                        ki = i;
                        li = j;
                        break 'found;
                    }
                }
            }
            let mut cells = vec![(ki, li)];
            let mut v = value - 1;
            while v > 0 {
                let (ck, cl) = *cells.last().unwrap();
                'pred: for i in (0..ck).rev() {
                    for j in (0..=cl).rev() {
                        if dp[idx(i, j)] == v {
                            cells.push((i, j));
                            break 'pred;
                        }
                    }
                }
                v -= 1;
            }
            cells.reverse();
            let mut out: Vec<LatticeDivisor> = cells
                .into_iter()
                .map(|(i, j)| match pt {
                    Point::P => LatticeDivisor::new(kmin + i as i64, j as i64),
                    Point::Q => LatticeDivisor::new(j as i64, kmin + i as i64),
                })
                .collect();
            let first_other = out[0].mult(pt.other());
            let t = (first_other + m - 1).div_euclid(m);
            if t != 0 {
                for d in &mut out {
                    *d = match pt {
                        Point::P => LatticeDivisor::new(d.at_p + t * m, d.at_q - t * m),
                        Point::Q => LatticeDivisor::new(d.at_p - t * m, d.at_q + t * m),
                    };
                }
            }
            out
        });
        debug_assert_eq!(chain.len() as i64, value);
        debug_assert!(verify_chain(c, pt, thr, &chain).is_ok());
    }

    let excluded = if chain.len() >= 2 {
        let first = chain[0];
        let last = chain[chain.len() - 1];
        point_set(
            LatticeDivisor::new(last.at_p - first.at_p, last.at_q - first.at_q).support(),
        )
    } else {
        Vec::new()
    };
    BoundResult {
        method: method.into(),
        value,
        excluded,
        witness: Some(Witness::Chain(chain)),
    }
}

/// Per-step coset bound used inside the iterated bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StepBound {
    /// Largest delta line through a degree-zero base, as in the order bound.
    Order,
    /// Optimized decomposition count with Z supported at the opposite point,
    /// multiplicity at most z_cap.
    Abz { z_cap: i64 },
    /// Longest-chain dynamic program.
    Chain,
    /// Best of the three.
    Best { z_cap: i64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StarStrategy {
    pub step: StepBound,
    /// Recursion levels below this depth use `step`; deeper levels fall back
    /// to the plain order step.
    pub depth: i64,
}

impl StarStrategy {
    pub fn order() -> Self {
        StarStrategy {
            step: StepBound::Order,
            depth: 0,
        }
    }

    pub fn method_name(&self) -> &'static str {
        match self.step {
            StepBound::Order => "order",
            StepBound::Abz { .. } => "order+abz",
            StepBound::Chain => "order+chain",
            StepBound::Best { .. } => "order+best",
        }
    }
}

fn bit(pt: Point) -> u8 {
    match pt {
        Point::P => 1,
        Point::Q => 2,
    }
}

fn mask_points(mask: u8) -> Vec<Point> {
    let mut out = Vec::new();
    if mask & 1 != 0 {
        out.push(Point::P);
    }
    if mask & 2 != 0 {
        out.push(Point::Q);
    }
    out
}

/// Best single-step decomposition count in the pt direction: maximize
/// #Delta_pt(<=A, C) + #Delta_pt(<=B, C) over B and Z = z * other, z <= cap.
/// Returns the value and the z used by the optimum.
fn abz_step(c: &TwoPointCurve, pt: Point, thr: DivClass, z_cap: i64) -> (i64, i64) {
    let m = c.period();
    let dmax = thr.deg + 2 * c.genus() - 1;
    let degs: Vec<Vec<i64>> = (0..m)
        .map(|lam| {
            let base = match pt {
                Point::P => c.class(0, -lam),
                Point::Q => c.class(0, lam),
            };
            delta::line_indices(c, pt, thr, base)
        })
        .collect();
    let cnt_le = |lam: i64, d: i64| -> i64 {
        let v = &degs[lam.rem_euclid(m) as usize];
        v.partition_point(|&x| x <= d) as i64
    };
    let cnt_ge = |lam: i64, d: i64| -> i64 {
        let v = &degs[lam.rem_euclid(m) as usize];
        (v.len() - v.partition_point(|&x| x < d)) as i64
    };
    let zmax = z_cap.clamp(0, m - 1);
    let mut best = (0, 0);
    for lam in 0..m {
        for z in 0..=zmax {
            for d in -1..=dmax {
                let v = cnt_le(lam, d) + cnt_ge(lam + z, d + 1 + z);
                if v > best.0 {
                    best = (v, z);
                }
            }
        }
    }
    best
}

/// A step at T counts toward the minimum unless the coset in the T direction
/// is trivially empty (-C in Gamma_T).  The search may restrict itself to
/// points where C = 0, C is outside Gamma_T, or the step is free.
fn eligible(c: &TwoPointCurve, thr: DivClass, t: Point) -> bool {
    thr == c.zero_class() || !c.gamma_contains(t, thr) || c.gamma_contains(t, c.class_neg(thr))
}

fn step_value(c: &TwoPointCurve, t: Point, thr: DivClass, step: StepBound) -> (i64, u8) {
    match step {
        StepBound::Order => (delta::best_line(c, t, thr).1, bit(t)),
        StepBound::Abz { z_cap } => {
            let (v, z) = abz_step(c, t, thr, z_cap);
            let mut mask = bit(t);
            if z > 0 {
                mask |= bit(t.other());
            }
            (v, mask)
        }
        StepBound::Chain => {
            let r = chain_bound(c, t, thr);
            let mut mask = bit(t);
            for p in r.excluded {
                mask |= bit(p);
            }
            (r.value, mask)
        }
        StepBound::Best { z_cap } => {
            let mut best = step_value(c, t, thr, StepBound::Order);
            for alt in [
                step_value(c, t, thr, StepBound::Abz { z_cap }),
                step_value(c, t, thr, StepBound::Chain),
            ] {
                if alt.0 > best.0 {
                    best = alt;
                }
            }
            best
        }
    }
}

fn star_go(
    c: &TwoPointCurve,
    thr: DivClass,
    strategy: StarStrategy,
    level: i64,
    memo: &mut HashMap<(i64, i64, bool), (i64, u8)>,
) -> (i64, u8) {
    if thr.deg >= 2 * c.genus() {
        return (thr.deg, 0);
    }
    let rich = level < strategy.depth;
    let key = (thr.deg, thr.res, rich);
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let mut ts: Vec<Point> = [Point::P, Point::Q]
        .into_iter()
        .filter(|&t| eligible(c, thr, t))
        .collect();
    if ts.is_empty() {
        ts = vec![Point::P, Point::Q];
    }
    let mut best: Option<(i64, u8)> = None;
    for t in ts {
        let (tail_v, tail_m) = star_go(
            c,
            c.class_add(thr, c.point_class(t)),
            strategy,
            level + 1,
            memo,
        );
        let mut mask = tail_m | bit(t);
        let free = c.gamma_contains(t, c.class_neg(thr));
        let value = if free {
            tail_v
        } else {
            let step = if rich { strategy.step } else { StepBound::Order };
            let (step_v, step_m) = step_value(c, t, thr, step);
            mask |= step_m;
            step_v.min(tail_v)
        };
        if best.is_none_or(|(bv, _)| value > bv) {
            best = Some((value, mask));
        }
    }
    let out = best.unwrap();
    memo.insert(key, out);
    out
}

/// Iterated coset bound.  Repeatedly steps C to C + T for T in {P, Q}; the
/// minimum of the per-step coset bounds along the sequence bounds the minimum
/// distance, and the sequence is chosen to maximize that minimum.  Steps with
/// -C in Gamma_T contribute nothing and are skipped in the minimum.  Once
/// deg C reaches 2g every continuation yields exactly deg C.
pub fn gamma_star_lower(
    c: &TwoPointCurve,
    thr: DivClass,
    strategy: StarStrategy,
) -> BoundResult {
    let mut memo = HashMap::new();
    let (value, mask) = star_go(c, thr, strategy, 0, &mut memo);
    BoundResult {
        method: strategy.method_name().into(),
        value,
        excluded: mask_points(mask),
        witness: None,
    }
}

/// The order bound: the iterated coset bound with the plain line step.
pub fn order_bound(c: &TwoPointCurve, thr: DivClass) -> BoundResult {
    gamma_star_lower(c, thr, StarStrategy::order())
}

/// Which one-point code family a Feng-Rao style bound applies to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FengRaoKind {
    /// Dual of the evaluation code with pole order at most rho:
    /// counts {p in S : rho' - p in S}.
    Dual,
    /// Dual of the code with divisor K + P + rho * P:
    /// counts {p in S : p - rho' not in S}.
    Canonical,
}

/// Size of the Feng-Rao set at a single pole order.
pub fn feng_rao_set_size(sg: &NumericalSemigroup, kind: FengRaoKind, rho: i64) -> i64 {
    match kind {
        FengRaoKind::Dual => (0..=rho.max(-1))
            .filter(|&p| sg.contains(p) && sg.contains(rho - p))
            .count() as i64,
        FengRaoKind::Canonical => {
            let below = (0..rho.max(0)).filter(|&p| sg.contains(p)).count() as i64;
            let near = (rho.max(0)..=rho + sg.max_gap())
                .filter(|&p| sg.contains(p) && !sg.contains(p - rho))
                .count() as i64;
            below + near
        }
    }
}

/// Feng-Rao bound for the code cut off at pole order rho: the minimum of the
/// set sizes over all larger pole orders, zero sizes skipped.  Set sizes grow
/// linearly past 4g, so a window of length 4g + 2 realizes the minimum.
pub fn feng_rao(sg: &NumericalSemigroup, kind: FengRaoKind, rho: i64) -> i64 {
    let horizon = rho.max(0) + 4 * sg.genus() + 2;
    (rho + 1..=horizon)
        .map(|r| feng_rao_set_size(sg, kind, r))
        .filter(|&n| n != 0)
        .min()
        .unwrap_or(0)
}

/// One closed-form case for the Hermitian curve.
#[derive(Debug, Clone, Serialize)]
pub struct HermitianCase {
    pub label: &'static str,
    /// Coset direction the bound applies to; None means both directions.
    pub point: Option<Point>,
    /// Points excluded from the evaluation divisor for the code-level bound.
    pub excluded: Vec<Point>,
    pub value: i64,
    /// Whether the bound is an equality for the coset invariant.
    pub exact: bool,
}

/// Closed-form delta counts and coset bounds for C = d H - a P - b Q on the
/// Hermitian curve of degree q + 1, with 0 <= a, b <= q and H ~ (q+1) P.
#[derive(Debug, Clone, Serialize)]
pub struct HermitianReport {
    pub q: i64,
    pub d: i64,
    pub a: i64,
    pub b: i64,
    pub class: DivClass,
    pub deg: i64,
    /// Size of the delta line through 0 for threshold C.
    pub count: i64,
    /// Size of the delta line through 0 for threshold -C.
    pub count_neg: i64,
    pub cases: Vec<HermitianCase>,
}

impl HermitianReport {
    pub fn best(&self) -> Option<&HermitianCase> {
        self.cases.iter().max_by_key(|cs| cs.value)
    }
}

pub fn hermitian_report(q: i64, d: i64, a: i64, b: i64) -> Result<HermitianReport, Inapplicable> {
    let method = "hermitian-closed-form";
    if q < 2 || a < 0 || a > q || b < 0 || b > q {
        return Err(Inapplicable {
            method: method.into(),
            reason: format!("need 0 <= a, b <= q, got q={q} a={a} b={b}"),
        });
    }
    let m = q + 1;
    let deg = d * m - a - b;
    let class = DivClass {
        deg,
        res: (-a).rem_euclid(m),
    };
    let (count, count_neg) = if a < d {
        (deg, 0)
    } else if a - d < q {
        (
            a * (q - 1 - a + d) + (a - b).max(0),
            (q + 1 - a) * (a - d) + (b - a).max(0),
        )
    } else {
        (0, -deg)
    };
    let mut cases = Vec::new();
    if a <= d && b <= d {
        cases.push(HermitianCase {
            label: "1",
            point: None,
            excluded: vec![],
            value: deg,
            exact: true,
        });
    }
    if b <= d && d <= a {
        cases.push(HermitianCase {
            label: "2a",
            point: Some(Point::P),
            excluded: vec![Point::P],
            value: deg + a - d,
            exact: false,
        });
    }
    if a <= d && d <= b {
        cases.push(HermitianCase {
            label: "2b",
            point: Some(Point::Q),
            excluded: vec![Point::Q],
            value: deg + b - d,
            exact: false,
        });
    }
    if d <= a && a <= b && a < q {
        cases.push(HermitianCase {
            label: "3a",
            point: Some(Point::P),
            excluded: vec![Point::P, Point::Q],
            value: deg + (a - d) + (b - d),
            exact: false,
        });
    }
    if d <= b && b <= a && b < q {
        cases.push(HermitianCase {
            label: "3b",
            point: Some(Point::Q),
            excluded: vec![Point::P, Point::Q],
            value: deg + (a - d) + (b - d),
            exact: false,
        });
    }
    if d <= q && a == q && b == q {
        cases.push(HermitianCase {
            label: "4",
            point: None,
            excluded: vec![Point::P],
            value: deg + q - d,
            exact: false,
        });
    }
    Ok(HermitianReport {
        q,
        d,
        a,
        b,
        class,
        deg,
        count,
        count_neg,
        cases,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn suz2() -> TwoPointCurve {
        TwoPointCurve::suzuki(2).unwrap()
    }

    fn suz4() -> TwoPointCurve {
        TwoPointCurve::suzuki(4).unwrap()
    }

    fn herm3() -> TwoPointCurve {
        TwoPointCurve::hermitian(3).unwrap()
    }

    #[test]
    fn goppa_is_degree() {
        let c = herm3();
        assert_eq!(goppa(&c, c.class(7, 2)).value, 7);
    }

    #[test]
    fn floor_example_degree_thirteen() {
        // K = 2H, A = B = K - H, Z = 2P + 2Q on the first Suzuki curve.
        let c = suz2();
        let a = c.class(13, 0);
        let z = LatticeDivisor::new(2, 2);
        let thr = c.class(4, 2);
        let r = floor(&c, thr, a, a, z).unwrap();
        assert_eq!(r.value, 8);
        assert_eq!(r.excluded, vec![Point::P, Point::Q]);
        // One more than the iterated bound for the same class.
        assert_eq!(order_bound(&c, thr).value, 7);
    }

    #[test]
    fn floor_rejects_jumping_dimensions() {
        let c = herm3();
        let z = LatticeDivisor::new(3, 0);
        let a = c.zero_class();
        let b = c.class_sub(c.class_add(c.canonical_class(), c.class(3, 3)), c.lattice_class(z));
        let thr = c.class(3, 3);
        let err = floor(&c, thr, a, b, z).unwrap_err();
        assert!(err.reason.contains("dimension"));
    }

    #[test]
    fn floor_rejects_mismatched_decomposition() {
        let c = suz2();
        let err = floor(
            &c,
            c.class(4, 2),
            c.class(13, 0),
            c.class(13, 0),
            LatticeDivisor::new(1, 1),
        )
        .unwrap_err();
        assert!(err.reason.contains("A + B + Z"));
    }

    #[test]
    fn abz_example_degree_six() {
        // A = B = K - H, C = K - 2H + Z with Z = 4P + 2Q.
        let c = suz2();
        let a = c.class(13, 0);
        let thr = c.class(6, 4);
        let r = abz_code(&c, thr, a, a).unwrap();
        assert_eq!(r.value, 10);
        match r.witness {
            Some(Witness::Decomposition { z, .. }) => {
                assert_eq!(z, LatticeDivisor::new(4, 2));
            }
            _ => panic!("expected a decomposition witness"),
        }
    }

    #[test]
    fn abz_rejects_ineffective_z() {
        let c = suz2();
        let a = c.class(20, 0);
        let err = abz_code(&c, c.class(6, 4), a, a).unwrap_err();
        assert!(err.reason.contains("no effective representative"));
    }

    #[test]
    fn abz_coset_example_value_forty_five() {
        // C = 9P + 9Q, B = 141P, Z = 9Q on the second Suzuki curve.
        let c = suz4();
        let thr = c.class(18, 9);
        let z = LatticeDivisor::new(0, 9);
        for r in [141, 142, 143, 144, 145, 146, 109, 110, 111, 112, 113, 114] {
            let b = c.class(r, r);
            let res = abz_coset(&c, Point::P, thr, b, z).unwrap();
            assert_eq!(res.value, 45, "B = {r}P");
            assert_eq!(res.excluded, vec![Point::P, Point::Q]);
        }
    }

    #[test]
    fn abz_coset_halves_match_involution() {
        // #Delta(<=A, C) = #Delta(>= B + P + Z, C) when K + C = A + B + Z.
        let c = suz2();
        let thr = c.class(5, 3);
        for bd in -4..12 {
            for br in 0..c.period() {
                let b = c.class(bd, br);
                for z in [LatticeDivisor::new(0, 0), LatticeDivisor::new(0, 3)] {
                    let a = c.class_sub(
                        c.class_add(c.canonical_class(), thr),
                        c.class_add(b, c.lattice_class(z)),
                    );
                    let le_a = delta::count_le(&c, Point::P, thr, a);
                    let bpz = c.class_shift(c.class_add(b, c.lattice_class(z)), Point::P, 1);
                    let ge = delta::line_indices(&c, Point::P, thr, bpz)
                        .into_iter()
                        .filter(|&i| i >= 0)
                        .count() as i64;
                    assert_eq!(le_a, ge, "B = {b}, Z = {z}");
                }
            }
        }
    }

    #[test]
    fn order_bound_examples() {
        let c = suz2();
        assert_eq!(order_bound(&c, c.class(4, 2)).value, 7);
        let c4 = suz4();
        assert_eq!(order_bound(&c4, c4.class(18, 9)).value, 40);
        assert!(order_bound(&c4, c4.class(19, 10)).value >= 50);
    }

    #[test]
    fn order_bound_on_large_degrees_is_exact() {
        let c = herm3();
        for deg in (2 * c.genus())..(2 * c.genus() + 5) {
            for res in 0..c.period() {
                assert_eq!(order_bound(&c, c.class(deg, res)).value, deg);
            }
        }
    }

    #[test]
    fn order_bound_dominates_goppa() {
        for c in [herm3(), suz2()] {
            for deg in -3..=(2 * c.genus() + 1) {
                for res in 0..c.period() {
                    let thr = c.class(deg, res);
                    assert!(
                        order_bound(&c, thr).value >= goppa(&c, thr).value,
                        "{} {}",
                        c.label(),
                        thr
                    );
                }
            }
        }
    }

    #[test]
    fn improved_step_raises_iterated_bound() {
        let c = suz4();
        let thr = c.class(18, 9);
        let r = gamma_star_lower(
            &c,
            thr,
            StarStrategy {
                step: StepBound::Abz { z_cap: 40 },
                depth: 1,
            },
        );
        assert_eq!(r.value, 45);
        assert_eq!(r.excluded, vec![Point::P, Point::Q]);
    }

    #[test]
    fn chain_bound_examples() {
        let c = suz4();
        let r = chain_bound(&c, Point::P, c.class(86, 14));
        assert_eq!(r.value, 90);
        match &r.witness {
            Some(Witness::Chain(ch)) => {
                assert_eq!(ch.len(), 90);
                assert_eq!(ch[0], LatticeDivisor::new(36, -5));
                assert_eq!(ch[89], LatticeDivisor::new(307, -5));
                verify_chain(&c, Point::P, c.class(86, 14), ch).unwrap();
            }
            _ => panic!("expected a chain witness"),
        }
        let r2 = chain_bound(&c, Point::P, c.class(24, 12));
        assert!(r2.value >= 56);
    }

    #[test]
    fn chain_bound_matches_brute_force_on_small_curve() {
        // Independent recursive search over the same window.
        let c = herm3();
        let m = c.period();
        for (deg, res) in [(3, 1), (5, 2), (7, 0), (2, 3)] {
            let thr = c.class(deg, res);
            let dmax = thr.deg + 2 * c.genus() - 1;
            let mut best = 0i64;
            let mut stack: Vec<(i64, i64, i64)> = Vec::new();
            for k in -(m - 1)..=dmax {
                for l in 0..(dmax + m) {
                    if delta::in_delta(&c, Point::P, thr, c.class(k + l, k)) {
                        stack.push((k, l, 1));
                    }
                }
            }
            while let Some((k, l, n)) = stack.pop() {
                best = best.max(n);
                for k2 in (k + 1)..=dmax {
                    for l2 in l..(dmax + m) {
                        if delta::in_delta(&c, Point::P, thr, c.class(k2 + l2, k2)) {
                            stack.push((k2, l2, n + 1));
                        }
                    }
                }
            }
            assert_eq!(chain_bound(&c, Point::P, thr).value, best, "thr = {thr}");
        }
    }

    #[test]
    fn chain_witness_verifies_on_both_points() {
        for c in [herm3(), suz2()] {
            for deg in 0..=(c.genus() + 3) {
                for res in 0..c.period() {
                    let thr = c.class(deg, res);
                    for pt in [Point::P, Point::Q] {
                        let r = chain_bound(&c, pt, thr);
                        match &r.witness {
                            Some(Witness::Chain(ch)) => {
                                assert_eq!(ch.len() as i64, r.value);
                                verify_chain(&c, pt, thr, ch).unwrap();
                                if !ch.is_empty() {
                                    let other = ch[0].mult(pt.other());
                                    assert!(-c.period() < other && other <= 0);
                                }
                            }
                            _ => panic!("expected a chain witness"),
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn chain_dominates_best_line() {
        for c in [herm3(), suz2()] {
            for deg in 0..=(c.genus() + 2) {
                for res in 0..c.period() {
                    let thr = c.class(deg, res);
                    for pt in [Point::P, Point::Q] {
                        assert!(
                            chain_bound(&c, pt, thr).value >= delta::best_line(&c, pt, thr).1
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn feng_rao_on_the_cubic_semigroup() {
        let sg = NumericalSemigroup::hermitian(3).unwrap();
        let sizes: Vec<i64> = (6..=12)
            .map(|r| feng_rao_set_size(&sg, FengRaoKind::Dual, r))
            .collect();
        assert_eq!(sizes, vec![3, 4, 3, 4, 6, 6, 7]);
        assert_eq!(feng_rao(&sg, FengRaoKind::Dual, 5), 3);
        assert_eq!(feng_rao(&sg, FengRaoKind::Dual, 8), 4);
        assert_eq!(feng_rao(&sg, FengRaoKind::Dual, 9), 6);
        assert_eq!(feng_rao(&sg, FengRaoKind::Dual, 11), 7);
        assert_eq!(feng_rao_set_size(&sg, FengRaoKind::Canonical, 0), 0);
        assert_eq!(feng_rao_set_size(&sg, FengRaoKind::Canonical, 1), 3);
        assert_eq!(feng_rao_set_size(&sg, FengRaoKind::Canonical, 2), 4);
        assert_eq!(feng_rao_set_size(&sg, FengRaoKind::Canonical, 5), 6);
        assert_eq!(feng_rao(&sg, FengRaoKind::Canonical, 0), 3);
    }

    #[test]
    fn feng_rao_sets_match_delta_lines() {
        // The counting sets of the one-point bounds are delta lines through 0
        // on the corresponding curve.
        let c = herm3();
        let sg = NumericalSemigroup::hermitian(3).unwrap();
        let k = c.canonical_class();
        for rho in 0..(6 * c.genus()) {
            let dual = feng_rao_set_size(&sg, FengRaoKind::Dual, rho);
            let thr = c.class_sub(c.class(rho - 1, rho - 1), k);
            assert_eq!(
                dual,
                delta::line_count(&c, Point::P, thr, c.zero_class()),
                "dual rho = {rho}"
            );
            let canon = feng_rao_set_size(&sg, FengRaoKind::Canonical, rho);
            let thr2 = c.class(rho, rho);
            assert_eq!(
                canon,
                delta::line_count(&c, Point::P, thr2, c.zero_class()),
                "canonical rho = {rho}"
            );
        }
    }

    #[test]
    fn feng_rao_horizon_is_stable() {
        for sg in [
            NumericalSemigroup::hermitian(2).unwrap(),
            NumericalSemigroup::hermitian(4).unwrap(),
            NumericalSemigroup::suzuki(2).unwrap(),
        ] {
            for rho in -2..(6 * sg.genus()) {
                for kind in [FengRaoKind::Dual, FengRaoKind::Canonical] {
                    let near = feng_rao(&sg, kind, rho);
                    let far = (rho + 1..=rho.max(0) + 8 * sg.genus() + 4)
                        .map(|r| feng_rao_set_size(&sg, kind, r))
                        .filter(|&n| n != 0)
                        .min()
                        .unwrap_or(0);
                    assert_eq!(near, far, "rho = {rho}");
                }
            }
        }
    }

    #[test]
    fn closed_form_counts_match_enumeration() {
        let q = 3;
        let c = herm3();
        for d in -2..=(2 * q) {
            for a in 0..=q {
                for b in 0..=q {
                    let rep = hermitian_report(q, d, a, b).unwrap();
                    assert_eq!(
                        rep.count,
                        delta::line_count(&c, Point::P, rep.class, c.zero_class()),
                        "d={d} a={a} b={b}"
                    );
                    assert_eq!(
                        rep.count_neg,
                        delta::line_count(&c, Point::P, c.class_neg(rep.class), c.zero_class()),
                        "negated d={d} a={a} b={b}"
                    );
                }
            }
        }
    }

    #[test]
    fn closed_form_case_list() {
        let rep = hermitian_report(3, 2, 2, 1).unwrap();
        assert_eq!(rep.deg, 5);
        assert_eq!(rep.count, 5);
        let labels: Vec<&str> = rep.cases.iter().map(|cs| cs.label).collect();
        assert_eq!(labels, vec!["1", "2a"]);
        assert_eq!(rep.best().unwrap().value, 5);

        let rep = hermitian_report(3, 1, 3, 3).unwrap();
        let labels: Vec<&str> = rep.cases.iter().map(|cs| cs.label).collect();
        assert_eq!(labels, vec!["4"]);
        assert_eq!(rep.best().unwrap().value, 4 - 6 + 3 - 1);

        assert!(hermitian_report(3, 0, 4, 0).is_err());
    }

    #[test]
    fn closed_form_cases_never_beat_the_chain_bound() {
        let q = 3;
        let c = herm3();
        for d in 0..=q {
            for a in 0..=q {
                for b in 0..=q {
                    let rep = hermitian_report(q, d, a, b).unwrap();
                    for cs in &rep.cases {
                        let pts = match cs.point {
                            Some(p) => vec![p],
                            None => vec![Point::P, Point::Q],
                        };
                        for pt in pts {
                            assert!(
                                cs.value <= chain_bound(&c, pt, rep.class).value,
                                "case {} at d={d} a={a} b={b}",
                                cs.label
                            );
                        }
                    }
                }
            }
        }
    }
}
