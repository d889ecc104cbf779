//! Two-point curve model: discrepancy profiles, divisor classes, dimensions.
//!
//! A profile lists, for each residue r mod m, the degree of the unique
//! discrepancy class with P-multiplicity congruent to r.  The profile alone
//! determines membership in Gamma_P and Gamma_Q and the dimension of every
//! divisor class supported on the lattice ZP + ZQ.

use serde::{Deserialize, Serialize};
use std::fmt;

/// One of the two distinguished rational points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Point {
    P,
    Q,
}

impl Point {
    pub fn other(self) -> Point {
        match self {
            Point::P => Point::Q,
            Point::Q => Point::P,
        }
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Point::P => write!(f, "P"),
            Point::Q => write!(f, "Q"),
        }
    }
}

/// A divisor kP + lQ given by its multiplicities at the two points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticeDivisor {
    pub at_p: i64,
    pub at_q: i64,
}

impl LatticeDivisor {
    pub fn new(at_p: i64, at_q: i64) -> Self {
        LatticeDivisor { at_p, at_q }
    }

    pub fn deg(&self) -> i64 {
        self.at_p + self.at_q
    }

    pub fn is_effective(&self) -> bool {
        self.at_p >= 0 && self.at_q >= 0
    }

    /// Points occurring with nonzero multiplicity.
    pub fn support(&self) -> Vec<Point> {
        let mut s = Vec::new();
        if self.at_p != 0 {
            s.push(Point::P);
        }
        if self.at_q != 0 {
            s.push(Point::Q);
        }
        s
    }

    pub fn mult(&self, pt: Point) -> i64 {
        match pt {
            Point::P => self.at_p,
            Point::Q => self.at_q,
        }
    }
}

impl fmt::Display for LatticeDivisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}P{:+}Q", self.at_p, self.at_q)
    }
}

/// A divisor class supported on the lattice, identified by degree and the
/// residue mod m of the P-multiplicity of any lattice representative.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DivClass {
    pub deg: i64,
    pub res: i64,
}

impl fmt::Display for DivClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[deg {}, res {}]", self.deg, self.res)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ProfileError {
    #[error("invalid profile: {0}")]
    Invalid(String),
    #[error("invalid parameter: {0}")]
    Parameter(String),
    #[error("profile parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Curve model: genus, period m of P - Q in the class group, and the degree
/// of the discrepancy class at each P-residue.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoPointCurve {
    label: String,
    genus: i64,
    period: i64,
    /// disc_p[r] = degree of the discrepancy class with P-residue r.
    disc_p: Vec<i64>,
    /// disc_q[s] = degree of the discrepancy class with Q-residue s.
    disc_q: Vec<i64>,
    /// Residue with disc_p equal to 2g (for genus 0 this is residue 0).
    r2g: i64,
}

/// Checks the profile constraints and returns human-readable violations.
/// An empty result means the profile is a valid curve model.
pub fn validate_profile(genus: i64, period: i64, disc: &[i64]) -> Vec<String> {
    let mut v = Vec::new();
    if genus < 0 {
        v.push(format!("genus {} is negative", genus));
    }
    if period < 1 {
        v.push(format!("period {} is not positive", period));
    }
    if disc.len() as i64 != period {
        v.push(format!(
            "discrepancy table has {} entries, period is {}",
            disc.len(),
            period
        ));
    }
    if !v.is_empty() {
        return v;
    }
    let g2 = 2 * genus;
    if disc[0] != 0 {
        v.push(format!("discrepancy at residue 0 is {}, expected 0", disc[0]));
    }
    for (r, &d) in disc.iter().enumerate() {
        if d < 0 || d > g2 {
            v.push(format!("discrepancy {} at residue {} is outside [0, 2g]", d, r));
        }
    }
    let top: Vec<usize> = (0..disc.len()).filter(|&r| disc[r] == g2).collect();
    if top.len() != 1 {
        v.push(format!(
            "expected exactly one residue with discrepancy 2g, found {}",
            top.len()
        ));
    }
    if !v.is_empty() {
        return v;
    }
    let m = period as usize;
    let r2g = top[0];
    // Pairing under A -> K + P + Q - A: degrees at r and r2g - r sum to 2g.
    for r in 0..m {
        let rr = (r2g + m - r % m) % m;
        if disc[r] + disc[rr] != g2 {
            v.push(format!(
                "pairing fails: disc[{}] + disc[{}] = {} != 2g",
                r,
                rr,
                disc[r] + disc[rr]
            ));
        }
    }
    // r -> (disc[r] - r) mod m must be a permutation (Q-residues are distinct).
    let mut seen = vec![false; m];
    for (r, &d) in disc.iter().enumerate() {
        let s = (d - r as i64).rem_euclid(period) as usize;
        if seen[s] {
            v.push(format!("Q-residue {} occurs twice", s));
        }
        seen[s] = true;
    }
    // Gamma_P must be closed under addition of classes.
    for r1 in 0..m {
        for r2 in 0..m {
            let r12 = (r1 + r2) % m;
            if disc[r12] > disc[r1] + disc[r2] {
                v.push(format!(
                    "semigroup closure fails at residues {} + {}",
                    r1, r2
                ));
            }
        }
    }
    v
}

impl TwoPointCurve {
    pub fn new(
        label: impl Into<String>,
        genus: i64,
        period: i64,
        disc: Vec<i64>,
    ) -> Result<Self, ProfileError> {
        let violations = validate_profile(genus, period, &disc);
        if !violations.is_empty() {
            return Err(ProfileError::Invalid(violations.join("; ")));
        }
        let m = period as usize;
        let mut disc_q = vec![0i64; m];
        for (r, &d) in disc.iter().enumerate() {
            let s = (d - r as i64).rem_euclid(period) as usize;
            disc_q[s] = d;
        }
        let r2g = (0..m).find(|&r| disc[r] == 2 * genus).unwrap() as i64;
        Ok(TwoPointCurve {
            label: label.into(),
            genus,
            period,
            disc_p: disc,
            disc_q,
            r2g,
        })
    }

    /// Hermitian curve y^q + y = x^(q+1) with P, Q two rational points and
    /// H ~ (q+1)P ~ (q+1)Q the line class.  The discrepancies are dH - dP - dQ
    /// for d = 0..q, of degree d(q-1) at P-residue -d mod (q+1).
    pub fn hermitian(q: i64) -> Result<Self, ProfileError> {
        if !is_prime_power(q) {
            return Err(ProfileError::Parameter(format!(
                "{} is not a prime power",
                q
            )));
        }
        let m = q + 1;
        let genus = q * (q - 1) / 2;
        let mut disc = vec![0i64; m as usize];
        for d in 0..=q {
            let r = (-d).rem_euclid(m) as usize;
            disc[r] = d * (q - 1);
        }
        Self::new(format!("hermitian:{}", q), genus, m, disc)
    }

    /// Suzuki curve over F_q, q = 2*q0^2, with P, Q rational points and
    /// H ~ mP ~ mQ, m = q + 2q0 + 1.  The m discrepancy classes have degree
    /// (q0 - a)(q - 1) at P-residue a(q0+1) + b*q0 - q0(q0+1) mod m, one for
    /// each pair |a| + |b| <= q0.
    pub fn suzuki(q0: i64) -> Result<Self, ProfileError> {
        if q0 < 2 || q0 & (q0 - 1) != 0 {
            return Err(ProfileError::Parameter(format!(
                "{} is not a power of two at least 2",
                q0
            )));
        }
        let q = 2 * q0 * q0;
        let m = q + 2 * q0 + 1;
        let genus = q0 * (q - 1);
        let mut disc = vec![-1i64; m as usize];
        for a in -q0..=q0 {
            let bb = q0 - a.abs();
            for b in -bb..=bb {
                let r = (a * (q0 + 1) + b * q0 - q0 * (q0 + 1)).rem_euclid(m) as usize;
                debug_assert_eq!(disc[r], -1, "residue {} hit twice", r);
                disc[r] = (q0 - a) * (q - 1);
            }
        }
        debug_assert!(disc.iter().all(|&d| d >= 0));
        Self::new(format!("suzuki:{}", q0), genus, m, disc)
    }

    /// Parses the plain-text profile format:
    /// `genus <g>`, `period <m>`, `disc <d0> <d1> ...`, optional `label <text>`,
    /// `#` starts a comment.
    pub fn from_profile_text(text: &str) -> Result<Self, ProfileError> {
        let mut genus = None;
        let mut period = None;
        let mut disc: Option<Vec<i64>> = None;
        let mut label = String::from("file");
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let key = parts.next().unwrap();
            let err = |msg: &str| ProfileError::Parse {
                line: idx + 1,
                msg: msg.to_string(),
            };
            match key {
                "genus" => {
                    let v = parts
                        .next()
                        .ok_or_else(|| err("missing genus value"))?
                        .parse()
                        .map_err(|_| err("genus is not an integer"))?;
                    genus = Some(v);
                }
                "period" => {
                    let v = parts
                        .next()
                        .ok_or_else(|| err("missing period value"))?
                        .parse()
                        .map_err(|_| err("period is not an integer"))?;
                    period = Some(v);
                }
                "disc" => {
                    let vals: Result<Vec<i64>, _> = parts.map(|p| p.parse()).collect();
                    disc = Some(vals.map_err(|_| err("disc entries must be integers"))?);
                }
                "label" => {
                    label = parts.collect::<Vec<_>>().join(" ");
                }
                other => {
                    return Err(err(&format!("unknown key '{}'", other)));
                }
            }
        }
        let genus = genus.ok_or(ProfileError::Parse {
            line: 0,
            msg: "missing 'genus' line".into(),
        })?;
        let period = period.ok_or(ProfileError::Parse {
            line: 0,
            msg: "missing 'period' line".into(),
        })?;
        let disc = disc.ok_or(ProfileError::Parse {
            line: 0,
            msg: "missing 'disc' line".into(),
        })?;
        Self::new(label, genus, period, disc)
    }

    pub fn to_profile_text(&self) -> String {
        let disc = self
            .disc_p
            .iter()
            .map(|d| d.to_string())
            .collect::<Vec<_>>()
            .join(" ");
        format!(
            "label {}\ngenus {}\nperiod {}\ndisc {}\n",
            self.label, self.genus, self.period, disc
        )
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn genus(&self) -> i64 {
        self.genus
    }

    pub fn period(&self) -> i64 {
        self.period
    }

    pub fn disc_p(&self) -> &[i64] {
        &self.disc_p
    }

    pub fn disc_q(&self) -> &[i64] {
        &self.disc_q
    }

    /// Degree of the positive part of kP, i.e. disc_p at k mod m.
    pub fn d_p(&self, k: i64) -> i64 {
        self.disc_p[k.rem_euclid(self.period) as usize]
    }

    /// Degree of the positive part of lQ.
    pub fn d_q(&self, l: i64) -> i64 {
        self.disc_q[l.rem_euclid(self.period) as usize]
    }

    // ----- class arithmetic -----

    pub fn class(&self, deg: i64, res: i64) -> DivClass {
        DivClass {
            deg,
            res: res.rem_euclid(self.period),
        }
    }

    pub fn zero_class(&self) -> DivClass {
        self.class(0, 0)
    }

    pub fn lattice_class(&self, d: LatticeDivisor) -> DivClass {
        self.class(d.deg(), d.at_p)
    }

    pub fn point_class(&self, pt: Point) -> DivClass {
        match pt {
            Point::P => self.class(1, 1),
            Point::Q => self.class(1, 0),
        }
    }

    pub fn class_add(&self, a: DivClass, b: DivClass) -> DivClass {
        self.class(a.deg + b.deg, a.res + b.res)
    }

    pub fn class_sub(&self, a: DivClass, b: DivClass) -> DivClass {
        self.class(a.deg - b.deg, a.res - b.res)
    }

    pub fn class_neg(&self, a: DivClass) -> DivClass {
        self.class(-a.deg, -a.res)
    }

    /// Class of a + n * pt.
    pub fn class_shift(&self, a: DivClass, pt: Point, n: i64) -> DivClass {
        match pt {
            Point::P => self.class(a.deg + n, a.res + n),
            Point::Q => self.class(a.deg + n, a.res),
        }
    }

    /// Canonical class: degree 2g - 2, P-residue one less than the residue of
    /// the degree-2g discrepancy (K + P + Q is that discrepancy).
    pub fn canonical_class(&self) -> DivClass {
        self.class(2 * self.genus - 2, self.r2g - 1)
    }

    /// The canonical lattice divisor of a class: P-multiplicity equal to the
    /// normalized residue.
    pub fn canonical_rep(&self, a: DivClass) -> LatticeDivisor {
        LatticeDivisor::new(a.res, a.deg - a.res)
    }

    /// Whether the class contains an effective divisor supported on the lattice.
    pub fn has_effective_rep(&self, a: DivClass) -> bool {
        a.deg >= 0 && a.res.rem_euclid(self.period) <= a.deg
    }

    // ----- semigroup membership and dimension -----

    /// kP + lQ in Gamma_P, i.e. L(A) != L(A - P).
    pub fn in_gamma_p(&self, d: LatticeDivisor) -> bool {
        self.gamma_contains(Point::P, self.lattice_class(d))
    }

    /// kP + lQ in Gamma_Q.
    pub fn in_gamma_q(&self, d: LatticeDivisor) -> bool {
        self.gamma_contains(Point::Q, self.lattice_class(d))
    }

    /// Class membership in Gamma_P or Gamma_Q.
    pub fn gamma_contains(&self, pt: Point, a: DivClass) -> bool {
        match pt {
            Point::P => a.deg >= self.d_p(a.res),
            Point::Q => a.deg >= self.d_q(a.deg - a.res),
        }
    }

    /// dim L(A) for a lattice class: the number of discrepancy representatives
    /// dominated by some lattice representative of A.
    pub fn dim_l(&self, a: DivClass) -> i64 {
        if a.deg < 0 {
            return 0;
        }
        if a.deg >= 2 * self.genus - 1 {
            return a.deg + 1 - self.genus;
        }
        let k = a.res.rem_euclid(self.period);
        let l = a.deg - k;
        // Count i in [-l, k] with disc_p[i mod m] <= i + l.
        let mut n = 0;
        let mut i = -l;
        while i <= k {
            if self.d_p(i) <= i + l {
                n += 1;
            }
            i += 1;
        }
        n
    }

    pub fn dim_l_lattice(&self, d: LatticeDivisor) -> i64 {
        self.dim_l(self.lattice_class(d))
    }

    // ----- sigma and tau -----

    /// sigma(k) = smallest j with kP + jQ in Gamma_P.
    pub fn sigma(&self, k: i64) -> i64 {
        self.sigma_from(0, k)
    }

    /// tau = inverse of sigma: tau(j) = the k with sigma(k) = j.
    pub fn tau(&self, j: i64) -> i64 {
        self.tau_from(0, j)
    }

    /// sigma for the line based at a degree-zero class with P-residue beta.
    pub fn sigma_from(&self, beta: i64, k: i64) -> i64 {
        self.disc_p[(beta + k).rem_euclid(self.period) as usize] - k
    }

    /// Inverse of `sigma_from(beta, _)`.
    pub fn tau_from(&self, beta: i64, j: i64) -> i64 {
        // sigma(k) = j with rho = (beta + k) mod m forces
        // (disc_p[rho] - rho) == (j - beta) mod m; then k = disc_p[rho] - j.
        let want = (j - beta).rem_euclid(self.period);
        for rho in 0..self.period as usize {
            if (self.disc_p[rho] - rho as i64).rem_euclid(self.period) == want {
                return self.disc_p[rho] - j;
            }
        }
        unreachable!("profile permutation invariant violated");
    }
}

fn is_prime_power(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let mut n = n;
    let mut p = 0;
    for c in 2..=n {
        if n % c == 0 {
            p = c;
            break;
        }
    }
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// Weierstrass semigroup at a single point, stored by its finite gap set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericalSemigroup {
    gaps: Vec<i64>,
}

impl NumericalSemigroup {
    pub fn from_gaps(mut gaps: Vec<i64>) -> Result<Self, ProfileError> {
        gaps.sort_unstable();
        gaps.dedup();
        if gaps.iter().any(|&g| g <= 0) {
            return Err(ProfileError::Invalid("gaps must be positive".into()));
        }
        let sg = NumericalSemigroup { gaps };
        let top = sg.max_gap();
        if top > 2 * sg.genus() - 1 {
            return Err(ProfileError::Invalid(format!(
                "largest gap {} exceeds 2g - 1",
                top
            )));
        }
        for x in 1..=top {
            if !sg.contains(x) {
                continue;
            }
            for y in x..=top {
                if sg.contains(y) && !sg.contains(x + y) {
                    return Err(ProfileError::Invalid(format!(
                        "not closed under addition: {} + {}",
                        x, y
                    )));
                }
            }
        }
        Ok(sg)
    }

    pub fn from_generators(gens: &[i64]) -> Result<Self, ProfileError> {
        if gens.is_empty() || gens.iter().any(|&g| g <= 0) {
            return Err(ProfileError::Parameter(
                "generators must be positive".into(),
            ));
        }
        let mut d = gens[0];
        for &g in gens {
            d = gcd(d, g);
        }
        if d != 1 {
            return Err(ProfileError::Parameter(
                "generators must be coprime overall".into(),
            ));
        }
        let bound = (gens.iter().min().unwrap() * gens.iter().max().unwrap()) as usize;
        let mut hit = vec![false; bound + 1];
        hit[0] = true;
        for n in 1..=bound {
            for &g in gens {
                let g = g as usize;
                if g <= n && hit[n - g] {
                    hit[n] = true;
                    break;
                }
            }
        }
        let gaps = (1..=bound as i64).filter(|&n| !hit[n as usize]).collect();
        Self::from_gaps(gaps)
    }

    /// Semigroup of the Hermitian curve at a rational point.
    pub fn hermitian(q: i64) -> Result<Self, ProfileError> {
        Self::from_generators(&[q, q + 1])
    }

    /// Semigroup of the Suzuki curve at a rational point, q = 2*q0^2.
    pub fn suzuki(q0: i64) -> Result<Self, ProfileError> {
        let q = 2 * q0 * q0;
        Self::from_generators(&[q, q + q0, q + 2 * q0, q + 2 * q0 + 1])
    }

    pub fn contains(&self, n: i64) -> bool {
        n >= 0 && self.gaps.binary_search(&n).is_err()
    }

    pub fn genus(&self) -> i64 {
        self.gaps.len() as i64
    }

    pub fn gaps(&self) -> &[i64] {
        &self.gaps
    }

    pub fn max_gap(&self) -> i64 {
        self.gaps.last().copied().unwrap_or(0)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}
