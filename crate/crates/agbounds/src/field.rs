//! Small finite fields with precomputed operation tables.
//!
//! Elements of GF(p^k) are indices 0..p^k; the index encodes the coefficient
//! vector of a polynomial residue in base p, so 0 and 1 are the field's zero
//! and one for every parameter choice.

use std::fmt;

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn poly_mul(p: i64, a: &[i64], b: &[i64]) -> Vec<i64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0i64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

fn poly_rem(p: i64, a: &[i64], m: &[i64]) -> Vec<i64> {
    let mut r: Vec<i64> = a.to_vec();
    let dm = m.len() - 1;
    let lead_inv = mod_inv(m[dm], p);
    while r.len() > dm {
        let d = r.len() - 1;
        let c = (r[d] * lead_inv) % p;
        for i in 0..=dm {
            let idx = d - dm + i;
            r[idx] = ((r[idx] - c * m[i]) % p + p) % p;
        }
        r = trim(r);
    }
    r
}

fn mod_inv(a: i64, p: i64) -> i64 {
    // p is a small prime
    let mut x = 1i64;
    loop {
        if (a * x) % p == 1 {
            return x;
        }
        x += 1;
    }
}

fn poly_is_irreducible(p: i64, m: &[i64]) -> bool {
    let k = m.len() - 1;
    if k == 1 {
        return true;
    }
    // Trial division by every monic polynomial of degree 1..=k/2.
    for d in 1..=(k / 2) {
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut n = idx;
            for _ in 0..d {
                div.push(n % p);
                n /= p;
            }
            div.push(1);
            if poly_rem(p, m, &div).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Pinned moduli keep the element encoding stable for the common fields.
fn modulus_for(p: i64, k: u32) -> Vec<i64> {
    match (p, k) {
        (2, 2) => vec![1, 1, 1],
        (2, 3) => vec![1, 1, 0, 1],
        (2, 4) => vec![1, 1, 0, 0, 1],
        (3, 2) => vec![2, 1, 1],
        _ => {
            // Smallest monic irreducible in the base-p encoding.
            let count = p.pow(k);
            for idx in 0..count {
                let mut m = Vec::with_capacity(k as usize + 1);
                let mut n = idx;
                for _ in 0..k {
                    m.push(n % p);
                    n /= p;
                }
                m.push(1);
                if poly_is_irreducible(p, &m) {
                    return m;
                }
            }
            unreachable!("every degree has an irreducible polynomial")
        }
    }
}

const MAX_SIZE: usize = 1024;

#[derive(Clone)]
pub struct SmallField {
    p: i64,
    k: u32,
    size: usize,
    modulus: Vec<i64>,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
    gen: usize,
    exp: Vec<u16>,
    log: Vec<u16>,
}

impl fmt::Debug for SmallField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.size)
    }
}

impl fmt::Display for SmallField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.size)
    }
}

impl SmallField {
    pub fn new(size: usize) -> Result<Self, String> {
        if !(2..=MAX_SIZE).contains(&size) {
            return Err(format!("field size {size} out of range 2..={MAX_SIZE}"));
        }
        let mut p = 0;
        for cand in 2..=size as i64 {
            if size as i64 % cand == 0 {
                p = cand;
                break;
            }
        }
        let mut k = 0u32;
        let mut n = size as i64;
        while n > 1 {
            if n % p != 0 {
                return Err(format!("{size} is not a prime power"));
            }
            n /= p;
            k += 1;
        }
        let modulus = modulus_for(p, k);

        let digits = |mut x: usize| -> Vec<i64> {
            let mut v = Vec::with_capacity(k as usize);
            for _ in 0..k {
                v.push((x % p as usize) as i64);
                x /= p as usize;
            }
            v
        };
        let encode = |poly: &[i64]| -> usize {
            let mut x = 0usize;
            for &c in poly.iter().rev() {
                x = x * p as usize + c as usize;
            }
            x
        };

        let mut add = vec![0u16; size * size];
        let mut mul = vec![0u16; size * size];
        let mut neg = vec![0u16; size];
        for a in 0..size {
            let da = digits(a);
            neg[a] = encode(&da.iter().map(|&c| (p - c) % p).collect::<Vec<_>>()) as u16;
            for b in 0..size {
                let db = digits(b);
                let s: Vec<i64> = da.iter().zip(&db).map(|(&x, &y)| (x + y) % p).collect();
                add[a * size + b] = encode(&s) as u16;
                let prod = poly_rem(p, &poly_mul(p, &trim(da.clone()), &trim(db)), &modulus);
                mul[a * size + b] = encode(&prod) as u16;
            }
        }

        let mut gen = 0;
        'outer: for g in 1..size {
            let mut x = g;
            for ord in 1..size {
                if x == 1 {
                    if ord == size - 1 {
                        gen = g;
                        break 'outer;
                    }
                    continue 'outer;
                }
                x = mul[x * size + g] as usize;
            }
        }
        assert!(gen != 0, "multiplicative group is cyclic");

        let mut exp = vec![0u16; size - 1];
        let mut log = vec![0u16; size];
        let mut x = 1usize;
        for i in 0..size - 1 {
            exp[i] = x as u16;
            log[x] = i as u16;
            x = mul[x * size + gen] as usize;
        }

        let mut inv = vec![0u16; size];
        for a in 1..size {
            let e = log[a] as usize;
            inv[a] = exp[(size - 1 - e) % (size - 1)];
        }

        Ok(SmallField {
            p,
            k,
            size,
            modulus,
            add,
            mul,
            neg,
            inv,
            gen,
            exp,
            log,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn characteristic(&self) -> i64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> &[i64] {
        &self.modulus
    }

    pub fn generator(&self) -> usize {
        self.gen
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b] as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        assert!(a != 0, "zero has no inverse");
        self.inv[a] as usize
    }

    pub fn div(&self, a: usize, b: usize) -> usize {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: usize, e: i64) -> usize {
        if a == 0 {
            assert!(e > 0, "0^e needs e > 0");
            return 0;
        }
        let n = self.size as i64 - 1;
        let e = e.rem_euclid(n);
        self.exp[((self.log[a] as i64 * e) % n) as usize] as usize
    }
}
