//! Small finite fields `F_{p^k}` with exact table-free arithmetic.
//!
//! Elements are encoded as integers in `0..p^k`, read base-`p` as the
//! coefficient vector of a residue polynomial modulo a fixed monic
//! irreducible of degree `k`. Inverses are precomputed once.

/// A finite field of order `q = p^k`.
#[derive(Debug, Clone)]
pub struct FiniteField {
    pub p: u64,
    pub k: u32,
    pub q: u64,
    /// Monic irreducible modulus, coefficients low-to-high, length `k + 1`.
    pub modulus: Vec<u64>,
    inv: Vec<u64>,
}

fn decode(mut x: u64, p: u64, k: u32) -> Vec<u64> {
    let mut out = vec![0u64; k as usize];
    for d in out.iter_mut() {
        *d = x % p;
        x /= p;
    }
    out
}

fn encode(digits: &[u64], p: u64) -> u64 {
    digits.iter().rev().fold(0u64, |acc, &d| acc * p + d)
}

/// Remainder of `a` modulo the monic polynomial `m` over `F_p`
/// (coefficients low-to-high).
fn poly_rem(a: &mut Vec<u64>, m: &[u64], p: u64) {
    let dm = m.len() - 1;
    while a.len() > dm {
        let lead = *a.last().unwrap() % p;
        let shift = a.len() - 1 - dm;
        if lead != 0 {
            for j in 0..=dm {
                let idx = shift + j;
                a[idx] = (a[idx] + (p - lead % p) * m[j]) % p;
            }
        }
        a.pop();
    }
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_is_zero(a: &[u64]) -> bool {
    a.iter().all(|&x| x == 0)
}

/// Trial-division irreducibility over `F_p` for small degrees.
fn is_irreducible(m: &[u64], p: u64) -> bool {
    let deg = m.len() - 1;
    for d in 1..=deg / 2 {
        // All monic divisor candidates of degree d.
        let count = p.pow(d as u32);
        for idx in 0..count {
            let mut div = decode(idx, p, d as u32);
            div.push(1);
            let mut rem = m.to_vec();
            poly_rem(&mut rem, &div, p);
            if poly_is_zero(&rem) {
                return false;
            }
        }
    }
    true
}

impl FiniteField {
    /// Build `F_{p^k}`; panics if `p` is not prime or the order overflows
    /// practical bounds.
    pub fn new(p: u64, k: u32) -> Self {
        assert!(p >= 2 && (2..p).all(|d| d * d > p || p % d != 0), "p must be prime");
        assert!(k >= 1);
        let q = p.checked_pow(k).expect("field order overflow");
        // Smallest monic irreducible of degree k in lexicographic order of
        // the lower coefficients.
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            (0..p.pow(k))
                .map(|idx| {
                    let mut m = decode(idx, p, k);
                    m.push(1);
                    m
                })
                .find(|m| is_irreducible(m, p))
                .expect("an irreducible polynomial of every degree exists")
        };
        let mut field = FiniteField {
            p,
            k,
            q,
            modulus,
            inv: Vec::new(),
        };
        let mut inv = vec![0u64; q as usize];
        for a in 1..q {
            if inv[a as usize] != 0 || a == 1 {
                // may already be filled as the partner of an earlier element
            }
            if inv[a as usize] == 0 {
                let b = field.pow(a, q - 2);
                inv[a as usize] = b;
                inv[b as usize] = a;
            }
        }
        field.inv = inv;
        field
    }

    pub fn elements(&self) -> impl Iterator<Item = u64> {
        0..self.q
    }

    /// Embed an integer via the prime subfield.
    pub fn from_int(&self, n: i64) -> u64 {
        (n.rem_euclid(self.p as i64)) as u64
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return (a + b) % self.p;
        }
        let da = decode(a, self.p, self.k);
        let db = decode(b, self.p, self.k);
        let sum: Vec<u64> = da.iter().zip(&db).map(|(x, y)| (x + y) % self.p).collect();
        encode(&sum, self.p)
    }

    pub fn neg(&self, a: u64) -> u64 {
        if self.k == 1 {
            return (self.p - a % self.p) % self.p;
        }
        let da = decode(a, self.p, self.k);
        let n: Vec<u64> = da.iter().map(|&x| (self.p - x) % self.p).collect();
        encode(&n, self.p)
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.k == 1 {
            return a * b % self.p;
        }
        let da = decode(a, self.p, self.k);
        let db = decode(b, self.p, self.k);
        let mut prod = vec![0u64; 2 * self.k as usize - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % self.p;
            }
        }
        poly_rem(&mut prod, &self.modulus, self.p);
        prod.resize(self.k as usize, 0);
        encode(&prod, self.p)
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inverse(&self, a: u64) -> u64 {
        assert!(a != 0, "zero has no inverse");
        self.inv[a as usize]
    }

    /// `a` raised to an integer power that may be negative.
    pub fn int_pow(&self, a: u64, e: i64) -> u64 {
        if e >= 0 {
            self.pow(a, e as u64)
        } else {
            self.pow(self.inverse(a), (-e) as u64)
        }
    }
}
