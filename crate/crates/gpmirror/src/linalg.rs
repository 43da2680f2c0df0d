//! Exact linear algebra over the rationals and the integers.
//!
//! Everything here is dense and small: the matrices that show up are at most
//! a few dozen rows wide, so simple Gaussian / Hermite / Smith elimination
//! with arbitrary-precision entries is both exact and fast enough.

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

pub type Int = BigInt;
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(Int::from(n))
}

pub fn rat_vec(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| rat(x)).collect()
}

pub fn int_vec(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

/// Dot product of rational vectors.
pub fn dot(a: &[Rat], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Dot product of an integer vector against a rational one.
pub fn dot_ir(a: &[i64], b: &[Rat]) -> Rat {
    assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(&x, y)| y * rat(x)).sum()
}

/// Row-reduce `m` in place, returning pivot column indices.
///
/// `m` may be an augmented matrix; elimination runs over the first
/// `cols` columns only.
fn row_reduce(m: &mut [Vec<Rat>], cols: usize) -> Vec<usize> {
    let rows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                let row_r = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&row_r) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

/// Rank of a rational matrix.
pub fn rank(a: &[Vec<Rat>]) -> usize {
    if a.is_empty() {
        return 0;
    }
    let cols = a[0].len();
    let mut m = a.to_vec();
    row_reduce(&mut m, cols).len()
}

/// One solution of `A x = b`, or `None` if the system is inconsistent.
pub fn solve(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let rows = a.len();
    assert_eq!(rows, b.len());
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<Rat>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = row_reduce(&mut m, cols);
    // Inconsistent if a zero row has nonzero rhs.
    for row in &m {
        if row[..cols].iter().all(|x| x.is_zero()) && !row[cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Rat::zero(); cols];
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = m[r][cols].clone();
    }
    Some(x)
}

/// Basis of the rational nullspace `{x : A x = 0}`.
pub fn nullspace(a: &[Vec<Rat>]) -> Vec<Vec<Rat>> {
    if a.is_empty() {
        return Vec::new();
    }
    let cols = a[0].len();
    let mut m = a.to_vec();
    let pivots = row_reduce(&mut m, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    let mut basis = Vec::new();
    for &f in &free {
        let mut v = vec![Rat::zero(); cols];
        v[f] = Rat::one();
        for (r, &c) in pivots.iter().enumerate() {
            v[c] = -m[r][f].clone();
        }
        basis.push(v);
    }
    basis
}

/// Determinant of a square rational matrix.
pub fn det(a: &[Vec<Rat>]) -> Rat {
    let n = a.len();
    if n == 0 {
        return Rat::one();
    }
    assert_eq!(n, a[0].len());
    let mut m = a.to_vec();
    let mut d = Rat::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Rat::zero();
        };
        if p != c {
            m.swap(c, p);
            d = -d;
        }
        d *= &m[c][c];
        let inv = m[c][c].recip();
        for i in c + 1..n {
            if !m[i][c].is_zero() {
                let f = &m[i][c] * &inv;
                let row_c = m[c].clone();
                for (x, y) in m[i].iter_mut().zip(&row_c) {
                    *x -= &f * y;
                }
            }
        }
    }
    d
}

/// Divide an integer vector by the gcd of its entries (keeping orientation).
pub fn primitive(v: &[Int]) -> Vec<Int> {
    let mut g = Int::zero();
    for x in v {
        g = g.gcd(x);
    }
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

/// Clear denominators of a rational vector into a primitive integer vector.
pub fn primitive_integer(v: &[Rat]) -> Vec<Int> {
    let mut lcm = Int::one();
    for x in v {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<Int> = v.iter().map(|x| x.numer() * &lcm / x.denom()).collect();
    primitive(&ints)
}

/// Hermite normal form of the row span of `a` (row-style, nonnegative
/// pivots), together with the unimodular transform `u` with `u * a = h`.
pub fn hnf(a: &[Vec<Int>]) -> (Vec<Vec<Int>>, Vec<Vec<Int>>) {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut h = a.to_vec();
    let mut u: Vec<Vec<Int>> = (0..rows)
        .map(|i| {
            (0..rows)
                .map(|j| if i == j { Int::one() } else { Int::zero() })
                .collect()
        })
        .collect();
    let mut r = 0;
    for c in 0..cols {
        // Clear column c below row r by gcd steps.
        loop {
            let mut best: Option<usize> = None;
            for i in r..rows {
                if !h[i][c].is_zero() {
                    best = match best {
                        None => Some(i),
                        Some(b) if h[i][c].abs() < h[b][c].abs() => Some(i),
                        keep => keep,
                    };
                }
            }
            let Some(p) = best else { break };
            h.swap(r, p);
            u.swap(r, p);
            if h[r][c].is_negative() {
                for x in h[r].iter_mut() {
                    *x = -x.clone();
                }
                for x in u[r].iter_mut() {
                    *x = -x.clone();
                }
            }
            let mut done = true;
            for i in r + 1..rows {
                if !h[i][c].is_zero() {
                    let q = h[i][c].div_floor(&h[r][c]);
                    let (hr, ur) = (h[r].clone(), u[r].clone());
                    for (x, y) in h[i].iter_mut().zip(&hr) {
                        *x -= &q * y;
                    }
                    for (x, y) in u[i].iter_mut().zip(&ur) {
                        *x -= &q * y;
                    }
                    if !h[i][c].is_zero() {
                        done = false;
                    }
                }
            }
            if done {
                break;
            }
        }
        if r < rows && !h[r][c].is_zero() {
            // Reduce entries above the pivot.
            for i in 0..r {
                let q = h[i][c].div_floor(&h[r][c]);
                if !q.is_zero() {
                    let (hr, ur) = (h[r].clone(), u[r].clone());
                    for (x, y) in h[i].iter_mut().zip(&hr) {
                        *x -= &q * y;
                    }
                    for (x, y) in u[i].iter_mut().zip(&ur) {
                        *x -= &q * y;
                    }
                }
            }
            r += 1;
        }
        if r == rows {
            break;
        }
    }
    (h, u)
}

/// Basis of the integer kernel `{x in Z^n : A x = 0}` for an m x n matrix.
pub fn integer_kernel(a: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let m = a.len();
    if m == 0 {
        return Vec::new();
    }
    let n = a[0].len();
    // Rows of the transpose; HNF bookkeeping rows that reduce to zero span
    // the kernel.
    let at: Vec<Vec<Int>> = (0..n).map(|j| (0..m).map(|i| a[i][j].clone()).collect()).collect();
    let (h, u) = hnf(&at);
    let mut ker = Vec::new();
    for (hrow, urow) in h.iter().zip(&u) {
        if hrow.iter().all(|x| x.is_zero()) {
            ker.push(urow.clone());
        }
    }
    ker
}

/// Smith normal form invariant factors (nonzero diagonal entries, each
/// dividing the next).
pub fn smith_invariant_factors(a: &[Vec<Int>]) -> Vec<Int> {
    let mut m = a.to_vec();
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut factors = Vec::new();
    let mut top = 0;
    while top < rows && top < cols {
        // Find a nonzero pivot in the submatrix.
        let mut piv: Option<(usize, usize)> = None;
        for i in top..rows {
            for j in top..cols {
                if !m[i][j].is_zero() {
                    piv = match piv {
                        None => Some((i, j)),
                        Some((pi, pj)) if m[i][j].abs() < m[pi][pj].abs() => Some((i, j)),
                        keep => keep,
                    };
                }
            }
        }
        let Some((pi, pj)) = piv else { break };
        m.swap(top, pi);
        for row in m.iter_mut() {
            row.swap(top, pj);
        }
        loop {
            let mut clean = true;
            for i in top + 1..rows {
                if !m[i][top].is_zero() {
                    let q = m[i][top].div_floor(&m[top][top]);
                    let prow = m[top].clone();
                    for (x, y) in m[i].iter_mut().zip(&prow) {
                        *x -= &q * y;
                    }
                    if !m[i][top].is_zero() {
                        m.swap(top, i);
                        clean = false;
                    }
                }
            }
            for j in top + 1..cols {
                if !m[top][j].is_zero() {
                    let q = m[top][j].div_floor(&m[top][top]);
                    if !q.is_zero() {
                        for i in top..rows {
                            let s = &q * &m[i][top];
                            m[i][j] -= s;
                        }
                    }
                    if !m[top][j].is_zero() {
                        for i in top..rows {
                            let t = m[i][top].clone();
                            m[i][top] = m[i][j].clone();
                            m[i][j] = t;
                        }
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        // Ensure divisibility: pivot must divide every remaining entry.
        let mut redo = false;
        'scan: for i in top + 1..rows {
            for j in top + 1..cols {
                if !(&m[i][j] % &m[top][top]).is_zero() {
                    let prow: Vec<Int> = m[i].clone();
                    for (x, y) in m[top].iter_mut().zip(&prow) {
                        *x += y;
                    }
                    redo = true;
                    break 'scan;
                }
            }
        }
        if redo {
            continue;
        }
        if m[top][top].is_negative() {
            m[top][top] = -m[top][top].clone();
        }
        factors.push(m[top][top].clone());
        top += 1;
    }
    factors
}

/// Index of the sublattice spanned by `gens` inside the lattice spanned by
/// `ambient` (both given as spanning sets of the same rank). Returns `None`
/// if the ranks differ.
pub fn lattice_index(ambient: &[Vec<Int>], gens: &[Vec<Int>]) -> Option<Int> {
    // Coordinates of each generator in a basis of the ambient lattice.
    let (h, _) = hnf(ambient);
    let basis: Vec<Vec<Int>> = h
        .into_iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    let rk = basis.len();
    let bt: Vec<Vec<Rat>> = (0..basis[0].len())
        .map(|j| basis.iter().map(|r| Rat::from_integer(r[j].clone())).collect())
        .collect();
    let mut coords = Vec::new();
    for g in gens {
        let rhs: Vec<Rat> = g.iter().map(|x| Rat::from_integer(x.clone())).collect();
        let sol = solve(&bt, &rhs)?;
        coords.push(sol);
    }
    if rank(&coords) != rk {
        return None;
    }
    // Square up: index = gcd of all rk x rk minors; for a square coordinate
    // matrix it is just |det|.
    if coords.len() == rk {
        let d = det(&coords);
        let d = d.abs();
        if !d.denom().is_one() {
            return None;
        }
        return Some(d.numer().clone());
    }
    // Non-square: reduce the integer coordinate matrix via SNF.
    let int_coords: Vec<Vec<Int>> = coords
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| {
                    assert!(x.denom().is_one(), "generators not in ambient lattice");
                    x.numer().clone()
                })
                .collect()
        })
        .collect();
    let inv = smith_invariant_factors(&int_coords);
    Some(inv.iter().product())
}
