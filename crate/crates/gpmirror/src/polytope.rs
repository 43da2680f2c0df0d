//! Reflexive lattice simplices and their associated toric data: dual
//! vertices, degrees and weights, boundary point sets, the weighted
//! embedding into `Z^I`, and the finite quotient group of the mirror
//! construction.

use crate::linalg::{self, rat, rat_vec, Int, Rat};
use num::{Integer, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("not a simplex: {0}")]
    NotASimplex(String),
    #[error("not reflexive: {0}")]
    NotReflexive(String),
    #[error("origin is not an interior point of the simplex")]
    OriginNotInterior,
}

/// A reflexive simplex together with all derived toric data.
///
/// Vertices index the set `I`; their order is fixed by the input and is
/// semantic (all exponent vectors downstream are indexed by it).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflexiveSimplex {
    /// `n` vertices in `Z^{n-1}`.
    pub vertices: Vec<Vec<i64>>,
    /// Dual vertices `w_i` with `<v_i, w_j> + 1 = delta_ij d_i`.
    pub dual_vertices: Vec<Vec<i64>>,
    /// Degrees `d_i`.
    pub degrees: Vec<i64>,
    /// `d = lcm(d_i) = sum(q_i)`.
    pub total_degree: i64,
    /// Weights `q_i = d / d_i`.
    pub weights: Vec<i64>,
}

/// Boundary lattice points not interior to a codimension-1 face, in
/// lexicographic order, with the smallest containing face of each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundaryPointSet {
    pub points: Vec<Vec<i64>>,
    /// For each point, the set of vertex indices with vanishing barycentric
    /// coordinate; the smallest face containing the point is spanned by the
    /// complementary vertices.
    pub face_tags: Vec<Vec<usize>>,
}

impl BoundaryPointSet {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn index_of(&self, p: &[i64]) -> Option<usize> {
        self.points.iter().position(|q| q == p)
    }
}

/// Invariant factors (each > 1, in divisibility order) of the finite
/// abelian group `ker(q) / iota(0 + M)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreenePlesserGroup {
    pub invariant_factors: Vec<u64>,
}

impl GreenePlesserGroup {
    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PotentialCoeff {
    /// The distinguished monomial `-z^{iota(1,0)}`.
    NegOne,
    /// The coefficient `b_p` for the `p`-th boundary point.
    Param(usize),
}

/// Monomial list of the potential `W_b`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MirrorPotential {
    pub terms: Vec<(PotentialCoeff, Vec<i64>)>,
}

/// Validate a vertex list as a reflexive simplex and derive its toric data.
pub fn validate_reflexive(vertices: Vec<Vec<i64>>) -> Result<ReflexiveSimplex, PolytopeError> {
    let n = vertices.len();
    if n < 2 {
        return Err(PolytopeError::NotASimplex("need at least 2 vertices".into()));
    }
    let dim = n - 1;
    if vertices.iter().any(|v| v.len() != dim) {
        return Err(PolytopeError::NotASimplex(format!(
            "expected {n} vertices of length {dim}"
        )));
    }
    // Affine independence: differences from the first vertex span.
    let diffs: Vec<Vec<Rat>> = (1..n)
        .map(|i| {
            (0..dim)
                .map(|c| rat(vertices[i][c] - vertices[0][c]))
                .collect()
        })
        .collect();
    if linalg::rank(&diffs) != dim {
        return Err(PolytopeError::NotASimplex(
            "vertices are affinely dependent".into(),
        ));
    }
    // Origin interior: all barycentric coordinates of 0 strictly positive.
    let bary = barycentric_raw(&vertices, &vec![Rat::zero(); dim])
        .ok_or(PolytopeError::OriginNotInterior)?;
    if bary.iter().any(|b| !b.is_positive()) {
        return Err(PolytopeError::OriginNotInterior);
    }
    // Dual vertices: w_i solves <v_j, w_i> = -1 for all j != i.
    let mut dual = Vec::with_capacity(n);
    let mut degrees = Vec::with_capacity(n);
    for i in 0..n {
        let rows: Vec<Vec<Rat>> = (0..n)
            .filter(|&j| j != i)
            .map(|j| rat_vec(&vertices[j]))
            .collect();
        if linalg::rank(&rows) != dim {
            return Err(PolytopeError::OriginNotInterior);
        }
        let rhs = vec![-Rat::one(); dim];
        let w = linalg::solve(&rows, &rhs).ok_or(PolytopeError::OriginNotInterior)?;
        let mut wi = Vec::with_capacity(dim);
        for x in &w {
            if !x.denom().is_one() {
                return Err(PolytopeError::NotReflexive(format!(
                    "dual vertex {i} is non-integral"
                )));
            }
            let v: Int = x.numer().clone();
            wi.push(i64::try_from(&v).expect("dual vertex coordinate overflow"));
        }
        let pairing: i64 = vertices[i].iter().zip(&wi).map(|(a, b)| a * b).sum();
        let di = pairing + 1;
        if di <= 0 {
            return Err(PolytopeError::OriginNotInterior);
        }
        dual.push(wi);
        degrees.push(di);
    }
    let d = degrees.iter().fold(1i64, |acc, &x| acc.lcm(&x));
    let weights: Vec<i64> = degrees.iter().map(|&di| d / di).collect();
    // sum(1/d_i) = 1 exactly.
    let sum_inv: Rat = degrees.iter().map(|&di| rat(1) / rat(di)).sum();
    if !sum_inv.is_one() {
        return Err(PolytopeError::NotReflexive(
            "degree reciprocals do not sum to 1".into(),
        ));
    }
    // sum(q_i w_i) = 0 and d = sum(q_i).
    for c in 0..dim {
        let s: i64 = (0..n).map(|i| weights[i] * dual[i][c]).sum();
        if s != 0 {
            return Err(PolytopeError::NotReflexive(
                "weighted dual vertices do not cancel".into(),
            ));
        }
    }
    if weights.iter().sum::<i64>() != d {
        return Err(PolytopeError::NotReflexive("weights do not sum to d".into()));
    }
    let simplex = ReflexiveSimplex {
        vertices,
        dual_vertices: dual,
        degrees,
        total_degree: d,
        weights,
    };
    // Reflexivity also demands the origin be the only interior lattice point.
    let interior = simplex.interior_lattice_points();
    if interior.len() != 1 {
        return Err(PolytopeError::NotReflexive(format!(
            "{} interior lattice points (expected exactly the origin)",
            interior.len()
        )));
    }
    Ok(simplex)
}

fn barycentric_raw(vertices: &[Vec<i64>], x: &[Rat]) -> Option<Vec<Rat>> {
    let n = vertices.len();
    let dim = n - 1;
    // Rows: one per ambient coordinate, plus the affine constraint.
    let mut rows: Vec<Vec<Rat>> = (0..dim)
        .map(|c| (0..n).map(|i| rat(vertices[i][c])).collect())
        .collect();
    rows.push(vec![Rat::one(); n]);
    let mut rhs: Vec<Rat> = x.to_vec();
    rhs.push(Rat::one());
    linalg::solve(&rows, &rhs)
}

impl ReflexiveSimplex {
    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn dim(&self) -> usize {
        self.n() - 1
    }

    /// Barycentric coordinates of a lattice point.
    pub fn barycentric(&self, x: &[i64]) -> Vec<Rat> {
        barycentric_raw(&self.vertices, &rat_vec(x)).expect("simplex is nondegenerate")
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        self.barycentric(x).iter().all(|b| !b.is_negative())
    }

    fn bounding_box(&self) -> Vec<(i64, i64)> {
        (0..self.dim())
            .map(|c| {
                let lo = self.vertices.iter().map(|v| v[c]).min().unwrap();
                let hi = self.vertices.iter().map(|v| v[c]).max().unwrap();
                (lo, hi)
            })
            .collect()
    }

    /// All lattice points of the simplex, by bounding-box scan with exact
    /// barycentric sign tests.
    pub fn lattice_points(&self) -> Vec<Vec<i64>> {
        let boxes = self.bounding_box();
        let mut out = Vec::new();
        let mut cur = vec![0i64; self.dim()];
        scan(&boxes, 0, &mut cur, &mut |p| {
            if self.contains(p) {
                out.push(p.to_vec());
            }
        });
        out
    }

    pub fn interior_lattice_points(&self) -> Vec<Vec<i64>> {
        self.lattice_points()
            .into_iter()
            .filter(|p| self.barycentric(p).iter().all(|b| b.is_positive()))
            .collect()
    }

    /// Boundary lattice points not in the relative interior of a
    /// codimension-1 face (vertices always included), lexicographic order.
    pub fn boundary_points(&self) -> BoundaryPointSet {
        let mut pts: Vec<(Vec<i64>, Vec<usize>)> = Vec::new();
        for p in self.lattice_points() {
            let bary = self.barycentric(&p);
            let zeros: Vec<usize> = bary
                .iter()
                .enumerate()
                .filter(|(_, b)| b.is_zero())
                .map(|(i, _)| i)
                .collect();
            if zeros.is_empty() {
                continue; // interior
            }
            let is_vertex = zeros.len() == self.n() - 1;
            if zeros.len() >= 2 || is_vertex {
                pts.push((p, zeros));
            }
        }
        pts.sort();
        let (points, face_tags) = pts.into_iter().unzip();
        BoundaryPointSet { points, face_tags }
    }

    /// The embedding `iota(k, m) = k e_I + sum_i <w_i, m> e_i`.
    pub fn iota(&self, k: i64, m: &[i64]) -> Vec<i64> {
        assert_eq!(m.len(), self.dim());
        self.dual_vertices
            .iter()
            .map(|w| k + w.iter().zip(m).map(|(a, b)| a * b).sum::<i64>())
            .collect()
    }

    /// The finite abelian group `ker(q) / iota(0 + M)`.
    pub fn greene_plesser_group(&self) -> GreenePlesserGroup {
        let n = self.n();
        let q_row = vec![self.weights.iter().map(|&q| Int::from(q)).collect::<Vec<_>>()];
        let kernel = linalg::integer_kernel(&q_row);
        debug_assert_eq!(kernel.len(), n - 1);
        // Coordinates of iota(0, e_j) in the kernel basis.
        let kt: Vec<Vec<Rat>> = (0..n)
            .map(|c| {
                kernel
                    .iter()
                    .map(|k| Rat::from_integer(k[c].clone()))
                    .collect()
            })
            .collect();
        let mut coords = Vec::new();
        for j in 0..self.dim() {
            let mut e = vec![0i64; self.dim()];
            e[j] = 1;
            let g = self.iota(0, &e);
            let rhs = rat_vec(&g);
            let sol = linalg::solve(&kt, &rhs).expect("iota image lies in ker(q)");
            coords.push(
                sol.iter()
                    .map(|x| {
                        assert!(x.denom().is_one());
                        x.numer().clone()
                    })
                    .collect::<Vec<Int>>(),
            );
        }
        let factors = linalg::smith_invariant_factors(&coords);
        let invariant_factors = factors
            .iter()
            .filter(|f| !f.is_one())
            .map(|f| u64::try_from(f).expect("invariant factor overflow"))
            .collect();
        GreenePlesserGroup { invariant_factors }
    }

    /// Monomial list of `W_b = -z^{iota(1,0)} + sum_p b_p z^{iota(1,p)}`.
    pub fn mirror_potential(&self, pts: &BoundaryPointSet) -> MirrorPotential {
        assert!(!pts.is_empty(), "boundary point set is empty");
        let mut terms = vec![(PotentialCoeff::NegOne, self.iota(1, &vec![0; self.dim()]))];
        for (idx, p) in pts.points.iter().enumerate() {
            terms.push((PotentialCoeff::Param(idx), self.iota(1, p)));
        }
        for (_, e) in &terms {
            let wdeg: i64 = e.iter().zip(&self.weights).map(|(a, b)| a * b).sum();
            debug_assert_eq!(wdeg, self.total_degree);
        }
        MirrorPotential { terms }
    }

    /// Pairing `<q, x>` of the weight vector against an exponent in `Z^I`.
    pub fn weight_pairing(&self, x: &[i64]) -> i64 {
        x.iter().zip(&self.weights).map(|(a, b)| a * b).sum()
    }
}

fn scan(boxes: &[(i64, i64)], c: usize, cur: &mut Vec<i64>, f: &mut impl FnMut(&[i64])) {
    if c == boxes.len() {
        f(cur);
        return;
    }
    for x in boxes[c].0..=boxes[c].1 {
        cur[c] = x;
        scan(boxes, c + 1, cur, f);
    }
}

/// The degree-`n` hypersurface simplex `conv(e_1, ..., e_{n-1}, -sum e_i)`.
pub fn hypersurface_simplex(n: usize) -> ReflexiveSimplex {
    assert!(n >= 2);
    let dim = n - 1;
    let mut verts = Vec::new();
    for i in 0..dim {
        let mut v = vec![0i64; dim];
        v[i] = 1;
        verts.push(v);
    }
    verts.push(vec![-1i64; dim]);
    validate_reflexive(verts).expect("hypersurface simplex is reflexive")
}

/// The dual simplex `{x_i >= -1, sum x_i <= 1}` (mirror quartic for n = 4).
pub fn dual_hypersurface_simplex(n: usize) -> ReflexiveSimplex {
    assert!(n >= 2);
    let dim = n - 1;
    let mut verts = Vec::new();
    for i in 0..dim {
        let mut v = vec![-1i64; dim];
        v[i] = dim as i64;
        verts.push(v);
    }
    verts.push(vec![-1i64; dim]);
    validate_reflexive(verts).expect("dual hypersurface simplex is reflexive")
}
