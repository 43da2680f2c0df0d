//! Height-induced regular subdivisions, the fan refinement conditions on a
//! height vector, volume bookkeeping for the induced decomposition, the
//! tropical smoothness criterion, and a finite-field brute-force
//! smoothness oracle.

use crate::gf::FiniteField;
use crate::linalg::{
    det, dot, integer_kernel, nullspace, primitive_integer, rat, rat_vec, smith_invariant_factors,
    solve, Int, Rat,
};
use crate::lp::{Lp, Sense};
use crate::polytope::ReflexiveSimplex;
use itertools::Itertools;
use num::{Integer, One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SubdivisionError {
    #[error("a vertex of the polytope has infinite height")]
    InfiniteVertexHeight,
    #[error("heights do not satisfy the refinement condition: {0}")]
    MpcpViolation(String),
    #[error("brute-force budget exceeded: {0} point evaluations requested")]
    BudgetExceeded(u64),
}

/// Heights on a finite point set; `None` encodes height infinity (a missing
/// monomial).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightAssignment {
    pub points: Vec<Vec<i64>>,
    pub heights: Vec<Option<Rat>>,
}

impl HeightAssignment {
    pub fn new(points: Vec<Vec<i64>>, heights: Vec<Option<Rat>>) -> Self {
        assert_eq!(points.len(), heights.len());
        HeightAssignment { points, heights }
    }

    pub fn finite(points: Vec<Vec<i64>>, heights: Vec<Rat>) -> Self {
        let heights = heights.into_iter().map(Some).collect();
        HeightAssignment::new(points, heights)
    }
}

/// One domain of linearity of the induced piecewise-affine function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    /// Indices of finite-height points on which the supporting affine
    /// functional is tight.
    pub tight: Vec<usize>,
    /// Indices of the extreme points of the cell.
    pub vertices: Vec<usize>,
    /// Indices of points of the configuration (any height) lying in the
    /// cell but not among its vertices.
    pub non_vertex_points: Vec<usize>,
    /// Ambient-coordinate supporting functional `(a, b)` with
    /// `a.x + b = -v(x)` on the cell and `<= -v` everywhere.
    pub functional: (Vec<Rat>, Rat),
    /// Normalized affine volume of the cell in the saturated lattice of
    /// the affine hull of the configuration.
    pub volume: Int,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularSubdivision {
    /// Affine dimension of the configuration.
    pub dim: usize,
    pub cells: Vec<Cell>,
}

/// Integer coordinates of `points` in a basis of the saturated lattice of
/// their affine hull, translated so the first point is the origin.
/// Returns the coordinates, the rank, and the basis vectors (ambient).
fn affine_lattice_coords(points: &[Vec<i64>]) -> (Vec<Vec<i64>>, usize, Vec<Vec<i64>>) {
    assert!(!points.is_empty());
    let n = points[0].len();
    let base = &points[0];
    let diffs: Vec<Vec<Rat>> = points[1..]
        .iter()
        .map(|p| {
            p.iter()
                .zip(base)
                .map(|(a, b)| rat(a - b))
                .collect()
        })
        .collect();
    let normals = nullspace(&diffs);
    let basis: Vec<Vec<i64>> = if normals.is_empty() {
        (0..n)
            .map(|i| {
                let mut e = vec![0i64; n];
                e[i] = 1;
                e
            })
            .collect()
    } else {
        let rows: Vec<Vec<Int>> = normals.iter().map(|v| primitive_integer(v)).collect();
        integer_kernel(&rows)
            .into_iter()
            .map(|v| {
                v.iter()
                    .map(|x| i64::try_from(x).expect("basis entry fits i64"))
                    .collect()
            })
            .collect()
    };
    let r = basis.len();
    // Solve basis * c = p - base for each point; saturation makes c integral.
    let mat: Vec<Vec<Rat>> = (0..n)
        .map(|i| basis.iter().map(|b| rat(b[i])).collect())
        .collect();
    let coords = points
        .iter()
        .map(|p| {
            let rhs: Vec<Rat> = p.iter().zip(base).map(|(a, b)| rat(a - b)).collect();
            let sol = solve(&mat, &rhs).expect("point lies in the affine hull");
            sol.iter()
                .map(|x| {
                    assert!(x.is_integer(), "saturated basis gives integer coordinates");
                    i64::try_from(x.numer()).unwrap()
                })
                .collect::<Vec<i64>>()
        })
        .collect();
    (coords, r, basis)
}

/// Is `q` in the convex hull of the given points (all in the same
/// coordinate system)?
fn in_convex_hull(q: &[i64], pts: &[&Vec<i64>]) -> bool {
    if pts.is_empty() {
        return false;
    }
    let n = q.len();
    let mut lp = Lp::new(pts.len());
    for v in 0..pts.len() {
        lp.set_nonneg(v);
    }
    for i in 0..n {
        let coeffs: Vec<Rat> = pts.iter().map(|p| rat(p[i])).collect();
        lp.add(coeffs, Sense::Eq, rat(q[i]));
    }
    lp.add(vec![Rat::one(); pts.len()], Sense::Eq, Rat::one());
    lp.feasible()
}

/// Indices (into `pts`) of the extreme points of `conv(pts)`.
fn extreme_points(pts: &[Vec<i64>]) -> Vec<usize> {
    (0..pts.len())
        .filter(|&i| {
            let others: Vec<&Vec<i64>> = pts
                .iter()
                .enumerate()
                .filter(|(j, p)| *j != i && *p != &pts[i])
                .map(|(_, p)| p)
                .collect();
            !in_convex_hull(&pts[i], &others)
        })
        .collect()
}

/// Normalized affine volume (determinant-normalized, so a unimodular
/// simplex has volume 1) of the convex hull of full-dimensional `points`
/// in `Z^r`. Returns 0 when the points do not span.
pub fn normalized_volume(points: &[Vec<i64>]) -> Int {
    let pts: Vec<Vec<i64>> = points
        .iter()
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if pts.is_empty() {
        return Int::zero();
    }
    let r = pts[0].len();
    if r == 0 {
        return Int::one();
    }
    if r == 1 {
        let lo = pts.iter().map(|p| p[0]).min().unwrap();
        let hi = pts.iter().map(|p| p[0]).max().unwrap();
        return Int::from(hi - lo);
    }
    let diffs: Vec<Vec<Rat>> = pts[1..]
        .iter()
        .map(|p| p.iter().zip(&pts[0]).map(|(a, b)| rat(a - b)).collect())
        .collect();
    if crate::linalg::rank(&diffs) < r {
        return Int::zero();
    }
    if pts.len() == r + 1 {
        let m: Vec<Vec<Rat>> = pts[1..]
            .iter()
            .map(|p| p.iter().zip(&pts[0]).map(|(a, b)| rat(a - b)).collect())
            .collect();
        return det(&m).numer().abs();
    }
    // Pyramid decomposition over the facets not containing the lex-least
    // vertex.
    let v0 = &pts[0];
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut total = Int::zero();
    for subset in (0..pts.len()).combinations(r) {
        let p0 = &pts[subset[0]];
        let rows: Vec<Vec<Rat>> = subset[1..]
            .iter()
            .map(|&i| {
                pts[i]
                    .iter()
                    .zip(p0)
                    .map(|(a, b)| rat(a - b))
                    .collect()
            })
            .collect();
        let ns = nullspace(&rows);
        if ns.len() != 1 {
            continue;
        }
        let alpha = primitive_integer(&ns[0]);
        let val = |p: &[i64]| -> Int {
            p.iter()
                .zip(&alpha)
                .map(|(&x, a)| a * Int::from(x))
                .sum()
        };
        let c = val(p0);
        let mut pos = false;
        let mut neg = false;
        for p in &pts {
            let d = val(p) - &c;
            if d.is_positive() {
                pos = true;
            } else if d.is_negative() {
                neg = true;
            }
        }
        if pos && neg {
            continue;
        }
        let tight: Vec<usize> = (0..pts.len()).filter(|&i| val(&pts[i]) == c).collect();
        if !seen.insert(tight.clone()) {
            continue;
        }
        let height = (val(v0) - &c).abs();
        if height.is_zero() {
            continue;
        }
        let facet_pts: Vec<Vec<i64>> = tight.iter().map(|&i| pts[i].clone()).collect();
        let (coords, rank, _) = affine_lattice_coords(&facet_pts);
        if rank != r - 1 {
            continue;
        }
        total += normalized_volume(&coords) * height;
    }
    total
}

/// The regular subdivision induced by the heights: the domains of
/// linearity of the largest convex function below the lifted finite
/// points.
pub fn regular_subdivision(h: &HeightAssignment) -> Result<RegularSubdivision, SubdivisionError> {
    let all = &h.points;
    // Every extreme point of the configuration must have a finite height.
    let ext = extreme_points(all);
    for &i in &ext {
        if h.heights[i].is_none() {
            return Err(SubdivisionError::InfiniteVertexHeight);
        }
    }
    let finite: Vec<usize> = (0..all.len()).filter(|&i| h.heights[i].is_some()).collect();
    let (coords, r, basis) = affine_lattice_coords(all);
    let base = &all[0];
    let v = |i: usize| -> Rat { h.heights[i].clone().unwrap() };

    let mut cells: BTreeMap<Vec<usize>, (Vec<Rat>, Rat)> = BTreeMap::new();
    for subset in finite.iter().copied().combinations(r + 1) {
        // Solve a . c_i + b = -v_i on the subset.
        let mat: Vec<Vec<Rat>> = subset
            .iter()
            .map(|&i| {
                let mut row = rat_vec(&coords[i]);
                row.push(Rat::one());
                row
            })
            .collect();
        if crate::linalg::rank(&mat) < r + 1 {
            continue;
        }
        let rhs: Vec<Rat> = subset.iter().map(|&i| -v(i)).collect();
        let sol = match solve(&mat, &rhs) {
            Some(s) => s,
            None => continue,
        };
        let (a, b) = (sol[..r].to_vec(), sol[r].clone());
        let ell = |i: usize| -> Rat { dot(&a, &rat_vec(&coords[i])) + &b };
        if finite.iter().any(|&i| ell(i) > -v(i)) {
            continue;
        }
        let tight: Vec<usize> = finite.iter().copied().filter(|&i| ell(i) == -v(i)).collect();
        cells.entry(tight).or_insert((a, b));
    }

    let mut out = Vec::new();
    for (tight, (a, b)) in cells {
        let tight_pts: Vec<Vec<i64>> = tight.iter().map(|&i| coords[i].clone()).collect();
        let vert_local = extreme_points(&tight_pts);
        let vertices: Vec<usize> = vert_local.iter().map(|&j| tight[j]).collect();
        let vert_coord: Vec<&Vec<i64>> = vert_local.iter().map(|&j| &tight_pts[j]).collect();
        let non_vertex_points: Vec<usize> = (0..all.len())
            .filter(|&i| !vertices.contains(&i) && in_convex_hull(&coords[i], &vert_coord))
            .collect();
        let volume = normalized_volume(&tight_pts);
        // Lift the functional to ambient coordinates: a_amb . basis_k = a_k.
        let lift_rows: Vec<Vec<Rat>> = basis.iter().map(|bv| rat_vec(bv)).collect();
        let a_amb = solve(&lift_rows, &a).expect("lift of the cell functional");
        let b_amb = &b - dot(&a_amb, &rat_vec(base));
        out.push(Cell {
            tight,
            vertices,
            non_vertex_points,
            functional: (a_amb, b_amb),
            volume,
        });
    }
    Ok(RegularSubdivision { dim: r, cells: out })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TropicalVerdict {
    Smooth,
    /// Each entry names a cell (by its tight set) and the violated
    /// hypothesis.
    Inconclusive(Vec<String>),
}

/// The combinatorial smoothness criterion: smooth when every cell is a
/// simplex meeting the configuration only at its vertices, with
/// normalized volume not divisible by the residue characteristic.
pub fn tropical_smoothness(
    h: &HeightAssignment,
    characteristic: u64,
) -> Result<TropicalVerdict, SubdivisionError> {
    let sub = regular_subdivision(h)?;
    let mut reasons = Vec::new();
    for cell in &sub.cells {
        if cell.vertices.len() != sub.dim + 1 {
            reasons.push(format!(
                "cell {:?} is not a simplex ({} vertices in dimension {})",
                cell.tight,
                cell.vertices.len(),
                sub.dim
            ));
            continue;
        }
        if !cell.non_vertex_points.is_empty() {
            reasons.push(format!(
                "cell {:?} meets the configuration off its vertices at {:?}",
                cell.tight, cell.non_vertex_points
            ));
        }
        if characteristic > 0 && (&cell.volume % Int::from(characteristic)).is_zero() {
            reasons.push(format!(
                "cell {:?} has volume {} divisible by the characteristic {}",
                cell.tight, cell.volume, characteristic
            ));
        }
    }
    if reasons.is_empty() {
        Ok(TropicalVerdict::Smooth)
    } else {
        Ok(TropicalVerdict::Inconclusive(reasons))
    }
}

/// Top-dimensional cones of the fan induced by positive heights on the
/// boundary point set, each given as the sorted index set of its tight
/// boundary points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fan {
    pub cones: Vec<Vec<usize>>,
}

/// The fan whose maximal cones are the domains of linearity of the
/// piecewise-linear function induced by heights `-lambda_p` on the
/// boundary points: vertices of `{ y : <p, y> >= -lambda_p }` index the
/// maximal cones, tight constraints give the generators.
pub fn fan_from_heights(simplex: &ReflexiveSimplex, lambda: &[Rat]) -> Fan {
    let pts = simplex.boundary_points();
    assert_eq!(lambda.len(), pts.points.len());
    assert!(lambda.iter().all(|l| l.is_positive()), "heights must be positive");
    let r = simplex.dim();
    let np = pts.points.len();
    let mut cones: BTreeSet<Vec<usize>> = BTreeSet::new();
    for subset in (0..np).combinations(r) {
        let mat: Vec<Vec<Rat>> = subset.iter().map(|&i| rat_vec(&pts.points[i])).collect();
        let rhs: Vec<Rat> = subset.iter().map(|&i| -&lambda[i]).collect();
        if crate::linalg::rank(&mat) < r {
            continue;
        }
        let y = match solve(&mat, &rhs) {
            Some(y) => y,
            None => continue,
        };
        let val = |i: usize| -> Rat { dot(&rat_vec(&pts.points[i]), &y) };
        if (0..np).any(|i| val(i) < -&lambda[i]) {
            continue;
        }
        let tight: Vec<usize> = (0..np).filter(|&i| val(i) == -&lambda[i]).collect();
        cones.insert(tight);
    }
    Fan {
        cones: cones.into_iter().collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum McVerdict {
    /// Simplicial refinement with rays through every boundary point, and
    /// every cone avoiding the top-cone interiors of the face fan is
    /// generated by part of a lattice basis.
    Mpcs,
    MpcpOnly { witness: String },
    Neither { witness: String },
}

/// Does the relative interior of the cone spanned by `gens` meet the
/// interior of the cone over the facet opposite vertex `i`?
fn relint_meets_facet_interior(
    simplex: &ReflexiveSimplex,
    gens: &[&Vec<i64>],
    facet: usize,
) -> bool {
    let r = simplex.dim();
    let fverts: Vec<&Vec<i64>> = simplex
        .vertices
        .iter()
        .enumerate()
        .filter(|(j, _)| *j != facet)
        .map(|(_, v)| v)
        .collect();
    // sum mu_k g_k = sum nu_j v_j with mu, nu >= 1 (scaling makes strict
    // positivity equivalent to >= 1).
    let nvars = gens.len() + fverts.len();
    let mut lp = Lp::new(nvars);
    for i in 0..r {
        let mut coeffs: Vec<Rat> = gens.iter().map(|g| rat(g[i])).collect();
        coeffs.extend(fverts.iter().map(|v| -rat(v[i])));
        lp.add(coeffs, Sense::Eq, Rat::zero());
    }
    for k in 0..nvars {
        let mut coeffs = vec![Rat::zero(); nvars];
        coeffs[k] = Rat::one();
        lp.add(coeffs, Sense::Ge, Rat::one());
    }
    lp.feasible()
}

/// Check the refinement conditions on a height vector: simplicial
/// refinement of the face fan with rays through every boundary point
/// (the partial-desingularization condition), and smoothness of all
/// cones that avoid the face-fan top-cone interiors (the stronger
/// condition).
pub fn mpcp_mpcs_check(simplex: &ReflexiveSimplex, lambda: &[Rat]) -> McVerdict {
    let pts = simplex.boundary_points();
    let r = simplex.dim();
    let fan = fan_from_heights(simplex, lambda);
    // Simpliciality with rays through every point: each maximal cone must
    // be tight exactly on an independent generator set of full size, and
    // every boundary point must appear as a ray.
    let mut used: BTreeSet<usize> = BTreeSet::new();
    for cone in &fan.cones {
        if cone.len() != r {
            return McVerdict::Neither {
                witness: format!(
                    "cone {:?} has {} tight points, expected {} (non-simplex cell)",
                    cone,
                    cone.len(),
                    r
                ),
            };
        }
        let mat: Vec<Vec<Rat>> = cone.iter().map(|&i| rat_vec(&pts.points[i])).collect();
        if crate::linalg::rank(&mat) < r {
            return McVerdict::Neither {
                witness: format!("cone {:?} has dependent generators", cone),
            };
        }
        // Refinement: all generators must lie in one common facet.
        let mut common: BTreeSet<usize> = pts.face_tags[cone[0]].iter().copied().collect();
        for &i in &cone[1..] {
            let tags: BTreeSet<usize> = pts.face_tags[i].iter().copied().collect();
            common = common.intersection(&tags).copied().collect();
        }
        if common.is_empty() {
            return McVerdict::Neither {
                witness: format!("cone {:?} is not contained in a single facet cone", cone),
            };
        }
        used.extend(cone.iter().copied());
    }
    if used.len() != pts.points.len() {
        let missing: Vec<usize> = (0..pts.points.len()).filter(|i| !used.contains(i)).collect();
        return McVerdict::Neither {
            witness: format!("boundary points {missing:?} are not rays of the fan"),
        };
    }
    // Stronger condition: every face of every maximal cone that does not
    // meet the interior of a top cone of the face fan must be smooth.
    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    for cone in &fan.cones {
        for size in 1..=cone.len() {
            for f in cone.iter().copied().combinations(size) {
                faces.insert(f);
            }
        }
    }
    for face in &faces {
        let gens: Vec<&Vec<i64>> = face.iter().map(|&i| &pts.points[i]).collect();
        let exempt = (0..simplex.n())
            .any(|i| relint_meets_facet_interior(simplex, &gens, i));
        if exempt {
            continue;
        }
        let mat: Vec<Vec<Int>> = gens
            .iter()
            .map(|g| g.iter().map(|&x| Int::from(x)).collect())
            .collect();
        let inv = smith_invariant_factors(&mat);
        if inv.len() != face.len() || inv.iter().any(|x| !x.is_one()) {
            return McVerdict::MpcpOnly {
                witness: format!(
                    "cone {:?} avoids all top-cone interiors but has invariant factors {:?}",
                    face, inv
                ),
            };
        }
    }
    McVerdict::Mpcs
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    MLattice,
    DegreeSublattice,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VolumeReport {
    pub normalization: Normalization,
    /// Generator index sets of the maximal cones, in fan order.
    pub cells: Vec<Vec<usize>>,
    /// Determinant volumes with respect to a basis of the chosen lattice.
    pub raw_volumes: Vec<Int>,
    /// Raw volumes divided by their common gcd, so the minimum achievable
    /// cell volume is 1.
    pub normalized_volumes: Vec<Int>,
    pub lcm_raw: Int,
    pub lcm_normalized: Int,
    pub lcm_prime_factors: Vec<(Int, u32)>,
}

/// Prime factorization by trial division.
pub fn prime_factorization(n: &Int) -> Vec<(Int, u32)> {
    let mut n = n.abs();
    assert!(n.is_positive(), "factorization of a positive integer");
    let mut out = Vec::new();
    let mut d = Int::from(2);
    while &d * &d <= n {
        let mut e = 0u32;
        while (&n % &d).is_zero() {
            n /= &d;
            e += 1;
        }
        if e > 0 {
            out.push((d.clone(), e));
        }
        d += Int::one();
    }
    if !n.is_one() {
        out.push((n, 1));
    }
    out
}

/// Volumes of the simplices coned at the origin over the maximal cells of
/// the height-induced decomposition, measured either in the ambient
/// lattice or in the image of the degree-zero sublattice embedding.
pub fn lcm_lambda(
    simplex: &ReflexiveSimplex,
    lambda: &[Rat],
    normalization: Normalization,
) -> Result<VolumeReport, SubdivisionError> {
    match mpcp_mpcs_check(simplex, lambda) {
        McVerdict::Neither { witness } => {
            return Err(SubdivisionError::MpcpViolation(witness));
        }
        _ => {}
    }
    let pts = simplex.boundary_points();
    let fan = fan_from_heights(simplex, lambda);
    let mut raw = Vec::new();
    for cone in &fan.cones {
        let vol = match normalization {
            Normalization::MLattice => {
                let m: Vec<Vec<Rat>> = cone.iter().map(|&i| rat_vec(&pts.points[i])).collect();
                det(&m).numer().abs()
            }
            Normalization::DegreeSublattice => {
                // Basis of { x in Z^n : sum q_i x_i = 0 } and coordinates
                // of the degree-zero embedding of each generator.
                let qrow: Vec<Vec<Int>> =
                    vec![simplex.weights.iter().map(|&q| Int::from(q)).collect()];
                let basis = integer_kernel(&qrow);
                let n = simplex.n();
                let mat: Vec<Vec<Rat>> = (0..n)
                    .map(|i| basis.iter().map(|b| Rat::from(b[i].clone())).collect())
                    .collect();
                let rows: Vec<Vec<Rat>> = cone
                    .iter()
                    .map(|&i| {
                        let img = simplex.iota(0, &pts.points[i]);
                        let rhs: Vec<Rat> = img.iter().map(|&x| rat(x)).collect();
                        solve(&mat, &rhs).expect("image lies in the degree-zero sublattice")
                    })
                    .collect();
                det(&rows).numer().abs()
            }
        };
        raw.push(vol);
    }
    let g = raw
        .iter()
        .fold(Int::zero(), |acc, v| acc.gcd(v))
        .max(Int::one());
    let normalized: Vec<Int> = raw.iter().map(|v| v / &g).collect();
    let lcm_raw = raw.iter().fold(Int::one(), |acc, v| acc.lcm(v));
    let lcm_normalized = normalized.iter().fold(Int::one(), |acc, v| acc.lcm(v));
    let lcm_prime_factors = prime_factorization(&lcm_normalized.clone().max(Int::one()));
    Ok(VolumeReport {
        normalization,
        cells: fan.cones,
        raw_volumes: raw,
        normalized_volumes: normalized,
        lcm_raw,
        lcm_normalized,
        lcm_prime_factors,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SmoothVerdict {
    Smooth,
    Singular { witness: Vec<u64> },
}

/// Exhaustively scan affine space (or the torus, when the potential is a
/// genuine Laurent polynomial) for points where the potential and all its
/// partials vanish simultaneously. Budget: at most 10^7 evaluations.
pub fn bruteforce_smooth(
    field: &FiniteField,
    nvars: usize,
    terms: &[(u64, Vec<i64>)],
) -> Result<SmoothVerdict, SubdivisionError> {
    const BUDGET: u64 = 10_000_000;
    let total = field
        .q
        .checked_pow(nvars as u32)
        .filter(|&t| t <= BUDGET)
        .ok_or(SubdivisionError::BudgetExceeded(BUDGET + 1))?;
    let laurent = terms.iter().any(|(_, e)| e.iter().any(|&x| x < 0));
    let mut z = vec![0u64; nvars];
    for idx in 0..total {
        let mut rem = idx;
        for zi in z.iter_mut() {
            *zi = rem % field.q;
            rem /= field.q;
        }
        if laurent && z.iter().any(|&x| x == 0) {
            continue;
        }
        let mut w = 0u64;
        let mut partials = vec![0u64; nvars];
        for (c, e) in terms {
            let mut mono = *c;
            for j in 0..nvars {
                mono = field.mul(mono, field.int_pow(z[j], e[j]));
            }
            w = field.add(w, mono);
            for j in 0..nvars {
                let ej = field.from_int(e[j]);
                if ej == 0 {
                    continue;
                }
                let dmono = if laurent {
                    // Logarithmic derivative z_j d/dz_j on the torus.
                    field.mul(ej, mono)
                } else {
                    // Ordinary partial; recompute the monomial with one
                    // lower exponent in z_j.
                    let mut d = field.mul(*c, ej);
                    for l in 0..nvars {
                        let exp = if l == j { e[l] - 1 } else { e[l] };
                        d = field.mul(d, field.int_pow(z[l], exp));
                    }
                    d
                };
                partials[j] = field.add(partials[j], dmono);
            }
        }
        if w == 0 && partials.iter().all(|&x| x == 0) {
            return Ok(SmoothVerdict::Singular { witness: z.clone() });
        }
    }
    Ok(SmoothVerdict::Smooth)
}
