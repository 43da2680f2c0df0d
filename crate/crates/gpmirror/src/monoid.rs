//! The relation lattice `K` of a boundary point set and its distinguished
//! submonoids, with bounded enumeration, extremal-ray reports, and a partial
//! order on enumerated cone points.
//!
//! Truncation is always by a linear grading functional that is strictly
//! positive on the relevant cone; positivity is certified by exact LP, never
//! assumed.

use crate::linalg::{self, dot_ir, rat, rat_vec, Int, Rat};
use crate::lp::{Lp, LpOutcome, Sense};
use crate::polytope::BoundaryPointSet;
use itertools::Itertools;
use num::{Integer, One, Signed, Zero};
use std::collections::{BTreeSet, HashMap};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MonoidError {
    #[error("cone is not strongly convex (grading cannot be certified)")]
    NotStronglyConvex,
    #[error("niceness violation: {0}")]
    NicenessViolation(String),
}

/// Basis of `K = ker(Z^P -> M, e_p -> p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationLattice {
    /// The boundary points, fixing the coordinate order of `Z^P`.
    pub points: Vec<Vec<i64>>,
    /// Rows span `K`.
    pub basis: Vec<Vec<i64>>,
    pub rank: usize,
}

pub fn relation_lattice(p: &BoundaryPointSet) -> RelationLattice {
    assert!(!p.is_empty());
    let dim = p.points[0].len();
    let a: Vec<Vec<Int>> = (0..dim)
        .map(|i| p.points.iter().map(|pt| Int::from(pt[i])).collect())
        .collect();
    let ker = linalg::integer_kernel(&a);
    let basis: Vec<Vec<i64>> = ker
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| i64::try_from(x).expect("kernel basis entry overflow"))
                .collect()
        })
        .collect();
    let rank = basis.len();
    RelationLattice {
        points: p.points.clone(),
        basis,
        rank,
    }
}

impl RelationLattice {
    /// Is `u` a member of `K` (i.e. does it pair to zero with every point)?
    pub fn contains(&self, u: &[i64]) -> bool {
        assert_eq!(u.len(), self.points.len());
        let dim = self.points[0].len();
        (0..dim).all(|i| {
            self.points
                .iter()
                .zip(u)
                .map(|(p, &c)| p[i] * c)
                .sum::<i64>()
                == 0
        })
    }
}

/// Strictly positive truncation functional on `cone(K_+ u {e_p})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradingFunctional {
    /// One positive rational weight per point of `P`, with `min_p = 1`.
    pub lambda: Vec<Rat>,
    /// Certified minima of the functional over the unit sections of each
    /// cone `K_p` (empty cones omitted); all strictly positive.
    pub certificate: Vec<(usize, Rat)>,
}

impl GradingFunctional {
    pub fn grade(&self, u: &[i64]) -> Rat {
        dot_ir(u, &self.lambda)
    }
}

/// The submonoids of interest inside `Z^P`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonoidSelector {
    /// `K_{>=0}`: members of `K` with all entries nonnegative.
    Knonneg,
    /// `K_p`: members of `K` nonnegative away from the given index.
    Kp(usize),
    /// The submonoid generated by all `K_p`.
    Kplus,
    /// `(Z_{>=0})^P + K_+`.
    AmbientNonneg,
}

/// A strictly positive functional on the relation cone, produced by exact LP.
///
/// The cone `cone(K_+ + (Z_{>=0})^P)` is generated by the unit vectors and
/// the extremal rays of the cones `K_p`; each such ray has at most one
/// negative coordinate and support at most `rank(P) + 1`, so it is a signed
/// circuit of the point configuration. The LP picks an interior point of
/// the dual cone by requiring pairing at least 1 against every generator
/// (this is where the all-ones functional fails: the mirror quartic's
/// `e_1 + e_3 - 2 e_2` pairs to zero with any constant functional) and
/// minimizing the total weight, then rescales so the smallest unit grade
/// is 1. Strict positivity on each cone `K_p` is additionally certified by
/// minimizing the functional over the section `sum_{q != p} u_q = 1`, which
/// meets every ray of `K_p`.
pub fn default_grading(k: &RelationLattice) -> Result<GradingFunctional, MonoidError> {
    let np = k.points.len();
    let rays = kp_extremal_rays(k);
    // A line inside the cone makes the dual interior empty.
    for r in &rays {
        let neg: Vec<i64> = r.iter().map(|x| -x).collect();
        if rays.contains(&neg) {
            return Err(MonoidError::NotStronglyConvex);
        }
    }
    // Constraint generation: thousands of circuit constraints exist, but
    // only a handful bind at the optimum. Start from the unit-weight box
    // and add the first violated circuit until all pairings are >= 1.
    let rays: Vec<Vec<i64>> = rays.into_iter().collect();
    let objective = vec![Rat::one(); np];
    let mut active: Vec<usize> = Vec::new();
    let mut lambda;
    loop {
        let mut lp = Lp::new(np);
        for p in 0..np {
            let mut row = vec![Rat::zero(); np];
            row[p] = Rat::one();
            lp.add(row, Sense::Ge, Rat::one());
        }
        for &i in &active {
            lp.add(rat_vec(&rays[i]), Sense::Ge, Rat::one());
        }
        lambda = match lp.minimize(&objective) {
            LpOutcome::Optimal(_, x) => x,
            _ => return Err(MonoidError::NotStronglyConvex),
        };
        let violated = (0..rays.len())
            .find(|i| !active.contains(i) && dot_ir(&rays[*i], &lambda) < Rat::one());
        match violated {
            Some(i) => active.push(i),
            None => break,
        }
    }
    let min = lambda.iter().min().cloned().unwrap();
    for l in lambda.iter_mut() {
        *l = &*l / &min;
    }
    let mut certificate = Vec::new();
    for p in 0..np {
        match kp_section_minimum(k, &lambda, p) {
            None => continue, // K_p cone is trivial
            Some(m) => {
                if !m.is_positive() {
                    return Err(MonoidError::NotStronglyConvex);
                }
                certificate.push((p, m));
            }
        }
    }
    Ok(GradingFunctional { lambda, certificate })
}

/// All extremal rays of the cones `K_p`, as primitive integer vectors.
///
/// An extremal ray of `K_p` (a face of the 19-or-so-dimensional cone cut by
/// one tight constraint short of a vertex) is supported on at most
/// `rank + 1` points whose configuration vectors are minimally dependent —
/// a signed circuit with at most one negative entry. Enumerating minimal
/// dependent subsets is exact and cheap in the ambient dimensions at hand.
pub fn kp_extremal_rays(k: &RelationLattice) -> BTreeSet<Vec<i64>> {
    let np = k.points.len();
    let dim = if np == 0 { 0 } else { k.points[0].len() };
    let mut rays = BTreeSet::new();
    for size in 2..=(dim + 1).min(np) {
        for subset in (0..np).combinations(size) {
            // Points as columns: nullspace vectors are relation coefficients.
            let mat: Vec<Vec<Rat>> = (0..dim)
                .map(|i| subset.iter().map(|&q| rat(k.points[q][i])).collect())
                .collect();
            let ns = linalg::nullspace(&mat);
            if ns.len() != 1 {
                continue;
            }
            let v = linalg::primitive_integer(&ns[0]);
            if v.iter().any(|x| x.is_zero()) {
                continue; // not minimal: a smaller subset is dependent
            }
            for sign in [1i64, -1] {
                let mut u = vec![0i64; np];
                for (slot, &q) in subset.iter().enumerate() {
                    u[q] = sign * i64::try_from(&v[slot]).expect("circuit entry fits i64");
                }
                if u.iter().filter(|&&x| x < 0).count() <= 1 {
                    rays.insert(u);
                }
            }
        }
    }
    rays
}

/// Minimum of `lambda . u` over `{u in K_R : u_q >= 0 (q != p),
/// sum_{q != p} u_q = 1}`, or `None` if that section is empty.
///
/// The section meets every nonzero ray of `cone(K_p)`: if the off-`p`
/// entries of a member all vanish, the member is a multiple of `e_p`, which
/// pairs against the nonzero point `p` and so is zero.
fn kp_section_minimum(k: &RelationLattice, lambda: &[Rat], p: usize) -> Option<Rat> {
    let np = k.points.len();
    if k.rank == 0 {
        return None;
    }
    let mut lp = Lp::new(k.rank);
    // u_q = sum_j z_j basis[j][q]
    for q in 0..np {
        if q == p {
            continue;
        }
        let row: Vec<Rat> = (0..k.rank).map(|j| rat(k.basis[j][q])).collect();
        lp.add(row, Sense::Ge, Rat::zero());
    }
    let section: Vec<Rat> = (0..k.rank)
        .map(|j| {
            (0..np)
                .filter(|&q| q != p)
                .map(|q| rat(k.basis[j][q]))
                .sum()
        })
        .collect();
    lp.add(section, Sense::Eq, Rat::one());
    let objective: Vec<Rat> = (0..k.rank)
        .map(|j| {
            (0..np)
                .map(|q| &lambda[q] * rat(k.basis[j][q]))
                .sum()
        })
        .collect();
    match lp.minimize(&objective) {
        LpOutcome::Infeasible => None,
        LpOutcome::Unbounded => Some(-Rat::one()),
        LpOutcome::Optimal(v, _) => Some(v),
    }
}

/// All members of the selected monoid with grade at most `n`, sorted by
/// (grade, lex).
pub fn enumerate(
    selector: MonoidSelector,
    k: &RelationLattice,
    lambda: &GradingFunctional,
    n: &Rat,
) -> Vec<Vec<i64>> {
    match selector {
        MonoidSelector::Knonneg => enumerate_halfspaces(k, lambda, n, None),
        MonoidSelector::Kp(p) => enumerate_halfspaces(k, lambda, n, Some(p)),
        MonoidSelector::Kplus => {
            let gens = kp_union(k, lambda, n);
            additive_closure(&gens, lambda, n)
        }
        MonoidSelector::AmbientNonneg => {
            let mut gens = kp_union(k, lambda, n);
            for p in 0..k.points.len() {
                let mut e = vec![0i64; k.points.len()];
                e[p] = 1;
                gens.insert(e);
            }
            additive_closure(&gens, lambda, n)
        }
    }
}

fn kp_union(k: &RelationLattice, lambda: &GradingFunctional, n: &Rat) -> BTreeSet<Vec<i64>> {
    let mut gens = BTreeSet::new();
    for p in 0..k.points.len() {
        for u in enumerate_halfspaces(k, lambda, n, Some(p)) {
            if u.iter().any(|&x| x != 0) {
                gens.insert(u);
            }
        }
    }
    gens
}

/// Closure of `{0} u gens` under addition, truncated at grade `n`.
fn additive_closure(
    gens: &BTreeSet<Vec<i64>>,
    lambda: &GradingFunctional,
    n: &Rat,
) -> Vec<Vec<i64>> {
    let np = lambda.lambda.len();
    let mut set: BTreeSet<Vec<i64>> = BTreeSet::new();
    set.insert(vec![0i64; np]);
    let mut frontier: Vec<Vec<i64>> = vec![vec![0i64; np]];
    while let Some(u) = frontier.pop() {
        for g in gens {
            let v: Vec<i64> = u.iter().zip(g).map(|(a, b)| a + b).collect();
            if &lambda.grade(&v) <= n && !set.contains(&v) {
                set.insert(v.clone());
                frontier.push(v);
            }
        }
    }
    sort_by_grade(set.into_iter().collect(), lambda)
}

fn sort_by_grade(mut v: Vec<Vec<i64>>, lambda: &GradingFunctional) -> Vec<Vec<i64>> {
    v.sort_by(|a, b| lambda.grade(a).cmp(&lambda.grade(b)).then_with(|| a.cmp(b)));
    v
}

/// Branch-and-bound over the coordinates of `K` in its lattice basis.
/// Exact LPs compute a global bounding box once (boundedness is exactly the
/// strict positivity of the grading on the cone); the tree search then uses
/// exact integer interval propagation, so no rational LP runs per node.
/// `neg_allowed` is the index exempt from the nonnegativity constraints
/// (`K_p`), or `None` for `K_{>=0}`.
fn enumerate_halfspaces(
    k: &RelationLattice,
    lambda: &GradingFunctional,
    n: &Rat,
    neg_allowed: Option<usize>,
) -> Vec<Vec<i64>> {
    let np = k.points.len();
    if n.is_negative() {
        return Vec::new();
    }
    if k.rank == 0 {
        return vec![vec![0i64; np]];
    }
    // Clear denominators of the grading so every constraint is integral:
    // sum_j ghat_j z_j <= floor(n * d) with ghat_j = sum_q d*lambda_q B_jq.
    let denom: Int = lambda
        .lambda
        .iter()
        .fold(Int::one(), |acc, l| acc.lcm(l.denom()));
    let weights: Vec<i64> = lambda
        .lambda
        .iter()
        .map(|l| i64::try_from(&(l * Rat::from(denom.clone())).to_integer()).unwrap())
        .collect();
    let gbound =
        i64::try_from(&(n * Rat::from(denom.clone())).floor().to_integer()).unwrap();
    // All constraints in the form sum_j a_j z_j >= b.
    let mut cons: Vec<(Vec<i64>, i64)> = Vec::new();
    for q in 0..np {
        if Some(q) == neg_allowed {
            continue;
        }
        cons.push(((0..k.rank).map(|j| k.basis[j][q]).collect(), 0));
    }
    let grow: Vec<i64> = (0..k.rank)
        .map(|j| {
            -(0..np)
                .map(|q| weights[q] * k.basis[j][q])
                .sum::<i64>()
        })
        .collect();
    cons.push((grow, -gbound));

    // Global per-coordinate bounds by exact LP over the full region.
    let mut lp = Lp::new(k.rank);
    for (a, b) in &cons {
        lp.add(rat_vec(a), Sense::Ge, rat(*b));
    }
    let mut box_lo = vec![0i64; k.rank];
    let mut box_hi = vec![0i64; k.rank];
    for j in 0..k.rank {
        let mut obj = vec![Rat::zero(); k.rank];
        obj[j] = Rat::one();
        box_lo[j] = match lp.minimize(&obj) {
            LpOutcome::Infeasible => return Vec::new(),
            LpOutcome::Unbounded => panic!("grading is not strictly positive on the cone"),
            LpOutcome::Optimal(v, _) => {
                i64::try_from(&v.ceil().to_integer()).expect("enumeration bound overflow")
            }
        };
        box_hi[j] = match lp.maximize(&obj) {
            LpOutcome::Infeasible => return Vec::new(),
            LpOutcome::Unbounded => panic!("grading is not strictly positive on the cone"),
            LpOutcome::Optimal(v, _) => {
                i64::try_from(&v.floor().to_integer()).expect("enumeration bound overflow")
            }
        };
    }

    let mut out = Vec::new();
    let mut zfix: Vec<i64> = Vec::new();
    let rhs: Vec<i64> = cons.iter().map(|(_, b)| *b).collect();
    bb_recurse(
        k,
        &cons,
        &rhs,
        &box_lo,
        &box_hi,
        &mut zfix,
        &mut out,
    );
    sort_by_grade(out, lambda)
}

/// One fixpoint round of interval tightening for the suffix variables.
/// Returns false when some constraint is certainly violated.
fn propagate(
    cons: &[(Vec<i64>, i64)],
    rhs: &[i64],
    t: usize,
    lo: &mut [i64],
    hi: &mut [i64],
) -> bool {
    loop {
        let mut changed = false;
        for (c, (a, _)) in cons.iter().enumerate() {
            // Maximum achievable value of the suffix of constraint c.
            let max_rest = |skip: usize| -> i128 {
                (t..a.len())
                    .filter(|&j| j != skip)
                    .map(|j| {
                        let aj = a[j] as i128;
                        if aj >= 0 {
                            aj * hi[j] as i128
                        } else {
                            aj * lo[j] as i128
                        }
                    })
                    .sum()
            };
            let full_max: i128 = max_rest(usize::MAX);
            if full_max < rhs[c] as i128 {
                return false;
            }
            for j in t..a.len() {
                if a[j] == 0 {
                    continue;
                }
                let rest = full_max
                    - (if a[j] >= 0 {
                        a[j] as i128 * hi[j] as i128
                    } else {
                        a[j] as i128 * lo[j] as i128
                    });
                let need = rhs[c] as i128 - rest;
                // a_j z_j >= need.
                if a[j] > 0 {
                    let bound = need.div_euclid(a[j] as i128)
                        + if need.rem_euclid(a[j] as i128) != 0 { 1 } else { 0 };
                    if bound > lo[j] as i128 {
                        lo[j] = i64::try_from(bound).expect("propagation overflow");
                        changed = true;
                    }
                } else {
                    let bound = (-need).div_euclid((-a[j]) as i128);
                    if bound < hi[j] as i128 {
                        hi[j] = i64::try_from(bound).expect("propagation overflow");
                        changed = true;
                    }
                }
                if lo[j] > hi[j] {
                    return false;
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

fn bb_recurse(
    k: &RelationLattice,
    cons: &[(Vec<i64>, i64)],
    rhs: &[i64],
    lo: &[i64],
    hi: &[i64],
    zfix: &mut Vec<i64>,
    out: &mut Vec<Vec<i64>>,
) {
    let np = k.points.len();
    let t = zfix.len();
    if t == k.rank {
        // The residual rhs already accounts for the fixed prefix; a point
        // is valid iff every constraint holds with an empty suffix.
        if rhs.iter().all(|&b| b <= 0) {
            let u: Vec<i64> = (0..np)
                .map(|q| (0..k.rank).map(|j| zfix[j] * k.basis[j][q]).sum())
                .collect();
            out.push(u);
        }
        return;
    }
    let mut lo = lo.to_vec();
    let mut hi = hi.to_vec();
    if !propagate(cons, rhs, t, &mut lo, &mut hi) {
        return;
    }
    for z in lo[t]..=hi[t] {
        let rhs_next: Vec<i64> = cons
            .iter()
            .zip(rhs)
            .map(|((a, _), b)| b - a[t] * z)
            .collect();
        zfix.push(z);
        bb_recurse(k, cons, &rhs_next, &lo, &hi, zfix, out);
        zfix.pop();
    }
}

/// The primitive positive relation supported on the point subset `c`, if
/// `conv(c)` is a simplex with vertex set `c` whose relative interior
/// contains the origin; `None` otherwise. Such a relation spans an extremal
/// ray of `K_{>=0}`.
pub fn circuit_ray(k: &RelationLattice, c: &[usize]) -> Option<Vec<i64>> {
    if c.is_empty() {
        return None;
    }
    let mut uniq: Vec<usize> = c.to_vec();
    uniq.sort_unstable();
    uniq.dedup();
    if uniq.len() != c.len() {
        return None;
    }
    let dim = k.points[0].len();
    let rows: Vec<Vec<Rat>> = (0..dim)
        .map(|i| uniq.iter().map(|&j| rat(k.points[j][i])).collect())
        .collect();
    let ns = linalg::nullspace(&rows);
    if ns.len() != 1 {
        return None;
    }
    let mut v = linalg::primitive_integer(&ns[0]);
    if v.iter().all(|x| !x.is_positive()) {
        for x in v.iter_mut() {
            *x = -x.clone();
        }
    }
    if v.iter().any(|x| !x.is_positive()) {
        return None;
    }
    let mut u = vec![0i64; k.points.len()];
    for (slot, &j) in uniq.iter().enumerate() {
        u[j] = i64::try_from(&v[slot]).expect("circuit coefficient overflow");
    }
    Some(u)
}

/// An integer dependence `sum lhs = sum rhs` among extremal elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dependence {
    pub lhs: Vec<(i64, Vec<i64>)>,
    pub rhs: Vec<(i64, Vec<i64>)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreenessReport {
    pub bound: Rat,
    /// Indecomposable nonzero members of `K_{>=0}` up to the bound: not a
    /// sum of two nonzero enumerated members.
    pub extremal: Vec<Vec<i64>>,
    /// `None` means free up to the bound.
    pub dependence: Option<Dependence>,
}

pub fn freeness_witness(
    k: &RelationLattice,
    lambda: &GradingFunctional,
    n: &Rat,
) -> FreenessReport {
    let elems = enumerate(MonoidSelector::Knonneg, k, lambda, n);
    let set: BTreeSet<Vec<i64>> = elems.iter().cloned().collect();
    let nonzero: Vec<&Vec<i64>> = elems.iter().filter(|u| u.iter().any(|&x| x != 0)).collect();
    let extremal: Vec<Vec<i64>> = nonzero
        .iter()
        .filter(|u| {
            !nonzero.iter().any(|v| {
                v != *u && {
                    let w: Vec<i64> = u.iter().zip(v.iter()).map(|(a, b)| a - b).collect();
                    w.iter().any(|&x| x != 0) && set.contains(&w)
                }
            })
        })
        .map(|u| (*u).clone())
        .collect();
    let dependence = if extremal.len() > k.rank {
        find_dependence(&extremal)
    } else {
        None
    };
    FreenessReport {
        bound: n.clone(),
        extremal,
        dependence,
    }
}

fn find_dependence(extremal: &[Vec<i64>]) -> Option<Dependence> {
    let np = extremal[0].len();
    // Kernel of the matrix whose columns are the extremal vectors.
    let a: Vec<Vec<Int>> = (0..np)
        .map(|q| extremal.iter().map(|u| Int::from(u[q])).collect())
        .collect();
    let ker = linalg::integer_kernel(&a);
    // Pick the relation with the smallest coefficient 1-norm (then lex) so
    // witnesses are small and deterministic.
    let best = ker.into_iter().min_by_key(|c| {
        (
            c.iter().map(|x| x.abs()).sum::<Int>(),
            c.iter().map(|x| x.clone()).collect::<Vec<_>>(),
        )
    })?;
    let mut lhs = Vec::new();
    let mut rhs = Vec::new();
    for (i, coeff) in best.iter().enumerate() {
        let c = i64::try_from(coeff).expect("dependence coefficient overflow");
        match c.cmp(&0) {
            std::cmp::Ordering::Greater => lhs.push((c, extremal[i].clone())),
            std::cmp::Ordering::Less => rhs.push((-c, extremal[i].clone())),
            std::cmp::Ordering::Equal => {}
        }
    }
    Some(Dependence { lhs, rhs })
}

/// Does the cone generated by `gens` contain no line?
///
/// A line exists iff some nontrivial nonnegative combination of the nonzero
/// generators vanishes; decided by exact LP with box-bounded multipliers.
pub fn strong_convexity(gens: &[Vec<i64>]) -> bool {
    let gens: Vec<&Vec<i64>> = gens.iter().filter(|g| g.iter().any(|&x| x != 0)).collect();
    if gens.is_empty() {
        return true;
    }
    let m = gens.len();
    let np = gens[0].len();
    let mut lp = Lp::new(m);
    for i in 0..m {
        lp.set_nonneg(i);
        let mut row = vec![Rat::zero(); m];
        row[i] = Rat::one();
        lp.add(row, Sense::Le, Rat::one());
    }
    for q in 0..np {
        let row: Vec<Rat> = gens.iter().map(|g| rat(g[q])).collect();
        lp.add(row, Sense::Eq, Rat::zero());
    }
    let ones = vec![Rat::one(); m];
    match lp.maximize(&ones) {
        LpOutcome::Optimal(v, _) => v.is_zero(),
        LpOutcome::Infeasible => true,
        LpOutcome::Unbounded => false,
    }
}

/// Partial order on a finite enumerated set of cone points.
///
/// `u <=1 v` iff `v - u` is an enumerated cone member; `u <=2 w` iff
/// `y(w) = 0` and `w - u + e_p` is a nonzero member for some `p` in the
/// declared unit set; `u <= v` iff `u <=1 v` or `u <=2 w <=1 v` for some
/// enumerated `w`. Niceness (every declared unit vector belongs to the cone)
/// is verified at construction.
pub struct ConePoset {
    elems: Vec<Vec<i64>>,
    set: BTreeSet<Vec<i64>>,
    units: Vec<Vec<i64>>,
    /// Rows of a homomorphism `Z^P -> Y`.
    y: Vec<Vec<i64>>,
}

impl ConePoset {
    pub fn new(
        elems: Vec<Vec<i64>>,
        unit_indices: &[usize],
        y: Vec<Vec<i64>>,
    ) -> Result<Self, MonoidError> {
        let np = elems.first().map(|e| e.len()).unwrap_or(0);
        let set: BTreeSet<Vec<i64>> = elems.iter().cloned().collect();
        let mut units = Vec::new();
        for &p in unit_indices {
            let mut e = vec![0i64; np];
            e[p] = 1;
            if !set.contains(&e) {
                return Err(MonoidError::NicenessViolation(format!(
                    "unit vector e_{p} is not an enumerated cone member"
                )));
            }
            units.push(e);
        }
        Ok(ConePoset { elems, set, units, y })
    }

    fn leq1(&self, u: &[i64], v: &[i64]) -> bool {
        let d: Vec<i64> = v.iter().zip(u).map(|(a, b)| a - b).collect();
        self.set.contains(&d)
    }

    fn leq2(&self, u: &[i64], w: &[i64]) -> bool {
        let y_zero = self.y.iter().all(|row| {
            row.iter().zip(w).map(|(a, b)| a * b).sum::<i64>() == 0
        });
        if !y_zero {
            return false;
        }
        self.units.iter().any(|e| {
            let d: Vec<i64> = w
                .iter()
                .zip(u)
                .zip(e)
                .map(|((a, b), c)| a - b + c)
                .collect();
            d.iter().any(|&x| x != 0) && self.set.contains(&d)
        })
    }

    pub fn leq(&self, u: &[i64], v: &[i64]) -> bool {
        if self.leq1(u, v) {
            return true;
        }
        self.elems
            .iter()
            .any(|w| self.leq2(u, w) && self.leq1(w, v))
    }

    /// Length of the longest strictly increasing chain ending at `u`, over
    /// the enumerated set.
    pub fn depth(&self, u: &[i64]) -> usize {
        let mut memo: HashMap<Vec<i64>, usize> = HashMap::new();
        let mut in_progress: BTreeSet<Vec<i64>> = BTreeSet::new();
        self.depth_memo(u, &mut memo, &mut in_progress)
    }

    fn depth_memo(
        &self,
        u: &[i64],
        memo: &mut HashMap<Vec<i64>, usize>,
        in_progress: &mut BTreeSet<Vec<i64>>,
    ) -> usize {
        if let Some(&d) = memo.get(u) {
            return d;
        }
        assert!(
            in_progress.insert(u.to_vec()),
            "cycle in partial order (antisymmetry violated)"
        );
        let mut best = 0;
        for v in &self.elems {
            if v.as_slice() != u && self.leq(v, u) && !self.leq(u, v) {
                best = best.max(1 + self.depth_memo(v, memo, in_progress));
            }
        }
        in_progress.remove(u);
        memo.insert(u.to_vec(), best);
        best
    }
}
