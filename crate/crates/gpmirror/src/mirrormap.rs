//! The combinatorial mirror-map series of a reflexive simplex and finite-
//! order integrality testing.
//!
//! For the relation lattice `K` of the boundary point set, the bundle holds
//! `tau = sum comb(u) r^u` over `K_{>=0}`, the per-point logarithmic
//! corrections `tau_p` and `gamma_p`, and `phi_p = exp((tau_p + gamma_p) /
//! tau)`, all truncated at a grade bound. The integrality claim under test
//! is that `prod_p phi_p^{u_p}` has integer coefficients for every `u` in
//! `K`.

use crate::linalg::{rat, Int, Rat};
use crate::monoid::{
    self, default_grading, enumerate, GradingFunctional, MonoidError, MonoidSelector,
    RelationLattice,
};
use crate::polytope::ReflexiveSimplex;
use crate::series::{ConeSeries, SeriesError};
use num::{One, Zero};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MirrorMapError {
    #[error("harmonic number of a negative argument")]
    NegativeArgument,
    #[error("comb requires nonnegative entries")]
    NegativeEntry,
    #[error("comb_p precondition violated: {0}")]
    PreconditionViolation(String),
    #[error("vector is not in the relation lattice K")]
    NotInK,
    #[error("vector is not in K_{{>=0}}")]
    NotInKnonneg,
    #[error(transparent)]
    Monoid(#[from] MonoidError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// `H(k) = 1 + 1/2 + ... + 1/k`, with `H(0) = 0`.
pub fn harmonic(k: i64) -> Result<Rat, MirrorMapError> {
    if k < 0 {
        return Err(MirrorMapError::NegativeArgument);
    }
    Ok((1..=k).map(rat).map(|x| x.recip()).sum())
}

/// Memoized harmonic numbers `H(0..=cap)`.
#[derive(Debug, Clone)]
pub struct HarmonicTable {
    vals: Vec<Rat>,
}

impl HarmonicTable {
    pub fn new(cap: usize) -> Self {
        let mut vals = Vec::with_capacity(cap + 1);
        vals.push(Rat::zero());
        for k in 1..=cap {
            let next = &vals[k - 1] + rat(k as i64).recip();
            vals.push(next);
        }
        HarmonicTable { vals }
    }

    pub fn h(&self, k: i64) -> Rat {
        assert!(k >= 0, "harmonic number of a negative argument");
        self.vals[k as usize].clone()
    }
}

fn factorial(n: i64) -> Int {
    assert!(n >= 0);
    let mut acc = Int::one();
    for k in 2..=n {
        acc *= Int::from(k);
    }
    acc
}

/// Multinomial coefficient `(sum u_p)! / prod u_p!` of a nonnegative vector,
/// accumulated multiplicatively as a product of binomials so no oversized
/// intermediate factorial appears.
pub fn comb(u: &[i64]) -> Result<Int, MirrorMapError> {
    if u.iter().any(|&x| x < 0) {
        return Err(MirrorMapError::NegativeEntry);
    }
    let mut acc = Int::one();
    let mut total: i64 = 0;
    for &up in u {
        total += up;
        // binomial(total, up)
        let mut b = Int::one();
        for j in 1..=up {
            b = b * Int::from(total - up + j) / Int::from(j);
        }
        acc *= b;
    }
    Ok(acc)
}

/// The signed factorial extension of `comb` to `K_p \ K_{>=0}`:
/// `(-1)^{u_p+1} (sum_q u_q)! (-u_p - 1)! / prod_{q != p} u_q!`.
///
/// The value is an exact rational, not always an integer: on the primitive
/// circuit elements it is `+-1`, but on their multiples the factorial
/// ratio acquires denominators (e.g. doubling a circuit with entries
/// `(1, -2, 1)` gives `2! 3! / (2! 2! 2!) = 3/2`). The box-annihilation
/// equations of the hypergeometric system, which determine these
/// coefficients uniquely, confirm the rational values.
pub fn comb_p(u: &[i64], p: usize) -> Result<Rat, MirrorMapError> {
    if u[p] >= 0 {
        return Err(MirrorMapError::PreconditionViolation(format!(
            "u_p = {} must be negative",
            u[p]
        )));
    }
    for (q, &x) in u.iter().enumerate() {
        if q != p && x < 0 {
            return Err(MirrorMapError::PreconditionViolation(format!(
                "entry {q} is negative"
            )));
        }
    }
    let total: i64 = u.iter().sum();
    if total < 0 {
        return Err(MirrorMapError::PreconditionViolation(
            "entries sum to a negative value".into(),
        ));
    }
    let mut v = Rat::from_integer(factorial(total) * factorial(-u[p] - 1));
    for (q, &x) in u.iter().enumerate() {
        if q != p {
            v /= Rat::from_integer(factorial(x));
        }
    }
    // (-1)^{u_p + 1} with u_p + 1 <= 0.
    if (u[p] + 1).rem_euclid(2) == 1 {
        v = -v;
    }
    Ok(v)
}

/// Sign convention for `gamma_p`. The two conventions in circulation differ
/// by the factor `(-1)^{u_p+1}`; both are exposed so the GKZ annihilation
/// check can decide empirically which one the differential system selects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaSign {
    /// `gamma_p = sum comb_p(u) r^u` (the convention of the integrality
    /// statement).
    Signed,
    /// `gamma_p = sum (-1)^{u_p+1} comb_p(u) r^u`, i.e. the unsigned
    /// factorial ratio.
    Unsigned,
}

#[derive(Debug, Clone)]
pub struct MirrorMapBundle {
    pub lattice: RelationLattice,
    pub grading: GradingFunctional,
    pub bound: Rat,
    pub gamma_sign: GammaSign,
    pub tau: ConeSeries,
    pub tau_p: Vec<ConeSeries>,
    pub gamma_p: Vec<ConeSeries>,
    pub phi_p: Vec<ConeSeries>,
    /// `sum comb(u) (-H(u_p)) r^u` over `K_{>=0}` (GKZ building block).
    pub tau_tilde_p: Vec<ConeSeries>,
    /// `sum comb(u) (-H(|u|)) r^u` over `K_{>=0}`.
    pub tau_tilde_0: ConeSeries,
    /// Enumerated `K_{>=0}` up to the bound.
    pub knonneg: Vec<Vec<i64>>,
    /// Enumerated `K_p` per point.
    pub kp: Vec<Vec<Vec<i64>>>,
    /// Enumerated `K_+` (additive closure of the `K_p`) for membership
    /// checks up to the bound.
    pub kplus: BTreeSet<Vec<i64>>,
}

pub fn build_bundle(simplex: &ReflexiveSimplex, bound: &Rat) -> Result<MirrorMapBundle, MirrorMapError> {
    let pts = simplex.boundary_points();
    let lattice = monoid::relation_lattice(&pts);
    let grading = default_grading(&lattice)?;
    build_bundle_with(&lattice, &grading, bound, GammaSign::Signed)
}

pub fn build_bundle_with(
    lattice: &RelationLattice,
    grading: &GradingFunctional,
    bound: &Rat,
    gamma_sign: GammaSign,
) -> Result<MirrorMapBundle, MirrorMapError> {
    let np = lattice.points.len();
    let knonneg = enumerate(MonoidSelector::Knonneg, lattice, grading, bound);
    let kp: Vec<Vec<Vec<i64>>> = (0..np)
        .map(|p| enumerate(MonoidSelector::Kp(p), lattice, grading, bound))
        .collect();
    let kplus: BTreeSet<Vec<i64>> =
        enumerate(MonoidSelector::Kplus, lattice, grading, bound)
            .into_iter()
            .collect();
    let knonneg_set: BTreeSet<Vec<i64>> = knonneg.iter().cloned().collect();
    let max_total: i64 = knonneg
        .iter()
        .map(|u| u.iter().sum::<i64>())
        .max()
        .unwrap_or(0);
    let harm = HarmonicTable::new(max_total.max(0) as usize);
    let lambda = grading.lambda.clone();

    let mut tau = ConeSeries::zero(lambda.clone(), bound.clone());
    let mut tau_tilde_0 = ConeSeries::zero(lambda.clone(), bound.clone());
    let mut tau_p = vec![ConeSeries::zero(lambda.clone(), bound.clone()); np];
    let mut tau_tilde_p = vec![ConeSeries::zero(lambda.clone(), bound.clone()); np];
    for u in &knonneg {
        let c = Rat::from_integer(comb(u)?);
        let total: i64 = u.iter().sum();
        tau.add_term(u, c.clone());
        tau_tilde_0.add_term(u, -&c * harm.h(total));
        for p in 0..np {
            let coeff = &c * (harm.h(total) - harm.h(u[p]));
            tau_p[p].add_term(u, coeff.clone());
            tau_tilde_p[p].add_term(u, -&c * harm.h(u[p]));
        }
    }

    let mut gamma_p = Vec::with_capacity(np);
    for p in 0..np {
        let mut g = ConeSeries::zero(lambda.clone(), bound.clone());
        for u in &kp[p] {
            if knonneg_set.contains(u) {
                continue;
            }
            let mut c = comb_p(u, p)?;
            if gamma_sign == GammaSign::Unsigned && (u[p] + 1).rem_euclid(2) == 1 {
                c = -c;
            }
            g.add_term(u, c);
        }
        gamma_p.push(g);
    }

    let mut phi_p = Vec::with_capacity(np);
    for p in 0..np {
        let num = tau_p[p].add(&gamma_p[p]);
        let phi = num.div(&tau)?.exp()?;
        assert!(phi.constant_term().is_one());
        phi_p.push(phi);
    }

    Ok(MirrorMapBundle {
        lattice: lattice.clone(),
        grading: grading.clone(),
        bound: bound.clone(),
        gamma_sign,
        tau,
        tau_p,
        gamma_p,
        phi_p,
        tau_tilde_p,
        tau_tilde_0,
        knonneg,
        kp,
        kplus,
    })
}

impl MirrorMapBundle {
    /// Is `u` an enumerated member of `K_+`? Complete for grades up to the
    /// bound: any such member is a sum of lower-grade `K_p` elements, all of
    /// which are enumerated.
    pub fn kplus_contains(&self, u: &[i64]) -> bool {
        self.kplus.contains(u)
    }

    /// `prod_p phi_p^{u_p}` for `u` in `K`; every support exponent is
    /// checked to lie in the enumerated `K_+`.
    pub fn phi_power(&self, u: &[i64]) -> Result<ConeSeries, MirrorMapError> {
        if !self.lattice.contains(u) {
            return Err(MirrorMapError::NotInK);
        }
        let mut acc = ConeSeries::one(self.grading.lambda.clone(), self.bound.clone());
        for (p, &e) in u.iter().enumerate() {
            if e != 0 {
                acc = acc.mul(&self.phi_p[p].int_pow(e)?);
            }
        }
        for (v, _) in acc.iter() {
            assert!(
                self.kplus_contains(v),
                "phi_power support left the enumerated K_+ (exponent {v:?})"
            );
        }
        Ok(acc)
    }

    /// `r^u * prod_p phi_p^{u_p}` for `u` in `K_{>=0}`; support is checked
    /// to lie in `u + K_+`.
    pub fn mirror_map_image(&self, u: &[i64]) -> Result<ConeSeries, MirrorMapError> {
        if !self.lattice.contains(u) || u.iter().any(|&x| x < 0) {
            return Err(MirrorMapError::NotInKnonneg);
        }
        let power = self.phi_power(u)?;
        let shifted = power.map_exponents(|v| v.iter().zip(u).map(|(a, b)| a + b).collect());
        for (v, _) in shifted.iter() {
            let d: Vec<i64> = v.iter().zip(u).map(|(a, b)| a - b).collect();
            assert!(
                self.kplus_contains(&d),
                "mirror map image support left u + K_+ (exponent {v:?})"
            );
        }
        Ok(shifted)
    }
}

/// One-variable data of the degree-`n` hypersurface family:
/// `phi(T) = exp((sum F_i H_i T^i) / (sum F_i T^i))` with
/// `F_i = (ni)!/(i!)^n` and `H_i = H(ni) - H(i)`.
#[derive(Debug, Clone)]
pub struct HypersurfaceBundle {
    pub n: usize,
    pub order: i64,
    pub f: Vec<Int>,
    pub tau: ConeSeries,
    pub phi: ConeSeries,
    pub phi_n: ConeSeries,
    /// `q(T) = T * phi(T)^n`.
    pub q: ConeSeries,
}

pub fn hypersurface_fast_path(n: usize, order: i64) -> HypersurfaceBundle {
    assert!(n >= 3);
    assert!(order >= 0);
    let lambda = vec![Rat::one()];
    let bound = rat(order);
    let harm = HarmonicTable::new(n * order.max(0) as usize);
    let mut f = Vec::with_capacity(order as usize + 1);
    let mut tau = ConeSeries::zero(lambda.clone(), bound.clone());
    let mut tau_h = ConeSeries::zero(lambda.clone(), bound.clone());
    for i in 0..=order {
        let u = vec![i; n];
        let fi = comb(&u).expect("nonnegative");
        let hi = harm.h(n as i64 * i) - harm.h(i);
        tau.add_term(&[i], Rat::from_integer(fi.clone()));
        tau_h.add_term(&[i], Rat::from_integer(fi.clone()) * hi);
        f.push(fi);
    }
    let phi = tau_h.div(&tau).unwrap().exp().unwrap();
    let phi_n = phi.int_pow(n as i64).unwrap();
    let q = phi_n.map_exponents(|v| vec![v[0] + 1]);
    HypersurfaceBundle {
        n,
        order,
        f,
        tau,
        phi,
        phi_n,
        q,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralityEntry {
    pub u: Vec<i64>,
    pub integral: bool,
    pub offenders: Vec<(Vec<i64>, Rat)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegralityReport {
    pub bound: Rat,
    pub entries: Vec<IntegralityEntry>,
    pub all_integral: bool,
}

pub fn integrality_report(
    bundle: &MirrorMapBundle,
    test_set: &[Vec<i64>],
) -> Result<IntegralityReport, MirrorMapError> {
    let mut entries = Vec::with_capacity(test_set.len());
    for u in test_set {
        let series = bundle.phi_power(u)?;
        let offenders = series.integrality_offenders();
        entries.push(IntegralityEntry {
            u: u.clone(),
            integral: offenders.is_empty(),
            offenders,
        });
    }
    let all_integral = entries.iter().all(|e| e.integral);
    Ok(IntegralityReport {
        bound: bundle.bound.clone(),
        entries,
        all_integral,
    })
}

/// Default integrality test set: a lattice basis of `K` plus the extremal
/// elements of `K_{>=0}` up to the bound.
pub fn default_test_set(bundle: &MirrorMapBundle) -> Vec<Vec<i64>> {
    let mut set: Vec<Vec<i64>> = bundle.lattice.basis.clone();
    let report = monoid::freeness_witness(&bundle.lattice, &bundle.grading, &bundle.bound);
    for r in report.extremal {
        if !set.contains(&r) {
            set.push(r);
        }
    }
    set
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{dual_hypersurface_simplex, hypersurface_simplex};
    use num::Signed;

    #[test]
    fn harmonic_values() {
        assert_eq!(harmonic(0).unwrap(), Rat::zero());
        assert_eq!(harmonic(4).unwrap(), Rat::new(25.into(), 12.into()));
        assert_eq!(
            harmonic(5).unwrap() - harmonic(1).unwrap(),
            Rat::new(77.into(), 60.into())
        );
        assert_eq!(harmonic(-1), Err(MirrorMapError::NegativeArgument));
    }

    #[test]
    fn comb_values() {
        assert_eq!(comb(&[0, 0, 0]).unwrap(), Int::one());
        assert_eq!(comb(&[1, 1, 1, 1, 1]).unwrap(), Int::from(120));
        assert_eq!(comb(&[2, 2, 2, 2, 2]).unwrap(), Int::from(113400));
        assert_eq!(comb(&[1, -1]), Err(MirrorMapError::NegativeEntry));
    }

    #[test]
    fn comb_p_values() {
        // e1 + e3 - 2 e2 pattern: sum 0, (-u_p - 1)! = 1, sign (-1)^{-1}.
        assert_eq!(comb_p(&[1, -2, 1], 1).unwrap(), rat(-1));
        // u_p = -1, one other entry 1: (+1) * 0! * 0! / 1! = 1.
        assert_eq!(comb_p(&[1, -1, 0], 1).unwrap(), Rat::one());
        // Doubling the circuit gives a genuinely rational value:
        // -2! 3! / (2! 2!) = -3/2 (sign (-1)^{-3}).
        assert_eq!(
            comb_p(&[2, -4, 2], 1).unwrap(),
            Rat::new(Int::from(-3), Int::from(2))
        );
        assert!(matches!(
            comb_p(&[1, 1, 0], 1),
            Err(MirrorMapError::PreconditionViolation(_))
        ));
        assert!(matches!(
            comb_p(&[-1, -1, 0], 1),
            Err(MirrorMapError::PreconditionViolation(_))
        ));
    }

    #[test]
    fn bundle_bound_zero() {
        let s = hypersurface_simplex(4);
        let b = build_bundle(&s, &Rat::zero()).unwrap();
        assert_eq!(b.tau.constant_term(), Rat::one());
        assert_eq!(b.tau.len(), 1);
        for p in 0..4 {
            assert!(b.tau_p[p].is_zero());
            assert!(b.gamma_p[p].is_zero());
            assert_eq!(b.phi_p[p].len(), 1);
            assert_eq!(b.phi_p[p].constant_term(), Rat::one());
        }
    }

    #[test]
    fn quintic_tau_matches_fast_path() {
        let s = hypersurface_simplex(5);
        let lattice = monoid::relation_lattice(&s.boundary_points());
        let grading = default_grading(&lattice).unwrap();
        // Generator (1,...,1) has some grade g; bound 3g captures i <= 3.
        let g = grading.grade(&vec![1i64; 5]).abs();
        let bound = &g * rat(3);
        let b = build_bundle_with(&lattice, &grading, &bound, GammaSign::Signed).unwrap();
        let fast = hypersurface_fast_path(5, 3);
        for i in 0..=3i64 {
            assert_eq!(
                b.tau.coefficient(&vec![i; 5]),
                Rat::from_integer(fast.f[i as usize].clone()),
                "F_{i} mismatch"
            );
        }
        // gamma_p vanishes for the rank-1 hypersurface lattice.
        for p in 0..5 {
            assert!(b.gamma_p[p].is_zero());
        }
    }

    #[test]
    fn quintic_mirror_map_heads() {
        let fast = hypersurface_fast_path(5, 3);
        // F_1 H_1 = 120 * 77/60 = 154 drives the first phi coefficient.
        assert_eq!(fast.f[1], Int::from(120));
        assert_eq!(fast.f[2], Int::from(113400));
        assert_eq!(fast.phi.coefficient(&[1]), rat(154));
        assert_eq!(fast.q.coefficient(&[1]), Rat::one());
        assert_eq!(fast.q.coefficient(&[2]), rat(770));
        assert!(fast.phi_n.is_integral());
    }

    #[test]
    fn fast_path_order_zero() {
        let fast = hypersurface_fast_path(7, 0);
        assert_eq!(fast.phi, ConeSeries::one(vec![Rat::one()], Rat::zero()));
    }

    #[test]
    fn quintic_phi_power_matches_fast_path() {
        let s = hypersurface_simplex(5);
        let lattice = monoid::relation_lattice(&s.boundary_points());
        let grading = default_grading(&lattice).unwrap();
        let g = grading.grade(&vec![1i64; 5]).abs();
        let bound = &g * rat(3);
        let b = build_bundle_with(&lattice, &grading, &bound, GammaSign::Signed).unwrap();
        let power = b.phi_power(&vec![1i64; 5]).unwrap();
        let fast = hypersurface_fast_path(5, 3);
        for i in 0..=3i64 {
            assert_eq!(power.coefficient(&vec![i; 5]), fast.phi_n.coefficient(&[i]));
        }
        assert_eq!(power.coefficient(&vec![1; 5]), rat(770));
    }

    #[test]
    fn phi_power_homomorphism_rank_one() {
        let s = hypersurface_simplex(4);
        let lattice = monoid::relation_lattice(&s.boundary_points());
        let grading = default_grading(&lattice).unwrap();
        let g = grading.grade(&vec![1i64; 4]).abs();
        let bound = &g * rat(3);
        let b = build_bundle_with(&lattice, &grading, &bound, GammaSign::Signed).unwrap();
        let u = vec![1i64; 4];
        let v = vec![2i64; 4];
        let w = vec![3i64; 4];
        let lhs = b.phi_power(&w).unwrap();
        let rhs = b.phi_power(&u).unwrap().mul(&b.phi_power(&v).unwrap());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn phi_power_rejects_non_k() {
        let s = hypersurface_simplex(4);
        let b = build_bundle(&s, &rat(1)).unwrap();
        let mut u = vec![0i64; 4];
        u[0] = 1;
        assert_eq!(b.phi_power(&u).unwrap_err(), MirrorMapError::NotInK);
    }

    #[test]
    fn mirror_map_image_shifts() {
        let s = hypersurface_simplex(5);
        let lattice = monoid::relation_lattice(&s.boundary_points());
        let grading = default_grading(&lattice).unwrap();
        let g = grading.grade(&vec![1i64; 5]).abs();
        let bound = &g * rat(3);
        let b = build_bundle_with(&lattice, &grading, &bound, GammaSign::Signed).unwrap();
        let u = vec![1i64; 5];
        let img = b.mirror_map_image(&u).unwrap();
        assert_eq!(img.coefficient(&u), Rat::one());
        assert_eq!(img.coefficient(&vec![2i64; 5]), rat(770));
        // Negative entries rejected.
        let mut neg = vec![1i64; 5];
        neg[0] = -1;
        assert_eq!(
            b.mirror_map_image(&neg).unwrap_err(),
            MirrorMapError::NotInKnonneg
        );
    }

    #[test]
    fn quartic_gamma_head() {
        let s = dual_hypersurface_simplex(4);
        let lattice = monoid::relation_lattice(&s.boundary_points());
        let grading = default_grading(&lattice).unwrap();
        let bound = rat(2);
        let b = build_bundle_with(&lattice, &grading, &bound, GammaSign::Signed).unwrap();
        // e1 + e3 - 2 e2 on the edge from (-1,-1,-1) to (3,-1,-1).
        let idx = |p: &[i64]| lattice.points.iter().position(|q| q == p).unwrap();
        let (i1, i2, i3) = (idx(&[0, -1, -1]), idx(&[1, -1, -1]), idx(&[2, -1, -1]));
        let mut u = vec![0i64; 22];
        u[i1] = 1;
        u[i3] = 1;
        u[i2] = -2;
        assert_eq!(b.gamma_p[i2].coefficient(&u), rat(-1));
        // Support of gamma lies outside K_{>=0}.
        for (v, _) in b.gamma_p[i2].iter() {
            assert!(v.iter().any(|&x| x < 0));
        }
        let unsigned =
            build_bundle_with(&lattice, &grading, &bound, GammaSign::Unsigned).unwrap();
        assert_eq!(unsigned.gamma_p[i2].coefficient(&u), rat(1));
    }

    #[test]
    fn integrality_report_and_fault_injection() {
        let s = hypersurface_simplex(5);
        let lattice = monoid::relation_lattice(&s.boundary_points());
        let grading = default_grading(&lattice).unwrap();
        let g = grading.grade(&vec![1i64; 5]).abs();
        let bound = &g * rat(2);
        let b = build_bundle_with(&lattice, &grading, &bound, GammaSign::Signed).unwrap();
        let report = integrality_report(&b, &[vec![1i64; 5]]).unwrap();
        assert!(report.all_integral);
        // Perturb one tau_p coefficient by 1/2 and rebuild phi: offenders
        // must surface.
        let mut bad = b.clone();
        let mut t = bad.tau_p[0].clone();
        t.add_term(&vec![1i64; 5], Rat::new(1.into(), 2.into()));
        bad.phi_p[0] = t
            .add(&bad.gamma_p[0])
            .div(&bad.tau)
            .unwrap()
            .exp()
            .unwrap();
        let report = integrality_report(&bad, &[vec![1i64; 5]]).unwrap();
        assert!(!report.all_integral);
        assert!(!report.entries[0].offenders.is_empty());
    }
}
