//! Sparse formal power series with exponents in a strongly convex cone,
//! truncated by a grading bound.
//!
//! A series stores only nonzero coefficients, keyed by (grade, exponent) so
//! iteration and serialization are canonically ordered. All arithmetic is
//! exact; multiplication drops any product exponent whose grade exceeds the
//! bound, so a bound-`N` series is a faithful representative of its class in
//! the quotient by grade-`>N` terms.

use crate::linalg::{dot_ir, Rat};
use num::{One, Signed, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SeriesError {
    #[error("series have different gradings or bounds")]
    GradingMismatch,
    #[error("constant term is not a unit")]
    NotAUnit,
    #[error("constant term must be zero")]
    NonzeroConstantTerm,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeSeries {
    lambda: Vec<Rat>,
    bound: Rat,
    /// (grade, exponent) -> coefficient; no zero coefficients stored.
    terms: BTreeMap<(Rat, Vec<i64>), Rat>,
}

impl ConeSeries {
    pub fn zero(lambda: Vec<Rat>, bound: Rat) -> Self {
        ConeSeries {
            lambda,
            bound,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(lambda: Vec<Rat>, bound: Rat, c: Rat) -> Self {
        let mut s = Self::zero(lambda, bound);
        let np = s.lambda.len();
        s.add_term(&vec![0i64; np], c);
        s
    }

    pub fn one(lambda: Vec<Rat>, bound: Rat) -> Self {
        Self::constant(lambda, bound, Rat::one())
    }

    pub fn monomial(lambda: Vec<Rat>, bound: Rat, u: &[i64], c: Rat) -> Self {
        let mut s = Self::zero(lambda, bound);
        s.add_term(u, c);
        s
    }

    pub fn grading(&self) -> &[Rat] {
        &self.lambda
    }

    pub fn bound(&self) -> &Rat {
        &self.bound
    }

    pub fn num_vars(&self) -> usize {
        self.lambda.len()
    }

    pub fn grade_of(&self, u: &[i64]) -> Rat {
        dot_ir(u, &self.lambda)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in (grade, lex) order.
    pub fn iter(&self) -> impl Iterator<Item = (&Vec<i64>, &Rat)> {
        self.terms.iter().map(|((_, u), c)| (u, c))
    }

    /// Terms with their grades, in (grade, lex) order.
    pub fn iter_graded(&self) -> impl Iterator<Item = (&Rat, &Vec<i64>, &Rat)> {
        self.terms.iter().map(|((g, u), c)| (g, u, c))
    }

    pub fn coefficient(&self, u: &[i64]) -> Rat {
        let g = self.grade_of(u);
        self.terms
            .get(&(g, u.to_vec()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn constant_term(&self) -> Rat {
        self.coefficient(&vec![0i64; self.lambda.len()])
    }

    /// Add `c * r^u`, dropping the term if its grade exceeds the bound.
    pub fn add_term(&mut self, u: &[i64], c: Rat) {
        assert_eq!(u.len(), self.lambda.len());
        if c.is_zero() {
            return;
        }
        let g = self.grade_of(u);
        if g > self.bound {
            return;
        }
        let key = (g, u.to_vec());
        let entry = self.terms.entry(key.clone()).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    fn assert_compatible(&self, other: &ConeSeries) {
        assert_eq!(self.lambda, other.lambda, "grading mismatch");
        assert_eq!(self.bound, other.bound, "bound mismatch");
    }

    pub fn compatible(&self, other: &ConeSeries) -> Result<(), SeriesError> {
        if self.lambda != other.lambda || self.bound != other.bound {
            return Err(SeriesError::GradingMismatch);
        }
        Ok(())
    }

    pub fn add(&self, other: &ConeSeries) -> ConeSeries {
        self.assert_compatible(other);
        let mut out = self.clone();
        for ((_, u), c) in &other.terms {
            out.add_term(u, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &ConeSeries) -> ConeSeries {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> ConeSeries {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn scalar_mul(&self, c: &Rat) -> ConeSeries {
        if c.is_zero() {
            return ConeSeries::zero(self.lambda.clone(), self.bound.clone());
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v *= c;
        }
        out
    }

    pub fn mul(&self, other: &ConeSeries) -> ConeSeries {
        self.assert_compatible(other);
        let mut out = ConeSeries::zero(self.lambda.clone(), self.bound.clone());
        // Terms are sorted by grade, so once g1 + g2 exceeds the bound the
        // rest of the inner loop is dead.
        for ((g1, u1), c1) in &self.terms {
            let budget = &self.bound - g1;
            for ((g2, u2), c2) in &other.terms {
                if g2 > &budget {
                    break;
                }
                let u: Vec<i64> = u1.iter().zip(u2).map(|(a, b)| a + b).collect();
                out.add_term(&u, c1 * c2);
            }
        }
        out
    }

    /// Restrict to a smaller bound. Truncation commutes with all ring
    /// operations (truncation coherence).
    pub fn truncate(&self, bound: Rat) -> ConeSeries {
        assert!(bound <= self.bound, "cannot grow a truncation bound");
        let mut out = ConeSeries::zero(self.lambda.clone(), bound);
        for ((g, u), c) in &self.terms {
            if g <= &out.bound {
                out.terms.insert((g.clone(), u.clone()), c.clone());
            }
        }
        out
    }

    /// `exp(a) = sum a^k / k!`, requiring zero constant term. The sum is
    /// finite because every support grade is at least the minimal positive
    /// grade, so `a^k` dies once `k` exceeds `bound / min_grade`.
    pub fn exp(&self) -> Result<ConeSeries, SeriesError> {
        if !self.constant_term().is_zero() {
            return Err(SeriesError::NonzeroConstantTerm);
        }
        if self
            .terms
            .keys()
            .any(|(g, _)| !g.is_positive())
        {
            // A non-constant term of nonpositive grade would make the series
            // non-nilpotent under truncation.
            return Err(SeriesError::NonzeroConstantTerm);
        }
        let mut out = ConeSeries::one(self.lambda.clone(), self.bound.clone());
        let mut power = ConeSeries::one(self.lambda.clone(), self.bound.clone());
        let mut k: u64 = 0;
        loop {
            k += 1;
            power = power.mul(self);
            power = power.scalar_mul(&Rat::new(1.into(), k.into()));
            if power.is_zero() {
                break;
            }
            out = out.add(&power);
        }
        Ok(out)
    }

    /// `log(a)` for `a` with constant term 1.
    pub fn log(&self) -> Result<ConeSeries, SeriesError> {
        if !self.constant_term().is_one() {
            return Err(SeriesError::NotAUnit);
        }
        let mut x = self.clone();
        let np = self.lambda.len();
        x.add_term(&vec![0i64; np], -Rat::one());
        if x.terms.keys().any(|(g, _)| !g.is_positive()) {
            return Err(SeriesError::NotAUnit);
        }
        // log(1 + x) = sum (-1)^{k+1} x^k / k
        let mut out = ConeSeries::zero(self.lambda.clone(), self.bound.clone());
        let mut power = ConeSeries::one(self.lambda.clone(), self.bound.clone());
        let mut k: u64 = 0;
        loop {
            k += 1;
            power = power.mul(&x);
            if power.is_zero() {
                break;
            }
            let mut coeff = Rat::new(1.into(), k.into());
            if k % 2 == 0 {
                coeff = -coeff;
            }
            out = out.add(&power.scalar_mul(&coeff));
        }
        Ok(out)
    }

    /// Multiplicative inverse of a series whose constant term is nonzero.
    pub fn inverse(&self) -> Result<ConeSeries, SeriesError> {
        let c0 = self.constant_term();
        if c0.is_zero() {
            return Err(SeriesError::NotAUnit);
        }
        // a = c0 (1 + x); a^{-1} = c0^{-1} sum (-x)^k.
        let mut x = self.scalar_mul(&c0.recip());
        let np = self.lambda.len();
        x.add_term(&vec![0i64; np], -Rat::one());
        if x.terms.keys().any(|(g, _)| !g.is_positive()) {
            return Err(SeriesError::NotAUnit);
        }
        let mut out = ConeSeries::one(self.lambda.clone(), self.bound.clone());
        let mut power = ConeSeries::one(self.lambda.clone(), self.bound.clone());
        loop {
            power = power.mul(&x).neg();
            if power.is_zero() {
                break;
            }
            out = out.add(&power);
        }
        Ok(out.scalar_mul(&c0.recip()))
    }

    pub fn div(&self, other: &ConeSeries) -> Result<ConeSeries, SeriesError> {
        self.compatible(other)?;
        Ok(self.mul(&other.inverse()?))
    }

    pub fn int_pow(&self, k: i64) -> Result<ConeSeries, SeriesError> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = ConeSeries::one(self.lambda.clone(), self.bound.clone());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Ok(acc)
    }

    /// Terms with non-integer coefficients, in (grade, lex) order.
    pub fn integrality_offenders(&self) -> Vec<(Vec<i64>, Rat)> {
        self.terms
            .iter()
            .filter(|(_, c)| !c.denom().is_one())
            .map(|((_, u), c)| (u.clone(), c.clone()))
            .collect()
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.denom().is_one())
    }

    /// Apply a map to every exponent (e.g. a shift); grades are recomputed
    /// and out-of-bound images dropped.
    pub fn map_exponents(&self, f: impl Fn(&[i64]) -> Vec<i64>) -> ConeSeries {
        let mut out = ConeSeries::zero(self.lambda.clone(), self.bound.clone());
        for ((_, u), c) in &self.terms {
            out.add_term(&f(u), c.clone());
        }
        out
    }

    /// Largest support grade, if nonempty.
    pub fn max_grade(&self) -> Option<Rat> {
        self.terms.keys().next_back().map(|(g, _)| g.clone())
    }
}
