//! Canonical JSON-facing representations: rationals as `"num/den"` strings
//! (plain integers when the denominator is 1), heights allowing `"inf"`,
//! and file-level types for polytope input, heights input, and series.

use crate::linalg::{Int, Rat};
use crate::series::ConeSeries;
use crate::subdivision::HeightAssignment;
use num::One;
use serde::{Deserialize, Serialize};
use std::str::FromStr;

pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_from_string(s: &str) -> Result<Rat, String> {
    let parse_int = |t: &str| Int::from_str(t.trim()).map_err(|e| format!("bad integer {t:?}: {e}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let num = parse_int(n)?;
            let den = parse_int(d)?;
            if den == Int::from(0) {
                return Err(format!("zero denominator in {s:?}"));
            }
            Ok(Rat::new(num, den))
        }
        None => Ok(Rat::from(parse_int(s)?)),
    }
}

pub fn height_to_string(h: &Option<Rat>) -> String {
    match h {
        Some(r) => rat_to_string(r),
        None => "inf".to_string(),
    }
}

pub fn height_from_string(s: &str) -> Result<Option<Rat>, String> {
    if s.trim() == "inf" {
        Ok(None)
    } else {
        rat_from_string(s).map(Some)
    }
}

/// Input file for a reflexive simplex: its vertex list.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolytopeInput {
    pub vertices: Vec<Vec<i64>>,
}

/// Heights file: a point configuration and one height (`"num/den"` or
/// `"inf"`) per point.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct HeightsInput {
    pub points: Vec<Vec<i64>>,
    pub heights: Vec<String>,
}

impl HeightsInput {
    pub fn to_assignment(&self) -> Result<HeightAssignment, String> {
        if self.points.len() != self.heights.len() {
            return Err(format!(
                "{} points but {} heights",
                self.points.len(),
                self.heights.len()
            ));
        }
        let heights = self
            .heights
            .iter()
            .map(|s| height_from_string(s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(HeightAssignment::new(self.points.clone(), heights))
    }

    pub fn from_assignment(h: &HeightAssignment) -> Self {
        HeightsInput {
            points: h.points.clone(),
            heights: h.heights.iter().map(height_to_string).collect(),
        }
    }
}

/// Serialized truncated series: grading weights, grade bound, and the
/// exponent/coefficient terms in canonical (grade-agnostic, lexicographic
/// key) order.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SeriesFile {
    pub grading: Vec<String>,
    pub bound: String,
    pub terms: Vec<SeriesTerm>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct SeriesTerm {
    pub exponent: Vec<i64>,
    pub coefficient: String,
}

impl SeriesFile {
    pub fn from_series(s: &ConeSeries) -> Self {
        SeriesFile {
            grading: s.grading().iter().map(rat_to_string).collect(),
            bound: rat_to_string(s.bound()),
            terms: s
                .iter()
                .map(|(u, c)| SeriesTerm {
                    exponent: u.clone(),
                    coefficient: rat_to_string(c),
                })
                .collect(),
        }
    }

    pub fn to_series(&self) -> Result<ConeSeries, String> {
        let lambda = self
            .grading
            .iter()
            .map(|s| rat_from_string(s))
            .collect::<Result<Vec<_>, _>>()?;
        let bound = rat_from_string(&self.bound)?;
        let mut out = ConeSeries::zero(lambda, bound);
        for t in &self.terms {
            out.add_term(&t.exponent, rat_from_string(&t.coefficient)?);
        }
        Ok(out)
    }
}
