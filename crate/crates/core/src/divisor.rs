//! Integer divisors over a finite point set.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a point within a backend's point set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(pub usize);

impl Point {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A formal integer combination of points, stored densely.
///
/// Serialized as a plain JSON integer array.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Divisor(Vec<i64>);

impl Divisor {
    pub fn new(coefficients: Vec<i64>) -> Self {
        Divisor(coefficients)
    }

    pub fn zero(len: usize) -> Self {
        Divisor(vec![0; len])
    }

    /// `mult` copies of a single point.
    pub fn point(len: usize, p: Point, mult: i64) -> Result<Self> {
        let mut d = Divisor::zero(len);
        *d.slot(p)? = mult;
        Ok(d)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.0
    }

    pub fn into_coefficients(self) -> Vec<i64> {
        self.0
    }

    pub fn get(&self, p: Point) -> i64 {
        self.0[p.0]
    }

    fn slot(&mut self, p: Point) -> Result<&mut i64> {
        let len = self.0.len();
        self.0
            .get_mut(p.0)
            .ok_or_else(|| Error::invalid(format!("point {} out of range for {len} points", p.0)))
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn is_effective(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    pub fn checked_add(&self, other: &Divisor) -> Result<Divisor> {
        self.zip_with(other, i64::checked_add, "divisor addition")
    }

    pub fn checked_sub(&self, other: &Divisor) -> Result<Divisor> {
        self.zip_with(other, i64::checked_sub, "divisor subtraction")
    }

    /// `self + P`.
    pub fn add_point(&self, p: Point) -> Result<Divisor> {
        let mut out = self.clone();
        let slot = out.slot(p)?;
        *slot = slot.checked_add(1).ok_or(Error::Overflow("add_point"))?;
        Ok(out)
    }

    pub fn negated(&self) -> Divisor {
        Divisor(self.0.iter().map(|c| -c).collect())
    }

    pub fn ensure_len(&self, len: usize) -> Result<()> {
        if self.0.len() == len {
            Ok(())
        } else {
            Err(Error::invalid(format!(
                "divisor has {} coefficients, backend has {len} points",
                self.0.len()
            )))
        }
    }

    fn zip_with(
        &self,
        other: &Divisor,
        op: fn(i64, i64) -> Option<i64>,
        what: &'static str,
    ) -> Result<Divisor> {
        if self.len() != other.len() {
            return Err(Error::invalid(format!(
                "{what}: length mismatch {} vs {}",
                self.len(),
                other.len()
            )));
        }
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| op(a, b).ok_or(Error::Overflow(what)))
            .collect::<Result<Vec<_>>>()
            .map(Divisor)
    }
}

impl From<Vec<i64>> for Divisor {
    fn from(v: Vec<i64>) -> Self {
        Divisor(v)
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Parses `1,-2,0` (surrounding parentheses or brackets are tolerated).
impl FromStr for Divisor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s
            .trim()
            .trim_start_matches(['(', '['])
            .trim_end_matches([')', ']']);
        if trimmed.trim().is_empty() {
            return Ok(Divisor(Vec::new()));
        }
        trimmed
            .split(',')
            .enumerate()
            .map(|(i, tok)| {
                tok.trim()
                    .parse::<i64>()
                    .map_err(|e| Error::parse(format!("coefficient {i}"), format!("{tok:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Divisor)
    }
}
