use crate::divisor::{Divisor, Point};
use crate::error::{Error, Result};
use crate::rank::RankOracle;

/// Genus-0 divisor theory on `m` marked points of the projective line.
///
/// Divisors of equal degree are equivalent; `r(D) = deg D` for `deg D >= 0`.
/// The canonical divisor is `-2 * (point 0)`.
#[derive(Debug, Clone)]
pub struct ProjectiveLineOracle {
    m: usize,
}

impl ProjectiveLineOracle {
    pub fn new(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::invalid("projective line backend needs at least one point"));
        }
        Ok(ProjectiveLineOracle { m })
    }
}

impl RankOracle for ProjectiveLineOracle {
    fn describe(&self) -> String {
        format!("p1({} points)", self.m)
    }

    fn point_count(&self) -> usize {
        self.m
    }

    fn genus(&self) -> i64 {
        0
    }

    fn canonical(&self) -> Divisor {
        Divisor::point(self.m, Point(0), -2).expect("m >= 1")
    }

    fn rank(&self, d: &Divisor) -> Result<i64> {
        d.ensure_len(self.m)?;
        Ok(d.degree().max(-1))
    }

    fn equivalent(&self, d1: &Divisor, d2: &Divisor) -> Result<bool> {
        d1.ensure_len(self.m)?;
        d2.ensure_len(self.m)?;
        Ok(d1.degree() == d2.degree())
    }
}
