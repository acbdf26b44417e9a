use crate::divisor::{Divisor, Point};
use crate::error::Result;
use crate::rank::RankOracle;

/// Wraps an oracle and shifts its rank by `delta` at exactly one divisor.
///
/// Used to confirm that the checkers notice a single wrong value.
#[derive(Debug, Clone)]
pub struct PerturbedOracle<O> {
    inner: O,
    target: Divisor,
    delta: i64,
}

impl<O: RankOracle> PerturbedOracle<O> {
    pub fn new(inner: O, target: Divisor, delta: i64) -> Self {
        PerturbedOracle { inner, target, delta }
    }
}

impl<O: RankOracle> RankOracle for PerturbedOracle<O> {
    fn describe(&self) -> String {
        format!("{} perturbed at {} by {:+}", self.inner.describe(), self.target, self.delta)
    }

    fn point_count(&self) -> usize {
        self.inner.point_count()
    }

    fn points(&self) -> Vec<Point> {
        self.inner.points()
    }

    fn genus(&self) -> i64 {
        self.inner.genus()
    }

    fn canonical(&self) -> Divisor {
        self.inner.canonical()
    }

    fn rank(&self, d: &Divisor) -> Result<i64> {
        let r = self.inner.rank(d)?;
        Ok(if *d == self.target { r + self.delta } else { r })
    }

    fn equivalent(&self, d1: &Divisor, d2: &Divisor) -> Result<bool> {
        self.inner.equivalent(d1, d2)
    }
}
