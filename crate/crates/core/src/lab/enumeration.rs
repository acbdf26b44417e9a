use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::rank::EffectiveDivisors;

/// Default ceiling on the number of divisors a single campaign may visit.
pub const DEFAULT_CASE_CAP: usize = 2_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum EnumerationMode {
    /// Every integer vector with `|coeff| <= coeff_bound` and degree in the window.
    ExhaustiveBox {
        coeff_bound: i64,
        degree_lo: i64,
        degree_hi: i64,
    },
    /// `count` vectors drawn uniformly from the box, rejected until the degree
    /// falls in the window.
    SeededRandom {
        count: usize,
        coeff_bound: i64,
        degree_lo: i64,
        degree_hi: i64,
        seed: u64,
    },
    /// Every effective divisor with degree in the window.
    Effective { degree_lo: i64, degree_hi: i64 },
}

/// A deterministic stream of divisors standing in for "every divisor".
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorEnumeration {
    #[serde(flatten)]
    pub mode: EnumerationMode,
    pub case_cap: usize,
}

/// Degree window `[-(g+2), 2g+2]`.
pub fn default_degree_window(genus: i64) -> (i64, i64) {
    (-(genus + 2), 2 * genus + 2)
}

impl DivisorEnumeration {
    pub fn exhaustive(coeff_bound: i64, degree_lo: i64, degree_hi: i64) -> Self {
        Self::from_mode(EnumerationMode::ExhaustiveBox {
            coeff_bound,
            degree_lo,
            degree_hi,
        })
    }

    pub fn seeded(count: usize, coeff_bound: i64, degree_lo: i64, degree_hi: i64, seed: u64) -> Self {
        Self::from_mode(EnumerationMode::SeededRandom {
            count,
            coeff_bound,
            degree_lo,
            degree_hi,
            seed,
        })
    }

    pub fn effective(degree_lo: i64, degree_hi: i64) -> Self {
        Self::from_mode(EnumerationMode::Effective { degree_lo, degree_hi })
    }

    fn from_mode(mode: EnumerationMode) -> Self {
        DivisorEnumeration {
            mode,
            case_cap: DEFAULT_CASE_CAP,
        }
    }

    pub fn with_case_cap(mut self, cap: usize) -> Self {
        self.case_cap = cap;
        self
    }

    pub fn seed(&self) -> Option<u64> {
        match self.mode {
            EnumerationMode::SeededRandom { seed, .. } => Some(seed),
            _ => None,
        }
    }

    pub fn degree_window(&self) -> (i64, i64) {
        match self.mode {
            EnumerationMode::ExhaustiveBox { degree_lo, degree_hi, .. }
            | EnumerationMode::SeededRandom { degree_lo, degree_hi, .. }
            | EnumerationMode::Effective { degree_lo, degree_hi } => (degree_lo, degree_hi),
        }
    }

    /// Materializes the divisors for a backend with `n` points.
    pub fn divisors(&self, n: usize) -> Result<Vec<Divisor>> {
        match self.mode {
            EnumerationMode::ExhaustiveBox {
                coeff_bound,
                degree_lo,
                degree_hi,
            } => self.exhaustive_box(n, coeff_bound, degree_lo, degree_hi),
            EnumerationMode::SeededRandom {
                count,
                coeff_bound,
                degree_lo,
                degree_hi,
                seed,
            } => self.seeded_random(n, count, coeff_bound, degree_lo, degree_hi, seed),
            EnumerationMode::Effective { degree_lo, degree_hi } => {
                let mut out = Vec::new();
                for k in degree_lo.max(0)..=degree_hi {
                    for d in EffectiveDivisors::new(n, k) {
                        if out.len() == self.case_cap {
                            return Err(self.over_cap("effective enumeration"));
                        }
                        out.push(d);
                    }
                }
                Ok(out)
            }
        }
    }

    fn over_cap(&self, what: &str) -> Error {
        Error::Resource(format!("{what} exceeds the case cap of {}", self.case_cap))
    }

    fn exhaustive_box(&self, n: usize, bound: i64, lo: i64, hi: i64) -> Result<Vec<Divisor>> {
        if bound < 0 {
            return Err(Error::invalid("coefficient bound must be non-negative"));
        }
        let side = (2 * bound + 1) as u128;
        let total = (0..n).try_fold(1u128, |acc, _| acc.checked_mul(side));
        if total.is_none_or(|t| t > self.case_cap as u128) {
            return Err(self.over_cap(&format!("box |coeff| <= {bound} on {n} points")));
        }
        let mut out = Vec::new();
        let mut cur = vec![-bound; n];
        loop {
            let deg: i64 = cur.iter().sum();
            if (lo..=hi).contains(&deg) {
                out.push(Divisor::new(cur.clone()));
            }
            // odometer, last coordinate fastest
            let mut i = n;
            loop {
                if i == 0 {
                    return Ok(out);
                }
                i -= 1;
                if cur[i] < bound {
                    cur[i] += 1;
                    break;
                }
                cur[i] = -bound;
            }
        }
    }

    fn seeded_random(
        &self,
        n: usize,
        count: usize,
        bound: i64,
        lo: i64,
        hi: i64,
        seed: u64,
    ) -> Result<Vec<Divisor>> {
        if bound < 0 {
            return Err(Error::invalid("coefficient bound must be non-negative"));
        }
        if count > self.case_cap {
            return Err(self.over_cap(&format!("{count} samples")));
        }
        let reach = bound * n as i64;
        if hi < lo || hi < -reach || lo > reach {
            return Err(Error::invalid(format!(
                "degree window [{lo}, {hi}] is unreachable with |coeff| <= {bound} on {n} points"
            )));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let max_draws = count.saturating_mul(100_000).max(100_000);
        let mut out = Vec::with_capacity(count);
        let mut draws = 0usize;
        while out.len() < count {
            draws += 1;
            if draws > max_draws {
                return Err(Error::Resource(format!(
                    "rejection sampling for degree window [{lo}, {hi}] gave up after {max_draws} draws"
                )));
            }
            let v: Vec<i64> = (0..n).map(|_| rng.gen_range(-bound..=bound)).collect();
            let deg: i64 = v.iter().sum();
            if (lo..=hi).contains(&deg) {
                out.push(Divisor::new(v));
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn box_visits_each_divisor_once() {
        let e = DivisorEnumeration::exhaustive(1, -10, 10);
        let all = e.divisors(3).unwrap();
        assert_eq!(all.len(), 27);
        let uniq: HashSet<_> = all.iter().collect();
        assert_eq!(uniq.len(), 27);
        assert_eq!(all[0], Divisor::new(vec![-1, -1, -1]));
    }

    #[test]
    fn box_respects_degree_window() {
        let e = DivisorEnumeration::exhaustive(2, 0, 0);
        let all = e.divisors(2).unwrap();
        assert_eq!(all.len(), 5);
        assert!(all.iter().all(|d| d.degree() == 0));
    }

    #[test]
    fn case_cap_is_enforced() {
        let e = DivisorEnumeration::exhaustive(2, -100, 100).with_case_cap(100);
        assert!(matches!(e.divisors(3), Err(Error::Resource(_))));
        let e = DivisorEnumeration::seeded(101, 2, -3, 3, 1).with_case_cap(100);
        assert!(matches!(e.divisors(3), Err(Error::Resource(_))));
        let e = DivisorEnumeration::effective(0, 20).with_case_cap(100);
        assert!(matches!(e.divisors(4), Err(Error::Resource(_))));
    }

    #[test]
    fn seeded_is_deterministic_and_filtered() {
        let e = DivisorEnumeration::seeded(50, 2, -3, 5, 7);
        let a = e.divisors(9).unwrap();
        assert_eq!(a, e.divisors(9).unwrap());
        assert_eq!(a.len(), 50);
        assert!(a.iter().all(|d| (-3..=5).contains(&d.degree())));
        assert!(a.iter().all(|d| d.coefficients().iter().all(|c| c.abs() <= 2)));
        let b = DivisorEnumeration::seeded(50, 2, -3, 5, 8).divisors(9).unwrap();
        assert_ne!(a, b);
        assert!(DivisorEnumeration::seeded(5, 1, 10, 12, 0).divisors(3).is_err());
    }

    #[test]
    fn effective_mode() {
        let all = DivisorEnumeration::effective(-3, 2).divisors(3).unwrap();
        // 1 + 3 + 6
        assert_eq!(all.len(), 10);
        assert!(all.iter().all(Divisor::is_effective));
    }

    #[test]
    fn serialized_params_are_flat() {
        let e = DivisorEnumeration::seeded(3, 2, -1, 1, 9);
        let json = serde_json::to_string(&e).unwrap();
        assert_eq!(
            json,
            r#"{"mode":"seeded-random","count":3,"coeff_bound":2,"degree_lo":-1,"degree_hi":1,"seed":9,"case_cap":2000000}"#
        );
        let back: DivisorEnumeration = serde_json::from_str(&json).unwrap();
        assert_eq!(back, e);
    }
}
