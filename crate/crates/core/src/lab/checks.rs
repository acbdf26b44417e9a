//! Executable forms of the Riemann-Roch statement and its companions, run
//! against any [`RankOracle`].

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use super::enumeration::DivisorEnumeration;
use super::report::{CaseInputs, CheckReport, Counterexample, ReportParams};
use crate::divisor::{Divisor, Point};
use crate::error::{Error, Result};
use crate::rank::RankOracle;

enum Outcome {
    Vacuous,
    Pass,
    Fail(Counterexample),
    /// A guaranteed search came back empty; aborts the campaign.
    Violation(Counterexample, String),
}

#[derive(Default)]
struct CaseResult {
    outcomes: Vec<Outcome>,
    stats: Vec<(&'static str, u64)>,
}

impl From<Outcome> for CaseResult {
    fn from(o: Outcome) -> Self {
        CaseResult {
            outcomes: vec![o],
            stats: Vec::new(),
        }
    }
}

fn counterexample(
    d: &Divisor,
    point: Option<Point>,
    observed: &[(&str, i64)],
    expected: impl Into<String>,
) -> Counterexample {
    Counterexample {
        inputs: CaseInputs {
            divisor: d.coefficients().to_vec(),
            point: point.map(Point::index),
        },
        observed: observed.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
        expected: expected.into(),
    }
}

fn blank_report(name: &str, oracle: &dyn RankOracle, en: Option<&DivisorEnumeration>) -> CheckReport {
    CheckReport {
        check: name.to_string(),
        backend: oracle.describe(),
        params: ReportParams {
            genus: oracle.genus(),
            point_count: oracle.point_count(),
            enumeration: en.cloned(),
            equality: None,
        },
        examined: 0,
        vacuous: 0,
        passed: 0,
        counterexamples: Vec::new(),
        seed: en.and_then(DivisorEnumeration::seed),
        wall_ms: 0,
        stats: BTreeMap::new(),
        aborted: None,
    }
}

/// Evaluates `eval` on every divisor in parallel and tallies the outcomes in
/// enumeration order.
fn campaign<F>(
    name: &str,
    oracle: &dyn RankOracle,
    en: &DivisorEnumeration,
    filter: fn(&Divisor) -> bool,
    eval: F,
) -> Result<CheckReport>
where
    F: Fn(&Divisor) -> Result<CaseResult> + Sync,
{
    let start = Instant::now();
    let mut report = blank_report(name, oracle, Some(en));
    let divisors: Vec<Divisor> = en.divisors(oracle.point_count())?.into_iter().filter(filter).collect();
    let results: Vec<Result<CaseResult>> = divisors.par_iter().map(&eval).collect();

    'cases: for result in results {
        let case = result?;
        for (key, v) in case.stats {
            *report.stats.entry(key.to_string()).or_default() += v;
        }
        for outcome in case.outcomes {
            report.examined += 1;
            match outcome {
                Outcome::Vacuous => {
                    report.vacuous += 1;
                    report.passed += 1;
                }
                Outcome::Pass => report.passed += 1,
                Outcome::Fail(cx) => report.counterexamples.push(cx),
                Outcome::Violation(cx, why) => {
                    report.counterexamples.push(cx);
                    report.aborted = Some(why);
                    break 'cases;
                }
            }
        }
    }
    report.sort_counterexamples();
    report.wall_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

fn any(_: &Divisor) -> bool {
    true
}

/// `r(D) - r(K-D) = deg(D) - g + 1` for every enumerated `D`.
pub fn check_rr(oracle: &dyn RankOracle, en: &DivisorEnumeration) -> Result<CheckReport> {
    let g = oracle.genus();
    let k = oracle.canonical();
    campaign("rr", oracle, en, any, |d| {
        let r = oracle.rank(d)?;
        let r_dual = oracle.rank(&k.checked_sub(d)?)?;
        let rhs = d.degree() - g + 1;
        Ok(if r - r_dual == rhs {
            Outcome::Pass
        } else {
            Outcome::Fail(counterexample(
                d,
                None,
                &[("r(D)", r), ("r(K-D)", r_dual), ("deg(D)", d.degree())],
                format!("r(D) - r(K-D) = deg(D) - g + 1 = {rhs}"),
            ))
        }
        .into())
    })
}

/// The divisor `N = D + P1 + ... + Pn` of degree `g - 1` together with the
/// points added to reach it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub chain: Vec<Point>,
    pub divisor: Divisor,
}

/// Builds `N` from a non-effective-class `d` of degree at most `g - 1` by
/// adding points one at a time while keeping the rank at `-1`.
///
/// Points are tried in ascending order, depth first, and the first complete
/// chain is returned. An exhausted search is a [`Error::TheoremViolation`].
pub fn witness_chain(oracle: &dyn RankOracle, d: &Divisor) -> Result<Witness> {
    d.ensure_len(oracle.point_count())?;
    let g = oracle.genus();
    let r = oracle.rank(d)?;
    if r != -1 || d.degree() > g - 1 {
        return Err(Error::InvalidInput(format!(
            "witness chain needs r(D) = -1 and deg(D) <= g - 1 = {}; got r = {r}, deg = {}",
            g - 1,
            d.degree()
        )));
    }
    let steps = (g - 1 - d.degree()) as usize;
    let points = oracle.points();
    let mut chain = Vec::with_capacity(steps);
    let mut dead_ends = HashSet::new();
    if extend_chain(oracle, &points, d.clone(), steps, &mut chain, &mut dead_ends)? {
        let divisor = chain.iter().try_fold(d.clone(), |acc, &p| acc.add_point(p))?;
        Ok(Witness { chain, divisor })
    } else {
        Err(Error::TheoremViolation(format!(
            "no chain of {steps} points keeps rank -1 starting from {d}"
        )))
    }
}

fn extend_chain(
    oracle: &dyn RankOracle,
    points: &[Point],
    current: Divisor,
    remaining: usize,
    chain: &mut Vec<Point>,
    dead_ends: &mut HashSet<Divisor>,
) -> Result<bool> {
    if remaining == 0 {
        return Ok(true);
    }
    for &p in points {
        let next = current.add_point(p)?;
        if dead_ends.contains(&next) || oracle.rank(&next)? != -1 {
            continue;
        }
        chain.push(p);
        if extend_chain(oracle, points, next.clone(), remaining - 1, chain, dead_ends)? {
            return Ok(true);
        }
        chain.pop();
        dead_ends.insert(next);
    }
    Ok(false)
}

/// (RR1): every `D` with `r(D) < 0` admits `N` of degree `g - 1`, `r(N) < 0`,
/// `r(N - D) >= 0`. The witness comes from [`witness_chain`] and is re-verified.
pub fn check_rr1(oracle: &dyn RankOracle, en: &DivisorEnumeration) -> Result<CheckReport> {
    let g = oracle.genus();
    campaign("rr1", oracle, en, any, |d| {
        let r = oracle.rank(d)?;
        if r >= 0 {
            return Ok(Outcome::Vacuous.into());
        }
        if d.degree() > g - 1 {
            // N - D would have negative degree, so no witness can exist.
            return Ok(Outcome::Fail(counterexample(
                d,
                None,
                &[("r(D)", r), ("deg(D)", d.degree())],
                format!("r(D) < 0 forces deg(D) <= g - 1 = {}", g - 1),
            ))
            .into());
        }
        let w = match witness_chain(oracle, d) {
            Ok(w) => w,
            Err(Error::TheoremViolation(why)) => {
                let cx = counterexample(
                    d,
                    None,
                    &[("r(D)", r), ("deg(D)", d.degree())],
                    format!("a witness N of degree {} with r(N) = -1 exists", g - 1),
                );
                return Ok(Outcome::Violation(cx, why).into());
            }
            Err(e) => return Err(e),
        };
        let gap = w.divisor.checked_sub(d)?;
        let r_n = oracle.rank(&w.divisor)?;
        let r_gap = oracle.rank(&gap)?;
        let ok = w.divisor.degree() == g - 1 && r_n == -1 && r_gap >= 0 && gap.is_effective();
        Ok(if ok {
            Outcome::Pass
        } else {
            Outcome::Fail(counterexample(
                d,
                None,
                &[
                    ("deg(N)", w.divisor.degree()),
                    ("r(N)", r_n),
                    ("r(N-D)", r_gap),
                    ("N-D effective", i64::from(gap.is_effective())),
                ],
                format!("deg(N) = {}, r(N) = -1, r(N-D) >= 0, N-D effective", g - 1),
            ))
        }
        .into())
    })
}

/// (RR2): `r(K) >= g - 1`, or `r(K) = g - 1` with `equality`.
pub fn check_rr2(oracle: &dyn RankOracle, equality: bool) -> Result<CheckReport> {
    let start = Instant::now();
    let mut report = blank_report("rr2", oracle, None);
    report.params.equality = Some(equality);
    let g = oracle.genus();
    let k = oracle.canonical();
    let r = oracle.rank(&k)?;
    report.examined = 1;
    let ok = if equality { r == g - 1 } else { r >= g - 1 };
    if ok {
        report.passed = 1;
    } else {
        let rel = if equality { "=" } else { ">=" };
        report.counterexamples.push(counterexample(
            &k,
            None,
            &[("r(K)", r), ("g", g)],
            format!("r(K) {rel} g - 1 = {}", g - 1),
        ));
    }
    report.wall_ms = start.elapsed().as_millis() as u64;
    Ok(report)
}

/// `r(D) >= deg(D) - g`. Cases where the bound is at most `-1` count as vacuous.
pub fn check_riemann_inequality(oracle: &dyn RankOracle, en: &DivisorEnumeration) -> Result<CheckReport> {
    let g = oracle.genus();
    campaign("riemann", oracle, en, any, |d| {
        let r = oracle.rank(d)?;
        let bound = d.degree() - g;
        Ok(if r < bound {
            Outcome::Fail(counterexample(
                d,
                None,
                &[("r(D)", r), ("deg(D)", d.degree())],
                format!("r(D) >= deg(D) - g = {bound}"),
            ))
        } else if bound <= -1 {
            Outcome::Vacuous
        } else {
            Outcome::Pass
        }
        .into())
    })
}

/// For effective `D` and every point `P`: if `r(K-D-P) < r(K-D)` then
/// `r(D+P) = r(D)`. Non-effective divisors in the enumeration are skipped;
/// each `(D, P)` pair is one examined case.
pub fn check_noether_reduction(oracle: &dyn RankOracle, en: &DivisorEnumeration) -> Result<CheckReport> {
    let k = oracle.canonical();
    let points = oracle.points();
    campaign("noether", oracle, en, Divisor::is_effective, |d| {
        let dual = k.checked_sub(d)?;
        let r_dual = oracle.rank(&dual)?;
        let r = oracle.rank(d)?;
        let mut case = CaseResult::default();
        for &p in &points {
            let r_dual_p = oracle.rank(&dual.checked_sub(&Divisor::point(d.len(), p, 1)?)?)?;
            if r_dual_p >= r_dual {
                case.outcomes.push(Outcome::Vacuous);
                continue;
            }
            let r_p = oracle.rank(&d.add_point(p)?)?;
            case.outcomes.push(if r_p == r {
                Outcome::Pass
            } else {
                Outcome::Fail(counterexample(
                    d,
                    Some(p),
                    &[("r(K-D-P)", r_dual_p), ("r(K-D)", r_dual), ("r(D+P)", r_p), ("r(D)", r)],
                    "r(K-D-P) < r(K-D) implies r(D+P) = r(D)",
                ))
            });
        }
        Ok(case)
    })
}

/// First point `P` (ascending) with `r(D + P) = -1`, if any.
pub fn corollary_nr_witness(oracle: &dyn RankOracle, d: &Divisor) -> Result<Option<Point>> {
    for p in oracle.points() {
        if oracle.rank(&d.add_point(p)?)? == -1 {
            return Ok(Some(p));
        }
    }
    Ok(None)
}

/// For `r(D) = -1` and `deg(D) <= g - 2`, some point `P` keeps `r(D + P) = -1`.
///
/// Finite backends have no generic point, so the quantifier is existential.
/// The fraction of points that work is reported in `stats` but not asserted.
pub fn check_corollary_nr(oracle: &dyn RankOracle, en: &DivisorEnumeration) -> Result<CheckReport> {
    let g = oracle.genus();
    if g < 2 {
        let mut report = blank_report("cnr", oracle, Some(en));
        report.stats.insert("skipped_low_genus".into(), 1);
        return Ok(report);
    }
    let points = oracle.points();
    campaign("cnr", oracle, en, any, |d| {
        let r = oracle.rank(d)?;
        if r != -1 || d.degree() > g - 2 {
            return Ok(Outcome::Vacuous.into());
        }
        let mut working = 0u64;
        let mut first = None;
        for &p in &points {
            if oracle.rank(&d.add_point(p)?)? == -1 {
                working += 1;
                first.get_or_insert(p);
            }
        }
        let outcome = match first {
            Some(_) => Outcome::Pass,
            None => Outcome::Fail(counterexample(
                d,
                None,
                &[("r(D)", r), ("deg(D)", d.degree()), ("working points", 0)],
                "some point P has r(D+P) = -1",
            )),
        };
        Ok(CaseResult {
            outcomes: vec![outcome],
            stats: vec![
                ("points_tried", points.len() as u64),
                ("points_working", working),
            ],
        })
    })
}

/// Verdict of running (RR1), (RR2) and the formula side by side on one backend.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    /// One-case report: passes iff `(RR1 and RR2)` agrees with the formula.
    pub verdict: CheckReport,
    /// The rr1, rr2 and rr sub-reports, in that order.
    pub parts: Vec<CheckReport>,
}

impl EquivalenceReport {
    pub fn all_pass(&self) -> bool {
        self.verdict.is_pass() && self.parts.iter().all(CheckReport::is_pass)
    }
}

pub fn check_equivalence_theorem(oracle: &dyn RankOracle, en: &DivisorEnumeration) -> Result<EquivalenceReport> {
    let start = Instant::now();
    let rr1 = check_rr1(oracle, en)?;
    let rr2 = check_rr2(oracle, false)?;
    let rr = check_rr(oracle, en)?;
    let axioms_hold = rr1.is_pass() && rr2.is_pass();
    let formula_holds = rr.is_pass();

    let mut verdict = blank_report("equivalence", oracle, Some(en));
    verdict.examined = 1;
    if axioms_hold == formula_holds {
        verdict.passed = 1;
    } else {
        let failures = |r: &CheckReport| r.counterexamples.len() as i64;
        verdict.counterexamples.push(counterexample(
            &Divisor::zero(oracle.point_count()),
            None,
            &[
                ("rr1 failures", failures(&rr1)),
                ("rr2 failures", failures(&rr2)),
                ("rr failures", failures(&rr)),
            ],
            "the formula holds iff (RR1) and (RR2) hold",
        ));
    }
    verdict.wall_ms = start.elapsed().as_millis() as u64;
    Ok(EquivalenceReport {
        verdict,
        parts: vec![rr1, rr2, rr],
    })
}

/// Selector for individual checks, as used on the command line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    Rr,
    Rr1,
    Rr2,
    Riemann,
    Noether,
    CorollaryNr,
}

impl Check {
    pub const ALL: [Check; 6] = [
        Check::Rr,
        Check::Rr1,
        Check::Rr2,
        Check::Riemann,
        Check::Noether,
        Check::CorollaryNr,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Rr => "rr",
            Check::Rr1 => "rr1",
            Check::Rr2 => "rr2",
            Check::Riemann => "riemann",
            Check::Noether => "noether",
            Check::CorollaryNr => "cnr",
        }
    }

    /// Runs the check. `rr2` runs in equality mode; `noether` uses
    /// `effective_en`, everything else `en`.
    pub fn run(
        self,
        oracle: &dyn RankOracle,
        en: &DivisorEnumeration,
        effective_en: &DivisorEnumeration,
    ) -> Result<CheckReport> {
        match self {
            Check::Rr => check_rr(oracle, en),
            Check::Rr1 => check_rr1(oracle, en),
            Check::Rr2 => check_rr2(oracle, true),
            Check::Riemann => check_riemann_inequality(oracle, en),
            Check::Noether => check_noether_reduction(oracle, effective_en),
            Check::CorollaryNr => check_corollary_nr(oracle, en),
        }
    }

    /// Parses a comma-separated list; `all` expands to every check.
    pub fn parse_list(s: &str) -> Result<Vec<Check>> {
        let mut out = Vec::new();
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            if tok == "all" {
                out.extend(Check::ALL);
            } else {
                out.push(tok.parse()?);
            }
        }
        out.sort();
        out.dedup();
        if out.is_empty() {
            return Err(Error::InvalidInput("empty check list".into()));
        }
        Ok(out)
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidInput(format!("unknown check {s:?}")))
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
