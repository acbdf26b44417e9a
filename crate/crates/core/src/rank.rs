//! The rank function and the backend interface every checker runs against.
//!
//! On graphs the rank is computed straight from its definition: the largest
//! `k` such that `d - e` stays equivalent to an effective divisor for every
//! effective `e` of degree `k`. [`graph_rank`] takes only the graph and the
//! divisor, so it cannot consult the genus or the canonical divisor, which
//! keeps Riemann-Roch checks against it non-circular.

use crate::divisor::{Divisor, Point};
use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::reduction;

/// Largest vertex count accepted by rank queries.
pub const MAX_RANK_VERTICES: usize = 12;
/// Largest divisor degree accepted by rank queries.
pub const MAX_RANK_DEGREE: i64 = 64;

/// A divisor theory: a finite point set with genus, canonical divisor,
/// rank function and linear equivalence.
pub trait RankOracle: Sync {
    /// Short human-readable backend label, recorded in reports.
    fn describe(&self) -> String;

    fn point_count(&self) -> usize;

    fn points(&self) -> Vec<Point> {
        (0..self.point_count()).map(Point).collect()
    }

    fn genus(&self) -> i64;

    fn canonical(&self) -> Divisor;

    /// Returns a value `>= -1`.
    fn rank(&self, d: &Divisor) -> Result<i64>;

    fn equivalent(&self, d1: &Divisor, d2: &Divisor) -> Result<bool>;
}

macro_rules! forward_oracle {
    ($($ty:ty),*) => {$(
        impl<T: RankOracle + ?Sized> RankOracle for $ty {
            fn describe(&self) -> String {
                (**self).describe()
            }
            fn point_count(&self) -> usize {
                (**self).point_count()
            }
            fn points(&self) -> Vec<Point> {
                (**self).points()
            }
            fn genus(&self) -> i64 {
                (**self).genus()
            }
            fn canonical(&self) -> Divisor {
                (**self).canonical()
            }
            fn rank(&self, d: &Divisor) -> Result<i64> {
                (**self).rank(d)
            }
            fn equivalent(&self, d1: &Divisor, d2: &Divisor) -> Result<bool> {
                (**self).equivalent(d1, d2)
            }
        }
    )*};
}

forward_oracle!(&T, Box<T>);

/// All effective divisors of a fixed degree on `n` points, in ascending
/// lexicographic order: `(0,..,0,k)` first, `(k,0,..,0)` last.
#[derive(Debug, Clone)]
pub struct EffectiveDivisors {
    current: Option<Vec<i64>>,
}

impl EffectiveDivisors {
    pub fn new(n: usize, degree: i64) -> Self {
        let current = if n == 0 || degree < 0 {
            (n == 0 && degree == 0).then(Vec::new)
        } else {
            let mut v = vec![0; n];
            v[n - 1] = degree;
            Some(v)
        };
        EffectiveDivisors { current }
    }
}

impl Iterator for EffectiveDivisors {
    type Item = Divisor;

    fn next(&mut self) -> Option<Divisor> {
        let cur = self.current.take()?;
        let out = Divisor::new(cur.clone());
        let n = cur.len();
        let mut next = cur;
        let mut suffix = 0;
        // Rightmost position with mass to its right gets one more chip; the
        // remainder collapses onto the last slot.
        for i in (0..n.saturating_sub(1)).rev() {
            suffix += next[i + 1];
            if suffix > 0 {
                next[i] += 1;
                for slot in &mut next[i + 1..] {
                    *slot = 0;
                }
                next[n - 1] = suffix - 1;
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

fn check_guardrails(n: usize, d: &Divisor) -> Result<()> {
    if n > MAX_RANK_VERTICES {
        return Err(Error::Resource(format!(
            "rank query on {n} points exceeds the limit of {MAX_RANK_VERTICES}"
        )));
    }
    if d.degree() > MAX_RANK_DEGREE {
        return Err(Error::Resource(format!(
            "rank query at degree {} exceeds the limit of {MAX_RANK_DEGREE}",
            d.degree()
        )));
    }
    Ok(())
}

/// Rank of `d` on `g` by enumerating effective divisors of increasing degree.
pub fn graph_rank(g: &Multigraph, d: &Divisor) -> Result<i64> {
    let n = g.vertex_count();
    d.ensure_len(n)?;
    check_guardrails(n, d)?;
    if !reduction::effective_class(g, d)? {
        return Ok(-1);
    }
    for k in 1..=d.degree() {
        for e in EffectiveDivisors::new(n, k) {
            if !reduction::effective_class(g, &d.checked_sub(&e)?)? {
                return Ok(k - 1);
            }
        }
    }
    Ok(d.degree())
}

/// `rank(d) <= rank(d + P) <= rank(d) + 1`.
pub fn rank_drop_bound_check(oracle: &dyn RankOracle, d: &Divisor, p: Point) -> Result<bool> {
    let base = oracle.rank(d)?;
    let bumped = oracle.rank(&d.add_point(p)?)?;
    Ok(base <= bumped && bumped <= base + 1)
}

/// A multigraph viewed as a divisor theory.
#[derive(Debug, Clone)]
pub struct GraphOracle {
    graph: Multigraph,
    label: String,
}

impl GraphOracle {
    pub fn new(graph: Multigraph) -> Self {
        let label = format!(
            "graph(n={}, m={}, g={})",
            graph.vertex_count(),
            graph.edge_count(),
            graph.genus()
        );
        GraphOracle { graph, label }
    }

    pub fn with_label(graph: Multigraph, label: impl Into<String>) -> Self {
        GraphOracle {
            graph,
            label: label.into(),
        }
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }
}

impl RankOracle for GraphOracle {
    fn describe(&self) -> String {
        self.label.clone()
    }

    fn point_count(&self) -> usize {
        self.graph.vertex_count()
    }

    fn genus(&self) -> i64 {
        self.graph.genus()
    }

    fn canonical(&self) -> Divisor {
        self.graph.canonical()
    }

    fn rank(&self, d: &Divisor) -> Result<i64> {
        graph_rank(&self.graph, d)
    }

    fn equivalent(&self, d1: &Divisor, d2: &Divisor) -> Result<bool> {
        reduction::equivalent(&self.graph, d1, d2)
    }
}
