//! Linear equivalence on graph divisors via chip-firing.
//!
//! Every class has a unique q-reduced representative: non-negative away from
//! `q`, and no non-empty set avoiding `q` can fire without sending some
//! vertex into debt. [`reduce`] computes it with Dhar's burning algorithm and
//! records every set-firing it performs so the result can be replayed.

use serde::{Deserialize, Serialize};

use crate::divisor::{Divisor, Point};
use crate::error::{Error, Result};
use crate::graph::Multigraph;

/// One recorded move: every vertex in `set` fires `times` times.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Firing {
    pub set: Vec<usize>,
    pub times: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ReducedDivisor {
    q: Point,
    divisor: Divisor,
}

impl ReducedDivisor {
    pub fn base(&self) -> Point {
        self.q
    }

    pub fn divisor(&self) -> &Divisor {
        &self.divisor
    }

    pub fn into_divisor(self) -> Divisor {
        self.divisor
    }

    /// Chips left on the base point; negative iff the class has no effective member.
    pub fn at_base(&self) -> i64 {
        self.divisor.get(self.q)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub reduced: ReducedDivisor,
    pub firings: Vec<Firing>,
}

fn check_inputs(g: &Multigraph, d: &Divisor) -> Result<()> {
    d.ensure_len(g.vertex_count())
}

fn check_point(g: &Multigraph, p: Point) -> Result<()> {
    if p.0 < g.vertex_count() {
        Ok(())
    } else {
        Err(Error::invalid(format!(
            "vertex {} out of range for {} vertices",
            p.0,
            g.vertex_count()
        )))
    }
}

/// Every vertex of `set` sends one chip along each edge leaving `set`.
pub fn fire_set(g: &Multigraph, d: &Divisor, set: &[Point]) -> Result<Divisor> {
    check_inputs(g, d)?;
    let mut mask = vec![false; g.vertex_count()];
    for &p in set {
        check_point(g, p)?;
        mask[p.0] = true;
    }
    let mut coeffs = d.coefficients().to_vec();
    fire_mask(g, &mut coeffs, &mask, 1)?;
    Ok(Divisor::new(coeffs))
}

fn fire_mask(g: &Multigraph, coeffs: &mut [i64], mask: &[bool], times: i64) -> Result<()> {
    let n = g.vertex_count();
    for v in (0..n).filter(|&v| mask[v]) {
        for w in (0..n).filter(|&w| !mask[w]) {
            let m = i64::from(g.multiplicity(v, w));
            if m == 0 {
                continue;
            }
            let flow = m.checked_mul(times).ok_or(Error::Overflow("set firing"))?;
            coeffs[v] = coeffs[v].checked_sub(flow).ok_or(Error::Overflow("set firing"))?;
            coeffs[w] = coeffs[w].checked_add(flow).ok_or(Error::Overflow("set firing"))?;
        }
    }
    Ok(())
}

/// Applies a recorded firing sequence to `d`.
pub fn replay(g: &Multigraph, d: &Divisor, firings: &[Firing]) -> Result<Divisor> {
    check_inputs(g, d)?;
    let mut coeffs = d.coefficients().to_vec();
    let mut mask = vec![false; g.vertex_count()];
    for f in firings {
        mask.iter_mut().for_each(|m| *m = false);
        for &v in &f.set {
            check_point(g, Point(v))?;
            mask[v] = true;
        }
        fire_mask(g, &mut coeffs, &mask, f.times)?;
    }
    Ok(Divisor::new(coeffs))
}

/// Runs Dhar's burning process from `q` and returns which vertices burn.
///
/// A vertex catches fire once the number of burnt edges touching it exceeds
/// its chip count. Assumes `coeffs` is non-negative away from `q`.
pub fn dhar_burn(g: &Multigraph, coeffs: &[i64], q: Point) -> Vec<bool> {
    let n = g.vertex_count();
    let mut burnt = vec![false; n];
    let mut heat = vec![0i64; n];
    let mut front = vec![q.0];
    burnt[q.0] = true;
    while let Some(u) = front.pop() {
        for (v, &m) in g.row(u).iter().enumerate() {
            if m == 0 || burnt[v] {
                continue;
            }
            heat[v] += i64::from(m);
            if heat[v] > coeffs[v] {
                burnt[v] = true;
                front.push(v);
            }
        }
    }
    burnt
}

/// True iff `d` is q-reduced (non-negative off `q`, and the fire from `q` burns everything).
pub fn is_reduced(g: &Multigraph, d: &Divisor, q: Point) -> Result<bool> {
    check_inputs(g, d)?;
    check_point(g, q)?;
    let c = d.coefficients();
    if (0..c.len()).any(|v| v != q.0 && c[v] < 0) {
        return Ok(false);
    }
    Ok(dhar_burn(g, c, q).into_iter().all(|b| b))
}

/// Computes the unique q-reduced divisor equivalent to `d`.
pub fn reduce(g: &Multigraph, d: &Divisor, q: Point) -> Result<Reduction> {
    check_inputs(g, d)?;
    check_point(g, q)?;
    let n = g.vertex_count();
    let mut coeffs = d.coefficients().to_vec();
    let mut firings = Vec::new();
    let mut mask = vec![false; n];

    // Phase 1: clear debt away from q. A vertex in debt borrows by having
    // everything else fire, as many times as needed to lift it to >= 0.
    while let Some(v) = (0..n).find(|&v| v != q.0 && coeffs[v] < 0) {
        let valence = g.valence(v);
        let times = (-coeffs[v] + valence - 1) / valence;
        mask.iter_mut().enumerate().for_each(|(w, m)| *m = w != v);
        fire_mask(g, &mut coeffs, &mask, times)?;
        firings.push(Firing {
            set: (0..n).filter(|&w| w != v).collect(),
            times,
        });
    }

    // Phase 2: fire the unburnt set until the fire from q consumes everything.
    loop {
        let burnt = dhar_burn(g, &coeffs, q);
        if burnt.iter().all(|&b| b) {
            break;
        }
        for (m, b) in mask.iter_mut().zip(&burnt) {
            *m = !b;
        }
        // Fire the set as often as stays legal; each unburnt vertex can afford
        // at least one round by construction.
        let times = (0..n)
            .filter(|&v| mask[v])
            .filter_map(|v| {
                let out: i64 = (0..n)
                    .filter(|&w| !mask[w])
                    .map(|w| i64::from(g.multiplicity(v, w)))
                    .sum();
                (out > 0).then(|| coeffs[v] / out)
            })
            .min()
            .unwrap_or(1)
            .max(1);
        fire_mask(g, &mut coeffs, &mask, times)?;
        firings.push(Firing {
            set: (0..n).filter(|&v| mask[v]).collect(),
            times,
        });
    }

    Ok(Reduction {
        reduced: ReducedDivisor {
            q,
            divisor: Divisor::new(coeffs),
        },
        firings,
    })
}

/// Linear equivalence, decided by comparing 0-reduced forms.
pub fn equivalent(g: &Multigraph, d1: &Divisor, d2: &Divisor) -> Result<bool> {
    check_inputs(g, d1)?;
    check_inputs(g, d2)?;
    if d1.degree() != d2.degree() {
        return Ok(false);
    }
    let r1 = reduce(g, d1, Point(0))?.reduced;
    let r2 = reduce(g, d2, Point(0))?.reduced;
    Ok(r1 == r2)
}

/// True iff `d` is linearly equivalent to some effective divisor.
pub fn effective_class(g: &Multigraph, d: &Divisor) -> Result<bool> {
    effective_class_at(g, d, Point(0))
}

/// [`effective_class`] with an explicit base point; the answer does not depend on it.
pub fn effective_class_at(g: &Multigraph, d: &Divisor, q: Point) -> Result<bool> {
    check_inputs(g, d)?;
    if d.degree() < 0 {
        return Ok(false);
    }
    Ok(reduce(g, d, q)?.reduced.at_base() >= 0)
}
