//! Test-only oracles that decide linear equivalence by integer linear algebra
//! on the graph Laplacian, without any chip-firing.
//!
//! With `x_0` pinned to 0 the reduced Laplacian `L'` (row and column 0
//! removed) is invertible, so for degree-0 `v` we have `v ∈ im L` iff
//! `adj(L') · v' ≡ 0 (mod det L')`. The residue vector `adj(L') · d' mod det`
//! together with the degree is therefore a complete class invariant.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet};
use std::sync::Mutex;

use rrlab_core::{generate_family, Divisor, GraphFamily, GraphFamilySpec, Multigraph};

pub type ClassKey = (i64, Vec<i128>);

pub fn laplacian(g: &Multigraph) -> Vec<Vec<i64>> {
    let n = g.vertex_count();
    let mut l = vec![vec![0i64; n]; n];
    for u in 0..n {
        for v in 0..n {
            if u != v {
                let m = i64::from(g.multiplicity(u, v));
                l[u][v] = -m;
                l[u][u] += m;
            }
        }
    }
    l
}

fn minor(m: &[Vec<i128>], row: usize, col: usize) -> Vec<Vec<i128>> {
    m.iter()
        .enumerate()
        .filter(|&(i, _)| i != row)
        .map(|(_, r)| r.iter().enumerate().filter(|&(j, _)| j != col).map(|(_, &x)| x).collect())
        .collect()
}

/// Determinant by cofactor expansion; fine for the tiny matrices used here.
pub fn det(m: &[Vec<i128>]) -> i128 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor(m, 0, j))
            })
            .sum(),
    }
}

pub fn adjugate(m: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let n = m.len();
    let mut adj = vec![vec![0i128; n]; n];
    for i in 0..n {
        for j in 0..n {
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[j][i] = sign * det(&minor(m, i, j));
        }
    }
    adj
}

/// All effective divisors of degree `k` on `n` points (own recursion, not the
/// library's enumerator).
pub fn effective_of_degree(n: usize, k: i64) -> Vec<Vec<i64>> {
    fn go(n: usize, k: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if prefix.len() + 1 == n {
            prefix.push(k);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for c in 0..=k {
            prefix.push(c);
            go(n, k - c, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if k >= 0 && n > 0 {
        go(n, k, &mut Vec::new(), &mut out);
    }
    out
}

pub struct LatticeOracle {
    n: usize,
    laplacian: Vec<Vec<i64>>,
    adj: Vec<Vec<i128>>,
    det: i128,
    effective_keys: Mutex<HashMap<i64, HashSet<ClassKey>>>,
}

impl LatticeOracle {
    pub fn new(g: &Multigraph) -> Self {
        let n = g.vertex_count();
        let laplacian = laplacian(g);
        let reduced: Vec<Vec<i128>> = (1..n)
            .map(|i| (1..n).map(|j| i128::from(laplacian[i][j])).collect())
            .collect();
        let det = det(&reduced);
        assert!(det > 0, "reduced Laplacian of a connected graph is positive definite");
        LatticeOracle {
            n,
            laplacian,
            adj: adjugate(&reduced),
            det,
            effective_keys: Mutex::new(HashMap::new()),
        }
    }

    /// Number of spanning trees, i.e. the order of the Jacobian.
    pub fn jacobian_order(&self) -> i128 {
        self.det
    }

    pub fn class_key(&self, d: &[i64]) -> ClassKey {
        assert_eq!(d.len(), self.n);
        let deg = d.iter().sum();
        let residues = self
            .adj
            .iter()
            .map(|row| {
                let dot: i128 = row.iter().zip(&d[1..]).map(|(&a, &x)| a * i128::from(x)).sum();
                dot.rem_euclid(self.det)
            })
            .collect();
        (deg, residues)
    }

    pub fn equivalent(&self, a: &[i64], b: &[i64]) -> bool {
        self.class_key(a) == self.class_key(b)
    }

    pub fn effective_class(&self, d: &[i64]) -> bool {
        let deg: i64 = d.iter().sum();
        if deg < 0 {
            return false;
        }
        let key = self.class_key(d);
        let mut cache = self.effective_keys.lock().unwrap();
        let keys = cache.entry(deg).or_insert_with(|| {
            effective_of_degree(self.n, deg)
                .iter()
                .map(|e| self.class_key(e))
                .collect()
        });
        keys.contains(&key)
    }

    /// Rank straight from the definition, using this oracle's equivalence.
    pub fn rank(&self, d: &[i64]) -> i64 {
        if !self.effective_class(d) {
            return -1;
        }
        let deg: i64 = d.iter().sum();
        for k in 1..=deg {
            for e in effective_of_degree(self.n, k) {
                let diff: Vec<i64> = d.iter().zip(&e).map(|(a, b)| a - b).collect();
                if !self.effective_class(&diff) {
                    return k - 1;
                }
            }
        }
        deg
    }

    /// Searches `L x = v` over `x_0 = 0`, `x_i ∈ [-bound, bound]`.
    pub fn lattice_member_box(&self, v: &[i64], bound: i64) -> bool {
        if v.iter().sum::<i64>() != 0 {
            return false;
        }
        let mut x = vec![0i64; self.n];
        for slot in x.iter_mut().skip(1) {
            *slot = -bound;
        }
        loop {
            let hit = (0..self.n).all(|i| {
                let lx: i64 = (0..self.n).map(|j| self.laplacian[i][j] * x[j]).sum();
                lx == v[i]
            });
            if hit {
                return true;
            }
            let mut i = self.n;
            loop {
                if i <= 1 {
                    return false;
                }
                i -= 1;
                if x[i] < bound {
                    x[i] += 1;
                    break;
                }
                x[i] = -bound;
            }
        }
    }
}

/// Every integer vector of length `n` with entries in `[-bound, bound]`.
pub fn box_vectors(n: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-bound..=bound).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

pub fn div(v: &[i64]) -> Divisor {
    Divisor::new(v.to_vec())
}

pub fn family(f: GraphFamily, size: usize) -> Multigraph {
    generate_family(&GraphFamilySpec::new(f, size)).unwrap()
}

fn canonical_form(n: usize, rows: &[Vec<u32>]) -> Vec<u32> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<u32>> = None;
    permute_all(&mut perm, 0, &mut |p| {
        let flat: Vec<u32> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).map(|(i, j)| rows[p[i]][p[j]]).collect();
        if best.as_ref().map_or(true, |b| flat < *b) {
            best = Some(flat);
        }
    });
    best.unwrap()
}

fn permute_all(p: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute_all(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Connected multigraphs on `n` vertices with every multiplicity at most
/// `max_mult`, one per isomorphism class.
pub fn connected_multigraphs(n: usize, max_mult: u32) -> Vec<Multigraph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let total = (max_mult as usize + 1).pow(pairs.len() as u32);
    for code in 0..total {
        let mut rows = vec![vec![0u32; n]; n];
        let mut c = code;
        for &(u, v) in &pairs {
            let m = (c % (max_mult as usize + 1)) as u32;
            c /= max_mult as usize + 1;
            rows[u][v] = m;
            rows[v][u] = m;
        }
        let Ok(g) = Multigraph::from_adjacency(rows.clone()) else {
            continue;
        };
        if seen.insert(canonical_form(n, &rows)) {
            out.push(g);
        }
    }
    out
}

/// Small graphs on at most four vertices used by the oracle cross-checks:
/// every connected simple graph up to isomorphism, every connected multigraph
/// with multiplicities up to 2 on at most three vertices, the bananas B1..B4,
/// and a few 4-vertex multigraphs.
pub fn small_graph_suite() -> Vec<Multigraph> {
    let mut out = vec![Multigraph::from_edges(1, &[]).unwrap()];
    for m in 1..=4 {
        out.push(family(GraphFamily::Banana, m));
    }
    out.extend(connected_multigraphs(3, 2));
    out.extend(connected_multigraphs(4, 1));
    out.push(Multigraph::from_edges(4, &[(0, 1), (0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap());
    out.push(Multigraph::from_edges(4, &[(0, 1), (1, 2), (1, 2), (2, 3), (2, 3), (2, 3)]).unwrap());
    out.push(Multigraph::from_edges(4, &[(0, 1), (0, 1), (1, 2), (1, 2), (2, 3), (2, 3), (3, 0), (3, 0)]).unwrap());
    let mut seen = HashSet::new();
    out.retain(|g| {
        let rows: Vec<Vec<u32>> = (0..g.vertex_count()).map(|v| g.row(v).to_vec()).collect();
        seen.insert((g.vertex_count(), canonical_form(g.vertex_count(), &rows)))
    });
    out
}
