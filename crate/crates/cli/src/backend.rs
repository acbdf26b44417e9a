//! Resolves command-line backend and divisor arguments.

use std::fs;
use std::path::Path;

use rrlab_core::curve::{EllipticCurve, EllipticOracle, ProjectiveLineOracle};
use rrlab_core::{generate_family, Divisor, Error, GraphFamily, GraphFamilySpec, GraphOracle, Multigraph, RankOracle, Result};

/// `family:size` or `family:lo..hi`, e.g. `cycle:3..6`.
fn parse_family_range(spec: &str) -> Result<Option<(GraphFamily, Vec<usize>)>> {
    let Some((name, sizes)) = spec.split_once(':') else {
        return Ok(None);
    };
    let Ok(family) = name.parse::<GraphFamily>() else {
        return Ok(None);
    };
    let size = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| Error::InvalidInput(format!("bad size {s:?} in backend {spec:?}")))
    };
    let sizes = match sizes.split_once("..") {
        Some((lo, hi)) => {
            let hi = hi.strip_prefix('=').unwrap_or(hi);
            (size(lo)?..=size(hi)?).collect()
        }
        None => vec![size(sizes)?],
    };
    if sizes.is_empty() {
        return Err(Error::InvalidInput(format!("empty size range in {spec:?}")));
    }
    Ok(Some((family, sizes)))
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))
}

fn with_file_context(path: &str, err: Error) -> Error {
    match err {
        Error::Parse { location, msg } => Error::Parse {
            location: format!("{path}, {location}"),
            msg,
        },
        other => other,
    }
}

/// A graph from a file (text or JSON) or a single family spec like `banana:3`.
pub fn load_graph(arg: &str, seed: u64) -> Result<(Multigraph, String)> {
    let path = Path::new(arg);
    if path.is_file() {
        let g = Multigraph::parse(&read_file(path)?).map_err(|e| with_file_context(arg, e))?;
        return Ok((g, arg.to_string()));
    }
    match parse_family_range(arg)? {
        Some((family, sizes)) if sizes.len() == 1 => {
            let spec = GraphFamilySpec::new(family, sizes[0]).with_seed(seed);
            Ok((generate_family(&spec)?, spec.label()))
        }
        Some(_) => Err(Error::InvalidInput(format!("{arg:?} names several graphs; pick one size"))),
        None => Err(Error::InvalidInput(format!("{arg:?} is neither a readable file nor a family spec"))),
    }
}

/// A divisor from a JSON file (integer array) or inline `1,-2,0`.
pub fn load_divisor(arg: &str) -> Result<Divisor> {
    let path = Path::new(arg);
    if path.is_file() {
        return serde_json::from_str(&read_file(path)?).map_err(|e| Error::Parse {
            location: format!("{arg}, line {} column {}", e.line(), e.column()),
            msg: e.to_string(),
        });
    }
    arg.parse()
}

/// Every backend named by a `check` argument.
pub fn load_backends(arg: &str, seed: u64) -> Result<Vec<Box<dyn RankOracle>>> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = read_file(path)?;
        let is_curve = serde_json::from_str::<serde_json::Value>(&text)
            .ok()
            .and_then(|v| v.get("p").cloned())
            .is_some();
        let backend: Box<dyn RankOracle> = if is_curve {
            let curve = EllipticCurve::parse_json(&text).map_err(|e| with_file_context(arg, e))?;
            Box::new(EllipticOracle::new(curve)?)
        } else {
            let g = Multigraph::parse(&text).map_err(|e| with_file_context(arg, e))?;
            Box::new(GraphOracle::with_label(g, arg))
        };
        return Ok(vec![backend]);
    }
    if let Some(rest) = arg.strip_prefix("elliptic:") {
        let nums: Vec<i64> = rest
            .split(',')
            .map(|t| t.trim().parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::InvalidInput(format!("expected elliptic:p,a,b, got {arg:?}")))?;
        let [p, a, b] = nums[..] else {
            return Err(Error::InvalidInput(format!("expected elliptic:p,a,b, got {arg:?}")));
        };
        return Ok(vec![Box::new(EllipticOracle::new(EllipticCurve::new(p, a, b)?)?)]);
    }
    if let Some(rest) = arg.strip_prefix("p1:") {
        let m = rest
            .trim()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("expected p1:<points>, got {arg:?}")))?;
        return Ok(vec![Box::new(ProjectiveLineOracle::new(m)?)]);
    }
    match parse_family_range(arg)? {
        Some((family, sizes)) => sizes
            .into_iter()
            .map(|size| {
                let spec = GraphFamilySpec::new(family, size).with_seed(seed);
                let g = generate_family(&spec)?;
                Ok(Box::new(GraphOracle::with_label(g, spec.label())) as Box<dyn RankOracle>)
            })
            .collect(),
        None => Err(Error::InvalidInput(format!("unknown backend {arg:?}"))),
    }
}
