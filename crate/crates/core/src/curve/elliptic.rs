use std::fmt;

use serde::{Deserialize, Serialize};

use super::field::PrimeField;
use crate::divisor::Divisor;
use crate::error::{Error, Result};
use crate::rank::RankOracle;

/// JSON form of a curve: `{"p": 5, "a": 1, "b": 1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub p: i64,
    pub a: i64,
    pub b: i64,
}

/// Short Weierstrass curve `y^2 = x^3 + a x + b` over F_p, `p > 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EllipticCurve {
    field: PrimeField,
    a: i64,
    b: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CurvePoint {
    Infinity,
    Affine { x: i64, y: i64 },
}

impl fmt::Display for CurvePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurvePoint::Infinity => write!(f, "O"),
            CurvePoint::Affine { x, y } => write!(f, "({x},{y})"),
        }
    }
}

impl EllipticCurve {
    pub fn new(p: i64, a: i64, b: i64) -> Result<Self> {
        if p <= 3 {
            return Err(Error::invalid(format!("characteristic {p} is not supported (need p > 3)")));
        }
        let field = PrimeField::new(p)?;
        let (a, b) = (field.reduce(a), field.reduce(b));
        let disc = field.add(
            field.mul(4, field.mul(a, field.mul(a, a))),
            field.mul(27, field.mul(b, b)),
        );
        if disc == 0 {
            return Err(Error::invalid(format!(
                "y^2 = x^3 + {a}x + {b} is singular over F_{p}"
            )));
        }
        Ok(EllipticCurve { field, a, b })
    }

    pub fn from_spec(spec: CurveSpec) -> Result<Self> {
        Self::new(spec.p, spec.a, spec.b)
    }

    pub fn parse_json(input: &str) -> Result<Self> {
        let spec: CurveSpec = serde_json::from_str(input).map_err(|e| Error::Parse {
            location: format!("line {} column {}", e.line(), e.column()),
            msg: e.to_string(),
        })?;
        Self::from_spec(spec)
    }

    pub fn spec(&self) -> CurveSpec {
        CurveSpec {
            p: self.field.modulus(),
            a: self.a,
            b: self.b,
        }
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    fn rhs(&self, x: i64) -> i64 {
        let f = self.field;
        f.add(f.add(f.mul(x, f.mul(x, x)), f.mul(self.a, x)), self.b)
    }

    pub fn contains(&self, p: &CurvePoint) -> bool {
        match *p {
            CurvePoint::Infinity => true,
            CurvePoint::Affine { x, y } => {
                let f = self.field;
                let in_range = (0..f.modulus()).contains(&x) && (0..f.modulus()).contains(&y);
                in_range && f.mul(y, y) == self.rhs(x)
            }
        }
    }

    fn ensure_on_curve(&self, p: &CurvePoint) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::invalid(format!("{p} is not on the curve")))
        }
    }

    pub fn neg(&self, p: &CurvePoint) -> CurvePoint {
        match *p {
            CurvePoint::Infinity => CurvePoint::Infinity,
            CurvePoint::Affine { x, y } => CurvePoint::Affine {
                x,
                y: self.field.neg(y),
            },
        }
    }

    /// Chord-tangent addition with `O` as identity.
    pub fn add(&self, p: &CurvePoint, q: &CurvePoint) -> Result<CurvePoint> {
        self.ensure_on_curve(p)?;
        self.ensure_on_curve(q)?;
        Ok(self.add_unchecked(p, q))
    }

    fn add_unchecked(&self, p: &CurvePoint, q: &CurvePoint) -> CurvePoint {
        let f = self.field;
        let (x1, y1, x2, y2) = match (*p, *q) {
            (CurvePoint::Infinity, other) | (other, CurvePoint::Infinity) => return other,
            (CurvePoint::Affine { x: x1, y: y1 }, CurvePoint::Affine { x: x2, y: y2 }) => {
                (x1, y1, x2, y2)
            }
        };
        let slope = if x1 == x2 {
            if f.add(y1, y2) == 0 {
                return CurvePoint::Infinity;
            }
            // tangent: (3x^2 + a) / 2y
            let num = f.add(f.mul(3, f.mul(x1, x1)), self.a);
            f.mul(num, f.inv(f.mul(2, y1)).expect("2y is nonzero off the 2-torsion"))
        } else {
            f.mul(f.sub(y2, y1), f.inv(f.sub(x2, x1)).expect("distinct x"))
        };
        let x3 = f.sub(f.sub(f.mul(slope, slope), x1), x2);
        let y3 = f.sub(f.mul(slope, f.sub(x1, x3)), y1);
        CurvePoint::Affine { x: x3, y: y3 }
    }

    /// `k * P` for any integer `k` (negative multiples go through `-P`).
    pub fn mul(&self, p: &CurvePoint, k: i64) -> Result<CurvePoint> {
        self.ensure_on_curve(p)?;
        let mut base = if k < 0 { self.neg(p) } else { *p };
        let mut k = k.unsigned_abs();
        let mut acc = CurvePoint::Infinity;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add_unchecked(&acc, &base);
            }
            base = self.add_unchecked(&base, &base);
            k >>= 1;
        }
        Ok(acc)
    }

    /// Every point of the curve: affine points by ascending `(x, y)`, then `O`.
    pub fn points(&self) -> Vec<CurvePoint> {
        let p = self.field.modulus();
        let mut out = Vec::new();
        for x in 0..p {
            let rhs = self.rhs(x);
            for y in 0..p {
                if self.field.mul(y, y) == rhs {
                    out.push(CurvePoint::Affine { x, y });
                }
            }
        }
        out.push(CurvePoint::Infinity);
        out
    }
}

/// Largest field size for which [`EllipticOracle`] enumerates points.
pub const MAX_ORACLE_PRIME: i64 = 2003;

/// Genus-1 divisor theory on the rational points of an elliptic curve.
///
/// A divisor is principal iff it has degree 0 and its points sum to `O`
/// under the group law. The canonical divisor is 0.
#[derive(Debug, Clone)]
pub struct EllipticOracle {
    curve: EllipticCurve,
    points: Vec<CurvePoint>,
}

impl EllipticOracle {
    pub fn new(curve: EllipticCurve) -> Result<Self> {
        let p = curve.field.modulus();
        if p > MAX_ORACLE_PRIME {
            return Err(Error::Resource(format!(
                "point enumeration over F_{p} exceeds the limit p <= {MAX_ORACLE_PRIME}"
            )));
        }
        let points = curve.points();
        Ok(EllipticOracle { curve, points })
    }

    pub fn curve(&self) -> &EllipticCurve {
        &self.curve
    }

    /// Points in divisor index order (`O` last).
    pub fn curve_points(&self) -> &[CurvePoint] {
        &self.points
    }

    pub fn index_of(&self, p: &CurvePoint) -> Option<usize> {
        self.points.iter().position(|q| q == p)
    }

    /// Group-law sum of `Σ d(P) · P`.
    pub fn group_sum(&self, d: &Divisor) -> Result<CurvePoint> {
        d.ensure_len(self.points.len())?;
        let mut acc = CurvePoint::Infinity;
        for (p, &c) in self.points.iter().zip(d.coefficients()) {
            if c != 0 {
                acc = self.curve.add_unchecked(&acc, &self.curve.mul(p, c)?);
            }
        }
        Ok(acc)
    }

    pub fn is_principal(&self, d: &Divisor) -> Result<bool> {
        d.ensure_len(self.points.len())?;
        Ok(d.degree() == 0 && self.group_sum(d)? == CurvePoint::Infinity)
    }
}

impl RankOracle for EllipticOracle {
    fn describe(&self) -> String {
        let s = self.curve.spec();
        format!("elliptic(y^2=x^3+{}x+{} over F_{}, {} points)", s.a, s.b, s.p, self.points.len())
    }

    fn point_count(&self) -> usize {
        self.points.len()
    }

    fn genus(&self) -> i64 {
        1
    }

    fn canonical(&self) -> Divisor {
        Divisor::zero(self.points.len())
    }

    fn rank(&self, d: &Divisor) -> Result<i64> {
        d.ensure_len(self.points.len())?;
        Ok(match d.degree() {
            deg if deg < 0 => -1,
            0 => {
                if self.is_principal(d)? {
                    0
                } else {
                    -1
                }
            }
            deg => deg - 1,
        })
    }

    fn equivalent(&self, d1: &Divisor, d2: &Divisor) -> Result<bool> {
        self.is_principal(&d1.checked_sub(d2)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::divisor::Point;

    fn small() -> EllipticCurve {
        EllipticCurve::new(5, 1, 1).unwrap()
    }

    fn pt(x: i64, y: i64) -> CurvePoint {
        CurvePoint::Affine { x, y }
    }

    #[test]
    fn construction_guards() {
        assert!(EllipticCurve::new(3, 1, 1).is_err());
        assert!(EllipticCurve::new(9, 1, 1).is_err());
        // 4*0 + 27*0 = 0
        assert!(EllipticCurve::new(7, 0, 0).is_err());
        let c = EllipticCurve::parse_json(r#"{"p": 5, "a": 1, "b": 1}"#).unwrap();
        assert_eq!(c, small());
        assert!(EllipticCurve::parse_json(r#"{"p": 5}"#).is_err());
    }

    #[test]
    fn group_law_examples() {
        let c = small();
        let p = pt(0, 1);
        assert_eq!(c.add(&p, &CurvePoint::Infinity).unwrap(), p);
        assert_eq!(c.add(&p, &c.neg(&p)).unwrap(), CurvePoint::Infinity);
        assert_eq!(c.add(&p, &p).unwrap(), pt(4, 2));
        assert!(c.add(&pt(1, 1), &p).is_err());
    }

    #[test]
    fn point_enumeration() {
        let c = small();
        let pts = c.points();
        assert_eq!(pts.len(), 9);
        assert_eq!(pts[0], pt(0, 1));
        assert_eq!(*pts.last().unwrap(), CurvePoint::Infinity);
        assert!(pts.iter().all(|p| c.contains(p)));
        let n = pts.len() as f64;
        assert!((n - 6.0).abs() <= 2.0 * 5f64.sqrt());
    }

    #[test]
    fn principal_and_rank_examples() {
        let o = EllipticOracle::new(small()).unwrap();
        let n = o.point_count();
        let inf = Point(n - 1);
        let p = Point(0);
        let minus_p = Point(o.index_of(&small().neg(&o.curve_points()[0])).unwrap());

        assert!(o.is_principal(&Divisor::zero(n)).unwrap());

        let mut d = Divisor::zero(n);
        d = d.add_point(p).unwrap();
        let d = d.checked_sub(&Divisor::point(n, inf, 1).unwrap()).unwrap();
        assert!(!o.is_principal(&d).unwrap());

        let d = Divisor::point(n, p, 1)
            .unwrap()
            .add_point(minus_p)
            .unwrap()
            .checked_sub(&Divisor::point(n, inf, 2).unwrap())
            .unwrap();
        assert!(o.is_principal(&d).unwrap());

        assert_eq!(o.rank(&Divisor::point(n, p, 2).unwrap()).unwrap(), 1);
        assert_eq!(o.rank(&Divisor::zero(n)).unwrap(), 0);
        let d = Divisor::point(n, Point(0), 1)
            .unwrap()
            .checked_sub(&Divisor::point(n, Point(1), 1).unwrap())
            .unwrap();
        assert_eq!(o.rank(&d).unwrap(), -1);
        assert_eq!(o.canonical().degree(), 2 * o.genus() - 2);
    }
}
