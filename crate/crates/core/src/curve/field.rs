use crate::error::{Error, Result};

/// Arithmetic in F_p for a small prime `p`; elements are kept in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: i64,
}

impl PrimeField {
    pub fn new(p: i64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::invalid(format!("{p} is not prime")));
        }
        // Products of two reduced elements must fit in i64.
        if p > 3_037_000_499 {
            return Err(Error::invalid(format!("modulus {p} too large")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> i64 {
        self.p
    }

    pub fn reduce(&self, x: i64) -> i64 {
        x.rem_euclid(self.p)
    }

    pub fn add(&self, a: i64, b: i64) -> i64 {
        self.reduce(a + b)
    }

    pub fn sub(&self, a: i64, b: i64) -> i64 {
        self.reduce(a - b)
    }

    pub fn neg(&self, a: i64) -> i64 {
        self.reduce(-a)
    }

    pub fn mul(&self, a: i64, b: i64) -> i64 {
        self.reduce(self.reduce(a) * self.reduce(b))
    }

    /// Inverse by the extended Euclidean algorithm; `None` for zero.
    pub fn inv(&self, a: i64) -> Option<i64> {
        let a = self.reduce(a);
        if a == 0 {
            return None;
        }
        let (mut r0, mut r1) = (self.p, a);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        debug_assert_eq!(r0, 1);
        Some(self.reduce(t0))
    }
}

fn is_prime(p: i64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverses() {
        let f = PrimeField::new(5).unwrap();
        assert_eq!(f.inv(2), Some(3));
        assert_eq!(f.inv(0), None);
        let f = PrimeField::new(101).unwrap();
        for a in 1..101 {
            assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        }
        assert_eq!(f.reduce(-1), 100);
    }

    #[test]
    fn rejects_composites() {
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(1).is_err());
        assert!(PrimeField::new(7).is_ok());
    }
}
