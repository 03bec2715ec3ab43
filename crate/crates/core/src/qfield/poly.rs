//! Dense univariate polynomials over ℚ.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Coefficients in ascending degree order, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    c: Vec<BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(r: BigRational) -> Self {
        Poly::from_coeffs(vec![r])
    }

    pub fn monomial(r: BigRational, deg: usize) -> Self {
        let mut c = vec![BigRational::zero(); deg + 1];
        c[deg] = r;
        Poly::from_coeffs(c)
    }

    pub fn from_coeffs(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Poly::from_coeffs(c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn lead(&self) -> BigRational {
        self.c.last().cloned().unwrap_or_else(BigRational::zero)
    }

    /// Index of the lowest nonzero coefficient.
    pub fn low_order(&self) -> usize {
        self.c.iter().position(|x| !x.is_zero()).unwrap_or(0)
    }

    pub fn shift_down(&mut self, k: usize) {
        if k > 0 {
            self.c.drain(..k);
        }
    }

    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut c = vec![BigRational::zero(); k];
        c.extend(self.c.iter().cloned());
        Poly { c }
    }

    /// Substitute s ↦ s^m.
    pub fn stretch(&self, m: usize) -> Poly {
        if m == 1 || self.c.len() <= 1 {
            return self.clone();
        }
        let mut c = vec![BigRational::zero(); (self.c.len() - 1) * m + 1];
        for (i, x) in self.c.iter().enumerate() {
            c[i * m] = x.clone();
        }
        Poly { c }
    }

    /// Inverse of `stretch`; caller guarantees every nonzero index is divisible by g.
    pub fn compress(&self, g: usize) -> Poly {
        if g == 1 {
            return self.clone();
        }
        Poly::from_coeffs(self.c.iter().step_by(g).cloned().collect())
    }

    pub fn gcd_of_exponents(&self, mut g: u64) -> u64 {
        for (i, x) in self.c.iter().enumerate() {
            if !x.is_zero() {
                g = num_integer::gcd(g, i as u64);
            }
        }
        g
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let (a, b) = if self.c.len() >= o.c.len() { (self, o) } else { (o, self) };
        let mut c = a.c.clone();
        for (x, y) in c.iter_mut().zip(b.c.iter()) {
            *x += y;
        }
        Poly::from_coeffs(c)
    }

    pub fn neg(&self) -> Poly {
        Poly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let mut c = self.c.clone();
        if c.len() < o.c.len() {
            c.resize(o.c.len(), BigRational::zero());
        }
        for (x, y) in c.iter_mut().zip(o.c.iter()) {
            *x -= y;
        }
        Poly::from_coeffs(c)
    }

    pub fn scale(&self, r: &BigRational) -> Poly {
        if r.is_zero() {
            return Poly::zero();
        }
        Poly { c: self.c.iter().map(|x| x * r).collect() }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if o.c.len() == 1 {
            return self.scale(&o.c[0]);
        }
        if self.c.len() == 1 {
            return o.scale(&self.c[0]);
        }
        let mut c = vec![BigRational::zero(); self.c.len() + o.c.len() - 1];
        for (i, x) in self.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.c.iter().enumerate() {
                if !y.is_zero() {
                    c[i + j] += x * y;
                }
            }
        }
        Poly::from_coeffs(c)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        if self.c.len() < d.c.len() {
            return (Poly::zero(), self.clone());
        }
        let dl = d.lead();
        let dn = d.c.len() - 1;
        let mut r = self.c.clone();
        let mut q = vec![BigRational::zero(); r.len() - dn];
        for k in (0..q.len()).rev() {
            let t = &r[k + dn] / &dl;
            if t.is_zero() {
                continue;
            }
            for (j, y) in d.c.iter().enumerate() {
                if !y.is_zero() {
                    r[k + j] -= &t * y;
                }
            }
            q[k] = t;
        }
        r.truncate(dn);
        (Poly::from_coeffs(q), Poly::from_coeffs(r))
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let l = self.lead();
        if l.is_one() {
            return self.clone();
        }
        self.scale(&(BigRational::one() / l))
    }

    /// Monic greatest common divisor (zero only when both inputs are zero).
    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        if a.is_zero() {
            return b.monic();
        }
        if b.is_zero() {
            return a.monic();
        }
        if a.c.len() == 1 || b.c.len() == 1 {
            return Poly::one();
        }
        let mut x = primitive(a);
        let mut y = primitive(b);
        if x.c.len() < y.c.len() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_zero() {
            let (_, r) = x.divrem(&y);
            x = y;
            y = primitive(&r);
        }
        x.monic()
    }
}

/// Scale to integer coefficients with unit content (keeps Euclid coefficients small).
fn primitive(p: &Poly) -> Poly {
    if p.is_zero() {
        return Poly::zero();
    }
    let mut den = BigInt::one();
    for x in &p.c {
        den = num_integer::Integer::lcm(&den, x.denom());
    }
    let ints: Vec<BigInt> = p.c.iter().map(|x| (x * BigRational::from_integer(den.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for x in &ints {
        g = num_integer::Integer::gcd(&g, x);
    }
    if g.is_zero() {
        return Poly::zero();
    }
    Poly::from_coeffs(ints.into_iter().map(|x| BigRational::from_integer(x / &g)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_of_shared_factor() {
        let a = Poly::from_ints(&[-1, 0, 1]);
        let b = Poly::from_ints(&[-1, 1]).mul(&Poly::from_ints(&[2, 1]));
        assert_eq!(Poly::gcd(&a, &b), Poly::from_ints(&[-1, 1]));
    }

    #[test]
    fn divrem_reconstructs() {
        let a = Poly::from_ints(&[3, 0, 2, 5, 1]);
        let d = Poly::from_ints(&[1, 2, 1]);
        let (q, r) = a.divrem(&d);
        assert_eq!(q.mul(&d).add(&r), a);
        assert!(r.degree() < d.degree());
    }

    #[test]
    fn stretch_compress_roundtrip() {
        let a = Poly::from_ints(&[1, 4, 0, 2]);
        assert_eq!(a.stretch(3).compress(3), a);
    }
}
