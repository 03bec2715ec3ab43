//! Elements of ℚ(q^{1/L}).
//!
//! A value is stored as `s^shift · num(s) / den(s)` with `s = q^{1/l}`, where `num` and `den`
//! have nonzero constant terms, `den` is monic, the two are coprime, and `l` is minimal.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use super::Q;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QScalar {
    l: u32,
    shift: i64,
    num: Poly,
    den: Poly,
}

impl Default for QScalar {
    fn default() -> Self {
        QScalar::zero()
    }
}

impl QScalar {
    pub fn zero() -> Self {
        QScalar { l: 1, shift: 0, num: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        QScalar::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        QScalar::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_rational(r: BigRational) -> Self {
        if r.is_zero() {
            return QScalar::zero();
        }
        QScalar { l: 1, shift: 0, num: Poly::constant(r), den: Poly::one() }
    }

    /// q^e for a rational exponent e.
    pub fn q_pow(e: Q) -> Self {
        QScalar::mono(BigRational::one(), e)
    }

    /// c · q^e.
    pub fn mono(c: BigRational, e: Q) -> Self {
        if c.is_zero() {
            return QScalar::zero();
        }
        let l = *e.denom();
        assert!(l > 0);
        QScalar { l: l as u32, shift: *e.numer(), num: Poly::constant(c), den: Poly::one() }
    }

    /// Sum of c_e · q^e over the given terms.
    pub fn laurent(terms: &[(Q, i64)]) -> Self {
        let mut acc = QScalar::zero();
        for (e, c) in terms {
            acc = &acc + &QScalar::mono(BigRational::from_integer((*c).into()), *e);
        }
        acc
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.shift == 0 && self.num.is_one() && self.den.is_one()
    }

    /// True when the denominator is a monomial, i.e. the value is a Laurent polynomial in s.
    pub fn is_laurent(&self) -> bool {
        self.den.is_one()
    }

    /// True for nonzero c·q^e.
    pub fn is_monomial(&self) -> bool {
        self.den.is_one() && self.num.coeffs().len() == 1
    }

    /// Rational constant, if the value has no q-dependence.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.is_zero() {
            return Some(BigRational::zero());
        }
        if self.shift == 0 && self.den.is_one() && self.num.coeffs().len() == 1 {
            return Some(self.num.coeffs()[0].clone());
        }
        None
    }

    pub fn root_order(&self) -> u32 {
        self.l
    }

    fn exp_of(&self, i: usize) -> Q {
        Q::new(self.shift + i as i64, self.l as i64)
    }

    /// Numerator terms (exponent in q, coefficient), including the monomial shift.
    pub fn num_terms(&self) -> Vec<(Q, BigRational)> {
        self.num
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (self.exp_of(i), c.clone()))
            .collect()
    }

    /// Denominator terms (exponent in q, coefficient).
    pub fn den_terms(&self) -> Vec<(Q, BigRational)> {
        self.den
            .coeffs()
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (Q::new(i as i64, self.l as i64), c.clone()))
            .collect()
    }

    fn lifted(&self, l: u32) -> (i64, Poly, Poly) {
        let m = (l / self.l) as usize;
        (self.shift * m as i64, self.num.stretch(m), self.den.stretch(m))
    }

    fn build(l: u32, shift: i64, num: Poly, den: Poly, reduce: bool) -> Self {
        if num.is_zero() {
            return QScalar::zero();
        }
        let (mut num, mut den) = (num, den);
        let mut shift = shift;
        let a = num.low_order();
        num.shift_down(a);
        shift += a as i64;
        let b = den.low_order();
        den.shift_down(b);
        shift -= b as i64;
        if reduce && num.degree() > 0 && den.degree() > 0 {
            let g = Poly::gcd(&num, &den);
            if g.degree() > 0 {
                num = num.divrem(&g).0;
                den = den.divrem(&g).0;
            }
        }
        let lc = den.lead();
        if !lc.is_one() {
            let inv = BigRational::one() / lc;
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        let mut g = num_integer::gcd(l as u64, shift.unsigned_abs());
        if g > 1 {
            g = num.gcd_of_exponents(g);
            g = den.gcd_of_exponents(g);
        }
        if g > 1 {
            let gu = g as usize;
            return QScalar { l: l / g as u32, shift: shift / g as i64, num: num.compress(gu), den: den.compress(gu) };
        }
        QScalar { l, shift, num, den }
    }

    pub fn neg(&self) -> Self {
        QScalar { l: self.l, shift: self.shift, num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add_ref(&self, o: &QScalar) -> QScalar {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let l = lcm32(self.l, o.l);
        let (sa, na, da) = self.lifted(l);
        let (sb, nb, db) = o.lifted(l);
        let m = sa.min(sb);
        let na = na.shift_up((sa - m) as usize);
        let nb = nb.shift_up((sb - m) as usize);
        if da == db {
            let reduce = da.degree() > 0;
            return QScalar::build(l, m, na.add(&nb), da, reduce);
        }
        let num = na.mul(&db).add(&nb.mul(&da));
        QScalar::build(l, m, num, da.mul(&db), true)
    }

    pub fn sub_ref(&self, o: &QScalar) -> QScalar {
        self.add_ref(&o.neg())
    }

    pub fn mul_ref(&self, o: &QScalar) -> QScalar {
        if self.is_zero() || o.is_zero() {
            return QScalar::zero();
        }
        let l = lcm32(self.l, o.l);
        let (sa, na, da) = self.lifted(l);
        let (sb, nb, db) = o.lifted(l);
        if da.is_one() && db.is_one() {
            return QScalar::build(l, sa + sb, na.mul(&nb), Poly::one(), false);
        }
        let (na, db) = cancel(&na, &db);
        let (nb, da) = cancel(&nb, &da);
        QScalar::build(l, sa + sb, na.mul(&nb), da.mul(&db), false)
    }

    pub fn inv(&self) -> QScalar {
        assert!(!self.is_zero(), "inverse of zero QScalar");
        QScalar::build(self.l, -self.shift, self.den.clone(), self.num.clone(), false)
    }

    pub fn div_ref(&self, o: &QScalar) -> QScalar {
        self.mul_ref(&o.inv())
    }

    pub fn pow(&self, n: i64) -> QScalar {
        if n < 0 {
            return self.inv().pow(-n);
        }
        let mut base = self.clone();
        let mut acc = QScalar::one();
        let mut n = n as u64;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Substitute q ↦ q^m for a positive integer m.
    pub fn subs_q_power(&self, m: i64) -> QScalar {
        assert!(m != 0);
        if m < 0 {
            return self.subs_q_power(-m).bar();
        }
        QScalar::build(self.l, self.shift * m, self.num.stretch(m as usize), self.den.stretch(m as usize), false)
    }

    /// Substitute q ↦ q^{-1}.
    pub fn bar(&self) -> QScalar {
        let flip = |p: &Poly| -> (usize, Poly) {
            let d = p.degree();
            let mut c = p.coeffs().to_vec();
            c.reverse();
            (d, Poly::from_coeffs(c))
        };
        let (dn, n) = flip(&self.num);
        let (dd, d) = flip(&self.den);
        QScalar::build(self.l, -self.shift - dn as i64 + dd as i64, n, d, false)
    }

    /// Evaluate at q = x for a rational x (None at a pole or when a fractional power is needed).
    pub fn eval_rational(&self, x: &BigRational) -> Option<BigRational> {
        if self.l != 1 {
            return None;
        }
        let ev = |p: &Poly| {
            let mut acc = BigRational::zero();
            for c in p.coeffs().iter().rev() {
                acc = acc * x + c;
            }
            acc
        };
        let d = ev(&self.den);
        if d.is_zero() || x.is_zero() {
            return None;
        }
        let mut v = ev(&self.num) / d;
        let mut pw = BigRational::one();
        for _ in 0..self.shift.unsigned_abs() {
            pw *= x;
        }
        if self.shift < 0 {
            v /= pw;
        } else {
            v *= pw;
        }
        Some(v)
    }

    /// Balanced quantum integer [n]_{q^d} = (q^{dn} − q^{−dn})/(q^d − q^{−d}).
    pub fn q_integer(n: i64, d: i64) -> QScalar {
        let sign = n.signum();
        let terms: Vec<(Q, i64)> = (0..n.abs()).map(|j| (Q::from_integer(d * (n.abs() - 1 - 2 * j)), sign)).collect();
        QScalar::laurent(&terms)
    }

    /// [n]_{q^d}! for n ≥ 0.
    pub fn q_factorial(n: i64, d: i64) -> QScalar {
        let mut acc = QScalar::one();
        for j in 1..=n {
            acc = &acc * &QScalar::q_integer(j, d);
        }
        acc
    }

    /// Gaussian binomial [n choose k]_{q^d}, extended to all integers n through the falling product.
    pub fn q_binomial(n: i64, k: i64, d: i64) -> QScalar {
        if k < 0 {
            return QScalar::zero();
        }
        let mut num = QScalar::one();
        for j in 0..k {
            num = &num * &QScalar::q_integer(n - j, d);
        }
        num.div_ref(&QScalar::q_factorial(k, d))
    }

    fn fmt_laurent(terms: &[(Q, BigRational)], f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in terms.iter().rev() {
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let unit = a.is_one();
            if e.is_zero() {
                write!(f, "{}", a)?;
                continue;
            }
            if !unit {
                write!(f, "{}*", a)?;
            }
            if e.is_one() {
                write!(f, "q")?;
            } else if e.is_integer() {
                write!(f, "q^{}", e)?;
            } else {
                write!(f, "q^({})", e)?;
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

fn cancel(n: &Poly, d: &Poly) -> (Poly, Poly) {
    if n.degree() == 0 || d.degree() == 0 {
        return (n.clone(), d.clone());
    }
    let g = Poly::gcd(n, d);
    if g.degree() == 0 {
        return (n.clone(), d.clone());
    }
    (n.divrem(&g).0, d.divrem(&g).0)
}

fn lcm32(a: u32, b: u32) -> u32 {
    if a == b {
        a
    } else {
        a.lcm(&b)
    }
}

impl fmt::Display for QScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return QScalar::fmt_laurent(&self.num_terms(), f);
        }
        write!(f, "(")?;
        QScalar::fmt_laurent(&self.num_terms(), f)?;
        write!(f, ")/(")?;
        QScalar::fmt_laurent(&self.den_terms(), f)?;
        write!(f, ")")
    }
}

impl QScalar {
    /// Canonical strings for the numerator and denominator (as Laurent polynomials in q).
    pub fn num_den_strings(&self) -> (String, String) {
        struct L<'a>(&'a [(Q, BigRational)]);
        impl fmt::Display for L<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                QScalar::fmt_laurent(self.0, f)
            }
        }
        (L(&self.num_terms()).to_string(), L(&self.den_terms()).to_string())
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $f:ident) => {
        impl std::ops::$tr<&QScalar> for &QScalar {
            type Output = QScalar;
            fn $m(self, o: &QScalar) -> QScalar {
                self.$f(o)
            }
        }
        impl std::ops::$tr<QScalar> for QScalar {
            type Output = QScalar;
            fn $m(self, o: QScalar) -> QScalar {
                self.$f(&o)
            }
        }
    };
}
binop!(Add, add, add_ref);
binop!(Sub, sub, sub_ref);
binop!(Mul, mul, mul_ref);
binop!(Div, div, div_ref);

impl std::ops::Neg for &QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar::neg(self)
    }
}

impl std::ops::Neg for QScalar {
    type Output = QScalar;
    fn neg(self) -> QScalar {
        QScalar::neg(&self)
    }
}

impl From<i64> for QScalar {
    fn from(n: i64) -> Self {
        QScalar::from_int(n)
    }
}

impl From<BigInt> for QScalar {
    fn from(n: BigInt) -> Self {
        QScalar::from_rational(BigRational::from_integer(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(e: i64) -> QScalar {
        QScalar::q_pow(Q::from_integer(e))
    }

    #[test]
    fn q_integer_values() {
        assert!(QScalar::q_integer(1, 1).is_one());
        assert_eq!(QScalar::q_integer(3, 1), &(&q(2) + &QScalar::one()) + &q(-2));
        assert_eq!(QScalar::q_integer(-2, 1), -(&q(1) + &q(-1)));
    }

    #[test]
    fn q_binomial_values() {
        assert_eq!(QScalar::q_binomial(2, 1, 1), &q(1) + &q(-1));
        assert!(QScalar::q_binomial(5, 0, 1).is_one());
        let expect = QScalar::laurent(&[(4.into(), 1), (2.into(), 1), (0.into(), 2), ((-2).into(), 1), ((-4).into(), 1)]);
        assert_eq!(QScalar::q_binomial(4, 2, 1), expect);
    }

    #[test]
    fn canonical_after_cancellation() {
        let a = (&q(2) - &QScalar::one()) / (&q(1) - &QScalar::one());
        assert_eq!(a, &q(1) + &QScalar::one());
        assert!(a.is_laurent());
    }

    #[test]
    fn root_order_reduces() {
        let a = QScalar::q_pow(Q::new(1, 3));
        let b = &a * &a;
        let c = &b * &a;
        assert_eq!(c, q(1));
        assert_eq!(c.root_order(), 1);
    }

    #[test]
    fn bar_inverts_q() {
        let a = (&q(3) + &QScalar::from_int(2)) / (&q(1) - &q(-2));
        let b = a.bar();
        assert_eq!(b.bar(), a);
        assert_eq!(b.subs_q_power(-1), a);
    }
}
