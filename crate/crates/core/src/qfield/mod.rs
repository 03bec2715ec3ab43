//! Exact scalar arithmetic: the field ℚ(q^{1/L}) and q-polynomials in a formal weight λ.

mod lambda;
mod poly;
mod scalar;

pub use lambda::{Form, LambdaPoly};
pub use poly::Poly;
pub use scalar::QScalar;

/// Small rationals used for weight coordinates and q-exponents.
pub type Q = num_rational::Ratio<i64>;

/// A weight written in the simple-root basis, with rational coordinates.
pub type Wt = Vec<Q>;

pub fn wt_from_ints(v: &[i64]) -> Wt {
    v.iter().map(|&x| Q::from_integer(x)).collect()
}

pub fn wt_add(a: &[Q], b: &[Q]) -> Wt {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn wt_sub(a: &[Q], b: &[Q]) -> Wt {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn wt_scale(a: &[Q], c: Q) -> Wt {
    a.iter().map(|x| x * c).collect()
}

pub fn wt_neg(a: &[Q]) -> Wt {
    a.iter().map(|x| -x).collect()
}

pub fn wt_is_zero(a: &[Q]) -> bool {
    a.iter().all(|x| *x == Q::from_integer(0))
}

/// Integer coordinates, if every coordinate is integral.
pub fn wt_to_ints(a: &[Q]) -> Option<Vec<i64>> {
    a.iter().map(|x| if x.is_integer() { Some(x.to_integer()) } else { None }).collect()
}

/// True when `a - b` lies in Q₊ (nonnegative integer coordinates).
pub fn wt_geq(a: &[Q], b: &[Q]) -> bool {
    a.iter().zip(b).all(|(x, y)| {
        let d = x - y;
        d.is_integer() && d >= Q::from_integer(0)
    })
}

pub fn wt_height(a: &[Q]) -> Q {
    a.iter().sum()
}

pub fn fmt_wt(a: &[Q]) -> String {
    let parts: Vec<String> = a.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(","))
}
