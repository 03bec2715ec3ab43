//! q-polynomials Σ_η a_η q^{⟨η,λ⟩} in a formal weight λ.
//!
//! Exponents η are stored in the simple-root basis with the raw pairing convention:
//! the monomial with key η evaluates to q^{⟨η,κ⟩} at λ = κ.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use super::{fmt_wt, wt_add, wt_sub, QScalar, Wt, Q};

/// Symmetric bilinear form on weights, given by its Gram matrix on simple roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    b: Vec<Vec<Q>>,
}

impl Form {
    pub fn new(b: Vec<Vec<Q>>) -> Self {
        Form { b }
    }

    pub fn rank(&self) -> usize {
        self.b.len()
    }

    pub fn gram(&self) -> &[Vec<Q>] {
        &self.b
    }

    pub fn pair(&self, x: &[Q], y: &[Q]) -> Q {
        let mut acc = Q::from_integer(0);
        for (i, xi) in x.iter().enumerate() {
            if *xi.numer() == 0 {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                acc += xi * self.b[i][j] * yj;
            }
        }
        acc
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LambdaPoly {
    terms: BTreeMap<Wt, QScalar>,
}

impl LambdaPoly {
    pub fn zero() -> Self {
        LambdaPoly { terms: BTreeMap::new() }
    }

    pub fn one(rank: usize) -> Self {
        LambdaPoly::constant(rank, QScalar::one())
    }

    pub fn constant(rank: usize, c: QScalar) -> Self {
        LambdaPoly::monomial(vec![Q::from_integer(0); rank], c)
    }

    pub fn monomial(eta: Wt, c: QScalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(eta, c);
        }
        LambdaPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Wt, QScalar)>>(it: I) -> Self {
        let mut p = LambdaPoly::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn terms(&self) -> &BTreeMap<Wt, QScalar> {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, eta: &[Q]) -> QScalar {
        self.terms.get(eta).cloned().unwrap_or_default()
    }

    /// The coefficient of the exponent-zero monomial.
    pub fn constant_term(&self) -> QScalar {
        self.terms.iter().find(|(e, _)| e.iter().all(|x| *x.numer() == 0)).map(|(_, c)| c.clone()).unwrap_or_default()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|x| *x.numer() == 0))
    }

    pub fn support(&self) -> Vec<Wt> {
        self.terms.keys().cloned().collect()
    }

    pub fn add_term(&mut self, eta: Wt, c: QScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&eta) {
            Some(x) => {
                let s = &*x + &c;
                if s.is_zero() {
                    self.terms.remove(&eta);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(eta, c);
            }
        }
    }

    pub fn add_assign(&mut self, o: &LambdaPoly) {
        for (e, c) in &o.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    /// self += o · c.
    pub fn add_scaled(&mut self, o: &LambdaPoly, c: &QScalar) {
        if c.is_zero() {
            return;
        }
        for (e, x) in &o.terms {
            self.add_term(e.clone(), x * c);
        }
    }

    pub fn add(&self, o: &LambdaPoly) -> LambdaPoly {
        let mut r = self.clone();
        r.add_assign(o);
        r
    }

    pub fn sub(&self, o: &LambdaPoly) -> LambdaPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), -c);
        }
        r
    }

    pub fn neg(&self) -> LambdaPoly {
        LambdaPoly { terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn scale(&self, c: &QScalar) -> LambdaPoly {
        if c.is_zero() {
            return LambdaPoly::zero();
        }
        LambdaPoly { terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    /// Multiply by the monomial c·q^{⟨η,λ⟩}.
    pub fn mul_monomial(&self, eta: &[Q], c: &QScalar) -> LambdaPoly {
        if c.is_zero() {
            return LambdaPoly::zero();
        }
        LambdaPoly { terms: self.terms.iter().map(|(e, x)| (wt_add(e, eta), x * c)).collect() }
    }

    pub fn mul(&self, o: &LambdaPoly) -> LambdaPoly {
        let mut r = LambdaPoly::zero();
        for (e, c) in &self.terms {
            for (f, d) in &o.terms {
                r.add_term(wt_add(e, f), c * d);
            }
        }
        r
    }

    pub fn pow(&self, n: u32, rank: usize) -> LambdaPoly {
        let mut acc = LambdaPoly::one(rank);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitute λ = κ.
    pub fn evaluate(&self, form: &Form, kappa: &[Q]) -> QScalar {
        let mut acc = QScalar::zero();
        for (e, c) in &self.terms {
            acc = &acc + &(c * &QScalar::q_pow(form.pair(e, kappa)));
        }
        acc
    }

    /// Substitute λ ↦ λ + σ.
    pub fn shift(&self, form: &Form, sigma: &[Q]) -> LambdaPoly {
        LambdaPoly {
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * &QScalar::q_pow(form.pair(e, sigma)))).collect(),
        }
    }

    /// Substitute λ ↦ −λ.
    pub fn reflect(&self) -> LambdaPoly {
        LambdaPoly::from_terms(self.terms.iter().map(|(e, c)| (e.iter().map(|x| -x).collect(), c.clone())))
    }

    /// Apply a linear map to the exponents (λ ↦ Aᵀλ for the transpose action).
    pub fn map_exponents<F: Fn(&Wt) -> Wt>(&self, f: F) -> LambdaPoly {
        LambdaPoly::from_terms(self.terms.iter().map(|(e, c)| (f(e), c.clone())))
    }

    pub fn map_coeffs<F: Fn(&QScalar) -> QScalar>(&self, f: F) -> LambdaPoly {
        LambdaPoly::from_terms(self.terms.iter().map(|(e, c)| (e.clone(), f(c))))
    }

    /// Restrict to the affine hyperplane ⟨α,λ⟩ = c.
    ///
    /// Exponents are projected onto α^⊥ and the α-component is absorbed as q^{c⟨η,α⟩/⟨α,α⟩},
    /// so two q-polynomials agree on the hyperplane iff their restrictions are equal.
    pub fn restrict(&self, form: &Form, alpha: &[Q], c: Q) -> LambdaPoly {
        let aa = form.pair(alpha, alpha);
        let mut r = LambdaPoly::zero();
        for (e, x) in &self.terms {
            let t = form.pair(e, alpha) / aa;
            let proj: Wt = e.iter().zip(alpha).map(|(ei, ai)| ei - t * ai).collect();
            r.add_term(proj, x * &QScalar::q_pow(t * c));
        }
        r
    }

    /// Exact quotient self / d in the Laurent ring, or None when d does not divide self.
    pub fn exact_div(&self, d: &LambdaPoly) -> Option<LambdaPoly> {
        assert!(!d.is_zero(), "division by zero q-polynomial");
        if self.is_zero() {
            return Some(LambdaPoly::zero());
        }
        let rank = d.terms.keys().next().map(|e| e.len()).unwrap_or(0);
        let mins = |p: &LambdaPoly| -> Wt {
            let mut m: Option<Wt> = None;
            for e in p.terms.keys() {
                m = Some(match m {
                    None => e.clone(),
                    Some(m) => m.iter().zip(e).map(|(a, b)| *a.min(b)).collect(),
                });
            }
            m.unwrap_or_else(|| vec![Q::from_integer(0); rank])
        };
        let floor = wt_sub(&mins(self), &mins(d));
        let (dl, dc) = d.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let dcinv = dc.inv();
        let mut r = self.clone();
        let mut quo = LambdaPoly::zero();
        while let Some((rl, rc)) = r.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let t = wt_sub(&rl, &dl);
            if t.iter().zip(&floor).any(|(a, b)| a < b) {
                return None;
            }
            let c = &rc * &dcinv;
            for (e, x) in &d.terms {
                r.add_term(wt_add(e, &t), -(x * &c));
            }
            quo.add_term(t, c);
        }
        Some(quo)
    }

    /// True if self = u·q^{⟨η,λ⟩}·o for a nonzero QScalar u and some exponent η.
    pub fn equal_up_to_unit_monomial(&self, o: &LambdaPoly) -> bool {
        if self.is_zero() || o.is_zero() {
            return self.is_zero() && o.is_zero();
        }
        if self.len() != o.len() {
            return false;
        }
        let (e1, c1) = self.terms.iter().next().unwrap();
        let (e2, c2) = o.terms.iter().next().unwrap();
        let shift = wt_sub(e1, e2);
        let u = c1 / c2;
        self == &o.mul_monomial(&shift, &u)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(e, c)| {
                    let (n, d) = c.num_den_strings();
                    json!({
                        "exponent": e.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                        "coeff": {"num": n, "den": d},
                    })
                })
                .collect(),
        )
    }
}

impl fmt::Display for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let zero = e.iter().all(|x| *x.numer() == 0);
            if zero {
                write!(f, "({})", c)?;
            } else {
                write!(f, "({})·q^{{{}·λ}}", c, fmt_wt(e))?;
            }
        }
        Ok(())
    }
}

impl LambdaPoly {
    /// Canonical rendering as a sum of `q^{<rational>}·q^{<vector>·λ}` monomials (Laurent coefficients only).
    pub fn canonical_text(&self) -> String {
        let mut parts = Vec::new();
        for (e, c) in &self.terms {
            if c.is_laurent() {
                for (qe, r) in c.num_terms() {
                    parts.push(format!("{}·q^{{{}}}·q^{{{}·λ}}", r, qe, fmt_wt(e)));
                }
            } else {
                parts.push(format!("({})·q^{{{}·λ}}", c, fmt_wt(e)));
            }
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}
