//! Difference operators whose coefficients are exact rational functions of e^{⟨κ,x⟩}.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::op::DiffOp;
use super::series::XSeries;
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::qfield::{fmt_wt, wt_add, wt_sub, wt_to_ints, Form, LambdaPoly, QScalar, Wt, Q};

/// Laurent polynomial in the toral exponentials e^{⟨κ,x⟩}, κ a rational weight.
///
/// Shares its representation with [`LambdaPoly`]; the monomial keyed by κ stands for e^{⟨κ,x⟩}.
pub type ExpPoly = LambdaPoly;

/// Componentwise maximum of the exponents, required to differ pairwise by elements of Q.
fn top_exponent(p: &ExpPoly) -> Result<Wt> {
    let mut it = p.terms().keys();
    let first = it.next().ok_or_else(|| Error::Invalid("zero polynomial has no leading exponent".into()))?.clone();
    let mut top = first.clone();
    for e in it {
        if wt_to_ints(&wt_sub(e, &first)).is_none() {
            return Err(Error::Invalid(format!("exponents {} and {} lie in different Q-cosets", fmt_wt(e), fmt_wt(&first))));
        }
        top = top.iter().zip(e).map(|(a, b)| *a.max(b)).collect();
    }
    Ok(top)
}

/// Expansion of a Laurent polynomial as an exact x-series.
pub fn poly_series(p: &ExpPoly, rank: usize, depth: usize) -> Result<XSeries> {
    if p.is_zero() {
        return Ok(XSeries::zero(vec![Q::from_integer(0); rank], depth, 1));
    }
    let top = top_exponent(p)?;
    let mut s = XSeries::zero(top.clone(), depth, 1);
    for (e, c) in p.terms() {
        let mu = wt_to_ints(&wt_sub(&top, e)).expect("integral offset");
        s.add_term(mu, Mat::from_rows(vec![vec![c.clone()]]));
    }
    Ok(s)
}

/// num/den with num, den ∈ ℚ(q)[e^{±⟨κ,x⟩}].
#[derive(Clone, Debug, PartialEq)]
pub struct ExpRational {
    pub num: ExpPoly,
    pub den: ExpPoly,
}

impl ExpRational {
    pub fn new(num: ExpPoly, den: ExpPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Invalid("zero denominator".into()));
        }
        Ok(ExpRational { num, den }.reduce())
    }

    pub fn poly(p: ExpPoly, rank: usize) -> Self {
        ExpRational { num: p, den: LambdaPoly::one(rank) }
    }

    pub fn constant(rank: usize, c: QScalar) -> Self {
        Self::poly(LambdaPoly::constant(rank, c), rank)
    }

    fn reduce(self) -> Self {
        let rank = self.den.terms().keys().next().map(|e| e.len()).unwrap_or(0);
        if self.num.is_zero() {
            return ExpRational { num: LambdaPoly::zero(), den: LambdaPoly::one(rank) };
        }
        if let Some(q) = self.num.exact_div(&self.den) {
            return ExpRational { num: q, den: LambdaPoly::one(rank) };
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return ExpRational { num: self.num.add(&o.num), den: self.den.clone() }.reduce();
        }
        if let Some(f) = self.den.exact_div(&o.den) {
            return ExpRational { num: self.num.add(&o.num.mul(&f)), den: self.den.clone() }.reduce();
        }
        if let Some(f) = o.den.exact_div(&self.den) {
            return ExpRational { num: self.num.mul(&f).add(&o.num), den: o.den.clone() }.reduce();
        }
        ExpRational { num: self.num.mul(&o.den).add(&o.num.mul(&self.den)), den: self.den.mul(&o.den) }.reduce()
    }

    pub fn neg(&self) -> Self {
        ExpRational { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        // Cancel crosswise before multiplying.
        let (n1, d2) = match self.num.exact_div(&o.den) {
            Some(q) => (q, None),
            None => (self.num.clone(), Some(&o.den)),
        };
        let (n2, d1) = match o.num.exact_div(&self.den) {
            Some(q) => (q, None),
            None => (o.num.clone(), Some(&self.den)),
        };
        let rank = self.den.terms().keys().next().map(|e| e.len()).unwrap_or(0);
        let one = LambdaPoly::one(rank);
        let den = d1.unwrap_or(&one).mul(d2.unwrap_or(&one));
        ExpRational { num: n1.mul(&n2), den }.reduce()
    }

    /// T_Λ acting on a function of x: e^{⟨κ,x⟩} ↦ q^{2⟨κ,Λ⟩} e^{⟨κ,x⟩}.
    pub fn translate(&self, form: &Form, shift: &[Q]) -> Self {
        let two: Wt = shift.iter().map(|x| x * Q::from_integer(2)).collect();
        ExpRational { num: self.num.shift(form, &two), den: self.den.shift(form, &two) }
    }

    /// Power-series expansion in e^{−α_i}: the denominator must have a unique top exponent.
    pub fn expand(&self, rank: usize, depth: usize) -> Result<XSeries> {
        let n = poly_series(&self.num, rank, depth)?;
        let top = top_exponent(&self.den)?;
        if self.den.coeff(&top).is_zero() {
            return Err(Error::Invalid(format!("denominator has no unique leading term at {}", fmt_wt(&top))));
        }
        let d = poly_series(&self.den, rank, depth)?;
        Ok(n.mul(&d.inverse()?))
    }

    pub fn to_json(&self) -> Value {
        json!({"num": self.num.to_json(), "den": self.den.to_json()})
    }
}

/// Σ_Λ a_Λ(x) T_Λ with exact rational coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactOp {
    pub rank: usize,
    pub terms: BTreeMap<Wt, ExpRational>,
}

impl ExactOp {
    pub fn zero(rank: usize) -> Self {
        ExactOp { rank, terms: BTreeMap::new() }
    }

    pub fn add_term(&mut self, shift: Wt, a: ExpRational) {
        let v = match self.terms.remove(&shift) {
            Some(x) => x.add(&a),
            None => a,
        };
        if !v.is_zero() {
            self.terms.insert(shift, v);
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (s, a) in &o.terms {
            out.add_term(s.clone(), a.clone());
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = self.clone();
        for (s, a) in &o.terms {
            out.add_term(s.clone(), a.neg());
        }
        out
    }

    /// self ∘ o: (a T_Λ)(b T_M) = a·(T_Λ b) T_{Λ+M}.
    pub fn compose(&self, o: &Self, form: &Form) -> Self {
        let mut out = ExactOp::zero(self.rank);
        for (s1, a) in &self.terms {
            for (s2, b) in &o.terms {
                out.add_term(wt_add(s1, s2), a.mul(&b.translate(form, s1)));
            }
        }
        out
    }

    /// Σ_Λ A_Λ · T_Λ f for a Laurent polynomial f, reduced to lowest terms.
    pub fn apply_poly(&self, form: &Form, f: &ExpPoly) -> ExpRational {
        let g = ExpRational::poly(f.clone(), self.rank);
        let r = self.terms.iter().fold(ExpRational::poly(ExpPoly::zero(), self.rank), |acc, (s, a)| acc.add(&a.mul(&g.translate(form, s))));
        r.reduce()
    }

    pub fn commutator(&self, o: &Self, form: &Form) -> Self {
        self.compose(o, form).sub(&o.compose(self, form))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|a| a.is_zero())
    }

    /// g⁻¹ ∘ self ∘ g for a multiplication operator g.
    pub fn conjugate(&self, g: &ExpRational, form: &Form) -> Result<Self> {
        let ginv = ExpRational::new(g.den.clone(), g.num.clone())?;
        let mut out = ExactOp::zero(self.rank);
        for (s, a) in &self.terms {
            out.add_term(s.clone(), ginv.mul(a).mul(&g.translate(form, s)));
        }
        Ok(out)
    }

    /// Series expansion of every coefficient.
    pub fn to_series(&self, depth: usize) -> Result<DiffOp> {
        let mut op = DiffOp::zero(self.rank, 1);
        for (s, a) in &self.terms {
            op.add_term(s.clone(), a.expand(self.rank, depth)?)?;
        }
        Ok(op)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(s, a)| json!({"shift": s.iter().map(|x| x.to_string()).collect::<Vec<_>>(), "coeff": a.to_json()}))
            .collect();
        json!({"rank": self.rank, "terms": terms})
    }
}
