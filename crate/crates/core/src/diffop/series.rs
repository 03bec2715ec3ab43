//! Truncated series in the toral variables e^{−⟨α_i,x⟩}.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{Mat, Ring};
use crate::qfield::{fmt_wt, wt_add, wt_from_ints, wt_sub, wt_to_ints, Form, LambdaPoly, QScalar, Wt, Q};
use crate::rootdata::RootSystem;

/// All μ ∈ Q₊ (rank r) with height ≤ depth, ordered by height.
pub fn q_plus_upto(rank: usize, depth: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for h in 0..=depth as i64 {
        let mut cur = vec![0; rank];
        push_compositions(h, 0, &mut cur, &mut out);
    }
    out
}

fn push_compositions(rem: i64, i: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if i + 1 == cur.len() {
        cur[i] = rem;
        out.push(cur.clone());
        return;
    }
    for v in 0..=rem {
        cur[i] = v;
        push_compositions(rem - v, i + 1, cur, out);
    }
}

fn height(mu: &[i64]) -> usize {
    RootSystem::height(mu) as usize
}

/// Offset δ = to − from when it lies in Q₊.
fn offset(from: &[Q], to: &[Q]) -> Option<Vec<i64>> {
    let d = wt_to_ints(&wt_sub(to, from))?;
    d.iter().all(|&x| x >= 0).then_some(d)
}

/// Componentwise maximum of two leads, required to differ by an element of Q.
fn common_lead(a: &[Q], b: &[Q]) -> Result<Wt> {
    if wt_to_ints(&wt_sub(a, b)).is_none() {
        return Err(Error::Invalid(format!("series leads {} and {} lie in different Q-cosets", fmt_wt(a), fmt_wt(b))));
    }
    Ok(a.iter().zip(b).map(|(x, y)| *x.max(y)).collect())
}

/// e^{⟨lead,x⟩} Σ_{μ∈Q₊, ht μ ≤ depth} c_μ e^{−⟨μ,x⟩}, with square-matrix coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<T> {
    pub lead: Wt,
    pub depth: usize,
    pub dim: usize,
    pub terms: BTreeMap<Vec<i64>, Mat<T>>,
}

/// Coefficients in ℚ(q): the toral side of a difference operator.
pub type XSeries = Series<QScalar>;
/// e^{⟨λ,x⟩} times a series whose coefficients are q-polynomials in λ, such as Ψ.
pub type LxSeries = Series<LambdaPoly>;

impl<T: Ring> Series<T> {
    pub fn zero(lead: Wt, depth: usize, dim: usize) -> Self {
        Series { lead, depth, dim, terms: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.lead.len()
    }

    pub fn coeff(&self, mu: &[i64]) -> Mat<T> {
        self.terms.get(mu).cloned().unwrap_or_else(|| Mat::filled(self.dim, self.dim, T::ring_zero()))
    }

    pub fn add_term(&mut self, mu: Vec<i64>, c: Mat<T>) {
        if height(&mu) > self.depth || c.is_zero() {
            return;
        }
        match self.terms.get_mut(&mu) {
            Some(x) => {
                *x = x.add(&c);
                if x.is_zero() {
                    self.terms.remove(&mu);
                }
            }
            None => {
                self.terms.insert(mu, c);
            }
        }
    }

    /// Rewrite with a higher lead (lead' − lead ∈ Q₊); the depth grows accordingly.
    pub fn relead(&self, lead: &[Q]) -> Result<Self> {
        let d = offset(&self.lead, lead)
            .ok_or_else(|| Error::Invalid(format!("cannot raise lead {} to {}", fmt_wt(&self.lead), fmt_wt(lead))))?;
        let terms = self.terms.iter().map(|(mu, c)| (mu.iter().zip(&d).map(|(a, b)| a + b).collect(), c.clone())).collect();
        Ok(Series { lead: lead.to_vec(), depth: self.depth + height(&d), dim: self.dim, terms })
    }

    pub fn truncate(&self, depth: usize) -> Self {
        let depth = depth.min(self.depth);
        let terms = self.terms.iter().filter(|(mu, _)| height(mu) <= depth).map(|(a, b)| (a.clone(), b.clone())).collect();
        Series { lead: self.lead.clone(), depth, dim: self.dim, terms }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let lead = common_lead(&self.lead, &o.lead)?;
        let a = self.relead(&lead)?;
        let b = o.relead(&lead)?;
        let mut out = Series::zero(lead, a.depth.min(b.depth), self.dim);
        for (mu, c) in a.terms.into_iter().chain(b.terms) {
            out.add_term(mu, c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        Series { lead: self.lead.clone(), depth: self.depth, dim: self.dim, terms: self.terms.iter().map(|(k, v)| (k.clone(), v.neg())).collect() }
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.values().all(|m| m.is_zero())
    }

    pub fn scale_q(&self, c: &QScalar) -> Self {
        let mut out = Series::zero(self.lead.clone(), self.depth, self.dim);
        for (mu, m) in &self.terms {
            out.add_term(mu.clone(), m.map(|x| x.scale_q(c)));
        }
        out
    }

    /// Apply T_Λ: the coefficient of e^{⟨κ,x⟩} is multiplied by q^{2⟨κ,Λ⟩}.
    pub fn translate(&self, form: &Form, shift: &[Q]) -> Self {
        let mut out = Series::zero(self.lead.clone(), self.depth, self.dim);
        for (mu, m) in &self.terms {
            let kappa = wt_sub(&self.lead, &wt_from_ints(mu));
            let s = QScalar::q_pow(Q::from_integer(2) * form.pair(&kappa, shift));
            out.add_term(mu.clone(), m.map(|x| x.scale_q(&s)));
        }
        out
    }
}

impl XSeries {
    pub fn one(rank: usize, depth: usize, dim: usize) -> Self {
        let mut s = Series::zero(vec![Q::from_integer(0); rank], depth, dim);
        s.add_term(vec![0; rank], Mat::eye(dim));
        s
    }

    /// Product of two x-series; also used as left multiplication on λ-x series via `act_on`.
    pub fn mul(&self, o: &XSeries) -> XSeries {
        let depth = self.depth.min(o.depth);
        let mut out = Series::zero(wt_add(&self.lead, &o.lead), depth, self.dim);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let mu: Vec<i64> = a.iter().zip(b).map(|(p, q)| p + q).collect();
                if height(&mu) <= depth {
                    out.add_term(mu, x.mul(y));
                }
            }
        }
        out
    }

    /// Left multiplication of a λ-x series by this x-series.
    pub fn act_on(&self, f: &LxSeries) -> LxSeries {
        let depth = self.depth.min(f.depth);
        let mut out = Series::zero(wt_add(&self.lead, &f.lead), depth, f.dim);
        for (a, x) in &self.terms {
            let xl = x.map(|e| LambdaPoly::constant(self.rank(), e.clone()));
            for (b, y) in &f.terms {
                let mu: Vec<i64> = a.iter().zip(b).map(|(p, q)| p + q).collect();
                if height(&mu) <= depth {
                    out.add_term(mu, xl.mul(y));
                }
            }
        }
        out
    }

    /// Inverse of a series whose lowest coefficient is invertible.
    pub fn inverse(&self) -> Result<XSeries> {
        let r = self.rank();
        let zero = vec![0; r];
        let c0 = self.coeff(&zero);
        let inv0 = c0.inverse().ok_or_else(|| Error::invariant("series-inverse", "constant coefficient is singular"))?;
        let mut out: XSeries = Series::zero(self.lead.iter().map(|x| -x).collect(), self.depth, self.dim);
        let mut vals: BTreeMap<Vec<i64>, Mat<QScalar>> = BTreeMap::new();
        for mu in q_plus_upto(r, self.depth) {
            let v = if mu == zero {
                inv0.clone()
            } else {
                let mut acc = Mat::zeros(self.dim, self.dim);
                for (g, s) in &self.terms {
                    if g == &zero {
                        continue;
                    }
                    let rest: Vec<i64> = mu.iter().zip(g).map(|(a, b)| a - b).collect();
                    if let Some(rv) = vals.get(&rest) {
                        acc = acc.add(&s.mul(rv));
                    }
                }
                inv0.mul(&acc).neg()
            };
            if !v.is_zero() {
                vals.insert(mu.clone(), v.clone());
                out.add_term(mu, v);
            }
        }
        Ok(out)
    }

    pub fn to_json(&self) -> Value {
        let terms: BTreeMap<String, Value> = self
            .terms
            .iter()
            .map(|(mu, m)| {
                let rows: Vec<Vec<String>> = (0..m.rows).map(|i| m.row(i).iter().map(|x| x.to_string()).collect()).collect();
                (format!("{mu:?}"), if m.rows == 1 { json!(rows[0][0]) } else { json!(rows) })
            })
            .collect();
        json!({"lead": self.lead.iter().map(|x| x.to_string()).collect::<Vec<_>>(), "depth": self.depth, "terms": terms})
    }
}

impl LxSeries {
    /// Right multiplication by a λ-dependent matrix (or scalar when dim = 1).
    pub fn mul_right(&self, c: &Mat<LambdaPoly>) -> LxSeries {
        let mut out = Series::zero(self.lead.clone(), self.depth, self.dim);
        for (mu, m) in &self.terms {
            out.add_term(mu.clone(), m.mul(c));
        }
        out
    }

    /// The function (λ, x) ↦ f(λ + σ, x); the factor e^{⟨σ,x⟩} moves into the lead.
    pub fn shift_lambda(&self, form: &Form, sigma: &[Q]) -> LxSeries {
        let mut out = Series::zero(wt_add(&self.lead, sigma), self.depth, self.dim);
        for (mu, m) in &self.terms {
            out.add_term(mu.clone(), m.map(|x| x.shift(form, sigma)));
        }
        out
    }

    /// Apply T_Λ to a function of (λ, x): T_Λ e^{⟨λ+κ,x⟩} = q^{2⟨λ+κ,Λ⟩} e^{⟨λ+κ,x⟩}.
    pub fn translate_lx(&self, form: &Form, shift: &[Q]) -> LxSeries {
        let two: Wt = shift.iter().map(|x| x * Q::from_integer(2)).collect();
        let mut out = Series::zero(self.lead.clone(), self.depth, self.dim);
        for (mu, m) in &self.terms {
            let kappa = wt_sub(&self.lead, &wt_from_ints(mu));
            let s = QScalar::q_pow(Q::from_integer(2) * form.pair(&kappa, shift));
            out.add_term(mu.clone(), m.map(|x| x.mul_monomial(&two, &s)));
        }
        out
    }

    /// All λ-exponents occurring anywhere in the series.
    pub fn lambda_support(&self) -> Vec<Wt> {
        let mut s = std::collections::BTreeSet::new();
        for m in self.terms.values() {
            for e in m.entries() {
                s.extend(e.support());
            }
        }
        s.into_iter().collect()
    }

    /// The x-series multiplying q^{⟨η,λ⟩}.
    pub fn lambda_coeff(&self, eta: &[Q]) -> XSeries {
        let mut out = Series::zero(self.lead.clone(), self.depth, self.dim);
        for (mu, m) in &self.terms {
            out.add_term(mu.clone(), m.map(|e| e.coeff(eta)));
        }
        out
    }

    /// The function x ↦ f(κ, x), including the factor e^{⟨κ,x⟩}.
    pub fn evaluate(&self, form: &Form, kappa: &[Q]) -> XSeries {
        let mut out = Series::zero(wt_add(&self.lead, kappa), self.depth, self.dim);
        for (mu, m) in &self.terms {
            out.add_term(mu.clone(), m.map(|e| e.evaluate(form, kappa)));
        }
        out
    }
}
