//! q-difference operators Σ_Λ A_Λ(x) T_Λ with truncated series coefficients.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::exact::ExpRational;
use super::series::{LxSeries, XSeries};
use crate::error::{Error, Result};
use crate::qfield::{wt_add, Form, Wt};

#[derive(Clone, Debug, PartialEq)]
pub struct DiffOp {
    pub rank: usize,
    /// Size of the matrix coefficients (1 for scalar operators).
    pub dim: usize,
    pub terms: BTreeMap<Wt, XSeries>,
}

impl DiffOp {
    pub fn zero(rank: usize, dim: usize) -> Self {
        DiffOp { rank, dim, terms: BTreeMap::new() }
    }

    /// Depth to which every coefficient is known; None for the zero operator.
    pub fn depth(&self) -> Option<usize> {
        self.terms.values().map(|s| s.depth).min()
    }

    pub fn shifts(&self) -> Vec<Wt> {
        self.terms.keys().cloned().collect()
    }

    pub fn add_term(&mut self, shift: Wt, a: XSeries) -> Result<()> {
        let v = match self.terms.remove(&shift) {
            Some(x) => x.add(&a)?,
            None => a,
        };
        if !v.is_zero() {
            self.terms.insert(shift, v);
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (s, a) in &o.terms {
            out.add_term(s.clone(), a.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (s, a) in &o.terms {
            out.add_term(s.clone(), a.neg())?;
        }
        Ok(out)
    }

    /// Apply to a function of (λ, x).
    pub fn apply(&self, form: &Form, f: &LxSeries) -> Result<LxSeries> {
        let mut out: Option<LxSeries> = None;
        for (s, a) in &self.terms {
            let term = a.act_on(&f.translate_lx(form, s));
            out = Some(match out {
                None => term,
                Some(acc) => acc.add(&term)?,
            });
        }
        out.ok_or_else(|| Error::Invalid("applying the zero operator".into()))
    }

    /// self ∘ o.
    pub fn compose(&self, o: &Self, form: &Form) -> Result<Self> {
        let mut out = DiffOp::zero(self.rank, self.dim);
        for (s1, a) in &self.terms {
            for (s2, b) in &o.terms {
                out.add_term(wt_add(s1, s2), a.mul(&b.translate(form, s1)))?;
            }
        }
        Ok(out)
    }

    pub fn commutator(&self, o: &Self, form: &Form) -> Result<Self> {
        self.compose(o, form)?.sub(&o.compose(self, form)?)
    }

    /// g⁻¹ ∘ self ∘ g for a multiplication operator g: A_Λ ↦ A_Λ·(T_Λ g)/g.
    pub fn conjugate(&self, g: &ExpRational, form: &Form) -> Result<Self> {
        let ginv = ExpRational::new(g.den.clone(), g.num.clone())?;
        let mut out = DiffOp::zero(self.rank, self.dim);
        for (s, a) in &self.terms {
            let ratio = g.translate(form, s).mul(&ginv).expand(self.rank, a.depth)?;
            let ratio = if self.dim == 1 { ratio } else { scalar_to_dim(&ratio, self.dim) };
            out.add_term(s.clone(), a.mul(&ratio))?;
        }
        Ok(out)
    }

    /// True when every coefficient vanishes through height `depth`.
    pub fn is_zero_to(&self, depth: usize) -> bool {
        self.terms.values().all(|a| a.truncate(depth).is_zero())
    }

    /// Equality of coefficient series through height `depth` (relative to each coefficient's lead).
    pub fn agrees_with(&self, o: &Self, depth: usize) -> Result<bool> {
        Ok(self.sub(o)?.is_zero_to(depth))
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(s, a)| json!({"shift": s.iter().map(|x| x.to_string()).collect::<Vec<_>>(), "coeff": a.to_json()}))
            .collect();
        json!({"rank": self.rank, "dim": self.dim, "depth": self.depth(), "terms": terms})
    }
}

fn scalar_to_dim(s: &XSeries, dim: usize) -> XSeries {
    let mut out = XSeries::zero(s.lead.clone(), s.depth, dim);
    for (mu, m) in &s.terms {
        out.add_term(mu.clone(), crate::linalg::Mat::eye(dim).scale(&m[(0, 0)]));
    }
    out
}
