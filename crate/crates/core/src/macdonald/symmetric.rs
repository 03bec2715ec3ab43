//! W-invariant Laurent polynomials, the monomial basis m_μ, and the Macdonald-polynomial oracle.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::MacContext;
use crate::diffop::ExpPoly;
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::qfield::{wt_from_ints, wt_geq, wt_neg, wt_sub, LambdaPoly, QScalar, Wt, Q};
use crate::rootdata::RootSystem;

/// A W-invariant Laurent polynomial in e^{⟨κ,x⟩}, with its m-basis expansion.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricLaurent {
    pub poly: ExpPoly,
    /// Coefficients on m_μ, keyed by dominant μ.
    pub m: BTreeMap<Wt, QScalar>,
}

impl SymmetricLaurent {
    pub fn new(rs: &RootSystem, poly: ExpPoly) -> Result<Self> {
        let m = m_basis(rs, &poly)?;
        Ok(SymmetricLaurent { poly, m })
    }

    pub fn to_json(&self) -> Value {
        let m: Vec<Value> = self
            .m
            .iter()
            .map(|(mu, c)| json!({"mu": mu.iter().map(|x| x.to_string()).collect::<Vec<_>>(), "coeff": c.to_string()}))
            .collect();
        json!({"m_basis": m, "monomials": self.poly.to_json()})
    }
}

/// a ≥ b in dominance order: a − b ∈ Q₊.
pub fn dominates(a: &[Q], b: &[Q]) -> bool {
    wt_geq(a, b)
}

/// m_μ = Σ_{ν∈Wμ} e^{⟨ν,x⟩}.
pub fn monomial_symmetric(rs: &RootSystem, mu: &[Q]) -> ExpPoly {
    LambdaPoly::from_terms(rs.orbit(mu).into_iter().map(|v| (v, QScalar::one())))
}

pub fn is_w_invariant(rs: &RootSystem, p: &ExpPoly) -> bool {
    p.terms().iter().all(|(e, c)| (0..rs.rank()).all(|i| &p.coeff(&rs.reflect(i, e)) == c))
}

/// Coefficients of p on the m-basis; fails when p is not W-invariant.
pub fn m_basis(rs: &RootSystem, p: &ExpPoly) -> Result<BTreeMap<Wt, QScalar>> {
    if !is_w_invariant(rs, p) {
        return Err(Error::invariant("w-invariance", "polynomial is not W-invariant"));
    }
    Ok(p.terms().iter().filter(|(e, _)| rs.is_dominant(e)).map(|(e, c)| (e.clone(), c.clone())).collect())
}

pub fn from_m_basis(rs: &RootSystem, m: &BTreeMap<Wt, QScalar>) -> ExpPoly {
    let mut p = LambdaPoly::zero();
    for (mu, c) in m {
        p.add_scaled(&monomial_symmetric(rs, mu), c);
    }
    p
}

/// Dominant weights μ ≤ λ, sorted by decreasing height (λ first).
pub fn dominant_below(rs: &RootSystem, lambda: &[Q]) -> Vec<Wt> {
    // Dominant weights have nonnegative simple-root coordinates, so λ − μ lies in a box.
    let bounds: Vec<i64> = lambda.iter().map(|x| x.floor().to_integer().max(0)).collect();
    let mut out = Vec::new();
    let mut cur = vec![0i64; rs.rank()];
    loop {
        let mu = wt_sub(lambda, &wt_from_ints(&cur));
        if rs.is_dominant(&mu) {
            out.push(mu);
        }
        let mut i = 0;
        loop {
            if i == cur.len() {
                out.sort_by_key(|m| std::cmp::Reverse(m.iter().sum::<Q>()));
                return out;
            }
            cur[i] += 1;
            if cur[i] <= bounds[i] {
                break;
            }
            cur[i] = 0;
            i += 1;
        }
    }
}

/// Δ_k = ∏_{α∈R} ∏_{i=0}^{k} (1 − Q^i e^{⟨α,x⟩}) with Q = q².
fn weight_function(ctx: &MacContext) -> ExpPoly {
    let rs = &ctx.rs;
    let (qq, _) = ctx.base();
    let mut d = LambdaPoly::one(rs.rank());
    for a in rs.positive_roots_wt() {
        for root in [a.clone(), wt_neg(&a)] {
            for i in 0..=ctx.k {
                let f = LambdaPoly::from_terms([(rs.zero(), QScalar::one()), (root.clone(), -qq.pow(i))]);
                d = d.mul(&f);
            }
        }
    }
    d
}

/// ⟨f, g⟩ = CT(f · ḡ · Δ_k)/|W| with ḡ(x) = g(−x).
pub fn macdonald_inner(ctx: &MacContext, f: &ExpPoly, g: &ExpPoly) -> Result<QScalar> {
    let delta = weight_function(ctx);
    let order = ctx.rs.weyl_group()?.len() as i64;
    Ok(&inner_with(&delta, f, g) / &QScalar::from_int(order))
}

fn inner_with(delta: &ExpPoly, f: &ExpPoly, g: &ExpPoly) -> QScalar {
    let mut acc = QScalar::zero();
    for (a, fa) in f.terms() {
        for (b, gb) in g.terms() {
            // e^{a} e^{−b} e^{c} has zero exponent when c = b − a.
            let c = delta.coeff(&wt_sub(b, a));
            if !c.is_zero() {
                acc = &acc + &(&(fa * gb) * &c);
            }
        }
    }
    acc
}

/// P_λ by Gram–Schmidt in dominance order, normalized so the m_λ coefficient is 1.
pub fn macdonald_oracle(ctx: &MacContext, lambda: &[Q]) -> Result<SymmetricLaurent> {
    let rs = &ctx.rs;
    if !rs.is_dominant(lambda) || !rs.is_integral(lambda) {
        return Err(Error::Invalid("the Macdonald oracle needs a dominant integral weight".into()));
    }
    let lower: Vec<Wt> = dominant_below(rs, lambda).into_iter().filter(|m| m.as_slice() != lambda).collect();
    let top = monomial_symmetric(rs, lambda);
    let mut poly = top.clone();
    if !lower.is_empty() {
        let delta = weight_function(ctx);
        let ms: Vec<ExpPoly> = lower.iter().map(|m| monomial_symmetric(rs, m)).collect();
        let n = ms.len();
        let mut g = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                g[(i, j)] = inner_with(&delta, &ms[j], &ms[i]);
            }
        }
        let inv = g.inverse().ok_or_else(|| Error::invariant("oracle-gram", "Gram matrix of the m-basis is singular"))?;
        let b: Vec<QScalar> = ms.iter().map(|m| inner_with(&delta, &top, m)).collect();
        for (j, m) in ms.iter().enumerate() {
            let mut c = QScalar::zero();
            for (i, bi) in b.iter().enumerate() {
                c = &c - &(&inv[(j, i)] * bi);
            }
            poly.add_scaled(m, &c);
        }
    }
    SymmetricLaurent::new(rs, poly)
}

/// Weyl character χ_λ = Σ_w (−1)^{l(w)} e^{w(λ+ρ)} / Σ_w (−1)^{l(w)} e^{wρ}.
pub fn weyl_character(rs: &RootSystem, lambda: &[Q]) -> Result<ExpPoly> {
    let alt = |mu: &Wt| -> Result<ExpPoly> {
        let mut p = LambdaPoly::zero();
        for w in rs.weyl_group()? {
            p.add_term(w.act(mu), QScalar::from_int(w.sign()));
        }
        Ok(p)
    };
    let num = alt(&crate::qfield::wt_add(lambda, rs.rho()))?;
    num.exact_div(&alt(rs.rho())?).ok_or_else(|| Error::Invalid("λ is not integral".into()))
}
