//! Symmetry of φ_k = δ_k·ψ_k under the exchange of λ and x.
//!
//! The exchange sends q^{⟨η,λ⟩} to e^{⟨η,x⟩/2}; equivalently, φ_k(κ, x = κ'·log q²) is symmetric
//! in (κ, κ'). This matches the translation convention T_Λ: x ↦ x + Λ·log q².

use std::collections::BTreeMap;

use serde::Serialize;

use super::MacContext;
use crate::diffop::{ExpRational, LxSeries};
use crate::error::{Error, Result};
use crate::qfield::{fmt_wt, wt_from_ints, wt_scale, wt_sub, QScalar, Wt, Q};
use crate::rootdata::RootSystem;

/// Terms c·q^{⟨η,λ⟩}·e^{⟨κ,x⟩} keyed by (η, κ); the factor e^{⟨λ,x⟩} is implicit.
pub type BiPoly = BTreeMap<(Wt, Wt), QScalar>;

#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub mode: String,
    pub n: usize,
    pub k: i64,
    pub checked: usize,
    pub passed: bool,
    pub failure: Option<String>,
}

/// φ_k = δ_k·ψ_k as a λ-x series.
pub fn phi_series(ctx: &MacContext, psi_k: &LxSeries) -> Result<LxSeries> {
    let r = ctx.rs.rank();
    let delta = ExpRational::poly(ctx.delta_k(), r).expand(r, psi_k.depth)?;
    Ok(delta.act_on(psi_k))
}

/// Height of the x-support of φ_k e^{−⟨λ,x⟩} below its lead kρ: ht(2kρ).
fn x_span(ctx: &MacContext) -> usize {
    let two_k_rho = wt_scale(ctx.rs.rho(), Q::from_integer(2 * ctx.k));
    two_k_rho.iter().sum::<Q>().to_integer() as usize
}

fn check_terminates(ctx: &MacContext, phi: &LxSeries) -> Result<usize> {
    let span = x_span(ctx);
    if phi.depth <= span {
        return Err(Error::Depth { needed: span + 1, have: phi.depth });
    }
    if let Some(mu) = phi.terms.keys().find(|mu| RootSystem::height(mu) as usize > span) {
        return Err(Error::invariant("phi-polynomial", format!("φ has a nonzero x-term at {mu:?} beyond height {span}")));
    }
    Ok(span)
}

/// φ_k e^{−⟨λ,x⟩} as a finite sum, after checking that the x-series terminates.
pub fn phi_bipoly(ctx: &MacContext, phi: &LxSeries) -> Result<BiPoly> {
    check_terminates(ctx, phi)?;
    let mut out = BiPoly::new();
    for (mu, m) in &phi.terms {
        let kappa = wt_sub(&phi.lead, &wt_from_ints(mu));
        for (eta, c) in m[(0, 0)].terms() {
            out.insert((eta.clone(), kappa.clone()), c.clone());
        }
    }
    Ok(out)
}

/// The exchange (η, κ) ↦ (2κ, η/2) is a fixed point of the closed form.
pub fn duality_symbolic(ctx: &MacContext, phi: &LxSeries) -> Result<DualityReport> {
    let bi = phi_bipoly(ctx, phi)?;
    let swapped: BiPoly =
        bi.iter().map(|((eta, kappa), c)| ((wt_scale(kappa, Q::from_integer(2)), wt_scale(eta, Q::new(1, 2))), c.clone())).collect();
    let failure = bi.iter().find(|(key, c)| swapped.get(*key) != Some(*c)).map(|((eta, kappa), c)| {
        format!("term {c}·q^<{},λ>·e^<{},x> has no partner", fmt_wt(eta), fmt_wt(kappa))
    });
    let failure = failure.or_else(|| (swapped.len() != bi.len()).then(|| "term counts differ".to_string()));
    Ok(DualityReport { mode: "symbolic".into(), n: ctx.n, k: ctx.k, checked: bi.len(), passed: failure.is_none(), failure })
}

/// φ_k(κ, x = κ'·log q²) as an exact q-number.
pub fn phi_value(ctx: &MacContext, phi: &LxSeries, kappa: &[Q], kappa2: &[Q]) -> Result<QScalar> {
    let form = ctx.rs.form();
    let s = phi.evaluate(form, kappa);
    let span = x_span(ctx);
    if s.depth <= span {
        return Err(Error::Depth { needed: span + 1, have: s.depth });
    }
    let mut acc = QScalar::zero();
    for (mu, m) in &s.terms {
        if RootSystem::height(mu) as usize > span {
            return Err(Error::invariant("phi-polynomial", format!("φ(κ,·) has a nonzero x-term at {mu:?}")));
        }
        let e = wt_sub(&s.lead, &wt_from_ints(mu));
        acc = &acc + &(&m[(0, 0)] * &QScalar::q_pow(Q::from_integer(2) * form.pair(&e, kappa2)));
    }
    Ok(acc)
}

/// φ(κ, κ') = φ(κ', κ) for each sampled pair of integral weights.
pub fn duality_evaluated(ctx: &MacContext, phi: &LxSeries, pairs: &[(Wt, Wt)]) -> Result<DualityReport> {
    let mut failure = None;
    for (a, b) in pairs {
        if !ctx.rs.is_integral(a) || !ctx.rs.is_integral(b) {
            return Err(Error::Invalid("evaluated duality needs integral sample weights".into()));
        }
        let x = phi_value(ctx, phi, a, b)?;
        let y = phi_value(ctx, phi, b, a)?;
        if x != y {
            failure = Some(format!("φ({}, {}) = {x} but φ({}, {}) = {y}", fmt_wt(a), fmt_wt(b), fmt_wt(b), fmt_wt(a)));
            break;
        }
    }
    Ok(DualityReport { mode: "evaluated".into(), n: ctx.n, k: ctx.k, checked: pairs.len(), passed: failure.is_none(), failure })
}
