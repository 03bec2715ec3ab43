//! The alternating sum p_λ(x) = Σ_w (−1)^{l(w)} ψ(w(λ + (k+1)ρ), x).

use super::symmetric::is_w_invariant;
use super::MacContext;
use crate::diffop::{ExpPoly, LxSeries, XSeries};
use crate::error::{Error, Result};
use crate::qfield::{wt_add, wt_from_ints, wt_scale, wt_sub, wt_to_ints, LambdaPoly, QScalar, Q};
use crate::rootdata::RootSystem;

/// The alternating sum, with the cancellation of the infinite tails and W-invariance checked.
///
/// λ need not be dominant; the sum then vanishes when the shifted weight lies on a wall.
pub fn weyl_alternation(ctx: &MacContext, psi: &LxSeries, lambda: &[Q]) -> Result<ExpPoly> {
    let rs = &ctx.rs;
    let form = rs.form();
    let base = wt_add(lambda, &wt_scale(rs.rho(), Q::from_integer(ctx.k + 1)));
    if !rs.is_integral(&base) {
        return Err(Error::Invalid("λ + (k+1)ρ must be integral".into()));
    }
    let top = rs.dominant_conjugate(&wt_sub(&base, &wt_scale(rs.rho(), Q::from_integer(ctx.k + 1))));
    let needed = rs
        .orbit(&top)
        .iter()
        .map(|m| wt_to_ints(&wt_sub(&top, m)).map(|d| RootSystem::height(&d)).unwrap_or(0))
        .max()
        .unwrap_or(0) as usize;
    let mut sum: Option<XSeries> = None;
    for w in rs.weyl_group()? {
        let term = psi.evaluate(form, &w.act(&base)).scale_q(&QScalar::from_int(w.sign()));
        sum = Some(match sum {
            None => term,
            Some(s) => s.add(&term)?,
        });
    }
    let sum = sum.expect("Weyl group is nonempty");
    // Every exponent must lie below the dominant weight `top`, which bounds the polynomial.
    let lead_gap = wt_to_ints(&wt_sub(&sum.lead, &top))
        .ok_or_else(|| Error::invariant("weyl-coset", "alternating sum left the weight coset of λ"))?;
    let avail = sum.depth as i64 - RootSystem::height(&lead_gap);
    if avail < needed as i64 {
        return Err(Error::Depth { needed: needed + RootSystem::height(&lead_gap).max(0) as usize, have: sum.depth });
    }
    let mut poly = LambdaPoly::zero();
    for (mu, m) in &sum.terms {
        let e = wt_sub(&sum.lead, &wt_from_ints(mu));
        let dom = rs.dominant_conjugate(&e);
        if !super::dominates(&top, &dom) {
            return Err(Error::invariant("weyl-tail", format!("exponent {e:?} survives outside the orbit hull of {top:?}")));
        }
        poly.add_term(e, m[(0, 0)].clone());
    }
    if !is_w_invariant(rs, &poly) {
        return Err(Error::invariant("weyl-invariance", "alternating sum is not W-invariant"));
    }
    Ok(poly)
}

/// The scalar s with a = s·b, if one exists.
pub fn proportionality(a: &ExpPoly, b: &ExpPoly) -> Option<QScalar> {
    if b.is_zero() {
        return a.is_zero().then(QScalar::one);
    }
    let (e, c) = b.terms().iter().next()?;
    let s = &a.coeff(e) / c;
    (a == &b.scale(&s)).then_some(s)
}
