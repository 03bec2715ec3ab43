//! Recovering difference operators from their action on Ψ.

use std::collections::BTreeMap;

use super::op::DiffOp;
use super::series::LxSeries;
use crate::error::{Error, Result};
use crate::intertwine::{factor_b, PsiSeries};
use crate::linalg::Mat;
use crate::qfield::{fmt_wt, wt_from_ints, wt_geq, wt_scale, wt_sub, LambdaPoly, Wt, Q};
use crate::rootdata::RootSystem;

/// Which of several dominance-minimal exponents is processed first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TieBreak {
    /// Lexicographically largest support point ν (smallest exponent −2ν).
    #[default]
    LexLargest,
    LexSmallest,
}

/// Ψ as a λ-x series with lead 0.
pub fn psi_lx(psi: &PsiSeries) -> LxSeries {
    LxSeries { lead: psi.rs.zero(), depth: psi.depth, dim: psi.dim0, terms: psi.terms.clone() }
}

/// c(λ+nα/2) − c(λ−nα/2) restricted to ⟨α,λ⟩ = 0, for every positive root α and 1 ≤ n ≤ k_α.
/// Returns the failing (α, n) pairs.
pub fn admissibility_check(rs: &RootSystem, k: &[i64], c: &LambdaPoly) -> Vec<(Vec<i64>, i64)> {
    let mut bad = Vec::new();
    for (a, &ka) in rs.positive_roots().iter().zip(k) {
        let aw = wt_from_ints(a);
        for n in 1..=ka {
            let half = wt_scale(&aw, Q::new(n, 2));
            let d = c.shift(rs.form(), &half).sub(&c.shift(rs.form(), &wt_scale(&half, Q::from_integer(-1))));
            if !d.restrict(rs.form(), &aw, Q::from_integer(0)).is_zero() {
                bad.push((a.clone(), n));
            }
        }
    }
    bad
}

/// Split c by the class of its exponents modulo the root lattice Q.
pub fn coset_decompose(c: &LambdaPoly) -> Vec<LambdaPoly> {
    let mut classes: BTreeMap<Wt, LambdaPoly> = BTreeMap::new();
    for (e, x) in c.terms() {
        let key: Wt = e.iter().map(|v| v - v.floor()).collect();
        classes.entry(key).or_default().add_term(e.clone(), x.clone());
    }
    classes.into_values().collect()
}

fn dominance_minimal(cands: &[Wt], tie: TieBreak) -> Option<Wt> {
    let minimal: Vec<&Wt> =
        cands.iter().filter(|e| !cands.iter().any(|o| o != *e && wt_geq(e, o))).collect();
    match tie {
        TieBreak::LexLargest => minimal.into_iter().min().cloned(),
        TieBreak::LexSmallest => minimal.into_iter().max().cloned(),
    }
}

/// Find D = Σ_Λ A_Λ(x) T_Λ with D·source = target, where the shifts are bounded above (in
/// dominance order) by one of `bounds`.
///
/// The source must have a unique dominance-minimal λ-exponent η₀; a point η of the residual is
/// removed with the shift Λ = (η − η₀)/2.
pub fn reconstruct(rs: &RootSystem, source: &LxSeries, target: &LxSeries, bounds: &[Wt], tie: TieBreak) -> Result<DiffOp> {
    let form = rs.form();
    let src_supp = source.lambda_support();
    let minimal: Vec<&Wt> = src_supp.iter().filter(|e| !src_supp.iter().any(|o| o != *e && wt_geq(e, o))).collect();
    let top = match minimal.as_slice() {
        [one] => (*one).clone(),
        _ => return Err(Error::invariant("reconstruction-top", format!("source has {} minimal exponents", minimal.len()))),
    };
    let mut op = DiffOp::zero(rs.rank(), source.dim);
    let mut residual = target.clone();
    let mut steps = 0usize;
    loop {
        let cands: Vec<Wt> = residual
            .lambda_support()
            .into_iter()
            .filter(|eta| {
                let shift = wt_scale(&wt_sub(eta, &top), Q::new(1, 2));
                bounds.iter().any(|b| wt_geq(b, &shift))
            })
            .collect();
        let Some(eta) = dominance_minimal(&cands, tie) else { break };
        let shift = wt_scale(&wt_sub(&eta, &top), Q::new(1, 2));
        let moved = source.translate_lx(form, &shift);
        let s = moved.lambda_coeff(&eta);
        let p = residual.lambda_coeff(&eta);
        let a = p.mul(&s.inverse()?);
        residual = residual.sub(&a.act_on(&moved))?;
        if !residual.lambda_coeff(&eta).truncate(residual.depth).is_zero() {
            return Err(Error::invariant("reconstruction-step", format!("exponent {} not cleared", fmt_wt(&eta))));
        }
        op.add_term(shift, a)?;
        steps += 1;
        if steps > 10_000 {
            return Err(Error::Resource("reconstruction did not terminate".into()));
        }
    }
    if !residual.is_zero() {
        let left: Vec<String> = residual.lambda_support().iter().map(|e| fmt_wt(e)).collect();
        return Err(Error::invariant("reconstruction-residual", format!("nonzero residual at exponents {}", left.join(" "))));
    }
    Ok(op)
}

/// Matrix admissibility: with Ψ(λ) = Ψ(λ−nα)·F(λ) on ⟨α,λ+ρ⟩ = n⟨α,α⟩/2 (F from [`factor_b`]),
/// F(λ)·C(λ+ρ) = C(λ+ρ−nα)·F(λ) there. Returns the failing (α, n) pairs.
pub fn matrix_admissibility_check(psi: &PsiSeries, c: &Mat<LambdaPoly>) -> Result<Vec<(Vec<i64>, i64)>> {
    let rs = &psi.rs;
    let form = rs.form();
    let shifted = c.map(|e| e.shift(form, rs.rho()));
    let mut bad = Vec::new();
    for (a, &ka) in rs.positive_roots().iter().zip(&psi.k) {
        let aw = wt_from_ints(a);
        for n in 1..=ka {
            let f = factor_b(psi, a, n)?;
            // F = num/den with den scalar, so the condition only involves num.
            let fq = &f.num;
            let lowered = shifted.map(|e| e.shift(form, &wt_scale(&aw, Q::from_integer(-n))));
            let lhs = fq.mul(&shifted).map(|e| e.restrict(form, &aw, f.c));
            let rhs = lowered.mul(fq).map(|e| e.restrict(form, &aw, f.c));
            if lhs != rhs {
                bad.push((a.clone(), n));
            }
        }
    }
    Ok(bad)
}

/// The operator D_C with D_C Ψ = Ψ·C(λ+ρ); C is scalar (1×1) or End(U[0])-valued.
pub fn reconstruct_operator(psi: &PsiSeries, c: &Mat<LambdaPoly>, tie: TieBreak) -> Result<DiffOp> {
    let rs = &psi.rs;
    if c.rows != psi.dim0 || c.cols != psi.dim0 {
        return Err(Error::Invalid(format!("eigenvalue is {}×{} but dim U[0] = {}", c.rows, c.cols, psi.dim0)));
    }
    if c.rows == 1 {
        let bad = admissibility_check(rs, &psi.k, &c[(0, 0)]);
        if let Some((a, n)) = bad.first() {
            return Err(Error::Invalid(format!("eigenvalue is not admissible: fails for α = {a:?}, n = {n}")));
        }
    } else if let Some((a, n)) = matrix_admissibility_check(psi, c)?.first() {
        return Err(Error::Invalid(format!("matrix eigenvalue violates the hyperplane condition for α = {a:?}, n = {n}")));
    }
    let source = psi_lx(psi);
    let target = source.mul_right(&c.map(|e| e.shift(rs.form(), rs.rho())));
    let mut bounds: Vec<Wt> = Vec::new();
    for e in c.entries() {
        for s in e.support() {
            let b = wt_scale(&s, Q::new(1, 2));
            if !bounds.contains(&b) {
                bounds.push(b);
            }
        }
    }
    reconstruct(rs, &source, &target, &bounds, tie)
}
