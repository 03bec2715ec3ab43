//! Identities of Ψ on the reducibility hyperplanes of the Verma module.

use super::psi::PsiSeries;
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::qfield::{wt_from_ints, wt_neg, wt_scale, LambdaPoly, QScalar, Wt, Q};
use crate::rootdata::RootSystem;

/// The factor B(λ) in Ψ(λ,x) = Ψ(λ−nα,x)·B(λ) on ⟨α,λ+ρ⟩ = n⟨α,α⟩/2, as num/den with both
/// sides restricted to the hyperplane.
#[derive(Clone, Debug)]
pub struct Factor {
    pub alpha: Vec<i64>,
    pub n: i64,
    /// The hyperplane is ⟨α,λ⟩ = c.
    pub c: Q,
    /// Partial trace B_{nα}(λ) on the hyperplane.
    pub num: Mat<LambdaPoly>,
    /// χ(λ − nα) on the hyperplane.
    pub den: LambdaPoly,
    /// num/den when the division is exact.
    pub quotient: Option<Mat<LambdaPoly>>,
}

fn restrict(rs: &RootSystem, m: &Mat<LambdaPoly>, alpha: &[Q], c: Q) -> Mat<LambdaPoly> {
    m.map(|e| e.restrict(rs.form(), alpha, c))
}

fn shift(rs: &RootSystem, m: &Mat<LambdaPoly>, sigma: &[Q]) -> Mat<LambdaPoly> {
    m.map(|e| e.shift(rs.form(), sigma))
}

/// Solve for the factor B(λ) of the hyperplane identity.
pub fn factor_b(psi: &PsiSeries, alpha: &[i64], n: i64) -> Result<Factor> {
    let rs = &psi.rs;
    let idx = rs.positive_roots().iter().position(|a| a.as_slice() == alpha).ok_or_else(|| Error::Invalid(format!("{alpha:?} is not a positive root")))?;
    if n < 1 || n > psi.k[idx] {
        return Err(Error::Invalid(format!("n = {n} is outside 1..=k_α = {}", psi.k[idx])));
    }
    let na: Vec<i64> = alpha.iter().map(|x| x * n).collect();
    let need = RootSystem::height(&na) as usize;
    if need > psi.depth {
        return Err(Error::Depth { needed: need, have: psi.depth });
    }
    let aw = wt_from_ints(alpha);
    let aa = rs.pairing(&aw, &aw);
    let c = Q::from_integer(n) * aa / Q::from_integer(2) - rs.pairing(&aw, rs.rho());
    let num = restrict(rs, &psi.terms[&na], &aw, c);
    let den = psi.chi.shift(rs.form(), &wt_neg(&wt_from_ints(&na))).restrict(rs.form(), &aw, c);
    if den.is_zero() {
        return Err(Error::invariant("factor-denominator", "χ(λ−nα) vanishes on the hyperplane"));
    }
    let mut entries = Vec::new();
    for e in num.entries() {
        match e.exact_div(&den) {
            Some(q) => entries.push(q),
            None => break,
        }
    }
    let quotient = (entries.len() == num.entries().len()).then(|| {
        let d = num.rows;
        Mat::from_rows((0..d).map(|i| entries[i * d..(i + 1) * d].to_vec()).collect())
    });
    Ok(Factor { alpha: alpha.to_vec(), n, c, num, den, quotient })
}

/// χ(λ−nα)·B_μ(λ) = B_{μ−nα}(λ−nα)·B_{nα}(λ) on the hyperplane, for every μ within depth.
/// Returns the number of μ checked.
pub fn check_factor_identity(psi: &PsiSeries, f: &Factor) -> Result<usize> {
    let rs = &psi.rs;
    let aw = wt_from_ints(&f.alpha);
    let na: Wt = wt_scale(&aw, Q::from_integer(f.n));
    let mut count = 0;
    for (mu, b) in &psi.terms {
        let low: Vec<i64> = mu.iter().zip(&f.alpha).map(|(m, a)| m - f.n * a).collect();
        let lhs = restrict(rs, b, &aw, f.c).map(|e| e.mul(&f.den));
        let rhs = restrict(rs, &shift(rs, &psi.b_or_zero(&low), &wt_neg(&na)), &aw, f.c).mul(&f.num);
        if lhs != rhs {
            return Err(Error::invariant(
                "hyperplane-factor",
                format!("identity fails at μ = {mu:?} for α = {:?}, n = {}", f.alpha, f.n),
            ));
        }
        count += 1;
    }
    Ok(count)
}

/// B_μ(λ+σ) = s·B_{μ−nα}(λ+σ−nα) on ⟨α,λ⟩ = c for every μ within depth (a scalar shift law).
pub fn check_scalar_shift(psi: &PsiSeries, alpha: &[i64], n: i64, c: Q, sigma: &[Q], s: &QScalar) -> Result<usize> {
    let rs = &psi.rs;
    let aw = wt_from_ints(alpha);
    let back = wt_scale(&aw, Q::from_integer(-n));
    let sigma_back: Wt = sigma.iter().zip(&back).map(|(a, b)| a + b).collect();
    let mut count = 0;
    for (mu, b) in &psi.terms {
        let low: Vec<i64> = mu.iter().zip(alpha).map(|(m, a)| m - n * a).collect();
        let lhs = restrict(rs, &shift(rs, b, sigma), &aw, c);
        let rhs = restrict(rs, &shift(rs, &psi.b_or_zero(&low), &sigma_back), &aw, c).map(|e| e.scale(s));
        if lhs != rhs {
            return Err(Error::invariant(
                "hyperplane-shift",
                format!("shift law fails at μ = {mu:?} for α = {alpha:?}, n = {n}"),
            ));
        }
        count += 1;
    }
    Ok(count)
}
