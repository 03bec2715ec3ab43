//! Closed forms for sl₂ in the coordinates X = e^{⟨α/2,x⟩}, q^{λ} = q^{⟨α,λ⟩}, T = T_{α/2}.

use super::classical::{DiffTerm, LamX};
use crate::diffop::{ExactOp, ExpPoly, ExpRational, LxSeries};
use crate::error::Result;
use crate::linalg::Mat;
use crate::qfield::{LambdaPoly, QScalar, Wt, Q};

fn qs(e: i64) -> QScalar {
    QScalar::q_pow(Q::from_integer(e))
}

fn half(n: i64) -> Wt {
    vec![Q::new(n, 2)]
}

/// a·X + b·X⁻¹.
fn lin(a: QScalar, b: QScalar) -> ExpPoly {
    LambdaPoly::from_terms([(half(1), a), (half(-1), b)])
}

/// q^a X − q^b X⁻¹.
fn l(a: i64, b: i64) -> ExpPoly {
    lin(qs(a), -qs(b))
}

fn frac(n: ExpPoly, d: ExpPoly) -> Result<ExpRational> {
    ExpRational::new(n, d)
}

/// c·q^{mλ}.
fn ql(m: i64, c: QScalar) -> LambdaPoly {
    LambdaPoly::monomial(vec![Q::from_integer(m)], c)
}

/// M₁ = (q^{k+1}X − q^{−k−1}X⁻¹)/(X − X⁻¹)·T + (q^{k+1}X⁻¹ − q^{−k−1}X)/(X⁻¹ − X)·T⁻¹.
pub fn m1(k: i64) -> Result<ExactOp> {
    let mut op = ExactOp::zero(1);
    op.add_term(half(1), frac(l(k + 1, -k - 1), l(0, 0))?);
    op.add_term(half(-1), frac(lin(-qs(-k - 1), qs(k + 1)), lin(-qs(0), qs(0)))?);
    Ok(op)
}

/// M₀ for k = 1, eigenvalue q^{3λ} − [3]_q q^{λ}.
pub fn m0() -> Result<ExactOp> {
    let mut op = ExactOp::zero(1);
    op.add_term(half(3), frac(l(4, -4), l(1, -1))?.mul(&frac(l(3, -3), l(0, 0))?));
    op.add_term(half(1), frac(l(1, -1).scale(&-QScalar::q_integer(3, 1)), l(-1, 1))?);
    Ok(op)
}

/// M₀ for k = 0: (qX − q⁻¹X⁻¹)/(X − X⁻¹)·T.
pub fn m0_k0() -> Result<ExactOp> {
    let mut op = ExactOp::zero(1);
    op.add_term(half(1), frac(l(1, -1), l(0, 0))?);
    Ok(op)
}

/// G₀ = (T − T⁻¹)/(X − X⁻¹).
pub fn g0() -> Result<ExactOp> {
    let mut op = ExactOp::zero(1);
    op.add_term(half(1), frac(LambdaPoly::one(1), l(0, 0))?);
    op.add_term(half(-1), frac(LambdaPoly::constant(1, -QScalar::one()), l(0, 0))?);
    Ok(op)
}

pub fn c1() -> LambdaPoly {
    ql(1, QScalar::one()).add(&ql(-1, QScalar::one()))
}

pub fn c0() -> LambdaPoly {
    ql(3, QScalar::one()).sub(&ql(1, QScalar::q_integer(3, 1)))
}

fn lx_const(depth: usize, c: LambdaPoly) -> LxSeries {
    let mut s = LxSeries::zero(vec![Q::from_integer(0)], depth, 1);
    s.add_term(vec![0], Mat::from_rows(vec![vec![c]]));
    s
}

/// Σ_i a_i(x)·c_i(λ) expanded to `depth`.
fn combine(parts: Vec<(ExpRational, LambdaPoly)>, depth: usize) -> Result<LxSeries> {
    let mut out: Option<LxSeries> = None;
    for (a, c) in parts {
        let t = a.expand(1, depth)?.act_on(&lx_const(depth, c));
        out = Some(match out {
            None => t,
            Some(s) => s.add(&t)?,
        });
    }
    Ok(out.expect("nonempty"))
}

/// Ψ(λ,x) for k = 0: e^{λx}/(1 − e^{−2x}).
pub fn big_psi0(depth: usize) -> Result<LxSeries> {
    let e = |n: i64, c: QScalar| (vec![Q::from_integer(n)], c);
    combine(vec![(frac(LambdaPoly::one(1), LambdaPoly::from_terms([e(0, qs(0)), e(-1, -qs(0))]))?, LambdaPoly::one(1))], depth)
}

/// Ψ(λ,x) for k = 1: e^{λx}/(1 − e^{−2x})·((1 − q²e^{−2x})/(1 − q⁻²e^{−2x}) − q^{−2λ}).
pub fn big_psi1(depth: usize) -> Result<LxSeries> {
    let one_minus = |a: QScalar| LambdaPoly::from_terms([(vec![Q::from_integer(0)], qs(0)), (vec![Q::from_integer(-1)], -a)]);
    combine(
        vec![
            (frac(one_minus(qs(2)), one_minus(qs(0)).mul(&one_minus(qs(-2))))?, LambdaPoly::one(1)),
            (frac(LambdaPoly::constant(1, -qs(0)), one_minus(qs(0)))?, ql(-2, qs(0))),
        ],
        depth,
    )
}

/// ψ₁(λ,x) = e^{λx}/(X − X⁻¹)·(q^{λ}/(qX − q⁻¹X⁻¹) − q^{−λ}/(q⁻¹X − qX⁻¹)).
pub fn psi1(depth: usize) -> Result<LxSeries> {
    combine(
        vec![
            (frac(LambdaPoly::one(1), l(0, 0).mul(&l(1, -1)))?, ql(1, qs(0))),
            (frac(LambdaPoly::constant(1, -qs(0)), l(0, 0).mul(&l(-1, 1)))?, ql(-1, qs(0))),
        ],
        depth,
    )
}

/// Rational functions of X used by the classical limit (with q read as X).
mod x {
    use super::*;

    pub fn pow(n: i64) -> QScalar {
        qs(n)
    }

    pub fn int(n: i64) -> QScalar {
        QScalar::from_int(n)
    }

    /// (X + X⁻¹)/(X − X⁻¹).
    pub fn coth() -> QScalar {
        &(&pow(1) + &pow(-1)) / &(&pow(1) - &pow(-1))
    }

    /// (X − X⁻¹)².
    pub fn sinh2() -> QScalar {
        let d = &pow(1) - &pow(-1);
        &d * &d
    }
}

fn terms(v: Vec<(u32, QScalar)>) -> Vec<DiffTerm> {
    v.into_iter().filter(|(_, c)| !c.is_zero()).map(|(deriv, coeff)| DiffTerm { deriv, coeff }).collect()
}

/// a·D + b, as a sorted term list.
pub fn affine(d: &[DiffTerm], a: i64, b: i64) -> Vec<DiffTerm> {
    let mut v: Vec<(u32, QScalar)> = d.iter().map(|t| (t.deriv, &x::int(a) * &t.coeff)).collect();
    match v.iter_mut().find(|(k, _)| *k == 0) {
        Some(t) => t.1 = &t.1 + &x::int(b),
        None => v.push((0, x::int(b))),
    }
    v.sort_by_key(|(k, _)| *k);
    terms(v)
}

/// D₂ = ∂² + 4·coth·∂.
pub fn d2() -> Vec<DiffTerm> {
    terms(vec![(1, &x::int(4) * &x::coth()), (2, x::int(1))])
}

/// D₃ = ∂³ + 6·coth·∂² + (11 + 12/(X − X⁻¹)²)·∂ + 6(X³ − 3X − 3X⁻¹ + X⁻³)/(X − X⁻¹)³.
pub fn d3() -> Vec<DiffTerm> {
    let c = &(&(&x::pow(3) - &(&x::int(3) * &x::pow(1))) - &(&x::int(3) * &x::pow(-1))) + &x::pow(-3);
    let d3 = &x::sinh2() * &(&x::pow(1) - &x::pow(-1));
    terms(vec![
        (0, &x::int(6) * &(&c / &d3)),
        (1, &x::int(11) + &(&x::int(12) / &x::sinh2())),
        (2, &x::int(6) * &x::coth()),
        (3, x::int(1)),
    ])
}

/// e^{−λx}ψ₁⁽⁰⁾ = (λ − coth)/(X − X⁻¹)², as a polynomial in λ.
pub fn psi1_classical() -> LamX {
    [(0, (&x::coth() / &x::sinh2()).neg()), (1, &x::int(1) / &x::sinh2())].into_iter().collect()
}
