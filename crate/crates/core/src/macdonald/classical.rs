//! ε-expansions at q = e^ε for rank-one operators and functions.
//!
//! Coefficients are rational functions of X = e^{x} (x the sl₂ coordinate with e^{⟨α,x⟩} = e^{2x});
//! they reuse the [`QScalar`] representation with the variable read as X. Dependence on λ is
//! polynomial, through q^{mλ} = e^{mλε}.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::duality::BiPoly;
use crate::diffop::{ExactOp, ExpPoly};
use crate::error::{Error, Result};
use crate::qfield::{QScalar, Q};

/// A polynomial in λ with coefficients in ℚ(X), keyed by the power of λ.
pub type LamX = BTreeMap<u32, QScalar>;

/// One term c(X)·∂^deriv of a differential operator.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffTerm {
    pub deriv: u32,
    pub coeff: QScalar,
}

/// The ε^order coefficient of an operator, as a differential operator in x.
#[derive(Clone, Debug, PartialEq)]
pub struct EpsOrder {
    pub order: usize,
    pub terms: Vec<DiffTerm>,
}

impl EpsOrder {
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self.terms.iter().map(|t| json!({"d": t.deriv, "coeff": t.coeff.to_string()})).collect();
        json!({"order": self.order, "terms": terms})
    }

    /// Coefficient of ∂^d (zero when absent).
    pub fn coeff(&self, d: u32) -> QScalar {
        self.terms.iter().find(|t| t.deriv == d).map(|t| t.coeff.clone()).unwrap_or_default()
    }
}

fn factorial(n: usize) -> BigRational {
    BigRational::from_integer((1..=n as u64).fold(BigInt::one(), |a, b| a * b))
}

fn rat(q: Q) -> BigRational {
    BigRational::new(BigInt::from(*q.numer()), BigInt::from(*q.denom()))
}

/// Σ_j (a^j/j!) ε^j up to `order`.
fn exp_series(a: &BigRational, order: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(order + 1);
    let mut p = BigRational::one();
    for j in 0..=order {
        out.push(&p / factorial(j));
        p = &p * a;
    }
    out
}

fn series_div(num: &[BigRational], den: &[BigRational]) -> Result<Vec<BigRational>> {
    if den[0].is_zero() {
        return Err(Error::Invalid("coefficient has a pole at q = 1".into()));
    }
    let mut out: Vec<BigRational> = Vec::with_capacity(num.len());
    for n in 0..num.len() {
        let mut acc = num[n].clone();
        for j in 1..=n {
            acc -= &den[j] * &out[n - j];
        }
        out.push(acc / &den[0]);
    }
    Ok(out)
}

/// Expansion of a q-number at q = e^ε.
fn q_number_eps(c: &QScalar, order: usize) -> Result<Vec<BigRational>> {
    let expand = |terms: Vec<(Q, BigRational)>| {
        let mut s = vec![BigRational::zero(); order + 1];
        for (e, x) in terms {
            for (j, v) in exp_series(&rat(e), order).into_iter().enumerate() {
                s[j] += &x * v;
            }
        }
        s
    };
    series_div(&expand(c.num_terms()), &expand(c.den_terms()))
}

fn x_power(n: Q) -> QScalar {
    QScalar::q_pow(n)
}

fn lamx_add(a: &LamX, b: &LamX) -> LamX {
    let mut out = a.clone();
    for (p, c) in b {
        let v = &out.get(p).cloned().unwrap_or_default() + c;
        if v.is_zero() {
            out.remove(p);
        } else {
            out.insert(*p, v);
        }
    }
    out
}

fn lamx_mul(a: &LamX, b: &LamX) -> LamX {
    let mut out = LamX::new();
    for (p, x) in a {
        for (r, y) in b {
            out = lamx_add(&out, &LamX::from([(p + r, x * y)]));
        }
    }
    out
}

type EpsSeries = Vec<LamX>;

fn eps_mul(a: &EpsSeries, b: &EpsSeries) -> EpsSeries {
    let n = a.len().min(b.len());
    (0..n).map(|k| (0..=k).fold(LamX::new(), |acc, i| lamx_add(&acc, &lamx_mul(&a[i], &b[k - i])))).collect()
}

fn eps_inverse(a: &EpsSeries) -> Result<EpsSeries> {
    let lead = match a[0].iter().collect::<Vec<_>>().as_slice() {
        [(0, c)] => c.inv(),
        _ => return Err(Error::Invalid("leading ε-coefficient must be a nonzero function of x alone".into())),
    };
    let mut out: EpsSeries = vec![LamX::from([(0, lead.clone())])];
    for n in 1..a.len() {
        let mut acc = LamX::new();
        for j in 1..=n {
            acc = lamx_add(&acc, &lamx_mul(&a[j], &out[n - j]));
        }
        out.push(acc.into_iter().map(|(p, c)| (p, -&(&c * &lead))).filter(|(_, c)| !c.is_zero()).collect());
    }
    Ok(out)
}

/// ε-expansion of Σ c·q^{⟨η,λ⟩}·e^{⟨κ,x⟩} (rank one): the λ-exponent η = m·α gives e^{mλε}.
fn bipoly_eps(terms: &[(Q, Q, QScalar)], order: usize) -> Result<EpsSeries> {
    let mut out: EpsSeries = vec![LamX::new(); order + 1];
    for (eta, kappa, c) in terms {
        let cs = q_number_eps(c, order)?;
        // e^{⟨κ,x⟩} = X^{2κ} in simple-root coordinates.
        let xp = x_power(*kappa * Q::from_integer(2));
        let m = rat(*eta);
        let mut mpow = BigRational::one();
        for j in 0..=order {
            let lam_coeff = &mpow / factorial(j);
            for i in 0..=(order - j) {
                let v = &cs[i] * &lam_coeff;
                if !v.is_zero() {
                    out[i + j] = lamx_add(&out[i + j], &LamX::from([(j as u32, &xp * &QScalar::from_rational(v))]));
                }
            }
            mpow = &mpow * &m;
        }
    }
    Ok(out)
}

fn poly_eps(p: &ExpPoly, order: usize) -> Result<EpsSeries> {
    let terms: Vec<(Q, Q, QScalar)> = p.terms().iter().map(|(k, c)| (Q::from_integer(0), k[0], c.clone())).collect();
    bipoly_eps(&terms, order)
}

/// ε⁰..ε^order coefficients of a rank-one operator with q = e^ε and T_{mΛ} = exp(mε∂).
pub fn classical_limit(op: &ExactOp, order: usize) -> Result<Vec<EpsOrder>> {
    if op.rank != 1 {
        return Err(Error::Invalid("the classical limit is implemented for rank one".into()));
    }
    let mut acc: Vec<BTreeMap<u32, QScalar>> = vec![BTreeMap::new(); order + 1];
    for (shift, a) in &op.terms {
        // Λ = α/2 is the unit shift x ↦ x + ε.
        let m = rat(shift[0] * Q::from_integer(2));
        let coeff = eps_mul(&poly_eps(&a.num, order)?, &eps_inverse(&poly_eps(&a.den, order)?)?);
        let tser = exp_series(&m, order);
        for (i, ci) in coeff.iter().enumerate() {
            let c = ci.get(&0).cloned().unwrap_or_default();
            if c.is_zero() {
                continue;
            }
            for (j, tj) in tser.iter().enumerate().take(order + 1 - i) {
                if tj.is_zero() {
                    continue;
                }
                let e = acc[i + j].entry(j as u32).or_default();
                *e = &*e + &(&c * &QScalar::from_rational(tj.clone()));
            }
        }
    }
    Ok(acc
        .into_iter()
        .enumerate()
        .map(|(order, m)| EpsOrder {
            order,
            terms: m.into_iter().filter(|(_, c)| !c.is_zero()).map(|(deriv, coeff)| DiffTerm { deriv, coeff }).collect(),
        })
        .collect())
}

/// ε-expansion of e^{−λx}·F(λ,x)/D(x) with F a rank-one bi-polynomial (for instance φ_k) and D(x) a
/// Laurent polynomial (for instance δ_k), as polynomials in λ over ℚ(X).
pub fn psi_classical_limit(f: &BiPoly, d: &ExpPoly, order: usize) -> Result<Vec<LamX>> {
    let terms: Vec<(Q, Q, QScalar)> = f.iter().map(|((eta, kappa), c)| (eta[0], kappa[0], c.clone())).collect();
    let num = bipoly_eps(&terms, order)?;
    // Leading orders of D may vanish (δ_k has zeros at q = 1); divide out the common ε-power.
    let den = poly_eps(d, order + 8)?;
    let shift = den.iter().position(|c| !c.is_empty()).ok_or_else(|| Error::Invalid("denominator vanishes".into()))?;
    if shift > order {
        return Err(Error::Invalid("expansion order too small for the denominator".into()));
    }
    let den: EpsSeries = den[shift..].iter().take(order + 1).cloned().collect();
    let n0 = num.iter().take(shift).all(|c| c.is_empty());
    if !n0 {
        return Err(Error::invariant("classical-pole", "the expansion has a pole at ε = 0"));
    }
    let num: EpsSeries = num[shift..].to_vec();
    let mut num = num;
    num.resize(order + 1 - shift, LamX::new());
    let den: EpsSeries = den.into_iter().take(order + 1 - shift).collect();
    Ok(eps_mul(&num, &eps_inverse(&den)?))
}
