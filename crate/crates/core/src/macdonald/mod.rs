//! Type A_{N−1} specialization: Macdonald operators, the normalized ψ_k, the generalized Weyl
//! formula, shift operators, duality and the q → 1 limit.

pub mod appendix;
mod classical;
mod duality;
mod symmetric;
mod weyl;

use serde_json::{json, Value};

use crate::diffop::{psi_lx, reconstruct, DiffOp, ExactOp, ExpPoly, ExpRational, LxSeries, TieBreak};
use crate::error::{Error, Result};
use crate::intertwine::{normalize, psi_series, singular_vector, PsiSeries};
use crate::linalg::Mat;
use crate::qfield::{wt_add, wt_from_ints, wt_neg, wt_scale, wt_sub, LambdaPoly, QScalar, Wt, Q};
use crate::rootdata::RootSystem;
use crate::uqg::{FiniteModule, Verma, DEFAULT_DIM_CAP};

pub use classical::{classical_limit, psi_classical_limit, DiffTerm, EpsOrder, LamX};
pub use duality::{duality_evaluated, duality_symbolic, phi_bipoly, phi_series, phi_value, BiPoly, DualityReport};
pub use symmetric::{
    dominant_below, dominates, from_m_basis, is_w_invariant, m_basis, macdonald_inner, macdonald_oracle, monomial_symmetric,
    weyl_character, SymmetricLaurent,
};
pub use weyl::{proportionality, weyl_alternation};

/// Data of the A_{N−1} case with U_k = S^{kN}V.
#[derive(Clone, Debug)]
pub struct MacContext {
    pub n: usize,
    pub k: i64,
    pub rs: RootSystem,
}

impl MacContext {
    pub fn new(n: usize, k: i64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Invalid(format!("N = {n}: need N ≥ 2")));
        }
        if k < 0 {
            return Err(Error::Invalid(format!("k = {k} must be a nonnegative integer")));
        }
        let rs = RootSystem::from_label(&format!("A{}", n - 1))?;
        Ok(MacContext { n, k, rs })
    }

    /// Highest weight kN·Λ₁ of S^{kN}V in simple-root coordinates.
    pub fn theta(&self) -> Wt {
        wt_scale(self.rs.fundamental_weight(0), Q::from_integer(self.k * self.n as i64))
    }

    /// Θ = 2kρ.
    pub fn big_theta(&self) -> Wt {
        wt_scale(self.rs.rho(), Q::from_integer(2 * self.k))
    }

    /// Macdonald's (Q, T) = (q², q^{2(k+1)}).
    pub fn base(&self) -> (QScalar, QScalar) {
        (QScalar::q_pow(Q::from_integer(2)), QScalar::q_pow(Q::from_integer(2 * (self.k + 1))))
    }

    /// ε_i = Λ_i − Λ_{i−1} (1-based, with Λ₀ = Λ_N = 0).
    pub fn epsilon(&self, i: usize) -> Wt {
        let get = |j: usize| if j == 0 || j == self.n { self.rs.zero() } else { self.rs.fundamental_weight(j - 1).clone() };
        wt_sub(&get(i), &get(i - 1))
    }

    /// Ψ for U_k, with the module's Θ checked against 2kρ.
    pub fn psi(&self, depth: usize) -> Result<PsiSeries> {
        let verma = Verma::new(&self.rs);
        let module = FiniteModule::build(&verma, &self.theta(), DEFAULT_DIM_CAP)?;
        if wt_from_ints(&module.big_theta) != self.big_theta() {
            return Err(Error::invariant("theta-2k-rho", format!("Θ = {:?} differs from 2kρ", module.big_theta)));
        }
        let sv = normalize(&singular_vector(&verma, &module)?, &module)?;
        psi_series(&verma, &module, &sv, depth)
    }

    /// ∏_{α>0} ∏_{i=1}^k (e^{⟨α,x⟩/2} − q^{2i} e^{−⟨α,x⟩/2}).
    pub fn delta_plus(&self) -> ExpPoly {
        let mut p = LambdaPoly::one(self.rs.rank());
        for a in self.rs.positive_roots_wt() {
            let half = wt_scale(&a, Q::new(1, 2));
            for i in 1..=self.k {
                let f = LambdaPoly::from_terms([(half.clone(), QScalar::one()), (wt_neg(&half), -QScalar::q_pow(Q::from_integer(2 * i)))]);
                p = p.mul(&f);
            }
        }
        p
    }

    /// δ_k(x) = ∏_{α>0} ∏_{i=−k}^{k} (q^i e^{⟨α,x⟩/2} − q^{−i} e^{−⟨α,x⟩/2}).
    pub fn delta_k(&self) -> ExpPoly {
        let mut p = LambdaPoly::one(self.rs.rank());
        for a in self.rs.positive_roots_wt() {
            let half = wt_scale(&a, Q::new(1, 2));
            for i in -self.k..=self.k {
                let f = LambdaPoly::from_terms([
                    (half.clone(), QScalar::q_pow(Q::from_integer(i))),
                    (wt_neg(&half), -QScalar::q_pow(Q::from_integer(-i))),
                ]);
                p = p.mul(&f);
            }
        }
        p
    }

    /// ψ_k(λ,x) = q^{⟨Θ,λ−ρ⟩} Ψ(λ−ρ,x) / δ⁺(x).
    pub fn normalized_psi(&self, psi: &PsiSeries) -> Result<LxSeries> {
        if psi.dim0 != 1 {
            return Err(Error::Invalid("the normalized ψ needs dim U[0] = 1".into()));
        }
        let form = self.rs.form();
        let rho = self.rs.rho();
        let theta = self.big_theta();
        let pre = LambdaPoly::monomial(theta.clone(), QScalar::q_pow(-form.pair(&theta, rho)));
        let shifted = psi_lx(psi).shift_lambda(form, &wt_neg(rho)).mul_right(&Mat::from_rows(vec![vec![pre]]));
        let inv = ExpRational::new(LambdaPoly::one(self.rs.rank()), self.delta_plus())?.expand(self.rs.rank(), psi.depth)?;
        Ok(inv.act_on(&shifted))
    }

    /// ψ(λ+nα/2) = ψ(λ−nα/2) on ⟨α,λ⟩ = 0 for all α > 0, 1 ≤ n ≤ k. Returns the number of hyperplanes.
    pub fn check_quasi_invariance(&self, psi: &LxSeries) -> Result<usize> {
        let form = self.rs.form();
        let mut count = 0;
        for a in self.rs.positive_roots_wt() {
            for n in 1..=self.k {
                let half = wt_scale(&a, Q::new(n, 2));
                let d = psi.shift_lambda(form, &half).sub(&psi.shift_lambda(form, &wt_neg(&half)))?;
                for (mu, m) in &d.terms {
                    if m.entries().iter().any(|e| !e.restrict(form, &a, Q::from_integer(0)).is_zero()) {
                        return Err(Error::invariant(
                            "quasi-invariance",
                            format!("fails at x-term {mu:?} for α = {:?}, n = {n}", wt_to_display(&a)),
                        ));
                    }
                }
                count += 1;
            }
        }
        Ok(count)
    }

    /// Closed-form M_l in the subset form: Σ_{|I|=l} ∏_{i∈I, j∉I} (q^{k+1}X_i − q^{−k−1}X_j)/(X_i − X_j) T_{Σ_{i∈I} ε_i}.
    pub fn macdonald_operator(&self, l: usize) -> Result<ExactOp> {
        if l > self.n {
            return Err(Error::Invalid(format!("l = {l} exceeds N = {}", self.n)));
        }
        let r = self.rs.rank();
        let eps: Vec<Wt> = (1..=self.n).map(|i| self.epsilon(i)).collect();
        let up = QScalar::q_pow(Q::from_integer(self.k + 1));
        let down = QScalar::q_pow(Q::from_integer(-self.k - 1));
        let mut op = ExactOp::zero(r);
        for subset in subsets(self.n, l) {
            let mut coeff = ExpRational::constant(r, QScalar::one());
            let mut shift = self.rs.zero();
            for &i in &subset {
                shift = wt_add(&shift, &eps[i]);
                for j in (0..self.n).filter(|j| !subset.contains(j)) {
                    let num = LambdaPoly::from_terms([(eps[i].clone(), up.clone()), (eps[j].clone(), -down.clone())]);
                    let den = LambdaPoly::from_terms([(eps[i].clone(), QScalar::one()), (eps[j].clone(), -QScalar::one())]);
                    coeff = coeff.mul(&ExpRational::new(num, den)?);
                }
            }
            op.add_term(shift, coeff);
        }
        Ok(op)
    }

    /// Closed-form operator attached to a minuscule weight Λ, summed over the orbit W·Λ:
    /// Σ_{μ∈WΛ} ∏_{β∈R, ⟨β,μ⟩=1} (q^{k+1}e^{⟨β,x⟩/2} − q^{−k−1}e^{−⟨β,x⟩/2})/(e^{⟨β,x⟩/2} − e^{−⟨β,x⟩/2}) T_μ.
    pub fn orbit_operator(&self, lambda: &Wt) -> Result<ExactOp> {
        let rs = &self.rs;
        let roots = rs.positive_roots_wt();
        let one = Q::from_integer(1);
        if roots.iter().any(|a| {
            let p = rs.pairing(a, lambda);
            p != Q::from_integer(0) && p != one
        }) {
            return Err(Error::Invalid("the orbit form is defined for minuscule weights only".into()));
        }
        let all: Vec<Wt> = roots.iter().flat_map(|a| [a.clone(), wt_neg(a)]).collect();
        let up = QScalar::q_pow(Q::from_integer(self.k + 1));
        let down = QScalar::q_pow(Q::from_integer(-self.k - 1));
        let mut op = ExactOp::zero(rs.rank());
        for mu in rs.orbit(lambda) {
            let mut coeff = ExpRational::constant(rs.rank(), QScalar::one());
            for b in all.iter().filter(|b| rs.pairing(b, &mu) == one) {
                let h = wt_scale(b, Q::new(1, 2));
                let num = LambdaPoly::from_terms([(h.clone(), up.clone()), (wt_neg(&h), -down.clone())]);
                let den = LambdaPoly::from_terms([(h.clone(), QScalar::one()), (wt_neg(&h), -QScalar::one())]);
                coeff = coeff.mul(&ExpRational::new(num, den)?);
            }
            op.add_term(mu, coeff);
        }
        Ok(op)
    }

    /// c_Λ(λ) = Σ_{μ∈WΛ} q^{2⟨λ,μ⟩}.
    pub fn eigenvalue(&self, lambda: &Wt) -> LambdaPoly {
        let two = Q::from_integer(2);
        LambdaPoly::from_terms(self.rs.orbit(lambda).into_iter().map(|m| (wt_scale(&m, two), QScalar::one())))
    }

    /// Eigenvalue of M_l.
    pub fn eigenvalue_l(&self, l: usize) -> LambdaPoly {
        if l == 0 || l == self.n {
            return LambdaPoly::one(self.rs.rank());
        }
        self.eigenvalue(&self.rs.fundamental_weight(l - 1).clone())
    }

    /// G_k with ψ_{k+1} = G_k ψ_k, found by the reconstruction induction with shifts ≤ ρ.
    pub fn shift_operator(&self, psi_k: &LxSeries, psi_k1: &LxSeries) -> Result<DiffOp> {
        reconstruct(&self.rs, psi_k, psi_k1, &[self.rs.rho().clone()], TieBreak::default())
    }

    pub fn to_json(&self) -> Value {
        let (qq, tt) = self.base();
        json!({
            "N": self.n,
            "k": self.k,
            "cartan": self.rs.cartan,
            "theta": self.theta().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "Theta": self.big_theta().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "Q": qq.to_string(),
            "T": tt.to_string(),
        })
    }
}

fn wt_to_display(w: &[Q]) -> Vec<String> {
    w.iter().map(|x| x.to_string()).collect()
}

/// Size-l subsets of {0..n−1} in lexicographic order.
fn subsets(n: usize, l: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, l: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == l {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, l, cur, out);
            cur.pop();
        }
    }
    go(0, n, l, &mut cur, &mut out);
    out
}

/// c₀(λ) = ∏_{α>0} ∏_{n=−k_α}^{k_α} (q^{2⟨α,λ⟩ + n⟨α,α⟩} − 1).
pub fn c0_polynomial(rs: &RootSystem, k: &[i64]) -> LambdaPoly {
    let mut p = LambdaPoly::one(rs.rank());
    for (a, &ka) in rs.positive_roots_wt().iter().zip(k) {
        let aa = rs.pairing(a, a);
        for n in -ka..=ka {
            let f = LambdaPoly::from_terms([
                (wt_scale(a, Q::from_integer(2)), QScalar::q_pow(aa * Q::from_integer(n))),
                (rs.zero(), -QScalar::one()),
            ]);
            p = p.mul(&f);
        }
    }
    p
}

/// The sl₂, k = 1 variant q^{3λ} − [3]_q q^{λ} (λ in the coordinate q^{λ} = q^{⟨α,λ⟩}).
pub fn c0_appendix() -> LambdaPoly {
    LambdaPoly::from_terms([
        (vec![Q::from_integer(3)], QScalar::one()),
        (vec![Q::from_integer(1)], -QScalar::q_integer(3, 1)),
    ])
}

#[cfg(test)]
mod tests;
