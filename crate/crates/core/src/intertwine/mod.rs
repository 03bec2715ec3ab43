//! Singular vectors in M_λ ⊗ U, the intertwining operators they define, and the trace
//! function Ψ(λ, x) built from the partial traces of those operators.

mod hyperplane;
mod psi;
mod tensor;

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::qfield::{wt_from_ints, LambdaPoly, QScalar, Q};
use crate::rootdata::RootSystem;
use crate::uqg::{FiniteModule, Gen, Spec, Verma};

pub use hyperplane::{check_factor_identity, check_scalar_shift, factor_b, Factor};
pub use psi::{psi_series, PsiSeries};
pub use tensor::{intertwiner_image, MuTensor};

/// χ(λ) = ∏_{α>0} ∏_{n=1}^{k_α} (1 − q^{−2⟨α,λ+ρ⟩ + n⟨α,α⟩}).
pub fn chi(rs: &RootSystem, k: &[i64]) -> LambdaPoly {
    let r = rs.rank();
    let mut acc = LambdaPoly::one(r);
    for (a, &ka) in rs.positive_roots().iter().zip(k) {
        let aw = wt_from_ints(a);
        let aa = rs.pairing(&aw, &aw);
        let ar = rs.pairing(&aw, rs.rho());
        for n in 1..=ka {
            let e = Q::from_integer(-2) * ar + Q::from_integer(n) * aa;
            let eta = aw.iter().map(|x| x * Q::from_integer(-2)).collect();
            acc = acc.mul(&LambdaPoly::one(r).add(&LambdaPoly::monomial(eta, -QScalar::q_pow(e))));
        }
    }
    acc
}

/// Coefficients attached to g_i^ν v_λ ⊗ (basis of U[ν]): `num[(i, m)] / den`.
#[derive(Clone, Debug, PartialEq)]
pub struct Part {
    pub num: Mat<LambdaPoly>,
    pub den: LambdaPoly,
}

/// One singular vector per basis vector u_a of U[0], stored weight by weight.
#[derive(Clone, Debug)]
pub struct SingularVector {
    pub normalized: bool,
    /// `columns[a][ν]` is the part of the vector for u_a living in M[λ−ν] ⊗ U[ν].
    pub columns: Vec<BTreeMap<Vec<i64>, Part>>,
}

fn zero_depth(module: &FiniteModule) -> Result<Vec<i64>> {
    module.zero_depth.clone().ok_or_else(|| Error::Invalid("module has no zero weight space".into()))
}

/// The weights ν ∈ Q₊ with U[ν] ≠ 0, paired with the depth of U[ν].
pub(crate) fn upper_weights(module: &FiniteModule) -> Result<Vec<(Vec<i64>, Vec<i64>)>> {
    let z = zero_depth(module)?;
    let mut out: Vec<(Vec<i64>, Vec<i64>)> = module
        .spaces
        .keys()
        .filter(|d| d.iter().zip(&z).all(|(a, b)| a <= b))
        .map(|d| (z.iter().zip(d).map(|(a, b)| a - b).collect(), d.clone()))
        .collect();
    out.sort_by_key(|(nu, _)| (RootSystem::height(nu), nu.clone()));
    Ok(out)
}

/// φ = Σ_ν Σ_{i,j} (F_ν⁻¹)_{ij} g_i^ν v_λ ⊗ ω(g_j^ν) u, for every basis vector u of U[0].
pub fn singular_vector(verma: &Verma, module: &FiniteModule) -> Result<SingularVector> {
    let z = zero_depth(module)?;
    let d0 = module.space_dim(&z);
    let mut columns = vec![BTreeMap::new(); d0];
    for (nu, depth) in upper_weights(module)? {
        let lvl = verma.level(&nu)?;
        let g = verma.gram(&Spec::Symbolic, &nu)?;
        let det = g.det_bareiss();
        if det.is_zero() {
            return Err(Error::invariant("shapovalov-generic", format!("det F_{nu:?} vanishes identically")));
        }
        let adj = g.adjugate();
        let p = lvl.basis.len();
        let dm = module.space_dim(&depth);
        for (a, col) in columns.iter_mut().enumerate() {
            let mut ua = vec![QScalar::zero(); d0];
            ua[a] = QScalar::one();
            let images: Vec<Vec<QScalar>> = lvl.basis.iter().map(|w| module.omega_word(w, &z, &ua).1).collect();
            let mut num = Mat::filled(p, dm, LambdaPoly::zero());
            for i in 0..p {
                for (j, img) in images.iter().enumerate() {
                    for (m, x) in img.iter().enumerate() {
                        if !x.is_zero() {
                            num[(i, m)].add_scaled(&adj[(i, j)], x);
                        }
                    }
                }
            }
            if !num.is_zero() {
                col.insert(nu.clone(), Part { num, den: det.clone() });
            }
        }
    }
    Ok(SingularVector { normalized: false, columns })
}

/// Multiply by χ(λ) and clear denominators exactly; the result must be a q-polynomial
/// whose exponents lie in −2·L_θ.
pub fn normalize(sv: &SingularVector, module: &FiniteModule) -> Result<SingularVector> {
    let rs = &module.rs;
    let ch = chi(rs, &module.k);
    let (boxset, _) = rs.support_box(&module.k);
    let allowed: BTreeSet<Vec<Q>> = boxset.iter().map(|m| m.iter().map(|&x| Q::from_integer(-2 * x)).collect()).collect();
    let mut columns = Vec::new();
    for col in &sv.columns {
        let mut out = BTreeMap::new();
        for (nu, part) in col {
            let scaled = part.num.map(|x| if sv.normalized { x.clone() } else { x.mul(&ch) });
            let mut num = Mat::filled(scaled.rows, scaled.cols, LambdaPoly::zero());
            for i in 0..scaled.rows {
                for j in 0..scaled.cols {
                    let q = scaled[(i, j)].exact_div(&part.den).ok_or_else(|| {
                        Error::invariant("denominator-bound", format!("χ·φ has a denominator at weight {nu:?}"))
                    })?;
                    if let Some(bad) = q.support().into_iter().find(|e| !allowed.contains(e)) {
                        return Err(Error::invariant(
                            "support-bound",
                            format!("exponent {bad:?} at weight {nu:?} lies outside −2·L_θ"),
                        ));
                    }
                    num[(i, j)] = q;
                }
            }
            out.insert(nu.clone(), Part { num, den: LambdaPoly::one(rs.rank()) });
        }
        columns.push(out);
    }
    Ok(SingularVector { normalized: true, columns })
}

/// Check Δ(E_i)φ̃ = (E_i ⊗ 1 + K_i ⊗ E_i)φ̃ = 0 exactly, for a normalized singular vector.
pub fn check_annihilation(verma: &Verma, module: &FiniteModule, sv: &SingularVector) -> Result<()> {
    if !sv.normalized {
        return Err(Error::Invalid("annihilation is checked on the normalized vector".into()));
    }
    let rs = &module.rs;
    let z = zero_depth(module)?;
    for (a, col) in sv.columns.iter().enumerate() {
        for i in 0..rs.rank() {
            let ai = rs.simple_root(i);
            let mut acc: BTreeMap<(Vec<i64>, Vec<i64>), Mat<LambdaPoly>> = BTreeMap::new();
            for (nu, part) in col {
                let depth: Vec<i64> = z.iter().zip(nu).map(|(x, y)| x - y).collect();
                let dm = part.num.cols;
                if nu[i] > 0 {
                    let em = verma.emat(&Spec::Symbolic, i, nu)?;
                    let mut low = nu.clone();
                    low[i] -= 1;
                    let entry = acc
                        .entry((low, depth.clone()))
                        .or_insert_with(|| Mat::filled(em.cols, dm, LambdaPoly::zero()));
                    for t in 0..part.num.rows {
                        for c in 0..em.cols {
                            let e = &em[(t, c)];
                            if e.is_zero() {
                                continue;
                            }
                            for m in 0..dm {
                                let x = &part.num[(t, m)];
                                if !x.is_zero() {
                                    entry[(c, m)].add_assign(&x.mul(e));
                                }
                            }
                        }
                    }
                }
                let emod = module.gen_matrix(Gen::E(i), &depth);
                if emod.rows > 0 {
                    let kshift = rs.pairing(&ai, &wt_from_ints(nu));
                    let kmono = LambdaPoly::monomial(ai.clone(), QScalar::q_pow(-kshift));
                    let mut up = depth.clone();
                    up[i] -= 1;
                    let entry = acc
                        .entry((nu.clone(), up))
                        .or_insert_with(|| Mat::filled(part.num.rows, emod.rows, LambdaPoly::zero()));
                    for t in 0..part.num.rows {
                        for m in 0..dm {
                            let x = &part.num[(t, m)];
                            if x.is_zero() {
                                continue;
                            }
                            let xk = x.mul(&kmono);
                            for m2 in 0..emod.rows {
                                let e = &emod[(m2, m)];
                                if !e.is_zero() {
                                    entry[(t, m2)].add_scaled(&xk, e);
                                }
                            }
                        }
                    }
                }
            }
            if let Some(((lvl, d), _)) = acc.iter().find(|(_, m)| !m.is_zero()) {
                return Err(Error::invariant(
                    "e-annihilation",
                    format!("E_{i} does not kill the singular vector for u_{a}: component M[λ−{lvl:?}] ⊗ U at depth {d:?}"),
                ));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests;
