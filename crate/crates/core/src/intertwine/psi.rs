//! Partial traces B_μ(λ) and the Ψ-function series.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use super::tensor::MuTensor;
use super::{chi, SingularVector};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::qfield::{LambdaPoly, QScalar, Wt, Q};
use crate::rootdata::RootSystem;
use crate::uqg::{FiniteModule, Verma};

/// Ψ(λ, x) = e^{⟨λ,x⟩} Σ_μ B_μ(λ) e^{−⟨μ,x⟩}, truncated at height(μ) ≤ depth.
///
/// Each B_μ is an End(U[0])-valued q-polynomial; entry (b, a) is the u_b-coefficient of the
/// image of u_a.
#[derive(Clone, Debug)]
pub struct PsiSeries {
    pub rs: RootSystem,
    pub theta: Wt,
    pub k: Vec<i64>,
    pub big_theta: Vec<i64>,
    pub chi: LambdaPoly,
    pub dim0: usize,
    pub depth: usize,
    pub terms: BTreeMap<Vec<i64>, Mat<LambdaPoly>>,
}

impl PsiSeries {
    pub fn b(&self, mu: &[i64]) -> Option<&Mat<LambdaPoly>> {
        self.terms.get(mu)
    }

    /// B_μ, or the zero matrix for μ ∉ Q₊; panics past the truncation depth.
    pub fn b_or_zero(&self, mu: &[i64]) -> Mat<LambdaPoly> {
        if mu.iter().any(|&x| x < 0) {
            return Mat::filled(self.dim0, self.dim0, LambdaPoly::zero());
        }
        assert!(RootSystem::height(mu) as usize <= self.depth, "B_{mu:?} is beyond the truncation depth");
        self.terms[mu].clone()
    }

    /// Every exponent of every B_μ lies in −2·L_θ.
    pub fn check_support(&self) -> Result<()> {
        let (boxset, _) = self.rs.support_box(&self.k);
        let allowed: BTreeSet<Vec<Q>> = boxset.iter().map(|m| m.iter().map(|&x| Q::from_integer(-2 * x)).collect()).collect();
        for (mu, b) in &self.terms {
            for e in b.entries() {
                if let Some(bad) = e.support().into_iter().find(|x| !allowed.contains(x)) {
                    return Err(Error::invariant("psi-support", format!("B_{mu:?} has exponent {bad:?} outside −2·L_θ")));
                }
            }
        }
        Ok(())
    }

    /// The x-series P_ν(x) multiplying q^{−2⟨ν,λ+ρ⟩}: map from μ to the coefficient of e^{−⟨μ,x⟩}.
    pub fn p_series(&self, nu: &[i64]) -> BTreeMap<Vec<i64>, Mat<QScalar>> {
        let eta: Wt = nu.iter().map(|&x| Q::from_integer(-2 * x)).collect();
        let nuw: Wt = nu.iter().map(|&x| Q::from_integer(x)).collect();
        let unit = QScalar::q_pow(Q::from_integer(2) * self.rs.pairing(&nuw, self.rs.rho()));
        let mut out = BTreeMap::new();
        for (mu, b) in &self.terms {
            let m = b.map(|e| e.coeff(&eta).mul_ref(&unit));
            if !m.is_zero() {
                out.insert(mu.clone(), m);
            }
        }
        out
    }

    /// B_μ(κ) for every μ.
    pub fn evaluate(&self, kappa: &[Q]) -> BTreeMap<Vec<i64>, Mat<QScalar>> {
        self.terms.iter().map(|(mu, b)| (mu.clone(), b.map(|e| e.evaluate(self.rs.form(), kappa)))).collect()
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(mu, b)| {
                let rows: Vec<Vec<String>> = (0..b.rows).map(|i| b.row(i).iter().map(|e| e.canonical_text()).collect()).collect();
                json!({"mu": mu, "B": rows})
            })
            .collect();
        json!({
            "cartan": self.rs.cartan,
            "theta": self.theta.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "k": self.k,
            "Theta": self.big_theta,
            "chi": self.chi.canonical_text(),
            "depth": self.depth,
            "terms": terms,
        })
    }
}

/// Compute B_μ for all μ of height ≤ depth from a normalized singular vector.
pub fn psi_series(verma: &Verma, module: &FiniteModule, sv: &SingularVector, depth: usize) -> Result<PsiSeries> {
    if !sv.normalized {
        return Err(Error::Invalid("Ψ is built from the normalized singular vector".into()));
    }
    let rs = &module.rs;
    let z = module.zero_depth.clone().ok_or_else(|| Error::Invalid("module has no zero weight space".into()))?;
    let d0 = module.space_dim(&z);
    // Sources: basis tensors g_t^ν v ⊗ e_m on which some φ̃_a has a nonzero coefficient.
    let mut sources: Vec<(Vec<i64>, usize, usize)> = Vec::new();
    let mut seen = BTreeSet::new();
    for col in &sv.columns {
        for (nu, part) in col {
            for t in 0..part.num.rows {
                for m in 0..part.num.cols {
                    if !part.num[(t, m)].is_zero() && seen.insert((nu.clone(), t, m)) {
                        sources.push((nu.clone(), t, m));
                    }
                }
            }
        }
    }
    sources.sort();
    let coeff: Vec<Vec<LambdaPoly>> = sv
        .columns
        .iter()
        .map(|col| {
            sources
                .iter()
                .map(|(nu, t, m)| col.get(nu).map(|p| p.num[(*t, *m)].clone()).unwrap_or_default())
                .collect()
        })
        .collect();
    let nsrc = sources.len();
    let mut init = MuTensor::<QScalar>::new(nsrc);
    for (r, (nu, t, m)) in sources.iter().enumerate() {
        let dep: Vec<i64> = z.iter().zip(nu).map(|(a, b)| a - b).collect();
        let dm = module.space_dim(&dep);
        let p = verma.level(nu)?.basis.len();
        let blk = init.comps.entry((nu.clone(), dep)).or_insert_with(|| Mat::zeros(nsrc, p * dm));
        blk[(r, t * dm + m)] = QScalar::one();
    }
    let mut terms = BTreeMap::new();
    let mut layer: BTreeMap<Vec<i64>, Vec<MuTensor<QScalar>>> = BTreeMap::new();
    layer.insert(vec![0; rs.rank()], vec![init]);
    for h in 0..=depth as i64 {
        if h > 0 {
            let mus = rs.q_plus_of_height(h);
            let prev = &layer;
            let computed = parallel_map(&mus, |mu| -> Result<Vec<MuTensor<QScalar>>> {
                let lvl = verma.level(mu)?;
                let mut ys = Vec::with_capacity(lvl.basis.len());
                for &(i, idx) in &lvl.parent {
                    let mut low = mu.clone();
                    low[i] -= 1;
                    ys.push(prev[&low][idx].apply_f(verma, module, i, Some(&z))?);
                }
                Ok(ys)
            })?;
            layer = mus.into_iter().zip(computed).collect();
        }
        for (mu, ys) in &layer {
            let mut tr = Mat::zeros(nsrc, d0);
            for (s, y) in ys.iter().enumerate() {
                if let Some(blk) = y.comps.get(&(mu.clone(), z.clone())) {
                    for r in 0..nsrc {
                        for b in 0..d0 {
                            let x = &blk[(r, s * d0 + b)];
                            if !x.is_zero() {
                                tr[(r, b)] = &tr[(r, b)] + x;
                            }
                        }
                    }
                }
            }
            let mut bmat = Mat::filled(d0, d0, LambdaPoly::zero());
            for (a, ca) in coeff.iter().enumerate() {
                for (r, c) in ca.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    for b in 0..d0 {
                        let x = &tr[(r, b)];
                        if !x.is_zero() {
                            bmat[(b, a)].add_scaled(c, x);
                        }
                    }
                }
            }
            terms.insert(mu.clone(), bmat);
        }
    }
    Ok(PsiSeries {
        rs: rs.clone(),
        theta: module.theta.clone(),
        k: module.k.clone(),
        big_theta: module.big_theta.clone(),
        chi: chi(rs, &module.k),
        dim0: d0,
        depth,
        terms,
    })
}

/// Map `f` over `items` on scoped worker threads, preserving order.
pub(crate) fn parallel_map<I: Sync, O: Send, F>(items: &[I], f: F) -> Result<Vec<O>>
where
    F: Fn(&I) -> Result<O> + Sync,
{
    let workers = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1).min(items.len().max(1));
    if workers <= 1 {
        return items.iter().map(&f).collect();
    }
    let chunk = items.len().div_ceil(workers);
    let results: Vec<Result<Vec<O>>> = std::thread::scope(|s| {
        let handles: Vec<_> =
            items.chunks(chunk).map(|c| s.spawn(|| c.iter().map(&f).collect::<Result<Vec<O>>>())).collect();
        handles.into_iter().map(|h| h.join().expect("worker thread panicked")).collect()
    });
    let mut out = Vec::with_capacity(items.len());
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}
