//! Verma modules: F-word bases, the E-action, and contravariant (Shapovalov) forms.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::qfield::{wt_from_ints, wt_neg, LambdaPoly, QScalar, Wt, Q};
use crate::rootdata::RootSystem;

/// A word F_{i₁}···F_{i_l} in the lowering generators (0-based indices).
pub type Word = Vec<u8>;

/// Where the formal highest weight λ is evaluated.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Spec {
    Symbolic,
    At(Wt),
}

/// λ-independent data of the weight space U⁻[μ].
#[derive(Debug)]
pub struct Level {
    pub mu: Vec<i64>,
    pub basis: Vec<Word>,
    /// Basis word t equals F_i · (basis word `idx` of μ − α_i), stored as (i, idx).
    pub parent: Vec<(usize, usize)>,
    /// Per i: the expansion of F_i·b' (b' in the basis of μ − α_i) in the basis of μ; rows index b'.
    pub left: Vec<Option<Mat<QScalar>>>,
    gram0_inv: Mat<QScalar>,
}

type MatCache<K> = RwLock<HashMap<K, Arc<Mat<LambdaPoly>>>>;

pub struct Verma {
    rs: RootSystem,
    lambda0: Wt,
    levels: RwLock<HashMap<Vec<i64>, Arc<Level>>>,
    grams: MatCache<(Spec, Vec<i64>)>,
    emats: MatCache<(Spec, usize, Vec<i64>)>,
}

impl Verma {
    pub fn new(rs: &RootSystem) -> Self {
        Verma {
            rs: rs.clone(),
            lambda0: wt_neg(rs.rho()),
            levels: RwLock::new(HashMap::new()),
            grams: RwLock::new(HashMap::new()),
            emats: RwLock::new(HashMap::new()),
        }
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    fn rank(&self) -> usize {
        self.rs.rank()
    }

    fn zero_rank(&self) -> Vec<Q> {
        self.rs.zero()
    }

    /// c·q^{⟨η,λ⟩+e} under the given specialization.
    fn kmono(&self, spec: &Spec, eta: &[Q], e: Q, c: i64) -> LambdaPoly {
        let cq = QScalar::from_int(c);
        match spec {
            Spec::Symbolic => LambdaPoly::monomial(eta.to_vec(), &cq * &QScalar::q_pow(e)),
            Spec::At(k) => LambdaPoly::constant(self.rank(), &cq * &QScalar::q_pow(e + self.rs.pairing(eta, k))),
        }
    }

    /// Eigenvalue of [K_i;0] = (K_i − K_i⁻¹)/(q_i − q_i⁻¹) on the weight λ − β.
    fn kbracket(&self, spec: &Spec, i: usize, beta: &[Q]) -> LambdaPoly {
        let ai = self.rs.simple_root(i);
        let c = self.rs.pairing(&ai, beta);
        let plus = self.kmono(spec, &ai, -c, 1);
        let minus = self.kmono(spec, &wt_neg(&ai), c, 1);
        let di = Q::from_integer(self.rs.d[i]);
        let denom = &QScalar::q_pow(di) - &QScalar::q_pow(-di);
        plus.sub(&minus).scale(&denom.inv())
    }

    /// E_i applied to F_{w}·v_λ, as a combination of shorter words.
    pub fn apply_e_word(&self, spec: &Spec, i: usize, word: &[u8]) -> Vec<(Word, LambdaPoly)> {
        let mut out = Vec::new();
        let mut beta = self.zero_rank();
        for p in (0..word.len()).rev() {
            if word[p] as usize == i {
                let coeff = self.kbracket(spec, i, &beta);
                if !coeff.is_zero() {
                    let mut w = word.to_vec();
                    w.remove(p);
                    out.push((w, coeff));
                }
            }
            beta[word[p] as usize] += Q::from_integer(1);
        }
        out
    }

    /// E_i applied to a combination of words.
    pub fn apply_e(&self, spec: &Spec, i: usize, v: &HashMap<Word, LambdaPoly>) -> HashMap<Word, LambdaPoly> {
        let mut out: HashMap<Word, LambdaPoly> = HashMap::new();
        for (w, c) in v {
            for (w2, c2) in self.apply_e_word(spec, i, w) {
                let e = out.entry(w2).or_default();
                e.add_assign(&c.mul(&c2));
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    pub fn weight_of(&self, word: &[u8]) -> Vec<i64> {
        let mut mu = vec![0; self.rank()];
        for &j in word {
            mu[j as usize] += 1;
        }
        mu
    }

    /// The λ-independent level data for μ ∈ Q₊, built on demand.
    pub fn level(&self, mu: &[i64]) -> Result<Arc<Level>> {
        if mu.iter().any(|&x| x < 0) {
            return Err(Error::Invalid(format!("weight {mu:?} is not in Q+")));
        }
        if let Some(l) = self.levels.read().unwrap().get(mu) {
            return Ok(l.clone());
        }
        let lvl = Arc::new(self.build_level(mu)?);
        self.levels.write().unwrap().insert(mu.to_vec(), lvl.clone());
        Ok(lvl)
    }

    fn below(&self, mu: &[i64], i: usize) -> Option<Vec<i64>> {
        if mu[i] == 0 {
            return None;
        }
        let mut m = mu.to_vec();
        m[i] -= 1;
        Some(m)
    }

    fn build_level(&self, mu: &[i64]) -> Result<Level> {
        let r = self.rank();
        if mu.iter().all(|&x| x == 0) {
            return Ok(Level {
                mu: mu.to_vec(),
                basis: vec![vec![]],
                parent: vec![],
                left: vec![None; r],
                gram0_inv: Mat::eye(1),
            });
        }
        let spec = Spec::At(self.lambda0.clone());
        let mut cands: Vec<(usize, usize, Word)> = Vec::new();
        let mut lower: Vec<Option<Arc<Level>>> = vec![None; r];
        for (i, slot) in lower.iter_mut().enumerate() {
            if let Some(m) = self.below(mu, i) {
                let l = self.level(&m)?;
                for (idx, b) in l.basis.iter().enumerate() {
                    let mut w = vec![i as u8];
                    w.extend(b);
                    cands.push((i, idx, w));
                }
                *slot = Some(l);
            }
        }
        // Pairings F(c_j, c_k) at λ0 via F(F_i b', w) = F(b', K_i⁻¹ E_i w).
        let n = cands.len();
        let mut gram = Mat::zeros(n, n);
        let mut e_images: Vec<Vec<Option<Vec<QScalar>>>> = vec![vec![None; r]; n];
        for (k, (_, _, w)) in cands.iter().enumerate() {
            for i in 0..r {
                if let Some(lv) = &lower[i] {
                    let mut acc = vec![QScalar::zero(); lv.basis.len()];
                    for (w2, c) in self.apply_e_word(&spec, i, w) {
                        let cv = c.constant_term();
                        let ex = self.expand(&w2)?;
                        for (a, x) in acc.iter_mut().zip(ex) {
                            *a = &*a + &(&cv * &x);
                        }
                    }
                    e_images[k][i] = Some(acc);
                }
            }
        }
        for j in 0..n {
            let (i, idx, _) = cands[j];
            let m = self.below(mu, i).unwrap();
            let g_low = self.gram(&spec, &m)?;
            let kinv = self.kinv_const(&spec, i, &m);
            for k in 0..n {
                let img = e_images[k][i].as_ref().unwrap();
                let mut acc = QScalar::zero();
                for (c, x) in img.iter().enumerate() {
                    if !x.is_zero() {
                        acc = &acc + &(&g_low[(idx, c)].constant_term() * x);
                    }
                }
                gram[(j, k)] = &acc * &kinv;
            }
        }
        let target = self.rs.kostant_partition(mu) as usize;
        let mut chosen: Vec<usize> = Vec::new();
        let mut echelon = Mat::zeros(0, n);
        for j in 0..n {
            let mut trial = Mat::zeros(chosen.len() + 1, n);
            for (a, &c) in chosen.iter().enumerate() {
                for b in 0..n {
                    trial[(a, b)] = gram[(c, b)].clone();
                }
            }
            for b in 0..n {
                trial[(chosen.len(), b)] = gram[(j, b)].clone();
            }
            if trial.rank() > chosen.len() {
                chosen.push(j);
                echelon = trial;
            }
            if chosen.len() == target {
                break;
            }
        }
        let _ = echelon;
        if chosen.len() != target {
            return Err(Error::invariant(
                "verma-rank",
                format!("weight {mu:?}: reached rank {} but Par = {target}", chosen.len()),
            ));
        }
        let p = chosen.len();
        let mut g0 = Mat::zeros(p, p);
        for a in 0..p {
            for b in 0..p {
                g0[(a, b)] = gram[(chosen[a], chosen[b])].clone();
            }
        }
        let g0inv = g0.inverse().ok_or_else(|| Error::invariant("verma-rank", "singular Gram matrix at λ0"))?;
        let mut left: Vec<Option<Mat<QScalar>>> = vec![None; r];
        for i in 0..r {
            if let Some(lv) = &lower[i] {
                let mut m = Mat::zeros(lv.basis.len(), p);
                for (k, (ci, idx, _)) in cands.iter().enumerate() {
                    if *ci != i {
                        continue;
                    }
                    let rhs: Vec<QScalar> = chosen.iter().map(|&c| gram[(c, k)].clone()).collect();
                    for t in 0..p {
                        let mut acc = QScalar::zero();
                        for s in 0..p {
                            acc = &acc + &(&g0inv[(t, s)] * &rhs[s]);
                        }
                        m[(*idx, t)] = acc;
                    }
                }
                left[i] = Some(m);
            }
        }
        Ok(Level {
            mu: mu.to_vec(),
            basis: chosen.iter().map(|&c| cands[c].2.clone()).collect(),
            parent: chosen.iter().map(|&c| (cands[c].0, cands[c].1)).collect(),
            left,
            gram0_inv: g0inv,
        })
    }

    /// K_i⁻¹ on the weight λ − m (a monomial under the given specialization).
    fn kinv(&self, spec: &Spec, i: usize, m: &[i64]) -> LambdaPoly {
        let ai = self.rs.simple_root(i);
        let c = self.rs.pairing(&ai, &wt_from_ints(m));
        self.kmono(spec, &wt_neg(&ai), c, 1)
    }

    fn kinv_const(&self, spec: &Spec, i: usize, m: &[i64]) -> QScalar {
        self.kinv(spec, i, m).constant_term()
    }

    /// Coordinates of a word in the basis of its weight space.
    pub fn expand(&self, word: &[u8]) -> Result<Vec<QScalar>> {
        let mut mu = vec![0i64; self.rank()];
        let mut v = vec![QScalar::one()];
        for &j in word.iter().rev() {
            mu[j as usize] += 1;
            let lvl = self.level(&mu)?;
            let left = lvl.left[j as usize].as_ref().expect("left matrix exists above a nonzero level");
            v = row_times(&v, left);
        }
        Ok(v)
    }

    /// Coordinates of F_i·b where b has coordinates `v` in the basis of μ.
    pub fn lower_by(&self, i: usize, mu: &[i64], v: &[QScalar]) -> Result<Vec<QScalar>> {
        let mut m = mu.to_vec();
        m[i] += 1;
        let lvl = self.level(&m)?;
        Ok(row_times(v, lvl.left[i].as_ref().unwrap()))
    }

    /// Matrix of E_i from M[λ−μ] to M[λ−μ+α_i] in the chosen bases; rows index the source basis.
    pub fn emat(&self, spec: &Spec, i: usize, mu: &[i64]) -> Result<Arc<Mat<LambdaPoly>>> {
        let key = (spec.clone(), i, mu.to_vec());
        if let Some(m) = self.emats.read().unwrap().get(&key) {
            return Ok(m.clone());
        }
        let lvl = self.level(mu)?;
        let m = match self.below(mu, i) {
            None => Mat::filled(lvl.basis.len(), 0, LambdaPoly::zero()),
            Some(low) => {
                let ll = self.level(&low)?;
                let mut m = Mat::filled(lvl.basis.len(), ll.basis.len(), LambdaPoly::zero());
                for (t, w) in lvl.basis.iter().enumerate() {
                    for (w2, c) in self.apply_e_word(spec, i, w) {
                        let ex = self.expand(&w2)?;
                        for (col, x) in ex.iter().enumerate() {
                            if !x.is_zero() {
                                m[(t, col)].add_scaled(&c, x);
                            }
                        }
                    }
                }
                m
            }
        };
        let m = Arc::new(m);
        self.emats.write().unwrap().insert(key, m.clone());
        Ok(m)
    }

    /// The Shapovalov matrix F_μ(λ) in the chosen basis.
    pub fn gram(&self, spec: &Spec, mu: &[i64]) -> Result<Arc<Mat<LambdaPoly>>> {
        let key = (spec.clone(), mu.to_vec());
        if let Some(m) = self.grams.read().unwrap().get(&key) {
            return Ok(m.clone());
        }
        let lvl = self.level(mu)?;
        let p = lvl.basis.len();
        let mut g = Mat::filled(p, p, LambdaPoly::zero());
        if mu.iter().all(|&x| x == 0) {
            g[(0, 0)] = LambdaPoly::one(self.rank());
        } else {
            for s in 0..p {
                let (i, idx) = lvl.parent[s];
                let low = self.below(mu, i).unwrap();
                let glow = self.gram(spec, &low)?;
                let e = self.emat(spec, i, mu)?;
                let kinv = self.kinv(spec, i, &low);
                for t in 0..p {
                    let mut acc = LambdaPoly::zero();
                    for c in 0..glow.cols {
                        let a = &glow[(idx, c)];
                        let b = &e[(t, c)];
                        if !a.is_zero() && !b.is_zero() {
                            acc.add_assign(&a.mul(b));
                        }
                    }
                    g[(s, t)] = acc.mul(&kinv);
                }
            }
        }
        let g = Arc::new(g);
        self.grams.write().unwrap().insert(key, g.clone());
        Ok(g)
    }

    /// The contravariant pairing F(w₁v_λ, w₂v_λ) of two words.
    pub fn pairing(&self, spec: &Spec, w1: &[u8], w2: &[u8]) -> Result<LambdaPoly> {
        let mu = self.weight_of(w1);
        if mu != self.weight_of(w2) {
            return Ok(LambdaPoly::zero());
        }
        let a = self.expand(w1)?;
        let b = self.expand(w2)?;
        let g = self.gram(spec, &mu)?;
        let mut acc = LambdaPoly::zero();
        for (s, x) in a.iter().enumerate() {
            for (t, y) in b.iter().enumerate() {
                if !x.is_zero() && !y.is_zero() {
                    acc.add_scaled(&g[(s, t)], &(x * y));
                }
            }
        }
        Ok(acc)
    }

    /// Inverse of the Shapovalov matrix at λ0 = −ρ (used to solve for expansions).
    pub fn gram0_inverse(&self, mu: &[i64]) -> Result<Mat<QScalar>> {
        Ok(self.level(mu)?.gram0_inv.clone())
    }

    /// The product formula ∏_{α>0}∏_{n≥1}(1 − q^{−2⟨α,λ+ρ⟩+n⟨α,α⟩})^{Par(μ−nα)}.
    pub fn predicted_determinant(&self, mu: &[i64]) -> LambdaPoly {
        let r = self.rank();
        let mut acc = LambdaPoly::one(r);
        for a in self.rs.positive_roots() {
            let aw = wt_from_ints(a);
            let aa = self.rs.pairing(&aw, &aw);
            let ar = self.rs.pairing(&aw, self.rs.rho());
            for n in 1.. {
                let rest: Vec<i64> = mu.iter().zip(a).map(|(m, x)| m - n * x).collect();
                if rest.iter().any(|&x| x < 0) {
                    break;
                }
                let par = self.rs.kostant_partition(&rest);
                if par == 0 {
                    continue;
                }
                let eta: Wt = aw.iter().map(|x| x * Q::from_integer(-2)).collect();
                let e = Q::from_integer(-2) * ar + Q::from_integer(n) * aa;
                let factor = LambdaPoly::one(r).add(&LambdaPoly::monomial(eta, -QScalar::q_pow(e)));
                for _ in 0..par {
                    acc = acc.mul(&factor);
                }
            }
        }
        acc
    }
}

pub(crate) fn row_times(v: &[QScalar], m: &Mat<QScalar>) -> Vec<QScalar> {
    let mut out = vec![QScalar::zero(); m.cols];
    for (r, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (c, o) in out.iter_mut().enumerate() {
            let y = &m[(r, c)];
            if !y.is_zero() {
                *o = &*o + &(x * y);
            }
        }
    }
    out
}
