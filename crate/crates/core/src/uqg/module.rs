//! Finite-dimensional irreducible modules, realized as quotients of Verma modules by the
//! kernel of the contravariant form.

use std::collections::{BTreeMap, VecDeque};

use serde_json::{json, Value};

use super::verma::{row_times, Spec, Verma};
use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::qfield::{wt_from_ints, wt_sub, wt_to_ints, QScalar, Wt, Q};
use crate::rootdata::RootSystem;

pub const DEFAULT_DIM_CAP: usize = 64;

/// Which generator acts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    E(usize),
    F(usize),
}

#[derive(Clone, Debug)]
pub struct FiniteModule {
    pub rs: RootSystem,
    /// Highest weight in simple-root coordinates.
    pub theta: Wt,
    /// Weight spaces, keyed by depth μ (the weight is θ − μ); value is the dimension.
    pub spaces: BTreeMap<Vec<i64>, usize>,
    /// Chosen Verma basis indices spanning each weight space.
    pub selected: BTreeMap<Vec<i64>, Vec<usize>>,
    /// Matrices of E_i and F_i keyed by (i, source depth); rows index the target basis.
    e: BTreeMap<(usize, Vec<i64>), Mat<QScalar>>,
    f: BTreeMap<(usize, Vec<i64>), Mat<QScalar>>,
    /// Depth of the zero weight, when θ lies in the root lattice.
    pub zero_depth: Option<Vec<i64>>,
    /// k_α for each positive root, in the order of `rs.positive_roots()`.
    pub k: Vec<i64>,
    /// Θ = Σ k_α α.
    pub big_theta: Vec<i64>,
}

impl FiniteModule {
    /// Build the irreducible module of highest weight θ (simple-root coordinates).
    pub fn build(verma: &Verma, theta: &[Q], cap: usize) -> Result<Self> {
        let rs = verma.root_system().clone();
        if !rs.is_integral(theta) || !rs.is_dominant(theta) {
            return Err(Error::Invalid(format!("highest weight {theta:?} is not dominant integral")));
        }
        let wd = rs.weyl_dimension(theta);
        if wd > Q::from_integer(cap as i64) {
            return Err(Error::Resource(format!("module dimension {wd} exceeds cap {cap}")));
        }
        let r = rs.rank();
        let spec = Spec::At(theta.to_vec());
        let mut spaces = BTreeMap::new();
        let mut selected = BTreeMap::new();
        let mut proj: BTreeMap<Vec<i64>, Mat<QScalar>> = BTreeMap::new();
        let mut queue = VecDeque::from([vec![0i64; r]]);
        let mut visited = std::collections::HashSet::new();
        while let Some(mu) = queue.pop_front() {
            if !visited.insert(mu.clone()) {
                continue;
            }
            let g = verma.gram(&spec, &mu)?.map(|x| x.constant_term());
            let n = g.rows;
            let mut sel: Vec<usize> = Vec::new();
            for j in 0..n {
                let mut trial = Mat::zeros(sel.len() + 1, n);
                for (a, &s) in sel.iter().chain(std::iter::once(&j)).enumerate() {
                    for b in 0..n {
                        trial[(a, b)] = g[(s, b)].clone();
                    }
                }
                if trial.rank() == sel.len() + 1 {
                    sel.push(j);
                }
            }
            if sel.is_empty() {
                continue;
            }
            let p = sel.len();
            let mut gss = Mat::zeros(p, p);
            let mut gsa = Mat::zeros(p, n);
            for a in 0..p {
                for b in 0..p {
                    gss[(a, b)] = g[(sel[a], sel[b])].clone();
                }
                for b in 0..n {
                    gsa[(a, b)] = g[(sel[a], b)].clone();
                }
            }
            let inv = gss.inverse().ok_or_else(|| Error::invariant("module-basis", "selected Gram block is singular"))?;
            proj.insert(mu.clone(), inv.mul(&gsa));
            spaces.insert(mu.clone(), p);
            selected.insert(mu.clone(), sel);
            for i in 0..r {
                let mut m = mu.clone();
                m[i] += 1;
                queue.push_back(m);
            }
        }
        let total: usize = spaces.values().sum();
        if Q::from_integer(total as i64) != wd {
            return Err(Error::invariant("weyl-dimension", format!("built dimension {total}, Weyl formula gives {wd}")));
        }
        let mut e = BTreeMap::new();
        let mut f = BTreeMap::new();
        for (mu, sel) in &selected {
            for i in 0..r {
                let mut up = mu.clone();
                up[i] += 1;
                if let Some(pu) = proj.get(&up) {
                    let mut m = Mat::zeros(pu.rows, sel.len());
                    let lvl = verma.level(&up)?;
                    let left = lvl.left[i].as_ref().unwrap();
                    for (s, &t) in sel.iter().enumerate() {
                        let coords = left.row(t);
                        let img = mat_vec(pu, coords);
                        for (a, x) in img.into_iter().enumerate() {
                            m[(a, s)] = x;
                        }
                    }
                    f.insert((i, mu.clone()), m);
                }
                if mu[i] > 0 {
                    let mut down = mu.clone();
                    down[i] -= 1;
                    if let Some(pd) = proj.get(&down) {
                        let em = verma.emat(&spec, i, mu)?;
                        let mut m = Mat::zeros(pd.rows, sel.len());
                        for (s, &t) in sel.iter().enumerate() {
                            let coords: Vec<QScalar> = em.row(t).iter().map(|x| x.constant_term()).collect();
                            let img = mat_vec(pd, &coords);
                            for (a, x) in img.into_iter().enumerate() {
                                m[(a, s)] = x;
                            }
                        }
                        e.insert((i, mu.clone()), m);
                    }
                }
            }
        }
        let zero_depth = wt_to_ints(theta).filter(|z| spaces.contains_key(z));
        let mut k = Vec::new();
        let mut big_theta = vec![0i64; r];
        for a in rs.positive_roots() {
            let mut ka = 0;
            if let Some(z) = &zero_depth {
                loop {
                    let d: Vec<i64> = z.iter().zip(a).map(|(x, y)| x - (ka + 1) * y).collect();
                    if spaces.contains_key(&d) {
                        ka += 1;
                    } else {
                        break;
                    }
                }
            }
            for (t, y) in big_theta.iter_mut().zip(a) {
                *t += ka * y;
            }
            k.push(ka);
        }
        let module = FiniteModule { rs, theta: theta.to_vec(), spaces, selected, e, f, zero_depth, k, big_theta };
        module.verify()?;
        Ok(module)
    }

    pub fn dim(&self) -> usize {
        self.spaces.values().sum()
    }

    pub fn space_dim(&self, mu: &[i64]) -> usize {
        self.spaces.get(mu).copied().unwrap_or(0)
    }

    pub fn zero_dim(&self) -> usize {
        self.zero_depth.as_ref().map(|z| self.space_dim(z)).unwrap_or(0)
    }

    /// The actual weight θ − μ of the space at depth μ.
    pub fn weight_at(&self, mu: &[i64]) -> Wt {
        wt_sub(&self.theta, &wt_from_ints(mu))
    }

    /// Depth μ of the actual weight ν (with θ − μ = ν), when it is a weight of the module.
    pub fn depth_of(&self, nu: &[i64]) -> Option<Vec<i64>> {
        let z = self.zero_depth.as_ref()?;
        let d: Vec<i64> = z.iter().zip(nu).map(|(a, b)| a - b).collect();
        self.spaces.contains_key(&d).then_some(d)
    }

    fn target(&self, g: Gen, mu: &[i64]) -> Vec<i64> {
        let mut t = mu.to_vec();
        match g {
            Gen::E(i) => t[i] -= 1,
            Gen::F(i) => t[i] += 1,
        }
        t
    }

    /// Matrix of a generator from the space at depth μ to its target space (zero-sized when absent).
    pub fn gen_matrix(&self, g: Gen, mu: &[i64]) -> Mat<QScalar> {
        let t = self.target(g, mu);
        let src = self.space_dim(mu);
        let dst = if t.iter().any(|&x| x < 0) { 0 } else { self.space_dim(&t) };
        let stored = match g {
            Gen::E(i) => self.e.get(&(i, mu.to_vec())),
            Gen::F(i) => self.f.get(&(i, mu.to_vec())),
        };
        stored.cloned().unwrap_or_else(|| Mat::zeros(dst, src))
    }

    /// Eigenvalue of K_i on the space at depth μ.
    pub fn k_eigen(&self, i: usize, mu: &[i64]) -> QScalar {
        let ai = self.rs.simple_root(i);
        QScalar::q_pow(self.rs.pairing(&ai, &self.weight_at(mu)))
    }

    /// Apply a generator to a vector in the space at depth μ; returns the new depth and vector.
    pub fn act(&self, g: Gen, mu: &[i64], v: &[QScalar]) -> (Vec<i64>, Vec<QScalar>) {
        let m = self.gen_matrix(g, mu);
        (self.target(g, mu), mat_vec(&m, v))
    }

    /// Apply generators in sequence (the first listed acts first), returning the composite matrix.
    pub fn path(&self, gens: &[Gen], mu: &[i64]) -> (Vec<i64>, Mat<QScalar>) {
        let mut cur = mu.to_vec();
        let mut acc = Mat::eye(self.space_dim(mu));
        for &g in gens {
            if acc.rows == 0 {
                let t = self.target(g, &cur);
                let d = if t.iter().any(|&x| x < 0) { 0 } else { self.space_dim(&t) };
                acc = Mat::zeros(d, acc.cols);
                cur = t;
                continue;
            }
            let m = self.gen_matrix(g, &cur);
            acc = m.mul(&acc);
            cur = self.target(g, &cur);
        }
        (cur, acc)
    }

    /// ω applied to an F-word: (−1)^l E_{i₁}···E_{i_l} acting on v (E_{i_l} acts first).
    pub fn omega_word(&self, word: &[u8], mu: &[i64], v: &[QScalar]) -> (Vec<i64>, Vec<QScalar>) {
        let gens: Vec<Gen> = word.iter().rev().map(|&i| Gen::E(i as usize)).collect();
        let (t, m) = self.path(&gens, mu);
        let mut out = mat_vec(&m, v);
        if word.len() % 2 == 1 {
            out.iter_mut().for_each(|x| *x = -&*x);
        }
        (t, out)
    }

    /// The matrix of F_i^n E_i^n restricted to U[0].
    pub fn fe_power_action(&self, i: usize, n: usize) -> Result<Mat<QScalar>> {
        let z = self.zero_depth.clone().ok_or_else(|| Error::Invalid("module has no zero weight".into()))?;
        let mut gens = vec![Gen::E(i); n];
        gens.extend(vec![Gen::F(i); n]);
        Ok(self.path(&gens, &z).1)
    }

    fn verify(&self) -> Result<()> {
        let r = self.rs.rank();
        for mu in self.spaces.keys() {
            for i in 0..r {
                for j in 0..r {
                    let (_, ef) = self.path(&[Gen::F(j), Gen::E(i)], mu);
                    let (_, fe) = self.path(&[Gen::E(i), Gen::F(j)], mu);
                    let mut lhs = ef.sub(&fe);
                    if i == j {
                        let di = Q::from_integer(self.rs.d[i]);
                        let kk = self.k_eigen(i, mu);
                        let br = &(&kk - &kk.inv()) / &(&QScalar::q_pow(di) - &QScalar::q_pow(-di));
                        lhs = lhs.sub(&Mat::eye(lhs.rows).scale(&br));
                    }
                    if !lhs.is_zero() {
                        return Err(Error::invariant("ef-relation", format!("E{i}F{j} relation fails at depth {mu:?}")));
                    }
                    if i != j {
                        for pick in [Gen::E as fn(usize) -> Gen, Gen::F] {
                            if !self.serre_vanishes(pick, i, j, mu) {
                                return Err(Error::invariant("serre", format!("Serre relation ({i},{j}) fails at depth {mu:?}")));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    fn serre_vanishes(&self, g: fn(usize) -> Gen, i: usize, j: usize, mu: &[i64]) -> bool {
        let m = (1 - self.rs.cartan[i][j]) as usize;
        let mut acc: Option<Mat<QScalar>> = None;
        for s in 0..=m {
            // X_i^{m−s} X_j X_i^s: the rightmost factor acts first.
            let mut gens = vec![g(i); s];
            gens.push(g(j));
            gens.extend(vec![g(i); m - s]);
            let (_, mat) = self.path(&gens, mu);
            let mut c = QScalar::q_binomial(m as i64, s as i64, self.rs.d[i]);
            if s % 2 == 1 {
                c = -c;
            }
            let term = mat.scale(&c);
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term),
            });
        }
        acc.map(|a| a.is_zero()).unwrap_or(true)
    }

    pub fn to_json(&self) -> Value {
        let spaces: Vec<Value> = self
            .spaces
            .iter()
            .map(|(mu, d)| json!({"depth": mu, "weight": self.weight_at(mu).iter().map(|x| x.to_string()).collect::<Vec<_>>(), "dim": d}))
            .collect();
        let mats = |m: &BTreeMap<(usize, Vec<i64>), Mat<QScalar>>| -> Vec<Value> {
            m.iter()
                .map(|((i, mu), mat)| {
                    let rows: Vec<Vec<String>> =
                        (0..mat.rows).map(|a| mat.row(a).iter().map(|x| x.to_string()).collect()).collect();
                    json!({"index": i, "from_depth": mu, "matrix": rows})
                })
                .collect()
        };
        json!({
            "theta": self.theta.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "dim": self.dim(),
            "spaces": spaces,
            "k": self.k,
            "Theta": self.big_theta,
            "E": mats(&self.e),
            "F": mats(&self.f),
        })
    }
}

pub(crate) fn mat_vec(m: &Mat<QScalar>, v: &[QScalar]) -> Vec<QScalar> {
    row_times(v, &m.transpose())
}

