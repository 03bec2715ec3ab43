//! Elements of M_λ ⊗ U, stored as blocks per (Verma level, module depth).

use std::collections::BTreeMap;

use super::SingularVector;
use crate::error::{Error, Result};
use crate::linalg::{Mat, Ring};
use crate::qfield::QScalar;
use crate::uqg::{FiniteModule, Gen, Verma};

/// A batch of `rows` vectors in M_λ ⊗ U. The block at (μ, d) has one row per vector and
/// columns indexed by (Verma basis index t of M[λ−μ], module basis index m at depth d) as
/// `t·dim + m`.
#[derive(Clone, Debug)]
pub struct MuTensor<T> {
    pub rows: usize,
    pub comps: BTreeMap<(Vec<i64>, Vec<i64>), Mat<T>>,
}

impl<T: Ring> MuTensor<T> {
    pub fn new(rows: usize) -> Self {
        MuTensor { rows, comps: BTreeMap::new() }
    }

    fn block(&mut self, key: (Vec<i64>, Vec<i64>), cols: usize) -> &mut Mat<T> {
        let rows = self.rows;
        self.comps.entry(key).or_insert_with(|| Mat::filled(rows, cols, T::ring_zero()))
    }

    /// Apply Δ(F_i) = F_i ⊗ K_i⁻¹ + 1 ⊗ F_i. When `bound` is given, blocks whose module
    /// depth exceeds it in some coordinate are dropped.
    pub fn apply_f(&self, verma: &Verma, module: &FiniteModule, i: usize, bound: Option<&[i64]>) -> Result<Self> {
        let rs = &module.rs;
        let ai = rs.simple_root(i);
        let mut out: MuTensor<T> = MuTensor::new(self.rows);
        for ((lvl, depth), y) in &self.comps {
            let dm = module.space_dim(depth);
            let p = y.cols / dm.max(1);
            let mut up = lvl.clone();
            up[i] += 1;
            let left_lvl = verma.level(&up)?;
            let left = left_lvl.left[i].as_ref().expect("left matrix above a level");
            let kinv = QScalar::q_pow(-rs.pairing(&ai, &module.weight_at(depth)));
            let p2 = left.cols;
            let blk = out.block((up, depth.clone()), p2 * dm);
            for r in 0..self.rows {
                for t in 0..p {
                    for m in 0..dm {
                        let x = &y[(r, t * dm + m)];
                        if x.is_zero() {
                            continue;
                        }
                        let xk = x.scale_q(&kinv);
                        for t2 in 0..p2 {
                            let l = &left[(t, t2)];
                            if !l.is_zero() {
                                let v = blk[(r, t2 * dm + m)].add(&xk.scale_q(l));
                                blk[(r, t2 * dm + m)] = v;
                            }
                        }
                    }
                }
            }
            let mut d2 = depth.clone();
            d2[i] += 1;
            if bound.is_some_and(|b| d2.iter().zip(b).any(|(x, y)| x > y)) {
                continue;
            }
            let fm = module.gen_matrix(Gen::F(i), depth);
            let dm2 = fm.rows;
            if dm2 == 0 {
                continue;
            }
            let blk = out.block((lvl.clone(), d2), p * dm2);
            for r in 0..self.rows {
                for t in 0..p {
                    for m in 0..dm {
                        let x = &y[(r, t * dm + m)];
                        if x.is_zero() {
                            continue;
                        }
                        for m2 in 0..dm2 {
                            let f = &fm[(m2, m)];
                            if !f.is_zero() {
                                let v = blk[(r, t * dm2 + m2)].add(&x.scale_q(f));
                                blk[(r, t * dm2 + m2)] = v;
                            }
                        }
                    }
                }
            }
        }
        out.comps.retain(|_, m| !m.is_zero());
        Ok(out)
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(|m| m.is_zero())
    }
}

/// Φ̃(w·v_λ) = Δ(w)·φ̃ for every basis vector of U[0]; one single-row tensor per vector.
pub fn intertwiner_image(
    verma: &Verma,
    module: &FiniteModule,
    sv: &SingularVector,
    word: &[u8],
) -> Result<Vec<MuTensor<crate::qfield::LambdaPoly>>> {
    if !sv.normalized {
        return Err(Error::Invalid("intertwiner images are taken of the normalized vector".into()));
    }
    let z = module.zero_depth.clone().ok_or_else(|| Error::Invalid("module has no zero weight space".into()))?;
    let mut out = Vec::new();
    for col in &sv.columns {
        let mut t = MuTensor::new(1);
        for (nu, part) in col {
            let depth: Vec<i64> = z.iter().zip(nu).map(|(a, b)| a - b).collect();
            let dm = part.num.cols;
            let blk = t.block((nu.clone(), depth), part.num.rows * dm);
            for a in 0..part.num.rows {
                for m in 0..dm {
                    blk[(0, a * dm + m)] = part.num[(a, m)].clone();
                }
            }
        }
        for &i in word.iter().rev() {
            t = t.apply_f(verma, module, i as usize, None)?;
        }
        out.push(t);
    }
    Ok(out)
}
