//! Root systems, Weyl groups and Kostant partitions for finite-type Cartan matrices.
//!
//! Weights are written in the simple-root basis. The pairing is the symmetrized form
//! ⟨α_i,α_j⟩ = d_i a_ij, and fundamental weights satisfy ⟨Λ_i, α_j^∨⟩ = δ_ij.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::qfield::{wt_add, wt_from_ints, wt_sub, Form, Wt, Q};

pub const WEYL_CAP: usize = 10_000;

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub label: String,
    pub cartan: Vec<Vec<i64>>,
    pub d: Vec<i64>,
    form: Form,
    fundamental: Vec<Wt>,
    rho: Wt,
    positive: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    pub word: Vec<usize>,
    /// Action on simple-root coordinates (column vectors).
    pub matrix: Vec<Vec<i64>>,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn sign(&self) -> i64 {
        if self.word.len().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn act(&self, mu: &[Q]) -> Wt {
        self.matrix.iter().map(|row| row.iter().zip(mu).map(|(a, x)| x * *a).sum()).collect()
    }
}

fn cartan_for_label(label: &str) -> Result<Vec<Vec<i64>>> {
    let bad = || Error::Invalid(format!("unknown root-system label {label:?}"));
    let (kind, n) = label.split_at(1);
    let n: usize = n.parse().map_err(|_| bad())?;
    match (kind, n) {
        ("A", 1..=8) => {
            let mut a = vec![vec![0; n]; n];
            for i in 0..n {
                a[i][i] = 2;
                if i + 1 < n {
                    a[i][i + 1] = -1;
                    a[i + 1][i] = -1;
                }
            }
            Ok(a)
        }
        ("B", 2) => Ok(vec![vec![2, -1], vec![-2, 2]]),
        ("G", 2) => Ok(vec![vec![2, -1], vec![-3, 2]]),
        _ => Err(bad()),
    }
}

fn symmetrizer(a: &[Vec<i64>]) -> Result<Vec<i64>> {
    let n = a.len();
    let mut d: Vec<Option<Q>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Q::from_integer(1));
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for j in 0..n {
                if i == j || a[i][j] == 0 {
                    continue;
                }
                if a[j][i] == 0 {
                    return Err(Error::Invalid("Cartan matrix is not symmetrizable".into()));
                }
                let dj = d[i].unwrap() * Q::new(a[i][j], a[j][i]);
                match d[j] {
                    None => {
                        d[j] = Some(dj);
                        queue.push_back(j);
                    }
                    Some(x) if x != dj => return Err(Error::Invalid("Cartan matrix is not symmetrizable".into())),
                    _ => {}
                }
            }
        }
    }
    let d: Vec<Q> = d.into_iter().map(|x| x.unwrap()).collect();
    let l = d.iter().fold(1i64, |acc, x| num_integer::lcm(acc, *x.denom()));
    let ints: Vec<i64> = d.iter().map(|x| (x * Q::from_integer(l)).to_integer()).collect();
    let g = ints.iter().fold(0i64, |acc, x| num_integer::gcd(acc, *x));
    Ok(ints.into_iter().map(|x| x / g).collect())
}

/// Solve X·B = R row by row over ℚ (B square, invertible).
fn solve_right(b: &[Vec<Q>], rhs: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let n = b.len();
    // Transpose: X·B = R  <=>  Bᵀ·Xᵀ = Rᵀ.
    let mut out = Vec::new();
    for r in rhs {
        let mut aug: Vec<Vec<Q>> = (0..n).map(|i| {
            let mut row: Vec<Q> = (0..n).map(|j| b[j][i]).collect();
            row.push(r[i]);
            row
        }).collect();
        for c in 0..n {
            let p = (c..n).find(|&i| aug[i][c] != Q::from_integer(0)).expect("singular form");
            aug.swap(c, p);
            let inv = Q::from_integer(1) / aug[c][c];
            for x in aug[c].iter_mut() {
                *x *= inv;
            }
            for i in 0..n {
                if i != c && aug[i][c] != Q::from_integer(0) {
                    let f = aug[i][c];
                    for j in 0..=n {
                        let v = aug[c][j];
                        aug[i][j] -= f * v;
                    }
                }
            }
        }
        out.push((0..n).map(|i| aug[i][n]).collect());
    }
    out
}

fn leading_minor(b: &[Vec<Q>], k: usize) -> Q {
    let mut m: Vec<Vec<Q>> = (0..k).map(|i| b[i][..k].to_vec()).collect();
    let mut det = Q::from_integer(1);
    for c in 0..k {
        let Some(p) = (c..k).find(|&i| m[i][c] != Q::from_integer(0)) else {
            return Q::from_integer(0);
        };
        if p != c {
            m.swap(p, c);
            det = -det;
        }
        det *= m[c][c];
        for i in c + 1..k {
            let f = m[i][c] / m[c][c];
            for j in c..k {
                let v = m[c][j];
                m[i][j] -= f * v;
            }
        }
    }
    det
}

impl RootSystem {
    /// Build from a label ("A1".."A8", "B2", "G2").
    pub fn from_label(label: &str) -> Result<Self> {
        let a = cartan_for_label(label)?;
        let mut rs = RootSystem::from_cartan(a)?;
        rs.label = label.to_string();
        Ok(rs)
    }

    pub fn from_cartan(a: Vec<Vec<i64>>) -> Result<Self> {
        let n = a.len();
        if n == 0 || a.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("Cartan matrix must be square and nonempty".into()));
        }
        for i in 0..n {
            if a[i][i] != 2 {
                return Err(Error::Invalid("Cartan matrix diagonal must be 2".into()));
            }
            for j in 0..n {
                if i != j && (a[i][j] > 0 || (a[i][j] == 0) != (a[j][i] == 0)) {
                    return Err(Error::Invalid("invalid off-diagonal Cartan entries".into()));
                }
            }
        }
        let d = symmetrizer(&a)?;
        let b: Vec<Vec<Q>> = (0..n).map(|i| (0..n).map(|j| Q::from_integer(d[i] * a[i][j])).collect()).collect();
        for k in 1..=n {
            let m = leading_minor(&b, k);
            if m <= Q::from_integer(0) {
                return Err(Error::NotFiniteType { order: k, value: m.to_string() });
            }
        }
        let rhs: Vec<Vec<Q>> = (0..n).map(|i| (0..n).map(|j| if i == j { Q::from_integer(d[j]) } else { Q::from_integer(0) }).collect()).collect();
        let fundamental = solve_right(&b, &rhs);
        let mut rho = vec![Q::from_integer(0); n];
        for l in &fundamental {
            rho = wt_add(&rho, l);
        }
        let positive = positive_roots(&a)?;
        Ok(RootSystem { label: format!("{a:?}"), cartan: a, d, form: Form::new(b), fundamental, rho, positive })
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    pub fn pairing(&self, x: &[Q], y: &[Q]) -> Q {
        self.form.pair(x, y)
    }

    pub fn simple_root(&self, i: usize) -> Wt {
        let mut v = vec![Q::from_integer(0); self.rank()];
        v[i] = Q::from_integer(1);
        v
    }

    pub fn fundamental_weight(&self, i: usize) -> &Wt {
        &self.fundamental[i]
    }

    /// Fundamental weight in the convention ⟨Λ_i, α_j⟩ = δ_ij (coincides with the standard one when d_i = 1).
    pub fn fundamental_weight_unit_pairing(&self, i: usize) -> Wt {
        self.fundamental[i].iter().map(|x| x / Q::from_integer(self.d[i])).collect()
    }

    pub fn rho(&self) -> &Wt {
        &self.rho
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive
    }

    pub fn positive_roots_wt(&self) -> Vec<Wt> {
        self.positive.iter().map(|r| wt_from_ints(r)).collect()
    }

    pub fn zero(&self) -> Wt {
        vec![Q::from_integer(0); self.rank()]
    }

    /// Weight Σ c_i Λ_i in simple-root coordinates.
    pub fn from_fundamental(&self, c: &[Q]) -> Wt {
        let mut v = self.zero();
        for (ci, l) in c.iter().zip(&self.fundamental) {
            v = wt_add(&v, &l.iter().map(|x| x * ci).collect::<Vec<_>>());
        }
        v
    }

    /// Coordinates ⟨λ, α_i^∨⟩.
    pub fn to_fundamental(&self, w: &[Q]) -> Wt {
        (0..self.rank()).map(|i| self.coroot_pairing(w, i)).collect()
    }

    pub fn coroot_pairing(&self, w: &[Q], i: usize) -> Q {
        self.form.pair(w, &self.simple_root(i)) / Q::from_integer(self.d[i])
    }

    pub fn is_integral(&self, w: &[Q]) -> bool {
        (0..self.rank()).all(|i| self.coroot_pairing(w, i).is_integer())
    }

    pub fn is_dominant(&self, w: &[Q]) -> bool {
        (0..self.rank()).all(|i| self.coroot_pairing(w, i) >= Q::from_integer(0))
    }

    pub fn reflect(&self, i: usize, w: &[Q]) -> Wt {
        let c = self.coroot_pairing(w, i);
        let mut v = w.to_vec();
        v[i] -= c;
        v
    }

    /// w(μ + ρ) − ρ.
    pub fn shifted_action(&self, w: &WeylElement, mu: &[Q]) -> Wt {
        wt_sub(&w.act(&wt_add(mu, &self.rho)), &self.rho)
    }

    /// All Weyl group elements in order of increasing length, each with a reduced word.
    pub fn weyl_group(&self) -> Result<Vec<WeylElement>> {
        let n = self.rank();
        let id: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        let mut seen: HashMap<Vec<Vec<i64>>, ()> = HashMap::new();
        seen.insert(id.clone(), ());
        let mut out = vec![WeylElement { word: vec![], matrix: id }];
        let mut frontier = vec![0usize];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for &idx in &frontier {
                for i in 0..n {
                    // s_i · w: row operation on the matrix.
                    let w = &out[idx];
                    let mut m = w.matrix.clone();
                    for c in 0..n {
                        let t: i64 = (0..n).map(|j| self.cartan[i][j] * w.matrix[j][c]).sum();
                        m[i][c] -= t;
                    }
                    if seen.contains_key(&m) {
                        continue;
                    }
                    seen.insert(m.clone(), ());
                    let mut word = vec![i];
                    word.extend(&w.word);
                    out.push(WeylElement { word, matrix: m });
                    next.push(out.len() - 1);
                    if out.len() > WEYL_CAP {
                        return Err(Error::Resource(format!("Weyl group larger than {WEYL_CAP}")));
                    }
                }
            }
            frontier = next;
        }
        Ok(out)
    }

    /// Distinct elements of the Weyl orbit of w, sorted.
    pub fn orbit(&self, w: &[Q]) -> Vec<Wt> {
        let mut seen = BTreeSet::new();
        seen.insert(w.to_vec());
        let mut queue = VecDeque::from([w.to_vec()]);
        while let Some(x) = queue.pop_front() {
            for i in 0..self.rank() {
                let y = self.reflect(i, &x);
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// The dominant element of the orbit of w.
    pub fn dominant_conjugate(&self, w: &[Q]) -> Wt {
        let mut x = w.to_vec();
        loop {
            let Some(i) = (0..self.rank()).find(|&i| self.coroot_pairing(&x, i) < Q::from_integer(0)) else {
                return x;
            };
            x = self.reflect(i, &x);
        }
    }

    /// Number of ways to write μ as an ℕ-combination of positive roots (0 outside Q₊).
    pub fn kostant_partition(&self, mu: &[i64]) -> u64 {
        if mu.iter().any(|&x| x < 0) {
            return 0;
        }
        let mut memo = HashMap::new();
        self.kp(mu.to_vec(), 0, &mut memo)
    }

    fn kp(&self, mu: Vec<i64>, idx: usize, memo: &mut HashMap<(Vec<i64>, usize), u64>) -> u64 {
        if mu.iter().all(|&x| x == 0) {
            return 1;
        }
        if idx == self.positive.len() {
            return 0;
        }
        if let Some(&v) = memo.get(&(mu.clone(), idx)) {
            return v;
        }
        let beta = &self.positive[idx];
        let mut total = 0;
        let mut cur = mu.clone();
        loop {
            total += self.kp(cur.clone(), idx + 1, memo);
            for (c, b) in cur.iter_mut().zip(beta) {
                *c -= b;
            }
            if cur.iter().any(|&x| x < 0) {
                break;
            }
        }
        memo.insert((mu, idx), total);
        total
    }

    /// L_θ = {Σ m_α α : 0 ≤ m_α ≤ k_α} as a set, together with Θ = Σ k_α α.
    pub fn support_box(&self, k: &[i64]) -> (BTreeSet<Vec<i64>>, Vec<i64>) {
        assert_eq!(k.len(), self.positive.len());
        let mut set = BTreeSet::from([vec![0; self.rank()]]);
        let mut theta = vec![0; self.rank()];
        for (beta, &kb) in self.positive.iter().zip(k) {
            let mut next = BTreeSet::new();
            for v in &set {
                for m in 0..=kb {
                    next.insert(v.iter().zip(beta).map(|(x, b)| x + m * b).collect::<Vec<_>>());
                }
            }
            set = next;
            for (t, b) in theta.iter_mut().zip(beta) {
                *t += kb * b;
            }
        }
        (set, theta)
    }

    /// Weyl dimension formula ∏_{α>0} ⟨θ+ρ,α⟩/⟨ρ,α⟩.
    pub fn weyl_dimension(&self, theta: &[Q]) -> Q {
        let tr = wt_add(theta, &self.rho);
        let mut acc = Q::from_integer(1);
        for a in self.positive_roots_wt() {
            acc *= self.pairing(&tr, &a) / self.pairing(&self.rho, &a);
        }
        acc
    }

    pub fn height(mu: &[i64]) -> i64 {
        mu.iter().sum()
    }

    /// All μ ∈ Q₊ of height exactly h.
    pub fn q_plus_of_height(&self, h: i64) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        let mut cur = vec![0; self.rank()];
        compositions(h, 0, &mut cur, &mut out);
        out
    }
}

fn compositions(rem: i64, i: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if i + 1 == cur.len() {
        cur[i] = rem;
        out.push(cur.clone());
        return;
    }
    for v in 0..=rem {
        cur[i] = v;
        compositions(rem - v, i + 1, cur, out);
    }
}

fn positive_roots(a: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let n = a.len();
    let mut seen = BTreeSet::new();
    let mut queue = VecDeque::new();
    for i in 0..n {
        let mut e = vec![0; n];
        e[i] = 1;
        seen.insert(e.clone());
        queue.push_back(e);
    }
    while let Some(b) = queue.pop_front() {
        for i in 0..n {
            let c: i64 = (0..n).map(|j| a[i][j] * b[j]).sum();
            let mut r = b.clone();
            r[i] -= c;
            if r.iter().all(|&x| x >= 0) && r.iter().any(|&x| x > 0) && seen.insert(r.clone()) {
                queue.push_back(r);
                if seen.len() > 1000 {
                    return Err(Error::Resource("root system too large".into()));
                }
            }
        }
    }
    let mut v: Vec<Vec<i64>> = seen.into_iter().collect();
    v.sort_by_key(|r| (r.iter().sum::<i64>(), r.iter().map(|x| -x).collect::<Vec<_>>()));
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a1_basics() {
        let rs = RootSystem::from_label("A1").unwrap();
        assert_eq!(rs.positive_roots().len(), 1);
        assert_eq!(rs.pairing(&rs.simple_root(0), &rs.simple_root(0)), Q::from_integer(2));
        assert_eq!(rs.pairing(&rs.simple_root(0), rs.rho()), Q::from_integer(1));
    }

    #[test]
    fn a2_pairings() {
        let rs = RootSystem::from_label("A2").unwrap();
        assert_eq!(rs.positive_roots(), &[vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(rs.pairing(&rs.simple_root(0), &rs.simple_root(1)), Q::from_integer(-1));
        let l1 = rs.fundamental_weight(0);
        assert_eq!(rs.pairing(l1, l1), Q::new(2, 3));
    }

    #[test]
    fn b2_and_g2() {
        let b2 = RootSystem::from_label("B2").unwrap();
        assert_eq!(b2.positive_roots().len(), 4);
        assert_eq!(b2.d, vec![2, 1]);
        let g2 = RootSystem::from_label("G2").unwrap();
        assert_eq!(g2.positive_roots().len(), 6);
        assert_eq!(g2.weyl_group().unwrap().len(), 12);
    }

    #[test]
    fn rejects_affine() {
        let err = RootSystem::from_cartan(vec![vec![2, -2], vec![-2, 2]]).unwrap_err();
        assert!(matches!(err, Error::NotFiniteType { order: 2, .. }));
    }

    #[test]
    fn shifted_reflection() {
        let rs = RootSystem::from_label("A1").unwrap();
        let w = rs.weyl_group().unwrap();
        let s = &w[1];
        assert_eq!(rs.shifted_action(s, &rs.zero()), vec![Q::from_integer(-1)]);
        let lam = vec![Q::new(5, 7)];
        assert_eq!(rs.shifted_action(s, &lam), vec![Q::new(-5, 7) - Q::from_integer(1)]);
    }

    #[test]
    fn kostant_values() {
        let a1 = RootSystem::from_label("A1").unwrap();
        for n in 0..5 {
            assert_eq!(a1.kostant_partition(&[n]), 1);
        }
        let a2 = RootSystem::from_label("A2").unwrap();
        assert_eq!(a2.kostant_partition(&[0, 0]), 1);
        assert_eq!(a2.kostant_partition(&[1, 1]), 2);
        assert_eq!(a2.kostant_partition(&[2, 2]), 3);
    }

    #[test]
    fn support_box_a2() {
        let rs = RootSystem::from_label("A2").unwrap();
        let (set, theta) = rs.support_box(&[1, 1, 1]);
        assert_eq!(set.len(), 7);
        assert_eq!(theta, vec![2, 2]);
        let a1 = RootSystem::from_label("A1").unwrap();
        let (set, theta) = a1.support_box(&[1]);
        assert_eq!(set.into_iter().collect::<Vec<_>>(), vec![vec![0], vec![1]]);
        assert_eq!(theta, vec![1]);
    }

    #[test]
    fn weyl_invariance_and_rho() {
        for label in ["A1", "A2", "A3"] {
            let rs = RootSystem::from_label(label).unwrap();
            let mut sum = rs.zero();
            for a in rs.positive_roots_wt() {
                sum = wt_add(&sum, &a);
            }
            assert_eq!(sum, rs.rho().iter().map(|x| x * Q::from_integer(2)).collect::<Vec<_>>());
            let x = rs.from_fundamental(&(0..rs.rank()).map(|i| Q::new(i as i64 + 1, 3)).collect::<Vec<_>>());
            let y = rs.from_fundamental(&(0..rs.rank()).map(|i| Q::from_integer(2 - i as i64)).collect::<Vec<_>>());
            for w in rs.weyl_group().unwrap() {
                assert_eq!(rs.pairing(&w.act(&x), &w.act(&y)), rs.pairing(&x, &y));
            }
        }
    }
}
