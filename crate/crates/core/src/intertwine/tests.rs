use super::*;
use crate::qfield::{wt_from_ints, LambdaPoly, QScalar, Q};
use crate::rootdata::RootSystem;
use crate::uqg::{FiniteModule, Verma, DEFAULT_DIM_CAP};

fn qs(e: i64) -> QScalar {
    QScalar::q_pow(Q::from_integer(e))
}

fn setup(label: &str, theta: &[i64]) -> (Verma, FiniteModule) {
    let rs = RootSystem::from_label(label).unwrap();
    let v = Verma::new(&rs);
    let m = FiniteModule::build(&v, &wt_from_ints(theta), DEFAULT_DIM_CAP).unwrap();
    (v, m)
}

fn psi_for(label: &str, theta: &[i64], depth: usize) -> PsiSeries {
    let (v, m) = setup(label, theta);
    let sv = normalize(&singular_vector(&v, &m).unwrap(), &m).unwrap();
    psi_series(&v, &m, &sv, depth).unwrap()
}

/// 1 − q^{−2⟨α,λ⟩} for sl2.
fn one_minus() -> LambdaPoly {
    LambdaPoly::one(1).add(&LambdaPoly::monomial(vec![Q::from_integer(-2)], qs(0).neg()))
}

#[test]
fn chi_examples() {
    let a1 = RootSystem::from_label("A1").unwrap();
    assert_eq!(chi(&a1, &[0]), LambdaPoly::one(1));
    assert_eq!(chi(&a1, &[1]), one_minus());
    let a2 = RootSystem::from_label("A2").unwrap();
    // Product oracle: evaluate each factor at a sample weight.
    let kappa = vec![Q::from_integer(2), Q::from_integer(5)];
    let mut expect = QScalar::one();
    for a in a2.positive_roots() {
        let aw = wt_from_ints(a);
        let e = Q::from_integer(-2) * a2.pairing(&aw, &crate::qfield::wt_add(&kappa, a2.rho())) + Q::from_integer(2);
        expect = &expect * &(&QScalar::one() - &QScalar::q_pow(e));
    }
    assert_eq!(chi(&a2, &[1, 1, 1]).evaluate(a2.form(), &kappa), expect);
}

#[test]
fn sl2_singular_vector() {
    let (v, m) = setup("A1", &[1]);
    let sv = singular_vector(&v, &m).unwrap();
    let part = &sv.columns[0][&vec![1]];
    // Eu = [2]·(top vector), so the coefficient is −(q − q⁻¹)[2]/(1 − q^{−2λ}).
    let lhs = part.num[(0, 0)].mul(&one_minus());
    let rhs = part.den.scale(&(&qs(-2) - &qs(2)));
    assert_eq!(lhs, rhs);
    let nsv = normalize(&sv, &m).unwrap();
    assert_eq!(nsv.columns[0][&vec![0]].num[(0, 0)], one_minus());
    assert_eq!(nsv.columns[0][&vec![1]].num[(0, 0)], LambdaPoly::constant(1, &qs(-2) - &qs(2)));
    check_annihilation(&v, &m, &nsv).unwrap();
}

#[test]
fn annihilation_across_modules() {
    for (label, th) in [("A1", vec![2]), ("A1", vec![3]), ("A2", vec![1, 1]), ("A2", vec![2, 1]), ("B2", vec![1, 1])] {
        let (v, m) = setup(label, &th);
        if m.zero_depth.is_none() {
            continue;
        }
        let sv = normalize(&singular_vector(&v, &m).unwrap(), &m).unwrap();
        check_annihilation(&v, &m, &sv).unwrap_or_else(|e| panic!("{label} {th:?}: {e}"));
    }
}

#[test]
fn trivial_module_gives_verma_character() {
    let psi = psi_for("A2", &[0, 0], 4);
    for (mu, b) in &psi.terms {
        let par = psi.rs.kostant_partition(mu) as i64;
        assert_eq!(b[(0, 0)], LambdaPoly::constant(2, QScalar::from_int(par)), "{mu:?}");
    }
    let psi = psi_for("A1", &[0], 10);
    assert!(psi.terms.values().all(|b| b[(0, 0)] == LambdaPoly::one(1)));
}

#[test]
fn sl2_k1_partial_traces() {
    let psi = psi_for("A1", &[1], 8);
    psi.check_support().unwrap();
    let c = &qs(2) - &qs(-2);
    let mut geo = QScalar::zero();
    for m in 0..=8i64 {
        let b = &psi.terms[&vec![m]];
        let expect = if m == 0 { one_minus() } else { one_minus().sub(&LambdaPoly::constant(1, &c * &geo)) };
        assert_eq!(b[(0, 0)], expect, "B_{m}");
        geo = &geo + &qs(-2 * m);
    }
    assert_eq!(psi.terms[&vec![0]][(0, 0)], psi.chi);
}

#[test]
fn sl2_k1_factor_is_q_minus_two() {
    let psi = psi_for("A1", &[1], 6);
    let f = factor_b(&psi, &[1], 1).unwrap();
    assert_eq!(f.quotient.as_ref().unwrap()[(0, 0)], LambdaPoly::constant(1, qs(-2)));
    assert_eq!(check_factor_identity(&psi, &f).unwrap(), 7);
}

#[test]
fn scalar_shift_on_type_a_modules() {
    // On ⟨α,λ+ρ⟩ = n the partial traces shift by the scalar q^{−n⟨α,Θ⟩}.
    for (label, th, depth) in [("A1", vec![1], 6), ("A1", vec![2], 6), ("A2", vec![2, 1], 4)] {
        let psi = psi_for(label, &th, depth);
        let rs = psi.rs.clone();
        let big = wt_from_ints(&psi.big_theta);
        for (a, &ka) in rs.positive_roots().iter().zip(&psi.k) {
            let aw = wt_from_ints(a);
            for n in 1..=ka {
                let s = QScalar::q_pow(-Q::from_integer(n) * rs.pairing(&aw, &big));
                let c = Q::from_integer(n) - rs.pairing(&aw, rs.rho());
                check_scalar_shift(&psi, a, n, c, &rs.zero(), &s).unwrap();
                // Same law written symmetrically about ⟨α,λ+ρ⟩ = 0.
                let half: Vec<Q> = aw.iter().map(|x| x * Q::new(n, 2)).collect();
                check_scalar_shift(&psi, a, n, -rs.pairing(&aw, rs.rho()), &half, &s).unwrap();
                let f = factor_b(&psi, a, n).unwrap();
                check_factor_identity(&psi, &f).unwrap();
            }
        }
    }
}

#[test]
fn adjoint_sl3_matrix_factor() {
    let psi = psi_for("A2", &[1, 1], 4);
    assert_eq!(psi.dim0, 2);
    psi.check_support().unwrap();
    for a in [vec![1, 0], vec![0, 1], vec![1, 1]] {
        let f = factor_b(&psi, &a, 1).unwrap();
        check_factor_identity(&psi, &f).unwrap();
    }
}

#[test]
fn p_theta_has_unit_constant_term() {
    let psi = psi_for("A1", &[2], 6);
    let p = psi.p_series(&psi.big_theta);
    let c0 = &p[&vec![0]][(0, 0)];
    assert!(c0.is_monomial(), "{c0}");
}

#[test]
fn intertwiner_image_of_f() {
    let (v, m) = setup("A1", &[1]);
    let sv = normalize(&singular_vector(&v, &m).unwrap(), &m).unwrap();
    let img = intertwiner_image(&v, &m, &sv, &[0]).unwrap();
    let psi = psi_for("A1", &[1], 1);
    let z = m.zero_depth.clone().unwrap();
    let blk = &img[0].comps[&(vec![1], z)];
    assert_eq!(blk[(0, 0)], psi.terms[&vec![1]][(0, 0)]);
    assert!(intertwiner_image(&v, &m, &sv, &[]).unwrap()[0].comps.len() == 2);
}
