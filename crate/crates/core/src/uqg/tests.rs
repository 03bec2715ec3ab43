use super::*;
use crate::qfield::{wt_from_ints, LambdaPoly, QScalar, Q};
use crate::rootdata::RootSystem;

fn sys(label: &str) -> RootSystem {
    RootSystem::from_label(label).unwrap()
}

fn qs(e: i64) -> QScalar {
    QScalar::q_pow(Q::from_integer(e))
}

#[test]
fn e_on_single_f_is_bracket() {
    let rs = sys("A1");
    let v = Verma::new(&rs);
    let out = v.apply_e_word(&Spec::Symbolic, 0, &[0]);
    assert_eq!(out.len(), 1);
    assert!(out[0].0.is_empty());
    let denom = &qs(1) - &qs(-1);
    let expect = LambdaPoly::monomial(vec![Q::from_integer(1)], denom.inv())
        .sub(&LambdaPoly::monomial(vec![Q::from_integer(-1)], denom.inv()));
    assert_eq!(out[0].1, expect);
    assert!(v.apply_e_word(&Spec::Symbolic, 0, &[]).is_empty());
    let a2 = Verma::new(&sys("A2"));
    assert!(a2.apply_e_word(&Spec::Symbolic, 1, &[0]).is_empty());
}

#[test]
fn bases_have_kostant_size() {
    for label in ["A1", "A2", "B2"] {
        let rs = sys(label);
        let v = Verma::new(&rs);
        for h in 0..=4 {
            for mu in rs.q_plus_of_height(h) {
                let lvl = v.level(&mu).unwrap();
                assert_eq!(lvl.basis.len() as u64, rs.kostant_partition(&mu), "{label} {mu:?}");
            }
        }
    }
    let v = Verma::new(&sys("A2"));
    assert_eq!(v.level(&[1, 1]).unwrap().basis, vec![vec![0u8, 1], vec![1, 0]]);
    assert_eq!(Verma::new(&sys("A1")).level(&[2]).unwrap().basis, vec![vec![0u8, 0]]);
}

#[test]
fn a1_shapovalov_entry() {
    let v = Verma::new(&sys("A1"));
    let g = v.gram(&Spec::Symbolic, &[1]).unwrap();
    let pred = v.predicted_determinant(&[1]);
    assert!(g[(0, 0)].equal_up_to_unit_monomial(&pred));
}

#[test]
fn determinants_match_product_formula() {
    for (label, hmax) in [("A1", 4), ("A2", 3), ("B2", 2)] {
        let rs = sys(label);
        let v = Verma::new(&rs);
        for h in 0..=hmax {
            for mu in rs.q_plus_of_height(h) {
                let g = v.gram(&Spec::Symbolic, &mu).unwrap();
                for s in 0..g.rows {
                    for t in 0..g.rows {
                        assert_eq!(g[(s, t)], g[(t, s)], "symmetry {label} {mu:?}");
                    }
                }
                let det = g.det_bareiss();
                let pred = v.predicted_determinant(&mu);
                assert!(det.equal_up_to_unit_monomial(&pred), "{label} {mu:?}: {det} vs {pred}");
            }
        }
    }
}

#[test]
fn specialization_commutes_with_gram() {
    let rs = sys("A2");
    let v = Verma::new(&rs);
    let kappa = wt_from_ints(&[3, 1]);
    let sym = v.gram(&Spec::Symbolic, &[2, 1]).unwrap();
    let num = v.gram(&Spec::At(kappa.clone()), &[2, 1]).unwrap();
    for (a, b) in sym.entries().iter().zip(num.entries()) {
        assert_eq!(a.evaluate(rs.form(), &kappa), b.constant_term());
    }
}

#[test]
fn pairing_of_different_weights_vanishes() {
    let v = Verma::new(&sys("A2"));
    assert!(v.pairing(&Spec::Symbolic, &[0], &[1]).unwrap().is_zero());
    assert_eq!(v.pairing(&Spec::Symbolic, &[], &[]).unwrap(), LambdaPoly::one(2));
}

#[test]
fn sl2_modules() {
    let rs = sys("A1");
    let v = Verma::new(&rs);
    let triv = FiniteModule::build(&v, &wt_from_ints(&[0]), DEFAULT_DIM_CAP).unwrap();
    assert_eq!((triv.dim(), triv.zero_dim(), triv.k.clone()), (1, 1, vec![0]));
    let u = FiniteModule::build(&v, &wt_from_ints(&[1]), DEFAULT_DIM_CAP).unwrap();
    assert_eq!((u.dim(), u.zero_dim(), u.k.clone(), u.big_theta.clone()), (3, 1, vec![1], vec![1]));
    let fe = u.fe_power_action(0, 1).unwrap();
    assert_eq!(fe[(0, 0)], QScalar::q_factorial(2, 1));
    let u2 = FiniteModule::build(&v, &wt_from_ints(&[2]), DEFAULT_DIM_CAP).unwrap();
    assert_eq!((u2.dim(), u2.k.clone()), (5, vec![2]));
    assert_eq!(u2.fe_power_action(0, 2).unwrap()[(0, 0)], QScalar::q_factorial(4, 1));
    assert_eq!(u2.fe_power_action(0, 0).unwrap(), crate::linalg::Mat::eye(1));
    let odd = FiniteModule::build(&v, &[Q::new(3, 2)], DEFAULT_DIM_CAP).unwrap();
    assert_eq!((odd.dim(), odd.zero_dim()), (4, 0));
}

#[test]
fn sl3_modules() {
    let rs = sys("A2");
    let v = Verma::new(&rs);
    let adj = FiniteModule::build(&v, &wt_from_ints(&[1, 1]), DEFAULT_DIM_CAP).unwrap();
    assert_eq!((adj.dim(), adj.zero_dim()), (8, 2));
    let s3 = FiniteModule::build(&v, &wt_from_ints(&[2, 1]), DEFAULT_DIM_CAP).unwrap();
    assert_eq!((s3.dim(), s3.zero_dim(), s3.k.clone(), s3.big_theta.clone()), (10, 1, vec![1, 1, 1], vec![2, 2]));
    let err = FiniteModule::build(&v, &wt_from_ints(&[1, 0]), DEFAULT_DIM_CAP);
    assert!(err.is_err());
}

#[test]
fn weight_multiplicities_are_weyl_symmetric() {
    for (label, th) in [("A1", vec![3]), ("A2", vec![1, 1]), ("A2", vec![2, 2]), ("B2", vec![1, 1])] {
        let rs = sys(label);
        let v = Verma::new(&rs);
        let m = FiniteModule::build(&v, &wt_from_ints(&th), DEFAULT_DIM_CAP).unwrap();
        for (mu, d) in &m.spaces {
            let w = m.weight_at(mu);
            for i in 0..rs.rank() {
                let rw = rs.reflect(i, &w);
                let depth: Vec<Q> = m.theta.iter().zip(&rw).map(|(a, b)| a - b).collect();
                let depth = crate::qfield::wt_to_ints(&depth).unwrap();
                assert_eq!(m.space_dim(&depth), *d, "{label} {mu:?}");
            }
        }
    }
}

#[test]
fn non_simply_laced_module() {
    let rs = sys("G2");
    let v = Verma::new(&rs);
    // The 7-dimensional module: highest weight is the short dominant root.
    let short = rs.positive_roots().iter().find(|a| {
        let w = wt_from_ints(a);
        rs.is_dominant(&w) && rs.pairing(&w, &w) == Q::from_integer(2)
    });
    let m = FiniteModule::build(&v, &wt_from_ints(short.unwrap()), DEFAULT_DIM_CAP).unwrap();
    assert_eq!(m.dim(), 7);
}
