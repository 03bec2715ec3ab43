use super::*;
use crate::intertwine::{normalize, psi_series, singular_vector, PsiSeries};
use crate::linalg::Mat;
use crate::qfield::{wt_from_ints, LambdaPoly, QScalar, Wt, Q};
use crate::rootdata::RootSystem;
use crate::uqg::{FiniteModule, Verma, DEFAULT_DIM_CAP};

fn qs(e: i64) -> QScalar {
    QScalar::q_pow(Q::from_integer(e))
}

fn h(n: i64) -> Wt {
    vec![Q::new(n, 2)]
}

fn psi_for(label: &str, theta: &[i64], depth: usize) -> PsiSeries {
    let rs = RootSystem::from_label(label).unwrap();
    let v = Verma::new(&rs);
    let m = FiniteModule::build(&v, &wt_from_ints(theta), DEFAULT_DIM_CAP).unwrap();
    let sv = normalize(&singular_vector(&v, &m).unwrap(), &m).unwrap();
    psi_series(&v, &m, &sv, depth).unwrap()
}

/// a·e^{x} + b·e^{−x} in the sl2 coordinate x (e^{x} = e^{⟨α/2,x⟩}).
fn lin(a: QScalar, b: QScalar) -> ExpPoly {
    LambdaPoly::from_terms([(h(1), a), (h(-1), b)])
}

fn frac(n: ExpPoly, d: ExpPoly) -> ExpRational {
    ExpRational::new(n, d).unwrap()
}

fn scalar(c: LambdaPoly) -> Mat<LambdaPoly> {
    Mat::from_rows(vec![vec![c]])
}

/// q^{mλ} in the sl2 coordinate λ (q^{λ} = q^{⟨α,λ⟩}).
fn ql(m: i64, c: QScalar) -> LambdaPoly {
    LambdaPoly::monomial(vec![Q::from_integer(m)], c)
}

fn m1_closed(k: i64) -> ExactOp {
    let mut op = ExactOp::zero(1);
    op.add_term(h(1), frac(lin(qs(k + 1), -qs(-k - 1)), lin(qs(0), -qs(0))));
    op.add_term(h(-1), frac(lin(-qs(-k - 1), qs(k + 1)), lin(-qs(0), qs(0))));
    op
}

fn m0_closed() -> ExactOp {
    let l = |a: i64, b: i64| lin(qs(a), -qs(b));
    let mut op = ExactOp::zero(1);
    let t3 = frac(l(4, -4), l(1, -1)).mul(&frac(l(3, -3), l(0, 0)));
    let three = QScalar::q_integer(3, 1);
    let t1 = frac(l(1, -1).scale(&-three), l(-1, 1));
    op.add_term(h(3), t3);
    op.add_term(h(1), t1);
    op
}

fn delta_plus_a1(k: i64) -> ExpRational {
    let mut p = LambdaPoly::one(1);
    for i in 1..=k {
        p = p.mul(&lin(qs(0), -qs(2 * i)));
    }
    ExpRational::poly(p, 1)
}

fn c1() -> LambdaPoly {
    ql(1, qs(0)).add(&ql(-1, qs(0)))
}

fn c0_appendix() -> LambdaPoly {
    ql(3, qs(0)).sub(&ql(1, QScalar::q_integer(3, 1)))
}

#[test]
fn series_inverse_roundtrip() {
    let s = frac(lin(qs(2), -qs(-2)), lin(qs(0), -qs(0))).expand(1, 10).unwrap();
    let prod = s.mul(&s.inverse().unwrap());
    assert_eq!(prod, XSeries::one(1, 10, 1));
}

#[test]
fn closed_form_m1_matches_reconstruction() {
    for k in [0, 1] {
        let psi = psi_for("A1", &[k], 8);
        let d = reconstruct_operator(&psi, &scalar(c1()), TieBreak::default()).unwrap();
        assert_eq!(d.shifts(), vec![h(-1), h(1)]);
        let m = d.conjugate(&delta_plus_a1(k), psi.rs.form()).unwrap();
        let closed = m1_closed(k).to_series(8).unwrap();
        assert!(m.agrees_with(&closed, 8).unwrap(), "k = {k}:\n{}\n{}", m.to_json(), closed.to_json());
    }
}

#[test]
fn appendix_c0_gives_m0() {
    let psi = psi_for("A1", &[1], 8);
    let d = reconstruct_operator(&psi, &scalar(c0_appendix()), TieBreak::default()).unwrap();
    assert_eq!(d.shifts(), vec![h(1), h(3)]);
    let m = d.conjugate(&delta_plus_a1(1), psi.rs.form()).unwrap();
    assert!(m.agrees_with(&m0_closed().to_series(8).unwrap(), 8).unwrap());
}

#[test]
fn tie_break_does_not_change_operator() {
    let psi = psi_for("A1", &[1], 6);
    for c in [c1(), c0_appendix()] {
        let a = reconstruct_operator(&psi, &scalar(c.clone()), TieBreak::LexLargest).unwrap();
        let b = reconstruct_operator(&psi, &scalar(c), TieBreak::LexSmallest).unwrap();
        assert_eq!(a, b);
    }
}

#[test]
fn reconstruction_is_a_homomorphism() {
    let psi = psi_for("A1", &[1], 8);
    let form = psi.rs.form();
    let d1 = reconstruct_operator(&psi, &scalar(c1()), TieBreak::default()).unwrap();
    let d0 = reconstruct_operator(&psi, &scalar(c0_appendix()), TieBreak::default()).unwrap();
    for (c, lhs) in [(c1().mul(&c1()), d1.compose(&d1, form).unwrap()), (c1().mul(&c0_appendix()), d1.compose(&d0, form).unwrap())] {
        let d = reconstruct_operator(&psi, &scalar(c), TieBreak::default()).unwrap();
        assert!(d.agrees_with(&lhs, 8).unwrap());
    }
    assert!(d1.commutator(&d0, form).unwrap().is_zero_to(8));
}

#[test]
fn closed_forms_commute_exactly() {
    let form = RootSystem::from_label("A1").unwrap().form().clone();
    assert!(m1_closed(0).commutator(&m1_closed(0), &form).is_zero());
    assert!(m0_closed().commutator(&m1_closed(1), &form).is_zero());
    assert!(!m0_closed().commutator(&m1_closed(0), &form).is_zero());
}

#[test]
fn admissibility_and_cosets() {
    let rs = RootSystem::from_label("A1").unwrap();
    assert!(admissibility_check(&rs, &[1], &c0_appendix()).is_empty());
    assert!(admissibility_check(&rs, &[1], &c1()).is_empty());
    assert!(!admissibility_check(&rs, &[1], &ql(1, qs(0))).is_empty());
    let psi = psi_for("A1", &[1], 4);
    assert!(reconstruct_operator(&psi, &scalar(ql(1, qs(0))), TieBreak::default()).is_err());
    // q^{⟨λ,Λ⟩} + q^{−⟨λ,Λ⟩}: exponents differ by α, one class.
    assert_eq!(coset_decompose(&LambdaPoly::from_terms([(h(1), qs(0)), (h(-1), qs(0))])).len(), 1);
    let a2 = RootSystem::from_label("A2").unwrap();
    let l1: Wt = vec![Q::new(4, 3), Q::new(2, 3)];
    let l2: Wt = vec![Q::new(2, 3), Q::new(4, 3)];
    let c = LambdaPoly::from_terms([(l1, qs(0)), (l2, qs(0))]);
    assert_eq!(coset_decompose(&c).len(), 2);
    assert_eq!(a2.rank(), 2);
}

#[test]
fn matrix_case_on_the_sl3_adjoint() {
    let psi = psi_for("A2", &[1, 1], 5);
    assert_eq!(psi.dim0, 2);
    let rs = psi.rs.clone();
    // c_{Λ₁}(λ)·1 is central.
    let c: LambdaPoly = LambdaPoly::from_terms(rs.orbit(rs.fundamental_weight(0)).into_iter().map(|m| (m.iter().map(|x| x * Q::from_integer(2)).collect::<Wt>(), qs(0))));
    let z = LambdaPoly::zero();
    let cm = Mat::from_rows(vec![vec![c.clone(), z.clone()], vec![z.clone(), c]]);
    assert!(matrix_admissibility_check(&psi, &cm).unwrap().is_empty());
    let d = reconstruct_operator(&psi, &cm, TieBreak::default()).unwrap();
    assert_eq!(d.dim, 2);
    let nilp = Mat::from_rows(vec![vec![z.clone(), LambdaPoly::one(2)], vec![z.clone(), z]]);
    assert_eq!(matrix_admissibility_check(&psi, &nilp).unwrap().len(), 3);
    assert!(reconstruct_operator(&psi, &nilp, TieBreak::default()).is_err());
}
