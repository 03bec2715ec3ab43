use super::*;
use crate::diffop::{admissibility_check, reconstruct_operator};
use crate::qfield::wt_from_ints;

fn qs(e: i64) -> QScalar {
    QScalar::q_pow(Q::from_integer(e))
}

fn h(n: i64) -> Wt {
    vec![Q::new(n, 2)]
}

fn ctx(n: usize, k: i64) -> MacContext {
    MacContext::new(n, k).unwrap()
}

fn psi_k(c: &MacContext, depth: usize) -> LxSeries {
    c.normalized_psi(&c.psi(depth).unwrap()).unwrap()
}

fn scalar(c: LambdaPoly) -> Mat<LambdaPoly> {
    Mat::from_rows(vec![vec![c]])
}

/// a·e^{x} + b·e^{−x} with e^{x} = e^{⟨α/2,x⟩}.
fn lin(a: QScalar, b: QScalar) -> ExpPoly {
    LambdaPoly::from_terms([(h(1), a), (h(-1), b)])
}

fn frac(n: ExpPoly, d: ExpPoly) -> ExpRational {
    ExpRational::new(n, d).unwrap()
}

fn lx_const(rank: usize, depth: usize, c: LambdaPoly) -> LxSeries {
    let mut s = LxSeries::zero(vec![Q::from_integer(0); rank], depth, 1);
    s.add_term(vec![0; rank], scalar(c));
    s
}

/// Weyl character via the denominator formula, independent of ψ.
fn weyl_character(rs: &RootSystem, lambda: &[Q]) -> ExpPoly {
    let alt = |mu: &Wt| {
        let mut p = LambdaPoly::zero();
        for w in rs.weyl_group().unwrap() {
            p.add_term(w.act(mu), QScalar::from_int(w.sign()));
        }
        p
    };
    alt(&wt_add(lambda, rs.rho())).exact_div(&alt(rs.rho())).unwrap()
}

#[test]
fn subset_form_equals_orbit_form() {
    for (n, k) in [(2, 0), (2, 1), (3, 0), (3, 1)] {
        let c = ctx(n, k);
        for l in 1..n {
            let a = c.macdonald_operator(l).unwrap();
            let b = c.orbit_operator(c.rs.fundamental_weight(l - 1)).unwrap();
            assert!(a.sub(&b).is_zero(), "N={n} k={k} l={l}");
        }
    }
    assert!(ctx(3, 1).orbit_operator(&ctx(3, 1).rs.rho().clone()).is_err());
}

#[test]
fn appendix_m1_is_subset_form() {
    let m = ctx(2, 1).macdonald_operator(1).unwrap();
    let mut closed = ExactOp::zero(1);
    closed.add_term(h(1), frac(lin(qs(2), -qs(-2)), lin(qs(0), -qs(0))));
    closed.add_term(h(-1), frac(lin(-qs(-2), qs(2)), lin(-qs(0), qs(0))));
    assert!(m.sub(&closed).is_zero());
}

#[test]
fn eigen_equations() {
    for (n, k, depth) in [(2, 0, 8), (2, 1, 8), (2, 2, 8), (3, 1, 5)] {
        let c = ctx(n, k);
        let psi = psi_k(&c, depth);
        let form = c.rs.form();
        for l in 1..n {
            let m = c.macdonald_operator(l).unwrap().to_series(depth).unwrap();
            let lhs = m.apply(form, &psi).unwrap();
            let rhs = psi.mul_right(&scalar(c.eigenvalue_l(l)));
            let d = lhs.sub(&rhs).unwrap();
            assert!(d.depth > 0 && d.is_zero(), "N={n} k={k} l={l}");
        }
    }
}

#[test]
fn macdonald_operators_commute() {
    let c = ctx(3, 1);
    let form = c.rs.form();
    let m1 = c.macdonald_operator(1).unwrap();
    let m2 = c.macdonald_operator(2).unwrap();
    assert!(m1.commutator(&m2, form).is_zero());
}

#[test]
fn oracle_is_an_eigenvector() {
    for (n, k) in [(2, 1), (2, 2), (3, 1)] {
        let c = ctx(n, k);
        let form = c.rs.form();
        let m1 = c.macdonald_operator(1).unwrap();
        for lam in [vec![1, 0], vec![2, 0], vec![1, 1]].into_iter().map(|v| c.rs.from_fundamental(&wt_from_ints(&v[..c.rs.rank()]))) {
            let p = macdonald_oracle(&c, &lam).unwrap().poly;
            let image = m1.apply_poly(form, &p);
            assert!(image.den.is_constant());
            let img = image.num.scale(&image.den.constant_term().inv());
            let s = proportionality(&img, &p).expect("M₁ P_λ ∝ P_λ");
            let shifted = wt_add(&lam, &wt_scale(c.rs.rho(), Q::from_integer(k + 1)));
            assert_eq!(s, c.eigenvalue_l(1).evaluate(form, &shifted), "N={n} k={k} λ={lam:?}");
        }
    }
}

#[test]
fn oracle_is_orthogonal() {
    let c = ctx(3, 1);
    let a = macdonald_oracle(&c, &c.rs.from_fundamental(&wt_from_ints(&[1, 1]))).unwrap();
    let b = macdonald_oracle(&c, &c.rs.zero()).unwrap();
    assert!(macdonald_inner(&c, &a.poly, &b.poly).unwrap().is_zero());
    assert!(!macdonald_inner(&c, &a.poly, &a.poly).unwrap().is_zero());
}

#[test]
fn weyl_formula_matches_oracle_rank_one() {
    for k in 0..=2 {
        let c = ctx(2, k);
        let psi = psi_k(&c, 12);
        for m in 0..=4 {
            let lam = h(m);
            let p = weyl_alternation(&c, &psi, &lam).unwrap();
            let oracle = macdonald_oracle(&c, &lam).unwrap().poly;
            assert!(proportionality(&p, &oracle).is_some_and(|s| !s.is_zero()), "k={k} m={m}");
        }
    }
}

#[test]
fn weyl_formula_matches_oracle_a2() {
    let c = ctx(3, 1);
    let psi = psi_k(&c, 8);
    for v in [[1, 0], [1, 1], [0, 2]] {
        let lam = c.rs.from_fundamental(&wt_from_ints(&v));
        let p = weyl_alternation(&c, &psi, &lam).unwrap();
        let oracle = macdonald_oracle(&c, &lam).unwrap().poly;
        assert!(proportionality(&p, &oracle).is_some_and(|s| !s.is_zero()), "λ={lam:?}");
    }
}

#[test]
fn weyl_formula_at_k0_gives_characters() {
    for (n, weights) in [(2, vec![vec![0], vec![1], vec![3]]), (3, vec![vec![1, 0], vec![1, 1], vec![2, 1]])] {
        let c = ctx(n, 0);
        let psi = psi_k(&c, 8);
        for v in weights {
            let lam = c.rs.from_fundamental(&wt_from_ints(&v));
            let p = weyl_alternation(&c, &psi, &lam).unwrap();
            assert!(proportionality(&p, &weyl_character(&c.rs, &lam)).is_some(), "N={n} λ={lam:?}");
        }
    }
}

#[test]
fn weyl_formula_vanishes_on_walls() {
    let c = ctx(2, 1);
    let psi = psi_k(&c, 10);
    // λ + 2ρ = 0.
    assert!(weyl_alternation(&c, &psi, &h(-2)).unwrap().is_zero());
}

fn g0_closed() -> ExactOp {
    let mut op = ExactOp::zero(1);
    op.add_term(h(1), frac(LambdaPoly::one(1), lin(qs(0), -qs(0))));
    op.add_term(h(-1), frac(LambdaPoly::constant(1, -qs(0)), lin(qs(0), -qs(0))));
    op
}

#[test]
fn shift_operator_g0() {
    let (c0, c1) = (ctx(2, 0), ctx(2, 1));
    let (p0, p1) = (psi_k(&c0, 8), psi_k(&c1, 8));
    let g = c0.shift_operator(&p0, &p1).unwrap();
    assert!(g.agrees_with(&g0_closed().to_series(8).unwrap(), 8).unwrap(), "{}", g.to_json());
    let form = c0.rs.form();
    assert!(g0_closed().apply_poly(form, &LambdaPoly::one(1)).is_zero());
    for m in 0..=3 {
        let chi = weyl_character(&c0.rs, &h(m + 1));
        let img = g0_closed().apply_poly(form, &chi);
        assert!(img.den.is_constant());
        let img = img.num.scale(&img.den.constant_term().inv());
        let p = macdonald_oracle(&c1, &h(m)).unwrap().poly;
        assert!(proportionality(&img, &p).is_some_and(|s| !s.is_zero()), "m={m}");
    }
}

#[test]
fn shift_operators_exist_beyond_the_appendix() {
    for (n, k, depth) in [(2, 1, 8), (3, 0, 5)] {
        let (a, b) = (ctx(n, k), ctx(n, k + 1));
        let g = a.shift_operator(&psi_k(&a, depth), &psi_k(&b, depth));
        assert!(g.is_ok(), "N={n} k={k}: {:?}", g.err());
    }
}

#[test]
fn duality_symbolic_rank_one() {
    for k in 0..=2 {
        let c = ctx(2, k);
        let phi = phi_series(&c, &psi_k(&c, 8)).unwrap();
        let r = duality_symbolic(&c, &phi).unwrap();
        assert!(r.passed, "k={k}: {:?}", r.failure);
    }
}

#[test]
fn appendix_phi1_closed_form() {
    let c = ctx(2, 1);
    let bi = phi_bipoly(&c, &phi_series(&c, &psi_k(&c, 8)).unwrap()).unwrap();
    let expect: BiPoly = [
        ((h(2), h(1)), qs(-1)),
        ((h(2), h(-1)), -qs(1)),
        ((h(-2), h(1)), -qs(1)),
        ((h(-2), h(-1)), qs(-1)),
    ]
    .into_iter()
    .collect();
    assert_eq!(bi, expect);
}

#[test]
fn duality_evaluated_a2() {
    let c = ctx(3, 1);
    let phi = phi_series(&c, &psi_k(&c, 8)).unwrap();
    let f = |v: [i64; 2]| c.rs.from_fundamental(&wt_from_ints(&v));
    let pairs = [(f([1, 0]), f([0, 1])), (f([1, 1]), f([2, 0])), (f([2, 2]), f([0, 1]))];
    let r = duality_evaluated(&c, &phi, &pairs).unwrap();
    assert!(r.passed, "{:?}", r.failure);
}

#[test]
fn appendix_psi_k1_closed_form() {
    let c = ctx(2, 1);
    let depth = 8;
    let psi = psi_lx(&c.psi(depth).unwrap());
    // e^{−⟨α,x⟩} has key [−1].
    let e = |n: i64, a: QScalar| (vec![Q::from_integer(n)], a);
    let one_minus = |a: QScalar| LambdaPoly::from_terms([e(0, qs(0)), e(-1, -a)]);
    let a = frac(one_minus(qs(2)), one_minus(qs(0)).mul(&one_minus(qs(-2)))).expand(1, depth).unwrap();
    let b = frac(LambdaPoly::constant(1, -qs(0)), one_minus(qs(0))).expand(1, depth).unwrap();
    let expect = a
        .act_on(&lx_const(1, depth, LambdaPoly::one(1)))
        .add(&b.act_on(&lx_const(1, depth, LambdaPoly::monomial(vec![Q::from_integer(-2)], qs(0)))))
        .unwrap();
    assert!(psi.sub(&expect).unwrap().is_zero());

    let form = c.rs.form();
    let d = psi.evaluate(form, &h(0)).sub(&psi.evaluate(form, &h(-2)).scale_q(&qs(-2))).unwrap();
    assert!(d.is_zero());
    let n = psi_k(&c, depth);
    assert!(n.evaluate(form, &h(1)).sub(&n.evaluate(form, &h(-1))).unwrap().is_zero());
}

#[test]
fn quasi_invariance() {
    for (n, k, depth) in [(2, 1, 8), (2, 2, 8), (3, 1, 5)] {
        let c = ctx(n, k);
        let count = c.check_quasi_invariance(&psi_k(&c, depth)).unwrap();
        assert_eq!(count, c.rs.positive_roots().len() * k as usize);
    }
    // The unnormalized Ψ is not quasi-invariant in λ.
    let c = ctx(2, 1);
    assert!(c.check_quasi_invariance(&psi_lx(&c.psi(6).unwrap())).is_err());
}

#[test]
fn c0_polynomial_is_admissible_and_breaks_symmetry() {
    let rs = RootSystem::from_label("A1").unwrap();
    for k in 0..=2 {
        assert!(admissibility_check(&rs, &[k], &c0_polynomial(&rs, &[k])).is_empty());
    }
    let a2 = RootSystem::from_label("A2").unwrap();
    assert!(admissibility_check(&a2, &[1, 1, 1], &c0_polynomial(&a2, &[1, 1, 1])).is_empty());

    let c = ctx(2, 1);
    let psi = c.psi(8).unwrap();
    let d = reconstruct_operator(&psi, &scalar(c0_polynomial(&rs, &[1])), TieBreak::default()).unwrap();
    let shifts = d.shifts();
    // Polynomials in M₁ have shift sets closed under negation; D_{c₀} does not.
    assert!(shifts.iter().any(|s| !shifts.contains(&wt_neg(s))), "{shifts:?}");
    assert!(reconstruct_operator(&psi, &scalar(c0_appendix()), TieBreak::default()).is_ok());
}

fn x(n: i64) -> QScalar {
    qs(n)
}

/// (X + X⁻¹)/(X − X⁻¹).
fn coth() -> QScalar {
    &(&x(1) + &x(-1)) / &(&x(1) - &x(-1))
}

fn sinh2() -> QScalar {
    let d = &x(1) - &x(-1);
    &d * &d
}

fn int(n: i64) -> QScalar {
    QScalar::from_int(n)
}

#[test]
fn classical_limit_m1() {
    let m = ctx(2, 1).macdonald_operator(1).unwrap();
    let e = classical_limit(&m, 3).unwrap();
    assert_eq!(e[0].terms, vec![DiffTerm { deriv: 0, coeff: int(2) }]);
    assert!(e[1].terms.is_empty());
    // D₂ + 4 = ∂² + 4 coth ∂ + 4.
    assert_eq!(e[2].coeff(2), int(1));
    assert_eq!(e[2].coeff(1), &int(4) * &coth());
    assert_eq!(e[2].coeff(0), int(4));
    assert_eq!(e[2].terms.len(), 3);
}

#[test]
fn classical_limit_m0() {
    let l = |a: i64, b: i64| lin(qs(a), -qs(b));
    let mut m0 = ExactOp::zero(1);
    m0.add_term(h(3), frac(l(4, -4), l(1, -1)).mul(&frac(l(3, -3), l(0, 0))));
    m0.add_term(h(1), frac(l(1, -1).scale(&-QScalar::q_integer(3, 1)), l(-1, 1)));
    let e = classical_limit(&m0, 3).unwrap();
    assert_eq!(e[0].terms, vec![DiffTerm { deriv: 0, coeff: int(-2) }]);
    assert!(e[1].terms.is_empty());
    // 3D₂ + 8.
    assert_eq!(e[2].coeff(2), int(3));
    assert_eq!(e[2].coeff(1), &int(12) * &coth());
    assert_eq!(e[2].coeff(0), int(8));
    // ε³: 4·D₃. The expansion has no additional constant; c₀'s ε³ coefficient 4λ³ − 4λ agrees.
    let c3 = &x(3) - &(&int(3) * &x(1));
    let c3 = &(&c3 - &(&int(3) * &x(-1))) + &x(-3);
    let d3 = &sinh2() * &(&x(1) - &x(-1));
    assert_eq!(e[3].coeff(3), int(4));
    assert_eq!(e[3].coeff(2), &int(24) * &coth());
    assert_eq!(e[3].coeff(1), &int(4) * &(&int(11) + &(&int(12) / &sinh2())));
    assert_eq!(e[3].coeff(0), &int(24) * &(&c3 / &d3));
}

#[test]
fn classical_limit_psi1() {
    let c = ctx(2, 1);
    let phi = phi_series(&c, &psi_k(&c, 8)).unwrap();
    let f = phi_bipoly(&c, &phi).unwrap();
    let s = psi_classical_limit(&f, &c.delta_k(), 2).unwrap();
    assert!(s[0].is_empty());
    // ψ₁⁽⁰⁾e^{−λx} = (λ − coth)/sinh², so the ε¹ coefficient is 2λ/sinh² − 2coth/sinh².
    let expect: LamX = [(0, &int(-2) * &(&coth() / &sinh2())), (1, &int(2) / &sinh2())].into_iter().collect();
    assert_eq!(s[1], expect);
}

#[test]
fn classical_limit_rejects_higher_rank() {
    assert!(classical_limit(&ctx(3, 0).macdonald_operator(1).unwrap(), 2).is_err());
}
