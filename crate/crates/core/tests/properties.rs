use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;
use qtrace::diffop::{psi_lx, reconstruct_operator, TieBreak};
use qtrace::intertwine::{normalize, psi_series, singular_vector, PsiSeries};
use qtrace::macdonald::{appendix, is_w_invariant, macdonald_oracle, weyl_character, MacContext};
use qtrace::qfield::{wt_add, wt_from_ints};
use qtrace::uqg::{FiniteModule, Verma, DEFAULT_DIM_CAP};
use qtrace::{LambdaPoly, Mat, QScalar, RootSystem, Q};

fn laurent() -> impl Strategy<Value = QScalar> {
    prop::collection::vec((-4i64..=4, -3i64..=3), 0..4).prop_map(|t| {
        let terms: Vec<(Q, i64)> = t.into_iter().map(|(e, c)| (Q::from_integer(e), c)).collect();
        QScalar::laurent(&terms)
    })
}

/// Elements of ℚ(q) as ratios of Laurent polynomials, with half-integer powers mixed in.
fn scalar() -> impl Strategy<Value = QScalar> {
    (laurent(), laurent(), any::<bool>()).prop_map(|(n, d, half)| {
        let d = if d.is_zero() { QScalar::one() } else { d };
        let x = &n / &d;
        if half {
            &x * &QScalar::q_pow(Q::new(1, 2))
        } else {
            x
        }
    })
}

fn integral_scalar() -> impl Strategy<Value = QScalar> {
    (laurent(), laurent()).prop_map(|(n, d)| if d.is_zero() { n } else { &n / &d })
}

fn weight(rank: usize) -> impl Strategy<Value = Vec<Q>> {
    prop::collection::vec(-3i64..=3, rank).prop_map(|v| wt_from_ints(&v))
}

fn lambda_poly(rank: usize) -> impl Strategy<Value = LambdaPoly> {
    prop::collection::vec((prop::collection::vec(-2i64..=2, rank), laurent()), 0..4)
        .prop_map(|t| LambdaPoly::from_terms(t.into_iter().map(|(e, c)| (wt_from_ints(&e), c))))
}

fn system() -> impl Strategy<Value = RootSystem> {
    prop::sample::select(vec!["A1", "A2", "B2", "G2", "A3"]).prop_map(|l| RootSystem::from_label(l).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert!((&a * &a.inv()).is_one());
            prop_assert_eq!(&(&b / &a) * &a, b.clone());
        }
    }

    #[test]
    fn bar_is_an_involutive_automorphism(a in scalar(), b in scalar()) {
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        prop_assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
    }

    #[test]
    fn evaluation_at_a_rational_is_a_homomorphism(a in integral_scalar(), b in integral_scalar(), x in 2i64..5) {
        let x = BigRational::from_integer(BigInt::from(x));
        if let (Some(ea), Some(eb)) = (a.eval_rational(&x), b.eval_rational(&x)) {
            prop_assert_eq!((&a * &b).eval_rational(&x), Some(&ea * &eb));
            prop_assert_eq!((&a + &b).eval_rational(&x), Some(&ea + &eb));
        }
    }

    #[test]
    fn lambda_evaluation_is_a_homomorphism(p in lambda_poly(2), r in lambda_poly(2), k in weight(2), s in weight(2)) {
        let rs = RootSystem::from_label("A2").unwrap();
        let form = rs.form();
        prop_assert_eq!(p.mul(&r).evaluate(form, &k), &p.evaluate(form, &k) * &r.evaluate(form, &k));
        prop_assert_eq!(p.add(&r).evaluate(form, &k), &p.evaluate(form, &k) + &r.evaluate(form, &k));
        prop_assert_eq!(p.shift(form, &s).evaluate(form, &k), p.evaluate(form, &wt_add(&k, &s)));
    }

    #[test]
    fn weyl_group_preserves_the_form(rs in system(), x in weight(4), y in weight(4)) {
        let r = rs.rank();
        let (x, y) = (x[..r].to_vec(), y[..r].to_vec());
        for w in rs.weyl_group().unwrap() {
            prop_assert_eq!(rs.pairing(&w.act(&x), &w.act(&y)), rs.pairing(&x, &y));
        }
    }

    #[test]
    fn characters_are_weyl_invariant(rs in system(), v in prop::collection::vec(0i64..=2, 4)) {
        let lam = rs.from_fundamental(&wt_from_ints(&v[..rs.rank()]));
        let ch = weyl_character(&rs, &lam).unwrap();
        prop_assert!(is_w_invariant(&rs, &ch));
        let dim: BigRational = ch.terms().values().map(|c| c.as_rational().unwrap()).sum();
        let w = rs.weyl_dimension(&lam);
        prop_assert_eq!(dim, BigRational::new(BigInt::from(*w.numer()), BigInt::from(*w.denom())));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn oracle_polynomials_are_weyl_invariant(n in 2usize..=3, k in 0i64..=1, a in 0i64..=2, b in 0i64..=1) {
        let ctx = MacContext::new(n, k).unwrap();
        let labels: Vec<i64> = [a, b][..n - 1].to_vec();
        let lam = ctx.rs.from_fundamental(&wt_from_ints(&labels));
        prop_assert!(is_w_invariant(&ctx.rs, &macdonald_oracle(&ctx, &lam).unwrap().poly));
    }

    #[test]
    fn eigenvalues_are_weyl_invariant(n in 2usize..=4, l in 1usize..=3, k in 0i64..=2) {
        prop_assume!(l < n);
        let ctx = MacContext::new(n, k).unwrap();
        let c = ctx.eigenvalue_l(l);
        for w in ctx.rs.weyl_group().unwrap() {
            prop_assert_eq!(c.map_exponents(|e| w.act(e)), c.clone());
        }
    }
}

fn psi(label: &str, theta: &[i64], depth: usize) -> PsiSeries {
    let rs = RootSystem::from_label(label).unwrap();
    let verma = Verma::new(&rs);
    let module = FiniteModule::build(&verma, &wt_from_ints(theta), DEFAULT_DIM_CAP).unwrap();
    let sv = normalize(&singular_vector(&verma, &module).unwrap(), &module).unwrap();
    psi_series(&verma, &module, &sv, depth).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn normalization_is_idempotent_and_polynomial(case in prop::sample::select(vec![("A1", vec![1]), ("A1", vec![2]), ("A1", vec![3]), ("A2", vec![1, 1]), ("B2", vec![1, 1])])) {
        let (label, theta) = case;
        let rs = RootSystem::from_label(label).unwrap();
        let verma = Verma::new(&rs);
        let module = FiniteModule::build(&verma, &wt_from_ints(&theta), DEFAULT_DIM_CAP).unwrap();
        let once = normalize(&singular_vector(&verma, &module).unwrap(), &module).unwrap();
        let twice = normalize(&once, &module).unwrap();
        prop_assert!(once.normalized);
        for (c1, c2) in once.columns.iter().zip(&twice.columns) {
            prop_assert_eq!(c1, c2);
            prop_assert!(c1.values().all(|p| p.den == LambdaPoly::one(rs.rank())));
        }
        let p = psi_series(&verma, &module, &once, 3).unwrap();
        prop_assert!(p.check_support().is_ok());
    }

    #[test]
    fn reconstruction_reproduces_the_eigenvalue(factors in prop::collection::vec(any::<bool>(), 1..=3)) {
        let p = psi("A1", &[1], 5);
        let c = factors.iter().fold(LambdaPoly::one(1), |acc, &z| acc.mul(&if z { appendix::c0() } else { appendix::c1() }));
        let d = reconstruct_operator(&p, &Mat::from_rows(vec![vec![c.clone()]]), TieBreak::default()).unwrap();
        let form = p.rs.form();
        let source = psi_lx(&p);
        let lhs = d.apply(form, &source).unwrap();
        let rhs = source.mul_right(&Mat::from_rows(vec![vec![c.shift(form, p.rs.rho())]])).truncate(lhs.depth);
        prop_assert!(lhs.sub(&rhs).unwrap().is_zero());
    }
}
