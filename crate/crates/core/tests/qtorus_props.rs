use proptest::prelude::*;

use qdilog::exchange::numeric_trajectory;
use qdilog::qtorus::poly::Poly;
use qdilog::qtorus::{
    psi_series, quantum_trajectory, verify_shuffle, verify_tropical_identity, Coefficient,
    QCoefficient, QuantumSeedSeries, TorusContext, TorusElement,
};
use qdilog::search::search_periods;
use qdilog::{Builtin, ExchangeMatrix, MutationSchedule};

fn a2() -> ExchangeMatrix {
    Builtin::A2.resolve().0
}

fn poly() -> impl Strategy<Value = Poly> {
    proptest::collection::vec(-3i64..=3, 1..4)
        .prop_filter("nonzero", |v| v.iter().any(|&c| c != 0))
        .prop_map(|v| Poly::from_i64(&v))
}

fn coefficient() -> impl Strategy<Value = QCoefficient> {
    (-3i64..=3, poly(), poly()).prop_map(|(v, n, d)| QCoefficient::from_parts(v, n, d))
}

fn sparse_terms(n: usize) -> impl Strategy<Value = Vec<(Vec<i64>, i64, i64)>> {
    proptest::collection::vec((proptest::collection::vec(-1i64..=2, n), -2i64..=2, -3i64..=3), 1..4)
}

fn element(ctx: &qdilog::qtorus::Ctx<QCoefficient>, terms: &[(Vec<i64>, i64, i64)]) -> TorusElement {
    let terms = terms
        .iter()
        .map(|(a, k, c)| (a.clone(), QCoefficient::from_i64(*c).times_q_pow(*k, &QCoefficient::q())))
        .collect();
    TorusElement::from_terms(ctx, terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coefficients_form_a_field(a in coefficient(), b in coefficient()) {
        let ratio = a.mul(&b.inv().unwrap());
        let back = b.mul(&a.inv().unwrap());
        prop_assert!(ratio.mul(&back).is_one());
        prop_assert_eq!(a == b, a.cross_eq(&b));
    }

    #[test]
    fn canonical_form_ignores_common_factors(a in coefficient(), f in poly()) {
        let scaled = QCoefficient::from_parts(
            a.valuation(),
            a.numerator().mul(&f),
            a.denominator().mul(&f),
        );
        prop_assert_eq!(scaled, a);
    }

    #[test]
    fn torus_ring_axioms(x in sparse_terms(2), y in sparse_terms(2), z in sparse_terms(2)) {
        let ctx = TorusContext::exact(a2(), 4);
        let (x, y, z) = (element(&ctx, &x), element(&ctx, &y), element(&ctx, &z));
        let left = x.mul(&y).unwrap().mul(&z).unwrap();
        let right = x.mul(&y.mul(&z).unwrap()).unwrap();
        prop_assert!(left.equals(&right).unwrap());
        let spread = x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap();
        prop_assert!(x.mul(&y.add(&z).unwrap()).unwrap().equals(&spread).unwrap());
        let spread = y.mul(&x).unwrap().add(&z.mul(&x).unwrap()).unwrap();
        prop_assert!(y.add(&z).unwrap().mul(&x).unwrap().equals(&spread).unwrap());
    }

    #[test]
    fn psi_recursion(alpha in proptest::collection::vec(0i64..=2, 2), c in -2i64..=2, order in 1usize..=6) {
        prop_assume!(alpha.iter().any(|&a| a > 0) && c != 0);
        let ctx = TorusContext::exact(a2(), order);
        let x = TorusElement::term(&ctx, &alpha, QCoefficient::from_i64(c));
        let lhs = psi_series(&x.scale_q_pow(2)).unwrap();
        let one_qx = TorusElement::one(&ctx).add(&x.scale_q_pow(1)).unwrap();
        let rhs = one_qx.mul(&psi_series(&x).unwrap()).unwrap();
        prop_assert!(lhs.equals(&rhs).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn quantum_mutation_is_sign_independent(seq in proptest::collection::vec(0usize..3, 1..5)) {
        let a3 = ExchangeMatrix::new(vec![vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]]).unwrap();
        let ctx = TorusContext::exact(a3, 4);
        let mut s = QuantumSeedSeries::initial(&ctx);
        for k in seq {
            let plus = s.mutate(k, 1).unwrap();
            prop_assert!(plus.equals(&s.mutate(k, -1).unwrap()).unwrap());
            prop_assert!(plus.check_commutation().unwrap());
            s = plus;
        }
    }

    #[test]
    fn rank_two_periods_give_tropical_identities(a in -1i64..=1, pick in any::<usize>()) {
        let b = ExchangeMatrix::new(vec![vec![0, a], vec![-a, 0]]).unwrap();
        let periods = search_periods(&b, 5).unwrap().periods;
        let found = &periods[pick % periods.len()];
        let r = verify_tropical_identity(&b, &found.schedule().unwrap(), 6).unwrap();
        prop_assert!(r.is_zero(), "{found:?}: {:?}", r.residual_terms);
    }

    #[test]
    fn shuffle_holds_on_arbitrary_prefixes(seq in proptest::collection::vec(0usize..2, 1..7)) {
        let len = seq.len();
        let sched = MutationSchedule::with_identity(seq, 2).unwrap();
        let r = verify_shuffle(&a2(), &sched, len, 5).unwrap();
        prop_assert!(r.is_zero(), "{:?}", r.residual_terms);
    }

    #[test]
    fn q_one_matches_classical(seq in proptest::collection::vec(0usize..2, 1..7), seed in any::<u64>()) {
        let ctx = TorusContext::exact(a2(), 12);
        let traj = quantum_trajectory(&ctx, &seq).unwrap();
        let mut s = seed;
        for _ in 0..20 {
            let y0: Vec<f64> = (0..2)
                .map(|_| {
                    s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    1e-3 + 0.04 * ((s >> 11) as f64 / (1u64 << 53) as f64)
                })
                .collect();
            let classical = numeric_trajectory(&a2(), &y0, &seq).unwrap();
            for (qs, cs) in traj.iter().zip(&classical) {
                for (qy, cy) in qs.y.iter().zip(&cs.y) {
                    let v = qy.eval_at_q_one(&y0).unwrap();
                    prop_assert!(((v - cy) / cy).abs() < 1e-12, "{v} vs {cy}");
                }
            }
        }
    }
}

#[test]
fn fixed_periods_give_tropical_identities() {
    for fixture in Builtin::ALL {
        let (b, s) = fixture.resolve();
        let order = if b.rank() <= 2 { 8 } else { 4 };
        assert!(verify_tropical_identity(&b, &s, order).unwrap().is_zero(), "{fixture}");
    }
}
