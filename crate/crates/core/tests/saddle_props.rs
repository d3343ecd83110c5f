use std::f64::consts::PI;

use proptest::prelude::*;

use qdilog::exchange::numeric_trajectory;
use qdilog::saddle::{
    build_solution, coordinate_maps, lambda_ray, lambda_scan, residuals, SaddleMode,
    DEFAULT_LAMBDA_IM_MAX,
};
use qdilog::{Builtin, ExchangeMatrix};

fn u1_for(n: usize) -> impl Strategy<Value = Vec<f64>> {
    proptest::collection::vec(-2.0f64..2.0, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn stationary_point_for_every_fixture(u1 in u1_for(4)) {
        for fixture in Builtin::ALL {
            let (b, s) = fixture.resolve();
            let st = build_solution(&b, &s, &u1[..b.rank()], SaddleMode::B).unwrap();
            let r = residuals(&st, &b, &s).unwrap();
            prop_assert!(r.max_residual() < 1e-10, "{fixture}: {r:?}");
            prop_assert!(r.action_value.norm() < 1e-10, "{fixture}: {r:?}");
            prop_assert!((r.action_value - r.cross_check_value).norm() < 1e-12, "{fixture}: {r:?}");
        }
    }

    #[test]
    fn construction_identities(u1 in u1_for(2)) {
        let (b, s) = Builtin::A2.resolve();
        let st = build_solution(&b, &s, &u1, SaddleMode::B).unwrap();
        for i in 0..2 {
            prop_assert!((st.ptilde[0][i] - st.w[0][i]).norm() < 1e-14);
        }
        for (t, &k) in s.sequence.iter().enumerate() {
            prop_assert!((st.p[t][k] - st.ptilde[t][k]).norm() < 1e-14, "t = {}", t + 1);
        }
        let y0: Vec<f64> = st.w[0].iter().map(|w| (2.0 * w.re).exp()).collect();
        let classical = numeric_trajectory(&b, &y0, &s.sequence).unwrap();
        for (t, wt) in st.w.iter().enumerate() {
            for (i, w) in wt.iter().enumerate() {
                let y = classical[t].y[i];
                prop_assert!((((2.0 * w.re).exp() - y) / y).abs() < 1e-10, "t = {}, i = {}", t + 1, i + 1);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn lambda_mode_approaches_b_mode(u1 in u1_for(2)) {
        let (b, s) = Builtin::A2.resolve();
        let ray = lambda_ray(PI / 3.0, &[0.1, 0.05, 0.01, 0.001]);
        let rows = lambda_scan(&b, &s, &u1, &ray, DEFAULT_LAMBDA_IM_MAX).unwrap();
        for r in &rows {
            prop_assert!(r.max_residual < 1e-10 && r.action_abs < 1e-10, "{r:?}");
        }
        prop_assert!(rows.windows(2).all(|w| w[1].y_gap < w[0].y_gap));
        prop_assert!(rows.last().unwrap().action_gap < 1e-10);
    }
}

proptest! {
    #[test]
    fn coordinate_maps_are_dual(
        upper in proptest::collection::vec(-3i64..=3, 6),
        k in 0usize..4,
        eps in prop_oneof![Just(1i8), Just(-1i8)],
        u in proptest::collection::vec(-5.0f64..5.0, 4),
        w in proptest::collection::vec(-5.0f64..5.0, 4),
    ) {
        let mut rows = vec![vec![0i64; 4]; 4];
        let mut it = upper.into_iter();
        for i in 0..4 {
            for j in (i + 1)..4 {
                let v = it.next().unwrap();
                rows[i][j] = v;
                rows[j][i] = -v;
            }
        }
        let b = ExchangeMatrix::new(rows).unwrap();
        let m = coordinate_maps(&b, k, eps).unwrap();
        let id: Vec<Vec<i64>> = (0..4).map(|i| (0..4).map(|j| i64::from(i == j)).collect()).collect();
        prop_assert_eq!(m.duality_matrix(), id);
        prop_assert!(m.pairing_defect(&u, &w).abs() < 1e-12);
    }
}
