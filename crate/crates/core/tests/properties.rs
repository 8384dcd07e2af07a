use proptest::prelude::*;

use compose_approx::faadibruno::composite_jet;
use compose_approx::jets::{composite_series, Layout};
use compose_approx::minimax::{weighted_remez, RemezOptions};
use compose_approx::weighted::{weighted_sup_norm, GridConfig, JacobiWeight};
use compose_approx::{Expr, JetN};

fn poly_src(c: &[f64], var: &str) -> String {
    c.iter()
        .enumerate()
        .map(|(i, a)| format!("({a})*{var}^{i}"))
        .collect::<Vec<_>>()
        .join(" + ")
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn univariate_jetn_matches_jet1(x in -2.0f64..2.0, order in 0usize..7) {
        let f = Expr::univariate("sin(x)*exp(x/2) + 1/(2 + x^2)").unwrap();
        let a = f.eval_jet1(x, order).unwrap();
        let layout = Layout::shared(1, order);
        let b = f.eval(&[JetN::variable(x, 0, &layout)]).unwrap();
        for k in 0..=order {
            prop_assert_eq!(a.derivative(k).to_bits(), b.partial(&[k as u32]).unwrap().to_bits());
        }
    }

    #[test]
    fn expansion_matches_jets_on_polynomials(
        cf in prop::collection::vec(-2.0f64..2.0, 1..5),
        cg in prop::collection::vec(-2.0f64..2.0, 1..5),
        x0 in -1.0f64..1.0,
        r in 1usize..7,
    ) {
        let f = Expr::outer(&poly_src(&cf, "y1"), 1).unwrap();
        let g = vec![Expr::univariate(&poly_src(&cg, "x")).unwrap()];
        let a = composite_jet(&f, &g, x0, r).unwrap();
        let b = composite_series(&f, &g, x0, r).unwrap().derivatives();
        for (p, q) in a.iter().zip(&b) {
            let mag = p.abs().max(q.abs()).max(1.0);
            prop_assert!((p - q).abs() <= 1e-10 * mag, "{} vs {}", p, q);
        }
    }

    #[test]
    fn sup_norm_dominates_samples(gamma in 0.0f64..0.95, delta in 0.0f64..0.95, s in -1.0f64..1.0) {
        let w = JacobiWeight::new(gamma, delta).unwrap();
        let f = |x: f64| Ok((3.0 * x).cos() + x);
        let n = weighted_sup_norm(&f, &w, 1, &GridConfig::default()).unwrap();
        let phi = (1.0 - s * s).sqrt();
        let v = (f(s).unwrap() * phi * w.eval(s).unwrap()).abs();
        prop_assert!(n.value >= v * (1.0 - 1e-12));
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn best_error_decreases_with_degree(gamma in 0.0f64..0.75, delta in 0.0f64..0.75, m in 1usize..10) {
        let w = JacobiWeight::new(gamma, delta).unwrap();
        let f = |x: f64| Ok((1.0 + x).powf(1.5) * x.exp());
        let opts = RemezOptions::default();
        let a = weighted_remez(&f, m, &w, &opts).unwrap();
        let b = weighted_remez(&f, m + 1, &w, &opts).unwrap();
        prop_assert!(b.error <= a.error * (1.0 + 1e-8));
        prop_assert!(a.levelled <= a.error * (1.0 + 1e-12));
    }
}
