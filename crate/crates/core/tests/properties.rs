use almost_circles::combinatorics::{
    closure_from_orderings, convex_dimension, maximal_chains, orderings_from_geometry,
    restrict_system, verify_convex_geometry, ClosureSystem, LinearOrderTuple, Subset,
};
use almost_circles::curves::{derivative_f64, eval_f64, sector_affine_map, AffineMap, GoodFunction, PolynomialArc};
use almost_circles::hull::arc_support;
use almost_circles::rational::ratio;
use proptest::prelude::*;

fn permutation(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((1..=n).collect::<Vec<_>>()).prop_shuffle()
}

fn order_tuple() -> impl Strategy<Value = LinearOrderTuple> {
    (1usize..=5, 1usize..=4)
        .prop_flat_map(|(n, t)| (Just(n), prop::collection::vec(permutation(n), t)))
        .prop_map(|(n, orders)| LinearOrderTuple::new(n, orders).unwrap())
}

/// `X` is closed iff every `y ∉ X` has an order placing all of `X` below it.
fn brute_force_closed_sets(orders: &LinearOrderTuple) -> Vec<u32> {
    let n = orders.n();
    let mut closed = Vec::new();
    for bits in 0u32..(1 << n) {
        let inside = |e: usize| bits >> (e - 1) & 1 == 1;
        let ok = (1..=n).filter(|&y| !inside(y)).all(|y| {
            orders.orders().iter().any(|ord| {
                let py = ord.iter().position(|&e| e == y).unwrap();
                ord.iter().enumerate().all(|(k, &e)| !inside(e) || k < py)
            })
        });
        if ok {
            closed.push(bits);
        }
    }
    closed
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn generated_systems_match_brute_force(orders in order_tuple()) {
        let sys = closure_from_orderings(&orders).unwrap();
        let mut got: Vec<u32> = sys.closed_sets().iter().map(|s| s.0).collect();
        got.sort_unstable();
        prop_assert_eq!(got, brute_force_closed_sets(&orders));
        prop_assert!(verify_convex_geometry(&sys).unwrap().is_convex_geometry());
    }

    #[test]
    fn chains_regenerate_the_geometry(orders in order_tuple()) {
        let sys = closure_from_orderings(&orders).unwrap();
        let back = closure_from_orderings(&orderings_from_geometry(&sys).unwrap()).unwrap();
        prop_assert_eq!(back, sys);
    }

    #[test]
    fn dimension_is_bounded(orders in order_tuple()) {
        let sys = closure_from_orderings(&orders).unwrap();
        let d = convex_dimension(&sys).unwrap();
        prop_assert!(d >= 1);
        prop_assert!(d <= orders.len());
        prop_assert!(d <= maximal_chains(&sys).unwrap().len());
    }

    #[test]
    fn restrictions_stay_convex(orders in order_tuple(), mask in any::<u32>()) {
        let sys = closure_from_orderings(&orders).unwrap();
        let e0 = Subset(mask & sys.full().0);
        let r = restrict_system(&sys, e0).unwrap();
        prop_assert_eq!(r.labels.len(), e0.len());
        prop_assert!(verify_convex_geometry(&r.system).unwrap().is_convex_geometry());
    }

    #[test]
    fn closure_operator_axioms(orders in order_tuple(), a in any::<u32>(), b in any::<u32>()) {
        let sys = closure_from_orderings(&orders).unwrap();
        let (a, b) = (Subset(a & sys.full().0), Subset(b & sys.full().0));
        let ca = sys.closure_of(a);
        prop_assert!(a.is_subset_of(ca));
        prop_assert_eq!(sys.closure_of(ca), ca);
        prop_assert!(sys.closure_of(a.intersection(b)).is_subset_of(ca));
        prop_assert_eq!(sys.closure_of(Subset(0)), Subset(0));
        prop_assert!(ClosureSystem::is_closed(&sys, ca));
    }
}

/// `max_x ⟨u, ψ(x, f_α(x))⟩` from a grid of 2·10⁴ points, polished by Newton
/// steps on the concave objective.
fn support_oracle(alpha: f64, map: &AffineMap, u: [f64; 2]) -> f64 {
    let [c1, c2] = map.transpose_linear(u);
    let offset = u[0] * map.b1 + u[1] * map.b2;
    let g = |x: f64| c1 * x + c2 * eval_f64(alpha, x);
    let steps = 20_000;
    let (mut best_x, mut best) = (0.0, g(0.0));
    for k in 1..=steps {
        let x = k as f64 / steps as f64;
        if g(x) >= best {
            (best_x, best) = (x, g(x));
        }
    }
    if c2 > 0.0 {
        let mut x = best_x;
        for _ in 0..50 {
            let d1 = c1 + c2 * derivative_f64(alpha, x);
            let h = 1e-6;
            let d2 = c2 * (derivative_f64(alpha, x + h) - derivative_f64(alpha, x - h)) / (2.0 * h);
            if d2 >= 0.0 {
                break;
            }
            x = (x - d1 / d2).clamp(0.0, 1.0);
        }
        best = best.max(g(x));
    }
    best + offset
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn arc_support_matches_dense_oracle(
        num in 1i64..1000,
        phi in 0.0f64..std::f64::consts::TAU,
        sector in 0usize..6,
        shear in -1.0f64..1.0,
    ) {
        let good = GoodFunction::new(ratio(num, 1000)).unwrap();
        let alpha = good.alpha_f64();
        let outer = AffineMap::new(1.0, shear, 0.3 * shear, 1.5, shear, -0.5).unwrap();
        let map = outer.compose(&sector_affine_map(2, 3, 1 + sector / 3, 1 + sector % 3).unwrap());
        let u = [phi.cos(), phi.sin()];
        let got = arc_support(&PolynomialArc::new(good, map), u);
        let want = support_oracle(alpha, &map, u);
        prop_assert!((got - want).abs() <= 1e-10, "got {got}, oracle {want}");
    }
}
