use harmonica::generate::{trial_seed, GenSpec, Generator};
use harmonica::polygon::{
    all_orders, duality_bridge, dual_step_index, is_pseudo_collinear, is_pseudo_concurrent, order_count,
    order_sensitivity_witness, CevaGon, MenelaosGon, Strategy,
};
use harmonica::{join, Line, Point, Rational, Scalar};
use proptest::prelude::*;

fn gen(seed: u64) -> Generator {
    Generator::new(GenSpec::default().with_seed(seed))
}

fn ceva(seed: u64, n: usize, concurrent: bool) -> Option<CevaGon<Rational>> {
    let mut g = gen(seed);
    let v = g.ngon(n).ok()?;
    let lines: Vec<Line<Rational>> = if concurrent {
        let c = g.point_avoiding(&v, &[]).ok()?;
        v.iter().map(|a| join(a, &c).ok()).collect::<Option<_>>()?
    } else {
        g.cevians(&v).ok()?
    };
    let gon = CevaGon::new(v, lines).ok()?;
    gon.ceva_product().ok()?;
    Some(gon)
}

fn menelaos(seed: u64, n: usize, transversal: bool) -> Option<MenelaosGon<Rational>> {
    let mut g = gen(seed);
    let v = g.ngon(n).ok()?;
    let gon = if transversal {
        let l = g.line_avoiding(&v).ok()?;
        MenelaosGon::on_transversal(v, &l).ok()?
    } else {
        let mut pts: Vec<Point<Rational>> = Vec::new();
        for k in 0..n {
            pts.push(g.point_between(&v[k], &v[(k + 1) % n]).ok()?);
        }
        MenelaosGon::new(v, pts).ok()?
    };
    gon.menelaos_product().ok()?;
    Some(gon)
}

#[test]
fn order_counts() {
    assert_eq!(order_count(4), 4);
    assert_eq!(order_count(6), 120);
    assert_eq!(all_orders(6).len(), 120);
}

#[test]
fn exhaustive_agreement_for_small_n() {
    for n in 4..=6 {
        for k in 0..4u64 {
            let seed = trial_seed(101, k * 10 + n as u64);
            for concurrent in [true, false] {
                let Some(gon) = ceva(seed, n, concurrent) else { continue };
                let red = is_pseudo_concurrent(&gon, &Strategy::Exhaustive).unwrap();
                assert!(red.agreement, "ceva n={n} seed={seed}");
                assert_eq!(red.holds, concurrent);
                assert_eq!(red.holds, gon.ceva_product().unwrap() == Rational::one());
            }
            for transversal in [true, false] {
                let Some(gon) = menelaos(seed, n, transversal) else { continue };
                let red = is_pseudo_collinear(&gon, &Strategy::Exhaustive).unwrap();
                assert!(red.agreement, "menelaos n={n} seed={seed}");
                assert_eq!(red.holds, transversal);
            }
        }
    }
}

#[test]
fn order_sensitivity_witness_behaves() {
    let (good, bad) = order_sensitivity_witness();
    assert!(is_pseudo_concurrent(&good, &Strategy::Exhaustive).unwrap().holds);
    assert!(!is_pseudo_concurrent(&bad, &Strategy::Exhaustive).unwrap().holds);
    assert_eq!(good.ceva_product().unwrap(), Rational::one());
    assert_ne!(bad.ceva_product().unwrap(), Rational::one());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ceva_product_survives_each_step(seed in any::<u64>(), n in 4usize..=7, concurrent in any::<bool>(), pick in any::<u64>()) {
        let Some(gon) = ceva(seed, n, concurrent) else { return Ok(()) };
        let i = (pick % n as u64) as usize + 1;
        let Ok(next) = gon.reduce_step(i) else { return Ok(()) };
        let Ok(after) = next.ceva_product() else { return Ok(()) };
        prop_assert_eq!(after, gon.ceva_product().unwrap());
    }

    #[test]
    fn menelaos_product_flips_sign_each_step(seed in any::<u64>(), n in 4usize..=7, transversal in any::<bool>(), pick in any::<u64>()) {
        let Some(gon) = menelaos(seed, n, transversal) else { return Ok(()) };
        let i = (pick % n as u64) as usize + 1;
        let Ok(next) = gon.reduce_step(i) else { return Ok(()) };
        let Ok(after) = next.menelaos_product() else { return Ok(()) };
        prop_assert_eq!(after, -gon.menelaos_product().unwrap());
    }

    #[test]
    fn product_criteria_match_predicates(seed in any::<u64>(), n in 4usize..=6, flag in any::<bool>()) {
        if let Some(gon) = ceva(seed, n, flag) {
            let red = is_pseudo_concurrent(&gon, &Strategy::Seeded(seed)).unwrap();
            prop_assert_eq!(red.holds, gon.ceva_product().unwrap() == Rational::one());
        }
        if let Some(gon) = menelaos(seed, n, flag) {
            let red = is_pseudo_collinear(&gon, &Strategy::Seeded(seed)).unwrap();
            let target = if n % 2 == 0 { Rational::one() } else { -Rational::one() };
            prop_assert_eq!(red.holds, gon.menelaos_product().unwrap() == target);
        }
    }

    #[test]
    fn duality_preserves_verdict(seed in any::<u64>(), n in 4usize..=6, flag in any::<bool>()) {
        let Some(gon) = menelaos(seed, n, flag) else { return Ok(()) };
        let dual = duality_bridge(&gon);
        let direct = is_pseudo_collinear(&gon, &Strategy::First).unwrap();
        let bridged = is_pseudo_concurrent(&dual, &Strategy::First).unwrap();
        prop_assert_eq!(direct.holds, bridged.holds);
    }

    #[test]
    fn dual_steps_correspond(seed in any::<u64>(), n in 4usize..=6, pick in any::<u64>()) {
        let Some(gon) = menelaos(seed, n, true) else { return Ok(()) };
        let i = (pick % n as u64) as usize + 1;
        let Ok(reduced) = gon.reduce_step(i) else { return Ok(()) };
        let Ok(dual_reduced) = duality_bridge(&gon).reduce_step(dual_step_index(n, i)) else { return Ok(()) };
        prop_assert_eq!(duality_bridge(&reduced), dual_reduced);
    }

    #[test]
    fn sampled_orders_agree_for_larger_n(seed in any::<u64>(), n in 7usize..=8, flag in any::<bool>()) {
        if let Some(gon) = ceva(seed, n, flag) {
            let red = is_pseudo_concurrent(&gon, &Strategy::Sampled { seed, orders: 20 }).unwrap();
            prop_assert!(red.agreement);
            prop_assert_eq!(red.holds, flag);
        }
    }
}
