use harmonica::generate::{
    harmonic_completion_quadrilateral, harmonic_completion_triangle, in_general_position, GenSpec, Generator,
};
use harmonica::pencil::{complete_fourth_line, quad_diag_product, FourthLineCriterion, QuadrilateralConfig, TriangleConfig};
use harmonica::suite::{force_hypothesis, Instance};
use harmonica::{Line, Rational, Scalar};

fn spec(seed: u64) -> GenSpec {
    GenSpec::default().with_seed(seed)
}

#[test]
fn identical_specs_give_identical_json() {
    for id in ["ceva-ngon", "menelaos-ngon", "quad-equivalence", "desargues", "bisectors-ngon"] {
        let a = force_hypothesis(id, spec(5), None).unwrap();
        let b = force_hypothesis(id, spec(5), None).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}

#[test]
fn validator_sweep() {
    let mut g = Generator::new(spec(99));
    for _ in 0..1000 {
        let v = g.ngon(5).unwrap();
        assert!(in_general_position(&v));
    }
    for _ in 0..200 {
        let v = g.triangle().unwrap();
        let lines: [Line<Rational>; 3] = g.cevians(&v).unwrap().try_into().unwrap();
        let t = harmonic_completion_triangle(v, lines).unwrap();
        TriangleConfig::new(t.vertices.clone(), t.g.clone(), t.h.clone()).unwrap();
        let q = g.quadrilateral().unwrap();
        let lines: [Line<Rational>; 4] = g.cevians(&q).unwrap().try_into().unwrap();
        let c = harmonic_completion_quadrilateral(q, lines).unwrap();
        QuadrilateralConfig::new(c.vertices.clone(), c.g.clone(), c.h.clone()).unwrap();
    }
}

#[test]
fn forced_quadrilaterals_have_unit_diagonal_product() {
    for seed in 0..30 {
        let Instance::Quadrilateral { vertices, g } = force_hypothesis("quad-ell-pairs", spec(seed), None).unwrap()
        else {
            panic!("wrong instance type")
        };
        let q = QuadrilateralConfig::from_g(vertices.clone(), g.clone()).unwrap();
        assert_eq!(quad_diag_product(&q).unwrap(), Rational::one());
        let again = complete_fourth_line(&vertices, &[g[0].clone(), g[1].clone(), g[2].clone()], FourthLineCriterion::DiagonalProduct).unwrap();
        assert_eq!(again, g[3]);
    }
}

#[test]
fn forced_ngons_carry_hypotheses() {
    let Instance::Ceva { vertices, lines } = force_hypothesis("ceva-ngon", spec(1), Some(5)).unwrap() else { panic!() };
    assert_eq!(vertices.len(), 5);
    assert!(harmonica::all_concurrent(&lines));
    let Instance::Menelaos { points, .. } = force_hypothesis("menelaos-ngon", spec(1), Some(6)).unwrap() else { panic!() };
    assert_eq!(points.len(), 6);
    assert!(harmonica::all_collinear(&points));
}
