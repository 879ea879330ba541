use harmonica::{
    collinear, concurrent, cross_ratio_lines, cross_ratio_points, fourth_harmonic_line, harmonic_conjugate, join,
    meet, point, signed_area, signed_ratio, Dual, Line, Point, Rational, Scalar, SegmentRatio,
};
use proptest::prelude::*;

type P = Point<Rational>;

fn r(v: i64) -> Rational {
    Rational::integer(v)
}

fn pt() -> impl Strategy<Value = P> {
    (-30i64..=30, -30i64..=30, 1i64..=5).prop_map(|(x, y, w)| point(x, y, w))
}

/// Four points on the line through `p` and `q`, given by parameters.
fn on_line(p: &P, q: &P, t: i64) -> P {
    let c = |k: usize| p.coords()[k].clone() + r(t) * q.coords()[k].clone();
    Point::new(c(0), c(1), c(2))
}

fn nonsingular() -> impl Strategy<Value = [[i64; 3]; 3]> {
    prop::array::uniform3(prop::array::uniform3(-6i64..=6)).prop_filter("singular", |m| {
        let d = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        d != 0
    })
}

fn apply(m: &[[i64; 3]; 3], p: &P) -> P {
    let c = p.coords();
    let row = |i: usize| (0..3).fold(r(0), |acc, j| acc + r(m[i][j]) * c[j].clone());
    Point::new(row(0), row(1), row(2))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn conjugate_is_an_involution(p in pt(), q in pt(), t in -9i64..=9) {
        prop_assume!(p != q && t != 0);
        let x = on_line(&p, &q, t);
        prop_assume!(x != p && x != q);
        let y = harmonic_conjugate(&p, &q, &x).unwrap();
        prop_assert_eq!(harmonic_conjugate(&p, &q, &y).unwrap(), x.clone());
        if p.is_finite() && q.is_finite() && x.is_finite() && y.is_finite() {
            prop_assert_eq!(cross_ratio_points(&p, &q, &x, &y).unwrap(), -Rational::one());
        }
    }

    #[test]
    fn cross_ratio_is_projectively_invariant(p in pt(), q in pt(), ts in prop::array::uniform4(-9i64..=9), m in nonsingular()) {
        prop_assume!(p != q);
        let pts: Vec<P> = ts.iter().map(|&t| on_line(&p, &q, t)).collect();
        for i in 0..4 {
            for j in i + 1..4 {
                prop_assume!(pts[i] != pts[j]);
            }
        }
        let img: Vec<P> = pts.iter().map(|x| apply(&m, x)).collect();
        prop_assume!(pts.iter().chain(img.iter()).all(|x| x.is_finite()));
        let before = cross_ratio_points(&pts[0], &pts[1], &pts[2], &pts[3]).unwrap();
        let after = cross_ratio_points(&img[0], &img[1], &img[2], &img[3]).unwrap();
        prop_assert_eq!(before, after);
    }

    #[test]
    fn pencil_and_transversal_agree(v in pt(), p in pt(), q in pt(), ts in prop::array::uniform4(-9i64..=9)) {
        prop_assume!(p != q && !collinear(&v, &p, &q));
        let pts: Vec<P> = ts.iter().map(|&t| on_line(&p, &q, t)).collect();
        for i in 0..4 {
            for j in i + 1..4 {
                prop_assume!(pts[i] != pts[j]);
            }
        }
        prop_assume!(pts.iter().all(|x| x.is_finite()));
        let lines: Vec<Line<Rational>> = pts.iter().map(|x| join(&v, x).unwrap()).collect();
        let on_points = cross_ratio_points(&pts[0], &pts[1], &pts[2], &pts[3]).unwrap();
        let on_lines = cross_ratio_lines(&v, &lines[0], &lines[1], &lines[2], &lines[3]).unwrap();
        prop_assert_eq!(on_points, on_lines);
    }

    #[test]
    fn fourth_harmonic_line_meets_transversal_in_conjugate(v in pt(), p in pt(), q in pt(), t in -9i64..=9) {
        prop_assume!(p != q && t != 0 && !collinear(&v, &p, &q));
        let x = on_line(&p, &q, t);
        prop_assume!(x != p && x != q);
        let transversal = join(&p, &q).unwrap();
        let h = fourth_harmonic_line(&v, &join(&v, &p).unwrap(), &join(&v, &q).unwrap(), &join(&v, &x).unwrap()).unwrap();
        prop_assert_eq!(meet(&h, &transversal).unwrap(), harmonic_conjugate(&p, &q, &x).unwrap());
    }

    #[test]
    fn join_meet_dualize(p in pt(), q in pt(), s in pt()) {
        prop_assume!(p != q);
        let l = join(&p, &q).unwrap();
        prop_assert_eq!(meet(&p.dual(), &q.dual()).unwrap(), l.dual());
        prop_assert_eq!(collinear(&p, &q, &s), concurrent(&p.dual(), &q.dual(), &s.dual()));
    }

    /// `AD/DB = [CPA] / [BPC]` for `D = AB x CP`.
    #[test]
    fn area_principle(a in pt(), b in pt(), c in pt(), p in pt()) {
        prop_assume!(a != b && c != p);
        let ab = join(&a, &b).unwrap();
        let cp = join(&c, &p).unwrap();
        prop_assume!(ab != cp);
        let d = meet(&ab, &cp).unwrap();
        let lhs = signed_ratio(&a, &d, &b).unwrap();
        let num = signed_area(&c, &p, &a).unwrap();
        let den = signed_area(&b, &p, &c).unwrap();
        match lhs {
            SegmentRatio::Finite(v) => prop_assert_eq!(Some(v), num.checked_div(&den)),
            SegmentRatio::Infinite => prop_assert!(den.is_zero()),
        }
    }

    #[test]
    fn signed_ratio_ignores_orientation(a in pt(), b in pt(), t in -9i64..=9) {
        prop_assume!(a != b);
        let d = on_line(&a, &b, t);
        prop_assume!(d != a && d != b);
        let forward = signed_ratio(&a, &d, &b).unwrap().finite().unwrap();
        let backward = signed_ratio(&b, &d, &a).unwrap().finite().unwrap();
        prop_assert_eq!(forward * backward, Rational::one());
    }
}
