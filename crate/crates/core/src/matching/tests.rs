use super::*;
use crate::arith::{parse_rational, Precision};
use crate::geometry::fixtures::{eight_vertex, twenty_vertex, unit_square};
use crate::geometry::{random_simple_polytope, Polytope};
use crate::moments::PolytopeOracle;
use proptest::prelude::*;

fn q(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from(x)).collect()
}

fn sorted(mut vs: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    vs.sort();
    vs
}

#[test]
fn frames_are_deterministic_and_independent() {
    for d in 2..=4 {
        let a = choose_direction_frame(d, 7).unwrap();
        assert_eq!(a, choose_direction_frame(d, 7).unwrap());
        assert_eq!(a.z_others.len(), d - 1);
        assert!(!linalg::determinant(a.matrix()).is_zero());
    }
    assert!(choose_direction_frame(1, 0).is_err());
    assert!(matches!(
        DirectionFrame::from_ints(&[1, 2], &[&[2, 4]]),
        Err(Error::SingularFrame)
    ));
}

#[test]
fn unit_square_plane() {
    let src = PolytopeOracle::new(unit_square());
    let m = match_plane::<Rational, _>(
        &src,
        &ints(&[1, 2]),
        &ints(&[1, 0]),
        VertexCount::Known(4),
        Method::Pade,
        (),
    )
    .unwrap();
    let want: Vec<(Rational, Rational)> = [(0, 0), (1, 1), (2, 0), (3, 1)]
        .iter()
        .map(|&(a, b)| (Rational::from(a), Rational::from(b)))
        .collect();
    assert_eq!(m.pairs, want);
    assert!(match_plane::<Rational, _>(
        &src,
        &ints(&[1, 2]),
        &ints(&[2, 4]),
        VertexCount::Known(4),
        Method::Pade,
        ()
    )
    .is_err());
}

#[test]
fn eight_vertex_complex_plane_at_25_bits() {
    let src = PolytopeOracle::new(eight_vertex());
    let ctx = Precision(25);
    let m = match_plane::<Float, _>(
        &src,
        &ints(&[2, 3, 4]),
        &ints(&[-5, 2, -8]),
        VertexCount::Known(8),
        Method::Pade,
        ctx,
    )
    .unwrap();
    let exact = exact_pairs(
        eight_vertex().vertices(),
        &ints(&[2, 3, 4]),
        &ints(&[-5, 2, -8]),
    );
    for (got, want) in m.pairs.iter().zip(&exact) {
        assert!((Scalar::to_f64(&got.0) - Scalar::to_f64(&want.0)).abs() <= 0.05);
        assert!((Scalar::to_f64(&got.1) - Scalar::to_f64(&want.1)).abs() <= 0.05);
    }
}

#[test]
fn align_examples() {
    let p = vec![(q("1"), q("5")), (q("2"), q("6"))];
    let m = align_planes(&[p.clone(), p.clone()], ()).unwrap();
    assert_eq!(m.consensus_re, vec![q("1"), q("2")]);
    assert_eq!(m.others, vec![vec![q("5"), q("6")], vec![q("5"), q("6")]]);

    let off = vec![(q("1"), q("5")), (q("3"), q("6"))];
    assert!(matches!(
        align_planes(&[p.clone(), p.clone(), off.clone()], ()),
        Err(Error::AlignmentFailed { plane: 2, .. })
    ));
    assert!(matches!(
        align_planes(&[p.clone(), p[..1].to_vec()], ()),
        Err(Error::InconsistentN(_))
    ));

    // Float mode tolerates differences below a quarter of the smallest gap.
    let ctx = Precision(40);
    let f = |x: &str| Float::from_rational(&q(x), ctx);
    let a = vec![(f("0"), f("1")), (f("100"), f("2"))];
    let b = vec![(f("1/1000"), f("3")), (f("100"), f("4"))];
    let m = align_planes(&[a.clone(), b], ctx).unwrap();
    assert!((Scalar::to_f64(&m.consensus_re[0]) - 0.0005).abs() < 1e-9);
    let c = vec![(f("60"), f("3")), (f("100"), f("4"))];
    assert!(align_planes(&[a, c], ctx).is_err());
}

#[test]
fn eight_vertex_second_plane_consensus() {
    let src = PolytopeOracle::new(eight_vertex());
    let frame = DirectionFrame::from_ints(&[2, 3, 4], &[&[-5, 2, -8], &[1, -7, 3]]).unwrap();
    let ctx = Precision(64);
    let planes: Vec<Vec<(Float, Float)>> = frame
        .z_others
        .iter()
        .map(|z| {
            match_plane::<Float, _>(
                &src,
                &frame.z_re,
                z,
                VertexCount::Known(8),
                Method::Pade,
                ctx,
            )
            .unwrap()
            .pairs
        })
        .collect();
    let m = align_planes(&planes, ctx).unwrap();
    let exact = exact_pairs(eight_vertex().vertices(), &frame.z_re, &frame.z_others[1]);
    for (c, e) in m.consensus_re.iter().zip(&exact) {
        assert!((Scalar::to_f64(c) - Scalar::to_f64(&e.0)).abs() < 0.005);
    }
}

#[test]
fn assemble_examples() {
    let frame = DirectionFrame::from_ints(&[1, 2], &[&[1, 0]]).unwrap();
    let m = MatchedProjections {
        consensus_re: ints(&[0, 1, 2, 3]),
        others: vec![ints(&[0, 1, 0, 1])],
    };
    let v = assemble_vertices(&m, &frame, ()).unwrap();
    assert_eq!(
        sorted(v),
        sorted(vec![
            ints(&[0, 0]),
            ints(&[1, 0]),
            ints(&[1, 1]),
            ints(&[0, 1])
        ])
    );

    let id = DirectionFrame::from_ints(&[1, 0, 0], &[&[0, 1, 0], &[0, 0, 1]]).unwrap();
    let m = MatchedProjections {
        consensus_re: vec![q("1/2")],
        others: vec![vec![q("-3")], vec![q("7/9")]],
    };
    assert_eq!(
        assemble_vertices(&m, &id, ()).unwrap(),
        vec![vec![q("1/2"), q("-3"), q("7/9")]]
    );
}

#[test]
fn exact_round_trips() {
    for p in [unit_square(), eight_vertex()] {
        let r = reconstruct(
            &PolytopeOracle::new(p.clone()),
            ScalarMode::exact(),
            ReconstructOptions::new(VertexCount::AtMost(p.n_vertices()), 3),
        )
        .unwrap();
        assert_eq!(sorted(r.vertices), sorted(p.vertices().to_vec()));
        assert_eq!(r.estimated_n, p.n_vertices());
        assert_eq!(r.planes.len(), p.dim() - 1);
    }
    let r = reconstruct(
        &PolytopeOracle::new(eight_vertex()),
        ScalarMode::exact(),
        ReconstructOptions::new(VertexCount::Known(8), 11),
    )
    .unwrap();
    assert!(r
        .vertices
        .contains(&vec![q("17/4"), q("-14/3"), q("-7/12")]));
}

fn distance(a: &[Vec<Rational>], b: &Polytope) -> f64 {
    let mut worst: f64 = 0.0;
    for x in a {
        let best = b
            .vertices()
            .iter()
            .map(|y| {
                x.iter()
                    .zip(y)
                    .map(|(s, t)| Scalar::to_f64(&(s.clone() - t)).powi(2))
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(f64::INFINITY, f64::min);
        worst = worst.max(best);
    }
    worst
}

#[test]
fn twenty_vertex_float_75_bits() {
    let p = twenty_vertex();
    let r = reconstruct(
        &PolytopeOracle::new(p.clone()),
        ScalarMode::float(75).unwrap(),
        ReconstructOptions::new(VertexCount::Known(20), 1),
    )
    .unwrap();
    assert_eq!(r.vertices.len(), 20);
    assert!(
        distance(&r.vertices, &p) <= 1e-3,
        "{}",
        distance(&r.vertices, &p)
    );
}

#[test]
fn budget_exhaustion_carries_trail() {
    // N_max below the true count never yields a consistent answer.
    let opts = ReconstructOptions {
        budget: 3,
        ..ReconstructOptions::new(VertexCount::AtMost(2), 0)
    };
    match reconstruct(
        &PolytopeOracle::new(unit_square()),
        ScalarMode::exact(),
        opts,
    ) {
        Err(Error::BudgetExhausted { attempts: 3, trail }) => assert_eq!(trail.len(), 3),
        other => panic!("{other:?}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn frame_invariance(seed in any::<u64>(), d in 2usize..4, s1 in any::<u64>(), s2 in any::<u64>()) {
        let p = random_simple_polytope(d, d + 3, seed).unwrap();
        let src = PolytopeOracle::new(p.clone());
        let count = VertexCount::AtMost(p.n_vertices());
        let a = reconstruct(&src, ScalarMode::exact(), ReconstructOptions::new(count, s1)).unwrap();
        let b = reconstruct(&src, ScalarMode::exact(), ReconstructOptions::new(count, s2).method(Method::Prony)).unwrap();
        prop_assert_eq!(sorted(a.vertices.clone()), sorted(p.vertices().to_vec()));
        prop_assert_eq!(sorted(a.vertices), sorted(b.vertices));
    }
}
