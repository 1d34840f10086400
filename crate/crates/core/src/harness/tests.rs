use super::*;
use crate::arith::{parse_rational, ScalarMode};
use crate::geometry::fixtures::{
    eight_vertex, twenty_vertex, unit_cube, unit_square, EIGHT_VERTEX_ADJACENCY,
};
use crate::geometry::random_simple_polytope;
use crate::matching::{reconstruct, ReconstructOptions};
use crate::moments::{Direction, MomentSource, PolytopeOracle};
use crate::recovery::{Method, VertexCount};
use proptest::prelude::*;

fn pts(rows: &[&[&str]]) -> Vec<Vec<Rational>> {
    rows.iter()
        .map(|r| r.iter().map(|s| parse_rational(s).unwrap()).collect())
        .collect()
}

#[test]
fn distance_examples() {
    let a = pts(&[&["0", "0"], &["1", "0"], &["0", "1"]]);
    let b = pts(&[&["0", "1"], &["0", "0"], &["1", "0"]]);
    let d = vertex_set_distance(&a, &b).unwrap();
    assert_eq!(d.value, 0.0);
    assert_eq!(d.assignment, vec![1, 2, 0]);

    let shifted = pts(&[&["3/1000", "0"], &["1", "0"], &["0", "1"]]);
    assert!((vertex_set_distance(&a, &shifted).unwrap().value - 0.003).abs() < 1e-15);

    // Greedy nearest-neighbour pairing would give 2; the bottleneck is 1.
    let c = pts(&[&["0"], &["2"]]);
    let e = pts(&[&["1"], &["3"]]);
    assert_eq!(vertex_set_distance(&c, &e).unwrap().value, 1.0);

    assert!(matches!(
        vertex_set_distance(&a, &a[..2]),
        Err(Error::SizeMismatch(3, 2))
    ));
    assert_eq!(vertex_set_distance(&[], &[]).unwrap().value, 0.0);
}

#[test]
fn polytope_json_round_trip() {
    for p in [unit_square(), eight_vertex(), twenty_vertex()] {
        let back = polytope_from_json(&polytope_to_json(&p)).unwrap();
        assert_eq!(back.vertices(), p.vertices());
        assert_eq!(back.facets().len(), p.facets().len());
    }
    let bare = r#"{"format": "polyrecon-polytope/1", "dim": 2, "vertices": [["0","0"],["1","0"],["0","1/2"]]}"#;
    assert_eq!(polytope_from_json(bare).unwrap().facets().len(), 3);
    assert!(polytope_from_json(&bare.replace("polytope/1", "moments/1")).is_err());
    assert!(polytope_from_json("{").is_err());
}

#[test]
fn moments_json_round_trip() {
    let src = PolytopeOracle::new(eight_vertex());
    let z = Direction::from_ints(&[1, 2, -1], Some(&[0, 1, 3])).unwrap();
    let seq = src.moments::<Rational>(&z, 6, ()).unwrap();
    let rec = crate::moments::MomentRecord {
        direction: z,
        mode: ScalarMode::exact(),
        values: seq.moments.clone(),
    };
    let back = moments_from_json(&moments_to_json(std::slice::from_ref(&rec))).unwrap();
    assert_eq!(back, vec![rec]);
}

#[test]
fn report_json_and_off() {
    let p = unit_cube();
    let r = reconstruct(
        &PolytopeOracle::new(p.clone()),
        ScalarMode::exact(),
        ReconstructOptions::new(VertexCount::Known(8), 3),
    )
    .unwrap();
    let file = ReportFile::new(&r, Some(0.0));
    let back = report_from_json(&report_to_json(&file)).unwrap();
    assert_eq!(back, file);
    assert_eq!(back.vertices().unwrap(), r.vertices);

    let off = report_to_off(&back).unwrap();
    assert!(off.starts_with("OFF\n8 6 12\n"));

    let float = reconstruct(
        &PolytopeOracle::new(p),
        ScalarMode::float(64).unwrap(),
        ReconstructOptions::new(VertexCount::Known(8), 3),
    )
    .unwrap();
    let cloud = report_to_off(&ReportFile::new(&float, None)).unwrap();
    assert!(cloud.contains("# point cloud only\n8 0 0\n"));
}

fn faces(off: &str) -> Vec<Vec<usize>> {
    let mut lines = off.lines().skip(1);
    let counts: Vec<usize> = lines
        .next()
        .unwrap()
        .split_whitespace()
        .map(|s| s.parse().unwrap())
        .collect();
    lines
        .skip(counts[0])
        .map(|l| {
            l.split_whitespace()
                .skip(1)
                .map(|s| s.parse().unwrap())
                .collect()
        })
        .collect()
}

#[test]
fn off_faces_follow_edges() {
    let cube = faces(&polytope_to_off(&unit_cube()).unwrap());
    assert_eq!(cube.len(), 6);
    assert!(cube.iter().all(|f| f.len() == 4));

    let p = eight_vertex();
    for f in faces(&polytope_to_off(&p).unwrap()) {
        for k in 0..f.len() {
            let (a, b) = (f[k], f[(k + 1) % f.len()]);
            assert!(
                EIGHT_VERTEX_ADJACENCY[a].contains(&b),
                "{a}-{b} is not an edge"
            );
        }
    }
    assert!(matches!(
        polytope_to_off(&unit_square()),
        Err(Error::ExportNot3d)
    ));
}

#[test]
fn off_faces_are_outward() {
    // Every directed edge appears exactly once when faces wind consistently.
    let p = twenty_vertex();
    let fs = faces(&polytope_to_off(&p).unwrap());
    let mut directed: Vec<(usize, usize)> = fs
        .iter()
        .flat_map(|f| (0..f.len()).map(move |k| (f[k], f[(k + 1) % f.len()])))
        .collect();
    directed.sort();
    let n = directed.len();
    directed.dedup();
    assert_eq!(directed.len(), n);
    assert_eq!(n, 2 * p.n_edges());
}

#[test]
fn verify_fixtures() {
    for p in [unit_square(), unit_cube(), eight_vertex()] {
        let r = verify_polytope(&p, 2, 11).unwrap();
        assert!(r.passed(), "{:?}", r.failures);
        assert_eq!(r.zero_identity_checks, 2 * 2 * p.dim());
        assert_eq!(r.oracle_checks, 2 * 12);
    }
}

#[test]
fn small_sweep() {
    let config = SweepConfig {
        dim: 2,
        vertex_counts: vec![4, 5],
        bits: vec![64, 24],
        trials: 3,
        seed: 1,
        method: Method::Pade,
        budget: 5,
    };
    let a = run_sweep(&config).unwrap();
    assert_eq!(a, run_sweep(&config).unwrap());
    assert_eq!(a.cells.len(), 2 * 2 * 3);
    for row in &a.rows {
        assert_eq!(
            row.medians.iter().map(|m| m.0).collect::<Vec<_>>(),
            vec![24, 64]
        );
        assert_eq!(row.min_bits.len(), ERROR_TARGETS.len());
        assert!(row.medians[1].1 <= 1e-9, "{:?}", row.medians);
    }
    assert!(a.summary().lines().count() == 3);
    assert!(run_sweep(&SweepConfig {
        bits: vec![],
        ..config.clone()
    })
    .is_err());
    assert!(run_sweep(&SweepConfig {
        trials: 0,
        ..config
    })
    .is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn distance_is_symmetric_and_permutation_blind(seed in any::<u64>(), rot in 0usize..6) {
        let p = random_simple_polytope(2, 6, seed).unwrap();
        let a = p.vertices().to_vec();
        let mut b = a.clone();
        let len = b.len();
        b.rotate_left(rot % len);
        prop_assert_eq!(vertex_set_distance(&a, &b).unwrap().value, 0.0);
        let q = random_simple_polytope(2, 6, seed ^ 1).unwrap();
        if q.n_vertices() == a.len() {
            let d1 = vertex_set_distance(&a, q.vertices()).unwrap().value;
            let d2 = vertex_set_distance(q.vertices(), &a).unwrap().value;
            prop_assert_eq!(d1, d2);
        }
    }
}
