use super::*;
use crate::linalg::Matrix;

fn pt(s: &[&str]) -> Point {
    Point::new(s.iter().map(|x| x.parse().unwrap()).collect())
}

fn ints(xs: &[i64]) -> Point {
    Point::from_ints(xs)
}

#[test]
fn between_examples() {
    assert!(between(&ints(&[0, 0]), &pt(&["1/2", "1/2"]), &ints(&[1, 1])).unwrap());
    assert!(!between(&ints(&[0, 0]), &ints(&[1, 1]), &ints(&[1, 1])).unwrap());
    assert!(!between(&ints(&[1, 0]), &ints(&[2, 0]), &ints(&[0, 1])).unwrap());
    assert!(matches!(
        between(&ints(&[0, 0]), &ints(&[1, 1, 1]), &ints(&[1, 1])),
        Err(Error::DimensionMismatch { .. })
    ));
}

#[test]
fn ddag_examples() {
    assert_eq!(ddag(&ints(&[-1, -2])), ints(&[1, 2]));
    assert_eq!(ddag(&ints(&[0, 1])), ints(&[0, 1]));
    assert_eq!(ddag(&ints(&[2, 1])), ints(&[2, 1]));
}

fn mu_of(c: &TripleClass) -> FieldElem {
    c.mu.clone().unwrap()
}

#[test]
fn classify_triple_examples() {
    let flat = classify_triple(&ints(&[1, 0]), &ints(&[1, 1]), &ints(&[1, 2])).unwrap();
    assert_eq!(flat.tag, TripleTag::Flat);
    assert_eq!(mu_of(&flat), FieldElem::one());

    let p = ints(&[1, 0]);
    let q = pt(&["5/4", "3/4"]);
    let r = pt(&["5/3", "4/3"]);
    for x in [&p, &q, &r] {
        assert!(x.minkowski_sq().is_one());
    }
    let conv = classify_triple(&p, &q, &r).unwrap();
    assert_eq!(conv.tag, TripleTag::Conv);
    assert_eq!(mu_of(&conv), FieldElem::ratio(8, 7));

    let conc = classify_triple(&ints(&[1, 0]), &pt(&["4/5", "3/5"]), &pt(&["3/5", "4/5"])).unwrap();
    assert_eq!(conc.tag, TripleTag::Conc);
    assert_eq!(mu_of(&conc), FieldElem::ratio(10, 11));
}

#[test]
fn classify_triple_edge_cases() {
    assert_eq!(
        classify_triple(&ints(&[1, 0]), &ints(&[0, 0]), &ints(&[1, 2])),
        Err(Error::ZeroDirection)
    );
    // ray pointing away from the segment
    let c = classify_triple(&ints(&[1, 0]), &ints(&[-1, -1]), &ints(&[1, 2])).unwrap();
    assert_eq!(c.tag, TripleTag::NoWitness);
    assert!(c.mu.is_none());
    // p = r
    let c = classify_triple(&ints(&[1, 0]), &ints(&[1, 0]), &ints(&[1, 0])).unwrap();
    assert_eq!(c.tag, TripleTag::NoWitness);
    // q off the plane of p and r
    let c = classify_triple(&ints(&[1, 0, 0]), &ints(&[1, 1, 1]), &ints(&[1, 2, 0])).unwrap();
    assert_eq!(c.tag, TripleTag::NoWitness);
    // segment through the origin
    let c = classify_triple(&ints(&[1, 1]), &ints(&[2, 2]), &ints(&[-1, -1])).unwrap();
    assert_eq!(c.tag, TripleTag::NoWitness);
}

#[test]
fn slope_examples() {
    assert!(slope_is_one(&ints(&[0, 0, 0]), &ints(&[1, 1, 0])).unwrap());
    assert!(!slope_is_one(&ints(&[0, 0, 0]), &ints(&[2, 1, 0])).unwrap());
    assert!(slope_is_one(&ints(&[0, 0, 0]), &ints(&[5, 3, 4])).unwrap());
    assert_eq!(
        slope_is_one(&ints(&[1, 1, 1]), &ints(&[1, 1, 1])),
        Err(Error::DegenerateSegment)
    );
}

#[test]
fn point_set_examples() {
    let sheet = vec![
        ints(&[1, 0]),
        pt(&["5/4", "3/4"]),
        pt(&["5/3", "4/3"]),
        pt(&["13/12", "5/12"]),
    ];
    assert_eq!(classify_point_set(&sheet).unwrap().class, SetClass::Convex);
    let line = vec![ints(&[1, -1]), ints(&[1, 0]), ints(&[1, 1])];
    assert_eq!(classify_point_set(&line).unwrap().class, SetClass::Flat);
    assert_eq!(classify_point_set(&[ints(&[1, 0])]).unwrap().class, SetClass::Trivial);

    let mixed = vec![
        ints(&[1, -1]),
        ints(&[1, 0]),
        ints(&[1, 1]),
        pt(&["5/4", "3/4"]),
        pt(&["5/3", "4/3"]),
    ];
    let m = classify_point_set(&mixed).unwrap();
    assert_eq!(m.class, SetClass::Mixed);
    assert!(m.witnesses.len() >= 2);
    for w in &m.witnesses {
        assert!(w.recheck().unwrap());
    }
}

#[test]
fn hyperboloid_is_convex() {
    let c = classify_surface(&SurfaceSpec::hyperboloid(3)).unwrap();
    assert_eq!(c.class, SetClass::Convex);
    assert!(!c.witnesses.is_empty());
}

#[test]
fn tilted_plane_is_flat() {
    let s = SurfaceSpec::AffineHyperplanePatch {
        normal: ints(&[1, -1, 0]),
        offset: FieldElem::one(),
        domain: DirectionDomain::everything(),
    };
    let c = classify_surface(&s).unwrap();
    assert_eq!(c.class, SetClass::Flat);
    assert!(s.contains(&ints(&[2, 1, 0])));
    assert!(!s.contains(&ints(&[-1, -2, 0])));
}

#[test]
fn hemisphere_is_concave_exact_and_sampled() {
    let s = SurfaceSpec::QuadricRadialGraph {
        form: Matrix::identity(3),
        domain: DirectionDomain::light_cone(3),
    };
    assert_eq!(classify_surface(&s).unwrap().class, SetClass::Concave);
    let sampled = sample_refute(&s, 1000, 11).unwrap();
    assert_eq!(sampled.unanimous(), Some(TripleTag::Conc));
    assert_eq!(sampled.tally.get(&TripleTag::Conc), Some(&1000));
    assert!(sampled.refutes(SetClass::Concave).is_none());
    assert!(sampled.refutes(SetClass::Convex).is_some());
}

#[test]
fn two_sheets_are_mixed() {
    // (x_τ − x₂)² = 1 over all non-horizontal lines: two parallel planes.
    let a = ints(&[1, -1, 0]);
    let form = Matrix::from_columns(&[a.scale(&a[0]), a.scale(&a[1]), a.scale(&a[2])]);
    let s = SurfaceSpec::QuadricRadialGraph {
        form,
        domain: DirectionDomain {
            cone: None,
            exclusions: vec![a.clone()],
        },
    };
    let c = classify_surface(&s).unwrap();
    assert_eq!(c.class, SetClass::Mixed);
    let tags: Vec<_> = c.witnesses.iter().map(|w| w.class.tag).collect();
    assert!(tags.contains(&TripleTag::Flat));
    assert!(tags.contains(&TripleTag::Conc));
}

#[test]
fn sampling_is_reproducible() {
    let s = SurfaceSpec::hyperboloid(3);
    let a = sample_refute(&s, 50, 3).unwrap();
    let b = sample_refute(&s, 50, 3).unwrap();
    assert_eq!(a.tally, b.tally);
    assert_eq!(a.witnesses, b.witnesses);
}

#[test]
fn frame_change_keeps_the_class() {
    // a boost by 3/5 maps the hyperboloid to itself
    let l = Matrix::from_rows(vec![
        vec![FieldElem::ratio(5, 4), FieldElem::ratio(3, 4), FieldElem::zero()],
        vec![FieldElem::ratio(3, 4), FieldElem::ratio(5, 4), FieldElem::zero()],
        vec![FieldElem::zero(), FieldElem::zero(), FieldElem::one()],
    ])
    .unwrap();
    let s = SurfaceSpec::hyperboloid(3).transformed(&l).unwrap();
    match &s {
        SurfaceSpec::QuadricRadialGraph { form, domain } => {
            assert_eq!(*form, Matrix::minkowski(3));
            assert_eq!(domain.cone.as_ref().unwrap(), &Matrix::minkowski(3));
        }
        _ => panic!("expected a quadric"),
    }
    assert_eq!(classify_surface(&s).unwrap().class, SetClass::Convex);
}
