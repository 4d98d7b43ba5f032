use super::*;
use crate::efield::FieldElem;
use crate::linalg::Matrix;
use crate::sampling;

fn fe(s: &str) -> FieldElem {
    s.parse().unwrap()
}

fn pt(xs: &[&str]) -> Point {
    Point::new(xs.iter().map(|s| fe(s)).collect())
}

fn minkowski(d: usize) -> Model {
    let family = ObserverFamily {
        predicate: vec![DirectionConstraint::Subluminal],
        rule: ChartRule::ConformalSection {
            form: Matrix::minkowski(d),
        },
    };
    Model::new("minkowski", d, family, true, Vec::new()).unwrap()
}

fn shifted_plane(d: usize) -> Model {
    let mut a = vec![FieldElem::zero(); d];
    a[0] = FieldElem::one();
    a[1] = FieldElem::from_int(-1);
    let a = Point::new(a);
    let family = ObserverFamily {
        predicate: vec![
            DirectionConstraint::TimeNonzero,
            DirectionConstraint::LinearNonzero(a.clone()),
        ],
        rule: ChartRule::PlaneSection { normal: a },
    };
    Model::new("plane", d, family, false, Vec::new()).unwrap()
}

fn boosted() -> Observer {
    Observer::along(Point::origin(3), &pt(&["1", "3/5", "0"]))
}

#[test]
fn self_map_is_identity() {
    let m = minkowski(3);
    let k = boosted();
    assert!(worldview_map(&m, &k, &k).unwrap().is_identity());
    let r = m.reference();
    assert!(worldview_map(&m, &r, &r).unwrap().is_identity());
}

#[test]
fn boost_three_fifths() {
    let m = minkowski(3);
    let w = worldview_map(&m, &boosted(), &m.reference()).unwrap();
    assert_eq!(w.linear.get(0, 0), &fe("5/4"));
    assert_eq!(w.linear.column(0), pt(&["5/4", "3/4", "0"]));
    assert_eq!(
        time_unit_vector(&m, &boosted(), &m.reference()).unwrap(),
        pt(&["5/4", "3/4", "0"])
    );
}

#[test]
fn plane_section_chart_fixes_other_axes() {
    let m = shifted_plane(3);
    let k = Observer::along(Point::origin(3), &pt(&["2", "1", "0"]));
    let l = worldview_map(&m, &k, &m.reference()).unwrap().linear;
    assert_eq!(l.column(0), pt(&["2", "1", "0"]));
    assert_eq!(l.column(1), Point::basis(3, 1));
    assert_eq!(l.column(2), Point::basis(3, 2));
    assert_eq!(time_unit_vector(&m, &k, &m.reference()).unwrap(), pt(&["2", "1", "0"]));
}

#[test]
fn coordinates_and_elapsed_time() {
    let m = minkowski(3);
    let k = boosted();
    let e = Event::at(pt(&["5", "3", "0"]));
    assert_eq!(coordinates_of(&m, &k, &e).unwrap(), pt(&["4", "0", "0"]));
    let o = Event::at(Point::origin(3));
    assert_eq!(elapsed_time(&m, &k, &o, &e).unwrap(), fe("4"));
    assert_eq!(elapsed_time(&m, &k, &e, &e).unwrap(), FieldElem::zero());
    let r = m.reference();
    let ten = Event::at(pt(&["10", "0", "0"]));
    assert_eq!(elapsed_time(&m, &r, &o, &ten).unwrap(), fe("10"));
}

#[test]
fn spatial_distance_in_reference() {
    let m = minkowski(3);
    let r = m.reference();
    let a = Event::at(Point::origin(3));
    let b = Event::at(pt(&["0", "3", "4"]));
    assert_eq!(spatial_distance(&m, &r, &a, &b).unwrap(), fe("5"));
    assert!(spatial_distance(&m, &boosted(), &a, &b).unwrap().is_positive());
}

#[test]
fn events_and_membership() {
    let m = minkowski(3);
    let r = m.reference();
    let o = event_at(&m, &r, &Point::origin(3)).unwrap();
    assert!(m.contains(&o, &Body::Observer(r.clone())).unwrap());
    assert_eq!(event_at(&m, &boosted(), &Point::origin(3)).unwrap(), o);
    let photon = Body::Photon(Line {
        point: Point::origin(3),
        direction: pt(&["1", "1", "0"]),
    });
    let e = event_at(&m, &r, &pt(&["1", "1", "0"])).unwrap();
    assert!(m.contains(&e, &photon).unwrap());
    assert!(!m.contains(&e, &Body::Observer(r)).unwrap());
}

#[test]
fn worldlines() {
    let m = minkowski(3);
    let r = m.reference();
    let k = boosted();
    let own = worldline(&m, &k, &Body::Observer(k.clone())).unwrap();
    assert!(own.point.is_zero());
    assert!(own.direction.space_part().iter().all(FieldElem::is_zero));
    let seen = worldline(&m, &k, &Body::Observer(r.clone())).unwrap();
    assert!(seen.point.is_zero());
    assert_eq!(seen.direction, pt(&["5/4", "-3/4", "0"]));
    let photon = Body::Photon(Line {
        point: Point::origin(3),
        direction: pt(&["1", "1", "0"]),
    });
    assert_eq!(worldline(&m, &r, &photon).unwrap().direction, pt(&["1", "1", "0"]));
    let slow = Body::Photon(Line {
        point: Point::origin(3),
        direction: pt(&["2", "1", "0"]),
    });
    assert!(matches!(worldline(&m, &r, &slow), Err(Error::UnknownBody(_))));
}

#[test]
fn rejects_non_observers() {
    let m = minkowski(3);
    let fast = Observer::along(Point::origin(3), &pt(&["1", "2", "0"]));
    assert!(matches!(m.chart(&fast), Err(Error::NotAnObserver(_))));
}

#[test]
fn chart_coherence_and_linear_time() {
    for model in [minkowski(3), shifted_plane(3)] {
        for i in 0..20 {
            let mut rng = sampling::stream(11, i);
            let a = model.random_observer(&mut rng);
            let b = model.random_observer(&mut rng);
            let c = model.random_observer(&mut rng);
            let ab = worldview_map(&model, &a, &b).unwrap();
            let bc = worldview_map(&model, &b, &c).unwrap();
            let ac = worldview_map(&model, &a, &c).unwrap();
            let x = sampling::point(&mut rng, 3, 4, 3);
            assert_eq!(bc.compose(&ab).apply(&x), ac.apply(&x));
            assert!(worldview_map(&model, &b, &a).unwrap().compose(&ab).is_identity());

            let u = time_unit_vector(&model, &a, &b).unwrap();
            assert_eq!(ab.apply_linear(&Point::unit_time(3)), u);

            // time elapses uniformly along a's worldline as seen by b
            let line = worldline(&model, &b, &Body::Observer(a.clone())).unwrap();
            let s = sampling::rational(&mut rng, 5, 4);
            let t = sampling::rational(&mut rng, 5, 4);
            let p = &line.point + &u.scale(&s);
            let q = &line.point + &u.scale(&t);
            let ep = event_at(&model, &b, &p).unwrap();
            let eq = event_at(&model, &b, &q).unwrap();
            let lhs = elapsed_time(&model, &a, &ep, &eq).unwrap() * u.norm();
            assert_eq!(lhs, (&p - &q).norm());

            assert_eq!(coordinates_of(&model, &b, &ep).unwrap(), p);
        }
    }
}
