use axkin_core::axioms::{check_claim, Claim, Mode, Outcome, TwinVariant, Witness};
use axkin_core::constructions::build_named;
use axkin_core::efield::{FieldElem, Point};
use axkin_core::geom::SetClass;
use axkin_core::twin::{
    classify_ms, compare_elapsed, crosscheck_characterization, is_twin_situation, watcher_independence, Comparison,
    TwinSituation,
};
use axkin_core::worldview::{Event, Model, Observer};

fn model(name: &str, d: usize) -> Model {
    build_named(name, d, None, None).unwrap().model
}

fn p(xs: &[i64]) -> Point {
    Point::from_ints(xs)
}

/// a leaves o for (5,3,0), c returns to (10,0,0), b stays home.
fn three_four_five() -> TwinSituation {
    let o = p(&[0, 0, 0]);
    TwinSituation {
        watcher: Observer::new(o.clone(), p(&[10, 0, 0])),
        a: Observer::new(o.clone(), p(&[5, 3, 0])),
        b: Observer::new(o.clone(), p(&[10, 0, 0])),
        c: Observer::new(p(&[5, 3, 0]), p(&[10, 0, 0])),
        e_a: Event::at(o),
        e: Event::at(p(&[5, 3, 0])),
        e_c: Event::at(p(&[10, 0, 0])),
    }
}

#[test]
fn minkowski_legs_are_shorter() {
    let m = model("minkowski", 3);
    let s = three_four_five();
    assert!(is_twin_situation(&m, &s).unwrap());
    let c = compare_elapsed(&m, &s).unwrap();
    assert_eq!(c.tau_a, FieldElem::from_int(4));
    assert_eq!(c.tau_c, FieldElem::from_int(4));
    assert_eq!(c.tau_b, FieldElem::from_int(10));
    assert_eq!(c.outcome, Comparison::Lt);
}

#[test]
fn newtonian_legs_add_up() {
    let m = model("newtonian", 3);
    let c = compare_elapsed(&m, &three_four_five()).unwrap();
    assert_eq!(&c.tau_a + &c.tau_c, FieldElem::from_int(10));
    assert_eq!(c.tau_b, FieldElem::from_int(10));
    assert_eq!(c.outcome, Comparison::Eq);
}

#[test]
fn degenerate_situations_are_rejected() {
    let m = model("minkowski", 3);
    let mut s = three_four_five();
    // b present at the turning event
    s.b = Observer::new(p(&[0, 0, 0]), p(&[5, 3, 0]));
    s.e_c = Event::at(p(&[10, 6, 0]));
    assert!(!is_twin_situation(&m, &s).unwrap());
    assert!(compare_elapsed(&m, &s).is_err());

    // c returns to b before the turn, in a model where that worldline exists
    let m = model("newtonian", 3);
    let mut s = three_four_five();
    s.c = Observer::new(p(&[5, 3, 0]), p(&[3, 0, 0]));
    s.e_c = Event::at(p(&[3, 0, 0]));
    assert!(!is_twin_situation(&m, &s).unwrap());

    // a horizontal worldline is no observer
    let mut s = three_four_five();
    s.b = Observer::new(p(&[0, 0, 0]), p(&[0, 1, 0]));
    assert!(is_twin_situation(&m, &s).is_err());
}

#[test]
fn sphere_classes() {
    let cases = [
        ("minkowski", SetClass::Convex),
        ("newtonian", SetClass::Flat),
        ("thm55", SetClass::Convex),
        ("hemisphere", SetClass::Concave),
    ];
    for (name, want) in cases {
        let m = model(name, 3);
        let got = classify_ms(&m, &m.reference()).unwrap();
        assert_eq!(got.class, want, "{name}");
    }
}

#[test]
fn shifted_plane_sphere_is_two_half_planes() {
    let m = model("thm41", 3);
    let got = classify_ms(&m, &m.reference()).unwrap();
    assert_eq!(got.class, SetClass::Mixed);
}

#[test]
fn sphere_class_is_the_same_for_moving_watchers() {
    let m = model("minkowski", 3);
    let k = Observer::along(p(&[1, 2, 3]), &p(&[5, 3, 0]));
    assert_eq!(classify_ms(&m, &k).unwrap().class, SetClass::Convex);
    let m = model("newtonian", 3);
    let k = Observer::along(p(&[1, 2, 3]), &p(&[2, 7, 1]));
    assert_eq!(classify_ms(&m, &k).unwrap().class, SetClass::Flat);
}

#[test]
fn twin_verdicts() {
    let m = model("minkowski", 3);
    let v = check_claim(&m, Claim::Twin(TwinVariant::TwP), Mode::Exact).unwrap();
    assert_eq!(v.outcome, Outcome::Holds);
    let v = check_claim(&m, Claim::Twin(TwinVariant::AntiTwP), Mode::Exact).unwrap();
    assert_eq!(v.outcome, Outcome::Fails);
    let w = v.witness.unwrap();
    assert!(matches!(w, Witness::Twin { .. }));
    assert!(w.replay(&m, Claim::Twin(TwinVariant::AntiTwP)).unwrap());

    let m = model("newtonian", 3);
    let v = check_claim(&m, Claim::Twin(TwinVariant::NoTwP), Mode::Exact).unwrap();
    assert_eq!(v.outcome, Outcome::Holds);
    let v = check_claim(&m, Claim::Twin(TwinVariant::TwP), Mode::Exact).unwrap();
    assert_eq!(v.outcome, Outcome::Fails);

    let m = model("hemisphere", 3);
    let v = check_claim(&m, Claim::Twin(TwinVariant::AntiTwP), Mode::Exact).unwrap();
    assert_eq!(v.outcome, Outcome::Holds);
}

#[test]
fn sampled_twin_verdict_agrees() {
    let m = model("minkowski", 3);
    let v = check_claim(&m, Claim::Twin(TwinVariant::TwP), Mode::Sample { n: 200, seed: 3 }).unwrap();
    assert_eq!(v.outcome, Outcome::SampledPass);
    let v = check_claim(&m, Claim::Twin(TwinVariant::NoTwP), Mode::Sample { n: 200, seed: 3 }).unwrap();
    assert_eq!(v.outcome, Outcome::Fails);
}

#[test]
fn crosscheck_agrees_on_every_model() {
    for name in ["minkowski", "newtonian", "thm41", "thm55", "hemisphere"] {
        let m = model(name, 3);
        let r = crosscheck_characterization(&m, 200, 7).unwrap();
        assert_eq!(r.records.len(), 200, "{name}");
        assert!(r.all_agree(), "{name}: {} of 200", r.agree);
    }
}

#[test]
fn crosscheck_is_deterministic() {
    let m = model("thm55", 3);
    let a = serde_json::to_string(&crosscheck_characterization(&m, 50, 11).unwrap()).unwrap();
    let b = serde_json::to_string(&crosscheck_characterization(&m, 50, 11).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn watchers_agree() {
    for name in ["minkowski", "thm55"] {
        let m = model(name, 3);
        let r = watcher_independence(&m, 100, 5).unwrap();
        assert_eq!(r.disagreements, 0, "{name}");
    }
}
