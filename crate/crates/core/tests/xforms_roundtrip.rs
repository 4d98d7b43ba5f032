mod support {
    pub mod compositions;
}

use axkin_core::axioms::{check_system, Mode, Outcome, SystemId};
use axkin_core::constructions::build_named;
use axkin_core::efield::FieldElem;
use axkin_core::error::Error;
use axkin_core::sampling;
use axkin_core::worldview::worldview_map;
use axkin_core::xforms::{az_decompose, is_poincare, preserves_slope1};
use support::compositions::{composition, shear};

#[test]
fn compositions_decompose_and_recompose() {
    for d in [3, 4] {
        for i in 0..25 {
            let c = composition(21, i, d);
            assert!(preserves_slope1(&c.map).unwrap());
            let r = az_decompose(&c.map).unwrap();
            assert!(is_poincare(&r.poincare));
            assert_eq!(r.dilation, c.scale, "d = {d}, sample {i}");
            assert_eq!(r.recompose(), c.map);
        }
    }
}

#[test]
fn shears_are_rejected() {
    for i in 0..25 {
        let m = shear(21, i, 3);
        assert!(!preserves_slope1(&m).unwrap());
        assert_eq!(az_decompose(&m).unwrap_err(), Error::NotConePreserving);
    }
}

#[test]
fn dilations_are_not_poincare() {
    let c = composition(5, 0, 3);
    if c.scale != FieldElem::one() {
        assert!(!is_poincare(&c.map));
    }
}

/// In models of special relativity every worldview map is Poincaré.
#[test]
fn relativistic_worldview_maps_are_poincare() {
    let m = build_named("minkowski", 3, None, None).unwrap().model;
    assert_eq!(
        check_system(&m, SystemId::SpecRel, Mode::Exact).unwrap().outcome,
        Outcome::Holds
    );
    for i in 0..40 {
        let mut rng = sampling::stream(8, i);
        let k = m.random_observer(&mut rng);
        let h = m.random_observer(&mut rng);
        assert!(is_poincare(&worldview_map(&m, &k, &h).unwrap()));
    }
    // the skewed cone only keeps the cone, up to a dilation
    let m = build_named("thm55", 3, None, None).unwrap().model;
    for i in 0..20 {
        let mut rng = sampling::stream(8, i);
        let k = m.random_observer(&mut rng);
        let h = m.random_observer(&mut rng);
        let w = worldview_map(&m, &k, &h).unwrap();
        assert!(az_decompose(&w).is_ok());
    }
}
