use serde::{Deserialize, Serialize};

use super::family::{DirectionConstraint, ObserverFamily};
use super::{not_observer, Event, Observer};
use crate::efield::{FieldElem, Point};
use crate::error::{same_dim, Error, Result};
use crate::geom::slope_is_one;
use crate::linalg::{AffineMap, Matrix};
use crate::sampling::{self, SampleRng};

/// A line given by a point and a nonzero direction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Line {
    pub point: Point,
    pub direction: Point,
}

impl Line {
    pub fn contains(&self, x: &Point) -> bool {
        let diff = x - &self.point;
        super::family::proportional(&self.direction, &diff) || diff.is_zero()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Body {
    Observer(Observer),
    /// A photon, given by its worldline in the reference chart.
    Photon(Line),
    /// Index into the model's extra bodies.
    Extra {
        index: usize,
    },
}

#[derive(Clone, Debug)]
pub struct Chart {
    pub forward: AffineMap,
    pub inverse: AffineMap,
}

#[derive(Clone, Debug)]
pub struct Model {
    name: String,
    d: usize,
    family: ObserverFamily,
    photons: bool,
    extra_bodies: Vec<Line>,
    injective: bool,
}

impl Model {
    pub fn new(
        name: impl Into<String>,
        d: usize,
        family: ObserverFamily,
        photons: bool,
        extra_bodies: Vec<Line>,
    ) -> Result<Model> {
        if d < 2 {
            return Err(Error::DimensionTooLow { d, min: 2 });
        }
        family.validate(d)?;
        for l in &extra_bodies {
            same_dim(d, l.point.dim())?;
            same_dim(d, l.direction.dim())?;
            if l.direction.is_zero() {
                return Err(Error::InvalidModel("extra body with zero direction".into()));
            }
        }
        let mut model = Model {
            name: name.into(),
            d,
            family,
            photons,
            extra_bodies,
            injective: true,
        };
        let reference = Observer::reference(d);
        if !model.admits(&reference) {
            return Err(Error::InvalidModel(
                "the reference observer ⟨o, 1_t⟩ is not admitted".into(),
            ));
        }
        if !model.chart(&reference)?.forward.is_identity() {
            return Err(Error::InvalidModel("the reference chart is not the identity".into()));
        }
        model.injective = model.spot_check_injectivity();
        Ok(model)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn family(&self) -> &ObserverFamily {
        &self.family
    }

    pub fn photons(&self) -> bool {
        self.photons
    }

    pub fn extra_bodies(&self) -> &[Line] {
        &self.extra_bodies
    }

    pub fn injective(&self) -> bool {
        self.injective
    }

    pub fn reference(&self) -> Observer {
        Observer::reference(self.d)
    }

    pub(crate) fn require_injective(&self) -> Result<()> {
        if self.injective {
            Ok(())
        } else {
            Err(Error::PresuppositionViolated(
                "the reference event-function is not injective; coordinates are not unique".into(),
            ))
        }
    }

    pub fn admits(&self, k: &Observer) -> bool {
        k.dim() == self.d && self.family.admits(&k.direction())
    }

    pub fn admits_direction(&self, w: &Point) -> bool {
        w.dim() == self.d && self.family.admits(w)
    }

    fn check(&self, k: &Observer) -> Result<()> {
        same_dim(self.d, k.origin.dim())?;
        same_dim(self.d, k.through.dim())?;
        if !self.admits(k) {
            return Err(not_observer(k, "not admitted by the family predicate"));
        }
        Ok(())
    }

    /// Time-unit vector, in the reference chart, of observers along w.
    pub fn section(&self, w: &Point) -> Result<Point> {
        same_dim(self.d, w.dim())?;
        if !self.family.admits(w) {
            return Err(Error::NotAnObserver(format!("direction {w} is not admitted")));
        }
        self.family.section(w)
    }

    pub fn chart(&self, k: &Observer) -> Result<Chart> {
        self.check(k)?;
        let pair = self.family.linear_pair(&k.direction())?;
        let back = -pair.inverse.apply(&k.origin);
        Ok(Chart {
            forward: AffineMap::new(pair.forward, k.origin.clone()),
            inverse: AffineMap::new(pair.inverse, back),
        })
    }

    pub fn linear_part(&self, k: &Observer) -> Result<Matrix> {
        self.check(k)?;
        Ok(self.family.linear_pair(&k.direction())?.forward)
    }

    pub fn ref_worldline(&self, b: &Body) -> Result<Line> {
        match b {
            Body::Observer(k) => {
                self.check(k)?;
                Ok(Line {
                    point: k.origin.clone(),
                    direction: self.family.section(&k.direction())?,
                })
            }
            Body::Photon(l) => {
                same_dim(self.d, l.point.dim())?;
                same_dim(self.d, l.direction.dim())?;
                if !self.photons {
                    return Err(Error::UnknownBody("this model has no photons".into()));
                }
                let slope_one = !l.direction.is_zero() && slope_is_one(&l.point, &(&l.point + &l.direction))?;
                if !slope_one {
                    return Err(Error::UnknownBody(format!(
                        "photon direction {} does not have slope 1",
                        l.direction
                    )));
                }
                Ok(l.clone())
            }
            Body::Extra { index } => self
                .extra_bodies
                .get(*index)
                .cloned()
                .ok_or_else(|| Error::UnknownBody(format!("no extra body #{index}"))),
        }
    }

    /// Membership b ∈ e, decided by incidence in the reference chart.
    pub fn contains(&self, e: &Event, b: &Body) -> Result<bool> {
        Ok(self.ref_worldline(b)?.contains(&e.ref_point))
    }

    /// Some admitted observer through `x` that misses `y`, if the probe
    /// directions find one.
    fn separating_observer(&self, x: &Point, y: &Point) -> Option<Observer> {
        crate::geom::surface_probe_directions(self.d)
            .into_iter()
            .filter(|w| self.admits_direction(w))
            .map(|w| Observer::along(x.clone(), &w))
            .find(|k| {
                self.ref_worldline(&Body::Observer(k.clone()))
                    .is_ok_and(|l| !l.contains(y))
            })
    }

    /// Distinct reference points must be told apart by some body. Checked on
    /// a fixed sample of point pairs.
    fn spot_check_injectivity(&self) -> bool {
        let mut rng = sampling::stream(0x1d1d, 0);
        (0..16).all(|_| {
            let x = sampling::point(&mut rng, self.d, 5, 4);
            let y = sampling::point(&mut rng, self.d, 5, 4);
            x == y || self.separating_observer(&x, &y).is_some()
        })
    }

    /// A random admitted direction with w_τ = 1 (or a multiple of it).
    pub fn random_direction(&self, rng: &mut SampleRng, max_speed: i64) -> Point {
        loop {
            let bound = if self.family.has_subluminal() { 1 } else { max_speed };
            let w = sampling::unit_time_direction(rng, self.d, bound, 10);
            if self.admits_direction(&w) {
                return w;
            }
        }
    }

    pub fn random_observer(&self, rng: &mut SampleRng) -> Observer {
        let origin = sampling::point(rng, self.d, 6, 4);
        let w = self.random_direction(rng, 3);
        Observer::along(origin, &w)
    }

    pub fn constraint_functionals(&self) -> Vec<Point> {
        self.family
            .predicate
            .iter()
            .filter_map(|c| c.functional(self.d))
            .collect()
    }

    pub fn has_constraint(&self, c: &DirectionConstraint) -> bool {
        self.family.predicate.contains(c)
    }

    /// The signed time-unit τ entry for use in reports.
    pub fn unit_time_component(&self, k: &Observer) -> Result<FieldElem> {
        Ok(self.section(&k.direction())?.time_part().clone())
    }
}
