//! Models presented intensionally: an observer is a pair ⟨p, q⟩ admitted by a
//! predicate on p − q, and its chart is built by a fixed rule. Events are
//! identified with points of the reference chart.

mod family;
mod model;

pub(crate) use family::proportional;
pub use family::{boost_from_column, ChartRule, DirectionConstraint, ObserverFamily};
pub use model::{Body, Line, Model};

use serde::{Deserialize, Serialize};

use crate::efield::{FieldElem, Point};
use crate::error::{Error, Result};
use crate::linalg::AffineMap;

/// The observer ⟨origin, through⟩. Its worldline in the reference chart is the
/// line through both points; its chart sends o to `origin`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Observer {
    pub origin: Point,
    pub through: Point,
}

impl Observer {
    pub fn new(origin: Point, through: Point) -> Observer {
        Observer { origin, through }
    }

    /// ⟨o, 1_t⟩, whose chart is the identity.
    pub fn reference(d: usize) -> Observer {
        Observer::new(Point::origin(d), Point::unit_time(d))
    }

    /// Observer at `origin` moving along `w`.
    pub fn along(origin: Point, w: &Point) -> Observer {
        let through = &origin - w;
        Observer { origin, through }
    }

    pub fn direction(&self) -> Point {
        &self.origin - &self.through
    }

    pub fn dim(&self) -> usize {
        self.origin.dim()
    }

    /// Same observer shifted by t.
    pub fn translated(&self, t: &Point) -> Observer {
        Observer::new(&self.origin + t, &self.through + t)
    }
}

/// An event, identified by its reference-chart coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Event {
    pub ref_point: Point,
}

impl Event {
    pub fn at(ref_point: Point) -> Event {
        Event { ref_point }
    }
}

/// w^k_m = A_m⁻¹ ∘ A_k.
pub fn worldview_map(model: &Model, k: &Observer, m: &Observer) -> Result<AffineMap> {
    let ak = model.chart(k)?;
    let am = model.chart(m)?;
    Ok(am.inverse.compose(&ak.forward))
}

pub fn event_at(model: &Model, m: &Observer, p: &Point) -> Result<Event> {
    crate::error::same_dim(model.d(), p.dim())?;
    Ok(Event::at(model.chart(m)?.forward.apply(p)))
}

pub fn coordinates_of(model: &Model, m: &Observer, e: &Event) -> Result<Point> {
    model.require_injective()?;
    Ok(model.chart(m)?.inverse.apply(&e.ref_point))
}

pub fn time_of(model: &Model, m: &Observer, e: &Event) -> Result<FieldElem> {
    Ok(coordinates_of(model, m, e)?.time_part().clone())
}

pub fn elapsed_time(model: &Model, m: &Observer, e1: &Event, e2: &Event) -> Result<FieldElem> {
    Ok((time_of(model, m, e1)? - time_of(model, m, e2)?).abs())
}

pub fn spatial_distance(model: &Model, m: &Observer, e1: &Event, e2: &Event) -> Result<FieldElem> {
    let a = coordinates_of(model, m, e1)?;
    let b = coordinates_of(model, m, e2)?;
    Ok((&a - &b).space_norm())
}

/// 1^k_m = w^k_m(1_t) − w^k_m(o).
pub fn time_unit_vector(model: &Model, k: &Observer, m: &Observer) -> Result<Point> {
    let u = model.section(&k.direction())?;
    Ok(model.chart(m)?.inverse.apply_linear(&u))
}

/// The body's worldline in m's chart.
pub fn worldline(model: &Model, m: &Observer, b: &Body) -> Result<Line> {
    let line = model.ref_worldline(b)?;
    let inv = model.chart(m)?.inverse;
    Ok(Line {
        point: inv.apply(&line.point),
        direction: inv.apply_linear(&line.direction),
    })
}

pub(crate) fn not_observer(k: &Observer, why: &str) -> Error {
    Error::NotAnObserver(format!("⟨{}, {}⟩: {why}", k.origin, k.through))
}

#[cfg(test)]
mod tests;
