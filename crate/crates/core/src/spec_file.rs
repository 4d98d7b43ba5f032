//! JSON input files: model specs, twin scenarios and standalone surfaces.
//! Numbers are FieldElem literals ("3", "-1/2", "sqrt(2)/2") or plain integers.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::efield::Point;
use crate::error::{Error, Result};
use crate::geom::SurfaceSpec;
use crate::twin::TwinSituation;
use crate::worldview::{Event, Line, Model, Observer, ObserverFamily};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    #[serde(default = "default_name")]
    pub name: String,
    pub d: usize,
    pub family: ObserverFamily,
    #[serde(default)]
    pub photons: bool,
    #[serde(default)]
    pub extra_bodies: Vec<Line>,
}

fn default_name() -> String {
    "custom".into()
}

impl ModelSpec {
    pub fn build(&self) -> Result<Model> {
        Model::new(
            self.name.clone(),
            self.d,
            self.family.clone(),
            self.photons,
            self.extra_bodies.clone(),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObserverSpec {
    pub origin: Point,
    pub through: Point,
}

impl From<ObserverSpec> for Observer {
    fn from(o: ObserverSpec) -> Observer {
        Observer::new(o.origin, o.through)
    }
}

/// Observers a, b, c (and optionally the watcher, default b) and the three
/// events in reference coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioSpec {
    #[serde(default)]
    pub watcher: Option<ObserverSpec>,
    pub a: ObserverSpec,
    pub b: ObserverSpec,
    pub c: ObserverSpec,
    pub e_a: Point,
    pub e: Point,
    pub e_c: Point,
}

impl ScenarioSpec {
    pub fn situation(self) -> TwinSituation {
        let b: Observer = self.b.into();
        TwinSituation {
            watcher: self.watcher.map(Observer::from).unwrap_or_else(|| b.clone()),
            a: self.a.into(),
            b,
            c: self.c.into(),
            e_a: Event::at(self.e_a),
            e: Event::at(self.e),
            e_c: Event::at(self.e_c),
        }
    }
}

fn parse<T: DeserializeOwned>(text: &str, wrap: fn(usize, usize, String) -> Error) -> Result<T> {
    serde_json::from_str(text).map_err(|e| wrap(e.line(), e.column(), e.to_string()))
}

fn spec_err(line: usize, col: usize, msg: String) -> Error {
    Error::SpecParse { line, col, msg }
}

pub fn parse_model_spec(text: &str) -> Result<ModelSpec> {
    parse(text, spec_err)
}

/// Parses and builds; dimension mismatches inside the spec are reported as
/// model errors, not parse errors.
pub fn load_model(text: &str) -> Result<Model> {
    let spec = parse_model_spec(text)?;
    check_dims(&spec)?;
    spec.build()
}

fn check_dims(spec: &ModelSpec) -> Result<()> {
    use crate::worldview::{ChartRule, DirectionConstraint};
    let d = spec.d;
    let bad = |what: &str, n: usize| Error::InvalidModel(format!("{what} has dimension {n}, expected {d}"));
    for c in &spec.family.predicate {
        if let DirectionConstraint::LinearNonzero(l) = c {
            if l.dim() != d {
                return Err(bad("a predicate functional", l.dim()));
            }
        }
    }
    match &spec.family.rule {
        ChartRule::Galilean => {}
        ChartRule::PlaneSection { normal } if normal.dim() != d => return Err(bad("the section normal", normal.dim())),
        ChartRule::ConformalSection { form } if form.rows() != d => return Err(bad("the section form", form.rows())),
        _ => {}
    }
    Ok(())
}

pub fn parse_scenario(text: &str) -> Result<ScenarioSpec> {
    parse(text, |line, col, msg| Error::ScenarioParse { line, col, msg })
}

pub fn parse_surface(text: &str) -> Result<SurfaceSpec> {
    parse(text, spec_err)
}
