//! The library of concrete models.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::axioms::{AxiomId, Claim, Outcome, SystemId, TwinVariant};
use crate::efield::{FieldElem, Point};
use crate::error::{Error, Result};
use crate::geom::{classify_surface, SetClass};
use crate::linalg::Matrix;
use crate::worldview::{ChartRule, DirectionConstraint, Model, ObserverFamily};

#[derive(Clone, Debug)]
pub struct NamedModel {
    pub name: String,
    pub params: BTreeMap<String, String>,
    pub model: Model,
    /// What the checkers are expected to report, claim by claim.
    pub expected: Vec<(Claim, Outcome)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModelDescriptor {
    pub name: String,
    pub d: usize,
    pub params: BTreeMap<String, String>,
}

impl NamedModel {
    pub fn descriptor(&self) -> ModelDescriptor {
        ModelDescriptor {
            name: self.name.clone(),
            d: self.model.d(),
            params: self.params.clone(),
        }
    }
}

pub const MODEL_NAMES: [&str; 5] = ["minkowski", "newtonian", "thm41", "thm55", "hemisphere"];

/// Builds a named model. `b` and `c` only apply to thm55.
pub fn build_named(name: &str, d: usize, b: Option<FieldElem>, c: Option<FieldElem>) -> Result<NamedModel> {
    match name {
        "minkowski" => std_minkowski(d),
        "newtonian" => std_newtonian(d),
        "thm41" => thm41_model(d),
        "thm55" => thm55_model(
            d,
            b.unwrap_or_else(|| FieldElem::ratio(1, 2)),
            c.unwrap_or_else(|| FieldElem::ratio(1, 8)),
        ),
        "hemisphere" => hemisphere_model(d),
        other => Err(Error::UnknownModel(format!(
            "'{other}' (known: {})",
            MODEL_NAMES.join(", ")
        ))),
    }
}

fn named(name: &str, model: Model, params: &[(&str, String)], expected: Vec<(Claim, Outcome)>) -> NamedModel {
    NamedModel {
        name: name.to_string(),
        params: params.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        model,
        expected,
    }
}

fn table(holds: &[Claim], fails: &[Claim]) -> Vec<(Claim, Outcome)> {
    holds
        .iter()
        .map(|c| (*c, Outcome::Holds))
        .chain(fails.iter().map(|c| (*c, Outcome::Fails)))
        .collect()
}

use AxiomId::*;
const fn ax(a: AxiomId) -> Claim {
    Claim::Axiom(a)
}
const fn sys(s: SystemId) -> Claim {
    Claim::System(s)
}
const fn twin(t: TwinVariant) -> Claim {
    Claim::Twin(t)
}

/// Poincaré charts over speed<1 observers, photons on every slope-1 line.
pub fn std_minkowski(d: usize) -> Result<NamedModel> {
    if d < 3 {
        return Err(Error::DimensionTooLow { d, min: 3 });
    }
    let family = ObserverFamily {
        predicate: vec![DirectionConstraint::Subluminal],
        rule: ChartRule::ConformalSection {
            form: Matrix::minkowski(d),
        },
    };
    let model = Model::new("minkowski", d, family, true, Vec::new())?;
    let expected = table(
        &[
            sys(SystemId::SpecRel),
            sys(SystemId::Kinem0),
            ax(AxShift),
            ax(AxThExp),
            ax(SlowTime),
            twin(TwinVariant::TwP),
        ],
        &[
            ax(AxThExpPlus),
            ax(AxThExpStar),
            ax(AbsTime),
            twin(TwinVariant::NoTwP),
            twin(TwinVariant::AntiTwP),
        ],
    );
    Ok(named("minkowski", model, &[("d", d.to_string())], expected))
}

/// Galilean charts over observers with p_τ ≠ q_τ; no photons.
pub fn std_newtonian(d: usize) -> Result<NamedModel> {
    let family = ObserverFamily {
        predicate: vec![DirectionConstraint::TimeNonzero],
        rule: ChartRule::Galilean,
    };
    let model = Model::new("newtonian", d, family, false, Vec::new())?;
    let expected = table(
        &[
            sys(SystemId::Kinem0),
            ax(AxShift),
            ax(AxThExpPlus),
            ax(AxThExpStar),
            ax(AxThExp),
            ax(AbsTime),
            ax(AxSymDist),
            twin(TwinVariant::NoTwP),
        ],
        &[
            ax(AxPh),
            ax(SlowTime),
            twin(TwinVariant::TwP),
            twin(TwinVariant::AntiTwP),
        ],
    );
    Ok(named("newtonian", model, &[("d", d.to_string())], expected))
}

/// Observers with p_τ ≠ q_τ and p_τ − q_τ ≠ p₂ − q₂; each chart sends 1_t to
/// the point where the observer's line meets x_τ − x₂ = 1 and fixes the other
/// basis vectors. Lines whose only meeting point has negative time get that
/// point: no orientation of the line reaches the plane at positive time.
pub fn thm41_model(d: usize) -> Result<NamedModel> {
    if d < 2 {
        return Err(Error::DimensionTooLow { d, min: 2 });
    }
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
    let model = Model::new("thm41", d, family, false, Vec::new())?;
    let expected = table(
        &[
            sys(SystemId::Kinem0),
            ax(AxShift),
            ax(AxThExpStar),
            ax(AxThExp),
            ax(AxSymDist),
        ],
        &[
            ax(AxThExpPlus),
            ax(AbsTime),
            ax(AxPh),
            ax(SlowTime),
            // The sphere is two half-planes (x_τ − x₂ = ±1, x_τ > 0), so
            // a situation with one leg on each sheet shows less time on the
            // two-leg trip.
            twin(TwinVariant::NoTwP),
            twin(TwinVariant::TwP),
            twin(TwinVariant::AntiTwP),
        ],
    );
    Ok(named("thm41", model, &[("d", d.to_string())], expected))
}

/// The skewed form (x_τ − b·x₂)² − c·|x_σ|².
pub fn skewed_form(d: usize, b: &FieldElem, c: &FieldElem) -> Matrix {
    let mut q = Matrix::zeros(d, d);
    q.set(0, 0, FieldElem::one());
    q.set(0, 1, -b);
    q.set(1, 0, -b);
    q.set(1, 1, b * b - c);
    for i in 2..d {
        q.set(i, i, -c);
    }
    q
}

/// Speed<1 observers whose time-unit vectors lie on the skewed hyperboloid
/// (x_τ − b·x₂)² − c·|x_σ|² = 1; charts are scaled boosts.
pub fn thm55_model(d: usize, b: FieldElem, c: FieldElem) -> Result<NamedModel> {
    if d < 3 {
        return Err(Error::DimensionTooLow { d, min: 3 });
    }
    let one = FieldElem::one();
    if !c.is_positive() {
        return Err(Error::BadShape(format!("c = {c} must be positive")));
    }
    if b.abs() >= one {
        return Err(Error::BadShape(format!("|b| = {} must be below 1", b.abs())));
    }
    if (&one - &b.abs()).square() <= c {
        return Err(Error::BadShape(format!("need (1 − |b|)² > c, got b = {b}, c = {c}")));
    }
    let form = skewed_form(d, &b, &c);
    let family = ObserverFamily {
        predicate: vec![DirectionConstraint::Subluminal],
        rule: ChartRule::ConformalSection { form },
    };
    let model = Model::new("thm55", d, family, true, Vec::new())?;
    let ms = crate::twin::minkowski_sphere(&model, &model.reference())?;
    let cls = classify_surface(&ms.surface)?;
    if cls.class != SetClass::Convex {
        return Err(Error::BadShape(format!("sphere classified {}, not Convex", cls.class)));
    }
    if crate::axioms::slow_time_probe(&model)?.is_none() {
        return Err(Error::BadShape("no sphere point with |x_τ| < 1 found".into()));
    }
    let expected = table(
        &[
            sys(SystemId::SpecRelMinus),
            sys(SystemId::Kinem0),
            ax(AxShift),
            ax(AxLinTime),
            ax(AxThExp),
            twin(TwinVariant::TwP),
        ],
        &[
            ax(SlowTime),
            ax(AxSymDist),
            ax(AbsTime),
            ax(AxThExpPlus),
            ax(AxThExpStar),
            twin(TwinVariant::NoTwP),
            twin(TwinVariant::AntiTwP),
        ],
    );
    Ok(named(
        "thm55",
        model,
        &[("d", d.to_string()), ("b", b.to_string()), ("c", c.to_string())],
        expected,
    ))
}

/// Speed<1 observers whose time-unit vectors lie on the unit upper
/// hemisphere |x| = 1; charts are scaled boosts.
pub fn hemisphere_model(d: usize) -> Result<NamedModel> {
    let family = ObserverFamily {
        predicate: vec![DirectionConstraint::Subluminal],
        rule: ChartRule::ConformalSection {
            form: Matrix::identity(d),
        },
    };
    let model = Model::new("hemisphere", d, family, true, Vec::new())?;
    let mut fails = vec![
        ax(AbsTime),
        ax(SlowTime),
        ax(AxThExpPlus),
        ax(AxThExpStar),
        twin(TwinVariant::TwP),
        twin(TwinVariant::NoTwP),
    ];
    if d >= 3 {
        fails.push(ax(AxSymDist));
    }
    let expected = table(
        &[
            sys(SystemId::SpecRelMinus),
            sys(SystemId::Kinem0),
            ax(AxShift),
            ax(AxThExp),
            twin(TwinVariant::AntiTwP),
        ],
        &fails,
    );
    Ok(named("hemisphere", model, &[("d", d.to_string())], expected))
}
