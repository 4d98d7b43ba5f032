use serde::Serialize;

use super::{AxiomId, Claim};
use crate::efield::{FieldElem, Point};
use crate::error::{Error, Result};
use crate::geom::slope_is_one;
use crate::twin::{compare_elapsed, is_twin_situation, Comparison, TwinSituation};
use crate::worldview::{elapsed_time, event_at, spatial_distance, time_unit_vector, Body, Event, Model, Observer};

/// A concrete instantiation of an axiom's quantifiers that violates it.
/// Points are in the named observer's coordinates; events carry reference
/// coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Witness {
    /// W(m, m, p) disagrees with p_σ = o.
    SelfSighting {
        m: Observer,
        p: Point,
    },
    SingularChart {
        m: Observer,
    },
    /// p, q on wl_m(k) with time_k · |1^k_m| ≠ |p − q|.
    NonUniformTime {
        m: Observer,
        k: Observer,
        p: Point,
        q: Point,
    },
    /// Slope-1 status of p − q disagrees with a photon through both events.
    PhotonMismatch {
        m: Observer,
        p: Point,
        q: Point,
    },
    /// Events simultaneous for m and k at different distances.
    DistanceMismatch {
        m: Observer,
        k: Observer,
        e1: Event,
        e2: Event,
        dist_m: FieldElem,
        dist_k: FieldElem,
    },
    /// No observer is present at both ev_m(p) and ev_m(q).
    MissingObserver {
        m: Observer,
        p: Point,
        q: Point,
    },
    /// No observer is present at ev_m(p) and any ev_m(q') with |q − q'| < ε.
    NoNearbyObserver {
        m: Observer,
        p: Point,
        q: Point,
        epsilon: FieldElem,
    },
    TimeDisagreement {
        m: Observer,
        k: Observer,
        e1: Event,
        e2: Event,
        time_m: FieldElem,
        time_k: FieldElem,
        /// 1^k_m.
        unit: Point,
    },
    /// k moves relative to m but |(1^k_m)_τ| ≤ 1.
    FastClock {
        m: Observer,
        k: Observer,
        unit: Point,
    },
    Twin {
        situation: TwinSituation,
        tau_a: FieldElem,
        tau_c: FieldElem,
        tau_b: FieldElem,
        outcome: Comparison,
    },
}

fn mismatch(claim: Claim) -> Error {
    Error::InvalidModel(format!("witness kind does not fit {claim}"))
}

impl Witness {
    /// Re-evaluates the witness from the model's definitions. True iff it
    /// still violates the claim.
    pub fn replay(&self, model: &Model, claim: Claim) -> Result<bool> {
        let d = model.d();
        match self {
            Witness::SelfSighting { m, p } => {
                let e = event_at(model, m, p)?;
                let seen = model.contains(&e, &Body::Observer(m.clone()))?;
                let on_axis = p.space_part().iter().all(FieldElem::is_zero);
                Ok(seen != on_axis)
            }
            Witness::SingularChart { m } => Ok(model.chart(m)?.forward.linear.det().is_zero()),
            Witness::NonUniformTime { m, k, p, q } => {
                let line = crate::worldview::worldline(model, m, &Body::Observer(k.clone()))?;
                if !line.contains(p) || !line.contains(q) {
                    return Ok(false);
                }
                let ep = event_at(model, m, p)?;
                let eq = event_at(model, m, q)?;
                let lhs = elapsed_time(model, k, &ep, &eq)? * time_unit_vector(model, k, m)?.norm();
                Ok(lhs != (p - q).norm())
            }
            Witness::PhotonMismatch { m, p, q } => {
                if p == q {
                    return Ok(false);
                }
                let slope = slope_is_one(p, q)?;
                let x = event_at(model, m, p)?.ref_point;
                let y = event_at(model, m, q)?.ref_point;
                let photon = model.photons() && slope_is_one(&x, &y)?;
                Ok(slope != photon)
            }
            Witness::DistanceMismatch { m, k, e1, e2, .. } => {
                let simultaneous =
                    elapsed_time(model, m, e1, e2)?.is_zero() && elapsed_time(model, k, e1, e2)?.is_zero();
                Ok(simultaneous && spatial_distance(model, m, e1, e2)? != spatial_distance(model, k, e1, e2)?)
            }
            Witness::MissingObserver { m, p, q } => {
                let w = p - q;
                let premise = match claim {
                    Claim::Axiom(AxiomId::AxThExpPlus) => !w.time_part().is_zero(),
                    Claim::Axiom(AxiomId::AxThExp) => w.space_norm_sq() < w.time_part().square(),
                    _ => return Err(mismatch(claim)),
                };
                let x = event_at(model, m, p)?.ref_point;
                let y = event_at(model, m, q)?.ref_point;
                Ok(premise && !model.admits_direction(&(&x - &y)))
            }
            Witness::NoNearbyObserver { m, p, q, epsilon } => {
                if claim != Claim::Axiom(AxiomId::AxThExpStar) {
                    return Err(mismatch(claim));
                }
                // Every q' in the ball gives a direction of speed ≥ 1 in the
                // reference chart, and the predicate demands speed < 1.
                let w = q - p;
                let two_eps = epsilon + epsilon;
                Ok(*m == model.reference()
                    && model.family().has_subluminal()
                    && epsilon.is_positive()
                    && !w.time_part().is_zero()
                    && w.space_norm() - w.time_part().abs() >= two_eps)
            }
            Witness::TimeDisagreement { m, k, e1, e2, .. } => {
                Ok(elapsed_time(model, m, e1, e2)? != elapsed_time(model, k, e1, e2)?)
            }
            Witness::FastClock { m, k, .. } => {
                let u = time_unit_vector(model, k, m)?;
                let moving = u.space_part().iter().any(|x| !x.is_zero());
                Ok(moving && u.time_part().abs() <= FieldElem::one())
            }
            Witness::Twin { situation, .. } => {
                let Claim::Twin(variant) = claim else {
                    return Err(mismatch(claim));
                };
                if situation.watcher.dim() != d || !is_twin_situation(model, situation)? {
                    return Ok(false);
                }
                let c = compare_elapsed(model, situation)?;
                Ok(c.outcome != Comparison::required_by(variant))
            }
        }
    }
}
