//! Axiom checkers. Exact mode applies a structural reduction over the closed
//! predicate/constructor vocabulary; sample mode instantiates the quantifiers
//! on seeded random points and observers and can only refute.

mod exact;
mod sample;
mod witness;

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::worldview::Model;

pub use exact::slow_time_probe;
pub use witness::Witness;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomId {
    AxEOF,
    AxSelf,
    AxEv,
    AxLinTime,
    AxPh,
    AxSymDist,
    AxShift,
    AxThExpPlus,
    AxThExpStar,
    AxThExp,
    AbsTime,
    SlowTime,
}

impl AxiomId {
    pub const ALL: [AxiomId; 12] = [
        AxiomId::AxEOF,
        AxiomId::AxSelf,
        AxiomId::AxEv,
        AxiomId::AxLinTime,
        AxiomId::AxPh,
        AxiomId::AxSymDist,
        AxiomId::AxShift,
        AxiomId::AxThExpPlus,
        AxiomId::AxThExpStar,
        AxiomId::AxThExp,
        AxiomId::AbsTime,
        AxiomId::SlowTime,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AxiomId::AxEOF => "AxEOF",
            AxiomId::AxSelf => "AxSelf",
            AxiomId::AxEv => "AxEv",
            AxiomId::AxLinTime => "AxLinTime",
            AxiomId::AxPh => "AxPh",
            AxiomId::AxSymDist => "AxSymDist",
            AxiomId::AxShift => "AxShift",
            AxiomId::AxThExpPlus => "AxThExpPlus",
            AxiomId::AxThExpStar => "AxThExpStar",
            AxiomId::AxThExp => "AxThExp",
            AxiomId::AbsTime => "AbsTime",
            AxiomId::SlowTime => "SlowTime",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SystemId {
    Kinem0,
    SpecRel,
    SpecRelMinus,
}

impl SystemId {
    pub fn name(self) -> &'static str {
        match self {
            SystemId::Kinem0 => "Kinem0",
            SystemId::SpecRel => "SpecRel",
            SystemId::SpecRelMinus => "SpecRelMinus",
        }
    }

    pub fn members(self) -> &'static [AxiomId] {
        use AxiomId::*;
        match self {
            SystemId::Kinem0 => &[AxEOF, AxSelf, AxLinTime, AxEv],
            SystemId::SpecRel => &[AxEOF, AxSelf, AxPh, AxEv, AxSymDist],
            SystemId::SpecRelMinus => &[AxEOF, AxSelf, AxPh, AxEv],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TwinVariant {
    TwP,
    NoTwP,
    AntiTwP,
}

impl TwinVariant {
    pub fn name(self) -> &'static str {
        match self {
            TwinVariant::TwP => "TwP",
            TwinVariant::NoTwP => "noTwP",
            TwinVariant::AntiTwP => "antiTwP",
        }
    }
}

/// Anything the checker can be asked about.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Claim {
    Axiom(AxiomId),
    System(SystemId),
    Twin(TwinVariant),
}

impl Claim {
    pub fn name(self) -> &'static str {
        match self {
            Claim::Axiom(a) => a.name(),
            Claim::System(s) => s.name(),
            Claim::Twin(t) => t.name(),
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for Claim {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl FromStr for Claim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Claim> {
        let t = s.trim();
        let alias = match t {
            "AxThExp+" | "AxThExp⁺" => Some(Claim::Axiom(AxiomId::AxThExpPlus)),
            "AxThExp*" => Some(Claim::Axiom(AxiomId::AxThExpStar)),
            "SpecRel-" | "SpecRel⁻" => Some(Claim::System(SystemId::SpecRelMinus)),
            "Kinem_0" => Some(Claim::System(SystemId::Kinem0)),
            _ => None,
        };
        if let Some(c) = alias {
            return Ok(c);
        }
        AxiomId::ALL
            .iter()
            .map(|a| Claim::Axiom(*a))
            .chain([SystemId::Kinem0, SystemId::SpecRel, SystemId::SpecRelMinus].map(Claim::System))
            .chain([TwinVariant::TwP, TwinVariant::NoTwP, TwinVariant::AntiTwP].map(Claim::Twin))
            .find(|c| c.name() == t)
            .ok_or_else(|| Error::UnknownAxiom(t.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Exact,
    Sample { n: usize, seed: u64 },
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Exact => "exact",
            Mode::Sample { .. } => "sample",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Outcome {
    Holds,
    Fails,
    SampledPass,
    PresuppositionViolated,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub axiom: Claim,
    pub mode: &'static str,
    pub outcome: Outcome,
    pub witness: Option<Witness>,
    pub certificate: Option<String>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Verdict {
    pub(crate) fn holds(claim: Claim, certificate: impl Into<String>) -> Verdict {
        Verdict {
            axiom: claim,
            mode: "exact",
            outcome: Outcome::Holds,
            witness: None,
            certificate: Some(certificate.into()),
            samples: None,
            seed: None,
            detail: None,
        }
    }

    pub(crate) fn fails(claim: Claim, mode: Mode, witness: Witness) -> Verdict {
        let (samples, seed) = match mode {
            Mode::Exact => (None, None),
            Mode::Sample { n, seed } => (Some(n), Some(seed)),
        };
        Verdict {
            axiom: claim,
            mode: mode.name(),
            outcome: Outcome::Fails,
            witness: Some(witness),
            certificate: None,
            samples,
            seed,
            detail: None,
        }
    }

    pub(crate) fn sampled_pass(claim: Claim, n: usize, seed: u64) -> Verdict {
        Verdict {
            axiom: claim,
            mode: "sample",
            outcome: Outcome::SampledPass,
            witness: None,
            certificate: None,
            samples: Some(n),
            seed: Some(seed),
            detail: None,
        }
    }

    pub(crate) fn presupposition(claim: Claim, mode: Mode, detail: String) -> Verdict {
        Verdict {
            axiom: claim,
            mode: mode.name(),
            outcome: Outcome::PresuppositionViolated,
            witness: None,
            certificate: None,
            samples: None,
            seed: None,
            detail: Some(detail),
        }
    }

    pub(crate) fn with_mode(mut self, mode: Mode) -> Verdict {
        self.mode = mode.name();
        if let Mode::Sample { n, seed } = mode {
            self.samples = Some(n);
            self.seed = Some(seed);
        }
        self
    }

    pub fn is_ok(&self) -> bool {
        matches!(self.outcome, Outcome::Holds | Outcome::SampledPass)
    }
}

/// Turns a presupposition failure into its own verdict.
pub(crate) fn settle(claim: Claim, mode: Mode, r: Result<Verdict>) -> Result<Verdict> {
    match r {
        Err(Error::PresuppositionViolated(detail)) => Ok(Verdict::presupposition(claim, mode, detail)),
        other => other,
    }
}

pub fn check_axiom(model: &Model, axiom: AxiomId, mode: Mode) -> Result<Verdict> {
    let claim = Claim::Axiom(axiom);
    let r = match mode {
        Mode::Exact => exact::check(model, axiom),
        Mode::Sample { n, seed } => sample::check(model, axiom, n, seed),
    };
    settle(claim, mode, r)
}

#[derive(Clone, Debug, Serialize)]
pub struct SystemVerdict {
    pub system: Claim,
    pub outcome: Outcome,
    pub members: Vec<Verdict>,
}

pub fn check_system(model: &Model, system: SystemId, mode: Mode) -> Result<SystemVerdict> {
    let members = system
        .members()
        .iter()
        .map(|a| check_axiom(model, *a, mode))
        .collect::<Result<Vec<_>>>()?;
    let outcome = aggregate(members.iter().map(|v| v.outcome));
    Ok(SystemVerdict {
        system: Claim::System(system),
        outcome,
        members,
    })
}

/// Holds iff all hold; any failure wins, then presupposition failures, then
/// sampled passes.
pub(crate) fn aggregate(outcomes: impl Iterator<Item = Outcome>) -> Outcome {
    let mut worst = Outcome::Holds;
    for o in outcomes {
        worst = match (worst, o) {
            (Outcome::Fails, _) | (_, Outcome::Fails) => Outcome::Fails,
            (Outcome::PresuppositionViolated, _) | (_, Outcome::PresuppositionViolated) => {
                Outcome::PresuppositionViolated
            }
            (Outcome::SampledPass, _) | (_, Outcome::SampledPass) => Outcome::SampledPass,
            _ => Outcome::Holds,
        };
    }
    worst
}

/// Evaluates any claim; systems report their aggregate with the member
/// verdicts attached as the certificate or witness of the first failure.
pub fn check_claim(model: &Model, claim: Claim, mode: Mode) -> Result<Verdict> {
    match claim {
        Claim::Axiom(a) => check_axiom(model, a, mode),
        Claim::Twin(t) => settle(claim, mode, crate::twin::twp_verdict(model, t, mode)),
        Claim::System(s) => {
            let sv = check_system(model, s, mode)?;
            let failing = sv.members.iter().find(|v| v.outcome == Outcome::Fails);
            let names: Vec<&str> = sv.members.iter().map(|v| v.axiom.name()).collect();
            Ok(Verdict {
                axiom: claim,
                mode: mode.name(),
                outcome: sv.outcome,
                witness: failing.and_then(|v| v.witness.clone()),
                certificate: (sv.outcome == Outcome::Holds)
                    .then(|| format!("every member holds: {}", names.join(", "))),
                samples: match mode {
                    Mode::Sample { n, .. } => Some(n),
                    Mode::Exact => None,
                },
                seed: match mode {
                    Mode::Sample { seed, .. } => Some(seed),
                    Mode::Exact => None,
                },
                detail: failing.map(|v| format!("{} fails", v.axiom)),
            })
        }
    }
}
