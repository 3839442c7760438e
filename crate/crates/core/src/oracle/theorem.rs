//! Theorem checkers: each tag evaluates both sides of one claim on a
//! concrete instance and reports whether they agree.

use alloc::format;
use alloc::string::String;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use super::{Budget, OracleError};
use crate::category::{check_adjunction, check_descending, AcyclicCategory, BeatWitness, Direction};
use crate::delta::{is_contiguous, DeltaComplex, DeltaMap};
use crate::digest::Digest;
use crate::functors::{classifying_space, contiguity_join, face_poset_category, face_poset_map, sd_category, sd_delta};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TheoremTag {
    /// A beat object of `A` is a vertex of `B(A)` dominated by its partner.
    BeatDominated,
    /// `A` is minimal iff `B(A)` is.
    BMinimal,
    /// `A` is strongly collapsible iff `B(A)` is.
    BCollapse,
    /// If `χ(X)` is minimal then so is `X`.
    ChiMinimal,
    /// `X` is strongly collapsible iff `χ(X)` is.
    ChiCollapse,
    /// `A` is strongly collapsible iff `sd(A)` is.
    SdCatCollapse,
    /// `X` is strongly collapsible iff `sd(X)` is.
    SdDeltaCollapse,
    /// Every beat retraction is descending (on `A` or `Aᵒᵖ`) and right
    /// adjoint to the inclusion.
    Adjunction,
    /// Every dominated-vertex retraction is contiguous to the identity, and
    /// the contiguity lifts to transformations of face-poset functors.
    ContiguityRetraction,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InstanceKind {
    Category,
    Complex,
}

impl TheoremTag {
    pub const ALL: [TheoremTag; 9] = [
        TheoremTag::BeatDominated,
        TheoremTag::BMinimal,
        TheoremTag::BCollapse,
        TheoremTag::ChiMinimal,
        TheoremTag::ChiCollapse,
        TheoremTag::SdCatCollapse,
        TheoremTag::SdDeltaCollapse,
        TheoremTag::Adjunction,
        TheoremTag::ContiguityRetraction,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremTag::BeatDominated => "beat_dominated",
            TheoremTag::BMinimal => "B_minimal",
            TheoremTag::BCollapse => "B_collapse",
            TheoremTag::ChiMinimal => "chi_minimal",
            TheoremTag::ChiCollapse => "chi_collapse",
            TheoremTag::SdCatCollapse => "sd_cat_collapse",
            TheoremTag::SdDeltaCollapse => "sd_delta_collapse",
            TheoremTag::Adjunction => "adjunction",
            TheoremTag::ContiguityRetraction => "contiguity_retraction",
        }
    }

    /// The kind of instance the claim is about.
    pub fn kind(self) -> InstanceKind {
        match self {
            TheoremTag::BeatDominated
            | TheoremTag::BMinimal
            | TheoremTag::BCollapse
            | TheoremTag::SdCatCollapse
            | TheoremTag::Adjunction => InstanceKind::Category,
            TheoremTag::ChiMinimal
            | TheoremTag::ChiCollapse
            | TheoremTag::SdDeltaCollapse
            | TheoremTag::ContiguityRetraction => InstanceKind::Complex,
        }
    }
}

impl fmt::Display for TheoremTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremTag {
    type Err = TheoremError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TheoremTag::ALL.into_iter().find(|t| t.as_str() == s).ok_or_else(|| TheoremError::UnknownTag(s.into()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Category(AcyclicCategory),
    Complex(DeltaComplex),
}

impl Instance {
    pub fn kind(&self) -> InstanceKind {
        match self {
            Instance::Category(_) => InstanceKind::Category,
            Instance::Complex(_) => InstanceKind::Complex,
        }
    }

    pub fn digest(&self) -> Digest {
        match self {
            Instance::Category(a) => a.digest(),
            Instance::Complex(x) => x.digest(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    /// Which side failed, and on what.
    Counterexample(String),
}

/// The outcome of one check. A counterexample carries the instance so the
/// failing check can be replayed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub tag: TheoremTag,
    pub digest: Digest,
    pub verdict: Verdict,
    pub instance: Instance,
}

impl TheoremReport {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum TheoremError {
    #[error("unknown theorem tag `{0}`")]
    UnknownTag(String),
    #[error("theorem `{tag}` needs a {expected:?} instance")]
    WrongInstanceKind { tag: TheoremTag, expected: InstanceKind },
    #[error("the instance is empty")]
    EmptyInstance,
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

impl TheoremError {
    pub fn tag(&self) -> &'static str {
        match self {
            TheoremError::UnknownTag(_) => "UnknownTag",
            TheoremError::WrongInstanceKind { .. } => "WrongInstanceKind",
            TheoremError::EmptyInstance => "EmptyInstance",
            TheoremError::Oracle(e) => e.tag(),
        }
    }
}

fn iff(claim: &str, left: bool, right: bool) -> Verdict {
    if left == right {
        Verdict::Holds
    } else {
        Verdict::Counterexample(format!("{claim}: left side is {left}, right side is {right}"))
    }
}

/// Evaluates the claim named by `tag` on `instance`. The budget is charged
/// once per witness examined.
pub fn check_theorem<B: Budget>(
    tag: TheoremTag,
    instance: &Instance,
    budget: &mut B,
) -> Result<TheoremReport, TheoremError> {
    budget.charge(1).map_err(OracleError::from)?;
    let verdict = match (tag.kind(), instance) {
        (InstanceKind::Category, Instance::Category(a)) => {
            if a.object_count() == 0 {
                return Err(TheoremError::EmptyInstance);
            }
            check_category(tag, a, budget)?
        }
        (InstanceKind::Complex, Instance::Complex(x)) => {
            if x.is_empty() {
                return Err(TheoremError::EmptyInstance);
            }
            check_complex(tag, x, budget)?
        }
        (expected, _) => return Err(TheoremError::WrongInstanceKind { tag, expected }),
    };
    Ok(TheoremReport { tag, digest: instance.digest(), verdict, instance: instance.clone() })
}

fn all_beats(a: &AcyclicCategory) -> impl Iterator<Item = BeatWitness> + '_ {
    a.object_ids().flat_map(move |x| {
        let down = a.down_beat(x).map(|morphism| BeatWitness { object: x, direction: Direction::Down, morphism });
        let up = a.up_beat(x).map(|morphism| BeatWitness { object: x, direction: Direction::Up, morphism });
        down.into_iter().chain(up)
    })
}

fn check_category<B: Budget>(tag: TheoremTag, a: &AcyclicCategory, budget: &mut B) -> Result<Verdict, TheoremError> {
    Ok(match tag {
        TheoremTag::BeatDominated => {
            let ba = classifying_space(a);
            for w in all_beats(a) {
                budget.charge(1).map_err(OracleError::from)?;
                let (v, p) = (ba.vertex_of_object(w.object), ba.vertex_of_object(w.partner(a)));
                if ba.complex.dominated_by(v, p).is_none() {
                    return Ok(Verdict::Counterexample(format!(
                        "{} beat object {} via {} is not dominated in B(A)",
                        w.direction.as_str(),
                        a.object_name(w.object),
                        a.morphism_name(w.morphism)
                    )));
                }
            }
            Verdict::Holds
        }
        TheoremTag::BMinimal => {
            iff("A minimal vs B(A) minimal", a.is_minimal(), classifying_space(a).complex.is_minimal())
        }
        TheoremTag::BCollapse => iff(
            "A strongly collapsible vs B(A) strongly collapsible",
            a.is_strongly_collapsible(),
            classifying_space(a).complex.is_strongly_collapsible(),
        ),
        TheoremTag::SdCatCollapse => iff(
            "A strongly collapsible vs sd(A) strongly collapsible",
            a.is_strongly_collapsible(),
            sd_category(a).is_strongly_collapsible(),
        ),
        TheoremTag::Adjunction => {
            let opposite = a.opposite();
            for w in all_beats(a) {
                budget.charge(1).map_err(OracleError::from)?;
                // An up beat of A is a down beat of Aᵒᵖ with the same ids.
                let (cat, witness) = match w.direction {
                    Direction::Down => (a, w),
                    Direction::Up => (&opposite, BeatWitness { direction: Direction::Down, ..w }),
                };
                let f = cat.retraction_functor(&witness).functor;
                let descending = check_descending(cat, &f).ok().flatten().is_some();
                let adjoint = descending && check_adjunction(cat, &f) == Ok(true);
                if !adjoint {
                    return Ok(Verdict::Counterexample(format!(
                        "retraction at {} beat object {} is not a descending right adjoint",
                        w.direction.as_str(),
                        a.object_name(w.object)
                    )));
                }
            }
            Verdict::Holds
        }
        _ => unreachable!("complex tag routed to category check"),
    })
}

fn check_complex<B: Budget>(tag: TheoremTag, x: &DeltaComplex, budget: &mut B) -> Result<Verdict, TheoremError> {
    Ok(match tag {
        TheoremTag::ChiMinimal => {
            let chi = face_poset_category(x).category.is_minimal();
            if chi && !x.is_minimal() {
                Verdict::Counterexample("χ(X) is minimal but X is not".into())
            } else {
                Verdict::Holds
            }
        }
        TheoremTag::ChiCollapse => iff(
            "X strongly collapsible vs χ(X) strongly collapsible",
            x.is_strongly_collapsible(),
            face_poset_category(x).category.is_strongly_collapsible(),
        ),
        TheoremTag::SdDeltaCollapse => iff(
            "X strongly collapsible vs sd(X) strongly collapsible",
            x.is_strongly_collapsible(),
            sd_delta(x).is_strongly_collapsible(),
        ),
        TheoremTag::ContiguityRetraction => {
            let chi = face_poset_category(x);
            let id = DeltaMap::identity(x);
            let chi_id = face_poset_map(x, &chi, &chi, &id).expect("identity is order preserving");
            for v in x.vertices() {
                for w in x.vertices() {
                    if v == w {
                        continue;
                    }
                    let Some(witness) = x.dominated_by(v, w) else { continue };
                    budget.charge(1).map_err(OracleError::from)?;
                    let r = x.retraction_endomap(&witness);
                    let fail = |what: &str| {
                        Verdict::Counterexample(format!("retraction of {} onto {}: {what}", x.name(v), x.name(w)))
                    };
                    if !r.is_valid(x, x) {
                        return Ok(fail("not a Δ-map"));
                    }
                    if !is_contiguous(x, x, &r, &id) {
                        return Ok(fail("not contiguous to the identity"));
                    }
                    let Ok(chi_r) = face_poset_map(x, &chi, &chi, &r) else {
                        return Ok(fail("χ(r) is not order preserving"));
                    };
                    let lifted =
                        contiguity_join(x, x, &chi, &chi, &r, &id).is_ok_and(|j| j.verify(&chi, &chi, &chi_r, &chi_id));
                    if !lifted {
                        return Ok(fail("contiguity does not lift to face posets"));
                    }
                }
            }
            Verdict::Holds
        }
        _ => unreachable!("category tag routed to complex check"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::oracle::{StepLimit, Unlimited};

    fn check(tag: &str, instance: Instance) -> TheoremReport {
        check_theorem(tag.parse().unwrap(), &instance, &mut Unlimited).unwrap()
    }

    #[test]
    fn tags_round_trip() {
        for t in TheoremTag::ALL {
            assert_eq!(t.as_str().parse::<TheoremTag>().unwrap(), t);
        }
        assert_eq!("B_maximal".parse::<TheoremTag>().unwrap_err().tag(), "UnknownTag");
    }

    #[test]
    fn fixture_examples() {
        assert!(check("B_minimal", Instance::Category(fixtures::circle_category())).holds());
        assert!(check("chi_collapse", Instance::Complex(fixtures::full_triangle())).holds());
        assert!(check("sd_delta_collapse", Instance::Complex(fixtures::circle_complex())).holds());
    }

    #[test]
    fn every_tag_holds_on_fixtures() {
        let cats =
            [fixtures::chain3(), fixtures::circle_category(), fixtures::discrete_pair(), fixtures::point_category()];
        let complexes = [
            fixtures::circle_complex(),
            fixtures::sphere_complex(),
            fixtures::disc_complex(),
            fixtures::full_triangle(),
            fixtures::single_edge(),
        ];
        for tag in TheoremTag::ALL {
            let instances: alloc::vec::Vec<Instance> = match tag.kind() {
                InstanceKind::Category => cats.iter().cloned().map(Instance::Category).collect(),
                InstanceKind::Complex => complexes.iter().cloned().map(Instance::Complex).collect(),
            };
            for i in instances {
                let report = check_theorem(tag, &i, &mut Unlimited).unwrap();
                assert_eq!(report.verdict, Verdict::Holds, "{tag} on {:?}", i.digest());
            }
        }
    }

    #[test]
    fn errors() {
        let err = check_theorem(TheoremTag::BMinimal, &Instance::Complex(fixtures::circle_complex()), &mut Unlimited);
        assert_eq!(err.unwrap_err().tag(), "WrongInstanceKind");
        let err = check_theorem(TheoremTag::ChiMinimal, &Instance::Complex(DeltaComplex::empty()), &mut Unlimited);
        assert_eq!(err.unwrap_err().tag(), "EmptyInstance");
        let err = check_theorem(
            TheoremTag::Adjunction,
            &Instance::Category(fixtures::chain3()),
            &mut StepLimit { remaining: 1 },
        );
        assert_eq!(err.unwrap_err().tag(), "BudgetExceeded");
    }
}
