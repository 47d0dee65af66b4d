//! ABox reasoning services as instances of higher-order query answering.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::engine::DlAnswer;
use crate::kb::{Concept, KnowledgeBase, Role, Statement};
use crate::pipeline::{consistency, run_query, PipelineError, QueryRun, ReasonerConfig, Saturated};
use crate::query::{Entity, HoAtom, HoLiteral, HoQuery, Term};

pub const INDIVIDUAL_VAR: &str = "?x";
pub const FILLER_VAR: &str = "?y";
pub const CONCEPT_VAR: &str = "?c";
pub const ROLE_VAR: &str = "?r";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum ServiceKind {
    InstanceCheck,
    InstanceRetrieval,
    RoleFillerRetrieval,
    ConceptRetrieval,
    RoleInstanceRetrieval,
    Cqa,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ServiceRequest {
    InstanceCheck { individual: String, concept: Concept },
    InstanceRetrieval { concept: Concept },
    RoleFillerRetrieval { individual: String, role: Role },
    ConceptRetrieval { individual: String },
    RoleInstanceRetrieval { subject: String, object: String },
    Cqa(HoQuery),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ServiceError {
    #[error("conjunctive query literal {0} is not of the form R(w1, w2), C(w1) or w1 = w2")]
    NotConjunctive(usize),
    #[error(transparent)]
    Pipeline(#[from] PipelineError),
}

impl ServiceError {
    pub fn is_resource(&self) -> bool {
        matches!(self, ServiceError::Pipeline(e) if e.is_resource())
    }
}

fn var(v: &str) -> Term {
    Term::Var(v.to_string())
}

fn ind(a: &str) -> Term {
    Term::Individual(a.to_string())
}

impl ServiceRequest {
    pub fn kind(&self) -> ServiceKind {
        match self {
            ServiceRequest::InstanceCheck { .. } => ServiceKind::InstanceCheck,
            ServiceRequest::InstanceRetrieval { .. } => ServiceKind::InstanceRetrieval,
            ServiceRequest::RoleFillerRetrieval { .. } => ServiceKind::RoleFillerRetrieval,
            ServiceRequest::ConceptRetrieval { .. } => ServiceKind::ConceptRetrieval,
            ServiceRequest::RoleInstanceRetrieval { .. } => ServiceKind::RoleInstanceRetrieval,
            ServiceRequest::Cqa(_) => ServiceKind::Cqa,
        }
    }

    /// Rejects a `cqa` query using anything beyond concept, abstract role
    /// and individual equality atoms over fixed predicates.
    pub fn validate(&self) -> Result<(), ServiceError> {
        if let ServiceRequest::Cqa(q) = self {
            for (i, l) in q.literals().iter().enumerate() {
                let ok = match &l.atom {
                    HoAtom::Concept(..) | HoAtom::Role(..) => true,
                    HoAtom::SameIndividual(a, b) => {
                        !matches!(a, Term::Constant(_)) && !matches!(b, Term::Constant(_))
                    }
                    _ => false,
                };
                if !ok {
                    return Err(ServiceError::NotConjunctive(i));
                }
            }
        }
        Ok(())
    }

    pub fn to_query(&self) -> HoQuery {
        let atom = match self {
            ServiceRequest::InstanceCheck {
                individual,
                concept,
            } => HoAtom::Concept(concept.clone(), ind(individual)),
            ServiceRequest::InstanceRetrieval { concept } => {
                HoAtom::Concept(concept.clone(), var(INDIVIDUAL_VAR))
            }
            ServiceRequest::RoleFillerRetrieval { individual, role } => {
                HoAtom::Role(role.clone(), ind(individual), var(FILLER_VAR))
            }
            ServiceRequest::ConceptRetrieval { individual } => {
                HoAtom::ConceptVar(CONCEPT_VAR.into(), ind(individual))
            }
            ServiceRequest::RoleInstanceRetrieval { subject, object } => {
                HoAtom::RoleVar(ROLE_VAR.into(), ind(subject), ind(object))
            }
            ServiceRequest::Cqa(q) => return q.clone(),
        };
        HoQuery::new(vec![HoLiteral::pos(atom)])
    }

    /// The variable whose bindings a retrieval reports.
    fn reported_var(&self) -> Option<&'static str> {
        match self {
            ServiceRequest::InstanceRetrieval { .. } => Some(INDIVIDUAL_VAR),
            ServiceRequest::RoleFillerRetrieval { .. } => Some(FILLER_VAR),
            ServiceRequest::ConceptRetrieval { .. } => Some(CONCEPT_VAR),
            ServiceRequest::RoleInstanceRetrieval { .. } => Some(ROLE_VAR),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ServiceAnswer {
    Bool(bool),
    Entities(BTreeSet<Entity>),
    Substitutions(BTreeSet<DlAnswer>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ServiceOutcome {
    /// φ_KB has a closed tableau; no question is answered.
    Inconsistent,
    Answered(ServiceAnswer),
}

impl ServiceOutcome {
    pub fn answer(&self) -> Option<&ServiceAnswer> {
        match self {
            ServiceOutcome::Inconsistent => None,
            ServiceOutcome::Answered(a) => Some(a),
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self.answer() {
            Some(ServiceAnswer::Bool(b)) => Some(*b),
            _ => None,
        }
    }

    pub fn entities(&self) -> Option<&BTreeSet<Entity>> {
        match self.answer() {
            Some(ServiceAnswer::Entities(e)) => Some(e),
            _ => None,
        }
    }
}

/// Whether the tableau of φ_KB stays open.
pub fn is_consistent(kb: &KnowledgeBase, cfg: &ReasonerConfig) -> Result<bool, PipelineError> {
    Ok(consistency(kb, cfg)?.consistent())
}

/// A service outcome with the tableaux behind it.
#[derive(Debug, Clone)]
pub struct ServiceRun {
    pub outcome: ServiceOutcome,
    /// Consistency tableau of the KB the answer rests on; for `entails`,
    /// the KB extended by the complement assertion.
    pub consistency: Saturated,
    pub query: Option<QueryRun>,
}

/// Runs a request. An instance check is the possibility reading: true
/// when some model of the KB puts the individual in the concept.
pub fn run(
    req: &ServiceRequest,
    kb: &KnowledgeBase,
    cfg: &ReasonerConfig,
) -> Result<ServiceOutcome, ServiceError> {
    Ok(run_detailed(req, kb, cfg)?.outcome)
}

pub fn run_detailed(
    req: &ServiceRequest,
    kb: &KnowledgeBase,
    cfg: &ReasonerConfig,
) -> Result<ServiceRun, ServiceError> {
    req.validate()?;
    let sat = consistency(kb, cfg)?;
    if !sat.consistent() {
        return Ok(ServiceRun {
            outcome: ServiceOutcome::Inconsistent,
            consistency: sat,
            query: None,
        });
    }
    let q = req.to_query();
    let qr = run_query(kb, &q, cfg)?;
    let answers = qr.answer_set();
    let out = match req.reported_var() {
        None if req.kind() == ServiceKind::InstanceCheck => ServiceAnswer::Bool(!answers.is_empty()),
        None => ServiceAnswer::Substitutions(answers),
        Some(v) => ServiceAnswer::Entities(
            answers
                .iter()
                .filter_map(|a| a.get(v).cloned())
                .collect(),
        ),
    };
    Ok(ServiceRun {
        outcome: ServiceOutcome::Answered(out),
        consistency: sat,
        query: Some(qr),
    })
}

/// Possibility reading of instance checking.
pub fn check(
    kb: &KnowledgeBase,
    individual: &str,
    concept: &Concept,
    cfg: &ReasonerConfig,
) -> Result<ServiceOutcome, ServiceError> {
    let req = ServiceRequest::InstanceCheck {
        individual: individual.to_string(),
        concept: concept.clone(),
    };
    run(&req, kb, cfg)
}

/// Entailment reading: `a : ~C` added to the KB closes its tableau.
pub fn entails(
    kb: &KnowledgeBase,
    individual: &str,
    concept: &Concept,
    cfg: &ReasonerConfig,
) -> Result<ServiceOutcome, ServiceError> {
    Ok(entails_detailed(kb, individual, concept, cfg)?.outcome)
}

pub fn entails_detailed(
    kb: &KnowledgeBase,
    individual: &str,
    concept: &Concept,
    cfg: &ReasonerConfig,
) -> Result<ServiceRun, ServiceError> {
    let sat = consistency(kb, cfg)?;
    if !sat.consistent() {
        return Ok(ServiceRun {
            outcome: ServiceOutcome::Inconsistent,
            consistency: sat,
            query: None,
        });
    }
    let mut extended = kb.clone();
    extended.add(Statement::ConceptAssertion(
        individual.to_string(),
        Concept::not(concept.clone()),
    ));
    let sat = consistency(&extended, cfg)?;
    Ok(ServiceRun {
        outcome: ServiceOutcome::Answered(ServiceAnswer::Bool(!sat.consistent())),
        consistency: sat,
        query: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::parse_kb;

    fn cfg() -> ReasonerConfig {
        ReasonerConfig::default()
    }

    fn c(n: &str) -> Concept {
        Concept::name(n)
    }

    #[test]
    fn request_shapes() {
        let q = ServiceRequest::InstanceCheck {
            individual: "a".into(),
            concept: c("Person"),
        }
        .to_query();
        assert_eq!(
            q.literals(),
            &[HoLiteral::pos(HoAtom::Concept(c("Person"), ind("a")))]
        );
        let q = ServiceRequest::ConceptRetrieval {
            individual: "a".into(),
        }
        .to_query();
        assert_eq!(
            q.literals(),
            &[HoLiteral::pos(HoAtom::ConceptVar("?c".into(), ind("a")))]
        );
        let q = ServiceRequest::RoleInstanceRetrieval {
            subject: "a".into(),
            object: "b".into(),
        }
        .to_query();
        assert_eq!(
            q.literals(),
            &[HoLiteral::pos(HoAtom::RoleVar("?r".into(), ind("a"), ind("b")))]
        );
    }

    #[test]
    fn instance_check_and_retrieval() {
        let kb = parse_kb("a : C\nb : C\n").unwrap();
        assert_eq!(check(&kb, "a", &c("C"), &cfg()).unwrap().as_bool(), Some(true));
        let got = run(&ServiceRequest::InstanceRetrieval { concept: c("C") }, &kb, &cfg()).unwrap();
        let want: BTreeSet<Entity> = ["a", "b"].iter().map(|a| Entity::Individual(a.to_string())).collect();
        assert_eq!(got.entities(), Some(&want));
    }

    #[test]
    fn role_fillers() {
        let kb = parse_kb("(a, b) : R\n").unwrap();
        let req = ServiceRequest::RoleFillerRetrieval {
            individual: "a".into(),
            role: Role::name("R"),
        };
        let want: BTreeSet<Entity> = [Entity::Individual("b".into())].into();
        assert_eq!(run(&req, &kb, &cfg()).unwrap().entities(), Some(&want));
    }

    #[test]
    fn possibility_versus_entailment() {
        let kb = parse_kb("a : C | D\n").unwrap();
        assert_eq!(check(&kb, "a", &c("C"), &cfg()).unwrap().as_bool(), Some(true));
        assert_eq!(entails(&kb, "a", &c("C"), &cfg()).unwrap().as_bool(), Some(false));
        let kb = parse_kb("a : C\n").unwrap();
        assert_eq!(entails(&kb, "a", &c("C"), &cfg()).unwrap().as_bool(), Some(true));
    }

    #[test]
    fn inconsistent_kb_is_flagged() {
        let kb = parse_kb("a : C\na : ~C\n").unwrap();
        let out = check(&kb, "a", &c("C"), &cfg()).unwrap();
        assert_eq!(out, ServiceOutcome::Inconsistent);
    }

    #[test]
    fn cqa_rejects_higher_order_atoms() {
        let q = HoQuery::new(vec![HoLiteral::pos(HoAtom::ConceptVar("?c".into(), var("?x")))]);
        assert_eq!(
            ServiceRequest::Cqa(q).validate(),
            Err(ServiceError::NotConjunctive(0))
        );
    }
}
