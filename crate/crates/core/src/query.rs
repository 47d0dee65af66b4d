//! Higher-order conjunctive queries over individual/data-value, concept,
//! abstract-role and concrete-role variables.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::kb::{Concept, ConcreteRole, Constant, Role};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sort {
    Individual,
    Concept,
    AbstractRole,
    ConcreteRole,
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Sort::Individual => "individual",
            Sort::Concept => "concept",
            Sort::AbstractRole => "abstract-role",
            Sort::ConcreteRole => "concrete-role",
        };
        f.write_str(s)
    }
}

/// Argument of an atom: a query variable, an individual or a constant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Individual(String),
    Constant(Constant),
}

impl Term {
    pub fn var(&self) -> Option<&str> {
        match self {
            Term::Var(v) => Some(v),
            _ => None,
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Individual(a) => f.write_str(a),
            Term::Constant(e) => write!(f, "{e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HoAtom {
    /// `C(w)`
    Concept(Concept, Term),
    /// `R(w1, w2)`
    Role(Role, Term, Term),
    /// `P(w, u)`
    Concrete(ConcreteRole, Term, Term),
    /// `c(w)`
    ConceptVar(String, Term),
    /// `r(w1, w2)`
    RoleVar(String, Term, Term),
    /// `p(w, u)`
    ConcreteVar(String, Term, Term),
    /// `w1 = w2`
    SameIndividual(Term, Term),
    /// `u1 = u2`
    SameValue(Term, Term),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HoLiteral {
    pub positive: bool,
    pub atom: HoAtom,
}

impl HoLiteral {
    pub fn pos(atom: HoAtom) -> Self {
        HoLiteral {
            positive: true,
            atom,
        }
    }

    pub fn neg(atom: HoAtom) -> Self {
        HoLiteral {
            positive: false,
            atom,
        }
    }
}

/// Ordered conjunction of literals; the empty query is λ.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct HoQuery(pub Vec<HoLiteral>);

/// KB entity a query variable can be bound to.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Entity {
    Individual(String),
    Constant(Constant),
    Concept(String),
    Role(String),
    ConcreteRole(String),
    /// A variable with no KB name, shown only on request.
    Internal { name: String, sort: Sort },
}

impl Entity {
    pub fn sort(&self) -> Sort {
        match self {
            Entity::Individual(_) | Entity::Constant(_) => Sort::Individual,
            Entity::Concept(_) => Sort::Concept,
            Entity::Role(_) => Sort::AbstractRole,
            Entity::ConcreteRole(_) => Sort::ConcreteRole,
            Entity::Internal { sort, .. } => *sort,
        }
    }
}

impl fmt::Display for Entity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Entity::Individual(a) => f.write_str(a),
            Entity::Constant(e) => write!(f, "{e}"),
            Entity::Concept(n) | Entity::Role(n) | Entity::ConcreteRole(n) => f.write_str(n),
            Entity::Internal { name, .. } => f.write_str(name),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QueryError {
    #[error("variable {var} used as {first} and as {second}")]
    SortConflict {
        var: String,
        first: String,
        second: String,
    },
    #[error("variable {var} of sort {expected} cannot be bound to {entity}")]
    BadBinding {
        var: String,
        expected: Sort,
        entity: String,
    },
}

/// Variables of a query partitioned by sort.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct QueryVars {
    pub individual: BTreeSet<String>,
    pub concept: BTreeSet<String>,
    pub abstract_role: BTreeSet<String>,
    pub concrete_role: BTreeSet<String>,
}

impl QueryVars {
    pub fn all(&self) -> BTreeSet<String> {
        self.individual
            .iter()
            .chain(&self.concept)
            .chain(&self.abstract_role)
            .chain(&self.concrete_role)
            .cloned()
            .collect()
    }

    pub fn sort_of(&self, v: &str) -> Option<Sort> {
        if self.individual.contains(v) {
            Some(Sort::Individual)
        } else if self.concept.contains(v) {
            Some(Sort::Concept)
        } else if self.abstract_role.contains(v) {
            Some(Sort::AbstractRole)
        } else if self.concrete_role.contains(v) {
            Some(Sort::ConcreteRole)
        } else {
            None
        }
    }

    pub fn is_empty(&self) -> bool {
        self.all().is_empty()
    }
}

/// Where a level-0 variable occurs: individual (`w`) or data-value (`u`)
/// argument positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Position {
    Individual,
    DataValue,
}

impl HoQuery {
    pub fn new(lits: Vec<HoLiteral>) -> Self {
        HoQuery(lits)
    }

    pub fn literals(&self) -> &[HoLiteral] {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn occurrences(&self) -> Vec<(String, Sort, Option<Position>)> {
        let mut occ = Vec::new();
        let arg = |t: &Term, pos: Position, occ: &mut Vec<_>| {
            if let Term::Var(v) = t {
                occ.push((v.clone(), Sort::Individual, Some(pos)));
            }
        };
        for l in &self.0 {
            match &l.atom {
                HoAtom::Concept(_, w) => arg(w, Position::Individual, &mut occ),
                HoAtom::Role(_, w1, w2) => {
                    arg(w1, Position::Individual, &mut occ);
                    arg(w2, Position::Individual, &mut occ);
                }
                HoAtom::Concrete(_, w, u) => {
                    arg(w, Position::Individual, &mut occ);
                    arg(u, Position::DataValue, &mut occ);
                }
                HoAtom::ConceptVar(c, w) => {
                    occ.push((c.clone(), Sort::Concept, None));
                    arg(w, Position::Individual, &mut occ);
                }
                HoAtom::RoleVar(r, w1, w2) => {
                    occ.push((r.clone(), Sort::AbstractRole, None));
                    arg(w1, Position::Individual, &mut occ);
                    arg(w2, Position::Individual, &mut occ);
                }
                HoAtom::ConcreteVar(p, w, u) => {
                    occ.push((p.clone(), Sort::ConcreteRole, None));
                    arg(w, Position::Individual, &mut occ);
                    arg(u, Position::DataValue, &mut occ);
                }
                HoAtom::SameIndividual(w1, w2) => {
                    arg(w1, Position::Individual, &mut occ);
                    arg(w2, Position::Individual, &mut occ);
                }
                HoAtom::SameValue(u1, u2) => {
                    arg(u1, Position::DataValue, &mut occ);
                    arg(u2, Position::DataValue, &mut occ);
                }
            }
        }
        occ
    }

    /// The four disjoint variable sets occurring in the query.
    pub fn variables(&self) -> QueryVars {
        let mut vars = QueryVars::default();
        for (v, sort, _) in self.occurrences() {
            match sort {
                Sort::Individual => vars.individual.insert(v),
                Sort::Concept => vars.concept.insert(v),
                Sort::AbstractRole => vars.abstract_role.insert(v),
                Sort::ConcreteRole => vars.concrete_role.insert(v),
            };
        }
        vars
    }

    /// Argument positions of each individual/data-value variable.
    pub fn positions(&self) -> BTreeMap<String, BTreeSet<Position>> {
        let mut out: BTreeMap<String, BTreeSet<Position>> = BTreeMap::new();
        for (v, _, pos) in self.occurrences() {
            if let Some(p) = pos {
                out.entry(v).or_default().insert(p);
            }
        }
        out
    }

    /// Rejects variables with two sorts, and variables used both as an
    /// individual and as a data value.
    pub fn check_sorts(&self) -> Result<(), QueryError> {
        let mut seen: BTreeMap<String, (Sort, Option<Position>)> = BTreeMap::new();
        for (v, sort, pos) in self.occurrences() {
            match seen.get(&v) {
                None => {
                    seen.insert(v, (sort, pos));
                }
                Some((s0, p0)) => {
                    if *s0 != sort {
                        return Err(QueryError::SortConflict {
                            var: v,
                            first: s0.to_string(),
                            second: sort.to_string(),
                        });
                    }
                    if let (Some(a), Some(b)) = (p0, pos) {
                        if *a != b {
                            return Err(QueryError::SortConflict {
                                var: v,
                                first: "individual".into(),
                                second: "data value".into(),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Sort-preserving map from query variables to KB entities.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DlSubstitution(pub BTreeMap<String, Entity>);

impl DlSubstitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bind(mut self, var: &str, e: Entity) -> Self {
        self.0.insert(var.to_string(), e);
        self
    }

    pub fn get(&self, var: &str) -> Option<&Entity> {
        self.0.get(var)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self · other` for substitutions with disjoint domains.
    pub fn then(&self, other: &DlSubstitution) -> DlSubstitution {
        let mut out = self.0.clone();
        for (k, v) in &other.0 {
            out.entry(k.clone()).or_insert_with(|| v.clone());
        }
        DlSubstitution(out)
    }
}

fn apply_term(t: &Term, s: &DlSubstitution) -> Term {
    match t {
        Term::Var(v) => match s.get(v) {
            Some(Entity::Individual(a)) => Term::Individual(a.clone()),
            Some(Entity::Constant(e)) => Term::Constant(e.clone()),
            _ => t.clone(),
        },
        _ => t.clone(),
    }
}

fn check_binding(var: &str, expected: Sort, s: &DlSubstitution) -> Result<(), QueryError> {
    match s.get(var) {
        Some(e) if e.sort() != expected => Err(QueryError::BadBinding {
            var: var.to_string(),
            expected,
            entity: e.to_string(),
        }),
        _ => Ok(()),
    }
}

/// Replaces every occurrence of a bound variable; literal order is kept.
pub fn apply(s: &DlSubstitution, q: &HoQuery) -> Result<HoQuery, QueryError> {
    let vars = q.variables();
    for v in &vars.individual {
        check_binding(v, Sort::Individual, s)?;
    }
    for v in &vars.concept {
        check_binding(v, Sort::Concept, s)?;
    }
    for v in &vars.abstract_role {
        check_binding(v, Sort::AbstractRole, s)?;
    }
    for v in &vars.concrete_role {
        check_binding(v, Sort::ConcreteRole, s)?;
    }
    let t = |x: &Term| apply_term(x, s);
    let lits = q
        .0
        .iter()
        .map(|l| {
            let atom = match &l.atom {
                HoAtom::Concept(c, w) => HoAtom::Concept(c.clone(), t(w)),
                HoAtom::Role(r, a, b) => HoAtom::Role(r.clone(), t(a), t(b)),
                HoAtom::Concrete(p, a, b) => HoAtom::Concrete(p.clone(), t(a), t(b)),
                HoAtom::ConceptVar(c, w) => match s.get(c) {
                    Some(Entity::Concept(n)) => HoAtom::Concept(Concept::name(n), t(w)),
                    _ => HoAtom::ConceptVar(c.clone(), t(w)),
                },
                HoAtom::RoleVar(r, a, b) => match s.get(r) {
                    Some(Entity::Role(n)) => HoAtom::Role(Role::name(n), t(a), t(b)),
                    _ => HoAtom::RoleVar(r.clone(), t(a), t(b)),
                },
                HoAtom::ConcreteVar(p, a, b) => match s.get(p) {
                    Some(Entity::ConcreteRole(n)) => {
                        HoAtom::Concrete(ConcreteRole::name(n), t(a), t(b))
                    }
                    _ => HoAtom::ConcreteVar(p.clone(), t(a), t(b)),
                },
                HoAtom::SameIndividual(a, b) => HoAtom::SameIndividual(t(a), t(b)),
                HoAtom::SameValue(a, b) => HoAtom::SameValue(t(a), t(b)),
            };
            HoLiteral {
                positive: l.positive,
                atom,
            }
        })
        .collect();
    Ok(HoQuery(lits))
}
