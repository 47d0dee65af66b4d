//! Knowledge base abstract syntax, datatype map, well-formedness and
//! signature extraction.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Reserved name of the universal abstract role.
pub const UNIVERSAL_ROLE: &str = "U";

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DatatypeMap {
    pub datatypes: BTreeSet<String>,
    pub constants: BTreeMap<String, BTreeSet<String>>,
    pub facets: BTreeMap<String, BTreeSet<String>>,
    pub facet_extensions: BTreeMap<String, BTreeSet<String>>,
}

impl DatatypeMap {
    pub fn add_datatype(&mut self, d: &str) {
        self.datatypes.insert(d.to_string());
        self.constants.entry(d.to_string()).or_default();
        self.facets.entry(d.to_string()).or_default();
    }

    pub fn add_constant(&mut self, d: &str, value: &str) {
        self.add_datatype(d);
        self.constants
            .get_mut(d)
            .expect("datatype just added")
            .insert(value.to_string());
    }

    pub fn add_facet(&mut self, d: &str, facet: &str, extension: BTreeSet<String>) {
        self.add_datatype(d);
        self.facets
            .get_mut(d)
            .expect("datatype just added")
            .insert(facet.to_string());
        self.facet_extensions.insert(facet.to_string(), extension);
    }

    pub fn datatype_of_facet(&self, facet: &str) -> Option<&str> {
        self.facets
            .iter()
            .find(|(_, fs)| fs.contains(facet))
            .map(|(d, _)| d.as_str())
    }

    pub fn constants_of(&self, d: &str) -> BTreeSet<String> {
        self.constants.get(d).cloned().unwrap_or_default()
    }

    pub fn facet_extension(&self, facet: &str) -> BTreeSet<String> {
        self.facet_extensions.get(facet).cloned().unwrap_or_default()
    }
}

/// A datatype constant `"value"^datatype`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Constant {
    pub value: String,
    pub datatype: String,
}

impl Constant {
    pub fn new(value: &str, datatype: &str) -> Self {
        Constant {
            value: value.to_string(),
            datatype: datatype.to_string(),
        }
    }
}

impl fmt::Display for Constant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{}\"^{}", self.value, self.datatype)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Concept {
    Name(String),
    Top,
    Bottom,
    Not(Box<Concept>),
    And(Box<Concept>, Box<Concept>),
    Or(Box<Concept>, Box<Concept>),
    Nominals(Vec<String>),
    /// `exists R . Self`
    SelfRestriction(Box<Role>),
    /// `exists R . {a}`
    HasValue(Box<Role>, String),
    /// `exists P . {e}`
    HasData(Box<ConcreteRole>, Constant),
}

impl Concept {
    pub fn name(n: &str) -> Concept {
        Concept::Name(n.to_string())
    }

    pub fn not(c: Concept) -> Concept {
        Concept::Not(Box::new(c))
    }

    pub fn and(a: Concept, b: Concept) -> Concept {
        Concept::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Concept, b: Concept) -> Concept {
        Concept::Or(Box::new(a), Box::new(b))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Name(String),
    Universal,
    Inverse(Box<Role>),
    Not(Box<Role>),
    And(Box<Role>, Box<Role>),
    Or(Box<Role>, Box<Role>),
    /// `R_{C|}`
    Domain(Box<Role>, Concept),
    /// `R_{|C}`
    Range(Box<Role>, Concept),
    /// `R_{C1|C2}`
    Restrict(Box<Role>, Concept, Concept),
    Identity(Concept),
    Product(Concept, Concept),
}

impl Role {
    pub fn name(n: &str) -> Role {
        if n == UNIVERSAL_ROLE {
            Role::Universal
        } else {
            Role::Name(n.to_string())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConcreteRole {
    Name(String),
    Not(Box<ConcreteRole>),
    And(Box<ConcreteRole>, Box<ConcreteRole>),
    Or(Box<ConcreteRole>, Box<ConcreteRole>),
    /// `P_{C|}`
    Domain(Box<ConcreteRole>, Concept),
    /// `P_{|t}`
    Range(Box<ConcreteRole>, DataTerm),
    /// `P_{C|t}`
    Restrict(Box<ConcreteRole>, Concept, DataTerm),
}

impl ConcreteRole {
    pub fn name(n: &str) -> ConcreteRole {
        ConcreteRole::Name(n.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Facet {
    Named(String),
    /// `top(d)`
    Top,
    /// `bot(d)`
    Bottom,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FacetLiteral {
    pub positive: bool,
    pub facet: Facet,
}

/// Facet expression of one datatype in conjunctive normal form. Clauses
/// and literals are kept sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FacetCnf(Vec<Vec<FacetLiteral>>);

impl FacetCnf {
    pub fn new(clauses: Vec<Vec<FacetLiteral>>) -> Self {
        let mut cs: Vec<Vec<FacetLiteral>> = clauses
            .into_iter()
            .map(|mut c| {
                c.sort();
                c.dedup();
                c
            })
            .collect();
        cs.sort();
        cs.dedup();
        FacetCnf(cs)
    }

    pub fn atom(facet: Facet) -> Self {
        FacetCnf(vec![vec![FacetLiteral {
            positive: true,
            facet,
        }]])
    }

    pub fn clauses(&self) -> &[Vec<FacetLiteral>] {
        &self.0
    }

    /// A single positive facet (or top/bottom) with no Boolean structure.
    pub fn as_atom(&self) -> Option<&Facet> {
        match self.0.as_slice() {
            [c] => match c.as_slice() {
                [l] if l.positive => Some(&l.facet),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn has_negation(&self) -> bool {
        self.0.iter().flatten().any(|l| !l.positive)
    }

    pub fn facet_names(&self) -> BTreeSet<String> {
        self.0
            .iter()
            .flatten()
            .filter_map(|l| match &l.facet {
                Facet::Named(f) => Some(f.clone()),
                _ => None,
            })
            .collect()
    }

    /// Canonical text with facet names only, e.g. `(f1 | ~f2) & f3`.
    pub fn render(&self, datatype: &str) -> String {
        let lit = |l: &FacetLiteral| {
            let base = match &l.facet {
                Facet::Named(f) => f.clone(),
                Facet::Top => format!("top({datatype})"),
                Facet::Bottom => format!("bot({datatype})"),
            };
            if l.positive {
                base
            } else {
                format!("~{base}")
            }
        };
        let clause = |c: &Vec<FacetLiteral>| {
            let parts: Vec<String> = c.iter().map(lit).collect();
            if c.len() > 1 && self.0.len() > 1 {
                format!("({})", parts.join(" | "))
            } else {
                parts.join(" | ")
            }
        };
        self.0.iter().map(clause).collect::<Vec<_>>().join(" & ")
    }

    /// Truth of the expression for a constant, given facet extensions.
    pub fn holds(&self, value: &str, datatype: &str, dmap: &DatatypeMap) -> bool {
        self.0.iter().all(|c| {
            c.iter().any(|l| {
                let member = match &l.facet {
                    Facet::Named(f) => dmap.facet_extension(f).contains(value),
                    Facet::Top => dmap.constants_of(datatype).contains(value),
                    Facet::Bottom => false,
                };
                member == l.positive
            })
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DataTerm {
    Datatype(String),
    Facets { datatype: String, cnf: FacetCnf },
    /// Data range `{e1, ..., en}`.
    Enum(Vec<Constant>),
    Not(Box<DataTerm>),
    And(Box<DataTerm>, Box<DataTerm>),
    Or(Box<DataTerm>, Box<DataTerm>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Statement {
    // RBox
    RoleEquiv(Role, Role),
    RoleSub(Role, Role),
    Chain(Vec<Role>, Role),
    Sym(Role),
    Asym(Role),
    Ref(Role),
    Irref(Role),
    Tra(Role),
    Fun(Role),
    RoleDisjoint(Role, Role),
    ConcreteEquiv(ConcreteRole, ConcreteRole),
    ConcreteSub(ConcreteRole, ConcreteRole),
    ConcreteDisjoint(ConcreteRole, ConcreteRole),
    ConcreteFun(ConcreteRole),
    // TBox
    ConceptEquiv(Concept, Concept),
    ConceptSub(Concept, Concept),
    /// `C1 <= forall R . C2`
    AllValues {
        sub: Concept,
        role: Role,
        filler: Concept,
    },
    /// `exists R . C1 <= C2`
    SomeValues {
        role: Role,
        filler: Concept,
        sup: Concept,
    },
    /// `atleast(n, R, C1) <= C2`
    AtLeast {
        n: u32,
        role: Role,
        filler: Concept,
        sup: Concept,
    },
    /// `C1 <= atmost(n, R, C2)`
    AtMost {
        sub: Concept,
        n: u32,
        role: Role,
        filler: Concept,
    },
    DataEquiv(DataTerm, DataTerm),
    DataSub(DataTerm, DataTerm),
    DataAllValues {
        sub: Concept,
        role: ConcreteRole,
        range: DataTerm,
    },
    DataSomeValues {
        role: ConcreteRole,
        range: DataTerm,
        sup: Concept,
    },
    DataAtLeast {
        n: u32,
        role: ConcreteRole,
        range: DataTerm,
        sup: Concept,
    },
    DataAtMost {
        sub: Concept,
        n: u32,
        role: ConcreteRole,
        range: DataTerm,
    },
    // ABox
    ConceptAssertion(String, Concept),
    RoleAssertion {
        subject: String,
        object: String,
        role: Role,
        positive: bool,
    },
    Same(String, String),
    Different(String, String),
    DataAssertion(Constant, DataTerm),
    ConcreteAssertion {
        subject: String,
        value: Constant,
        role: ConcreteRole,
        positive: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Part {
    RBox,
    TBox,
    ABox,
}

impl Statement {
    pub fn part(&self) -> Part {
        use Statement::*;
        match self {
            RoleEquiv(..) | RoleSub(..) | Chain(..) | Sym(_) | Asym(_) | Ref(_) | Irref(_)
            | Tra(_) | Fun(_) | RoleDisjoint(..) | ConcreteEquiv(..) | ConcreteSub(..)
            | ConcreteDisjoint(..) | ConcreteFun(_) => Part::RBox,
            ConceptEquiv(..) | ConceptSub(..) | AllValues { .. } | SomeValues { .. }
            | AtLeast { .. } | AtMost { .. } | DataEquiv(..) | DataSub(..)
            | DataAllValues { .. } | DataSomeValues { .. } | DataAtLeast { .. }
            | DataAtMost { .. } => Part::TBox,
            ConceptAssertion(..) | RoleAssertion { .. } | Same(..) | Different(..)
            | DataAssertion(..) | ConcreteAssertion { .. } => Part::ABox,
        }
    }
}

/// Names declared without being used by any statement.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Declarations {
    pub concepts: BTreeSet<String>,
    pub roles: BTreeSet<String>,
    pub concrete_roles: BTreeSet<String>,
    pub individuals: BTreeSet<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct KnowledgeBase {
    pub rbox: Vec<Statement>,
    pub tbox: Vec<Statement>,
    pub abox: Vec<Statement>,
    pub dmap: DatatypeMap,
    pub declarations: Declarations,
}

impl KnowledgeBase {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, s: Statement) {
        match s.part() {
            Part::RBox => self.rbox.push(s),
            Part::TBox => self.tbox.push(s),
            Part::ABox => self.abox.push(s),
        }
    }

    pub fn with(mut self, s: Statement) -> Self {
        self.add(s);
        self
    }

    /// ABox, then TBox, then RBox.
    pub fn statements(&self) -> impl Iterator<Item = &Statement> {
        self.abox.iter().chain(self.tbox.iter()).chain(self.rbox.iter())
    }

    pub fn len(&self) -> usize {
        self.rbox.len() + self.tbox.len() + self.abox.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Individual names in order of first occurrence (ABox, TBox, RBox),
    /// then declared-only individuals.
    pub fn individuals_in_order(&self) -> Vec<String> {
        let mut names = Names::default();
        for s in self.statements() {
            names.statement(s);
        }
        let mut out = names.individuals_ordered;
        for a in &self.declarations.individuals {
            if !out.contains(a) {
                out.push(a.clone());
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Diagnostic {
    pub severity: Severity,
    pub message: String,
}

impl Diagnostic {
    fn error(message: impl Into<String>) -> Self {
        Diagnostic {
            severity: Severity::Error,
            message: message.into(),
        }
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sev = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{sev}: {}", self.message)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Signature {
    pub concepts: BTreeSet<String>,
    /// Always contains `U`.
    pub abstract_roles: BTreeSet<String>,
    pub concrete_roles: BTreeSet<String>,
    pub individuals: BTreeSet<String>,
    pub datatypes: BTreeSet<String>,
    pub facets: BTreeMap<String, BTreeSet<String>>,
    pub constants: BTreeMap<String, BTreeSet<String>>,
    /// Facet expressions other than single facets, `top(d)` and `bot(d)`.
    pub facet_exprs: BTreeMap<String, BTreeSet<FacetCnf>>,
    /// Declared extension of every facet in `facets`.
    pub facet_extensions: BTreeMap<String, BTreeSet<String>>,
}

/// Name collector shared by signature extraction and validation.
#[derive(Debug, Default)]
struct Names {
    concepts: BTreeSet<String>,
    roles: BTreeSet<String>,
    concrete_roles: BTreeSet<String>,
    individuals: BTreeSet<String>,
    individuals_ordered: Vec<String>,
    datatypes: BTreeSet<String>,
    facets: BTreeSet<(String, String)>,
    constants: BTreeSet<Constant>,
    facet_exprs: BTreeSet<(String, FacetCnf)>,
    universal_used: bool,
    problems: Vec<String>,
}

impl Names {
    fn individual(&mut self, a: &str) {
        if self.individuals.insert(a.to_string()) {
            self.individuals_ordered.push(a.to_string());
        }
    }

    fn constant(&mut self, e: &Constant) {
        self.datatypes.insert(e.datatype.clone());
        self.constants.insert(e.clone());
    }

    fn concept(&mut self, c: &Concept) {
        match c {
            Concept::Name(n) => {
                self.concepts.insert(n.clone());
            }
            Concept::Top | Concept::Bottom => {}
            Concept::Not(a) => self.concept(a),
            Concept::And(a, b) | Concept::Or(a, b) => {
                self.concept(a);
                self.concept(b);
            }
            Concept::Nominals(names) => {
                if names.is_empty() {
                    self.problems.push("empty nominal set".into());
                }
                for a in names {
                    self.individual(a);
                }
            }
            Concept::SelfRestriction(r) => self.role(r),
            Concept::HasValue(r, a) => {
                self.role(r);
                self.individual(a);
            }
            Concept::HasData(p, e) => {
                self.concrete(p);
                self.constant(e);
            }
        }
    }

    fn role(&mut self, r: &Role) {
        match r {
            Role::Name(n) => {
                if n == UNIVERSAL_ROLE {
                    self.universal_used = true;
                } else {
                    self.roles.insert(n.clone());
                }
            }
            Role::Universal => self.universal_used = true,
            Role::Inverse(a) | Role::Not(a) => self.role(a),
            Role::And(a, b) | Role::Or(a, b) => {
                self.role(a);
                self.role(b);
            }
            Role::Domain(a, c) | Role::Range(a, c) => {
                self.role(a);
                self.concept(c);
            }
            Role::Restrict(a, c, d) => {
                self.role(a);
                self.concept(c);
                self.concept(d);
            }
            Role::Identity(c) => self.concept(c),
            Role::Product(c, d) => {
                self.concept(c);
                self.concept(d);
            }
        }
    }

    fn concrete(&mut self, p: &ConcreteRole) {
        match p {
            ConcreteRole::Name(n) => {
                self.concrete_roles.insert(n.clone());
            }
            ConcreteRole::Not(a) => self.concrete(a),
            ConcreteRole::And(a, b) | ConcreteRole::Or(a, b) => {
                self.concrete(a);
                self.concrete(b);
            }
            ConcreteRole::Domain(a, c) => {
                self.concrete(a);
                self.concept(c);
            }
            ConcreteRole::Range(a, t) => {
                self.concrete(a);
                self.data(t);
            }
            ConcreteRole::Restrict(a, c, t) => {
                self.concrete(a);
                self.concept(c);
                self.data(t);
            }
        }
    }

    fn data(&mut self, t: &DataTerm) {
        match t {
            DataTerm::Datatype(d) => {
                self.datatypes.insert(d.clone());
            }
            DataTerm::Facets { datatype, cnf } => {
                self.datatypes.insert(datatype.clone());
                for f in cnf.facet_names() {
                    self.facets.insert((datatype.clone(), f));
                }
                if cnf.as_atom().is_none() {
                    self.facet_exprs.insert((datatype.clone(), cnf.clone()));
                }
                if cnf.clauses().is_empty() || cnf.clauses().iter().any(|c| c.is_empty()) {
                    self.problems.push("empty facet expression".into());
                }
            }
            DataTerm::Enum(es) => {
                if es.is_empty() {
                    self.problems.push("empty data range".into());
                }
                for e in es {
                    self.constant(e);
                }
            }
            DataTerm::Not(a) => self.data(a),
            DataTerm::And(a, b) | DataTerm::Or(a, b) => {
                self.data(a);
                self.data(b);
            }
        }
    }

    fn cardinality(&mut self, n: u32) {
        if n == 0 {
            self.problems.push("cardinality must be ≥ 1".into());
        }
    }

    fn statement(&mut self, s: &Statement) {
        use Statement::*;
        match s {
            RoleEquiv(a, b) | RoleSub(a, b) | RoleDisjoint(a, b) => {
                self.role(a);
                self.role(b);
            }
            Chain(lhs, rhs) => {
                if lhs.is_empty() {
                    self.problems.push("role chain needs at least one role".into());
                }
                for r in lhs {
                    if matches!(r, Role::Universal)
                        || matches!(r, Role::Name(n) if n == UNIVERSAL_ROLE)
                    {
                        self.problems
                            .push("universal role U on the left of a role chain".into());
                    }
                    self.role(r);
                }
                self.role(rhs);
            }
            Sym(r) | Asym(r) | Ref(r) | Irref(r) | Tra(r) | Fun(r) => self.role(r),
            ConcreteEquiv(a, b) | ConcreteSub(a, b) | ConcreteDisjoint(a, b) => {
                self.concrete(a);
                self.concrete(b);
            }
            ConcreteFun(p) => self.concrete(p),
            ConceptEquiv(a, b) | ConceptSub(a, b) => {
                self.concept(a);
                self.concept(b);
            }
            AllValues { sub, role, filler } => {
                self.concept(sub);
                self.role(role);
                self.concept(filler);
            }
            SomeValues { role, filler, sup } => {
                self.role(role);
                self.concept(filler);
                self.concept(sup);
            }
            AtLeast {
                n,
                role,
                filler,
                sup,
            } => {
                self.cardinality(*n);
                self.role(role);
                self.concept(filler);
                self.concept(sup);
            }
            AtMost {
                sub,
                n,
                role,
                filler,
            } => {
                self.cardinality(*n);
                self.concept(sub);
                self.role(role);
                self.concept(filler);
            }
            DataEquiv(a, b) | DataSub(a, b) => {
                self.data(a);
                self.data(b);
            }
            DataAllValues { sub, role, range } => {
                self.concept(sub);
                self.concrete(role);
                self.data(range);
            }
            DataSomeValues { role, range, sup } => {
                self.concrete(role);
                self.data(range);
                self.concept(sup);
            }
            DataAtLeast {
                n,
                role,
                range,
                sup,
            } => {
                self.cardinality(*n);
                self.concrete(role);
                self.data(range);
                self.concept(sup);
            }
            DataAtMost {
                sub,
                n,
                role,
                range,
            } => {
                self.cardinality(*n);
                self.concept(sub);
                self.concrete(role);
                self.data(range);
            }
            ConceptAssertion(a, c) => {
                self.individual(a);
                self.concept(c);
            }
            RoleAssertion {
                subject,
                object,
                role,
                ..
            } => {
                self.individual(subject);
                self.individual(object);
                self.role(role);
            }
            Same(a, b) | Different(a, b) => {
                self.individual(a);
                self.individual(b);
            }
            DataAssertion(e, t) => {
                self.constant(e);
                self.data(t);
            }
            ConcreteAssertion {
                subject,
                value,
                role,
                ..
            } => {
                self.individual(subject);
                self.constant(value);
                self.concrete(role);
            }
        }
    }
}

fn collect(kb: &KnowledgeBase) -> Names {
    let mut names = Names::default();
    for s in kb.statements() {
        names.statement(s);
    }
    names
}

/// Concept, role, individual, datatype, facet and constant names of a
/// knowledge base, including declared-only names.
pub fn signature(kb: &KnowledgeBase) -> Signature {
    let names = collect(kb);
    let mut sig = Signature {
        concepts: names.concepts,
        abstract_roles: names.roles,
        concrete_roles: names.concrete_roles,
        individuals: names.individuals,
        datatypes: names.datatypes,
        ..Default::default()
    };
    sig.concepts.extend(kb.declarations.concepts.iter().cloned());
    sig.abstract_roles
        .extend(kb.declarations.roles.iter().cloned());
    sig.abstract_roles.insert(UNIVERSAL_ROLE.to_string());
    sig.concrete_roles
        .extend(kb.declarations.concrete_roles.iter().cloned());
    sig.individuals
        .extend(kb.declarations.individuals.iter().cloned());
    for d in &sig.datatypes {
        sig.facets.insert(d.clone(), BTreeSet::new());
        sig.constants.insert(d.clone(), kb.dmap.constants_of(d));
        sig.facet_exprs.insert(d.clone(), BTreeSet::new());
    }
    for (d, f) in names.facets {
        sig.facet_extensions
            .insert(f.clone(), kb.dmap.facet_extension(&f));
        sig.facets.entry(d).or_default().insert(f);
    }
    for (d, e) in names.facet_exprs {
        sig.facet_exprs.entry(d).or_default().insert(e);
    }
    sig
}

/// Well-formedness diagnostics; empty iff the knowledge base is legal.
pub fn validate(kb: &KnowledgeBase) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    let dmap = &kb.dmap;

    let mut owner: BTreeMap<&str, &str> = BTreeMap::new();
    for (d, cs) in &dmap.constants {
        for c in cs {
            if let Some(prev) = owner.insert(c, d) {
                if prev != d {
                    out.push(Diagnostic::error(format!(
                        "constant sets not disjoint: \"{c}\" belongs to {prev} and {d}"
                    )));
                }
            }
        }
    }
    for d in &dmap.datatypes {
        if dmap.constants_of(d).is_empty() {
            out.push(Diagnostic::error(format!("datatype {d} has no constants")));
        }
    }
    let mut facet_owner: BTreeMap<&str, &str> = BTreeMap::new();
    for (d, fs) in &dmap.facets {
        let consts = dmap.constants_of(d);
        for f in fs {
            if let Some(prev) = facet_owner.insert(f, d) {
                out.push(Diagnostic::error(format!(
                    "facet {f} declared for both {prev} and {d}"
                )));
            }
            for v in dmap.facet_extension(f) {
                if !consts.contains(&v) {
                    out.push(Diagnostic::error(format!(
                        "facet {f} contains \"{v}\" which is not a constant of {d}"
                    )));
                }
            }
        }
    }

    let names = collect(kb);
    for p in &names.problems {
        out.push(Diagnostic::error(p.clone()));
    }
    for d in &names.datatypes {
        if !dmap.datatypes.contains(d) {
            out.push(Diagnostic::error(format!("undeclared datatype {d}")));
        }
    }
    for e in &names.constants {
        if !dmap.constants_of(&e.datatype).contains(&e.value) {
            out.push(Diagnostic::error(format!("undeclared constant {e}")));
        }
    }
    for (d, f) in &names.facets {
        if dmap.datatype_of_facet(f) != Some(d.as_str()) {
            out.push(Diagnostic::error(format!("facet {f} is not a facet of {d}")));
        }
    }

    let mut kinds: BTreeMap<String, BTreeSet<&str>> = BTreeMap::new();
    let mut mark = |set: &BTreeSet<String>, kind: &'static str| {
        for n in set {
            kinds.entry(n.clone()).or_default().insert(kind);
        }
    };
    mark(&names.concepts, "concept");
    mark(&names.roles, "abstract role");
    mark(&names.concrete_roles, "concrete role");
    mark(&names.individuals, "individual");
    mark(&dmap.datatypes, "datatype");
    mark(&kb.declarations.concepts, "concept");
    mark(&kb.declarations.roles, "abstract role");
    mark(&kb.declarations.concrete_roles, "concrete role");
    mark(&kb.declarations.individuals, "individual");
    let facet_names: BTreeSet<String> = dmap.facets.values().flatten().cloned().collect();
    mark(&facet_names, "facet");
    for (n, ks) in kinds {
        if ks.len() > 1 {
            let list: Vec<&str> = ks.into_iter().collect();
            out.push(Diagnostic::error(format!(
                "name {n} used as {}",
                list.join(" and ")
            )));
        }
    }
    if names.concepts.contains(UNIVERSAL_ROLE) || names.individuals.contains(UNIVERSAL_ROLE) {
        out.push(Diagnostic::error("U is reserved for the universal role"));
    }
    out.sort();
    out.dedup();
    out
}
