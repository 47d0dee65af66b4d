//! Translation of knowledge bases and queries into the set-theoretic
//! sublanguage.

pub mod naming;
pub mod theta;
pub mod xi;

use std::collections::{BTreeMap, BTreeSet, HashSet};

use thiserror::Error;

use crate::kb::{
    signature, Concept, ConcreteRole, Constant, DataTerm, KnowledgeBase, Role, Signature,
    Statement,
};
use crate::query::{DlSubstitution, Entity, HoAtom, HoQuery, Term};
use crate::setcalc::{
    Atom, Clause, Formula, Level, Literal, PurelyUniversal, Substitution, Tag, Var, VarPool,
};

pub use naming::NamingMap;
pub use theta::{theta, Axiom, Builtins, Emitted, Fresh};
pub use xi::{xi_constraints, zeta, Section};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TranslateError {
    #[error("term {0} does not occur in the translated knowledge base")]
    UndefinedTerm(String),
    #[error("unknown entity {0}")]
    UnknownEntity(String),
    #[error("query variable {0} does not occur in the query")]
    UnknownQueryVar(String),
}

/// φ_KB together with its naming map and the flat axioms it came from.
#[derive(Debug, Clone)]
pub struct Translation {
    pub naming: NamingMap,
    /// Labelled groups after quantifier splitting; their concatenation is `phi`.
    pub sections: Vec<Section>,
    pub phi: Formula,
    pub axioms: Vec<Axiom>,
}

impl Translation {
    pub fn pool(&self) -> &VarPool {
        &self.naming.pool
    }

    /// One conjunct per line, each group preceded by a `#` label line.
    pub fn emit_4lqs(&self) -> String {
        let pool = &self.naming.pool;
        let mut out = String::new();
        for s in &self.sections {
            if s.is_empty() {
                continue;
            }
            out.push_str(&format!("# {}\n", s.label));
            for u in &s.universals {
                out.push_str(&pool.show(u));
                out.push('\n');
            }
            for l in &s.ground {
                out.push_str(&pool.show(l));
                out.push('\n');
            }
        }
        out
    }
}

/// Incremental translator: statements and query terms first, then
/// [`Translator::finish`] adds the signature constraints.
pub struct Translator {
    pub naming: NamingMap,
    builtins: Builtins,
    fresh: Fresh,
    sections: Vec<Section>,
    axioms: Vec<Axiom>,
    sig_kb: KnowledgeBase,
    individual_data: Option<Var>,
}

impl Translator {
    pub fn new(kb: &KnowledgeBase) -> Self {
        let mut naming = NamingMap::new();
        let builtins = Builtins::intern(&mut naming.pool);
        Translator {
            naming,
            builtins,
            fresh: Fresh::new(),
            sections: Vec::new(),
            axioms: Vec::new(),
            sig_kb: kb.clone(),
            individual_data: None,
        }
    }

    fn emit(&mut self, ax: Axiom) {
        let e = theta(&ax, self.builtins, &mut self.naming.pool, &mut self.fresh);
        let s = self.sections.last_mut().expect("a section is open");
        match e {
            Emitted::Universal(u) => s.universals.push(u),
            Emitted::Ground(ls) => s.ground.extend(ls),
        }
        self.axioms.push(ax);
    }

    fn open(&mut self, label: String) {
        self.sections.push(Section::new(label));
    }

    pub fn statement(&mut self, s: &Statement) {
        let n = self.sections.len() + 1;
        self.open(format!("statement {n}"));
        use Statement::*;
        match s {
            RoleEquiv(a, b) => {
                let x = self.role(a);
                self.role_into(b, Some(x));
            }
            RoleSub(a, b) => {
                let (x, y) = (self.role(a), self.role(b));
                self.emit(Axiom::RelSub(x, y));
            }
            Chain(rs, r) => {
                let xs = rs.iter().map(|r| self.role(r)).collect();
                let y = self.role(r);
                self.emit(Axiom::Chain(xs, y));
            }
            Sym(r) => {
                let x = self.role(r);
                self.emit(Axiom::Sym(x));
            }
            Asym(r) => {
                let x = self.role(r);
                self.emit(Axiom::Asym(x));
            }
            Ref(r) => {
                let x = self.role(r);
                self.emit(Axiom::Ref(x));
            }
            Irref(r) => {
                let x = self.role(r);
                self.emit(Axiom::Irref(x));
            }
            Tra(r) => {
                let x = self.role(r);
                self.emit(Axiom::Tra(x));
            }
            Fun(r) => {
                let x = self.role(r);
                self.emit(Axiom::Fun(x));
            }
            RoleDisjoint(a, b) => {
                let (x, y) = (self.role(a), self.role(b));
                self.emit(Axiom::RelDisjoint(x, y));
            }
            ConcreteEquiv(a, b) => {
                let x = self.concrete(a);
                self.concrete_into(b, Some(x));
            }
            ConcreteSub(a, b) => {
                let (x, y) = (self.concrete(a), self.concrete(b));
                self.emit(Axiom::RelSub(x, y));
            }
            ConcreteDisjoint(a, b) => {
                let (x, y) = (self.concrete(a), self.concrete(b));
                self.emit(Axiom::RelDisjoint(x, y));
            }
            ConcreteFun(p) => {
                let x = self.concrete(p);
                self.emit(Axiom::Fun(x));
            }
            ConceptEquiv(a, b) => {
                let x = self.concept(a);
                self.concept_into(b, Some(x));
            }
            ConceptSub(a, b) => {
                let (x, y) = (self.concept(a), self.concept(b));
                self.emit(Axiom::SetSub(x, y));
            }
            AllValues { sub, role, filler } => {
                let sub = self.concept(sub);
                let rel = self.role(role);
                let filler = self.concept(filler);
                self.emit(Axiom::AllValues { sub, rel, filler });
            }
            SomeValues { role, filler, sup } => {
                let rel = self.role(role);
                let filler = self.concept(filler);
                let sup = self.concept(sup);
                self.emit(Axiom::SomeValues { rel, filler, sup });
            }
            AtLeast {
                n,
                role,
                filler,
                sup,
            } => {
                let rel = self.role(role);
                let filler = self.concept(filler);
                let sup = self.concept(sup);
                self.emit(Axiom::AtLeast {
                    n: *n,
                    rel,
                    filler,
                    sup,
                });
            }
            AtMost {
                sub,
                n,
                role,
                filler,
            } => {
                let sub = self.concept(sub);
                let rel = self.role(role);
                let filler = self.concept(filler);
                self.emit(Axiom::AtMost {
                    sub,
                    n: *n,
                    rel,
                    filler,
                });
            }
            DataEquiv(a, b) => {
                let x = self.data(a);
                self.data_into(b, Some(x));
            }
            DataSub(a, b) => {
                let (x, y) = (self.data(a), self.data(b));
                self.emit(Axiom::SetSub(x, y));
            }
            DataAllValues { sub, role, range } => {
                let sub = self.concept(sub);
                let rel = self.concrete(role);
                let filler = self.data(range);
                self.emit(Axiom::AllValues { sub, rel, filler });
            }
            DataSomeValues { role, range, sup } => {
                let rel = self.concrete(role);
                let filler = self.data(range);
                let sup = self.concept(sup);
                self.emit(Axiom::SomeValues { rel, filler, sup });
            }
            DataAtLeast {
                n,
                role,
                range,
                sup,
            } => {
                let rel = self.concrete(role);
                let filler = self.data(range);
                let sup = self.concept(sup);
                self.emit(Axiom::AtLeast {
                    n: *n,
                    rel,
                    filler,
                    sup,
                });
            }
            DataAtMost {
                sub,
                n,
                role,
                range,
            } => {
                let sub = self.concept(sub);
                let rel = self.concrete(role);
                let filler = self.data(range);
                self.emit(Axiom::AtMost {
                    sub,
                    n: *n,
                    rel,
                    filler,
                });
            }
            ConceptAssertion(a, c) => {
                let elem = self.naming.individual(a);
                let set = self.concept(c);
                self.emit(Axiom::Member {
                    elem,
                    set,
                    positive: true,
                });
            }
            RoleAssertion {
                subject,
                object,
                role,
                positive,
            } => {
                let left = self.naming.individual(subject);
                let right = self.naming.individual(object);
                let rel = self.role(role);
                self.emit(Axiom::Pair {
                    left,
                    right,
                    rel,
                    positive: *positive,
                });
            }
            Same(a, b) | Different(a, b) => {
                let left = self.naming.individual(a);
                let right = self.naming.individual(b);
                self.emit(Axiom::Equal {
                    left,
                    right,
                    positive: matches!(s, Same(..)),
                });
            }
            DataAssertion(e, t) => {
                let elem = self.naming.constant(e);
                let set = self.data(t);
                self.emit(Axiom::Member {
                    elem,
                    set,
                    positive: true,
                });
            }
            ConcreteAssertion {
                subject,
                value,
                role,
                positive,
            } => {
                let left = self.naming.individual(subject);
                let right = self.naming.constant(value);
                let rel = self.concrete(role);
                self.emit(Axiom::Pair {
                    left,
                    right,
                    rel,
                    positive: *positive,
                });
            }
        }
    }

    /// Defines the complex terms of a query and adds its names to the
    /// signature.
    pub fn query(&mut self, q: &HoQuery) {
        self.open("query terms".to_string());
        for l in q.literals() {
            let mut terms: Vec<&Term> = Vec::new();
            match &l.atom {
                HoAtom::Concept(c, w) => {
                    self.concept(c);
                    self.sig_kb.add(Statement::ConceptSub(c.clone(), Concept::Top));
                    terms.push(w);
                }
                HoAtom::Role(r, w1, w2) => {
                    self.role(r);
                    self.sig_kb.add(Statement::RoleSub(r.clone(), Role::Universal));
                    terms.extend([w1, w2]);
                }
                HoAtom::Concrete(p, w, u) => {
                    self.concrete(p);
                    self.sig_kb.add(Statement::ConcreteSub(p.clone(), p.clone()));
                    terms.extend([w, u]);
                }
                HoAtom::ConceptVar(_, w) => terms.push(w),
                HoAtom::RoleVar(_, w1, w2)
                | HoAtom::ConcreteVar(_, w1, w2)
                | HoAtom::SameIndividual(w1, w2)
                | HoAtom::SameValue(w1, w2) => terms.extend([w1, w2]),
            }
            for t in terms {
                match t {
                    Term::Individual(a) => {
                        self.naming.individual(a);
                        self.sig_kb.declarations.individuals.insert(a.clone());
                    }
                    Term::Constant(e) => {
                        self.naming.constant(e);
                        self.sig_kb.add(Statement::DataAssertion(
                            e.clone(),
                            DataTerm::Datatype(e.datatype.clone()),
                        ));
                    }
                    Term::Var(_) => {}
                }
            }
        }
    }

    pub fn signature(&self) -> Signature {
        signature(&self.sig_kb)
    }

    pub fn finish(mut self) -> Translation {
        let sig = self.signature();
        for a in &sig.individuals {
            self.naming.individual(a);
        }
        let xis = xi_constraints(&sig, &mut self.naming, &mut self.fresh);
        let n_statements = self.sections.len();
        self.sections.extend(xis);
        let sections = split_sections(self.sections, &mut self.naming.pool);
        // ξ conjuncts first: they fix sorts before statement clauses branch
        let mut phi = Formula::default();
        for s in sections[n_statements..].iter().chain(&sections[..n_statements]) {
            phi.universals.extend(s.universals.iter().cloned());
            phi.ground.extend(s.ground.iter().cloned());
        }
        Translation {
            naming: self.naming,
            sections,
            phi,
            axioms: self.axioms,
        }
    }

    pub fn concept(&mut self, c: &Concept) -> Var {
        self.concept_into(c, None)
    }

    fn define(&mut self, target: Option<Var>, existing: Var, equiv: fn(Var, Var) -> Axiom) -> Var {
        match target {
            Some(t) if t != existing => {
                self.emit(equiv(t, existing));
                t
            }
            _ => existing,
        }
    }

    fn concept_into(&mut self, c: &Concept, target: Option<Var>) -> Var {
        let existing = match c {
            Concept::Name(n) => Some(self.naming.concept_name(n)),
            Concept::Bottom => Some(self.naming.bottom()),
            Concept::Top => {
                let top = self.naming.top();
                if let Some(t) = target {
                    self.emit(Axiom::SetTop(t));
                    return t;
                }
                Some(top)
            }
            _ => self.naming.concepts.get(c).copied(),
        };
        if let Some(v) = existing {
            return self.define(target, v, Axiom::SetEquiv);
        }
        if let Concept::Nominals(names) = c {
            let set: BTreeSet<String> = names.iter().cloned().collect();
            if set.len() > 1 {
                let names: Vec<String> = set.into_iter().collect();
                let v = self.naming.pool.intern(Level::One, Tag::Nominals(names.clone()));
                for a in &names {
                    self.naming.individual(a);
                }
                self.naming.nominal_sets.insert(v, names);
                self.naming.concepts.insert(c.clone(), v);
                return self.define(target, v, Axiom::SetEquiv);
            }
        }
        let v = target.unwrap_or_else(|| self.naming.aux(Level::One));
        self.naming.concepts.insert(c.clone(), v);
        match c {
            Concept::Name(_) | Concept::Top | Concept::Bottom => unreachable!(),
            Concept::Not(a) => {
                let x = self.concept(a);
                let n = self.naming.aux(Level::One);
                self.emit(Axiom::SetNot(n, x));
                let top = self.naming.top();
                self.emit(Axiom::SetAnd(v, n, top));
            }
            Concept::And(a, b) => {
                let (x, y) = (self.concept(a), self.concept(b));
                self.emit(Axiom::SetAnd(v, x, y));
            }
            Concept::Or(a, b) => {
                let (x, y) = (self.concept(a), self.concept(b));
                self.emit(Axiom::SetOr(v, x, y));
            }
            Concept::Nominals(names) => {
                let a = self.naming.individual(&names[0]);
                self.emit(Axiom::SetOne(v, a));
            }
            Concept::SelfRestriction(r) => {
                let rel = self.role(r);
                self.emit(Axiom::SelfRestriction { set: v, rel });
            }
            Concept::HasValue(r, a) => {
                let rel = self.role(r);
                let value = self.naming.individual(a);
                self.emit(Axiom::HasValue { set: v, rel, value });
            }
            Concept::HasData(p, e) => {
                let rel = self.concrete(p);
                let value = self.naming.constant(e);
                self.emit(Axiom::HasValue { set: v, rel, value });
            }
        }
        v
    }

    pub fn role(&mut self, r: &Role) -> Var {
        self.role_into(r, None)
    }

    fn role_into(&mut self, r: &Role, target: Option<Var>) -> Var {
        let existing = match r {
            Role::Name(n) => Some(self.naming.role_name(n)),
            Role::Universal => Some(self.naming.universal()),
            _ => self.naming.roles.get(r).copied(),
        };
        if let Some(v) = existing {
            if v == self.builtins.universal {
                return self.define(target, v, Axiom::RelUniversal);
            }
            return self.define(target, v, Axiom::RelEquiv);
        }
        let v = target.unwrap_or_else(|| self.naming.aux(Level::Three));
        self.naming.roles.insert(r.clone(), v);
        match r {
            Role::Name(_) | Role::Universal => unreachable!(),
            Role::Inverse(a) => {
                let x = self.role(a);
                self.emit(Axiom::RelInverse(v, x));
            }
            Role::Not(a) => {
                let x = self.role(a);
                let n = self.naming.aux(Level::Three);
                self.emit(Axiom::RelNot(n, x));
                let u = self.naming.universal();
                self.emit(Axiom::RelAnd(v, n, u));
            }
            Role::And(a, b) => {
                let (x, y) = (self.role(a), self.role(b));
                self.emit(Axiom::RelAnd(v, x, y));
            }
            Role::Or(a, b) => {
                let (x, y) = (self.role(a), self.role(b));
                self.emit(Axiom::RelOr(v, x, y));
            }
            Role::Domain(a, c) => {
                let base = self.role(a);
                let set = self.concept(c);
                self.emit(Axiom::RelDomain { rel: v, base, set });
            }
            Role::Range(a, c) => {
                let base = self.role(a);
                let set = self.concept(c);
                self.emit(Axiom::RelRange { rel: v, base, set });
            }
            Role::Restrict(a, c, d) => {
                let base = self.role(a);
                let left = self.concept(c);
                let right = self.concept(d);
                self.emit(Axiom::RelRestrict {
                    rel: v,
                    base,
                    left,
                    right,
                });
            }
            Role::Identity(c) => {
                let set = self.concept(c);
                self.emit(Axiom::Identity { rel: v, set });
            }
            Role::Product(c, d) => {
                let left = self.concept(c);
                let right = self.concept(d);
                self.emit(Axiom::Product { rel: v, left, right });
            }
        }
        v
    }

    pub fn concrete(&mut self, p: &ConcreteRole) -> Var {
        self.concrete_into(p, None)
    }

    /// `X_I × X_D`, the universe of concrete roles.
    fn individual_data(&mut self) -> Var {
        if let Some(v) = self.individual_data {
            return v;
        }
        let v = self.naming.aux(Level::Three);
        self.individual_data = Some(v);
        let left = self.naming.individuals();
        let right = self.naming.data();
        self.emit(Axiom::Product { rel: v, left, right });
        v
    }

    fn concrete_into(&mut self, p: &ConcreteRole, target: Option<Var>) -> Var {
        let existing = match p {
            ConcreteRole::Name(n) => Some(self.naming.concrete_name(n)),
            _ => self.naming.concrete.get(p).copied(),
        };
        if let Some(v) = existing {
            return self.define(target, v, Axiom::RelEquiv);
        }
        let v = target.unwrap_or_else(|| self.naming.aux(Level::Three));
        self.naming.concrete.insert(p.clone(), v);
        match p {
            ConcreteRole::Name(_) => unreachable!(),
            ConcreteRole::Not(a) => {
                let x = self.concrete(a);
                let n = self.naming.aux(Level::Three);
                self.emit(Axiom::RelNot(n, x));
                let all = self.individual_data();
                self.emit(Axiom::RelAnd(v, n, all));
            }
            ConcreteRole::And(a, b) => {
                let (x, y) = (self.concrete(a), self.concrete(b));
                self.emit(Axiom::RelAnd(v, x, y));
            }
            ConcreteRole::Or(a, b) => {
                let (x, y) = (self.concrete(a), self.concrete(b));
                self.emit(Axiom::RelOr(v, x, y));
            }
            ConcreteRole::Domain(a, c) => {
                let base = self.concrete(a);
                let set = self.concept(c);
                self.emit(Axiom::RelDomain { rel: v, base, set });
            }
            ConcreteRole::Range(a, t) => {
                let base = self.concrete(a);
                let set = self.data(t);
                self.emit(Axiom::RelRange { rel: v, base, set });
            }
            ConcreteRole::Restrict(a, c, t) => {
                let base = self.concrete(a);
                let left = self.concept(c);
                let right = self.data(t);
                self.emit(Axiom::RelRestrict {
                    rel: v,
                    base,
                    left,
                    right,
                });
            }
        }
        v
    }

    pub fn data(&mut self, t: &DataTerm) -> Var {
        self.data_into(t, None)
    }

    fn data_into(&mut self, t: &DataTerm, target: Option<Var>) -> Var {
        let existing = match t {
            DataTerm::Datatype(d) => Some(self.naming.datatype(d)),
            DataTerm::Facets { datatype, cnf } => match cnf.as_atom() {
                Some(crate::kb::Facet::Named(f)) => Some(self.naming.facet(f)),
                Some(crate::kb::Facet::Top) => Some(self.naming.datatype_top(datatype)),
                Some(crate::kb::Facet::Bottom) => Some(self.naming.datatype_bottom(datatype)),
                None => self.naming.data.get(t).copied(),
            },
            _ => self.naming.data.get(t).copied(),
        };
        if let Some(v) = existing {
            return self.define(target, v, Axiom::SetEquiv);
        }
        match t {
            DataTerm::Facets { datatype, cnf } => {
                let psi = self.naming.pool.intern(
                    Level::One,
                    Tag::FacetExpr(format!("{datatype}: {}", cnf.render(datatype))),
                );
                self.naming
                    .facet_exprs
                    .insert(psi, (datatype.clone(), cnf.clone()));
                if !cnf.has_negation() {
                    self.naming.data.insert(t.clone(), psi);
                    return self.define(target, psi, Axiom::SetEquiv);
                }
                let v = target.unwrap_or_else(|| self.naming.aux(Level::One));
                self.naming.data.insert(t.clone(), v);
                let d = self.naming.datatype(datatype);
                self.emit(Axiom::SetAnd(v, psi, d));
                return v;
            }
            DataTerm::Enum(es) => {
                let set: BTreeSet<Constant> = es.iter().cloned().collect();
                if set.len() > 1 {
                    let es: Vec<Constant> = set.into_iter().collect();
                    let v = self.naming.pool.intern(
                        Level::One,
                        Tag::DataRange(es.iter().map(|e| e.value.clone()).collect()),
                    );
                    for e in &es {
                        self.naming.constant(e);
                    }
                    self.naming.data_ranges.insert(v, es);
                    self.naming.data.insert(t.clone(), v);
                    return self.define(target, v, Axiom::SetEquiv);
                }
            }
            _ => {}
        }
        let v = target.unwrap_or_else(|| self.naming.aux(Level::One));
        self.naming.data.insert(t.clone(), v);
        match t {
            DataTerm::Datatype(_) | DataTerm::Facets { .. } => unreachable!(),
            DataTerm::Enum(es) => {
                let e = self.naming.constant(&es[0]);
                self.emit(Axiom::SetOne(v, e));
            }
            DataTerm::Not(a) => {
                let x = self.data(a);
                let n = self.naming.aux(Level::One);
                self.emit(Axiom::SetNot(n, x));
                let all = self.naming.data();
                self.emit(Axiom::SetAnd(v, n, all));
            }
            DataTerm::And(a, b) => {
                let (x, y) = (self.data(a), self.data(b));
                self.emit(Axiom::SetAnd(v, x, y));
            }
            DataTerm::Or(a, b) => {
                let (x, y) = (self.data(a), self.data(b));
                self.emit(Axiom::SetOr(v, x, y));
            }
        }
        v
    }
}

/// Alpha-invariant key of a single-clause universal.
fn alpha_key(bound: &[Var], c: &Clause) -> Vec<(bool, u8, [i64; 3])> {
    let code = |v: Var| match bound.iter().position(|b| *b == v) {
        Some(i) => -(i as i64) - 1,
        None => v.index() as i64,
    };
    let mut key: Vec<(bool, u8, [i64; 3])> = c
        .literals()
        .iter()
        .map(|l| match l.atom {
            Atom::Eq(x, y) => {
                let (a, b) = (code(x), code(y));
                (l.positive, 0, [a.min(b), a.max(b), 0])
            }
            Atom::Mem1(x, s) => (l.positive, 1, [code(x), code(s), 0]),
            Atom::Mem3(x, y, r) => (l.positive, 3, [code(x), code(y), code(r)]),
        })
        .collect();
    key.sort();
    key.dedup();
    key
}

/// Splits every universal into single-clause universals quantifying only
/// the variables their clause uses, renames quantified variables apart
/// and drops duplicate conjuncts.
fn split_sections(sections: Vec<Section>, pool: &mut VarPool) -> Vec<Section> {
    let mut used: HashSet<Var> = HashSet::new();
    let mut seen_universal: HashSet<Vec<(bool, u8, [i64; 3])>> = HashSet::new();
    let mut seen_ground: HashSet<Literal> = HashSet::new();
    let mut fresh = Fresh::after(pool);
    let mut out = Vec::new();
    for s in sections {
        let mut t = Section::new(s.label.clone());
        for u in &s.universals {
            for c in u.matrix() {
                let vars = c.vars();
                let bound: Vec<Var> = u
                    .bound()
                    .iter()
                    .copied()
                    .filter(|b| vars.contains(b))
                    .collect();
                if bound.is_empty() {
                    // A clause without quantified variables is ground.
                    for l in c.literals() {
                        if c.len() == 1 && seen_ground.insert(*l) {
                            t.ground.push(*l);
                        }
                    }
                    if c.len() > 1 {
                        let key = alpha_key(&[], c);
                        if seen_universal.insert(key) {
                            t.universals.push(
                                PurelyUniversal::new(vec![], vec![c.clone()])
                                    .expect("no quantifiers"),
                            );
                        }
                    }
                    continue;
                }
                let key = alpha_key(&bound, c);
                if !seen_universal.insert(key) {
                    continue;
                }
                let mut rename: BTreeMap<Var, Var> = BTreeMap::new();
                let mut new_bound = Vec::new();
                for b in bound {
                    let nb = if used.contains(&b) {
                        fresh.z(pool)
                    } else {
                        b
                    };
                    used.insert(nb);
                    rename.insert(b, nb);
                    new_bound.push(nb);
                }
                let c2 = c.map(|v| rename.get(&v).copied().unwrap_or(v));
                t.universals
                    .push(PurelyUniversal::new(new_bound, vec![c2]).expect("renamed apart"));
            }
        }
        for l in s.ground {
            if seen_ground.insert(l) {
                t.ground.push(l);
            }
        }
        out.push(t);
    }
    out
}

/// φ_KB for a knowledge base.
pub fn build_phi_kb(kb: &KnowledgeBase) -> Translation {
    let mut tr = Translator::new(kb);
    for s in kb.statements() {
        tr.statement(s);
    }
    tr.finish()
}

/// φ_KB with the query's names and complex terms included, and ψ_Q.
pub fn build_for_query(
    kb: &KnowledgeBase,
    q: &HoQuery,
) -> Result<(Translation, Vec<Literal>), TranslateError> {
    let mut tr = Translator::new(kb);
    for s in kb.statements() {
        tr.statement(s);
    }
    tr.query(q);
    let mut t = tr.finish();
    let psi = theta_query(q, &mut t.naming)?;
    Ok((t, psi))
}

fn term_var(nm: &mut NamingMap, t: &Term) -> Var {
    match t {
        Term::Var(v) => nm.query_var(v, Level::Zero),
        Term::Individual(a) => nm.individual(a),
        Term::Constant(e) => nm.constant(e),
    }
}

/// ψ_Q: one literal per query literal, in order. Query variables become
/// `Tag::Query` variables of their level.
pub fn theta_query(q: &HoQuery, nm: &mut NamingMap) -> Result<Vec<Literal>, TranslateError> {
    let mut out = Vec::new();
    for l in q.literals() {
        let atom = match &l.atom {
            HoAtom::Concept(c, w) => {
                let x = nm
                    .lookup_concept(c)
                    .ok_or_else(|| TranslateError::UndefinedTerm(format!("{c:?}")))?;
                Atom::mem1(term_var(nm, w), x)
            }
            HoAtom::Role(r, w1, w2) => {
                let x = nm
                    .lookup_role(r)
                    .ok_or_else(|| TranslateError::UndefinedTerm(format!("{r:?}")))?;
                Atom::mem3(term_var(nm, w1), term_var(nm, w2), x)
            }
            HoAtom::Concrete(p, w1, w2) => {
                let x = nm
                    .lookup_concrete(p)
                    .ok_or_else(|| TranslateError::UndefinedTerm(format!("{p:?}")))?;
                Atom::mem3(term_var(nm, w1), term_var(nm, w2), x)
            }
            HoAtom::ConceptVar(c, w) => {
                let x = nm.query_var(c, Level::One);
                Atom::mem1(term_var(nm, w), x)
            }
            HoAtom::RoleVar(r, w1, w2) | HoAtom::ConcreteVar(r, w1, w2) => {
                let x = nm.query_var(r, Level::Three);
                Atom::mem3(term_var(nm, w1), term_var(nm, w2), x)
            }
            HoAtom::SameIndividual(w1, w2) | HoAtom::SameValue(w1, w2) => {
                Atom::eq(term_var(nm, w1), term_var(nm, w2))
            }
        };
        out.push(Literal {
            atom,
            positive: l.positive,
        });
    }
    Ok(out)
}

/// θ(σ): maps each query variable's set variable to its binding's.
pub fn theta_substitution(
    s: &DlSubstitution,
    nm: &mut NamingMap,
) -> Result<Substitution, TranslateError> {
    let mut out = Substitution::new();
    for (name, e) in &s.0 {
        let level = match e {
            Entity::Individual(_) | Entity::Constant(_) => Level::Zero,
            Entity::Concept(_) => Level::One,
            Entity::Role(_) | Entity::ConcreteRole(_) => Level::Three,
            Entity::Internal { .. } => return Err(TranslateError::UnknownEntity(e.to_string())),
        };
        let to = nm
            .entity_var(e)
            .ok_or_else(|| TranslateError::UnknownEntity(e.to_string()))?;
        let from = nm.query_var(name, level);
        out.insert(from, to, &nm.pool)
            .expect("levels agree by construction");
    }
    Ok(out)
}
