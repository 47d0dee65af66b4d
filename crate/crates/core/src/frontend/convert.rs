//! Sort inference over raw statements and conversion to the KB model.

use std::collections::{BTreeMap, BTreeSet};

use crate::kb::{
    signature, Concept, ConcreteRole, DataTerm, FacetCnf, FacetLiteral, KnowledgeBase, Role,
    Statement,
};

use super::syntax::{
    Call, DeclKind, Elem, Expr, ExprKind, FacetExpr, Fill, Kind, PropOp, Raw, RawStatement,
};
use super::ParseError;

pub(crate) type Kinds = BTreeMap<String, Kind>;

/// Kinds of every name in a KB's signature.
pub(crate) fn kinds_of(kb: &KnowledgeBase) -> Kinds {
    let sig = signature(kb);
    let mut k = Kinds::new();
    for (set, kind) in [
        (&sig.concepts, Kind::Concept),
        (&sig.abstract_roles, Kind::Abstract),
        (&sig.concrete_roles, Kind::Concrete),
        (&sig.datatypes, Kind::Data),
        (&kb.declarations.concepts, Kind::Concept),
        (&kb.declarations.roles, Kind::Abstract),
        (&kb.declarations.concrete_roles, Kind::Concrete),
    ] {
        for n in set {
            k.entry(n.clone()).or_insert(kind);
        }
    }
    k
}

/// Best guess of an expression's kind from its shape and known names.
pub(crate) fn classify(e: &Expr, kinds: &Kinds) -> Option<Kind> {
    match &e.kind {
        ExprKind::Name(n) if n == "U" => Some(Kind::Abstract),
        ExprKind::Name(n) => kinds.get(n).copied(),
        ExprKind::Thing
        | ExprKind::Nothing
        | ExprKind::Exists(..)
        | ExprKind::Forall(..)
        | ExprKind::AtLeast(..)
        | ExprKind::AtMost(..) => Some(Kind::Concept),
        ExprKind::Set(es) => match es.first() {
            Some(Elem::Ind(_)) => Some(Kind::Concept),
            Some(Elem::Const(_)) => Some(Kind::Data),
            None => None,
        },
        ExprKind::Facets(..) => Some(Kind::Data),
        ExprKind::Call(Call::Inv | Call::Id | Call::Prod, _) => Some(Kind::Abstract),
        ExprKind::Call(_, args) => match classify(&args[0], kinds) {
            Some(Kind::Concrete) => Some(Kind::Concrete),
            Some(_) => Some(Kind::Abstract),
            None => match args.last().and_then(|a| classify(a, kinds)) {
                Some(Kind::Data) => Some(Kind::Concrete),
                _ => None,
            },
        },
        ExprKind::Not(x) => classify(x, kinds),
        ExprKind::And(a, b) | ExprKind::Or(a, b) => {
            classify(a, kinds).or_else(|| classify(b, kinds))
        }
    }
}

fn role_kind_with_filler(role: &Expr, filler: Option<&Expr>, kinds: &Kinds) -> Option<Kind> {
    match classify(role, kinds) {
        Some(Kind::Concrete) => return Some(Kind::Concrete),
        Some(Kind::Abstract) => return Some(Kind::Abstract),
        _ => {}
    }
    match filler.and_then(|f| classify(f, kinds)) {
        Some(Kind::Data) => Some(Kind::Concrete),
        Some(Kind::Concept) => Some(Kind::Abstract),
        _ => None,
    }
}

fn exists_role_kind(role: &Expr, fill: &Fill, kinds: &Kinds) -> Option<Kind> {
    match fill {
        Fill::SelfKw => Some(Kind::Abstract),
        Fill::Set(es) => match es.first() {
            Some(Elem::Ind(_)) => Some(Kind::Abstract),
            Some(Elem::Const(_)) => Some(Kind::Concrete),
            None => role_kind_with_filler(role, None, kinds),
        },
        Fill::Expr(f) => role_kind_with_filler(role, Some(f), kinds),
    }
}

struct Marker<'a> {
    kinds: &'a mut Kinds,
    changed: bool,
}

impl Marker<'_> {
    fn name(&mut self, n: &str, k: Kind) {
        if n == "U" && k == Kind::Abstract {
            return;
        }
        if !self.kinds.contains_key(n) {
            self.kinds.insert(n.to_string(), k);
            self.changed = true;
        }
    }

    fn quantified(&mut self, role: &Expr, rk: Option<Kind>, filler: Option<&Expr>) {
        if let Some(rk) = rk {
            self.expr(role, rk);
            if let Some(f) = filler {
                let fk = if rk == Kind::Concrete {
                    Kind::Data
                } else {
                    Kind::Concept
                };
                self.expr(f, fk);
            }
        }
    }

    fn expr(&mut self, e: &Expr, ctx: Kind) {
        match &e.kind {
            ExprKind::Name(n) => self.name(n, ctx),
            ExprKind::Thing | ExprKind::Nothing | ExprKind::Set(_) | ExprKind::Facets(..) => {}
            ExprKind::Not(x) => self.expr(x, ctx),
            ExprKind::And(a, b) | ExprKind::Or(a, b) => {
                self.expr(a, ctx);
                self.expr(b, ctx);
            }
            ExprKind::Exists(r, fill) => {
                let rk = exists_role_kind(r, fill, self.kinds);
                let f = match fill {
                    Fill::Expr(f) => Some(f.as_ref()),
                    _ => None,
                };
                self.quantified(r, rk, f);
            }
            ExprKind::Forall(r, f) | ExprKind::AtLeast(_, r, f) | ExprKind::AtMost(_, r, f) => {
                let rk = role_kind_with_filler(r, Some(f), self.kinds);
                self.quantified(r, rk, Some(f));
            }
            ExprKind::Call(c, args) => match c {
                Call::Inv => self.expr(&args[0], Kind::Abstract),
                Call::Id | Call::Prod => {
                    for a in args {
                        self.expr(a, Kind::Concept);
                    }
                }
                Call::Dom | Call::Ran | Call::Restr => {
                    let rk = if ctx == Kind::Concrete {
                        Kind::Concrete
                    } else {
                        Kind::Abstract
                    };
                    self.expr(&args[0], rk);
                    for (i, a) in args.iter().enumerate().skip(1) {
                        let last_is_range = *c != Call::Dom && i == args.len() - 1;
                        let k = if last_is_range && rk == Kind::Concrete {
                            Kind::Data
                        } else {
                            Kind::Concept
                        };
                        self.expr(a, k);
                    }
                }
            },
        }
    }
}

fn statement_kind(raw: &Raw, kinds: &Kinds) -> Option<Kind> {
    match raw {
        Raw::Sub {
            prefix: Some(k), ..
        }
        | Raw::Equiv {
            prefix: Some(k), ..
        } => Some(*k),
        Raw::Sub { lhs, rhs, .. } | Raw::Equiv { lhs, rhs, .. } => {
            classify(lhs, kinds).or_else(|| classify(rhs, kinds))
        }
        _ => None,
    }
}

fn infer(stmts: &[RawStatement], kinds: &mut Kinds) {
    loop {
        let mut m = Marker {
            kinds,
            changed: false,
        };
        for s in stmts {
            match &s.raw {
                Raw::Decl(..) | Raw::Datatype { .. } | Raw::Same(..) | Raw::Different(..) => {}
                Raw::Prop { prefix, op, args } => {
                    let k = match (prefix, op) {
                        (Some(Kind::Concrete), _) => Some(Kind::Concrete),
                        (_, PropOp::Fun | PropOp::Dis) => args
                            .iter()
                            .find_map(|a| classify(a, m.kinds))
                            .filter(|k| matches!(k, Kind::Abstract | Kind::Concrete)),
                        _ => Some(Kind::Abstract),
                    };
                    if let Some(k) = k {
                        for a in args {
                            m.expr(a, k);
                        }
                    }
                }
                Raw::Chain(rs, r) => {
                    for x in rs.iter().chain(std::iter::once(r)) {
                        m.expr(x, Kind::Abstract);
                    }
                }
                Raw::Sub { lhs, rhs, .. } | Raw::Equiv { lhs, rhs, .. } => {
                    if let Some(k) = statement_kind(&s.raw, m.kinds) {
                        m.expr(lhs, k);
                        m.expr(rhs, k);
                    }
                }
                Raw::Member(Elem::Ind(_), e) => m.expr(e, Kind::Concept),
                Raw::Member(Elem::Const(_), e) => m.expr(e, Kind::Data),
                Raw::Pair { object, pred, .. } => match object {
                    Elem::Ind(_) => m.expr(pred, Kind::Abstract),
                    Elem::Const(_) => m.expr(pred, Kind::Concrete),
                },
            }
        }
        if !m.changed {
            return;
        }
    }
}

fn wrong(e: &Expr, want: &str) -> ParseError {
    ParseError::new(
        e.span,
        format!("expected {want}, found {}", describe(e)),
        &[want],
    )
}

fn describe(e: &Expr) -> String {
    match &e.kind {
        ExprKind::Name(n) => format!("`{n}`"),
        ExprKind::Thing => "Thing".into(),
        ExprKind::Nothing => "Nothing".into(),
        ExprKind::Not(_) => "a complement".into(),
        ExprKind::And(..) => "an intersection".into(),
        ExprKind::Or(..) => "a union".into(),
        ExprKind::Set(_) => "an enumeration".into(),
        ExprKind::Exists(..) => "an exists restriction".into(),
        ExprKind::Forall(..) => "a forall restriction".into(),
        ExprKind::AtLeast(..) => "atleast".into(),
        ExprKind::AtMost(..) => "atmost".into(),
        ExprKind::Call(c, _) => format!("{c:?}").to_lowercase(),
        ExprKind::Facets(d, _) => format!("a facet expression of {d}"),
    }
}

pub(crate) struct Converter<'a> {
    pub kinds: &'a Kinds,
}

impl Converter<'_> {
    fn kind_of_role(&self, r: &Expr, filler: Option<&Expr>) -> Kind {
        role_kind_with_filler(r, filler, self.kinds).unwrap_or(Kind::Abstract)
    }

    pub(crate) fn concept(&self, e: &Expr) -> Result<Concept, ParseError> {
        Ok(match &e.kind {
            ExprKind::Name(n) => Concept::Name(n.clone()),
            ExprKind::Thing => Concept::Top,
            ExprKind::Nothing => Concept::Bottom,
            ExprKind::Not(x) => Concept::not(self.concept(x)?),
            ExprKind::And(a, b) => Concept::and(self.concept(a)?, self.concept(b)?),
            ExprKind::Or(a, b) => Concept::or(self.concept(a)?, self.concept(b)?),
            ExprKind::Set(es) => {
                let mut names = Vec::new();
                for x in es {
                    match x {
                        Elem::Ind(a) => names.push(a.clone()),
                        Elem::Const(_) => return Err(wrong(e, "a set of individuals")),
                    }
                }
                Concept::Nominals(names)
            }
            ExprKind::Exists(r, Fill::SelfKw) => Concept::SelfRestriction(Box::new(self.role(r)?)),
            ExprKind::Exists(r, Fill::Set(es)) if es.len() == 1 => match &es[0] {
                Elem::Ind(a) => Concept::HasValue(Box::new(self.role(r)?), a.clone()),
                Elem::Const(c) => Concept::HasData(Box::new(self.concrete(r)?), c.clone()),
            },
            ExprKind::Exists(..) => {
                return Err(ParseError::new(
                    e.span,
                    "exists R . (C) is only allowed on the left of <=".into(),
                    &["exists R . Self", "exists R . {a}"],
                ))
            }
            ExprKind::Forall(..) | ExprKind::AtMost(..) => {
                return Err(ParseError::new(
                    e.span,
                    format!("{} is only allowed on the right of <=", describe(e)),
                    &["concept"],
                ))
            }
            ExprKind::AtLeast(..) => {
                return Err(ParseError::new(
                    e.span,
                    "atleast is only allowed on the left of <=".into(),
                    &["concept"],
                ))
            }
            _ => return Err(wrong(e, "a concept")),
        })
    }

    pub(crate) fn role(&self, e: &Expr) -> Result<Role, ParseError> {
        Ok(match &e.kind {
            ExprKind::Name(n) => Role::name(n),
            ExprKind::Not(x) => Role::Not(Box::new(self.role(x)?)),
            ExprKind::And(a, b) => Role::And(Box::new(self.role(a)?), Box::new(self.role(b)?)),
            ExprKind::Or(a, b) => Role::Or(Box::new(self.role(a)?), Box::new(self.role(b)?)),
            ExprKind::Call(c, args) => match c {
                Call::Inv => Role::Inverse(Box::new(self.role(&args[0])?)),
                Call::Id => Role::Identity(self.concept(&args[0])?),
                Call::Prod => Role::Product(self.concept(&args[0])?, self.concept(&args[1])?),
                Call::Dom => Role::Domain(Box::new(self.role(&args[0])?), self.concept(&args[1])?),
                Call::Ran => Role::Range(Box::new(self.role(&args[0])?), self.concept(&args[1])?),
                Call::Restr => Role::Restrict(
                    Box::new(self.role(&args[0])?),
                    self.concept(&args[1])?,
                    self.concept(&args[2])?,
                ),
            },
            _ => return Err(wrong(e, "an abstract role")),
        })
    }

    pub(crate) fn concrete(&self, e: &Expr) -> Result<ConcreteRole, ParseError> {
        Ok(match &e.kind {
            ExprKind::Name(n) if n != "U" => ConcreteRole::name(n),
            ExprKind::Not(x) => ConcreteRole::Not(Box::new(self.concrete(x)?)),
            ExprKind::And(a, b) => {
                ConcreteRole::And(Box::new(self.concrete(a)?), Box::new(self.concrete(b)?))
            }
            ExprKind::Or(a, b) => {
                ConcreteRole::Or(Box::new(self.concrete(a)?), Box::new(self.concrete(b)?))
            }
            ExprKind::Call(Call::Dom, args) => {
                ConcreteRole::Domain(Box::new(self.concrete(&args[0])?), self.concept(&args[1])?)
            }
            ExprKind::Call(Call::Ran, args) => {
                ConcreteRole::Range(Box::new(self.concrete(&args[0])?), self.data(&args[1])?)
            }
            ExprKind::Call(Call::Restr, args) => ConcreteRole::Restrict(
                Box::new(self.concrete(&args[0])?),
                self.concept(&args[1])?,
                self.data(&args[2])?,
            ),
            _ => return Err(wrong(e, "a concrete role")),
        })
    }

    pub(crate) fn data(&self, e: &Expr) -> Result<DataTerm, ParseError> {
        Ok(match &e.kind {
            ExprKind::Name(n) => DataTerm::Datatype(n.clone()),
            ExprKind::Facets(d, f) => DataTerm::Facets {
                datatype: d.clone(),
                cnf: match f {
                    Some(f) => facet_cnf(f),
                    None => FacetCnf::new(vec![]),
                },
            },
            ExprKind::Set(es) => {
                let mut cs = Vec::new();
                for x in es {
                    match x {
                        Elem::Const(c) => cs.push(c.clone()),
                        Elem::Ind(_) => return Err(wrong(e, "a set of constants")),
                    }
                }
                DataTerm::Enum(cs)
            }
            ExprKind::Not(x) => DataTerm::Not(Box::new(self.data(x)?)),
            ExprKind::And(a, b) => DataTerm::And(Box::new(self.data(a)?), Box::new(self.data(b)?)),
            ExprKind::Or(a, b) => DataTerm::Or(Box::new(self.data(a)?), Box::new(self.data(b)?)),
            _ => return Err(wrong(e, "a data range")),
        })
    }

    fn sub(&self, lhs: &Expr, rhs: &Expr, kind: Kind) -> Result<Statement, ParseError> {
        Ok(match kind {
            Kind::Abstract => Statement::RoleSub(self.role(lhs)?, self.role(rhs)?),
            Kind::Concrete => Statement::ConcreteSub(self.concrete(lhs)?, self.concrete(rhs)?),
            Kind::Data => Statement::DataSub(self.data(lhs)?, self.data(rhs)?),
            Kind::Concept => match (&lhs.kind, &rhs.kind) {
                (ExprKind::Exists(r, Fill::Expr(f)), _) => {
                    let sup = self.concept(rhs)?;
                    if self.kind_of_role(r, Some(f)) == Kind::Concrete {
                        Statement::DataSomeValues {
                            role: self.concrete(r)?,
                            range: self.data(f)?,
                            sup,
                        }
                    } else {
                        Statement::SomeValues {
                            role: self.role(r)?,
                            filler: self.concept(f)?,
                            sup,
                        }
                    }
                }
                (ExprKind::Exists(r, Fill::Set(es)), _) if es.len() != 1 => {
                    let sup = self.concept(rhs)?;
                    let f = Expr {
                        kind: ExprKind::Set(es.clone()),
                        span: lhs.span,
                    };
                    if self.kind_of_role(r, Some(&f)) == Kind::Concrete {
                        Statement::DataSomeValues {
                            role: self.concrete(r)?,
                            range: self.data(&f)?,
                            sup,
                        }
                    } else {
                        Statement::SomeValues {
                            role: self.role(r)?,
                            filler: self.concept(&f)?,
                            sup,
                        }
                    }
                }
                (ExprKind::AtLeast(n, r, f), _) => {
                    let sup = self.concept(rhs)?;
                    if self.kind_of_role(r, Some(f)) == Kind::Concrete {
                        Statement::DataAtLeast {
                            n: *n,
                            role: self.concrete(r)?,
                            range: self.data(f)?,
                            sup,
                        }
                    } else {
                        Statement::AtLeast {
                            n: *n,
                            role: self.role(r)?,
                            filler: self.concept(f)?,
                            sup,
                        }
                    }
                }
                (_, ExprKind::Forall(r, f)) => {
                    let sub = self.concept(lhs)?;
                    if self.kind_of_role(r, Some(f)) == Kind::Concrete {
                        Statement::DataAllValues {
                            sub,
                            role: self.concrete(r)?,
                            range: self.data(f)?,
                        }
                    } else {
                        Statement::AllValues {
                            sub,
                            role: self.role(r)?,
                            filler: self.concept(f)?,
                        }
                    }
                }
                (_, ExprKind::AtMost(n, r, f)) => {
                    let sub = self.concept(lhs)?;
                    if self.kind_of_role(r, Some(f)) == Kind::Concrete {
                        Statement::DataAtMost {
                            sub,
                            n: *n,
                            role: self.concrete(r)?,
                            range: self.data(f)?,
                        }
                    } else {
                        Statement::AtMost {
                            sub,
                            n: *n,
                            role: self.role(r)?,
                            filler: self.concept(f)?,
                        }
                    }
                }
                _ => Statement::ConceptSub(self.concept(lhs)?, self.concept(rhs)?),
            },
        })
    }

    fn statement(&self, s: &RawStatement) -> Result<Option<Statement>, ParseError> {
        Ok(Some(match &s.raw {
            Raw::Decl(..) | Raw::Datatype { .. } => return Ok(None),
            Raw::Prop { prefix, op, args } => {
                let concrete = *prefix == Some(Kind::Concrete)
                    || (prefix.is_none()
                        && matches!(op, PropOp::Fun | PropOp::Dis)
                        && args
                            .iter()
                            .find_map(|a| classify(a, self.kinds))
                            .is_some_and(|k| k == Kind::Concrete));
                if concrete {
                    match op {
                        PropOp::Fun => Statement::ConcreteFun(self.concrete(&args[0])?),
                        PropOp::Dis => Statement::ConcreteDisjoint(
                            self.concrete(&args[0])?,
                            self.concrete(&args[1])?,
                        ),
                        _ => {
                            return Err(ParseError::new(
                                s.span,
                                format!("{op:?} applies only to abstract roles"),
                                &["role"],
                            ))
                        }
                    }
                } else {
                    let r = self.role(&args[0])?;
                    match op {
                        PropOp::Sym => Statement::Sym(r),
                        PropOp::Asym => Statement::Asym(r),
                        PropOp::Ref => Statement::Ref(r),
                        PropOp::Irref => Statement::Irref(r),
                        PropOp::Tra => Statement::Tra(r),
                        PropOp::Fun => Statement::Fun(r),
                        PropOp::Dis => Statement::RoleDisjoint(r, self.role(&args[1])?),
                    }
                }
            }
            Raw::Chain(rs, r) => Statement::Chain(
                rs.iter().map(|x| self.role(x)).collect::<Result<_, _>>()?,
                self.role(r)?,
            ),
            Raw::Sub { lhs, rhs, .. } => {
                let k = statement_kind(&s.raw, self.kinds).unwrap_or(Kind::Concept);
                self.sub(lhs, rhs, k)?
            }
            Raw::Equiv { lhs, rhs, .. } => {
                match statement_kind(&s.raw, self.kinds).unwrap_or(Kind::Concept) {
                    Kind::Concept => Statement::ConceptEquiv(self.concept(lhs)?, self.concept(rhs)?),
                    Kind::Abstract => Statement::RoleEquiv(self.role(lhs)?, self.role(rhs)?),
                    Kind::Concrete => {
                        Statement::ConcreteEquiv(self.concrete(lhs)?, self.concrete(rhs)?)
                    }
                    Kind::Data => Statement::DataEquiv(self.data(lhs)?, self.data(rhs)?),
                }
            }
            Raw::Member(Elem::Ind(a), e) => Statement::ConceptAssertion(a.clone(), self.concept(e)?),
            Raw::Member(Elem::Const(c), e) => Statement::DataAssertion(c.clone(), self.data(e)?),
            Raw::Pair {
                subject,
                object,
                positive,
                pred,
            } => match object {
                Elem::Ind(b) => Statement::RoleAssertion {
                    subject: subject.clone(),
                    object: b.clone(),
                    role: self.role(pred)?,
                    positive: *positive,
                },
                Elem::Const(c) => Statement::ConcreteAssertion {
                    subject: subject.clone(),
                    value: c.clone(),
                    role: self.concrete(pred)?,
                    positive: *positive,
                },
            },
            Raw::Same(a, b) => Statement::Same(a.clone(), b.clone()),
            Raw::Different(a, b) => Statement::Different(a.clone(), b.clone()),
        }))
    }
}

fn nnf_cnf(e: &FacetExpr, positive: bool) -> Vec<Vec<FacetLiteral>> {
    match (e, positive) {
        (FacetExpr::Lit(l), p) => vec![vec![FacetLiteral {
            positive: l.positive == p,
            facet: l.facet.clone(),
        }]],
        (FacetExpr::Not(x), p) => nnf_cnf(x, !p),
        (FacetExpr::And(a, b), true) | (FacetExpr::Or(a, b), false) => {
            let mut out = nnf_cnf(a, positive);
            out.extend(nnf_cnf(b, positive));
            out
        }
        (FacetExpr::Or(a, b), true) | (FacetExpr::And(a, b), false) => {
            let (ca, cb) = (nnf_cnf(a, positive), nnf_cnf(b, positive));
            let mut out = Vec::new();
            for x in &ca {
                for y in &cb {
                    let mut c = x.clone();
                    c.extend(y.iter().cloned());
                    out.push(c);
                }
            }
            out
        }
    }
}

pub(crate) fn facet_cnf(e: &FacetExpr) -> FacetCnf {
    FacetCnf::new(nnf_cnf(e, true))
}

/// Builds a knowledge base from raw statements.
pub(crate) fn build_kb(stmts: &[RawStatement]) -> Result<KnowledgeBase, ParseError> {
    let mut kb = KnowledgeBase::new();
    let mut kinds = Kinds::new();
    for s in stmts {
        match &s.raw {
            Raw::Datatype {
                name,
                constants,
                facets,
            } => {
                kb.dmap.add_datatype(name);
                for c in constants {
                    kb.dmap.add_constant(name, c);
                }
                for (f, ext) in facets {
                    kb.dmap
                        .add_facet(name, f, ext.iter().cloned().collect::<BTreeSet<_>>());
                }
                kinds.insert(name.clone(), Kind::Data);
            }
            Raw::Decl(k, names) => {
                for n in names {
                    let (set, kind) = match k {
                        DeclKind::Concept => (&mut kb.declarations.concepts, Some(Kind::Concept)),
                        DeclKind::Role => (&mut kb.declarations.roles, Some(Kind::Abstract)),
                        DeclKind::Concrete => {
                            (&mut kb.declarations.concrete_roles, Some(Kind::Concrete))
                        }
                        DeclKind::Individual => (&mut kb.declarations.individuals, None),
                    };
                    set.insert(n.clone());
                    if let Some(kind) = kind {
                        kinds.entry(n.clone()).or_insert(kind);
                    }
                }
            }
            _ => {}
        }
    }
    infer(stmts, &mut kinds);
    let conv = Converter { kinds: &kinds };
    for s in stmts {
        if let Some(st) = conv.statement(s)? {
            kb.add(st);
        }
    }
    // declarations only keep names no statement uses
    let decl = std::mem::take(&mut kb.declarations);
    let used = signature(&kb);
    kb.declarations.concepts = &decl.concepts - &used.concepts;
    kb.declarations.roles = &decl.roles - &used.abstract_roles;
    kb.declarations.concrete_roles = &decl.concrete_roles - &used.concrete_roles;
    kb.declarations.individuals = &decl.individuals - &used.individuals;
    Ok(kb)
}
