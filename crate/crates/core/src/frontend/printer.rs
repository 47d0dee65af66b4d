//! Canonical text for knowledge bases and queries.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::kb::{
    signature, Concept, ConcreteRole, Constant, DataTerm, KnowledgeBase, Role, Statement,
};
use crate::query::{HoAtom, HoLiteral, HoQuery, Term};

fn quote(s: &str) -> String {
    let mut out = String::from("\"");
    for c in s.chars() {
        if c == '"' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('"');
    out
}

pub fn constant(c: &Constant) -> String {
    format!("{}^{}", quote(&c.value), c.datatype)
}

fn paren_concept(c: &Concept) -> String {
    match c {
        Concept::And(..) | Concept::Or(..) => format!("({})", concept(c)),
        _ => concept(c),
    }
}

pub fn concept(c: &Concept) -> String {
    match c {
        Concept::Name(n) => n.clone(),
        Concept::Top => "Thing".into(),
        Concept::Bottom => "Nothing".into(),
        Concept::Not(x) => format!("~{}", paren_concept(x)),
        Concept::And(a, b) => format!("{} & {}", paren_concept(a), paren_concept(b)),
        Concept::Or(a, b) => format!("{} | {}", paren_concept(a), paren_concept(b)),
        Concept::Nominals(ns) => format!("{{{}}}", ns.join(", ")),
        Concept::SelfRestriction(r) => format!("(exists {} . Self)", paren_role(r)),
        Concept::HasValue(r, a) => format!("(exists {} . {{{a}}})", paren_role(r)),
        Concept::HasData(p, e) => format!("(exists {} . {{{}}})", paren_concrete(p), constant(e)),
    }
}

fn paren_role(r: &Role) -> String {
    match r {
        Role::Not(_) | Role::And(..) | Role::Or(..) => format!("({})", role(r)),
        _ => role(r),
    }
}

pub fn role(r: &Role) -> String {
    match r {
        Role::Name(n) => n.clone(),
        Role::Universal => "U".into(),
        Role::Inverse(x) => format!("inv({})", role(x)),
        Role::Not(x) => format!("~{}", paren_role(x)),
        Role::And(a, b) => format!("{} & {}", paren_role(a), paren_role(b)),
        Role::Or(a, b) => format!("{} | {}", paren_role(a), paren_role(b)),
        Role::Domain(x, c) => format!("dom({}, {})", role(x), concept(c)),
        Role::Range(x, c) => format!("ran({}, {})", role(x), concept(c)),
        Role::Restrict(x, c, d) => format!("restr({}, {}, {})", role(x), concept(c), concept(d)),
        Role::Identity(c) => format!("id({})", concept(c)),
        Role::Product(c, d) => format!("prod({}, {})", concept(c), concept(d)),
    }
}

fn paren_concrete(p: &ConcreteRole) -> String {
    match p {
        ConcreteRole::Not(_) | ConcreteRole::And(..) | ConcreteRole::Or(..) => {
            format!("({})", concrete(p))
        }
        _ => concrete(p),
    }
}

pub fn concrete(p: &ConcreteRole) -> String {
    match p {
        ConcreteRole::Name(n) => n.clone(),
        ConcreteRole::Not(x) => format!("~{}", paren_concrete(x)),
        ConcreteRole::And(a, b) => format!("{} & {}", paren_concrete(a), paren_concrete(b)),
        ConcreteRole::Or(a, b) => format!("{} | {}", paren_concrete(a), paren_concrete(b)),
        ConcreteRole::Domain(x, c) => format!("dom({}, {})", concrete(x), concept(c)),
        ConcreteRole::Range(x, t) => format!("ran({}, {})", concrete(x), data(t)),
        ConcreteRole::Restrict(x, c, t) => {
            format!("restr({}, {}, {})", concrete(x), concept(c), data(t))
        }
    }
}

fn paren_data(t: &DataTerm) -> String {
    match t {
        DataTerm::And(..) | DataTerm::Or(..) => format!("({})", data(t)),
        _ => data(t),
    }
}

pub fn data(t: &DataTerm) -> String {
    match t {
        DataTerm::Datatype(d) => d.clone(),
        DataTerm::Facets { datatype, cnf } => format!("{datatype}[{}]", cnf.render(datatype)),
        DataTerm::Enum(cs) => {
            let parts: Vec<String> = cs.iter().map(constant).collect();
            format!("{{{}}}", parts.join(", "))
        }
        DataTerm::Not(x) => format!("~{}", paren_data(x)),
        DataTerm::And(a, b) => format!("{} & {}", paren_data(a), paren_data(b)),
        DataTerm::Or(a, b) => format!("{} | {}", paren_data(a), paren_data(b)),
    }
}

/// Filler of a quantifier; always parenthesized when it is not a name.
fn filler(s: String, atomic: bool) -> String {
    if atomic {
        s
    } else {
        format!("({s})")
    }
}

fn concept_filler(c: &Concept) -> String {
    filler(concept(c), matches!(c, Concept::Name(_)))
}

fn data_filler(t: &DataTerm) -> String {
    filler(data(t), matches!(t, DataTerm::Datatype(_)))
}

pub fn statement(s: &Statement) -> String {
    use Statement::*;
    match s {
        RoleEquiv(a, b) => format!("role {} == {}", role(a), role(b)),
        RoleSub(a, b) => format!("role {} <= {}", role(a), role(b)),
        Chain(rs, r) => {
            let parts: Vec<String> = rs.iter().map(role).collect();
            format!("chain({}) <= {}", parts.join(", "), role(r))
        }
        Sym(r) => format!("Sym({})", role(r)),
        Asym(r) => format!("Asym({})", role(r)),
        Ref(r) => format!("Ref({})", role(r)),
        Irref(r) => format!("Irref({})", role(r)),
        Tra(r) => format!("Tra({})", role(r)),
        Fun(r) => format!("role Fun({})", role(r)),
        RoleDisjoint(a, b) => format!("role Dis({}, {})", role(a), role(b)),
        ConcreteEquiv(a, b) => format!("concrete {} == {}", concrete(a), concrete(b)),
        ConcreteSub(a, b) => format!("concrete {} <= {}", concrete(a), concrete(b)),
        ConcreteDisjoint(a, b) => format!("concrete Dis({}, {})", concrete(a), concrete(b)),
        ConcreteFun(p) => format!("concrete Fun({})", concrete(p)),
        ConceptEquiv(a, b) => format!("concept {} == {}", concept(a), concept(b)),
        ConceptSub(a, b) => format!("{} <= {}", concept(a), concept(b)),
        AllValues { sub, role: r, filler } => format!(
            "{} <= forall {} . {}",
            concept(sub),
            paren_role(r),
            concept_filler(filler)
        ),
        SomeValues { role: r, filler, sup } => format!(
            "exists {} . ({}) <= {}",
            paren_role(r),
            concept(filler),
            concept(sup)
        ),
        AtLeast {
            n,
            role: r,
            filler,
            sup,
        } => format!(
            "atleast({n}, {}, {}) <= {}",
            role(r),
            concept(filler),
            concept(sup)
        ),
        AtMost {
            sub,
            n,
            role: r,
            filler,
        } => format!(
            "{} <= atmost({n}, {}, {})",
            concept(sub),
            role(r),
            concept(filler)
        ),
        DataEquiv(a, b) => format!("data {} == {}", data(a), data(b)),
        DataSub(a, b) => format!("data {} <= {}", data(a), data(b)),
        DataAllValues { sub, role: p, range } => format!(
            "{} <= forall {} . {}",
            concept(sub),
            paren_concrete(p),
            data_filler(range)
        ),
        DataSomeValues { role: p, range, sup } => format!(
            "exists {} . ({}) <= {}",
            paren_concrete(p),
            data(range),
            concept(sup)
        ),
        DataAtLeast {
            n,
            role: p,
            range,
            sup,
        } => format!(
            "atleast({n}, {}, {}) <= {}",
            concrete(p),
            data(range),
            concept(sup)
        ),
        DataAtMost {
            sub,
            n,
            role: p,
            range,
        } => format!(
            "{} <= atmost({n}, {}, {})",
            concept(sub),
            concrete(p),
            data(range)
        ),
        ConceptAssertion(a, c) => format!("{a} : {}", concept(c)),
        RoleAssertion {
            subject,
            object,
            role: r,
            positive,
        } => format!(
            "({subject}, {object}) : {}{}",
            if *positive { "" } else { "! " },
            role(r)
        ),
        Same(a, b) => format!("{a} = {b}"),
        Different(a, b) => format!("{a} != {b}"),
        DataAssertion(e, t) => format!("{} : {}", constant(e), data(t)),
        ConcreteAssertion {
            subject,
            value,
            role: p,
            positive,
        } => format!(
            "({subject}, {}) : {}{}",
            constant(value),
            if *positive { "" } else { "! " },
            concrete(p)
        ),
    }
}

fn names_line(out: &mut String, kind: &str, names: &BTreeSet<String>) {
    if !names.is_empty() {
        let v: Vec<&str> = names.iter().map(String::as_str).collect();
        let _ = writeln!(out, "decl {kind} {}", v.join(", "));
    }
}

/// Datatype blocks, declarations, then RBox, TBox and ABox statements.
/// Concrete role names are always declared so that their sort survives
/// reparsing.
pub fn print_kb(kb: &KnowledgeBase) -> String {
    let mut out = String::new();
    for d in &kb.dmap.datatypes {
        let _ = write!(out, "datatype {d} {{");
        let cs = kb.dmap.constants_of(d);
        if !cs.is_empty() {
            let v: Vec<String> = cs.iter().map(|c| quote(c)).collect();
            let _ = write!(out, " constants: {};", v.join(", "));
        }
        let fs = kb.dmap.facets.get(d).cloned().unwrap_or_default();
        if !fs.is_empty() {
            let v: Vec<String> = fs
                .iter()
                .map(|f| {
                    let ext: Vec<String> =
                        kb.dmap.facet_extension(f).iter().map(|c| quote(c)).collect();
                    format!("{f} = {{{}}}", ext.join(", "))
                })
                .collect();
            let _ = write!(out, " facets: {};", v.join(", "));
        }
        out.push_str(" }\n");
    }
    let concrete: BTreeSet<String> = signature(kb).concrete_roles;
    names_line(&mut out, "concept", &kb.declarations.concepts);
    names_line(&mut out, "role", &kb.declarations.roles);
    names_line(&mut out, "concrete", &concrete);
    names_line(&mut out, "individual", &kb.declarations.individuals);
    for s in kb.rbox.iter().chain(&kb.tbox).chain(&kb.abox) {
        out.push_str(&statement(s));
        out.push('\n');
    }
    out
}

fn term(t: &Term, data_hint: bool) -> String {
    match t {
        Term::Var(v) if data_hint => format!("data {v}"),
        Term::Var(v) => v.clone(),
        Term::Individual(a) => a.clone(),
        Term::Constant(e) => constant(e),
    }
}

fn atom(a: &HoAtom) -> String {
    let t = |x: &Term| term(x, false);
    match a {
        HoAtom::Concept(c, w) => match c {
            Concept::Name(n) => format!("{n}({})", t(w)),
            _ => format!("({})({})", concept(c), t(w)),
        },
        HoAtom::Role(r, w1, w2) => match r {
            Role::Name(n) => format!("{n}({}, {})", t(w1), t(w2)),
            _ => format!("({})({}, {})", role(r), t(w1), t(w2)),
        },
        HoAtom::Concrete(p, w, u) => match p {
            ConcreteRole::Name(n) => format!("{n}({}, {})", t(w), term(u, true)),
            _ => format!("({})({}, {})", concrete(p), t(w), term(u, true)),
        },
        HoAtom::ConceptVar(c, w) => format!("{c}({})", t(w)),
        HoAtom::RoleVar(r, w1, w2) => format!("{r}({}, {})", t(w1), t(w2)),
        HoAtom::ConcreteVar(p, w, u) => format!("{p}({}, {})", t(w), term(u, true)),
        HoAtom::SameIndividual(a, b) => format!("{} = {}", t(a), t(b)),
        HoAtom::SameValue(a, b) => format!("{} == {}", t(a), t(b)),
    }
}

fn literal(l: &HoLiteral) -> String {
    match (&l.atom, l.positive) {
        (HoAtom::SameIndividual(a, b), false) => {
            format!("{} != {}", term(a, false), term(b, false))
        }
        (a, true) => atom(a),
        (a, false) => format!("!{}", atom(a)),
    }
}

/// Literals joined by ` & `; the empty query prints as the empty string.
pub fn print_query(q: &HoQuery) -> String {
    q.literals()
        .iter()
        .map(literal)
        .collect::<Vec<_>>()
        .join(" & ")
}
