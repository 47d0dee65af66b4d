//! Signature-indexed constraints and the datatype closure group.

use crate::kb::{Constant, Facet, FacetCnf, FacetLiteral, Signature};
use crate::setcalc::{Clause, Literal, PurelyUniversal, Var, Witness};

use super::naming::NamingMap;
use super::theta::{clause, eq, mem, neq, not_mem, not_pair, pair, Fresh};

/// A labelled group of conjuncts of φ_KB.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Section {
    pub label: String,
    pub universals: Vec<PurelyUniversal>,
    pub ground: Vec<Literal>,
}

impl Section {
    pub fn new(label: impl Into<String>) -> Self {
        Section {
            label: label.into(),
            ..Default::default()
        }
    }

    fn forall(&mut self, bound: Vec<Var>, matrix: Vec<Vec<Literal>>) {
        let matrix: Vec<Clause> = matrix.into_iter().map(clause).collect();
        self.universals
            .push(PurelyUniversal::new(bound, matrix).expect("distinct fresh variables"));
    }

    pub fn is_empty(&self) -> bool {
        self.universals.is_empty() && self.ground.is_empty()
    }
}

fn facet_var(nm: &mut NamingMap, d: &str, f: &Facet) -> Var {
    match f {
        Facet::Named(n) => nm.facet(n),
        Facet::Top => nm.datatype_top(d),
        Facet::Bottom => nm.datatype_bottom(d),
    }
}

fn zeta_literal(nm: &mut NamingMap, d: &str, z: Var, l: &FacetLiteral) -> Literal {
    let x = facet_var(nm, d, &l.facet);
    if l.positive {
        mem(z, x)
    } else {
        not_mem(z, x)
    }
}

/// `z ∈ ζ(X_ψ)` for a CNF ψ, as clauses over `z`.
pub fn zeta(nm: &mut NamingMap, d: &str, psi: &FacetCnf, z: Var) -> Vec<Vec<Literal>> {
    psi.clauses()
        .iter()
        .map(|c| c.iter().map(|l| zeta_literal(nm, d, z, l)).collect())
        .collect()
}

/// Clauses of `X ≡ ζ(ψ)` over `z`.
fn zeta_definition(nm: &mut NamingMap, d: &str, psi: &FacetCnf, x: Var, z: Var) -> Vec<Vec<Literal>> {
    let cnf = zeta(nm, d, psi, z);
    let mut out: Vec<Vec<Literal>> = cnf
        .iter()
        .map(|c| {
            let mut c = c.clone();
            c.insert(0, not_mem(z, x));
            c
        })
        .collect();
    // ¬ζ(ψ) ∨ z∈X, distributing the DNF ¬ζ(ψ) into clauses.
    let mut choices: Vec<Vec<Literal>> = vec![Vec::new()];
    for c in &cnf {
        let mut next = Vec::new();
        for partial in &choices {
            for l in c {
                let mut p = partial.clone();
                p.push(l.complement());
                next.push(p);
            }
        }
        choices = next;
    }
    for mut c in choices {
        c.push(mem(z, x));
        out.push(c);
    }
    out
}

/// Groups ξ1..ξ12 in order, followed by the datatype closure group.
pub fn xi_constraints(sig: &Signature, nm: &mut NamingMap, fresh: &mut Fresh) -> Vec<Section> {
    let x_i = nm.individuals();
    let x_d = nm.data();
    let top = nm.top();
    let bot = nm.bottom();
    let u = nm.universal();
    let mut out = Vec::new();

    let mut s = Section::new("xi1");
    let z = fresh.z(&mut nm.pool);
    s.forall(
        vec![z],
        vec![
            vec![not_mem(z, x_i), not_mem(z, x_d)],
            vec![mem(z, x_d), mem(z, x_i)],
        ],
    );
    let z = fresh.z(&mut nm.pool);
    s.forall(vec![z], vec![vec![mem(z, x_i), mem(z, x_d)]]);
    let w_i = nm.witness(Witness::Individuals);
    let w_d = nm.witness(Witness::Data);
    s.ground.push(mem(w_i, x_i));
    s.ground.push(mem(w_d, x_d));
    out.push(s);

    let mut s = Section::new("xi2");
    let z = fresh.z(&mut nm.pool);
    s.forall(
        vec![z],
        vec![vec![not_mem(z, x_i), mem(z, top)], vec![not_mem(z, top), mem(z, x_i)]],
    );
    let z = fresh.z(&mut nm.pool);
    s.forall(vec![z], vec![vec![not_mem(z, bot)]]);
    out.push(s);

    let mut s = Section::new("xi3");
    for a in &sig.concepts {
        let x = nm.concept_name(a);
        let z = fresh.z(&mut nm.pool);
        s.forall(vec![z], vec![vec![not_mem(z, x), mem(z, x_i)]]);
    }
    out.push(s);

    let datatypes: Vec<&String> = sig.datatypes.iter().collect();
    let mut s = Section::new("xi4");
    for d in &datatypes {
        let xd = nm.datatype(d);
        let z = fresh.z(&mut nm.pool);
        s.forall(vec![z], vec![vec![not_mem(z, xd), mem(z, x_d)]]);
        let w = nm.witness(Witness::Datatype(d.to_string()));
        s.ground.push(mem(w, xd));
    }
    for i in 0..datatypes.len() {
        for j in i + 1..datatypes.len() {
            let (a, b) = (nm.datatype(datatypes[i]), nm.datatype(datatypes[j]));
            let z = fresh.z(&mut nm.pool);
            s.forall(vec![z], vec![vec![not_mem(z, a), not_mem(z, b)]]);
        }
    }
    out.push(s);

    let mut s = Section::new("xi5");
    for d in &datatypes {
        let xd = nm.datatype(d);
        let t = nm.datatype_top(d);
        let b = nm.datatype_bottom(d);
        let z = fresh.z(&mut nm.pool);
        s.forall(
            vec![z],
            vec![vec![not_mem(z, xd), mem(z, t)], vec![not_mem(z, t), mem(z, xd)]],
        );
        let z = fresh.z(&mut nm.pool);
        s.forall(vec![z], vec![vec![not_mem(z, b)]]);
    }
    out.push(s);

    let mut s = Section::new("xi6");
    for d in &datatypes {
        let xd = nm.datatype(d);
        for f in sig.facets.get(*d).into_iter().flatten() {
            let xf = nm.facet(f);
            let z = fresh.z(&mut nm.pool);
            s.forall(vec![z], vec![vec![not_mem(z, xf), mem(z, xd)]]);
        }
    }
    out.push(s);

    let mut s = Section::new("xi7");
    let z1 = fresh.z(&mut nm.pool);
    let z2 = fresh.z(&mut nm.pool);
    s.forall(
        vec![z1, z2],
        vec![
            vec![not_mem(z1, x_i), not_mem(z2, x_i), pair(z1, z2, u)],
            vec![not_pair(z1, z2, u), mem(z1, x_i)],
            vec![not_pair(z1, z2, u), mem(z2, x_i)],
        ],
    );
    out.push(s);

    let mut s = Section::new("xi8");
    for r in &sig.abstract_roles {
        if r == crate::kb::UNIVERSAL_ROLE {
            continue;
        }
        let x = nm.role_name(r);
        let z1 = fresh.z(&mut nm.pool);
        let z2 = fresh.z(&mut nm.pool);
        s.forall(
            vec![z1, z2],
            vec![
                vec![not_pair(z1, z2, x), mem(z1, x_i)],
                vec![not_pair(z1, z2, x), mem(z2, x_i)],
            ],
        );
    }
    out.push(s);

    let mut s = Section::new("xi9");
    for t in &sig.concrete_roles {
        let x = nm.concrete_name(t);
        let z1 = fresh.z(&mut nm.pool);
        let z2 = fresh.z(&mut nm.pool);
        s.forall(
            vec![z1, z2],
            vec![
                vec![not_pair(z1, z2, x), mem(z1, x_i)],
                vec![not_pair(z1, z2, x), mem(z2, x_d)],
            ],
        );
    }
    out.push(s);

    let mut s = Section::new("xi10");
    for a in &sig.individuals {
        let x = nm.individual(a);
        s.ground.push(mem(x, x_i));
    }
    for d in &datatypes {
        let xd = nm.datatype(d);
        for e in sig.constants.get(*d).into_iter().flatten() {
            let x = nm.constant(&Constant::new(e, d));
            s.ground.push(mem(x, xd));
        }
    }
    out.push(s);

    let mut s = Section::new("xi11");
    let ranges: Vec<(Var, Vec<Constant>)> =
        nm.data_ranges.iter().map(|(v, es)| (*v, es.clone())).collect();
    for (x, es) in ranges {
        let members: Vec<Var> = es.iter().map(|e| nm.constant(e)).collect();
        enumeration(&mut s, nm, fresh, x, &members);
    }
    let sets: Vec<(Var, Vec<String>)> =
        nm.nominal_sets.iter().map(|(v, a)| (*v, a.clone())).collect();
    for (x, names) in sets {
        let members: Vec<Var> = names.iter().map(|a| nm.individual(a)).collect();
        enumeration(&mut s, nm, fresh, x, &members);
    }
    out.push(s);

    let mut s = Section::new("xi12");
    let exprs: Vec<(Var, (String, FacetCnf))> =
        nm.facet_exprs.iter().map(|(v, e)| (*v, e.clone())).collect();
    for (x, (d, psi)) in exprs {
        let z = fresh.z(&mut nm.pool);
        let m = zeta_definition(nm, &d, &psi, x, z);
        s.forall(vec![z], m);
    }
    out.push(s);

    out.push(datatype_closure(sig, nm, fresh));
    out
}

fn enumeration(s: &mut Section, nm: &mut NamingMap, fresh: &mut Fresh, x: Var, members: &[Var]) {
    let z = fresh.z(&mut nm.pool);
    let mut first = vec![not_mem(z, x)];
    first.extend(members.iter().map(|m| eq(z, *m)));
    let mut m = vec![first];
    for v in members {
        m.push(vec![neq(z, *v), mem(z, x)]);
    }
    s.forall(vec![z], m);
}

/// Each datatype is exactly its declared constants, facets have their
/// declared extensions, and distinct constants denote distinct values.
pub fn datatype_closure(sig: &Signature, nm: &mut NamingMap, fresh: &mut Fresh) -> Section {
    let mut s = Section::new("datatypes");
    let mut all = Vec::new();
    for d in &sig.datatypes {
        let xd = nm.datatype(d);
        let consts: Vec<Var> = sig
            .constants
            .get(d)
            .into_iter()
            .flatten()
            .map(|e| nm.constant(&Constant::new(e, d)))
            .collect();
        let z = fresh.z(&mut nm.pool);
        let mut c = vec![not_mem(z, xd)];
        c.extend(consts.iter().map(|x| eq(z, *x)));
        s.forall(vec![z], vec![c]);
        all.extend(consts);
    }
    s.ground.extend(facet_facts(sig, nm));
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            s.ground.push(neq(all[i], all[j]));
        }
    }
    s
}

fn facet_facts(sig: &Signature, nm: &mut NamingMap) -> Vec<Literal> {
    let mut out = Vec::new();
    for d in &sig.datatypes {
        for f in sig.facets.get(d).into_iter().flatten() {
            let xf = nm.facet(f);
            let ext = nm_extension(sig, f);
            for e in sig.constants.get(d).into_iter().flatten() {
                let x = nm.constant(&Constant::new(e, d));
                out.push(if ext.contains(e) {
                    mem(x, xf)
                } else {
                    not_mem(x, xf)
                });
            }
        }
    }
    out
}

fn nm_extension(sig: &Signature, f: &str) -> std::collections::BTreeSet<String> {
    sig.facet_extensions.get(f).cloned().unwrap_or_default()
}
