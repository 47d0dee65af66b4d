//! The translated formula is satisfiable exactly when the KB has a model
//! under the direct DL semantics. The DL side is decided by a SAT encoding
//! over a bounded domain: one abstract element per individual plus one
//! spare, and the datatype constants plus one untyped data value.

use hocqa::gen::{self, KbShape};
use hocqa::kb::{
    signature, Concept, ConcreteRole, Constant, DataTerm, KnowledgeBase, Role, Statement,
    UNIVERSAL_ROLE,
};
use hocqa::oracle::OracleConfig;
use hocqa::pipeline::oracle_consistent;
use proptest::prelude::*;
use std::collections::BTreeMap;
use varisat::{ExtendFormula, Lit, Solver};

/// Data element: a typed constant, or the untyped spare (`None`).
type DataElem = Option<Constant>;

struct Dl<'k> {
    kb: &'k KnowledgeBase,
    s: Solver<'static>,
    t: Lit,
    exists: Vec<Lit>,
    data: Vec<DataElem>,
    data_exists: Vec<Lit>,
    ind: BTreeMap<String, Vec<Lit>>,
    concepts: BTreeMap<(String, usize), Lit>,
    roles: BTreeMap<(String, usize, usize), Lit>,
    concretes: BTreeMap<(String, usize, usize), Lit>,
}

impl<'k> Dl<'k> {
    fn new(kb: &'k KnowledgeBase) -> Self {
        let sig = signature(kb);
        let mut s = Solver::new();
        let t = s.new_lit();
        s.add_clause(&[t]);
        let n = sig.individuals.len() + 1;
        let exists: Vec<Lit> = (0..n).map(|_| s.new_lit()).collect();
        s.add_clause(&exists);
        let mut data: Vec<DataElem> = vec![];
        for (d, vs) in &sig.constants {
            for v in vs {
                data.push(Some(Constant::new(v, d)));
            }
        }
        let mut data_exists = vec![t; data.len()];
        data.push(None);
        let spare = s.new_lit();
        data_exists.push(spare);
        s.add_clause(&data_exists);
        let mut ind = BTreeMap::new();
        for a in &sig.individuals {
            let xs: Vec<Lit> = (0..n).map(|_| s.new_lit()).collect();
            s.add_clause(&xs);
            for i in 0..n {
                s.add_clause(&[!xs[i], exists[i]]);
                for j in i + 1..n {
                    s.add_clause(&[!xs[i], !xs[j]]);
                }
            }
            ind.insert(a.clone(), xs);
        }
        Dl {
            kb,
            s,
            t,
            exists,
            data,
            data_exists,
            ind,
            concepts: BTreeMap::new(),
            roles: BTreeMap::new(),
            concretes: BTreeMap::new(),
        }
    }

    fn lit(&self, b: bool) -> Lit {
        if b {
            self.t
        } else {
            !self.t
        }
    }

    fn and(&mut self, xs: &[Lit]) -> Lit {
        let g = self.s.new_lit();
        let mut back = vec![g];
        for &x in xs {
            self.s.add_clause(&[!g, x]);
            back.push(!x);
        }
        self.s.add_clause(&back);
        g
    }

    fn or(&mut self, xs: &[Lit]) -> Lit {
        let negs: Vec<Lit> = xs.iter().map(|&x| !x).collect();
        !self.and(&negs)
    }

    fn require(&mut self, clause: &[Lit]) {
        self.s.add_clause(clause);
    }

    fn ind(&self, a: &str) -> &[Lit] {
        &self.ind[a]
    }

    fn concept(&mut self, c: &Concept, e: usize) -> Lit {
        match c {
            Concept::Name(n) => {
                let s = &mut self.s;
                *self.concepts.entry((n.clone(), e)).or_insert_with(|| s.new_lit())
            }
            Concept::Top => self.t,
            Concept::Bottom => !self.t,
            Concept::Not(c) => !self.concept(c, e),
            Concept::And(a, b) => {
                let xs = [self.concept(a, e), self.concept(b, e)];
                self.and(&xs)
            }
            Concept::Or(a, b) => {
                let xs = [self.concept(a, e), self.concept(b, e)];
                self.or(&xs)
            }
            Concept::Nominals(names) => {
                let xs: Vec<Lit> = names.iter().map(|a| self.ind(a)[e]).collect();
                self.or(&xs)
            }
            Concept::SelfRestriction(r) => self.role(r, e, e),
            Concept::HasValue(r, a) => {
                let mut xs = vec![];
                for f in 0..self.exists.len() {
                    let at = self.ind(a)[f];
                    let rl = self.role(r, e, f);
                    xs.push(self.and(&[at, rl]));
                }
                self.or(&xs)
            }
            Concept::HasData(p, c) => {
                let v = self.data_index(c);
                self.concrete(p, e, v)
            }
        }
    }

    fn role(&mut self, r: &Role, e: usize, f: usize) -> Lit {
        match r {
            Role::Name(n) if n == UNIVERSAL_ROLE => self.t,
            Role::Name(n) => {
                let s = &mut self.s;
                *self.roles.entry((n.clone(), e, f)).or_insert_with(|| s.new_lit())
            }
            Role::Universal => self.t,
            Role::Inverse(r) => self.role(r, f, e),
            Role::Not(r) => !self.role(r, e, f),
            Role::And(a, b) => {
                let xs = [self.role(a, e, f), self.role(b, e, f)];
                self.and(&xs)
            }
            Role::Or(a, b) => {
                let xs = [self.role(a, e, f), self.role(b, e, f)];
                self.or(&xs)
            }
            Role::Domain(r, c) => {
                let xs = [self.role(r, e, f), self.concept(c, e)];
                self.and(&xs)
            }
            Role::Range(r, c) => {
                let xs = [self.role(r, e, f), self.concept(c, f)];
                self.and(&xs)
            }
            Role::Restrict(r, c, d) => {
                let xs = [self.role(r, e, f), self.concept(c, e), self.concept(d, f)];
                self.and(&xs)
            }
            Role::Identity(c) => {
                if e == f {
                    self.concept(c, e)
                } else {
                    !self.t
                }
            }
            Role::Product(c, d) => {
                let xs = [self.concept(c, e), self.concept(d, f)];
                self.and(&xs)
            }
        }
    }

    fn concrete(&mut self, p: &ConcreteRole, e: usize, v: usize) -> Lit {
        match p {
            ConcreteRole::Name(n) => {
                let s = &mut self.s;
                *self
                    .concretes
                    .entry((n.clone(), e, v))
                    .or_insert_with(|| s.new_lit())
            }
            ConcreteRole::Not(p) => !self.concrete(p, e, v),
            ConcreteRole::And(a, b) => {
                let xs = [self.concrete(a, e, v), self.concrete(b, e, v)];
                self.and(&xs)
            }
            ConcreteRole::Or(a, b) => {
                let xs = [self.concrete(a, e, v), self.concrete(b, e, v)];
                self.or(&xs)
            }
            ConcreteRole::Domain(p, c) => {
                let xs = [self.concrete(p, e, v), self.concept(c, e)];
                self.and(&xs)
            }
            ConcreteRole::Range(p, t) => {
                let b = self.data(t, v);
                let xs = [self.concrete(p, e, v), self.lit(b)];
                self.and(&xs)
            }
            ConcreteRole::Restrict(p, c, t) => {
                let b = self.data(t, v);
                let xs = [self.concrete(p, e, v), self.concept(c, e), self.lit(b)];
                self.and(&xs)
            }
        }
    }

    fn data_index(&self, c: &Constant) -> usize {
        self.data
            .iter()
            .position(|d| d.as_ref() == Some(c))
            .unwrap_or_else(|| panic!("constant {c} missing from the signature"))
    }

    /// Data ranges are fixed by the datatype map.
    fn data(&self, t: &DataTerm, v: usize) -> bool {
        let elem = &self.data[v];
        match t {
            DataTerm::Datatype(d) => elem.as_ref().is_some_and(|c| &c.datatype == d),
            DataTerm::Facets { datatype, cnf } => elem.as_ref().is_some_and(|c| {
                &c.datatype == datatype && cnf.holds(&c.value, datatype, &self.kb.dmap)
            }),
            DataTerm::Enum(cs) => elem.as_ref().is_some_and(|c| cs.contains(c)),
            DataTerm::Not(t) => !self.data(t, v),
            DataTerm::And(a, b) => self.data(a, v) && self.data(b, v),
            DataTerm::Or(a, b) => self.data(a, v) || self.data(b, v),
        }
    }

    fn n(&self) -> usize {
        self.exists.len()
    }

    fn nd(&self) -> usize {
        self.data.len()
    }

    /// Every `k`-element subset of `0..n`.
    fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
        fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in start..n {
                cur.push(i);
                go(i + 1, n, k, cur, out);
                cur.pop();
            }
        }
        let mut out = vec![];
        go(0, n, k, &mut vec![], &mut out);
        out
    }

    /// All ordered pairs of abstract elements; callers guard existence.
    fn pairs(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|x| (0..self.n()).map(move |y| (x, y)))
            .collect()
    }

    fn statement(&mut self, st: &Statement) {
        let n = self.n();
        match st {
            Statement::RoleEquiv(a, b) | Statement::RoleSub(a, b) => {
                let equiv = matches!(st, Statement::RoleEquiv(..));
                for (x, y) in self.pairs() {
                    let (ex, ey) = (self.exists[x], self.exists[y]);
                    let (l, r) = (self.role(a, x, y), self.role(b, x, y));
                    self.require(&[!ex, !ey, !l, r]);
                    if equiv {
                        self.require(&[!ex, !ey, l, !r]);
                    }
                }
            }
            Statement::Chain(rs, r) => {
                let len = rs.len();
                let mut tuples: Vec<Vec<usize>> = vec![vec![]];
                for _ in 0..=len {
                    tuples = tuples
                        .into_iter()
                        .flat_map(|t| {
                            (0..n).map(move |i| {
                                let mut t = t.clone();
                                t.push(i);
                                t
                            })
                        })
                        .collect();
                }
                for tup in tuples {
                    let mut clause: Vec<Lit> = tup.iter().map(|&i| !self.exists[i]).collect();
                    for (i, ri) in rs.iter().enumerate() {
                        clause.push(!self.role(ri, tup[i], tup[i + 1]));
                    }
                    clause.push(self.role(r, tup[0], tup[len]));
                    self.require(&clause);
                }
            }
            Statement::Sym(r) => {
                for (x, y) in self.pairs() {
                    let (ex, ey) = (self.exists[x], self.exists[y]);
                    let (a, b) = (self.role(r, x, y), self.role(r, y, x));
                    self.require(&[!ex, !ey, !a, b]);
                }
            }
            Statement::Asym(r) => {
                for (x, y) in self.pairs() {
                    let (ex, ey) = (self.exists[x], self.exists[y]);
                    let (a, b) = (self.role(r, x, y), self.role(r, y, x));
                    self.require(&[!ex, !ey, !a, !b]);
                }
            }
            Statement::Ref(r) | Statement::Irref(r) => {
                let positive = matches!(st, Statement::Ref(_));
                for x in 0..n {
                    let a = self.role(r, x, x);
                    let ex = self.exists[x];
                    self.require(&[!ex, if positive { a } else { !a }]);
                }
            }
            Statement::Tra(r) => {
                for (x, y) in self.pairs() {
                    for z in 0..n {
                        let ex = [self.exists[x], self.exists[y], self.exists[z]];
                        let a = self.role(r, x, y);
                        let b = self.role(r, y, z);
                        let c = self.role(r, x, z);
                        self.require(&[!ex[0], !ex[1], !ex[2], !a, !b, c]);
                    }
                }
            }
            Statement::Fun(r) => {
                for (y, z) in self.pairs() {
                    if y >= z {
                        continue;
                    }
                    for x in 0..n {
                        let ex = [self.exists[x], self.exists[y], self.exists[z]];
                        let a = self.role(r, x, y);
                        let b = self.role(r, x, z);
                        self.require(&[!ex[0], !ex[1], !ex[2], !a, !b]);
                    }
                }
            }
            Statement::RoleDisjoint(a, b) => {
                for (x, y) in self.pairs() {
                    let (ex, ey) = (self.exists[x], self.exists[y]);
                    let (l, r) = (self.role(a, x, y), self.role(b, x, y));
                    self.require(&[!ex, !ey, !l, !r]);
                }
            }
            Statement::ConcreteEquiv(a, b)
            | Statement::ConcreteSub(a, b)
            | Statement::ConcreteDisjoint(a, b) => {
                for x in 0..n {
                    for v in 0..self.nd() {
                        let (ex, ev) = (self.exists[x], self.data_exists[v]);
                        let (l, r) = (self.concrete(a, x, v), self.concrete(b, x, v));
                        match st {
                            Statement::ConcreteDisjoint(..) => self.require(&[!ex, !ev, !l, !r]),
                            _ => {
                                self.require(&[!ex, !ev, !l, r]);
                                if matches!(st, Statement::ConcreteEquiv(..)) {
                                    self.require(&[!ex, !ev, l, !r]);
                                }
                            }
                        }
                    }
                }
            }
            Statement::ConcreteFun(p) => {
                for x in 0..n {
                    for v in 0..self.nd() {
                        for w in v + 1..self.nd() {
                            let ex = [self.exists[x], self.data_exists[v], self.data_exists[w]];
                            let a = self.concrete(p, x, v);
                            let b = self.concrete(p, x, w);
                            self.require(&[!ex[0], !ex[1], !ex[2], !a, !b]);
                        }
                    }
                }
            }
            Statement::ConceptEquiv(a, b) | Statement::ConceptSub(a, b) => {
                let equiv = matches!(st, Statement::ConceptEquiv(..));
                for x in 0..n {
                    let ex = self.exists[x];
                    let (l, r) = (self.concept(a, x), self.concept(b, x));
                    self.require(&[!ex, !l, r]);
                    if equiv {
                        self.require(&[!ex, l, !r]);
                    }
                }
            }
            Statement::AllValues { sub, role, filler } => {
                for (x, y) in self.pairs() {
                    let (ex, ey) = (self.exists[x], self.exists[y]);
                    let s = self.concept(sub, x);
                    let r = self.role(role, x, y);
                    let f = self.concept(filler, y);
                    self.require(&[!ex, !ey, !s, !r, f]);
                }
            }
            Statement::SomeValues { role, filler, sup } => {
                for (x, y) in self.pairs() {
                    let (ex, ey) = (self.exists[x], self.exists[y]);
                    let r = self.role(role, x, y);
                    let f = self.concept(filler, y);
                    let s = self.concept(sup, x);
                    self.require(&[!ex, !ey, !r, !f, s]);
                }
            }
            Statement::AtLeast {
                n: k,
                role,
                filler,
                sup,
            } => {
                for x in 0..n {
                    for set in Self::subsets(n, *k as usize) {
                        let mut clause = vec![!self.exists[x]];
                        for &y in &set {
                            clause.push(!self.exists[y]);
                            clause.push(!self.role(role, x, y));
                            clause.push(!self.concept(filler, y));
                        }
                        clause.push(self.concept(sup, x));
                        self.require(&clause);
                    }
                }
            }
            Statement::AtMost {
                sub,
                n: k,
                role,
                filler,
            } => {
                for x in 0..n {
                    for set in Self::subsets(n, *k as usize + 1) {
                        let mut clause = vec![!self.exists[x], !self.concept(sub, x)];
                        for &y in &set {
                            clause.push(!self.exists[y]);
                            clause.push(!self.role(role, x, y));
                            clause.push(!self.concept(filler, y));
                        }
                        self.require(&clause);
                    }
                }
            }
            Statement::DataEquiv(a, b) | Statement::DataSub(a, b) => {
                let equiv = matches!(st, Statement::DataEquiv(..));
                for v in 0..self.nd() {
                    let (l, r) = (self.data(a, v), self.data(b, v));
                    if (l && !r) || (equiv && r && !l) {
                        let ev = self.data_exists[v];
                        self.require(&[!ev]);
                    }
                }
            }
            Statement::DataAllValues { sub, role, range } => {
                for x in 0..n {
                    for v in 0..self.nd() {
                        if self.data(range, v) {
                            continue;
                        }
                        let (ex, ev) = (self.exists[x], self.data_exists[v]);
                        let s = self.concept(sub, x);
                        let p = self.concrete(role, x, v);
                        self.require(&[!ex, !ev, !s, !p]);
                    }
                }
            }
            Statement::DataSomeValues { role, range, sup } => {
                for x in 0..n {
                    for v in 0..self.nd() {
                        if !self.data(range, v) {
                            continue;
                        }
                        let (ex, ev) = (self.exists[x], self.data_exists[v]);
                        let p = self.concrete(role, x, v);
                        let s = self.concept(sup, x);
                        self.require(&[!ex, !ev, !p, s]);
                    }
                }
            }
            Statement::DataAtLeast {
                n: k,
                role,
                range,
                sup,
            } => {
                for x in 0..n {
                    for set in Self::subsets(self.nd(), *k as usize) {
                        if !set.iter().all(|&v| self.data(range, v)) {
                            continue;
                        }
                        let mut clause = vec![!self.exists[x]];
                        for &v in &set {
                            clause.push(!self.data_exists[v]);
                            clause.push(!self.concrete(role, x, v));
                        }
                        clause.push(self.concept(sup, x));
                        self.require(&clause);
                    }
                }
            }
            Statement::DataAtMost {
                sub,
                n: k,
                role,
                range,
            } => {
                for x in 0..n {
                    for set in Self::subsets(self.nd(), *k as usize + 1) {
                        if !set.iter().all(|&v| self.data(range, v)) {
                            continue;
                        }
                        let mut clause = vec![!self.exists[x], !self.concept(sub, x)];
                        for &v in &set {
                            clause.push(!self.data_exists[v]);
                            clause.push(!self.concrete(role, x, v));
                        }
                        self.require(&clause);
                    }
                }
            }
            Statement::ConceptAssertion(a, c) => {
                for x in 0..n {
                    let at = self.ind(a)[x];
                    let l = self.concept(c, x);
                    self.require(&[!at, l]);
                }
            }
            Statement::RoleAssertion {
                subject,
                object,
                role,
                positive,
            } => {
                for (x, y) in self.pairs() {
                    let (sa, ob) = (self.ind(subject)[x], self.ind(object)[y]);
                    let r = self.role(role, x, y);
                    self.require(&[!sa, !ob, if *positive { r } else { !r }]);
                }
            }
            Statement::Same(a, b) | Statement::Different(a, b) => {
                let same = matches!(st, Statement::Same(..));
                for x in 0..n {
                    let (l, r) = (self.ind(a)[x], self.ind(b)[x]);
                    if same {
                        self.require(&[!l, r]);
                        self.require(&[l, !r]);
                    } else {
                        self.require(&[!l, !r]);
                    }
                }
            }
            Statement::DataAssertion(c, t) => {
                let v = self.data_index(c);
                if !self.data(t, v) {
                    let f = !self.t;
                    self.require(&[f]);
                }
            }
            Statement::ConcreteAssertion {
                subject,
                value,
                role,
                positive,
            } => {
                let v = self.data_index(value);
                for x in 0..n {
                    let at = self.ind(subject)[x];
                    let p = self.concrete(role, x, v);
                    self.require(&[!at, if *positive { p } else { !p }]);
                }
            }
        }
    }
}

/// Whether the KB has a model under the direct semantics.
fn dl_consistent(kb: &KnowledgeBase) -> bool {
    let mut dl = Dl::new(kb);
    for st in kb.rbox.iter().chain(&kb.tbox).chain(&kb.abox) {
        dl.statement(st);
    }
    dl.s.solve().expect("sat solver")
}

fn phi_satisfiable(kb: &KnowledgeBase) -> bool {
    oracle_consistent(kb, &OracleConfig::desk()).expect("oracle within bounds")
}

fn small_no_ref() -> KbShape {
    KbShape {
        max_individuals: 3,
        allow_ref: false,
        ..KbShape::small()
    }
}

fn nested_no_ref() -> KbShape {
    KbShape {
        max_individuals: 3,
        max_axioms: 5,
        depth: 2,
        allow_ref: false,
        pair_axioms_up_to: 3,
        max_nominals: 2,
        ..KbShape::small()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn phi_matches_direct_semantics(seed in any::<u64>()) {
        let kb = gen::kb(&mut gen::rng(seed), &small_no_ref());
        prop_assert_eq!(dl_consistent(&kb), phi_satisfiable(&kb), "{:#?}", kb);
    }

    #[test]
    fn phi_matches_direct_semantics_nested(seed in any::<u64>()) {
        let kb = gen::kb(&mut gen::rng(seed), &nested_no_ref());
        prop_assert_eq!(dl_consistent(&kb), phi_satisfiable(&kb), "{:#?}", kb);
    }
}

#[test]
fn model_finder_sanity() {
    let mut kb = KnowledgeBase::new();
    kb.abox.push(Statement::ConceptAssertion(
        "a".into(),
        Concept::Name("C".into()),
    ));
    assert!(dl_consistent(&kb));
    kb.abox.push(Statement::ConceptAssertion(
        "a".into(),
        Concept::Not(Box::new(Concept::Name("C".into()))),
    ));
    assert!(!dl_consistent(&kb));

    let mut kb = KnowledgeBase::new();
    kb.rbox.push(Statement::Asym(Role::Name("R".into())));
    kb.abox.push(Statement::RoleAssertion {
        subject: "a".into(),
        object: "a".into(),
        role: Role::Name("R".into()),
        positive: true,
    });
    assert!(!dl_consistent(&kb));
}

/// Reflexivity over every element clashes with the data domain in the
/// translated formula, though the KB has a model.
#[test]
fn reflexive_role_with_data_is_a_known_gap() {
    let mut kb = KnowledgeBase::new();
    kb.dmap.add_constant("int", "1");
    kb.rbox.push(Statement::Ref(Role::Name("R".into())));
    kb.abox.push(Statement::DataAssertion(
        Constant::new("1", "int"),
        DataTerm::Datatype("int".into()),
    ));
    assert!(dl_consistent(&kb));
    assert!(!phi_satisfiable(&kb));
}

#[test]
fn corpus_has_both_outcomes() {
    for shape in [small_no_ref(), nested_no_ref()] {
        let (mut yes, mut no) = (0, 0);
        for seed in 0..400 {
            let kb = gen::kb(&mut gen::rng(seed), &shape);
            let dl = dl_consistent(&kb);
            assert_eq!(dl, phi_satisfiable(&kb), "seed {seed}");
            if dl {
                yes += 1;
            } else {
                no += 1;
            }
        }
        eprintln!("consistent {yes}, inconsistent {no}");
        assert!(yes > 20 && no > 20);
    }
}
