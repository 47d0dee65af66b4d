//! Seeded generators of small knowledge bases and queries.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::kb::{
    Concept, ConcreteRole, Constant, DataTerm, Facet, FacetCnf, FacetLiteral, KnowledgeBase, Role,
    Statement,
};
use crate::query::{HoAtom, HoLiteral, HoQuery, Term};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Size limits and constructor mix of generated knowledge bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KbShape {
    pub max_individuals: usize,
    pub max_concepts: usize,
    pub max_roles: usize,
    /// One concrete role and one datatype.
    pub concrete: bool,
    pub max_constants: usize,
    pub max_axioms: usize,
    /// Nesting depth of concept, role and data expressions.
    pub depth: u32,
    pub allow_ref: bool,
    /// Statements with a quantifier or a role axiom.
    pub allow_tbox: bool,
    /// Axioms quantifying over pairs (role axioms, restrictions) are only
    /// drawn when the KB has at most this many individuals.
    pub pair_axioms_up_to: usize,
    /// Largest nominal set.
    pub max_nominals: usize,
}

impl KbShape {
    /// ≤4 individuals, ≤3 concepts, ≤2 roles, one concrete role over a
    /// datatype with ≤2 constants, ≤6 statements, flat expressions.
    pub fn small() -> Self {
        KbShape {
            max_individuals: 4,
            max_concepts: 3,
            max_roles: 2,
            concrete: true,
            max_constants: 2,
            max_axioms: 6,
            depth: 1,
            allow_ref: true,
            allow_tbox: true,
            pair_axioms_up_to: 2,
            max_nominals: 1,
        }
    }

    /// Every constructor, nested, for syntax round trips.
    pub fn syntax() -> Self {
        KbShape {
            max_individuals: 4,
            max_concepts: 3,
            max_roles: 3,
            concrete: true,
            max_constants: 3,
            max_axioms: 12,
            depth: 3,
            allow_ref: true,
            allow_tbox: true,
            pair_axioms_up_to: usize::MAX,
            max_nominals: 2,
        }
    }
}

struct Names {
    individuals: Vec<String>,
    concepts: Vec<String>,
    roles: Vec<String>,
    concrete: Option<String>,
    datatype: String,
    constants: Vec<String>,
    facets: Vec<String>,
}

impl Names {
    fn individual(&self, rng: &mut impl Rng) -> String {
        self.individuals.choose(rng).expect("at least one individual").clone()
    }

    fn constant(&self, rng: &mut impl Rng) -> Constant {
        Constant::new(
            self.constants.choose(rng).expect("at least one constant"),
            &self.datatype,
        )
    }
}

fn pick(rng: &mut impl Rng, names: &[String]) -> String {
    names.choose(rng).expect("nonempty name list").clone()
}

struct Gen<'a, R> {
    rng: &'a mut R,
    names: Names,
    shape: &'a KbShape,
    pairs: bool,
}

impl<R: Rng> Gen<'_, R> {
    fn concept(&mut self, depth: u32) -> Concept {
        let leaf = depth == 0 || self.rng.gen_bool(0.5);
        if leaf {
            return match self.rng.gen_range(0..10) {
                0 => Concept::Top,
                1 => Concept::Bottom,
                2 => {
                    let n = self
                        .rng
                        .gen_range(1..=self.shape.max_nominals.min(self.names.individuals.len()));
                    let mut v: Vec<String> = self
                        .names
                        .individuals
                        .choose_multiple(self.rng, n)
                        .cloned()
                        .collect();
                    v.sort();
                    Concept::Nominals(v)
                }
                _ => Concept::Name(pick(self.rng, &self.names.concepts)),
            };
        }
        let d = depth - 1;
        match self.rng.gen_range(0..7) {
            0 | 1 => Concept::not(self.concept(d)),
            2 => Concept::and(self.concept(d), self.concept(d)),
            3 => Concept::or(self.concept(d), self.concept(d)),
            4 => Concept::SelfRestriction(Box::new(self.role(d))),
            5 => Concept::HasValue(Box::new(self.role(d)), self.names.individual(self.rng)),
            _ => match self.names.concrete.is_some() {
                true => {
                    let p = self.concrete(d);
                    let e = self.names.constant(self.rng);
                    Concept::HasData(Box::new(p), e)
                }
                false => Concept::not(self.concept(d)),
            },
        }
    }

    fn role(&mut self, depth: u32) -> Role {
        if depth == 0 || self.rng.gen_bool(0.6) {
            return if self.rng.gen_range(0..8) == 0 {
                Role::Universal
            } else {
                Role::Name(pick(self.rng, &self.names.roles))
            };
        }
        let d = depth - 1;
        match self.rng.gen_range(0..9) {
            0 => Role::Inverse(Box::new(self.role(d))),
            1 => Role::Not(Box::new(self.role(d))),
            2 => Role::And(Box::new(self.role(d)), Box::new(self.role(d))),
            3 => Role::Or(Box::new(self.role(d)), Box::new(self.role(d))),
            4 => Role::Domain(Box::new(self.role(d)), self.concept(d)),
            5 => Role::Range(Box::new(self.role(d)), self.concept(d)),
            6 => Role::Restrict(Box::new(self.role(d)), self.concept(d), self.concept(d)),
            7 => Role::Identity(self.concept(d)),
            _ => Role::Product(self.concept(d), self.concept(d)),
        }
    }

    fn concrete(&mut self, depth: u32) -> ConcreteRole {
        let name = self.names.concrete.clone().expect("concrete role enabled");
        if depth == 0 || self.rng.gen_bool(0.6) {
            return ConcreteRole::Name(name);
        }
        let d = depth - 1;
        match self.rng.gen_range(0..6) {
            0 => ConcreteRole::Not(Box::new(self.concrete(d))),
            1 => ConcreteRole::And(Box::new(self.concrete(d)), Box::new(self.concrete(d))),
            2 => ConcreteRole::Or(Box::new(self.concrete(d)), Box::new(self.concrete(d))),
            3 => ConcreteRole::Domain(Box::new(self.concrete(d)), self.concept(d)),
            4 => ConcreteRole::Range(Box::new(self.concrete(d)), self.data(d)),
            _ => ConcreteRole::Restrict(Box::new(self.concrete(d)), self.concept(d), self.data(d)),
        }
    }

    fn facet_cnf(&mut self) -> FacetCnf {
        let mut clauses = Vec::new();
        for _ in 0..self.rng.gen_range(1..=2) {
            let mut c = Vec::new();
            for _ in 0..self.rng.gen_range(1..=2) {
                let facet = match self.rng.gen_range(0..6) {
                    0 => Facet::Top,
                    1 => Facet::Bottom,
                    _ => match self.names.facets.choose(self.rng) {
                        Some(f) => Facet::Named(f.clone()),
                        None => Facet::Top,
                    },
                };
                c.push(FacetLiteral {
                    positive: self.rng.gen_bool(0.7),
                    facet,
                });
            }
            clauses.push(c);
        }
        FacetCnf::new(clauses)
    }

    fn data(&mut self, depth: u32) -> DataTerm {
        let d0 = self.names.datatype.clone();
        if depth == 0 || self.rng.gen_bool(0.5) {
            return match self.rng.gen_range(0..4) {
                0 => DataTerm::Datatype(d0),
                1 => DataTerm::Facets {
                    datatype: d0,
                    cnf: self.facet_cnf(),
                },
                _ => {
                    let n = self.rng.gen_range(1..=self.names.constants.len());
                    let mut v: Vec<Constant> = self
                        .names
                        .constants
                        .choose_multiple(self.rng, n)
                        .map(|c| Constant::new(c, &d0))
                        .collect();
                    v.sort();
                    DataTerm::Enum(v)
                }
            };
        }
        let d = depth - 1;
        match self.rng.gen_range(0..3) {
            0 => DataTerm::Not(Box::new(self.data(d))),
            1 => DataTerm::And(Box::new(self.data(d)), Box::new(self.data(d))),
            _ => DataTerm::Or(Box::new(self.data(d)), Box::new(self.data(d))),
        }
    }

    fn assertion(&mut self) -> Statement {
        let d = self.shape.depth.saturating_sub(1);
        let k = if self.names.concrete.is_some() { 6 } else { 4 };
        match self.rng.gen_range(0..k + 2) {
            0..=2 => Statement::ConceptAssertion(self.names.individual(self.rng), self.concept(d)),
            3 => Statement::RoleAssertion {
                subject: self.names.individual(self.rng),
                object: self.names.individual(self.rng),
                role: self.role(d),
                positive: self.rng.gen_bool(0.75),
            },
            4 => {
                let (a, b) = (
                    self.names.individual(self.rng),
                    self.names.individual(self.rng),
                );
                if self.rng.gen_bool(0.5) {
                    Statement::Same(a, b)
                } else {
                    Statement::Different(a, b)
                }
            }
            5 if self.names.concrete.is_none() => {
                Statement::ConceptAssertion(self.names.individual(self.rng), self.concept(d))
            }
            5 => Statement::ConcreteAssertion {
                subject: self.names.individual(self.rng),
                value: self.names.constant(self.rng),
                role: self.concrete(d),
                positive: self.rng.gen_bool(0.75),
            },
            _ => {
                let e = self.names.constant(self.rng);
                Statement::DataAssertion(e, self.data(d))
            }
        }
    }

    fn axiom(&mut self) -> Statement {
        let d = self.shape.depth.saturating_sub(1);
        let concrete = self.names.concrete.is_some();
        loop {
            let k = self.rng.gen_range(0..24);
            if !self.pairs && !matches!(k, 0..=2 | 23) {
                continue;
            }
            let s = match k {
                0 | 1 => Statement::ConceptSub(self.concept(d), self.concept(d)),
                2 => Statement::ConceptEquiv(self.concept(d), self.concept(d)),
                3 | 4 => Statement::AllValues {
                    sub: self.concept(d),
                    role: self.role(d),
                    filler: self.concept(d),
                },
                5 | 6 => Statement::SomeValues {
                    role: self.role(d),
                    filler: self.concept(d),
                    sup: self.concept(d),
                },
                7 => Statement::AtLeast {
                    n: 1,
                    role: self.role(d),
                    filler: self.concept(d),
                    sup: self.concept(d),
                },
                8 => Statement::AtMost {
                    sub: self.concept(d),
                    n: self.rng.gen_range(1..=2),
                    role: self.role(d),
                    filler: self.concept(d),
                },
                9 => Statement::RoleSub(self.role(d), self.role(d)),
                10 => Statement::RoleEquiv(self.role(d), self.role(d)),
                11 => {
                    let lhs = (0..2)
                        .map(|_| Role::Name(pick(self.rng, &self.names.roles)))
                        .collect();
                    Statement::Chain(lhs, self.role(d))
                }
                12 => Statement::Sym(self.role(d)),
                13 => Statement::Asym(self.role(d)),
                14 if self.shape.allow_ref => Statement::Ref(self.role(d)),
                15 => Statement::Irref(self.role(d)),
                16 => Statement::Tra(self.role(d)),
                17 => Statement::Fun(self.role(d)),
                18 => Statement::RoleDisjoint(self.role(d), self.role(d)),
                19 if concrete => match self.rng.gen_range(0..4) {
                    0 => Statement::ConcreteSub(self.concrete(d), self.concrete(d)),
                    1 => Statement::ConcreteEquiv(self.concrete(d), self.concrete(d)),
                    2 => Statement::ConcreteDisjoint(self.concrete(d), self.concrete(d)),
                    _ => Statement::ConcreteFun(self.concrete(d)),
                },
                20 if concrete => Statement::DataAllValues {
                    sub: self.concept(d),
                    role: self.concrete(d),
                    range: self.data(d),
                },
                21 if concrete => Statement::DataSomeValues {
                    role: self.concrete(d),
                    range: self.data(d),
                    sup: self.concept(d),
                },
                22 if concrete => {
                    if self.rng.gen_bool(0.5) {
                        Statement::DataAtLeast {
                            n: 1,
                            role: self.concrete(d),
                            range: self.data(d),
                            sup: self.concept(d),
                        }
                    } else {
                        Statement::DataAtMost {
                            sub: self.concept(d),
                            n: 1,
                            role: self.concrete(d),
                            range: self.data(d),
                        }
                    }
                }
                23 if concrete => {
                    if self.rng.gen_bool(0.5) {
                        Statement::DataSub(self.data(d), self.data(d))
                    } else {
                        Statement::DataEquiv(self.data(d), self.data(d))
                    }
                }
                _ => continue,
            };
            return s;
        }
    }
}

/// A random well-formed knowledge base within `shape`.
pub fn kb(rng: &mut impl Rng, shape: &KbShape) -> KnowledgeBase {
    let ni = rng.gen_range(1..=shape.max_individuals.max(1));
    let nc = rng.gen_range(1..=shape.max_concepts.max(1));
    let nr = rng.gen_range(1..=shape.max_roles.max(1));
    let concrete = shape.concrete && rng.gen_bool(0.5);
    let nk = rng.gen_range(1..=shape.max_constants.max(1));
    let names = Names {
        individuals: (0..ni).map(|i| format!("a{i}")).collect(),
        concepts: (0..nc).map(|i| format!("C{i}")).collect(),
        roles: (0..nr).map(|i| format!("R{i}")).collect(),
        concrete: concrete.then(|| "P0".to_string()),
        datatype: "d0".into(),
        constants: (0..nk).map(|i| i.to_string()).collect(),
        facets: if concrete && rng.gen_bool(0.5) {
            vec!["f0".into()]
        } else {
            vec![]
        },
    };
    let mut kb = KnowledgeBase::new();
    if concrete {
        for c in &names.constants {
            kb.dmap.add_constant(&names.datatype, c);
        }
        for f in &names.facets {
            let ext = names.constants.iter().take(1).cloned().collect();
            kb.dmap.add_facet(&names.datatype, f, ext);
        }
    }
    let n = rng.gen_range(1..=shape.max_axioms.max(1));
    let mut g = Gen {
        rng,
        pairs: ni <= shape.pair_axioms_up_to,
        names,
        shape,
    };
    // the first statement always mentions an individual
    kb.add(g.assertion());
    for _ in 1..n {
        let s = if shape.allow_tbox && g.rng.gen_bool(0.5) {
            g.axiom()
        } else {
            g.assertion()
        };
        kb.add(s);
    }
    kb
}

fn var_term<R: Rng + ?Sized>(rng: &mut R, pool: &[&str]) -> Term {
    Term::Var(pool.choose(rng).expect("variable pool").to_string())
}

/// A random query of up to `max_literals` literals over the names of `kb`.
/// Negative literals mirror negative ABox assertions of `kb`.
pub fn query(rng: &mut impl Rng, kb: &KnowledgeBase, max_literals: usize) -> HoQuery {
    let sig = crate::kb::signature(kb);
    let individuals: Vec<String> = sig.individuals.iter().cloned().collect();
    let concepts: Vec<String> = sig.concepts.iter().cloned().collect();
    let roles: Vec<String> = sig
        .abstract_roles
        .iter()
        .filter(|r| *r != crate::kb::UNIVERSAL_ROLE)
        .cloned()
        .collect();
    let concrete: Vec<String> = sig.concrete_roles.iter().cloned().collect();
    let constants: Vec<Constant> = kb
        .dmap
        .constants
        .iter()
        .flat_map(|(d, cs)| cs.iter().map(move |c| Constant::new(c, d)))
        .collect();
    let negatives: Vec<HoAtom> = kb
        .abox
        .iter()
        .filter_map(|s| match s {
            Statement::RoleAssertion {
                subject,
                object,
                role: Role::Name(r),
                positive: false,
            } => Some(HoAtom::Role(
                Role::Name(r.clone()),
                Term::Individual(subject.clone()),
                Term::Individual(object.clone()),
            )),
            Statement::ConcreteAssertion {
                subject,
                value,
                role: ConcreteRole::Name(p),
                positive: false,
            } => Some(HoAtom::Concrete(
                ConcreteRole::Name(p.clone()),
                Term::Individual(subject.clone()),
                Term::Constant(value.clone()),
            )),
            Statement::ConceptAssertion(a, Concept::Not(c)) => match c.as_ref() {
                Concept::Name(n) => Some(HoAtom::Concept(
                    Concept::Name(n.clone()),
                    Term::Individual(a.clone()),
                )),
                _ => None,
            },
            Statement::Different(a, b) => Some(HoAtom::SameIndividual(
                Term::Individual(a.clone()),
                Term::Individual(b.clone()),
            )),
            _ => None,
        })
        .collect();
    let ivars = ["?x", "?y"];
    let uvars = ["?u"];
    let n = rng.gen_range(1..=max_literals.max(1));
    let mut lits = Vec::new();
    for _ in 0..n {
        let w = |rng: &mut dyn rand::RngCore| -> Term {
            if individuals.is_empty() || rng.gen_bool(0.6) {
                var_term(rng, &ivars)
            } else {
                Term::Individual(individuals.choose(rng).expect("nonempty").clone())
            }
        };
        let u = |rng: &mut dyn rand::RngCore| -> Term {
            if constants.is_empty() || rng.gen_bool(0.6) {
                var_term(rng, &uvars)
            } else {
                Term::Constant(constants.choose(rng).expect("nonempty").clone())
            }
        };
        if !negatives.is_empty() && rng.gen_bool(0.15) {
            lits.push(HoLiteral::neg(
                negatives.choose(rng).expect("nonempty").clone(),
            ));
            continue;
        }
        let shape = rng.gen_range(0..8);
        let atom = match shape {
            0 if !concepts.is_empty() => {
                HoAtom::Concept(Concept::Name(pick(rng, &concepts)), w(rng))
            }
            1 if !roles.is_empty() => HoAtom::Role(Role::Name(pick(rng, &roles)), w(rng), w(rng)),
            2 if !concrete.is_empty() => {
                HoAtom::Concrete(ConcreteRole::Name(pick(rng, &concrete)), w(rng), u(rng))
            }
            3 => HoAtom::ConceptVar("?c".into(), w(rng)),
            4 => HoAtom::RoleVar("?r".into(), w(rng), w(rng)),
            5 if !concrete.is_empty() => HoAtom::ConcreteVar("?p".into(), w(rng), u(rng)),
            6 => HoAtom::SameIndividual(w(rng), w(rng)),
            7 if !constants.is_empty() => HoAtom::SameValue(u(rng), u(rng)),
            _ => HoAtom::ConceptVar("?c".into(), w(rng)),
        };
        lits.push(HoLiteral::pos(atom));
    }
    HoQuery(lits)
}
