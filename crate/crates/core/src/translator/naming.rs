//! Bijection between DL symbols/terms and set variables.

use std::collections::BTreeMap;

use crate::kb::{Concept, ConcreteRole, Constant, DataTerm, FacetCnf, Role};
use crate::query::Entity;
use crate::setcalc::{Level, Tag, Var, VarPool, Witness};

#[derive(Debug, Clone, Default)]
pub struct NamingMap {
    pub pool: VarPool,
    pub(crate) concepts: BTreeMap<Concept, Var>,
    pub(crate) roles: BTreeMap<Role, Var>,
    pub(crate) concrete: BTreeMap<ConcreteRole, Var>,
    pub(crate) data: BTreeMap<DataTerm, Var>,
    /// Nominal sets with two or more members.
    pub(crate) nominal_sets: BTreeMap<Var, Vec<String>>,
    /// Data ranges with two or more members.
    pub(crate) data_ranges: BTreeMap<Var, Vec<Constant>>,
    pub(crate) facet_exprs: BTreeMap<Var, (String, FacetCnf)>,
    next_aux: u32,
}

impl NamingMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn individual(&mut self, a: &str) -> Var {
        self.pool.intern(Level::Zero, Tag::Individual(a.to_string()))
    }

    pub fn constant(&mut self, e: &Constant) -> Var {
        self.pool.intern(
            Level::Zero,
            Tag::Constant {
                value: e.value.clone(),
                datatype: e.datatype.clone(),
            },
        )
    }

    pub fn witness(&mut self, w: Witness) -> Var {
        self.pool.intern(Level::Zero, Tag::Witness(w))
    }

    pub fn concept_name(&mut self, n: &str) -> Var {
        self.pool.intern(Level::One, Tag::Concept(n.to_string()))
    }

    pub fn role_name(&mut self, n: &str) -> Var {
        if n == crate::kb::UNIVERSAL_ROLE {
            return self.universal();
        }
        self.pool.intern(Level::Three, Tag::Role(n.to_string()))
    }

    pub fn concrete_name(&mut self, n: &str) -> Var {
        self.pool.intern(Level::Three, Tag::ConcreteRole(n.to_string()))
    }

    pub fn datatype(&mut self, d: &str) -> Var {
        self.pool.intern(Level::One, Tag::Datatype(d.to_string()))
    }

    pub fn facet(&mut self, f: &str) -> Var {
        self.pool.intern(Level::One, Tag::Facet(f.to_string()))
    }

    pub fn top(&mut self) -> Var {
        self.pool.intern(Level::One, Tag::Top)
    }

    pub fn bottom(&mut self) -> Var {
        self.pool.intern(Level::One, Tag::Bottom)
    }

    pub fn individuals(&mut self) -> Var {
        self.pool.intern(Level::One, Tag::Individuals)
    }

    pub fn data(&mut self) -> Var {
        self.pool.intern(Level::One, Tag::Data)
    }

    pub fn datatype_top(&mut self, d: &str) -> Var {
        self.pool.intern(Level::One, Tag::DatatypeTop(d.to_string()))
    }

    pub fn datatype_bottom(&mut self, d: &str) -> Var {
        self.pool.intern(Level::One, Tag::DatatypeBottom(d.to_string()))
    }

    pub fn universal(&mut self) -> Var {
        self.pool.intern(Level::Three, Tag::Universal)
    }

    pub fn aux(&mut self, level: Level) -> Var {
        self.next_aux += 1;
        self.pool.intern(level, Tag::Aux(self.next_aux))
    }

    pub fn query_var(&mut self, name: &str, level: Level) -> Var {
        self.pool.intern(level, Tag::Query(name.to_string()))
    }

    pub fn lookup_concept(&self, c: &Concept) -> Option<Var> {
        match c {
            Concept::Name(n) => self.pool.get(Level::One, &Tag::Concept(n.clone())),
            Concept::Top => self.pool.get(Level::One, &Tag::Top),
            Concept::Bottom => self.pool.get(Level::One, &Tag::Bottom),
            _ => self.concepts.get(c).copied(),
        }
    }

    pub fn lookup_role(&self, r: &Role) -> Option<Var> {
        match r {
            Role::Name(n) if n == crate::kb::UNIVERSAL_ROLE => {
                self.pool.get(Level::Three, &Tag::Universal)
            }
            Role::Name(n) => self.pool.get(Level::Three, &Tag::Role(n.clone())),
            Role::Universal => self.pool.get(Level::Three, &Tag::Universal),
            _ => self.roles.get(r).copied(),
        }
    }

    pub fn lookup_concrete(&self, p: &ConcreteRole) -> Option<Var> {
        match p {
            ConcreteRole::Name(n) => self.pool.get(Level::Three, &Tag::ConcreteRole(n.clone())),
            _ => self.concrete.get(p).copied(),
        }
    }

    /// Variable standing for a KB entity, if the entity occurs.
    pub fn entity_var(&self, e: &Entity) -> Option<Var> {
        match e {
            Entity::Individual(a) => self.pool.get(Level::Zero, &Tag::Individual(a.clone())),
            Entity::Constant(c) => self.pool.get(
                Level::Zero,
                &Tag::Constant {
                    value: c.value.clone(),
                    datatype: c.datatype.clone(),
                },
            ),
            Entity::Concept(n) => self.pool.get(Level::One, &Tag::Concept(n.clone())),
            Entity::Role(n) => self.lookup_role(&Role::name(n)),
            Entity::ConcreteRole(n) => self.pool.get(Level::Three, &Tag::ConcreteRole(n.clone())),
            Entity::Internal { .. } => None,
        }
    }

    /// Reverse lookup; `None` for internal variables.
    pub fn entity(&self, v: Var) -> Option<Entity> {
        match self.pool.tag(v) {
            Tag::Individual(a) => Some(Entity::Individual(a.clone())),
            Tag::Constant { value, datatype } => {
                Some(Entity::Constant(Constant::new(value, datatype)))
            }
            Tag::Concept(n) => Some(Entity::Concept(n.clone())),
            Tag::Role(n) => Some(Entity::Role(n.clone())),
            Tag::Universal => Some(Entity::Role(crate::kb::UNIVERSAL_ROLE.to_string())),
            Tag::ConcreteRole(n) => Some(Entity::ConcreteRole(n.clone())),
            _ => None,
        }
    }

    pub fn is_internal(&self, v: Var) -> bool {
        self.entity(v).is_none()
    }

    pub fn name(&self, v: Var) -> String {
        self.pool.name(v)
    }
}
