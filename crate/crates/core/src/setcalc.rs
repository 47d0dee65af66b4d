//! The quantifier-restricted set-theoretic sublanguage produced by the
//! translator: tagged variables of levels 0, 1 and 3, ground literals,
//! clauses, purely universal formulae, finite interpretations.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    Zero,
    One,
    Three,
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::Zero => write!(f, "0"),
            Level::One => write!(f, "1"),
            Level::Three => write!(f, "3"),
        }
    }
}

/// Interned handle for a set variable. Only meaningful together with the
/// [`VarPool`] that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(u32);

impl Var {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Witness {
    Individuals,
    Data,
    Datatype(String),
}

/// Provenance of a set variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    Individual(String),
    Constant { value: String, datatype: String },
    Bound(u32),
    Witness(Witness),
    Concept(String),
    Datatype(String),
    Facet(String),
    FacetExpr(String),
    Nominals(Vec<String>),
    DataRange(Vec<String>),
    Top,
    Bottom,
    Individuals,
    Data,
    DatatypeTop(String),
    DatatypeBottom(String),
    Role(String),
    ConcreteRole(String),
    Universal,
    /// Fresh definitional name introduced while flattening nested terms.
    Aux(u32),
    Query(String),
}

#[derive(Debug, Clone)]
struct VarInfo {
    level: Level,
    tag: Tag,
}

/// Interning table for set variables; tags are injective per level.
#[derive(Debug, Clone, Default)]
pub struct VarPool {
    infos: Vec<VarInfo>,
    index: HashMap<(Level, Tag), Var>,
}

impl VarPool {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn intern(&mut self, level: Level, tag: Tag) -> Var {
        if let Some(v) = self.index.get(&(level, tag.clone())) {
            return *v;
        }
        let v = Var(self.infos.len() as u32);
        self.infos.push(VarInfo {
            level,
            tag: tag.clone(),
        });
        self.index.insert((level, tag), v);
        v
    }

    pub fn get(&self, level: Level, tag: &Tag) -> Option<Var> {
        self.index.get(&(level, tag.clone())).copied()
    }

    pub fn level(&self, v: Var) -> Level {
        self.infos[v.index()].level
    }

    pub fn tag(&self, v: Var) -> &Tag {
        &self.infos[v.index()].tag
    }

    pub fn len(&self) -> usize {
        self.infos.len()
    }

    pub fn is_empty(&self) -> bool {
        self.infos.is_empty()
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> + '_ {
        (0..self.infos.len() as u32).map(Var)
    }

    pub fn vars_of_level(&self, level: Level) -> impl Iterator<Item = Var> + '_ {
        self.vars().filter(move |v| self.level(*v) == level)
    }

    /// Canonical textual name of a variable.
    pub fn name(&self, v: Var) -> String {
        let level = self.level(v);
        match self.tag(v) {
            Tag::Individual(a) => format!("x_{a}"),
            Tag::Constant { value, datatype } => format!("x_\"{value}\"^{datatype}"),
            Tag::Bound(n) => format!("z{n}"),
            Tag::Witness(Witness::Individuals) => "w_I".to_string(),
            Tag::Witness(Witness::Data) => "w_D".to_string(),
            Tag::Witness(Witness::Datatype(d)) => format!("w_dt_{d}"),
            Tag::Concept(c) => c.clone(),
            Tag::Datatype(d) => d.clone(),
            Tag::Facet(f) => f.clone(),
            Tag::FacetExpr(s) => format!("[{s}]"),
            Tag::Nominals(names) => format!("{{{}}}", names.join(",")),
            Tag::DataRange(values) => format!(
                "{{{}}}",
                values
                    .iter()
                    .map(|v| format!("\"{v}\""))
                    .collect::<Vec<_>>()
                    .join(",")
            ),
            Tag::Top => "X_Top".to_string(),
            Tag::Bottom => "X_Bot".to_string(),
            Tag::Individuals => "X_I".to_string(),
            Tag::Data => "X_D".to_string(),
            Tag::DatatypeTop(d) => format!("X_Top_{d}"),
            Tag::DatatypeBottom(d) => format!("X_Bot_{d}"),
            Tag::Role(r) => r.clone(),
            Tag::ConcreteRole(p) => p.clone(),
            Tag::Universal => "U".to_string(),
            Tag::Aux(n) => format!("X{level}#{n}"),
            Tag::Query(q) => match level {
                Level::Zero => format!("x_{q}"),
                _ => q.clone(),
            },
        }
    }

    pub fn show<T: Render + ?Sized>(&self, item: &T) -> String {
        let mut out = String::new();
        item.render(self, &mut out);
        out
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SetError {
    #[error("variable {0} has no value in the interpretation")]
    Unassigned(String),
    #[error("a clause needs at least one disjunct")]
    EmptyClause,
    #[error("quantified variable {0} occurs twice in the prefix")]
    DuplicateQuantifier(String),
    #[error("substituting {from} by {to} would capture a quantified variable")]
    Capture { from: String, to: String },
    #[error("substitution maps {from} to {to} across levels")]
    LevelMismatch { from: String, to: String },
    #[error("variable {var} used at level {found}, expected level {expected}")]
    WrongLevel {
        var: String,
        expected: Level,
        found: Level,
    },
}

/// Atomic formula over level-0 arguments. Equalities are stored with
/// their arguments in ascending order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    Eq(Var, Var),
    Mem1(Var, Var),
    Mem3(Var, Var, Var),
}

impl Atom {
    pub fn eq(x: Var, y: Var) -> Atom {
        if x <= y {
            Atom::Eq(x, y)
        } else {
            Atom::Eq(y, x)
        }
    }

    pub fn mem1(x: Var, set: Var) -> Atom {
        Atom::Mem1(x, set)
    }

    pub fn mem3(x: Var, y: Var, rel: Var) -> Atom {
        Atom::Mem3(x, y, rel)
    }

    pub fn level0_args(&self) -> Vec<Var> {
        match *self {
            Atom::Eq(x, y) | Atom::Mem3(x, y, _) => vec![x, y],
            Atom::Mem1(x, _) => vec![x],
        }
    }

    /// The level-1 or level-3 variable, if any.
    pub fn set_var(&self) -> Option<Var> {
        match *self {
            Atom::Eq(..) => None,
            Atom::Mem1(_, s) | Atom::Mem3(_, _, s) => Some(s),
        }
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut vs = self.level0_args();
        vs.extend(self.set_var());
        vs
    }

    pub fn map(&self, f: impl Fn(Var) -> Var) -> Atom {
        match *self {
            Atom::Eq(x, y) => Atom::eq(f(x), f(y)),
            Atom::Mem1(x, s) => Atom::Mem1(f(x), f(s)),
            Atom::Mem3(x, y, r) => Atom::Mem3(f(x), f(y), f(r)),
        }
    }

    pub fn is_reflexive_eq(&self) -> bool {
        matches!(self, Atom::Eq(x, y) if x == y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    pub atom: Atom,
    pub positive: bool,
}

impl Literal {
    pub fn pos(atom: Atom) -> Self {
        Literal {
            atom,
            positive: true,
        }
    }

    pub fn neg(atom: Atom) -> Self {
        Literal {
            atom,
            positive: false,
        }
    }

    pub fn complement(&self) -> Literal {
        Literal {
            atom: self.atom,
            positive: !self.positive,
        }
    }

    pub fn map(&self, f: impl Fn(Var) -> Var) -> Literal {
        Literal {
            atom: self.atom.map(f),
            positive: self.positive,
        }
    }
}

/// Nonempty disjunction of literals, kept sorted and free of duplicates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clause(Vec<Literal>);

impl Clause {
    pub fn new(mut lits: Vec<Literal>) -> Result<Clause, SetError> {
        if lits.is_empty() {
            return Err(SetError::EmptyClause);
        }
        lits.sort();
        lits.dedup();
        Ok(Clause(lits))
    }

    pub fn unit(lit: Literal) -> Clause {
        Clause(vec![lit])
    }

    pub fn literals(&self) -> &[Literal] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn map(&self, f: impl Fn(Var) -> Var) -> Clause {
        let mut lits: Vec<Literal> = self.0.iter().map(|l| l.map(&f)).collect();
        lits.sort();
        lits.dedup();
        Clause(lits)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.0.iter().flat_map(|l| l.atom.vars()).collect()
    }
}

/// `(forall z1)...(forall zn) matrix` with the matrix in CNF.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PurelyUniversal {
    bound: Vec<Var>,
    matrix: Vec<Clause>,
}

impl PurelyUniversal {
    pub fn new(bound: Vec<Var>, matrix: Vec<Clause>) -> Result<Self, SetError> {
        let mut seen = BTreeSet::new();
        for v in &bound {
            if !seen.insert(*v) {
                return Err(SetError::DuplicateQuantifier(format!("{v:?}")));
            }
        }
        Ok(PurelyUniversal { bound, matrix })
    }

    pub fn bound(&self) -> &[Var] {
        &self.bound
    }

    pub fn matrix(&self) -> &[Clause] {
        &self.matrix
    }

    /// Variables occurring free in the matrix.
    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut vs: BTreeSet<Var> = self.matrix.iter().flat_map(|c| c.vars()).collect();
        for b in &self.bound {
            vs.remove(b);
        }
        vs
    }
}

/// Conjunction of purely universal formulae and ground literals.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Formula {
    pub universals: Vec<PurelyUniversal>,
    pub ground: Vec<Literal>,
}

impl Formula {
    pub fn vars_of_level(&self, pool: &VarPool, level: Level) -> BTreeSet<Var> {
        let bound: BTreeSet<Var> = self
            .universals
            .iter()
            .flat_map(|u| u.bound.iter().copied())
            .collect();
        let mut out = BTreeSet::new();
        for u in &self.universals {
            for c in &u.matrix {
                out.extend(c.vars());
            }
        }
        for l in &self.ground {
            out.extend(l.atom.vars());
        }
        out.retain(|v| pool.level(*v) == level && !bound.contains(v));
        out
    }
}

/// Finite interpretation; the domain is `0..domain`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Interpretation {
    pub domain: usize,
    pub level0: BTreeMap<Var, usize>,
    pub level1: BTreeMap<Var, BTreeSet<usize>>,
    pub level3: BTreeMap<Var, BTreeSet<(usize, usize)>>,
}

impl Interpretation {
    fn element(&self, v: Var, local: &[(Var, usize)], pool: &VarPool) -> Result<usize, SetError> {
        if let Some((_, e)) = local.iter().rev().find(|(b, _)| *b == v) {
            return Ok(*e);
        }
        self.level0
            .get(&v)
            .copied()
            .ok_or_else(|| SetError::Unassigned(pool.name(v)))
    }

    fn literal_holds(
        &self,
        lit: &Literal,
        local: &[(Var, usize)],
        pool: &VarPool,
    ) -> Result<bool, SetError> {
        let truth = match lit.atom {
            Atom::Eq(x, y) => self.element(x, local, pool)? == self.element(y, local, pool)?,
            Atom::Mem1(x, s) => {
                let e = self.element(x, local, pool)?;
                self.level1
                    .get(&s)
                    .ok_or_else(|| SetError::Unassigned(pool.name(s)))?
                    .contains(&e)
            }
            Atom::Mem3(x, y, r) => {
                let pair = (
                    self.element(x, local, pool)?,
                    self.element(y, local, pool)?,
                );
                self.level3
                    .get(&r)
                    .ok_or_else(|| SetError::Unassigned(pool.name(r)))?
                    .contains(&pair)
            }
        };
        Ok(truth == lit.positive)
    }

    fn clause_holds(
        &self,
        clause: &Clause,
        local: &[(Var, usize)],
        pool: &VarPool,
    ) -> Result<bool, SetError> {
        for l in clause.literals() {
            if self.literal_holds(l, local, pool)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    fn universal_holds(
        &self,
        u: &PurelyUniversal,
        local: &mut Vec<(Var, usize)>,
        depth: usize,
        pool: &VarPool,
    ) -> Result<bool, SetError> {
        if depth == u.bound.len() {
            for c in &u.matrix {
                if !self.clause_holds(c, local, pool)? {
                    return Ok(false);
                }
            }
            return Ok(true);
        }
        for e in 0..self.domain {
            local.push((u.bound[depth], e));
            let ok = self.universal_holds(u, local, depth + 1, pool)?;
            local.pop();
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Tarskian truth of a formula shape in a finite interpretation.
pub trait Evaluate {
    fn evaluate(&self, m: &Interpretation, pool: &VarPool) -> Result<bool, SetError>;
}

impl Evaluate for Literal {
    fn evaluate(&self, m: &Interpretation, pool: &VarPool) -> Result<bool, SetError> {
        m.literal_holds(self, &[], pool)
    }
}

impl Evaluate for Clause {
    fn evaluate(&self, m: &Interpretation, pool: &VarPool) -> Result<bool, SetError> {
        m.clause_holds(self, &[], pool)
    }
}

impl Evaluate for PurelyUniversal {
    fn evaluate(&self, m: &Interpretation, pool: &VarPool) -> Result<bool, SetError> {
        m.universal_holds(self, &mut Vec::new(), 0, pool)
    }
}

impl Evaluate for Formula {
    fn evaluate(&self, m: &Interpretation, pool: &VarPool) -> Result<bool, SetError> {
        for l in &self.ground {
            if !l.evaluate(m, pool)? {
                return Ok(false);
            }
        }
        for u in &self.universals {
            if !u.evaluate(m, pool)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

pub fn complement(l: &Literal) -> Literal {
    l.complement()
}

/// Level-respecting variable mapping.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Substitution(BTreeMap<Var, Var>);

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs(
        pairs: impl IntoIterator<Item = (Var, Var)>,
        pool: &VarPool,
    ) -> Result<Self, SetError> {
        let mut s = Substitution::new();
        for (from, to) in pairs {
            s.insert(from, to, pool)?;
        }
        Ok(s)
    }

    pub fn insert(&mut self, from: Var, to: Var, pool: &VarPool) -> Result<(), SetError> {
        if pool.level(from) != pool.level(to) {
            return Err(SetError::LevelMismatch {
                from: pool.name(from),
                to: pool.name(to),
            });
        }
        self.0.insert(from, to);
        Ok(())
    }

    pub fn get(&self, v: Var) -> Option<Var> {
        self.0.get(&v).copied()
    }

    pub fn apply(&self, v: Var) -> Var {
        self.get(v).unwrap_or(v)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Var, Var)> + '_ {
        self.0.iter().map(|(a, b)| (*a, *b))
    }

    /// `self · other`: apply `self` first, then `other`.
    pub fn then(&self, other: &Substitution) -> Substitution {
        let mut out: BTreeMap<Var, Var> = self
            .0
            .iter()
            .map(|(from, to)| (*from, other.apply(*to)))
            .collect();
        for (from, to) in &other.0 {
            out.entry(*from).or_insert(*to);
        }
        out.retain(|from, to| from != to);
        Substitution(out)
    }
}

pub trait Substitute: Sized {
    /// Replaces free occurrences only.
    fn substitute(&self, s: &Substitution, pool: &VarPool) -> Result<Self, SetError>;
}

impl Substitute for Literal {
    fn substitute(&self, s: &Substitution, _pool: &VarPool) -> Result<Self, SetError> {
        Ok(self.map(|v| s.apply(v)))
    }
}

impl Substitute for Clause {
    fn substitute(&self, s: &Substitution, _pool: &VarPool) -> Result<Self, SetError> {
        Ok(self.map(|v| s.apply(v)))
    }
}

impl Substitute for PurelyUniversal {
    fn substitute(&self, s: &Substitution, pool: &VarPool) -> Result<Self, SetError> {
        let bound: BTreeSet<Var> = self.bound.iter().copied().collect();
        let free = self.free_vars();
        let mut local = Substitution::new();
        for (from, to) in s.iter() {
            if bound.contains(&from) || !free.contains(&from) {
                continue;
            }
            if bound.contains(&to) {
                return Err(SetError::Capture {
                    from: pool.name(from),
                    to: pool.name(to),
                });
            }
            local.0.insert(from, to);
        }
        Ok(PurelyUniversal {
            bound: self.bound.clone(),
            matrix: self.matrix.iter().map(|c| c.map(|v| local.apply(v))).collect(),
        })
    }
}

impl Substitute for Formula {
    fn substitute(&self, s: &Substitution, pool: &VarPool) -> Result<Self, SetError> {
        Ok(Formula {
            universals: self
                .universals
                .iter()
                .map(|u| u.substitute(s, pool))
                .collect::<Result<_, _>>()?,
            ground: self.ground.iter().map(|l| l.map(|v| s.apply(v))).collect(),
        })
    }
}

/// Canonical text: `x_a in C`, `~ (x_a = x_b)`, `<x_a,x_b> in R`.
pub trait Render {
    fn render(&self, pool: &VarPool, out: &mut String);
}

impl Render for Atom {
    fn render(&self, pool: &VarPool, out: &mut String) {
        match *self {
            Atom::Eq(x, y) => out.push_str(&format!("{} = {}", pool.name(x), pool.name(y))),
            Atom::Mem1(x, s) => out.push_str(&format!("{} in {}", pool.name(x), pool.name(s))),
            Atom::Mem3(x, y, r) => out.push_str(&format!(
                "<{},{}> in {}",
                pool.name(x),
                pool.name(y),
                pool.name(r)
            )),
        }
    }
}

impl Render for Literal {
    fn render(&self, pool: &VarPool, out: &mut String) {
        if self.positive {
            self.atom.render(pool, out);
        } else {
            out.push_str("~ (");
            self.atom.render(pool, out);
            out.push(')');
        }
    }
}

impl Render for Clause {
    fn render(&self, pool: &VarPool, out: &mut String) {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                out.push_str(" | ");
            }
            l.render(pool, out);
        }
    }
}

impl Render for PurelyUniversal {
    fn render(&self, pool: &VarPool, out: &mut String) {
        out.push_str("forall");
        for b in &self.bound {
            out.push(' ');
            out.push_str(&pool.name(*b));
        }
        out.push_str(" .");
        for (i, c) in self.matrix.iter().enumerate() {
            out.push_str(if i == 0 { " (" } else { " & (" });
            c.render(pool, out);
            out.push(')');
        }
    }
}
