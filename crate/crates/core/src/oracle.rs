//! Brute-force reference: ground satisfiability with explicit equality
//! axioms, and answer sets by candidate enumeration.
//!
//! Shares nothing with the tableau or the engine beyond the setcalc types.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::setcalc::{Atom, Clause, Formula, Interpretation, Level, Literal, Tag, Var, VarPool};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest ground atom universe the oracle accepts.
    pub max_atoms: usize,
    /// Largest number of candidate substitutions for answer sets.
    pub max_candidates: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            max_atoms: 24,
            max_candidates: 1 << 20,
        }
    }
}

impl OracleConfig {
    pub fn desk() -> Self {
        OracleConfig {
            max_atoms: 20_000,
            max_candidates: 1 << 20,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("atom universe has {atoms} atoms, bound is {limit}")]
    TooManyAtoms { atoms: usize, limit: usize },
    #[error("{candidates} candidate substitutions, bound is {limit}")]
    TooManyCandidates { candidates: usize, limit: usize },
}

/// A satisfying assignment decoded as a finite interpretation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub model: Interpretation,
}

/// Ground problem over a closed set of level-0 variables.
struct Grounding {
    elements: Vec<Var>,
    clauses: Vec<Vec<Literal>>,
    sets1: BTreeSet<Var>,
    sets3: BTreeSet<Var>,
}

fn instantiate(
    bound: &[Var],
    matrix: &[Clause],
    elements: &[Var],
    out: &mut Vec<Vec<Literal>>,
) {
    let n = bound.len();
    let mut idx = vec![0usize; n];
    if n > 0 && elements.is_empty() {
        return;
    }
    loop {
        let map: HashMap<Var, Var> = bound
            .iter()
            .copied()
            .zip(idx.iter().map(|i| elements[*i]))
            .collect();
        for c in matrix {
            out.push(
                c.literals()
                    .iter()
                    .map(|l| l.map(|v| *map.get(&v).unwrap_or(&v)))
                    .collect(),
            );
        }
        let mut k = 0;
        loop {
            if k == n {
                return;
            }
            idx[k] += 1;
            if idx[k] < elements.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn ground(phi: &Formula, extra: &[Literal], pool: &VarPool) -> Grounding {
    let mut elements: BTreeSet<Var> = phi.vars_of_level(pool, Level::Zero);
    for l in extra {
        elements.extend(l.atom.level0_args());
    }
    let elements: Vec<Var> = elements.into_iter().collect();
    let mut clauses = Vec::new();
    for u in &phi.universals {
        instantiate(u.bound(), u.matrix(), &elements, &mut clauses);
    }
    for l in phi.ground.iter().chain(extra) {
        clauses.push(vec![*l]);
    }
    let mut sets1 = BTreeSet::new();
    let mut sets3 = BTreeSet::new();
    for c in &clauses {
        for l in c {
            match l.atom {
                Atom::Mem1(_, s) => {
                    sets1.insert(s);
                }
                Atom::Mem3(_, _, r) => {
                    sets3.insert(r);
                }
                Atom::Eq(..) => {}
            }
        }
    }
    Grounding {
        elements,
        clauses,
        sets1,
        sets3,
    }
}

/// Propositional encoding: atom numbering plus equality axioms.
struct Encoding {
    atoms: Vec<Atom>,
    index: HashMap<Atom, u32>,
    elements: Vec<Var>,
}

impl Encoding {
    fn new(g: &Grounding) -> Self {
        let mut e = Encoding {
            atoms: Vec::new(),
            index: HashMap::new(),
            elements: g.elements.clone(),
        };
        let els = &g.elements;
        for i in 0..els.len() {
            for j in i + 1..els.len() {
                e.add(Atom::eq(els[i], els[j]));
            }
        }
        for s in &g.sets1 {
            for x in els {
                e.add(Atom::mem1(*x, *s));
            }
        }
        for r in &g.sets3 {
            for x in els {
                for y in els {
                    e.add(Atom::mem3(*x, *y, *r));
                }
            }
        }
        e
    }

    fn add(&mut self, a: Atom) {
        if !self.index.contains_key(&a) {
            self.index.insert(a, self.atoms.len() as u32);
            self.atoms.push(a);
        }
    }

    fn lit(&self, l: &Literal) -> Option<u32> {
        self.index
            .get(&l.atom)
            .map(|a| a << 1 | u32::from(!l.positive))
    }

    /// Encoded clause, or `None` when the clause is valid.
    fn clause(&self, c: &[Literal]) -> Option<Vec<u32>> {
        let mut out = Vec::with_capacity(c.len());
        for l in c {
            if l.atom.is_reflexive_eq() {
                if l.positive {
                    return None;
                }
                continue;
            }
            out.push(self.lit(l).expect("atom in universe"));
        }
        out.sort_unstable();
        out.dedup();
        if out.windows(2).any(|w| w[0] >> 1 == w[1] >> 1) {
            return None;
        }
        Some(out)
    }

    fn eq_lit(&self, x: Var, y: Var, positive: bool) -> Option<u32> {
        if x == y {
            return None;
        }
        self.lit(&Literal {
            atom: Atom::eq(x, y),
            positive,
        })
    }

    fn equality_axioms(&self, g: &Grounding, solver: &mut Solver) {
        let els = &self.elements;
        let n = els.len();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if i == j || j == k || i == k || i > k {
                        continue;
                    }
                    let (x, y, z) = (els[i], els[j], els[k]);
                    solver.add_clause(vec![
                        self.eq_lit(x, y, false).unwrap(),
                        self.eq_lit(y, z, false).unwrap(),
                        self.eq_lit(x, z, true).unwrap(),
                    ]);
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let (x, y) = (els[i], els[j]);
                let ne = self.eq_lit(x, y, false).unwrap();
                for s in &g.sets1 {
                    solver.add_clause(vec![
                        ne,
                        self.lit(&Literal::neg(Atom::mem1(x, *s))).unwrap(),
                        self.lit(&Literal::pos(Atom::mem1(y, *s))).unwrap(),
                    ]);
                }
                for r in &g.sets3 {
                    for z in els {
                        solver.add_clause(vec![
                            ne,
                            self.lit(&Literal::neg(Atom::mem3(x, *z, *r))).unwrap(),
                            self.lit(&Literal::pos(Atom::mem3(y, *z, *r))).unwrap(),
                        ]);
                        solver.add_clause(vec![
                            ne,
                            self.lit(&Literal::neg(Atom::mem3(*z, x, *r))).unwrap(),
                            self.lit(&Literal::pos(Atom::mem3(*z, y, *r))).unwrap(),
                        ]);
                    }
                }
            }
        }
    }

    fn model(&self, values: &[bool]) -> Interpretation {
        let mut class: BTreeMap<Var, usize> = BTreeMap::new();
        let mut reps: Vec<Var> = Vec::new();
        for x in &self.elements {
            let found = reps.iter().position(|r| {
                self.eq_lit(*r, *x, true)
                    .map(|l| values[(l >> 1) as usize])
                    .unwrap_or(true)
            });
            let c = match found {
                Some(c) => c,
                None => {
                    reps.push(*x);
                    reps.len() - 1
                }
            };
            class.insert(*x, c);
        }
        let mut m = Interpretation {
            domain: reps.len(),
            level0: class.clone(),
            ..Default::default()
        };
        for (i, a) in self.atoms.iter().enumerate() {
            match *a {
                Atom::Mem1(x, s) => {
                    let set = m.level1.entry(s).or_default();
                    if values[i] {
                        set.insert(class[&x]);
                    }
                }
                Atom::Mem3(x, y, r) => {
                    let rel = m.level3.entry(r).or_default();
                    if values[i] {
                        rel.insert((class[&x], class[&y]));
                    }
                }
                Atom::Eq(..) => {}
            }
        }
        m
    }
}

/// DPLL with two watched literals and chronological backtracking.
struct Solver {
    clauses: Vec<Vec<u32>>,
    watches: Vec<Vec<usize>>,
    units: Vec<u32>,
    empty: bool,
    value: Vec<i8>,
    trail: Vec<u32>,
    head: usize,
    order: Vec<u32>,
}

impl Solver {
    fn new(n: usize, order: Vec<u32>) -> Self {
        Solver {
            clauses: Vec::new(),
            watches: vec![Vec::new(); 2 * n],
            units: Vec::new(),
            empty: false,
            value: vec![0; n],
            trail: Vec::new(),
            head: 0,
            order,
        }
    }

    fn add_clause(&mut self, c: Vec<u32>) {
        match c.len() {
            0 => self.empty = true,
            1 => self.units.push(c[0]),
            _ => {
                let i = self.clauses.len();
                self.watches[c[0] as usize].push(i);
                self.watches[c[1] as usize].push(i);
                self.clauses.push(c);
            }
        }
    }

    fn lit_value(&self, l: u32) -> i8 {
        let v = self.value[(l >> 1) as usize];
        if l & 1 == 1 {
            -v
        } else {
            v
        }
    }

    fn assign(&mut self, l: u32) -> bool {
        match self.lit_value(l) {
            1 => true,
            -1 => false,
            _ => {
                self.value[(l >> 1) as usize] = if l & 1 == 1 { -1 } else { 1 };
                self.trail.push(l);
                true
            }
        }
    }

    /// False on conflict.
    fn propagate(&mut self) -> bool {
        while self.head < self.trail.len() {
            let l = self.trail[self.head];
            self.head += 1;
            let falsified = l ^ 1;
            let mut ws = std::mem::take(&mut self.watches[falsified as usize]);
            let mut i = 0;
            let mut ok = true;
            while i < ws.len() {
                let ci = ws[i];
                let c = &mut self.clauses[ci];
                if c[0] == falsified {
                    c.swap(0, 1);
                }
                let other = c[0];
                let other_val = {
                    let v = self.value[(other >> 1) as usize];
                    if other & 1 == 1 {
                        -v
                    } else {
                        v
                    }
                };
                if other_val == 1 {
                    i += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..c.len() {
                    let lk = c[k];
                    let v = self.value[(lk >> 1) as usize];
                    let vk = if lk & 1 == 1 { -v } else { v };
                    if vk != -1 {
                        c.swap(1, k);
                        let nw = c[1];
                        self.watches[nw as usize].push(ci);
                        ws.swap_remove(i);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                i += 1;
                if other_val == -1 {
                    ok = false;
                    break;
                }
                self.assign(other);
            }
            let rest = std::mem::take(&mut self.watches[falsified as usize]);
            ws.extend(rest);
            self.watches[falsified as usize] = ws;
            if !ok {
                return false;
            }
        }
        true
    }

    fn undo_to(&mut self, len: usize) {
        while self.trail.len() > len {
            let l = self.trail.pop().unwrap();
            self.value[(l >> 1) as usize] = 0;
        }
        self.head = self.head.min(len);
    }

    /// Propagates the unit clauses; false if already inconsistent.
    fn init(&mut self) -> bool {
        if self.empty {
            return false;
        }
        let units = std::mem::take(&mut self.units);
        for u in &units {
            if !self.assign(*u) {
                return false;
            }
        }
        self.units = units;
        self.propagate()
    }

    /// Search under assumptions from the base state; restores it.
    fn solve(&mut self, assumptions: &[u32]) -> Option<Vec<bool>> {
        let base = self.trail.len();
        let result = self.search(assumptions);
        self.undo_to(base);
        self.head = base;
        result
    }

    fn search(&mut self, assumptions: &[u32]) -> Option<Vec<bool>> {
        for a in assumptions {
            if !self.assign(*a) {
                return None;
            }
        }
        if !self.propagate() {
            return None;
        }
        // (trail length before decision, decision literal, flipped)
        let mut stack: Vec<(usize, u32, bool)> = Vec::new();
        let mut cursor = 0usize;
        loop {
            while cursor < self.order.len() && self.value[self.order[cursor] as usize] != 0 {
                cursor += 1;
            }
            if cursor == self.order.len() {
                return Some(self.value.iter().map(|v| *v == 1).collect());
            }
            let lit = self.order[cursor] << 1 | 1;
            stack.push((self.trail.len(), lit, false));
            self.assign(lit);
            let mut ok = self.propagate();
            while !ok {
                loop {
                    let (pos, l, flipped) = stack.pop()?;
                    self.undo_to(pos);
                    if !flipped {
                        stack.push((pos, l ^ 1, true));
                        self.assign(l ^ 1);
                        break;
                    }
                }
                cursor = 0;
                ok = self.propagate();
            }
        }
    }
}

/// Prepared ground problem that answers many assumption queries.
pub struct Problem {
    enc: Encoding,
    solver: Solver,
    consistent: bool,
}

impl Problem {
    fn build(
        phi: &Formula,
        extra: &[Literal],
        pool: &VarPool,
        config: &OracleConfig,
    ) -> Result<Problem, OracleError> {
        let g = ground(phi, extra, pool);
        let enc = Encoding::new(&g);
        if enc.atoms.len() > config.max_atoms {
            return Err(OracleError::TooManyAtoms {
                atoms: enc.atoms.len(),
                limit: config.max_atoms,
            });
        }
        let mut order: Vec<u32> = (0..enc.atoms.len() as u32).collect();
        order.sort_by_key(|i| !matches!(enc.atoms[*i as usize], Atom::Eq(..)));
        let mut solver = Solver::new(enc.atoms.len(), order);
        for c in &g.clauses {
            if let Some(c) = enc.clause(c) {
                solver.add_clause(c);
            }
        }
        enc.equality_axioms(&g, &mut solver);
        let consistent = solver.init();
        Ok(Problem {
            enc,
            solver,
            consistent,
        })
    }

    fn encode_all(&self, lits: &[Literal]) -> Option<Vec<u32>> {
        let mut out = Vec::new();
        for l in lits {
            if l.atom.is_reflexive_eq() {
                if l.positive {
                    continue;
                }
                return None;
            }
            match self.enc.lit(l) {
                Some(x) => out.push(x),
                // atoms outside the universe are false in every model
                None if l.positive => return None,
                None => {}
            }
        }
        Some(out)
    }

    /// Model of the problem plus `assumptions`, if any.
    pub fn solve(&mut self, assumptions: &[Literal]) -> Option<Witness> {
        if !self.consistent {
            return None;
        }
        let lits = self.encode_all(assumptions)?;
        self.solver.solve(&lits).map(|values| Witness {
            model: self.enc.model(&values),
        })
    }
}

/// Satisfiability of a formula's ground expansion, with a witness.
pub fn satisfiable(
    phi: &Formula,
    pool: &VarPool,
    config: &OracleConfig,
) -> Result<Option<Witness>, OracleError> {
    let mut p = Problem::build(phi, &[], pool, config)?;
    Ok(p.solve(&[]))
}

/// Satisfiability of a set of ground literals and clauses.
pub fn satisfiable_ground(
    clauses: &[Clause],
    pool: &VarPool,
    config: &OracleConfig,
) -> Result<Option<Witness>, OracleError> {
    let phi = Formula {
        universals: clauses
            .iter()
            .map(|c| {
                crate::setcalc::PurelyUniversal::new(vec![], vec![c.clone()])
                    .expect("no quantifiers")
            })
            .collect(),
        ground: vec![],
    };
    satisfiable(&phi, pool, config)
}

fn is_query_var(pool: &VarPool, v: Var) -> bool {
    matches!(pool.tag(v), Tag::Query(_))
}

/// All substitutions of the query variables of `psi` by free variables of
/// `phi` of the same level under which `phi ∧ psi` is satisfiable.
pub fn brute_answer_set(
    phi: &Formula,
    psi: &[Literal],
    pool: &VarPool,
    config: &OracleConfig,
) -> Result<Vec<BTreeMap<Var, Var>>, OracleError> {
    let mut qvars: Vec<Var> = Vec::new();
    for l in psi {
        for v in l.atom.vars() {
            if is_query_var(pool, v) && !qvars.contains(&v) {
                qvars.push(v);
            }
        }
    }
    let mut candidates: Vec<Vec<Var>> = Vec::new();
    let mut total: usize = 1;
    for q in &qvars {
        let c: Vec<Var> = phi.vars_of_level(pool, pool.level(*q)).into_iter().collect();
        total = total.saturating_mul(c.len());
        candidates.push(c);
    }
    if total > config.max_candidates {
        return Err(OracleError::TooManyCandidates {
            candidates: total,
            limit: config.max_candidates,
        });
    }
    let mut problem = Problem::build(phi, &[], pool, config)?;
    let mut models: Vec<Interpretation> = Vec::new();
    let mut out = Vec::new();
    let mut binding: Vec<Var> = Vec::new();
    enumerate(
        &mut problem,
        psi,
        pool,
        &qvars,
        &candidates,
        &mut binding,
        &mut models,
        &mut out,
    );
    out.sort();
    Ok(out)
}

fn substituted(psi: &[Literal], qvars: &[Var], binding: &[Var]) -> (Vec<Literal>, bool) {
    let map: HashMap<Var, Var> = qvars.iter().copied().zip(binding.iter().copied()).collect();
    let mut complete = Vec::new();
    let mut all = true;
    for l in psi {
        let vs = l.atom.vars();
        let bound_all = vs
            .iter()
            .all(|v| !qvars.contains(v) || map.contains_key(v));
        if bound_all {
            complete.push(l.map(|v| *map.get(&v).unwrap_or(&v)));
        } else {
            all = false;
        }
    }
    (complete, all)
}

fn holds_in(m: &Interpretation, lits: &[Literal], pool: &VarPool) -> bool {
    use crate::setcalc::Evaluate;
    lits.iter()
        .all(|l| l.evaluate(m, pool).unwrap_or(false))
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    problem: &mut Problem,
    psi: &[Literal],
    pool: &VarPool,
    qvars: &[Var],
    candidates: &[Vec<Var>],
    binding: &mut Vec<Var>,
    models: &mut Vec<Interpretation>,
    out: &mut Vec<BTreeMap<Var, Var>>,
) {
    let (lits, complete) = substituted(psi, qvars, binding);
    let cached = models.iter().any(|m| holds_in(m, &lits, pool));
    if !cached {
        match problem.solve(&lits) {
            Some(w) => models.push(w.model),
            None => return,
        }
    }
    if complete && binding.len() == qvars.len() {
        out.push(qvars.iter().copied().zip(binding.iter().copied()).collect());
        return;
    }
    let i = binding.len();
    for c in &candidates[i] {
        binding.push(*c);
        enumerate(problem, psi, pool, qvars, candidates, binding, models, out);
        binding.pop();
    }
}
