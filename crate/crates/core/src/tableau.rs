//! KE-tableau saturation of a ground expansion, equality normalization of
//! open branches, and the model of an open complete branch.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;

use thiserror::Error;

use crate::grounder::ExpansionResult;
use crate::setcalc::{
    Atom, Interpretation, Level, Literal, Substitution, Tag, Var, VarPool,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableauError {
    #[error("more than {0} branches")]
    TooManyBranches(usize),
    #[error("branch is closed")]
    ClosedBranch,
}

/// Which unfulfilled clause of the current branch is processed next.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Policy {
    /// The first unfulfilled clause in branch order.
    #[default]
    FirstUnfulfilled,
    /// Any clause the E-rule applies to, before the first unfulfilled one.
    EliminationFirst,
}

/// Total order on level-0 variables used to pick equality representatives.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarOrder {
    ranked: BTreeMap<String, usize>,
}

impl VarOrder {
    /// Individuals in the given order first, then everything else by name.
    pub fn with_individuals(individuals: &[String]) -> Self {
        VarOrder {
            ranked: individuals
                .iter()
                .enumerate()
                .map(|(i, a)| (a.clone(), i))
                .collect(),
        }
    }

    /// All variables by name.
    pub fn lexical() -> Self {
        VarOrder {
            ranked: BTreeMap::new(),
        }
    }

    pub fn cmp(&self, a: Var, b: Var, pool: &VarPool) -> Ordering {
        let rank = |v: Var| match pool.tag(v) {
            Tag::Individual(n) => self.ranked.get(n).copied(),
            _ => None,
        };
        match (rank(a), rank(b)) {
            (Some(x), Some(y)) => x.cmp(&y),
            (Some(_), None) => Ordering::Less,
            (None, Some(_)) => Ordering::Greater,
            (None, None) => pool.name(a).cmp(&pool.name(b)).then(a.cmp(&b)),
        }
    }

    pub fn min(&self, a: Var, b: Var, pool: &VarPool) -> Var {
        if self.cmp(a, b, pool) == Ordering::Greater {
            b
        } else {
            a
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableauConfig {
    pub policy: Policy,
    /// Abort beyond this many leaves.
    pub max_branches: Option<usize>,
    pub trace: bool,
}

impl Default for TableauConfig {
    fn default() -> Self {
        TableauConfig {
            policy: Policy::FirstUnfulfilled,
            max_branches: Some(1 << 20),
            trace: false,
        }
    }
}

/// One rule application. `node` identifies the tableau node (a maximal
/// run of a branch between two PB splits) it happened on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceEvent {
    pub node: usize,
    pub kind: TraceKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TraceKind {
    /// E-rule: the `j`-th disjunct (1-based) of clause `clause` appended.
    E { j: usize, clause: usize, lit: Literal },
    /// PB-rule on the complement of the `h`-th disjunct of `clause`.
    Pb {
        h: usize,
        lit: Literal,
        clause: usize,
        left: usize,
        right: usize,
    },
    Open,
    Closed,
}

/// A leaf of the saturated tableau.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Leaf {
    pub node: usize,
    pub open: bool,
    /// Branch literals in order of appearance; empty for closed leaves.
    pub literals: Vec<Literal>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Stats {
    pub nodes: usize,
    pub e_rules: usize,
    pub pb_rules: usize,
    pub height: usize,
    /// Largest number of PB applications to one clause on one branch.
    pub max_pb_per_clause: usize,
    /// Clauses whose PB count on some branch exceeded their length minus one.
    pub pb_budget_violations: usize,
}

#[derive(Debug, Clone)]
pub struct Saturation {
    pub leaves: Vec<Leaf>,
    /// Parent of every node; `None` for the root.
    pub parents: Vec<Option<usize>>,
    pub trace: Vec<TraceEvent>,
    pub stats: Stats,
    /// The search ended early at an accepted open leaf.
    pub stopped: bool,
}

impl Saturation {
    pub fn open_leaves(&self) -> impl Iterator<Item = &Leaf> {
        self.leaves.iter().filter(|l| l.open)
    }

    pub fn is_closed(&self) -> bool {
        !self.leaves.iter().any(|l| l.open)
    }

    pub fn render_trace(&self, pool: &VarPool) -> String {
        let mut out = String::new();
        for ev in &self.trace {
            let line = match &ev.kind {
                TraceKind::E { j, clause, lit } => {
                    format!("n{} E {j} clause#{clause} {}", ev.node, pool.show(lit))
                }
                TraceKind::Pb {
                    h,
                    lit,
                    clause,
                    left,
                    right,
                } => format!(
                    "n{} PB {h} {} clause#{clause} -> n{left} n{right}",
                    ev.node,
                    pool.show(lit)
                ),
                TraceKind::Open => format!("n{} OPEN", ev.node),
                TraceKind::Closed => format!("n{} CLOSED", ev.node),
            };
            let _ = writeln!(out, "{line}");
        }
        out
    }
}

type Lit = u32;

struct Problem {
    atoms: Vec<Atom>,
    index: HashMap<Atom, u32>,
    clauses: Vec<Vec<Lit>>,
    ground: Vec<Lit>,
}

impl Problem {
    fn new(exp: &ExpansionResult) -> Self {
        let mut p = Problem {
            atoms: Vec::new(),
            index: HashMap::new(),
            clauses: Vec::new(),
            ground: Vec::new(),
        };
        let ground: Vec<Lit> = exp.ground.iter().map(|l| p.lit(l)).collect();
        p.ground = ground;
        for c in &exp.clauses {
            let lits: Vec<Lit> = c.literals().iter().map(|l| p.lit(l)).collect();
            p.clauses.push(lits);
        }
        p
    }

    fn lit(&mut self, l: &Literal) -> Lit {
        let n = self.atoms.len() as u32;
        let a = *self.index.entry(l.atom).or_insert(n);
        if a == n {
            self.atoms.push(l.atom);
        }
        a << 1 | u32::from(!l.positive)
    }

    fn literal(&self, l: Lit) -> Literal {
        Literal {
            atom: self.atoms[(l >> 1) as usize],
            positive: l & 1 == 0,
        }
    }
}

struct Search<'a> {
    p: &'a Problem,
    cfg: &'a TableauConfig,
    value: Vec<i8>,
    trail: Vec<Lit>,
    pb_count: Vec<u32>,
    pb_path: Vec<usize>,
    parents: Vec<Option<usize>>,
    trace: Vec<TraceEvent>,
    leaves: Vec<Leaf>,
    stats: Stats,
    stop: &'a mut dyn FnMut(&Leaf) -> bool,
    stopped: bool,
}

/// Pending right child of a PB split.
struct Pending {
    node: usize,
    trail_len: usize,
    pb_len: usize,
    cursor: usize,
    depth: usize,
    lit: Lit,
}

impl<'a> Search<'a> {
    fn val(&self, l: Lit) -> i8 {
        let v = self.value[(l >> 1) as usize];
        if l & 1 == 1 {
            -v
        } else {
            v
        }
    }

    /// Appends a literal; false if the branch closes.
    fn push(&mut self, l: Lit) -> bool {
        match self.val(l) {
            1 => true,
            -1 => false,
            _ => {
                self.value[(l >> 1) as usize] = if l & 1 == 1 { -1 } else { 1 };
                self.trail.push(l);
                let a = self.p.atoms[(l >> 1) as usize];
                !(a.is_reflexive_eq() && l & 1 == 1)
            }
        }
    }

    fn undo(&mut self, trail_len: usize, pb_len: usize) {
        while self.trail.len() > trail_len {
            let l = self.trail.pop().unwrap();
            self.value[(l >> 1) as usize] = 0;
        }
        while self.pb_path.len() > pb_len {
            let c = self.pb_path.pop().unwrap();
            self.pb_count[c] -= 1;
        }
    }

    fn event(&mut self, node: usize, kind: TraceKind) {
        if self.cfg.trace {
            self.trace.push(TraceEvent { node, kind });
        }
    }

    fn close(&mut self, node: usize) {
        self.event(node, TraceKind::Closed);
        self.leaves.push(Leaf {
            node,
            open: false,
            literals: Vec::new(),
        });
    }

    /// E-rule conclusion for clause `c`, if the premises are present.
    /// Returns the 1-based index; a clause whose every complement is
    /// present concludes its first disjunct.
    fn e_rule(&self, c: usize) -> Option<usize> {
        let mut free = None;
        for (i, l) in self.p.clauses[c].iter().enumerate() {
            match self.val(*l) {
                -1 => {}
                _ => {
                    if free.is_some() {
                        return None;
                    }
                    free = Some(i);
                }
            }
        }
        Some(free.unwrap_or(0) + 1)
    }

    fn fulfilled(&self, c: usize) -> bool {
        self.p.clauses[c].iter().any(|l| self.val(*l) == 1)
    }

    fn apply_e(&mut self, node: usize, c: usize, j: usize) -> bool {
        let l = self.p.clauses[c][j - 1];
        self.stats.e_rules += 1;
        let lit = self.p.literal(l);
        self.event(node, TraceKind::E { j, clause: c, lit });
        self.push(l)
    }

    /// Runs one branch from `cursor` until it closes, splits or is fulfilled.
    /// Returns `Some((clause, h))` on a split.
    fn run(&mut self, node: usize, cursor: &mut usize) -> Result<Option<(usize, usize)>, ()> {
        let n = self.p.clauses.len();
        loop {
            if self.cfg.policy == Policy::EliminationFirst {
                let mut changed = true;
                while changed {
                    changed = false;
                    for c in *cursor..n {
                        if self.fulfilled(c) {
                            continue;
                        }
                        if let Some(j) = self.e_rule(c) {
                            if !self.apply_e(node, c, j) {
                                return Err(());
                            }
                            changed = true;
                        }
                    }
                }
            }
            while *cursor < n && self.fulfilled(*cursor) {
                *cursor += 1;
            }
            if *cursor == n {
                return Ok(None);
            }
            let c = *cursor;
            match self.e_rule(c) {
                Some(j) => {
                    if !self.apply_e(node, c, j) {
                        return Err(());
                    }
                }
                None => {
                    let h = self.p.clauses[c]
                        .iter()
                        .position(|l| self.val(*l) != -1)
                        .expect("E-rule inapplicable implies two free disjuncts");
                    return Ok(Some((c, h + 1)));
                }
            }
        }
    }

    fn saturate(&mut self) -> Result<(), TableauError> {
        self.parents.push(None);
        for l in self.p.ground.clone() {
            if !self.push(l) {
                self.close(0);
                self.stats.nodes = 1;
                return Ok(());
            }
        }
        let mut stack: Vec<Pending> = Vec::new();
        let mut node = 0usize;
        let mut cursor = 0usize;
        let mut depth = 0usize;
        loop {
            match self.run(node, &mut cursor) {
                Err(()) => self.close(node),
                Ok(None) => {
                    self.event(node, TraceKind::Open);
                    let literals = self.trail.iter().map(|l| self.p.literal(*l)).collect();
                    let leaf = Leaf {
                        node,
                        open: true,
                        literals,
                    };
                    let stop = (self.stop)(&leaf);
                    self.leaves.push(leaf);
                    if stop {
                        self.stopped = true;
                        self.stats.nodes = self.parents.len();
                        return Ok(());
                    }
                }
                Ok(Some((c, h))) => {
                    let len = self.p.clauses[c].len();
                    self.pb_count[c] += 1;
                    self.pb_path.push(c);
                    let k = self.pb_count[c] as usize;
                    if k > self.stats.max_pb_per_clause {
                        self.stats.max_pb_per_clause = k;
                    }
                    if k + 1 > len {
                        self.stats.pb_budget_violations += 1;
                    }
                    self.stats.pb_rules += 1;
                    let left = self.parents.len();
                    let right = left + 1;
                    self.parents.push(Some(node));
                    self.parents.push(Some(node));
                    let beta = self.p.clauses[c][h - 1];
                    let lit = self.p.literal(beta ^ 1);
                    self.event(
                        node,
                        TraceKind::Pb {
                            h,
                            lit,
                            clause: c,
                            left,
                            right,
                        },
                    );
                    depth += 1;
                    stack.push(Pending {
                        node: right,
                        trail_len: self.trail.len(),
                        pb_len: self.pb_path.len(),
                        cursor,
                        depth,
                        lit: beta,
                    });
                    node = left;
                    if self.push(beta ^ 1) {
                        continue;
                    }
                    self.close(node);
                }
            }
            self.stats.height = self.stats.height.max(depth);
            if let Some(max) = self.cfg.max_branches {
                if self.leaves.len() > max {
                    return Err(TableauError::TooManyBranches(max));
                }
            }
            loop {
                let Some(next) = stack.pop() else {
                    self.stats.nodes = self.parents.len();
                    return Ok(());
                };
                self.undo(next.trail_len, next.pb_len);
                node = next.node;
                cursor = next.cursor;
                depth = next.depth;
                if self.push(next.lit) {
                    break;
                }
                self.close(node);
            }
        }
    }
}

/// Saturates the expansion's initial branch with the E- and PB-rules.
pub fn saturate(exp: &ExpansionResult, cfg: &TableauConfig) -> Result<Saturation, TableauError> {
    saturate_until(exp, cfg, &mut |_| false)
}

/// Like [`saturate`], but stops after the first open leaf accepted by
/// `stop`; the result then has `stopped` set and lists only the leaves
/// built so far.
pub fn saturate_until(
    exp: &ExpansionResult,
    cfg: &TableauConfig,
    stop: &mut dyn FnMut(&Leaf) -> bool,
) -> Result<Saturation, TableauError> {
    let p = Problem::new(exp);
    let mut s = Search {
        value: vec![0; p.atoms.len()],
        pb_count: vec![0; p.clauses.len()],
        p: &p,
        cfg,
        trail: Vec::new(),
        pb_path: Vec::new(),
        parents: Vec::new(),
        trace: Vec::new(),
        leaves: Vec::new(),
        stats: Stats::default(),
        stop,
        stopped: false,
    };
    s.saturate()?;
    Ok(Saturation {
        leaves: s.leaves,
        parents: s.parents,
        trace: s.trace,
        stats: s.stats,
        stopped: s.stopped,
    })
}

/// An open fulfilled branch after equality normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalizedBranch {
    /// Index of the leaf in [`Saturation::leaves`].
    pub leaf: usize,
    pub node: usize,
    pub sigma: Substitution,
    /// `(x, z)` for every `SUBST x -> z` step, in order.
    pub steps: Vec<(Var, Var)>,
    /// Branch literals after σ, duplicates removed, in order.
    pub literals: Vec<Literal>,
    pub open: bool,
}

impl NormalizedBranch {
    pub fn literal_set(&self) -> BTreeSet<Literal> {
        self.literals.iter().copied().collect()
    }

    pub fn render_steps(&self, pool: &VarPool) -> String {
        let mut out = String::new();
        for (x, z) in &self.steps {
            let _ = writeln!(out, "n{} SUBST {} -> {}", self.node, pool.name(*x), pool.name(*z));
        }
        out
    }
}

fn is_closed(lits: &BTreeSet<Literal>) -> bool {
    lits.iter().any(|l| {
        (!l.positive && l.atom.is_reflexive_eq()) || (l.positive && lits.contains(&l.complement()))
    })
}

/// Collapses equalities of an open leaf and re-checks closure.
pub fn normalize_equalities(
    leaf_index: usize,
    leaf: &Leaf,
    order: &VarOrder,
    pool: &VarPool,
) -> NormalizedBranch {
    let mut sigma = Substitution::new();
    let mut steps = Vec::new();
    let mut eqs: BTreeSet<(Var, Var)> = leaf
        .literals
        .iter()
        .filter(|l| l.positive)
        .filter_map(|l| match l.atom {
            Atom::Eq(x, y) if x != y => Some((x, y)),
            _ => None,
        })
        .collect();
    while let Some(&(x, y)) = eqs.iter().next() {
        let z = order.min(x, y, pool);
        let other = if z == x { y } else { x };
        let mut step = Substitution::new();
        step.insert(other, z, pool).expect("both level 0");
        sigma = sigma.then(&step);
        steps.push((other, z));
        eqs = eqs
            .into_iter()
            .map(|(a, b)| (sigma.apply(a), sigma.apply(b)))
            .filter(|(a, b)| a != b)
            .map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
            .collect();
    }
    let mut seen = BTreeSet::new();
    let mut literals = Vec::new();
    for l in &leaf.literals {
        let m = l.map(|v| sigma.apply(v));
        if seen.insert(m) {
            literals.push(m);
        }
    }
    let open = !is_closed(&seen);
    NormalizedBranch {
        leaf: leaf_index,
        node: leaf.node,
        sigma,
        steps,
        literals,
        open,
    }
}

/// Normalizes every open leaf, in leaf order.
pub fn normalize_all(sat: &Saturation, order: &VarOrder, pool: &VarPool) -> Vec<NormalizedBranch> {
    sat.leaves
        .iter()
        .enumerate()
        .filter(|(_, l)| l.open)
        .map(|(i, l)| normalize_equalities(i, l, order, pool))
        .collect()
}

/// The interpretation read off an open complete branch: the domain is the
/// σ-representatives, and each set holds exactly what the branch's
/// positive literals put in it. `var0` lists level-0 variables to map
/// besides those on the branch.
pub fn branch_model(
    b: &NormalizedBranch,
    pool: &VarPool,
    var0: &[Var],
) -> Result<Interpretation, TableauError> {
    if !b.open {
        return Err(TableauError::ClosedBranch);
    }
    let mut reps: BTreeSet<Var> = BTreeSet::new();
    for l in &b.literals {
        reps.extend(l.atom.level0_args());
    }
    for v in var0 {
        reps.insert(b.sigma.apply(*v));
    }
    let index: BTreeMap<Var, usize> = reps.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut m = Interpretation {
        domain: reps.len(),
        ..Default::default()
    };
    for v in var0.iter().chain(reps.iter()) {
        m.level0.insert(*v, index[&b.sigma.apply(*v)]);
    }
    for v in pool.vars() {
        match pool.level(v) {
            Level::One => {
                m.level1.insert(v, BTreeSet::new());
            }
            Level::Three => {
                m.level3.insert(v, BTreeSet::new());
            }
            Level::Zero => {}
        }
    }
    for l in b.literals.iter().filter(|l| l.positive) {
        match l.atom {
            Atom::Mem1(x, s) => {
                m.level1.entry(s).or_default().insert(index[&x]);
            }
            Atom::Mem3(x, y, r) => {
                m.level3.entry(r).or_default().insert((index[&x], index[&y]));
            }
            Atom::Eq(..) => {}
        }
    }
    Ok(m)
}

/// Per-branch PB counts reconstructed from a trace: the largest number of
/// PB applications to a single clause on a single root-to-leaf path, and
/// the clause it was on.
pub fn audit_pb(sat: &Saturation) -> BTreeMap<(usize, usize), usize> {
    let mut pb_at: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for ev in &sat.trace {
        if let TraceKind::Pb { clause, .. } = ev.kind {
            pb_at.entry(ev.node).or_default().push(clause);
        }
    }
    let mut out = BTreeMap::new();
    for (li, leaf) in sat.leaves.iter().enumerate() {
        let mut counts: BTreeMap<usize, usize> = BTreeMap::new();
        let mut n = Some(leaf.node);
        while let Some(x) = n {
            for c in pb_at.get(&x).into_iter().flatten() {
                *counts.entry(*c).or_default() += 1;
            }
            n = sat.parents[x];
        }
        for (c, k) in counts {
            out.insert((li, c), k);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grounder::build_expansion;
    use crate::setcalc::{Clause, Evaluate, Formula, PurelyUniversal};

    struct G {
        pool: VarPool,
        a: Var,
        b: Var,
        c: Var,
        d: Var,
    }

    fn g() -> G {
        let mut pool = VarPool::new();
        let a = pool.intern(Level::Zero, Tag::Individual("a".into()));
        let b = pool.intern(Level::Zero, Tag::Individual("b".into()));
        let c = pool.intern(Level::One, Tag::Concept("C".into()));
        let d = pool.intern(Level::One, Tag::Concept("D".into()));
        G { pool, a, b, c, d }
    }

    fn run(g: &G, ground: Vec<Literal>, clauses: Vec<Vec<Literal>>) -> Saturation {
        let phi = Formula {
            universals: clauses
                .into_iter()
                .map(|c| PurelyUniversal::new(vec![], vec![Clause::new(c).unwrap()]).unwrap())
                .collect(),
            ground,
        };
        let exp = build_expansion(&phi, &g.pool);
        let cfg = TableauConfig {
            trace: true,
            ..Default::default()
        };
        saturate(&exp, &cfg).unwrap()
    }

    #[test]
    fn e_rule_appends_remaining_disjunct() {
        let g = g();
        let s = run(
            &g,
            vec![Literal::pos(Atom::mem1(g.a, g.c))],
            vec![vec![Literal::neg(Atom::mem1(g.a, g.c)), Literal::pos(Atom::mem1(g.a, g.d))]],
        );
        assert_eq!(s.leaves.len(), 1);
        assert!(s.leaves[0].literals.contains(&Literal::pos(Atom::mem1(g.a, g.d))));
    }

    #[test]
    fn complementary_pair_closes() {
        let g = g();
        let s = run(
            &g,
            vec![Literal::pos(Atom::mem1(g.a, g.c)), Literal::neg(Atom::mem1(g.a, g.c))],
            vec![],
        );
        assert!(s.is_closed());
    }

    #[test]
    fn reflexive_inequality_closes() {
        let g = g();
        let s = run(&g, vec![Literal::neg(Atom::eq(g.a, g.a))], vec![]);
        assert!(s.is_closed());
    }

    #[test]
    fn pb_then_e_gives_two_open_leaves() {
        let g = g();
        let s = run(
            &g,
            vec![],
            vec![vec![Literal::pos(Atom::mem1(g.a, g.c)), Literal::pos(Atom::mem1(g.a, g.d))]],
        );
        assert_eq!(s.open_leaves().count(), 2);
        assert_eq!(
            s.leaves[0].literals,
            vec![Literal::neg(Atom::mem1(g.a, g.c)), Literal::pos(Atom::mem1(g.a, g.d))]
        );
        assert_eq!(s.leaves[1].literals, vec![Literal::pos(Atom::mem1(g.a, g.c))]);
        assert_eq!(s.stats.pb_rules, 1);
    }

    #[test]
    fn normalization_collapses_to_smaller_variable() {
        let g = g();
        let s = run(
            &g,
            vec![Literal::pos(Atom::eq(g.a, g.b)), Literal::pos(Atom::mem1(g.b, g.c))],
            vec![],
        );
        let order = VarOrder::with_individuals(&["a".into(), "b".into()]);
        let nb = normalize_equalities(0, &s.leaves[0], &order, &g.pool);
        assert_eq!(nb.sigma.get(g.b), Some(g.a));
        assert_eq!(
            nb.literals,
            vec![Literal::pos(Atom::eq(g.a, g.a)), Literal::pos(Atom::mem1(g.a, g.c))]
        );
        assert!(nb.open);
    }

    #[test]
    fn chain_collapses_to_minimum() {
        let mut g = g();
        let c3 = g.pool.intern(Level::Zero, Tag::Individual("c".into()));
        let s = run(
            &g,
            vec![Literal::pos(Atom::eq(g.a, g.b)), Literal::pos(Atom::eq(g.b, c3))],
            vec![],
        );
        let order = VarOrder::with_individuals(&["a".into(), "b".into(), "c".into()]);
        let nb = normalize_equalities(0, &s.leaves[0], &order, &g.pool);
        assert_eq!(nb.sigma.apply(g.b), g.a);
        assert_eq!(nb.sigma.apply(c3), g.a);
        assert!(nb
            .literals
            .iter()
            .all(|l| !matches!(l.atom, Atom::Eq(x, y) if x != y)));
    }

    #[test]
    fn substitution_can_close_a_branch() {
        let g = g();
        let s = run(
            &g,
            vec![
                Literal::pos(Atom::eq(g.a, g.b)),
                Literal::pos(Atom::mem1(g.a, g.c)),
                Literal::neg(Atom::mem1(g.b, g.c)),
            ],
            vec![],
        );
        assert!(s.leaves[0].open);
        let nb = normalize_equalities(0, &s.leaves[0], &VarOrder::lexical(), &g.pool);
        assert!(!nb.open);
    }

    #[test]
    fn branch_model_satisfies_branch() {
        let g = g();
        let s = run(
            &g,
            vec![Literal::pos(Atom::mem1(g.a, g.c)), Literal::neg(Atom::mem1(g.b, g.d))],
            vec![],
        );
        let nb = normalize_equalities(0, &s.leaves[0], &VarOrder::lexical(), &g.pool);
        let m = branch_model(&nb, &g.pool, &[g.a, g.b]).unwrap();
        for l in &nb.literals {
            assert!(l.evaluate(&m, &g.pool).unwrap());
        }
        assert!(m.level1[&g.d].is_empty());
    }
}
