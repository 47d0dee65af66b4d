//! Decision-tree matching of a translated query against open complete
//! branches, and decoding of the resulting substitutions.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::query::{Entity, HoQuery, Position, Sort};
use crate::setcalc::{Atom, Level, Literal, Tag, Var, VarPool};
use crate::tableau::NormalizedBranch;
use crate::translator::NamingMap;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("variable {0} has no name in the knowledge base")]
    Unmapped(String),
    #[error("query variable {0} was not translated")]
    MissingQueryVar(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EngineConfig {
    /// Evaluate equality and inequality atoms against the branch model
    /// instead of matching them against branch literals.
    pub semantic_eq: bool,
}

/// Bindings of query variables to branch variables.
pub type Binding = BTreeMap<Var, Var>;

/// One leaf of a branch's decision tree at full depth.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct RawAnswer {
    /// Position of the branch in the normalized branch list.
    pub branch: usize,
    /// Leaf number within the branch's decision tree.
    pub leaf: usize,
    /// σ′: bindings of the query variables.
    pub binding: Binding,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TreeStats {
    pub pushed: usize,
    pub popped: usize,
    /// Largest number of matches of one conjunct at one node.
    pub max_matches: usize,
}

fn is_query(pool: &VarPool, v: Var) -> bool {
    matches!(pool.tag(v), Tag::Query(_))
}

fn args(a: &Atom) -> (Vec<Var>, u8) {
    match *a {
        Atom::Eq(x, y) => (vec![x, y], 0),
        Atom::Mem1(x, s) => (vec![x, s], 1),
        Atom::Mem3(x, y, r) => (vec![x, y, r], 3),
    }
}

fn unify(q: &[Var], t: &[Var], pool: &VarPool, rho: &mut Binding) -> bool {
    for (a, b) in q.iter().zip(t) {
        if is_query(pool, *a) {
            match rho.get(a) {
                Some(v) if v != b => return false,
                Some(_) => {}
                None => {
                    if pool.level(*a) != pool.level(*b) {
                        return false;
                    }
                    rho.insert(*a, *b);
                }
            }
        } else if a != b {
            return false;
        }
    }
    true
}

/// Every ρ binding exactly the unbound query variables of `q` such that
/// `qρ` is a literal of `lits`.
pub fn match_literal(q: &Literal, lits: &[Literal], pool: &VarPool) -> Vec<Binding> {
    let (qa, qk) = args(&q.atom);
    let mut out = Vec::new();
    for t in lits {
        if t.positive != q.positive {
            continue;
        }
        let (ta, tk) = args(&t.atom);
        if tk != qk {
            continue;
        }
        let mut orders = vec![ta.clone()];
        if qk == 0 && ta[0] != ta[1] {
            orders.push(vec![ta[1], ta[0]]);
        }
        for order in orders {
            let mut rho = Binding::new();
            if unify(&qa, &order, pool, &mut rho) && !out.contains(&rho) {
                out.push(rho);
            }
        }
    }
    out
}

fn instantiate(q: &Literal, b: &Binding) -> Literal {
    q.map(|v| b.get(&v).copied().unwrap_or(v))
}

/// Branch literals plus `x = x` for every level-0 variable on the branch.
pub fn seeded_literals(branch: &NormalizedBranch) -> Vec<Literal> {
    let mut seen: BTreeSet<Literal> = branch.literals.iter().copied().collect();
    let mut out = branch.literals.clone();
    let vars: BTreeSet<Var> = branch
        .literals
        .iter()
        .flat_map(|l| l.atom.level0_args())
        .collect();
    for v in vars {
        let l = Literal::pos(Atom::eq(v, v));
        if seen.insert(l) {
            out.push(l);
        }
    }
    out
}

fn semantic_eq_matches(q: &Literal, reps: &[Var], pool: &VarPool) -> Vec<Binding> {
    let Atom::Eq(x, y) = q.atom else {
        return Vec::new();
    };
    let cands = |v: Var| -> Vec<Var> {
        if is_query(pool, v) {
            reps.to_vec()
        } else {
            vec![v]
        }
    };
    let mut out = Vec::new();
    for a in cands(x) {
        for b in cands(y) {
            if x == y && a != b {
                continue;
            }
            if (a == b) == q.positive {
                let mut rho = Binding::new();
                if is_query(pool, x) {
                    rho.insert(x, a);
                }
                if is_query(pool, y) {
                    rho.insert(y, b);
                }
                if !out.contains(&rho) {
                    out.push(rho);
                }
            }
        }
    }
    out
}

/// Decision-tree leaves at depth `psi.len()` for one branch; `psi` must
/// already have σ_θ applied to its non-query variables.
pub fn answer_branch(
    branch: &NormalizedBranch,
    psi: &[Literal],
    pool: &VarPool,
    cfg: &EngineConfig,
    stats: &mut TreeStats,
) -> Vec<Binding> {
    let lits = seeded_literals(branch);
    let reps: Vec<Var> = lits
        .iter()
        .flat_map(|l| l.atom.level0_args())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let psi: Vec<Literal> = psi
        .iter()
        .map(|l| l.map(|v| if is_query(pool, v) { v } else { branch.sigma.apply(v) }))
        .collect();
    let mut out = Vec::new();
    let mut stack: Vec<(Binding, usize)> = vec![(Binding::new(), 0)];
    stats.pushed += 1;
    while let Some((sigma, depth)) = stack.pop() {
        stats.popped += 1;
        if depth == psi.len() {
            out.push(sigma);
            continue;
        }
        let q = instantiate(&psi[depth], &sigma);
        let matches = if cfg.semantic_eq && matches!(q.atom, Atom::Eq(..)) {
            semantic_eq_matches(&q, &reps, pool)
        } else {
            match_literal(&q, &lits, pool)
        };
        stats.max_matches = stats.max_matches.max(matches.len());
        for rho in matches.into_iter().rev() {
            let mut next = sigma.clone();
            next.extend(rho);
            stack.push((next, depth + 1));
            stats.pushed += 1;
        }
    }
    out
}

/// Σ′ over all open branches, with provenance.
pub fn answer_set(
    branches: &[NormalizedBranch],
    psi: &[Literal],
    pool: &VarPool,
    cfg: &EngineConfig,
) -> (Vec<RawAnswer>, TreeStats) {
    let mut stats = TreeStats::default();
    let mut out = Vec::new();
    for (i, b) in branches.iter().enumerate() {
        if !b.open {
            continue;
        }
        for (leaf, binding) in answer_branch(b, psi, pool, cfg, &mut stats)
            .into_iter()
            .enumerate()
        {
            out.push(RawAnswer {
                branch: i,
                leaf,
                binding,
            });
        }
    }
    (out, stats)
}

/// A DL-level answer: query variable name to entity.
pub type DlAnswer = BTreeMap<String, Entity>;

fn fits(e: &Entity, sort: Sort, pos: Option<&BTreeSet<Position>>) -> bool {
    if e.sort() != sort {
        return false;
    }
    match (e, pos) {
        (Entity::Individual(_), Some(p)) => !p.contains(&Position::DataValue),
        (Entity::Constant(_), Some(p)) => !p.contains(&Position::Individual),
        _ => true,
    }
}

fn entity_of(
    nm: &NamingMap,
    v: Var,
    sort: Sort,
    include_internal: bool,
) -> Option<Entity> {
    match nm.entity(v) {
        Some(e) => Some(e),
        None if include_internal => Some(Entity::Internal {
            name: nm.name(v),
            sort,
        }),
        None => None,
    }
}

/// Decodes raw answers: each binding is widened to the equality class of
/// its representative on the answer's branch, mapped back to KB names,
/// and filtered by sort and visibility. Answers are keyed by DL
/// substitution with the set of `(branch, leaf)` that produced them.
pub fn decode(
    raw: &[RawAnswer],
    branches: &[NormalizedBranch],
    nm: &NamingMap,
    q: &HoQuery,
    include_internal: bool,
) -> Result<BTreeMap<DlAnswer, BTreeSet<(usize, usize)>>, EngineError> {
    let vars = q.variables();
    let positions = q.positions();
    let mut qvars: Vec<(String, Var, Sort)> = Vec::new();
    for name in vars.all() {
        let sort = vars.sort_of(&name).expect("collected from the query");
        let level = match sort {
            Sort::Individual => Level::Zero,
            Sort::Concept => Level::One,
            Sort::AbstractRole | Sort::ConcreteRole => Level::Three,
        };
        let v = nm
            .pool
            .get(level, &Tag::Query(name.clone()))
            .ok_or_else(|| EngineError::MissingQueryVar(name.clone()))?;
        qvars.push((name, v, sort));
    }
    let level0: Vec<Var> = nm.pool.vars_of_level(Level::Zero).collect();
    let mut out: BTreeMap<DlAnswer, BTreeSet<(usize, usize)>> = BTreeMap::new();
    for r in raw {
        let b = &branches[r.branch];
        let mut choices: Vec<(String, Vec<Entity>)> = Vec::new();
        for (name, v, sort) in &qvars {
            let target = *r
                .binding
                .get(v)
                .ok_or_else(|| EngineError::MissingQueryVar(name.clone()))?;
            let class: Vec<Var> = if nm.pool.level(target) == Level::Zero {
                let mut c: Vec<Var> = level0
                    .iter()
                    .copied()
                    .filter(|x| !is_query(&nm.pool, *x))
                    .filter(|x| !matches!(nm.pool.tag(*x), Tag::Bound(_)))
                    .filter(|x| b.sigma.apply(*x) == target)
                    .collect();
                if !c.contains(&target) {
                    c.push(target);
                }
                c
            } else {
                vec![target]
            };
            let mut es: Vec<Entity> = class
                .into_iter()
                .filter_map(|x| entity_of(nm, x, *sort, include_internal))
                .filter(|e| fits(e, *sort, positions.get(name)))
                .collect();
            es.sort();
            es.dedup();
            choices.push((name.clone(), es));
        }
        let mut partial: Vec<DlAnswer> = vec![DlAnswer::new()];
        for (name, es) in &choices {
            let mut next = Vec::new();
            for p in &partial {
                for e in es {
                    let mut a = p.clone();
                    a.insert(name.clone(), e.clone());
                    next.push(a);
                }
            }
            partial = next;
        }
        for a in partial {
            out.entry(a).or_default().insert((r.branch, r.leaf));
        }
    }
    Ok(out)
}

/// Decodes oracle answers, which bind query variables directly to
/// variables of φ.
pub fn decode_direct(
    answers: &[BTreeMap<Var, Var>],
    nm: &NamingMap,
    q: &HoQuery,
    include_internal: bool,
) -> BTreeSet<DlAnswer> {
    let vars = q.variables();
    let positions = q.positions();
    let mut out = BTreeSet::new();
    'next: for ans in answers {
        let mut a = DlAnswer::new();
        for (v, target) in ans {
            let Tag::Query(name) = nm.pool.tag(*v) else {
                continue;
            };
            let sort = vars.sort_of(name).unwrap_or(Sort::Individual);
            match entity_of(nm, *target, sort, include_internal) {
                Some(e) if fits(&e, sort, positions.get(name)) => {
                    a.insert(name.clone(), e);
                }
                _ => continue 'next,
            }
        }
        out.insert(a);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::setcalc::Substitution;

    struct G {
        pool: VarPool,
        a: Var,
        b: Var,
        c: Var,
        d: Var,
        x: Var,
        qc: Var,
    }

    fn g() -> G {
        let mut pool = VarPool::new();
        let a = pool.intern(Level::Zero, Tag::Individual("a".into()));
        let b = pool.intern(Level::Zero, Tag::Individual("b".into()));
        let c = pool.intern(Level::One, Tag::Concept("C".into()));
        let d = pool.intern(Level::One, Tag::Concept("D".into()));
        let x = pool.intern(Level::Zero, Tag::Query("?x".into()));
        let qc = pool.intern(Level::One, Tag::Query("?c".into()));
        G {
            pool,
            a,
            b,
            c,
            d,
            x,
            qc,
        }
    }

    fn branch(lits: Vec<Literal>) -> NormalizedBranch {
        NormalizedBranch {
            leaf: 0,
            node: 0,
            sigma: Substitution::new(),
            steps: vec![],
            literals: lits,
            open: true,
        }
    }

    #[test]
    fn individual_variable_matches_one_literal() {
        let g = g();
        let lits = vec![Literal::pos(Atom::mem1(g.a, g.c)), Literal::pos(Atom::mem1(g.b, g.d))];
        let m = match_literal(&Literal::pos(Atom::mem1(g.x, g.c)), &lits, &g.pool);
        assert_eq!(m, vec![Binding::from([(g.x, g.a)])]);
    }

    #[test]
    fn concept_variable_matches_every_set() {
        let mut g = g();
        let top = g.pool.intern(Level::One, Tag::Top);
        let lits = vec![Literal::pos(Atom::mem1(g.a, g.c)), Literal::pos(Atom::mem1(g.a, top))];
        let m = match_literal(&Literal::pos(Atom::mem1(g.a, g.qc)), &lits, &g.pool);
        assert_eq!(m.len(), 2);
    }

    #[test]
    fn negative_template_needs_negative_literal() {
        let mut g = g();
        let r = g.pool.intern(Level::Three, Tag::Query("?r".into()));
        let lits = vec![Literal::pos(Atom::mem1(g.a, g.c))];
        assert!(match_literal(&Literal::neg(Atom::mem3(g.a, g.b, r)), &lits, &g.pool).is_empty());
    }

    #[test]
    fn empty_query_yields_empty_substitution() {
        let g = g();
        let b = branch(vec![Literal::pos(Atom::mem1(g.a, g.c))]);
        let mut st = TreeStats::default();
        let out = answer_branch(&b, &[], &g.pool, &EngineConfig::default(), &mut st);
        assert_eq!(out, vec![Binding::new()]);
    }

    #[test]
    fn two_conjuncts_share_a_variable() {
        let g = g();
        let b = branch(vec![Literal::pos(Atom::mem1(g.a, g.c)), Literal::pos(Atom::mem1(g.a, g.d))]);
        let psi = [Literal::pos(Atom::mem1(g.x, g.c)), Literal::pos(Atom::mem1(g.x, g.d))];
        let mut st = TreeStats::default();
        let out = answer_branch(&b, &psi, &g.pool, &EngineConfig::default(), &mut st);
        assert_eq!(out, vec![Binding::from([(g.x, g.a)])]);
        assert_eq!(st.pushed, st.popped);
    }

    #[test]
    fn dead_end_at_second_conjunct() {
        let g = g();
        let b = branch(vec![Literal::pos(Atom::mem1(g.a, g.c))]);
        let psi = [Literal::pos(Atom::mem1(g.x, g.c)), Literal::pos(Atom::mem1(g.x, g.d))];
        let mut st = TreeStats::default();
        assert!(answer_branch(&b, &psi, &g.pool, &EngineConfig::default(), &mut st).is_empty());
    }

    #[test]
    fn equality_template_matches_seeded_reflexive_literal() {
        let g = g();
        let b = branch(vec![Literal::pos(Atom::mem1(g.a, g.c))]);
        let psi = [Literal::pos(Atom::eq(g.x, g.a))];
        let mut st = TreeStats::default();
        let out = answer_branch(&b, &psi, &g.pool, &EngineConfig::default(), &mut st);
        assert_eq!(out, vec![Binding::from([(g.x, g.a)])]);
    }

    #[test]
    fn semantic_inequality() {
        let g = g();
        let b = branch(vec![Literal::pos(Atom::mem1(g.a, g.c)), Literal::pos(Atom::mem1(g.b, g.c))]);
        let psi = [Literal::neg(Atom::eq(g.x, g.a))];
        let mut st = TreeStats::default();
        let literal = answer_branch(&b, &psi, &g.pool, &EngineConfig::default(), &mut st);
        assert!(literal.is_empty());
        let cfg = EngineConfig { semantic_eq: true };
        let semantic = answer_branch(&b, &psi, &g.pool, &cfg, &mut st);
        assert_eq!(semantic, vec![Binding::from([(g.x, g.b)])]);
    }
}
