//! Ground instantiation of purely universal conjuncts over the level-0
//! variables of a formula.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::setcalc::{Clause, Formula, Level, Literal, PurelyUniversal, Var, VarPool};

/// Instance counts of one universal conjunct.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UniversalStats {
    /// Number of quantified variables.
    pub quantifiers: usize,
    /// Matrix instances produced before deduplication.
    pub instances: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionResult {
    /// Ground literals of φ, carried over as they are.
    pub ground: Vec<Literal>,
    /// Instantiated clauses of all universals, canonical and deduplicated.
    pub clauses: Vec<Clause>,
    pub per_universal: Vec<UniversalStats>,
    /// Number of universal conjuncts.
    pub m: usize,
    /// Number of level-0 variables.
    pub k: usize,
    /// Maximum number of quantifiers of a conjunct.
    pub r: usize,
    /// Maximum number of literals of a conjunct.
    pub l: usize,
    /// Vacuous universals when there are no level-0 variables.
    pub diagnostics: Vec<String>,
}

impl ExpansionResult {
    /// Disjunctions in the initial branch before deduplication.
    pub fn disjunction_count(&self) -> usize {
        self.per_universal.iter().map(|u| u.instances).sum()
    }

    /// `m · k^r`, saturating.
    pub fn bound(&self) -> u128 {
        (self.m as u128).saturating_mul((self.k as u128).saturating_pow(self.r as u32))
    }

    pub fn render(&self, pool: &VarPool) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "# m={} k={} r={} l={} clauses={} ground={}",
            self.m,
            self.k,
            self.r,
            self.l,
            self.clauses.len(),
            self.ground.len()
        );
        for g in &self.ground {
            let _ = writeln!(out, "{}", pool.show(g));
        }
        for c in &self.clauses {
            let _ = writeln!(out, "{}", pool.show(c));
        }
        out
    }
}

/// Every instance of `s` under a map from its quantified variables to
/// `var0`, duplicates removed, in first-produced order.
pub fn expand_one(s: &PurelyUniversal, var0: &[Var]) -> Vec<Clause> {
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    instances(s, var0, |c| {
        if seen.insert(c.clone()) {
            out.push(c);
        }
    });
    out
}

fn instances(s: &PurelyUniversal, var0: &[Var], mut emit: impl FnMut(Clause)) -> usize {
    let bound = s.bound();
    let n = bound.len();
    if n > 0 && var0.is_empty() {
        return 0;
    }
    let mut idx = vec![0usize; n];
    let mut count = 0;
    loop {
        let image = |v: Var| match bound.iter().position(|b| *b == v) {
            Some(i) => var0[idx[i]],
            None => v,
        };
        for c in s.matrix() {
            emit(c.map(image));
            count += 1;
        }
        let mut k = 0;
        loop {
            if k == n {
                return count;
            }
            idx[k] += 1;
            if idx[k] < var0.len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

/// Expansion of φ: its ground literals plus every universal's instances.
pub fn build_expansion(phi: &Formula, pool: &VarPool) -> ExpansionResult {
    let var0: Vec<Var> = phi.vars_of_level(pool, Level::Zero).into_iter().collect();
    let mut seen = BTreeSet::new();
    let mut clauses = Vec::new();
    let mut per_universal = Vec::new();
    let mut diagnostics = Vec::new();
    for (i, u) in phi.universals.iter().enumerate() {
        if var0.is_empty() && !u.bound().is_empty() {
            diagnostics.push(format!("universal #{i} is vacuous: no level-0 variables"));
        }
        let produced = instances(u, &var0, |c| {
            if seen.insert(c.clone()) {
                clauses.push(c);
            }
        });
        per_universal.push(UniversalStats {
            quantifiers: u.bound().len(),
            instances: produced,
        });
    }
    let mut ground = Vec::new();
    let mut seen_ground = BTreeSet::new();
    for g in &phi.ground {
        if seen_ground.insert(*g) {
            ground.push(*g);
        }
    }
    ExpansionResult {
        ground,
        clauses,
        m: phi.universals.len(),
        k: var0.len(),
        r: phi.universals.iter().map(|u| u.bound().len()).max().unwrap_or(0),
        l: phi
            .universals
            .iter()
            .map(|u| u.matrix().iter().map(Clause::len).sum::<usize>())
            .max()
            .unwrap_or(0),
        per_universal,
        diagnostics,
    }
}
