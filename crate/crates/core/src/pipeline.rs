//! End-to-end composition: translation, expansion, saturation,
//! normalization, matching and decoding.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::engine::{self, DlAnswer, EngineConfig, EngineError, RawAnswer, TreeStats};
use crate::grounder::{build_expansion, ExpansionResult};
use crate::kb::{validate, Diagnostic, KnowledgeBase, Severity};
use crate::oracle::{brute_answer_set, satisfiable, OracleConfig, OracleError};
use crate::query::{HoQuery, QueryError};
use crate::setcalc::Literal;
use crate::tableau::{
    normalize_all, normalize_equalities, saturate, saturate_until, NormalizedBranch, Saturation, TableauConfig, TableauError, VarOrder,
};
use crate::translator::{build_for_query, build_phi_kb, TranslateError, Translation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PipelineError {
    #[error("invalid knowledge base: {}", .0.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidKb(Vec<Diagnostic>),
    #[error(transparent)]
    Query(#[from] QueryError),
    #[error(transparent)]
    Translate(#[from] TranslateError),
    #[error(transparent)]
    Tableau(#[from] TableauError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

impl PipelineError {
    pub fn is_resource(&self) -> bool {
        matches!(
            self,
            PipelineError::Tableau(TableauError::TooManyBranches(_)) | PipelineError::Oracle(_)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrderChoice {
    /// Individuals by first occurrence in the KB, then the rest by name.
    #[default]
    KbFirst,
    Lexical,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ReasonerConfig {
    pub tableau: TableauConfig,
    pub order: OrderChoice,
    pub engine: EngineConfig,
    pub include_internal: bool,
}

/// A saturated and normalized tableau for φ.
#[derive(Debug, Clone)]
pub struct Saturated {
    pub translation: Translation,
    pub expansion: ExpansionResult,
    pub saturation: Saturation,
    pub branches: Vec<NormalizedBranch>,
}

impl Saturated {
    /// Some branch stays open after normalization.
    pub fn consistent(&self) -> bool {
        self.branches.iter().any(|b| b.open)
    }

    pub fn open_branches(&self) -> impl Iterator<Item = &NormalizedBranch> {
        self.branches.iter().filter(|b| b.open)
    }
}

fn check(kb: &KnowledgeBase) -> Result<(), PipelineError> {
    let errors: Vec<Diagnostic> = validate(kb)
        .into_iter()
        .filter(|d| d.severity == Severity::Error)
        .collect();
    if errors.is_empty() {
        Ok(())
    } else {
        Err(PipelineError::InvalidKb(errors))
    }
}

fn order_for(kb: &KnowledgeBase, choice: OrderChoice) -> VarOrder {
    match choice {
        OrderChoice::KbFirst => VarOrder::with_individuals(&kb.individuals_in_order()),
        OrderChoice::Lexical => VarOrder::lexical(),
    }
}

fn finish(
    kb: &KnowledgeBase,
    translation: Translation,
    cfg: &ReasonerConfig,
) -> Result<Saturated, PipelineError> {
    let expansion = build_expansion(&translation.phi, translation.pool());
    let saturation = saturate(&expansion, &cfg.tableau)?;
    let branches = normalize_all(&saturation, &order_for(kb, cfg.order), translation.pool());
    Ok(Saturated {
        translation,
        expansion,
        saturation,
        branches,
    })
}

/// Saturates φ_KB.
pub fn saturate_kb(kb: &KnowledgeBase, cfg: &ReasonerConfig) -> Result<Saturated, PipelineError> {
    check(kb)?;
    finish(kb, build_phi_kb(kb), cfg)
}

/// Saturates φ_KB only until some leaf stays open after normalization.
/// The tableau is closed exactly when the search runs to the end.
pub fn consistency(kb: &KnowledgeBase, cfg: &ReasonerConfig) -> Result<Saturated, PipelineError> {
    check(kb)?;
    let translation = build_phi_kb(kb);
    let expansion = build_expansion(&translation.phi, translation.pool());
    let order = order_for(kb, cfg.order);
    let pool = translation.pool();
    let mut found = None;
    let mut count = 0;
    let saturation = saturate_until(&expansion, &cfg.tableau, &mut |leaf| {
        let b = normalize_equalities(count, leaf, &order, pool);
        count += 1;
        let open = b.open;
        if open {
            found = Some(b);
        }
        open
    })?;
    let branches = match found {
        Some(mut b) => {
            b.leaf = saturation.leaves.len() - 1;
            vec![b]
        }
        None => normalize_all(&saturation, &order, pool),
    };
    Ok(Saturated {
        translation,
        expansion,
        saturation,
        branches,
    })
}

#[derive(Debug, Clone)]
pub struct QueryRun {
    pub saturated: Saturated,
    /// ψ_Q.
    pub psi: Vec<Literal>,
    pub raw: Vec<RawAnswer>,
    pub tree: TreeStats,
    pub answers: BTreeMap<DlAnswer, BTreeSet<(usize, usize)>>,
}

impl QueryRun {
    pub fn answer_set(&self) -> BTreeSet<DlAnswer> {
        self.answers.keys().cloned().collect()
    }
}

/// Answers a query over a knowledge base.
pub fn run_query(
    kb: &KnowledgeBase,
    q: &HoQuery,
    cfg: &ReasonerConfig,
) -> Result<QueryRun, PipelineError> {
    check(kb)?;
    q.check_sorts()?;
    let (translation, psi) = build_for_query(kb, q)?;
    let saturated = finish(kb, translation, cfg)?;
    let pool = saturated.translation.pool();
    let (raw, tree) = engine::answer_set(&saturated.branches, &psi, pool, &cfg.engine);
    let answers = engine::decode(
        &raw,
        &saturated.branches,
        &saturated.translation.naming,
        q,
        cfg.include_internal,
    )?;
    Ok(QueryRun {
        saturated,
        psi,
        raw,
        tree,
        answers,
    })
}

/// Satisfiability of φ_KB by the brute-force oracle.
pub fn oracle_consistent(kb: &KnowledgeBase, cfg: &OracleConfig) -> Result<bool, PipelineError> {
    check(kb)?;
    let t = build_phi_kb(kb);
    Ok(satisfiable(&t.phi, t.pool(), cfg)?.is_some())
}

/// Answer set computed by the brute-force oracle.
pub fn oracle_answers(
    kb: &KnowledgeBase,
    q: &HoQuery,
    cfg: &OracleConfig,
    include_internal: bool,
) -> Result<BTreeSet<DlAnswer>, PipelineError> {
    check(kb)?;
    q.check_sorts()?;
    let (t, psi) = build_for_query(kb, q)?;
    let raw = brute_answer_set(&t.phi, &psi, t.pool(), cfg)?;
    Ok(engine::decode_direct(&raw, &t.naming, q, include_internal))
}
