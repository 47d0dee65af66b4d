use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use hocqa::engine::DlAnswer;
use hocqa::frontend::{parse_concept, parse_kb, parse_query, parse_role, print_kb, print_query};
use hocqa::gen::{self, KbShape};
use hocqa::kb::KnowledgeBase;
use hocqa::oracle::OracleConfig;
use hocqa::pipeline::{
    consistency, oracle_answers, oracle_consistent, run_query, OrderChoice, PipelineError,
    QueryRun, ReasonerConfig, Saturated,
};
use hocqa::query::{Entity, HoQuery};
use hocqa::services::{self, ServiceAnswer, ServiceError, ServiceOutcome, ServiceRequest, ServiceRun};

const INCONSISTENT: &str = "closed tableau";

#[derive(Parser)]
#[command(name = "reason", version, about = "Higher-order conjunctive query answering over DL knowledge bases")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the KB's tableau stays open.
    Consistency {
        #[command(flatten)]
        common: Common,
    },
    /// Answer a higher-order conjunctive query.
    Query {
        #[command(flatten)]
        common: Common,
        /// Query file (`.hq`); generated from the seed when omitted with `--seed`.
        #[arg(long)]
        query: Option<PathBuf>,
    },
    /// Instance check, possibility reading: some model puts IND in CONCEPT.
    Check {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        ind: String,
        #[arg(long)]
        concept: String,
    },
    /// Instance check, entailment reading: every model puts IND in CONCEPT.
    Entails {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        ind: String,
        #[arg(long)]
        concept: String,
    },
    /// Individuals that can belong to CONCEPT.
    RetrieveInstances {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        concept: String,
    },
    /// Fillers of ROLE for IND.
    RetrieveFillers {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        ind: String,
        #[arg(long)]
        role: String,
    },
    /// Concept names IND can belong to.
    RetrieveConcepts {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        ind: String,
    },
    /// Abstract roles linking IND to OBJECT.
    RetrieveRoles {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        ind: String,
        #[arg(long)]
        object: String,
    },
    /// Brute-force reference: satisfiability, or the answer set of a query.
    Oracle {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        query: Option<PathBuf>,
        /// Largest ground atom universe to enumerate.
        #[arg(long, default_value_t = 20_000)]
        max_atoms: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    JsonLines,
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Order {
    File,
    Lexical,
}

#[derive(Args)]
struct Common {
    /// Knowledge base file (`.dl4`).
    #[arg(long, required_unless_present = "seed", conflicts_with = "seed")]
    kb: Option<PathBuf>,
    /// Use a generated KB (and query) instead of files.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, value_enum, default_value = "json-lines")]
    format: Format,
    /// Report internal variables among the answers.
    #[arg(long)]
    include_internal: bool,
    /// Evaluate equality atoms in the branch model.
    #[arg(long)]
    semantic_eq: bool,
    /// Show the branches each answer comes from (stderr).
    #[arg(long)]
    explain: bool,
    /// Print the tableau rule trace (stderr).
    #[arg(long)]
    trace: bool,
    /// Print the 4LQS translation (stderr).
    #[arg(long = "emit-4lqs")]
    emit_4lqs: bool,
    /// Print the ground expansion (stderr).
    #[arg(long)]
    emit_expansion: bool,
    #[arg(long)]
    max_branches: Option<usize>,
    /// Variable order for equality normalization.
    #[arg(long, value_enum, default_value = "file")]
    order: Order,
}

enum Failure {
    Input(String),
    Resource(String),
}

impl From<PipelineError> for Failure {
    fn from(e: PipelineError) -> Self {
        if e.is_resource() {
            Failure::Resource(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

impl From<ServiceError> for Failure {
    fn from(e: ServiceError) -> Self {
        if e.is_resource() {
            Failure::Resource(e.to_string())
        } else {
            Failure::Input(e.to_string())
        }
    }
}

struct Session {
    kb: KnowledgeBase,
    cfg: ReasonerConfig,
    common: Common,
    out: String,
    err: String,
}

impl Session {
    fn new(common: Common) -> Result<Self, Failure> {
        let kb = match (&common.kb, common.seed) {
            (Some(path), _) => {
                let text = read(path)?;
                parse_kb(&text).map_err(|e| Failure::Input(format!("{}:{e}", path.display())))?
            }
            (None, Some(seed)) => gen::kb(&mut gen::rng(seed), &KbShape::small()),
            (None, None) => return Err(Failure::Input("no knowledge base given".into())),
        };
        let mut cfg = ReasonerConfig::default();
        cfg.include_internal = common.include_internal;
        cfg.engine.semantic_eq = common.semantic_eq;
        cfg.tableau.trace = common.trace;
        if common.max_branches.is_some() {
            cfg.tableau.max_branches = common.max_branches;
        }
        cfg.order = match common.order {
            Order::File => OrderChoice::KbFirst,
            Order::Lexical => OrderChoice::Lexical,
        };
        let mut err = String::new();
        if common.seed.is_some() {
            let _ = writeln!(err, "# kb\n{}", print_kb(&kb));
        }
        Ok(Session {
            kb,
            cfg,
            common,
            out: String::new(),
            err,
        })
    }

    fn query_text(&mut self, path: Option<&PathBuf>) -> Result<HoQuery, Failure> {
        match (path, self.common.seed) {
            (Some(p), _) => {
                let text = read(p)?;
                parse_query(&text, Some(&self.kb))
                    .map_err(|e| Failure::Input(format!("{}:{e}", p.display())))
            }
            (None, Some(seed)) => {
                let mut r = gen::rng(seed);
                let _ = gen::kb(&mut r, &KbShape::small());
                let q = gen::query(&mut r, &self.kb, 3);
                let _ = writeln!(self.err, "# query\n{}", print_query(&q));
                Ok(q)
            }
            (None, None) => Err(Failure::Input("no query given".into())),
        }
    }

    fn emit(&mut self, s: &Saturated) {
        let pool = s.translation.pool();
        if self.common.emit_4lqs {
            let _ = writeln!(self.err, "# 4LQS\n{}", s.translation.emit_4lqs());
        }
        if self.common.emit_expansion {
            let _ = writeln!(self.err, "# expansion\n{}", s.expansion.render(pool));
        }
        if self.common.trace {
            let _ = writeln!(self.err, "# trace\n{}", s.saturation.render_trace(pool));
        }
    }

    fn explain(&mut self, run: &QueryRun) {
        if !self.common.explain {
            return;
        }
        let pool = run.saturated.translation.pool();
        let _ = writeln!(self.err, "# explain");
        for (answer, sources) in &run.answers {
            let srcs: Vec<String> = sources.iter().map(|(b, l)| format!("branch {b} leaf {l}")).collect();
            let _ = writeln!(self.err, "{}: {}", answer_text(answer), srcs.join(", "));
        }
        let used: BTreeSet<usize> = run.answers.values().flatten().map(|(b, _)| *b).collect();
        for b in used {
            let nb = &run.saturated.branches[b];
            let _ = writeln!(self.err, "branch {b}:\n{}", nb.render_steps(pool));
        }
    }

    fn line(&mut self, v: Value) {
        let _ = writeln!(self.out, "{v}");
    }

    fn inconsistent(&mut self) -> u8 {
        self.inconsistent_because(INCONSISTENT)
    }

    fn inconsistent_because(&mut self, reason: &str) -> u8 {
        match self.common.format {
            Format::JsonLines => self.line(json!({ "consistent": false, "reason": reason })),
            Format::Table => {
                let _ = writeln!(self.out, "inconsistent: {reason}");
            }
        }
        1
    }

    fn boolean(&mut self, b: bool) -> u8 {
        let _ = writeln!(self.out, "{b}");
        0
    }

    fn answers(&mut self, vars: &[String], answers: &BTreeSet<DlAnswer>) -> u8 {
        match self.common.format {
            Format::JsonLines => {
                for a in answers {
                    let mut m = Map::new();
                    for (k, v) in a {
                        m.insert(k.clone(), Value::String(v.to_string()));
                    }
                    self.line(Value::Object(m));
                }
            }
            Format::Table => {
                let _ = writeln!(self.out, "{}", vars.join("\t"));
                for a in answers {
                    let row: Vec<String> = vars
                        .iter()
                        .map(|v| a.get(v).map(|e| e.to_string()).unwrap_or_default())
                        .collect();
                    let _ = writeln!(self.out, "{}", row.join("\t"));
                }
            }
        }
        0
    }

    fn entities(&mut self, var: &str, es: &BTreeSet<Entity>) -> u8 {
        let answers: BTreeSet<DlAnswer> = es
            .iter()
            .map(|e| BTreeMap::from([(var.to_string(), e.clone())]))
            .collect();
        self.answers(&[var.to_string()], &answers)
    }

    fn service(&mut self, run: ServiceRun, var: Option<&str>) -> u8 {
        match &run.query {
            Some(q) => {
                self.emit(&q.saturated);
                self.explain(q);
            }
            None => self.emit(&run.consistency),
        }
        match run.outcome {
            ServiceOutcome::Inconsistent => self.inconsistent(),
            ServiceOutcome::Answered(ServiceAnswer::Bool(b)) => self.boolean(b),
            ServiceOutcome::Answered(ServiceAnswer::Entities(es)) => {
                self.entities(var.expect("retrievals report one variable"), &es)
            }
            ServiceOutcome::Answered(ServiceAnswer::Substitutions(a)) => {
                let vars: Vec<String> = run
                    .query
                    .as_ref()
                    .map(|q| q.answer_set().iter().flat_map(|a| a.keys().cloned()).collect::<BTreeSet<_>>())
                    .unwrap_or_default()
                    .into_iter()
                    .collect();
                self.answers(&vars, &a)
            }
        }
    }
}

fn answer_text(a: &DlAnswer) -> String {
    if a.is_empty() {
        return "ε".into();
    }
    let parts: Vec<String> = a.iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("{{{}}}", parts.join(", "))
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn query_vars(q: &HoQuery) -> Vec<String> {
    q.variables().all().into_iter().collect()
}

fn dispatch(cmd: Command) -> Result<(Session, u8), Failure> {
    let concept = |s: &Session, text: &str| {
        parse_concept(text, &s.kb).map_err(|e| Failure::Input(format!("--concept: {e}")))
    };
    match cmd {
        Command::Consistency { common } => {
            let mut s = Session::new(common)?;
            let sat = consistency(&s.kb, &s.cfg)?;
            s.emit(&sat);
            let code = if sat.consistent() {
                match s.common.format {
                    Format::JsonLines => s.line(json!({ "consistent": true })),
                    Format::Table => {
                        let _ = writeln!(s.out, "consistent");
                    }
                }
                0
            } else {
                s.inconsistent()
            };
            Ok((s, code))
        }
        Command::Query { common, query } => {
            let mut s = Session::new(common)?;
            let q = s.query_text(query.as_ref())?;
            let sat = consistency(&s.kb, &s.cfg)?;
            if !sat.consistent() {
                s.emit(&sat);
                let code = s.inconsistent();
                return Ok((s, code));
            }
            let run = run_query(&s.kb, &q, &s.cfg)?;
            s.emit(&run.saturated);
            s.explain(&run);
            let code = s.answers(&query_vars(&q), &run.answer_set());
            Ok((s, code))
        }
        Command::Check { common, ind, concept: c } => {
            let mut s = Session::new(common)?;
            let req = ServiceRequest::InstanceCheck {
                individual: ind,
                concept: concept(&s, &c)?,
            };
            let run = services::run_detailed(&req, &s.kb, &s.cfg)?;
            let code = s.service(run, None);
            Ok((s, code))
        }
        Command::Entails { common, ind, concept: c } => {
            let mut s = Session::new(common)?;
            let c = concept(&s, &c)?;
            let run = services::entails_detailed(&s.kb, &ind, &c, &s.cfg)?;
            let code = s.service(run, None);
            Ok((s, code))
        }
        Command::RetrieveInstances { common, concept: c } => {
            let mut s = Session::new(common)?;
            let req = ServiceRequest::InstanceRetrieval {
                concept: concept(&s, &c)?,
            };
            let run = services::run_detailed(&req, &s.kb, &s.cfg)?;
            let code = s.service(run, Some(services::INDIVIDUAL_VAR));
            Ok((s, code))
        }
        Command::RetrieveFillers { common, ind, role } => {
            let mut s = Session::new(common)?;
            let role = parse_role(&role, &s.kb).map_err(|e| Failure::Input(format!("--role: {e}")))?;
            let req = ServiceRequest::RoleFillerRetrieval {
                individual: ind,
                role,
            };
            let run = services::run_detailed(&req, &s.kb, &s.cfg)?;
            let code = s.service(run, Some(services::FILLER_VAR));
            Ok((s, code))
        }
        Command::RetrieveConcepts { common, ind } => {
            let mut s = Session::new(common)?;
            let req = ServiceRequest::ConceptRetrieval { individual: ind };
            let run = services::run_detailed(&req, &s.kb, &s.cfg)?;
            let code = s.service(run, Some(services::CONCEPT_VAR));
            Ok((s, code))
        }
        Command::RetrieveRoles { common, ind, object } => {
            let mut s = Session::new(common)?;
            let req = ServiceRequest::RoleInstanceRetrieval {
                subject: ind,
                object,
            };
            let run = services::run_detailed(&req, &s.kb, &s.cfg)?;
            let code = s.service(run, Some(services::ROLE_VAR));
            Ok((s, code))
        }
        Command::Oracle {
            common,
            query,
            max_atoms,
        } => {
            let mut s = Session::new(common)?;
            let ocfg = OracleConfig {
                max_atoms,
                ..OracleConfig::desk()
            };
            if !oracle_consistent(&s.kb, &ocfg)? {
                let code = s.inconsistent_because("no model");
                return Ok((s, code));
            }
            if query.is_none() && s.common.seed.is_none() {
                match s.common.format {
                    Format::JsonLines => s.line(json!({ "consistent": true })),
                    Format::Table => {
                        let _ = writeln!(s.out, "consistent");
                    }
                }
                return Ok((s, 0));
            }
            let q = s.query_text(query.as_ref())?;
            let answers = oracle_answers(&s.kb, &q, &ocfg, s.common.include_internal)?;
            let code = s.answers(&query_vars(&q), &answers);
            Ok((s, code))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok((s, code)) => {
            let _ = std::io::stderr().write_all(s.err.as_bytes());
            let _ = std::io::stdout().write_all(s.out.as_bytes());
            ExitCode::from(code)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(m)) => {
            eprintln!("resource bound: {m}");
            ExitCode::from(3)
        }
    }
}
