//! Text syntax for knowledge bases (`.dl4`) and queries (`.hq`).
//!
//! ```text
//! datatype int { constants: "1", "2"; facets: small = {"1"}; }
//! decl concrete age
//! Person <= forall hasParent . Person
//! chain(R1, R2) <= R3
//! a : Person
//! (a, "1"^int) : age
//! ```
//!
//! Queries are conjunctions such as `Person(?x) & hasParent(?x, b)`,
//! `?c(a)` or `!hasCar(?p, ?c)`.

mod convert;
mod lexer;
mod printer;
mod syntax;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::kb::{Concept, ConcreteRole, KnowledgeBase, Role};
use crate::query::{HoAtom, HoLiteral, HoQuery, Term};

pub use lexer::Span;
pub use printer::{
    concept as print_concept, concrete as print_concrete, data as print_data, print_kb,
    print_query, role as print_role, statement as print_statement,
};

use convert::{classify, kinds_of, Converter, Kinds};
use lexer::Tok;
use syntax::{Elem, Expr, Kind, Parser};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: u32,
    pub col: u32,
    pub message: String,
    pub expected: Vec<String>,
}

impl ParseError {
    pub(crate) fn new(span: Span, message: String, expected: &[&str]) -> Self {
        ParseError {
            line: span.line,
            col: span.col,
            message,
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    pub fn span(&self) -> Span {
        Span {
            line: self.line,
            col: self.col,
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.col, self.message)?;
        if !self.expected.is_empty() {
            write!(f, " (expected {})", self.expected.join(", "))?;
        }
        Ok(())
    }
}

fn tokens(text: &str) -> Result<Parser, ParseError> {
    let toks = lexer::lex(text).map_err(|e| ParseError::new(e.span, e.message, &["token"]))?;
    Ok(Parser::new(toks))
}

/// Parses a knowledge base document.
pub fn parse_kb(text: &str) -> Result<KnowledgeBase, ParseError> {
    let stmts = tokens(text)?.document()?;
    convert::build_kb(&stmts)
}

#[derive(Debug, Clone)]
struct QTerm {
    term: Term,
    data_hint: bool,
}

#[derive(Debug, Clone)]
enum QPred {
    Name(String),
    Var(String),
    Expr(Expr),
}

#[derive(Debug, Clone)]
enum QAtom {
    Pred(QPred, Vec<QTerm>),
    /// `strict` marks `==`, which always compares data values.
    Eq { lhs: QTerm, rhs: QTerm, strict: bool },
}

#[derive(Debug, Clone)]
struct QLit {
    positive: bool,
    atom: QAtom,
    span: Span,
}

const TERM_START: &[&str] = &["variable", "identifier", "constant"];

fn q_term(p: &mut Parser) -> Result<QTerm, ParseError> {
    let data_hint = p.at_ident("data")
        && matches!(p.peek_at(1), Tok::Var(_) | Tok::Ident(_) | Tok::Str(_));
    if data_hint {
        p.bump();
    }
    let term = match p.peek().clone() {
        Tok::Var(v) => {
            p.bump();
            Term::Var(v)
        }
        Tok::Ident(_) | Tok::Str(_) => match p.elem()? {
            Elem::Ind(a) => Term::Individual(a),
            Elem::Const(c) => Term::Constant(c),
        },
        _ => return Err(p.unexpected(TERM_START)),
    };
    Ok(QTerm { term, data_hint })
}

fn q_literal(p: &mut Parser) -> Result<QLit, ParseError> {
    let span = p.span();
    let mut positive = !p.eat(&Tok::Bang);
    let is_term = matches!(p.peek(), Tok::Var(_) | Tok::Ident(_) | Tok::Str(_))
        || (p.at_ident("data") && matches!(p.peek_at(1), Tok::Var(_) | Tok::Ident(_)));
    let eq_next = |k: usize| matches!(p.peek_at(k), Tok::Eq | Tok::Neq | Tok::Equiv);
    let data_kw = p.at_ident("data") && !matches!(p.peek_at(1), Tok::LParen);
    let offset = if data_kw { 2 } else { 1 };
    let offset = if matches!(p.peek_at(offset - 1), Tok::Str(_)) {
        offset + 2
    } else {
        offset
    };
    if is_term && eq_next(offset) {
        let lhs = q_term(p)?;
        let op = p.bump().tok;
        let rhs = q_term(p)?;
        if op == Tok::Neq {
            if !positive {
                return Err(ParseError::new(
                    span,
                    "`!` cannot negate `!=`".into(),
                    &["`=`"],
                ));
            }
            positive = false;
        }
        return Ok(QLit {
            positive,
            atom: QAtom::Eq {
                lhs,
                rhs,
                strict: op == Tok::Equiv,
            },
            span,
        });
    }
    let pred = match p.peek().clone() {
        Tok::Var(v) => {
            p.bump();
            QPred::Var(v)
        }
        Tok::Ident(n) if *p.peek_at(1) == Tok::LParen => {
            p.bump();
            QPred::Name(n)
        }
        Tok::LParen => {
            p.bump();
            let e = p.expr()?;
            p.expect(Tok::RParen)?;
            QPred::Expr(e)
        }
        _ => return Err(p.unexpected(&["predicate", "variable", "`(`"])),
    };
    p.expect(Tok::LParen)?;
    let mut args = vec![q_term(p)?];
    while p.eat(&Tok::Comma) {
        args.push(q_term(p)?);
    }
    p.expect(Tok::RParen)?;
    if args.len() > 2 {
        return Err(ParseError::new(
            span,
            format!("atoms take one or two arguments, found {}", args.len()),
            &["`)`"],
        ));
    }
    Ok(QLit {
        positive,
        atom: QAtom::Pred(pred, args),
        span,
    })
}

fn data_vars(lits: &[QLit], kinds: &Kinds) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    let is_data = |t: &QTerm, out: &BTreeSet<String>| {
        t.data_hint
            || matches!(t.term, Term::Constant(_))
            || matches!(&t.term, Term::Var(v) if out.contains(v))
    };
    loop {
        let before = out.len();
        for l in lits {
            match &l.atom {
                QAtom::Pred(pred, args) if args.len() == 2 => {
                    let known = match pred {
                        QPred::Name(n) => kinds.get(n) == Some(&Kind::Concrete),
                        QPred::Expr(e) => classify(e, kinds) == Some(Kind::Concrete),
                        QPred::Var(_) => false,
                    };
                    if known || is_data(&args[1], &out) {
                        if let Term::Var(v) = &args[1].term {
                            out.insert(v.clone());
                        }
                    }
                }
                QAtom::Pred(_, args) => {
                    for a in args {
                        if let (true, Term::Var(v)) = (a.data_hint, &a.term) {
                            out.insert(v.clone());
                        }
                    }
                }
                QAtom::Eq { lhs, rhs, strict } => {
                    if *strict || is_data(lhs, &out) || is_data(rhs, &out) {
                        for t in [lhs, rhs] {
                            if let Term::Var(v) = &t.term {
                                out.insert(v.clone());
                            }
                        }
                    }
                }
            }
        }
        if out.len() == before {
            return out;
        }
    }
}

/// Parses a query. With a knowledge base, names and complex predicates
/// take their sort from its signature.
pub fn parse_query(text: &str, kb: Option<&KnowledgeBase>) -> Result<HoQuery, ParseError> {
    let mut p = tokens(text)?;
    p.skip_separators();
    let mut lits = Vec::new();
    if !p.at(&Tok::Eof) {
        lits.push(q_literal(&mut p)?);
        while p.eat(&Tok::Amp) {
            lits.push(q_literal(&mut p)?);
        }
    }
    p.skip_separators();
    if !p.at(&Tok::Eof) {
        return Err(p.unexpected(&["`&`", "end of input"]));
    }
    let kinds = kb.map(kinds_of).unwrap_or_default();
    let data = data_vars(&lits, &kinds);
    let is_data = |t: &QTerm| {
        t.data_hint
            || matches!(t.term, Term::Constant(_))
            || matches!(&t.term, Term::Var(v) if data.contains(v))
    };
    let conv = Converter { kinds: &kinds };
    let mut out = Vec::new();
    for l in &lits {
        let atom = match &l.atom {
            QAtom::Eq { lhs, rhs, strict } => {
                if *strict || is_data(lhs) || is_data(rhs) {
                    HoAtom::SameValue(lhs.term.clone(), rhs.term.clone())
                } else {
                    HoAtom::SameIndividual(lhs.term.clone(), rhs.term.clone())
                }
            }
            QAtom::Pred(pred, args) if args.len() == 1 => {
                let w = args[0].term.clone();
                match pred {
                    QPred::Name(n) => HoAtom::Concept(Concept::Name(n.clone()), w),
                    QPred::Var(v) => HoAtom::ConceptVar(v.clone(), w),
                    QPred::Expr(e) => HoAtom::Concept(conv.concept(e)?, w),
                }
            }
            QAtom::Pred(pred, args) => {
                let (w1, w2) = (args[0].term.clone(), args[1].term.clone());
                let concrete = is_data(&args[1])
                    || match pred {
                        QPred::Name(n) => kinds.get(n) == Some(&Kind::Concrete),
                        QPred::Expr(e) => classify(e, &kinds) == Some(Kind::Concrete),
                        QPred::Var(_) => false,
                    };
                match (pred, concrete) {
                    (QPred::Name(n), true) => HoAtom::Concrete(ConcreteRole::name(n), w1, w2),
                    (QPred::Name(n), false) => HoAtom::Role(Role::name(n), w1, w2),
                    (QPred::Var(v), true) => HoAtom::ConcreteVar(v.clone(), w1, w2),
                    (QPred::Var(v), false) => HoAtom::RoleVar(v.clone(), w1, w2),
                    (QPred::Expr(e), true) => HoAtom::Concrete(conv.concrete(e)?, w1, w2),
                    (QPred::Expr(e), false) => HoAtom::Role(conv.role(e)?, w1, w2),
                }
            }
        };
        out.push(HoLiteral {
            positive: l.positive,
            atom,
        });
    }
    for i in 1..=out.len() {
        if let Err(e) = HoQuery(out[..i].to_vec()).check_sorts() {
            return Err(ParseError::new(
                lits[i - 1].span,
                e.to_string(),
                &["consistent variable sorts"],
            ));
        }
    }
    Ok(HoQuery(out))
}


fn standalone(text: &str) -> Result<Expr, ParseError> {
    let mut p = tokens(text)?;
    let e = p.expr()?;
    p.skip_separators();
    if !p.at(&Tok::Eof) {
        return Err(p.unexpected(&["end of input"]));
    }
    Ok(e)
}

/// Parses a concept expression, with names sorted by `kb`.
pub fn parse_concept(text: &str, kb: &KnowledgeBase) -> Result<Concept, ParseError> {
    let kinds = kinds_of(kb);
    Converter { kinds: &kinds }.concept(&standalone(text)?)
}

/// Parses an abstract role expression, with names sorted by `kb`.
pub fn parse_role(text: &str, kb: &KnowledgeBase) -> Result<Role, ParseError> {
    let kinds = kinds_of(kb);
    Converter { kinds: &kinds }.role(&standalone(text)?)
}
