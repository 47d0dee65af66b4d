//! Token-level parser producing sort-agnostic expressions and raw
//! statements. Sorts are assigned afterwards in `convert`.

use crate::kb::{Constant, Facet, FacetLiteral};

use super::lexer::{Span, Tok, Token};
use super::ParseError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub(crate) enum Kind {
    Concept,
    Abstract,
    Concrete,
    Data,
}

impl Kind {
    pub(crate) fn from_keyword(s: &str) -> Option<Kind> {
        match s {
            "concept" => Some(Kind::Concept),
            "role" => Some(Kind::Abstract),
            "concrete" => Some(Kind::Concrete),
            "data" => Some(Kind::Data),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Elem {
    Ind(String),
    Const(Constant),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Fill {
    SelfKw,
    Set(Vec<Elem>),
    Expr(Box<Expr>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Call {
    Inv,
    Id,
    Prod,
    Dom,
    Ran,
    Restr,
}

impl Call {
    fn from_name(s: &str) -> Option<(Call, usize)> {
        Some(match s {
            "inv" => (Call::Inv, 1),
            "id" => (Call::Id, 1),
            "prod" => (Call::Prod, 2),
            "dom" => (Call::Dom, 2),
            "ran" => (Call::Ran, 2),
            "restr" => (Call::Restr, 3),
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum FacetExpr {
    Lit(FacetLiteral),
    Not(Box<FacetExpr>),
    And(Box<FacetExpr>, Box<FacetExpr>),
    Or(Box<FacetExpr>, Box<FacetExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum ExprKind {
    Name(String),
    Thing,
    Nothing,
    Not(Box<Expr>),
    And(Box<Expr>, Box<Expr>),
    Or(Box<Expr>, Box<Expr>),
    Set(Vec<Elem>),
    Exists(Box<Expr>, Fill),
    Forall(Box<Expr>, Box<Expr>),
    AtLeast(u32, Box<Expr>, Box<Expr>),
    AtMost(u32, Box<Expr>, Box<Expr>),
    Call(Call, Vec<Expr>),
    /// `d[...]`; `None` for the empty conjunction `d[]`.
    Facets(String, Option<FacetExpr>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Expr {
    pub kind: ExprKind,
    pub span: Span,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum PropOp {
    Sym,
    Asym,
    Ref,
    Irref,
    Tra,
    Fun,
    Dis,
}

impl PropOp {
    fn from_name(s: &str) -> Option<PropOp> {
        Some(match s {
            "Sym" => PropOp::Sym,
            "Asym" => PropOp::Asym,
            "Ref" => PropOp::Ref,
            "Irref" => PropOp::Irref,
            "Tra" => PropOp::Tra,
            "Fun" => PropOp::Fun,
            "Dis" => PropOp::Dis,
            _ => return None,
        })
    }

    fn arity(self) -> usize {
        if self == PropOp::Dis {
            2
        } else {
            1
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum DeclKind {
    Concept,
    Role,
    Concrete,
    Individual,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Raw {
    Decl(DeclKind, Vec<String>),
    Datatype {
        name: String,
        constants: Vec<String>,
        facets: Vec<(String, Vec<String>)>,
    },
    Prop {
        prefix: Option<Kind>,
        op: PropOp,
        args: Vec<Expr>,
    },
    Chain(Vec<Expr>, Expr),
    Sub {
        prefix: Option<Kind>,
        lhs: Expr,
        rhs: Expr,
    },
    Equiv {
        prefix: Option<Kind>,
        lhs: Expr,
        rhs: Expr,
    },
    Member(Elem, Expr),
    Pair {
        subject: String,
        object: Elem,
        positive: bool,
        pred: Expr,
    },
    Same(String, String),
    Different(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct RawStatement {
    pub raw: Raw,
    pub span: Span,
}

pub(crate) struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

const EXPR_START: &[&str] = &["identifier", "`(`", "`{`", "`~`", "Thing", "Nothing", "exists"];

impl Parser {
    pub(crate) fn new(toks: Vec<Token>) -> Self {
        Parser { toks, pos: 0 }
    }

    pub(crate) fn peek(&self) -> &Tok {
        self.peek_at(0)
    }

    pub(crate) fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].tok
    }

    pub(crate) fn span(&self) -> Span {
        self.toks[self.pos.min(self.toks.len() - 1)].span
    }

    pub(crate) fn bump(&mut self) -> Token {
        let t = self.toks[self.pos.min(self.toks.len() - 1)].clone();
        if self.pos < self.toks.len() - 1 {
            self.pos += 1;
        }
        t
    }

    pub(crate) fn at(&self, t: &Tok) -> bool {
        self.peek() == t
    }

    pub(crate) fn eat(&mut self, t: &Tok) -> bool {
        if self.at(t) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub(crate) fn at_ident(&self, s: &str) -> bool {
        matches!(self.peek(), Tok::Ident(x) if x == s)
    }

    pub(crate) fn unexpected(&self, expected: &[&str]) -> ParseError {
        ParseError::new(
            self.span(),
            format!("unexpected {}", self.peek().describe()),
            expected,
        )
    }

    pub(crate) fn expect(&mut self, t: Tok) -> Result<Span, ParseError> {
        if self.at(&t) {
            Ok(self.bump().span)
        } else {
            let want = format!("`{}`", t.symbol());
            Err(self.unexpected(&[want.as_str()]))
        }
    }

    pub(crate) fn ident(&mut self) -> Result<(String, Span), ParseError> {
        match self.peek().clone() {
            Tok::Ident(s) => Ok((s, self.bump().span)),
            _ => Err(self.unexpected(&["identifier"])),
        }
    }

    fn string(&mut self) -> Result<String, ParseError> {
        match self.peek().clone() {
            Tok::Str(s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.unexpected(&["string"])),
        }
    }

    /// `"v"^d`
    pub(crate) fn constant(&mut self) -> Result<Constant, ParseError> {
        let v = self.string()?;
        self.expect(Tok::Caret)?;
        let (d, _) = self.ident()?;
        Ok(Constant::new(&v, &d))
    }

    pub(crate) fn elem(&mut self) -> Result<Elem, ParseError> {
        match self.peek() {
            Tok::Str(_) => Ok(Elem::Const(self.constant()?)),
            Tok::Ident(_) => Ok(Elem::Ind(self.ident()?.0)),
            _ => Err(self.unexpected(&["identifier", "constant"])),
        }
    }

    fn elems(&mut self) -> Result<Vec<Elem>, ParseError> {
        self.expect(Tok::LBrace)?;
        let mut out = Vec::new();
        if self.eat(&Tok::RBrace) {
            return Ok(out);
        }
        loop {
            out.push(self.elem()?);
            if self.eat(&Tok::RBrace) {
                return Ok(out);
            }
            if !self.eat(&Tok::Comma) {
                return Err(self.unexpected(&["`,`", "`}`"]));
            }
        }
    }

    fn separated<T>(
        &mut self,
        close: Tok,
        mut item: impl FnMut(&mut Self) -> Result<T, ParseError>,
    ) -> Result<Vec<T>, ParseError> {
        let mut out = vec![item(self)?];
        while self.eat(&Tok::Comma) {
            out.push(item(self)?);
        }
        self.expect(close)?;
        Ok(out)
    }

    pub(crate) fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.and_expr()?;
        while self.at(&Tok::Bar) {
            self.bump();
            let rhs = self.and_expr()?;
            let span = lhs.span;
            lhs = Expr {
                kind: ExprKind::Or(Box::new(lhs), Box::new(rhs)),
                span,
            };
        }
        Ok(lhs)
    }

    fn and_expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while self.at(&Tok::Amp) {
            self.bump();
            let rhs = self.unary()?;
            let span = lhs.span;
            lhs = Expr {
                kind: ExprKind::And(Box::new(lhs), Box::new(rhs)),
                span,
            };
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        if self.at(&Tok::Tilde) {
            let span = self.bump().span;
            let inner = self.unary()?;
            return Ok(Expr {
                kind: ExprKind::Not(Box::new(inner)),
                span,
            });
        }
        self.atom()
    }

    pub(crate) fn atom(&mut self) -> Result<Expr, ParseError> {
        let span = self.span();
        let mk = |kind| Ok(Expr { kind, span });
        match self.peek().clone() {
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            Tok::LBrace => {
                let es = self.elems()?;
                mk(ExprKind::Set(es))
            }
            Tok::Ident(name) => {
                let call = *self.peek_at(1) == Tok::LParen;
                match name.as_str() {
                    "Thing" => {
                        self.bump();
                        mk(ExprKind::Thing)
                    }
                    "Nothing" => {
                        self.bump();
                        mk(ExprKind::Nothing)
                    }
                    "exists" if *self.peek_at(1) != Tok::LBracket => {
                        self.bump();
                        let role = self.atom()?;
                        self.expect(Tok::Dot)?;
                        let fill = if self.at_ident("Self") {
                            self.bump();
                            Fill::SelfKw
                        } else if self.at(&Tok::LBrace) {
                            Fill::Set(self.elems()?)
                        } else {
                            Fill::Expr(Box::new(self.atom()?))
                        };
                        mk(ExprKind::Exists(Box::new(role), fill))
                    }
                    "forall" if *self.peek_at(1) != Tok::LBracket => {
                        self.bump();
                        let role = self.atom()?;
                        self.expect(Tok::Dot)?;
                        let filler = self.atom()?;
                        mk(ExprKind::Forall(Box::new(role), Box::new(filler)))
                    }
                    "atleast" | "atmost" if call => {
                        self.bump();
                        self.bump();
                        let n = match self.peek().clone() {
                            Tok::Int(n) => {
                                self.bump();
                                n
                            }
                            _ => return Err(self.unexpected(&["number"])),
                        };
                        self.expect(Tok::Comma)?;
                        let role = self.expr()?;
                        self.expect(Tok::Comma)?;
                        let filler = self.expr()?;
                        self.expect(Tok::RParen)?;
                        let (r, f) = (Box::new(role), Box::new(filler));
                        if name == "atleast" {
                            mk(ExprKind::AtLeast(n, r, f))
                        } else {
                            mk(ExprKind::AtMost(n, r, f))
                        }
                    }
                    _ if call => {
                        let Some((c, arity)) = Call::from_name(&name) else {
                            return Err(ParseError::new(
                                span,
                                format!("unknown constructor {name}"),
                                &["inv", "id", "prod", "dom", "ran", "restr", "atleast", "atmost"],
                            ));
                        };
                        self.bump();
                        self.bump();
                        let args = self.separated(Tok::RParen, |p| p.expr())?;
                        if args.len() != arity {
                            return Err(ParseError::new(
                                span,
                                format!("{name} takes {arity} argument(s), found {}", args.len()),
                                &[],
                            ));
                        }
                        mk(ExprKind::Call(c, args))
                    }
                    _ => {
                        self.bump();
                        if self.at(&Tok::LBracket) {
                            self.bump();
                            let f = if self.at(&Tok::RBracket) {
                                None
                            } else {
                                Some(self.facet_or(&name)?)
                            };
                            self.expect(Tok::RBracket)?;
                            mk(ExprKind::Facets(name, f))
                        } else {
                            mk(ExprKind::Name(name))
                        }
                    }
                }
            }
            _ => Err(self.unexpected(EXPR_START)),
        }
    }

    fn facet_or(&mut self, d: &str) -> Result<FacetExpr, ParseError> {
        let mut lhs = self.facet_and(d)?;
        while self.eat(&Tok::Bar) {
            let rhs = self.facet_and(d)?;
            lhs = FacetExpr::Or(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn facet_and(&mut self, d: &str) -> Result<FacetExpr, ParseError> {
        let mut lhs = self.facet_unary(d)?;
        while self.eat(&Tok::Amp) {
            let rhs = self.facet_unary(d)?;
            lhs = FacetExpr::And(Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn facet_unary(&mut self, d: &str) -> Result<FacetExpr, ParseError> {
        if self.eat(&Tok::Tilde) {
            return Ok(FacetExpr::Not(Box::new(self.facet_unary(d)?)));
        }
        if self.eat(&Tok::LParen) {
            let e = self.facet_or(d)?;
            self.expect(Tok::RParen)?;
            return Ok(e);
        }
        let (name, _) = self.ident()?;
        let facet = if (name == "top" || name == "bot") && self.at(&Tok::LParen) {
            self.bump();
            let (arg, aspan) = self.ident()?;
            self.expect(Tok::RParen)?;
            if arg != d {
                return Err(ParseError::new(
                    aspan,
                    format!("{name}({arg}) used inside a facet expression of {d}"),
                    &[d],
                ));
            }
            if name == "top" {
                Facet::Top
            } else {
                Facet::Bottom
            }
        } else {
            Facet::Named(name)
        };
        Ok(FacetExpr::Lit(FacetLiteral {
            positive: true,
            facet,
        }))
    }

    fn end_of_statement(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            Tok::Newline | Tok::Semi => {
                self.bump();
                Ok(())
            }
            Tok::Eof => Ok(()),
            _ => Err(self.unexpected(&["end of line", "`;`"])),
        }
    }

    pub(crate) fn skip_separators(&mut self) {
        while matches!(self.peek(), Tok::Newline | Tok::Semi) {
            self.bump();
        }
    }

    pub(crate) fn document(&mut self) -> Result<Vec<RawStatement>, ParseError> {
        let mut out = Vec::new();
        loop {
            self.skip_separators();
            if self.at(&Tok::Eof) {
                return Ok(out);
            }
            let span = self.span();
            let raw = self.statement()?;
            out.push(RawStatement { raw, span });
            self.end_of_statement()?;
        }
    }

    fn keyword_position(&self) -> bool {
        !matches!(
            self.peek_at(1),
            Tok::Colon
                | Tok::Sub
                | Tok::Equiv
                | Tok::Eq
                | Tok::Neq
                | Tok::Amp
                | Tok::Bar
                | Tok::Newline
                | Tok::Semi
                | Tok::Eof
                | Tok::LBracket
        )
    }

    fn statement(&mut self) -> Result<Raw, ParseError> {
        if self.at_ident("decl") && self.keyword_position() {
            self.bump();
            let (k, kspan) = self.ident()?;
            let kind = match k.as_str() {
                "concept" => DeclKind::Concept,
                "role" => DeclKind::Role,
                "concrete" => DeclKind::Concrete,
                "individual" => DeclKind::Individual,
                _ => {
                    return Err(ParseError::new(
                        kspan,
                        format!("unknown declaration kind {k}"),
                        &["concept", "role", "concrete", "individual"],
                    ))
                }
            };
            let mut names = vec![self.ident()?.0];
            while self.eat(&Tok::Comma) {
                names.push(self.ident()?.0);
            }
            return Ok(Raw::Decl(kind, names));
        }
        if self.at_ident("datatype") && self.keyword_position() {
            self.bump();
            return self.datatype_block();
        }
        let mut prefix = None;
        if let Tok::Ident(s) = self.peek() {
            if let Some(k) = Kind::from_keyword(s) {
                if self.keyword_position() {
                    prefix = Some(k);
                    self.bump();
                }
            }
        }
        let span = self.span();
        if let Tok::Ident(s) = self.peek().clone() {
            if *self.peek_at(1) == Tok::LParen {
                if let Some(op) = PropOp::from_name(&s) {
                    self.bump();
                    self.bump();
                    let args = self.separated(Tok::RParen, |p| p.expr())?;
                    if args.len() != op.arity() {
                        return Err(ParseError::new(
                            span,
                            format!("{s} takes {} argument(s), found {}", op.arity(), args.len()),
                            &[],
                        ));
                    }
                    return Ok(Raw::Prop { prefix, op, args });
                }
                if s == "chain" {
                    self.bump();
                    self.bump();
                    let roles = self.separated(Tok::RParen, |p| p.expr())?;
                    self.expect(Tok::Sub)?;
                    let sup = self.expr()?;
                    return Ok(Raw::Chain(roles, sup));
                }
            }
        }
        let assertion = matches!(
            (self.peek(), self.peek_at(1), self.peek_at(2)),
            (Tok::LParen, Tok::Ident(_), Tok::Comma)
                | (Tok::Str(_), _, _)
                | (Tok::Ident(_), Tok::Colon | Tok::Eq | Tok::Neq, _)
        );
        if assertion && prefix.is_some() {
            return Err(ParseError::new(
                span,
                "sort prefix not allowed on an assertion".into(),
                &["axiom"],
            ));
        }
        match (self.peek().clone(), self.peek_at(1).clone(), self.peek_at(2).clone()) {
            (Tok::LParen, Tok::Ident(a), Tok::Comma) => {
                self.bump();
                self.bump();
                self.bump();
                let object = self.elem()?;
                self.expect(Tok::RParen)?;
                self.expect(Tok::Colon)?;
                let positive = !self.eat(&Tok::Bang);
                let pred = self.expr()?;
                Ok(Raw::Pair {
                    subject: a,
                    object,
                    positive,
                    pred,
                })
            }
            (Tok::Str(_), _, _) => {
                let e = self.constant()?;
                self.expect(Tok::Colon)?;
                Ok(Raw::Member(Elem::Const(e), self.expr()?))
            }
            (Tok::Ident(a), Tok::Colon, _) => {
                self.bump();
                self.bump();
                Ok(Raw::Member(Elem::Ind(a), self.expr()?))
            }
            (Tok::Ident(a), Tok::Eq, _) => {
                self.bump();
                self.bump();
                Ok(Raw::Same(a, self.ident()?.0))
            }
            (Tok::Ident(a), Tok::Neq, _) => {
                self.bump();
                self.bump();
                Ok(Raw::Different(a, self.ident()?.0))
            }
            _ => {
                let lhs = self.expr()?;
                match self.peek() {
                    Tok::Sub => {
                        self.bump();
                        let rhs = self.expr()?;
                        Ok(Raw::Sub { prefix, lhs, rhs })
                    }
                    Tok::Equiv => {
                        self.bump();
                        let rhs = self.expr()?;
                        Ok(Raw::Equiv { prefix, lhs, rhs })
                    }
                    _ => Err(self.unexpected(&["`<=`", "`==`"])),
                }
            }
        }
    }

    fn datatype_block(&mut self) -> Result<Raw, ParseError> {
        let (name, _) = self.ident()?;
        self.expect(Tok::LBrace)?;
        let mut constants = Vec::new();
        let mut facets = Vec::new();
        loop {
            if self.eat(&Tok::RBrace) {
                break;
            }
            let (section, sspan) = self.ident()?;
            self.expect(Tok::Colon)?;
            match section.as_str() {
                "constants" => {
                    if !self.at(&Tok::Semi) {
                        constants.push(self.string()?);
                        while self.eat(&Tok::Comma) {
                            constants.push(self.string()?);
                        }
                    }
                }
                "facets" => {
                    if !self.at(&Tok::Semi) {
                        loop {
                            let (f, _) = self.ident()?;
                            self.expect(Tok::Eq)?;
                            self.expect(Tok::LBrace)?;
                            let mut ext = Vec::new();
                            if !self.eat(&Tok::RBrace) {
                                ext = self.separated(Tok::RBrace, |p| p.string())?;
                            }
                            facets.push((f, ext));
                            if !self.eat(&Tok::Comma) {
                                break;
                            }
                        }
                    }
                }
                _ => {
                    return Err(ParseError::new(
                        sspan,
                        format!("unknown datatype section {section}"),
                        &["constants", "facets"],
                    ))
                }
            }
            if !self.eat(&Tok::Semi) && !self.at(&Tok::RBrace) {
                return Err(self.unexpected(&["`;`", "`}`"]));
            }
        }
        Ok(Raw::Datatype {
            name,
            constants,
            facets,
        })
    }
}
