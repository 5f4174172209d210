//! Programs: relation definitions and queries over the core goal forms.
//!
//! ```text
//! program  = { form } ;
//! form     = "(" "define-relation" "(" name { param } ")" goal ")"
//!          | "(" "run" count "(" var { var } ")" goal { goal } ")"
//!          | "(" "run*" "(" var { var } ")" goal { goal } ")" ;
//! goal     = "(" "==" term term ")"
//!          | "(" constraint term { term } ")"
//!          | "(" "disj" goal { goal } ")"
//!          | "(" "conj" goal { goal } ")"
//!          | "(" "call/fresh" "(" ( "lambda" | "λ" ) "(" var ")" goal ")" ")"
//!          | "(" "ifte" goal goal goal ")"
//!          | "(" "once" goal ")"
//!          | "(" name { term } ")"
//!          | "succeed" | "fail" ;
//! term     = var | "#t" | "#f" | "'" datum | "`" qq-datum ;
//! qq-datum = datum, where "," term may appear in place of any element or tail ;
//! ```
//!
//! `constraint` is any relation registered in the constraint system. Numeric
//! literals are not terms.

use std::collections::HashMap;
use std::fmt;

use super::sexpr::{read_all, Datum, Pos, SExpr};
use super::ParseError;
use crate::framework::ConstraintSystem;
use crate::stdlib::standard_system;

/// How many answers a query asks for.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Count {
    Take(usize),
    All,
}

impl Count {
    pub fn limit(self) -> Option<usize> {
        match self {
            Count::Take(n) => Some(n),
            Count::All => None,
        }
    }
}

/// A term as written in a program: variables are names, not indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TermExpr {
    Var(String),
    Sym(String),
    Bool(bool),
    Nil,
    Pair(Box<TermExpr>, Box<TermExpr>),
}

impl TermExpr {
    pub fn has_vars(&self) -> bool {
        match self {
            TermExpr::Var(_) => true,
            TermExpr::Pair(a, d) => a.has_vars() || d.has_vars(),
            _ => false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GoalExpr {
    Succeed,
    Fail,
    Constraint { name: String, args: Vec<TermExpr> },
    Call { name: String, args: Vec<TermExpr> },
    Disj(Vec<GoalExpr>),
    Conj(Vec<GoalExpr>),
    Fresh { var: String, body: Box<GoalExpr> },
    Ifte(Box<GoalExpr>, Box<GoalExpr>, Box<GoalExpr>),
    Once(Box<GoalExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationDef {
    pub name: String,
    pub params: Vec<String>,
    pub body: GoalExpr,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Query {
    pub count: Count,
    pub vars: Vec<String>,
    pub goal: GoalExpr,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Program {
    pub relations: Vec<RelationDef>,
    pub queries: Vec<Query>,
}

const KEYWORDS: &[&str] = &[
    "define-relation",
    "run",
    "run*",
    "disj",
    "conj",
    "call/fresh",
    "ifte",
    "once",
    "succeed",
    "fail",
    "lambda",
    "λ",
    "quote",
    "quasiquote",
    "unquote",
];

/// Parses `text` against the standard constraint system.
pub fn parse(text: &str) -> Result<Program, ParseError> {
    parse_with(text, &standard_system())
}

/// Parses `text`, treating the relations registered in `sys` as built-in
/// constraint operators.
pub fn parse_with(text: &str, sys: &ConstraintSystem) -> Result<Program, ParseError> {
    let forms = read_all(text)?;
    let mut checker = Checker {
        sys,
        arities: HashMap::new(),
    };
    // Relations may be used before they are defined.
    for form in &forms {
        if let Some((name, params, pos)) = relation_header(form)? {
            if checker.arities.contains_key(name) {
                return Err(ParseError::new(
                    pos,
                    format!("relation `{name}` is defined twice"),
                ));
            }
            if sys.arity(name).is_some() || KEYWORDS.contains(&name) {
                return Err(ParseError::new(
                    pos,
                    format!("`{name}` is built in and cannot be redefined"),
                ));
            }
            checker.arities.insert(name.to_string(), params);
        }
    }
    let mut program = Program::default();
    for form in &forms {
        match head_symbol(form) {
            Some("define-relation") => program.relations.push(checker.relation(form)?),
            Some("run") | Some("run*") => program.queries.push(checker.query(form)?),
            _ => {
                return Err(ParseError::new(
                    form.pos,
                    "expected `define-relation`, `run` or `run*` at top level",
                ))
            }
        }
    }
    Ok(program)
}

fn head_symbol(e: &SExpr) -> Option<&str> {
    match &e.datum {
        Datum::List(items, _) => items.first()?.as_symbol(),
        _ => None,
    }
}

fn list_items<'a>(e: &'a SExpr, what: &str) -> Result<&'a [SExpr], ParseError> {
    e.as_list()
        .ok_or_else(|| ParseError::new(e.pos, format!("expected a list for {what}, found `{e}`")))
}

fn identifier<'a>(e: &'a SExpr, what: &str) -> Result<&'a str, ParseError> {
    match e.as_symbol() {
        Some(s) if s != "." => Ok(s),
        _ => Err(ParseError::new(
            e.pos,
            format!("expected {what}, found `{e}`"),
        )),
    }
}

/// For `(define-relation (name p ...) body)`, returns the name and arity.
fn relation_header(form: &SExpr) -> Result<Option<(&str, usize, Pos)>, ParseError> {
    if head_symbol(form) != Some("define-relation") {
        return Ok(None);
    }
    let items = list_items(form, "define-relation")?;
    if items.len() != 3 {
        return Err(ParseError::new(
            form.pos,
            "define-relation expects a header and one goal",
        ));
    }
    let header = list_items(&items[1], "a relation header")?;
    let Some((name, params)) = header.split_first() else {
        return Err(ParseError::new(
            items[1].pos,
            "relation header needs a name",
        ));
    };
    Ok(Some((
        identifier(name, "a relation name")?,
        params.len(),
        name.pos,
    )))
}

struct Checker<'a> {
    sys: &'a ConstraintSystem,
    arities: HashMap<String, usize>,
}

fn distinct_vars(items: &[SExpr], what: &str) -> Result<Vec<String>, ParseError> {
    let mut out: Vec<String> = Vec::new();
    for e in items {
        let v = identifier(e, what)?;
        if KEYWORDS.contains(&v) {
            return Err(ParseError::new(
                e.pos,
                format!("`{v}` cannot be used as a variable"),
            ));
        }
        if out.iter().any(|o| o == v) {
            return Err(ParseError::new(
                e.pos,
                format!("variable `{v}` is listed twice"),
            ));
        }
        out.push(v.to_string());
    }
    Ok(out)
}

impl Checker<'_> {
    fn relation(&self, form: &SExpr) -> Result<RelationDef, ParseError> {
        let items = list_items(form, "define-relation")?;
        let header = list_items(&items[1], "a relation header")?;
        let name = identifier(&header[0], "a relation name")?.to_string();
        let params = distinct_vars(&header[1..], "a parameter name")?;
        let body = self.goal(&items[2], &params)?;
        Ok(RelationDef { name, params, body })
    }

    fn query(&self, form: &SExpr) -> Result<Query, ParseError> {
        let items = list_items(form, "a query")?;
        let star = head_symbol(form) == Some("run*");
        let (count, rest) = if star {
            (Count::All, &items[1..])
        } else {
            let Some(n) = items.get(1) else {
                return Err(ParseError::new(form.pos, "run expects an answer count"));
            };
            match n.datum {
                Datum::Int(k) if k >= 0 => (Count::Take(k as usize), &items[2..]),
                _ => {
                    return Err(ParseError::new(
                        n.pos,
                        format!("answer count must be a non-negative integer, found `{n}`"),
                    ))
                }
            }
        };
        let Some((vars, goals)) = rest.split_first() else {
            return Err(ParseError::new(form.pos, "query needs a variable list"));
        };
        let vars = distinct_vars(list_items(vars, "query variables")?, "a query variable")?;
        if vars.is_empty() {
            return Err(ParseError::new(
                form.pos,
                "query needs at least one variable",
            ));
        }
        if goals.is_empty() {
            return Err(ParseError::new(form.pos, "query needs a goal"));
        }
        let mut gs = goals
            .iter()
            .map(|g| self.goal(g, &vars))
            .collect::<Result<Vec<_>, _>>()?;
        let goal = if gs.len() == 1 {
            gs.pop().unwrap()
        } else {
            GoalExpr::Conj(gs)
        };
        Ok(Query { count, vars, goal })
    }

    fn goal(&self, e: &SExpr, scope: &[String]) -> Result<GoalExpr, ParseError> {
        match e.as_symbol() {
            Some("succeed") => return Ok(GoalExpr::Succeed),
            Some("fail") => return Ok(GoalExpr::Fail),
            _ => {}
        }
        let items = list_items(e, "a goal")?;
        let Some((head, args)) = items.split_first() else {
            return Err(ParseError::new(e.pos, "empty goal `()`"));
        };
        let op = identifier(head, "a goal operator")?;
        let expect = |n: usize| -> Result<(), ParseError> {
            if args.len() == n {
                Ok(())
            } else {
                Err(ParseError::new(
                    e.pos,
                    format!("`{op}` expects {n} argument(s), got {}", args.len()),
                ))
            }
        };
        match op {
            "disj" | "conj" => {
                if args.is_empty() {
                    return Err(ParseError::new(
                        e.pos,
                        format!("`{op}` needs at least one goal"),
                    ));
                }
                let gs = args
                    .iter()
                    .map(|g| self.goal(g, scope))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(if op == "disj" {
                    GoalExpr::Disj(gs)
                } else {
                    GoalExpr::Conj(gs)
                })
            }
            "call/fresh" => {
                expect(1)?;
                let lam = list_items(&args[0], "a lambda")?;
                let ok_head =
                    matches!(lam.first().and_then(SExpr::as_symbol), Some("lambda" | "λ"));
                if !ok_head || lam.len() != 3 {
                    return Err(ParseError::new(
                        args[0].pos,
                        "call/fresh expects (lambda (x) goal)",
                    ));
                }
                let params = list_items(&lam[1], "a lambda parameter list")?;
                if params.len() != 1 {
                    return Err(ParseError::new(
                        lam[1].pos,
                        "the lambda takes exactly one parameter",
                    ));
                }
                let var = distinct_vars(params, "a variable")?.remove(0);
                let mut inner = scope.to_vec();
                inner.push(var.clone());
                let body = self.goal(&lam[2], &inner)?;
                Ok(GoalExpr::Fresh {
                    var,
                    body: Box::new(body),
                })
            }
            "ifte" => {
                expect(3)?;
                Ok(GoalExpr::Ifte(
                    Box::new(self.goal(&args[0], scope)?),
                    Box::new(self.goal(&args[1], scope)?),
                    Box::new(self.goal(&args[2], scope)?),
                ))
            }
            "once" => {
                expect(1)?;
                Ok(GoalExpr::Once(Box::new(self.goal(&args[0], scope)?)))
            }
            _ => {
                let (n, constraint) = if let Some(n) = self.sys.arity(op) {
                    (n, true)
                } else if let Some(&n) = self.arities.get(op) {
                    (n, false)
                } else {
                    return Err(ParseError::new(
                        head.pos,
                        format!("unknown operator `{op}`"),
                    ));
                };
                expect(n)?;
                let args = args
                    .iter()
                    .map(|t| term(t, scope))
                    .collect::<Result<Vec<_>, _>>()?;
                let name = op.to_string();
                Ok(if constraint {
                    GoalExpr::Constraint { name, args }
                } else {
                    GoalExpr::Call { name, args }
                })
            }
        }
    }
}

fn numeric_error(e: &SExpr) -> ParseError {
    ParseError::new(
        e.pos,
        format!("numeric literal `{e}` is not a term (integers are reserved for variables)"),
    )
}

fn term(e: &SExpr, scope: &[String]) -> Result<TermExpr, ParseError> {
    if let Some(d) = e.as_prefixed("quote") {
        return datum(d, None);
    }
    if let Some(d) = e.as_prefixed("quasiquote") {
        return datum(d, Some(scope));
    }
    match &e.datum {
        Datum::Bool(b) => Ok(TermExpr::Bool(*b)),
        Datum::Int(_) => Err(numeric_error(e)),
        Datum::Symbol(s) => {
            if scope.iter().any(|v| v == s) {
                Ok(TermExpr::Var(s.clone()))
            } else {
                Err(ParseError::new(e.pos, format!("unbound identifier `{s}`")))
            }
        }
        Datum::List(..) => Err(ParseError::new(
            e.pos,
            format!("expected a term, found `{e}` (quote lists with ')"),
        )),
    }
}

/// Converts quoted data. With `scope` set the datum is quasiquoted and
/// `,term` escapes are allowed.
fn datum(e: &SExpr, scope: Option<&[String]>) -> Result<TermExpr, ParseError> {
    if let Some(scope) = scope {
        if let Some(inner) = e.as_prefixed("unquote") {
            return term(inner, scope);
        }
        if e.as_prefixed("quasiquote").is_some() {
            return Err(ParseError::new(e.pos, "nested quasiquote is not supported"));
        }
    }
    match &e.datum {
        Datum::Symbol(s) => Ok(TermExpr::Sym(s.clone())),
        Datum::Bool(b) => Ok(TermExpr::Bool(*b)),
        Datum::Int(_) => Err(numeric_error(e)),
        Datum::List(items, tail) => {
            let end = match tail {
                Some(t) => datum(t, scope)?,
                None => TermExpr::Nil,
            };
            items.iter().rev().try_fold(end, |acc, item| {
                Ok(TermExpr::Pair(Box::new(datum(item, scope)?), Box::new(acc)))
            })
        }
    }
}

struct Datumish<'a>(&'a TermExpr);

/// Writes a term as it would appear inside a quote or quasiquote.
impl fmt::Display for Datumish<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            TermExpr::Var(v) => write!(f, ",{v}"),
            TermExpr::Sym(s) => f.write_str(s),
            TermExpr::Bool(true) => f.write_str("#t"),
            TermExpr::Bool(false) => f.write_str("#f"),
            TermExpr::Nil => f.write_str("()"),
            TermExpr::Pair(a, d) => {
                write!(f, "({}", Datumish(a))?;
                let mut tail = &**d;
                loop {
                    match tail {
                        TermExpr::Nil => break,
                        TermExpr::Pair(a, d) => {
                            write!(f, " {}", Datumish(a))?;
                            tail = d;
                        }
                        other => {
                            write!(f, " . {}", Datumish(other))?;
                            break;
                        }
                    }
                }
                f.write_str(")")
            }
        }
    }
}

impl fmt::Display for TermExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TermExpr::Var(v) => f.write_str(v),
            TermExpr::Bool(_) => write!(f, "{}", Datumish(self)),
            _ if self.has_vars() => write!(f, "`{}", Datumish(self)),
            _ => write!(f, "'{}", Datumish(self)),
        }
    }
}

fn write_args(f: &mut fmt::Formatter<'_>, op: &str, args: &[TermExpr]) -> fmt::Result {
    write!(f, "({op}")?;
    for a in args {
        write!(f, " {a}")?;
    }
    f.write_str(")")
}

impl fmt::Display for GoalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GoalExpr::Succeed => f.write_str("succeed"),
            GoalExpr::Fail => f.write_str("fail"),
            GoalExpr::Constraint { name, args } | GoalExpr::Call { name, args } => {
                write_args(f, name, args)
            }
            GoalExpr::Disj(gs) | GoalExpr::Conj(gs) => {
                let op = if matches!(self, GoalExpr::Disj(_)) {
                    "disj"
                } else {
                    "conj"
                };
                write!(f, "({op}")?;
                for g in gs {
                    write!(f, " {g}")?;
                }
                f.write_str(")")
            }
            GoalExpr::Fresh { var, body } => write!(f, "(call/fresh (lambda ({var}) {body}))"),
            GoalExpr::Ifte(a, b, c) => write!(f, "(ifte {a} {b} {c})"),
            GoalExpr::Once(g) => write!(f, "(once {g})"),
        }
    }
}

impl fmt::Display for RelationDef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(define-relation ({}", self.name)?;
        for p in &self.params {
            write!(f, " {p}")?;
        }
        write!(f, ")\n  {})", self.body)
    }
}

impl fmt::Display for Query {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.count {
            Count::Take(n) => write!(f, "(run {n} (")?,
            Count::All => f.write_str("(run* (")?,
        }
        write!(f, "{}) {})", self.vars.join(" "), self.goal)
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.relations {
            writeln!(f, "{r}")?;
        }
        for q in &self.queries {
            writeln!(f, "{q}")?;
        }
        Ok(())
    }
}
