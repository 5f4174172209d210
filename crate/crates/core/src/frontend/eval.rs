//! Evaluates parsed programs on top of the engine.

use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

use super::ast::{Count, GoalExpr, Program, Query, RelationDef, TermExpr};
use crate::engine::{
    call_fresh, conj_all, defrel, disj_all, fail, ifte, once, succeed, Goal, State, Stream,
};
use crate::error::Error;
use crate::framework::ConstraintSystem;
use crate::terms::{Term, Var};

/// One answer to a query: the final state and the deep readback of each
/// query variable, in the order they were listed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Answer {
    pub state: State,
    pub bindings: Vec<(String, Term)>,
}

impl Answer {
    /// The readback as printed by the runner: the term itself for a single
    /// query variable, otherwise a list of the terms.
    pub fn readback(&self) -> Term {
        match self.bindings.as_slice() {
            [(_, t)] => t.clone(),
            bs => Term::list(bs.iter().map(|(_, t)| t.clone()).collect::<Vec<_>>()),
        }
    }
}

type Env = Vec<(String, Term)>;

/// Relation definitions compiled lazily against one constraint system.
#[derive(Clone)]
pub struct Interpreter {
    system: ConstraintSystem,
    relations: Arc<HashMap<String, RelationDef>>,
}

impl Interpreter {
    pub fn new(program: &Program, system: &ConstraintSystem) -> Interpreter {
        let relations = program
            .relations
            .iter()
            .map(|r| (r.name.clone(), r.clone()))
            .collect();
        Interpreter {
            system: system.clone(),
            relations: Arc::new(relations),
        }
    }

    pub fn system(&self) -> &ConstraintSystem {
        &self.system
    }

    fn term(&self, t: &TermExpr, env: &Env) -> Term {
        match t {
            TermExpr::Var(name) => env
                .iter()
                .rev()
                .find(|(n, _)| n == name)
                .map(|(_, t)| t.clone())
                .unwrap_or_else(|| panic!("unbound `{name}` survived parsing")),
            TermExpr::Sym(s) => Term::sym(s),
            TermExpr::Bool(b) => Term::Bool(*b),
            TermExpr::Nil => Term::Nil,
            TermExpr::Pair(a, d) => Term::cons(self.term(a, env), self.term(d, env)),
        }
    }

    /// Builds the goal for `g` with the variables in `env` in scope.
    pub fn goal(&self, g: &GoalExpr, env: &Env) -> Result<Goal, Error> {
        Ok(match g {
            GoalExpr::Succeed => succeed(),
            GoalExpr::Fail => fail(),
            GoalExpr::Constraint { name, args } => {
                let args = args.iter().map(|t| self.term(t, env)).collect();
                self.system.goal(name, args)?
            }
            GoalExpr::Call { name, args } => {
                let def = self
                    .relations
                    .get(name)
                    .ok_or_else(|| Error::UnknownRelation(name.clone()))?
                    .clone();
                let args = args.iter().map(|t| self.term(t, env)).collect();
                let this = self.clone();
                let rel = defrel(name, def.params.len(), move |actuals| {
                    let env: Env = def
                        .params
                        .iter()
                        .cloned()
                        .zip(actuals.iter().cloned())
                        .collect();
                    // Definitions were checked when the program was parsed.
                    this.goal(&def.body, &env).unwrap_or_else(|e| panic!("{e}"))
                });
                rel.apply(args)?
            }
            GoalExpr::Disj(gs) => disj_all(
                gs.iter()
                    .map(|g| self.goal(g, env))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
            GoalExpr::Conj(gs) => conj_all(
                gs.iter()
                    .map(|g| self.goal(g, env))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
            GoalExpr::Fresh { var, body } => {
                let this = self.clone();
                let var = var.clone();
                let body = (**body).clone();
                let env = env.clone();
                call_fresh(move |x| {
                    let mut inner = env.clone();
                    inner.push((var.clone(), x));
                    this.goal(&body, &inner).unwrap_or_else(|e| panic!("{e}"))
                })
            }
            GoalExpr::Ifte(a, b, c) => {
                ifte(self.goal(a, env)?, self.goal(b, env)?, self.goal(c, env)?)
            }
            GoalExpr::Once(g) => once(self.goal(g, env)?),
        })
    }

    /// The query's goal with its variables introduced left to right by
    /// nested `call_fresh`, so the first query variable is variable 0.
    pub fn query_goal(&self, q: &Query) -> Result<Goal, Error> {
        // Check the body once up front so errors surface before running.
        let probe: Env = q
            .vars
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), Term::var(i)))
            .collect();
        self.goal(&q.goal, &probe)?;
        Ok(self.fresh_chain(q.vars.clone(), Vec::new(), q.goal.clone()))
    }

    fn fresh_chain(&self, mut pending: Vec<String>, env: Env, body: GoalExpr) -> Goal {
        if pending.is_empty() {
            return self.goal(&body, &env).unwrap_or_else(|e| panic!("{e}"));
        }
        let name = pending.remove(0);
        let this = self.clone();
        call_fresh(move |x| {
            let mut env = env.clone();
            env.push((name.clone(), x));
            this.fresh_chain(pending.clone(), env, body.clone())
        })
    }

    /// Lazily produces the answers to `q`, at most `count` of them.
    pub fn answers(&self, q: &Query, count: Count) -> Result<Answers, Error> {
        let goal = self.query_goal(q)?;
        let start = State::new(self.system.initial_store(), 0);
        Ok(Answers {
            stream: Some(goal.apply(&start)),
            remaining: count.limit(),
            vars: q.vars.clone(),
            cancel: None,
        })
    }

    /// Runs `q` to completion with the given count.
    pub fn run(&self, q: &Query, count: Count) -> Result<Vec<Answer>, Error> {
        Ok(self.answers(q, count)?.collect())
    }
}

/// Iterator over the answers to one query. Each call to `next` pulls the
/// underlying stream only as far as the next answer.
pub struct Answers {
    stream: Option<Stream>,
    remaining: Option<usize>,
    vars: Vec<String>,
    cancel: Option<Arc<AtomicBool>>,
}

impl Answers {
    /// Stops the search (iteration ends) once `flag` is set. The flag is
    /// polled before every force of a deferred stream.
    pub fn with_cancel(mut self, flag: Arc<AtomicBool>) -> Answers {
        self.cancel = Some(flag);
        self
    }

    fn cancelled(&self) -> bool {
        self.cancel
            .as_ref()
            .is_some_and(|c| c.load(Ordering::Relaxed))
    }
}

impl Iterator for Answers {
    type Item = Answer;

    fn next(&mut self) -> Option<Answer> {
        if self.remaining == Some(0) {
            self.stream = None;
            return None;
        }
        let mut s = self.stream.take()?;
        let (state, rest) = loop {
            let next = match &s {
                Stream::Mature(h, rest) => break (h.clone(), (**rest).clone()),
                Stream::Empty => return None,
                Stream::Immature(_) if self.cancelled() => return None,
                Stream::Immature(f) => f.force(),
            };
            s = next;
        };
        self.stream = Some(rest);
        if let Some(n) = self.remaining.as_mut() {
            *n -= 1;
        }
        let subst = state.substitution().unwrap_or_default();
        let bindings = self
            .vars
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), subst.walk_star(&Term::Var(Var(i)))))
            .collect();
        Some(Answer { state, bindings })
    }
}

/// Evaluates every query of `program` with its own answer count.
pub fn eval_program(
    program: &Program,
    system: &ConstraintSystem,
) -> Result<Vec<Vec<Answer>>, Error> {
    let interp = Interpreter::new(program, system);
    program
        .queries
        .iter()
        .map(|q| interp.run(q, q.count))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frontend::ast::parse;
    use crate::stdlib::standard_system;

    fn run(text: &str) -> Vec<Vec<Answer>> {
        eval_program(&parse(text).unwrap(), &standard_system()).unwrap()
    }

    #[test]
    fn first_query_variable_is_variable_zero() {
        let out = run("(run 1 (x y) (== x 'a) (== y `(,x)))");
        let a = &out[0][0];
        assert_eq!(a.bindings[0].1, Term::sym("a"));
        assert_eq!(a.bindings[1].1, Term::list([Term::sym("a")]));
        assert_eq!(a.state.counter(), 2);
        assert_eq!(
            a.state.store().tuples("==").unwrap().iter().last(),
            Some(&Term::cons(Term::var(0), Term::sym("a")))
        );
    }

    #[test]
    fn count_zero_gives_no_answers() {
        assert!(run("(run 0 (q) (== q 'a))")[0].is_empty());
    }

    #[test]
    fn run_star_collects_everything() {
        let out = run("(run* (q) (disj (== q 'a) (disj (== q 'b) (== q 'c))))");
        let got: Vec<String> = out[0].iter().map(|a| a.readback().to_string()).collect();
        assert_eq!(got, vec!["a", "b", "c"]);
    }

    #[test]
    fn unbound_query_variables_read_back_as_variables() {
        let out = run("(run 1 (q r) (== q q))");
        assert_eq!(out[0][0].readback().to_string(), "(0 1)");
    }

    #[test]
    fn recursive_relations_interleave() {
        let out = run("(define-relation (fives x) (disj (== x 'five) (fives x)))
             (define-relation (sixes x) (disj (== x 'six) (sixes x)))
             (run 4 (q) (disj (fives q) (sixes q)))");
        let got: Vec<String> = out[0].iter().map(|a| a.readback().to_string()).collect();
        assert_eq!(got, vec!["five", "six", "five", "six"]);
    }
}
