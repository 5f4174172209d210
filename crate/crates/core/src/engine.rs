//! Goals, lazy interleaving streams and the search combinators.
//!
//! A goal maps a [`State`] to a [`Stream`] of states. Streams are lists whose
//! tails may be deferred ([`Stream::Immature`]); appending swaps its operands
//! whenever it meets a deferred node, which is what makes the search
//! interleave between disjuncts instead of committing to the first one.

use std::fmt;
use std::sync::{Arc, LazyLock};

use crate::error::Error;
use crate::framework::{valid_eq, ConstraintStore, ConstraintSystem};
use crate::terms::{Substitution, Term, Var};

/// A constraint store paired with the next fresh variable index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct State {
    store: ConstraintStore,
    counter: usize,
}

impl State {
    pub fn new(store: ConstraintStore, counter: usize) -> State {
        State { store, counter }
    }

    pub fn store(&self) -> &ConstraintStore {
        &self.store
    }

    pub fn counter(&self) -> usize {
        self.counter
    }

    pub(crate) fn with_store(&self, store: ConstraintStore) -> State {
        State {
            store,
            counter: self.counter,
        }
    }

    /// The most general unifier of the state's equations, or `None` if they
    /// are inconsistent. States produced by the engine always have one.
    pub fn substitution(&self) -> Option<Substitution> {
        valid_eq(self.store.tuples("==")?.iter())
    }

    /// Deep readback of `t` under the state's equations.
    pub fn resolve(&self, t: &Term) -> Term {
        match self.substitution() {
            Some(s) => s.walk_star(t),
            None => t.clone(),
        }
    }
}

/// A deferred stream computation. Forcing it re-runs the computation every
/// time; nothing is memoized.
#[derive(Clone)]
pub struct Thunk(Arc<dyn Fn() -> Stream + Send + Sync>);

impl Thunk {
    pub fn new<F>(f: F) -> Thunk
    where
        F: Fn() -> Stream + Send + Sync + 'static,
    {
        Thunk(Arc::new(f))
    }

    pub fn force(&self) -> Stream {
        (self.0)()
    }
}

impl fmt::Debug for Thunk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Thunk(..)")
    }
}

/// A lazy, possibly infinite stream of states.
#[derive(Clone, Debug, Default)]
pub enum Stream {
    #[default]
    Empty,
    Mature(State, Arc<Stream>),
    Immature(Thunk),
}

static EMPTY: LazyLock<Arc<Stream>> = LazyLock::new(|| Arc::new(Stream::Empty));

// Long mature chains would otherwise be dropped recursively.
impl Drop for Stream {
    fn drop(&mut self) {
        let Stream::Mature(_, rest) = self else {
            return;
        };
        let mut cur = std::mem::replace(rest, EMPTY.clone());
        while let Ok(mut node) = Arc::try_unwrap(cur) {
            match &mut node {
                Stream::Mature(_, rest) => cur = std::mem::replace(rest, EMPTY.clone()),
                _ => break,
            }
        }
    }
}

impl Stream {
    pub fn unit(st: State) -> Stream {
        Stream::Mature(st, EMPTY.clone())
    }

    pub fn cons(st: State, rest: Stream) -> Stream {
        Stream::Mature(st, Arc::new(rest))
    }

    pub fn delay<F>(f: F) -> Stream
    where
        F: Fn() -> Stream + Send + Sync + 'static,
    {
        Stream::Immature(Thunk::new(f))
    }

    /// A fully mature stream holding `states` in order.
    pub fn from_states<I>(states: I) -> Stream
    where
        I: IntoIterator<Item = State>,
        I::IntoIter: DoubleEndedIterator,
    {
        states
            .into_iter()
            .rev()
            .fold(Stream::Empty, |acc, st| Stream::cons(st, acc))
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Stream::Empty)
    }

    pub fn is_mature(&self) -> bool {
        matches!(self, Stream::Mature(..))
    }

    pub fn is_immature(&self) -> bool {
        matches!(self, Stream::Immature(_))
    }

    /// Splits off the mature prefix, returning its states and the first
    /// non-mature tail.
    fn split_mature(self) -> (Vec<State>, Stream) {
        let mut heads = Vec::new();
        let mut cur = self;
        loop {
            let next = match &cur {
                Stream::Mature(h, rest) => {
                    heads.push(h.clone());
                    (**rest).clone()
                }
                _ => return (heads, cur),
            };
            cur = next;
        }
    }
}

/// Appends two streams, interleaving at deferred nodes.
///
/// On an immature left operand the result is deferred and, when forced,
/// appends `s2` in front of the forced `s1`.
pub fn append_streams(s1: Stream, s2: Stream) -> Stream {
    let (heads, rest) = s1.split_mature();
    let tail = match &rest {
        Stream::Empty => s2,
        Stream::Immature(f) => {
            let f = f.clone();
            Stream::delay(move || append_streams(s2.clone(), f.force()))
        }
        Stream::Mature(..) => unreachable!("split_mature stops at a non-mature node"),
    };
    heads
        .into_iter()
        .rev()
        .fold(tail, |acc, h| Stream::cons(h, acc))
}

/// Runs `g` on every state in `s` and merges the results.
pub fn append_map_streams(g: &Goal, s: Stream) -> Stream {
    let (heads, rest) = s.split_mature();
    let tail = match &rest {
        Stream::Empty => Stream::Empty,
        Stream::Immature(f) => {
            let f = f.clone();
            let g = g.clone();
            Stream::delay(move || append_map_streams(&g, f.force()))
        }
        Stream::Mature(..) => unreachable!("split_mature stops at a non-mature node"),
    };
    heads
        .iter()
        .rev()
        .fold(tail, |acc, h| append_streams(g.apply(h), acc))
}

/// Forces deferred nodes until the stream is empty or mature. Does not
/// terminate on a stream that stays deferred forever.
pub fn pull(s: Stream) -> Stream {
    let mut cur = s;
    loop {
        let next = match &cur {
            Stream::Immature(f) => f.force(),
            _ => return cur,
        };
        cur = next;
    }
}

/// Collects up to `n` states from `s`, or every state when `n` is `None`.
pub fn take(n: Option<usize>, s: Stream) -> Vec<State> {
    let mut out = Vec::new();
    if n == Some(0) {
        return out;
    }
    let mut cur = pull(s);
    loop {
        let next = match &cur {
            Stream::Empty => break,
            Stream::Mature(h, rest) => {
                out.push(h.clone());
                if Some(out.len()) == n {
                    break;
                }
                (**rest).clone()
            }
            Stream::Immature(_) => unreachable!("pulled streams are never immature"),
        };
        cur = pull(next);
    }
    out
}

/// A goal: a function from a state to a stream of states.
#[derive(Clone)]
pub struct Goal(Arc<dyn Fn(&State) -> Stream + Send + Sync>);

impl fmt::Debug for Goal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Goal(..)")
    }
}

impl Goal {
    pub fn new<F>(f: F) -> Goal
    where
        F: Fn(&State) -> Stream + Send + Sync + 'static,
    {
        Goal(Arc::new(f))
    }

    pub fn apply(&self, st: &State) -> Stream {
        (self.0)(st)
    }

    /// Defers building and running a goal until the resulting stream is
    /// forced. This is what a relation body is wrapped in, and it is what
    /// lets recursive relations be constructed without looping.
    pub fn delay<F>(build: F) -> Goal
    where
        F: Fn() -> Goal + Send + Sync + 'static,
    {
        let build = Arc::new(build);
        Goal::new(move |st| {
            let st = st.clone();
            let build = build.clone();
            Stream::delay(move || build().apply(&st))
        })
    }
}

pub fn succeed() -> Goal {
    Goal::new(|st| Stream::unit(st.clone()))
}

pub fn fail() -> Goal {
    Goal::new(|_| Stream::Empty)
}

/// Introduces a fresh variable, numbered by the state's counter.
pub fn call_fresh<F>(body: F) -> Goal
where
    F: Fn(Term) -> Goal + Send + Sync + 'static,
{
    Goal::new(move |st| {
        let x = Term::Var(Var(st.counter));
        let next = State {
            store: st.store.clone(),
            counter: st.counter + 1,
        };
        body(x).apply(&next)
    })
}

pub fn disj(g1: Goal, g2: Goal) -> Goal {
    Goal::new(move |st| append_streams(g1.apply(st), g2.apply(st)))
}

pub fn conj(g1: Goal, g2: Goal) -> Goal {
    Goal::new(move |st| append_map_streams(&g2, g1.apply(st)))
}

/// Right-nested disjunction of `goals`; `fail` when there are none.
pub fn disj_all<I>(goals: I) -> Goal
where
    I: IntoIterator<Item = Goal>,
    I::IntoIter: DoubleEndedIterator,
{
    let mut it = goals.into_iter().rev();
    match it.next() {
        None => fail(),
        Some(last) => it.fold(last, |acc, g| disj(g, acc)),
    }
}

/// Right-nested conjunction of `goals`; `succeed` when there are none.
pub fn conj_all<I>(goals: I) -> Goal
where
    I: IntoIterator<Item = Goal>,
    I::IntoIter: DoubleEndedIterator,
{
    let mut it = goals.into_iter().rev();
    match it.next() {
        None => succeed(),
        Some(last) => it.fold(last, |acc, g| conj(g, acc)),
    }
}

/// Soft cut: if `cond` has any answer, `then` is run on all of them;
/// otherwise `otherwise` runs on the original state.
pub fn ifte(cond: Goal, then: Goal, otherwise: Goal) -> Goal {
    fn step(s: Stream, st: State, then: Goal, otherwise: Goal) -> Stream {
        match &s {
            Stream::Empty => otherwise.apply(&st),
            Stream::Immature(f) => {
                let f = f.clone();
                Stream::delay(move || step(f.force(), st.clone(), then.clone(), otherwise.clone()))
            }
            Stream::Mature(..) => append_map_streams(&then, s),
        }
    }
    Goal::new(move |st| step(cond.apply(st), st.clone(), then.clone(), otherwise.clone()))
}

/// Committed choice: keeps only the first answer of `g`.
pub fn once(g: Goal) -> Goal {
    fn step(s: Stream) -> Stream {
        match &s {
            Stream::Empty => Stream::Empty,
            Stream::Immature(f) => {
                let f = f.clone();
                Stream::delay(move || step(f.force()))
            }
            Stream::Mature(h, _) => Stream::unit(h.clone()),
        }
    }
    Goal::new(move |st| step(g.apply(st)))
}

type RelationBody = dyn Fn(&[Term]) -> Goal + Send + Sync;

/// A user-defined relation of fixed arity.
///
/// Applying it never runs the body: the resulting goal returns a deferred
/// stream, and the body is rebuilt each time that stream is forced.
#[derive(Clone)]
pub struct Relation {
    name: Arc<str>,
    arity: usize,
    body: Arc<RelationBody>,
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Relation")
            .field("name", &self.name)
            .field("arity", &self.arity)
            .finish()
    }
}

impl Relation {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn apply(&self, args: Vec<Term>) -> Result<Goal, Error> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch {
                relation: self.name.to_string(),
                expected: self.arity,
                found: args.len(),
            });
        }
        let body = self.body.clone();
        let args: Arc<[Term]> = args.into();
        Ok(Goal::delay(move || body(&args)))
    }
}

/// Defines a relation. `body` receives exactly `arity` argument terms.
pub fn defrel<F>(name: &str, arity: usize, body: F) -> Relation
where
    F: Fn(&[Term]) -> Goal + Send + Sync + 'static,
{
    Relation {
        name: Arc::from(name),
        arity,
        body: Arc::new(body),
    }
}

/// Runs `g` from the system's initial store with counter 0 and collects up to
/// `n` answers (all of them when `n` is `None`).
pub fn call_initial_state(n: Option<usize>, g: &Goal, system: &ConstraintSystem) -> Vec<State> {
    let st = State::new(system.initial_store(), 0);
    take(n, pull(g.apply(&st)))
}
