#![allow(dead_code)]

pub mod laws;
pub mod oracle;

use mukanren::framework::{ConstraintStore, ConstraintSystem};
use mukanren::Term;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

pub const VARS: usize = 3;

pub fn atoms() -> Vec<Term> {
    vec![
        Term::sym("a"),
        Term::sym("b"),
        Term::Bool(true),
        Term::Bool(false),
        Term::Nil,
    ]
}

/// A random term over variables `0..VARS` and [`atoms`], at most `depth`
/// pairs deep.
pub fn random_term(rng: &mut StdRng, depth: usize) -> Term {
    let roll = rng.gen_range(0..10);
    if depth > 0 && roll < 2 {
        return Term::cons(random_term(rng, depth - 1), random_term(rng, depth - 1));
    }
    if roll < 7 {
        Term::var(rng.gen_range(0..VARS))
    } else {
        atoms().choose(rng).unwrap().clone()
    }
}

/// One random packed constraint tuple for a relation of the given arity.
pub fn random_tuple(rng: &mut StdRng, arity: usize) -> Term {
    let args: Vec<Term> = (0..arity).map(|_| random_term(rng, 2)).collect();
    mukanren::framework::pack(&args)
}

/// A random store for `sys` holding between one and `max_constraints`
/// constraints, each of a uniformly chosen relation.
pub fn random_store(
    rng: &mut StdRng,
    sys: &ConstraintSystem,
    max_constraints: usize,
) -> ConstraintStore {
    let n = rng.gen_range(1..=max_constraints);
    (0..n).fold(sys.initial_store(), |st, _| random_extension(rng, sys, &st))
}

/// Extends `st` with one random constraint of a random relation.
pub fn random_extension(
    rng: &mut StdRng,
    sys: &ConstraintSystem,
    st: &ConstraintStore,
) -> ConstraintStore {
    let rels: Vec<_> = sys.relations().map(|(id, n)| (id.clone(), n)).collect();
    let (id, arity) = rels.choose(rng).unwrap();
    st.ext_packed(id.as_str(), random_tuple(rng, *arity))
        .unwrap()
}

/// `st` with one field's tuples shuffled.
pub fn permute_field(rng: &mut StdRng, st: &ConstraintStore) -> ConstraintStore {
    let ids: Vec<String> = st.ids().map(|i| i.as_str().to_string()).collect();
    let id = ids.choose(rng).unwrap();
    let mut ts: Vec<Term> = st.tuples(id).unwrap().iter().cloned().collect();
    ts.shuffle(rng);
    st.with_tuples(id, ts).unwrap()
}

/// `st` with one tuple of one non-empty field duplicated at a random position.
pub fn duplicate_tuple(rng: &mut StdRng, st: &ConstraintStore) -> ConstraintStore {
    let ids: Vec<String> = st
        .fields()
        .filter(|(_, ts)| !ts.is_empty())
        .map(|(i, _)| i.as_str().to_string())
        .collect();
    let Some(id) = ids.choose(rng) else {
        return st.clone();
    };
    let mut ts: Vec<Term> = st.tuples(id).unwrap().iter().cloned().collect();
    let dup = ts.choose(rng).unwrap().clone();
    let at = rng.gen_range(0..=ts.len());
    ts.insert(at, dup);
    st.with_tuples(id, ts).unwrap()
}
