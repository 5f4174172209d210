//! Randomised checks of the stream, goal and solver laws. Each returns the
//! counterexamples it found, so property tests and the acceptance harness
//! can share them.

use mukanren::engine::{append_streams, take, Stream};
use mukanren::framework::ConstraintSystem;
use mukanren::{call_fresh, conj, disj, fail, once, standard_system, succeed, Goal, State, Term};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

use super::{duplicate_tuple, permute_field, random_extension, random_store, random_term};

/// A random state: a random standard store and a counter past its variables.
pub fn random_state(rng: &mut StdRng) -> State {
    let sys = standard_system();
    State::new(
        random_store(rng, &sys, 3),
        super::VARS + rng.gen_range(0..5),
    )
}

/// A finite stream: states interleaved with deferred nodes (`None`).
pub type Shape = Vec<Option<State>>;

pub fn random_shape(rng: &mut StdRng, mature_only: bool) -> Shape {
    let n = rng.gen_range(0..6);
    (0..n)
        .map(|_| {
            if !mature_only && rng.gen_bool(0.3) {
                None
            } else {
                Some(random_state(rng))
            }
        })
        .collect()
}

pub fn build(shape: &[Option<State>]) -> Stream {
    shape
        .iter()
        .rev()
        .fold(Stream::Empty, |rest, item| match item {
            Some(st) => Stream::cons(st.clone(), rest),
            None => Stream::delay(move || rest.clone()),
        })
}

pub fn states(shape: &[Option<State>]) -> Vec<State> {
    shape.iter().flatten().cloned().collect()
}

fn run_cases(
    cases: usize,
    seed: u64,
    mut case: impl FnMut(&mut StdRng) -> Option<String>,
) -> Vec<String> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..cases).filter_map(|_| case(&mut rng)).collect()
}

/// `append_streams(Empty, s)` yields exactly the states of `s`.
pub fn left_identity(cases: usize, seed: u64) -> Vec<String> {
    run_cases(cases, seed, |rng| {
        let shape = random_shape(rng, false);
        let got = take(None, append_streams(Stream::Empty, build(&shape)));
        (got != states(&shape)).then(|| format!("left identity fails for {} states", shape.len()))
    })
}

/// On mature streams, append is associative and concatenates.
pub fn mature_associativity(cases: usize, seed: u64) -> Vec<String> {
    run_cases(cases, seed, |rng| {
        let (a, b, c) = (
            random_shape(rng, true),
            random_shape(rng, true),
            random_shape(rng, true),
        );
        let left = take(
            None,
            append_streams(append_streams(build(&a), build(&b)), build(&c)),
        );
        let right = take(
            None,
            append_streams(build(&a), append_streams(build(&b), build(&c))),
        );
        let concat: Vec<State> = [states(&a), states(&b), states(&c)].concat();
        (left != right || left != concat).then(|| {
            format!(
                "associativity fails for lengths {} {} {}",
                a.len(),
                b.len(),
                c.len()
            )
        })
    })
}

/// `take(n, s)` is a prefix of `take(m, s)` whenever `n <= m`.
pub fn take_prefix(cases: usize, seed: u64) -> Vec<String> {
    run_cases(cases, seed, |rng| {
        let (a, b) = (random_shape(rng, false), random_shape(rng, false));
        // Appending immature streams exercises the swap.
        let s = append_streams(build(&a), build(&b));
        let m = rng.gen_range(0..12);
        let n = rng.gen_range(0..=m);
        let short = take(Some(n), s.clone());
        let long = take(Some(m), s.clone());
        let all = take(None, s);
        let ok = short.len() == n.min(all.len())
            && long.len() == m.min(all.len())
            && long.starts_with(&short)
            && all.starts_with(&long);
        (!ok).then(|| format!("take({n}) is not a prefix of take({m})"))
    })
}

/// A random terminating goal over variables 0..VARS of the standard system.
pub fn random_goal(rng: &mut StdRng, depth: usize) -> Goal {
    let sys = standard_system();
    let roll = rng.gen_range(0..10);
    if depth > 0 && roll < 2 {
        return disj(random_goal(rng, depth - 1), random_goal(rng, depth - 1));
    }
    if depth > 0 && roll < 4 {
        return conj(random_goal(rng, depth - 1), random_goal(rng, depth - 1));
    }
    if depth > 0 && roll < 5 {
        let body = random_goal(rng, depth - 1);
        return call_fresh(move |_| body.clone());
    }
    match roll {
        5 => succeed(),
        6 => fail(),
        _ => random_constraint_goal(rng, &sys),
    }
}

fn random_constraint_goal(rng: &mut StdRng, sys: &ConstraintSystem) -> Goal {
    let rels: Vec<_> = sys
        .relations()
        .map(|(id, n)| (id.as_str().to_string(), n))
        .collect();
    let (id, arity) = rels.choose(rng).unwrap();
    let args = (0..*arity).map(|_| random_term(rng, 2)).collect();
    sys.goal(id, args).unwrap()
}

/// `once(g)` never yields more than one state.
pub fn once_at_most_one(cases: usize, seed: u64) -> Vec<String> {
    run_cases(cases, seed, |rng| {
        let g = random_goal(rng, 4);
        let st = random_state(rng);
        let n = take(None, once(g.clone()).apply(&st)).len();
        let full = take(None, g.apply(&st)).len();
        (n > 1 || n != full.min(1))
            .then(|| format!("once gave {n} states where the goal gave {full}"))
    })
}

/// A constraint goal yields zero states or exactly one.
pub fn constraint_goal_length(cases: usize, seed: u64) -> Vec<String> {
    let sys = standard_system();
    run_cases(cases, seed, |rng| {
        let g = random_constraint_goal(rng, &sys);
        let st = random_state(rng);
        let n = take(None, g.apply(&st)).len();
        (n > 1).then(|| format!("constraint goal gave {n} states"))
    })
}

/// Logicality: validity ignores order and multiplicity within a field.
/// Monotonicity: an invalid store stays invalid under any extension.
pub fn well_behaved(
    sys: &ConstraintSystem,
    stores: usize,
    extensions: usize,
    seed: u64,
) -> Vec<String> {
    run_cases(stores, seed, |rng| {
        let st = random_store(rng, sys, 6);
        let bad = sys.invalid(&st);
        let permuted = permute_field(rng, &st);
        if sys.invalid(&permuted) != bad {
            return Some(format!("permutation changes validity of {st:?}"));
        }
        let duplicated = duplicate_tuple(rng, &st);
        if sys.invalid(&duplicated) != bad {
            return Some(format!("duplication changes validity of {st:?}"));
        }
        if bad {
            for _ in 0..extensions {
                let ext = random_extension(rng, sys, &st);
                if !sys.invalid(&ext) {
                    return Some(format!("extension of invalid {st:?} is valid: {ext:?}"));
                }
            }
        }
        None
    })
}

/// Readback of variable 0 for the first `n` answers of `g`.
pub fn readback(g: &Goal, sys: &ConstraintSystem, n: usize) -> Vec<Term> {
    mukanren::call_initial_state(Some(n), g, sys)
        .iter()
        .map(|st| st.resolve(&Term::var(0)))
        .collect()
}
