//! A brute-force unifiability oracle that shares no code with `unify`.
//!
//! Two terms unify iff some ground instantiation of their variables makes
//! them identical. The search assigns each variable either the atom `a` or
//! one of the non-variable subterms of the inputs (whose own variables are
//! instantiated the same way), rejects cyclic assignments and compares the
//! resulting ground terms. Every idempotent mgu maps a bound variable to an
//! instance of an input subterm and can send free variables to `a`, so a
//! witness of this form exists whenever the terms unify.

use mukanren::Term;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

pub const ORACLE_ATOMS: [&str; 4] = ["a", "b", "#t", "()"];
pub const ORACLE_VARS: usize = 3;

pub fn oracle_atom(name: &str) -> Term {
    match name {
        "#t" => Term::Bool(true),
        "#f" => Term::Bool(false),
        "()" => Term::Nil,
        s => Term::sym(s),
    }
}

fn collect_subterms(t: &Term, out: &mut Vec<Term>) {
    if t.is_var() {
        return;
    }
    if !out.contains(t) {
        out.push(t.clone());
    }
    if let Some((a, d)) = t.as_pair() {
        collect_subterms(a, out);
        collect_subterms(d, out);
    }
}

fn vars_of(t: &Term, out: &mut Vec<usize>) {
    match t {
        Term::Var(v) => {
            if !out.contains(&v.0) {
                out.push(v.0)
            }
        }
        Term::Pair(_) => {
            let (a, d) = t.as_pair().unwrap();
            vars_of(a, out);
            vars_of(d, out);
        }
        _ => {}
    }
}

/// Compares the ground instances of `u` and `v` under `asg` without
/// building them.
fn ground_eq(u: &Term, v: &Term, asg: &[Option<&Term>]) -> bool {
    let deref = |t: &'_ Term| -> Term {
        let mut t = t.clone();
        while let Term::Var(x) = &t {
            t = asg[x.0].expect("every variable is assigned").clone();
        }
        t
    };
    let (u, v) = (deref(u), deref(v));
    match (u.as_pair(), v.as_pair()) {
        (Some((ua, ud)), Some((va, vd))) => ground_eq(ua, va, asg) && ground_eq(ud, vd, asg),
        (None, None) => u == v,
        _ => false,
    }
}

fn acyclic(vars: &[usize], deps: &[Vec<usize>]) -> bool {
    // 0 unvisited, 1 on stack, 2 done
    fn visit(x: usize, deps: &[Vec<usize>], mark: &mut [u8]) -> bool {
        match mark[x] {
            1 => return false,
            2 => return true,
            _ => {}
        }
        mark[x] = 1;
        let ok = deps[x].iter().all(|&y| visit(y, deps, mark));
        mark[x] = 2;
        ok
    }
    let mut mark = vec![0u8; deps.len()];
    vars.iter().all(|&x| visit(x, deps, &mut mark))
}

/// Whether some ground instantiation makes `u` and `v` identical.
pub fn unifiable(u: &Term, v: &Term) -> bool {
    let mut vars = Vec::new();
    vars_of(u, &mut vars);
    vars_of(v, &mut vars);
    let mut cands = vec![Term::sym("a")];
    collect_subterms(u, &mut cands);
    collect_subterms(v, &mut cands);
    let cand_vars: Vec<Vec<usize>> = cands
        .iter()
        .map(|c| {
            let mut vs = Vec::new();
            vars_of(c, &mut vs);
            vs
        })
        .collect();
    let n_slots = vars.iter().copied().max().map_or(0, |m| m + 1);
    let mut choice = vec![0usize; vars.len()];
    loop {
        let mut asg: Vec<Option<&Term>> = vec![None; n_slots];
        let mut deps = vec![Vec::new(); n_slots];
        for (i, &x) in vars.iter().enumerate() {
            asg[x] = Some(&cands[choice[i]]);
            deps[x] = cand_vars[choice[i]].clone();
        }
        if acyclic(&vars, &deps) && ground_eq(u, v, &asg) {
            return true;
        }
        // Advance the odometer.
        let mut i = 0;
        loop {
            if i == choice.len() {
                return false;
            }
            choice[i] += 1;
            if choice[i] < cands.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

/// Every term of depth at most one over the oracle universe.
pub fn shallow_terms() -> Vec<Term> {
    let leaves: Vec<Term> = ORACLE_ATOMS
        .iter()
        .map(|a| oracle_atom(a))
        .chain((0..ORACLE_VARS).map(Term::var))
        .collect();
    let mut out = leaves.clone();
    for a in &leaves {
        for d in &leaves {
            out.push(Term::cons(a.clone(), d.clone()));
        }
    }
    out
}

/// A random term of depth at most `depth` over the oracle universe.
pub fn universe_term(rng: &mut StdRng, depth: usize) -> Term {
    if depth > 0 && rng.gen_bool(0.45) {
        return Term::cons(universe_term(rng, depth - 1), universe_term(rng, depth - 1));
    }
    if rng.gen_bool(0.5) {
        Term::var(rng.gen_range(0..ORACLE_VARS))
    } else {
        oracle_atom(ORACLE_ATOMS.choose(rng).unwrap())
    }
}

/// A random term of the same shape as `t` with some leaves replaced, so
/// that the pair has a fair chance of unifying.
pub fn perturb(rng: &mut StdRng, t: &Term, depth: usize) -> Term {
    if rng.gen_bool(0.2) {
        return universe_term(rng, depth);
    }
    match t.as_pair() {
        Some((a, d)) if depth > 0 => {
            Term::cons(perturb(rng, a, depth - 1), perturb(rng, d, depth - 1))
        }
        _ => t.clone(),
    }
}

/// The pairs checked against the oracle: all pairs of depth-one terms plus
/// random deeper pairs, `total` pairs in all.
pub fn oracle_pairs(rng: &mut StdRng, total: usize) -> Vec<(Term, Term)> {
    let shallow = shallow_terms();
    let mut pairs: Vec<(Term, Term)> = shallow
        .iter()
        .flat_map(|u| shallow.iter().map(move |v| (u.clone(), v.clone())))
        .take(total)
        .collect();
    while pairs.len() < total {
        let u = universe_term(rng, 3);
        let v = if rng.gen_bool(0.5) {
            perturb(rng, &u, 3)
        } else {
            universe_term(rng, 3)
        };
        pairs.push((u, v));
    }
    pairs
}

/// Checks `unify` against the oracle on one pair. Returns a description of
/// the disagreement, if any.
pub fn check_pair(u: &Term, v: &Term) -> Option<String> {
    let expected = unifiable(u, v);
    match mukanren::Substitution::empty().unify(u, v) {
        Some(_) if !expected => Some(format!(
            "{u} and {v}: unify succeeded, oracle found no instance"
        )),
        None if expected => Some(format!(
            "{u} and {v}: unify failed, oracle found an instance"
        )),
        Some(s2) => {
            let (a, b) = (s2.walk_star(u), s2.walk_star(v));
            (a != b).then(|| format!("{u} and {v}: walk_star gives {a} vs {b}"))
        }
        None => None,
    }
}
