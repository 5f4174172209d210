//! The standard symbolic constraints: `=/=`, `absento`, `symbolo`,
//! `not-pairo`, `booleano` and `listo`, as violation predicates over a store
//! view and the substitution solving its equations.

use crate::engine::Goal;
use crate::error::Error;
use crate::framework::{ConstraintSystem, StoreView, ViolationPredicate};
use crate::terms::{Substitution, Term};

pub const NEQ: &str = "=/=";
pub const ABSENTO: &str = "absento";
pub const SYMBOLO: &str = "symbolo";
pub const NOT_PAIRO: &str = "not-pairo";
pub const BOOLEANO: &str = "booleano";
pub const LISTO: &str = "listo";

/// Some `=/=` pair is already equal.
pub fn neq_violated(view: &StoreView<'_>, s: &Substitution) -> bool {
    view.pairs(NEQ).any(|(u, v)| s.same_s(u, v))
}

/// Some `absento` pair has its first term already equal to the second or to
/// one of its subterms.
pub fn absento_violated(view: &StoreView<'_>, s: &Substitution) -> bool {
    view.pairs(ABSENTO).any(|(u, v)| s.mem(u, v))
}

/// Some `symbolo` term is bound to something other than a symbol.
pub fn symbolo_violated(view: &StoreView<'_>, s: &Substitution) -> bool {
    view.tuples(SYMBOLO)
        .any(|y| !matches!(s.walk(y), Term::Sym(_) | Term::Var(_)))
}

/// Some `not-pairo` term is bound to a pair.
pub fn not_pairo_violated(view: &StoreView<'_>, s: &Substitution) -> bool {
    view.tuples(NOT_PAIRO).any(|n| s.walk(n).is_pair())
}

fn neq_or_absento_violated(view: &StoreView<'_>, s: &Substitution) -> bool {
    neq_violated(view, s) || absento_violated(view, s)
}

/// Some `booleano` term can be neither `#t` nor `#f`: each value either
/// fails to unify or would violate a `=/=` or `absento` constraint.
///
/// Counting a failed unification as excluded keeps the check monotone on
/// its own; when it matters, `booleano-sort` or `=/=` fires as well.
pub fn booleano_excluded(view: &StoreView<'_>, s: &Substitution) -> bool {
    let excluded = |b: &Term, v: bool| match s.unify(b, &Term::Bool(v)) {
        Some(s1) => neq_or_absento_violated(view, &s1),
        None => true,
    };
    // Both candidates are tried; the second is #f, not a second #t.
    view.tuples(BOOLEANO)
        .any(|b| excluded(b, true) && excluded(b, false))
}

/// Some `booleano` term is bound to a non-boolean.
pub fn booleano_sort_violated(view: &StoreView<'_>, s: &Substitution) -> bool {
    view.tuples(BOOLEANO)
        .any(|b| !matches!(s.walk(b), Term::Bool(_) | Term::Var(_)))
}

/// Some term is constrained by both `booleano` and `symbolo`.
pub fn booleano_symbolo_clash(view: &StoreView<'_>, s: &Substitution) -> bool {
    view.tuples(BOOLEANO)
        .any(|b| view.tuples(SYMBOLO).any(|y| s.same_s(y, b)))
}

/// Every position along the spine of `l`: `l` itself, then the tail of
/// each pair, ending with the end returned by `walk_to_end`.
fn spine(s: &Substitution, l: &Term) -> Vec<Term> {
    let mut out = Vec::new();
    let mut t = s.walk(l);
    loop {
        let next = t.as_pair().map(|(_, d)| s.walk(d));
        out.push(t);
        match next {
            Some(d) => t = d,
            None => return out,
        }
    }
}

// The three checks below look at every spine position, not only the current
// end. A position that is a pair is caught by `symbolo`, `booleano-sort` or
// `not-pairo` anyway, and looking at all of them keeps each check true once
// the end is extended.

/// The end of some `listo` term must be a symbol.
pub fn listo_end_symbolo(view: &StoreView<'_>, s: &Substitution) -> bool {
    view.tuples(LISTO).any(|l| {
        spine(s, l)
            .iter()
            .any(|p| view.tuples(SYMBOLO).any(|y| s.same_s(y, p)))
    })
}

/// The end of some `listo` term must be a boolean.
pub fn listo_end_booleano(view: &StoreView<'_>, s: &Substitution) -> bool {
    view.tuples(LISTO).any(|l| {
        spine(s, l)
            .iter()
            .any(|p| view.tuples(BOOLEANO).any(|b| s.same_s(b, p)))
    })
}

/// The end of some `listo` term cannot grow (it is under `not-pairo`), so it
/// has to be `()`, yet `()` there fails to unify or violates a `=/=` or
/// `absento` constraint.
pub fn listo_end_fixed_excluded(view: &StoreView<'_>, s: &Substitution) -> bool {
    view.tuples(LISTO).any(|l| {
        spine(s, l).iter().any(|p| {
            // not-pairo is compared under the original substitution
            view.tuples(NOT_PAIRO).any(|n| s.same_s(p, n))
                && match s.unify(p, &Term::Nil) {
                    Some(closed) => neq_or_absento_violated(view, &closed),
                    None => true,
                }
        })
    })
}

/// `()` is forbidden from a term that contains the end of some `listo` term.
pub fn listo_end_nil_absent(view: &StoreView<'_>, s: &Substitution) -> bool {
    view.tuples(LISTO).any(|l| {
        let end = s.walk_to_end(l);
        view.pairs(ABSENTO)
            .any(|(u, v)| s.walk(u).is_nil() && s.mem(&end, v))
    })
}

/// The end of some `listo` term is bound to a constant other than `()`.
///
/// The other `listo` checks only relate the end to further constraints, so
/// without this one `(listo 'a)` on its own would be accepted.
pub fn listo_end_constant(view: &StoreView<'_>, s: &Substitution) -> bool {
    view.tuples(LISTO)
        .any(|l| !matches!(s.walk_to_end(l), Term::Nil | Term::Var(_)))
}

/// The standard predicates, in registration order.
pub fn standard_predicates() -> Vec<ViolationPredicate> {
    vec![
        ViolationPredicate::new(NEQ, neq_violated),
        ViolationPredicate::new(ABSENTO, absento_violated),
        ViolationPredicate::new(SYMBOLO, symbolo_violated),
        ViolationPredicate::new(NOT_PAIRO, not_pairo_violated),
        ViolationPredicate::new("booleano-excluded", booleano_excluded),
        ViolationPredicate::new("booleano-sort", booleano_sort_violated),
        ViolationPredicate::new("booleano-symbolo", booleano_symbolo_clash),
        ViolationPredicate::new("listo-end-symbolo", listo_end_symbolo),
        ViolationPredicate::new("listo-end-booleano", listo_end_booleano),
        ViolationPredicate::new("listo-end-fixed-excluded", listo_end_fixed_excluded),
        ViolationPredicate::new("listo-end-nil-absent", listo_end_nil_absent),
        ViolationPredicate::new("listo-end-constant", listo_end_constant),
    ]
}

const STANDARD_RELATIONS: [(&str, usize); 6] = [
    (NEQ, 2),
    (ABSENTO, 2),
    (SYMBOLO, 1),
    (NOT_PAIRO, 1),
    (BOOLEANO, 1),
    (LISTO, 1),
];

fn standard_builder() -> crate::framework::ConstraintSystemBuilder {
    STANDARD_RELATIONS
        .iter()
        .fold(ConstraintSystem::builder(), |b, &(name, arity)| {
            b.relation(name, arity)
        })
}

/// `==` plus the six standard relations and their predicates.
pub fn standard_system() -> ConstraintSystem {
    standard_predicates()
        .into_iter()
        .fold(standard_builder(), |b, p| b.predicate(p))
        .build()
        .expect("standard relations are distinct")
}

/// Typed goal constructors over a system that registers the standard
/// relations.
#[derive(Clone, Debug)]
pub struct Standard {
    system: ConstraintSystem,
}

impl Default for Standard {
    fn default() -> Self {
        Standard::new()
    }
}

impl Standard {
    pub fn new() -> Standard {
        Standard {
            system: standard_system(),
        }
    }

    /// Wraps any system that registers the standard relations with their
    /// usual arities, for instance one with a different predicate set.
    pub fn with_system(system: ConstraintSystem) -> Result<Standard, Error> {
        for (name, arity) in STANDARD_RELATIONS {
            match system.arity(name) {
                None => return Err(Error::UnknownRelation(name.to_string())),
                Some(found) if found != arity => {
                    return Err(Error::ArityMismatch {
                        relation: name.to_string(),
                        expected: arity,
                        found,
                    })
                }
                Some(_) => {}
            }
        }
        Ok(Standard { system })
    }

    pub fn system(&self) -> &ConstraintSystem {
        &self.system
    }

    fn goal(&self, key: &str, args: Vec<Term>) -> Goal {
        self.system
            .goal(key, args)
            .expect("standard relation with its declared arity")
    }

    pub fn eq(&self, u: Term, v: Term) -> Goal {
        self.system.eq(u, v)
    }

    pub fn neq(&self, u: Term, v: Term) -> Goal {
        self.goal(NEQ, vec![u, v])
    }

    pub fn absento(&self, u: Term, v: Term) -> Goal {
        self.goal(ABSENTO, vec![u, v])
    }

    pub fn symbolo(&self, t: Term) -> Goal {
        self.goal(SYMBOLO, vec![t])
    }

    pub fn not_pairo(&self, t: Term) -> Goal {
        self.goal(NOT_PAIRO, vec![t])
    }

    pub fn booleano(&self, t: Term) -> Goal {
        self.goal(BOOLEANO, vec![t])
    }

    pub fn listo(&self, t: Term) -> Goal {
        self.goal(LISTO, vec![t])
    }
}
