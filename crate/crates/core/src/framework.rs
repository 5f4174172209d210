//! The constraint-system generator.
//!
//! A language designer registers relation identifiers (with arities) and a
//! list of violation predicates. The resulting [`ConstraintSystem`] provides
//! the initial store, goal constructors for every relation including the
//! built-in `==`, and the satisfiability check [`ConstraintSystem::invalid`].
//!
//! Every constraint goal simply records its arguments in the store and then
//! re-checks the whole store: the `==` constraints are solved by unification
//! and, if consistent, every predicate is asked whether the rest of the store
//! is violated modulo the resulting substitution. Constraints are never
//! removed or simplified.

use std::fmt;
use std::sync::Arc;

use rpds::ListSync;

use crate::engine::{Goal, Stream};
use crate::error::Error;
use crate::terms::{Substitution, Term};

/// The identifier of the built-in equality relation.
pub const EQ: &str = "==";

/// Name of a constraint relation, e.g. `=/=` or `absento`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RelationId(Arc<str>);

impl RelationId {
    pub fn new(name: &str) -> RelationId {
        RelationId(Arc::from(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for RelationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for RelationId {
    fn from(name: &str) -> RelationId {
        RelationId::new(name)
    }
}

/// Packs constraint arguments right-nested, the last argument becoming the
/// final tail: `[t]` packs to `t`, `[t1, t2]` to `(t1 . t2)`, `[t1, t2, t3]`
/// to `(t1 t2 . t3)`.
pub fn pack(ts: &[Term]) -> Term {
    match ts.split_last() {
        None => Term::Nil,
        Some((last, init)) => Term::list_with_tail(init.iter().cloned(), last.clone()),
    }
}

/// Inverse of [`pack`] for a known arity.
pub fn unpack(t: &Term, arity: usize) -> Option<Vec<Term>> {
    if arity == 0 {
        return t.is_nil().then(Vec::new);
    }
    let mut out = Vec::with_capacity(arity);
    let mut cur = t;
    for _ in 1..arity {
        let (h, rest) = cur.as_pair()?;
        out.push(h.clone());
        cur = rest;
    }
    out.push(cur.clone());
    Some(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Field {
    id: RelationId,
    tuples: ListSync<Term>,
}

/// A persistent map from relation identifier to its packed constraint
/// tuples, newest first. Fields keep their registration order, `==` first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintStore {
    fields: Arc<[Field]>,
}

impl ConstraintStore {
    /// A store with the given fields, each holding tuples newest first.
    pub fn from_fields<I, T>(fields: I) -> ConstraintStore
    where
        I: IntoIterator<Item = (RelationId, T)>,
        T: IntoIterator<Item = Term>,
        T::IntoIter: DoubleEndedIterator,
    {
        let fields: Vec<Field> = fields
            .into_iter()
            .map(|(id, ts)| {
                let tuples = ts
                    .into_iter()
                    .rev()
                    .fold(ListSync::new_sync(), |acc, t| acc.push_front(t));
                Field { id, tuples }
            })
            .collect();
        ConstraintStore {
            fields: fields.into(),
        }
    }

    /// Relation identifiers in store order.
    pub fn ids(&self) -> impl Iterator<Item = &RelationId> {
        self.fields.iter().map(|f| &f.id)
    }

    /// Each field with its tuples, newest first.
    pub fn fields(&self) -> impl Iterator<Item = (&RelationId, &ListSync<Term>)> {
        self.fields.iter().map(|f| (&f.id, &f.tuples))
    }

    pub fn tuples(&self, id: &str) -> Option<&ListSync<Term>> {
        self.fields
            .iter()
            .find(|f| f.id.as_str() == id)
            .map(|f| &f.tuples)
    }

    /// Total number of constraint tuples across all fields.
    pub fn len(&self) -> usize {
        self.fields.iter().map(|f| f.tuples.len()).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Prepends one already-packed tuple to `key`'s field.
    pub fn ext_packed(&self, key: &str, tuple: Term) -> Result<ConstraintStore, Error> {
        let i = self
            .fields
            .iter()
            .position(|f| f.id.as_str() == key)
            .ok_or_else(|| Error::UnknownRelation(key.to_string()))?;
        let mut fields = self.fields.to_vec();
        fields[i].tuples = fields[i].tuples.push_front(tuple);
        Ok(ConstraintStore {
            fields: fields.into(),
        })
    }

    /// Records the constraint `key(ts...)`: packs `ts` and prepends it to
    /// `key`'s field. Other fields are shared with `self`.
    pub fn ext_store(&self, key: &str, ts: &[Term]) -> Result<ConstraintStore, Error> {
        self.ext_packed(key, pack(ts))
    }

    /// Replaces one field's tuples (given newest first).
    pub fn with_tuples<T>(&self, key: &str, tuples: T) -> Result<ConstraintStore, Error>
    where
        T: IntoIterator<Item = Term>,
        T::IntoIter: DoubleEndedIterator,
    {
        let i = self
            .fields
            .iter()
            .position(|f| f.id.as_str() == key)
            .ok_or_else(|| Error::UnknownRelation(key.to_string()))?;
        let mut fields = self.fields.to_vec();
        fields[i].tuples = tuples
            .into_iter()
            .rev()
            .fold(ListSync::new_sync(), |acc, t| acc.push_front(t));
        Ok(ConstraintStore {
            fields: fields.into(),
        })
    }
}

/// Read-only access to the non-equality constraints of a store, as seen by
/// violation predicates. Relations absent from the store read as empty.
#[derive(Clone, Copy, Debug)]
pub struct StoreView<'a> {
    store: &'a ConstraintStore,
}

impl<'a> StoreView<'a> {
    pub fn new(store: &'a ConstraintStore) -> StoreView<'a> {
        StoreView { store }
    }

    /// The packed tuples recorded for `id`, newest first.
    pub fn tuples(&self, id: &str) -> impl Iterator<Item = &'a Term> + 'a {
        let list = if id == EQ {
            None
        } else {
            self.store.tuples(id)
        };
        list.into_iter().flat_map(|l| l.iter())
    }

    /// The tuples of a binary relation, unpacked.
    pub fn pairs(&self, id: &str) -> impl Iterator<Item = (&'a Term, &'a Term)> + 'a {
        self.tuples(id).filter_map(Term::as_pair)
    }
}

type Check = dyn Fn(&StoreView<'_>, &Substitution) -> bool + Send + Sync;

/// A named test that returns true when the store, modulo the substitution
/// solving its `==` constraints, contains a violated constraint.
///
/// Predicates must be total and monotone; the framework relies on both but
/// cannot check them.
#[derive(Clone)]
pub struct ViolationPredicate {
    name: Arc<str>,
    check: Arc<Check>,
}

impl fmt::Debug for ViolationPredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("ViolationPredicate")
            .field(&self.name)
            .finish()
    }
}

impl ViolationPredicate {
    pub fn new<F>(name: &str, check: F) -> ViolationPredicate
    where
        F: Fn(&StoreView<'_>, &Substitution) -> bool + Send + Sync + 'static,
    {
        ViolationPredicate {
            name: Arc::from(name),
            check: Arc::new(check),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn check(&self, view: &StoreView<'_>, s: &Substitution) -> bool {
        (self.check)(view, s)
    }
}

/// Solves the equations of a `==` field, given newest first. Equations are
/// unified oldest first starting from the empty substitution.
pub fn valid_eq<'a, I>(eqs: I) -> Option<Substitution>
where
    I: IntoIterator<Item = &'a Term>,
{
    let eqs: Vec<&Term> = eqs.into_iter().collect();
    eqs.iter().rev().try_fold(Substitution::empty(), |s, pr| {
        let (u, v) = pr.as_pair()?;
        s.unify(u, v)
    })
}

#[derive(Debug)]
struct SystemInner {
    relations: Vec<(RelationId, usize)>,
    predicates: Vec<ViolationPredicate>,
}

/// Registered relations plus violation predicates. Cheap to clone and safe
/// to share between threads.
#[derive(Clone, Debug)]
pub struct ConstraintSystem {
    inner: Arc<SystemInner>,
}

/// Builder for [`ConstraintSystem`].
#[derive(Debug, Default)]
pub struct ConstraintSystemBuilder {
    relations: Vec<(String, usize)>,
    predicates: Vec<ViolationPredicate>,
}

impl ConstraintSystemBuilder {
    pub fn relation(mut self, name: &str, arity: usize) -> Self {
        self.relations.push((name.to_string(), arity));
        self
    }

    pub fn predicate(mut self, p: ViolationPredicate) -> Self {
        self.predicates.push(p);
        self
    }

    pub fn violation<F>(self, name: &str, check: F) -> Self
    where
        F: Fn(&StoreView<'_>, &Substitution) -> bool + Send + Sync + 'static,
    {
        self.predicate(ViolationPredicate::new(name, check))
    }

    pub fn build(self) -> Result<ConstraintSystem, Error> {
        let mut relations: Vec<(RelationId, usize)> = vec![(RelationId::new(EQ), 2)];
        for (name, arity) in self.relations {
            if name == EQ {
                return Err(Error::ReservedRelation);
            }
            if arity == 0 {
                return Err(Error::ZeroArity(name));
            }
            if relations.iter().any(|(id, _)| id.as_str() == name) {
                return Err(Error::DuplicateRelation(name));
            }
            relations.push((RelationId::new(&name), arity));
        }
        Ok(ConstraintSystem {
            inner: Arc::new(SystemInner {
                relations,
                predicates: self.predicates,
            }),
        })
    }
}

impl ConstraintSystem {
    pub fn builder() -> ConstraintSystemBuilder {
        ConstraintSystemBuilder::default()
    }

    /// Plain microKanren: only `==`, no predicates.
    pub fn equality_only() -> ConstraintSystem {
        ConstraintSystem::builder()
            .build()
            .expect("an empty registration is always valid")
    }

    /// All relations with their arities, `==` first.
    pub fn relations(&self) -> impl Iterator<Item = (&RelationId, usize)> {
        self.inner.relations.iter().map(|(id, n)| (id, *n))
    }

    pub fn predicates(&self) -> &[ViolationPredicate] {
        &self.inner.predicates
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.relations()
            .find(|(id, _)| id.as_str() == name)
            .map(|(_, n)| n)
    }

    /// The same relations with a different predicate list.
    pub fn with_predicates(&self, predicates: Vec<ViolationPredicate>) -> ConstraintSystem {
        ConstraintSystem {
            inner: Arc::new(SystemInner {
                relations: self.inner.relations.clone(),
                predicates,
            }),
        }
    }

    /// Every relation mapped to the empty list.
    pub fn initial_store(&self) -> ConstraintStore {
        ConstraintStore::from_fields(
            self.inner
                .relations
                .iter()
                .map(|(id, _)| (id.clone(), Vec::new())),
        )
    }

    /// True when the store is unsatisfiable: either its equations have no
    /// unifier, or some predicate reports a violation under that unifier.
    pub fn invalid(&self, store: &ConstraintStore) -> bool {
        let eqs = store.tuples(EQ).into_iter().flat_map(|l| l.iter());
        match valid_eq(eqs) {
            None => true,
            Some(s) => {
                let view = StoreView::new(store);
                self.inner.predicates.iter().any(|p| p.check(&view, &s))
            }
        }
    }

    /// The goal constructor for relation `key`.
    pub fn constraint(&self, key: &str) -> Result<ConstraintGoalConstructor, Error> {
        let arity = self
            .arity(key)
            .ok_or_else(|| Error::UnknownRelation(key.to_string()))?;
        Ok(ConstraintGoalConstructor {
            system: self.clone(),
            key: RelationId::new(key),
            arity,
        })
    }

    /// Shorthand for `self.constraint(key)?.apply(args)`.
    pub fn goal(&self, key: &str, args: Vec<Term>) -> Result<Goal, Error> {
        self.constraint(key)?.apply(args)
    }

    /// The `==` goal, present in every system.
    pub fn eq(&self, u: Term, v: Term) -> Goal {
        self.goal(EQ, vec![u, v])
            .expect("`==` is registered in every system")
    }
}

/// Builds goals for one registered relation.
#[derive(Clone, Debug)]
pub struct ConstraintGoalConstructor {
    system: ConstraintSystem,
    key: RelationId,
    arity: usize,
}

impl ConstraintGoalConstructor {
    pub fn key(&self) -> &RelationId {
        &self.key
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// A goal that records `key(args...)` and keeps the state only if the
    /// extended store is still satisfiable. Its stream has at most one state
    /// and the counter is left alone.
    pub fn apply(&self, args: Vec<Term>) -> Result<Goal, Error> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch {
                relation: self.key.to_string(),
                expected: self.arity,
                found: args.len(),
            });
        }
        let packed = pack(&args);
        let system = self.system.clone();
        let key = self.key.clone();
        Ok(Goal::new(move |st| {
            let store = st
                .store()
                .ext_packed(key.as_str(), packed.clone())
                .expect("goal applied to a store from a different constraint system");
            if system.invalid(&store) {
                Stream::Empty
            } else {
                Stream::unit(st.with_store(store))
            }
        }))
    }
}
