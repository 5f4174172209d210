//! The term algebra: logic variables, symbols, booleans, the empty list and
//! pairs, together with triangular substitutions and unification.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use rpds::ListSync;

/// A logic variable, identified by the index the engine allocated for it.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(pub usize);

impl Var {
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A Kanren term.
///
/// Pairs share their children through `Arc`, so cloning a term is cheap and
/// terms can be moved freely between threads.
#[derive(Clone, Debug, Eq)]
pub enum Term {
    Var(Var),
    Sym(Arc<str>),
    Bool(bool),
    Nil,
    Pair(Arc<Cons>),
}

/// The head and tail of a pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cons(pub Term, pub Term);

// Unlinks the tail spine iteratively so long lists drop without recursion.
impl Drop for Cons {
    fn drop(&mut self) {
        let mut tail = std::mem::replace(&mut self.1, Term::Nil);
        while let Term::Pair(p) = tail {
            match Arc::try_unwrap(p) {
                Ok(mut cell) => tail = std::mem::replace(&mut cell.1, Term::Nil),
                Err(_) => break,
            }
        }
    }
}

impl PartialEq for Term {
    fn eq(&self, other: &Term) -> bool {
        let mut todo = vec![(self, other)];
        while let Some((a, b)) = todo.pop() {
            match (a, b) {
                (Term::Var(x), Term::Var(y)) if x == y => {}
                (Term::Sym(x), Term::Sym(y)) if x == y => {}
                (Term::Bool(x), Term::Bool(y)) if x == y => {}
                (Term::Nil, Term::Nil) => {}
                (Term::Pair(x), Term::Pair(y)) => {
                    if !Arc::ptr_eq(x, y) {
                        todo.push((&x.1, &y.1));
                        todo.push((&x.0, &y.0));
                    }
                }
                _ => return false,
            }
        }
        true
    }
}

impl Hash for Term {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let mut todo = vec![self];
        while let Some(t) = todo.pop() {
            std::mem::discriminant(t).hash(state);
            match t {
                Term::Var(x) => x.hash(state),
                Term::Sym(s) => s.hash(state),
                Term::Bool(b) => b.hash(state),
                Term::Nil => {}
                Term::Pair(p) => {
                    todo.push(&p.1);
                    todo.push(&p.0);
                }
            }
        }
    }
}

impl Term {
    pub fn var(index: usize) -> Term {
        Term::Var(Var(index))
    }

    pub fn sym(name: &str) -> Term {
        Term::Sym(Arc::from(name))
    }

    pub fn cons(head: Term, tail: Term) -> Term {
        Term::Pair(Arc::new(Cons(head, tail)))
    }

    /// Builds a proper list from `items`.
    pub fn list<I>(items: I) -> Term
    where
        I: IntoIterator<Item = Term>,
        I::IntoIter: DoubleEndedIterator,
    {
        Term::list_with_tail(items, Term::Nil)
    }

    /// Builds `(i1 i2 ... . tail)`.
    pub fn list_with_tail<I>(items: I, tail: Term) -> Term
    where
        I: IntoIterator<Item = Term>,
        I::IntoIter: DoubleEndedIterator,
    {
        items
            .into_iter()
            .rev()
            .fold(tail, |acc, item| Term::cons(item, acc))
    }

    pub fn as_var(&self) -> Option<Var> {
        match self {
            Term::Var(v) => Some(*v),
            _ => None,
        }
    }

    pub fn as_pair(&self) -> Option<(&Term, &Term)> {
        match self {
            Term::Pair(p) => Some((&p.0, &p.1)),
            _ => None,
        }
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn is_pair(&self) -> bool {
        matches!(self, Term::Pair(_))
    }

    pub fn is_nil(&self) -> bool {
        matches!(self, Term::Nil)
    }

    /// True when no variable occurs anywhere in the term.
    pub fn is_ground(&self) -> bool {
        let mut todo = vec![self];
        while let Some(t) = todo.pop() {
            match t {
                Term::Var(_) => return false,
                Term::Pair(p) => {
                    todo.push(&p.0);
                    todo.push(&p.1);
                }
                _ => {}
            }
        }
        true
    }

    /// Every variable in the term, left to right, with repeats.
    pub fn vars(&self) -> Vec<Var> {
        let mut out = Vec::new();
        let mut todo = vec![self];
        while let Some(t) = todo.pop() {
            match t {
                Term::Var(v) => out.push(*v),
                Term::Pair(p) => {
                    todo.push(&p.1);
                    todo.push(&p.0);
                }
                _ => {}
            }
        }
        out
    }
}

impl From<Var> for Term {
    fn from(v: Var) -> Term {
        Term::Var(v)
    }
}

impl From<bool> for Term {
    fn from(b: bool) -> Term {
        Term::Bool(b)
    }
}

impl From<&str> for Term {
    fn from(name: &str) -> Term {
        Term::sym(name)
    }
}

/// Renders terms as s-expressions. Variables print as bare integers,
/// proper lists use list notation and improper tails use a dot.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Sym(s) => f.write_str(s),
            Term::Bool(true) => f.write_str("#t"),
            Term::Bool(false) => f.write_str("#f"),
            Term::Nil => f.write_str("()"),
            Term::Pair(p) => {
                write!(f, "({}", p.0)?;
                let mut tail = &p.1;
                loop {
                    match tail {
                        Term::Nil => break,
                        Term::Pair(next) => {
                            write!(f, " {}", next.0)?;
                            tail = &next.1;
                        }
                        other => {
                            write!(f, " . {other}")?;
                            break;
                        }
                    }
                }
                f.write_str(")")
            }
        }
    }
}

/// A triangular substitution: bindings from variables to terms, newest
/// first. Extension prepends and shares the older bindings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    bindings: ListSync<(Var, Term)>,
}

impl Default for Substitution {
    fn default() -> Self {
        Substitution::empty()
    }
}

impl Substitution {
    pub fn empty() -> Substitution {
        Substitution {
            bindings: ListSync::new_sync(),
        }
    }

    /// Builds a substitution from bindings listed newest first, without any
    /// occurs check. Intended for fixtures.
    pub fn from_bindings<I>(bindings: I) -> Substitution
    where
        I: IntoIterator<Item = (usize, Term)>,
        I::IntoIter: DoubleEndedIterator,
    {
        let mut s = Substitution::empty();
        for (x, t) in bindings.into_iter().rev() {
            s = s.prepend(Var(x), t);
        }
        s
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    /// Bindings from newest to oldest.
    pub fn iter(&self) -> impl Iterator<Item = (Var, &Term)> {
        self.bindings.iter().map(|(x, t)| (*x, t))
    }

    fn lookup(&self, x: Var) -> Option<&Term> {
        self.bindings.iter().find(|(y, _)| *y == x).map(|(_, t)| t)
    }

    fn prepend(&self, x: Var, v: Term) -> Substitution {
        Substitution {
            bindings: self.bindings.push_front((x, v)),
        }
    }

    /// Resolves a variable through its chain of bindings. Never looks inside
    /// pairs.
    pub fn walk(&self, u: &Term) -> Term {
        let mut cur = u;
        while let Term::Var(x) = cur {
            match self.lookup(*x) {
                Some(t) => cur = t,
                None => break,
            }
        }
        cur.clone()
    }

    /// Whether `x` occurs in `v` once `v` is fully resolved.
    pub fn occurs(&self, x: Var, v: &Term) -> bool {
        let mut todo = vec![v.clone()];
        while let Some(t) = todo.pop() {
            match self.walk(&t) {
                Term::Var(y) if y == x => return true,
                Term::Pair(p) => {
                    todo.push(p.1.clone());
                    todo.push(p.0.clone());
                }
                _ => {}
            }
        }
        false
    }

    /// Binds `x` to `v`, or `None` if that would create a cycle. `x` must be
    /// unbound.
    pub fn ext_s(&self, x: Var, v: Term) -> Option<Substitution> {
        if self.occurs(x, &v) {
            None
        } else {
            Some(self.prepend(x, v))
        }
    }

    /// Most general unifier of `u` and `v` extending `self`.
    ///
    /// Heads are unified before tails, and when both sides walk to
    /// variables the left one is bound. If the terms already agree the
    /// result is `self` with no new bindings.
    pub fn unify(&self, u: &Term, v: &Term) -> Option<Substitution> {
        let mut s = self.clone();
        let mut todo = vec![(u.clone(), v.clone())];
        while let Some((u, v)) = todo.pop() {
            let u = s.walk(&u);
            let v = s.walk(&v);
            match (&u, &v) {
                (Term::Var(x), Term::Var(y)) if x == y => {}
                (Term::Var(x), _) => s = s.ext_s(*x, v)?,
                (_, Term::Var(y)) => s = s.ext_s(*y, u)?,
                (Term::Pair(a), Term::Pair(b)) => {
                    if !Arc::ptr_eq(a, b) {
                        todo.push((a.1.clone(), b.1.clone()));
                        todo.push((a.0.clone(), b.0.clone()));
                    }
                }
                (Term::Sym(a), Term::Sym(b)) if a == b => {}
                (Term::Bool(a), Term::Bool(b)) if a == b => {}
                (Term::Nil, Term::Nil) => {}
                _ => return None,
            }
        }
        Some(s)
    }

    /// Resolves every variable in `t`, recursively. Unbound variables stay.
    pub fn walk_star(&self, t: &Term) -> Term {
        let t = self.walk(t);
        if !t.is_pair() {
            return t;
        }
        // Rebuild the tail spine iteratively; only heads recurse.
        let mut heads = Vec::new();
        let mut cur = t;
        while let Term::Pair(p) = &cur {
            heads.push(self.walk_star(&p.0));
            let next = self.walk(&p.1);
            cur = next;
        }
        Term::list_with_tail(heads, cur)
    }

    /// True iff `u` and `v` are already equal under `self`, so unifying them
    /// adds nothing.
    pub fn same_s(&self, u: &Term, v: &Term) -> bool {
        // Unify only prepends, so an unchanged length means an unchanged
        // substitution.
        match self.unify(u, v) {
            Some(s) => s.len() == self.len(),
            None => false,
        }
    }

    /// True iff `u` is already equal to `v` or to some subterm of `v`.
    pub fn mem(&self, u: &Term, v: &Term) -> bool {
        let mut todo = vec![v.clone()];
        while let Some(t) = todo.pop() {
            let t = self.walk(&t);
            if self.same_s(u, &t) {
                return true;
            }
            if let Term::Pair(p) = t {
                todo.push(p.1.clone());
                todo.push(p.0.clone());
            }
        }
        false
    }

    /// Follows the tail spine of `x` and returns its final non-pair tail.
    pub fn walk_to_end(&self, x: &Term) -> Term {
        let mut cur = self.walk(x);
        while let Term::Pair(p) = &cur {
            let next = self.walk(&p.1);
            cur = next;
        }
        cur
    }
}
